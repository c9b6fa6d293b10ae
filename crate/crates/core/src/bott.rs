//! Cohomology of line bundles and twisted differential forms on projective
//! spaces, and Künneth products of such tables.
//!
//! Tables are stored in cohomological grading: `H^q` sits at degree `q >= 0`.
//! A complex the literature writes as `C[-q]` is the table `{q ↦ 1}` here.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bigint_serde;
use crate::binomial::binomial;
use crate::error::{invalid, Result};

/// Finitely supported map from cohomological degree to a positive dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedDims {
    entries: BTreeMap<u32, BigUint>,
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{q ↦ dim}`, or the empty table if `dim` is zero.
    pub fn single(q: u32, dim: impl Into<BigUint>) -> Self {
        let mut out = Self::new();
        out.add(q, dim.into());
        out
    }

    pub fn from_entries<I, D>(entries: I) -> Self
    where
        I: IntoIterator<Item = (u32, D)>,
        D: Into<BigUint>,
    {
        let mut out = Self::new();
        for (q, dim) in entries {
            out.add(q, dim.into());
        }
        out
    }

    fn add(&mut self, q: u32, dim: BigUint) {
        if dim.is_zero() {
            return;
        }
        *self.entries.entry(q).or_default() += dim;
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, q: u32) -> BigUint {
        self.entries.get(&q).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        self.entries.iter().map(|(q, d)| (*q, d))
    }

    pub fn support(&self) -> Vec<u32> {
        self.entries.keys().copied().collect()
    }

    /// Alternating sum `Σ (-1)^q dim H^q`.
    pub fn euler(&self) -> BigInt {
        self.entries.iter().fold(BigInt::zero(), |acc, (q, d)| {
            let d = BigInt::from(d.clone());
            if q % 2 == 0 {
                acc + d
            } else {
                acc - d
            }
        })
    }

    /// Sum of all dimensions.
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Graded tensor product.
    pub fn tensor(&self, other: &GradedDims) -> GradedDims {
        let mut out = GradedDims::new();
        for (q1, d1) in &self.entries {
            for (q2, d2) in &other.entries {
                out.add(q1 + q2, d1 * d2);
            }
        }
        out
    }

    /// Moves every entry from degree `q` to `q - by`; `None` if that would
    /// leave a negative degree.
    pub fn shift_down(&self, by: u32) -> Option<GradedDims> {
        let mut out = GradedDims::new();
        for (q, d) in &self.entries {
            out.add(q.checked_sub(by)?, d.clone());
        }
        Some(out)
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, (q, d)) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{q} ↦ {d}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Dim(#[serde(with = "bigint_serde::unsigned")] BigUint);

impl Serialize for GradedDims {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<u32, Dim> = self
            .entries
            .iter()
            .map(|(q, d)| (*q, Dim(d.clone())))
            .collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradedDims {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<u32, Dim>::deserialize(deserializer)?;
        Ok(GradedDims::from_entries(
            map.into_iter().map(|(q, d)| (q, d.0)),
        ))
    }
}

/// A twisted form bundle `Ω^p(k)` on `P^n`; `p = 0` is the line bundle `O(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomQuery {
    pub n: u32,
    pub p: u32,
    pub k: i64,
}

impl CohomQuery {
    pub fn new(n: i64, p: i64, k: i64) -> Result<Self> {
        if n < 0 {
            return Err(invalid(format!(
                "projective dimension must be >= 0, got {n}"
            )));
        }
        if p < 0 || p > n {
            return Err(invalid(format!("form degree p = {p} outside [0, {n}]")));
        }
        Ok(Self {
            n: n as u32,
            p: p as u32,
            k,
        })
    }

    /// `O(k)` on `P^n`.
    pub fn line(n: u32, k: i64) -> Self {
        Self { n, p: 0, k }
    }

    pub fn cohomology(&self) -> GradedDims {
        bott_table(self.n, self.p, self.k)
    }
}

/// `H^*(P^n, O(k))`.
pub fn line_cohomology(n: i64, k: i64) -> Result<GradedDims> {
    omega_cohomology(n, 0, k)
}

/// `H^*(P^n, Ω^p(k))` by Bott's formula.
pub fn omega_cohomology(n: i64, p: i64, k: i64) -> Result<GradedDims> {
    Ok(CohomQuery::new(n, p, k)?.cohomology())
}

fn bott_table(n: u32, p: u32, k: i64) -> GradedDims {
    let (n64, p64) = (i64::from(n), i64::from(p));
    if n == 0 {
        return GradedDims::single(0, 1u32);
    }
    if k > p64 {
        GradedDims::single(0, binomial(k + n64 - p64, k) * binomial(k - 1, p64))
    } else if k == 0 {
        GradedDims::single(p, 1u32)
    } else if k < p64 - n64 {
        GradedDims::single(n, binomial(p64 - k, -k) * binomial(-k - 1, n64 - p64))
    } else {
        GradedDims::new()
    }
}

/// Künneth product of the factor tables; the empty product is `{0 ↦ 1}`.
pub fn kunneth(factors: &[CohomQuery]) -> GradedDims {
    factors
        .iter()
        .fold(GradedDims::single(0, BigUint::one()), |acc, f| {
            acc.tensor(&f.cohomology())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::poly_binomial;

    fn table(entries: &[(u32, u32)]) -> GradedDims {
        GradedDims::from_entries(entries.iter().map(|&(q, d)| (q, d)))
    }

    /// Number of monomials of degree `k` in `n + 1` variables, by enumeration.
    fn count_monomials(vars: u32, degree: u32) -> u64 {
        if vars == 1 {
            return 1;
        }
        (0..=degree)
            .map(|j| count_monomials(vars - 1, degree - j))
            .sum()
    }

    #[test]
    fn line_bundle_examples() {
        assert_eq!(
            line_cohomology(2, 2).unwrap(),
            table(&[(0, count_monomials(3, 2) as u32)])
        );
        assert_eq!(line_cohomology(2, 2).unwrap(), table(&[(0, 6)]));
        assert_eq!(line_cohomology(1, -2).unwrap(), table(&[(1, 1)]));
        assert_eq!(line_cohomology(3, 0).unwrap(), table(&[(0, 1)]));
    }

    #[test]
    fn negative_dimension_rejected() {
        assert!(line_cohomology(-1, 0).is_err());
        assert!(omega_cohomology(2, 3, 0).is_err());
        assert!(omega_cohomology(2, -1, 0).is_err());
    }

    #[test]
    fn omega_examples() {
        assert!(omega_cohomology(3, 2, 2).unwrap().is_empty());
        assert_eq!(omega_cohomology(2, 1, 0).unwrap(), table(&[(1, 1)]));
        // 0 -> Ω^1(2) -> O(1)^3 -> O(2) -> 0 and both right-hand terms have only H^0
        let euler_sequence = 3 * 3 - 6;
        assert_eq!(
            omega_cohomology(2, 1, 2).unwrap(),
            table(&[(0, euler_sequence)])
        );
    }

    #[test]
    fn point_has_one_dimensional_cohomology() {
        for k in -5..=5 {
            assert_eq!(line_cohomology(0, k).unwrap(), table(&[(0, 1)]));
        }
    }

    #[test]
    fn kunneth_examples() {
        let minus_two = CohomQuery::line(1, -2);
        assert_eq!(kunneth(&[minus_two, minus_two]), table(&[(2, 1)]));
        assert_eq!(kunneth(&[]), table(&[(0, 1)]));
        assert_eq!(
            kunneth(&[CohomQuery::line(2, 1), CohomQuery::line(1, 0)]),
            table(&[(0, 3)])
        );
    }

    #[test]
    fn euler_matches_signed_binomial() {
        for n in 0..=6u32 {
            for k in -12..=12 {
                let chi = line_cohomology(n.into(), k).unwrap().euler();
                assert_eq!(chi, poly_binomial(k + i64::from(n), n), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn shift_down_rejects_negative_degrees() {
        assert_eq!(table(&[(3, 2)]).shift_down(1), Some(table(&[(2, 2)])));
        assert_eq!(table(&[(0, 2)]).shift_down(1), None);
    }

    #[test]
    fn zero_dimensions_are_dropped() {
        let t = GradedDims::from_entries([(0u32, 0u32), (2, 5)]);
        assert_eq!(t.support(), vec![2]);
        assert_eq!(t.to_string(), "{2 ↦ 5}");
    }

    #[test]
    fn json_round_trip() {
        let t = table(&[(0, 3), (4, 1)]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"0":3,"4":1}"#);
        let back: GradedDims = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
