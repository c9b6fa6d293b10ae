//! Topological Euler characteristics of complete intersections in products
//! of projective spaces.
//!
//! The cohomology ring of `P^{n_1} × … × P^{n_r}` is
//! `Z[h_1, …, h_r] / (h_1^{n_1+1}, …, h_r^{n_r+1})`. For a smooth complete
//! intersection `Y` cut out by divisors `D_1, …, D_c` the adjunction formula
//! gives `c(Y) = c(T) / Π (1 + D_j)` restricted to `Y`, so
//! `χ_top(Y) = ∫ c(T) · Π D_j / Π (1 + D_j)`. Everything is exact: the
//! inverses are finite geometric series because the `h_i` are nilpotent.
//!
//! Smoothness (genericity of the equations) is assumed by every function
//! here and never checked.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial::binomial;
use crate::error::{invalid, Result};

/// `P^{n_1} × … × P^{n_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AmbientSpec {
    factor_dims: Vec<u32>,
}

impl AmbientSpec {
    pub fn new(factor_dims: Vec<u32>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(invalid("ambient needs at least one projective factor"));
        }
        Ok(Self { factor_dims })
    }

    /// A single `P^n`.
    pub fn projective(n: u32) -> Self {
        Self {
            factor_dims: vec![n],
        }
    }

    pub fn product(dims: &[u32]) -> Result<Self> {
        Self::new(dims.to_vec())
    }

    pub fn factor_dims(&self) -> &[u32] {
        &self.factor_dims
    }

    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self) -> u32 {
        self.factor_dims.iter().sum()
    }

    /// `Π (n_i + 1)`.
    pub fn chi(&self) -> BigInt {
        self.factor_dims
            .iter()
            .map(|&n| BigInt::from(n) + 1)
            .product()
    }
}

impl fmt::Display for AmbientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factor_dims.iter().map(|n| format!("P^{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Element of the truncated cohomology ring of an [`AmbientSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedClass {
    dims: Vec<u32>,
    coeffs: BTreeMap<Vec<u32>, BigInt>,
}

impl TruncatedClass {
    pub fn zero(ambient: &AmbientSpec) -> Self {
        Self {
            dims: ambient.factor_dims.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &AmbientSpec) -> Self {
        let mut out = Self::zero(ambient);
        out.coeffs.insert(vec![0; out.dims.len()], BigInt::one());
        out
    }

    /// The divisor class `Σ a_i h_i`.
    pub fn divisor(ambient: &AmbientSpec, degrees: &[i64]) -> Result<Self> {
        if degrees.len() != ambient.num_factors() {
            return Err(invalid(format!(
                "divisor has {} degrees for an ambient with {} factors",
                degrees.len(),
                ambient.num_factors()
            )));
        }
        let mut out = Self::zero(ambient);
        for (idx, &a) in degrees.iter().enumerate() {
            let mut exp = vec![0; degrees.len()];
            exp[idx] = 1;
            out.insert(exp, BigInt::from(a));
        }
        Ok(out)
    }

    fn insert(&mut self, exp: Vec<u32>, c: BigInt) {
        if c.is_zero() || exp.iter().zip(&self.dims).any(|(e, n)| e > n) {
            return;
        }
        match self.coeffs.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exp: &[u32]) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    /// Coefficient of the point class `h_1^{n_1} ⋯ h_r^{n_r}`.
    pub fn degree(&self) -> BigInt {
        self.coefficient(&self.dims)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self {
            dims: self.dims.clone(),
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            out.insert(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            dims: self.dims.clone(),
            coeffs: BTreeMap::new(),
        };
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(exp, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self {
            dims: self.dims.clone(),
            coeffs: BTreeMap::new(),
        };
        out.coeffs.insert(vec![0; self.dims.len()], BigInt::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `(1 + D)^{-1} = Σ_k (-D)^k` for a class `D` with no constant term.
    fn inverse_one_plus(divisor: &Self) -> Self {
        let top: u32 = divisor.dims.iter().sum();
        let neg = divisor.scale(&BigInt::from(-1));
        let mut term = divisor.pow(0);
        let mut acc = term.clone();
        for _ in 0..top {
            term = term.mul(&neg);
            acc = acc.add(&term);
        }
        acc
    }
}

/// Total Chern class `Π (1 + h_i)^{n_i + 1}` of the ambient tangent bundle.
pub fn ambient_chern_class(ambient: &AmbientSpec) -> TruncatedClass {
    let mut out = TruncatedClass::zero(ambient);
    let r = ambient.num_factors();
    // (1 + h)^{n+1} truncates to Σ_{e ≤ n} C(n+1, e) h^e in each factor
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for &n in &ambient.factor_dims {
        exps = exps
            .into_iter()
            .flat_map(|prefix| {
                (0..=n).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    for exp in exps {
        debug_assert_eq!(exp.len(), r);
        let c: BigInt = exp
            .iter()
            .zip(&ambient.factor_dims)
            .map(|(&e, &n)| BigInt::from(binomial(i64::from(n) + 1, i64::from(e))))
            .product();
        out.insert(exp, c);
    }
    out
}

/// A complete intersection of divisors with the given multi-degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CISpec {
    pub ambient: AmbientSpec,
    pub degrees: Vec<Vec<i64>>,
}

impl CISpec {
    pub fn new(ambient: AmbientSpec, degrees: Vec<Vec<i64>>) -> Result<Self> {
        if degrees.len() > ambient.dim() as usize {
            return Err(invalid(format!(
                "{} equations exceed the ambient dimension {}",
                degrees.len(),
                ambient.dim()
            )));
        }
        for deg in &degrees {
            if deg.len() != ambient.num_factors() {
                return Err(invalid(format!(
                    "multi-degree {deg:?} needs one entry per factor of {ambient}"
                )));
            }
            if deg.iter().any(|&a| a < 0) {
                return Err(invalid(format!(
                    "multi-degree {deg:?} has a negative entry"
                )));
            }
            if deg.iter().all(|&a| a == 0) {
                return Err(invalid("multi-degree is identically zero"));
            }
        }
        Ok(Self { ambient, degrees })
    }

    /// `count` hypersurfaces of degree `degree` in `P^n`.
    pub fn in_projective_space(n: u32, degree: i64, count: usize) -> Result<Self> {
        Self::new(AmbientSpec::projective(n), vec![vec![degree]; count])
    }

    pub fn dim(&self) -> i64 {
        i64::from(self.ambient.dim()) - self.degrees.len() as i64
    }
}

/// Topological Euler characteristic of the (assumed smooth) complete intersection.
pub fn chi_top(spec: &CISpec) -> BigInt {
    let ambient = &spec.ambient;
    let mut integrand = ambient_chern_class(ambient);
    for deg in &spec.degrees {
        let d = TruncatedClass::divisor(ambient, deg).expect("validated by CISpec::new");
        integrand = integrand.mul(&d).mul(&TruncatedClass::inverse_one_plus(&d));
    }
    integrand.degree()
}

/// `χ(Bl_Z X) = χ(X) + (codim - 1) χ(Z)`.
pub fn blowup_chi(chi_x: &BigInt, chi_z: &BigInt, codim: i64) -> Result<BigInt> {
    if codim < 2 {
        return Err(invalid(format!(
            "blow-up centre needs codimension >= 2, got {codim}"
        )));
    }
    Ok(chi_x + chi_z * (codim - 1))
}
