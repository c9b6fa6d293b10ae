//! Ext groups between line bundles on the universal hyperplane
//! `H_L ⊂ P^m × P^{ℓ-1}`, a divisor of bidegree `(d, 1)`.
//!
//! Restriction to `H_L` fits into the triangle
//! `O(-d, -1) → O → ι_*ι^*O`, so `RHom_{H_L}(O(a), O(b))` is the cone of
//! `RΓ(O(b - a - (d, 1))) → RΓ(O(b - a))` on the product, each term a
//! Künneth product of line-bundle tables. The connecting map is never
//! computed: if either term vanishes the answer is determined, otherwise
//! it is reported as an honest two-term complex.
//!
//! Everything here works in raw bidegrees `(u, v)`. The Lefschetz view
//! `A(α, β)` with generators `O(s + α d, β)` lives in the HPD engine.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bott::{kunneth, line_cohomology, CohomQuery, GradedDims};
use crate::error::{invalid, Error, Result};

/// `(m, d, ℓ)`: the `(d, 1)`-divisor `H_L` in `P^m × P^{ℓ-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorGeometry {
    m: i64,
    d: i64,
    ell: i64,
}

impl DivisorGeometry {
    pub fn new(m: i64, d: i64, ell: i64) -> Result<Self> {
        if m < 0 {
            return Err(invalid(format!("m must be >= 0, got {m}")));
        }
        if d < 1 {
            return Err(invalid(format!("d must be >= 1, got {d}")));
        }
        if ell < 1 || ell > m + 1 {
            return Err(invalid(format!(
                "ell = {ell} outside [1, m + 1 = {}]",
                m + 1
            )));
        }
        Ok(Self { m, d, ell })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// `dim H_L = m + ℓ - 2`.
    pub fn dim(&self) -> i64 {
        self.m + self.ell - 2
    }

    fn twist_cohomology(&self, twist: Bidegree) -> GradedDims {
        kunneth(&[
            CohomQuery::line(self.m as u32, twist.u),
            CohomQuery::line((self.ell - 1) as u32, twist.v),
        ])
    }
}

impl fmt::Display for DivisorGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, d={}, ell={})", self.m, self.d, self.ell)
    }
}

/// A twist `O(u, v)` on `P^m × P^{ℓ-1}`, restricted to `H_L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub u: i64,
    pub v: i64,
}

impl Bidegree {
    pub fn new(u: i64, v: i64) -> Self {
        Self { u, v }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.u + rhs.u, self.v + rhs.v)
    }
}

impl std::ops::Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.u - rhs.u, self.v - rhs.v)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtStatus {
    Determined {
        table: GradedDims,
    },
    /// Both Künneth terms are nonzero; the cone is left unevaluated.
    Indeterminate {
        term_before: GradedDims,
        term_after: GradedDims,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtAnswer {
    pub status: ExtStatus,
    #[serde(with = "crate::bigint_serde")]
    pub euler: BigInt,
}

impl ExtAnswer {
    pub fn table(&self) -> Option<&GradedDims> {
        match &self.status {
            ExtStatus::Determined { table } => Some(table),
            ExtStatus::Indeterminate { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.table().is_some_and(GradedDims::is_empty)
    }
}

/// The two Künneth terms `(RΓ(O(t - (d,1))), RΓ(O(t)))` for `t = to - from`.
pub fn cone_terms(g: &DivisorGeometry, from: Bidegree, to: Bidegree) -> (GradedDims, GradedDims) {
    let twist = to - from;
    let before = g.twist_cohomology(twist - Bidegree::new(g.d, 1));
    let after = g.twist_cohomology(twist);
    (before, after)
}

/// `RHom_{H_L}(O(from), O(to))`.
pub fn ext_on_divisor(g: &DivisorGeometry, from: Bidegree, to: Bidegree) -> ExtAnswer {
    let (before, after) = cone_terms(g, from, to);
    let euler = after.euler() - before.euler();
    let status = if before.is_empty() {
        ExtStatus::Determined { table: after }
    } else if after.is_empty() {
        // Cone(B → 0) = B[1]; B has no H^0 here because H^0(B) injects into H^0(after)
        match before.shift_down(1) {
            Some(table) => ExtStatus::Determined { table },
            None => ExtStatus::Indeterminate {
                term_before: before,
                term_after: after,
            },
        }
    } else {
        ExtStatus::Indeterminate {
            term_before: before,
            term_after: after,
        }
    };
    ExtAnswer { status, euler }
}

/// `ω_{H_L} = O(d - m - 1, 1 - ℓ)` by adjunction.
pub fn canonical_twist(g: &DivisorGeometry) -> Bidegree {
    Bidegree::new(g.d - g.m - 1, 1 - g.ell)
}

/// Whether `p_* O(0, -k)` vanishes, i.e. `O(-k)` is acyclic on `P^{ℓ-1}`.
pub fn fiber_vanishing(ell: i64, k: i64) -> Result<bool> {
    if ell < 1 {
        return Err(invalid(format!("ell must be >= 1, got {ell}")));
    }
    Ok(line_cohomology(ell - 1, -k)?.is_empty())
}

/// The four vanishing regimes for `RHom(A(α, β), A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaCase {
    /// `0 < α < i - 1`
    InteriorAlpha,
    /// `0 < β < ℓ - 1`
    InteriorBeta,
    /// `(α, β) = (0, ℓ - 1)`
    TopBeta,
    /// `(α, β) = (i - 1, 0)`
    TopAlpha,
}

impl LemmaCase {
    pub const ALL: [LemmaCase; 4] = [
        LemmaCase::InteriorAlpha,
        LemmaCase::InteriorBeta,
        LemmaCase::TopBeta,
        LemmaCase::TopAlpha,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaCase::InteriorAlpha => "interior_alpha",
            LemmaCase::InteriorBeta => "interior_beta",
            LemmaCase::TopBeta => "top_beta",
            LemmaCase::TopAlpha => "top_alpha",
        }
    }

    /// Which case, if any, covers the relative position `(α, β)`.
    /// `InteriorBeta` holds for every `α`.
    pub fn classify(alpha: i64, beta: i64, i: i64, ell: i64) -> Option<LemmaCase> {
        if 0 < beta && beta < ell - 1 {
            Some(LemmaCase::InteriorBeta)
        } else if 0 < alpha && alpha < i - 1 {
            Some(LemmaCase::InteriorAlpha)
        } else if i >= 2 && ell >= 2 && (alpha, beta) == (0, ell - 1) {
            Some(LemmaCase::TopBeta)
        } else if i >= 2 && ell >= 2 && (alpha, beta) == (i - 1, 0) {
            Some(LemmaCase::TopAlpha)
        } else {
            None
        }
    }

    /// The `(α, β)` positions the case asserts, with free coordinates
    /// ranging over the grid `[0, i-1] × [0, ℓ-1]`. Cases that degenerate
    /// onto `(0, 0)` (when `i = 1` or `ℓ = 1`) are empty.
    pub fn positions(self, i: i64, ell: i64) -> Vec<(i64, i64)> {
        match self {
            LemmaCase::InteriorAlpha => (1..i - 1)
                .flat_map(|a| (0..ell).map(move |b| (a, b)))
                .collect(),
            LemmaCase::InteriorBeta => (0..i)
                .flat_map(|a| (1..ell - 1).map(move |b| (a, b)))
                .collect(),
            LemmaCase::TopBeta if i >= 2 && ell >= 2 => vec![(0, ell - 1)],
            LemmaCase::TopAlpha if i >= 2 && ell >= 2 => vec![(i - 1, 0)],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for LemmaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One generator pair checked for one case position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaEntry {
    pub case: LemmaCase,
    pub alpha: i64,
    pub beta: i64,
    pub s: i64,
    pub s_prime: i64,
    pub term_before_empty: bool,
    pub term_after_empty: bool,
}

impl LemmaEntry {
    pub fn pass(&self) -> bool {
        self.term_before_empty && self.term_after_empty
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub geometry: DivisorGeometry,
    pub i: i64,
    pub entries: Vec<LemmaEntry>,
    /// Cases with no positions for this `(i, ℓ)`.
    pub skipped: Vec<LemmaCase>,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(LemmaEntry::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaEntry> {
        self.entries.iter().filter(|e| !e.pass())
    }
}

/// Generators of `A(α, β)`: `O(s + α d, β)` for `0 <= s < d`.
pub fn block_generator(g: &DivisorGeometry, s: i64, alpha: i64, beta: i64) -> Bidegree {
    Bidegree::new(s + alpha * g.d, beta)
}

/// Whether both cone terms of `RHom(A(α, β), A(α', β'))` vanish for every
/// generator pair.
pub fn blocks_strongly_orthogonal(g: &DivisorGeometry, from: (i64, i64), to: (i64, i64)) -> bool {
    (0..g.d).all(|s| {
        (0..g.d).all(|s_prime| {
            let (before, after) = cone_terms(
                g,
                block_generator(g, s, from.0, from.1),
                block_generator(g, s_prime, to.0, to.1),
            );
            before.is_empty() && after.is_empty()
        })
    })
}

/// Checks `RHom(A(α, β), A) = 0` in all four regimes, in the strong form
/// where both Künneth terms of the cone are empty.
pub fn lemma_vanishing_table(g: &DivisorGeometry, i: i64) -> Result<LemmaReport> {
    if i < 1 || g.d * i != g.m + 1 {
        return Err(Error::NonRectangular { m: g.m, d: g.d });
    }
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for case in LemmaCase::ALL {
        let positions = case.positions(i, g.ell);
        if positions.is_empty() {
            skipped.push(case);
        }
        for (alpha, beta) in positions {
            for s in 0..g.d {
                for s_prime in 0..g.d {
                    let (before, after) = cone_terms(
                        g,
                        block_generator(g, s, alpha, beta),
                        block_generator(g, s_prime, 0, 0),
                    );
                    entries.push(LemmaEntry {
                        case,
                        alpha,
                        beta,
                        s,
                        s_prime,
                        term_before_empty: before.is_empty(),
                        term_after_empty: after.is_empty(),
                    });
                }
            }
        }
    }
    Ok(LemmaReport {
        geometry: *g,
        i,
        entries,
        skipped,
    })
}
