use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BlockLabel {
    /// `D(X_{L⊥})`
    BaseLocus,
    /// `π^*D(X)(0, k)`
    AmbientTwist,
    /// `A(α, β)`
    LefschetzBlock,
    /// `C_{H_L}`
    HpdCategory,
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockLabel::BaseLocus => "BASE_LOCUS",
            BlockLabel::AmbientTwist => "AMBIENT_TWIST",
            BlockLabel::LefschetzBlock => "LEFSCHETZ_BLOCK",
            BlockLabel::HpdCategory => "HPD_CATEGORY",
        })
    }
}

/// One component of a semi-orthogonal decomposition, with its rank: the
/// Euler characteristic of its Hochschild homology. Ranks may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SODBlock {
    pub label: BlockLabel,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    #[serde(with = "crate::bigint_serde")]
    pub rank: BigInt,
}

impl SODBlock {
    pub fn new(label: BlockLabel, rank: impl Into<BigInt>) -> Self {
        Self {
            label,
            alpha: None,
            beta: None,
            rank: rank.into(),
        }
    }

    pub fn at(mut self, alpha: Option<i64>, beta: Option<i64>) -> Self {
        self.alpha = alpha;
        self.beta = beta;
        self
    }

    pub fn lefschetz(alpha: i64, beta: i64, rank: impl Into<BigInt>) -> Self {
        Self::new(BlockLabel::LefschetzBlock, rank).at(Some(alpha), Some(beta))
    }
}

impl fmt::Display for SODBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.label, self.alpha, self.beta) {
            (BlockLabel::LefschetzBlock, Some(a), Some(b)) => write!(f, "A({a},{b})")?,
            (BlockLabel::LefschetzBlock, Some(a), None) => write!(f, "A({a})")?,
            (BlockLabel::AmbientTwist, _, Some(b)) => write!(f, "D(X)(0,{b})")?,
            (BlockLabel::BaseLocus, ..) => f.write_str("D(X_Lperp)")?,
            (BlockLabel::HpdCategory, ..) => f.write_str("C")?,
            (label, ..) => write!(f, "{label}")?,
        }
        write!(f, " rank {}", self.rank)
    }
}

/// A named identity `lhs = rhs` (or a count compared against its expected
/// value) together with whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    #[serde(with = "crate::bigint_serde")]
    pub lhs: BigInt,
    #[serde(with = "crate::bigint_serde")]
    pub rhs: BigInt,
    pub pass: bool,
}

impl Certificate {
    /// Passes iff `lhs == rhs`.
    pub fn equality(
        name: impl Into<String>,
        lhs: impl Into<BigInt>,
        rhs: impl Into<BigInt>,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        Self {
            name: name.into(),
            pass: lhs == rhs,
            lhs,
            rhs,
        }
    }

    /// Passes iff `lhs == rhs` and the extra side condition holds.
    pub fn guarded(
        name: impl Into<String>,
        lhs: impl Into<BigInt>,
        rhs: impl Into<BigInt>,
        side_condition: bool,
    ) -> Self {
        let mut cert = Self::equality(name, lhs, rhs);
        cert.pass &= side_condition;
        cert
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {}: {} vs {}", self.name, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "HPD1")]
    Hpd1,
    #[serde(rename = "HPD2_GT")]
    Hpd2Gt,
    #[serde(rename = "HPD2_EQ")]
    Hpd2Eq,
    #[serde(rename = "HPD2_LT")]
    Hpd2Lt,
    /// A Lefschetz decomposition on its own, with no hyperplane section.
    #[serde(rename = "LEFSCHETZ")]
    Lefschetz,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Hpd1 => "HPD1",
            CaseTag::Hpd2Gt => "HPD2_GT",
            CaseTag::Hpd2Eq => "HPD2_EQ",
            CaseTag::Hpd2Lt => "HPD2_LT",
            CaseTag::Lefschetz => "LEFSCHETZ",
        })
    }
}

/// A semi-orthogonal decomposition with its verification certificates.
///
/// `blocks` always decomposes the category named by the case: `D(H_L)` for
/// HPD I and HPD II. `refinement` further decomposes `C_{H_L}` (for `ℓ >= i`)
/// or `D(X_{L⊥})` (for `ℓ < i`); `alternative` is the relabelled form of the
/// latter with blocks `A(ℓ), …, A(i-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SODReport {
    pub case_tag: CaseTag,
    pub inputs: BTreeMap<String, i64>,
    pub blocks: Vec<SODBlock>,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refinement: Vec<SODBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alternative: Vec<SODBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

impl SODReport {
    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }

    pub fn total_rank(&self) -> BigInt {
        self.blocks
            .iter()
            .fold(BigInt::zero(), |acc, b| acc + &b.rank)
    }

    pub fn certificate(&self, name: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.name == name)
    }

    pub fn input(&self, key: &str) -> Option<i64> {
        self.inputs.get(key).copied()
    }

    /// Rank of the first block carrying `label`.
    pub fn rank_of(&self, label: BlockLabel) -> Option<&BigInt> {
        self.blocks
            .iter()
            .find(|b| b.label == label)
            .map(|b| &b.rank)
    }
}

pub(crate) fn inputs<const N: usize>(pairs: [(&str, i64); N]) -> BTreeMap<String, i64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
