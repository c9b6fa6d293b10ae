//! Lefschetz decompositions `D(P^m) = ⟨A, A(1), …, A(i-1)⟩` for the
//! polarization `O(d)`, with `A = ⟨O, O(1), …, O(d-1)⟩`.

use num_bigint::BigInt;

use super::report::Certificate;
use crate::error::{invalid, Error, Result};
use crate::kgroup::{is_exceptional_collection, Collection, ExceptionalityReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzData {
    pub m: i64,
    pub d: i64,
    /// Number of blocks.
    pub i: i64,
    /// Twists of the first block `A`.
    pub block: Vec<i64>,
    pub rectangular: bool,
    /// Size of the final block `A'`; equals `block.len()` when rectangular.
    pub last_block_size: usize,
}

pub fn build_lefschetz(m: i64, d: i64, require_rectangular: bool) -> Result<LefschetzData> {
    if m < 0 {
        return Err(invalid(format!("m must be >= 0, got {m}")));
    }
    if d < 1 {
        return Err(invalid(format!("d must be >= 1, got {d}")));
    }
    let n = m + 1;
    let rectangular = n % d == 0;
    if require_rectangular && !rectangular {
        return Err(Error::NonRectangular { m, d });
    }
    // i = ⌈n/d⌉ and n = (i-1) d + r
    let i = (n + d - 1) / d;
    let r = n - (i - 1) * d;
    Ok(LefschetzData {
        m,
        d,
        i,
        block: (0..d).collect(),
        rectangular,
        last_block_size: r as usize,
    })
}

impl LefschetzData {
    /// Twists of each block `A(α)`, the last one truncated to `A'(i-1)`.
    pub fn blocks(&self) -> Vec<Vec<i64>> {
        (0..self.i)
            .map(|alpha| {
                let take = if alpha == self.i - 1 {
                    self.last_block_size
                } else {
                    self.block.len()
                };
                self.block
                    .iter()
                    .take(take)
                    .map(|s| s + alpha * self.d)
                    .collect()
            })
            .collect()
    }

    pub fn flattened(&self) -> Vec<i64> {
        self.blocks().concat()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzValidation {
    pub exceptionality: ExceptionalityReport,
    pub rank_identity: Certificate,
}

impl LefschetzValidation {
    pub fn pass(&self) -> bool {
        self.exceptionality.pass() && self.rank_identity.pass
    }
}

/// The flattened twist list must be an exceptional collection on `P^m`
/// and the blocks must account for all `m + 1` Beilinson generators.
pub fn validate_lefschetz(ld: &LefschetzData) -> Result<LefschetzValidation> {
    let twists = ld.flattened();
    let collection = Collection::of_twists(ld.m as u32, &twists)?;
    let exceptionality = is_exceptional_collection(&collection);
    let counted = BigInt::from(twists.len());
    let shape_ok = !ld.rectangular || ld.last_block_size == ld.block.len();
    let rank_identity = Certificate::guarded("lefschetz_rank", counted, ld.m + 1, shape_ok);
    Ok(LefschetzValidation {
        exceptionality,
        rank_identity,
    })
}
