//! Worked examples, evaluated through the HPD II pipeline at the level of
//! Euler characteristics.

use std::fmt;

use num_bigint::BigInt;

use super::decomposition::hpd2_decomposition;
use super::report::{inputs, BlockLabel, CaseTag, Certificate, SODBlock, SODReport};
use crate::binomial::binomial;
use crate::chern::{chi_top, CISpec};
use crate::error::{invalid, Error, Result};

pub const CATALOG_NAMES: [&str; 4] = [
    "quadric_even",
    "cubic_fourfold",
    "grassmannian_lefschetz",
    "two_cubics_pencil",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogEntry {
    /// `Q^{2n} ⊂ P^{2n+1}`; the HPD category is two points.
    QuadricEven { n: i64 },
    /// The cubic fourfold, whose HPD category looks like a K3 surface.
    CubicFourfold,
    /// `Gr(2, 2n+1)` with its rectangular Lefschetz decomposition of length `2n+1`.
    GrassmannianLefschetz { n: i64 },
    /// A pencil of cubics in `P^5`, base locus a Calabi-Yau threefold.
    TwoCubicsPencil,
}

impl CatalogEntry {
    pub fn parse(name: &str, n: Option<i64>) -> Result<Self> {
        let need_n = |default: i64| -> Result<i64> {
            let n = n.unwrap_or(default);
            if n < 1 {
                return Err(invalid(format!("{name} needs n >= 1, got {n}")));
            }
            Ok(n)
        };
        match name {
            "quadric_even" => Ok(CatalogEntry::QuadricEven { n: need_n(1)? }),
            "cubic_fourfold" => Ok(CatalogEntry::CubicFourfold),
            "grassmannian_lefschetz" => Ok(CatalogEntry::GrassmannianLefschetz { n: need_n(1)? }),
            "two_cubics_pencil" => Ok(CatalogEntry::TwoCubicsPencil),
            other => Err(Error::UnknownExample(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatalogEntry::QuadricEven { .. } => "quadric_even",
            CatalogEntry::CubicFourfold => "cubic_fourfold",
            CatalogEntry::GrassmannianLefschetz { .. } => "grassmannian_lefschetz",
            CatalogEntry::TwoCubicsPencil => "two_cubics_pencil",
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogEntry::QuadricEven { n } | CatalogEntry::GrassmannianLefschetz { n } => {
                write!(f, "{}(n={n})", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

fn hpd_rank(report: &SODReport) -> BigInt {
    report
        .rank_of(BlockLabel::HpdCategory)
        .cloned()
        .expect("HPD II reports lead with the HPD category")
}

pub fn example_catalog(entry: CatalogEntry) -> Result<SODReport> {
    match entry {
        CatalogEntry::QuadricEven { n } => {
            let mut report = hpd2_decomposition(2 * n + 1, 2, 1)?;
            let rank = hpd_rank(&report);
            report
                .certificates
                .push(Certificate::equality("two_points", rank, 2));
            report.inputs.insert("n".into(), n);
            Ok(report)
        }
        CatalogEntry::CubicFourfold => {
            let mut report = hpd2_decomposition(5, 3, 1)?;
            let rank = hpd_rank(&report);
            let k3 = chi_top(&CISpec::in_projective_space(3, 4, 1)?);
            report
                .certificates
                .push(Certificate::equality("k3_euler_characteristic", rank, k3));
            Ok(report)
        }
        CatalogEntry::TwoCubicsPencil => {
            let mut report = hpd2_decomposition(5, 3, 2)?;
            let base = chi_top(&CISpec::in_projective_space(5, 3, 2)?);
            report
                .certificates
                .push(Certificate::equality("base_locus_chi", base, -144));
            // K = O(-6 + 2·3)
            report
                .certificates
                .push(Certificate::equality("base_locus_canonical", -6 + 2 * 3, 0));
            Ok(report)
        }
        CatalogEntry::GrassmannianLefschetz { n } => {
            // literature inputs: Gr(2, 2n+1) has C(2n+1, 2) Schubert cells and
            // the block ⟨S^{n-1}U, …, U, O⟩ has n objects
            let i = 2 * n + 1;
            let chi = BigInt::from(binomial(i, 2));
            let blocks: Vec<SODBlock> = (0..i)
                .map(|a| SODBlock::new(BlockLabel::LefschetzBlock, n).at(Some(a), None))
                .collect();
            let total: BigInt = blocks.iter().map(|b| b.rank.clone()).sum();
            let certificates = vec![
                Certificate::equality("lefschetz_rank", chi.clone(), i * n),
                Certificate::equality("total_rank", total, chi),
            ];
            Ok(SODReport {
                case_tag: CaseTag::Lefschetz,
                inputs: inputs([("n", n), ("i", i)]),
                blocks,
                certificates,
                refinement: Vec::new(),
                alternative: Vec::new(),
                annotations: vec![
                    "literature input: chi(Gr(2,2n+1)) = C(2n+1,2)".to_string(),
                    "literature input: block rank n".to_string(),
                ],
            })
        }
    }
}
