//! HPD I and HPD II decompositions of `D(H_L)` for `(P^m, O(d))`, checked at
//! the level of additive invariants plus the cohomology vanishings the
//! arguments rest on.

use num_bigint::BigInt;
use num_traits::Zero;

use super::report::{inputs, BlockLabel, CaseTag, Certificate, SODBlock, SODReport};
use crate::bott::{line_cohomology, omega_cohomology};
use crate::chern::{chi_top, AmbientSpec, CISpec};
use crate::divisor_ext::{lemma_vanishing_table, DivisorGeometry};
use crate::error::{invalid, Error, Result};
use crate::kgroup::{is_exceptional_collection, Collection};

/// `χ_top(H_L)` for the `(d, 1)`-divisor in `P^m × P^{ℓ-1}`.
pub fn universal_hyperplane_chi(m: i64, d: i64, ell: i64) -> Result<BigInt> {
    let ambient = AmbientSpec::product(&[m as u32, (ell - 1) as u32])?;
    Ok(chi_top(&CISpec::new(ambient, vec![vec![d, 1]])?))
}

/// `χ_top(X_{L⊥})` for `ℓ` hypersurfaces of degree `d` in `P^m`.
pub fn base_locus_chi(m: i64, d: i64, ell: i64) -> Result<BigInt> {
    Ok(chi_top(&CISpec::in_projective_space(
        m as u32,
        d,
        ell as usize,
    )?))
}

fn total_dim(t: &crate::bott::GradedDims) -> BigInt {
    BigInt::from(t.total())
}

/// `D(H_L) = ⟨D(X_{L⊥}), π^*D(X)(0,1), …, π^*D(X)(0,ℓ-1)⟩`.
pub fn hpd1_decomposition(m: i64, d: i64, ell: i64) -> Result<SODReport> {
    if d < 1 {
        return Err(invalid(format!("d must be >= 1, got {d}")));
    }
    if ell < 2 || ell > m {
        return Err(invalid(format!(
            "HPD I needs 2 <= ell <= m so the base locus has expected dimension; got ell = {ell}, m = {m}"
        )));
    }
    let chi_hl = universal_hyperplane_chi(m, d, ell)?;
    let chi_base = base_locus_chi(m, d, ell)?;

    let mut blocks = vec![SODBlock::new(BlockLabel::BaseLocus, chi_base.clone())];
    for k in 1..ell {
        blocks.push(SODBlock::new(BlockLabel::AmbientTwist, m + 1).at(None, Some(k)));
    }

    let mut certificates = vec![Certificate::equality(
        "chi_identity",
        chi_hl.clone(),
        &chi_base + (ell - 1) * (m + 1),
    )];
    // j_*p^* is fully faithful: Λ^r N_j pushes forward to zero
    for r in 1..ell {
        let table = omega_cohomology(ell - 1, r, r)?;
        certificates.push(Certificate::equality(
            format!("normal_bundle_acyclic[r={r}]"),
            total_dim(&table),
            0,
        ));
    }
    // π^*D(X)(0,k) is left orthogonal to the base locus
    for k in 1..ell {
        let table = line_cohomology(ell - 1, -k)?;
        certificates.push(Certificate::equality(
            format!("fiber_vanishing[k={k}]"),
            total_dim(&table),
            0,
        ));
    }
    // π^*D(X)(0,k) is left orthogonal to π^*D(X)(0,n) for n < k
    for k in 2..ell {
        for n in 1..k {
            let a = line_cohomology(ell - 1, n - k)?;
            let b = line_cohomology(ell - 1, n - k - 1)?;
            certificates.push(Certificate::equality(
                format!("rho_vanishing[n={n},k={k}]"),
                total_dim(&a) + total_dim(&b),
                0,
            ));
        }
    }
    // over x ∉ X_{L⊥} the fibre is P^{ℓ-2}, spanned by O(1), …, O(ℓ-1)
    let twists: Vec<i64> = (1..ell).collect();
    let fiber = Collection::of_twists((ell - 2) as u32, &twists)?;
    let exceptional = is_exceptional_collection(&fiber).pass();
    certificates.push(Certificate::guarded(
        "fiber_generation",
        twists.len(),
        ell - 1,
        exceptional,
    ));

    let report_total: BigInt = blocks.iter().map(|b| b.rank.clone()).sum();
    certificates.push(Certificate::equality("total_rank", report_total, chi_hl));

    Ok(SODReport {
        case_tag: CaseTag::Hpd1,
        inputs: inputs([("m", m), ("d", d), ("ell", ell)]),
        blocks,
        certificates,
        refinement: Vec::new(),
        alternative: Vec::new(),
        annotations: vec![format!("dim X_Lperp = {}", m - ell)],
    })
}

/// `C_{H_L}` and its relation to `D(X_{L⊥})`, for rectangular data only.
pub fn hpd2_decomposition(m: i64, d: i64, ell: i64) -> Result<SODReport> {
    if d < 1 {
        return Err(invalid(format!("d must be >= 1, got {d}")));
    }
    if m < 1 {
        return Err(invalid(format!("m must be >= 1, got {m}")));
    }
    if (m + 1) % d != 0 {
        return Err(Error::NonRectangular { m, d });
    }
    if ell < 1 || ell > m {
        return Err(invalid(format!(
            "HPD II needs 1 <= ell <= m; got ell = {ell}, m = {m}"
        )));
    }
    let i = (m + 1) / d;
    let geometry = DivisorGeometry::new(m, d, ell)?;
    let chi_hl = universal_hyperplane_chi(m, d, ell)?;
    let chi_base = base_locus_chi(m, d, ell)?;
    let rank_c = &chi_hl - (i - 1) * ell * d;

    let mut blocks = vec![SODBlock::new(BlockLabel::HpdCategory, rank_c.clone())];
    for alpha in 1..i {
        for beta in 0..ell {
            blocks.push(SODBlock::lefschetz(alpha, beta, d));
        }
    }

    let lemma = lemma_vanishing_table(&geometry, i)?;
    let mut certificates = vec![Certificate::equality(
        "lefschetz_semiorthogonality",
        lemma.failures().count(),
        0,
    )];

    let (case_tag, case_cert, refinement, alternative) = match ell.cmp(&i) {
        std::cmp::Ordering::Greater => {
            let mut refinement = vec![SODBlock::new(BlockLabel::BaseLocus, chi_base.clone())];
            refinement.extend((1..=ell - i).map(|k| SODBlock::lefschetz(0, k, d)));
            let cert =
                Certificate::equality("case_identity", rank_c.clone(), &chi_base + (ell - i) * d);
            (CaseTag::Hpd2Gt, cert, refinement, Vec::new())
        }
        std::cmp::Ordering::Equal => {
            let refinement = vec![SODBlock::new(BlockLabel::BaseLocus, chi_base.clone())];
            let cert = Certificate::equality("case_identity", rank_c.clone(), chi_base.clone());
            (CaseTag::Hpd2Eq, cert, refinement, Vec::new())
        }
        std::cmp::Ordering::Less => {
            let mut refinement = vec![SODBlock::new(BlockLabel::HpdCategory, rank_c.clone())];
            refinement.extend((1..=i - ell).map(|k| SODBlock::lefschetz(k, 0, d)));
            let mut alternative = vec![SODBlock::new(BlockLabel::HpdCategory, rank_c.clone())];
            alternative.extend(
                (ell..i).map(|a| SODBlock::new(BlockLabel::LefschetzBlock, d).at(Some(a), None)),
            );
            let cert =
                Certificate::equality("case_identity", chi_base.clone(), &rank_c + (i - ell) * d);
            (CaseTag::Hpd2Lt, cert, refinement, alternative)
        }
    };
    certificates.push(case_cert);

    if ell >= 2 {
        certificates.push(Certificate::equality(
            "hpd1_chi_identity",
            chi_hl.clone(),
            &chi_base + (ell - 1) * (m + 1),
        ));
    }
    let report_total: BigInt = blocks.iter().map(|b| b.rank.clone()).sum();
    certificates.push(Certificate::equality("total_rank", report_total, chi_hl));
    // K_{P^m} = O(-m-1) is O_X(-i) exactly when the data is rectangular
    certificates.push(Certificate::equality("canonical_class", -(m + 1), -(i * d)));

    let base_canonical = ell * d - (m + 1);
    let mut annotations = vec![
        format!("K_X = O_X(-{i})"),
        format!("K of X_Lperp = O({base_canonical})"),
    ];
    if base_canonical == 0 {
        annotations.push("Calabi-Yau: X_Lperp and C_{H_L} are Calabi-Yau".to_string());
    }

    Ok(SODReport {
        case_tag,
        inputs: inputs([("m", m), ("d", d), ("ell", ell), ("i", i)]),
        blocks,
        certificates,
        refinement,
        alternative,
        annotations,
    })
}

/// `rank C_{H_L}` from its definition as an orthogonal complement.
pub fn hpd_category_rank(m: i64, d: i64, ell: i64) -> Result<BigInt> {
    let report = hpd2_decomposition(m, d, ell)?;
    Ok(report
        .rank_of(BlockLabel::HpdCategory)
        .cloned()
        .unwrap_or_else(BigInt::zero))
}
