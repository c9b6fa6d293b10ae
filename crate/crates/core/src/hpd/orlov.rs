//! Additive shadows of Orlov's projective-bundle and blow-up decompositions.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::report::Certificate;
use crate::chern::{blowup_chi, chi_top, AmbientSpec, CISpec};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrlovParams {
    /// `D(P(E)) = ⟨D(B), D(B)(1), …, D(B)(n-1)⟩` for a rank-`n` bundle.
    ProjectiveBundle {
        #[serde(with = "crate::bigint_serde")]
        chi_base: BigInt,
        rank: i64,
        #[serde(with = "crate::bigint_serde")]
        chi_total: BigInt,
    },
    /// `D(Bl_Z X) = ⟨D(Z), …, D(Z), D(X)⟩` with `codim - 1` copies of `D(Z)`.
    Blowup {
        #[serde(with = "crate::bigint_serde")]
        chi_x: BigInt,
        #[serde(with = "crate::bigint_serde")]
        chi_z: BigInt,
        codim: i64,
        /// `χ(Bl_Z X)` computed some other way, if available.
        #[serde(
            default,
            with = "option_bigint",
            skip_serializing_if = "Option::is_none"
        )]
        chi_blowup: Option<BigInt>,
    },
}

mod option_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrapped(#[serde(with = "crate::bigint_serde")] BigInt);

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(Wrapped).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<Wrapped>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrlovReport {
    pub params: OrlovParams,
    pub certificates: Vec<Certificate>,
}

impl OrlovReport {
    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }
}

pub fn orlov_checks(params: OrlovParams) -> Result<OrlovReport> {
    let certificates = match &params {
        OrlovParams::ProjectiveBundle {
            chi_base,
            rank,
            chi_total,
        } => {
            if *rank < 1 {
                return Err(invalid(format!("bundle rank must be >= 1, got {rank}")));
            }
            vec![Certificate::equality(
                "projective_bundle",
                chi_base * rank,
                chi_total.clone(),
            )]
        }
        OrlovParams::Blowup {
            chi_x,
            chi_z,
            codim,
            chi_blowup,
        } => {
            if *codim < 2 {
                return Err(invalid(format!(
                    "blow-up centre needs codimension >= 2, got {codim}"
                )));
            }
            let additive = chi_x + chi_z * (codim - 1);
            let mut certs = vec![Certificate::equality(
                "blowup_formula",
                additive.clone(),
                blowup_chi(chi_x, chi_z, *codim)?,
            )];
            if let Some(direct) = chi_blowup {
                certs.push(Certificate::equality(
                    "blowup_direct",
                    additive,
                    direct.clone(),
                ));
            }
            certs
        }
    };
    Ok(OrlovReport {
        params,
        certificates,
    })
}

/// Geometric instances whose total space is itself a complete intersection,
/// so both sides can be computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrlovInstance {
    /// `P^1 × P^1` as the trivial `P^1`-bundle over `P^1`.
    ProductSurface,
    /// `Bl_pt P^2`, the `(1,1)`-divisor in `P^2 × P^1`, as a `P^1`-bundle over `P^1`.
    HirzebruchF1,
    BlowupPointP2,
    BlowupLineP3,
}

impl OrlovInstance {
    pub const ALL: [OrlovInstance; 4] = [
        OrlovInstance::ProductSurface,
        OrlovInstance::HirzebruchF1,
        OrlovInstance::BlowupPointP2,
        OrlovInstance::BlowupLineP3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrlovInstance::ProductSurface => "product_p1_p1",
            OrlovInstance::HirzebruchF1 => "hirzebruch_f1",
            OrlovInstance::BlowupPointP2 => "blowup_point_p2",
            OrlovInstance::BlowupLineP3 => "blowup_line_p3",
        }
    }

    pub fn params(self) -> Result<OrlovParams> {
        let divisor_11 = |m: u32| -> Result<BigInt> {
            Ok(chi_top(&CISpec::new(
                AmbientSpec::product(&[m, 1])?,
                vec![vec![1, 1]],
            )?))
        };
        let p = |n: u32| AmbientSpec::projective(n).chi();
        Ok(match self {
            OrlovInstance::ProductSurface => OrlovParams::ProjectiveBundle {
                chi_base: p(1),
                rank: 2,
                chi_total: AmbientSpec::product(&[1, 1])?.chi(),
            },
            OrlovInstance::HirzebruchF1 => OrlovParams::ProjectiveBundle {
                chi_base: p(1),
                rank: 2,
                chi_total: divisor_11(2)?,
            },
            OrlovInstance::BlowupPointP2 => OrlovParams::Blowup {
                chi_x: p(2),
                chi_z: p(0),
                codim: 2,
                chi_blowup: Some(divisor_11(2)?),
            },
            OrlovInstance::BlowupLineP3 => OrlovParams::Blowup {
                chi_x: p(3),
                chi_z: p(1),
                codim: 2,
                chi_blowup: Some(divisor_11(3)?),
            },
        })
    }

    pub fn check(self) -> Result<OrlovReport> {
        orlov_checks(self.params()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hirzebruch() {
        let r = orlov_checks(OrlovParams::ProjectiveBundle {
            chi_base: 2.into(),
            rank: 2,
            chi_total: 4.into(),
        })
        .unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn builtin_instances() {
        for inst in OrlovInstance::ALL {
            let r = inst.check().unwrap();
            assert!(r.all_pass(), "{}: {:?}", inst.name(), r.certificates);
        }
        let r = OrlovInstance::BlowupLineP3.check().unwrap();
        let direct = r
            .certificates
            .iter()
            .find(|c| c.name == "blowup_direct")
            .unwrap();
        assert_eq!(
            (direct.lhs.clone(), direct.rhs.clone()),
            (6.into(), 6.into())
        );
        let r = OrlovInstance::BlowupPointP2.check().unwrap();
        assert_eq!(r.certificates[0].lhs, BigInt::from(4));
    }

    #[test]
    fn wrong_total_fails() {
        let r = orlov_checks(OrlovParams::Blowup {
            chi_x: 3.into(),
            chi_z: 1.into(),
            codim: 2,
            chi_blowup: Some(5.into()),
        })
        .unwrap();
        assert!(!r.all_pass());
    }

    #[test]
    fn rejections() {
        assert!(orlov_checks(OrlovParams::ProjectiveBundle {
            chi_base: 1.into(),
            rank: 0,
            chi_total: 0.into(),
        })
        .is_err());
        assert!(orlov_checks(OrlovParams::Blowup {
            chi_x: 1.into(),
            chi_z: 1.into(),
            codim: 1,
            chi_blowup: None,
        })
        .is_err());
    }
}
