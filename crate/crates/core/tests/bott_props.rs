use hpd_calc::binomial::binomial;
use hpd_calc::bott::{kunneth, line_cohomology, omega_cohomology, CohomQuery, GradedDims};
use num_bigint::BigInt;
use proptest::prelude::*;

/// `(k+1)(k+2)…(k+n) / n!` by direct product.
fn hilbert_poly(n: i64, k: i64) -> BigInt {
    let num: BigInt = (1..=n).map(|j| BigInt::from(k + j)).product();
    let den: BigInt = (1..=n).map(BigInt::from).product();
    num / den
}

/// `χ(Ω^p(k))` from `0 → Ω^p → Λ^p(O(-1)^{n+1}) → Ω^{p-1} → 0`.
fn euler_sequence_chi(n: i64, p: i64, k: i64) -> BigInt {
    (0..=p)
        .map(|j| {
            let c = BigInt::from(binomial(n + 1, p - j));
            let term = c * hilbert_poly(n, k - p + j);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn serre_dual_holds(n: i64, p: i64, k: i64) -> bool {
    let a = omega_cohomology(n, p, k).unwrap();
    let b = omega_cohomology(n, n - p, -k).unwrap();
    (0..=n as u32).all(|q| a.get(q) == b.get(n as u32 - q))
}

#[test]
fn serre_duality_full_range() {
    for n in 0..=6 {
        for p in 0..=n {
            for k in -12..=12 {
                assert!(serre_dual_holds(n, p, k), "n={n} p={p} k={k}");
            }
        }
    }
}

#[test]
fn line_bundle_chi_is_hilbert_polynomial() {
    for n in 0..=6 {
        for k in -12..=12 {
            assert_eq!(
                line_cohomology(n, k).unwrap().euler(),
                hilbert_poly(n, k),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn euler_sequence_consistency() {
    for n in 0..=5 {
        for p in 0..=n {
            for k in -8..=8 {
                let table = omega_cohomology(n, p, k).unwrap();
                assert_eq!(
                    table.euler(),
                    euler_sequence_chi(n, p, k),
                    "n={n} p={p} k={k}"
                );
            }
        }
    }
}

#[test]
fn acyclicity_band() {
    for n in 1..=8 {
        for r in 1..=n {
            assert!(
                omega_cohomology(n, r, r).unwrap().is_empty(),
                "Ω^{r}({r}) on P^{n}"
            );
        }
    }
}

#[test]
fn tables_are_concentrated_in_one_degree() {
    for n in 0..=6 {
        for p in 0..=n {
            for k in -12..=12 {
                assert!(omega_cohomology(n, p, k).unwrap().support().len() <= 1);
            }
        }
    }
}

#[test]
fn shift_on_fiber() {
    for ell in 2..=8i64 {
        let t = line_cohomology(ell - 1, -ell).unwrap();
        assert_eq!(t, GradedDims::single((ell - 1) as u32, 1u32));
    }
}

fn query() -> impl Strategy<Value = CohomQuery> {
    (0i64..=6)
        .prop_flat_map(|n| (Just(n), 0..=n, -12i64..=12))
        .prop_map(|(n, p, k)| CohomQuery::new(n, p, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn kunneth_chi_multiplies(f1 in query(), f2 in query()) {
        let prod = kunneth(&[f1, f2]);
        prop_assert_eq!(prod.euler(), f1.cohomology().euler() * f2.cohomology().euler());
        prop_assert_eq!(prod.total(), f1.cohomology().total() * f2.cohomology().total());
    }

    #[test]
    fn kunneth_is_symmetric(f1 in query(), f2 in query()) {
        prop_assert_eq!(kunneth(&[f1, f2]), kunneth(&[f2, f1]));
    }

    #[test]
    fn serre_duality_random(n in 0i64..=10, k in -30i64..=30, p_frac in 0.0f64..=1.0) {
        let p = ((n as f64) * p_frac).round() as i64;
        prop_assert!(serre_dual_holds(n, p, k));
    }
}
