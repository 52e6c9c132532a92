use std::collections::BTreeMap;

use proptest::prelude::*;

use novikov::algebra::Algebra;
use novikov::arith::expr::{ScalarExpr, ZeroTest};
use novikov::arith::gauss::{rat, GaussRational};
use novikov::arith::poly::Symbol;
use novikov::arith::puiseux::puiseux_normalize;
use novikov::arith::ratfunc::RatFunc;
use novikov::catalog::builtin;
use novikov::cohomology::{self, Cocycle};
use novikov::linalg;

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| GaussRational::new(rat(a, b), rat(c, d)))
}

/// Small polynomial expressions in `lambda` and `alpha`.
fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3), 1..4).prop_map(|terms| {
        terms.iter().map(|(c, p, q)| format!("({c})*lambda^{p}*alpha^{q}")).collect::<Vec<_>>().join(" + ")
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly_text(), poly_text()).prop_filter_map("zero denominator", |(n, d)| {
        ScalarExpr::parse(&format!("({n}) / ({d})")).ok()?.to_ratfunc().ok()
    })
}

fn nonzero_value() -> impl Strategy<Value = GaussRational> {
    (1i64..=9, 1i64..=7, prop::bool::ANY).prop_map(|(n, d, neg)| GaussRational::from_ratio(if neg { -n } else { n }, d))
}

fn assign(l: &GaussRational, a: &GaussRational) -> BTreeMap<Symbol, GaussRational> {
    [(Symbol::new("lambda"), l.clone()), (Symbol::new("alpha"), a.clone())].into()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gaussian_rationals_form_a_field(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, GaussRational::from_int(1));
        } else {
            prop_assert_eq!(a, GaussRational::from_int(0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_functions_form_a_field(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn exact_zero_test_agrees_with_evaluation(a in ratfunc(), b in ratfunc(), pts in prop::collection::vec((nonzero_value(), nonzero_value()), 20)) {
        let zero = ScalarExpr::from_ratfunc(&a.mul(&b).sub(&b.mul(&a)));
        let other = ScalarExpr::from_ratfunc(&a.add(&b));
        for e in [zero, other] {
            let exact = e.is_zero(ZeroTest::Exact, &BTreeMap::new()).unwrap();
            let mut numeric = true;
            for (l, al) in &pts {
                // A pole at a sample point says nothing about zero-ness.
                if let Ok(v) = e.eval_gauss(&assign(l, al), 50) {
                    numeric &= v.abs(200).below_decimal(25.0);
                }
            }
            prop_assert_eq!(exact, numeric, "{}", e);
        }
    }

    #[test]
    fn display_parse_roundtrip(a in ratfunc()) {
        let e = ScalarExpr::from_ratfunc(&a);
        prop_assert_eq!(ScalarExpr::parse(&e.to_string()).unwrap().to_ratfunc().unwrap(), a);
    }
}

/// `Σ c_k t^(p_k) root(3, t)^(q_k)`.
fn puiseux_text() -> impl Strategy<Value = String> {
    prop::collection::vec((-4i64..=4, -2i64..=3, 0i64..=2), 1..4).prop_map(|terms| {
        terms
            .iter()
            .map(|(c, p, q)| format!("({c})*t^({p})*root(3, t)^{q}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn puiseux_normalization_is_multiplicative(a in puiseux_text(), b in puiseux_text()) {
        let t = Symbol::new("t");
        let ea = ScalarExpr::parse(&a).unwrap();
        let eb = ScalarExpr::parse(&b).unwrap();
        let prod = ScalarExpr::parse(&format!("({a}) * ({b})")).unwrap();
        let lhs = puiseux_normalize(&prod, &t).unwrap();
        let rhs = puiseux_normalize(&ea, &t).unwrap().mul(&puiseux_normalize(&eb, &t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = ScalarExpr::parse(&format!("({a}) + ({b})")).unwrap();
        let rhs = puiseux_normalize(&ea, &t).unwrap().add(&puiseux_normalize(&eb, &t).unwrap()).unwrap();
        prop_assert_eq!(puiseux_normalize(&sum, &t).unwrap(), rhs);
    }
}

fn table_a_name() -> impl Strategy<Value = String> {
    (1usize..=24).prop_map(|k| format!("N4_{k:02}"))
}

fn instance(name: &str, v: &GaussRational) -> Option<Algebra> {
    let e = builtin().entry(name).ok()?;
    let at = e.family_params().iter().map(|p| (p.clone(), v.clone())).collect();
    e.algebra.instantiate(&at).ok()
}

fn rf(g: &GaussRational) -> RatFunc {
    RatFunc::constant(g.clone())
}

fn invertible(n: usize) -> impl Strategy<Value = Vec<Vec<RatFunc>>> {
    prop::collection::vec(-3i64..=3, n * n).prop_filter_map("singular", move |v| {
        let m: Vec<Vec<RatFunc>> = v.chunks(n).map(|r| r.iter().map(|&x| RatFunc::int(x)).collect()).collect();
        (linalg::rank(&m, n) == n).then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn diagonal_rescaling_scales_constants(name in table_a_name(), v in nonzero_value(), d in prop::collection::vec(nonzero_value(), 4)) {
        let Some(a) = instance(&name, &v) else { return Ok(()) };
        let basis: Vec<Vec<RatFunc>> = (0..4).map(|i| (0..4).map(|j| if i == j { rf(&d[i]) } else { RatFunc::zero() }).collect()).collect();
        let b = a.in_basis(&basis).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let f = rf(&(&(&d[i] * &d[j]) / &d[k]));
                    prop_assert_eq!(b.c(i, j, k), &a.c(i, j, k).mul(&f));
                }
            }
        }
    }

    #[test]
    fn basis_change_preserves_invariants(name in table_a_name(), v in nonzero_value(), m in invertible(4)) {
        let Some(a) = instance(&name, &v) else { return Ok(()) };
        let b = a.in_basis(&m).unwrap();
        prop_assert!(b.check_identities().novikov);
        prop_assert_eq!(a.invariant_profile(None).unwrap(), b.invariant_profile(None).unwrap());
        let (sa, sb) = (cohomology::cocycle_space(&a), cohomology::cocycle_space(&b));
        prop_assert_eq!((sa.z2.len(), sa.b2.len()), (sb.z2.len(), sb.b2.len()));
    }

    #[test]
    fn cocycle_iff_novikov_extension(k in 1usize..=7, coeffs in prop::collection::vec(-2i64..=2, 9), v in nonzero_value()) {
        let dim3 = ["N3s_01", "N3s_02", "N3s_03", "N3s_04", "N3s_04_0", "N3_01", "N3_02"];
        let Some(a) = instance(dim3[k - 1], &v) else { return Ok(()) };
        let mut th = Cocycle::zero(3);
        for (idx, c) in coeffs.iter().enumerate() {
            th.matrix[idx / 3][idx % 3] = RatFunc::int(*c);
        }
        let n = 4;
        let mut c = vec![RatFunc::zero(); n * n * n];
        for i in 0..3 {
            for j in 0..3 {
                for kk in 0..3 {
                    c[(i * n + j) * n + kk] = a.c(i, j, kk).clone();
                }
                c[(i * n + j) * n + 3] = th.matrix[i][j].clone();
            }
        }
        let ext = Algebra::from_dense("ext".into(), n, vec![], vec![], c).unwrap();
        prop_assert_eq!(cohomology::is_cocycle(&a, &th).unwrap(), ext.check_identities().novikov);
    }

    #[test]
    fn cocycle_spaces_transform_with_the_basis(name in table_a_name(), v in nonzero_value(), m in invertible(4)) {
        let Some(a) = instance(&name, &v) else { return Ok(()) };
        let sa = cohomology::cocycle_space(&a);
        for b in &sa.b2 {
            prop_assert!(cohomology::is_cocycle(&a, b).unwrap());
        }
        prop_assert_eq!(sa.z2.len(), sa.b2.len() + sa.h2.len());
        // θ'(E_i, E_j) = Σ m_ip m_jq θ(e_p, e_q), i.e. θ' = M θ Mᵀ.
        let sb = cohomology::cocycle_space(&a.in_basis(&m).unwrap());
        let mt = linalg::transpose(&m);
        let moved = |v: &[Cocycle]| -> Vec<Vec<RatFunc>> {
            v.iter().map(|c| Cocycle { matrix: linalg::mat_mul(&linalg::mat_mul(&m, &c.matrix), &mt) }.to_vector()).collect()
        };
        let vecs = |v: &[Cocycle]| v.iter().map(Cocycle::to_vector).collect::<Vec<_>>();
        prop_assert!(linalg::same_span(&moved(&sa.b2), &vecs(&sb.b2), 16));
        prop_assert!(linalg::same_span(&moved(&sa.z2), &vecs(&sb.z2), 16));
    }

    #[test]
    fn json_roundtrip(name in table_a_name()) {
        let a = &builtin().entry(&name).unwrap().algebra;
        let back = Algebra::from_json_str(&serde_json::to_string(&a.to_json()).unwrap()).unwrap();
        prop_assert!(back.same_constants(a));
        prop_assert_eq!(back.params(), a.params());
        prop_assert_eq!(back.constraints(), a.constraints());
    }
}
