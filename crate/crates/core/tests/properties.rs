use num_traits::Signed;
use proptest::prelude::*;
use quadalg::bocher::{
    builtin, compose, contracted_basis, generator_limit, validate_bocher, BocherKind, BocherMatrix,
    GeneratorDictionary, VectorFieldOp, PAIRS,
};
use quadalg::canon::{canonicalize, in_domain, CanonicalForm};
use quadalg::catalog::all_systems;
use quadalg::contract::{builtin_curves, stratum_obstruction, Obstruction};
use quadalg::exactfield::{rank, CompareMode, FieldElem, Q};
use quadalg::qalg::{
    g_action, stackel_free, stackel_ring, stratum, structure_equations, Casimir, Mat3, PARAM_VARS,
};
use quadalg::symbolic::{eps_limit, qi, substitute_linear, EpsPoly, EpsSeries, MultiPoly};
use std::cmp::Ordering;
use std::sync::OnceLock;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Elements of K with about half of the eight coordinates populated.
fn field_elem() -> impl Strategy<Value = FieldElem> {
    proptest::collection::vec(prop_oneof![1 => Just(q(0, 1)), 1 => small_q()], 8)
        .prop_map(|v| FieldElem::new(std::array::from_fn(|k| v[k].clone())))
}

fn gauss() -> impl Strategy<Value = FieldElem> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| FieldElem::gauss(q(a, 1), q(b, 1)))
}

/// Invertible elements of G over Q(i): bottom row (0, 0, c).
fn g_matrix() -> impl Strategy<Value = Mat3> {
    proptest::collection::vec(gauss(), 7)
        .prop_map(|v| {
            let z = FieldElem::zero();
            Mat3::from_rows([
                [v[0].clone(), v[1].clone(), v[2].clone()],
                [v[3].clone(), v[4].clone(), v[5].clone()],
                [z.clone(), z, v[6].clone()],
            ])
        })
        .prop_filter("invertible", |m| !m.det().is_zero())
}

const X: [&str; 3] = ["X1", "X2", "X3"];

fn monomials(deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg - a {
            out.push(vec![a, b, deg - a - b]);
        }
    }
    out
}

fn cubic() -> impl Strategy<Value = Casimir> {
    proptest::collection::vec(prop_oneof![2 => Just(0i64), 3 => -3i64..=3], 10).prop_map(|cs| {
        let terms = monomials(3).into_iter().zip(cs).map(|(m, c)| (m, FieldElem::from_int(c)));
        Casimir::new(MultiPoly::from_terms(&X, terms))
    })
}

/// Polynomials of degree ≤ 3 in X1..X3 with Gaussian-integer coefficients.
fn poly() -> impl Strategy<Value = MultiPoly> {
    let ms: Vec<Vec<u32>> = (0..=3).flat_map(monomials).collect();
    let n = ms.len();
    proptest::collection::vec(prop_oneof![3 => Just(None), 1 => gauss().prop_map(Some)], n).prop_map(move |cs| {
        MultiPoly::from_terms(&X, ms.iter().cloned().zip(cs).filter_map(|(m, c)| c.map(|c| (m, c))))
    })
}

fn series() -> impl Strategy<Value = EpsSeries> {
    proptest::collection::vec((-2i64..=2, gauss()), 0..3)
        .prop_map(|ts| EpsSeries::from_terms(ts.into_iter().map(|(e, c)| (qi(e), c))))
}

fn eps_matrix() -> impl Strategy<Value = Vec<Vec<EpsSeries>>> {
    proptest::collection::vec(proptest::collection::vec(series(), 3), 3)
}

/// Every catalog Casimir with a canonical form over K, families pinned at b = 1.
fn catalog_canonical() -> &'static [(String, Casimir, CanonicalForm)] {
    static CACHE: OnceLock<Vec<(String, Casimir, CanonicalForm)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        all_systems()
            .iter()
            .filter_map(|s| {
                let f = s.free_casimir(Some(&FieldElem::one())).ok()?;
                let c = canonicalize(&f).ok()?;
                Some((s.name.to_string(), f, c))
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in field_elem(), b in field_elem(), c in field_elem()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn real_and_imaginary_parts(a in field_elem()) {
        prop_assert_eq!(&a.re() + &(&FieldElem::i() * &a.im()), a);
    }

    #[test]
    fn modulus_order_is_total_preorder(a in field_elem(), b in field_elem(), c in field_elem()) {
        let m = CompareMode::Modulus;
        let ab = a.complex_compare(&b, m).unwrap();
        prop_assert_eq!(ab, b.complex_compare(&a, m).unwrap().reverse());
        let bc = b.complex_compare(&c, m).unwrap();
        if ab != Ordering::Greater && bc != Ordering::Greater {
            prop_assert_ne!(a.complex_compare(&c, m).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn argument_order_is_total_preorder(a in field_elem(), b in field_elem(), c in field_elem()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let m = CompareMode::Argument;
        let ab = a.complex_compare(&b, m).unwrap();
        prop_assert_eq!(ab, b.complex_compare(&a, m).unwrap().reverse());
        let bc = b.complex_compare(&c, m).unwrap();
        if ab != Ordering::Greater && bc != Ordering::Greater {
            prop_assert_ne!(a.complex_compare(&c, m).unwrap(), Ordering::Greater);
        }
        // equal arguments: a/b is a positive real
        if ab == Ordering::Equal {
            let r = &a * &b.inv().unwrap();
            prop_assert!(r.is_real() && r.real_sign() == Some(1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn substitution_is_a_ring_homomorphism(p in poly(), r in poly(), m in eps_matrix()) {
        let s = |x: &MultiPoly| substitute_linear(x, &m).unwrap();
        prop_assert_eq!(s(&p.add(&r)), s(&p).add(&s(&r)));
        prop_assert_eq!(s(&p.mul(&r)), s(&p).mul(&s(&r)));
    }

    #[test]
    fn substitution_then_inverse_is_identity(p in poly(), a in g_matrix(), e in -2i64..=2) {
        // M = diag(ε^e, ε^−e, 1)·A: invertible over the series field
        let d = [qi(e), qi(-e), qi(0)];
        let m: Vec<Vec<EpsSeries>> = (0..3)
            .map(|i| (0..3).map(|j| EpsSeries::monomial(a.get(i, j).clone(), d[i].clone())).collect())
            .collect();
        let ai = a.inverse().unwrap();
        let mi: Vec<Vec<EpsSeries>> = (0..3)
            .map(|i| (0..3).map(|j| EpsSeries::monomial(ai.get(i, j).clone(), -d[j].clone())).collect())
            .collect();
        let once = substitute_linear(&p, &m).unwrap();
        // substitute the inverse into each ε-part, then collect
        let mut back = EpsPoly::zero(p.vars());
        for (o, part) in once.parts() {
            let t = substitute_linear(part, &mi).unwrap();
            for (o2, part2) in t.parts() {
                back.add_part(o + o2, part2.clone());
            }
        }
        prop_assert_eq!(back, EpsPoly::from_poly(&p));
    }

    #[test]
    fn eps_limit_exists_iff_nonnegative_order(parts in proptest::collection::vec((-3i64..=3, poly()), 0..4)) {
        let vars: Vec<String> = X.iter().map(|s| s.to_string()).collect();
        let s = EpsPoly::from_parts(&vars, parts.into_iter().map(|(e, p)| (qi(e), p)));
        let ok = s.min_order().is_none_or(|o| !o.is_negative());
        prop_assert_eq!(eps_limit(&s).is_ok(), ok);
    }

    #[test]
    fn group_action_law(a in g_matrix(), b in g_matrix(), f in cubic()) {
        prop_assert_eq!(g_action(&a.mul(&b), &f).unwrap(), g_action(&a, &g_action(&b, &f).unwrap()).unwrap());
        prop_assert_eq!(g_action(&Mat3::identity(), &f).unwrap(), f);
    }

    #[test]
    fn stratum_is_g_invariant(a in g_matrix(), f in cubic()) {
        prop_assert_eq!(stratum(&g_action(&a, &f).unwrap()), stratum(&f));
    }

    #[test]
    fn structure_equations_follow_the_chain_rule(a in g_matrix(), f in cubic()) {
        // G(x) = det(A2)²·F(A⁻¹x), so ∂G/∂X_j = det(A2)²·Σ_i (∂_i F)(A⁻¹x)·(A⁻¹)_ij
        let g = g_action(&a, &f).unwrap();
        let (g1, g2) = structure_equations(&g);
        let ai = a.inverse().unwrap();
        let x = |k: usize| f.form.var_like(k);
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| (0..3).fold(f.form.zero_like(), |acc, j| acc.add(&x(j).scale(ai.get(i, j)))))
            .collect();
        let (f1, f2) = structure_equations(&f);
        let two = FieldElem::from_int(2);
        // ∂_1 F = −2{L2,R}, ∂_2 F = 2{L1,R}
        let grads = [f2.scale(&-two.clone()), f1.scale(&two), f.form.derivative(2)];
        let pulled: Vec<MultiPoly> = grads.iter().map(|p| p.compose(&images).unwrap()).collect();
        let d2 = a.det2();
        let k = &d2 * &d2;
        let dg = |j: usize| (0..3).fold(f.form.zero_like(), |acc, i| acc.add(&pulled[i].scale(ai.get(i, j)))).scale(&k);
        let half = FieldElem::frac(1, 2);
        prop_assert_eq!(g1, dg(1).scale(&half));
        prop_assert_eq!(g2, dg(0).scale(&-half));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_form_is_g_invariant(a in g_matrix()) {
        for (name, f, c) in catalog_canonical() {
            let h = g_action(&a, f).unwrap();
            let ch = canonicalize(&h).unwrap();
            prop_assert_eq!(&ch, c, "{}", name);
            // witness soundness and domain conformance
            prop_assert_eq!(g_action(&ch.witness, &h).unwrap(), ch.polynomial(), "{}", name);
            prop_assert!(in_domain(ch.label, &ch.params), "{}", name);
            // idempotence
            prop_assert_eq!(canonicalize(&ch.polynomial()).unwrap(), ch, "{}", name);
        }
    }

    #[test]
    fn random_cubics_canonicalize_soundly(a in g_matrix(), f in cubic()) {
        if let Ok(c) = canonicalize(&f) {
            prop_assert_eq!(g_action(&c.witness, &f).unwrap(), c.polynomial());
            prop_assert!(in_domain(c.label, &c.params));
            prop_assert_eq!(canonicalize(&g_action(&a, &f).unwrap()).unwrap(), c);
        }
    }
}

#[test]
fn stackel_with_identity_matrix() {
    // C = I: a_j = b_j, so only a4 survives the exchange, as −H; H itself is sent to −b4 = 0
    let ring = stackel_ring();
    let z = MultiPoly::with_vars(ring.clone());
    let c: Vec<Vec<MultiPoly>> = (0..4)
        .map(|j| (0..4).map(|k| z.constant_like(FieldElem::from_int((j == k) as i64))).collect())
        .collect();
    for s in all_systems() {
        let Some(f) = s.parameterized_casimir() else { continue };
        let got = stackel_free(&f, &c).unwrap();
        let vars = f.form.vars().to_vec();
        let var = |k: usize| f.form.var_like(k);
        let images: Vec<MultiPoly> = vars
            .iter()
            .enumerate()
            .map(|(k, v)| match v.as_str() {
                "X3" => f.form.zero_like(),
                "a4" => var(2).neg(),
                v if PARAM_VARS.contains(&v) => f.form.zero_like(),
                _ => var(k),
            })
            .collect();
        let want = f.form.compose(&images).unwrap().restrict(&ring);
        assert_eq!(got, want, "{}", s.name);
        // a parameter-free Casimir loses exactly its H-dependence
        let free = f.free_part();
        let got_free = stackel_free(&free, &c).unwrap();
        let h0: Vec<MultiPoly> =
            (0..free.form.nvars()).map(|k| if k == 2 { free.form.zero_like() } else { free.form.var_like(k) }).collect();
        assert_eq!(got_free, free.form.compose(&h0).unwrap().embed(&ring), "{}", s.name);
    }
}

#[test]
fn stored_certificates_are_consistent() {
    for (sc, r) in builtin_curves() {
        let Ok(cert) = r else { continue };
        assert!(cert.reverify(), "{}", sc.name);
        assert_eq!(stratum_obstruction(&cert.source, &cert.target), Obstruction::Allowed, "{}", sc.name);
        assert_eq!(canonicalize(&cert.limit).unwrap(), canonicalize(&cert.target).unwrap(), "{}", sc.name);
    }
}

/// Special matrices built from the parameterized built-ins.
fn special_matrix() -> impl Strategy<Value = BocherMatrix> {
    let one = (0usize..4, -2i64..=2, -2i64..=2).prop_map(|(k, p1, p2)| match k {
        0 => builtin("form2", &[p1, p2]).unwrap(),
        1 => builtin("form4", &[p1, p2]).unwrap(),
        2 => builtin("special_1111_to_211", &[]).unwrap().reparam(p1.abs().max(1)),
        _ => builtin("form1", &[]).unwrap().reparam(p2.abs().max(1)),
    });
    (one.clone(), one).prop_map(|(a, b)| a.mul(&b))
}

fn any_builtin() -> impl Strategy<Value = BocherMatrix> {
    prop_oneof![
        special_matrix(),
        Just(builtin("recipe_1111_to_211", &[]).unwrap()),
        Just(builtin("form3", &[]).unwrap()),
        Just(builtin("v1111_to_v31", &[]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn special_compositions_stay_special(a in special_matrix(), b in special_matrix()) {
        for m in [q(1, 1), q(2, 1), q(3, 1), q(1, 2)] {
            let c = compose(&a, &b, &m).unwrap();
            prop_assert_eq!(validate_bocher(&c), BocherKind::Special, "m = {}", m);
            let id = BocherMatrix::identity();
            prop_assert_eq!(c.transpose().mul(&c), id);
        }
    }

    #[test]
    fn generator_limits_are_antisymmetric(a in any_builtin(), k in 0usize..6, cs in proptest::collection::vec((-2i64..=2, gauss()), 1..3)) {
        let s = EpsSeries::from_terms(cs.into_iter().map(|(e, c)| (qi(e), c)));
        prop_assume!(!s.is_zero());
        let (_, op) = generator_limit(&[(PAIRS[k], s)], &a).unwrap();
        prop_assert!(op.is_antisymmetric());
        prop_assert!(!op.is_zero());
    }

    #[test]
    fn contracted_bases_span_so4(a in any_builtin()) {
        let basis = contracted_basis(&a).unwrap();
        prop_assert_eq!(basis.len(), 6);
        let rows: Vec<Vec<FieldElem>> = basis.iter().map(|(_, op)| op.to_vec6()).collect();
        prop_assert_eq!(rank(&rows), 6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dictionary_is_involutive(cs in proptest::collection::vec(gauss(), 6)) {
        let d = GeneratorDictionary;
        let op = d.compose_flat(&cs);
        prop_assert_eq!(d.decompose_flat(&op).unwrap(), cs);
        let v = op.to_vec6();
        prop_assert_eq!(d.compose_flat(&d.decompose_flat(&VectorFieldOp::from_vec6(&v)).unwrap()), op);
    }
}
