use lghap::algebra::{binomial, factorial, int, rat, Monomial, Poly3, Rational, Var};
use lghap::appell::{appell_numbers, appell_poly, beta_coeffs, family_a_series, make_family, AppellFamily};
use lghap::determinant::{appell_det, hess_det, lghap_det, naive_det, HessMatrix};
use lghap::lgh::{ghap, ghp, glp, lghap_binomial, lghap_gf, lghap_series, lghp, LghParams};
use lghap::operators::{
    apply_m_lgh, apply_m_lgha, commutator_check, crofton_check, exp_op_apply, gog_series,
    laguerre_derivative, neg_log_derivative_a, XAction,
};
use lghap::powerseries::{egf_coeff, ps_derive, ps_exp, ps_mul, ps_recip, PowerSeries};
use lghap::special_cases::{hermite_kdf_oracle, legendre_oracle, reduce, ReductionCase};
use proptest::prelude::*;

const EGF_FAMILIES: [&str; 6] = [
    "bernoulli",
    "euler",
    "gen-bernoulli:alpha=2",
    "gen-euler:alpha=3",
    "apostol-euler:alpha=1,lambda=2",
    "apostol-bernoulli:alpha=1,lambda=1",
];
const GRID: [(u32, u32); 4] = [(1, 2), (2, 2), (2, 3), (3, 5)];

fn fam(s: &str) -> AppellFamily {
    make_family(s).unwrap()
}
fn pr((m, r): (u32, u32)) -> LghParams {
    LghParams::new(m, r).unwrap()
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly3> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), small_rational()), 0..=max_terms)
        .prop_map(|terms| Poly3::from_terms(terms.into_iter().map(|((a, b, c), v)| (Monomial::new(a, b, c), v))))
}

fn y_poly(max_deg: u32) -> impl Strategy<Value = Poly3> {
    prop::collection::vec(small_rational(), 1..=(max_deg as usize + 1)).prop_map(|cs| {
        Poly3::from_terms(cs.into_iter().enumerate().map(|(e, c)| (Monomial::of(Var::Y, e as u32), c)))
    })
}

fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(poly(2, 3), order + 1).prop_map(PowerSeries::new)
}

fn invertible_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    (small_rational().prop_filter("nonzero", |c| c != &int(0)), series(order)).prop_map(|(c0, s)| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = Poly3::constant(c0);
        PowerSeries::new(coeffs)
    })
}

fn composable_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    series(order).prop_map(|s| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = Poly3::zero();
        PowerSeries::new(coeffs)
    })
}

fn point() -> impl Strategy<Value = (Rational, Rational, Rational)> {
    (small_rational(), small_rational(), small_rational())
}

fn egf_family() -> impl Strategy<Value = AppellFamily> {
    prop::sample::select(EGF_FAMILIES.to_vec()).prop_map(fam)
}

fn grid_params() -> impl Strategy<Value = LghParams> {
    prop::sample::select(GRID.to_vec()).prop_map(pr)
}

fn hessenberg(max_dim: usize) -> impl Strategy<Value = HessMatrix> {
    (1..=max_dim).prop_flat_map(|dim| {
        prop::collection::vec(poly(1, 2), dim * dim).prop_map(move |cells| {
            let entries = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| if i >= j + 2 { Poly3::zero() } else { cells[i * dim + j].clone() })
                        .collect()
                })
                .collect();
            HessMatrix::new(entries).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // algebra

    #[test]
    fn dx_undoes_inverse_derivative(p in poly(8, 8)) {
        prop_assert_eq!(p.inv_derive_x(1).derive(Var::X, 1), p);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(4, 6), b in poly(4, 6), (x, y, z) in point()) {
        prop_assert_eq!((&a + &b).eval(&x, &y, &z), a.eval(&x, &y, &z) + b.eval(&x, &y, &z));
        prop_assert_eq!((&a * &b).eval(&x, &y, &z), a.eval(&x, &y, &z) * b.eval(&x, &y, &z));
    }

    #[test]
    fn identity_substitution(p in poly(5, 8)) {
        for v in Var::ALL {
            prop_assert_eq!(p.substitute(v, &Poly3::var(v)), p.clone());
        }
    }

    #[test]
    fn canonical_form_is_stable(p in poly(5, 8)) {
        let rebuilt = Poly3::from_terms(p.terms().map(|(m, c)| (*m, c.clone())));
        prop_assert_eq!(&rebuilt, &p);
        prop_assert!(p.terms().all(|(_, c)| c != &int(0)));
        prop_assert_eq!((&p - &Poly3::zero()).to_string(), p.to_string());
    }

    // powerseries

    #[test]
    fn reciprocal_inverts(a in invertible_series(5)) {
        prop_assert!(ps_mul(&a, &ps_recip(&a).unwrap()).is_one());
    }

    #[test]
    fn exp_is_additive(a in composable_series(4), b in composable_series(4)) {
        let lhs = ps_mul(&ps_exp(&a).unwrap(), &ps_exp(&b).unwrap());
        prop_assert_eq!(lhs, ps_exp(&a.add(&b)).unwrap());
    }

    #[test]
    fn exp_chain_rule(a in composable_series(5)) {
        let e = ps_exp(&a).unwrap();
        prop_assert_eq!(ps_derive(&e), ps_mul(&ps_derive(&a), &e).truncate(4));
    }

    #[test]
    fn egf_of_exp_yt_times_scalar(cs in prop::collection::vec(small_rational(), 7), n in 0usize..=6) {
        let s = PowerSeries::scalar(cs.clone());
        let eyt = PowerSeries::new(
            (0..=6)
                .map(|k| Poly3::term(Rational::new(1.into(), factorial(k)), Monomial::of(Var::Y, k as u32)))
                .collect(),
        );
        let expected = Poly3::from_terms((0..=n).map(|k| {
            let c = &cs[n - k] * Rational::from_integer(binomial(n, k) * factorial(n - k));
            (Monomial::of(Var::Y, k as u32), c)
        }));
        prop_assert_eq!(egf_coeff(&ps_mul(&eyt, &s), n).unwrap(), expected);
    }

    // appell

    #[test]
    fn appell_derivative_property(f in egf_family(), n in 1usize..=10) {
        let a = appell_poly(&f, n).unwrap();
        let prev = appell_poly(&f, n - 1).unwrap();
        prop_assert_eq!(a.derive(Var::Y, 1), prev.scale(&Rational::from_integer(n.into())));
    }

    #[test]
    fn appell_at_zero_is_the_number(f in egf_family(), n in 0usize..=10) {
        let zero = int(0);
        prop_assert_eq!(appell_poly(&f, n).unwrap().eval(&zero, &zero, &zero), appell_numbers(&f, n)[n].clone());
    }

    #[test]
    fn beta_matches_reciprocal_series(f in egf_family(), n in 0usize..=12) {
        let recip = ps_recip(&family_a_series(&f, n)).unwrap();
        let expected = egf_coeff(&recip, n).unwrap().as_constant().unwrap();
        prop_assert_eq!(beta_coeffs(&f, n).unwrap().get(n).clone(), expected);
    }

    #[test]
    fn alias_families_agree(order in 0usize..=12) {
        let b = family_a_series(&fam("bernoulli"), order);
        prop_assert_eq!(&family_a_series(&fam("apostol-bernoulli:alpha=1,lambda=1"), order), &b);
        prop_assert_eq!(&family_a_series(&fam("gen-bernoulli:alpha=1"), order), &b);
        prop_assert_eq!(
            family_a_series(&fam("modified-laguerre:beta=3"), order),
            family_a_series(&fam("miller-lee:s=2"), order)
        );
    }

    // lgh

    #[test]
    fn series_binomial_gf_agree(f in egf_family(), p in grid_params(), n in 0usize..=10) {
        let s = lghap_series(&f, p, n);
        prop_assert_eq!(&lghap_binomial(&f, p, n).unwrap(), &s);
        prop_assert_eq!(&lghap_gf(&f, p, n).unwrap(), &s);
    }

    #[test]
    fn lghp_slices(p in grid_params(), n in 0usize..=10) {
        let l = lghp(p, n);
        prop_assert_eq!(l.substitute(Var::X, &Poly3::zero()), ghp(p.r, n));
        prop_assert_eq!(l.substitute(Var::Z, &Poly3::zero()), glp(p.m, n));
    }

    #[test]
    fn lghap_derivative_and_heat(f in egf_family(), p in grid_params(), n in 1usize..=8) {
        let q = lghap_series(&f, p, n);
        prop_assert_eq!(q.derive(Var::Y, 1), lghap_series(&f, p, n - 1).scale(&Rational::from_integer(n.into())));
        prop_assert_eq!(q.derive(Var::Y, p.r), q.derive(Var::Z, 1));
        prop_assert_eq!(q.derive(Var::Y, p.m), laguerre_derivative(&q));
        prop_assert_eq!(q.substitute(Var::X, &Poly3::zero()), ghap(&f, p.r, n).unwrap());
    }

    // determinant

    #[test]
    fn hessenberg_matches_cofactor(mat in hessenberg(7)) {
        prop_assert_eq!(hess_det(&mat), naive_det(&mat).unwrap());
    }

    #[test]
    fn determinant_matches_series(f in egf_family(), p in grid_params(), n in 0usize..=8) {
        prop_assert_eq!(lghap_det(&f, p, n).unwrap(), lghap_series(&f, p, n));
    }

    #[test]
    fn appell_determinant(f in egf_family(), n in 0usize..=10) {
        prop_assert_eq!(appell_det(&f, n).unwrap(), appell_poly(&f, n).unwrap());
    }

    #[test]
    fn lghap_det_collapses_to_appell_det(f in egf_family(), n in 0usize..=6) {
        let big = n as u32 + 1;
        let p = LghParams::new(big, big).unwrap();
        let zero = Poly3::zero();
        let sliced = lghap_det(&f, p, n).unwrap().substitute(Var::X, &zero).substitute(Var::Z, &zero);
        prop_assert_eq!(sliced, appell_det(&f, n).unwrap());
    }

    // operators

    #[test]
    fn monomiality_equation(p in grid_params(), n in 0usize..=8) {
        let l = lghp(p, n);
        prop_assert_eq!(apply_m_lgh(p, &l.derive(Var::Y, 1)), l.scale(&Rational::from_integer(n.into())));
    }

    #[test]
    fn commutator_vanishes(p in grid_params(), q in poly(6, 8)) {
        prop_assert!(commutator_check(p, &q).is_zero());
    }

    #[test]
    fn gog_is_minus_log_derivative_of_a(f in egf_family(), order in 0usize..=10) {
        prop_assert_eq!(gog_series(&f, order).unwrap(), neg_log_derivative_a(&f, order).unwrap());
    }

    #[test]
    fn m_lgha_chain(f in egf_family(), p in grid_params(), n in 0usize..=6) {
        let mut q = lghap_series(&f, p, 0);
        for _ in 0..n {
            q = apply_m_lgha(&f, p, &q).unwrap();
        }
        prop_assert_eq!(q, lghap_series(&f, p, n));
    }

    #[test]
    fn exponential_representations(f in egf_family(), p in grid_params(), n in 0usize..=8) {
        let full = lghap_series(&f, p, n);
        let zero = Poly3::zero();
        prop_assert_eq!(&exp_op_apply(XAction::MulZ, p.r, &full.substitute(Var::Z, &zero)), &full);
        prop_assert_eq!(&exp_op_apply(XAction::InvDeriveX, p.m, &full.substitute(Var::X, &zero)), &full);
        let a = appell_poly(&f, n).unwrap();
        prop_assert_eq!(&exp_op_apply(XAction::InvDeriveX, p.m, &exp_op_apply(XAction::MulZ, p.r, &a)), &full);
    }

    #[test]
    fn crofton_on_polynomials(f in y_poly(6), lambda in small_rational(), m in 2u32..=4) {
        prop_assert!(crofton_check(&f, &lambda, m));
    }

    // special cases

    #[test]
    fn classical_reductions(p in grid_params(), n in 0usize..=10) {
        let case = |s: &str| s.parse::<ReductionCase>().unwrap();
        prop_assert_eq!(reduce(&case("T1-IV"), p, n, None).unwrap(), ghp(p.r, n));
        prop_assert_eq!(reduce(&case("T1-V"), p, n, None).unwrap(), glp(p.m, n));
        let xi = case("T1-XI");
        prop_assert_eq!(reduce(&xi, xi.params(p.m, p.r).unwrap(), n, None).unwrap(), hermite_kdf_oracle(n));
        let xiii = case("T1-XIII");
        prop_assert_eq!(reduce(&xiii, xiii.params(p.m, p.r).unwrap(), n, None).unwrap(), legendre_oracle(n));
    }

    #[test]
    fn ghap_reduction(f in egf_family(), p in grid_params(), n in 0usize..=8) {
        let case: ReductionCase = "T2-IV".parse().unwrap();
        prop_assert_eq!(reduce(&case, p, n, Some(&f)).unwrap(), ghap(&f, p.r, n).unwrap());
    }

    #[test]
    fn sign_flip_rows(f in egf_family(), n in 0usize..=8) {
        let p = pr((1, 2));
        let neg_x = -Poly3::var(Var::X);
        let t1 = lghp(p, n).substitute(Var::X, &neg_x);
        let t2 = lghap_series(&f, p, n).substitute(Var::X, &neg_x);
        let half = Poly3::constant(rat(-1, 2));
        for (row, expected_t1, expected_t2) in [
            ("I", t1.clone(), t2.clone()),
            ("II", t1.substitute(Var::Z, &half), t2.substitute(Var::Z, &half)),
            (
                "III",
                t1.substitute(Var::Y, &Poly3::one()).substitute(Var::Z, &Poly3::var(Var::Y)),
                t2.substitute(Var::Y, &Poly3::one()).substitute(Var::Z, &Poly3::var(Var::Y)),
            ),
        ] {
            let c1: ReductionCase = format!("T1-{row}").parse().unwrap();
            let c2: ReductionCase = format!("T2-{row}").parse().unwrap();
            prop_assert_eq!(reduce(&c1, p, n, None).unwrap(), expected_t1);
            prop_assert_eq!(reduce(&c2, p, n, Some(&f)).unwrap(), expected_t2);
        }
    }
}
