//! Monomiality operators for the LGHP/LGHAP: multiplicative operators,
//! differential equations, the Crofton identity and the exponential-operator
//! representations.

use num_traits::Zero;

use crate::algebra::{factorial, Monomial, Poly3, Rational, Var};
use crate::appell::AppellFamily;
use crate::error::{Error, Result};
use crate::lgh::LghParams;

/// Σ c_k ∂_y^k, k = 0..=order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOpSeries {
    coeffs: Vec<Rational>,
}

impl DiffOpSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "operator series needs at least c_0");
        DiffOpSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exact whenever order >= y-degree of q.
    pub fn apply(&self, q: &Poly3) -> Poly3 {
        let top = (q.degree_in(Var::Y) as usize).min(self.order());
        let mut out = Poly3::zero();
        let mut d = q.clone();
        for k in 0..=top {
            if k > 0 {
                d = d.derive(Var::Y, 1);
            }
            if !self.coeffs[k].is_zero() {
                out += d.scale(&self.coeffs[k]);
            }
        }
        out
    }
}

fn small(v: u32) -> Rational {
    Rational::from_integer(v.into())
}

/// (y + m Dx^-1 ∂_y^(m-1) + r z ∂_y^(r-1)) q.
pub fn apply_m_lgh(p: LghParams, q: &Poly3) -> Poly3 {
    let mut out = q.mul_monomial(&Monomial::of(Var::Y, 1));
    out += q.derive(Var::Y, p.m - 1).inv_derive_x(1).scale(&small(p.m));
    out += q
        .derive(Var::Y, p.r - 1)
        .mul_monomial(&Monomial::of(Var::Z, 1))
        .scale(&small(p.r));
    out
}

/// Coefficients of g'(t)/g(t) with g = 1/A, read as an operator in ∂_y.
pub fn gog_series(f: &AppellFamily, order: usize) -> Result<DiffOpSeries> {
    let a = f.a_series(order + 1);
    if a.coeff(0).is_zero() {
        return Err(Error::DegenerateFamily(f.name().to_string()));
    }
    let g = a.recip().expect("A_0 is a nonzero constant");
    let ratio = g.derive().mul(&g.recip().expect("g_0 = 1/A_0"));
    let coeffs = ratio
        .scalar_coeffs()
        .expect("family series have constant coefficients");
    Ok(DiffOpSeries::new(coeffs))
}

/// The same operator written as -A'(t)/A(t).
pub fn neg_log_derivative_a(f: &AppellFamily, order: usize) -> Result<DiffOpSeries> {
    let a = f.a_series(order + 1);
    let inv = a
        .recip()
        .map_err(|_| Error::DegenerateFamily(f.name().to_string()))?;
    let ratio = a.derive().mul(&inv).scale(&-Rational::from_integer(1.into()));
    Ok(DiffOpSeries::new(
        ratio.scalar_coeffs().expect("family series have constant coefficients"),
    ))
}

/// (M_LH - g'(∂_y)/g(∂_y)) q.
pub fn apply_m_lgha(f: &AppellFamily, p: LghParams, q: &Poly3) -> Result<Poly3> {
    f.require_egf("apply_m_lgha")?;
    let gog = gog_series(f, q.degree_in(Var::Y) as usize)?;
    Ok(apply_m_lgh(p, q) - gog.apply(q))
}

/// (m ∂_y^m + r z ∂_x ∂_y^r + y ∂_x ∂_y - n ∂_x) q.
pub fn ode_residual_lghp(p: LghParams, n: usize, q: &Poly3) -> Poly3 {
    let dx = q.derive(Var::X, 1);
    let mut out = q.derive(Var::Y, p.m).scale(&small(p.m));
    out += dx
        .derive(Var::Y, p.r)
        .mul_monomial(&Monomial::of(Var::Z, 1))
        .scale(&small(p.r));
    out += dx.derive(Var::Y, 1).mul_monomial(&Monomial::of(Var::Y, 1));
    out -= &dx.scale(&Rational::from_integer(n.into()));
    out
}

/// (y ∂_y + m Dx^-1 ∂_y^m + r z ∂_y^r - (g'/g)(∂_y) ∂_y - n) q.
pub fn ode_residual_lghap(f: &AppellFamily, p: LghParams, n: usize, q: &Poly3) -> Result<Poly3> {
    f.require_egf("ode_residual_lghap")?;
    let dy = q.derive(Var::Y, 1);
    let gog = gog_series(f, dy.degree_in(Var::Y) as usize)?;
    let mut out = apply_m_lgh(p, &dy);
    out -= &gog.apply(&dy);
    out -= &q.scale(&Rational::from_integer(n.into()));
    Ok(out)
}

/// The x-side factor Ω in exp(Ω ∂_y^stride).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XAction {
    None,
    InvDeriveX,
    MulZ,
}

enum Omega<'a> {
    Action(XAction),
    Scalar(&'a Rational),
}

impl Omega<'_> {
    fn apply(&self, q: &Poly3) -> Poly3 {
        match self {
            Omega::Action(XAction::None) => q.clone(),
            Omega::Action(XAction::InvDeriveX) => q.inv_derive_x(1),
            Omega::Action(XAction::MulZ) => q.mul_monomial(&Monomial::of(Var::Z, 1)),
            Omega::Scalar(c) => q.scale(c),
        }
    }
}

fn exp_series(omega: Omega<'_>, stride: u32, q: &Poly3) -> Poly3 {
    assert!(stride >= 1, "stride must be >= 1");
    let mut out = q.clone();
    let mut term = q.clone();
    let mut k = 0usize;
    loop {
        k += 1;
        term = omega.apply(&term.derive(Var::Y, stride));
        if term.is_zero() {
            break;
        }
        out += term.scale(&Rational::new(1.into(), factorial(k)));
    }
    out
}

/// Σ_k Ω^k ∂_y^(stride k) q / k!. The sum stops once ∂_y annihilates q.
pub fn exp_op_apply(x_action: XAction, stride: u32, q: &Poly3) -> Poly3 {
    exp_series(Omega::Action(x_action), stride, q)
}

/// exp(λ ∂_y^m) q.
pub fn exp_scalar_apply(lambda: &Rational, m: u32, q: &Poly3) -> Poly3 {
    exp_series(Omega::Scalar(lambda), m, q)
}

/// Compares f(y + mλ ∂_y^(m-1)){1} with exp(λ ∂_y^m){f(y)} for f in y only.
pub fn crofton_check(fy: &Poly3, lambda: &Rational, m: u32) -> bool {
    assert!(m >= 2, "crofton_check needs m >= 2");
    let op = |q: &Poly3| {
        q.mul_monomial(&Monomial::of(Var::Y, 1))
            + q.derive(Var::Y, m - 1).scale(&(lambda * small(m)))
    };
    let mut lhs = Poly3::zero();
    let mut power = Poly3::one();
    for e in 0..=fy.degree_in(Var::Y) {
        if e > 0 {
            power = op(&power);
        }
        let c = fy.coeff(&Monomial::of(Var::Y, e));
        if !c.is_zero() {
            lhs += power.scale(&c);
        }
    }
    lhs == exp_scalar_apply(lambda, m, fy)
}

/// P(M q) - M(P q) - q with P = ∂_y; identically zero.
pub fn commutator_check(p: LghParams, q: &Poly3) -> Poly3 {
    let pm = apply_m_lgh(p, q).derive(Var::Y, 1);
    let mp = apply_m_lgh(p, &q.derive(Var::Y, 1));
    pm - mp - q.clone()
}

/// ∂_x x ∂_x q, the Laguerre derivative.
pub fn laguerre_derivative(q: &Poly3) -> Poly3 {
    q.derive(Var::X, 1)
        .mul_monomial(&Monomial::of(Var::X, 1))
        .derive(Var::X, 1)
}

/// n-th iterate of `apply_m_lgha` from A_0.
pub fn lghap_by_operator(f: &AppellFamily, p: LghParams, n: usize) -> Result<Poly3> {
    f.require_egf("lghap_by_operator")?;
    let a0 = f.numbers(0)[0].clone();
    if a0.is_zero() {
        return Err(Error::DegenerateFamily(f.name().to_string()));
    }
    let mut q = Poly3::constant(a0);
    for _ in 0..n {
        q = apply_m_lgha(f, p, &q)?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::appell::{appell_poly, make_family};
    use crate::lgh::{ghap, glap, lghap_series, lghp};

    fn fam(s: &str) -> AppellFamily {
        make_family(s).unwrap()
    }
    fn pr(m: u32, r: u32) -> LghParams {
        LghParams::new(m, r).unwrap()
    }
    fn y() -> Poly3 {
        Poly3::var(Var::Y)
    }
    fn z() -> Poly3 {
        Poly3::var(Var::Z)
    }
    fn c(v: Rational) -> Poly3 {
        Poly3::constant(v)
    }

    #[test]
    fn m_lgh_generates_lghp() {
        let p = pr(2, 2);
        assert_eq!(apply_m_lgh(p, &Poly3::one()), y());
        assert_eq!(apply_m_lgh(p, &y()), lghp(p, 2));
        for (m, r) in [(1, 2), (2, 3), (3, 5), (4, 1)] {
            for n in 0..=6 {
                assert_eq!(apply_m_lgh(pr(m, r), &lghp(pr(m, r), n)), lghp(pr(m, r), n + 1));
            }
        }
    }

    #[test]
    fn gog_examples() {
        let b = gog_series(&fam("bernoulli"), 1).unwrap();
        assert_eq!(b.coeffs(), &[rat(1, 2), rat(1, 12)]);
        assert_eq!(gog_series(&fam("euler"), 0).unwrap().coeffs()[0], rat(1, 2));
        assert!(gog_series(&fam("gen-euler:alpha=0"), 4).unwrap().is_zero());
        assert!(matches!(gog_series(&fam("genocchi"), 2), Err(Error::DegenerateFamily(_))));
    }

    #[test]
    fn gog_closed_forms() {
        use crate::powerseries::PowerSeries;
        let k = 8;
        let et = PowerSeries::exp_t(k);
        let one = PowerSeries::one(k);
        let as_series = |d: &DiffOpSeries| PowerSeries::scalar(d.coeffs().to_vec());
        for alpha in 1..=3u32 {
            for lambda in [int(1), rat(1, 2), int(3)] {
                // α λ e^t / (λ e^t + 1)
                let f = fam(&format!("apostol-euler:alpha={alpha},lambda={lambda}"));
                let lam_et = et.scale(&lambda);
                let expected = lam_et
                    .mul(&lam_et.add(&one).recip().unwrap())
                    .scale(&Rational::from_integer(alpha.into()));
                assert_eq!(as_series(&gog_series(&f, k).unwrap()), expected);
            }
            // g'/g · t(e^t - 1) = -α (e^t (1 - t) - 1)
            let f = fam(&format!("gen-bernoulli:alpha={alpha}"));
            let t = PowerSeries::monomial(Poly3::one(), 1, k);
            let lhs = as_series(&gog_series(&f, k).unwrap()).mul(&t.mul(&et.sub(&one)));
            let rhs = et
                .mul(&one.sub(&t))
                .sub(&one)
                .scale(&-Rational::from_integer(alpha.into()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn m_lgha_examples() {
        let b = fam("bernoulli");
        assert_eq!(apply_m_lgha(&b, pr(2, 3), &Poly3::one()).unwrap(), y() - c(rat(1, 2)));
        assert_eq!(apply_m_lgha(&fam("euler"), pr(2, 2), &Poly3::one()).unwrap(), y() - c(rat(1, 2)));
        for name in ["bernoulli", "euler", "apostol-euler:alpha=2,lambda=1/3"] {
            let f = fam(name);
            for n in 0..=5 {
                let q = lghap_series(&f, pr(3, 2), n);
                assert_eq!(apply_m_lgha(&f, pr(3, 2), &q).unwrap(), lghap_series(&f, pr(3, 2), n + 1));
            }
        }
        assert!(matches!(
            apply_m_lgha(&fam("trunc-exp"), pr(2, 2), &Poly3::one()),
            Err(Error::NormalizationMismatch(_))
        ));
    }

    #[test]
    fn odes() {
        for (m, r) in [(1, 2), (2, 2), (3, 5)] {
            for n in 0..=8 {
                assert!(ode_residual_lghp(pr(m, r), n, &lghp(pr(m, r), n)).is_zero());
            }
        }
        assert!(ode_residual_lghp(pr(2, 2), 0, &Poly3::one()).is_zero());
        assert!(ode_residual_lghp(pr(5, 5), 3, &y().pow(3)).is_zero());
        assert!(!ode_residual_lghp(pr(2, 2), 2, &y().pow(3)).is_zero());

        let b = fam("bernoulli");
        let q = lghap_series(&b, pr(3, 5), 4);
        assert!(ode_residual_lghap(&b, pr(3, 5), 4, &q).unwrap().is_zero());
        assert!(ode_residual_lghap(&b, pr(3, 5), 0, &Poly3::one()).unwrap().is_zero());
        let e = fam("euler");
        let q = lghap_series(&e, pr(2, 3), 5);
        assert!(ode_residual_lghap(&e, pr(2, 3), 5, &q).unwrap().is_zero());
        assert!(!ode_residual_lghap(&e, pr(2, 3), 4, &q).unwrap().is_zero());
    }

    #[test]
    fn exponential_operators() {
        assert_eq!(exp_op_apply(XAction::MulZ, 2, &y().pow(2)), y().pow(2) + c(int(2)) * z());
        let b4 = appell_poly(&fam("bernoulli"), 4).unwrap();
        let full = exp_op_apply(XAction::InvDeriveX, 3, &exp_op_apply(XAction::MulZ, 5, &b4));
        assert_eq!(full.to_string(), "y^4 - 2*y^3 + y^2 + 24*x*y - 12*x - 1/30");
        for a in [XAction::None, XAction::InvDeriveX, XAction::MulZ] {
            assert_eq!(exp_op_apply(a, 2, &c(rat(3, 7))), c(rat(3, 7)));
        }
        let f = fam("euler");
        let p = pr(2, 3);
        for n in 0..=6 {
            let full = lghap_series(&f, p, n);
            assert_eq!(exp_op_apply(XAction::MulZ, p.r, &glap(&f, p.m, n).unwrap()), full);
            assert_eq!(exp_op_apply(XAction::InvDeriveX, p.m, &ghap(&f, p.r, n).unwrap()), full);
        }
    }

    #[test]
    fn crofton() {
        for lambda in [int(1), rat(1, 2), int(-2)] {
            assert!(crofton_check(&y().pow(2), &lambda, 2));
            assert!(crofton_check(&c(int(5)), &lambda, 3));
        }
        assert_eq!(exp_scalar_apply(&int(1), 2, &y().pow(4)), y().pow(4) + c(int(12)) * y().pow(2) + c(int(12)));
        assert!(crofton_check(&y().pow(4), &int(1), 2));
    }

    #[test]
    fn commutator_and_heat() {
        let p = pr(3, 2);
        assert!(commutator_check(p, &Poly3::one()).is_zero());
        for n in 0..=6 {
            let l = lghp(p, n);
            assert!(commutator_check(p, &l).is_zero());
            assert_eq!(l.derive(Var::Y, p.r), l.derive(Var::Z, 1));
            assert_eq!(l.derive(Var::Y, p.m), laguerre_derivative(&l));
        }
    }

    #[test]
    fn operator_chain() {
        let f = fam("bernoulli");
        for n in 0..=6 {
            assert_eq!(lghap_by_operator(&f, pr(2, 3), n).unwrap(), lghap_series(&f, pr(2, 3), n));
        }
    }
}
