//! Series definitions of the Laguerre-Gould Hopper polynomials, their Gould
//! Hopper and 2-variable Laguerre slices, and the LGHAP, plus the
//! generating-function expansion used as an independent check.

use num_bigint::BigInt;

use crate::algebra::{big, binomial, factorial, Monomial, Poly3, Rational, Var};
use crate::appell::{base_polys, AppellFamily};
use crate::error::{Error, Result};
use crate::powerseries::{build_c0, build_gould_hopper_exp};

/// Index pair (m, r): m is the stride of x, r the stride of z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LghParams {
    pub m: u32,
    pub r: u32,
}

impl LghParams {
    pub fn new(m: u32, r: u32) -> Result<Self> {
        if m == 0 || r == 0 {
            return Err(Error::InvalidParameter(format!("m and r must be >= 1 (got m={m}, r={r})")));
        }
        Ok(LghParams { m, r })
    }
}

fn inv_factorial_product(parts: &[(usize, u32)]) -> BigInt {
    parts
        .iter()
        .fold(BigInt::from(1), |acc, &(k, power)| acc * num_traits::pow(factorial(k), power as usize))
}

/// n! Σ_{rk+ml≤n} z^k x^l y^(n-rk-ml) / (k! (l!)^2 (n-rk-ml)!).
pub fn lghp(p: LghParams, n: usize) -> Poly3 {
    let (m, r) = (p.m as usize, p.r as usize);
    let nf = factorial(n);
    let mut out = Poly3::zero();
    for k in 0..=n / r {
        for l in 0..=(n - r * k) / m {
            let rest = n - r * k - m * l;
            let denom = inv_factorial_product(&[(k, 1), (l, 2), (rest, 1)]);
            out.add_term(
                Monomial::new(l as u32, rest as u32, k as u32),
                Rational::new(nf.clone(), denom),
            );
        }
    }
    out
}

/// Gould-Hopper H_n^(r)(y, z) = n! Σ_k z^k y^(n-rk) / (k! (n-rk)!).
pub fn ghp(r: u32, n: usize) -> Poly3 {
    assert!(r >= 1, "ghp needs r >= 1");
    let r = r as usize;
    let nf = factorial(n);
    Poly3::from_terms((0..=n / r).map(|k| {
        let rest = n - r * k;
        (
            Monomial::new(0, rest as u32, k as u32),
            Rational::new(nf.clone(), inv_factorial_product(&[(k, 1), (rest, 1)])),
        )
    }))
}

/// 2-variable generalized Laguerre _mL_n(x, y) = n! Σ_k x^k y^(n-mk) / ((k!)^2 (n-mk)!).
pub fn glp(m: u32, n: usize) -> Poly3 {
    assert!(m >= 1, "glp needs m >= 1");
    let m = m as usize;
    let nf = factorial(n);
    Poly3::from_terms((0..=n / m).map(|k| {
        let rest = n - m * k;
        (
            Monomial::new(k as u32, rest as u32, 0),
            Rational::new(nf.clone(), inv_factorial_product(&[(k, 2), (rest, 1)])),
        )
    }))
}

/// n! Σ_l Σ_k base_(n-rl-mk)(y) z^l x^k / (l! (k!)^2 (n-rl-mk)!), terms with
/// negative remaining degree skipped. `bases` must hold at least n+1 entries.
pub(crate) fn series_template(bases: &[Poly3], p: LghParams, n: usize) -> Poly3 {
    let (m, r) = (p.m as usize, p.r as usize);
    let nf = factorial(n);
    let mut out = Poly3::zero();
    for l in 0..=n / r {
        for k in 0..=n / m {
            let Some(rest) = n.checked_sub(r * l + m * k) else {
                continue;
            };
            let base = &bases[rest];
            if base.is_zero() {
                continue;
            }
            let weight = Rational::new(nf.clone(), inv_factorial_product(&[(l, 1), (k, 2), (rest, 1)]));
            let shift = Monomial::new(k as u32, 0, l as u32);
            out += base.mul_monomial(&shift).scale(&weight);
        }
    }
    out
}

/// The LGHAP by its explicit double series. Ordinary-GF families feed their
/// ordinary-GF base polynomials into the same template.
pub fn lghap_series(f: &AppellFamily, p: LghParams, n: usize) -> Poly3 {
    series_template(&base_polys(f, n), p, n)
}

/// Σ_k C(n,k) LGHP_(n-k) A_k.
pub fn lghap_binomial(f: &AppellFamily, p: LghParams, n: usize) -> Result<Poly3> {
    f.require_egf("lghap_binomial")?;
    let numbers = f.numbers(n);
    let mut out = Poly3::zero();
    for (k, a) in numbers.iter().enumerate() {
        if num_traits::Zero::is_zero(a) {
            continue;
        }
        out += lghp(p, n - k).scale(&(a * big(binomial(n, k))));
    }
    Ok(out)
}

/// n!·[t^n] of A(t) C_0(-x t^m) exp(y t + z t^r).
pub fn lghap_gf(f: &AppellFamily, p: LghParams, n: usize) -> Result<Poly3> {
    f.require_egf("lghap_gf")?;
    let product = f
        .a_series(n)
        .mul(&build_c0(p.m, n))
        .mul(&build_gould_hopper_exp(p.r, n));
    product.egf_coeff(n)
}

/// The Gould-Hopper based Appell polynomial Σ_k C(n,k) H_(n-k)^(r)(y,z) A_k.
pub fn ghap(f: &AppellFamily, r: u32, n: usize) -> Result<Poly3> {
    f.require_egf("ghap")?;
    Ok(binomial_convolution(&f.numbers(n), n, |j| ghp(r, j)))
}

/// The 2VGL based Appell polynomial Σ_k C(n,k) _mL_(n-k)(x,y) A_k.
pub fn glap(f: &AppellFamily, m: u32, n: usize) -> Result<Poly3> {
    f.require_egf("glap")?;
    Ok(binomial_convolution(&f.numbers(n), n, |j| glp(m, j)))
}

/// Σ_k C(n,k) a_k q_(n-k).
pub(crate) fn binomial_convolution(numbers: &[Rational], n: usize, q: impl Fn(usize) -> Poly3) -> Poly3 {
    let mut out = Poly3::zero();
    for (k, a) in numbers.iter().take(n + 1).enumerate() {
        if num_traits::Zero::is_zero(a) {
            continue;
        }
        out += q(n - k).scale(&(a * big(binomial(n, k))));
    }
    out
}

pub(crate) fn y_power(e: usize) -> Poly3 {
    Poly3::term(Rational::from_integer(1.into()), Monomial::of(Var::Y, e as u32))
}
