//! Truncated formal power series in t with [`Poly3`] coefficients.
//!
//! Scalar series are the same type with constant coefficients.

use num_traits::Zero;

use crate::algebra::{big, factorial, Monomial, Poly3, Rational, Var};
use crate::error::{Error, Result};

/// Σ c_k t^k mod t^(order+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Poly3>,
}

impl PowerSeries {
    /// Coefficients c_0..c_N; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn new(coeffs: Vec<Poly3>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c_0");
        PowerSeries { coeffs }
    }

    pub fn scalar(coeffs: Vec<Rational>) -> Self {
        PowerSeries::new(coeffs.into_iter().map(Poly3::constant).collect())
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::new(vec![Poly3::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::constant(Poly3::one(), order)
    }

    pub fn constant(c: Poly3, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// c·t^k truncated at `order`.
    pub fn monomial(c: Poly3, k: usize, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Σ_k t^k/k!.
    pub fn exp_t(order: usize) -> Self {
        PowerSeries::scalar(
            (0..=order)
                .map(|k| Rational::new(1.into(), factorial(k)))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly3] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Poly3 {
        &self.coeffs[k]
    }

    /// Constant coefficients as rationals; `None` if any coefficient involves x, y or z.
    pub fn scalar_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(Poly3::as_constant).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Poly3::zero());
        PowerSeries::new(coeffs)
    }

    /// True when the series is exactly 1 mod t^(N+1).
    pub fn is_one(&self) -> bool {
        self.coeffs[0] == Poly3::one() && self.coeffs[1..].iter().all(Poly3::is_zero)
    }

    pub fn is_composable(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries::new((0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries::new((0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect())
    }

    pub fn scale(&self, c: &Rational) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Multiplies by t^k, keeping the order.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let n = self.order();
        PowerSeries::new(
            (0..=n)
                .map(|i| if i < k { Poly3::zero() } else { self.coeffs[i - k].clone() })
                .collect(),
        )
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let mut out = vec![Poly3::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        PowerSeries::new(out)
    }

    pub fn pow(&self, e: u32) -> PowerSeries {
        let mut acc = PowerSeries::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Σ a^k/k! for k ≤ N.
    pub fn exp(&self) -> Result<PowerSeries> {
        if !self.is_composable() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order();
        let mut result = PowerSeries::one(n);
        let mut term = PowerSeries::one(n);
        for k in 1..=n {
            term = term.mul(self).scale(&Rational::new(1.into(), (k as i64).into()));
            result = result.add(&term);
        }
        Ok(result)
    }

    /// b with a·b = 1 mod t^(N+1); c_0 must be a nonzero constant.
    pub fn recip(&self) -> Result<PowerSeries> {
        let a0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or(Error::ZeroConstantTerm)?;
        let inv = a0.recip();
        let n = self.order();
        let mut b: Vec<Poly3> = Vec::with_capacity(n + 1);
        b.push(Poly3::constant(inv.clone()));
        for k in 1..=n {
            let mut acc = Poly3::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc += &self.coeffs[j] * &b[k - j];
            }
            b.push(acc.scale(&-inv.clone()));
        }
        Ok(PowerSeries::new(b))
    }

    /// Termwise d/dt; the order drops by one (an order-0 series gives the zero series of order 0).
    pub fn derive(&self) -> PowerSeries {
        let n = self.order();
        if n == 0 {
            return PowerSeries::zero(0);
        }
        PowerSeries::new(
            (1..=n)
                .map(|k| self.coeffs[k].scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    /// n!·c_n, the coefficient of t^n/n!.
    pub fn egf_coeff(&self, n: usize) -> Result<Poly3> {
        if n > self.order() {
            return Err(Error::IndexBeyondOrder { index: n, order: self.order() });
        }
        Ok(self.coeffs[n].scale(&big(factorial(n))))
    }
}

pub fn ps_mul(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    a.mul(b)
}

pub fn ps_exp(a: &PowerSeries) -> Result<PowerSeries> {
    a.exp()
}

pub fn ps_recip(a: &PowerSeries) -> Result<PowerSeries> {
    a.recip()
}

pub fn ps_derive(a: &PowerSeries) -> PowerSeries {
    a.derive()
}

pub fn egf_coeff(s: &PowerSeries, n: usize) -> Result<Poly3> {
    s.egf_coeff(n)
}

/// C_0(-x t^m) = Σ_k x^k t^(mk)/(k!)^2, truncated at `order`.
pub fn build_c0(m: u32, order: usize) -> PowerSeries {
    assert!(m >= 1, "build_c0 needs m >= 1");
    let mut s = PowerSeries::zero(order);
    let mut k = 0usize;
    while k * m as usize <= order {
        let f = factorial(k);
        s.coeffs[k * m as usize] = Poly3::term(
            Rational::new(1.into(), &f * &f),
            Monomial::of(Var::X, k as u32),
        );
        k += 1;
    }
    s
}

/// exp(y t + z t^r) at `order`.
pub fn build_gould_hopper_exp(r: u32, order: usize) -> PowerSeries {
    let arg = PowerSeries::monomial(Poly3::var(Var::Y), 1, order)
        .add(&PowerSeries::monomial(Poly3::var(Var::Z), r as usize, order));
    arg.exp().expect("y t + z t^r has no constant term")
}

impl Default for PowerSeries {
    fn default() -> Self {
        PowerSeries::one(0)
    }
}
