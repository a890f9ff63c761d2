//! Exact rationals and sparse trivariate polynomials.

mod poly;
mod rational;

pub use poly::{Monomial, Poly3, Var};
pub use rational::{
    binomial, factorial, format_rational, int, parse_rational, rat, to_decimal, to_f64, Rational,
};

use num_bigint::BigInt;

pub(crate) fn big(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

pub fn poly_mul(a: &Poly3, b: &Poly3) -> Poly3 {
    a * b
}

pub fn poly_eval(p: &Poly3, x0: &Rational, y0: &Rational, z0: &Rational) -> Rational {
    p.eval(x0, y0, z0)
}

pub fn partial_derive(p: &Poly3, var: Var, k: u32) -> Poly3 {
    p.derive(var, k)
}

pub fn inv_derive_x(p: &Poly3, k: u32) -> Poly3 {
    p.inv_derive_x(k)
}

pub fn substitute(p: &Poly3, var: Var, q: &Poly3) -> Poly3 {
    p.substitute(var, q)
}
