//! Sparse exact polynomials in the three variables x, y, z.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }

    pub fn parse(name: &str) -> Option<Var> {
        match name.trim() {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent triple x^ex y^ey z^ez.
///
/// `Ord` is the display order: higher total degree first, ties broken by the
/// y exponent, then x, then z (all descending). Iterating a [`Poly3`] yields
/// terms in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ex: 0, ey: 0, ez: 0 };

    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Monomial { ex, ey, ez }
    }

    pub fn of(var: Var, e: u32) -> Self {
        let mut m = Monomial::ONE;
        *m.exp_mut(var) = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.ex + self.ey + self.ez
    }

    pub fn exp(&self, var: Var) -> u32 {
        match var {
            Var::X => self.ex,
            Var::Y => self.ey,
            Var::Z => self.ez,
        }
    }

    fn exp_mut(&mut self, var: Var) -> &mut u32 {
        match var {
            Var::X => &mut self.ex,
            Var::Y => &mut self.ey,
            Var::Z => &mut self.ez,
        }
    }

    pub fn with_exp(mut self, var: Var, e: u32) -> Self {
        *self.exp_mut(var) = e;
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.ex + other.ex, self.ey + other.ey, self.ez + other.ez)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then(other.ey.cmp(&self.ey))
            .then(other.ex.cmp(&self.ex))
            .then(other.ez.cmp(&self.ez))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for var in Var::ALL {
            let e = self.exp(var);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Canonical sparse polynomial: no stored coefficient is zero, so structural
/// equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly3 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn one() -> Self {
        Poly3::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly3::term(c, Monomial::ONE)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly3::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Poly3::term(Rational::one(), Monomial::of(v, 1))
    }

    /// Builds from arbitrary (monomial, coefficient) pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Poly3::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in display order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly3 {
        if c.is_zero() {
            return Poly3::zero();
        }
        Poly3 {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly3 {
        let mut acc = Poly3::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// k-th partial derivative in `var`.
    pub fn derive(&self, var: Var, k: u32) -> Poly3 {
        if k == 0 {
            return self.clone();
        }
        let mut out = Poly3::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e < k {
                continue;
            }
            let falling: i64 = (e - k + 1..=e).map(i64::from).product();
            out.add_term(m.with_exp(var, e - k), c * Rational::from_integer(falling.into()));
        }
        out
    }

    /// Applies the inverse derivative in x `k` times: x^a -> x^(a+1)/(a+1)
    /// termwise, with zero integration constant.
    pub fn inv_derive_x(&self, k: u32) -> Poly3 {
        if k == 0 {
            return self.clone();
        }
        let mut out = Poly3::zero();
        for (m, c) in &self.terms {
            let rising: i64 = (m.ex + 1..=m.ex + k).map(i64::from).product();
            out.add_term(
                m.with_exp(Var::X, m.ex + k),
                c / Rational::from_integer(rising.into()),
            );
        }
        out
    }

    /// Replaces every power of `var` by the same power of `q`.
    pub fn substitute(&self, var: Var, q: &Poly3) -> Poly3 {
        let mut powers: Vec<Poly3> = vec![Poly3::one()];
        let mut out = Poly3::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * q;
                powers.push(next);
            }
            let rest = m.with_exp(var, 0);
            for (qm, qc) in powers[e].terms() {
                out.add_term(rest.mul(qm), c * qc);
            }
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational, z: &Rational) -> Rational {
        let mut cache: [Vec<Rational>; 3] = [vec![Rational::one()], vec![Rational::one()], vec![Rational::one()]];
        let mut power = |slot: usize, base: &Rational, e: u32| -> Rational {
            let table = &mut cache[slot];
            while table.len() <= e as usize {
                let next = &table[table.len() - 1] * base;
                table.push(next);
            }
            table[e as usize].clone()
        };
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * power(0, x, m.ex) * power(1, y, m.ey) * power(2, z, m.ez);
        }
        acc
    }
}

impl From<Rational> for Poly3 {
    fn from(c: Rational) -> Self {
        Poly3::constant(c)
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if *m == Monomial::ONE {
                f.write_str(&format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&magnitude))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &'a Poly3) -> Poly3 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly3 {
    type Output = Poly3;
    fn add(mut self, rhs: Poly3) -> Poly3 {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly3> for Poly3 {
    fn add_assign(&mut self, rhs: &Poly3) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for Poly3 {
    fn add_assign(&mut self, rhs: Poly3) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&Poly3> for Poly3 {
    fn sub_assign(&mut self, rhs: &Poly3) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &'a Poly3) -> Poly3 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly3 {
    type Output = Poly3;
    fn sub(mut self, rhs: Poly3) -> Poly3 {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        -&self
    }
}

impl<'a> Mul<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &'a Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: Poly3) -> Poly3 {
        &self * &rhs
    }
}
