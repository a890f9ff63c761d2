//! Variable-substitution reductions of the LGHP and LGHAP to classical
//! families, each paired with an oracle that does not go through `lghp`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{big, factorial, int, rat, Monomial, Poly3, Rational, Var};
use crate::appell::AppellFamily;
use crate::error::{Error, Result};
use crate::lgh::{binomial_convolution, ghp, glp, lghap_series, lghp, LghParams};
use crate::powerseries::PowerSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    /// LGHP reductions.
    T1,
    /// LGHAP reductions.
    T2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
    XIII,
    XIV,
    XV,
}

const ROWS: [(Row, &str); 15] = [
    (Row::I, "I"),
    (Row::II, "II"),
    (Row::III, "III"),
    (Row::IV, "IV"),
    (Row::V, "V"),
    (Row::VI, "VI"),
    (Row::VII, "VII"),
    (Row::VIII, "VIII"),
    (Row::IX, "IX"),
    (Row::X, "X"),
    (Row::XI, "XI"),
    (Row::XII, "XII"),
    (Row::XIII, "XIII"),
    (Row::XIV, "XIV"),
    (Row::XV, "XV"),
];

impl Row {
    pub fn label(self) -> &'static str {
        ROWS.iter().find(|(r, _)| *r == self).map(|(_, s)| *s).expect("every row is labelled")
    }

    /// Rows whose substitutions are operators (Dx^-1, y∂_y y, ...), not polynomials.
    pub fn is_operator_valued(self) -> bool {
        matches!(self, Row::VI | Row::IX | Row::X | Row::XII | Row::XIV | Row::XV)
    }
}

/// Substitution applied in order; later steps see the result of earlier ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub var: Var,
    pub replacement: Poly3,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReductionCase {
    pub table: Table,
    pub row: Row,
}

/// Rows supported by `reduce`, in table order.
pub const PLAIN_ROWS: [Row; 9] = [
    Row::I,
    Row::II,
    Row::III,
    Row::IV,
    Row::V,
    Row::VII,
    Row::VIII,
    Row::XI,
    Row::XIII,
];

impl ReductionCase {
    pub fn new(table: Table, row: Row) -> Self {
        ReductionCase { table, row }
    }

    pub fn all_plain() -> Vec<ReductionCase> {
        [Table::T1, Table::T2]
            .into_iter()
            .flat_map(|t| PLAIN_ROWS.into_iter().map(move |r| ReductionCase::new(t, r)))
            .collect()
    }

    /// Forced (m, r) values; `None` leaves the index free. Row VII ties r to m.
    pub fn constraints(&self) -> (Option<u32>, Option<u32>) {
        match self.row {
            Row::I | Row::II | Row::III => (Some(1), Some(2)),
            Row::VIII => (Some(1), None),
            Row::XI => (None, Some(2)),
            Row::XIII => (Some(2), None),
            _ => (None, None),
        }
    }

    pub fn check(&self, p: LghParams) -> Result<()> {
        let (m, r) = self.constraints();
        let ok = m.is_none_or(|m| m == p.m)
            && r.is_none_or(|r| r == p.r)
            && (self.row != Row::VII || (p.m >= 2 && p.r == p.m - 1));
        if ok {
            Ok(())
        } else {
            Err(Error::ConstraintViolation(format!(
                "{self} does not allow m={}, r={}",
                p.m, p.r
            )))
        }
    }

    /// Fills forced indices into (m, r).
    pub fn params(&self, m: u32, r: u32) -> Result<LghParams> {
        let (fm, fr) = self.constraints();
        let m = fm.unwrap_or(m);
        if self.row == Row::VII && m < 2 {
            return Err(Error::ConstraintViolation(format!("{self} needs m >= 2 (r = m-1)")));
        }
        let r = if self.row == Row::VII { m.saturating_sub(1) } else { fr.unwrap_or(r) };
        let p = LghParams::new(m, r)?;
        self.check(p)?;
        Ok(p)
    }

    pub fn substitutions(&self) -> Result<Vec<Substitution>> {
        if self.row.is_operator_valued() {
            return Err(unsupported(self));
        }
        let x = Poly3::var(Var::X);
        let y = Poly3::var(Var::Y);
        let sub = |var, replacement| Substitution { var, replacement };
        let neg_x = sub(Var::X, -x.clone());
        Ok(match self.row {
            Row::I => vec![neg_x],
            Row::II => vec![neg_x, sub(Var::Z, Poly3::constant(rat(-1, 2)))],
            Row::III => vec![neg_x, sub(Var::Y, Poly3::one()), sub(Var::Z, y)],
            Row::IV | Row::XI => vec![sub(Var::X, Poly3::zero())],
            Row::V => vec![sub(Var::Z, Poly3::zero())],
            Row::VII => vec![sub(Var::X, Poly3::zero()), sub(Var::Y, x), sub(Var::Z, y)],
            Row::VIII => vec![neg_x, sub(Var::Z, Poly3::zero())],
            Row::XIII => {
                let quarter = (x.pow(2) - Poly3::one()).scale(&rat(1, 4));
                vec![sub(Var::Z, Poly3::zero()), sub(Var::X, quarter), sub(Var::Y, x)]
            }
            _ => unreachable!("operator-valued rows returned above"),
        })
    }
}

fn unsupported(case: &ReductionCase) -> Error {
    Error::UnsupportedCase(format!(
        "{case} substitutes an operator (Dx^-1 or a y∂_y y form) and has no polynomial reduction"
    ))
}

impl fmt::Display for ReductionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.table {
            Table::T1 => "T1",
            Table::T2 => "T2",
        };
        write!(f, "{t}-{}", self.row.label())
    }
}

impl FromStr for ReductionCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("`{s}` is not a case id (expected e.g. T1-IV or T2-V)"));
        let (t, r) = s.trim().split_once('-').ok_or_else(bad)?;
        let table = match t.to_ascii_uppercase().as_str() {
            "T1" => Table::T1,
            "T2" => Table::T2,
            _ => return Err(bad()),
        };
        let row = ROWS
            .iter()
            .find(|(_, label)| label.eq_ignore_ascii_case(r))
            .map(|(row, _)| *row)
            .ok_or_else(bad)?;
        Ok(ReductionCase { table, row })
    }
}

fn require_family<'a>(case: &ReductionCase, family: Option<&'a AppellFamily>) -> Result<Option<&'a AppellFamily>> {
    match (case.table, family) {
        (Table::T1, _) => Ok(None),
        (Table::T2, Some(f)) => Ok(Some(f)),
        (Table::T2, None) => Err(Error::InvalidParameter(format!("{case} needs an Appell family"))),
    }
}

/// Computes lghp (T1) or lghap (T2) and applies the row's substitutions.
pub fn reduce(case: &ReductionCase, p: LghParams, n: usize, family: Option<&AppellFamily>) -> Result<Poly3> {
    let subs = case.substitutions()?;
    case.check(p)?;
    let base = match require_family(case, family)? {
        None => lghp(p, n),
        Some(f) => lghap_series(f, p, n),
    };
    Ok(subs
        .iter()
        .fold(base, |acc, s| acc.substitute(s.var, &s.replacement)))
}

/// P_n(x) from (n+1)P_(n+1) = (2n+1) x P_n - n P_(n-1).
pub fn legendre_oracle(n: usize) -> Poly3 {
    let x = Poly3::var(Var::X);
    let mut prev = Poly3::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for k in 1..n {
        let k = k as i64;
        let next = (&x * &cur).scale(&int(2 * k + 1)) - prev.scale(&int(k));
        prev = cur;
        cur = next.scale(&rat(1, k + 1));
    }
    cur
}

/// The 2-variable Hermite-Kampé de Fériet polynomial H_n(y, z).
pub fn hermite_kdf_oracle(n: usize) -> Poly3 {
    ghp(2, n)
}

/// C_0(c·x t) = Σ (-c x)^k t^k / (k!)^2, built from its definition.
fn tricomi_series(c: &Rational, order: usize) -> PowerSeries {
    PowerSeries::new(
        (0..=order)
            .map(|k| {
                let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                let f = big(factorial(k));
                Poly3::term(
                    sign * num_traits::pow(c.clone(), k) / (&f * &f),
                    Monomial::of(Var::X, k as u32),
                )
            })
            .collect(),
    )
}

/// exp(a t + b t^2) with polynomial a, b.
fn exp_quadratic(a: Poly3, b: Poly3, order: usize) -> PowerSeries {
    let mut coeffs = vec![Poly3::zero(); order + 1];
    if order >= 1 {
        coeffs[1] = a;
    }
    if order >= 2 {
        coeffs[2] = b;
    }
    PowerSeries::new(coeffs).exp().expect("no constant term")
}

/// The reduced LGHP from the row's own generating function or classical formula.
fn lghp_oracle(row: Row, p: LghParams, n: usize) -> Result<Poly3> {
    let x = Poly3::var(Var::X);
    let y = Poly3::var(Var::Y);
    let from_gf = |a: Poly3, b: Poly3| {
        tricomi_series(&int(1), n)
            .mul(&exp_quadratic(a, b, n))
            .egf_coeff(n)
            .expect("order is n")
    };
    Ok(match row {
        Row::I => from_gf(y, Poly3::var(Var::Z)),
        Row::II => from_gf(y, Poly3::constant(rat(-1, 2))),
        Row::III => from_gf(Poly3::one(), y),
        Row::VIII => from_gf(y, Poly3::zero()),
        Row::IV => ghp(p.r, n),
        Row::V => glp(p.m, n),
        Row::XI => hermite_kdf_oracle(n),
        Row::XIII => legendre_oracle(n),
        Row::VII => ghp(p.r, n)
            .substitute(Var::Y, &x)
            .substitute(Var::Z, &y),
        _ => return Err(Error::UnsupportedCase(format!("row {} has no oracle", row.label()))),
    })
}

/// Independent value for `reduce`: T2 rows convolve the T1 oracle with A_k.
pub fn oracle(case: &ReductionCase, p: LghParams, n: usize, family: Option<&AppellFamily>) -> Result<Poly3> {
    if case.row.is_operator_valued() {
        return Err(unsupported(case));
    }
    case.check(p)?;
    match require_family(case, family)? {
        None => lghp_oracle(case.row, p, n),
        Some(f) => {
            f.require_egf("special-case oracle")?;
            let t1 = (0..=n)
                .map(|j| lghp_oracle(case.row, p, j))
                .collect::<Result<Vec<_>>>()?;
            Ok(binomial_convolution(&f.numbers(n), n, |j| t1[j].clone()))
        }
    }
}
