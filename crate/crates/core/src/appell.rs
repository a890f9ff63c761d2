//! Appell families: A(t) builders, Appell numbers, classical Appell
//! polynomials and the β coefficients of the determinantal form.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{big, binomial, factorial, format_rational, parse_rational, Monomial, Poly3, Rational, Var};
use crate::error::{Error, Result};
use crate::powerseries::PowerSeries;

pub const FAMILY_NAMES: [&str; 10] = [
    "bernoulli",
    "euler",
    "genocchi",
    "miller-lee",
    "trunc-exp",
    "modified-laguerre",
    "gen-bernoulli",
    "gen-euler",
    "apostol-bernoulli",
    "apostol-euler",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Bernoulli,
    Euler,
    Genocchi,
    MillerLee,
    GenBernoulli,
    GenEuler,
    ApostolBernoulli,
    ApostolEuler,
}

/// How the family's generating function is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// A(t) e^{yt} = Σ A_n(y) t^n/n!.
    Egf,
    /// The Miller-Lee branch: base polynomials are ordinary coefficients
    /// [t^n] A(t) e^{yt}, fed into the n!/(n-rl-mk)! series template.
    Ordinary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppellFamily {
    name: String,
    kind: FamilyKind,
    alpha: u32,
    lambda: Rational,
    s: i64,
    normalization: Normalization,
}

impl AppellFamily {
    /// Canonical family-spec string.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Miller-Lee order (0 for the other families).
    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn is_egf(&self) -> bool {
        self.normalization == Normalization::Egf
    }

    pub(crate) fn require_egf(&self, what: &str) -> Result<()> {
        if self.is_egf() {
            Ok(())
        } else {
            Err(Error::NormalizationMismatch(format!(
                "{what} is defined for exponentially normalized families; `{}` uses an ordinary generating function",
                self.name
            )))
        }
    }

    /// A(t) mod t^(order+1).
    pub fn a_series(&self, order: usize) -> PowerSeries {
        let one = Rational::one();
        match self.kind {
            FamilyKind::Bernoulli => apostol_bernoulli(&one, order),
            FamilyKind::Euler => apostol_euler(&one, order),
            FamilyKind::Genocchi => apostol_euler(&one, order).shift(1),
            FamilyKind::GenBernoulli => apostol_bernoulli(&one, order).pow(self.alpha),
            FamilyKind::GenEuler => apostol_euler(&one, order).pow(self.alpha),
            FamilyKind::ApostolBernoulli => apostol_bernoulli(&self.lambda, order).pow(self.alpha),
            FamilyKind::ApostolEuler => apostol_euler(&self.lambda, order).pow(self.alpha),
            FamilyKind::MillerLee => {
                let one_minus_t =
                    PowerSeries::scalar(vec![one.clone(), -one]).truncate(order);
                one_minus_t
                    .pow((self.s + 1) as u32)
                    .recip()
                    .expect("(1-t)^(s+1) has constant term 1")
            }
        }
    }

    /// A_0..A_nmax with A_k = k!·[t^k] A(t).
    pub fn numbers(&self, nmax: usize) -> Vec<Rational> {
        scalar_coeffs(&self.a_series(nmax))
            .into_iter()
            .enumerate()
            .map(|(k, c)| c * big(factorial(k)))
            .collect()
    }
}

impl fmt::Display for AppellFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for AppellFamily {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        make_family(spec)
    }
}

fn scalar_coeffs(s: &PowerSeries) -> Vec<Rational> {
    s.scalar_coeffs().expect("family series have constant coefficients")
}

/// t/(λe^t - 1); at λ = 1 this is the reciprocal of (e^t - 1)/t.
fn apostol_bernoulli(lambda: &Rational, order: usize) -> PowerSeries {
    if lambda.is_one() {
        let g = PowerSeries::scalar(
            (0..=order)
                .map(|k| Rational::new(1.into(), factorial(k + 1)))
                .collect(),
        );
        g.recip().expect("g_0 = 1")
    } else {
        let denom = PowerSeries::exp_t(order)
            .scale(lambda)
            .sub(&PowerSeries::one(order));
        denom.recip().expect("λ - 1 != 0").shift(1)
    }
}

/// 2/(λe^t + 1); λ = -1 is rejected at parse time.
fn apostol_euler(lambda: &Rational, order: usize) -> PowerSeries {
    let denom = PowerSeries::exp_t(order)
        .scale(lambda)
        .add(&PowerSeries::one(order));
    denom
        .recip()
        .expect("λ + 1 != 0")
        .scale(&Rational::from_integer(2.into()))
}

fn parse_nonneg_int(key: &str, value: &str) -> Result<i64> {
    let v = parse_rational(value)
        .map_err(|_| Error::InvalidParameter(format!("{key}={value} is not an integer")))?;
    if !v.is_integer() {
        return Err(Error::InvalidParameter(format!("{key}={value} must be an integer")));
    }
    i64::try_from(v.to_integer())
        .map_err(|_| Error::InvalidParameter(format!("{key}={value} is out of range")))
}

/// Parses `name[:key=value[,key=value]*]`.
pub fn make_family(spec: &str) -> Result<AppellFamily> {
    let spec = spec.trim();
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p)),
        None => (spec, None),
    };
    let allowed: &[&str] = match name {
        "bernoulli" | "euler" | "genocchi" | "trunc-exp" => &[],
        "miller-lee" => &["s"],
        "modified-laguerre" => &["beta"],
        "gen-bernoulli" | "gen-euler" => &["alpha"],
        "apostol-bernoulli" | "apostol-euler" => &["alpha", "lambda"],
        _ => return Err(Error::UnknownFamily(name.to_string())),
    };

    let mut alpha: i64 = 1;
    let mut lambda = Rational::one();
    let mut s: i64 = 0;
    let mut beta: i64 = 1;
    let mut seen: Vec<&str> = Vec::new();
    if let Some(params) = params {
        for pair in params.split(',') {
            let (key, value) = pair
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::InvalidParameter(format!("`{pair}` is not key=value")))?;
            if !allowed.contains(&key) {
                return Err(Error::InvalidParameter(format!("`{key}` is not a parameter of {name}")));
            }
            if seen.contains(&key) {
                return Err(Error::InvalidParameter(format!("`{key}` given twice")));
            }
            seen.push(key);
            match key {
                "alpha" => {
                    alpha = parse_nonneg_int(key, value)?;
                    if alpha < 0 {
                        return Err(Error::InvalidParameter(format!("alpha={alpha} must be nonnegative")));
                    }
                }
                "lambda" => {
                    lambda = parse_rational(value)
                        .map_err(|_| Error::InvalidParameter(format!("lambda={value} is not a rational literal")))?;
                    if lambda.is_zero() {
                        return Err(Error::InvalidParameter("lambda must be nonzero".into()));
                    }
                }
                "s" => {
                    s = parse_nonneg_int(key, value)?;
                    if s < -1 {
                        return Err(Error::InvalidParameter(format!("s={s} must be >= -1")));
                    }
                }
                "beta" => {
                    beta = parse_nonneg_int(key, value)?;
                    if beta < 1 {
                        return Err(Error::InvalidParameter(format!("beta={beta} must be positive")));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    let alpha = u32::try_from(alpha)
        .map_err(|_| Error::InvalidParameter(format!("alpha={alpha} is out of range")))?;
    if s > i64::from(u32::MAX) - 1 || beta > i64::from(u32::MAX) {
        return Err(Error::InvalidParameter("Miller-Lee order is out of range".into()));
    }

    let family = |kind, canonical: String| AppellFamily {
        name: canonical,
        kind,
        alpha,
        lambda: lambda.clone(),
        s,
        normalization: if kind == FamilyKind::MillerLee {
            Normalization::Ordinary
        } else {
            Normalization::Egf
        },
    };
    Ok(match name {
        "bernoulli" => family(FamilyKind::Bernoulli, "bernoulli".into()),
        "euler" => family(FamilyKind::Euler, "euler".into()),
        "genocchi" => family(FamilyKind::Genocchi, "genocchi".into()),
        "trunc-exp" => AppellFamily { s: 0, ..family(FamilyKind::MillerLee, "trunc-exp".into()) },
        "miller-lee" => family(FamilyKind::MillerLee, format!("miller-lee:s={s}")),
        "modified-laguerre" => AppellFamily {
            s: beta - 1,
            ..family(FamilyKind::MillerLee, format!("modified-laguerre:beta={beta}"))
        },
        "gen-bernoulli" => family(FamilyKind::GenBernoulli, format!("gen-bernoulli:alpha={alpha}")),
        "gen-euler" => family(FamilyKind::GenEuler, format!("gen-euler:alpha={alpha}")),
        "apostol-bernoulli" => family(
            FamilyKind::ApostolBernoulli,
            format!("apostol-bernoulli:alpha={alpha},lambda={}", format_rational(&lambda)),
        ),
        "apostol-euler" => {
            if lambda == -Rational::one() {
                return Err(Error::InvalidParameter(
                    "apostol-euler needs lambda != -1 (2/(1 - e^t) has a pole at t = 0)".into(),
                ));
            }
            family(
                FamilyKind::ApostolEuler,
                format!("apostol-euler:alpha={alpha},lambda={}", format_rational(&lambda)),
            )
        }
        _ => unreachable!(),
    })
}

pub fn family_a_series(f: &AppellFamily, order: usize) -> PowerSeries {
    f.a_series(order)
}

pub fn appell_numbers(f: &AppellFamily, nmax: usize) -> Vec<Rational> {
    f.numbers(nmax)
}

/// Σ_k C(n,k) c_k y^(n-k).
pub(crate) fn binomial_in_y(numbers: &[Rational], n: usize) -> Poly3 {
    Poly3::from_terms((0..=n).map(|k| {
        (
            Monomial::of(Var::Y, (n - k) as u32),
            &numbers[k] * big(binomial(n, k)),
        )
    }))
}

/// Classical Appell polynomial A_n(y) = Σ C(n,k) A_k y^(n-k).
pub fn appell_poly(f: &AppellFamily, n: usize) -> Result<Poly3> {
    f.require_egf("appell_poly")?;
    Ok(binomial_in_y(&f.numbers(n), n))
}

/// Base polynomials 0..=nmax used by the series template.
pub fn base_polys(f: &AppellFamily, nmax: usize) -> Vec<Poly3> {
    match f.normalization {
        Normalization::Egf => {
            let numbers = f.numbers(nmax);
            (0..=nmax).map(|n| binomial_in_y(&numbers, n)).collect()
        }
        Normalization::Ordinary => {
            // [t^n] A(t) e^{yt} = Σ_k a_k y^(n-k)/(n-k)!
            let a = scalar_coeffs(&f.a_series(nmax));
            (0..=nmax)
                .map(|n| {
                    Poly3::from_terms((0..=n).map(|k| {
                        (
                            Monomial::of(Var::Y, (n - k) as u32),
                            &a[k] / big(factorial(n - k)),
                        )
                    }))
                })
                .collect()
        }
    }
}

pub fn base_poly(f: &AppellFamily, n: usize) -> Poly3 {
    base_polys(f, n).pop().expect("nmax + 1 entries")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaCoeffs {
    pub values: Vec<Rational>,
}

impl BetaCoeffs {
    pub fn get(&self, k: usize) -> &Rational {
        &self.values[k]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// β_0 = 1/A_0, β_n = -(1/A_0) Σ_{k=1}^n C(n,k) A_k β_(n-k).
pub fn beta_coeffs(f: &AppellFamily, nmax: usize) -> Result<BetaCoeffs> {
    let a = f.numbers(nmax);
    if a[0].is_zero() {
        return Err(Error::DegenerateFamily(f.name.clone()));
    }
    let inv = a[0].recip();
    let mut beta: Vec<Rational> = vec![inv.clone()];
    for n in 1..=nmax {
        let acc = (1..=n).fold(Rational::zero(), |acc, k| {
            acc + big(binomial(n, k)) * &a[k] * &beta[n - k]
        });
        beta.push(-&inv * acc);
    }
    Ok(BetaCoeffs { values: beta })
}
