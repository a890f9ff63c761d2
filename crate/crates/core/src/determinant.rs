//! Determinantal construction of Appell polynomials and LGHAP.
//!
//! The matrices are upper Hessenberg: the first row carries the polynomials,
//! the rest carry binomially weighted β coefficients with β_0 on the
//! subdiagonal.

use num_traits::One;

use crate::algebra::{big, binomial, Poly3, Rational};
use crate::appell::{beta_coeffs, AppellFamily, BetaCoeffs};
use crate::error::{Error, Result};
use crate::lgh::{lghp, y_power, LghParams};

/// Largest dimension the cofactor-expansion oracle accepts.
pub const NAIVE_MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HessMatrix {
    entries: Vec<Vec<Poly3>>,
}

impl HessMatrix {
    /// Validates squareness and entries[i][j] = 0 for i >= j + 2.
    pub fn new(entries: Vec<Vec<Poly3>>) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 {
            return Err(Error::ShapeViolation("empty matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::ShapeViolation(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if i >= j + 2 && !e.is_zero() {
                    return Err(Error::ShapeViolation(format!("nonzero entry below the subdiagonal at ({i}, {j})")));
                }
            }
        }
        Ok(HessMatrix { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly3 {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Poly3>] {
        &self.entries
    }
}

/// Rows 2..n+1 of the determinantal layout: entry (i, j) = C(j, i-1) β_(j-i+1).
fn appell_matrix(first_row: Vec<Poly3>, beta: &BetaCoeffs) -> HessMatrix {
    let dim = first_row.len();
    let mut entries = vec![first_row];
    for i in 1..dim {
        let row = (0..dim)
            .map(|j| {
                if j + 1 < i {
                    Poly3::zero()
                } else {
                    let k = j + 1 - i;
                    Poly3::constant(big(binomial(j, i - 1)) * beta.get(k))
                }
            })
            .collect();
        entries.push(row);
    }
    HessMatrix::new(entries).expect("layout is upper Hessenberg by construction")
}

pub fn build_lghap_matrix(f: &AppellFamily, p: LghParams, n: usize) -> Result<HessMatrix> {
    f.require_egf("build_lghap_matrix")?;
    let beta = beta_coeffs(f, n)?;
    Ok(appell_matrix((0..=n).map(|k| lghp(p, k)).collect(), &beta))
}

pub fn build_appell_matrix(f: &AppellFamily, n: usize) -> Result<HessMatrix> {
    f.require_egf("build_appell_matrix")?;
    let beta = beta_coeffs(f, n)?;
    Ok(appell_matrix((0..=n).map(y_power).collect(), &beta))
}

/// Entry-product counts reported next to a determinant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DetStats {
    pub entry_products: usize,
}

/// Last-column expansion recurrence:
/// d_k = Σ_{i≤k} (-1)^(k-i) a[i][k] (Π_{j=i}^{k-1} a[j+1][j]) d_(i-1), d_0 = 1 (1-based).
pub fn hess_det(mat: &HessMatrix) -> Poly3 {
    hess_det_counted(mat).0
}

pub fn hess_det_counted(mat: &HessMatrix) -> (Poly3, DetStats) {
    let n = mat.dim();
    let a = |i: usize, j: usize| mat.get(i - 1, j - 1);
    let mut stats = DetStats::default();
    let mut d: Vec<Poly3> = Vec::with_capacity(n + 1);
    d.push(Poly3::one());
    for k in 1..=n {
        let mut acc = Poly3::zero();
        // walk i downward from k so the subdiagonal product grows by one factor per step
        let mut sub = Poly3::one();
        for i in (1..=k).rev() {
            if i < k {
                sub = &sub * a(i + 1, i);
                stats.entry_products += 1;
            }
            if sub.is_zero() {
                break;
            }
            let entry = a(i, k);
            if entry.is_zero() || d[i - 1].is_zero() {
                continue;
            }
            let mut term = &(entry * &sub) * &d[i - 1];
            stats.entry_products += 2;
            if (k - i) % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        d.push(acc);
    }
    (d.pop().expect("n >= 1"), stats)
}

/// First-row cofactor expansion. Exponential cost; limited to NAIVE_MAX_DIM.
pub fn naive_det(mat: &HessMatrix) -> Result<Poly3> {
    naive_det_counted(mat).map(|(p, _)| p)
}

pub fn naive_det_counted(mat: &HessMatrix) -> Result<(Poly3, DetStats)> {
    let dim = mat.dim();
    if dim > NAIVE_MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, max: NAIVE_MAX_DIM });
    }
    let rows: Vec<usize> = (0..dim).collect();
    let cols: Vec<usize> = (0..dim).collect();
    let mut stats = DetStats::default();
    let det = cofactor(mat.rows(), &rows, &cols, &mut stats);
    Ok((det, stats))
}

fn cofactor(m: &[Vec<Poly3>], rows: &[usize], cols: &[usize], stats: &mut DetStats) -> Poly3 {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let top = rows[0];
    let mut acc = Poly3::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let entry = &m[top][c];
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor(m, &rows[1..], &minor_cols, stats);
        let term = entry * &minor;
        stats.entry_products += 1;
        if idx % 2 == 0 {
            acc += term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// (-1)^n / β_0^(n+1).
fn prefactor(beta0: &Rational, n: usize) -> Rational {
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    sign / num_traits::pow(beta0.clone(), n + 1)
}

/// Classical A_n(y) from the determinant.
pub fn appell_det(f: &AppellFamily, n: usize) -> Result<Poly3> {
    f.require_egf("appell_det")?;
    let beta = beta_coeffs(f, n)?;
    let mat = appell_matrix((0..=n).map(y_power).collect(), &beta);
    Ok(hess_det(&mat).scale(&prefactor(&beta.values[0], n)))
}

/// The LGHAP from the determinant with first row 1, LGHP_1, ..., LGHP_n.
pub fn lghap_det(f: &AppellFamily, p: LghParams, n: usize) -> Result<Poly3> {
    f.require_egf("lghap_det")?;
    let beta = beta_coeffs(f, n)?;
    let mat = appell_matrix((0..=n).map(|k| lghp(p, k)).collect(), &beta);
    Ok(hess_det(&mat).scale(&prefactor(&beta.values[0], n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Var};
    use crate::appell::{appell_poly, make_family};
    use crate::lgh::lghap_series;

    fn fam(s: &str) -> AppellFamily {
        make_family(s).unwrap()
    }
    fn c(v: Rational) -> Poly3 {
        Poly3::constant(v)
    }
    fn y() -> Poly3 {
        Poly3::var(Var::Y)
    }
    fn pr(m: u32, r: u32) -> LghParams {
        LghParams::new(m, r).unwrap()
    }

    #[test]
    fn matrix_layout() {
        let b = fam("bernoulli");
        let m0 = build_lghap_matrix(&b, pr(3, 5), 0).unwrap();
        assert_eq!(m0.dim(), 1);
        assert_eq!(m0.get(0, 0), &Poly3::one());
        let m1 = build_lghap_matrix(&b, pr(3, 5), 1).unwrap();
        assert_eq!(
            m1.rows(),
            &[vec![Poly3::one(), lghp(pr(3, 5), 1)], vec![c(int(1)), c(rat(1, 2))]]
        );
        let m5 = build_lghap_matrix(&fam("euler"), pr(2, 2), 5).unwrap();
        for i in 1..m5.dim() {
            assert_eq!(m5.get(i, i - 1), &c(int(1)));
        }
        assert!(matches!(build_lghap_matrix(&fam("genocchi"), pr(2, 2), 3), Err(Error::DegenerateFamily(_))));
    }

    #[test]
    fn shape_checks() {
        let z = Poly3::zero;
        let o = Poly3::one;
        assert!(matches!(
            HessMatrix::new(vec![vec![o(), o()], vec![o()]]),
            Err(Error::ShapeViolation(_))
        ));
        assert!(matches!(
            HessMatrix::new(vec![vec![o(), z(), z()], vec![o(), o(), z()], vec![o(), o(), o()]]),
            Err(Error::ShapeViolation(_))
        ));
        assert!(matches!(HessMatrix::new(vec![]), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn small_determinants() {
        let single = HessMatrix::new(vec![vec![c(rat(2, 3))]]).unwrap();
        assert_eq!(hess_det(&single), c(rat(2, 3)));
        assert_eq!(naive_det(&single).unwrap(), c(rat(2, 3)));
        let (a, b, cc, d) = (y(), c(int(3)), c(int(5)), y().pow(2));
        let two = HessMatrix::new(vec![vec![a.clone(), b.clone()], vec![cc.clone(), d.clone()]]).unwrap();
        let expected = &(&a * &d) - &(&b * &cc);
        assert_eq!(hess_det(&two), expected);
        assert_eq!(naive_det(&two).unwrap(), expected);
        let with_zero_row = HessMatrix::new(vec![
            vec![y(), c(int(1)), c(int(2))],
            vec![Poly3::zero(), Poly3::zero(), Poly3::zero()],
            vec![Poly3::zero(), c(int(4)), y()],
        ])
        .unwrap();
        assert!(hess_det(&with_zero_row).is_zero());
        assert!(naive_det(&with_zero_row).unwrap().is_zero());
    }

    #[test]
    fn bernoulli_n1_matches_oracle() {
        let m = build_appell_matrix(&fam("bernoulli"), 1).unwrap();
        // det [[1, y], [1, 1/2]] = 1/2 - y
        assert_eq!(hess_det(&m), c(rat(1, 2)) - y());
        assert_eq!(hess_det(&m), naive_det(&m).unwrap());
    }

    #[test]
    fn naive_guard() {
        let m = build_appell_matrix(&fam("bernoulli"), 8).unwrap();
        assert!(matches!(naive_det(&m), Err(Error::DimensionTooLarge { dim: 9, max: 8 })));
    }

    #[test]
    fn appell_det_examples() {
        let b = fam("bernoulli");
        assert_eq!(appell_det(&b, 1).unwrap(), y() - c(rat(1, 2)));
        assert_eq!(appell_det(&b, 0).unwrap(), Poly3::one());
        assert_eq!(appell_det(&fam("euler"), 2).unwrap(), y().pow(2) - y());
        for n in 0..=10 {
            assert_eq!(appell_det(&b, n).unwrap(), appell_poly(&b, n).unwrap());
        }
    }

    #[test]
    fn lghap_det_examples() {
        let b = fam("bernoulli");
        assert_eq!(
            lghap_det(&b, pr(3, 5), 4).unwrap().to_string(),
            "y^4 - 2*y^3 + y^2 + 24*x*y - 12*x - 1/30"
        );
        let e = fam("euler");
        assert_eq!(lghap_det(&e, pr(3, 5), 4).unwrap(), lghap_series(&e, pr(3, 5), 4));
        let ae = fam("apostol-euler:alpha=1,lambda=2");
        assert_eq!(lghap_det(&ae, pr(2, 2), 0).unwrap(), c(rat(2, 3)));
        assert!(matches!(lghap_det(&fam("genocchi"), pr(3, 5), 4), Err(Error::DegenerateFamily(_))));
        assert!(matches!(lghap_det(&fam("trunc-exp"), pr(3, 5), 4), Err(Error::NormalizationMismatch(_))));
    }

    #[test]
    fn hessenberg_is_cheaper() {
        let m = build_lghap_matrix(&fam("bernoulli"), pr(2, 3), 6).unwrap();
        let (h, hs) = hess_det_counted(&m);
        let (nv, ns) = naive_det_counted(&m).unwrap();
        assert_eq!(h, nv);
        assert!(hs.entry_products < ns.entry_products);
    }
}
