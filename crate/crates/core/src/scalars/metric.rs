use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use super::gauss::{format_rational, parse_rational, GaussRational};
use crate::error::{AlgebraError, Result};

/// A constant symmetric invertible matrix `eta^{ij}` with cached inverse `eta_{ij}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Metric {
    upper: Vec<Vec<BigRational>>,
    lower: Vec<Vec<BigRational>>,
    det: BigRational,
}

impl Metric {
    pub fn new(upper: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = upper.len();
        if n == 0 {
            return Err(AlgebraError::Config("metric must be at least 1x1".into()));
        }
        for row in &upper {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if upper[i][j] != upper[j][i] {
                    return Err(AlgebraError::AsymmetricMetric);
                }
            }
        }
        let (lower, det) = invert(&upper).ok_or(AlgebraError::SingularMetric)?;
        Ok(Self { upper, lower, det })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        Self::from_ints(&refs)
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1; dim]).expect("identity is a metric")
    }

    /// `diag(1, ..., 1, -1)`.
    pub fn lorentzian(dim: usize) -> Self {
        let mut d = vec![1; dim];
        d[dim - 1] = -1;
        Self::diagonal(&d).expect("diagonal +-1 is a metric")
    }

    pub fn dim(&self) -> usize {
        self.upper.len()
    }

    /// `eta^{ij}`.
    pub fn up(&self, i: usize, j: usize) -> &BigRational {
        &self.upper[i][j]
    }

    /// `eta_{ij}`, the inverse matrix.
    pub fn down(&self, i: usize, j: usize) -> &BigRational {
        &self.lower[i][j]
    }

    pub fn up_g(&self, i: usize, j: usize) -> GaussRational {
        GaussRational::from_real(self.upper[i][j].clone())
    }

    pub fn down_g(&self, i: usize, j: usize) -> GaussRational {
        GaussRational::from_real(self.lower[i][j].clone())
    }

    pub fn det(&self) -> &BigRational {
        &self.det
    }

    /// Nonzero entries `(i, j, eta^{ij})`.
    pub fn up_entries(&self) -> Vec<(usize, usize, GaussRational)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.upper[i][j].is_zero() {
                    out.push((i, j, self.up_g(i, j)));
                }
            }
        }
        out
    }

    /// `sqrt|det eta|` when it is rational.
    pub fn sqrt_abs_det(&self) -> Result<BigRational> {
        rational_sqrt(&self.det.abs()).ok_or(AlgebraError::NonSquareDeterminant)
    }

    pub fn det_sign(&self) -> i64 {
        if self.det.is_negative() {
            -1
        } else {
            1
        }
    }

    /// `eta^{ij} k_i k_j` for an integer covector.
    pub fn quad_up(&self, k: &[i64]) -> BigRational {
        let n = self.dim();
        let mut s = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                if !self.upper[i][j].is_zero() {
                    s += &self.upper[i][j] * BigRational::from_integer(BigInt::from(k[i] * k[j]));
                }
            }
        }
        s
    }

    /// Canonical encoding: rows of `p/q` strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.upper.iter().map(|r| r.iter().map(format_rational).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let parsed: Result<Vec<Vec<BigRational>>> =
            rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect();
        Self::new(parsed?)
    }

    /// `Delta f = sum eta^{ij} d_i d_j f`.
    pub fn laplacian<R: Coeff>(&self, f: &R) -> Result<R> {
        if f.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: f.dim() });
        }
        let mut out = f.zero_like();
        for (i, j, c) in self.up_entries() {
            out = out.plus(&f.partial(i).partial(j).scale(&c));
        }
        Ok(out)
    }

    /// `(raise B)^i = eta^{ij} B_j`.
    pub fn raise<R: Coeff>(&self, b: &[R]) -> Vec<R> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = b[0].zero_like();
                for j in 0..n {
                    if !self.upper[i][j].is_zero() {
                        s = s.plus(&b[j].scale(&self.up_g(i, j)));
                    }
                }
                s
            })
            .collect()
    }

    /// `(lower A)_i = eta_{ij} A^j`.
    pub fn lower<R: Coeff>(&self, a: &[R]) -> Vec<R> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = a[0].zero_like();
                for j in 0..n {
                    if !self.lower[i][j].is_zero() {
                        s = s.plus(&a[j].scale(&self.down_g(i, j)));
                    }
                }
                s
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct MetricRepr(Vec<Vec<String>>);

impl Serialize for Metric {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MetricRepr(self.to_strings()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Metric {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let MetricRepr(rows) = MetricRepr::deserialize(d)?;
        Metric::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// Gauss-Jordan inverse and determinant over the rationals.
fn invert(m: &[Vec<BigRational>]) -> Option<(Vec<Vec<BigRational>>, BigRational)> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some((inv, det))
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FourierScalar;

    #[test]
    fn inverse_and_det() {
        let m = Metric::from_ints(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(*m.det(), BigRational::one());
        assert_eq!(m.down(0, 0), &BigRational::one());
        assert_eq!(m.down(0, 1), &-BigRational::one());
        assert_eq!(m.down(1, 1), &BigRational::from_integer(2.into()));
    }

    #[test]
    fn rejects_bad_metrics() {
        assert_eq!(Metric::from_ints(&[&[1, 2], &[3, 1]]), Err(AlgebraError::AsymmetricMetric));
        assert_eq!(Metric::from_ints(&[&[1, 1], &[1, 1]]), Err(AlgebraError::SingularMetric));
        assert!(Metric::diagonal(&[2, 1]).unwrap().sqrt_abs_det().is_err());
        assert_eq!(Metric::diagonal(&[4, -1]).unwrap().sqrt_abs_det().unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn laplacian_examples() {
        let id = Metric::identity(3);
        assert!(id.laplacian(&FourierScalar::one(3)).unwrap().is_zero());
        let e = FourierScalar::mode(vec![1, 0, 0]);
        assert_eq!(id.laplacian(&e).unwrap(), e.scale(&GaussRational::from_int(-1)));
        let lor = Metric::diagonal(&[1, -1]).unwrap();
        assert!(lor.laplacian(&FourierScalar::mode(vec![1, 1])).unwrap().is_zero());
        assert!(id.laplacian(&FourierScalar::one(2)).is_err());
    }

    #[test]
    fn laplacian_matches_mode_formula() {
        let m = Metric::from_ints(&[&[2, 1, 0], &[1, -1, 0], &[0, 0, 3]]).unwrap();
        let f = FourierScalar::from_terms(
            3,
            vec![(vec![1, -2, 1], GaussRational::from_int(3)), (vec![0, 1, 2], GaussRational::i())],
        )
        .unwrap();
        let oracle = f.map_modes(|k| GaussRational::from_real(-m.quad_up(k)));
        assert_eq!(m.laplacian(&f).unwrap(), oracle);
    }
}
