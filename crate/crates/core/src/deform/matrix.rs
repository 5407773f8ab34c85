use rand::Rng;
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::scalars::{random_gauss, random_scalar, Coeff, FourierScalar, GaussRational};

/// An `n x n` matrix of Fourier scalars: `FourierScalar (x) Mat_n(Q(i))`.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixField {
    dim: usize,
    rank: usize,
    entries: Vec<FourierScalar>,
}

impl MatrixField {
    pub fn new(rank: usize, entries: Vec<FourierScalar>) -> Result<Self> {
        if rank == 0 || entries.len() != rank * rank {
            return Err(AlgebraError::SlotMismatch(format!(
                "a rank {rank} matrix needs {} entries, got {}",
                rank * rank,
                entries.len()
            )));
        }
        let dim = entries[0].dim();
        if let Some(bad) = entries.iter().find(|e| e.dim() != dim) {
            return Err(AlgebraError::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(MatrixField { dim, rank, entries })
    }

    /// A constant matrix of Gaussian rationals.
    pub fn constant(dim: usize, rows: &[Vec<GaussRational>]) -> Result<Self> {
        let rank = rows.len();
        Self::new(rank, rows.iter().flatten().map(|c| FourierScalar::constant(dim, c.clone())).collect())
    }

    /// `f` times the elementary matrix `E_{rc}`.
    pub fn elementary(rank: usize, r: usize, c: usize, f: &FourierScalar) -> Self {
        let mut m = Self::zero((f.dim(), rank));
        m.entries[r * rank + c] = f.clone();
        m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, r: usize, c: usize) -> &FourierScalar {
        &self.entries[r * self.rank + c]
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.times(other).minus(&other.times(self))
    }

    pub fn map_entries(&self, f: impl Fn(&FourierScalar) -> FourierScalar) -> Self {
        MatrixField { dim: self.dim, rank: self.rank, entries: self.entries.iter().map(f).collect() }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rank)
            .map(|r| Value::Array((0..self.rank).map(|c| self.entry(r, c).to_json()).collect()))
            .collect();
        json!(rows)
    }
}

impl Coeff for MatrixField {
    type Shape = (usize, usize);

    fn shape(&self) -> (usize, usize) {
        (self.dim, self.rank)
    }
    fn dim_of(shape: (usize, usize)) -> usize {
        shape.0
    }
    fn zero((dim, rank): (usize, usize)) -> Self {
        MatrixField { dim, rank, entries: vec![FourierScalar::zero(dim); rank * rank] }
    }
    fn one(shape: (usize, usize)) -> Self {
        Self::from_scalar(shape, &FourierScalar::one(shape.0))
    }
    fn is_zero(&self) -> bool {
        self.entries.iter().all(FourierScalar::is_zero)
    }
    fn plus(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        MatrixField { dim: self.dim, rank: self.rank, entries }
    }
    fn minus(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        MatrixField { dim: self.dim, rank: self.rank, entries }
    }
    fn negate(&self) -> Self {
        self.map_entries(FourierScalar::neg)
    }
    fn times(&self, other: &Self) -> Self {
        let n = self.rank;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut s = FourierScalar::zero(self.dim);
                for k in 0..n {
                    let (a, b) = (self.entry(r, k), other.entry(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        s = &s + &(a * b);
                    }
                }
                entries.push(s);
            }
        }
        MatrixField { dim: self.dim, rank: n, entries }
    }
    fn scale(&self, c: &GaussRational) -> Self {
        self.map_entries(|e| e.scale(c))
    }
    fn partial(&self, axis: usize) -> Self {
        self.map_entries(|e| e.try_partial(axis).expect("axis out of range"))
    }
    fn from_scalar((dim, rank): (usize, usize), f: &FourierScalar) -> Self {
        let mut m = Self::zero((dim, rank));
        for i in 0..rank {
            m.entries[i * rank + i] = f.clone();
        }
        m
    }
}

/// Random matrix with each entry an independent sparse random scalar, or
/// zero with probability one half.
pub fn random_matrix<G: Rng + ?Sized>(dim: usize, rank: usize, cutoff: i64, rng: &mut G) -> MatrixField {
    let entries = (0..rank * rank)
        .map(|_| if rng.gen_bool(0.5) { random_scalar(dim, cutoff, rng) } else { FourierScalar::zero(dim) })
        .collect();
    MatrixField { dim, rank, entries }
}

/// A random constant matrix.
pub fn random_constant_matrix<G: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut G) -> MatrixField {
    let entries = (0..rank * rank).map(|_| FourierScalar::constant(dim, random_gauss(rng))).collect();
    MatrixField { dim, rank, entries }
}
