use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::gauss::GaussRational;
use crate::error::{AlgebraError, Result};

/// A finite Fourier sum `sum_k c_k e^{i k.x}` on the torus `T^D`.
///
/// Axes are indexed from 0. Zero coefficients are never stored, so two
/// scalars are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FourierScalar {
    dim: usize,
    terms: BTreeMap<Vec<i64>, GaussRational>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    coeff: GaussRational,
    mode: Vec<i64>,
}

impl FourierScalar {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussRational::one())
    }

    pub fn constant(dim: usize, c: GaussRational) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    /// `c * e_k`.
    pub fn monomial(mode: Vec<i64>, c: GaussRational) -> Self {
        let dim = mode.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mode, c);
        }
        Self { dim, terms }
    }

    /// The plane wave `e_k` with unit coefficient.
    pub fn mode(mode: Vec<i64>) -> Self {
        Self::monomial(mode, GaussRational::one())
    }

    /// Builds a scalar from `(mode, coeff)` pairs, summing repeats.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, GaussRational)>,
    {
        let mut out = Self::zero(dim);
        for (k, c) in terms {
            if k.len() != dim {
                return Err(AlgebraError::DimensionMismatch { expected: dim, found: k.len() });
            }
            out.add_term(k, &c);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, GaussRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mode: &[i64]) -> GaussRational {
        self.terms.get(mode).cloned().unwrap_or_default()
    }

    /// Largest `|k_j|` over the support; 0 for constants and zero.
    pub fn max_mode(&self) -> i64 {
        self.terms.keys().flat_map(|k| k.iter().map(|x| x.abs())).max().unwrap_or(0)
    }

    fn add_term(&mut self, mode: Vec<i64>, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mode) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c);
        }
        Ok(out)
    }

    /// Exact convolution of mode maps.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let k: Vec<i64> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                out.add_term(k, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { dim: self.dim, terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    /// `d/dx^axis`: mode `k` picks up a factor `i k_axis`.
    pub fn try_partial(&self, axis: usize) -> Result<Self> {
        if axis >= self.dim {
            return Err(AlgebraError::AxisOutOfRange { axis, dim: self.dim });
        }
        Ok(self.map_modes(|k| GaussRational::from_parts((0, 1), (k[axis], 1))))
    }

    /// Multiplies each coefficient by a function of its mode.
    pub fn map_modes<F: Fn(&[i64]) -> GaussRational>(&self, f: F) -> Self {
        let mut out = Self::zero(self.dim);
        for (k, c) in &self.terms {
            let w = f(k);
            if !w.is_zero() {
                out.terms.insert(k.clone(), c * &w);
            }
        }
        out
    }

    /// Normalized torus integral: the constant-mode coefficient.
    pub fn integrate(&self) -> GaussRational {
        self.terms.get(&vec![0; self.dim]).cloned().unwrap_or_default()
    }

    /// Canonical JSON encoding: entries sorted lexicographically by mode.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Entry> =
            self.terms.iter().map(|(k, c)| Entry { coeff: c.clone(), mode: k.clone() }).collect();
        serde_json::to_value(entries).expect("scalar encoding is infallible")
    }

    pub fn from_json(dim: usize, value: &serde_json::Value) -> Result<Self> {
        let entries: Vec<Entry> = serde_json::from_value(value.clone())
            .map_err(|e| AlgebraError::Config(format!("bad scalar encoding: {e}")))?;
        Self::from_terms(dim, entries.into_iter().map(|e| (e.mode, e.coeff)))
    }
}

impl fmt::Debug for FourierScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c}*e{k:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for FourierScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Operator sugar panics on dimension mismatch; use the `try_` methods to get errors.
impl<'a> Add<&'a FourierScalar> for &'a FourierScalar {
    type Output = FourierScalar;
    fn add(self, rhs: &FourierScalar) -> FourierScalar {
        self.try_add(rhs).expect("dimension mismatch")
    }
}

impl<'a> Sub<&'a FourierScalar> for &'a FourierScalar {
    type Output = FourierScalar;
    fn sub(self, rhs: &FourierScalar) -> FourierScalar {
        self.try_sub(rhs).expect("dimension mismatch")
    }
}

impl<'a> Mul<&'a FourierScalar> for &'a FourierScalar {
    type Output = FourierScalar;
    fn mul(self, rhs: &FourierScalar) -> FourierScalar {
        self.try_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &FourierScalar {
    type Output = FourierScalar;
    fn neg(self) -> FourierScalar {
        FourierScalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn single_mode_convolution() {
        let p = &FourierScalar::mode(vec![1, 0]) * &FourierScalar::mode(vec![0, 1]);
        assert_eq!(p, FourierScalar::mode(vec![1, 1]));
        let f = FourierScalar::monomial(vec![2, -1], g(3));
        assert_eq!(&f * &FourierScalar::one(2), f);
    }

    #[test]
    fn convolution_example() {
        // (2 + e_{(1,0)}) (3 e_{(-1,0)}) = 6 e_{(-1,0)} + 3
        let a = &FourierScalar::constant(2, g(2)) + &FourierScalar::mode(vec![1, 0]);
        let b = FourierScalar::monomial(vec![-1, 0], g(3));
        let expected =
            FourierScalar::from_terms(2, vec![(vec![-1, 0], g(6)), (vec![0, 0], g(3))]).unwrap();
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn partial_eigenmode() {
        let f = FourierScalar::mode(vec![2, 0]);
        let df = f.try_partial(0).unwrap();
        assert_eq!(df, FourierScalar::monomial(vec![2, 0], GaussRational::from_parts((0, 1), (2, 1))));
        assert!(FourierScalar::constant(2, g(5)).try_partial(1).unwrap().is_zero());
        let sq = &FourierScalar::mode(vec![1, 0]) * &FourierScalar::mode(vec![1, 0]);
        assert_eq!(
            sq.try_partial(0).unwrap(),
            FourierScalar::monomial(vec![2, 0], GaussRational::from_parts((0, 1), (2, 1)))
        );
    }

    #[test]
    fn integrate_picks_constant_mode() {
        let f = &FourierScalar::constant(2, g(3)) + &FourierScalar::mode(vec![1, 0]);
        assert_eq!(f.integrate(), g(3));
        let p = &FourierScalar::mode(vec![1, 0]) * &FourierScalar::mode(vec![-1, 0]);
        assert_eq!(p.integrate(), g(1));
    }

    #[test]
    fn errors_are_structured() {
        let a = FourierScalar::one(2);
        let b = FourierScalar::one(3);
        assert_eq!(
            a.try_mul(&b),
            Err(AlgebraError::DimensionMismatch { expected: 2, found: 3 })
        );
        assert_eq!(a.try_partial(2), Err(AlgebraError::AxisOutOfRange { axis: 2, dim: 2 }));
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = FourierScalar::mode(vec![1, 1]);
        assert!((&f - &f).is_empty());
    }

    #[test]
    fn json_roundtrip_sorted() {
        let f = FourierScalar::from_terms(
            2,
            vec![(vec![1, 0], g(1)), (vec![-1, 2], GaussRational::from_parts((1, 2), (1, 1)))],
        )
        .unwrap();
        let v = f.to_json();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"[{"coeff":{"im":"1/1","re":"1/2"},"mode":[-1,2]}"#));
        assert_eq!(FourierScalar::from_json(2, &v).unwrap(), f);
    }
}
