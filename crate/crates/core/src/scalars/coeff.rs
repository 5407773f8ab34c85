use std::fmt::Debug;

use super::fourier::FourierScalar;
use super::gauss::GaussRational;

/// Coefficient ring for sections and complex elements.
///
/// Multiplication may be noncommutative (matrix-valued fields). Every
/// multilinear operation in this crate writes each product with the factor
/// of the earlier argument on the left, which is the convention for
/// tensoring with an associative algebra.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    /// Data needed to build a zero or unit: dimension, plus rank for matrices.
    type Shape: Copy + Eq + Debug + Send + Sync;

    fn shape(&self) -> Self::Shape;
    fn dim_of(shape: Self::Shape) -> usize;
    fn zero(shape: Self::Shape) -> Self;
    fn one(shape: Self::Shape) -> Self;

    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scale(&self, c: &GaussRational) -> Self;
    /// Derivative along a 0-based axis.
    fn partial(&self, axis: usize) -> Self;

    /// Embeds a scalar function as `f * 1`.
    fn from_scalar(shape: Self::Shape, f: &FourierScalar) -> Self;

    fn dim(&self) -> usize {
        Self::dim_of(self.shape())
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.shape())
    }

    fn half(&self) -> Self {
        self.scale(&GaussRational::from_ratio(1, 2))
    }

    fn scale_int(&self, k: i64) -> Self {
        self.scale(&GaussRational::from_int(k))
    }
}

impl Coeff for FourierScalar {
    type Shape = usize;

    fn shape(&self) -> usize {
        FourierScalar::dim(self)
    }
    fn dim_of(shape: usize) -> usize {
        shape
    }
    fn zero(shape: usize) -> Self {
        FourierScalar::zero(shape)
    }
    fn one(shape: usize) -> Self {
        FourierScalar::one(shape)
    }
    fn is_zero(&self) -> bool {
        FourierScalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn negate(&self) -> Self {
        FourierScalar::neg(self)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &GaussRational) -> Self {
        FourierScalar::scale(self, c)
    }
    fn partial(&self, axis: usize) -> Self {
        self.try_partial(axis).expect("axis out of range")
    }
    fn from_scalar(_shape: usize, f: &FourierScalar) -> Self {
        f.clone()
    }
}

/// The opposite ring: `Opp(a).times(Opp(b)) = Opp(b * a)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Opp<R>(pub R);

impl<R: Coeff> Coeff for Opp<R> {
    type Shape = R::Shape;

    fn shape(&self) -> R::Shape {
        self.0.shape()
    }
    fn dim_of(shape: R::Shape) -> usize {
        R::dim_of(shape)
    }
    fn zero(shape: R::Shape) -> Self {
        Opp(R::zero(shape))
    }
    fn one(shape: R::Shape) -> Self {
        Opp(R::one(shape))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        Opp(self.0.plus(&other.0))
    }
    fn minus(&self, other: &Self) -> Self {
        Opp(self.0.minus(&other.0))
    }
    fn negate(&self) -> Self {
        Opp(self.0.negate())
    }
    fn times(&self, other: &Self) -> Self {
        Opp(other.0.times(&self.0))
    }
    fn scale(&self, c: &GaussRational) -> Self {
        Opp(self.0.scale(c))
    }
    fn partial(&self, axis: usize) -> Self {
        Opp(self.0.partial(axis))
    }
    fn from_scalar(shape: R::Shape, f: &FourierScalar) -> Self {
        Opp(R::from_scalar(shape, f))
    }
}

/// Sum of an iterator of coefficients, starting from zero of the given shape.
pub fn sum_coeffs<R: Coeff, I: IntoIterator<Item = R>>(shape: R::Shape, items: I) -> R {
    items.into_iter().fold(R::zero(shape), |acc, x| acc.plus(&x))
}
