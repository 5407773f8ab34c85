//! Exact coefficient arithmetic: Gaussian rationals and Fourier polynomials on `T^D`.

mod coeff;
mod fourier;
mod gauss;
mod metric;
mod random;

pub use coeff::{sum_coeffs, Coeff, Opp};
pub use fourier::FourierScalar;
pub use gauss::{format_rational, parse_rational, GaussRational};
pub use metric::Metric;
pub use random::{random_gauss, random_nonzero_gauss, random_scalar, sample_rng};

/// `d_axis f`, with a structured error for a bad axis.
pub fn partial(f: &FourierScalar, axis: usize) -> crate::Result<FourierScalar> {
    f.try_partial(axis)
}

pub fn mul(f: &FourierScalar, g: &FourierScalar) -> crate::Result<FourierScalar> {
    f.try_mul(g)
}

pub fn integrate(f: &FourierScalar) -> GaussRational {
    f.integrate()
}

pub fn laplacian(f: &FourierScalar, eta: &Metric) -> crate::Result<FourierScalar> {
    eta.laplacian(f)
}
