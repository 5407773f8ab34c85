use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::fourier::FourierScalar;
use super::gauss::GaussRational;

/// Deterministic stream for `(master seed, identity id, sample index)`.
pub fn sample_rng(seed: u64, identity: &str, sample: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((identity.len() as u64).to_le_bytes());
    h.update(identity.as_bytes());
    h.update(sample.to_le_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// Real and imaginary parts from {-2..2}, denominators from {1, 2}.
pub fn random_gauss<G: Rng + ?Sized>(rng: &mut G) -> GaussRational {
    let re = (rng.gen_range(-2i64..=2), rng.gen_range(1i64..=2));
    let im = (rng.gen_range(-2i64..=2), rng.gen_range(1i64..=2));
    GaussRational::from_parts(re, im)
}

pub fn random_nonzero_gauss<G: Rng + ?Sized>(rng: &mut G) -> GaussRational {
    loop {
        let c = random_gauss(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A sparse random scalar: one to three terms with modes in `[-cutoff, cutoff]^dim`.
pub fn random_scalar<G: Rng + ?Sized>(dim: usize, cutoff: i64, rng: &mut G) -> FourierScalar {
    let cutoff = cutoff.max(0);
    let n = rng.gen_range(1..=3);
    let mut out = FourierScalar::zero(dim);
    for _ in 0..n {
        let mode: Vec<i64> = (0..dim).map(|_| rng.gen_range(-cutoff..=cutoff)).collect();
        out = &out + &FourierScalar::monomial(mode, random_nonzero_gauss(rng));
    }
    out
}
