//! Double-copy operations: the C-bracket of vector fields with its Jacobi
//! constraints, the doubled torus `T^{2D}` with `Delta_-`, and the double
//! bracket of bivectors.

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::scalars::{random_scalar, Coeff, FourierScalar, GaussRational, Metric};

/// `[A,B]^{eta,j} = A^i d_i B^j - d_i A^j B^i + eta^{rj} eta_{kl} d_r A^k B^l`,
/// exactly as displayed (not antisymmetric).
pub fn etab_bracket<R: Coeff>(a: &[R], b: &[R], eta: &Metric) -> Vec<R> {
    let n = a.len();
    let zero = a[0].zero_like();
    let mut out = vec![zero; n];
    for j in 0..n {
        for i in 0..n {
            out[j] = out[j].plus(&a[i].times(&b[j].partial(i))).minus(&a[j].partial(i).times(&b[i]));
        }
    }
    for (r, j, up) in eta.up_entries() {
        for k in 0..n {
            for l in 0..n {
                let down = eta.down_g(k, l);
                if down.is_zero() {
                    continue;
                }
                out[j] = out[j].plus(&a[k].partial(r).times(&b[l]).scale(&(&up * &down)));
            }
        }
    }
    out
}

/// The C-bracket: `(etab(A,B) - etab(B,A)) / 2`.
pub fn c_bracket<R: Coeff>(a: &[R], b: &[R], eta: &Metric) -> Vec<R> {
    let ab = etab_bracket(a, b, eta);
    let ba = etab_bracket(b, a, eta);
    ab.iter().zip(&ba).map(|(x, y)| x.minus(y).half()).collect()
}

/// `A^i d_i B^j - B^i d_i A^j`.
pub fn lie_bracket<R: Coeff>(a: &[R], b: &[R]) -> Vec<R> {
    (0..a.len())
        .map(|j| {
            (0..a.len()).fold(a[0].zero_like(), |acc, i| {
                acc.plus(&a[i].times(&b[j].partial(i))).minus(&b[i].times(&a[j].partial(i)))
            })
        })
        .collect()
}

/// Jacobiator of the displayed bracket in Leibniz form:
/// `[A,[B,C]] - [[A,B],C] - [B,[A,C]]`. The bracket is not antisymmetric,
/// so this is the form in which Jacobi can hold.
pub fn c_jacobiator<R: Coeff>(a: &[R], b: &[R], c: &[R], eta: &Metric) -> Vec<R> {
    let br = |x: &[R], y: &[R]| etab_bracket(x, y, eta);
    let lhs = br(a, &br(b, c));
    let t1 = br(&br(a, b), c);
    let t2 = br(b, &br(a, c));
    (0..a.len()).map(|j| lhs[j].minus(&t1[j]).minus(&t2[j])).collect()
}

/// `[[A,B],C] + [[B,C],A] + [[C,A],B]` for the antisymmetrized bracket.
pub fn c_jacobiator_cyclic<R: Coeff>(a: &[R], b: &[R], c: &[R], eta: &Metric) -> Vec<R> {
    let br = |x: &[R], y: &[R]| c_bracket(x, y, eta);
    let t1 = br(&br(a, b), c);
    let t2 = br(&br(b, c), a);
    let t3 = br(&br(c, a), b);
    (0..a.len()).map(|j| t1[j].plus(&t2[j]).plus(&t3[j])).collect()
}

/// `<A, B> = eta_{kl} A^k B^l`.
pub fn eta_pairing<R: Coeff>(a: &[R], b: &[R], eta: &Metric) -> R {
    let mut s = a[0].zero_like();
    for (k, x) in a.iter().enumerate() {
        for (l, y) in b.iter().enumerate() {
            let c = eta.down_g(k, l);
            if !c.is_zero() {
                s = s.plus(&x.times(y).scale(&c));
            }
        }
    }
    s
}

/// Cyclic Jacobiator minus `(1/6) d^j (<[A,B],C> + <[B,C],A> + <[C,A],B>)`.
/// Vanishes on constrained triples: there the antisymmetrized bracket fails
/// Jacobi only by an exact term.
pub fn c_jacobiator_exactness_residual<R: Coeff>(a: &[R], b: &[R], c: &[R], eta: &Metric) -> Vec<R> {
    let br = |x: &[R], y: &[R]| c_bracket(x, y, eta);
    let n = eta_pairing(&br(a, b), c, eta).plus(&eta_pairing(&br(b, c), a, eta)).plus(&eta_pairing(&br(c, a), b, eta));
    let sixth = GaussRational::from_ratio(1, 6);
    let mut out = c_jacobiator_cyclic(a, b, c, eta);
    for (i, j, up) in eta.up_entries() {
        out[j] = out[j].minus(&n.partial(i).scale(&(&up * &sixth)));
    }
    out
}

/// `eta^{ij} d_i d_j A^k = 0` for every `k`.
pub fn is_harmonic<R: Coeff>(a: &[R], eta: &Metric) -> bool {
    a.iter().all(|f| {
        eta.up_entries().iter().fold(f.zero_like(), |acc, (i, j, c)| acc.plus(&f.partial(*i).partial(*j).scale(c))).is_zero()
    })
}

/// `eta^{ij} d_i A^k d_j B^l = 0` for every `k, l`.
pub fn is_orthogonal<R: Coeff>(a: &[R], b: &[R], eta: &Metric) -> bool {
    let entries = eta.up_entries();
    a.iter().all(|x| {
        b.iter().all(|y| {
            entries.iter().fold(x.zero_like(), |acc, (i, j, c)| acc.plus(&x.partial(*i).times(&y.partial(*j)).scale(c))).is_zero()
        })
    })
}

/// The three displayed Jacobi conditions for a pair of vector fields.
pub fn c_constraints_hold<R: Coeff>(a: &[R], b: &[R], eta: &Metric) -> bool {
    is_harmonic(a, eta) && is_harmonic(b, eta) && is_orthogonal(a, b, eta)
}

/// A fixed triple on `T^3` whose Jacobiator does not vanish:
/// `A = e^{i x1} d_1`, `B = e^{i x1} d_2`, `C = d_1`. The pair `(A, B)`
/// violates `eta^{ij} d_i A d_j B = 0`.
pub fn jacobi_witness() -> [Vec<FourierScalar>; 3] {
    let z = FourierScalar::zero(3);
    let w = FourierScalar::mode(vec![1, 0, 0]);
    [
        vec![w.clone(), z.clone(), z.clone()],
        vec![z.clone(), w, z.clone()],
        vec![FourierScalar::one(3), z.clone(), z],
    ]
}

/// A function on the doubled torus `T^{2D}` with coordinates `(x, xt)`;
/// modes are `(k, kt)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubledScalar {
    half: usize,
    f: FourierScalar,
}

impl DoubledScalar {
    /// Wraps a scalar on `T^{2D}`; its first `D` axes are `x`, the rest `xt`.
    pub fn new(half: usize, f: FourierScalar) -> Result<Self> {
        if f.dim() != 2 * half {
            return Err(AlgebraError::DimensionMismatch { expected: 2 * half, found: f.dim() });
        }
        Ok(DoubledScalar { half, f })
    }

    pub fn zero(half: usize) -> Self {
        DoubledScalar { half, f: FourierScalar::zero(2 * half) }
    }

    pub fn constant(half: usize, c: GaussRational) -> Self {
        DoubledScalar { half, f: FourierScalar::constant(2 * half, c) }
    }

    /// `c e^{i (k.x + kt.xt)}`.
    pub fn mode(k: &[i64], kt: &[i64], c: GaussRational) -> Result<Self> {
        if k.len() != kt.len() {
            return Err(AlgebraError::DimensionMismatch { expected: k.len(), found: kt.len() });
        }
        let mode = k.iter().chain(kt).copied().collect();
        Ok(DoubledScalar { half: k.len(), f: FourierScalar::monomial(mode, c) })
    }

    pub fn half_dim(&self) -> usize {
        self.half
    }

    pub fn inner(&self) -> &FourierScalar {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    fn wrap(&self, f: FourierScalar) -> Self {
        DoubledScalar { half: self.half, f }
    }

    pub fn plus(&self, o: &Self) -> Self {
        self.wrap(&self.f + &o.f)
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.wrap(&self.f - &o.f)
    }

    pub fn times(&self, o: &Self) -> Self {
        self.wrap(&self.f * &o.f)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        self.wrap(self.f.scale(c))
    }

    /// `d_i`, along `x^i`.
    pub fn partial(&self, i: usize) -> Self {
        self.wrap(self.f.try_partial(i).expect("axis in range"))
    }

    /// `dt^i`, along `xt_i`.
    pub fn partial_tilde(&self, i: usize) -> Self {
        self.wrap(self.f.try_partial(self.half + i).expect("axis in range"))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .f
            .terms()
            .iter()
            .map(|(m, c)| json!({"k": &m[..self.half], "ktilde": &m[self.half..], "coeff": c}))
            .collect();
        Value::Array(terms)
    }
}

/// `Delta_- f = 2 sum_i d_i dt^i f`; on a mode this is `-2 k.kt`.
pub fn delta_minus(f: &DoubledScalar) -> DoubledScalar {
    (0..f.half).fold(DoubledScalar::zero(f.half), |acc, i| acc.plus(&f.partial(i).partial_tilde(i))).scale(&GaussRational::from_int(2))
}

/// `sum_i d_i f dt^i g + dt^i f d_i g`.
pub fn constraint_two(f: &DoubledScalar, g: &DoubledScalar) -> DoubledScalar {
    (0..f.half).fold(DoubledScalar::zero(f.half), |acc, i| {
        acc.plus(&f.partial(i).times(&g.partial_tilde(i))).plus(&f.partial_tilde(i).times(&g.partial(i)))
    })
}

/// `(Delta_- f = 0 and Delta_- g = 0, constraint (2) holds for (f, g))`.
pub fn strong_constraint_check(f: &DoubledScalar, g: &DoubledScalar) -> (bool, bool) {
    (delta_minus(f).is_zero() && delta_minus(g).is_zero(), constraint_two(f, g).is_zero())
}

/// `g^{k lbar}`: first index along `x`, second along `xt`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bivector {
    comps: Vec<Vec<DoubledScalar>>,
}

impl Bivector {
    pub fn new(comps: Vec<Vec<DoubledScalar>>) -> Result<Self> {
        let n = comps.len();
        for row in &comps {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: row.len() });
            }
            if let Some(bad) = row.iter().find(|f| f.half != n) {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: bad.half });
            }
        }
        Ok(Bivector { comps })
    }

    pub fn zero(half: usize) -> Self {
        Bivector { comps: vec![vec![DoubledScalar::zero(half); half]; half] }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn get(&self, k: usize, l: usize) -> &DoubledScalar {
        &self.comps[k][l]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(DoubledScalar::is_zero)
    }

    fn build(n: usize, f: impl Fn(usize, usize) -> DoubledScalar) -> Self {
        Bivector { comps: (0..n).map(|k| (0..n).map(|l| f(k, l)).collect()).collect() }
    }

    pub fn plus(&self, o: &Self) -> Self {
        Self::build(self.dim(), |k, l| self.comps[k][l].plus(&o.comps[k][l]))
    }

    pub fn minus(&self, o: &Self) -> Self {
        Self::build(self.dim(), |k, l| self.comps[k][l].minus(&o.comps[k][l]))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self::build(self.dim(), |k, l| self.comps[k][l].scale(c))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.comps.iter().map(|r| Value::Array(r.iter().map(DoubledScalar::to_json).collect())).collect())
    }
}

/// `[[g,h]]^{k lbar} = g^{i jbar} d_i d_jbar h^{k lbar} + h^{i jbar} d_i d_jbar g^{k lbar}
/// - d_i g^{k jbar} d_jbar h^{i lbar} - d_i h^{k jbar} d_jbar g^{i lbar}`.
pub fn double_bracket(g: &Bivector, h: &Bivector) -> Bivector {
    let n = g.dim();
    let half = |x: &Bivector, y: &Bivector, k: usize, l: usize| {
        let mut s = DoubledScalar::zero(n);
        for i in 0..n {
            for j in 0..n {
                s = s
                    .plus(&x.comps[i][j].times(&y.comps[k][l].partial(i).partial_tilde(j)))
                    .minus(&x.comps[k][j].partial(i).times(&y.comps[i][l].partial_tilde(j)));
            }
        }
        s
    };
    Bivector::build(n, |k, l| half(g, h, k, l).plus(&half(h, g, k, l)))
}

/// A vector field on the doubled torus split by sector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubledVector {
    pub holo: Vec<DoubledScalar>,
    pub anti: Vec<DoubledScalar>,
}

/// `div_Omega g` with `log Omega = -2 phi`:
/// `(d_jbar g^{k jbar} - 2 d_jbar phi g^{k jbar}, d_i g^{i lbar} - 2 d_i phi g^{i lbar})`.
pub fn div_omega(g: &Bivector, phi: &DoubledScalar) -> DoubledVector {
    let n = g.dim();
    let two = GaussRational::from_int(2);
    let holo = (0..n)
        .map(|k| {
            (0..n).fold(DoubledScalar::zero(n), |acc, j| {
                let gk = &g.comps[k][j];
                acc.plus(&gk.partial_tilde(j)).minus(&phi.partial_tilde(j).times(gk).scale(&two))
            })
        })
        .collect();
    let anti = (0..n)
        .map(|l| {
            (0..n).fold(DoubledScalar::zero(n), |acc, i| {
                let gi = &g.comps[i][l];
                acc.plus(&gi.partial(i)).minus(&phi.partial(i).times(gi).scale(&two))
            })
        })
        .collect();
    DoubledVector { holo, anti }
}

/// `div_Omega V = d_k V^k + d_lbar V^lbar - 2 (d_k phi V^k + d_lbar phi V^lbar)`.
pub fn div_omega_vector(v: &DoubledVector, phi: &DoubledScalar) -> DoubledScalar {
    let n = v.holo.len();
    let two = GaussRational::from_int(2);
    (0..n).fold(DoubledScalar::zero(n), |acc, k| {
        acc.plus(&v.holo[k].partial(k))
            .plus(&v.anti[k].partial_tilde(k))
            .minus(&phi.partial(k).times(&v.holo[k]).scale(&two))
            .minus(&phi.partial_tilde(k).times(&v.anti[k]).scale(&two))
    })
}

/// `(L_V g)^{k lbar} = V^c d_c g^{k lbar} - d_i V^k g^{i lbar} - d_jbar V^lbar g^{k jbar}`.
pub fn lie_derivative(v: &DoubledVector, g: &Bivector) -> Bivector {
    let n = g.dim();
    Bivector::build(n, |k, l| {
        let mut s = DoubledScalar::zero(n);
        for c in 0..n {
            s = s
                .plus(&v.holo[c].times(&g.comps[k][l].partial(c)))
                .plus(&v.anti[c].times(&g.comps[k][l].partial_tilde(c)))
                .minus(&v.holo[k].partial(c).times(&g.comps[c][l]))
                .minus(&v.anti[l].partial_tilde(c).times(&g.comps[k][c]));
        }
        s
    })
}

/// `([[g,g]] + L_{div_Omega g} g, div_Omega div_Omega g)`.
pub fn bivector_mc_residual(g: &Bivector, phi: &DoubledScalar) -> (Bivector, DoubledScalar) {
    let v = div_omega(g, phi);
    (double_bracket(g, g).plus(&lie_derivative(&v, g)), div_omega_vector(&v, phi))
}

/// Random doubled scalar with modes in `[-cutoff, cutoff]^{2D}`.
pub fn random_doubled<G: Rng + ?Sized>(half: usize, cutoff: i64, rng: &mut G) -> DoubledScalar {
    DoubledScalar { half, f: random_scalar(2 * half, cutoff, rng) }
}

/// A random vector field on `T^D`.
pub fn random_vector_field<G: Rng + ?Sized>(dim: usize, cutoff: i64, rng: &mut G) -> Vec<FourierScalar> {
    (0..dim).map(|_| random_scalar(dim, cutoff, rng)).collect()
}

/// A random field whose modes are integer multiples of the null vector `n`;
/// all such fields satisfy the Jacobi constraints pairwise.
pub fn random_null_field<G: Rng + ?Sized>(null: &[i64], cutoff: i64, rng: &mut G) -> Vec<FourierScalar> {
    let dim = null.len();
    (0..dim)
        .map(|_| {
            let mut terms = Vec::new();
            for t in -cutoff..=cutoff {
                if rng.gen_bool(0.5) {
                    terms.push((null.iter().map(|x| x * t).collect(), crate::scalars::random_gauss(rng)));
                }
            }
            FourierScalar::from_terms(dim, terms).expect("consistent dimension")
        })
        .collect()
}
