//! Flat-metric deformation `Q -> Q + R^eta` of the BV double and the
//! Yang–Mills Maurer–Cartan equation with matrix coefficients.

mod matrix;
pub mod ym;

pub use matrix::{random_constant_matrix, random_matrix, MatrixField};

use num_rational::BigRational;

use crate::bvcomplex::{q, sign, BVElement};
use crate::bvops::{bracket, graded2, m, mu, nu, nu_sym, Operations};
use crate::error::{AlgebraError, Result};
use crate::scalars::{Coeff, GaussRational, Metric, Opp};
use crate::sections::GenSection;

/// The constant matrix `eta^{ij}` entering `R^eta`. Only symmetry is
/// required here; invertibility matters for the Yang–Mills dictionary.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatDeformation {
    dim: usize,
    entries: Vec<(usize, usize, GaussRational)>,
}

impl FlatDeformation {
    pub fn from_metric(eta: &Metric) -> Self {
        FlatDeformation { dim: eta.dim(), entries: eta.up_entries() }
    }

    pub fn from_upper(upper: &[Vec<BigRational>]) -> Result<Self> {
        let n = upper.len();
        let mut entries = Vec::new();
        for (i, row) in upper.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, c) in row.iter().enumerate() {
                if *c != upper[j][i] {
                    return Err(AlgebraError::AsymmetricMetric);
                }
                if *c != BigRational::from_integer(0.into()) {
                    entries.push((i, j, GaussRational::from_real(c.clone())));
                }
            }
        }
        Ok(FlatDeformation { dim: n, entries })
    }

    /// `eta = 0`, for which nothing is deformed.
    pub fn trivial(dim: usize) -> Self {
        FlatDeformation { dim, entries: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `sum eta^{ij} f(i, j)`.
    fn contract<R: Coeff>(&self, shape: R::Shape, f: impl Fn(usize, usize) -> BVElement<R>) -> BVElement<R> {
        self.entries.iter().fold(BVElement::zero(shape), |acc, (i, j, c)| acc.plus(&f(*i, *j).scale(c)))
    }

    /// `R^eta x = eta^{ij} mu(f_i, {f_j, x})`.
    pub fn r_eta<R: Coeff>(&self, x: &BVElement<R>) -> BVElement<R> {
        let f = flat_sections::<R>(x.shape());
        self.contract(x.shape(), |i, j| mu(&f[i], &bracket(&f[j], x)))
    }

    pub fn q_eta<R: Coeff>(&self, x: &BVElement<R>) -> BVElement<R> {
        q(x).plus(&self.r_eta(x))
    }

    /// `Delta f = eta^{ij} d_i d_j f`.
    pub fn laplacian<R: Coeff>(&self, f: &R) -> R {
        self.entries.iter().fold(f.zero_like(), |acc, (i, j, c)| acc.plus(&f.partial(*i).partial(*j).scale(c)))
    }

    /// `(d^ u)^j = eta^{ij} d_i u`, a vector field.
    pub fn hat_d<R: Coeff>(&self, u: &R) -> Vec<R> {
        let mut out = vec![u.zero_like(); self.dim];
        for (i, j, c) in &self.entries {
            out[*j] = out[*j].plus(&u.partial(*i).scale(c));
        }
        out
    }

    /// `div^ B = eta^{ij} d_i B_j`.
    pub fn hat_div<R: Coeff>(&self, form: &[R]) -> R {
        self.entries.iter().fold(form[0].zero_like(), |acc, (i, j, c)| acc.plus(&form[*j].partial(*i).scale(c)))
    }

    /// `R^eta` read off the arrow diagram: `u -> (d^u, -Delta u)`,
    /// `(A, B, v) -> (Delta A + d^v, Delta B, div^B / 2)`,
    /// `(At, Bt, vt) -> Delta vt - div^Bt / 2`.
    pub fn r_eta_diagram<R: Coeff>(&self, x: &BVElement<R>) -> BVElement<R> {
        let mut o = BVElement::zero(x.shape());
        o.a = GenSection::vector(self.hat_d(&x.u));
        o.v = self.laplacian(&x.u).negate();
        let lap_a = x.a.map(|c| self.laplacian(c));
        o.at = lap_a.plus(&GenSection::vector(self.hat_d(&x.v)));
        o.vt = self.hat_div(&x.a.form).half();
        o.ut = self.laplacian(&x.vt).minus(&self.hat_div(&x.at.form).half());
        o
    }

    /// `mu_bar(a1, a2) = eta^{ij} (nu(f_i, {f_j, a1}, a2) - mu(m(f_i, a1), {f_j, a2}))`.
    pub fn mu_bar<R: Coeff>(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        let f = flat_sections::<R>(x.shape());
        self.contract(x.shape(), |i, j| {
            nu(&f[i], &bracket(&f[j], x), y).minus(&mu(&m(&f[i], x), &bracket(&f[j], y)))
        })
    }

    /// `mu_bar` from its cell list: only `(A1, u2)`, `(A1, A2)`, `(vt1, A2)`
    /// and `(A1, vt2)` are nonzero.
    pub fn mu_bar_table<R: Coeff>(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        let shape = x.shape();
        let f = flat_sections::<R>(shape);
        let sec1 = |e: &BVElement<R>| BVElement::section1(e.a.clone());
        let (a1, a2) = (sec1(x), sec1(y));
        let (u2, vt1, vt2) = (BVElement::deg0(y.u.clone()), BVElement::scalar2(x.vt.clone()), BVElement::scalar2(y.vt.clone()));
        self.contract(shape, |i, j| {
            let a1u2 = mu(&m(&f[i], &a1), &bracket(&f[j], &u2)).negate();
            let a1a2 = mu(&m(&f[i], &a1), &bracket(&f[j], &a2))
                .negate()
                .minus(&mu(&m(&bracket(&f[j], &a1), &a2), &f[i]))
                .plus(&mu(&m(&f[i], &a2), &bracket(&f[j], &a1)));
            let vt1a2 = mu(&m(&f[i], &a2), &bracket(&f[j], &vt1)).negate();
            let a1vt2 = mu(&m(&f[i], &a1), &bracket(&f[j], &vt2)).negate();
            a1u2.plus(&a1a2).plus(&vt1a2).plus(&a1vt2)
        })
    }

    pub fn mu_eta<R: Coeff>(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        mu(x, y).plus(&self.mu_bar(x, y))
    }

    /// `(mu_eta(x, y) + (-1)^{|x||y|} mu_eta(y, x)) / 2`, matrix factors in argument order.
    pub fn mu_eta_sym<R: Coeff>(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        let wrap = |e: &BVElement<R>| e.map(|c| Opp(c.clone()));
        graded2(x, y, |dx, x, dy, y| {
            let swapped = self.mu_eta(&wrap(y), &wrap(x)).map(|c| c.0.clone());
            self.mu_eta(x, y).plus(&swapped.scale_int(sign(dx * dy))).half()
        })
    }

    /// `R^eta R^eta x`.
    pub fn r_squared<R: Coeff>(&self, x: &BVElement<R>) -> BVElement<R> {
        self.r_eta(&self.r_eta(x))
    }

    /// `Q R^eta x + R^eta Q x`.
    pub fn q_r_anticommutator<R: Coeff>(&self, x: &BVElement<R>) -> BVElement<R> {
        q(&self.r_eta(x)).plus(&self.r_eta(&q(x)))
    }

    /// `[R, mu] + [Q, mu_bar]`, graded.
    pub fn mu_bar_transgression<R: Coeff>(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        graded2(x, y, |dx, x, _, y| {
            let s = sign(dx);
            let r_part = self.r_eta(&mu(x, y)).minus(&mu(&self.r_eta(x), y)).minus(&mu(x, &self.r_eta(y)).scale_int(s));
            let q_part = q(&self.mu_bar(x, y)).minus(&self.mu_bar(&q(x), y)).minus(&self.mu_bar(x, &q(y)).scale_int(s));
            r_part.plus(&q_part)
        })
    }

    /// `R mu_bar(a1, a2) - mu_bar(R a1, a2) - (-1)^{|a1|} mu_bar(a1, R a2)`.
    pub fn r_mu_bar_derivation<R: Coeff>(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        graded2(x, y, |dx, x, _, y| {
            self.r_eta(&self.mu_bar(x, y))
                .minus(&self.mu_bar(&self.r_eta(x), y))
                .minus(&self.mu_bar(x, &self.r_eta(y)).scale_int(sign(dx)))
        })
    }

    /// `mu_bar(a1,a2) - (-1)^{|a1||a2|} mu_bar(a2,a1) - (R m + m(R.,.) + (-1)^{|a1|} m(.,R.))`.
    pub fn mu_bar_commutativity<R: Coeff>(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        graded2(x, y, |dx, x, dy, y| {
            self.mu_bar(x, y)
                .minus(&self.mu_bar(y, x).scale_int(sign(dx * dy)))
                .minus(&self.r_eta(&m(x, y)))
                .minus(&m(&self.r_eta(x), y))
                .minus(&m(x, &self.r_eta(y)).scale_int(sign(dx)))
        })
    }

    /// The deformed bracket `{a1, a2}^eta`, built from `mu_eta` as in the undeformed case.
    pub fn bracket_eta<R: Coeff>(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        Operations::bracket(self, x, y)
    }
}

/// The six embeddings of the Yang–Mills subcomplexes `G_1, G_2, G_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    F1,
    G1,
    F2,
    G2,
    F3,
    G3,
}

impl Embedding {
    pub const ALL: [Embedding; 6] = [Embedding::F1, Embedding::G1, Embedding::F2, Embedding::G2, Embedding::F3, Embedding::G3];

    pub fn name(self) -> &'static str {
        match self {
            Embedding::F1 => "f1",
            Embedding::G1 => "g1",
            Embedding::F2 => "f2",
            Embedding::G2 => "g2",
            Embedding::F3 => "f3",
            Embedding::G3 => "g3",
        }
    }

    fn takes_scalar(self) -> bool {
        matches!(self, Embedding::F3 | Embedding::G3)
    }
}

/// Argument of an embedding: a one-form for `f1, g1, f2, g2`, a scalar for `f3, g3`.
#[derive(Clone, Debug, PartialEq)]
pub enum EmbedArg<R: Coeff> {
    OneForm(Vec<R>),
    Scalar(R),
}

impl FlatDeformation {
    /// `B* ^i = eta^{ij} B_j`.
    pub fn raise<R: Coeff>(&self, form: &[R]) -> Vec<R> {
        let mut out = vec![form[0].zero_like(); self.dim];
        for (i, j, c) in &self.entries {
            out[*i] = out[*i].plus(&form[*j].scale(c));
        }
        out
    }

    /// `f1(B) = (B*, B, -div^ B)`, `g1(Bt) = (Bt*, Bt)`, `f2(B) = (-B*, B)`,
    /// `g2(Bt) = (-Bt*, Bt)`, `f3(v) = v`, `g3(vt) = (d^ vt, d vt, vt)`.
    pub fn ym_embed<R: Coeff>(&self, kind: Embedding, arg: &EmbedArg<R>) -> Result<BVElement<R>> {
        match (kind.takes_scalar(), arg) {
            (false, EmbedArg::OneForm(b)) => {
                if b.len() != self.dim {
                    return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: b.len() });
                }
                let up = self.raise(b);
                let neg: Vec<R> = up.iter().map(Coeff::negate).collect();
                Ok(match kind {
                    Embedding::F1 => BVElement::deg1(GenSection { vec: up, form: b.clone() }, self.hat_div(b).negate()),
                    Embedding::G1 => BVElement::section2(GenSection { vec: up, form: b.clone() }),
                    Embedding::F2 => BVElement::section1(GenSection { vec: neg, form: b.clone() }),
                    _ => BVElement::section2(GenSection { vec: neg, form: b.clone() }),
                })
            }
            (true, EmbedArg::Scalar(v)) => Ok(match kind {
                Embedding::F3 => BVElement::scalar1(v.clone()),
                _ => {
                    let form = (0..R::dim_of(v.shape())).map(|i| v.partial(i)).collect();
                    BVElement::deg2(GenSection { vec: self.hat_d(v), form }, v.clone())
                }
            }),
            _ => Err(AlgebraError::SlotMismatch(format!("{} does not take this argument", kind.name()))),
        }
    }

    /// `(delta F)_k = eta^{ij} d_i (d_j B_k - d_k B_j)`.
    pub fn maxwell<R: Coeff>(&self, b: &[R]) -> Vec<R> {
        (0..self.dim)
            .map(|k| {
                self.entries.iter().fold(b[0].zero_like(), |acc, (i, j, c)| {
                    acc.plus(&b[k].partial(*j).minus(&b[*j].partial(k)).partial(*i).scale(c))
                })
            })
            .collect()
    }

    /// `Q^eta` of an embedded element minus the embedding of the subcomplex
    /// differential: `delta F` into `g1`, `Delta` into `g2`, the identity into
    /// `g3`, `-div^` into the top slot, and zero after `g2`, `g3`.
    pub fn intertwining_residual<R: Coeff>(&self, kind: Embedding, arg: &EmbedArg<R>) -> Result<BVElement<R>> {
        let lhs = self.q_eta(&self.ym_embed(kind, arg)?);
        let rhs = match (kind, arg) {
            (Embedding::F1, EmbedArg::OneForm(b)) => self.ym_embed(Embedding::G1, &EmbedArg::OneForm(self.maxwell(b)))?,
            (Embedding::G1, EmbedArg::OneForm(b)) => BVElement::deg3(self.hat_div(b).negate()),
            (Embedding::F2, EmbedArg::OneForm(b)) => {
                let lap = b.iter().map(|x| self.laplacian(x)).collect();
                self.ym_embed(Embedding::G2, &EmbedArg::OneForm(lap))?
            }
            (Embedding::F3, EmbedArg::Scalar(v)) => self.ym_embed(Embedding::G3, &EmbedArg::Scalar(v.clone()))?,
            _ => BVElement::zero(lhs.shape()),
        };
        Ok(lhs.minus(&rhs))
    }

    /// `Q^eta u - f1(du)`: the gauge direction of `G_1`.
    pub fn ghost_intertwining_residual<R: Coeff>(&self, u: &R) -> Result<BVElement<R>> {
        let du = (0..R::dim_of(u.shape())).map(|i| u.partial(i)).collect();
        Ok(self.q_eta(&BVElement::deg0(u.clone())).minus(&self.ym_embed(Embedding::F1, &EmbedArg::OneForm(du))?))
    }
}

/// `f_i`: degree one, vector part `d_i`, everything else zero.
pub fn flat_section<R: Coeff>(shape: R::Shape, i: usize) -> BVElement<R> {
    let mut vec = vec![R::zero(shape); R::dim_of(shape)];
    vec[i] = R::one(shape);
    BVElement::section1(GenSection::vector(vec))
}

pub fn flat_sections<R: Coeff>(shape: R::Shape) -> Vec<BVElement<R>> {
    (0..R::dim_of(shape)).map(|i| flat_section(shape, i)).collect()
}

impl<R: Coeff> Operations<R> for FlatDeformation {
    fn q(&self, x: &BVElement<R>) -> BVElement<R> {
        self.q_eta(x)
    }
    fn mu(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        self.mu_eta(x, y)
    }
    fn nu(&self, x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R> {
        nu(x, y, z)
    }
}

/// `(Q^eta, mu_eta_sym, nu_sym)`.
#[derive(Clone, Copy, Debug)]
pub struct SymmetrizedDeformation<'a>(pub &'a FlatDeformation);

impl<R: Coeff> Operations<R> for SymmetrizedDeformation<'_> {
    fn q(&self, x: &BVElement<R>) -> BVElement<R> {
        self.0.q_eta(x)
    }
    fn mu(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        self.0.mu_eta_sym(x, y)
    }
    fn nu(&self, x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R> {
        nu_sym(x, y, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvcomplex::random_element;
    use crate::bvops::{
        homotopy_associativity_residual, homotopy_commutativity_residual, pentagon_residual, q_derivation_residual,
        relation_residual_with, shuffle_residual, Relation,
    };
    use crate::scalars::{random_scalar, sample_rng, FourierScalar};

    fn def() -> FlatDeformation {
        FlatDeformation::from_metric(&Metric::lorentzian(3))
    }

    fn sample(tag: &str, s: u64, degs: &[usize]) -> Vec<BVElement> {
        let mut rng = sample_rng(5, tag, s);
        degs.iter().map(|&d| random_element(3, 1, d, &mut rng)).collect()
    }

    fn degree_tuples(arity: usize) -> Vec<Vec<usize>> {
        (0..4usize.pow(arity as u32)).map(|c| (0..arity).map(|i| (c >> (2 * i)) & 3).collect()).collect()
    }

    #[test]
    fn flat_sections_are_inert() {
        let f = flat_sections::<FourierScalar>(3);
        for x in &f {
            assert!(q(x).is_zero());
            for y in &f {
                assert!(mu(x, y).is_zero());
                assert!(bracket(x, y).is_zero());
            }
        }
    }

    #[test]
    fn r_eta_on_a_function() {
        let d = def();
        let mut rng = sample_rng(5, "r-u", 0);
        let u = random_scalar(3, 2, &mut rng);
        let r = d.r_eta(&BVElement::deg0(u.clone()));
        assert_eq!(r.a.vec, d.hat_d(&u));
        assert!(r.a.form.iter().all(FourierScalar::is_zero));
        assert_eq!(r.v, d.laplacian(&u).neg());
        // hat_d raises with eta: the last axis flips sign
        assert_eq!(r.a.vec[2], u.partial(2).neg());
        assert!(d.r_eta(&BVElement::deg3(u)).is_zero());
    }

    #[test]
    fn r_eta_squares_to_zero_and_commutes_with_q() {
        let d = def();
        for s in 0..6 {
            let x = sample("r2", s, &[s as usize % 4])[0].clone();
            assert!(d.r_squared(&x).is_zero());
            assert!(d.q_r_anticommutator(&x).is_zero());
            assert!(q(&d.q_eta(&d.q_eta(&x))).is_zero());
            assert!(d.q_eta(&d.q_eta(&x)).is_zero());
        }
    }

    #[test]
    fn r_eta_matches_the_diagram() {
        let d = def();
        for s in 0..4 {
            for deg in 0..4 {
                let x = sample("diag", s, &[deg])[0].clone();
                assert_eq!(d.r_eta(&x), d.r_eta_diagram(&x), "degree {deg}");
            }
        }
    }

    #[test]
    fn trivial_metric_changes_nothing() {
        let d = FlatDeformation::trivial(3);
        for deg in 0..4 {
            let x = sample("triv", 0, &[deg, 1]);
            assert_eq!(d.q_eta(&x[0]), q(&x[0]));
            assert_eq!(d.mu_eta(&x[0], &x[1]), mu(&x[0], &x[1]));
        }
        let zero = vec![vec![BigRational::from_integer(0.into()); 3]; 3];
        assert_eq!(FlatDeformation::from_upper(&zero).unwrap(), d);
    }

    #[test]
    fn asymmetric_upper_is_rejected() {
        let mut m = vec![vec![BigRational::from_integer(0.into()); 2]; 2];
        m[0][1] = BigRational::from_integer(1.into());
        assert_eq!(FlatDeformation::from_upper(&m), Err(AlgebraError::AsymmetricMetric));
    }

    #[test]
    fn mu_bar_matches_table() {
        let d = def();
        for t in degree_tuples(2) {
            for s in 0..2 {
                let x = sample("table", s, &t);
                assert_eq!(d.mu_bar(&x[0], &x[1]), d.mu_bar_table(&x[0], &x[1]), "{t:?}");
            }
        }
        let u = sample("table-u", 0, &[0, 0]);
        assert!(d.mu_bar(&u[0], &u[1]).is_zero());
    }

    #[test]
    fn mu_bar_kills_constant_sections() {
        let d = def();
        let one = FourierScalar::one(3);
        let a = BVElement::section1(GenSection::covector(vec![one.clone(), FourierScalar::zero(3), one.clone()]));
        let b = BVElement::section1(GenSection::vector(vec![FourierScalar::zero(3), one.clone(), one]));
        assert!(d.mu_bar(&a, &b).is_zero());
    }

    #[test]
    fn deformation_identities() {
        let d = def();
        for t in degree_tuples(2) {
            let x = sample("ident", 0, &t);
            assert!(d.mu_bar_transgression(&x[0], &x[1]).is_zero(), "{t:?}");
            assert!(d.r_mu_bar_derivation(&x[0], &x[1]).is_zero(), "{t:?}");
            assert!(d.mu_bar_commutativity(&x[0], &x[1]).is_zero(), "{t:?}");
        }
    }

    #[test]
    fn deformed_a_infinity() {
        let d = def();
        let sym = SymmetrizedDeformation(&d);
        for t in degree_tuples(2) {
            let x = sample("ainf2", 0, &t);
            assert!(q_derivation_residual(&d, &x[0], &x[1]).is_zero(), "{t:?}");
            assert!(homotopy_commutativity_residual(&d, &x[0], &x[1]).is_zero(), "{t:?}");
            assert!(q_derivation_residual(&sym, &x[0], &x[1]).is_zero(), "{t:?}");
        }
        for t in degree_tuples(3) {
            if t.iter().sum::<usize>() > 4 {
                continue;
            }
            let x = sample("ainf3", 0, &t);
            assert!(homotopy_associativity_residual(&d, &x[0], &x[1], &x[2]).is_zero(), "{t:?}");
            assert!(homotopy_associativity_residual(&sym, &x[0], &x[1], &x[2]).is_zero(), "{t:?}");
            assert!(shuffle_residual(&sym, &x[0], &x[1], &x[2]).is_zero(), "{t:?}");
        }
        for s in 0..3 {
            let x = sample("pent", s, &[1, 1, 1, 0]);
            assert!(pentagon_residual(&d, [&x[0], &x[1], &x[2], &x[3]]).is_zero());
            assert!(pentagon_residual(&sym, [&x[3], &x[0], &x[1], &x[2]]).is_zero());
        }
    }

    #[test]
    fn deformed_bracket_breaks_some_relation() {
        let d = def();
        let witness = Relation::ALL.iter().any(|&rel| {
            (0..3).any(|s| {
                let x = sample("witness", s, &vec![1; rel.arity()]);
                !relation_residual_with(&d, rel, &x).unwrap().is_zero()
            })
        });
        assert!(witness);
        let x = sample("witness", 0, &[1, 1]);
        assert_ne!(d.bracket_eta(&x[0], &x[1]), bracket(&x[0], &x[1]));
    }

    #[test]
    fn embeddings() {
        let d = def();
        let one = FourierScalar::one(3);
        let z = FourierScalar::zero(3);
        let dx1 = vec![one.clone(), z.clone(), z.clone()];
        let f1 = d.ym_embed(Embedding::F1, &EmbedArg::OneForm(dx1.clone())).unwrap();
        assert_eq!(f1.a.vec, dx1);
        assert_eq!(f1.a.form, dx1);
        assert!(f1.v.is_zero());
        let dx3 = vec![z.clone(), z.clone(), one.clone()];
        let f1 = d.ym_embed(Embedding::F1, &EmbedArg::OneForm(dx3.clone())).unwrap();
        assert_eq!(f1.a.vec[2], one.neg());
        let g3 = d.ym_embed(Embedding::G3, &EmbedArg::Scalar(one.clone())).unwrap();
        assert_eq!(g3, BVElement::scalar2(one.clone()));
        assert!(d.ym_embed(Embedding::F3, &EmbedArg::OneForm(dx1)).is_err());
        assert!(d.ym_embed(Embedding::F1, &EmbedArg::Scalar(one)).is_err());
    }

    #[test]
    fn embeddings_intertwine() {
        let d = def();
        let mut rng = sample_rng(5, "intertwine", 0);
        for _ in 0..3 {
            let b: Vec<FourierScalar> = (0..3).map(|_| random_scalar(3, 2, &mut rng)).collect();
            let v = random_scalar(3, 2, &mut rng);
            for kind in Embedding::ALL {
                let arg = if matches!(kind, Embedding::F3 | Embedding::G3) {
                    EmbedArg::Scalar(v.clone())
                } else {
                    EmbedArg::OneForm(b.clone())
                };
                assert!(d.intertwining_residual(kind, &arg).unwrap().is_zero(), "{}", kind.name());
            }
            assert!(d.ghost_intertwining_residual(&v).unwrap().is_zero());
        }
    }
}
