//! Sections of `TM + T*M` over the torus: pairing, Dorfman bracket, anchor and divergence.

use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::scalars::{Coeff, FourierScalar};

/// A pair `(X, xi)` of a vector field and a one-form.
///
/// Component products in every operation below keep the factor coming from
/// the first argument on the left.
#[derive(Clone, PartialEq, Debug)]
pub struct GenSection<R: Coeff = FourierScalar> {
    pub vec: Vec<R>,
    pub form: Vec<R>,
}

pub type VectorField<R = FourierScalar> = Vec<R>;
pub type OneForm<R = FourierScalar> = Vec<R>;

impl<R: Coeff> GenSection<R> {
    pub fn new(vec: Vec<R>, form: Vec<R>) -> Result<Self> {
        if vec.len() != form.len() {
            return Err(AlgebraError::DimensionMismatch { expected: vec.len(), found: form.len() });
        }
        let d = vec.len();
        for c in vec.iter().chain(form.iter()) {
            if c.dim() != d {
                return Err(AlgebraError::DimensionMismatch { expected: d, found: c.dim() });
            }
        }
        Ok(Self { vec, form })
    }

    pub fn zero(shape: R::Shape) -> Self {
        let d = R::dim_of(shape);
        Self { vec: vec![R::zero(shape); d], form: vec![R::zero(shape); d] }
    }

    pub fn vector(vec: Vec<R>) -> Self {
        let form = vec.iter().map(|c| c.zero_like()).collect();
        Self { vec, form }
    }

    pub fn covector(form: Vec<R>) -> Self {
        let vec = form.iter().map(|c| c.zero_like()).collect();
        Self { vec, form }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn shape(&self) -> R::Shape {
        self.vec[0].shape()
    }

    pub fn is_zero(&self) -> bool {
        self.vec.iter().chain(self.form.iter()).all(|c| c.is_zero())
    }

    pub fn map<S: Coeff, F: Fn(&R) -> S>(&self, f: F) -> GenSection<S> {
        GenSection { vec: self.vec.iter().map(&f).collect(), form: self.form.iter().map(&f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        GenSection {
            vec: self.vec.iter().zip(&other.vec).map(|(a, b)| f(a, b)).collect(),
            form: self.form.iter().zip(&other.form).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.plus(b))
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.minus(b))
    }

    pub fn negate(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn scale(&self, c: &crate::scalars::GaussRational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn half(&self) -> Self {
        self.map(|x| x.half())
    }

    /// `u * (X, xi)`, with `u` on the left.
    pub fn left_mul(&self, u: &R) -> Self {
        self.map(|x| u.times(x))
    }

    /// `(X, xi) * u`, with `u` on the right.
    pub fn right_mul(&self, u: &R) -> Self {
        self.map(|x| x.times(u))
    }

    pub fn vector_part(&self) -> Self {
        Self::vector(self.vec.clone())
    }

    pub fn form_part(&self) -> Self {
        Self::covector(self.form.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }
}

impl GenSection<FourierScalar> {
    pub fn to_json(&self) -> Value {
        json!({
            "form": self.form.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "vec": self.vec.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(dim: usize, v: &Value) -> Result<Self> {
        let part = |key: &str| -> Result<Vec<FourierScalar>> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| AlgebraError::Config(format!("section missing {key:?}")))?;
            arr.iter().map(|c| FourierScalar::from_json(dim, c)).collect()
        };
        Self::new(part("vec")?, part("form")?)
    }
}

/// `<(X, xi), (Y, zeta)> = X^i zeta_i + xi_i Y^i`.
pub fn pairing<R: Coeff>(a: &GenSection<R>, b: &GenSection<R>) -> R {
    let mut s = a.vec[0].zero_like();
    for i in 0..a.dim() {
        s = s.plus(&a.vec[i].times(&b.form[i])).plus(&a.form[i].times(&b.vec[i]));
    }
    s
}

pub fn try_pairing<R: Coeff>(a: &GenSection<R>, b: &GenSection<R>) -> Result<R> {
    a.check(b)?;
    Ok(pairing(a, b))
}

/// Dorfman bracket `([X, Y], L_X zeta - i_Y d xi)`.
pub fn dorfman<R: Coeff>(a: &GenSection<R>, b: &GenSection<R>) -> GenSection<R> {
    let d = a.dim();
    let zero = a.vec[0].zero_like();
    let mut vec = vec![zero.clone(); d];
    let mut form = vec![zero; d];
    for j in 0..d {
        for i in 0..d {
            // X^i d_i Y^j - (d_i X^j) Y^i
            vec[j] = vec[j]
                .plus(&a.vec[i].times(&b.vec[j].partial(i)))
                .minus(&a.vec[j].partial(i).times(&b.vec[i]));
            // X^i d_i zeta_j + (d_j X^i) zeta_i - (d_i xi_j - d_j xi_i) Y^i
            let curl = a.form[j].partial(i).minus(&a.form[i].partial(j));
            form[j] = form[j]
                .plus(&a.vec[i].times(&b.form[j].partial(i)))
                .plus(&a.vec[i].partial(j).times(&b.form[i]))
                .minus(&curl.times(&b.vec[i]));
        }
    }
    GenSection { vec, form }
}

pub fn try_dorfman<R: Coeff>(a: &GenSection<R>, b: &GenSection<R>) -> Result<GenSection<R>> {
    a.check(b)?;
    Ok(dorfman(a, b))
}

/// `du` as the section `(0, du)`.
pub fn exterior_d<R: Coeff>(u: &R) -> GenSection<R> {
    GenSection::covector((0..u.dim()).map(|i| u.partial(i)).collect())
}

/// `sum_i d_i X^i`; blind to the one-form part.
pub fn divergence<R: Coeff>(a: &GenSection<R>) -> R {
    let mut s = a.vec[0].zero_like();
    for (i, x) in a.vec.iter().enumerate() {
        s = s.plus(&x.partial(i));
    }
    s
}

/// Anchor action `[A, u] = <A, du> = X^i d_i u`.
pub fn anchor<R: Coeff>(a: &GenSection<R>, u: &R) -> R {
    let mut s = u.zero_like();
    for (i, x) in a.vec.iter().enumerate() {
        s = s.plus(&x.times(&u.partial(i)));
    }
    s
}

/// `u * a`, componentwise.
pub fn module_action<R: Coeff>(u: &R, a: &GenSection<R>) -> Result<GenSection<R>> {
    if u.dim() != a.dim() {
        return Err(AlgebraError::DimensionMismatch { expected: a.dim(), found: u.dim() });
    }
    Ok(a.left_mul(u))
}

/// Left minus right of the six Courant axioms, in order.
pub fn courant_axiom_residuals<R: Coeff>(
    a1: &GenSection<R>,
    a2: &GenSection<R>,
    a3: &GenSection<R>,
    u: &R,
    u1: &R,
    u2: &R,
) -> [GenSectionOrScalar<R>; 6] {
    let du = exterior_d(u);
    // (1) [A1, u A2] = u [A1, A2] + <A1, du> A2
    let r1 = dorfman(a1, &a2.left_mul(u))
        .minus(&dorfman(a1, a2).left_mul(u))
        .minus(&a2.left_mul(&pairing(a1, &du)));
    // (2) <A1, d<A2, A3>> = <[A1, A2], A3> + <A2, [A1, A3]>
    let r2 = pairing(a1, &exterior_d(&pairing(a2, a3)))
        .minus(&pairing(&dorfman(a1, a2), a3))
        .minus(&pairing(a2, &dorfman(a1, a3)));
    // (3) [A1, A2] + [A2, A1] = d<A1, A2>
    let r3 = dorfman(a1, a2).plus(&dorfman(a2, a1)).minus(&exterior_d(&pairing(a1, a2)));
    // (4) Leibniz
    let r4 = dorfman(a1, &dorfman(a2, a3))
        .minus(&dorfman(&dorfman(a1, a2), a3))
        .minus(&dorfman(a2, &dorfman(a1, a3)));
    // (5) [du, A] = 0
    let r5 = dorfman(&du, a1);
    // (6) <du1, du2> = 0
    let r6 = pairing(&exterior_d(u1), &exterior_d(u2));
    [
        GenSectionOrScalar::Section(r1),
        GenSectionOrScalar::Scalar(r2),
        GenSectionOrScalar::Section(r3),
        GenSectionOrScalar::Section(r4),
        GenSectionOrScalar::Section(r5),
        GenSectionOrScalar::Scalar(r6),
    ]
}

/// Residuals of the three Calabi-Yau properties of `div`.
pub fn cy_axiom_residuals<R: Coeff>(u: &R, a1: &GenSection<R>, a2: &GenSection<R>) -> [R; 3] {
    let r1 = divergence(&exterior_d(u));
    let r2 = divergence(&a1.left_mul(u))
        .minus(&u.times(&divergence(a1)))
        .minus(&pairing(&exterior_d(u), a1));
    let r3 = divergence(&dorfman(a1, a2))
        .minus(&anchor(a1, &divergence(a2)))
        .plus(&anchor(a2, &divergence(a1)));
    [r1, r2, r3]
}

/// A residual that is either a section or a scalar.
#[derive(Clone, PartialEq, Debug)]
pub enum GenSectionOrScalar<R: Coeff> {
    Section(GenSection<R>),
    Scalar(R),
}

impl<R: Coeff> GenSectionOrScalar<R> {
    pub fn is_zero(&self) -> bool {
        match self {
            Self::Section(s) => s.is_zero(),
            Self::Scalar(s) => s.is_zero(),
        }
    }
}

impl GenSectionOrScalar<FourierScalar> {
    pub fn to_json(&self) -> Value {
        match self {
            Self::Section(s) => s.to_json(),
            Self::Scalar(s) => s.to_json(),
        }
    }
}

/// Random section with sparse components.
pub fn random_section<G: rand::Rng + ?Sized>(dim: usize, cutoff: i64, rng: &mut G) -> GenSection {
    GenSection {
        vec: (0..dim).map(|_| crate::scalars::random_scalar(dim, cutoff, rng)).collect(),
        form: (0..dim).map(|_| crate::scalars::random_scalar(dim, cutoff, rng)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{sample_rng, GaussRational};

    fn e(k: Vec<i64>) -> FourierScalar {
        FourierScalar::mode(k)
    }

    fn zero(d: usize) -> FourierScalar {
        FourierScalar::zero(d)
    }

    fn basis_vec(d: usize, i: usize, f: FourierScalar) -> GenSection {
        let mut v = vec![zero(d); d];
        v[i] = f;
        GenSection::vector(v)
    }

    fn basis_form(d: usize, i: usize, f: FourierScalar) -> GenSection {
        let mut v = vec![zero(d); d];
        v[i] = f;
        GenSection::covector(v)
    }

    #[test]
    fn pairing_contracts() {
        let a = basis_vec(2, 0, FourierScalar::one(2));
        let b = basis_form(2, 0, FourierScalar::one(2));
        assert_eq!(pairing(&a, &b), FourierScalar::one(2));
        let c = basis_form(2, 1, e(vec![1, 0]));
        assert!(pairing(&b, &c).is_zero());
    }

    #[test]
    fn dorfman_example() {
        // [d_1, e_{(1,0)} d_2] = i e_{(1,0)} d_2
        let a = basis_vec(2, 0, FourierScalar::one(2));
        let b = basis_vec(2, 1, e(vec![1, 0]));
        let expected = basis_vec(2, 1, FourierScalar::monomial(vec![1, 0], GaussRational::i()));
        assert_eq!(dorfman(&a, &b), expected);
    }

    #[test]
    fn forms_bracket_to_zero() {
        let mut rng = sample_rng(0, "forms", 0);
        let a = random_section(3, 2, &mut rng).form_part();
        let b = random_section(3, 2, &mut rng).form_part();
        assert!(dorfman(&a, &b).is_zero());
    }

    #[test]
    fn d_and_div_examples() {
        assert!(exterior_d(&FourierScalar::one(2)).is_zero());
        assert_eq!(
            exterior_d(&e(vec![1, 0])),
            basis_form(2, 0, FourierScalar::monomial(vec![1, 0], GaussRational::i()))
        );
        assert!(divergence(&basis_form(2, 0, e(vec![1, 1]))).is_zero());
        assert!(divergence(&basis_vec(2, 0, FourierScalar::one(2))).is_zero());
        assert_eq!(
            divergence(&basis_vec(2, 0, e(vec![1, 0]))),
            FourierScalar::monomial(vec![1, 0], GaussRational::i())
        );
    }

    #[test]
    fn module_action_examples() {
        let mut rng = sample_rng(0, "module", 0);
        let a = random_section(3, 1, &mut rng);
        assert_eq!(module_action(&FourierScalar::one(3), &a).unwrap(), a);
        assert!(module_action(&zero(3), &a).unwrap().is_zero());
        assert!(module_action(&zero(2), &a).is_err());
    }

    #[test]
    fn dorfman_from_lie_derivative_oracle() {
        // Independent route: the vector part is the Lie bracket, the form part
        // is L_X zeta - i_Y d xi with L_X zeta = i_X d zeta + d(i_X zeta).
        let mut rng = sample_rng(9, "oracle", 0);
        let a = random_section(3, 1, &mut rng);
        let b = random_section(3, 1, &mut rng);
        let d = 3;
        let dzeta = |f: &Vec<FourierScalar>, i: usize, j: usize| &f[j].partial(i) - &f[i].partial(j);
        let ix_zeta = (0..d).fold(zero(d), |s, i| &s + &(&a.vec[i] * &b.form[i]));
        let mut form = Vec::new();
        let mut vecp = Vec::new();
        for j in 0..d {
            let mut f = ix_zeta.partial(j);
            let mut v = zero(d);
            for i in 0..d {
                f = &f + &(&a.vec[i] * &dzeta(&b.form, i, j));
                f = &f - &(&b.vec[i] * &dzeta(&a.form, i, j));
                v = &v + &(&(&a.vec[i] * &b.vec[j].partial(i)) - &(&b.vec[i] * &a.vec[j].partial(i)));
            }
            form.push(f);
            vecp.push(v);
        }
        assert_eq!(dorfman(&a, &b), GenSection { vec: vecp, form });
    }

    #[test]
    fn all_axioms_on_random_samples() {
        for s in 0..5 {
            let mut rng = sample_rng(1, "axioms", s);
            let a1 = random_section(3, 2, &mut rng);
            let a2 = random_section(3, 2, &mut rng);
            let a3 = random_section(3, 2, &mut rng);
            let u = crate::scalars::random_scalar(3, 2, &mut rng);
            let u1 = crate::scalars::random_scalar(3, 2, &mut rng);
            let u2 = crate::scalars::random_scalar(3, 2, &mut rng);
            for r in courant_axiom_residuals(&a1, &a2, &a3, &u, &u1, &u2) {
                assert!(r.is_zero(), "{r:?}");
            }
            for r in cy_axiom_residuals(&u, &a1, &a2) {
                assert!(r.is_zero());
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let a = random_section(2, 1, &mut sample_rng(0, "json", 0));
        assert_eq!(GenSection::from_json(2, &a.to_json()).unwrap(), a);
    }
}
