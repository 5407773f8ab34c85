//! Maurer–Cartan elements with matrix coefficients and the `(A, Phi)`
//! form of the generalized Yang–Mills equations.

use rand::Rng;
use serde::Serialize;

use super::matrix::{random_matrix, MatrixField};
use super::{FlatDeformation, SymmetrizedDeformation};
use crate::bvcomplex::BVElement;
use crate::bvops::{nu_sym, Operations};
use crate::error::{AlgebraError, Result};
use crate::scalars::{Coeff, FourierScalar, GaussRational, Metric};
use crate::sections::GenSection;

/// Lie-algebra valued element of the complex.
pub type LieElement = BVElement<MatrixField>;

/// `(Curly A)_i = s (B_i + eta_{ij} A^j)`, `Phi_i = s (B_i - eta_{ij} A^j)` with `s = 1/2`.
pub const DICTIONARY_SCALE: (i64, i64) = (1, 2);

fn require_degree<R: Coeff>(x: &BVElement<R>, d: usize) -> Result<()> {
    match x.homogeneous_degree() {
        Some(k) if k == d => Ok(()),
        None if x.is_zero() => Ok(()),
        other => Err(AlgebraError::WrongDegree {
            expected: d.to_string(),
            found: other.map_or("mixed".into(), |k| k.to_string()),
        }),
    }
}

/// `Q^eta Psi + mu^eta(Psi, Psi) + nu(Psi, Psi, Psi)` with the symmetrized
/// (C-infinity) operations tensored with matrices.
pub fn mc_residual<R: Coeff>(def: &FlatDeformation, psi: &BVElement<R>) -> Result<BVElement<R>> {
    require_degree(psi, 1)?;
    let ops = SymmetrizedDeformation(def);
    Ok(ops.q(psi).plus(&ops.mu(psi, psi)).plus(&nu_sym(psi, psi, psi)))
}

/// `Psi -> Psi + Q^eta u + mu^eta(Psi, u) - mu^eta(u, Psi)`: the variation.
pub fn gauge_variation<R: Coeff>(def: &FlatDeformation, psi: &BVElement<R>, u: &BVElement<R>) -> Result<BVElement<R>> {
    require_degree(psi, 1)?;
    require_degree(u, 0)?;
    let ops = SymmetrizedDeformation(def);
    Ok(ops.q(u).plus(&ops.mu(psi, u)).minus(&ops.mu(u, psi)))
}

/// Gauge field and scalar one-forms read off a degree-one element.
pub fn dictionary<R: Coeff>(psi: &BVElement<R>, eta: &Metric) -> (Vec<R>, Vec<R>) {
    let s = GaussRational::from_ratio(DICTIONARY_SCALE.0, DICTIONARY_SCALE.1);
    let low = eta.lower(&psi.a.vec);
    let gauge = psi.a.form.iter().zip(&low).map(|(b, a)| b.plus(a).scale(&s)).collect();
    let scalar = psi.a.form.iter().zip(&low).map(|(b, a)| b.minus(a).scale(&s)).collect();
    (gauge, scalar)
}

/// The two `eta`-combinations of the section slot of a degree-two element:
/// `Bt + eta At` and `Bt - eta At`, matched to the gauge and scalar equations.
pub fn split_section<R: Coeff>(x: &GenSection<R>, eta: &Metric) -> (Vec<R>, Vec<R>) {
    let low = eta.lower(&x.vec);
    let plus = x.form.iter().zip(&low).map(|(b, a)| b.plus(a)).collect();
    let minus = x.form.iter().zip(&low).map(|(b, a)| b.minus(a)).collect();
    (plus, minus)
}

/// Left minus right of both field equations, componentwise in `k`:
/// `eta^{ij}[D_i,[D_j,D_k]] - eta^{ij}[[D_k,Phi_i],Phi_j]` and
/// `eta^{ij}[D_i,[D_j,Phi_k]] - eta^{ij}[Phi_i,[Phi_j,Phi_k]]`, `D_i = d_i + A_i`.
pub fn ym_field_residual<R: Coeff>(gauge: &[R], scalar: &[R], eta: &Metric) -> (Vec<R>, Vec<R>) {
    let n = gauge.len();
    let comm = |x: &R, y: &R| x.times(y).minus(&y.times(x));
    let cov = |i: usize, x: &R| x.partial(i).plus(&comm(&gauge[i], x));
    let curv = |j: usize, k: usize| gauge[k].partial(j).minus(&gauge[j].partial(k)).plus(&comm(&gauge[j], &gauge[k]));
    let entries = eta.up_entries();
    let zero = gauge[0].zero_like();
    let mut e1 = vec![zero.clone(); n];
    let mut e2 = vec![zero; n];
    for k in 0..n {
        for (i, j, c) in &entries {
            let t1 = cov(*i, &curv(*j, k)).minus(&comm(&cov(k, &scalar[*i]), &scalar[*j]));
            let t2 = cov(*i, &cov(*j, &scalar[k])).minus(&comm(&scalar[*i], &comm(&scalar[*j], &scalar[k])));
            e1[k] = e1[k].plus(&t1.scale(c));
            e2[k] = e2[k].plus(&t2.scale(c));
        }
    }
    (e1, e2)
}

/// Fixes the auxiliary `v` slot of `psi` so the `vt` part of the residual vanishes.
///
/// `v` enters `vt` only through `Q~ v = v`; its other contributions land in the
/// section slot, so a second evaluation is exact.
pub fn solve_auxiliary<R: Coeff>(def: &FlatDeformation, psi: &BVElement<R>) -> Result<BVElement<R>> {
    let mut p = psi.clone();
    p.v = R::zero(psi.shape());
    let r0 = mc_residual(def, &p)?;
    p.v = r0.vt.negate();
    Ok(p)
}

/// Per-slot constants `mc = c * ym` for the gauge (`plus`) and scalar (`minus`) equations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Calibration {
    pub plus: GaussRational,
    pub minus: GaussRational,
}

/// Outcome of comparing one sample.
#[derive(Clone, Debug)]
pub struct Comparison<R: Coeff> {
    pub mc_plus: Vec<R>,
    pub mc_minus: Vec<R>,
    pub ym_gauge: Vec<R>,
    pub ym_scalar: Vec<R>,
    pub vt_residual: R,
}

impl<R: Coeff> Comparison<R> {
    pub fn matches(&self, cal: &Calibration) -> bool {
        let eq = |mc: &[R], ym: &[R], c: &GaussRational| mc.iter().zip(ym).all(|(a, b)| a.minus(&b.scale(c)).is_zero());
        self.vt_residual.is_zero()
            && eq(&self.mc_plus, &self.ym_gauge, &cal.plus)
            && eq(&self.mc_minus, &self.ym_scalar, &cal.minus)
    }
}

/// Evaluates both sides for `psi` after solving for the auxiliary scalar.
pub fn mc_vs_ym_compare<R: Coeff>(def: &FlatDeformation, eta: &Metric, psi: &BVElement<R>) -> Result<Comparison<R>> {
    let p = solve_auxiliary(def, psi)?;
    let r = mc_residual(def, &p)?;
    let (mc_plus, mc_minus) = split_section(&r.at, eta);
    let (gauge, scalar) = dictionary(&p, eta);
    let (ym_gauge, ym_scalar) = ym_field_residual(&gauge, &scalar, eta);
    Ok(Comparison { mc_plus, mc_minus, ym_gauge, ym_scalar, vt_residual: r.vt })
}

/// Ratio `a / b` at the first component where `b` has a nonzero coefficient,
/// or `None` if `b` vanishes identically.
fn ratio(a: &[FourierScalar], b: &[FourierScalar]) -> Option<GaussRational> {
    for (x, y) in a.iter().zip(b) {
        if let Some((mode, c)) = y.terms().iter().next() {
            return c.inv().map(|ci| &x.coeff(mode) * &ci);
        }
    }
    None
}

fn abelian(c: &Comparison<MatrixField>) -> Comparison<FourierScalar> {
    let first = |v: &[MatrixField]| v.iter().map(|m| m.entry(0, 0).clone()).collect::<Vec<_>>();
    Comparison {
        mc_plus: first(&c.mc_plus),
        mc_minus: first(&c.mc_minus),
        ym_gauge: first(&c.ym_gauge),
        ym_scalar: first(&c.ym_scalar),
        vt_residual: c.vt_residual.entry(0, 0).clone(),
    }
}

/// Fits one constant per slot on rank-one samples and checks that it explains
/// every sample it was fitted on.
pub fn calibrate(def: &FlatDeformation, eta: &Metric, samples: &[LieElement]) -> Result<Calibration> {
    let mut plus = None;
    let mut minus = None;
    let mut comps = Vec::new();
    for psi in samples {
        if psi.shape().1 != 1 {
            return Err(AlgebraError::Config("calibration needs rank-one samples".into()));
        }
        let c = abelian(&mc_vs_ym_compare(def, eta, psi)?);
        plus = plus.or_else(|| ratio(&c.mc_plus, &c.ym_gauge));
        minus = minus.or_else(|| ratio(&c.mc_minus, &c.ym_scalar));
        comps.push(c);
    }
    let fail = || AlgebraError::Config("calibration samples are degenerate".into());
    let cal = Calibration { plus: plus.ok_or_else(fail)?, minus: minus.ok_or_else(fail)? };
    if comps.iter().all(|c| c.matches(&cal)) {
        Ok(cal)
    } else {
        Err(AlgebraError::Config("no single constant per slot fits the abelian samples".into()))
    }
}

/// The variation of `(Curly A, Phi)` predicted by the field theory:
/// `d_i u + [A_i, u]` and `[Phi_i, u]`.
pub fn field_gauge_variation<R: Coeff>(gauge: &[R], scalar: &[R], u: &R) -> (Vec<R>, Vec<R>) {
    let comm = |x: &R, y: &R| x.times(y).minus(&y.times(x));
    let da = gauge.iter().enumerate().map(|(i, a)| u.partial(i).plus(&comm(a, u))).collect();
    let dp = scalar.iter().map(|p| comm(p, u)).collect();
    (da, dp)
}

/// Difference between the transported variation and the field-theory one.
pub fn gauge_transport_residual<R: Coeff>(
    def: &FlatDeformation,
    eta: &Metric,
    psi: &BVElement<R>,
    u: &R,
) -> Result<(Vec<R>, Vec<R>)> {
    let delta = gauge_variation(def, psi, &BVElement::deg0(u.clone()))?;
    let (dg, ds) = dictionary(&delta, eta);
    let (gauge, scalar) = dictionary(psi, eta);
    let (eg, es) = field_gauge_variation(&gauge, &scalar, u);
    let diff = |a: Vec<R>, b: Vec<R>| a.iter().zip(&b).map(|(x, y)| x.minus(y)).collect();
    Ok((diff(dg, eg), diff(ds, es)))
}

/// Random degree-one Lie-valued element with zero auxiliary scalar.
pub fn random_psi<G: Rng + ?Sized>(dim: usize, rank: usize, cutoff: i64, rng: &mut G) -> LieElement {
    let vec = (0..dim).map(|_| random_matrix(dim, rank, cutoff, rng)).collect();
    let form = (0..dim).map(|_| random_matrix(dim, rank, cutoff, rng)).collect();
    BVElement::section1(GenSection { vec, form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::sample_rng;

    fn setup() -> (Metric, FlatDeformation) {
        let eta = Metric::lorentzian(3);
        let def = FlatDeformation::from_metric(&eta);
        (eta, def)
    }

    fn mf(f: FourierScalar, rank: usize) -> MatrixField {
        MatrixField::from_scalar((f.dim(), rank), &f)
    }

    fn abelian_samples(n: u64) -> Vec<LieElement> {
        (0..n).map(|s| random_psi(3, 1, 1, &mut sample_rng(9, "ym-cal", s))).collect()
    }

    #[test]
    fn zero_field() {
        let (eta, def) = setup();
        let psi = LieElement::zero((3, 2));
        assert!(mc_residual(&def, &psi).unwrap().is_zero());
        let c = mc_vs_ym_compare(&def, &eta, &psi).unwrap();
        assert!(c.matches(&Calibration { plus: GaussRational::one(), minus: GaussRational::one() }));
    }

    #[test]
    fn wrong_degree() {
        let (_, def) = setup();
        let u = LieElement::deg0(MatrixField::one((3, 2)));
        assert!(matches!(mc_residual(&def, &u), Err(AlgebraError::WrongDegree { .. })));
        let psi = random_psi(3, 2, 1, &mut sample_rng(9, "deg", 0));
        assert!(gauge_variation(&def, &psi, &psi).is_err());
    }

    #[test]
    fn abelian_plane_wave() {
        // null k = (1, 0, 1), B = e^{ikx} dx^2 transverse
        let (_, def) = setup();
        let z = MatrixField::zero((3, 1));
        let b = vec![z.clone(), mf(FourierScalar::mode(vec![1, 0, 1]), 1), z];
        let psi = def.ym_embed(super::super::Embedding::F1, &super::super::EmbedArg::OneForm(b)).unwrap();
        assert!(mc_residual(&def, &solve_auxiliary(&def, &psi).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn pure_gauge_is_flat_to_first_order() {
        let (_, def) = setup();
        let u = LieElement::deg0(random_matrix(3, 2, 1, &mut sample_rng(9, "pure", 0)));
        let psi = def.q_eta(&u);
        // the linear part of the residual is Q^eta Psi
        assert!(def.q_eta(&psi).is_zero());
    }

    #[test]
    fn abelian_field_residual_is_maxwell() {
        let (eta, def) = setup();
        let mut rng = sample_rng(9, "maxwell", 0);
        let a: Vec<FourierScalar> = (0..3).map(|_| crate::scalars::random_scalar(3, 2, &mut rng)).collect();
        let zero = vec![FourierScalar::zero(3); 3];
        let (e1, e2) = ym_field_residual(&a, &zero, &eta);
        assert_eq!(e1, def.maxwell(&a));
        assert!(e2.iter().all(FourierScalar::is_zero));
    }

    #[test]
    fn constant_commuting_fields() {
        let (eta, _) = setup();
        let c = |n: i64| mf(FourierScalar::constant(3, GaussRational::from_int(n)), 2);
        let (e1, e2) = ym_field_residual(&[c(1), c(2), c(3)], &[c(4), c(5), c(6)], &eta);
        assert!(e1.iter().chain(&e2).all(Coeff::is_zero));
    }

    #[test]
    fn calibration_constants() {
        let (eta, def) = setup();
        let cal = calibrate(&def, &eta, &abelian_samples(4)).unwrap();
        assert_eq!(cal, Calibration { plus: GaussRational::from_int(2), minus: GaussRational::from_int(2) });
        let rank2 = vec![random_psi(3, 2, 1, &mut sample_rng(9, "x", 0))];
        assert!(calibrate(&def, &eta, &rank2).is_err());
    }

    #[test]
    fn non_abelian_match() {
        let (eta, def) = setup();
        let cal = calibrate(&def, &eta, &abelian_samples(4)).unwrap();
        for s in 0..2 {
            let psi = random_psi(3, 2, 1, &mut sample_rng(9, "ym-nonab", s));
            let c = mc_vs_ym_compare(&def, &eta, &psi).unwrap();
            assert!(c.matches(&cal));
            assert!(c.ym_gauge.iter().any(|m| !m.is_zero()));
        }
    }

    #[test]
    fn gauge_transport() {
        let (eta, def) = setup();
        let mut rng = sample_rng(9, "gauge", 0);
        for _ in 0..2 {
            let psi = random_psi(3, 2, 1, &mut rng);
            let u = random_matrix(3, 2, 1, &mut rng);
            let (dg, ds) = gauge_transport_residual(&def, &eta, &psi, &u).unwrap();
            assert!(dg.iter().chain(&ds).all(Coeff::is_zero));
        }
        let psi = random_psi(3, 2, 1, &mut rng);
        let zero = MatrixField::zero((3, 2));
        assert!(gauge_variation(&def, &psi, &LieElement::deg0(zero)).unwrap().is_zero());
    }

    #[test]
    fn central_gauge_parameter() {
        let (eta, def) = setup();
        let mut rng = sample_rng(9, "central", 0);
        let psi = random_psi(3, 2, 1, &mut rng);
        let f = crate::scalars::random_scalar(3, 1, &mut rng);
        let u = mf(f.clone(), 2);
        let delta = gauge_variation(&def, &psi, &LieElement::deg0(u)).unwrap();
        let (dg, ds) = dictionary(&delta, &eta);
        assert!(ds.iter().all(Coeff::is_zero));
        for (i, g) in dg.iter().enumerate() {
            assert_eq!(g, &mf(f.partial(i), 2));
        }
    }
}
