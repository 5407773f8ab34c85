//! Differential forms on `T^D` with constant-metric Hodge star, and the
//! Yang–Mills complex `Omega^0 -> Omega^1 -> Omega^{D-1} -> Omega^D`
//! with its explicit C-infinity operations.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bvcomplex::{sign, BVElement};
use crate::bvops::Operations;
use crate::deform::{FlatDeformation, SymmetrizedDeformation};
use crate::error::{AlgebraError, Result};
use crate::scalars::{FourierScalar, GaussRational, Metric};
use crate::sections::GenSection;

/// A `p`-form: strictly increasing 0-based index tuples to coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct DifferentialForm {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, FourierScalar>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut s = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                s = -s;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((s, v))
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion; the matrices here are at most `D x D`.
fn det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut s = BigRational::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][c] * det(&minor);
        s = if c % 2 == 0 { s + t } else { s - t };
    }
    s
}

impl DifferentialForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        DifferentialForm { dim, degree, comps: BTreeMap::new() }
    }

    /// A function as a 0-form.
    pub fn function(f: &FourierScalar) -> Self {
        Self::zero(f.dim(), 0).with(&[], f.clone())
    }

    /// `f dx^{i1} ^ ... ^ dx^{ip}` for any index order.
    pub fn monomial(dim: usize, idx: &[usize], f: FourierScalar) -> Result<Self> {
        if let Some(&i) = idx.iter().find(|&&i| i >= dim) {
            return Err(AlgebraError::AxisOutOfRange { axis: i, dim });
        }
        Ok(Self::zero(dim, idx.len()).with(idx, f))
    }

    /// A 1-form from its components.
    pub fn one_form(comps: &[FourierScalar]) -> Self {
        let dim = comps.len();
        comps.iter().enumerate().fold(Self::zero(dim, 1), |acc, (i, f)| acc.with(&[i], f.clone()))
    }

    /// Adds `f dx^idx`.
    fn with(mut self, idx: &[usize], f: FourierScalar) -> Self {
        if let Some((s, key)) = sort_sign(idx) {
            let f = f.scale(&GaussRational::from_int(s));
            let v = self.comps.remove(&key).map_or(f.clone(), |old| &old + &f);
            if !v.is_zero() {
                self.comps.insert(key, v);
            }
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Coefficient of `dx^idx` with `idx` in any order.
    pub fn component(&self, idx: &[usize]) -> FourierScalar {
        match sort_sign(idx) {
            Some((s, key)) => {
                self.comps.get(&key).map_or(FourierScalar::zero(self.dim), |f| f.scale(&GaussRational::from_int(s)))
            }
            None => FourierScalar::zero(self.dim),
        }
    }

    /// Components of a 1-form as a vector.
    pub fn as_one_form(&self) -> Vec<FourierScalar> {
        (0..self.dim).map(|i| self.component(&[i])).collect()
    }

    pub fn plus(&self, other: &Self) -> Self {
        other.comps.iter().fold(self.clone(), |acc, (k, f)| acc.with(k, f.clone()))
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&GaussRational::from_int(-1)))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        let comps = self.comps.iter().map(|(k, f)| (k.clone(), f.scale(c))).filter(|(_, f)| !f.is_zero()).collect();
        DifferentialForm { dim: self.dim, degree: self.degree, comps }
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self.comps.iter().map(|(k, f)| json!({"index": k, "value": f.to_json()})).collect();
        json!({"degree": self.degree, "components": comps})
    }
}

/// Exterior product; a result of degree above `D` is the zero form of degree `D`.
pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> DifferentialForm {
    let degree = a.degree + b.degree;
    if degree > a.dim {
        return DifferentialForm::zero(a.dim, a.dim);
    }
    let mut out = DifferentialForm::zero(a.dim, degree);
    for (i, f) in &a.comps {
        for (j, g) in &b.comps {
            let idx: Vec<usize> = i.iter().chain(j).copied().collect();
            out = out.with(&idx, f * g);
        }
    }
    out
}

/// Exterior derivative.
pub fn dform(a: &DifferentialForm) -> DifferentialForm {
    if a.degree == a.dim {
        return DifferentialForm::zero(a.dim, a.dim);
    }
    let mut out = DifferentialForm::zero(a.dim, a.degree + 1);
    for (idx, f) in &a.comps {
        for i in 0..a.dim {
            let mut k = vec![i];
            k.extend(idx);
            out = out.with(&k, f.try_partial(i).expect("axis in range"));
        }
    }
    out
}

/// Hodge star of the metric `g_{ij} = eta_{ij}`:
/// `(*a)_J = sqrt|det g| a^I eps_{IJ}` with `I` the complement of `J`.
pub fn hodge(a: &DifferentialForm, eta: &Metric) -> Result<DifferentialForm> {
    let n = a.dim;
    if eta.dim() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: eta.dim() });
    }
    // sqrt|det g_ij| = 1 / sqrt|det eta^ij|
    let vol = GaussRational::from_real(eta.sqrt_abs_det()?.recip());
    let p = a.degree;
    let mut out = DifferentialForm::zero(n, n - p);
    for i_set in subsets(n, p) {
        // a^I = sum_K det(eta^{I K}) a_K
        let mut raised = FourierScalar::zero(n);
        for (k_set, f) in &a.comps {
            let minor: Vec<Vec<BigRational>> =
                i_set.iter().map(|&r| k_set.iter().map(|&c| eta.up(r, c).clone()).collect()).collect();
            let m = det(&minor);
            if !m.is_zero() {
                raised = &raised + &f.scale(&GaussRational::from_real(m));
            }
        }
        if raised.is_zero() {
            continue;
        }
        let j_set: Vec<usize> = (0..n).filter(|x| !i_set.contains(x)).collect();
        let full: Vec<usize> = i_set.iter().chain(&j_set).copied().collect();
        let (s, _) = sort_sign(&full).expect("complementary sets");
        out = out.with(&j_set, raised.scale(&vol.scale_int(s)));
    }
    Ok(out)
}

/// An element of the Yang–Mills complex: ghost degree `k` carries a form of
/// degree `0, 1, D-1, D` for `k = 0, 1, 2, 3`.
#[derive(Clone, PartialEq, Debug)]
pub struct YmElement {
    pub ghost: usize,
    pub form: DifferentialForm,
}

/// Form degree sitting at ghost degree `k`.
pub fn form_degree(dim: usize, k: usize) -> usize {
    match k {
        0 => 0,
        1 => 1,
        2 => dim - 1,
        _ => dim,
    }
}

impl YmElement {
    pub fn new(ghost: usize, form: DifferentialForm) -> Result<Self> {
        if ghost > 3 || form.degree != form_degree(form.dim, ghost) {
            return Err(AlgebraError::SlotMismatch(format!(
                "ghost degree {ghost} cannot hold a {}-form",
                form.degree
            )));
        }
        Ok(YmElement { ghost, form })
    }

    pub fn zero(dim: usize, ghost: usize) -> Self {
        YmElement { ghost, form: DifferentialForm::zero(dim, form_degree(dim, ghost)) }
    }

    pub fn dim(&self) -> usize {
        self.form.dim
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn plus(&self, o: &Self) -> Self {
        YmElement { ghost: self.ghost, form: self.form.plus(&o.form) }
    }

    pub fn minus(&self, o: &Self) -> Self {
        YmElement { ghost: self.ghost, form: self.form.minus(&o.form) }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        YmElement { ghost: self.ghost, form: self.form.scale(&GaussRational::from_int(k)) }
    }
}

/// The Yang–Mills complex with its table operations for a fixed metric.
#[derive(Clone, Debug)]
pub struct YmComplex {
    eta: Metric,
}

impl YmComplex {
    /// Requires `|det eta|` to be a rational square.
    pub fn new(eta: Metric) -> Result<Self> {
        eta.sqrt_abs_det()?;
        Ok(YmComplex { eta })
    }

    pub fn metric(&self) -> &Metric {
        &self.eta
    }

    fn star(&self, a: &DifferentialForm) -> DifferentialForm {
        hodge(a, &self.eta).expect("validated metric")
    }

    fn el(&self, ghost: usize, form: DifferentialForm) -> YmElement {
        YmElement { ghost, form }
    }

    /// `d`, `d * d`, `d` on ghost degrees 0, 1, 2.
    pub fn q(&self, x: &YmElement) -> YmElement {
        let dim = x.dim();
        match x.ghost {
            0 => self.el(1, dform(&x.form)),
            1 => self.el(2, dform(&self.star(&dform(&x.form)))),
            2 => self.el(3, dform(&x.form)),
            _ => YmElement::zero(dim, 3),
        }
    }

    /// The table: functions multiply; `mu(A, B) = A ^ *dB - B ^ *dA + d*(A ^ B)`;
    /// `mu(A, W) = A ^ W`, `mu(V, B) = B ^ V`; all other cells vanish.
    pub fn mu_sym(&self, x: &YmElement, y: &YmElement) -> YmElement {
        let dim = x.dim();
        let ghost = x.ghost + y.ghost;
        if ghost > 3 {
            return YmElement::zero(dim, 3);
        }
        let form = match (x.ghost, y.ghost) {
            (0, _) | (_, 0) => wedge(&x.form, &y.form),
            (1, 1) => {
                let (a, b) = (&x.form, &y.form);
                wedge(a, &self.star(&dform(b)))
                    .minus(&wedge(b, &self.star(&dform(a))))
                    .plus(&dform(&self.star(&wedge(a, b))))
            }
            (1, 2) => wedge(&x.form, &y.form),
            (2, 1) => wedge(&y.form, &x.form),
            _ => DifferentialForm::zero(dim, form_degree(dim, ghost)),
        };
        self.el(ghost, form)
    }

    /// `nu(A, B, C) = A ^ *(B ^ C) - C ^ *(A ^ B)` on three 1-forms, zero otherwise.
    pub fn nu_sym(&self, x: &YmElement, y: &YmElement, z: &YmElement) -> YmElement {
        let dim = x.dim();
        let ghost = (x.ghost + y.ghost + z.ghost).saturating_sub(1).min(3);
        if (x.ghost, y.ghost, z.ghost) != (1, 1, 1) {
            return YmElement::zero(dim, ghost);
        }
        let (a, b, c) = (&x.form, &y.form, &z.form);
        let form = wedge(a, &self.star(&wedge(b, c))).minus(&wedge(c, &self.star(&wedge(a, b))));
        self.el(2, form)
    }

    /// `Q mu(a1,a2) - mu(Q a1, a2) - (-1)^{|a1|} mu(a1, Q a2)`.
    pub fn q_derivation_residual(&self, x: &YmElement, y: &YmElement) -> YmElement {
        if x.ghost + y.ghost >= 3 {
            return YmElement::zero(x.dim(), 3);
        }
        self.q(&self.mu_sym(x, y))
            .minus(&self.mu_sym(&self.q(x), y))
            .minus(&self.mu_sym(x, &self.q(y)).scale_int(sign(x.ghost)))
    }

    /// `mu(mu(a1,a2),a3) - mu(a1,mu(a2,a3))` minus the `[Q, nu]` terms.
    pub fn associativity_residual(&self, x: &YmElement, y: &YmElement, z: &YmElement) -> YmElement {
        let total = x.ghost + y.ghost + z.ghost;
        if total > 3 {
            return YmElement::zero(x.dim(), 3);
        }
        let d1 = x.ghost;
        let d2 = y.ghost;
        let mut r = self.mu_sym(&self.mu_sym(x, y), z).minus(&self.mu_sym(x, &self.mu_sym(y, z)));
        if total >= 1 {
            let nuq = |a: &YmElement, b: &YmElement, c: &YmElement| self.nu_sym(a, b, c);
            r = r
                .minus(&self.q(&nuq(x, y, z)).retag(total))
                .minus(&nuq(&self.q(x), y, z).retag(total))
                .minus(&nuq(x, &self.q(y), z).scale_int(sign(d1)).retag(total))
                .minus(&nuq(x, y, &self.q(z)).scale_int(sign(d1 + d2)).retag(total));
        }
        r
    }

    /// `nu(a1,a2,a3) - (-1)^{|a1||a2|} nu(a2,a1,a3) + (-1)^{|a1|(|a2|+|a3|)} nu(a2,a3,a1)`.
    pub fn shuffle_residual(&self, x: &YmElement, y: &YmElement, z: &YmElement) -> YmElement {
        let (d1, d2, d3) = (x.ghost, y.ghost, z.ghost);
        self.nu_sym(x, y, z)
            .minus(&self.nu_sym(y, x, z).scale_int(sign(d1 * d2)))
            .plus(&self.nu_sym(y, z, x).scale_int(sign(d1 * (d2 + d3))))
    }

    /// Embedding into the BV double: `u`, `f1(B) = (B*, B, -div^ B)`,
    /// `g1(*V)` and `-*a` in the top slot. With these Hodge identifications
    /// the differential and both operations are intertwined exactly.
    pub fn to_bv(&self, x: &YmElement) -> BVElement {
        let def = FlatDeformation::from_metric(&self.eta);
        let dim = x.dim();
        match x.ghost {
            0 => BVElement::deg0(x.form.component(&[])),
            1 => {
                let b = x.form.as_one_form();
                let mut e = BVElement::section1(GenSection::new(self.eta.raise(&b), b.clone()).expect("shape"));
                e.v = def.hat_div(&b).neg();
                e
            }
            2 => {
                let b = self.star(&x.form).as_one_form();
                BVElement::section2(GenSection::new(self.eta.raise(&b), b).expect("shape"))
            }
            3 => BVElement::deg3(self.star(&x.form).component(&[]).neg()),
            _ => BVElement::zero(dim),
        }
    }
}

/// Residuals of one C-infinity sample on the Yang–Mills complex.
#[derive(Clone, Debug)]
pub struct CinfResiduals {
    pub q_derivation: YmElement,
    pub associativity: YmElement,
    pub shuffle: YmElement,
}

impl CinfResiduals {
    pub fn is_zero(&self) -> bool {
        self.q_derivation.is_zero() && self.associativity.is_zero() && self.shuffle.is_zero()
    }
}

/// Differences `to_bv(op(..)) - op^eta(to_bv(..))` for the differential and
/// the two symmetrized operations.
#[derive(Clone, Debug)]
pub struct TransportResiduals {
    pub q: BVElement,
    pub mu: BVElement,
    pub nu: BVElement,
}

impl TransportResiduals {
    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.mu.is_zero() && self.nu.is_zero()
    }
}

impl YmComplex {
    /// Q-derivation on `(x, y)` and associativity and shuffle on `(x, y, z)`.
    pub fn cinf_residuals(&self, x: &YmElement, y: &YmElement, z: &YmElement) -> CinfResiduals {
        CinfResiduals {
            q_derivation: self.q_derivation_residual(x, y),
            associativity: self.associativity_residual(x, y, z),
            shuffle: self.shuffle_residual(x, y, z),
        }
    }

    /// Compares the table with `(Q^eta, mu^eta_sym, nu_sym)` through `to_bv`.
    pub fn transport_residuals(&self, x: &YmElement, y: &YmElement, z: &YmElement) -> TransportResiduals {
        let def = FlatDeformation::from_metric(&self.eta);
        let ops = SymmetrizedDeformation(&def);
        let (bx, by, bz) = (self.to_bv(x), self.to_bv(y), self.to_bv(z));
        let q = self.to_bv(&self.q(x)).minus(&ops.q(&bx));
        let mu = if x.ghost + y.ghost <= 3 {
            self.to_bv(&self.mu_sym(x, y)).minus(&ops.mu(&bx, &by))
        } else {
            BVElement::zero(x.dim())
        };
        let nu = if x.ghost + y.ghost + z.ghost <= 4 {
            self.to_bv(&self.nu_sym(x, y, z)).minus(&ops.nu(&bx, &by, &bz))
        } else {
            BVElement::zero(x.dim())
        };
        TransportResiduals { q, mu, nu }
    }
}

/// `int_{T^D} a` for a top form: the zero-mode coefficient.
pub fn integrate(a: &DifferentialForm) -> GaussRational {
    if a.degree != a.dim {
        return GaussRational::zero();
    }
    let all: Vec<usize> = (0..a.dim).collect();
    a.component(&all).integrate()
}

impl YmElement {
    /// Same form, new ghost label; used when a zero of the wrong label is produced.
    fn retag(mut self, ghost: usize) -> Self {
        if self.form.is_zero() {
            self.form = DifferentialForm::zero(self.dim(), form_degree(self.dim(), ghost));
            self.ghost = ghost;
        }
        self
    }
}

/// Random `p`-form with sparse random components.
pub fn random_form<G: rand::Rng + ?Sized>(dim: usize, p: usize, cutoff: i64, rng: &mut G) -> DifferentialForm {
    subsets(dim, p).into_iter().fold(DifferentialForm::zero(dim, p), |acc, idx| {
        if rng.gen_bool(0.6) {
            acc.with(&idx, crate::scalars::random_scalar(dim, cutoff, rng))
        } else {
            acc
        }
    })
}

/// Random element of the Yang–Mills complex at ghost degree `k`.
pub fn random_ym<G: rand::Rng + ?Sized>(dim: usize, k: usize, cutoff: i64, rng: &mut G) -> YmElement {
    YmElement { ghost: k, form: random_form(dim, form_degree(dim, k), cutoff, rng) }
}
