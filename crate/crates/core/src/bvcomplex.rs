//! The four-term complex `V0 -> V1' + V0' -> V1'' + V0'' -> V0'''` with `Q`, `b`, `c`.

use rand::Rng;
use serde_json::{json, Map, Value};

pub use crate::scalars::Metric;
use crate::error::{AlgebraError, Result};
use crate::scalars::{random_scalar, Coeff, FourierScalar, GaussRational};
use crate::sections::{divergence, exterior_d, pairing, random_section, GenSection};

/// An element of the complex, possibly inhomogeneous.
///
/// Slot degrees: `u` 0, `a` and `v` 1, `at` and `vt` 2, `ut` 3. The scalar
/// slots form the `V0` grading, the section slots the `V1` grading.
#[derive(Clone, PartialEq, Debug)]
pub struct BVElement<R: Coeff = FourierScalar> {
    pub u: R,
    pub a: GenSection<R>,
    pub v: R,
    pub at: GenSection<R>,
    pub vt: R,
    pub ut: R,
}

/// Names of the six slots, in degree order.
pub const SLOTS: [&str; 6] = ["u", "A", "v", "At", "vt", "ut"];

/// `(-1)^n`.
pub fn sign(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<R: Coeff> BVElement<R> {
    pub fn zero(shape: R::Shape) -> Self {
        Self {
            u: R::zero(shape),
            a: GenSection::zero(shape),
            v: R::zero(shape),
            at: GenSection::zero(shape),
            vt: R::zero(shape),
            ut: R::zero(shape),
        }
    }

    pub fn deg0(u: R) -> Self {
        let s = u.shape();
        Self { u, ..Self::zero(s) }
    }

    pub fn deg1(a: GenSection<R>, v: R) -> Self {
        let s = v.shape();
        Self { a, v, ..Self::zero(s) }
    }

    pub fn deg2(at: GenSection<R>, vt: R) -> Self {
        let s = vt.shape();
        Self { at, vt, ..Self::zero(s) }
    }

    pub fn deg3(ut: R) -> Self {
        let s = ut.shape();
        Self { ut, ..Self::zero(s) }
    }

    pub fn section1(a: GenSection<R>) -> Self {
        let s = a.shape();
        Self::deg1(a, R::zero(s))
    }

    pub fn scalar1(v: R) -> Self {
        let s = v.shape();
        Self::deg1(GenSection::zero(s), v)
    }

    pub fn section2(at: GenSection<R>) -> Self {
        let s = at.shape();
        Self::deg2(at, R::zero(s))
    }

    pub fn scalar2(vt: R) -> Self {
        let s = vt.shape();
        Self::deg2(GenSection::zero(s), vt)
    }

    pub fn shape(&self) -> R::Shape {
        self.u.shape()
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero()
            && self.a.is_zero()
            && self.v.is_zero()
            && self.at.is_zero()
            && self.vt.is_zero()
            && self.ut.is_zero()
    }

    /// Degree-`d` component.
    pub fn component(&self, d: usize) -> Self {
        let z = Self::zero(self.shape());
        match d {
            0 => Self { u: self.u.clone(), ..z },
            1 => Self { a: self.a.clone(), v: self.v.clone(), ..z },
            2 => Self { at: self.at.clone(), vt: self.vt.clone(), ..z },
            3 => Self { ut: self.ut.clone(), ..z },
            _ => z,
        }
    }

    /// Degrees with a nonzero component.
    pub fn degrees(&self) -> Vec<usize> {
        (0..4).filter(|&d| !self.component(d).is_zero()).collect()
    }

    /// `Some(d)` if exactly one degree is present.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Nonzero homogeneous components with their degrees.
    pub fn pieces(&self) -> Vec<(usize, Self)> {
        (0..4).map(|d| (d, self.component(d))).filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn map<S: Coeff, F: Fn(&R) -> S>(&self, f: F) -> BVElement<S> {
        BVElement {
            u: f(&self.u),
            a: self.a.map(&f),
            v: f(&self.v),
            at: self.at.map(&f),
            vt: f(&self.vt),
            ut: f(&self.ut),
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        Self {
            u: self.u.plus(&o.u),
            a: self.a.plus(&o.a),
            v: self.v.plus(&o.v),
            at: self.at.plus(&o.at),
            vt: self.vt.plus(&o.vt),
            ut: self.ut.plus(&o.ut),
        }
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }

    pub fn negate(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.map(|x| x.scale_int(k))
    }

    pub fn half(&self) -> Self {
        self.map(|x| x.half())
    }

    /// Multiplies every slot on the left by a degree-0 coefficient.
    pub fn left_mul(&self, w: &R) -> Self {
        self.map(|x| w.times(x))
    }

    /// Multiplies every slot on the right by a degree-0 coefficient.
    pub fn right_mul(&self, w: &R) -> Self {
        self.map(|x| x.times(w))
    }

    /// Nonzero slot names.
    pub fn support(&self) -> Vec<&'static str> {
        let nz = [
            !self.u.is_zero(),
            !self.a.is_zero(),
            !self.v.is_zero(),
            !self.at.is_zero(),
            !self.vt.is_zero(),
            !self.ut.is_zero(),
        ];
        SLOTS.iter().zip(nz).filter(|(_, z)| *z).map(|(s, _)| *s).collect()
    }
}

impl BVElement<FourierScalar> {
    /// Canonical JSON: degree tag (null if inhomogeneous or zero) plus nonzero slots.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert(
            "degree".into(),
            self.homogeneous_degree().map(Value::from).unwrap_or(Value::Null),
        );
        if !self.u.is_zero() {
            m.insert("u".into(), self.u.to_json());
        }
        if !self.a.is_zero() {
            m.insert("A".into(), self.a.to_json());
        }
        if !self.v.is_zero() {
            m.insert("v".into(), self.v.to_json());
        }
        if !self.at.is_zero() {
            m.insert("At".into(), self.at.to_json());
        }
        if !self.vt.is_zero() {
            m.insert("vt".into(), self.vt.to_json());
        }
        if !self.ut.is_zero() {
            m.insert("ut".into(), self.ut.to_json());
        }
        Value::Object(m)
    }

    pub fn from_json(dim: usize, v: &Value) -> Result<Self> {
        let mut x = Self::zero(dim);
        let scalar = |k: &str| -> Result<FourierScalar> {
            v.get(k).map_or(Ok(FourierScalar::zero(dim)), |s| FourierScalar::from_json(dim, s))
        };
        let section = |k: &str| -> Result<GenSection> {
            v.get(k).map_or(Ok(GenSection::zero(dim)), |s| GenSection::from_json(dim, s))
        };
        x.u = scalar("u")?;
        x.a = section("A")?;
        x.v = scalar("v")?;
        x.at = section("At")?;
        x.vt = scalar("vt")?;
        x.ut = scalar("ut")?;
        Ok(x)
    }
}

/// The differential.
pub fn q<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    let mut out = BVElement::zero(x.shape());
    out.a = exterior_d(&x.u);
    out.at = exterior_d(&x.v);
    out.vt = divergence(&x.a).half().plus(&x.v);
    out.ut = divergence(&x.at).half().negate();
    out
}

/// The BV operator, degree -1.
pub fn b<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    let mut out = BVElement::zero(x.shape());
    out.u = x.v.clone();
    out.a = x.at.negate();
    out.vt = x.ut.negate();
    out
}

/// Degree +1 operator with `c^2 = 0` and `bc + cb = 1`.
pub fn c<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    let mut out = BVElement::zero(x.shape());
    out.v = x.u.clone();
    out.at = x.a.negate();
    out.ut = x.vt.negate();
    out
}

/// The `d` part of `Q`: `u -> du`, `v -> dv`.
pub fn d_part<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    let mut out = BVElement::zero(x.shape());
    out.a = exterior_d(&x.u);
    out.at = exterior_d(&x.v);
    out
}

/// The `d*` part of `Q`: `A -> div A / 2`, `At -> -div At / 2`.
pub fn dstar<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    let mut out = BVElement::zero(x.shape());
    out.vt = divergence(&x.a).half();
    out.ut = divergence(&x.at).half().negate();
    out
}

/// The scalar value of `d*` on a homogeneous element of degree 1 or 2.
pub fn dstar_value<R: Coeff>(x: &BVElement<R>) -> Result<R> {
    match x.homogeneous_degree() {
        Some(1) => Ok(divergence(&x.a).half()),
        Some(2) => Ok(divergence(&x.at).half().negate()),
        None if x.is_zero() => Ok(x.u.zero_like()),
        other => Err(AlgebraError::WrongDegree {
            expected: "1 or 2".into(),
            found: format!("{other:?}"),
        }),
    }
}

/// `Q~`: the identity from the `v` slot to the `vt` slot.
pub fn qtilde<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    BVElement::scalar2(x.v.clone())
}

/// Inverse of `Q~`.
pub fn qtilde_inv<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    BVElement::scalar1(x.vt.clone())
}

/// Projection onto `F_c` along `G = V0' + Q V0'`.
///
/// Degree 1: `v -> -Q~^{-1} d* A`. Degree 2: the `G` part of `(At, vt)` is
/// `Q(vt) = (d vt, vt)`, so the projection is `(At - d vt, 0)`.
pub fn project_fc<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    let mut out = x.clone();
    out.v = divergence(&x.a).half().negate();
    out.at = x.at.minus(&exterior_d(&x.vt));
    out.vt = x.vt.zero_like();
    out
}

/// The complementary projection onto `G`.
pub fn project_g<R: Coeff>(x: &BVElement<R>) -> BVElement<R> {
    x.minus(&project_fc(x))
}

pub fn is_in_fc<R: Coeff>(x: &BVElement<R>) -> bool {
    project_fc(x) == *x
}

/// The odd symmetric pairing of total degree 3:
/// `(u, ut) = -2 int u ut`, `(A, At) = int <A, At>`, `(v, vt) = -2 int v vt`.
pub fn odd_pairing(x: &BVElement, y: &BVElement) -> GaussRational {
    let two = GaussRational::from_int(-2);
    let uu = (&(&x.u * &y.ut) + &(&x.ut * &y.u)).integrate();
    let vv = (&(&x.v * &y.vt) + &(&x.vt * &y.v)).integrate();
    let aa = (&pairing(&x.a, &y.at) + &pairing(&x.at, &y.a)).integrate();
    &(&(&uu * &two) + &(&vv * &two)) + &aa
}

/// Random homogeneous element of degree `deg` with all slots of that degree filled.
pub fn random_element<G: Rng + ?Sized>(dim: usize, cutoff: i64, deg: usize, rng: &mut G) -> BVElement {
    match deg {
        0 => BVElement::deg0(random_scalar(dim, cutoff, rng)),
        1 => BVElement::deg1(random_section(dim, cutoff, rng), random_scalar(dim, cutoff, rng)),
        2 => BVElement::deg2(random_section(dim, cutoff, rng), random_scalar(dim, cutoff, rng)),
        3 => BVElement::deg3(random_scalar(dim, cutoff, rng)),
        _ => BVElement::zero(dim),
    }
}

/// Random element with a nonzero component in every degree.
pub fn random_inhomogeneous<G: Rng + ?Sized>(dim: usize, cutoff: i64, rng: &mut G) -> BVElement {
    (0..4).fold(BVElement::zero(dim), |acc, d| acc.plus(&random_element(dim, cutoff, d, rng)))
}

/// JSON summary used in witness records.
pub fn element_json(x: &BVElement) -> Value {
    json!({ "element": x.to_json(), "support": x.support() })
}
