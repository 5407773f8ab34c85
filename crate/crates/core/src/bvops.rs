//! Homotopy BV-LZ operations on the complex: `mu`, `{,}`, `m`, `n`, `nu`,
//! their symmetrizations, the trilinear `L3` bracket and the cyclic forms.

use serde::{Deserialize, Serialize};

use crate::bvcomplex::{b, is_in_fc, odd_pairing, q, sign, BVElement};
use crate::error::{AlgebraError, Result};
use crate::scalars::{Coeff, GaussRational, Opp};
use crate::sections::{anchor, dorfman, pairing, GenSection};

/// Sign of `nu` on the `V0''` slots: `nu(vt, A2, A3) = NU_VT_SIGN * vt <A2, A3>`.
pub const NU_VT_SIGN: i64 = 1;

/// `sum_i (d_i w) X^i`, derivative factor on the left.
fn anchor_left<R: Coeff>(w: &R, a: &GenSection<R>) -> R {
    let mut s = w.zero_like();
    for (i, x) in a.vec.iter().enumerate() {
        s = s.plus(&w.partial(i).times(x));
    }
    s
}

/// `sum_i X^i w zeta_i + xi_i w Y^i`: the pairing with `w` sandwiched in the middle.
fn pairing_mid<R: Coeff>(a: &GenSection<R>, w: &R, c: &GenSection<R>) -> R {
    let mut s = w.zero_like();
    for i in 0..a.dim() {
        s = s.plus(&a.vec[i].times(w).times(&c.form[i]));
        s = s.plus(&a.form[i].times(w).times(&c.vec[i]));
    }
    s
}

/// The section `<A, B, C>` whose components are `pairing_mid(A, B_k, C)`.
fn pairing_mid_section<R: Coeff>(a: &GenSection<R>, bsec: &GenSection<R>, c: &GenSection<R>) -> GenSection<R> {
    bsec.map(|w| pairing_mid(a, w, c))
}

/// The product.
///
/// Slotwise table (first argument `x`, second `y`); all other cells vanish:
///
/// | x \ y | u      | A                  | v     | At          | vt        | ut  |
/// |-------|--------|--------------------|-------|-------------|-----------|-----|
/// | u     | u u    | u A                | u v   | u At        | u vt      | u ut|
/// | A     | A u, -A(u) | Dorf + <,>/2   | A v   | -<A,At>/2   | A(vt)     |     |
/// | v     | v u    | -v A               |       |             | -v vt     |     |
/// | At    | At u   | -<At,A>/2          |       |             |           |     |
/// | vt    | vt u   | (d vt).A           | -vt v |             |           |     |
/// | ut    | ut u   |                    |       |             |           |     |
pub fn mu<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
    let mut o = BVElement::zero(x.shape());
    o.u = x.u.times(&y.u);

    o.a = x.a.right_mul(&y.u).plus(&y.a.left_mul(&x.u));
    o.v = anchor(&x.a, &y.u).negate().plus(&x.v.times(&y.u)).plus(&x.u.times(&y.v));

    o.at = x
        .at
        .right_mul(&y.u)
        .plus(&y.at.left_mul(&x.u))
        .plus(&dorfman(&x.a, &y.a))
        .minus(&y.a.left_mul(&x.v))
        .plus(&x.a.right_mul(&y.v));
    o.vt = x.vt.times(&y.u).plus(&x.u.times(&y.vt)).plus(&pairing(&x.a, &y.a).half());

    o.ut = x
        .ut
        .times(&y.u)
        .plus(&x.u.times(&y.ut))
        .minus(&pairing(&x.at, &y.a).half())
        .minus(&pairing(&x.a, &y.at).half())
        .plus(&anchor_left(&x.vt, &y.a))
        .plus(&anchor(&x.a, &y.vt))
        .minus(&x.vt.times(&y.v))
        .minus(&x.v.times(&y.vt));
    o
}

/// Homotopy for commutativity: `<A1, A2>` in the `v` slot.
pub fn m<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
    BVElement::scalar1(pairing(&x.a, &y.a))
}

/// Sums `f` over the homogeneous pieces of two arguments.
pub fn graded2<R: Coeff, F>(x: &BVElement<R>, y: &BVElement<R>, f: F) -> BVElement<R>
where
    F: Fn(usize, &BVElement<R>, usize, &BVElement<R>) -> BVElement<R>,
{
    let mut out = BVElement::zero(x.shape());
    for (dx, px) in x.pieces() {
        for (dy, py) in y.pieces() {
            out = out.plus(&f(dx, &px, dy, &py));
        }
    }
    out
}

/// Sums `f` over the homogeneous pieces of three arguments.
pub fn graded3<R: Coeff, F>(x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>, f: F) -> BVElement<R>
where
    F: Fn([usize; 3], &BVElement<R>, &BVElement<R>, &BVElement<R>) -> BVElement<R>,
{
    let mut out = BVElement::zero(x.shape());
    let (py, pz) = (y.pieces(), z.pieces());
    for (dx, a) in x.pieces() {
        for (dy, bb) in &py {
            for (dz, cc) in &pz {
                out = out.plus(&f([dx, *dy, *dz], &a, bb, cc));
            }
        }
    }
    out
}

/// `n = [b, m] = b m + m(b., .) + (-1)^{|x|} m(., b.)`.
pub fn n<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
    graded2(x, y, |dx, x, _, y| {
        b(&m(x, y)).plus(&m(&b(x), y)).plus(&m(x, &b(y)).scale_int(sign(dx)))
    })
}

/// `{x, y} = (-1)^{|x|} (b mu(x, y) - mu(bx, y) - (-1)^{|x|} mu(x, by))`.
pub fn bracket<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
    graded2(x, y, |dx, x, _, y| {
        let s = sign(dx);
        b(&mu(x, y))
            .minus(&mu(&b(x), y))
            .minus(&mu(x, &b(y)).scale_int(s))
            .scale_int(s)
    })
}

/// Associativity homotopy.
///
/// Nonzero on `V1'^3`, `V0'' x V1' x V1'` and `V1' x V0'' x V1'`:
/// `nu(A1, A2, A3) = mu(m(A1, A3), A2) - mu(m(A2, A3), A1)`, and the two
/// `vt` cells give `vt <A2, A3>` up to [`NU_VT_SIGN`].
pub fn nu<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R> {
    let mut o = BVElement::zero(x.shape());
    o.at = x
        .a
        .map(|c| c.times(&pairing(&y.a, &z.a)))
        .minus(&pairing_mid_section(&x.a, &y.a, &z.a));
    let s = GaussRational::from_int(NU_VT_SIGN);
    o.ut = x
        .vt
        .times(&pairing(&y.a, &z.a))
        .plus(&pairing_mid(&x.a, &y.vt, &z.a))
        .scale(&s);
    o
}

/// Runs `mu` in the opposite coefficient ring with arguments swapped,
/// so matrix factors still multiply in the order `x` then `y`.
fn mu_op<R: Coeff>(y: &BVElement<R>, x: &BVElement<R>) -> BVElement<R> {
    let wrap = |e: &BVElement<R>| e.map(|c| Opp(c.clone()));
    mu(&wrap(y), &wrap(x)).map(|c| c.0.clone())
}

/// `mu_sym(x, y) = (mu(x, y) + (-1)^{|x||y|} mu(y, x)) / 2`.
pub fn mu_sym<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
    graded2(x, y, |dx, x, dy, y| mu(x, y).plus(&mu_op(y, x).scale_int(sign(dx * dy))).half())
}

/// Symmetrized associativity homotopy:
/// `nu_sym(A1, A2, A3) = mu(m(A1,A3),A2) - mu(m(A2,A3),A1)/2 - mu(m(A1,A2),A3)/2`,
/// and on the `vt` cells half, one and half times the corresponding `nu` value.
pub fn nu_sym<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R> {
    let mut o = BVElement::zero(x.shape());
    let left = x.a.map(|c| c.times(&pairing(&y.a, &z.a)));
    let right = z.a.map(|c| pairing(&x.a, &y.a).times(c));
    o.at = left.plus(&right).half().minus(&pairing_mid_section(&x.a, &y.a, &z.a));
    let s = GaussRational::from_int(NU_VT_SIGN);
    o.ut = x
        .vt
        .times(&pairing(&y.a, &z.a))
        .half()
        .plus(&pairing(&x.a, &y.a).times(&z.vt).half())
        .plus(&pairing_mid(&x.a, &y.vt, &z.a))
        .scale(&s);
    o
}

/// Antisymmetrized bracket of two sections, `({A,B} - {B,A}) / 2`.
pub fn courant<R: Coeff>(a: &GenSection<R>, c: &GenSection<R>) -> GenSection<R> {
    dorfman(a, c).minus(&dorfman(c, a)).half()
}

/// Coefficient of the cyclic sum in the trilinear bracket.
pub const L3_COEFF: (i64, i64) = (1, 6);

/// `T(A1, A2, A3) = k (<A1, [A2, A3]> + <A2, [A3, A1]> + <A3, [A1, A2]>)`, ordered.
pub fn l3_sections<R: Coeff>(a1: &GenSection<R>, a2: &GenSection<R>, a3: &GenSection<R>) -> R {
    let k = GaussRational::from_ratio(L3_COEFF.0, L3_COEFF.1);
    // each term keeps the factors in argument order
    let t1 = pairing(a1, &courant(a2, a3));
    let t2 = pairing(&courant(a1, a3), a2).negate();
    let t3 = pairing(&courant(a1, a2), a3);
    t1.plus(&t2).plus(&t3).scale(&k)
}

/// Trilinear bracket of the `L3` structure, nonzero on the `V1` slots only.
///
/// Three `V1'` sections give `T` in `V0`; one `V1''` argument gives `+-T` in
/// `V0'` with signs `+, -, +` by position, as forced by the `b`-derivation rule.
pub fn l3_bracket<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R> {
    let mut o = BVElement::zero(x.shape());
    o.u = l3_sections(&x.a, &y.a, &z.a);
    o.v = l3_sections(&x.at, &y.a, &z.a)
        .minus(&l3_sections(&x.a, &y.at, &z.a))
        .plus(&l3_sections(&x.a, &y.a, &z.at));
    o
}

/// `(Phi1, Phi2) = (Q Phi1, Phi2)`, etc., for arguments in `F_c`.
pub fn cyclic_form(args: &[BVElement]) -> Result<GaussRational> {
    if !args.iter().all(is_in_fc) {
        return Err(AlgebraError::NotInFc);
    }
    match args {
        [p1, p2] => Ok(odd_pairing(&q(p1), p2)),
        [p1, p2, p3] => Ok(odd_pairing(&mu_sym(p1, p2), p3)),
        [p1, p2, p3, p4] => Ok(odd_pairing(&nu_sym(p1, p2, p3), p4)),
        _ => Err(AlgebraError::SlotMismatch(format!("cyclic forms take 2 to 4 arguments, got {}", args.len()))),
    }
}

/// Left minus right of the cyclic-permutation rule
/// `(P1..Pn) = (-1)^{n-1} (-1)^{|Pn|(|P1|+..+|Pn-1|)} (Pn, P1, .., Pn-1)`.
pub fn cyclic_sign_residual(args: &[BVElement]) -> Result<GaussRational> {
    let nargs = args.len();
    let degs: Vec<usize> = args.iter().map(|x| x.homogeneous_degree().unwrap_or(0)).collect();
    let last = degs[nargs - 1];
    let rest: usize = degs[..nargs - 1].iter().sum();
    let s = GaussRational::from_int(sign(nargs - 1 + last * rest));
    let mut rotated = vec![args[nargs - 1].clone()];
    rotated.extend_from_slice(&args[..nargs - 1]);
    Ok(&cyclic_form(args)? - &(&s * &cyclic_form(&rotated)?))
}

/// Identifiers of the checked relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    QDerivationMu,
    HomotopyCommutativity,
    HomotopyAssociativity,
    QDerivationBracket,
    BracketDerivationMu,
    BDerivationBracket,
    BracketHomotopySymmetry,
    Jacobi,
    DerivationUpToHomotopy,
}

impl Relation {
    pub const ALL: [Relation; 9] = [
        Relation::QDerivationMu,
        Relation::HomotopyCommutativity,
        Relation::HomotopyAssociativity,
        Relation::QDerivationBracket,
        Relation::BracketDerivationMu,
        Relation::BDerivationBracket,
        Relation::BracketHomotopySymmetry,
        Relation::Jacobi,
        Relation::DerivationUpToHomotopy,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::QDerivationMu => "q_derivation_mu",
            Relation::HomotopyCommutativity => "homotopy_commutativity",
            Relation::HomotopyAssociativity => "homotopy_associativity",
            Relation::QDerivationBracket => "q_derivation_bracket",
            Relation::BracketDerivationMu => "bracket_derivation_mu",
            Relation::BDerivationBracket => "b_derivation_bracket",
            Relation::BracketHomotopySymmetry => "bracket_homotopy_symmetry",
            Relation::Jacobi => "jacobi",
            Relation::DerivationUpToHomotopy => "derivation_up_to_homotopy",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Relation::QDerivationMu
            | Relation::HomotopyCommutativity
            | Relation::QDerivationBracket
            | Relation::BDerivationBracket
            | Relation::BracketHomotopySymmetry => 2,
            _ => 3,
        }
    }

    pub fn from_id(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|r| r.id() == s).ok_or_else(|| AlgebraError::UnknownRelation(s.into()))
    }
}

/// The operations a residual is evaluated against; lets the deformed
/// structure reuse the same relation code.
pub trait Operations<R: Coeff> {
    fn q(&self, x: &BVElement<R>) -> BVElement<R>;
    fn mu(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R>;
    fn m(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        m(x, y)
    }
    fn nu(&self, x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R>;

    fn bracket(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        graded2(x, y, |dx, x, _, y| {
            let s = sign(dx);
            b(&self.mu(x, y))
                .minus(&self.mu(&b(x), y))
                .minus(&self.mu(x, &b(y)).scale_int(s))
                .scale_int(s)
        })
    }

    fn n(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        graded2(x, y, |dx, x, _, y| {
            b(&self.m(x, y)).plus(&self.m(&b(x), y)).plus(&self.m(x, &b(y)).scale_int(sign(dx)))
        })
    }
}

/// The undeformed BV double.
#[derive(Clone, Copy, Debug, Default)]
pub struct BvDouble;

impl<R: Coeff> Operations<R> for BvDouble {
    fn q(&self, x: &BVElement<R>) -> BVElement<R> {
        q(x)
    }
    fn mu(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        mu(x, y)
    }
    fn nu(&self, x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R> {
        nu(x, y, z)
    }
}

/// The C-infinity part: `(Q, mu_sym, nu_sym)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SymmetrizedDouble;

impl<R: Coeff> Operations<R> for SymmetrizedDouble {
    fn q(&self, x: &BVElement<R>) -> BVElement<R> {
        q(x)
    }
    fn mu(&self, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
        mu_sym(x, y)
    }
    fn nu(&self, x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R> {
        nu_sym(x, y, z)
    }
}

/// `Q mu(a1,a2) - mu(Q a1, a2) - (-1)^{|a1|} mu(a1, Q a2)`.
pub fn q_derivation_residual<R: Coeff, O: Operations<R>>(ops: &O, x: &BVElement<R>, y: &BVElement<R>) -> BVElement<R> {
    graded2(x, y, |dx, x, _, y| {
        ops.q(&ops.mu(x, y))
            .minus(&ops.mu(&ops.q(x), y))
            .minus(&ops.mu(x, &ops.q(y)).scale_int(sign(dx)))
    })
}

/// `mu(a1,a2) - (-1)^{|a1||a2|} mu(a2,a1) - (Q m + m(Q.,.) + (-1)^{|a1|} m(., Q.))`.
pub fn homotopy_commutativity_residual<R: Coeff, O: Operations<R>>(
    ops: &O,
    x: &BVElement<R>,
    y: &BVElement<R>,
) -> BVElement<R> {
    graded2(x, y, |dx, x, dy, y| {
        ops.mu(x, y)
            .minus(&ops.mu(y, x).scale_int(sign(dx * dy)))
            .minus(&ops.q(&ops.m(x, y)))
            .minus(&ops.m(&ops.q(x), y))
            .minus(&ops.m(x, &ops.q(y)).scale_int(sign(dx)))
    })
}

/// `mu(mu(a1,a2),a3) - mu(a1,mu(a2,a3))` minus the `[Q, nu]` terms.
pub fn homotopy_associativity_residual<R: Coeff, O: Operations<R>>(
    ops: &O,
    x: &BVElement<R>,
    y: &BVElement<R>,
    z: &BVElement<R>,
) -> BVElement<R> {
    graded3(x, y, z, |[d1, d2, _], x, y, z| {
        ops.mu(&ops.mu(x, y), z)
            .minus(&ops.mu(x, &ops.mu(y, z)))
            .minus(&ops.q(&ops.nu(x, y, z)))
            .minus(&ops.nu(&ops.q(x), y, z))
            .minus(&ops.nu(x, &ops.q(y), z).scale_int(sign(d1)))
            .minus(&ops.nu(x, y, &ops.q(z)).scale_int(sign(d1 + d2)))
    })
}

/// Quartic A-infinity relation:
/// `(-1)^{|a1|} mu(a1, nu(a2,a3,a4)) + mu(nu(a1,a2,a3), a4)
///  - nu(mu(a1,a2),a3,a4) + nu(a1,mu(a2,a3),a4) - nu(a1,a2,mu(a3,a4))`.
pub fn pentagon_residual<R: Coeff, O: Operations<R>>(ops: &O, a: [&BVElement<R>; 4]) -> BVElement<R> {
    let mut out = BVElement::zero(a[0].shape());
    for (d1, x1) in a[0].pieces() {
        let lhs = ops
            .mu(&x1, &ops.nu(a[1], a[2], a[3]))
            .scale_int(sign(d1))
            .plus(&ops.mu(&ops.nu(&x1, a[1], a[2]), a[3]));
        let rhs = ops
            .nu(&ops.mu(&x1, a[1]), a[2], a[3])
            .minus(&ops.nu(&x1, &ops.mu(a[1], a[2]), a[3]))
            .plus(&ops.nu(&x1, a[1], &ops.mu(a[2], a[3])));
        out = out.plus(&lhs.minus(&rhs));
    }
    out
}

/// `nu(a1,a2,a3) - (-1)^{|a1||a2|} nu(a2,a1,a3) + (-1)^{|a1|(|a2|+|a3|)} nu(a2,a3,a1)`.
pub fn shuffle_residual<R: Coeff, O: Operations<R>>(
    ops: &O,
    x: &BVElement<R>,
    y: &BVElement<R>,
    z: &BVElement<R>,
) -> BVElement<R> {
    graded3(x, y, z, |[d1, d2, d3], x, y, z| {
        ops.nu(x, y, z)
            .minus(&ops.nu(y, x, z).scale_int(sign(d1 * d2)))
            .plus(&ops.nu(y, z, x).scale_int(sign(d1 * (d2 + d3))))
    })
}

/// Residual of one BV-LZ relation on the undeformed double.
pub fn relation_residual(rel: Relation, args: &[BVElement]) -> Result<BVElement> {
    relation_residual_with(&BvDouble, rel, args)
}

/// Residual of one BV-LZ relation for a given set of operations.
pub fn relation_residual_with<R: Coeff, O: Operations<R>>(
    ops: &O,
    rel: Relation,
    args: &[BVElement<R>],
) -> Result<BVElement<R>> {
    if args.len() != rel.arity() {
        return Err(AlgebraError::SlotMismatch(format!(
            "{} takes {} arguments, got {}",
            rel.id(),
            rel.arity(),
            args.len()
        )));
    }
    let br = |x: &BVElement<R>, y: &BVElement<R>| ops.bracket(x, y);
    let r = match rel {
        Relation::QDerivationMu => q_derivation_residual(ops, &args[0], &args[1]),
        Relation::HomotopyCommutativity => homotopy_commutativity_residual(ops, &args[0], &args[1]),
        Relation::HomotopyAssociativity => homotopy_associativity_residual(ops, &args[0], &args[1], &args[2]),
        Relation::QDerivationBracket => graded2(&args[0], &args[1], |d1, x, _, y| {
            ops.q(&br(x, y))
                .minus(&br(&ops.q(x), y))
                .plus(&br(x, &ops.q(y)).scale_int(sign(d1)))
        }),
        Relation::BracketDerivationMu => graded3(&args[0], &args[1], &args[2], |[d1, d2, _], x, y, z| {
            br(x, &ops.mu(y, z))
                .minus(&ops.mu(&br(x, y), z))
                .minus(&ops.mu(y, &br(x, z)).scale_int(sign((d1 + 1) * d2)))
        }),
        Relation::BDerivationBracket => graded2(&args[0], &args[1], |d1, x, _, y| {
            b(&br(x, y)).minus(&br(&b(x), y)).plus(&br(x, &b(y)).scale_int(sign(d1)))
        }),
        Relation::BracketHomotopySymmetry => graded2(&args[0], &args[1], |d1, x, d2, y| {
            let lhs = br(x, y).plus(&br(y, x).scale_int(sign((d1 + 1) * (d2 + 1))));
            let rhs = ops
                .q(&ops.n(x, y))
                .minus(&ops.n(&ops.q(x), y))
                .minus(&ops.n(x, &ops.q(y)).scale_int(sign(HOMOTOPY_SYMMETRY_SIGN_DEGREE.pick(d1, d2))))
                .scale_int(-sign(d1));
            lhs.minus(&rhs)
        }),
        Relation::Jacobi => graded3(&args[0], &args[1], &args[2], |[d1, d2, _], x, y, z| {
            br(&br(x, y), z)
                .minus(&br(x, &br(y, z)))
                .plus(&br(y, &br(x, z)).scale_int(sign((d1 + 1) * (d2 + 1))))
        }),
        Relation::DerivationUpToHomotopy => graded3(&args[0], &args[1], &args[2], |[d1, d2, d3], x, y, z| {
            let lhs = br(&ops.mu(x, y), z)
                .minus(&ops.mu(x, &br(y, z)))
                .minus(&ops.mu(&br(x, z), y).scale_int(sign((d3 + 1) * d2)));
            let np = |a: &BVElement<R>, bb: &BVElement<R>, c: &BVElement<R>| n_prime(ops, a, bb, c);
            let rhs = ops
                .q(&np(x, y, z))
                .minus(&np(&ops.q(x), y, z))
                .minus(&np(x, &ops.q(y), z).scale_int(sign(d1)))
                .minus(&np(x, y, &ops.q(z)).scale_int(sign(d1 + d2)))
                .scale_int(sign(d1 + d2));
            lhs.minus(&rhs)
        }),
    };
    Ok(r)
}

/// Which argument's degree sets the sign of the last `n` term in the
/// homotopy symmetry of the bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetrySignDegree {
    First,
    Second,
}

impl SymmetrySignDegree {
    fn pick(self, d1: usize, d2: usize) -> usize {
        match self {
            SymmetrySignDegree::First => d1,
            SymmetrySignDegree::Second => d2,
        }
    }
}

pub const HOMOTOPY_SYMMETRY_SIGN_DEGREE: SymmetrySignDegree = SymmetrySignDegree::First;

/// `n'(a1,a2,a3) = mu(a1, n(a2,a3)) - n(mu(a1,a2), a3) + (-1)^{|a2||a3|} mu(n(a1,a3), a2)`.
///
/// The last term pairs `a1` with `a3`, matching the `{a1, a3}` term on the left
/// of the relation; with `mu(n(a1,a2), a3)` the relation fails already at
/// `(A1, A2, u)`.
pub fn n_prime<R: Coeff, O: Operations<R>>(
    ops: &O,
    x: &BVElement<R>,
    y: &BVElement<R>,
    z: &BVElement<R>,
) -> BVElement<R> {
    graded3(x, y, z, |[_, d2, d3], x, y, z| {
        ops.mu(x, &ops.n(y, z))
            .minus(&ops.n(&ops.mu(x, y), z))
            .plus(&ops.mu(&ops.n(x, z), y).scale_int(sign(d2 * d3)))
    })
}

/// `c mu(a1,a2) - (-1)^{|a1|} mu(a1, c a2)` and
/// `c {a1,a2} - (-1)^{|a1|-1} {a1, c a2}`.
pub fn c_compatibility_residuals(x: &BVElement, y: &BVElement) -> [BVElement; 2] {
    use crate::bvcomplex::c;
    let r1 = graded2(x, y, |d1, x, _, y| c(&mu(x, y)).minus(&mu(x, &c(y)).scale_int(sign(d1))));
    let r2 = graded2(x, y, |d1, x, _, y| c(&bracket(x, y)).plus(&bracket(x, &c(y)).scale_int(sign(d1))));
    [r1, r2]
}

/// Cyclic Jacobiator of the antisymmetrized bracket on sections minus `d T`.
pub fn l3_jacobiator_residual<R: Coeff>(a1: &GenSection<R>, a2: &GenSection<R>, a3: &GenSection<R>) -> GenSection<R> {
    let jac = courant(&courant(a1, a2), a3)
        .plus(&courant(&courant(a3, a1), a2))
        .plus(&courant(&courant(a2, a3), a1));
    jac.minus(&crate::sections::exterior_d(&l3_sections(a1, a2, a3)))
}

/// `b[a1,a2,a3] + [ba1,a2,a3] + (-1)^{|a1|}[a1,ba2,a3] + (-1)^{|a1|+|a2|}[a1,a2,ba3]`.
pub fn l3_b_derivation_residual<R: Coeff>(x: &BVElement<R>, y: &BVElement<R>, z: &BVElement<R>) -> BVElement<R> {
    graded3(x, y, z, |[d1, d2, _], x, y, z| {
        b(&l3_bracket(x, y, z))
            .plus(&l3_bracket(&b(x), y, z))
            .plus(&l3_bracket(x, &b(y), z).scale_int(sign(d1)))
            .plus(&l3_bracket(x, y, &b(z)).scale_int(sign(d1 + d2)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvcomplex::{c, project_fc, random_element};
    use crate::scalars::{sample_rng, FourierScalar};
    use crate::sections::{exterior_d, random_section};

    fn e(k: &[i64]) -> FourierScalar {
        FourierScalar::mode(k.to_vec())
    }

    fn one(dim: usize) -> FourierScalar {
        FourierScalar::one(dim)
    }

    fn z(dim: usize) -> FourierScalar {
        FourierScalar::zero(dim)
    }

    fn degree_tuples(arity: usize) -> Vec<Vec<usize>> {
        (0..4usize.pow(arity as u32))
            .map(|code| (0..arity).map(|i| (code >> (2 * i)) & 3).collect())
            .collect()
    }

    fn sample(tag: &str, s: u64, degs: &[usize]) -> Vec<BVElement> {
        let mut rng = sample_rng(11, tag, s);
        degs.iter().map(|&d| random_element(3, 1, d, &mut rng)).collect()
    }

    #[test]
    fn mu_vector_vector_example() {
        let x = BVElement::section1(GenSection::vector(vec![one(2), z(2)]));
        let y = BVElement::section1(GenSection::vector(vec![z(2), e(&[1, 0])]));
        let r = mu(&x, &y);
        let expect = GenSection::vector(vec![z(2), FourierScalar::monomial(vec![1, 0], GaussRational::i())]);
        assert_eq!(r, BVElement::section2(expect));
    }

    #[test]
    fn mu_unit_and_v_v() {
        let mut rng = sample_rng(3, "unit", 0);
        for d in 0..4 {
            let x = random_element(3, 2, d, &mut rng);
            assert_eq!(mu(&BVElement::deg0(one(3)), &x), x);
            assert_eq!(mu(&x, &BVElement::deg0(one(3))), x);
        }
        let v1 = BVElement::scalar1(e(&[1, 0, 0]));
        let v2 = BVElement::scalar1(e(&[0, 2, 1]));
        assert!(mu(&v1, &v2).is_zero());
    }

    #[test]
    fn bracket_on_sections_is_dorfman() {
        for s in 0..5 {
            let mut rng = sample_rng(4, "dorf", s);
            let a1 = random_section(3, 2, &mut rng);
            let a2 = random_section(3, 2, &mut rng);
            let br = bracket(&BVElement::section1(a1.clone()), &BVElement::section1(a2.clone()));
            assert_eq!(br.a, dorfman(&a1, &a2));
        }
    }

    #[test]
    fn bracket_vanishing_cases() {
        let mut rng = sample_rng(4, "vanish", 0);
        let u = crate::scalars::random_scalar(3, 2, &mut rng);
        let a = random_section(3, 2, &mut rng);
        let du = BVElement::section1(exterior_d(&u));
        assert!(bracket(&du, &BVElement::section1(a)).is_zero());
        let u2 = crate::scalars::random_scalar(3, 2, &mut rng);
        assert!(bracket(&BVElement::deg0(u), &BVElement::deg0(u2)).is_zero());
    }

    #[test]
    fn m_and_n() {
        let x = BVElement::section1(GenSection::vector(vec![one(2), z(2)]));
        let y = BVElement::section1(GenSection::covector(vec![one(2), z(2)]));
        assert_eq!(m(&x, &y), BVElement::scalar1(one(2)));
        assert!(m(&x, &BVElement::scalar1(one(2))).is_zero());
        let mut rng = sample_rng(4, "n", 0);
        let a1 = random_section(3, 2, &mut rng);
        let a2 = random_section(3, 2, &mut rng);
        let (x, y) = (BVElement::section1(a1.clone()), BVElement::section1(a2.clone()));
        assert_eq!(n(&x, &y), n(&y, &x));
        assert_eq!(n(&x, &y), BVElement::deg0(pairing(&a1, &a2)));
    }

    #[test]
    fn nu_support() {
        let mut rng = sample_rng(4, "nu", 0);
        let u = random_element(3, 2, 0, &mut rng);
        let a = random_element(3, 2, 1, &mut rng);
        let b2 = random_element(3, 2, 1, &mut rng);
        assert!(nu(&u, &a, &b2).is_zero());
        assert!(nu(&a, &u, &b2).is_zero());
        assert!(nu(&a, &b2, &u).is_zero());
        // the v slot never enters nu
        let v = BVElement::scalar1(e(&[1, 1, 0]));
        assert!(nu(&v, &a, &b2).is_zero());
    }

    #[test]
    fn nu_sym_cell_with_vt_last() {
        let mut rng = sample_rng(4, "nusym", 0);
        let a1 = random_section(3, 1, &mut rng);
        let a2 = random_section(3, 1, &mut rng);
        let vt = crate::scalars::random_scalar(3, 1, &mut rng);
        let r = nu_sym(&BVElement::section1(a1.clone()), &BVElement::section1(a2.clone()), &BVElement::scalar2(vt.clone()));
        let expect = pairing(&a1, &a2).times(&vt).half().scale_int(NU_VT_SIGN);
        assert_eq!(r, BVElement::deg3(expect));
    }

    #[test]
    fn all_relations_on_every_degree_pattern() {
        for rel in Relation::ALL {
            for degs in degree_tuples(rel.arity()) {
                let args = sample(rel.id(), 0, &degs);
                let r = relation_residual(rel, &args).unwrap();
                assert!(r.is_zero(), "{} at {:?}", rel.id(), degs);
            }
        }
    }

    #[test]
    fn relations_on_inhomogeneous_inputs() {
        for rel in Relation::ALL {
            let mut rng = sample_rng(12, rel.id(), 0);
            let args: Vec<BVElement> =
                (0..rel.arity()).map(|_| crate::bvcomplex::random_inhomogeneous(3, 1, &mut rng)).collect();
            assert!(relation_residual(rel, &args).unwrap().is_zero(), "{}", rel.id());
        }
    }

    #[test]
    fn wrong_arity_is_an_error() {
        let x = BVElement::deg0(one(3));
        assert!(relation_residual(Relation::Jacobi, &[x.clone(), x]).is_err());
        assert!(Relation::from_id("nope").is_err());
        assert_eq!(Relation::from_id("jacobi").unwrap(), Relation::Jacobi);
    }

    #[test]
    fn symmetrized_structure_is_c_infinity() {
        let ops = SymmetrizedDouble;
        for degs in degree_tuples(3) {
            let a = sample("cinf", 0, &degs);
            assert!(q_derivation_residual(&ops, &a[0], &a[1]).is_zero());
            assert!(homotopy_associativity_residual(&ops, &a[0], &a[1], &a[2]).is_zero(), "{:?}", degs);
            assert!(shuffle_residual(&ops, &a[0], &a[1], &a[2]).is_zero(), "{:?}", degs);
        }
    }

    #[test]
    fn plain_nu_is_not_shuffle_invariant() {
        let found = (0..4).any(|s| {
            let a = sample("shuffle", s, &[1, 1, 1]);
            !shuffle_residual(&BvDouble, &a[0], &a[1], &a[2]).is_zero()
        });
        assert!(found);
    }

    #[test]
    fn pentagon_on_sections() {
        for i in 0..2 {
            let a = sample("pent", i, &[1, 1, 1, 0]);
            assert!(pentagon_residual(&BvDouble, [&a[0], &a[1], &a[2], &a[3]]).is_zero());
            let a = sample("pent", i, &[1, 1, 1, 1]);
            assert!(pentagon_residual(&BvDouble, [&a[0], &a[1], &a[2], &a[3]]).is_zero());
            assert!(pentagon_residual(&SymmetrizedDouble, [&a[0], &a[1], &a[2], &a[3]]).is_zero());
        }
    }

    #[test]
    fn c_compatibility() {
        for degs in degree_tuples(2) {
            let a = sample("ccompat", 0, &degs);
            for r in c_compatibility_residuals(&a[0], &a[1]) {
                assert!(r.is_zero(), "{:?}", degs);
            }
        }
        let x = BVElement::deg0(e(&[1, 0, 0]));
        assert_eq!(c(&x), BVElement::scalar1(e(&[1, 0, 0])));
    }

    #[test]
    fn l3_jacobiator() {
        for s in 0..4 {
            let mut rng = sample_rng(13, "l3", s);
            let a: Vec<GenSection> = (0..3).map(|_| random_section(3, 1, &mut rng)).collect();
            assert!(l3_jacobiator_residual(&a[0], &a[1], &a[2]).is_zero());
        }
        let k = GenSection::vector(vec![one(3), z(3), one(3)]);
        assert!(l3_sections(&k, &k.form_part(), &GenSection::covector(vec![one(3), one(3), z(3)])).is_zero());
    }

    #[test]
    fn l3_b_derivation() {
        for degs in degree_tuples(3) {
            let a = sample("l3b", 0, &degs);
            assert!(l3_b_derivation_residual(&a[0], &a[1], &a[2]).is_zero(), "{:?}", degs);
        }
    }

    #[test]
    fn l3_support() {
        let a = sample("l3s", 0, &[0, 1, 1]);
        assert!(l3_bracket(&a[0], &a[1], &a[2]).is_zero());
        let a = sample("l3s", 1, &[1, 1, 1]);
        let t = l3_bracket(&a[0], &a[1], &a[2]);
        assert_eq!(t.support(), vec!["u"]);
    }

    #[test]
    fn cyclic_sign_rule() {
        let fc = |tag: &str, s: u64, degs: &[usize]| -> Vec<BVElement> {
            sample(tag, s, degs).iter().map(project_fc).collect()
        };
        for d1 in 0..4 {
            let p = fc("cyc2", d1 as u64, &[d1, 2 - d1.min(2)]);
            assert!(cyclic_sign_residual(&p).unwrap().is_zero());
        }
        for degs in [[1, 1, 1], [0, 1, 2], [2, 1, 0], [0, 0, 3], [1, 0, 2]] {
            let p = fc("cyc3", 0, &degs);
            assert!(cyclic_sign_residual(&p).unwrap().is_zero(), "{:?}", degs);
        }
        for degs in [[1, 1, 1, 1], [1, 1, 1, 0], [0, 1, 1, 1]] {
            let p = fc("cyc4", 0, &degs);
            assert!(cyclic_sign_residual(&p).unwrap().is_zero(), "{:?}", degs);
        }
    }

    #[test]
    fn cyclic_form_rejects_g_component() {
        let a = random_section(3, 1, &mut sample_rng(1, "g", 0));
        let outside = BVElement::deg1(a, e(&[1, 0, 0]));
        let inside = project_fc(&outside);
        assert!(cyclic_form(&[outside, inside.clone()]).is_err());
        assert!(cyclic_form(&[inside]).is_err());
    }
}
