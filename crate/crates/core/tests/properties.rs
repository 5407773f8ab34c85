//! Property tests for the structural invariants. Random structures are drawn
//! from seeded streams so that shrinking acts on the seed.

use proptest::prelude::*;

use bvdouble::bvcomplex::{b, c, is_in_fc, project_fc, project_g, q, random_element, random_inhomogeneous};
use bvdouble::bvops::{cyclic_sign_residual, relation_residual, Relation};
use bvdouble::deform::ym::{mc_residual, random_psi};
use bvdouble::deform::{random_matrix, FlatDeformation};
use bvdouble::doublecopy::{
    bivector_mc_residual, c_bracket, delta_minus, double_bracket, random_doubled, Bivector, DoubledScalar,
};
use bvdouble::exterior::{dform, hodge, random_form, wedge};
use bvdouble::scalars::{parse_rational, random_gauss, random_scalar, sample_rng};
use bvdouble::sections::{courant_axiom_residuals, cy_axiom_residuals, random_section};
use bvdouble::{Coeff, FourierScalar, GaussRational, Metric};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn rationals_are_reduced(p in -50i64..50, q in 1i64..50, k in 1i64..7) {
        let a = GaussRational::from_ratio(p * k, q * k);
        prop_assert_eq!(&a, &GaussRational::from_ratio(p, q));
        prop_assert!(a.re.denom() > &0.into());
        prop_assert_eq!(parse_rational(&format!("{}/{}", p * k, q * k)).unwrap(), a.re);
    }

    #[test]
    fn fourier_scalars_store_no_zeros(seed: u64) {
        let mut rng = sample_rng(seed, "prop.fourier", 0);
        let f = random_scalar(3, 2, &mut rng);
        let g = random_scalar(3, 2, &mut rng);
        for h in [&f - &f, &f * &g, &f + &g, f.partial(1)] {
            prop_assert!(h.terms().iter().all(|(m, c)| !c.is_zero() && m.len() == 3));
        }
        // support of a product sits in the Minkowski sum of supports
        for m in (&f * &g).terms().keys() {
            prop_assert!(f.terms().keys().any(|a| g.terms().contains_key(&m.iter().zip(a).map(|(x, y)| x - y).collect::<Vec<_>>())));
        }
    }

    #[test]
    fn courant_and_cy_axioms(seed: u64) {
        let mut rng = sample_rng(seed, "prop.courant", 0);
        let a: Vec<_> = (0..3).map(|_| random_section(3, 1, &mut rng)).collect();
        let u: Vec<_> = (0..3).map(|_| random_scalar(3, 1, &mut rng)).collect();
        prop_assert!(courant_axiom_residuals(&a[0], &a[1], &a[2], &u[0], &u[1], &u[2]).iter().all(|r| r.is_zero()));
        prop_assert!(cy_axiom_residuals(&u[0], &a[0], &a[1]).iter().all(Coeff::is_zero));
    }

    #[test]
    fn complex_operators(seed: u64) {
        let mut rng = sample_rng(seed, "prop.complex", 0);
        let x = random_inhomogeneous(3, 1, &mut rng);
        prop_assert!(q(&q(&x)).is_zero());
        prop_assert!(b(&b(&x)).is_zero());
        prop_assert_eq!(b(&c(&x)).plus(&c(&b(&x))), x.clone());
        prop_assert!(is_in_fc(&project_fc(&x)));
        prop_assert_eq!(project_fc(&x).plus(&project_g(&x)), x);
    }

    #[test]
    fn degree_is_preserved_by_q(seed: u64, deg in 0usize..3) {
        let mut rng = sample_rng(seed, "prop.degree", 0);
        let x = random_element(3, 1, deg, &mut rng);
        let y = q(&x);
        prop_assert!(y.is_zero() || y.homogeneous_degree() == Some(deg + 1));
    }
}

proptest! {
    #![proptest_config(cases(8))]

    #[test]
    fn bvlz_relations(seed: u64) {
        for rel in Relation::ALL {
            let mut rng = sample_rng(seed, rel.id(), 0);
            let args: Vec<_> = (0..rel.arity()).map(|_| random_inhomogeneous(3, 1, &mut rng)).collect();
            prop_assert!(relation_residual(rel, &args).unwrap().is_zero(), "{}", rel.id());
        }
    }

    #[test]
    fn cyclic_sign_on_fc(seed: u64, d1 in 0usize..3) {
        let mut rng = sample_rng(seed, "prop.cyclic", 0);
        let x = project_fc(&random_element(3, 1, d1, &mut rng));
        let y = project_fc(&random_element(3, 1, 3 - d1, &mut rng));
        let z = project_fc(&random_element(3, 1, 0, &mut rng));
        prop_assert!(cyclic_sign_residual(&[x, y, z]).unwrap().is_zero());
    }

    #[test]
    fn flat_deformation_squares_to_zero(seed: u64) {
        let mut rng = sample_rng(seed, "prop.deform", 0);
        let def = FlatDeformation::from_metric(&Metric::lorentzian(3));
        let x = random_inhomogeneous(3, 1, &mut rng);
        prop_assert!(def.r_squared(&x).is_zero());
        prop_assert!(def.q_r_anticommutator(&x).is_zero());
        prop_assert!(def.q_eta(&def.q_eta(&x)).is_zero());
    }

    #[test]
    fn lie_valued_elements_keep_their_shape(seed: u64) {
        let mut rng = sample_rng(seed, "prop.lie", 0);
        let def = FlatDeformation::from_metric(&Metric::lorentzian(3));
        let psi = random_psi(3, 2, 1, &mut rng);
        prop_assert_eq!(psi.shape(), (3, 2));
        let m = random_matrix(3, 2, 1, &mut rng);
        let n = random_matrix(3, 2, 1, &mut rng);
        prop_assert_eq!(m.commutator(&n).shape(), (3, 2));
        prop_assert_eq!(mc_residual(&def, &psi).unwrap().shape(), (3, 2));
    }
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn exterior_algebra(seed: u64, p in 0usize..=3, r in 0usize..=3) {
        let mut rng = sample_rng(seed, "prop.forms", 0);
        let a = random_form(3, p, 1, &mut rng);
        let bf = random_form(3, r, 1, &mut rng);
        prop_assert!(dform(&dform(&a)).is_zero());
        let sign = GaussRational::from_int(if p * r % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(wedge(&a, &bf), wedge(&bf, &a).scale(&sign));
        if p + r <= 3 {
            prop_assert_eq!(wedge(&a, &bf).degree(), p + r);
        }
        let eta = Metric::lorentzian(3);
        let star = hodge(&a, &eta).unwrap();
        prop_assert_eq!(star.degree(), 3 - p);
    }

    #[test]
    fn c_bracket_antisymmetric(seed: u64) {
        let mut rng = sample_rng(seed, "prop.cbracket", 0);
        let eta = Metric::lorentzian(3);
        let a: Vec<FourierScalar> = (0..3).map(|_| random_scalar(3, 1, &mut rng)).collect();
        let bv: Vec<FourierScalar> = (0..3).map(|_| random_scalar(3, 1, &mut rng)).collect();
        let ab = c_bracket(&a, &bv, &eta);
        let ba = c_bracket(&bv, &a, &eta);
        prop_assert!(ab.iter().zip(&ba).all(|(x, y)| x.plus(y).is_zero()));
    }

    #[test]
    fn delta_minus_eigenvalue(k in proptest::collection::vec(-3i64..=3, 2), kt in proptest::collection::vec(-3i64..=3, 2)) {
        let f = DoubledScalar::mode(&k, &kt, GaussRational::one()).unwrap();
        let dot: i64 = k.iter().zip(&kt).map(|(a, b)| a * b).sum();
        prop_assert_eq!(f.inner().dim(), 4);
        prop_assert_eq!(delta_minus(&f), f.scale(&GaussRational::from_int(-2 * dot)));
    }

    #[test]
    fn double_bracket_symmetric_and_dilaton_shift(seed: u64) {
        let mut rng = sample_rng(seed, "prop.double", 0);
        let mut biv = || Bivector::new((0..2).map(|_| (0..2).map(|_| random_doubled(2, 1, &mut rng)).collect()).collect()).unwrap();
        let g = biv();
        let h = biv();
        prop_assert_eq!(double_bracket(&g, &h), double_bracket(&h, &g));
        let mut rng = sample_rng(seed, "prop.dilaton", 0);
        let phi = random_doubled(2, 1, &mut rng);
        let shifted = phi.plus(&DoubledScalar::constant(2, random_gauss(&mut rng)));
        prop_assert_eq!(bivector_mc_residual(&g, &phi), bivector_mc_residual(&g, &shifted));
    }
}
