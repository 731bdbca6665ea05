//! Property tests for the algebraic invariants. Random inputs come from the
//! crate's seeded generators; proptest supplies the seeds.

use proptest::prelude::*;
use rand::Rng;

use crossection::bounds::Limits;
use crossection::groebner::{buchberger, ideal_equal, ideal_intersect};
use crossection::ideal::IdealFile;
use crossection::linalg::Matrix;
use crossection::membership::{
    bounded_membership, finite_slice_membership, ideal_membership, BoundedVerdict, SliceVerdict,
};
use crossection::random;
use crossection::reconstruct::{cauchy_interpolate, reconstruct_principal, SectionalData};
use crossection::slicing::{build_dataset, sectional_generator, SliceDataset, SliceMode};
use crossection::{
    parse, primitive_root_of_unity, Error, FieldElement, FieldSpec, Ideal, MonomialOrder, MultiPoly,
    UniPoly,
};

const P: FieldSpec = FieldSpec::Prime(65537);
const Q: FieldSpec = FieldSpec::Rationals;

fn field_of(k: u8) -> FieldSpec {
    match k % 3 {
        0 => Q,
        1 => P,
        _ => FieldSpec::Prime(13),
    }
}

fn data_for(f: &MultiPoly, pts: &[FieldElement], d: u32) -> SectionalData {
    let ds = build_dataset(&Ideal::principal(f.clone()), pts, SliceMode::SectionalGenerators).unwrap();
    SectionalData::from_dataset(&ds, d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>(), k in any::<u8>()) {
        let field = field_of(k);
        let mut rng = random::rng(seed);
        let a = random::element(&mut rng, field);
        let b = random::element(&mut rng, field);
        let c = random::element(&mut rng, field);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert_eq!(a.inv(), Err(Error::DivisionByZero));
        }
        let text = a.to_string();
        prop_assert_eq!(FieldElement::parse(field, &text).unwrap(), a);
    }

    #[test]
    fn roots_of_unity_have_exact_order(k in 1u64..40) {
        for p in [13u64, 29, 65537, 1063] {
            let field = FieldSpec::Prime(p);
            match primitive_root_of_unity(field, k) {
                Ok(w) => {
                    prop_assert!(w.pow(k).is_one());
                    for j in 1..k {
                        prop_assert!(!w.pow(j).is_one());
                    }
                }
                Err(e) => {
                    prop_assert!((p - 1) % k != 0);
                    let is_no_root = matches!(e, Error::NoRootExists { .. });
                    prop_assert!(is_no_root);
                }
            }
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(seed in any::<u64>(), k in any::<u8>()) {
        let field = field_of(k);
        let mut rng = random::rng(seed);
        let f = random::poly(&mut rng, 3, field, 3, 4, false);
        let g = random::poly(&mut rng, 3, field, 3, 4, false);
        let pt: Vec<FieldElement> = (0..3).map(|_| random::element(&mut rng, field)).collect();
        prop_assert_eq!((&f * &g).eval(&pt), &f.eval(&pt) * &g.eval(&pt));
        prop_assert_eq!((&f + &g).eval(&pt), &f.eval(&pt) + &g.eval(&pt));
        let alpha = pt[0].clone();
        prop_assert_eq!((&f * &g).substitute_x1(&alpha), &f.substitute_x1(&alpha) * &g.substitute_x1(&alpha));
    }

    #[test]
    fn linear_change_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let f = random::poly(&mut rng, 2, Q, 3, 5, false);
        let a = random::element(&mut rng, Q);
        let m = Matrix::from_rows(Q, &[vec![FieldElement::one(Q), a.clone()], vec![FieldElement::zero(Q), FieldElement::one(Q)]]).unwrap();
        let inv = Matrix::from_rows(Q, &[vec![FieldElement::one(Q), -&a], vec![FieldElement::zero(Q), FieldElement::one(Q)]]).unwrap();
        let g = f.apply_linear_change(&m).unwrap();
        prop_assert_eq!(g.degree(), f.degree());
        prop_assert_eq!(g.apply_linear_change(&inv).unwrap(), f);
    }

    #[test]
    fn univariate_division_identity(seed in any::<u64>(), k in any::<u8>()) {
        let field = field_of(k);
        let mut rng = random::rng(seed);
        let a = { let n = rng.gen_range(0..6); random::uni_poly(&mut rng, field, n) };
        let b = { let n = rng.gen_range(0..4); random::uni_poly(&mut rng, field, n) };
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(a.rem(&g).unwrap().is_zero() && b.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn cauchy_recovers_random_fractions(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let field = P;
        let num = { let n = rng.gen_range(0..4); random::uni_poly(&mut rng, field, n) };
        let den = { let n = rng.gen_range(0..3); random::uni_poly(&mut rng, field, n) }.monic();
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap());
        let (a, b) = (num.degree().unwrap_or(0) + 1, den.degree().unwrap_or(0) + 1);
        let mut nodes = Vec::new();
        for x in random::distinct_points(&mut rng, field, 40) {
            let dv = den.eval(&x);
            if !dv.is_zero() {
                nodes.push((x.clone(), num.eval(&x).div(&dv).unwrap()));
            }
            if nodes.len() == a + b + 1 {
                break;
            }
        }
        let rf = cauchy_interpolate(&nodes, a, b).unwrap();
        let lead = den.leading_coeff().unwrap().inv().unwrap();
        prop_assert_eq!(rf.den, den.scale(&lead));
        prop_assert_eq!(rf.num, num.scale(&lead));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reconstruction_is_scale_invariant(seed in any::<u64>(), k in any::<u8>()) {
        let field = if k % 2 == 0 { P } else { Q };
        let mut rng = random::rng(seed);
        let d = rng.gen_range(1..=4);
        let f = random::primitive_poly(&mut rng, 2 + (k as usize % 2), field, d);
        let c = random::nonzero_element(&mut rng, field);
        let pts = random::distinct_points(&mut rng, field, 2 * d as usize);
        let a = reconstruct_principal(&data_for(&f, &pts, d)).unwrap();
        let b = reconstruct_principal(&data_for(&f.scale(&c), &pts, d)).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a, f.monic(MonomialOrder::GrlexAll));
    }

    #[test]
    fn reconstruction_ignores_point_choice(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let d = rng.gen_range(1..=4);
        let f = random::primitive_poly(&mut rng, 2, P, d);
        let first = random::distinct_points(&mut rng, P, 2 * d as usize);
        let second = random::distinct_points(&mut rng, P, 2 * d as usize + 1);
        let a = reconstruct_principal(&data_for(&f, &first, d)).unwrap();
        let b = reconstruct_principal(&data_for(&f, &second, d)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn corrupted_slices_are_rejected(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let d = rng.gen_range(2..=4);
        let f = random::primitive_poly(&mut rng, 2, P, d);
        let pts = random::distinct_points(&mut rng, P, 2 * d as usize + 4);
        let mut data = data_for(&f, &pts, d);
        let e = f.multideg_y().unwrap();
        let active: Vec<usize> = (0..data.points.len())
            .filter(|&k| data.points[k].1.multideg_y().as_ref() == Some(&e))
            .collect();
        let k = active[rng.gen_range(0..active.len())];
        let bump = MultiPoly::constant(2, random::nonzero_element(&mut rng, P));
        data.points[k].1 = &data.points[k].1 + &bump;
        let out = reconstruct_principal(&data);
        let rejected = matches!(out, Err(Error::VerificationFailed(_)));
        prop_assert!(rejected, "{:?}", out);
    }

    #[test]
    fn non_primitive_witness(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let pts = random::distinct_points(&mut rng, P, 7);
        let (beta, sample) = pts.split_last().unwrap();
        let f = parse("x1*x2 + 1", 2, P).unwrap();
        let factor = &MultiPoly::var(2, P, 0) - &MultiPoly::constant(2, beta.clone());
        let star = &factor * &f;
        let a = data_for(&star, &sample[..6], 3);
        let b = data_for(&f, &sample[..6], 3);
        prop_assert_eq!(&a.points, &b.points);
        prop_assert_eq!(reconstruct_principal(&a).unwrap(), f);
    }

    #[test]
    fn groebner_is_order_independent(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let gens: Vec<MultiPoly> = (0..3).map(|_| random::poly(&mut rng, 2, P, 2, 3, true)).collect();
        let mut rev = gens.clone();
        rev.reverse();
        let a = buchberger(&Ideal::new(gens.clone()).unwrap()).unwrap();
        let b = buchberger(&Ideal::new(rev).unwrap()).unwrap();
        let c = buchberger(&Ideal::new(gens).unwrap()).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert_eq!(a.basis(), c.basis());
    }

    #[test]
    fn intersection_commutes_and_is_idempotent(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let i = Ideal::new(vec![random::poly(&mut rng, 2, P, 2, 3, true)]).unwrap();
        let j = Ideal::new(vec![random::poly(&mut rng, 2, P, 1, 2, true), random::poly(&mut rng, 2, P, 2, 2, true)]).unwrap();
        let ij = ideal_intersect(&i, &j).unwrap();
        let ji = ideal_intersect(&j, &i).unwrap();
        prop_assert!(ideal_equal(&ij, &ji).unwrap());
        prop_assert!(ideal_equal(&ideal_intersect(&i, &i).unwrap(), &i).unwrap());
    }

    #[test]
    fn normal_form_matches_linear_decision(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let gens: Vec<MultiPoly> = (0..2).map(|_| { let n = rng.gen_range(1..=2); random::poly(&mut rng, 2, P, n, 3, true) }).collect();
        let ideal = Ideal::new(gens.clone()).unwrap();
        let f = if rng.gen_bool(0.5) {
            &(&random::poly(&mut rng, 2, P, 1, 2, false) * &gens[0]) + &(&random::poly(&mut rng, 2, P, 1, 2, false) * &gens[1])
        } else {
            random::poly(&mut rng, 2, P, 3, 4, false)
        };
        let oracle = buchberger(&ideal).unwrap().contains(&f);
        let verdict = ideal_membership(&f, &ideal, &Limits::default()).unwrap();
        prop_assert_eq!(verdict.is_in(), oracle);
    }

    #[test]
    fn bounded_membership_is_monotone(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let gens: Vec<MultiPoly> = (0..2).map(|_| random::poly(&mut rng, 2, P, 2, 3, true)).collect();
        let ideal = Ideal::new(gens.clone()).unwrap();
        let f = &(&random::poly(&mut rng, 2, P, 2, 3, false) * &gens[0]) + &gens[1];
        let mut seen = false;
        for d in 0..7 {
            let found = matches!(bounded_membership(&f, &ideal, d, &Limits::default()).unwrap(), BoundedVerdict::In(_));
            prop_assert!(!seen || found);
            seen |= found;
        }
    }

    #[test]
    fn members_pass_every_slice(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let gens: Vec<MultiPoly> = (0..2).map(|_| random::poly(&mut rng, 3, P, 1, 3, true)).collect();
        let ideal = Ideal::new(gens.clone()).unwrap();
        let f = gens.iter().fold(MultiPoly::zero(3, P), |acc, g| &acc + &(&random::poly(&mut rng, 3, P, 1, 3, false) * g));
        let pts = random::distinct_points(&mut rng, P, 5);
        let v = finite_slice_membership(&f, &ideal, &pts, &Limits::default()).unwrap();
        let passes = matches!(v, SliceVerdict::SampleTooSmall { passes: 5, .. } | SliceVerdict::In);
        prop_assert!(passes, "{:?}", v);
    }

    #[test]
    fn files_round_trip(seed in any::<u64>(), k in any::<u8>()) {
        let field = field_of(k);
        let mut rng = random::rng(seed);
        let gens: Vec<MultiPoly> = (0..2).map(|_| random::poly(&mut rng, 3, field, 2, 3, false)).collect();
        let ideal = Ideal::new(gens).unwrap();
        let text = ideal.to_file().to_json();
        let back = IdealFile::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text.clone());
        prop_assert_eq!(back.to_ideal().unwrap(), ideal.clone());

        let count = if field == FieldSpec::Prime(13) { 5 } else { 6 };
        let pts = random::distinct_points(&mut rng, field, count);
        let ds = build_dataset(&ideal, &pts, SliceMode::FullSlices).unwrap();
        let text = ds.to_json();
        let back = SliceDataset::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, ds);
    }

    #[test]
    fn sectional_generator_is_normalized(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let f = random::poly(&mut rng, 3, Q, 3, 5, false);
        let alpha = random::element(&mut rng, Q);
        let g = sectional_generator(&f, &alpha).unwrap();
        prop_assert!(g.terms().all(|(m, _)| m.exponents()[0] == 0));
        match g.leading_term(MonomialOrder::GrlexY) {
            Some((_, c)) => prop_assert!(c.is_one()),
            None => prop_assert!(f.substitute_x1(&alpha).is_zero()),
        }
    }
}

#[test]
fn univariate_zero_division_errors() {
    let z = UniPoly::zero(Q);
    assert!(matches!(UniPoly::one(Q).div_rem(&z), Err(Error::DivisionByZero)));
}
