use std::sync::Arc;

use super::*;
use crate::lattice::{Element, Lattice};
use crate::topoframe::{validate_topoframe, Topoframe};

fn b2() -> Arc<Topoframe> {
    Topoframe::discrete(Arc::new(Lattice::powerset(2).unwrap()))
}

fn el(tf: &Topoframe, s: &str) -> Element {
    tf.lattice().element_by_label(s).unwrap()
}

fn q(n: i64) -> Rational {
    rational(n, 1)
}

fn func(tf: &Arc<Topoframe>, pieces: &[(Rational, &str)]) -> StepFunction {
    StepFunction::new(tf, pieces.iter().map(|(v, s)| (v.clone(), el(tf, s)))).unwrap()
}

/// f = 2 on {1}, 0 on {2}
fn f_b2(tf: &Arc<Topoframe>) -> StepFunction {
    func(tf, &[(q(2), "{1}"), (q(0), "{2}")])
}

#[test]
fn constants() {
    let tf = b2();
    let zero = StepFunction::zero(&tf);
    assert_eq!(zero.pieces(), [Piece { value: q(0), carrier: tf.lattice().top() }]);
    let one = StepFunction::one(&tf);
    assert_eq!(one.zero_of(), tf.lattice().bottom());
    let five = StepFunction::constant(&tf, q(5));
    assert_eq!(five.zero_of(), tf.lattice().bottom());
    assert_eq!(five.coz_of(), tf.lattice().top());
    assert_eq!(five.evaluate(&SetDescriptor::point(q(5))), tf.lattice().top());
    assert_eq!(five.evaluate(&SetDescriptor::point(q(4))), tf.lattice().bottom());
    assert_eq!(zero.zero_of(), tf.lattice().top());
}

#[test]
fn evaluate_examples() {
    let tf = b2();
    let f = f_b2(&tf);
    assert_eq!(f.evaluate(&SetDescriptor::point(q(0))), el(&tf, "{2}"));
    assert_eq!(f.evaluate(&SetDescriptor::Reals), tf.lattice().top());
    assert_eq!(f.evaluate(&SetDescriptor::Empty), tf.lattice().bottom());
    assert_eq!(f.evaluate(&"(1,3)".parse().unwrap()), el(&tf, "{1}"));
    assert!(f.continuity_cross_check(&f.cut_points()));
}

#[test]
fn ring_op_examples() {
    let tf = b2();
    let f = f_b2(&tf);
    let g = func(&tf, &[(q(3), "{1}"), (q(5), "{2}")]);
    assert_eq!(f.add(&g).unwrap(), StepFunction::constant(&tf, q(5)));
    assert_eq!(f.mul(&StepFunction::one(&tf)).unwrap(), f);
    let fg = f.mul(&g).unwrap();
    assert_eq!(fg.to_literal(), "0@{2} ; 6@{1}");
    assert_eq!(f.min(&g).unwrap().to_literal(), "0@{2} ; 2@{1}");
    assert_eq!(f.max(&g).unwrap().to_literal(), "3@{1} ; 5@{2}");
    assert_eq!(f.negate().to_literal(), "-2@{1} ; 0@{2}");
    assert_eq!(f.negate().abs(), f);
    assert_eq!(f.scalar(&rational(1, 2)).to_literal(), "0@{2} ; 1@{1}");
}

#[test]
fn zero_and_cozero() {
    let tf = b2();
    let f = f_b2(&tf);
    assert_eq!(f.zero_of(), el(&tf, "{2}"));
    assert_eq!(f.coz_of(), el(&tf, "{1}"));
    assert_eq!(f.coz_of(), f.evaluate(&SetDescriptor::nonzero()));
    assert_eq!(tf.lattice().complement_of(f.coz_of()).unwrap(), f.zero_of());
}

#[test]
fn construction_rejects_bad_partitions() {
    let tf = b2();
    let l = tf.lattice();
    let top = l.top();
    let one = el(&tf, "{1}");
    assert!(matches!(
        StepFunction::new(&tf, [(q(1), top), (q(2), one)]),
        Err(RealFunError::OverlappingCarriers(..))
    ));
    assert!(matches!(
        StepFunction::new(&tf, [(q(1), one)]),
        Err(RealFunError::NotCovering(_))
    ));
    let c = Topoframe::indiscrete(l.clone());
    assert!(matches!(
        StepFunction::new(&c, [(q(2), one), (q(0), el(&tf, "{2}"))]),
        Err(RealFunError::CarrierNotOpen(s)) if s == "{1}"
    ));
    let other = Lattice::powerset(2).unwrap();
    assert_eq!(
        StepFunction::new(&tf, [(q(1), other.top())]).unwrap_err(),
        RealFunError::ForeignElement
    );
    // equal values merge, ⊥ carriers vanish
    let merged = StepFunction::new(&tf, [(q(7), one), (q(7), el(&tf, "{2}")), (q(3), l.bottom())]).unwrap();
    assert_eq!(merged, StepFunction::constant(&tf, q(7)));
}

#[test]
fn mixed_topoframes() {
    let tf = b2();
    let c = Topoframe::indiscrete(tf.lattice().clone());
    let f = StepFunction::one(&tf);
    let g = StepFunction::one(&c);
    assert_eq!(f.add(&g).unwrap_err(), RealFunError::MixedTopoframes);
    // a second validation of the same data is the same space
    let again = validate_topoframe(tf.lattice().clone(), tf.opens()).unwrap();
    assert!(f.add(&StepFunction::one(&again)).is_ok());
}

#[test]
fn characteristic_examples() {
    let tf = b2();
    let a = el(&tf, "{1}");
    let fa = characteristic(&tf, a).unwrap();
    assert_eq!(fa.to_literal(), "0@{2} ; 1@{1}");
    let fa_c = characteristic(&tf, el(&tf, "{2}")).unwrap();
    assert!(fa.add(&fa_c).unwrap().is_one());
    assert_eq!(fa.mul(&fa).unwrap(), fa);
    assert_eq!(fa.zero_of(), el(&tf, "{2}"));
    assert!(characteristic(&tf, tf.lattice().top()).unwrap().is_one());
    assert!(characteristic(&tf, tf.lattice().bottom()).unwrap().is_zero());

    let s3 = {
        let l = Arc::new(Lattice::powerset(3).unwrap());
        let tau: Vec<Element> = ["{}", "{1}", "{2}", "{1,2}", "{1,2,3}"]
            .iter()
            .map(|s| l.element_by_label(s).unwrap())
            .collect();
        validate_topoframe(l, &tau).unwrap()
    };
    assert_eq!(
        characteristic(&s3, el(&s3, "{1}")).unwrap_err(),
        RealFunError::NotClopen("{1}".into())
    );
}

#[test]
fn absorb_examples() {
    let tf = b2();
    let r = absorb_laws(&tf, &[StepFunction::one(&tf)]).unwrap();
    assert_eq!(r.a, tf.lattice().top());
    assert!(r.holds());
    let r = absorb_laws(&tf, &[f_b2(&tf)]).unwrap();
    assert_eq!(r.a, el(&tf, "{1}"));
    assert!(r.holds());
    let r = absorb_laws(&tf, &[StepFunction::zero(&tf)]).unwrap();
    assert_eq!(r.a, tf.lattice().bottom());
    assert!(r.holds());
    let r = absorb_laws(&tf, &[]).unwrap();
    assert_eq!(r.a, tf.lattice().bottom());
    assert!(r.holds());
}

#[test]
fn units_and_zero_divisors() {
    let tf = b2();
    match StepFunction::one(&tf).divisibility() {
        Divisibility::Unit { inverse } => assert!(inverse.is_one()),
        other => panic!("{other:?}"),
    }
    let f = f_b2(&tf);
    match f.divisibility() {
        Divisibility::ZeroDivisor { witness } => {
            assert_eq!(witness, characteristic(&tf, el(&tf, "{2}")).unwrap());
            assert!(f.mul(&witness).unwrap().is_zero());
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(StepFunction::zero(&tf).divisibility(), Divisibility::Zero);
    let g = func(&tf, &[(rational(-3, 2), "{1}"), (q(4), "{2}")]);
    let inv = g.inverse().unwrap();
    assert!(g.mul(&inv).unwrap().is_one());
    assert_eq!(inv.to_literal(), "-2/3@{1} ; 1/4@{2}");
}

#[test]
fn quasi_inverse_examples() {
    let tf = b2();
    let f = f_b2(&tf);
    let g = quasi_inverse(&f);
    assert_eq!(g.to_literal(), "0@{2} ; 1/2@{1}");
    assert_eq!(f.square().to_literal(), "0@{2} ; 4@{1}");
    assert_eq!(g.mul(&f.square()).unwrap(), f);
    assert_eq!(g.zero_of(), f.zero_of());
    assert!(quasi_inverse(&StepFunction::one(&tf)).is_one());
    assert!(quasi_inverse(&StepFunction::zero(&tf)).is_zero());
}

#[test]
fn idempotent_normal_forms() {
    let tf = b2();
    assert_eq!(idempotent_normal_form(&StepFunction::one(&tf)).unwrap(), tf.lattice().top());
    assert_eq!(idempotent_normal_form(&StepFunction::zero(&tf)).unwrap(), tf.lattice().bottom());
    let e = func(&tf, &[(q(1), "{1}"), (q(0), "{2}")]);
    assert_eq!(idempotent_normal_form(&e).unwrap(), el(&tf, "{1}"));
    assert!(matches!(
        idempotent_normal_form(&f_b2(&tf)),
        Err(RealFunError::NotIdempotent(_))
    ));
}

#[test]
fn unit_and_idempotent() {
    let tf = b2();
    let one = StepFunction::one(&tf);
    let (u, e) = unit_and_idempotent_from_regular(&one, &one).unwrap();
    assert!(u.is_one() && e.is_one());
    let zero = StepFunction::zero(&tf);
    let (u, e) = unit_and_idempotent_from_regular(&zero, &zero).unwrap();
    assert!(u.is_one() && e.is_zero());
    let a = f_b2(&tf);
    let (u, e) = unit_and_idempotent_from_regular(&a, &quasi_inverse(&a)).unwrap();
    assert!(u.is_unit());
    assert_eq!(e, characteristic(&tf, el(&tf, "{1}")).unwrap());
    assert_eq!(a.mul(&u).unwrap(), e);
    assert!(matches!(
        unit_and_idempotent_from_regular(&a, &one),
        Err(RealFunError::PreconditionFailed(_))
    ));
}

#[test]
fn separating_examples() {
    let tf = b2();
    let f = f_b2(&tf);
    let f2 = characteristic(&tf, el(&tf, "{2}")).unwrap();
    let h = separating_element(&tf, &[f.clone()], &[f2.clone()]).unwrap();
    assert_eq!(h, f);
    assert_eq!(h.mul(&f).unwrap(), f.square());
    assert!(h.mul(&f2).unwrap().is_zero());

    let one = StepFunction::one(&tf);
    assert!(separating_element(&tf, &[one.clone()], &[]).unwrap().is_one());
    assert!(separating_element(&tf, &[], &[one.clone()]).unwrap().is_zero());
    assert!(separating_element_ed(&tf, &[one.clone()], &[]).unwrap().is_one());

    let f1 = characteristic(&tf, el(&tf, "{1}")).unwrap();
    let h = separating_element_ed(&tf, &[f1.clone()], &[f2.clone()]).unwrap();
    assert_eq!(h, f1);
    assert_eq!(h, separating_element(&tf, &[f1.clone()], &[f2.clone()]).unwrap());

    assert!(matches!(
        separating_element(&tf, &[f.clone()], &[f.clone()]),
        Err(RealFunError::NotOrthogonal(..))
    ));
    assert!(matches!(
        separating_element(&tf, &[f1.clone(), one.clone()], &[]),
        Err(RealFunError::NotOrthogonal(..))
    ));
}

#[test]
fn ed_variant_requires_ed_ambient_frame() {
    // downsets of a < c, b < c: {a}* = {b} and {a}** = {a}, join {a,b} ≠ ⊤
    let poset = crate::lattice::Poset::new(3, &[(0, 2), (1, 2)]).unwrap();
    let l = Arc::new(Lattice::birkhoff(&poset).unwrap());
    assert_eq!(l.extremally_disconnected_counterexample(), l.element_by_label("{1}"));
    let tf = Topoframe::discrete(l);
    assert_eq!(
        separating_element_ed(&tf, &[], &[]).unwrap_err(),
        RealFunError::EdHypothesisFailed("{1}".into())
    );
    assert!(separating_element(&tf, &[], &[]).unwrap().is_zero());
}

#[test]
fn countable_coz_join_examples() {
    let tf = b2();
    let zero = StepFunction::zero(&tf);
    let one = StepFunction::one(&tf);
    assert!(countable_coz_join(&tf, &[zero.clone()]).unwrap().is_zero());
    assert!(countable_coz_join(&tf, &[one.clone(), zero]).unwrap().is_one());
    let f1 = characteristic(&tf, el(&tf, "{1}")).unwrap();
    let f2 = characteristic(&tf, el(&tf, "{2}")).unwrap();
    let j = countable_coz_join(&tf, &[f1, f2]).unwrap();
    assert!(j.is_one());
}

#[test]
fn atom_values_and_back() {
    let tf = b2();
    let f = f_b2(&tf);
    assert_eq!(f.atom_values(), vec![q(2), q(0)]);
    assert_eq!(StepFunction::from_atom_values(&tf, &f.atom_values()).unwrap(), f);
    assert!(StepFunction::from_atom_values(&tf, &[q(1)]).is_err());
}

#[test]
fn sampler_is_deterministic() {
    let tf = b2();
    let a: Vec<String> = sampling::FunctionSampler::new(&tf, 7).functions(20).iter().map(|f| f.to_literal()).collect();
    let b: Vec<String> = sampling::FunctionSampler::new(&tf, 7).functions(20).iter().map(|f| f.to_literal()).collect();
    assert_eq!(a, b);
    let all = sampling::exhaustive_over_pool(&tf, &sampling::value_pool(), 100).unwrap();
    assert_eq!(all.len(), 64);
}
