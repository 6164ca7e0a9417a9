//! Randomized laws: ring axioms, star structure, functional identities, and
//! printer/parser agreement, over generated elements with exact coefficients.

use num::BigRational;
use proptest::prelude::*;

use rotalg::algebra::std_gens;
use rotalg::{
    chern_character, parse_element, trace_value, AlgebraContext, ClockShift, GaussianRational,
    NcElement, PhaseScalar, TraceId,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn phase_scalar() -> impl Strategy<Value = PhaseScalar> {
    proptest::collection::vec((-5i64..=5, gaussian()), 1..3).prop_map(|terms| {
        terms
            .into_iter()
            .fold(PhaseScalar::zero(), |acc, (k, c)| acc + PhaseScalar::single(k, c))
    })
}

fn element() -> impl Strategy<Value = NcElement> {
    proptest::collection::vec(((-4i64..=4, -4i64..=4), phase_scalar()), 1..4).prop_map(|terms| {
        let ctx = AlgebraContext::standard();
        terms.into_iter().fold(NcElement::zero(ctx), |acc, ((m, n), c)| {
            acc.try_add(&NcElement::monomial(ctx, m, n, c)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(x in element(), y in element(), z in element()) {
        let xy = x.try_mul(&y).unwrap();
        let yz = y.try_mul(&z).unwrap();
        prop_assert_eq!(xy.try_mul(&z).unwrap(), x.try_mul(&yz).unwrap());
    }

    #[test]
    fn multiplication_distributes(x in element(), y in element(), z in element()) {
        let lhs = x.try_mul(&y.try_add(&z).unwrap()).unwrap();
        let rhs = x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_reverses_products(x in element(), y in element()) {
        let lhs = x.try_mul(&y).unwrap().adjoint();
        let rhs = y.adjoint().try_mul(&x.adjoint()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn flip_is_a_star_automorphism(x in element(), y in element()) {
        prop_assert_eq!(
            x.try_mul(&y).unwrap().flip(),
            x.flip().try_mul(&y.flip()).unwrap()
        );
        prop_assert_eq!(x.adjoint().flip(), x.flip().adjoint());
        prop_assert_eq!(x.flip().flip(), x.clone());
        let sym = x.try_add(&x.flip()).unwrap();
        prop_assert!(sym.is_flip_invariant());
    }

    #[test]
    fn scalar_evaluation_is_multiplicative(a in phase_scalar(), b in phase_scalar()) {
        let theta = std::f64::consts::SQRT_2 - 1.0;
        let lhs = (&a * &b).eval(theta);
        let rhs = a.eval(theta) * b.eval(theta);
        let scale = 1.0 + lhs.norm().max(rhs.norm());
        prop_assert!((lhs - rhs).norm() <= 1e-9 * scale);
    }

    #[test]
    fn tau_is_tracial(x in element(), y in element()) {
        let xy = trace_value(TraceId::Tau, &x.try_mul(&y).unwrap()).unwrap();
        let yx = trace_value(TraceId::Tau, &y.try_mul(&x).unwrap()).unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn functionals_are_flip_invariant_and_linear(x in element(), y in element()) {
        for (j, k) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let id = TraceId::phi(j, k);
            prop_assert_eq!(
                trace_value(id, &x).unwrap(),
                trace_value(id, &x.flip()).unwrap()
            );
            let sum = trace_value(id, &x.try_add(&y).unwrap()).unwrap();
            let split = trace_value(id, &x).unwrap() + trace_value(id, &y).unwrap();
            prop_assert_eq!(sum, split);
        }
        let cx = chern_character(&x).unwrap();
        let csum = chern_character(&x.try_add(&y).unwrap()).unwrap();
        let cy = chern_character(&y).unwrap();
        prop_assert_eq!(csum.tau, cx.tau + cy.tau);
    }

    #[test]
    fn monomial_powers_match_iterated_products(
        k in -3i64..=3,
        l in -3i64..=3,
        m in -4i64..=4,
    ) {
        let x = std_gens::monomial(k, l);
        let closed = x.power(m).unwrap();
        let mut iterated = NcElement::one(AlgebraContext::standard());
        let step = if m < 0 { x.power(-1).unwrap() } else { x };
        for _ in 0..m.abs() {
            iterated = iterated.try_mul(&step).unwrap();
        }
        prop_assert_eq!(closed, iterated);
    }

    #[test]
    fn printed_elements_reparse_exactly(x in element()) {
        let text = x.to_string();
        let back = parse_element(&text).unwrap();
        prop_assert_eq!(back, x, "printed form: {}", text);
    }

    #[test]
    fn finite_model_respects_products(x in element(), y in element()) {
        let model = ClockShift::new(2, 5).unwrap();
        let symbolic = model.rep(&x.try_mul(&y).unwrap());
        let numeric = model.rep(&x).mul(&model.rep(&y));
        prop_assert!(symbolic.frobenius_distance(&numeric) <= 1e-9);
    }
}
