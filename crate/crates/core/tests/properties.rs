use std::cmp::Ordering;

use proptest::prelude::*;

use qsl2::cyclo::CycRat;
use qsl2::hopf::{build_finite_model, grouplikes, Evaluator, FiniteModel};
use qsl2::ncalg::{NCPoly, Word};
use qsl2::presentations::{classical_sl2, oq_sl2, NamedAlgebra};
use qsl2::subgroups::{
    construct_quotient, datum_equiv, dihedral_quotient, CatalogGroup, DatumParity, EmbeddingSpec, GroupSpec,
    SubgroupDatum,
};

const FIELD: u32 = 5;

fn scalar(coeffs: &[i64]) -> CycRat {
    coeffs
        .iter()
        .enumerate()
        .fold(CycRat::zero(FIELD), |acc, (i, &c)| &acc + &(&CycRat::from_int(FIELD, c) * &CycRat::q_power(FIELD, i as i64)))
}

fn arb_scalar() -> impl Strategy<Value = CycRat> {
    prop::collection::vec(-3i64..=3, 4).prop_map(|v| scalar(&v))
}

fn arb_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..4, 0..=max).prop_map(Word)
}

fn arb_poly(alg: &'static NamedAlgebra) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((arb_word(3), arb_scalar()), 0..4)
        .prop_map(move |ts| NCPoly::from_terms(alg.ctx(), ts))
}

fn oq5() -> &'static NamedAlgebra {
    use std::sync::OnceLock;
    static A: OnceLock<NamedAlgebra> = OnceLock::new();
    A.get_or_init(|| oq_sl2(FIELD).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), CycRat::one(FIELD));
        }
    }

    #[test]
    fn free_product_is_associative(p in arb_poly(oq5()), q in arb_poly(oq5()), r in arb_poly(oq5())) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn word_order_is_total_and_monomial(u in arb_word(4), v in arb_word(4), w in arb_word(3)) {
        for ctx in [oq5().ctx().clone(), classical_sl2().ctx().clone()] {
            let c = ctx.cmp_words(&u, &v);
            prop_assert_eq!(c, ctx.cmp_words(&v, &u).reverse());
            prop_assert_eq!(c == Ordering::Equal, u == v);
            prop_assert_eq!(ctx.cmp_words(&w.concat(&u), &w.concat(&v)), c);
            prop_assert_eq!(ctx.cmp_words(&u.concat(&w), &v.concat(&w)), c);
            if !w.is_empty() {
                prop_assert_eq!(ctx.cmp_words(&u, &u.concat(&w)), Ordering::Less);
            }
        }
    }

    #[test]
    fn word_order_is_transitive(u in arb_word(3), v in arb_word(3), w in arb_word(3)) {
        let ctx = oq5().ctx();
        if ctx.cmp_words(&u, &v) != Ordering::Greater && ctx.cmp_words(&v, &w) != Ordering::Greater {
            prop_assert_ne!(ctx.cmp_words(&u, &w), Ordering::Greater);
        }
    }

    #[test]
    fn leading_word_is_multiplicative(p in arb_poly(oq5()), q in arb_poly(oq5())) {
        if let (Some(a), Some(b)) = (p.leading_word(), q.leading_word()) {
            let pq = &p * &q;
            prop_assert_eq!(pq.leading_word(), Some(&a.concat(b)));
        }
    }

    #[test]
    fn normal_form_respects_products(p in arb_poly(oq5()), q in arb_poly(oq5())) {
        let red = oq5().pres.reducer();
        let lhs = red.nf(&(&p * &q));
        let rhs = red.nf(&(&red.nf(&p) * &red.nf(&q)));
        prop_assert_eq!(&lhs, &rhs);
        for w in lhs.terms().keys() {
            prop_assert!(oq5().pres.is_irreducible(w));
        }
    }

    #[test]
    fn coproduct_and_counit_are_multiplicative(u in arb_word(3), v in arb_word(3)) {
        let alg = oq5();
        let ev = Evaluator::new(alg);
        let ctx = alg.ctx();
        let (pu, pv) = (NCPoly::word(ctx, u.clone()), NCPoly::word(ctx, v.clone()));
        let lhs = ev.red.nf_tensor(&ev.delta(&(&pu * &pv)));
        let rhs = ev.red.nf_tensor(&ev.delta(&pu).try_mul(&ev.delta(&pv)).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ev.counit(&(&pu * &pv)), &ev.counit(&pu) * &ev.counit(&pv));
    }
}

fn arb_cyclic_datum() -> impl Strategy<Value = SubgroupDatum> {
    (0usize..3, 2u32..=6, 0i64..6, 0i64..6, prop::option::of(0usize..4)).prop_map(|(kind, n, e, r, p)| {
        let (parity, ell) = [(DatumParity::Odd, 3), (DatumParity::Even, 4), (DatumParity::MinusOne, 2)][kind];
        let units: Vec<i64> = (1..=n as i64).filter(|u| num_integer::gcd(*u, n as i64) == 1).collect();
        let divisors: Vec<u32> = (1..=ell).filter(|d| ell % d == 0).collect();
        SubgroupDatum {
            parity,
            ell,
            i_plus: vec![],
            i_minus: vec![],
            n_generator: p.map(|i| divisors[i % divisors.len()]),
            gamma: GroupSpec::Cyclic(n),
            sigma: EmbeddingSpec { exponent: units[e as usize % units.len()] },
            delta_exponent: r % n as i64,
        }
    })
}

/// Twin of a datum through the unit u (same δ exponent).
fn twin(d: &SubgroupDatum, u: i64) -> SubgroupDatum {
    let mut t = d.clone();
    if let GroupSpec::Cyclic(n) = d.gamma {
        let n = n as i64;
        let units: Vec<i64> = (1..=n).filter(|x| num_integer::gcd(*x, n) == 1).collect();
        t.sigma.exponent = (d.sigma.exponent * units[u as usize % units.len()]).rem_euclid(n);
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn equivalence_is_an_equivalence(d1 in arb_cyclic_datum(), u in 0i64..6, v in 0i64..6, d3 in arb_cyclic_datum()) {
        let d2 = twin(&d1, u);
        let d4 = twin(&d2, v);
        let r = datum_equiv(&d1, &d1);
        prop_assert!(r.equivalent);
        prop_assert_eq!(r.witness, Some(1));
        let (a, b) = (datum_equiv(&d1, &d2), datum_equiv(&d2, &d1));
        prop_assert!(a.equivalent && b.equivalent);
        if let GroupSpec::Cyclic(n) = d1.gamma {
            prop_assert_eq!((a.witness.unwrap() * b.witness.unwrap()).rem_euclid(n as i64), 1 % n as i64);
        }
        prop_assert!(datum_equiv(&d1, &d4).equivalent);
        // symmetry and transitivity against an unrelated datum
        prop_assert_eq!(datum_equiv(&d1, &d3).equivalent, datum_equiv(&d3, &d1).equivalent);
        if datum_equiv(&d1, &d3).equivalent {
            prop_assert!(datum_equiv(&d2, &d3).equivalent);
        }
    }

    #[test]
    fn datum_json_round_trips(d in arb_cyclic_datum()) {
        let back = SubgroupDatum::from_json_str(&d.to_json_string()).unwrap();
        prop_assert_eq!(back, d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn pipeline_is_monotone_and_multiplicative(kind in 0usize..3, n in 2u32..=4, e in 0i64..4) {
        let (parity, ell) = [(DatumParity::Odd, 3), (DatumParity::Even, 4), (DatumParity::MinusOne, 2)][kind];
        let units: Vec<i64> = (1..=n as i64).filter(|u| num_integer::gcd(*u, n as i64) == 1).collect();
        let d = SubgroupDatum {
            parity,
            ell,
            i_plus: vec![],
            i_minus: vec![],
            n_generator: None,
            gamma: GroupSpec::Cyclic(n),
            sigma: EmbeddingSpec { exponent: units[e as usize % units.len()] },
            delta_exponent: 0,
        };
        let c = construct_quotient(&d, 8, 10).unwrap();
        let dims: Vec<Option<usize>> = c.stages.iter().map(|s| s.dimension.dimension.finite()).collect();
        for w in dims.windows(2) {
            if let (Some(x), Some(y)) = (w[0], w[1]) {
                prop_assert!(y <= x);
            }
        }
        let a = c.dimension().dimension.finite().unwrap();
        let h = c.h_dimension.dimension.finite().unwrap();
        prop_assert_eq!(a, n as usize * h);
        prop_assert!(c.passed());
    }
}

fn assert_grouplikes_form_a_group(model: &FiniteModel) {
    let g = grouplikes(model);
    assert!(g.certified, "{}", model.name);
    let contains = |x: &[CycRat]| g.elements.iter().any(|y| y.as_slice() == x);
    assert!(contains(&model.unit), "{}: unit", model.name);
    for x in &g.elements {
        assert!(contains(&model.antipode(x)), "{}: inverse", model.name);
        for y in &g.elements {
            assert!(contains(&model.mul(x, y)), "{}: product", model.name);
        }
    }
}

#[test]
fn grouplikes_form_groups() {
    let taft = SubgroupDatum {
        parity: DatumParity::Odd,
        ell: 3,
        i_plus: vec![1],
        i_minus: vec![],
        n_generator: None,
        gamma: GroupSpec::Catalog(CatalogGroup::Ga),
        sigma: EmbeddingSpec { exponent: 1 },
        delta_exponent: 0,
    };
    let c = construct_quotient(&taft, 8, 10).unwrap();
    assert_grouplikes_form_a_group(&build_finite_model(&c.h).unwrap());
    let cz = SubgroupDatum { parity: DatumParity::Even, ell: 4, i_plus: vec![], gamma: GroupSpec::Cyclic(3), ..taft.clone() };
    let c = construct_quotient(&cz, 8, 10).unwrap();
    assert_grouplikes_form_a_group(&build_finite_model(c.algebra()).unwrap());
    for m in [2, 3] {
        assert_grouplikes_form_a_group(&dihedral_quotient(m, 4).unwrap().model);
    }
}
