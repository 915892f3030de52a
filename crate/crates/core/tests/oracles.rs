//! Values checked against computations done a second way.

use qsl2::catalog::taft_witness;
use qsl2::cyclo::CycRat;
use qsl2::hopf::Evaluator;
use qsl2::ncalg::{NCPoly, TensorPoly, Word};
use qsl2::linalg::Echelon;
use qsl2::presentations::{distinguished_subalgebra, to_vector, quotient_ideal, IdealKind, SubalgebraCase, A, B, C, D};
use qsl2::rewrite::{complete, finite_basis, CompletionLimits};
use qsl2::subgroups::{
    construct_quotient, datum_equiv, kernel_sigma_t, CatalogGroup, DatumParity, EmbeddingSpec, GroupSpec, SubgroupDatum,
};

fn w(v: &[u8]) -> Word {
    Word(v.to_vec())
}

#[test]
fn taft_skew_primitive_by_hand_expansion() {
    for ell in [3, 5] {
        let d = SubgroupDatum {
            parity: DatumParity::Odd,
            ell,
            i_plus: vec![1],
            i_minus: vec![],
            n_generator: None,
            gamma: GroupSpec::Catalog(CatalogGroup::Ga),
            sigma: EmbeddingSpec { exponent: 1 },
            delta_exponent: 0,
        };
        let h = construct_quotient(&d, 8, 10).unwrap().h;
        let ctx = h.ctx();
        let one = ctx.scalar(1);
        // (a⊗b + b⊗d)(a⊗a + b⊗c), expanded leg by leg
        let mut t = TensorPoly::zero(ctx);
        for (x, y) in [(&[A][..], &[B][..]), (&[B], &[D])] {
            for (u, v) in [(&[A][..], &[A][..]), (&[B], &[C])] {
                t.add_term(w(&[x, u].concat()), w(&[y, v].concat()), one.clone());
            }
        }
        let ev = Evaluator::new(&h);
        let by_hand = ev.red.nf_tensor(&t);
        let mut want = TensorPoly::zero(ctx);
        want.add_term(w(&[A, A]), w(&[B, A]), one.clone());
        want.add_term(w(&[B, A]), Word::empty(), one.clone());
        assert_eq!(by_hand, ev.red.nf_tensor(&want));
        let via_delta = ev.red.nf_tensor(&ev.delta(&NCPoly::word(ctx, w(&[B, A]))));
        assert_eq!(by_hand, via_delta);
        assert!(taft_witness(&h).passed());
    }
}

fn diag(f: u32, k: i64) -> [CycRat; 4] {
    [CycRat::q_power(f, k), CycRat::zero(f), CycRat::zero(f), CycRat::q_power(f, -k)]
}

#[test]
fn inversion_matches_opposite_exponent() {
    // PSL2, Z_5 through ω of order 10: σ1(g^-k) = σ2(g^k) up to sign
    let (n, e) = (5i64, 2i64);
    let f = 2 * n as u32;
    for k in 0..n {
        let lhs = diag(f, e * (-k));
        let rhs = diag(f, -e * k);
        let neg: Vec<CycRat> = rhs.iter().map(|x| -x).collect();
        assert!(lhs == rhs || lhs.as_slice() == neg.as_slice());
    }
    let d1 = SubgroupDatum {
        parity: DatumParity::Even,
        ell: 4,
        i_plus: vec![],
        i_minus: vec![],
        n_generator: None,
        gamma: GroupSpec::Cyclic(n as u32),
        sigma: EmbeddingSpec { exponent: e },
        delta_exponent: 0,
    };
    let d2 = SubgroupDatum { sigma: EmbeddingSpec { exponent: -e }, ..d1.clone() };
    let r = datum_equiv(&d1, &d2);
    assert!(r.equivalent);
    assert_eq!(r.witness, Some(n - 1));
}

#[test]
fn kernel_generators_vanish_on_the_group() {
    for (gamma, parity) in [
        (GroupSpec::Cyclic(3), DatumParity::Odd),
        (GroupSpec::Cyclic(3), DatumParity::Even),
        (GroupSpec::Dihedral(3), DatumParity::MinusOne),
    ] {
        let k = kernel_sigma_t(gamma, 1, parity, 6).unwrap();
        let (f, mats): (u32, Vec<[CycRat; 4]>) = match gamma {
            GroupSpec::Cyclic(n) if parity == DatumParity::Odd => (n, (0..n as i64).map(|j| diag(n, j)).collect()),
            GroupSpec::Cyclic(n) => (2 * n, (0..2 * n as i64).map(|j| diag(2 * n, j)).collect()),
            GroupSpec::Dihedral(m) => {
                let f = 2 * m;
                let mut v: Vec<[CycRat; 4]> = (0..f as i64).map(|j| diag(f, j)).collect();
                for j in 0..f as i64 {
                    let z = CycRat::q_power(f, j);
                    v.push([CycRat::zero(f), z.clone(), -&z.inverse().unwrap(), CycRat::zero(f)]);
                }
                (f, v)
            }
            _ => unreachable!(),
        };
        for g in &k.generators {
            for x in &mats {
                let mut acc = CycRat::zero(f);
                for (word, c) in g.terms() {
                    let v = word.0.iter().fold(CycRat::one(f), |p, &l| &p * &x[l as usize]);
                    acc = &acc + &(&c.embed(f).unwrap() * &v);
                }
                assert!(acc.is_zero(), "{} does not vanish", g.render());
            }
        }
        assert!(k.certified(), "{}", k.to_json());
    }
}

#[test]
fn truncated_monomials_span_the_widehat_quotient() {
    for ell in [3u32, 5] {
        let base = distinguished_subalgebra(SubalgebraCase::LOdd, ell).unwrap().algebra;
        let pres = complete(&base.pres, &quotient_ideal(IdealKind::Widehat, ell).unwrap(), "q", &CompletionLimits::default()).unwrap();
        let basis = finite_basis(&pres).unwrap();
        let red = pres.reducer();
        let l = ell as usize;
        let mut span = Echelon::new(ell, basis.len());
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    let mut v = Word::power(B, i).0;
                    v.extend(Word::power(C, j).0);
                    v.extend(Word::power(A, k).0);
                    span.insert(&to_vector(&red.nf_word(&Word(v)), &basis));
                }
            }
        }
        assert_eq!(basis.len(), l * l * l);
        assert_eq!(span.rank(), l * l * l);
    }
}
