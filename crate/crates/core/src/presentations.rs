//! Canonical algebras: O_q(SL2), O_{-1}(SL2), commutative O(SL2), the
//! even-degree model of O(PSL2), the small-quotient ideals and the
//! distinguished subalgebras L, B, N.

use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::{CycRat, Order};
use crate::hopf::HopfStructure;
use crate::linalg::Echelon;
use crate::ncalg::{Ctx, MonomialOrder, NCPoly, TensorPoly, Word};
use crate::rewrite::{rule, term, Parity, Presentation, Rule};

pub const A: u8 = 0;
pub const B: u8 = 1;
pub const C: u8 = 2;
pub const D: u8 = 3;

pub const SL2_GENS: [&str; 4] = ["a", "b", "c", "d"];
pub const CLASSICAL_GENS: [&str; 4] = ["X11", "X12", "X21", "X22"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresError {
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
}

/// A presented algebra together with its Hopf structure.
#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub label: String,
    pub pres: Presentation,
    pub hopf: HopfStructure,
}

impl NamedAlgebra {
    pub fn ctx(&self) -> &Ctx {
        self.pres.ctx()
    }

    /// Same Hopf structure over a new set of rules (a quotient or a completion).
    pub fn with_presentation(&self, label: &str, pres: Presentation) -> NamedAlgebra {
        NamedAlgebra { label: label.to_string(), pres: pres.with_name(label), hopf: self.hopf.clone() }
    }

    pub fn to_json(&self) -> Value {
        json!({"label": self.label, "presentation": self.pres.to_json(), "hopf": self.hopf.to_json(self.ctx())})
    }
}

/// Precedence b < c < a < d: irreducible words are b^m c^s a^l and b^m c^s d^t.
pub fn sl2_ctx(field: u32, q: CycRat) -> Ctx {
    Ctx::with_order(field, &SL2_GENS, q, MonomialOrder::from_precedence(&[B, C, A, D]))
}

/// m = ord(q^2).
pub fn half_order(q: &CycRat) -> u64 {
    match (q * q).multiplicative_order() {
        Ok(Order::Finite(k)) => k,
        _ => panic!("q is not a root of unity"),
    }
}

/// Rules of O_q(SL2) for the parameter stored in the context:
/// ab, ac, cb, db, dc, ad, da are the forbidden words.
pub fn q_rules(ctx: &Ctx) -> Vec<Rule> {
    let q = ctx.q().clone();
    let qi = q.inverse().expect("q invertible");
    let one = NCPoly::one(ctx);
    vec![
        rule(ctx, &[A, B], term(ctx, &[B, A], q.clone())),
        rule(ctx, &[A, C], term(ctx, &[C, A], q.clone())),
        rule(ctx, &[C, B], term(ctx, &[B, C], ctx.scalar(1))),
        rule(ctx, &[D, B], term(ctx, &[B, D], qi.clone())),
        rule(ctx, &[D, C], term(ctx, &[C, D], qi.clone())),
        rule(ctx, &[A, D], &one + &term(ctx, &[B, C], q)),
        rule(ctx, &[D, A], &one + &term(ctx, &[B, C], qi)),
    ]
}

/// Matrix coproduct, counit, and the antipode S(a) = d, S(b) = s_b b, S(c) = s_c c, S(d) = a.
pub fn matrix_hopf(ctx: &Ctx, s_b: CycRat, s_c: CycRat) -> HopfStructure {
    let one = ctx.scalar(1);
    let t = |u: u8, v: u8, w: u8, x: u8| {
        let p = TensorPoly::pure(ctx, Word::letter(u), Word::letter(v), one.clone());
        let r = TensorPoly::pure(ctx, Word::letter(w), Word::letter(x), one.clone());
        p.try_add(&r).unwrap()
    };
    HopfStructure {
        delta: vec![t(A, A, B, C), t(A, B, B, D), t(C, A, D, C), t(C, B, D, D)],
        counit: vec![ctx.scalar(1), ctx.scalar(0), ctx.scalar(0), ctx.scalar(1)],
        antipode: vec![
            NCPoly::gen(ctx, D),
            NCPoly::monomial(ctx, Word::letter(B), s_b),
            NCPoly::monomial(ctx, Word::letter(C), s_c),
            NCPoly::gen(ctx, A),
        ],
    }
}

/// The antipode compatible with ab = q ba and ad - q bc = 1:
/// S(b) = -q^{-1} b, S(c) = -q c.
pub fn q_hopf(ctx: &Ctx) -> HopfStructure {
    let q = ctx.q().clone();
    let qi = q.inverse().unwrap();
    matrix_hopf(ctx, -&qi, -&q)
}

/// O_q(SL2) over Q(q), q a primitive ell-th root of unity, ell >= 3.
pub fn oq_sl2(ell: u32) -> Result<NamedAlgebra, PresError> {
    if ell <= 2 {
        return Err(PresError::Unsupported(format!(
            "oq-sl2 needs ell >= 3 (got {}); use o-minus1-sl2 for q = -1",
            ell
        )));
    }
    let ctx = sl2_ctx(ell, CycRat::q_power(ell, 1));
    let pres = Presentation::new("oq-sl2", &ctx, ell, parity_of(ell), q_rules(&ctx)).expect("oriented");
    Ok(NamedAlgebra { label: format!("oq-sl2[ell={}]", ell), pres, hopf: q_hopf(&ctx) })
}

fn parity_of(ell: u32) -> Parity {
    if ell % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// O_{-1}(SL2) over Q.
pub fn o_minus1_sl2() -> NamedAlgebra {
    o_minus1_sl2_over(2)
}

/// O_{-1}(SL2) with scalars in Q(z_field), field even (so that -1 is a power of z).
pub fn o_minus1_sl2_over(field: u32) -> NamedAlgebra {
    assert!(field % 2 == 0, "field order must be even");
    let q = CycRat::from_int(field, -1);
    let ctx = sl2_ctx(field, q);
    let pres = Presentation::new("o-minus1-sl2", &ctx, 2, Parity::MinusOne, q_rules(&ctx)).expect("oriented");
    NamedAlgebra { label: "o-minus1-sl2".to_string(), pres, hopf: q_hopf(&ctx) }
}

/// Commutative O(SL2) in X11 < X12 < X21 < X22.
pub fn classical_sl2() -> NamedAlgebra {
    classical_sl2_over(1)
}

pub fn classical_sl2_over(field: u32) -> NamedAlgebra {
    let ctx = Ctx::new(field, &CLASSICAL_GENS, CycRat::one(field));
    let one = NCPoly::one(&ctx);
    let det = &NCPoly::word(&ctx, Word(vec![A, D])) - &one;
    let w = |v: &[u8]| NCPoly::word(&ctx, Word(v.to_vec()));
    let rules = vec![
        rule(&ctx, &[B, A], w(&[A, B])),
        rule(&ctx, &[C, A], w(&[A, C])),
        rule(&ctx, &[D, A], w(&[A, D])),
        rule(&ctx, &[B, C], det.clone()),
        rule(&ctx, &[C, B], det),
        rule(&ctx, &[D, B], w(&[B, D])),
        rule(&ctx, &[D, C], w(&[C, D])),
    ];
    let pres = Presentation::new("classical-sl2", &ctx, 1, Parity::Generic, rules).expect("oriented");
    let m1 = ctx.scalar(-1);
    NamedAlgebra { label: "classical-sl2".to_string(), pres, hopf: matrix_hopf(&ctx, m1.clone(), m1) }
}

/// The ten quadratic monomials X_ij X_kl (ij <= kl) as words.
pub fn quadratic_words() -> Vec<Word> {
    let mut out = Vec::new();
    for i in 0..4u8 {
        for j in i..4u8 {
            out.push(Word(vec![i, j]));
        }
    }
    out
}

/// Degreewise model of O(PSL2) inside commutative O(SL2): component k is the
/// span of all even-degree monomials of degree <= 2k.
#[derive(Clone, Debug)]
pub struct Psl2Model {
    pub ambient: NamedAlgebra,
    pub max_deg: usize,
    /// (degree bound, exact basis of the span in normal form).
    pub components: Vec<(usize, Vec<NCPoly>)>,
}

pub fn psl2_model(max_deg: usize) -> Psl2Model {
    psl2_model_over(classical_sl2(), max_deg)
}

pub fn psl2_model_over(ambient: NamedAlgebra, max_deg: usize) -> Psl2Model {
    let ctx = ambient.ctx().clone();
    let red = ambient.pres.reducer();
    let words = sorted_monomials(ctx.ngens() as u8, max_deg);
    let mut components = Vec::new();
    let mut deg = 0;
    while deg <= max_deg {
        // exact span of the normal forms of all even monomials of degree <= deg
        let polys: Vec<NCPoly> = words
            .iter()
            .take(deg + 1)
            .enumerate()
            .filter(|(len, _)| len % 2 == 0)
            .flat_map(|(_, ws)| ws.iter().map(|w| red.nf_word(w)))
            .collect();
        components.push((deg, span_basis(&polys)));
        deg += 2;
    }
    Psl2Model { ambient, max_deg, components }
}

/// Nondecreasing words grouped by length: the commutative monomials.
pub fn sorted_monomials(ngens: u8, max_len: usize) -> Vec<Vec<Word>> {
    let mut out = vec![vec![Word::empty()]];
    for _ in 0..max_len {
        let next = out
            .last()
            .unwrap()
            .iter()
            .flat_map(|w| {
                let lo = w.0.last().copied().unwrap_or(0);
                (lo..ngens).map(move |g| {
                    let mut v = w.0.clone();
                    v.push(g);
                    Word(v)
                })
            })
            .collect();
        out.push(next);
    }
    out
}

/// An exact basis (in echelon form) of the span of the given polynomials.
pub fn span_basis(polys: &[NCPoly]) -> Vec<NCPoly> {
    if polys.is_empty() {
        return Vec::new();
    }
    let ctx = polys[0].ctx().clone();
    let mut support: Vec<Word> = polys.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    support.sort();
    support.dedup();
    let mut e = Echelon::new(ctx.field(), support.len());
    for p in polys {
        e.insert(&to_vector(p, &support));
    }
    e.rows().iter().map(|r| from_vector(&ctx, r, &support)).collect()
}

pub fn to_vector(p: &NCPoly, support: &[Word]) -> Vec<CycRat> {
    let ctx = p.ctx();
    support.iter().map(|w| p.terms().get(w).cloned().unwrap_or_else(|| ctx.zero_scalar())).collect()
}

pub fn from_vector(ctx: &Ctx, v: &[CycRat], support: &[Word]) -> NCPoly {
    NCPoly::from_terms(ctx, support.iter().cloned().zip(v.iter().cloned()))
}

impl Psl2Model {
    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|(d, b)| (*d, b.len())).collect()
    }

    /// Whether p lies in the model: its normal form is a combination of even words.
    pub fn contains(&self, p: &NCPoly) -> bool {
        let nf = self.ambient.pres.reducer().nf(p);
        if nf.max_len() > self.max_deg {
            return nf.terms().keys().all(|w| w.len() % 2 == 0);
        }
        let deg = nf.max_len() + nf.max_len() % 2;
        let basis = &self.components[deg / 2].1;
        let mut support: Vec<Word> = basis.iter().flat_map(|b| b.terms().keys().cloned()).collect();
        support.extend(nf.terms().keys().cloned());
        support.sort();
        support.dedup();
        let mut e = Echelon::new(nf.ctx().field(), support.len());
        for b in basis {
            e.insert(&to_vector(b, &support));
        }
        e.contains(&to_vector(&nf, &support))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealKind {
    Widehat,
    Overline,
}

/// Generators of the ideal defining the small quotient.
pub fn quotient_ideal(kind: IdealKind, ell: u32) -> Result<Vec<NCPoly>, PresError> {
    match kind {
        IdealKind::Widehat if ell % 2 == 1 && ell > 2 => {}
        IdealKind::Overline if ell % 2 == 0 && ell >= 4 => {}
        IdealKind::Widehat => return Err(PresError::ParityMismatch(format!("widehat needs odd ell > 2, got {}", ell))),
        IdealKind::Overline => {
            return Err(PresError::ParityMismatch(format!("overline needs even ell = 2m with m != 1, got {}", ell)))
        }
    }
    let alg = oq_sl2(ell)?;
    let ctx = alg.ctx();
    let m = half_order(ctx.q()) as usize;
    let (e_ad, e_bc) = match kind {
        IdealKind::Widehat => (ell as usize, ell as usize),
        IdealKind::Overline => (2 * m, m),
    };
    let one = NCPoly::one(ctx);
    Ok(vec![
        &NCPoly::word(ctx, Word::power(A, e_ad)) - &one,
        NCPoly::word(ctx, Word::power(B, e_bc)),
        NCPoly::word(ctx, Word::power(C, e_bc)),
        &NCPoly::word(ctx, Word::power(D, e_ad)) - &one,
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubalgebraCase {
    LOdd,
    BMinus1,
    NEven,
}

#[derive(Clone, Debug)]
pub struct Distinguished {
    pub algebra: NamedAlgebra,
    pub generators: Vec<NCPoly>,
    /// Images of the quadratic monomials X_ij X_kl of O(SL2) (for B and N).
    pub phi: Option<Vec<(Word, NCPoly)>>,
    /// Images of X11, X12, X21, X22 (for L).
    pub frobenius: Option<Vec<NCPoly>>,
}

/// phi(X_ij X_kl) for ij <= kl, landing in x^m y^m; X11 X22 goes to 1 + phi(X12 X21).
///
/// A factor pair gets the sign -1 when m is odd and the first factor is off-diagonal.
pub fn phi_images(ctx: &Ctx, m: usize) -> Vec<(Word, NCPoly)> {
    let mut out = Vec::new();
    let sign_of = |i: u8| if m % 2 == 1 && (i == B || i == C) { -1 } else { 1 };
    let image = |i: u8, j: u8| {
        let mut w = Word::power(i, m).0;
        w.extend(Word::power(j, m).0);
        NCPoly::monomial(ctx, Word(w), ctx.scalar(sign_of(i)))
    };
    for w in quadratic_words() {
        let (i, j) = (w.0[0], w.0[1]);
        let img = if (i, j) == (A, D) { &NCPoly::one(ctx) + &image(B, C) } else { image(i, j) };
        out.push((w, img));
    }
    out
}

pub fn distinguished_subalgebra(case: SubalgebraCase, ell: u32) -> Result<Distinguished, PresError> {
    match case {
        SubalgebraCase::LOdd => {
            if ell % 2 == 0 || ell < 3 {
                return Err(PresError::ParityMismatch(format!("L needs odd ell >= 3, got {}", ell)));
            }
            let algebra = oq_sl2(ell)?;
            let ctx = algebra.ctx().clone();
            let gens: Vec<NCPoly> = (0..4u8).map(|g| NCPoly::word(&ctx, Word::power(g, ell as usize))).collect();
            Ok(Distinguished { algebra, generators: gens.clone(), phi: None, frobenius: Some(gens) })
        }
        SubalgebraCase::BMinus1 => {
            if ell != 2 {
                return Err(PresError::ParityMismatch(format!("B needs q = -1 (ell = 2), got {}", ell)));
            }
            let algebra = o_minus1_sl2();
            let ctx = algebra.ctx().clone();
            let gens = [[A, A], [B, B], [C, C], [D, D], [A, B], [A, C], [B, C], [B, D], [C, D]]
                .iter()
                .map(|w| NCPoly::word(&ctx, Word(w.to_vec())))
                .collect();
            let phi = phi_images(&ctx, 1);
            Ok(Distinguished { algebra, generators: gens, phi: Some(phi), frobenius: None })
        }
        SubalgebraCase::NEven => {
            if ell % 2 == 1 || ell < 4 {
                return Err(PresError::ParityMismatch(format!("N needs even ell >= 4, got {}", ell)));
            }
            let algebra = oq_sl2(ell)?;
            let ctx = algebra.ctx().clone();
            let m = half_order(ctx.q()) as usize;
            let mut gens = Vec::new();
            for x in 0..4u8 {
                for y in 0..4u8 {
                    let mut w = Word::power(x, m).0;
                    w.extend(Word::power(y, m).0);
                    gens.push(NCPoly::word(&ctx, Word(w)));
                }
            }
            let phi = phi_images(&ctx, m);
            Ok(Distinguished { algebra, generators: gens, phi: Some(phi), frobenius: None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::parse_poly;
    use crate::rewrite::normal_form;

    #[test]
    fn oq_relations_hold() {
        let alg = oq_sl2(5).unwrap();
        let ctx = alg.ctx();
        for rel in ["a·b - q·b·a", "a·d - q·b·c - 1", "d·a - 1 - q^-1·b·c", "a·d - d·a - (q - q^-1)·b·c"] {
            let p = parse_poly(ctx, rel).unwrap();
            assert!(normal_form(&p, &alg.pres).is_zero(), "{}", rel);
        }
        assert!(oq_sl2(2).is_err());
    }

    #[test]
    fn minus_one_relations_hold() {
        let alg = o_minus1_sl2();
        let ctx = alg.ctx();
        for rel in ["a·d - d·a", "a·d + b·c - 1", "b·a + a·b", "b·c - c·b", "a·c + c·a", "b·d + d·b", "c·d + d·c"] {
            let p = parse_poly(ctx, rel).unwrap();
            assert!(normal_form(&p, &alg.pres).is_zero(), "{}", rel);
        }
    }

    #[test]
    fn classical_determinant() {
        let alg = classical_sl2();
        let p = parse_poly(alg.ctx(), "X11·X22 - X12·X21 - 1").unwrap();
        assert!(normal_form(&p, &alg.pres).is_zero());
    }

    #[test]
    fn psl2_model_components() {
        let m = psl2_model(4);
        // span of 1 and the ten quadratics: a basis of 10 elements
        assert_eq!(m.dims()[1], (2, 10));
        let x11 = NCPoly::gen(m.ambient.ctx(), A);
        assert!(!m.contains(&x11));
        assert!(m.contains(&(&x11 * &x11)));
    }

    #[test]
    fn ideal_lists() {
        let w3 = quotient_ideal(IdealKind::Widehat, 3).unwrap();
        let rendered: Vec<String> = w3.iter().map(|p| p.render()).collect();
        assert_eq!(rendered, vec!["a^3 - 1", "b^3", "c^3", "d^3 - 1"]);
        let o6 = quotient_ideal(IdealKind::Overline, 6).unwrap();
        let rendered: Vec<String> = o6.iter().map(|p| p.render()).collect();
        assert_eq!(rendered, vec!["a^6 - 1", "b^3", "c^3", "d^6 - 1"]);
        assert!(matches!(quotient_ideal(IdealKind::Overline, 5), Err(PresError::ParityMismatch(_))));
    }

    #[test]
    fn phi_matrix_entries() {
        let d = distinguished_subalgebra(SubalgebraCase::BMinus1, 2).unwrap();
        let phi = d.phi.unwrap();
        let get = |w: [u8; 2]| phi.iter().find(|(k, _)| k.0 == w).unwrap().1.render();
        assert_eq!(get([B, B]), "-b^2");
        assert_eq!(get([B, C]), "-b·c");
        assert_eq!(get([A, B]), "a·b");
        assert_eq!(get([A, D]), "-b·c + 1");
        let n = distinguished_subalgebra(SubalgebraCase::NEven, 4).unwrap();
        assert_eq!(n.generators.len(), 16);
    }
}
