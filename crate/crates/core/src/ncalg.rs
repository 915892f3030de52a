//! Noncommutative polynomials over Q(z) in named generators, tensor squares,
//! the monomial order, and the textual polynomial syntax.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::cyclo::CycRat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("polynomials over different generator tables or fields")]
    MixedAlgebras,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, PartialEq, Eq)]
struct CtxInner {
    field: u32,
    gens: Vec<String>,
    q: CycRat,
    sym: String,
    order: MonomialOrder,
}

/// Generator table plus coefficient field shared by the polynomials of one algebra.
///
/// `q` is the deformation parameter as a field element; `sym` is the symbol used to
/// print the field generator ("q" when q generates the field).
#[derive(Debug, Clone)]
pub struct Ctx(Arc<CtxInner>);

impl PartialEq for Ctx {
    fn eq(&self, other: &Ctx) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Ctx {}

impl Ctx {
    pub fn new(field: u32, gens: &[&str], q: CycRat) -> Ctx {
        Ctx::with_order(field, gens, q, MonomialOrder::identity(gens.len()))
    }

    pub fn with_order(field: u32, gens: &[&str], q: CycRat, order: MonomialOrder) -> Ctx {
        assert_eq!(q.ell(), field);
        assert_eq!(order.rank.len(), gens.len());
        let sym = if q == CycRat::q_power(field, 1) && field > 2 { "q" } else { "w" };
        Ctx(Arc::new(CtxInner {
            field,
            gens: gens.iter().map(|s| s.to_string()).collect(),
            q,
            sym: sym.to_string(),
            order,
        }))
    }

    pub fn field(&self) -> u32 {
        self.0.field
    }
    pub fn gens(&self) -> &[String] {
        &self.0.gens
    }
    pub fn ngens(&self) -> usize {
        self.0.gens.len()
    }
    pub fn q(&self) -> &CycRat {
        &self.0.q
    }
    pub fn scalar_symbol(&self) -> &str {
        &self.0.sym
    }
    pub fn gen_index(&self, name: &str) -> Option<u8> {
        self.0.gens.iter().position(|g| g == name).map(|i| i as u8)
    }
    pub fn scalar(&self, n: i64) -> CycRat {
        CycRat::from_int(self.0.field, n)
    }
    pub fn zero_scalar(&self) -> CycRat {
        CycRat::zero(self.0.field)
    }
    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }
    pub fn cmp_words(&self, u: &Word, v: &Word) -> Ordering {
        compare(u, v, &self.0.order)
    }
    pub fn q_pow(&self, k: i64) -> CycRat {
        self.0.q.pow(k).expect("q is invertible")
    }
}

/// A word in the free monoid; letters are generator indices.
///
/// The derived order (deglex on indices) is only a storage order; leading terms
/// are taken under the context's `MonomialOrder`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }
    pub fn letter(i: u8) -> Word {
        Word(vec![i])
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
    pub fn power(letter: u8, k: usize) -> Word {
        Word(vec![letter; k])
    }
    pub fn render(&self, ctx: &Ctx) -> String {
        render_word(&self.0, ctx)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Degree-lexicographic order with an explicit generator precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    /// rank[i] is the precedence rank of generator i (smaller ranks compare smaller).
    pub rank: Vec<u8>,
}

impl MonomialOrder {
    pub fn identity(n: usize) -> MonomialOrder {
        MonomialOrder { rank: (0..n as u8).collect() }
    }
    /// `precedence` lists generator indices from smallest to largest.
    pub fn from_precedence(precedence: &[u8]) -> MonomialOrder {
        let mut rank = vec![0u8; precedence.len()];
        for (r, &g) in precedence.iter().enumerate() {
            rank[g as usize] = r as u8;
        }
        MonomialOrder { rank }
    }
    pub fn is_identity(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| r as usize == i)
    }
    /// Generator indices from smallest to largest.
    pub fn precedence(&self) -> Vec<u8> {
        let mut p: Vec<u8> = (0..self.rank.len() as u8).collect();
        p.sort_by_key(|&g| self.rank[g as usize]);
        p
    }
}

pub fn compare(u: &Word, v: &Word, ord: &MonomialOrder) -> Ordering {
    u.0.len().cmp(&v.0.len()).then_with(|| {
        for (a, b) in u.0.iter().zip(&v.0) {
            let c = ord.rank[*a as usize].cmp(&ord.rank[*b as usize]);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, CycRat>, k: K, c: CycRat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// A noncommutative polynomial: finitely supported map Word -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    ctx: Ctx,
    terms: BTreeMap<Word, CycRat>,
}

impl NCPoly {
    pub fn zero(ctx: &Ctx) -> NCPoly {
        NCPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }
    pub fn one(ctx: &Ctx) -> NCPoly {
        NCPoly::constant(ctx, ctx.scalar(1))
    }
    pub fn constant(ctx: &Ctx, c: CycRat) -> NCPoly {
        NCPoly::monomial(ctx, Word::empty(), c)
    }
    pub fn monomial(ctx: &Ctx, w: Word, c: CycRat) -> NCPoly {
        let mut p = NCPoly::zero(ctx);
        add_term(&mut p.terms, w, c);
        p
    }
    pub fn word(ctx: &Ctx, w: Word) -> NCPoly {
        NCPoly::monomial(ctx, w, ctx.scalar(1))
    }
    pub fn gen(ctx: &Ctx, i: u8) -> NCPoly {
        NCPoly::word(ctx, Word::letter(i))
    }
    /// Convenience: the word spelled by generator names, e.g. `["a", "b"]`.
    pub fn from_names(ctx: &Ctx, names: &[&str]) -> NCPoly {
        let w = names.iter().map(|n| ctx.gen_index(n).expect("unknown generator")).collect();
        NCPoly::word(ctx, Word(w))
    }
    pub fn from_terms(ctx: &Ctx, terms: impl IntoIterator<Item = (Word, CycRat)>) -> NCPoly {
        let mut p = NCPoly::zero(ctx);
        for (w, c) in terms {
            add_term(&mut p.terms, w, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn terms(&self) -> &BTreeMap<Word, CycRat> {
        &self.terms
    }
    pub fn into_terms(self) -> BTreeMap<Word, CycRat> {
        self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn coeff(&self, w: &Word) -> CycRat {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ctx.zero_scalar())
    }
    /// Largest word in the support under the context's order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &CycRat)> {
        if self.ctx.order().is_identity() {
            return self.terms.iter().next_back();
        }
        self.terms.iter().max_by(|a, b| self.ctx.cmp_words(a.0, b.0))
    }
    pub fn leading_word(&self) -> Option<&Word> {
        self.leading().map(|(w, _)| w)
    }
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    fn check(&self, other: &NCPoly) -> Result<(), AlgError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgError::MixedAlgebras)
        }
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly, AlgError> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &NCPoly) -> Result<NCPoly, AlgError> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_term(&mut out.terms, w.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly, AlgError> {
        self.check(other)?;
        let mut out = NCPoly::zero(&self.ctx);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                add_term(&mut out.terms, u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    pub fn add_assign_scaled(&mut self, other: &NCPoly, c: &CycRat) {
        assert!(self.ctx == other.ctx, "mixed algebras");
        for (w, a) in &other.terms {
            add_term(&mut self.terms, w.clone(), a * c);
        }
    }

    pub fn add_term(&mut self, w: Word, c: CycRat) {
        add_term(&mut self.terms, w, c);
    }

    pub fn scale(&self, c: &CycRat) -> NCPoly {
        let mut out = NCPoly::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), a * c);
        }
        out
    }

    /// u * self * v for words u, v.
    pub fn sandwich(&self, u: &Word, v: &Word) -> NCPoly {
        let mut out = NCPoly::zero(&self.ctx);
        for (w, a) in &self.terms {
            out.terms.insert(u.concat(w).concat(v), a.clone());
        }
        out
    }

    pub fn pow(&self, k: usize) -> NCPoly {
        let mut acc = NCPoly::one(&self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses the polynomial over another context with the same generator names.
    pub fn transfer(&self, ctx: &Ctx) -> Option<NCPoly> {
        if ctx.gens() != self.ctx.gens() {
            return None;
        }
        let mut out = NCPoly::zero(ctx);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.embed(ctx.field())?);
        }
        Some(out)
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().rev().map(|(w, c)| (c, render_word(&w.0, &self.ctx))), &self.ctx)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> std::ops::Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn add(self, o: &NCPoly) -> NCPoly {
        self.try_add(o).expect("mixed algebras")
    }
}
impl<'a> std::ops::Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn sub(self, o: &NCPoly) -> NCPoly {
        self.try_sub(o).expect("mixed algebras")
    }
}
impl<'a> std::ops::Mul<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn mul(self, o: &NCPoly) -> NCPoly {
        self.try_mul(o).expect("mixed algebras")
    }
}
impl std::ops::Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&self.ctx.scalar(-1))
    }
}

/// Element of the tensor square: finitely supported map (Word, Word) -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    ctx: Ctx,
    terms: BTreeMap<(Word, Word), CycRat>,
}

impl TensorPoly {
    pub fn zero(ctx: &Ctx) -> TensorPoly {
        TensorPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }
    pub fn one(ctx: &Ctx) -> TensorPoly {
        TensorPoly::pure(ctx, Word::empty(), Word::empty(), ctx.scalar(1))
    }
    pub fn pure(ctx: &Ctx, u: Word, v: Word, c: CycRat) -> TensorPoly {
        let mut t = TensorPoly::zero(ctx);
        add_term(&mut t.terms, (u, v), c);
        t
    }
    /// p ⊗ r
    pub fn tensor(p: &NCPoly, r: &NCPoly) -> TensorPoly {
        let mut t = TensorPoly::zero(&p.ctx);
        for (u, a) in &p.terms {
            for (v, b) in &r.terms {
                add_term(&mut t.terms, (u.clone(), v.clone()), a * b);
            }
        }
        t
    }
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn terms(&self) -> &BTreeMap<(Word, Word), CycRat> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, u: Word, v: Word, c: CycRat) {
        add_term(&mut self.terms, (u, v), c);
    }
    pub fn try_add(&self, other: &TensorPoly) -> Result<TensorPoly, AlgError> {
        if self.ctx != other.ctx {
            return Err(AlgError::MixedAlgebras);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }
    pub fn try_sub(&self, other: &TensorPoly) -> Result<TensorPoly, AlgError> {
        self.try_add(&other.scale(&other.ctx.scalar(-1)))
    }
    /// Componentwise product (u⊗v)(u'⊗v') = uu' ⊗ vv'.
    pub fn try_mul(&self, other: &TensorPoly) -> Result<TensorPoly, AlgError> {
        if self.ctx != other.ctx {
            return Err(AlgError::MixedAlgebras);
        }
        let mut out = TensorPoly::zero(&self.ctx);
        for ((u, v), a) in &self.terms {
            for ((s, t), b) in &other.terms {
                add_term(&mut out.terms, (u.concat(s), v.concat(t)), a * b);
            }
        }
        Ok(out)
    }
    pub fn scale(&self, c: &CycRat) -> TensorPoly {
        let mut out = TensorPoly::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        for (k, a) in &self.terms {
            out.terms.insert(k.clone(), a * c);
        }
        out
    }
    pub fn render(&self) -> String {
        let ctx = &self.ctx;
        render_terms(
            self.terms.iter().rev().map(|((u, v), c)| {
                (c, format!("{}⊗{}", render_word_or_one(&u.0, ctx), render_word_or_one(&v.0, ctx)))
            }),
            ctx,
        )
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_word(w: &[u8], ctx: &Ctx) -> String {
    // runs of equal letters are printed as powers
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &ctx.gens()[w[i] as usize];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{}^{}", name, j - i));
        }
        i = j;
    }
    parts.join("·")
}

fn render_word_or_one(w: &[u8], ctx: &Ctx) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        render_word(w, ctx)
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (&'a CycRat, String)>, ctx: &Ctx) -> String {
    let sym = ctx.scalar_symbol();
    let mut out = String::new();
    for (idx, (c, body)) in terms.enumerate() {
        let (neg, mag) = match c.as_monomial() {
            Some((r, _)) if r < BigRational::from_integer(BigInt::from(0)) => (true, -c),
            _ => (false, c.clone()),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coef = mag.render(sym);
        if body.is_empty() {
            out.push_str(&coef);
        } else if mag.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&coef);
            out.push('·');
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the textual syntax produced by `NCPoly::render`, e.g. `q^2·a·b - 1`.
///
/// Accepts `-` or `−` for minus, `·` or `*` for products, `^` with integer
/// exponents (negative exponents only on the scalar symbol), rational numbers,
/// and parentheses.
pub fn parse_poly(ctx: &Ctx, text: &str) -> Result<NCPoly, AlgError> {
    let mut p = Parser { ctx, src: text, pos: 0 };
    let out = p.poly()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Ctx,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> AlgError {
        AlgError::Parse { pos: self.pos, msg: msg.to_string() }
    }
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }
    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }
    fn skip_ws(&mut self) {
        while self.peek().map_or(false, |c| c.is_whitespace()) {
            self.bump();
        }
    }
    fn poly(&mut self) -> Result<NCPoly, AlgError> {
        self.skip_ws();
        let mut neg = false;
        if matches!(self.peek(), Some('-') | Some('−')) {
            neg = true;
            self.bump();
        } else if self.peek() == Some('+') {
            self.bump();
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') | Some('−') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }
    fn term(&mut self) -> Result<NCPoly, AlgError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('·') | Some('*') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }
    fn exponent(&mut self) -> Result<Option<i64>, AlgError> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(None);
        }
        self.bump();
        self.skip_ws();
        let mut neg = false;
        if matches!(self.peek(), Some('-') | Some('−')) {
            neg = true;
            self.bump();
        }
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected exponent"));
        }
        let v: i64 = self.src[start..self.pos].parse().map_err(|_| self.err("bad exponent"))?;
        Ok(Some(if neg { -v } else { v }))
    }
    fn factor(&mut self) -> Result<NCPoly, AlgError> {
        self.skip_ws();
        let ctx = self.ctx;
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.poly()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                match self.exponent()? {
                    None => Ok(inner),
                    Some(k) if k >= 0 => Ok(inner.pow(k as usize)),
                    Some(_) => Err(self.err("negative power of a parenthesized expression")),
                }
            }
            Some('-') | Some('−') => {
                self.bump();
                let f = self.factor()?;
                Ok(-&f)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().map_or(false, |c| c.is_ascii_digit()) {
                    self.bump();
                }
                let num: BigInt = self.src[start..self.pos].parse().map_err(|_| self.err("bad number"))?;
                let mut r = BigRational::from_integer(num);
                if self.peek() == Some('/') {
                    self.bump();
                    let s2 = self.pos;
                    while self.peek().map_or(false, |c| c.is_ascii_digit()) {
                        self.bump();
                    }
                    let den: BigInt = self.src[s2..self.pos].parse().map_err(|_| self.err("bad denominator"))?;
                    if den == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    r /= BigRational::from_integer(den);
                }
                let c = CycRat::from_rational(ctx.field(), r);
                let c = match self.exponent()? {
                    None => c,
                    Some(k) => c.pow(k).map_err(|_| self.err("zero to a negative power"))?,
                };
                Ok(NCPoly::constant(ctx, c))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().map_or(false, |c| c.is_alphanumeric() || c == '_') {
                    self.bump();
                }
                let name = &self.src[start..self.pos];
                let exp = self.exponent()?;
                if name == ctx.scalar_symbol() || name == "q" {
                    let base = if name == "q" { ctx.q().clone() } else { CycRat::q_power(ctx.field(), 1) };
                    let c = base.pow(exp.unwrap_or(1)).map_err(|_| self.err("zero to a negative power"))?;
                    return Ok(NCPoly::constant(ctx, c));
                }
                let idx = ctx.gen_index(name).ok_or_else(|| self.err(&format!("unknown generator '{}'", name)))?;
                match exp {
                    None => Ok(NCPoly::gen(ctx, idx)),
                    Some(k) if k >= 0 => Ok(NCPoly::word(ctx, Word::power(idx, k as usize))),
                    Some(_) => Err(self.err("negative power of a generator")),
                }
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx5() -> Ctx {
        Ctx::new(5, &["a", "b", "c", "d"], CycRat::q_power(5, 1))
    }

    fn w(s: &str) -> Word {
        Word(s.bytes().map(|b| b - b'a').collect())
    }

    #[test]
    fn free_product_does_not_commute() {
        let ctx = ctx5();
        let a = NCPoly::gen(&ctx, 0);
        let b = NCPoly::gen(&ctx, 1);
        let lhs = &(&a + &b) * &(&a - &b);
        let expect = parse_poly(&ctx, "a^2 - a·b + b·a - b^2").unwrap();
        assert_eq!(lhs, expect);
        assert!((&NCPoly::zero(&ctx) * &lhs).is_zero());
    }

    #[test]
    fn tensor_product_is_componentwise() {
        let ctx = ctx5();
        let one = ctx.scalar(1);
        let x = TensorPoly::pure(&ctx, w("a"), w("a"), one.clone());
        let y = TensorPoly::pure(&ctx, w("b"), w("c"), one.clone());
        let z = x.try_mul(&y).unwrap();
        assert_eq!(z, TensorPoly::pure(&ctx, w("ab"), w("ac"), one));
    }

    #[test]
    fn deglex_examples() {
        let ord = MonomialOrder::identity(4);
        assert_eq!(compare(&w("a"), &w("aa"), &ord), Ordering::Less);
        assert_eq!(compare(&w("ad"), &w("bc"), &ord), Ordering::Less);
        assert_eq!(compare(&w("abc"), &w("abc"), &ord), Ordering::Equal);
        assert_eq!(w("ad").cmp(&w("bc")), Ordering::Less);
    }

    #[test]
    fn mixed_tables_are_rejected() {
        let c1 = ctx5();
        let c2 = Ctx::new(5, &["x", "y"], CycRat::q_power(5, 1));
        let p = NCPoly::gen(&c1, 0);
        let r = NCPoly::gen(&c2, 0);
        assert_eq!(p.try_add(&r), Err(AlgError::MixedAlgebras));
        assert_eq!(p.try_mul(&r), Err(AlgError::MixedAlgebras));
    }

    #[test]
    fn render_and_parse_round_trip() {
        let ctx = ctx5();
        let p = parse_poly(&ctx, "q^2·a·b − 1").unwrap();
        assert_eq!(p.render(), "q^2·a·b - 1");
        assert_eq!(parse_poly(&ctx, &p.render()).unwrap(), p);
        let r = parse_poly(&ctx, "q^-1*b*a + (1 + q)·c^3 - 3/2").unwrap();
        assert_eq!(parse_poly(&ctx, &r.render()).unwrap(), r);
        assert!(parse_poly(&ctx, "a + x").is_err());
        assert!(parse_poly(&ctx, "a +").is_err());
    }
}
