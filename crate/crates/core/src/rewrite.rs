//! Rewriting modulo oriented relations: normal forms, overlap analysis,
//! bounded completion, irreducible-word enumeration and dimension detection.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::CycRat;
use crate::ncalg::{Ctx, MonomialOrder, NCPoly, TensorPoly, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
    MinusOne,
    Generic,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
            Parity::MinusOne => "minus_one",
            Parity::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Option<Parity> {
        match s {
            "odd" => Some(Parity::Odd),
            "even" => Some(Parity::Even),
            "minus_one" => Some(Parity::MinusOne),
            "generic" => Some(Parity::Generic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("completion failure: {0}")]
    CompletionFailure(String),
    #[error("rule {0} is not oriented: a right-hand word is not smaller than the left-hand side")]
    Unoriented(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl Rule {
    /// The relation lhs - rhs as a polynomial.
    pub fn relation(&self) -> NCPoly {
        let l = NCPoly::word(self.rhs.ctx(), self.lhs.clone());
        &l - &self.rhs
    }

    pub fn is_oriented(&self) -> bool {
        self.rhs.terms().keys().all(|w| self.rhs.ctx().cmp_words(w, &self.lhs) == std::cmp::Ordering::Less)
    }

    pub fn render(&self) -> String {
        format!("{} -> {}", self.lhs.render(self.rhs.ctx()), self.rhs.render())
    }
}

/// Generators, order and oriented rules.
///
/// Generators are listed in precedence order; the order itself (possibly
/// weighted) comes from the context.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    ctx: Ctx,
    order: MonomialOrder,
    ell: u32,
    parity: Parity,
    rules: Vec<Rule>,
    index: HashMap<Vec<u8>, usize>,
    lens: Vec<usize>,
}

impl Presentation {
    pub fn new(name: &str, ctx: &Ctx, ell: u32, parity: Parity, rules: Vec<Rule>) -> Result<Presentation, RewriteError> {
        for r in &rules {
            if !r.is_oriented() {
                return Err(RewriteError::Unoriented(r.render()));
            }
        }
        let mut p = Presentation {
            name: name.to_string(),
            ctx: ctx.clone(),
            order: ctx.order().clone(),
            ell,
            parity,
            rules,
            index: HashMap::new(),
            lens: Vec::new(),
        };
        p.reindex();
        Ok(p)
    }

    fn reindex(&mut self) {
        self.index.clear();
        let mut lens: Vec<usize> = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            self.index.entry(r.lhs.0.clone()).or_insert(i);
            if !lens.contains(&r.lhs.len()) {
                lens.push(r.lhs.len());
            }
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        self.lens = lens;
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn parity(&self) -> Parity {
        self.parity
    }
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
    pub fn with_name(mut self, name: &str) -> Presentation {
        self.name = name.to_string();
        self
    }
    pub fn max_lhs_len(&self) -> usize {
        self.lens.first().copied().unwrap_or(0)
    }

    /// Relations lhs - rhs of all rules.
    pub fn relations(&self) -> Vec<NCPoly> {
        self.rules.iter().map(|r| r.relation()).collect()
    }

    /// Leftmost occurrence of a rule lhs in `w`, longest lhs first at each position.
    pub fn find_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        if let Some(&i) = self.index.get(&[][..]) {
            return Some((0, i));
        }
        for pos in 0..w.len() {
            for &l in &self.lens {
                if pos + l <= w.len() {
                    if let Some(&i) = self.index.get(&w[pos..pos + l]) {
                        return Some((pos, i));
                    }
                }
            }
        }
        None
    }

    /// True when no lhs occurs as a suffix of `w` (the prefix being known irreducible).
    fn suffix_irreducible(&self, w: &[u8]) -> bool {
        self.lens.iter().all(|&l| l > w.len() || !self.index.contains_key(&w[w.len() - l..]))
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(&w.0).is_none()
    }

    pub fn reducer(&self) -> Reducer<'_> {
        Reducer::new(self)
    }

    pub fn to_json(&self) -> Value {
        let rules: Vec<Value> = self
            .rules
            .iter()
            .map(|r| json!({"lhs": r.lhs.render(&self.ctx), "rhs": r.rhs.render()}))
            .collect();
        json!({
            "name": self.name,
            "generators": self.ctx.gens(),
            "precedence": self.order.precedence().iter().map(|&g| self.ctx.gens()[g as usize].clone()).collect::<Vec<_>>(),
            "order": "deglex",
            "ell": self.ell,
            "field": self.ctx.field(),
            "parity": self.parity.as_str(),
            "rules": rules,
        })
    }
}

/// Normal-form evaluator with a per-word memo table.
pub struct Reducer<'a> {
    pres: &'a Presentation,
    cache: RefCell<HashMap<Word, NCPoly>>,
}

impl<'a> Reducer<'a> {
    pub fn new(pres: &'a Presentation) -> Reducer<'a> {
        Reducer { pres, cache: RefCell::new(HashMap::new()) }
    }

    pub fn presentation(&self) -> &Presentation {
        self.pres
    }

    pub fn nf_word(&self, w: &Word) -> NCPoly {
        if let Some(p) = self.cache.borrow().get(w) {
            return p.clone();
        }
        let ctx = &self.pres.ctx;
        let out = match self.pres.find_redex(&w.0) {
            None => NCPoly::word(ctx, w.clone()),
            Some((pos, i)) => {
                let rule = &self.pres.rules[i];
                let u = Word(w.0[..pos].to_vec());
                let v = Word(w.0[pos + rule.lhs.len()..].to_vec());
                let mut acc = NCPoly::zero(ctx);
                for (x, c) in rule.rhs.terms() {
                    let r = self.nf_word(&u.concat(x).concat(&v));
                    acc.add_assign_scaled(&r, c);
                }
                acc
            }
        };
        self.cache.borrow_mut().insert(w.clone(), out.clone());
        out
    }

    pub fn nf(&self, p: &NCPoly) -> NCPoly {
        let mut acc = NCPoly::zero(&self.pres.ctx);
        for (w, c) in p.terms() {
            acc.add_assign_scaled(&self.nf_word(w), c);
        }
        acc
    }

    /// Normal form of a product of normal forms.
    pub fn mul(&self, p: &NCPoly, r: &NCPoly) -> NCPoly {
        self.nf(&(p * r))
    }

    /// Reduces each tensor leg independently.
    pub fn nf_tensor(&self, t: &TensorPoly) -> TensorPoly {
        let ctx = &self.pres.ctx;
        let mut acc = TensorPoly::zero(ctx);
        for ((u, v), c) in t.terms() {
            let nu = self.nf_word(u);
            let nv = self.nf_word(v);
            for (x, a) in nu.terms() {
                let ca = c * a;
                for (y, b) in nv.terms() {
                    acc.add_term(x.clone(), y.clone(), &ca * b);
                }
            }
        }
        acc
    }

    pub fn is_zero(&self, p: &NCPoly) -> bool {
        self.nf(p).is_zero()
    }
}

pub fn normal_form(p: &NCPoly, pres: &Presentation) -> NCPoly {
    pres.reducer().nf(p)
}

/// An ambiguity whose two one-step reductions have different normal forms.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub word: Word,
    pub rules: (usize, usize),
    pub difference: NCPoly,
}

impl Overlap {
    pub fn to_json(&self, pres: &Presentation) -> Value {
        json!({
            "word": self.word.render(pres.ctx()),
            "rules": [self.rules.0, self.rules.1],
            "difference": self.difference.render(),
        })
    }
}

struct Ambiguity {
    word: Word,
    left: NCPoly,
    right: NCPoly,
    rules: (usize, usize),
}

/// All overlap and inclusion ambiguities among the rules with word length <= max_len.
fn ambiguities(pres: &Presentation, max_len: Option<usize>, filter: &dyn Fn(usize, usize) -> bool) -> Vec<Ambiguity> {
    let rules = &pres.rules;
    let mut out = Vec::new();
    for (i, r1) in rules.iter().enumerate() {
        let l1 = &r1.lhs.0;
        for (j, r2) in rules.iter().enumerate() {
            if !filter(i, j) {
                continue;
            }
            let l2 = &r2.lhs.0;
            // suffix of l1 equals prefix of l2
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] != l2[..k] {
                    continue;
                }
                let total = l1.len() + l2.len() - k;
                if max_len.map_or(false, |m| total > m) {
                    continue;
                }
                let tail = Word(l2[k..].to_vec());
                let head = Word(l1[..l1.len() - k].to_vec());
                out.push(Ambiguity {
                    word: r1.lhs.concat(&tail),
                    left: r1.rhs.sandwich(&Word::empty(), &tail),
                    right: r2.rhs.sandwich(&head, &Word::empty()),
                    rules: (i, j),
                });
            }
            // l2 strictly inside l1
            if i != j && l2.len() <= l1.len() && max_len.map_or(true, |m| l1.len() <= m) {
                for pos in 0..=(l1.len() - l2.len()) {
                    if l1[pos..pos + l2.len()] == l2[..] {
                        let head = Word(l1[..pos].to_vec());
                        let tail = Word(l1[pos + l2.len()..].to_vec());
                        out.push(Ambiguity {
                            word: r1.lhs.clone(),
                            left: r1.rhs.clone(),
                            right: r2.rhs.sandwich(&head, &tail),
                            rules: (i, j),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Unresolved ambiguities with overlap word length <= max_len. Empty means
/// confluent up to the bound.
pub fn check_confluence(pres: &Presentation, max_len: usize) -> Vec<Overlap> {
    let red = pres.reducer();
    let mut out = Vec::new();
    for a in ambiguities(pres, Some(max_len), &|_, _| true) {
        let d = red.nf(&(&a.left - &a.right));
        if !d.is_zero() {
            out.push(Overlap { word: a.word, rules: a.rules, difference: d });
        }
    }
    out
}

/// Length of the longest ambiguity word, so `check_confluence` at this bound sees all of them.
pub fn full_overlap_bound(pres: &Presentation) -> usize {
    (2 * pres.max_lhs_len()).saturating_sub(1).max(1)
}

#[derive(Clone, Debug)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_rounds: usize,
    pub max_lhs_len: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits { max_rules: 4000, max_rounds: 200, max_lhs_len: 64 }
    }
}

fn monic_rule(p: &NCPoly) -> Option<Rule> {
    let (lw, lc) = p.leading()?;
    let lw = lw.clone();
    let inv = lc.inverse().expect("nonzero leading coefficient");
    let neg = -&inv;
    let mut rhs = NCPoly::zero(p.ctx());
    for (w, c) in p.terms() {
        if *w != lw {
            rhs.add_term(w.clone(), c * &neg);
        }
    }
    Some(Rule { lhs: lw, rhs })
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Adds the polynomials `extra` as relations and completes the system by
/// resolving every ambiguity, interreducing as rules are added.
pub fn complete(
    base: &Presentation,
    extra: &[NCPoly],
    name: &str,
    limits: &CompletionLimits,
) -> Result<Presentation, RewriteError> {
    let mut pres = base.clone().with_name(name);
    let mut pending: Vec<NCPoly> = extra.to_vec();
    let mut seen: HashSet<(Word, String, Word, String)> = HashSet::new();
    let mut full_pass = false;
    for _round in 0..limits.max_rounds {
        let changed = insert_all(&mut pres, &mut pending, limits)?;
        if pres.rules.iter().any(|r| r.lhs.is_empty()) {
            // 1 lies in the ideal: the quotient is zero
            let ctx = pres.ctx.clone();
            pres.rules = vec![Rule { lhs: Word::empty(), rhs: NCPoly::zero(&ctx) }];
            pres.reindex();
            return Ok(pres);
        }
        if changed {
            interreduce(&mut pres);
            full_pass = false;
        }
        let red = pres.reducer();
        let rules = pres.rules.clone();
        let keys: Vec<String> = rules.iter().map(|r| r.rhs.render()).collect();
        let filter = |i: usize, j: usize| {
            full_pass || !seen.contains(&(rules[i].lhs.clone(), keys[i].clone(), rules[j].lhs.clone(), keys[j].clone()))
        };
        let ambs = ambiguities(&pres, None, &filter);
        let mut pairs = Vec::new();
        for a in ambs {
            let d = red.nf(&(&a.left - &a.right));
            pairs.push(a.rules);
            if !d.is_zero() {
                pending.push(d);
            }
        }
        for (i, j) in pairs {
            seen.insert((rules[i].lhs.clone(), keys[i].clone(), rules[j].lhs.clone(), keys[j].clone()));
        }
        if pending.is_empty() {
            if full_pass {
                return Ok(pres);
            }
            full_pass = true;
        }
    }
    Err(RewriteError::CompletionFailure(format!("{}: round limit {} reached", name, limits.max_rounds)))
}

fn insert_all(pres: &mut Presentation, pending: &mut Vec<NCPoly>, limits: &CompletionLimits) -> Result<bool, RewriteError> {
    let mut changed = false;
    // smallest leading words first keeps the rule set small
    pending.sort_by(|a, b| match (a.leading_word(), b.leading_word()) {
        (Some(x), Some(y)) => a.ctx().cmp_words(x, y),
        (x, y) => x.cmp(&y),
    });
    pending.reverse();
    while let Some(p) = pending.pop() {
        let r = pres.reducer().nf(&p);
        let rule = match monic_rule(&r) {
            None => continue,
            Some(rule) => rule,
        };
        if rule.lhs.len() > limits.max_lhs_len {
            return Err(RewriteError::CompletionFailure(format!(
                "{}: left-hand side longer than {}",
                pres.name, limits.max_lhs_len
            )));
        }
        if rule.lhs.is_empty() {
            pres.rules = vec![rule];
            pres.reindex();
            pending.clear();
            return Ok(true);
        }
        let mut kept = Vec::with_capacity(pres.rules.len() + 1);
        for old in pres.rules.drain(..) {
            if contains(&old.lhs.0, &rule.lhs.0) {
                pending.push(old.relation());
            } else {
                kept.push(old);
            }
        }
        kept.push(rule);
        pres.rules = kept;
        pres.reindex();
        changed = true;
        if pres.rules.len() > limits.max_rules {
            return Err(RewriteError::CompletionFailure(format!(
                "{}: more than {} rules",
                pres.name, limits.max_rules
            )));
        }
    }
    Ok(changed)
}

fn interreduce(pres: &mut Presentation) {
    let rules = pres.rules.clone();
    let red = pres.reducer();
    let new: Vec<Rule> = rules.iter().map(|r| Rule { lhs: r.lhs.clone(), rhs: red.nf(&r.rhs) }).collect();
    drop(red);
    let mut new = new;
    new.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    pres.rules = new;
    pres.reindex();
}

/// Irreducible words of each length 0..=max_len.
pub fn enumerate_basis(pres: &Presentation, max_len: usize) -> Vec<Vec<Word>> {
    let n = pres.ctx.ngens() as u8;
    let mut out: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    for _ in 0..max_len {
        let prev = out.last().unwrap();
        let mut next = Vec::new();
        for w in prev {
            for g in 0..n {
                let mut v = w.0.clone();
                v.push(g);
                if pres.suffix_irreducible(&v) {
                    next.push(Word(v));
                }
            }
        }
        out.push(next);
    }
    out
}

/// All irreducible words of a finite-dimensional presentation, in deglex order.
pub fn finite_basis(pres: &Presentation) -> Option<Vec<Word>> {
    if language_is_infinite(pres) {
        return None;
    }
    let mut all = Vec::new();
    let mut layer = vec![Word::empty()];
    let n = pres.ctx.ngens() as u8;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..n {
                let mut v = w.0.clone();
                v.push(g);
                if pres.suffix_irreducible(&v) {
                    next.push(Word(v));
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    Some(all)
}

/// Decides whether infinitely many words avoid every lhs.
///
/// States are irreducible words of length K = max(L - 1, 1), L the longest lhs;
/// an edge appends a letter and keeps the last K letters. The language is
/// infinite iff this graph has a cycle.
pub fn language_is_infinite(pres: &Presentation) -> bool {
    let k = pres.max_lhs_len().saturating_sub(1).max(1);
    let layers = enumerate_basis(pres, k);
    let states = &layers[k];
    if states.is_empty() {
        return false;
    }
    let id: HashMap<&[u8], usize> = states.iter().enumerate().map(|(i, w)| (&w.0[..], i)).collect();
    let n = pres.ctx.ngens() as u8;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
    for (i, w) in states.iter().enumerate() {
        for g in 0..n {
            let mut v = w.0.clone();
            v.push(g);
            if pres.suffix_irreducible(&v) {
                if let Some(&j) = id.get(&v[1..]) {
                    adj[i].push(j);
                }
            }
        }
    }
    // iterative three-colour DFS for a back edge
    let mut colour = vec![0u8; states.len()];
    for s in 0..states.len() {
        if colour[s] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        colour[s] = 1;
        while let Some(&mut (v, ref mut e)) = stack.last_mut() {
            if *e < adj[v].len() {
                let u = adj[v][*e];
                *e += 1;
                match colour[u] {
                    0 => {
                        colour[u] = 1;
                        stack.push((u, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                colour[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    InfiniteAtLeast(usize),
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(k) => Some(k),
            Dimension::InfiniteAtLeast(_) => None,
        }
    }
    pub fn to_json(self) -> Value {
        match self {
            Dimension::Finite(k) => json!({"kind": "finite", "value": k}),
            Dimension::InfiniteAtLeast(k) => json!({"kind": "infinite_at_least", "value": k}),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DimensionReport {
    pub dimension: Dimension,
    /// Irreducible words per length, up to the last nonempty length (finite)
    /// or to the probe bound (infinite).
    pub counts: Vec<usize>,
    /// Set when some ambiguity is unresolved, so the count may overestimate.
    pub provisional: bool,
}

impl DimensionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension.to_json(),
            "counts_by_length": self.counts,
            "provisional": self.provisional,
        })
    }
}

pub fn dimension(pres: &Presentation, probe_bound: usize) -> DimensionReport {
    let provisional = !check_confluence(pres, full_overlap_bound(pres).max(probe_bound)).is_empty();
    if language_is_infinite(pres) {
        let layers = enumerate_basis(pres, probe_bound);
        let counts: Vec<usize> = layers.iter().map(|l| l.len()).collect();
        let total = counts.iter().sum();
        return DimensionReport { dimension: Dimension::InfiniteAtLeast(total), counts, provisional };
    }
    let basis = finite_basis(pres).expect("finite language");
    let maxlen = basis.last().map_or(0, |w| w.len());
    let mut counts = vec![0; maxlen + 1];
    for w in &basis {
        counts[w.len()] += 1;
    }
    DimensionReport { dimension: Dimension::Finite(basis.len()), counts, provisional }
}

/// Convenience for building rules from a relation `lhs_word = rhs`.
pub fn rule(ctx: &Ctx, lhs: &[u8], rhs: NCPoly) -> Rule {
    debug_assert!(rhs.ctx() == ctx);
    Rule { lhs: Word(lhs.to_vec()), rhs }
}

/// Scalar multiple of a word as a polynomial.
pub fn term(ctx: &Ctx, w: &[u8], c: CycRat) -> NCPoly {
    NCPoly::monomial(ctx, Word(w.to_vec()), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_gen() -> Ctx {
        Ctx::new(1, &["a", "b"], CycRat::one(1))
    }

    #[test]
    fn self_overlapping_rule_is_confluent() {
        let ctx = two_gen();
        let p = Presentation::new("t", &ctx, 1, Parity::Generic, vec![rule(&ctx, &[0, 0, 0], NCPoly::zero(&ctx))]).unwrap();
        assert!(check_confluence(&p, 8).is_empty());
        assert!(language_is_infinite(&p));
    }

    #[test]
    fn nonconfluent_pair_is_reported_and_completed() {
        let ctx = two_gen();
        let rules = vec![
            rule(&ctx, &[0, 1], NCPoly::gen(&ctx, 0)),
            rule(&ctx, &[1, 0], NCPoly::gen(&ctx, 1)),
        ];
        let p = Presentation::new("t", &ctx, 1, Parity::Generic, rules).unwrap();
        let bad = check_confluence(&p, 3);
        assert!(!bad.is_empty());
        let c = complete(&p, &[], "t*", &CompletionLimits::default()).unwrap();
        assert!(check_confluence(&c, 8).is_empty());
    }

    #[test]
    fn finite_and_infinite_languages() {
        let ctx = two_gen();
        let rules = vec![
            rule(&ctx, &[0, 0], NCPoly::one(&ctx)),
            rule(&ctx, &[1], NCPoly::zero(&ctx)),
        ];
        let p = Presentation::new("z2", &ctx, 1, Parity::Generic, rules).unwrap();
        let d = dimension(&p, 10);
        assert_eq!(d.dimension, Dimension::Finite(2));
        assert!(!d.provisional);
    }

    #[test]
    fn unoriented_rule_is_rejected() {
        let ctx = two_gen();
        let r = rule(&ctx, &[0], NCPoly::from_names(&ctx, &["b", "b"]));
        assert!(Presentation::new("bad", &ctx, 1, Parity::Generic, vec![r]).is_err());
    }
}
