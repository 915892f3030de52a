//! Subgroup data, vanishing ideals of finite subgroups, the quotient pipeline
//! A_D, datum equivalence and the q = -1 classification.

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::CycRat;
use crate::hopf::{
    build_finite_model, check_axioms, check_structure_well_defined, grouplikes, verify_hopf_morphism, FiniteModel, Images,
    Source, Target,
};
use crate::linalg::{self, Echelon, Vector};
use crate::ncalg::{Ctx, NCPoly, Word};
use crate::presentations::{
    classical_sl2, half_order, o_minus1_sl2, o_minus1_sl2_over, oq_sl2, phi_images, to_vector, NamedAlgebra, A, B, C, D,
};
use crate::report::Report;
use crate::rewrite::{
    check_confluence, complete, dimension, enumerate_basis, CompletionLimits, DimensionReport, RewriteError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("malformed datum: {0}")]
    Malformed(String),
    #[error("invalid datum: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("inconsistent datum: the image of O(Γ) has dimension {got}, expected {expected}")]
    InconsistentDatum { expected: usize, got: usize },
    #[error("kernel certificate failed: {0}")]
    CertificateFailed(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DatumParity {
    Odd,
    Even,
    MinusOne,
}

impl DatumParity {
    pub fn as_str(self) -> &'static str {
        match self {
            DatumParity::Odd => "odd",
            DatumParity::Even => "even",
            DatumParity::MinusOne => "minus_one",
        }
    }
    pub fn parse(s: &str) -> Option<DatumParity> {
        match s {
            "odd" => Some(DatumParity::Odd),
            "even" => Some(DatumParity::Even),
            "minus_one" => Some(DatumParity::MinusOne),
            _ => None,
        }
    }
    /// Subgroups live in SL2 for odd parity and in PSL2 otherwise.
    pub fn projective(self) -> bool {
        self != DatumParity::Odd
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogGroup {
    Torus,
    BorelPlus,
    BorelMinus,
    Ga,
    Gm,
    Full,
}

impl CatalogGroup {
    pub const ALL: [CatalogGroup; 6] =
        [CatalogGroup::Torus, CatalogGroup::BorelPlus, CatalogGroup::BorelMinus, CatalogGroup::Ga, CatalogGroup::Gm, CatalogGroup::Full];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogGroup::Torus => "torus",
            CatalogGroup::BorelPlus => "borel_plus",
            CatalogGroup::BorelMinus => "borel_minus",
            CatalogGroup::Ga => "G_a",
            CatalogGroup::Gm => "G_m",
            CatalogGroup::Full => "full",
        }
    }
    pub fn parse(s: &str) -> Option<CatalogGroup> {
        CatalogGroup::ALL.iter().copied().find(|g| g.as_str() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u32),
    Dihedral(u32),
    Trivial,
    Catalog(CatalogGroup),
}

impl GroupSpec {
    pub fn is_finite(self) -> bool {
        !matches!(self, GroupSpec::Catalog(_))
    }
    pub fn order(self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(n as usize),
            GroupSpec::Dihedral(m) => Some(2 * m as usize),
            GroupSpec::Trivial => Some(1),
            GroupSpec::Catalog(_) => None,
        }
    }
    pub fn label(self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("Z{}", n),
            GroupSpec::Dihedral(m) => format!("D{}", 2 * m),
            GroupSpec::Trivial => "1".to_string(),
            GroupSpec::Catalog(g) => g.as_str().to_string(),
        }
    }
    /// Contained in the diagonal torus.
    fn diagonal(self) -> bool {
        matches!(self, GroupSpec::Cyclic(_) | GroupSpec::Trivial | GroupSpec::Catalog(CatalogGroup::Torus) | GroupSpec::Catalog(CatalogGroup::Gm))
    }
}

/// Diagonal embedding g -> diag(w^e, w^-e).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddingSpec {
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupDatum {
    pub parity: DatumParity,
    pub ell: u32,
    pub i_plus: Vec<u32>,
    pub i_minus: Vec<u32>,
    pub n_generator: Option<u32>,
    pub gamma: GroupSpec,
    pub sigma: EmbeddingSpec,
    pub delta_exponent: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGamma {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSigma {
    exponent: i64,
}

fn default_sigma() -> RawSigma {
    RawSigma { exponent: 1 }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    parity: String,
    ell: u32,
    #[serde(rename = "I_plus", default)]
    i_plus: Vec<u32>,
    #[serde(rename = "I_minus", default)]
    i_minus: Vec<u32>,
    #[serde(rename = "N_generator", default, skip_serializing_if = "Option::is_none")]
    n_generator: Option<u32>,
    gamma: RawGamma,
    #[serde(default = "default_sigma")]
    sigma: RawSigma,
    #[serde(default)]
    delta_exponent: i64,
}

impl SubgroupDatum {
    pub fn from_json_str(text: &str) -> Result<SubgroupDatum, SubgroupError> {
        let raw: RawDatum = serde_json::from_str(text).map_err(|e| SubgroupError::Malformed(e.to_string()))?;
        SubgroupDatum::from_raw(raw)
    }

    pub fn from_value(v: &Value) -> Result<SubgroupDatum, SubgroupError> {
        let raw: RawDatum = serde_json::from_value(v.clone()).map_err(|e| SubgroupError::Malformed(e.to_string()))?;
        SubgroupDatum::from_raw(raw)
    }

    fn from_raw(raw: RawDatum) -> Result<SubgroupDatum, SubgroupError> {
        let parity = DatumParity::parse(&raw.parity)
            .ok_or_else(|| SubgroupError::Malformed(format!("unknown parity {:?}", raw.parity)))?;
        let need = |x: Option<u32>, key: &str| x.ok_or_else(|| SubgroupError::Malformed(format!("gamma.{} missing", key)));
        let gamma = match raw.gamma.kind.as_str() {
            "cyclic" => GroupSpec::Cyclic(need(raw.gamma.n, "n")?),
            "dihedral" => GroupSpec::Dihedral(need(raw.gamma.m, "m")?),
            "trivial" => GroupSpec::Trivial,
            "catalog" => {
                let name = raw.gamma.name.ok_or_else(|| SubgroupError::Malformed("gamma.name missing".into()))?;
                GroupSpec::Catalog(
                    CatalogGroup::parse(&name).ok_or_else(|| SubgroupError::Malformed(format!("unknown catalog group {:?}", name)))?,
                )
            }
            k => return Err(SubgroupError::Malformed(format!("unknown gamma kind {:?}", k))),
        };
        Ok(SubgroupDatum {
            parity,
            ell: raw.ell,
            i_plus: raw.i_plus,
            i_minus: raw.i_minus,
            n_generator: raw.n_generator,
            gamma,
            sigma: EmbeddingSpec { exponent: raw.sigma.exponent },
            delta_exponent: raw.delta_exponent,
        })
    }

    fn to_raw(&self) -> RawDatum {
        let gamma = match self.gamma {
            GroupSpec::Cyclic(n) => RawGamma { kind: "cyclic".into(), n: Some(n), m: None, name: None },
            GroupSpec::Dihedral(m) => RawGamma { kind: "dihedral".into(), n: None, m: Some(m), name: None },
            GroupSpec::Trivial => RawGamma { kind: "trivial".into(), n: None, m: None, name: None },
            GroupSpec::Catalog(g) => RawGamma { kind: "catalog".into(), n: None, m: None, name: Some(g.as_str().into()) },
        };
        RawDatum {
            parity: self.parity.as_str().into(),
            ell: self.ell,
            i_plus: self.i_plus.clone(),
            i_minus: self.i_minus.clone(),
            n_generator: self.n_generator,
            gamma,
            sigma: RawSigma { exponent: self.sigma.exponent },
            delta_exponent: self.delta_exponent,
        }
    }

    /// Serialization in the documented field order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("serializable")
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.to_raw()).expect("serializable")
    }

    /// s = 1 - |I+ ∪ I-|.
    pub fn s(&self) -> i32 {
        if self.i_plus.is_empty() && self.i_minus.is_empty() {
            1
        } else {
            0
        }
    }

    /// p when N = (p) is a nontrivial subgroup of Z_ell.
    pub fn n_nontrivial(&self) -> Option<u32> {
        self.n_generator.filter(|&p| p != self.ell && p != 0)
    }

    /// ord(q^2).
    pub fn m(&self) -> u32 {
        match self.parity {
            DatumParity::Odd => self.ell,
            DatumParity::Even => self.ell / 2,
            DatumParity::MinusOne => 1,
        }
    }

    pub fn case_name(&self) -> &'static str {
        match (self.i_plus.is_empty(), self.i_minus.is_empty()) {
            (true, true) => "I",
            (false, true) => "II",
            (true, false) => "III",
            (false, false) => "IV",
        }
    }
}

/// Structural constraints on a datum; returns every violated one.
pub fn validate_datum(d: &SubgroupDatum) -> Result<(), Vec<String>> {
    let mut v = Vec::new();
    match d.parity {
        DatumParity::Odd if d.ell % 2 == 0 || d.ell < 3 => v.push(format!("odd parity needs odd ell >= 3, got {}", d.ell)),
        DatumParity::Even if d.ell % 2 == 1 || d.ell < 4 => v.push(format!("even parity needs even ell >= 4, got {}", d.ell)),
        DatumParity::MinusOne if d.ell != 2 => v.push(format!("minus_one parity needs ell = 2, got {}", d.ell)),
        _ => {}
    }
    for (name, set) in [("I_plus", &d.i_plus), ("I_minus", &d.i_minus)] {
        if !(set.is_empty() || set.as_slice() == [1]) {
            v.push(format!("{} must be [] or [1], got {:?}", name, set));
        }
    }
    if let Some(p) = d.n_generator {
        if p == 0 || d.ell % p != 0 {
            v.push(format!("N generator p = {} does not divide ell = {}", p, d.ell));
        } else if p != d.ell && d.s() != 1 {
            v.push(format!("s = {} forces N trivial, got N = ({})", d.s(), p));
        }
    }
    match d.gamma {
        GroupSpec::Cyclic(0) => v.push("cyclic group of order 0".into()),
        GroupSpec::Dihedral(0) => v.push("dihedral group with m = 0".into()),
        GroupSpec::Dihedral(_) if !d.parity.projective() => {
            v.push("dihedral subgroups need the PSL2 target (even or minus_one parity)".into())
        }
        _ => {}
    }
    if let GroupSpec::Cyclic(n) = d.gamma {
        if n > 0 && d.sigma.exponent.gcd(&(n as i64)) != 1 {
            v.push(format!("embedding exponent {} is not a unit mod {}: not injective", d.sigma.exponent, n));
        }
    }
    let allowed = match d.case_name() {
        "I" => d.gamma.diagonal(),
        "II" => d.gamma.diagonal() || matches!(d.gamma, GroupSpec::Catalog(CatalogGroup::BorelPlus) | GroupSpec::Catalog(CatalogGroup::Ga)),
        "III" => d.gamma.diagonal() || matches!(d.gamma, GroupSpec::Catalog(CatalogGroup::BorelMinus)),
        _ => true,
    };
    if !allowed {
        v.push(format!("gamma {} is not contained in the case {} subgroup", d.gamma.label(), d.case_name()));
    }
    if d.n_nontrivial().is_some() && !d.gamma.diagonal() {
        v.push(format!("N nontrivial needs a diagonal gamma, got {}", d.gamma.label()));
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

// ---------------------------------------------------------------------------
// finite subgroups as matrices

/// 2x2 matrix entries in the order X11, X12, X21, X22.
pub type Mat = [CycRat; 4];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    [
        &(&x[0] * &y[0]) + &(&x[1] * &y[2]),
        &(&x[0] * &y[1]) + &(&x[1] * &y[3]),
        &(&x[2] * &y[0]) + &(&x[3] * &y[2]),
        &(&x[2] * &y[1]) + &(&x[3] * &y[3]),
    ]
}

fn diag(f: u32, k: i64) -> Mat {
    [CycRat::q_power(f, k), CycRat::zero(f), CycRat::zero(f), CycRat::q_power(f, -k)]
}

fn neg(x: &Mat) -> Mat {
    [-&x[0], -&x[1], -&x[2], -&x[3]]
}

/// Matrices of the group in SL2, together with their field order. For the
/// projective target the list is the full preimage in SL2 (both signs).
pub fn group_matrices(gamma: GroupSpec, exponent: i64, projective: bool) -> Option<(u32, Vec<Mat>)> {
    match gamma {
        GroupSpec::Trivial => {
            if projective {
                let id = diag(2, 0);
                Some((2, vec![id.clone(), neg(&id)]))
            } else {
                Some((1, vec![diag(1, 0)]))
            }
        }
        GroupSpec::Cyclic(n) => {
            let n = n as i64;
            if projective {
                // w of order 2n: diag(w^e, w^-e)^k runs over the preimage
                let f = 2 * n as u32;
                Some((f, (0..2 * n).map(|k| diag(f, exponent * k)).collect()))
            } else {
                let f = n as u32;
                Some((f, (0..n).map(|k| diag(f, exponent * k)).collect()))
            }
        }
        GroupSpec::Dihedral(m) => {
            if !projective {
                return None;
            }
            let f = 2 * m;
            let s: Mat = [CycRat::zero(f), CycRat::one(f), CycRat::from_int(f, -1), CycRat::zero(f)];
            let mut out = Vec::new();
            for k in 0..2 * m as i64 {
                let r = diag(f, k);
                out.push(mat_mul(&r, &s));
                out.push(r);
            }
            Some((f, out))
        }
        GroupSpec::Catalog(_) => None,
    }
}

fn eval_word(w: &Word, g: &Mat, f: u32) -> CycRat {
    let mut acc = CycRat::one(f);
    for &l in &w.0 {
        acc = &acc * &g[l as usize];
        if acc.is_zero() {
            break;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// vanishing ideals

/// Generators of the vanishing ideal of σ(Γ) in the commutative coordinate
/// algebra, with the two certificates.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub generators: Vec<NCPoly>,
    pub group_order: usize,
    pub projective: bool,
    pub max_deg: usize,
    /// Rank of the evaluation map on the ambient basis up to max_deg.
    pub evaluation_rank: usize,
    /// Dimension of O(SL2)/(generators) computed by rewriting; for the
    /// projective target this is the order of the preimage, 2|Γ|.
    pub quotient_dimension: Option<usize>,
}

impl Kernel {
    pub fn certified(&self) -> bool {
        let cover = if self.projective { 2 } else { 1 };
        self.evaluation_rank == self.group_order && self.quotient_dimension == Some(cover * self.group_order)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "generators": self.generators.iter().map(|g| g.render()).collect::<Vec<_>>(),
            "group_order": self.group_order,
            "ambient": if self.projective { "O(PSL2) even-degree model" } else { "O(SL2)" },
            "max_deg": self.max_deg,
            "evaluation_rank": self.evaluation_rank,
            "quotient_dimension": self.quotient_dimension,
            "certified": self.certified(),
        })
    }

    /// Membership of a polynomial in the ideal, decided within degree max_deg.
    pub fn ideal_contains(&self, p: &NCPoly) -> bool {
        let amb = classical_sl2();
        let red = amb.pres.reducer();
        let p = red.nf(p);
        let words = ambient_words(&amb, self.max_deg, self.projective);
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        if p.terms().keys().any(|w| !index.contains_key(w)) {
            return false;
        }
        let span = ideal_span(&amb, &self.generators, &words, self.max_deg, self.projective);
        span.contains(&to_vector(&p, &words))
    }
}

fn ambient_words(amb: &NamedAlgebra, max_deg: usize, projective: bool) -> Vec<Word> {
    enumerate_basis(&amb.pres, max_deg)
        .into_iter()
        .flatten()
        .filter(|w| !projective || w.len() % 2 == 0)
        .collect()
}

fn ideal_span(amb: &NamedAlgebra, gens: &[NCPoly], words: &[Word], max_deg: usize, projective: bool) -> Echelon {
    let red = amb.pres.reducer();
    let mut e = Echelon::new(1, words.len());
    for g in gens {
        add_multiples(&red, &mut e, g, words, max_deg, projective);
    }
    e
}

fn add_multiples(red: &crate::rewrite::Reducer, e: &mut Echelon, g: &NCPoly, words: &[Word], max_deg: usize, projective: bool) {
    let ctx = g.ctx();
    let deg = g.max_len();
    for w in words {
        if w.len() + deg > max_deg || (projective && w.len() % 2 == 1) {
            continue;
        }
        let p = red.nf(&(&NCPoly::word(ctx, w.clone()) * g));
        e.insert(&to_vector(&p, words));
    }
}

fn rational_vector(v: &[CycRat]) -> Option<Vector> {
    v.iter().map(|c| c.as_rational().map(|r| CycRat::from_rational(1, r))).collect()
}

/// Vanishing ideal of a finite subgroup, computed by evaluating the
/// ambient basis words on the group and extracting generators degreewise.
pub fn kernel_sigma_t(gamma: GroupSpec, exponent: i64, parity: DatumParity, max_deg: usize) -> Result<Kernel, SubgroupError> {
    let projective = parity.projective();
    let (f, elements) = group_matrices(gamma, exponent, projective)
        .ok_or_else(|| SubgroupError::CertificateFailed(format!("no matrix model for {}", gamma.label())))?;
    let group_order = gamma.order().expect("finite");
    let amb = classical_sl2();
    let red = amb.pres.reducer();
    let words = ambient_words(&amb, max_deg, projective);
    let cols: Vec<Vector> = words.iter().map(|w| elements.iter().map(|g| eval_word(w, g, f)).collect()).collect();
    let evaluation_rank = linalg::rank(f, elements.len(), &cols);
    let mut span = Echelon::new(1, words.len());
    let mut generators = Vec::new();
    for v in linalg::dependencies(f, &cols) {
        let v = rational_vector(&v).ok_or_else(|| SubgroupError::CertificateFailed("vanishing ideal not defined over Q".into()))?;
        if span.contains(&v) {
            continue;
        }
        let g = NCPoly::from_terms(amb.ctx(), words.iter().cloned().zip(v));
        add_multiples(&red, &mut span, &g, &words, max_deg, projective);
        generators.push(g);
    }
    let quotient_dimension = complete(&amb.pres, &generators, "kernel", &CompletionLimits::default())
        .ok()
        .and_then(|p| dimension(&p, max_deg).dimension.finite());
    Ok(Kernel { generators, group_order, projective, max_deg, evaluation_rank, quotient_dimension })
}

fn classical_word(ctx: &Ctx, w: &[u8]) -> NCPoly {
    NCPoly::word(ctx, Word(w.to_vec()))
}

/// Ideal generators for the positive-dimensional catalog groups.
pub fn catalog_kernel(g: CatalogGroup, projective: bool) -> Vec<NCPoly> {
    let amb = classical_sl2();
    let ctx = amb.ctx().clone();
    let x = |i: u8| classical_word(&ctx, &[i]);
    let one = NCPoly::one(&ctx);
    let odd: Vec<NCPoly> = match g {
        CatalogGroup::Torus | CatalogGroup::Gm => vec![x(B), x(C)],
        CatalogGroup::BorelPlus => vec![x(C)],
        CatalogGroup::BorelMinus => vec![x(B)],
        CatalogGroup::Ga => {
            if projective {
                vec![x(C), &x(A) - &x(D)]
            } else {
                vec![x(C), &x(A) - &one, &x(D) - &one]
            }
        }
        CatalogGroup::Full => vec![],
    };
    if !projective {
        return odd;
    }
    // even functions: multiply the odd generators by every coordinate
    let red = amb.pres.reducer();
    let mut out = Vec::new();
    for p in &odd {
        for j in 0..4u8 {
            let e = red.nf(&(p * &x(j)));
            if !e.is_zero() && !out.contains(&e) {
                out.push(e);
            }
        }
    }
    if g == CatalogGroup::Ga {
        out.push(red.nf(&(&classical_word(&ctx, &[A, A]) - &one)));
    }
    out
}

/// Image in O_q (or O_{-1}) of a polynomial of the commutative coordinate
/// algebra: X_ij -> x^ell for odd parity, X_ij X_kl -> φ(X_ij X_kl) otherwise.
pub fn lift(p: &NCPoly, target: &NamedAlgebra, parity: DatumParity) -> NCPoly {
    let ctx = target.ctx();
    let f = ctx.field();
    let mut out = NCPoly::zero(ctx);
    let phi: HashMap<Word, NCPoly> = if parity.projective() {
        phi_images(ctx, half_order(ctx.q()) as usize).into_iter().collect()
    } else {
        HashMap::new()
    };
    let ell = target.pres.ell() as usize;
    for (w, c) in p.terms() {
        let c = CycRat::from_rational(f, c.as_rational().expect("rational coefficients"));
        let img = if parity.projective() {
            assert!(w.len() % 2 == 0, "odd-degree word in the PSL2 model");
            let mut acc = NCPoly::one(ctx);
            for pair in w.0.chunks(2) {
                let key = Word(vec![pair[0].min(pair[1]), pair[0].max(pair[1])]);
                acc = &acc * &phi[&key];
            }
            acc
        } else {
            let mut v = Vec::with_capacity(w.len() * ell);
            for &l in &w.0 {
                v.extend(std::iter::repeat_n(l, ell));
            }
            NCPoly::word(ctx, Word(v))
        };
        out.add_assign_scaled(&img, &c);
    }
    out
}

// ---------------------------------------------------------------------------
// the pipeline

#[derive(Clone, Debug)]
pub struct Stage {
    pub name: String,
    pub added: Vec<NCPoly>,
    pub algebra: NamedAlgebra,
    pub dimension: DimensionReport,
}

impl Stage {
    pub fn to_json(&self) -> Value {
        json!({
            "step": self.name,
            "added": self.added.iter().map(|p| p.render()).collect::<Vec<_>>(),
            "rules": self.algebra.pres.rules().len(),
            "dimension": self.dimension.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub datum: SubgroupDatum,
    pub stages: Vec<Stage>,
    /// Top quotient H of the bottom exact sequence.
    pub h: NamedAlgebra,
    pub h_dimension: DimensionReport,
    pub kernel: Option<Kernel>,
    /// Dimension of the image of O(Γ) (finite Γ only).
    pub image_dimension: Option<usize>,
    pub certificates: Vec<Report>,
}

impl Construction {
    pub fn algebra(&self) -> &NamedAlgebra {
        &self.stages.last().expect("at least the base stage").algebra
    }
    pub fn dimension(&self) -> &DimensionReport {
        &self.stages.last().unwrap().dimension
    }
    pub fn consistent(&self) -> bool {
        match (self.datum.gamma.order(), self.image_dimension) {
            (Some(k), Some(d)) => k == d,
            _ => true,
        }
    }
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|r| r.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "datum": self.datum.to_json(),
            "case": self.datum.case_name(),
            "transcript": self.stages.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "presentation": self.algebra().pres.to_json(),
            "dimension": self.dimension().to_json(),
            "H": {"label": self.h.label, "dimension": self.h_dimension.to_json()},
            "kernel": self.kernel.as_ref().map(|k| k.to_json()),
            "gamma_order": self.datum.gamma.order(),
            "image_dimension": self.image_dimension,
            "consistent": self.consistent(),
            "certificates": self.certificates.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }
}

pub fn base_algebra(d: &SubgroupDatum) -> NamedAlgebra {
    match d.parity {
        DatumParity::MinusOne => o_minus1_sl2(),
        _ => oq_sl2(d.ell).expect("validated ell"),
    }
}

/// χ: the class of a^ell (odd), a^{2m} (even) or a^2 (q = -1), raised to r.
fn chi_power(ctx: &Ctx, d: &SubgroupDatum, r: i64) -> NCPoly {
    let base = match d.parity {
        DatumParity::Odd => d.ell as usize,
        _ => 2 * d.m() as usize,
    };
    let k = base * r.unsigned_abs() as usize;
    // d = a^{-1} once b = c = 0
    let letter = if r >= 0 { A } else { D };
    NCPoly::word(ctx, Word::power(letter, k))
}

fn coordinate_words() -> Vec<Word> {
    (0..4u8).map(Word::letter).collect()
}

/// Lifted augmentation ideal of the central (or normal) Hopf subalgebra.
fn lifted_augmentation(base: &NamedAlgebra, parity: DatumParity) -> Vec<NCPoly> {
    let amb = classical_sl2();
    let actx = amb.ctx();
    let words = if parity.projective() { crate::presentations::quadratic_words() } else { coordinate_words() };
    let ctx = base.ctx();
    words
        .iter()
        .map(|w| {
            let eps: i64 = w.0.iter().map(|&l| if l == A || l == D { 1 } else { 0 }).product();
            let p = lift(&NCPoly::word(actx, w.clone()), base, parity);
            &p - &NCPoly::constant(ctx, ctx.scalar(eps))
        })
        .collect()
}

/// Runs the three steps and collects the certificates. Consistency failures
/// are recorded, not raised; see `construct_certified`.
pub fn construct_quotient(d: &SubgroupDatum, max_deg: usize, probe: usize) -> Result<Construction, SubgroupError> {
    validate_datum(d).map_err(SubgroupError::Invalid)?;
    let base = base_algebra(d);
    let ctx = base.ctx().clone();
    let limits = CompletionLimits::default();
    let mut stages = vec![Stage {
        name: "base".into(),
        added: vec![],
        dimension: dimension(&base.pres, probe),
        algebra: base.clone(),
    }];
    let push = |stages: &mut Vec<Stage>, name: &str, added: Vec<NCPoly>| -> Result<(), SubgroupError> {
        let prev = &stages.last().unwrap().algebra;
        let label = format!("{}/{}", base.label, name);
        let pres = complete(&prev.pres, &added, &label, &limits)?;
        let algebra = prev.with_presentation(&label, pres);
        let dim = dimension(&algebra.pres, probe);
        stages.push(Stage { name: name.into(), added, algebra, dimension: dim });
        Ok(())
    };
    // step 1: Borel-type truncation
    let mut step1 = Vec::new();
    if d.i_plus.is_empty() {
        step1.push(NCPoly::gen(&ctx, B));
    }
    if d.i_minus.is_empty() {
        step1.push(NCPoly::gen(&ctx, C));
    }
    push(&mut stages, "borel", step1.clone())?;
    // step 2: lifted vanishing ideal
    let (kernel, kernel_gens) = match d.gamma {
        GroupSpec::Catalog(g) => (None, catalog_kernel(g, d.parity.projective())),
        g => {
            let k = kernel_sigma_t(g, d.sigma.exponent, d.parity, max_deg)?;
            let gens = k.generators.clone();
            (Some(k), gens)
        }
    };
    let lifted: Vec<NCPoly> = kernel_gens.iter().map(|p| lift(p, &base, d.parity)).collect();
    push(&mut stages, "kernel", lifted)?;
    // step 3: J_δ
    if let Some(p) = d.n_nontrivial() {
        let j = &NCPoly::word(&ctx, Word::power(A, p as usize)) - &chi_power(&ctx, d, d.delta_exponent);
        push(&mut stages, "j_delta", vec![j])?;
    }
    // H: step 1 plus the lifted augmentation ideal (and a^p - 1 after J_δ)
    let mut hgens = step1;
    hgens.extend(lifted_augmentation(&base, d.parity));
    if let Some(p) = d.n_nontrivial() {
        hgens.push(&NCPoly::word(&ctx, Word::power(A, p as usize)) - &NCPoly::one(&ctx));
    }
    let hpres = complete(&base.pres, &hgens, "H", &limits)?;
    let h = base.with_presentation(&format!("{}/H", base.label), hpres);
    let h_dimension = dimension(&h.pres, probe);

    let last = stages.last().unwrap();
    let image_dimension = d.gamma.order().map(|_| image_of_gamma(&last.algebra, d, max_deg));
    let mut certificates = Vec::new();
    let subject = last.algebra.label.clone();
    if let Some(k) = &kernel {
        certificates.push(Report::from_bool("kernel-certificate", &subject, k.certified(), k.to_json()));
    }
    let bad = check_confluence(&last.algebra.pres, 8);
    certificates.push(Report::from_bool(
        "confluence",
        &subject,
        bad.is_empty(),
        json!({"max_len": 8, "unresolved": bad.iter().map(|o| o.to_json(&last.algebra.pres)).collect::<Vec<_>>()}),
    ));
    certificates.push(check_structure_well_defined(&last.algebra));
    certificates.push(check_axioms(&last.algebra, 2));
    let finite: Vec<Option<usize>> = stages.iter().map(|s| s.dimension.dimension.finite()).collect();
    let monotone = finite.windows(2).all(|w| match (w[0], w[1]) {
        (Some(x), Some(y)) => y <= x,
        (Some(_), None) => false,
        _ => true,
    });
    certificates.push(Report::from_bool("monotone", &subject, monotone, json!({"dimensions": finite})));
    if let (Some(k), Some(got)) = (d.gamma.order(), image_dimension) {
        certificates.push(Report::from_bool("consistency", &subject, k == got, json!({"gamma_order": k, "image_dimension": got})));
    }
    if let (Some(k), Some(a), Some(hd)) =
        (d.gamma.order(), last.dimension.dimension.finite(), h_dimension.dimension.finite())
    {
        certificates.push(Report::from_bool(
            "sequence-dimension",
            &subject,
            a == k * hd,
            json!({"dim_A": a, "gamma_order": k, "dim_H": hd}),
        ));
    }
    Ok(Construction { datum: d.clone(), stages, h, h_dimension, kernel, image_dimension, certificates })
}

/// Like `construct_quotient`, but a collapse of O(Γ) is an error.
pub fn construct_certified(d: &SubgroupDatum, max_deg: usize, probe: usize) -> Result<Construction, SubgroupError> {
    let c = construct_quotient(d, max_deg, probe)?;
    if !c.consistent() {
        return Err(SubgroupError::InconsistentDatum {
            expected: d.gamma.order().unwrap(),
            got: c.image_dimension.unwrap(),
        });
    }
    Ok(c)
}

/// Dimension of the span of the lifted ambient basis inside the algebra.
fn image_of_gamma(alg: &NamedAlgebra, d: &SubgroupDatum, max_deg: usize) -> usize {
    let amb = classical_sl2();
    let base = base_algebra(d);
    let red = alg.pres.reducer();
    let words = ambient_words(&amb, max_deg, d.parity.projective());
    let images: Vec<NCPoly> = words
        .iter()
        .map(|w| red.nf(&lift(&NCPoly::word(amb.ctx(), w.clone()), &base, d.parity).transfer(alg.ctx()).unwrap()))
        .collect();
    let mut support: Vec<Word> = images.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    support.sort();
    support.dedup();
    let mut e = Echelon::new(alg.ctx().field(), support.len());
    for p in &images {
        e.insert(&to_vector(p, &support));
    }
    e.rank()
}

// ---------------------------------------------------------------------------
// equivalence

#[derive(Clone, Debug)]
pub struct Equivalence {
    pub equivalent: bool,
    /// Unit u with σ(g) = g^u, when Γ is cyclic.
    pub witness: Option<i64>,
    pub reasons: Vec<String>,
}

impl Equivalence {
    pub fn to_json(&self) -> Value {
        json!({"equivalent": self.equivalent, "witness_exponent": self.witness, "reasons": self.reasons})
    }
}

fn same_up_to_sign(x: &Mat, y: &Mat, projective: bool) -> bool {
    x == y || (projective && *x == neg(y))
}

/// δ as a function on Γ: g -> χ(g)^r, χ(g) = σ(g)_11 (or its square on PSL2).
fn delta_value(d: &SubgroupDatum, g: &Mat) -> CycRat {
    let x = if d.parity.projective() { &g[0] * &g[0] } else { g[0].clone() };
    x.pow(d.delta_exponent).expect("unit")
}

fn normalized_n(d: &SubgroupDatum) -> Option<u32> {
    d.n_nontrivial()
}

/// Decides equivalence of two data: equal I±, equal N, and a group
/// isomorphism σ: Γ2 -> Γ1 with σ1∘σ = σ2 and δ2 = δ1∘σ.
pub fn datum_equiv(d1: &SubgroupDatum, d2: &SubgroupDatum) -> Equivalence {
    let mut reasons = Vec::new();
    if d1.parity != d2.parity || d1.ell != d2.ell {
        reasons.push("different parity or ell".to_string());
    }
    if d1.i_plus != d2.i_plus || d1.i_minus != d2.i_minus {
        reasons.push("different I_plus / I_minus".to_string());
    }
    if normalized_n(d1) != normalized_n(d2) {
        reasons.push("different N".to_string());
    }
    if d1.gamma != d2.gamma {
        reasons.push(format!("non-isomorphic groups {} and {}", d1.gamma.label(), d2.gamma.label()));
    }
    if !reasons.is_empty() {
        return Equivalence { equivalent: false, witness: None, reasons };
    }
    let projective = d1.parity.projective();
    match d1.gamma {
        GroupSpec::Cyclic(n) => {
            let (_, g1) = group_matrices(d1.gamma, d1.sigma.exponent, projective).unwrap();
            let (_, g2) = group_matrices(d2.gamma, d2.sigma.exponent, projective).unwrap();
            let n = n as i64;
            let with_delta = normalized_n(d1).is_some();
            for u in 1..=n {
                if u.gcd(&n) != 1 && n > 1 {
                    continue;
                }
                // σ(g^k) = g^{uk}; the matrix lists index g^k by k
                let ok = (0..n).all(|k| {
                    let img = &g1[((u * k).rem_euclid(n)) as usize];
                    let tgt = &g2[k as usize];
                    same_up_to_sign(img, tgt, projective) && (!with_delta || delta_value(d2, tgt) == delta_value(d1, img))
                });
                if ok {
                    return Equivalence { equivalent: true, witness: Some(u % n.max(1)), reasons: vec![] };
                }
            }
            Equivalence { equivalent: false, witness: None, reasons: vec!["no automorphism of the cyclic group matches σ and δ".into()] }
        }
        _ => {
            let same = d1 == d2 || (d1.gamma == GroupSpec::Trivial && normalized_n(d1).is_none());
            Equivalence {
                equivalent: same,
                witness: if same { Some(1) } else { None },
                reasons: if same { vec![] } else { vec!["only the identity matching is searched for this group".into()] },
            }
        }
    }
}

/// Searches a Hopf isomorphism between two presented quotients of the same
/// algebra by matching generators (identity, then a <-> d, b <-> c).
pub fn find_isomorphism(x: &NamedAlgebra, y: &NamedAlgebra) -> Option<Vec<u8>> {
    let candidates: [[u8; 4]; 2] = [[A, B, C, D], [D, C, B, A]];
    for perm in candidates {
        let fwd: Vec<NCPoly> = perm.iter().map(|&g| NCPoly::gen(y.ctx(), g)).collect();
        let bwd: Vec<NCPoly> = perm.iter().map(|&g| NCPoly::gen(x.ctx(), g)).collect();
        let r1 = verify_hopf_morphism(&Source::Presented(x), &Target::Presented(y), &Images::Polys(fwd), 0, "iso");
        if !r1.passed() {
            continue;
        }
        let r2 = verify_hopf_morphism(&Source::Presented(y), &Target::Presented(x), &Images::Polys(bwd), 0, "iso");
        if r2.passed() {
            return Some(perm.to_vec());
        }
    }
    None
}

// ---------------------------------------------------------------------------
// q = -1

#[derive(Clone, Debug)]
pub struct DihedralQuotient {
    pub m: u32,
    pub field: u32,
    pub model: FiniteModel,
    /// Character values on (a, b, c, d), rotations first then reflections.
    pub characters: Vec<[CycRat; 4]>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub alpha: usize,
    pub beta: usize,
    pub morphism: Report,
    pub dihedral_relations: bool,
    pub beta_involution: bool,
    pub rank: usize,
}

impl DihedralQuotient {
    pub fn surjective(&self) -> bool {
        self.rank == self.model.dim()
    }

    pub fn passed(&self) -> bool {
        self.morphism.passed() && self.surjective() && self.dihedral_relations && self.beta_involution
    }

    fn table_json(&self, i: usize) -> Value {
        let sym = "w";
        let mut m = serde_json::Map::new();
        for (g, c) in ["a", "b", "c", "d"].iter().zip(&self.characters[i]) {
            m.insert(g.to_string(), json!(c.render(sym)));
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": format!("D{}", 2 * self.m),
            "order": self.table.len(),
            "alpha": self.table_json(self.alpha),
            "beta": self.table_json(self.beta),
            "beta_squared_is_identity": self.beta_involution,
            "dihedral_relations": self.dihedral_relations,
            "image_rank": self.rank,
            "surjective": self.surjective(),
            "morphism": self.morphism.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Classification {
    TypeI(Box<Construction>),
    TypeII(Box<DihedralQuotient>),
}

impl Classification {
    pub fn to_json(&self) -> Value {
        match self {
            Classification::TypeI(c) => json!({"type": "I", "construction": c.to_json()}),
            Classification::TypeII(d) => json!({"type": "II", "dihedral": d.to_json()}),
        }
    }
}

/// Characters of O_{-1}(SL2) are evaluated on the generators; the product is
/// convolution through Δ.
fn convolve(alg: &NamedAlgebra, x: &[CycRat; 4], y: &[CycRat; 4]) -> [CycRat; 4] {
    let f = alg.ctx().field();
    let val = |chi: &[CycRat; 4], w: &Word| w.0.iter().fold(CycRat::one(f), |acc, &l| &acc * &chi[l as usize]);
    let mut out: [CycRat; 4] = std::array::from_fn(|_| CycRat::zero(f));
    for (g, slot) in out.iter_mut().enumerate() {
        for ((u, v), c) in alg.hopf.delta[g].terms() {
            *slot = &*slot + &(&(c * &val(x, u)) * &val(y, v));
        }
    }
    out
}

fn is_character(alg: &NamedAlgebra, chi: &[CycRat; 4]) -> bool {
    let f = alg.ctx().field();
    alg.pres.relations().iter().all(|r| {
        r.terms()
            .iter()
            .fold(CycRat::zero(f), |acc, (w, c)| &acc + &(c * &w.0.iter().fold(CycRat::one(f), |a, &l| &a * &chi[l as usize])))
            .is_zero()
    })
}

/// The function algebra on D_{2m} as a Hopf quotient of O_{-1}(SL2).
pub fn dihedral_quotient(m: u32, max_deg: usize) -> Result<DihedralQuotient, SubgroupError> {
    if m == 0 {
        return Err(SubgroupError::Invalid(vec!["dihedral group with m = 0".into()]));
    }
    let field = m.lcm(&2);
    let alg = o_minus1_sl2_over(field);
    let step = (field / m) as i64;
    let z = |k: i64| CycRat::q_power(field, step * k);
    let zero = CycRat::zero(field);
    let mut chars: Vec<[CycRat; 4]> = Vec::new();
    for k in 0..m as i64 {
        chars.push([z(k), zero.clone(), zero.clone(), z(-k)]);
    }
    for k in 0..m as i64 {
        chars.push([zero.clone(), z(k), z(-k), zero.clone()]);
    }
    if let Some(bad) = chars.iter().position(|c| !is_character(&alg, c)) {
        return Err(SubgroupError::CertificateFailed(format!("value table {} is not an algebra map", bad)));
    }
    let n = chars.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = convolve(&alg, &chars[i], &chars[j]);
            table[i][j] = chars
                .iter()
                .position(|c| *c == p)
                .ok_or_else(|| SubgroupError::CertificateFailed("character set not closed under convolution".into()))?;
        }
    }
    let counit: [CycRat; 4] = std::array::from_fn(|g| alg.hopf.counit[g].clone());
    let identity = chars.iter().position(|c| *c == counit).expect("counit is a character");
    let inverse: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| table[i][j] == identity).expect("group")).collect();
    let alpha = if m > 1 { 1 } else { 0 };
    let beta = m as usize;
    let power = |x: usize, k: u32| (0..k).fold(identity, |acc, _| table[acc][x]);
    let order_alpha = (1..=n as u32).find(|&k| power(alpha, k) == identity).unwrap();
    let dihedral_relations = order_alpha == m
        && table[beta][beta] == identity
        && table[table[beta][alpha]][beta] == inverse[alpha]
        && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| table[table[i][j]][k] == table[i][table[j][k]])));
    let beta_involution = table[beta][beta] == identity && beta != identity;
    let labels: Vec<String> = (0..m).map(|k| format!("r{}", k)).chain((0..m).map(|k| format!("s{}", k))).collect();
    let mut model = FiniteModel::function_algebra(&format!("C^D{}", 2 * m), field, labels, &table, &inverse, identity);
    let images: Vec<Vector> = (0..4).map(|g| chars.iter().map(|c| c[g].clone()).collect()).collect();
    model.gen_names = alg.ctx().gens().to_vec();
    model.gen_images = images.clone();
    let morphism = verify_hopf_morphism(
        &Source::Presented(&alg),
        &Target::Model(&model),
        &Images::Vectors(images),
        max_deg,
        &format!("O_-1(SL2) -> C^D{}", 2 * m),
    );
    let rank = morphism.data.as_ref().and_then(|d| d["image_rank"].as_u64()).unwrap_or(0) as usize;
    Ok(DihedralQuotient { m, field, model, characters: chars, table, identity, alpha, beta, morphism, dihedral_relations, beta_involution, rank })
}

/// Type I: quotient of O_{-1}(SL2) by the lifted vanishing ideal (no Borel
/// truncation). Type II: the dihedral function algebra.
pub fn minus_one_classify(gamma: GroupSpec, exponent: i64, max_deg: usize, probe: usize) -> Result<Classification, SubgroupError> {
    match gamma {
        GroupSpec::Dihedral(m) => Ok(Classification::TypeII(Box::new(dihedral_quotient(m, max_deg)?))),
        g => {
            let d = SubgroupDatum {
                parity: DatumParity::MinusOne,
                ell: 2,
                i_plus: vec![1],
                i_minus: vec![1],
                n_generator: None,
                gamma: g,
                sigma: EmbeddingSpec { exponent },
                delta_exponent: 0,
            };
            Ok(Classification::TypeI(Box::new(construct_quotient(&d, max_deg, probe)?)))
        }
    }
}

/// Dimension and grouplike count of a finite quotient.
pub fn fingerprint(alg: &NamedAlgebra) -> Option<(usize, usize)> {
    let model = build_finite_model(alg).ok()?;
    let g = grouplikes(&model);
    Some((model.dim(), g.count()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(parity: DatumParity, ell: u32, n: u32, e: i64) -> SubgroupDatum {
        SubgroupDatum {
            parity,
            ell,
            i_plus: vec![],
            i_minus: vec![],
            n_generator: None,
            gamma: GroupSpec::Cyclic(n),
            sigma: EmbeddingSpec { exponent: e },
            delta_exponent: 0,
        }
    }

    #[test]
    fn datum_json_round_trip() {
        let text = r#"{"parity":"even","ell":6,"I_plus":[],"I_minus":[],"N_generator":2,"gamma":{"kind":"cyclic","n":3},"sigma":{"exponent":1},"delta_exponent":1}"#;
        let d = SubgroupDatum::from_json_str(text).unwrap();
        assert_eq!(d.to_json_string(), text);
        assert!(matches!(SubgroupDatum::from_json_str("{\"parity\":1}"), Err(SubgroupError::Malformed(_))));
    }

    #[test]
    fn validation_examples() {
        let taft = SubgroupDatum {
            parity: DatumParity::Odd,
            ell: 5,
            i_plus: vec![1],
            i_minus: vec![],
            n_generator: None,
            gamma: GroupSpec::Catalog(CatalogGroup::Ga),
            sigma: EmbeddingSpec { exponent: 1 },
            delta_exponent: 0,
        };
        assert!(validate_datum(&taft).is_ok());
        let mut d = cyclic(DatumParity::Even, 6, 2, 1);
        d.i_plus = vec![1];
        d.i_minus = vec![1];
        d.n_generator = Some(2);
        let v = validate_datum(&d).unwrap_err();
        assert!(v.iter().any(|s| s.contains("forces N trivial")));
        let mut d = cyclic(DatumParity::Even, 6, 2, 1);
        d.n_generator = Some(4);
        assert!(validate_datum(&d).unwrap_err()[0].contains("does not divide"));
    }

    #[test]
    fn kernel_of_cyclic_in_psl2() {
        let k = kernel_sigma_t(GroupSpec::Cyclic(2), 1, DatumParity::MinusOne, 8).unwrap();
        assert!(k.certified(), "{}", k.to_json());
        let amb = classical_sl2();
        let ctx = amb.ctx();
        let one = NCPoly::one(ctx);
        let w = |v: &[u8]| NCPoly::word(ctx, Word(v.to_vec()));
        assert!(k.ideal_contains(&(&w(&[A, A, A, A]) - &one)));
        assert!(k.ideal_contains(&(&w(&[D, D, D, D]) - &one)));
        assert!(k.ideal_contains(&(&w(&[A, D]) - &one)));
        assert!(k.ideal_contains(&w(&[A, B])));
        assert!(!k.ideal_contains(&(&w(&[A, A]) - &one)));
    }

    #[test]
    fn trivial_group_gives_the_augmentation_ideal() {
        let k = kernel_sigma_t(GroupSpec::Trivial, 1, DatumParity::Odd, 4).unwrap();
        assert!(k.certified());
        assert_eq!(k.quotient_dimension, Some(1));
    }

    #[test]
    fn cz4_at_minus_one() {
        let c = construct_certified(&cyclic(DatumParity::MinusOne, 2, 2, 1), 8, 10).unwrap();
        assert_eq!(c.dimension().dimension.finite(), Some(4));
        assert_eq!(c.h_dimension.dimension.finite(), Some(2));
        assert!(c.passed(), "{}", c.to_json());
    }

    #[test]
    fn odd_consistency_congruence() {
        // ell = 3, Γ = Z_2, N = (1): consistent iff 3r = 1 mod 2
        let mut d = cyclic(DatumParity::Odd, 3, 2, 1);
        d.n_generator = Some(1);
        d.delta_exponent = 1;
        let c = construct_certified(&d, 8, 10).unwrap();
        assert_eq!(c.dimension().dimension.finite(), Some(2));
        d.delta_exponent = 2;
        assert!(matches!(construct_certified(&d, 8, 10), Err(SubgroupError::InconsistentDatum { expected: 2, got: 1 })));
    }

    #[test]
    fn inverse_exponent_is_equivalent() {
        let d1 = cyclic(DatumParity::Even, 4, 5, 2);
        let d2 = cyclic(DatumParity::Even, 4, 5, -2);
        let e = datum_equiv(&d1, &d2);
        assert!(e.equivalent);
        assert_eq!(e.witness, Some(4));
        let mut d3 = d1.clone();
        d3.n_generator = Some(2);
        assert!(!datum_equiv(&d1, &d3).equivalent);
    }

    #[test]
    fn dihedral_d6() {
        let q = dihedral_quotient(3, 4).unwrap();
        assert!(q.passed(), "{}", q.to_json());
        assert_eq!(q.table.len(), 6);
    }
}
