//! Named, parameterized instances with their expected properties. Every
//! expectation is recomputed by `verify`.

use serde_json::{json, Value};
use thiserror::Error;

use crate::hopf::{
    build_finite_model, check_axioms, check_central, check_normal, check_structure_well_defined, coinvariants, grouplikes,
    is_hopf_ideal, model_map, verify_hopf_morphism, Evaluator, Images, Source, Target,
};
use crate::ncalg::{NCPoly, TensorPoly, Word};
use crate::presentations::{
    classical_sl2, distinguished_subalgebra, psl2_model, quotient_ideal, IdealKind, NamedAlgebra, SubalgebraCase, A, B,
    C, D,
};
use crate::report::Report;
use crate::rewrite::{check_confluence, complete, dimension, CompletionLimits};
use crate::subgroups::{
    construct_quotient, dihedral_quotient, CatalogGroup, Construction, DatumParity, EmbeddingSpec, GroupSpec,
    SubgroupDatum,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("parameter out of range for {entry}: {reason}")]
    ParamOutOfRange { entry: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    OddEll,
    EvenEll,
    /// ℓ = 2 (q = -1), odd ℓ >= 3 or even ℓ >= 4.
    AnyEll,
    N,
    M,
}

impl Param {
    fn describe(self) -> &'static str {
        match self {
            Param::OddEll => "ell odd >= 3",
            Param::EvenEll => "ell even >= 4",
            Param::AnyEll => "ell >= 2",
            Param::N => "n >= 1",
            Param::M => "m >= 1",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub ell: Option<u32>,
    pub n: Option<u32>,
    pub m: Option<u32>,
}

impl Params {
    pub fn to_json(&self) -> Value {
        json!({"ell": self.ell, "n": self.n, "m": self.m})
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [Param],
    /// Human-readable expectation, e.g. "dim = ell^3".
    pub expected: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "widehat-dual",
        summary: "O_q(SL2) modulo the augmentation of the central subalgebra L",
        params: &[Param::OddEll],
        expected: "Hopf ideal; dim = ell^3",
    },
    CatalogEntry {
        name: "overline-dual",
        summary: "O_q(SL2) modulo the augmentation of the normal subalgebra N",
        params: &[Param::EvenEll],
        expected: "Hopf ideal; dim = 2 m^3, m = ell/2",
    },
    CatalogEntry {
        name: "taft",
        summary: "Γ = G_a in the upper Borel; the top quotient is a Taft algebra",
        params: &[Param::OddEll],
        expected: "dim H = ell^2; ell grouplikes; Δ(ba) = a^2⊗ba + ba⊗1; coinvariants of H ->> CZ_ell have dim ell",
    },
    CatalogEntry {
        name: "cz2n",
        summary: "q = -1, Γ = Z_n diagonal in PSL2, b = c = 0",
        params: &[Param::N],
        expected: "dim A = 2n; kernel generators recovered; dim A = n * dim H",
    },
    CatalogEntry {
        name: "cz2mn",
        summary: "even ell = 2m, Γ = Z_n diagonal in PSL2, b = c = 0",
        params: &[Param::EvenEll, Param::N],
        expected: "dim A = 2mn; dim A = n * dim H with dim H = 2m",
    },
    CatalogEntry {
        name: "dihedral",
        summary: "q = -1, the function algebra on D_2m as a Hopf quotient",
        params: &[Param::M],
        expected: "Hopf morphism, surjective, dihedral relations, β^2 = 1",
    },
    CatalogEntry {
        name: "case-I-full",
        summary: "b = c = 0 with the full torus",
        params: &[Param::AnyEll],
        expected: "dim H = ell (CZ_ell, or CZ_2m for even ell); ell grouplikes; A infinite",
    },
    CatalogEntry {
        name: "central-L",
        summary: "x^ell generate a central Hopf subalgebra (odd ell)",
        params: &[Param::OddEll],
        expected: "central; Frobenius map is a Hopf morphism; widehat ideal is a Hopf ideal",
    },
    CatalogEntry {
        name: "normal-B",
        summary: "quadratic monomials generate a normal Hopf subalgebra at q = -1",
        params: &[],
        expected: "normal; φ is a Hopf morphism to degree 4",
    },
    CatalogEntry {
        name: "normal-N",
        summary: "x^m y^m generate a normal Hopf subalgebra (even ell = 2m)",
        params: &[Param::EvenEll],
        expected: "normal; φ is a Hopf morphism to degree 4; overline ideal is a Hopf ideal",
    },
];

pub fn list() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn get(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
}

fn check_params(entry: &CatalogEntry, p: &Params) -> Result<(), CatalogError> {
    let bad = |reason: String| Err(CatalogError::ParamOutOfRange { entry: entry.name.into(), reason });
    for &k in entry.params {
        let ok = match k {
            Param::OddEll => p.ell.map(|l| l >= 3 && l % 2 == 1),
            Param::EvenEll => p.ell.map(|l| l >= 4 && l % 2 == 0),
            Param::AnyEll => p.ell.map(|l| l >= 2),
            Param::N => p.n.map(|n| n >= 1),
            Param::M => p.m.map(|m| m >= 1),
        };
        match ok {
            None => return bad(format!("missing parameter ({})", k.describe())),
            Some(false) => return bad(format!("{} required", k.describe())),
            Some(true) => {}
        }
    }
    Ok(())
}

/// The default parameter grid.
pub fn default_grid() -> Vec<(&'static str, Params)> {
    let mut out = Vec::new();
    let ell = |l| Params { ell: Some(l), ..Params::default() };
    for l in [3, 5] {
        out.push(("widehat-dual", ell(l)));
    }
    for l in [4, 6] {
        out.push(("overline-dual", ell(l)));
    }
    for l in [3, 5] {
        out.push(("taft", ell(l)));
    }
    for n in [2, 3, 4] {
        out.push(("cz2n", Params { n: Some(n), ..Params::default() }));
    }
    for l in [4, 6] {
        for n in [2, 3, 4] {
            out.push(("cz2mn", Params { ell: Some(l), n: Some(n), m: None }));
        }
    }
    for m in [2, 3, 4] {
        out.push(("dihedral", Params { m: Some(m), ..Params::default() }));
    }
    for l in [2, 3, 4, 5, 6] {
        out.push(("case-I-full", ell(l)));
    }
    for l in [3, 5] {
        out.push(("central-L", ell(l)));
    }
    out.push(("normal-B", Params::default()));
    for l in [4, 6] {
        out.push(("normal-N", ell(l)));
    }
    out
}

/// Builds and checks one entry.
pub fn verify(name: &str, params: &Params, max_deg: usize, probe: usize) -> Result<Report, CatalogError> {
    let entry = get(name)?;
    check_params(entry, params)?;
    let subject = format!("{} {}", entry.name, params_label(entry, params));
    let parts = match entry.name {
        "widehat-dual" => ideal_quotient(IdealKind::Widehat, params.ell.unwrap(), probe),
        "overline-dual" => ideal_quotient(IdealKind::Overline, params.ell.unwrap(), probe),
        "taft" => taft(params.ell.unwrap(), max_deg, probe),
        "cz2n" => cyclic(DatumParity::MinusOne, 2, params.n.unwrap(), max_deg, probe),
        "cz2mn" => cyclic(DatumParity::Even, params.ell.unwrap(), params.n.unwrap(), max_deg, probe),
        "dihedral" => dihedral(params.m.unwrap()),
        "case-I-full" => case_i_full(params.ell.unwrap(), max_deg, probe),
        "central-L" => central_l(params.ell.unwrap()),
        "normal-B" => normal(SubalgebraCase::BMinus1, 2),
        "normal-N" => normal(SubalgebraCase::NEven, params.ell.unwrap()),
        _ => unreachable!("entry table and dispatch agree"),
    };
    let mut r = Report::all("catalog", &subject, parts);
    if let Some(Value::Object(d)) = r.data.as_mut() {
        d.insert("entry".into(), json!(entry.name));
        d.insert("params".into(), params.to_json());
        d.insert("expected".into(), json!(entry.expected));
    }
    Ok(r)
}

fn params_label(entry: &CatalogEntry, p: &Params) -> String {
    let mut parts = Vec::new();
    for &k in entry.params {
        match k {
            Param::OddEll | Param::EvenEll | Param::AnyEll => parts.push(format!("ell={}", p.ell.unwrap())),
            Param::N => parts.push(format!("n={}", p.n.unwrap())),
            Param::M => parts.push(format!("m={}", p.m.unwrap())),
        }
    }
    parts.join(" ")
}

fn equal(check: &str, subject: &str, got: Option<usize>, want: usize) -> Report {
    Report::from_bool(check, subject, got == Some(want), json!({"expected": want, "got": got}))
}

fn confluence(alg: &NamedAlgebra) -> Report {
    let bad = check_confluence(&alg.pres, 8);
    Report::from_bool("confluence", &alg.label, bad.is_empty(), json!({"max_len": 8, "unresolved": bad.len()}))
}

fn ideal_quotient(kind: IdealKind, ell: u32, probe: usize) -> Vec<Report> {
    let gens = quotient_ideal(kind, ell).expect("parameters checked");
    let base = distinguished_subalgebra(
        if kind == IdealKind::Widehat { SubalgebraCase::LOdd } else { SubalgebraCase::NEven },
        ell,
    )
    .expect("parameters checked")
    .algebra;
    let want = match kind {
        IdealKind::Widehat => (ell as usize).pow(3),
        IdealKind::Overline => 2 * (ell as usize / 2).pow(3),
    };
    let mut out = vec![is_hopf_ideal(&base, &gens, &base.label)];
    match complete(&base.pres, &gens, "quotient", &CompletionLimits::default()) {
        Ok(pres) => {
            let alg = base.with_presentation(&format!("{}/ideal", base.label), pres);
            out.push(equal("dimension", &alg.label, dimension(&alg.pres, probe).dimension.finite(), want));
            out.push(confluence(&alg));
            out.push(check_structure_well_defined(&alg));
        }
        Err(e) => out.push(Report::fail("completion", &base.label, json!({"error": e.to_string()}))),
    }
    out
}

fn construction_reports(c: &Construction) -> Vec<Report> {
    let mut out = c.certificates.clone();
    out.push(confluence(&c.h));
    out
}

/// dim A = dim(coinvariants of A ->> H) * dim H, computed on finite models.
pub fn sequence_shadow(a: &NamedAlgebra, h: &NamedAlgebra) -> Report {
    let subject = format!("{} ->> {}", a.label, h.label);
    let (am, hm) = match (build_finite_model(a), build_finite_model(h)) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return Report::fail("sequence", &subject, json!({"reason": "not finite-dimensional"})),
    };
    let pi = model_map(&am, &hm);
    let co = coinvariants(&am, &pi, &hm).len();
    let ok = am.dim() == co * hm.dim();
    Report::from_bool(
        "sequence",
        &subject,
        ok,
        json!({"dim_A": am.dim(), "coinvariant_dimension": co, "dim_H": hm.dim(), "identity": format!("{} = {} * {}", am.dim(), co, hm.dim())}),
    )
}

fn taft_datum(ell: u32) -> SubgroupDatum {
    SubgroupDatum {
        parity: DatumParity::Odd,
        ell,
        i_plus: vec![1],
        i_minus: vec![],
        n_generator: None,
        gamma: GroupSpec::Catalog(CatalogGroup::Ga),
        sigma: EmbeddingSpec { exponent: 1 },
        delta_exponent: 0,
    }
}

/// Δ(ba) = a^2 ⊗ ba + ba ⊗ 1 in the Taft quotient.
pub fn taft_witness(h: &NamedAlgebra) -> Report {
    let ctx = h.ctx();
    let ev = Evaluator::new(h);
    let x = NCPoly::word(ctx, Word(vec![B, A]));
    let lhs = ev.red.nf_tensor(&ev.delta(&x));
    let mut rhs = TensorPoly::zero(ctx);
    rhs.add_term(Word(vec![A, A]), Word(vec![B, A]), ctx.scalar(1));
    rhs.add_term(Word(vec![B, A]), Word::empty(), ctx.scalar(1));
    let rhs = ev.red.nf_tensor(&rhs);
    Report::from_bool("skew-primitive", &h.label, lhs == rhs, json!({"delta(ba)": lhs.render(), "expected": rhs.render()}))
}

fn grouplike_count(alg: &NamedAlgebra, want: usize) -> Report {
    match build_finite_model(alg) {
        Ok(m) => {
            let g = grouplikes(&m);
            Report::from_bool("grouplikes", &alg.label, g.count() == want && g.certified, g.to_json(&m))
        }
        Err(e) => Report::fail("grouplikes", &alg.label, json!({"error": e.to_string()})),
    }
}

fn taft(ell: u32, max_deg: usize, probe: usize) -> Vec<Report> {
    let c = match construct_quotient(&taft_datum(ell), max_deg, probe) {
        Ok(c) => c,
        Err(e) => return vec![Report::fail("construct", "taft", json!({"error": e.to_string()}))],
    };
    let h = &c.h;
    let l = ell as usize;
    let mut out = construction_reports(&c);
    out.push(equal("dimension", &h.label, c.h_dimension.dimension.finite(), l * l));
    out.push(grouplike_count(h, l));
    out.push(taft_witness(h));
    out.push(check_axioms(h, 2));
    // T ->> CZ_ell by b -> 0
    match complete(&h.pres, &[NCPoly::gen(h.ctx(), B)], "grouplikes", &CompletionLimits::default()) {
        Ok(p) => out.push(sequence_shadow(h, &h.with_presentation(&format!("{}/(b)", h.label), p))),
        Err(e) => out.push(Report::fail("sequence", &h.label, json!({"error": e.to_string()}))),
    }
    out
}

fn cyclic_datum(parity: DatumParity, ell: u32, n: u32) -> SubgroupDatum {
    SubgroupDatum {
        parity,
        ell,
        i_plus: vec![],
        i_minus: vec![],
        n_generator: None,
        gamma: GroupSpec::Cyclic(n),
        sigma: EmbeddingSpec { exponent: 1 },
        delta_exponent: 0,
    }
}

/// Kernel generators listed for a diagonal Z_n in PSL2.
pub fn recovered_kernel_generators(c: &Construction, n: u32) -> Report {
    let k = match &c.kernel {
        Some(k) => k,
        None => return Report::fail("kernel-generators", "cz", json!({"reason": "no kernel"})),
    };
    let amb = classical_sl2();
    let ctx = amb.ctx();
    let w = |v: Vec<u8>| NCPoly::word(ctx, Word(v));
    let one = NCPoly::one(ctx);
    let two_n = 2 * n as usize;
    let mut expected: Vec<NCPoly> = vec![&w(vec![A; two_n]) - &one, &w(vec![D; two_n]) - &one, &w(vec![A, D]) - &one];
    let off = |g: u8| g == B || g == C;
    for x in [A, B, C, D] {
        for y in [A, B, C, D] {
            if x <= y && (off(x) || off(y)) {
                expected.push(w(vec![x, y]));
            }
        }
    }
    let missing: Vec<String> = expected.iter().filter(|p| !k.ideal_contains(p)).map(|p| p.render()).collect();
    Report::from_bool(
        "kernel-generators",
        &c.algebra().label,
        missing.is_empty(),
        json!({"checked": expected.iter().map(|p| p.render()).collect::<Vec<_>>(), "missing": missing}),
    )
}

fn cyclic(parity: DatumParity, ell: u32, n: u32, max_deg: usize, probe: usize) -> Vec<Report> {
    let d = cyclic_datum(parity, ell, n);
    let c = match construct_quotient(&d, max_deg, probe) {
        Ok(c) => c,
        Err(e) => return vec![Report::fail("construct", "cyclic", json!({"error": e.to_string()}))],
    };
    let m = d.m() as usize;
    let mut out = construction_reports(&c);
    out.push(equal("dimension", &c.algebra().label, c.dimension().dimension.finite(), 2 * m * n as usize));
    out.push(equal("dimension", &c.h.label, c.h_dimension.dimension.finite(), 2 * m));
    if 2 * n as usize <= max_deg {
        out.push(recovered_kernel_generators(&c, n));
    }
    out.push(sequence_shadow(c.algebra(), &c.h));
    out
}

fn dihedral(m: u32) -> Vec<Report> {
    match dihedral_quotient(m, 4) {
        Ok(q) => vec![
            q.morphism.clone(),
            Report::from_bool("surjective", &q.model.name, q.surjective(), json!({"rank": q.rank, "dim": q.model.dim()})),
            Report::from_bool("dihedral-relations", &q.model.name, q.dihedral_relations && q.beta_involution, q.to_json()),
            q.model.check_axioms(),
        ],
        Err(e) => vec![Report::fail("dihedral", &format!("m={}", m), json!({"error": e.to_string()}))],
    }
}

pub fn case_i_datum(ell: u32) -> SubgroupDatum {
    let parity = match ell {
        2 => DatumParity::MinusOne,
        l if l % 2 == 1 => DatumParity::Odd,
        _ => DatumParity::Even,
    };
    SubgroupDatum {
        parity,
        ell,
        i_plus: vec![],
        i_minus: vec![],
        n_generator: None,
        gamma: GroupSpec::Catalog(CatalogGroup::Torus),
        sigma: EmbeddingSpec { exponent: 1 },
        delta_exponent: 0,
    }
}

fn case_i_full(ell: u32, max_deg: usize, probe: usize) -> Vec<Report> {
    let c = match construct_quotient(&case_i_datum(ell), max_deg, probe) {
        Ok(c) => c,
        Err(e) => return vec![Report::fail("construct", "case-I", json!({"error": e.to_string()}))],
    };
    let l = ell as usize;
    let mut out = construction_reports(&c);
    out.push(equal("dimension", &c.h.label, c.h_dimension.dimension.finite(), l));
    out.push(grouplike_count(&c.h, l));
    let a_dim = c.dimension().dimension.finite();
    out.push(Report::from_bool("infinite", &c.algebra().label, a_dim.is_none(), c.dimension().to_json()));
    out
}

fn central_l(ell: u32) -> Vec<Report> {
    let dist = distinguished_subalgebra(SubalgebraCase::LOdd, ell).expect("parameters checked");
    let alg = &dist.algebra;
    let frob = dist.frobenius.clone().expect("odd ell");
    vec![
        check_central(alg, &dist.generators, &alg.label),
        verify_hopf_morphism(&Source::Presented(&classical_sl2()), &Target::Presented(alg), &Images::Polys(frob), 0, "frobenius"),
        is_hopf_ideal(alg, &quotient_ideal(IdealKind::Widehat, ell).unwrap(), &alg.label),
    ]
}

fn normal(case: SubalgebraCase, ell: u32) -> Vec<Report> {
    let dist = distinguished_subalgebra(case, ell).expect("parameters checked");
    let alg = &dist.algebra;
    let model = psl2_model(4);
    let phi: Vec<NCPoly> = dist.phi.clone().expect("φ").into_iter().map(|(_, p)| p).collect();
    let mut out = vec![
        check_normal(alg, &dist.generators, None, &alg.label),
        verify_hopf_morphism(&Source::Psl2(&model), &Target::Presented(alg), &Images::Polys(phi), 4, "phi"),
    ];
    if case == SubalgebraCase::NEven {
        out.push(is_hopf_ideal(alg, &quotient_ideal(IdealKind::Overline, ell).unwrap(), &alg.label));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_errors() {
        assert!(matches!(get("nope"), Err(CatalogError::UnknownEntry(_))));
        let r = verify("taft", &Params { ell: Some(4), ..Params::default() }, 8, 10);
        assert!(matches!(r, Err(CatalogError::ParamOutOfRange { .. })));
    }

    #[test]
    fn taft_three() {
        let r = verify("taft", &Params { ell: Some(3), ..Params::default() }, 8, 10).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn cz2n_two() {
        let r = verify("cz2n", &Params { n: Some(2), ..Params::default() }, 8, 10).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }
}
