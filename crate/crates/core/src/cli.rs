//! Command-line front end. Every command builds one JSON document; the text
//! format is rendered from it.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{self, case_i_datum, sequence_shadow, CatalogError, Params};
use crate::hopf::{
    build_finite_model, check_axioms, check_central, check_normal, check_structure_well_defined, grouplikes,
    is_hopf_ideal, verify_hopf_morphism, Images, Source, Target,
};
use crate::ncalg::NCPoly;
use crate::presentations::{
    classical_sl2, distinguished_subalgebra, o_minus1_sl2, oq_sl2, psl2_model, quotient_ideal, IdealKind, NamedAlgebra,
    SubalgebraCase, B,
};
use crate::report::{render_text, Report, SCHEMA};
use crate::rewrite::{complete, dimension, CompletionLimits};
use crate::subgroups::{
    construct_quotient, datum_equiv, dihedral_quotient, find_isomorphism, fingerprint, CatalogGroup, DatumParity,
    EmbeddingSpec, GroupSpec, SubgroupDatum, SubgroupError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "qsl2", version, about = "Quantum subgroups of O_q(SL2) at roots of unity: construct and verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Degree bound for degreewise certificates.
    #[arg(long, global = true, env = "QSL2_MAX_DEGREE", default_value_t = 8)]
    pub max_degree: usize,
    /// Word length used for provisional dimension probes.
    #[arg(long, global = true, default_value_t = 10)]
    pub probe_bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
}

impl ParamArgs {
    fn params(&self) -> Params {
        Params { ell: self.ell, n: self.n, m: self.m }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the quotient pipeline on a subgroup datum.
    Construct {
        /// Path to a datum JSON file, or the JSON itself.
        #[arg(long)]
        datum: String,
    },
    /// Run one check against a named target.
    Verify {
        #[arg(value_enum)]
        check: VerifyCheck,
        /// Algebra, subalgebra (L, B, N), ideal or morphism name.
        target: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        datum: Option<String>,
    },
    /// List or verify catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Dimension of a named algebra.
    Dim {
        algebra: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        datum: Option<String>,
    },
    /// Grouplike elements of a finite named algebra.
    Grouplikes {
        algebra: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        datum: Option<String>,
    },
    /// Decide equivalence of two subgroup data.
    Equiv {
        #[arg(long)]
        datum1: String,
        #[arg(long)]
        datum2: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyCheck {
    Axioms,
    Central,
    Normal,
    HopfIdeal,
    Sequence,
    Morphism,
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// Entry names, parameters and expectations.
    List,
    /// Verify one entry, or the parameter grid.
    Verify {
        entry: Option<String>,
        #[arg(long, value_enum)]
        grid: Option<Grid>,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Default,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Datum(SubgroupError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Catalog(_) => EXIT_USAGE,
            CliError::Datum(SubgroupError::Malformed(_)) => EXIT_USAGE,
            CliError::Datum(SubgroupError::Rewrite(_)) | CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Datum(_) => EXIT_FAIL,
        }
    }
}

impl From<SubgroupError> for CliError {
    fn from(e: SubgroupError) -> CliError {
        CliError::Datum(e)
    }
}

/// A command's result document and whether it is all green.
struct Outcome {
    result: Value,
    ok: bool,
}

impl Outcome {
    fn report(r: Report) -> Outcome {
        Outcome { ok: r.passed(), result: r.to_json() }
    }
}

fn config_json(cli: &Cli) -> Value {
    let (name, extra) = match &cli.command {
        Command::Construct { datum } => ("construct", json!({"datum": datum})),
        Command::Verify { check, target, params, datum } => (
            "verify",
            json!({"check": format!("{:?}", check).to_lowercase(), "target": target, "params": params.params().to_json(), "datum": datum}),
        ),
        Command::Catalog { action: CatalogAction::List } => ("catalog list", json!({})),
        Command::Catalog { action: CatalogAction::Verify { entry, grid, params } } => (
            "catalog verify",
            json!({"entry": entry, "grid": grid.map(|_| "default"), "params": params.params().to_json()}),
        ),
        Command::Dim { algebra, params, datum } => ("dim", json!({"algebra": algebra, "params": params.params().to_json(), "datum": datum})),
        Command::Grouplikes { algebra, params, datum } => {
            ("grouplikes", json!({"algebra": algebra, "params": params.params().to_json(), "datum": datum}))
        }
        Command::Equiv { datum1, datum2 } => ("equiv", json!({"datum1": datum1, "datum2": datum2})),
    };
    json!({
        "command": name,
        "args": extra,
        "max_degree": cli.max_degree,
        "probe_bound": cli.probe_bound,
        "format": match cli.format { Format::Json => "json", Format::Text => "text" },
    })
}

fn load_datum(arg: &str) -> Result<SubgroupDatum, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("cannot read datum {}: {}", arg, e)))?
    };
    Ok(SubgroupDatum::from_json_str(&text)?)
}

fn need(v: Option<u32>, what: &str) -> Result<u32, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{} is required for this target", what)))
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

/// Pipeline datum behind a named instance: (datum, use the top quotient H).
fn named_datum(name: &str, p: &ParamArgs, datum: &Option<String>) -> Result<Option<(SubgroupDatum, bool)>, CliError> {
    Ok(match name {
        "datum" => Some((load_datum(datum.as_deref().ok_or_else(|| CliError::Usage("--datum is required".into()))?)?, false)),
        "taft" => Some((taft_datum(need(p.ell, "ell")?), true)),
        "cz2n" => Some((cyclic_datum(DatumParity::MinusOne, 2, need(p.n, "n")?), false)),
        "cz2mn" => Some((cyclic_datum(DatumParity::Even, need(p.ell, "ell")?, need(p.n, "n")?), false)),
        "case-I-full" => Some((case_i_datum(need(p.ell, "ell")?), true)),
        _ => None,
    })
}

const ALGEBRAS: &str = "oq-sl2, o-minus1-sl2, classical-sl2, widehat, overline, taft, cz2n, cz2mn, case-I-full, datum";

fn resolve_algebra(name: &str, p: &ParamArgs, datum: &Option<String>, max_deg: usize, probe: usize) -> Result<NamedAlgebra, CliError> {
    let bad_ell = |e: crate::presentations::PresError| CliError::Usage(e.to_string());
    if let Some((d, top)) = named_datum(name, p, datum)? {
        let c = construct_quotient(&d, max_deg, probe)?;
        return Ok(if top { c.h.clone() } else { c.algebra().clone() });
    }
    match name {
        "oq-sl2" => oq_sl2(need(p.ell, "ell")?).map_err(bad_ell),
        "o-minus1-sl2" => Ok(o_minus1_sl2()),
        "classical-sl2" => Ok(classical_sl2()),
        "widehat" | "overline" => {
            let ell = need(p.ell, "ell")?;
            let (kind, case) = if name == "widehat" {
                (IdealKind::Widehat, SubalgebraCase::LOdd)
            } else {
                (IdealKind::Overline, SubalgebraCase::NEven)
            };
            let base = distinguished_subalgebra(case, ell).map_err(bad_ell)?.algebra;
            let gens = quotient_ideal(kind, ell).map_err(bad_ell)?;
            let pres = complete(&base.pres, &gens, name, &CompletionLimits::default())
                .map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(base.with_presentation(&format!("{}/{}", base.label, name), pres))
        }
        other => Err(CliError::Usage(format!("unknown algebra {:?}; expected one of: {}", other, ALGEBRAS))),
    }
}

fn subalgebra_case(target: &str, p: &ParamArgs) -> Result<(SubalgebraCase, u32), CliError> {
    match target {
        "L" => Ok((SubalgebraCase::LOdd, need(p.ell, "ell")?)),
        "B" => Ok((SubalgebraCase::BMinus1, 2)),
        "N" => Ok((SubalgebraCase::NEven, need(p.ell, "ell")?)),
        other => Err(CliError::Usage(format!("unknown subalgebra {:?}; expected L, B or N", other))),
    }
}

fn cmd_verify(cli: &Cli, check: VerifyCheck, target: &str, p: &ParamArgs, datum: &Option<String>) -> Result<Outcome, CliError> {
    let (max_deg, probe) = (cli.max_degree, cli.probe_bound);
    let r = match check {
        VerifyCheck::Axioms => {
            let alg = resolve_algebra(target, p, datum, max_deg, probe)?;
            Report::all("axioms", &alg.label, vec![check_structure_well_defined(&alg), check_axioms(&alg, 2)])
        }
        VerifyCheck::Central | VerifyCheck::Normal => {
            let (case, ell) = subalgebra_case(target, p)?;
            let dist = distinguished_subalgebra(case, ell).map_err(|e| CliError::Usage(e.to_string()))?;
            if check == VerifyCheck::Central {
                check_central(&dist.algebra, &dist.generators, target)
            } else {
                check_normal(&dist.algebra, &dist.generators, Some(max_deg), target)
            }
        }
        VerifyCheck::HopfIdeal => {
            let ell = need(p.ell, "ell")?;
            let (kind, case) = match target {
                "widehat" => (IdealKind::Widehat, SubalgebraCase::LOdd),
                "overline" => (IdealKind::Overline, SubalgebraCase::NEven),
                other => return Err(CliError::Usage(format!("unknown ideal {:?}; expected widehat or overline", other))),
            };
            let base = distinguished_subalgebra(case, ell).map_err(|e| CliError::Usage(e.to_string()))?.algebra;
            is_hopf_ideal(&base, &quotient_ideal(kind, ell).map_err(|e| CliError::Usage(e.to_string()))?, target)
        }
        VerifyCheck::Sequence => {
            let (d, top) = named_datum(target, p, datum)?
                .ok_or_else(|| CliError::Usage(format!("sequence targets: taft, cz2n, cz2mn, case-I-full, datum; got {:?}", target)))?;
            let c = construct_quotient(&d, max_deg, probe)?;
            if top {
                // the top quotient onto its grouplike part (b -> 0)
                let h = &c.h;
                let pres = complete(&h.pres, &[NCPoly::gen(h.ctx(), B)], "grouplikes", &CompletionLimits::default())
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                sequence_shadow(h, &h.with_presentation(&format!("{}/(b)", h.label), pres))
            } else {
                sequence_shadow(c.algebra(), &c.h)
            }
        }
        VerifyCheck::Morphism => match target {
            "dihedral" => {
                let q = dihedral_quotient(need(p.m, "m")?, max_deg.min(6))?;
                let ok = q.passed();
                return Ok(Outcome { ok, result: json!({"check": "morphism", "status": if ok {"pass"} else {"fail"}, "data": q.to_json()}) });
            }
            "phi-B" | "phi-N" => {
                let (case, ell) = subalgebra_case(&target[4..], p)?;
                let dist = distinguished_subalgebra(case, ell).map_err(|e| CliError::Usage(e.to_string()))?;
                let imgs = dist.phi.clone().expect("φ").into_iter().map(|(_, x)| x).collect();
                let model = psl2_model(max_deg.min(4));
                verify_hopf_morphism(&Source::Psl2(&model), &Target::Presented(&dist.algebra), &Images::Polys(imgs), max_deg.min(4), target)
            }
            "frobenius" => {
                let dist = distinguished_subalgebra(SubalgebraCase::LOdd, need(p.ell, "ell")?).map_err(|e| CliError::Usage(e.to_string()))?;
                let imgs = dist.frobenius.clone().expect("odd ell");
                verify_hopf_morphism(&Source::Presented(&classical_sl2()), &Target::Presented(&dist.algebra), &Images::Polys(imgs), 0, target)
            }
            other => return Err(CliError::Usage(format!("unknown morphism {:?}; expected dihedral, phi-B, phi-N or frobenius", other))),
        },
    };
    Ok(Outcome::report(r))
}

fn cmd_construct(cli: &Cli, arg: &str) -> Result<Outcome, CliError> {
    let d = load_datum(arg)?;
    match construct_quotient(&d, cli.max_degree, cli.probe_bound) {
        Ok(c) => {
            let mut result = c.to_json();
            if !c.consistent() {
                let e = SubgroupError::InconsistentDatum {
                    expected: d.gamma.order().unwrap_or(0),
                    got: c.image_dimension.unwrap_or(0),
                };
                result["error"] = json!(e.to_string());
            }
            Ok(Outcome { ok: c.passed(), result })
        }
        Err(SubgroupError::Invalid(v)) => {
            Ok(Outcome { ok: false, result: json!({"datum": d.to_json(), "error": "invalid datum", "violations": v}) })
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_catalog(cli: &Cli, action: &CatalogAction) -> Result<Outcome, CliError> {
    match action {
        CatalogAction::List => {
            let entries: Vec<Value> = catalog::list()
                .iter()
                .map(|e| {
                    json!({"name": e.name, "summary": e.summary, "expected": e.expected,
                           "params": e.params.iter().map(|p| format!("{:?}", p)).collect::<Vec<_>>()})
                })
                .collect();
            Ok(Outcome { ok: true, result: json!({"entries": entries}) })
        }
        CatalogAction::Verify { entry, grid, params } => {
            let runs: Vec<(String, Params)> = match (entry, grid) {
                (Some(name), None) => vec![(name.clone(), params.params())],
                (name, Some(Grid::Default)) => catalog::default_grid()
                    .into_iter()
                    .filter(|(n, _)| name.as_deref().is_none_or(|x| x == *n))
                    .map(|(n, p)| (n.to_string(), p))
                    .collect(),
                (None, None) => return Err(CliError::Usage("catalog verify needs an entry name or --grid default".into())),
            };
            let mut reports = Vec::new();
            for (name, p) in &runs {
                reports.push(catalog::verify(name, p, cli.max_degree, cli.probe_bound)?);
            }
            let ok = reports.iter().all(|r| r.passed());
            Ok(Outcome {
                ok,
                result: json!({
                    "status": if ok { "pass" } else { "fail" },
                    "passed": reports.iter().filter(|r| r.passed()).count(),
                    "total": reports.len(),
                    "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                }),
            })
        }
    }
}

fn cmd_equiv(cli: &Cli, a: &str, b: &str) -> Result<Outcome, CliError> {
    let (d1, d2) = (load_datum(a)?, load_datum(b)?);
    let e = datum_equiv(&d1, &d2);
    let mut result = e.to_json();
    if e.equivalent {
        let c1 = construct_quotient(&d1, cli.max_degree, cli.probe_bound)?;
        let c2 = construct_quotient(&d2, cli.max_degree, cli.probe_bound)?;
        result["fingerprints"] = json!([fingerprint(c1.algebra()), fingerprint(c2.algebra())]);
        result["isomorphism"] = json!(find_isomorphism(c1.algebra(), c2.algebra()).map(|p| {
            p.iter().map(|&g| c1.algebra().ctx().gens()[g as usize].clone()).collect::<Vec<_>>()
        }));
    }
    Ok(Outcome { ok: true, result })
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Construct { datum } => cmd_construct(cli, datum),
        Command::Verify { check, target, params, datum } => cmd_verify(cli, *check, target, params, datum),
        Command::Catalog { action } => cmd_catalog(cli, action),
        Command::Dim { algebra, params, datum } => {
            let alg = resolve_algebra(algebra, params, datum, cli.max_degree, cli.probe_bound)?;
            let d = dimension(&alg.pres, cli.probe_bound);
            Ok(Outcome { ok: true, result: json!({"algebra": alg.label, "rules": alg.pres.rules().len(), "dimension": d.to_json()}) })
        }
        Command::Grouplikes { algebra, params, datum } => {
            let alg = resolve_algebra(algebra, params, datum, cli.max_degree, cli.probe_bound)?;
            let model = build_finite_model(&alg).map_err(|e| CliError::Usage(format!("{}: {}", alg.label, e)))?;
            let g = grouplikes(&model);
            Ok(Outcome { ok: g.certified, result: json!({"algebra": alg.label, "dimension": model.dim(), "grouplikes": g.to_json(&model)}) })
        }
        Command::Equiv { datum1, datum2 } => cmd_equiv(cli, datum1, datum2),
    }
}

fn emit(cli: Option<&Cli>, doc: &Value) -> Result<(), String> {
    let text = match cli.map(|c| c.format).unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(doc).expect("json") + "\n",
        Format::Text => render_text(doc),
    };
    match cli.and_then(|c| c.output.as_ref()) {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {}", path.display(), e)),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

/// Parses arguments, runs the command, prints the report; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = config_json(&cli);
    let (doc, code) = match dispatch(&cli) {
        Ok(o) => {
            let status = if o.ok { "pass" } else { "fail" };
            (json!({"schema": SCHEMA, "config": config, "status": status, "result": o.result}), if o.ok { EXIT_OK } else { EXIT_FAIL })
        }
        Err(e) => {
            eprintln!("qsl2: {}", e);
            (json!({"schema": SCHEMA, "config": config, "status": "error", "error": e.to_string()}), e.exit_code())
        }
    };
    match emit(Some(&cli), &doc) {
        Ok(()) => code,
        Err(msg) => {
            eprintln!("qsl2: {}", msg);
            EXIT_INTERNAL
        }
    }
}
