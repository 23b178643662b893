//! The `xmodkit` command line.
//!
//! Exit codes: 0 success, 1 invalid structure or failed property (the
//! witness is printed), 2 unreadable or malformed input and usage errors,
//! 3 search budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::distlaw::{semidirect_product, SplitEpiPair};
use crate::document::{DocError, Document, Kind, Payload};
use crate::equivalences::{
    action_round_trip, build_composition_d, check_bn, check_b2_unit_identities, check_hn,
    check_internal_cat_laws, check_peiffer, check_precrossed, check_qn, prex_round_trip,
    prex_to_reflgraph, reflgraph_round_trip, reflgraph_to_prex, relcat_round_trip,
    relcat_to_xmod, splitepi_round_trip, splitepi_to_distlaw, validate_split_epi,
    xmod_round_trip, xmod_to_relcat, CrossedModule, EquivError, PreCrossedModule,
    ReflexiveGraph,
};
use crate::oracle::{
    enumerate_actions, enumerate_prexmods, enumerate_xmods, solve_d_by_search, Budget,
    BudgetExceeded,
};
use crate::report::OracleReport;
use crate::witness::Witness;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "xmodkit", version, about = "Finite crossed modules and their equivalent presentations")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a document and run its validator.
    Validate { file: PathBuf },
    /// Convert a document along the equivalences.
    Convert {
        #[arg(long)]
        to: Kind,
        /// Intermediate kinds, comma separated.
        #[arg(long, value_delimiter = ',')]
        via: Vec<Kind>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Convert forth and back and check the comparison isomorphism.
    Roundtrip { file: PathBuf },
    /// Print every instance over the given base and fiber, one JSON document per line.
    Enumerate {
        #[arg(long, value_enum)]
        kind: EnumKind,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        fiber: PathBuf,
        /// Step limit for exhaustive searches; defaults to XMODKIT_BUDGET or 10^7
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run a single verifier.
    Check {
        #[arg(long, value_enum)]
        property: Property,
        /// Step limit for exhaustive searches; defaults to XMODKIT_BUDGET or 10^7
        #[arg(long)]
        budget: Option<u64>,
        file: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Action,
    Prexmod,
    Xmod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    /// `(κ(y) ▷ y') ∘ y = y ∘ y'`
    Peiffer,
    /// `κ(b ▷ y) ∘ b = b ∘ κ(y)`
    Precrossed,
    /// `q(k, b) = k ∘ i(b)` is a bijection
    QInvertible,
    /// `b_n` against `q_n` for n = 1, 2, 3, and the unit identities of `b_2`
    Bn,
    /// `h_n` bijective and `q_{n+1} = (q □ 1) ∘ h_n` for n = 1, 2, 3
    Hn,
    /// `q_n` bijective for n = 1, 2, 3
    Qn,
    /// the internal category laws of the composition `d`
    Interchange,
    /// `d` is the only composition making the graph an internal category
    DUnique,
}

/// Every way a command can end other than success.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandError {
    Usage(String),
    Malformed(String),
    Invalid {
        message: String,
        witness: Option<Witness>,
    },
    Budget(BudgetExceeded),
}

impl CommandError {
    pub fn code(&self) -> i32 {
        match self {
            CommandError::Invalid { .. } => EXIT_INVALID,
            CommandError::Usage(_) | CommandError::Malformed(_) => EXIT_PARSE,
            CommandError::Budget(_) => EXIT_BUDGET,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CommandError::Invalid { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::Usage(m) | CommandError::Malformed(m) => f.write_str(m),
            CommandError::Invalid { message, witness } => {
                f.write_str(message)?;
                if let Some(w) = witness {
                    write!(f, "; witness {w}")?;
                }
                Ok(())
            }
            CommandError::Budget(b) => write!(f, "{b}"),
        }
    }
}

impl std::error::Error for CommandError {}

impl From<DocError> for CommandError {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Malformed(m) => CommandError::Malformed(m),
            DocError::Invalid {
                kind,
                message,
                witness,
            } => CommandError::Invalid {
                message: format!("invalid {kind}: {message}"),
                witness,
            },
        }
    }
}

impl From<EquivError> for CommandError {
    fn from(e: EquivError) -> Self {
        CommandError::Invalid {
            message: e.to_string(),
            witness: e.witness().cloned(),
        }
    }
}

impl From<BudgetExceeded> for CommandError {
    fn from(e: BudgetExceeded) -> Self {
        CommandError::Budget(e)
    }
}

pub type Outcome<T> = Result<T, CommandError>;

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            report_failure(&f, format, out, err);
            f.code()
        }
    }
}

fn report_failure(f: &CommandError, format: Format, out: &mut dyn Write, err: &mut dyn Write) {
    let (kind, message, witness) = match f {
        CommandError::Usage(m) => ("usage", m.clone(), None),
        CommandError::Malformed(m) => ("malformed", format!("malformed input: {m}"), None),
        CommandError::Invalid { message, witness } => ("invalid", message.clone(), witness.as_ref()),
        CommandError::Budget(b) => ("budget", b.to_string(), None),
    };
    let _ = match format {
        Format::Json => {
            let mut v = json!({ "ok": false, "error": kind, "message": message });
            if let Some(w) = witness {
                v["witness"] = json!(w.label);
            }
            writeln!(out, "{v}")
        }
        Format::Text => match (f, witness) {
            (CommandError::Invalid { .. }, Some(w)) => writeln!(out, "FAIL: {message}\nwitness: {w}"),
            (CommandError::Invalid { .. }, None) => writeln!(out, "FAIL: {message}"),
            _ => writeln!(err, "error: {message}"),
        },
    };
}

fn emit_report(report: &OracleReport, format: Format, out: &mut dyn Write) -> i32 {
    let _ = match format {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Text => writeln!(out, "{report}"),
    };
    if report.ok {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn load(path: &Path) -> Outcome<Document> {
    let text = fs::read_to_string(path)
        .map_err(|e| CommandError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    Ok(Document::parse(&text)?)
}

fn load_category(path: &Path) -> Outcome<crate::fincat::FinCat> {
    match load(path)?.payload {
        Payload::Category(c) => Ok(c),
        other => Err(CommandError::Usage(format!(
            "{} holds a {}, expected a category",
            path.display(),
            other.kind()
        ))),
    }
}

fn budget(flag: Option<u64>) -> Budget {
    flag.map(Budget::new).unwrap_or_else(Budget::from_env)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome<i32> {
    let format = cli.format;
    match cli.command {
        Command::Validate { file } => {
            let doc = load(&file)?;
            let _ = match format {
                Format::Json => writeln!(out, "{}", json!({ "ok": true, "kind": doc.kind().as_str() })),
                Format::Text => writeln!(out, "valid {}", doc.kind()),
            };
            Ok(EXIT_OK)
        }
        Command::Convert {
            to,
            via,
            output,
            file,
        } => {
            let converted = convert(load(&file)?, &via, to)?;
            let text = converted.to_json();
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| CommandError::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => {
                    let _ = out.write_all(text.as_bytes());
                }
            }
            Ok(EXIT_OK)
        }
        Command::Roundtrip { file } => {
            let doc = load(&file)?;
            let report = round_trip(&doc.payload)?;
            Ok(emit_report(&report, format, out))
        }
        Command::Enumerate {
            kind,
            base,
            fiber,
            budget: flag,
        } => {
            let (base, fiber) = (load_category(&base)?, load_category(&fiber)?);
            let mut budget = budget(flag);
            let docs: Vec<Document> = match kind {
                EnumKind::Action => enumerate_actions(&base, &fiber, &mut budget)?
                    .into_iter()
                    .map(|a| Document::new(Payload::Action(a)))
                    .collect(),
                EnumKind::Prexmod => enumerate_prexmods(&base, &fiber, &mut budget)?
                    .into_iter()
                    .map(|p| Document::new(Payload::PreX(p)))
                    .collect(),
                EnumKind::Xmod => enumerate_xmods(&base, &fiber, &mut budget)?
                    .into_iter()
                    .map(|x| Document::new(Payload::Xmod(x)))
                    .collect(),
            };
            for d in &docs {
                let _ = writeln!(out, "{}", d.to_json_line());
            }
            let _ = writeln!(err, "{} instances", docs.len());
            Ok(EXIT_OK)
        }
        Command::Check {
            property,
            budget: flag,
            file,
        } => {
            let doc = load(&file)?;
            let report = check(property, &doc.payload, &mut budget(flag))?;
            Ok(emit_report(&report, format, out))
        }
    }
}

/// The conversions available without `--via`.
pub fn is_single_hop(from: Kind, to: Kind) -> bool {
    use Kind::*;
    matches!(
        (from, to),
        (SplitEpi, Action)
            | (Action, SplitEpi)
            | (ReflGraph, PreX)
            | (PreX, ReflGraph)
            | (Xmod, RelCat)
            | (RelCat, Xmod)
            | (Xmod, PreX)
            | (PreX, Xmod)
            | (RelCat, ReflGraph)
            | (ReflGraph, RelCat)
            | (ReflGraph, SplitEpi)
            | (PreX, Action)
    )
}

/// The kinds visited after `from`, ending in `to`.
pub fn plan_route(from: Kind, via: &[Kind], to: Kind) -> Outcome<Vec<Kind>> {
    let mut route = via.to_vec();
    route.push(to);
    if via.is_empty() {
        if from == to {
            return Ok(Vec::new());
        }
        if from == Kind::PreX && to == Kind::RelCat {
            return Ok(vec![Kind::Xmod, Kind::RelCat]);
        }
    }
    let mut at = from;
    for &k in &route {
        if !is_single_hop(at, k) {
            let hint = if via.is_empty() { "; name the intermediate kinds with --via" } else { "" };
            return Err(CommandError::Usage(format!("no conversion from {at} to {k}{hint}")));
        }
        at = k;
    }
    Ok(route)
}

/// Applies the route from [`plan_route`]; meta data is kept.
pub fn convert(doc: Document, via: &[Kind], to: Kind) -> Outcome<Document> {
    let route = plan_route(doc.kind(), via, to)?;
    let mut payload = doc.payload;
    for kind in route {
        payload = hop(payload, kind)?;
    }
    Ok(Document {
        meta: doc.meta,
        payload,
    })
}

fn hop(payload: Payload, to: Kind) -> Outcome<Payload> {
    let out = match (payload, to) {
        (Payload::SplitEpi(se), Kind::Action) => Payload::Action(splitepi_to_distlaw(&se)?),
        (Payload::Action(act), Kind::SplitEpi) => Payload::SplitEpi(semidirect_product(&act).pair),
        (Payload::ReflGraph(rg), Kind::PreX) => Payload::PreX(reflgraph_to_prex(&rg)?),
        (Payload::PreX(p), Kind::ReflGraph) => Payload::ReflGraph(prex_to_reflgraph(&p)?),
        (Payload::Xmod(x), Kind::RelCat) => Payload::RelCat(xmod_to_relcat(&x)?),
        (Payload::RelCat(ic), Kind::Xmod) => Payload::Xmod(relcat_to_xmod(&ic)?),
        (Payload::Xmod(x), Kind::PreX) => Payload::PreX(x.into_prex()),
        (Payload::PreX(p), Kind::Xmod) => Payload::Xmod(CrossedModule::new(p)?),
        (Payload::RelCat(ic), Kind::ReflGraph) => Payload::ReflGraph(ic.graph().clone()),
        (Payload::ReflGraph(rg), Kind::RelCat) => Payload::RelCat(build_composition_d(&rg)?),
        (Payload::ReflGraph(rg), Kind::SplitEpi) => Payload::SplitEpi(rg.pair().clone()),
        (Payload::PreX(p), Kind::Action) => Payload::Action(p.action().clone()),
        (p, k) => {
            return Err(CommandError::Usage(format!("no conversion from {} to {k}", p.kind())));
        }
    };
    Ok(out)
}

pub fn round_trip(payload: &Payload) -> Outcome<OracleReport> {
    let report = match payload {
        Payload::SplitEpi(se) => splitepi_round_trip(se)?,
        Payload::Action(act) => action_round_trip(act)?,
        Payload::ReflGraph(rg) => reflgraph_round_trip(rg)?,
        Payload::PreX(p) => prex_round_trip(p)?,
        Payload::Xmod(x) => xmod_round_trip(x)?,
        Payload::RelCat(ic) => relcat_round_trip(ic)?,
        Payload::Category(_) => {
            return Err(CommandError::Usage("a category has no equivalence partner".into()));
        }
    };
    Ok(report)
}

fn as_prex(payload: &Payload) -> Option<Outcome<PreCrossedModule>> {
    Some(match payload {
        Payload::PreX(p) => Ok(p.clone()),
        Payload::Xmod(x) => Ok(x.prex().clone()),
        Payload::ReflGraph(rg) => reflgraph_to_prex(rg).map_err(Into::into),
        Payload::RelCat(ic) => reflgraph_to_prex(ic.graph()).map_err(Into::into),
        _ => return None,
    })
}

fn as_graph(payload: &Payload) -> Option<Outcome<ReflexiveGraph>> {
    Some(match payload {
        Payload::ReflGraph(rg) => Ok(rg.clone()),
        Payload::RelCat(ic) => Ok(ic.graph().clone()),
        Payload::PreX(p) => prex_to_reflgraph(p).map_err(Into::into),
        Payload::Xmod(x) => prex_to_reflgraph(x.prex()).map_err(Into::into),
        _ => return None,
    })
}

fn as_pair(payload: &Payload) -> Option<SplitEpiPair> {
    Some(match payload {
        Payload::SplitEpi(se) => se.clone(),
        Payload::ReflGraph(rg) => rg.pair().clone(),
        Payload::RelCat(ic) => ic.graph().pair().clone(),
        Payload::Action(act) => semidirect_product(act).pair,
        Payload::PreX(p) => semidirect_product(p.action()).pair,
        Payload::Xmod(x) => semidirect_product(x.prex().action()).pair,
        Payload::Category(_) => return None,
    })
}

fn not_applicable(property: Property, kind: Kind) -> CommandError {
    let name = property
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    CommandError::Usage(format!("property {name} does not apply to a {kind}"))
}

pub fn check(property: Property, payload: &Payload, budget: &mut Budget) -> Outcome<OracleReport> {
    let na = || not_applicable(property, payload.kind());
    let report = match property {
        Property::Peiffer => check_peiffer(&as_prex(payload).ok_or_else(na)??),
        Property::Precrossed => {
            let p = as_prex(payload).ok_or_else(na)??;
            check_precrossed(p.action(), p.kappa())
        }
        Property::QInvertible => {
            let se = as_pair(payload).ok_or_else(na)?;
            match validate_split_epi(&se) {
                Ok(q) => OracleReport::pass(q.domain().len(), "q is invertible"),
                Err(e) => {
                    let w = e.witness().cloned().unwrap_or_else(|| Witness::new(vec![], "q"));
                    OracleReport::fail(se.total().len(), w, e.to_string())
                }
            }
        }
        Property::Bn => {
            let p = as_prex(payload).ok_or_else(na)??;
            check_bn(&p)?.and(check_b2_unit_identities(&p)?)
        }
        Property::Hn => check_hn(&as_graph(payload).ok_or_else(na)??)?,
        Property::Qn => check_qn(&as_graph(payload).ok_or_else(na)??)?,
        Property::Interchange => {
            let ic = match payload {
                Payload::RelCat(ic) => ic.clone(),
                _ => build_composition_d(&as_graph(payload).ok_or_else(na)??)?,
            };
            check_internal_cat_laws(ic.graph(), ic.pairs(), ic.table())
        }
        Property::DUnique => {
            let rg = as_graph(payload).ok_or_else(na)??;
            let search = solve_d_by_search(&rg, budget)?;
            let mut report = search.report.clone();
            if let (Some(found), Ok(built)) = (search.unique(), build_composition_d(&rg)) {
                if found != built.table() {
                    let p = found
                        .iter()
                        .zip(built.table())
                        .position(|(a, b)| a != b)
                        .expect("tables differ");
                    let w = crate::equivalences::render(built.pairs().get(p), &[rg.total()]);
                    report = OracleReport::fail(
                        report.checked,
                        Witness::new(built.pairs().get(p).to_vec(), w),
                        "searched composition differs from m∘(p_A 1)∘q₂⁻¹",
                    );
                }
            }
            report
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes() {
        assert_eq!(plan_route(Kind::PreX, &[], Kind::RelCat).unwrap(), vec![Kind::Xmod, Kind::RelCat]);
        assert!(plan_route(Kind::SplitEpi, &[], Kind::PreX).is_err());
        assert_eq!(
            plan_route(Kind::Action, &[Kind::SplitEpi], Kind::Action).unwrap(),
            vec![Kind::SplitEpi, Kind::Action]
        );
        assert!(plan_route(Kind::Category, &[], Kind::Action).is_err());
    }

    #[test]
    fn help_exits_zero_and_bad_flags_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["xmodkit", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("validate"));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["xmodkit", "check", "--property", "nope", "f"], &mut out, &mut err), EXIT_PARSE);
    }
}
