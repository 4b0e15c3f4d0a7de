//! Command-line front end. [`run`] takes explicit streams so tests can drive it
//! in-process; the binary only forwards the exit code.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::compendium::{format_chain, ReductionGraph, Require};
use crate::error::{Error, Result};
use crate::formats::{
    import_dimacs_cnf, instance_to_value, parse_instance, pretty, report_to_value, serialize_instance,
    solutions_to_value,
};
use crate::model::Budget;
use crate::problems::{enumerate_solutions, generate_instance, minimum_cardinality, Instance, ProblemId, SizeParams};
use crate::reductions::{Claims, Reduction};
use crate::verifier::{full_report, run_trial, PartitionCertificate, Trial, VerificationReport};

pub const DEFAULT_BUDGET: u64 = 50_000_000;
pub const BUDGET_ENV: &str = "SSPFORGE_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "sspforge",
    version,
    about = "Subset-search-problem reductions: apply, enumerate, certify"
)]
pub struct Cli {
    /// Search-node budget per enumeration [env: SSPFORGE_BUDGET] [default: 50000000]
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Read instance files as DIMACS CNF (also implied by a .cnf extension).
    #[arg(long, global = true)]
    pub dimacs: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Args)]
pub struct Render {
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    pub format: TextOrJson,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the solutions of an instance.
    Solve {
        instance: String,
        /// Print every solution, not just the count.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        render: Render,
    },
    /// Apply a reduction (or a chain "a+b") and print the target instance.
    Reduce {
        reduction: String,
        instance: String,
        /// Also print the element embedding table.
        #[arg(long)]
        trace: bool,
    },
    /// Check SSP and SPR on an instance or on seeded random instances.
    Verify {
        reduction: String,
        instance: Option<String>,
        /// Number of seeded random instances to check.
        #[arg(long, conflicts_with = "instance")]
        random: Option<usize>,
        /// Generator knobs, e.g. "vars=3,clauses=2".
        #[arg(long, default_value = "")]
        params: String,
        /// Check against these claims instead of the registered ones, e.g. "ssp,spr".
        #[arg(long)]
        claim: Option<String>,
        #[command(flatten)]
        render: Render,
    },
    /// Compute the universe partition certificate.
    Certify {
        reduction: String,
        instance: String,
        #[command(flatten)]
        render: Render,
    },
    /// Compose reductions into a chain; optionally apply it.
    Compose {
        #[arg(required = true, num_args = 1..)]
        reductions: Vec<String>,
        /// Apply the chain to this instance and print the target.
        #[arg(long)]
        instance: Option<String>,
        #[command(flatten)]
        render: Render,
    },
    /// Export the reduction map or list chains between two problems.
    Graph {
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Required properties, e.g. "ssp,spr".
        #[arg(long, default_value = "")]
        require: String,
        /// List chains from SRC to TGT instead of exporting the map.
        #[arg(long, num_args = 2, value_names = ["SRC", "TGT"])]
        path: Option<Vec<String>>,
        /// Let chains use the negative demonstration reductions.
        #[arg(long)]
        include_demos: bool,
    },
    /// Generate a random instance.
    Gen {
        problem: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Number of instances (seeds seed, seed+1, ...); more than one prints a JSON array.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

/// Maps a library error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    budget: u64,
    stdin: &'a mut dyn Read,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn budget(&self) -> Budget {
        Budget::new(self.budget)
    }

    fn read(&mut self, path: &str) -> Result<String> {
        let mut text = String::new();
        if path == "-" {
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Error::invalid(format!("reading stdin: {e}")))?;
        } else {
            text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{path}: {e}")))?;
        }
        Ok(text)
    }

    fn load(&mut self, path: &str) -> Result<Instance> {
        let text = self.read(path)?;
        let dimacs = self.cli.dimacs || path.ends_with(".cnf") || path.ends_with(".dimacs");
        let inst = if dimacs {
            import_dimacs_cnf(&text)?
        } else {
            parse_instance(&text)?
        };
        self.warn_k(&inst);
        Ok(inst)
    }

    /// Cardinality instances are accepted at any k, but solution counts only
    /// carry meaning at the optimum, so say so.
    fn warn_k(&mut self, inst: &Instance) {
        let Some(k) = inst.k() else { return };
        if !inst.kind.is_cardinality() {
            return;
        }
        if let Ok(best) = minimum_cardinality(inst.kind, inst, &mut self.budget()) {
            if best != k {
                let _ = writeln!(
                    self.err,
                    "warning: k={k} is not optimal for this {} instance (optimum {best})",
                    inst.kind.as_str()
                );
            }
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    let budget = match resolve_budget(cli.budget) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut ctx = Ctx {
        cli: &cli,
        budget,
        stdin,
        err,
    };
    let mut buf = Vec::new();
    let code = match dispatch(&mut ctx, &mut buf) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            exit_code(&e)
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &buf).map_err(|e| e.to_string()),
        None => out.write_all(&buf).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(ctx.err, "error: writing output: {e}");
        return EXIT_INPUT;
    }
    code
}

fn resolve_budget(flag: Option<u64>) -> Result<u64> {
    let b = match flag {
        Some(b) => b,
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::validation(BUDGET_ENV, format!("not a node count: {v:?}")))?,
            Err(_) => DEFAULT_BUDGET,
        },
    };
    if b == 0 {
        return Err(Error::validation("budget", "must be positive"));
    }
    Ok(b)
}

fn dispatch(ctx: &mut Ctx, out: &mut Vec<u8>) -> Result<i32> {
    match &ctx.cli.command {
        Command::Solve { instance, all, render } => solve(ctx, out, instance, *all, render.format),
        Command::Reduce {
            reduction,
            instance,
            trace,
        } => reduce(ctx, out, reduction, instance, *trace),
        Command::Verify {
            reduction,
            instance,
            random,
            params,
            claim,
            render,
        } => verify(
            ctx,
            out,
            reduction,
            instance.as_deref(),
            *random,
            params,
            claim.as_deref(),
            render.format,
        ),
        Command::Certify {
            reduction,
            instance,
            render,
        } => certify(ctx, out, reduction, instance, render.format),
        Command::Compose {
            reductions,
            instance,
            render,
        } => compose(ctx, out, reductions, instance.as_deref(), render.format),
        Command::Graph {
            format,
            require,
            path,
            include_demos,
        } => graph(out, *format, require, path.as_deref(), *include_demos),
        Command::Gen { problem, params, count } => gen(ctx, out, problem, params, *count),
    }
}

fn line(out: &mut Vec<u8>, s: impl AsRef<str>) {
    out.extend_from_slice(s.as_ref().as_bytes());
    out.push(b'\n');
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn solve(ctx: &mut Ctx, out: &mut Vec<u8>, path: &str, all: bool, fmt: TextOrJson) -> Result<i32> {
    let inst = ctx.load(path)?;
    let set = enumerate_solutions(inst.kind, &inst, &mut ctx.budget())?;
    match fmt {
        TextOrJson::Json => out.extend(pretty(&solutions_to_value(&inst, &set, all)?).into_bytes()),
        TextOrJson::Text => {
            line(out, format!("problem: {}", inst.kind.as_str()));
            line(out, format!("count: {}", set.len()));
            if all {
                let u = inst.universe()?;
                for s in set.iter() {
                    let names: Vec<String> = u.members(s).iter().map(|e| inst.element_name(e)).collect();
                    line(out, braces(&names));
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn reduce(ctx: &mut Ctx, out: &mut Vec<u8>, id: &str, path: &str, trace: bool) -> Result<i32> {
    let red = Reduction::by_id(id)?;
    let inst = ctx.load(path)?;
    if !trace {
        out.extend(serialize_instance(&red.apply(&inst)?).into_bytes());
        return Ok(EXIT_OK);
    }
    let applied = red.instantiate(&inst)?;
    let (src, tgt) = (applied.source(), applied.target());
    let table: Vec<Value> = applied
        .source_universe()
        .elements()
        .iter()
        .zip(applied.images()?)
        .map(|(e, pos)| {
            json!([
                src.element_name(e),
                tgt.element_name(&applied.target_universe().get(pos))
            ])
        })
        .collect();
    let doc = json!({ "target": instance_to_value(tgt), "embedding": table });
    out.extend(pretty(&doc).into_bytes());
    Ok(EXIT_OK)
}

fn parse_claims(s: &str) -> Result<Claims> {
    let r: Require = s.parse()?;
    Ok(Claims { ssp: r.ssp, spr: r.spr })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_text(out: &mut Vec<u8>, r: &VerificationReport) {
    line(out, format!("reduction: {}", r.reduction_id));
    line(out, format!("fingerprint: {}", r.fingerprint));
    line(
        out,
        format!("counts: {} source, {} target", r.source_count, r.target_count),
    );
    line(
        out,
        format!("ssp: {} (claimed {})", yes(r.ssp_holds), yes(r.claims.ssp))
            + &r.ssp_reason.as_ref().map(|s| format!(": {s}")).unwrap_or_default(),
    );
    line(
        out,
        format!("spr: {} (claimed {})", yes(r.spr_holds), yes(r.claims.spr))
            + &r.spr_reason.as_ref().map(|s| format!(": {s}")).unwrap_or_default(),
    );
    if let Some(p) = &r.partition {
        line(out, format!("partition valid: {}", yes(p.valid)));
    }
    if r.vacuous() {
        line(out, "vacuous: yes");
    }
    for w in &r.witnesses {
        line(
            out,
            format!(
                "witness {} ({}): {} {}",
                w.property,
                w.side,
                braces(&w.elements),
                w.note
            ),
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    ctx: &mut Ctx,
    out: &mut Vec<u8>,
    id: &str,
    path: Option<&str>,
    random: Option<usize>,
    params: &str,
    claim: Option<&str>,
    fmt: TextOrJson,
) -> Result<i32> {
    let red = Reduction::by_id(id)?;
    let claims = claim.map(parse_claims).transpose()?;
    let with_claims = |mut r: VerificationReport| {
        if let Some(c) = claims {
            r.claims = c;
        }
        r
    };
    match (path, random) {
        (Some(p), _) => {
            let inst = ctx.load(p)?;
            let r = with_claims(full_report(&red, &inst, &mut ctx.budget())?);
            let matched = !r.mismatch();
            match fmt {
                TextOrJson::Json => out.extend(pretty(&report_to_value(&r)).into_bytes()),
                TextOrJson::Text => {
                    report_text(out, &r);
                    line(out, format!("claims matched: {}", yes(matched)));
                }
            }
            Ok(if matched { EXIT_OK } else { EXIT_MISMATCH })
        }
        (None, Some(n)) => {
            let params = SizeParams::parse(params)?;
            let seed = ctx.cli.seed;
            let limit = ctx.budget;
            use rayon::prelude::*;
            let trials: Vec<Trial> = (0..n)
                .into_par_iter()
                .map(|i| run_trial(&red, &params, seed.wrapping_add(i as u64), limit))
                .collect();
            let (mut checked, mut skipped, mut over, mut failed) = (0, 0, 0, 0);
            let mut docs = Vec::new();
            for (i, t) in trials.into_iter().enumerate() {
                let s = seed.wrapping_add(i as u64);
                match t {
                    Trial::Checked(b) => {
                        let r = with_claims(b.1);
                        checked += 1;
                        let bad = r.mismatch();
                        failed += bad as usize;
                        match fmt {
                            TextOrJson::Json => docs.push(json!({ "seed": s, "report": report_to_value(&r) })),
                            TextOrJson::Text => line(
                                out,
                                format!(
                                    "seed {s}: counts {}/{} ssp={} spr={}{}",
                                    r.source_count,
                                    r.target_count,
                                    yes(r.ssp_holds),
                                    yes(r.spr_holds),
                                    if bad { " MISMATCH" } else { "" }
                                ),
                            ),
                        }
                    }
                    Trial::Skipped(msg) => {
                        skipped += 1;
                        match fmt {
                            TextOrJson::Json => docs.push(json!({ "seed": s, "skipped": msg })),
                            TextOrJson::Text => line(out, format!("seed {s}: skipped ({msg})")),
                        }
                    }
                    Trial::BudgetExceeded { nodes } => {
                        over += 1;
                        match fmt {
                            TextOrJson::Json => docs.push(json!({ "seed": s, "budget_exceeded": nodes })),
                            TextOrJson::Text => line(out, format!("seed {s}: budget exceeded after {nodes} nodes")),
                        }
                    }
                }
            }
            let matched = failed == 0;
            match fmt {
                TextOrJson::Json => {
                    let doc = json!({
                        "reduction": red.id(),
                        "trials": docs,
                        "checked": checked,
                        "skipped": skipped,
                        "budget_exceeded": over,
                        "mismatches": failed,
                        "claims_matched": matched,
                    });
                    out.extend(pretty(&doc).into_bytes());
                }
                TextOrJson::Text => {
                    line(
                        out,
                        format!("checked {checked}, skipped {skipped}, over budget {over}, mismatches {failed}"),
                    );
                    line(out, format!("claims matched: {}", yes(matched)));
                }
            }
            Ok(if matched { EXIT_OK } else { EXIT_MISMATCH })
        }
        (None, None) => Err(Error::validation("instance", "give an instance file or --random N")),
    }
}

fn certificate_text(out: &mut Vec<u8>, c: &PartitionCertificate) {
    let names =
        |s: &crate::model::Solution| -> Vec<String> { s.ones().map(|i| c.target_elements[i].clone()).collect() };
    line(out, format!("s_rep: {}", braces(&names(&c.s_rep))));
    line(out, format!("s_all: {}", braces(&names(&c.s_all))));
    line(out, format!("s_nev: {}", braces(&names(&c.s_nev))));
    line(out, format!("s_link: {}", braces(&names(&c.s_link))));
    for (s, l) in &c.link_map {
        let src: Vec<String> = s.ones().map(|i| c.source_elements[i].clone()).collect();
        line(out, format!("link {} -> {}", braces(&src), braces(&names(l))));
    }
    line(out, format!("valid: {}", yes(c.valid)));
    if c.vacuous {
        line(out, "vacuous: yes");
    }
    if let Some(r) = &c.failure_reason {
        line(out, format!("reason: {r}"));
    }
}

fn certify(ctx: &mut Ctx, out: &mut Vec<u8>, id: &str, path: &str, fmt: TextOrJson) -> Result<i32> {
    let red = Reduction::by_id(id)?;
    let inst = ctx.load(path)?;
    let r = full_report(&red, &inst, &mut ctx.budget())?;
    let cert = r.partition.clone().ok_or_else(|| Error::NoEmbedding(red.id()))?;
    match fmt {
        TextOrJson::Json => {
            let v = report_to_value(&r);
            out.extend(pretty(&v["partition"]).into_bytes());
        }
        TextOrJson::Text => certificate_text(out, &cert),
    }
    let claims = red.claims();
    Ok(if claims.ssp && claims.spr && !cert.valid {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    })
}

fn compose(ctx: &mut Ctx, out: &mut Vec<u8>, ids: &[String], path: Option<&str>, fmt: TextOrJson) -> Result<i32> {
    let red = Reduction::by_id(&ids.join("+"))?;
    if let Some(p) = path {
        let inst = ctx.load(p)?;
        out.extend(serialize_instance(&red.apply(&inst)?).into_bytes());
        return Ok(EXIT_OK);
    }
    let c = red.claims();
    match fmt {
        TextOrJson::Json => {
            let doc = json!({
                "id": red.id(),
                "chain": red.steps().iter().map(|d| d.id).collect::<Vec<_>>(),
                "source": red.source().as_str(),
                "target": red.target().as_str(),
                "claims": { "ssp": c.ssp, "spr": c.spr },
            });
            out.extend(pretty(&doc).into_bytes());
        }
        TextOrJson::Text => {
            line(out, format!("chain: {}", red.id()));
            line(out, format!("source: {}", red.source().as_str()));
            line(out, format!("target: {}", red.target().as_str()));
            line(out, format!("claims: ssp={} spr={}", yes(c.ssp), yes(c.spr)));
        }
    }
    Ok(EXIT_OK)
}

fn graph(
    out: &mut Vec<u8>,
    format: GraphFormat,
    require: &str,
    path: Option<&[String]>,
    include_demos: bool,
) -> Result<i32> {
    let require: Require = require.parse()?;
    let full = ReductionGraph::full();
    if let Some([src, tgt]) = path {
        let (s, t): (ProblemId, ProblemId) = (src.parse()?, tgt.parse()?);
        let chains = full.transitive_paths(s, t, require, include_demos);
        match format {
            GraphFormat::Json => {
                let v: Vec<Vec<&str>> = chains.iter().map(|c| c.iter().map(|d| d.id).collect()).collect();
                out.extend(pretty(&json!(v)).into_bytes());
            }
            GraphFormat::Dot => {
                for c in &chains {
                    line(out, format_chain(c));
                }
            }
        }
        return Ok(EXIT_OK);
    }
    let g = full.filtered(require);
    match format {
        GraphFormat::Dot => out.extend(g.to_dot().into_bytes()),
        GraphFormat::Json => out.extend(pretty(&g.to_json()).into_bytes()),
    }
    Ok(EXIT_OK)
}

fn gen(ctx: &mut Ctx, out: &mut Vec<u8>, problem: &str, params: &str, count: usize) -> Result<i32> {
    let kind: ProblemId = problem.parse()?;
    let params = SizeParams::parse(params)?;
    let seed = ctx.cli.seed;
    let insts = (0..count as u64)
        .map(|i| generate_instance(kind, &params, seed.wrapping_add(i)))
        .collect::<Result<Vec<_>>>()?;
    if count == 1 {
        out.extend(serialize_instance(&insts[0]).into_bytes());
    } else {
        out.extend(pretty(&Value::Array(insts.iter().map(instance_to_value).collect())).into_bytes());
    }
    Ok(EXIT_OK)
}
