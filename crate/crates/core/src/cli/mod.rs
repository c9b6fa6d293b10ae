//! The `hpd` command line: one flat subcommand per engine operation, each
//! emitting a report as JSON, TSV (blocks only) or text, plus box diagrams
//! for the grid-shaped reports.
//!
//! Exit codes: `0` when every certificate passes, `1` when one fails, `2` on
//! malformed flags or parameters outside an operation's domain.

mod grid;
mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use grid::{GridCell, GridDiagram};
pub use report::{CliReport, TSV_HEADER};

use crate::bott::omega_cohomology;
use crate::chern::{chi_top, AmbientSpec, CISpec};
use crate::divisor_ext::{ext_on_divisor, Bidegree, DivisorGeometry};
use crate::error::Error;
use crate::hpd::{
    example_catalog, final_support, generation_schedule, hpd1_decomposition, hpd2_decomposition,
    mutation_walkthrough, CatalogEntry, Certificate, OrlovInstance, SODReport,
};
use crate::kgroup::{
    euler_pairing, gram_matrix, is_exceptional_collection, line_ext, mutate, transform_gram,
    CheckLayer, Collection, GramMatrix, KClass, MutationSide,
};
use report::big;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
    Ascii,
    /// Grid diagram only; for `hpd2` and `walk`.
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum)]
pub enum CommandKind {
    Cohom,
    Chi,
    Gram,
    Mutate,
    Ext,
    Hpd1,
    Hpd2,
    Walk,
    Example,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Cohom => "cohom",
            CommandKind::Chi => "chi",
            CommandKind::Gram => "gram",
            CommandKind::Mutate => "mutate",
            CommandKind::Ext => "ext",
            CommandKind::Hpd1 => "hpd1",
            CommandKind::Hpd2 => "hpd2",
            CommandKind::Walk => "walk",
            CommandKind::Example => "example",
        }
    }

    /// Integer parameters the command reads; these are the sweepable ones.
    fn int_keys(self) -> &'static [&'static str] {
        match self {
            CommandKind::Cohom => &["n", "p", "k"],
            CommandKind::Chi => &["n"],
            CommandKind::Gram => &["n"],
            CommandKind::Mutate => &["n", "index"],
            CommandKind::Ext => &["m", "d", "ell"],
            CommandKind::Hpd1 | CommandKind::Hpd2 => &["m", "d", "ell"],
            CommandKind::Walk => &["i", "ell"],
            CommandKind::Example => &["n"],
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hpd", about = "Exact bookkeeping for Veronese HPD", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Comma-separated ranges, e.g. `m=1..7,d=1..4`.
    #[arg(long, value_name = "RANGES")]
    sweep: Option<String>,
    /// Write the output here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// H^*(P^n, Ω^p(k)).
    #[command(allow_negative_numbers = true)]
    Cohom {
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Topological Euler characteristic of a complete intersection.
    #[command(allow_negative_numbers = true)]
    Chi {
        /// Shorthand for `--ambient n`.
        #[arg(long)]
        n: Option<i64>,
        /// Factor dimensions, e.g. `2,1` for P^2 x P^1.
        #[arg(long, allow_hyphen_values = true)]
        ambient: Option<String>,
        /// Multidegrees separated by `;`, e.g. `3;1,1`.
        #[arg(long, allow_hyphen_values = true)]
        degrees: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Gram matrix and exceptionality of O(a_1), …, O(a_r) on P^n.
    #[command(allow_negative_numbers = true)]
    Gram {
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        twists: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// One mutation of O(a_1), …, O(a_r) on P^n, in the Grothendieck group.
    #[command(allow_negative_numbers = true)]
    Mutate {
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        twists: Option<String>,
        /// 0-based position.
        #[arg(long)]
        index: Option<i64>,
        #[arg(long, value_parser = ["left", "right"])]
        side: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// RHom(O(from), O(to)) on the universal hyperplane section H_L.
    #[command(allow_negative_numbers = true)]
    Ext {
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        ell: Option<i64>,
        /// Bidegree `u,v`.
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// HPD I decomposition of D(H_L).
    #[command(allow_negative_numbers = true)]
    Hpd1 {
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        ell: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// HPD II decomposition of D(H_L), with the grid of ⊥C.
    #[command(allow_negative_numbers = true)]
    Hpd2 {
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        ell: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Mutation walkthrough and generation schedule on the (α, β) grid.
    #[command(allow_negative_numbers = true)]
    Walk {
        #[arg(long)]
        i: Option<i64>,
        #[arg(long)]
        ell: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// A worked example by name.
    #[command(allow_negative_numbers = true)]
    Example {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        n: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
}

/// A parsed request, before any parameter is checked against the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub command: CommandKind,
    pub ints: BTreeMap<String, i64>,
    pub strings: BTreeMap<String, String>,
    pub format: OutputFormat,
    pub sweep: Vec<(String, i64, i64)>,
    pub out: Option<PathBuf>,
}

impl Scenario {
    fn from_sub(sub: Sub) -> Result<Self, CliError> {
        let mut ints = BTreeMap::new();
        let mut strings = BTreeMap::new();
        let mut put_i = |k: &str, v: Option<i64>| {
            if let Some(v) = v {
                ints.insert(k.to_string(), v);
            }
        };
        let mut put_s = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                strings.insert(k.to_string(), v);
            }
        };
        let (command, common) = match sub {
            Sub::Cohom { n, p, k, common } => {
                put_i("n", n);
                put_i("p", p);
                put_i("k", k);
                (CommandKind::Cohom, common)
            }
            Sub::Chi {
                n,
                ambient,
                degrees,
                common,
            } => {
                put_i("n", n);
                put_s("ambient", ambient);
                put_s("degrees", degrees);
                (CommandKind::Chi, common)
            }
            Sub::Gram { n, twists, common } => {
                put_i("n", n);
                put_s("twists", twists);
                (CommandKind::Gram, common)
            }
            Sub::Mutate {
                n,
                twists,
                index,
                side,
                common,
            } => {
                put_i("n", n);
                put_i("index", index);
                put_s("twists", twists);
                put_s("side", side);
                (CommandKind::Mutate, common)
            }
            Sub::Ext {
                m,
                d,
                ell,
                from,
                to,
                common,
            } => {
                put_i("m", m);
                put_i("d", d);
                put_i("ell", ell);
                put_s("from", from);
                put_s("to", to);
                (CommandKind::Ext, common)
            }
            Sub::Hpd1 { m, d, ell, common } => {
                put_i("m", m);
                put_i("d", d);
                put_i("ell", ell);
                (CommandKind::Hpd1, common)
            }
            Sub::Hpd2 { m, d, ell, common } => {
                put_i("m", m);
                put_i("d", d);
                put_i("ell", ell);
                (CommandKind::Hpd2, common)
            }
            Sub::Walk { i, ell, common } => {
                put_i("i", i);
                put_i("ell", ell);
                (CommandKind::Walk, common)
            }
            Sub::Example { name, n, common } => {
                put_i("n", n);
                put_s("name", name);
                (CommandKind::Example, common)
            }
        };
        let sweep = match &common.sweep {
            Some(spec) => parse_sweep(spec, command)?,
            None => Vec::new(),
        };
        let scenario = Scenario {
            command,
            ints,
            strings,
            format: common.format,
            sweep,
            out: common.out,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Checks that every required parameter is present, given or swept.
    fn validate(&self) -> Result<(), CliError> {
        let swept = |k: &str| self.sweep.iter().any(|(key, ..)| key == k);
        let need_int = |k: &str| {
            if self.ints.contains_key(k) || swept(k) {
                Ok(())
            } else {
                Err(CliError::Usage(format!(
                    "{} requires --{k}",
                    self.command.name()
                )))
            }
        };
        let need_str = |k: &str| {
            if self.strings.contains_key(k) {
                Ok(())
            } else {
                Err(CliError::Usage(format!(
                    "{} requires --{k}",
                    self.command.name()
                )))
            }
        };
        match self.command {
            CommandKind::Cohom => {
                need_int("n")?;
                need_int("k")?;
            }
            CommandKind::Chi => {
                if !self.strings.contains_key("ambient") {
                    need_int("n")?;
                }
            }
            CommandKind::Gram => {
                need_int("n")?;
                need_str("twists")?;
            }
            CommandKind::Mutate => {
                need_int("n")?;
                need_int("index")?;
                need_str("twists")?;
                need_str("side")?;
            }
            CommandKind::Ext => {
                for k in ["m", "d", "ell"] {
                    need_int(k)?;
                }
                need_str("from")?;
                need_str("to")?;
            }
            CommandKind::Hpd1 | CommandKind::Hpd2 => {
                for k in ["m", "d", "ell"] {
                    need_int(k)?;
                }
            }
            CommandKind::Walk => {
                need_int("i")?;
                need_int("ell")?;
            }
            CommandKind::Example => need_str("name")?,
        }
        if self.format == OutputFormat::Svg {
            if !matches!(self.command, CommandKind::Hpd2 | CommandKind::Walk) {
                return Err(CliError::Usage(format!(
                    "svg output needs grid data, which {} does not produce",
                    self.command.name()
                )));
            }
            if !self.sweep.is_empty() {
                return Err(CliError::Usage(
                    "svg output cannot be combined with --sweep".into(),
                ));
            }
        }
        Ok(())
    }

    /// Every integer assignment the scenario asks for, in sweep order: the
    /// first swept key varies slowest.
    fn assignments(&self) -> Vec<BTreeMap<String, i64>> {
        let mut out = vec![self.ints.clone()];
        for (key, lo, hi) in &self.sweep {
            out = out
                .into_iter()
                .flat_map(|base| {
                    (*lo..=*hi).map(move |v| {
                        let mut next = base.clone();
                        next.insert(key.clone(), v);
                        next
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Engine(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

fn parse_sweep(spec: &str, command: CommandKind) -> Result<Vec<(String, i64, i64)>, CliError> {
    let bad = |msg: String| CliError::Usage(format!("bad --sweep: {msg}"));
    let mut out: Vec<(String, i64, i64)> = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, range) = part
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=lo..hi, got `{part}`")))?;
        let key = key.trim();
        if !command.int_keys().contains(&key) {
            return Err(bad(format!(
                "{} has no integer parameter `{key}`",
                command.name()
            )));
        }
        if out.iter().any(|(k, ..)| k == key) {
            return Err(bad(format!("`{key}` given twice")));
        }
        let (lo, hi) = match range.split_once("..") {
            Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
            None => (range, range),
        };
        let parse = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| bad(format!("`{s}` is not an integer")))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err(bad(format!("empty range {lo}..{hi} for `{key}`")));
        }
        out.push((key.to_string(), lo, hi));
    }
    if out.is_empty() {
        return Err(bad("no ranges given".into()));
    }
    Ok(out)
}

fn parse_list(key: &str, s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--{key}: `{x}` is not an integer")))
        })
        .collect()
}

fn parse_side(s: &str) -> Result<MutationSide, CliError> {
    match s {
        "left" => Ok(MutationSide::Left),
        "right" => Ok(MutationSide::Right),
        other => Err(CliError::Usage(format!(
            "--side must be left or right, got `{other}`"
        ))),
    }
}

fn to_u32(key: &str, v: i64) -> Result<u32, CliError> {
    u32::try_from(v)
        .map_err(|_| Error::InvalidArgument(format!("{key} must be >= 0, got {v}")).into())
}

fn count_cert(name: &str, failures: usize) -> Certificate {
    Certificate::equality(name, failures, 0)
}

/// Everything the report needs from an evaluation, before it is wrapped.
struct Ctx<'a> {
    ints: &'a BTreeMap<String, i64>,
    strings: &'a BTreeMap<String, String>,
}

impl Ctx<'_> {
    fn int(&self, k: &str) -> i64 {
        self.ints[k]
    }

    fn int_or(&self, k: &str, default: i64) -> i64 {
        self.ints.get(k).copied().unwrap_or(default)
    }

    fn string(&self, k: &str) -> &str {
        &self.strings[k]
    }

    fn inputs(&self) -> BTreeMap<String, Value> {
        self.ints
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(*v)))
            .chain(
                self.strings
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::from(v.clone()))),
            )
            .collect()
    }
}

fn from_sod(command: &str, ctx: &Ctx, sod: SODReport) -> CliReport {
    let mut r = CliReport::new(command, ctx.inputs());
    let mut data = serde_json::Map::new();
    data.insert("case_tag".into(), json!(sod.case_tag));
    data.insert("derived_inputs".into(), json!(sod.inputs));
    if !sod.refinement.is_empty() {
        data.insert("refinement".into(), json!(sod.refinement));
    }
    if !sod.alternative.is_empty() {
        data.insert("alternative".into(), json!(sod.alternative));
    }
    if !sod.annotations.is_empty() {
        data.insert("annotations".into(), json!(sod.annotations));
    }
    r.blocks = sod.blocks;
    r.certificates = sod.certificates;
    r.data = Some(Value::Object(data));
    r
}

fn gram_json(g: &GramMatrix) -> Value {
    Value::Array(
        (0..g.size())
            .map(|s| Value::Array((0..g.size()).map(|t| big(g.get(s, t))).collect()))
            .collect(),
    )
}

fn classes_json(c: &Collection) -> Value {
    Value::Array(
        c.objects()
            .iter()
            .map(|o| Value::from(o.to_string()))
            .collect(),
    )
}

fn evaluate(command: CommandKind, ctx: &Ctx) -> Result<CliReport, CliError> {
    let name = command.name();
    match command {
        CommandKind::Cohom => {
            let (n, p, k) = (ctx.int("n"), ctx.int_or("p", 0), ctx.int("k"));
            let table = omega_cohomology(n, p, k)?;
            let dual = omega_cohomology(n, n - p, -k)?;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let mut r = CliReport::new(name, ctx.inputs());
            r.certificates.push(Certificate::equality(
                "serre_duality",
                table.euler(),
                dual.euler() * sign,
            ));
            r.data = Some(json!({ "table": table, "euler": big(&table.euler()) }));
            Ok(r)
        }
        CommandKind::Chi => {
            let dims: Vec<u32> = match ctx.strings.get("ambient") {
                Some(s) => parse_list("ambient", s)?
                    .into_iter()
                    .map(|v| to_u32("ambient", v))
                    .collect::<Result<_, _>>()?,
                None => vec![to_u32("n", ctx.int("n"))?],
            };
            let ambient = AmbientSpec::new(dims)?;
            let degrees: Vec<Vec<i64>> = match ctx.strings.get("degrees") {
                Some(s) => s
                    .split(';')
                    .map(str::trim)
                    .filter(|x| !x.is_empty())
                    .map(|x| parse_list("degrees", x))
                    .collect::<Result<_, _>>()?,
                None => Vec::new(),
            };
            let spec = CISpec::new(ambient, degrees)?;
            let chi = chi_top(&spec);
            let mut r = CliReport::new(name, ctx.inputs());
            r.data = Some(json!({ "chi": big(&chi), "dim": spec.dim() }));
            Ok(r)
        }
        CommandKind::Gram => {
            let n = to_u32("n", ctx.int("n"))?;
            let c = Collection::of_twists(n, &parse_list("twists", ctx.string("twists"))?)?;
            let g = gram_matrix(&c);
            let ex = is_exceptional_collection(&c);
            let mut r = CliReport::new(name, ctx.inputs());
            for layer in [CheckLayer::Numerical, CheckLayer::Graded] {
                r.certificates.push(count_cert(
                    &format!("exceptional_{layer}"),
                    usize::from(ex.violation(layer).is_some()),
                ));
            }
            let violations: Vec<Value> = ex
                .violations
                .iter()
                .map(|v| Value::from(v.to_string()))
                .collect();
            r.data = Some(json!({
                "gram": gram_json(&g),
                "unitriangular": g.is_unitriangular(),
                "graded_layer_applied": ex.graded_layer_applied,
                "violations": violations,
            }));
            Ok(r)
        }
        CommandKind::Mutate => {
            let n = to_u32("n", ctx.int("n"))?;
            let side = parse_side(ctx.string("side"))?;
            let c = Collection::of_twists(n, &parse_list("twists", ctx.string("twists"))?)?;
            let t = usize::try_from(ctx.int("index")).map_err(|_| {
                Error::InvalidArgument(format!("index must be >= 0, got {}", ctx.int("index")))
            })?;
            let after = mutate(&c, t, side)?;
            let (lo, hi, back) = match side {
                MutationSide::Left => (t - 1, t, mutate(&after, t - 1, MutationSide::Right)?),
                MutationSide::Right => (t, t + 1, mutate(&after, t + 1, MutationSide::Left)?),
            };
            let g_after = gram_matrix(&after);
            let predicted = transform_gram(&gram_matrix(&c), t, side)?;
            let mismatches = (0..g_after.size())
                .flat_map(|s| (0..g_after.size()).map(move |u| (s, u)))
                .filter(|&(s, u)| g_after.get(s, u) != predicted.get(s, u))
                .count();
            let objs = after.objects();
            let mut r = CliReport::new(name, ctx.inputs());
            r.certificates = vec![
                count_cert("gram_transform", mismatches),
                Certificate::equality("orthogonality", euler_pairing(&objs[hi], &objs[lo])?, 0),
                count_cert("inverse", usize::from(back != c)),
            ];
            r.data = Some(json!({
                "before": classes_json(&c),
                "after": classes_json(&after),
                "gram_after": gram_json(&g_after),
            }));
            Ok(r)
        }
        CommandKind::Ext => {
            let g = DivisorGeometry::new(ctx.int("m"), ctx.int("d"), ctx.int("ell"))?;
            let bideg = |key: &str| -> Result<Bidegree, CliError> {
                match parse_list(key, ctx.string(key))?.as_slice() {
                    [u, v] => Ok(Bidegree::new(*u, *v)),
                    _ => Err(CliError::Usage(format!("--{key} takes a bidegree u,v"))),
                }
            };
            let (from, to) = (bideg("from")?, bideg("to")?);
            let answer = ext_on_divisor(&g, from, to);
            // χ over the Koszul resolution 0 → O(-d,-1) → O → O_{H_L} → 0
            let ambient =
                AmbientSpec::product(&[to_u32("m", g.m())?, to_u32("ell", g.ell() - 1)?])?;
            let line = |b: Bidegree| KClass::line(&ambient, &[b.u, b.v]);
            let koszul = euler_pairing(&line(from)?, &line(to)?)?
                - euler_pairing(&line(from)?, &line(to - Bidegree::new(g.d(), 1))?)?;
            let mut r = CliReport::new(name, ctx.inputs());
            r.certificates.push(Certificate::equality(
                "koszul_euler",
                answer.euler.clone(),
                koszul,
            ));
            let ambient_ext = line_ext(&ambient, &[from.u, from.v], &[to.u, to.v]);
            r.data = Some(json!({ "answer": answer, "ambient_ext": ambient_ext }));
            Ok(r)
        }
        CommandKind::Hpd1 => {
            let sod = hpd1_decomposition(ctx.int("m"), ctx.int("d"), ctx.int("ell"))?;
            Ok(from_sod(name, ctx, sod))
        }
        CommandKind::Hpd2 => {
            let sod = hpd2_decomposition(ctx.int("m"), ctx.int("d"), ctx.int("ell"))?;
            let i = sod.input("i").expect("HPD II records i");
            let mut r = from_sod(name, ctx, sod);
            r.grid = Some(GridDiagram::hpd2(i, ctx.int("ell")));
            Ok(r)
        }
        CommandKind::Walk => {
            let (i, ell) = (ctx.int("i"), ctx.int("ell"));
            let state = mutation_walkthrough(i, ell)?;
            let mut r = CliReport::new(name, ctx.inputs());
            let expected = final_support(i);
            let support_diff = state.support.symmetric_difference(&expected).count();
            r.certificates
                .push(count_cert("final_support", support_diff));
            r.certificates.push(count_cert(
                "grid_preserved",
                usize::from(!state.preserves_grid()),
            ));
            for c in &state.certificates {
                r.certificates
                    .push(Certificate::equality(c.id.clone(), i64::from(c.pass), 1));
            }
            let mut schedules = Vec::new();
            if ell > i {
                for k in ell - i + 1..ell {
                    let entries = generation_schedule(i, ell, k)?;
                    for e in &entries {
                        r.certificates.push(Certificate::guarded(
                            format!(
                                "schedule[k={k}]:A({},{})<-A({},{})",
                                e.target.0, e.target.1, e.detector.0, e.detector.1
                            ),
                            e.pairing_dim.clone(),
                            e.expected_dim.clone(),
                            e.pass,
                        ));
                    }
                    schedules.push(json!({ "k": k, "entries": entries }));
                }
            }
            r.data = Some(json!({
                "geometry": state.geometry,
                "support": state.support,
                "script": state.script,
                "schedules": schedules,
            }));
            r.grid = Some(GridDiagram::walkthrough(&state));
            Ok(r)
        }
        CommandKind::Example => {
            let example = ctx.string("name");
            if let Some(inst) = OrlovInstance::ALL.into_iter().find(|x| x.name() == example) {
                let rep = inst.check()?;
                let mut r = CliReport::new(name, ctx.inputs());
                r.certificates = rep.certificates;
                r.data = Some(json!({ "orlov": rep.params }));
                return Ok(r);
            }
            let entry = CatalogEntry::parse(example, ctx.ints.get("n").copied())?;
            Ok(from_sod(name, ctx, example_catalog(entry)?))
        }
    }
}

/// Names accepted by `example --name`.
pub fn example_names() -> Vec<&'static str> {
    crate::hpd::CATALOG_NAMES
        .into_iter()
        .chain(OrlovInstance::ALL.into_iter().map(OrlovInstance::name))
        .collect()
}

/// Result of one invocation: the exit code and both output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn usage(msg: &str, command: Option<CommandKind>) -> Self {
        let mut cmd = Cli::command();
        let usage = match command.and_then(|c| cmd.find_subcommand_mut(c.name())) {
            Some(sub) => sub.render_usage(),
            None => cmd.render_usage(),
        };
        RunOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n\n{usage}\n"),
        }
    }
}

fn render(reports: &[CliReport], sweep: bool, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = if sweep {
                serde_json::to_string_pretty(reports)
            } else {
                serde_json::to_string_pretty(&reports[0])
            }
            .expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Tsv => {
            let mut s = TSV_HEADER.to_string();
            for r in reports {
                r.tsv_rows(&mut s);
            }
            s
        }
        OutputFormat::Ascii => reports
            .iter()
            .map(CliReport::render_ascii)
            .collect::<Vec<_>>()
            .join("\n"),
        OutputFormat::Svg => reports[0]
            .grid
            .as_ref()
            .expect("svg is only allowed for grid commands")
            .render_svg(),
    }
}

/// Parses `argv` (program name first) and runs the request.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut text = e.render().to_string();
            if !text.contains("Usage:") {
                let mut cmd = Cli::command();
                let sub = argv.get(1).and_then(|a| a.to_str()).map(str::to_string);
                let usage = match sub
                    .and_then(|name| cmd.find_subcommand_mut(&name).map(|c| c.render_usage()))
                {
                    Some(u) => u,
                    None => cmd.render_usage(),
                };
                text = format!("{text}\n{usage}\n");
            }
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    RunOutput {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => RunOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let scenario = match Scenario::from_sub(cli.command) {
        Ok(s) => s,
        Err(CliError::Usage(msg)) => return RunOutput::usage(&msg, None),
        Err(CliError::Engine(e)) => return RunOutput::usage(&e.to_string(), None),
    };
    run_scenario(&scenario)
}

pub fn run_scenario(scenario: &Scenario) -> RunOutput {
    let assignments = scenario.assignments();
    let results: Vec<Result<CliReport, CliError>> = assignments
        .par_iter()
        .map(|ints| {
            let ctx = Ctx {
                ints,
                strings: &scenario.strings,
            };
            evaluate(scenario.command, &ctx)
        })
        .collect();

    let sweep = !scenario.sweep.is_empty();
    let mut reports = Vec::new();
    for result in results {
        match result {
            Ok(r) => reports.push(r),
            Err(CliError::Usage(msg)) => return RunOutput::usage(&msg, Some(scenario.command)),
            // a sweep skips parameter combinations outside the domain
            Err(CliError::Engine(_)) if sweep => {}
            Err(CliError::Engine(e)) => {
                return RunOutput::usage(&e.to_string(), Some(scenario.command))
            }
        }
    }
    if reports.is_empty() {
        return RunOutput::usage(
            "the sweep contains no valid parameter combination",
            Some(scenario.command),
        );
    }

    let code = if reports.iter().all(CliReport::all_pass) {
        0
    } else {
        1
    };
    let text = render(&reports, sweep, scenario.format);
    match &scenario.out {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => RunOutput {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => RunOutput {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => RunOutput {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

/// Parses a JSON report back, as printed by `--format json` without a sweep.
pub fn parse_report(text: &str) -> serde_json::Result<CliReport> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> RunOutput {
        run(std::iter::once("hpd").chain(args.iter().copied()))
    }

    #[test]
    fn cubic_fourfold_blocks() {
        let out = run_args(&[
            "hpd2", "--m", "5", "--d", "3", "--ell", "1", "--format", "json",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let r = parse_report(&out.stdout).unwrap();
        let ranks: Vec<String> = r.blocks.iter().map(|b| b.to_string()).collect();
        assert_eq!(ranks, vec!["C rank 24", "A(1,0) rank 3"]);
    }

    #[test]
    fn acyclic_cohom() {
        let out = run_args(&["cohom", "--n", "3", "--p", "2", "--k", "2"]);
        assert_eq!(out.code, 0);
        let r = parse_report(&out.stdout).unwrap();
        assert_eq!(r.data.unwrap()["table"], json!({}));
    }

    #[test]
    fn precondition_is_usage_error() {
        let out = run_args(&["hpd1", "--m", "2", "--d", "1", "--ell", "5"]);
        assert_eq!(out.code, 2);
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("Usage"), "{}", out.stderr);
    }

    #[test]
    fn malformed_flags() {
        for args in [
            &["hpd2", "--m", "five"][..],
            &["nonsense"],
            &["hpd2", "--m", "5", "--d", "3"],
            &["cohom", "--n", "2", "--k", "1", "--format", "svg"],
            &[
                "hpd2", "--m", "5", "--d", "3", "--ell", "1", "--sweep", "q=1..2",
            ],
        ] {
            let out = run_args(args);
            assert_eq!(out.code, 2, "{args:?}");
            assert!(out.stderr.contains("Usage"), "{args:?}: {}", out.stderr);
        }
    }

    #[test]
    fn failing_certificate_exits_one() {
        let out = run_args(&["gram", "--n", "2", "--twists", "0,3"]);
        assert_eq!(out.code, 1);
        let out = run_args(&["gram", "--n", "2", "--twists", "0,1,2"]);
        assert_eq!(out.code, 0);
    }

    #[test]
    fn negative_values() {
        let out = run_args(&["cohom", "--n", "2", "--k", "-3"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let out = run_args(&[
            "ext", "--m", "5", "--d", "3", "--ell", "2", "--from", "0,0", "--to", "-1,-1",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
    }

    #[test]
    fn sweep_is_ordered_and_skips_invalid() {
        let out = run_args(&["hpd2", "--sweep", "m=1..5,d=1..3,ell=1..2"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let reports: Vec<CliReport> = serde_json::from_str(&out.stdout).unwrap();
        let keys: Vec<(i64, i64, i64)> = reports
            .iter()
            .map(|r| {
                let g = |k: &str| r.inputs[k].as_i64().unwrap();
                (g("m"), g("d"), g("ell"))
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert!(keys.contains(&(5, 3, 2)));
        assert!(!keys.contains(&(4, 2, 1)));
    }

    #[test]
    fn mutation_certificates() {
        for side in ["left", "right"] {
            let out = run_args(&[
                "mutate", "--n", "2", "--twists", "0,1,2", "--index", "1", "--side", side,
            ]);
            assert_eq!(out.code, 0, "{side}: {}", out.stdout);
        }
        let out = run_args(&[
            "mutate", "--n", "2", "--twists", "0,1,2", "--index", "0", "--side", "left",
        ]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn all_examples_run() {
        for name in example_names() {
            let out = run_args(&["example", "--name", name]);
            assert_eq!(out.code, 0, "{name}: {}{}", out.stdout, out.stderr);
        }
        assert_eq!(run_args(&["example", "--name", "k3"]).code, 2);
    }
}
