mod input;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rbhopf::constructions::{
    antipode_cauchy_replay, antipode_closed_form_report, compose_automorphisms, family, family_aut_search, family_hypotheses,
    group_algebra, h4_antipode_report, sweedler_h4, FamilyParams,
};
use rbhopf::hopf_core::{check_hopf_with, hopf_consequences, HopfData, HopfError};
use rbhopf::rb_group::{
    check_rb, check_rb_lambda, circ_from_rrb, derived_group, enumerate_rb, lemma_checks, power_star, skew_brace_check,
    weight_flip, GroupError, GroupMap, GroupTable, DEFAULT_CAP,
};
use rbhopf::rb_hopf::{check_circle, check_hopf_brace, check_rrbo_with, derived_hopf, RbHopfError, RrbFile};
use rbhopf::rb_lie::{check_lie, check_rb_lie_weight, rb_lie_grid_search, LieError, DEFAULT_GRID_CAP};
use rbhopf::report::{Status, Suite, VerificationReport, Witness};
use rbhopf::scalars::FieldCtx;
use serde_json::json;

use output::{Format, Outcome};

#[derive(Debug, Parser)]
#[command(name = "rbhopf", version, about = "Exact verification of Hopf algebras and Rota–Baxter operators")]
struct Cli {
    /// Ground field: Q, Q(zN), cyclotomic:N, GF(P) or prime:P.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Search cap (nodes for group enumeration, matrices for Lie grids).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a Hopf algebra and check its axioms.
    Verify(VerifyArgs),
    /// Enumerate the Rota–Baxter operators of a given weight on a group.
    EnumRb(EnumArgs),
    /// Check a relative Rota–Baxter operator on Hopf algebras.
    CheckRrb(CheckRrbArgs),
    /// Search for Hopf automorphisms of H_{m,ζ,l,f} on a coefficient grid.
    Aut(AutArgs),
    /// Check a Lie algebra and optionally a Rota–Baxter operator on it.
    CheckLie(CheckLieArgs),
    /// Check one Rota–Baxter operator on a group.
    CheckGroupRb(CheckGroupRbArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    GroupAlgebra,
    H4,
    Taft,
    Family,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    m: Option<usize>,
    /// A scalar, or order:N for the designated primitive N-th root.
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<String>,
    #[arg(long)]
    l: Option<usize>,
    /// Coefficients a_0, …, a_{l−1} of f, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    /// Group file or builtin name, for group-algebra.
    #[arg(long)]
    group: Option<String>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Keep checking after the first failure.
    #[arg(long)]
    full: bool,
}

#[derive(Debug, Args)]
struct EnumArgs {
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    weight: i64,
}

#[derive(Debug, Args)]
struct CheckRrbArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    full: bool,
}

#[derive(Debug, Args)]
struct AutArgs {
    #[arg(long, value_enum, default_value = "h4")]
    construction: Construction,
    #[command(flatten)]
    family: FamilyArgs,
    /// Candidate coefficients, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
}

#[derive(Debug, Args)]
struct CheckLieArgs {
    /// Lie file, or sl2, affine, abelian:N.
    #[arg(long)]
    input: String,
    /// Operator matrix: rows separated by ';', entries by ','.
    #[arg(long, allow_hyphen_values = true)]
    operator: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
    /// Search all matrices with entries from this comma separated list.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
}

#[derive(Debug, Args)]
struct CheckGroupRbArgs {
    #[arg(long)]
    group: String,
    /// Operator file, or comma separated images (indices or labels).
    #[arg(long, visible_alias = "operator")]
    map: String,
    /// Defaults to the operator file's weight, else 1.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<i64>,
}

struct Globals {
    field: Option<FieldCtx>,
    cap: Option<u64>,
    full: bool,
}

impl Globals {
    fn field_or(&self, default: impl FnOnce() -> Result<FieldCtx>) -> Result<FieldCtx> {
        match &self.field {
            Some(f) => Ok(f.clone()),
            None => default(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let capped = err.chain().any(|cause| {
        matches!(cause.downcast_ref::<GroupError>(), Some(GroupError::CapExceeded { .. }))
            || matches!(cause.downcast_ref::<LieError>(), Some(LieError::TooLarge { .. }))
            || matches!(cause.downcast_ref::<HopfError>(), Some(HopfError::TooLarge { .. }))
    });
    if capped {
        3
    } else {
        2
    }
}

fn run(cli: Cli) -> Result<Status> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let full = match &cli.command {
        Command::Verify(a) => a.full,
        Command::CheckRrb(a) => a.full,
        _ => false,
    };
    let globals = Globals {
        field: cli.field.as_deref().map(input::field).transpose()?,
        cap: cli.cap,
        full,
    };
    let outcome = match &cli.command {
        Command::Verify(a) => verify(a, &globals)?,
        Command::EnumRb(a) => enum_rb(a, &globals)?,
        Command::CheckRrb(a) => check_rrb(a, &globals)?,
        Command::Aut(a) => aut(a, &globals)?,
        Command::CheckLie(a) => check_lie_cmd(a, &globals)?,
        Command::CheckGroupRb(a) => check_group_rb(a)?,
    };
    outcome.emit(cli.format, cli.out.as_deref())?;
    Ok(outcome.status)
}

fn family_params(which: Construction, args: &FamilyArgs, globals: &Globals) -> Result<FamilyParams> {
    let params = match which {
        Construction::H4 => FamilyParams::h4(&globals.field_or(|| Ok(FieldCtx::rationals()))?)?,
        Construction::Taft => {
            let m = args.m.context("taft needs --m")?;
            let ctx = globals.field_or(|| cyclotomic(m))?;
            FamilyParams::taft(m, &ctx)?
        }
        Construction::Family => {
            let m = args.m.context("family needs --m")?;
            let l = args.l.context("family needs --l")?;
            let zeta = args.zeta.as_deref().context("family needs --zeta")?;
            let order = zeta.strip_prefix("order:").map(str::parse::<usize>).transpose()?;
            let ctx = globals.field_or(|| match order {
                Some(n) => cyclotomic(n),
                None => Ok(FieldCtx::rationals()),
            })?;
            let zeta = match order {
                Some(n) => ctx.zeta(n as u32)?,
                None => ctx.parse_scalar(zeta)?,
            };
            let f = input::scalars(&ctx, args.f.as_deref().unwrap_or(""))?;
            FamilyParams::new(m, zeta, l, f)?
        }
        Construction::GroupAlgebra => bail!("group-algebra has no family parameters"),
    };
    Ok(params)
}

fn cyclotomic(n: usize) -> Result<FieldCtx> {
    if n <= 2 {
        Ok(FieldCtx::rationals())
    } else {
        Ok(FieldCtx::cyclotomic(n as u32)?)
    }
}

fn hopf_data_json(construction: &str, h: &HopfData) -> serde_json::Value {
    json!({
        "construction": construction,
        "field": h.ctx().to_string(),
        "dim": h.dim(),
        "labels": h.labels(),
    })
}

fn verify(args: &VerifyArgs, globals: &Globals) -> Result<Outcome> {
    let mut reports = Vec::new();
    let (name, h) = match args.construction {
        Construction::GroupAlgebra => {
            let spec = args.group.as_deref().context("group-algebra needs --group")?;
            let g = input::group(spec)?;
            let ctx = globals.field_or(|| Ok(FieldCtx::rationals()))?;
            ("group-algebra", group_algebra(&g, &ctx))
        }
        Construction::H4 => {
            let ctx = globals.field_or(|| Ok(FieldCtx::rationals()))?;
            ("h4", sweedler_h4(&ctx)?)
        }
        which => {
            let params = family_params(which, &args.family, globals)?;
            let hypotheses = family_hypotheses(&params);
            let passed = hypotheses.passed();
            reports.push(hypotheses);
            if !passed {
                return Ok(Outcome::new("verify", reports));
            }
            let h = family(&params, &params.ctx())?;
            reports.push(antipode_cauchy_replay(&params, &h));
            reports.push(antipode_closed_form_report(&params, &h)?);
            let name = if which == Construction::Taft { "taft" } else { "family" };
            (name, h)
        }
    };
    reports.push(check_hopf_with(&h, globals.full));
    reports.push(hopf_consequences(&h));
    if args.construction == Construction::H4 {
        reports.push(h4_antipode_report(&h));
    }
    let data = hopf_data_json(name, &h);
    let rows = vec![vec!["hopf".into(), name.into(), h.dim().to_string(), h.labels().join(",")]];
    Ok(Outcome::new("verify", reports).with_data(data, rows))
}

fn map_json(g: &GroupTable, b: &GroupMap) -> serde_json::Value {
    json!({
        "map": b.images(),
        "labels": b.images().iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
    })
}

/// Derived group, lemma and skew brace verdicts of one weight-1 operator.
fn weight_one_verdicts(g: &GroupTable, b: &GroupMap) -> Result<Vec<(&'static str, VerificationReport)>> {
    let lemmas = lemma_checks(g, b)?;
    let (derived, derived_report) = derived_group(g, b)?;
    let brace = skew_brace_check(&g.as_op(), &derived.as_op())?;
    Ok(vec![("lemmas", lemmas), ("derived_group", derived_report), ("skew_brace", brace)])
}

fn operator_verdicts(g: &GroupTable, b: &GroupMap, weight: i64) -> Result<Vec<(&'static str, VerificationReport)>> {
    match weight {
        1 => {
            let mut out = vec![("rb", check_rb(g, b, 1)?)];
            if out[0].1.passed() {
                out.extend(weight_one_verdicts(g, b)?);
            }
            Ok(out)
        }
        -1 => {
            let mut out = vec![("rb", check_rb(g, b, -1)?)];
            if out[0].1.passed() {
                out.extend(weight_one_verdicts(g, &weight_flip(b, g))?);
            }
            Ok(out)
        }
        lambda => {
            let mut out = vec![("rb", check_rb_lambda(g, b, lambda)?)];
            if out[0].1.passed() {
                let (star, star_report) = power_star(g, lambda)?;
                let (_, circ_report) = circ_from_rrb(g, &star, b)?;
                out.push(("power_star", star_report));
                out.push(("skew_brace", circ_report));
            }
            Ok(out)
        }
    }
}

fn enum_rb(args: &EnumArgs, globals: &Globals) -> Result<Outcome> {
    let g = input::group(&args.group)?;
    let ops = enumerate_rb(&g, args.weight, globals.cap.unwrap_or(DEFAULT_CAP))?;
    let mut summary = Suite::new("enum-rb-verdicts", true);
    let mut listed = Vec::with_capacity(ops.len());
    let mut rows = Vec::with_capacity(ops.len());
    for (i, b) in ops.iter().enumerate() {
        let verdicts = operator_verdicts(&g, b, args.weight)?;
        let mut entry = map_json(&g, b);
        let mut row = vec![
            "operator".to_string(),
            i.to_string(),
            b.images().iter().map(usize::to_string).collect::<Vec<_>>().join(","),
        ];
        for (key, report) in &verdicts {
            entry[*key] = json!(report.status);
            row.push(format!("{key}={}", report.status));
            let witness = report.witness.clone().map(|w| {
                let detail = format!("{}: {}", report.name, w.identity);
                Witness::at(&[i]).with_detail(detail)
            });
            summary.record(&format!("operator-{i}/{key}"), report.instances(), witness);
        }
        listed.push(entry);
        rows.push(row);
    }
    let data = json!({
        "group": g.name(),
        "order": g.order(),
        "weight": args.weight,
        "count": ops.len(),
        "operators": listed,
    });
    Ok(Outcome::new("enum-rb", vec![summary.finish()]).with_data(data, rows))
}

fn check_group_rb(args: &CheckGroupRbArgs) -> Result<Outcome> {
    let g = input::group(&args.group)?;
    let (b, file_weight) = input::group_map(&g, &args.map)?;
    let weight = args.weight.or(file_weight).unwrap_or(1);
    let reports = operator_verdicts(&g, &b, weight)?
        .into_iter()
        .map(|(_, r)| r)
        .collect();
    let data = json!({ "group": g.name(), "weight": weight, "operator": map_json(&g, &b) });
    Ok(Outcome::new("check-group-rb", reports).with_data(data, Vec::new()))
}

fn check_rrb(args: &CheckRrbArgs, globals: &Globals) -> Result<Outcome> {
    let file: RrbFile = input::read_json(&args.input)?;
    let base = args.input.parent().unwrap_or(Path::new("."));
    let data = file
        .to_data_with(|p| input::hopf(&base.join(p)).map_err(|e| RbHopfError::Malformed(format!("{e:#}"))))
        .with_context(|| format!("loading {}", args.input.display()))?;
    let report = check_rrbo_with(&data, globals.full);
    let mut reports = vec![report];
    if reports[0].passed() {
        reports.push(check_circle(&data));
        let derived = derived_hopf(&data)?;
        let mut derived_report = check_hopf_with(&derived, globals.full);
        derived_report.name = format!("derived-{}", derived_report.name);
        reports.push(derived_report);
        reports.push(check_hopf_brace(&data));
    }
    let info = json!({ "dim_h": data.h.dim(), "dim_g": data.g.dim(), "field": data.ctx().to_string() });
    Ok(Outcome::new("check-rrb", reports).with_data(info, Vec::new()))
}

fn aut(args: &AutArgs, globals: &Globals) -> Result<Outcome> {
    let params = family_params(args.construction, &args.family, globals)?;
    let ctx = params.ctx();
    let grid = input::scalars(&ctx, &args.grid)?;
    let hits = family_aut_search(&params, &grid)?;
    let mut closure = Suite::new("aut-closure", false);
    let n = hits.len();
    let mut composites = Vec::with_capacity(n * n);
    for a in &hits {
        for b in &hits {
            composites.push(compose_automorphisms(&params, a, b)?.1);
        }
    }
    closure.tuples("composition is a Hopf automorphism", &[n, n], |i| {
        let r = &composites[i[0] * n + i[1]];
        (!r.passed()).then(|| Witness::at(i).with_detail(r.failed_identity.clone().unwrap_or_default()))
    });
    let listed: Vec<_> = hits
        .iter()
        .map(|h| json!({ "k": h.k, "c": h.c.iter().map(ToString::to_string).collect::<Vec<_>>() }))
        .collect();
    let rows = hits
        .iter()
        .map(|h| {
            let c = h.c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            vec!["hit".to_string(), h.k.to_string(), c]
        })
        .collect();
    let data = json!({ "field": ctx.to_string(), "grid_size": grid.len(), "hits": listed });
    Ok(Outcome::new("aut", vec![closure.finish()]).with_data(data, rows))
}

fn check_lie_cmd(args: &CheckLieArgs, globals: &Globals) -> Result<Outcome> {
    let ctx = globals.field_or(|| Ok(FieldCtx::rationals()))?;
    let l = input::lie(&args.input, &ctx)?;
    let ctx = l.ctx().clone();
    let lambda = ctx.parse_scalar(&args.lambda)?;
    let mut reports = vec![check_lie(&l)];
    if let Some(op) = &args.operator {
        let b = input::matrix(&ctx, op, l.dim())?;
        reports.push(check_rb_lie_weight(&l, &b, &lambda));
    }
    let mut data = json!({ "dim": l.dim(), "labels": l.labels(), "lambda": lambda.to_string() });
    let mut rows = Vec::new();
    if let Some(grid) = &args.grid {
        let grid = input::scalars(&ctx, grid)?;
        let hits = rb_lie_grid_search(&l, &lambda, &grid, globals.cap.unwrap_or(DEFAULT_GRID_CAP))?;
        let matrices: Vec<Vec<Vec<String>>> = hits
            .iter()
            .map(|b| b.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect())
            .collect();
        for m in &matrices {
            let text = m.iter().map(|r| r.join(",")).collect::<Vec<_>>().join(";");
            rows.push(vec!["operator".to_string(), text]);
        }
        data["operators"] = json!(matrices);
    }
    Ok(Outcome::new("check-lie", reports).with_data(data, rows))
}
