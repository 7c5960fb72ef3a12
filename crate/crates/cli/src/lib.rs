//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards process arguments and streams.

use std::io::Write;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bnchain::bn::{eh_dimension, eh_exists, rho};
use bnchain::chain::{decide, search, Outcome};
use bnchain::elliptic::pair_exact_exists;
use bnchain::loci::{
    existence_range, existence_range_sk, nonexistence_threshold, relation_report,
    render_tables_csv, render_tables_md, union_statement, Membership, TorsionSet,
};
use bnchain::oracle::{exact_pair_oracle, make_curve, realize, verify_dim_table};
use bnchain::{ChainSpec, Criterion, GrdParams, LimitWitness, Mode, SearchOptions, TcbeFamily, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bnchain", version, about = "Limit linear series on elliptic chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brill-Noether number rho(g, r, d)
    Rho(GrdArgs),
    /// Eisenbud-Harris test for a general pointed curve
    Eh(EhArgs),
    /// Torsion thresholds and existence ranges
    Bounds(BoundsArgs),
    /// Decide whether a chain carries a limit g^r_d
    Search(SearchArgs),
    /// Search every two-bridge instance with rho in {-1, -2} up to a genus
    Sweep(SweepArgs),
    /// Existence ranges and thresholds for the loci of one genus
    Table34(TableArgs),
    /// Inclusion and exclusion statements between chain families and loci
    Relations(RelationsArgs),
    /// Cross-check the elliptic model on an explicit curve
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct GrdArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    d: u32,
}

#[derive(Args, Debug)]
struct EhArgs {
    #[command(flatten)]
    grd: GrdArgs,
    /// Ramification sequence, comma separated
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
    Md,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    grd: GrdArgs,
    #[arg(long)]
    g1: u32,
    #[arg(long)]
    g2: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Crude,
    Refined,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum CriterionArg {
    Sufficient,
    Necessary,
    Both,
}

#[derive(Args, Debug)]
struct Limits {
    /// Threads for the search; results do not depend on it
    #[arg(long)]
    jobs: Option<usize>,
    /// Maximum vanishing sequences per node
    #[arg(long, default_value_t = SearchOptions::default().candidate_cap)]
    candidate_cap: usize,
    /// Wall-clock limit in seconds
    #[arg(long)]
    time_budget: Option<f64>,
    /// Largest node slack explored in crude mode (default d)
    #[arg(long)]
    slack_cap: Option<u32>,
    /// Run the crude necessary search without the refined reduction
    #[arg(long)]
    unreduced: bool,
}

impl Limits {
    fn options(&self) -> Result<SearchOptions> {
        let time_budget = match self.time_budget {
            Some(s) if !(s >= 0.0 && s.is_finite()) => bail!("--time-budget must be a non-negative number"),
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        if self.jobs == Some(0) {
            bail!("--jobs must be at least 1");
        }
        Ok(SearchOptions {
            slack_cap: self.slack_cap,
            candidate_cap: self.candidate_cap,
            time_budget,
            jobs: self.jobs,
            unreduced: self.unreduced,
        })
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Chain as `tail:<g>,ell:<t>,...,tail:<g>`
    #[arg(long, conflicts_with = "tcbe", required_unless_present = "tcbe")]
    chain: Option<String>,
    /// Chain as `g1=..,g2=..,t=..[,n=..]` (n defaults to 2)
    #[arg(long)]
    tcbe: Option<String>,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    d: u32,
    #[arg(long, value_enum, default_value = "crude")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "both")]
    criterion: CriterionArg,
    #[command(flatten)]
    limits: Limits,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Largest genus g = g1 + g2 + 2
    #[arg(long)]
    g_max: u32,
    #[arg(long, default_value_t = 6)]
    g_min: u32,
    #[arg(long, default_value_t = 2)]
    r_max: u32,
    /// Largest torsion order (default 2g)
    #[arg(long)]
    t_max: Option<u32>,
    #[arg(long, value_enum, default_value = "crude")]
    mode: ModeArg,
    #[command(flatten)]
    limits: Limits,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, default_value_t = 34)]
    g: u32,
    /// Splits `g1,g2`; defaults to the two most balanced ones
    #[arg(long)]
    split: Vec<String>,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
}

#[derive(Args, Debug)]
struct RelationsArgs {
    #[arg(long)]
    g: u32,
    #[arg(long, requires = "g2")]
    g1: Option<u32>,
    #[arg(long, requires = "g1")]
    g2: Option<u32>,
    /// Families `g1,g2,t` pooled into one union statement
    #[arg(long)]
    member: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Torsion order of the marked point (at least 3)
    #[arg(long)]
    t: u32,
    #[arg(long)]
    d: u32,
    /// Class k; all of Z/t when omitted
    #[arg(long)]
    k: Option<u32>,
    /// Vanishing sequence at P to realize, comma separated
    #[arg(long, value_delimiter = ',', requires_all = ["at_o", "k"])]
    realize: Vec<u32>,
    /// Vanishing sequence at O for --realize
    #[arg(long, value_delimiter = ',')]
    at_o: Vec<u32>,
    /// Candidate (p, A, B) triples examined when looking for a curve
    #[arg(long, default_value_t = 200_000)]
    budget: usize,
}

/// Parses `tail:<g>,ell:<t>,...,tail:<g>` or the shorthand
/// `g1=..,g2=..,t=..[,n=..]`, optionally prefixed by `--tcbe`.
pub fn parse_chain(spec: &str) -> Result<ChainSpec> {
    let spec = spec.trim();
    let spec = spec.strip_prefix("--tcbe").map(str::trim).unwrap_or(spec);
    let spec = spec.strip_prefix('=').unwrap_or(spec);
    if !spec.contains('=') {
        return spec.parse().map_err(|e| anyhow!("{e}"));
    }
    let (mut g1, mut g2, mut n, mut t) = (None, None, 2usize, None);
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value, got {part:?}"))?;
        let value: u32 = value
            .trim()
            .parse()
            .with_context(|| format!("bad number in {part:?}"))?;
        match key.trim() {
            "g1" => g1 = Some(value),
            "g2" => g2 = Some(value),
            "n" => n = value as usize,
            "t" => t = Some(value),
            other => bail!("unknown key {other:?}"),
        }
    }
    let need = |v: Option<u32>, k: &str| v.ok_or_else(|| anyhow!("missing {k}="));
    ChainSpec::tcbe(need(g1, "g1")?, need(g2, "g2")?, n, need(t, "t")?).map_err(|e| anyhow!("{e}"))
}

fn parse_triple(s: &str) -> Result<(u32, u32, u32)> {
    let v: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("bad member {s:?}"))?;
    match v[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => bail!("expected g1,g2,t, got {s:?}"),
    }
}

fn parse_split(s: &str) -> Result<(u32, u32)> {
    match s.split_once(',') {
        Some((a, b)) => Ok((
            a.trim().parse().with_context(|| format!("bad split {s:?}"))?,
            b.trim().parse().with_context(|| format!("bad split {s:?}"))?,
        )),
        None => bail!("expected g1,g2, got {s:?}"),
    }
}

fn mode_of(m: ModeArg) -> Mode {
    match m {
        ModeArg::Crude => Mode::Crude,
        ModeArg::Refined => Mode::Refined,
    }
}

fn seq_text(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn range_json(s: &TorsionSet) -> Value {
    json!({
        "min": s.min(),
        "max": s.max(),
        "parity": match s.parity { None => "any", Some(0) => "even", Some(_) => "odd" },
        "text": s.to_string(),
    })
}

/// Runs the program on `args` (including the program name) and returns
/// the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Rho(a) => {
            GrdParams::new(a.g, a.r, a.d)?;
            writeln!(out, "{}", rho(a.g, a.r, a.d))?;
            Ok(EXIT_OK)
        }
        Command::Eh(a) => cmd_eh(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Search(a) => cmd_search(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Table34(a) => cmd_table(a, out),
        Command::Relations(a) => cmd_relations(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
    }
}

fn cmd_eh(a: EhArgs, out: &mut dyn Write) -> Result<i32> {
    let GrdArgs { g, r, d } = a.grd;
    let alpha = if a.alpha.is_empty() {
        vec![0; r as usize + 1]
    } else {
        a.alpha
    };
    let exists = eh_exists(g, r, d, &alpha)?;
    let dim = eh_dimension(g, r, d, &alpha)?;
    writeln!(out, "exists: {exists}")?;
    writeln!(out, "adjusted rho: {dim}")?;
    Ok(EXIT_OK)
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let GrdArgs { g, r, d } = a.grd;
    let rho_v = rho(g, r, d);
    let range = existence_range(g, r, d, a.g1, a.g2).ok();
    let threshold = nonexistence_threshold(g, r, d, a.g1, a.g2)?;
    let older = existence_range_sk(g, r, d, a.g1, a.g2).ok();
    match a.format {
        Format::Json => {
            let v = json!({
                "g": g, "r": r, "d": d, "rho": rho_v, "g1": a.g1, "g2": a.g2,
                "existence_range": range.as_ref().map(range_json),
                "older_existence_range": older.as_ref().map(range_json),
                "nonexistence_threshold": threshold,
                "threshold_valid_from": 4,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Text => {
            writeln!(out, "rho: {rho_v}")?;
            match range {
                Some(s) if s.is_empty() => writeln!(out, "existence range: none")?,
                Some(s) if s.parity.is_some() => writeln!(out, "existence range: {s}")?,
                Some(s) => writeln!(out, "existence range: [{}, {}]", s.lo, s.hi)?,
                None => writeln!(out, "existence range: not covered (rho not in {{-1, -2}})")?,
            }
            writeln!(out, "nonexistence threshold: {threshold} (for t >= 4)")?;
            if let Some(s) = older {
                writeln!(out, "older existence range: {s}")?;
            }
        }
        other => bail!("format {other:?} is not available for bounds"),
    }
    Ok(EXIT_OK)
}

fn verdict_json(chain: &ChainSpec, p: &GrdParams, v: &Verdict) -> Value {
    let (reason, witness): (Option<&str>, Option<&LimitWitness>) = match &v.outcome {
        Outcome::Exists(w) => (None, Some(w)),
        Outcome::NotExists => (None, None),
        Outcome::Undetermined { reason, candidate } => (Some(reason), candidate.as_ref()),
    };
    json!({
        "chain": chain.render(),
        "g": p.g, "r": p.r, "d": p.d, "rho": p.rho(),
        "mode": v.mode.to_string(),
        "criterion": v.criterion.to_string(),
        "verdict": v.label(),
        "reason": reason,
        "witness": witness.map(|w| serde_json::to_value(w.document()).expect("plain data")),
    })
}

fn write_verdict_text(out: &mut dyn Write, chain: &ChainSpec, p: &GrdParams, v: &Verdict) -> Result<()> {
    writeln!(out, "chain: {}", chain.render())?;
    writeln!(out, "series: g^{}_{} (g = {}, rho = {})", p.r, p.d, p.g, p.rho())?;
    writeln!(out, "mode: {}", v.mode)?;
    writeln!(out, "criterion: {}", v.criterion)?;
    writeln!(out, "verdict: {}", v.label())?;
    let witness = match &v.outcome {
        Outcome::Exists(w) => Some(("witness", w)),
        Outcome::Undetermined { reason, candidate } => {
            writeln!(out, "reason: {reason}")?;
            candidate.as_ref().map(|w| ("candidate", w))
        }
        Outcome::NotExists => None,
    };
    if let Some((label, w)) = witness {
        writeln!(out, "{label}:")?;
        let (g1, g2) = w.chain.tail_genera();
        writeln!(out, "  tail genus {g1}: {}", seq_text(w.tail_left.values()))?;
        for b in &w.bridges {
            writeln!(
                out,
                "  bridge t={} k={}: {} | {}",
                b.t,
                b.k,
                seq_text(b.seq_left.values()),
                seq_text(b.seq_right.values())
            )?;
        }
        writeln!(out, "  tail genus {g2}: {}", seq_text(w.tail_right.values()))?;
        let s = w.document().stats;
        writeln!(out, "  eta: {:?}", s.eta)?;
        writeln!(out, "  nu: {:?}", s.nu)?;
        writeln!(out, "  m: {:?}, gamma: {:?}", s.m, s.gamma)?;
    }
    Ok(())
}

fn run_search(chain: &ChainSpec, p: &GrdParams, mode: Mode, c: CriterionArg, o: &SearchOptions) -> Result<Verdict> {
    Ok(match c {
        CriterionArg::Sufficient => search(chain, p, mode, Criterion::Sufficient, o)?,
        CriterionArg::Necessary => search(chain, p, mode, Criterion::Necessary, o)?,
        CriterionArg::Both => decide(chain, p, mode, o)?,
    })
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let chain = match (&a.chain, &a.tcbe) {
        (Some(c), None) => parse_chain(c)?,
        (None, Some(t)) => parse_chain(t)?,
        _ => bail!("give exactly one of --chain and --tcbe"),
    };
    let p = GrdParams::new(chain.genus(), a.r, a.d)?;
    let opts = a.limits.options()?;
    let start = Instant::now();
    let v = run_search(&chain, &p, mode_of(a.mode), a.criterion, &opts)?;
    writeln!(err, "elapsed: {:.3} s", start.elapsed().as_secs_f64())?;
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&verdict_json(&chain, &p, &v))?)?,
        Format::Text => write_verdict_text(out, &chain, &p, &v)?,
        other => bail!("format {other:?} is not available for search"),
    }
    Ok(if matches!(v.outcome, Outcome::Undetermined { .. }) {
        EXIT_UNDETERMINED
    } else {
        EXIT_OK
    })
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let opts = a.limits.options()?;
    let mode = mode_of(a.mode);
    let start = Instant::now();
    let mut rows = Vec::new();
    for g in a.g_min.max(6)..=a.g_max {
        for g2 in 2..=(g - 2) / 2 {
            let g1 = g - 2 - g2;
            for r in 1..=a.r_max {
                for d in r..g {
                    let rho_v = rho(g, r, d);
                    if rho_v != -1 && rho_v != -2 {
                        continue;
                    }
                    let p = GrdParams::new(g, r, d)?;
                    let th = nonexistence_threshold(g, r, d, g1, g2)?;
                    let range = existence_range(g, r, d, g1, g2)?;
                    for t in 2..=a.t_max.unwrap_or(2 * g) {
                        let chain = ChainSpec::tcbe(g1, g2, 2, t)?;
                        let v = decide(&chain, &p, mode, &opts)?;
                        rows.push((g, g1, g2, r, d, rho_v, t, th, range.contains(t), v.label()));
                    }
                }
            }
        }
    }
    writeln!(err, "elapsed: {:.3} s", start.elapsed().as_secs_f64())?;
    match a.format {
        Format::Csv | Format::Text => {
            writeln!(out, "g,g1,g2,r,d,rho,t,threshold,in_existence_range,verdict")?;
            for (g, g1, g2, r, d, rho_v, t, th, inr, v) in &rows {
                writeln!(out, "{g},{g1},{g2},{r},{d},{rho_v},{t},{th},{inr},{v}")?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(g, g1, g2, r, d, rho_v, t, th, inr, v)| {
                    json!({"g": g, "g1": g1, "g2": g2, "r": r, "d": d, "rho": rho_v, "t": t,
                           "threshold": th, "in_existence_range": inr, "verdict": v})
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Md => bail!("format md is not available for sweep"),
    }
    Ok(EXIT_OK)
}

fn default_splits(g: u32) -> Vec<(u32, u32)> {
    let h = g.saturating_sub(2);
    let (a, b) = (h - h / 2, h / 2);
    let mut v = vec![(a, b)];
    if b > 2 {
        v.push((a + 1, b - 1));
    }
    v
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<i32> {
    if a.g < 6 {
        bail!("genus must be at least 6");
    }
    let splits = if a.split.is_empty() {
        default_splits(a.g)
    } else {
        a.split.iter().map(|s| parse_split(s)).collect::<Result<_>>()?
    };
    let text = match a.format {
        Format::Md => render_tables_md(a.g, &splits)?,
        Format::Csv => render_tables_csv(a.g, &splits)?,
        other => bail!("format {other:?} is not available for table34"),
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_relations(a: RelationsArgs, out: &mut dyn Write) -> Result<i32> {
    if !a.member.is_empty() {
        if a.g1.is_some() {
            bail!("--member cannot be combined with --g1/--g2");
        }
        let members = a
            .member
            .iter()
            .map(|m| {
                let (g1, g2, t) = parse_triple(m)?;
                Ok(TcbeFamily::new(g1, g2, t)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let st = union_statement(a.g, &members)?;
        match a.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&json!({
                "statement": st.as_ref().map(|s| s.to_string()),
                "detail": st,
            }))?)?,
            Format::Text => match st {
                Some(s) => writeln!(out, "{s}")?,
                None => writeln!(out, "no locus contains every member")?,
            },
            other => bail!("format {other:?} is not available for relations"),
        }
        return Ok(EXIT_OK);
    }
    let (g1, g2) = match (a.g1, a.g2) {
        (Some(x), Some(y)) => (x, y),
        _ => bail!("give --g1 and --g2, or one or more --member"),
    };
    let rep = relation_report(a.g, g1, g2)?;
    match a.format {
        Format::Json => {
            let statements: Vec<String> = rep.statements.iter().map(|s| s.to_string()).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({
                "report": rep,
                "statements_text": statements,
            }))?)?;
        }
        Format::Text => {
            writeln!(out, "genus {} at (g1,g2) = ({g1},{g2})", a.g)?;
            writeln!(out)?;
            let names: Vec<String> = rep.loci.iter().map(|l| l.to_string()).collect();
            let width = names.iter().map(|n| n.chars().count()).max().unwrap_or(3);
            let mut line = format!("{:>3}", "t");
            for n in &names {
                line.push_str(&format!("  {n:<width$}"));
            }
            writeln!(out, "{}", line.trim_end())?;
            for row in &rep.rows {
                let mut line = format!("{:>3}", row.t);
                for m in &row.marks {
                    let s = match m {
                        Membership::In => "IN",
                        Membership::Out => "OUT",
                        Membership::Gap => "-",
                    };
                    line.push_str(&format!("  {s:<width$}"));
                }
                writeln!(out, "{}", line.trim_end())?;
            }
            writeln!(out)?;
            for s in &rep.statements {
                writeln!(out, "{s}")?;
            }
        }
        other => bail!("format {other:?} is not available for relations"),
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(a: OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let curve = make_curve(a.t, a.budget)?;
    writeln!(
        out,
        "curve: y^2 = x^3 + {}x + {} over F_{}, P = ({}, {}) of order {}, #E = {}",
        curve.a, curve.b, curve.p, curve.point.0, curve.point.1, curve.t, curve.group_order
    )?;
    if !a.realize.is_empty() {
        let k = a.k.expect("enforced by clap");
        if k >= a.t {
            bail!("k must be below t");
        }
        return match realize(&curve, a.d, k, &a.realize, &a.at_o) {
            Some(rz) => {
                writeln!(out, "realized: sequence at P {}, at O {}", seq_text(&rz.seq_at_p), seq_text(&rz.seq_at_o))?;
                Ok(EXIT_OK)
            }
            None => {
                writeln!(out, "not realized")?;
                Ok(EXIT_UNDETERMINED)
            }
        };
    }
    let ks: Vec<u32> = match a.k {
        Some(k) if k >= a.t => bail!("k must be below t"),
        Some(k) => vec![k],
        None => (0..a.t).collect(),
    };
    let mut clean = true;
    for k in ks {
        let table = verify_dim_table(&curve, a.d, k);
        let mut disagree = 0;
        for alpha in 0..=a.d {
            for beta in 0..=a.d {
                if exact_pair_oracle(&curve, a.d, k, alpha, beta) != pair_exact_exists(alpha, beta, k, a.t, a.d) {
                    disagree += 1;
                }
            }
        }
        clean &= table && disagree == 0;
        writeln!(
            out,
            "k={k}: dimension table {}, exact pairs {} disagreements",
            if table { "ok" } else { "MISMATCH" },
            disagree
        )?;
    }
    Ok(if clean { EXIT_OK } else { EXIT_ERROR })
}
