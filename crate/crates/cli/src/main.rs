mod config;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eschenburg::action::{isotropy_oracle, singular_locus, torus_quotient_locus, Target};
use eschenburg::construct::{
    alpha_table, build_action, minimal_3lens_action, one_point_decision, search_minimal, Provenance, Witness,
};
use eschenburg::enumerate::{brute_box_oracle, scan, OnePointMode, RecordFilter, ScanOptions, Totals};
use eschenburg::lattice::{distinct_s_count, kappa, lattice_points_oracle, minor_gcd, IntVec};
use eschenburg::render::{ascii_hexagon, to_dot};
use eschenburg::space::{
    detect_family, effective_kernel, invariant_h, is_manifold, is_orbifold, is_positively_curved,
    is_positively_curved_alt, manifold_failure, self_singular_locus, signed_h, SelfSingularData,
};
use eschenburg::{ActionSpec, Convention, FamilyTag, Int, IsotropyProfile, Perm3, SingularLocus, WeightPair};
use serde::Serialize;

use config::Config;

/// Isotropy, singular loci and circle actions on Eschenburg spaces.
#[derive(Parser)]
#[command(name = "eschenburg", version, about)]
struct Cli {
    /// TOML file with defaults (threads, convention, one_point, batch_units, checkpoint).
    #[arg(long, global = true, env = "ESCHENBURG_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a space, and the quotient by an action if one is given.
    Analyze(AnalyzeArgs),
    /// Build an action with a small singular locus.
    Construct(ConstructArgs),
    /// The table of α residues and the vanishing predicate.
    Alpha(SpaceArgs),
    /// Decide whether some constructed action has exactly one singular point.
    OnePoint(SpaceArgs),
    /// Rank actions of the construction family and a window of small actions.
    Search(SearchArgs),
    /// Enumerate positively curved manifolds by h.
    Scan(ScanArgs),
    /// Run the built-in verification corpus.
    Verify(VerifyArgs),
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Write the singular locus of an action as a Graphviz graph.
    ExportDot(ExportDotArgs),
}

fn parse_triple(s: &str) -> Result<[Int; 3], String> {
    let v = parse_vec(s)?;
    v.try_into().map_err(|v: Vec<Int>| format!("expected 3 entries, got {}", v.len()))
}

fn parse_pair(s: &str) -> Result<[Int; 2], String> {
    let v = parse_vec(s)?;
    v.try_into().map_err(|v: Vec<Int>| format!("expected 2 entries, got {}", v.len()))
}

/// Comma-separated integers of any length.
#[derive(Clone, Debug)]
struct IntList(Vec<Int>);

fn parse_list(s: &str) -> Result<IntList, String> {
    parse_vec(s).map(IntList)
}

fn parse_vec(s: &str) -> Result<Vec<Int>, String> {
    s.split(',').map(|x| x.trim().parse::<Int>().map_err(|e| format!("bad integer '{}': {e}", x.trim()))).collect()
}

#[derive(Args, Clone)]
struct SpaceArgs {
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    p: [Int; 3],
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    q: [Int; 3],
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

impl SpaceArgs {
    fn space(&self) -> Result<WeightPair> {
        Ok(WeightPair::new(self.p, self.q)?)
    }
}

#[derive(Args)]
struct ActionArgs {
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, requires = "b")]
    a: Option<[Int; 3]>,
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, requires = "a")]
    b: Option<[Int; 3]>,
}

impl ActionArgs {
    fn action(&self) -> Result<Option<ActionSpec>> {
        match (self.a, self.b) {
            (Some(a), Some(b)) => Ok(Some(ActionSpec::new(a, b)?)),
            _ => Ok(None),
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[command(flatten)]
    action: ActionArgs,
    /// Also write the circle-view locus as DOT to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Vertex permutation in cycle notation, e.g. "(13)"; without it the
    /// best 3-lens action is chosen.
    #[arg(long, requires_all = ["eps", "s"])]
    sigma: Option<Perm3>,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    eps: Option<[Int; 2]>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<Int>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    s_min: Int,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    s_max: Int,
    /// Also try every action with entries in [-window, window].
    #[arg(long, default_value_t = 1)]
    window: Int,
    /// Number of actions to print.
    #[arg(long, default_value_t = 10)]
    limit: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnePointArg {
    Off,
    AlphaVanishing,
    All,
}

impl From<OnePointArg> for OnePointMode {
    fn from(a: OnePointArg) -> Self {
        match a {
            OnePointArg::Off => OnePointMode::Off,
            OnePointArg::AlphaVanishing => OnePointMode::AlphaVanishing,
            OnePointArg::All => OnePointMode::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    AlphaVanishing,
    FreeFamily,
    OnePoint,
}

impl From<FilterArg> for RecordFilter {
    fn from(a: FilterArg) -> Self {
        match a {
            FilterArg::All => RecordFilter::All,
            FilterArg::AlphaVanishing => RecordFilter::AlphaVanishing,
            FilterArg::FreeFamily => RecordFilter::FreeFamily,
            FilterArg::OnePoint => RecordFilter::OnePoint,
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    hmax: u64,
    #[arg(long, env = "ESCHENBURG_THREADS")]
    threads: Option<usize>,
    /// identified | distinct
    #[arg(long)]
    convention: Option<Convention>,
    /// Also report both conventions (the distinct count is derived, not rescanned).
    #[arg(long)]
    both_conventions: bool,
    #[arg(long, value_enum)]
    one_point: Option<OnePointArg>,
    /// JSON-Lines record output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    filter: FilterArg,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Write the full summary (with timing) to this file.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    batch_units: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Exit 1 if an item expected to match does not.
    #[arg(long)]
    strict: bool,
    /// Use this corpus instead of the built-in one.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Count lattice points of the parallelogram spanned by v and w.
    Lattice {
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        v: IntList,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        w: IntList,
        #[arg(long)]
        json: bool,
    },
    /// Isotropy orders by lattice-point counting, next to the closed forms.
    Isotropy {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        action: ActionArgs,
    },
    /// Positively curved manifolds with h <= hmax from a box search.
    Box {
        #[arg(long)]
        hmax: u64,
        #[arg(long)]
        convention: Option<Convention>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ExportDotArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[command(flatten)]
    action: ActionArgs,
    /// Use the torus-quotient orders.
    #[arg(long)]
    torus: bool,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command that ran without error.
enum Outcome {
    Done,
    NoResult,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NoResult) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Construct(a) => construct(a),
        Command::Alpha(a) => alpha(a),
        Command::OnePoint(a) => one_point(a),
        Command::Search(a) => search(a),
        Command::Scan(a) => run_scan(a, &cfg),
        Command::Verify(a) => run_verify(a),
        Command::Oracle(o) => oracle(o, &cfg),
        Command::ExportDot(a) => export_dot(a),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

// ---------------------------------------------------------------------------
// analyze

#[derive(Serialize)]
struct SpaceReport {
    p: [Int; 3],
    q: [Int; 3],
    h: u64,
    signed_h: i128,
    orbifold: bool,
    manifold: bool,
    manifold_failure: Option<Perm3>,
    positively_curved: bool,
    positively_curved_alt: bool,
    effective_kernel: u64,
    families: Vec<FamilyTag>,
    self_locus: Option<SelfSingularData>,
}

#[derive(Serialize)]
struct ActionReport {
    a: [Int; 3],
    b: [Int; 3],
    profile: IsotropyProfile,
    locus: Option<SingularLocus>,
    locus_error: Option<String>,
    torus_locus: Option<SingularLocus>,
    torus_error: Option<String>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    space: SpaceReport,
    action: Option<ActionReport>,
}

fn space_report(wp: &WeightPair) -> Result<SpaceReport> {
    let orbifold = is_orbifold(wp);
    Ok(SpaceReport {
        p: wp.p(),
        q: wp.q(),
        h: invariant_h(wp),
        signed_h: signed_h(wp, Perm3::ID, Perm3::ID),
        orbifold,
        manifold: is_manifold(wp),
        manifold_failure: manifold_failure(wp),
        positively_curved: is_positively_curved(wp),
        positively_curved_alt: is_positively_curved_alt(wp),
        effective_kernel: effective_kernel(wp).0,
        families: detect_family(wp),
        self_locus: if orbifold { Some(self_singular_locus(wp)?) } else { None },
    })
}

fn action_report(wp: &WeightPair, act: &ActionSpec) -> Result<ActionReport> {
    let profile = IsotropyProfile::compute(wp, act)?;
    let (locus, locus_error) = split(singular_locus(wp, act));
    let (torus_locus, torus_error) = split(torus_quotient_locus(wp, act));
    Ok(ActionReport { a: act.a(), b: act.b(), profile, locus, locus_error, torus_locus, torus_error })
}

fn split<T>(r: eschenburg::Result<T>) -> (Option<T>, Option<String>) {
    match r {
        Ok(x) => (Some(x), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn space_text(r: &SpaceReport) -> String {
    let mut out = String::new();
    writeln!(out, "E_{{p,q}}  p = {:?}  q = {:?}", r.p, r.q).unwrap();
    writeln!(out, "  h = {}  (signed {})", r.h, r.signed_h).unwrap();
    writeln!(out, "  orbifold: {}", yes(r.orbifold)).unwrap();
    match r.manifold_failure {
        None => writeln!(out, "  manifold: {}", yes(r.manifold)).unwrap(),
        Some(s) => writeln!(out, "  manifold: no (fails at {s})").unwrap(),
    }
    writeln!(out, "  positively curved: {}", yes(r.positively_curved)).unwrap();
    if r.positively_curved != r.positively_curved_alt {
        writeln!(out, "  warning: the two curvature tests disagree").unwrap();
    }
    if r.effective_kernel > 1 {
        writeln!(out, "  ineffective kernel of the defining circle: Z{}", r.effective_kernel).unwrap();
    }
    let fams: Vec<String> = r.families.iter().map(|f| f.to_string()).collect();
    writeln!(out, "  families: {}", if fams.is_empty() { "none".to_string() } else { fams.join(", ") }).unwrap();
    if let Some(sl) = &r.self_locus {
        let circles: Vec<String> = sl.singular_circles().map(|c| format!("C{} Z{}", c.sigma, c.order)).collect();
        let faces: Vec<String> =
            sl.singular_faces().map(|f| format!("L{}{} Z{}", f.face.0, f.face.1, f.order)).collect();
        if circles.is_empty() && faces.is_empty() {
            writeln!(out, "  singular set of E: empty").unwrap();
        } else {
            writeln!(
                out,
                "  singular circles of E: {}",
                if circles.is_empty() { "none".into() } else { circles.join(", ") }
            )
            .unwrap();
            writeln!(
                out,
                "  singular lens spaces of E: {}",
                if faces.is_empty() { "none".into() } else { faces.join(", ") }
            )
            .unwrap();
        }
    }
    out
}

fn locus_text(title: &str, l: &SingularLocus) -> String {
    let mut out = String::new();
    writeln!(out, "{title} (kernel Z{})", l.kernel).unwrap();
    out.push_str(&ascii_hexagon(l));
    let s = &l.summary;
    writeln!(
        out,
        "  {} singular faces, {} singular vertices, max order {}",
        s.singular_faces, s.singular_vertices, s.max_order
    )
    .unwrap();
    out
}

fn analyze(args: AnalyzeArgs) -> Result<Outcome> {
    let wp = args.space.space()?;
    let space = space_report(&wp)?;
    let action = match args.action.action()? {
        Some(act) => Some(action_report(&wp, &act)?),
        None => None,
    };
    if let Some(path) = &args.dot {
        let Some(l) = action.as_ref().and_then(|a| a.locus.as_ref().or(a.torus_locus.as_ref())) else {
            bail!("--dot needs an action with a computable locus");
        };
        std::fs::write(path, to_dot(l, &format!("E {:?} {:?}", wp.p(), wp.q())))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let report = AnalyzeReport { space, action };
    if args.space.json {
        print_json(&report)?;
        return Ok(Outcome::Done);
    }
    print!("{}", space_text(&report.space));
    if let Some(a) = &report.action {
        println!("\naction a = {:?}  b = {:?}", a.a, a.b);
        match (&a.locus, &a.locus_error) {
            (Some(l), _) => print!("{}", locus_text("circle quotient", l)),
            (None, Some(e)) => println!("circle quotient: {e}"),
            _ => {}
        }
        match (&a.torus_locus, &a.torus_error) {
            (Some(l), _) => print!("{}", locus_text("torus quotient", l)),
            (None, Some(e)) => println!("torus quotient: {e}"),
            _ => {}
        }
    }
    Ok(Outcome::Done)
}

// ---------------------------------------------------------------------------
// construct / alpha / one-point / search

#[derive(Serialize)]
struct ConstructReport {
    witness: Witness,
    locus: SingularLocus,
}

fn construct(args: ConstructArgs) -> Result<Outcome> {
    let wp = args.space.space()?;
    let (witness, locus) = match args.sigma {
        Some(sigma) => {
            let [e1, e2] = args.eps.context("--eps is required with --sigma")?;
            if e1.abs() != 1 || e2.abs() != 1 {
                bail!("--eps entries must be 1 or -1");
            }
            let s = args.s.context("--s is required with --sigma")?;
            let act = build_action(&wp, sigma, (e1, e2), s)?;
            let locus = singular_locus(&wp, &act)?;
            (Witness::new(&act, Some(Provenance { sigma, eps: [e1, e2], s })), locus)
        }
        None => {
            let c = minimal_3lens_action(&wp)?;
            (c.witness(), c.locus)
        }
    };
    if let Some(path) = &args.dot {
        std::fs::write(path, to_dot(&locus, &format!("a={:?} b={:?}", witness.a, witness.b)))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if args.space.json {
        print_json(&ConstructReport { witness, locus })?;
    } else {
        println!("{}", serde_json::to_string(&witness)?);
        print!("{}", locus_text("circle quotient", &locus));
    }
    Ok(Outcome::Done)
}

#[derive(Serialize)]
struct AlphaRow {
    sigma: Perm3,
    eps: [Int; 2],
    alpha: u64,
}

#[derive(Serialize)]
struct AlphaReport {
    h: u64,
    predicate: bool,
    rows: Vec<AlphaRow>,
}

fn alpha(args: SpaceArgs) -> Result<Outcome> {
    let wp = args.space()?;
    let t = alpha_table(&wp)?;
    let report = AlphaReport {
        h: t.h,
        predicate: t.any_vanishing(),
        rows: t.rows().map(|(sigma, (e1, e2), alpha)| AlphaRow { sigma, eps: [e1, e2], alpha }).collect(),
    };
    if args.json {
        print_json(&report)?;
    } else {
        println!("h = {}", report.h);
        println!("{:<7}{:>4}{:>4}  alpha", "sigma", "e1", "e2");
        for r in &report.rows {
            let mark = if r.alpha == 0 { "  <- vanishes" } else { "" };
            println!("{:<7}{:>4}{:>4}  {}{mark}", r.sigma.to_string(), r.eps[0], r.eps[1], r.alpha);
        }
        println!("predicate: {}", report.predicate);
    }
    Ok(Outcome::Done)
}

fn one_point(args: SpaceArgs) -> Result<Outcome> {
    let wp = args.space()?;
    let found = one_point_decision(&wp)?;
    if args.json {
        #[derive(Serialize)]
        struct R {
            one_point: bool,
            witness: Option<Witness>,
        }
        print_json(&R { one_point: found.is_some(), witness: found.as_ref().map(|c| c.witness()) })?;
    } else {
        match &found {
            None => println!("none"),
            Some(c) => {
                println!("{}", serde_json::to_string(&c.witness())?);
                print!("{}", locus_text("circle quotient", &c.locus));
            }
        }
    }
    Ok(if found.is_some() { Outcome::Done } else { Outcome::NoResult })
}

fn search(args: SearchArgs) -> Result<Outcome> {
    let wp = args.space.space()?;
    if args.s_min > args.s_max {
        bail!("--s-min must not exceed --s-max");
    }
    let found = search_minimal(&wp, args.s_min..=args.s_max, args.window)?;
    let top: Vec<ConstructReport> =
        found.into_iter().take(args.limit).map(|c| ConstructReport { witness: c.witness(), locus: c.locus }).collect();
    if args.space.json {
        print_json(&top)?;
    } else {
        for (k, c) in top.iter().enumerate() {
            let s = &c.locus.summary;
            println!(
                "{:>3}. {}  faces {} vertices {} max {}",
                k + 1,
                serde_json::to_string(&c.witness)?,
                s.singular_faces,
                s.singular_vertices,
                s.max_order
            );
        }
    }
    Ok(if top.is_empty() { Outcome::NoResult } else { Outcome::Done })
}

// ---------------------------------------------------------------------------
// scan

/// The deterministic part of a scan summary.
#[derive(Serialize)]
struct ScanResult {
    h_max: u64,
    convention: Convention,
    one_point_mode: OnePointMode,
    complete: bool,
    totals: Totals,
    #[serde(skip_serializing_if = "Option::is_none")]
    transpose_distinct_spaces: Option<u64>,
}

fn run_scan(args: ScanArgs, cfg: &Config) -> Result<Outcome> {
    let mut opts = ScanOptions::new(args.hmax);
    opts.threads = args.threads.or(cfg.threads).unwrap_or(1);
    opts.convention = match (args.convention, &cfg.convention) {
        (Some(c), _) => c,
        (None, Some(s)) => s.parse()?,
        (None, None) => Convention::default(),
    };
    opts.one_point = match (args.one_point, &cfg.one_point) {
        (Some(m), _) => m.into(),
        (None, Some(s)) => OnePointArg::from_str(s, true).map_err(anyhow::Error::msg)?.into(),
        (None, None) => OnePointMode::default(),
    };
    if let Some(b) = args.batch_units.or(cfg.batch_units) {
        opts.batch_units = b;
    }
    opts.checkpoint = args.checkpoint.or_else(|| cfg.checkpoint.as_ref().map(PathBuf::from));
    opts.records = args.out;
    opts.record_filter = args.filter.into();
    let summary = scan(&opts)?;
    if let Some(path) = &args.summary {
        std::fs::write(path, serde_json::to_string_pretty(&summary)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    // Every class is paired with its transpose, so the distinct count is twice
    // the identified one.
    let transpose_distinct_spaces = (args.both_conventions && summary.convention == Convention::TransposeIdentified)
        .then(|| 2 * summary.totals.spaces);
    let result = ScanResult {
        h_max: summary.h_max,
        convention: summary.convention,
        one_point_mode: summary.one_point_mode,
        complete: summary.complete,
        totals: summary.totals,
        transpose_distinct_spaces,
    };
    if args.json {
        print_json(&result)?;
    } else {
        let t = &result.totals;
        println!("h_max {}  convention {}", result.h_max, result.convention.tag());
        println!("spaces: {}", t.spaces);
        if let Some(n) = result.transpose_distinct_spaces {
            println!("spaces, transposes distinct: {n}");
        }
        println!("alpha predicate holds: {}", t.alpha_vanishing);
        println!("free-action family: {}", t.free_family);
        println!("one-point actions: {} (checked {})", t.one_point, t.one_point_checked);
        if t.free_without_alpha > 0 {
            println!("warning: {} free-family spaces fail the alpha predicate", t.free_without_alpha);
        }
        println!(
            "{} in {:.1}s on {} threads",
            if result.complete { "complete" } else { "interrupted" },
            summary.meta.elapsed_secs,
            summary.meta.threads
        );
    }
    Ok(Outcome::Done)
}

// ---------------------------------------------------------------------------
// verify / oracle / export-dot

fn run_verify(args: VerifyArgs) -> Result<Outcome> {
    let text = match &args.corpus {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => verify::BUILTIN.to_string(),
    };
    let report = verify::run(&verify::parse_corpus(&text)?);
    if args.json {
        print_json(&report)?;
    } else {
        print!("{}", verify::render_text(&report));
    }
    Ok(if args.strict && report.counts.unexpected > 0 { Outcome::NoResult } else { Outcome::Done })
}

fn oracle(cmd: OracleCommand, cfg: &Config) -> Result<Outcome> {
    match cmd {
        OracleCommand::Lattice { v, w, json } => {
            let (v, w) = (IntVec::new(v.0)?, IntVec::new(w.0)?);
            let points = lattice_points_oracle(&v, &w)?;
            #[derive(Serialize)]
            struct R {
                points: usize,
                distinct_s: usize,
                minor_gcd: u64,
                kappa: u64,
            }
            let r = R {
                points: points.len(),
                distinct_s: distinct_s_count(&points),
                minor_gcd: minor_gcd(&v, &w)?,
                kappa: kappa(&v, &w)?,
            };
            if json {
                print_json(&r)?;
            } else {
                println!("lattice points: {}  (minor gcd {})", r.points, r.minor_gcd);
                println!("distinct s:     {}  (kappa {})", r.distinct_s, r.kappa);
            }
        }
        OracleCommand::Isotropy { space, action } => {
            let wp = space.space()?;
            let act = action.action()?.context("--a and --b are required")?;
            let prof = IsotropyProfile::compute(&wp, &act)?;
            #[derive(Serialize)]
            struct Row {
                target: String,
                oracle: u64,
                formula: u64,
            }
            let mut rows = vec![Row {
                target: "kernel".into(),
                oracle: isotropy_oracle(&wp, &act, Target::Kernel)?,
                formula: prof.kappa0,
            }];
            for s in Perm3::ALL {
                rows.push(Row {
                    target: format!("C{s}"),
                    oracle: isotropy_oracle(&wp, &act, Target::Vertex(s))?,
                    formula: prof.vertex(s),
                });
            }
            for i in 1..=3 {
                for j in 1..=3 {
                    rows.push(Row {
                        target: format!("L{i}{j}"),
                        oracle: isotropy_oracle(&wp, &act, Target::Face(i, j))?,
                        formula: prof.face(i, j),
                    });
                }
            }
            let agree = rows.iter().all(|r| r.oracle == r.formula);
            if space.json {
                print_json(&rows)?;
            } else {
                for r in &rows {
                    println!("{:<8}{:>8}{:>8}", r.target, r.oracle, r.formula);
                }
                println!("{}", if agree { "all orders agree" } else { "DISAGREEMENT" });
            }
            if !agree {
                return Ok(Outcome::NoResult);
            }
        }
        OracleCommand::Box { hmax, convention, json } => {
            let conv = match (convention, &cfg.convention) {
                (Some(c), _) => c,
                (None, Some(s)) => s.parse()?,
                (None, None) => Convention::default(),
            };
            let set = brute_box_oracle(hmax, conv)?;
            if json {
                let reps: Vec<_> = set.iter().map(|k| k.representative()).collect();
                print_json(&reps)?;
            } else {
                println!("{} spaces with h <= {hmax} ({})", set.len(), conv.tag());
            }
        }
    }
    Ok(Outcome::Done)
}

fn export_dot(args: ExportDotArgs) -> Result<Outcome> {
    let wp = args.space.space()?;
    let act = args.action.action()?.context("--a and --b are required")?;
    let locus = if args.torus { torus_quotient_locus(&wp, &act)? } else { singular_locus(&wp, &act)? };
    let dot = to_dot(&locus, &format!("E {:?} {:?} / a={:?} b={:?}", wp.p(), wp.q(), act.a(), act.b()));
    match &args.out {
        Some(path) => std::fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{dot}"),
    }
    Ok(Outcome::Done)
}
