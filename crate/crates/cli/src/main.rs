use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use clausen_core::catalog::{self, derivation_edges, InstantiateOptions, Params, TheoremId, Var, Verdict};
use clausen_core::mellin::{self, MellinCase, MellinInstance, MellinReport};
use clausen_core::series::{
    eval_exact, eval_nonterminating_float, split_negative_denominator, HypergeometricSpec, DEFAULT_MAX_TERMS,
};
use clausen_core::{Error, Rational, ReportDocument, SweepConfig};
use serde_json::json;

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "clausen", version, about = "Verify Clausen-series summation theorems and Mellin transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a pFq series.
    Eval(EvalArgs),
    /// Verify one catalog entry at one binding.
    Verify(VerifyArgs),
    /// Check a derivation edge child <- parent at one binding.
    Derive(DeriveArgs),
    /// Run a seeded randomized sweep and write a JSON report.
    Sweep(SweepArgs),
    /// Verify a Mellin-transform case.
    Mellin(MellinArgs),
    /// List the theorem catalog, derivation edges and Mellin cases.
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct EvalArgs {
    /// Comma-separated numerator parameters, e.g. -1,1,1
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    num: String,
    /// Comma-separated denominator parameters.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    den: String,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Sum the terms 0..=N only.
    #[arg(long)]
    truncate: Option<u64>,
    /// Evaluate in double-double floating point (non-terminating series).
    #[arg(long)]
    float: bool,
    /// Split off the tail past a negative-integer denominator.
    #[arg(long)]
    split: bool,
    /// Relative tolerance for float evaluation.
    #[arg(long, default_value_t = 1e-25)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone, Default)]
struct BindingArgs {
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Allow m = 0 or k = 0.
    #[arg(long)]
    permissive: bool,
}

impl BindingArgs {
    fn params(&self) -> Result<Params, Error> {
        let mut p = Params { m: self.m, k: self.k, ..Default::default() };
        for (var, text) in [
            (Var::Alpha, &self.alpha),
            (Var::Beta, &self.beta),
            (Var::Gamma, &self.gamma),
            (Var::Delta, &self.delta),
        ] {
            if let Some(t) = text {
                p.set(var, t)?;
            }
        }
        Ok(p)
    }

    fn opts(&self) -> InstantiateOptions {
        InstantiateOptions { permissive: self.permissive }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Catalog key (e.g. watson.trunc-m) or tag (e.g. 2.4).
    #[arg(long)]
    id: String,
    #[command(flatten)]
    binding: BindingArgs,
    /// Relative tolerance for Gamma-form entries.
    #[arg(long, default_value_t = catalog::DEFAULT_FLOAT_TOL)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DeriveArgs {
    #[arg(long)]
    child: String,
    #[arg(long)]
    parent: String,
    #[command(flatten)]
    binding: BindingArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// "all", "none" or comma-separated catalog keys.
    #[arg(long, default_value = "all")]
    theorems: String,
    /// Also sweep every derivation edge.
    #[arg(long)]
    edges: bool,
    /// "all", "none" or comma-separated case names (I..XVI, generic).
    #[arg(long, default_value = "none")]
    mellin: String,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    m_max: u64,
    #[arg(long, default_value_t = 8)]
    k_max: u64,
    /// Bound on numerators of sampled rationals.
    #[arg(long, default_value_t = 20)]
    magnitude: i64,
    /// Relative tolerance for Gamma-form entries.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Relative tolerance for Mellin quadrature.
    #[arg(long, default_value_t = 1e-8)]
    quad_tol: f64,
    #[arg(long)]
    permissive: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the report to standard output even when --out is given.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MellinArgs {
    /// I..XVI or generic.
    #[arg(long)]
    case: String,
    #[command(flatten)]
    binding: BindingArgs,
    /// Generic transform: denominator shift ℓ.
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Print the quadrature comparison.
    #[arg(long)]
    quad: bool,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let invalid = e.is_invalid_instance()
            || matches!(e, Error::PoleInRange { .. } | Error::PoleInClosedForm(_) | Error::NotTerminating);
        Failure { code: if invalid { EXIT_INVALID } else { EXIT_ERROR }, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into() }
}

type CmdResult = Result<u8, Failure>;

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    text.parse().map_err(|e: clausen_core::ParseRationalError| invalid(e.to_string()))
}

fn parse_list(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_rational).collect()
}

fn opt_rational(text: &Option<String>) -> Result<Option<Rational>, Failure> {
    text.as_deref().map(parse_rational).transpose()
}

fn verdict_code(v: Verdict, invalid_instance: Option<bool>) -> u8 {
    match v {
        Verdict::Equal => 0,
        Verdict::Mismatch => EXIT_MISMATCH,
        Verdict::Inapplicable if invalid_instance == Some(true) => EXIT_INVALID,
        Verdict::Inapplicable => EXIT_ERROR,
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn cmd_eval(args: &EvalArgs) -> CmdResult {
    let mut spec = HypergeometricSpec::new(parse_list(&args.num)?, parse_list(&args.den)?, parse_rational(&args.z)?);
    spec.truncation = args.truncate;
    if args.split {
        let res = split_negative_denominator(&spec, args.tol)?;
        if args.json {
            print_json(&res);
        } else {
            println!("truncated part (n <= {}): {}", res.l, res.truncated_part);
            println!("tail: {} (error <= {:e}, {} terms)", res.tail_estimate.to_string_sig(20), res.tail_error_bound.to_f64(), res.tail_terms_used);
            println!("total: {}", res.total().to_string_sig(20));
        }
        return Ok(0);
    }
    let finite = spec.term_count().is_some();
    if finite && !args.float {
        let v = eval_exact(&spec)?;
        if args.json {
            print_json(&json!({ "spec": spec.to_string(), "value": v }));
        } else {
            println!("{v}");
        }
        return Ok(0);
    }
    if !args.float {
        return Err(invalid(format!("{spec} does not terminate; pass --float to sum it numerically")));
    }
    let s = eval_nonterminating_float(&spec, args.tol, DEFAULT_MAX_TERMS)?;
    if args.json {
        print_json(&json!({ "spec": spec.to_string(), "float": s }));
    } else {
        println!("{}", s.value.to_string_sig(20));
        eprintln!("terms {}, error {} {:e}", s.terms, if s.rigorous { "bound" } else { "estimate" }, s.abs_error);
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let id: TheoremId = args.id.parse()?;
    let inst = catalog::instantiate(id, &args.binding.params()?, args.binding.opts())?;
    let rep = catalog::verify(&inst, args.tol);
    if args.json {
        print_json(&rep);
    } else {
        println!("{} ({})  {}", id.key(), id.tag(), rep.params);
        println!("lhs: {}", rep.lhs_spec);
        let show = |v: &Option<catalog::Value>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
        let sym = if rep.verdict == Verdict::Equal { "=" } else { "vs" };
        println!("{}: {} {} {}", verdict_name(rep.verdict), show(&rep.lhs), sym, show(&rep.rhs));
        if let Some(alt) = &rep.alt_rhs {
            println!("second closed form: {alt}");
        }
        if let Some(d) = rep.rel_diff {
            println!("relative difference {d:e} (tolerance {:e})", args.tol);
        }
        for d in &rep.diagnostics {
            println!("note: {d}");
        }
    }
    Ok(verdict_code(rep.verdict, rep.invalid_instance))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Equal => "equal",
        Verdict::Mismatch => "mismatch",
        Verdict::Inapplicable => "inapplicable",
    }
}

fn cmd_derive(args: &DeriveArgs) -> CmdResult {
    let child: TheoremId = args.child.parse()?;
    let parent: TheoremId = args.parent.parse()?;
    let rep = catalog::derivation_check(child, parent, &args.binding.params()?, args.binding.opts())?;
    if args.json {
        print_json(&rep);
    } else {
        println!("{} <- {}  ({})  {}", child.key(), parent.key(), rep.substitution, rep.params);
        println!("child lhs:  {}", rep.child_lhs);
        println!("parent lhs: {}", rep.parent_lhs);
        println!("child rhs {} / parent rhs {}", rep.child_rhs, rep.parent_rhs);
        println!("{}", if rep.holds { "holds" } else { "fails" });
    }
    Ok(if rep.holds { 0 } else { EXIT_MISMATCH })
}

fn parse_targets<T>(text: &str, all: impl Fn() -> Vec<T>, parse: impl Fn(&str) -> Result<T, Error>) -> Result<Vec<T>, Failure> {
    match text.trim() {
        "all" => Ok(all()),
        "none" | "" => Ok(Vec::new()),
        list => list.split(',').map(|s| parse(s.trim()).map_err(Failure::from)).collect(),
    }
}

fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let cfg = SweepConfig {
        theorems: parse_targets(&args.theorems, || TheoremId::ALL.to_vec(), str::parse)?,
        edges: args.edges,
        mellin_cases: parse_targets(&args.mellin, || MellinCase::all_numbered().collect(), str::parse)?,
        trials: args.trials,
        seed: args.seed,
        m_max: args.m_max,
        k_max: args.k_max,
        magnitude: args.magnitude,
        float_tol: args.tol,
        quad_tol: args.quad_tol,
        permissive: args.permissive,
        ..Default::default()
    };
    if cfg.m_max < 1 || cfg.k_max < 1 || cfg.magnitude < 1 {
        return Err(invalid("m-max, k-max and magnitude must be at least 1"));
    }
    let records = clausen_core::run_sweep(&cfg, args.jobs);
    let doc = ReportDocument::new(cfg, records);
    let text = doc.to_json();
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure { code: EXIT_ERROR, message: format!("{}: {e}", path.display()) })?;
            if args.json {
                print!("{text}");
            }
        }
        None => print!("{text}"),
    }
    let s = &doc.summary;
    eprintln!("{} instances: {} equal, {} mismatch, {} inapplicable", s.total, s.equal, s.mismatch, s.inapplicable);
    for r in doc.records.iter().filter(|r| r.verdict != Verdict::Equal) {
        eprintln!("  {} #{} {}: {}", r.target, r.trial, verdict_name(r.verdict), record_note(r));
    }
    Ok(if s.mismatch > 0 {
        EXIT_MISMATCH
    } else if doc.evaluation_errors() > 0 {
        EXIT_ERROR
    } else {
        0
    })
}

fn record_note(r: &clausen_core::report::Record) -> String {
    use clausen_core::report::RecordDetail;
    match &r.detail {
        None => format!("no valid binding in {} draws", r.attempts),
        Some(RecordDetail::Theorem(t)) => format!("{} {}", t.params, t.diagnostics.join("; ")),
        Some(RecordDetail::Mellin(m)) => m.diagnostics.join("; "),
        Some(RecordDetail::Edge(e)) => format!("{} {} vs {}", e.params, e.child_rhs, e.parent_rhs),
    }
}

fn cmd_mellin(args: &MellinArgs) -> CmdResult {
    let case: MellinCase = args.case.parse()?;
    let p = args.binding.params()?;
    let mut inst = MellinInstance::new(case, parse_rational(&args.mu)?);
    inst.m = p.m;
    inst.k = p.k;
    inst.alpha = p.alpha;
    inst.beta = p.beta;
    inst.gamma = p.gamma;
    if p.delta.is_some() {
        return Err(Error::UnknownParameter("delta").into());
    }
    inst.ell = args.ell;
    inst.a = opt_rational(&args.a)?;
    inst.b = opt_rational(&args.b)?;
    inst.s = opt_rational(&args.s)?;
    inst.lambda = opt_rational(&args.lambda)?;
    let opts = args.binding.opts();
    mellin::resolve(&inst, opts)?;
    let rep = mellin::verify_mellin_case(&inst, args.tol, opts);
    if args.json {
        print_json(&rep);
    } else {
        print_mellin(&rep, args.quad);
    }
    let mut code = verdict_code(rep.verdict, rep.invalid_instance);
    if !args.quad && rep.coefficient_match != Some(false) && rep.verdict == Verdict::Mismatch {
        // Without --quad only the exact comparison decides.
        code = 0;
    }
    Ok(code)
}

fn print_mellin(rep: &MellinReport, quad: bool) {
    let case = rep.instance.case;
    match case.theorem() {
        Some(id) => println!("case {case} (via {})", id.key()),
        None => println!("generic transform"),
    }
    if let Some(b) = &rep.binding {
        println!(
            "binding: degree {}, ell {}, a {}, b {}, s {}, lambda {}, mu {}",
            b.degree, b.ell, b.a, b.b, b.s, b.lambda, b.mu
        );
    }
    let main = rep.closed_form.as_ref().or(rep.symbolic.as_ref());
    if let Some(e) = main {
        println!("coefficient: {}", e.coefficient);
        println!("gamma factor: Γ({}) / {}^{}", e.gamma_arg, e.mu, e.mu_power);
        println!("value: {}", e.value.to_string_sig(20));
    }
    if let (Some(c), Some(s)) = (&rep.closed_form, &rep.symbolic) {
        let tag = if rep.coefficient_match == Some(true) { "match" } else { "MISMATCH" };
        println!("generic coefficient: {} ({tag}; closed form {})", s.coefficient, c.coefficient);
    }
    if quad {
        if let (Some(q), Some(d)) = (&rep.quadrature, rep.quad_rel_diff) {
            println!("quadrature: {} ({} nodes), relative difference {d:e}", q.value.to_string_sig(20), q.nodes);
        }
    }
    for d in &rep.diagnostics {
        println!("note: {d}");
    }
    println!("{}", verdict_name(rep.verdict));
}

fn cmd_list(json_out: bool) -> CmdResult {
    let theorems: Vec<_> = catalog::list_theorems()
        .iter()
        .map(|id| {
            json!({
                "key": id.key(),
                "tag": id.tag(),
                "family": id.family(),
                "mode": id.mode(),
                "vars": id.free_vars().iter().map(|v| v.name()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let edges: Vec<_> = derivation_edges()
        .iter()
        .map(|e| json!({ "child": e.child.key(), "parent": e.parent.key(), "substitution": e.substitution }))
        .collect();
    let cases: Vec<_> = MellinCase::all_numbered()
        .map(|c| json!({ "case": c.to_string(), "theorem": c.theorem().map(|t| t.key()), "zero": c.is_zero_case() }))
        .collect();
    if json_out {
        print_json(&json!({ "theorems": theorems, "edges": edges, "mellin_cases": cases }));
        return Ok(0);
    }
    println!("{:<24} {:<6} {:<6} variables", "theorem", "tag", "mode");
    for id in catalog::list_theorems() {
        let vars: Vec<_> = id.free_vars().iter().map(|v| v.name()).collect();
        let mode = if id.mode() == catalog::Mode::Exact { "exact" } else { "float" };
        println!("{:<24} {:<6} {:<6} {}", id.key(), id.tag(), mode, vars.join(" "));
    }
    println!();
    println!("derivation edges:");
    for e in derivation_edges() {
        println!("  {:<24} <- {:<20} {}", e.child.key(), e.parent.key(), e.substitution);
    }
    println!();
    println!("mellin cases:");
    for c in MellinCase::all_numbered() {
        let zero = if c.is_zero_case() { "  (vanishes)" } else { "" };
        println!("  {:<5} {}{zero}", c.to_string(), c.theorem().expect("numbered").key());
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Derive(a) => cmd_derive(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Mellin(a) => cmd_mellin(a),
        Command::List { json } => cmd_list(*json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
