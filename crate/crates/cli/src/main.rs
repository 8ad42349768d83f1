//! Command-line surface of the toolkit: load fans, groups, and polytopes
//! from JSON files, run the computations and verification suites, and emit
//! machine-readable reports.
//!
//! Reports go to stdout as JSON (or as plain text with `--format text`),
//! human summaries and warnings to stderr.  Exit codes: 0 success, 1 bad
//! input or failed validation, 2 a verified identity failed to hold, 3 an
//! internal invariant broke.

use clap::{Parser, Subcommand, ValueEnum};
use fanchar::charformula::{
    char_maschke, equivariant_h_series, h_polynomial, invariant_poincare_avg,
    invariant_poincare_contrib, invariant_poincare_orbit, properness_restriction_check,
};
use fanchar::corpus::{self, FanInstance, PolytopeInstance};
use fanchar::error::{Error, ErrorClass};
use fanchar::exact::{poly_is_palindromic, rat, QPoly};
use fanchar::fan::Fan;
use fanchar::hybrid::{
    build_hybrid_fast, build_hybrid_naive, check_structure, hybrid_agreement_check,
    polytopal_check, quotient_polytope, theorem_check, HybridFan,
};
use fanchar::io::{self, GroupInput};
use fanchar::srring::ArtinianTable;
use fanchar::symmetry::{bind_action, FanAction, MatrixGroup, RootSystem};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "fanchar",
    version,
    about = "Exact computations on complete simplicial fans with finite symmetry"
)]
struct Cli {
    /// Report format: JSON on stdout (summary on stderr), or text only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan axioms, completeness, and simpliciality of a fan file.
    Validate { fan: String },
    /// Print the f-vector of a fan.
    Fvector { fan: String },
    /// Print the h-polynomial of a fan.
    Hpoly { fan: String },
    /// Graded character of a group action, one polynomial per conjugacy class.
    Echar {
        fan: String,
        group: String,
        /// Restrict the output to a single conjugacy class.
        #[arg(long, conflicts_with = "all")]
        class: Option<usize>,
        /// Output every class (the default).
        #[arg(long)]
        all: bool,
    },
    /// Invariant Poincaré polynomial of an action, by one route or all.
    Invariants {
        fan: String,
        group: String,
        #[arg(long, value_enum, default_value_t = Route::All)]
        route: Route,
    },
    /// Fold a fan across the walls of a reflection group.
    Hybrid {
        fan: String,
        group: String,
        /// Write the folded fan to a file instead of stdout.
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value_t = Builder::Both)]
        builder: Builder,
    },
    /// Intersect an invariant polytope with the dominant chamber.
    QuotientPolytope { polytope: String, group: String },
    /// Run the verification suite on a fan/group pair, or on the corpus.
    Verify {
        fan: Option<String>,
        group: Option<String>,
        /// Also run the brute-force ring oracle (slower).
        #[arg(long)]
        oracle: bool,
        /// Verify every built-in example instead of a file pair.
        #[arg(long, conflicts_with_all = ["fan", "group"])]
        all: bool,
    },
    /// List the built-in examples, or run one by name.
    Examples { name: Option<String> },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Average of the graded characters over the group.
    Avg,
    /// Sum over cone-orbit representatives (induced characters).
    Orbit,
    /// Closed form from chamber data.
    Closed,
    /// Brute-force ring oracle.
    Oracle,
    /// Every route that applies, cross-checked for equality.
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Builder {
    Naive,
    Fast,
    /// Run both builders and require them to agree.
    Both,
}

/// What a command produced: the JSON report, the human summary, and the
/// exit code (nonzero when a verification ran and failed).
struct Outcome {
    report: Value,
    summary: String,
    exit: i32,
}

impl Outcome {
    fn ok(report: Value, summary: impl Into<String>) -> Outcome {
        Outcome {
            report,
            summary: summary.into(),
            exit: 0,
        }
    }
}

fn class_exit(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Input => 1,
        ErrorClass::Theorem => 2,
        ErrorClass::Internal => 3,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are successes; anything else is bad input
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli.command) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&outcome.report)
                            .expect("report serialization cannot fail")
                    );
                    eprintln!("{}", outcome.summary);
                }
                Format::Text => println!("{}", outcome.summary),
            }
            std::process::exit(outcome.exit);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(class_exit(e.class()));
        }
    }
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Validate { fan } => cmd_validate(fan),
        Command::Fvector { fan } => cmd_fvector(fan),
        Command::Hpoly { fan } => cmd_hpoly(fan),
        Command::Echar {
            fan,
            group,
            class,
            all: _,
        } => cmd_echar(fan, group, *class),
        Command::Invariants { fan, group, route } => cmd_invariants(fan, group, *route),
        Command::Hybrid {
            fan,
            group,
            out,
            builder,
        } => cmd_hybrid(fan, group, out.as_deref(), *builder),
        Command::QuotientPolytope { polytope, group } => cmd_quotient(polytope, group),
        Command::Verify {
            fan,
            group,
            oracle,
            all,
        } => {
            if *all {
                cmd_verify_all(*oracle)
            } else {
                match (fan, group) {
                    (Some(f), Some(g)) => cmd_verify(f, g, *oracle),
                    _ => Err(Error::BadFile {
                        path: String::new(),
                        message: "verify needs a fan file and a group file, or --all".into(),
                    }),
                }
            }
        }
        Command::Examples { name } => cmd_examples(name.as_deref()),
    }
}

// ------------------------------------------------------------- small loads

fn load_pair(fan: &str, group: &str) -> Result<(Fan, GroupInput), Error> {
    let f = io::read_fan(fan)?;
    let g = io::read_group(group, Some(f.space()))?;
    Ok((f, g))
}

fn roots_or_input_error<'a>(g: &'a GroupInput, group_path: &str) -> Result<&'a RootSystem, Error> {
    g.roots().ok_or_else(|| Error::BadFile {
        path: group_path.to_string(),
        message: "this command needs a reflection group given by \"simple_roots\"".into(),
    })
}

// -------------------------------------------------------------- validate

fn cmd_validate(fan: &str) -> Result<Outcome, Error> {
    let f = io::read_fan(fan)?;
    let vr = f.validate();
    let cr = f.is_complete();
    let simplicial = f.is_simplicial();
    let violations: Vec<String> = vr.violations.iter().map(|v| v.to_string()).collect();
    let report = json!({
        "valid": vr.is_valid(),
        "violations": violations,
        "complete": cr.complete,
        "completeness_witness": cr.witness.as_ref().map(|w| format!("{w:?}")),
        "simplicial": simplicial.is_ok(),
        "nonsimplicial_cone": simplicial.as_ref().err(),
        "f": f.f_vector(),
    });
    let mut lines = vec![format!(
        "valid: {} — complete: {} — simplicial: {}",
        yes_no(vr.is_valid()),
        yes_no(cr.complete),
        yes_no(report["simplicial"].as_bool().unwrap()),
    )];
    for v in &vr.violations {
        lines.push(format!("  violation: {v}"));
    }
    let exit = if vr.is_valid() { 0 } else { 1 };
    Ok(Outcome {
        report,
        summary: lines.join("\n"),
        exit,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// ---------------------------------------------------------------- fvector

fn cmd_fvector(fan: &str) -> Result<Outcome, Error> {
    let f = io::read_fan(fan)?;
    let fv = f.f_vector();
    Ok(Outcome::ok(
        json!({ "f": fv }),
        format!("f-vector: {fv:?}"),
    ))
}

// ------------------------------------------------------------------ hpoly

fn cmd_hpoly(fan: &str) -> Result<Outcome, Error> {
    let f = io::read_fan(fan)?;
    if !f.is_complete().complete {
        eprintln!("warning: fan is not complete; the f-to-h transform is applied anyway");
    }
    if f.is_simplicial().is_err() {
        eprintln!("warning: fan is not simplicial; the f-to-h transform is applied anyway");
    }
    let h = h_polynomial(&f);
    Ok(Outcome::ok(
        json!({ "h": io::poly_to_json(&h) }),
        format!("h-polynomial: {h}"),
    ))
}

// ------------------------------------------------------------------ echar

fn cmd_echar(fan: &str, group: &str, class: Option<usize>) -> Result<Outcome, Error> {
    let (f, g) = load_pair(fan, group)?;
    let action = bind_action(g.group(), &f)?;
    let gc = equivariant_h_series(&action)?;
    let full = io::class_function_to_json(g.group(), gc.values())?;
    let n = gc.values().len();
    match class {
        None => Ok(Outcome::ok(
            full,
            format!("graded character on {n} conjugacy classes"),
        )),
        Some(k) => {
            let entry = full["classes"]
                .as_array()
                .and_then(|cs| cs.get(k))
                .cloned()
                .ok_or_else(|| Error::BadFile {
                    path: group.to_string(),
                    message: format!("class index {k} out of range (the group has {n} classes)"),
                })?;
            let summary = format!("class {k}: {}", gc.value_of_class(k));
            Ok(Outcome::ok(json!({ "class": k, "entry": entry }), summary))
        }
    }
}

// ------------------------------------------------------------- invariants

/// Average of the oracle's per-element graded traces.
fn oracle_invariant(f: &Fan, action: &FanAction) -> Result<QPoly, Error> {
    let table = ArtinianTable::new(f)?;
    let chars = table.characters(action)?;
    let group = action.group();
    let mut total = QPoly::zero();
    for e in 0..group.order() {
        total = total + chars.oracle_character(e);
    }
    Ok(total.scale(&(rat(1) / rat(group.order() as i64))))
}

fn cmd_invariants(fan: &str, group: &str, route: Route) -> Result<Outcome, Error> {
    let (f, g) = load_pair(fan, group)?;
    let action = bind_action(g.group(), &f)?;
    let mut routes = serde_json::Map::new();
    let mut values: Vec<(&str, QPoly)> = Vec::new();

    if matches!(route, Route::Avg | Route::All) {
        values.push(("avg", invariant_poincare_avg(&action)?));
    }
    if matches!(route, Route::Orbit | Route::Closed | Route::All) {
        match g.roots() {
            Some(rs) => {
                if matches!(route, Route::Orbit | Route::All) {
                    values.push(("orbit", invariant_poincare_orbit(&action, rs)?));
                }
                if matches!(route, Route::Closed | Route::All) {
                    values.push(("closed", invariant_poincare_contrib(&action, rs)?));
                }
            }
            None if route != Route::All => {
                return Err(roots_or_input_error(&g, group).unwrap_err())
            }
            None => {}
        }
    }
    if matches!(route, Route::Oracle | Route::All) {
        values.push(("oracle", oracle_invariant(&f, &action)?));
    }

    for (name, p) in &values {
        routes.insert((*name).into(), io::poly_to_json(p));
    }
    let equal = values.windows(2).all(|w| w[0].1 == w[1].1);
    if !equal {
        let listing: Vec<String> = values
            .iter()
            .map(|(name, p)| format!("{name}: {p}"))
            .collect();
        return Err(Error::CharacterMismatch(format!(
            "invariant routes disagree — {}",
            listing.join("; ")
        )));
    }
    let summary = values
        .iter()
        .map(|(name, p)| format!("{name}: {p}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::ok(
        json!({ "routes": Value::Object(routes), "equal": equal }),
        summary,
    ))
}

// ----------------------------------------------------------------- hybrid

fn cmd_hybrid(
    fan: &str,
    group: &str,
    out: Option<&str>,
    builder: Builder,
) -> Result<Outcome, Error> {
    let (f, g) = load_pair(fan, group)?;
    let rs = roots_or_input_error(&g, group)?;
    let h: HybridFan = match builder {
        Builder::Naive => build_hybrid_naive(&f, rs)?,
        Builder::Fast => build_hybrid_fast(&f, rs)?,
        Builder::Both => hybrid_agreement_check(&f, rs)?,
    };
    let structure = check_structure(&h);
    let body = io::hybrid_to_json(&h)?;
    let summary = format!(
        "folded fan: {} rays, f-vector {:?}; valid: {} — complete: {} — simplicial: {}",
        h.fan().rays().len(),
        h.fan().f_vector(),
        yes_no(structure.valid),
        yes_no(structure.complete),
        yes_no(structure.simplicial),
    );
    match out {
        Some(path) => {
            io::write_json(path, &body)?;
            let report = json!({
                "written": path,
                "f": h.fan().f_vector(),
                "structure": {
                    "valid": structure.valid,
                    "complete": structure.complete,
                    "simplicial": structure.simplicial,
                },
            });
            Ok(Outcome::ok(report, summary))
        }
        None => Ok(Outcome::ok(body, summary)),
    }
}

// ----------------------------------------------------- quotient polytope

fn cmd_quotient(polytope: &str, group: &str) -> Result<Outcome, Error> {
    let p = io::read_polytope(polytope)?;
    let g = io::read_group(group, Some(p.space()))?;
    let rs = roots_or_input_error(&g, group)?;
    let q = quotient_polytope(&p, rs)?;
    let summary = format!(
        "quotient polytope: {} of the {} vertices survive into the chamber",
        q.vertices().len(),
        p.vertices().len(),
    );
    Ok(Outcome::ok(io::polytope_to_json(&q), summary))
}

// ----------------------------------------------------------------- verify

/// Collects named pass/fail checks; a theorem-class error fails the check
/// and the run, any other error aborts the command.
struct Checks {
    entries: Vec<Value>,
    failed: bool,
}

impl Checks {
    fn new() -> Checks {
        Checks {
            entries: Vec::new(),
            failed: false,
        }
    }

    /// Runs one check.  Returns whether it passed.
    fn run(
        &mut self,
        name: &str,
        body: impl FnOnce() -> Result<Option<String>, Error>,
    ) -> Result<bool, Error> {
        match body() {
            Ok(detail) => {
                let mut entry = json!({ "name": name, "status": "ok" });
                if let Some(d) = detail {
                    entry["detail"] = json!(d);
                }
                self.entries.push(entry);
                Ok(true)
            }
            Err(e) if e.class() == ErrorClass::Theorem => {
                self.entries
                    .push(json!({ "name": name, "status": "failed", "detail": e.to_string() }));
                self.failed = true;
                Ok(false)
            }
            Err(e) => Err(e),
        }
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.entries
            .push(json!({ "name": name, "status": "skipped", "detail": why }));
    }

    fn summary_lines(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| {
                let status = e["status"].as_str().unwrap_or("?");
                let name = e["name"].as_str().unwrap_or("?");
                match status {
                    "ok" => format!("  ok      {name}"),
                    "skipped" => format!("  skipped {name}"),
                    _ => format!("  FAILED  {name}: {}", e["detail"].as_str().unwrap_or("")),
                }
            })
            .collect()
    }
}

/// The verification suite for one fan and one group action on it.
fn verify_pair(
    label: &str,
    f: &Fan,
    group: &MatrixGroup,
    roots: Option<&RootSystem>,
    oracle: bool,
) -> Result<(Value, bool, Vec<String>), Error> {
    let vr = f.validate();
    if !vr.is_valid() {
        return Err(Error::InvalidFan(
            vr.violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    if !f.is_complete().complete {
        return Err(Error::NotComplete("the verify suite needs a complete fan".into()));
    }
    if let Err(cone) = f.is_simplicial() {
        return Err(Error::NotSimplicial(format!(
            "cone {cone:?} is not simplicial"
        )));
    }
    let action = bind_action(group, f)?;
    let d = f.dim();
    let mut checks = Checks::new();

    // graded character, with its internal fixed-cone cross-check
    let gc = match equivariant_h_series(&action) {
        Ok(gc) => Some(gc),
        Err(e) if e.class() == ErrorClass::Theorem => {
            checks.entries.push(json!({
                "name": "character-routes",
                "status": "failed",
                "detail": e.to_string(),
            }));
            checks.failed = true;
            None
        }
        Err(e) => return Err(e),
    };

    if let Some(gc) = &gc {
        checks.entries.push(json!({ "name": "character-routes", "status": "ok" }));

        checks.run("character-average-route", || {
            for e in 0..group.order() {
                let direct = char_maschke(&action, e)?;
                if &direct != gc.value_of_element(group, e) {
                    return Err(Error::CharacterMismatch(format!(
                        "element {e}: averaged projection gives {direct}, the induced sum gives {}",
                        gc.value_of_element(group, e)
                    )));
                }
            }
            Ok(None)
        })?;

        checks.run("character-palindromy", || {
            for (k, p) in gc.values().iter().enumerate() {
                if !poly_is_palindromic(p, d)? {
                    return Err(Error::TheoremViolation(format!(
                        "class {k} character {p} is not palindromic of degree {d}"
                    )));
                }
            }
            Ok(None)
        })?;

        checks.run("identity-class-is-h", || {
            let h = h_polynomial(f);
            let id = gc.value_of_element(group, 0);
            if id != &h {
                return Err(Error::CharacterMismatch(format!(
                    "identity class gives {id}, the h-polynomial is {h}"
                )));
            }
            Ok(None)
        })?;
    } else {
        checks.skip("character-average-route", "character routes failed");
        checks.skip("character-palindromy", "character routes failed");
        checks.skip("identity-class-is-h", "character routes failed");
    }

    if oracle {
        let table = ArtinianTable::new(f)?;
        let chars = table.characters(&action)?;
        if let Some(gc) = &gc {
            checks.run("character-oracle", || {
                for e in 0..group.order() {
                    let want = gc.value_of_element(group, e);
                    let got = chars.oracle_character(e);
                    if &got != want {
                        return Err(Error::CharacterMismatch(format!(
                            "element {e}: oracle traces give {got}, the formula gives {want}"
                        )));
                    }
                }
                Ok(None)
            })?;
        } else {
            checks.skip("character-oracle", "character routes failed");
        }
        checks.run("socle", || {
            chars.socle_check()?;
            Ok(None)
        })?;
    } else {
        checks.skip("character-oracle", "pass --oracle to run the ring oracle");
        checks.skip("socle", "pass --oracle to run the ring oracle");
    }

    let proper = action.is_proper();
    if proper {
        checks.run("proper-action-restriction", || {
            properness_restriction_check(&action)?;
            Ok(None)
        })?;
    }

    match roots {
        Some(rs) => {
            checks.run("fold-builders-agree", || {
                let h = hybrid_agreement_check(f, rs)?;
                let s = check_structure(&h);
                if !(s.valid && s.complete && s.simplicial) {
                    return Err(Error::TheoremViolation(format!(
                        "folded fan structure: valid {}, complete {}, simplicial {}",
                        s.valid, s.complete, s.simplicial
                    )));
                }
                Ok(Some(format!("folded f-vector {:?}", h.fan().f_vector())))
            })?;
            checks.run("fold-invariant-routes", || {
                let report = theorem_check(f, rs, oracle)?;
                Ok(Some(format!("invariant series {}", report.invariant_avg)))
            })?;
        }
        None => {
            checks.skip("fold-builders-agree", "group file has no simple roots");
            checks.skip("fold-invariant-routes", "group file has no simple roots");
        }
    }

    let ok = !checks.failed;
    let report = json!({
        "instance": label,
        "proper": proper,
        "checks": checks.entries,
        "status": if ok { "ok" } else { "failed" },
    });
    let mut lines = vec![format!("{label}: {}", if ok { "ok" } else { "FAILED" })];
    lines.extend(checks.summary_lines());
    Ok((report, ok, lines))
}

fn cmd_verify(fan: &str, group: &str, oracle: bool) -> Result<Outcome, Error> {
    let (f, g) = load_pair(fan, group)?;
    let (report, ok, lines) = verify_pair(fan, &f, g.group(), g.roots(), oracle)?;
    Ok(Outcome {
        report,
        summary: lines.join("\n"),
        exit: if ok { 0 } else { 2 },
    })
}

fn worker_count(jobs: usize) -> usize {
    let default = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let requested = std::env::var("FANCHAR_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(default);
    requested.max(1).min(jobs.max(1))
}

/// One corpus fan entry, for the parallel verify sweep.
fn verify_corpus_fan(
    inst: &FanInstance,
    oracle: bool,
) -> Result<(Value, bool, Vec<String>), Error> {
    let f = inst.fan()?;
    let rs = inst.roots()?;
    verify_pair(inst.name, &f, rs.group(), Some(&rs), oracle)
}

/// One corpus polytope entry: quotient vertices against the manifest, and
/// the fold of the normal fan against the quotient's normal fan.
fn verify_corpus_polytope(inst: &PolytopeInstance) -> Result<(Value, bool, Vec<String>), Error> {
    let p = inst.polytope()?;
    let rs = inst.roots()?;
    let mut checks = Checks::new();
    checks.run("quotient-vertices", || {
        let q = quotient_polytope(&p, &rs)?;
        let mut got = q.vertices().to_vec();
        got.sort();
        let mut want = inst.expected_quotient()?;
        want.sort();
        if got != want {
            return Err(Error::TheoremViolation(format!(
                "{}: quotient vertices differ from the manifest",
                inst.name
            )));
        }
        Ok(Some(format!("{} vertices", got.len())))
    })?;
    checks.run("quotient-normal-fan", || {
        if !polytopal_check(&p, &rs)? {
            return Err(Error::TheoremViolation(format!(
                "{}: normal fan of the quotient differs from the folded normal fan",
                inst.name
            )));
        }
        Ok(None)
    })?;
    let ok = !checks.failed;
    let report = json!({
        "instance": inst.name,
        "checks": checks.entries,
        "status": if ok { "ok" } else { "failed" },
    });
    let mut lines = vec![format!("{}: {}", inst.name, if ok { "ok" } else { "FAILED" })];
    lines.extend(checks.summary_lines());
    Ok((report, ok, lines))
}

fn cmd_verify_all(oracle: bool) -> Result<Outcome, Error> {
    enum Job {
        Fan(&'static FanInstance),
        Polytope(&'static PolytopeInstance),
    }
    let jobs: Vec<Job> = corpus::FAN_INSTANCES
        .iter()
        .map(Job::Fan)
        .chain(corpus::POLYTOPE_INSTANCES.iter().map(Job::Polytope))
        .collect();
    let threads = worker_count(jobs.len());

    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<Result<(Value, bool, Vec<String>), Error>>> = Vec::new();
    slots.resize_with(jobs.len(), || None);
    let slots = std::sync::Mutex::new(slots);

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let result = match &jobs[i] {
                    Job::Fan(inst) => verify_corpus_fan(inst, oracle),
                    Job::Polytope(inst) => verify_corpus_polytope(inst),
                };
                slots.lock().expect("verify worker panicked")[i] = Some(result);
            });
        }
    });

    let slots = slots.into_inner().expect("verify worker panicked");
    let mut instances = Vec::new();
    let mut lines = Vec::new();
    let mut all_ok = true;
    for slot in slots {
        let (report, ok, mut sub) = slot.expect("every job ran")?;
        instances.push(report);
        lines.append(&mut sub);
        all_ok &= ok;
    }
    let report = json!({
        "instances": instances,
        "status": if all_ok { "ok" } else { "failed" },
    });
    Ok(Outcome {
        report,
        summary: lines.join("\n"),
        exit: if all_ok { 0 } else { 2 },
    })
}

// --------------------------------------------------------------- examples

fn cmd_examples(name: Option<&str>) -> Result<Outcome, Error> {
    match name {
        None => {
            let fans: Vec<Value> = corpus::FAN_INSTANCES
                .iter()
                .map(|e| json!({ "name": e.name, "about": e.about }))
                .collect();
            let polys: Vec<Value> = corpus::POLYTOPE_INSTANCES
                .iter()
                .map(|e| json!({ "name": e.name, "about": e.about }))
                .collect();
            let mut lines = vec!["fan examples:".to_string()];
            for e in corpus::FAN_INSTANCES {
                lines.push(format!("  {} — {}", e.name, e.about));
            }
            lines.push("polytope examples:".to_string());
            for e in corpus::POLYTOPE_INSTANCES {
                lines.push(format!("  {} — {}", e.name, e.about));
            }
            Ok(Outcome::ok(
                json!({ "fans": fans, "polytopes": polys }),
                lines.join("\n"),
            ))
        }
        Some(name) => {
            if let Some(inst) = corpus::fan_instance(name) {
                let (report, ok, lines) = verify_corpus_fan(inst, false)?;
                return Ok(Outcome {
                    report,
                    summary: lines.join("\n"),
                    exit: if ok { 0 } else { 2 },
                });
            }
            if let Some(inst) = corpus::polytope_instance(name) {
                let (report, ok, lines) = verify_corpus_polytope(inst)?;
                return Ok(Outcome {
                    report,
                    summary: lines.join("\n"),
                    exit: if ok { 0 } else { 2 },
                });
            }
            Err(Error::BadFile {
                path: name.to_string(),
                message: "no built-in example has this name (run `examples` to list them)".into(),
            })
        }
    }
}
