use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use subword_complex::batch::{run_batch, BatchReport};
use subword_complex::braid::{apply_sequence, braid_path, BraidContext, Case, CaseReport, ChainStep};
use subword_complex::coxeter::{
    CoxeterSystem, GroupElement, GroupSpec, Word, DEFAULT_TOLERANCE, DEFAULT_WORD_CAP,
};
use subword_complex::demo::{demo_a3_chain, demo_i2, ChainDemo};
use subword_complex::poset::{build_rho, semilattice_check, RhoPoset, SemilatticeReport};
use subword_complex::simplicial::ComplexSummary;
use subword_complex::subword::SubwordDescriptor;
use subword_complex::Error;

/// Subword complexes of finite Coxeter groups and the effect of braid moves on them.
#[derive(Parser)]
#[command(name = "subword", version)]
struct Cli {
    /// Tolerance for the floating-point matrix representation.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Cap on the number of reduced words enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Δ(Q; π) and report its invariants.
    Complex(ComplexArgs),
    /// Classify one braid move Q w Q' -> Q w' Q'.
    Classify(ClassifyArgs),
    /// Follow a sequence of braid moves, classifying each step.
    Chain(ChainArgs),
    /// Build the poset ρ on the reduced words of π.
    Poset(PosetArgs),
    /// Replay the worked examples.
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
    /// Run the structural checks on a seeded batch of random braid contexts.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GroupArg {
    /// Group name (A3, B3, H3, I2:5, ...) or a JSON group spec file.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct ComplexArgs {
    #[command(flatten)]
    group: GroupArg,
    /// The word Q, as 1-based letters ("1,2,1" or "121").
    #[arg(long)]
    word: String,
    /// Target element as a word, or "w0" for the longest element.
    #[arg(long, default_value = "w0")]
    pi: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long = "Q", default_value = "e")]
    q: String,
    #[arg(long = "Qprime", default_value = "e")]
    q_prime: String,
    /// First letter of the alternating window (1-based).
    #[arg(long)]
    i: usize,
    /// Second letter of the alternating window (1-based).
    #[arg(long)]
    j: usize,
    #[arg(long, default_value = "w0")]
    pi: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Starting word.
    #[arg(long)]
    word: String,
    /// Braid moves as 1-based "position:i:j" items, comma separated.
    #[arg(long, conflicts_with = "to")]
    moves: Option<String>,
    /// Target word, reached by a shortest braid-move path.
    #[arg(long)]
    to: Option<String>,
    #[arg(long, default_value = "w0")]
    pi: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct PosetArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long = "Q", default_value = "e")]
    q: String,
    #[arg(long = "Qprime", default_value = "e")]
    q_prime: String,
    #[arg(long, default_value = "w0")]
    pi: String,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Recorded in the output; the construction itself is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum DemoCommand {
    /// The move s1 s2 ... -> s2 s1 ... in I2(m) with π = w0.
    I2 {
        #[arg(long, default_value_t = 5)]
        m: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Eight reduced words of w0 in A3, from the cube to the associahedron.
    A3Chain {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated group names.
    #[arg(long, default_value = "A3,B3,H3")]
    groups: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// Bound on |Q| + |Q'|.
    #[arg(long, default_value_t = 6)]
    max_outer: usize,
    /// Only draw contexts meeting the hypothesis of the polynomial identity.
    #[arg(long)]
    eligible_only: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Exit codes: 0 success, 2 bad input, 3 verification mismatch.
enum Failure {
    Input(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Env {
    tolerance: f64,
    cap: usize,
}

impl Env {
    fn system(&self, group: &str) -> Result<CoxeterSystem, Error> {
        Ok(CoxeterSystem::new(GroupSpec::resolve(group)?).with_tolerance(self.tolerance))
    }
}

fn word(system: &CoxeterSystem, text: &str) -> Result<Word, Error> {
    let w = Word::parse(text)?;
    w.check_rank(system.rank())?;
    Ok(w)
}

fn target(system: &CoxeterSystem, text: &str) -> Result<GroupElement, Error> {
    if text.eq_ignore_ascii_case("w0") {
        Ok(system.longest_element())
    } else {
        system.element_of(&word(system, text)?)
    }
}

fn generator(system: &CoxeterSystem, one_based: usize) -> Result<usize, Error> {
    if one_based == 0 || one_based > system.rank() {
        return Err(Error::GeneratorOutOfRange { index: one_based, rank: system.rank() });
    }
    Ok(one_based - 1)
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), Error> {
    if let Some(p) = path {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    Ok(std::fs::write(path, text)?)
}

fn tuple<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn print_summary(name: &str, s: &ComplexSummary) {
    if s.facets.is_empty() {
        println!("{name}: void (Q contains no reduced expression of pi)");
        return;
    }
    println!("{name}: f = {}, vertices = {{{}}}", tuple(&s.f), s.vertices.join(" "));
    match (&s.h, &s.gamma) {
        (Some(h), Some(g)) => println!("  h = {}, gamma = {}", tuple(h), tuple(g)),
        (Some(h), None) => println!("  h = {}", tuple(h)),
        _ => {}
    }
    println!("  spherical = {}, flag = {}", s.spherical, s.flag);
}

fn cmd_complex(env: &Env, a: &ComplexArgs) -> Outcome {
    let sys = env.system(&a.group.group)?;
    let q = word(&sys, &a.word)?;
    let pi = target(&sys, &a.pi)?;
    let d = SubwordDescriptor::new(&sys, &q, pi)?;
    let spherical = d.is_spherical()?;
    let summary = d.build()?.summary(spherical);
    println!("Q = {q}");
    print_summary("complex", &summary);
    #[derive(Serialize)]
    struct Out<'a> {
        group: &'a str,
        #[serde(rename = "Q")]
        q: &'a Word,
        #[serde(flatten)]
        summary: &'a ComplexSummary,
    }
    write_json(&a.json, &Out { group: &a.group.group, q: &q, summary: &summary })?;
    if spherical && summary.h.as_ref().is_some_and(|h| !h.iter().eq(h.iter().rev())) {
        return Err(Failure::Mismatch("spherical complex with a non-palindromic h-vector".into()));
    }
    Ok(())
}

fn print_report(r: &CaseReport) {
    let c = &r.conditions;
    println!(
        "move Q = {} | ({},{}) window m = {} | Q' = {}",
        r.q, r.i, r.j, r.m, r.q_prime
    );
    println!("case {}  (A2 = {}, B2 = {}, A3 = {}, B3 = {})", r.case, c.a2, c.b2, c.a3, c.b3);
    print_summary("delta1", &r.delta1);
    print_summary("delta2", &r.delta2);
    if let Some(w) = &r.witness {
        let kind = if w.literal { "literal" } else { "up to relabeling" };
        println!("witness: {} [{}, {kind}]", w.description, if w.verified { "verified" } else { "FAILED" });
    }
    if let Some(p) = &r.polynomials {
        println!("H(delta2) - H(delta1) = {}  [{}]", p.lhs, if p.holds { "ok" } else { "MISMATCH" });
        if let Some(g) = &p.gamma {
            println!("gamma(delta1) - gamma(delta2) = {}  [{}]", g.lhs.scale(-1), if g.holds { "ok" } else { "MISMATCH" });
        }
    }
}

fn report_mismatch(r: &CaseReport) -> Option<String> {
    if r.case != Case::Unsupported && !r.is_verified() {
        return Some(format!("case {} witness did not verify", r.case));
    }
    let p = r.polynomials.as_ref()?;
    if !p.holds || p.gamma.as_ref().is_some_and(|g| !g.holds) {
        return Some("polynomial identity failed".into());
    }
    None
}

fn cmd_classify(env: &Env, a: &ClassifyArgs) -> Outcome {
    let sys = env.system(&a.group.group)?;
    let ctx = BraidContext::new(
        &sys,
        word(&sys, &a.q)?,
        word(&sys, &a.q_prime)?,
        generator(&sys, a.i)?,
        generator(&sys, a.j)?,
        target(&sys, &a.pi)?,
    )?;
    let report = ctx.classify()?;
    print_report(&report);
    write_json(&a.json, &report)?;
    report_mismatch(&report).map_or(Ok(()), |m| Err(Failure::Mismatch(m)))
}

fn parse_moves(system: &CoxeterSystem, text: &str) -> Result<Vec<(usize, usize, usize)>, Error> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let parts: Vec<&str> = item.trim().split(':').collect();
            let nums: Vec<usize> = parts
                .iter()
                .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad move item {item:?}"))))
                .collect::<Result<_, _>>()?;
            match nums[..] {
                [pos, i, j] if pos >= 1 => Ok((pos - 1, generator(system, i)?, generator(system, j)?)),
                _ => Err(Error::Parse(format!("a move is position:i:j, got {item:?}"))),
            }
        })
        .collect()
}

fn print_steps(steps: &[ChainStep]) {
    for (n, s) in steps.iter().enumerate() {
        let r = &s.report;
        println!(
            "step {}: {} -> {} at {}  ({},{}) case {}  f {} -> {}",
            n + 1,
            s.before,
            s.after,
            s.position,
            r.i,
            r.j,
            r.case,
            tuple(&r.delta1.f),
            tuple(&r.delta2.f)
        );
    }
}

fn steps_mismatch(steps: &[ChainStep]) -> Option<String> {
    steps
        .iter()
        .enumerate()
        .find_map(|(n, s)| report_mismatch(&s.report).map(|m| format!("step {}: {m}", n + 1)))
}

fn cmd_chain(env: &Env, a: &ChainArgs) -> Outcome {
    let sys = env.system(&a.group.group)?;
    let start = word(&sys, &a.word)?;
    let pi = target(&sys, &a.pi)?;
    let moves = match (&a.moves, &a.to) {
        (Some(m), None) => parse_moves(&sys, m)?,
        (None, Some(to)) => braid_path(&sys, &start, &word(&sys, to)?, env.cap)?
            .ok_or_else(|| Error::Parse(format!("{to} is not reachable from {start} by braid moves")))?,
        _ => return Err(Error::Parse("give exactly one of --moves and --to".into()).into()),
    };
    let steps = apply_sequence(&sys, &start, &moves, &pi)?;
    print_steps(&steps);
    write_json(&a.json, &steps)?;
    steps_mismatch(&steps).map_or(Ok(()), |m| Err(Failure::Mismatch(m)))
}

fn cmd_poset(env: &Env, a: &PosetArgs) -> Outcome {
    let sys = env.system(&a.group.group)?;
    let (q, qp) = (word(&sys, &a.q)?, word(&sys, &a.q_prime)?);
    let pi = target(&sys, &a.pi)?;
    let rho = build_rho(&sys, &q, &qp, &pi, env.cap)?;
    let lattice = if rho.antisymmetric { Some(semilattice_check(&rho)?) } else { None };

    println!("{} reduced words, {} classes, {} edges", rho.elements.len(), rho.classes.len(), rho.edges.len());
    println!("antisymmetric: {}", rho.antisymmetric);
    for &(x, y) in &rho.violations {
        println!("  violation: {} <= {} and back", class_name(&rho, x), class_name(&rho, y));
    }
    if let Some(l) = &lattice {
        println!("meet-semilattice: {}, join-semilattice: {}", l.meet, l.join);
        if let Some((x, y)) = &l.meet_counterexample {
            println!("  no meet for {x}, {y}");
        }
        if let Some((x, y)) = &l.join_counterexample {
            println!("  no join for {x}, {y}");
        }
    }
    if rho.gaps.checked {
        println!(
            "gap check: {} pairs, {} isomorphic but separate, {} single subdivisions missing",
            rho.gaps.pairs_compared,
            rho.gaps.isomorphic_but_separate.len(),
            rho.gaps.single_subdivision_missing.len()
        );
    }
    println!("unoriented moves: {}, unverified moves: {}", rho.unoriented_moves, rho.unverified_moves);

    #[derive(Serialize)]
    struct Out<'a> {
        seed: u64,
        group: &'a str,
        #[serde(rename = "Q")]
        q: &'a Word,
        #[serde(rename = "Qprime")]
        q_prime: &'a Word,
        poset: &'a RhoPoset,
        hasse: Vec<(usize, usize)>,
        semilattice: &'a Option<SemilatticeReport>,
    }
    let out = Out { seed: a.seed, group: &a.group.group, q: &q, q_prime: &qp, poset: &rho, hasse: rho.hasse(), semilattice: &lattice };
    write_json(&a.json, &out)?;
    if let Some(p) = &a.dot {
        write_text(p, &rho.export_dot())?;
    }
    if rho.unverified_moves > 0 || !rho.mirror_mismatches.is_empty() {
        return Err(Failure::Mismatch(format!(
            "{} unverified moves, {} mirror mismatches",
            rho.unverified_moves,
            rho.mirror_mismatches.len()
        )));
    }
    Ok(())
}

fn class_name(rho: &RhoPoset, class: usize) -> String {
    let words: Vec<String> = rho.classes[class].iter().map(|&k| rho.elements[k].to_string()).collect();
    words.join(" ~ ")
}

fn cmd_demo(which: &DemoCommand) -> Outcome {
    match which {
        DemoCommand::I2 { m, json } => {
            let d = demo_i2(*m)?;
            println!("I2({m}), Q = e, window s1 s2 ..., Q' = e, pi = w0");
            print_report(&d.report);
            write_json(json, &d)?;
            report_mismatch(&d.report).map_or(Ok(()), |m| Err(Failure::Mismatch(m)))
        }
        DemoCommand::A3Chain { json } => {
            let d = demo_a3_chain()?;
            print_chain(&d);
            write_json(json, &d)?;
            steps_mismatch(&d.steps).map_or(Ok(()), |m| Err(Failure::Mismatch(m)))
        }
    }
}

fn print_chain(d: &ChainDemo) {
    println!("{:<11} {:<10} {:<12} {:<20} gamma", "word", "polytope", "f", "vertices");
    for r in &d.rows {
        let gamma = r.gamma.as_ref().map_or("-".to_string(), |g| tuple(g));
        println!("{:<11} {:<10} {:<12} {:<20} {gamma}", r.word.to_string(), r.polytope, tuple(&r.f), tuple(&r.vertices));
    }
    println!("gamma_1 trajectory: {}", tuple(&d.gamma1));
    print_steps(&d.steps);
}

fn cmd_verify(env: &Env, a: &VerifyArgs) -> Outcome {
    let groups = a
        .groups
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|n| Ok((n.to_string(), env.system(n)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let report: BatchReport = run_batch(&groups, a.seed, a.count, a.max_outer, a.eligible_only, a.jobs)?;
    let cases: Vec<String> = report.cases.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    println!("{} contexts (seed {}), cases {{{}}}", report.checks.len(), a.seed, cases.join(", "));
    let swapped = report.checks.iter().filter(|c| c.a2b2_swapped).count();
    println!("A2B2 with the F/G roles exchanged holds on {swapped}/{}", report.checks.len());
    write_json(&a.json, &report)?;
    if report.all_pass() {
        println!("all checks pass");
        return Ok(());
    }
    for (name, n) in &report.failures {
        println!("FAIL {name}: {n}");
    }
    Err(Failure::Mismatch(format!("{} checks failed", report.failures.len())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = Env { tolerance: cli.tolerance, cap: cli.cap };
    let outcome = match &cli.command {
        Command::Complex(a) => cmd_complex(&env, a),
        Command::Classify(a) => cmd_classify(&env, a),
        Command::Chain(a) => cmd_chain(&env, a),
        Command::Poset(a) => cmd_poset(&env, a),
        Command::Demo { which } => cmd_demo(which),
        Command::Verify(a) => cmd_verify(&env, a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("verification mismatch: {m}");
            ExitCode::from(3)
        }
    }
}
