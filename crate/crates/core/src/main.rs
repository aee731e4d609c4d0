//! Command-line entry point: compute invariants of planar diagrams, evaluate
//! the bundled knot families by three independent routes, and run the
//! verification suites.
//!
//! Exit codes: 0 success (all checks pass for `verify`), 2 input parse
//! failure, 3 resource budget exceeded, 4 usage or range error.

use std::path::Path;
use std::process::exit;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde_json::json;

use homflyzero::diagram::{prime_knot_corpus, Diagram};
use homflyzero::families::{
    anchor, build_family_knot, distinguish, f_closed_form, f_inductive, step_value, table1, Branch,
    KnotFamilySpec, Variant, Verdict,
};
use homflyzero::poly::{HomflyPoly, LaurentPoly};
use homflyzero::skein::{Budget, SkeinEngine};
use homflyzero::surgery::{homology_order, hopf_s3_test, shared_slopes};
use homflyzero::twist::{
    derive_skein_tree, five_twist_step, four_twist_step, three_twist_step, two_twist_opposite,
};
use homflyzero::Error;

#[derive(Parser)]
#[command(
    name = "homflyzero",
    version,
    about = "HOMFLYPT / F-polynomial engine with twist-family calculus"
)]
struct Cli {
    /// Emit a machine-readable JSON record (schema 1).
    #[arg(long, global = true, env = "HOMFLYZERO_JSON")]
    json: bool,

    /// Emit LaTeX where the command supports it.
    #[arg(long, global = true, env = "HOMFLYZERO_LATEX")]
    latex: bool,

    /// Include engine cache/branch counters in the report.
    #[arg(long, global = true, env = "HOMFLYZERO_STATS")]
    stats: bool,

    /// Reject diagrams with more crossings than this during the recursion.
    #[arg(long, global = true, env = "HOMFLYZERO_MAX_CROSSINGS")]
    max_crossings: Option<usize>,

    /// Wall-clock limit in seconds per engine call.
    #[arg(long, global = true, env = "HOMFLYZERO_TIMEOUT")]
    timeout: Option<u64>,

    /// Worker threads for sibling skein branches.
    #[arg(long, global = true, env = "HOMFLYZERO_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of a planar diagram (PD text or a file path).
    Invariant {
        /// Which invariant to compute.
        #[arg(long, value_enum, default_value_t = Which::F)]
        which: Which,
        /// PD code text, or a path to a file containing it.
        input: String,
    },
    /// Evaluate F of the n-th member of a bundled knot family.
    Family {
        /// Family variant.
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Twist parameter.
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Computation route.
        #[arg(long, value_enum, default_value_t = Mode::Inductive)]
        mode: Mode,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Report whether the two family knots at n share the same F.
    Distinguish {
        /// Twist parameter.
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Which {
    Homfly,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "G", alias = "g")]
    G,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::B => Variant::B,
            VariantArg::G => Variant::G,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Mode {
    /// Skein engine on the constructed diagram.
    Direct,
    /// Fixture table plus the five-strand twist recursion.
    Inductive,
    /// Exact branch closed form (n >= 6 or n <= -3).
    ClosedForm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Table1,
    #[value(name = "theoremA1", alias = "theorem-a1")]
    TheoremA1,
    SkeinConsistency,
    TwistLemmas,
    Surgery,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 4 };
            let _ = e.print();
            exit(code);
        }
    };
    let code = run(&cli);
    exit(code);
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidDiagram(_)
        | Error::InvalidCrossing(_)
        | Error::UnknownComponent(_) => 2,
        Error::BudgetExceeded(_) => 3,
        _ => 4,
    }
}

fn engine_from(cli: &Cli) -> SkeinEngine {
    let mut budget = Budget::default();
    if let Some(m) = cli.max_crossings {
        budget.max_crossings = m;
    }
    budget.timeout = cli.timeout.map(Duration::from_secs);
    SkeinEngine::new()
        .with_budget(budget)
        .with_workers(cli.workers.unwrap_or(1))
}

fn run(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Invariant { which, input } => cmd_invariant(cli, *which, input),
        Command::Family { variant, n, mode } => cmd_family(cli, (*variant).into(), *n, *mode),
        Command::Verify { suite } => cmd_verify(cli, *suite),
        Command::Distinguish { n } => cmd_distinguish(cli, *n),
    }
}

// ---------------------------------------------------------------------------
// polynomial rendering

fn latex_laurent(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    let mut exps: Vec<i64> = p.iter().map(|(e, _)| e).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    for e in exps {
        let c = p.coeff(e);
        let mag = if c.sign() == num_bigint::Sign::Minus {
            -c.clone()
        } else {
            c.clone()
        };
        if first {
            if c.sign() == num_bigint::Sign::Minus {
                out.push('-');
            }
            first = false;
        } else if c.sign() == num_bigint::Sign::Minus {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let one = mag == num_bigint::BigInt::from(1);
        match (e, one) {
            (0, _) => out.push_str(&mag.to_string()),
            (1, true) => out.push('v'),
            (1, false) => out.push_str(&format!("{mag}v")),
            (_, true) => out.push_str(&format!("v^{{{e}}}")),
            (_, false) => out.push_str(&format!("{mag}v^{{{e}}}")),
        }
    }
    out
}

fn laurent_terms_json(p: &LaurentPoly) -> serde_json::Value {
    let terms: Vec<_> = p
        .iter()
        .map(|(e, c)| json!({"v": e, "coeff": c.to_string()}))
        .collect();
    json!(terms)
}

fn homfly_terms_json(h: &HomflyPoly) -> serde_json::Value {
    let terms: Vec<_> = h
        .iter()
        .map(|((a, b), c)| json!({"v": a, "z": b, "coeff": c.to_string()}))
        .collect();
    json!(terms)
}

fn stats_json(engine: &SkeinEngine) -> serde_json::Value {
    let s = engine.stats();
    json!({"nodes": s.nodes, "cache_hits": s.hits, "cache_misses": s.misses})
}

// ---------------------------------------------------------------------------
// invariant

fn read_pd_input(input: &str) -> Result<String, Error> {
    let text = if Path::new(input).is_file() {
        std::fs::read_to_string(input)
            .map_err(|e| Error::Parse(format!("cannot read '{input}': {e}")))?
    } else {
        input.to_string()
    };
    Ok(text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(" "))
}

fn cmd_invariant(cli: &Cli, which: Which, input: &str) -> i32 {
    let pd = match read_pd_input(input) {
        Ok(pd) => pd,
        Err(e) => return fail(cli, &e),
    };
    let d: Diagram = match pd.parse() {
        Ok(d) => d,
        Err(e) => return fail(cli, &e),
    };
    let engine = engine_from(cli);
    match which {
        Which::F => match engine.f_polynomial(&d) {
            Ok(f) => {
                let text = f.to_string();
                debug_assert_eq!(text.parse::<LaurentPoly>().unwrap(), f);
                if cli.json {
                    let mut rec = json!({
                        "schema": 1,
                        "command": "invariant",
                        "which": "f",
                        "polynomial": text,
                        "terms": laurent_terms_json(&f),
                    });
                    if cli.stats {
                        rec["stats"] = stats_json(&engine);
                    }
                    println!("{rec}");
                } else if cli.latex {
                    println!("$F = {}$", latex_laurent(&f));
                } else {
                    println!("{text}");
                    if cli.stats {
                        let s = engine.stats();
                        eprintln!(
                            "stats: nodes={} hits={} misses={}",
                            s.nodes, s.hits, s.misses
                        );
                    }
                }
                0
            }
            Err(e) => fail(cli, &e),
        },
        Which::Homfly => match engine.homfly(&d) {
            Ok(h) => {
                let text = h.to_string();
                debug_assert_eq!(text.parse::<HomflyPoly>().unwrap(), h);
                if cli.json {
                    let mut rec = json!({
                        "schema": 1,
                        "command": "invariant",
                        "which": "homfly",
                        "polynomial": text,
                        "terms": homfly_terms_json(&h),
                    });
                    if cli.stats {
                        rec["stats"] = stats_json(&engine);
                    }
                    println!("{rec}");
                } else {
                    println!("{text}");
                    if cli.stats {
                        let s = engine.stats();
                        eprintln!(
                            "stats: nodes={} hits={} misses={}",
                            s.nodes, s.hits, s.misses
                        );
                    }
                }
                0
            }
            Err(e) => fail(cli, &e),
        },
    }
}

fn fail(cli: &Cli, e: &Error) -> i32 {
    if cli.json {
        println!(
            "{}",
            json!({"schema": 1, "error": e.to_string(), "exit": exit_code_for(e)})
        );
    } else {
        eprintln!("error: {e}");
    }
    exit_code_for(e)
}

// ---------------------------------------------------------------------------
// family

fn cmd_family(cli: &Cli, variant: Variant, n: i64, mode: Mode) -> i32 {
    let value: Result<LaurentPoly, Error> = match mode {
        Mode::Direct => {
            let spec = KnotFamilySpec::bundled(variant);
            build_family_knot(&spec, n).and_then(|d| engine_from(cli).f_polynomial(&d))
        }
        Mode::Inductive => Ok(f_inductive(variant, n)),
        Mode::ClosedForm => {
            let branch = if n >= 6 {
                Ok(Branch::Positive)
            } else if n <= -3 {
                Ok(Branch::Negative)
            } else {
                Err(Error::OutOfRange(format!(
                    "closed form covers n >= 6 or n <= -3, got n = {n}"
                )))
            };
            branch.and_then(|b| {
                let spec = KnotFamilySpec::bundled(variant);
                f_closed_form(&spec, b)?.eval(n)
            })
        }
    };
    match value {
        Ok(f) => {
            let text = f.to_string();
            debug_assert_eq!(text.parse::<LaurentPoly>().unwrap(), f);
            let mode_name = match mode {
                Mode::Direct => "direct",
                Mode::Inductive => "inductive",
                Mode::ClosedForm => "closed-form",
            };
            if cli.json {
                let rec = json!({
                    "schema": 1,
                    "command": "family",
                    "variant": match variant { Variant::B => "B", Variant::G => "G" },
                    "n": n,
                    "mode": mode_name,
                    "polynomial": text,
                    "terms": laurent_terms_json(&f),
                });
                println!("{rec}");
            } else if cli.latex {
                println!("$F = {}$", latex_laurent(&f));
            } else {
                println!("{text}");
            }
            0
        }
        Err(e) => fail(cli, &e),
    }
}

// ---------------------------------------------------------------------------
// distinguish

fn cmd_distinguish(cli: &Cli, n: i64) -> i32 {
    let verdict = distinguish(n);
    let (word, detail) = match verdict {
        Verdict::Distinct => ("distinct", "exact F values differ"),
        Verdict::EqualF => ("equal-F", "exact F values coincide"),
        Verdict::OutOfRangeProvenDistinct => {
            ("distinct", "closed-form leading coefficients differ")
        }
    };
    if cli.json {
        println!(
            "{}",
            json!({"schema": 1, "command": "distinguish", "n": n,
                   "verdict": word, "detail": detail})
        );
    } else {
        println!("n = {n}: {word} ({detail})");
    }
    0
}

// ---------------------------------------------------------------------------
// verify

struct Check {
    name: String,
    tag: &'static str,
    pass: bool,
    detail: String,
}

impl Check {
    fn new(
        name: impl Into<String>,
        tag: &'static str,
        pass: bool,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            tag,
            pass,
            detail: detail.into(),
        }
    }
}

fn cmd_verify(cli: &Cli, suite: Suite) -> i32 {
    let (suite_name, checks) = match suite {
        Suite::Table1 => ("table1", verify_table1()),
        Suite::TheoremA1 => ("theoremA1", verify_theorem_a1()),
        Suite::SkeinConsistency => ("skein-consistency", verify_skein_consistency(cli)),
        Suite::TwistLemmas => ("twist-lemmas", verify_twist_lemmas(cli)),
        Suite::Surgery => ("surgery", verify_surgery()),
    };
    let all_pass = checks.iter().all(|c| c.pass);
    if cli.json {
        let rec = json!({
            "schema": 1,
            "command": "verify",
            "suite": suite_name,
            "pass": all_pass,
            "checks": checks.iter().map(|c| json!({
                "name": c.name, "tag": c.tag, "pass": c.pass, "detail": c.detail,
            })).collect::<Vec<_>>(),
        });
        println!("{rec}");
    } else {
        if cli.latex && matches!(suite, Suite::Table1) {
            print_table1_latex();
        }
        for c in &checks {
            println!(
                "{} {} [{}] {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.tag,
                c.detail
            );
        }
        println!(
            "suite {}: {}/{} checks passed",
            suite_name,
            checks.iter().filter(|c| c.pass).count(),
            checks.len()
        );
    }
    if all_pass {
        0
    } else {
        1
    }
}

fn print_table1_latex() {
    println!("\\begin{{tabular}}{{c|l|l}}");
    println!("$n$ & $F_{{K_n}}$ & $F_{{K'_n}}$ \\\\ \\hline");
    let table = table1();
    for (n, (b, g)) in &table {
        println!(
            "${n}$ & ${}$ & ${}$ \\\\",
            latex_laurent(b),
            latex_laurent(g)
        );
    }
    println!("\\end{{tabular}}");
}

/// The fixture table satisfies the five-strand recursion step and shows the
/// expected pattern of coincidences between the two variants.
fn verify_table1() -> Vec<Check> {
    let table = table1();
    let mut checks = Vec::new();
    for variant in [Variant::B, Variant::G] {
        let name = match variant {
            Variant::B => "B",
            Variant::G => "G",
        };
        let pick = |m: i64| {
            let (b, g) = &table[&m];
            match variant {
                Variant::B => b.clone(),
                Variant::G => g.clone(),
            }
        };
        for n in -1..=3 {
            let lhs = pick(n);
            let rhs = &step_value(variant, n) + &pick(n - 1).shifted(-4);
            checks.push(Check::new(
                format!("step_identity_{name}_{n}"),
                "family-recursion",
                lhs == rhs,
                format!("F_{n} = S({n}) + v^-4 F_{}", n - 1),
            ));
        }
    }
    let agree = (-1..=1).all(|n| table[&n].0 == table[&n].1);
    checks.push(Check::new(
        "variant_agreement",
        "table-coincidence",
        agree,
        "variants share F at n in {-1, 0, 1}",
    ));
    let differ = [-2i64, 2, 3].iter().all(|n| table[n].0 != table[n].1);
    checks.push(Check::new(
        "variant_distinct",
        "table-coincidence",
        differ,
        "variants differ at n in {-2, 2, 3}",
    ));
    checks
}

/// Anchors and leading-term structure of both branches' closed forms.
fn verify_theorem_a1() -> Vec<Check> {
    let mut checks = Vec::new();
    for variant in [Variant::B, Variant::G] {
        let name = match variant {
            Variant::B => "B",
            Variant::G => "G",
        };
        checks.push(Check::new(
            format!("anchor_{name}"),
            "family-anchor",
            f_inductive(variant, 5) == anchor(variant),
            "inductive pipeline reproduces the n = 5 anchor",
        ));
        for n in 6..=12i64 {
            let f = f_inductive(variant, n);
            let lead = 6 - 2 * n;
            let c = match variant {
                Variant::B => 2 * n - 2,
                Variant::G => n - 2,
            };
            let rest = &(&f - &LaurentPoly::one()) - &LaurentPoly::monomial(lead, c);
            let ok = f.coeff(0) == 1.into()
                && f.max_exp() == Some(0)
                && f.coeff(lead) == c.into()
                && rest.max_exp().map_or(true, |e| e < lead);
            checks.push(Check::new(
                format!("lead_{name}_{n}"),
                "leading-term",
                ok,
                format!("F - 1 - {c} v^{lead} has only exponents < {lead}"),
            ));
        }
        for n in -8..=-3i64 {
            let f = f_inductive(variant, n);
            let low = -2 * n - 4;
            let c = match variant {
                Variant::B => 1,
                Variant::G => n + 2,
            };
            let rest = &(&f - &LaurentPoly::one()) - &LaurentPoly::monomial(low, c);
            let ok = f.coeff(0) == 1.into()
                && f.min_exp() == Some(0)
                && f.coeff(low) == c.into()
                && rest.min_exp().map_or(true, |e| e > low);
            checks.push(Check::new(
                format!("lead_{name}_{n}"),
                "leading-term",
                ok,
                format!("F - 1 - {c} v^{low} has only exponents > {low}"),
            ));
        }
    }
    checks
}

/// The direct F engine against the z-degree-0 extraction of full HOMFLYPT.
fn verify_skein_consistency(cli: &Cli) -> Vec<Check> {
    let engine = engine_from(cli);
    prime_knot_corpus()
        .iter()
        .map(|(name, d)| {
            let direct = engine.f_polynomial(d);
            let oracle = engine.f_from_homfly(d);
            let (pass, detail) = match (&direct, &oracle) {
                (Ok(a), Ok(b)) if a == b => (true, format!("F({name}) = {a}")),
                (Ok(a), Ok(b)) => (false, format!("{a} != {b}")),
                (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
            };
            Check::new(format!("oracle_{name}"), "engine-oracle", pass, detail)
        })
        .collect()
}

/// Each k-strand step formula on mechanically derived auxiliaries against
/// direct F of the twisted diagram.
fn verify_twist_lemmas(cli: &Cli) -> Vec<Check> {
    let engine = engine_from(cli);
    let mut checks = Vec::new();
    let templates: [(&str, &str); 3] = [
        (
            "k3",
            "TWIST(3; 1 2 3; udu) X(1,4,4,2) X(3,5,5,1) X(2,6,6,3)",
        ),
        (
            "k4",
            "TWIST(4; 1 2 3 4; udud) X(1,5,5,2) X(3,6,6,4) X(2,7,7,3) X(4,8,8,1)",
        ),
        (
            "k5",
            "TWIST(5; 1 2 3 4 5; ududu) X(1,6,6,2) X(3,7,7,4) X(5,8,8,1) X(2,9,9,3) X(4,10,10,5)",
        ),
    ];
    // two antiparallel strands: twist knots, closed form in n
    {
        let t: Diagram = "TWIST(2; 1 2; ud) X(1,2,2,1)".parse().unwrap();
        let run = || -> Result<Vec<Check>, Error> {
            let k1 = t.insert_full_twists(1)?;
            let f_z = engine.f_polynomial(&derive_skein_tree(&k1)?.auxiliaries[0])?;
            let f0 = engine.f_polynomial(&t)?;
            let mut out = Vec::new();
            for n in 1..=2u64 {
                let kn = t.insert_full_twists(n as i64)?;
                let direct = engine.f_polynomial(&kn)?;
                let formula = two_twist_opposite(&f_z, &f0, n);
                out.push(Check::new(
                    format!("k2_step_n{n}"),
                    "twist-step",
                    direct == formula,
                    "two-strand closed form vs direct F",
                ));
            }
            Ok(out)
        };
        match run() {
            Ok(mut c) => checks.append(&mut c),
            Err(e) => checks.push(Check::new("k2_step", "twist-step", false, e.to_string())),
        }
    }
    for (name, pd) in templates {
        let t: Diagram = pd.parse().unwrap();
        for n in 1..=2i64 {
            let run = || -> Result<bool, Error> {
                let kn = t.insert_full_twists(n)?;
                let prev = t.insert_full_twists(n - 1)?;
                let tree = derive_skein_tree(&kn)?;
                let fs: Vec<LaurentPoly> = tree
                    .auxiliaries
                    .iter()
                    .map(|d| engine.f_polynomial(d))
                    .collect::<Result<_, _>>()?;
                let f_prev = engine.f_polynomial(&prev)?;
                let formula = match name {
                    "k3" => three_twist_step(&fs[0], &fs[1], &fs[2], &f_prev),
                    "k4" => four_twist_step(&fs, &f_prev)?,
                    _ => five_twist_step(&fs, &f_prev)?,
                };
                Ok(engine.f_polynomial(&kn)? == formula)
            };
            let (pass, detail) = match run() {
                Ok(ok) => (ok, "step formula vs direct F".to_string()),
                Err(e) => (false, e.to_string()),
            };
            checks.push(Check::new(
                format!("{name}_step_n{n}"),
                "twist-step",
                pass,
                detail,
            ));
        }
    }
    checks
}

/// Slope tuples and the Hopf-link S^3 truth table.
fn verify_surgery() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in -5..=5i64 {
        for lk in [-1i64, 1] {
            let got = shared_slopes(n, lk).unwrap();
            let want = if lk == -1 {
                (n + 1, n + 2, n + 3, 2 * n + 2)
            } else {
                (n - 3, n - 2, n - 1, 2 * n - 2)
            };
            let increasing = got.0 < got.1 && got.1 < got.2;
            checks.push(Check::new(
                format!("slopes_n{n}_lk{lk}"),
                "shared-slopes",
                got == want && increasing,
                format!("{got:?}"),
            ));
        }
    }
    let mut tested = 0u32;
    let mut bad = 0u32;
    for p in -5..=5i64 {
        for q in -5..=5i64 {
            if (p, q) == (0, 0) || p.gcd(&q) != 1 {
                continue;
            }
            for r in -5..=5i64 {
                for s in -5..=5i64 {
                    if (r, s) == (0, 0) || r.gcd(&s) != 1 {
                        continue;
                    }
                    tested += 1;
                    let want = (p * r - q * s).abs() == 1;
                    if hopf_s3_test(p, q, r, s).unwrap() != want {
                        bad += 1;
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "hopf_truth_table",
        "hopf-s3",
        bad == 0,
        format!("{tested} slope pairs, {bad} mismatches"),
    ));
    let mut det_bad = 0u32;
    for p in -10..=10i64 {
        for r in -10..=10i64 {
            let order = homology_order(&[vec![p, 1], vec![1, r]]).unwrap();
            if hopf_s3_test(p, 1, r, 1).unwrap() != (order == 1.into()) {
                det_bad += 1;
            }
        }
    }
    checks.push(Check::new(
        "hopf_vs_homology_order",
        "hopf-s3",
        det_bad == 0,
        format!("441 integer framings, {det_bad} mismatches"),
    ));
    checks
}
