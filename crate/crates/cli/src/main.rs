use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use ncsym::conjecture::{conjecture_report, ConjectureRow};
use ncsym::graphs::{count_acyclic_unique_sink, MultipartiteGraph, SinkCountBackend};
use ncsym::hopf_monoid::{species_delta, species_mu};
use ncsym::lattice::mobius;
use ncsym::oracle::expand_nc;
use ncsym::text::{parse_ncsym, parse_species, parse_sym, parse_terms};
use ncsym::verify::{parse_suites, run_all, Config, PropertyResult};
use ncsym::{
    Basis, Error, IntegerPartition, NCSymExpr, NCTensorExpr, Rational, SetPartition, SpeciesBasis,
    SpeciesElement, SpeciesTensor, SymExpr,
};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "ncsym",
    version,
    about = "Exact algebra in NCSym, Sym and the Hopf monoid of set partitions"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized law checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Global degree cap.
    #[arg(
        long,
        env = "NCSYM_MAX_DEGREE",
        default_value_t = 8,
        hide_env_values = true
    )]
    max_degree: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    M,
    P,
    E,
    X,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::M => Basis::M,
            BasisArg::P => Basis::P,
            BasisArg::E => Basis::E,
            BasisArg::X => Basis::X,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Chromatic,
    Orientations,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Change of basis.
    Convert {
        expr: String,
        #[arg(long, value_enum)]
        to: BasisArg,
        /// Read the expression as a classical symmetric function.
        #[arg(long)]
        sym: bool,
    },
    /// Product of two expressions, in the basis of the first.
    Product {
        left: String,
        right: String,
        #[arg(long)]
        sym: bool,
    },
    /// Full coproduct, or one species component with --split.
    Coproduct {
        expr: String,
        /// Comma-separated elements of S₁.
        #[arg(long)]
        split: Option<String>,
    },
    /// Möbius function μ(lower, upper) of the partition lattice.
    Mobius { lower: String, upper: String },
    /// Species product and coproduct on explicit ground sets.
    Species {
        #[command(subcommand)]
        op: SpeciesOp,
    },
    /// Chromatic polynomial and acyclic-orientation counts of K_σ.
    Graph {
        sigma: String,
        #[arg(long, default_value_t = 1)]
        sink: u32,
        #[arg(long, value_enum, default_value = "both")]
        backend: BackendArg,
    },
    /// Sign table for the e-expansion of x_⟦n⟧ (reported, not asserted).
    Conjecture {
        #[arg(long, default_value_t = 6)]
        max_n: u32,
    },
    /// Run property suites.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
    /// Compare an expression, or the whole algebra, against polynomial expansions.
    Verify {
        expr: Option<String>,
        /// Number of variables; defaults to the degree.
        #[arg(long)]
        k: Option<u8>,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
    },
}

#[derive(Subcommand)]
enum SpeciesOp {
    /// μ_{S₁,S₂}(a ⊗ b); the ground sets are read from the keys.
    Mu { left: String, right: String },
    /// Δ_{S₁,S₂}(v).
    Delta {
        expr: String,
        #[arg(long)]
        split: String,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Rendered output: text for humans, JSON for tools, and whether every
/// property held.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&r.json).expect("serializable")
                );
            } else {
                println!("{}", r.text);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let (kind, pos, msg) = match f {
                Failure::Usage(m) => ("usage", None, m),
                Failure::Lib(Error::Parse { pos, msg }) => ("parse", Some(pos), msg),
                Failure::Lib(Error::Domain(m)) => ("domain", None, m),
            };
            if cli.json {
                let v = json!({"error": {"kind": kind, "position": pos, "message": msg}});
                println!("{v}");
            }
            match pos {
                Some(p) => eprintln!("error: {kind} error at position {p}: {msg}"),
                None => eprintln!("error: {msg}"),
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let cap = cli.max_degree;
    match &cli.command {
        Command::Convert { expr, to, sym } => {
            let to = Basis::from(*to);
            if *sym {
                let v = parse_sym(expr)?;
                check_degree(v.max_degree(), cap)?;
                Ok(sym_report("convert", &v.convert(to)))
            } else {
                let v = parse_ncsym(expr)?;
                check_degree(v.max_degree() as u32, cap)?;
                Ok(ncsym_report("convert", &v.convert(to)))
            }
        }
        Command::Product { left, right, sym } => {
            if *sym {
                let (a, b) = (parse_sym(left)?, parse_sym(right)?);
                check_degree(a.max_degree() + b.max_degree(), cap)?;
                Ok(sym_report("product", &a.product(&b)))
            } else {
                let (a, b) = (parse_ncsym(left)?, parse_ncsym(right)?);
                check_degree((a.max_degree() + b.max_degree()) as u32, cap)?;
                Ok(ncsym_report("product", &a.product(&b)))
            }
        }
        Command::Coproduct { expr, split } => {
            let v = parse_ncsym(expr)?;
            check_degree(v.max_degree() as u32, cap)?;
            match split {
                None => Ok(tensor_report("coproduct", &v.coproduct())),
                Some(s1) => {
                    let n = homogeneous_degree(&v)?;
                    let v = match SpeciesBasis::from_basis(v.basis()) {
                        Some(_) => v,
                        None => v.convert(Basis::P),
                    };
                    let ground: Vec<u32> = (1..=n).collect();
                    let (s1, s2) = parse_split(s1, &ground)?;
                    let sv = SpeciesElement::from_ncsym(&v, n)?;
                    Ok(species_tensor_report(
                        "coproduct",
                        &species_delta(&s1, &s2, &sv)?,
                    ))
                }
            }
        }
        Command::Mobius { lower, upper } => {
            let (b, a): (SetPartition, SetPartition) = (lower.parse()?, upper.parse()?);
            check_degree(a.size() as u32, cap)?;
            let m = mobius(&b, &a)?;
            Ok(Report {
                text: m.to_string(),
                json: json!({"command": "mobius", "lower": blocks(&b), "upper": blocks(&a), "value": m.to_string()}),
                ok: true,
            })
        }
        Command::Species { op } => match op {
            SpeciesOp::Mu { left, right } => {
                let a = parse_species(left, &infer_ground(left)?)?;
                let b = parse_species(right, &infer_ground(right)?)?;
                check_degree((a.ground().len() + b.ground().len()) as u32, cap)?;
                let b = if b.basis() == a.basis() {
                    b
                } else {
                    b.convert(a.basis())
                };
                let out = species_mu(a.ground(), b.ground(), &a, &b)?;
                Ok(species_report("species-mu", &out))
            }
            SpeciesOp::Delta { expr, split } => {
                let ground = infer_ground(expr)?;
                check_degree(ground.len() as u32, cap)?;
                let v = parse_species(expr, &ground)?;
                let (s1, s2) = parse_split(split, &ground)?;
                Ok(species_tensor_report(
                    "species-delta",
                    &species_delta(&s1, &s2, &v)?,
                ))
            }
        },
        Command::Graph {
            sigma,
            sink,
            backend,
        } => {
            let sigma: SetPartition = sigma.parse()?;
            check_degree(sigma.size() as u32, cap)?;
            graph_report(&sigma, *sink, *backend)
        }
        Command::Conjecture { max_n } => {
            if *max_n == 0 {
                return Err(Failure::Usage("--max-n must be at least 1".into()));
            }
            check_degree(*max_n, cap)?;
            Ok(conjecture_output(*max_n))
        }
        Command::Check { suite, max_n } => {
            check_degree(*max_n, cap)?;
            let suites = parse_suites(suite)
                .map_err(|_| Failure::Usage(format!("unknown suite `{suite}`")))?;
            let results = run_all(
                &suites,
                &Config {
                    max_n: *max_n,
                    seed: cli.seed,
                },
            );
            Ok(check_report("check", &results))
        }
        Command::Verify { expr, k, max_n } => match expr {
            None => {
                check_degree(*max_n, cap)?;
                let results = run_all(
                    &[ncsym::verify::Suite::Oracle],
                    &Config {
                        max_n: *max_n,
                        seed: cli.seed,
                    },
                );
                Ok(check_report("verify", &results))
            }
            Some(e) => {
                let v = parse_ncsym(e)?;
                check_degree(v.max_degree() as u32, cap)?;
                let k = k.unwrap_or(v.max_degree().max(1) as u8);
                verify_expression(&v, k)
            }
        },
    }
}

fn check_degree(n: u32, cap: u32) -> Result<(), Failure> {
    if n > cap {
        Err(Failure::Usage(format!(
            "degree {n} exceeds the cap {cap} (raise NCSYM_MAX_DEGREE to allow it)"
        )))
    } else {
        Ok(())
    }
}

fn homogeneous_degree(v: &NCSymExpr) -> Result<u32, Failure> {
    let mut degrees = v.terms().into_iter().map(|(pi, _)| pi.size() as u32);
    let first = degrees.next().unwrap_or(0);
    if degrees.all(|d| d == first) {
        Ok(first)
    } else {
        Err(Failure::Usage(
            "--split needs a homogeneous expression".into(),
        ))
    }
}

fn parse_split(s1: &str, ground: &[u32]) -> Result<(Vec<u32>, Vec<u32>), Failure> {
    let mut left = Vec::new();
    for tok in s1.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let e: u32 = tok
            .parse()
            .map_err(|_| Failure::Usage(format!("invalid split element `{tok}`")))?;
        if !ground.contains(&e) || left.contains(&e) {
            return Err(Failure::Usage(format!(
                "split element {e} is not in the ground set {ground:?} or is repeated"
            )));
        }
        left.push(e);
    }
    left.sort_unstable();
    let right = ground
        .iter()
        .copied()
        .filter(|e| !left.contains(e))
        .collect();
    Ok((left, right))
}

/// Ground set of the first keyed term.
fn infer_ground(s: &str) -> Result<Vec<u32>, Failure> {
    for t in parse_terms(s)? {
        if let Some((_, text, _)) = t.key {
            let pi: SetPartition = text.parse()?;
            return Ok(pi.ground());
        }
    }
    Ok(Vec::new())
}

fn rational_json(c: &Rational) -> (String, String) {
    (c.numer().to_string(), c.denom().to_string())
}

fn blocks(pi: &SetPartition) -> Value {
    json!(pi.blocks())
}

fn term_json(basis: Basis, key: Value, c: &Rational) -> Value {
    let (n, d) = rational_json(c);
    json!({"basis": basis.to_string(), "blocks": key, "numerator": n, "denominator": d})
}

fn tensor_term_json(basis: Basis, l: &SetPartition, r: &SetPartition, c: &Rational) -> Value {
    let (n, d) = rational_json(c);
    json!({"basis": basis.to_string(), "left": blocks(l), "right": blocks(r), "numerator": n, "denominator": d})
}

fn ncsym_report(command: &str, v: &NCSymExpr) -> Report {
    let terms: Vec<Value> = v
        .terms()
        .into_iter()
        .map(|(pi, c)| term_json(v.basis(), blocks(pi), c))
        .collect();
    Report {
        text: v.to_string(),
        json: json!({"command": command, "kind": "ncsym", "text": v.to_string(), "terms": terms}),
        ok: true,
    }
}

fn sym_report(command: &str, v: &SymExpr) -> Report {
    let terms: Vec<Value> = v
        .terms()
        .into_iter()
        .map(|(l, c): (&IntegerPartition, &Rational)| term_json(v.basis(), json!(l.parts()), c))
        .collect();
    Report {
        text: v.to_string(),
        json: json!({"command": command, "kind": "sym", "text": v.to_string(), "terms": terms}),
        ok: true,
    }
}

fn tensor_report(command: &str, t: &NCTensorExpr) -> Report {
    let terms: Vec<Value> = t
        .terms()
        .into_iter()
        .map(|((l, r), c)| tensor_term_json(t.basis(), l, r, c))
        .collect();
    Report {
        text: t.to_string(),
        json: json!({"command": command, "kind": "tensor", "text": t.to_string(), "terms": terms}),
        ok: true,
    }
}

fn species_report(command: &str, v: &SpeciesElement) -> Report {
    let basis = v.basis().to_basis();
    let terms: Vec<Value> = v
        .terms()
        .into_iter()
        .map(|(pi, c)| term_json(basis, blocks(pi), c))
        .collect();
    Report {
        text: v.to_string(),
        json: json!({"command": command, "kind": "species", "ground": v.ground(), "text": v.to_string(), "terms": terms}),
        ok: true,
    }
}

fn species_tensor_report(command: &str, t: &SpeciesTensor) -> Report {
    let basis = t.basis().to_basis();
    let terms: Vec<Value> = t
        .terms()
        .into_iter()
        .map(|((l, r), c)| tensor_term_json(basis, l, r, c))
        .collect();
    Report {
        text: t.to_string(),
        json: json!({
            "command": command,
            "kind": "species-tensor",
            "left_ground": t.left_ground(),
            "right_ground": t.right_ground(),
            "text": t.to_string(),
            "terms": terms,
        }),
        ok: true,
    }
}

fn graph_report(sigma: &SetPartition, sink: u32, backend: BackendArg) -> Result<Report, Failure> {
    let g = MultipartiteGraph::new(sigma.clone())?;
    let chi = g.chromatic_polynomial();
    let coeffs: Vec<String> = chi
        .monomial_coefficients()
        .iter()
        .map(ToString::to_string)
        .collect();
    let backends: Vec<(&str, SinkCountBackend)> = match backend {
        BackendArg::Chromatic => vec![("chromatic", SinkCountBackend::Chromatic)],
        BackendArg::Orientations => vec![("orientations", SinkCountBackend::Orientations)],
        BackendArg::Both => vec![
            ("chromatic", SinkCountBackend::Chromatic),
            ("orientations", SinkCountBackend::Orientations),
        ],
    };
    let mut counts = Vec::new();
    for (name, b) in backends {
        counts.push((name, count_acyclic_unique_sink(sigma, sink, b)?));
    }
    let agree = counts.windows(2).all(|w| w[0].1 == w[1].1);
    let mut text = format!(
        "K_{{{sigma}}}: {} vertices, {} edges\nchromatic polynomial coefficients (k^0, k^1, ...): [{}]\n(χ/k)(0) = {}",
        g.vertex_count(),
        g.edges().len(),
        coeffs.join(", "),
        chi.reduced_at_zero()
    );
    for (name, c) in &counts {
        text.push_str(&format!(
            "\nacyclic orientations with unique sink {sink} ({name}): {c}"
        ));
    }
    let json = json!({
        "command": "graph",
        "sigma": blocks(sigma),
        "vertices": g.vertex_count(),
        "edges": g.edges().len(),
        "chromatic_coefficients": coeffs,
        "reduced_at_zero": chi.reduced_at_zero().to_string(),
        "sink": sink,
        "counts": counts.iter().map(|(n, c)| json!({"backend": n, "count": c.to_string()})).collect::<Vec<_>>(),
        "backends_agree": agree,
    });
    Ok(Report {
        text,
        json,
        ok: agree,
    })
}

fn sign_word(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

fn row_json(r: &ConjectureRow) -> Value {
    json!({
        "n": r.n,
        "coefficients": r.coefficients,
        "positive": r.positive,
        "negative": r.negative,
        "zero": r.zero,
        "min": r.min.to_string(),
        "max": r.max.to_string(),
        "predicted_sign": r.predicted_sign,
        "consistent": r.consistent_with_conjecture(),
        "violations": r.violations.iter().map(|(s, c)| json!({"sigma": blocks(s), "coefficient": c.to_string()})).collect::<Vec<_>>(),
        "internal_agreement": r.internal_agreement,
        "sym_e_sign": r.sym_sign.map(|p| if p { 1 } else { -1 }),
    })
}

fn conjecture_output(max_n: u32) -> Report {
    let report = conjecture_report(max_n);
    let mut text = String::from(
        "CONJECTURE: nonzero coefficients of x_[[n]] in the e-basis have sign (-1)^(n-1).\n\
         This table reports observations; it does not assert the conjecture.\n\n",
    );
    text.push_str(&format!(
        "{:>2} {:>7} {:>6} {:>6} {:>6} {:>10} {:>10} {:>5} {:>10} {:>8} {:>6}\n",
        "n", "coeffs", "pos", "neg", "zero", "min", "max", "pred", "consistent", "internal", "Sym"
    ));
    for r in &report.rows {
        let sym = match r.sym_sign {
            Some(true) => "e-pos",
            Some(false) => "e-neg",
            None => "mixed",
        };
        text.push_str(&format!(
            "{:>2} {:>7} {:>6} {:>6} {:>6} {:>10} {:>10} {:>5} {:>10} {:>8} {:>6}\n",
            r.n,
            r.coefficients,
            r.positive,
            r.negative,
            r.zero,
            r.min.to_string(),
            r.max.to_string(),
            sign_word(r.predicted_sign),
            if r.consistent_with_conjecture() {
                "yes"
            } else {
                "NO"
            },
            if r.internal_agreement {
                "ok"
            } else {
                "MISMATCH"
            },
            sym,
        ));
        for (s, c) in &r.violations {
            text.push_str(&format!("   violation: e{{{s}}} has coefficient {c}\n"));
        }
    }
    let consistent = report.internally_consistent();
    text.push_str(&format!(
        "\ninternal consistency (interval sum vs change of basis): {}",
        if consistent { "PASS" } else { "FAIL" }
    ));
    let json = json!({
        "command": "conjecture",
        "label": "CONJECTURE",
        "internally_consistent": consistent,
        "rows": report.rows.iter().map(row_json).collect::<Vec<_>>(),
    });
    Report {
        text,
        json,
        ok: consistent,
    }
}

fn check_report(command: &str, results: &[PropertyResult]) -> Report {
    let mut text = String::new();
    for r in results {
        text.push_str(&format!(
            "{} [{}] {} ({} cases)",
            if r.passed() { "PASS" } else { "FAIL" },
            r.suite,
            r.property,
            r.cases
        ));
        if let Some(f) = &r.failure {
            text.push_str(&format!("\n    counterexample: {f}"));
        }
        text.push('\n');
    }
    let ok = results.iter().all(PropertyResult::passed);
    let failed = results.iter().filter(|r| !r.passed()).count();
    text.push_str(&format!("{} properties, {} failed", results.len(), failed));
    let json = json!({
        "command": command,
        "passed": ok,
        "results": results.iter().map(|r| json!({
            "suite": r.suite.name(),
            "property": r.property,
            "cases": r.cases,
            "passed": r.passed(),
            "failure": r.failure,
        })).collect::<Vec<_>>(),
    });
    Report { text, json, ok }
}

/// Expands `v` in every basis and compares each against the direct oracle
/// expansion of the input.
fn verify_expression(v: &NCSymExpr, k: u8) -> Result<Report, Failure> {
    let mut want = None;
    for (pi, c) in v.terms() {
        let poly = expand_nc(v.basis(), pi, k)?;
        let mut acc = want
            .take()
            .unwrap_or_else(|| ncsym::oracle::NCPolynomial::zero(k));
        acc.add_scaled(&poly, c);
        want = Some(acc);
    }
    let want = want.unwrap_or_else(|| ncsym::oracle::NCPolynomial::zero(k));
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for b in Basis::ALL {
        let converted = v.convert(b);
        let agree = converted.to_polynomial(k)? == want;
        ok &= agree;
        lines.push(format!(
            "{} {b}: {converted}",
            if agree { "PASS" } else { "FAIL" }
        ));
        rows.push(json!({"basis": b.to_string(), "text": converted.to_string(), "agrees": agree}));
    }
    let nonzero = want.terms().filter(|(_, c)| !c.is_zero()).count();
    lines.push(format!("oracle: {nonzero} words in {k} variables"));
    Ok(Report {
        text: lines.join("\n"),
        json: json!({"command": "verify", "variables": k, "words": nonzero, "passed": ok, "bases": rows}),
        ok,
    })
}
