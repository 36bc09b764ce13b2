//! `weakfano`: command-line front end to the verification engine.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage error, 3 internal invariant violation.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use weakfano::chow::{chi, FanoModel, KClass};
use weakfano::classify::{index1_c2_range, q3_candidates, q3_sieve, CandidatePair, Index1Table, Verdict};
use weakfano::cohom::{flag_rgamma, h_pn_line, h_pn_omega, h_q3_line, rgamma_spinor_twist};
use weakfano::dsl::{self, Symbol};
use weakfano::k3::{
    bn_product_violation, hyperelliptic_violation, isotropic_degree_solutions, minus_two_solutions, nef_decompose,
    represent, step4_case_analysis, step4_feasible_cases, LatticeModel, DEFAULT_BUDGET,
};
use weakfano::proj_bundle::BundleOnX;
use weakfano::quiver::{
    destabilizer_candidates, euler_form, kernel_ledger, moduli_dim, theta, DimVector, KroneckerModel,
};
use weakfano::resolutions::{check_exact, ideal_resolution_chain, rgamma_propagate, Sequence};
use weakfano::suites::{run_all, run_suite, Status, Suite, SuiteReport};
use weakfano::Error;

#[derive(Parser)]
#[command(
    name = "weakfano",
    version,
    about = "Exact checks for rank-2 weak Fano bundles on Fano threefolds"
)]
struct Cli {
    /// Emit JSON instead of a human-readable table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classification tables.
    Classify {
        #[command(subcommand)]
        target: ClassifyTarget,
    },
    /// Evaluate a degree-4 expression in xi, H and K on P(E).
    Intersect {
        expr: String,
        #[arg(long, value_enum, default_value_t = Space::Q3)]
        space: Space,
        #[arg(long)]
        genus: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<i64>,
    },
    /// Run a named verification suite, or `all`.
    Verify { suite: String },
    /// K3 Picard-lattice arithmetic.
    K3 {
        #[command(subcommand)]
        cmd: K3Cmd,
    },
    /// Kronecker-quiver numerics.
    Quiver {
        #[command(subcommand)]
        cmd: QuiverCmd,
    },
    /// Cohomology tables and K-theory bookkeeping.
    Cohom {
        #[command(subcommand)]
        cmd: CohomCmd,
    },
}

#[derive(Subcommand)]
enum ClassifyTarget {
    /// Normalized candidates on the quadric threefold.
    Q3 {
        /// Print the full sieve over c2 in [MIN, MAX] for both normalized c1.
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], allow_hyphen_values = true)]
        sieve: Option<Vec<i64>>,
    },
    /// c2 intervals on index-one threefolds with c1 = c1(X).
    Index1 {
        #[arg(long)]
        genus: Option<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Q3,
    Index1,
}

#[derive(Subcommand)]
enum K3Cmd {
    /// Classes of square -2 in a lattice.
    MinusTwo {
        /// Lattice JSON, inline or as a file path.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 50)]
        bound: i64,
    },
    /// Classes of a given square.
    Represent {
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        target: i64,
        #[arg(long, default_value_t = 50)]
        bound: i64,
    },
    /// Isotropic classes on the conic lattice of genus g.
    Isotropic {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        dmax: i64,
    },
    /// Degree inequality analysis; without flags lists the feasible cases.
    Step4 {
        #[arg(long)]
        g: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        m1: Option<i64>,
    },
    /// Split a class into a nef part and (-2)-curves.
    Nef {
        #[arg(long)]
        model: String,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        class: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Brill-Noether checks.
    Bn {
        #[arg(long)]
        genus: i64,
        /// h0(L) and h0(H - L); without it only the hyperelliptic check runs.
        #[arg(long, num_args = 2, value_names = ["H0_L", "H0_H_MINUS_L"])]
        product: Option<Vec<i64>>,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Expected moduli dimension 1 - <v,v>.
    Dim {
        #[arg(long, default_value_t = 5)]
        arrows: u32,
        #[arg(long, default_value = "(7,2)")]
        dimvector: DimVector,
    },
    /// Sub-dimension vectors w <= v with Theta_v(w) >= 0.
    Destabilizers {
        #[arg(long, default_value_t = 5)]
        arrows: u32,
        #[arg(long, default_value = "(7,2)")]
        dimvector: DimVector,
    },
    /// Rank and c1 of the kernel against its dimension-vector ledger.
    Kernel,
}

#[derive(Subcommand)]
enum CohomCmd {
    /// h^i(P^n, O(k)).
    PnLine {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// h^i(P^n, Omega^p(k)).
    PnOmega {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// h^i(Q3, O(k)).
    Q3Line {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// h^i(Q3, S(n)) for the spinor bundle.
    Spinor {
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
    },
    /// h^i of 3L1 - aL2 on the flag variety.
    Flag {
        #[arg(long)]
        a: i64,
    },
    /// Propagate cohomology along the ideal resolution chain.
    Chain,
    /// K-theory exactness of a sequence such as "0 -> O(-1)^5 -> Omega(0) + O -> 0".
    Exact { sequence: String },
    /// chi(E(n)) for a rank-2 class on the quadric.
    Chi {
        #[arg(long, allow_hyphen_values = true)]
        c1: i64,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
}

/// Failure that maps to an exit code.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Ambiguous(_) | Error::NonIntegral(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    json: serde_json::Value,
    human: String,
    passed: bool,
}

impl Output {
    fn ok<T: Serialize>(value: &T, human: String) -> Result<Self, Failure> {
        let json = serde_json::to_value(value).map_err(|e| Failure::Internal(e.to_string()))?;
        Ok(Self {
            json,
            human,
            passed: true,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
                );
            } else {
                print!("{}", out.human);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Classify {
            target: ClassifyTarget::Q3 { sieve },
        } => classify_q3(sieve.as_deref()),
        Command::Classify {
            target: ClassifyTarget::Index1 { genus },
        } => classify_index1(*genus),
        Command::Intersect {
            expr,
            space,
            genus,
            c1,
            c2,
        } => intersect(expr, *space, *genus, *c1, *c2),
        Command::Verify { suite } => verify(suite),
        Command::K3 { cmd } => k3(cmd),
        Command::Quiver { cmd } => quiver(cmd),
        Command::Cohom { cmd } => cohom(cmd),
    }
}

fn candidate_line(p: &CandidatePair) -> String {
    let flag = p.fano_flag.map(|f| format!("{f:?}")).unwrap_or_else(|| "-".into());
    match &p.verdict {
        Verdict::StableCandidate { label, citation } => {
            format!("{:>3} {:>3}  {label:<36} {flag:<17} {citation}", p.c1, p.c2)
        }
        Verdict::SplitType { splittings } => {
            let s: Vec<String> = splittings
                .iter()
                .map(|e| format!("O({})+O({}) {:?}", e.a, e.b, e.verdict))
                .collect();
            format!("{:>3} {:>3}  split: {}", p.c1, p.c2, s.join(", "))
        }
        Verdict::Excluded { reason, rule } => format!("{:>3} {:>3}  excluded ({rule:?}): {reason}", p.c1, p.c2),
    }
}

fn classify_q3(sieve: Option<&[i64]>) -> Result<Output, Failure> {
    let rows = match sieve {
        Some([lo, hi]) if lo <= hi => q3_sieve(*lo, *hi),
        Some(_) => return Err(Failure::Usage("--sieve needs MIN <= MAX".into())),
        None => q3_candidates(),
    };
    let mut human = String::from(" c1  c2  label / verdict\n");
    for p in &rows {
        human.push_str(&candidate_line(p));
        human.push('\n');
    }
    Output::ok(&rows, human)
}

fn index1_human(t: &Index1Table) -> String {
    match t.range {
        None => format!("g={:<2} empty\n", t.genus),
        Some((lo, hi)) => {
            let mut s = format!("g={:<2} c2 in [{lo},{hi}]\n", t.genus);
            for r in &t.rows {
                let _ = writeln!(
                    s,
                    "      d={:<2} s3={:<2} h0={:<2} s3+4<=g: {}",
                    r.d, r.s3, r.h0, r.bn_bound
                );
            }
            s
        }
    }
}

fn classify_index1(genus: Option<i64>) -> Result<Output, Failure> {
    let genera: Vec<i64> = match genus {
        Some(g) => vec![g],
        None => (2..=12).filter(|g| *g != 11).collect(),
    };
    let tables: Vec<Index1Table> = genera.into_iter().map(index1_c2_range).collect::<Result<_, _>>()?;
    let human = tables.iter().map(index1_human).collect();
    Output::ok(&tables, human)
}

fn intersect(
    expr: &str,
    space: Space,
    genus: Option<i64>,
    c1: Option<i64>,
    c2: Option<i64>,
) -> Result<Output, Failure> {
    let parsed = dsl::parse(expr).map_err(Error::from)?;
    let needs_bundle = parsed.mentions(Symbol::Xi) || parsed.mentions(Symbol::K);
    let (c1, c2) = match (c1, c2) {
        (Some(a), Some(b)) => (a, b),
        (None, None) if !needs_bundle => (0, 0),
        _ => {
            return Err(Failure::Usage(
                "expression involves xi or K: pass both --c1 and --c2".into(),
            ))
        }
    };
    let model = match space {
        Space::Q3 => FanoModel::quadric(),
        Space::Index1 => {
            let g = genus.ok_or_else(|| Failure::Usage("--space index1 needs --genus".into()))?;
            FanoModel::index_one(g)?
        }
    };
    let bundle = BundleOnX::new(model, c1, c2);
    let value = dsl::eval_intersection(&parsed, &bundle)?;
    let record = json!({
        "expr": parsed.to_string(),
        "index": model.index(),
        "degree": model.degree(),
        "c1": c1,
        "c2": c2,
        "value": value.to_string(),
    });
    Ok(Output {
        json: record,
        human: format!("{value}\n"),
        passed: true,
    })
}

fn suite_human(r: &SuiteReport) -> String {
    let mut s = format!("== {} ({})\n", r.suite, if r.passed { "pass" } else { "FAIL" });
    for c in &r.records {
        let tag = if c.status == Status::Pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{tag} {:<22} {}", c.id, c.description);
        let _ = writeln!(s, "     computed: {}", c.computed);
        if c.status == Status::Fail || c.computed != c.expected {
            let _ = writeln!(s, "     expected: {}", c.expected);
        }
        let _ = writeln!(s, "     ref:      {}", c.citation);
    }
    s
}

fn verify(name: &str) -> Result<Output, Failure> {
    let reports = if name == "all" {
        run_all()?
    } else {
        let suite: Suite = name.parse().map_err(|_| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            Failure::Usage(format!(
                "unknown suite `{name}`; expected all or one of {}",
                names.join(", ")
            ))
        })?;
        vec![run_suite(suite)?]
    };
    let passed = reports.iter().all(|r| r.passed);
    let human = reports.iter().map(suite_human).collect();
    let json = if name == "all" {
        serde_json::to_value(&reports)
    } else {
        serde_json::to_value(&reports[0])
    }
    .map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Output { json, human, passed })
}

fn load_model(arg: &str) -> Result<LatticeModel, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read model `{arg}`: {e}")))?
    };
    let m: LatticeModel = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad lattice JSON: {e}")))?;
    m.validate()?;
    Ok(m)
}

fn k3(cmd: &K3Cmd) -> Result<Output, Failure> {
    match cmd {
        K3Cmd::MinusTwo { model, bound } => {
            let r = minus_two_solutions(&load_model(model)?, *bound)?;
            let human = format!(
                "{} solutions: {:?}\nguarantee: {:?}\n",
                r.solutions.len(),
                r.solutions,
                r.guarantee
            );
            Output::ok(&r, human)
        }
        K3Cmd::Represent { model, target, bound } => {
            let r = represent(&load_model(model)?, *target, *bound)?;
            let human = format!(
                "{} solutions: {:?}\nguarantee: {:?}\n",
                r.solutions.len(),
                r.solutions,
                r.guarantee
            );
            Output::ok(&r, human)
        }
        K3Cmd::Isotropic { genus, dmax } => {
            let r = isotropic_degree_solutions(*genus, *dmax)?;
            let mut human = format!(
                "g={} square genus: {}; integral degrees {:?}\n",
                r.genus, r.genus_is_square, r.integral_degrees
            );
            for s in &r.rational {
                let _ = writeln!(human, "  d={:<3} a={} b={} integral={}", s.d, s.a, s.b, s.integral);
            }
            Output::ok(&r, human)
        }
        K3Cmd::Step4 { g, d, m1 } => {
            let rows = match (g, d, m1) {
                (Some(g), Some(d), Some(m1)) => vec![step4_case_analysis(*g, *d, *m1)?],
                (None, None, None) => step4_feasible_cases()?,
                _ => return Err(Failure::Usage("pass all of --g, --d, --m1 or none".into())),
            };
            let mut human = String::new();
            for r in &rows {
                let _ = writeln!(
                    human,
                    "(g,d,m1)=({},{},{}) {} < {}: feasible={} E.N={:?} H.N={:?}",
                    r.g, r.d, r.m1, r.lower_product, r.bound, r.feasible, r.forced_e_dot_n, r.forced_h_dot_n
                );
            }
            Output::ok(&rows, human)
        }
        K3Cmd::Nef { model, class, budget } => match nef_decompose(&load_model(model)?, class, *budget) {
            Ok(r) => {
                let human = format!("P = {:?}\nchain = {:?}\n", r.p, r.chain);
                Output::ok(&r, human)
            }
            Err(e @ (Error::HypothesisViolated(_) | Error::BudgetExhausted(_))) => Ok(Output {
                json: json!({ "error": e.to_string() }),
                human: format!("{e}\n"),
                passed: false,
            }),
            Err(e) => Err(e.into()),
        },
        K3Cmd::Bn { genus, product } => {
            let hyper = hyperelliptic_violation(*genus)?;
            let prod = match product.as_deref() {
                Some([a, b]) => Some(bn_product_violation(*genus, *a, *b)?),
                _ => None,
            };
            let human = format!("hyperelliptic violation: {hyper:?}\nproduct violation: {prod:?}\n");
            Output::ok(
                &json!({ "genus": genus, "hyperelliptic_violation": hyper, "product_violation": prod }),
                human,
            )
        }
    }
}

fn quiver(cmd: &QuiverCmd) -> Result<Output, Failure> {
    match cmd {
        QuiverCmd::Dim { arrows, dimvector } => {
            let q = KroneckerModel::new(*arrows)?;
            let dim = moduli_dim(&q, dimvector)?;
            let euler = euler_form(&q, dimvector, dimvector);
            let th = theta(dimvector);
            let human = format!("v={dimvector} <v,v>={euler} dim={dim} theta={th}\n");
            Output::ok(
                &json!({ "arrows": arrows, "dimvector": dimvector, "euler_form": euler, "moduli_dim": dim, "theta": th }),
                human,
            )
        }
        QuiverCmd::Destabilizers { arrows, dimvector } => {
            KroneckerModel::new(*arrows)?;
            let ws = destabilizer_candidates(dimvector);
            let mut human = format!("{} candidates for {dimvector}\n", ws.len());
            for w in &ws {
                let _ = writeln!(human, "  {w}");
            }
            Output::ok(&ws, human)
        }
        QuiverCmd::Kernel => {
            let m = FanoModel::quadric();
            let (k, ledger) = kernel_ledger();
            let (kc, lc) = (k.chern(&m), ledger.chern(&m));
            let human = format!(
                "kernel: rank {} c1 {}\nledger: rank {} c1 {}\nequal in K-theory: {}\n",
                kc.rank,
                kc.c1,
                lc.rank,
                lc.c1,
                k == ledger
            );
            let json = json!({ "kernel": kc, "ledger": lc, "equal": k == ledger });
            Ok(Output {
                json,
                human,
                passed: k == ledger,
            })
        }
    }
}

fn cohom(cmd: &CohomCmd) -> Result<Output, Failure> {
    let graded = |g: weakfano::cohom::GradedDim| -> Result<Output, Failure> {
        let human = format!("{g}\n");
        Output::ok(&g, human)
    };
    match cmd {
        CohomCmd::PnLine { n, k } => graded(h_pn_line(*n, *k)),
        CohomCmd::PnOmega { n, p, k } => graded(h_pn_omega(*n, *p, *k)?),
        CohomCmd::Q3Line { k } => graded(h_q3_line(*k)),
        CohomCmd::Spinor { twist } => graded(rgamma_spinor_twist(*twist)?),
        CohomCmd::Flag { a } => graded(flag_rgamma(*a)?),
        CohomCmd::Chain => {
            let chain = ideal_resolution_chain()?;
            let steps = rgamma_propagate(&chain)?;
            let mut human = String::new();
            for (t, g) in chain.iter().zip(&steps) {
                let _ = writeln!(human, "{:<24} {g}", t.label);
            }
            let json: Vec<_> = chain
                .iter()
                .zip(&steps)
                .map(|(t, g)| json!({ "label": t.label, "rgamma": g }))
                .collect();
            Output::ok(&json, human)
        }
        CohomCmd::Exact { sequence } => {
            let seq: Sequence = sequence.parse()?;
            let r = check_exact(&seq);
            let human = format!(
                "{}\nexact: {}\nresidue: {}\n",
                r.sequence,
                r.exact,
                r.residue.describe()
            );
            let passed = r.exact;
            let mut out = Output::ok(&r, human)?;
            out.passed = passed;
            Ok(out)
        }
        CohomCmd::Chi { c1, c2, twist } => {
            let m = FanoModel::quadric();
            let v = chi(&m, &KClass::rank2(&m, *c1, *c2).twist(*twist, &m));
            Output::ok(
                &json!({ "c1": c1, "c2": c2, "twist": twist, "chi": v.to_string() }),
                format!("{v}\n"),
            )
        }
    }
}
