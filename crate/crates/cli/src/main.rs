//! `kacpal`: irreducible representations, idempotents and relation checks for
//! the algebras `H_{n,m}`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use kacpal_core::classifier::idempotent_from_beta;
use kacpal_core::hopf::{CocommutativityWitness, HopfStructure};
use kacpal_core::partitions::row_consecutive_tableau;
use kacpal_core::{
    conjugacy_class_count, irrep_table, labelled_partition_count, lambda_from_beta, Caps,
    CheckReport, Error, GroupAlgebra, IrrepTable, LabelledPartition, TableOptions,
};

#[derive(Parser)]
#[command(name = "kacpal", version, about = "Exact computations in the algebras H_{n,m}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of irreducible representations.
    Table(Common),
    /// Run check families and report pass/fail.
    Verify(Common),
    /// Print the idempotent e_beta for a labelled partition.
    Idempotent(Common),
    /// Number of irreducible representations.
    Count(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Relations,
    Idempotency,
    Ranks,
    Orthogonality,
    Hopf,
    Conjugacy,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Comma-separated check families.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Option<Vec<Check>>,
    /// Labelled partition, e.g. "0:3,2,2;2:1,1,1".
    #[arg(long)]
    beta: Option<String>,
    /// Emit idempotents expanded in the group basis.
    #[arg(long)]
    expanded: bool,
    /// Group-order cap applied to every check.
    #[arg(long, env = "KACPAL_CAP")]
    cap_group_order: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn caps(&self) -> Caps {
        self.cap_group_order.map(Caps::uniform).unwrap_or_default()
    }

    fn has(&self, c: Check) -> bool {
        self.checks.as_ref().is_some_and(|v| v.contains(&c))
    }

    fn validate(&self) -> Result<(), Error> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::InvalidParams {
                n: self.n,
                m: self.m,
                reason: "n and m must be at least 1".into(),
            });
        }
        Ok(())
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { check, .. } => Failure::Usage(format!(
                "{e}; drop the check ({check}) or raise --cap-group-order"
            )),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Output {
    body: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Table(c) => (c, table(c)),
        Command::Verify(c) => (c, verify(c)),
        Command::Idempotent(c) => (c, idempotent(c)),
        Command::Count(c) => (c, count(c)),
    };
    let out = match result {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, &out.body),
        None => std::io::stdout().write_all(out.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn first_failure(report: &CheckReport) -> Option<String> {
    report.failures().next().map(|(name, o)| {
        let mut msg = name.clone();
        if let Some(c) = &o.counterexample {
            let _ = write!(msg, ": {}", c.case);
            if let Some(coord) = &c.coordinate {
                let _ = write!(msg, " at {coord}");
            }
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                let _ = write!(msg, " (lhs {l}, rhs {r})");
            }
        }
        msg
    })
}

fn report_failures(report: &CheckReport) {
    if let Some(msg) = first_failure(report) {
        eprintln!("check failed: {msg}");
    }
}

fn fmt_lambda(l: &[u32]) -> String {
    let parts: Vec<String> = l.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn table_options(c: &Common) -> TableOptions {
    TableOptions {
        caps: c.caps(),
        include_idempotents: c.expanded,
        idempotency: c.has(Check::Idempotency),
        ranks: c.has(Check::Ranks),
        orthogonality: c.has(Check::Orthogonality),
        conjugacy: c.has(Check::Conjugacy),
    }
}

fn render_table(c: &Common, t: &IrrepTable) -> Result<String, Failure> {
    Ok(match c.format {
        Format::Json => to_json(t),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::Usage(e.to_string());
            w.write_record(["beta_spec", "lambda", "dim_formula", "dim_hook", "dim_rank"])
                .map_err(io)?;
            for r in &t.irreps {
                w.write_record([
                    r.beta_spec.clone(),
                    fmt_lambda(&r.lambda),
                    r.dim_formula.to_string(),
                    r.dim_hook.to_string(),
                    r.dim_rank.map(|d| d.to_string()).unwrap_or_default(),
                ])
                .map_err(io)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?)
                .expect("utf8")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "H_{{{},{}}}: {} irreducible representations", t.n, t.m, t.irreps.len());
            let _ = writeln!(s, "{:<24} {:<16} {:>10}", "beta", "lambda", "dimension");
            for r in &t.irreps {
                let rank = r.dim_rank.map(|d| format!(" (rank {d})")).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{:<24} {:<16} {:>10}{rank}",
                    r.beta.to_string(),
                    fmt_lambda(&r.lambda),
                    r.dim_formula
                );
                if let Some(e) = &r.idempotent {
                    let _ = writeln!(s, "  e = {}", render_element(t.n, t.m, e));
                }
            }
            for (name, o) in &t.checks.families {
                let _ = writeln!(s, "check {name}: {}", if o.passed() { "pass" } else { "FAIL" });
            }
            s
        }
    })
}

fn render_element(n: u32, m: usize, e: &kacpal_core::AlgebraElement) -> String {
    let group = kacpal_core::WreathGroup::new(n, m).expect("valid");
    let terms: Vec<String> = e
        .terms()
        .iter()
        .map(|(ix, c)| {
            let u = group.element(*ix).expect("valid index");
            format!("({c})[{:?};{:?}]", u.twists, u.perm.images())
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn table(c: &Common) -> Result<Output, Failure> {
    c.validate()?;
    let t = irrep_table(c.n, c.m, &table_options(c))?;
    report_failures(&t.checks);
    Ok(Output {
        body: render_table(c, &t)?,
        ok: t.checks.all_passed(),
    })
}

#[derive(Serialize)]
struct VerifyOutput {
    n: u32,
    m: usize,
    status: &'static str,
    #[serde(flatten)]
    report: CheckReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<CocommutativityWitness>,
}

fn verify(c: &Common) -> Result<Output, Failure> {
    c.validate()?;
    let checks = c
        .checks
        .clone()
        .unwrap_or_else(|| vec![Check::Relations, Check::Idempotency]);
    let caps = c.caps();
    let mut report = CheckReport::default();
    let mut witnesses = Vec::new();

    let table_checks = [Check::Idempotency, Check::Ranks, Check::Orthogonality, Check::Conjugacy];
    if checks.iter().any(|k| table_checks.contains(k)) {
        let opts = TableOptions {
            caps,
            include_idempotents: false,
            idempotency: checks.contains(&Check::Idempotency),
            ranks: checks.contains(&Check::Ranks),
            orthogonality: checks.contains(&Check::Orthogonality),
            conjugacy: checks.contains(&Check::Conjugacy),
        };
        report.merge("classification.", irrep_table(c.n, c.m, &opts)?.checks);
    }
    if checks.contains(&Check::Relations) {
        let alg = GroupAlgebra::with_caps(c.n, c.m, caps)?;
        report.merge("relations.", alg.verify_defining_relations()?);
    }
    if checks.contains(&Check::Hopf) {
        let order = kacpal_core::WreathGroup::new(c.n, c.m)?.order();
        Caps::require("hopf", order, caps.hopf)?;
        let alg = GroupAlgebra::with_caps(c.n, c.m, caps)?;
        let h = HopfStructure::new(&alg)?.verify()?;
        report.merge("hopf.", h.checks);
        witnesses = h.witnesses;
    }

    let ok = report.all_passed();
    report_failures(&report);
    let body = match c.format {
        Format::Json => to_json(&VerifyOutput {
            n: c.n,
            m: c.m,
            status: if ok { "pass" } else { "fail" },
            report,
            witnesses,
        }),
        Format::Csv => {
            let mut s = String::from("family,status,cases\n");
            for (name, o) in &report.families {
                let _ = writeln!(s, "{name},{},{}", if o.passed() { "pass" } else { "fail" }, o.cases);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (name, o) in &report.families {
                let _ = writeln!(s, "{:<5} {name} ({} cases)", if o.passed() { "pass" } else { "FAIL" }, o.cases);
            }
            for note in &report.notes {
                let _ = writeln!(s, "note: {note}");
            }
            for w in &witnesses {
                let _ = writeln!(
                    s,
                    "witness: Delta(z_{}) - Delta^op(z_{}) has coefficient {} at ({:?},{:?}) (x) ({:?},{:?})",
                    w.l,
                    w.l,
                    w.value,
                    w.left.twists,
                    w.left.perm.images(),
                    w.right.twists,
                    w.right.perm.images()
                );
            }
            s
        }
    };
    Ok(Output { body, ok })
}

fn idempotent(c: &Common) -> Result<Output, Failure> {
    c.validate()?;
    let spec = c
        .beta
        .as_deref()
        .ok_or_else(|| Failure::Usage("--beta is required".into()))?;
    let beta = LabelledPartition::parse_for(c.n, c.m, spec)?;
    let lambda = lambda_from_beta(&beta);
    let body = if c.expanded {
        let alg = GroupAlgebra::with_caps(c.n, c.m, c.caps())?;
        let e = idempotent_from_beta(&alg, &beta)?;
        match c.format {
            Format::Json => to_json(&e),
            _ => format!("{}\n", render_element(c.n, c.m, &e)),
        }
    } else {
        let factors: Vec<_> = beta
            .blocks()
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .map(|(label, b)| {
                json!({
                    "label": label,
                    "offset": beta.offset(label),
                    "tableau": row_consecutive_tableau(b),
                })
            })
            .collect();
        match c.format {
            Format::Json => to_json(&json!({
                "n": c.n,
                "m": c.m,
                "beta": beta.spec(),
                "lambda": lambda,
                "factors": factors,
            })),
            _ => {
                let mut s = format!("e = Lambda_{}", fmt_lambda(&lambda));
                for (label, b) in beta.blocks().iter().enumerate().filter(|(_, b)| !b.is_empty()) {
                    let _ = write!(s, " * iota_{label}(e_T{:?})", row_consecutive_tableau(b).rows());
                }
                s.push('\n');
                s
            }
        }
    };
    Ok(Output { body, ok: true })
}

fn count(c: &Common) -> Result<Output, Failure> {
    c.validate()?;
    let formula = labelled_partition_count(c.n, c.m);
    let classes = if c.has(Check::Conjugacy) {
        Some(conjugacy_class_count(c.n, c.m, c.caps().enumeration)?)
    } else {
        None
    };
    let ok = classes.is_none_or(|k| k as u128 == formula);
    if !ok {
        return Err(Failure::Check(format!(
            "formula gives {formula}, brute force finds {} classes",
            classes.unwrap_or_default()
        )));
    }
    let body = match c.format {
        Format::Json => to_json(&json!({
            "n": c.n,
            "m": c.m,
            "count": formula,
            "conjugacy_classes": classes,
        })),
        Format::Csv => match classes {
            Some(k) => format!("n,m,count,conjugacy_classes\n{},{},{formula},{k}\n", c.n, c.m),
            None => format!("n,m,count\n{},{},{formula}\n", c.n, c.m),
        },
        Format::Text => match classes {
            Some(k) => format!("{formula}\nconjugacy classes: {k}\n"),
            None => format!("{formula}\n"),
        },
    };
    Ok(Output { body, ok })
}
