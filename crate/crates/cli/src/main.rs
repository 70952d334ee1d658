//! Command-line front end: construct Schubert codes over GF(q), list
//! their points, print generator matrices, compute exhaustive weight
//! spectra and minimum-weight censuses, and run the verification
//! battery comparing every closed-form value against the enumerative
//! oracles.
//!
//! Exit codes: 0 success, 1 verification failure (or internal error),
//! 2 budget exhaustion, 3 malformed input.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use schubert_codes::code::SchubertCode;
use schubert_codes::gf::FieldSpec;
use schubert_codes::schubert::{
    count_subspaces_bruteforce, count_subspaces_formula, enumerate_points, k_alpha,
    m_alpha_formula, n_alpha, DimSeq,
};
use schubert_codes::verify::{
    census_count_verified, verify_instance, verify_subspace_counts, verify_sweep, Check, CheckSet,
    CheckStatus, VerifyReport,
};
use schubert_codes::{Budget, Error, DEFAULT_MESSAGE_BUDGET, DEFAULT_SUBSPACE_BUDGET};

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_MALFORMED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Construct and verify Schubert codes over GF(q)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form parameters of an instance; no enumeration is run
    Params {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The points of the variety, in canonical cell order
    Points {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Generator matrix (reduced row echelon form of the evaluation matrix)
    Genmat {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exhaustive weight distribution
    Spectrum {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Minimum-weight census with family classification tallies
    Minwords {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the verification battery on one instance or on a sweep
    Verify {
        /// Field order(s), "p" or "p^e"; comma-separated for sweeps
        #[arg(long)]
        q: String,
        /// Dimension sequence (instance mode), e.g. "2,4"
        #[arg(long)]
        alpha: Option<String>,
        /// Ambient dimension (instance mode)
        #[arg(long)]
        m: Option<usize>,
        /// Optional cross-check: expected length of alpha
        #[arg(long)]
        ell: Option<usize>,
        /// Sweep mode: every legal sequence with ambient dimension <= max-m
        #[arg(long)]
        max_m: Option<usize>,
        /// Seed for the sampled structural checks; echoed in the report
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Count subspaces with a fixed intersection against a coordinate
    /// prefix, by formula and optionally by brute force
    SubspaceCount {
        /// Field order, "p" or "p^e"
        #[arg(long)]
        q: String,
        /// Ambient dimension
        #[arg(long)]
        b: Option<usize>,
        /// Prefix dimension
        #[arg(long)]
        a: Option<usize>,
        /// Required intersection dimension with the prefix
        #[arg(long)]
        r: Option<usize>,
        /// Dimension of the counted subspaces
        #[arg(long)]
        u: Option<usize>,
        /// Also enumerate and compare
        #[arg(long)]
        check: bool,
        /// Suite mode: every legal shape with ambient dimension <= max-b
        #[arg(long)]
        max_b: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Field order, "p" or "p^e"
    #[arg(long)]
    q: String,
    /// Ambient dimension
    #[arg(long)]
    m: usize,
    /// Dimension sequence, comma separated, e.g. "2,4"
    #[arg(long)]
    alpha: String,
    /// Optional cross-check: expected length of alpha
    #[arg(long)]
    ell: Option<usize>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Cap on exhaustive codeword walks (q^k messages)
    #[arg(long, default_value_t = DEFAULT_MESSAGE_BUDGET)]
    budget_messages: u64,
    /// Cap on subspace and point enumerations
    #[arg(long, default_value_t = DEFAULT_SUBSPACE_BUDGET)]
    budget_subspaces: u64,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Other(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Other(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Other(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> CliError {
        CliError::Other(e.to_string())
    }
}

fn exit_code_for(e: &CliError) -> u8 {
    match e {
        CliError::Core(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
        CliError::Core(
            Error::Parse(_)
            | Error::NonPrime(_)
            | Error::OrderTooLarge(_)
            | Error::BadExtensionDegree
            | Error::NotStrictlyIncreasing
            | Error::OutOfRange(_)
            | Error::BadGrassmannian(..)
            | Error::DimensionMismatch { .. },
        ) => EXIT_MALFORMED,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                EXIT_OK
            } else {
                EXIT_MALFORMED
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, CliError> {
    match cmd {
        Cmd::Params { instance, out } => cmd_params(&instance, &out),
        Cmd::Points {
            instance,
            budget,
            out,
        } => cmd_points(&instance, &budget.to_budget(), &out),
        Cmd::Genmat {
            instance,
            budget,
            out,
        } => cmd_genmat(&instance, &budget.to_budget(), &out),
        Cmd::Spectrum {
            instance,
            budget,
            out,
        } => cmd_spectrum(&instance, &budget.to_budget(), &out),
        Cmd::Minwords {
            instance,
            budget,
            out,
        } => cmd_minwords(&instance, &budget.to_budget(), &out),
        Cmd::Verify {
            q,
            alpha,
            m,
            ell,
            max_m,
            seed,
            budget,
            out,
        } => cmd_verify(
            &q,
            alpha.as_deref(),
            m,
            ell,
            max_m,
            seed,
            &budget.to_budget(),
            &out,
        ),
        Cmd::SubspaceCount {
            q,
            b,
            a,
            r,
            u,
            check,
            max_b,
            budget,
            out,
        } => cmd_subspace_count(&q, b, a, r, u, check, max_b, &budget.to_budget(), &out),
    }
}

impl BudgetArgs {
    fn to_budget(&self) -> Budget {
        Budget {
            messages: self.budget_messages,
            subspaces: self.budget_subspaces,
        }
    }
}

impl InstanceArgs {
    fn resolve(&self) -> Result<(FieldSpec, DimSeq), Error> {
        let spec = FieldSpec::parse(&self.q)?;
        let alpha = parse_alpha(&self.alpha)?;
        check_ell(self.ell, alpha.len())?;
        let ds = DimSeq::new(self.m, &alpha)?;
        Ok((spec, ds))
    }
}

fn parse_alpha(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad alpha entry {t:?}")))
        })
        .collect()
}

fn check_ell(ell: Option<usize>, alpha_len: usize) -> Result<(), Error> {
    match ell {
        Some(e) if e != alpha_len => Err(Error::Parse(format!(
            "--ell {e} disagrees with the alpha length {alpha_len}"
        ))),
        _ => Ok(()),
    }
}

fn emit(out: &OutputArgs, text: String) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Other(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Other(e.to_string()))
}

fn alpha_text(ds: &DimSeq) -> String {
    ds.alpha()
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

// ---------------------------------------------------------------- params

fn cmd_params(instance: &InstanceArgs, out: &OutputArgs) -> Result<u8, CliError> {
    let (spec, ds) = instance.resolve()?;
    let q = spec.q() as u64;
    let n = n_alpha(&ds, q);
    let k = k_alpha(&ds);
    let d = BigUint::from(q).pow(ds.delta() as u32);
    let max_section = &n - &d;
    let m_formula = m_alpha_formula(&ds, q);
    let jumps = ds.jump_spots().to_vec();

    let text = match out.format {
        Format::Text => format!(
            "q = {q}\nm = {m}\nell = {ell}\nalpha = {alpha}\nn = {n}\nk = {k}\ndelta = {delta}\n\
             min_distance = {d}\nu = {u}\njump_spots = {jumps}\n\
             min_word_count_formula = {m_formula}\nmax_hyperplane_section = {max_section}\n",
            m = ds.m(),
            ell = ds.ell(),
            alpha = alpha_text(&ds),
            delta = ds.delta(),
            u = ds.u(),
            jumps = jumps
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        Format::Json => to_json_text(&json!({
            "q": q,
            "m": ds.m(),
            "ell": ds.ell(),
            "alpha": ds.alpha(),
            "n": n.to_string(),
            "k": k.to_string(),
            "delta": ds.delta(),
            "min_distance": d.to_string(),
            "u": ds.u(),
            "jump_spots": jumps,
            "min_word_count_formula": m_formula.to_string(),
            "max_hyperplane_section": max_section.to_string(),
        })),
        Format::Csv => {
            let rows = vec![
                vec!["q".into(), q.to_string()],
                vec!["m".into(), ds.m().to_string()],
                vec!["ell".into(), ds.ell().to_string()],
                vec!["alpha".into(), alpha_text(&ds)],
                vec!["n".into(), n.to_string()],
                vec!["k".into(), k.to_string()],
                vec!["delta".into(), ds.delta().to_string()],
                vec!["min_distance".into(), d.to_string()],
                vec!["u".into(), ds.u().to_string()],
                vec![
                    "jump_spots".into(),
                    jumps
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                ],
                vec!["min_word_count_formula".into(), m_formula.to_string()],
                vec!["max_hyperplane_section".into(), max_section.to_string()],
            ];
            csv_table(&["key", "value"], &rows)?
        }
    };
    emit(out, text)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- points

fn cmd_points(instance: &InstanceArgs, budget: &Budget, out: &OutputArgs) -> Result<u8, CliError> {
    let (spec, ds) = instance.resolve()?;
    let points = enumerate_points(&ds, &spec, budget.subspaces)?;
    let q = spec.q();

    let text = match out.format {
        Format::Text => {
            let mut s = format!(
                "# {} points of the variety for q={q} m={} alpha={}\n",
                points.len(),
                ds.m(),
                alpha_text(&ds)
            );
            for (i, p) in points.iter().enumerate() {
                let beta = p
                    .beta
                    .iter()
                    .map(|b| b.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                s.push_str(&format!("point {i} beta={beta}\n"));
                for r in 0..p.matrix.rows() {
                    let row = p
                        .matrix
                        .row(r)
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    s.push_str(&format!("  {row}\n"));
                }
            }
            s
        }
        Format::Json => {
            let pts: Vec<serde_json::Value> = points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let rows: Vec<Vec<u64>> = (0..p.matrix.rows())
                        .map(|r| p.matrix.row(r).iter().map(|e| e.0 as u64).collect())
                        .collect();
                    json!({ "index": i, "beta": p.beta, "rows": rows })
                })
                .collect();
            to_json_text(&json!({
                "q": q,
                "m": ds.m(),
                "alpha": ds.alpha(),
                "count": points.len(),
                "points": pts,
            }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let beta = p
                        .beta
                        .iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    let mat = (0..p.matrix.rows())
                        .map(|r| {
                            p.matrix
                                .row(r)
                                .iter()
                                .map(|e| e.to_string())
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect::<Vec<_>>()
                        .join("|");
                    vec![i.to_string(), beta, mat]
                })
                .collect();
            csv_table(&["index", "beta", "rows"], &rows)?
        }
    };
    emit(out, text)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- genmat

fn cmd_genmat(instance: &InstanceArgs, budget: &Budget, out: &OutputArgs) -> Result<u8, CliError> {
    let (spec, ds) = instance.resolve()?;
    let code = SchubertCode::build(&ds, &spec, budget)?;
    let gen = code.gen_matrix();

    let text = match out.format {
        Format::Text => gen.to_text(spec.q()),
        Format::Json => {
            let entries: Vec<Vec<u64>> = (0..gen.rows())
                .map(|r| gen.row(r).iter().map(|e| e.0 as u64).collect())
                .collect();
            to_json_text(&json!({
                "q": spec.q(),
                "rows": gen.rows(),
                "cols": gen.cols(),
                "entries": entries,
            }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = (0..gen.rows())
                .map(|r| gen.row(r).iter().map(|e| e.to_string()).collect())
                .collect();
            let header: Vec<String> = (0..gen.cols()).map(|c| format!("c{c}")).collect();
            let header_refs: Vec<&str> = header.iter().map(|h| h.as_str()).collect();
            csv_table(&header_refs, &rows)?
        }
    };
    emit(out, text)?;
    Ok(EXIT_OK)
}

// -------------------------------------------------------------- spectrum

fn cmd_spectrum(
    instance: &InstanceArgs,
    budget: &Budget,
    out: &OutputArgs,
) -> Result<u8, CliError> {
    let (spec, ds) = instance.resolve()?;
    let code = SchubertCode::build(&ds, &spec, budget)?;
    let dist = code.weight_distribution(budget)?;

    let text = match out.format {
        Format::Text => {
            let mut s = format!(
                "# weight distribution for q={} m={} alpha={} (n={}, k={})\n",
                spec.q(),
                ds.m(),
                alpha_text(&ds),
                code.n(),
                code.k()
            );
            for (w, c) in &dist {
                s.push_str(&format!("{w} {c}\n"));
            }
            s
        }
        Format::Json => {
            let entries: Vec<serde_json::Value> = dist
                .iter()
                .map(|(w, c)| json!({ "weight": w, "count": c }))
                .collect();
            to_json_text(&json!({
                "q": spec.q(),
                "m": ds.m(),
                "alpha": ds.alpha(),
                "n": code.n(),
                "k": code.k(),
                "distribution": entries,
            }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = dist
                .iter()
                .map(|(w, c)| vec![w.to_string(), c.to_string()])
                .collect();
            csv_table(&["weight", "count"], &rows)?
        }
    };
    emit(out, text)?;
    Ok(EXIT_OK)
}

// -------------------------------------------------------------- minwords

fn cmd_minwords(
    instance: &InstanceArgs,
    budget: &Budget,
    out: &OutputArgs,
) -> Result<u8, CliError> {
    let (spec, ds) = instance.resolve()?;
    let q = spec.q() as u64;
    let code = SchubertCode::build(&ds, &spec, budget)?;
    let census = code.min_weight_census(budget)?;
    let sd = code.schubert_decomposable_codewords(budget)?;
    let class = code.classify_min_words(&census, &sd, budget)?;
    let formula = m_alpha_formula(&ds, q);
    let sets_equal = class.in_family == census.words.len() && sd.words.len() == census.words.len();
    let count_matches = BigUint::from(census.count()) == formula;
    let comparison = if census_count_verified(&ds, q) {
        "verified"
    } else {
        "report-only"
    };

    let text = match out.format {
        Format::Text => format!(
            "q = {q}\nm = {m}\nalpha = {alpha}\nmin_weight = {d}\ncensus_count = {count}\n\
             projective_classes = {classes}\npinned_family_size = {lambda}\nsd_word_count = {sdw}\n\
             sets_equal = {sets_equal}\nin_family = {in_family}\nrecovered = {recovered}\n\
             unexplained = {unexplained}\nmin_word_count_formula = {formula}\n\
             count_matches_formula = {count_matches}\ncount_comparison = {comparison}\n",
            m = ds.m(),
            alpha = alpha_text(&ds),
            d = census.d,
            count = census.count(),
            classes = census.projective_class_count(&spec),
            lambda = sd.lambda_count,
            sdw = sd.words.len(),
            in_family = class.in_family,
            recovered = class.recovered,
            unexplained = class.unexplained.len(),
        ),
        Format::Json => to_json_text(&json!({
            "q": q,
            "m": ds.m(),
            "alpha": ds.alpha(),
            "min_weight": census.d,
            "census_count": census.count(),
            "projective_classes": census.projective_class_count(&spec),
            "pinned_family_size": sd.lambda_count,
            "sd_word_count": sd.words.len(),
            "sets_equal": sets_equal,
            "in_family": class.in_family,
            "recovered": class.recovered,
            "unexplained": class.unexplained.len(),
            "min_word_count_formula": formula.to_string(),
            "count_matches_formula": count_matches,
            "count_comparison": comparison,
        })),
        Format::Csv => {
            let rows = vec![
                vec!["q".into(), q.to_string()],
                vec!["m".into(), ds.m().to_string()],
                vec!["alpha".into(), alpha_text(&ds)],
                vec!["min_weight".into(), census.d.to_string()],
                vec!["census_count".into(), census.count().to_string()],
                vec![
                    "projective_classes".into(),
                    census.projective_class_count(&spec).to_string(),
                ],
                vec!["pinned_family_size".into(), sd.lambda_count.to_string()],
                vec!["sd_word_count".into(), sd.words.len().to_string()],
                vec!["sets_equal".into(), sets_equal.to_string()],
                vec!["in_family".into(), class.in_family.to_string()],
                vec!["recovered".into(), class.recovered.to_string()],
                vec!["unexplained".into(), class.unexplained.len().to_string()],
                vec!["min_word_count_formula".into(), formula.to_string()],
                vec!["count_matches_formula".into(), count_matches.to_string()],
                vec!["count_comparison".into(), comparison.to_string()],
            ];
            csv_table(&["key", "value"], &rows)?
        }
    };
    emit(out, text)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- verify

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    q: &str,
    alpha: Option<&str>,
    m: Option<usize>,
    ell: Option<usize>,
    max_m: Option<usize>,
    seed: u64,
    budget: &Budget,
    out: &OutputArgs,
) -> Result<u8, CliError> {
    let reports: Vec<VerifyReport> = match alpha {
        Some(alpha) => {
            let spec = FieldSpec::parse(q)?;
            let alpha = parse_alpha(alpha)?;
            check_ell(ell, alpha.len())?;
            let m = m.ok_or_else(|| Error::Parse("instance mode requires --m".into()))?;
            let ds = DimSeq::new(m, &alpha)?;
            vec![verify_instance(&ds, &spec, budget, &CheckSet::all(), seed)]
        }
        None => {
            let max_m = max_m.ok_or_else(|| {
                Error::Parse("sweep mode requires --max-m (or pass --alpha)".into())
            })?;
            let mut orders = Vec::new();
            for tok in q.split(',') {
                orders.push(FieldSpec::parse(tok.trim())?.q() as u64);
            }
            verify_sweep(max_m, &orders, budget, seed)?
        }
    };

    let failed = reports.iter().any(|r| r.failed());
    let skipped = reports.iter().any(|r| r.skipped_any());
    let discrepancies: usize = reports.iter().map(|r| r.discrepancies().len()).sum();

    let text = match out.format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "instance q={} m={} alpha={} seed={} ({} ms)\n",
                    r.q,
                    r.m,
                    r.alpha
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    r.seed,
                    r.runtime_ms
                ));
                for c in &r.checks {
                    let status = match c.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::ReportOnly => "report-only",
                        CheckStatus::Skipped => "skipped",
                    };
                    let flag = if c.discrepancy { "  [DISCREPANCY]" } else { "" };
                    if c.status == CheckStatus::Skipped {
                        s.push_str(&format!("  {status:<12} {:<24} {}\n", c.name, c.observed));
                    } else {
                        s.push_str(&format!(
                            "  {status:<12} {:<24} expected: {} | observed: {}{flag}\n",
                            c.name, c.expected, c.observed
                        ));
                    }
                }
            }
            s.push_str(&format!(
                "summary: {} instances, failed={failed}, skipped={skipped}, discrepancies={discrepancies}\n",
                reports.len()
            ));
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&reports)
                .map_err(|e| CliError::Other(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &reports {
                for c in &r.checks {
                    rows.push(vec![
                        r.q.to_string(),
                        r.m.to_string(),
                        r.alpha
                            .iter()
                            .map(|a| a.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                        r.seed.to_string(),
                        c.name.to_string(),
                        match c.status {
                            CheckStatus::Pass => "pass".into(),
                            CheckStatus::Fail => "fail".into(),
                            CheckStatus::ReportOnly => "report-only".into(),
                            CheckStatus::Skipped => "skipped".into(),
                        },
                        c.expected.clone(),
                        c.observed.clone(),
                        c.discrepancy.to_string(),
                    ]);
                }
            }
            csv_table(
                &[
                    "q",
                    "m",
                    "alpha",
                    "seed",
                    "check",
                    "status",
                    "expected",
                    "observed",
                    "discrepancy",
                ],
                &rows,
            )?
        }
    };
    emit(out, text)?;

    Ok(if failed {
        EXIT_FAILURE
    } else if skipped {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

// --------------------------------------------------------- subspace-count

#[allow(clippy::too_many_arguments)]
fn cmd_subspace_count(
    q: &str,
    b: Option<usize>,
    a: Option<usize>,
    r: Option<usize>,
    u: Option<usize>,
    check: bool,
    max_b: Option<usize>,
    budget: &Budget,
    out: &OutputArgs,
) -> Result<u8, CliError> {
    let spec = FieldSpec::parse(q)?;
    let qv = spec.q() as u64;

    if let Some(max_b) = max_b {
        let suite = verify_subspace_counts(&spec, max_b, budget);
        let ok = suite.status == CheckStatus::Pass;
        let text = render_suite_check(&suite, qv, max_b, out)?;
        emit(out, text)?;
        return Ok(if ok {
            EXIT_OK
        } else if suite.status == CheckStatus::Skipped {
            EXIT_BUDGET
        } else {
            EXIT_FAILURE
        });
    }

    let (b, a, r, u) = match (b, a, r, u) {
        (Some(b), Some(a), Some(r), Some(u)) => (b, a, r, u),
        _ => {
            return Err(CliError::Core(Error::Parse(
                "need --b --a --r --u (or --max-b for the suite)".into(),
            )))
        }
    };
    let formula = count_subspaces_formula(b, a, r, u, qv)?;
    let brute = if check {
        Some(count_subspaces_bruteforce(
            &spec,
            b,
            a,
            r,
            u,
            budget.subspaces,
        )?)
    } else {
        None
    };
    let agrees = brute.map(|g| BigUint::from(g) == formula);

    let text = match out.format {
        Format::Text => match brute {
            Some(g) => format!(
                "formula {formula}, brute {g}, {}\n",
                if agrees == Some(true) { "pass" } else { "FAIL" }
            ),
            None => format!("formula {formula}\n"),
        },
        Format::Json => to_json_text(&json!({
            "q": qv,
            "b": b,
            "a": a,
            "r": r,
            "u": u,
            "formula": formula.to_string(),
            "brute": brute.map(|g| g.to_string()),
            "agrees": agrees,
        })),
        Format::Csv => {
            let rows = vec![vec![
                qv.to_string(),
                b.to_string(),
                a.to_string(),
                r.to_string(),
                u.to_string(),
                formula.to_string(),
                brute.map(|g| g.to_string()).unwrap_or_default(),
                agrees.map(|x| x.to_string()).unwrap_or_default(),
            ]];
            csv_table(
                &["q", "b", "a", "r", "u", "formula", "brute", "agrees"],
                &rows,
            )?
        }
    };
    emit(out, text)?;
    Ok(if agrees == Some(false) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn render_suite_check(
    suite: &Check,
    q: u64,
    max_b: usize,
    out: &OutputArgs,
) -> Result<String, CliError> {
    Ok(match out.format {
        Format::Text => format!(
            "suite q={q} max_b={max_b}: {} ({})\n",
            match suite.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::ReportOnly => "report-only",
                CheckStatus::Skipped => "skipped",
            },
            suite.observed
        ),
        Format::Json => {
            let v = serde_json::to_value(suite).map_err(|e| CliError::Other(e.to_string()))?;
            to_json_text(&json!({
                "q": q,
                "max_b": max_b,
                "suite": v,
            }))
        }
        Format::Csv => {
            let rows = vec![vec![
                q.to_string(),
                max_b.to_string(),
                match suite.status {
                    CheckStatus::Pass => "pass".into(),
                    CheckStatus::Fail => "fail".into(),
                    CheckStatus::ReportOnly => "report-only".into(),
                    CheckStatus::Skipped => "skipped".into(),
                },
                suite.expected.clone(),
                suite.observed.clone(),
            ]];
            csv_table(&["q", "max_b", "status", "expected", "observed"], &rows)?
        }
    })
}
