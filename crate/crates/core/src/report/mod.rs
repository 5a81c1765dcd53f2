//! The `ioident analyze` driver and its report formats.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::print::{fmt_mpoly, fmt_ratfun};
use crate::arith::RatFun;
use crate::diff::{fmt_diffpoly, DiffRing, Ranking};
use crate::elim::{io_equations_with, ElimOptions, VerificationReport};
use crate::error::{Error, ParseError, ParseErrorKind};
use crate::ident::{
    equality_certificate, field_membership, field_of_presentation, polynomial_first_integrals,
    wronskian_certificates_seeded, CertificateStatus, EqualityStatus,
};
use crate::model::{parse_expression, parse_model, Model};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNREADABLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DEPTH: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub seed: u64,
    /// Maximum prolongation depth actually used.
    pub depth: usize,
    /// `None` picks the truncation per polynomial.
    pub series_order: Option<usize>,
    pub trials: usize,
    pub first_integral_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelSummary {
    pub n: usize,
    pub m: usize,
    pub kappa: usize,
    pub lambda: usize,
    pub params: Vec<String>,
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub element: usize,
    pub subset: Vec<String>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub coefficient: String,
    pub status: &'static str,
    pub witness: Option<WitnessSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualitySummary {
    pub status: &'static str,
    pub degree_bound: usize,
    pub witness: Option<String>,
    /// Always true: rational and higher-degree first integrals are not searched.
    pub partial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    /// `verified`, `failed` or `depth_exhausted`.
    pub status: &'static str,
    pub depth: Option<usize>,
    pub checks: Option<VerificationReport>,
    pub leaders_found: Option<usize>,
    pub leaders_expected: usize,
}

/// Everything `analyze` reports; fields serialize in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub model: ModelSummary,
    pub settings: Settings,
    pub io_equations: Vec<String>,
    pub field_generators: Vec<String>,
    pub certificates: Vec<CertificateSummary>,
    pub first_integrals: Vec<String>,
    pub equality_status: EqualitySummary,
    /// `None` when the field is unknown because elimination failed.
    pub membership_queries: Vec<(String, Option<bool>)>,
    pub verification: VerificationSummary,
}

impl AnalysisReport {
    pub fn is_complete(&self) -> bool {
        self.verification.status == "verified"
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub depth: Option<usize>,
    pub series_order: Option<usize>,
    pub trials: usize,
    pub first_integral_degree: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            seed: 0,
            depth: None,
            series_order: None,
            trials: 5,
            first_integral_degree: 3,
        }
    }
}

/// Parses `text` as a function of the parameters only.
pub fn parse_parameter_function(text: &str, m: &Model) -> Result<RatFun, ParseError> {
    let h = parse_expression(text, m)?;
    match h.max_var() {
        Some(v) if v >= m.lambda() => {
            let name = m.ring().names()[v].clone();
            Err(ParseError {
                line: 1,
                column: text.find(name.as_str()).map_or(1, |c| c + 1),
                kind: ParseErrorKind::Syntax(format!("`{name}` is not a parameter")),
            })
        }
        _ => Ok(h),
    }
}

fn summarize_model(m: &Model) -> ModelSummary {
    ModelSummary {
        n: m.n(),
        m: m.m(),
        kappa: m.kappa(),
        lambda: m.lambda(),
        params: m.params.clone(),
        states: m.states.clone(),
        inputs: m.inputs.clone(),
        outputs: m.outputs.clone(),
    }
}

fn witness_strings(ring: &DiffRing, r: &Ranking, subset: &[crate::diff::DiffPoly]) -> Vec<String> {
    subset.iter().map(|z| fmt_diffpoly(z, ring, r)).collect()
}

/// Runs the whole pipeline on a parsed model. The report is partial when
/// no verified presentation was found within the depth budget.
pub fn analyze(m: &Model, queries: &[(String, RatFun)], opts: &AnalyzeOptions) -> AnalysisReport {
    let ring = m.diff_ring();
    let ranking = ring.default_ranking();
    let depth = opts.depth.unwrap_or(m.n());
    let elim_opts = ElimOptions {
        max_depth: Some(depth),
        seed: opts.seed,
        trials: opts.trials,
        series_order: opts.series_order,
    };
    let names = m.ring();

    let first = polynomial_first_integrals(m, opts.first_integral_degree.max(1));
    let first_integrals: Vec<String> = if opts.first_integral_degree == 0 {
        Vec::new()
    } else {
        first.basis.iter().map(|p| fmt_mpoly(p, names.names())).collect()
    };
    let equality_status = match equality_certificate(m, opts.first_integral_degree) {
        EqualityStatus::EqualityCertifiedUpToDegree(d) => EqualitySummary {
            status: "equality_certified_up_to_degree",
            degree_bound: d,
            witness: None,
            partial: true,
        },
        EqualityStatus::FirstIntegralFound(p) => EqualitySummary {
            status: "first_integral_found",
            degree_bound: opts.first_integral_degree,
            witness: Some(fmt_mpoly(&p, names.names())),
            partial: true,
        },
        EqualityStatus::Inconclusive => EqualitySummary {
            status: "inconclusive",
            degree_bound: 0,
            witness: None,
            partial: true,
        },
    };

    let mut report = AnalysisReport {
        model: summarize_model(m),
        settings: Settings {
            seed: opts.seed,
            depth,
            series_order: opts.series_order,
            trials: opts.trials,
            first_integral_degree: opts.first_integral_degree,
        },
        io_equations: Vec::new(),
        field_generators: Vec::new(),
        certificates: Vec::new(),
        first_integrals,
        equality_status,
        membership_queries: queries.iter().map(|(text, _)| (text.clone(), None)).collect(),
        verification: VerificationSummary {
            status: "depth_exhausted",
            depth: None,
            checks: None,
            leaders_found: None,
            leaders_expected: m.m(),
        },
    };

    match io_equations_with(m, &ranking, &elim_opts) {
        Ok((c, checks)) => {
            let field = field_of_presentation(&c);
            report.io_equations = c.strings(&ring);
            report.field_generators = field.strings(&m.params);
            report.certificates = wronskian_certificates_seeded(&c, m, opts.trials, opts.seed)
                .into_iter()
                .map(|cert| CertificateSummary {
                    coefficient: fmt_ratfun(&cert.coefficient, &m.params),
                    status: match cert.status {
                        CertificateStatus::IdentifiableByWronskian => "identifiable_by_wronskian",
                        CertificateStatus::NoCertificate => "no_certificate",
                    },
                    witness: cert.witness.map(|w| WitnessSummary {
                        element: w.element,
                        subset: witness_strings(&ring, &ranking, &w.subset),
                        seed: w.seed,
                    }),
                })
                .collect();
            report.membership_queries = queries
                .iter()
                .map(|(text, h)| (text.clone(), Some(field_membership(h, &field))))
                .collect();
            report.verification = VerificationSummary {
                status: if checks.passed() { "verified" } else { "failed" },
                depth: Some(c.depth),
                checks: Some(checks.clone()),
                leaders_found: Some(c.elements.len()),
                leaders_expected: m.m(),
            };
        }
        Err(Error::DepthExhausted(d)) => {
            report.io_equations = d.eliminated;
            report.verification.leaders_found = Some(d.leaders_found);
        }
        Err(e) => {
            report.verification.status = "failed";
            report.io_equations = vec![format!("error: {e}")];
        }
    }
    report
}

fn text_report(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
    let md = &r.model;
    let _ = writeln!(s, "model: n={} m={} kappa={} lambda={}", md.n, md.m, md.kappa, md.lambda);
    let _ = writeln!(s, "params: {}", list(&md.params));
    let _ = writeln!(s, "states: {}", list(&md.states));
    if !md.inputs.is_empty() {
        let _ = writeln!(s, "inputs: {}", list(&md.inputs));
    }
    let _ = writeln!(s, "outputs: {}", list(&md.outputs));
    let st = &r.settings;
    let order = st.series_order.map_or("auto".to_string(), |k| k.to_string());
    let _ = writeln!(
        s,
        "settings: seed={} depth={} series-order={} trials={} first-integral-degree={}",
        st.seed, st.depth, order, st.trials, st.first_integral_degree
    );
    let v = &r.verification;
    match v.status {
        "verified" => {
            let _ = writeln!(s, "verification: verified at depth {}", v.depth.unwrap_or(0));
        }
        "depth_exhausted" => {
            let _ = writeln!(
                s,
                "verification: depth exhausted ({} of {} leaders found); eliminated polynomials follow",
                v.leaders_found.unwrap_or(0),
                v.leaders_expected
            );
        }
        other => {
            let _ = writeln!(s, "verification: {other}");
        }
    }
    for (name, ok) in v.checks.iter().flat_map(|c| c.checks()) {
        if !ok {
            let _ = writeln!(s, "  failed check: {name}");
        }
    }
    for e in &r.io_equations {
        let _ = writeln!(s, "IO: {e}");
    }
    let _ = writeln!(s, "field generators: {}", list(&r.field_generators));
    for c in &r.certificates {
        match &c.witness {
            Some(w) => {
                let _ = writeln!(
                    s,
                    "certificate: {} identifiable (Wronskian of {{{}}}, seed {})",
                    c.coefficient,
                    w.subset.join(", "),
                    w.seed
                );
            }
            None => {
                let _ = writeln!(s, "certificate: {} no certificate (not a proof of non-identifiability)", c.coefficient);
            }
        }
    }
    let _ = writeln!(s, "first integrals: {}", list(&r.first_integrals));
    let eq = &r.equality_status;
    let _ = match eq.status {
        "equality_certified_up_to_degree" => writeln!(
            s,
            "equality: certified up to degree {} (partial: rational and higher-degree first integrals not excluded)",
            eq.degree_bound
        ),
        "first_integral_found" => writeln!(
            s,
            "equality: first integral found ({}); identifiable and IO-identifiable fields may differ",
            eq.witness.as_deref().unwrap_or("")
        ),
        _ => writeln!(s, "equality: inconclusive"),
    };
    for (expr, member) in &r.membership_queries {
        let verdict = member.map_or("unknown".to_string(), |b| b.to_string());
        let _ = writeln!(s, "membership: {expr} -> {verdict}");
    }
    s
}

/// Canonical serialization; JSON is pretty-printed with a trailing newline.
pub fn emit_report(r: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text_report(r),
    }
}

#[derive(Parser, Debug)]
#[command(name = "ioident", version, about = "Input-output equations and identifiable functions of ODE models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a model file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum prolongation depth [default: number of states]
        #[arg(long)]
        depth: Option<usize>,
        /// Series truncation order [default: per polynomial]
        #[arg(long = "series-order")]
        series_order: Option<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long = "first-integral-degree", default_value_t = 3)]
        first_integral_degree: usize,
        /// Parameter function to test for IO-identifiability; repeatable.
        #[arg(long = "check-function")]
        check_function: Vec<String>,
    },
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`; returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let Command::Analyze {
        file,
        format,
        seed,
        depth,
        series_order,
        trials,
        first_integral_degree,
        check_function,
    } = cli.command;

    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", file.display());
            return EXIT_UNREADABLE;
        }
    };
    let model = match parse_model(&text) {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "{}:{e}", file.display());
            return EXIT_PARSE;
        }
    };
    let mut queries = Vec::new();
    for expr in check_function {
        match parse_parameter_function(&expr, &model) {
            Ok(h) => queries.push((expr, h)),
            Err(e) => {
                let _ = writeln!(err, "--check-function {expr:?}: {e}");
                return EXIT_PARSE;
            }
        }
    }
    let opts = AnalyzeOptions {
        seed,
        depth,
        series_order,
        trials,
        first_integral_degree,
    };
    let report = analyze(&model, &queries, &opts);
    let _ = write!(out, "{}", emit_report(&report, format));
    if !report.is_complete() {
        let _ = writeln!(err, "error: no verified presentation up to depth {}", report.settings.depth);
        EXIT_DEPTH
    } else {
        EXIT_OK
    }
}
