//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::partitions::Partition;
use crate::schur::SchurExpr;
use crate::thom::{self, Route, SingularityParams};
use crate::verify::{self, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sigmaij", version, about = "Thom polynomials of second-order Thom-Boardman singularities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute [Σ^{i,j}(r)] in the Schur basis.
    Compute(ComputeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Print the Thom series coefficients of Σ^{i,1}.
    Series(SeriesArgs),
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub r: i64,
    #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
    pub route: RouteArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Closed-form examples.
    #[arg(long)]
    pub golden: bool,
    /// Restriction equations for the given (i, j, r).
    #[arg(long)]
    pub restriction: bool,
    /// Vanishing conditions for the given (i, j, r).
    #[arg(long)]
    pub vanishing: bool,
    /// Tableau LR coefficients against the monomial oracle.
    #[arg(long)]
    pub lr: bool,
    /// Kernel and factorization properties of the supersymmetric map.
    #[arg(long)]
    pub factorization: bool,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, default_value_t = 8)]
    pub max_weight: usize,
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub p_max: usize,
    #[arg(long, default_value_t = 10)]
    pub deg_max: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long)]
    pub i: usize,
    /// Relative codimension whose Thom polynomial the coefficients are read from.
    #[arg(long, default_value_t = 3)]
    pub r_witness: i64,
    /// Compare the coefficients read off r = 0, 1, 2, 3.
    #[arg(long)]
    pub check_r_independence: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    Main1,
    Main2,
    Main2nice,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

/// JSON form of a computed Thom polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub singularity: SingularityParams,
    pub codimension: usize,
    pub basis: String,
    pub terms: Vec<OutputTerm>,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputTerm {
    pub partition: Partition,
    pub coefficient: String,
}

impl OutputDocument {
    pub fn new(p: SingularityParams, route: Route, x: &SchurExpr) -> Self {
        OutputDocument {
            singularity: p,
            codimension: x.homogeneous_degree().unwrap_or(0),
            basis: "schur".to_string(),
            terms: x
                .iter()
                .map(|(l, c)| OutputTerm {
                    partition: l.clone(),
                    coefficient: c.to_string(),
                })
                .collect(),
            route,
        }
    }

    /// The polynomial described by the document.
    pub fn expr(&self) -> Result<SchurExpr, Error> {
        let mut out = SchurExpr::zero();
        for t in &self.terms {
            let c: BigInt = t
                .coefficient
                .parse()
                .map_err(|_| Error::Parse(t.coefficient.clone()))?;
            out.add_term(t.partition.clone(), c);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// `s_{5} + 3s_{4,1}`; coefficient 1 is omitted.
pub fn render_latex(x: &SchurExpr) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (l, c)) in x.iter().enumerate() {
        let neg = c < &BigInt::from(0);
        let mag = if neg { -c } else { c.clone() };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != BigInt::from(1) {
            out.push_str(&mag.to_string());
        }
        let parts: Vec<String> = l.parts().iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("s_{{{}}}", parts.join(",")));
    }
    out
}

fn route_of(arg: RouteArg, p: &SingularityParams) -> Route {
    match arg {
        RouteArg::Auto => Route::auto(p),
        RouteArg::Main1 => Route::Main1,
        RouteArg::Main2 => Route::Main2,
        RouteArg::Main2nice => Route::Main2nice,
        RouteArg::General => Route::General,
    }
}

fn usage(err: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Compute(a) => cmd_compute(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Series(a) => cmd_series(&a, out, err),
    }
}

pub fn cmd_compute(a: &ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let p = match SingularityParams::new(a.i, a.j, a.r) {
        Ok(p) => p,
        Err(e) => return usage(err, e),
    };
    let route = route_of(a.route, &p);
    let x = match thom::compute(&p, route) {
        Ok(x) => x,
        Err(e) => return usage(err, e),
    };
    let text = match a.format {
        Format::Text => x.to_string(),
        Format::Latex => render_latex(&x),
        Format::Json => OutputDocument::new(p, route, &x).render(),
    };
    let _ = writeln!(out, "{text}");
    EXIT_OK
}

fn singularity_args(a: &VerifyArgs) -> Result<(usize, usize, i64), String> {
    match (a.i, a.j, a.r) {
        (Some(i), Some(j), Some(r)) => Ok((i, j, r)),
        _ => Err("--restriction and --vanishing require --i, --j and --r".to_string()),
    }
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let none_selected = !(a.golden || a.restriction || a.vanishing || a.lr || a.factorization);
    let mut reports: Vec<VerificationReport> = Vec::new();
    if a.golden || none_selected {
        reports.extend(verify::golden_examples());
    }
    if a.restriction || a.vanishing {
        let (i, j, r) = match singularity_args(a) {
            Ok(t) => t,
            Err(msg) => return usage(err, msg),
        };
        let p = match SingularityParams::new(i, j, r) {
            Ok(p) => p,
            Err(e) => return usage(err, e),
        };
        let x = match thom::compute(&p, Route::auto(&p)) {
            Ok(x) => x,
            Err(e) => return usage(err, e),
        };
        if a.restriction {
            let bullet = match thom::bullet_class(&p) {
                Ok(b) => b,
                Err(e) => return usage(err, e),
            };
            reports.push(verify::check_restriction_1(&x, i, j, r));
            reports.push(verify::check_restriction_2(&x, i, j, r, &bullet));
        }
        if a.vanishing {
            reports.push(verify::check_vanishing(&x, i, j, r));
        }
    }
    if a.lr {
        reports.push(verify::check_lr(a.max_weight));
    }
    if a.factorization {
        reports.extend(verify::check_factorization_suite(a.n_max, a.p_max, a.deg_max));
    }
    match a.format {
        ReportFormat::Text => {
            for r in &reports {
                let _ = writeln!(out, "{r}");
            }
        }
        ReportFormat::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
        }
    }
    match reports.iter().find(|r| !r.passed()) {
        None => EXIT_OK,
        Some(first) => {
            let _ = writeln!(err, "verification failed: {first}");
            EXIT_FAIL
        }
    }
}

fn format_gamma(g: &[i64]) -> String {
    let parts: Vec<String> = g.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn cmd_series(a: &SeriesArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let series = match thom::thom_series(a.i, a.r_witness) {
        Ok(s) => s,
        Err(e) => return usage(err, e),
    };
    let _ = writeln!(
        out,
        "ts(Σ^{{{},1}}) coefficients read off r = {} (complete for γ_last ≥ -{})",
        a.i,
        a.r_witness,
        a.r_witness + a.i as i64
    );
    let _ = writeln!(out, "gamma\tc");
    for (g, c) in &series.terms {
        let _ = writeln!(out, "{}\t{}", format_gamma(g), c);
    }
    let mut code = EXIT_OK;
    if !series.sign_pattern_holds() {
        let _ = writeln!(out, "sign pattern violated");
        code = EXIT_FAIL;
    }
    if a.check_r_independence {
        match thom::check_r_independence(a.i, &[0, 1, 2, 3]) {
            Ok(None) => {
                let _ = writeln!(out, "consistent across r=0..3");
            }
            Ok(Some((ra, rb, g))) => {
                let _ = writeln!(
                    out,
                    "inconsistent: r={ra} and r={rb} disagree at gamma {}",
                    format_gamma(&g)
                );
                code = EXIT_FAIL;
            }
            Err(e) => return usage(err, e),
        }
    }
    code
}
