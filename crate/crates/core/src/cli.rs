//! The `sobolev` command line: single brackets, the four worked tables and
//! log-spaced sweeps in `r`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds_lower::{bracket, BoundBracket, BoundOptions, BracketKind};
use crate::error::Error;
use crate::params::{EmbeddingParams, Exponent};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CONVERGENCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "sobolev", version, about = "Two-sided bounds on sharp Sobolev imbedding constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Print intermediate quantities.
    #[arg(long, global = true)]
    verbose: bool,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bracket for a single (r, n, d).
    Bound {
        /// Lebesgue exponent, a number >= 2 or `inf`.
        #[arg(long)]
        r: Exponent,
        /// Sobolev order.
        #[arg(long)]
        n: f64,
        /// Space dimension.
        #[arg(long)]
        d: u32,
    },
    /// One of the worked tables, or a custom r-list.
    Table {
        #[arg(value_enum, ignore_case = true)]
        case: TableCase,
        #[arg(long, required_if_eq("case", "custom"))]
        n: Option<f64>,
        #[arg(long, required_if_eq("case", "custom"))]
        d: Option<u32>,
        /// Comma-separated exponents for `custom`.
        #[arg(long, value_delimiter = ',', required_if_eq("case", "custom"))]
        r: Vec<Exponent>,
    },
    /// Brackets on a log-spaced grid of r.
    Sweep {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableCase {
    A,
    B,
    C,
    D,
    Custom,
}

impl TableCase {
    /// `(n, d, r-grid)` of a worked table.
    pub fn grid(self) -> Option<(f64, u32, &'static [f64])> {
        match self {
            TableCase::A => Some((1.0, 1, &[2.2, 3.0, 4.0, 6.0, 50.0, 1000.0])),
            TableCase::B => Some((3.0, 1, &[2.2, 3.0, 6.0, 10.0, 20.0])),
            TableCase::C => Some((2.0, 2, &[2.1, 3.0, 6.0, 18.0, 50.0, 100.0])),
            TableCase::D => Some((2.0, 3, &[2.1, 3.0, 4.0, 7.0, 11.0, 20.0, 100.0, 1000.0])),
            TableCase::Custom => None,
        }
    }
}

/// `x · 10⁴` as a rounded product plus its exact residual.
fn scaled_by_1e4(x: f64) -> (f64, f64) {
    let p = x * 1e4;
    (p, x.mul_add(1e4, -p))
}

/// `x` rounded toward `+∞` at the fourth decimal. The decimal printed is
/// never below `x`, even when `x · 10⁴` rounds onto an integer.
pub fn round_up_4(x: f64) -> String {
    let (p, residual) = scaled_by_1e4(x);
    let mut k = p.ceil();
    if k == p && residual > 0.0 {
        k += 1.0;
    }
    format!("{:.4}", k / 1e4)
}

/// `x` rounded toward `−∞` at the fourth decimal; never above `x`.
pub fn round_down_4(x: f64) -> String {
    let (p, residual) = scaled_by_1e4(x);
    let mut k = p.floor();
    if k == p && residual < 0.0 {
        k -= 1.0;
    }
    format!("{:.4}", k / 1e4)
}

/// One rendered bracket.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub r: Exponent,
    pub s_minus: Option<f64>,
    pub s_plus: f64,
    pub rel_uncertainty: Option<f64>,
    pub lambda_star: Option<f64>,
    pub sharp: bool,
    pub s_minus_rounded: Option<String>,
    pub s_plus_rounded: String,
    #[serde(skip)]
    pub bracket: BoundBracket,
}

impl From<BoundBracket> for TableRow {
    fn from(b: BoundBracket) -> Self {
        TableRow {
            r: b.params.r(),
            s_minus: b.s_minus,
            s_plus: b.s_plus,
            rel_uncertainty: b.rel_uncertainty,
            lambda_star: b.lambda_star(),
            sharp: b.is_sharp(),
            s_minus_rounded: b.s_minus.map(round_down_4),
            s_plus_rounded: round_up_4(b.s_plus),
            bracket: b,
        }
    }
}

/// A failed command: exit code plus message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence { .. } | Error::Bracketing { .. } | Error::Consistency { .. } => EXIT_CONVERGENCE,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Brackets for each `r`, computed in parallel and returned in input order.
pub fn compute_rows(n: f64, d: u32, rs: &[Exponent], opts: &BoundOptions) -> crate::Result<Vec<TableRow>> {
    rs.par_iter()
        .map(|&r| {
            let params = EmbeddingParams::new(r, n, d)?;
            bracket(&params, opts).map(TableRow::from)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// `steps` exponents log-spaced over `[r_min, r_max]`.
pub fn log_grid(r_min: f64, r_max: f64, steps: usize) -> Vec<Exponent> {
    let ratio = (r_max / r_min).ln() / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            let r = if i == steps - 1 { r_max } else { r_min * (ratio * i as f64).exp() };
            Exponent::Finite(r)
        })
        .collect()
}

fn opt_num(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("r,s_minus,s_plus,rel_uncertainty,lambda_star\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.r,
            opt_num(row.s_minus),
            row.s_plus,
            opt_num(row.rel_uncertainty),
            opt_num(row.lambda_star)
        );
    }
    out
}

pub fn render_json(rows: &[TableRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).unwrap_or_else(|_| "[]".into());
    out.push('\n');
    out
}

fn kind_label(kind: BracketKind) -> &'static str {
    match kind {
        BracketKind::Sharp => "sharp",
        BracketKind::Estimated => "estimated",
        BracketKind::UpperOnly => "upper only",
    }
}

pub fn render_table(title: &str, rows: &[TableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = writeln!(
        out,
        "{:>10}  {:>8}  {:>8}  {:>12}  {:>12}  kind",
        "r", "S+", "S-", "uncertainty", "lambda*"
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{:>10}  {:>8}  {:>8}  {:>12}  {:>12}  {}",
            row.r.to_string(),
            row.s_plus_rounded,
            row.s_minus_rounded.as_deref().unwrap_or("-"),
            row.rel_uncertainty.map_or("-".into(), |u| format!("{u:.6}")),
            row.lambda_star.map_or("-".into(), |l| format!("{l:.8}")),
            kind_label(row.bracket.kind)
        );
    }
    out
}

fn render_verbose(row: &TableRow) -> String {
    let b = &row.bracket;
    let mut out = String::new();
    let _ = writeln!(out, "  C_r,d      = {:.12e}", b.upper.hy_constant);
    let _ = writeln!(out, "  s          = {}", b.upper.s_conjugate);
    let _ = writeln!(out, "  S+ (full)  = {:.12e}", b.s_plus);
    if let Some(w) = b.upper.weight_integral {
        let _ = writeln!(out, "  W(ns, d)   = {w:.12e}");
    }
    if let Some(l) = &b.lower {
        let _ = writeln!(out, "  I          = {:.12e}  (ln I = {:.12})", l.i_value, l.i_integral.ln_value);
        let _ = writeln!(out, "  lambda*    = {:.12}", l.phi_min.lambda_star);
        let _ = writeln!(out, "  Phi        = {:.12e}", l.phi_min.phi_min);
        let _ = writeln!(out, "  S- (full)  = {:.12e}", l.s_minus);
    }
    out
}

fn render(format: Format, title: &str, rows: &[TableRow], verbose: bool) -> String {
    match format {
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
        Format::Table => {
            let mut out = render_table(title, rows);
            if verbose {
                for row in rows {
                    let _ = writeln!(out, "r = {}:", row.r);
                    out.push_str(&render_verbose(row));
                }
            }
            out
        }
    }
}

fn options(global: &GlobalArgs) -> Result<BoundOptions, Failure> {
    let mut opts = BoundOptions::default();
    if let Some(a) = global.abs_tol {
        if !(a > 0.0) {
            return Err(usage(format!("--abs-tol must be positive, got {a}")));
        }
        opts.quadrature.abs_tol = a;
    }
    if let Some(r) = global.rel_tol {
        if !(r > 0.0) {
            return Err(usage(format!("--rel-tol must be positive, got {r}")));
        }
        opts.quadrature.rel_tol = r;
    }
    Ok(opts)
}

fn execute(cli: Cli) -> Result<String, Failure> {
    let opts = options(&cli.global)?;
    let (title, rows) = match cli.command {
        Command::Bound { r, n, d } => {
            let params = EmbeddingParams::new(r, n, d)?;
            let row = TableRow::from(bracket(&params, &opts)?);
            (format!("bound for {params}"), vec![row])
        }
        Command::Table { case, n, d, r } => match case.grid() {
            Some((n, d, grid)) => {
                let rs: Vec<Exponent> = grid.iter().map(|&r| Exponent::Finite(r)).collect();
                let rows = compute_rows(n, d, &rs, &opts)?;
                (format!("table {case:?}: n = {n}, d = {d}"), rows)
            }
            None => {
                let (n, d) = n.zip(d).ok_or_else(|| usage("table custom needs --n, --d and --r"))?;
                if r.is_empty() {
                    return Err(usage("table custom needs at least one --r value"));
                }
                (format!("table: n = {n}, d = {d}"), compute_rows(n, d, &r, &opts)?)
            }
        },
        Command::Sweep {
            n,
            d,
            r_min,
            r_max,
            steps,
        } => {
            if !(r_min > 2.0 && r_max > r_min && r_max.is_finite()) {
                return Err(usage(format!("sweep needs 2 < r_min < r_max < inf, got [{r_min}, {r_max}]")));
            }
            if steps < 2 {
                return Err(usage(format!("sweep needs at least 2 steps, got {steps}")));
            }
            let rows = compute_rows(n, d, &log_grid(r_min, r_max, steps), &opts)?;
            (format!("sweep: n = {n}, d = {d}"), rows)
        }
    };
    Ok(render(cli.global.format, &title, &rows, cli.global.verbose))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_USAGE,
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("sobolev").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rounding_directions() {
        assert_eq!(round_up_4(0.634_41), "0.6345");
        assert_eq!(round_down_4(0.634_79), "0.6347");
        assert_eq!(round_up_4(1.0), "1.0000");
        assert_eq!(round_down_4(1.0), "1.0000");
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(2.1, 1000.0, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], Exponent::Finite(2.1));
        assert_eq!(g[4], Exponent::Finite(1000.0));
    }

    #[test]
    fn bound_example() {
        let (code, out, _) = run_capture(&["bound", "--r", "4", "--n", "1", "--d", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("0.6624") && out.contains("0.6347"), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["bound", "--r", "6", "--n", "1", "--d", "3"]).0, EXIT_DOMAIN);
        assert_eq!(run_capture(&["bound", "--r", "x", "--n", "1", "--d", "1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["table", "E"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sweep", "--n", "1", "--d", "1", "--r-min", "3", "--r-max", "2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn csv_header() {
        let (code, out, _) = run_capture(&["table", "custom", "--n", "1", "--d", "1", "--r", "2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("r,s_minus,s_plus,rel_uncertainty,lambda_star"));
        assert_eq!(out.lines().nth(1), Some("2,1,1,0,"));
    }
}
