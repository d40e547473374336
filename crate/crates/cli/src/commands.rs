use std::fmt;
use std::path::{Path, PathBuf};

use rademacher::contour::{
    c_quadrature_check, check_lower_bound_inequality, check_monotone_exponent, constant_c,
    default_inequality_grid, segment_to_saddle, IntegralEvaluator, QuadratureSpec,
};
use rademacher::exact::{exact_coefficients_float, format_decimal, ExactTable};
use rademacher::hp::format_float;
use rademacher::saddle::{argument_principle_count, asymptotic_c, default_initial, SaddleData};
use rademacher::specfun::phi;
use rug::Float;
use serde::Serialize;

use crate::config::{Modes, OutputFormat, RunConfig};
use crate::peaks::{analyze_peaks, PeakAnalysis, Verdict};
use crate::report::{csv_string, format_fixed, ComparisonRow};
use crate::svg::{line_chart, Series};
use crate::{CliError, CliResult};

/// Saddle constants and the exact table, computed once and reused by the
/// commands of one process.
pub struct Session {
    prec: u32,
    saddle: Option<SaddleData>,
    table: Option<ExactTable>,
    integral: Option<IntegralEvaluator>,
}

impl Session {
    pub fn new(prec: u32) -> Self {
        Session { prec, saddle: None, table: None, integral: None }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn saddle(&mut self) -> CliResult<&SaddleData> {
        if self.saddle.is_none() {
            self.saddle = Some(SaddleData::compute(self.prec)?);
        }
        Ok(self.saddle.as_ref().unwrap())
    }

    /// Exact rational coefficients for every `N ≤ n_max`.
    pub fn table(&mut self, n_max: u32) -> CliResult<&ExactTable> {
        if self.table.as_ref().is_none_or(|t| t.n_max() < n_max) {
            self.table = Some(ExactTable::compute(n_max)?);
        }
        Ok(self.table.as_ref().unwrap())
    }

    fn integral(&mut self) -> CliResult<&IntegralEvaluator> {
        if self.integral.is_none() {
            self.integral = Some(IntegralEvaluator::new(&QuadratureSpec::arc(self.prec)?)?);
        }
        Ok(self.integral.as_ref().unwrap())
    }

    /// Exact `C_{0,1,l}(N)` as a double, by rationals unless `N` exceeds
    /// `float_above`.
    pub fn exact_f64(&mut self, n: u32, l: u32, float_above: Option<u32>) -> CliResult<f64> {
        if float_above.is_some_and(|b| n > b) {
            let v = exact_coefficients_float(n, self.prec)?;
            return v
                .get(l as usize - 1)
                .map(Float::to_f64)
                .ok_or(CliError::Core(rademacher::Error::Range { l, n }));
        }
        Ok(self.table(n)?.get(n)?.get(l)?.to_f64())
    }

    pub fn compare(&mut self, cfg: &RunConfig) -> CliResult<Vec<ComparisonRow>> {
        cfg.validate()?;
        if cfg.modes.is_empty() {
            return Err(CliError::Usage("no modes selected".into()));
        }
        let l = cfg.l;
        let rational_max = match cfg.float_exact_above {
            Some(b) => cfg.n_to.min(b),
            None => cfg.n_to,
        };
        if cfg.modes.exact && rational_max >= cfg.n_from {
            self.table(rational_max)?;
        }
        let mut rows = Vec::with_capacity((cfg.n_to - cfg.n_from + 1) as usize);
        for n in cfg.n_from..=cfg.n_to {
            let mut row = ComparisonRow::empty(n, l);
            if cfg.modes.exact {
                if l > n {
                    row.note = Some(format!("range error: l = {l} exceeds N = {n}"));
                } else if n > rational_max {
                    let v = exact_coefficients_float(n, self.prec)?;
                    row.exact_decimal = Some(format_float(&v[l as usize - 1], cfg.digits));
                } else {
                    let q = self.table(rational_max)?.get(n)?.get(l)?.clone();
                    row.exact_decimal = Some(format_decimal(&q, cfg.digits));
                    row.exact = Some(q);
                }
            }
            if cfg.modes.asymptotic {
                row.asymptotic = Some(asymptotic_c(l, n, self.saddle()?)?.main_term.to_f64());
            }
            if cfg.modes.integral {
                let v = self.integral()?.evaluate(l, n)?;
                if v.flagged {
                    row.note = Some(format!(
                        "quadrature not converged: node doubling changed the value by {:.3e}",
                        v.node_doubling_delta.to_f64()
                    ));
                }
                row.integral = Some(v.value.to_f64());
            }
            row.fill_errors();
            rows.push(row);
        }
        Ok(rows)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub digits: usize,
    pub entries: Vec<(String, String)>,
}

impl fmt::Display for ConstantsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in &self.entries {
            writeln!(f, "{name:<6} ≈ {value}")?;
        }
        Ok(())
    }
}

impl ConstantsReport {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }
}

fn format_complex(re: &Float, im: &Float, digits: usize) -> String {
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    let abs_im = Float::with_val(im.prec(), im.abs_ref());
    format!("{} {sign} {}i", format_fixed(re, digits), format_fixed(&abs_im, digits))
}

pub fn cmd_constants(session: &mut Session, digits: usize) -> CliResult<ConstantsReport> {
    let sd = session.saddle()?;
    let entries = vec![
        ("z0".into(), format_complex(&sd.z0().re, &sd.z0().im, digits)),
        ("a".into(), format_fixed(sd.a(), digits)),
        ("rho".into(), format_complex(&sd.rho().re, &sd.rho().im, digits)),
        ("b".into(), format_fixed(sd.b(), digits)),
        ("theta".into(), format_fixed(sd.theta(), digits)),
        ("p".into(), format_fixed(sd.p(), digits)),
        ("alpha".into(), format_fixed(sd.alpha(), digits)),
        ("b^p".into(), format_fixed(&sd.b_pow_p(), digits)),
    ];
    Ok(ConstantsReport { digits, entries })
}

pub fn cmd_compare(cfg: &RunConfig) -> CliResult<Vec<ComparisonRow>> {
    Session::new(cfg.precision_bits).compare(cfg)
}

#[derive(Clone, Debug, Serialize)]
pub struct DisproofReport {
    pub n_from: u32,
    pub n_to: u32,
    pub l: u32,
    pub period: f64,
    pub expected_peak_ratio: f64,
    pub analysis: PeakAnalysis,
}

impl DisproofReport {
    pub fn verdict(&self) -> Verdict {
        self.analysis.verdict
    }
}

impl fmt::Display for DisproofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.analysis;
        writeln!(f, "range N = {}..{}, l = {}", self.n_from, self.n_to, self.l)?;
        writeln!(f, "period p = {:.4}, expected peak ratio b^p = {:.4}", self.period, self.expected_peak_ratio)?;
        writeln!(f, "peaks (N, C):")?;
        for p in &a.peaks {
            writeln!(f, "  {:>5}  {:+.6e}", p.n, p.value)?;
        }
        writeln!(f, "adjacent spacings: {:?}", a.adjacent_spacings)?;
        writeln!(f, "same-sign steps:")?;
        for s in &a.same_sign_steps {
            writeln!(f, "  {} -> {}  spacing {}  ratio {:.4}", s.from, s.to, s.spacing, s.ratio)?;
        }
        writeln!(f, "max |C| first third {:.6e}, last third {:.6e}", a.early_max, a.late_max)?;
        writeln!(f, "verdict: {}", a.verdict)
    }
}

pub fn cmd_disproof(session: &mut Session, cfg: &RunConfig) -> CliResult<DisproofReport> {
    cfg.validate()?;
    let (period, expected) = {
        let sd = session.saddle()?;
        (sd.p().to_f64(), sd.b_pow_p().to_f64())
    };
    if ((cfg.n_to - cfg.n_from) as f64) < 2.0 * period {
        return Err(CliError::Usage(format!(
            "range {}..{} is shorter than two periods ({:.2})",
            cfg.n_from,
            cfg.n_to,
            2.0 * period
        )));
    }
    let rational_max = cfg.float_exact_above.map_or(cfg.n_to, |b| b.min(cfg.n_to));
    if rational_max >= cfg.n_from {
        session.table(rational_max)?;
    }
    let mut values = Vec::new();
    for n in cfg.n_from..=cfg.n_to {
        values.push((n, session.exact_f64(n, cfg.l, cfg.float_exact_above)?));
    }
    Ok(DisproofReport {
        n_from: cfg.n_from,
        n_to: cfg.n_to,
        l: cfg.l,
        period,
        expected_peak_ratio: expected,
        analysis: analyze_peaks(&values),
    })
}

/// Writes `fig1.csv`, `fig2.csv` (N = 100..150, l = 1, 2, exact and
/// asymptotic) and `fig3.csv` (N = 1..70, l = 1, exact and integral), plus an
/// SVG per figure when the output format is SVG.
pub fn cmd_figures(session: &mut Session, cfg: &RunConfig, out_dir: &Path) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let figures = [
        ("fig1", 100, 150, 1, Modes::EXACT_ASYMPTOTIC),
        ("fig2", 100, 150, 2, Modes::EXACT_ASYMPTOTIC),
        ("fig3", 1, 70, 1, Modes::EXACT_INTEGRAL),
    ];
    let mut written = Vec::new();
    for (name, from, to, l, modes) in figures {
        let run = RunConfig { n_from: from, n_to: to, l, modes, ..cfg.clone() };
        let rows = session.compare(&run)?;
        let path = out_dir.join(format!("{name}.csv"));
        std::fs::write(&path, csv_string(&rows)?)?;
        written.push(path);
        if cfg.output_format == OutputFormat::Svg {
            let path = out_dir.join(format!("{name}.svg"));
            std::fs::write(&path, rows_svg(&rows, &format!("{name}: l = {l}")))?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Exact values against whichever approximation the rows carry.
pub fn rows_svg(rows: &[ComparisonRow], title: &str) -> String {
    let exact = Series {
        label: "exact",
        color: "black",
        points: rows.iter().filter_map(|r| Some((r.n as f64, r.exact_f64()?))).collect(),
    };
    let asym: Vec<(f64, f64)> = rows.iter().filter_map(|r| Some((r.n as f64, r.asymptotic?))).collect();
    let (label, points) = if asym.is_empty() {
        ("integral", rows.iter().filter_map(|r| Some((r.n as f64, r.integral?))).collect())
    } else {
        ("asymptotic", asym)
    };
    line_chart(title, "N", "C", &[exact, Series { label, color: "gray", points }])
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.rows {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark}  {:<width$}  {}", r.name, r.detail)?;
        }
        Ok(())
    }
}

/// Runs every numeric witness and collects one row per check.
pub fn cmd_check(session: &mut Session) -> CliResult<CheckReport> {
    let prec = session.prec();
    let mut rows = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        rows.push(CheckRow { name: name.into(), passed, detail });
    };

    let sd = session.saddle()?.clone();
    let residual = phi(sd.z0())?.abs().to_f64();
    let ceiling = 2f64.powi(-(prec as i32 - 16));
    push("saddle residual", residual < ceiling, format!("|phi(z0)| = {residual:.3e} < {ceiling:.3e}"));

    let count = argument_principle_count(prec.min(128), &default_initial(prec.min(128)), 1.0, 128)?;
    let (re, im) = count.to_f64_pair();
    push(
        "single root near z0",
        (re - 1.0).abs() < 1e-6 && im.abs() < 1e-6,
        format!("winding number {re:.9} {im:+.1e}i on |z - (-1.61+7.42i)| = 1"),
    );

    let report = check_monotone_exponent(&segment_to_saddle(&sd, 200))?;
    push(
        "exponent rate increases 5i -> z0",
        report.monotone,
        format!("200 samples, {} violations", report.violations.len()),
    );

    let grid = default_inequality_grid();
    let holds = check_lower_bound_inequality(&grid, 1.0)?;
    push("lower bound inequality", holds, format!("{} grid points, x in (0, 0.1], Re z in [-0.5, 0]", grid.len()));
    let detector = !check_lower_bound_inequality(&grid, 2.0)?;
    push("inequality detector", detector, "doubled right side must fail".into());

    let c = constant_c(prec)?;
    let cv = c.value.to_f64();
    push(
        "constant c closed form",
        (cv * 1e5).round() / 1e5 == 0.11262,
        format!("c = {}, Im residue {:.1e}", format_float(&c.value, 12), c.imag_residue.to_f64()),
    );
    let q = c_quadrature_check(10_000)?;
    push(
        "constant c quadrature",
        q.rel_diff.abs() < 1e-3,
        format!("integral {:.4} vs -cN {:.4} at N = 10^4, rel diff {:.2e}", q.integral, q.minus_cn, q.rel_diff),
    );

    let prod = Float::with_val(prec, &sd.radicand().re * sd.alpha()).to_f64();
    push("radicand times alpha", (prod - 1.0).abs() < 1e-15, format!("{prod:.17}"));
    Ok(CheckReport { rows })
}
