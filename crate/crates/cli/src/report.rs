//! Comparison rows and their CSV / JSON forms.

use std::io::{Read, Write};

use rademacher::exact::{format_rational, parse_rational};
use rug::{Float, Rational};
use serde::{Deserialize, Serialize, Serializer};

use crate::{CliError, CliResult};

pub const CSV_HEADER: [&str; 8] =
    ["N", "l", "exact_rational", "exact_decimal", "asymptotic", "integral", "abs_err_asym", "rel_err_asym"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    #[serde(rename = "N")]
    pub n: u32,
    pub l: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub exact: Option<Rational>,
    pub exact_decimal: Option<String>,
    pub asymptotic: Option<f64>,
    pub integral: Option<f64>,
    pub abs_err_asym: Option<f64>,
    pub rel_err_asym: Option<f64>,
    /// Range errors and quadrature flags; not part of the CSV schema.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn serialize_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

impl ComparisonRow {
    pub fn empty(n: u32, l: u32) -> Self {
        ComparisonRow {
            n,
            l,
            exact: None,
            exact_decimal: None,
            asymptotic: None,
            integral: None,
            abs_err_asym: None,
            rel_err_asym: None,
            note: None,
        }
    }

    /// The exact value as a double, from the rational or the decimal string.
    pub fn exact_f64(&self) -> Option<f64> {
        match (&self.exact, &self.exact_decimal) {
            (Some(q), _) => Some(q.to_f64()),
            (None, Some(d)) => d.parse().ok(),
            _ => None,
        }
    }

    /// Fills the two error columns from the exact and asymptotic values.
    pub fn fill_errors(&mut self) {
        if let (Some(e), Some(a)) = (self.exact_f64(), self.asymptotic) {
            let abs = (e - a).abs();
            self.abs_err_asym = Some(abs);
            self.rel_err_asym = if e != 0.0 { Some(abs / e.abs()) } else { None };
        }
    }
}

/// 17 significant digits, which round-trips every double.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell<T, F: Fn(&T) -> String>(v: &Option<T>, f: F) -> String {
    v.as_ref().map(f).unwrap_or_default()
}

#[derive(Deserialize)]
struct CsvRecord {
    #[serde(rename = "N")]
    n: u32,
    l: u32,
    exact_rational: String,
    exact_decimal: String,
    asymptotic: String,
    integral: String,
    abs_err_asym: String,
    rel_err_asym: String,
}

pub fn write_csv<W: Write>(rows: &[ComparisonRow], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.l.to_string(),
            cell(&r.exact, format_rational),
            cell(&r.exact_decimal, String::clone),
            cell(&r.asymptotic, |x| format_f64(*x)),
            cell(&r.integral, |x| format_f64(*x)),
            cell(&r.abs_err_asym, |x| format_f64(*x)),
            cell(&r.rel_err_asym, |x| format_f64(*x)),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[ComparisonRow]) -> CliResult<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| CliError::Format(e.to_string()))
}

fn parse_opt_f64(s: &str) -> CliResult<Option<f64>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|e| CliError::Format(format!("bad number {s:?}: {e}")))
}

pub fn read_csv<R: Read>(input: R) -> CliResult<Vec<ComparisonRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(CliError::Format(format!("unexpected header {header:?}")));
    }
    reader
        .deserialize::<CsvRecord>()
        .map(|rec| {
            let rec = rec?;
            Ok(ComparisonRow {
                n: rec.n,
                l: rec.l,
                exact: if rec.exact_rational.is_empty() {
                    None
                } else {
                    Some(parse_rational(&rec.exact_rational)?)
                },
                exact_decimal: Some(rec.exact_decimal).filter(|s| !s.is_empty()),
                asymptotic: parse_opt_f64(&rec.asymptotic)?,
                integral: parse_opt_f64(&rec.integral)?,
                abs_err_asym: parse_opt_f64(&rec.abs_err_asym)?,
                rel_err_asym: parse_opt_f64(&rec.rel_err_asym)?,
                note: None,
            })
        })
        .collect()
}

pub fn json_string<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// Plain positional notation with `digits` significant digits.
pub fn format_fixed(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(0);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    if exp <= 0 {
        s.push_str("0.");
        s.extend(std::iter::repeat_n('0', (-exp) as usize));
        s.push_str(&mantissa);
    } else if exp as usize >= mantissa.len() {
        s.push_str(&mantissa);
        s.extend(std::iter::repeat_n('0', exp as usize - mantissa.len()));
    } else {
        s.push_str(&mantissa[..exp as usize]);
        s.push('.');
        s.push_str(&mantissa[exp as usize..]);
    }
    s
}
