//! Peaks of an oscillating sequence and a growth verdict.

use serde::Serialize;

/// Every same-sign peak ratio must reach this factor for a "diverges" verdict.
pub const GROWTH_THRESHOLD: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Peak {
    pub n: u32,
    pub value: f64,
}

/// Step between two peaks of the same sign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeakStep {
    pub from: u32,
    pub to: u32,
    pub spacing: u32,
    /// `|value(to)| / |value(from)|`
    pub ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Diverges,
    NoDivergenceDetected,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Diverges => "diverges",
            Verdict::NoDivergenceDetected => "no divergence detected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeakAnalysis {
    pub peaks: Vec<Peak>,
    /// Spacings between neighbouring peaks (half periods, alternating sign).
    pub adjacent_spacings: Vec<u32>,
    pub same_sign_steps: Vec<PeakStep>,
    /// `max |v|` over the first and the last third of the range.
    pub early_max: f64,
    pub late_max: f64,
    pub verdict: Verdict,
}

/// Local maxima of `|v|`: strictly above the left neighbour and strictly above
/// the first different value on the right. A plateau counts once, at its
/// smallest `N`.
pub fn find_peaks(values: &[(u32, f64)]) -> Vec<Peak> {
    let mut peaks = Vec::new();
    let mut k = 1;
    while k + 1 < values.len() {
        let here = values[k].1.abs();
        if here > values[k - 1].1.abs() {
            let mut j = k + 1;
            while j < values.len() && values[j].1.abs() == here {
                j += 1;
            }
            if j < values.len() && values[j].1.abs() < here {
                peaks.push(Peak { n: values[k].0, value: values[k].1 });
            }
            k = j;
        } else {
            k += 1;
        }
    }
    peaks
}

pub fn analyze_peaks(values: &[(u32, f64)]) -> PeakAnalysis {
    let peaks = find_peaks(values);
    let adjacent_spacings = peaks.windows(2).map(|w| w[1].n - w[0].n).collect();
    let mut same_sign_steps = Vec::new();
    for (i, p) in peaks.iter().enumerate() {
        if let Some(q) = peaks[i + 1..].iter().find(|q| (q.value > 0.0) == (p.value > 0.0)) {
            same_sign_steps.push(PeakStep { from: p.n, to: q.n, spacing: q.n - p.n, ratio: q.value.abs() / p.value.abs() });
        }
    }
    let third = values.len() / 3;
    let max_abs = |s: &[(u32, f64)]| s.iter().map(|v| v.1.abs()).fold(0.0, f64::max);
    let early_max = max_abs(&values[..third.max(1).min(values.len())]);
    let late_max = max_abs(&values[values.len().saturating_sub(third.max(1))..]);
    let grows = !same_sign_steps.is_empty() && same_sign_steps.iter().all(|s: &PeakStep| s.ratio >= GROWTH_THRESHOLD);
    let verdict = if grows && late_max > early_max { Verdict::Diverges } else { Verdict::NoDivergenceDetected };
    PeakAnalysis { peaks, adjacent_spacings, same_sign_steps, early_max, late_max, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(f: impl Fn(f64) -> f64, range: std::ops::RangeInclusive<u32>) -> Vec<(u32, f64)> {
        range.map(|n| (n, f(n as f64))).collect()
    }

    #[test]
    fn constant_input_has_no_divergence() {
        let a = analyze_peaks(&seq(|_| 0.7, 80..=150));
        assert!(a.peaks.is_empty());
        assert_eq!(a.verdict, Verdict::NoDivergenceDetected);
    }

    #[test]
    fn growing_oscillation_diverges() {
        let v = seq(|n| 1.07f64.powf(n) * (2.0 * std::f64::consts::PI * n / 32.0 + 0.3).cos(), 80..=150);
        let a = analyze_peaks(&v);
        assert_eq!(a.verdict, Verdict::Diverges);
        for s in &a.same_sign_steps {
            assert!((s.spacing as i64 - 32).abs() <= 1);
            assert!((s.ratio / 1.07f64.powi(s.spacing as i32) - 1.0).abs() < 0.1);
        }
        assert!(a.adjacent_spacings.iter().all(|&d| (15..=17).contains(&d)));
    }

    #[test]
    fn damped_oscillation_does_not() {
        let v = seq(|n| 0.97f64.powf(n) * (n / 5.0).sin(), 1..=100);
        assert_eq!(analyze_peaks(&v).verdict, Verdict::NoDivergenceDetected);
    }

    #[test]
    fn plateau_counts_once_at_smaller_n() {
        let v = vec![(1, 0.0), (2, 2.0), (3, 2.0), (4, 1.0), (5, 3.0), (6, 3.0), (7, 4.0)];
        let p = find_peaks(&v);
        assert_eq!(p, vec![Peak { n: 2, value: 2.0 }]);
    }
}
