//! Small statistics helpers: summary moments, rank correlation, fits and
//! the staircase plateau detector.

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Quantile with linear interpolation, `q ∈ [0, 1]`.
pub fn quantile(xs: &[f64], q: f64) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pos = q * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        v[lo]
    } else {
        v[lo] + (pos - lo as f64) * (v[hi] - v[lo])
    }
}

pub fn median(xs: &[f64]) -> f64 {
    quantile(xs, 0.5)
}

/// Interquartile range.
pub fn iqr(xs: &[f64]) -> f64 {
    quantile(xs, 0.75) - quantile(xs, 0.25)
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).unwrap());
    let mut r = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        // average rank for ties (1-based ranks)
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for k in i..=j {
            r[idx[k]] = avg;
        }
        i = j + 1;
    }
    r
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let mx = mean(xs);
    let my = mean(ys);
    let mut num = 0.0;
    let mut dx = 0.0;
    let mut dy = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        num += (x - mx) * (y - my);
        dx += (x - mx) * (x - mx);
        dy += (y - my) * (y - my);
    }
    if dx == 0.0 || dy == 0.0 {
        return 0.0;
    }
    num / (dx * dy).sqrt()
}

/// Spearman rank correlation with tie-averaged ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return 0.0;
    }
    pearson(&ranks(xs), &ranks(ys))
}

/// Least-squares line `y = slope·x + intercept` with the coefficient of
/// determination.
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LineFit {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        let f = slope * x + intercept;
        ss_res += (y - f) * (y - f);
        ss_tot += (y - my) * (y - my);
    }
    let r_squared = if ss_tot == 0.0 || n < 3.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    LineFit {
        slope,
        intercept,
        r_squared,
    }
}

/// Power-law exponent of `y ∝ x^β` by a log-log least-squares fit.
pub fn power_law_exponent(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    linear_fit(&lx, &ly).slope
}

/// A detected staircase segment: a plateau of `≥ min_len` iterations with
/// per-iteration relative cost change below `rel_tol`, followed by a drop of
/// at least `drop_factor` before the next plateau (or the end of the trace).
#[derive(Debug, Clone, PartialEq)]
pub struct PlateauSegment {
    pub start: usize,
    pub end: usize,
    pub cost: f64,
}

pub fn staircase_segments(
    costs: &[f64],
    rel_tol: f64,
    min_len: usize,
    drop_factor: f64,
) -> Vec<PlateauSegment> {
    let n = costs.len();
    if n < min_len + 1 {
        return Vec::new();
    }
    let tiny = 1e-300;
    // plateaus: maximal runs of consecutive small relative changes
    let mut plateaus: Vec<(usize, usize)> = Vec::new();
    let mut run_start: Option<usize> = None;
    for t in 0..n - 1 {
        let rel = (costs[t] - costs[t + 1]).abs() / costs[t].abs().max(tiny);
        if rel < rel_tol {
            if run_start.is_none() {
                run_start = Some(t);
            }
        } else if let Some(s) = run_start.take() {
            if t - s >= min_len {
                plateaus.push((s, t));
            }
        }
    }
    if let Some(s) = run_start {
        if n - 1 - s >= min_len {
            plateaus.push((s, n - 1));
        }
    }
    // a plateau counts as a staircase segment when the cost later drops by
    // the required factor before the next plateau begins
    let mut segments = Vec::new();
    for (i, &(s, e)) in plateaus.iter().enumerate() {
        let horizon = if i + 1 < plateaus.len() {
            plateaus[i + 1].0 + 1
        } else {
            n
        };
        let target = costs[e] / drop_factor;
        if costs[e..horizon.max(e + 1).min(n)]
            .iter()
            .any(|&c| c <= target)
        {
            segments.push(PlateauSegment {
                start: s,
                end: e,
                cost: costs[e],
            });
        }
    }
    segments
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spearman_detects_monotone_trends() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y = [10.0, 8.0, 7.0, 3.0, 1.0];
        assert!((spearman(&x, &y) + 1.0).abs() < 1e-12);
        let y2 = [1.0, 4.0, 9.0, 16.0, 25.0];
        assert!((spearman(&x, &y2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn power_law_fit_recovers_exponent() {
        let xs = [8.0f64, 12.0, 16.0, 20.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(1.7)).collect();
        assert!((power_law_exponent(&xs, &ys) - 1.7).abs() < 1e-10);
    }

    #[test]
    fn quartiles_and_median() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert!((median(&xs) - 2.5).abs() < 1e-12);
        assert!((iqr(&xs) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn staircase_detector_counts_plateau_drop_pairs() {
        // two plateaus at 1.0 and 1e-2, each followed by a 100x drop
        let mut costs = Vec::new();
        costs.extend(std::iter::repeat(1.0).take(15));
        costs.push(0.01);
        costs.extend(std::iter::repeat(0.0099).take(15));
        costs.push(1e-9);
        costs.extend(std::iter::repeat(1e-9).take(3));
        let segs = staircase_segments(&costs, 1e-3, 10, 10.0);
        assert_eq!(segs.len(), 2, "{segs:?}");
        // a monotone fast decay has no plateau
        let fast: Vec<f64> = (0..30).map(|i| 10.0f64.powi(-i)).collect();
        assert!(staircase_segments(&fast, 1e-3, 10, 10.0).is_empty());
    }
}
