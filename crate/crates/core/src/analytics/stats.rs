//! Effect size and rank statistics.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sum of squared deviations from the mean.
fn sum_sq_dev(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m) * (x - m)).sum()
}

/// `(mean(a) - mean(b)) / s_pooled`, where `s_pooled² = (SSa + SSb) / (na + nb - 2)`.
pub fn cohens_d(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Domain(format!(
            "cohen's d needs at least 2 samples per group, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let pooled = (sum_sq_dev(a) + sum_sq_dev(b)) / (a.len() + b.len() - 2) as f64;
    if !(pooled > 0.0) {
        return Err(Error::DegenerateStatistic("pooled variance is zero".into()));
    }
    Ok((mean(a) - mean(b)) / pooled.sqrt())
}

/// 1-based ranks; tied values share the average of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub rho: f64,
    /// Two-sided, from Student's t with `n - 2` degrees of freedom.
    pub p: f64,
    pub n: usize,
}

/// Spearman rank correlation: Pearson correlation of average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Correlation> {
    if x.len() != y.len() {
        return Err(Error::Shape(format!("spearman inputs differ in length: {} vs {}", x.len(), y.len())));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::Domain(format!("spearman needs at least 3 pairs, got {n}")));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::Domain("spearman inputs must be finite".into()));
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let (mx, my) = (mean(&rx), mean(&ry));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateStatistic("spearman input is constant".into()));
    }
    let rho = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    let df = (n - 2) as f64;
    let p = if rho.abs() == 1.0 {
        0.0
    } else {
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        let dist = StudentsT::new(0.0, 1.0, df).expect("df >= 1");
        (2.0 * dist.sf(t.abs())).min(1.0)
    };
    Ok(Correlation { rho, p, n })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KruskalWallis {
    /// Tie-corrected statistic.
    pub h: f64,
    /// Upper tail of chi-square with `groups - 1` degrees of freedom.
    pub p: f64,
    pub df: usize,
    pub n: usize,
}

/// Kruskal–Wallis H over pooled average ranks, divided by the tie correction
/// `1 - Σ(t³ - t) / (N³ - N)`.
pub fn kruskal_wallis(groups: &[&[f64]]) -> Result<KruskalWallis> {
    if groups.len() < 2 {
        return Err(Error::Domain(format!("kruskal-wallis needs at least 2 groups, got {}", groups.len())));
    }
    if let Some(i) = groups.iter().position(|g| g.is_empty()) {
        return Err(Error::Domain(format!("kruskal-wallis group {i} is empty")));
    }
    let pooled: Vec<f64> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    let n = pooled.len();
    if n < 5 {
        return Err(Error::Domain(format!("kruskal-wallis needs at least 5 observations, got {n}")));
    }
    if pooled.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("kruskal-wallis inputs must be finite".into()));
    }
    let ranks = average_ranks(&pooled);
    let nf = n as f64;
    let mut offset = 0;
    let mut sum = 0.0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        sum += r * r / g.len() as f64;
        offset += g.len();
    }
    let h_raw = 12.0 / (nf * (nf + 1.0)) * sum - 3.0 * (nf + 1.0);

    let mut sorted = pooled;
    sorted.sort_by(f64::total_cmp);
    let mut ties = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        ties += t * t * t - t;
        i = j;
    }
    let correction = 1.0 - ties / (nf * nf * nf - nf);
    if correction <= 0.0 {
        return Err(Error::DegenerateStatistic("all observations are tied".into()));
    }
    let h = (h_raw / correction).max(0.0);
    let df = groups.len() - 1;
    let p = ChiSquared::new(df as f64).expect("df >= 1").sf(h);
    Ok(KruskalWallis { h, p, df, n })
}

/// Renders a p-value; anything below 1e-300 (including underflow to 0) prints as `< 1e-300`.
pub fn format_p(p: f64) -> String {
    if p < 1e-300 {
        "< 1e-300".to_string()
    } else {
        format!("{p:.3e}")
    }
}
