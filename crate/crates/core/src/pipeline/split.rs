//! Whole-video train/test assignment by seeded search.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::record::{SampleRecord, Split};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitConfig {
    /// Target share of pairs placed in the test split.
    pub test_fraction: f64,
    /// Candidate assignments examined by the random search.
    pub trials: usize,
    /// Assignments whose test fraction lies within this distance of
    /// `test_fraction` are always preferred over those outside it.
    pub fraction_tolerance: f64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self {
            test_fraction: 0.25,
            trials: 10_000,
            fraction_tolerance: 0.05,
        }
    }
}

impl SplitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return Err(Error::Config(format!("test_fraction {} outside (0, 1)", self.test_fraction)));
        }
        if self.trials == 0 {
            return Err(Error::Config("split trials must be at least 1".into()));
        }
        if !(self.fraction_tolerance >= 0.0 && self.fraction_tolerance.is_finite()) {
            return Err(Error::Config(format!("fraction_tolerance {} must be finite and >= 0", self.fraction_tolerance)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitOutcome {
    pub records: Vec<SampleRecord>,
    pub train_videos: Vec<String>,
    pub test_videos: Vec<String>,
    pub test_pair_fraction: f64,
    pub objective: f64,
}

/// `|test pairs / all pairs - test_fraction| + L1(train tier shares, test tier shares)`.
///
/// `counts[v]` is the `[easy, medium, hard]` count of video `v`; `in_test[v]`
/// marks its side. Either side being empty gives `f64::INFINITY`.
pub fn split_objective(counts: &[[usize; 3]], in_test: &[bool], test_fraction: f64) -> f64 {
    let mut train = [0usize; 3];
    let mut test = [0usize; 3];
    for (c, &t) in counts.iter().zip(in_test) {
        let side = if t { &mut test } else { &mut train };
        for k in 0..3 {
            side[k] += c[k];
        }
    }
    let n_train: usize = train.iter().sum();
    let n_test: usize = test.iter().sum();
    if n_train == 0 || n_test == 0 {
        return f64::INFINITY;
    }
    let frac = n_test as f64 / (n_train + n_test) as f64;
    let l1: f64 = (0..3)
        .map(|k| (train[k] as f64 / n_train as f64 - test[k] as f64 / n_test as f64).abs())
        .sum();
    (frac - test_fraction).abs() + l1
}

/// Assigns every video wholly to train or test.
///
/// With `n` videos, all `2^n - 2` proper assignments are enumerated when that
/// does not exceed `config.trials`; otherwise `config.trials` seeded random
/// assignments are scored (size uniform in `1..n`, then a uniform subset of
/// that size). Candidates inside the fraction tolerance band rank ahead of
/// those outside it; within a band a strictly lower objective replaces the
/// incumbent, so the first-seen optimum wins ties.
pub fn split_videos(mut records: Vec<SampleRecord>, config: &SplitConfig, seed: u64) -> Result<SplitOutcome> {
    config.validate()?;
    let mut per_video: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for r in &records {
        per_video.entry(&r.video).or_default()[r.difficulty.index()] += 1;
    }
    let n = per_video.len();
    if n < 2 {
        return Err(Error::Split(format!("need at least 2 distinct videos, found {n}")));
    }
    let videos: Vec<String> = per_video.keys().map(|v| v.to_string()).collect();
    let counts: Vec<[usize; 3]> = per_video.values().copied().collect();

    let total: usize = counts.iter().flatten().sum();
    let outside_band = |assign: &[bool]| {
        let n_test: usize = counts.iter().zip(assign).filter(|(_, &t)| t).flat_map(|(c, _)| c).sum();
        (n_test as f64 / total as f64 - config.test_fraction).abs() > config.fraction_tolerance
    };
    let mut best: Option<((bool, f64), Vec<bool>)> = None;
    let mut consider = |assign: Vec<bool>| {
        let key = (outside_band(&assign), split_objective(&counts, &assign, config.test_fraction));
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, assign));
        }
    };

    let exhaustive = n < 64 && (1u64 << n) - 2 <= config.trials as u64;
    if exhaustive {
        for mask in 1..(1u64 << n) - 1 {
            consider((0..n).map(|i| mask >> i & 1 == 1).collect());
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..config.trials {
            let k = rng.gen_range(1..n);
            let mut assign = vec![false; n];
            for i in sample(&mut rng, n, k) {
                assign[i] = true;
            }
            consider(assign);
        }
    }
    let ((_, objective), assign) = best.expect("at least one proper assignment exists");

    let test_set: BTreeSet<String> = videos
        .iter()
        .zip(&assign)
        .filter(|(_, &t)| t)
        .map(|(v, _)| v.clone())
        .collect();
    for r in &mut records {
        r.split = if test_set.contains(&r.video) { Split::Test } else { Split::Train };
    }
    let n_test = records.iter().filter(|r| r.split == Split::Test).count();
    let (test_videos, train_videos): (Vec<String>, Vec<String>) =
        videos.into_iter().partition(|v| test_set.contains(v));
    Ok(SplitOutcome {
        test_pair_fraction: n_test as f64 / records.len() as f64,
        records,
        train_videos,
        test_videos,
        objective,
    })
}
