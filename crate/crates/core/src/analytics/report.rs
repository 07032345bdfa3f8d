//! Corpus-level validation: suppression effect sizes, per-tier distributions,
//! motion/PSNR correlation, tier separability and cross-tier video coverage.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::stats::{cohens_d, format_p, kruskal_wallis, spearman, Correlation, KruskalWallis};
use crate::error::{Error, Result};
use crate::pipeline::{Manifest, SampleRecord, Split};
use crate::synthesis::{Tier, TIERS};

/// Record population a statistic is computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Population {
    Train,
    Test,
    Combined,
}

pub const POPULATIONS: [Population; 3] = [Population::Train, Population::Test, Population::Combined];

impl Population {
    pub fn includes(self, r: &SampleRecord) -> bool {
        match self {
            Population::Train => r.split == Split::Train,
            Population::Test => r.split == Split::Test,
            Population::Combined => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Population::Train => "train",
            Population::Test => "test",
            Population::Combined => "combined",
        }
    }
}

/// One effect size; `d` is absent when the group has fewer than 2 records or no spread.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectCell {
    pub n: usize,
    pub d: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectRow {
    pub population: Population,
    pub easy: EffectCell,
    pub medium: EffectCell,
    pub hard: EffectCell,
    pub overall: EffectCell,
}

impl EffectRow {
    pub fn tier(&self, tier: Tier) -> &EffectCell {
        match tier {
            Tier::Easy => &self.easy,
            Tier::Medium => &self.medium,
            Tier::Hard => &self.hard,
        }
    }
}

/// Cohen's d of sharp versus blur high-frequency energy, Easy/Medium/Hard/Overall × Train/Test/Combined.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectSizeTable {
    pub rows: Vec<EffectRow>,
}

impl EffectSizeTable {
    pub fn row(&self, population: Population) -> &EffectRow {
        self.rows.iter().find(|r| r.population == population).expect("every population has a row")
    }
}

fn effect_cell<'a>(records: impl Iterator<Item = &'a SampleRecord>) -> EffectCell {
    let (sharp, blur): (Vec<f64>, Vec<f64>) = records.map(|r| (r.isp_sharp, r.isp_blur)).unzip();
    EffectCell {
        n: sharp.len(),
        d: cohens_d(&sharp, &blur).ok(),
    }
}

pub fn suppression_report(records: &[SampleRecord]) -> EffectSizeTable {
    let rows = POPULATIONS
        .iter()
        .map(|&population| {
            let in_pop = move |r: &&SampleRecord| population.includes(r);
            let tier = |t: Tier| effect_cell(records.iter().filter(in_pop).filter(move |r| r.difficulty == t));
            EffectRow {
                population,
                easy: tier(Tier::Easy),
                medium: tier(Tier::Medium),
                hard: tier(Tier::Hard),
                overall: effect_cell(records.iter().filter(in_pop)),
            }
        })
        .collect();
    EffectSizeTable { rows }
}

/// Mean and sample standard deviation; `sd` is 0 for a single value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

impl Moments {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        let sd = if n > 1 { (ss / (n - 1) as f64).sqrt() } else { 0.0 };
        Some(Self { n, mean, sd })
    }
}

pub const METRICS: [&str; 6] = ["psnr", "ssim", "lpips", "motion", "sharpness", "contrast"];

fn metric(r: &SampleRecord, name: &str) -> Option<f64> {
    match name {
        "psnr" => Some(r.psnr),
        "ssim" => Some(r.ssim),
        "lpips" => r.lpips,
        "motion" => Some(r.motion),
        "sharpness" => Some(r.sharpness),
        "contrast" => Some(r.contrast),
        _ => None,
    }
}

/// Per-group sample counts and metric moments; `lpips` is absent without scores.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupStats {
    /// `"all"` or a tier name.
    pub group: String,
    pub count: usize,
    pub train: usize,
    pub test: usize,
    pub videos: usize,
    pub metrics: BTreeMap<String, Option<Moments>>,
}

fn group_stats(group: &str, records: &[&SampleRecord]) -> GroupStats {
    let metrics = METRICS
        .iter()
        .map(|&m| {
            let values: Vec<f64> = records.iter().filter_map(|r| metric(r, m)).collect();
            (m.to_string(), Moments::of(&values))
        })
        .collect();
    GroupStats {
        group: group.to_string(),
        count: records.len(),
        train: records.iter().filter(|r| r.split == Split::Train).count(),
        test: records.iter().filter(|r| r.split == Split::Test).count(),
        videos: records.iter().map(|r| r.video.as_str()).collect::<BTreeSet<_>>().len(),
        metrics,
    }
}

/// How many videos contribute pairs to exactly 1, 2 and 3 tiers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coverage {
    pub videos: usize,
    pub spanning: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopulationTests {
    pub population: Population,
    pub n: usize,
    /// Motion against PSNR; absent when undefined for this population.
    pub spearman: Option<Correlation>,
    /// Motion grouped by tier, over the non-empty tiers.
    pub kruskal_wallis: Option<KruskalWallis>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub corpus_size: usize,
    pub effect_sizes: EffectSizeTable,
    pub tests: Vec<PopulationTests>,
    /// `"all"` first, then Easy, Medium, Hard.
    pub groups: Vec<GroupStats>,
    pub coverage: Coverage,
}

pub fn distribution_report(manifest: &Manifest) -> Result<ValidationReport> {
    let records = &manifest.records;
    if records.is_empty() {
        return Err(Error::Input("cannot report on an empty manifest".into()));
    }
    let all: Vec<&SampleRecord> = records.iter().collect();
    let mut groups = vec![group_stats("all", &all)];
    for t in TIERS {
        let members: Vec<&SampleRecord> = records.iter().filter(|r| r.difficulty == t).collect();
        groups.push(group_stats(t.as_str(), &members));
    }

    let tests = POPULATIONS
        .iter()
        .map(|&population| {
            let pop: Vec<&SampleRecord> = records.iter().filter(|r| population.includes(r)).collect();
            let motion: Vec<f64> = pop.iter().map(|r| r.motion).collect();
            let psnr: Vec<f64> = pop.iter().map(|r| r.psnr).collect();
            let by_tier: Vec<Vec<f64>> = TIERS
                .iter()
                .map(|&t| pop.iter().filter(|r| r.difficulty == t).map(|r| r.motion).collect())
                .filter(|g: &Vec<f64>| !g.is_empty())
                .collect();
            let slices: Vec<&[f64]> = by_tier.iter().map(Vec::as_slice).collect();
            PopulationTests {
                population,
                n: pop.len(),
                spearman: spearman(&motion, &psnr).ok(),
                kruskal_wallis: kruskal_wallis(&slices).ok(),
            }
        })
        .collect();

    let mut tiers_per_video: BTreeMap<&str, BTreeSet<Tier>> = BTreeMap::new();
    for r in records {
        tiers_per_video.entry(&r.video).or_default().insert(r.difficulty);
    }
    let mut spanning = [0usize; 3];
    for tiers in tiers_per_video.values() {
        spanning[tiers.len() - 1] += 1;
    }

    Ok(ValidationReport {
        corpus_size: records.len(),
        effect_sizes: suppression_report(records),
        tests,
        groups,
        coverage: Coverage {
            videos: tiers_per_video.len(),
            spanning,
        },
    })
}

fn cell(c: &EffectCell) -> String {
    match c.d {
        Some(d) => format!("{d:.2}"),
        None => "-".to_string(),
    }
}

impl ValidationReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Corpus: {} pairs from {} videos", self.corpus_size, self.coverage.videos);
        let _ = writeln!(s);
        let _ = writeln!(s, "{:<10} {:>8} {:>8} {:>8} {:>8} {:>8}", "", "All", "Easy", "Medium", "Hard", "");
        let _ = writeln!(
            s,
            "{:<10} {:>8} {:>8} {:>8} {:>8}",
            "Samples",
            self.groups[0].count,
            self.groups[1].count,
            self.groups[2].count,
            self.groups[3].count
        );
        for m in METRICS {
            let col = |g: &GroupStats| match g.metrics.get(m).copied().flatten() {
                Some(mo) => format!("{:.3}±{:.3}", mo.mean, mo.sd),
                None => "-".to_string(),
            };
            let _ = writeln!(
                s,
                "{:<10} {:>16} {:>16} {:>16} {:>16}",
                m,
                col(&self.groups[0]),
                col(&self.groups[1]),
                col(&self.groups[2]),
                col(&self.groups[3])
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "High-frequency suppression, Cohen's d (sharp vs blur energy)");
        let _ = writeln!(s, "{:<10} {:>8} {:>8} {:>8} {:>8}", "Split", "Easy", "Medium", "Hard", "Overall");
        for r in &self.effect_sizes.rows {
            let _ = writeln!(
                s,
                "{:<10} {:>8} {:>8} {:>8} {:>8}",
                r.population.as_str(),
                cell(&r.easy),
                cell(&r.medium),
                cell(&r.hard),
                cell(&r.overall)
            );
        }
        let _ = writeln!(s);
        for t in &self.tests {
            let rho = match t.spearman {
                Some(c) => format!("rho = {:.4}, p {}", c.rho, p_text(c.p)),
                None => "rho undefined".to_string(),
            };
            let kw = match t.kruskal_wallis {
                Some(k) => format!("H = {:.3} (df {}), p {}", k.h, k.df, p_text(k.p)),
                None => "H undefined".to_string(),
            };
            let _ = writeln!(s, "{:<9} n = {:<6} motion~psnr {rho}; motion by tier {kw}", t.population.as_str(), t.n);
        }
        let _ = writeln!(s);
        let [one, two, three] = self.coverage.spanning;
        let _ = writeln!(s, "Videos spanning 3 tiers: {three}, 2 tiers: {two}, 1 tier: {one}");
        s
    }
}

fn p_text(p: f64) -> String {
    let f = format_p(p);
    if f.starts_with('<') {
        f
    } else {
        format!("= {f}")
    }
}
