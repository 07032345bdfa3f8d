//! Declarative build configuration, loaded from TOML.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowParams;
use crate::pipeline::{FilterConfig, SplitConfig};
use crate::synthesis::{CandidatePolicy, EpsilonMode, TargetRange, Tier};

/// Every knob of a build. Missing sections take their defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BuildConfig {
    /// Each root is either a frame directory or a directory of frame directories.
    pub inputs: Vec<PathBuf>,
    pub output: PathBuf,
    pub seed: u64,
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
    pub sidecar: Option<PathBuf>,
    pub candidates: CandidatePolicy,
    pub targets: Vec<TargetRange>,
    pub epsilon_mode: EpsilonMode,
    pub flow: FlowParams,
    pub filter: FilterConfig,
    pub split: SplitConfig,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            inputs: Vec::new(),
            output: PathBuf::from("dataset"),
            seed: 0,
            jobs: None,
            sidecar: None,
            candidates: CandidatePolicy::default(),
            targets: TargetRange::defaults(),
            epsilon_mode: EpsilonMode::default(),
            flow: FlowParams::default(),
            filter: FilterConfig::default(),
            split: SplitConfig::default(),
        }
    }
}

impl BuildConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a TOML file; relative paths inside it resolve against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut config = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        config.inputs.iter_mut().for_each(rebase);
        rebase(&mut config.output);
        if let Some(s) = config.sidecar.as_mut() {
            rebase(s);
        }
        Ok(config)
    }

    /// Parameter checks only; see [`BuildConfig::validate_paths`] for the filesystem.
    pub fn validate(&self) -> Result<()> {
        self.candidates.validate()?;
        if self.targets.is_empty() {
            return Err(Error::Config("at least one target range is required".into()));
        }
        TargetRange::validate_set(&self.targets)?;
        self.flow.validate()?;
        self.filter.validate()?;
        self.split.validate()?;
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        Ok(())
    }

    pub fn validate_paths(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(Error::Config("no input roots given".into()));
        }
        for p in &self.inputs {
            if !p.is_dir() {
                return Err(Error::Config(format!("input root {} is not a directory", p.display())));
            }
        }
        if let Some(s) = &self.sidecar {
            if !s.is_file() {
                return Err(Error::Config(format!("sidecar {} does not exist", s.display())));
            }
        }
        Ok(())
    }

    /// Pairs whose achieved PSNR falls below this are discarded at synthesis:
    /// the Hard range's `p_min`, or the lowest `p_min` when no Hard range is set.
    pub fn psnr_floor(&self) -> f64 {
        self.targets
            .iter()
            .find(|t| t.tier == Tier::Hard)
            .map(|t| t.p_min)
            .unwrap_or_else(|| self.targets.iter().map(|t| t.p_min).fold(f64::INFINITY, f64::min))
    }

    /// Target ranges ordered Easy, Medium, Hard.
    pub fn ordered_targets(&self) -> Vec<TargetRange> {
        let mut t = self.targets.clone();
        t.sort_by_key(|r| r.tier);
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        BuildConfig::default().validate().unwrap();
        assert_eq!(BuildConfig::default().psnr_floor(), 20.0);
    }

    #[test]
    fn toml_sections_override_defaults() {
        let c = BuildConfig::from_toml(
            r#"
            seed = 7
            inputs = ["frames"]
            [filter]
            min_ssim = 0.5
            [[targets]]
            p_min = 18.0
            p_max = 24.0
            tier = "hard"
            "#,
        )
        .unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.filter.min_ssim, 0.5);
        assert_eq!(c.filter.max_lpips, 0.35);
        assert_eq!(c.targets.len(), 1);
        assert_eq!(c.psnr_floor(), 18.0);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_config_errors() {
        assert!(matches!(BuildConfig::from_toml("sed = 1"), Err(Error::Config(_))));
        let c = BuildConfig::from_toml("[split]\ntest_fraction = 1.5").unwrap();
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn relative_paths_follow_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("build.toml");
        fs::write(&path, "inputs = [\"videos\"]\noutput = \"out\"").unwrap();
        let c = BuildConfig::load(&path).unwrap();
        assert_eq!(c.inputs[0], dir.path().join("videos"));
        assert_eq!(c.output, dir.path().join("out"));
    }
}
