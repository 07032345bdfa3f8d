use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Easy,
    Medium,
    Hard,
}

pub const TIERS: [Tier; 3] = [Tier::Easy, Tier::Medium, Tier::Hard];

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Easy => "easy",
            Tier::Medium => "medium",
            Tier::Hard => "hard",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "easy" => Ok(Tier::Easy),
            "medium" => Ok(Tier::Medium),
            "hard" => Ok(Tier::Hard),
            other => Err(Error::Input(format!("unknown tier {other:?}"))),
        }
    }
}

/// Requested PSNR band `[p_min, p_max]` (dB) for one tier.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetRange {
    pub p_min: f64,
    pub p_max: f64,
    pub tier: Tier,
}

impl TargetRange {
    pub fn new(p_min: f64, p_max: f64, tier: Tier) -> Result<Self> {
        let r = Self { p_min, p_max, tier };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_min.is_finite() && self.p_max.is_finite() && self.p_min < self.p_max) {
            return Err(Error::Config(format!(
                "target range [{}, {}] for {} must satisfy p_min < p_max",
                self.p_min, self.p_max, self.tier
            )));
        }
        Ok(())
    }

    /// Defaults: Easy [30, 35], Medium [24, 30], Hard [20, 24].
    pub fn default_for(tier: Tier) -> Self {
        match tier {
            Tier::Easy => Self { p_min: 30.0, p_max: 35.0, tier },
            Tier::Medium => Self { p_min: 24.0, p_max: 30.0, tier },
            Tier::Hard => Self { p_min: 20.0, p_max: 24.0, tier },
        }
    }

    pub fn defaults() -> Vec<Self> {
        TIERS.iter().map(|&t| Self::default_for(t)).collect()
    }

    pub fn contains(&self, psnr: f64) -> bool {
        (self.p_min..=self.p_max).contains(&psnr)
    }

    /// Distance used to rank windows.
    pub fn epsilon(&self, psnr: f64, mode: EpsilonMode) -> f64 {
        match mode {
            EpsilonMode::NearestBound => (psnr - self.p_min).abs().min((psnr - self.p_max).abs()),
            EpsilonMode::Midpoint => (psnr - 0.5 * (self.p_min + self.p_max)).abs(),
        }
    }

    /// Checks that ranges of distinct tiers do not overlap (shared endpoints allowed).
    pub fn validate_set(ranges: &[TargetRange]) -> Result<()> {
        for r in ranges {
            r.validate()?;
        }
        for (i, a) in ranges.iter().enumerate() {
            for b in &ranges[i + 1..] {
                if a.tier == b.tier {
                    return Err(Error::Config(format!("duplicate target range for {}", a.tier)));
                }
                if a.p_min < b.p_max && b.p_min < a.p_max {
                    return Err(Error::Config(format!("target ranges for {} and {} overlap", a.tier, b.tier)));
                }
            }
        }
        Ok(())
    }
}

/// How the window search scores a PSNR against its target range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsilonMode {
    /// `min(|p - p_min|, |p - p_max|)`, the distance to the nearer bound.
    #[default]
    NearestBound,
    /// Distance to the middle of the range.
    Midpoint,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ranges_are_disjoint() {
        TargetRange::validate_set(&TargetRange::defaults()).unwrap();
        let overlapping = [
            TargetRange::new(24.0, 31.0, Tier::Medium).unwrap(),
            TargetRange::default_for(Tier::Easy),
        ];
        assert!(TargetRange::validate_set(&overlapping).is_err());
        assert!(TargetRange::new(30.0, 30.0, Tier::Easy).is_err());
    }

    #[test]
    fn epsilon_prefers_nearer_bound() {
        let r = TargetRange::default_for(Tier::Medium);
        assert_eq!(r.epsilon(25.0, EpsilonMode::NearestBound), 1.0);
        assert_eq!(r.epsilon(29.5, EpsilonMode::NearestBound), 0.5);
        assert_eq!(r.epsilon(20.0, EpsilonMode::NearestBound), 4.0);
        assert_eq!(r.epsilon(27.0, EpsilonMode::Midpoint), 0.0);
    }

    #[test]
    fn tier_names() {
        for t in TIERS {
            assert_eq!(t.as_str().parse::<Tier>().unwrap(), t);
        }
        assert_eq!(serde_json::to_string(&Tier::Hard).unwrap(), "\"hard\"");
    }
}
