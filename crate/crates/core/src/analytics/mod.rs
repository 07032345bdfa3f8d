//! Validation statistics over a manifest: effect sizes of high-frequency
//! suppression, motion/PSNR rank correlation, tier separability and
//! per-tier distributions.

mod external;
mod report;
mod stats;

pub use external::{parse_external, tier_rows, ExternalRow};
pub use report::{
    distribution_report, suppression_report, Coverage, EffectCell, EffectRow, EffectSizeTable, GroupStats, Moments,
    Population, PopulationTests, ValidationReport, METRICS, POPULATIONS,
};
pub use stats::{average_ranks, cohens_d, format_p, kruskal_wallis, spearman, Correlation, KruskalWallis};
