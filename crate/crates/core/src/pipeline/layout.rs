//! Output image tree: `<root>/<split>/<tier>/<blur|sharp>/<video>_<img_num>.png`.

use std::fs;
use std::path::{Path, PathBuf};

use super::record::{SampleRecord, Split};
use crate::error::Result;
use crate::synthesis::Tier;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageRole {
    Blur,
    Sharp,
}

impl ImageRole {
    pub fn as_str(self) -> &'static str {
        match self {
            ImageRole::Blur => "blur",
            ImageRole::Sharp => "sharp",
        }
    }
}

/// Path relative to the dataset root, using `/` separators on every platform.
pub fn canonical_path(split: Split, tier: Tier, role: ImageRole, file_name: &str) -> String {
    format!("{split}/{tier}/{}/{file_name}", role.as_str())
}

/// Moves each record's images under `root` to their canonical location for
/// the record's current split and tier, updating the stored paths.
pub fn relayout(records: &mut [SampleRecord], root: &Path) -> Result<()> {
    for r in records.iter_mut() {
        let name = r.file_name();
        for role in [ImageRole::Blur, ImageRole::Sharp] {
            let target = canonical_path(r.split, r.difficulty, role, &name);
            let current = match role {
                ImageRole::Blur => &mut r.blur_path,
                ImageRole::Sharp => &mut r.sharp_path,
            };
            if *current != target {
                move_file(&resolve_path(root, current), &resolve_path(root, &target))?;
                *current = target;
            }
        }
    }
    Ok(())
}

/// Joins a `/`-separated manifest path onto `root`.
pub fn resolve_path(root: &Path, relative: &str) -> PathBuf {
    relative.split('/').fold(root.to_path_buf(), |p, part| p.join(part))
}

fn move_file(from: &Path, to: &Path) -> Result<()> {
    if let Some(parent) = to.parent() {
        fs::create_dir_all(parent)?;
    }
    if fs::rename(from, to).is_err() {
        fs::copy(from, to)?;
        fs::remove_file(from)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::record::testing::record;

    #[test]
    fn canonical_layout() {
        assert_eq!(
            canonical_path(Split::Test, Tier::Hard, ImageRole::Blur, "v_3.png"),
            "test/hard/blur/v_3.png"
        );
    }

    #[test]
    fn relayout_moves_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut r = record("v", 3);
        r.split = Split::Train;
        r.blur_path = "staging/b.png".into();
        r.sharp_path = "staging/s.png".into();
        fs::create_dir_all(dir.path().join("staging")).unwrap();
        fs::write(dir.path().join("staging/b.png"), b"b").unwrap();
        fs::write(dir.path().join("staging/s.png"), b"s").unwrap();
        let mut records = vec![r];
        relayout(&mut records, dir.path()).unwrap();
        assert_eq!(records[0].blur_path, "train/medium/blur/v_3.png");
        assert_eq!(fs::read(dir.path().join("train/medium/sharp/v_3.png")).unwrap(), b"s");
        assert!(!dir.path().join("staging/b.png").exists());
    }
}
