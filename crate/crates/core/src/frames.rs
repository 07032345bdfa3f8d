//! Frame sequences: in-memory slices or directories of numbered images.

use std::borrow::Cow;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::imagekit::{io, ImageBuffer};

/// Random-access, read-only frame sequence.
pub trait FrameSource: Sync {
    fn len(&self) -> usize;

    fn frame(&self, index: usize) -> Result<Cow<'_, ImageBuffer>>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl FrameSource for [ImageBuffer] {
    fn len(&self) -> usize {
        <[ImageBuffer]>::len(self)
    }

    fn frame(&self, index: usize) -> Result<Cow<'_, ImageBuffer>> {
        self.get(index)
            .map(Cow::Borrowed)
            .ok_or_else(|| Error::Input(format!("frame {index} out of range ({} frames)", self.len())))
    }
}

impl FrameSource for Vec<ImageBuffer> {
    fn len(&self) -> usize {
        self.as_slice().len()
    }

    fn frame(&self, index: usize) -> Result<Cow<'_, ImageBuffer>> {
        self.as_slice().frame(index)
    }
}

/// A directory of zero-padded numbered PNG/JPEG files (`000001.png`, ...),
/// decoded on demand. Files are ordered by the number in their stem.
#[derive(Debug, Clone)]
pub struct DirectoryFrames {
    root: PathBuf,
    files: Vec<PathBuf>,
}

impl DirectoryFrames {
    pub fn open(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref().to_path_buf();
        let mut numbered = Vec::new();
        for entry in fs::read_dir(&root)? {
            let path = entry?.path();
            if !path.is_file() || !is_frame_file(&path) {
                continue;
            }
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            match stem.parse::<u64>() {
                Ok(n) => numbered.push((n, path)),
                Err(_) => log::debug!("skipping non-numbered file {}", path.display()),
            }
        }
        numbered.sort();
        Ok(Self {
            root,
            files: numbered.into_iter().map(|(_, p)| p).collect(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn files(&self) -> &[PathBuf] {
        &self.files
    }
}

fn is_frame_file(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref(),
        Some("png" | "jpg" | "jpeg")
    )
}

impl FrameSource for DirectoryFrames {
    fn len(&self) -> usize {
        self.files.len()
    }

    fn frame(&self, index: usize) -> Result<Cow<'_, ImageBuffer>> {
        let path = self
            .files
            .get(index)
            .ok_or_else(|| Error::Input(format!("frame {index} out of range in {}", self.root.display())))?;
        io::load(path).map(Cow::Owned)
    }
}

/// Writes `frames` as `000000.png, 000001.png, ...` into `dir`.
pub fn write_sequence(dir: &Path, frames: &[ImageBuffer]) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (i, f) in frames.iter().enumerate() {
        io::save(f, &dir.join(format!("{i:06}.png")))?;
    }
    Ok(())
}
