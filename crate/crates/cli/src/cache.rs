//! On-disk cache of named q-expansions. A file holds one series together
//! with the order it was computed to; shorter or unreadable entries are
//! recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use qseries::series::text;
use qseries::LaurentSeries;

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache { dir: dir.to_path_buf() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.series"))
    }

    /// The cached series truncated to `order`, if the entry reaches it.
    pub fn load(&self, name: &str, order: i64) -> Option<LaurentSeries> {
        let body = fs::read_to_string(self.path(name)).ok()?;
        let (first, rest) = body.split_once('\n')?;
        let stored: i64 = first.strip_prefix("order ")?.trim().parse().ok()?;
        if stored < order {
            return None;
        }
        let s = text::from_text(rest).ok()?;
        (s.truncation() >= order).then(|| s.truncate(order))
    }

    pub fn store(&self, name: &str, order: i64, s: &LaurentSeries) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{name}.series.tmp"));
        fs::write(&tmp, format!("order {order}\n{}", text::to_text(s)))?;
        fs::rename(tmp, self.path(name))
    }
}
