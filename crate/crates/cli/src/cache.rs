//! On-disk series cache: `<dir>/<name>_<trunc>.txt` plus a `.sha256` sidecar.
//!
//! The cache is advisory. A file is used only if its checksum matches, it
//! parses strictly, and the first tenth of its coefficients agrees with a
//! fresh computation; otherwise a warning goes to stderr and the caller
//! recomputes.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use congruence_core::series::Series;
use congruence_core::QSeries;
use sha2::{Digest, Sha256};

static WRITE_LOCK: Mutex<()> = Mutex::new(());

pub struct Cache {
    dir: PathBuf,
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self, name: &str, trunc: i64) -> PathBuf {
        self.dir.join(format!("{name}_{trunc}.txt"))
    }

    /// The cached series for `(name, trunc)`, if present and sound. `rederive`
    /// computes the series to a smaller precision for the spot check.
    pub fn load(&self, name: &str, trunc: i64, rederive: impl FnOnce(i64) -> Option<QSeries>) -> Option<QSeries> {
        let path = self.path(name, trunc);
        if !path.exists() {
            return None;
        }
        match self.load_checked(&path, name, trunc, rederive) {
            Ok(s) => Some(s),
            Err(why) => {
                eprintln!("warning: ignoring cache file {}: {why}; recomputing", path.display());
                None
            }
        }
    }

    fn load_checked(
        &self,
        path: &Path,
        name: &str,
        trunc: i64,
        rederive: impl FnOnce(i64) -> Option<QSeries>,
    ) -> Result<QSeries, String> {
        let bytes = fs::read(path).map_err(|e| e.to_string())?;
        let sidecar = fs::read_to_string(sidecar_path(path)).map_err(|_| "missing checksum".to_string())?;
        if sidecar.trim() != sha256_hex(&bytes) {
            return Err("checksum mismatch".into());
        }
        let text = String::from_utf8(bytes).map_err(|_| "not UTF-8".to_string())?;
        let (stored_name, series) = Series::from_cache_text(&text).map_err(|e| e.to_string())?;
        if stored_name != name || series.precision() != trunc {
            return Err("header does not match the file name".into());
        }
        let span = series.precision() - series.offset();
        let probe = series.offset() + (span + 9) / 10;
        let fresh = rederive(probe).ok_or("cannot re-derive")?;
        if fresh != series.truncate(probe) {
            return Err("leading coefficients disagree with a fresh computation".into());
        }
        Ok(series)
    }

    /// Best effort; failures only warn.
    pub fn store(&self, name: &str, series: &QSeries) {
        let _guard = WRITE_LOCK.lock().unwrap_or_else(|p| p.into_inner());
        let path = self.path(name, series.precision());
        let text = series.to_cache_text(name);
        let result = fs::create_dir_all(&self.dir)
            .and_then(|_| fs::write(&path, text.as_bytes()))
            .and_then(|_| fs::write(sidecar_path(&path), sha256_hex(text.as_bytes()) + "\n"));
        if let Err(e) = result {
            eprintln!("warning: could not write cache file {}: {e}", path.display());
        }
    }

    /// Largest `trunc` with a file for `name`, whatever its state.
    pub fn largest(&self, name: &str) -> Option<i64> {
        let prefix = format!("{name}_");
        fs::read_dir(&self.dir)
            .ok()?
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let file = e.file_name().into_string().ok()?;
                file.strip_prefix(&prefix)?.strip_suffix(".txt")?.parse::<i64>().ok()
            })
            .max()
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".sha256");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use congruence_core::specialfns::y_series;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let y: QSeries = y_series(60);
        cache.store("y", &y);
        assert_eq!(cache.largest("y"), Some(60));
        let back = cache.load("y", 60, |p| Some(y_series(p))).unwrap();
        assert_eq!(back, y);
        assert_eq!(fs::read_to_string(cache.path("y", 60)).unwrap(), y.to_cache_text("y"));
        assert!(cache.load("y", 50, |p| Some(y_series(p))).is_none());

        // consistent checksum but wrong leading data
        let bad = y.add(&Series::monomial(1.into(), 2, 60));
        cache.store("y", &bad);
        assert!(cache.load("y", 60, |p| Some(y_series(p))).is_none());

        // bytes changed behind the checksum
        cache.store("y", &y);
        let path = cache.path("y", 60);
        let text = fs::read_to_string(&path).unwrap().replace("\n3\n", "\n4\n");
        fs::write(&path, text).unwrap();
        assert!(cache.load("y", 60, |p| Some(y_series(p))).is_none());
    }
}
