use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use paramodular::jacobi::expand_f_table;
use paramodular::siegel::{build_delta1, required_qmax, RConvention, SiegelSeries};
use paramodular::Result;

/// Series files keyed by `(cap, convention)`.
#[derive(Clone, Debug)]
pub struct SeriesCache {
    dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Cached,
    Built,
}

impl SeriesCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SeriesCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, cap: i64, convention: RConvention) -> PathBuf {
        self.dir.join(format!("delta1-cap{cap}-{convention}.siegel"))
    }

    /// A stored series is used only if it parses and has the requested cap.
    pub fn load(&self, cap: i64, convention: RConvention) -> Option<SiegelSeries> {
        let text = fs::read_to_string(self.path(cap, convention)).ok()?;
        SiegelSeries::parse(&text).ok().filter(|s| s.cap() == cap)
    }

    pub fn store(&self, series: &SiegelSeries, convention: RConvention) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(series.cap(), convention);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, series.to_text())?;
        fs::rename(tmp, path)
    }

    /// Returns the series and where it came from; a failed write is reported
    /// but does not prevent using the freshly built series.
    pub fn delta1(&self, cap: i64, convention: RConvention) -> Result<(SiegelSeries, Origin, Option<io::Error>)> {
        if let Some(s) = self.load(cap, convention) {
            return Ok((s, Origin::Cached, None));
        }
        let s = build_delta1(cap, &expand_f_table(required_qmax(cap)))?;
        let err = self.store(&s, convention).err();
        Ok((s, Origin::Built, err))
    }
}
