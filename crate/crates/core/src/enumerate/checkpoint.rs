use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::scan::{OnePointMode, RecordFilter, Totals};
use crate::error::{Error, Result};
use crate::space::Convention;

pub const CHECKPOINT_VERSION: u32 = 1;

/// Progress of an interrupted scan: every work unit before `next_unit` is
/// folded into `totals`, and the record file holds exactly
/// `records_offset` bytes of their output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub h_max: u64,
    pub convention: Convention,
    pub one_point: OnePointMode,
    pub record_filter: RecordFilter,
    pub total_units: usize,
    pub next_unit: usize,
    pub records_offset: Option<u64>,
    pub totals: Totals,
}

impl Checkpoint {
    /// Write atomically: a sibling temp file is synced and renamed over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let body = serde_json::to_vec_pretty(self)?;
        {
            let mut f = fs::File::create(&tmp)
                .map_err(|e| Error::Checkpoint(format!("cannot write {}: {e}", tmp.display())))?;
            f.write_all(&body)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path).map_err(|e| Error::Checkpoint(format!("cannot rename onto {}: {e}", path.display())))?;
        Ok(())
    }

    /// `Ok(None)` if there is no file; a file that does not parse, has a
    /// different version, or is internally inconsistent is an error.
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        let bytes = match fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let cp: Checkpoint = serde_json::from_slice(&bytes)
            .map_err(|e| Error::Checkpoint(format!("corrupted checkpoint {}: {e}", path.display())))?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!(
                "checkpoint version {} is not supported (expected {CHECKPOINT_VERSION})",
                cp.version
            )));
        }
        if cp.next_unit > cp.total_units {
            return Err(Error::Checkpoint("checkpoint is past the end of the scan".into()));
        }
        Ok(Some(cp))
    }

    /// Refuse to resume a scan with different parameters.
    pub fn check_matches(
        &self,
        h_max: u64,
        convention: Convention,
        one_point: OnePointMode,
        record_filter: RecordFilter,
        total_units: usize,
        with_records: bool,
    ) -> Result<()> {
        let mismatch = |what: &str| Err(Error::Checkpoint(format!("checkpoint was written for a different {what}")));
        if self.h_max != h_max {
            return mismatch("h_max");
        }
        if self.convention != convention {
            return mismatch("convention");
        }
        if self.one_point != one_point {
            return mismatch("one-point mode");
        }
        if self.record_filter != record_filter {
            return mismatch("record filter");
        }
        if self.total_units != total_units {
            return mismatch("work-unit layout");
        }
        if self.records_offset.is_some() != with_records {
            return mismatch("record output setting");
        }
        Ok(())
    }
}
