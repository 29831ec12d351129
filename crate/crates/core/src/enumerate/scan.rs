use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Seek, SeekFrom, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::checkpoint::{Checkpoint, CHECKPOINT_VERSION};
use super::{keys_of, QuadrupleKey};
use crate::construct::{alpha_vanishes, one_point_decision};
use crate::error::{Error, Result};
use crate::space::{is_free_family_matrix, is_manifold, normalize, CanonicalKey, Convention, WeightPair};
use crate::Int;

/// When to run the (expensive) one-point decision on a record.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OnePointMode {
    Off,
    /// Only where some α vanishes; elsewhere the decision
    /// has no candidates and is known to be negative.
    #[default]
    AlphaVanishing,
    All,
}

/// Which records go to the JSON-Lines output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordFilter {
    #[default]
    All,
    AlphaVanishing,
    FreeFamily,
    OnePoint,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub h_max: u64,
    pub convention: Convention,
    pub one_point: OnePointMode,
    pub threads: usize,
    /// Work units per batch; a checkpoint is written after every batch.
    pub batch_units: usize,
    pub checkpoint: Option<PathBuf>,
    pub records: Option<PathBuf>,
    pub record_filter: RecordFilter,
    /// Stop (as if interrupted) after this many batches of this run.
    pub stop_after_batches: Option<usize>,
}

impl ScanOptions {
    pub fn new(h_max: u64) -> Self {
        ScanOptions {
            h_max,
            convention: Convention::default(),
            one_point: OnePointMode::default(),
            threads: 1,
            batch_units: 2048,
            checkpoint: None,
            records: None,
            record_filter: RecordFilter::default(),
            stop_after_batches: None,
        }
    }
}

/// One line of the record output. `transposed` marks the `(q, p)` partner
/// counted separately when transposes are not identified; `key` is then the
/// key of the partner's transpose.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub key: QuadrupleKey,
    pub transposed: bool,
    pub p: [Int; 3],
    pub q: [Int; 3],
    pub h: u64,
    pub manifold: bool,
    pub positively_curved: bool,
    pub alpha_vanishes: bool,
    pub free_family: bool,
    pub one_point: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub spaces: u64,
    pub alpha_vanishing: u64,
    pub free_family: u64,
    pub one_point: u64,
    pub one_point_checked: u64,
    /// Free-family members with no vanishing α (expected 0).
    pub free_without_alpha: u64,
    pub histogram: BTreeMap<u64, u64>,
}

impl Totals {
    fn merge(&mut self, other: &Totals) {
        self.spaces += other.spaces;
        self.alpha_vanishing += other.alpha_vanishing;
        self.free_family += other.free_family;
        self.one_point += other.one_point;
        self.one_point_checked += other.one_point_checked;
        self.free_without_alpha += other.free_without_alpha;
        for (&h, &n) in &other.histogram {
            *self.histogram.entry(h).or_insert(0) += n;
        }
    }
}

/// Timing and parallelism of a run; not part of the deterministic result.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub threads: usize,
    pub work_units: usize,
    pub resumed_from_unit: Option<usize>,
    pub elapsed_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub h_max: u64,
    pub convention: Convention,
    pub one_point_mode: OnePointMode,
    pub complete: bool,
    pub totals: Totals,
    pub meta: RunMeta,
}

// ---------------------------------------------------------------------------
// Work units

/// Pairs `k₁ ≤ k₂` that admit at least one positively curved key.
pub(crate) fn work_units(h_max: u64) -> Vec<(Int, Int)> {
    let h = h_max as Int;
    let mut out = Vec::new();
    let mut k1 = 1;
    // smallest key in the unit: k3 = 1, m = k2 + 1
    while k1 * k1 + k1 < h {
        let mut k2 = k1;
        while k1 * k2 + k2 < h {
            out.push((k1, k2));
            k2 += 1;
        }
        k1 += 1;
    }
    out
}

/// Representative keys of the positively curved manifolds in one unit:
/// a key is kept iff it is the smallest of the twelve keys of its matrix.
pub(crate) fn for_each_space(h_max: u64, (k1, k2): (Int, Int), mut f: impl FnMut(QuadrupleKey, WeightPair)) {
    let h = h_max as Int;
    let base = k1 * k2;
    let mut m = k2 + 1;
    loop {
        let k3_min = (m - k1 - k2 + 1).max(1);
        if base + k3_min * m > h {
            break;
        }
        let mut k3 = k3_min;
        while base + k3 * m <= h {
            let key = [k1, k2, k3, -m];
            let p = [k1 + k2 + k3 - m, k3, -m];
            let q = [0, k2 + k3 - m, k1 + k3 - m];
            let mat = [0, 1, 2].map(|i| [0, 1, 2].map(|j| p[i] - q[j]));
            if keys_of(&mat).iter().all(|k| *k >= key) {
                let wp = WeightPair::new(p, q).expect("reconstructed pairs are balanced");
                if is_manifold(&wp) {
                    f(key.into(), wp);
                }
            }
            k3 += 1;
        }
        m += 1;
    }
}

struct UnitOutput {
    totals: Totals,
    records: Vec<u8>,
}

fn process_unit(opts: &ScanOptions, unit: (Int, Int), want_records: bool) -> Result<UnitOutput> {
    let mut totals = Totals::default();
    let mut records = Vec::new();
    let copies = if opts.convention.identifies_transpose() { 1 } else { 2 };
    let mut err = None;
    for_each_space(opts.h_max, unit, |key, wp| {
        if err.is_some() {
            return;
        }
        let h = key.h() as u64;
        if h.is_multiple_of(2) {
            err = Some(Error::Invariant(format!("manifold {wp} has even h = {h}")));
            return;
        }
        let tb = match alpha_vanishes(&wp) {
            Ok(b) => b,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        let ff = is_free_family_matrix(&wp.matrix().0);
        let one_point = match opts.one_point {
            OnePointMode::Off => None,
            OnePointMode::AlphaVanishing if !tb => Some(false),
            _ => {
                totals.one_point_checked += copies;
                match one_point_decision(&wp) {
                    Ok(r) => Some(r.is_some()),
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                }
            }
        };
        totals.spaces += copies;
        totals.alpha_vanishing += copies * tb as u64;
        totals.free_family += copies * ff as u64;
        totals.one_point += copies * (one_point == Some(true)) as u64;
        totals.free_without_alpha += copies * (ff && !tb) as u64;
        *totals.histogram.entry(h).or_insert(0) += copies;

        let keep = match opts.record_filter {
            RecordFilter::All => true,
            RecordFilter::AlphaVanishing => tb,
            RecordFilter::FreeFamily => ff,
            RecordFilter::OnePoint => one_point == Some(true),
        };
        if want_records && keep {
            let mut rec = ScanRecord {
                key,
                transposed: false,
                p: wp.p(),
                q: wp.q(),
                h,
                manifold: true,
                positively_curved: true,
                alpha_vanishes: tb,
                free_family: ff,
                one_point,
            };
            for t in 0..copies {
                if t == 1 {
                    rec.transposed = true;
                    std::mem::swap(&mut rec.p, &mut rec.q);
                }
                serde_json::to_writer(&mut records, &rec).expect("records serialize");
                records.push(b'\n');
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(UnitOutput { totals, records }),
    }
}

/// Run the enumeration. The totals and the record file depend only on
/// `h_max`, the convention, the one-point mode and the record filter; not on
/// the thread count, the batch size, or on interruptions and resumes.
pub fn scan(opts: &ScanOptions) -> Result<ScanSummary> {
    if opts.h_max < 1 {
        return Err(Error::EmptySearchSpace);
    }
    let start = Instant::now();
    let units = work_units(opts.h_max);
    let threads = opts.threads.max(1);
    let batch = opts.batch_units.max(1);

    let resume = match &opts.checkpoint {
        Some(path) => Checkpoint::load(path)?,
        None => None,
    };
    if let Some(cp) = &resume {
        cp.check_matches(
            opts.h_max,
            opts.convention,
            opts.one_point,
            opts.record_filter,
            units.len(),
            opts.records.is_some(),
        )?;
    }
    let (mut next, mut totals, mut offset) = match &resume {
        Some(cp) => (cp.next_unit, cp.totals.clone(), cp.records_offset.unwrap_or(0)),
        None => (0, Totals::default(), 0),
    };

    let mut out = match &opts.records {
        None => None,
        Some(path) => {
            let mut f = if resume.is_some() {
                let f = OpenOptions::new().read(true).write(true).open(path).map_err(|e| {
                    Error::Checkpoint(format!("record file {} missing for resume: {e}", path.display()))
                })?;
                if f.metadata()?.len() < offset {
                    return Err(Error::Checkpoint("record file is shorter than the checkpoint says".into()));
                }
                f.set_len(offset)?;
                f
            } else {
                File::create(path)?
            };
            f.seek(SeekFrom::Start(offset))?;
            Some(BufWriter::new(f))
        }
    };

    let want_records = out.is_some();
    let mut batches_done = 0usize;
    let mut complete = true;
    while next < units.len() {
        if opts.stop_after_batches.is_some_and(|n| batches_done >= n) {
            complete = false;
            break;
        }
        let end = (next + batch).min(units.len());
        let slice = &units[next..end];
        let results: Vec<Mutex<Option<Result<UnitOutput>>>> = slice.iter().map(|_| Mutex::new(None)).collect();
        let cursor = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..threads.min(slice.len()) {
                scope.spawn(|| loop {
                    let i = cursor.fetch_add(1, Ordering::Relaxed);
                    if i >= slice.len() {
                        break;
                    }
                    let r = process_unit(opts, slice[i], want_records);
                    *results[i].lock().unwrap() = Some(r);
                });
            }
        });
        for cell in results {
            let r = cell.into_inner().unwrap().expect("every unit processed")?;
            totals.merge(&r.totals);
            if let Some(w) = out.as_mut() {
                w.write_all(&r.records)?;
                offset += r.records.len() as u64;
            }
        }
        next = end;
        batches_done += 1;
        if let Some(w) = out.as_mut() {
            w.flush()?;
            w.get_ref().sync_data()?;
        }
        if let Some(path) = &opts.checkpoint {
            Checkpoint {
                version: CHECKPOINT_VERSION,
                h_max: opts.h_max,
                convention: opts.convention,
                one_point: opts.one_point,
                record_filter: opts.record_filter,
                total_units: units.len(),
                next_unit: next,
                records_offset: want_records.then_some(offset),
                totals: totals.clone(),
            }
            .save(path)?;
        }
    }
    if let Some(mut w) = out {
        w.flush()?;
    }
    Ok(ScanSummary {
        h_max: opts.h_max,
        convention: opts.convention,
        one_point_mode: opts.one_point,
        complete,
        totals,
        meta: RunMeta {
            threads,
            work_units: units.len(),
            resumed_from_unit: resume.map(|c| c.next_unit),
            elapsed_secs: start.elapsed().as_secs_f64(),
        },
    })
}

/// Canonical keys of every space the scan counts, single threaded. Under
/// the distinct-transpose convention each class contributes its transpose too.
pub fn scan_records_keys(h_max: u64, convention: Convention) -> BTreeSet<CanonicalKey> {
    let mut keys = BTreeSet::new();
    for unit in work_units(h_max) {
        for_each_space(h_max, unit, |_, wp| {
            keys.insert(normalize(&wp, convention));
            if !convention.identifies_transpose() {
                keys.insert(normalize(&wp.swapped(), convention));
            }
        });
    }
    keys
}
