//! Parameter sweeps, report serialization and the results cache.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::domination::check_feasible;
use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::graph::{build_harary, HararyParams};
use crate::report::{evaluate_instance, InstanceReport, Params, SCHEMA_VERSION};
use crate::solver::{Method, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub d_min: usize,
    pub d_max: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub k: usize,
    pub method: Method,
    /// Per-instance solver budget.
    pub budget: Option<Duration>,
    /// How instances are fanned out; each solve itself runs sequentially.
    pub execution: Execution,
}

impl SweepConfig {
    pub fn new(
        d: std::ops::RangeInclusive<usize>,
        n: std::ops::RangeInclusive<usize>,
        k: usize,
    ) -> Self {
        Self {
            d_min: *d.start(),
            d_max: *d.end(),
            n_min: *n.start(),
            n_max: *n.end(),
            k,
            method: Method::Bnb,
            budget: None,
            execution: Execution::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d_min > self.d_max || self.n_min > self.n_max {
            return Err(Error::Parameter("empty degree or order range".into()));
        }
        if self.k < 2 {
            return Err(Error::Parameter(format!(
                "sweeps need k >= 2, got {}",
                self.k
            )));
        }
        Ok(())
    }

    /// `(d, n)` pairs in report order: by `n`, then `d`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (self.n_min..=self.n_max)
            .flat_map(|n| (self.d_min..=self.d_max).map(move |d| (d, n)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipRecord {
    pub d: usize,
    pub n: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub schema_version: u32,
    pub reports: Vec<InstanceReport>,
    pub skipped: Vec<SkipRecord>,
}

impl SweepOutput {
    pub fn without_timing(self) -> Self {
        Self {
            reports: self
                .reports
                .into_iter()
                .map(InstanceReport::without_timing)
                .collect(),
            ..self
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(CSV_COLUMNS)?;
        for r in &self.reports {
            w.write_record(csv_row(r))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("CSV fields are ASCII"))
    }
}

pub const CSV_COLUMNS: [&str; 22] = [
    "d",
    "n",
    "k",
    "l",
    "r",
    "lp",
    "rp",
    "m",
    "claim_kind",
    "claim_lo",
    "claim_hi",
    "bound_trivial",
    "bound_degree",
    "bound_degree_sum",
    "best_valid_size",
    "oracle_gamma",
    "oracle_lo",
    "oracle_hi",
    "method",
    "nodes",
    "ms",
    "verdict",
];

fn opt(v: Option<usize>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_row(r: &InstanceReport) -> Vec<String> {
    let claim = &r.case.claim;
    vec![
        r.params.d.to_string(),
        r.params.n.to_string(),
        r.params.k.to_string(),
        r.case.l.to_string(),
        r.case.r.to_string(),
        r.case.lp.to_string(),
        r.case.rp.to_string(),
        r.case.m.to_string(),
        serde_json::to_value(claim.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default(),
        opt(claim.lo),
        opt(claim.hi),
        r.bounds.trivial.to_string(),
        r.bounds.degree.to_string(),
        r.bounds.degree_sum.to_string(),
        opt(r.best_valid_size()),
        opt(r.oracle.gamma),
        opt(r.oracle.lo),
        opt(r.oracle.hi),
        r.oracle.method.to_string(),
        r.oracle.nodes.to_string(),
        r.oracle.ms.to_string(),
        r.verdict.to_string(),
    ]
}

enum Slot {
    Instance(HararyParams),
    Skip(SkipRecord),
}

fn plan(cfg: &SweepConfig) -> Vec<Slot> {
    cfg.pairs()
        .into_iter()
        .map(|(d, n)| match HararyParams::new(d, n) {
            Err(e) => Slot::Skip(SkipRecord {
                d,
                n,
                reason: e.to_string(),
            }),
            Ok(p) => match check_feasible(&build_harary(&p), cfg.k) {
                Err(e) => Slot::Skip(SkipRecord {
                    d,
                    n,
                    reason: e.to_string(),
                }),
                Ok(()) => Slot::Instance(p),
            },
        })
        .collect()
}

pub fn sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    sweep_inner(cfg, None)
}

/// Like [`sweep`], reusing and extending `cache`.
pub fn sweep_cached(cfg: &SweepConfig, cache: &mut ResultsCache) -> Result<SweepOutput> {
    sweep_inner(cfg, Some(cache))
}

fn sweep_inner(cfg: &SweepConfig, mut cache: Option<&mut ResultsCache>) -> Result<SweepOutput> {
    cfg.validate()?;
    let slots = plan(cfg);
    let solve = SolveOptions::new(cfg.method).budget(cfg.budget);

    let todo: Vec<HararyParams> = slots
        .iter()
        .filter_map(|s| match s {
            Slot::Instance(p) => Some(*p),
            Slot::Skip(_) => None,
        })
        .filter(|p| {
            cache
                .as_ref()
                .is_none_or(|c| c.get(&key(p, cfg.k)).is_none())
        })
        .collect();

    let fresh = map_ordered(cfg.execution, todo, |p| {
        evaluate_instance(&p, cfg.k, &solve).map(|r| (p, r))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut fresh: BTreeMap<HararyParams, InstanceReport> = fresh.into_iter().collect();

    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for slot in slots {
        match slot {
            Slot::Skip(s) => skipped.push(s),
            Slot::Instance(p) => {
                let report = match fresh.remove(&p) {
                    Some(r) => {
                        if let Some(c) = cache.as_deref_mut() {
                            c.insert(&r)?;
                        }
                        r
                    }
                    None => cache
                        .as_ref()
                        .and_then(|c| c.get(&key(&p, cfg.k)).cloned())
                        .expect("instance either cached or computed"),
                };
                reports.push(report);
            }
        }
    }
    Ok(SweepOutput {
        schema_version: SCHEMA_VERSION,
        reports,
        skipped,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub schema: u32,
}

fn key(p: &HararyParams, k: usize) -> CacheKey {
    CacheKey {
        d: p.d(),
        n: p.n(),
        k,
        schema: SCHEMA_VERSION,
    }
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    key: CacheKey,
    report: InstanceReport,
}

/// Append-only line-delimited JSON store of finished reports.
///
/// Reports whose oracle timed out are never stored. Lines from other schema
/// versions are ignored; a later line for the same key wins.
#[derive(Debug)]
pub struct ResultsCache {
    path: PathBuf,
    entries: BTreeMap<CacheKey, InstanceReport>,
}

impl ResultsCache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        if path.exists() {
            for (i, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let parsed: CacheLine = serde_json::from_str(&line)
                    .map_err(|e| Error::parse(i + 1, format!("cache entry: {e}")))?;
                if parsed.key.schema == SCHEMA_VERSION {
                    entries.insert(parsed.key, parsed.report);
                }
            }
        }
        Ok(Self { path, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &CacheKey) -> Option<&InstanceReport> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, report: &InstanceReport) -> Result<()> {
        if report.oracle.gamma.is_none() {
            return Ok(());
        }
        let Params { d, n, k } = report.params;
        let key = CacheKey {
            d,
            n,
            k,
            schema: SCHEMA_VERSION,
        };
        let line = serde_json::to_string(&CacheLine {
            key,
            report: report.clone(),
        })?;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{line}")?;
        self.entries.insert(key, report.clone());
        Ok(())
    }
}
