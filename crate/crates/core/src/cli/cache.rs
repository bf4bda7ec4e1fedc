//! One JSON file per genus holding a [`GenusAggregate`], with an embedded
//! SHA-256 checksum over the canonical serialization of everything else.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::enumerate::{enumerate_with_plan, EnumerationPlan};
use crate::stats::{AggregateConfig, GenusAggregate};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub genus: u32,
    pub aggregate: GenusAggregate,
    pub tool_version: String,
    pub wall_time_ms: u64,
}

#[derive(Debug)]
pub enum Lookup {
    Hit(Box<CacheEntry>),
    Miss,
    /// Written by another schema version; ignored.
    Stale(u32),
    /// Unreadable or failing its checksum; moved aside to the given path.
    Corrupt { quarantined: PathBuf, reason: String },
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn checksum(body: &Map<String, Value>) -> String {
    let canonical = Value::Object(body.clone()).to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl CacheEntry {
    pub fn to_json(&self) -> Value {
        let mut body = match self.aggregate.to_json() {
            Value::Object(map) => map,
            _ => unreachable!("aggregates serialize to objects"),
        };
        body.insert("version".into(), Value::String(self.schema_version.to_string()));
        body.insert("tool_version".into(), Value::String(self.tool_version.clone()));
        body.insert("wall_time_ms".into(), Value::String(self.wall_time_ms.to_string()));
        let sum = checksum(&body);
        body.insert("checksum".into(), Value::String(sum));
        Value::Object(body)
    }

    /// `Err(Some(v))` for a readable entry of another schema version `v`.
    fn from_json(v: &Value) -> Result<Self, std::result::Result<String, u32>> {
        let mut body = v.as_object().cloned().ok_or(Ok("not an object".to_string()))?;
        let stored = body
            .remove("checksum")
            .and_then(|c| c.as_str().map(str::to_string))
            .ok_or(Ok("missing checksum".to_string()))?;
        if stored != checksum(&body) {
            return Err(Ok("checksum mismatch".into()));
        }
        let field = |k: &str| body.get(k).and_then(Value::as_str).map(str::to_string);
        let version: u32 = field("version")
            .and_then(|s| s.parse().ok())
            .ok_or(Ok("missing version".to_string()))?;
        if version != SCHEMA_VERSION {
            return Err(Err(version));
        }
        let aggregate = GenusAggregate::from_json(&Value::Object(body.clone())).map_err(Ok)?;
        Ok(CacheEntry {
            schema_version: version,
            genus: aggregate.genus(),
            tool_version: field("tool_version").unwrap_or_default(),
            wall_time_ms: field("wall_time_ms").and_then(|s| s.parse().ok()).unwrap_or(0),
            aggregate,
        })
    }
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, genus: u32) -> PathBuf {
        self.dir.join(format!("genus-{genus:03}.json"))
    }

    pub fn get(&self, genus: u32) -> Lookup {
        let path = self.path(genus);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return self.quarantine(&path, e.to_string()),
        };
        let parsed: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => return self.quarantine(&path, e.to_string()),
        };
        match CacheEntry::from_json(&parsed) {
            Ok(entry) if entry.genus == genus => Lookup::Hit(Box::new(entry)),
            Ok(entry) => self.quarantine(&path, format!("holds genus {}", entry.genus)),
            Err(Err(version)) => Lookup::Stale(version),
            Err(Ok(reason)) => self.quarantine(&path, reason),
        }
    }

    fn quarantine(&self, path: &Path, reason: String) -> Lookup {
        let mut n = 0;
        let quarantined = loop {
            let candidate = path.with_extension(format!("json.corrupt-{n}"));
            if !candidate.exists() {
                break candidate;
            }
            n += 1;
        };
        if fs::rename(path, &quarantined).is_err() {
            let _ = fs::remove_file(path);
        }
        Lookup::Corrupt {
            quarantined,
            reason,
        }
    }

    /// Atomic write: a temporary file in the cache directory renamed over the target.
    pub fn put(&self, entry: &CacheEntry) -> io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(entry.to_json().to_string().as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(entry.genus)).map_err(|e| e.error)?;
        Ok(())
    }
}

/// Computes the default aggregate of genus `g`, consulting `cache` first
/// when given. Cache problems are reported on `log` and never fatal.
pub fn aggregate_for(
    g: u32,
    threads: usize,
    cache: Option<&Cache>,
    log: &mut dyn Write,
) -> crate::Result<GenusAggregate> {
    let config = AggregateConfig::for_genus(g);
    if let Some(cache) = cache {
        match cache.get(g) {
            Lookup::Hit(entry) if *entry.aggregate.config() == config => return Ok(entry.aggregate),
            Lookup::Hit(_) | Lookup::Miss => {}
            Lookup::Stale(v) => {
                let _ = writeln!(log, "cache: ignoring genus {g} entry with schema version {v}");
            }
            Lookup::Corrupt {
                quarantined,
                reason,
            } => {
                let _ = writeln!(
                    log,
                    "cache: genus {g} entry is corrupt ({reason}); moved to {}",
                    quarantined.display()
                );
            }
        }
    }
    let start = Instant::now();
    let plan = EnumerationPlan::new(g).with_workers(threads);
    let aggregate = enumerate_with_plan(&plan, &config, |_, _| {})?;
    if let Some(cache) = cache {
        let entry = CacheEntry {
            schema_version: SCHEMA_VERSION,
            genus: g,
            aggregate: aggregate.clone(),
            tool_version: TOOL_VERSION.to_string(),
            wall_time_ms: start.elapsed().as_millis() as u64,
        };
        if let Err(e) = cache.put(&entry) {
            let _ = writeln!(log, "cache: could not write genus {g}: {e}");
        }
    }
    Ok(aggregate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_genus;

    fn entry(g: u32) -> CacheEntry {
        CacheEntry {
            schema_version: SCHEMA_VERSION,
            genus: g,
            aggregate: enumerate_genus(g, |_, _| {}).unwrap(),
            tool_version: TOOL_VERSION.into(),
            wall_time_ms: 3,
        }
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        assert!(matches!(cache.get(6), Lookup::Miss));
        let e = entry(6);
        cache.put(&e).unwrap();
        match cache.get(6) {
            Lookup::Hit(got) => assert_eq!(*got, e),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn other_schema_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let mut e = entry(5);
        e.schema_version = SCHEMA_VERSION + 1;
        cache.put(&e).unwrap();
        assert!(matches!(cache.get(5), Lookup::Stale(v) if v == SCHEMA_VERSION + 1));
    }

    #[test]
    fn edited_counter_is_quarantined() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        cache.put(&entry(6)).unwrap();
        let path = cache.path(6);
        let text = fs::read_to_string(&path).unwrap();
        let edited = text.replacen("\"count\":\"23\"", "\"count\":\"24\"", 1);
        assert_ne!(text, edited);
        fs::write(&path, edited).unwrap();
        match cache.get(6) {
            Lookup::Corrupt { quarantined, reason } => {
                assert!(quarantined.exists());
                assert!(!path.exists());
                assert_eq!(reason, "checksum mismatch");
            }
            other => panic!("{other:?}"),
        }
        let mut log = Vec::new();
        let agg = aggregate_for(6, 1, Some(&cache), &mut log).unwrap();
        assert_eq!(agg.count(), 23);
        assert!(matches!(cache.get(6), Lookup::Hit(_)));
    }

    #[test]
    fn garbage_is_quarantined() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        fs::write(cache.path(3), "{not json").unwrap();
        assert!(matches!(cache.get(3), Lookup::Corrupt { .. }));
        assert!(matches!(cache.get(3), Lookup::Miss));
    }
}
