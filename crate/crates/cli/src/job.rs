//! Job specification, convention block, fingerprints and the on-disk report cache.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "klr-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct JobSpec {
    pub cartan_type: String,
    pub alpha: Option<Vec<i64>>,
    /// Reduced word of the longest element defining the convex order (0-based).
    pub order_word: Vec<usize>,
    pub fields: Vec<String>,
    pub primes: Vec<u64>,
    pub max_deg: i32,
    pub ann_deg: i32,
    pub task: String,
}

/// One independent piece of work: a task over one field or prime.
#[derive(Clone, Debug, Serialize)]
pub struct Unit {
    pub task: String,
    pub domain: String,
}

impl Unit {
    pub fn file_stem(&self, job: &JobSpec) -> String {
        let alpha = job.alpha.as_ref().map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-"));
        let mut parts = vec![self.task.clone(), job.cartan_type.clone()];
        parts.extend(alpha);
        if !self.domain.is_empty() {
            parts.push(self.domain.clone());
        }
        parts.join("_")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Refused,
    Fail,
}

/// The result of one unit, exactly as written to disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Output {
    pub status: Status,
    pub report: Value,
    /// Extra tables: file suffix and contents.
    pub tables: Vec<(String, String)>,
    pub lines: Vec<String>,
}

pub fn conventions(job: &JobSpec) -> Value {
    json!({
        "cartan": "d_i = (alpha_i, alpha_i)/2, c_ij = (alpha_i, alpha_j)/d_i",
        "signs": "Q_ij(u, v) = e_ij (u^(-c_ij) - v^(-c_ji)) with e_ij = 1 for i < j and -1 for i > j",
        "indexing": "simple roots, letters and one-line permutations are 0-based",
        "reduced_word": "lexicographically minimal reduced word of the longest element unless given",
        "order_word": job.order_word,
        "shift_rule": "s(lambda) is the shift making the head of the product of cuspidal modules bar-invariant",
        "windows": { "max_deg": job.max_deg, "ann_deg": job.ann_deg },
    })
}

/// Content fingerprint of everything that determines a unit's output.
pub fn fingerprint(job: &JobSpec, unit: &Unit) -> String {
    let key = json!({
        "schema": SCHEMA,
        "conventions": conventions(job),
        "type": job.cartan_type,
        "alpha": job.alpha,
        "task": unit.task,
        "domain": unit.domain,
    });
    hex::encode(Sha256::digest(key.to_string().as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn get(&self, key: &str) -> Option<Output> {
        let bytes = fs::read(self.dir.join(format!("{}.json", key))).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    /// Refusals are not cached: a wider window may succeed.
    pub fn put(&self, key: &str, out: &Output) -> std::io::Result<()> {
        if out.status == Status::Refused {
            return Ok(());
        }
        let tmp = self.dir.join(format!("{}.tmp", key));
        fs::write(&tmp, serde_json::to_vec(out).expect("serializable"))?;
        fs::rename(tmp, self.dir.join(format!("{}.json", key)))
    }
}

/// The full report document for one unit.
pub fn document(job: &JobSpec, unit: &Unit, out: &Output) -> Value {
    json!({
        "schema": SCHEMA,
        "conventions": conventions(job),
        "job": {
            "type": job.cartan_type,
            "alpha": job.alpha,
            "task": unit.task,
            "domain": unit.domain,
        },
        "status": out.status,
        "result": out.report,
    })
}
