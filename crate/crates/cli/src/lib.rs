//! Job orchestration for the `klr` command: validation of job specifications, scheduling
//! of independent units, the report cache and output files.

pub mod job;
pub mod tasks;

use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};

use job::{document, fingerprint, Cache, JobSpec, Output, Status, Unit};
use klr_core::roots::{lex_min_longest_word, RootSystem};
use tasks::Ctx;

/// Command-line level parameters of a job.
#[derive(Clone, Debug)]
pub struct Params {
    pub cartan_type: String,
    pub alpha: Option<Vec<i64>>,
    pub order_word: Option<Vec<usize>>,
    pub max_deg: i32,
    pub ann_deg: i32,
    pub fields: Vec<String>,
    pub primes: Vec<u64>,
}

/// Malformed input, reported with exit code 64.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn job_spec(task: &str, c: &Params) -> Result<JobSpec> {
    let usage = |m: String| anyhow!(Usage(m));
    let sys = RootSystem::parse(&c.cartan_type).map_err(|e| usage(e.to_string()))?;
    if c.max_deg < 0 || c.ann_deg <= 0 {
        return Err(usage("window parameters must be positive".into()));
    }
    if let Some(a) = &c.alpha {
        if a.len() != sys.rank() || a.iter().any(|&x| x < 0) || a.iter().all(|&x| x == 0) {
            return Err(usage(format!("--alpha needs {} nonnegative coefficients, not all zero", sys.rank())));
        }
    }
    for f in &c.fields {
        if !["Q", "F2", "F3", "F5", "F7"].contains(&f.as_str()) {
            return Err(usage(format!("unknown field {}", f)));
        }
    }
    for &p in &c.primes {
        tasks::field_of_prime(p).map_err(|e| usage(e.to_string()))?;
    }
    let needs_alpha = !matches!(task, "roots" | "orders");
    if needs_alpha && c.alpha.is_none() {
        return Err(usage(format!("{} needs --alpha", task)));
    }
    let order_word = c.order_word.clone().unwrap_or_else(|| lex_min_longest_word(&sys));
    Ok(JobSpec {
        cartan_type: c.cartan_type.clone(),
        alpha: c.alpha.clone(),
        order_word,
        fields: c.fields.clone(),
        primes: c.primes.clone(),
        max_deg: c.max_deg,
        ann_deg: c.ann_deg,
        task: task.into(),
    })
}

pub fn units(job: &JobSpec) -> Vec<Unit> {
    let unit = |d: String| Unit { task: job.task.clone(), domain: d };
    match job.task.as_str() {
        "roots" | "orders" | "kp" => vec![unit(String::new())],
        "adjustment" | "ext1" => job.primes.iter().map(|p| unit(format!("p{}", p))).collect(),
        _ => job.fields.iter().map(|f| unit(f.clone())).collect(),
    }
}

fn run_unit(job: &JobSpec, unit: &Unit) -> Output {
    let go = || -> Result<Output> {
        let ctx = Ctx::new(job)?;
        let prime = || unit.domain.trim_start_matches('p').parse::<u64>().context("prime");
        match unit.task.as_str() {
            "roots" => tasks::roots(&ctx, job),
            "orders" => tasks::orders(&ctx),
            "kp" => tasks::kp(&ctx, job),
            "characters" => tasks::characters(&ctx, job, &unit.domain),
            "theorem-a" => tasks::theorem_a(&ctx, job, &unit.domain),
            "theorem-b" => tasks::theorem_b(&ctx, job, &unit.domain),
            "freeness" => tasks::freeness(&ctx, job, &unit.domain),
            "decomp" => tasks::decomp(&ctx, job, &unit.domain),
            "adjustment" => tasks::adjustment(&ctx, job, prime()?),
            "ext1" => tasks::ext1(&ctx, job, prime()?),
            t => Err(anyhow!("unknown task {}", t)),
        }
    };
    tasks::settle(go())
}

/// Runs the units with at most `jobs` threads; results come back in unit order.
pub fn run_all(job: &JobSpec, units: &[Unit], cache: Option<&Cache>, jobs: usize) -> Vec<Output> {
    let mut out: Vec<Option<Output>> = vec![None; units.len()];
    let mut todo = Vec::new();
    for (k, u) in units.iter().enumerate() {
        match cache.and_then(|c| c.get(&fingerprint(job, u))) {
            Some(o) => out[k] = Some(o),
            None => todo.push(k),
        }
    }
    for chunk in todo.chunks(jobs.max(1)) {
        let results: Vec<(usize, Output)> = std::thread::scope(|s| {
            let handles: Vec<_> = chunk.iter().map(|&k| (k, s.spawn(move || run_unit(job, &units[k])))).collect();
            handles.into_iter().map(|(k, h)| (k, h.join().unwrap_or_else(|_| tasks::settle(Err(anyhow!("task panicked")))))).collect()
        });
        for (k, o) in results {
            if let Some(c) = cache {
                if let Err(e) = c.put(&fingerprint(job, &units[k]), &o) {
                    eprintln!("warning: cache write failed: {}", e);
                }
            }
            out[k] = Some(o);
        }
    }
    out.into_iter().map(|o| o.expect("every unit ran")).collect()
}

pub fn write_outputs(job: &JobSpec, units: &[Unit], outs: &[Output], dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (u, o) in units.iter().zip(outs) {
        let stem = u.file_stem(job);
        let doc = document(job, u, o);
        fs::write(dir.join(format!("{}.json", stem)), serde_json::to_string_pretty(&doc)? + "\n")?;
        for (suffix, body) in &o.tables {
            fs::write(dir.join(format!("{}.{}", stem, suffix)), body)?;
        }
    }
    Ok(())
}

/// Runs a job end to end and returns the combined status.
pub fn execute(job: &JobSpec, out: &Path, cache_dir: Option<&Path>, jobs: usize) -> Result<(Vec<Output>, Status)> {
    let cache = cache_dir.map(Cache::open).transpose().context("cache directory")?;
    let units = units(job);
    let outs = run_all(job, &units, cache.as_ref(), jobs);
    write_outputs(job, &units, &outs, out)?;
    let status = outs.iter().map(|o| o.status).max().unwrap_or(Status::Pass);
    Ok((outs, status))
}

/// Process exit code for a combined status.
pub fn exit_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Refused => 2,
    }
}
