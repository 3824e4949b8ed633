//! The individual tasks. Each runs over one field (or one prime) and yields a report.

use anyhow::{anyhow, bail, Result};
use serde::Serialize;
use serde_json::{json, to_value, Value};

use klr_core::linalg::{Field, F2, F3, F5, F7, Q};
use klr_core::modular::{adjustment_matrix, decomposition_matrix, sorted_partitions, torsion_reports};
use klr_core::modules::Character;
use klr_core::roots::{bilex_cmp, ConvexOrder, RootSystem, Weight};
use klr_core::standard::Family;
use klr_core::KlrError;

use crate::job::{JobSpec, Output, Status};

/// Runs `$body` with `$f` bound to the field type named by `$tag`.
macro_rules! with_field {
    ($tag:expr, $f:ident => $body:expr) => {
        match $tag {
            "Q" => { type $f = Q; $body }
            "F2" => { type $f = F2; $body }
            "F3" => { type $f = F3; $body }
            "F5" => { type $f = F5; $body }
            "F7" => { type $f = F7; $body }
            other => Err(anyhow!("unsupported field {}", other)),
        }
    };
}

pub fn field_of_prime(p: u64) -> Result<&'static str> {
    Ok(match p {
        2 => "F2",
        3 => "F3",
        5 => "F5",
        7 => "F7",
        _ => bail!("prime {} not supported (use 2, 3, 5 or 7)", p),
    })
}

pub struct Ctx {
    pub sys: RootSystem,
    pub order: ConvexOrder,
}

impl Ctx {
    pub fn new(job: &JobSpec) -> Result<Self> {
        let sys = RootSystem::parse(&job.cartan_type)?;
        let order = ConvexOrder::from_word(&sys, &job.order_word)?;
        Ok(Ctx { sys, order })
    }

    fn family<F: Field>(&self) -> Family<F> {
        Family::new(&self.sys, &self.order)
    }
}

fn alpha(job: &JobSpec) -> Result<Weight> {
    job.alpha.clone().map(Weight).ok_or_else(|| anyhow!("--alpha is required"))
}

fn done<T: Serialize>(pass: bool, report: &T, lines: Vec<String>) -> Result<Output> {
    let status = if pass { Status::Pass } else { Status::Fail };
    Ok(Output { status, report: to_value(report)?, tables: Vec::new(), lines })
}

/// Maps errors to outputs: refusals and falsifications become reports, not failures of the run.
pub fn settle(r: Result<Output>) -> Output {
    match r {
        Ok(o) => o,
        Err(e) => {
            let refusal = e.downcast_ref::<KlrError>().map_or(false, |k| k.is_refusal());
            let status = if refusal { Status::Refused } else { Status::Fail };
            Output { status, report: json!({ "error": e.to_string() }), tables: Vec::new(), lines: vec![format!("{:?}: {}", status, e)] }
        }
    }
}

pub fn roots(ctx: &Ctx, job: &JobSpec) -> Result<Output> {
    let rows: Vec<Value> = ctx
        .sys
        .positive_roots()
        .iter()
        .map(|r| json!({ "root": r.to_string(), "height": r.height(), "d": ctx.sys.d_of(r) }))
        .collect();
    let lines = vec![format!("{} positive roots", rows.len())];
    done(true, &json!({ "type": job.cartan_type, "roots": rows }), lines)
}

pub fn orders(ctx: &Ctx) -> Result<Output> {
    let roots: Vec<String> = ctx.order.roots().iter().map(|r| r.to_string()).collect();
    let lines = vec![format!("order (largest first): {}", roots.join(" > "))];
    done(true, &json!({ "word": ctx.order.word(), "roots_largest_first": roots }), lines)
}

pub fn kp(ctx: &Ctx, job: &JobSpec) -> Result<Output> {
    let a = alpha(job)?;
    let kps = sorted_partitions(&ctx.order, &a);
    let rel: Vec<Vec<&str>> = kps
        .iter()
        .map(|l| {
            kps.iter()
                .map(|m| match bilex_cmp(&ctx.order, l, m) {
                    Some(std::cmp::Ordering::Less) => "<",
                    Some(std::cmp::Ordering::Greater) => ">",
                    Some(std::cmp::Ordering::Equal) => "=",
                    None => "",
                })
                .collect()
        })
        .collect();
    let labels: Vec<String> = kps.iter().map(|l| l.to_string()).collect();
    let lines = vec![format!("{} Kostant partitions of {}", kps.len(), a)];
    done(true, &json!({ "alpha": a.to_string(), "partitions": labels, "bilex": rel }), lines)
}

pub fn characters(ctx: &Ctx, job: &JobSpec, field: &str) -> Result<Output> {
    with_field!(field, F => {
        let fam = ctx.family::<F>();
        let a = alpha(job)?;
        let mut rows = Vec::new();
        for l in sorted_partitions(&ctx.order, &a) {
            let red = fam.reduced_standard(&l)?;
            let delta = fam.standard(&l, job.max_deg)?;
            rows.push(json!({
                "lambda": l.to_string(),
                "shift": red.shift,
                "simple": Character::of_module(&red.head),
                "reduced_standard": Character::of_module(&red.module),
                "standard": Character::of_module(&delta),
            }));
        }
        let lines = vec![format!("characters of {} modules over {}", rows.len(), field)];
        done(true, &json!({ "alpha": a.to_string(), "field": field, "modules": rows }), lines)
    })
}

pub fn theorem_a(ctx: &Ctx, job: &JobSpec, field: &str) -> Result<Output> {
    with_field!(field, F => {
        let r = ctx.family::<F>().verify_hom_vanishing(&alpha(job)?, job.max_deg, job.ann_deg)?;
        if r.pairs.iter().any(|p| p.refusal.is_some()) {
            let mut o = done(false, &r, Vec::new())?;
            o.status = Status::Refused;
            o.lines.push(format!("Hom vanishing over {}: refused", field));
            return Ok(o);
        }
        let line = format!("Hom vanishing over {} for {} pairs: {}", field, r.pairs.len(), if r.pass { "pass" } else { "FAIL" });
        done(r.pass, &r, vec![line])
    })
}

pub fn theorem_b(ctx: &Ctx, job: &JobSpec, field: &str) -> Result<Output> {
    with_field!(field, F => {
        let fam = ctx.family::<F>();
        let a = alpha(job)?;
        let mut reports = Vec::new();
        let mut lines = Vec::new();
        for l in sorted_partitions(&ctx.order, &a) {
            let r = fam.verify_endomorphisms(&l, job.max_deg, job.ann_deg)?;
            lines.push(format!("End({}) over {}: {}", l, field, if r.pass { "pass" } else { "FAIL" }));
            reports.push(r);
        }
        let pass = reports.iter().all(|r| r.pass);
        done(pass, &reports, lines)
    })
}

pub fn freeness(ctx: &Ctx, job: &JobSpec, field: &str) -> Result<Output> {
    with_field!(field, F => {
        let fam = ctx.family::<F>();
        let a = alpha(job)?;
        if !ctx.sys.is_root(&a) {
            bail!(KlrError::Domain(format!("{} is not a positive root", a)));
        }
        let mut reports = Vec::new();
        let mut lines = Vec::new();
        for r in 0..a.height() as usize {
            let rep = fam.verify_freeness(&a, r, job.max_deg)?;
            lines.push(format!("x_{} on Delta({}) over {}: {}", r + 1, a, field, if rep.pass { "pass" } else { "FAIL" }));
            reports.push(rep);
        }
        let pass = reports.iter().all(|r| r.pass);
        done(pass, &reports, lines)
    })
}

pub fn decomp(ctx: &Ctx, job: &JobSpec, field: &str) -> Result<Output> {
    with_field!(field, F => {
        let m = decomposition_matrix(&ctx.family::<F>(), &alpha(job)?)?;
        let mut o = done(true, &m, vec![format!("decomposition matrix over {} of size {}", field, m.size())])?;
        o.tables.push(("csv".into(), m.to_csv()));
        Ok(o)
    })
}

pub fn adjustment(ctx: &Ctx, job: &JobSpec, p: u64) -> Result<Output> {
    let q = ctx.family::<Q>();
    let a = alpha(job)?;
    with_field!(field_of_prime(p)?, F => {
        let r = adjustment_matrix(&q, &ctx.family::<F>(), &a)?;
        let pass = r.factorization && r.unitriangular && r.bar_invariant && r.characters_preserved && r.lattice_independent;
        let mut o = done(pass, &r, vec![r.verdict.clone()])?;
        o.tables.push(("csv".into(), r.adjustment.to_csv()));
        Ok(o)
    })
}

pub fn ext1(ctx: &Ctx, job: &JobSpec, p: u64) -> Result<Output> {
    let q = ctx.family::<Q>();
    let a = alpha(job)?;
    with_field!(field_of_prime(p)?, F => {
        let reports = torsion_reports(&q, &ctx.family::<F>(), &a, job.max_deg, job.ann_deg)?;
        let pass = reports.iter().all(|r| r.hom_vanishing && r.degrees.iter().all(|d| d.difference >= 0));
        let lines = reports.iter().filter(|r| r.lambda != r.mu).map(|r| r.verdict.clone()).collect();
        let mut csv = String::from("lambda,mu,degree,rational,modular,difference\n");
        for r in &reports {
            for d in &r.degrees {
                if d.rational + d.modular > 0 {
                    csv.push_str(&format!("{},{},{},{},{},{}\n", r.lambda, r.mu, d.degree, d.rational, d.modular, d.difference));
                }
            }
        }
        let mut o = done(pass, &json!({ "p": p, "semantics": "per-degree upper bounds on dim Ext^1; exact only where 0", "pairs": reports }), lines)?;
        o.tables.push(("csv".into(), csv));
        Ok(o)
    })
}
