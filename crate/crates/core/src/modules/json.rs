//! Versioned JSON form of a module: components plus generator actions as sparse triplets.

use serde::{Deserialize, Serialize};

use super::graded::{Act, CompKey, Gen, GradedModule};
use crate::error::{KlrError, Result};
use crate::linalg::{Field, Matrix};
use crate::roots::{RootSystem, Weight};

pub const MODULE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub degree: i32,
    /// 1-based colors.
    pub word: Vec<u8>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub source: usize,
    /// `x1`, `t2`, ... (1-based).
    pub generator: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<usize>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub unknown: bool,
    /// `(row, col, value)` with values printed exactly.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub schema: u32,
    pub cartan: String,
    pub alpha: Vec<i64>,
    pub field: String,
    /// Lowest and highest stored degree.
    pub window: Option<(i32, i32)>,
    /// Trusted top degree; absent for finite-dimensional modules.
    pub trust: Option<i32>,
    pub blocks: Vec<usize>,
    pub components: Vec<ComponentJson>,
    pub actions: Vec<ActionJson>,
}

fn gen_label(g: Gen) -> String {
    match g {
        Gen::X(t) => format!("x{}", t + 1),
        Gen::T(r) => format!("t{}", r + 1),
    }
}

fn parse_gen(s: &str) -> Result<Gen> {
    let bad = || KlrError::Parse(format!("bad generator {:?}", s));
    let k: usize = s.get(1..).ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    match &s[..1] {
        "x" => Ok(Gen::X(k - 1)),
        "t" => Ok(Gen::T(k - 1)),
        _ => Err(bad()),
    }
}

impl<F: Field> GradedModule<F> {
    pub fn to_json(&self) -> ModuleJson {
        let mut actions = Vec::new();
        for c in 0..self.num_comps() {
            for g in self.gens() {
                match self.action(c, g) {
                    Act::Zero => {}
                    Act::Unknown => actions.push(ActionJson {
                        source: c,
                        generator: gen_label(g),
                        target: None,
                        unknown: true,
                        entries: Vec::new(),
                    }),
                    Act::Map(t, m) => {
                        let mut entries = Vec::new();
                        for r in 0..m.rows() {
                            for k in 0..m.cols() {
                                let x = m.get(r, k);
                                if !x.is_zero() {
                                    entries.push((r, k, x.to_scalar().to_string()));
                                }
                            }
                        }
                        actions.push(ActionJson { source: c, generator: gen_label(g), target: Some(*t), unknown: false, entries });
                    }
                }
            }
        }
        ModuleJson {
            schema: MODULE_SCHEMA,
            cartan: self.system().datum.label.clone(),
            alpha: self.alpha().0.clone(),
            field: F::tag(),
            window: self.lowest_degree().zip(self.highest_degree()),
            trust: self.top(),
            blocks: self.blocks().to_vec(),
            components: self
                .keys()
                .iter()
                .zip(self.dims())
                .map(|(k, &dim)| ComponentJson { degree: k.degree, word: k.word.iter().map(|c| c + 1).collect(), dim })
                .collect(),
            actions,
        }
    }

    pub fn from_json(sys: &RootSystem, j: &ModuleJson) -> Result<Self> {
        if j.schema != MODULE_SCHEMA {
            return Err(KlrError::Parse(format!("module schema {} not supported", j.schema)));
        }
        if j.field != F::tag() {
            return Err(KlrError::Domain(format!("module over {} read as {}", j.field, F::tag())));
        }
        let alpha = Weight(j.alpha.clone());
        let comps: Vec<(CompKey, usize)> = j
            .components
            .iter()
            .map(|c| {
                if c.word.iter().any(|&x| x == 0) {
                    return Err(KlrError::Parse("component words are 1-based".into()));
                }
                Ok((CompKey::new(c.degree, c.word.iter().map(|x| x - 1).collect()), c.dim))
            })
            .collect::<Result<_>>()?;
        let mut table = std::collections::HashMap::new();
        for a in &j.actions {
            let g = parse_gen(&a.generator)?;
            let src = comps.get(a.source).ok_or_else(|| KlrError::Parse("action source out of range".into()))?;
            if a.unknown {
                continue;
            }
            let t = a.target.ok_or_else(|| KlrError::Parse("known action without target".into()))?;
            let tgt = comps.get(t).ok_or_else(|| KlrError::Parse("action target out of range".into()))?;
            let mut m = Matrix::zeros(tgt.1, src.1);
            for (r, k, v) in &a.entries {
                let s = crate::linalg::Scalar::parse(v, domain_of::<F>())?;
                let x = F::from_scalar(&s).ok_or_else(|| KlrError::Parse(format!("bad entry {}", v)))?;
                if *r >= tgt.1 || *k >= src.1 {
                    return Err(KlrError::Parse("entry out of range".into()));
                }
                m.set(*r, *k, x);
            }
            table.insert((src.0.clone(), g), m);
        }
        let m = Self::build(sys, &alpha, j.trust, comps, |s, g, _| Ok(table.remove(&(s.clone(), g))))?;
        Ok(m.with_blocks(j.blocks.clone()))
    }
}

fn domain_of<F: Field>() -> crate::linalg::Domain {
    match F::characteristic() {
        0 => crate::linalg::Domain::Rational,
        p => crate::linalg::Domain::Modular(p),
    }
}
