//! Cached construction of cuspidal simples, standard modules and their relatives for one
//! Cartan datum and convex order.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{KlrError, Result};
use crate::linalg::Field;
use crate::modules::{induce, simple_quotient, unique_head, Character, GradedModule};
use crate::roots::{minimal_pairs, ConvexOrder, KostantPartition, MinimalPair, RootSystem, Weight};

/// How cuspidal standard modules are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaPath {
    /// The central-element construction in simply-laced types, extensions otherwise.
    Auto,
    /// Always the central-element construction (simply-laced only).
    Central,
    /// Always iterated extensions.
    Extensions,
}

/// Reduced standard module data for one Kostant partition.
#[derive(Clone, Debug)]
pub struct ReducedStandard<F: Field> {
    pub lambda: KostantPartition,
    /// `q^{s} L(lambda_1) o ... o L(lambda_r)`.
    pub module: GradedModule<F>,
    pub shift: i32,
    /// The simple head `L(lambda)`, bar-invariant.
    pub head: GradedModule<F>,
}

pub struct Family<F: Field> {
    pub(crate) sys: RootSystem,
    pub(crate) order: ConvexOrder,
    pub path: DeltaPath,
    cusp: RefCell<HashMap<Weight, Rc<GradedModule<F>>>>,
    pub(crate) delta: RefCell<HashMap<Weight, Rc<GradedModule<F>>>>,
    pub(crate) power: RefCell<HashMap<(Weight, usize), Rc<GradedModule<F>>>>,
    /// Longest extension layer built so far per root, with its index `m`.
    pub(crate) layers: RefCell<HashMap<Weight, (usize, Rc<GradedModule<F>>)>>,
    reduced: RefCell<HashMap<KostantPartition, Rc<ReducedStandard<F>>>>,
    standard: RefCell<HashMap<KostantPartition, Rc<GradedModule<F>>>>,
}

impl<F: Field> Family<F> {
    pub fn new(sys: &RootSystem, order: &ConvexOrder) -> Self {
        Family {
            sys: sys.clone(),
            order: order.clone(),
            path: DeltaPath::Auto,
            cusp: RefCell::default(),
            delta: RefCell::default(),
            power: RefCell::default(),
            layers: RefCell::default(),
            reduced: RefCell::default(),
            standard: RefCell::default(),
        }
    }

    pub fn with_path(mut self, path: DeltaPath) -> Self {
        self.path = path;
        self
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn order(&self) -> &ConvexOrder {
        &self.order
    }

    /// The cuspidal simple `L(alpha)`, normalized to a bar-invariant character.
    pub fn cuspidal(&self, alpha: &Weight) -> Result<Rc<GradedModule<F>>> {
        if let Some(m) = self.cusp.borrow().get(alpha) {
            return Ok(m.clone());
        }
        if !self.sys.is_root(alpha) {
            return Err(KlrError::Invalid(format!("{} is not a positive root", alpha)));
        }
        let m = if alpha.height() == 1 {
            let i = alpha.0.iter().position(|&c| c == 1).unwrap() as u8;
            GradedModule::one_dimensional(&self.sys, &[i], 0)?
        } else {
            let pairs = minimal_pairs(&self.sys, &self.order, alpha)?;
            let first = pairs.first().ok_or_else(|| KlrError::Construction(format!("no minimal pair for {}", alpha)))?;
            let m = self.from_pair(first)?;
            if let Some(second) = pairs.get(1) {
                let other = self.from_pair(second)?;
                if Character::of_module(&other) != Character::of_module(&m) {
                    return Err(KlrError::Construction(format!(
                        "minimal pairs of {} give different cuspidal characters",
                        alpha
                    )));
                }
            }
            m
        };
        let m = Rc::new(m);
        self.cusp.borrow_mut().insert(alpha.clone(), m.clone());
        Ok(m)
    }

    /// Simple quotient of `L(gamma) o L(beta)` that is not `L(beta, gamma)`.
    fn from_pair(&self, pair: &MinimalPair) -> Result<GradedModule<F>> {
        let lb = self.cuspidal(&pair.beta)?;
        let lg = self.cuspidal(&pair.gamma)?;
        let m = induce(&[lg.as_ref(), lb.as_ref()])?.module;
        let s = simple_quotient(&m)?;
        let shift = crate::modules::bar_normalizing_shift(&Character::of_module(&s))?;
        let s = s.shift(shift);
        let (other, _) = unique_head(&induce(&[lb.as_ref(), lg.as_ref()])?.module)?;
        if Character::of_module(&other) == Character::of_module(&s) {
            return Err(KlrError::Construction(format!(
                "simple quotient of L({}) o L({}) is the product head",
                pair.gamma, pair.beta
            )));
        }
        Ok(s)
    }

    /// `Delta-bar(lambda)` and its simple head `L(lambda)`.
    pub fn reduced_standard(&self, lambda: &KostantPartition) -> Result<Rc<ReducedStandard<F>>> {
        if let Some(r) = self.reduced.borrow().get(lambda) {
            return Ok(r.clone());
        }
        let parts = lambda.parts.iter().map(|p| self.cuspidal(p)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&GradedModule<F>> = parts.iter().map(|p| p.as_ref()).collect();
        let product = if refs.len() == 1 { refs[0].clone() } else { induce(&refs)?.module };
        let (head, shift) = unique_head(&product)?;
        let r = Rc::new(ReducedStandard { lambda: lambda.clone(), module: product.shift(shift), shift, head });
        self.reduced.borrow_mut().insert(lambda.clone(), r.clone());
        Ok(r)
    }

    /// `L(lambda)`.
    pub fn simple(&self, lambda: &KostantPartition) -> Result<GradedModule<F>> {
        Ok(self.reduced_standard(lambda)?.head.clone())
    }

    /// `Delta(lambda)`: the product of the standard modules of the root powers of
    /// `lambda`, exact through degree `top`.
    pub fn standard(&self, lambda: &KostantPartition, top: i32) -> Result<Rc<GradedModule<F>>> {
        if let Some(m) = self.standard.borrow().get(lambda) {
            if m.top().map_or(false, |t| t >= top) {
                return Ok(m.clone());
            }
        }
        let blocks = lambda.blocks();
        if blocks.len() == 1 {
            return self.delta_power(&blocks[0].0, blocks[0].1, top);
        }
        // lowest degrees do not depend on the window
        let lows: Vec<i32> = blocks
            .iter()
            .map(|(r, m)| Ok(self.delta_power(r, *m, 0)?.lowest_degree().unwrap()))
            .collect::<Result<_>>()?;
        let total: i32 = lows.iter().sum();
        let mut slack = 0;
        let m = loop {
            let pieces = blocks
                .iter()
                .zip(&lows)
                .map(|((r, m), lo)| self.delta_power(r, *m, top - (total - lo) + slack))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&GradedModule<F>> = pieces.iter().map(|p| p.as_ref()).collect();
            let m = induce(&refs)?.module;
            if m.top().map_or(false, |t| t >= top) {
                break m.truncate(top);
            }
            slack += 2;
        };
        let m = Rc::new(m);
        self.standard.borrow_mut().insert(lambda.clone(), m.clone());
        Ok(m)
    }
}
