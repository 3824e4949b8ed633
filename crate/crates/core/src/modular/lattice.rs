//! Integral forms of rational modules and their reductions modulo primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{KlrError, Result};
use crate::linalg::{hermite_normal_form, Field, Matrix, Q};
use crate::modules::{Act, GradedModule, HVec};

/// A lattice in one component: the rows of `basis` divided by `denominator`, in Hermite
/// normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLattice {
    pub denominator: BigInt,
    pub basis: Vec<Vec<BigInt>>,
}

impl ComponentLattice {
    fn empty() -> Self {
        ComponentLattice { denominator: BigInt::one(), basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of `v` in the lattice basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<BigInt>> {
        let mut w = Vec::with_capacity(v.len());
        for x in v {
            let y = &x.0 * &num_rational::BigRational::from_integer(self.denominator.clone());
            if !y.is_integer() {
                return None;
            }
            w.push(y.to_integer());
        }
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
            let (c, r) = w[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (a, b) in w.iter_mut().zip(row) {
                    *a -= &c * b;
                }
            }
            coords.push(c);
        }
        w.iter().all(|x| x.is_zero()).then_some(coords)
    }

    /// Adds a vector; returns whether the lattice grew.
    fn insert(&mut self, v: &[Q]) -> bool {
        if self.coordinates(v).is_some() {
            return false;
        }
        let den = v.iter().fold(self.denominator.clone(), |d, x| d.lcm(x.0.denom()));
        let scale = &den / &self.denominator;
        let mut rows: Vec<Vec<BigInt>> = self.basis.iter().map(|r| r.iter().map(|x| x * &scale).collect()).collect();
        rows.push(v.iter().map(|x| (&x.0 * &num_rational::BigRational::from_integer(den.clone())).to_integer()).collect());
        let mut hnf = hermite_normal_form(&rows);
        // keep the denominator minimal
        let g = hnf.iter().flatten().fold(den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            for x in hnf.iter_mut().flatten() {
                *x = &*x / &g;
            }
        }
        self.denominator = &den / &g;
        self.basis = hnf;
        true
    }

    pub fn vectors(&self) -> Vec<Vec<Q>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| Q(num_rational::BigRational::new(x.clone(), self.denominator.clone()))).collect())
            .collect()
    }
}

/// The lattice spanned over the integral algebra by chosen generators.
#[derive(Clone, Debug)]
pub struct IntegralLattice {
    pub ambient: GradedModule<Q>,
    pub comps: Vec<ComponentLattice>,
    pub generators: Vec<HVec<Q>>,
}

/// Closes the generators under all generator actions that stay inside the window.
pub fn integral_form(v: &GradedModule<Q>, generators: &[HVec<Q>]) -> Result<IntegralLattice> {
    let mut comps = vec![ComponentLattice::empty(); v.num_comps()];
    let mut dirty = vec![false; v.num_comps()];
    for (c, x) in generators {
        if comps[*c].insert(x) {
            dirty[*c] = true;
        }
    }
    while let Some(c) = dirty.iter().position(|&d| d) {
        dirty[c] = false;
        for b in comps[c].vectors() {
            for g in v.gens() {
                let (t, w) = match v.action(c, g) {
                    Act::Map(t, a) => (*t, a.mul_vec(&b)),
                    _ => continue,
                };
                if comps[t].insert(&w) {
                    dirty[t] = true;
                }
            }
        }
    }
    let l = IntegralLattice { ambient: v.clone(), comps, generators: generators.to_vec() };
    l.check()?;
    Ok(l)
}

impl IntegralLattice {
    /// Full rank in every component and stability under every known action.
    pub fn check(&self) -> Result<()> {
        let v = &self.ambient;
        for c in 0..v.num_comps() {
            if self.comps[c].rank() != v.dim_of(c) {
                return Err(KlrError::Construction(format!(
                    "lattice of rank {} in component {:?} of dimension {}",
                    self.comps[c].rank(),
                    v.key(c),
                    v.dim_of(c)
                )));
            }
            for b in self.comps[c].vectors() {
                for g in v.gens() {
                    if let Act::Map(t, a) = v.action(c, g) {
                        if self.comps[*t].coordinates(&a.mul_vec(&b)).is_none() {
                            return Err(KlrError::Inconsistent(format!("lattice not stable under {:?}", g)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The reduction `V_Z (x) F`, in the lattice bases.
    pub fn reduce<F: Field>(&self) -> Result<GradedModule<F>> {
        let v = &self.ambient;
        let vecs: Vec<Vec<Vec<Q>>> = self.comps.iter().map(|l| l.vectors()).collect();
        let comps = (0..v.num_comps()).map(|c| (v.key(c).clone(), v.dim_of(c))).collect();
        let out = GradedModule::build(v.system(), v.alpha(), v.top(), comps, |s, g, _| {
            let c = v.comp(s).unwrap();
            let (t, a) = match v.action(c, g) {
                Act::Map(t, a) => (*t, a),
                _ => return Ok(None),
            };
            let cols = vecs[c]
                .iter()
                .map(|b| {
                    let coords = self.comps[t]
                        .coordinates(&a.mul_vec(b))
                        .ok_or_else(|| KlrError::Inconsistent("lattice not stable".into()))?;
                    Ok(coords.iter().map(F::from_bigint).collect())
                })
                .collect::<Result<Vec<Vec<F>>>>()?;
            Ok(Some(Matrix::from_columns(&cols, v.dim_of(t))))
        })?;
        Ok(out.with_blocks(v.blocks().to_vec()))
    }
}
