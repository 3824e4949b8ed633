//! Decomposition matrices over one field and adjustment matrices between characteristic
//! zero and characteristic `p`.

use serde::Serialize;

use super::lattice::integral_form;
use crate::error::{KlrError, Result};
use crate::linalg::{Field, LaurentSeries, Q};
use crate::modules::{decompose_character, Character, GradedModule, HVec};
use crate::roots::{bilex_less, kostant_partitions, ConvexOrder, KostantPartition, Weight};
use crate::standard::Family;

/// A square matrix of Laurent polynomials indexed by Kostant partitions listed in a linear
/// extension of the bilexicographic order (smallest first).
#[derive(Clone, Debug, Serialize)]
pub struct LaurentMatrix {
    pub alpha: String,
    pub field: String,
    pub labels: Vec<String>,
    #[serde(skip)]
    pub partitions: Vec<KostantPartition>,
    #[serde(serialize_with = "as_strings")]
    pub entries: Vec<Vec<LaurentSeries>>,
}

/// Equality of Laurent polynomials by their nonzero coefficients.
fn same_poly(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let nz = |x: &LaurentSeries| x.coeffs.iter().filter(|(_, c)| **c != 0).map(|(d, c)| (*d, *c)).collect::<Vec<_>>();
    nz(a) == nz(b)
}

fn as_strings<S: serde::Serializer>(m: &[Vec<LaurentSeries>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        seq.serialize_element(&row.iter().map(|x| x.to_laurent_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl LaurentMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| same_poly(&self.entries[i][j], &if i == j { LaurentSeries::one() } else { LaurentSeries::zero() })))
    }

    pub fn same_entries(&self, o: &[Vec<LaurentSeries>]) -> bool {
        self.entries.len() == o.len()
            && self.entries.iter().zip(o).all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(a, b)| same_poly(a, b)))
    }

    /// Ones on the diagonal and nonzero entries only at `(lambda, mu)` with `mu < lambda`.
    pub fn is_unitriangular(&self, order: &ConvexOrder) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            same_poly(&self.entries[i][i], &LaurentSeries::one())
                && (0..n).all(|j| i == j || same_poly(&self.entries[i][j], &LaurentSeries::zero()) || bilex_less(order, &self.partitions[j], &self.partitions[i]))
        })
    }

    pub fn entries_bar_invariant(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_zero() || x.is_bar_invariant())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(LaurentSeries::zero(), |acc, k| acc.add(&self.entries[i][k].mul(&o.entries[k][j]))))
                    .collect()
            })
            .collect();
        LaurentMatrix { alpha: self.alpha.clone(), field: o.field.clone(), labels: self.labels.clone(), partitions: self.partitions.clone(), entries }
    }

    /// Comma-separated table with Laurent strings like `1+q^2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda");
        for l in &self.labels {
            out.push_str(&format!(",{}", l));
        }
        out.push('\n');
        for (i, row) in self.entries.iter().enumerate() {
            out.push_str(&self.labels[i]);
            for x in row {
                out.push_str(&format!(",{}", x.to_laurent_string()));
            }
            out.push('\n');
        }
        out
    }
}

/// Kostant partitions of `alpha` in a linear extension of the bilexicographic order.
pub fn sorted_partitions(order: &ConvexOrder, alpha: &Weight) -> Vec<KostantPartition> {
    let mut rest = kostant_partitions(order, alpha);
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let i = (0..rest.len()).find(|&i| !rest.iter().any(|m| bilex_less(order, m, &rest[i]))).expect("partial order");
        out.push(rest.remove(i));
    }
    out
}

fn decompose_rows<F: Field>(
    family: &Family<F>,
    kps: &[KostantPartition],
    mut chars: impl FnMut(&KostantPartition) -> Result<Character>,
) -> Result<Vec<Vec<LaurentSeries>>> {
    let simples = kps.iter().map(|l| Ok(Character::of_module(&family.simple(l)?))).collect::<Result<Vec<_>>>()?;
    kps.iter().map(|l| Ok(decompose_character(&chars(l)?, &simples)?.mult)).collect()
}

/// `[Delta-bar(lambda)] = sum_mu d_{lambda,mu} [L(mu)]` over the family's field.
pub fn decomposition_matrix<F: Field>(family: &Family<F>, alpha: &Weight) -> Result<LaurentMatrix> {
    let kps = sorted_partitions(family.order(), alpha);
    let entries = decompose_rows(family, &kps, |l| Ok(Character::of_module(&family.reduced_standard(l)?.module)))?;
    let m = LaurentMatrix {
        alpha: alpha.to_string(),
        field: F::tag(),
        labels: kps.iter().map(|l| l.to_string()).collect(),
        partitions: kps,
        entries,
    };
    if !m.is_unitriangular(family.order()) {
        return Err(KlrError::Inconsistent(format!("decomposition matrix over {} is not unitriangular", F::tag())));
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjustmentReport {
    pub alpha: String,
    pub p: u64,
    pub adjustment: LaurentMatrix,
    pub rational: LaurentMatrix,
    pub modular: LaurentMatrix,
    /// Characters of reductions agree with the rational simples.
    pub characters_preserved: bool,
    /// Rows of the adjustment matrix computed from a second lattice agree.
    pub lattice_independent: bool,
    pub unitriangular: bool,
    pub bar_invariant: bool,
    /// `D^F = D^K A`.
    pub factorization: bool,
    pub james: bool,
    pub verdict: String,
}

/// A vector generating a simple module: the first basis vector of its lowest component.
fn first_vector(m: &GradedModule<Q>) -> HVec<Q> {
    m.basis_vector(0, 0)
}

/// A second generator: the last basis vector of the highest component.
fn last_vector(m: &GradedModule<Q>) -> HVec<Q> {
    let c = m.num_comps() - 1;
    m.basis_vector(c, m.dim_of(c) - 1)
}

fn reduced_rows<F: Field>(
    rational: &Family<Q>,
    modular: &Family<F>,
    kps: &[KostantPartition],
    pick: fn(&GradedModule<Q>) -> HVec<Q>,
) -> Result<(Vec<Vec<LaurentSeries>>, bool)> {
    let mut preserved = true;
    let rows = decompose_rows(modular, kps, |l| {
        let lk = rational.simple(l)?;
        let red = integral_form(&lk, &[pick(&lk)])?.reduce::<F>()?;
        red.check_relations()?;
        let ch = Character::of_module(&red);
        preserved &= ch == Character::of_module(&lk);
        Ok(ch)
    })?;
    Ok((rows, preserved))
}

/// The adjustment matrix `[L(lambda)_Z (x) F_p] = sum_mu a_{lambda,mu} [L(mu)_{F_p}]`.
pub fn adjustment_matrix<F: Field>(rational: &Family<Q>, modular: &Family<F>, alpha: &Weight) -> Result<AdjustmentReport> {
    let p = F::characteristic();
    if p == 0 {
        return Err(KlrError::Domain("adjustment matrices need a prime field".into()));
    }
    let kps = sorted_partitions(rational.order(), alpha);
    let (entries, preserved_a) = reduced_rows(rational, modular, &kps, first_vector)?;
    let (second, preserved_b) = reduced_rows(rational, modular, &kps, last_vector)?;
    let adjustment = LaurentMatrix {
        alpha: alpha.to_string(),
        field: F::tag(),
        labels: kps.iter().map(|l| l.to_string()).collect(),
        partitions: kps.clone(),
        entries,
    };
    let lattice_independent = adjustment.same_entries(&second);
    let dk = decomposition_matrix(rational, alpha)?;
    let df = decomposition_matrix(modular, alpha)?;
    let factorization = dk.mul(&adjustment).same_entries(&df.entries);
    let unitriangular = adjustment.is_unitriangular(rational.order());
    let bar_invariant = adjustment.entries_bar_invariant();
    if !factorization {
        return Err(KlrError::Inconsistent(format!("D^F differs from D^K A for {} at p = {}", alpha, p)));
    }
    let james = adjustment.is_identity();
    let verdict = if james {
        format!("adjustment matrix for {} at p = {} is the identity: positive", alpha, p)
    } else {
        format!("adjustment matrix for {} at p = {} is not the identity: negative", alpha, p)
    };
    Ok(AdjustmentReport {
        alpha: alpha.to_string(),
        p,
        adjustment,
        rational: dk,
        modular: df,
        characters_preserved: preserved_a && preserved_b,
        lattice_independent,
        unitriangular,
        bar_invariant,
        factorization,
        james,
        verdict,
    })
}
