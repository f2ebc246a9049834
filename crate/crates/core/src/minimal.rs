//! Minimal Sullivan models of simply connected CDGAs, degree by degree, and
//! the homotopy-rank bookkeeping built on them.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdga::{map_polynomial, Cdga, CdgaError};
use crate::gcalg::{AlgebraPresentation, Generator, Polynomial};
use crate::linalg::{self, EchelonBasis, Rational, SparseMatrix, SparseVector};
use crate::models::{lie_pair_base_model, lie_pair_model, LiePairFamily, LiePairSpec, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalError {
    #[error("target is not simply connected: H^0 has dimension {h0}, H^1 has dimension {h1}")]
    NotSimplyConnected { h0: usize, h1: usize },
    #[error("degree bound {0} is too small; minimal models need a bound of at least 2")]
    DegreeBoundTooSmall(u32),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Cdga(#[from] CdgaError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A free CDGA `(∧W, d)` with generators of degree `2..=bound`, and a map into
/// the target inducing isomorphisms on `H^{<=bound}` and an injection on
/// `H^{bound+1}`.
#[derive(Debug, Clone)]
pub struct MinimalModel {
    pub bound: u32,
    pub model: Cdga,
    /// Image in the target of each generator of `model`.
    pub map: Vec<Polynomial>,
}

/// `ranks[d]` = rank of `π_d ⊗ Q` for `2 <= d <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyRanks {
    pub bound: u32,
    pub pi_ranks: BTreeMap<u32, usize>,
}

impl HomotopyRanks {
    pub fn get(&self, d: u32) -> usize {
        self.pi_ranks.get(&d).copied().unwrap_or(0)
    }
}

impl MinimalModel {
    pub fn generators_in_degree(&self, d: u32) -> usize {
        self.model.algebra().generators().iter().filter(|g| g.degree == d).count()
    }

    pub fn ranks(&self) -> HomotopyRanks {
        HomotopyRanks {
            bound: self.bound,
            pi_ranks: (2..=self.bound).map(|d| (d, self.generators_in_degree(d))).collect(),
        }
    }

    /// No generator's differential has a linear term.
    pub fn is_minimal(&self) -> bool {
        self.model
            .generator_differentials()
            .iter()
            .all(|dw| dw.word_length_part(1).is_zero())
    }
}

fn column_span(m: &SparseMatrix) -> EchelonBasis {
    let t = m.transpose();
    let mut ech = EchelonBasis::new();
    for j in 0..t.rows() {
        ech.insert(t.row(j).clone());
    }
    ech
}

fn free_cdga(generators: &[Generator], differentials: &[Polynomial]) -> Result<Cdga, CdgaError> {
    Cdga::new(
        AlgebraPresentation::free(generators.to_vec()).expect("generator names are unique"),
        differentials.to_vec(),
    )
}

fn dense_combination(basis: &[Vec<Rational>], coeffs: &[Rational]) -> SparseVector {
    let mut out = SparseVector::new();
    for (v, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        linalg::axpy(&mut out, c, &linalg::sparse_from_dense(v));
    }
    out
}

/// Builds the minimal model through degree `bound`. At each degree `k`,
/// closed generators are added to reach all of `H^k` of the target, then
/// generators with `dw = z` kill the kernel of `H^{k+1}` of the model.
pub fn minimal_model(target: &Cdga, bound: u32) -> Result<MinimalModel, MinimalError> {
    if bound < 2 {
        return Err(MinimalError::DegreeBoundTooSmall(bound));
    }
    let low = target.betti_numbers(1);
    if low != [1, 0] {
        return Err(MinimalError::NotSimplyConnected { h0: low[0], h1: low[1] });
    }
    let target_h = target.cohomology(bound);
    let target_reps = target_h.representatives.expect("representatives requested");
    let target_d: Vec<SparseMatrix> = (0..=bound).map(|d| target.differential_matrix(d)).collect();
    let c_alg = target.algebra();

    let mut generators: Vec<Generator> = Vec::new();
    let mut differentials: Vec<Polynomial> = Vec::new();
    let mut map: Vec<Polynomial> = Vec::new();
    for k in 2..=bound {
        let mut count = 0usize;
        // Surjectivity onto H^k.
        let model = free_cdga(&generators, &differentials)?;
        let mut image = column_span(&target_d[k as usize - 1]);
        let model_h = model_cohomology_in(&model, k);
        for rep in model_h {
            let img = map_polynomial(&map, c_alg, &rep);
            image.insert(c_alg.coords(&img, k));
        }
        for rep in &target_reps[k as usize] {
            if image.insert(c_alg.coords(rep, k)) {
                count += 1;
                generators.push(Generator::new(format!("w_{{{k},{count}}}"), k));
                differentials.push(Polynomial::zero());
                map.push(rep.clone());
            }
        }
        // Injectivity on H^{k+1}.
        let model = free_cdga(&generators, &differentials)?;
        let m_alg = model.algebra();
        let cocycles = linalg::kernel_basis(&model.differential_matrix(k + 1));
        if cocycles.is_empty() {
            continue;
        }
        let images: Vec<SparseVector> = cocycles
            .iter()
            .map(|z| {
                let p = m_alg.from_coords(k + 1, &linalg::sparse_from_dense(z));
                c_alg.coords(&map_polynomial(&map, c_alg, &p), k + 1)
            })
            .collect();
        let d_c = if (k as usize) < target_d.len() {
            target_d[k as usize].clone()
        } else {
            target.differential_matrix(k)
        };
        let nz = cocycles.len();
        let mut columns = images;
        let neg = -Rational::from_integer(1.into());
        let d_c_t = d_c.transpose();
        for j in 0..d_c_t.rows() {
            columns.push(d_c_t.row(j).iter().map(|(&r, v)| (r, v * &neg)).collect());
        }
        let system = SparseMatrix::from_columns(c_alg.dim(k + 1), &columns);
        let mut killed = column_span(&model.differential_matrix(k));
        for sol in linalg::kernel_basis(&system) {
            let z = dense_combination(&cocycles, &sol[..nz]);
            if z.is_empty() || !killed.insert(z.clone()) {
                continue;
            }
            let c: SparseVector = sol[nz..]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect();
            count += 1;
            generators.push(Generator::new(format!("w_{{{k},{count}}}"), k));
            differentials.push(m_alg.from_coords(k + 1, &z));
            map.push(c_alg.from_coords(k, &c));
        }
    }
    let model = free_cdga(&generators, &differentials)?;
    Ok(MinimalModel { bound, model, map })
}

/// Cocycle representatives for `H^k` of a CDGA.
fn model_cohomology_in(model: &Cdga, k: u32) -> Vec<Polynomial> {
    let boundaries = column_span(&model.differential_matrix(k - 1));
    let mut span = boundaries.clone();
    let mut reps = Vec::new();
    for v in linalg::kernel_basis(&model.differential_matrix(k)) {
        let v = boundaries.reduce(linalg::sparse_from_dense(&v));
        if span.insert(v.clone()) {
            reps.push(model.algebra().from_coords(k, &v));
        }
    }
    reps
}

pub fn homotopy_ranks(target: &Cdga, bound: u32) -> Result<HomotopyRanks, MinimalError> {
    Ok(minimal_model(target, bound)?.ranks())
}

/// True when some generator's differential has a nonzero word-length-2 part.
pub fn quadratic_part_nontrivial(model: &MinimalModel) -> bool {
    model
        .model
        .generator_differentials()
        .iter()
        .any(|dw| !dw.word_length_part(2).is_zero())
}

/// Ranks of the three terms `π_d((G,H)^K)`, `π_d((G/H,*)^K)`, `π_{d-1}(H^m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesRow {
    pub degree: u32,
    pub left: usize,
    pub middle: usize,
    pub right: usize,
    pub exactness_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesReport {
    pub bound: u32,
    /// Rank of `π_1` of the total space, which the sequence does not cover.
    pub total_pi1: usize,
    pub rows: Vec<SesRow>,
}

impl SesReport {
    pub fn row(&self, d: u32) -> Option<&SesRow> {
        self.rows.iter().find(|r| r.degree == d)
    }
}

/// The total space's model relative to the base's minimal model:
/// `∧(x_{i,j}) ⊗ ∧W` with `d x_{i,j}` the degree-2 generator representing
/// `t_{i,j}`. Also returns the base minimal model and the map into
/// `lie_pair_model(spec)` (x to x, w to its image in the base).
pub struct RelativeTotalModel {
    pub base: MinimalModel,
    pub model: Cdga,
    pub map_to_lie_pair_model: Vec<Polynomial>,
    /// Number of degree-1 generators, which come first.
    pub fibre_generators: usize,
}

pub fn relative_total_model(spec: &LiePairSpec, bound: u32) -> Result<RelativeTotalModel, MinimalError> {
    let n = match spec.family {
        LiePairFamily::UnT { n } => n,
        LiePairFamily::SUnSUk { .. } => {
            return Err(MinimalError::HypothesisViolated(
                "SU(k) is not of maximal rank in SU(n)".into(),
            ))
        }
    };
    let base_cdga = lie_pair_base_model(spec)?;
    let total_cdga = lie_pair_model(spec)?;
    let base = minimal_model(&base_cdga, bound)?;
    let b_alg = base_cdga.algebra();
    // Degree-2 generators of the minimal model map isomorphically onto H^2 = B^2.
    let w2: Vec<usize> = (0..base.map.len())
        .filter(|&i| base.model.algebra().generators()[i].degree == 2)
        .collect();
    let columns: Vec<SparseVector> = w2.iter().map(|&i| b_alg.coords(&base.map[i], 2)).collect();
    let phi2 = SparseMatrix::from_columns(b_alg.dim(2), &columns);
    let m = spec.m();
    let fibre_generators = n * m;
    let mut generators = Vec::with_capacity(fibre_generators + base.map.len());
    let mut differentials = Vec::new();
    let mut map = Vec::new();
    let t_alg = total_cdga.algebra();
    for g in &t_alg.generators()[..fibre_generators] {
        let t_name = format!("t{}", &g.name[1..]);
        let t = Polynomial::generator(b_alg.generator_index(&t_name).expect("matching base generator"));
        let rhs = linalg::dense_from_sparse(&b_alg.coords(&t, 2), b_alg.dim(2));
        let coeffs = linalg::solve(&phi2, &rhs).expect("t is a class in H^2");
        let lift = Polynomial::linear(
            w2.iter()
                .zip(coeffs)
                .map(|(&i, c)| (fibre_generators + i, c)),
        );
        generators.push(g.clone());
        differentials.push(lift);
        map.push(Polynomial::generator(t_alg.generator_index(&g.name).expect("present")));
    }
    let shift: Vec<usize> = (0..base.map.len()).map(|i| fibre_generators + i).collect();
    generators.extend(base.model.algebra().generators().iter().cloned());
    differentials.extend(base.model.generator_differentials().iter().map(|d| d.reindexed(&shift)));
    // Base generators t_{i,j} sit in the total model under the same names.
    let base_to_total: Vec<Polynomial> = b_alg
        .generators()
        .iter()
        .map(|g| Polynomial::generator(t_alg.generator_index(&g.name).expect("shared name")))
        .collect();
    map.extend(base.map.iter().map(|p| map_polynomial(&base_to_total, t_alg, p)));
    let model = free_cdga(&generators, &differentials)?;
    Ok(RelativeTotalModel {
        base,
        model,
        map_to_lie_pair_model: map,
        fibre_generators,
    })
}

/// Rank bookkeeping for the sequence
/// `0 -> π_*((G,H)^K) -> π_*((G/H,*)^K) -> π_{*-1}(H^m) -> 0`
/// in degrees `2..=bound`. Ranks of the total space come from the linear part
/// of the relative model: `π^1 = ker d_0`, `π^2 = W^2 / im d_0`, `π^d = W^d`.
pub fn check_ses_thm12(spec: &LiePairSpec, bound: u32) -> Result<SesReport, MinimalError> {
    let rel = relative_total_model(spec, bound)?;
    let n = match spec.family {
        LiePairFamily::UnT { n } => n,
        LiePairFamily::SUnSUk { .. } => unreachable!("rejected above"),
    };
    let m = spec.m();
    let f = rel.fibre_generators;
    let w2 = rel.base.generators_in_degree(2);
    // Linear part of d on the degree-1 generators, as a map into W^2.
    let triplets: Vec<(usize, usize, Rational)> = rel.model.generator_differentials()[..f]
        .iter()
        .enumerate()
        .flat_map(|(j, p)| {
            p.word_length_part(1)
                .terms()
                .map(|(mono, c)| {
                    let (g, _) = mono.exponents().next().expect("linear");
                    (g - f, j, c.clone())
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let w_count = rel.base.map.len();
    let d0 = SparseMatrix::from_triplets(w_count, f, triplets);
    let r = linalg::rank(&d0);
    let base_ranks = rel.base.ranks();
    let rows = (2..=bound)
        .map(|d| {
            let middle = base_ranks.get(d);
            let left = if d == 2 { w2 - r } else { middle };
            let right = if d == 2 { m * n } else { 0 };
            SesRow {
                degree: d,
                left,
                middle,
                right,
                exactness_ok: middle == left + right,
            }
        })
        .collect();
    Ok(SesReport {
        bound,
        total_pi1: f - r,
        rows,
    })
}
