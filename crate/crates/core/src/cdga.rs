//! Commutative differential graded algebras over presented algebras.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gcalg::{AlgebraError, AlgebraPresentation, HilbertSeries, Monomial, Polynomial};
use crate::linalg::{self, EchelonBasis, Rational, SparseMatrix, SparseVector};
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdgaError {
    #[error("differential has {got} entries for {expected} generators")]
    LengthMismatch { expected: usize, got: usize },
    #[error("d({generator}) is not homogeneous of degree {expected}")]
    DegreeMismatch { generator: String, expected: u32 },
    #[error("d does not preserve the ideal: d of relation {relation} is nonzero in the quotient")]
    NotWellDefined { relation: usize },
    #[error("d^2({generator}) is nonzero")]
    NotSquareZero { generator: String },
    #[error("map is not a chain map at generator {generator}")]
    NotChainMap { generator: String },
    #[error("map does not send relation {relation} into the target ideal")]
    MapNotWellDefined { relation: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Dimensions of cohomology in degrees `0..=bound`, optionally with cocycle
/// representatives for each degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub betti: Vec<usize>,
    #[serde(skip)]
    pub representatives: Option<Vec<Vec<Polynomial>>>,
}

impl BettiTable {
    pub fn from_dims(betti: Vec<usize>) -> Self {
        BettiTable {
            betti,
            representatives: None,
        }
    }

    pub fn bound(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    pub fn get(&self, d: usize) -> usize {
        self.betti.get(d).copied().unwrap_or(0)
    }

    pub fn odd_vanishes(&self) -> bool {
        self.betti.iter().skip(1).step_by(2).all(|&b| b == 0)
    }
}

/// `entries[p][q] = dim E_2^{p,q}` for `p + q <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedTable {
    pub bound: usize,
    pub entries: Vec<Vec<usize>>,
}

impl BigradedTable {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.entries.get(p).and_then(|row| row.get(q)).copied().unwrap_or(0)
    }

    /// Sum along anti-diagonals: the total dimension in each degree `p + q`.
    pub fn totals(&self) -> Vec<usize> {
        (0..=self.bound)
            .map(|n| (0..=n).map(|p| self.get(p, n - p)).sum())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Cdga {
    algebra: Arc<AlgebraPresentation>,
    differential: Vec<Polynomial>,
}

impl Cdga {
    /// Builds and fully checks a CDGA: degrees, well-definedness on every
    /// relation, and `d^2 = 0` on generators.
    pub fn new(algebra: AlgebraPresentation, differential: Vec<Polynomial>) -> Result<Self, CdgaError> {
        Self::from_shared(Arc::new(algebra), differential)
    }

    pub fn from_shared(algebra: Arc<AlgebraPresentation>, differential: Vec<Polynomial>) -> Result<Self, CdgaError> {
        let gens = algebra.generators();
        if gens.len() != differential.len() {
            return Err(CdgaError::LengthMismatch {
                expected: gens.len(),
                got: differential.len(),
            });
        }
        for (g, dg) in gens.iter().zip(&differential) {
            let ok = dg.is_zero() || algebra.homogeneous_degree(dg) == Some(g.degree + 1);
            if !ok {
                return Err(CdgaError::DegreeMismatch {
                    generator: g.name.clone(),
                    expected: g.degree + 1,
                });
            }
        }
        let cdga = Cdga { algebra, differential };
        cdga.check_differential(u32::MAX)?;
        Ok(cdga)
    }

    /// The algebra with zero differential.
    pub fn zero_differential(algebra: AlgebraPresentation) -> Self {
        let n = algebra.generators().len();
        Cdga {
            algebra: Arc::new(algebra),
            differential: vec![Polynomial::zero(); n],
        }
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn shared_algebra(&self) -> Arc<AlgebraPresentation> {
        Arc::clone(&self.algebra)
    }

    pub fn generator_differentials(&self) -> &[Polynomial] {
        &self.differential
    }

    /// Checks `d(r)` lies in the ideal for relations of degree `< bound` and
    /// `d^2 = 0` on generators of degree `< bound`.
    pub fn check_differential(&self, bound: u32) -> Result<(), CdgaError> {
        for (i, (r, &deg)) in self
            .algebra
            .relations()
            .iter()
            .zip(self.algebra.relation_degrees())
            .enumerate()
        {
            if deg < bound && !self.algebra.is_zero_in_quotient(&self.free_differential(r)) {
                return Err(CdgaError::NotWellDefined { relation: i });
            }
        }
        for (g, dg) in self.algebra.generators().iter().zip(&self.differential) {
            if g.degree < bound && !self.algebra.is_zero_in_quotient(&self.free_differential(dg)) {
                return Err(CdgaError::NotSquareZero {
                    generator: g.name.clone(),
                });
            }
        }
        Ok(())
    }

    /// The Leibniz extension of `d` to a monomial, in the free algebra.
    fn monomial_differential(&self, m: &Monomial) -> Polynomial {
        let alg = &self.algebra;
        let mut out = Polynomial::zero();
        for (g, e) in m.exponents() {
            let dg = &self.differential[g];
            if dg.is_zero() {
                continue;
            }
            let (left, _, right) = m.split_at(g);
            // d(g^e) = e g^(e-1) dg; odd generators only occur with e = 1.
            let left = if e > 1 {
                alg.mul_monomials(&left, &Monomial::from_exponents([(g, e - 1)]))
                    .expect("even generator")
                    .1
            } else {
                left
            };
            let base_sign = alg.monomial_degree(&left) % 2 == 1;
            let scale = Rational::from_integer(e.into());
            for (t, c) in dg.terms() {
                let Some((s1, lt)) = alg.mul_monomials(&left, t) else {
                    continue;
                };
                let Some((s2, full)) = alg.mul_monomials(&lt, &right) else {
                    continue;
                };
                let mut coeff = if e > 1 { c * &scale } else { c.clone() };
                if base_sign ^ s1 ^ s2 {
                    coeff = -coeff;
                }
                out.add_term(full, coeff);
            }
        }
        out
    }

    /// `d(p)` computed in the free algebra (not reduced).
    pub fn free_differential(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.monomial_differential(m), c);
        }
        out
    }

    /// `d(p)` in normal form.
    pub fn differential(&self, p: &Polynomial) -> Polynomial {
        self.algebra.reduce(&self.free_differential(p))
    }

    pub fn is_cocycle(&self, p: &Polynomial) -> bool {
        self.differential(p).is_zero()
    }

    /// Matrix of `d: A^d -> A^(d+1)` in quotient bases.
    pub fn differential_matrix(&self, d: u32) -> SparseMatrix {
        let src = self.algebra.piece(d);
        let rows = self.algebra.dim(d + 1);
        let mut triplets = Vec::new();
        for (j, m) in src.basis_monomials().enumerate() {
            let dm = self.monomial_differential(m);
            if dm.is_zero() {
                continue;
            }
            for (i, c) in self.algebra.coords(&dm, d + 1) {
                triplets.push((i, j, c));
            }
        }
        SparseMatrix::from_triplets(rows, src.dim(), triplets)
    }

    /// `dim H^d` for `d <= bound`.
    pub fn betti_numbers(&self, bound: u32) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=bound)
            .into_par_iter()
            .map(|d| linalg::rank(&self.differential_matrix(d)))
            .collect();
        (0..=bound as usize)
            .map(|d| {
                let prev = if d == 0 { 0 } else { ranks[d - 1] };
                self.algebra.dim(d as u32) - ranks[d] - prev
            })
            .collect()
    }

    /// Cohomology with representatives. Representatives in degree d are
    /// cocycles reduced modulo the coboundaries' echelon form, listed in
    /// kernel-basis order.
    pub fn cohomology(&self, bound: u32) -> BettiTable {
        let matrices: Vec<SparseMatrix> = (0..=bound)
            .into_par_iter()
            .map(|d| self.differential_matrix(d))
            .collect();
        let per_degree: Vec<Vec<Polynomial>> = (0..=bound as usize)
            .into_par_iter()
            .map(|d| {
                let boundaries = if d == 0 {
                    EchelonBasis::new()
                } else {
                    column_span(&matrices[d - 1])
                };
                let mut span = boundaries.clone();
                let mut reps = Vec::new();
                for v in linalg::kernel_basis(&matrices[d]) {
                    let v = boundaries.reduce(linalg::sparse_from_dense(&v));
                    if span.insert(v.clone()) {
                        reps.push(self.algebra.from_coords(d as u32, &v));
                    }
                }
                reps
            })
            .collect();
        BettiTable {
            betti: per_degree.iter().map(Vec::len).collect(),
            representatives: Some(per_degree),
        }
    }

    pub fn poincare_series(&self, bound: u32) -> HilbertSeries {
        HilbertSeries {
            coefficients: self.betti_numbers(bound),
        }
    }

    /// `sum (-1)^d dim A^d` for `d <= bound`.
    pub fn euler_characteristic(&self, bound: u32) -> i64 {
        (0..=bound)
            .map(|d| {
                let dim = self.algebra.dim(d) as i64;
                if d % 2 == 0 { dim } else { -dim }
            })
            .sum()
    }
}

/// Echelon basis of the column space of `m`.
fn column_span(m: &SparseMatrix) -> EchelonBasis {
    let mut ech = EchelonBasis::new();
    let t = m.transpose();
    for j in 0..t.rows() {
        ech.insert(t.row(j).clone());
    }
    ech
}

/// Applies the algebra map determined by generator images `f` to `p`, giving
/// a normal form in `target`.
pub fn map_polynomial(f: &[Polynomial], target: &AlgebraPresentation, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut image = Polynomial::one();
        for (g, e) in m.exponents() {
            image = target.free_mul(&image, &target.free_pow(&f[g], e));
            if image.is_zero() {
                break;
            }
        }
        out.add_scaled(&image, c);
    }
    target.reduce(&out)
}

/// Checks that `f` (images of the source generators) is a well-defined chain
/// map, then whether it induces isomorphisms on `H^d` for all `d <= bound`.
pub fn verify_quasi_iso(f: &[Polynomial], source: &Cdga, target: &Cdga, bound: u32) -> Result<bool, CdgaError> {
    check_chain_map(f, source, target)?;
    let src_h = source.cohomology(bound);
    let tgt_betti = target.betti_numbers(bound);
    let reps = src_h.representatives.expect("representatives requested");
    for d in 0..=bound as usize {
        if src_h.betti[d] != tgt_betti[d] {
            return Ok(false);
        }
        if src_h.betti[d] == 0 {
            continue;
        }
        let mut span = if d == 0 {
            EchelonBasis::new()
        } else {
            column_span(&target.differential_matrix(d as u32 - 1))
        };
        for rep in &reps[d] {
            let image = map_polynomial(f, target.algebra(), rep);
            if !span.insert(target.algebra().coords(&image, d as u32)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verifies degrees, that relations map into the target ideal, and `f d = d f`
/// on generators.
pub fn check_chain_map(f: &[Polynomial], source: &Cdga, target: &Cdga) -> Result<(), CdgaError> {
    let gens = source.algebra().generators();
    if f.len() != gens.len() {
        return Err(CdgaError::LengthMismatch {
            expected: gens.len(),
            got: f.len(),
        });
    }
    for (g, image) in gens.iter().zip(f) {
        if !image.is_zero() && target.algebra().homogeneous_degree(image) != Some(g.degree) {
            return Err(CdgaError::NotChainMap {
                generator: g.name.clone(),
            });
        }
    }
    for (i, r) in source.algebra().relations().iter().enumerate() {
        if !map_polynomial(f, target.algebra(), r).is_zero() {
            return Err(CdgaError::MapNotWellDefined { relation: i });
        }
    }
    for (k, g) in gens.iter().enumerate() {
        let lhs = target.differential(&f[k]);
        let rhs = map_polynomial(f, target.algebra(), &source.generator_differentials()[k]);
        if lhs != rhs {
            return Err(CdgaError::NotChainMap {
                generator: g.name.clone(),
            });
        }
    }
    Ok(())
}

/// Dimensions of `(tensor of fibre cohomologies) ⊗ (base cohomology)` with the
/// fibre in the `q` direction and the base in the `p` direction.
pub fn e2_page(fibres: &[BettiTable], base: &BettiTable, bound: usize) -> BigradedTable {
    let mut fibre = vec![0usize; bound + 1];
    fibre[0] = 1;
    for f in fibres {
        let mut next = vec![0usize; bound + 1];
        for (i, &a) in fibre.iter().enumerate() {
            for j in 0..=bound - i {
                next[i + j] += a * f.get(j);
            }
        }
        fibre = next;
    }
    let entries = (0..=bound)
        .map(|p| (0..=bound - p).map(|q| base.get(p) * fibre[q]).collect())
        .collect();
    BigradedTable { bound, entries }
}

/// Top degree `m + n` of a moment-angle manifold over an `(n-1)`-sphere on `m` vertices.
pub fn moment_angle_bound(k: &SimplicialComplex) -> u32 {
    (k.m() + k.dimension() + 1) as u32
}

/// Top degree `2n` of a smooth complete toric variety of complex dimension `n`.
pub fn toric_bound(n: usize) -> u32 {
    2 * n as u32
}

/// Dense coordinates are sometimes convenient in tests and bindings.
pub fn coords_to_dense(v: &SparseVector, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (&i, c) in v {
        out[i] = c.clone();
    }
    out
}
