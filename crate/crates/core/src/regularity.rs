//! Regular-sequence tests through Koszul homology, Hilbert-series identities,
//! and the partial-quotient classifier.

use std::collections::HashMap;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gcalg::{AlgebraPresentation, HilbertSeries, Polynomial};
use crate::linalg::{self, Rational, SparseMatrix, SparseVector};
use crate::simplicial::SimplicialComplex;
use crate::toric::{partial_quotient_model, CharacteristicMatrix, ToricError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error("form {0} does not have even degree")]
    OddDegreeForm(usize),
    #[error("form {0} is not homogeneous")]
    NonHomogeneousForm(usize),
    #[error(transparent)]
    Toric(#[from] ToricError),
}

/// A homogeneous element of an algebra with its degree recorded, so the zero
/// form still has a degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub polynomial: Polynomial,
    pub degree: u32,
}

impl Form {
    pub fn new(polynomial: Polynomial, degree: u32) -> Self {
        Form { polynomial, degree }
    }

    /// `sum_j coeffs[j] * generator(offset + j)`, of degree 2.
    pub fn linear(coeffs: &[i64], offset: usize) -> Self {
        Form::new(
            Polynomial::linear(coeffs.iter().enumerate().map(|(j, &c)| (offset + j, Rational::from_integer(c.into())))),
            2,
        )
    }
}

fn check_forms(a: &AlgebraPresentation, forms: &[Form]) -> Result<(), RegularityError> {
    for (i, f) in forms.iter().enumerate() {
        if f.degree % 2 == 1 || f.degree == 0 {
            return Err(RegularityError::OddDegreeForm(i));
        }
        if !f.polynomial.is_zero() && a.homogeneous_degree(&f.polynomial) != Some(f.degree) {
            return Err(RegularityError::NonHomogeneousForm(i));
        }
    }
    Ok(())
}

/// Koszul homology `Tor^{-j, i}` for `j = 0..=l` and internal degree `i <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorTable {
    pub bound: u32,
    /// `dims[j][i]`.
    pub dims: Vec<Vec<usize>>,
}

impl TorTable {
    pub fn get(&self, j: usize, i: usize) -> usize {
        self.dims.get(j).and_then(|r| r.get(i)).copied().unwrap_or(0)
    }

    /// True when `Tor^{-j,*}` vanishes through the bound for every `1 <= j <= max_j`.
    pub fn vanishes_through(&self, max_j: usize) -> bool {
        (1..=max_j.min(self.dims.len().saturating_sub(1))).all(|j| self.dims[j].iter().all(|&d| d == 0))
    }
}

/// Multiplication by each form, as column lists from `A^e` to `A^(e + deg)`.
struct MultTables(HashMap<(usize, u32), Vec<SparseVector>>);

impl MultTables {
    fn new(a: &AlgebraPresentation, forms: &[Form], bound: u32) -> Self {
        let jobs: Vec<(usize, u32)> = forms
            .iter()
            .enumerate()
            .flat_map(|(s, f)| (0..=bound.saturating_sub(f.degree)).map(move |e| (s, e)))
            .filter(|&(s, e)| e + forms[s].degree <= bound)
            .collect();
        let tables = jobs
            .into_par_iter()
            .map(|(s, e)| {
                let f = &forms[s];
                let cols = a
                    .quotient_basis(e)
                    .into_iter()
                    .map(|m| {
                        if f.polynomial.is_zero() {
                            return SparseVector::new();
                        }
                        let prod = a.free_mul(&Polynomial::term(m, Rational::one()), &f.polynomial);
                        a.coords(&prod, e + f.degree)
                    })
                    .collect();
                ((s, e), cols)
            })
            .collect();
        MultTables(tables)
    }
}

/// Homology of `∧(y_1..y_l) ⊗ A` with `d y_i = a_i`, bigraded by word length and
/// internal degree (`deg y_i = deg a_i`).
pub fn tor_table(a: &AlgebraPresentation, forms: &[Form], bound: u32) -> Result<TorTable, RegularityError> {
    check_forms(a, forms)?;
    let l = forms.len();
    let mult = MultTables::new(a, forms, bound);
    let subsets_by_size: Vec<Vec<u64>> = {
        let mut by = vec![Vec::new(); l + 1];
        for s in 0u64..(1u64 << l) {
            by[s.count_ones() as usize].push(s);
        }
        by
    };
    let subset_degree = |s: u64| -> u32 { (0..l).filter(|&k| s >> k & 1 == 1).map(|k| forms[k].degree).sum() };
    let per_degree: Vec<Vec<usize>> = (0..=bound)
        .into_par_iter()
        .map(|i| {
            // Blocks of C_{j,i}: (subset, offset, dim A^{i - deg S}).
            let blocks: Vec<Vec<(u64, usize, usize)>> = subsets_by_size
                .iter()
                .map(|subsets| {
                    let mut offset = 0;
                    subsets
                        .iter()
                        .filter_map(|&s| {
                            let ds = subset_degree(s);
                            (ds <= i).then(|| {
                                let dim = a.dim(i - ds);
                                let block = (s, offset, dim);
                                offset += dim;
                                block
                            })
                        })
                        .collect()
                })
                .collect();
            let total = |j: usize| blocks[j].last().map_or(0, |&(_, o, d)| o + d);
            let ranks: Vec<usize> = (0..=l + 1)
                .map(|j| {
                    if j == 0 || j > l {
                        return 0;
                    }
                    let target_offset: HashMap<u64, usize> = blocks[j - 1].iter().map(|&(s, o, _)| (s, o)).collect();
                    let mut triplets = Vec::new();
                    for &(s, offset, dim) in &blocks[j] {
                        let e = i - subset_degree(s);
                        let members: Vec<usize> = (0..l).filter(|&k| s >> k & 1 == 1).collect();
                        for (pos, &k) in members.iter().enumerate() {
                            let sign = if pos % 2 == 0 { Rational::one() } else { -Rational::one() };
                            let to = target_offset[&(s & !(1u64 << k))];
                            let cols = &mult.0[&(k, e)];
                            for b in 0..dim {
                                for (r, c) in &cols[b] {
                                    triplets.push((to + r, offset + b, c * &sign));
                                }
                            }
                        }
                    }
                    linalg::rank(&SparseMatrix::from_triplets(total(j - 1), total(j), triplets))
                })
                .collect();
            (0..=l).map(|j| total(j) - ranks[j] - ranks[j + 1]).collect()
        })
        .collect();
    let dims = (0..=l)
        .map(|j| per_degree.iter().map(|row| row[j]).collect())
        .collect();
    Ok(TorTable { bound, dims })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    /// `Tor^{-1,i} = 0` for every `i <= bound`.
    pub regular: bool,
    /// Regularity holds in all degrees, not just through the bound.
    pub certified: bool,
    pub bound: u32,
    pub witness_degree: Option<u32>,
    pub tor_minus1_dims: Vec<usize>,
    /// Top degree of `A/(forms)` when it was detected to be finite-dimensional.
    pub quotient_top_degree: Option<u32>,
}

/// `A / (forms)`.
pub fn quotient_by_forms(a: &AlgebraPresentation, forms: &[Form]) -> AlgebraPresentation {
    let mut rels = a.relations().to_vec();
    rels.extend(forms.iter().map(|f| f.polynomial.clone()));
    AlgebraPresentation::new(a.generators().to_vec(), rels).expect("forms are homogeneous")
}

/// Top degree of a quotient whose Hilbert coefficients vanish for
/// `generator_degree` consecutive degrees: since the algebra is generated in
/// degrees at most `generator_degree`, every later piece is zero as well.
pub fn detect_top_degree(series: &HilbertSeries, generator_degree: u32) -> Option<u32> {
    let c = &series.coefficients;
    let g = generator_degree.max(1) as usize;
    let mut run = 0;
    for (d, &v) in c.iter().enumerate() {
        if v == 0 {
            run += 1;
            if run == g {
                let start = d + 1 - g;
                return Some((0..start).rev().find(|&k| c[k] != 0).unwrap_or(0) as u32);
            }
        } else {
            run = 0;
        }
    }
    None
}

/// For a Stanley–Reisner-type algebra (degree-2 generators, squarefree
/// monomial relations) returns `(h, d)` with `Hilb(A) = h(t) / (1 - t^2)^d`.
fn sr_hilbert_rational(a: &AlgebraPresentation) -> Option<(Vec<i128>, usize)> {
    let n = a.generators().len();
    if n > 40 || a.generators().iter().any(|g| g.degree != 2) {
        return None;
    }
    let mut nonfaces = Vec::new();
    for r in a.relations() {
        let mut terms = r.terms();
        let (m, _) = terms.next()?;
        if terms.next().is_some() || m.exponents().any(|(_, e)| e != 1) {
            return None;
        }
        nonfaces.push(m.exponents().fold(0u64, |acc, (g, _)| acc | 1 << g));
    }
    // Count faces level by level.
    let mut counts = vec![1i128];
    let mut level: Vec<u64> = vec![0];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &f in &level {
            let top = if f == 0 { 0 } else { 64 - f.leading_zeros() as usize };
            for v in top..n {
                let g = f | 1 << v;
                if nonfaces.iter().all(|&nf| nf & g != nf) {
                    next.push(g);
                }
            }
        }
        if !next.is_empty() {
            counts.push(next.len() as i128);
        }
        level = next;
    }
    let d = counts.len() - 1;
    let mut h = vec![0i128; 2 * d + 1];
    for (k, &f) in counts.iter().enumerate() {
        // f * t^{2k} * (1 - t^2)^{d-k}
        let mut term = vec![0i128; 2 * k + 1];
        term[2 * k] = f;
        for _ in k..d {
            term = poly_mul(&term, &[1, 0, -1]);
        }
        for (i, c) in term.into_iter().enumerate() {
            h[i] += c;
        }
    }
    Some((h, d))
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut p: Vec<i128>) -> Vec<i128> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// `prod (1 - t^{d_i})`.
fn form_factor(forms: &[Form]) -> Vec<i128> {
    forms.iter().fold(vec![1], |acc, f| {
        let mut factor = vec![0i128; f.degree as usize + 1];
        factor[0] = 1;
        factor[f.degree as usize] = -1;
        poly_mul(&acc, &factor)
    })
}

/// Tests whether `forms` is a regular sequence in `A` by `Tor^{-1,*}` through
/// `bound`. The answer is certified for all degrees when the quotient is
/// visibly finite-dimensional and `A` has a closed-form Hilbert series for
/// which `Hilb(A/(forms)) = Hilb(A) prod (1 - t^{deg a_i})` holds exactly.
pub fn is_regular_sequence(a: &AlgebraPresentation, forms: &[Form], bound: u32) -> Result<RegularityReport, RegularityError> {
    let tor = tor_table(a, forms, bound)?;
    let tor_minus1_dims = tor.dims.get(1).cloned().unwrap_or_else(|| vec![0; bound as usize + 1]);
    let witness_degree = tor_minus1_dims.iter().position(|&d| d != 0).map(|d| d as u32);
    let regular = witness_degree.is_none();
    let q = quotient_by_forms(a, forms);
    let series = q.hilbert_series(bound);
    let quotient_top_degree = detect_top_degree(&series, a.max_generator_degree());
    let certified = regular
        && match (quotient_top_degree, sr_hilbert_rational(a)) {
            (Some(top), Some((h, d))) => {
                let p: Vec<i128> = series.coefficients[..=top as usize].iter().map(|&c| c as i128).collect();
                let mut denom = vec![1i128];
                for _ in 0..d {
                    denom = poly_mul(&denom, &[1, 0, -1]);
                }
                trim(poly_mul(&p, &denom)) == trim(poly_mul(&h, &form_factor(forms)))
            }
            _ => false,
        };
    Ok(RegularityReport {
        regular,
        certified,
        bound,
        witness_degree,
        tor_minus1_dims,
        quotient_top_degree,
    })
}

/// `Hilb(A) = Hilb(A/(forms)) / prod (1 - t^{deg a_i})` coefficient-wise through `bound`.
pub fn hilbert_identity_check(a: &AlgebraPresentation, forms: &[Form], bound: u32) -> bool {
    let lhs: Vec<i128> = a.hilbert_series(bound).coefficients.iter().map(|&c| c as i128).collect();
    let q: Vec<i128> = quotient_by_forms(a, forms)
        .hilbert_series(bound)
        .coefficients
        .iter()
        .map(|&c| c as i128)
        .collect();
    let mut product = poly_mul(&lhs, &form_factor(forms));
    product.resize(bound as usize + 1, 0);
    product[..=bound as usize] == q[..]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ToricCase {
    /// The forms span exactly the fan's row space: the toric manifold itself.
    ToricCase,
    /// More forms than the toric rank, containing the fan's row space.
    ProperSubtorus,
    /// Fewer forms than the toric rank, or not containing the fan's row space.
    NotSubtorus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareObstruction {
    pub l: usize,
    pub n: usize,
    /// Poincaré series of the partial-quotient model through the bound.
    pub p1: Vec<usize>,
    /// Poincaré series of the toric model, when a reference matrix was given.
    pub p2: Option<Vec<usize>>,
    /// Coefficients of `p1 / (1 - t^2)^{l-n}`, which would have to equal `p2`
    /// if the odd cohomology vanished.
    pub p1_over_factor: Vec<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialQuotientVerdict {
    pub case: ToricCase,
    pub bound: u32,
    pub betti: Vec<usize>,
    pub h_odd_vanishes: bool,
    pub formalizable: bool,
    pub poincare_obstruction: Option<PoincareObstruction>,
}

/// Classifies the partial quotient with forms given by the rows of `lambda`
/// against a toric rank `n`. When `reference` (the fan's characteristic
/// matrix) is given, the case is decided by row spaces; otherwise by counting.
pub fn classify_partial_quotient(
    k: &SimplicialComplex,
    lambda: &CharacteristicMatrix,
    n: usize,
    reference: Option<&CharacteristicMatrix>,
    bound: u32,
) -> Result<PartialQuotientVerdict, RegularityError> {
    let model = partial_quotient_model(k, lambda)?;
    let betti = model.cdga.betti_numbers(bound);
    let h_odd_vanishes = betti.iter().skip(1).step_by(2).all(|&b| b == 0);
    let l = lambda.l();
    let contains_reference = match reference {
        Some(r) => {
            let stacked = CharacteristicMatrix::new(lambda.rows().iter().chain(r.rows()).cloned().collect());
            lambda.rank() == stacked.rank()
        }
        None => lambda.rank() >= n.min(l),
    };
    let case = if contains_reference && l == n && lambda.rank() == n {
        ToricCase::ToricCase
    } else if contains_reference && l > n {
        ToricCase::ProperSubtorus
    } else {
        ToricCase::NotSubtorus
    };
    let poincare_obstruction = (l > n).then(|| {
        let p2 = reference
            .map(|r| partial_quotient_model(k, r).map(|m| m.cdga.betti_numbers(bound)))
            .transpose();
        let mut series: Vec<i128> = betti.iter().map(|&b| b as i128).collect();
        for _ in n..l {
            // Divide by (1 - t^2): running sum over even steps.
            for d in 2..series.len() {
                series[d] += series[d - 2];
            }
        }
        p2.map(|p2| PoincareObstruction {
            l,
            n,
            p1: betti.clone(),
            p2,
            p1_over_factor: series,
        })
    });
    let poincare_obstruction = poincare_obstruction.transpose()?;
    Ok(PartialQuotientVerdict {
        case,
        bound,
        betti,
        h_odd_vanishes,
        formalizable: h_odd_vanishes,
        poincare_obstruction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcalg::Generator;
    use crate::models::stanley_reisner_algebra;

    fn poly1() -> AlgebraPresentation {
        AlgebraPresentation::free(vec![Generator::new("t", 2)]).unwrap()
    }

    #[test]
    fn tor_examples() {
        let a = poly1();
        let regular = tor_table(&a, &[Form::linear(&[1], 0)], 6).unwrap();
        assert_eq!(regular.dims[0], vec![1, 0, 0, 0, 0, 0, 0]);
        assert!(regular.vanishes_through(1));
        let zero = tor_table(&a, &[Form::new(Polynomial::zero(), 2)], 6).unwrap();
        assert_eq!(zero.dims[1], vec![0, 0, 1, 0, 1, 0, 1]);
        let none = tor_table(&a, &[], 6).unwrap();
        assert_eq!(none.dims, vec![a.hilbert_series(6).coefficients]);
        assert_eq!(
            tor_table(&a, &[Form::new(Polynomial::zero(), 3)], 4).unwrap_err(),
            RegularityError::OddDegreeForm(0)
        );
    }

    #[test]
    fn regular_sequence_examples() {
        let tri = stanley_reisner_algebra(&SimplicialComplex::simplex_boundary(3));
        let forms = [Form::linear(&[1, 0, -1], 0), Form::linear(&[0, 1, -1], 0)];
        let report = is_regular_sequence(&tri, &forms, 8).unwrap();
        assert!(report.regular && report.certified);
        assert_eq!(report.quotient_top_degree, Some(4));
        assert!(hilbert_identity_check(&tri, &forms, 8));

        let sq = stanley_reisner_algebra(&SimplicialComplex::polygon(4));
        let report = is_regular_sequence(&sq, &[Form::linear(&[1, 1, 1, 1], 0)], 10).unwrap();
        assert!(report.regular);
        assert!(!report.certified, "quotient is infinite-dimensional");

        let report = is_regular_sequence(&sq, &[Form::linear(&[1, 1, 1, 1], 0), Form::new(Polynomial::zero(), 2)], 8).unwrap();
        assert!(!report.regular);
        assert_eq!(report.witness_degree, Some(2));
        assert!(!hilbert_identity_check(&sq, &[Form::new(Polynomial::zero(), 2)], 4));
        assert!(hilbert_identity_check(&sq, &[], 4));
    }

    #[test]
    fn certification_rejects_late_failures() {
        // Q[t, s]/(s t^2, s^2) with the form t: Tor^{-1} first appears in
        // degree 6, beyond (top degree of the quotient) + (form degree) = 4.
        let a = AlgebraPresentation::free(vec![Generator::new("t", 2), Generator::new("s", 2)]).unwrap();
        let rels = vec![a.parse("s*t^2").unwrap(), a.parse("s^2").unwrap()];
        let a = AlgebraPresentation::new(a.generators().to_vec(), rels).unwrap();
        let form = [Form::linear(&[1], 0)];
        let short = is_regular_sequence(&a, &form, 5).unwrap();
        assert!(short.regular && !short.certified);
        let long = is_regular_sequence(&a, &form, 8).unwrap();
        assert_eq!(long.witness_degree, Some(6));
    }

    #[test]
    fn top_degree_detection() {
        let s = HilbertSeries {
            coefficients: vec![1, 0, 2, 0, 1, 0, 0, 0],
        };
        assert_eq!(detect_top_degree(&s, 2), Some(4));
        let s = HilbertSeries {
            coefficients: vec![1, 0, 1, 0, 1],
        };
        assert_eq!(detect_top_degree(&s, 2), None);
    }
}
