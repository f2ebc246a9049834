//! Fans, characteristic matrices, and the Koszul-type models of toric
//! manifolds and their partial quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdga::{BettiTable, Cdga};
use crate::gcalg::{AlgebraPresentation, Generator, Polynomial};
use crate::linalg::{self, SparseMatrix};
use crate::models::stanley_reisner_algebra;
use crate::regularity::{is_regular_sequence, quotient_by_forms, Form, RegularityReport};
use crate::simplicial::{SimplicialComplex, SimplicialError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("ray {ray} has {got} coordinates, expected {expected}")]
    RayDimension { ray: usize, expected: usize, got: usize },
    #[error("cone {cone} refers to ray {index}, which does not exist")]
    ConeIndex { cone: usize, index: usize },
    #[error("cone {0} is not simplicial (its rays are linearly dependent)")]
    NotSimplicial(usize),
    #[error("cone {0} is not smooth (its rays do not extend to a lattice basis)")]
    NotSmooth(usize),
    #[error("the linear forms are not a regular sequence (Tor^-1 nonzero in degree {witness})")]
    NotRegular { witness: u32 },
    #[error("characteristic matrix has a row of length {got}, expected {expected} columns")]
    ColumnMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// A fan by its rays in `Z^n` and maximal cones (1-based ray indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub n: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(n: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self, ToricError> {
        let fan = Fan { n, rays, max_cones };
        fan.validate()?;
        Ok(fan)
    }

    pub fn from_json_str(s: &str) -> Result<Self, crate::Error> {
        let fan: Fan = serde_json::from_str(s)?;
        fan.validate()?;
        Ok(fan)
    }

    pub fn validate(&self) -> Result<(), ToricError> {
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.n {
                return Err(ToricError::RayDimension {
                    ray: i + 1,
                    expected: self.n,
                    got: r.len(),
                });
            }
        }
        for (c, cone) in self.max_cones.iter().enumerate() {
            if let Some(&index) = cone.iter().find(|&&i| i == 0 || i > self.rays.len()) {
                return Err(ToricError::ConeIndex { cone: c + 1, index });
            }
        }
        fan_to_complex(self)?;
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.rays.len()
    }

    /// The fan of `CP^n`: rays `e_1..e_n, -(e_1+..+e_n)`, cones all n-subsets.
    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; n]);
        let max_cones = (1..=n + 1)
            .map(|skip| (1..=n + 1).filter(|&v| v != skip).collect())
            .collect();
        Fan { n, rays, max_cones }
    }

    /// The Hirzebruch surface with rays `(1,0), (0,1), (-1,a), (0,-1)`.
    pub fn hirzebruch(a: i64) -> Self {
        Fan {
            n: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            max_cones: vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]],
        }
    }

    /// Product fan: rays of `self` padded with zeros, then rays of `other`.
    pub fn product(&self, other: &Fan) -> Self {
        let n = self.n + other.n;
        let mut rays: Vec<Vec<i64>> = self
            .rays
            .iter()
            .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, other.n)).collect())
            .collect();
        rays.extend(
            other
                .rays
                .iter()
                .map(|r| std::iter::repeat_n(0, self.n).chain(r.iter().copied()).collect()),
        );
        let shift = self.m();
        let mut max_cones = Vec::new();
        for a in &self.max_cones {
            for b in &other.max_cones {
                max_cones.push(a.iter().copied().chain(b.iter().map(|&i| i + shift)).collect());
            }
        }
        Fan { n, rays, max_cones }
    }

    /// Checks that every maximal cone is generated by part of a lattice basis.
    pub fn check_smooth(&self) -> Result<(), ToricError> {
        for (c, cone) in self.max_cones.iter().enumerate() {
            let rows: Vec<Vec<i64>> = cone.iter().map(|&i| self.rays[i - 1].clone()).collect();
            let g = maximal_minor_gcd(&rows, self.n);
            if g.is_zero() {
                return Err(ToricError::NotSimplicial(c + 1));
            }
            if !g.is_one() {
                return Err(ToricError::NotSmooth(c + 1));
            }
        }
        Ok(())
    }
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// gcd of all maximal minors of a `k x n` integer matrix (`k <= n`); zero
/// when the rows are dependent.
fn maximal_minor_gcd(rows: &[Vec<i64>], n: usize) -> BigInt {
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    if k > n {
        return BigInt::zero();
    }
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| BigInt::from(r[c])).collect())
            .collect();
        g = g.gcd(&determinant(minor).abs());
        // Next k-subset of 0..n in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return g;
            }
            i -= 1;
            if cols[i] < n - k + i {
                break;
            }
        }
        cols[i] += 1;
        for j in i + 1..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// The simplicial complex of the fan: faces are ray sets spanning cones.
pub fn fan_to_complex(fan: &Fan) -> Result<SimplicialComplex, ToricError> {
    for (c, cone) in fan.max_cones.iter().enumerate() {
        let rows: Vec<Vec<i64>> = cone.iter().map(|&i| fan.rays[i - 1].clone()).collect();
        if maximal_minor_gcd(&rows, fan.n).is_zero() {
            return Err(ToricError::NotSimplicial(c + 1));
        }
    }
    Ok(SimplicialComplex::new(fan.m(), &fan.max_cones)?)
}

/// The `n x m` matrix with `Λ_ij = (v_j)_i`.
pub fn fan_to_characteristic(fan: &Fan) -> CharacteristicMatrix {
    CharacteristicMatrix::new(
        (0..fan.n)
            .map(|i| fan.rays.iter().map(|r| r[i]).collect())
            .collect(),
    )
}

/// Integer matrix whose rows are the linear forms `λ_i = sum_j Λ_ij t_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicMatrix {
    rows: Vec<Vec<i64>>,
}

impl CharacteristicMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Self {
        CharacteristicMatrix { rows }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn from_json_str(s: &str) -> Result<Self, crate::Error> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn l(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&SparseMatrix::from_i64(&self.rows))
    }

    /// The matrix with row `i` removed.
    pub fn without_row(&self, i: usize) -> Self {
        let mut rows = self.rows.clone();
        rows.remove(i);
        Self::new(rows)
    }

    /// The matrix with `extra` appended as a new row.
    pub fn with_row(&self, extra: Vec<i64>) -> Self {
        let mut rows = self.rows.clone();
        rows.push(extra);
        Self::new(rows)
    }

    pub fn check_columns(&self, m: usize) -> Result<(), ToricError> {
        match self.rows.iter().find(|r| r.len() != m) {
            Some(r) => Err(ToricError::ColumnMismatch {
                expected: m,
                got: r.len(),
            }),
            None => Ok(()),
        }
    }

    /// The forms `λ_i` over generators `t_j` stored at `offset + j`.
    pub fn forms(&self, offset: usize) -> Vec<Form> {
        self.rows.iter().map(|r| Form::linear(r, offset)).collect()
    }
}

/// The model `∧(x_1..x_l) ⊗ SR(K)` with `d x_i = λ_i`, with the matrix it came from.
#[derive(Debug, Clone)]
pub struct ToricModel {
    pub cdga: Cdga,
    pub matrix: CharacteristicMatrix,
}

pub fn partial_quotient_model(k: &SimplicialComplex, lambda: &CharacteristicMatrix) -> Result<ToricModel, ToricError> {
    let m = k.m();
    lambda.check_columns(m)?;
    let l = lambda.l();
    let sr = stanley_reisner_algebra(k);
    let mut generators: Vec<Generator> = (1..=l).map(|i| Generator::new(format!("x{i}"), 1)).collect();
    generators.extend(sr.generators().iter().cloned());
    let shift: Vec<usize> = (0..m).map(|j| l + j).collect();
    let relations = sr.relations().iter().map(|r| r.reindexed(&shift)).collect();
    let mut differential: Vec<Polynomial> = lambda.forms(l).into_iter().map(|f| f.polynomial).collect();
    differential.extend((0..m).map(|_| Polynomial::zero()));
    let algebra = AlgebraPresentation::new(generators, relations).expect("valid presentation");
    let cdga = Cdga::new(algebra, differential).expect("linear forms in t are cocycles");
    Ok(ToricModel {
        cdga,
        matrix: lambda.clone(),
    })
}

/// `SR(K)/(λ_1..λ_n)` for a smooth fan, with its Betti numbers through `2n`.
#[derive(Debug, Clone)]
pub struct ToricCohomology {
    pub ring: AlgebraPresentation,
    pub betti: BettiTable,
    pub regularity: RegularityReport,
}

/// Default bound `2n + 2` for toric checks: past the top degree, so odd
/// vanishing is checked all the way through.
pub fn toric_check_bound(n: usize) -> u32 {
    2 * n as u32 + 2
}

pub fn toric_cohomology_ring(fan: &Fan) -> Result<ToricCohomology, ToricError> {
    fan.validate()?;
    fan.check_smooth()?;
    let k = fan_to_complex(fan)?;
    let sr = stanley_reisner_algebra(&k);
    let forms = fan_to_characteristic(fan).forms(0);
    let regularity = is_regular_sequence(&sr, &forms, toric_check_bound(fan.n)).expect("linear forms have degree 2");
    if let Some(witness) = regularity.witness_degree {
        return Err(ToricError::NotRegular { witness });
    }
    let ring = quotient_by_forms(&sr, &forms);
    let betti = BettiTable::from_dims(ring.hilbert_series(2 * fan.n as u32).coefficients);
    Ok(ToricCohomology { ring, betti, regularity })
}

/// The map `C' -> SR(K)/(λ)` with `x_i -> 0`, `t_j -> t_j`.
pub fn formality_map(model: &ToricModel) -> Vec<Polynomial> {
    let l = model.matrix.l();
    let m = model.cdga.algebra().generators().len() - l;
    let mut f = vec![Polynomial::zero(); l];
    f.extend((0..m).map(Polynomial::generator));
    f
}
