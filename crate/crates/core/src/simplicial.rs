//! Finite simplicial complexes on the vertex set `1..=m`.
//!
//! Faces are bitmasks: bit `i - 1` stands for vertex `i`. The Hochster-style
//! reduced Betti numbers of full subcomplexes live here too; they are only
//! used as an independent check on moment-angle cohomology.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, rat, SparseMatrix};

pub type VertexSet = u64;

pub const MAX_VERTICES: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("vertex {0} appears in no facet")]
    GhostVertex(usize),
    #[error("facet {0} is contained in facet {1}")]
    NonMaximalFacet(usize, usize),
    #[error("complex has no facets")]
    EmptyComplex,
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("vertex {vertex} outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("{0} vertices exceed the supported maximum of 63")]
    TooManyVertices(usize),
    #[error("complex is not pure")]
    NotPure,
}

pub fn mask_of(vertices: &[usize]) -> VertexSet {
    vertices.iter().fold(0, |acc, &v| acc | (1u64 << (v - 1)))
}

pub fn vertices_of(mask: VertexSet) -> Vec<usize> {
    (0..64).filter(|i| mask & (1u64 << i) != 0).map(|i| i + 1).collect()
}

fn card(mask: VertexSet) -> usize {
    mask.count_ones() as usize
}

/// Orders vertex sets by size, then lexicographically by sorted vertex list.
fn face_order_key(mask: VertexSet) -> (usize, Vec<usize>) {
    (card(mask), vertices_of(mask))
}

/// Iterates over all subsets of `mask`, including the empty set and `mask`.
fn subsets(mask: VertexSet) -> impl Iterator<Item = VertexSet> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// JSON shape `{"m": 4, "facets": [[1,2],[2,3]]}` with 1-based labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

/// Equality ignores the order in which facets were listed.
#[derive(Debug, Clone, Eq)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
}

/// All faces of a complex, grouped by cardinality (index 0 holds the empty face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub by_size: Vec<Vec<VertexSet>>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.by_size.iter().flatten().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FhVector {
    /// `f[i]` counts faces of dimension `i` (the empty face is not listed).
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.facets.clone();
        let mut b = other.facets.clone();
        a.sort_unstable();
        b.sort_unstable();
        self.m == other.m && a == b
    }
}

impl SimplicialComplex {
    pub fn new(m: usize, facets: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        if m > MAX_VERTICES {
            return Err(SimplicialError::TooManyVertices(m));
        }
        let mut masks = Vec::with_capacity(facets.len());
        for (i, f) in facets.iter().enumerate() {
            if f.is_empty() {
                return Err(SimplicialError::EmptyFacet(i));
            }
            for &v in f {
                if v == 0 || v > m {
                    return Err(SimplicialError::VertexOutOfRange { vertex: v, m });
                }
            }
            masks.push(mask_of(f));
        }
        let k = SimplicialComplex { m, facets: masks };
        k.validate()?;
        Ok(k)
    }

    pub fn from_masks(m: usize, facets: Vec<VertexSet>) -> Result<Self, SimplicialError> {
        if m > MAX_VERTICES {
            return Err(SimplicialError::TooManyVertices(m));
        }
        let k = SimplicialComplex { m, facets };
        k.validate()?;
        Ok(k)
    }

    pub fn from_json_str(s: &str) -> Result<Self, crate::Error> {
        let file: ComplexFile = serde_json::from_str(s)?;
        Ok(Self::new(file.m, &file.facets)?)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            m: self.m,
            facets: self.facets.iter().map(|&f| vertices_of(f)).collect(),
        }
    }

    /// The full simplex on `m` vertices.
    pub fn simplex(m: usize) -> Self {
        Self::from_masks(m, vec![(1u64 << m) - 1]).expect("simplex is valid")
    }

    /// The boundary of the simplex on `m >= 2` vertices (a sphere of dimension `m - 2`).
    pub fn simplex_boundary(m: usize) -> Self {
        let full = (1u64 << m) - 1;
        let facets = (0..m).map(|i| full & !(1u64 << i)).collect();
        Self::from_masks(m, facets).expect("simplex boundary is valid")
    }

    /// `m` isolated points.
    pub fn points(m: usize) -> Self {
        Self::from_masks(m, (0..m).map(|i| 1u64 << i).collect()).expect("points are valid")
    }

    /// The boundary of an `m`-gon, `m >= 4` gives a flag circle.
    pub fn polygon(m: usize) -> Self {
        let facets = (0..m).map(|i| (1u64 << i) | (1u64 << ((i + 1) % m))).collect();
        Self::from_masks(m, facets).expect("polygon is valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| vertices_of(f)).collect()
    }

    pub fn validate(&self) -> Result<(), SimplicialError> {
        if self.facets.is_empty() {
            return Err(SimplicialError::EmptyComplex);
        }
        for (i, &f) in self.facets.iter().enumerate() {
            if f == 0 {
                return Err(SimplicialError::EmptyFacet(i));
            }
            if self.m < 64 && f >> self.m != 0 {
                return Err(SimplicialError::VertexOutOfRange {
                    vertex: 64 - f.leading_zeros() as usize,
                    m: self.m,
                });
            }
        }
        for (i, &a) in self.facets.iter().enumerate() {
            for (j, &b) in self.facets.iter().enumerate() {
                if i != j && a & b == a {
                    return Err(SimplicialError::NonMaximalFacet(i, j));
                }
            }
        }
        let covered = self.facets.iter().fold(0u64, |acc, f| acc | f);
        for v in 1..=self.m {
            if covered & (1u64 << (v - 1)) == 0 {
                return Err(SimplicialError::GhostVertex(v));
            }
        }
        Ok(())
    }

    pub fn is_face(&self, sigma: VertexSet) -> bool {
        self.facets.iter().any(|&f| f & sigma == sigma)
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(|&f| card(f)).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = card(self.facets[0]);
        self.facets.iter().all(|&f| card(f) == d)
    }

    pub fn faces(&self) -> FaceSet {
        let mut all = BTreeSet::new();
        for &f in &self.facets {
            all.extend(subsets(f));
        }
        let top = self.dimension() + 1;
        let mut by_size = vec![Vec::new(); top + 1];
        for f in all {
            by_size[card(f)].push(f);
        }
        for level in &mut by_size {
            level.sort_by_key(|&f| face_order_key(f));
        }
        FaceSet { by_size }
    }

    /// The inclusion-minimal non-faces, i.e. the generators of the
    /// Stanley–Reisner ideal. Sorted by size, then lexicographically.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let faces = self.faces();
        let face_set: BTreeSet<VertexSet> = faces.iter().collect();
        let mut out = Vec::new();
        // A minimal non-face of size k has every (k-1)-subset a face, so it is a
        // face of size k-1 plus one vertex.
        for k in 1..=(self.dimension() + 2).min(self.m) {
            let mut candidates = BTreeSet::new();
            for &f in &faces.by_size[k - 1] {
                for v in 0..self.m {
                    let bit = 1u64 << v;
                    if f & bit == 0 {
                        candidates.insert(f | bit);
                    }
                }
            }
            for c in candidates {
                if face_set.contains(&c) {
                    continue;
                }
                let boundary_ok = vertices_of(c)
                    .iter()
                    .all(|&v| face_set.contains(&(c & !(1u64 << (v - 1)))));
                if boundary_ok {
                    out.push(c);
                }
            }
        }
        out.sort_by_key(|&c| face_order_key(c));
        out
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.m == other.m && self.facets.iter().all(|&f| other.is_face(f))
    }

    pub fn fh_vector(&self) -> Result<FhVector, SimplicialError> {
        if !self.is_pure() {
            return Err(SimplicialError::NotPure);
        }
        let faces = self.faces();
        let d = faces.by_size.len() - 1;
        // fs[i] = number of faces with i vertices, fs[0] = 1 for the empty face.
        let fs: Vec<i64> = faces.by_size.iter().map(|l| l.len() as i64).collect();
        let mut h: Vec<i64> = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - i, k - i) * fs[i]
                    })
                    .sum()
            })
            .collect();
        // Trailing zeros carry no information (a simplex has h = (1)).
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        Ok(FhVector {
            f: fs[1..].iter().map(|&x| x as u64).collect(),
            h,
        })
    }

    /// Reduced rational cohomology of the full subcomplex on `j`. Entry `i`
    /// is the dimension in degree `i - 1`, so the empty complex gives `[1]`.
    pub fn full_subcomplex_reduced_betti(&self, j: VertexSet) -> Vec<usize> {
        let faces = self.faces();
        let by_size: Vec<Vec<VertexSet>> = faces
            .by_size
            .iter()
            .map(|l| l.iter().copied().filter(|&f| f & j == f).collect())
            .collect::<Vec<_>>()
            .into_iter()
            .take_while(|l: &Vec<VertexSet>| !l.is_empty())
            .collect();
        // boundary ranks: ranks[s] = rank of the map from size-s faces to size-(s-1) faces.
        let mut ranks = vec![0usize; by_size.len() + 1];
        for s in 1..by_size.len() {
            let rows = &by_size[s - 1];
            let cols = &by_size[s];
            let triplets = cols.iter().enumerate().flat_map(|(c, &face)| {
                vertices_of(face)
                    .into_iter()
                    .enumerate()
                    .map(move |(pos, v)| {
                        let sub = face & !(1u64 << (v - 1));
                        let r = rows.binary_search_by_key(&face_order_key(sub), |&f| face_order_key(f))
                            .expect("faces are closed under subsets");
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        (r, c, rat(sign))
                    })
            });
            let mat = SparseMatrix::from_triplets(rows.len(), cols.len(), triplets);
            ranks[s] = linalg::rank(&mat);
        }
        (0..by_size.len())
            .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
            .collect()
    }

    /// Betti numbers of the moment-angle complex through Hochster's
    /// decomposition, `b_d = sum_J b~^{d-|J|-1}(K_J)`, for `d <= max_degree`.
    pub fn hochster_betti(&self, max_degree: usize) -> Vec<usize> {
        let mut out = vec![0usize; max_degree + 1];
        let full = if self.m == 64 { u64::MAX } else { (1u64 << self.m) - 1 };
        for j in subsets(full) {
            let reduced = self.full_subcomplex_reduced_betti(j);
            for (i, &b) in reduced.iter().enumerate() {
                // i indexes reduced degree i - 1, so total degree is i + |J|.
                let d = i + card(j);
                if b > 0 && d <= max_degree {
                    out[d] += b;
                }
            }
        }
        out
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}
