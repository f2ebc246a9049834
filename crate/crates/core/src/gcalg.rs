//! Finitely presented graded-commutative algebras over Q.
//!
//! A presentation is a free graded-commutative algebra (polynomial on even
//! generators, exterior on odd ones) modulo homogeneous relations. Every
//! question about the quotient is answered one degree at a time: the degree-d
//! piece of the ideal is spanned by `monomial * relation` products and reduced
//! by exact elimination, so there are no Gröbner bases anywhere.
//!
//! Monomials are ordered lexicographically on exponent vectors, largest
//! first, so `t1^2 > t1*t2 > t2^2`. Elimination pivots on the largest
//! monomial of each ideal vector; the surviving (standard) monomials form the
//! quotient basis.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{EchelonBasis, Rational, SparseVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator {0} has degree 0; degrees must be positive")]
    ZeroDegree(String),
    #[error("duplicate generator name {0}")]
    DuplicateGenerator(String),
    #[error("relation {index} is not homogeneous")]
    NonHomogeneous { index: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("cannot parse polynomial {input:?} at offset {offset}: {message}")]
    Parse {
        input: String,
        offset: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    /// Odd generators are exterior and square to zero.
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A monomial as a sorted list of `(generator index, exponent)` with positive
/// exponents. Ordering is lexicographic on the dense exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Monomial(vec![(index as u32, 1)])
    }

    pub fn from_exponents(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (g, e) in pairs {
            if e > 0 {
                *map.entry(g as u32).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(g, e)| (g as usize, e))
    }

    pub fn exponent(&self, g: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(i, _)| i as usize == g)
            .map_or(0, |&(_, e)| e)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// True when `self` divides `other` exponent-wise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(g, e)| other.exponent(g as usize) >= e)
    }

    /// Splits off the factors with index `< g`, the power of `g`, and the rest.
    pub(crate) fn split_at(&self, g: usize) -> (Monomial, u32, Monomial) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut power = 0;
        for &(i, e) in &self.0 {
            match (i as usize).cmp(&g) {
                Ordering::Less => left.push((i, e)),
                Ordering::Equal => power = e,
                Ordering::Greater => right.push((i, e)),
            }
        }
        (Monomial(left), power, Monomial(right))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(ga, ea)), Some(&(gb, eb))) => {
                    if ga != gb {
                        // The one with the earlier generator has a positive entry
                        // where the other has zero.
                        return if ga < gb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A rational linear combination of monomials with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial(BTreeMap<Monomial, Rational>);

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::term(Monomial::one(), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(index: usize) -> Self {
        Self::term(Monomial::generator(index), Rational::one())
    }

    /// `sum_j coeffs[j] * generators[j]`.
    pub fn linear(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut p = Self::zero();
        for (g, c) in terms {
            p.add_term(Monomial::generator(g), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(cur) => {
                *cur += c;
                if cur.is_zero() {
                    self.0.remove(&m);
                }
            }
            None => {
                self.0.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        for (m, v) in &other.0 {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_scaled(self, c);
        p
    }

    pub fn neg(&self) -> Polynomial {
        self.scaled(&-Rational::one())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_scaled(other, &-Rational::one());
        p
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_scaled(other, &Rational::one());
        p
    }

    /// Keeps only the terms of the given word length.
    pub fn word_length_part(&self, len: u32) -> Polynomial {
        Polynomial(
            self.0
                .iter()
                .filter(|(m, _)| m.word_length() == len)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Moves every generator index `i` to `map[i]`. The map must be strictly
    /// increasing so monomial ordering and signs are preserved.
    pub fn reindexed(&self, map: &[usize]) -> Polynomial {
        debug_assert!(map.windows(2).all(|w| w[0] < w[1]));
        Polynomial(
            self.0
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial(m.0.iter().map(|&(g, e)| (map[g as usize] as u32, e)).collect()),
                        c.clone(),
                    )
                })
                .collect(),
        )
    }
}

/// Dimensions per degree `0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub coefficients: Vec<usize>,
}

impl HilbertSeries {
    pub fn bound(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// Divisibility of sparse exponent lists sorted by generator.
fn divides_sorted(a: &[(u32, u32)], b: &[(u32, u32)]) -> bool {
    let mut j = 0;
    for &(g, e) in a {
        while j < b.len() && b[j].0 < g {
            j += 1;
        }
        if j == b.len() || b[j].0 != g || b[j].1 < e {
            return false;
        }
    }
    true
}

/// The degree-d slice of a quotient: the monomials considered, how the ideal
/// cuts them down, and which monomials survive as basis elements. For
/// monomial ideals only the standard monomials are enumerated.
#[derive(Debug)]
pub struct DegreePiece {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: IdealSpan,
    basis: Vec<usize>,
    coord: Vec<Option<usize>>,
}

#[derive(Debug)]
enum IdealSpan {
    /// Monomial ideal: every enumerated monomial is standard, and anything
    /// missing from the index lies in the ideal.
    Monomial,
    General(EchelonBasis),
}

impl DegreePiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomial(&self, i: usize) -> &Monomial {
        &self.monomials[self.basis[i]]
    }

    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|&i| &self.monomials[i])
    }

    /// Coordinates in the quotient basis of a free-algebra polynomial all of
    /// whose terms have this degree.
    fn coords(&self, p: &Polynomial) -> SparseVector {
        let mut v = SparseVector::new();
        for (m, c) in p.terms() {
            match self.index.get(m) {
                Some(&i) => {
                    v.insert(i, c.clone());
                }
                None => assert!(
                    matches!(self.ideal, IdealSpan::Monomial),
                    "monomial of wrong degree in degree-{} piece",
                    self.degree
                ),
            }
        }
        let reduced = match &self.ideal {
            IdealSpan::Monomial => v,
            IdealSpan::General(ech) => ech.reduce(v),
        };
        reduced
            .into_iter()
            .map(|(i, c)| (self.coord[i].expect("standard monomial after reduction"), c))
            .collect()
    }

    fn from_coords(&self, v: &SparseVector) -> Polynomial {
        let mut p = Polynomial::zero();
        for (&i, c) in v {
            p.add_term(self.monomials[self.basis[i]].clone(), c.clone());
        }
        p
    }
}

#[derive(Default)]
struct DegreeCache(RwLock<HashMap<u32, Arc<DegreePiece>>>);

impl fmt::Debug for DegreeCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.read().map(|m| m.len()).unwrap_or(0);
        write!(f, "DegreeCache({n} degrees)")
    }
}

/// A free graded-commutative algebra on `generators` modulo the ideal
/// generated by `relations`.
#[derive(Debug)]
pub struct AlgebraPresentation {
    generators: Vec<Generator>,
    relations: Vec<Polynomial>,
    relation_degrees: Vec<u32>,
    monomial_ideal: bool,
    cache: DegreeCache,
}

impl Clone for AlgebraPresentation {
    fn clone(&self) -> Self {
        AlgebraPresentation {
            generators: self.generators.clone(),
            relations: self.relations.clone(),
            relation_degrees: self.relation_degrees.clone(),
            monomial_ideal: self.monomial_ideal,
            cache: DegreeCache::default(),
        }
    }
}

impl PartialEq for AlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

impl AlgebraPresentation {
    pub fn new(generators: Vec<Generator>, relations: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        let mut seen = HashMap::new();
        for g in &generators {
            if g.degree == 0 {
                return Err(AlgebraError::ZeroDegree(g.name.clone()));
            }
            if seen.insert(g.name.clone(), ()).is_some() {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut alg = AlgebraPresentation {
            generators,
            relations: Vec::new(),
            relation_degrees: Vec::new(),
            monomial_ideal: true,
            cache: DegreeCache::default(),
        };
        let mut kept = Vec::new();
        for (index, r) in relations.into_iter().enumerate() {
            let r = alg.clean(&r);
            if r.is_zero() {
                continue;
            }
            let degree = alg
                .homogeneous_degree(&r)
                .ok_or(AlgebraError::NonHomogeneous { index })?;
            alg.relation_degrees.push(degree);
            kept.push(r);
        }
        alg.monomial_ideal = kept.iter().all(|r| r.len() == 1);
        alg.relations = kept;
        Ok(alg)
    }

    /// The free algebra on `generators`.
    pub fn free(generators: Vec<Generator>) -> Result<Self, AlgebraError> {
        Self::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[u32] {
        &self.relation_degrees
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn is_odd(&self, g: usize) -> bool {
        self.generators[g].is_odd()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.exponents()
            .map(|(g, e)| self.generators[g].degree * e)
            .sum()
    }

    /// Common degree of all terms, `None` when mixed. The zero polynomial is
    /// reported as degree 0.
    pub fn homogeneous_degree(&self, p: &Polynomial) -> Option<u32> {
        let mut degrees = p.terms().map(|(m, _)| self.monomial_degree(m));
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    /// Drops terms in which an odd generator appears more than once.
    fn clean(&self, p: &Polynomial) -> Polynomial {
        Polynomial(
            p.0.iter()
                .filter(|(m, _)| m.exponents().all(|(g, e)| e <= 1 || !self.is_odd(g)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Product of monomials in the free algebra. `None` when an odd generator
    /// would repeat; otherwise the sign from moving odd factors into order.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut swaps = 0usize;
        let mut odd_a_after = 0usize;
        // Count pairs (i in a, j in b) of odd generators with i > j.
        let odd_a: Vec<u32> = a.0.iter().filter(|(g, _)| self.is_odd(*g as usize)).map(|(g, _)| *g).collect();
        for &(g, _) in &b.0 {
            if self.is_odd(g as usize) {
                if odd_a.binary_search(&g).is_ok() {
                    return None;
                }
                while odd_a_after < odd_a.len() && odd_a[odd_a_after] <= g {
                    odd_a_after += 1;
                }
                swaps += odd_a.len() - odd_a_after;
            }
        }
        let mut merged = Vec::with_capacity(a.0.len() + b.0.len());
        let (mut i, mut j) = (0, 0);
        while i < a.0.len() || j < b.0.len() {
            match (a.0.get(i), b.0.get(j)) {
                (Some(&x), Some(&y)) if x.0 == y.0 => {
                    merged.push((x.0, x.1 + y.1));
                    i += 1;
                    j += 1;
                }
                (Some(&x), Some(&y)) if x.0 < y.0 => {
                    merged.push(x);
                    i += 1;
                }
                (Some(_), Some(&y)) => {
                    merged.push(y);
                    j += 1;
                }
                (Some(&x), None) => {
                    merged.push(x);
                    i += 1;
                }
                (None, Some(&y)) => {
                    merged.push(y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some((swaps % 2 == 1, Monomial(merged)))
    }

    /// Product in the free algebra (no reduction modulo relations).
    pub fn free_mul(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in p.terms() {
            for (b, cb) in q.terms() {
                if let Some((neg, m)) = self.mul_monomials(a, b) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Product reduced to normal form in the quotient.
    pub fn multiply(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        self.reduce(&self.free_mul(p, q))
    }

    /// `p^e` in the free algebra.
    pub fn free_pow(&self, p: &Polynomial, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| self.free_mul(&acc, p))
    }

    /// All monomials of degree `d` in the free algebra, largest first.
    pub fn enumerate_monomials(&self, d: u32) -> Vec<Monomial> {
        self.enumerate_avoiding(d, &[])
    }

    /// Degree-`d` monomials divisible by none of `avoid`, largest first.
    fn enumerate_avoiding(&self, d: u32, avoid: &[&Monomial]) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.enumerate_rec(0, d, avoid, &mut current, &mut out);
        out
    }

    fn enumerate_rec(
        &self,
        g: usize,
        remaining: u32,
        avoid: &[&Monomial],
        current: &mut Vec<(u32, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
            return;
        }
        if g == self.generators.len() {
            return;
        }
        let deg = self.generators[g].degree;
        let max_e = if self.generators[g].is_odd() { 1 } else { remaining / deg };
        let max_e = max_e.min(remaining / deg);
        for e in (1..=max_e).rev() {
            current.push((g as u32, e));
            if avoid.iter().any(|a| divides_sorted(&a.0, current)) {
                current.pop();
                continue;
            }
            self.enumerate_rec(g + 1, remaining - e * deg, avoid, current, out);
            current.pop();
        }
        self.enumerate_rec(g + 1, remaining, avoid, current, out);
    }

    /// The degree-`d` piece, computed once and cached.
    pub fn piece(&self, d: u32) -> Arc<DegreePiece> {
        if let Some(p) = self.cache.0.read().expect("cache lock").get(&d) {
            return Arc::clone(p);
        }
        let piece = Arc::new(self.compute_piece(d));
        let mut cache = self.cache.0.write().expect("cache lock");
        Arc::clone(cache.entry(d).or_insert(piece))
    }

    fn compute_piece(&self, d: u32) -> DegreePiece {
        let monomial_gens: Vec<&Monomial> = if self.monomial_ideal {
            self.relations.iter().map(|r| r.terms().next().expect("nonzero").0).collect()
        } else {
            Vec::new()
        };
        let monomials = self.enumerate_avoiding(d, &monomial_gens);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let ideal = if self.monomial_ideal {
            IdealSpan::Monomial
        } else {
            let mut ech = EchelonBasis::new();
            for (r, &rd) in self.relations.iter().zip(&self.relation_degrees) {
                if rd > d {
                    continue;
                }
                for mu in self.enumerate_monomials(d - rd) {
                    let prod = self.free_mul(&Polynomial::term(mu, Rational::one()), r);
                    if prod.is_zero() {
                        continue;
                    }
                    let v: SparseVector = prod.terms().map(|(m, c)| (index[m], c.clone())).collect();
                    ech.insert(v);
                }
            }
            IdealSpan::General(ech)
        };
        let basis: Vec<usize> = (0..monomials.len())
            .filter(|&i| match &ideal {
                IdealSpan::Monomial => true,
                IdealSpan::General(ech) => !ech.is_pivot(i),
            })
            .collect();
        let mut coord = vec![None; monomials.len()];
        for (pos, &i) in basis.iter().enumerate() {
            coord[i] = Some(pos);
        }
        DegreePiece {
            degree: d,
            monomials,
            index,
            ideal,
            basis,
            coord,
        }
    }

    pub fn dim(&self, d: u32) -> usize {
        self.piece(d).dim()
    }

    /// Standard monomials spanning the degree-`d` piece of the quotient.
    pub fn quotient_basis(&self, d: u32) -> Vec<Monomial> {
        self.piece(d).basis_monomials().cloned().collect()
    }

    pub fn hilbert_series(&self, n: u32) -> HilbertSeries {
        HilbertSeries {
            coefficients: (0..=n).map(|d| self.dim(d)).collect(),
        }
    }

    /// Splits a polynomial into its homogeneous components.
    pub fn homogeneous_parts(&self, p: &Polynomial) -> BTreeMap<u32, Polynomial> {
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in p.terms() {
            parts
                .entry(self.monomial_degree(m))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        parts
    }

    /// Coordinates of a degree-`d` polynomial in the quotient basis of degree `d`.
    pub fn coords(&self, p: &Polynomial, d: u32) -> SparseVector {
        let p = self.clean(p);
        if p.is_zero() {
            return SparseVector::new();
        }
        self.piece(d).coords(&p)
    }

    pub fn from_coords(&self, d: u32, v: &SparseVector) -> Polynomial {
        self.piece(d).from_coords(v)
    }

    /// Normal form: a combination of standard monomials equal to `p` in the quotient.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (d, part) in self.homogeneous_parts(&self.clean(p)) {
            let piece = self.piece(d);
            out.add_scaled(&piece.from_coords(&piece.coords(&part)), &Rational::one());
        }
        out
    }

    pub fn is_zero_in_quotient(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    /// Parses e.g. `"t1^2 - 3/2*x1*t2 + 4"` against this algebra's generator names.
    pub fn parse(&self, s: &str) -> Result<Polynomial, AlgebraError> {
        let p = parse_polynomial(s, &|name| self.generator_index(name).map(|g| (g, self.is_odd(g))))?;
        Ok(self.clean(&p))
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, &|g| self.generators[g].name.clone())
    }
}

/// Tensor product by disjoint union of generators: each factor's generators
/// get `suffix` appended and its relations are imported verbatim.
pub fn tensor(factors: &[(&AlgebraPresentation, &str)]) -> Result<AlgebraPresentation, AlgebraError> {
    let mut gens = Vec::new();
    let mut rels = Vec::new();
    for (alg, suffix) in factors {
        let offset = gens.len();
        gens.extend(
            alg.generators()
                .iter()
                .map(|g| Generator::new(format!("{}{}", g.name, suffix), g.degree)),
        );
        let map: Vec<usize> = (0..alg.generators().len()).map(|i| i + offset).collect();
        rels.extend(alg.relations().iter().map(|r| r.reindexed(&map)));
    }
    AlgebraPresentation::new(gens, rels)
}

pub fn format_polynomial(p: &Polynomial, name: &dyn Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let factors: Vec<String> = m
            .exponents()
            .map(|(g, e)| if e == 1 { name(g) } else { format!("{}^{}", name(g), e) })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Grammar: `poly := term (('+'|'-') term)*`, `term := [coef] factor ('*' factor)*`,
/// `factor := name ['^' int] | coef`, `coef := int ['/' int]`.
/// `lookup` maps a name to its generator index and parity; factors written
/// out of index order are sorted with the Koszul sign.
pub fn parse_polynomial(s: &str, lookup: &dyn Fn(&str) -> Option<(usize, bool)>) -> Result<Polynomial, AlgebraError> {
    Parser { src: s, pos: 0, lookup }.polynomial()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    lookup: &'a dyn Fn(&str) -> Option<(usize, bool)>,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            input: self.src.to_string(),
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt, AlgebraError> {
        self.peek();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.err("expected integer"));
        }
        Ok(digits.parse().expect("digits parse"))
    }

    fn polynomial(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut p = Polynomial::zero();
        let mut sign = Rational::one();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some('+') => self.pos += 1,
            None => return Err(self.err("empty polynomial")),
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, c * &sign);
            match self.peek() {
                None => return Ok(p),
                Some('+') => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), AlgebraError> {
        let mut coeff = Rational::one();
        let mut exps: Vec<(usize, u32, bool)> = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    let mut value = Rational::from_integer(n);
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        let d = self.integer()?;
                        if d.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        value /= Rational::from_integer(d);
                    }
                    coeff *= value;
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let name = self
                        .take_while(|c| c.is_alphanumeric() || c == '_' || c == '\'')
                        .to_string();
                    let (g, odd) = (self.lookup)(&name).ok_or_else(|| AlgebraError::UnknownGenerator(name.clone()))?;
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let n = self.integer()?;
                        e = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    }
                    exps.push((g, e, odd));
                }
                _ => return Err(self.err("expected coefficient or generator")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let mut sign = false;
        for i in 0..exps.len() {
            for j in i + 1..exps.len() {
                let (gi, ei, oi) = exps[i];
                let (gj, ej, oj) = exps[j];
                if gi > gj && oi && oj {
                    sign ^= (ei * ej) % 2 == 1;
                }
            }
        }
        let m = Monomial::from_exponents(exps.iter().map(|&(g, e, _)| (g, e)));
        Ok((m, if sign { -coeff } else { coeff }))
    }
}
