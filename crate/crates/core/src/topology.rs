//! Simplicial complexes given by facets, exact reduced homology and the
//! link-based Cohen-Macaulay test.
//!
//! All linear algebra is exact: Gaussian elimination over `GF(p)` or over
//! the rationals with arbitrary-precision fractions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Sorted set of vertices.
pub type Face = Vec<usize>;

/// Coefficient field for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Field {
    /// `GF(p)`, `p` prime.
    Prime(u64),
    Rational,
}

impl Field {
    pub const GF2: Field = Field::Prime(2);
    pub const GF3: Field = Field::Prime(3);

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    fn validate(self) -> Result<Self> {
        match self {
            Field::Prime(p) => Field::prime(p),
            Field::Rational => Ok(self),
        }
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::GF2
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "gf{p}"),
            Field::Rational => write!(f, "rat"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "rat" || lower == "qq" {
            return Ok(Field::Rational);
        }
        let p = lower
            .strip_prefix("gf")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| Error::UnknownField(s.to_string()))?;
        Field::prime(p)
    }
}

impl From<Field> for String {
    fn from(f: Field) -> Self {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// A finite simplicial complex stored by its facets.
///
/// The void complex has no facets; the complex `{∅}` has the single empty facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Normalizes the facet list: sorts each face, drops duplicates and
    /// faces contained in others, and sorts the result.
    pub fn from_faces(faces: impl IntoIterator<Item = Face>) -> Self {
        let mut all: Vec<Face> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut facets: Vec<Face> = Vec::new();
        for f in all {
            if !facets.iter().any(|g| is_subset(&f, g)) {
                facets.push(f);
            }
        }
        facets.sort();
        let vertices = facets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Self { vertices, facets }
    }

    pub fn void() -> Self {
        Self {
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, `-1` for `{∅}`; `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn contains_face(&self, s: &[usize]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        self.facets.iter().any(|f| is_subset(&s, f))
    }

    /// Every face, grouped by dimension: `result[d + 1]` holds the `d`-faces
    /// in lexicographic order. Empty for the void complex.
    pub fn faces_by_dim(&self) -> Vec<Vec<Face>> {
        let Some(dim) = self.dim() else {
            return Vec::new();
        };
        let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); (dim + 2) as usize];
        for f in &self.facets {
            let k = f.len();
            for mask in 0u64..(1u64 << k) {
                let face: Face = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| f[i])
                    .collect();
                sets[face.len()].insert(face);
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

fn difference(a: &[usize], b: &[usize]) -> Face {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

/// `Δ(P)`: facets are the maximal chains of `p`.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    SimplicialComplex::from_faces(p.maximal_chains())
}

/// `link(D, s) = {τ ∈ D : τ ∪ s ∈ D, τ ∩ s = ∅}`.
pub fn link(d: &SimplicialComplex, s: &[usize]) -> Result<SimplicialComplex> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if !d.contains_face(&s) {
        return Err(Error::NotAFace(s));
    }
    Ok(SimplicialComplex::from_faces(
        d.facets()
            .iter()
            .filter(|f| is_subset(&s, f))
            .map(|f| difference(f, &s)),
    ))
}

/// A boundary map `∂_d : C_d -> C_{d-1}` in sparse column form with signs in `{-1, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    /// Dimension `d` of the source faces.
    pub degree: isize,
    pub rows: usize,
    /// `columns[c]` lists `(row, sign)` pairs of the boundary of source face `c`.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    fn dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, s) in col {
                m[r][c] = s;
            }
        }
        m
    }

    /// Integer product `self ∘ next`, where `next` is the boundary one degree up.
    pub fn compose(&self, next: &BoundaryMatrix) -> Vec<Vec<i64>> {
        let a = self.dense();
        let mut out = vec![vec![0i64; next.cols()]; self.rows];
        for (c, col) in next.columns.iter().enumerate() {
            for &(k, s) in col {
                for (r, row) in a.iter().enumerate() {
                    out[r][c] += row[k] * s;
                }
            }
        }
        out
    }
}

/// Boundary maps `∂_0, ..., ∂_dim` of the augmented chain complex; `∂_0`
/// sends each vertex to the empty face.
pub fn boundary_matrices(d: &SimplicialComplex) -> Vec<BoundaryMatrix> {
    let faces = d.faces_by_dim();
    let mut out = Vec::new();
    for k in 1..faces.len() {
        let index: HashMap<&Face, usize> = faces[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let columns = faces[k]
            .iter()
            .map(|f| {
                (0..f.len())
                    .map(|drop| {
                        let sub: Face = f
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != drop)
                            .map(|(_, &v)| v)
                            .collect();
                        let sign = if drop % 2 == 0 { 1 } else { -1 };
                        (index[&sub], sign)
                    })
                    .collect()
            })
            .collect();
        out.push(BoundaryMatrix {
            degree: k as isize - 1,
            rows: faces[k - 1].len(),
            columns,
        });
    }
    out
}

/// Rank over the given field.
pub fn matrix_rank(m: &BoundaryMatrix, field: Field) -> usize {
    match field {
        Field::Prime(p) => rank_mod_p(m.dense(), p),
        Field::Rational => rank_rational(m.dense()),
    }
}

fn rank_mod_p(rows: Vec<Vec<i64>>, p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = mod_inverse(a[rank][col], p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // Fermat; p is prime
    let (mut base, mut exp, mut acc) = (a.rem_euclid(p), p - 2, 1i64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as i128 * base as i128 % p as i128) as i64;
        }
        base = (base as i128 * base as i128 % p as i128) as i64;
        exp >>= 1;
    }
    acc
}

fn rank_rational(rows: Vec<Vec<i64>>) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = BigRational::one() / a[rank][col].clone();
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers of a complex over a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub field: Field,
    /// `reduced_betti[i + 1]` is `β̃_i`, for `-1 <= i <= dim`.
    pub reduced_betti: Vec<usize>,
    /// `f_vector[i + 1]` counts `i`-faces; `f_{-1} = 1`.
    pub f_vector: Vec<usize>,
}

impl HomologyProfile {
    /// `β̃_i`, zero outside the stored range.
    pub fn betti(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.reduced_betti.get(k).copied())
            .unwrap_or(0)
    }

    pub fn dim(&self) -> isize {
        self.f_vector.len() as isize - 2
    }

    /// `Σ_{i>=0} (-1)^i f_i - 1 = Σ_{i>=-1} (-1)^i β̃_i`.
    pub fn euler_identity_holds(&self) -> bool {
        let alt = |v: &[usize]| -> i64 {
            v.iter()
                .enumerate()
                .map(|(k, &x)| if k % 2 == 1 { x as i64 } else { -(x as i64) })
                .sum()
        };
        alt(&self.f_vector) == alt(&self.reduced_betti)
    }

    /// True when `β̃_i = 0` for every `i` below the dimension.
    pub fn vanishes_below_dim(&self) -> bool {
        (-1..self.dim()).all(|i| self.betti(i) == 0)
    }
}

pub fn reduced_betti(d: &SimplicialComplex, field: Field) -> Result<HomologyProfile> {
    let field = field.validate()?;
    if d.is_void() {
        return Err(Error::VoidComplex);
    }
    let f_vector = d.f_vector();
    let ranks: Vec<usize> = boundary_matrices(d)
        .iter()
        .map(|m| matrix_rank(m, field))
        .collect();
    // ranks[k] = rank ∂_k, and ∂_{-1} = 0
    let reduced_betti = (0..f_vector.len())
        .map(|k| {
            let into = if k == 0 { 0 } else { ranks[k - 1] };
            let out = ranks.get(k).copied().unwrap_or(0);
            f_vector[k] - into - out
        })
        .collect();
    Ok(HomologyProfile {
        field,
        reduced_betti,
        f_vector,
    })
}

/// Outcome of the link-by-link Cohen-Macaulay test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReisnerVerdict {
    pub cm: bool,
    /// First face whose link has homology below its dimension. Non-empty
    /// faces are visited by size, then lexicographically; the empty face
    /// (whose link is the whole complex) is visited last.
    pub witness: Option<Face>,
}

pub fn is_cm_reisner(d: &SimplicialComplex, field: Field) -> Result<ReisnerVerdict> {
    let field = field.validate()?;
    if d.is_void() {
        return Err(Error::VoidComplex);
    }
    let mut faces = d.faces_by_dim();
    faces.rotate_left(1);
    for face in faces.into_iter().flatten() {
        let lk = link(d, &face)?;
        if !reduced_betti(&lk, field)?.vanishes_below_dim() {
            return Ok(ReisnerVerdict {
                cm: false,
                witness: Some(face),
            });
        }
    }
    Ok(ReisnerVerdict {
        cm: true,
        witness: None,
    })
}

/// Facets of equal size joined through shared codimension-one faces.
/// Complexes with facets of different sizes are reported as not strongly connected.
pub fn is_strongly_connected(d: &SimplicialComplex) -> bool {
    let facets = d.facets();
    if facets.len() <= 1 {
        return true;
    }
    if !d.is_pure() {
        return false;
    }
    let size = facets[0].len();
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..facets.len() {
            if !seen[j] && facets[i].len() - difference(&facets[i], &facets[j]).len() == size - 1 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
