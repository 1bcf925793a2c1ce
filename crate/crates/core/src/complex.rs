//! Finite abstract simplicial complexes on the vertex set `1..=m`.
//!
//! Faces are stored as bitmasks ([`VertexSet`]), so a complex is just its
//! vertex count plus its canonical facet list. The face poset is never
//! materialized here; membership is a subset test against the facets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest supported vertex label. Label `i` lives in bit `i` of a `u64`.
pub const MAX_VERTICES: usize = 63;

/// A subset of `[m]` encoded as a bitmask; bit `i` is vertex `i`, bit 0 is
/// never set.
///
/// The `Ord` implementation sorts by cardinality first and then
/// lexicographically on the increasing vertex lists, which is the subset
/// enumeration order used throughout the crate. Use [`VertexSet::lex_cmp`]
/// for plain lexicographic order.
/// Serializes as the increasing list of its vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct VertexSet(u64);

/// A face of a complex. The empty simplex is `VertexSet::EMPTY`.
pub type Simplex = VertexSet;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits & 1 != 0 {
            return Err(Error::LabelOutOfRange { label: 0, m: MAX_VERTICES });
        }
        Ok(VertexSet(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex label {v} out of range");
        VertexSet(1 << v)
    }

    /// `{1, ..., m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES);
        if m == 0 {
            VertexSet(0)
        } else {
            VertexSet(((1u128 << (m + 1)) - 2) as u64)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        vs.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | VertexSet::singleton(v).0)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !VertexSet::singleton(v).0)
    }

    pub fn contains(self, v: usize) -> bool {
        v <= MAX_VERTICES && v > 0 && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest vertex, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of elements of `self` strictly smaller than `v`.
    pub fn count_below(self, v: usize) -> usize {
        (self.0 & ((1u64 << v) - 1)).count_ones() as usize
    }

    /// Lexicographic comparison of the increasing vertex lists.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = VertexSet(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = v.iter().find(|&&x| !(1..=MAX_VERTICES).contains(&x)) {
            return Err(Error::LabelOutOfRange { label: bad, m: MAX_VERTICES });
        }
        Ok(VertexSet::from_vertices(v))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.lex_cmp(*other))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite simplicial complex on `1..=m` given by its facets.
///
/// Every label in `1..=m` occurs in some facet, no facet contains another,
/// and facets are sorted lexicographically, so two equal complexes have
/// identical encodings. The empty face is always present; the complex with
/// `m = 0` and no facets is the empty complex `{∅}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
}

/// A complex together with the original label of each of its vertices
/// (`labels[i - 1]` is the original label of vertex `i`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledComplex {
    pub complex: SimplicialComplex,
    pub labels: Vec<usize>,
}

/// A minimal non-face: not in the complex, but all proper subsets are.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MissingFace {
    pub vertices: VertexSet,
}

impl MissingFace {
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

impl SimplicialComplex {
    /// Builds a complex from facet lists with 1-based labels. Non-maximal
    /// faces are absorbed.
    pub fn new(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices { m, max: MAX_VERTICES });
        }
        let mut masks = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut mask = VertexSet::EMPTY;
            for &v in facet {
                if v == 0 || v > m {
                    return Err(Error::LabelOutOfRange { label: v, m });
                }
                if mask.contains(v) {
                    return Err(Error::DuplicateVertex { vertex: v, facet: facet.clone() });
                }
                mask = mask.with(v);
            }
            masks.push(mask);
        }
        let covered = masks.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f));
        if let Some(v) = VertexSet::full(m).difference(covered).min() {
            return Err(Error::MissingVertex(v));
        }
        Ok(Self::from_masks(m, masks))
    }

    /// Canonicalizes an arbitrary face list. Callers guarantee that every
    /// vertex in `1..=m` is covered.
    pub(crate) fn from_masks(m: usize, masks: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut faces: Vec<VertexSet> =
            masks.into_iter().filter(|f| !f.is_empty()).collect::<BTreeSet<_>>().into_iter().collect();
        // Larger faces first so a single pass can drop the absorbed ones.
        faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut facets: Vec<VertexSet> = Vec::with_capacity(faces.len());
        for f in faces {
            if !facets.iter().any(|g| f.is_subset(*g)) {
                facets.push(f);
            }
        }
        facets.sort_by(|a, b| a.lex_cmp(*b));
        SimplicialComplex { m, facets }
    }

    /// The empty complex `{∅}`.
    pub fn empty() -> Self {
        SimplicialComplex { m: 0, facets: Vec::new() }
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_masks(n, [VertexSet::full(n)])
    }

    /// Boundary of the simplex on `n` vertices (a sphere of dimension
    /// `n - 2`).
    pub fn simplex_boundary(n: usize) -> Self {
        let full = VertexSet::full(n);
        Self::from_masks(n, (1..=n).map(|v| full.without(v)))
    }

    /// The cycle graph `1-2-...-p-1`.
    pub fn polygon(p: usize) -> Self {
        assert!(p >= 3, "a polygon needs at least 3 vertices");
        Self::from_masks(p, (1..=p).map(|i| VertexSet::singleton(i).with(i % p + 1)))
    }

    /// `S^0 * ... * S^0` (`n` factors), the boundary of the `n`-dimensional
    /// cross-polytope. Vertex pairs are `{2i - 1, 2i}`.
    pub fn cross_polytope(n: usize) -> Self {
        let s0 = Self::from_masks(2, [VertexSet::singleton(1), VertexSet::singleton(2)]);
        (0..n).fold(Self::empty(), |acc, _| acc.join(&s0))
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32).max().unwrap_or(0) - 1
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        s.is_empty() || self.facets.iter().any(|f| s.is_subset(*f))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// All faces with exactly `size` vertices, lexicographically sorted.
    pub fn faces_of_size(&self, size: usize) -> Vec<VertexSet> {
        if size == 0 {
            return vec![VertexSet::EMPTY];
        }
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() < size {
                continue;
            }
            for s in f.subsets() {
                if s.len() == size {
                    out.insert(s);
                }
            }
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by(|a, b| a.lex_cmp(*b));
        v
    }

    /// All faces grouped by dimension `-1..=dim`, each group sorted
    /// lexicographically. Index `k + 1` holds the `k`-faces.
    pub fn faces_by_dim(&self) -> Vec<Vec<VertexSet>> {
        let top = (self.dim() + 1) as usize;
        let mut sets: Vec<BTreeSet<VertexSet>> = vec![BTreeSet::new(); top + 1];
        sets[0].insert(VertexSet::EMPTY);
        for f in &self.facets {
            for s in f.subsets() {
                sets[s.len()].insert(s);
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<_> = s.into_iter().collect();
                v.sort_by(|a, b| a.lex_cmp(*b));
                v
            })
            .collect()
    }

    /// Face numbers `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }

    /// Reduced Euler characteristic from the face counts.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &n)| if i % 2 == 0 { -(n as i64) } else { n as i64 }).sum()
    }

    pub fn edges(&self) -> Vec<VertexSet> {
        self.faces_of_size(2)
    }

    /// Maximal faces of the full subcomplex on `j`, in the original labels.
    pub fn restricted_facets(&self, j: VertexSet) -> Vec<VertexSet> {
        Self::from_masks(self.m, self.facets.iter().map(|f| f.intersection(j))).facets
    }

    /// The full subcomplex `K_J`, relabeled onto `1..=|J|`.
    pub fn full_subcomplex(&self, j: VertexSet) -> LabeledComplex {
        let j = j.intersection(self.vertex_set());
        let labels = j.to_vec();
        let faces = self.restricted_facets(j);
        LabeledComplex { complex: Self::from_masks(labels.len(), faces.into_iter().map(|f| compress(f, j))), labels }
    }

    /// The join `self * other`; vertices of `other` are shifted by `m`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let m = self.m + other.m;
        assert!(m <= MAX_VERTICES, "join exceeds {MAX_VERTICES} vertices");
        let a: Vec<VertexSet> = if self.facets.is_empty() { vec![VertexSet::EMPTY] } else { self.facets.clone() };
        let b: Vec<VertexSet> = if other.facets.is_empty() {
            vec![VertexSet::EMPTY]
        } else {
            other.facets.iter().map(|f| VertexSet(f.0 << self.m)).collect()
        };
        let mut faces = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                faces.push(x.union(*y));
            }
        }
        Self::from_masks(m, faces)
    }

    /// Missing faces of dimension `n` (with `n + 1` vertices), sorted
    /// lexicographically.
    pub fn missing_faces(&self, n: usize) -> Vec<MissingFace> {
        let size = n + 1;
        if size > self.m {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        // A missing face of size `size` extends some face of size `size - 1`.
        for base in self.faces_of_size(size - 1) {
            for v in 1..=self.m {
                if base.contains(v) || base.max().is_some_and(|mx| v < mx) {
                    continue;
                }
                let cand = base.with(v);
                if !self.is_face(cand) && cand.iter().all(|x| self.is_face(cand.without(x))) {
                    out.insert(cand);
                }
            }
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by(|a, b| a.lex_cmp(*b));
        v.into_iter().map(|vertices| MissingFace { vertices }).collect()
    }

    /// Replaces `facet` by the cone from a new vertex `m + 1` over its
    /// boundary.
    pub fn stellar_subdivide_facet(&self, facet: VertexSet) -> Result<SimplicialComplex> {
        if !self.facets.contains(&facet) {
            return Err(Error::NotAFacet(facet));
        }
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let apex = self.m + 1;
        if apex > MAX_VERTICES {
            return Err(Error::TooManyVertices { m: apex, max: MAX_VERTICES });
        }
        let mut faces: Vec<VertexSet> = self.facets.iter().copied().filter(|f| *f != facet).collect();
        faces.extend(facet.iter().map(|v| facet.without(v).with(apex)));
        Ok(Self::from_masks(apex, faces))
    }

    /// Link of vertex `v`, relabeled onto consecutive labels.
    pub fn link(&self, v: usize) -> LabeledComplex {
        let star: Vec<VertexSet> = self.facets.iter().filter(|f| f.contains(v)).map(|f| f.without(v)).collect();
        let support = star.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        LabeledComplex {
            complex: Self::from_masks(support.len(), star.iter().map(|f| compress(*f, support))),
            labels: support.to_vec(),
        }
    }

    /// The `k`-skeleton. Vertices are kept.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        let size = k + 1;
        let mut faces = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                faces.push(*f);
            } else {
                faces.extend(f.subsets().filter(|s| s.len() == size));
            }
        }
        Self::from_masks(self.m, faces)
    }

    /// Applies a relabeling `v -> perm[v - 1]`, where `perm` is a
    /// permutation of `1..=m`.
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        assert_eq!(perm.len(), self.m);
        Self::from_masks(self.m, self.facets.iter().map(|f| VertexSet::from_vertices(f.iter().map(|v| perm[v - 1]))))
    }

    /// Canonical text encoding; also the on-disk text format.
    pub fn canonical_text(&self) -> String {
        let mut s = format!("m {}\n", self.m);
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Hex SHA-256 of the canonical encoding.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }
}

impl LabeledComplex {
    /// Maps a vertex set of the relabeled complex back to original labels.
    pub fn original(&self, s: VertexSet) -> VertexSet {
        VertexSet::from_vertices(s.iter().map(|v| self.labels[v - 1]))
    }
}

/// Renumbers the elements of `s` by their rank inside `support`.
fn compress(s: VertexSet, support: VertexSet) -> VertexSet {
    VertexSet::from_vertices(s.iter().map(|v| support.count_below(v) + 1))
}

/// Starts from the boundary of the `(d + 1)`-simplex and performs `cuts`
/// stellar subdivisions of facets.
///
/// The facet to subdivide is `facets[r % facets.len()]`, where the facets
/// are in canonical order and `r` is the next output of SplitMix64 seeded
/// with `seed`. Any implementation of SplitMix64 reproduces the same corpus.
pub fn generate_stacked_sphere(d: usize, cuts: usize, seed: u64) -> Result<SimplicialComplex> {
    assert!(d >= 1, "stacked spheres need d >= 1");
    let mut rng = SplitMix64::from_seed(seed.to_le_bytes());
    let mut k = SimplicialComplex::simplex_boundary(d + 2);
    for _ in 0..cuts {
        let idx = (rng.next_u64() % k.facets.len() as u64) as usize;
        k = k.stellar_subdivide_facet(k.facets[idx])?;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn cx(m: usize, f: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(m, &f.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn vertex_set_basics() {
        let s = vs(&[5, 1, 3]);
        assert_eq!(s.to_vec(), vec![1, 3, 5]);
        assert_eq!(s.len(), 3);
        assert!(!s.contains(0));
        assert_eq!(VertexSet::full(4).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(s.subsets().count(), 8);
        assert!(vs(&[1, 2]) < vs(&[1, 2, 3]));
        assert!(vs(&[1, 3]) < vs(&[2, 3]));
        assert_eq!(vs(&[1, 2, 3]).lex_cmp(vs(&[1, 3])), Ordering::Less);
        assert!(VertexSet::from_bits(1).is_err());
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3,5]");
        assert_eq!(serde_json::from_str::<VertexSet>("[3,1]").unwrap(), vs(&[1, 3]));
        assert!(serde_json::from_str::<VertexSet>("[0]").is_err());
    }

    #[test]
    fn build_examples() {
        let b = cx(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert_eq!(b.dim(), 2);
        assert_eq!(b, SimplicialComplex::simplex_boundary(4));
        let c4 = cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        assert_eq!(c4.dim(), 1);
        assert_eq!(c4, SimplicialComplex::polygon(4));
        let absorbed = cx(3, &[&[1, 2, 3], &[1, 2]]);
        assert_eq!(absorbed.facets(), &[vs(&[1, 2, 3])]);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(SimplicialComplex::new(3, &[vec![1, 4]]), Err(Error::LabelOutOfRange { label: 4, .. })));
        assert!(matches!(SimplicialComplex::new(4, &[vec![1, 2, 3]]), Err(Error::MissingVertex(4))));
        assert!(matches!(
            SimplicialComplex::new(3, &[vec![1, 2, 2, 3]]),
            Err(Error::DuplicateVertex { vertex: 2, .. })
        ));
    }

    #[test]
    fn full_subcomplex_examples() {
        let c4 = SimplicialComplex::polygon(4);
        let r = c4.full_subcomplex(vs(&[1, 3]));
        assert_eq!(r.complex.facet_lists(), vec![vec![1], vec![2]]);
        assert_eq!(r.labels, vec![1, 3]);

        let b = SimplicialComplex::simplex_boundary(4);
        assert_eq!(b.restricted_facets(vs(&[1, 2, 3])), vec![vs(&[1, 2, 3])]);

        let c5 = SimplicialComplex::polygon(5);
        assert_eq!(c5.restricted_facets(vs(&[2, 4, 5])), vec![vs(&[2]), vs(&[4, 5])]);

        let e = c5.full_subcomplex(VertexSet::EMPTY);
        assert_eq!(e.complex, SimplicialComplex::empty());
        assert_eq!(e.complex.dim(), -1);
    }

    #[test]
    fn join_examples() {
        let s0 = SimplicialComplex::simplex_boundary(2);
        let c4 = s0.join(&s0);
        // S0 * S0 is a 4-cycle on 1-3-2-4.
        assert_eq!(c4.relabel(&[1, 3, 2, 4]), SimplicialComplex::polygon(4));
        let j = SimplicialComplex::polygon(4).join(&SimplicialComplex::simplex_boundary(3));
        assert_eq!(j.vertex_count(), 7);
        assert_eq!(j.dim(), 3);
        assert_eq!(j.facets().len(), 12);
        assert!(j.facets().iter().all(|f| f.len() == 4));
        let c5 = SimplicialComplex::polygon(5);
        assert_eq!(c5.join(&SimplicialComplex::empty()), c5);
        assert_eq!(SimplicialComplex::empty().join(&c5), c5);
    }

    #[test]
    fn missing_face_examples() {
        let b = SimplicialComplex::simplex_boundary(4);
        assert!(b.missing_faces(2).is_empty());
        assert_eq!(b.missing_faces(3), vec![MissingFace { vertices: vs(&[1, 2, 3, 4]) }]);
        let c4 = SimplicialComplex::polygon(4);
        let mf: Vec<_> = c4.missing_faces(1).iter().map(|f| f.vertices).collect();
        assert_eq!(mf, vec![vs(&[1, 3]), vs(&[2, 4])]);
        let j = c4.join(&SimplicialComplex::simplex_boundary(3));
        let mf: Vec<_> = j.missing_faces(1).iter().map(|f| f.vertices).collect();
        assert_eq!(mf, vec![vs(&[1, 3]), vs(&[2, 4])]);
        assert_eq!(j.missing_faces(2), vec![MissingFace { vertices: vs(&[5, 6, 7]) }]);
    }

    #[test]
    fn stellar_subdivision() {
        let b = SimplicialComplex::simplex_boundary(4);
        let s = b.stellar_subdivide_facet(vs(&[1, 2, 3])).unwrap();
        assert_eq!(s.vertex_count(), 5);
        assert_eq!(s.facets().len(), 6);
        let t = s.stellar_subdivide_facet(vs(&[1, 2, 4])).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.facets().len(), 8);
        assert!(matches!(b.stellar_subdivide_facet(vs(&[1, 2])), Err(Error::NotAFacet(_))));
    }

    #[test]
    fn stacked_generator() {
        assert_eq!(generate_stacked_sphere(2, 0, 7).unwrap(), SimplicialComplex::simplex_boundary(4));
        for k in 0..6 {
            let s = generate_stacked_sphere(3, k, 11).unwrap();
            assert_eq!(s.vertex_count(), 5 + k);
            assert_eq!(s.facets().len(), 5 + 3 * k);
        }
        assert_eq!(generate_stacked_sphere(2, 5, 42).unwrap(), generate_stacked_sphere(2, 5, 42).unwrap());
    }

    #[test]
    fn link_and_skeleton() {
        let b = SimplicialComplex::simplex_boundary(4);
        let l = b.link(4);
        assert_eq!(l.complex, SimplicialComplex::simplex_boundary(3));
        assert_eq!(l.labels, vec![1, 2, 3]);
        let k5 = SimplicialComplex::simplex_boundary(5).skeleton(1);
        assert_eq!(k5.facets().len(), 10);
        assert!(k5.facets().iter().all(|f| f.len() == 2));
        let l = SimplicialComplex::polygon(4).link(1);
        assert_eq!(l.complex.facet_lists(), vec![vec![1], vec![2]]);
        assert_eq!(l.labels, vec![2, 4]);
    }

    #[test]
    fn cross_polytope_counts() {
        let x = SimplicialComplex::cross_polytope(4);
        assert_eq!(x.vertex_count(), 8);
        assert_eq!(x.facets().len(), 16);
        assert_eq!(x.dim(), 3);
    }

    #[test]
    fn euler_characteristic_of_spheres() {
        // Reduced Euler characteristic of S^d is (-1)^d.
        assert_eq!(SimplicialComplex::simplex_boundary(4).reduced_euler_characteristic(), 1);
        assert_eq!(SimplicialComplex::polygon(6).reduced_euler_characteristic(), -1);
        assert_eq!(SimplicialComplex::empty().reduced_euler_characteristic(), -1);
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        (2usize..9).prop_flat_map(|m| {
            prop::collection::vec(1u64..(1u64 << m), 1..8).prop_map(move |raw| {
                let mut faces: Vec<VertexSet> = raw.into_iter().map(|b| VertexSet(b << 1)).collect();
                faces.extend((1..=m).map(VertexSet::singleton));
                SimplicialComplex::from_masks(m, faces)
            })
        })
    }

    proptest! {
        #[test]
        fn full_subcomplex_is_functorial(k in arb_complex(), a in any::<u64>(), b in any::<u64>()) {
            let full = k.vertex_set();
            let j = VertexSet(a << 1).intersection(full);
            let jj = VertexSet(b << 1).intersection(j);
            let outer = k.full_subcomplex(j);
            // Express J' inside the relabeled K_J.
            let inner_j = VertexSet::from_vertices(
                jj.iter().map(|v| j.count_below(v) + 1));
            let nested = outer.complex.restricted_facets(inner_j);
            let nested: Vec<VertexSet> = nested.into_iter().map(|f| outer.original(f)).collect();
            prop_assert_eq!(nested, k.restricted_facets(jj));
        }

        #[test]
        fn join_dimension_and_missing_edges(k1 in arb_complex(), k2 in arb_complex()) {
            let j = k1.join(&k2);
            prop_assert_eq!(j.dim(), k1.dim() + k2.dim() + 1);
            let mut expected: Vec<VertexSet> = k1.missing_faces(1).iter().map(|f| f.vertices).collect();
            expected.extend(k2.missing_faces(1).iter().map(|f| VertexSet(f.vertices.0 << k1.vertex_count())));
            let got: Vec<VertexSet> = j.missing_faces(1).iter().map(|f| f.vertices).collect();
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn missing_faces_are_full_boundaries(k in arb_complex(), n in 1usize..4) {
            for mf in k.missing_faces(n) {
                prop_assert!(!k.is_face(mf.vertices));
                let restricted = k.restricted_facets(mf.vertices);
                let boundary: Vec<VertexSet> = mf.vertices.iter().map(|v| mf.vertices.without(v)).collect();
                let mut boundary = boundary;
                boundary.sort_by(|a, b| a.lex_cmp(*b));
                prop_assert_eq!(restricted, boundary);
            }
        }
    }
}
