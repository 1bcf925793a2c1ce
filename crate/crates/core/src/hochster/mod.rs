//! The bigraded decomposition `H^l(Z_K) ≅ ⊕_J H̃^{l-|J|-1}(K_J)` and the
//! ring structure on it.

pub mod cache;
pub mod ring;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{Cache, CacheStats};
pub use ring::{
    cup_product, has_trivial_products, indecomposability_violations, missing_face_evaluation, pairing_matrix,
    product_length, ClassRef, CohomologyClass, MissingFaceEvaluation, PairingMatrix,
};

use crate::classify::certify_sphere;
use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::homology::{summarize, ChainBasis, DegreeGroup, HomologySummary, Variance};

pub const DEFAULT_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    /// Largest vertex count accepted without `force`.
    pub cap: usize,
    pub force: bool,
    pub cache: Option<Arc<Cache>>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { cap: DEFAULT_CAP, force: false, cache: None }
    }
}

/// Cochain basis and cohomology of one full subcomplex `K_J`.
#[derive(Clone, Debug)]
pub struct Entry {
    pub subset: VertexSet,
    pub basis: Arc<ChainBasis>,
    pub cohomology: HomologySummary,
}

/// Rank and cyclic torsion summands of `H^degree(Z_K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTotal {
    pub degree: usize,
    pub rank: usize,
    /// Orders of the cyclic torsion summands collected over all `J`, sorted.
    pub torsion: Vec<i64>,
}

/// One nonzero bigraded piece `H̃^l(K_J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedEntry {
    pub l: i32,
    pub subset: VertexSet,
    pub total_degree: usize,
    pub rank: usize,
    pub torsion: Vec<i64>,
}

/// All nonzero `H̃^l(K_J)` for `J` ranging over subsets of `ground`.
#[derive(Clone, Debug)]
pub struct BigradedTable {
    complex: SimplicialComplex,
    ground: VertexSet,
    faces: Arc<Vec<Vec<VertexSet>>>,
    entries: BTreeMap<VertexSet, Arc<Entry>>,
    /// Whether `complex` is a certified sphere, computed on first use.
    sphere: Arc<OnceLock<bool>>,
}

/// `l + |J| + 1`.
pub fn total_degree(l: i32, subset: VertexSet) -> usize {
    (l + subset.len() as i32 + 1) as usize
}

pub fn decompose(k: &SimplicialComplex) -> Result<BigradedTable> {
    decompose_with(k, &DecomposeOptions::default())
}

pub fn decompose_with(k: &SimplicialComplex, opts: &DecomposeOptions) -> Result<BigradedTable> {
    let m = k.vertex_count();
    if m > opts.cap && !opts.force {
        return Err(Error::CapExceeded { m, cap: opts.cap });
    }
    let faces = Arc::new(k.faces_by_dim());
    let hash = opts.cache.as_ref().map(|_| k.content_hash());
    let mut subsets: Vec<VertexSet> = k.vertex_set().subsets().collect();
    subsets.sort();

    let computed: Vec<Result<Option<Entry>>> = subsets
        .par_iter()
        .map(|&j| {
            let basis = ChainBasis::restricted(&faces, j);
            let cached = match (&opts.cache, &hash) {
                (Some(c), Some(h)) => c.load(h, j),
                _ => None,
            };
            let cohomology = match cached {
                Some(s) => s,
                None => {
                    let s = summarize(&basis, Variance::Cohomology)?;
                    if let (Some(c), Some(h)) = (&opts.cache, &hash) {
                        if let Err(e) = c.store(h, j, &s) {
                            log::warn!("cache write for {j} failed: {e}");
                        }
                    }
                    s
                }
            };
            Ok((!cohomology.is_zero()).then(|| Entry { subset: j, basis: Arc::new(basis), cohomology }))
        })
        .collect();

    let mut entries = BTreeMap::new();
    for e in computed {
        if let Some(e) = e? {
            entries.insert(e.subset, Arc::new(e));
        }
    }
    Ok(BigradedTable { complex: k.clone(), ground: k.vertex_set(), faces, entries, sphere: Arc::default() })
}

impl BigradedTable {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Vertex set whose subsets the table covers.
    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    /// Nonzero entries in cardinality-then-lexicographic order of `J`.
    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values().map(|e| e.as_ref())
    }

    pub fn entry(&self, subset: VertexSet) -> Option<&Entry> {
        self.entries.get(&subset).map(|e| e.as_ref())
    }

    pub fn group(&self, l: i32, subset: VertexSet) -> Option<&DegreeGroup> {
        self.entry(subset)?.cohomology.group(l).filter(|g| !g.is_zero())
    }

    pub fn rank(&self, l: i32, subset: VertexSet) -> usize {
        self.group(l, subset).map_or(0, |g| g.rank)
    }

    /// Cochain basis of `K_J`, built on demand when `H̃^*(K_J) = 0`.
    pub fn basis(&self, subset: VertexSet) -> Arc<ChainBasis> {
        match self.entries.get(&subset) {
            Some(e) => e.basis.clone(),
            None => Arc::new(ChainBasis::restricted(&self.faces, subset)),
        }
    }

    /// The table of `K_J`: entries for subsets of `j` only, original labels.
    pub fn slice(&self, j: VertexSet) -> BigradedTable {
        let ground = j.intersection(self.ground);
        BigradedTable {
            complex: self.complex.clone(),
            ground,
            faces: self.faces.clone(),
            entries: self.entries.iter().filter(|(s, _)| s.is_subset(ground)).map(|(s, e)| (*s, e.clone())).collect(),
            sphere: self.sphere.clone(),
        }
    }

    /// Whether the whole complex passes `certify_sphere`; cached.
    pub fn is_certified_sphere(&self) -> Result<bool> {
        if let Some(&b) = self.sphere.get() {
            return Ok(b);
        }
        let b = certify_sphere(&self.complex)?.is_sphere();
        Ok(*self.sphere.get_or_init(|| b))
    }

    /// Every nonzero `(l, J)` piece, sorted by `J` then `l`.
    pub fn bigraded(&self) -> Vec<BigradedEntry> {
        self.entries()
            .flat_map(|e| {
                e.cohomology.nonzero().map(move |g| BigradedEntry {
                    l: g.degree,
                    subset: e.subset,
                    total_degree: total_degree(g.degree, e.subset),
                    rank: g.rank,
                    torsion: g.torsion.clone(),
                })
            })
            .collect()
    }

    /// `H^*(Z_K)` degree by degree; zero degrees are omitted.
    pub fn aggregated(&self) -> Vec<DegreeTotal> {
        let mut acc: BTreeMap<usize, DegreeTotal> = BTreeMap::new();
        for b in self.bigraded() {
            let t = acc.entry(b.total_degree).or_insert_with(|| DegreeTotal {
                degree: b.total_degree,
                rank: 0,
                torsion: Vec::new(),
            });
            t.rank += b.rank;
            t.torsion.extend(&b.torsion);
        }
        acc.into_values()
            .map(|mut t| {
                t.torsion.sort_unstable();
                t
            })
            .collect()
    }

    /// Nonzero Betti numbers of `Z_K` by degree.
    pub fn betti(&self) -> BTreeMap<usize, usize> {
        self.aggregated().into_iter().filter(|t| t.rank > 0).map(|t| (t.degree, t.rank)).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.entries().any(|e| e.cohomology.has_torsion())
    }
}
