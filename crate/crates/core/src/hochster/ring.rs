//! Products in `H^*(Z_K)`: cochain-level join products between full
//! subcomplexes, duality pairings, product length and missing-face
//! evaluations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{total_degree, BigradedTable};
use crate::complex::VertexSet;
use crate::error::{Error, Result};
use crate::homology::{smith_normal_form, Matrix};

/// A cocycle on `K_J` in degree `l`, standing for an element of `H^{l,J}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyClass {
    pub degree: i32,
    pub subset: VertexSet,
    pub cochain: Vec<i64>,
}

/// Generator `index` of `H̃^degree(K_subset)` as stored in the table
/// (torsion generators first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassRef {
    pub degree: i32,
    pub subset: VertexSet,
    pub index: usize,
}

impl ClassRef {
    pub fn total_degree(&self) -> usize {
        total_degree(self.degree, self.subset)
    }
}

/// `(-1)^{#{(x, y) : x ∈ a, y ∈ b, x > y}}`: the sign of the shuffle
/// sorting `a` followed by `b`.
fn shuffle_sign(a: VertexSet, b: VertexSet) -> i64 {
    let inversions: usize = a.iter().map(|x| b.count_below(x)).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl BigradedTable {
    /// The unit `1 ∈ H^{-1,∅}`.
    pub fn unit(&self) -> CohomologyClass {
        CohomologyClass { degree: -1, subset: VertexSet::EMPTY, cochain: vec![1] }
    }

    pub fn zero_class(&self, degree: i32, subset: VertexSet) -> CohomologyClass {
        let n = self.basis(subset).size(degree);
        CohomologyClass { degree, subset, cochain: vec![0; n] }
    }

    pub fn class(&self, r: ClassRef) -> Option<CohomologyClass> {
        let g = self.group(r.degree, r.subset)?;
        Some(CohomologyClass { degree: r.degree, subset: r.subset, cochain: g.generators.get(r.index)?.clone() })
    }

    /// Generators of every nonzero piece except the unit.
    pub fn generator_refs(&self) -> Vec<ClassRef> {
        self.entries()
            .filter(|e| !e.subset.is_empty())
            .flat_map(|e| {
                e.cohomology.nonzero().flat_map(move |g| {
                    (0..g.generator_count()).map(move |index| ClassRef { degree: g.degree, subset: e.subset, index })
                })
            })
            .collect()
    }

    fn check_cocycle(&self, c: &CohomologyClass) -> Result<()> {
        let basis = self.basis(c.subset);
        let closed = basis.is_cocycle(c.degree, &c.cochain)?;
        if !closed {
            return Err(Error::NotCocycle { degree: c.degree, subset: c.subset });
        }
        Ok(())
    }

    /// Coordinates of a class along the stored generators; empty when the
    /// group is zero. Torsion coordinates are reduced modulo their order.
    pub fn coordinates(&self, c: &CohomologyClass) -> Result<Vec<i64>> {
        self.check_cocycle(c)?;
        Ok(self.group(c.degree, c.subset).map_or_else(Vec::new, |g| g.class_coordinates(&c.cochain)))
    }

    pub fn is_zero_class(&self, c: &CohomologyClass) -> Result<bool> {
        Ok(self.coordinates(c)?.iter().all(|&x| x == 0))
    }

    /// `Σ coords[i] · generator[i]` in `H̃^degree(K_subset)`.
    pub fn combine(&self, degree: i32, subset: VertexSet, coords: &[i64]) -> CohomologyClass {
        let mut out = self.zero_class(degree, subset);
        if let Some(g) = self.group(degree, subset) {
            for (c, gen) in coords.iter().zip(&g.generators) {
                for (o, x) in out.cochain.iter_mut().zip(gen) {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// Indicator cochain of the lexicographically smallest facet, and its
    /// coordinate (±1) along the generator of `H̃^d(K)`. Fails unless the
    /// top group is `Z` and that facet generates it.
    fn fundamental(&self) -> Result<(CohomologyClass, i64)> {
        let k = self.complex();
        let d = k.dim();
        let not = |why: &str| Error::NotCertified(why.to_string());
        if self.ground() != k.vertex_set() || d < 0 {
            return Err(not("the table does not cover the whole complex"));
        }
        let g = self.group(d, self.ground()).ok_or_else(|| not("top cohomology vanishes"))?;
        if g.rank != 1 || !g.torsion.is_empty() {
            return Err(not("top cohomology is not Z"));
        }
        let basis = self.basis(self.ground());
        let mut cochain = vec![0; basis.size(d)];
        let first = k.facets()[0];
        cochain[basis.position(d, first).ok_or_else(|| not("complex is not pure"))?] = 1;
        let f = g.free_coordinates(&cochain)[0];
        if f.abs() != 1 {
            return Err(not("a facet does not generate top cohomology"));
        }
        Ok((CohomologyClass { degree: d, subset: self.ground(), cochain }, f))
    }

    /// The fundamental cocycle `c` of a sphere: the dual of its
    /// lexicographically smallest facet.
    pub fn fundamental_class(&self) -> Result<CohomologyClass> {
        Ok(self.fundamental()?.0)
    }

    /// The multiple of the fundamental class represented by a top-degree
    /// class.
    pub fn pair_with_fundamental(&self, c: &CohomologyClass) -> Result<i64> {
        let (_, f) = self.fundamental()?;
        if c.degree != self.complex().dim() || c.subset != self.ground() {
            return Err(Error::NotApplicable(format!(
                "class in bidegree ({}, {}) is not top-dimensional",
                c.degree, c.subset
            )));
        }
        Ok(self.coordinates(c)?[0] * f)
    }

    /// Product of two stored generators; `None` when it vanishes for
    /// bidegree reasons (overlapping subsets or a zero target group).
    pub fn product_of(&self, x: ClassRef, y: ClassRef) -> Result<Option<(CohomologyClass, Vec<i64>)>> {
        if !x.subset.is_disjoint(y.subset) {
            return Ok(None);
        }
        let target = x.subset.union(y.subset);
        if self.group(x.degree + y.degree + 1, target).is_none() {
            return Ok(None);
        }
        let a = self.class(x).ok_or(Error::NotApplicable(format!("no generator {x:?}")))?;
        let b = self.class(y).ok_or(Error::NotApplicable(format!("no generator {y:?}")))?;
        let c = cup_product(self, &a, &b)?;
        let coords = self.coordinates(&c)?;
        Ok(Some((c, coords)))
    }
}

/// The product `H^{p,I} ⊗ H^{q,J} → H^{p+q+1, I ⊔ J}`, zero unless `I` and
/// `J` are disjoint. On cochains, `(a·b)(σ) = ε · a(σ ∩ I) · b(σ ∩ J)` where
/// `ε` is the sign of the shuffle taking `σ ∩ I` followed by `σ ∩ J` to `σ`.
pub fn cup_product(table: &BigradedTable, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
    table.check_cocycle(a)?;
    table.check_cocycle(b)?;
    let degree = a.degree + b.degree + 1;
    let subset = a.subset.union(b.subset);
    if !a.subset.is_disjoint(b.subset) {
        return Ok(table.zero_class(degree, subset));
    }
    let (ba, bb, bt) = (table.basis(a.subset), table.basis(b.subset), table.basis(subset));
    let mut out = vec![0i64; bt.size(degree)];
    for (s, &x) in ba.simplices(a.degree).iter().zip(&a.cochain) {
        if x == 0 {
            continue;
        }
        for (t, &y) in bb.simplices(b.degree).iter().zip(&b.cochain) {
            if y == 0 {
                continue;
            }
            if let Some(pos) = bt.position(degree, s.union(*t)) {
                out[pos] += shuffle_sign(*s, *t) * x * y;
            }
        }
    }
    let c = CohomologyClass { degree, subset, cochain: out };
    debug_assert!(bt.is_cocycle(degree, &c.cochain).unwrap(), "product is not a cocycle");
    Ok(c)
}

/// Products of free generators of `H̃^i(K_I)` (rows) with free generators of
/// `H̃^{d-1-i}(K_{[m]∖I})` (columns), as multiples of the fundamental class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingMatrix {
    pub degree: i32,
    pub subset: VertexSet,
    pub co_degree: i32,
    pub co_subset: VertexSet,
    pub matrix: Matrix<i64>,
}

impl PairingMatrix {
    pub fn is_square(&self) -> bool {
        self.matrix.rows() == self.matrix.cols()
    }

    /// Square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.matrix.rows();
        match smith_normal_form(&self.matrix) {
            Ok(s) => s.rank == n && s.invariant_factors().iter().all(|&d| d == 1),
            Err(_) => false,
        }
    }
}

pub fn pairing_matrix(table: &BigradedTable, i: i32, subset: VertexSet) -> Result<PairingMatrix> {
    if !table.is_certified_sphere()? {
        return Err(Error::NotCertified("pairings need a certified sphere".into()));
    }
    table.fundamental()?;
    let d = table.complex().dim();
    let co_degree = d - 1 - i;
    let co_subset = table.ground().difference(subset);
    let free = |l: i32, s: VertexSet| -> Vec<CohomologyClass> {
        table.group(l, s).map_or_else(Vec::new, |g| {
            g.free_generators().iter().map(|c| CohomologyClass { degree: l, subset: s, cochain: c.clone() }).collect()
        })
    };
    let rows = free(i, subset);
    let cols = free(co_degree, co_subset);
    let mut matrix = Matrix::zeros(rows.len(), cols.len());
    for (r, a) in rows.iter().enumerate() {
        for (c, b) in cols.iter().enumerate() {
            matrix[(r, c)] = table.pair_with_fundamental(&cup_product(table, a, b)?)?;
        }
    }
    Ok(PairingMatrix { degree: i, subset, co_degree, co_subset, matrix })
}

/// Whether every product of two positive-degree classes vanishes.
pub fn has_trivial_products(table: &BigradedTable) -> Result<bool> {
    let refs = table.generator_refs();
    let found: Result<Option<()>> = (0..refs.len())
        .into_par_iter()
        .map(|i| {
            for &y in &refs[i + 1..] {
                if let Some((_, coords)) = table.product_of(refs[i], y)? {
                    if coords.iter().any(|&c| c != 0) {
                        return Ok(Some(()));
                    }
                }
            }
            Ok(None)
        })
        .find_map_any(|r: Result<Option<()>>| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None));
    Ok(found?.is_none())
}

/// Generators of the subgroup spanned by `vecs` in `Z^r ⊕ ⊕ Z/t_i`, where
/// the first `torsion.len()` coordinates are taken modulo `torsion`.
fn span_generators(vecs: &[Vec<i64>], torsion: &[i64]) -> Result<Vec<Vec<i64>>> {
    let Some(n) = vecs.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    let mut rows: Vec<Vec<i64>> = vecs.to_vec();
    for (i, &t) in torsion.iter().enumerate() {
        let mut r = vec![0; n];
        r[i] = t;
        rows.push(r);
    }
    let s = smith_normal_form(&Matrix::from_rows(rows.len(), n, rows))?;
    let mut out = Vec::new();
    for k in 0..s.rank {
        let d = s.diagonal[(k, k)];
        let mut v: Vec<i64> = s.right_inv.row(k).iter().map(|x| d * x).collect();
        for (x, &t) in v.iter_mut().zip(torsion) {
            *x = x.rem_euclid(t);
        }
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Largest `r` such that some product of `r` positive-degree classes is
/// nonzero; `0` when there are no positive-degree classes.
pub fn product_length(table: &BigradedTable) -> Result<usize> {
    let gens = table.generator_refs();
    if gens.is_empty() {
        return Ok(0);
    }
    // Spanning sets of r-fold products, keyed by bidegree, in coordinates.
    let mut level: BTreeMap<(i32, VertexSet), Vec<Vec<i64>>> = BTreeMap::new();
    for g in &gens {
        let n = table.group(g.degree, g.subset).map_or(0, |x| x.generator_count());
        let mut e = vec![0; n];
        e[g.index] = 1;
        level.entry((g.degree, g.subset)).or_default().push(e);
    }
    let mut r = 1;
    loop {
        let products: Vec<((i32, VertexSet), Vec<i64>)> = level
            .par_iter()
            .map(|(&(l, s), vecs)| -> Result<Vec<_>> {
                let mut out = Vec::new();
                for v in vecs {
                    let x = table.combine(l, s, v);
                    for g in gens.iter().filter(|g| g.subset.is_disjoint(s)) {
                        let (tl, ts) = (l + g.degree + 1, s.union(g.subset));
                        if table.group(tl, ts).is_none() {
                            continue;
                        }
                        let p = cup_product(table, &x, &table.class(*g).expect("stored generator"))?;
                        let coords = table.coordinates(&p)?;
                        if coords.iter().any(|&c| c != 0) {
                            out.push(((tl, ts), coords));
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if products.is_empty() {
            return Ok(r);
        }
        let mut next: BTreeMap<(i32, VertexSet), Vec<Vec<i64>>> = BTreeMap::new();
        for (key, v) in products {
            next.entry(key).or_default().push(v);
        }
        level = BTreeMap::new();
        for ((l, s), vecs) in next {
            let torsion = table.group(l, s).map_or(&[][..], |g| g.torsion.as_slice());
            let span = span_generators(&vecs, torsion)?;
            if !span.is_empty() {
                level.insert((l, s), span);
            }
        }
        if level.is_empty() {
            return Ok(r);
        }
        r += 1;
    }
}

/// Evaluations of the generators of `H̃^l(K_J)` (rows) against the cycles
/// `∂Δ_I` of the missing faces `I ⊆ J` with `|I| = l + 2` (columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingFaceEvaluation {
    pub degree: i32,
    pub subset: VertexSet,
    pub faces: Vec<VertexSet>,
    pub matrix: Matrix<i64>,
    pub torsion_free: bool,
    /// The joint evaluation `H̃^l(K_J) → Z^faces` is injective.
    pub injective: bool,
}

/// One entry per nonzero `H̃^l(K_J)`.
pub fn missing_face_evaluation(table: &BigradedTable, l: i32) -> Result<Vec<MissingFaceEvaluation>> {
    if l < 0 {
        return Ok(table
            .group(-1, VertexSet::EMPTY)
            .map(|_| MissingFaceEvaluation {
                degree: -1,
                subset: VertexSet::EMPTY,
                faces: Vec::new(),
                matrix: Matrix::zeros(1, 0),
                torsion_free: true,
                injective: false,
            })
            .into_iter()
            .collect());
    }
    let k = table.complex();
    let all_faces: Vec<VertexSet> = k.missing_faces(l as usize + 1).into_iter().map(|f| f.vertices).collect();
    let mut out = Vec::new();
    for e in table.entries() {
        let Some(g) = table.group(l, e.subset) else { continue };
        let faces: Vec<VertexSet> = all_faces.iter().copied().filter(|f| f.is_subset(e.subset)).collect();
        let mut matrix = Matrix::zeros(g.generator_count(), faces.len());
        for (c, f) in faces.iter().enumerate() {
            let cycle = e.basis.missing_face_cycle(k, *f)?;
            for (r, gen) in g.generators.iter().enumerate() {
                matrix[(r, c)] = e.basis.evaluate(l, gen, &cycle)?;
            }
        }
        let torsion_free = g.torsion.is_empty();
        let injective = torsion_free && smith_normal_form(&matrix)?.rank == g.generator_count();
        out.push(MissingFaceEvaluation { degree: l, subset: e.subset, faces, matrix, torsion_free, injective });
    }
    Ok(out)
}

/// A product of positive-degree classes that pairs nontrivially with a
/// missing-face cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposableEvaluation {
    pub left: ClassRef,
    pub right: ClassRef,
    pub face: VertexSet,
    pub value: i64,
}

/// Every pairing of a product of two generators with a missing-face cycle
/// `∂Δ_I`, `I ⊆ I_left ⊔ I_right`, that is nonzero. Products of positive
/// classes should pair to zero, so the result is expected to be empty.
pub fn indecomposability_violations(table: &BigradedTable) -> Result<Vec<DecomposableEvaluation>> {
    let k = table.complex();
    let refs = table.generator_refs();
    let max_l = refs.iter().map(|r| r.degree).max().unwrap_or(-1) * 2 + 1;
    let faces_by_l: Vec<Vec<VertexSet>> =
        (0..=max_l.max(0)).map(|l| k.missing_faces(l as usize + 1).into_iter().map(|f| f.vertices).collect()).collect();
    let found: Vec<Vec<DecomposableEvaluation>> = (0..refs.len())
        .into_par_iter()
        .map(|i| -> Result<Vec<DecomposableEvaluation>> {
            let mut out = Vec::new();
            let x = refs[i];
            for &y in &refs[i + 1..] {
                if !x.subset.is_disjoint(y.subset) {
                    continue;
                }
                let l = x.degree + y.degree + 1;
                let t = x.subset.union(y.subset);
                let faces: Vec<VertexSet> = faces_by_l[l as usize].iter().copied().filter(|f| f.is_subset(t)).collect();
                if faces.is_empty() {
                    continue;
                }
                let p = cup_product(table, &table.class(x).unwrap(), &table.class(y).unwrap())?;
                let basis = table.basis(t);
                for face in faces {
                    let cycle = basis.missing_face_cycle(k, face)?;
                    let value = basis.evaluate(l, &p.cochain, &cycle)?;
                    if value != 0 {
                        out.push(DecomposableEvaluation { left: x, right: y, face, value });
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}
