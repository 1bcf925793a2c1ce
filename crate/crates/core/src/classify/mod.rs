//! Deciding whether `H^*(Z_K)` is the ring of a connected sum of products
//! of spheres, and producing a verified presentation when it is.

pub mod certify;
pub mod decomposition;
pub mod presentation;
pub mod stacked;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use certify::{certify_sphere, SphereCertificate, SphereVerdict};
pub use decomposition::{decomposition_to_betti, mcgavran_decomposition, SphereDecomposition, Summand};
pub use presentation::{
    verify_presentation, Bidegree, Check, Generator, PresentationKind, PresentationVerdict, RingPresentation, Role,
    CHECK_ANCHORED, CHECK_PAIRINGS, CHECK_PRODUCTS, CHECK_RANKS, CHECK_TORSION,
};
pub use stacked::recognize_dual_stacked;

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{is_chordal, missing_edge_structure, Chordality, Graph, MissingEdgeReport};
use crate::hochster::{decompose_with, has_trivial_products, missing_face_evaluation, BigradedTable, DecomposeOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// `K` is the boundary of a cross-polytope: a product of 3-spheres.
    CrossPolytope,
    /// Chordal 1-skeleton: hyperbolic pairs only.
    Chordal,
    /// Exactly two missing edges forming a chordless 4-cycle (3-spheres).
    TwoMissingEdges,
    /// Missing faces detect cohomology in the low degrees (any dimension).
    MissingFaceGenerated,
    None,
}

/// Product-only stand-in for minimal non-Golodness; Massey products are
/// not examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakGolod {
    pub trivial_products: bool,
    /// `(i, products in K_{[m]∖i} trivial)` for every vertex.
    pub deletions: Vec<(usize, bool)>,
    pub weak_min_non_golod: bool,
}

/// The three conditions that coincide for 2-spheres other than the
/// octahedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSphereEquivalence {
    pub chordal: bool,
    /// Vertices removed while undoing stellar subdivisions, if that works.
    pub reduction: Option<Vec<usize>>,
    pub pairs_verified: bool,
}

impl TwoSphereEquivalence {
    pub fn consistent(&self) -> bool {
        self.chordal == self.reduction.is_some() && self.chordal == self.pairs_verified
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsndimReport {
    pub q: i32,
    /// `(l, evaluation against missing faces injective on every H^{l,J})`.
    pub degrees: Vec<(i32, bool)>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub vertices: usize,
    pub dimension: i32,
    pub certificate: SphereCertificate,
    pub chordality: Chordality,
    pub missing_edges: MissingEdgeReport,
    pub case: Case,
    pub decomposition: Option<SphereDecomposition>,
    pub presentation: Option<RingPresentation>,
    pub verification: Option<PresentationVerdict>,
    pub two_sphere: Option<TwoSphereEquivalence>,
    pub ssndim: Option<SsndimReport>,
    pub weak_golod: Option<WeakGolod>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    fn informational(table: &BigradedTable, certificate: SphereCertificate) -> Self {
        let k = table.complex();
        ClassificationReport {
            vertices: k.vertex_count(),
            dimension: k.dim(),
            certificate,
            chordality: is_chordal(&Graph::one_skeleton(k)),
            missing_edges: missing_edge_structure(k),
            case: Case::None,
            decomposition: None,
            presentation: None,
            verification: None,
            two_sphere: None,
            ssndim: None,
            weak_golod: None,
            notes: Vec::new(),
        }
    }

    /// Verifies the presentation and keeps the case only if it passes.
    fn settle(&mut self, table: &BigradedTable, case: Case, pres: RingPresentation) -> Result<()> {
        let verdict = verify_presentation(table, &pres)?;
        if verdict.passed {
            self.case = case;
            self.decomposition = Some(pres.decomposition());
            self.presentation = Some(pres);
        } else {
            self.case = Case::None;
            let failed: Vec<&str> = verdict.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            self.notes.push(format!("{case:?} presentation failed verification: {}", failed.join(", ")));
        }
        self.verification = Some(verdict);
        Ok(())
    }
}

/// The boundary of the `n`-dimensional cross-polytope, up to relabeling:
/// each vertex misses exactly one other, and the facets are all transversals
/// of those pairs. Returns the pairs.
pub fn cross_polytope_pairs(k: &SimplicialComplex) -> Option<Vec<VertexSet>> {
    let m = k.vertex_count();
    let n = (k.dim() + 1) as usize;
    if m != 2 * n || n == 0 || k.facets().len() != 1 << n {
        return None;
    }
    let pairs: Vec<VertexSet> = k.missing_faces(1).into_iter().map(|f| f.vertices).collect();
    let covered = pairs.iter().fold(VertexSet::EMPTY, |u, p| u.union(*p));
    if pairs.len() != n || covered.len() != m {
        return None;
    }
    k.facets().iter().all(|f| f.len() == n && pairs.iter().all(|p| p.intersection(*f).len() == 1)).then_some(pairs)
}

pub fn is_simplex_boundary(k: &SimplicialComplex) -> bool {
    let m = k.vertex_count();
    m >= 1 && k.dim() == m as i32 - 2 && k.facets().len() == m
}

/// The `q = ⌊(2d - 1) / 3⌋` low degrees in which missing-face cycles must
/// detect all of `H^{l,*}`.
pub fn ssndim_check(table: &BigradedTable) -> Result<SsndimReport> {
    let k = table.complex();
    let cert = certify_sphere(k)?;
    if !cert.is_sphere() {
        return Err(Error::NotCertified(format!("{:?}", cert.verdict)));
    }
    if is_simplex_boundary(k) {
        return Err(Error::NotApplicable("the boundary of a simplex has no missing faces below the top".into()));
    }
    let d = cert.dim;
    let q = (2 * d - 1).div_euclid(3);
    let mut degrees = Vec::new();
    for l in 0..=q {
        let ok = missing_face_evaluation(table, l)?.iter().all(|e| e.injective);
        degrees.push((l, ok));
    }
    let passed = degrees.iter().all(|&(_, ok)| ok);
    Ok(SsndimReport { q, degrees, passed })
}

/// Products in `K` are nontrivial but vanish after deleting any vertex.
pub fn weak_min_non_golod(table: &BigradedTable) -> Result<WeakGolod> {
    let trivial_products = has_trivial_products(table)?;
    let ground = table.ground();
    let deletions: Vec<(usize, bool)> = ground
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&v| Ok((v, has_trivial_products(&table.slice(ground.without(v)))?)))
        .collect::<Result<_>>()?;
    let weak_min_non_golod = !trivial_products && deletions.iter().all(|&(_, t)| t);
    Ok(WeakGolod { trivial_products, deletions, weak_min_non_golod })
}

fn require_sphere(k: &SimplicialComplex, dim: i32) -> Result<SphereCertificate> {
    let cert = certify_sphere(k)?;
    if !cert.is_sphere() || cert.dim != dim {
        let why = match &cert.verdict {
            SphereVerdict::Failed(r) => r.clone(),
            _ => format!("dimension {} instead of {dim}", cert.dim),
        };
        return Err(Error::NotCertified(why));
    }
    Ok(cert)
}

fn cross_polytope_presentation(pairs: &[VertexSet]) -> RingPresentation {
    let anchors: Vec<Bidegree> = pairs.iter().map(|&p| Bidegree { l: 0, subset: p }).collect();
    RingPresentation::exterior(&anchors)
}

/// 2-spheres: the octahedron gives `S^3 × S^3 × S^3`; otherwise the ring
/// is a connected sum of pairs exactly when the 1-skeleton is chordal,
/// exactly when `K` is obtained from a tetrahedron by subdividing facets.
pub fn classify_2sphere(table: &BigradedTable) -> Result<ClassificationReport> {
    let k = table.complex();
    let cert = require_sphere(k, 2)?;
    let mut report = ClassificationReport::informational(table, cert);
    report.weak_golod = Some(weak_min_non_golod(table)?);
    if let Some(pairs) = cross_polytope_pairs(k) {
        report.settle(table, Case::CrossPolytope, cross_polytope_presentation(&pairs))?;
        return Ok(report);
    }
    let reduction = recognize_dual_stacked(k)?;
    let pres = RingPresentation::from_decomposition(&mcgavran_decomposition(k.vertex_count(), 3)?);
    let pairs_verified = verify_presentation(table, &pres)?.passed;
    let eq = TwoSphereEquivalence { chordal: report.chordality.is_chordal(), reduction, pairs_verified };
    if !eq.consistent() {
        report.notes.push(format!(
            "chordal = {}, reducible = {}, pairs verified = {} disagree",
            eq.chordal,
            eq.reduction.is_some(),
            eq.pairs_verified
        ));
    }
    if let Chordality::NotChordal(cycle) = &report.chordality {
        report.notes.push(format!("chordless cycle {cycle:?} in the 1-skeleton"));
    } else {
        report.settle(table, Case::Chordal, pres)?;
    }
    report.two_sphere = Some(eq);
    Ok(report)
}

/// 3-spheres: cross-polytope, chordal 1-skeleton, or exactly two missing
/// edges forming a chordless 4-cycle; every other case is `None`.
pub fn classify_3sphere(table: &BigradedTable) -> Result<ClassificationReport> {
    let k = table.complex();
    let cert = require_sphere(k, 3)?;
    let mut report = ClassificationReport::informational(table, cert);
    report.notes.push("3-sphere certified by homology and links only".into());
    let dimension = k.vertex_count() + 4;
    if let Some(pairs) = cross_polytope_pairs(k) {
        report.settle(table, Case::CrossPolytope, cross_polytope_presentation(&pairs))?;
    } else if report.chordality.is_chordal() {
        report.settle(table, Case::Chordal, RingPresentation::pairs_from_betti(&table.betti(), dimension))?;
    } else if report.missing_edges.count() == 2
        && report.missing_edges.pairwise_disjoint
        && report.missing_edges.pairs_form_four_cycles
    {
        let (i1, i2) = (report.missing_edges.edges[0], report.missing_edges.edges[1]);
        let rest = k.vertex_set().difference(i1.union(i2));
        let pres = RingPresentation::triple_with_pairs(
            Bidegree { l: 0, subset: i1 },
            Bidegree { l: 0, subset: i2 },
            Bidegree { l: 1, subset: rest },
            &table.betti(),
            dimension,
        );
        report.settle(table, Case::TwoMissingEdges, pres)?;
    } else if let Chordality::NotChordal(cycle) = &report.chordality {
        report.notes.push(format!(
            "chordless cycle {cycle:?}; {} missing edges, pairwise disjoint = {}",
            report.missing_edges.count(),
            report.missing_edges.pairwise_disjoint
        ));
    }
    Ok(report)
}

fn classify_other(table: &BigradedTable, cert: SphereCertificate) -> Result<ClassificationReport> {
    let k = table.complex();
    let mut report = ClassificationReport::informational(table, cert);
    let dimension = k.vertex_count() + (k.dim() + 1) as usize;
    if let Some(pairs) = cross_polytope_pairs(k) {
        report.settle(table, Case::CrossPolytope, cross_polytope_presentation(&pairs))?;
    } else if is_simplex_boundary(k) {
        report.settle(table, Case::Chordal, RingPresentation::sphere(dimension))?;
    } else {
        let ss = ssndim_check(table)?;
        if ss.passed {
            report.settle(
                table,
                Case::MissingFaceGenerated,
                RingPresentation::pairs_from_betti(&table.betti(), dimension),
            )?;
        } else {
            report.notes.push("missing faces do not detect all low-degree classes".into());
        }
        report.ssndim = Some(ss);
    }
    Ok(report)
}

/// Classifies any complex. Non-spheres get an informational report with
/// case `None` and the certificate failure recorded.
pub fn classify(table: &BigradedTable) -> Result<ClassificationReport> {
    let k = table.complex();
    let cert = certify_sphere(k)?;
    if let SphereVerdict::Failed(why) = &cert.verdict {
        let mut r = ClassificationReport::informational(table, cert.clone());
        r.notes.push(format!("not a sphere: {why}"));
        return Ok(r);
    }
    match cert.dim {
        2 => classify_2sphere(table),
        3 => classify_3sphere(table),
        _ => classify_other(table, cert),
    }
}

/// Decomposes and classifies `k` with default options.
pub fn classify_complex(k: &SimplicialComplex) -> Result<ClassificationReport> {
    classify(&decompose_with(k, &DecomposeOptions::default())?)
}
