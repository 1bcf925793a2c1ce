//! Presentations of connected sums of products of spheres and their
//! verification against a computed table.
//!
//! A presentation is a list of blocks. Each block is a set of generators
//! whose full product is the fundamental class `c`; classes from different
//! blocks multiply to zero. A block of two generators is a hyperbolic pair.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::decomposition::{decomposition_to_betti, SphereDecomposition, Summand};
use crate::complex::VertexSet;
use crate::error::Result;
use crate::hochster::cup_product;
use crate::hochster::{pairing_matrix, total_degree, BigradedTable, ClassRef, CohomologyClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PresentationKind {
    /// Hyperbolic pairs `a_i · b_i = c` only.
    Pairs,
    /// `a1 · a2 · b = c` plus hyperbolic pairs.
    TripleWithPairs,
    /// A single product of spheres.
    ExteriorProduct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// Lower-degree member of a pair.
    Lower,
    /// Upper-degree member of a pair.
    Upper,
    /// Member of the special triple.
    Triple,
    /// Factor of a product of spheres.
    Factor,
}

/// Where a generator must live in the bigraded table, when that is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub l: i32,
    pub subset: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
    pub role: Role,
    pub anchor: Option<Bidegree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPresentation {
    pub kind: PresentationKind,
    pub dimension: usize,
    pub generators: Vec<Generator>,
    /// Generator indices per block.
    pub blocks: Vec<Vec<usize>>,
    /// One monomial per block, each equal to `c`.
    pub relations: Vec<String>,
}

impl RingPresentation {
    fn build(kind: PresentationKind, dimension: usize, blocks: Vec<Vec<Generator>>) -> Self {
        let mut generators = Vec::new();
        let mut idx = Vec::new();
        let mut relations = Vec::new();
        for b in blocks {
            let names: Vec<&str> = b.iter().map(|g| g.name.as_str()).collect();
            relations.push(format!("{} = c", names.join("·")));
            idx.push((generators.len()..generators.len() + b.len()).collect());
            generators.extend(b);
        }
        RingPresentation { kind, dimension, generators, blocks: idx, relations }
    }

    fn pair_blocks(pairs: &[(usize, usize)], prefix: (&str, &str), offset: usize) -> Vec<Vec<Generator>> {
        pairs
            .iter()
            .enumerate()
            .map(|(i, &(p, q))| {
                vec![
                    Generator {
                        name: format!("{}{}", prefix.0, i + offset),
                        degree: p,
                        role: Role::Lower,
                        anchor: None,
                    },
                    Generator {
                        name: format!("{}{}", prefix.1, i + offset),
                        degree: q,
                        role: Role::Upper,
                        anchor: None,
                    },
                ]
            })
            .collect()
    }

    /// Hyperbolic pairs `(p, dimension - p)` matching a Betti table: `b_p`
    /// pairs below the middle degree and `b_p / 2` in it.
    fn pairs_for(betti: &BTreeMap<usize, usize>, dimension: usize) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (&p, &r) in betti.range(1..dimension) {
            let count = match (2 * p).cmp(&dimension) {
                std::cmp::Ordering::Less => r,
                std::cmp::Ordering::Equal => r / 2,
                std::cmp::Ordering::Greater => 0,
            };
            pairs.extend(std::iter::repeat_n((p, dimension - p), count));
        }
        pairs
    }

    /// The sphere `S^dimension`.
    pub fn sphere(dimension: usize) -> Self {
        Self::build(PresentationKind::Pairs, dimension, Vec::new())
    }

    pub fn pairs_from_betti(betti: &BTreeMap<usize, usize>, dimension: usize) -> Self {
        let pairs = Self::pairs_for(betti, dimension);
        Self::build(PresentationKind::Pairs, dimension, Self::pair_blocks(&pairs, ("a", "b"), 1))
    }

    /// One block per summand copy. Two-factor summands become pairs.
    pub fn from_decomposition(dec: &SphereDecomposition) -> Self {
        let mut blocks = Vec::new();
        let mut n = 0;
        let mut all_pairs = true;
        for s in &dec.summands {
            all_pairs &= s.spheres.len() == 2;
            for _ in 0..s.count {
                n += 1;
                if s.spheres.len() == 2 {
                    blocks.extend(Self::pair_blocks(&[(s.spheres[0], s.spheres[1])], ("a", "b"), n));
                } else {
                    blocks.push(
                        s.spheres
                            .iter()
                            .enumerate()
                            .map(|(j, &d)| Generator {
                                name: format!("x{n}_{}", j + 1),
                                degree: d,
                                role: Role::Factor,
                                anchor: None,
                            })
                            .collect(),
                    );
                }
            }
        }
        let kind = if all_pairs { PresentationKind::Pairs } else { PresentationKind::ExteriorProduct };
        Self::build(kind, dec.dimension, blocks)
    }

    /// `S^{d_1} × ... × S^{d_k}` with each factor tied to a bidegree.
    pub fn exterior(factors: &[Bidegree]) -> Self {
        let block: Vec<Generator> = factors
            .iter()
            .enumerate()
            .map(|(i, b)| Generator {
                name: format!("x{}", i + 1),
                degree: total_degree(b.l, b.subset),
                role: Role::Factor,
                anchor: Some(*b),
            })
            .collect();
        let dimension = block.iter().map(|g| g.degree).sum();
        Self::build(PresentationKind::ExteriorProduct, dimension, vec![block])
    }

    /// `a1 · a2 · b = c` with the three generators tied to bidegrees, plus
    /// hyperbolic pairs filling up the rest of `betti`.
    pub fn triple_with_pairs(
        a1: Bidegree,
        a2: Bidegree,
        b: Bidegree,
        betti: &BTreeMap<usize, usize>,
        dimension: usize,
    ) -> Self {
        let triple: Vec<Generator> = [("a1", a1), ("a2", a2), ("b", b)]
            .into_iter()
            .map(|(name, bd)| Generator {
                name: name.into(),
                degree: total_degree(bd.l, bd.subset),
                role: Role::Triple,
                anchor: Some(bd),
            })
            .collect();
        let mut rest = betti.clone();
        let degs: Vec<usize> = triple.iter().map(|g| g.degree).collect();
        for mask in 1..7u32 {
            let d: usize = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| degs[i]).sum();
            if let Some(r) = rest.get_mut(&d) {
                *r = r.saturating_sub(1);
            }
        }
        let pairs = Self::pairs_for(&rest, dimension);
        let mut blocks = vec![triple];
        blocks.extend(Self::pair_blocks(&pairs, ("p", "q"), 1));
        Self::build(PresentationKind::TripleWithPairs, dimension, blocks)
    }

    /// Number of hyperbolic pairs besides any triple or product block.
    pub fn pair_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 2).count()
    }

    pub fn decomposition(&self) -> SphereDecomposition {
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut order = Vec::new();
        for b in &self.blocks {
            let spheres: Vec<usize> = b.iter().map(|&i| self.generators[i].degree).collect();
            if !counts.contains_key(&spheres) {
                order.push(spheres.clone());
            }
            *counts.entry(spheres).or_insert(0) += 1;
        }
        SphereDecomposition {
            dimension: self.dimension,
            summands: order.into_iter().map(|s| Summand { count: counts[&s], spheres: s }).collect(),
        }
    }

    /// Graded ranks of the presented ring.
    pub fn betti(&self) -> BTreeMap<usize, usize> {
        decomposition_to_betti(&self.decomposition(), self.dimension)
            .expect("blocks of a presentation sum to its dimension")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationVerdict {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl PresentationVerdict {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_RANKS: &str = "graded ranks";
pub const CHECK_TORSION: &str = "torsion-free";
pub const CHECK_PAIRINGS: &str = "duality pairings";
pub const CHECK_PRODUCTS: &str = "vanishing products";
pub const CHECK_ANCHORED: &str = "anchored products";

/// Bidegree of the product of the anchored generators in `mask`.
fn monomial_bidegree(anchors: &[Bidegree], mask: u32) -> Bidegree {
    let parts: Vec<&Bidegree> = (0..anchors.len()).filter(|i| mask >> i & 1 == 1).map(|i| &anchors[i]).collect();
    Bidegree {
        l: parts.iter().map(|b| b.l).sum::<i32>() + parts.len() as i32 - 1,
        subset: parts.iter().fold(VertexSet::EMPTY, |u, b| u.union(b.subset)),
    }
}

fn ranks_check(table: &BigradedTable, pres: &RingPresentation) -> Check {
    let (want, have) = (pres.betti(), table.betti());
    let passed = want == have;
    let detail = if passed { format!("{have:?}") } else { format!("presented {want:?}, computed {have:?}") };
    Check { name: CHECK_RANKS.into(), passed, detail }
}

fn torsion_check(table: &BigradedTable) -> Check {
    let bad: Vec<String> = table
        .bigraded()
        .into_iter()
        .filter(|b| !b.torsion.is_empty())
        .map(|b| format!("H^({},{}) torsion {:?}", b.l, b.subset, b.torsion))
        .collect();
    Check {
        name: CHECK_TORSION.into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "no torsion".into() } else { bad.join("; ") },
    }
}

fn pairings_check(table: &BigradedTable) -> Result<Check> {
    let name = CHECK_PAIRINGS.to_string();
    let mut blocks = 0;
    for b in table.bigraded() {
        if b.rank == 0 {
            continue;
        }
        let p = match pairing_matrix(table, b.l, b.subset) {
            Ok(p) => p,
            Err(e) => return Ok(Check { name, passed: false, detail: e.to_string() }),
        };
        if !p.is_unimodular() {
            return Ok(Check {
                name,
                passed: false,
                detail: format!(
                    "pairing H^({},{}) x H^({},{}) is {}x{} and not unimodular",
                    p.degree,
                    p.subset,
                    p.co_degree,
                    p.co_subset,
                    p.matrix.rows(),
                    p.matrix.cols()
                ),
            });
        }
        blocks += 1;
    }
    Ok(Check { name, passed: true, detail: format!("{blocks} unimodular blocks") })
}

/// Products below the top degree vanish except between monomials of one
/// anchored block.
fn products_check(table: &BigradedTable, pres: &RingPresentation) -> Result<Check> {
    let mut allowed: HashMap<(Bidegree, Bidegree), ()> = HashMap::new();
    for block in &pres.blocks {
        let anchors: Option<Vec<Bidegree>> = block.iter().map(|&i| pres.generators[i].anchor).collect();
        let Some(anchors) = anchors else { continue };
        let full = (1u32 << anchors.len()) - 1;
        for s in 1..full {
            for t in 1..full {
                if s & t == 0 && (s | t) != full {
                    allowed.insert((monomial_bidegree(&anchors, s), monomial_bidegree(&anchors, t)), ());
                }
            }
        }
    }
    let refs = table.generator_refs();
    let mut checked = 0;
    for (i, &x) in refs.iter().enumerate() {
        for &y in &refs[i + 1..] {
            let deg = x.total_degree() + y.total_degree();
            if deg >= pres.dimension {
                continue;
            }
            let Some((_, coords)) = table.product_of(x, y)? else { continue };
            checked += 1;
            if coords.iter().all(|&c| c == 0) {
                continue;
            }
            let key = (Bidegree { l: x.degree, subset: x.subset }, Bidegree { l: y.degree, subset: y.subset });
            if !allowed.contains_key(&key) {
                return Ok(Check {
                    name: CHECK_PRODUCTS.into(),
                    passed: false,
                    detail: format!(
                        "nonzero product of H^({},{}) and H^({},{}) in degree {deg}",
                        x.degree, x.subset, y.degree, y.subset
                    ),
                });
            }
        }
    }
    Ok(Check { name: CHECK_PRODUCTS.into(), passed: true, detail: format!("{checked} candidate products checked") })
}

/// Every monomial of an anchored block is a generator of its (rank one)
/// bidegree, and the full product pairs to ±1 with `c`.
fn anchored_check(table: &BigradedTable, pres: &RingPresentation) -> Result<Check> {
    let name = CHECK_ANCHORED.to_string();
    let fail = |detail: String| Ok(Check { name: CHECK_ANCHORED.into(), passed: false, detail });
    let mut blocks = 0;
    for block in &pres.blocks {
        let anchors: Option<Vec<Bidegree>> = block.iter().map(|&i| pres.generators[i].anchor).collect();
        let Some(anchors) = anchors else { continue };
        blocks += 1;
        let full = (1u32 << anchors.len()) - 1;
        for mask in 1..=full {
            let mut acc: Option<CohomologyClass> = None;
            for (i, a) in anchors.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    continue;
                }
                if table.group(a.l, a.subset).map(|g| (g.rank, g.torsion.len())) != Some((1, 0)) {
                    return fail(format!("H^({},{}) is not Z", a.l, a.subset));
                }
                let g = table.class(ClassRef { degree: a.l, subset: a.subset, index: 0 }).expect("rank one");
                acc = Some(match acc {
                    None => g,
                    Some(p) => cup_product(table, &p, &g)?,
                });
            }
            let p = acc.expect("nonempty monomial");
            if mask == full {
                let v = table.pair_with_fundamental(&p)?;
                if v.abs() != 1 {
                    return fail(format!("full product pairs to {v} with the fundamental class"));
                }
            } else {
                let b = monomial_bidegree(&anchors, mask);
                let coords = table.coordinates(&p)?;
                if coords.len() != 1 || coords[0].abs() != 1 {
                    return fail(format!("monomial in H^({},{}) has coordinates {coords:?}", b.l, b.subset));
                }
            }
        }
    }
    Ok(Check { name, passed: true, detail: format!("{blocks} anchored blocks") })
}

/// Checks that the ring computed in `table` is the one presented: equal
/// graded ranks, no torsion, unimodular duality pairings, vanishing of all
/// products the presentation does not allow, and the anchored monomials.
pub fn verify_presentation(table: &BigradedTable, pres: &RingPresentation) -> Result<PresentationVerdict> {
    let mut checks = vec![ranks_check(table, pres), torsion_check(table)];
    if checks.iter().all(|c| c.passed) {
        checks.push(pairings_check(table)?);
        checks.push(products_check(table, pres)?);
        checks.push(anchored_check(table, pres)?);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(PresentationVerdict { passed, checks })
}
