//! Exact reduced (co)homology over the integers.

pub mod chain;
pub mod matrix;
pub mod snf;

use serde::{Deserialize, Serialize};

pub use chain::ChainBasis;
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};

use crate::complex::SimplicialComplex;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variance {
    Homology,
    Cohomology,
}

/// One reduced (co)homology group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub degree: i32,
    pub rank: usize,
    /// Invariant factors `d_1 | d_2 | ...`, all greater than one.
    pub torsion: Vec<i64>,
    /// Closed representatives: one per torsion factor, in the same order,
    /// followed by one per free summand.
    pub generators: Vec<Vec<i64>>,
    /// Row `i` maps a closed (co)chain to its coordinate along generator `i`.
    pub projection: Matrix<i64>,
}

impl DegreeGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Order of generator `i`, or `None` when it spans a free summand.
    pub fn order(&self, i: usize) -> Option<i64> {
        self.torsion.get(i).copied()
    }

    pub fn free_generators(&self) -> &[Vec<i64>] {
        &self.generators[self.torsion.len()..]
    }

    /// Coordinates of the class of a closed (co)chain, with torsion
    /// coordinates reduced into `0..d`.
    pub fn class_coordinates(&self, v: &[i64]) -> Vec<i64> {
        let mut c = self.projection.mul_vec(v);
        for (x, d) in c.iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(*d);
        }
        c
    }

    /// Free part of [`Self::class_coordinates`].
    pub fn free_coordinates(&self, v: &[i64]) -> Vec<i64> {
        self.class_coordinates(v).split_off(self.torsion.len())
    }
}

/// Reduced (co)homology in every degree `-1..=dim`, with representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub variance: Variance,
    pub groups: Vec<DegreeGroup>,
}

impl HomologySummary {
    pub fn group(&self, degree: i32) -> Option<&DegreeGroup> {
        let k = degree + 1;
        if k < 0 {
            return None;
        }
        self.groups.get(k as usize)
    }

    pub fn rank(&self, degree: i32) -> usize {
        self.group(degree).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, degree: i32) -> &[i64] {
        self.group(degree).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(DegreeGroup::is_zero)
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }

    /// Nonzero groups only.
    pub fn nonzero(&self) -> impl Iterator<Item = &DegreeGroup> {
        self.groups.iter().filter(|g| !g.is_zero())
    }
}

pub fn reduced_homology(k: &SimplicialComplex) -> Result<HomologySummary> {
    summarize(&ChainBasis::new(k), Variance::Homology)
}

pub fn reduced_cohomology(k: &SimplicialComplex) -> Result<HomologySummary> {
    summarize(&ChainBasis::new(k), Variance::Cohomology)
}

/// (Co)homology of the complex spanned by `basis` in degrees
/// `-1..=top_degree`.
pub fn summarize(basis: &ChainBasis, variance: Variance) -> Result<HomologySummary> {
    let mut groups = Vec::new();
    for degree in -1..=basis.top_degree() {
        let (d_out, d_in) = match variance {
            Variance::Homology => (basis.boundary_matrix(degree), basis.boundary_matrix(degree + 1)),
            Variance::Cohomology => {
                (basis.boundary_matrix(degree + 1).transpose(), basis.boundary_matrix(degree).transpose())
            }
        };
        groups.push(group_from_maps(degree, &d_out, &d_in)?);
    }
    Ok(HomologySummary { variance, groups })
}

/// `ker d_out / im d_in` where `d_out * d_in = 0`.
fn group_from_maps(degree: i32, d_out: &Matrix<i64>, d_in: &Matrix<i64>) -> Result<DegreeGroup> {
    let n = d_out.cols();
    debug_assert_eq!(d_in.rows(), n);
    let out = smith_normal_form(d_out)?;
    let r = out.rank;
    let z = n - r;
    // Kernel coordinates: rows r.. of right_inv applied to a closed vector.
    let kernel_coords = Matrix::from_rows(z, n, (r..n).map(|i| out.right_inv.row(i).to_vec()).collect());
    let image = kernel_coords.mul(d_in);
    let inner = smith_normal_form(&image)?;
    let proj_all = inner.left.mul(&kernel_coords);

    let mut torsion = Vec::new();
    let mut torsion_gens = Vec::new();
    let mut free_gens = Vec::new();
    let mut torsion_rows = Vec::new();
    let mut free_rows = Vec::new();
    for i in 0..z {
        let d = if i < inner.rank { inner.diagonal[(i, i)] } else { 0 };
        if d == 1 {
            continue;
        }
        // generator = V[:, r..] * left_inv[:, i]
        let mut g = vec![0i64; n];
        for (t, row) in (r..n).enumerate() {
            let c = inner.left_inv[(t, i)];
            if c == 0 {
                continue;
            }
            for (p, gp) in g.iter_mut().enumerate() {
                *gp += out.right[(p, row)] * c;
            }
        }
        if d > 1 {
            torsion.push(d);
            torsion_gens.push(g);
            torsion_rows.push(proj_all.row(i).to_vec());
        } else {
            free_gens.push(g);
            free_rows.push(proj_all.row(i).to_vec());
        }
    }
    let rank = free_gens.len();
    let mut generators = torsion_gens;
    generators.extend(free_gens);
    for g in generators.iter_mut() {
        shrink_support(g, d_in);
    }
    let mut rows = torsion_rows;
    rows.extend(free_rows);
    let projection = Matrix::from_rows(rows.len(), n, rows);
    Ok(DegreeGroup { degree, rank, torsion, generators, projection })
}

/// Greedily adds columns of `d_in` (boundaries) while that shrinks the
/// support. The class is unchanged; the result is not canonical.
fn shrink_support(g: &mut [i64], d_in: &Matrix<i64>) {
    let support = |v: &[i64]| v.iter().filter(|&&x| x != 0).count();
    let cols: Vec<Vec<i64>> = (0..d_in.cols()).map(|j| d_in.column(j)).collect();
    let mut best = support(g);
    for _ in 0..4 {
        let mut improved = false;
        for col in &cols {
            for sign in [1i64, -1] {
                let cand: Vec<i64> = g.iter().zip(col).map(|(a, b)| a + sign * b).collect();
                let s = support(&cand);
                if s < best {
                    g.copy_from_slice(&cand);
                    best = s;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
}
