use std::collections::HashMap;

use super::matrix::Matrix;
use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};

/// Ordered simplices of a complex in each degree `-1..=dim`. Degree `-1`
/// holds only the empty simplex. Within a degree, simplices are sorted
/// lexicographically by their vertex lists (in the labels of the complex
/// they were taken from).
#[derive(Clone, Debug)]
pub struct ChainBasis {
    by_degree: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, usize>>,
}

impl ChainBasis {
    pub fn new(k: &SimplicialComplex) -> Self {
        Self::from_faces(k.faces_by_dim())
    }

    /// Basis of the full subcomplex on `j`, keeping the original labels.
    pub fn restricted(all_faces: &[Vec<VertexSet>], j: VertexSet) -> Self {
        let by_degree: Vec<Vec<VertexSet>> = all_faces
            .iter()
            .map(|faces| faces.iter().copied().filter(|f| f.is_subset(j)).collect::<Vec<_>>())
            .collect();
        let top = by_degree.iter().rposition(|v| !v.is_empty()).unwrap_or(0);
        Self::from_faces(by_degree.into_iter().take(top + 1).collect())
    }

    /// `faces[k + 1]` must hold the `k`-faces, sorted lexicographically.
    pub fn from_faces(by_degree: Vec<Vec<VertexSet>>) -> Self {
        let index = by_degree.iter().map(|v| v.iter().enumerate().map(|(i, s)| (*s, i)).collect()).collect();
        ChainBasis { by_degree, index }
    }

    /// Highest degree with a nonempty basis.
    pub fn top_degree(&self) -> i32 {
        self.by_degree.len() as i32 - 2
    }

    pub fn simplices(&self, degree: i32) -> &[VertexSet] {
        let k = degree + 1;
        if k < 0 || k as usize >= self.by_degree.len() {
            &[]
        } else {
            &self.by_degree[k as usize]
        }
    }

    pub fn size(&self, degree: i32) -> usize {
        self.simplices(degree).len()
    }

    pub fn position(&self, degree: i32, s: VertexSet) -> Option<usize> {
        let k = degree + 1;
        if k < 0 {
            return None;
        }
        self.index.get(k as usize)?.get(&s).copied()
    }

    /// The boundary map `C_degree -> C_{degree-1}` with
    /// `∂[v_0..v_k] = Σ (-1)^i [v_0..^v_i..v_k]`.
    pub fn boundary_matrix(&self, degree: i32) -> Matrix<i64> {
        let rows = self.size(degree - 1);
        let cols = self.size(degree);
        let mut m = Matrix::zeros(rows, cols);
        for (c, s) in self.simplices(degree).iter().enumerate() {
            for (i, v) in s.iter().enumerate() {
                let face = s.without(v);
                let r = self.position(degree - 1, face).expect("basis is closed under faces");
                m[(r, c)] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    /// Boundary of a chain of the given degree.
    pub fn boundary(&self, degree: i32, chain: &[i64]) -> Result<Vec<i64>> {
        self.check_len(degree, chain)?;
        let mut out = vec![0i64; self.size(degree - 1)];
        for (c, s) in self.simplices(degree).iter().enumerate() {
            if chain[c] == 0 {
                continue;
            }
            for (i, v) in s.iter().enumerate() {
                let r = self.position(degree - 1, s.without(v)).expect("closed under faces");
                out[r] += if i % 2 == 0 { chain[c] } else { -chain[c] };
            }
        }
        Ok(out)
    }

    /// Coboundary of a cochain: `(δc)(σ) = c(∂σ)`.
    pub fn coboundary(&self, degree: i32, cochain: &[i64]) -> Result<Vec<i64>> {
        self.check_len(degree, cochain)?;
        let up = degree + 1;
        Ok(self
            .simplices(up)
            .iter()
            .map(|s| {
                s.iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let r = self.position(degree, s.without(v)).expect("closed under faces");
                        if i % 2 == 0 {
                            cochain[r]
                        } else {
                            -cochain[r]
                        }
                    })
                    .sum()
            })
            .collect())
    }

    pub fn is_cycle(&self, degree: i32, chain: &[i64]) -> Result<bool> {
        Ok(self.boundary(degree, chain)?.iter().all(|&x| x == 0))
    }

    pub fn is_cocycle(&self, degree: i32, cochain: &[i64]) -> Result<bool> {
        Ok(self.coboundary(degree, cochain)?.iter().all(|&x| x == 0))
    }

    fn check_len(&self, degree: i32, v: &[i64]) -> Result<()> {
        let expected = self.size(degree);
        if v.len() != expected {
            return Err(Error::BasisMismatch { expected, got: v.len() });
        }
        Ok(())
    }

    /// Kronecker pairing `Σ c(σ) γ(σ)` of a `degree`-cochain with a
    /// `degree`-chain.
    pub fn evaluate(&self, degree: i32, cochain: &[i64], chain: &[i64]) -> Result<i64> {
        self.check_len(degree, cochain)?;
        self.check_len(degree, chain)?;
        Ok(cochain.iter().zip(chain).map(|(a, b)| a * b).sum())
    }

    /// Pairing of a cohomology class with a homology class; both
    /// representatives are checked to be closed.
    pub fn evaluate_classes(&self, degree: i32, cocycle: &[i64], cycle: &[i64]) -> Result<i64> {
        if !self.is_cocycle(degree, cocycle)? {
            return Err(Error::NotApplicable("cochain is not a cocycle".into()));
        }
        if !self.is_cycle(degree, cycle)? {
            return Err(Error::NotApplicable("chain is not a cycle".into()));
        }
        self.evaluate(degree, cocycle, cycle)
    }

    /// The cycle `∂Δ_I` of a missing face `I`, in degree `|I| - 2`. `k` is
    /// the complex this basis was built from (or a complex containing it
    /// as a full subcomplex with the same labels).
    pub fn missing_face_cycle(&self, k: &SimplicialComplex, face: VertexSet) -> Result<Vec<i64>> {
        let is_missing = !face.is_empty()
            && face.is_subset(k.vertex_set())
            && !k.is_face(face)
            && face.iter().all(|v| k.is_face(face.without(v)));
        if !is_missing {
            return Err(Error::NotMissingFace(face));
        }
        let degree = face.len() as i32 - 2;
        let mut chain = vec![0i64; self.size(degree)];
        for (i, v) in face.iter().enumerate() {
            let pos = self.position(degree, face.without(v)).ok_or(Error::NotMissingFace(face))?;
            chain[pos] = if i % 2 == 0 { 1 } else { -1 };
        }
        debug_assert!(self.is_cycle(degree, &chain).unwrap());
        Ok(chain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    #[test]
    fn boundary_squares_to_zero() {
        for k in [
            SimplicialComplex::simplex_boundary(5),
            SimplicialComplex::cross_polytope(3),
            SimplicialComplex::polygon(6),
            SimplicialComplex::simplex(4),
        ] {
            let b = ChainBasis::new(&k);
            for d in 0..=k.dim() {
                let prod = b.boundary_matrix(d).mul(&b.boundary_matrix(d + 1));
                assert!(prod.is_zero(), "∂∂ != 0 in degree {d}");
            }
        }
    }

    #[test]
    fn degree_minus_one_basis() {
        let b = ChainBasis::new(&SimplicialComplex::polygon(4));
        assert_eq!(b.simplices(-1), &[VertexSet::EMPTY]);
        let d0 = b.boundary_matrix(0);
        assert_eq!(d0.rows(), 1);
        assert_eq!(d0.row(0), &[1, 1, 1, 1]);
        let e = ChainBasis::new(&SimplicialComplex::empty());
        assert_eq!(e.top_degree(), -1);
        assert_eq!(e.size(-1), 1);
    }

    #[test]
    fn missing_face_cycles() {
        let c4 = SimplicialComplex::polygon(4);
        let b = ChainBasis::new(&c4);
        // ∂[1,3] = [3] - [1]
        assert_eq!(b.missing_face_cycle(&c4, vs(&[1, 3])).unwrap(), vec![-1, 0, 1, 0]);
        assert!(matches!(b.missing_face_cycle(&c4, vs(&[1, 2, 3, 4])), Err(Error::NotMissingFace(_))));
        assert!(b.missing_face_cycle(&c4, vs(&[1, 2])).is_err());

        let s = SimplicialComplex::simplex_boundary(4);
        let b = ChainBasis::new(&s);
        let z = b.missing_face_cycle(&s, vs(&[1, 2, 3, 4])).unwrap();
        assert_eq!(z.iter().filter(|&&x| x != 0).count(), 4);
        assert!(b.is_cycle(2, &z).unwrap());
    }

    #[test]
    fn evaluation_examples() {
        let tet = SimplicialComplex::simplex_boundary(4);
        let b = ChainBasis::new(&tet);
        // ∂Δ_{123} inside the 1-skeleton pairs with an edge indicator.
        let skel = tet.skeleton(1);
        let bs = ChainBasis::new(&skel);
        let cyc = bs.missing_face_cycle(&skel, vs(&[1, 2, 3])).unwrap();
        let mut c = vec![0; bs.size(1)];
        c[bs.position(1, vs(&[1, 3])).unwrap()] = 1;
        assert_eq!(bs.evaluate(1, &c, &cyc).unwrap().abs(), 1);

        // A coboundary pairs to zero with any cycle.
        let mut f = vec![0; b.size(1)];
        f[0] = 3;
        f[4] = -2;
        let cob = b.coboundary(1, &f).unwrap();
        let z = b.missing_face_cycle(&tet, vs(&[1, 2, 3, 4])).unwrap();
        assert_eq!(b.evaluate(2, &cob, &z).unwrap(), 0);

        assert!(matches!(b.evaluate(2, &cob, &[1, 2]), Err(Error::BasisMismatch { .. })));
    }
}
