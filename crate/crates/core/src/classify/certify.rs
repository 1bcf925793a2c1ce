use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::Result;
use crate::homology::reduced_homology;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphereVerdict {
    /// A genuine sphere (dimension at most 2, where the checks are exact).
    Certified,
    /// All checks pass, but they only establish a homology manifold with the
    /// homology of a sphere.
    CertifiedHomology,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereCertificate {
    pub dim: i32,
    pub pure: bool,
    /// Every codimension-one face lies in exactly two facets.
    pub pseudomanifold: bool,
    pub strongly_connected: bool,
    /// Every vertex link passes the same test one dimension down.
    pub links: bool,
    pub homology_sphere: bool,
    pub verdict: SphereVerdict,
}

impl SphereCertificate {
    pub fn is_sphere(&self) -> bool {
        !matches!(self.verdict, SphereVerdict::Failed(_))
    }
}

fn ridge_incidence(k: &SimplicialComplex) -> HashMap<VertexSet, Vec<usize>> {
    let mut ridges: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for (i, f) in k.facets().iter().enumerate() {
        for v in f.iter() {
            ridges.entry(f.without(v)).or_default().push(i);
        }
    }
    ridges
}

fn facets_connected(n: usize, ridges: &HashMap<VertexSet, Vec<usize>>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for fs in ridges.values() {
        for w in fs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (0..n).all(|i| find(&mut parent, i) == root)
}

/// Pure, pseudomanifold, strongly connected, links are spheres one
/// dimension down, and reduced homology is `Z` in the top degree only.
/// Exact up to dimension 2; a homology-sphere certificate above.
pub fn certify_sphere(k: &SimplicialComplex) -> Result<SphereCertificate> {
    let dim = k.dim();
    let fail = |c: SphereCertificate, why: &str| SphereCertificate { verdict: SphereVerdict::Failed(why.into()), ..c };
    let mut c = SphereCertificate {
        dim,
        pure: false,
        pseudomanifold: false,
        strongly_connected: false,
        links: false,
        homology_sphere: false,
        verdict: SphereVerdict::Certified,
    };
    if dim < 0 {
        // The empty complex is the (-1)-sphere.
        return Ok(SphereCertificate {
            pure: true,
            pseudomanifold: true,
            strongly_connected: true,
            links: true,
            homology_sphere: true,
            ..c
        });
    }
    c.pure = k.is_pure();
    if !c.pure {
        return Ok(fail(c, "not pure"));
    }
    let ridges = ridge_incidence(k);
    c.pseudomanifold = ridges.values().all(|f| f.len() == 2);
    if !c.pseudomanifold {
        return Ok(fail(c, "some codimension-one face does not lie in exactly two facets"));
    }
    c.strongly_connected = facets_connected(k.facets().len(), &ridges);
    if !c.strongly_connected {
        return Ok(fail(c, "not strongly connected"));
    }
    for v in 1..=k.vertex_count() {
        let link = certify_sphere(&k.link(v).complex)?;
        if !link.is_sphere() || link.dim != dim - 1 {
            return Ok(fail(c, &format!("link of vertex {v} is not a {}-sphere", dim - 1)));
        }
    }
    c.links = true;
    let h = reduced_homology(k)?;
    c.homology_sphere = h.groups.iter().all(|g| g.torsion.is_empty() && g.rank == usize::from(g.degree == dim));
    if !c.homology_sphere {
        return Ok(fail(c, &format!("reduced homology differs from that of S^{dim}")));
    }
    c.verdict = if dim <= 2 { SphereVerdict::Certified } else { SphereVerdict::CertifiedHomology };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheres_and_non_spheres() {
        let c = certify_sphere(&SimplicialComplex::simplex_boundary(5)).unwrap();
        assert_eq!((c.dim, c.verdict), (3, SphereVerdict::CertifiedHomology));
        let j = SimplicialComplex::polygon(4).join(&SimplicialComplex::simplex_boundary(3));
        assert_eq!(certify_sphere(&j).unwrap().verdict, SphereVerdict::CertifiedHomology);
        for k in [SimplicialComplex::polygon(7), SimplicialComplex::cross_polytope(3)] {
            assert_eq!(certify_sphere(&k).unwrap().verdict, SphereVerdict::Certified);
        }
        let pts = SimplicialComplex::new(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(certify_sphere(&pts).unwrap().verdict, SphereVerdict::Certified);
        assert!(certify_sphere(&SimplicialComplex::empty()).unwrap().is_sphere());
    }

    #[test]
    fn failures_name_the_first_broken_check() {
        let rp2: Vec<Vec<usize>> = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [2, 4, 5],
            [2, 4, 6],
            [3, 4, 6],
            [3, 5, 6],
        ]
        .iter()
        .map(|x| x.to_vec())
        .collect();
        let c = certify_sphere(&SimplicialComplex::new(6, &rp2).unwrap()).unwrap();
        assert!(c.links && !c.homology_sphere && !c.is_sphere());

        let c = certify_sphere(&SimplicialComplex::simplex(3)).unwrap();
        assert!(!c.pseudomanifold);
        let c = certify_sphere(&SimplicialComplex::new(3, &[vec![1, 2], vec![3]]).unwrap()).unwrap();
        assert!(!c.pure);
        // Two disjoint triangles' boundaries.
        let k = SimplicialComplex::new(6, &[vec![1, 2], vec![2, 3], vec![1, 3], vec![4, 5], vec![5, 6], vec![4, 6]])
            .unwrap();
        let c = certify_sphere(&k).unwrap();
        assert!(c.pseudomanifold && !c.strongly_connected);
    }
}
