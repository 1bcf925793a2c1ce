use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};

use super::certify::certify_sphere;

/// Undoes stellar subdivisions of facets: repeatedly removes a vertex of
/// degree three (largest label first) and fills its link triangle. Returns
/// the removed vertices when this reaches the boundary of a tetrahedron,
/// `None` when it gets stuck.
pub fn recognize_dual_stacked(k: &SimplicialComplex) -> Result<Option<Vec<usize>>> {
    let cert = certify_sphere(k)?;
    if !cert.is_sphere() || cert.dim != 2 {
        return Err(Error::NotApplicable("dual-stacked recognition needs a 2-sphere".into()));
    }
    let mut facets: Vec<VertexSet> = k.facets().to_vec();
    let mut vertices = k.vertex_set();
    let mut removed = Vec::new();
    while vertices.len() > 4 {
        let found = vertices.to_vec().into_iter().rev().find_map(|v| {
            let star: Vec<VertexSet> = facets.iter().copied().filter(|f| f.contains(v)).collect();
            if star.len() != 3 {
                return None;
            }
            let link = star.iter().fold(VertexSet::EMPTY, |u, f| u.union(*f)).without(v);
            (link.len() == 3 && !facets.contains(&link)).then_some((v, link))
        });
        let Some((v, link)) = found else {
            return Ok(None);
        };
        facets.retain(|f| !f.contains(v));
        facets.push(link);
        vertices = vertices.without(v);
        removed.push(v);
    }
    Ok(Some(removed))
}
