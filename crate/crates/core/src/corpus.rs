//! Named complexes used as fixtures and by `generate builtin`.

use crate::complex::{generate_stacked_sphere, SimplicialComplex, VertexSet};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: &[&str] = &[
    "tetrahedron",
    "simplex4",
    "octahedron",
    "5dimex",
    "c4-join-triangle",
    "c5-join-triangle",
    "cross-polytope4",
    "rp2",
    "torus7",
    "barnette",
];

fn from_lists(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
    let f: Vec<Vec<usize>> = facets.iter().map(|x| x.to_vec()).collect();
    SimplicialComplex::new(m, &f).expect("builtin facet list is valid")
}

/// `∂Δ^3` with the facets `{1,2,3}` and then `{1,2,4}` subdivided.
pub fn five_dim_example() -> SimplicialComplex {
    SimplicialComplex::simplex_boundary(4)
        .stellar_subdivide_facet(VertexSet::from_vertices([1, 2, 3]))
        .and_then(|k| k.stellar_subdivide_facet(VertexSet::from_vertices([1, 2, 4])))
        .expect("facets exist")
}

/// Six-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    from_lists(
        6,
        &[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 2, 6],
            &[2, 3, 5],
            &[2, 4, 5],
            &[2, 4, 6],
            &[3, 4, 6],
            &[3, 5, 6],
        ],
    )
}

/// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    let mut f = Vec::new();
    for i in 0..7 {
        for (a, b) in [(1, 3), (2, 3)] {
            f.push(vec![i + 1, (i + a) % 7 + 1, (i + b) % 7 + 1]);
        }
    }
    SimplicialComplex::new(7, &f).expect("torus facets are valid")
}

/// Barnette's non-polytopal 3-sphere on eight vertices.
pub fn barnette() -> SimplicialComplex {
    from_lists(
        8,
        &[
            &[1, 2, 4, 5],
            &[2, 3, 5, 6],
            &[1, 3, 4, 6],
            &[1, 2, 3, 7],
            &[4, 5, 6, 7],
            &[1, 2, 4, 7],
            &[2, 4, 5, 7],
            &[2, 3, 5, 7],
            &[3, 5, 6, 7],
            &[1, 3, 6, 7],
            &[1, 4, 6, 7],
            &[1, 2, 3, 8],
            &[4, 5, 6, 8],
            &[1, 2, 5, 8],
            &[1, 4, 5, 8],
            &[2, 3, 6, 8],
            &[2, 5, 6, 8],
            &[1, 3, 4, 8],
            &[3, 4, 6, 8],
        ],
    )
}

pub fn builtin(name: &str) -> Result<SimplicialComplex> {
    Ok(match name {
        "tetrahedron" => SimplicialComplex::simplex_boundary(4),
        "simplex4" => SimplicialComplex::simplex_boundary(5),
        "octahedron" => SimplicialComplex::cross_polytope(3),
        "5dimex" => five_dim_example(),
        "c4-join-triangle" => SimplicialComplex::polygon(4).join(&SimplicialComplex::simplex_boundary(3)),
        "c5-join-triangle" => SimplicialComplex::polygon(5).join(&SimplicialComplex::simplex_boundary(3)),
        "cross-polytope4" => SimplicialComplex::cross_polytope(4),
        "rp2" => rp2(),
        "torus7" => torus7(),
        "barnette" => barnette(),
        _ => return Err(Error::Unknown(name.to_string())),
    })
}

/// Builtins plus a few generated spheres and suspensions: the fixture set
/// for whole-corpus property checks.
pub fn standard_corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> =
        BUILTIN_NAMES.iter().map(|n| (n.to_string(), builtin(n).expect("listed builtin"))).collect();
    let s0 = from_lists(2, &[&[1], &[2]]);
    out.push(("pentagon".into(), SimplicialComplex::polygon(5)));
    out.push(("c5-suspension".into(), SimplicialComplex::polygon(5).join(&s0)));
    out.push(("c6-suspension".into(), SimplicialComplex::polygon(6).join(&s0)));
    let sub_oct = SimplicialComplex::cross_polytope(3)
        .stellar_subdivide_facet(VertexSet::from_vertices([1, 3, 5]))
        .expect("facet of the octahedron");
    out.push(("subdivided-octahedron".into(), sub_oct));
    for (d, cuts, seed) in [(2, 5, 1), (2, 8, 2), (3, 3, 3), (3, 5, 4)] {
        out.push((
            format!("stacked-d{d}-c{cuts}-s{seed}"),
            generate_stacked_sphere(d, cuts, seed).expect("valid parameters"),
        ));
    }
    out
}
