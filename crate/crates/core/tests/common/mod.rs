//! Independent oracles: homology ranks over a prime field, computed from
//! facet lists by brute-force face enumeration.

#![allow(dead_code)]

use std::collections::BTreeMap;

use mal_core::{SimplicialComplex, VertexSet};
use proptest::prelude::*;

pub const LARGE_PRIME: u64 = 1_000_000_007;

/// Every face of `k` inside `j`, grouped by size (index 0 is the empty face).
pub fn faces_within(k: &SimplicialComplex, j: VertexSet) -> Vec<Vec<u64>> {
    let mut seen = std::collections::BTreeSet::new();
    for f in k.facets() {
        let f = f.intersection(j).bits();
        let mut s = f;
        loop {
            seen.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    let mut by_size = vec![Vec::new(); j.len() + 1];
    for s in seen {
        by_size[s.count_ones() as usize].push(s);
    }
    by_size
}

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let iv = inv(rows[rank][c], p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * iv % p;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the boundary map from faces of size `s` to faces of size `s - 1`.
fn boundary_rank(by_size: &[Vec<u64>], s: usize, p: u64) -> usize {
    if s == 0 || s >= by_size.len() || by_size[s].is_empty() || by_size[s - 1].is_empty() {
        return 0;
    }
    let lower = &by_size[s - 1];
    let rows: Vec<Vec<u64>> = lower
        .iter()
        .map(|&t| {
            by_size[s]
                .iter()
                .map(|&f| {
                    if f & t != t {
                        return 0;
                    }
                    let gone = f & !t;
                    let pos = (f & (gone - 1)).count_ones();
                    if pos % 2 == 0 {
                        1
                    } else {
                        p - 1
                    }
                })
                .collect()
        })
        .collect();
    rank_mod_p(rows, p)
}

/// Reduced Betti numbers of `K_J` over `F_p`, keyed by degree (from -1).
pub fn reduced_betti_mod_p(k: &SimplicialComplex, j: VertexSet, p: u64) -> BTreeMap<i32, usize> {
    let by_size = faces_within(k, j);
    let mut out = BTreeMap::new();
    for s in 0..by_size.len() {
        if by_size[s].is_empty() {
            continue;
        }
        let b = by_size[s].len() - boundary_rank(&by_size, s, p) - boundary_rank(&by_size, s + 1, p);
        if b > 0 {
            out.insert(s as i32 - 1, b);
        }
    }
    out
}

/// Betti numbers of `Z_K` over `F_p`, accumulated subset by subset.
pub fn zk_betti_mod_p(k: &SimplicialComplex, p: u64) -> BTreeMap<usize, usize> {
    let mut acc = BTreeMap::new();
    for j in k.vertex_set().subsets() {
        for (i, b) in reduced_betti_mod_p(k, j, p) {
            *acc.entry((i + j.len() as i32 + 1) as usize).or_insert(0) += b;
        }
    }
    acc
}

/// Random complexes on `3..=max_m` vertices: a few random facets, then a
/// singleton for every vertex not yet covered.
pub fn arb_complex(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (3..=max_m).prop_flat_map(|m| {
        prop::collection::vec(1u64..(1u64 << m), 1..=6).prop_map(move |masks| {
            let mut facets: Vec<Vec<usize>> =
                masks.iter().map(|&b| (1..=m).filter(|v| b >> (v - 1) & 1 == 1).collect()).collect();
            for v in 1..=m {
                facets.push(vec![v]);
            }
            SimplicialComplex::new(m, &facets).expect("valid random complex")
        })
    })
}

pub fn assert_betti_eq(name: &str, got: &BTreeMap<usize, usize>, want: &BTreeMap<usize, usize>) {
    assert_eq!(got, want, "{name}: Betti numbers differ");
}

pub fn spheres() -> Vec<(String, SimplicialComplex)> {
    mal_core::corpus::standard_corpus()
        .into_iter()
        .filter(|(_, k)| mal_core::classify::certify_sphere(k).map(|c| c.is_sphere()).unwrap_or(false))
        .collect()
}
