use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `count` copies of `S^{spheres[0]} × S^{spheres[1]} × ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub spheres: Vec<usize>,
    pub count: usize,
}

/// A connected sum of products of spheres of a fixed dimension. With no
/// summands it stands for the sphere `S^dimension`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereDecomposition {
    pub dimension: usize,
    pub summands: Vec<Summand>,
}

impl SphereDecomposition {
    pub fn summand_count(&self) -> usize {
        self.summands.iter().map(|s| s.count).sum()
    }
}

impl fmt::Display for SphereDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "S^{}", self.dimension);
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " # ")?;
            }
            let prod: Vec<String> = s.spheres.iter().map(|d| format!("S^{d}")).collect();
            write!(f, "({})", prod.join("×"))?;
            if s.count != 1 {
                write!(f, "^#{}", s.count)?;
            }
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `#_{k=3}^{m-n+1} (S^k × S^{m+n-k})^{#(k-2)·C(m-n, k-1)}` for a simplicial
/// `(n-1)`-sphere on `m` vertices dual to a stacked polytope.
pub fn mcgavran_decomposition(m: usize, n: usize) -> Result<SphereDecomposition> {
    if m < n + 1 {
        return Err(Error::NotApplicable(format!("need m >= n + 1, got m = {m}, n = {n}")));
    }
    let summands = (3..=m - n + 1)
        .map(|k| Summand { spheres: vec![k, m + n - k], count: (k - 2) * binomial(m - n, k - 1) })
        .filter(|s| s.count > 0)
        .collect();
    Ok(SphereDecomposition { dimension: m + n, summands })
}

/// Betti numbers of the connected sum: `1` in degrees `0` and
/// `total_dim`, and for every summand and every nonempty proper subset of
/// its factors, one class in the degree given by the subset's sum.
pub fn decomposition_to_betti(dec: &SphereDecomposition, total_dim: usize) -> Result<BTreeMap<usize, usize>> {
    let mut betti = BTreeMap::from([(0, 1)]);
    *betti.entry(total_dim).or_insert(0) += 1;
    for s in &dec.summands {
        if s.spheres.is_empty() || s.spheres.contains(&0) || s.spheres.iter().sum::<usize>() != total_dim {
            return Err(Error::MalformedDecomposition(format!(
                "factors {:?} do not form a closed {total_dim}-manifold",
                s.spheres
            )));
        }
        let k = s.spheres.len();
        for mask in 1..(1u32 << k) - 1 {
            let deg: usize = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s.spheres[i]).sum();
            *betti.entry(deg).or_insert(0) += s.count;
        }
    }
    betti.retain(|_, r| *r > 0);
    Ok(betti)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_instances() {
        let d = mcgavran_decomposition(5, 2).unwrap();
        assert_eq!(
            d.summands,
            vec![Summand { spheres: vec![3, 4], count: 3 }, Summand { spheres: vec![4, 3], count: 2 },]
        );
        assert_eq!(d.summand_count(), 5);
        let d = mcgavran_decomposition(6, 3).unwrap();
        assert_eq!(d.to_string(), "(S^3×S^6)^#3 # (S^4×S^5)^#2");
        let d = mcgavran_decomposition(4, 3).unwrap();
        assert!(d.summands.is_empty());
        assert_eq!(d.to_string(), "S^7");
        assert!(mcgavran_decomposition(3, 3).is_err());
    }

    #[test]
    fn betti_of_connected_sums() {
        let c5 = SphereDecomposition { dimension: 7, summands: vec![Summand { spheres: vec![3, 4], count: 5 }] };
        assert_eq!(decomposition_to_betti(&c5, 7).unwrap(), BTreeMap::from([(0, 1), (3, 5), (4, 5), (7, 1)]));
        let triple =
            SphereDecomposition { dimension: 11, summands: vec![Summand { spheres: vec![3, 3, 5], count: 1 }] };
        assert_eq!(
            decomposition_to_betti(&triple, 11).unwrap(),
            BTreeMap::from([(0, 1), (3, 2), (5, 1), (6, 1), (8, 2), (11, 1)])
        );
        let empty = SphereDecomposition { dimension: 9, summands: vec![] };
        assert_eq!(decomposition_to_betti(&empty, 9).unwrap(), BTreeMap::from([(0, 1), (9, 1)]));
        assert!(matches!(decomposition_to_betti(&c5, 8), Err(Error::MalformedDecomposition(_))));
    }
}
