#![allow(dead_code)]

use std::collections::HashSet;

use itertools::Itertools;
use spherewright::complex::SimplicialComplex;
use spherewright::VertexId;

/// Isomorphism by trying every bijection between the vertex sets.
pub fn brute_isomorphic(x: &SimplicialComplex, y: &SimplicialComplex) -> bool {
    let vx: Vec<VertexId> = x.vertices().into_iter().collect();
    let vy: Vec<VertexId> = y.vertices().into_iter().collect();
    if vx.len() != vy.len() || x.num_facets() != y.num_facets() {
        return false;
    }
    let target: HashSet<Vec<VertexId>> = y.facets().iter().map(|f| f.vertices().to_vec()).collect();
    let fx: Vec<Vec<usize>> = x
        .facets()
        .iter()
        .map(|f| f.vertices().iter().map(|v| vx.binary_search(v).unwrap()).collect())
        .collect();
    let mut buf = Vec::new();
    vy.iter().copied().permutations(vy.len()).any(|image| {
        fx.iter().all(|f| {
            buf.clear();
            buf.extend(f.iter().map(|&i| image[i]));
            buf.sort_unstable();
            target.contains(&buf)
        })
    })
}

pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}
