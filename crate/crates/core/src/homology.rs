//! Betti numbers over the two-element field.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::simplex::Simplex;

/// Dense GF(2) row, packed 64 columns per word.
#[derive(Clone)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(cols: usize) -> Self {
        BitRow(vec![0; cols.div_ceil(64)])
    }

    fn set(&mut self, c: usize) {
        self.0[c / 64] ^= 1 << (c % 64);
    }

    fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn first_one(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Rank over GF(2) by row reduction to echelon form.
fn rank_gf2(mut rows: Vec<BitRow>) -> usize {
    // pivot column -> reduced row
    let mut pivots: BTreeMap<usize, BitRow> = BTreeMap::new();
    for row in rows.iter_mut() {
        loop {
            match row.first_one() {
                None => break,
                Some(c) => match pivots.get(&c) {
                    Some(p) => row.xor_assign(p),
                    None => {
                        pivots.insert(c, row.clone());
                        break;
                    }
                },
            }
        }
    }
    pivots.len()
}

/// Rank of the boundary map from `k`-faces to `(k-1)`-faces.
fn boundary_rank(x: &SimplicialComplex, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let lower: BTreeMap<&Simplex, usize> =
        x.faces(k - 1).iter().enumerate().map(|(i, s)| (s, i)).collect();
    let rows = x
        .faces(k)
        .iter()
        .map(|s| {
            let mut row = BitRow::zeros(lower.len());
            for face in s.faces_of_size(s.len() - 1) {
                row.set(lower[&face]);
            }
            row
        })
        .collect();
    rank_gf2(rows)
}

/// Unreduced mod-2 Betti numbers `b_0..b_d`; empty for the void complex.
pub fn betti_mod2(x: &SimplicialComplex) -> Vec<usize> {
    if x.is_empty() {
        return Vec::new();
    }
    let d = x.dim() as usize;
    let ranks: Vec<usize> = (0..=d + 1).map(|k| if k > d { 0 } else { boundary_rank(x, k) }).collect();
    (0..=d)
        .map(|k| x.faces(k).len() - ranks[k] - ranks[k + 1])
        .collect()
}
