//! Boundary complex of the cyclic 4-polytope, described purely through
//! Gale's evenness condition. No coordinates are ever computed.

use itertools::Itertools;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

/// A 4-subset of `[m]` to be tested against the evenness rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleCandidate {
    labels: [VertexId; 4],
    ground: u32,
}

impl GaleCandidate {
    pub fn new(labels: &[VertexId], ground: u32) -> Result<Self> {
        if ground < 5 {
            return Err(Error::GroundSetTooSmall(ground));
        }
        let s = Simplex::new(labels.to_vec())?;
        let v = s.vertices();
        if v.len() != 4 {
            return Err(Error::InvalidCandidate(format!(
                "expected 4 labels, got {}",
                v.len()
            )));
        }
        if v[3] > ground {
            return Err(Error::InvalidCandidate(format!(
                "label {} exceeds ground set [{}]",
                v[3], ground
            )));
        }
        Ok(GaleCandidate {
            labels: [v[0], v[1], v[2], v[3]],
            ground,
        })
    }

    pub fn labels(&self) -> &[VertexId; 4] {
        &self.labels
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }
}

/// True iff every pair of labels `x < y` outside the candidate has an even
/// number of candidate labels strictly between them.
pub fn is_gale_facet(candidate: &GaleCandidate) -> bool {
    let inside = |z: VertexId| candidate.labels.contains(&z);
    let outside: Vec<VertexId> = (1..=candidate.ground).filter(|&x| !inside(x)).collect();
    outside.iter().tuple_combinations().all(|(&x, &y)| {
        let between = candidate.labels.iter().filter(|&&z| x < z && z < y).count();
        between % 2 == 0
    })
}

/// Convenience wrapper for a simplex that is expected to have four labels.
pub fn simplex_is_gale_facet(s: &Simplex, ground: u32) -> bool {
    GaleCandidate::new(s.vertices(), ground)
        .map(|c| is_gale_facet(&c))
        .unwrap_or(false)
}

/// Facets of `C(m, 4)` by filtering all 4-subsets of `[m]`.
pub fn enumerate_cyclic_facets(m: u32) -> Result<Vec<Simplex>> {
    if m < 5 {
        return Err(Error::GroundSetTooSmall(m));
    }
    Ok((1..=m)
        .combinations(4)
        .filter(|c| is_gale_facet(&GaleCandidate::new(c, m).expect("4-subset of [m]")))
        .map(Simplex::from_sorted_unchecked)
        .collect())
}

/// Facets of `C(m, 4)` as unions of two disjoint cyclically-consecutive
/// pairs `{i, i+1}` (with `{m, 1}` closing the cycle). Sorted.
pub fn cyclic_facets_by_blocks(m: u32) -> Result<Vec<Simplex>> {
    if m < 5 {
        return Err(Error::GroundSetTooSmall(m));
    }
    let next = |i: u32| if i == m { 1 } else { i + 1 };
    let mut out: Vec<Simplex> = (1..=m)
        .tuple_combinations()
        .filter(|&(i, j)| j > next(i) && next(j) != i)
        .map(|(i, j)| {
            Simplex::new(vec![i, next(i), j, next(j)]).expect("disjoint blocks")
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The simplicial 3-sphere `P(n)`: boundary of `C(4n+4, 4)` on labels
/// `[4n+4]`.
pub fn build_p(n: u32) -> Result<SimplicialComplex> {
    if n < 1 {
        return Err(Error::InvalidN(n));
    }
    SimplicialComplex::from_facets(enumerate_cyclic_facets(4 * n + 4)?)
}
