//! Canonical labeling of pure complexes by individualization and
//! refinement.
//!
//! Vertex colors are refined until stable using, for each vertex, the
//! multiset of color tuples of the facets through it. When the partition is
//! not discrete, every vertex of the first smallest nontrivial cell is tried
//! in turn. Each discrete leaf gives a relabeling; the lexicographically
//! smallest relabeled facet list is the canonical form. Refinement only
//! prunes the search, the result does not depend on how strong it is.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::VertexId;

pub const DEFAULT_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, Eq)]
pub struct CanonicalForm {
    /// Facets over labels `1..=v`, each sorted, list sorted.
    pub facets: Vec<Vec<VertexId>>,
    /// Original label to canonical label.
    pub relabeling: BTreeMap<VertexId, VertexId>,
}

/// Two forms are equal when their facet lists agree; the certifying
/// relabelings of isomorphic inputs usually differ.
impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.facets.hash(state);
    }
}

struct Search {
    facets: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    best: Option<(Vec<Vec<VertexId>>, Vec<u32>)>,
}

/// Replaces colors by the rank of their signature among all signatures.
fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(s).expect("present") as u32)
        .collect()
}

fn cell_count(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

impl Search {
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut cells = cell_count(&colors);
        loop {
            let sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..colors.len())
                .map(|v| {
                    let mut around: Vec<Vec<u32>> = self.incidence[v]
                        .iter()
                        .map(|&f| {
                            let mut t: Vec<u32> = self.facets[f]
                                .iter()
                                .filter(|&&w| w != v)
                                .map(|&w| colors[w])
                                .collect();
                            t.sort_unstable();
                            t
                        })
                        .collect();
                    around.sort();
                    (colors[v], around)
                })
                .collect();
            colors = rank(&sigs);
            let next = cell_count(&colors);
            if next == cells {
                return colors;
            }
            cells = next;
        }
    }

    fn leaf(&mut self, colors: Vec<u32>) {
        let mut relabeled: Vec<Vec<VertexId>> = self
            .facets
            .iter()
            .map(|f| {
                let mut t: Vec<VertexId> = f.iter().map(|&v| colors[v] + 1).collect();
                t.sort_unstable();
                t
            })
            .collect();
        relabeled.sort();
        let better = match &self.best {
            None => true,
            Some((b, _)) => relabeled < *b,
        };
        if better {
            self.best = Some((relabeled, colors));
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let colors = self.refine(colors);
        let v = colors.len();
        if cell_count(&colors) == v {
            self.leaf(colors);
            return;
        }
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colors {
            *sizes.entry(c).or_insert(0) += 1;
        }
        let (&target, _) = sizes
            .iter()
            .filter(|(_, &s)| s > 1)
            .min_by_key(|(&c, &s)| (s, c))
            .expect("non-discrete partition");
        let members: Vec<usize> = (0..v).filter(|&w| colors[w] == target).collect();
        for &chosen in &members {
            let split: Vec<(u32, u8)> = (0..v)
                .map(|w| (colors[w], u8::from(colors[w] == target && w != chosen)))
                .collect();
            self.descend(rank(&split));
        }
    }
}

pub fn canonical_form_with_limit(x: &SimplicialComplex, max_vertices: usize) -> Result<CanonicalForm> {
    let verts: Vec<VertexId> = x.vertices().into_iter().collect();
    if verts.len() > max_vertices {
        return Err(Error::TooLarge {
            vertices: verts.len(),
            limit: max_vertices,
        });
    }
    let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let facets: Vec<Vec<usize>> = x
        .facets()
        .iter()
        .map(|f| f.vertices().iter().map(|v| index[v]).collect())
        .collect();
    let mut incidence = vec![Vec::new(); verts.len()];
    for (i, f) in facets.iter().enumerate() {
        for &v in f {
            incidence[v].push(i);
        }
    }
    let mut search = Search {
        facets,
        incidence,
        best: None,
    };
    if verts.is_empty() {
        return Ok(CanonicalForm {
            facets: Vec::new(),
            relabeling: BTreeMap::new(),
        });
    }
    // seed with neighbor counts; facet degree enters on the first refinement
    let neighbors: Vec<usize> = (0..verts.len())
        .map(|v| {
            let mut nb: Vec<usize> = search.incidence[v]
                .iter()
                .flat_map(|&f| search.facets[f].iter().copied())
                .filter(|&w| w != v)
                .collect();
            nb.sort_unstable();
            nb.dedup();
            nb.len()
        })
        .collect();
    search.descend(rank(&neighbors));
    let (facets, colors) = search.best.expect("at least one leaf");
    let relabeling = verts
        .iter()
        .zip(colors)
        .map(|(&v, c)| (v, c + 1))
        .collect();
    Ok(CanonicalForm { facets, relabeling })
}

pub fn canonical_form(x: &SimplicialComplex) -> Result<CanonicalForm> {
    canonical_form_with_limit(x, DEFAULT_MAX_VERTICES)
}

pub fn are_isomorphic(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<bool> {
    if x.num_facets() != y.num_facets() || x.vertices().len() != y.vertices().len() {
        return Ok(false);
    }
    Ok(canonical_form(x)? == canonical_form(y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex;

    #[test]
    fn tetrahedron_boundary_any_labels() {
        let a = SimplicialComplex::from_facets([simplex![1, 2, 3, 4]])
            .unwrap()
            .boundary_complex();
        let b = SimplicialComplex::from_facets([simplex![3, 6, 9, 12]])
            .unwrap()
            .boundary_complex();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn relabeling_certifies() {
        let x = crate::cyclic::build_p(1).unwrap();
        let form = canonical_form(&x).unwrap();
        let mapped = x.relabel(|v| form.relabeling[&v]);
        let listed: Vec<Vec<VertexId>> =
            mapped.facets().iter().map(|f| f.vertices().to_vec()).collect();
        assert_eq!(listed, form.facets);
    }

    #[test]
    fn distinguishes_path_and_star() {
        let path = SimplicialComplex::from_facets([simplex![1, 2], simplex![2, 3], simplex![3, 4]])
            .unwrap();
        let star = SimplicialComplex::from_facets([simplex![1, 2], simplex![1, 3], simplex![1, 4]])
            .unwrap();
        assert!(!are_isomorphic(&path, &star).unwrap());
    }

    #[test]
    fn too_large() {
        let p = crate::cyclic::build_p(6).unwrap();
        assert!(matches!(
            canonical_form(&p),
            Err(Error::TooLarge { vertices: 28, limit: 24 })
        ));
        assert!(canonical_form_with_limit(&p, 28).is_ok());
    }
}
