//! Triangulations of `Q(n)` obtained by splitting each bipyramid in one of
//! two ways, and exact counts of their isomorphism classes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::Variant;
use crate::canon::{canonical_form, CanonicalForm};
use crate::complex::{FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};
use crate::sphere::{build_q, BipyramidCell, PolyhedralSphere, SiteSelection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SplitMode {
    /// Insert the equator triangle: two tetrahedra.
    Two,
    /// Insert the apex-apex edge: three tetrahedra.
    Three,
}

pub fn split_bipyramid(cell: &BipyramidCell, mode: SplitMode) -> Vec<Simplex> {
    match mode {
        SplitMode::Two => cell
            .apexes()
            .vertices()
            .iter()
            .map(|&p| cell.equator().with_vertex(p).expect("disjoint"))
            .collect(),
        SplitMode::Three => cell
            .equator()
            .faces_of_size(2)
            .map(|e| e.union(cell.apexes()))
            .collect(),
    }
}

/// One split mode per bipyramid, in site order. Written as a bit string,
/// `0` for [`SplitMode::Two`] and `1` for [`SplitMode::Three`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangulationMask(pub Vec<SplitMode>);

impl TriangulationMask {
    /// Bit `i` of `bits` (least significant first) selects the mode of site
    /// `i`.
    pub fn from_index(bits: u64, len: usize) -> Self {
        TriangulationMask(
            (0..len)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        SplitMode::Three
                    } else {
                        SplitMode::Two
                    }
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn threes(&self) -> usize {
        self.0.iter().filter(|&&m| m == SplitMode::Three).count()
    }
}

impl fmt::Display for TriangulationMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            f.write_str(match m {
                SplitMode::Two => "0",
                SplitMode::Three => "1",
            })?;
        }
        Ok(())
    }
}

impl FromStr for TriangulationMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(SplitMode::Two),
                '1' => Ok(SplitMode::Three),
                other => Err(Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: format!("mask character '{other}' is not 0 or 1"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(TriangulationMask)
    }
}

/// Tetrahedra of `Q` plus the chosen split of every bipyramid.
pub fn realize(q: &PolyhedralSphere, mask: &TriangulationMask) -> Result<SimplicialComplex> {
    if mask.len() != q.bipyramids.len() {
        return Err(Error::MaskLengthMismatch {
            expected: q.bipyramids.len(),
            actual: mask.len(),
        });
    }
    let splits = q
        .bipyramids
        .values()
        .zip(&mask.0)
        .flat_map(|(b, &m)| split_bipyramid(b, m));
    SimplicialComplex::from_facets(q.simplex_cells.iter().cloned().chain(splits))
}

/// Applies a uniformly random permutation of the vertex labels.
pub fn random_relabel(x: &SimplicialComplex, rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let verts: Vec<VertexId> = x.vertices().into_iter().collect();
    let mut image = verts.clone();
    image.shuffle(rng);
    let map: HashMap<VertexId, VertexId> = verts.into_iter().zip(image).collect();
    x.relabel(|v| map[&v])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    /// First mask (in enumeration order) that lands in this class.
    pub representative: String,
    pub size: usize,
    pub f_vector: FVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassCount {
    pub n: u32,
    pub variant: Variant,
    pub sites: Vec<(u32, u32)>,
    pub vertices: usize,
    pub masks: u64,
    /// `2^m / v!`, the quotient lower bound on the class count.
    pub lower_bound: f64,
    /// Classes in order of first appearance.
    pub classes: Vec<IsoClass>,
}

impl ClassCount {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(|c| c.size).collect();
        s.sort_unstable();
        s
    }
}

/// `2^m / v!` in floating point.
pub fn quotient_lower_bound(masks: u64, vertices: usize) -> f64 {
    let fact: f64 = (1..=vertices).map(|k| k as f64).product();
    masks as f64 / fact
}

/// Enumerates all `2^m` triangulations of `Q(n)` (admissible sites) and
/// buckets them by canonical form. With `relabel_seed`, each triangulation
/// is randomly relabeled before canonicalization.
pub fn count_distinct_classes_with(
    n: u32,
    variant: Variant,
    limit: u64,
    relabel_seed: Option<u64>,
) -> Result<ClassCount> {
    let q = build_q(n, variant, &SiteSelection::Auto)?;
    let m = q.bipyramids.len();
    let masks = 1u64.checked_shl(m as u32).filter(|&t| t <= limit && m < 64);
    let masks = masks.ok_or(Error::LimitExceeded { sites: m, limit })?;

    let forms: Vec<(TriangulationMask, FVector, CanonicalForm)> = (0..masks)
        .into_par_iter()
        .map(|bits| {
            let mask = TriangulationMask::from_index(bits, m);
            let mut x = realize(&q, &mask)?;
            if let Some(seed) = relabel_seed {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ bits.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                x = random_relabel(&x, &mut rng);
            }
            let form = canonical_form(&x)?;
            Ok((mask, x.f_vector(), form))
        })
        .collect::<Result<_>>()?;

    let mut index: HashMap<CanonicalForm, usize> = HashMap::new();
    let mut classes: Vec<IsoClass> = Vec::new();
    for (mask, fv, form) in forms {
        match index.get(&form) {
            Some(&i) => classes[i].size += 1,
            None => {
                index.insert(form, classes.len());
                classes.push(IsoClass {
                    representative: mask.to_string(),
                    size: 1,
                    f_vector: fv,
                });
            }
        }
    }
    let vertices = q.vertices().len();
    Ok(ClassCount {
        n,
        variant,
        sites: q.sites(),
        vertices,
        masks,
        lower_bound: quotient_lower_bound(masks, vertices),
        classes,
    })
}

pub fn count_distinct_classes(n: u32, variant: Variant, limit: u64) -> Result<ClassCount> {
    count_distinct_classes_with(n, variant, limit, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex;

    fn f41() -> BipyramidCell {
        BipyramidCell::new(simplex![3, 6], simplex![2, 5, 9]).unwrap()
    }

    #[test]
    fn splits() {
        let mut two = split_bipyramid(&f41(), SplitMode::Two);
        two.sort();
        assert_eq!(two, vec![simplex![2, 3, 5, 9], simplex![2, 5, 6, 9]]);
        let mut three = split_bipyramid(&f41(), SplitMode::Three);
        three.sort();
        let mut want = vec![simplex![3, 6, 9, 2], simplex![3, 6, 2, 5], simplex![3, 6, 5, 9]];
        want.sort();
        assert_eq!(three, want);
        assert!(three.iter().all(|t| simplex![3, 6].is_subset_of(t)));
    }

    #[test]
    fn split_adds_only_missing_faces() {
        let cell = f41();
        let lattice = cell.faces();
        for (mode, extra) in [
            (SplitMode::Two, simplex![2, 5, 9]),
            (SplitMode::Three, simplex![3, 6]),
        ] {
            let x = SimplicialComplex::from_facets(split_bipyramid(&cell, mode)).unwrap();
            let boundary = x.boundary_complex();
            let bd_tris: std::collections::BTreeSet<_> = boundary.facets().clone();
            let cell_tris: std::collections::BTreeSet<_> =
                lattice.iter().filter(|f| f.len() == 3).cloned().collect();
            assert_eq!(bd_tris, cell_tris);
            assert!(x.contains(&extra));
        }
    }

    #[test]
    fn masks() {
        let m: TriangulationMask = "0110".parse().unwrap();
        assert_eq!(m.to_string(), "0110");
        assert_eq!(m.threes(), 2);
        assert_eq!(TriangulationMask::from_index(0b0110, 4), m);
        let err = "01x".parse::<TriangulationMask>().unwrap_err();
        assert!(matches!(err, Error::Parse { column: 3, .. }));
    }

    #[test]
    fn realize_q1() {
        let q = build_q(1, Variant::Extended, &SiteSelection::Auto).unwrap();
        let two = realize(&q, &"0".parse().unwrap()).unwrap();
        assert_eq!(two.f_vector().0, vec![9, 33, 48, 24]);
        let three = realize(&q, &"1".parse().unwrap()).unwrap();
        assert_eq!(three.f_vector().0, vec![9, 34, 50, 25]);
        assert!(three.contains(&simplex![3, 6]));
        assert_eq!(
            realize(&q, &"01".parse().unwrap()),
            Err(Error::MaskLengthMismatch {
                expected: 1,
                actual: 2
            })
        );
    }

    #[test]
    fn count_n1() {
        let c = count_distinct_classes(1, Variant::Extended, 16).unwrap();
        assert_eq!(c.class_count(), 2);
        assert_eq!(c.class_sizes(), vec![1, 1]);
        assert_eq!(
            count_distinct_classes(1, Variant::Extended, 1),
            Err(Error::LimitExceeded { sites: 1, limit: 1 })
        );
    }

    #[test]
    fn lower_bound_value() {
        assert!((quotient_lower_bound(16, 4) - 16.0 / 24.0).abs() < 1e-12);
    }
}
