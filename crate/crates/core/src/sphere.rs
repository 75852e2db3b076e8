//! Assembly of `P'(n)` and the polyhedral sphere `Q(n)`.
//!
//! `P'(n)` replaces the interior of every ball `B(a)` by the cone from a new
//! apex `q(a)` over `∂B(a)`. `Q(n)` then deletes, per site `(a,u)`, the
//! triangle `{q(a)} ∪ R(a,u)` and merges the two tetrahedra on either side
//! into one bipyramid cell `F(a,u)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ball::{a_set, build_ball, SiteFaces, Variant};
use crate::complex::SimplicialComplex;
use crate::cyclic::build_p;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

/// Label of the apex coned over `∂B(a)`: `4n + 4 + rank(a)`.
pub fn apex_label(n: u32, a: u32) -> Result<VertexId> {
    let centers = a_set(n)?;
    let rank = centers
        .iter()
        .position(|&x| x == a)
        .ok_or_else(|| Error::OutOfRange(format!("a={a} is not in A({n})")))?;
    Ok(4 * n + 4 + rank as u32 + 1)
}

pub fn apex_map(n: u32) -> Result<BTreeMap<u32, VertexId>> {
    a_set(n)?
        .into_iter()
        .map(|a| Ok((a, apex_label(n, a)?)))
        .collect()
}

/// Two apexes over a triangular equator. The apex pair is not an edge and
/// the equator is not a face.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BipyramidCell {
    apexes: Simplex,
    equator: Simplex,
}

impl BipyramidCell {
    pub fn new(apexes: Simplex, equator: Simplex) -> Result<Self> {
        if apexes.len() != 2 || equator.len() != 3 {
            return Err(Error::InvalidSimplex {
                vertices: apexes.union(&equator).into(),
                reason: "bipyramid needs 2 apexes and a 3-vertex equator",
            });
        }
        if !apexes.is_disjoint(&equator) {
            return Err(Error::InvalidSimplex {
                vertices: apexes.vertices().iter().chain(equator.vertices()).copied().collect(),
                reason: "apexes meet the equator",
            });
        }
        Ok(BipyramidCell { apexes, equator })
    }

    pub fn apexes(&self) -> &Simplex {
        &self.apexes
    }

    pub fn equator(&self) -> &Simplex {
        &self.equator
    }

    pub fn vertex_set(&self) -> Simplex {
        self.apexes.union(&self.equator)
    }

    /// Proper nonempty faces: 5 vertices, 9 edges, 6 triangles.
    pub fn faces(&self) -> BTreeSet<Simplex> {
        let mut out: BTreeSet<Simplex> = self
            .vertex_set()
            .vertices()
            .iter()
            .map(|&v| Simplex::from_sorted_unchecked(vec![v]))
            .collect();
        out.extend(self.equator.faces_of_size(2));
        for &p in self.apexes.vertices() {
            for &e in self.equator.vertices() {
                out.insert(Simplex::new(vec![p, e]).expect("disjoint"));
            }
            for edge in self.equator.faces_of_size(2) {
                out.insert(edge.with_vertex(p).expect("disjoint"));
            }
        }
        out
    }

    /// Whether a vertex set spans a face (proper or the cell itself).
    pub fn is_face(&self, s: &Simplex) -> bool {
        if s.is_empty() || *s == self.vertex_set() {
            return true;
        }
        let apex_count = s.intersection(&self.apexes).len();
        let eq_count = s.intersection(&self.equator).len();
        s.is_subset_of(&self.vertex_set()) && apex_count <= 1 && eq_count <= 2
    }

    /// Recovers the site `(a, u)` from the apex map: the equator holds
    /// `q(a)` and the apexes are `{a-u, a+u+1}`.
    pub fn site(&self, apexes: &BTreeMap<u32, VertexId>) -> Option<(u32, u32)> {
        let a = apexes
            .iter()
            .find(|(_, q)| self.equator.contains(**q))
            .map(|(a, _)| *a)?;
        let [lo, hi] = [self.apexes.vertices()[0], self.apexes.vertices()[1]];
        (lo < a && hi == 2 * a + 1 - lo).then(|| (a, a - lo))
    }
}

/// A cell of a polyhedral complex built here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Simplex(Simplex),
    Bipyramid(BipyramidCell),
}

impl Cell {
    pub fn vertex_set(&self) -> Simplex {
        match self {
            Cell::Simplex(s) => s.clone(),
            Cell::Bipyramid(b) => b.vertex_set(),
        }
    }

    /// Nonempty faces including the cell itself.
    pub fn face_lattice(&self) -> BTreeSet<Simplex> {
        match self {
            Cell::Simplex(s) => s.nonempty_faces().collect(),
            Cell::Bipyramid(b) => {
                let mut f = b.faces();
                f.insert(b.vertex_set());
                f
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralSphere {
    pub n: u32,
    pub variant: Variant,
    /// `a -> q(a)`.
    pub apexes: BTreeMap<u32, VertexId>,
    pub simplex_cells: BTreeSet<Simplex>,
    pub bipyramids: BTreeMap<(u32, u32), BipyramidCell>,
}

impl PolyhedralSphere {
    pub fn sites(&self) -> Vec<(u32, u32)> {
        self.bipyramids.keys().copied().collect()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.cells()
            .iter()
            .flat_map(|c| c.vertex_set().vertices().to_vec())
            .collect()
    }

    /// All cells, sorted.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self
            .simplex_cells
            .iter()
            .cloned()
            .map(Cell::Simplex)
            .chain(self.bipyramids.values().cloned().map(Cell::Bipyramid))
            .collect();
        cells.sort();
        cells
    }

    /// Union of the face lattices of all cells.
    pub fn face_set(&self) -> BTreeSet<Simplex> {
        self.cells().iter().flat_map(Cell::face_lattice).collect()
    }
}

/// One tetrahedron `{apex} ∪ T` per triangle `T`.
pub fn cone_over_boundary(apex: VertexId, surface: &SimplicialComplex) -> Result<SimplicialComplex> {
    if surface.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: "2",
            actual: surface.dim(),
        });
    }
    if surface.vertices().contains(&apex) {
        return Err(Error::ApexCollision(apex));
    }
    SimplicialComplex::from_facets(
        surface
            .facets()
            .iter()
            .map(|t| t.with_vertex(apex).expect("apex is new")),
    )
}

/// `P'(n)`: every ball's facets removed and replaced by the cone from its
/// apex over the ball boundary.
pub fn build_p_prime(n: u32, variant: Variant) -> Result<SimplicialComplex> {
    let p = build_p(n)?;
    let mut facets: BTreeSet<Simplex> = p.facets().clone();
    let mut cones = Vec::new();
    for a in a_set(n)? {
        let ball = build_ball(n, a, variant)?;
        for f in ball.facets() {
            facets.remove(f);
        }
        cones.push(cone_over_boundary(apex_label(n, a)?, &ball.boundary_complex())?);
    }
    for cone in cones {
        facets.extend(cone.facets().iter().cloned());
    }
    SimplicialComplex::from_facets(facets)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiteSelection {
    /// Every site whose edge `E(a,u)` is interior to `B(a)`.
    Auto,
    /// Every site of `A(n) × [n]`; fails if any is rejected.
    All,
    /// The listed sites, each checked.
    Explicit(Vec<(u32, u32)>),
    /// The listed sites without the interior-edge check. Only useful for
    /// building counterexamples.
    Forced(Vec<(u32, u32)>),
}

/// Whether `E(a,u)` is an interior edge of `B(a)` under `variant`.
pub fn site_is_interior(n: u32, a: u32, u: u32, variant: Variant) -> Result<bool> {
    let ball = build_ball(n, a, variant)?;
    let e = SiteFaces::new(n, a, u)?.e;
    Ok(ball.contains(&e) && !ball.boundary_complex().contains(&e))
}

fn check_site(n: u32, a: u32, u: u32) -> Result<()> {
    if !a_set(n)?.contains(&a) || u < 1 || u > n {
        return Err(Error::InvalidSite { a, u, n });
    }
    Ok(())
}

pub fn build_q(n: u32, variant: Variant, sites: &SiteSelection) -> Result<PolyhedralSphere> {
    let all_sites: Vec<(u32, u32)> = a_set(n)?
        .into_iter()
        .flat_map(|a| (1..=n).map(move |u| (a, u)))
        .collect();
    let interior: BTreeMap<u32, BTreeSet<Simplex>> = a_set(n)?
        .into_iter()
        .map(|a| Ok((a, build_ball(n, a, variant)?.interior_faces(1))))
        .collect::<Result<_>>()?;
    let is_interior = |a: u32, u: u32| -> Result<bool> {
        Ok(interior[&a].contains(&SiteFaces::new(n, a, u)?.e))
    };

    let chosen: Vec<(u32, u32)> = match sites {
        SiteSelection::Auto => {
            let mut v = Vec::new();
            for &(a, u) in &all_sites {
                if is_interior(a, u)? {
                    v.push((a, u));
                }
            }
            v
        }
        SiteSelection::All | SiteSelection::Explicit(_) => {
            let list = match sites {
                SiteSelection::Explicit(l) => l.clone(),
                _ => all_sites.clone(),
            };
            for &(a, u) in &list {
                check_site(n, a, u)?;
                if !is_interior(a, u)? {
                    return Err(Error::SiteRejected { a, u });
                }
            }
            list
        }
        SiteSelection::Forced(list) => {
            for &(a, u) in list {
                check_site(n, a, u)?;
            }
            list.clone()
        }
    };

    let p_prime = build_p_prime(n, variant)?;
    let apexes = apex_map(n)?;
    let mut simplex_cells = p_prime.facets().clone();
    let mut bipyramids = BTreeMap::new();
    for (a, u) in chosen.into_iter().collect::<BTreeSet<_>>() {
        let faces = SiteFaces::new(n, a, u)?;
        let q = apexes[&a];
        let lower = faces.t_minus.with_vertex(q)?;
        let upper = faces.t_plus.with_vertex(q)?;
        let equator = faces.r.with_vertex(q)?;
        if lower.intersection(&upper) != equator
            || !simplex_cells.remove(&lower)
            || !simplex_cells.remove(&upper)
        {
            return Err(Error::SiteRejected { a, u });
        }
        bipyramids.insert((a, u), BipyramidCell::new(faces.e, equator)?);
    }
    Ok(PolyhedralSphere {
        n,
        variant,
        apexes,
        simplex_cells,
        bipyramids,
    })
}
