//! Pure simplicial complexes stored by their facets.
//!
//! Faces are never stored explicitly; they are enumerated from the facets on
//! first request and cached per dimension. Complexes are immutable once built.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

/// Face counts `f_0, f_1, ...` (the empty face is not counted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of [`SimplicialComplex::classify_surface`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SurfaceClass {
    Sphere2,
    Ball2,
    Circle1,
    Other,
}

pub struct SimplicialComplex {
    facets: BTreeSet<Simplex>,
    dim: i32,
    faces: OnceLock<Vec<BTreeSet<Simplex>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            facets: self.facets.clone(),
            dim: self.dim,
            faces: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("dim", &self.dim)
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// The void complex (no faces besides the empty one).
    pub fn empty() -> Self {
        SimplicialComplex {
            facets: BTreeSet::new(),
            dim: -1,
            faces: OnceLock::new(),
        }
    }

    /// Closure of a set of equal-dimensional facets. Repeated facets merge.
    pub fn from_facets<I: IntoIterator<Item = Simplex>>(facets: I) -> Result<Self> {
        let facets: BTreeSet<Simplex> = facets.into_iter().filter(|f| !f.is_empty()).collect();
        let mut dims = facets.iter().map(Simplex::dim);
        let dim = match dims.next() {
            None => return Ok(Self::empty()),
            Some(d) => d,
        };
        if let Some(other) = dims.find(|&d| d != dim) {
            return Err(Error::MixedDimensions {
                first: dim as usize,
                second: other as usize,
            });
        }
        Ok(SimplicialComplex {
            facets,
            dim,
            faces: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facets(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    fn face_table(&self) -> &Vec<BTreeSet<Simplex>> {
        self.faces.get_or_init(|| {
            let top = (self.dim + 1).max(0) as usize;
            let mut table = vec![BTreeSet::new(); top];
            for f in &self.facets {
                for k in 1..=top {
                    table[k - 1].extend(f.faces_of_size(k));
                }
            }
            table
        })
    }

    /// All faces of dimension `k` (empty set outside `0..=dim`).
    pub fn faces(&self, k: usize) -> &BTreeSet<Simplex> {
        static NONE: BTreeSet<Simplex> = BTreeSet::new();
        self.face_table().get(k).unwrap_or(&NONE)
    }

    pub fn edges(&self) -> &BTreeSet<Simplex> {
        self.faces(1)
    }

    pub fn triangles(&self) -> &BTreeSet<Simplex> {
        self.faces(2)
    }

    /// Membership test; the empty simplex belongs to every nonempty complex.
    pub fn contains(&self, face: &Simplex) -> bool {
        if face.is_empty() {
            return !self.is_empty();
        }
        self.faces(face.len() - 1).contains(face)
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.face_table().iter().map(BTreeSet::len).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Facets containing `face`.
    pub fn cofacets<'a>(&'a self, face: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.facets.iter().filter(move |f| face.is_subset_of(f))
    }

    /// `{T : T ∩ F = ∅, T ∪ F ∈ X}`.
    pub fn link(&self, face: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(face) {
            return Err(Error::FaceNotInComplex(face.clone()));
        }
        SimplicialComplex::from_facets(self.cofacets(face).map(|f| f.difference(face)))
    }

    /// Closed star: closure of the facets containing `face`.
    pub fn star(&self, face: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(face) {
            return Err(Error::FaceNotInComplex(face.clone()));
        }
        SimplicialComplex::from_facets(self.cofacets(face).cloned())
    }

    /// Number of facets containing each codimension-one face.
    pub fn ridge_degrees(&self) -> BTreeMap<Simplex, usize> {
        let mut deg = BTreeMap::new();
        if self.dim < 1 {
            return deg;
        }
        for f in &self.facets {
            for r in f.faces_of_size(f.len() - 1) {
                *deg.entry(r).or_insert(0) += 1;
            }
        }
        deg
    }

    /// Subcomplex generated by the codimension-one faces lying in exactly one
    /// facet. Empty for closed pseudomanifolds and for complexes of
    /// dimension < 1.
    pub fn boundary_complex(&self) -> SimplicialComplex {
        let ridges = self
            .ridge_degrees()
            .into_iter()
            .filter(|&(_, d)| d == 1)
            .map(|(r, _)| r);
        SimplicialComplex::from_facets(ridges).expect("ridges share a dimension")
    }

    /// Faces of the given dimension that are not in the boundary complex.
    pub fn interior_faces(&self, k: usize) -> BTreeSet<Simplex> {
        let boundary = self.boundary_complex();
        self.faces(k)
            .iter()
            .filter(|f| !boundary.contains(f))
            .cloned()
            .collect()
    }

    /// Vertex-graph connectivity (an empty complex counts as disconnected).
    pub fn is_connected(&self) -> bool {
        let verts: Vec<VertexId> = self.vertices().into_iter().collect();
        if verts.is_empty() {
            return false;
        }
        let index: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let vs = f.vertices();
            let r0 = index[&vs[0]];
            for v in &vs[1..] {
                let (a, b) = (find(&mut parent, r0), find(&mut parent, index[v]));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..verts.len()).all(|i| find(&mut parent, i) == root)
    }

    /// Closed 3-pseudomanifold test: pure of dimension 3, connected, every
    /// triangle in exactly two tetrahedra, every edge and vertex link
    /// connected.
    pub fn is_closed_pseudomanifold_3(&self) -> bool {
        if self.dim != 3 || !self.is_connected() {
            return false;
        }
        if self.ridge_degrees().values().any(|&d| d != 2) {
            return false;
        }
        let links_connected = |k: usize| {
            self.faces(k)
                .iter()
                .all(|f| self.link(f).map(|l| l.is_connected()).unwrap_or(false))
        };
        links_connected(1) && links_connected(0)
    }

    /// Recognizes 2-spheres, 2-balls and circles; anything else is `Other`.
    pub fn classify_surface(&self) -> Result<SurfaceClass> {
        match self.dim {
            1 => Ok(self.classify_curve()),
            2 => Ok(self.classify_2d()),
            d => Err(Error::WrongDimension {
                expected: "1 or 2",
                actual: d,
            }),
        }
    }

    fn classify_curve(&self) -> SurfaceClass {
        let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
        for e in &self.facets {
            for &v in e.vertices() {
                *degree.entry(v).or_insert(0) += 1;
            }
        }
        if self.is_connected() && degree.values().all(|&d| d == 2) {
            SurfaceClass::Circle1
        } else {
            SurfaceClass::Other
        }
    }

    /// Connected 1-complex where every vertex has degree at most 2 with
    /// exactly two degree-1 ends.
    fn is_path(&self) -> bool {
        if self.dim != 1 || !self.is_connected() {
            return false;
        }
        let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
        for e in &self.facets {
            for &v in e.vertices() {
                *degree.entry(v).or_insert(0) += 1;
            }
        }
        degree.values().all(|&d| d <= 2) && degree.values().filter(|&&d| d == 1).count() == 2
    }

    fn classify_2d(&self) -> SurfaceClass {
        if !self.is_connected() {
            return SurfaceClass::Other;
        }
        let degrees = self.ridge_degrees();
        let chi = self.euler_characteristic();
        if degrees.values().all(|&d| d == 2) {
            let links_are_cycles = self.faces(0).iter().all(|v| {
                self.link(v).map(|l| l.classify_curve()) == Ok(SurfaceClass::Circle1)
            });
            if links_are_cycles && chi == 2 {
                return SurfaceClass::Sphere2;
            }
            return SurfaceClass::Other;
        }
        if degrees.values().any(|&d| d > 2) || chi != 1 {
            return SurfaceClass::Other;
        }
        let boundary = self.boundary_complex();
        if boundary.classify_curve() != SurfaceClass::Circle1 {
            return SurfaceClass::Other;
        }
        let links_ok = self.faces(0).iter().all(|v| match self.link(v) {
            Ok(l) if boundary.contains(v) => l.is_path(),
            Ok(l) => l.classify_curve() == SurfaceClass::Circle1,
            Err(_) => false,
        });
        if links_ok {
            SurfaceClass::Ball2
        } else {
            SurfaceClass::Other
        }
    }

    /// Applies an injective relabeling to every facet.
    pub fn relabel<F: Fn(VertexId) -> VertexId>(&self, f: F) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().map(|s| s.relabel(&f)))
            .expect("relabeling preserves dimension")
    }

    /// Union of facet sets; both complexes must have the same dimension.
    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.facets.iter().chain(other.facets.iter()).cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex;

    fn tetra() -> SimplicialComplex {
        SimplicialComplex::from_facets([simplex![1, 2, 3, 4]]).unwrap()
    }

    fn literal_b4() -> SimplicialComplex {
        SimplicialComplex::from_facets([
            simplex![2, 3, 5, 6],
            simplex![2, 3, 6, 7],
            simplex![3, 4, 6, 7],
        ])
        .unwrap()
    }

    /// Facets of C(8,4) written out by hand from the evenness rule.
    fn p1() -> SimplicialComplex {
        let raw: [[u32; 4]; 20] = [
            [1, 2, 3, 4], [1, 2, 4, 5], [1, 2, 5, 6], [1, 2, 6, 7], [1, 2, 7, 8],
            [2, 3, 4, 5], [2, 3, 5, 6], [2, 3, 6, 7], [2, 3, 7, 8],
            [3, 4, 5, 6], [3, 4, 6, 7], [3, 4, 7, 8],
            [4, 5, 6, 7], [4, 5, 7, 8], [5, 6, 7, 8],
            [1, 3, 4, 8], [1, 4, 5, 8], [1, 5, 6, 8], [1, 6, 7, 8], [1, 2, 3, 8],
        ];
        SimplicialComplex::from_facets(raw.iter().map(|f| Simplex::new(f.to_vec()).unwrap()))
            .unwrap()
    }

    #[test]
    fn single_tetrahedron_closure() {
        assert_eq!(tetra().f_vector(), FVector(vec![4, 6, 4, 1]));
    }

    #[test]
    fn literal_ball_closure() {
        // subsets of the three facets, deduplicated by hand: labels 2..=7,
        // 4+4+4 triangles minus the two shared ones (236, 367)
        let b = literal_b4();
        assert_eq!(b.vertices().len(), 6);
        assert_eq!(b.triangles().len(), 10);
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let err = SimplicialComplex::from_facets([simplex![1, 2], simplex![2, 3, 4]]);
        assert!(matches!(err, Err(Error::MixedDimensions { .. })));
    }

    #[test]
    fn duplicate_facets_merge() {
        let c = SimplicialComplex::from_facets([simplex![1, 2, 3], simplex![3, 2, 1]]).unwrap();
        assert_eq!(c.num_facets(), 1);
    }

    #[test]
    fn f_vectors() {
        assert_eq!(tetra().boundary_complex().f_vector(), FVector(vec![4, 6, 4]));
        assert_eq!(p1().f_vector(), FVector(vec![8, 28, 40, 20]));
    }

    #[test]
    fn links() {
        let t = tetra();
        assert!(t.link(&simplex![1, 2, 3, 4]).unwrap().is_empty());

        let l = p1().link(&simplex![3, 6]).unwrap();
        let expect = SimplicialComplex::from_facets([
            simplex![2, 5],
            simplex![4, 5],
            simplex![4, 7],
            simplex![2, 7],
        ])
        .unwrap();
        assert_eq!(l, expect);

        let l = literal_b4().link(&simplex![3, 6]).unwrap();
        let expect =
            SimplicialComplex::from_facets([simplex![2, 5], simplex![2, 7], simplex![4, 7]])
                .unwrap();
        assert_eq!(l, expect);

        assert!(matches!(
            t.link(&simplex![1, 5]),
            Err(Error::FaceNotInComplex(_))
        ));
    }

    #[test]
    fn boundaries() {
        assert_eq!(tetra().boundary_complex().num_facets(), 4);
        let expect: BTreeSet<Simplex> = [
            simplex![2, 3, 5],
            simplex![2, 5, 6],
            simplex![3, 5, 6],
            simplex![3, 4, 6],
            simplex![2, 3, 7],
            simplex![2, 6, 7],
            simplex![3, 4, 7],
            simplex![4, 6, 7],
        ]
        .into_iter()
        .collect();
        assert_eq!(literal_b4().boundary_complex().facets(), &expect);
        assert!(p1().boundary_complex().is_empty());
    }

    #[test]
    fn pseudomanifold() {
        assert!(p1().is_closed_pseudomanifold_3());
        assert!(!tetra().is_closed_pseudomanifold_3());
        let shifted = p1().relabel(|v| v + 8);
        let two = p1().union(&shifted).unwrap();
        assert!(!two.is_closed_pseudomanifold_3());
    }

    #[test]
    fn surfaces() {
        let sphere = tetra().boundary_complex();
        assert_eq!(sphere.classify_surface(), Ok(SurfaceClass::Sphere2));
        let tri = SimplicialComplex::from_facets([simplex![1, 2, 3]]).unwrap();
        assert_eq!(tri.classify_surface(), Ok(SurfaceClass::Ball2));
        assert_eq!(
            literal_b4().boundary_complex().classify_surface(),
            Ok(SurfaceClass::Sphere2)
        );
        assert_eq!(
            literal_b4().boundary_complex().euler_characteristic(),
            2
        );
        assert_eq!(
            sphere.boundary_complex().classify_surface().unwrap_err(),
            Error::WrongDimension {
                expected: "1 or 2",
                actual: -1
            }
        );
        assert!(tetra().classify_surface().is_err());

        // two triangles meeting only in a vertex: bowtie
        let bowtie = SimplicialComplex::from_facets([simplex![1, 2, 3], simplex![1, 4, 5]]).unwrap();
        assert_eq!(bowtie.classify_surface(), Ok(SurfaceClass::Other));
        // three triangles on one edge
        let fin = SimplicialComplex::from_facets([
            simplex![1, 2, 3],
            simplex![1, 2, 4],
            simplex![1, 2, 5],
        ])
        .unwrap();
        assert_eq!(fin.classify_surface(), Ok(SurfaceClass::Other));

        let cycle = SimplicialComplex::from_facets([
            simplex![1, 2],
            simplex![2, 3],
            simplex![1, 3],
        ])
        .unwrap();
        assert_eq!(cycle.classify_surface(), Ok(SurfaceClass::Circle1));
        let path = SimplicialComplex::from_facets([simplex![1, 2], simplex![2, 3]]).unwrap();
        assert_eq!(path.classify_surface(), Ok(SurfaceClass::Other));
    }

    #[test]
    fn star_of_vertex() {
        let s = literal_b4().star(&simplex![4]).unwrap();
        assert_eq!(s.num_facets(), 1);
    }
}
