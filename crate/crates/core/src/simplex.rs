//! Vertex labels and simplices.
//!
//! A [`Simplex`] is a strictly increasing list of positive vertex labels. It
//! is the unit every other module trades in: facets, faces, links and cell
//! intersections are all simplices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based vertex label.
pub type VertexId = u32;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from labels in any order. Duplicates and label 0 are
    /// rejected.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.first() == Some(&0) {
            return Err(Error::InvalidSimplex {
                vertices,
                reason: "vertex labels start at 1",
            });
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex {
                vertices,
                reason: "duplicate vertex",
            });
        }
        Ok(Simplex(vertices))
    }

    /// Builds a simplex from labels already known to be distinct and nonzero.
    ///
    /// Panics in debug builds if that is not the case.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(vertices.first() != Some(&0));
        Simplex(vertices)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, with the empty simplex at -1.
    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        // both sorted: merge walk
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<_> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn with_vertex(&self, v: VertexId) -> Result<Simplex> {
        if self.contains(v) {
            return Err(Error::InvalidSimplex {
                vertices: self.0.clone(),
                reason: "duplicate vertex",
            });
        }
        let mut out = self.0.clone();
        out.push(v);
        Simplex::new(out)
    }

    pub fn without_vertex(&self, v: VertexId) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// All faces with exactly `k` vertices, in lexicographic order.
    pub fn faces_of_size(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        use itertools::Itertools;
        self.0.iter().copied().combinations(k).map(Simplex)
    }

    /// Every nonempty face, the simplex itself included.
    pub fn nonempty_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..=self.len()).flat_map(move |k| self.faces_of_size(k))
    }

    /// Applies a relabeling; the map must be injective on this simplex.
    pub fn relabel<F: Fn(VertexId) -> VertexId>(&self, f: F) -> Simplex {
        let mut v: Vec<_> = self.0.iter().map(|&x| f(x)).collect();
        v.sort_unstable();
        Simplex(v)
    }
}

impl TryFrom<Vec<VertexId>> for Simplex {
    type Error = Error;

    fn try_from(v: Vec<VertexId>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<VertexId> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Shorthand for building a simplex from a literal list in tests and
/// construction code. Panics on invalid input.
#[macro_export]
macro_rules! simplex {
    ($($v:expr),* $(,)?) => {
        $crate::simplex::Simplex::new(vec![$($v),*]).expect("valid simplex literal")
    };
}
