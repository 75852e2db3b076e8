//! The shellable 3-balls `B(a)` inside `P(n)` and their named faces.
//!
//! For `a` in `A(n)` (the even integers in `[n+2, 3n+1]`) and `u` in `[n]`,
//! three tetrahedra `I(a,u,1..=3)` are facets of `P(n)`. The literal ball
//! uses exactly those `3n` facets; the extended ball adds
//! `I(a,0,2) = {a-1, a, a+1, a+2}`, which is the fourth tetrahedron around
//! the edge `E(a,1)` and makes that edge interior.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Literal,
    Extended,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Literal => "literal",
            Variant::Extended => "extended",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "literal" => Ok(Variant::Literal),
            "extended" => Ok(Variant::Extended),
            other => Err(Error::OutOfRange(format!("unknown variant '{other}'"))),
        }
    }
}

/// The ball centers: even integers in `[n+2, 3n+1]`.
pub fn a_set(n: u32) -> Result<Vec<u32>> {
    if n < 1 {
        return Err(Error::InvalidN(n));
    }
    Ok((n + 2..=3 * n + 1).filter(|m| m % 2 == 0).collect())
}

fn check_center(n: u32, a: u32) -> Result<()> {
    if !a_set(n)?.contains(&a) {
        return Err(Error::OutOfRange(format!("a={a} is not in A({n})")));
    }
    Ok(())
}

fn labels(n: u32, raw: [i64; 4]) -> Result<Simplex> {
    let top = 4 * n as i64 + 4;
    if raw.iter().any(|&x| x < 1 || x > top) {
        return Err(Error::OutOfRange(format!("labels {raw:?} leave [1,{top}]")));
    }
    Simplex::new(raw.iter().map(|&x| x as VertexId).collect())
}

/// The tetrahedron `I(a,u,i)`. `u = 0` is accepted only with `i = 2`.
pub fn i_facet(n: u32, a: u32, u: u32, i: u8) -> Result<Simplex> {
    check_center(n, a)?;
    if u > n || (u == 0 && i != 2) {
        return Err(Error::OutOfRange(format!("u={u}, i={i} with n={n}")));
    }
    let (a, u) = (a as i64, u as i64);
    let raw = match i {
        1 => [a - u - 1, a - u, a + u, a + u + 1],
        2 => [a - u - 1, a - u, a + u + 1, a + u + 2],
        3 => [a - u, a - u + 1, a + u + 1, a + u + 2],
        _ => return Err(Error::OutOfRange(format!("i={i} not in [3]"))),
    };
    labels(n, raw)
}

/// Lower pair `I_-(a,u,i)` and upper pair `I_+(a,u,i)` of a tetrahedron.
pub fn split_pairs(facet: &Simplex) -> (Simplex, Simplex) {
    let v = facet.vertices();
    (
        Simplex::from_sorted_unchecked(v[..2].to_vec()),
        Simplex::from_sorted_unchecked(v[2..].to_vec()),
    )
}

/// `(x_-(a,u,i), x_+(a,u,i))`.
pub fn x_pair(a: u32, u: u32, i: u8) -> (VertexId, VertexId) {
    match i {
        1 => (a - u - 1, a + u),
        2 => (a - u - 1, a + u + 2),
        3 => (a - u + 1, a + u + 2),
        _ => panic!("i must be in [3]"),
    }
}

/// All named faces attached to one site `(a, u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteFaces {
    pub a: u32,
    pub u: u32,
    pub i1: Simplex,
    pub i2: Simplex,
    pub i3: Simplex,
    /// `E(a,u) = {a-u, a+u+1}`.
    pub e: Simplex,
    /// `T_-(a,u) = {a-u-1, a-u, a+u}`.
    pub t_minus: Simplex,
    /// `T_+(a,u) = {a-u-1, a+u, a+u+1}`.
    pub t_plus: Simplex,
    /// `R(a,u) = T_- ∩ T_+ = {a-u-1, a+u}`.
    pub r: Simplex,
}

impl SiteFaces {
    pub fn new(n: u32, a: u32, u: u32) -> Result<Self> {
        if u < 1 || u > n {
            return Err(Error::OutOfRange(format!("u={u} not in [{n}]")));
        }
        let i1 = i_facet(n, a, u, 1)?;
        let i2 = i_facet(n, a, u, 2)?;
        let i3 = i_facet(n, a, u, 3)?;
        let e = Simplex::new(vec![a - u, a + u + 1])?;
        let t_minus = Simplex::new(vec![a - u - 1, a - u, a + u])?;
        let t_plus = Simplex::new(vec![a - u - 1, a + u, a + u + 1])?;
        let r = t_minus.intersection(&t_plus);
        Ok(SiteFaces {
            a,
            u,
            i1,
            i2,
            i3,
            e,
            t_minus,
            t_plus,
            r,
        })
    }

    /// The disk `D(a,u)`: closure of `T_-` and `T_+`.
    pub fn disk(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets([self.t_minus.clone(), self.t_plus.clone()])
            .expect("two triangles")
    }
}

/// Mean of the vertex labels.
pub fn label_average(face: &Simplex) -> Ratio<u64> {
    assert!(!face.is_empty(), "label average of the empty face");
    let sum: u64 = face.vertices().iter().map(|&v| v as u64).sum();
    Ratio::new(sum, face.len() as u64)
}

/// The extra facet of the extended ball, `I(a,0,2)`.
pub fn extension_facet(n: u32, a: u32) -> Result<Simplex> {
    i_facet(n, a, 0, 2)
}

/// Facets of `B(a)` in shelling order: `F_i = I(a, ceil(i/3), r(i))`,
/// preceded by `I(a,0,2)` for the extended variant.
pub fn shelling_facets(n: u32, a: u32, variant: Variant) -> Result<Vec<Simplex>> {
    let mut out = Vec::with_capacity(3 * n as usize + 1);
    if variant == Variant::Extended {
        out.push(extension_facet(n, a)?);
    }
    for idx in 1..=3 * n {
        let u = idx.div_ceil(3);
        let r = ((idx - 1) % 3 + 1) as u8;
        out.push(i_facet(n, a, u, r)?);
    }
    Ok(out)
}

pub fn build_ball(n: u32, a: u32, variant: Variant) -> Result<SimplicialComplex> {
    SimplicialComplex::from_facets(shelling_facets(n, a, variant)?)
}

/// One step of a shelling: the facet added and the triangles it shares
/// with the union of the facets before it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingStep {
    pub facet: Simplex,
    pub gluing: Vec<Simplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingCertificate {
    pub steps: Vec<ShellingStep>,
}

impl ShellingCertificate {
    /// Records the gluing triangles of an arbitrary facet order.
    pub fn from_order(order: Vec<Simplex>) -> Self {
        let mut steps: Vec<ShellingStep> = Vec::with_capacity(order.len());
        for (k, facet) in order.iter().enumerate() {
            let gluing = facet
                .faces_of_size(3)
                .filter(|t| order[..k].iter().any(|prev| t.is_subset_of(prev)))
                .collect();
            steps.push(ShellingStep {
                facet: facet.clone(),
                gluing,
            });
        }
        ShellingCertificate { steps }
    }

    pub fn ordered_facets(&self) -> Vec<Simplex> {
        self.steps.iter().map(|s| s.facet.clone()).collect()
    }
}

pub fn shelling_order(n: u32, a: u32, variant: Variant) -> Result<ShellingCertificate> {
    Ok(ShellingCertificate::from_order(shelling_facets(n, a, variant)?))
}
