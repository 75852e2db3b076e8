//! Serialized forms of complexes and polyhedral spheres.
//!
//! Two encodings share one document model:
//!
//! * JSON: `{"n", "variant", "vertices", "apexes", "cells"}` where each cell
//!   is `{"type":"simplex","vertices":[..]}` or
//!   `{"type":"bipyramid","apexes":[..],"equator":[..]}`.
//! * Facets text: one cell per line, `S v1 v2 v3 v4` or
//!   `B a1 a2 | e1 e2 e3`. Lines starting with `#` are comments; comments of
//!   the form `#@ key value..` carry the metadata (`n`, `variant`, `apex a q`).
//!
//! Cells are written in sorted order. A bipyramid equator is written with
//! its largest label first (the cone apex `q(a)` for cells built here) and
//! the other two ascending, e.g. `B 3 6 | 9 2 5`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ball::Variant;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};
use crate::sphere::{BipyramidCell, PolyhedralSphere};

/// Equator labels in display order: largest first, then ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Equator(Simplex);

impl TryFrom<Vec<VertexId>> for Equator {
    type Error = Error;

    fn try_from(v: Vec<VertexId>) -> Result<Self> {
        let s = Simplex::new(v)?;
        if s.len() != 3 {
            return Err(Error::InvalidSimplex {
                vertices: s.into(),
                reason: "equator needs 3 vertices",
            });
        }
        Ok(Equator(s))
    }
}

impl From<Equator> for Vec<VertexId> {
    fn from(e: Equator) -> Self {
        let v = e.0.vertices();
        vec![v[2], v[0], v[1]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CellRecord {
    Simplex { vertices: Simplex },
    Bipyramid { apexes: Simplex, equator: Equator },
}

impl CellRecord {
    fn vertices(&self) -> Simplex {
        match self {
            CellRecord::Simplex { vertices } => vertices.clone(),
            CellRecord::Bipyramid { apexes, equator } => apexes.union(&equator.0),
        }
    }

    fn bipyramid(b: &BipyramidCell) -> Self {
        CellRecord::Bipyramid {
            apexes: b.apexes().clone(),
            equator: Equator(b.equator().clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub n: Option<u32>,
    pub variant: Option<Variant>,
    pub vertices: Vec<VertexId>,
    #[serde(default)]
    pub apexes: BTreeMap<u32, VertexId>,
    pub cells: Vec<CellRecord>,
}

impl Document {
    fn new(
        n: Option<u32>,
        variant: Option<Variant>,
        apexes: BTreeMap<u32, VertexId>,
        mut cells: Vec<CellRecord>,
    ) -> Self {
        cells.sort();
        cells.dedup();
        let vertices: BTreeSet<VertexId> = cells
            .iter()
            .flat_map(|c| c.vertices().vertices().to_vec())
            .collect();
        Document {
            n,
            variant,
            vertices: vertices.into_iter().collect(),
            apexes,
            cells,
        }
    }

    pub fn from_sphere(q: &PolyhedralSphere) -> Self {
        let cells = q
            .simplex_cells
            .iter()
            .map(|s| CellRecord::Simplex { vertices: s.clone() })
            .chain(q.bipyramids.values().map(CellRecord::bipyramid))
            .collect();
        Document::new(Some(q.n), Some(q.variant), q.apexes.clone(), cells)
    }

    pub fn from_complex(
        x: &SimplicialComplex,
        n: Option<u32>,
        variant: Option<Variant>,
        apexes: BTreeMap<u32, VertexId>,
    ) -> Self {
        let cells = x
            .facets()
            .iter()
            .map(|s| CellRecord::Simplex { vertices: s.clone() })
            .collect();
        Document::new(n, variant, apexes, cells)
    }

    pub fn has_bipyramids(&self) -> bool {
        self.cells
            .iter()
            .any(|c| matches!(c, CellRecord::Bipyramid { .. }))
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let mut facets = Vec::with_capacity(self.cells.len());
        for c in &self.cells {
            match c {
                CellRecord::Simplex { vertices } => facets.push(vertices.clone()),
                CellRecord::Bipyramid { .. } => {
                    return Err(Error::WrongDimension {
                        expected: "simplicial cells only",
                        actual: 3,
                    })
                }
            }
        }
        SimplicialComplex::from_facets(facets)
    }

    /// Rebuilds the sphere; bipyramid sites come from the apex map.
    pub fn to_sphere(&self) -> Result<PolyhedralSphere> {
        let n = self.n.ok_or_else(|| Error::OutOfRange("document has no n".into()))?;
        let variant = self
            .variant
            .ok_or_else(|| Error::OutOfRange("document has no variant".into()))?;
        let mut simplex_cells = BTreeSet::new();
        let mut bipyramids = BTreeMap::new();
        for c in &self.cells {
            match c {
                CellRecord::Simplex { vertices } => {
                    simplex_cells.insert(vertices.clone());
                }
                CellRecord::Bipyramid { apexes, equator } => {
                    let cell = BipyramidCell::new(apexes.clone(), equator.0.clone())?;
                    let site = cell.site(&self.apexes).ok_or_else(|| {
                        Error::OutOfRange(format!(
                            "bipyramid {} | {} matches no site",
                            apexes, equator.0
                        ))
                    })?;
                    bipyramids.insert(site, cell);
                }
            }
        }
        Ok(PolyhedralSphere {
            n,
            variant,
            apexes: self.apexes.clone(),
            simplex_cells,
            bipyramids,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Facets,
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let rebuilt = Document::new(doc.n, doc.variant, doc.apexes.clone(), doc.cells.clone());
    if rebuilt.vertices != doc.vertices {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "\"vertices\" does not match the vertices of the cells".into(),
        });
    }
    Ok(rebuilt)
}

pub fn to_facets(doc: &Document) -> String {
    let mut out = String::from("# spherewright facets\n");
    if let Some(n) = doc.n {
        let _ = writeln!(out, "#@ n {n}");
    }
    if let Some(v) = doc.variant {
        let _ = writeln!(out, "#@ variant {v}");
    }
    for (a, q) in &doc.apexes {
        let _ = writeln!(out, "#@ apex {a} {q}");
    }
    for c in &doc.cells {
        match c {
            CellRecord::Simplex { vertices } => {
                out.push('S');
                for v in vertices.vertices() {
                    let _ = write!(out, " {v}");
                }
            }
            CellRecord::Bipyramid { apexes, equator } => {
                let a = apexes.vertices();
                let e: Vec<VertexId> = equator.clone().into();
                let _ = write!(out, "B {} {} | {} {} {}", a[0], a[1], e[0], e[1], e[2]);
            }
        }
        out.push('\n');
    }
    out
}

struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    items.push((s, &text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            items.push((s, &text[s..]));
        }
        Tokens { line, items, pos: 0 }
    }

    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: column + 1,
            message: message.into(),
        }
    }

    fn column(&self) -> usize {
        self.items
            .get(self.pos)
            .or(self.items.last())
            .map(|(c, t)| if self.pos < self.items.len() { *c } else { c + t.len() })
            .unwrap_or(0)
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let t = self.items.get(self.pos).copied();
        self.pos += 1;
        t
    }

    fn number(&mut self) -> Result<(usize, u32)> {
        let col = self.column();
        match self.next() {
            None => Err(self.err(col, "expected a vertex label")),
            Some((c, t)) => t
                .parse::<u32>()
                .map(|v| (c, v))
                .map_err(|_| self.err(c, format!("'{t}' is not a vertex label"))),
        }
    }

    fn labels_until_bar_or_end(&mut self) -> Result<(usize, Vec<u32>)> {
        let start = self.column();
        let mut out = Vec::new();
        while let Some(&(_, t)) = self.items.get(self.pos) {
            if t == "|" {
                break;
            }
            out.push(self.number()?.1);
        }
        Ok((start, out))
    }

    fn simplex(&self, column: usize, labels: Vec<u32>) -> Result<Simplex> {
        Simplex::new(labels).map_err(|e| match e {
            Error::InvalidSimplex { reason, vertices } => {
                self.err(column, format!("{reason} in {vertices:?}"))
            }
            other => other,
        })
    }

    fn expect_end(&self) -> Result<()> {
        match self.items.get(self.pos) {
            None => Ok(()),
            Some(&(c, t)) => Err(self.err(c, format!("unexpected '{t}'"))),
        }
    }
}

pub fn from_facets(text: &str) -> Result<Document> {
    let mut n = None;
    let mut variant = None;
    let mut apexes = BTreeMap::new();
    let mut cells = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if let Some(rest) = raw.trim_start().strip_prefix("#@") {
            let offset = raw.len() - rest.len();
            let mut tok = Tokens::new(line, rest);
            let shift = |e: Error| match e {
                Error::Parse { line, column, message } => Error::Parse {
                    line,
                    column: column + offset,
                    message,
                },
                other => other,
            };
            let (c, key) = match tok.next() {
                Some(k) => k,
                None => continue,
            };
            match key {
                "n" => {
                    let (_, v) = tok.number().map_err(shift)?;
                    n = Some(v);
                }
                "variant" => {
                    let (vc, v) = tok.next().ok_or_else(|| shift(tok.err(c, "missing variant")))?;
                    variant = Some(
                        v.parse::<Variant>()
                            .map_err(|_| shift(tok.err(vc, format!("unknown variant '{v}'"))))?,
                    );
                }
                "apex" => {
                    let (_, a) = tok.number().map_err(shift)?;
                    let (_, q) = tok.number().map_err(shift)?;
                    apexes.insert(a, q);
                }
                other => return Err(shift(tok.err(c, format!("unknown directive '{other}'")))),
            }
            tok.expect_end().map_err(shift)?;
            continue;
        }
        let body = raw.trim_start();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut tok = Tokens::new(line, raw);
        let (c, kind) = tok.next().expect("nonempty line");
        match kind {
            "S" => {
                let (col, labels) = tok.labels_until_bar_or_end()?;
                if labels.is_empty() {
                    return Err(tok.err(col, "simplex needs at least one vertex"));
                }
                tok.expect_end()?;
                cells.push(CellRecord::Simplex {
                    vertices: tok.simplex(col, labels)?,
                });
            }
            "B" => {
                let (acol, a) = tok.labels_until_bar_or_end()?;
                if a.len() != 2 {
                    return Err(tok.err(acol, format!("bipyramid needs 2 apexes, got {}", a.len())));
                }
                let bar_col = tok.column();
                match tok.next() {
                    Some((_, "|")) => {}
                    _ => return Err(tok.err(bar_col, "expected '|'")),
                }
                let (ecol, e) = tok.labels_until_bar_or_end()?;
                if e.len() != 3 {
                    return Err(tok.err(ecol, format!("equator needs 3 vertices, got {}", e.len())));
                }
                tok.expect_end()?;
                let apexes_s = tok.simplex(acol, a)?;
                let equator = tok.simplex(ecol, e)?;
                if !apexes_s.is_disjoint(&equator) {
                    return Err(tok.err(acol, "apexes meet the equator"));
                }
                cells.push(CellRecord::Bipyramid {
                    apexes: apexes_s,
                    equator: Equator(equator),
                });
            }
            other => return Err(tok.err(c, format!("unknown cell kind '{other}'"))),
        }
    }
    Ok(Document::new(n, variant, apexes, cells))
}

pub fn serialize(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Facets => to_facets(doc),
    }
}

/// Parses either encoding; text whose first non-blank character is `{` is
/// taken as JSON.
pub fn deserialize(text: &str) -> Result<Document> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_facets(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex;
    use crate::sphere::{build_q, SiteSelection};

    #[test]
    fn bipyramid_line() {
        let q = build_q(1, Variant::Extended, &SiteSelection::Auto).unwrap();
        let text = to_facets(&Document::from_sphere(&q));
        assert!(text.lines().any(|l| l == "B 3 6 | 9 2 5"));
        assert_eq!(text.lines().filter(|l| l.starts_with("S ")).count(), 22);
        assert_eq!(text.lines().filter(|l| l.starts_with("B ")).count(), 1);
    }

    #[test]
    fn json_shape() {
        let q = build_q(1, Variant::Extended, &SiteSelection::Auto).unwrap();
        let doc = Document::from_sphere(&q);
        let v: serde_json::Value = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(v["n"], 1);
        assert_eq!(v["variant"], "extended");
        assert_eq!(v["apexes"]["4"], 9);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 9);
        let b = v["cells"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["type"] == "bipyramid")
            .unwrap();
        assert_eq!(b["apexes"], serde_json::json!([3, 6]));
        assert_eq!(b["equator"], serde_json::json!([9, 2, 5]));
    }

    #[test]
    fn round_trip_q2_both_formats() {
        let q = build_q(2, Variant::Extended, &SiteSelection::All).unwrap();
        let doc = Document::from_sphere(&q);
        for f in [Format::Json, Format::Facets] {
            let back = deserialize(&serialize(&doc, f)).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_sphere().unwrap(), q);
        }
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = from_facets("# header\nS 1 2 2 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }), "{err:?}");

        let err = from_facets("S 1 2 x 4").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 7, .. }), "{err:?}");

        let err = from_facets("B 3 6 9 2 5").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let err = from_facets("B 3 6 | 9 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 9, .. }), "{err:?}");

        let err = from_facets("Q 1 2 3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));

        let err = from_facets("#@ variant sideways").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 12, .. }), "{err:?}");

        let err = from_json("{\"n\": 1,\n \"cells\": [}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));

        let err = from_json(
            r#"{"n":null,"variant":null,"vertices":[1,2],"apexes":{},"cells":[{"type":"simplex","vertices":[1,2,2]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn vertex_list_must_agree() {
        let err = from_json(
            r#"{"n":null,"variant":null,"vertices":[1,2,3],"apexes":{},"cells":[{"type":"simplex","vertices":[1,2]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn plain_complex() {
        let doc = from_facets("S 4 3 2 1\nS 2 3 4 5\n").unwrap();
        let x = doc.to_complex().unwrap();
        assert_eq!(x.num_facets(), 2);
        assert!(x.facets().contains(&simplex![1, 2, 3, 4]));
        assert!(doc.to_sphere().is_err());
    }
}
