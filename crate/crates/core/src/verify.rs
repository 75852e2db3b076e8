//! Extensional checks of every structural claim behind the construction.
//!
//! Each checker rebuilds what it needs from facets and reports a verdict
//! together with concrete witnesses. No checker relies on the outcome of
//! another. Claims of the form "exactly these faces" are reported as set
//! differences between the computed truth and the claimed family.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::{
    a_set, build_ball, i_facet, shelling_order, split_pairs, x_pair, ShellingCertificate,
    SiteFaces, Variant,
};
use crate::complex::{SimplicialComplex, SurfaceClass};
use crate::cyclic::build_p;
use crate::enumerate::{split_bipyramid, SplitMode};
use crate::error::Result;
use crate::homology::betti_mod2;
use crate::simplex::Simplex;
use crate::sphere::{build_p_prime, build_q, Cell, PolyhedralSphere, SiteSelection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LemmaId {
    L2Vertices,
    L3Shelling,
    L4NoSharedTriangle,
    L5BoundaryOnly,
    L6BoundaryTriangles,
    L7InteriorEdges,
    L8DiskIntersections,
    Polyhedrality,
    Sphere,
    Theorem1,
}

impl LemmaId {
    pub const ALL: [LemmaId; 10] = [
        LemmaId::L2Vertices,
        LemmaId::L3Shelling,
        LemmaId::L4NoSharedTriangle,
        LemmaId::L5BoundaryOnly,
        LemmaId::L6BoundaryTriangles,
        LemmaId::L7InteriorEdges,
        LemmaId::L8DiskIntersections,
        LemmaId::Polyhedrality,
        LemmaId::Sphere,
        LemmaId::Theorem1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::L2Vertices => "L2_VERTICES",
            LemmaId::L3Shelling => "L3_SHELLING",
            LemmaId::L4NoSharedTriangle => "L4_NO_SHARED_TRIANGLE",
            LemmaId::L5BoundaryOnly => "L5_BOUNDARY_ONLY",
            LemmaId::L6BoundaryTriangles => "L6_BOUNDARY_TRIANGLES",
            LemmaId::L7InteriorEdges => "L7_INTERIOR_EDGES",
            LemmaId::L8DiskIntersections => "L8_DISK_INTERSECTIONS",
            LemmaId::Polyhedrality => "POLYHEDRALITY",
            LemmaId::Sphere => "SPHERE",
            LemmaId::Theorem1 => "THEOREM1",
        }
    }

    /// Matches the full id or its short prefix (`L6`, `SPHERE`), case
    /// insensitively.
    pub fn parse(s: &str) -> Option<LemmaId> {
        let s = s.trim().to_ascii_uppercase();
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s || id.as_str().split('_').next() == Some(s.as_str()))
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `faces = [intersection, bound]`
    NotContained,
    /// `faces = [facet]`
    RepeatedFacet,
    /// `faces = [added facet, maximal common faces...]`
    EmptyGluing,
    /// `faces = [added facet, offending maximal common face]`
    GluingNotPure,
    /// `faces = [added facet, gluing triangles...]`
    GluingNotBall,
    /// `faces = [added facet, triangle]`
    GluingInterior,
    /// `faces = [triangles recorded in the certificate...]`
    CertificateMismatch,
    /// `faces = final facets`
    FinalNotBall,
    /// `faces = [triangle]`
    SharedTriangle,
    /// `faces = [face]`, interior to the ball named in the detail
    InteriorCommonFace,
    /// `faces = [triangle, facets of the ball containing it...]`
    ClaimedTriangleInterior,
    /// `faces = [triangle]`
    UnclaimedBoundaryTriangle,
    /// `faces = [edge, link facets...]`
    EdgeLinkNotCycle,
    /// `faces = [edge, link facets...]`
    ClaimedEdgeNotInterior,
    /// `faces = [edge]`
    UnclaimedInteriorEdge,
    /// `faces = [maximal common faces...]`
    DiskIntersectionNotFace,
    /// `faces = [common face]`
    DiskIntersectionInterior,
    /// `faces = [edge]`
    EdgeCoincidence,
    /// `faces = [missing edges...]`
    MissingEdgeMismatch,
    /// `faces = [cell 1 vertices, cell 2 vertices, common vertices]`
    CellIntersectionNotFace,
    /// `faces = [ridge]` with its degree in the detail, or empty if disconnected
    NotPseudomanifold,
    /// `faces = [vertex]`
    VertexLinkNotSphere,
    EulerCharacteristic,
    BettiNumbers,
    CountMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub faces: Vec<Simplex>,
    pub detail: String,
}

impl Witness {
    fn new(kind: WitnessKind, faces: Vec<Simplex>, detail: impl Into<String>) -> Self {
        Witness {
            kind,
            faces,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

impl ReportParams {
    fn nv(n: u32, variant: Variant) -> Self {
        ReportParams {
            n: Some(n),
            variant: Some(variant),
            ..Default::default()
        }
    }

    fn with_a(mut self, a: u32) -> Self {
        self.a = Some(a);
        self
    }

    fn with_target(mut self, t: impl Into<String>) -> Self {
        self.target = Some(t.into());
        self
    }
}

impl fmt::Display for ReportParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(v) = self.variant {
            parts.push(format!("variant={v}"));
        }
        if let Some(a) = self.a {
            parts.push(format!("a={a}"));
        }
        if let Some(t) = &self.target {
            parts.push(format!("target={t}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// A named auxiliary fact established while checking a lemma.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub params: ReportParams,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub computed_truth: Option<Vec<Simplex>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub claimed: Option<Vec<Simplex>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub computed_not_claimed: Vec<Simplex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub claimed_not_computed: Vec<Simplex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl LemmaReport {
    fn new(lemma: LemmaId, params: ReportParams) -> Self {
        LemmaReport {
            lemma,
            params,
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            computed_truth: None,
            claimed: None,
            computed_not_claimed: Vec::new(),
            claimed_not_computed: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn fail(&mut self, w: Witness) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(w);
    }

    fn check(&mut self, name: impl Into<String>, holds: bool) {
        self.checks.push(SubCheck {
            name: name.into(),
            holds,
        });
    }

    fn finish(mut self) -> Self {
        if self.checks.iter().any(|c| !c.holds) {
            self.verdict = Verdict::Fail;
        }
        self
    }

    /// Fills the set-difference fields and fails on any difference.
    fn compare(&mut self, computed: BTreeSet<Simplex>, claimed: BTreeSet<Simplex>) {
        self.computed_not_claimed = computed.difference(&claimed).cloned().collect();
        self.claimed_not_computed = claimed.difference(&computed).cloned().collect();
        if !self.computed_not_claimed.is_empty() || !self.claimed_not_computed.is_empty() {
            self.verdict = Verdict::Fail;
        }
        self.computed_truth = Some(computed.into_iter().collect());
        self.claimed = Some(claimed.into_iter().collect());
    }

    pub fn summary_line(&self) -> String {
        let status = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        let mut line = format!("{status} {} {}", self.lemma, self.params);
        if !self.computed_not_claimed.is_empty() || !self.claimed_not_computed.is_empty() {
            line.push_str(&format!(
                " computed-not-claimed={} claimed-not-computed={}",
                self.computed_not_claimed.len(),
                self.claimed_not_computed.len()
            ));
        }
        if !self.witnesses.is_empty() {
            line.push_str(&format!(" witnesses={}", self.witnesses.len()));
        }
        line
    }
}

/// Faces of the closure of `facets` that are maximal under inclusion.
fn maximal_faces(faces: &BTreeSet<Simplex>) -> Vec<Simplex> {
    faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g.len() > f.len() && f.is_subset_of(g)))
        .cloned()
        .collect()
}

fn all_faces(x: &SimplicialComplex) -> BTreeSet<Simplex> {
    (0..=x.dim().max(0) as usize)
        .flat_map(|k| x.faces(k).iter().cloned())
        .collect()
}

/// The vertex-intersection bound: for `u' < u`,
/// `I(a,u,i) ∩ I(a,u',j)` lies in a three-element set depending on `i`.
/// The extended variant also sweeps `u' = 0` (with `j = 2`).
pub fn check_lemma_vertices(n: u32, variant: Variant) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(LemmaId::L2Vertices, ReportParams::nv(n, variant));
    let lowest = if variant == Variant::Extended { 0 } else { 1 };
    let mut count = 0usize;
    for a in a_set(n)? {
        for u in 1..=n {
            for i in 1..=3u8 {
                let big = i_facet(n, a, u, i)?;
                let bound = match i {
                    1 => Simplex::new(vec![a - u, a + u, a + u + 1])?,
                    2 => Simplex::new(vec![a - u, a + u + 1])?,
                    _ => Simplex::new(vec![a - u, a - u + 1, a + u + 1])?,
                };
                for up in lowest..u {
                    for j in 1..=3u8 {
                        if up == 0 && j != 2 {
                            continue;
                        }
                        count += 1;
                        let small = i_facet(n, a, up, j)?;
                        let common = big.intersection(&small);
                        if !common.is_subset_of(&bound) {
                            report.fail(Witness::new(
                                WitnessKind::NotContained,
                                vec![common, bound.clone()],
                                format!("I({a},{u},{i}) ∩ I({a},{up},{j})"),
                            ));
                        }
                    }
                }
            }
        }
    }
    report.notes.push(format!("{count} intersections checked"));
    Ok(report)
}

/// Validates a shelling certificate by recomputing every step.
pub fn check_shelling(cert: &ShellingCertificate) -> LemmaReport {
    check_shelling_with(cert, ReportParams::default())
}

/// The order `F_i = I(a, ceil(i/3), r(i))` (prefixed by `I(a,0,2)` for
/// the extended variant) checked on `B(a)`.
pub fn check_ball_shelling(n: u32, a: u32, variant: Variant) -> Result<LemmaReport> {
    let cert = shelling_order(n, a, variant)?;
    Ok(check_shelling_with(&cert, ReportParams::nv(n, variant).with_a(a)))
}

fn check_shelling_with(cert: &ShellingCertificate, params: ReportParams) -> LemmaReport {
    let mut report = LemmaReport::new(LemmaId::L3Shelling, params);
    let order = cert.ordered_facets();
    let distinct: BTreeSet<&Simplex> = order.iter().collect();
    if distinct.len() != order.len() || order.iter().any(|f| f.len() != 4) {
        for (k, f) in order.iter().enumerate() {
            if order[..k].contains(f) || f.len() != 4 {
                report.fail(Witness::new(
                    WitnessKind::RepeatedFacet,
                    vec![f.clone()],
                    format!("step {k}: repeated or not a tetrahedron"),
                ));
            }
        }
        return report;
    }

    for k in 1..order.len() {
        let facet = &order[k];
        let prior = SimplicialComplex::from_facets(order[..k].iter().cloned())
            .expect("tetrahedra");
        let common: BTreeSet<Simplex> = facet.nonempty_faces().filter(|s| prior.contains(s)).collect();
        let gluing: Vec<Simplex> = common.iter().filter(|s| s.len() == 3).cloned().collect();

        if cert.steps[k].gluing != gluing {
            report.fail(Witness::new(
                WitnessKind::CertificateMismatch,
                cert.steps[k].gluing.clone(),
                format!("step {k}: recorded gluing differs from recomputed {gluing:?}"),
            ));
        }
        if gluing.is_empty() {
            let mut faces = vec![facet.clone()];
            faces.extend(maximal_faces(&common));
            report.fail(Witness::new(
                WitnessKind::EmptyGluing,
                faces,
                format!("step {k}: no shared triangle"),
            ));
            continue;
        }
        for m in maximal_faces(&common) {
            if m.len() < 3 {
                report.fail(Witness::new(
                    WitnessKind::GluingNotPure,
                    vec![facet.clone(), m],
                    format!("step {k}: intersection is not 2-dimensional"),
                ));
            }
        }
        let disk = SimplicialComplex::from_facets(gluing.iter().cloned()).expect("triangles");
        if gluing.len() > 3 || disk.classify_surface() != Ok(SurfaceClass::Ball2) {
            let mut faces = vec![facet.clone()];
            faces.extend(gluing.iter().cloned());
            report.fail(Witness::new(
                WitnessKind::GluingNotBall,
                faces,
                format!("step {k}: gluing is not a 2-ball"),
            ));
        }
        let prior_boundary = prior.boundary_complex();
        for t in &gluing {
            if !prior_boundary.contains(t) {
                report.fail(Witness::new(
                    WitnessKind::GluingInterior,
                    vec![facet.clone(), t.clone()],
                    format!("step {k}: gluing triangle is interior to the prior union"),
                ));
            }
        }
    }

    if report.passed() && !order.is_empty() {
        let ball = SimplicialComplex::from_facets(order.iter().cloned()).expect("tetrahedra");
        let sphere_boundary =
            ball.boundary_complex().classify_surface() == Ok(SurfaceClass::Sphere2);
        let acyclic = betti_mod2(&ball) == vec![1, 0, 0, 0];
        report.check("final boundary is a 2-sphere", sphere_boundary);
        report.check("final complex has ball homology", acyclic);
        if !(sphere_boundary && acyclic) {
            report.fail(Witness::new(
                WitnessKind::FinalNotBall,
                order.clone(),
                "final complex is not a 3-ball",
            ));
        }
    }
    report.notes.push(format!("{} facets", order.len()));
    report.finish()
}

fn balls(n: u32, variant: Variant) -> Result<Vec<(u32, SimplicialComplex)>> {
    a_set(n)?
        .into_iter()
        .map(|a| Ok((a, build_ball(n, a, variant)?)))
        .collect()
}

/// Two distinct balls share no triangle.
pub fn check_no_shared_triangle(n: u32, variant: Variant) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(LemmaId::L4NoSharedTriangle, ReportParams::nv(n, variant));
    let balls = balls(n, variant)?;
    for (i, (a, b)) in balls.iter().enumerate() {
        for (a2, b2) in &balls[i + 1..] {
            for t in b.triangles().intersection(b2.triangles()) {
                report.fail(Witness::new(
                    WitnessKind::SharedTriangle,
                    vec![t.clone()],
                    format!("B({a}) and B({a2})"),
                ));
            }
        }
    }
    if balls.len() < 2 {
        report.notes.push("single ball: vacuous".into());
    }
    Ok(report)
}

/// Every face shared by two distinct balls lies on both boundaries.
pub fn check_boundary_only(n: u32, variant: Variant) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(LemmaId::L5BoundaryOnly, ReportParams::nv(n, variant));
    let balls = balls(n, variant)?;
    let boundaries: Vec<SimplicialComplex> =
        balls.iter().map(|(_, b)| b.boundary_complex()).collect();
    for (i, (a, b)) in balls.iter().enumerate() {
        let faces_b = all_faces(b);
        for (j, (a2, b2)) in balls.iter().enumerate().skip(i + 1) {
            for f in faces_b.intersection(&all_faces(b2)) {
                for (ball_a, bd) in [(a, &boundaries[i]), (a2, &boundaries[j])] {
                    if !bd.contains(f) {
                        report.fail(Witness::new(
                            WitnessKind::InteriorCommonFace,
                            vec![f.clone()],
                            format!("shared by B({a}) and B({a2}), interior to B({ball_a})"),
                        ));
                    }
                }
            }
        }
    }
    if balls.len() < 2 {
        report.notes.push("single ball: vacuous".into());
    }
    Ok(report)
}

/// Both ball-intersection checks.
pub fn check_ball_intersections(n: u32, variant: Variant) -> Result<(LemmaReport, LemmaReport)> {
    Ok((
        check_no_shared_triangle(n, variant)?,
        check_boundary_only(n, variant)?,
    ))
}

/// The claimed boundary family `I_σ(a,u,i) ∪ {x_{-σ}(a,u,i)}`.
pub fn claimed_boundary_triangles(n: u32, a: u32) -> Result<BTreeSet<Simplex>> {
    let mut out = BTreeSet::new();
    for u in 1..=n {
        for i in 1..=3u8 {
            let facet = i_facet(n, a, u, i)?;
            let (lower, upper) = split_pairs(&facet);
            let (x_minus, x_plus) = x_pair(a, u, i);
            out.insert(lower.with_vertex(x_plus)?);
            out.insert(upper.with_vertex(x_minus)?);
        }
    }
    Ok(out)
}

/// Computed boundary triangles of `B(a)` against the claimed family.
pub fn check_boundary_classification(a: u32, n: u32, variant: Variant) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(
        LemmaId::L6BoundaryTriangles,
        ReportParams::nv(n, variant).with_a(a),
    );
    let ball = build_ball(n, a, variant)?;
    let computed: BTreeSet<Simplex> = ball.boundary_complex().facets().clone();
    let claimed = claimed_boundary_triangles(n, a)?;

    let mut consumed = true;
    for u in 1..=n {
        let s = SiteFaces::new(n, a, u)?;
        consumed &= computed.contains(&s.t_minus) && computed.contains(&s.t_plus);
    }
    report.check("T_-(a,u) and T_+(a,u) lie on the boundary for every u", consumed);

    for t in claimed.difference(&computed) {
        let mut faces = vec![t.clone()];
        faces.extend(ball.cofacets(t).cloned());
        report.witnesses.push(Witness::new(
            WitnessKind::ClaimedTriangleInterior,
            faces,
            "claimed boundary triangle lies in two facets of the ball",
        ));
    }
    for t in computed.difference(&claimed) {
        report.witnesses.push(Witness::new(
            WitnessKind::UnclaimedBoundaryTriangle,
            vec![t.clone()],
            "boundary triangle missing from the claimed family",
        ));
    }
    report
        .notes
        .push(format!("{} computed, {} claimed", computed.len(), claimed.len()));
    report.compare(computed, claimed);
    Ok(report.finish())
}

/// Computed interior edges of `B(a)` against `{E(a,u) : u ∈ [n]}`, plus the
/// 4-cycle link of each interior `E(a,u)`.
pub fn check_interior_edges(a: u32, n: u32, variant: Variant) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(
        LemmaId::L7InteriorEdges,
        ReportParams::nv(n, variant).with_a(a),
    );
    let ball = build_ball(n, a, variant)?;
    let computed = ball.interior_faces(1);
    let mut claimed = BTreeSet::new();
    for u in 1..=n {
        let e = SiteFaces::new(n, a, u)?.e;
        claimed.insert(e.clone());
        let link = ball.link(&e)?;
        let mut link_faces = vec![e.clone()];
        link_faces.extend(link.facets().iter().cloned());
        if !computed.contains(&e) {
            report.witnesses.push(Witness::new(
                WitnessKind::ClaimedEdgeNotInterior,
                link_faces,
                format!("E({a},{u}) lies on the boundary; its link is not a cycle"),
            ));
            continue;
        }
        let cycle = [a - u - 1, a + u, a - u + 1, a + u + 2];
        let expected = SimplicialComplex::from_facets(
            (0..4).map(|k| Simplex::new(vec![cycle[k], cycle[(k + 1) % 4]]).expect("distinct")),
        )?;
        let is_cycle = link == expected;
        report.check(format!("link of E({a},{u}) is the 4-cycle {cycle:?}"), is_cycle);
        if !is_cycle {
            report.witnesses.push(Witness::new(
                WitnessKind::EdgeLinkNotCycle,
                link_faces,
                format!("E({a},{u})"),
            ));
        }
    }
    for e in computed.difference(&claimed) {
        report.witnesses.push(Witness::new(
            WitnessKind::UnclaimedInteriorEdge,
            vec![e.clone()],
            "interior edge outside the claimed family",
        ));
    }
    report.compare(computed, claimed);
    Ok(report.finish())
}

/// Pairwise intersections of the disks `D(a,u)`.
pub fn check_disk_intersections(n: u32, variant: Variant) -> Result<LemmaReport> {
    let mut report =
        LemmaReport::new(LemmaId::L8DiskIntersections, ReportParams::nv(n, variant));
    let mut sites = Vec::new();
    for a in a_set(n)? {
        for u in 1..=n {
            let s = SiteFaces::new(n, a, u)?;
            let disk = s.disk();
            let faces = all_faces(&disk);
            let boundary = disk.boundary_complex();
            sites.push((s, faces, boundary));
        }
    }

    let mut only_missing_edge = true;
    for (s, faces, _) in &sites {
        let verts: Vec<_> = s.i1.vertices().to_vec();
        let missing: Vec<Simplex> = s
            .i1
            .faces_of_size(2)
            .filter(|e| !faces.contains(e))
            .collect();
        if missing != vec![s.e.clone()] || verts.len() != 4 {
            only_missing_edge = false;
            report.witnesses.push(Witness::new(
                WitnessKind::MissingEdgeMismatch,
                missing,
                format!("D({},{})", s.a, s.u),
            ));
        }
    }
    report.check("E(a,u) is the only missing edge of D(a,u)", only_missing_edge);

    let mut distinct_edges = true;
    let mut pairs = 0usize;
    for (i, (s, f, bd)) in sites.iter().enumerate() {
        for (s2, f2, bd2) in &sites[i + 1..] {
            pairs += 1;
            let label = format!("D({},{}) ∩ D({},{})", s.a, s.u, s2.a, s2.u);
            if s.a != s2.a && s.e == s2.e {
                distinct_edges = false;
                report.witnesses.push(Witness::new(
                    WitnessKind::EdgeCoincidence,
                    vec![s.e.clone()],
                    label.clone(),
                ));
            }
            let common: BTreeSet<Simplex> = f.intersection(f2).cloned().collect();
            let maximal = maximal_faces(&common);
            if maximal.len() > 1 || maximal.iter().any(|m| m.len() > 2) {
                report.fail(Witness::new(
                    WitnessKind::DiskIntersectionNotFace,
                    maximal,
                    label,
                ));
                continue;
            }
            if s.a == s2.a {
                if let Some(m) = maximal.first() {
                    if !bd.contains(m) || !bd2.contains(m) {
                        report.fail(Witness::new(
                            WitnessKind::DiskIntersectionInterior,
                            vec![m.clone()],
                            label,
                        ));
                    }
                }
            }
        }
    }
    report.check("E(a,u) != E(a',u') whenever a != a'", distinct_edges);
    report.notes.push(format!("{pairs} disk pairs"));
    if sites.len() < 2 {
        report.notes.push("single disk: vacuous".into());
    }
    Ok(report.finish())
}

/// Every two cells meet in a single common face: the common faces have a
/// unique maximal element whose vertex set is the full vertex intersection.
pub fn check_polyhedrality(q: &PolyhedralSphere) -> LemmaReport {
    let mut report = LemmaReport::new(
        LemmaId::Polyhedrality,
        ReportParams::nv(q.n, q.variant).with_target("Q"),
    );
    let cells = q.cells();
    let lattices: Vec<BTreeSet<Simplex>> = cells.iter().map(Cell::face_lattice).collect();
    let vsets: Vec<Simplex> = cells.iter().map(Cell::vertex_set).collect();
    let mut by_vertex: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, v) in vsets.iter().enumerate() {
        for &x in v.vertices() {
            by_vertex.entry(x).or_default().push(i);
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for list in by_vertex.values() {
        for (k, &i) in list.iter().enumerate() {
            for &j in &list[k + 1..] {
                pairs.insert((i, j));
            }
        }
    }
    let failures: Vec<Witness> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let shared = vsets[i].intersection(&vsets[j]);
            let common: BTreeSet<Simplex> =
                lattices[i].intersection(&lattices[j]).cloned().collect();
            let maximal = maximal_faces(&common);
            let ok = maximal.len() == 1 && maximal[0] == shared;
            (!ok).then(|| {
                Witness::new(
                    WitnessKind::CellIntersectionNotFace,
                    vec![vsets[i].clone(), vsets[j].clone(), shared],
                    format!("common faces have maximal elements {maximal:?}"),
                )
            })
        })
        .collect();
    for w in failures {
        report.fail(w);
    }
    report.notes.push(format!(
        "{} cells ({} bipyramids), {} intersecting pairs",
        cells.len(),
        q.bipyramids.len(),
        pairs.len()
    ));
    report
}

/// Combinatorial 3-sphere evidence for a simplicial complex.
pub fn check_sphere_3(x: &SimplicialComplex) -> LemmaReport {
    check_sphere_3_with(x, ReportParams::default())
}

fn check_sphere_3_with(x: &SimplicialComplex, params: ReportParams) -> LemmaReport {
    let mut report = LemmaReport::new(LemmaId::Sphere, params);
    let pm = x.is_closed_pseudomanifold_3();
    report.check("closed 3-pseudomanifold", pm);
    if !pm {
        let bad: Vec<Witness> = x
            .ridge_degrees()
            .into_iter()
            .filter(|&(_, d)| d != 2)
            .take(8)
            .map(|(r, d)| {
                Witness::new(WitnessKind::NotPseudomanifold, vec![r], format!("in {d} facets"))
            })
            .collect();
        if bad.is_empty() {
            report.fail(Witness::new(
                WitnessKind::NotPseudomanifold,
                Vec::new(),
                "disconnected, wrong dimension, or a disconnected link",
            ));
        }
        for w in bad {
            report.fail(w);
        }
    }
    if x.dim() == 3 {
        for v in x.faces(0) {
            let ok = x
                .link(v)
                .map(|l| l.classify_surface() == Ok(SurfaceClass::Sphere2))
                .unwrap_or(false);
            if !ok {
                report.fail(Witness::new(
                    WitnessKind::VertexLinkNotSphere,
                    vec![v.clone()],
                    "vertex link is not a 2-sphere",
                ));
            }
        }
    }
    let chi = x.euler_characteristic();
    if chi != 0 {
        report.fail(Witness::new(
            WitnessKind::EulerCharacteristic,
            Vec::new(),
            format!("Euler characteristic {chi}"),
        ));
    }
    let betti = betti_mod2(x);
    if betti != vec![1, 0, 0, 1] {
        report.fail(Witness::new(
            WitnessKind::BettiNumbers,
            Vec::new(),
            format!("mod-2 Betti numbers {betti:?}"),
        ));
    }
    report.notes.push(format!("f-vector {}", x.f_vector()));
    report.finish()
}

/// Simplicial subdivision of a polyhedral sphere, every bipyramid split
/// into two tetrahedra.
pub fn subdivide(q: &PolyhedralSphere) -> SimplicialComplex {
    SimplicialComplex::from_facets(
        q.simplex_cells.iter().cloned().chain(
            q.bipyramids
                .values()
                .flat_map(|b| split_bipyramid(b, SplitMode::Two)),
        ),
    )
    .expect("tetrahedra")
}

pub fn check_sphere_3_polyhedral(q: &PolyhedralSphere) -> LemmaReport {
    check_sphere_3_with(
        &subdivide(q),
        ReportParams::nv(q.n, q.variant).with_target("Q (bipyramids split in two)"),
    )
}

/// Builds `Q(n)` with every admissible site and checks its vertex count,
/// polyhedrality, sphericity and bipyramid count.
pub fn verify_theorem(n: u32, variant: Variant) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(LemmaId::Theorem1, ReportParams::nv(n, variant));
    let q = build_q(n, variant, &SiteSelection::Auto)?;
    let verts = q.vertices().len();
    let bipyramids = q.bipyramids.len();
    report.check(format!("{verts} vertices = 5n+4"), verts == (5 * n + 4) as usize);
    report.check("polyhedral complex", check_polyhedrality(&q).passed());
    report.check("3-sphere", check_sphere_3_polyhedral(&q).passed());
    let expected = match variant {
        Variant::Extended => (n * n) as usize,
        Variant::Literal => q.sites().len(),
    };
    report.check(
        format!("{bipyramids} bipyramids (expected {expected})"),
        bipyramids == expected,
    );
    if bipyramids != (n * n) as usize {
        report.notes.push(format!(
            "{bipyramids} of n² = {} sites accepted",
            n * n
        ));
    }
    for c in report.checks.clone() {
        if !c.holds {
            report.witnesses.push(Witness::new(WitnessKind::CountMismatch, Vec::new(), c.name));
        }
    }
    Ok(report.finish())
}

#[derive(Debug, Clone, Copy)]
enum Job {
    Vertices,
    Shelling(u32),
    NoSharedTriangle,
    BoundaryOnly,
    Boundary(u32),
    Interior(u32),
    Disks,
    SphereP,
    SpherePPrime,
    Polyhedrality,
    SphereQ,
    Theorem,
}

impl Job {
    fn lemma(&self) -> LemmaId {
        match self {
            Job::Vertices => LemmaId::L2Vertices,
            Job::Shelling(_) => LemmaId::L3Shelling,
            Job::NoSharedTriangle => LemmaId::L4NoSharedTriangle,
            Job::BoundaryOnly => LemmaId::L5BoundaryOnly,
            Job::Boundary(_) => LemmaId::L6BoundaryTriangles,
            Job::Interior(_) => LemmaId::L7InteriorEdges,
            Job::Disks => LemmaId::L8DiskIntersections,
            Job::SphereP | Job::SpherePPrime | Job::SphereQ => LemmaId::Sphere,
            Job::Polyhedrality => LemmaId::Polyhedrality,
            Job::Theorem => LemmaId::Theorem1,
        }
    }

    fn run(self, n: u32, variant: Variant) -> Result<LemmaReport> {
        match self {
            Job::Vertices => check_lemma_vertices(n, variant),
            Job::Shelling(a) => check_ball_shelling(n, a, variant),
            Job::NoSharedTriangle => check_no_shared_triangle(n, variant),
            Job::BoundaryOnly => check_boundary_only(n, variant),
            Job::Boundary(a) => check_boundary_classification(a, n, variant),
            Job::Interior(a) => check_interior_edges(a, n, variant),
            Job::Disks => check_disk_intersections(n, variant),
            Job::SphereP => Ok(check_sphere_3_with(
                &build_p(n)?,
                ReportParams::nv(n, variant).with_target("P"),
            )),
            Job::SpherePPrime => Ok(check_sphere_3_with(
                &build_p_prime(n, variant)?,
                ReportParams::nv(n, variant).with_target("P'"),
            )),
            Job::Polyhedrality => Ok(check_polyhedrality(&build_q(
                n,
                variant,
                &SiteSelection::Auto,
            )?)),
            Job::SphereQ => Ok(check_sphere_3_polyhedral(&build_q(
                n,
                variant,
                &SiteSelection::Auto,
            )?)),
            Job::Theorem => verify_theorem(n, variant),
        }
    }
}

/// Runs every check (or those in `filter`) for one `(n, variant)`, in a
/// fixed order.
pub fn run_suite(n: u32, variant: Variant, filter: Option<&[LemmaId]>) -> Result<Vec<LemmaReport>> {
    let centers = a_set(n)?;
    let mut jobs = vec![Job::Vertices];
    jobs.extend(centers.iter().map(|&a| Job::Shelling(a)));
    jobs.extend([Job::NoSharedTriangle, Job::BoundaryOnly]);
    jobs.extend(centers.iter().map(|&a| Job::Boundary(a)));
    jobs.extend(centers.iter().map(|&a| Job::Interior(a)));
    jobs.extend([
        Job::Disks,
        Job::SphereP,
        Job::SpherePPrime,
        Job::Polyhedrality,
        Job::SphereQ,
        Job::Theorem,
    ]);
    if let Some(keep) = filter {
        jobs.retain(|j| keep.contains(&j.lemma()));
    }
    jobs.into_par_iter().map(|j| j.run(n, variant)).collect()
}
