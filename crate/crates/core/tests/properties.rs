mod common;

use std::collections::BTreeSet;

use num_rational::Ratio;
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{alternating_sum, brute_isomorphic};
use spherewright::ball::{
    a_set, build_ball, extension_facet, i_facet, label_average, shelling_order, SiteFaces, Variant,
};
use spherewright::canon::{are_isomorphic, canonical_form};
use spherewright::complex::{SimplicialComplex, SurfaceClass};
use spherewright::cyclic::{build_p, simplex_is_gale_facet};
use spherewright::enumerate::{random_relabel, realize, TriangulationMask};
use spherewright::homology::betti_mod2;
use spherewright::io::{self, Document, Format};
use spherewright::sphere::{apex_map, build_p_prime, build_q, SiteSelection};
use spherewright::verify::{self, WitnessKind};
use spherewright::{Simplex, VertexId};

const VARIANTS: [Variant; 2] = [Variant::Literal, Variant::Extended];

fn pure_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=4).prop_flat_map(|k| {
        prop::collection::vec(subsequence((1..=8u32).collect::<Vec<_>>(), k), 1..10).prop_map(|fs| {
            SimplicialComplex::from_facets(fs.into_iter().map(|f| Simplex::new(f).unwrap())).unwrap()
        })
    })
}

fn all_faces(x: &SimplicialComplex) -> Vec<Simplex> {
    (0..=x.dim() as usize).flat_map(|k| x.faces(k).iter().cloned()).collect()
}

fn ball_sample() -> Vec<SimplicialComplex> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for v in VARIANTS {
            for a in a_set(n).unwrap() {
                out.push(build_ball(n, a, v).unwrap());
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn closure_consistency(x in pure_complex()) {
        for face in all_faces(&x) {
            for sub in face.nonempty_faces() {
                prop_assert!(x.contains(&sub), "{} missing from closure of {}", sub, face);
            }
        }
    }

    #[test]
    fn euler_matches_betti(x in pure_complex()) {
        prop_assert_eq!(x.euler_characteristic(), alternating_sum(&betti_mod2(&x)));
    }

    #[test]
    fn boundary_iff_single_point_link(x in pure_complex()) {
        let d = x.dim() as usize;
        let bd = x.boundary_complex();
        for ridge in x.faces(d - 1) {
            let link = x.link(ridge).unwrap();
            prop_assert_eq!(bd.facets().contains(ridge), link.vertices().len() == 1);
        }
    }

    #[test]
    fn round_trip_random_complex(x in pure_complex()) {
        let doc = Document::from_complex(&x, None, None, Default::default());
        for f in [Format::Json, Format::Facets] {
            let back = io::deserialize(&io::serialize(&doc, f)).unwrap();
            prop_assert_eq!(back.to_complex().unwrap(), x.clone());
        }
    }

    #[test]
    fn canonical_form_agrees_with_brute_force(x in pure_complex(), y in pure_complex(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_relabel(&x, &mut rng);
        prop_assert!(are_isomorphic(&x, &z).unwrap());
        prop_assert!(brute_isomorphic(&x, &z));
        prop_assert_eq!(are_isomorphic(&x, &y).unwrap(), brute_isomorphic(&x, &y));
    }

    #[test]
    fn q_vertex_count_any_sites(n in 1u32..=4, v in 0usize..2, keep in any::<u64>()) {
        let variant = VARIANTS[v];
        let auto = build_q(n, variant, &SiteSelection::Auto).unwrap();
        let chosen: Vec<(u32, u32)> = auto
            .sites()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| keep >> (i % 64) & 1 == 1)
            .map(|(_, s)| s)
            .collect();
        let q = build_q(n, variant, &SiteSelection::Explicit(chosen.clone())).unwrap();
        prop_assert_eq!(q.vertices().len() as u32, 5 * n + 4);
        prop_assert_eq!(q.sites(), chosen);
    }
}

#[test]
fn pseudomanifolds_have_twice_as_many_triangles() {
    let mut xs: Vec<SimplicialComplex> = (1..=4).map(|n| build_p(n).unwrap()).collect();
    for n in 1..=3 {
        for v in VARIANTS {
            xs.push(build_p_prime(n, v).unwrap());
        }
    }
    for x in xs {
        assert!(x.is_closed_pseudomanifold_3());
        let f = x.f_vector();
        assert_eq!(f.get(2), 2 * f.get(3));
    }
}

#[test]
fn boundary_of_boundary_is_empty() {
    for b in ball_sample() {
        assert!(b.boundary_complex().boundary_complex().is_empty());
    }
}

#[test]
fn ball_facets_are_gale_with_exact_label_average() {
    for n in 1..=8 {
        let m = 4 * n + 4;
        for a in a_set(n).unwrap() {
            for u in 1..=n {
                for i in 1..=3u8 {
                    let f = i_facet(n, a, u, i).unwrap();
                    assert!(simplex_is_gale_facet(&f, m), "I({a},{u},{i}) = {f}");
                    assert_eq!(label_average(&f), Ratio::new(2 * a as u64 + i as u64 - 1, 2));
                }
            }
            let ext = extension_facet(n, a).unwrap();
            assert!(simplex_is_gale_facet(&ext, m));
            assert_eq!(label_average(&ext), Ratio::new(2 * a as u64 + 1, 2));
        }
    }
}

#[test]
fn site_disks() {
    for n in 1..=8 {
        for a in a_set(n).unwrap() {
            for u in 1..=n {
                let s = SiteFaces::new(n, a, u).unwrap();
                assert!(s.t_minus.is_subset_of(&s.i1));
                assert!(s.t_plus.is_subset_of(&s.i1));
                let d = s.disk();
                assert_eq!(d.classify_surface().unwrap(), SurfaceClass::Ball2);
                let interior: Vec<Simplex> = d.interior_faces(1).into_iter().collect();
                assert_eq!(interior, vec![s.r.clone()]);
            }
        }
    }
}

#[test]
fn shelling_prefixes_are_balls() {
    for n in 1..=4 {
        for v in VARIANTS {
            for a in a_set(n).unwrap() {
                let cert = shelling_order(n, a, v).unwrap();
                let order = cert.ordered_facets();
                for (k, step) in cert.steps.iter().enumerate().skip(1) {
                    let prior = SimplicialComplex::from_facets(order[..k].iter().cloned()).unwrap();
                    let gluing = SimplicialComplex::from_facets(step.gluing.iter().cloned()).unwrap();
                    assert_eq!(gluing.dim(), 2);
                    assert_eq!(gluing.classify_surface().unwrap(), SurfaceClass::Ball2);
                    let prior_bd = prior.boundary_complex();
                    assert!(step.gluing.iter().all(|t| prior_bd.facets().contains(t)));
                }
                for k in 1..=order.len() {
                    let g = SimplicialComplex::from_facets(order[..k].iter().cloned()).unwrap();
                    assert_eq!(betti_mod2(&g), vec![1, 0, 0, 0]);
                    assert_eq!(
                        g.boundary_complex().classify_surface().unwrap(),
                        SurfaceClass::Sphere2
                    );
                }
            }
        }
    }
}

#[test]
fn q_bookkeeping() {
    for n in 1..=4 {
        for v in VARIANTS {
            let q = build_q(n, v, &SiteSelection::Auto).unwrap();
            let p_prime = build_p_prime(n, v).unwrap();
            assert_eq!(q.simplex_cells.len(), p_prime.num_facets() - 2 * q.bipyramids.len());
            let faces = q.face_set();
            let apexes = apex_map(n).unwrap();
            for (&(a, u), cell) in &q.bipyramids {
                let s = SiteFaces::new(n, a, u).unwrap();
                let apex = apexes[&a];
                let lower = s.t_minus.with_vertex(apex).unwrap();
                let upper = s.t_plus.with_vertex(apex).unwrap();
                let t_prime = s.r.with_vertex(apex).unwrap();
                assert!(p_prime.facets().contains(&lower) && p_prime.facets().contains(&upper));
                assert_eq!(lower.intersection(&upper), t_prime);
                assert_eq!(cell.apexes(), &s.e);
                for gone in [&s.e, &t_prime] {
                    assert!(!faces.contains(gone), "{gone} still present at ({a},{u})");
                }
                // R lies on the ball boundary, so cells outside the ball keep it
                assert!(faces.contains(&s.r));
            }
            assert_eq!(betti_mod2(&p_prime), betti_mod2(&build_p(n).unwrap()));
        }
    }
}

#[test]
fn witnesses_recheck() {
    for n in 1..=4 {
        for a in a_set(n).unwrap() {
            let ball = build_ball(n, a, Variant::Literal).unwrap();
            let bd = ball.boundary_complex();
            let r6 = verify::check_boundary_classification(a, n, Variant::Literal).unwrap();
            for w in &r6.witnesses {
                let t = &w.faces[0];
                match w.kind {
                    WitnessKind::ClaimedTriangleInterior => {
                        assert_eq!(ball.cofacets(t).count(), 2);
                        assert!(!bd.contains(t));
                    }
                    WitnessKind::UnclaimedBoundaryTriangle => assert!(bd.facets().contains(t)),
                    _ => {}
                }
            }
            let r7 = verify::check_interior_edges(a, n, Variant::Literal).unwrap();
            for e in &r7.claimed_not_computed {
                assert!(bd.contains(e), "{e} should lie on the boundary");
            }
        }
    }
}

#[test]
fn reports_are_reproducible() {
    for v in VARIANTS {
        let a = verify::run_suite(2, v, None).unwrap();
        let b = verify::run_suite(2, v, None).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn split_counts_and_invariants() {
    for n in 1..=2 {
        let q = build_q(n, Variant::Extended, &SiteSelection::Auto).unwrap();
        let m = q.bipyramids.len();
        let base = q.simplex_cells.len() + 2 * m;
        let realized: Vec<(TriangulationMask, SimplicialComplex)> = (0..1u64 << m)
            .map(|bits| {
                let mask = TriangulationMask::from_index(bits, m);
                let x = realize(&q, &mask).unwrap();
                (mask, x)
            })
            .collect();
        for (mask, x) in &realized {
            assert_eq!(x.f_vector().get(3), base + mask.threes());
            assert_eq!(x.vertices().len() as u32, 5 * n + 4);
        }
        for (ma, xa) in &realized {
            for (mb, xb) in &realized {
                if ma.threes() != mb.threes() {
                    assert!(!are_isomorphic(xa, xb).unwrap());
                }
            }
        }
    }
}

fn degree_sequence(x: &SimplicialComplex) -> Vec<usize> {
    let mut d: Vec<usize> = x
        .vertices()
        .iter()
        .map(|&v| x.edges().iter().filter(|e| e.contains(v)).count())
        .collect();
    d.sort_unstable();
    d
}

#[test]
fn canonical_form_separates_invariants() {
    let mut xs: Vec<SimplicialComplex> = vec![build_p(1).unwrap()];
    for v in VARIANTS {
        xs.push(build_p_prime(1, v).unwrap());
    }
    let q = build_q(1, Variant::Extended, &SiteSelection::Auto).unwrap();
    for bits in 0..2 {
        xs.push(realize(&q, &TriangulationMask::from_index(bits, 1)).unwrap());
    }
    xs.extend(ball_sample().into_iter().take(6));
    for x in &xs {
        for y in &xs {
            let same = canonical_form(x).unwrap() == canonical_form(y).unwrap();
            if x.f_vector() != y.f_vector() || degree_sequence(x) != degree_sequence(y) {
                assert!(!same);
            }
            if x.vertices().len() <= 9 && y.vertices().len() <= 9 {
                assert_eq!(are_isomorphic(x, y).unwrap(), brute_isomorphic(x, y));
            }
        }
    }
}

#[test]
fn canonical_form_stable_under_100_relabelings() {
    let q = build_q(1, Variant::Extended, &SiteSelection::Auto).unwrap();
    let x = realize(&q, &TriangulationMask::from_index(1, 1)).unwrap();
    let q2 = build_q(2, Variant::Extended, &SiteSelection::Auto).unwrap();
    let y = realize(&q2, &"0110".parse().unwrap()).unwrap();
    for base in [x, y] {
        let form = canonical_form(&base).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let z = random_relabel(&base, &mut rng);
            assert_eq!(canonical_form(&z).unwrap(), form);
        }
    }
}

#[test]
fn constructed_objects_round_trip() {
    for n in 1..=4 {
        let p = build_p(n).unwrap();
        let mut docs = vec![Document::from_complex(&p, Some(n), None, Default::default())];
        for v in VARIANTS {
            let pp = build_p_prime(n, v).unwrap();
            docs.push(Document::from_complex(&pp, Some(n), Some(v), apex_map(n).unwrap()));
            let q = build_q(n, v, &SiteSelection::Auto).unwrap();
            docs.push(Document::from_sphere(&q));
            for f in [Format::Json, Format::Facets] {
                let back = io::deserialize(&io::serialize(&Document::from_sphere(&q), f)).unwrap();
                assert_eq!(back.to_sphere().unwrap(), q);
            }
        }
        for doc in docs {
            for f in [Format::Json, Format::Facets] {
                let text = io::serialize(&doc, f);
                assert_eq!(io::deserialize(&text).unwrap(), doc);
                assert_eq!(io::serialize(&io::deserialize(&text).unwrap(), f), text);
            }
        }
    }
}

#[test]
fn vertex_sets_are_sorted_in_output() {
    let q = build_q(2, Variant::Extended, &SiteSelection::Auto).unwrap();
    let doc = Document::from_sphere(&q);
    let sorted: BTreeSet<VertexId> = doc.vertices.iter().copied().collect();
    assert_eq!(doc.vertices, sorted.into_iter().collect::<Vec<_>>());
    let mut cells = doc.cells.clone();
    cells.sort();
    assert_eq!(doc.cells, cells);
}
