//! Acceptance gate for the crate: seven end-to-end criteria, one test (and
//! so one pass/fail line in the harness output) per criterion.
//!
//! 1. Exact reproduction of the six-vertex orbit-algebra worked example.
//! 2. Selfinjective Nakayama boundary sweep: short-cycle-free iff m >= 2l-1.
//! 3. Trivial-extension boundary sweep: T(B)^(r) short-cycle-free iff r >= 3.
//! 4. Complete passing certificates for the two flagship pipeline runs.
//! 5. Structural property suites across every instance of criteria 1-4.
//! 6. Brauer star cross-check against a serial algebra.
//! 7. Scope line: classification claims are excluded by design.

use std::sync::Arc;

use arqlab::algebra::{bound_quiver_algebra, Algebra, Arrow, Quiver, Relation};
use arqlab::analysis::{
    deforming_ideal_check, nakayama_check, regular_socle, short_cycles, slice_props,
    stable_slices, theorem_check, trace_ideal, SliceMode, Verdict,
};
use arqlab::artheory::{knit, stable_part, Budgets, DynkinType};
use arqlab::field::FieldSpec;
use arqlab::module::{self, Module};
use arqlab::zoo::{brauer_tree_algebra, hereditary_nakayama, nakayama_selfinjective,
    trivial_extension_r, BrauerTree};

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn budgets() -> Budgets {
    Budgets::default()
}

fn arrow(name: &str, src: usize, tgt: usize) -> Arrow {
    Arrow {
        name: name.into(),
        src,
        tgt,
    }
}

/// A relation as an integer combination of paths given by arrow indices.
fn rel(terms: &[(i64, &[usize])]) -> Relation {
    let f = q();
    Relation {
        terms: terms
            .iter()
            .map(|&(c, path)| (f.from_i64(c), path.to_vec()))
            .collect(),
    }
}

/// The six-vertex worked example: two commuting squares glued along
/// vertices 1 and 4, with the mixed compositions set to zero.
fn worked_example() -> Arc<Algebra> {
    let quiver = Quiver::new(
        6,
        vec![
            arrow("alpha1", 0, 1), // 0
            arrow("beta1", 0, 2),  // 1
            arrow("alpha2", 1, 3), // 2
            arrow("beta2", 2, 3),  // 3
            arrow("beta3", 3, 4),  // 4
            arrow("alpha3", 3, 5), // 5
            arrow("beta4", 4, 0),  // 6
            arrow("alpha4", 5, 0), // 7
        ],
    )
    .unwrap();
    let rels = vec![
        rel(&[(1, &[0, 2]), (-1, &[1, 3])]), // alpha1 alpha2 - beta1 beta2
        rel(&[(1, &[5, 7]), (-1, &[4, 6])]), // alpha3 alpha4 - beta3 beta4
        rel(&[(1, &[2, 4])]),                // alpha2 beta3
        rel(&[(1, &[3, 5])]),                // beta2 alpha3
        rel(&[(1, &[7, 1])]),                // alpha4 beta1
        rel(&[(1, &[6, 0])]),                // beta4 alpha1
    ];
    Arc::new(bound_quiver_algebra(&quiver, &rels, q(), 5).unwrap())
}

fn nak(m: usize, ell: usize) -> Arc<Algebra> {
    Arc::new(nakayama_selfinjective(m, ell, q()).unwrap())
}

/// Linear A_n quiver 1 <- 2 <- ... <- n, no relations.
fn linear(n: usize) -> Algebra {
    hereditary_nakayama(n, q()).unwrap()
}

/// Alternating A_3 quiver 1 -> 2 <- 3, no relations.
fn alternating_a3() -> Algebra {
    let quiver = Quiver::new(3, vec![arrow("a", 0, 1), arrow("b", 2, 1)]).unwrap();
    bound_quiver_algebra(&quiver, &[], q(), 3).unwrap()
}

/// D_4 star: three leaves all mapping into the central vertex.
fn d4_star() -> Algebra {
    let quiver = Quiver::new(
        4,
        vec![arrow("a", 1, 0), arrow("b", 2, 0), arrow("c", 3, 0)],
    )
    .unwrap();
    bound_quiver_algebra(&quiver, &[], q(), 3).unwrap()
}

fn hereditary_bases() -> Vec<(String, Algebra)> {
    vec![
        ("linear A2".into(), linear(2)),
        ("linear A3".into(), linear(3)),
        ("alternating A3".into(), alternating_a3()),
        ("D4 star".into(), d4_star()),
    ]
}

/// Every instance of criteria 1-4 with its expected short-cycle verdict
/// (`true` = short-cycle-free).
fn criteria_zoo() -> Vec<(String, Arc<Algebra>, bool)> {
    let mut out: Vec<(String, Arc<Algebra>, bool)> = Vec::new();
    out.push(("worked example".into(), worked_example(), false));
    for m in 1..=8 {
        for ell in 2..=8 {
            out.push((format!("N({m},{ell})"), nak(m, ell), m >= 2 * ell - 1));
        }
    }
    for (name, base) in hereditary_bases() {
        for r in 1..=4 {
            let t = Arc::new(trivial_extension_r(&base, r, None).unwrap());
            out.push((format!("T({name})^({r})"), t, r >= 3));
        }
    }
    out
}

fn assert_all_checks(label: &str, checks: &[(String, bool)]) {
    for (name, ok) in checks {
        assert!(*ok, "{label}: check failed: {name}");
    }
}

fn has_check(checks: &[(String, bool)], needle: &str) -> bool {
    checks.iter().any(|(name, ok)| name.contains(needle) && *ok)
}

/// Cartan matrices agree after some simultaneous renumbering of vertices.
fn cartan_equivalent(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| a[i][j] == b[perm[i]][perm[j]])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[test]
fn criterion_1_worked_example_reproduction() {
    let a = worked_example();
    assert_eq!(a.dim, 20, "total dimension");
    assert_eq!(a.n_vertices, 6);
    let pdims: Vec<usize> = (0..6)
        .map(|v| Module::projective(&a, v).total_dim())
        .collect();
    assert_eq!(pdims, vec![4, 3, 3, 4, 3, 3], "projective dimensions");

    let ar = knit(&a, &budgets()).unwrap();
    assert_eq!(ar.nodes.len(), 24, "indecomposable count");
    let proj_inj = ar
        .nodes
        .iter()
        .filter(|n| n.projective && n.injective)
        .count();
    assert_eq!(proj_inj, 6, "projective-injective count");

    let sp = stable_part(&ar).unwrap();
    assert_eq!(sp.nodes.len(), 18, "stable node count");
    assert_eq!(sp.orbits.len(), 3, "translation orbit count");
    for orbit in &sp.orbits {
        assert_eq!(orbit.len(), 6, "translation orbit length");
    }
    assert_eq!(sp.tree_class, DynkinType::A(3), "stable tree class");

    let slices = stable_slices(&ar, SliceMode::All).unwrap();
    assert!(!slices.is_empty(), "no stable slice enumerated");
    for s in &slices {
        let props = slice_props(&ar, s).unwrap();
        assert!(props.double_rigid, "slice {:?} not double rigid", s.nodes);
    }

    let cert = short_cycles(&a, &budgets(), false).unwrap();
    assert_eq!(cert.verdict, Verdict::HasShortCycle);
    let w = &cert.witnesses[0];
    assert_eq!((w.x, w.y), (0, 3), "witness pair");
    assert!(ar.nodes[w.x].projective && ar.nodes[w.y].projective);
    assert_eq!(w.x_dims, vec![1, 1, 1, 1, 0, 0], "dim vector of P(1)");
    assert_eq!(w.y_dims, vec![1, 0, 0, 1, 1, 1], "dim vector of P(4)");
    assert_eq!(
        w.forward_image.as_deref(),
        Some(&[1, 0, 0, 0, 0, 0][..]),
        "image of the forward map is the simple at vertex 1"
    );
    assert_eq!(
        w.backward_image.as_deref(),
        Some(&[0, 0, 0, 1, 0, 0][..]),
        "image of the backward map is the simple at vertex 4"
    );

    println!(
        "criterion 1: pass — worked example: dim 20, 24 indecomposables, \
         6 projective-injective, 3 stable orbits of 6, tree class A3, all \
         slices double rigid, witness (P(1), P(4)) with simple images"
    );
}

#[test]
fn criterion_2_nakayama_boundary_sweep() {
    let mut free = 0usize;
    let mut cyclic = 0usize;
    for m in 1..=8 {
        for ell in 2..=8 {
            let a = nak(m, ell);
            let cert = short_cycles(&a, &budgets(), false).unwrap();
            let expect_free = m >= 2 * ell - 1;
            assert_eq!(
                cert.verdict == Verdict::ShortCycleFree,
                expect_free,
                "N({m},{ell}): expected short-cycle-free = {expect_free}"
            );
            if expect_free {
                free += 1;
            } else {
                cyclic += 1;
            }
        }
    }
    assert_eq!(free + cyclic, 56);
    println!(
        "criterion 2: pass — 56 selfinjective Nakayama algebras: \
         short-cycle-free iff m >= 2*loewy - 1 ({free} free, {cyclic} with cycles)"
    );
}

#[test]
fn criterion_3_trivial_extension_boundary_sweep() {
    let mut n = 0usize;
    for (name, base) in hereditary_bases() {
        for r in 1..=4 {
            let t = Arc::new(trivial_extension_r(&base, r, None).unwrap());
            let cert = short_cycles(&t, &budgets(), false).unwrap();
            let expect_free = r >= 3;
            assert_eq!(
                cert.verdict == Verdict::ShortCycleFree,
                expect_free,
                "T({name})^({r}): expected short-cycle-free = {expect_free}"
            );
            n += 1;
        }
    }
    assert_eq!(n, 16);
    println!(
        "criterion 3: pass — 16 trivial extensions T(B)^(r) over four \
         hereditary bases: short-cycle-free iff r >= 3"
    );
}

#[test]
fn criterion_4_flagship_certificates() {
    // Slice pipeline: the threefold trivial extension of linear A3 is
    // serial, so it runs the radical-series branch; its endomorphism
    // algebra must come out hereditary of type A3.
    let t3 = Arc::new(trivial_extension_r(&linear(3), 3, None).unwrap());
    let cert = theorem_check(&t3, &budgets()).unwrap();
    assert_eq!(cert.verdict, Verdict::ShortCycleFree);
    assert_all_checks("T(linear A3)^(3)", &cert.checks);
    let rec = cert.pipeline.expect("pipeline record missing");
    assert_all_checks("T(linear A3)^(3)", &rec.checks);
    assert_eq!(rec.hereditary_type, "A3");
    assert_eq!(rec.ideal_dim, 30);
    assert_eq!(rec.residual_idempotents.len(), 3);
    for needle in [
        "right annihilator of the ideal equals eI",
        "quotient quiver is acyclic",
        "corner annihilators of the ideal equal eIe",
        "endomorphism algebra is hereditary",
        "glued algebra invariants all match",
        "no residual vertex is fixed by the socle permutation",
    ] {
        assert!(
            has_check(&rec.checks, needle),
            "T(linear A3)^(3): missing passing clause: {needle}"
        );
    }

    // Serial pipeline flagship: N(6,3), type A2, quotient isomorphic to
    // the hereditary chain algebra on two vertices.
    let n63 = nak(6, 3);
    let cert = theorem_check(&n63, &budgets()).unwrap();
    assert_eq!(cert.verdict, Verdict::ShortCycleFree);
    assert_all_checks("N(6,3)", &cert.checks);
    let rec = cert.pipeline.expect("pipeline record missing");
    assert_all_checks("N(6,3)", &rec.checks);
    assert_eq!(rec.hereditary_type, "A2");
    assert_eq!(rec.ideal_dim, 15);
    assert_eq!(rec.residual_idempotents.len(), 2);
    let chain = linear(2);
    assert_eq!(rec.quotient.dim, chain.dim);
    assert_eq!(rec.quotient.n_vertices, chain.n_vertices);
    assert!(
        cartan_equivalent(&rec.quotient.cartan_matrix(), &chain.cartan_matrix()),
        "quotient Cartan {:?} vs chain Cartan {:?}",
        rec.quotient.cartan_matrix(),
        chain.cartan_matrix()
    );
    assert_eq!(rec.quotient.loewy_length(), chain.loewy_length());

    println!(
        "criterion 4: pass — complete passing certificates: \
         T(linear A3)^(3) of type A3 (ideal dim 30, 3 residual idempotents) \
         and N(6,3) of type A2 (ideal dim 15, quotient = chain algebra on 2 \
         vertices)"
    );
}

/// The structural laws checked across the whole zoo: annihilator-identity
/// equivalence for ideals with IeI = 0, the serial-or-semiregular-slice
/// dichotomy, double rigidity of all slices on short-cycle-free input, mesh
/// additivity of every knitted AR quiver, and fixed-point freeness of the
/// socle permutation on short-cycle-free input.
#[test]
fn criterion_5_property_suites() {
    let mut instances = 0usize;
    let mut ideals_checked = 0usize;
    let mut slices_checked = 0usize;
    for (name, a, expect_free) in criteria_zoo() {
        instances += 1;
        let ar = knit(&a, &budgets()).unwrap();
        assert!(ar.mesh_additive(), "{name}: mesh additivity violated");

        let cert = short_cycles(&a, &budgets(), false).unwrap();
        let free = cert.verdict == Verdict::ShortCycleFree;
        assert_eq!(free, expect_free, "{name}: unexpected verdict");

        // Annihilator-identity equivalence on a family of test ideals:
        // whenever IeI = 0, the left and right identities l_A(I) = Ie and
        // r_A(I) = eI must agree, and when they hold the socle and corner
        // companions must hold too. The checker itself hard-errors when
        // the biconditional breaks; the asserts re-state it for the record.
        let mut ideals = vec![("socle", regular_socle(&a))];
        let (rad_p0, _) = module::radical_submodule(&Module::projective(&a, 0));
        ideals.push(("trace ideal of rad P(1)", trace_ideal(&rad_p0).unwrap()));
        let pipeline = if free {
            let full = theorem_check(&a, &budgets()).unwrap();
            full.pipeline
        } else {
            None
        };
        if let Some(rec) = &pipeline {
            let parts: Vec<Module> = rec
                .slice
                .iter()
                .map(|&x| ar.nodes[x].module.clone())
                .collect();
            let msum = module::direct_sum(&a, &parts).module;
            let ideal = module::right_annihilator(&msum);
            assert_eq!(ideal.dim(), rec.ideal_dim, "{name}: pipeline ideal dim");
            ideals.push(("pipeline annihilator ideal", ideal));
        }
        for (ideal_name, ideal) in &ideals {
            let rep = deforming_ideal_check(&a, ideal)
                .unwrap_or_else(|e| panic!("{name}: {ideal_name}: {e}"));
            if rep.iei_zero {
                assert_eq!(
                    rep.left_ann_is_ie, rep.right_ann_is_ei,
                    "{name}: {ideal_name}: annihilator identities disagree"
                );
                if rep.left_ann_is_ie {
                    assert!(
                        rep.socle_inside && rep.corner_condition,
                        "{name}: {ideal_name}: companion conditions failed"
                    );
                }
            }
            ideals_checked += 1;
        }

        if free {
            // Socle permutation is fixed-point free on cycle-free input.
            let nk = nakayama_check(&a).unwrap();
            assert!(
                nk.fixed_points.is_empty(),
                "{name}: socle permutation has a fixed vertex"
            );

            // Every stable slice is double rigid, and a semiregular slice
            // exists exactly when the algebra is not serial.
            let slices = stable_slices(&ar, SliceMode::All).unwrap();
            assert!(!slices.is_empty(), "{name}: no stable slice");
            let mut any_semiregular = false;
            for s in &slices {
                let props = slice_props(&ar, s).unwrap();
                assert!(
                    props.double_rigid,
                    "{name}: slice {:?} not double rigid",
                    s.nodes
                );
                any_semiregular |= props.semiregular;
                slices_checked += 1;
            }
            assert_ne!(
                nk.is_nakayama, any_semiregular,
                "{name}: serial/semiregular-slice dichotomy violated"
            );
        }
    }
    assert_eq!(instances, 73);
    println!(
        "criterion 5: pass — property suites over {instances} instances: \
         {ideals_checked} ideal reports, {slices_checked} slices, every law held"
    );
}

#[test]
fn criterion_6_brauer_star_cross_check() {
    let star = Arc::new(brauer_tree_algebra(&BrauerTree::star(2, 2), q()).unwrap());
    let serial = nak(2, 5);
    assert_eq!(star.dim, serial.dim);
    assert_eq!(star.n_vertices, serial.n_vertices);
    assert_eq!(star.cartan_matrix(), serial.cartan_matrix());
    assert_eq!(star.loewy_length(), serial.loewy_length());
    let ar_star = knit(&star, &budgets()).unwrap();
    let ar_serial = knit(&serial, &budgets()).unwrap();
    assert_eq!(ar_star.nodes.len(), ar_serial.nodes.len());

    let cert = short_cycles(&star, &budgets(), true).unwrap();
    assert_eq!(cert.verdict, Verdict::HasShortCycle);
    let projective_pair = cert
        .witnesses
        .iter()
        .any(|w| ar_star.nodes[w.x].projective && ar_star.nodes[w.y].projective);
    assert!(projective_pair, "no short cycle through two projectives");

    println!(
        "criterion 6: pass — Brauer star (2 edges, multiplicity 2) carries a \
         short cycle of projectives and matches N(2,5) on dimension, Cartan \
         matrix, Loewy length, and indecomposable count"
    );
}

/// What the suite deliberately does not claim: exhaustive classification
/// lists for the short-cycle-free algebras, and existence of suitable
/// positive automorphisms for arbitrary input. Both are replaced by the
/// per-instance certificate chain of criterion 4: every verdict this crate
/// emits is re-checkable from the emitted record alone.
#[test]
fn criterion_7_excluded_claims_are_substituted_by_certificates() {
    let t3 = Arc::new(trivial_extension_r(&linear(3), 3, None).unwrap());
    let cert = theorem_check(&t3, &budgets()).unwrap();
    let rec = cert.pipeline.expect("certificate chain missing");
    assert!(!rec.checks.is_empty());
    assert_all_checks("substitute certificate", &rec.checks);
    println!(
        "criterion 7: pass — classification claims excluded by design; the \
         re-checkable certificate chain (criterion 4) substitutes for them"
    );
}
