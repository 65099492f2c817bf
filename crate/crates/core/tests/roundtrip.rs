//! Every document format, written from a real object produced by the
//! library, parsed back, and re-written identically. String equality of
//! the second write is the strongest cheap check: any dropped or
//! reordered field shows up as a diff.

use convexity::io::{
    parse_axiom_report, parse_bk_embedding, parse_colorful_instance, parse_colorful_outcome,
    parse_fh_report, parse_invariant_report, parse_labeled_functions, parse_separated_pair,
    parse_set_family, parse_space, write_axiom_report, write_bk_embedding,
    write_colorful_instance, write_colorful_outcome, write_fh_report, write_invariant_report,
    write_labeled_functions, write_separated_pair, write_set_family, write_space,
};
use convexity::{
    bk_embed, box_lower_bound_family, compute_invariant_report, fh_report, large_separated_pairs,
    make_box_space, make_explicit_space, make_lattice_space, weak_colorful_run, ColorfulOutcome,
    ConvexitySpace, LabeledFunction, PointSet, SetFamily,
};

fn cross_space() -> (ConvexitySpace, Vec<SetFamily>) {
    let family = SetFamily::new(
        4,
        vec![
            PointSet::from_indices(4, &[0, 1]).unwrap(),
            PointSet::from_indices(4, &[2, 3]).unwrap(),
            PointSet::from_indices(4, &[0, 2]).unwrap(),
            PointSet::from_indices(4, &[1, 3]).unwrap(),
        ],
    )
    .unwrap();
    let space = make_explicit_space(4, &family).unwrap();
    let g0 = SetFamily::new(
        4,
        vec![
            PointSet::from_indices(4, &[0, 1]).unwrap(),
            PointSet::from_indices(4, &[2, 3]).unwrap(),
        ],
    )
    .unwrap();
    let g1 = SetFamily::new(
        4,
        vec![
            PointSet::from_indices(4, &[0, 2]).unwrap(),
            PointSet::from_indices(4, &[1, 3]).unwrap(),
        ],
    )
    .unwrap();
    (space, vec![g0, g1])
}

#[test]
fn spaces_of_every_kind_round_trip() {
    for space in [
        make_box_space(2, 3).unwrap(),
        make_lattice_space(2, 2).unwrap(),
        cross_space().0,
    ] {
        let text = write_space(&space);
        let back = parse_space(&text).unwrap();
        assert_eq!(back.kind(), space.kind());
        assert_eq!(back.len(), space.len());
        assert_eq!(write_space(&back), text);
    }
}

#[test]
fn set_families_round_trip() {
    let (_, family) = box_lower_bound_family(2, 6).unwrap();
    let text = write_set_family(&family);
    let back = parse_set_family(&text).unwrap();
    assert_eq!(back.sets(), family.sets());
    assert_eq!(write_set_family(&back), text);
}

#[test]
fn labeled_functions_round_trip() {
    let fns = vec![
        LabeledFunction::new("left", vec![0, 0, 1, 0], 5).unwrap(),
        LabeledFunction::new("right", vec![4, 4, 3, 4], 5).unwrap(),
    ];
    let text = write_labeled_functions(5, &fns);
    let (ground, back) = parse_labeled_functions(&text).unwrap();
    assert_eq!(ground, 5);
    assert_eq!(back.len(), 2);
    assert_eq!(back[0].values(), fns[0].values());
    assert_eq!(write_labeled_functions(ground, &back), text);
}

#[test]
fn colorful_instances_round_trip() {
    let (space, families) = cross_space();
    let text = write_colorful_instance(&space, &families, 2);
    let (s2, f2, m2) = parse_colorful_instance(&text).unwrap();
    assert_eq!(m2, 2);
    assert_eq!(f2.len(), families.len());
    assert_eq!(write_colorful_instance(&s2, &f2, m2), text);
}

#[test]
fn invariant_reports_round_trip() {
    let report = compute_invariant_report(&make_box_space(2, 3).unwrap()).unwrap();
    let text = write_invariant_report(&report);
    let back = parse_invariant_report(&text).unwrap();
    assert_eq!(back.helly, report.helly);
    assert_eq!(back.radon, report.radon);
    assert_eq!(back.halfspace_count, report.halfspace_count);
    assert_eq!(write_invariant_report(&back), text);
}

#[test]
fn fh_reports_round_trip() {
    let (_, family) = box_lower_bound_family(2, 6).unwrap();
    let report = fh_report(&family, 2).unwrap();
    let text = write_fh_report(&report);
    let back = parse_fh_report(&text).unwrap();
    assert_eq!(back.alpha, report.alpha);
    assert_eq!(back.beta, report.beta);
    assert_eq!(back.best_point, report.best_point);
    assert_eq!(write_fh_report(&back), text);
}

#[test]
fn bk_embeddings_round_trip() {
    let family = SetFamily::new(
        6,
        vec![
            PointSet::from_indices(6, &[0, 1, 2]).unwrap(),
            PointSet::from_indices(6, &[1, 2, 3]).unwrap(),
            PointSet::from_indices(6, &[4, 5]).unwrap(),
        ],
    )
    .unwrap();
    let embedding = bk_embed(&family).unwrap();
    let text = write_bk_embedding(&embedding);
    let back = parse_bk_embedding(&text).unwrap();
    assert_eq!(back.source_size, embedding.source_size);
    assert_eq!(back.atom_signatures, embedding.atom_signatures);
    assert_eq!(back.certificates.len(), embedding.certificates.len());
    assert_eq!(write_bk_embedding(&back), text);
}

#[test]
fn separated_pairs_round_trip() {
    let space = make_box_space(1, 5).unwrap();
    let fns = [
        LabeledFunction::new("left", vec![0, 0, 1, 0], 5).unwrap(),
        LabeledFunction::new("right", vec![4, 4, 3, 4], 5).unwrap(),
    ];
    let pair = large_separated_pairs(&space, &fns, 3).unwrap();
    let text = write_separated_pair(&pair);
    let back = parse_separated_pair(&text).unwrap();
    assert_eq!(back.i, pair.i);
    assert_eq!(back.j, pair.j);
    assert_eq!(back.x0, pair.x0);
    assert_eq!(back.gamma.gamma(), pair.gamma.gamma());
    assert_eq!(back.retained, pair.retained);
    assert_eq!(write_separated_pair(&back), text);
}

#[test]
fn colorful_outcomes_of_every_shape_round_trip() {
    let chain = make_box_space(1, 3).unwrap();
    let shared = vec![
        SetFamily::new(
            3,
            vec![
                PointSet::from_indices(3, &[0, 1]).unwrap(),
                PointSet::from_indices(3, &[1, 2]).unwrap(),
            ],
        )
        .unwrap(),
        SetFamily::new(
            3,
            vec![
                PointSet::from_indices(3, &[1]).unwrap(),
                PointSet::full(3),
            ],
        )
        .unwrap(),
    ];
    let tuple = weak_colorful_run(&chain, &shared, 2).unwrap();
    assert!(matches!(tuple, ColorfulOutcome::MTuple(_)));

    let (cross, fams) = cross_space();
    let venn = weak_colorful_run(&cross, &fams, 2).unwrap();
    assert!(matches!(venn, ColorfulOutcome::Venn(_)));

    let tiny = vec![
        SetFamily::new(3, vec![PointSet::full(3)]).unwrap(),
        SetFamily::new(3, vec![PointSet::full(3)]).unwrap(),
    ];
    let inconclusive = weak_colorful_run(&chain, &tiny, 2).unwrap();
    assert!(matches!(inconclusive, ColorfulOutcome::Inconclusive { .. }));

    for outcome in [tuple, venn, inconclusive] {
        let text = write_colorful_outcome(&outcome);
        let back = parse_colorful_outcome(&text).unwrap();
        assert_eq!(write_colorful_outcome(&back), text);
    }
}

#[test]
fn axiom_reports_round_trip() {
    let report = cross_space().0.check_axioms().unwrap();
    assert!(report.all_pass());
    let text = write_axiom_report(&report);
    let back = parse_axiom_report(&text).unwrap();
    assert!(back.all_pass());
    assert_eq!(write_axiom_report(&back), text);
}

#[test]
fn documented_examples_parse_with_their_format() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples");
    let read = |name: &str| std::fs::read_to_string(dir.join(name)).expect(name);
    parse_space(&read("convexity-space.txt")).unwrap();
    parse_set_family(&read("set-family.txt")).unwrap();
    parse_labeled_functions(&read("labeled-functions.txt")).unwrap();
    parse_colorful_instance(&read("colorful-instance.txt")).unwrap();
    parse_invariant_report(&read("invariant-report.txt")).unwrap();
    parse_fh_report(&read("fh-report.txt")).unwrap();
    parse_bk_embedding(&read("bk-embedding.txt")).unwrap();
    parse_separated_pair(&read("separated-pair.txt")).unwrap();
    parse_colorful_outcome(&read("colorful-outcome.txt")).unwrap();
    parse_axiom_report(&read("axiom-report.txt")).unwrap();
}
