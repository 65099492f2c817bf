//! Seeded self-checks runnable from the command line: each property
//! draws random instances from a fixed-seed generator and compares the
//! library against an independent oracle implemented here from the
//! definitions, not against the library itself.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bk::{bk_embed, verify_certificates, verify_nerve_isomorphism};
use crate::builtins::{make_box_space, make_explicit_space, point_in_rational_hull};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::fh::fh_report;
use crate::hypergraph::{count_complete_subhypergraphs, PartiteShape};
use crate::invariants::{helly_number_direct, helly_number_independence, radon_partition};
use crate::pipeline::{large_separated_pairs, verify_separated_pair, LabeledFunction};
use crate::pointset::PointSet;
use crate::space::ConvexitySpace;

#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    pub pass: bool,
    /// Empty on success; the first counterexample otherwise.
    pub detail: String,
}

impl PropertyResult {
    fn passed(name: &'static str, cases: usize) -> Self {
        PropertyResult {
            name,
            cases,
            pass: true,
            detail: String::new(),
        }
    }

    fn failed(name: &'static str, cases: usize, detail: String) -> Self {
        PropertyResult {
            name,
            cases,
            pass: false,
            detail,
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, universe: usize) -> PointSet {
    let mut set = PointSet::empty(universe);
    for i in 0..universe {
        if rng.gen_bool(0.5) {
            set.insert(i);
        }
    }
    set
}

fn random_explicit_space(rng: &mut ChaCha8Rng) -> Result<ConvexitySpace> {
    let universe = rng.gen_range(3..=7);
    let count = rng.gen_range(1..=5);
    let sets: Vec<PointSet> = (0..count).map(|_| random_subset(rng, universe)).collect();
    let family = SetFamily::new(universe, sets)?;
    make_explicit_space(universe, &family)
}

/// Hull straight from the definition: intersect every enumerated convex
/// superset, falling back to the ground set.
fn oracle_hull(space: &ConvexitySpace, y: &PointSet) -> Result<PointSet> {
    let mut hull = space.full_set();
    for c in space.enumerate_convex_sets()? {
        if y.is_subset_of(c) {
            hull.intersect_with(c);
        }
    }
    Ok(hull)
}

fn hull_laws_property(seed: u64) -> Result<PropertyResult> {
    const NAME: &str = "hull-laws-on-random-explicit-spaces";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x68756c6c);
    let mut cases = 0;
    for _ in 0..30 {
        let space = random_explicit_space(&mut rng)?;
        for _ in 0..8 {
            cases += 1;
            let y = random_subset(&mut rng, space.len());
            let h = space.hull(&y)?;
            let oracle = oracle_hull(&space, &y)?;
            if h != oracle {
                return Ok(PropertyResult::failed(
                    NAME,
                    cases,
                    format!("hull({y:?}) = {h:?}, oracle says {oracle:?}"),
                ));
            }
            if !y.is_subset_of(&h) {
                return Ok(PropertyResult::failed(
                    NAME,
                    cases,
                    format!("hull is not extensive on {y:?}"),
                ));
            }
            if space.hull(&h)? != h {
                return Ok(PropertyResult::failed(
                    NAME,
                    cases,
                    format!("hull is not idempotent on {y:?}"),
                ));
            }
            let mut sub = y.clone();
            if let Some(p) = y.min_index() {
                sub.remove(p);
            }
            if !space.hull(&sub)?.is_subset_of(&h) {
                return Ok(PropertyResult::failed(
                    NAME,
                    cases,
                    format!("hull is not monotone under {y:?}"),
                ));
            }
        }
    }
    Ok(PropertyResult::passed(NAME, cases))
}

fn helly_routes_property(seed: u64) -> Result<PropertyResult> {
    const NAME: &str = "helly-routes-agree-on-random-explicit-spaces";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x68656c6c79);
    let mut cases = 0;
    for _ in 0..25 {
        cases += 1;
        let space = random_explicit_space(&mut rng)?;
        let (by_independence, _) = helly_number_independence(&space)?;
        let (by_critical_family, _) = helly_number_direct(&space)?;
        if by_independence != by_critical_family {
            return Ok(PropertyResult::failed(
                NAME,
                cases,
                format!(
                    "independence route says {by_independence}, critical-family route says {by_critical_family}"
                ),
            ));
        }
    }
    Ok(PropertyResult::passed(NAME, cases))
}

fn radon_partition_property(seed: u64) -> Result<PropertyResult> {
    const NAME: &str = "radon-partitions-check-out-against-direct-hulls";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7261646f6e);
    let mut cases = 0;
    for _ in 0..20 {
        let space = random_explicit_space(&mut rng)?;
        for _ in 0..4 {
            cases += 1;
            let s = random_subset(&mut rng, space.len());
            match radon_partition(&space, &s)? {
                Some((a, b)) => {
                    let disjoint = a.is_disjoint(&b);
                    let covers = a.union(&b) == s;
                    let meet = oracle_hull(&space, &a)?.intersection(&oracle_hull(&space, &b)?);
                    if !disjoint || !covers || meet.is_empty() {
                        return Ok(PropertyResult::failed(
                            NAME,
                            cases,
                            format!("invalid partition ({a:?}, {b:?}) of {s:?}"),
                        ));
                    }
                }
                None => {
                    // Exhaustive oracle: no two-coloring of s may have
                    // intersecting hulls.
                    let points = s.to_vec();
                    for mask in 1..(1u32 << points.len().saturating_sub(1)) {
                        let mut a = PointSet::empty(space.len());
                        let mut b = PointSet::empty(space.len());
                        for (bit, &p) in points.iter().enumerate() {
                            if mask >> bit & 1 == 1 {
                                a.insert(p);
                            } else {
                                b.insert(p);
                            }
                        }
                        let meet =
                            oracle_hull(&space, &a)?.intersection(&oracle_hull(&space, &b)?);
                        if !a.is_empty() && !b.is_empty() && !meet.is_empty() {
                            return Ok(PropertyResult::failed(
                                NAME,
                                cases,
                                format!("missed partition ({a:?}, {b:?}) of {s:?}"),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(PropertyResult::passed(NAME, cases))
}

fn fractional_helly_property(seed: u64) -> Result<PropertyResult> {
    const NAME: &str = "fractional-helly-counts-match-a-bitmask-oracle";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6668);
    let mut cases = 0;
    for _ in 0..40 {
        cases += 1;
        let universe = rng.gen_range(1..=8);
        let size = rng.gen_range(1..=9);
        let sets: Vec<PointSet> = (0..size).map(|_| random_subset(&mut rng, universe)).collect();
        let family = SetFamily::new(universe, sets)?;
        let k = rng.gen_range(1..=size.min(3));
        let report = fh_report(&family, k)?;

        // Direct oracle over all size-k index masks.
        let mut intersecting = 0u64;
        let mut total = 0u64;
        for mask in 0u32..(1 << size) {
            if mask.count_ones() as usize != k {
                continue;
            }
            total += 1;
            let mut meet = PointSet::full(universe);
            for i in 0..size {
                if mask >> i & 1 == 1 {
                    meet.intersect_with(family.get(i)?);
                }
            }
            if !meet.is_empty() {
                intersecting += 1;
            }
        }
        let mut best_cover = 0usize;
        for p in 0..universe {
            let cover = family.iter().filter(|s| s.contains(p)).count();
            best_cover = best_cover.max(cover);
        }
        if report.intersecting != intersecting.into()
            || report.total != total.into()
            || report.max_intersecting != best_cover
        {
            return Ok(PropertyResult::failed(
                NAME,
                cases,
                format!(
                    "k = {k}: reported {}/{} best {}, oracle {intersecting}/{total} best {best_cover}",
                    report.intersecting, report.total, report.max_intersecting
                ),
            ));
        }
    }
    Ok(PropertyResult::passed(NAME, cases))
}

fn bk_embedding_property(seed: u64) -> Result<PropertyResult> {
    const NAME: &str = "planar-embeddings-verify-on-random-families";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x626b);
    let mut cases = 0;
    for _ in 0..40 {
        cases += 1;
        let ground = rng.gen_range(1..=6);
        let size = rng.gen_range(1..=4);
        let sets: Vec<PointSet> = (0..size).map(|_| random_subset(&mut rng, ground)).collect();
        let family = SetFamily::new(ground, sets)?;
        let embedding = bk_embed(&family)?;
        if let Err(e) = verify_certificates(&embedding) {
            return Ok(PropertyResult::failed(
                NAME,
                cases,
                format!("certificate check failed: {e}"),
            ));
        }
        if let Err(e) = verify_nerve_isomorphism(&family, &embedding) {
            return Ok(PropertyResult::failed(
                NAME,
                cases,
                format!("nerve check failed: {e}"),
            ));
        }
    }
    Ok(PropertyResult::passed(NAME, cases))
}

fn separated_pairs_property(seed: u64) -> Result<PropertyResult> {
    const NAME: &str = "separated-pairs-verify-on-grid-spaces";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x73706c6974);
    let spaces = [
        (make_box_space(1, 5)?, 3usize),
        (make_box_space(2, 2)?, 3),
        (make_box_space(2, 3)?, 4),
    ];
    let mut cases = 0;
    for _ in 0..60 {
        cases += 1;
        let (space, r) = &spaces[rng.gen_range(0..spaces.len())];
        let m = rng.gen_range(2..=3);
        let domain = rng.gen_range(1..=8);
        let functions: Vec<LabeledFunction> = (0..m)
            .map(|i| {
                let values = (0..domain).map(|_| rng.gen_range(0..space.len())).collect();
                LabeledFunction::new(format!("f{i}"), values, space.len())
            })
            .collect::<Result<_>>()?;
        match large_separated_pairs(space, &functions, *r) {
            Ok(pair) => {
                if let Err(e) = verify_separated_pair(space, &functions, *r, &pair) {
                    return Ok(PropertyResult::failed(
                        NAME,
                        cases,
                        format!("produced pair fails its own verifier: {e}"),
                    ));
                }
            }
            // Every image hull may contain the pivot; nothing to split.
            Err(Error::Precondition(_)) => {}
            Err(e) => {
                return Ok(PropertyResult::failed(
                    NAME,
                    cases,
                    format!("unexpected error: {e}"),
                ));
            }
        }
    }
    Ok(PropertyResult::passed(NAME, cases))
}

fn partite_count_property(seed: u64) -> Result<PropertyResult> {
    const NAME: &str = "complete-bipartite-counts-match-a-direct-scan";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x62697061);
    let shape = PartiteShape::new(vec![3, 3])?;
    let mut cases = 0;
    for _ in 0..80 {
        cases += 1;
        let edges = random_subset(&mut rng, 9);
        let counted = count_complete_subhypergraphs(&shape, &edges, 2)?;
        let mut oracle = 0u64;
        for i in 0..3 {
            for j in (i + 1)..3 {
                for k in 0..3 {
                    for l in (k + 1)..3 {
                        if edges.contains(3 * i + k)
                            && edges.contains(3 * i + l)
                            && edges.contains(3 * j + k)
                            && edges.contains(3 * j + l)
                        {
                            oracle += 1;
                        }
                    }
                }
            }
        }
        if counted != oracle {
            return Ok(PropertyResult::failed(
                NAME,
                cases,
                format!("edges {edges:?}: counted {counted}, oracle {oracle}"),
            ));
        }
    }
    Ok(PropertyResult::passed(NAME, cases))
}

fn planar_hull_property(seed: u64) -> Result<PropertyResult> {
    const NAME: &str = "planar-grid-hulls-match-the-feasibility-solver";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x706c616e);
    let space = crate::builtins::make_lattice_space(2, 4)?;
    let coords: Vec<Vec<BigRational>> = (0..space.len())
        .map(|i| space.point(i).coords.clone().expect("grid points have coordinates"))
        .collect();
    let mut cases = 0;
    for _ in 0..60 {
        cases += 1;
        let y = random_subset(&mut rng, space.len());
        let hull = space.hull(&y)?;
        let members: Vec<Vec<BigRational>> = y.iter().map(|i| coords[i].clone()).collect();
        for p in 0..space.len() {
            let feasible = if y.is_empty() {
                false
            } else {
                point_in_rational_hull(&members, &coords[p])?
            };
            if feasible != hull.contains(p) {
                return Ok(PropertyResult::failed(
                    NAME,
                    cases,
                    format!("hull({y:?}) disagrees with the solver at point {p}"),
                ));
            }
        }
    }
    Ok(PropertyResult::passed(NAME, cases))
}

/// Runs every property with sub-seeds derived from `seed`.
pub fn run_selftest(seed: u64) -> Result<Vec<PropertyResult>> {
    Ok(vec![
        hull_laws_property(seed)?,
        helly_routes_property(seed)?,
        radon_partition_property(seed)?,
        fractional_helly_property(seed)?,
        bk_embedding_property(seed)?,
        separated_pairs_property(seed)?,
        partite_count_property(seed)?,
        planar_hull_property(seed)?,
    ])
}
