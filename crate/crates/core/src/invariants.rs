//! Classical invariants of a convexity space: Radon and Helly numbers,
//! VC and dual VC dimensions of the halfspace family, and the known
//! inequalities tying them together.
//!
//! The Helly number is computed by two independent routes — largest
//! hull-independent point set, and largest inclusion-minimal convex
//! family with empty intersection — and the report constructor refuses
//! to return if they ever disagree. That disagreement would mean a bug
//! in this crate, not an interesting space.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::pointset::{k_subsets_lex, PointSet};
use crate::space::{ConvexitySpace, SpaceKind};

/// A Radon number, or the fact that no size forces a partition on this
/// ground set (larger grounds of the same kind may still have one).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadonValue {
    Finite(usize),
    NoneAtThisScale,
}

impl RadonValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            RadonValue::Finite(r) => Some(r),
            RadonValue::NoneAtThisScale => None,
        }
    }
}

/// The Radon and Helly searches walk subsets of the whole ground set;
/// the space's enumeration cap is the one knob that refuses that work.
fn check_subset_search_cap(space: &ConvexitySpace, what: &'static str) -> Result<()> {
    if space.len() > space.enum_cap() {
        return Err(Error::CapExceeded {
            what,
            needed: space.len(),
            cap: space.enum_cap(),
        });
    }
    Ok(())
}

/// First (canonical order of the smaller side) split of `y` into two
/// nonempty parts with intersecting hulls, if any.
pub fn radon_partition(
    space: &ConvexitySpace,
    y: &PointSet,
) -> Result<Option<(PointSet, PointSet)>> {
    if y.universe() != space.len() {
        return Err(Error::UniverseMismatch {
            left: y.universe(),
            right: space.len(),
        });
    }
    let members = y.to_vec();
    let m = members.len();
    for size in 1..=(m / 2) {
        for picked in k_subsets_lex(&members, size) {
            let a = PointSet::from_indices(y.universe(), &picked)?;
            let b = y.difference(&a);
            if 2 * size == m && a.canonical_cmp(&b) == std::cmp::Ordering::Greater {
                continue;
            }
            if !space.hull(&a)?.is_disjoint(&space.hull(&b)?) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Smallest `r` such that every `r`-subset of the ground set has a
/// Radon partition.
pub fn radon_number(space: &ConvexitySpace) -> Result<RadonValue> {
    check_subset_search_cap(space, "radon subset search")?;
    let n = space.len();
    // A partition survives adding points (the newcomer joins either side
    // and hulls only grow), so the partition-free sets are closed under
    // taking subsets and the Radon number is one more than the largest
    // partition-free size. Grow partition-free sets point by point; the
    // budget turns a pathological frontier into a refusal instead of a
    // stall.
    let mut budget: u64 = 4_000_000;
    let mut best = 0usize;
    let mut stack: Vec<(PointSet, usize)> = vec![(PointSet::empty(n), 0)];
    while let Some((s, from)) = stack.pop() {
        for p in from..n {
            if budget == 0 {
                return Err(Error::CapExceeded {
                    what: "radon partition-free search",
                    needed: n,
                    cap: space.enum_cap(),
                });
            }
            budget -= 1;
            let mut t = s.clone();
            t.insert(p);
            if radon_partition(space, &t)?.is_none() {
                best = best.max(t.len());
                stack.push((t, p + 1));
            }
        }
    }
    if best >= n {
        Ok(RadonValue::NoneAtThisScale)
    } else {
        Ok(RadonValue::Finite(best + 1))
    }
}

/// Whether the leave-one-out hulls of `s` have empty common
/// intersection.
pub(crate) fn is_independent_set(space: &ConvexitySpace, s: &PointSet) -> Result<bool> {
    let mut acc = space.full_set();
    for x in s.iter() {
        let mut rest = s.clone();
        rest.remove(x);
        acc.intersect_with(&space.hull(&rest)?);
        if acc.is_empty() {
            return Ok(true);
        }
    }
    Ok(acc.is_empty())
}

/// Helly number as the size of the largest hull-independent subset of
/// the ground set, searched from the top so the first witness found is
/// already maximal. Returns the witness alongside the value.
pub fn helly_number_independence(space: &ConvexitySpace) -> Result<(usize, PointSet)> {
    check_subset_search_cap(space, "independence subset search")?;
    let n = space.len();
    let all: Vec<usize> = (0..n).collect();
    for m in (1..=n).rev() {
        for picked in k_subsets_lex(&all, m) {
            let s = PointSet::from_indices(n, &picked)?;
            if is_independent_set(space, &s)? {
                return Ok((m, s));
            }
        }
    }
    // Only degenerate hull operators (hull of the empty set nonempty,
    // everything overlapping) land here.
    Ok((0, space.empty_set()))
}

/// Helly number as the size of the largest inclusion-minimal convex
/// family with empty intersection, together with that family. Searched
/// from the top with aggressive pruning: in a minimal family of size k
/// every member keeps at least k-1 designated points, partial
/// intersections keep at least k-t, every member must strictly shrink
/// the running intersection, and no member may contain the
/// intersection of the others.
pub fn helly_number_direct(space: &ConvexitySpace) -> Result<(usize, Vec<PointSet>)> {
    let family = space.enumerate_convex_sets()?;
    let n = space.len();
    // Shared across all sizes so one infeasible layer cannot stall the
    // whole scan; exhaustion is a refusal, never a wrong answer.
    let mut budget: u64 = 20_000_000;
    for k in (1..=n).rev() {
        let candidates: Vec<&PointSet> = family.iter().filter(|c| c.len() + 1 >= k).collect();
        if candidates.len() < k {
            continue;
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        let mut loo: Vec<PointSet> = Vec::with_capacity(k);
        if search_critical(
            space,
            &candidates,
            k,
            0,
            &space.full_set(),
            &mut chosen,
            &mut loo,
            &mut budget,
        )? {
            return Ok((k, chosen.iter().map(|&i| candidates[i].clone()).collect()));
        }
    }
    Ok((0, Vec::new()))
}

#[allow(clippy::too_many_arguments)]
fn search_critical(
    space: &ConvexitySpace,
    candidates: &[&PointSet],
    k: usize,
    from: usize,
    cur: &PointSet,
    chosen: &mut Vec<usize>,
    loo: &mut Vec<PointSet>,
    budget: &mut u64,
) -> Result<bool> {
    let t = chosen.len();
    if t == k {
        return Ok(cur.is_empty() && loo.iter().all(|l| !l.is_empty()));
    }
    for idx in from..candidates.len() {
        if candidates.len() - idx < k - t {
            break;
        }
        if *budget == 0 {
            return Err(Error::CapExceeded {
                what: "critical family search",
                needed: candidates.len(),
                cap: space.enum_cap(),
            });
        }
        *budget -= 1;
        let c = candidates[idx];
        let next = cur.intersection(c);
        if next.len() == cur.len() {
            continue; // not a strict shrink: c would be redundant
        }
        if next.len() + t + 1 < k {
            continue; // cannot still hold one point per future member
        }
        // Leave-one-out intersections must never sink into their own
        // member, and each must still hold one designated point per
        // member yet to come plus its own; they only shrink from here
        // on, so a violation now is final.
        let mut new_loo: Vec<PointSet> = Vec::with_capacity(t + 1);
        let mut viable = true;
        for (j, l) in loo.iter().enumerate() {
            let shrunk = l.intersection(c);
            if shrunk.len() + t < k || shrunk.is_subset_of(candidates[chosen[j]]) {
                viable = false;
                break;
            }
            new_loo.push(shrunk);
        }
        if !viable {
            continue;
        }
        if cur.len() + t < k || cur.is_subset_of(c) {
            continue;
        }
        new_loo.push(cur.clone());
        chosen.push(idx);
        let saved = std::mem::replace(loo, new_loo);
        if search_critical(space, candidates, k, idx + 1, &next, chosen, loo, budget)? {
            return Ok(true);
        }
        *loo = saved;
        chosen.pop();
    }
    Ok(false)
}

/// Nonempty cells of the Venn diagram of the family, keyed by the
/// membership signature (bit `i` set when the cell lies in member `i`),
/// in increasing signature order.
pub fn venn_atoms(family: &SetFamily) -> Result<Vec<(u64, PointSet)>> {
    if family.len() > 64 {
        return Err(Error::CapExceeded {
            what: "venn signature width",
            needed: family.len(),
            cap: 64,
        });
    }
    let mut cells: std::collections::BTreeMap<u64, PointSet> = std::collections::BTreeMap::new();
    for p in 0..family.universe() {
        let mut sig = 0u64;
        for (i, f) in family.iter().enumerate() {
            if f.contains(p) {
                sig |= 1 << i;
            }
        }
        cells
            .entry(sig)
            .or_insert_with(|| PointSet::empty(family.universe()))
            .insert(p);
    }
    Ok(cells.into_iter().collect())
}

fn distinct_signatures(family: &SetFamily, picked: &[usize]) -> usize {
    let mut sigs = std::collections::HashSet::new();
    for p in 0..family.universe() {
        let mut sig = 0u64;
        for (j, &i) in picked.iter().enumerate() {
            if family.sets()[i].contains(p) {
                sig |= 1 << j;
            }
        }
        sigs.insert(sig);
    }
    sigs.len()
}

/// Largest number of Venn cells any `m` members of the family cut the
/// ground set into.
pub fn dual_shatter_function(family: &SetFamily, m: usize) -> Result<usize> {
    if m > 64 {
        return Err(Error::CapExceeded {
            what: "dual shatter signature width",
            needed: m,
            cap: 64,
        });
    }
    if m > family.len() {
        return Err(Error::Precondition(format!(
            "dual shatter asked for {m} members but the family has {}",
            family.len()
        )));
    }
    let all: Vec<usize> = (0..family.len()).collect();
    let mut best = 0;
    for picked in k_subsets_lex(&all, m) {
        best = best.max(distinct_signatures(family, &picked));
    }
    Ok(best)
}

/// Largest `k` such that some `k` members cut the ground set into all
/// `2^k` possible cells.
pub fn dual_vc_dimension(family: &SetFamily) -> Result<usize> {
    if family.universe() == 0 {
        return Err(Error::Precondition(
            "dual VC dimension needs a nonempty ground set".into(),
        ));
    }
    let all: Vec<usize> = (0..family.len()).collect();
    let mut best = 0;
    for k in 1..=family.len().min(63) {
        if (1usize << k) > family.universe() {
            break; // more cells than points
        }
        let shattered = k_subsets_lex(&all, k)
            .any(|picked| distinct_signatures(family, &picked) == 1 << k);
        if !shattered {
            break;
        }
        best = k;
    }
    Ok(best)
}

/// Largest `k` such that some `k` ground points are shattered by the
/// traces of the family.
pub fn vc_dimension(family: &SetFamily) -> Result<usize> {
    if family.is_empty() {
        return Err(Error::Precondition(
            "VC dimension of an empty family is undefined".into(),
        ));
    }
    let all: Vec<usize> = (0..family.universe()).collect();
    let mut best = 0;
    for k in 1..=family.universe().min(63) {
        if (1usize << k) > family.len() {
            break; // more traces needed than members available
        }
        let shattered = k_subsets_lex(&all, k).any(|points| {
            let mut traces = std::collections::HashSet::new();
            for f in family {
                let mut mask = 0u64;
                for (j, &p) in points.iter().enumerate() {
                    if f.contains(p) {
                        mask |= 1 << j;
                    }
                }
                traces.insert(mask);
            }
            traces.len() == 1 << k
        });
        if !shattered {
            break;
        }
        best = k;
    }
    Ok(best)
}

#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub ground_size: usize,
    pub helly: usize,
    pub helly_witness: PointSet,
    pub helly_critical_family: Vec<PointSet>,
    pub radon: RadonValue,
    pub separable: bool,
    pub halfspace_count: usize,
    pub halfspace_vc: usize,
    pub halfspace_dual_vc: usize,
    pub bounds: Vec<BoundCheck>,
}

impl InvariantReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }
}

/// Compute every invariant of the space plus the inequality checks
/// that relate them. Fails with a verification error if the two Helly
/// routes disagree.
pub fn compute_invariant_report(space: &ConvexitySpace) -> Result<InvariantReport> {
    let (h_ind, helly_witness) = helly_number_independence(space)?;
    let (h_dir, helly_critical_family) = helly_number_direct(space)?;
    if h_ind != h_dir {
        return Err(Error::Verification(format!(
            "helly routes disagree: independence {h_ind}, minimal family {h_dir}"
        )));
    }
    let radon = radon_number(space)?;
    let separable = space.is_separable()?.separable;
    let halfspaces = space.enumerate_halfspaces()?;
    let hs_family = SetFamily::new(
        space.len(),
        halfspaces.iter().map(|h| h.gamma().clone()).collect(),
    )?;
    let halfspace_vc = vc_dimension(&hs_family)?;
    let halfspace_dual_vc = dual_vc_dimension(&hs_family)?;

    let mut bounds = Vec::new();
    bounds.push(match radon {
        RadonValue::Finite(r) => BoundCheck {
            name: "helly-below-radon",
            holds: h_ind < r,
            detail: format!("helly {h_ind} < radon {r}"),
        },
        RadonValue::NoneAtThisScale => BoundCheck {
            name: "helly-below-radon",
            holds: true,
            detail: "vacuous: no finite radon number at this scale".into(),
        },
    });
    bounds.push(match (separable, radon) {
        (true, RadonValue::Finite(r)) => BoundCheck {
            name: "halfspace-vc-below-radon",
            holds: halfspace_vc < r,
            detail: format!("halfspace vc {halfspace_vc} < radon {r}"),
        },
        (true, RadonValue::NoneAtThisScale) => BoundCheck {
            name: "halfspace-vc-below-radon",
            holds: true,
            detail: "vacuous: no finite radon number at this scale".into(),
        },
        (false, _) => BoundCheck {
            name: "halfspace-vc-below-radon",
            holds: true,
            detail: "vacuous: the space is not separable".into(),
        },
    });
    bounds.push(BoundCheck {
        name: "dual-vc-exponential-gap",
        holds: (halfspace_dual_vc as u128) < 1u128 << (halfspace_vc + 1),
        detail: format!(
            "halfspace dual vc {halfspace_dual_vc} < 2^(vc+1) = {}",
            1u128 << (halfspace_vc + 1)
        ),
    });
    if let SpaceKind::Lattice { dim, .. } = *space.kind() {
        bounds.push(match radon {
            RadonValue::Finite(r) => {
                let cap = dim * ((1 << dim) - 1) + 3;
                BoundCheck {
                    name: "lattice-radon-within-box-bound",
                    holds: r <= cap,
                    detail: format!("radon {r} <= {cap} in dimension {dim}"),
                }
            }
            RadonValue::NoneAtThisScale => BoundCheck {
                name: "lattice-radon-within-box-bound",
                holds: true,
                detail: "vacuous: no finite radon number at this scale".into(),
            },
        });
    }
    if let SpaceKind::Box { dim, .. } = *space.kind() {
        bounds.push(match radon {
            RadonValue::Finite(r) => {
                let formula = crate::builtins::box_radon_formula(dim);
                BoundCheck {
                    name: "box-radon-within-formula",
                    holds: r <= formula,
                    detail: format!("radon {r} <= binomial threshold {formula}"),
                }
            }
            RadonValue::NoneAtThisScale => BoundCheck {
                name: "box-radon-within-formula",
                holds: true,
                detail: "vacuous: no finite radon number at this scale".into(),
            },
        });
    }

    Ok(InvariantReport {
        ground_size: space.len(),
        helly: h_ind,
        helly_witness,
        helly_critical_family,
        radon,
        separable,
        halfspace_count: halfspaces.len(),
        halfspace_vc,
        halfspace_dual_vc,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{make_box_space, make_explicit_space, make_lattice_space};

    fn pts(n: usize, idx: &[usize]) -> PointSet {
        PointSet::from_indices(n, idx).unwrap()
    }

    #[test]
    fn radon_partition_on_a_chain_splits_middle_from_ends() {
        let s = make_box_space(1, 3).unwrap();
        let (a, b) = radon_partition(&s, &s.full_set()).unwrap().unwrap();
        assert_eq!(a.to_vec(), vec![1]);
        assert_eq!(b.to_vec(), vec![0, 2]);
    }

    #[test]
    fn unit_square_lattice_has_no_radon_partition() {
        // All four points of {0,1}^2: the diagonals cross off-lattice,
        // so no split has intersecting hulls.
        let s = make_lattice_space(2, 2).unwrap();
        assert!(radon_partition(&s, &s.full_set()).unwrap().is_none());
        assert_eq!(radon_number(&s).unwrap(), RadonValue::NoneAtThisScale);
    }

    #[test]
    fn radon_number_of_small_box_grids() {
        assert_eq!(
            radon_number(&make_box_space(2, 3).unwrap()).unwrap(),
            RadonValue::Finite(4)
        );
        // On the 2x2 grid every triple already splits (some corner lies
        // in the bounding box of the other two), so the value drops to 3.
        assert_eq!(
            radon_number(&make_box_space(2, 2).unwrap()).unwrap(),
            RadonValue::Finite(3)
        );
        assert_eq!(
            radon_number(&make_box_space(1, 4).unwrap()).unwrap(),
            RadonValue::Finite(3)
        );
    }

    #[test]
    fn helly_routes_agree_and_give_two_on_boxes() {
        for space in [
            make_box_space(2, 3).unwrap(),
            make_box_space(3, 2).unwrap(),
        ] {
            let (h1, witness) = helly_number_independence(&space).unwrap();
            let (h2, critical) = helly_number_direct(&space).unwrap();
            assert_eq!(h1, 2);
            assert_eq!(h2, 2);
            assert_eq!(witness.len(), 2);
            assert_eq!(critical.len(), 2);
            // The critical pair really is minimal with empty meet.
            assert!(critical[0].is_disjoint(&critical[1]));
            assert!(!critical[0].is_empty());
            assert!(!critical[1].is_empty());
        }
    }

    #[test]
    fn helly_of_binary_lattice_cubes_is_two_to_the_dim() {
        // Every subset of {0,1}^d is lattice-convex, so the whole
        // ground set is independent and the minimal-family search must
        // assemble all 2^d co-singletons.
        for (dim, expected) in [(2usize, 4usize), (3, 8)] {
            let space = make_lattice_space(dim, 2).unwrap();
            let (h1, witness) = helly_number_independence(&space).unwrap();
            let (h2, critical) = helly_number_direct(&space).unwrap();
            assert_eq!(h1, expected);
            assert_eq!(h2, expected);
            assert_eq!(witness, space.full_set());
            for c in &critical {
                assert_eq!(c.len(), expected - 1);
            }
        }
    }

    #[test]
    fn explicit_space_helly_routes_agree() {
        let family = SetFamily::new(
            4,
            vec![
                pts(4, &[0, 1]),
                pts(4, &[1, 2]),
                pts(4, &[2, 3]),
                pts(4, &[0, 3]),
            ],
        )
        .unwrap();
        let space = make_explicit_space(4, &family).unwrap();
        let (h1, _) = helly_number_independence(&space).unwrap();
        let (h2, _) = helly_number_direct(&space).unwrap();
        assert_eq!(h1, h2);
    }

    #[test]
    fn venn_atoms_group_points_by_signature() {
        let family = SetFamily::new(4, vec![pts(4, &[0, 1]), pts(4, &[1, 2])]).unwrap();
        let atoms = venn_atoms(&family).unwrap();
        let flat: Vec<(u64, Vec<usize>)> =
            atoms.into_iter().map(|(s, p)| (s, p.to_vec())).collect();
        assert_eq!(
            flat,
            vec![
                (0, vec![3]),
                (1, vec![0]),
                (2, vec![2]),
                (3, vec![1]),
            ]
        );
    }

    #[test]
    fn chain_halfspaces_realize_only_three_cells_per_pair() {
        // Prefixes and suffixes of a chain can never cut four regions:
        // the two-member dual shatter value sticks at three, so the
        // dual VC dimension is one.
        for side in [3usize, 5] {
            let space = make_box_space(1, side).unwrap();
            let gammas: Vec<PointSet> = space
                .enumerate_halfspaces()
                .unwrap()
                .iter()
                .map(|h| h.gamma().clone())
                .collect();
            let family = SetFamily::new(space.len(), gammas).unwrap();
            assert_eq!(dual_shatter_function(&family, 2).unwrap(), 3);
            assert_eq!(dual_vc_dimension(&family).unwrap(), 1);
        }
    }

    #[test]
    fn trivial_family_shatters_one_point_but_no_pair() {
        let family =
            SetFamily::new(3, vec![PointSet::empty(3), PointSet::full(3)]).unwrap();
        assert_eq!(vc_dimension(&family).unwrap(), 1);
        assert_eq!(dual_vc_dimension(&family).unwrap(), 0);
    }

    #[test]
    fn dual_shatter_rejects_oversized_requests() {
        let family = SetFamily::new(2, vec![PointSet::empty(2)]).unwrap();
        assert!(matches!(
            dual_shatter_function(&family, 2),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            vc_dimension(&SetFamily::new(2, vec![]).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn subset_searches_refuse_grounds_beyond_the_cap() {
        let big = make_box_space(4, 3).unwrap(); // 81 points, default cap 24
        assert!(matches!(
            helly_number_independence(&big),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(radon_number(&big), Err(Error::CapExceeded { .. })));
        let relaxed = make_box_space(1, 5).unwrap().with_enum_cap(5);
        assert_eq!(radon_number(&relaxed).unwrap(), RadonValue::Finite(3));
    }

    #[test]
    fn small_box_grid_report_has_expected_values_and_bounds() {
        let report = compute_invariant_report(&make_box_space(2, 3).unwrap()).unwrap();
        assert_eq!(report.ground_size, 9);
        assert_eq!(report.helly, 2);
        assert_eq!(report.radon, RadonValue::Finite(4));
        assert!(report.separable);
        assert_eq!(report.halfspace_count, 10);
        // The slabs shatter {(0,2),(1,1),(2,2)} — x-slabs give the
        // prefixes along it, y<=1 isolates the middle, y>=2 the ends —
        // so the VC dimension meets the radon-1 ceiling exactly.
        assert_eq!(report.halfspace_vc, 3);
        assert_eq!(report.halfspace_dual_vc, 2);
        assert!(report.all_bounds_hold(), "{:?}", report.bounds);
        let names: Vec<&str> = report.bounds.iter().map(|b| b.name).collect();
        assert_eq!(
            names,
            vec![
                "helly-below-radon",
                "halfspace-vc-below-radon",
                "dual-vc-exponential-gap",
                "box-radon-within-formula",
            ]
        );
    }

    #[test]
    fn binary_lattice_report_is_vacuously_consistent() {
        let report = compute_invariant_report(&make_lattice_space(2, 2).unwrap()).unwrap();
        assert_eq!(report.helly, 4);
        assert_eq!(report.radon, RadonValue::NoneAtThisScale);
        assert!(report.all_bounds_hold(), "{:?}", report.bounds);
        assert!(report
            .bounds
            .iter()
            .any(|b| b.name == "lattice-radon-within-box-bound"));
    }
}
