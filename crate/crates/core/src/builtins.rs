//! Constructors for the spaces the rest of the crate is exercised on:
//! axis-aligned box convexity and integer-lattice convexity on finite
//! grids, explicit list-backed spaces, and the crossing-slab family
//! used as a fractional-Helly lower bound witness.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::pointset::PointSet;
use crate::simplex::convex_combination_feasible;
use crate::space::{ConvexitySpace, GroundPoint, SpaceKind};

/// Default ceiling on grid ground-set sizes (`side.pow(dim)`).
pub const DEFAULT_GROUND_CAP: usize = 4096;

fn grid_ground(dim: usize, side: usize) -> Result<Vec<GroundPoint>> {
    if dim == 0 || side == 0 {
        return Err(Error::Precondition(
            "grid spaces need dim >= 1 and side >= 1".into(),
        ));
    }
    let n = side
        .checked_pow(dim as u32)
        .filter(|&n| n <= DEFAULT_GROUND_CAP)
        .ok_or(Error::CapExceeded {
            what: "grid ground set",
            needed: side.checked_pow(dim as u32).unwrap_or(usize::MAX),
            cap: DEFAULT_GROUND_CAP,
        })?;
    let mut ground = Vec::with_capacity(n);
    for idx in 0..n {
        let mut digits = vec![0usize; dim];
        let mut rest = idx;
        for d in (0..dim).rev() {
            digits[d] = rest % side;
            rest /= side;
        }
        let label = format!(
            "({})",
            digits
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let coords = digits
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        ground.push(GroundPoint {
            coords: Some(coords),
            label: Some(label),
        });
    }
    Ok(ground)
}

/// Box convexity on the grid `{0..side-1}^dim`: the convex sets are the
/// sub-grids given by a coordinate interval per axis, plus the empty set.
pub fn make_box_space(dim: usize, side: usize) -> Result<ConvexitySpace> {
    Ok(ConvexitySpace::new(
        SpaceKind::Box { dim, side },
        grid_ground(dim, side)?,
        None,
    ))
}

/// Trace of ordinary convexity on the grid `{0..side-1}^dim`: a set is
/// convex when it contains every grid point in its rational convex hull.
pub fn make_lattice_space(dim: usize, side: usize) -> Result<ConvexitySpace> {
    Ok(ConvexitySpace::new(
        SpaceKind::Lattice { dim, side },
        grid_ground(dim, side)?,
        None,
    ))
}

fn unlabeled_ground(universe: usize) -> Vec<GroundPoint> {
    (0..universe)
        .map(|_| GroundPoint {
            coords: None,
            label: None,
        })
        .collect()
}

/// Space whose convex sets are the members of `family` closed under
/// intersection, together with the empty set and the ground set. The
/// closure is what makes the result a genuine convexity space no matter
/// what list comes in.
pub fn make_explicit_space(universe: usize, family: &SetFamily) -> Result<ConvexitySpace> {
    if family.universe() != universe {
        return Err(Error::UniverseMismatch {
            left: family.universe(),
            right: universe,
        });
    }
    if universe > crate::space::DEFAULT_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "explicit space ground set",
            needed: universe,
            cap: crate::space::DEFAULT_ENUM_CAP,
        });
    }
    let mut seen: std::collections::HashSet<PointSet> = std::collections::HashSet::new();
    seen.insert(PointSet::empty(universe));
    seen.insert(PointSet::full(universe));
    let mut frontier: Vec<PointSet> = Vec::new();
    for s in family {
        if seen.insert(s.clone()) {
            frontier.push(s.clone());
        }
    }
    // Pairwise meets of new sets against everything seen so far; repeat
    // until nothing new appears.
    while let Some(a) = frontier.pop() {
        let snapshot: Vec<PointSet> = seen.iter().cloned().collect();
        for b in snapshot {
            let meet = a.intersection(&b);
            if seen.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    let mut closed: Vec<PointSet> = seen.into_iter().collect();
    closed.sort();
    Ok(ConvexitySpace::new(
        SpaceKind::Explicit,
        unlabeled_ground(universe),
        Some(closed),
    ))
}

/// Raw explicit space that stores `sets` exactly as given, with no
/// closure and no validation beyond universe sizes. Exists so that
/// corrupted families can be fed to `check_axioms` and observed to
/// fail; everything downstream assumes audited spaces.
pub fn explicit_space_unchecked(universe: usize, sets: Vec<PointSet>) -> ConvexitySpace {
    for s in &sets {
        assert_eq!(s.universe(), universe, "family member universe mismatch");
    }
    ConvexitySpace::new(SpaceKind::Explicit, unlabeled_ground(universe), Some(sets))
}

/// Membership of a rational point in the convex hull of finitely many
/// rational points, decided exactly.
pub fn point_in_rational_hull(
    points: &[Vec<BigRational>],
    target: &[BigRational],
) -> Result<bool> {
    convex_combination_feasible(points, target)
}

/// Smallest `r` with `C(r, floor(r/2)) > 2 * dim`: the Radon number of
/// box convexity in the given dimension, once the grid is large enough
/// to realize it.
pub fn box_radon_formula(dim: usize) -> usize {
    let bound = 2u128 * dim as u128;
    (1usize..)
        .find(|&r| num_integer::binomial(r as u128, (r / 2) as u128) > bound)
        .unwrap()
}

/// The crossing-slab family on the grid `{0..n/dim-1}^dim`: for each
/// axis `t` and position `p`, the slab of all points whose coordinate
/// `t` equals `p`, listed axis-major. Slabs on the same axis are
/// pairwise disjoint while slabs on distinct axes always meet, so at
/// most `dim` members share a point even though many pairs intersect —
/// the shape that keeps fractional-Helly constants small.
pub fn box_lower_bound_family(dim: usize, n: usize) -> Result<(ConvexitySpace, SetFamily)> {
    if dim == 0 || n == 0 || !n.is_multiple_of(dim) || n / dim < 2 {
        return Err(Error::Precondition(
            "crossing-slab family needs n to be a multiple of dim with n/dim >= 2".into(),
        ));
    }
    let side = n / dim;
    let space = make_box_space(dim, side)?;
    let mut sets = Vec::with_capacity(n);
    for axis in 0..dim {
        for pos in 0..side {
            let mut slab = space.empty_set();
            for idx in 0..space.len() {
                let digit = idx / side.pow((dim - 1 - axis) as u32) % side;
                if digit == pos {
                    slab.insert(idx);
                }
            }
            sets.push(slab);
        }
    }
    let family = SetFamily::new(space.len(), sets)?;
    Ok((space, family))
}

/// Small audited spaces the test suites sweep over: every grid space
/// with at most 16 points that the exact machinery handles quickly.
pub fn small_space_catalog() -> Vec<(String, ConvexitySpace)> {
    let mut out = Vec::new();
    for (dim, side) in [
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 2),
        (4, 2),
    ] {
        out.push((
            format!("box {dim}x{side}"),
            make_box_space(dim, side).unwrap(),
        ));
    }
    for (dim, side) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        out.push((
            format!("lattice {dim}x{side}"),
            make_lattice_space(dim, side).unwrap(),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ground_cap_is_enforced() {
        assert!(make_box_space(2, 64).is_ok()); // 4096 exactly
        assert!(matches!(
            make_box_space(2, 65),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            make_lattice_space(13, 3),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(make_box_space(0, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn grid_points_carry_coords_and_labels() {
        let s = make_box_space(2, 3).unwrap();
        assert_eq!(s.len(), 9);
        // Row-major with the first coordinate most significant.
        assert_eq!(s.index_of_coords(&[1, 2]), Some(5));
        assert_eq!(s.point(5).label.as_deref(), Some("(1,2)"));
        let coords = s.point(5).coords.as_ref().unwrap();
        assert_eq!(coords[0], BigRational::from_integer(BigInt::from(1)));
        assert_eq!(coords[1], BigRational::from_integer(BigInt::from(2)));
        assert_eq!(s.index_of_coords(&[3, 0]), None);
        assert_eq!(s.index_of_coords(&[1]), None);
    }

    #[test]
    fn explicit_closure_adds_meets_and_the_trivial_sets() {
        let family = SetFamily::new(
            3,
            vec![
                PointSet::from_indices(3, &[0, 1]).unwrap(),
                PointSet::from_indices(3, &[1, 2]).unwrap(),
            ],
        )
        .unwrap();
        let space = make_explicit_space(3, &family).unwrap();
        let stored: Vec<Vec<usize>> = space
            .explicit_family()
            .unwrap()
            .iter()
            .map(|s| s.to_vec())
            .collect();
        assert_eq!(
            stored,
            vec![
                vec![],
                vec![1],
                vec![0, 1],
                vec![1, 2],
                vec![0, 1, 2],
            ]
        );
    }

    #[test]
    fn closing_a_closed_family_changes_nothing() {
        let family = SetFamily::new(
            3,
            vec![
                PointSet::from_indices(3, &[0, 1]).unwrap(),
                PointSet::from_indices(3, &[1, 2]).unwrap(),
            ],
        )
        .unwrap();
        let once = make_explicit_space(3, &family).unwrap();
        let again = make_explicit_space(
            3,
            &SetFamily::new(3, once.explicit_family().unwrap().to_vec()).unwrap(),
        )
        .unwrap();
        assert_eq!(once.explicit_family(), again.explicit_family());
    }

    #[test]
    fn radon_formula_matches_hand_counts() {
        // C(3,1)=3 > 2; C(4,2)=6 > 4; C(5,2)=10 > 6 and > 8; C(6,3)=20 > 10.
        assert_eq!(box_radon_formula(1), 3);
        assert_eq!(box_radon_formula(2), 4);
        assert_eq!(box_radon_formula(3), 5);
        assert_eq!(box_radon_formula(4), 5);
        assert_eq!(box_radon_formula(5), 6);
    }

    #[test]
    fn crossing_slabs_cover_each_point_once_per_axis() {
        let (space, family) = box_lower_bound_family(2, 6).unwrap();
        assert_eq!(space.len(), 9);
        assert_eq!(family.len(), 6);
        // Slab 0 is the column with first coordinate 0.
        assert_eq!(family.get(0).unwrap().to_vec(), vec![0, 1, 2]);
        // Slab 3 is the row with second coordinate 0.
        assert_eq!(family.get(3).unwrap().to_vec(), vec![0, 3, 6]);
        for point in 0..space.len() {
            let covering = family.iter().filter(|s| s.contains(point)).count();
            assert_eq!(covering, 2);
        }
        // Same-axis slabs are disjoint; cross-axis slabs always meet.
        for i in 0..6 {
            for j in (i + 1)..6 {
                let meet = family.get(i).unwrap().intersection(family.get(j).unwrap());
                let same_axis = i / 3 == j / 3;
                assert_eq!(meet.is_empty(), same_axis, "slabs {i},{j}");
            }
        }
    }

    #[test]
    fn crossing_slabs_reject_bad_shapes() {
        assert!(matches!(
            box_lower_bound_family(2, 5),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            box_lower_bound_family(3, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn every_slab_is_convex_in_its_space() {
        let (space, family) = box_lower_bound_family(2, 6).unwrap();
        for s in &family {
            assert!(space.is_convex(s).unwrap());
        }
    }

    #[test]
    fn rational_hull_membership_wrapper_matches_the_solver() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let zero = BigRational::from_integer(BigInt::from(0));
        let one = BigRational::from_integer(BigInt::from(1));
        let pts = vec![vec![zero.clone(), zero.clone()], vec![one.clone(), one.clone()]];
        assert!(point_in_rational_hull(&pts, &[half.clone(), half]).unwrap());
        assert!(!point_in_rational_hull(&pts, &[zero, one]).unwrap());
    }
}
