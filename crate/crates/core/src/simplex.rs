//! Exact feasibility test for convex-combination systems.
//!
//! Decides whether a target vector is a convex combination of a finite
//! list of rational vectors: find lambda >= 0 with sum(lambda) = 1 and
//! sum(lambda_i * y_i) = p. Solved by phase-one simplex over exact
//! rationals with Bland's rule, so termination does not depend on any
//! numeric tolerance. No floating point is involved anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// True iff `target` lies in the convex hull of `points` (all exact).
pub fn convex_combination_feasible(points: &[Vec<BigRational>], target: &[BigRational]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let dim = target.len();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
    }

    // Rows: one barycentric row (sum lambda = 1) plus one per coordinate.
    let rows = dim + 1;
    let cols = points.len();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    let mut b: Vec<BigRational> = Vec::with_capacity(rows);

    a.push(vec![BigRational::one(); cols]);
    b.push(BigRational::one());
    for c in 0..dim {
        a.push(points.iter().map(|p| p[c].clone()).collect());
        b.push(target[c].clone());
    }

    Ok(phase_one_feasible(a, b))
}

/// Phase-one simplex: minimize the sum of one artificial variable per
/// row; the system A x = b, x >= 0 is feasible iff the minimum is zero.
fn phase_one_feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let rows = a.len();
    let structural = a[0].len();

    for r in 0..rows {
        if b[r].is_negative() {
            for v in a[r].iter_mut() {
                *v = -v.clone();
            }
            b[r] = -b[r].clone();
        }
    }

    // Append the artificial identity block; basis starts as all artificials.
    for (r, row) in a.iter_mut().enumerate() {
        for k in 0..rows {
            row.push(if k == r {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
    }
    let total = structural + rows;
    let mut basis: Vec<usize> = (structural..total).collect();

    // Reduced-cost row for the phase-one objective: cost 1 on artificials,
    // 0 elsewhere, expressed relative to the starting basis.
    let mut z: Vec<BigRational> = vec![BigRational::zero(); total];
    let mut obj = BigRational::zero();
    for j in 0..total {
        let mut s = BigRational::zero();
        for r in 0..rows {
            s += &a[r][j];
        }
        let cost = if j >= structural {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        z[j] = cost - s;
    }
    for r in 0..rows {
        obj -= &b[r];
    }

    // Bland: entering column is the lowest index with negative reduced cost.
    while let Some(entering) = (0..total).find(|&j| z[j].is_negative()) {
        // Ratio test, ties broken by lowest basis variable (Bland again).
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if a[r][entering].is_positive() {
                let ratio = &b[r] / &a[r][entering];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (pivot_row, _) = leave.expect("phase-one objective is bounded below");

        let pivot = a[pivot_row][entering].clone();
        for v in a[pivot_row].iter_mut() {
            *v = &*v / &pivot;
        }
        b[pivot_row] = &b[pivot_row] / &pivot;
        for r in 0..rows {
            if r != pivot_row && !a[r][entering].is_zero() {
                let f = a[r][entering].clone();
                for j in 0..total {
                    let d = &f * &a[pivot_row][j];
                    a[r][j] = &a[r][j] - &d;
                }
                let d = &f * &b[pivot_row];
                b[r] = &b[r] - &d;
            }
        }
        if !z[entering].is_zero() {
            let f = z[entering].clone();
            for j in 0..total {
                let d = &f * &a[pivot_row][j];
                z[j] = &z[j] - &d;
            }
            let d = &f * &b[pivot_row];
            obj = &obj - &d;
        }
        basis[pivot_row] = entering;
    }

    obj.is_zero()
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<BigRational>> {
        raw.iter().map(|p| p.iter().map(|&c| int(c)).collect()).collect()
    }

    fn vecr(raw: &[i64]) -> Vec<BigRational> {
        raw.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn segment_midpoint_is_inside() {
        assert!(convex_combination_feasible(&pts(&[&[0, 0], &[2, 2]]), &vecr(&[1, 1])).unwrap());
    }

    #[test]
    fn point_off_the_segment_is_outside() {
        assert!(!convex_combination_feasible(&pts(&[&[0, 0], &[2, 2]]), &vecr(&[0, 1])).unwrap());
    }

    #[test]
    fn triangle_contains_interior_point() {
        let y = pts(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert!(convex_combination_feasible(&y, &vecr(&[1, 1])).unwrap());
        assert!(!convex_combination_feasible(&y, &vecr(&[2, 2])).unwrap());
    }

    #[test]
    fn single_point_hull_is_that_point() {
        let y = pts(&[&[5, 7]]);
        assert!(convex_combination_feasible(&y, &vecr(&[5, 7])).unwrap());
        assert!(!convex_combination_feasible(&y, &vecr(&[5, 8])).unwrap());
    }

    #[test]
    fn empty_generator_list_is_infeasible() {
        assert!(!convex_combination_feasible(&[], &vecr(&[0])).unwrap());
    }

    #[test]
    fn boundary_points_count_as_inside() {
        let y = pts(&[&[0, 0], &[4, 0], &[0, 4]]);
        assert!(convex_combination_feasible(&y, &vecr(&[2, 0])).unwrap());
        assert!(convex_combination_feasible(&y, &vecr(&[2, 2])).unwrap());
        assert!(convex_combination_feasible(&y, &vecr(&[0, 0])).unwrap());
    }

    #[test]
    fn rational_target_inside_unit_square_corners() {
        let y = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let half = vec![ratio(1, 2), ratio(1, 2)];
        assert!(convex_combination_feasible(&y, &half).unwrap());
    }

    #[test]
    fn degenerate_dimension_mismatch_is_reported() {
        let y = vec![vecr(&[0, 0]), vecr(&[1])];
        assert!(convex_combination_feasible(&y, &vecr(&[0, 0])).is_err());
    }

    #[test]
    fn four_dimensional_cross_check() {
        // Center of the 4-cube as average of all 16 corners.
        let mut corners = Vec::new();
        for m in 0..16u32 {
            corners.push(vec![
                int((m & 1) as i64),
                int((m >> 1 & 1) as i64),
                int((m >> 2 & 1) as i64),
                int((m >> 3 & 1) as i64),
            ]);
        }
        let center = vec![ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2)];
        assert!(convex_combination_feasible(&corners, &center).unwrap());
        // A cube corner is never inside the hull of the other corners.
        let others: Vec<_> = corners[1..].to_vec();
        assert!(!convex_combination_feasible(&others, &vecr(&[0, 0, 0, 0])).unwrap());
    }
}
