//! Embedding of an arbitrary finite set system onto a rational line so
//! that every member — and every nonempty intersection of members — is
//! cut out exactly by a short list of quadratic inequalities in two
//! variables. The embedding witnesses that degree-two semialgebraic
//! sets can realize any intersection pattern whatsoever.
//!
//! The producer (`bk_embed`) and the checkers
//! (`verify_certificates`, `verify_nerve_isomorphism`) share no
//! reasoning: the checkers only evaluate polynomials at candidate
//! points and intersect sets, so a bug in the construction cannot hide.
//!
//! # Invariants
//!
//! - atom signatures are nonzero, strictly increasing, and fit in the
//!   member count's bit width
//! - `atom_points` has one entry per atom plus a final candidate that
//!   lies in no member; entry `j` is the rational `j + 1`
//! - every certificate's configuration is a nonempty atom set realized
//!   as an intersection of members

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::pointset::PointSet;

/// Largest family the embedding accepts; the nerve check walks all
/// 2^m subfamilies.
pub const BK_FAMILY_CAP: usize = 20;

/// The inequality `cxx x^2 + cxy xy + cyy y^2 + cx x + cy y + c0 >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadIneq {
    pub cxx: BigRational,
    pub cxy: BigRational,
    pub cyy: BigRational,
    pub cx: BigRational,
    pub cy: BigRational,
    pub c0: BigRational,
}

impl QuadIneq {
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        &self.cxx * x * x
            + &self.cxy * x * y
            + &self.cyy * y * y
            + &self.cx * x
            + &self.cy * y
            + &self.c0
    }

    pub fn holds_at(&self, x: &BigRational, y: &BigRational) -> bool {
        self.eval(x, y) >= BigRational::zero()
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn zero_quad() -> QuadIneq {
    QuadIneq {
        cxx: int(0),
        cxy: int(0),
        cyy: int(0),
        cx: int(0),
        cy: int(0),
        c0: int(0),
    }
}

#[derive(Clone, Debug)]
pub struct BkCertificate {
    /// Atom indices this certificate must cut out, exactly.
    pub configuration: PointSet,
    pub inequalities: Vec<QuadIneq>,
}

#[derive(Clone, Debug)]
pub struct BkEmbedding {
    /// Number of members in the source family.
    pub source_size: usize,
    /// Distinct nonzero membership signatures, ascending; atom `j`
    /// stands for all ground points with signature `atom_signatures[j]`.
    pub atom_signatures: Vec<u64>,
    /// Candidate evaluation points: atom `j` sits at `j + 1`, and one
    /// final point beyond them belongs to no member.
    pub atom_points: Vec<BigRational>,
    /// Member `i` as a set of atoms.
    pub members: Vec<PointSet>,
    /// One certificate per distinct nonempty intersection of members,
    /// in canonical order of the configuration.
    pub certificates: Vec<BkCertificate>,
}

/// Build the line embedding of `family`.
pub fn bk_embed(family: &SetFamily) -> Result<BkEmbedding> {
    let m = family.len();
    if m == 0 {
        return Err(Error::Precondition(
            "cannot embed an empty family".into(),
        ));
    }
    if m > BK_FAMILY_CAP {
        return Err(Error::CapExceeded {
            what: "family embedding",
            needed: m,
            cap: BK_FAMILY_CAP,
        });
    }

    let mut signatures: Vec<u64> = Vec::new();
    for p in 0..family.universe() {
        let mut sig = 0u64;
        for (i, f) in family.iter().enumerate() {
            if f.contains(p) {
                sig |= 1 << i;
            }
        }
        if sig != 0 {
            signatures.push(sig);
        }
    }
    signatures.sort_unstable();
    signatures.dedup();
    let t = signatures.len();

    let mut members = vec![PointSet::empty(t); m];
    for (j, &sig) in signatures.iter().enumerate() {
        for (i, member) in members.iter_mut().enumerate() {
            if sig >> i & 1 == 1 {
                member.insert(j);
            }
        }
    }

    let mut configurations: std::collections::BTreeSet<PointSet> =
        std::collections::BTreeSet::new();
    for mask in 1u32..(1 << m) {
        let mut meet = PointSet::full(t);
        for (i, member) in members.iter().enumerate() {
            if mask >> i & 1 == 1 {
                meet.intersect_with(member);
                if meet.is_empty() {
                    break;
                }
            }
        }
        if !meet.is_empty() {
            configurations.insert(meet);
        }
    }

    let atom_points: Vec<BigRational> = (1..=t as i64 + 1).map(int).collect();
    let certificates = configurations
        .into_iter()
        .map(|configuration| {
            let inequalities = cut_out(&configuration, &atom_points);
            BkCertificate {
                configuration,
                inequalities,
            }
        })
        .collect();

    Ok(BkEmbedding {
        source_size: m,
        atom_signatures: signatures,
        atom_points,
        members,
        certificates,
    })
}

/// Inequalities whose solutions on the candidate line are exactly the
/// atoms of `config`: clamp x to the occupied range, keep y at zero
/// from below, and exclude each gap between consecutive atoms with the
/// parabola through its endpoints (degenerate when there is only one).
fn cut_out(config: &PointSet, atom_points: &[BigRational]) -> Vec<QuadIneq> {
    let picked: Vec<&BigRational> = config.iter().map(|j| &atom_points[j]).collect();
    let first = picked[0];
    let last = picked[picked.len() - 1];
    let mut out = Vec::with_capacity(picked.len() + 2);
    // x - first >= 0
    out.push(QuadIneq {
        cx: int(1),
        c0: -first.clone(),
        ..zero_quad()
    });
    // last - x >= 0
    out.push(QuadIneq {
        cx: int(-1),
        c0: last.clone(),
        ..zero_quad()
    });
    // y >= 0
    out.push(QuadIneq {
        cy: int(1),
        ..zero_quad()
    });
    // (x - a)(x - b) - y >= 0 over consecutive pairs; a single atom
    // pairs with itself, pinning y to zero at that x.
    let pairs: Vec<(&BigRational, &BigRational)> = if picked.len() == 1 {
        vec![(picked[0], picked[0])]
    } else {
        picked.windows(2).map(|w| (w[0], w[1])).collect()
    };
    for (a, b) in pairs {
        out.push(QuadIneq {
            cxx: int(1),
            cx: -(a + b),
            cy: int(-1),
            c0: a * b,
            ..zero_quad()
        });
    }
    out
}

/// Evaluate every certificate at every candidate point and demand that
/// the satisfied candidates are exactly the certified configuration.
pub fn verify_certificates(embedding: &BkEmbedding) -> Result<()> {
    let t = embedding.atom_points.len() - 1;
    let y = BigRational::zero();
    for cert in &embedding.certificates {
        if cert.configuration.is_empty() {
            return Err(Error::Verification(
                "certificate for an empty configuration".into(),
            ));
        }
        let mut satisfied = PointSet::empty(t);
        for (j, x) in embedding.atom_points.iter().enumerate() {
            if cert.inequalities.iter().all(|q| q.holds_at(x, &y)) {
                if j == t {
                    return Err(Error::Verification(
                        "the outside candidate satisfies a certificate".into(),
                    ));
                }
                satisfied.insert(j);
            }
        }
        if satisfied != cert.configuration {
            return Err(Error::Verification(format!(
                "certificate for {:?} cuts out {:?}",
                cert.configuration, satisfied
            )));
        }
    }
    Ok(())
}

/// Exhaustively confirm that every subfamily of the original family
/// has a common point exactly when the corresponding atom sets do.
pub fn verify_nerve_isomorphism(family: &SetFamily, embedding: &BkEmbedding) -> Result<()> {
    let m = family.len();
    if m != embedding.source_size || m != embedding.members.len() {
        return Err(Error::Verification(
            "embedding and family sizes disagree".into(),
        ));
    }
    let t = embedding.atom_points.len() - 1;
    for mask in 1u32..(1 << m) {
        let mut fam_meet = PointSet::full(family.universe());
        let mut atom_meet = PointSet::full(t);
        for i in 0..m {
            if mask >> i & 1 == 1 {
                fam_meet.intersect_with(&family.sets()[i]);
                atom_meet.intersect_with(&embedding.members[i]);
            }
        }
        if fam_meet.is_empty() != atom_meet.is_empty() {
            return Err(Error::Verification(format!(
                "subfamily {mask:#b} breaks the nerve: family side empty = {}, \
                 atom side empty = {}",
                fam_meet.is_empty(),
                atom_meet.is_empty()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_family() -> SetFamily {
        SetFamily::new(
            5,
            vec![
                PointSet::from_indices(5, &[0, 1]).unwrap(),
                PointSet::from_indices(5, &[1, 2]).unwrap(),
                PointSet::from_indices(5, &[3]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn atoms_collapse_equal_columns_and_drop_uncovered_points() {
        let embedding = bk_embed(&small_family()).unwrap();
        // Point 4 is in no member; the others have distinct signatures.
        assert_eq!(embedding.atom_signatures, vec![1, 2, 3, 4]);
        assert_eq!(embedding.atom_points.len(), 5);
        let members: Vec<Vec<usize>> =
            embedding.members.iter().map(|c| c.to_vec()).collect();
        assert_eq!(members, vec![vec![0, 2], vec![1, 2], vec![3]]);
    }

    #[test]
    fn certificates_cover_every_realized_intersection() {
        let embedding = bk_embed(&small_family()).unwrap();
        let configs: Vec<Vec<usize>> = embedding
            .certificates
            .iter()
            .map(|c| c.configuration.to_vec())
            .collect();
        // {2} = members 0 and 1 together, then the three members.
        assert_eq!(
            configs,
            vec![vec![2], vec![3], vec![0, 2], vec![1, 2]]
        );
        verify_certificates(&embedding).unwrap();
        verify_nerve_isomorphism(&small_family(), &embedding).unwrap();
    }

    #[test]
    fn gap_parabola_excludes_the_atom_between_two_others() {
        let embedding = bk_embed(&small_family()).unwrap();
        let cert = embedding
            .certificates
            .iter()
            .find(|c| c.configuration.to_vec() == vec![0, 2])
            .unwrap();
        // Bounds, floor, and one gap parabola.
        assert_eq!(cert.inequalities.len(), 4);
        let y = BigRational::zero();
        let at = |v: i64| {
            cert.inequalities
                .iter()
                .all(|q| q.holds_at(&BigRational::from_integer(BigInt::from(v)), &y))
        };
        assert!(at(1));
        assert!(!at(2));
        assert!(at(3));
        assert!(!at(4));
        assert!(!at(5));
    }

    #[test]
    fn single_atom_certificates_pin_both_coordinates() {
        let embedding = bk_embed(&small_family()).unwrap();
        let cert = embedding
            .certificates
            .iter()
            .find(|c| c.configuration.to_vec() == vec![3])
            .unwrap();
        assert_eq!(cert.inequalities.len(), 4);
        // Off the line the degenerate parabola fails.
        let x = BigRational::from_integer(BigInt::from(4));
        let up = BigRational::from_integer(BigInt::from(1));
        assert!(!cert.inequalities.iter().all(|q| q.holds_at(&x, &up)));
    }

    #[test]
    fn verifier_rejects_a_tampered_certificate() {
        let mut embedding = bk_embed(&small_family()).unwrap();
        embedding.certificates[0].inequalities[0].c0 += int(10);
        assert!(matches!(
            verify_certificates(&embedding),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn verifier_rejects_a_tampered_nerve() {
        let family = small_family();
        let mut embedding = bk_embed(&family).unwrap();
        // Claim member 2 also holds atom 0: the pair {0,2} suddenly
        // intersects on the atom side but not in the family.
        embedding.members[2].insert(0);
        assert!(matches!(
            verify_nerve_isomorphism(&family, &embedding),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn family_size_limits_are_enforced() {
        let too_big = SetFamily::new(2, vec![PointSet::empty(2); 21]).unwrap();
        assert!(matches!(bk_embed(&too_big), Err(Error::CapExceeded { .. })));
        let empty = SetFamily::new(2, vec![]).unwrap();
        assert!(matches!(bk_embed(&empty), Err(Error::Precondition(_))));
    }

    #[test]
    fn all_empty_members_embed_to_nothing() {
        let family = SetFamily::new(3, vec![PointSet::empty(3)]).unwrap();
        let embedding = bk_embed(&family).unwrap();
        assert!(embedding.atom_signatures.is_empty());
        assert_eq!(embedding.atom_points.len(), 1);
        assert!(embedding.certificates.is_empty());
        verify_certificates(&embedding).unwrap();
        verify_nerve_isomorphism(&family, &embedding).unwrap();
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn random_families_embed_and_verify(
            sets in proptest::collection::vec(0u8..=63, 1..6),
        ) {
            let family = SetFamily::new(
                6,
                sets.iter()
                    .map(|&mask| {
                        let idx: Vec<usize> =
                            (0..6).filter(|i| mask >> i & 1 == 1).collect();
                        PointSet::from_indices(6, &idx).unwrap()
                    })
                    .collect(),
            )
            .unwrap();
            let embedding = bk_embed(&family).unwrap();
            verify_certificates(&embedding).unwrap();
            verify_nerve_isomorphism(&family, &embedding).unwrap();
        }
    }
}
