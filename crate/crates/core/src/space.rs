//! Finite convexity spaces: a ground set together with a hull operator.
//!
//! A space is always queried through its hull oracle. Convex sets are the
//! hull-closed subsets; halfspaces are convex sets with convex complement.
//! Enumeration of the convex family walks the closed sets directly
//! (next-closure) instead of filtering all 2^n subsets, and is refused
//! above a configurable ground-size cap.
//!
//! # Invariants
//!
//! - `hull` is extensive, monotone and idempotent for every kind of
//!   space constructed here (checked by `check_axioms` and the tests)
//! - enumerated families are duplicate-free and canonically sorted
//! - the halfspace list is closed under complementation and contains
//!   the empty set and the whole ground set whenever the space is
//!   enumerable at all

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::pointset::{subsets_canonical, PointSet};
use crate::simplex::convex_combination_feasible;

/// Default ceiling on ground sizes for full convex-family enumeration.
pub const DEFAULT_ENUM_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct GroundPoint {
    pub coords: Option<Vec<BigRational>>,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    /// Axis-aligned box convexity on a grid `{0..side-1}^dim`.
    Box { dim: usize, side: usize },
    /// Trace of ordinary convexity on the integer grid `{0..side-1}^dim`.
    Lattice { dim: usize, side: usize },
    /// Convexity given by an explicit list of convex sets.
    Explicit,
}

pub struct ConvexitySpace {
    kind: SpaceKind,
    ground: Vec<GroundPoint>,
    /// For explicit spaces: the stored family, exactly as constructed.
    /// Ingestion through `make_explicit_space` closes the input under
    /// intersection; the raw constructor stores what it is given so that
    /// axiom checking can catch corrupted families.
    explicit_family: Option<Vec<PointSet>>,
    enum_cap: usize,
    hull_memo: Mutex<HashMap<PointSet, PointSet>>,
    convex_cache: OnceLock<Vec<PointSet>>,
    halfspace_cache: OnceLock<Vec<Halfspace>>,
}

impl std::fmt::Debug for ConvexitySpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConvexitySpace")
            .field("kind", &self.kind)
            .field("ground", &self.ground.len())
            .finish_non_exhaustive()
    }
}

/// A convex set whose complement is also convex. Both sides are stored;
/// `complement` is always the exact set complement of `gamma`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    gamma: PointSet,
    complement: PointSet,
}

impl Halfspace {
    pub fn new(space: &ConvexitySpace, gamma: PointSet) -> Result<Halfspace> {
        let complement = gamma.complement();
        if !space.is_convex(&gamma)? {
            return Err(Error::Precondition("halfspace side is not convex".into()));
        }
        if !space.is_convex(&complement)? {
            return Err(Error::Precondition(
                "halfspace complement is not convex".into(),
            ));
        }
        Ok(Halfspace { gamma, complement })
    }

    pub fn gamma(&self) -> &PointSet {
        &self.gamma
    }

    pub fn complement(&self) -> &PointSet {
        &self.complement
    }

    pub fn contains(&self, index: usize) -> bool {
        self.gamma.contains(index)
    }

    /// Rebuilds a halfspace from a stored side without convexity checks.
    /// Only for deserialization; route the result through a verifying
    /// consumer before trusting it.
    pub fn from_gamma_unchecked(gamma: PointSet) -> Halfspace {
        let complement = gamma.complement();
        Halfspace { gamma, complement }
    }
}

impl std::fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Halfspace({:?} | {:?})", self.gamma, self.complement)
    }
}

/// Fixed note attached to the nested-union axiom in audit reports.
pub const NESTED_UNIONS_NOTE: &str = "vacuous on a finite ground set";

#[derive(Clone, Debug)]
pub struct Check {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Check {
            pass: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        Check {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Outcome of auditing a space against the convexity axioms and the
/// three hull laws. The nested-union axiom is vacuous on finite ground
/// sets and is recorded as such rather than tested.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub empty_and_ground_convex: Check,
    pub intersection_closed: Check,
    pub hull_extensive: Check,
    pub hull_monotone: Check,
    pub hull_idempotent: Check,
    pub nested_unions: &'static str,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.empty_and_ground_convex.pass
            && self.intersection_closed.pass
            && self.hull_extensive.pass
            && self.hull_monotone.pass
            && self.hull_idempotent.pass
    }
}

#[derive(Clone, Debug)]
pub struct SeparabilityReport {
    pub separable: bool,
    /// First failing pair (convex set, outside point) in canonical order.
    pub failure: Option<(PointSet, usize)>,
}

impl ConvexitySpace {
    pub(crate) fn new(
        kind: SpaceKind,
        ground: Vec<GroundPoint>,
        explicit_family: Option<Vec<PointSet>>,
    ) -> Self {
        ConvexitySpace {
            kind,
            ground,
            explicit_family,
            enum_cap: DEFAULT_ENUM_CAP,
            hull_memo: Mutex::new(HashMap::new()),
            convex_cache: OnceLock::new(),
            halfspace_cache: OnceLock::new(),
        }
    }

    pub fn with_enum_cap(mut self, cap: usize) -> Self {
        self.enum_cap = cap;
        self
    }

    /// Largest ground size this space will spend exhaustive-search time
    /// on; shared by convex-set enumeration and the subset searches in
    /// the invariant routines.
    pub fn enum_cap(&self) -> usize {
        self.enum_cap
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn point(&self, index: usize) -> &GroundPoint {
        &self.ground[index]
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Stored family for explicit spaces (None for oracle-backed kinds).
    pub fn explicit_family(&self) -> Option<&[PointSet]> {
        self.explicit_family.as_deref()
    }

    /// Ground index of the grid point with the given integer coordinates.
    pub fn index_of_coords(&self, coords: &[i64]) -> Option<usize> {
        let (dim, side) = match self.kind {
            SpaceKind::Box { dim, side } | SpaceKind::Lattice { dim, side } => (dim, side),
            SpaceKind::Explicit => return None,
        };
        if coords.len() != dim {
            return None;
        }
        let mut idx = 0usize;
        for &c in coords {
            if c < 0 || c as usize >= side {
                return None;
            }
            idx = idx * side + c as usize;
        }
        Some(idx)
    }

    fn check_set(&self, s: &PointSet) -> Result<()> {
        if s.universe() != self.len() {
            return Err(Error::UniverseMismatch {
                left: s.universe(),
                right: self.len(),
            });
        }
        Ok(())
    }

    /// Smallest convex set containing `y`.
    pub fn hull(&self, y: &PointSet) -> Result<PointSet> {
        self.check_set(y)?;
        if let Some(h) = self.hull_memo.lock().unwrap().get(y) {
            return Ok(h.clone());
        }
        let h = self.compute_hull(y)?;
        self.hull_memo
            .lock()
            .unwrap()
            .insert(y.clone(), h.clone());
        Ok(h)
    }

    fn compute_hull(&self, y: &PointSet) -> Result<PointSet> {
        match &self.kind {
            SpaceKind::Box { dim, .. } => {
                if y.is_empty() {
                    return Ok(self.empty_set());
                }
                let (lo, hi) = self.coord_bounds(y, *dim);
                let mut out = self.empty_set();
                for i in 0..self.len() {
                    if self.in_coord_box(i, &lo, &hi) {
                        out.insert(i);
                    }
                }
                Ok(out)
            }
            SpaceKind::Lattice { dim, .. } => {
                if y.is_empty() {
                    return Ok(self.empty_set());
                }
                let (lo, hi) = self.coord_bounds(y, *dim);
                // In one dimension the hull is exactly the coordinate
                // interval; in two it is decided by orientation tests
                // against the hull polygon, which is much cheaper than a
                // feasibility solve per candidate. Higher dimensions fall
                // back to the exact solver.
                if *dim == 1 {
                    let mut out = self.empty_set();
                    for i in 0..self.len() {
                        if self.in_coord_box(i, &lo, &hi) {
                            out.insert(i);
                        }
                    }
                    return Ok(out);
                }
                if *dim == 2 {
                    // Grid coordinates are machine-size integers, so
                    // orientation tests in i64 decide membership exactly
                    // without touching the rational allocator on this
                    // hot path; oversized coordinates fall back to the
                    // rational polygon below.
                    let int_coords: Option<Vec<(i64, i64)>> = (0..self.len())
                        .map(|i| {
                            let c = self.ground[i].coords.as_ref().expect("coords");
                            Some((coord_to_i64(&c[0])?, coord_to_i64(&c[1])?))
                        })
                        .collect();
                    if let Some(coords) = int_coords {
                        let vertices = hull_polygon_i64(y.iter().map(|i| coords[i]).collect());
                        let mut out = self.empty_set();
                        for i in 0..self.len() {
                            if y.contains(i)
                                || (self.in_coord_box(i, &lo, &hi)
                                    && polygon_contains_i64(&vertices, coords[i]))
                            {
                                out.insert(i);
                            }
                        }
                        return Ok(out);
                    }
                    let vertices = hull_polygon(
                        y.iter()
                            .map(|i| {
                                let c = self.ground[i].coords.as_ref().expect("coords");
                                (c[0].clone(), c[1].clone())
                            })
                            .collect(),
                    );
                    let mut out = self.empty_set();
                    for i in 0..self.len() {
                        if y.contains(i) {
                            out.insert(i);
                            continue;
                        }
                        if !self.in_coord_box(i, &lo, &hi) {
                            continue;
                        }
                        let c = self.ground[i].coords.as_ref().expect("coords");
                        if polygon_contains(&vertices, &(c[0].clone(), c[1].clone())) {
                            out.insert(i);
                        }
                    }
                    return Ok(out);
                }
                let generators: Vec<Vec<BigRational>> = y
                    .iter()
                    .map(|i| self.ground[i].coords.clone().expect("lattice point coords"))
                    .collect();
                let mut out = self.empty_set();
                for i in 0..self.len() {
                    if y.contains(i) {
                        out.insert(i);
                        continue;
                    }
                    // Cheap reject: outside the bounding box means outside
                    // the hull; otherwise decide exactly.
                    if !self.in_coord_box(i, &lo, &hi) {
                        continue;
                    }
                    let target = self.ground[i].coords.as_ref().expect("coords");
                    if convex_combination_feasible(&generators, target)? {
                        out.insert(i);
                    }
                }
                Ok(out)
            }
            SpaceKind::Explicit => {
                let family = self.explicit_family.as_ref().expect("explicit family");
                let mut acc = self.full_set();
                for c in family {
                    if y.is_subset_of(c) {
                        acc.intersect_with(c);
                    }
                }
                Ok(acc)
            }
        }
    }

    fn coord_bounds(&self, y: &PointSet, dim: usize) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut lo: Option<Vec<BigRational>> = None;
        let mut hi: Option<Vec<BigRational>> = None;
        for i in y.iter() {
            let c = self.ground[i].coords.as_ref().expect("coords");
            match (&mut lo, &mut hi) {
                (Some(lo), Some(hi)) => {
                    for d in 0..dim {
                        if c[d] < lo[d] {
                            lo[d] = c[d].clone();
                        }
                        if c[d] > hi[d] {
                            hi[d] = c[d].clone();
                        }
                    }
                }
                _ => {
                    lo = Some(c.clone());
                    hi = Some(c.clone());
                }
            }
        }
        (lo.expect("nonempty"), hi.expect("nonempty"))
    }

    fn in_coord_box(&self, index: usize, lo: &[BigRational], hi: &[BigRational]) -> bool {
        let c = self.ground[index].coords.as_ref().expect("coords");
        c.iter()
            .zip(lo.iter().zip(hi))
            .all(|(v, (l, h))| v >= l && v <= h)
    }

    pub fn is_convex(&self, s: &PointSet) -> Result<bool> {
        Ok(self.hull(s)? == *s)
    }

    /// The raw list the space claims as its convex family: the stored
    /// list for explicit spaces, the enumerated closed sets otherwise.
    /// Axiom checking compares this list against the hull oracle.
    fn claimed_family(&self) -> Result<Vec<PointSet>> {
        match &self.explicit_family {
            Some(f) => Ok(f.clone()),
            None => Ok(self.enumerate_convex_sets()?.to_vec()),
        }
    }

    /// All hull-closed subsets, canonically sorted. Uses next-closure,
    /// so the cost is proportional to the number of closed sets rather
    /// than to 2^n, but still refuses ground sets above the cap.
    pub fn enumerate_convex_sets(&self) -> Result<&[PointSet]> {
        if let Some(v) = self.convex_cache.get() {
            return Ok(v);
        }
        if self.explicit_family.is_none() && self.len() > self.enum_cap {
            return Err(Error::CapExceeded {
                what: "convex family enumeration",
                needed: self.len(),
                cap: self.enum_cap,
            });
        }
        let mut closed = Vec::new();
        let mut current = self.hull(&self.empty_set())?;
        loop {
            closed.push(current.clone());
            match self.next_closed(&current)? {
                Some(next) => current = next,
                None => break,
            }
        }
        // For explicit spaces the stored family may contain sets that the
        // oracle also produces; the closed-set walk is already complete
        // and duplicate-free, so it is the canonical answer either way.
        closed.sort();
        closed.dedup();
        Ok(self.convex_cache.get_or_init(|| closed))
    }

    /// Next closed set after `a` in lectic order, if any.
    fn next_closed(&self, a: &PointSet) -> Result<Option<PointSet>> {
        let n = self.len();
        let mut a = a.clone();
        for i in (0..n).rev() {
            if a.contains(i) {
                a.remove(i);
            } else {
                let mut probe = a.clone();
                probe.insert(i);
                let closed = probe_closed(self, &probe)?;
                let new_below_i = closed.iter().take_while(|&j| j < i).any(|j| !a.contains(j));
                if !new_below_i {
                    return Ok(Some(closed));
                }
            }
        }
        Ok(None)
    }

    /// All halfspaces in canonical order. A halfspace is a convex set
    /// whose complement is convex, so the list is computed by filtering
    /// the enumerated family against itself.
    pub fn enumerate_halfspaces(&self) -> Result<&[Halfspace]> {
        if let Some(v) = self.halfspace_cache.get() {
            return Ok(v);
        }
        let family = self.enumerate_convex_sets()?;
        let lookup: std::collections::HashSet<&PointSet> = family.iter().collect();
        let mut out = Vec::new();
        for c in family {
            let comp = c.complement();
            if lookup.contains(&comp) {
                out.push(Halfspace {
                    gamma: c.clone(),
                    complement: comp,
                });
            }
        }
        Ok(self.halfspace_cache.get_or_init(|| out))
    }

    /// First halfspace (canonical order) containing all of `s` with `x`
    /// on the other side; `None` when no halfspace separates the pair.
    pub fn separate(&self, s: &PointSet, x: usize) -> Result<Option<Halfspace>> {
        self.check_set(s)?;
        if x >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: x,
                universe: self.len(),
            });
        }
        if s.contains(x) {
            return Err(Error::Precondition(
                "cannot separate a set from one of its own points".into(),
            ));
        }
        if !self.is_convex(s)? {
            return Err(Error::Precondition(
                "separation is only defined for convex sets".into(),
            ));
        }
        for h in self.enumerate_halfspaces()? {
            if h.complement.contains(x) && s.is_subset_of(&h.gamma) {
                return Ok(Some(h.clone()));
            }
        }
        Ok(None)
    }

    /// Whether every (convex set, outside point) pair is split by some
    /// halfspace. The first failing pair in canonical order is reported.
    pub fn is_separable(&self) -> Result<SeparabilityReport> {
        let family = self.enumerate_convex_sets()?.to_vec();
        let halfspaces = self.enumerate_halfspaces()?;
        // Halfspaces whose complement holds x, indexed by x.
        let mut by_outside: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (hi, h) in halfspaces.iter().enumerate() {
            for x in h.complement.iter() {
                by_outside[x].push(hi);
            }
        }
        for s in &family {
            for x in 0..self.len() {
                if s.contains(x) {
                    continue;
                }
                let found = by_outside[x]
                    .iter()
                    .any(|&hi| s.is_subset_of(&halfspaces[hi].gamma));
                if !found {
                    return Ok(SeparabilityReport {
                        separable: false,
                        failure: Some((s.clone(), x)),
                    });
                }
            }
        }
        Ok(SeparabilityReport {
            separable: true,
            failure: None,
        })
    }

    /// Audit the space: membership of the empty set and the ground set,
    /// closure of the claimed family under pairwise intersection, and
    /// the three hull laws. Law checks are exhaustive on small grounds
    /// and deterministically sampled above that.
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        let n = self.len();
        let claimed = self.claimed_family()?;
        let lookup: std::collections::HashSet<&PointSet> = claimed.iter().collect();

        let empty = self.empty_set();
        let full = self.full_set();
        let empty_and_ground_convex = if !lookup.contains(&empty) {
            Check::fail("empty set missing from the family".into())
        } else if !lookup.contains(&full) {
            Check::fail("ground set missing from the family".into())
        } else {
            Check::pass()
        };

        let mut intersection_closed = Check::pass();
        'outer: for (i, a) in claimed.iter().enumerate() {
            for b in claimed.iter().skip(i + 1) {
                let meet = a.intersection(b);
                if !lookup.contains(&meet) {
                    intersection_closed = Check::fail(format!(
                        "{:?} and {:?} meet in {:?}, which is missing",
                        a, b, meet
                    ));
                    break 'outer;
                }
            }
        }

        let samples = self.law_sample_sets(n);
        let mut hull_extensive = Check::pass();
        let mut hull_idempotent = Check::pass();
        for y in &samples {
            let h = self.hull(y)?;
            if !y.is_subset_of(&h) {
                hull_extensive = Check::fail(format!("hull({:?}) = {:?} loses points", y, h));
                break;
            }
            if self.hull(&h)? != h {
                hull_idempotent = Check::fail(format!("hull({:?}) = {:?} is not closed", y, h));
                break;
            }
        }

        let mut hull_monotone = Check::pass();
        'mono: for z in &samples {
            for y in self.law_sample_subsets_of(z) {
                if !self.hull(&y)?.is_subset_of(&self.hull(z)?) {
                    hull_monotone =
                        Check::fail(format!("hull({:?}) not inside hull({:?})", y, z));
                    break 'mono;
                }
            }
        }

        Ok(AxiomReport {
            empty_and_ground_convex,
            intersection_closed,
            hull_extensive,
            hull_monotone,
            hull_idempotent,
            nested_unions: NESTED_UNIONS_NOTE,
        })
    }

    /// Subsets the law checks run over: everything up to 12 points,
    /// a fixed-seed sample beyond that.
    fn law_sample_sets(&self, n: usize) -> Vec<PointSet> {
        if n <= 12 {
            subsets_canonical(&self.full_set())
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut out = Vec::with_capacity(512);
            out.push(self.empty_set());
            out.push(self.full_set());
            for _ in 0..510 {
                let mut s = self.empty_set();
                for i in 0..n {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if state >> 33 & 1 == 1 {
                        s.insert(i);
                    }
                }
                out.push(s);
            }
            out
        }
    }

    fn law_sample_subsets_of(&self, z: &PointSet) -> Vec<PointSet> {
        if z.len() <= 10 {
            subsets_canonical(z)
        } else {
            let members = z.to_vec();
            let mut state = members.len() as u64 ^ 0xd1b54a32d192ed03;
            let mut out = Vec::with_capacity(64);
            for _ in 0..64 {
                let mut s = PointSet::empty(z.universe());
                for &i in &members {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if state >> 33 & 1 == 1 {
                        s.insert(i);
                    }
                }
                out.push(s);
            }
            out
        }
    }
}

fn probe_closed(space: &ConvexitySpace, probe: &PointSet) -> Result<PointSet> {
    space.hull(probe)
}

type Pt2 = (BigRational, BigRational);

fn cross(o: &Pt2, a: &Pt2, b: &Pt2) -> BigRational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Convex hull of planar points, counter-clockwise, no repeated or
/// collinear vertices (monotone chain). Degenerate inputs yield one or
/// two vertices.
fn hull_polygon(mut pts: Vec<Pt2>) -> Vec<Pt2> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Pt2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p)
                <= BigRational::default()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Pt2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p)
                <= BigRational::default()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_contains(vertices: &[Pt2], p: &Pt2) -> bool {
    let zero = BigRational::default();
    match vertices.len() {
        0 => false,
        1 => vertices[0] == *p,
        2 => {
            let (a, b) = (&vertices[0], &vertices[1]);
            if cross(a, b, p) != zero {
                return false;
            }
            let dx = &b.0 - &a.0;
            let dy = &b.1 - &a.1;
            let t = (&p.0 - &a.0) * &dx + (&p.1 - &a.1) * &dy;
            t >= zero && t <= &dx * &dx + &dy * &dy
        }
        n => (0..n).all(|i| cross(&vertices[i], &vertices[(i + 1) % n], p) >= zero),
    }
}

fn coord_to_i64(r: &BigRational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer()).and_then(|z| z.to_i64())
}

fn cross_i64(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// `hull_polygon` on machine integers; same monotone chain, same
/// degenerate-input contract.
fn hull_polygon_i64(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross_i64(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross_i64(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_contains_i64(vertices: &[(i64, i64)], p: (i64, i64)) -> bool {
    match vertices.len() {
        0 => false,
        1 => vertices[0] == p,
        2 => {
            let (a, b) = (vertices[0], vertices[1]);
            if cross_i64(a, b, p) != 0 {
                return false;
            }
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let t = (p.0 - a.0) * dx + (p.1 - a.1) * dy;
            t >= 0 && t <= dx * dx + dy * dy
        }
        n => (0..n).all(|i| cross_i64(vertices[i], vertices[(i + 1) % n], p) >= 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{make_box_space, make_explicit_space, make_lattice_space};
    use crate::family::SetFamily;
    use proptest::prelude::*;

    fn set(space: &ConvexitySpace, idx: &[usize]) -> PointSet {
        PointSet::from_indices(space.len(), idx).unwrap()
    }

    #[test]
    fn box_hull_on_a_grid_is_the_bounding_box() {
        let s = make_box_space(2, 3).unwrap();
        // (0,0) and (1,2) span the six points with x <= 1.
        let a = s.index_of_coords(&[0, 0]).unwrap();
        let b = s.index_of_coords(&[1, 2]).unwrap();
        let hull = s.hull(&set(&s, &[a, b])).unwrap();
        assert_eq!(hull.len(), 6);
        for x in 0..2i64 {
            for y in 0..3i64 {
                assert!(hull.contains(s.index_of_coords(&[x, y]).unwrap()));
            }
        }
    }

    #[test]
    fn hull_of_empty_set_is_empty() {
        let s = make_box_space(2, 3).unwrap();
        assert!(s.hull(&s.empty_set()).unwrap().is_empty());
        let l = make_lattice_space(2, 3).unwrap();
        assert!(l.hull(&l.empty_set()).unwrap().is_empty());
    }

    #[test]
    fn lattice_hull_of_a_diagonal_collects_lattice_points_on_the_segment() {
        let s = make_lattice_space(2, 4).unwrap();
        let a = s.index_of_coords(&[0, 0]).unwrap();
        let b = s.index_of_coords(&[2, 2]).unwrap();
        let hull = s.hull(&set(&s, &[a, b])).unwrap();
        let expected = set(
            &s,
            &[
                a,
                s.index_of_coords(&[1, 1]).unwrap(),
                b,
            ],
        );
        assert_eq!(hull, expected);
    }

    #[test]
    fn lattice_hull_of_short_diagonal_adds_nothing() {
        let s = make_lattice_space(2, 2).unwrap();
        let a = s.index_of_coords(&[0, 0]).unwrap();
        let b = s.index_of_coords(&[1, 1]).unwrap();
        let hull = s.hull(&set(&s, &[a, b])).unwrap();
        assert_eq!(hull, set(&s, &[a, b]));
    }

    #[test]
    fn lattice_triangle_hull_has_six_points() {
        let s = make_lattice_space(2, 3).unwrap();
        let y = set(
            &s,
            &[
                s.index_of_coords(&[0, 0]).unwrap(),
                s.index_of_coords(&[2, 0]).unwrap(),
                s.index_of_coords(&[0, 2]).unwrap(),
            ],
        );
        let hull = s.hull(&y).unwrap();
        assert_eq!(hull.len(), 6);
        assert!(hull.contains(s.index_of_coords(&[1, 1]).unwrap()));
        assert!(!hull.contains(s.index_of_coords(&[2, 2]).unwrap()));
    }

    #[test]
    fn chain_convex_sets_are_the_intervals() {
        let s = make_box_space(1, 3).unwrap();
        let family = s.enumerate_convex_sets().unwrap();
        // Empty set plus the six intervals of a 3-chain.
        assert_eq!(family.len(), 7);
    }

    #[test]
    fn every_subset_of_the_unit_square_lattice_is_convex() {
        let s = make_lattice_space(2, 2).unwrap();
        assert_eq!(s.enumerate_convex_sets().unwrap().len(), 16);
    }

    #[test]
    fn enumeration_agrees_with_brute_force_filter() {
        for space in [
            make_box_space(2, 3).unwrap(),
            make_lattice_space(2, 3).unwrap(),
        ] {
            let enumerated: Vec<PointSet> = space.enumerate_convex_sets().unwrap().to_vec();
            let mut brute = Vec::new();
            for cand in subsets_canonical(&space.full_set()) {
                if space.is_convex(&cand).unwrap() {
                    brute.push(cand);
                }
            }
            brute.sort();
            assert_eq!(enumerated, brute);
        }
    }

    #[test]
    fn chain_halfspaces_are_prefixes_and_suffixes() {
        let s = make_box_space(1, 3).unwrap();
        let hs = s.enumerate_halfspaces().unwrap();
        let gammas: Vec<Vec<usize>> = hs.iter().map(|h| h.gamma().to_vec()).collect();
        assert_eq!(
            gammas,
            vec![
                vec![],
                vec![0],
                vec![2],
                vec![0, 1],
                vec![1, 2],
                vec![0, 1, 2],
            ]
        );
    }

    #[test]
    fn unit_square_box_halfspaces_are_the_four_edges_plus_trivial() {
        // The four edge lines are mutually complementary, so the list has
        // six entries, not ten: singletons fail because three corners
        // never form a box.
        let s = make_box_space(2, 2).unwrap();
        let hs = s.enumerate_halfspaces().unwrap();
        assert_eq!(hs.len(), 6);
        for h in hs {
            assert!(s.is_convex(h.gamma()).unwrap());
            assert!(s.is_convex(h.complement()).unwrap());
        }
    }

    #[test]
    fn separation_picks_the_canonical_halfspace() {
        let s = make_box_space(2, 3).unwrap();
        let low_square = set(
            &s,
            &[
                s.index_of_coords(&[0, 0]).unwrap(),
                s.index_of_coords(&[0, 1]).unwrap(),
                s.index_of_coords(&[1, 0]).unwrap(),
                s.index_of_coords(&[1, 1]).unwrap(),
            ],
        );
        let x = s.index_of_coords(&[2, 0]).unwrap();
        let h = s.separate(&low_square, x).unwrap().unwrap();
        // The x <= 1 slab is the only halfspace with (2,0) outside.
        let expected: Vec<usize> = (0..2)
            .flat_map(|cx| (0..3).map(move |cy| (cx, cy)))
            .map(|(cx, cy)| s.index_of_coords(&[cx, cy]).unwrap())
            .collect();
        assert_eq!(h.gamma().to_vec(), expected);
    }

    #[test]
    fn separating_from_the_empty_set_returns_the_empty_halfspace() {
        let s = make_box_space(1, 3).unwrap();
        let h = s.separate(&s.empty_set(), 1).unwrap().unwrap();
        assert!(h.gamma().is_empty());
    }

    #[test]
    fn separate_rejects_points_inside_the_set() {
        let s = make_box_space(1, 3).unwrap();
        let err = s.separate(&set(&s, &[1]), 1);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn grid_spaces_are_separable() {
        for space in [
            make_box_space(2, 3).unwrap(),
            make_lattice_space(2, 3).unwrap(),
        ] {
            assert!(space.is_separable().unwrap().separable);
        }
    }

    #[test]
    fn a_space_without_enough_halfspaces_is_not_separable() {
        // After closure the family is {∅, {1}, {0,1}, {1,2}, X}; the only
        // halfspaces are ∅ and X, so {1} cannot be split from point 0.
        let family = SetFamily::new(
            3,
            vec![
                PointSet::from_indices(3, &[0, 1]).unwrap(),
                PointSet::from_indices(3, &[1, 2]).unwrap(),
            ],
        )
        .unwrap();
        let s = make_explicit_space(3, &family).unwrap();
        let report = s.is_separable().unwrap();
        assert!(!report.separable);
        let (witness_set, witness_point) = report.failure.unwrap();
        assert_eq!(witness_set.to_vec(), vec![1]);
        assert_eq!(witness_point, 0);
        assert!(s.separate(&witness_set, witness_point).unwrap().is_none());
    }

    #[test]
    fn axiom_audit_passes_on_builtins_and_closed_explicit() {
        let family = SetFamily::new(
            3,
            vec![
                PointSet::from_indices(3, &[0]).unwrap(),
                PointSet::from_indices(3, &[1]).unwrap(),
            ],
        )
        .unwrap();
        for space in [
            make_box_space(2, 2).unwrap(),
            make_lattice_space(2, 2).unwrap(),
            make_explicit_space(3, &family).unwrap(),
        ] {
            let report = space.check_axioms().unwrap();
            assert!(report.all_pass(), "{report:?}");
        }
    }

    #[test]
    fn axiom_audit_flags_a_family_missing_the_ground_set() {
        let space = crate::builtins::explicit_space_unchecked(
            3,
            vec![
                PointSet::empty(3),
                PointSet::from_indices(3, &[0]).unwrap(),
            ],
        );
        let report = space.check_axioms().unwrap();
        assert!(!report.empty_and_ground_convex.pass);
        assert!(report.empty_and_ground_convex.witness.is_some());
    }

    #[test]
    fn axiom_audit_flags_a_family_missing_an_intersection() {
        let space = crate::builtins::explicit_space_unchecked(
            3,
            vec![
                PointSet::empty(3),
                PointSet::full(3),
                PointSet::from_indices(3, &[0, 1]).unwrap(),
                PointSet::from_indices(3, &[1, 2]).unwrap(),
            ],
        );
        let report = space.check_axioms().unwrap();
        assert!(!report.intersection_closed.pass);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let s = make_box_space(1, 9).unwrap().with_enum_cap(8);
        assert!(matches!(
            s.enumerate_convex_sets(),
            Err(Error::CapExceeded { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hull_laws_hold_on_grid_spaces(
            kind in 0..2usize,
            ys in proptest::collection::vec(0usize..9, 0..6),
            zs in proptest::collection::vec(0usize..9, 0..6),
        ) {
            let space = if kind == 0 {
                make_box_space(2, 3).unwrap()
            } else {
                make_lattice_space(2, 3).unwrap()
            };
            let y = PointSet::from_indices(9, &ys).unwrap();
            let mut zall: Vec<usize> = ys.clone();
            zall.extend(zs);
            let z = PointSet::from_indices(9, &zall).unwrap();

            let hy = space.hull(&y).unwrap();
            prop_assert!(y.is_subset_of(&hy), "extensive");
            prop_assert_eq!(space.hull(&hy).unwrap(), hy.clone(), "idempotent");
            prop_assert!(hy.is_subset_of(&space.hull(&z).unwrap()), "monotone");

            // The oracle agrees with the family semantics: the hull is the
            // meet of all enumerated convex sets containing y.
            let mut meet = space.full_set();
            for c in space.enumerate_convex_sets().unwrap() {
                if y.is_subset_of(c) {
                    meet.intersect_with(c);
                }
            }
            prop_assert_eq!(hy, meet);
        }

        #[test]
        fn planar_lattice_hull_matches_the_feasibility_solver(
            ys in proptest::collection::vec(0usize..16, 1..7),
        ) {
            // The orientation-test fast path and the exact solver must
            // agree point for point.
            let space = make_lattice_space(2, 4).unwrap();
            let y = PointSet::from_indices(16, &ys).unwrap();
            let fast = space.hull(&y).unwrap();
            let generators: Vec<Vec<num_rational::BigRational>> = y
                .iter()
                .map(|i| space.point(i).coords.clone().unwrap())
                .collect();
            for i in 0..16 {
                let target = space.point(i).coords.as_ref().unwrap();
                let slow = crate::simplex::convex_combination_feasible(&generators, target)
                    .unwrap();
                prop_assert_eq!(fast.contains(i), slow, "point {}", i);
            }
        }
    }
}
