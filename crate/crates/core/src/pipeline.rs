//! Separation pipeline: weight-driven halfspace splits and the staged
//! refinement that either finds a large tuple with a common point or
//! drives a family of labeled edges into a fully separated state.
//!
//! # Invariants
//!
//! - Every search in this module is deterministic: vertex subsets are
//!   scanned in lexicographic order, halfspaces and ground points in
//!   canonical order, and ties always resolve to the smallest index.
//! - `large_separated_pairs` only trusts its `r` argument; when `r` is
//!   at least the Radon number of the space the heavy-hull core is
//!   provably nonempty, and an empty core reports `Error::Hypothesis`
//!   rather than panicking.
//! - Producers and verifiers are separated: `verify_separated_pair` and
//!   `verify_colorful_outcome` recompute every claim from the original
//!   inputs and never reuse intermediate producer state.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::hypergraph::{find_complete_subhypergraph_sized, PartiteShape};
use crate::invariants::radon_number;
use crate::pointset::{k_subsets_lex, PointSet};
use crate::space::{ConvexitySpace, Halfspace};

/// A named map from an edge universe `0..len` into the ground set of a
/// convexity space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledFunction {
    pub label: String,
    values: Vec<usize>,
}

impl LabeledFunction {
    /// `values[e]` is the ground point assigned to edge `e`; every value
    /// must lie below `ground_size`.
    pub fn new(label: impl Into<String>, values: Vec<usize>, ground_size: usize) -> Result<Self> {
        for &v in &values {
            if v >= ground_size {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    universe: ground_size,
                });
            }
        }
        Ok(LabeledFunction {
            label: label.into(),
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, edge: usize) -> usize {
        self.values[edge]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Outcome of one weight-driven split: function `i` has its whole image
/// hull inside `gamma`, function `j` sends the `retained` edges (at
/// least a `1/(r-1)` fraction of the domain) into the complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedPair {
    pub i: usize,
    pub j: usize,
    pub x0: usize,
    pub gamma: Halfspace,
    pub retained: PointSet,
}

fn function_preconditions(
    space: &ConvexitySpace,
    functions: &[LabeledFunction],
) -> Result<(usize, usize)> {
    if functions.len() < 2 {
        return Err(Error::Precondition(
            "need at least two labeled functions".into(),
        ));
    }
    let domain = functions[0].len();
    if domain == 0 {
        return Err(Error::Precondition("empty edge domain".into()));
    }
    for f in functions {
        if f.len() != domain {
            return Err(Error::SizeMismatch(format!(
                "function domains differ: {} vs {}",
                domain,
                f.len()
            )));
        }
        for &v in f.values() {
            if v >= space.len() {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    universe: space.len(),
                });
            }
        }
    }
    Ok((functions.len(), domain))
}

/// Splits a system of labeled functions along a halfspace.
///
/// Weights count, per ground point, how many (function, edge) pairs map
/// onto it; a convex set is heavy when it carries strictly more than a
/// `(r-2)/(r-1)` fraction of the total weight.  The intersection of all
/// heavy convex sets is nonempty whenever `r` is at least the Radon
/// number of the space; its smallest point is the pivot that some
/// function hull must avoid, and separating that hull from the pivot
/// yields the output halfspace.
pub fn large_separated_pairs(
    space: &ConvexitySpace,
    functions: &[LabeledFunction],
    r: usize,
) -> Result<SeparatedPair> {
    if r < 2 {
        return Err(Error::Precondition("split parameter r must be >= 2".into()));
    }
    let (m, domain) = function_preconditions(space, functions)?;
    let total = m * domain;

    let mut weight = vec![0usize; space.len()];
    for f in functions {
        for &v in f.values() {
            weight[v] += 1;
        }
    }

    // Heavy test by cross-multiplication keeps everything in integers:
    // w/total > (r-2)/(r-1)  <=>  w*(r-1) > total*(r-2).
    let mut core = PointSet::full(space.len());
    for c in space.enumerate_convex_sets()? {
        let w: usize = c.iter().map(|p| weight[p]).sum();
        if w * (r - 1) > total * (r - 2) {
            core.intersect_with(c);
        }
    }
    let x0 = match core.min_index() {
        Some(x0) => x0,
        None => {
            return Err(Error::Hypothesis(format!(
                "heavy convex sets have empty intersection; r = {r} is below \
                 the Radon number of this space"
            )));
        }
    };

    let hulls: Vec<PointSet> = functions
        .iter()
        .map(|f| {
            let mut img = PointSet::empty(space.len());
            for &v in f.values() {
                img.insert(v);
            }
            space.hull(&img)
        })
        .collect::<Result<_>>()?;

    let i = match hulls.iter().position(|h| !h.contains(x0)) {
        Some(i) => i,
        None => {
            return Err(Error::Precondition(
                "every function hull contains the pivot; nothing to separate".into(),
            ));
        }
    };

    let gamma = match space.separate(&hulls[i], x0)? {
        Some(h) => h,
        None => {
            return Err(Error::Hypothesis(format!(
                "no halfspace separates the image hull of function {i} from point {x0}; \
                 the space is not separable"
            )));
        }
    };

    let outside_count = |f: &LabeledFunction| -> usize {
        f.values()
            .iter()
            .filter(|&&v| gamma.complement().contains(v))
            .count()
    };
    let mut j = 0;
    let mut best = 0;
    for (idx, f) in functions.iter().enumerate() {
        let c = outside_count(f);
        if c > best {
            best = c;
            j = idx;
        }
    }
    if best == 0 {
        return Err(Error::Verification(
            "no function sends any edge outside the separating halfspace".into(),
        ));
    }

    let mut retained = PointSet::empty(domain);
    for (e, &v) in functions[j].values().iter().enumerate() {
        if gamma.complement().contains(v) {
            retained.insert(e);
        }
    }
    if retained.len() * (r - 1) < domain {
        return Err(Error::Verification(format!(
            "retained edge set has size {} which is below a 1/{} fraction of {}",
            retained.len(),
            r - 1,
            domain
        )));
    }

    Ok(SeparatedPair {
        i,
        j,
        x0,
        gamma,
        retained,
    })
}

/// Recomputes every promise a `SeparatedPair` makes, from the raw
/// functions only.  Shares no intermediate state with the producer.
pub fn verify_separated_pair(
    space: &ConvexitySpace,
    functions: &[LabeledFunction],
    r: usize,
    pair: &SeparatedPair,
) -> Result<()> {
    if r < 2 {
        return Err(Error::Precondition("split parameter r must be >= 2".into()));
    }
    let (m, domain) = function_preconditions(space, functions)?;
    if pair.i >= m || pair.j >= m {
        return Err(Error::Verification(format!(
            "function indices ({}, {}) out of range for {} functions",
            pair.i, pair.j, m
        )));
    }
    if pair.i == pair.j {
        return Err(Error::Verification("split pair uses a single function".into()));
    }
    if pair.retained.universe() != domain {
        return Err(Error::Verification(format!(
            "retained edges live in universe {} but the domain has size {}",
            pair.retained.universe(),
            domain
        )));
    }

    // The halfspace is rebuilt from its point set, which re-runs the
    // two-sided convexity checks.
    let rebuilt = Halfspace::new(space, pair.gamma.gamma().clone())?;
    if rebuilt != pair.gamma {
        return Err(Error::Verification("halfspace sides are inconsistent".into()));
    }

    if !pair.gamma.complement().contains(pair.x0) {
        return Err(Error::Verification(format!(
            "pivot {} is not outside the halfspace",
            pair.x0
        )));
    }
    for (e, &v) in functions[pair.i].values().iter().enumerate() {
        if !pair.gamma.gamma().contains(v) {
            return Err(Error::Verification(format!(
                "function {} sends edge {} to {} outside the halfspace",
                pair.i, e, v
            )));
        }
    }

    let mut expected = PointSet::empty(domain);
    for (e, &v) in functions[pair.j].values().iter().enumerate() {
        if pair.gamma.complement().contains(v) {
            expected.insert(e);
        }
    }
    if expected != pair.retained {
        return Err(Error::Verification(
            "retained edges are not exactly the complement preimage".into(),
        ));
    }
    if pair.retained.len() * (r - 1) < domain {
        return Err(Error::Verification(format!(
            "retained edge set has size {} which is below a 1/{} fraction of {}",
            pair.retained.len(),
            r - 1,
            domain
        )));
    }

    // Weight bound: the halfspace side carries at most a (r-2)/(r-1)
    // fraction of all (function, edge) incidences.
    let mut inside = 0usize;
    for f in functions {
        inside += f
            .values()
            .iter()
            .filter(|&&v| pair.gamma.gamma().contains(v))
            .count();
    }
    if inside * (r - 1) > (m * domain) * (r - 2) {
        return Err(Error::Verification(format!(
            "halfspace side carries {inside} incidences, above the allowed fraction"
        )));
    }
    Ok(())
}

/// Result of one refinement step on a partite system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefineOutcome {
    /// Some scanned tuple of target-class vertices has intersecting
    /// image hulls; `point` witnesses the intersection.
    CommonPoint { members: Vec<usize>, point: usize },
    /// The target class acquired a separated vertex pair and every
    /// class was shrunk to the new working sets.
    Separated {
        pair_u: usize,
        pair_v: usize,
        gamma: Halfspace,
        new_working: Vec<Vec<usize>>,
    },
    /// The step could not complete; `stage` names the point of failure.
    Inconclusive { stage: String },
}

fn check_working(shape: &PartiteShape, working: &[Vec<usize>]) -> Result<()> {
    if working.len() != shape.classes() {
        return Err(Error::DimensionMismatch {
            expected: shape.classes(),
            got: working.len(),
        });
    }
    for (c, w) in working.iter().enumerate() {
        if w.is_empty() {
            return Err(Error::Precondition(format!("working set for class {c} is empty")));
        }
        for pair in w.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::Precondition(format!(
                    "working set for class {c} is not strictly increasing"
                )));
            }
        }
        if *w.last().unwrap() >= shape.class_sizes()[c] {
            return Err(Error::IndexOutOfRange {
                index: *w.last().unwrap(),
                universe: shape.class_sizes()[c],
            });
        }
    }
    Ok(())
}

/// Shape of the current sub-system restricted to the classes in `keep`.
fn restricted_shape(working: &[Vec<usize>], keep: &[usize]) -> Result<PartiteShape> {
    PartiteShape::new(keep.iter().map(|&c| working[c].len()).collect())
}

/// Value of `f` on the full-shape edge obtained by decoding `local`
/// in `sub`, mapping positions through `working`, and pinning
/// `pinned_class` to `pinned_vertex`.
#[allow(clippy::too_many_arguments)]
fn lifted_value(
    shape: &PartiteShape,
    f: &LabeledFunction,
    working: &[Vec<usize>],
    keep: &[usize],
    sub: &PartiteShape,
    local: usize,
    pinned_class: usize,
    pinned_vertex: usize,
) -> Result<usize> {
    let positions = sub.decode(local)?;
    let mut vertex = vec![0usize; shape.classes()];
    vertex[pinned_class] = pinned_vertex;
    for (slot, &c) in keep.iter().enumerate() {
        vertex[c] = working[c][positions[slot]];
    }
    Ok(f.value(shape.encode(&vertex)?))
}

/// All values of `f` on current edges through `vertex` in `class_idx`,
/// in fiber-edge order (the mixed-radix order of the remaining classes).
fn fiber_values(
    shape: &PartiteShape,
    f: &LabeledFunction,
    working: &[Vec<usize>],
    class_idx: usize,
    vertex: usize,
) -> Result<Vec<usize>> {
    let keep: Vec<usize> = (0..shape.classes()).filter(|&c| c != class_idx).collect();
    let sub = restricted_shape(working, &keep)?;
    (0..sub.edge_count())
        .map(|e| lifted_value(shape, f, working, &keep, &sub, e, class_idx, vertex))
        .collect()
}

/// Looks for a separated vertex pair inside one class of the current
/// system: an ordered pair `(u, v)` and a halfspace with all values
/// through `u` inside and all values through `v` outside.  Pairs are
/// scanned in lexicographic order and halfspaces in canonical order.
pub fn check_separable_subset(
    space: &ConvexitySpace,
    shape: &PartiteShape,
    f: &LabeledFunction,
    working: &[Vec<usize>],
    class_idx: usize,
) -> Result<Option<(usize, usize, Halfspace)>> {
    check_working(shape, working)?;
    if class_idx >= shape.classes() {
        return Err(Error::IndexOutOfRange {
            index: class_idx,
            universe: shape.classes(),
        });
    }
    if f.len() != shape.edge_count() {
        return Err(Error::SizeMismatch(format!(
            "function covers {} edges but the shape has {}",
            f.len(),
            shape.edge_count()
        )));
    }
    let mut images = Vec::with_capacity(working[class_idx].len());
    for &v in &working[class_idx] {
        let mut img = PointSet::empty(space.len());
        for value in fiber_values(shape, f, working, class_idx, v)? {
            img.try_insert(value)?;
        }
        images.push(img);
    }
    let halfspaces = space.enumerate_halfspaces()?;
    for (ui, &u) in working[class_idx].iter().enumerate() {
        for (vi, &v) in working[class_idx].iter().enumerate() {
            if u == v {
                continue;
            }
            for h in halfspaces {
                if images[ui].is_subset_of(h.gamma()) && images[vi].is_subset_of(h.complement()) {
                    return Ok(Some((u, v, h.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// One refinement step against an arbitrary labeling of the edges.
///
/// Scans every `m`-subset of the first `n` working vertices of the
/// target class for intersecting image hulls (success is reported as
/// `CommonPoint`).  When no tuple intersects, the first tuple is split
/// by `large_separated_pairs` over the fiber domain, a complete
/// sub-system of at least `n` vertices per remaining class is extracted
/// from the retained edges, every class is truncated to its new working
/// set, and the separated pair is re-verified on the shrunk system.
#[allow(clippy::too_many_arguments)]
pub fn refine_for_any_f(
    space: &ConvexitySpace,
    shape: &PartiteShape,
    f: &LabeledFunction,
    working: &[Vec<usize>],
    target_class: usize,
    m: usize,
    r: usize,
    n: usize,
) -> Result<RefineOutcome> {
    check_working(shape, working)?;
    if shape.classes() < 2 {
        return Err(Error::Precondition(
            "refinement needs at least two vertex classes".into(),
        ));
    }
    if target_class >= shape.classes() {
        return Err(Error::IndexOutOfRange {
            index: target_class,
            universe: shape.classes(),
        });
    }
    if f.len() != shape.edge_count() {
        return Err(Error::SizeMismatch(format!(
            "function covers {} edges but the shape has {}",
            f.len(),
            shape.edge_count()
        )));
    }
    if m < 2 {
        return Err(Error::Precondition("tuple size m must be >= 2".into()));
    }
    if n < m {
        return Err(Error::Precondition(format!(
            "working size n = {n} is below tuple size m = {m}"
        )));
    }
    if working[target_class].len() < n {
        return Err(Error::Precondition(format!(
            "target class holds {} vertices but n = {n}",
            working[target_class].len()
        )));
    }

    let scan: Vec<usize> = working[target_class][..n].to_vec();
    let mut hulls = Vec::with_capacity(scan.len());
    let mut value_rows = Vec::with_capacity(scan.len());
    for &v in &scan {
        let values = fiber_values(shape, f, working, target_class, v)?;
        let mut img = PointSet::empty(space.len());
        for &value in &values {
            img.try_insert(value)?;
        }
        hulls.push(space.hull(&img)?);
        value_rows.push(values);
    }

    let positions: Vec<usize> = (0..scan.len()).collect();
    for tuple in k_subsets_lex(&positions, m) {
        let mut meet = PointSet::full(space.len());
        for &t in &tuple {
            meet.intersect_with(&hulls[t]);
            if meet.is_empty() {
                break;
            }
        }
        if let Some(point) = meet.min_index() {
            return Ok(RefineOutcome::CommonPoint {
                members: tuple.iter().map(|&t| scan[t]).collect(),
                point,
            });
        }
    }

    // No scanned tuple intersects; split the first one.
    let functions: Vec<LabeledFunction> = (0..m)
        .map(|t| LabeledFunction::new(format!("fiber-{}", scan[t]), value_rows[t].clone(), space.len()))
        .collect::<Result<_>>()?;
    let pair = large_separated_pairs(space, &functions, r)?;

    let keep: Vec<usize> = (0..shape.classes()).filter(|&c| c != target_class).collect();
    let fiber_shape = restricted_shape(working, &keep)?;
    let max_size = keep.iter().map(|&c| working[c].len()).min().unwrap();
    let mut extracted: Option<Vec<Vec<usize>>> = None;
    let mut size = max_size;
    while size >= n {
        if let Some(found) =
            find_complete_subhypergraph_sized(&fiber_shape, &pair.retained, &vec![size; keep.len()])?
        {
            extracted = Some(found);
            break;
        }
        size -= 1;
    }
    let extracted = match extracted {
        Some(e) => e,
        None => {
            return Ok(RefineOutcome::Inconclusive {
                stage: format!(
                    "no complete sub-system of {n} vertices per class inside the retained edges"
                ),
            });
        }
    };

    let mut new_working = vec![Vec::new(); shape.classes()];
    new_working[target_class] = scan[..m].to_vec();
    for (slot, &c) in keep.iter().enumerate() {
        new_working[c] = extracted[slot][..n]
            .iter()
            .map(|&local| working[c][local])
            .collect();
    }

    match check_separable_subset(space, shape, f, &new_working, target_class)? {
        Some((u, v, gamma)) => Ok(RefineOutcome::Separated {
            pair_u: u,
            pair_v: v,
            gamma,
            new_working,
        }),
        None => Ok(RefineOutcome::Inconclusive {
            stage: "separated pair did not survive re-verification on the shrunk system".into(),
        }),
    }
}

/// Witness that `members` of family `family` share `point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MTupleWitness {
    pub family: usize,
    pub members: Vec<usize>,
    pub point: usize,
}

/// Per-family separated pair: all transversal values through set `u`
/// fall inside `gamma`, all values through set `v` fall outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparablePair {
    pub u: usize,
    pub v: usize,
    pub gamma: Halfspace,
}

/// One realized sign pattern: bit `c` of `pattern` is set exactly when
/// `point` lies inside the halfspace of family `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VennCell {
    pub pattern: u64,
    pub edge: Vec<usize>,
    pub point: usize,
}

/// A family of halfspaces, one per input family, together with points
/// realizing every one of the `2^k` sign patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VennCertificate {
    pub pairs: Vec<SeparablePair>,
    pub cells: Vec<VennCell>,
}

/// Result of a full colorful run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorfulOutcome {
    MTuple(MTupleWitness),
    Venn(VennCertificate),
    Inconclusive { stage: String },
}

fn colorful_preconditions(
    space: &ConvexitySpace,
    families: &[SetFamily],
    m: usize,
) -> Result<(usize, usize)> {
    if families.len() < 2 {
        return Err(Error::Precondition(
            "need at least two families for a colorful run".into(),
        ));
    }
    if m < 2 {
        return Err(Error::Precondition("tuple size m must be >= 2".into()));
    }
    let p = families[0].len();
    for (c, fam) in families.iter().enumerate() {
        if fam.universe() != space.len() {
            return Err(Error::UniverseMismatch {
                left: fam.universe(),
                right: space.len(),
            });
        }
        if fam.len() != p {
            return Err(Error::SizeMismatch(format!(
                "family {c} holds {} sets; expected {p}",
                fam.len()
            )));
        }
        if fam.is_empty() {
            return Err(Error::Precondition(format!("family {c} is empty")));
        }
        for (s_idx, s) in fam.iter().enumerate() {
            if !space.is_convex(s)? {
                return Err(Error::Precondition(format!(
                    "set {s_idx} of family {c} is not convex"
                )));
            }
        }
    }
    Ok((families.len(), p))
}

/// Smallest common point of the transversal picking set `edge[c]` from
/// family `c`, or a hypothesis error when the transversal is disjoint.
fn transversal_point(families: &[SetFamily], edge: &[usize]) -> Result<usize> {
    let mut meet = PointSet::full(families[0].universe());
    for (c, fam) in families.iter().enumerate() {
        if fam.universe() != meet.universe() {
            return Err(Error::UniverseMismatch {
                left: meet.universe(),
                right: fam.universe(),
            });
        }
        meet.intersect_with(fam.get(edge[c])?);
    }
    meet.min_index().ok_or_else(|| {
        Error::Hypothesis(format!(
            "transversal {edge:?} has empty intersection; the colorful hypothesis fails"
        ))
    })
}

/// Runs the staged refinement over `k` equal-size families of convex
/// sets whose transversals all intersect.
///
/// Every transversal is first checked (a disjoint one is a hypothesis
/// violation), each edge is labeled with the smallest common point of
/// its transversal, and the classes are refined one at a time, last
/// class first.  A `CommonPoint` step ends the run with an
/// independently checked tuple witness; if every class instead acquires
/// a separated pair, the classes are cut down to those pairs and the
/// `2^k` sign patterns of the pair halfspaces are realized explicitly.
pub fn weak_colorful_run(
    space: &ConvexitySpace,
    families: &[SetFamily],
    m: usize,
) -> Result<ColorfulOutcome> {
    let (k, p) = colorful_preconditions(space, families, m)?;
    if p < m {
        return Ok(ColorfulOutcome::Inconclusive {
            stage: format!("families hold {p} sets which is below the tuple size {m}"),
        });
    }
    let r = match radon_number(space)?.finite() {
        Some(r) => r,
        None => {
            return Err(Error::Precondition(
                "the space has no partitionable tuple at this scale; no split parameter exists"
                    .into(),
            ));
        }
    };

    let shape = PartiteShape::new(vec![p; k])?;
    let mut values = Vec::with_capacity(shape.edge_count());
    for e in 0..shape.edge_count() {
        let edge = shape.decode(e)?;
        values.push(transversal_point(families, &edge)?);
    }
    let f = LabeledFunction::new("least-common-point", values, space.len())?;

    let n = m;
    let mut working: Vec<Vec<usize>> = vec![(0..p).collect(); k];
    for step in 0..k {
        let target = k - 1 - step;
        match refine_for_any_f(space, &shape, &f, &working, target, m, r, n)? {
            RefineOutcome::CommonPoint { members, point } => {
                let witness = MTupleWitness {
                    family: target,
                    members,
                    point,
                };
                let outcome = ColorfulOutcome::MTuple(witness);
                verify_colorful_outcome(space, families, &outcome)?;
                return Ok(outcome);
            }
            RefineOutcome::Separated { new_working, .. } => {
                working = new_working;
            }
            RefineOutcome::Inconclusive { stage } => {
                return Ok(ColorfulOutcome::Inconclusive {
                    stage: format!("class {target}: {stage}"),
                });
            }
        }
    }

    // Every class is separated on the final system; reduce each class
    // to its pair and re-derive the pairs on the reduced system.
    let mut reduced = working.clone();
    for c in 0..k {
        match check_separable_subset(space, &shape, &f, &working, c)? {
            Some((u, v, _)) => {
                let mut pair = vec![u, v];
                pair.sort_unstable();
                reduced[c] = pair;
            }
            None => {
                return Ok(ColorfulOutcome::Inconclusive {
                    stage: format!("class {c} has no separated pair on the final system"),
                });
            }
        }
    }
    let mut pairs = Vec::with_capacity(k);
    for c in 0..k {
        match check_separable_subset(space, &shape, &f, &reduced, c)? {
            Some((u, v, gamma)) => pairs.push(SeparablePair { u, v, gamma }),
            None => {
                return Ok(ColorfulOutcome::Inconclusive {
                    stage: format!("class {c} lost its separated pair after reduction"),
                });
            }
        }
    }

    let mut cells = Vec::with_capacity(1 << k);
    for pattern in 0..(1u64 << k) {
        let edge: Vec<usize> = (0..k)
            .map(|c| {
                if pattern >> c & 1 == 1 {
                    pairs[c].u
                } else {
                    pairs[c].v
                }
            })
            .collect();
        let point = f.value(shape.encode(&edge)?);
        for (c, pair) in pairs.iter().enumerate() {
            let inside = pair.gamma.gamma().contains(point);
            if inside != (pattern >> c & 1 == 1) {
                return Err(Error::Verification(format!(
                    "pattern {pattern:b}: point {point} disagrees with halfspace {c}"
                )));
            }
        }
        cells.push(VennCell {
            pattern,
            edge,
            point,
        });
    }

    let outcome = ColorfulOutcome::Venn(VennCertificate { pairs, cells });
    verify_colorful_outcome(space, families, &outcome)?;
    Ok(outcome)
}

/// Checks a colorful outcome against the original families only.
///
/// Tuple witnesses are tested by direct membership in the named sets;
/// Venn certificates are replayed cell by cell, rebuilding each
/// halfspace, recomputing each transversal point, and confirming that
/// all `2^k` sign patterns appear exactly once.
pub fn verify_colorful_outcome(
    space: &ConvexitySpace,
    families: &[SetFamily],
    outcome: &ColorfulOutcome,
) -> Result<()> {
    match outcome {
        ColorfulOutcome::Inconclusive { .. } => Ok(()),
        ColorfulOutcome::MTuple(w) => {
            if w.family >= families.len() {
                return Err(Error::Verification(format!(
                    "witness names family {} of {}",
                    w.family,
                    families.len()
                )));
            }
            if w.members.is_empty() {
                return Err(Error::Verification("witness tuple is empty".into()));
            }
            for pair in w.members.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(Error::Verification(
                        "witness members are not strictly increasing".into(),
                    ));
                }
            }
            for &s_idx in &w.members {
                if !families[w.family].get(s_idx)?.contains(w.point) {
                    return Err(Error::Verification(format!(
                        "point {} misses set {} of family {}",
                        w.point, s_idx, w.family
                    )));
                }
            }
            Ok(())
        }
        ColorfulOutcome::Venn(cert) => {
            let k = families.len();
            if cert.pairs.len() != k {
                return Err(Error::Verification(format!(
                    "certificate holds {} pairs for {} families",
                    cert.pairs.len(),
                    k
                )));
            }
            if k >= 64 || cert.cells.len() != 1 << k {
                return Err(Error::Verification(format!(
                    "certificate holds {} cells; expected 2^{}",
                    cert.cells.len(),
                    k
                )));
            }
            for (c, pair) in cert.pairs.iter().enumerate() {
                if pair.u == pair.v {
                    return Err(Error::Verification(format!(
                        "family {c} pair repeats set {}",
                        pair.u
                    )));
                }
                families[c].get(pair.u)?;
                families[c].get(pair.v)?;
                let rebuilt = Halfspace::new(space, pair.gamma.gamma().clone())?;
                if rebuilt != pair.gamma {
                    return Err(Error::Verification(format!(
                        "family {c} halfspace sides are inconsistent"
                    )));
                }
            }
            for (idx, cell) in cert.cells.iter().enumerate() {
                if cell.pattern != idx as u64 {
                    return Err(Error::Verification(format!(
                        "cell {idx} carries pattern {}",
                        cell.pattern
                    )));
                }
                if cell.edge.len() != k {
                    return Err(Error::Verification(format!(
                        "cell {idx} names {} sets for {} families",
                        cell.edge.len(),
                        k
                    )));
                }
                for (c, pair) in cert.pairs.iter().enumerate() {
                    let expect = if cell.pattern >> c & 1 == 1 {
                        pair.u
                    } else {
                        pair.v
                    };
                    if cell.edge[c] != expect {
                        return Err(Error::Verification(format!(
                            "cell {idx} picks set {} from family {c}; pattern demands {}",
                            cell.edge[c], expect
                        )));
                    }
                }
                let point = transversal_point(families, &cell.edge)?;
                if point != cell.point {
                    return Err(Error::Verification(format!(
                        "cell {idx} claims point {} but the transversal meets at {}",
                        cell.point, point
                    )));
                }
                for (c, pair) in cert.pairs.iter().enumerate() {
                    let inside = pair.gamma.gamma().contains(point);
                    if inside != (cell.pattern >> c & 1 == 1) {
                        return Err(Error::Verification(format!(
                            "cell {idx}: point {point} is on the wrong side of halfspace {c}"
                        )));
                    }
                }
            }
            Ok(())
        }
    }
}
