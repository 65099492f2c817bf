//! Complete multipartite hypergraphs: vertex classes V_1..V_k, edges =
//! transversals picking one vertex per class. Edge sets are bitsets
//! over the mixed-radix edge index (class 0 most significant), and the
//! queries look for complete sub-hypergraphs: one s-subset per class
//! with every transversal of those subsets present.
//!
//! # Invariants
//!
//! - every class is nonempty and the edge universe is the product of
//!   the class sizes, capped to keep enumeration honest
//! - search results list one strictly increasing vertex subset per
//!   class, and the first match in lexicographic order wins

use crate::error::{Error, Result};
use crate::pointset::{k_subsets_lex, PointSet};

/// Ceiling on the edge universe (product of class sizes).
pub const EDGE_UNIVERSE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteShape {
    class_sizes: Vec<usize>,
    edge_count: usize,
}

impl PartiteShape {
    pub fn new(class_sizes: Vec<usize>) -> Result<PartiteShape> {
        if class_sizes.is_empty() || class_sizes.contains(&0) {
            return Err(Error::Precondition(
                "every vertex class must be nonempty".into(),
            ));
        }
        let mut edge_count = 1usize;
        for &n in &class_sizes {
            edge_count = edge_count
                .checked_mul(n)
                .filter(|&c| c <= EDGE_UNIVERSE_CAP)
                .ok_or(Error::CapExceeded {
                    what: "edge universe",
                    needed: usize::MAX,
                    cap: EDGE_UNIVERSE_CAP,
                })?;
        }
        Ok(PartiteShape {
            class_sizes,
            edge_count,
        })
    }

    pub fn classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn all_edges(&self) -> PointSet {
        PointSet::full(self.edge_count)
    }

    /// Per-class vertex indices of an edge.
    pub fn decode(&self, edge: usize) -> Result<Vec<usize>> {
        if edge >= self.edge_count {
            return Err(Error::IndexOutOfRange {
                index: edge,
                universe: self.edge_count,
            });
        }
        let mut out = vec![0; self.class_sizes.len()];
        let mut rest = edge;
        for (i, &n) in self.class_sizes.iter().enumerate().rev() {
            out[i] = rest % n;
            rest /= n;
        }
        Ok(out)
    }

    pub fn encode(&self, vertices: &[usize]) -> Result<usize> {
        if vertices.len() != self.class_sizes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.class_sizes.len(),
                got: vertices.len(),
            });
        }
        let mut edge = 0usize;
        for (&v, &n) in vertices.iter().zip(&self.class_sizes) {
            if v >= n {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    universe: n,
                });
            }
            edge = edge * n + v;
        }
        Ok(edge)
    }
}

/// Whether every transversal of the chosen per-class subsets is in
/// `edges`.
pub fn transversals_present(
    shape: &PartiteShape,
    edges: &PointSet,
    chosen: &[Vec<usize>],
) -> Result<bool> {
    let k = shape.classes();
    let mut odometer = vec![0usize; k];
    let mut vertices = vec![0usize; k];
    loop {
        for i in 0..k {
            vertices[i] = chosen[i][odometer[i]];
        }
        if !edges.contains(shape.encode(&vertices)?) {
            return Ok(false);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            odometer[i] += 1;
            if odometer[i] < chosen[i].len() {
                break;
            }
            odometer[i] = 0;
        }
    }
}

fn check_inputs(shape: &PartiteShape, edges: &PointSet, s: usize) -> Result<()> {
    if edges.universe() != shape.edge_count() {
        return Err(Error::UniverseMismatch {
            left: edges.universe(),
            right: shape.edge_count(),
        });
    }
    if s == 0 {
        return Err(Error::Precondition(
            "complete sub-hypergraphs need s >= 1".into(),
        ));
    }
    Ok(())
}

fn search_complete(
    shape: &PartiteShape,
    edges: &PointSet,
    sizes: &[usize],
    class_idx: usize,
    chosen: &mut Vec<Vec<usize>>,
    visit: &mut impl FnMut(&[Vec<usize>]) -> bool,
) -> Result<bool> {
    if class_idx == shape.classes() {
        if transversals_present(shape, edges, chosen)? {
            return Ok(visit(chosen));
        }
        return Ok(false);
    }
    let vertices: Vec<usize> = (0..shape.class_sizes()[class_idx]).collect();
    for subset in k_subsets_lex(&vertices, sizes[class_idx]) {
        chosen.push(subset);
        let stop = search_complete(shape, edges, sizes, class_idx + 1, chosen, visit)?;
        chosen.pop();
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// First (lexicographically) complete sub-hypergraph with
/// `sizes[c]` vertices in class `c`.
pub fn find_complete_subhypergraph_sized(
    shape: &PartiteShape,
    edges: &PointSet,
    sizes: &[usize],
) -> Result<Option<Vec<Vec<usize>>>> {
    if sizes.len() != shape.classes() {
        return Err(Error::DimensionMismatch {
            expected: shape.classes(),
            got: sizes.len(),
        });
    }
    for (&s, &n) in sizes.iter().zip(shape.class_sizes()) {
        check_inputs(shape, edges, s)?;
        if s > n {
            return Ok(None);
        }
    }
    let mut found = None;
    search_complete(shape, edges, sizes, 0, &mut Vec::new(), &mut |chosen| {
        found = Some(chosen.to_vec());
        true
    })?;
    Ok(found)
}

/// First (lexicographically) complete sub-hypergraph with `s` vertices
/// per class whose transversals all lie in `edges`.
pub fn find_complete_subhypergraph(
    shape: &PartiteShape,
    edges: &PointSet,
    s: usize,
) -> Result<Option<Vec<Vec<usize>>>> {
    find_complete_subhypergraph_sized(shape, edges, &vec![s; shape.classes()])
}

/// Number of complete sub-hypergraphs with `s` vertices per class.
pub fn count_complete_subhypergraphs(
    shape: &PartiteShape,
    edges: &PointSet,
    s: usize,
) -> Result<u64> {
    check_inputs(shape, edges, s)?;
    if s > shape.class_sizes().iter().copied().min().unwrap() {
        return Ok(0);
    }
    let sizes = vec![s; shape.classes()];
    let mut count = 0u64;
    search_complete(shape, edges, &sizes, 0, &mut Vec::new(), &mut |_| {
        count += 1;
        false
    })?;
    Ok(count)
}

/// Largest `s >= at_least` admitting a complete sub-hypergraph, with
/// the first witness at that size.
pub fn largest_complete_subhypergraph(
    shape: &PartiteShape,
    edges: &PointSet,
    at_least: usize,
) -> Result<Option<(usize, Vec<Vec<usize>>)>> {
    check_inputs(shape, edges, at_least)?;
    let max_s = shape.class_sizes().iter().copied().min().unwrap();
    for s in (at_least..=max_s).rev() {
        if let Some(witness) = find_complete_subhypergraph(shape, edges, s)? {
            return Ok(Some((s, witness)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_codec_roundtrips_with_class_zero_most_significant() {
        let shape = PartiteShape::new(vec![2, 3]).unwrap();
        assert_eq!(shape.edge_count(), 6);
        assert_eq!(shape.encode(&[1, 2]).unwrap(), 5);
        assert_eq!(shape.decode(5).unwrap(), vec![1, 2]);
        for e in 0..shape.edge_count() {
            assert_eq!(shape.encode(&shape.decode(e).unwrap()).unwrap(), e);
        }
        assert!(matches!(
            shape.encode(&[0, 3]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            shape.encode(&[0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn shape_validation_rejects_empty_and_oversized() {
        assert!(matches!(
            PartiteShape::new(vec![2, 0]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            PartiteShape::new(vec![101, 101, 101]),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn full_edge_set_contains_the_first_lexicographic_square() {
        let shape = PartiteShape::new(vec![3, 3]).unwrap();
        let found = find_complete_subhypergraph(&shape, &shape.all_edges(), 2)
            .unwrap()
            .unwrap();
        assert_eq!(found, vec![vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn a_missing_corner_pushes_the_square_aside() {
        let shape = PartiteShape::new(vec![3, 3]).unwrap();
        let mut edges = shape.all_edges();
        edges.remove(shape.encode(&[0, 0]).unwrap());
        let found = find_complete_subhypergraph(&shape, &edges, 2)
            .unwrap()
            .unwrap();
        assert_eq!(found, vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn three_class_complete_checks_all_transversals() {
        let shape = PartiteShape::new(vec![2, 2, 2]).unwrap();
        assert!(
            find_complete_subhypergraph(&shape, &shape.all_edges(), 2)
                .unwrap()
                .is_some()
        );
        let mut edges = shape.all_edges();
        edges.remove(shape.encode(&[1, 0, 1]).unwrap());
        assert!(find_complete_subhypergraph(&shape, &edges, 2)
            .unwrap()
            .is_none());
        assert_eq!(count_complete_subhypergraphs(&shape, &edges, 1).unwrap(), 7);
    }

    #[test]
    fn oversized_requests_return_nothing() {
        let shape = PartiteShape::new(vec![2, 3]).unwrap();
        assert!(find_complete_subhypergraph(&shape, &shape.all_edges(), 3)
            .unwrap()
            .is_none());
        assert!(matches!(
            find_complete_subhypergraph(&shape, &shape.all_edges(), 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn largest_complete_walks_down_from_the_class_size() {
        let shape = PartiteShape::new(vec![3, 3]).unwrap();
        let (s, witness) =
            largest_complete_subhypergraph(&shape, &shape.all_edges(), 1)
                .unwrap()
                .unwrap();
        assert_eq!(s, 3);
        assert_eq!(witness, vec![vec![0, 1, 2], vec![0, 1, 2]]);

        let mut edges = shape.all_edges();
        edges.remove(shape.encode(&[2, 2]).unwrap());
        let (s, _) = largest_complete_subhypergraph(&shape, &edges, 1)
            .unwrap()
            .unwrap();
        assert_eq!(s, 2);
    }

    #[test]
    fn counts_match_a_direct_pair_loop_on_every_bipartite_edge_set() {
        // Independent oracle: for two classes of three, a complete
        // 2x2 needs rows i<j and columns k<l with all four edges.
        let shape = PartiteShape::new(vec![3, 3]).unwrap();
        for mask in 0u16..512 {
            let mut edges = PointSet::empty(9);
            for e in 0..9 {
                if mask >> e & 1 == 1 {
                    edges.insert(e);
                }
            }
            let mut oracle = 0u64;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    for k in 0..3 {
                        for l in (k + 1)..3 {
                            let all = [(i, k), (i, l), (j, k), (j, l)]
                                .iter()
                                .all(|&(r, c)| edges.contains(3 * r + c));
                            if all {
                                oracle += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(
                count_complete_subhypergraphs(&shape, &edges, 2).unwrap(),
                oracle,
                "mask {mask}"
            );
        }
    }
}
