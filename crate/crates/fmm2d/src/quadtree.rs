//! Adaptive quadtree over the root square, with per-cell adjacency and
//! well-separated interaction lists.
//!
//! The list construction is the dual-descent form: each cell inherits the
//! unresolved (still adjacent) cells of its parent; a candidate that stops
//! touching the cell enters the interaction list at that level. Candidates
//! are either children of same-level adjacent cells (level offset 0) or
//! coarser leaves that could not be refined further (offset 1 or 2). An
//! offset above 2 would make the multipole expansion for that pair diverge
//! or converge too slowly, so it is a structural error.

use thiserror::Error;

use crate::boundary::BoundaryDisc;
use crate::geom::Point;

pub const MAX_DEPTH: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("knot {index} lies outside the root square")]
    PointOutsideRoot { index: usize },
    #[error("max tree depth 30 exceeded (coincident points?)")]
    MaxDepthExceeded,
}

pub type Result<T> = std::result::Result<T, TreeError>;

#[derive(Clone, Debug)]
pub struct Cell {
    pub level: u32,
    pub center: Point,
    pub half_width: f64,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Indices into the boundary discretization; populated on leaves only.
    pub point_indices: Vec<u32>,
    /// Number of knots anywhere under this cell.
    pub subtree_points: usize,
    pub is_leaf: bool,
}

#[derive(Clone, Debug)]
pub struct Quadtree {
    pub cells: Vec<Cell>,
    pub root_center: Point,
    pub side: f64,
    pub leaf_cap: usize,
    pub l_max: u32,
    /// Cell ids grouped by level, each level in creation order.
    pub levels: Vec<Vec<usize>>,
    /// Leaf id owning each knot.
    pub point_leaf: Vec<usize>,
}

impl Quadtree {
    /// Chain of cells from the leaf owning `point` up to the root.
    pub fn chain_of_point(&self, point: usize) -> Vec<usize> {
        let mut chain = Vec::new();
        let mut cur = Some(self.point_leaf[point]);
        while let Some(id) = cur {
            chain.push(id);
            cur = self.cells[id].parent;
        }
        chain
    }

    /// `d_L = sqrt(2) d / 2^{L+2}`: the child-to-parent centroid distance at
    /// level `L`, which also bounds the point radius of a level `L+1` cell.
    pub fn level_distance(&self, level: u32) -> f64 {
        level_distance(self.side, level)
    }

    pub fn touches(&self, a: usize, b: usize) -> bool {
        let ca = &self.cells[a];
        let cb = &self.cells[b];
        let tol = 1e-12 * self.side;
        let reach = ca.half_width + cb.half_width + tol;
        (ca.center.x - cb.center.x).abs() <= reach && (ca.center.y - cb.center.y).abs() <= reach
    }

    /// Debug dump: `cell_id,level,cx,cy,half_width,parent,is_leaf,n_points`.
    pub fn dump_csv(&self) -> String {
        let mut out = String::from("cell_id,level,cx,cy,half_width,parent,is_leaf,n_points\n");
        for (id, c) in self.cells.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                id,
                c.level,
                c.center.x,
                c.center.y,
                c.half_width,
                c.parent.map_or(-1i64, |p| p as i64),
                c.is_leaf as u8,
                c.subtree_points,
            ));
        }
        out
    }
}

/// `d_L = sqrt(2) d / 2^{L+2}`.
pub fn level_distance(d: f64, level: u32) -> f64 {
    std::f64::consts::SQRT_2 * d / 2f64.powi(level as i32 + 2)
}

/// Build the adaptive tree with the root square centered on the knot
/// bounding-box center.
pub fn build(disc: &BoundaryDisc, d: f64, leaf_cap: usize) -> Result<Quadtree> {
    let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &disc.points {
        lo_x = lo_x.min(p.x);
        hi_x = hi_x.max(p.x);
        lo_y = lo_y.min(p.y);
        hi_y = hi_y.max(p.y);
    }
    let center = Point::new(0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y));
    build_with_center(disc, center, d, leaf_cap)
}

/// Build with an explicit root-square center.
pub fn build_with_center(
    disc: &BoundaryDisc,
    center: Point,
    d: f64,
    leaf_cap: usize,
) -> Result<Quadtree> {
    let hw = 0.5 * d;
    let tol = 1e-12 * d;
    for (i, p) in disc.points.iter().enumerate() {
        if (p.x - center.x).abs() > hw + tol || (p.y - center.y).abs() > hw + tol {
            return Err(TreeError::PointOutsideRoot { index: i });
        }
    }

    let mut cells = vec![Cell {
        level: 0,
        center,
        half_width: hw,
        parent: None,
        children: Vec::new(),
        point_indices: (0..disc.len() as u32).collect(),
        subtree_points: disc.len(),
        is_leaf: true,
    }];

    // breadth-first subdivision; a cell keeps its points only if it stays a
    // leaf
    let mut queue = vec![0usize];
    while let Some(id) = queue.pop() {
        let count = cells[id].point_indices.len();
        if count <= leaf_cap {
            continue;
        }
        if cells[id].level >= MAX_DEPTH {
            return Err(TreeError::MaxDepthExceeded);
        }
        let parent_center = cells[id].center;
        let child_hw = 0.5 * cells[id].half_width;
        let points = std::mem::take(&mut cells[id].point_indices);
        let mut buckets: [Vec<u32>; 4] = Default::default();
        for idx in points {
            let p = disc.points[idx as usize];
            let qx = (p.x >= parent_center.x) as usize;
            let qy = (p.y >= parent_center.y) as usize;
            buckets[qy * 2 + qx].push(idx);
        }
        cells[id].is_leaf = false;
        for (q, bucket) in buckets.into_iter().enumerate() {
            if bucket.is_empty() {
                continue;
            }
            let sx = if q % 2 == 0 { -1.0 } else { 1.0 };
            let sy = if q / 2 == 0 { -1.0 } else { 1.0 };
            let child = Cell {
                level: cells[id].level + 1,
                center: Point::new(
                    parent_center.x + sx * child_hw,
                    parent_center.y + sy * child_hw,
                ),
                half_width: child_hw,
                parent: Some(id),
                children: Vec::new(),
                subtree_points: bucket.len(),
                point_indices: bucket,
                is_leaf: true,
            };
            let child_id = cells.len();
            cells.push(child);
            cells[id].children.push(child_id);
            queue.push(child_id);
        }
    }

    let l_max = cells.iter().map(|c| c.level).max().unwrap_or(0);
    let mut levels = vec![Vec::new(); l_max as usize + 1];
    for (id, c) in cells.iter().enumerate() {
        levels[c.level as usize].push(id);
    }
    let mut point_leaf = vec![usize::MAX; disc.len()];
    for (id, c) in cells.iter().enumerate() {
        if c.is_leaf {
            for &idx in &c.point_indices {
                point_leaf[idx as usize] = id;
            }
        }
    }

    Ok(Quadtree {
        cells,
        root_center: center,
        side: d,
        leaf_cap,
        l_max,
        levels,
        point_leaf,
    })
}

/// One well-separated source for a target cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InteractionEntry {
    pub source: usize,
    /// `L - L_DI`, the level of the target list minus the level of the
    /// source cell; always in `{0, 1, 2}`.
    pub level_diff: u32,
}

/// Interaction lists plus the per-cell unresolved-neighbor sets the
/// construction sweeps along.
#[derive(Clone, Debug)]
pub struct InteractionLists {
    /// Well-separated entries per cell id.
    pub entries: Vec<Vec<InteractionEntry>>,
    /// Cells still adjacent to this cell: same-level cells (with their whole
    /// subtrees) and coarser leaves. For a leaf, the points under these cells
    /// are exactly its near field.
    pub neigh: Vec<Vec<usize>>,
    /// Coarse leaves that separated from some target only beyond offset 2 and
    /// were therefore kept in the near field, as `(target, source)` pairs.
    pub deep_near_pairs: Vec<(usize, usize)>,
}

/// Build the well-separated lists.
///
/// Every list entry has level offset 0, 1 or 2. A coarse leaf that first
/// separates from the descending target chain beyond offset 2 never enters a
/// list: the multipole expansion for such a pair converges too slowly or not
/// at all, so the pair stays in the near field and is evaluated directly.
/// Such pairs are reported in `deep_near_pairs`.
pub fn interaction_lists(tree: &Quadtree) -> InteractionLists {
    let n = tree.cells.len();
    let mut entries = vec![Vec::new(); n];
    let mut neigh = vec![Vec::new(); n];
    let mut deep_near_pairs = Vec::new();
    neigh[0].push(0);

    for level in 1..=tree.l_max {
        for &id in &tree.levels[level as usize] {
            let parent = tree.cells[id].parent.expect("non-root must have parent");
            let parent_neigh = neigh[parent].clone();
            for c in parent_neigh {
                let candidates: Vec<usize> = if tree.cells[c].is_leaf {
                    vec![c]
                } else {
                    tree.cells[c].children.clone()
                };
                for s in candidates {
                    let diff = tree.cells[id].level - tree.cells[s].level;
                    if tree.touches(id, s) || diff > 2 {
                        if diff > 2 && !tree.touches(id, s) {
                            deep_near_pairs.push((id, s));
                        }
                        neigh[id].push(s);
                    } else {
                        entries[id].push(InteractionEntry {
                            source: s,
                            level_diff: diff,
                        });
                    }
                }
            }
        }
    }
    InteractionLists {
        entries,
        neigh,
        deep_near_pairs,
    }
}

impl InteractionLists {
    /// All knot indices in the near field of `leaf`: everything under its
    /// unresolved-neighbor cells (including the leaf itself).
    pub fn near_points(&self, tree: &Quadtree, leaf: usize) -> Vec<u32> {
        let mut out = Vec::new();
        for &c in &self.neigh[leaf] {
            collect_points(tree, c, &mut out);
        }
        out
    }
}

/// Knot indices anywhere under `cell`, in index order within each leaf.
pub fn collect_points(tree: &Quadtree, cell: usize, out: &mut Vec<u32>) {
    let c = &tree.cells[cell];
    if c.is_leaf {
        out.extend_from_slice(&c.point_indices);
    } else {
        for &ch in &c.children {
            collect_points(tree, ch, out);
        }
    }
}

/// Map from each leaf to the set of leaves sharing an edge or corner with it
/// (including itself). Keyed by cell id; non-leaves map to empty sets.
pub fn adjacency(tree: &Quadtree, lists: &InteractionLists) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); tree.cells.len()];
    for (id, c) in tree.cells.iter().enumerate() {
        if !c.is_leaf {
            continue;
        }
        let mut acc = Vec::new();
        for &nb in &lists.neigh[id] {
            collect_touching_leaves(tree, nb, id, &mut acc);
        }
        acc.sort_unstable();
        out[id] = acc;
    }
    out
}

fn collect_touching_leaves(tree: &Quadtree, cell: usize, target: usize, out: &mut Vec<usize>) {
    if !tree.touches(cell, target) {
        return;
    }
    let c = &tree.cells[cell];
    if c.is_leaf {
        out.push(cell);
    } else {
        for &ch in &c.children {
            collect_touching_leaves(tree, ch, target, out);
        }
    }
}

/// Per-source far-point counts bucketed by the level offset of the list
/// entry, summed over the ancestor chain; `i_max` is the largest offset with
/// a nonzero count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FarCounts {
    pub n: [usize; 3],
    pub i_max: usize,
}

pub fn far_counts(tree: &Quadtree, lists: &InteractionLists, source_index: usize) -> FarCounts {
    let mut n = [0usize; 3];
    for id in tree.chain_of_point(source_index) {
        for e in &lists.entries[id] {
            n[e.level_diff as usize] += tree.cells[e.source].subtree_points;
        }
    }
    let i_max = (0..3).rev().find(|&i| n[i] != 0).unwrap_or(0);
    FarCounts { n, i_max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{circle, discretize, kite};
    use num_complex::Complex64;

    fn disc_from_points(points: Vec<Point>) -> BoundaryDisc {
        let n = points.len();
        BoundaryDisc {
            points,
            weights: vec![1.0; n],
            normals: vec![Point::new(1.0, 0.0); n],
            density: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    #[test]
    fn single_point_tree() {
        let disc = disc_from_points(vec![Point::new(0.1, 0.2)]);
        let tree = build(&disc, 4.0, 6).unwrap();
        assert_eq!(tree.cells.len(), 1);
        assert!(tree.cells[0].is_leaf);
        let lists = interaction_lists(&tree);
        assert!(lists.entries[0].is_empty());
        assert_eq!(lists.near_points(&tree, 0), vec![0]);
    }

    #[test]
    fn four_quadrant_points_split_once() {
        let disc = disc_from_points(vec![
            Point::new(-1.0, -1.0),
            Point::new(1.0, -1.0),
            Point::new(-1.0, 1.0),
            Point::new(1.0, 1.0),
        ]);
        let tree = build_with_center(&disc, Point::ORIGIN, 4.0, 1).unwrap();
        let leaves: Vec<usize> = (0..tree.cells.len())
            .filter(|&i| tree.cells[i].is_leaf)
            .collect();
        assert_eq!(leaves.len(), 4);
        for &l in &leaves {
            assert_eq!(tree.cells[l].level, 1);
            assert_eq!(tree.cells[l].point_indices.len(), 1);
        }
        // the four quadrants all touch at the center: no far pairs
        let lists = interaction_lists(&tree);
        for l in leaves {
            assert!(lists.entries[l].is_empty());
            assert_eq!(lists.near_points(&tree, l).len(), 4);
        }
    }

    #[test]
    fn outside_root_is_error() {
        let disc = disc_from_points(vec![Point::new(3.0, 0.0)]);
        assert!(matches!(
            build_with_center(&disc, Point::ORIGIN, 4.0, 1),
            Err(TreeError::PointOutsideRoot { index: 0 })
        ));
    }

    /// 16 x 16 uniform grid forcing a complete tree of depth 4.
    fn uniform_tree() -> (BoundaryDisc, Quadtree) {
        let mut pts = Vec::new();
        for i in 0..16 {
            for j in 0..16 {
                pts.push(Point::new(
                    -2.0 + 0.125 + i as f64 * 0.25,
                    -2.0 + 0.125 + j as f64 * 0.25,
                ));
            }
        }
        let disc = disc_from_points(pts);
        let tree = build_with_center(&disc, Point::ORIGIN, 4.0, 1).unwrap();
        (disc, tree)
    }

    #[test]
    fn uniform_grid_classic_lists() {
        let (_, tree) = uniform_tree();
        assert_eq!(tree.l_max, 4);
        assert_eq!(tree.levels[2].len(), 16);
        assert_eq!(tree.levels[3].len(), 64);
        let lists = interaction_lists(&tree);
        for &id in &tree.levels[2] {
            let n = lists.entries[id].len();
            assert!((1..=27).contains(&n), "level-2 list size {n}");
            for e in &lists.entries[id] {
                assert_eq!(e.level_diff, 0);
            }
        }
        // interior level-3 cells see the full 27 well-separated cells
        let interior: Vec<usize> = tree.levels[3]
            .iter()
            .copied()
            .filter(|&id| {
                let c = &tree.cells[id];
                c.center.x.abs() < 1.2 && c.center.y.abs() < 1.2
            })
            .collect();
        assert!(!interior.is_empty());
        for id in interior {
            assert_eq!(lists.entries[id].len(), 27, "cell {id}");
        }
    }

    #[test]
    fn two_distant_clusters() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Point::new(-1.8 + 0.01 * i as f64, -1.8));
            pts.push(Point::new(1.8 - 0.01 * i as f64, 1.8));
        }
        let disc = disc_from_points(pts);
        let tree = build_with_center(&disc, Point::ORIGIN, 4.0, 4).unwrap();
        let lists = interaction_lists(&tree);
        // far pairs resolve at coarse levels; deep cells have empty lists
        for (id, c) in tree.cells.iter().enumerate() {
            if c.level >= 3 {
                assert!(
                    lists.entries[id].is_empty(),
                    "cell {id} at level {}",
                    c.level
                );
            }
        }
    }

    #[test]
    fn adjacency_matches_brute_force() {
        let disc = discretize(&kite(), 250, |_| Complex64::new(1.0, 0.0)).unwrap();
        let tree = build(&disc, 4.0, 6).unwrap();
        let lists = interaction_lists(&tree);
        let adj = adjacency(&tree, &lists);
        let leaves: Vec<usize> = (0..tree.cells.len())
            .filter(|&i| tree.cells[i].is_leaf)
            .collect();
        for &a in &leaves {
            let mut brute: Vec<usize> = leaves
                .iter()
                .copied()
                .filter(|&b| tree.touches(a, b))
                .collect();
            brute.sort_unstable();
            assert_eq!(adj[a], brute, "adjacency mismatch at leaf {a}");
            assert!(adj[a].contains(&a));
        }
    }

    #[test]
    fn isolated_leaf_adjacency() {
        // two tight clusters deep in opposite corners; their level-2 leaves
        // share no edge or corner, so each leaf is adjacent only to itself
        let disc = disc_from_points(vec![
            Point::new(-1.9, -1.9),
            Point::new(-1.7, -1.8),
            Point::new(1.9, 1.9),
            Point::new(1.7, 1.8),
        ]);
        let tree = build_with_center(&disc, Point::ORIGIN, 4.0, 1).unwrap();
        let lists = interaction_lists(&tree);
        let adj = adjacency(&tree, &lists);
        let leaves: Vec<usize> = (0..tree.cells.len())
            .filter(|&i| tree.cells[i].is_leaf && !tree.cells[i].point_indices.is_empty())
            .collect();
        assert_eq!(leaves.len(), 4);
        // each leaf touches only itself and its cluster mate
        for &id in &leaves {
            assert_eq!(adj[id].len(), 2, "leaf {id}: {:?}", adj[id]);
            for &other in &adj[id] {
                assert_eq!(
                    tree.cells[other].center.x.signum(),
                    tree.cells[id].center.x.signum()
                );
            }
        }
    }

    #[test]
    fn kite_partition_property() {
        let disc = discretize(&kite(), 500, |_| Complex64::new(1.0, 0.0)).unwrap();
        let tree = build(&disc, 4.0, 6).unwrap();
        let lists = interaction_lists(&tree);
        for i in 0..disc.len() {
            let leaf = tree.point_leaf[i];
            let mut seen = vec![0u8; disc.len()];
            for &j in &lists.near_points(&tree, leaf) {
                seen[j as usize] += 1;
            }
            for id in tree.chain_of_point(i) {
                for e in &lists.entries[id] {
                    let mut pts = Vec::new();
                    collect_points(&tree, e.source, &mut pts);
                    for j in pts {
                        seen[j as usize] += 1;
                    }
                }
            }
            assert!(
                seen.iter().all(|&c| c == 1),
                "partition violated for source {i}"
            );
        }
    }

    #[test]
    fn kite_separation_invariants() {
        // Table 1 geometry: for every interaction pair and member point,
        // |x - O_DI| >= sqrt2 eps_i d_L, |O_DL - O_DI| >= sqrt2 zeta_i d_L,
        // |y - O_DI| <= eta_i d_L, |y - O_DL| >= 3 sqrt2 d_L
        let eps = [3.0, 4.0, 6.0];
        let zeta = [4.0, 26f64.sqrt(), 50f64.sqrt()];
        let eta = [2.0, 4.0, 8.0];
        let s2 = std::f64::consts::SQRT_2;

        let disc = discretize(&kite(), 500, |_| Complex64::new(1.0, 0.0)).unwrap();
        let tree = build(&disc, 4.0, 6).unwrap();
        let lists = interaction_lists(&tree);
        let slack = 1.0 + 1e-9;
        for (id, c) in tree.cells.iter().enumerate() {
            let d_l = tree.level_distance(c.level);
            let mut own = Vec::new();
            collect_points(&tree, id, &mut own);
            // containment: |x - O_DL| <= 2 d_L
            for &x in &own {
                assert!(
                    (disc.points[x as usize] - c.center).norm() <= 2.0 * d_l * slack,
                    "containment fails at cell {id}"
                );
            }
            // |O_child - O_parent| = d_{L-1} = 2 d_L
            if let Some(par) = c.parent {
                let want = tree.level_distance(c.level - 1);
                let got = (c.center - tree.cells[par].center).norm();
                assert!((got - want).abs() <= 1e-12 * want);
                assert!((want - 2.0 * d_l).abs() <= 1e-12 * want);
            }
            for e in &lists.entries[id] {
                let i = e.level_diff as usize;
                let src = &tree.cells[e.source];
                let o_diff = (c.center - src.center).norm();
                assert!(
                    o_diff >= s2 * zeta[i] * d_l / slack,
                    "zeta separation fails: cell {id} src {} diff {i}",
                    e.source
                );
                let mut pts = Vec::new();
                collect_points(&tree, e.source, &mut pts);
                for &y in &pts {
                    let yp = disc.points[y as usize];
                    assert!(
                        (yp - src.center).norm() <= eta[i] * d_l * slack,
                        "eta containment fails"
                    );
                    assert!(
                        (yp - c.center).norm() >= 3.0 * s2 * d_l / slack,
                        "3 sqrt2 separation fails"
                    );
                }
                for &x in &own {
                    let xp = disc.points[x as usize];
                    assert!(
                        (xp - src.center).norm() >= s2 * eps[i] * d_l / slack,
                        "eps separation fails"
                    );
                }
            }
        }
    }

    #[test]
    fn far_counts_reproduce_reference_table() {
        // the published experiment's square is [-2.5, 1.5] x [-2, 2]
        let disc = discretize(&kite(), 500, |_| Complex64::new(1.0, 0.0)).unwrap();
        let tree = build_with_center(&disc, Point::new(-0.5, 0.0), 4.0, 6).unwrap();
        let lists = interaction_lists(&tree);
        let fc = far_counts(&tree, &lists, 0); // x_1
        assert_eq!((fc.n, fc.i_max), ([980, 0, 0], 0));
        let fc = far_counts(&tree, &lists, 31); // x_32
        assert_eq!((fc.n, fc.i_max), ([971, 8, 0], 1));
        let fc = far_counts(&tree, &lists, 93); // x_94
        assert_eq!((fc.n, fc.i_max), ([979, 0, 4], 2));
    }

    #[test]
    fn paper_tree_partition_property() {
        let disc = discretize(&kite(), 500, |_| Complex64::new(1.0, 0.0)).unwrap();
        let tree = build_with_center(&disc, Point::new(-0.5, 0.0), 4.0, 6).unwrap();
        let lists = interaction_lists(&tree);
        assert!(!lists.deep_near_pairs.is_empty());
        for i in (0..disc.len()).step_by(7) {
            let leaf = tree.point_leaf[i];
            let mut seen = vec![0u8; disc.len()];
            for &j in &lists.near_points(&tree, leaf) {
                seen[j as usize] += 1;
            }
            for id in tree.chain_of_point(i) {
                for e in &lists.entries[id] {
                    let mut pts = Vec::new();
                    collect_points(&tree, e.source, &mut pts);
                    for j in pts {
                        seen[j as usize] += 1;
                    }
                }
            }
            assert!(seen.iter().all(|&c| c == 1), "partition violated at {i}");
        }
    }

    #[test]
    fn level_distance_values() {
        assert!((level_distance(4.0, 2) - 2f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((level_distance(4.0, 3) - 2f64.sqrt() / 8.0).abs() < 1e-15);
        // d_2 = sqrt2 d / 16
        let d = 7.3;
        assert!((level_distance(d, 2) - 2f64.sqrt() * d / 16.0).abs() < 1e-15);
    }

    #[test]
    fn kite_leaf_cap_respected() {
        let disc = discretize(&kite(), 500, |_| Complex64::new(1.0, 0.0)).unwrap();
        let tree = build(&disc, 4.0, 6).unwrap();
        for c in &tree.cells {
            if c.is_leaf {
                assert!(c.point_indices.len() <= 6);
            } else {
                assert!(c.subtree_points > 6);
            }
        }
        // adaptive: level offsets 1 and 2 both occur on this geometry
        let lists = interaction_lists(&tree);
        let mut offsets = [false; 3];
        for e in lists.entries.iter().flatten() {
            offsets[e.level_diff as usize] = true;
        }
        assert!(offsets[0] && offsets[1] && offsets[2], "{offsets:?}");
    }

    #[test]
    fn dump_csv_shape() {
        let disc = discretize(&circle(1.0), 8, |_| Complex64::new(1.0, 0.0)).unwrap();
        let tree = build(&disc, 4.0, 2).unwrap();
        let dump = tree.dump_csv();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(
            lines[0],
            "cell_id,level,cx,cy,half_width,parent,is_leaf,n_points"
        );
        assert_eq!(lines.len(), tree.cells.len() + 1);
    }
}
