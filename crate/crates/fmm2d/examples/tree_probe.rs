//! Scratch probe: level-diff histogram and representative far counts for
//! candidate root-square conventions.

use fmm2d::boundary::{discretize, kite};
use fmm2d::geom::Point;
use fmm2d::quadtree;
use num_complex::Complex64;

fn main() {
    let disc = discretize(&kite(), 500, |_| Complex64::new(1.0, 0.0)).unwrap();
    for (label, center) in [
        ("bbox-center", None),
        ("origin", Some(Point::new(0.0, 0.0))),
        ("(-0.25, 0)", Some(Point::new(-0.25, 0.0))),
        ("(-0.5, 0)", Some(Point::new(-0.5, 0.0))),
    ] {
        let tree = match center {
            None => quadtree::build(&disc, 4.0, 6).unwrap(),
            Some(c) => quadtree::build_with_center(&disc, c, 4.0, 6).unwrap(),
        };
        let lists = quadtree::interaction_lists(&tree);
        let mut hist = [0usize; 3];
        for e in lists.entries.iter().flatten() {
            hist[e.level_diff as usize] += 1;
        }
        print!(
            "{label}: l_max={} cells={} diff-hist={hist:?} deep-near={} ",
            tree.l_max,
            tree.cells.len(),
            lists.deep_near_pairs.len()
        );
        for j in [1usize, 32, 94] {
            let fc = quadtree::far_counts(&tree, &lists, j - 1);
            print!("x{j}=({},{},{})/I{} ", fc.n[0], fc.n[1], fc.n[2], fc.i_max);
        }
        println!();
    }
}
