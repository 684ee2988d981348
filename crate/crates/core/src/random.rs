//! Seeded generators for random grid diagrams.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::grid::{FrontConvention, GridDiagram, Marker};
use crate::moves::{apply_move, component_image, Axis, Direction, GridMove, Quadrant};

/// A uniformly random valid grid of size `n >= 2`.
pub fn random_grid<R: Rng + ?Sized>(rng: &mut R, n: usize) -> GridDiagram {
    assert!(n >= 2, "grids need size at least 2");
    let mut xs: Vec<usize> = (0..n).collect();
    let mut os: Vec<usize> = (0..n).collect();
    xs.shuffle(rng);
    loop {
        os.shuffle(rng);
        if xs.iter().zip(&os).all(|(x, o)| x != o) {
            return GridDiagram::new(n, xs, os).expect("valid by construction");
        }
    }
}

/// A random grid with size in `sizes` and exactly `components` components.
///
/// Sampled by rejection; small links are common enough among random grids
/// that this terminates quickly for `components <= 3` and sizes up to 10.
pub fn random_link<R: Rng + ?Sized>(
    rng: &mut R,
    sizes: std::ops::RangeInclusive<usize>,
    components: usize,
) -> GridDiagram {
    assert!(*sizes.end() >= 2 * components, "size range too small");
    let lo = (*sizes.start()).max(2 * components);
    loop {
        let n = rng.gen_range(lo..=*sizes.end());
        let g = random_grid(rng, n);
        if g.component_count() == components {
            return g;
        }
    }
}

/// A random knot (one component) with size in `sizes`.
pub fn random_knot<R: Rng + ?Sized>(rng: &mut R, sizes: std::ops::RangeInclusive<usize>) -> GridDiagram {
    random_link(rng, sizes, 1)
}

/// Every valid grid of size `n`, in lexicographic order of `(xs, os)`.
pub fn all_grids(n: usize) -> Vec<GridDiagram> {
    let perms = permutations(n);
    let mut out = Vec::new();
    for xs in &perms {
        for os in &perms {
            if xs.iter().zip(os).all(|(x, o)| x != o) {
                out.push(GridDiagram::new(n, xs.clone(), os.clone()).expect("valid"));
            }
        }
    }
    out
}

/// A random legal isotopy move on `g`: a commutation of non-interleaved
/// lines, a translation that keeps every component's cusp count, or an
/// isotopy-subtype stabilization.
pub fn random_isotopy_move<R: Rng + ?Sized>(rng: &mut R, g: &GridDiagram) -> GridMove {
    let n = g.size();
    loop {
        let mv = match rng.gen_range(0..3) {
            0 => GridMove::Commute {
                axis: if rng.gen() { Axis::Row } else { Axis::Col },
                index: rng.gen_range(0..n),
            },
            1 => GridMove::Translate(
                *[Direction::Up, Direction::Down, Direction::Left, Direction::Right]
                    .choose(rng)
                    .expect("non-empty"),
            ),
            _ => {
                let marker = if rng.gen() { Marker::X } else { Marker::O };
                let empty = *[Quadrant::NE, Quadrant::SW].choose(rng).expect("non-empty");
                GridMove::Stabilize {
                    marker,
                    column: rng.gen_range(0..n),
                    empty,
                }
            }
        };
        let Ok((next, map)) = apply_move(g, &mv) else {
            continue;
        };
        if matches!(mv, GridMove::Translate(_)) && !keeps_cusps(g, &next, &map) {
            continue;
        }
        return mv;
    }
}

fn keeps_cusps(old: &GridDiagram, new: &GridDiagram, map: &[Option<usize>]) -> bool {
    let before = old.to_front(FrontConvention::default());
    let after = new.to_front(FrontConvention::default());
    component_image(old, new, map)
        .iter()
        .enumerate()
        .all(|(c, img)| before.cusps[c].total() == after.cusps[img.0].total())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}
