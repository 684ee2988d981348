use legrid_core::invariants::classical_all;
use legrid_core::moves::{
    apply_move, apply_script, commute_tracked, component_image, destabilize, legendrian_stabilize_tracked,
    stabilization_kind, stabilize_tracked, translate_tracked, Axis, Direction, GridMove, MoveScript, Quadrant,
    StabilizationKind,
};
use legrid_core::random::{all_grids, random_grid, random_isotopy_move, random_link};
use legrid_core::{relative_invariants, ClassicalInvariants, ComponentId, GridDiagram, Marker, OrientationFlag, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn invariants(g: &GridDiagram) -> Vec<ClassicalInvariants> {
    classical_all(g).unwrap()
}

/// Invariants of the old components, read off the new diagram.
fn carried(old: &GridDiagram, new: &GridDiagram, map: &[Option<usize>]) -> Vec<ClassicalInvariants> {
    let after = invariants(new);
    component_image(old, new, map).iter().map(|c| after[c.0]).collect()
}

#[test]
fn stabilization_laws_on_random_diagrams() {
    for sign in [Sign::Plus, Sign::Minus] {
        let mut rng = ChaCha8Rng::seed_from_u64(if sign == Sign::Plus { 100 } else { 101 });
        for _ in 0..200 {
            let comps = rng.gen_range(1..=3);
            let g = random_link(&mut rng, 2..=9, comps);
            let k = ComponentId(rng.gen_range(0..comps));
            let before = invariants(&g);
            let s = legendrian_stabilize_tracked(&g, k, sign).unwrap();
            let after = carried(&g, &s.grid, &s.map);
            for c in 0..comps {
                let expected = if c == k.0 {
                    ClassicalInvariants::new(before[c].tb - 1, before[c].r + sign.value())
                } else {
                    before[c]
                };
                assert_eq!(after[c], expected, "{g:?} S{sign} on {k}");
            }
        }
    }
}

#[test]
fn relative_stabilization_laws() {
    let flag = OrientationFlag::default();
    for sign in [Sign::Plus, Sign::Minus] {
        let mut rng = ChaCha8Rng::seed_from_u64(if sign == Sign::Plus { 200 } else { 201 });
        for _ in 0..200 {
            let g = random_link(&mut rng, 4..=9, 2);
            let (k, j) = (ComponentId(0), ComponentId(1));
            let rel0 = relative_invariants(&g, k, j, flag).unwrap();

            let s = legendrian_stabilize_tracked(&g, k, sign).unwrap();
            let img = component_image(&g, &s.grid, &s.map);
            let rel1 = relative_invariants(&s.grid, img[0], img[1], flag).unwrap();
            assert_eq!(rel1.r_rel, rel0.r_rel + sign.value());
            assert_eq!(rel1.tb_rel, rel0.tb_rel - 1);

            let t = legendrian_stabilize_tracked(&s.grid, img[1], sign).unwrap();
            let img2 = component_image(&s.grid, &t.grid, &t.map);
            let rel2 = relative_invariants(&t.grid, img2[img[0].0], img2[img[1].0], flag).unwrap();
            assert_eq!(rel2.tb_rel, rel0.tb_rel, "{g:?}");
            assert_eq!(rel2.r_rel, rel0.r_rel);
        }
    }
}

#[test]
fn subtype_table_holds_on_random_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(2..=7);
        let g = random_grid(&mut rng, n);
        let before = invariants(&g);
        let column = rng.gen_range(0..n);
        for marker in [Marker::X, Marker::O] {
            for empty in Quadrant::ALL {
                let s = stabilize_tracked(&g, marker, column, empty).unwrap();
                let after = carried(&g, &s.grid, &s.map);
                let touched = g.component_of_column(column).0;
                let (dtb, dr) = match stabilization_kind(marker, empty) {
                    StabilizationKind::Isotopy => (0, 0),
                    StabilizationKind::Stabilization(sign) => (-1, sign.value()),
                };
                for c in 0..before.len() {
                    let (etb, er) = if c == touched { (dtb, dr) } else { (0, 0) };
                    assert_eq!(after[c].tb - before[c].tb, etb, "{g:?} {marker}:{empty}");
                    assert_eq!(after[c].r - before[c].r, er, "{g:?} {marker}:{empty}");
                }
            }
        }
    }
}

#[test]
fn destabilization_undoes_every_stabilization() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let g = random_grid(&mut rng, n);
        let column = rng.gen_range(0..n);
        for marker in [Marker::X, Marker::O] {
            for empty in Quadrant::ALL {
                let s = stabilize_tracked(&g, marker, column, empty).unwrap();
                assert_eq!(s.grid.size(), n + 1);
                assert_eq!(destabilize(&s.grid, s.doubled_column).unwrap(), g);
            }
        }
    }
}

#[test]
fn every_legal_commutation_preserves_invariants() {
    for n in 2..=5 {
        for g in all_grids(n) {
            let before = invariants(&g);
            for axis in [Axis::Row, Axis::Col] {
                for index in 0..n {
                    if let Ok((h, map)) = commute_tracked(&g, index, axis) {
                        assert_eq!(carried(&g, &h, &map), before, "{g:?} {axis} {index}");
                    }
                }
            }
        }
    }
}

#[test]
fn every_translation_preserves_invariants() {
    let dirs = [Direction::Up, Direction::Down, Direction::Left, Direction::Right];
    for n in 2..=5 {
        for g in all_grids(n) {
            let before = invariants(&g);
            for d in dirs {
                let (h, map) = translate_tracked(&g, d);
                assert_eq!(carried(&g, &h, &map), before, "{g:?} {d:?}");
            }
        }
    }
}

#[test]
fn random_isotopy_walks_preserve_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let flag = OrientationFlag::default();
    for _ in 0..10 {
        let comps = rng.gen_range(1..=3);
        let start = random_link(&mut rng, 2..=7, comps);
        let mut moves = Vec::new();
        let mut g = start.clone();
        for _ in 0..50 {
            // keep the walk from growing without bound
            let mv = loop {
                let mv = random_isotopy_move(&mut rng, &g);
                if g.size() < 12 || !matches!(mv, GridMove::Stabilize { .. }) {
                    break mv;
                }
            };
            g = apply_move(&g, &mv).unwrap().0;
            moves.push(mv);
        }
        let run = apply_script(&start, &MoveScript::from_moves(moves), None, flag).unwrap();
        let first = &run.trace[0];
        for step in &run.trace {
            assert_eq!(step.invariants, first.invariants, "{start:?}");
            assert_eq!(step.relative.map(|r| r.triple()), first.relative.map(|r| r.triple()));
        }
    }
}
