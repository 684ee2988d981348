use legrid_core::crossing::FramedPairState;
use legrid_core::invariants::{classical_all, RelativeInvariants};
use legrid_core::random::random_link;
use legrid_core::{relative_invariants, ComponentId, GridDiagram, GridError, OrientationFlag, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(g: &GridDiagram, k: usize, j: usize, flag: OrientationFlag) -> RelativeInvariants {
    relative_invariants(g, ComponentId(k), ComponentId(j), flag).unwrap()
}

fn flags() -> [OrientationFlag; 4] {
    let plus = OrientationFlag::default();
    let minus = OrientationFlag::with_surface(Sign::Minus);
    [plus, minus, plus.flipped(), minus.flipped()]
}

#[test]
fn split_unknots_have_zero_triple() {
    let g = GridDiagram::new(4, vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
    for flag in flags() {
        assert_eq!(rel(&g, 0, 1, flag).triple(), (0, 0, 0));
    }
}

#[test]
fn antisymmetry_and_orientation_flips() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let comps = rng.gen_range(2..=3);
        let g = random_link(&mut rng, 4..=10, comps);
        for flag in flags() {
            let kj = rel(&g, 0, 1, flag).triple();
            let jk = rel(&g, 1, 0, flag).triple();
            assert_eq!(kj, (-jk.0, -jk.1, -jk.2));
            let f = rel(&g, 0, 1, flag.flipped()).triple();
            assert_eq!(f, (kj.0, -kj.1, -kj.2));
        }
    }
}

#[test]
fn additivity_over_three_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let g = random_link(&mut rng, 6..=10, 3);
        for flag in flags() {
            for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let ab = rel(&g, a, b, flag).triple();
                let bc = rel(&g, b, c, flag).triple();
                let ac = rel(&g, a, c, flag).triple();
                assert_eq!(ac, (ab.0 + bc.0, ab.1 + bc.1, ab.2 + bc.2));
            }
        }
    }
}

#[test]
fn relative_values_follow_classical_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let g = random_link(&mut rng, 4..=10, 2);
        let c = classical_all(&g).unwrap();
        let r = rel(&g, 0, 1, OrientationFlag::default());
        assert_eq!(r.tb_rel, c[0].tb - c[1].tb);
        assert_eq!(r.r_rel, c[0].r - c[1].r);
        assert_eq!(r.sl_rel, c[0].sl_pos - c[1].sl_pos);
        assert_eq!(r.sl_rel, r.tb_rel - r.r_rel);
    }
}

#[test]
fn bad_pairs_are_rejected() {
    let g = GridDiagram::new(4, vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
    let flag = OrientationFlag::default();
    assert!(relative_invariants(&g, ComponentId(0), ComponentId(0), flag).is_err());
    let err = relative_invariants(&g, ComponentId(0), ComponentId(2), flag).unwrap_err();
    assert_eq!(err.to_string(), GridError::UnknownComponent(2).to_string());
}

#[test]
fn framed_state_reproduces_grid_triple() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..100 {
        let g = random_link(&mut rng, 4..=10, 2);
        for flag in flags() {
            let s = FramedPairState::from_grid(&g, ComponentId(0), ComponentId(1), flag).unwrap();
            assert_eq!(s.triple(), rel(&g, 0, 1, flag).triple());
        }
    }
}
