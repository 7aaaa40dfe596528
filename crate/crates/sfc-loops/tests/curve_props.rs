//! Curve mapping properties checked against independent reference
//! constructions.

mod common;

use proptest::prelude::*;
use sfc_loops::curve::{CurveFamily, CurveSpec, GridPoint};

#[test]
fn hilbert_2d_matches_recursive_construction() {
    for k in 0..=6u32 {
        let spec = CurveSpec::new(CurveFamily::Hilbert, 2, k).unwrap();
        let oracle = common::hilbert_points_2d(k);
        assert_eq!(oracle.len() as u64, spec.cells());
        for (idx, &(x, y)) in oracle.iter().enumerate() {
            let p = spec.index_to_point(idx as u64).unwrap();
            assert_eq!(p.coords(), &[x, y], "k={k} idx={idx}");
        }
    }
}

#[test]
fn peano_2d_matches_recursive_construction() {
    for k in 0..=4u32 {
        let spec = CurveSpec::new(CurveFamily::Peano, 2, k).unwrap();
        let oracle = common::peano_points_2d(k);
        assert_eq!(oracle.len() as u64, spec.cells());
        for (idx, &(x, y)) in oracle.iter().enumerate() {
            let p = spec.index_to_point(idx as u64).unwrap();
            assert_eq!(p.coords(), &[x, y], "k={k} idx={idx}");
        }
    }
}

#[test]
fn spec_examples() {
    // Hilbert d=2 k=1: origin start and full motif.
    let h1 = CurveSpec::new(CurveFamily::Hilbert, 2, 1).unwrap();
    let motif: Vec<Vec<u64>> = (0..4)
        .map(|i| h1.index_to_point(i).unwrap().coords().to_vec())
        .collect();
    assert_eq!(motif, vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![1, 0]]);

    // Z-order d=2 k=1: all-ones index interleaves to (1,1).
    let z1 = CurveSpec::new(CurveFamily::ZOrder, 2, 1).unwrap();
    assert_eq!(z1.index_to_point(3).unwrap().coords(), &[1, 1]);

    // Z-order d=2 k=2: zero interleaves to zero.
    let z2 = CurveSpec::new(CurveFamily::ZOrder, 2, 2).unwrap();
    assert_eq!(z2.point_to_index(&GridPoint::new(&[0, 0])).unwrap(), 0);

    // Hilbert d=2 k=2 round-trip through index 7.
    let h2 = CurveSpec::new(CurveFamily::Hilbert, 2, 2).unwrap();
    let p7 = h2.index_to_point(7).unwrap();
    assert_eq!(h2.point_to_index(&p7).unwrap(), 7);
}

#[test]
fn bijectivity_small_grids() {
    let specs = [
        CurveSpec::new(CurveFamily::Hilbert, 2, 4).unwrap(),
        CurveSpec::new(CurveFamily::Hilbert, 3, 2).unwrap(),
        CurveSpec::new(CurveFamily::ZOrder, 2, 4).unwrap(),
        CurveSpec::new(CurveFamily::ZOrder, 4, 2).unwrap(),
        CurveSpec::new(CurveFamily::Peano, 2, 2).unwrap(),
    ];
    for spec in &specs {
        let mut seen = vec![false; spec.cells() as usize];
        for idx in 0..spec.cells() {
            let p = spec.index_to_point(idx).unwrap();
            let mut flat = 0u64;
            for &c in p.coords() {
                assert!(c < spec.side());
                flat = flat * spec.side() + c;
            }
            assert!(!seen[flat as usize], "repeat cell at index {idx}");
            seen[flat as usize] = true;
            assert_eq!(spec.point_to_index(&p).unwrap(), idx);
        }
        assert!(seen.iter().all(|&s| s));
    }
}

#[test]
fn hilbert_and_peano_l1_continuity_zorder_not() {
    for (family, orders) in [
        (CurveFamily::Hilbert, vec![1u32, 2, 3, 4, 5, 6]),
        (CurveFamily::Peano, vec![1, 2, 3]),
    ] {
        for k in orders {
            let spec = CurveSpec::new(family, 2, k).unwrap();
            let mut prev = spec.index_to_point(0).unwrap();
            for idx in 1..spec.cells() {
                let p = spec.index_to_point(idx).unwrap();
                let l1: u64 = p
                    .coords()
                    .iter()
                    .zip(prev.coords())
                    .map(|(a, b)| a.abs_diff(*b))
                    .sum();
                assert_eq!(l1, 1, "{family:?} k={k} idx={idx}");
                prev = p;
            }
        }
    }
    // Z-order takes a long jump already on the 2x2 grid: (1,1) -> (1,0)
    // would be needed for continuity but index 1 -> 2 jumps diagonally.
    let z = CurveSpec::new(CurveFamily::ZOrder, 2, 1).unwrap();
    let a = z.index_to_point(1).unwrap();
    let b = z.index_to_point(2).unwrap();
    let l1: u64 = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| x.abs_diff(*y))
        .sum();
    assert!(l1 > 1);
}

#[test]
fn monotone_residual_slab_follows_2d_curve() {
    // d=3, monotone_dims={2}: within each fixed third coordinate the
    // residual order must equal the 2-D curve over dims {0,1}.
    let spec = CurveSpec::new(CurveFamily::Hilbert, 3, 2)
        .unwrap()
        .with_monotone_dims(&[2])
        .unwrap();
    let flat2d = CurveSpec::new(CurveFamily::Hilbert, 2, 2).unwrap();
    let side = spec.side();
    let mut keyed: Vec<(u64, [u64; 3])> = Vec::new();
    for x in 0..side {
        for y in 0..side {
            for z in 0..side {
                let key = spec
                    .monotone_index(&GridPoint::new(&[x, y, z]))
                    .unwrap()
                    .0;
                keyed.push((key, [x, y, z]));
            }
        }
    }
    keyed.sort();
    let per_slab = (side * side) as usize;
    for (slab, chunk) in keyed.chunks(per_slab).enumerate() {
        for (pos, &(_, [x, y, z])) in chunk.iter().enumerate() {
            assert_eq!(z, slab as u64, "slab-major violated");
            let want = flat2d.index_to_point(pos as u64).unwrap();
            assert_eq!(&[x, y], want.coords(), "slab {slab} pos {pos}");
        }
    }
}

#[test]
fn rejects_overflowing_grid() {
    // 2^64 cells would overflow the 64-bit index width.
    assert!(CurveSpec::new(CurveFamily::ZOrder, 2, 31).is_ok());
    assert!(CurveSpec::new(CurveFamily::ZOrder, 2, 32).is_err());
    assert!(CurveSpec::new(CurveFamily::Hilbert, 6, 11).is_err());
}

fn arb_spec() -> impl Strategy<Value = CurveSpec> {
    prop_oneof![
        (2usize..=4, 1u32..=3).prop_map(|(d, k)| CurveSpec::new(CurveFamily::Hilbert, d, k)
            .unwrap()),
        (2usize..=4, 1u32..=3).prop_map(|(d, k)| CurveSpec::new(CurveFamily::ZOrder, d, k)
            .unwrap()),
        (1u32..=2).prop_map(|k| CurveSpec::new(CurveFamily::Peano, 2, k).unwrap()),
    ]
}

proptest! {
    #[test]
    fn roundtrip_both_directions(spec in arb_spec(), raw in 0u64..1 << 16) {
        let idx = raw % spec.cells();
        let p = spec.index_to_point(idx).unwrap();
        prop_assert_eq!(spec.point_to_index(&p).unwrap(), idx);
    }

    #[test]
    fn stepper_lands_on_decode(spec in arb_spec(), s in 0u64..256, n in 0u64..256) {
        let start = s % spec.cells();
        let steps = n.min(spec.cells() - 1 - start);
        let mut st = spec.stepper(start).unwrap();
        for _ in 0..steps {
            prop_assert!(st.advance());
        }
        let want = spec.index_to_point(start + steps).unwrap();
        prop_assert_eq!(st.point(), want);
    }
}
