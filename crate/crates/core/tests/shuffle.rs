mod common;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nbqc::construct::index_subgroup;
use nbqc::decode::{
    build_layer_schedule, channel_reliability, DecoderConfig, LayeredDecoder, Partition,
};
use nbqc::shuffle::route::{route_groups, unified_class1_via_benes};
use nbqc::shuffle::{
    build_index_matrix, check_alignment, derive_index_matrix, route_schedule, schedule_class1,
    BenesNetwork, ShuffledDecoder, SlotPlan, VnuPermutation,
};
use nbqc::{Code, CodeSpec, Field, Gf};

#[test]
fn benes_routes_random_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 1..=6 {
        let w = 1usize << k;
        for _ in 0..100 {
            let mut p: Vec<usize> = (0..w).collect();
            p.shuffle(&mut rng);
            let net = BenesNetwork::route(&p).unwrap();
            assert_eq!(net.realized(), p);
            assert_eq!(net.stages(), 2 * k - 1);
            assert_eq!(net.switches(), (2 * k - 1) * w / 2);
        }
    }
}

#[test]
fn padded_widths_route_too() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for w in [3usize, 5, 7, 12, 20, 33] {
        for _ in 0..20 {
            let mut p: Vec<usize> = (0..w).collect();
            p.shuffle(&mut rng);
            let (net, ok) = route_groups(&VnuPermutation::new(p.clone()).unwrap()).unwrap();
            assert!(ok);
            assert_eq!(net.width(), w.next_power_of_two());
            assert_eq!(&net.realized()[..w], &p[..]);
        }
    }
    let u = unified_class1_via_benes(20, 64, 7).unwrap();
    assert!(u.verified);
    assert_eq!((u.padded_width, u.padded_switches), (32, 144));
}

#[test]
fn index_matrices_are_symmetric_latin_squares() {
    for t in 0..=5u32 {
        let n = 1usize << t;
        let m = build_index_matrix(n).unwrap();
        assert!(m.is_symmetric() && m.row0_is_identity());
        for i in 0..n {
            for j in 0..n {
                assert_eq!(m.get(i, m.get(i, j)), j);
            }
        }
    }
    let f = Field::new(8).unwrap();
    for t in 1..=5u32 {
        let basis: Vec<u32> = (0..t).collect();
        let d = derive_index_matrix(&f, &index_subgroup(&f, &basis).unwrap()).unwrap();
        assert!(d.is_symmetric() && d.row0_is_identity(), "t = {t}");
    }
}

#[test]
fn class1_transition_is_layer_independent() {
    for spec in common::class1_specs() {
        let code = Code::build(&spec).unwrap();
        let s = schedule_class1(spec.rho, code.field.q(), spec.c).unwrap();
        let plan = SlotPlan::for_code(&code, Partition::LayerI).unwrap();
        for t in 0..plan.layers() - 1 {
            assert_eq!(plan.transition(t), s, "{spec:?}");
        }
    }
}

fn aligned_codes() -> Vec<Code> {
    [
        CodeSpec::class1(2, 1, 3, 2, 3),
        CodeSpec::class1(2, 1, 3, 3, 3),
        CodeSpec::class1(3, 7, 1, 3, 7),
        CodeSpec::class1(4, 3, 5, 2, 5),
        CodeSpec::class2(2, 1, 2, 4),
        CodeSpec::class2(3, 1, 4, 8),
        CodeSpec::class2(4, 2, 3, 16),
    ]
    .iter()
    .map(|s| Code::build(s).unwrap())
    .collect()
}

#[test]
fn physically_moved_decoding_matches_direct_decoding() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for code in aligned_codes() {
        for part in [Partition::LayerI, Partition::LayerII] {
            let sched = build_layer_schedule(&code.h, part).unwrap();
            let plan = SlotPlan::for_code(&code, part).unwrap();
            assert!(
                check_alignment(&code, &sched, &plan).is_none(),
                "{:?}",
                code.spec
            );
            let report = route_schedule(&code, part).unwrap();
            assert!(report.all_verified() && report.misalignment.is_none());
            let cfg = DecoderConfig {
                max_iter: 3,
                early_stop: false,
                trace: true,
                ..DecoderConfig::default()
            };
            let moved = ShuffledDecoder::new(&code, part, cfg.clone()).unwrap();
            let direct = LayeredDecoder::new(&code.field, &code.h, &sched, cfg).unwrap();
            for _ in 0..5 {
                let zero = vec![Gf::ZERO; code.h.cols()];
                let ch = channel_reliability(&code.field, &zero, 0.8, &mut rng).unwrap();
                assert_eq!(moved.decode(&ch).unwrap(), direct.decode(&ch).unwrap());
            }
        }
    }
}

#[test]
fn misaligned_class1_width_is_reported() {
    let code = Code::build(&CodeSpec::class1(4, 3, 5, 2, 7)).unwrap();
    let report = route_schedule(&code, Partition::LayerI).unwrap();
    assert!(report.misalignment.is_some());
    assert!(ShuffledDecoder::new(&code, Partition::LayerI, DecoderConfig::default()).is_err());
}
