mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{gf4_class1, gf4_class2, slow_mul};
use nbqc::decode::{
    build_layer_schedule, channel_reliability, run_monte_carlo, sigma_for_ebn0, DecoderConfig,
    LayeredDecoder, MessageVec, Partition, Quantizer,
};
use nbqc::{Code, Gf, ParityCheck};

/// Row-serial Min-Max written straight from the update equations, with a
/// brute-force check node. Returns the posteriors after every iteration.
fn reference_decode(
    code: &Code,
    h: &ParityCheck,
    channel: &[MessageVec],
    iters: usize,
    permute: bool,
) -> Vec<Vec<Vec<f64>>> {
    let (m, poly) = (code.spec.m, code.field.poly());
    let q = 1usize << m;
    let norm = |v: &mut Vec<f64>| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        v.iter_mut().for_each(|x| *x -= lo);
    };
    let mut post: Vec<Vec<f64>> = channel
        .iter()
        .map(|c| {
            let mut v = c.as_slice().to_vec();
            norm(&mut v);
            v
        })
        .collect();
    let mut stored: Vec<Vec<Vec<f64>>> = h
        .row_entries()
        .iter()
        .map(|r| vec![vec![0.0; q]; r.len()])
        .collect();
    let mut out = Vec::new();
    for _ in 0..iters {
        for (r, st) in stored.iter_mut().enumerate() {
            let row = h.row(r);
            let dc = row.len();
            assert!(dc >= 2);
            let ext: Vec<Vec<f64>> = row
                .iter()
                .enumerate()
                .map(|(e, &(c, _))| {
                    let mut v: Vec<f64> = (0..q).map(|a| post[c][a] - st[e][a]).collect();
                    norm(&mut v);
                    v
                })
                .collect();
            let label = |e: usize, x: usize| -> usize {
                if permute {
                    slow_mul(u32::from(row[e].1 .0), x as u32, m, poly) as usize
                } else {
                    x
                }
            };
            // Checked-domain messages: entry h·x holds ext[x].
            let chk: Vec<Vec<f64>> = (0..dc)
                .map(|e| {
                    let mut v = vec![0.0; q];
                    for x in 0..q {
                        v[label(e, x)] = ext[e][x];
                    }
                    v
                })
                .collect();
            for v in 0..dc {
                let others: Vec<usize> = (0..dc).filter(|&u| u != v).collect();
                let mut best = vec![f64::INFINITY; q];
                let total = q.pow(others.len() as u32);
                for code_idx in 0..total {
                    let mut rest = code_idx;
                    let (mut sum, mut worst) = (0usize, f64::NEG_INFINITY);
                    for &u in &others {
                        let a = rest % q;
                        rest /= q;
                        sum ^= a;
                        worst = worst.max(chk[u][a]);
                    }
                    best[sum] = best[sum].min(worst);
                }
                norm(&mut best);
                let r_new: Vec<f64> = (0..q).map(|x| best[label(v, x)]).collect();
                let mut p: Vec<f64> = (0..q).map(|a| ext[v][a] + r_new[a]).collect();
                norm(&mut p);
                post[row[v].0] = p;
                st[v] = r_new;
            }
        }
        out.push(post.clone());
    }
    out
}

fn noisy_frames(code: &Code, n: usize, ebn0: f64, seed: u64) -> Vec<Vec<MessageVec>> {
    let rate = 1.0 - code.h.rows() as f64 / code.h.cols() as f64;
    let sigma = sigma_for_ebn0(ebn0, rate).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = vec![Gf::ZERO; code.h.cols()];
    (0..n)
        .map(|_| channel_reliability(&code.field, &zero, sigma, &mut rng).unwrap())
        .collect()
}

fn traced(max_iter: usize) -> DecoderConfig {
    DecoderConfig {
        max_iter,
        early_stop: false,
        trace: true,
        ..DecoderConfig::default()
    }
}

fn as_bits(trace: &[Vec<MessageVec>]) -> Vec<Vec<Vec<u64>>> {
    trace
        .iter()
        .map(|it| {
            it.iter()
                .map(|m| m.as_slice().iter().map(|x| x.to_bits()).collect())
                .collect()
        })
        .collect()
}

fn ref_bits(trace: &[Vec<Vec<f64>>]) -> Vec<Vec<Vec<u64>>> {
    trace
        .iter()
        .map(|it| {
            it.iter()
                .map(|m| m.iter().map(|x| x.to_bits()).collect())
                .collect()
        })
        .collect()
}

#[test]
fn row_serial_reference_matches_both_partitions() {
    for code in [gf4_class1(), gf4_class2()] {
        for ch in noisy_frames(&code, 20, 1.5, 11) {
            let want = ref_bits(&reference_decode(&code, &code.h, &ch, 5, true));
            for part in [Partition::LayerII, Partition::LayerI] {
                let sched = build_layer_schedule(&code.h, part).unwrap();
                let dec = LayeredDecoder::new(&code.field, &code.h, &sched, traced(5)).unwrap();
                let got = dec.decode(&ch).unwrap();
                assert_eq!(as_bits(&got.trace), want, "{part:?}");
            }
        }
    }
}

#[test]
fn unit_labels_need_no_permutation() {
    for code in [gf4_class1(), gf4_class2()] {
        let rows: Vec<Vec<(usize, Gf)>> = code
            .h
            .row_entries()
            .iter()
            .map(|r| r.iter().map(|&(c, _)| (c, Gf::ONE)).collect())
            .collect();
        let ones = ParityCheck::from_rows(code.h.block_size(), code.h.cols(), rows).unwrap();
        let sched = build_layer_schedule(&ones, Partition::LayerII).unwrap();
        let dec = LayeredDecoder::new(&code.field, &ones, &sched, traced(4)).unwrap();
        for ch in noisy_frames(&code, 10, 1.0, 3) {
            let want = ref_bits(&reference_decode(&code, &ones, &ch, 4, false));
            assert_eq!(as_bits(&dec.decode(&ch).unwrap().trace), want);
        }
    }
}

#[test]
fn fine_quantization_keeps_hard_decisions() {
    for code in [gf4_class1(), gf4_class2()] {
        let sched = build_layer_schedule(&code.h, Partition::LayerI).unwrap();
        let plain =
            LayeredDecoder::new(&code.field, &code.h, &sched, DecoderConfig::default()).unwrap();
        let quant = LayeredDecoder::new(
            &code.field,
            &code.h,
            &sched,
            DecoderConfig {
                quant: Some(Quantizer::new(10, 4).unwrap()),
                ..DecoderConfig::default()
            },
        )
        .unwrap();
        for ch in noisy_frames(&code, 100, 6.0, 17) {
            assert_eq!(
                plain.decode(&ch).unwrap().symbols,
                quant.decode(&ch).unwrap().symbols
            );
        }
    }
}

#[test]
fn monte_carlo_is_seed_deterministic_and_thread_independent() {
    let code = gf4_class2();
    let cfg = DecoderConfig {
        seed: 42,
        ..DecoderConfig::default()
    };
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                run_monte_carlo(
                    &code.field,
                    &code.h,
                    &[1.0, 3.0],
                    300,
                    Partition::LayerI,
                    &cfg,
                )
                .unwrap()
            })
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(1));
    let clean = run_monte_carlo(
        &code.field,
        &code.h,
        &[f64::INFINITY],
        20,
        Partition::LayerII,
        &cfg,
    )
    .unwrap();
    assert_eq!(clean[0].frame_errors, 0);
}

#[test]
fn messages_stay_normalized() {
    let code = gf4_class1();
    let sched = build_layer_schedule(&code.h, Partition::LayerI).unwrap();
    let dec = LayeredDecoder::new(&code.field, &code.h, &sched, traced(3)).unwrap();
    for ch in noisy_frames(&code, 10, 0.5, 5) {
        for it in dec.decode(&ch).unwrap().trace {
            assert!(it.iter().all(MessageVec::is_normalized));
        }
    }
}
