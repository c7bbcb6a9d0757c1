//! Test-side oracles written without the library's field tables.
#![allow(dead_code)]

use nbqc::{Code, CodeSpec};

/// Carry-less multiply reduced by `poly` (bit `m` set).
pub fn slow_mul(a: u32, b: u32, m: u32, poly: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    for bit in 0..m {
        if b >> bit & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= poly;
        }
    }
    acc
}

/// `α^k` by repeated multiplication by `x`.
pub fn slow_alpha(k: usize, m: u32, poly: u32) -> u32 {
    (0..k).fold(1, |x, _| slow_mul(x, 2, m, poly))
}

pub fn slow_pow(a: u32, k: usize, m: u32, poly: u32) -> u32 {
    (0..k).fold(1, |x, _| slow_mul(x, a, m, poly))
}

/// Span of `α^e` for `e` in `exps`, zero first, then by number of terms and
/// lexicographic exponent list.
pub fn ordered_span(exps: &[u32], m: u32, poly: u32) -> Vec<u32> {
    let mut subsets: Vec<Vec<u32>> = (0u32..1 << exps.len())
        .map(|mask| {
            exps.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .iter()
        .map(|s| {
            s.iter()
                .fold(0, |acc, &e| acc ^ slow_alpha(e as usize, m, poly))
        })
        .collect()
}

/// Class-I base matrix entry `δ^{j-i} β^k + β^l` at block `(i, j)`,
/// position `(k, l)`, with `β = α^c` and `δ = α^n`.
pub fn class1_entry(
    (m, poly): (u32, u32),
    (c, n): (usize, usize),
    (i, j, k, l): (usize, usize, usize, usize),
) -> u32 {
    let q1 = (1usize << m) - 1;
    let d_exp = (n * ((j + c - i) % c)) % q1;
    let d = slow_alpha(d_exp, m, poly);
    let bk = slow_alpha(c * k % q1, m, poly);
    let bl = slow_alpha(c * l % q1, m, poly);
    slow_mul(d, bk, m, poly) ^ bl
}

/// The codes every criterion runs over.
pub fn class1_specs() -> Vec<CodeSpec> {
    vec![
        CodeSpec::class1(2, 1, 3, 2, 3),
        CodeSpec::class1(3, 7, 1, 3, 7),
        CodeSpec::class1(4, 3, 5, 4, 10),
        CodeSpec::class1(6, 7, 9, 10, 20),
    ]
}

pub fn class2_specs() -> Vec<CodeSpec> {
    vec![
        CodeSpec::class2(2, 1, 2, 4),
        CodeSpec::class2(3, 1, 4, 8),
        CodeSpec::class2(4, 2, 8, 16),
        CodeSpec::class2(5, 2, 16, 32),
    ]
}

pub fn all_specs() -> Vec<CodeSpec> {
    let mut v = class1_specs();
    v.extend(class2_specs());
    v
}

pub fn gf4_class1() -> Code {
    Code::build(&CodeSpec::class1(2, 1, 3, 2, 3)).unwrap()
}

pub fn gf4_class2() -> Code {
    Code::build(&CodeSpec::class2(2, 1, 2, 4)).unwrap()
}
