//! Min-Max messages and the check-node kernels.
//!
//! A message is a vector of `q` non-negative reliabilities indexed by the
//! polynomial-bit value of the field element; smaller means more likely and
//! the minimum is pinned to 0. Field addition on indices is XOR.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

#[derive(Debug, Clone, PartialEq)]
pub struct MessageVec(Vec<f64>);

impl MessageVec {
    pub fn new(vals: Vec<f64>) -> Self {
        MessageVec(vals)
    }

    pub fn zeros(q: usize) -> Self {
        MessageVec(vec![0.0; q])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Subtracts the minimum so that the smallest entry is exactly 0.
    pub fn normalize(&mut self) {
        let m = self.min();
        for v in &mut self.0 {
            *v -= m;
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Index of the smallest entry; ties go to the smallest index.
    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.0.iter().enumerate() {
            if v < self.0[best] {
                best = i;
            }
        }
        best
    }

    pub fn is_normalized(&self) -> bool {
        self.0.iter().all(|v| v.is_finite() && *v >= 0.0) && self.min() == 0.0
    }
}

impl Index<usize> for MessageVec {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Variable domain to check domain: `out[h·x] = msg[x]`.
    Forward,
    /// Check domain back to variable domain: `out[x] = msg[h·x]`.
    Backward,
}

/// Applies the edge-label action of `h` to a message.
pub fn permute_message(
    field: &Field,
    msg: &MessageVec,
    h: Gf,
    dir: Direction,
) -> Result<MessageVec> {
    if h.is_zero() {
        return Err(Error::ZeroElement);
    }
    let q = field.q();
    if msg.len() != q {
        return Err(Error::DimensionMismatch(format!(
            "message of length {} in GF({q})",
            msg.len()
        )));
    }
    let mut out = vec![0.0; q];
    for x in field.elements() {
        let hx = field.mul(h, x).index();
        match dir {
            Direction::Forward => out[hx] = msg.0[x.index()],
            Direction::Backward => out[x.index()] = msg.0[hx],
        }
    }
    Ok(MessageVec(out))
}

/// `C(a) = min over b ^ c = a of max(A(b), B(c))`.
fn combine(a: &[f64], b: &[f64]) -> Vec<f64> {
    let q = a.len();
    let mut out = vec![f64::INFINITY; q];
    for (x, &av) in a.iter().enumerate() {
        for (y, &bv) in b.iter().enumerate() {
            let v = av.max(bv);
            let slot = &mut out[x ^ y];
            if v < *slot {
                *slot = v;
            }
        }
    }
    out
}

fn check_inputs(inputs: &[MessageVec]) -> Result<usize> {
    if inputs.len() < 2 {
        return Err(Error::DegreeTooSmall(inputs.len()));
    }
    let q = inputs[0].len();
    if !q.is_power_of_two() || q < 2 || inputs.iter().any(|m| m.len() != q) {
        return Err(Error::DimensionMismatch(
            "check-node inputs of unequal or invalid length".into(),
        ));
    }
    Ok(q)
}

/// Min-Max check-node update in the permuted domain (constraint: the inputs
/// sum to zero). Output `v` excludes input `v`. Forward/backward partial
/// combinations keep the cost at `O(d_c · q²)`.
pub fn check_node_min_max(inputs: &[MessageVec]) -> Result<Vec<MessageVec>> {
    check_inputs(inputs)?;
    let dc = inputs.len();
    let mut fwd: Vec<Vec<f64>> = Vec::with_capacity(dc);
    fwd.push(inputs[0].0.clone());
    for i in 1..dc - 1 {
        let next = combine(&fwd[i - 1], &inputs[i].0);
        fwd.push(next);
    }
    let mut bwd: Vec<Vec<f64>> = vec![Vec::new(); dc];
    bwd[dc - 1] = inputs[dc - 1].0.clone();
    for i in (1..dc - 1).rev() {
        bwd[i] = combine(&bwd[i + 1], &inputs[i].0);
    }
    let out = (0..dc)
        .map(|v| {
            let vals = if v == 0 {
                bwd[1].clone()
            } else if v == dc - 1 {
                fwd[dc - 2].clone()
            } else {
                combine(&fwd[v - 1], &bwd[v + 1])
            };
            MessageVec(vals).normalized()
        })
        .collect();
    Ok(out)
}

/// Reference check-node update by direct enumeration of every configuration
/// of the other inputs. Limited to `q^(d_c - 1) <= 2^20`.
pub fn check_node_brute_force(inputs: &[MessageVec]) -> Result<Vec<MessageVec>> {
    let q = check_inputs(inputs)?;
    let dc = inputs.len();
    let configs = (q as u64).checked_pow(dc as u32 - 1).unwrap_or(u64::MAX);
    if configs > 1 << 20 {
        return Err(Error::OracleGuard(configs));
    }
    let mut out = Vec::with_capacity(dc);
    let mut digits = vec![0usize; dc - 1];
    for v in 0..dc {
        let others: Vec<&MessageVec> = inputs
            .iter()
            .enumerate()
            .filter(|(u, _)| *u != v)
            .map(|(_, m)| m)
            .collect();
        let mut best = vec![f64::INFINITY; q];
        digits.iter_mut().for_each(|d| *d = 0);
        for _ in 0..configs {
            let mut sum = 0usize;
            let mut worst = f64::NEG_INFINITY;
            for (m, &d) in others.iter().zip(&digits) {
                sum ^= d;
                worst = worst.max(m.0[d]);
            }
            if worst < best[sum] {
                best[sum] = worst;
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        out.push(MessageVec(best).normalized());
    }
    Ok(out)
}

/// Uniform unsigned fixed-point format with `bq` total and `bf` fraction bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quantizer {
    pub bq: u32,
    pub bf: u32,
}

impl Quantizer {
    pub fn new(bq: u32, bf: u32) -> Result<Self> {
        if bf >= bq || bq > 52 {
            return Err(Error::InvalidParameters(format!(
                "quantization needs bf < bq <= 52, got bq = {bq}, bf = {bf}"
            )));
        }
        Ok(Quantizer { bq, bf })
    }

    pub fn step(&self) -> f64 {
        (-(self.bf as f64)).exp2()
    }

    pub fn max_value(&self) -> f64 {
        ((1u64 << self.bq) - 1) as f64 * self.step()
    }

    pub fn apply(&self, x: f64) -> f64 {
        quantize(x, self.bq, self.bf)
    }

    pub fn apply_msg(&self, m: &mut MessageVec) {
        for v in &mut m.0 {
            *v = self.apply(*v);
        }
    }
}

/// Rounds to the nearest multiple of `2^-bf` (ties up) and saturates at
/// `(2^bq - 1)·2^-bf`.
pub fn quantize(x: f64, bq: u32, bf: u32) -> f64 {
    let scale = (bf as f64).exp2();
    let max_steps = ((1u64 << bq) - 1) as f64;
    let steps = (x * scale + 0.5).floor().clamp(0.0, max_steps);
    steps / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(v: &[f64]) -> MessageVec {
        MessageVec::new(v.to_vec())
    }

    #[test]
    fn permute_examples() {
        let f = Field::new(2).unwrap();
        let msg = mv(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(
            permute_message(&f, &msg, Gf::ONE, Direction::Forward).unwrap(),
            msg
        );
        let a = f.pow_alpha(1);
        let fwd = permute_message(&f, &msg, a, Direction::Forward).unwrap();
        // out[α²] = msg[α⁻¹·α²] = msg[α]
        assert_eq!(fwd[f.pow_alpha(2).index()], msg[a.index()]);
        assert_eq!(
            permute_message(&f, &fwd, a, Direction::Backward).unwrap(),
            msg
        );
        assert!(permute_message(&f, &msg, Gf::ZERO, Direction::Forward).is_err());
    }

    #[test]
    fn check_node_examples() {
        let a = mv(&[0.0, 1.0, 2.0, 3.0]);
        let b = mv(&[0.0, 3.0, 1.0, 2.0]);
        let c = mv(&[0.0, 0.0, 0.0, 0.0]);
        for f in [check_node_min_max, check_node_brute_force] {
            let out = f(&[a.clone(), b.clone(), c.clone()]).unwrap();
            assert_eq!(out[2], mv(&[0.0, 1.0, 1.0, 1.0]));
            let two = f(&[a.clone(), b.clone()]).unwrap();
            assert_eq!(two[1], a);
            assert_eq!(two[0], b);
            let zeros = f(&[c.clone(), c.clone(), c.clone()]).unwrap();
            assert!(zeros.iter().all(|m| *m == c));
            assert_eq!(f(std::slice::from_ref(&a)), Err(Error::DegreeTooSmall(1)));
        }
    }

    #[test]
    fn brute_force_guard() {
        let m = MessageVec::zeros(256);
        assert!(matches!(
            check_node_brute_force(&[m.clone(), m.clone(), m.clone(), m]),
            Err(Error::OracleGuard(_))
        ));
    }

    #[test]
    fn quantize_examples() {
        assert_eq!(quantize(0.0, 5, 1), 0.0);
        assert_eq!(quantize(100.0, 5, 1), 15.5);
        assert_eq!(quantize(1.3, 5, 1), 1.5);
        assert_eq!(quantize(1.25, 5, 1), 1.5);
        assert_eq!(quantize(1.2, 5, 1), 1.0);
        assert_eq!(quantize(0.75, 8, 2), 0.75);
        assert!(Quantizer::new(4, 4).is_err());
    }

    #[test]
    fn argmin_ties_go_low() {
        assert_eq!(mv(&[1.0, 0.0, 0.0, 2.0]).argmin(), 1);
        let mut m = mv(&[3.0, 2.0, 5.0, 2.0]);
        m.normalize();
        assert_eq!(m, mv(&[1.0, 0.0, 3.0, 0.0]));
        assert!(m.is_normalized());
    }
}
