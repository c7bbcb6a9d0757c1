//! Beneš networks routed with the recursive looping algorithm.
//!
//! Layout for width `w = 2^k`: `2k - 1` stages of `w/2` two-by-two switches.
//! The outer input stage pairs terminals `(2i, 2i+1)` on switch `i`; output 0
//! of every outer switch feeds the upper half-size subnetwork. The upper
//! subnetwork owns switch indices `offset..offset + w/4` in the inner stages
//! and the lower one `offset + w/4..offset + w/2`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenesNetwork {
    width: usize,
    /// `settings[stage][switch]`, `true` = cross.
    settings: Vec<Vec<bool>>,
}

/// `2·log2(w) - 1`, or 0 for a single terminal.
pub fn stage_count(width: usize) -> usize {
    if width <= 1 {
        0
    } else {
        2 * width.trailing_zeros() as usize - 1
    }
}

/// `w/2` switches per stage.
pub fn switch_count(width: usize) -> usize {
    stage_count(width) * (width / 2)
}

/// The closed form `ρ(log2 ρ - 1/2)`, valid for any `ρ >= 2`.
pub fn switch_count_formula(width: usize) -> f64 {
    let w = width as f64;
    w * (w.log2() - 0.5)
}

impl BenesNetwork {
    /// All switches in the through state.
    pub fn through(width: usize) -> Result<Self> {
        if width == 0 || !width.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(width));
        }
        Ok(BenesNetwork {
            width,
            settings: vec![vec![false; width / 2]; stage_count(width)],
        })
    }

    /// Configures the network so that input `i` leaves on output `perm[i]`.
    pub fn route(perm: &[usize]) -> Result<Self> {
        let mut net = BenesNetwork::through(perm.len())?;
        let mut hit = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut hit[p], true) {
                return Err(Error::NotBijective(format!("{perm:?}")));
            }
        }
        if perm.len() > 1 {
            route_rec(perm, 0, 0, &mut net.settings);
        }
        Ok(net)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn stages(&self) -> usize {
        self.settings.len()
    }

    pub fn switches(&self) -> usize {
        self.settings.iter().map(Vec::len).sum()
    }

    /// One bit per switch.
    pub fn control_bits(&self) -> usize {
        self.switches()
    }

    pub fn settings(&self) -> &[Vec<bool>] {
        &self.settings
    }

    /// Pushes `inputs` through the configured switches.
    pub fn simulate<T: Clone>(&self, inputs: &[T]) -> Vec<T> {
        assert_eq!(
            inputs.len(),
            self.width,
            "input count must equal network width"
        );
        if self.width == 1 {
            return inputs.to_vec();
        }
        sim_rec(inputs.to_vec(), 0, 0, &self.settings)
    }

    /// The permutation realized by the current settings, obtained by
    /// simulating labelled tokens.
    pub fn realized(&self) -> Vec<usize> {
        let tokens: Vec<usize> = (0..self.width).collect();
        let out = self.simulate(&tokens);
        let mut perm = vec![0; self.width];
        for (pos, &tok) in out.iter().enumerate() {
            perm[tok] = pos;
        }
        perm
    }
}

fn route_rec(perm: &[usize], stage: usize, offset: usize, settings: &mut [Vec<bool>]) {
    let w = perm.len();
    if w == 2 {
        settings[stage][offset] = perm[0] == 1;
        return;
    }
    let last = stage + 2 * (w.trailing_zeros() as usize) - 2;
    let mut inv = vec![0; w];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    // false = upper subnetwork, true = lower
    let mut side: Vec<Option<bool>> = vec![None; w];
    for start in (0..w).step_by(2) {
        if side[start].is_some() {
            continue;
        }
        let mut x = start;
        loop {
            side[x] = Some(false);
            side[x ^ 1] = Some(true);
            // x^1 reaches output perm[x^1] through the lower half, so that
            // output's partner must be fed from the upper half.
            let y = inv[perm[x ^ 1] ^ 1];
            if side[y].is_some() {
                break;
            }
            x = y;
        }
    }
    let side: Vec<bool> = side
        .into_iter()
        .map(|s| s.expect("every input assigned"))
        .collect();
    let half = w / 2;
    let mut upper = vec![0; half];
    let mut lower = vec![0; half];
    for i in 0..w {
        if side[i] {
            lower[i / 2] = perm[i] / 2;
        } else {
            upper[i / 2] = perm[i] / 2;
        }
    }
    for s in 0..half {
        settings[stage][offset + s] = side[2 * s];
        settings[last][offset + s] = side[inv[2 * s]];
    }
    route_rec(&upper, stage + 1, offset, settings);
    route_rec(&lower, stage + 1, offset + half / 2, settings);
}

fn sim_rec<T: Clone>(data: Vec<T>, stage: usize, offset: usize, settings: &[Vec<bool>]) -> Vec<T> {
    let w = data.len();
    let half = w / 2;
    let cross = |st: usize, sw: usize| settings[st][offset + sw];
    if w == 2 {
        let mut d = data;
        if cross(stage, 0) {
            d.swap(0, 1);
        }
        return d;
    }
    let last = stage + 2 * (w.trailing_zeros() as usize) - 2;
    let mut up_in = Vec::with_capacity(half);
    let mut low_in = Vec::with_capacity(half);
    for s in 0..half {
        let (a, b) = (data[2 * s].clone(), data[2 * s + 1].clone());
        let (u, l) = if cross(stage, s) { (b, a) } else { (a, b) };
        up_in.push(u);
        low_in.push(l);
    }
    let up_out = sim_rec(up_in, stage + 1, offset, settings);
    let low_out = sim_rec(low_in, stage + 1, offset + half / 2, settings);
    let mut out = Vec::with_capacity(w);
    for (s, (u, l)) in up_out.into_iter().zip(low_out).enumerate() {
        if cross(last, s) {
            out.push(l);
            out.push(u);
        } else {
            out.push(u);
            out.push(l);
        }
    }
    out
}
