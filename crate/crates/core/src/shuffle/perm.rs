use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A bijection on VNU (or group) indices: `map[src] = dst`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VnuPermutation {
    map: Vec<usize>,
}

impl VnuPermutation {
    /// Validates that `map` is a bijection on `0..map.len()`.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut hit = vec![false; map.len()];
        for (src, &dst) in map.iter().enumerate() {
            if dst >= map.len() {
                return Err(Error::NotBijective(format!(
                    "{src} -> {dst} is out of range"
                )));
            }
            if hit[dst] {
                return Err(Error::NotBijective(format!("{dst} is hit twice")));
            }
            hit[dst] = true;
        }
        Ok(VnuPermutation { map })
    }

    pub fn identity(n: usize) -> Self {
        VnuPermutation {
            map: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn get(&self, src: usize) -> usize {
        self.map[src]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &d)| i == d)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (s, &d) in self.map.iter().enumerate() {
            inv[d] = s;
        }
        VnuPermutation { map: inv }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &VnuPermutation) -> Self {
        assert_eq!(
            self.len(),
            next.len(),
            "composing permutations of different sizes"
        );
        VnuPermutation {
            map: self.map.iter().map(|&d| next.map[d]).collect(),
        }
    }

    /// `self` applied `k` times.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(VnuPermutation::identity(self.len()), |acc, _| {
            acc.then(self)
        })
    }

    /// Multiplicative order (smallest `k >= 1` with `self^k = id`), via the
    /// lcm of cycle lengths.
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// Moves `items[src]` to position `map[src]`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len());
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (s, item) in items.iter().enumerate() {
            out[self.map[s]] = Some(item.clone());
        }
        out.into_iter().map(|x| x.expect("bijection")).collect()
    }

    /// Cycles including fixed points, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.map[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle notation without fixed points; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut s = String::new();
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            s.push('(');
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }

    /// `src -> dst` pairs joined by `, `.
    pub fn pairs(&self) -> String {
        let mut s = String::new();
        for (src, &dst) in self.map.iter().enumerate() {
            if src > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{src} -> {dst}");
        }
        s
    }

    /// Splits a VNU-level permutation over groups of `group_size` into a group
    /// map and a uniform intra-group rotation: `(g, j) -> (G(g), (j + rot) mod size)`.
    pub fn factor(&self, group_size: usize) -> Option<(VnuPermutation, usize)> {
        if group_size == 0 || !self.len().is_multiple_of(group_size) {
            return None;
        }
        let groups = self.len() / group_size;
        let rot = self.map.first().map_or(0, |&d| d % group_size);
        let mut gmap = Vec::with_capacity(groups);
        for g in 0..groups {
            let dg = self.map[g * group_size] / group_size;
            for j in 0..group_size {
                let d = self.map[g * group_size + j];
                if d / group_size != dg || d % group_size != (j + rot) % group_size {
                    return None;
                }
            }
            gmap.push(dg);
        }
        Some((VnuPermutation::new(gmap).ok()?, rot))
    }

    /// Inverse of [`factor`](Self::factor).
    pub fn from_groups(groups: &VnuPermutation, group_size: usize, rot: usize) -> Self {
        let map = (0..groups.len() * group_size)
            .map(|v| groups.get(v / group_size) * group_size + (v % group_size + rot) % group_size)
            .collect();
        VnuPermutation { map }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_is_enforced() {
        assert!(VnuPermutation::new(vec![1, 0, 2]).is_ok());
        assert!(VnuPermutation::new(vec![1, 1, 2]).is_err());
        assert!(VnuPermutation::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn cycles_and_order() {
        let p = VnuPermutation::new(vec![1, 2, 0, 4, 3, 5]).unwrap();
        assert_eq!(p.cycle_notation(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert_eq!(p.then(&p.inverse()), VnuPermutation::identity(6));
        assert_eq!(
            p.apply(&['a', 'b', 'c', 'd', 'e', 'f']),
            vec!['c', 'a', 'b', 'e', 'd', 'f']
        );
        assert_eq!(VnuPermutation::identity(3).cycle_notation(), "()");
    }

    #[test]
    fn factor_roundtrip() {
        let g = VnuPermutation::new(vec![2, 0, 1]).unwrap();
        let p = VnuPermutation::from_groups(&g, 3, 2);
        assert_eq!(p.factor(3), Some((g, 2)));
        let bad = VnuPermutation::new(vec![1, 0, 2, 3, 4, 5]).unwrap();
        assert_eq!(bad.factor(3), None);
    }
}
