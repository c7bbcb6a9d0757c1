use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

/// `n × n` table of subgroup indices: entry `(i, j)` is the index of the sum
/// of the `i`-th and `j`-th subgroup elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMatrix {
    n: usize,
    entries: Vec<usize>,
}

impl IndexMatrix {
    /// Builds from row-major entries; every row and column must be a
    /// permutation of `0..n`.
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} table",
                entries.len()
            )));
        }
        let m = IndexMatrix { n, entries };
        for i in 0..n {
            let row: Vec<usize> = m.row(i).to_vec();
            let col: Vec<usize> = (0..n).map(|r| m.get(r, i)).collect();
            for (what, line) in [("row", row), ("column", col)] {
                let mut seen = vec![false; n];
                for v in line {
                    if v >= n || std::mem::replace(&mut seen[v], true) {
                        return Err(Error::NotBijective(format!(
                            "{what} {i} is not a permutation"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row0_is_identity(&self) -> bool {
        self.row(0).iter().enumerate().all(|(j, &v)| v == j)
    }
}

/// Closed form `index(i, j) = i XOR j` for `n = 2^t`.
pub fn build_index_matrix(n: usize) -> Result<IndexMatrix> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    IndexMatrix::new(n, (0..n).flat_map(|i| (0..n).map(move |j| i ^ j)).collect())
}

/// Reads the table off an ordered additive subgroup: entry `(i, j)` is the
/// position of `elements[i] + elements[j]` in `elements`.
pub fn derive_index_matrix(field: &Field, elements: &[Gf]) -> Result<IndexMatrix> {
    let n = elements.len();
    let mut pos = vec![usize::MAX; field.q()];
    for (i, e) in elements.iter().enumerate() {
        pos[e.index()] = i;
    }
    let mut entries = Vec::with_capacity(n * n);
    for &a in elements {
        for &b in elements {
            let p = pos[field.add(a, b).index()];
            if p == usize::MAX {
                return Err(Error::InvalidParameters(
                    "elements are not closed under addition".into(),
                ));
            }
            entries.push(p);
        }
    }
    IndexMatrix::new(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::index_subgroup;

    #[test]
    fn four_by_four() {
        let m = build_index_matrix(4).unwrap();
        assert_eq!(
            m.rows(),
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0]
            ]
        );
        assert_eq!(
            build_index_matrix(2).unwrap().rows(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            build_index_matrix(8).unwrap().row(5),
            &[5, 4, 7, 6, 1, 0, 3, 2]
        );
        assert!(build_index_matrix(6).is_err());
    }

    #[test]
    fn derived_matches_closed_form_up_to_four() {
        let f = Field::new(5).unwrap();
        for t in 1..=2u32 {
            let basis: Vec<u32> = (0..t).collect();
            let d = derive_index_matrix(&f, &index_subgroup(&f, &basis).unwrap()).unwrap();
            assert_eq!(d, build_index_matrix(1 << t).unwrap());
        }
    }

    #[test]
    fn derived_eight_differs_from_xor() {
        let f = Field::new(4).unwrap();
        let d = derive_index_matrix(&f, &index_subgroup(&f, &[0, 1, 2]).unwrap()).unwrap();
        assert!(d.is_symmetric() && d.row0_is_identity());
        assert_ne!(d, build_index_matrix(8).unwrap());
    }
}
