//! Class-I and Class-II non-binary QC-LDPC constructions.
//!
//! Both classes start from a `(c·n) × (c·n)` base matrix `W` of field
//! elements, viewed as `c × c` blocks of `n × n` sub-matrices. Every entry
//! is then dispersed into a `(q-1) × (q-1)` circulant permutation matrix
//! (CPM) and the top-left `γ × ρ` array of CPMs is kept as `H`.
//!
//! Class-I (multiplicative subgroups): `q - 1 = c·n`, `gcd(c, n) = 1`,
//! `β = α^c`, `δ = α^n` and block `(i, j)` holds `δ^(j-i)·β^k + β^l`.
//!
//! Class-II (additive subgroups): `c = 2^(m-t)`, `n = 2^t`; `β` spans
//! `{α^0..α^(t-1)}`, `δ` spans `{α^t..α^(m-1)}`, and block `(i, j)` holds
//! `(δ_i + δ_j) + (β_k + β_l)`. The ordering of the span elements is the
//! index assignment produced by [`index_subgroup`].

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeClass {
    ClassI,
    ClassII,
}

impl CodeClass {
    pub fn number(self) -> u32 {
        match self {
            CodeClass::ClassI => 1,
            CodeClass::ClassII => 2,
        }
    }
}

/// How the additive-subgroup elements of a Class-II code are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IndexAssignment {
    /// Term-count then lexicographic exponent order; induces the
    /// palindromic-sum symmetry.
    #[default]
    Symmetric,
    /// Zero first, the rest in a seeded uniform-random order (applied to
    /// both the β and the δ subgroup).
    Random { seed: u64 },
}

/// Construction parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub class: CodeClass,
    pub m: u32,
    pub c: usize,
    pub n: usize,
    /// Class-II split exponent; `None` for Class-I.
    pub t: Option<u32>,
    pub gamma: usize,
    pub rho: usize,
    /// Primitive polynomial override; `None` uses the default for `m`.
    pub poly: Option<u32>,
    pub assignment: IndexAssignment,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CodeSpec {
    pub fn class1(m: u32, c: usize, n: usize, gamma: usize, rho: usize) -> Self {
        CodeSpec {
            class: CodeClass::ClassI,
            m,
            c,
            n,
            t: None,
            gamma,
            rho,
            poly: None,
            assignment: IndexAssignment::Symmetric,
        }
    }

    pub fn class2(m: u32, t: u32, gamma: usize, rho: usize) -> Self {
        let (c, n) = if t < m && t < 16 {
            (1usize << (m - t), 1usize << t)
        } else {
            (0, 0)
        };
        CodeSpec {
            class: CodeClass::ClassII,
            m,
            c,
            n,
            t: Some(t),
            gamma,
            rho,
            poly: None,
            assignment: IndexAssignment::Symmetric,
        }
    }

    pub fn with_poly(mut self, poly: u32) -> Self {
        self.poly = Some(poly);
        self
    }

    pub fn with_assignment(mut self, assignment: IndexAssignment) -> Self {
        self.assignment = assignment;
        self
    }

    pub fn q(&self) -> usize {
        1 << self.m
    }

    /// Side of the base matrix `W` (number of block rows/columns of `A`).
    pub fn dim(&self) -> usize {
        self.c * self.n
    }

    pub fn field(&self) -> Result<Field> {
        match self.poly {
            Some(p) => Field::with_poly(self.m, p),
            None => Field::new(self.m),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=8).contains(&self.m) {
            return Err(Error::DegreeOutOfRange(self.m));
        }
        let q = self.q();
        match self.class {
            CodeClass::ClassI => {
                if self.t.is_some() {
                    return Err(Error::InvalidParameters(
                        "Class-I codes take no split exponent t".into(),
                    ));
                }
                if self.c * self.n != q - 1 || gcd(self.c, self.n) != 1 {
                    return Err(Error::InvalidParameters(format!(
                        "Class-I step 1 (factorization) requires q-1 = c*n with gcd(c,n) = 1; \
                         got q-1 = {}, c = {}, n = {}",
                        q - 1,
                        self.c,
                        self.n
                    )));
                }
            }
            CodeClass::ClassII => {
                let t = self.t.ok_or_else(|| {
                    Error::InvalidParameters("Class-II step 1 requires a split exponent t".into())
                })?;
                if t < 1 || t >= self.m {
                    return Err(Error::InvalidParameters(format!(
                        "Class-II step 1 (factorization) requires 1 <= t < m; got t = {t}, m = {}",
                        self.m
                    )));
                }
                if self.c != 1 << (self.m - t) || self.n != 1 << t {
                    return Err(Error::InvalidParameters(format!(
                        "Class-II step 1 (factorization) requires c = 2^(m-t) and n = 2^t; \
                         got c = {}, n = {}",
                        self.c, self.n
                    )));
                }
            }
        }
        let dim = self.dim();
        if self.gamma < 1 || self.gamma > dim || self.rho < 1 || self.rho > dim {
            return Err(Error::InvalidParameters(format!(
                "step 6 (truncation) requires 1 <= gamma, rho <= {dim}; got gamma = {}, rho = {}",
                self.gamma, self.rho
            )));
        }
        Ok(())
    }
}

/// The ordered β and δ subgroup elements used to fill `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupIndexing {
    pub beta: Vec<Gf>,
    pub delta: Vec<Gf>,
}

/// Dense `(c·n) × (c·n)` base matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseMatrix {
    c: usize,
    n: usize,
    entries: Vec<Gf>,
}

impl BaseMatrix {
    pub fn new(c: usize, n: usize, entries: Vec<Gf>) -> Result<Self> {
        let dim = c * n;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} base matrix",
                entries.len()
            )));
        }
        Ok(BaseMatrix { c, n, entries })
    }

    fn from_fn(c: usize, n: usize, f: impl Fn(usize, usize, usize, usize) -> Gf) -> Self {
        let dim = c * n;
        let mut entries = Vec::with_capacity(dim * dim);
        for row in 0..dim {
            for col in 0..dim {
                entries.push(f(row / n, col / n, row % n, col % n));
            }
        }
        BaseMatrix { c, n, entries }
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.c * self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Gf {
        self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Gf) {
        let dim = self.dim();
        self.entries[row * dim + col] = value;
    }

    /// Entry `(k, l)` of block `W_{i,j}`.
    #[inline]
    pub fn block_entry(&self, i: usize, j: usize, k: usize, l: usize) -> Gf {
        self.get(i * self.n + k, j * self.n + l)
    }

    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_zero()).count()
    }
}

/// Sparse location vector: the single nonzero `(position, value)` of `z(d)`,
/// or `None` for `z(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocationVector {
    pub len: usize,
    pub entry: Option<(usize, Gf)>,
}

impl LocationVector {
    pub fn to_dense(&self) -> Vec<Gf> {
        let mut v = vec![Gf::ZERO; self.len];
        if let Some((pos, val)) = self.entry {
            v[pos] = val;
        }
        v
    }
}

pub fn location_vector(field: &Field, d: Gf) -> LocationVector {
    let entry = if d.is_zero() {
        None
    } else {
        let pos = field.log(d).expect("nonzero");
        Some((pos, d))
    };
    LocationVector {
        len: field.order(),
        entry,
    }
}

/// A `(q-1) × (q-1)` circulant permutation matrix stored one entry per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cpm {
    pub rows: Vec<Option<(usize, Gf)>>,
}

impl Cpm {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Gf {
        match self.rows[row] {
            Some((c, v)) if c == col => v,
            _ => Gf::ZERO,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Option::is_none)
    }
}

/// Row `r` is `z(α^r · d)`.
pub fn cpm(field: &Field, d: Gf) -> Cpm {
    let rows = (0..field.order())
        .map(|r| location_vector(field, field.mul(field.pow_alpha(r as i64), d)).entry)
        .collect();
    Cpm { rows }
}

fn check_basis(field: &Field, basis_powers: &[u32]) -> Result<()> {
    for (i, &p) in basis_powers.iter().enumerate() {
        if p >= field.m() {
            return Err(Error::InvalidBasis(format!(
                "power {p} is not below m = {}",
                field.m()
            )));
        }
        if basis_powers[..i].contains(&p) {
            return Err(Error::InvalidBasis(format!("power {p} appears twice")));
        }
    }
    Ok(())
}

/// All subsets of the basis with their element value, keyed by the sorted
/// exponent list.
fn span_subsets(field: &Field, basis_powers: &[u32]) -> Vec<(Vec<u32>, Gf)> {
    let mut sorted = basis_powers.to_vec();
    sorted.sort_unstable();
    let t = sorted.len();
    (0..1usize << t)
        .map(|mask| {
            let exps: Vec<u32> = (0..t)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| sorted[b])
                .collect();
            let value = exps.iter().fold(Gf::ZERO, |acc, &e| {
                field.add(acc, field.pow_alpha(e as i64))
            });
            (exps, value)
        })
        .collect()
}

/// Orders the additive span of `{α^p : p in basis_powers}`.
///
/// Index 0 is the zero element. Nonzero elements are sorted by the number of
/// α-power terms, then lexicographically by their ascending exponent lists.
pub fn index_subgroup(field: &Field, basis_powers: &[u32]) -> Result<Vec<Gf>> {
    check_basis(field, basis_powers)?;
    let mut subsets = span_subsets(field, basis_powers);
    subsets.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(subsets.into_iter().map(|(_, v)| v).collect())
}

/// Zero first, then the remaining span elements in a seeded random order.
pub fn random_index_subgroup(field: &Field, basis_powers: &[u32], seed: u64) -> Result<Vec<Gf>> {
    let mut out = index_subgroup(field, basis_powers)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out[1..].shuffle(&mut rng);
    Ok(out)
}

pub fn build_base_class1(
    field: &Field,
    c: usize,
    n: usize,
) -> Result<(BaseMatrix, SubgroupIndexing)> {
    let q1 = field.order();
    if c * n != q1 || gcd(c, n) != 1 {
        return Err(Error::InvalidParameters(format!(
            "Class-I step 1 (factorization) requires q-1 = c*n with gcd(c,n) = 1; \
             got q-1 = {q1}, c = {c}, n = {n}"
        )));
    }
    let beta = field.pow_alpha(c as i64);
    let delta = field.pow_alpha(n as i64);
    let betas: Vec<Gf> = (0..n).map(|k| field.pow(beta, k as i64)).collect();
    let deltas: Vec<Gf> = (0..c).map(|j| field.pow(delta, j as i64)).collect();
    let w = BaseMatrix::from_fn(c, n, |i, j, k, l| {
        let d = field.pow(delta, j as i64 - i as i64);
        field.add(field.mul(d, betas[k]), betas[l])
    });
    Ok((
        w,
        SubgroupIndexing {
            beta: betas,
            delta: deltas,
        },
    ))
}

fn class2_from_indexing(field: &Field, indexing: &SubgroupIndexing) -> BaseMatrix {
    let (c, n) = (indexing.delta.len(), indexing.beta.len());
    let (b, d) = (&indexing.beta, &indexing.delta);
    BaseMatrix::from_fn(c, n, |i, j, k, l| {
        field.add(field.add(d[i], d[j]), field.add(b[k], b[l]))
    })
}

fn class2_bases(field: &Field, t: u32) -> Result<(Vec<u32>, Vec<u32>)> {
    let m = field.m();
    if t < 1 || t >= m {
        return Err(Error::InvalidParameters(format!(
            "Class-II step 1 (factorization) requires 1 <= t < m; got t = {t}, m = {m}"
        )));
    }
    Ok(((0..t).collect(), (t..m).collect()))
}

pub fn build_base_class2(field: &Field, t: u32) -> Result<(BaseMatrix, SubgroupIndexing)> {
    let (bb, db) = class2_bases(field, t)?;
    let indexing = SubgroupIndexing {
        beta: index_subgroup(field, &bb)?,
        delta: index_subgroup(field, &db)?,
    };
    Ok((class2_from_indexing(field, &indexing), indexing))
}

/// Class-II base matrix with randomly ordered subgroups. The δ subgroup uses
/// a seed derived from `seed` so the two orderings are independent.
pub fn build_base_class2_random(
    field: &Field,
    t: u32,
    seed: u64,
) -> Result<(BaseMatrix, SubgroupIndexing)> {
    let (bb, db) = class2_bases(field, t)?;
    let indexing = SubgroupIndexing {
        beta: random_index_subgroup(field, &bb, seed)?,
        delta: random_index_subgroup(field, &db, seed ^ 0x9E37_79B9_7F4A_7C15)?,
    };
    Ok((class2_from_indexing(field, &indexing), indexing))
}

/// Sparse parity-check matrix, row-major with column-sorted rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheck {
    block_size: usize,
    cols: usize,
    rows: Vec<Vec<(usize, Gf)>>,
}

impl ParityCheck {
    /// Assembles a matrix from explicit rows. Rows must be strictly sorted by
    /// column, in range, and free of zero values; `block_size` is the CPM size
    /// `q - 1` and must divide both dimensions.
    pub fn from_rows(block_size: usize, cols: usize, rows: Vec<Vec<(usize, Gf)>>) -> Result<Self> {
        if block_size == 0
            || !cols.is_multiple_of(block_size)
            || !rows.len().is_multiple_of(block_size)
        {
            return Err(Error::DimensionMismatch(format!(
                "{}x{cols} is not a whole number of {block_size}x{block_size} blocks",
                rows.len()
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            for (e, &(col, val)) in row.iter().enumerate() {
                if col >= cols {
                    return Err(Error::DimensionMismatch(format!(
                        "row {r}: column {col} >= {cols}"
                    )));
                }
                if val.is_zero() {
                    return Err(Error::DimensionMismatch(format!(
                        "row {r}: explicit zero at column {col}"
                    )));
                }
                if e > 0 && row[e - 1].0 >= col {
                    return Err(Error::DimensionMismatch(format!(
                        "row {r}: columns not strictly increasing"
                    )));
                }
            }
        }
        Ok(ParityCheck {
            block_size,
            cols,
            rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// CPM size `q - 1`.
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn row(&self, r: usize) -> &[(usize, Gf)] {
        &self.rows[r]
    }

    pub fn row_entries(&self) -> &[Vec<(usize, Gf)>] {
        &self.rows
    }

    /// `(block row, CPM row offset)` of H row `r`.
    pub fn block_origin(&self, r: usize) -> (usize, usize) {
        (r / self.block_size, r % self.block_size)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, col: usize) -> Gf {
        match self.rows[r].binary_search_by_key(&col, |&(c, _)| c) {
            Ok(i) => self.rows[r][i].1,
            Err(_) => Gf::ZERO,
        }
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for row in &self.rows {
            for &(c, _) in row {
                w[c] += 1;
            }
        }
        w
    }

    /// Column-major view: per column, `(row, value)` in row order.
    pub fn columns(&self) -> Vec<Vec<(usize, Gf)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                out[c].push((r, v));
            }
        }
        out
    }

    pub fn syndrome(&self, field: &Field, x: &[Gf]) -> Result<Vec<Gf>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "word of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Gf::ZERO, |acc, &(c, h)| field.add(acc, field.mul(h, x[c])))
            })
            .collect())
    }

    pub fn is_codeword(&self, field: &Field, x: &[Gf]) -> Result<bool> {
        Ok(self.syndrome(field, x)?.iter().all(|s| s.is_zero()))
    }

    /// Recovers the `γ × ρ` window of base-matrix entries from the first row
    /// of each CPM block. Fails if some block is not a CPM.
    pub fn base_window(&self, field: &Field) -> Result<Vec<Vec<Gf>>> {
        let bs = self.block_size;
        if bs != field.order() {
            return Err(Error::DimensionMismatch(format!(
                "block size {bs} does not match field order {}",
                field.order()
            )));
        }
        let (gamma, rho) = (self.rows.len() / bs, self.cols / bs);
        let mut window = vec![vec![Gf::ZERO; rho]; gamma];
        for (bi, wrow) in window.iter_mut().enumerate() {
            for &(col, val) in &self.rows[bi * bs] {
                wrow[col / bs] = val;
            }
            for (bj, d) in wrow.iter().enumerate() {
                let expect = cpm(field, *d);
                for r in 0..bs {
                    let got: Vec<(usize, Gf)> = self.rows[bi * bs + r]
                        .iter()
                        .filter(|(c, _)| c / bs == bj)
                        .map(|&(c, v)| (c % bs, v))
                        .collect();
                    if got.as_slice() != expect.rows[r].as_slice() {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({bi},{bj}) is not a circulant permutation matrix (row {r})"
                        )));
                    }
                }
            }
        }
        Ok(window)
    }
}

/// Expands the top-left `gamma × rho` entries of `w` into CPMs.
pub fn expand(field: &Field, w: &BaseMatrix, gamma: usize, rho: usize) -> Result<ParityCheck> {
    if gamma > w.dim() || rho > w.dim() {
        return Err(Error::DimensionMismatch(format!(
            "truncation {gamma}x{rho} exceeds base matrix side {}",
            w.dim()
        )));
    }
    let bs = field.order();
    let mut rows = Vec::with_capacity(gamma * bs);
    for bi in 0..gamma {
        let cpms: Vec<Cpm> = (0..rho).map(|bj| cpm(field, w.get(bi, bj))).collect();
        for r in 0..bs {
            let row = cpms
                .iter()
                .enumerate()
                .filter_map(|(bj, m)| m.rows[r].map(|(c, v)| (bj * bs + c, v)))
                .collect();
            rows.push(row);
        }
    }
    ParityCheck::from_rows(bs, rho * bs, rows)
}

/// A fully constructed code: parameters, field, subgroup ordering, the
/// untruncated base matrix and the truncated parity-check matrix.
#[derive(Debug, Clone)]
pub struct Code {
    pub spec: CodeSpec,
    pub field: Field,
    pub indexing: SubgroupIndexing,
    pub base: BaseMatrix,
    pub h: ParityCheck,
}

impl Code {
    pub fn build(spec: &CodeSpec) -> Result<Code> {
        spec.validate()?;
        let field = spec.field()?;
        let (base, indexing) = match (spec.class, spec.assignment) {
            (CodeClass::ClassI, _) => build_base_class1(&field, spec.c, spec.n)?,
            (CodeClass::ClassII, IndexAssignment::Symmetric) => {
                build_base_class2(&field, spec.t.expect("validated"))?
            }
            (CodeClass::ClassII, IndexAssignment::Random { seed }) => {
                build_base_class2_random(&field, spec.t.expect("validated"), seed)?
            }
        };
        let h = expand(&field, &base, spec.gamma, spec.rho)?;
        Ok(Code {
            spec: spec.clone(),
            field,
            indexing,
            base,
            h,
        })
    }
}

pub fn build_code(spec: &CodeSpec) -> Result<ParityCheck> {
    Ok(Code::build(spec)?.h)
}
