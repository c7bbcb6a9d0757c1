//! Machine checks for the shifting (Class-I) and symmetry (Class-II)
//! properties of the base matrix, the subgroup orderings and the CPMs.
//!
//! Every check reports the first violation it finds, if any. Checks run on
//! the untruncated base matrix unless a window is given: truncation removes
//! the wrap-around some identities need, so windowed checks only compare
//! pairs of positions that both lie inside the window.

use std::fmt;

use crate::construct::{BaseMatrix, Code, CodeClass, Cpm, ParityCheck, SubgroupIndexing};
use crate::error::{Error, Result};
use crate::gf::{Field, Gf};

/// Identifiers of the individual properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyId {
    /// `W_{i,j} = W_{(i-1) mod c, (j-1) mod c}`.
    Class1BlockShift,
    /// `w_{(i,j)(k,l)} = β · w_{(i,j)(k-1,l-1)}`, indices mod n.
    Class1InnerShift,
    /// CPM row `r+1` is `α ·` (row `r` shifted right by one), with wrap.
    CpmShift,
    /// `β_i + β_{n-1-i} = β_{n-1}`.
    BetaPalindrome,
    /// `δ_i + δ_{c-1-i} = δ_{c-1}`.
    DeltaPalindrome,
    /// `W_{i,j} = W_{c-j-1, c-i-1}`.
    BlockAntiDiagonal,
    /// `w_{(i,j)(k,l)} = w_{(i,j)(n-l-1, n-k-1)}`.
    InnerAntiDiagonal,
    /// `W_{i,j} = W_{j,i}`.
    BlockDiagonal,
    /// `w_{(i,j)(k,l)} = w_{(i,j)(l,k)}`.
    InnerDiagonal,
    /// Recovered window equals the window of the regenerated construction.
    ConstructionConsistency,
}

impl PropertyId {
    pub fn name(self) -> &'static str {
        match self {
            PropertyId::Class1BlockShift => "class1-block-shift",
            PropertyId::Class1InnerShift => "class1-inner-shift",
            PropertyId::CpmShift => "cpm-shift",
            PropertyId::BetaPalindrome => "beta-palindromic-sum",
            PropertyId::DeltaPalindrome => "delta-palindromic-sum",
            PropertyId::BlockAntiDiagonal => "block-anti-diagonal",
            PropertyId::InnerAntiDiagonal => "inner-anti-diagonal",
            PropertyId::BlockDiagonal => "block-diagonal",
            PropertyId::InnerDiagonal => "inner-diagonal",
            PropertyId::ConstructionConsistency => "construction-consistency",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// First violation of a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Coordinates of the offending position (meaning depends on the check).
    pub coords: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: PropertyId,
    pub scope: String,
    pub counterexample: Option<Counterexample>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, id: PropertyId) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{verdict} {} [{}]", c.id, c.scope));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!(" at {:?}: {}", ce.coords, ce.detail));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("property,scope,pass,counterexample\n");
        for c in &self.checks {
            let ce = c
                .counterexample
                .as_ref()
                .map(|ce| {
                    ce.coords
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default();
            out.push_str(&format!("{},\"{}\",{},{}\n", c.id, c.scope, c.passed(), ce));
        }
        out
    }
}

/// Rows/columns of the base matrix that hold trustworthy data.
#[derive(Debug, Clone, Copy)]
struct Window {
    rows: usize,
    cols: usize,
}

impl Window {
    fn full(w: &BaseMatrix) -> Self {
        Window {
            rows: w.dim(),
            cols: w.dim(),
        }
    }

    fn contains(&self, r: usize, c: usize) -> bool {
        r < self.rows && c < self.cols
    }

    fn describe(&self, dim: usize) -> String {
        if self.rows == dim && self.cols == dim {
            format!("untruncated base matrix {dim}x{dim}")
        } else {
            format!(
                "window {}x{} of base matrix {dim}x{dim}",
                self.rows, self.cols
            )
        }
    }
}

/// Checks `w[r][c] == relate(w[mirror(r, c)])` over every in-window position
/// whose mirror is also in the window.
fn mirror_check(
    id: PropertyId,
    w: &BaseMatrix,
    win: Window,
    mirror: impl Fn(usize, usize) -> (usize, usize),
    relate: impl Fn(Gf) -> Gf,
) -> Check {
    let mut counterexample = None;
    'scan: for r in 0..win.rows {
        for c in 0..win.cols {
            let (r2, c2) = mirror(r, c);
            if !win.contains(r2, c2) {
                continue;
            }
            let lhs = w.get(r, c);
            let rhs = relate(w.get(r2, c2));
            if lhs != rhs {
                counterexample = Some(Counterexample {
                    coords: vec![r, c, r2, c2],
                    detail: format!(
                        "W[{r}][{c}] = {lhs} but related entry W[{r2}][{c2}] gives {rhs}"
                    ),
                });
                break 'scan;
            }
        }
    }
    Check {
        id,
        scope: win.describe(w.dim()),
        counterexample,
    }
}

fn check_shape(w: &BaseMatrix, c: usize, n: usize) -> Result<()> {
    if w.c() != c || w.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "base matrix has c={}, n={} but c={c}, n={n} was requested",
            w.c(),
            w.n()
        )));
    }
    Ok(())
}

fn block_shift(w: &BaseMatrix, win: Window) -> Check {
    let (c, n) = (w.c(), w.n());
    mirror_check(
        PropertyId::Class1BlockShift,
        w,
        win,
        |r, col| {
            let (i, k, j, l) = (r / n, r % n, col / n, col % n);
            (((i + c - 1) % c) * n + k, ((j + c - 1) % c) * n + l)
        },
        |x| x,
    )
}

fn inner_shift(field: &Field, w: &BaseMatrix, beta: Gf, win: Window) -> Check {
    let n = w.n();
    mirror_check(
        PropertyId::Class1InnerShift,
        w,
        win,
        |r, col| {
            let (i, k, j, l) = (r / n, r % n, col / n, col % n);
            (i * n + (k + n - 1) % n, j * n + (l + n - 1) % n)
        },
        |x| field.mul(beta, x),
    )
}

fn class2_checks(w: &BaseMatrix, win: Window) -> Vec<Check> {
    let (c, n) = (w.c(), w.n());
    let split = move |r: usize, col: usize| (r / n, col / n, r % n, col % n);
    vec![
        mirror_check(
            PropertyId::BlockAntiDiagonal,
            w,
            win,
            move |r, col| {
                let (i, j, k, l) = split(r, col);
                ((c - j - 1) * n + k, (c - i - 1) * n + l)
            },
            |x| x,
        ),
        mirror_check(
            PropertyId::InnerAntiDiagonal,
            w,
            win,
            move |r, col| {
                let (i, j, k, l) = split(r, col);
                (i * n + (n - l - 1), j * n + (n - k - 1))
            },
            |x| x,
        ),
        mirror_check(
            PropertyId::BlockDiagonal,
            w,
            win,
            move |r, col| {
                let (i, j, k, l) = split(r, col);
                (j * n + k, i * n + l)
            },
            |x| x,
        ),
        mirror_check(
            PropertyId::InnerDiagonal,
            w,
            win,
            move |r, col| {
                let (i, j, k, l) = split(r, col);
                (i * n + l, j * n + k)
            },
            |x| x,
        ),
    ]
}

pub fn check_class1_block_shift(w: &BaseMatrix, c: usize, n: usize) -> Result<Check> {
    check_shape(w, c, n)?;
    Ok(block_shift(w, Window::full(w)))
}

pub fn check_class1_inner_shift(
    field: &Field,
    w: &BaseMatrix,
    c: usize,
    n: usize,
    beta: Gf,
) -> Result<Check> {
    check_shape(w, c, n)?;
    Ok(inner_shift(field, w, beta, Window::full(w)))
}

/// Returns the block-anti-diagonal, inner-anti-diagonal, block-diagonal and
/// inner-diagonal checks, in that order.
pub fn check_class2_symmetries(w: &BaseMatrix, c: usize, n: usize) -> Result<Vec<Check>> {
    check_shape(w, c, n)?;
    Ok(class2_checks(w, Window::full(w)))
}

fn palindrome(field: &Field, id: PropertyId, elems: &[Gf]) -> Check {
    let last = elems.len() - 1;
    let counterexample = (0..elems.len()).find_map(|i| {
        let sum = field.add(elems[i], elems[last - i]);
        (sum != elems[last]).then(|| Counterexample {
            coords: vec![i, last - i],
            detail: format!(
                "element {i} + element {} = {sum}, expected {}",
                last - i,
                elems[last]
            ),
        })
    });
    Check {
        id,
        scope: format!("{} ordered subgroup elements", elems.len()),
        counterexample,
    }
}

/// Palindromic-sum identities for both orderings (β then δ).
pub fn check_subgroup_symmetry(field: &Field, indexing: &SubgroupIndexing) -> Vec<Check> {
    vec![
        palindrome(field, PropertyId::BetaPalindrome, &indexing.beta),
        palindrome(field, PropertyId::DeltaPalindrome, &indexing.delta),
    ]
}

/// Shift law of a single CPM. A zero CPM passes vacuously.
pub fn check_cpm_shift(field: &Field, m: &Cpm) -> Check {
    let size = m.size();
    let alpha = field.pow_alpha(1);
    let mut counterexample = None;
    for r in 0..size {
        let next = (r + 1) % size;
        let expect = m.rows[r].map(|(c, v)| ((c + 1) % size, field.mul(alpha, v)));
        if m.rows[next] != expect {
            counterexample = Some(Counterexample {
                coords: vec![r, next],
                detail: format!("row {next} is not alpha times row {r} shifted right"),
            });
            break;
        }
    }
    Check {
        id: PropertyId::CpmShift,
        scope: format!("single {size}x{size} CPM"),
        counterexample,
    }
}

/// Shift law of every CPM block of `h`.
pub fn check_h_cpm_shift(field: &Field, h: &ParityCheck) -> Check {
    let bs = h.block_size();
    let alpha = field.pow_alpha(1);
    let scope = format!("all CPM blocks of {}x{} H", h.rows(), h.cols());
    for r in 0..h.rows() {
        let (bi, off) = h.block_origin(r);
        let next = bi * bs + (off + 1) % bs;
        let expect: Vec<(usize, Gf)> = {
            let mut v: Vec<(usize, Gf)> = h
                .row(r)
                .iter()
                .map(|&(c, val)| ((c / bs) * bs + (c % bs + 1) % bs, field.mul(alpha, val)))
                .collect();
            v.sort_unstable();
            v
        };
        if h.row(next) != expect.as_slice() {
            return Check {
                id: PropertyId::CpmShift,
                scope,
                counterexample: Some(Counterexample {
                    coords: vec![r, next],
                    detail: format!(
                        "H row {next} is not alpha times row {r} shifted right within each block"
                    ),
                }),
            };
        }
    }
    Check {
        id: PropertyId::CpmShift,
        scope,
        counterexample: None,
    }
}

const INNER_DIAGONAL_NOTE: &str =
    "within-block diagonal symmetry is checked in the form w(i,j)(k,l) = w(i,j)(l,k)";

/// Runs every check that applies to the code's class on its untruncated
/// base matrix, plus the CPM shift law on `H`.
pub fn verify_code(code: &Code) -> PropertyReport {
    verify_base(
        &code.field,
        code.spec.class,
        &code.base,
        &code.indexing,
        &code.h,
    )
}

pub fn verify_base(
    field: &Field,
    class: CodeClass,
    w: &BaseMatrix,
    indexing: &SubgroupIndexing,
    h: &ParityCheck,
) -> PropertyReport {
    let win = Window::full(w);
    let mut report = PropertyReport::default();
    match class {
        CodeClass::ClassI => {
            let beta = field.pow_alpha(w.c() as i64);
            report.checks.push(block_shift(w, win));
            report.checks.push(inner_shift(field, w, beta, win));
        }
        CodeClass::ClassII => {
            report
                .checks
                .extend(check_subgroup_symmetry(field, indexing));
            report.checks.extend(class2_checks(w, win));
            report.notes.push(INNER_DIAGONAL_NOTE.into());
        }
    }
    report.checks.push(check_h_cpm_shift(field, h));
    report
}

/// Checks a base-matrix window recovered from a stored `H`.
///
/// `window[r][c]` is the base entry behind CPM block `(r, c)`; `reference`
/// is the regenerated untruncated construction for the same parameters.
/// The report contains a consistency check against the reference, every
/// class property restricted to pairs inside the window, and the CPM shift
/// law on `h`. When the window is consistent with the reference, the full
/// class checks on the reference are appended as well.
pub fn verify_window(
    field: &Field,
    class: CodeClass,
    window: &[Vec<Gf>],
    reference: &Code,
    h: &ParityCheck,
) -> Result<PropertyReport> {
    let (c, n) = (reference.base.c(), reference.base.n());
    let dim = c * n;
    let rows = window.len();
    let cols = window.first().map_or(0, Vec::len);
    if rows > dim || cols > dim || window.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!(
            "window {rows}x{cols} does not fit base matrix {dim}x{dim}"
        )));
    }
    let mut entries = vec![Gf::ZERO; dim * dim];
    for (r, row) in window.iter().enumerate() {
        entries[r * dim..r * dim + cols].copy_from_slice(row);
    }
    let w = BaseMatrix::new(c, n, entries)?;
    let win = Window { rows, cols };

    let mut report = PropertyReport::default();
    let mismatch = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .find(|&(r, c)| w.get(r, c) != reference.base.get(r, c));
    report.checks.push(Check {
        id: PropertyId::ConstructionConsistency,
        scope: format!("window {rows}x{cols} against regenerated construction"),
        counterexample: mismatch.map(|(r, c)| Counterexample {
            coords: vec![r, c],
            detail: format!(
                "stored entry {} differs from construction entry {}",
                w.get(r, c),
                reference.base.get(r, c)
            ),
        }),
    });
    match class {
        CodeClass::ClassI => {
            let beta = field.pow_alpha(c as i64);
            report.checks.push(block_shift(&w, win));
            report.checks.push(inner_shift(field, &w, beta, win));
        }
        CodeClass::ClassII => {
            report.checks.extend(class2_checks(&w, win));
            report.notes.push(INNER_DIAGONAL_NOTE.into());
        }
    }
    report.checks.push(check_h_cpm_shift(field, h));
    if mismatch.is_none() && (rows < dim || cols < dim) {
        let full = verify_code(reference);
        report.checks.extend(
            full.checks
                .into_iter()
                .filter(|c| c.id != PropertyId::CpmShift),
        );
    }
    Ok(report)
}
