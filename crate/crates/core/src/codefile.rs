//! Plain-text parity-check files.
//!
//! ```text
//! NBQC v1 1 2 1 3 - 2 3 0x7
//! 0: (0,0) (3,1) (6,2)
//! 1: (1,1) (4,2) (7,0)
//! ...
//! #rows 6 #nnz 18
//! ```
//!
//! The header carries class, m, c, n, t (`-` for Class-I), γ, ρ and the
//! primitive polynomial; an optional trailing `random=SEED` records a seeded
//! Class-II index assignment. Each row lists `(column,power)` pairs, the
//! entry being `α^power`; zero entries are omitted.

use std::fmt::Write as _;

use crate::construct::{Code, CodeClass, CodeSpec, IndexAssignment, ParityCheck};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::verify::{verify_window, PropertyReport};

const MAGIC: &str = "NBQC";
const VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub spec: CodeSpec,
    pub h: ParityCheck,
}

impl CodeFile {
    pub fn from_code(code: &Code) -> Self {
        let mut spec = code.spec.clone();
        spec.poly = Some(code.field.poly());
        CodeFile {
            spec,
            h: code.h.clone(),
        }
    }

    pub fn field(&self) -> Result<Field> {
        self.spec.field()
    }

    /// Regenerates the code from the header parameters.
    pub fn rebuild(&self) -> Result<Code> {
        Code::build(&self.spec)
    }

    /// Recovers the base-matrix window from the stored `H` and runs every
    /// structural check that applies to it.
    pub fn verify(&self) -> Result<PropertyReport> {
        let field = self.field()?;
        let reference = self.rebuild()?;
        let window = self.h.base_window(&field)?;
        verify_window(&field, self.spec.class, &window, &reference, &self.h)
    }

    pub fn to_text(&self) -> Result<String> {
        let field = self.field()?;
        let s = &self.spec;
        let t = s.t.map_or_else(|| "-".to_string(), |t| t.to_string());
        let mut out = format!(
            "{MAGIC} {VERSION} {} {} {} {} {t} {} {} {:#x}",
            s.class.number(),
            s.m,
            s.c,
            s.n,
            s.gamma,
            s.rho,
            field.poly()
        );
        if let IndexAssignment::Random { seed } = s.assignment {
            let _ = write!(out, " random={seed}");
        }
        out.push('\n');
        for (r, row) in self.h.row_entries().iter().enumerate() {
            let _ = write!(out, "{r}:");
            for &(c, v) in row {
                let _ = write!(out, " ({c},{})", field.log(v)?);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "#rows {} #nnz {}", self.h.rows(), self.h.nnz());
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
        let spec = parse_header(header)?;
        spec.validate().map_err(|e| perr(1, &e.to_string()))?;
        let field = spec.field().map_err(|e| perr(1, &e.to_string()))?;
        let bs = field.order();
        let (nrows, ncols) = (spec.gamma * bs, spec.rho * bs);
        let mut rows = Vec::with_capacity(nrows);
        let mut trailer = None;
        for (ln, line) in lines {
            let ln = ln + 1;
            if trailer.is_some() {
                return Err(perr(ln, "content after the trailer"));
            }
            if let Some(rest) = line.strip_prefix('#') {
                trailer = Some(parse_trailer(ln, rest)?);
                continue;
            }
            let (idx, body) = line
                .split_once(':')
                .ok_or_else(|| perr(ln, "expected `<row>: ...`"))?;
            let idx: usize = idx.trim().parse().map_err(|_| perr(ln, "bad row index"))?;
            if idx != rows.len() {
                return Err(perr(
                    ln,
                    &format!("row {idx} out of sequence (expected {})", rows.len()),
                ));
            }
            let mut row = Vec::new();
            for tok in body.split_whitespace() {
                let inner = tok
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| perr(ln, &format!("bad entry `{tok}`")))?;
                let (c, p) = inner
                    .split_once(',')
                    .ok_or_else(|| perr(ln, &format!("bad entry `{tok}`")))?;
                let c: usize = c
                    .trim()
                    .parse()
                    .map_err(|_| perr(ln, &format!("bad column in `{tok}`")))?;
                let p: usize = p
                    .trim()
                    .parse()
                    .map_err(|_| perr(ln, &format!("bad power in `{tok}`")))?;
                if c >= ncols || p >= bs {
                    return Err(perr(ln, &format!("entry `{tok}` out of range")));
                }
                row.push((c, field.pow_alpha(p as i64)));
            }
            rows.push(row);
        }
        let (tr, tn) = trailer.ok_or_else(|| perr(0, "missing `#rows .. #nnz ..` trailer"))?;
        if rows.len() != nrows || tr != nrows {
            return Err(perr(
                0,
                &format!(
                    "expected {nrows} rows, trailer says {tr}, found {}",
                    rows.len()
                ),
            ));
        }
        let nnz: usize = rows.iter().map(Vec::len).sum();
        if nnz != tn {
            return Err(perr(0, &format!("trailer says {tn} nonzeros, found {nnz}")));
        }
        let h = ParityCheck::from_rows(bs, ncols, rows).map_err(|e| perr(0, &e.to_string()))?;
        Ok(CodeFile { spec, h })
    }
}

fn perr(line: usize, msg: &str) -> Error {
    if line == 0 {
        Error::Parse(msg.to_string())
    } else {
        Error::Parse(format!("line {line}: {msg}"))
    }
}

fn parse_header(line: &str) -> Result<CodeSpec> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 10 || toks.len() > 11 || toks[0] != MAGIC || toks[1] != VERSION {
        return Err(perr(
            1,
            "header must be `NBQC v1 <class> <m> <c> <n> <t|-> <gamma> <rho> <poly> [random=SEED]`",
        ));
    }
    let num = |i: usize, what: &str| -> Result<usize> {
        toks[i]
            .parse()
            .map_err(|_| perr(1, &format!("bad {what} `{}`", toks[i])))
    };
    let m = num(3, "m")? as u32;
    let (c, n) = (num(4, "c")?, num(5, "n")?);
    let (gamma, rho) = (num(7, "gamma")?, num(8, "rho")?);
    let poly = toks[9]
        .strip_prefix("0x")
        .and_then(|h| u32::from_str_radix(h, 16).ok())
        .ok_or_else(|| perr(1, &format!("bad polynomial `{}`", toks[9])))?;
    let mut spec = match (toks[2], toks[6]) {
        ("1", "-") => CodeSpec::class1(m, c, n, gamma, rho),
        ("2", t) => {
            let t: u32 = t.parse().map_err(|_| perr(1, &format!("bad t `{t}`")))?;
            let s = CodeSpec::class2(m, t, gamma, rho);
            if (s.c, s.n) != (c, n) {
                return Err(perr(
                    1,
                    &format!("c = {c}, n = {n} do not match m = {m}, t = {t}"),
                ));
            }
            s
        }
        ("1", _) => return Err(perr(1, "Class-I header must use `-` for t")),
        (cls, _) => return Err(perr(1, &format!("unknown class `{cls}`"))),
    }
    .with_poly(poly);
    if let Some(extra) = toks.get(10) {
        let seed = extra
            .strip_prefix("random=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr(1, &format!("unknown header field `{extra}`")))?;
        if spec.class != CodeClass::ClassII {
            return Err(perr(
                1,
                "random index assignment applies to Class-II codes only",
            ));
        }
        spec = spec.with_assignment(IndexAssignment::Random { seed });
    }
    Ok(spec)
}

fn parse_trailer(ln: usize, rest: &str) -> Result<(usize, usize)> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    match toks.as_slice() {
        ["rows", r, "#nnz", n] => Ok((
            r.parse().map_err(|_| perr(ln, "bad row count"))?,
            n.parse().map_err(|_| perr(ln, "bad nonzero count"))?,
        )),
        _ => Err(perr(ln, "trailer must be `#rows <count> #nnz <count>`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(spec: CodeSpec) {
        let code = Code::build(&spec).unwrap();
        let file = CodeFile::from_code(&code);
        let text = file.to_text().unwrap();
        let back = CodeFile::parse(&text).unwrap();
        assert_eq!(back.h, code.h);
        assert_eq!(back.to_text().unwrap(), text);
    }

    #[test]
    fn roundtrips() {
        roundtrip(CodeSpec::class1(2, 1, 3, 2, 3));
        roundtrip(CodeSpec::class2(2, 1, 2, 4));
        roundtrip(
            CodeSpec::class2(4, 2, 3, 5).with_assignment(IndexAssignment::Random { seed: 9 }),
        );
        roundtrip(CodeSpec::class1(4, 3, 5, 4, 7).with_poly(0x19));
    }

    #[test]
    fn small_file_layout() {
        let code = Code::build(&CodeSpec::class1(2, 1, 3, 2, 3)).unwrap();
        let text = CodeFile::from_code(&code).to_text().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "NBQC v1 1 2 1 3 - 2 3 0x7");
        assert_eq!(lines.len(), 8);
        assert!(lines[7].starts_with("#rows 6 #nnz "));
    }

    #[test]
    fn rejects_damage() {
        let code = Code::build(&CodeSpec::class2(2, 1, 2, 4)).unwrap();
        let text = CodeFile::from_code(&code).to_text().unwrap();
        assert!(CodeFile::parse(&text.replace("NBQC v1", "NBQC v2")).is_err());
        assert!(CodeFile::parse(&text.replace("#nnz", "#nz")).is_err());
        let dropped: String = text
            .lines()
            .filter(|l| !l.starts_with("3:"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(CodeFile::parse(&dropped).is_err());
        let bad_count = text.replace("#rows 6", "#rows 7");
        assert!(matches!(CodeFile::parse(&bad_count), Err(Error::Parse(_))));
    }

    #[test]
    fn verifies_example_codes() {
        for spec in [
            CodeSpec::class1(2, 1, 3, 2, 3),
            CodeSpec::class2(2, 1, 2, 4),
        ] {
            let file = CodeFile::from_code(&Code::build(&spec).unwrap());
            assert!(file.verify().unwrap().all_passed());
        }
    }
}
