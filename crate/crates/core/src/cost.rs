//! Shuffle-network hardware counts for the proposed designs P1–P4 and the
//! two reference designs, plus weighted savings.
//!
//! Crossbar and local LUT rows assume a power-of-two `ρ`; other widths are
//! evaluated at the padded width `P = 2^⌈log2 ρ⌉` and flagged.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    P1,
    P2,
    P3,
    P4,
    Ref4,
    Ref5,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::P1,
        Variant::P2,
        Variant::P3,
        Variant::P4,
        Variant::Ref4,
        Variant::Ref5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::P1 => "P1",
            Variant::P2 => "P2",
            Variant::P3 => "P3",
            Variant::P4 => "P4",
            Variant::Ref4 => "Ref4",
            Variant::Ref5 => "Ref5",
        }
    }

    fn is_reference(self) -> bool {
        matches!(self, Variant::Ref4 | Variant::Ref5)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown design `{s}` (expected P1..P4, Ref4, Ref5)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    GsnWires,
    GsnDemux,
    GsnLutBits,
    LsnWires,
    LsnDemux,
    LsnCrossbars,
    LsnLutBits,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::GsnWires,
        Category::GsnDemux,
        Category::GsnLutBits,
        Category::LsnWires,
        Category::LsnDemux,
        Category::LsnCrossbars,
        Category::LsnLutBits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::GsnWires => "gsn_wires",
            Category::GsnDemux => "gsn_demux",
            Category::GsnLutBits => "gsn_lut_bits",
            Category::LsnWires => "lsn_wires",
            Category::LsnDemux => "lsn_demux",
            Category::LsnCrossbars => "lsn_crossbars",
            Category::LsnLutBits => "lsn_lut_bits",
        }
    }

    /// Symbolic cell for `variant`; `-` where the design has no such row.
    pub fn formula(self, variant: Variant) -> &'static str {
        use Category::*;
        use Variant::*;
        match (self, variant) {
            (GsnWires, Ref4 | Ref5) => "3*bq*nm*(q-1)*dc",
            (GsnWires, _) => "bq*nm*(q-1)*dc",
            (GsnDemux, P1) => "0",
            (GsnDemux, Ref4 | Ref5) => "3*(q-1)*rho",
            (GsnDemux, _) => "(q-1)*rho",
            (GsnLutBits, P1) => "0",
            (GsnLutBits, Ref4) => "p*(q-1)*(rho+gamma*(gamma-1)/2)",
            (GsnLutBits, Ref5) => "p*(q-1)*(3*rho+gamma-2)",
            (GsnLutBits, _) => "p*(q-1)*rho",
            (_, Ref4 | Ref5) => "-",
            (LsnWires, P4) => "2*bq*(q-1)*gamma",
            (LsnWires, _) => "bq*(q-1)*gamma",
            (LsnDemux, P4) => "bq*(q-1)*gamma",
            (LsnDemux, _) => "0",
            (LsnCrossbars, P3 | P4) => "rho*(log2(rho)-1/2)",
            (LsnLutBits, P3 | P4) => "gamma*rho*log2(rho)/2",
            (LsnCrossbars | LsnLutBits, _) => "0",
        }
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown cost category `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostParams {
    /// Message word length.
    pub bq: u64,
    /// Candidates kept per message.
    pub nm: u64,
    /// Check-node degree.
    pub dc: u64,
    /// LUT word size.
    pub p: u64,
    pub q: u64,
    pub gamma: u64,
    pub rho: u64,
}

impl CostParams {
    /// `p` defaults to `⌈log2 q⌉`.
    pub fn new(
        bq: u64,
        nm: u64,
        dc: u64,
        p: Option<u64>,
        q: u64,
        gamma: u64,
        rho: u64,
    ) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameters(format!(
                "q = {q} must be at least 2"
            )));
        }
        let p = p.unwrap_or_else(|| default_lut_width(q));
        let params = CostParams {
            bq,
            nm,
            dc,
            p,
            q,
            gamma,
            rho,
        };
        for (name, v) in [
            ("bq", bq),
            ("nm", nm),
            ("dc", dc),
            ("p", p),
            ("gamma", gamma),
            ("rho", rho),
        ] {
            if v == 0 {
                return Err(Error::InvalidParameters(format!("{name} must be positive")));
            }
        }
        Ok(params)
    }

    /// Network width used by the crossbar rows.
    pub fn padded_rho(&self) -> u64 {
        self.rho.next_power_of_two().max(2)
    }
}

pub fn default_lut_width(q: u64) -> u64 {
    u64::from(q.next_power_of_two().trailing_zeros())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostBreakdown {
    pub variant: Variant,
    pub gsn_wires: u64,
    pub gsn_demux: u64,
    pub gsn_lut_bits: u64,
    /// `None` for the reference designs, which have no local network.
    pub lsn_wires: Option<u64>,
    pub lsn_demux: Option<u64>,
    pub lsn_crossbars: Option<u64>,
    pub lsn_lut_bits: Option<u64>,
    pub supports_class1: bool,
    pub supports_class2: bool,
    pub flexible: bool,
    /// Crossbar rows were evaluated at a padded width.
    pub padded: bool,
}

impl CostBreakdown {
    pub fn get(&self, c: Category) -> Option<u64> {
        match c {
            Category::GsnWires => Some(self.gsn_wires),
            Category::GsnDemux => Some(self.gsn_demux),
            Category::GsnLutBits => Some(self.gsn_lut_bits),
            Category::LsnWires => self.lsn_wires,
            Category::LsnDemux => self.lsn_demux,
            Category::LsnCrossbars => self.lsn_crossbars,
            Category::LsnLutBits => self.lsn_lut_bits,
        }
    }
}

fn halve(x: u64) -> u64 {
    assert!(x.is_multiple_of(2), "odd count {x} in a halved cost row");
    x / 2
}

pub fn cost(variant: Variant, params: &CostParams) -> CostBreakdown {
    use Variant::*;
    let CostParams {
        bq,
        nm,
        dc,
        p,
        q,
        gamma,
        rho,
    } = *params;
    let q1 = q - 1;
    let gsn = bq * nm * q1 * dc;
    let width = params.padded_rho();
    let k = u64::from(width.trailing_zeros());
    let (lsn_wires, lsn_demux, lsn_crossbars, lsn_lut_bits) = match variant {
        P1 | P2 => (Some(bq * q1 * gamma), Some(0), Some(0), Some(0)),
        P3 => (
            Some(bq * q1 * gamma),
            Some(0),
            Some(width * k - halve(width)),
            Some(halve(gamma * width * k)),
        ),
        P4 => (
            Some(2 * bq * q1 * gamma),
            Some(bq * q1 * gamma),
            Some(width * k - halve(width)),
            Some(halve(gamma * width * k)),
        ),
        Ref4 | Ref5 => (None, None, None, None),
    };
    CostBreakdown {
        variant,
        gsn_wires: if variant.is_reference() { 3 * gsn } else { gsn },
        gsn_demux: match variant {
            P1 => 0,
            Ref4 | Ref5 => 3 * q1 * rho,
            _ => q1 * rho,
        },
        gsn_lut_bits: match variant {
            P1 => 0,
            Ref4 => p * q1 * (rho + halve(gamma * (gamma - 1))),
            Ref5 => p * q1 * (3 * rho + gamma - 2),
            _ => p * q1 * rho,
        },
        lsn_wires,
        lsn_demux,
        lsn_crossbars,
        lsn_lut_bits,
        supports_class1: variant != P3,
        supports_class2: matches!(variant, P3 | P4),
        flexible: matches!(variant, P2 | P3 | P4),
        padded: matches!(variant, P3 | P4) && width != rho,
    }
}

/// Per-category weights for aggregate savings.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights(pub Vec<(Category, f64)>);

impl Weights {
    /// Global-network wires only: the one wire row every design has.
    pub fn wires() -> Self {
        Weights(vec![(Category::GsnWires, 1.0)])
    }

    /// Every category with weight 1.
    pub fn all() -> Self {
        Weights(Category::ALL.into_iter().map(|c| (c, 1.0)).collect())
    }

    fn weighted(&self, b: &CostBreakdown) -> f64 {
        self.0
            .iter()
            .map(|&(c, w)| w * b.get(c).unwrap_or(0) as f64)
            .sum()
    }
}

impl FromStr for Weights {
    type Err = Error;

    /// `wires`, `all`, or `category=weight,...`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wires" => Ok(Weights::wires()),
            "all" => Ok(Weights::all()),
            _ => s
                .split(',')
                .map(|kv| {
                    let (k, v) = kv.split_once('=').ok_or_else(|| {
                        Error::Parse(format!("weight `{kv}` is not category=value"))
                    })?;
                    let w: f64 = v
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad weight `{v}`")))?;
                    Ok((k.trim().parse()?, w))
                })
                .collect::<Result<Vec<_>>>()
                .map(Weights),
        }
    }
}

/// `1 - weighted(a) / weighted(b)`; rows a design lacks count as 0.
pub fn savings(a: &CostBreakdown, b: &CostBreakdown, weights: &Weights) -> Result<f64> {
    let den = weights.weighted(b);
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(1.0 - weights.weighted(a) / den)
}

/// `1 - a/b` for each category present and nonzero in `b`.
pub fn category_savings(a: &CostBreakdown, b: &CostBreakdown) -> Vec<(Category, Option<f64>)> {
    Category::ALL
        .into_iter()
        .map(|c| {
            let r = match (a.get(c), b.get(c)) {
                (Some(x), Some(y)) if y > 0 => Some(1.0 - x as f64 / y as f64),
                _ => None,
            };
            (c, r)
        })
        .collect()
}

/// Saving from keeping one of `k` equal-sized network copies: `(k-1)/k`.
pub fn fractional_saving(k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok((k - 1) as f64 / k as f64)
}

pub const NOTES: [&str; 2] = [
    "The Class-II network is characterized in two incompatible ways: as 1/q of a conventional network, \
     and as saving (k-1)/k with k = 16 for a 32-ary code. Both figures are shown; neither is derived from the other.",
    "The reference formulas were characterized on a 32-ary rate-0.85 Class-I code, while the headline \
     comparison uses the 64-ary (1260, 630) code with unstated weights and word sizes. Aggregate savings \
     here depend on the weights chosen and are not expected to match previously reported aggregates.",
];

fn cell(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn yes(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

/// Plain-text grid: evaluated counts, support flags, formulas, and notes.
pub fn render_report(variants: &[Variant], params: &CostParams) -> String {
    let rows: Vec<CostBreakdown> = variants.iter().map(|&v| cost(v, params)).collect();
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut head = vec!["row".to_string()];
    head.extend(variants.iter().map(|v| v.name().to_string()));
    grid.push(head);
    for c in Category::ALL {
        let mut line = vec![c.name().to_string()];
        line.extend(rows.iter().map(|b| cell(b.get(c))));
        grid.push(line);
    }
    for (name, f) in [
        (
            "class1",
            (|b: &CostBreakdown| b.supports_class1) as fn(&CostBreakdown) -> bool,
        ),
        ("class2", |b| b.supports_class2),
        ("flexible", |b| b.flexible),
    ] {
        let mut line = vec![name.to_string()];
        line.extend(rows.iter().map(|b| yes(f(b)).to_string()));
        grid.push(line);
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|i| grid.iter().map(|r| r[i].len()).max().unwrap_or(0))
        .collect();
    let mut out = format!(
        "bq={} nm={} dc={} p={} q={} gamma={} rho={}\n",
        params.bq, params.nm, params.dc, params.p, params.q, params.gamma, params.rho
    );
    for r in &grid {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    if rows.iter().any(|b| b.padded) {
        out.push_str(&format!(
            "crossbar and local LUT rows use the padded width {} (rho = {} is not a power of two)\n",
            params.padded_rho(),
            params.rho
        ));
    }
    out.push_str("formulas:\n");
    for c in Category::ALL {
        let f: Vec<String> = variants
            .iter()
            .map(|&v| format!("{}: {}", v.name(), c.formula(v)))
            .collect();
        out.push_str(&format!("  {}: {}\n", c.name(), f.join("; ")));
    }
    out.push_str("notes:\n");
    for n in NOTES {
        out.push_str(&format!("  - {n}\n"));
    }
    out
}

/// One line per (design, category) with the formula echoed.
pub fn render_csv(variants: &[Variant], params: &CostParams) -> String {
    let mut out = String::from("design,category,formula,value\n");
    for &v in variants {
        let b = cost(v, params);
        for c in Category::ALL {
            out.push_str(&format!(
                "{},{},{},{}\n",
                v.name(),
                c.name(),
                c.formula(v),
                cell(b.get(c))
            ));
        }
    }
    out
}
