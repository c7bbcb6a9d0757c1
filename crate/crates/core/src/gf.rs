//! Arithmetic over GF(2^m) for 2 <= m <= 8.
//!
//! Elements are stored as polynomial-coefficient bit vectors ([`Gf`]); the
//! power-of-α form is a view obtained through the log/antilog tables held by
//! [`Field`]. Addition is XOR, multiplication goes through the tables.

use std::fmt;

use crate::error::{Error, Result};

/// Default primitive polynomials, indexed by `m`, including the `x^m` term.
const DEFAULT_POLYS: [u32; 9] = [0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D];

/// A field element in polynomial-bit form. `Gf(0)` is the zero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf(pub u8);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Log/antilog tables for GF(2^m).
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    m: u32,
    poly: u32,
    /// `log[bits]` for nonzero elements; entry 0 is unused.
    log: Vec<u16>,
    /// `antilog[k] = α^k` for `k` in `0..q-1`.
    antilog: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("m", &self.m)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl Field {
    /// Builds GF(2^m) from the fixed default primitive polynomial for `m`.
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=8).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        Self::with_poly(m, DEFAULT_POLYS[m as usize])
    }

    /// The default primitive polynomial (with the `x^m` bit) for degree `m`.
    pub fn default_poly(m: u32) -> Result<u32> {
        if !(2..=8).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        Ok(DEFAULT_POLYS[m as usize])
    }

    /// Builds GF(2^m) from a user-supplied polynomial. The polynomial must
    /// have degree exactly `m` and α must generate all `2^m - 1` nonzero
    /// elements.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(2..=8).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let q = 1usize << m;
        if poly >> m != 1 {
            return Err(Error::NotPrimitive { m, poly });
        }
        let mut log = vec![0u16; q];
        let mut antilog = vec![0u8; q - 1];
        let mut seen = vec![false; q];
        let mut x: u32 = 1;
        for (k, slot) in antilog.iter_mut().enumerate() {
            if seen[x as usize] {
                return Err(Error::NotPrimitive { m, poly });
            }
            seen[x as usize] = true;
            *slot = x as u8;
            log[x as usize] = k as u16;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= poly;
            }
        }
        // α^(q-1) must come back to 1.
        if x != 1 {
            return Err(Error::NotPrimitive { m, poly });
        }
        Ok(Field {
            m,
            poly,
            log,
            antilog,
        })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field order `q = 2^m`.
    #[inline]
    pub fn q(&self) -> usize {
        1 << self.m
    }

    /// Multiplicative group order `q - 1`.
    #[inline]
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    #[inline]
    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Checks that `bits` names an element of this field.
    pub fn element(&self, bits: u32) -> Result<Gf> {
        if bits >= self.q() as u32 {
            return Err(Error::ElementOutOfRange { m: self.m, bits });
        }
        Ok(Gf(bits as u8))
    }

    /// Iterates over all `q` elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.q()).map(|b| Gf(b as u8))
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        Gf(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let k = self.log[a.index()] as usize + self.log[b.index()] as usize;
        Gf(self.antilog[k % self.order()])
    }

    /// α^k, with `k` reduced modulo `q - 1` (negative exponents allowed).
    #[inline]
    pub fn pow_alpha(&self, k: i64) -> Gf {
        let ord = self.order() as i64;
        Gf(self.antilog[k.rem_euclid(ord) as usize])
    }

    /// `a^k` for `k` reduced modulo `q - 1`; `0^k` is 0 for every `k`, including 0.
    pub fn pow(&self, a: Gf, k: i64) -> Gf {
        if a.is_zero() {
            return Gf::ZERO;
        }
        self.pow_alpha(self.log[a.index()] as i64 * k)
    }

    pub fn log(&self, a: Gf) -> Result<usize> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.log[a.index()] as usize)
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        let l = self.log(a)?;
        Ok(Gf(self.antilog[(self.order() - l) % self.order()]))
    }
}
