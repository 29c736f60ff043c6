//! Sparse Clifford-algebra arithmetic over `Cℓ_n` with `b_i² = +1`.
//!
//! A basis blade `c_x = b_1^{x_1} … b_n^{x_n}` is stored as an n-bit mask
//! where bit `i - 1` is set when generator `b_i` is present. The textual form
//! lists generators left to right, so `c_00100` is `b_3`.
//!
//! The geometric product of two blades is the XOR of their masks with sign
//! `(-1)^D`, where for `c_x · c_y` the exponent is `D = Σ_{k<l} y_k x_l`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::RngCore;

use crate::error::{Error, Result};

/// Largest supported dimension; a mask must fit in one `u64`.
pub const MAX_DIMENSION: u32 = 63;

/// Largest dimension accepted by [`dense_oracle_product`].
pub const ORACLE_MAX_DIMENSION: u32 = 10;

fn check_dimension(dim: u32) -> Result<()> {
    if (1..=MAX_DIMENSION).contains(&dim) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(dim))
    }
}

fn check_same(left: u32, right: u32) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

#[inline]
fn low_bits(dim: u32) -> u64 {
    (1u64 << dim) - 1
}

/// Sign exponent on raw masks: number of pairs `k < l` with `right_k = left_l = 1`.
#[inline]
pub(crate) fn sign_exponent_bits(left: u64, right: u64) -> u32 {
    let mut d = 0;
    let mut r = right;
    while r != 0 {
        let k = r.trailing_zeros();
        d += (left >> k >> 1).count_ones();
        r &= r - 1;
    }
    d
}

/// Product of raw blades: `(negative, mask)`.
#[inline]
pub(crate) fn product_bits(left: u64, right: u64) -> (bool, u64) {
    (sign_exponent_bits(left, right) & 1 == 1, left ^ right)
}

/// `(-1)^{g(g-1)/2}` for a blade of grade `g`.
#[inline]
pub(crate) fn reversion_sign_of_grade(grade: u32) -> i64 {
    if (grade / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An n-bit string identifying the basis blade `c_x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeMask {
    bits: u64,
    dim: u32,
}

impl BladeMask {
    pub fn new(bits: u64, dim: u32) -> Result<Self> {
        check_dimension(dim)?;
        if bits & !low_bits(dim) != 0 {
            return Err(Error::Parse {
                input: format!("{bits:#x}"),
                reason: format!("mask does not fit in {dim} bits"),
            });
        }
        Ok(Self { bits, dim })
    }

    /// The unit blade **1**.
    pub fn scalar(dim: u32) -> Result<Self> {
        Self::new(0, dim)
    }

    /// The generator `b_index`, with `index` counted from 1.
    pub fn generator(index: u32, dim: u32) -> Result<Self> {
        check_dimension(dim)?;
        if index == 0 || index > dim {
            return Err(Error::GeneratorOutOfRange {
                index,
                dimension: dim,
            });
        }
        Ok(Self {
            bits: 1 << (index - 1),
            dim,
        })
    }

    /// Draws a mask uniformly over all `2^dim` bit strings, the all-zero one included.
    pub fn random<R: RngCore + ?Sized>(dim: u32, rng: &mut R) -> Result<Self> {
        check_dimension(dim)?;
        Ok(Self {
            bits: rng.next_u64() & low_bits(dim),
            dim,
        })
    }

    pub(crate) fn from_bits_unchecked(bits: u64, dim: u32) -> Self {
        debug_assert!(bits & !low_bits(dim) == 0);
        Self { bits, dim }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn dimension(self) -> u32 {
        self.dim
    }

    pub fn grade(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_scalar(self) -> bool {
        self.bits == 0
    }

    /// Generator indices (1-based, ascending) present in the blade.
    pub fn generators(self) -> impl Iterator<Item = u32> {
        (1..=self.dim).filter(move |i| self.bits >> (i - 1) & 1 == 1)
    }

    /// Sign picked up by this blade under reversion.
    pub fn reversion_sign(self) -> i64 {
        reversion_sign_of_grade(self.grade())
    }
}

impl fmt::Display for BladeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("c_")?;
        for i in 0..self.dim {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BladeMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let digits = s
            .trim()
            .strip_prefix("c_")
            .ok_or_else(|| parse_err("expected prefix c_"))?;
        let dim = u32::try_from(digits.len()).map_err(|_| parse_err("too long"))?;
        check_dimension(dim).map_err(|_| parse_err("unsupported width"))?;
        let mut bits = 0u64;
        for (i, ch) in digits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(parse_err("blade digits must be 0 or 1")),
            }
        }
        Ok(Self { bits, dim })
    }
}

/// `D` for the product `left · right`.
pub fn sign_exponent(left: BladeMask, right: BladeMask) -> Result<u32> {
    check_same(left.dim, right.dim)?;
    Ok(sign_exponent_bits(left.bits, right.bits))
}

/// Geometric product of two basis blades: `((-1)^D, left ⊕ right)`.
pub fn blade_product(left: BladeMask, right: BladeMask) -> Result<SignedBlade> {
    check_same(left.dim, right.dim)?;
    let (negative, bits) = product_bits(left.bits, right.bits);
    Ok(SignedBlade {
        negative,
        mask: BladeMask::from_bits_unchecked(bits, left.dim),
    })
}

/// A basis blade with sign ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedBlade {
    negative: bool,
    mask: BladeMask,
}

impl SignedBlade {
    pub fn positive(mask: BladeMask) -> Self {
        Self {
            negative: false,
            mask,
        }
    }

    pub fn negative(mask: BladeMask) -> Self {
        Self {
            negative: true,
            mask,
        }
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn mask(self) -> BladeMask {
        self.mask
    }
}

impl fmt::Display for SignedBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { "-" } else { "+" }, self.mask)
    }
}

impl FromStr for SignedBlade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('-') {
            Ok(Self::negative(rest.trim_start().parse()?))
        } else {
            let rest = s.strip_prefix('+').unwrap_or(s);
            Ok(Self::positive(rest.trim_start().parse()?))
        }
    }
}

/// Integer-weighted sum of basis blades. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    dim: u32,
    terms: BTreeMap<u64, i64>,
}

impl Multivector {
    pub fn zero(dim: u32) -> Result<Self> {
        check_dimension(dim)?;
        Ok(Self {
            dim,
            terms: BTreeMap::new(),
        })
    }

    /// `coefficient · 1`.
    pub fn scalar(dim: u32, coefficient: i64) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        m.accumulate(0, coefficient);
        Ok(m)
    }

    pub fn from_blade(mask: BladeMask) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mask.bits, 1);
        Self {
            dim: mask.dim,
            terms,
        }
    }

    pub fn from_signed(blade: SignedBlade) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(blade.mask.bits, blade.sign());
        Self {
            dim: blade.mask.dim,
            terms,
        }
    }

    /// Sums `(mask, coefficient)` pairs; repeated masks are combined.
    pub fn from_terms<I>(dim: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BladeMask, i64)>,
    {
        let mut m = Self::zero(dim)?;
        for (mask, c) in terms {
            check_same(dim, mask.dim)?;
            m.accumulate(mask.bits, c);
        }
        Ok(m)
    }

    fn accumulate(&mut self, bits: u64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(bits).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&bits);
        }
    }

    pub fn dimension(&self) -> u32 {
        self.dim
    }

    /// Number of stored (nonzero) terms.
    pub fn blade_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: BladeMask) -> i64 {
        if mask.dim != self.dim {
            return 0;
        }
        self.terms.get(&mask.bits).copied().unwrap_or(0)
    }

    /// Terms in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeMask, i64)> + '_ {
        self.terms
            .iter()
            .map(move |(&bits, &c)| (BladeMask::from_bits_unchecked(bits, self.dim), c))
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&b, &c)| (b, c))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        let mut out = self.clone();
        for (&b, &c) in &other.terms {
            out.accumulate(b, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        let mut out = self.clone();
        for (&b, &c) in &other.terms {
            out.accumulate(b, -c);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = Self {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (&b, &c) in &self.terms {
            out.accumulate(b, c * factor);
        }
        out
    }

    /// Bilinear extension of [`blade_product`].
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        let mut out = Self {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (&x, &a) in &self.terms {
            for (&y, &b) in &other.terms {
                let (negative, bits) = product_bits(x, y);
                let c = a * b;
                out.accumulate(bits, if negative { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Reverses generator order in every blade.
    pub fn reversion(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(&b, &c)| (b, c * reversion_sign_of_grade(b.count_ones())))
                .collect(),
        }
    }

    /// Inner product on the orthonormal blade basis.
    ///
    /// Equal blades of grade `g` contribute `(-1)^{g(g-1)/2}` (the determinant
    /// of an anti-diagonal identity); distinct blades are orthogonal.
    pub fn inner_product(&self, other: &Self) -> Result<i64> {
        check_same(self.dim, other.dim)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .terms
            .iter()
            .filter_map(|(b, &c)| {
                large
                    .terms
                    .get(b)
                    .map(|&d| c * d * reversion_sign_of_grade(b.count_ones()))
            })
            .sum())
    }

    /// Parses the textual form, accepting `"0"` for the zero multivector.
    pub fn parse_with_dimension(s: &str, dim: u32) -> Result<Self> {
        if s.trim() == "0" {
            return Self::zero(dim);
        }
        let m: Self = s.parse()?;
        check_same(dim, m.dim)?;
        Ok(m)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mask, c)) in self.terms().enumerate() {
            let sep = match (i, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            f.write_str(sep)?;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{mask}")?;
        }
        Ok(())
    }
}

impl FromStr for Multivector {
    type Err = Error;

    /// Parses sums such as `"-c_00110 + c_11011 + 2c_01001"`. The dimension is
    /// taken from the blade width; use [`Multivector::parse_with_dimension`]
    /// for `"0"`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err("empty input"));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut dim = None;
        let mut terms = Vec::new();
        for piece in pieces {
            let (negative, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            let at = body.find("c_").ok_or_else(|| parse_err("term without blade"))?;
            let magnitude: i64 = if at == 0 {
                1
            } else {
                body[..at]
                    .trim_end_matches('*')
                    .parse()
                    .map_err(|_| parse_err("bad coefficient"))?
            };
            let mask: BladeMask = body[at..].parse()?;
            match dim {
                None => dim = Some(mask.dim),
                Some(d) if d != mask.dim => return Err(parse_err("blades of mixed width")),
                _ => {}
            }
            terms.push((mask, if negative { -magnitude } else { magnitude }));
        }
        Self::from_terms(dim.expect("at least one term"), terms)
    }
}

/// Reference product by symbol rewriting, accumulated into a dense `2^n` array.
///
/// Each pair of blades is written as a generator word (left generators then
/// right generators, both ascending) and bubble-sorted: swapping distinct
/// neighbours flips the sign, equal neighbours annihilate (`b_i b_i = 1`).
pub fn dense_oracle_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    check_same(a.dim, b.dim)?;
    if a.dim > ORACLE_MAX_DIMENSION {
        return Err(Error::OracleTooLarge {
            got: a.dim,
            limit: ORACLE_MAX_DIMENSION,
        });
    }
    let mut dense = vec![0i64; 1 << a.dim];
    for (x, ca) in a.terms() {
        for (y, cb) in b.terms() {
            let mut word: Vec<u32> = x.generators().chain(y.generators()).collect();
            let mut sign = 1i64;
            let mut i = 0;
            while i + 1 < word.len() {
                if word[i] > word[i + 1] {
                    word.swap(i, i + 1);
                    sign = -sign;
                    i = i.saturating_sub(1);
                } else if word[i] == word[i + 1] {
                    word.drain(i..i + 2);
                    i = i.saturating_sub(1);
                } else {
                    i += 1;
                }
            }
            let bits = word.iter().fold(0u64, |acc, g| acc | 1 << (g - 1));
            dense[bits as usize] += sign * ca * cb;
        }
    }
    let mut out = Multivector::zero(a.dim)?;
    for (bits, c) in dense.into_iter().enumerate() {
        out.accumulate(bits as u64, c);
    }
    Ok(out)
}
