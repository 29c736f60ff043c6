//! Cartan (Pauli/Kronecker) matrix representation of `Cℓ_n`, signatures and
//! the Hamming and Euclidean similarity measures.
//!
//! Generators are Kronecker products of Pauli matrices:
//!
//! ```text
//! b_{2k}   = σ1 ⊗ … ⊗ σ1 ⊗ σ2 ⊗ 1 ⊗ … ⊗ 1
//! b_{2k-1} = σ1 ⊗ … ⊗ σ1 ⊗ σ3 ⊗ 1 ⊗ … ⊗ 1      (k-1 trailing units)
//! ```
//!
//! with `n - k` leading `σ1` factors in the full form (side `2^n`) and
//! `⌈n/2⌉ - k + 1` in the reduced form (side `2^{⌈n/2⌉+1}`). Every reduced
//! generator starts with `σ1`, so a reduced matrix has the block layout
//! `[[E, O], [O, E]]` with `E` the even-grade and `O` the odd-grade part. The
//! signature is the top strip `[E | O]`: one box from each diagonal.
//!
//! All arithmetic is exact over Gaussian integers.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_complex::Complex;
use num_rational::Ratio;

use crate::algebra::{BladeMask, Multivector, SignedBlade};
use crate::error::{Error, Result};

pub type Gaussian = Complex<i64>;

const ZERO: Gaussian = Complex::new(0, 0);
const ONE: Gaussian = Complex::new(1, 0);
const I: Gaussian = Complex::new(0, 1);

/// Largest dimension for which the full `2^n` form is built.
pub const FULL_FORM_MAX_DIMENSION: u32 = 12;

/// Largest dimension for which signatures are built (`2^20` rows).
pub const SIGNATURE_MAX_DIMENSION: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Full,
    Reduced,
}

impl Form {
    /// Number of 2×2 Kronecker factors.
    pub fn factor_count(self, n: u32) -> u32 {
        match self {
            Form::Full => n,
            Form::Reduced => n.div_ceil(2) + 1,
        }
    }

    fn check(self, n: u32) -> Result<()> {
        match self {
            Form::Full if n > FULL_FORM_MAX_DIMENSION => Err(Error::RepresentationTooLarge {
                form: "full",
                dimension: n,
                limit: FULL_FORM_MAX_DIMENSION,
            }),
            Form::Reduced if n > SIGNATURE_MAX_DIMENSION => Err(Error::RepresentationTooLarge {
                form: "reduced",
                dimension: n,
                limit: SIGNATURE_MAX_DIMENSION,
            }),
            _ => Ok(()),
        }
    }
}

/// The 2×2 factors appearing in generator products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    Unit,
    Sigma1,
    Sigma2,
    Sigma3,
}

impl Pauli {
    pub fn matrix(self) -> ComplexMatrix {
        let dense = match self {
            Pauli::Unit => [[ONE, ZERO], [ZERO, ONE]],
            Pauli::Sigma1 => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Sigma2 => [[ZERO, -I], [I, ZERO]],
            Pauli::Sigma3 => [[ONE, ZERO], [ZERO, -ONE]],
        };
        ComplexMatrix::from_dense(2, dense.iter().flatten().copied())
    }
}

/// Kronecker factors of generator `b_index`, leftmost first.
pub fn generator_factors(index: u32, n: u32, form: Form) -> Result<Vec<Pauli>> {
    if index == 0 || index > n {
        return Err(Error::GeneratorOutOfRange {
            index,
            dimension: n,
        });
    }
    let k = index.div_ceil(2);
    let middle = if index.is_multiple_of(2) {
        Pauli::Sigma2
    } else {
        Pauli::Sigma3
    };
    let leading = form.factor_count(n) - k;
    let mut factors = vec![Pauli::Sigma1; leading as usize];
    factors.push(middle);
    factors.extend(std::iter::repeat_n(Pauli::Unit, (k - 1) as usize));
    Ok(factors)
}

/// Square sparse matrix of Gaussian integers, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMatrix {
    side: usize,
    rows: Vec<Vec<(usize, Gaussian)>>,
}

impl ComplexMatrix {
    pub fn zero(side: usize) -> Self {
        Self {
            side,
            rows: vec![Vec::new(); side],
        }
    }

    pub fn identity(side: usize) -> Self {
        Self {
            side,
            rows: (0..side).map(|r| vec![(r, ONE)]).collect(),
        }
    }

    /// Builds from row-major entries; zeros are skipped.
    pub fn from_dense(side: usize, entries: impl IntoIterator<Item = Gaussian>) -> Self {
        let mut m = Self::zero(side);
        for (idx, v) in entries.into_iter().enumerate() {
            if v != ZERO {
                m.rows[idx / side].push((idx % side, v));
            }
        }
        m
    }

    fn from_row_maps(side: usize, rows: Vec<BTreeMap<usize, Gaussian>>) -> Self {
        Self {
            side,
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().filter(|&(_, v)| v != ZERO).collect())
                .collect(),
        }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, row: usize, col: usize) -> Gaussian {
        self.rows[row]
            .binary_search_by_key(&col, |&(c, _)| c)
            .map(|i| self.rows[row][i].1)
            .unwrap_or(ZERO)
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Gaussian)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn kron(&self, other: &Self) -> Self {
        let side = self.side * other.side;
        let mut rows = vec![Vec::new(); side];
        for (ra, row_a) in self.rows.iter().enumerate() {
            for (rb, row_b) in other.rows.iter().enumerate() {
                let out = &mut rows[ra * other.side + rb];
                for &(ca, va) in row_a {
                    for &(cb, vb) in row_b {
                        out.push((ca * other.side + cb, va * vb));
                    }
                }
            }
        }
        Self { side, rows }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_side(other)?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BTreeMap::new();
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k] {
                        *acc.entry(c).or_insert(ZERO) += a * b;
                    }
                }
                acc
            })
            .collect();
        Ok(Self::from_row_maps(self.side, rows))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_side(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Gaussian> = a.iter().copied().collect();
                for &(c, v) in b {
                    *acc.entry(c).or_insert(ZERO) += v;
                }
                acc
            })
            .collect();
        Ok(Self::from_row_maps(self.side, rows))
    }

    pub fn scale(&self, factor: Gaussian) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(c, v)| (c, v * factor))
                    .filter(|&(_, v)| v != ZERO)
                    .collect()
            })
            .collect();
        Self {
            side: self.side,
            rows,
        }
    }

    /// Exactly one nonzero per row and column, each in `{±1, ±i}`.
    pub fn is_unit_monomial(&self) -> bool {
        let mut col_hits = vec![0u32; self.side];
        for row in &self.rows {
            if row.len() != 1 {
                return false;
            }
            let (c, v) = row[0];
            if v.norm_sqr() != 1 {
                return false;
            }
            col_hits[c] += 1;
        }
        col_hits.iter().all(|&h| h == 1)
    }

    /// Sparse dump, one `row col re im` line per nonzero entry.
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in self.nonzeros() {
            let _ = writeln!(out, "{r} {c} {} {}", v.re, v.im);
        }
        out
    }

    fn check_side(&self, other: &Self) -> Result<()> {
        if self.side == other.side {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: (self.side, self.side),
                right: (other.side, other.side),
            })
        }
    }
}

/// Kronecker product of the Pauli factors of `b_index`.
pub fn generator_matrix(index: u32, n: u32, form: Form) -> Result<ComplexMatrix> {
    form.check(n)?;
    let factors = generator_factors(index, n, form)?;
    Ok(factors
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, f| acc.kron(&f.matrix())))
}

/// Ordered product of generator matrices (ascending index), times the sign.
pub fn blade_matrix(blade: SignedBlade, form: Form) -> Result<ComplexMatrix> {
    let mask = blade.mask();
    let n = mask.dimension();
    form.check(n)?;
    let side = 1usize << form.factor_count(n);
    let mut m = ComplexMatrix::identity(side);
    for g in mask.generators() {
        m = m.matmul(&generator_matrix(g, n, form)?)?;
    }
    Ok(m.scale(Complex::new(blade.sign(), 0)))
}

/// Coefficient-weighted sum of blade matrices.
pub fn multivector_matrix(a: &Multivector, form: Form) -> Result<ComplexMatrix> {
    let n = a.dimension();
    form.check(n)?;
    let mut m = ComplexMatrix::zero(1usize << form.factor_count(n));
    for (mask, c) in a.terms() {
        let b = blade_matrix(SignedBlade::positive(mask), form)?;
        m = m.add(&b.scale(Complex::new(c, 0)))?;
    }
    Ok(m)
}

/// `i^phase · X^x · Z^z` over the factor bits, most significant bit = leftmost factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct PauliString {
    phase: u8,
    x: u64,
    z: u64,
}

impl PauliString {
    const IDENTITY: Self = Self {
        phase: 0,
        x: 0,
        z: 0,
    };

    fn generator(index: u32, n: u32, form: Form) -> Self {
        let factors = form.factor_count(n);
        let k = index.div_ceil(2);
        // bit of the σ2/σ3 factor; every factor to its left is σ1
        let pos = k - 1;
        let x_leading = ((1u64 << factors) - 1) & !((1u64 << (pos + 1)) - 1);
        if index.is_multiple_of(2) {
            // σ2 = i·σ1·σ3
            Self {
                phase: 1,
                x: x_leading | 1 << pos,
                z: 1 << pos,
            }
        } else {
            Self {
                phase: 0,
                x: x_leading,
                z: 1 << pos,
            }
        }
    }

    fn mul(self, rhs: Self) -> Self {
        let swaps = (self.z & rhs.x).count_ones() as u8;
        Self {
            phase: (self.phase + rhs.phase + 2 * (swaps & 1)) & 3,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
        }
    }

    fn blade(bits: u64, n: u32, form: Form) -> Self {
        BladeMask::from_bits_unchecked(bits, n)
            .generators()
            .fold(Self::IDENTITY, |acc, g| acc.mul(Self::generator(g, n, form)))
    }

    /// Entry at `(row, row ^ x)`.
    #[inline]
    fn entry(self, row: u64) -> Gaussian {
        let negative = ((row ^ self.x) & self.z).count_ones() & 1 == 1;
        let v = match self.phase {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        };
        if negative {
            -v
        } else {
            v
        }
    }
}

/// The top `2^{⌈n/2⌉}` rows of the reduced matrix, sparse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    rows: usize,
    cols: usize,
    // (row * cols + col, value), sorted by key, nonzero values only
    entries: Vec<(u64, Gaussian)>,
}

impl Signature {
    /// Arbitrary-shape signature from row-major entries.
    pub fn from_dense(rows: usize, cols: usize, entries: &[Gaussian]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                left: rows * cols,
                right: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries: entries
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != ZERO)
                .map(|(k, &v)| (k as u64, v))
                .collect(),
        })
    }

    /// The first `rows` rows of a square matrix.
    pub fn from_matrix_rows(m: &ComplexMatrix, rows: usize) -> Self {
        let cols = m.side();
        Self {
            rows,
            cols,
            entries: m
                .nonzeros()
                .take_while(|&(r, _, _)| r < rows)
                .map(|(r, c, v)| ((r * cols + c) as u64, v))
                .collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entry_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Gaussian {
        let key = (row * self.cols + col) as u64;
        self.entries
            .binary_search_by_key(&key, |&(k, _)| k)
            .map(|i| self.entries[i].1)
            .unwrap_or(ZERO)
    }

    /// Nonzero `(row, col, value)` triples, row-major.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Gaussian)> + '_ {
        let cols = self.cols as u64;
        self.entries
            .iter()
            .map(move |&(k, v)| ((k / cols) as usize, (k % cols) as usize, v))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            })
        }
    }
}

/// Signature of a multivector, built directly from Pauli strings.
pub fn signature(a: &Multivector) -> Result<Signature> {
    let n = a.dimension();
    Form::Reduced.check(n)?;
    let half = 1u64 << n.div_ceil(2);
    let cols = 2 * half;

    let mut groups: BTreeMap<u64, Vec<Gaussian>> = BTreeMap::new();
    for (bits, c) in a.raw_terms() {
        let p = PauliString::blade(bits, n, Form::Reduced);
        let coef = Complex::new(c, 0);
        let column = groups
            .entry(p.x)
            .or_insert_with(|| vec![ZERO; half as usize]);
        for (row, slot) in column.iter_mut().enumerate() {
            *slot += coef * p.entry(row as u64);
        }
    }

    let mut entries = Vec::new();
    for (x, column) in groups {
        for (row, v) in column.into_iter().enumerate() {
            if v != ZERO {
                let row = row as u64;
                entries.push((row * cols + (row ^ x), v));
            }
        }
    }
    entries.sort_unstable_by_key(|&(k, _)| k);
    Ok(Signature {
        rows: half as usize,
        cols: cols as usize,
        entries,
    })
}

/// A similarity value that may be infinite; `Infinite` ranks above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum Extended<T> {
    Finite(T),
    Infinite,
}

impl<T: Copy + Into<f64>> Extended<T> {
    pub fn to_f64(self) -> f64 {
        match self {
            Extended::Finite(v) => v.into(),
            Extended::Infinite => f64::INFINITY,
        }
    }
}

impl Extended<Ratio<u64>> {
    pub fn ratio_to_f64(self) -> f64 {
        match self {
            Extended::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            Extended::Infinite => f64::INFINITY,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => v.fmt(f),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

/// Walks the union of two sorted sparse entry lists.
fn merge<'a>(
    a: &'a [(u64, Gaussian)],
    b: &'a [(u64, Gaussian)],
) -> impl Iterator<Item = (Gaussian, Gaussian)> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || match (a.get(i), b.get(j)) {
        (Some(&(ka, va)), Some(&(kb, vb))) => Some(if ka == kb {
            i += 1;
            j += 1;
            (va, vb)
        } else if ka < kb {
            i += 1;
            (va, ZERO)
        } else {
            j += 1;
            (ZERO, vb)
        }),
        (Some(&(_, va)), None) => {
            i += 1;
            Some((va, ZERO))
        }
        (None, Some(&(_, vb))) => {
            j += 1;
            Some((ZERO, vb))
        }
        (None, None) => None,
    })
}

/// Ratio of common to uncommon points, `C / U`.
///
/// A point is common when both entries are nonzero; every other position,
/// including those where both entries vanish, counts as uncommon.
pub fn hamming_measure(x: &Signature, y: &Signature) -> Result<Extended<Ratio<u64>>> {
    x.check_shape(y)?;
    let common = merge(&x.entries, &y.entries)
        .filter(|(a, b)| *a != ZERO && *b != ZERO)
        .count() as u64;
    let uncommon = x.entry_count() as u64 - common;
    Ok(if uncommon == 0 {
        Extended::Infinite
    } else {
        Extended::Finite(Ratio::new(common, uncommon))
    })
}

/// Common points against points where exactly one entry is nonzero.
///
/// Positions where both signatures vanish are ignored. This variant tracks
/// published recognition curves more closely than [`hamming_measure`].
pub fn hamming_support_measure(x: &Signature, y: &Signature) -> Result<Extended<Ratio<u64>>> {
    x.check_shape(y)?;
    let (mut common, mut uncommon) = (0u64, 0u64);
    for (a, b) in merge(&x.entries, &y.entries) {
        if a != ZERO && b != ZERO {
            common += 1;
        } else {
            uncommon += 1;
        }
    }
    Ok(if uncommon == 0 {
        Extended::Infinite
    } else {
        Extended::Finite(Ratio::new(common, uncommon))
    })
}

/// `1 / Σ √| |x|² - |y|² |`, infinite when every modulus agrees.
pub fn euclidean_measure(x: &Signature, y: &Signature) -> Result<Extended<f64>> {
    x.check_shape(y)?;
    let mut identical = true;
    let mut sum = 0.0;
    for (a, b) in merge(&x.entries, &y.entries) {
        let d = a.norm_sqr().abs_diff(b.norm_sqr());
        if d != 0 {
            identical = false;
            sum += (d as f64).sqrt();
        }
    }
    Ok(if identical {
        Extended::Infinite
    } else {
        Extended::Finite(1.0 / sum)
    })
}
