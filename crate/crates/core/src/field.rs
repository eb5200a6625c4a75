//! Arithmetic over prime fields GF(q) and the dense linear algebra needed to
//! pull codewords out of parity-check matrices.
//!
//! Vectors over GF(q) are plain `Vec<u32>` with every entry already reduced
//! modulo `q`; the owning [`PrimeField`] or [`GfMatrix`] carries the modulus.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the number of `q^k` combinations an exhaustive
/// enumeration may visit.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 24;

/// Largest accepted modulus. Products of two residues fit in `u64`.
pub const MAX_MODULUS: u32 = 1 << 31;

/// A prime field GF(q). Construction checks primality, so ring alphabets
/// such as Z/4 are rejected up front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if q >= MAX_MODULUS || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Self { q })
    }

    pub fn modulus(self) -> u32 {
        self.q
    }

    pub fn element(self, value: u32) -> Result<GfElement> {
        if value >= self.q {
            return Err(Error::ValueOutOfRange { value, q: self.q });
        }
        Ok(GfElement { value, q: self.q })
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.q) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn pow(self, base: u32, mut exp: u32) -> u32 {
        let q = self.q as u64;
        let mut acc = 1u64 % q;
        let mut b = base as u64 % q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % q;
            }
            b = b * b % q;
            exp >>= 1;
        }
        acc as u32
    }
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let q = q as u64;
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A single element of GF(q), tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GfElement {
    value: u32,
    q: u32,
}

// fallible, so the operator traits do not fit
#[allow(clippy::should_implement_trait)]
impl GfElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn field(self) -> PrimeField {
        PrimeField { q: self.q }
    }

    fn check_modulus(self, other: GfElement) -> Result<PrimeField> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        Ok(self.field())
    }

    pub fn add(self, other: GfElement) -> Result<GfElement> {
        let f = self.check_modulus(other)?;
        Ok(GfElement {
            value: f.add(self.value, other.value),
            q: self.q,
        })
    }

    pub fn mul(self, other: GfElement) -> Result<GfElement> {
        let f = self.check_modulus(other)?;
        Ok(GfElement {
            value: f.mul(self.value, other.value),
            q: self.q,
        })
    }

    pub fn inv(self) -> Result<GfElement> {
        Ok(GfElement {
            value: self.field().inv(self.value)?,
            q: self.q,
        })
    }
}

pub fn gf_add(a: GfElement, b: GfElement) -> Result<GfElement> {
    a.add(b)
}

pub fn gf_mul_inv(a: GfElement) -> Result<GfElement> {
    a.inv()
}

/// Dense row-major matrix over GF(q).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    entries: Vec<u32>,
}

impl GfMatrix {
    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Self {
        Self {
            rows,
            cols,
            field,
            entries: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from rows of residues. Every row must have the same
    /// length and every entry must lie in `0..q`.
    pub fn from_rows(rows: &[Vec<u32>], field: PrimeField) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for &v in row {
                if v >= field.modulus() {
                    return Err(Error::ValueOutOfRange {
                        value: v,
                        q: field.modulus(),
                    });
                }
                entries.push(v);
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            field,
            entries,
        })
    }

    pub fn identity(size: usize, field: PrimeField) -> Self {
        let mut m = Self::zeros(size, size, field);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        self.entries[r * self.cols + c] = value % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// True when `H·v = 0`.
    pub fn annihilates(&self, v: &[u32]) -> Result<bool> {
        Ok(self.mul_vec(v)?.iter().all(|&x| x == 0))
    }

    /// Reduced row-echelon form and the pivot column of each nonzero row.
    /// For each column the pivot is the lowest-index row (at or below the
    /// current position) holding a nonzero entry, so the result depends only
    /// on the input.
    pub fn reduced_row_echelon(&self) -> (GfMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = f.inv(m.get(lead, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(lead, c), inv);
                m.set(lead, c, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(lead, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced_row_echelon().1.len()
    }
}

/// Basis of `{v : H·v = 0}`, one vector per free column of the reduced
/// row-echelon form (in increasing column order).
pub fn nullspace_basis(h: &GfMatrix) -> Vec<Vec<u32>> {
    let f = h.field();
    let (rref, pivots) = h.reduced_row_echelon();
    let mut is_pivot = vec![false; h.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..h.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; h.cols()];
            v[free] = 1;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(rref.get(row, free));
            }
            v
        })
        .collect()
}

/// `q^k`, or `None` on overflow.
pub fn combination_count(q: u32, k: usize) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(k).ok()?)
}

/// Every linear combination of `basis`, each exactly once. The all-zero
/// vector comes first. Fails when `q^k` exceeds `limit`, signalling the
/// caller to fall back to [`random_combination`].
pub fn enumerate_codewords(
    basis: &[Vec<u32>],
    n: usize,
    field: PrimeField,
    limit: u64,
) -> Result<CodewordIter<'_>> {
    for v in basis {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let total = match combination_count(field.modulus(), basis.len()) {
        Some(t) if t <= limit => t,
        _ => {
            return Err(Error::DimensionTooLarge {
                combinations: format!("{}^{}", field.modulus(), basis.len()),
                limit,
            })
        }
    };
    Ok(CodewordIter {
        basis,
        field,
        coeffs: vec![0; basis.len()],
        current: vec![0; n],
        remaining: total,
    })
}

/// Odometer over coefficient vectors. The running codeword is updated by a
/// single basis addition per step.
pub struct CodewordIter<'a> {
    basis: &'a [Vec<u32>],
    field: PrimeField,
    coeffs: Vec<u32>,
    current: Vec<u32>,
    remaining: u64,
}

impl Iterator for CodewordIter<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current.clone();
        if self.remaining > 0 {
            let f = self.field;
            for (i, c) in self.coeffs.iter_mut().enumerate() {
                *c += 1;
                let wrapped = *c == f.modulus();
                if wrapped {
                    *c = 0;
                }
                // adding basis[i] q times is a no-op, so one addition covers both cases
                for (x, &b) in self.current.iter_mut().zip(&self.basis[i]) {
                    *x = f.add(*x, b);
                }
                if !wrapped {
                    break;
                }
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// A uniformly random element of the span of `basis` (may be zero).
pub fn random_combination<R: Rng + ?Sized>(
    basis: &[Vec<u32>],
    n: usize,
    field: PrimeField,
    rng: &mut R,
) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for b in basis {
        let c = rng.gen_range(0..field.modulus());
        if c == 0 {
            continue;
        }
        for (x, &y) in v.iter_mut().zip(b) {
            *x = field.add(*x, field.mul(c, y));
        }
    }
    v
}

pub fn hamming_weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}
