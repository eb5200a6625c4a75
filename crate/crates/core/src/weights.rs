//! Pseudocodeword weights on the q-ary symmetric channel and on the AWGN
//! channel under q-PAM, q-PSK and general two-dimensional signal sets.
//!
//! A pseudocodeword is held as integer counts over the cover degree `M`, so
//! every q-ary symmetric channel quantity is evaluated in exact integer
//! arithmetic: both sides of each comparison are scaled by `M`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack used when a floating-point weight is compared with an
/// integer bound.
pub const REAL_TOLERANCE: f64 = 1e-9;

/// An `n × q` matrix of fractions `counts[i][j] / M`: the share of copies in
/// variable cloud `i` of a degree-`M` cover that carry symbol `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PseudocodewordJson", into = "PseudocodewordJson")]
pub struct Pseudocodeword {
    q: u32,
    degree: u32,
    counts: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PseudocodewordJson {
    q: u32,
    #[serde(rename = "M")]
    degree: u32,
    counts: Vec<Vec<u32>>,
}

impl TryFrom<PseudocodewordJson> for Pseudocodeword {
    type Error = Error;

    fn try_from(j: PseudocodewordJson) -> Result<Self> {
        Pseudocodeword::new(j.q, j.degree, j.counts)
    }
}

impl From<Pseudocodeword> for PseudocodewordJson {
    fn from(p: Pseudocodeword) -> Self {
        PseudocodewordJson {
            q: p.q,
            degree: p.degree,
            counts: p.counts,
        }
    }
}

impl Pseudocodeword {
    pub fn new(q: u32, degree: u32, counts: Vec<Vec<u32>>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidPseudocodeword(format!(
                "alphabet size {q} < 2"
            )));
        }
        if degree == 0 {
            return Err(Error::InvalidPseudocodeword(
                "cover degree must be positive".into(),
            ));
        }
        for (i, row) in counts.iter().enumerate() {
            if row.len() != q as usize {
                return Err(Error::InvalidPseudocodeword(format!(
                    "row {i} has {} entries, expected {q}",
                    row.len()
                )));
            }
            let sum: u64 = row.iter().map(|&c| c as u64).sum();
            if sum != degree as u64 {
                return Err(Error::InvalidPseudocodeword(format!(
                    "row {i} sums to {sum}, expected {degree}"
                )));
            }
        }
        Ok(Self { q, degree, counts })
    }

    /// The 0/1 indicator matrix of a word (degree 1).
    pub fn from_word(word: &[u32], q: u32) -> Result<Self> {
        let counts = word
            .iter()
            .map(|&s| {
                if s >= q {
                    return Err(Error::ValueOutOfRange { value: s, q });
                }
                let mut row = vec![0; q as usize];
                row[s as usize] = 1;
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Self::new(q, 1, counts)
    }

    pub fn zero(n: usize, q: u32, degree: u32) -> Result<Self> {
        let mut row = vec![0; q as usize];
        if let Some(first) = row.first_mut() {
            *first = degree;
        }
        Self::new(q, degree, vec![row; n])
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The common denominator `M`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn counts(&self) -> &[Vec<u32>] {
        &self.counts
    }

    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.counts[i][j]
    }

    pub fn fraction(&self, i: usize, j: usize) -> Ratio<u64> {
        Ratio::new(self.counts[i][j] as u64, self.degree as u64)
    }

    pub fn fraction_f64(&self, i: usize, j: usize) -> f64 {
        self.counts[i][j] as f64 / self.degree as f64
    }

    /// `M·(1 − f_{i,0})`: the number of copies in cloud `i` that are nonzero.
    pub fn nonzero_mass(&self, i: usize) -> u32 {
        self.degree - self.counts[i][0]
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|row| row[0] == self.degree)
    }

    /// True when every row puts all of its mass on one symbol, i.e. `F` is
    /// the indicator of an ordinary word.
    pub fn is_integral(&self) -> bool {
        self.counts.iter().all(|row| row.contains(&self.degree))
    }

    /// The word `F` indicates, when it is integral.
    pub fn as_word(&self) -> Option<Vec<u32>> {
        self.counts
            .iter()
            .map(|row| row.iter().position(|&c| c == self.degree).map(|j| j as u32))
            .collect()
    }
}

impl fmt::Display for Pseudocodeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M={} [", self.degree)?;
        for (i, row) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

// *****************
// Channel weights
// *****************

/// A weight value, exact where the channel allows it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum ChannelWeight {
    Integer(u64),
    Rational(Ratio<u128>),
    Real(f64),
}

impl ChannelWeight {
    pub fn as_f64(self) -> f64 {
        match self {
            ChannelWeight::Integer(v) => v as f64,
            ChannelWeight::Rational(r) => *r.numer() as f64 / *r.denom() as f64,
            ChannelWeight::Real(v) => v,
        }
    }

    /// `self ≥ bound`, exactly for integer and rational weights and up to
    /// [`REAL_TOLERANCE`] (relative) for real ones.
    pub fn at_least(self, bound: u64) -> bool {
        match self {
            ChannelWeight::Integer(v) => v >= bound,
            ChannelWeight::Rational(r) => *r.numer() >= bound as u128 * *r.denom(),
            ChannelWeight::Real(v) => v >= bound as f64 - REAL_TOLERANCE * (bound as f64).max(1.0),
        }
    }

    /// Total order for minimum tracking. Exact when both sides share a
    /// variant.
    pub fn total_cmp(&self, other: &ChannelWeight) -> Ordering {
        match (self, other) {
            (ChannelWeight::Integer(a), ChannelWeight::Integer(b)) => a.cmp(b),
            (ChannelWeight::Rational(a), ChannelWeight::Rational(b)) => a.cmp(b),
            _ => self.as_f64().total_cmp(&other.as_f64()),
        }
    }
}

impl fmt::Display for ChannelWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelWeight::Integer(v) => write!(f, "{v}"),
            ChannelWeight::Rational(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            ChannelWeight::Rational(r) => {
                write!(f, "{}/{} (~{:.6})", r.numer(), r.denom(), self.as_f64())
            }
            ChannelWeight::Real(v) => write!(f, "{v:.9}"),
        }
    }
}

/// The channels a weight can be evaluated on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Qsc,
    Pam,
    Psk,
    #[serde(rename = "2d")]
    TwoD(Constellation),
}

impl Channel {
    pub fn name(&self) -> &'static str {
        match self {
            Channel::Qsc => "qsc",
            Channel::Pam => "pam",
            Channel::Psk => "psk",
            Channel::TwoD(_) => "2d",
        }
    }

    pub fn weigh(&self, f: &Pseudocodeword) -> Result<ChannelWeight> {
        Ok(match self {
            Channel::Qsc => ChannelWeight::Integer(weight_qsc(f).weight),
            Channel::Pam => ChannelWeight::Rational(weight_awgn_pam_exact(f)),
            Channel::Psk => ChannelWeight::Real(weight_awgn_psk(f)),
            Channel::TwoD(c) => ChannelWeight::Real(weight_awgn_2d(f, c)?),
        })
    }
}

// ***********************
// q-ary symmetric channel
// ***********************

/// One chosen component `f_{row, column}` of `F′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QscSelection {
    pub row: usize,
    pub column: usize,
    pub value: Ratio<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QscWeightDetail {
    pub e: usize,
    pub selection: Vec<QscSelection>,
    pub equality_case: bool,
    pub weight: u64,
}

/// Weight on the q-ary symmetric channel.
///
/// Components of `F′` (column 0 removed) are visited in descending order,
/// ties broken by row then column, skipping rows already used. `e` is the
/// shortest such prefix whose sum reaches the zero-deficit of the remaining
/// rows, `Σ_{i unselected} (1 − f_{i,0})`. Reaching it with equality gives
/// `2e`, exceeding it gives `2e − 1`.
pub fn weight_qsc(f: &Pseudocodeword) -> QscWeightDetail {
    let mut entries: Vec<(u32, usize, usize)> = Vec::new();
    for (i, row) in f.counts().iter().enumerate() {
        for (j, &c) in row.iter().enumerate().skip(1) {
            if c > 0 {
                entries.push((c, i, j));
            }
        }
    }
    entries.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut used = vec![false; f.n()];
    let mut order = Vec::new();
    for (c, i, j) in entries {
        if !used[i] {
            used[i] = true;
            order.push((c, i, j));
        }
    }

    // everything below is scaled by M
    let mut remaining: u64 = (0..f.n()).map(|i| f.nonzero_mass(i) as u64).sum();
    let mut selected: u64 = 0;
    let mut selection = Vec::new();
    for &(c, i, j) in std::iter::once(&(0, usize::MAX, 0)).chain(order.iter()) {
        if i != usize::MAX {
            selected += c as u64;
            remaining -= f.nonzero_mass(i) as u64;
            selection.push(QscSelection {
                row: i,
                column: j,
                value: f.fraction(i, j),
            });
        }
        if selected >= remaining {
            let e = selection.len();
            let equality_case = selected == remaining;
            let weight = if equality_case {
                2 * e as u64
            } else {
                2 * e as u64 - 1
            };
            return QscWeightDetail {
                e,
                selection,
                equality_case,
                weight,
            };
        }
    }
    unreachable!("selecting every nonzero row leaves no remaining mass")
}

/// A received word over `{0, …, q−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReceivedVector(pub Vec<u32>);

impl ReceivedVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|&&s| s != 0).count()
    }
}

fn check_received(r: &ReceivedVector, f: &Pseudocodeword) -> Result<()> {
    if r.len() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: r.len(),
        });
    }
    if let Some(&s) = r.0.iter().find(|&&s| s >= f.q()) {
        return Err(Error::ValueOutOfRange { value: s, q: f.q() });
    }
    Ok(())
}

/// `d(r, F) = Σ_i Σ_k [r_i ≠ k] f_{i,k}`.
pub fn distance_qsc(r: &ReceivedVector, f: &Pseudocodeword) -> Result<Ratio<u64>> {
    check_received(r, f)?;
    let scaled: u64 =
        r.0.iter()
            .zip(f.counts())
            .map(|(&ri, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k as u32 != ri)
                    .map(|(_, &c)| c as u64)
                    .sum::<u64>()
            })
            .sum();
    Ok(Ratio::new(scaled, f.degree() as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    PrefersF,
    Tie,
    PrefersZero,
}

/// Compares `d(r, F)` with `d(r, 0)`, the Hamming weight of `r`.
pub fn decoder_prefers(r: &ReceivedVector, f: &Pseudocodeword) -> Result<Preference> {
    let to_f = distance_qsc(r, f)?;
    let to_zero = Ratio::from_integer(r.hamming_weight() as u64);
    Ok(match to_f.cmp(&to_zero) {
        Ordering::Less => Preference::PrefersF,
        Ordering::Equal => Preference::Tie,
        Ordering::Greater => Preference::PrefersZero,
    })
}

/// `M · (Σ_{i∈S} f_{i,r_i} − Σ_{i∉S} (1 − f_{i,0}))` with `S` the support of
/// `r`. The decoder favours `F` when this is positive and ties at zero.
pub fn preference_margin(r: &ReceivedVector, f: &Pseudocodeword) -> Result<i64> {
    check_received(r, f)?;
    Ok(r.0
        .iter()
        .enumerate()
        .map(|(i, &ri)| {
            if ri != 0 {
                f.count(i, ri as usize) as i64
            } else {
                -(f.nonzero_mass(i) as i64)
            }
        })
        .sum())
}

/// The received word that puts symbol `j_k` at each selected row `i_k` of
/// [`weight_qsc`] and 0 elsewhere.
pub fn witness_error_vector(f: &Pseudocodeword) -> Result<ReceivedVector> {
    if f.is_zero() {
        return Err(Error::ZeroPseudocodeword);
    }
    let detail = weight_qsc(f);
    let mut r = ReceivedVector::zero(f.n());
    for s in &detail.selection {
        r.0[s.row] = s.column as u32;
    }
    Ok(r)
}

// ************
// AWGN channel
// ************

/// `q` labelled points `(x_m, y_m)` in the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConstellationJson", into = "ConstellationJson")]
pub struct Constellation {
    points: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstellationJson {
    q: usize,
    points: Vec<[f64; 2]>,
}

impl TryFrom<ConstellationJson> for Constellation {
    type Error = Error;

    fn try_from(j: ConstellationJson) -> Result<Self> {
        if j.points.len() != j.q {
            return Err(Error::ConstellationSize {
                expected: j.q,
                found: j.points.len(),
            });
        }
        Constellation::new(j.points.into_iter().map(|[x, y]| (x, y)).collect())
    }
}

impl From<Constellation> for ConstellationJson {
    fn from(c: Constellation) -> Self {
        ConstellationJson {
            q: c.points.len(),
            points: c.points.iter().map(|&(x, y)| [x, y]).collect(),
        }
    }
}

impl Constellation {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::ConstellationSize {
                expected: 2,
                found: points.len(),
            });
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidConfig(
                "constellation points must be finite".into(),
            ));
        }
        Ok(Self { points })
    }

    /// Symbol `m` at the point `m` on the real line.
    pub fn pam(q: u32) -> Self {
        Self {
            points: (0..q).map(|m| (m as f64, 0.0)).collect(),
        }
    }

    /// Symbol `m` at angle `2πm/q` on the unit circle.
    pub fn psk(q: u32) -> Self {
        Self {
            points: (0..q).map(|m| psk_point(m, q)).collect(),
        }
    }

    pub fn q(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|&(x, y)| (alpha * x, alpha * y))
                .collect(),
        }
    }
}

fn psk_point(m: u32, q: u32) -> (f64, f64) {
    let theta = 2.0 * PI * m as f64 / q as f64;
    (theta.cos(), theta.sin())
}

/// `(Σ_i Σ_m f_{i,m} m²)² / Σ_i (Σ_m f_{i,m} m)²` in exact arithmetic. The
/// factors of `M` cancel, leaving a ratio of integer sums. Zero for the
/// all-zero pseudocodeword.
pub fn weight_awgn_pam_exact(f: &Pseudocodeword) -> Ratio<u128> {
    let mut energy: u128 = 0;
    let mut denom: u128 = 0;
    for row in f.counts() {
        let mut first: u128 = 0;
        for (m, &c) in row.iter().enumerate() {
            let m = m as u128;
            energy += c as u128 * m * m;
            first += c as u128 * m;
        }
        denom += first * first;
    }
    if denom == 0 {
        return Ratio::from_integer(0);
    }
    Ratio::new(energy * energy, denom)
}

pub fn weight_awgn_pam(f: &Pseudocodeword) -> f64 {
    ChannelWeight::Rational(weight_awgn_pam_exact(f)).as_f64()
}

/// The three sums of the two-dimensional weight `(R − M)² / V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AwgnTerms {
    pub r: f64,
    pub m: f64,
    pub v: f64,
}

impl AwgnTerms {
    pub fn weight(&self) -> f64 {
        if self.v == 0.0 {
            if self.r - self.m == 0.0 {
                return 0.0;
            }
            return f64::INFINITY;
        }
        (self.r - self.m).powi(2) / self.v
    }
}

/// `R = Σ_j [Σ_m f_{j,m}(x_m² + y_m²) − x_0² − y_0²]`,
/// `M = 2 Σ_j [Σ_m f_{j,m} x_m x_0 − x_0² + Σ_m f_{j,m} y_m y_0 − y_0²]`,
/// `V = 4 Σ_j [(Σ_m f_{j,m} x_m − x_0)² + (Σ_m f_{j,m} y_m − y_0)²]`.
pub fn awgn_2d_terms(f: &Pseudocodeword, c: &Constellation) -> Result<AwgnTerms> {
    if c.q() != f.q() as usize {
        return Err(Error::ConstellationSize {
            expected: f.q() as usize,
            found: c.q(),
        });
    }
    let (x0, y0) = c.points[0];
    let (mut r, mut m, mut v) = (0.0, 0.0, 0.0);
    for j in 0..f.n() {
        let (mut energy, mut mx, mut my) = (0.0, 0.0, 0.0);
        for (s, &(x, y)) in c.points.iter().enumerate() {
            let fr = f.fraction_f64(j, s);
            energy += fr * (x * x + y * y);
            mx += fr * x;
            my += fr * y;
        }
        r += energy - x0 * x0 - y0 * y0;
        m += 2.0 * (mx * x0 - x0 * x0 + my * y0 - y0 * y0);
        v += 4.0 * ((mx - x0).powi(2) + (my - y0).powi(2));
    }
    Ok(AwgnTerms { r, m, v })
}

/// Weight under a general two-dimensional constellation. Zero for the
/// all-zero pseudocodeword; infinite when `V` vanishes for a nonzero one
/// (only possible with a degenerate constellation).
pub fn weight_awgn_2d(f: &Pseudocodeword, c: &Constellation) -> Result<f64> {
    if f.is_zero() {
        if c.q() != f.q() as usize {
            return Err(Error::ConstellationSize {
                expected: f.q() as usize,
                found: c.q(),
            });
        }
        return Ok(0.0);
    }
    Ok(awgn_2d_terms(f, c)?.weight())
}

/// Weight under q-PSK from the specialised sums, with `R = 0`:
/// `M = 2 Σ_j (Σ_m f_{j,m} cos(2πm/q) − 1)` and
/// `V = 4 Σ_j [Σ_m f_{j,m}² + 2 Σ_{m<m'} f_{j,m} f_{j,m'} cos(2π(m−m')/q)
///            − 2 Σ_m f_{j,m} cos(2πm/q) + 1]`.
pub fn weight_awgn_psk(f: &Pseudocodeword) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    let q = f.q() as usize;
    let cos: Vec<f64> = (0..q)
        .map(|k| (2.0 * PI * k as f64 / q as f64).cos())
        .collect();
    let (mut m_sum, mut v_sum) = (0.0, 0.0);
    for j in 0..f.n() {
        let fr: Vec<f64> = (0..q).map(|s| f.fraction_f64(j, s)).collect();
        let real: f64 = fr.iter().zip(&cos).map(|(a, c)| a * c).sum();
        m_sum += real - 1.0;
        let squares: f64 = fr.iter().map(|a| a * a).sum();
        let mut cross = 0.0;
        for a in 0..q {
            for b in a + 1..q {
                cross += fr[a] * fr[b] * cos[b - a];
            }
        }
        v_sum += squares + 2.0 * cross - 2.0 * real + 1.0;
    }
    let m = 2.0 * m_sum;
    let v = 4.0 * v_sum;
    m * m / v
}

/// `Σ_i (1 − f_{i,0}) / max_i (1 − f_{i,0})`, the intermediate quantity
/// that the PAM weight dominates through Cauchy–Schwarz. `None` for the
/// all-zero pseudocodeword.
pub fn pam_chain_lower_bound(f: &Pseudocodeword) -> Option<Ratio<u128>> {
    let masses: Vec<u128> = (0..f.n()).map(|i| f.nonzero_mass(i) as u128).collect();
    let max = masses.iter().copied().max().filter(|&m| m > 0)?;
    Some(Ratio::new(masses.iter().sum(), max))
}
