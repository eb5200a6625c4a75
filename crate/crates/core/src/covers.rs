//! Finite degree-`M` covers of a Tanner graph, described by one permutation
//! per base edge, and the pseudocodewords their codewords induce.
//!
//! Copy `k` of variable `v` is lifted variable `v·M + k`. For a base edge
//! `(v, c)` carrying permutation `σ`, it is joined to lifted check
//! `c·M + σ(k)`. All lifted edges keep weight 1.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::code::TannerGraph;
use crate::error::{Error, Result};
use crate::field::{self, GfMatrix};
use crate::weights::Pseudocodeword;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    base: Arc<TannerGraph>,
    degree: usize,
    perms: Vec<Vec<usize>>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEdgeJson {
    pub variable: usize,
    pub check: usize,
    pub perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpecJson {
    pub degree: usize,
    pub edges: Vec<CoverEdgeJson>,
    pub seed: Option<u64>,
}

fn is_bijection(perm: &[usize], m: usize) -> bool {
    if perm.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    perm.iter()
        .all(|&p| p < m && !std::mem::replace(&mut seen[p], true))
}

impl CoverSpec {
    /// `perms[e]` belongs to `base.edges()[e]`.
    pub fn new(
        base: Arc<TannerGraph>,
        degree: usize,
        perms: Vec<Vec<usize>>,
        seed: Option<u64>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidCover("degree must be at least 1".into()));
        }
        if perms.len() != base.edges().len() {
            return Err(Error::InvalidCover(format!(
                "{} permutations for {} edges",
                perms.len(),
                base.edges().len()
            )));
        }
        if let Some(e) = perms.iter().position(|p| !is_bijection(p, degree)) {
            return Err(Error::InvalidCover(format!(
                "permutation {e} is not a bijection"
            )));
        }
        Ok(Self {
            base,
            degree,
            perms,
            seed,
        })
    }

    pub fn identity(base: Arc<TannerGraph>, degree: usize) -> Result<Self> {
        let perms = vec![(0..degree).collect(); base.edges().len()];
        Self::new(base, degree, perms, None)
    }

    pub fn base(&self) -> &TannerGraph {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<TannerGraph> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn is_identity(&self) -> bool {
        self.perms
            .iter()
            .all(|p| p.iter().enumerate().all(|(k, &s)| k == s))
    }

    pub fn to_json(&self) -> CoverSpecJson {
        CoverSpecJson {
            degree: self.degree,
            edges: self
                .base
                .edges()
                .iter()
                .zip(&self.perms)
                .map(|(e, p)| CoverEdgeJson {
                    variable: e.variable,
                    check: e.check,
                    perm: p.clone(),
                })
                .collect(),
            seed: self.seed,
        }
    }

    /// Rebuilds a cover of `base` from its JSON form. Edges may be listed in
    /// any order but must match the base edge set exactly.
    pub fn from_json(base: Arc<TannerGraph>, doc: CoverSpecJson) -> Result<Self> {
        let mut perms = vec![None; base.edges().len()];
        for edge in doc.edges {
            let idx = base
                .edges()
                .binary_search(&crate::code::Edge {
                    check: edge.check,
                    variable: edge.variable,
                })
                .map_err(|_| {
                    Error::InvalidCover(format!(
                        "edge ({}, {}) not in base graph",
                        edge.variable, edge.check
                    ))
                })?;
            if perms[idx].replace(edge.perm).is_some() {
                return Err(Error::InvalidCover("edge listed twice".into()));
            }
        }
        let perms = perms
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidCover("missing edge permutations".into()))?;
        Self::new(base, doc.degree, perms, doc.seed)
    }

    /// Lifted check index joined to copy `k` of the variable on edge `e`.
    #[inline]
    pub fn lifted_check(&self, e: usize, k: usize) -> usize {
        self.base.edges()[e].check * self.degree + self.perms[e][k]
    }
}

impl Serialize for CoverSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// A uniformly random permutation per edge, drawn in edge order from a
/// ChaCha8 stream seeded with `seed`.
pub fn random_lift(base: &Arc<TannerGraph>, degree: usize, seed: u64) -> Result<CoverSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = base
        .edges()
        .iter()
        .map(|_| {
            let mut p: Vec<usize> = (0..degree).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    CoverSpec::new(Arc::clone(base), degree, perms, Some(seed))
}

fn factorial(m: usize) -> Option<u64> {
    (1..=m as u64).try_fold(1u64, |acc, x| acc.checked_mul(x))
}

/// `(M!)^{|E|}`, or `None` on overflow.
pub fn cover_count(base: &TannerGraph, degree: usize) -> Option<u64> {
    factorial(degree)?.checked_pow(u32::try_from(base.edges().len()).ok()?)
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Every degree-`M` cover of `base`, each exactly once, in odometer order
/// over lexicographically sorted permutations (identity first).
pub fn enumerate_lifts(base: &Arc<TannerGraph>, degree: usize, limit: u64) -> Result<LiftIter> {
    if degree == 0 {
        return Err(Error::InvalidCover("degree must be at least 1".into()));
    }
    let total = match cover_count(base, degree) {
        Some(t) if t <= limit => t,
        _ => {
            return Err(Error::TooManyCovers {
                count: format!("({degree}!)^{}", base.edges().len()),
                limit,
            })
        }
    };
    Ok(LiftIter {
        base: Arc::clone(base),
        degree,
        perms: all_permutations(degree),
        digits: vec![0; base.edges().len()],
        remaining: total,
    })
}

pub struct LiftIter {
    base: Arc<TannerGraph>,
    degree: usize,
    perms: Vec<Vec<usize>>,
    digits: Vec<usize>,
    remaining: u64,
}

impl Iterator for LiftIter {
    type Item = CoverSpec;

    fn next(&mut self) -> Option<CoverSpec> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let spec = CoverSpec {
            base: Arc::clone(&self.base),
            degree: self.degree,
            perms: self.digits.iter().map(|&d| self.perms[d].clone()).collect(),
            seed: None,
        };
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.perms.len() {
                break;
            }
            *d = 0;
        }
        Some(spec)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// The `rM × nM` parity-check matrix of the cover.
pub fn lift_parity_matrix(spec: &CoverSpec) -> GfMatrix {
    let m = spec.degree;
    let base = spec.base();
    let mut h = GfMatrix::zeros(base.r() * m, base.n() * m, base.field());
    for (e, edge) in base.edges().iter().enumerate() {
        for k in 0..m {
            h.set(spec.lifted_check(e, k), edge.variable * m + k, 1);
        }
    }
    h
}

/// A cover as a Tanner graph in its own right, with the cloud of each
/// lifted node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedGraph {
    pub graph: TannerGraph,
    /// lifted variable → (base variable, copy)
    pub variable_cloud: Vec<(usize, usize)>,
    /// lifted check → (base check, copy)
    pub check_cloud: Vec<(usize, usize)>,
}

pub fn lifted_graph(spec: &CoverSpec) -> LiftedGraph {
    let m = spec.degree;
    let base = spec.base();
    let mut checks = vec![Vec::new(); base.r() * m];
    for (e, edge) in base.edges().iter().enumerate() {
        for k in 0..m {
            checks[spec.lifted_check(e, k)].push(edge.variable * m + k);
        }
    }
    let graph = TannerGraph::from_checks(base.n() * m, checks, base.field())
        .expect("lifts of simple graphs are simple");
    LiftedGraph {
        graph,
        variable_cloud: (0..base.n() * m).map(|i| (i / m, i % m)).collect(),
        check_cloud: (0..base.r() * m).map(|i| (i / m, i % m)).collect(),
    }
}

/// Basis of the cover's code.
pub fn lifted_code_basis(spec: &CoverSpec) -> Vec<Vec<u32>> {
    field::nullspace_basis(&lift_parity_matrix(spec))
}

/// Counts, per variable cloud, how many copies take each symbol in `c_hat`.
pub fn pseudocodeword_from_cover_codeword(
    spec: &CoverSpec,
    c_hat: &[u32],
) -> Result<Pseudocodeword> {
    let m = spec.degree;
    let base = spec.base();
    let expected = base.n() * m;
    if c_hat.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: c_hat.len(),
        });
    }
    let q = base.q();
    if let Some(&s) = c_hat.iter().find(|&&s| s >= q) {
        return Err(Error::ValueOutOfRange { value: s, q });
    }
    if !cover_satisfies(spec, c_hat) {
        return Err(Error::NotCoverCodeword);
    }
    Ok(counts_of(spec, c_hat))
}

/// Builds the count matrix without re-checking the cover constraints.
pub(crate) fn counts_of(spec: &CoverSpec, c_hat: &[u32]) -> Pseudocodeword {
    let m = spec.degree;
    let q = spec.base().q();
    let counts = c_hat
        .chunks(m)
        .map(|cloud| {
            let mut row = vec![0u32; q as usize];
            for &s in cloud {
                row[s as usize] += 1;
            }
            row
        })
        .collect();
    Pseudocodeword::new(q, m as u32, counts).expect("cloud counts sum to M")
}

fn cover_satisfies(spec: &CoverSpec, c_hat: &[u32]) -> bool {
    let m = spec.degree;
    let base = spec.base();
    let f = base.field();
    let mut sums = vec![0u32; base.r() * m];
    for (e, edge) in base.edges().iter().enumerate() {
        for k in 0..m {
            let lc = spec.lifted_check(e, k);
            sums[lc] = f.add(sums[lc], c_hat[edge.variable * m + k]);
        }
    }
    sums.iter().all(|&s| s == 0)
}
