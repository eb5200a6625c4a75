//! Small named graphs used by the examples and test suites.
//!
//! Every builder panics only if `q` is not prime.

use rand::seq::index;
use rand::Rng;

use super::TannerGraph;
use crate::field::PrimeField;

fn field(q: u32) -> PrimeField {
    PrimeField::new(q).expect("q must be prime")
}

fn build(n: usize, checks: Vec<Vec<usize>>, q: u32) -> TannerGraph {
    TannerGraph::from_checks(n, checks, field(q)).expect("catalog graphs are well formed")
}

/// The systematic 3×7 parity-check matrix of the (7,4) Hamming code.
pub fn hamming_7_4(q: u32) -> TannerGraph {
    let rows = [
        [1, 1, 0, 1, 1, 0, 0],
        [1, 0, 1, 1, 0, 1, 0],
        [0, 1, 1, 1, 0, 0, 1],
    ];
    let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
    TannerGraph::from_dense(&rows, field(q)).expect("catalog graphs are well formed")
}

/// The (7,4) Hamming code as the 7×7 circulant generated by the check
/// polynomial `1 + x + x^2 + x^4`. Redundant rows make it 4-left regular.
pub fn hamming_7_4_cyclic(q: u32) -> TannerGraph {
    let checks = (0..7)
        .map(|s| [0, 1, 2, 4].iter().map(|&p| (p + s) % 7).collect())
        .collect();
    build(7, checks, q)
}

/// `k` variables on a single cycle: check `i` joins variables `i` and `i+1`.
/// The Tanner graph is a cycle of length `2k`.
pub fn cycle_code(k: usize, q: u32) -> TannerGraph {
    let checks = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    build(k, checks, q)
}

/// One check over all `n` variables.
pub fn single_check(n: usize, q: u32) -> TannerGraph {
    build(n, vec![(0..n).collect()], q)
}

/// Point-line incidence of the Fano plane: 3-left regular, girth 6.
pub fn fano_plane(q: u32) -> TannerGraph {
    let checks = (0..7)
        .map(|s| [0, 1, 3].iter().map(|&p| (p + s) % 7).collect())
        .collect();
    build(7, checks, q)
}

/// Duad/syntheme incidence on six symbols (the Tutte–Coxeter graph):
/// 15 variables, 15 checks, 3-regular, girth 8.
pub fn tutte_coxeter(q: u32) -> TannerGraph {
    let mut duads = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            duads.push((a, b));
        }
    }
    let index_of = |d: (usize, usize)| duads.iter().position(|&x| x == d).unwrap();
    let mut synthemes = Vec::new();
    for (i, &d1) in duads.iter().enumerate() {
        for (j, &d2) in duads.iter().enumerate().skip(i + 1) {
            for &d3 in duads.iter().skip(j + 1) {
                let mut pts = [d1.0, d1.1, d2.0, d2.1, d3.0, d3.1];
                pts.sort_unstable();
                if pts == [0, 1, 2, 3, 4, 5] {
                    synthemes.push(vec![i, j, index_of(d3)]);
                }
            }
        }
    }
    build(15, synthemes, q)
}

/// Each variable joins `d` distinct checks chosen uniformly at random.
pub fn random_left_regular<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    d: usize,
    q: u32,
    rng: &mut R,
) -> TannerGraph {
    assert!(d <= r, "left degree exceeds check count");
    let mut checks = vec![Vec::new(); r];
    for v in 0..n {
        for c in index::sample(rng, r, d) {
            checks[c].push(v);
        }
    }
    build(n, checks, q)
}
