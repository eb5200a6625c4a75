//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::Command;
use std::sync::Arc;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use qary_pseudoweight::code::catalog;
use qary_pseudoweight::covers::{
    lifted_code_basis, pseudocodeword_from_cover_codeword, random_lift,
};
use qary_pseudoweight::field::{
    enumerate_codewords, nullspace_basis, random_combination, DEFAULT_ENUMERATION_LIMIT,
};
use qary_pseudoweight::search::{
    estimate_min_pseudoweight, exhaustive_min_pseudoweight, ExhaustiveLimits, SearchConfig,
};
use qary_pseudoweight::weights::{
    pam_chain_lower_bound, weight_awgn_2d, weight_awgn_pam, weight_awgn_psk, weight_qsc,
    witness_error_vector, Channel, ChannelWeight, Constellation, Pseudocodeword,
};
use qary_pseudoweight::{girth, min_distance_bruteforce, tree_bound, TannerGraph};

type Q = Ratio<i128>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn frac(f: &Pseudocodeword, i: usize, k: usize) -> Q {
    Q::new(f.count(i, k) as i128, f.degree() as i128)
}

/// `(Σ f m²)² / Σ_i (Σ_m f m)²` over exact fractions.
fn pam_oracle(f: &Pseudocodeword) -> Q {
    let mut energy = Q::from_integer(0);
    let mut denom = Q::from_integer(0);
    for i in 0..f.n() {
        let mut mean = Q::from_integer(0);
        for m in 0..f.q() as usize {
            energy += frac(f, i, m) * Q::from_integer((m * m) as i128);
            mean += frac(f, i, m) * Q::from_integer(m as i128);
        }
        denom += mean * mean;
    }
    energy * energy / denom
}

/// First constraint and neighbour where `1 − f_{i,0} ≤ Σ_{j≠i} (1 − f_{j,0})`
/// fails.
fn constraint_oracle(g: &TannerGraph, f: &Pseudocodeword) -> Option<(usize, usize)> {
    let one = Q::from_integer(1);
    for (c, vars) in g.checks().iter().enumerate() {
        for &i in vars {
            let rhs: Q = vars
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| one - frac(f, j, 0))
                .sum();
            if one - frac(f, i, 0) > rhs {
                return Some((c, i));
            }
        }
    }
    None
}

/// `d(r, F) = Σ_i Σ_k [r_i ≠ k] f_{i,k}`.
fn distance_oracle(r: &[u32], f: &Pseudocodeword) -> Q {
    let mut d = Q::from_integer(0);
    for (i, &ri) in r.iter().enumerate() {
        for k in 0..f.q() as usize {
            if k as u32 != ri {
                d += frac(f, i, k);
            }
        }
    }
    d
}

fn random_pseudocodeword(rng: &mut ChaCha8Rng, q: u32) -> Pseudocodeword {
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=6u32);
    let counts = (0..n)
        .map(|_| {
            let mut row = vec![0u32; q as usize];
            for _ in 0..m {
                row[rng.gen_range(0..q as usize)] += 1;
            }
            row
        })
        .collect();
    Pseudocodeword::new(q, m, counts).unwrap()
}

/// Nonzero pseudocodewords from random covers of degree 2 to 4.
fn cover_samples(g: &TannerGraph, want: usize, seed: u64) -> Vec<Pseudocodeword> {
    let base = Arc::new(g.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut lift = 0u64;
    while out.len() < want && lift < 5_000 {
        let degree = 2 + (lift % 3) as usize;
        let spec = random_lift(&base, degree, seed.wrapping_mul(31).wrapping_add(lift)).unwrap();
        lift += 1;
        let basis = lifted_code_basis(&spec);
        if basis.is_empty() {
            continue;
        }
        for _ in 0..16 {
            let w = random_combination(&basis, g.n() * degree, g.field(), &mut rng);
            if w.iter().all(|&x| x == 0) {
                continue;
            }
            out.push(pseudocodeword_from_cover_codeword(&spec, &w).unwrap());
        }
    }
    out
}

fn regular_codes() -> Vec<(&'static str, TannerGraph)> {
    vec![
        ("fano GF(2)", catalog::fano_plane(2)),
        ("fano GF(3)", catalog::fano_plane(3)),
        ("8-cycle GF(3)", catalog::cycle_code(4, 3)),
        ("10-cycle GF(5)", catalog::cycle_code(5, 5)),
        ("tutte-coxeter GF(2)", catalog::tutte_coxeter(2)),
        ("cyclic hamming GF(2)", catalog::hamming_7_4_cyclic(2)),
    ]
}

fn criterion_tree_table() -> Outcome {
    let table = [
        ((3, 6), 4),
        ((3, 8), 6),
        ((4, 10), 17),
        ((2, 6), 3),
        ((3, 4), 2),
    ];
    let mut bad = Vec::new();
    for ((d, g), want) in table {
        let got = tree_bound(d, g).unwrap();
        if got != want {
            bad.push(format!("T({d},{g})={got}"));
        }
    }
    for d in 2..=6 {
        for g in (4..=12).step_by(2) {
            let t = tree_bound(d, g).unwrap();
            if d < 6 && tree_bound(d + 1, g).unwrap() < t {
                bad.push(format!("decrease in d at ({d},{g})"));
            }
            if g < 12 && tree_bound(d, g + 2).unwrap() < t {
                bad.push(format!("decrease in g at ({d},{g})"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "5 table entries exact, monotone on d∈[2,6], g∈[4,12]".into()
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_dmin() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut tested = 0;
    let mut violations = 0;
    let mut attempts = 0;
    for q in [2u32, 3, 5] {
        let mut per_q = 0;
        while per_q < 10 && attempts < 10_000 {
            attempts += 1;
            let n = rng.gen_range(6..=12);
            let r = rng.gen_range(n / 2..n);
            let d = rng.gen_range(2..=3);
            let g = catalog::random_left_regular(n, r, d, q, &mut rng);
            let Some(gi) = girth(&g).girth else { continue };
            let Ok(Some(dmin)) = min_distance_bruteforce(&g, 1 << 20) else {
                continue;
            };
            let t = tree_bound(g.min_left_degree(), gi).unwrap();
            if (dmin as u64) < t {
                violations += 1;
            }
            per_q += 1;
            tested += 1;
        }
    }
    outcome(
        tested >= 20 && violations == 0,
        format!("{tested} random graphs, {violations} violations"),
    )
}

fn criterion_codeword_reduction() -> Outcome {
    let codes = [
        catalog::hamming_7_4(2),
        catalog::hamming_7_4(3),
        catalog::hamming_7_4_cyclic(2),
        catalog::fano_plane(2),
        catalog::fano_plane(3),
        catalog::cycle_code(4, 3),
        catalog::single_check(4, 5),
        catalog::tutte_coxeter(2),
    ];
    let mut words = 0;
    let mut bad = Vec::new();
    for g in &codes {
        let basis = nullspace_basis(&g.parity_check_matrix());
        for w in enumerate_codewords(&basis, g.n(), g.field(), DEFAULT_ENUMERATION_LIMIT).unwrap() {
            words += 1;
            let hw = w.iter().filter(|&&x| x != 0).count();
            let f = Pseudocodeword::from_word(&w, g.q()).unwrap();
            if weight_qsc(&f).weight != hw as u64 {
                bad.push(format!("qsc {w:?}"));
            }
            if g.q() == 2 {
                if (weight_awgn_pam(&f) - hw as f64).abs() > 1e-12 {
                    bad.push(format!("pam {w:?}"));
                }
                if (weight_awgn_psk(&f) - hw as f64).abs() > 1e-12 {
                    bad.push(format!("psk {w:?}"));
                }
            }
        }
    }
    bad.truncate(5);
    outcome(
        bad.is_empty(),
        format!(
            "{words} codewords over {} codes; mismatches: {bad:?}",
            codes.len()
        ),
    )
}

fn criterion_tree_bound_on_covers(
    samples: &[(String, TannerGraph, Vec<Pseudocodeword>)],
) -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, g, fs) in samples {
        let t = tree_bound(g.min_left_degree(), girth(g).girth.unwrap()).unwrap();
        let tq = Q::from_integer(t as i128);
        let mut qsc_bad = 0;
        let mut pam_bad = 0;
        let mut eq_bad = 0;
        let mut qsc_min = u64::MAX;
        for f in fs {
            let w = weight_qsc(f).weight;
            qsc_min = qsc_min.min(w);
            if w < t {
                qsc_bad += 1;
            }
            if pam_oracle(f) < tq {
                pam_bad += 1;
            }
            if constraint_oracle(g, f).is_some() {
                eq_bad += 1;
            }
        }
        pass &= fs.len() >= 500 && qsc_bad + pam_bad + eq_bad == 0;
        lines.push(format!(
            "{name}: {} samples, T={t}, min qsc {qsc_min}, violations {qsc_bad}/{pam_bad}/{eq_bad}",
            fs.len()
        ));
    }
    outcome(pass, lines.join("; "))
}

fn criterion_witness(samples: &[Pseudocodeword]) -> Outcome {
    let mut bad = 0;
    let mut ties = 0;
    for f in samples {
        let r = witness_error_vector(f).unwrap();
        let to_f = distance_oracle(&r.0, f);
        let to_zero = Q::from_integer(r.0.iter().filter(|&&x| x != 0).count() as i128);
        let equality = weight_qsc(f).equality_case;
        if to_f > to_zero || (to_f == to_zero) != equality {
            bad += 1;
        }
        ties += usize::from(to_f == to_zero);
    }
    outcome(
        bad == 0,
        format!(
            "{} pseudocodewords, {ties} ties, {bad} failures",
            samples.len()
        ),
    )
}

fn criterion_exhaustive_oracle() -> Outcome {
    let channels = vec![Channel::Qsc, Channel::Pam, Channel::Psk];
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, g, max_degree) in [
        ("6-cycle GF(3)", catalog::cycle_code(3, 3), 3),
        ("single check GF(2) n=3", catalog::single_check(3, 2), 3),
    ] {
        let cfg = SearchConfig {
            max_degree,
            lifts_per_degree: 1,
            codewords_per_lift: 0,
            exhaustive_lifts: true,
            channels: channels.clone(),
            ..SearchConfig::default()
        };
        let est = estimate_min_pseudoweight(&g, &cfg).unwrap();
        for ch in ["qsc", "pam", "psk"] {
            let oracle = (1..=max_degree)
                .filter_map(|m| {
                    exhaustive_min_pseudoweight(
                        &g,
                        m,
                        channels.clone(),
                        ExhaustiveLimits::default(),
                    )
                    .unwrap()
                    .min_weight(ch)
                })
                .min_by(|a, b| a.total_cmp(b));
            if est.min_weight(ch) != oracle {
                pass = false;
            }
            if ch == "qsc" {
                lines.push(format!(
                    "{name}: M≤{max_degree} estimate {:?} oracle {:?}",
                    est.min_weight(ch).map(|w| w.as_f64()),
                    oracle.map(|w| w.as_f64())
                ));
            }
        }
        let one = estimate_min_pseudoweight(
            &g,
            &SearchConfig {
                max_degree: 1,
                ..cfg
            },
        )
        .unwrap();
        let dmin = min_distance_bruteforce(&g, DEFAULT_ENUMERATION_LIMIT).unwrap();
        let m1 = one.min_weight("qsc");
        if m1 != dmin.map(|d| ChannelWeight::Integer(d as u64)) {
            pass = false;
        }
        lines.push(format!(
            "{name}: M=1 qsc {:?} d_min {dmin:?}",
            m1.map(|w| w.as_f64())
        ));
    }
    outcome(pass, lines.join("; "))
}

fn criterion_formula_cross_checks(cover: &[Pseudocodeword]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut psk_bad, mut pam_bad, mut chain_bad, mut count) = (0, 0, 0, 0);
    let mut worst: f64 = 0.0;
    for &q in &[2u32, 3, 4, 8] {
        let psk = Constellation::psk(q);
        let pam = Constellation::pam(q);
        for _ in 0..500 {
            let f = random_pseudocodeword(&mut rng, q);
            count += 1;
            let a = weight_awgn_psk(&f);
            let b = weight_awgn_2d(&f, &psk).unwrap();
            let d1 = if a.is_finite() || b.is_finite() {
                (a - b).abs()
            } else {
                0.0
            };
            let d2 = (weight_awgn_2d(&f, &pam).unwrap() - weight_awgn_pam(&f) / 4.0).abs();
            worst = worst.max(d1).max(d2);
            psk_bad += usize::from(d1.is_nan() || d1 > 1e-12);
            pam_bad += usize::from(d2.is_nan() || d2 > 1e-12);
        }
    }
    let mut chain_checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let randoms: Vec<_> = (0..500)
        .map(|_| {
            let q = [2, 3, 5][rng.gen_range(0..3)];
            random_pseudocodeword(&mut rng, q)
        })
        .collect();
    for f in cover.iter().chain(&randoms) {
        if let Some(chain) = pam_chain_lower_bound(f) {
            chain_checked += 1;
            let chain = *chain.numer() as f64 / *chain.denom() as f64;
            if weight_awgn_pam(f) < chain - 1e-9 {
                chain_bad += 1;
            }
        }
    }
    outcome(
        psk_bad + pam_bad + chain_bad == 0,
        format!("{count} random F, worst |Δ| {worst:.2e}, psk {psk_bad}, pam/4 {pam_bad}; chain {chain_bad} of {chain_checked}"),
    )
}

fn criterion_determinism() -> Outcome {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let run = |file: &str, q: &str, jobs: &str| -> Value {
        let out = Command::new(env!("CARGO_BIN_EXE_qpw"))
            .args([
                "search",
                &format!("{data}/{file}"),
                "--q",
                q,
                "--max-degree",
                "3",
                "--lifts",
                "12",
            ])
            .args(["--codewords", "24", "--seed", "11", "--jobs", jobs])
            .output()
            .expect("qpw runs");
        let mut v: Value = serde_json::from_slice(&out.stdout).expect("qpw prints JSON");
        v.as_object_mut().unwrap().remove("wall_clock_ms");
        v
    };
    let mut pass = true;
    for (file, q) in [
        ("fano.alist", "3"),
        ("cycle6.alist", "3"),
        ("tutte_coxeter.alist", "2"),
    ] {
        let reference = run(file, q, "1");
        for jobs in ["1", "4", "4"] {
            pass &= run(file, q, jobs) == reference;
        }
    }
    outcome(pass, "3 graphs, jobs 1 and 4, two runs each")
}

fn main() {
    let started = std::time::Instant::now();
    let cover: Vec<(String, TannerGraph, Vec<Pseudocodeword>)> = regular_codes()
        .into_iter()
        .enumerate()
        .map(|(i, (name, g))| {
            let fs = cover_samples(&g, 512, 100 + i as u64);
            (name.to_string(), g, fs)
        })
        .collect();
    let mut all: Vec<Pseudocodeword> = cover
        .iter()
        .flat_map(|(_, _, fs)| fs.iter().cloned())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    all.extend(
        (0..1000)
            .map(|_| {
                let q = [2, 3, 4, 5, 7][rng.gen_range(0..5)];
                random_pseudocodeword(&mut rng, q)
            })
            .filter(|f| !f.is_zero()),
    );

    let results = [
        ("1 tree-bound table", criterion_tree_table()),
        ("2 minimum distance vs tree bound", criterion_dmin()),
        ("3 codeword reduction", criterion_codeword_reduction()),
        (
            "4 tree bound on cover pseudocodewords",
            criterion_tree_bound_on_covers(&cover),
        ),
        ("5 witness error vectors", criterion_witness(&all)),
        (
            "6 exhaustive oracle equivalence",
            criterion_exhaustive_oracle(),
        ),
        (
            "7 formula cross-checks",
            criterion_formula_cross_checks(&all),
        ),
        ("8 determinism across job counts", criterion_determinism()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} [{name}] {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
