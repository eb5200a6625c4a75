//! Tanner graphs with unity edge weights, their ingestion from alist/JSON,
//! girth analysis and brute-force minimum distance.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{self, GfMatrix, PrimeField};

pub mod catalog;

/// An edge of the base graph. Edges are ordered by check, then variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub check: usize,
    pub variable: usize,
}

/// Bipartite incidence graph of a parity-check matrix whose nonzero entries
/// are all 1, representing a code over GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    field: PrimeField,
    checks: Vec<Vec<usize>>,
    variables: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl TannerGraph {
    /// Builds a graph from per-check variable lists (0-indexed).
    pub fn from_checks(n: usize, checks: Vec<Vec<usize>>, field: PrimeField) -> Result<Self> {
        let mut variables = vec![Vec::new(); n];
        let mut sorted_checks = Vec::with_capacity(checks.len());
        for (c, mut vars) in checks.into_iter().enumerate() {
            vars.sort_unstable();
            for w in vars.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::ParallelEdge {
                        variable: w[0],
                        check: c,
                    });
                }
            }
            for &v in &vars {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, limit: n });
                }
                variables[v].push(c);
            }
            sorted_checks.push(vars);
        }
        let edges = sorted_checks
            .iter()
            .enumerate()
            .flat_map(|(c, vars)| {
                vars.iter().map(move |&v| Edge {
                    check: c,
                    variable: v,
                })
            })
            .collect();
        Ok(Self {
            n,
            field,
            checks: sorted_checks,
            variables,
            edges,
        })
    }

    /// Builds a graph from a dense 0/1 parity-check matrix. Any entry other
    /// than 0 or 1 is rejected.
    pub fn from_dense(rows: &[Vec<u32>], field: PrimeField) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        let mut checks = Vec::with_capacity(rows.len());
        for (c, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            let mut vars = Vec::new();
            for (v, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => vars.push(v),
                    other => {
                        return Err(Error::NonUnityEdgeWeight {
                            variable: v,
                            check: c,
                            value: other as u64,
                        })
                    }
                }
            }
            checks.push(vars);
        }
        Self::from_checks(n, checks, field)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of constraint nodes.
    pub fn r(&self) -> usize {
        self.checks.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.modulus()
    }

    pub fn checks(&self) -> &[Vec<usize>] {
        &self.checks
    }

    pub fn check(&self, c: usize) -> &[usize] {
        &self.checks[c]
    }

    pub fn variable(&self, v: usize) -> &[usize] {
        &self.variables[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        self.variables.iter().map(Vec::len).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        self.checks.iter().map(Vec::len).collect()
    }

    pub fn min_left_degree(&self) -> usize {
        self.variables.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_left_regular(&self) -> bool {
        let mut degs = self.variables.iter().map(Vec::len);
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    /// The parity-check matrix with a 1 at every edge.
    pub fn parity_check_matrix(&self) -> GfMatrix {
        let mut h = GfMatrix::zeros(self.r(), self.n, self.field);
        for e in &self.edges {
            h.set(e.check, e.variable, 1);
        }
        h
    }

    /// Dimension `k` of the code over GF(q).
    pub fn dimension(&self) -> usize {
        self.n - self.parity_check_matrix().rank()
    }

    pub fn is_codeword(&self, word: &[u32]) -> Result<bool> {
        if word.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: word.len(),
            });
        }
        let f = self.field;
        Ok(self
            .checks
            .iter()
            .all(|vars| vars.iter().fold(0, |acc, &v| f.add(acc, word[v])) == 0))
    }

    /// The same graph with variables relabelled by `var_perm` (old index to
    /// new index) and checks by `check_perm`.
    pub fn relabeled(&self, var_perm: &[usize], check_perm: &[usize]) -> Result<Self> {
        if var_perm.len() != self.n || check_perm.len() != self.r() {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: var_perm.len(),
            });
        }
        let mut checks = vec![Vec::new(); self.r()];
        for (c, vars) in self.checks.iter().enumerate() {
            checks[check_perm[c]] = vars.iter().map(|&v| var_perm[v]).collect();
        }
        Self::from_checks(self.n, checks, self.field)
    }

    // ******
    // alist
    // ******

    /// Parses a MacKay alist document. Adjacency lines may be zero-padded to
    /// the maximum degree. The non-binary extension, where every index is
    /// followed by the matrix entry, is accepted as long as each entry is 1.
    pub fn from_alist(text: &str, q: u32) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let lines: Vec<Vec<u64>> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<u64>()
                            .map_err(|_| Error::MalformedAlist(format!("bad token {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let header = |i: usize, len: usize, what: &str| -> Result<&Vec<u64>> {
            let l = lines
                .get(i)
                .ok_or_else(|| Error::MalformedAlist(format!("missing {what} line")))?;
            if l.len() < len {
                return Err(Error::MalformedAlist(format!("short {what} line")));
            }
            Ok(l)
        };
        let dims = header(0, 2, "size")?;
        let (n, m) = (dims[0] as usize, dims[1] as usize);
        let maxd = header(1, 2, "max degree")?;
        let (max_col, max_row) = (maxd[0] as usize, maxd[1] as usize);
        let col_deg: Vec<usize> = header(2, n, "column degree")?[..n]
            .iter()
            .map(|&d| d as usize)
            .collect();
        let row_deg: Vec<usize> = header(3, m, "row degree")?[..m]
            .iter()
            .map(|&d| d as usize)
            .collect();
        if lines.len() < 4 + n + m {
            return Err(Error::MalformedAlist(format!(
                "expected {} adjacency lines, found {}",
                n + m,
                lines.len().saturating_sub(4)
            )));
        }
        let col_lines = &lines[4..4 + n];
        let row_lines = &lines[4 + n..4 + n + m];

        let plain =
            |ls: &[Vec<u64>], degs: &[usize], maxdeg: usize| -> Option<Vec<Vec<(u64, u64)>>> {
                ls.iter()
                    .zip(degs)
                    .map(|(l, &d)| {
                        if l.len() != d && l.len() != maxdeg {
                            return None;
                        }
                        if l.len() < d || l[..d].contains(&0) || l[d..].iter().any(|&x| x != 0) {
                            return None;
                        }
                        Some(l[..d].iter().map(|&x| (x, 1)).collect())
                    })
                    .collect()
            };
        let extended =
            |ls: &[Vec<u64>], degs: &[usize], maxdeg: usize| -> Option<Vec<Vec<(u64, u64)>>> {
                ls.iter()
                    .zip(degs)
                    .map(|(l, &d)| {
                        if l.len() != 2 * d && l.len() != 2 * maxdeg {
                            return None;
                        }
                        let pairs: Vec<(u64, u64)> = l.chunks(2).map(|p| (p[0], p[1])).collect();
                        if pairs[..d].iter().any(|&(i, _)| i == 0)
                            || pairs[d..].iter().any(|&(i, _)| i != 0)
                        {
                            return None;
                        }
                        Some(pairs[..d].to_vec())
                    })
                    .collect()
            };
        let (cols, rows) = match (
            plain(col_lines, &col_deg, max_col),
            plain(row_lines, &row_deg, max_row),
        ) {
            (Some(c), Some(r)) => (c, r),
            _ => match (
                extended(col_lines, &col_deg, max_col),
                extended(row_lines, &row_deg, max_row),
            ) {
                (Some(c), Some(r)) => (c, r),
                _ => {
                    return Err(Error::MalformedAlist(
                        "adjacency lines do not match the declared degrees".into(),
                    ))
                }
            },
        };

        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (c, entries) in rows.iter().enumerate() {
            for &(idx, value) in entries {
                let v = idx as usize - 1;
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, limit: n });
                }
                if value != 1 {
                    return Err(Error::NonUnityEdgeWeight {
                        variable: v,
                        check: c,
                        value,
                    });
                }
                checks[c].push(v);
            }
        }
        let graph = Self::from_checks(n, checks, field)?;

        // column lists must describe the same edge set
        for (v, entries) in cols.iter().enumerate() {
            let mut from_cols = Vec::with_capacity(entries.len());
            for &(idx, value) in entries {
                let c = idx as usize - 1;
                if c >= m {
                    return Err(Error::IndexOutOfRange { index: c, limit: m });
                }
                if value != 1 {
                    return Err(Error::NonUnityEdgeWeight {
                        variable: v,
                        check: c,
                        value,
                    });
                }
                from_cols.push(c);
            }
            from_cols.sort_unstable();
            if from_cols != graph.variables[v] {
                return Err(Error::MalformedAlist(format!(
                    "column {} adjacency disagrees with row lists",
                    v + 1
                )));
            }
        }
        Ok(graph)
    }

    /// Plain (binary-style) alist rendering, zero-padded to the maximum degree.
    pub fn to_alist(&self) -> String {
        let mut s = String::new();
        let col_deg = self.left_degrees();
        let row_deg = self.right_degrees();
        let max_col = col_deg.iter().copied().max().unwrap_or(0);
        let max_row = row_deg.iter().copied().max().unwrap_or(0);
        let join = |xs: &mut dyn Iterator<Item = usize>| {
            xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(s, "{} {}", self.n, self.r());
        let _ = writeln!(s, "{} {}", max_col, max_row);
        let _ = writeln!(s, "{}", join(&mut col_deg.iter().copied()));
        let _ = writeln!(s, "{}", join(&mut row_deg.iter().copied()));
        for adj in &self.variables {
            let mut it = adj
                .iter()
                .map(|c| c + 1)
                .chain(std::iter::repeat(0))
                .take(max_col);
            let _ = writeln!(s, "{}", join(&mut it));
        }
        for adj in &self.checks {
            let mut it = adj
                .iter()
                .map(|v| v + 1)
                .chain(std::iter::repeat(0))
                .take(max_row);
            let _ = writeln!(s, "{}", join(&mut it));
        }
        s
    }

    // *****
    // JSON
    // *****

    pub fn from_json(text: &str, q: u32) -> Result<Self> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
        doc.into_graph(q)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            m: self.r(),
            checks: self.checks.clone(),
            values: None,
        }
    }
}

/// JSON mirror of the alist format: explicit field names, 0-indexed
/// variable lists per check, optional entry values parallel to `checks`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub m: usize,
    pub checks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Vec<u64>>>,
}

impl GraphJson {
    pub fn into_graph(self, q: u32) -> Result<TannerGraph> {
        let field = PrimeField::new(q)?;
        if self.checks.len() != self.m {
            return Err(Error::MalformedJson(format!(
                "m = {} but {} checks listed",
                self.m,
                self.checks.len()
            )));
        }
        if let Some(values) = &self.values {
            if values.len() != self.m {
                return Err(Error::MalformedJson("values must parallel checks".into()));
            }
            for (c, (vars, vals)) in self.checks.iter().zip(values).enumerate() {
                if vars.len() != vals.len() {
                    return Err(Error::MalformedJson("values must parallel checks".into()));
                }
                if let Some((&v, &value)) = vars.iter().zip(vals).find(|(_, &x)| x != 1) {
                    return Err(Error::NonUnityEdgeWeight {
                        variable: v,
                        check: c,
                        value,
                    });
                }
            }
        }
        TannerGraph::from_checks(self.n, self.checks, field)
    }
}

// *****
// Girth
// *****

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthReport {
    /// Length of the shortest cycle; `None` when the graph is a forest.
    pub girth: Option<usize>,
    pub min_left_degree: usize,
    pub is_d_left_regular: bool,
}

/// Shortest cycle length by breadth-first search from every node. A
/// non-tree edge met at depths `a` and `b` closes a cycle of length at most
/// `a + b + 1`; the minimum over all roots is exact.
pub fn girth(graph: &TannerGraph) -> GirthReport {
    let n = graph.n();
    let total = n + graph.r();
    let neighbors = |u: usize| -> Box<dyn Iterator<Item = usize> + '_> {
        if u < n {
            Box::new(graph.variable(u).iter().map(move |&c| n + c))
        } else {
            Box::new(graph.check(u - n).iter().copied())
        }
    };

    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    for root in 0..total {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] + 1 >= b {
                    break 'bfs;
                }
            }
            for w in neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    GirthReport {
        girth: best,
        min_left_degree: graph.min_left_degree(),
        is_d_left_regular: graph.is_left_regular(),
    }
}

/// Minimum Hamming weight over all nonzero codewords, by enumerating the
/// `q^k` codewords. `None` when the code is `{0}`.
pub fn min_distance_bruteforce(graph: &TannerGraph, limit: u64) -> Result<Option<usize>> {
    let h = graph.parity_check_matrix();
    let basis = field::nullspace_basis(&h);
    Ok(
        field::enumerate_codewords(&basis, graph.n(), graph.field(), limit)?
            .map(|w| field::hamming_weight(&w))
            .filter(|&w| w > 0)
            .min(),
    )
}

#[cfg(test)]
mod tests {
    use super::catalog;
    use super::*;
    use crate::field::DEFAULT_ENUMERATION_LIMIT;
    use proptest::prelude::*;

    const FULL_3X2: &str = "3 2\n2 3\n2 2 2\n3 3\n1 2\n1 2\n1 2\n1 2 3\n1 2 3\n";

    #[test]
    fn parses_fully_connected_alist() {
        let g = TannerGraph::from_alist(FULL_3X2, 3).unwrap();
        assert_eq!((g.n(), g.r()), (3, 2));
        assert_eq!(g.left_degrees(), vec![2, 2, 2]);
        assert_eq!(g.right_degrees(), vec![3, 3]);
    }

    #[test]
    fn parses_hamming_alist() {
        let text = catalog::hamming_7_4(2).to_alist();
        let g = TannerGraph::from_alist(&text, 2).unwrap();
        assert_eq!((g.n(), g.r()), (7, 3));
        assert_eq!(g, catalog::hamming_7_4(2));
    }

    #[test]
    fn zero_padded_alist_round_trips() {
        let g = catalog::hamming_7_4(2);
        let text = g.to_alist();
        // degree-1 columns are padded with zeros up to max degree 3
        assert!(text.lines().any(|l| l.ends_with(" 0 0")));
        assert_eq!(TannerGraph::from_alist(&text, 2).unwrap(), g);
    }

    #[test]
    fn extended_alist_with_unity_values_is_accepted() {
        let text = "3 2\n2 3\n2 2 2\n3 3\n1 1 2 1\n1 1 2 1\n1 1 2 1\n1 1 2 1 3 1\n1 1 2 1 3 1\n";
        let g = TannerGraph::from_alist(text, 3).unwrap();
        assert_eq!(g, TannerGraph::from_alist(FULL_3X2, 3).unwrap());
    }

    #[test]
    fn extended_alist_with_value_two_is_rejected() {
        let text = "3 2\n2 3\n2 2 2\n3 3\n1 1 2 1\n1 1 2 1\n1 2 2 1\n1 1 2 1 3 2\n1 1 2 1 3 1\n";
        let err = TannerGraph::from_alist(text, 3).unwrap_err();
        assert!(matches!(err, Error::NonUnityEdgeWeight { value: 2, .. }));
        assert!(err
            .to_string()
            .contains("non-unity edge weight unsupported"));
    }

    #[test]
    fn malformed_alists() {
        assert!(matches!(
            TannerGraph::from_alist("", 2),
            Err(Error::MalformedAlist(_))
        ));
        assert!(matches!(
            TannerGraph::from_alist("3 2\n2 3\nx", 2),
            Err(Error::MalformedAlist(_))
        ));
        // truncated adjacency
        let short = "3 2\n2 3\n2 2 2\n3 3\n1 2\n1 2\n";
        assert!(matches!(
            TannerGraph::from_alist(short, 2),
            Err(Error::MalformedAlist(_))
        ));
        // column lists disagree with row lists
        let bad = "3 2\n2 3\n2 2 2\n3 3\n1 2\n1 2\n1 2\n1 2 3\n1 2 2\n";
        assert!(TannerGraph::from_alist(bad, 2).is_err());
        assert_eq!(
            TannerGraph::from_alist(FULL_3X2, 4),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn parallel_edges_are_rejected() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(
            TannerGraph::from_checks(3, vec![vec![0, 1, 1]], f),
            Err(Error::ParallelEdge {
                variable: 1,
                check: 0
            })
        );
    }

    #[test]
    fn dense_rejects_non_unity_entries() {
        let f = PrimeField::new(3).unwrap();
        assert!(matches!(
            TannerGraph::from_dense(&[vec![1, 2, 0]], f),
            Err(Error::NonUnityEdgeWeight { value: 2, .. })
        ));
    }

    #[test]
    fn json_mirror() {
        let g = catalog::cycle_code(3, 3);
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(TannerGraph::from_json(&text, 3).unwrap(), g);
        let weighted = r#"{"n":3,"m":1,"checks":[[0,1,2]],"values":[[1,2,1]]}"#;
        assert!(matches!(
            TannerGraph::from_json(weighted, 3),
            Err(Error::NonUnityEdgeWeight {
                variable: 1,
                check: 0,
                value: 2
            })
        ));
        assert!(matches!(
            TannerGraph::from_json("{", 3),
            Err(Error::MalformedJson(_))
        ));
    }

    #[test]
    fn girth_examples() {
        let full = TannerGraph::from_alist(FULL_3X2, 3).unwrap();
        assert_eq!(girth(&full).girth, Some(4));
        assert_eq!(girth(&catalog::cycle_code(3, 3)).girth, Some(6));
        let tree = TannerGraph::from_checks(
            4,
            vec![vec![0, 1], vec![1, 2, 3]],
            PrimeField::new(2).unwrap(),
        )
        .unwrap();
        assert_eq!(girth(&tree).girth, None);
        assert_eq!(girth(&catalog::fano_plane(2)).girth, Some(6));
        assert_eq!(girth(&catalog::tutte_coxeter(2)).girth, Some(8));
        assert_eq!(girth(&catalog::cycle_code(5, 2)).girth, Some(10));
        let rep = girth(&catalog::hamming_7_4(2));
        assert_eq!(rep.girth, Some(4));
        assert_eq!(rep.min_left_degree, 1);
        assert!(!rep.is_d_left_regular);
    }

    #[test]
    fn min_distance_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let spc = TannerGraph::from_checks(3, vec![vec![0, 1, 2]], f2).unwrap();
        assert_eq!(
            min_distance_bruteforce(&spc, DEFAULT_ENUMERATION_LIMIT).unwrap(),
            Some(2)
        );
        let ham = catalog::hamming_7_4(2);
        assert_eq!(
            min_distance_bruteforce(&ham, DEFAULT_ENUMERATION_LIMIT).unwrap(),
            Some(3)
        );
        let spc4 = catalog::single_check(4, 3);
        assert_eq!(
            min_distance_bruteforce(&spc4, DEFAULT_ENUMERATION_LIMIT).unwrap(),
            Some(2)
        );
        assert!(spc4.is_codeword(&[1, 2, 0, 0]).unwrap());
        // odd cycle over GF(3): v0 = -v1 = v2 = -v0 forces zero
        assert_eq!(
            min_distance_bruteforce(&catalog::cycle_code(3, 3), 100).unwrap(),
            None
        );
        assert_eq!(
            min_distance_bruteforce(&catalog::cycle_code(3, 2), 100).unwrap(),
            Some(3)
        );
        assert!(matches!(
            min_distance_bruteforce(&ham, 15),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    fn shuffled(len: usize, seed: u64) -> Vec<usize> {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut p: Vec<usize> = (0..len).collect();
        p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        p
    }

    proptest! {
        #[test]
        fn girth_is_invariant_under_relabelling(which in 0usize..5, seed in any::<u64>()) {
            let g = match which {
                0 => catalog::hamming_7_4(2),
                1 => catalog::fano_plane(3),
                2 => catalog::cycle_code(4, 3),
                3 => catalog::tutte_coxeter(2),
                _ => catalog::hamming_7_4_cyclic(2),
            };
            let vp = shuffled(g.n(), seed);
            let cp = shuffled(g.r(), seed.wrapping_add(1));
            let h = g.relabeled(&vp, &cp).unwrap();
            prop_assert_eq!(girth(&g), girth(&h));
        }
    }
}
