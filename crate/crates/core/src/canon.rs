use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph `canonical_code` accepts. Minimization over vertex
/// orderings is exponential in the worst case; 14 is comfortably past the
/// sizes witness deduplication needs.
pub const MAX_CANON_N: usize = 14;

/// Byte string identifying an isomorphism class: `[n, m_lo, m_hi]` followed
/// by the lexicographically smallest upper-triangle multiplicity rows over
/// all degree-compatible vertex orderings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u8>);

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Canonical code by branch-and-bound minimization over vertex orderings.
///
/// Candidates for each position are restricted to vertices whose degree
/// matches the sorted degree sequence at that position; partial rows are
/// compared against the best complete code so far and pruned on first
/// mismatch. Two graphs within the size bound get equal codes iff they are
/// isomorphic.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    let n = g.n();
    if n > MAX_CANON_N {
        return Err(Error::Capacity {
            what: "canonical_code vertices",
            got: n,
            bound: MAX_CANON_N,
        });
    }
    let mut mult = vec![vec![0u8; n]; n];
    for &(u, v) in g.edges() {
        mult[u][v] = mult[u][v].saturating_add(1);
        mult[v][u] = mult[v][u].saturating_add(1);
    }
    let deg: Vec<usize> = (0..n).map(|v| mult[v].iter().map(|&x| x as usize).sum()).collect();
    // Positions must realize the descending degree sequence, which any
    // isomorphism preserves.
    let mut want: Vec<usize> = deg.clone();
    want.sort_unstable_by(|a, b| b.cmp(a));

    let mut best: Option<Vec<u8>> = None;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    // rows[k] = multiplicities of order[k] toward order[0..k]
    let mut rows: Vec<u8> = Vec::with_capacity(n * (n - 1) / 2 + 1);

    fn rec(
        k: usize,
        n: usize,
        mult: &[Vec<u8>],
        deg: &[usize],
        want: &[usize],
        used: &mut [bool],
        order: &mut Vec<usize>,
        rows: &mut Vec<u8>,
        best: &mut Option<Vec<u8>>,
    ) {
        if k == n {
            if best.as_ref().is_none_or(|b| rows[..] < b[..]) {
                *best = Some(rows.clone());
            }
            return;
        }
        for v in 0..n {
            if used[v] || deg[v] != want[k] {
                continue;
            }
            let base = rows.len();
            for &u in order.iter() {
                rows.push(mult[v][u]);
            }
            // A prefix strictly above the incumbent cannot improve, prune;
            // equal or smaller prefixes must be explored.
            let prune = best
                .as_ref()
                .is_some_and(|b| rows[..] > b[..rows.len()]);
            if !prune {
                used[v] = true;
                order.push(v);
                rec(k + 1, n, mult, deg, want, used, order, rows, best);
                order.pop();
                used[v] = false;
            }
            rows.truncate(base);
        }
    }

    rec(
        0, n, &mult, &deg, &want, &mut used, &mut order, &mut rows, &mut best,
    );

    let body = best.unwrap_or_default();
    let m = g.m();
    let mut code = vec![n as u8, (m & 0xff) as u8, (m >> 8) as u8];
    code.extend(body);
    Ok(CanonicalCode(code))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, parse_graph, path_graph, Graph};

    /// Brute-force isomorphism over all vertex bijections; the independent
    /// oracle the code minimization is checked against.
    pub fn isomorphic_brute(a: &Graph, b: &Graph) -> bool {
        if a.n() != b.n() || a.m() != b.m() {
            return false;
        }
        let n = a.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mult = |g: &Graph, u: usize, v: usize| g.edge_multiplicity(u, v);
        loop {
            let ok = (0..n).all(|u| (u + 1..n).all(|v| mult(a, u, v) == mult(b, perm[u], perm[v])));
            if ok {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn relabeled_paths_match() {
        let a = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        let b = parse_graph("3 2\n2 0\n0 1\n").unwrap();
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
    }

    #[test]
    fn p3_and_triangle_differ() {
        assert_ne!(
            canonical_code(&path_graph(3)).unwrap(),
            canonical_code(&cycle_graph(3)).unwrap()
        );
    }

    #[test]
    fn all_graphs_on_four_vertices() {
        // All 2^6 labelled graphs on 4 vertices; brute-force pairwise
        // isomorphism over all 4! maps says there are 11 classes.
        let mut graphs = Vec::new();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for mask in 0u32..64 {
            let es: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            graphs.push(Graph::new(4, es).unwrap());
        }
        let mut reps: Vec<Graph> = Vec::new();
        for g in &graphs {
            if !reps.iter().any(|r| isomorphic_brute(r, g)) {
                reps.push(g.clone());
            }
        }
        assert_eq!(reps.len(), 11);
        let mut codes: Vec<_> = reps.iter().map(|g| canonical_code(g).unwrap()).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 11);
        // And codes agree with brute-force isomorphism across the full set.
        for g in &graphs {
            let cg = canonical_code(g).unwrap();
            for r in &reps {
                let same = isomorphic_brute(g, r);
                assert_eq!(same, cg == canonical_code(r).unwrap());
            }
        }
    }

    #[test]
    fn multigraph_codes_distinguish_multiplicity() {
        let single = Graph::new_multi(2, [(0, 1)]).unwrap();
        let double = Graph::new_multi(2, [(0, 1), (0, 1)]).unwrap();
        assert_ne!(
            canonical_code(&single).unwrap(),
            canonical_code(&double).unwrap()
        );
    }

    #[test]
    fn capacity_bound() {
        let g = path_graph(MAX_CANON_N + 1);
        assert!(matches!(canonical_code(&g), Err(Error::Capacity { .. })));
        assert!(canonical_code(&complete_graph(8)).is_ok());
    }
}
