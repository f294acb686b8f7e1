//! Ground-truth machinery: exact path-width, minor containment,
//! decomposition verification and reduction to minor-minimal obstructions.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// Largest connected component `exact_pathwidth` handles. The subset DP
/// allocates one byte per subset: 2^n bytes plus n machine words of
/// adjacency masks per call, so 22 means a 4 MiB private table.
pub const MAX_ORACLE_N: usize = 22;

/// Ordered bag sequence over a host graph with `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub n: usize,
    pub bags: Vec<VertexSet>,
}

impl PathDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.count()).max().unwrap_or(1) - 1
    }

    /// Text format: one `B:` line per bag, terminated by an empty line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.bags {
            out.push_str("B:");
            for v in b.iter() {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out.push('\n');
        out
    }

    /// Parse the `B:` format; `n` is the host vertex count.
    pub fn parse(text: &str, n: usize) -> Result<PathDecomposition> {
        let mut bags = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim_end_matches('\r').trim();
            if line.starts_with('#') {
                continue;
            }
            if line.is_empty() {
                break;
            }
            let rest = line
                .strip_prefix("B:")
                .ok_or_else(|| Error::parse(lineno, "expected `B:` line"))?;
            let mut bag = VertexSet::new(n);
            for f in rest.split_whitespace() {
                let v: usize = f
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad vertex label"))?;
                if v >= n {
                    return Err(Error::parse(lineno, format!("bag member {v} >= n = {n}")));
                }
                bag.insert(v);
            }
            bags.push(bag);
        }
        Ok(PathDecomposition { n, bags })
    }
}

/// What `verify_decomposition` reports when a check fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexUncovered { vertex: usize },
    EdgeUncovered { edge: (usize, usize) },
    IntervalBroken { vertex: usize, bag: usize },
    WidthExceeded { bag: usize, size: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} in no bag"),
            Violation::EdgeUncovered { edge } => {
                write!(f, "edge ({},{}) has no common bag", edge.0, edge.1)
            }
            Violation::IntervalBroken { vertex, bag } => {
                write!(f, "vertex {vertex} interval broken at bag {bag}")
            }
            Violation::WidthExceeded { bag, size } => {
                write!(f, "bag {bag} has {size} vertices, over the width bound")
            }
        }
    }
}

/// Check the two decomposition conditions plus the width bound; returns the
/// first violation found, scanning vertices, then edges, then intervals.
pub fn verify_decomposition(
    g: &Graph,
    d: &PathDecomposition,
    max_width: usize,
) -> std::result::Result<(), Violation> {
    for (i, b) in d.bags.iter().enumerate() {
        if b.count() > max_width + 1 {
            return Err(Violation::WidthExceeded {
                bag: i,
                size: b.count(),
            });
        }
    }
    let mut first = vec![usize::MAX; g.n()];
    let mut last = vec![usize::MAX; g.n()];
    for (i, b) in d.bags.iter().enumerate() {
        for v in b.iter() {
            if first[v] == usize::MAX {
                first[v] = i;
            }
            last[v] = i;
        }
    }
    for v in 0..g.n() {
        if first[v] == usize::MAX {
            return Err(Violation::VertexUncovered { vertex: v });
        }
    }
    for &(u, v) in g.edges() {
        if !d.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            return Err(Violation::EdgeUncovered { edge: (u, v) });
        }
    }
    for v in 0..g.n() {
        for i in first[v]..=last[v] {
            if !d.bags[i].contains(v) {
                return Err(Violation::IntervalBroken { vertex: v, bag: i });
            }
        }
    }
    Ok(())
}

/// Exact path-width with a verifying witness.
///
/// Uses the vertex-layout formulation: path-width equals the minimum over
/// vertex orderings of the largest boundary of a prefix, computed by a
/// dynamic program over subsets keyed by the set of already-placed
/// vertices. Disconnected inputs are handled component-wise and the
/// decompositions concatenated; the width is the max over components.
pub fn exact_pathwidth(g: &Graph) -> Result<(usize, PathDecomposition)> {
    let comps = g.components();
    let mut width = 0usize;
    let mut bags: Vec<VertexSet> = Vec::new();
    for comp in &comps {
        let keep = VertexSet::from_iter_n(g.n(), comp.iter().copied());
        let (h, map) = g.induced(&keep);
        let (w, d) = pathwidth_connected(&h)?;
        width = width.max(w);
        for b in d.bags {
            bags.push(VertexSet::from_iter_n(g.n(), b.iter().map(|v| map[v])));
        }
    }
    if comps.is_empty() {
        // Empty graph: zero bags, width 0 by convention.
        return Ok((0, PathDecomposition { n: g.n(), bags }));
    }
    let d = PathDecomposition { n: g.n(), bags };
    debug_assert_eq!(verify_decomposition(g, &d, width), Ok(()));
    Ok((width, d))
}

fn pathwidth_connected(g: &Graph) -> Result<(usize, PathDecomposition)> {
    let n = g.n();
    if n > MAX_ORACLE_N {
        return Err(Error::Capacity {
            what: "exact_pathwidth component vertices",
            got: n,
            bound: MAX_ORACLE_N,
        });
    }
    if n == 0 {
        return Ok((0, PathDecomposition { n, bags: vec![] }));
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let all: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let size = 1usize << n;
    // dp[s] = best achievable max boundary over orderings of exactly s
    let mut dp = vec![u8::MAX; size];
    dp[0] = 0;
    for s in 1u32..=all {
        let su = s as usize;
        let mut inner_best = u8::MAX;
        let mut t = s;
        while t != 0 {
            let v = t.trailing_zeros();
            t &= t - 1;
            let prev = dp[(s & !(1 << v)) as usize];
            inner_best = inner_best.min(prev);
        }
        let bnd = boundary(&adj, s);
        dp[su] = inner_best.max(bnd);
    }
    let width = dp[all as usize] as usize;

    // Recover a layout by walking back from the full set, picking the
    // smallest-label vertex that attains the optimum at each step.
    let mut order = vec![0usize; n];
    let mut s = all;
    for slot in (0..n).rev() {
        let bnd = boundary(&adj, s);
        let mut chosen = None;
        let mut t = s;
        while t != 0 {
            let v = t.trailing_zeros();
            t &= t - 1;
            if dp[(s & !(1 << v)) as usize].max(bnd) == dp[s as usize] {
                chosen = Some(v as usize);
                break;
            }
        }
        let v = chosen.expect("dp recurrence admits a witness");
        order[slot] = v;
        s &= !(1 << v as u32);
    }

    // Layout to bags: bag for the i-th vertex is {v_i} plus the boundary of
    // the preceding prefix.
    let mut bags = Vec::with_capacity(n);
    let mut placed = 0u32;
    for &v in &order {
        let mut bag = VertexSet::new(n);
        bag.insert(v);
        let mut t = placed;
        while t != 0 {
            let u = t.trailing_zeros();
            t &= t - 1;
            if adj[u as usize] & !placed != 0 {
                bag.insert(u as usize);
            }
        }
        bags.push(bag);
        placed |= 1 << v;
    }
    let d = PathDecomposition { n, bags };
    Ok((width, d))
}

fn boundary(adj: &[u32], s: u32) -> u8 {
    let mut t = s;
    let mut c = 0u8;
    while t != 0 {
        let v = t.trailing_zeros();
        t &= t - 1;
        if adj[v as usize] & !s != 0 {
            c += 1;
        }
    }
    c
}

/// Branch sets of a minor embedding of a pattern in a host: disjoint
/// connected host sets, one per pattern vertex, with every pattern edge
/// witnessed by a host edge between the two sets.
#[derive(Debug, Clone)]
pub struct MinorEmbedding {
    pub branch_sets: Vec<VertexSet>,
}

impl MinorEmbedding {
    pub fn check(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.branch_sets.len() != pattern.n() {
            return false;
        }
        let adj = host.adjacency_sets();
        for (i, b) in self.branch_sets.iter().enumerate() {
            if b.is_empty() || !connected_in(host, b) {
                return false;
            }
            for other in &self.branch_sets[i + 1..] {
                if !b.is_disjoint(other) {
                    return false;
                }
            }
        }
        for &(x, y) in pattern.edges() {
            let bx = &self.branch_sets[x];
            let by = &self.branch_sets[y];
            let touches = bx.iter().any(|v| !adj[v].intersection(by).is_empty());
            if !touches {
                return false;
            }
        }
        true
    }
}

fn connected_in(g: &Graph, set: &VertexSet) -> bool {
    let Some(start) = set.min() else { return false };
    let adj = g.adjacency_sets();
    let mut seen = VertexSet::new(g.n());
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in adj[v].intersection(set).iter() {
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen.count() == set.count()
}

/// Decide `host >= pattern` in the minor order; `roots` pins host vertices
/// into the branch sets of given pattern vertices (the rooted relation).
///
/// Search grows one branch set per pattern vertex by enumerating connected
/// candidate sets with a forbidden-frontier scheme, pattern vertices in
/// descending degree order. Pattern sizes here stay small.
pub fn has_minor(
    host: &Graph,
    pattern: &Graph,
    roots: &[(usize, usize)],
) -> Option<MinorEmbedding> {
    if pattern.n() > host.n() || pattern.n() == 0 {
        return if pattern.n() == 0 {
            Some(MinorEmbedding { branch_sets: vec![] })
        } else {
            None
        };
    }
    for &(hv, pv) in roots {
        if hv >= host.n() || pv >= pattern.n() {
            return None;
        }
    }
    let hn = host.n();
    let pn = pattern.n();
    let adj = host.adjacency_sets();
    let padj = pattern.neighbors();

    // Place rooted pattern vertices first, then the rest by degree.
    let mut porder: Vec<usize> = (0..pn).collect();
    porder.sort_by_key(|&p| {
        let rooted = roots.iter().any(|&(_, q)| q == p);
        (!rooted, std::cmp::Reverse(padj[p].len()), p)
    });

    let mut assignment: Vec<Option<VertexSet>> = vec![None; pn];
    let mut used = VertexSet::new(hn);

    fn place(
        idx: usize,
        porder: &[usize],
        host: &Graph,
        adj: &[VertexSet],
        padj: &[Vec<usize>],
        roots: &[(usize, usize)],
        assignment: &mut Vec<Option<VertexSet>>,
        used: &mut VertexSet,
    ) -> bool {
        if idx == porder.len() {
            return true;
        }
        let p = porder[idx];
        let hn = host.n();
        let remaining_patterns = porder.len() - idx - 1;
        let budget = hn - used.count() - remaining_patterns;
        // Earlier-placed pattern neighbours this branch set must touch.
        let needs: Vec<usize> = padj[p]
            .iter()
            .copied()
            .filter(|&q| assignment[q].is_some())
            .collect();
        let root: Option<usize> = roots
            .iter()
            .find(|&&(_, q)| q == p)
            .map(|&(hv, _)| hv);
        if let Some(hv) = root {
            if used.contains(hv) {
                return false;
            }
        }

        let seeds: Vec<usize> = match root {
            Some(hv) => vec![hv],
            None => (0..hn).filter(|&v| !used.contains(v)).collect(),
        };
        for seed in seeds {
            // Enumerate connected sets containing `seed` whose <seed part is
            // empty (unrooted case) to avoid revisits; rooted sets are
            // enumerated from the root without that restriction.
            let mut cur = VertexSet::new(hn);
            cur.insert(seed);
            let mut forbidden = used.clone();
            if root.is_none() {
                for v in 0..seed {
                    forbidden.insert(v);
                }
            }
            forbidden.insert(seed);
            if grow(
                host, adj, padj, roots, assignment, used, p, &mut cur, &mut forbidden, &needs,
                budget, idx, porder,
            ) {
                return true;
            }
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        host: &Graph,
        adj: &[VertexSet],
        padj: &[Vec<usize>],
        roots: &[(usize, usize)],
        assignment: &mut Vec<Option<VertexSet>>,
        used: &mut VertexSet,
        p: usize,
        cur: &mut VertexSet,
        forbidden: &mut VertexSet,
        needs: &[usize],
        budget: usize,
        idx: usize,
        porder: &[usize],
    ) -> bool {
        let satisfied = needs.iter().all(|&q| {
            let bq = assignment[q].as_ref().unwrap();
            cur.iter().any(|v| !adj[v].intersection(bq).is_empty())
        });
        if satisfied {
            let saved_used = used.clone();
            for v in cur.iter() {
                used.insert(v);
            }
            assignment[p] = Some(cur.clone());
            if place(idx + 1, porder, host, adj, padj, roots, assignment, used) {
                return true;
            }
            assignment[p] = None;
            *used = saved_used;
        }
        if cur.count() >= budget {
            return false;
        }
        // Frontier vertices not yet decided; branch on including each,
        // forbidding it for later branches of this enumeration.
        let mut frontier = VertexSet::new(host.n());
        for v in cur.iter() {
            frontier = frontier.union(&adj[v]);
        }
        let frontier = frontier.difference(forbidden);
        let mut added = Vec::new();
        for w in frontier.iter() {
            cur.insert(w);
            forbidden.insert(w);
            added.push(w);
            if grow(
                host, adj, padj, roots, assignment, used, p, cur, forbidden, needs, budget, idx,
                porder,
            ) {
                return true;
            }
            cur.remove(w);
        }
        for w in added {
            forbidden.remove(w);
        }
        false
    }

    if place(
        0, &porder, host, &adj, &padj, roots, &mut assignment, &mut used,
    ) {
        let branch_sets = assignment.into_iter().map(|b| b.unwrap()).collect();
        let emb = MinorEmbedding { branch_sets };
        debug_assert!(emb.check(host, pattern));
        Some(emb)
    } else {
        None
    }
}

/// Every one-step minor of `g`: single edge deletions and single edge
/// contractions (isolated vertices dropped after deletion).
pub fn one_step_minors(g: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut seen_edges: Vec<(usize, usize)> = Vec::new();
    for &e in g.edges() {
        if seen_edges.contains(&e) {
            continue;
        }
        seen_edges.push(e);
        out.push(g.delete_edge(e).unwrap().without_isolated());
        out.push(g.contract_edge(e).unwrap());
    }
    out
}

/// Reduce a path-width >= 3 graph to a minor-minimal obstruction: repeat
/// single edge deletions (label order) then contractions until every
/// one-step minor has path-width <= 2. Deterministic given the labeling.
pub fn minimize_witness(g: &Graph) -> Result<Graph> {
    let (w, _) = exact_pathwidth(g)?;
    if w < 3 {
        return Err(Error::domain(format!(
            "minimize_witness needs path-width >= 3, got {w}"
        )));
    }
    let mut cur = g.without_isolated();
    'outer: loop {
        let mut tried: Vec<(usize, usize)> = Vec::new();
        for &e in cur.edges() {
            if tried.contains(&e) {
                continue;
            }
            tried.push(e);
            let h = cur.delete_edge(e)?.without_isolated();
            if exact_pathwidth(&h)?.0 >= 3 {
                cur = h;
                continue 'outer;
            }
        }
        let mut tried: Vec<(usize, usize)> = Vec::new();
        for &e in cur.edges() {
            if tried.contains(&e) {
                continue;
            }
            tried.push(e);
            let h = cur.contract_edge(e)?;
            if exact_pathwidth(&h)?.0 >= 3 {
                cur = h;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// True iff `g` has path-width >= 3 and every one-step minor drops to <= 2.
pub fn is_minor_minimal_obstruction(g: &Graph) -> Result<bool> {
    if exact_pathwidth(g)?.0 < 3 {
        return Ok(false);
    }
    for h in one_step_minors(g) {
        if exact_pathwidth(&h)?.0 >= 3 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete_bipartite, complete_graph, cycle_graph, path_graph, star_graph, Graph,
    };

    /// Independent check: minimum over all vertex orderings of the max
    /// prefix boundary, by direct permutation enumeration.
    pub fn pathwidth_brute(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 8);
        if n == 0 {
            return 0;
        }
        let mut adj = vec![0u32; n];
        for &(u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = usize::MAX;
        loop {
            let mut placed = 0u32;
            let mut worst = 0usize;
            for &v in &perm {
                placed |= 1 << v;
                let mut b = 0;
                let mut t = placed;
                while t != 0 {
                    let u = t.trailing_zeros();
                    t &= t - 1;
                    if adj[u as usize] & !placed != 0 {
                        b += 1;
                    }
                }
                worst = worst.max(b);
            }
            best = best.min(worst);
            // next permutation
            let mut i = n - 1;
            while i > 0 && perm[i - 1] >= perm[i] {
                i -= 1;
            }
            if i == 0 {
                return best;
            }
            let mut j = n - 1;
            while perm[j] <= perm[i - 1] {
                j -= 1;
            }
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    }

    #[test]
    fn path_graphs_have_width_one() {
        for n in 2..=10 {
            let (w, d) = exact_pathwidth(&path_graph(n)).unwrap();
            assert_eq!(w, 1, "P_{n}");
            assert_eq!(verify_decomposition(&path_graph(n), &d, 1), Ok(()));
        }
    }

    #[test]
    fn known_small_widths() {
        assert_eq!(exact_pathwidth(&complete_graph(4)).unwrap().0, 3);
        assert_eq!(exact_pathwidth(&cycle_graph(5)).unwrap().0, 2);
        assert_eq!(exact_pathwidth(&Graph::new(1, []).unwrap()).unwrap().0, 0);
        assert_eq!(exact_pathwidth(&complete_bipartite(2, 3)).unwrap().0, 2);
        assert_eq!(exact_pathwidth(&star_graph(6)).unwrap().0, 1);
    }

    #[test]
    fn dp_matches_brute_force_small() {
        // Every graph on 5 vertices: DP equals the independent
        // permutation enumeration.
        let pairs = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        for mask in 0u32..1 << 10 {
            let es: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(5, es).unwrap();
            let (w, d) = exact_pathwidth(&g).unwrap();
            assert_eq!(w, pathwidth_brute(&g), "mask {mask}");
            assert_eq!(verify_decomposition(&g, &d, w), Ok(()));
        }
    }

    #[test]
    fn disconnected_width_is_max() {
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let (w, d) = exact_pathwidth(&g).unwrap();
        assert_eq!(w, 2);
        assert_eq!(verify_decomposition(&g, &d, 2), Ok(()));
    }

    #[test]
    fn capacity_error_not_wrong_answer() {
        let g = path_graph(MAX_ORACLE_N + 1);
        // Connected component too large -> capacity error.
        assert!(matches!(
            exact_pathwidth(&g),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn verify_examples() {
        let p3 = path_graph(3);
        let ok = PathDecomposition {
            n: 3,
            bags: vec![
                VertexSet::from_iter_n(3, [0, 1]),
                VertexSet::from_iter_n(3, [1, 2]),
            ],
        };
        assert_eq!(verify_decomposition(&p3, &ok, 1), Ok(()));

        let tri = cycle_graph(3);
        let missing = PathDecomposition {
            n: 3,
            bags: vec![
                VertexSet::from_iter_n(3, [0, 1]),
                VertexSet::from_iter_n(3, [1, 2]),
            ],
        };
        assert_eq!(
            verify_decomposition(&tri, &missing, 2),
            Err(Violation::EdgeUncovered { edge: (0, 2) })
        );

        let broken = PathDecomposition {
            n: 3,
            bags: vec![
                VertexSet::from_iter_n(3, [0, 1]),
                VertexSet::from_iter_n(3, [2]),
                VertexSet::from_iter_n(3, [1, 2]),
            ],
        };
        assert_eq!(
            verify_decomposition(&p3, &broken, 1),
            Err(Violation::IntervalBroken { vertex: 1, bag: 1 })
        );
    }

    #[test]
    fn decomposition_text_round_trip() {
        let d = PathDecomposition {
            n: 4,
            bags: vec![
                VertexSet::from_iter_n(4, [0, 1, 3]),
                VertexSet::from_iter_n(4, [1, 2, 3]),
            ],
        };
        let parsed = PathDecomposition::parse(&d.to_text(), 4).unwrap();
        assert_eq!(d, parsed);
    }

    #[test]
    fn minor_examples() {
        let c5 = cycle_graph(5);
        let c3 = cycle_graph(3);
        let emb = has_minor(&c5, &c3, &[]).unwrap();
        assert!(emb.check(&c5, &c3));

        let tree = star_graph(4);
        assert!(has_minor(&tree, &c3, &[]).is_none());

        let k4 = complete_graph(4);
        let emb = has_minor(&k4, &k4, &[]).unwrap();
        assert!(emb.check(&k4, &k4));
    }

    #[test]
    fn rooted_minor_respects_roots() {
        // P4 contains P2 rooted anywhere, but rooting both pattern ends at
        // the same host end fails.
        let p4 = path_graph(4);
        let p2 = path_graph(2);
        assert!(has_minor(&p4, &p2, &[(0, 0), (3, 1)]).is_some());
        let c4 = cycle_graph(4);
        let k3 = cycle_graph(3);
        assert!(has_minor(&c4, &k3, &[(0, 0)]).is_none());
    }

    #[test]
    fn minimize_k4_plus_pendant() {
        let mut es: Vec<(usize, usize)> = complete_graph(4).edges().to_vec();
        es.push((3, 4));
        let g = Graph::new(5, es).unwrap();
        let h = minimize_witness(&g).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.m(), 6);
        assert!(is_minor_minimal_obstruction(&h).unwrap());
    }

    #[test]
    fn minimize_k4_is_fixed_point() {
        let k4 = complete_graph(4);
        let h = minimize_witness(&k4).unwrap();
        assert_eq!(h, k4);
        assert!(is_minor_minimal_obstruction(&k4).unwrap());
    }

    #[test]
    fn minimize_k5_yields_minimal() {
        let h = minimize_witness(&complete_graph(5)).unwrap();
        let (w, _) = exact_pathwidth(&h).unwrap();
        assert!(w >= 3);
        assert!((4..=6).contains(&h.n()));
        assert!(is_minor_minimal_obstruction(&h).unwrap());
    }

    #[test]
    fn minimize_rejects_low_width() {
        assert!(minimize_witness(&cycle_graph(5)).is_err());
    }
}
