use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Finite undirected graph on vertices `0..n-1`.
///
/// No self-loops, ever. Parallel edges are kept only when `allow_parallel`
/// is set; that mode exists for the 2-edge-connected pipeline, everything
/// else works on simple graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    allow_parallel: bool,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Self::build(n, edges, false)
    }

    pub fn new_multi(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Self::build(n, edges, true)
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        allow_parallel: bool,
    ) -> Result<Graph> {
        let mut es: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge ({u},{v}) has endpoint >= n = {n}"
                )));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        if !allow_parallel {
            es.dedup();
        }
        Ok(Graph {
            n,
            edges: es,
            allow_parallel,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn allow_parallel(&self) -> bool {
        self.allow_parallel
    }

    /// Edges as normalized `(min,max)` pairs, sorted; parallel copies adjacent.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn edge_multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Adjacency lists with parallel edges collapsed, sorted ascending.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Neighborhood bitmasks; index v holds the set of vertices adjacent to v.
    pub fn adjacency_sets(&self) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::new(self.n); self.n];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Partition of the vertices into connected components, each sorted,
    /// ordered by smallest member. Parts are maximal and induce connected
    /// subgraphs; isolated vertices form singleton parts.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut parts = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut part = Vec::new();
            seen[s] = true;
            while let Some(v) = stack.pop() {
                part.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Contract edge `e`, merging its endpoints into the smaller label.
    /// Loops arising from the contraction are dropped; parallel edges are
    /// merged unless the graph allows them. Labels compact to `0..n-2`.
    pub fn contract_edge(&self, e: (usize, usize)) -> Result<Graph> {
        let key = (e.0.min(e.1), e.0.max(e.1));
        if self.edges.binary_search(&key).is_err() {
            return Err(Error::domain(format!("edge {key:?} not in graph")));
        }
        let (keep, gone) = key;
        // Every copy of the contracted pair becomes a loop and is dropped.
        let relabel = |v: usize| {
            if v == gone {
                keep
            } else if v > gone {
                v - 1
            } else {
                v
            }
        };
        let es = self
            .edges
            .iter()
            .map(|&(u, v)| (relabel(u), relabel(v)))
            .filter(|&(u, v)| u != v)
            .collect::<Vec<_>>();
        Self::build(self.n - 1, es, self.allow_parallel)
    }

    /// The subgraph on `keep_vertices` with exactly `keep_edges`, labels
    /// compacted. Returns the graph and the map new-label -> old-label.
    pub fn subgraph(
        &self,
        keep_vertices: &VertexSet,
        keep_edges: &[(usize, usize)],
    ) -> Result<(Graph, Vec<usize>)> {
        let mut avail = self.edges.clone();
        for &(u, v) in keep_edges {
            let key = (u.min(v), u.max(v));
            match avail.binary_search(&key) {
                Ok(i) => {
                    avail.remove(i);
                }
                Err(_) => {
                    return Err(Error::domain(format!("edge {key:?} not available in host")))
                }
            }
            if !keep_vertices.contains(u) || !keep_vertices.contains(v) {
                return Err(Error::domain(format!(
                    "edge {key:?} has an endpoint outside keep_vertices"
                )));
            }
        }
        let map: Vec<usize> = keep_vertices.iter().collect();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let es: Vec<(usize, usize)> = keep_edges.iter().map(|&(u, v)| (back[u], back[v])).collect();
        let g = Self::build(map.len(), es, self.allow_parallel)?;
        Ok((g, map))
    }

    /// Induced subgraph on a vertex set (all edges with both ends inside).
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let es: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| keep.contains(u) && keep.contains(v))
            .collect();
        self.subgraph(keep, &es).expect("induced edges are valid")
    }

    /// Delete one copy of edge `e`; labels are unchanged.
    pub fn delete_edge(&self, e: (usize, usize)) -> Result<Graph> {
        let key = (e.0.min(e.1), e.0.max(e.1));
        let mut es = self.edges.clone();
        match es.binary_search(&key) {
            Ok(i) => {
                es.remove(i);
            }
            Err(_) => return Err(Error::domain(format!("edge {key:?} not in graph"))),
        }
        Ok(Graph {
            n: self.n,
            edges: es,
            allow_parallel: self.allow_parallel,
        })
    }

    /// Drop isolated vertices, compacting labels.
    pub fn without_isolated(&self) -> Graph {
        let mut used = VertexSet::new(self.n);
        for &(u, v) in &self.edges {
            used.insert(u);
            used.insert(v);
        }
        let es = self.edges.clone();
        self.subgraph(&used, &es).expect("edges kept intact").0
    }

    /// Render in the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}", self.n, self.edges.len()));
        if self.allow_parallel {
            out.push_str(" multi");
        }
        out.push('\n');
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Parse the edge-list format: first non-comment line `n m [multi]`, then
/// m lines `u v`. `#` starts a comment, blank lines are skipped, CRLF is
/// accepted. Errors carry 1-based line numbers.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, bool, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 2 && fields.len() != 3 {
                    return Err(Error::parse(lineno, "expected header `n m [multi]`"));
                }
                let n: usize = fields[0]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad vertex count"))?;
                let m: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad edge count"))?;
                let multi = match fields.get(2) {
                    None => false,
                    Some(&"multi") => true,
                    Some(other) => {
                        return Err(Error::parse(lineno, format!("unknown header flag `{other}`")))
                    }
                };
                header = Some((n, m, multi, lineno));
            }
            Some((n, m, multi, _)) => {
                if edges.len() == m {
                    return Err(Error::parse(lineno, "more edge lines than header declares"));
                }
                if fields.len() != 2 {
                    return Err(Error::parse(lineno, "expected edge line `u v`"));
                }
                let u: usize = fields[0]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad endpoint"))?;
                let v: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad endpoint"))?;
                if u >= n || v >= n {
                    return Err(Error::parse(lineno, format!("endpoint >= n = {n}")));
                }
                if u == v {
                    return Err(Error::parse(lineno, format!("self-loop at vertex {u}")));
                }
                let _ = multi;
                edges.push((u, v));
            }
        }
    }
    let (n, m, multi, hline) = header.ok_or_else(|| Error::parse(1, "missing header line"))?;
    if edges.len() != m {
        return Err(Error::parse(
            hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    if multi {
        Graph::new_multi(n, edges)
    } else {
        Graph::new(n, edges)
    }
}

/// Helpers used all over the tests.
pub fn path_graph(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::new(
        n,
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    )
    .unwrap()
}

/// K_{a,b} with the `a`-side labelled 0..a-1.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(
        a + b,
        (0..a).flat_map(move |u| (a..a + b).map(move |v| (u, v))),
    )
    .unwrap()
}

pub fn star_graph(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let g = parse_graph("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert!(!g.allow_parallel());
    }

    #[test]
    fn parse_single_vertex() {
        let g = parse_graph("1 0").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn parse_multi_double_edge() {
        let g = parse_graph("2 2 multi\n0 1\n0 1\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1), (0, 1)]);
        assert!(g.allow_parallel());
    }

    #[test]
    fn parse_simple_merges_parallels() {
        let g = parse_graph("2 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn parse_comments_and_crlf() {
        let g = parse_graph("# a triangle\r\n3 3\r\n0 1\r\n\r\n1 2\r\n2 0\r\n").unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn parse_errors_name_lines() {
        match parse_graph("3 1\n0 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_graph("2 1\n1 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_graph("2 2\n0 1\n").is_err());
    }

    #[test]
    fn contract_triangle_simple() {
        let g = cycle_graph(3);
        let h = g.contract_edge((0, 1)).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges(), &[(0, 1)]);
    }

    #[test]
    fn contract_triangle_multi_keeps_double() {
        let g = Graph::new_multi(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let h = g.contract_edge((0, 1)).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges(), &[(0, 1), (0, 1)]);
    }

    #[test]
    fn contract_c4_gives_triangle() {
        let g = cycle_graph(4);
        let h = g.contract_edge((0, 1)).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 3);
    }

    #[test]
    fn contract_missing_edge_is_domain_error() {
        let g = path_graph(3);
        assert!(g.contract_edge((0, 2)).is_err());
    }

    #[test]
    fn subgraph_induced_triangle_of_k4() {
        let g = complete_graph(4);
        let keep = VertexSet::from_iter_n(4, [0, 1, 3]);
        let (h, map) = g.induced(&keep);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 3);
        assert_eq!(map, vec![0, 1, 3]);
    }

    #[test]
    fn subgraph_of_edge_set() {
        let g = complete_graph(4);
        let keep = VertexSet::from_iter_n(4, [1, 2]);
        let (h, map) = g.subgraph(&keep, &[(1, 2)]).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges(), &[(0, 1)]);
        assert_eq!(map, vec![1, 2]);
    }

    #[test]
    fn subgraph_minus_everything() {
        let g = cycle_graph(3);
        let keep = VertexSet::new(3);
        let (h, _) = g.subgraph(&keep, &[]).unwrap();
        assert_eq!(h.n(), 0);
        assert_eq!(h.m(), 0);
    }

    #[test]
    fn subgraph_inconsistent_args() {
        let g = complete_graph(4);
        let keep = VertexSet::from_iter_n(4, [0, 1]);
        assert!(g.subgraph(&keep, &[(2, 3)]).is_err());
    }

    #[test]
    fn components_examples() {
        assert_eq!(cycle_graph(3).components(), vec![vec![0, 1, 2]]);
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.components(), vec![vec![0, 1], vec![2, 3]]);
        let empty = Graph::new(0, []).unwrap();
        assert!(empty.components().is_empty());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::new_multi(4, [(0, 1), (0, 1), (2, 3)]).unwrap();
        let h = parse_graph(&g.to_edge_list()).unwrap();
        assert_eq!(g, h);
    }
}
