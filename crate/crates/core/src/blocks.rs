//! Block-cut structure and cycle/bridge analysis.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// Blocks as edge-index sets (partitioning the edge set), the cut vertices,
/// and the bipartite block-cut tree.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Each block lists indices into `g.edges()`.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: VertexSet,
    /// Adjacency of the bipartite tree: for each block, the cut vertices in it.
    pub block_cuts: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    /// Vertices spanned by block `i`.
    pub fn block_vertices(&self, g: &Graph, i: usize) -> VertexSet {
        let mut s = VertexSet::new(g.n());
        for &e in &self.blocks[i] {
            let (u, v) = g.edges()[e];
            s.insert(u);
            s.insert(v);
        }
        s
    }
}

/// Hopcroft-Tarjan with an edge stack. Parallel edges carry distinct ids, so
/// a parallel copy of the tree edge is a genuine back edge and the pair ends
/// up in one block.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let m = g.m();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut estack: Vec<usize> = Vec::new();
    let mut timer = 0usize;

    // Iterative DFS: frames of (vertex, parent edge id, adj cursor).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0usize;
        while let Some(&mut (v, pe, ref mut cursor)) = frames.last_mut() {
            if *cursor < adj[v].len() {
                let (w, id) = adj[v][*cursor];
                *cursor += 1;
                if id == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push(id);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    frames.push((w, id, 0));
                } else if disc[w] < disc[v] {
                    estack.push(id);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        if parent != root {
                            is_cut[parent] = true;
                        }
                        // Everything above the tree edge into v is one block.
                        let mut blk = Vec::new();
                        loop {
                            let top = estack.pop().expect("tree edge on stack");
                            blk.push(top);
                            if top == pe {
                                break;
                            }
                        }
                        blocks.push(blk);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    debug_assert_eq!(blocks.iter().map(|b| b.len()).sum::<usize>(), m);

    let cut_vertices = VertexSet::from_iter_n(n, (0..n).filter(|&v| is_cut[v]));
    let block_cuts = blocks
        .iter()
        .map(|blk| {
            let mut vs = VertexSet::new(n);
            for &e in blk {
                let (u, v) = g.edges()[e];
                vs.insert(u);
                vs.insert(v);
            }
            vs.intersection(&cut_vertices).to_vec()
        })
        .collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
        block_cuts,
    }
}

/// Cyclically closed sequence of distinct vertices; consecutive pairs are
/// edges of the host. A 2-cycle is valid only across a parallel pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_n(n, self.vertices.iter().copied())
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        let k = self.vertices.len();
        if k < 2 {
            return Err(Error::domain("cycle needs at least 2 vertices"));
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Err(Error::domain("cycle vertices not distinct"));
        }
        if k == 2 {
            let (u, v) = (self.vertices[0], self.vertices[1]);
            if g.edge_multiplicity(u, v) < 2 {
                return Err(Error::domain("2-cycle needs a parallel pair"));
            }
            return Ok(());
        }
        for i in 0..k {
            let (u, v) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if !g.has_edge(u, v) {
                return Err(Error::domain(format!("({u},{v}) not an edge")));
            }
        }
        Ok(())
    }

    /// Rotate to the minimum vertex and orient toward the smaller second
    /// vertex; the deterministic form used for comparisons.
    pub fn canonical(&self) -> Cycle {
        let k = self.vertices.len();
        let pos = self
            .vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap();
        let fwd: Vec<usize> = (0..k).map(|i| self.vertices[(pos + i) % k]).collect();
        let bwd: Vec<usize> = (0..k).map(|i| self.vertices[(pos + k - i) % k]).collect();
        if fwd <= bwd {
            Cycle { vertices: fwd }
        } else {
            Cycle { vertices: bwd }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BridgeKind {
    /// A single edge between two cycle vertices.
    TrivialOneEdge,
    /// Two edges through one interior vertex.
    TrivialTwoEdge,
    Nontrivial,
}

/// A bridge of a cycle: either the edges touching one component of `G - C`,
/// or a single edge joining two cycle vertices.
#[derive(Debug, Clone)]
pub struct Bridge {
    /// Indices into the host's edge list.
    pub edge_ids: Vec<usize>,
    /// Interior vertices (the component of `G - C`), if any.
    pub interior: Vec<usize>,
    /// Cycle vertices met by the bridge, in cycle order from the anchor.
    pub legs: Vec<usize>,
    pub kind: BridgeKind,
    /// Interior vertex of a two-edge bridge with two distinct legs.
    pub middle: Option<usize>,
}

/// Split everything outside `c` into bridges. Every edge not traversed by
/// the cycle lands in exactly one bridge.
pub fn bridges_of_cycle(g: &Graph, c: &Cycle) -> Result<Vec<Bridge>> {
    c.check(g)?;
    let n = g.n();
    let k = c.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in c.vertices.iter().enumerate() {
        pos[v] = i;
    }
    // Count how many copies of each pair the cycle itself consumes; a
    // 2-cycle consumes two parallel copies.
    let mut cycle_use: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    for i in 0..k {
        let (u, v) = (c.vertices[i], c.vertices[(i + 1) % k]);
        *cycle_use.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }
    let mut cycle_edge_ids: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = Vec::new();
    for (id, &e) in g.edges().iter().enumerate() {
        match cycle_use.get_mut(&e) {
            Some(cnt) if *cnt > 0 => {
                *cnt -= 1;
                cycle_edge_ids.push(id);
            }
            _ => remaining.push(id),
        }
    }

    let adj = g.neighbors();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if pos[s] != usize::MAX || comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut part = vec![s];
        comp[s] = id;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if pos[w] == usize::MAX && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                    part.push(w);
                }
            }
        }
        part.sort_unstable();
        comps.push(part);
    }

    let mut comp_edges: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    let mut chord_bridges: Vec<Bridge> = Vec::new();
    for id in remaining {
        let (u, v) = g.edges()[id];
        let cu = if pos[u] == usize::MAX { Some(comp[u]) } else { None };
        let cv = if pos[v] == usize::MAX { Some(comp[v]) } else { None };
        match cu.or(cv) {
            Some(ci) => comp_edges[ci].push(id),
            None => {
                let mut legs = vec![u, v];
                legs.sort_by_key(|&x| pos[x]);
                chord_bridges.push(Bridge {
                    edge_ids: vec![id],
                    interior: vec![],
                    legs,
                    kind: BridgeKind::TrivialOneEdge,
                    middle: None,
                });
            }
        }
    }

    let mut bridges = Vec::new();
    for (ci, part) in comps.iter().enumerate() {
        let mut legs: Vec<usize> = Vec::new();
        for &id in &comp_edges[ci] {
            let (u, v) = g.edges()[id];
            if pos[u] != usize::MAX {
                legs.push(u);
            }
            if pos[v] != usize::MAX {
                legs.push(v);
            }
        }
        legs.sort_by_key(|&x| pos[x]);
        legs.dedup();
        let kind = match comp_edges[ci].len() {
            1 => BridgeKind::TrivialOneEdge,
            2 => BridgeKind::TrivialTwoEdge,
            _ => BridgeKind::Nontrivial,
        };
        let middle = if comp_edges[ci].len() == 2 && part.len() == 1 && legs.len() == 2 {
            Some(part[0])
        } else {
            None
        };
        bridges.push(Bridge {
            edge_ids: {
                let mut e = comp_edges[ci].clone();
                e.sort_unstable();
                e
            },
            interior: part.clone(),
            legs,
            kind,
            middle,
        });
    }
    bridges.extend(chord_bridges);
    // Deterministic order: by first leg position, then edge ids.
    bridges.sort_by_key(|b| {
        (
            b.legs.first().map(|&v| pos[v]).unwrap_or(usize::MAX),
            b.edge_ids.clone(),
        )
    });
    Ok(bridges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BridgeRelation {
    Equivalent,
    Crossing,
    NoncrossingDistinct,
}

/// Two leg pairs cross iff they are disjoint and alternate along the cycle.
pub fn bridge_relation(b1: &Bridge, b2: &Bridge, c: &Cycle) -> BridgeRelation {
    let pos = |v: usize| c.position(v).expect("leg on cycle");
    for i in 0..b1.legs.len() {
        for j in i + 1..b1.legs.len() {
            let (a1, a2) = (pos(b1.legs[i]), pos(b1.legs[j]));
            for x in 0..b2.legs.len() {
                for y in x + 1..b2.legs.len() {
                    let (c1, c2) = (pos(b2.legs[x]), pos(b2.legs[y]));
                    if a1 == c1 || a1 == c2 || a2 == c1 || a2 == c2 {
                        continue;
                    }
                    let (lo, hi) = (a1.min(a2), a1.max(a2));
                    let inside1 = lo < c1 && c1 < hi;
                    let inside2 = lo < c2 && c2 < hi;
                    if inside1 != inside2 {
                        return BridgeRelation::Crossing;
                    }
                }
            }
        }
    }
    let mut l1 = b1.legs.clone();
    let mut l2 = b2.legs.clone();
    l1.sort_unstable();
    l2.sort_unstable();
    if l1 == l2 {
        BridgeRelation::Equivalent
    } else {
        BridgeRelation::NoncrossingDistinct
    }
}

/// Exact longest cycle through all of `through` (at most two vertices),
/// ties broken toward the canonically smallest vertex sequence.
///
/// Backtracking over simple paths with a reachability bound; the callers
/// screen to sparse inputs first, where this is fast at the target sizes.
pub fn cycle_search(g: &Graph, through: &[usize]) -> Result<Cycle> {
    if through.len() > 2 {
        return Err(Error::domain("cycle_search takes at most two vertices"));
    }
    for &v in through {
        if v >= g.n() {
            return Err(Error::domain(format!("through vertex {v} out of range")));
        }
    }
    let mut best: Option<Cycle> = None;
    search_cycles(g, through, &mut |cand: &Cycle| {
        if !cand.is_empty() {
            let better = match &best {
                None => true,
                Some(b) => {
                    cand.len() > b.len() || (cand.len() == b.len() && cand.vertices < b.vertices)
                }
            };
            if better {
                best = Some(cand.clone());
            }
        }
        best.as_ref().map(|b| b.len()).unwrap_or(0)
    })?;
    best.ok_or_else(|| Error::domain("no cycle through the requested vertices"))
}

/// Every cycle containing all of `through`, canonical form, deduplicated by
/// construction (each cycle is emitted from its minimum vertex once per
/// direction and canonicalized).
pub fn enumerate_cycles(g: &Graph, through: &[usize]) -> Result<Vec<Cycle>> {
    let mut out: Vec<Cycle> = Vec::new();
    search_cycles(g, through, &mut |cand: &Cycle| {
        if !cand.is_empty() && !out.contains(cand) {
            out.push(cand.clone());
        }
        0 // no length pruning
    })?;
    out.sort_by(|a, b| a.vertices.len().cmp(&b.vertices.len()).then(a.vertices.cmp(&b.vertices)));
    Ok(out)
}

/// Core backtracking. `sink` receives each canonical cycle and returns the
/// current best length (0 disables length-based pruning).
fn search_cycles(
    g: &Graph,
    through: &[usize],
    sink: &mut dyn FnMut(&Cycle) -> usize,
) -> Result<()> {
    let n = g.n();
    if n == 0 {
        return Ok(());
    }
    let adj = g.neighbors();
    let adjsets = g.adjacency_sets();
    let through_set = VertexSet::from_iter_n(n, through.iter().copied());

    // 2-cycles across parallel pairs.
    if g.allow_parallel() {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in g.edges() {
            if g.edge_multiplicity(u, v) >= 2 && !seen.contains(&(u, v)) {
                seen.push((u, v));
                if through.iter().all(|&t| t == u || t == v) {
                    sink(&Cycle {
                        vertices: vec![u, v],
                    });
                }
            }
        }
    }

    let starts: Vec<usize> = (0..n).collect();
    for s in starts {
        if through.iter().any(|&t| t < s) {
            continue; // min vertex of any qualifying cycle is <= min(through)
        }
        // paths with minimum vertex s
        let mut path = vec![s];
        let mut on_path = VertexSet::new(n);
        on_path.insert(s);
        extend(
            g, &adj, &adjsets, s, &mut path, &mut on_path, &through_set, sink,
        );
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    adj: &[Vec<usize>],
    adjsets: &[VertexSet],
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut VertexSet,
    through: &VertexSet,
    sink: &mut dyn FnMut(&Cycle) -> usize,
) {
    let cur = *path.last().unwrap();
    if path.len() >= 3 && g.has_edge(cur, s) && through.is_subset(on_path) {
        let cand = Cycle {
            vertices: path.clone(),
        }
        .canonical();
        sink(&cand);
    }
    // Reachability bound: anything not reachable from cur through unused
    // vertices cannot join the cycle, and s must stay reachable.
    let n = g.n();
    let mut reach = VertexSet::new(n);
    reach.insert(cur);
    let mut stack = vec![cur];
    while let Some(v) = stack.pop() {
        for w in adjsets[v].iter() {
            if !reach.contains(w) && (!on_path.contains(w) || w == s) {
                reach.insert(w);
                stack.push(w);
            }
        }
    }
    if path.len() >= 2 && !reach.contains(s) {
        return;
    }
    if !through.difference(on_path).is_subset(&reach) {
        return;
    }
    let best_len = sink(&Cycle { vertices: vec![] }); // query current best
    let potential = path.len() + reach.difference(on_path).count();
    if best_len > 0 && potential < best_len {
        return;
    }
    for &w in &adj[cur] {
        if w <= s || on_path.contains(w) {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        extend(g, adj, adjsets, s, path, on_path, through, sink);
        path.pop();
        on_path.remove(w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, complete_graph, cycle_graph, path_graph, Graph};

    fn block_vertex_sets(g: &Graph) -> Vec<Vec<usize>> {
        let bd = block_decomposition(g);
        let mut out: Vec<Vec<usize>> = bd
            .blocks
            .iter()
            .enumerate()
            .map(|(i, _)| bd.block_vertices(g, i).to_vec())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn two_triangles_share_vertex() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let bd = block_decomposition(&g);
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.cut_vertices.to_vec(), vec![2]);
        assert_eq!(block_vertex_sets(&g), vec![vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn path_blocks_are_edges() {
        let g = path_graph(4);
        let bd = block_decomposition(&g);
        assert_eq!(bd.blocks.len(), 3);
        assert!(bd.blocks.iter().all(|b| b.len() == 1));
        assert_eq!(bd.cut_vertices.to_vec(), vec![1, 2]);
    }

    #[test]
    fn cycle_is_one_block() {
        let bd = block_decomposition(&cycle_graph(6));
        assert_eq!(bd.blocks.len(), 1);
        assert!(bd.cut_vertices.is_empty());
    }

    #[test]
    fn blocks_partition_edges() {
        let g = Graph::new(
            8,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 3),
                (5, 6),
                (6, 7),
            ],
        )
        .unwrap();
        let bd = block_decomposition(&g);
        let mut all: Vec<usize> = bd.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.m()).collect::<Vec<_>>());
    }

    #[test]
    fn parallel_edges_one_block() {
        let g = Graph::new_multi(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        let bd = block_decomposition(&g);
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.cut_vertices.to_vec(), vec![1]);
    }

    #[test]
    fn star_bridge_of_k4() {
        let g = complete_graph(4);
        let c = Cycle {
            vertices: vec![0, 1, 2],
        };
        let bridges = bridges_of_cycle(&g, &c).unwrap();
        assert_eq!(bridges.len(), 1);
        assert_eq!(bridges[0].legs, vec![0, 1, 2]);
        assert_eq!(bridges[0].kind, BridgeKind::Nontrivial);
    }

    #[test]
    fn chord_bridge_of_c4() {
        let mut es: Vec<_> = cycle_graph(4).edges().to_vec();
        es.push((0, 2));
        let g = Graph::new(4, es).unwrap();
        let c = Cycle {
            vertices: vec![0, 1, 2, 3],
        };
        let bridges = bridges_of_cycle(&g, &c).unwrap();
        assert_eq!(bridges.len(), 1);
        assert_eq!(bridges[0].kind, BridgeKind::TrivialOneEdge);
        assert_eq!(bridges[0].legs, vec![0, 2]);
    }

    #[test]
    fn two_edge_bridge_of_k23() {
        // u=0, v=1 vs x1=2, x2=3, x3=4; cycle through u,x1,v,x2.
        let g = complete_bipartite(2, 3);
        let c = Cycle {
            vertices: vec![0, 2, 1, 3],
        };
        let bridges = bridges_of_cycle(&g, &c).unwrap();
        assert_eq!(bridges.len(), 1);
        assert_eq!(bridges[0].kind, BridgeKind::TrivialTwoEdge);
        assert_eq!(bridges[0].middle, Some(4));
        let mut legs = bridges[0].legs.clone();
        legs.sort_unstable();
        assert_eq!(legs, vec![0, 1]);
    }

    #[test]
    fn bridge_relations() {
        let mut es: Vec<_> = cycle_graph(4).edges().to_vec();
        es.extend([(0, 2), (1, 3)]);
        let g = Graph::new(4, es).unwrap();
        let c = Cycle {
            vertices: vec![0, 1, 2, 3],
        };
        let b = bridges_of_cycle(&g, &c).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(bridge_relation(&b[0], &b[1], &c), BridgeRelation::Crossing);
        assert_eq!(bridge_relation(&b[0], &b[0], &c), BridgeRelation::Equivalent);

        let mut es: Vec<_> = cycle_graph(6).edges().to_vec();
        es.extend([(0, 2), (2, 4)]);
        let g = Graph::new(6, es).unwrap();
        let c = Cycle {
            vertices: vec![0, 1, 2, 3, 4, 5],
        };
        let b = bridges_of_cycle(&g, &c).unwrap();
        assert_eq!(
            bridge_relation(&b[0], &b[1], &c),
            BridgeRelation::NoncrossingDistinct
        );
    }

    #[test]
    fn crossing_is_symmetric_small() {
        let mut es: Vec<_> = cycle_graph(6).edges().to_vec();
        es.extend([(0, 3), (1, 4), (2, 5), (0, 2)]);
        let g = Graph::new(6, es).unwrap();
        let c = Cycle {
            vertices: vec![0, 1, 2, 3, 4, 5],
        };
        let b = bridges_of_cycle(&g, &c).unwrap();
        for x in &b {
            for y in &b {
                let r1 = bridge_relation(x, y, &c);
                let r2 = bridge_relation(y, x, &c);
                assert_eq!(r1 == BridgeRelation::Crossing, r2 == BridgeRelation::Crossing);
            }
        }
    }

    #[test]
    fn longest_cycle_hamiltonion_with_chord() {
        let mut es: Vec<_> = cycle_graph(6).edges().to_vec();
        es.push((0, 3));
        let g = Graph::new(6, es).unwrap();
        let c = cycle_search(&g, &[]).unwrap();
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn longest_cycle_through_vertex_in_k23() {
        let g = complete_bipartite(2, 3);
        let c = cycle_search(&g, &[2]).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.vertices.contains(&2));
        // exhaustive cross-check
        let all = enumerate_cycles(&g, &[2]).unwrap();
        assert_eq!(all.iter().map(|c| c.len()).max().unwrap(), 4);
    }

    #[test]
    fn longest_cycle_through_pair_in_k4() {
        let g = complete_graph(4);
        let c = cycle_search(&g, &[0, 1]).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.vertices.contains(&0) && c.vertices.contains(&1));
    }

    #[test]
    fn cycle_search_requires_a_cycle() {
        assert!(cycle_search(&path_graph(4), &[]).is_err());
    }

    #[test]
    fn two_cycle_in_multigraph() {
        let g = Graph::new_multi(2, [(0, 1), (0, 1)]).unwrap();
        let c = cycle_search(&g, &[]).unwrap();
        assert_eq!(c.vertices, vec![0, 1]);
        c.check(&g).unwrap();
    }

    #[test]
    fn longest_matches_enumeration_small() {
        // longest-cycle exactness against exhaustive enumeration
        let graphs = [
            complete_graph(5),
            complete_bipartite(2, 3),
            cycle_graph(7),
            {
                let mut es: Vec<_> = cycle_graph(6).edges().to_vec();
                es.extend([(0, 2), (0, 4)]);
                Graph::new(6, es).unwrap()
            },
        ];
        for g in &graphs {
            let best = cycle_search(g, &[]).unwrap();
            let all = enumerate_cycles(g, &[]).unwrap();
            let max = all.iter().map(|c| c.len()).max().unwrap();
            assert_eq!(best.len(), max);
            // canonical tie-break: best is the smallest canonical sequence
            let smallest = all
                .iter()
                .filter(|c| c.len() == max)
                .min_by(|a, b| a.vertices.cmp(&b.vertices))
                .unwrap();
            assert_eq!(&best, smallest);
        }
    }
}
