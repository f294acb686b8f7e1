//! The track model: recognition of 2-connected path-width-2 graphs, rooted
//! corner placements, representation enumeration and the width-2 sweep.

use crate::blocks::{self, Bridge, BridgeKind, BridgeRelation, Cycle};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::PathDecomposition;
use crate::vset::VertexSet;

/// Largest graph the public representation enumerator accepts.
pub const MAX_ENUMERATE_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChordKind {
    Short,
    Long { middle: usize },
}

/// A chord joining `P[i]` to `Q[j]` (0-based indices into the two paths).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chord {
    pub i: usize,
    pub j: usize,
    pub kind: ChordKind,
}

/// Two vertex-disjoint paths joined by noncrossing chords, with an
/// end-chord at each extreme. Reconstructs the host graph exactly.
///
/// Corners: `a = P[0]`, `a' = Q[0]`, `b = P[k-1]`, `b' = Q[l-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackRepresentation {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    /// Sorted by `(i, j)`, which is the noncrossing order.
    pub chords: Vec<Chord>,
}

impl TrackRepresentation {
    pub fn corner_a(&self) -> usize {
        self.p[0]
    }
    pub fn corner_a_prime(&self) -> usize {
        self.q[0]
    }
    pub fn corner_b(&self) -> usize {
        *self.p.last().unwrap()
    }
    pub fn corner_b_prime(&self) -> usize {
        *self.q.last().unwrap()
    }
    pub fn corners(&self) -> [usize; 4] {
        [
            self.corner_a(),
            self.corner_a_prime(),
            self.corner_b(),
            self.corner_b_prime(),
        ]
    }

    /// `a == b`, i.e. `P` is a single vertex.
    pub fn is_degenerate_side(&self) -> bool {
        self.p.len() == 1
    }

    pub fn long_middles(&self) -> Vec<usize> {
        self.chords
            .iter()
            .filter_map(|c| match c.kind {
                ChordKind::Long { middle } => Some(middle),
                ChordKind::Short => None,
            })
            .collect()
    }

    /// All vertices: paths plus long-chord middles.
    pub fn vertices(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for &v in self.p.iter().chain(&self.q) {
            s.insert(v);
        }
        for m in self.long_middles() {
            s.insert(m);
        }
        s
    }

    /// The edge multiset the representation spells out.
    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let norm = |u: usize, v: usize| (u.min(v), u.max(v));
        let mut es = Vec::new();
        for w in self.p.windows(2) {
            es.push(norm(w[0], w[1]));
        }
        for w in self.q.windows(2) {
            es.push(norm(w[0], w[1]));
        }
        for c in &self.chords {
            match c.kind {
                ChordKind::Short => es.push(norm(self.p[c.i], self.q[c.j])),
                ChordKind::Long { middle } => {
                    es.push(norm(self.p[c.i], middle));
                    es.push(norm(middle, self.q[c.j]));
                }
            }
        }
        es.sort_unstable();
        es
    }

    /// Check every invariant against the host graph: disjoint paths, sorted
    /// noncrossing chords, end-chords at both extremes, degree-2 middles,
    /// and exact reconstruction of the host's vertices and edges.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.p.is_empty() || self.q.is_empty() {
            return Err(Error::domain("track paths must be non-empty"));
        }
        let verts = self.vertices(g.n());
        let count = self.p.len() + self.q.len() + self.long_middles().len();
        if verts.count() != count {
            return Err(Error::domain("track vertices not distinct"));
        }
        if verts.count() != g.n() {
            return Err(Error::domain("track does not cover all vertices"));
        }
        let k = self.p.len();
        let l = self.q.len();
        let mut sorted = self.chords.clone();
        sorted.sort();
        if sorted != self.chords {
            return Err(Error::domain("chords not in sorted noncrossing order"));
        }
        for c in &self.chords {
            if c.i >= k || c.j >= l {
                return Err(Error::domain("chord index out of range"));
            }
        }
        for (x, cx) in self.chords.iter().enumerate() {
            for cy in &self.chords[x + 1..] {
                let di = cx.i as isize - cy.i as isize;
                let dj = cx.j as isize - cy.j as isize;
                if di * dj < 0 {
                    return Err(Error::domain(format!(
                        "chords ({},{}) and ({},{}) cross",
                        cx.i, cx.j, cy.i, cy.j
                    )));
                }
            }
        }
        if !self.chords.iter().any(|c| c.i == 0 && c.j == 0) {
            return Err(Error::domain("missing (1,1) end-chord"));
        }
        if !self.chords.iter().any(|c| c.i == k - 1 && c.j == l - 1) {
            return Err(Error::domain("missing (k,l) end-chord"));
        }
        for c in &self.chords {
            if let ChordKind::Long { middle } = c.kind {
                if g.degree(middle) != 2 {
                    return Err(Error::domain(format!(
                        "long-chord middle {middle} has degree != 2"
                    )));
                }
            }
        }
        let mut host: Vec<(usize, usize)> = g.edges().to_vec();
        host.sort_unstable();
        if self.edge_multiset() != host {
            return Err(Error::domain("track edges do not reconstruct the host"));
        }
        Ok(())
    }

    /// Symmetry images: identity, both paths reversed, paths swapped, both.
    /// Each is a valid representation of the same host.
    fn images(&self) -> [TrackRepresentation; 4] {
        let k = self.p.len();
        let l = self.q.len();
        let rev = |r: &TrackRepresentation| {
            let mut chords: Vec<Chord> = r
                .chords
                .iter()
                .map(|c| Chord {
                    i: k - 1 - c.i,
                    j: l - 1 - c.j,
                    kind: c.kind.clone(),
                })
                .collect();
            chords.sort();
            TrackRepresentation {
                p: r.p.iter().rev().copied().collect(),
                q: r.q.iter().rev().copied().collect(),
                chords,
            }
        };
        let swap = |r: &TrackRepresentation| {
            let mut chords: Vec<Chord> = r
                .chords
                .iter()
                .map(|c| Chord {
                    i: c.j,
                    j: c.i,
                    kind: c.kind.clone(),
                })
                .collect();
            chords.sort();
            TrackRepresentation {
                p: r.q.clone(),
                q: r.p.clone(),
                chords,
            }
        };
        [self.clone(), rev(self), swap(self), swap(&rev(self))]
    }

    /// Deterministic normal form: the symmetry image whose corner `a` has
    /// the minimum label, ties broken toward the lexicographically smaller
    /// `P`, then `Q`.
    pub fn normalize(&self) -> TrackRepresentation {
        self.images()
            .into_iter()
            .min_by(|x, y| {
                (x.corner_a(), &x.p, &x.q)
                    .cmp(&(y.corner_a(), &y.p, &y.q))
            })
            .unwrap()
    }

    /// Text format: `P:`/`Q:` lines then one `C: i j kind [middle]` line per
    /// chord in noncrossing order (indices 1-based).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("P:");
        for v in &self.p {
            out.push_str(&format!(" {v}"));
        }
        out.push_str("\nQ:");
        for v in &self.q {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        for c in &self.chords {
            match c.kind {
                ChordKind::Short => {
                    out.push_str(&format!("C: {} {} short\n", c.i + 1, c.j + 1));
                }
                ChordKind::Long { middle } => {
                    out.push_str(&format!("C: {} {} long {}\n", c.i + 1, c.j + 1, middle));
                }
            }
        }
        out
    }
}

/// Why a graph is not a track, with a subgraph exhibiting the reason.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObstructionReason {
    NotTwoConnected,
    ThreeLegBridge,
    NontrivialBridge,
    CrossingBridges,
    NonlinearChordOrder,
}

impl ObstructionReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionReason::NotTwoConnected => "not-2-connected",
            ObstructionReason::ThreeLegBridge => "three-leg-bridge",
            ObstructionReason::NontrivialBridge => "nontrivial-bridge",
            ObstructionReason::CrossingBridges => "crossing-bridges",
            ObstructionReason::NonlinearChordOrder => "nonlinear-chord-order",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrackObstruction {
    pub reason: ObstructionReason,
    /// Subgraph of the host exhibiting the reason.
    pub witness: Graph,
    /// Map from witness labels back to host labels.
    pub witness_map: Vec<usize>,
}

/// `recognize_track` output.
pub type TrackResult = std::result::Result<TrackRepresentation, TrackObstruction>;

/// Is the graph 2-connected in the track sense: connected, no cut vertex,
/// and at least one edge. A single edge counts; a single vertex does not.
pub fn is_two_connected(g: &Graph) -> bool {
    if g.n() < 2 || !g.is_connected() {
        return false;
    }
    if g.n() == 2 {
        return g.m() >= 1;
    }
    let bd = blocks::block_decomposition(g);
    bd.cut_vertices.is_empty() && bd.blocks.len() == 1
}

fn whole_graph_witness(g: &Graph, reason: ObstructionReason) -> TrackObstruction {
    TrackObstruction {
        reason,
        witness: g.clone(),
        witness_map: (0..g.n()).collect(),
    }
}

fn sub_witness(g: &Graph, reason: ObstructionReason, edge_ids: &[usize]) -> TrackObstruction {
    let mut vs = VertexSet::new(g.n());
    let mut es = Vec::new();
    for &id in edge_ids {
        let (u, v) = g.edges()[id];
        vs.insert(u);
        vs.insert(v);
        es.push((u, v));
    }
    let (witness, witness_map) = g.subgraph(&vs, &es).expect("witness edges valid");
    TrackObstruction {
        reason,
        witness,
        witness_map,
    }
}

/// Number of distinct endpoint pairs; a track never has more than `2n - 3`
/// of them (for `n >= 3`), so anything denser is rejected up front with a
/// K4-model witness before any cycle search.
fn distinct_pair_count(g: &Graph) -> usize {
    let mut es: Vec<(usize, usize)> = g.edges().to_vec();
    es.dedup();
    es.len()
}

/// Cycle edge ids used by a canonical cycle of `g` (for witnesses).
fn cycle_edge_ids(g: &Graph, c: &Cycle) -> Vec<usize> {
    let k = c.len();
    let mut want: std::collections::HashMap<(usize, usize), usize> = Default::default();
    for i in 0..k {
        let (u, v) = (c.vertices[i], c.vertices[(i + 1) % k]);
        *want.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }
    let mut ids = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if let Some(cnt) = want.get_mut(e) {
            if *cnt > 0 {
                *cnt -= 1;
                ids.push(id);
            }
        }
    }
    ids
}

/// One cut point of a cycle: through an edge (short end-chord) or through a
/// degree-two non-leg vertex that becomes the middle of a long end-chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Junction {
    /// Cut between cycle positions `i` and `i+1` using that cycle edge.
    Edge(usize),
    /// Cut at cycle position `i`, consuming the vertex as a middle.
    Vertex(usize),
}

/// Build a representation from a cycle, two junctions and the bridges, or
/// say why the split fails. Junction 1 precedes P, junction 2 ends it:
/// the cycle reads p1..pk, junction2, q_l..q1, junction1, back to p1.
pub(crate) fn split_cycle(
    g: &Graph,
    c: &Cycle,
    j1: Junction,
    j2: Junction,
    bridges: &[Bridge],
) -> Option<TrackRepresentation> {
    let k = c.len();
    let posv = |j: Junction| match j {
        Junction::Edge(i) => i,
        Junction::Vertex(i) => i,
    };
    let (ja, jb) = (posv(j1), posv(j2));
    if ja == jb {
        return None;
    }
    // P runs clockwise from just after junction1 to just before junction2.
    let start_p = match j1 {
        Junction::Edge(i) => (i + 1) % k,
        Junction::Vertex(i) => (i + 1) % k,
    };
    let end_p = match j2 {
        Junction::Edge(i) => i,
        Junction::Vertex(i) => (i + k - 1) % k,
    };
    let start_q = match j2 {
        Junction::Edge(i) => (i + 1) % k,
        Junction::Vertex(i) => (i + 1) % k,
    };
    let end_q = match j1 {
        Junction::Edge(i) => i,
        Junction::Vertex(i) => (i + k - 1) % k,
    };
    let seg = |from: usize, to: usize| -> Option<Vec<usize>> {
        // inclusive clockwise segment, must not wrap past itself
        let len = (to + k - from) % k + 1;
        if len > k {
            return None;
        }
        Some((0..len).map(|d| c.vertices[(from + d) % k]).collect())
    };
    let p = seg(start_p, end_p)?;
    let qrev = seg(start_q, end_q)?;
    // The two sides and the junction middles must partition the cycle;
    // this also rejects overlapping or empty-side junction pairs.
    let mids = usize::from(matches!(j1, Junction::Vertex(_)))
        + usize::from(matches!(j2, Junction::Vertex(_)));
    if p.len() + qrev.len() + mids != k {
        return None;
    }
    let q: Vec<usize> = qrev.iter().rev().copied().collect();

    let mut pidx = vec![usize::MAX; g.n()];
    let mut qidx = vec![usize::MAX; g.n()];
    for (i, &v) in p.iter().enumerate() {
        pidx[v] = i;
    }
    for (j, &v) in q.iter().enumerate() {
        qidx[v] = j;
    }

    let mut chords: Vec<Chord> = Vec::new();
    // End-chords from the junctions.
    let jc = |jx: Junction, i: usize, j: usize| -> Option<Chord> {
        match jx {
            Junction::Edge(_) => Some(Chord {
                i,
                j,
                kind: ChordKind::Short,
            }),
            Junction::Vertex(pos) => {
                let m = c.vertices[pos];
                if g.degree(m) != 2 {
                    return None;
                }
                Some(Chord {
                    i,
                    j,
                    kind: ChordKind::Long { middle: m },
                })
            }
        }
    };
    chords.push(jc(j1, 0, 0)?);
    chords.push(jc(j2, p.len() - 1, q.len() - 1)?);

    // Bridges become chords; every bridge needs one leg on each side.
    for b in bridges {
        match b.kind {
            BridgeKind::TrivialOneEdge => {
                let (u, v) = g.edges()[b.edge_ids[0]];
                let (i, j) = if pidx[u] != usize::MAX && qidx[v] != usize::MAX {
                    (pidx[u], qidx[v])
                } else if pidx[v] != usize::MAX && qidx[u] != usize::MAX {
                    (pidx[v], qidx[u])
                } else {
                    return None;
                };
                chords.push(Chord {
                    i,
                    j,
                    kind: ChordKind::Short,
                });
            }
            BridgeKind::TrivialTwoEdge => {
                let m = b.middle?;
                if g.degree(m) != 2 || b.legs.len() != 2 {
                    return None;
                }
                let (u, v) = (b.legs[0], b.legs[1]);
                let (i, j) = if pidx[u] != usize::MAX && qidx[v] != usize::MAX {
                    (pidx[u], qidx[v])
                } else if pidx[v] != usize::MAX && qidx[u] != usize::MAX {
                    (pidx[v], qidx[u])
                } else {
                    return None;
                };
                chords.push(Chord {
                    i,
                    j,
                    kind: ChordKind::Long { middle: m },
                });
            }
            BridgeKind::Nontrivial => return None,
        }
    }
    chords.sort();
    for (x, cx) in chords.iter().enumerate() {
        for cy in &chords[x + 1..] {
            if (cx.i as isize - cy.i as isize) * (cx.j as isize - cy.j as isize) < 0 {
                return None;
            }
        }
    }
    let rep = TrackRepresentation { p, q, chords };
    rep.validate(g).ok()?;
    Some(rep)
}

/// All junction positions on a cycle: every edge slot, and every vertex
/// slot whose vertex has degree 2 (so it can serve as a long-chord middle).
fn junction_slots(g: &Graph, c: &Cycle) -> Vec<Junction> {
    let mut out = Vec::new();
    for i in 0..c.len() {
        out.push(Junction::Edge(i));
        if g.degree(c.vertices[i]) == 2 {
            out.push(Junction::Vertex(i));
        }
    }
    out
}

/// Decide trackness via the longest-cycle analysis: bridges must be
/// trivial with at most two legs, pairwise noncrossing, and the leg
/// sequence must have at most two places where consecutive legs share a
/// chord (the chord order is then linear and the cycle splits into the
/// two track sides there).
pub fn recognize_track(g: &Graph) -> TrackResult {
    match recognize_track_impl(g) {
        Ok(rep) => Ok(rep),
        Err(obs) => Err(obs),
    }
}

fn recognize_track_impl(g: &Graph) -> TrackResult {
    if !is_two_connected(g) {
        return Err(whole_graph_witness(g, ObstructionReason::NotTwoConnected));
    }
    if g.n() == 2 {
        // Every edge is a (1,1)-chord; both end-chords coincide.
        let chords = (0..g.m())
            .map(|_| Chord {
                i: 0,
                j: 0,
                kind: ChordKind::Short,
            })
            .collect();
        let rep = TrackRepresentation {
            p: vec![0],
            q: vec![1],
            chords,
        };
        debug_assert!(rep.validate(g).is_ok());
        return Ok(rep.normalize());
    }
    if distinct_pair_count(g) > 2 * g.n() - 3 {
        return Err(dense_reject(g));
    }

    let c = blocks::cycle_search(g, &[]).expect("2-connected graphs have cycles");
    let bridges = blocks::bridges_of_cycle(g, &c).expect("cycle verified");

    if let Some(b) = bridges.iter().find(|b| b.legs.len() >= 3) {
        let mut ids = cycle_edge_ids(g, &c);
        ids.extend(&b.edge_ids);
        return Err(sub_witness(g, ObstructionReason::ThreeLegBridge, &ids));
    }
    if let Some(b) = bridges
        .iter()
        .find(|b| b.kind == BridgeKind::Nontrivial || (b.kind == BridgeKind::TrivialTwoEdge && b.middle.is_none()))
    {
        let mut ids = cycle_edge_ids(g, &c);
        ids.extend(&b.edge_ids);
        return Err(sub_witness(g, ObstructionReason::NontrivialBridge, &ids));
    }
    for (x, bx) in bridges.iter().enumerate() {
        for by in &bridges[x + 1..] {
            if bridge_relation_cross(bx, by, &c) {
                let mut ids = cycle_edge_ids(g, &c);
                ids.extend(&bx.edge_ids);
                ids.extend(&by.edge_ids);
                return Err(sub_witness(g, ObstructionReason::CrossingBridges, &ids));
            }
        }
    }

    // Turning arcs: consecutive legs (cyclically) joined by a common bridge.
    let legset: Vec<usize> = {
        let mut pos: Vec<usize> = bridges
            .iter()
            .flat_map(|b| b.legs.iter().copied())
            .map(|v| c.position(v).unwrap())
            .collect();
        pos.sort_unstable();
        pos.dedup();
        pos
    };
    let t = legset.len();
    let mut turning: Vec<(usize, usize)> = Vec::new(); // (leg pos, next leg pos)
    if t >= 2 {
        for a in 0..t {
            let pa = legset[a];
            let pb = legset[(a + 1) % t];
            let va = c.vertices[pa];
            let vb = c.vertices[pb];
            let joined = bridges
                .iter()
                .any(|b| b.legs.contains(&va) && b.legs.contains(&vb));
            if joined {
                turning.push((pa, pb));
            }
        }
        if turning.len() > 2 {
            // Three leaf faces in the chord structure: witness three
            // bridges, one per turning arc.
            let mut ids = cycle_edge_ids(g, &c);
            for &(pa, pb) in turning.iter().take(3) {
                let va = c.vertices[pa];
                let vb = c.vertices[pb];
                let b = bridges
                    .iter()
                    .find(|b| b.legs.contains(&va) && b.legs.contains(&vb))
                    .unwrap();
                ids.extend(&b.edge_ids);
            }
            return Err(sub_witness(g, ObstructionReason::NonlinearChordOrder, &ids));
        }
        if turning.len() < 2 {
            // Cannot happen for noncrossing trivial bridges; be safe.
            return Err(whole_graph_witness(g, ObstructionReason::NonlinearChordOrder));
        }
    }

    // Choose junctions inside the two turning arcs (or anywhere for a plain
    // cycle) and split. Deterministic: first valid pair in slot order.
    let k = c.len();
    let arc_slots = |from: usize, to: usize| -> Vec<Junction> {
        // slots strictly inside the arc from `from` to `to` (cyclic):
        // edges (from,from+1)..(to-1,to) and interior deg-2 vertices
        let mut out = Vec::new();
        let len = (to + k - from) % k;
        for d in 0..len {
            let i = (from + d) % k;
            out.push(Junction::Edge(i));
            let vpos = (from + d + 1) % k;
            if vpos != to && g.degree(c.vertices[vpos]) == 2 {
                out.push(Junction::Vertex(vpos));
            }
        }
        out
    };
    let (slots1, slots2) = if t >= 2 {
        (
            arc_slots(turning[0].0, turning[0].1),
            arc_slots(turning[1].0, turning[1].1),
        )
    } else {
        // No chords: any two distinct slots; aim for an antipodal split.
        let all = junction_slots(g, &c);
        (all.clone(), all)
    };
    let mut candidates: Vec<(Junction, Junction)> = Vec::new();
    if t >= 2 {
        for &s1 in &slots1 {
            for &s2 in &slots2 {
                candidates.push((s1, s2));
            }
        }
        // middle-first ordering inside each arc keeps output stable
        candidates.sort_by_key(|&(s1, s2)| junction_order_key(s1, s2));
    } else {
        // plain cycle: prefer the wrap edge and the antipodal edge
        let wrap = Junction::Edge(k - 1);
        let anti = Junction::Edge(k / 2 - 1);
        candidates.push((anti, wrap));
        for &s1 in &slots1 {
            for &s2 in &slots2 {
                if s1 != s2 {
                    candidates.push((s1, s2));
                }
            }
        }
    }
    for (s1, s2) in candidates {
        if let Some(rep) = split_cycle(g, &c, s2, s1, &bridges)
            .or_else(|| split_cycle(g, &c, s1, s2, &bridges))
        {
            return Ok(rep.normalize());
        }
    }
    // Split failed despite linear chord order; cannot happen, but reject
    // honestly if it does.
    Err(whole_graph_witness(g, ObstructionReason::NonlinearChordOrder))
}

fn junction_order_key(s1: Junction, s2: Junction) -> (usize, usize, usize, usize) {
    let f = |s: Junction| match s {
        Junction::Edge(i) => (i, 0),
        Junction::Vertex(i) => (i, 1),
    };
    let (a, b) = (f(s1), f(s2));
    (a.0, a.1, b.0, b.1)
}

fn bridge_relation_cross(b1: &Bridge, b2: &Bridge, c: &Cycle) -> bool {
    blocks::bridge_relation(b1, b2, c) == BridgeRelation::Crossing
}

/// Dense 2-connected graphs are rejected with a K4-model witness: more
/// than `2n - 3` distinct adjacent pairs forces a K4 minor, whose own
/// longest cycle carries a three-leg bridge.
fn dense_reject(g: &Graph) -> TrackObstruction {
    let simple = Graph::new(g.n(), g.edges().iter().copied()).expect("host edges valid");
    let k4 = crate::graph::complete_graph(4);
    if let Some(emb) = crate::oracle::has_minor(&simple, &k4, &[]) {
        let mut vs = VertexSet::new(g.n());
        for b in &emb.branch_sets {
            for v in b.iter() {
                vs.insert(v);
            }
        }
        let mut es = Vec::new();
        let mut used_pairs: Vec<(usize, usize)> = Vec::new();
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            let _ = id;
            if vs.contains(u) && vs.contains(v) && !used_pairs.contains(&(u, v)) {
                used_pairs.push((u, v));
                es.push((u, v));
            }
        }
        let (witness, witness_map) = g.subgraph(&vs, &es).expect("witness edges valid");
        TrackObstruction {
            reason: ObstructionReason::ThreeLegBridge,
            witness,
            witness_map,
        }
    } else {
        whole_graph_witness(g, ObstructionReason::ThreeLegBridge)
    }
}

/// Width-2 sweep over a representation: walk the chords in noncrossing
/// order keeping the frontier pair `{p_i, q_j}` in every bag; advancing a
/// path adds the successor as a third element, a long chord contributes
/// the bag `{p_i, middle, q_j}`.
pub fn track_decomposition(rep: &TrackRepresentation, g: &Graph) -> Result<PathDecomposition> {
    rep.validate(g)?;
    Ok(sweep_bags(rep, g.n()))
}

/// The raw sweep (assumes a validated representation).
pub(crate) fn sweep_bags(rep: &TrackRepresentation, n: usize) -> PathDecomposition {
    let mut bags: Vec<VertexSet> = Vec::new();
    let mut ci = 0usize; // current p index
    let mut cj = 0usize; // current q index
    let first_long = matches!(rep.chords[0].kind, ChordKind::Long { .. });
    if !first_long {
        bags.push(VertexSet::from_iter_n(n, [rep.p[0], rep.q[0]]));
    }
    for ch in &rep.chords {
        while ci < ch.i {
            let bag = VertexSet::from_iter_n(n, [rep.p[ci], rep.p[ci + 1], rep.q[cj]]);
            bags.push(bag);
            ci += 1;
        }
        while cj < ch.j {
            let bag = VertexSet::from_iter_n(n, [rep.p[ci], rep.q[cj], rep.q[cj + 1]]);
            bags.push(bag);
            cj += 1;
        }
        if let ChordKind::Long { middle } = ch.kind {
            bags.push(VertexSet::from_iter_n(n, [rep.p[ci], middle, rep.q[cj]]));
        }
    }
    PathDecomposition { n, bags }
}

/// Every valid representation of `g`, normalized and deduplicated:
/// enumerate the cycles, then all junction pairs per cycle. Empty iff `g`
/// is not a track.
pub fn enumerate_representations(g: &Graph) -> Result<Vec<TrackRepresentation>> {
    if g.n() > MAX_ENUMERATE_N {
        return Err(Error::Capacity {
            what: "enumerate_representations vertices",
            got: g.n(),
            bound: MAX_ENUMERATE_N,
        });
    }
    Ok(enumerate_representations_unbounded(g))
}

pub(crate) fn enumerate_representations_unbounded(g: &Graph) -> Vec<TrackRepresentation> {
    let mut out: Vec<TrackRepresentation> = Vec::new();
    if !is_two_connected(g) {
        return out;
    }
    if g.n() == 2 {
        let chords = (0..g.m())
            .map(|_| Chord {
                i: 0,
                j: 0,
                kind: ChordKind::Short,
            })
            .collect();
        let rep = TrackRepresentation {
            p: vec![0],
            q: vec![1],
            chords,
        };
        if rep.validate(g).is_ok() {
            out.push(rep.normalize());
        }
        return out;
    }
    if g.n() >= 3 && distinct_pair_count(g) > 2 * g.n() - 3 {
        return out;
    }
    let cycles = match blocks::enumerate_cycles(g, &[]) {
        Ok(cs) => cs,
        Err(_) => return out,
    };
    for c in &cycles {
        let Ok(bridges) = blocks::bridges_of_cycle(g, c) else {
            continue;
        };
        if bridges.iter().any(|b| {
            b.legs.len() >= 3
                || b.kind == BridgeKind::Nontrivial
                || (b.kind == BridgeKind::TrivialTwoEdge && b.middle.is_none())
        }) {
            continue;
        }
        let slots = junction_slots(g, c);
        for (x, &s1) in slots.iter().enumerate() {
            for &s2 in &slots[x + 1..] {
                for (ja, jb) in [(s1, s2), (s2, s1)] {
                    if let Some(rep) = split_cycle(g, c, ja, jb, &bridges) {
                        let norm = rep.normalize();
                        if !out.contains(&norm) {
                            out.push(norm);
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (a.corner_a(), &a.p, &a.q, &a.chords).cmp(&(b.corner_a(), &b.p, &b.q, &b.chords)));
    out
}

/// Can `r` be corner `a` in some representation? Constructive first (cycle
/// through `r`, junction at `r`), exhaustive over cycles through `r` on
/// fallback.
pub fn corner_placement(g: &Graph, r: usize) -> Result<Option<TrackRepresentation>> {
    if r >= g.n() {
        return Err(Error::domain(format!("vertex {r} out of range")));
    }
    if !is_two_connected(g) {
        return Err(Error::domain("corner placement needs a track"));
    }
    if g.n() == 2 {
        let rep = match recognize_track(g) {
            Ok(rep) => rep,
            Err(_) => return Err(Error::domain("corner placement needs a track")),
        };
        return Ok(Some(orient_corner(rep, r).expect("both vertices are corners")));
    }
    if distinct_pair_count(g) > 2 * g.n() - 3 {
        return Err(Error::domain("corner placement needs a track"));
    }
    // Constructive path: longest cycle through r.
    if let Ok(c) = blocks::cycle_search(g, &[r]) {
        if let Some(rep) = corner_on_cycle(g, &c, r) {
            return Ok(Some(rep));
        }
    }
    // Exhaustive: any representation's own cycle passes through all
    // corners, so cycles through r cover every candidate.
    for c in blocks::enumerate_cycles(g, &[r])? {
        if let Some(rep) = corner_on_cycle(g, &c, r) {
            return Ok(Some(rep));
        }
    }
    Ok(None)
}

/// Try to realize `r` as corner `a` using the given cycle: the (1,1)
/// junction must sit on a cycle edge at `r`, the other junction inside the
/// remaining turning arc.
fn corner_on_cycle(g: &Graph, c: &Cycle, r: usize) -> Option<TrackRepresentation> {
    let bridges = blocks::bridges_of_cycle(g, c).ok()?;
    if bridges.iter().any(|b| {
        b.legs.len() >= 3
            || b.kind == BridgeKind::Nontrivial
            || (b.kind == BridgeKind::TrivialTwoEdge && b.middle.is_none())
    }) {
        return None;
    }
    let rp = c.position(r)?;
    let k = c.len();
    let slots = junction_slots(g, c);
    // Junctions adjacent to r: the two cycle edges at r, plus long
    // junctions consuming a degree-2 neighbor of r on the cycle.
    let near: Vec<Junction> = slots
        .iter()
        .copied()
        .filter(|&s| match s {
            Junction::Edge(i) => i == rp || (i + 1) % k == rp,
            Junction::Vertex(i) => (i + 1) % k == rp || (i + k - 1) % k == rp,
        })
        .collect();
    for &s1 in &near {
        for &s2 in &slots {
            if s1 == s2 {
                continue;
            }
            for (ja, jb) in [(s1, s2), (s2, s1)] {
                if let Some(rep) = split_cycle(g, c, ja, jb, &bridges) {
                    if let Some(oriented) = orient_corner(rep, r) {
                        return Some(oriented);
                    }
                }
            }
        }
    }
    None
}

/// Reorient a representation so that `a == r`, if `r` is one of its corners.
pub fn orient_corner(rep: TrackRepresentation, r: usize) -> Option<TrackRepresentation> {
    rep.images().into_iter().find(|img| img.corner_a() == r)
}

/// Reorient so that `a == r` and `b' == r2`, if possible.
pub fn orient_opposite(
    rep: TrackRepresentation,
    r: usize,
    r2: usize,
) -> Option<TrackRepresentation> {
    rep.images()
        .into_iter()
        .find(|img| img.corner_a() == r && img.corner_b_prime() == r2)
}

/// Place `r` and `r2` as the opposite corners `a` and `b'`.
pub fn opposite_corners_placement(
    g: &Graph,
    r: usize,
    r2: usize,
) -> Result<Option<TrackRepresentation>> {
    if r >= g.n() || r2 >= g.n() || r == r2 {
        return Err(Error::domain("opposite corners need two distinct vertices"));
    }
    if !is_two_connected(g) {
        return Err(Error::domain("opposite placement needs a track"));
    }
    if g.n() == 2 {
        let rep = match recognize_track(g) {
            Ok(rep) => rep,
            Err(_) => return Err(Error::domain("opposite placement needs a track")),
        };
        return Ok(orient_opposite(rep, r, r2));
    }
    if distinct_pair_count(g) > 2 * g.n() - 3 {
        return Err(Error::domain("opposite placement needs a track"));
    }
    if let Ok(c) = blocks::cycle_search(g, &[r, r2]) {
        if let Some(rep) = opposite_on_cycle(g, &c, r, r2) {
            return Ok(Some(rep));
        }
    }
    for c in blocks::enumerate_cycles(g, &[r, r2])? {
        if let Some(rep) = opposite_on_cycle(g, &c, r, r2) {
            return Ok(Some(rep));
        }
    }
    Ok(None)
}

fn opposite_on_cycle(g: &Graph, c: &Cycle, r: usize, r2: usize) -> Option<TrackRepresentation> {
    let bridges = blocks::bridges_of_cycle(g, c).ok()?;
    if bridges.iter().any(|b| {
        b.legs.len() >= 3
            || b.kind == BridgeKind::Nontrivial
            || (b.kind == BridgeKind::TrivialTwoEdge && b.middle.is_none())
    }) {
        return None;
    }
    let k = c.len();
    let rp = c.position(r)?;
    let rp2 = c.position(r2)?;
    let slots = junction_slots(g, c);
    let near = |target: usize| -> Vec<Junction> {
        slots
            .iter()
            .copied()
            .filter(|&s| match s {
                Junction::Edge(i) => i == target || (i + 1) % k == target,
                Junction::Vertex(i) => (i + 1) % k == target || (i + k - 1) % k == target,
            })
            .collect()
    };
    for &s1 in &near(rp) {
        for &s2 in &near(rp2) {
            if s1 == s2 {
                continue;
            }
            for (ja, jb) in [(s1, s2), (s2, s1)] {
                if let Some(rep) = split_cycle(g, c, ja, jb, &bridges) {
                    if let Some(oriented) = orient_opposite(rep.clone(), r, r2)
                        .or_else(|| orient_opposite(rep, r2, r))
                    {
                        return Some(oriented);
                    }
                }
            }
        }
    }
    None
}

/// Place `r` as the degenerate side: a representation with `P = (r)`.
pub fn degenerate_side_placement(g: &Graph, r: usize) -> Result<Option<TrackRepresentation>> {
    if r >= g.n() {
        return Err(Error::domain(format!("vertex {r} out of range")));
    }
    if !is_two_connected(g) {
        return Err(Error::domain("degenerate placement needs a track"));
    }
    if g.n() == 2 {
        let rep = match recognize_track(g) {
            Ok(rep) => rep,
            Err(_) => return Err(Error::domain("degenerate placement needs a track")),
        };
        return Ok(orient_corner(rep, r).filter(|rep| rep.is_degenerate_side()));
    }
    if distinct_pair_count(g) > 2 * g.n() - 3 {
        return Err(Error::domain("degenerate placement needs a track"));
    }
    if let Ok(c) = blocks::cycle_search(g, &[r]) {
        if let Some(rep) = degenerate_on_cycle(g, &c, r) {
            return Ok(Some(rep));
        }
    }
    for c in blocks::enumerate_cycles(g, &[r])? {
        if let Some(rep) = degenerate_on_cycle(g, &c, r) {
            return Ok(Some(rep));
        }
    }
    Ok(None)
}

/// P = (r) forces both junctions onto the cycle edges at r, and every
/// bridge must be a trivial chord with r as a leg.
fn degenerate_on_cycle(g: &Graph, c: &Cycle, r: usize) -> Option<TrackRepresentation> {
    let bridges = blocks::bridges_of_cycle(g, c).ok()?;
    if bridges.iter().any(|b| !b.legs.contains(&r)) {
        return None;
    }
    if bridges.iter().any(|b| {
        b.legs.len() >= 3
            || b.kind == BridgeKind::Nontrivial
            || (b.kind == BridgeKind::TrivialTwoEdge && b.middle.is_none())
    }) {
        return None;
    }
    let k = c.len();
    let rp = c.position(r)?;
    // junction on the edge entering r and the edge leaving r
    let j_in = Junction::Edge((rp + k - 1) % k);
    let j_out = Junction::Edge(rp);
    let rep = split_cycle(g, c, j_in, j_out, &bridges)
        .or_else(|| split_cycle(g, c, j_out, j_in, &bridges))?;
    if rep.p == vec![r] {
        Some(rep)
    } else if rep.q == vec![r] {
        rep.images().into_iter().find(|img| img.p == vec![r])
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, complete_graph, cycle_graph, path_graph, Graph};
    use crate::oracle::{exact_pathwidth, verify_decomposition};

    fn c_plus(base: usize, extra: &[(usize, usize)]) -> Graph {
        let mut es: Vec<_> = cycle_graph(base).edges().to_vec();
        es.extend_from_slice(extra);
        Graph::new(base, es).unwrap()
    }

    #[test]
    fn cycle_is_a_track() {
        let g = cycle_graph(6);
        let rep = recognize_track(&g).unwrap();
        rep.validate(&g).unwrap();
        // two arcs with short end-chords
        assert!(rep.chords.iter().all(|c| matches!(c.kind, ChordKind::Short)));
        assert_eq!(rep.chords.len(), 2);
    }

    #[test]
    fn k23_is_a_track_with_long_chords() {
        let g = complete_bipartite(2, 3);
        let rep = recognize_track(&g).unwrap();
        rep.validate(&g).unwrap();
        // the single-vertex-sides representation with three long chords
        // exists among the valid representations
        let reps = enumerate_representations(&g).unwrap();
        assert!(reps.iter().any(|r| {
            r.p.len() == 1
                && r.q.len() == 1
                && r.chords.len() == 3
                && r.chords
                    .iter()
                    .all(|c| matches!(c.kind, ChordKind::Long { .. }))
        }));
    }

    #[test]
    fn k4_rejected() {
        let obs = recognize_track(&complete_graph(4)).unwrap_err();
        assert!(matches!(
            obs.reason,
            ObstructionReason::ThreeLegBridge | ObstructionReason::CrossingBridges
        ));
        assert!(exact_pathwidth(&obs.witness).unwrap().0 >= 3);
    }

    #[test]
    fn c9_with_three_spread_chords_rejected() {
        let g = c_plus(9, &[(0, 2), (3, 5), (6, 8)]);
        let obs = recognize_track(&g).unwrap_err();
        assert_eq!(obs.reason, ObstructionReason::NonlinearChordOrder);
        assert_eq!(exact_pathwidth(&g).unwrap().0, 3);
        // exhaustive confirmation: no representation exists
        assert!(enumerate_representations(&g).unwrap().is_empty());
    }

    #[test]
    fn not_two_connected_reject() {
        let obs = recognize_track(&path_graph(3)).unwrap_err();
        assert_eq!(obs.reason, ObstructionReason::NotTwoConnected);
    }

    #[test]
    fn single_edge_track() {
        let g = path_graph(2);
        let rep = recognize_track(&g).unwrap();
        assert!(rep.is_degenerate_side());
        let d = track_decomposition(&rep, &g).unwrap();
        assert_eq!(d.width(), 1);
        assert_eq!(verify_decomposition(&g, &d, 1), Ok(()));
    }

    #[test]
    fn double_edge_track() {
        let g = Graph::new_multi(2, [(0, 1), (0, 1)]).unwrap();
        let rep = recognize_track(&g).unwrap();
        rep.validate(&g).unwrap();
        let d = track_decomposition(&rep, &g).unwrap();
        assert_eq!(verify_decomposition(&g, &d, 1), Ok(()));
    }

    #[test]
    fn c4_sweep_width_two() {
        let g = cycle_graph(4);
        let rep = recognize_track(&g).unwrap();
        let d = track_decomposition(&rep, &g).unwrap();
        assert!(d.width() <= 2);
        assert_eq!(verify_decomposition(&g, &d, 2), Ok(()));
    }

    #[test]
    fn k23_sweep_bags() {
        let g = complete_bipartite(2, 3);
        let rep = recognize_track(&g).unwrap();
        let d = track_decomposition(&rep, &g).unwrap();
        assert_eq!(verify_decomposition(&g, &d, 2), Ok(()));
        // the exemplar representation sweeps to the three full bags
        let exemplar = enumerate_representations(&g)
            .unwrap()
            .into_iter()
            .find(|r| r.p.len() == 1 && r.q.len() == 1 && r.chords.len() == 3)
            .unwrap();
        let d = track_decomposition(&exemplar, &g).unwrap();
        assert_eq!(d.bags.len(), 3);
        assert!(d.bags.iter().all(|b| b.count() == 3));
        assert_eq!(verify_decomposition(&g, &d, 2), Ok(()));
    }

    #[test]
    fn long_middles_in_exactly_one_bag() {
        let g = complete_bipartite(2, 3);
        let rep = recognize_track(&g).unwrap();
        let d = track_decomposition(&rep, &g).unwrap();
        for m in rep.long_middles() {
            let count = d.bags.iter().filter(|b| b.contains(m)).count();
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn recognized_tracks_sweep_at_width_two() {
        // every accepted representation yields a verified decomposition
        let graphs = [
            cycle_graph(3),
            cycle_graph(7),
            complete_bipartite(2, 3),
            c_plus(6, &[(0, 2)]),
            c_plus(6, &[(0, 2), (0, 4)]),
            c_plus(8, &[(1, 7), (2, 6), (3, 5)]),
        ];
        for g in &graphs {
            let rep = recognize_track(g).unwrap();
            let d = track_decomposition(&rep, g).unwrap();
            assert_eq!(verify_decomposition(g, &d, 2), Ok(()), "{g:?}");
        }
    }

    #[test]
    fn corner_placement_on_cycle_any_vertex() {
        let g = cycle_graph(4);
        for r in 0..4 {
            let rep = corner_placement(&g, r).unwrap().unwrap();
            assert_eq!(rep.corner_a(), r);
            rep.validate(&g).unwrap();
        }
    }

    #[test]
    fn corner_placement_k23_middle_vertex() {
        let g = complete_bipartite(2, 3);
        // x1 = vertex 2 can be a corner
        let rep = corner_placement(&g, 2).unwrap().unwrap();
        assert_eq!(rep.corner_a(), 2);
        rep.validate(&g).unwrap();
    }

    #[test]
    fn corner_placement_infeasible_case() {
        // C8 + chords (1,3),(4,6) (0-based): vertex 0 cannot be a corner:
        // chords avoid it on both sides.
        let g = c_plus(8, &[(1, 3), (4, 6)]);
        assert!(recognize_track(&g).is_ok());
        assert!(corner_placement(&g, 0).unwrap().is_none());
        // exhaustive cross-check
        let reps = enumerate_representations(&g).unwrap();
        assert!(!reps.is_empty());
        assert!(reps.iter().all(|rep| !rep.corners().contains(&0)));
    }

    #[test]
    fn opposite_corners_on_c6() {
        let g = cycle_graph(6);
        // antipodal
        let rep = opposite_corners_placement(&g, 0, 3).unwrap().unwrap();
        assert_eq!(rep.corner_a(), 0);
        assert_eq!(rep.corner_b_prime(), 3);
        rep.validate(&g).unwrap();
        // adjacent
        let rep = opposite_corners_placement(&g, 0, 1).unwrap().unwrap();
        assert_eq!((rep.corner_a(), rep.corner_b_prime()), (0, 1));
        rep.validate(&g).unwrap();
    }

    #[test]
    fn opposite_corners_two_sided_chords() {
        // C6 + chords (0,2) and (3,5), r = 1, r' = 4
        let g = c_plus(6, &[(0, 2), (3, 5)]);
        let rep = opposite_corners_placement(&g, 1, 4).unwrap().unwrap();
        assert_eq!((rep.corner_a(), rep.corner_b_prime()), (1, 4));
        rep.validate(&g).unwrap();
    }

    #[test]
    fn degenerate_side_fan() {
        // fan: C5 + chords (0,2),(0,3), r = 0
        let g = c_plus(5, &[(0, 2), (0, 3)]);
        let rep = degenerate_side_placement(&g, 0).unwrap().unwrap();
        assert_eq!(rep.p, vec![0]);
        rep.validate(&g).unwrap();
    }

    #[test]
    fn degenerate_side_infeasible_when_bridge_avoids_r() {
        // C6 + chord (1,4), r = 0
        let g = c_plus(6, &[(1, 4)]);
        assert!(degenerate_side_placement(&g, 0).unwrap().is_none());
    }

    #[test]
    fn degenerate_side_triangle_any_vertex() {
        let g = cycle_graph(3);
        for r in 0..3 {
            let rep = degenerate_side_placement(&g, r).unwrap().unwrap();
            assert_eq!(rep.p, vec![r]);
        }
    }

    #[test]
    fn enumerate_triangle_every_vertex_a_corner() {
        let g = cycle_graph(3);
        let reps = enumerate_representations(&g).unwrap();
        assert!(!reps.is_empty());
        for v in 0..3 {
            assert!(
                reps.iter().any(|rep| rep.corners().contains(&v)),
                "vertex {v} never a corner"
            );
        }
        for rep in &reps {
            rep.validate(&g).unwrap();
        }
    }

    #[test]
    fn enumerate_p3_empty() {
        assert!(enumerate_representations(&path_graph(3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn enumerate_c4_closed_under_symmetry() {
        let g = cycle_graph(4);
        let reps = enumerate_representations(&g).unwrap();
        assert!(!reps.is_empty());
        // rotations and reflections of C4 map the emitted set to itself
        let relabelings: Vec<Vec<usize>> = vec![
            vec![1, 2, 3, 0],
            vec![3, 0, 1, 2],
            vec![0, 3, 2, 1],
            vec![2, 1, 0, 3],
        ];
        for f in &relabelings {
            for rep in &reps {
                let mapped = TrackRepresentation {
                    p: rep.p.iter().map(|&v| f[v]).collect(),
                    q: rep.q.iter().map(|&v| f[v]).collect(),
                    chords: rep.chords.clone(),
                }
                .normalize();
                assert!(reps.contains(&mapped), "image not emitted");
            }
        }
    }

    #[test]
    fn enumerate_capacity() {
        let g = cycle_graph(MAX_ENUMERATE_N + 1);
        assert!(matches!(
            enumerate_representations(&g),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn rep_text_format() {
        let g = complete_bipartite(2, 3);
        let rep = recognize_track(&g).unwrap();
        let text = rep.to_text();
        assert!(text.starts_with("P: "));
        assert!(text.contains("\nQ: "));
        assert!(text.contains("long"));
    }
}
