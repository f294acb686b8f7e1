//! Turning a structure report into a width-2 path-decomposition.
//!
//! Every spine element contributes a run of bags swept left to right; the
//! junction vertex shared by consecutive elements sits in the last bag of
//! one run and the first bag of the next, so its interval spans the seam.
//! Attached trees are swept while their root (or a partner vertex) is held.

use crate::error::{Error, Result};
use crate::oracle::PathDecomposition;
use crate::structure::trees::HostTree;
use crate::structure::{Attachment, ComponentReport, SpineElement, StructureReport};
use crate::track::{ChordKind, TrackRepresentation};
use crate::vset::VertexSet;

/// Why a block cannot host its junctions and attachments under any tested
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum PlanFail {
    Anchor,
    SideTree,
    Corner,
    Middle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum EntityMode {
    /// Frippery run: bags of size <= 3 ending at the root.
    General,
    /// Width-1 terminal sweep with one partner vertex held.
    CatHeld { partner: usize },
}

#[derive(Debug, Clone)]
pub(crate) struct Entity {
    pub root: usize,
    pub tree: HostTree,
    pub mode: EntityMode,
}

/// A validated sweep schedule for one block element.
#[derive(Debug, Clone, Default)]
pub(crate) struct BlockPlan {
    /// Long-chord middle whose chord must open the sweep.
    pub first_mid: Option<usize>,
    /// Long-chord middle whose chord must close the sweep.
    pub last_mid: Option<usize>,
    pub left_entities: Vec<Entity>,
    pub right_entities: Vec<Entity>,
    /// Side vertices with pendant leaves, emitted at frontier moments.
    pub side_hairs: Vec<(usize, Vec<usize>)>,
}

fn chord_middle_position(rep: &TrackRepresentation, mid: usize) -> Option<(usize, usize)> {
    rep.chords.iter().find_map(|c| match c.kind {
        ChordKind::Long { middle } if middle == mid => Some((c.i, c.j)),
        _ => None,
    })
}

/// Fit junction anchors and attachments onto one oriented representation.
pub(crate) fn plan_for_rep(
    rep: &TrackRepresentation,
    left_j: Option<usize>,
    right_j: Option<usize>,
    atts: &[(usize, HostTree)],
) -> std::result::Result<BlockPlan, PlanFail> {
    let k = rep.p.len();
    let l = rep.q.len();
    let p1 = rep.p[0];
    let q1 = rep.q[0];
    let pk = rep.p[k - 1];
    let ql = rep.q[l - 1];
    let on_path = |v: usize| rep.p.contains(&v) || rep.q.contains(&v);
    let mids = rep.long_middles();

    let anchor_side = |v: usize, left: bool| -> bool {
        if left {
            v == p1 || v == q1 || chord_middle_position(rep, v) == Some((0, 0))
        } else {
            v == pk || v == ql || chord_middle_position(rep, v) == Some((k - 1, l - 1))
        }
    };
    if let Some(m) = left_j {
        if !anchor_side(m, true) {
            return Err(PlanFail::Anchor);
        }
    }
    if let Some(m) = right_j {
        if !anchor_side(m, false) {
            return Err(PlanFail::Anchor);
        }
    }

    // Raw entities per extreme; splittable roots can serve either extreme.
    struct Raw {
        root: usize,
        tree: HostTree,
        left_ok: bool,
        right_ok: bool,
    }
    let mut raws: Vec<Raw> = Vec::new();
    let mut side_hairs: Vec<(usize, Vec<usize>)> = Vec::new();

    for (r, tree) in atts {
        let r = *r;
        if Some(r) == left_j || Some(r) == right_j {
            continue; // junction attachments stack outside the element
        }
        let comps = tree.components_off(&[r]);
        let all_single = comps.iter().all(|c| c.size() == 1);
        if on_path(r) {
            if all_single {
                let mut leaves: Vec<usize> =
                    comps.iter().map(|c| c.vertices[0]).collect();
                leaves.sort_unstable();
                side_hairs.push((r, leaves));
                continue;
            }
            let left_ok = (r == p1 || r == q1) && left_j.map_or(true, |m| m != r);
            let right_ok = (r == pk || r == ql) && right_j.map_or(true, |m| m != r);
            if !left_ok && !right_ok {
                return Err(PlanFail::SideTree);
            }
            raws.push(Raw {
                root: r,
                tree: tree.clone(),
                left_ok,
                right_ok,
            });
        } else if mids.contains(&r) {
            let pos = chord_middle_position(rep, r).expect("middle has a chord");
            let left_ok = pos == (0, 0);
            let right_ok = pos == (k - 1, l - 1);
            if !left_ok && !right_ok {
                return Err(PlanFail::Middle);
            }
            raws.push(Raw {
                root: r,
                tree: tree.clone(),
                left_ok,
                right_ok,
            });
        } else {
            return Err(PlanFail::SideTree);
        }
    }
    raws.sort_by_key(|r| r.root);
    side_hairs.sort_unstable_by_key(|(v, _)| *v);

    // Assign each raw entity (or a split of its components) to extremes.
    // Splittable roots sit in both extremes; enumerate component splits.
    let both: Vec<usize> = raws
        .iter()
        .enumerate()
        .filter(|(_, r)| r.left_ok && r.right_ok)
        .map(|(i, _)| i)
        .collect();
    let forced_left: Vec<usize> = raws
        .iter()
        .enumerate()
        .filter(|(_, r)| r.left_ok && !r.right_ok)
        .map(|(i, _)| i)
        .collect();
    let forced_right: Vec<usize> = raws
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.left_ok && r.right_ok)
        .map(|(i, _)| i)
        .collect();

    // For each splittable root, candidate (left part, right part) divisions
    // of its components; None on a side means nothing goes there.
    let mut split_options: Vec<Vec<(Option<HostTree>, Option<HostTree>)>> = Vec::new();
    for &i in &both {
        let raw = &raws[i];
        let comps = raw.tree.components_off(&[raw.root]);
        let t = comps.len();
        let mut opts = Vec::new();
        let masks: Vec<u32> = if t <= 12 {
            (0..(1u32 << t)).collect()
        } else {
            vec![0, (1 << t) - 1]
        };
        for mask in masks {
            let mut le: Vec<(usize, usize)> = Vec::new();
            let mut re: Vec<(usize, usize)> = Vec::new();
            for (ci, comp) in comps.iter().enumerate() {
                let bucket = if mask >> ci & 1 == 1 { &mut le } else { &mut re };
                bucket.extend(comp.edges.iter().copied());
                // the edge joining the root to this component
                let joint = raw
                    .tree
                    .edges
                    .iter()
                    .copied()
                    .find(|&(u, v)| {
                        (u == raw.root && comp.contains(v)) || (v == raw.root && comp.contains(u))
                    })
                    .expect("component attaches to root");
                bucket.push(joint);
            }
            let mk = |es: Vec<(usize, usize)>| {
                if es.is_empty() {
                    None
                } else {
                    Some(HostTree::from_edges(es))
                }
            };
            opts.push((mk(le), mk(re)));
        }
        split_options.push(opts);
    }

    // Iterate split choices (usually zero or one splittable root).
    let mut chooser = vec![0usize; both.len()];
    let mut best_fail = PlanFail::Corner;
    loop {
        let mut left_raw: Vec<(usize, HostTree)> = forced_left
            .iter()
            .map(|&i| (raws[i].root, raws[i].tree.clone()))
            .collect();
        let mut right_raw: Vec<(usize, HostTree)> = forced_right
            .iter()
            .map(|&i| (raws[i].root, raws[i].tree.clone()))
            .collect();
        for (s, &i) in both.iter().enumerate() {
            let (le, re) = &split_options[s][chooser[s]];
            if let Some(t) = le {
                left_raw.push((raws[i].root, t.clone()));
            }
            if let Some(t) = re {
                right_raw.push((raws[i].root, t.clone()));
            }
        }
        match (
            resolve_extreme(rep, &left_raw, left_j, true),
            resolve_extreme(rep, &right_raw, right_j, false),
        ) {
            (Ok((le, fm)), Ok((re, lm))) => {
                return Ok(BlockPlan {
                    first_mid: fm.or_else(|| left_j.filter(|&m| mids.contains(&m))),
                    last_mid: lm.or_else(|| right_j.filter(|&m| mids.contains(&m))),
                    left_entities: le,
                    right_entities: re,
                    side_hairs,
                });
            }
            (Err(f), _) | (_, Err(f)) => {
                best_fail = best_fail.max(f);
            }
        }
        // next split choice
        let mut pos = 0;
        loop {
            if pos == chooser.len() {
                return Err(best_fail);
            }
            chooser[pos] += 1;
            if chooser[pos] < split_options[pos].len() {
                break;
            }
            chooser[pos] = 0;
            pos += 1;
        }
    }
}

/// Validate one extreme: at most two entities; with a junction anchor a
/// single held caterpillar; otherwise one general frippery plus at most
/// one held caterpillar. At most one of the entities may be a long-chord
/// middle (its chord must open or close the sweep).
fn resolve_extreme(
    rep: &TrackRepresentation,
    raw: &[(usize, HostTree)],
    anchor: Option<usize>,
    left: bool,
) -> std::result::Result<(Vec<Entity>, Option<usize>), PlanFail> {
    let mids = rep.long_middles();
    let mid_count = raw.iter().filter(|(r, _)| mids.contains(r)).count();
    // an anchor that is itself a middle occupies the opening chord too
    let anchor_is_mid = anchor.map(|m| mids.contains(&m)).unwrap_or(false);
    if mid_count + usize::from(anchor_is_mid) > 1 {
        return Err(PlanFail::Middle);
    }
    let the_mid = raw
        .iter()
        .find(|(r, _)| mids.contains(r))
        .map(|(r, _)| *r);
    let fail_for = |root: usize| {
        if mids.contains(&root) {
            PlanFail::Middle
        } else {
            PlanFail::Corner
        }
    };
    let _ = left;
    match raw.len() {
        0 => Ok((vec![], the_mid)),
        1 => {
            let (r, t) = &raw[0];
            if let Some(m) = anchor {
                if t.cat_terminal_sweep(*r).is_some() {
                    Ok((
                        vec![Entity {
                            root: *r,
                            tree: t.clone(),
                            mode: EntityMode::CatHeld { partner: m },
                        }],
                        the_mid,
                    ))
                } else {
                    Err(fail_for(*r))
                }
            } else if t.frippery_spine(*r).is_some() {
                Ok((
                    vec![Entity {
                        root: *r,
                        tree: t.clone(),
                        mode: EntityMode::General,
                    }],
                    the_mid,
                ))
            } else {
                Err(fail_for(*r))
            }
        }
        2 => {
            if anchor.is_some() {
                return Err(PlanFail::Corner);
            }
            for (gi, ci) in [(0, 1), (1, 0)] {
                let (gr, gt) = &raw[gi];
                let (cr, ct) = &raw[ci];
                if gt.frippery_spine(*gr).is_some() && ct.cat_terminal_sweep(*cr).is_some() {
                    return Ok((
                        vec![
                            Entity {
                                root: *gr,
                                tree: gt.clone(),
                                mode: EntityMode::General,
                            },
                            Entity {
                                root: *cr,
                                tree: ct.clone(),
                                mode: EntityMode::CatHeld { partner: *gr },
                            },
                        ],
                        the_mid,
                    ));
                }
            }
            Err(raw
                .iter()
                .map(|(r, _)| fail_for(*r))
                .max()
                .unwrap_or(PlanFail::Corner))
        }
        _ => Err(PlanFail::Corner),
    }
}

/// Sweep one block element: entity runs, the chord sweep with side hairs,
/// mirrored entity runs.
pub(crate) fn emit_block(rep: &TrackRepresentation, plan: &BlockPlan) -> Vec<Vec<usize>> {
    let mut bags: Vec<Vec<usize>> = Vec::new();
    for e in &plan.left_entities {
        bags.extend(entity_run(e));
    }
    bags.extend(sweep_with_hairs(rep, plan));
    for e in plan.right_entities.iter().rev() {
        let mut run = entity_run(e);
        run.reverse();
        bags.extend(run);
    }
    bags
}

fn entity_run(e: &Entity) -> Vec<Vec<usize>> {
    match &e.mode {
        EntityMode::General => e
            .tree
            .frippery_run(e.root)
            .expect("planned entity has a frippery run"),
        EntityMode::CatHeld { partner } => {
            let mut run = e
                .tree
                .cat_terminal_sweep(e.root)
                .expect("planned entity has a terminal sweep");
            for bag in &mut run {
                bag.push(*partner);
            }
            run
        }
    }
}

/// The core sweep with chord reordering for end middles and `{cp, cq, leaf}`
/// hair bags at each vertex's first frontier moment.
fn sweep_with_hairs(rep: &TrackRepresentation, plan: &BlockPlan) -> Vec<Vec<usize>> {
    let mut chords = rep.chords.clone();
    if let Some(m) = plan.first_mid {
        if let Some(pos) = chords.iter().position(|c| matches!(c.kind, ChordKind::Long { middle } if middle == m)) {
            let c = chords.remove(pos);
            chords.insert(0, c);
        }
    }
    if let Some(m) = plan.last_mid {
        if let Some(pos) = chords.iter().position(|c| matches!(c.kind, ChordKind::Long { middle } if middle == m)) {
            let c = chords.remove(pos);
            chords.push(c);
        }
    }
    let mut pending: std::collections::BTreeMap<usize, Vec<usize>> =
        plan.side_hairs.iter().cloned().collect();
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut ci = 0usize;
    let mut cj = 0usize;
    let emit_hairs =
        |bags: &mut Vec<Vec<usize>>, pending: &mut std::collections::BTreeMap<usize, Vec<usize>>,
         cp: usize, cq: usize| {
            for v in [cp, cq] {
                if let Some(leaves) = pending.remove(&v) {
                    for leaf in leaves {
                        bags.push(vec![cp, cq, leaf]);
                    }
                }
            }
        };
    let first_long = matches!(chords.first().map(|c| &c.kind), Some(ChordKind::Long { .. }));
    if !first_long {
        bags.push(vec![rep.p[0], rep.q[0]]);
        emit_hairs(&mut bags, &mut pending, rep.p[0], rep.q[0]);
    }
    for (n_ch, ch) in chords.iter().enumerate() {
        while ci < ch.i {
            bags.push(vec![rep.p[ci], rep.p[ci + 1], rep.q[cj]]);
            ci += 1;
            emit_hairs(&mut bags, &mut pending, rep.p[ci], rep.q[cj]);
        }
        while cj < ch.j {
            bags.push(vec![rep.p[ci], rep.q[cj], rep.q[cj + 1]]);
            cj += 1;
            emit_hairs(&mut bags, &mut pending, rep.p[ci], rep.q[cj]);
        }
        if let ChordKind::Long { middle } = ch.kind {
            bags.push(vec![rep.p[ci], middle, rep.q[cj]]);
            if n_ch == 0 {
                emit_hairs(&mut bags, &mut pending, rep.p[ci], rep.q[cj]);
            }
        }
    }
    debug_assert!(pending.is_empty(), "unplaced side hairs: {pending:?}");
    bags
}

/// Bond element: walk the path, sweeping attached caterpillar components
/// while their path vertex is held. Junction-rooted attachments are the
/// caller's business.
pub(crate) fn emit_bond(
    path: &[usize],
    atts: &[(usize, HostTree)],
    skip_roots: &[usize],
) -> Vec<Vec<usize>> {
    let mut bags: Vec<Vec<usize>> = Vec::new();
    if path.len() == 1 && atts.iter().all(|(r, _)| skip_roots.contains(r) || *r != path[0]) {
        bags.push(vec![path[0]]);
    }
    for (idx, &v) in path.iter().enumerate() {
        if idx > 0 {
            bags.push(vec![path[idx - 1], v]);
        }
        if skip_roots.contains(&v) {
            continue;
        }
        let mut here: Vec<&HostTree> = atts
            .iter()
            .filter(|(r, _)| *r == v)
            .map(|(_, t)| t)
            .collect();
        here.sort_by_key(|t| t.vertices.clone());
        for t in here {
            for comp in compare_sorted_components(t, v) {
                for mut bag in comp.cat_sweep().expect("bond attachment is a caterpillar") {
                    bag.push(v);
                    bags.push(bag);
                }
            }
        }
    }
    bags
}

fn compare_sorted_components(t: &HostTree, root: usize) -> Vec<HostTree> {
    let mut comps = t.components_off(&[root]);
    comps.sort_by_key(|c| c.vertices[0]);
    comps
}

/// Everything stacked at a junction vertex: attached caterpillar
/// components swept with the junction held.
pub(crate) fn emit_junction_stack(m: usize, atts: &[(usize, HostTree)]) -> Vec<Vec<usize>> {
    let mut bags = Vec::new();
    let mut here: Vec<&HostTree> = atts
        .iter()
        .filter(|(r, _)| *r == m)
        .map(|(_, t)| t)
        .collect();
    here.sort_by_key(|t| t.vertices.clone());
    for t in here {
        for comp in compare_sorted_components(t, m) {
            for mut bag in comp.cat_sweep().expect("junction attachment is a caterpillar") {
                bag.push(m);
                bags.push(bag);
            }
        }
    }
    bags
}

fn atts_as_trees(atts: &[Attachment]) -> Vec<(usize, HostTree)> {
    atts.iter()
        .map(|a| (a.root, HostTree::from_edges(a.edges.clone())))
        .collect()
}

/// Assemble one component's bag run.
pub(crate) fn assemble_component(comp: &ComponentReport) -> Result<Vec<Vec<usize>>> {
    let atts = atts_as_trees(&comp.attachments);
    let junction_set: Vec<usize> = comp.junctions.iter().flatten().copied().collect();
    let mut emitted_junctions: Vec<usize> = Vec::new();
    let mut bags: Vec<Vec<usize>> = Vec::new();
    for (i, elem) in comp.spine.iter().enumerate() {
        if let Some(m) = comp.junctions[i] {
            if !emitted_junctions.contains(&m) {
                emitted_junctions.push(m);
                bags.extend(emit_junction_stack(m, &atts));
            }
        }
        let left_j = comp.junctions[i];
        let right_j = comp.junctions[i + 1];
        match elem {
            SpineElement::Block { rep } => {
                let rep_atts: Vec<(usize, HostTree)> = atts
                    .iter()
                    .filter(|(r, _)| {
                        rep.p.contains(r) || rep.q.contains(r) || rep.long_middles().contains(r)
                    })
                    .cloned()
                    .collect();
                let plan = plan_for_rep(rep, left_j, right_j, &rep_atts)
                    .map_err(|f| Error::domain(format!("block plan failed: {f:?}")))?;
                bags.extend(emit_block(rep, &plan));
            }
            SpineElement::BondTree { path } => {
                let mut oriented = path.clone();
                if let Some(m) = left_j {
                    if oriented.last() == Some(&m) {
                        oriented.reverse();
                    }
                }
                bags.extend(emit_bond(&oriented, &atts, &junction_set));
            }
        }
    }
    // trailing junction (coincident at the very end cannot happen, but a
    // junction vertex may only appear between elements; nothing to do)
    Ok(bags)
}

/// Build the full decomposition. The caller promises the report's
/// invariants; the resulting decomposition has bags of size at most three.
pub fn assemble_decomposition(report: &StructureReport) -> Result<PathDecomposition> {
    let mut bags: Vec<VertexSet> = Vec::new();
    for comp in &report.components {
        for bag in assemble_component(comp)? {
            if bag.len() > 3 {
                return Err(Error::Soundness("assembled bag exceeds width 2".into()));
            }
            bags.push(VertexSet::from_iter_n(report.n, bag));
        }
    }
    Ok(PathDecomposition { n: report.n, bags })
}
