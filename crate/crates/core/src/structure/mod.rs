//! Whole-graph recognition: glue blocks and tree parts along a path-like
//! spine, emit verified decompositions or oracle-confirmed obstructions.

mod assemble;
mod generate;
mod spine;
pub mod trees;

pub use assemble::assemble_decomposition;
pub use generate::{generate, mine, GenKind, MinedObstruction};
pub use trees::{classify_rooted_tree, is_bond_tree, TreePartClass};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{exact_pathwidth, minimize_witness, verify_decomposition, PathDecomposition};
use crate::track::TrackRepresentation;
use crate::vset::VertexSet;

/// Structured reject reasons for the whole-graph recognizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReasonCode {
    NonTrackBlock,
    SpineNotPath,
    BadCornerPlacement,
    TreePartUnclassifiable,
    HairOnMiddle,
    TooManyFripperies,
    ComponentFailure,
}

impl ReasonCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReasonCode::NonTrackBlock => "non-track-block",
            ReasonCode::SpineNotPath => "spine-not-path",
            ReasonCode::BadCornerPlacement => "bad-corner-placement",
            ReasonCode::TreePartUnclassifiable => "tree-part-unclassifiable",
            ReasonCode::HairOnMiddle => "hair-on-middle",
            ReasonCode::TooManyFripperies => "too-many-fripperies",
            ReasonCode::ComponentFailure => "component-failure",
        }
    }
}

/// One element of the spine: a track block (oriented so its sweep runs
/// from the left junction to the right one) or a double-rooted tree path.
#[derive(Debug, Clone)]
pub enum SpineElement {
    Block { rep: TrackRepresentation },
    BondTree { path: Vec<usize> },
}

impl SpineElement {
    pub fn vertices(&self, n: usize) -> VertexSet {
        match self {
            SpineElement::Block { rep } => rep.vertices(n),
            SpineElement::BondTree { path } => VertexSet::from_iter_n(n, path.iter().copied()),
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            SpineElement::Block { rep } => rep.edge_multiset(),
            SpineElement::BondTree { path } => path
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect(),
        }
    }
}

/// A tree part hanging off the spine at `root`.
#[derive(Debug, Clone)]
pub struct Attachment {
    pub root: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub spine: Vec<SpineElement>,
    /// `junctions[i]` joins `spine[i-1]` and `spine[i]`; the two ends are
    /// `None`. Consecutive entries may repeat a vertex (inline elements).
    pub junctions: Vec<Option<usize>>,
    pub attachments: Vec<Attachment>,
}

/// Spine-of-blocks structure for a whole graph, one entry per connected
/// component.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub n: usize,
    pub components: Vec<ComponentReport>,
}

impl StructureReport {
    /// Every vertex and edge of the host is covered exactly once across
    /// spine elements and attachments (junction vertices shared between
    /// neighbouring elements excepted).
    pub fn check_coverage(&self, g: &Graph) -> Result<()> {
        let mut edge_count: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
        let mut seen_vertices = VertexSet::new(g.n());
        for comp in &self.components {
            for elem in &comp.spine {
                for e in elem.edges() {
                    *edge_count.entry(e).or_insert(0) += 1;
                }
                for v in elem.vertices(self.n).iter() {
                    seen_vertices.insert(v);
                }
            }
            for att in &comp.attachments {
                for &(u, v) in &att.edges {
                    *edge_count.entry((u.min(v), u.max(v))).or_insert(0) += 1;
                    seen_vertices.insert(u);
                    seen_vertices.insert(v);
                }
            }
        }
        let mut host: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
        for &e in g.edges() {
            *host.entry(e).or_insert(0) += 1;
        }
        if edge_count != host {
            return Err(Error::domain("report does not cover the host edges exactly"));
        }
        if seen_vertices.count() != g.n() {
            return Err(Error::domain("report does not cover all vertices"));
        }
        Ok(())
    }

    /// Text format: SPINE header, one line per element, then attachment
    /// lines. Single-edge attachments print as hairs.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for comp in &self.components {
            out.push_str(&format!("SPINE {}\n", comp.spine.len()));
            for (i, elem) in comp.spine.iter().enumerate() {
                let fmt_j = |j: Option<usize>| match j {
                    Some(m) => m.to_string(),
                    None => "-".to_string(),
                };
                match elem {
                    SpineElement::Block { .. } => {
                        out.push_str(&format!(
                            "BLOCK {} corners {} {}\n",
                            i,
                            fmt_j(comp.junctions[i]),
                            fmt_j(comp.junctions[i + 1])
                        ));
                    }
                    SpineElement::BondTree { path } => {
                        out.push_str(&format!(
                            "BONDTREE {} ends {} {}\n",
                            i,
                            path.first().unwrap(),
                            path.last().unwrap()
                        ));
                    }
                }
            }
            let mut atts = comp.attachments.clone();
            atts.sort_by_key(|a| (a.root, a.edges.clone()));
            for att in &atts {
                if att.edges.len() == 1 {
                    out.push_str(&format!("HAIR at {}\n", att.root));
                } else {
                    out.push_str(&format!("FRIPPERY at {}\n", att.root));
                }
            }
        }
        out
    }
}

/// A recognizer verdict before certification.
#[derive(Debug, Clone)]
pub enum Recognition {
    Accepted(StructureReport),
    Rejected(Rejection),
}

#[derive(Debug, Clone)]
pub struct Rejection {
    pub reason: ReasonCode,
    /// Host vertices localizing the offending structure.
    pub region: VertexSet,
}

/// The certifying verdict: a verified decomposition with its structure
/// report, or an oracle-confirmed obstruction.
#[derive(Debug, Clone)]
pub enum Certificate {
    Positive {
        decomposition: PathDecomposition,
        report: StructureReport,
    },
    Negative(NegativeCertificate),
}

#[derive(Debug, Clone)]
pub struct NegativeCertificate {
    pub reason: ReasonCode,
    pub witness: Graph,
    pub minimal_witness: Graph,
    pub oracle_width: usize,
}

impl Certificate {
    pub fn is_positive(&self) -> bool {
        matches!(self, Certificate::Positive { .. })
    }
}

/// Recognize a 2-edge-connected graph (parallel edges allowed): all blocks
/// must be tracks glued along a path-like spine.
pub fn recognize_2ec(g: &Graph) -> Result<Recognition> {
    if !g.is_connected() || g.n() == 0 {
        return Err(Error::domain("recognize_2ec needs a connected graph"));
    }
    let bd = crate::blocks::block_decomposition(g);
    if g.n() >= 2 && bd.blocks.iter().any(|b| b.len() == 1) {
        return Err(Error::domain("recognize_2ec needs a 2-edge-connected graph"));
    }
    let comp: Vec<usize> = (0..g.n()).collect();
    match spine::recognize_component(g, &bd, &comp) {
        Ok(report) => {
            let full = StructureReport {
                n: g.n(),
                components: vec![report],
            };
            Ok(Recognition::Accepted(full))
        }
        Err(rej) => Ok(Recognition::Rejected(rej)),
    }
}

/// Decide path-width <= 2 for any simple graph, producing a certificate
/// either way. Disconnected inputs are handled per component; the verdict
/// is the conjunction.
pub fn recognize_pw2(g: &Graph) -> Result<Certificate> {
    if g.allow_parallel() {
        return Err(Error::domain("recognize_pw2 takes simple graphs"));
    }
    let bd = crate::blocks::block_decomposition(g);
    let comps = g.components();
    let mut reports = Vec::new();
    let mut failure: Option<Rejection> = None;
    for comp in &comps {
        match spine::recognize_component(g, &bd, comp) {
            Ok(report) => reports.push(report),
            Err(rej) => {
                failure = Some(rej);
                break;
            }
        }
    }
    match failure {
        None => {
            let report = StructureReport {
                n: g.n(),
                components: reports,
            };
            let decomposition = assemble_decomposition(&report)?;
            if let Err(v) = verify_decomposition(g, &decomposition, 2) {
                return Err(Error::Soundness(format!(
                    "assembled decomposition failed verification: {v}"
                )));
            }
            Ok(Certificate::Positive {
                decomposition,
                report,
            })
        }
        Some(rej) => {
            let reason = if comps.len() > 1 {
                ReasonCode::ComponentFailure
            } else {
                rej.reason
            };
            let cert = extract_certificate(g, &Rejection { reason, ..rej })?;
            Ok(Certificate::Negative(cert))
        }
    }
}

/// Localize a rejected structure to an oracle-confirmed witness and reduce
/// it to a minor-minimal obstruction. Growing toward the full graph covers
/// a too-small local guess; an unconfirmable reject is a soundness bug.
pub fn extract_certificate(g: &Graph, rejection: &Rejection) -> Result<NegativeCertificate> {
    let mut candidates: Vec<VertexSet> = vec![rejection.region.clone()];
    // grow: the component containing the region, then the whole graph
    if let Some(v0) = rejection.region.min() {
        for comp in g.components() {
            if comp.contains(&v0) {
                candidates.push(VertexSet::from_iter_n(g.n(), comp.iter().copied()));
            }
        }
    }
    candidates.push(g.vertex_set());
    for cand in candidates {
        let (sub, _map) = g.induced(&cand);
        let sub = sub.without_isolated();
        if sub.n() == 0 {
            continue;
        }
        let (w, _) = exact_pathwidth(&sub)?;
        if w >= 3 {
            let minimal = minimize_witness(&sub)?;
            let (ww, _) = exact_pathwidth(&minimal)?;
            return Ok(NegativeCertificate {
                reason: rejection.reason,
                witness: sub,
                minimal_witness: minimal,
                oracle_width: ww,
            });
        }
    }
    Err(Error::Soundness(format!(
        "recognizer rejected ({}) but the oracle finds path-width <= 2",
        rejection.reason.as_str()
    )))
}
