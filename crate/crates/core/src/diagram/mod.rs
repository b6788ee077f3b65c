//! Combinatorial Y-oriented spatial trivalent graph diagrams.
//!
//! An arc is a piece of the diagram between undercrossings and vertices.
//! Open arcs have a tail (where they start) and a head (where they end);
//! closed arcs are circle components that never pass under anything.
//!
//! Conventions:
//!
//! * Vertex normal position: turn the diagram so the stem points down. At a
//!   `merge` the two incoming arcs enter from above and the stem leaves
//!   below; at a `split` the stem enters from above and the two outgoing
//!   arcs leave below. `left` and `right` are read off in that position.
//!   The coloring condition is always `C(left)·C(right) = C(stem)`.
//!
//!   ```text
//!        merge              split
//!     left   right          stem
//!        \   /               |
//!         v v                v
//!          *                 *
//!          |                / \
//!          v               v   v
//!         stem          left   right
//!   ```
//!
//! * Crossing sign: `+1` when the under-strand passes from the right-hand
//!   side of the oriented over-strand to its left-hand side. For `+1` the
//!   coloring rule is `C(under_out) = C(under_in) ∗ C(over)`; for `−1` it is
//!   `C(under_in) = C(under_out) ∗ C(over)`.
//!
//! Positions of overcrossings along an arc are not recorded. Local moves
//! that cut an arc say explicitly which piece keeps which overcrossings.

mod iso;
mod moves;
mod sum;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use iso::is_isomorphic;
pub use moves::{apply_move, MoveKind, MoveSite, MoveSpec, MoveVariant};
pub use sum::{connected_sum, Attachment, BridgeEnd, Side};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ArcId(pub u32);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            _ => Err(format!("crossing sign must be 1 or -1, got {v}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arc {
    pub id: ArcId,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossing {
    pub over: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    /// `left`, `right` incoming; `stem` outgoing.
    Merge,
    /// `stem` incoming; `left`, `right` outgoing.
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub kind: VertexKind,
    pub left: ArcId,
    pub right: ArcId,
    pub stem: ArcId,
}

impl Vertex {
    pub fn incoming(&self) -> Vec<ArcId> {
        match self.kind {
            VertexKind::Merge => vec![self.left, self.right],
            VertexKind::Split => vec![self.stem],
        }
    }

    pub fn outgoing(&self) -> Vec<ArcId> {
        match self.kind {
            VertexKind::Merge => vec![self.stem],
            VertexKind::Split => vec![self.left, self.right],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagram {
    pub arcs: Vec<Arc>,
    #[serde(default)]
    pub crossings: Vec<Crossing>,
    #[serde(default)]
    pub vertices: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_arc: Option<ArcId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum DiagramViolation {
    NoArcs,
    DuplicateArc { arc: ArcId },
    UnknownArc { arc: ArcId },
    /// An open arc must end at exactly one place.
    HeadCount { arc: ArcId, count: usize },
    /// An open arc must start at exactly one place.
    TailCount { arc: ArcId, count: usize },
    /// Circle components may only appear as over-arcs.
    ClosedArcInSlot { arc: ArcId },
    UnknownMarkedArc { arc: ArcId },
}

impl fmt::Display for DiagramViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramViolation::NoArcs => write!(f, "diagram has no arcs"),
            DiagramViolation::DuplicateArc { arc } => write!(f, "arc id {arc} declared twice"),
            DiagramViolation::UnknownArc { arc } => write!(f, "arc {arc} is referenced but not declared"),
            DiagramViolation::HeadCount { arc, count } => {
                write!(f, "open arc {arc} ends at {count} places, expected 1")
            }
            DiagramViolation::TailCount { arc, count } => {
                write!(f, "open arc {arc} starts at {count} places, expected 1")
            }
            DiagramViolation::ClosedArcInSlot { arc } => write!(
                f,
                "closed arc {arc} appears as an under-strand or at a vertex"
            ),
            DiagramViolation::UnknownMarkedArc { arc } => write!(f, "marked arc {arc} not declared"),
        }
    }
}

/// Where an arc starts or ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum End {
    Crossing(usize),
    Vertex(usize, Slot),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Slot {
    Left,
    Right,
    Stem,
}

/// Parses a diagram from JSON. Only the structure is checked here; see
/// [`Diagram::validate`].
pub fn parse(text: &str) -> Result<Diagram> {
    Ok(serde_json::from_str(text)?)
}

/// Canonical pretty JSON with a trailing newline.
pub fn serialize(d: &Diagram) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("diagram serializes");
    s.push('\n');
    s
}

impl Diagram {
    /// A single unknotted circle component.
    pub fn circle() -> Diagram {
        Diagram {
            arcs: vec![Arc {
                id: ArcId(0),
                closed: true,
            }],
            ..Default::default()
        }
    }

    /// Two arcs `0`, `1` joined into a circle by two trivalent vertices
    /// with a third arc `2` between them: `merge(0, 1 → 2)`, `split(2 → 0, 1)`.
    pub fn theta() -> Diagram {
        let (a, b, c) = (ArcId(0), ArcId(1), ArcId(2));
        Diagram {
            arcs: [a, b, c].iter().map(|&id| Arc { id, closed: false }).collect(),
            crossings: vec![],
            vertices: vec![
                Vertex {
                    kind: VertexKind::Merge,
                    left: a,
                    right: b,
                    stem: c,
                },
                Vertex {
                    kind: VertexKind::Split,
                    left: a,
                    right: b,
                    stem: c,
                },
            ],
            marked_arc: None,
        }
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.arcs.iter().map(|a| a.id)
    }

    pub fn arc(&self, id: ArcId) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.id == id)
    }

    pub fn position(&self, id: ArcId) -> Option<usize> {
        self.arcs.iter().position(|a| a.id == id)
    }

    /// Smallest id larger than every arc id in use.
    pub fn next_arc_id(&self) -> ArcId {
        ArcId(self.arcs.iter().map(|a| a.id.0 + 1).max().unwrap_or(0))
    }

    pub(crate) fn add_arc(&mut self, closed: bool) -> ArcId {
        let id = self.next_arc_id();
        self.arcs.push(Arc { id, closed });
        id
    }

    pub(crate) fn remove_arc(&mut self, id: ArcId) {
        self.arcs.retain(|a| a.id != id);
    }

    pub(crate) fn set_closed(&mut self, id: ArcId, closed: bool) {
        if let Some(a) = self.arcs.iter_mut().find(|a| a.id == id) {
            a.closed = closed;
        }
    }

    pub fn is_closed(&self, id: ArcId) -> bool {
        self.arc(id).is_some_and(|a| a.closed)
    }

    pub(crate) fn head(&self, id: ArcId) -> Option<End> {
        if let Some(i) = self.crossings.iter().position(|c| c.under_in == id) {
            return Some(End::Crossing(i));
        }
        self.vertices.iter().enumerate().find_map(|(i, v)| match v.kind {
            VertexKind::Merge if v.left == id => Some(End::Vertex(i, Slot::Left)),
            VertexKind::Merge if v.right == id => Some(End::Vertex(i, Slot::Right)),
            VertexKind::Split if v.stem == id => Some(End::Vertex(i, Slot::Stem)),
            _ => None,
        })
    }

    pub(crate) fn tail(&self, id: ArcId) -> Option<End> {
        if let Some(i) = self.crossings.iter().position(|c| c.under_out == id) {
            return Some(End::Crossing(i));
        }
        self.vertices.iter().enumerate().find_map(|(i, v)| match v.kind {
            VertexKind::Split if v.left == id => Some(End::Vertex(i, Slot::Left)),
            VertexKind::Split if v.right == id => Some(End::Vertex(i, Slot::Right)),
            VertexKind::Merge if v.stem == id => Some(End::Vertex(i, Slot::Stem)),
            _ => None,
        })
    }

    /// Points the head of `from` at `to` instead.
    pub(crate) fn redirect_head(&mut self, from: ArcId, to: ArcId) {
        match self.head(from) {
            Some(End::Crossing(i)) => self.crossings[i].under_in = to,
            Some(End::Vertex(i, slot)) => *slot_mut(&mut self.vertices[i], slot) = to,
            None => {}
        }
    }

    /// Indices of crossings where `id` is the over-arc.
    pub fn over_crossings(&self, id: ArcId) -> Vec<usize> {
        self.crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| c.over == id)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn validate(&self) -> std::result::Result<(), DiagramViolation> {
        if self.arcs.is_empty() {
            return Err(DiagramViolation::NoArcs);
        }
        let mut ids = BTreeSet::new();
        for a in &self.arcs {
            if !ids.insert(a.id) {
                return Err(DiagramViolation::DuplicateArc { arc: a.id });
            }
        }
        let mut heads: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut tails: BTreeMap<ArcId, usize> = BTreeMap::new();
        for c in &self.crossings {
            for id in [c.over, c.under_in, c.under_out] {
                if !ids.contains(&id) {
                    return Err(DiagramViolation::UnknownArc { arc: id });
                }
            }
            *heads.entry(c.under_in).or_default() += 1;
            *tails.entry(c.under_out).or_default() += 1;
        }
        for v in &self.vertices {
            for id in [v.left, v.right, v.stem] {
                if !ids.contains(&id) {
                    return Err(DiagramViolation::UnknownArc { arc: id });
                }
            }
            for id in v.incoming() {
                *heads.entry(id).or_default() += 1;
            }
            for id in v.outgoing() {
                *tails.entry(id).or_default() += 1;
            }
        }
        for a in &self.arcs {
            let h = heads.get(&a.id).copied().unwrap_or(0);
            let t = tails.get(&a.id).copied().unwrap_or(0);
            if a.closed {
                if h + t > 0 {
                    return Err(DiagramViolation::ClosedArcInSlot { arc: a.id });
                }
            } else if h != 1 {
                return Err(DiagramViolation::HeadCount { arc: a.id, count: h });
            } else if t != 1 {
                return Err(DiagramViolation::TailCount { arc: a.id, count: t });
            }
        }
        if let Some(m) = self.marked_arc {
            if !ids.contains(&m) {
                return Err(DiagramViolation::UnknownMarkedArc { arc: m });
            }
        }
        Ok(())
    }

    pub fn validated(self) -> Result<Diagram> {
        self.validate().map_err(Error::InvalidDiagram)?;
        Ok(self)
    }

    /// Reverses a circle component. Only closed arcs can be reversed; every
    /// crossing it passes over changes sign.
    pub fn reverse_circle(&self, id: ArcId) -> Result<Diagram> {
        if !self.is_closed(id) {
            return Err(Error::MoveMismatch {
                mv: "REVERSE_CIRCLE",
                expected: "a closed circle component",
                detail: format!("arc {id} is not a closed arc"),
            });
        }
        let mut out = self.clone();
        for c in out.crossings.iter_mut().filter(|c| c.over == id) {
            c.sign = c.sign.flip();
        }
        Ok(out)
    }
}

pub(crate) fn slot_mut(v: &mut Vertex, slot: Slot) -> &mut ArcId {
    match slot {
        Slot::Left => &mut v.left,
        Slot::Right => &mut v.right,
        Slot::Stem => &mut v.stem,
    }
}
