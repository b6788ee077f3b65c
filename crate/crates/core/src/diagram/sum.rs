use serde::{Deserialize, Serialize};

use super::{ArcId, Diagram, Vertex, VertexKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Which end of the bridge arc sits on the chosen arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BridgeEnd {
    /// The bridge leaves from a new split vertex.
    Source,
    /// The bridge arrives at a new merge vertex.
    Target,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Attachment {
    pub arc: ArcId,
    pub side: Side,
    pub end: BridgeEnd,
}

/// Inserts a vertex on `at` joining the bridge arc `bridge`.
fn attach(d: &mut Diagram, at: Attachment, bridge: ArcId) {
    let arc = at.arc;
    let cont = if d.is_closed(arc) {
        d.set_closed(arc, false);
        arc
    } else {
        let c = d.add_arc(false);
        d.redirect_head(arc, c);
        c
    };
    let (left, right) = match at.side {
        Side::Left => (bridge, cont),
        Side::Right => (cont, bridge),
    };
    let v = match at.end {
        BridgeEnd::Source => Vertex {
            kind: VertexKind::Split,
            left,
            right,
            stem: arc,
        },
        BridgeEnd::Target => {
            // the bridge and the arc flow in; the continuation flows out
            let (left, right) = match at.side {
                Side::Left => (bridge, arc),
                Side::Right => (arc, bridge),
            };
            Vertex {
                kind: VertexKind::Merge,
                left,
                right,
                stem: cont,
            }
        }
    };
    d.vertices.push(v);
}

/// Joins `d1` and `d2` by a new arc from one attachment to the other. The
/// new arc becomes the marked arc. Arc ids of `d1` are kept; `d2` is
/// shifted past them. Exactly one attachment must be a source.
pub fn connected_sum(d1: &Diagram, at1: Attachment, d2: &Diagram, at2: Attachment) -> Result<Diagram> {
    d1.validate().map_err(Error::InvalidDiagram)?;
    d2.validate().map_err(Error::InvalidDiagram)?;
    if at1.end == at2.end {
        return Err(Error::Usage("connected sum needs one source and one target end".into()));
    }
    for (d, at) in [(d1, at1), (d2, at2)] {
        if d.arc(at.arc).is_none() {
            return Err(Error::Usage(format!("attachment arc {} not found", at.arc)));
        }
    }
    let shift = d1.next_arc_id().0;
    let mv = |a: ArcId| ArcId(a.0 + shift);
    let mut out = d1.clone();
    out.marked_arc = None;
    out.arcs.extend(d2.arcs.iter().map(|a| super::Arc { id: mv(a.id), ..*a }));
    out.crossings.extend(d2.crossings.iter().map(|c| super::Crossing {
        over: mv(c.over),
        under_in: mv(c.under_in),
        under_out: mv(c.under_out),
        sign: c.sign,
    }));
    out.vertices.extend(d2.vertices.iter().map(|v| Vertex {
        left: mv(v.left),
        right: mv(v.right),
        stem: mv(v.stem),
        ..*v
    }));
    let bridge = out.add_arc(false);
    attach(&mut out, at1, bridge);
    attach(&mut out, Attachment { arc: mv(at2.arc), ..at2 }, bridge);
    out.marked_arc = Some(bridge);
    debug_assert_eq!(out.validate(), Ok(()));
    Ok(out)
}
