//! Reidemeister moves R2, R3, R5, R6 on combinatorial diagrams.
//!
//! Every move takes an explicit site. New arcs get ids above every id of
//! the input diagram, in a fixed order, so applying a move is
//! deterministic. A move whose local pattern
//! is not present at the site fails with [`Error::MoveMismatch`].

use serde::{Deserialize, Serialize};

use super::{ArcId, Crossing, Diagram, End, Sign, Vertex, VertexKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MoveKind {
    R2Add,
    R2Remove,
    R3,
    R5,
    R6,
    ReverseCircle,
}

impl MoveKind {
    fn name(self) -> &'static str {
        match self {
            MoveKind::R2Add => "R2_ADD",
            MoveKind::R2Remove => "R2_REMOVE",
            MoveKind::R3 => "R3",
            MoveKind::R5 => "R5",
            MoveKind::R6 => "R6",
            MoveKind::ReverseCircle => "REVERSE_CIRCLE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveVariant {
    /// R2_ADD: first new crossing positive, second negative.
    PositiveFirst,
    NegativeFirst,
    /// R5: a strand under the stem is pushed under both leaves.
    UnderToPair,
    UnderToStem,
    /// R5: a strand over the stem is pushed over both leaves.
    OverToPair,
    OverToStem,
    /// R6: rotate the vertex by a full turn.
    TwistPositive,
    TwistNegative,
    UntwistPositive,
    UntwistNegative,
}

/// Location of a move. Each move kind reads the fields it needs.
///
/// * `R2_ADD`: `under` is pushed beneath `over`. The piece of `under`
///   after the new crossings takes over the overcrossings listed in
///   `carry_over`.
/// * `R2_REMOVE`: `middle` is the short arc between the two crossings.
/// * `R3`: `bottom` is the middle piece of the bottom strand and `top` the
///   topmost strand. `middle_other` names the far piece of the middle
///   strand when more than one candidate exists.
/// * `R5`: `vertex` index and `strand`, the arc passing by the vertex.
///   For `under_to_pair` it is the under-strand arc entering the stem
///   crossing; for `under_to_stem` the short arc between the two leaf
///   crossings; for the `over_*` variants the over-arc.
/// * `R6`: `vertex` index.
/// * `REVERSE_CIRCLE`: `arc`, a closed arc.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveSite {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub under: Option<ArcId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<ArcId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub carry_over: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle: Option<ArcId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<ArcId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<ArcId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub middle_other: Option<ArcId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strand: Option<ArcId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc: Option<ArcId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveSpec {
    #[serde(rename = "move")]
    pub kind: MoveKind,
    pub site: MoveSite,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<MoveVariant>,
}

impl MoveSpec {
    pub fn r2_add(under: ArcId, over: ArcId, first: Sign) -> MoveSpec {
        MoveSpec {
            kind: MoveKind::R2Add,
            site: MoveSite {
                under: Some(under),
                over: Some(over),
                ..Default::default()
            },
            variant: Some(match first {
                Sign::Positive => MoveVariant::PositiveFirst,
                Sign::Negative => MoveVariant::NegativeFirst,
            }),
        }
    }

    pub fn r2_remove(middle: ArcId) -> MoveSpec {
        MoveSpec {
            kind: MoveKind::R2Remove,
            site: MoveSite {
                middle: Some(middle),
                ..Default::default()
            },
            variant: None,
        }
    }

    pub fn r3(bottom: ArcId, top: ArcId) -> MoveSpec {
        MoveSpec {
            kind: MoveKind::R3,
            site: MoveSite {
                bottom: Some(bottom),
                top: Some(top),
                ..Default::default()
            },
            variant: None,
        }
    }

    pub fn r5(vertex: usize, strand: ArcId, variant: MoveVariant) -> MoveSpec {
        MoveSpec {
            kind: MoveKind::R5,
            site: MoveSite {
                vertex: Some(vertex),
                strand: Some(strand),
                ..Default::default()
            },
            variant: Some(variant),
        }
    }

    pub fn r6(vertex: usize, variant: MoveVariant) -> MoveSpec {
        MoveSpec {
            kind: MoveKind::R6,
            site: MoveSite {
                vertex: Some(vertex),
                ..Default::default()
            },
            variant: Some(variant),
        }
    }

    pub fn reverse_circle(arc: ArcId) -> MoveSpec {
        MoveSpec {
            kind: MoveKind::ReverseCircle,
            site: MoveSite {
                arc: Some(arc),
                ..Default::default()
            },
            variant: None,
        }
    }
}

fn mismatch(mv: &'static str, expected: &'static str, detail: impl Into<String>) -> Error {
    Error::MoveMismatch {
        mv,
        expected,
        detail: detail.into(),
    }
}

fn need<T: Copy>(mv: MoveKind, field: &'static str, v: Option<T>) -> Result<T> {
    v.ok_or_else(|| Error::Usage(format!("{} needs site.{field}", mv.name())))
}

fn need_variant(spec: &MoveSpec, allowed: &[MoveVariant]) -> Result<MoveVariant> {
    match spec.variant {
        Some(v) if allowed.contains(&v) => Ok(v),
        other => Err(Error::Usage(format!(
            "{} needs variant one of {allowed:?}, got {other:?}",
            spec.kind.name()
        ))),
    }
}

/// Applies `spec` to a valid diagram and returns the new diagram.
pub fn apply_move(d: &Diagram, spec: &MoveSpec) -> Result<Diagram> {
    d.validate().map_err(Error::InvalidDiagram)?;
    let k = spec.kind;
    let s = &spec.site;
    let out = match k {
        MoveKind::R2Add => {
            let v = need_variant(spec, &[MoveVariant::PositiveFirst, MoveVariant::NegativeFirst])?;
            let sign = if v == MoveVariant::PositiveFirst {
                Sign::Positive
            } else {
                Sign::Negative
            };
            r2_add(d, need(k, "under", s.under)?, need(k, "over", s.over)?, sign, &s.carry_over)?
        }
        MoveKind::R2Remove => r2_remove(d, need(k, "middle", s.middle)?)?,
        MoveKind::R3 => r3(d, need(k, "bottom", s.bottom)?, need(k, "top", s.top)?, s.middle_other)?,
        MoveKind::R5 => {
            let v = need_variant(
                spec,
                &[
                    MoveVariant::UnderToPair,
                    MoveVariant::UnderToStem,
                    MoveVariant::OverToPair,
                    MoveVariant::OverToStem,
                ],
            )?;
            r5(d, need(k, "vertex", s.vertex)?, need(k, "strand", s.strand)?, v)?
        }
        MoveKind::R6 => {
            let v = need_variant(
                spec,
                &[
                    MoveVariant::TwistPositive,
                    MoveVariant::TwistNegative,
                    MoveVariant::UntwistPositive,
                    MoveVariant::UntwistNegative,
                ],
            )?;
            let vertex = need(k, "vertex", s.vertex)?;
            match v {
                MoveVariant::TwistPositive => r6_twist(d, vertex, Sign::Positive)?,
                MoveVariant::TwistNegative => r6_twist(d, vertex, Sign::Negative)?,
                MoveVariant::UntwistPositive => r6_untwist(d, vertex, Sign::Positive)?,
                _ => r6_untwist(d, vertex, Sign::Negative)?,
            }
        }
        MoveKind::ReverseCircle => d.reverse_circle(need(k, "arc", s.arc)?)?,
    };
    debug_assert_eq!(out.validate(), Ok(()));
    Ok(out)
}

fn require_arc(d: &Diagram, mv: &'static str, id: ArcId) -> Result<()> {
    if d.arc(id).is_none() {
        return Err(mismatch(mv, "an existing arc", format!("arc {id} not found")));
    }
    Ok(())
}

/// A short arc created or consumed by a move: open, never over, unmarked.
fn require_short(d: &Diagram, mv: &'static str, id: ArcId) -> Result<()> {
    if d.is_closed(id) || !d.over_crossings(id).is_empty() || d.marked_arc == Some(id) {
        return Err(mismatch(
            mv,
            "a short arc with no overcrossings",
            format!("arc {id} is closed, marked or passes over a crossing"),
        ));
    }
    Ok(())
}

/// The strand pieces must differ from the arcs they pass. Positions of
/// overcrossings are not recorded, so cutting an arc that is also an over
/// arc of the same move would be ambiguous.
fn require_apart(mv: &'static str, strand: &[ArcId], others: &[ArcId]) -> Result<()> {
    if let Some(a) = strand.iter().find(|a| others.contains(a)) {
        return Err(mismatch(
            mv,
            "a strand disjoint from the arcs it passes",
            format!("arc {a} plays both roles"),
        ));
    }
    Ok(())
}

fn crossing_in(d: &Diagram, id: ArcId) -> Option<usize> {
    match d.head(id) {
        Some(End::Crossing(i)) => Some(i),
        _ => None,
    }
}

fn crossing_out(d: &Diagram, id: ArcId) -> Option<usize> {
    match d.tail(id) {
        Some(End::Crossing(i)) => Some(i),
        _ => None,
    }
}

fn remove_crossings(d: &mut Diagram, mut idx: Vec<usize>) {
    idx.sort_unstable();
    idx.dedup();
    for i in idx.into_iter().rev() {
        d.crossings.remove(i);
    }
}

fn r2_add(d: &Diagram, under: ArcId, over: ArcId, sign: Sign, carry: &[usize]) -> Result<Diagram> {
    const MV: &str = "R2_ADD";
    require_arc(d, MV, under)?;
    require_arc(d, MV, over)?;
    if under == over {
        return Err(mismatch(MV, "distinct under and over arcs", format!("both are {under}")));
    }
    for &c in carry {
        if d.crossings.get(c).map(|x| x.over) != Some(under) {
            return Err(mismatch(
                MV,
                "carry_over crossings that pass over the under arc",
                format!("crossing {c}"),
            ));
        }
    }
    let mut out = d.clone();
    if d.is_closed(under) {
        if !carry.is_empty() {
            return Err(mismatch(MV, "no carry_over on a closed arc", format!("{carry:?}")));
        }
        out.set_closed(under, false);
        let mid = out.add_arc(false);
        out.crossings.push(Crossing {
            over,
            under_in: under,
            under_out: mid,
            sign,
        });
        out.crossings.push(Crossing {
            over,
            under_in: mid,
            under_out: under,
            sign: sign.flip(),
        });
    } else {
        let mid = out.add_arc(false);
        let tail = out.add_arc(false);
        out.redirect_head(under, tail);
        for &c in carry {
            out.crossings[c].over = tail;
        }
        out.crossings.push(Crossing {
            over,
            under_in: under,
            under_out: mid,
            sign,
        });
        out.crossings.push(Crossing {
            over,
            under_in: mid,
            under_out: tail,
            sign: sign.flip(),
        });
    }
    Ok(out)
}

fn r2_remove(d: &Diagram, middle: ArcId) -> Result<Diagram> {
    const MV: &str = "R2_REMOVE";
    require_arc(d, MV, middle)?;
    require_short(d, MV, middle)?;
    let (Some(x), Some(y)) = (crossing_out(d, middle), crossing_in(d, middle)) else {
        return Err(mismatch(
            MV,
            "an arc running between two crossings",
            format!("arc {middle} ends at a vertex"),
        ));
    };
    let (cx, cy) = (d.crossings[x], d.crossings[y]);
    if x == y || cx.over != cy.over || cx.sign == cy.sign {
        return Err(mismatch(
            MV,
            "two crossings under the same arc with opposite signs",
            format!("crossings {x} and {y}"),
        ));
    }
    let (up, down) = (cx.under_in, cy.under_out);
    if up == middle || down == middle {
        return Err(mismatch(MV, "a simple bigon", format!("arc {middle} loops")));
    }
    let mut out = d.clone();
    remove_crossings(&mut out, vec![x, y]);
    out.remove_arc(middle);
    if up == down {
        out.set_closed(up, true);
    } else {
        out.redirect_head(down, up);
        for c in out.crossings.iter_mut().filter(|c| c.over == down) {
            c.over = up;
        }
        if out.marked_arc == Some(down) {
            out.marked_arc = Some(up);
        }
        out.remove_arc(down);
    }
    Ok(out)
}

fn r3(d: &Diagram, bottom: ArcId, top: ArcId, middle_other: Option<ArcId>) -> Result<Diagram> {
    const MV: &str = "R3";
    require_arc(d, MV, bottom)?;
    require_arc(d, MV, top)?;
    require_short(d, MV, bottom)?;
    let (Some(x), Some(y)) = (crossing_out(d, bottom), crossing_in(d, bottom)) else {
        return Err(mismatch(
            MV,
            "a bottom arc running between two crossings",
            format!("arc {bottom} ends at a vertex"),
        ));
    };
    let (cx, cy) = (d.crossings[x], d.crossings[y]);
    if x == y {
        return Err(mismatch(MV, "two distinct crossings", format!("arc {bottom} is a kink")));
    }
    let (t, m, m_first) = match (cx.over == top, cy.over == top) {
        (true, false) => (x, y, false),
        (false, true) => (y, x, true),
        _ => {
            return Err(mismatch(
                MV,
                "exactly one bottom crossing under the top arc",
                format!("crossings {x} and {y}"),
            ))
        }
    };
    let mp = d.crossings[m].over;
    let candidates: Vec<(usize, bool, ArcId)> = d
        .crossings
        .iter()
        .enumerate()
        .filter(|&(i, c)| i != t && i != m && c.over == top)
        .filter_map(|(i, c)| {
            if c.under_in == mp {
                Some((i, true, c.under_out))
            } else if c.under_out == mp {
                Some((i, false, c.under_in))
            } else {
                None
            }
        })
        .filter(|&(_, _, other)| middle_other.is_none_or(|o| o == other))
        .collect();
    let (a, up, other) = match candidates.as_slice() {
        [one] => *one,
        [] => {
            return Err(mismatch(
                MV,
                "the middle strand passing under the top arc",
                format!("no crossing of arc {mp} under arc {top}"),
            ))
        }
        _ => {
            return Err(mismatch(
                MV,
                "a unique middle crossing",
                format!("arc {mp} passes under {top} more than once; give middle_other"),
            ))
        }
    };
    require_apart(MV, &[cx.under_in, bottom, cy.under_out], &[top, mp, other])?;
    if top == mp || top == other {
        return Err(mismatch(MV, "three distinct strands", format!("arc {top} crosses itself")));
    }
    if mp == other {
        return Err(mismatch(
            MV,
            "distinct middle arcs on either side of the top crossing",
            format!("arc {mp} loops under arc {top}"),
        ));
    }
    let (st, sa) = (d.crossings[t].sign, d.crossings[a].sign);
    if (st == sa) != (m_first == up) {
        return Err(mismatch(
            MV,
            "the bottom strand to pass the same side of the top-middle crossing",
            format!("signs of crossings {t}, {a} do not form a triangle"),
        ));
    }
    let swap = |c: Crossing| Crossing {
        over: if c.over == mp { other } else { c.over },
        ..c
    };
    let mut out = d.clone();
    out.crossings[x] = Crossing {
        under_in: cx.under_in,
        under_out: cx.under_out,
        ..swap(cy)
    };
    out.crossings[y] = Crossing {
        under_in: cy.under_in,
        under_out: cy.under_out,
        ..swap(cx)
    };
    Ok(out)
}

fn vertex_at(d: &Diagram, mv: &'static str, vertex: usize) -> Result<Vertex> {
    d.vertices
        .get(vertex)
        .copied()
        .ok_or_else(|| mismatch(mv, "an existing vertex", format!("vertex {vertex} not found")))
}

fn leaf_order(v: &Vertex, sign: Sign) -> [ArcId; 2] {
    match sign {
        Sign::Positive => [v.left, v.right],
        Sign::Negative => [v.right, v.left],
    }
}

fn r5(d: &Diagram, vertex: usize, strand: ArcId, variant: MoveVariant) -> Result<Diagram> {
    const MV: &str = "R5";
    let v = vertex_at(d, MV, vertex)?;
    require_arc(d, MV, strand)?;
    let mut out = d.clone();
    match variant {
        MoveVariant::UnderToPair => {
            let Some(x) = crossing_in(d, strand).filter(|&i| d.crossings[i].over == v.stem) else {
                return Err(mismatch(
                    MV,
                    "the strand passing under the stem",
                    format!("arc {strand} does not enter a crossing under arc {}", v.stem),
                ));
            };
            let c = d.crossings[x];
            require_apart(MV, &[strand, c.under_out], &[v.left, v.right, v.stem])?;
            let [first, second] = leaf_order(&v, c.sign);
            let mid = out.add_arc(false);
            out.crossings[x] = Crossing {
                over: first,
                under_in: c.under_in,
                under_out: mid,
                sign: c.sign,
            };
            out.crossings.push(Crossing {
                over: second,
                under_in: mid,
                under_out: c.under_out,
                sign: c.sign,
            });
        }
        MoveVariant::UnderToStem => {
            require_short(d, MV, strand)?;
            let (Some(x), Some(y)) = (crossing_out(d, strand), crossing_in(d, strand)) else {
                return Err(mismatch(MV, "a strand between two crossings", format!("arc {strand}")));
            };
            let (cx, cy) = (d.crossings[x], d.crossings[y]);
            if x == y || cx.sign != cy.sign || [cx.over, cy.over] != leaf_order(&v, cx.sign) {
                return Err(mismatch(
                    MV,
                    "the strand passing under both leaves with equal signs",
                    format!("crossings {x} and {y}"),
                ));
            }
            require_apart(MV, &[cx.under_in, strand, cy.under_out], &[v.left, v.right, v.stem])?;
            out.crossings[x] = Crossing {
                over: v.stem,
                under_in: cx.under_in,
                under_out: cy.under_out,
                sign: cx.sign,
            };
            remove_crossings(&mut out, vec![y]);
            out.remove_arc(strand);
        }
        MoveVariant::OverToPair => {
            let near = v.stem;
            require_short(d, MV, near)?;
            let found = match v.kind {
                VertexKind::Merge => crossing_in(d, near),
                VertexKind::Split => crossing_out(d, near),
            };
            let Some(x) = found.filter(|&i| d.crossings[i].over == strand) else {
                return Err(mismatch(
                    MV,
                    "the strand passing over the stem",
                    format!("arc {strand} does not cross over arc {near} next to the vertex"),
                ));
            };
            let c = d.crossings[x];
            let far = match v.kind {
                VertexKind::Merge => c.under_out,
                VertexKind::Split => c.under_in,
            };
            require_apart(MV, &[strand], &[v.left, v.right, v.stem, far])?;
            if far == near || far == v.left || far == v.right {
                return Err(mismatch(MV, "a stem without a kink", format!("arc {near}")));
            }
            let a = out.add_arc(false);
            let b = out.add_arc(false);
            remove_crossings(&mut out, vec![x]);
            out.remove_arc(near);
            out.vertices[vertex].stem = far;
            out.vertices[vertex].left = a;
            out.vertices[vertex].right = b;
            for (leaf, new) in [(v.left, a), (v.right, b)] {
                let (under_in, under_out) = match v.kind {
                    VertexKind::Merge => (leaf, new),
                    VertexKind::Split => (new, leaf),
                };
                out.crossings.push(Crossing {
                    over: strand,
                    under_in,
                    under_out,
                    sign: c.sign,
                });
            }
        }
        MoveVariant::OverToStem => {
            if v.left == v.right {
                return Err(mismatch(MV, "distinct leaves", format!("vertex {vertex}")));
            }
            let mut far = [v.left; 2];
            let mut idx = [0usize; 2];
            for (k, leaf) in [v.left, v.right].into_iter().enumerate() {
                require_short(d, MV, leaf)?;
                let found = match v.kind {
                    VertexKind::Merge => crossing_out(d, leaf),
                    VertexKind::Split => crossing_in(d, leaf),
                };
                let Some(i) = found.filter(|&i| d.crossings[i].over == strand) else {
                    return Err(mismatch(
                        MV,
                        "the strand passing over both leaves",
                        format!("arc {strand} does not cross over arc {leaf} next to the vertex"),
                    ));
                };
                idx[k] = i;
                far[k] = match v.kind {
                    VertexKind::Merge => d.crossings[i].under_in,
                    VertexKind::Split => d.crossings[i].under_out,
                };
            }
            require_apart(MV, &[strand], &[v.left, v.right, v.stem, far[0], far[1]])?;
            let sign = d.crossings[idx[0]].sign;
            if sign != d.crossings[idx[1]].sign || far.contains(&v.left) || far.contains(&v.right) {
                return Err(mismatch(
                    MV,
                    "two leaf crossings of equal sign",
                    format!("crossings {} and {}", idx[0], idx[1]),
                ));
            }
            let near = out.add_arc(false);
            remove_crossings(&mut out, idx.to_vec());
            out.remove_arc(v.left);
            out.remove_arc(v.right);
            out.vertices[vertex].left = far[0];
            out.vertices[vertex].right = far[1];
            out.vertices[vertex].stem = near;
            let (under_in, under_out) = match v.kind {
                VertexKind::Merge => (near, v.stem),
                VertexKind::Split => (v.stem, near),
            };
            out.crossings.push(Crossing {
                over: strand,
                under_in,
                under_out,
                sign,
            });
        }
        _ => unreachable!("variant checked by caller"),
    }
    Ok(out)
}

/// Symbolic arcs of the R6 pattern. `A`, `B`, `C` are the far pieces of
/// the left leaf, right leaf and stem; the rest are created by the twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum S {
    A,
    B,
    C,
    A1,
    A2,
    B1,
    B2,
    C1,
}

const OUTER: [S; 3] = [S::A, S::B, S::C];
const INNER: [S; 5] = [S::A1, S::B1, S::A2, S::B2, S::C1];

struct Pattern {
    /// (over, under_in, under_out, sign)
    crossings: [(S, S, S, Sign); 5],
    /// (left, right, stem) after the twist
    vertex: (S, S, S),
}

/// A full turn of the vertex: one kink on each edge and a two-crossing
/// twist of the leaves.
fn pattern(kind: VertexKind, s: Sign) -> Pattern {
    use Sign::{Negative as N, Positive as P};
    use S::*;
    let crossings = match (kind, s) {
        (VertexKind::Merge, P) => [
            (A, A, A1, P),
            (B, B, B1, P),
            (B1, A1, A2, P),
            (A2, B1, B2, P),
            (C1, C1, C, N),
        ],
        (VertexKind::Merge, N) => [
            (A, A, A1, N),
            (B, B, B1, N),
            (A1, B1, B2, N),
            (B2, A1, A2, N),
            (C1, C1, C, P),
        ],
        (VertexKind::Split, P) => [
            (C, C, C1, N),
            (B1, A1, A2, P),
            (A2, B1, B2, P),
            (A2, A2, A, P),
            (B2, B2, B, P),
        ],
        (VertexKind::Split, N) => [
            (C, C, C1, P),
            (A1, B1, B2, N),
            (B2, A1, A2, N),
            (A2, A2, A, N),
            (B2, B2, B, N),
        ],
    };
    let vertex = match kind {
        VertexKind::Merge => (A2, B2, C1),
        VertexKind::Split => (A1, B1, C1),
    };
    Pattern { crossings, vertex }
}

#[derive(Default)]
struct Binding([Option<ArcId>; 8]);

impl Binding {
    fn get(&self, s: S) -> Option<ArcId> {
        self.0[s as usize]
    }

    /// Binds `s` to `id`, failing on a conflicting earlier binding.
    fn bind(&mut self, s: S, id: ArcId) -> bool {
        match self.0[s as usize] {
            Some(old) => old == id,
            None => {
                self.0[s as usize] = Some(id);
                true
            }
        }
    }
}

fn r6_twist(d: &Diagram, vertex: usize, sign: Sign) -> Result<Diagram> {
    const MV: &str = "R6";
    let v = vertex_at(d, MV, vertex)?;
    if v.left == v.right || v.left == v.stem || v.right == v.stem {
        return Err(mismatch(MV, "a vertex with three distinct arcs", format!("vertex {vertex}")));
    }
    let p = pattern(v.kind, sign);
    let mut out = d.clone();
    let mut bind = Binding::default();
    bind.bind(S::A, v.left);
    bind.bind(S::B, v.right);
    bind.bind(S::C, v.stem);
    for s in INNER {
        bind.bind(s, out.add_arc(false));
    }
    let id = |s: S| bind.get(s).expect("all symbols bound");
    let (l, r, st) = p.vertex;
    out.vertices[vertex] = Vertex {
        kind: v.kind,
        left: id(l),
        right: id(r),
        stem: id(st),
    };
    for (o, i, u, s) in p.crossings {
        out.crossings.push(Crossing {
            over: id(o),
            under_in: id(i),
            under_out: id(u),
            sign: s,
        });
    }
    Ok(out)
}

fn r6_untwist(d: &Diagram, vertex: usize, sign: Sign) -> Result<Diagram> {
    const MV: &str = "R6";
    let v = vertex_at(d, MV, vertex)?;
    let p = pattern(v.kind, sign);
    let fail = |detail: String| mismatch(MV, "a fully twisted vertex", detail);
    let mut bind = Binding::default();
    bind.bind(p.vertex.0, v.left);
    bind.bind(p.vertex.1, v.right);
    bind.bind(p.vertex.2, v.stem);
    let mut matched: [Option<usize>; 5] = [None; 5];
    loop {
        let mut progress = false;
        for (k, &(o, i, u, s)) in p.crossings.iter().enumerate() {
            if matched[k].is_some() {
                continue;
            }
            let found = if let Some(id) = bind.get(u) {
                crossing_out(d, id)
            } else if let Some(id) = bind.get(i) {
                crossing_in(d, id)
            } else {
                continue;
            };
            let Some(x) = found else {
                return Err(fail(format!("no crossing for pattern crossing {k}")));
            };
            let c = d.crossings[x];
            if c.sign != s || !(bind.bind(o, c.over) && bind.bind(i, c.under_in) && bind.bind(u, c.under_out)) {
                return Err(fail(format!("crossing {x} does not fit the pattern")));
            }
            matched[k] = Some(x);
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let idx: Vec<usize> = matched.iter().flatten().copied().collect();
    if idx.len() != 5 {
        return Err(fail("pattern incomplete".into()));
    }
    let mut seen = idx.clone();
    seen.sort_unstable();
    seen.dedup();
    let mut arcs: Vec<ArcId> = OUTER.iter().chain(INNER.iter()).map(|&s| bind.get(s).unwrap()).collect();
    arcs.sort_unstable();
    arcs.dedup();
    if seen.len() != 5 || arcs.len() != 8 {
        return Err(fail("pattern arcs or crossings coincide".into()));
    }
    for s in INNER {
        let a = bind.get(s).unwrap();
        if d.marked_arc == Some(a) || d.over_crossings(a).iter().any(|x| !idx.contains(x)) {
            return Err(fail(format!("arc {a} is used outside the twist")));
        }
    }
    let mut out = d.clone();
    remove_crossings(&mut out, idx);
    for s in INNER {
        out.remove_arc(bind.get(s).unwrap());
    }
    out.vertices[vertex] = Vertex {
        kind: v.kind,
        left: bind.get(S::A).unwrap(),
        right: bind.get(S::B).unwrap(),
        stem: bind.get(S::C).unwrap(),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{is_isomorphic, Arc};

    fn open(ids: &[u32]) -> Vec<Arc> {
        ids.iter()
            .map(|&i| Arc {
                id: ArcId(i),
                closed: false,
            })
            .collect()
    }

    /// Theta graph with a circle lying over it.
    fn theta_and_circle() -> Diagram {
        let mut d = Diagram::theta();
        d.arcs.push(Arc {
            id: ArcId(3),
            closed: true,
        });
        d
    }

    #[test]
    fn r2_round_trip_on_open_arc() {
        let d = theta_and_circle();
        let added = apply_move(&d, &MoveSpec::r2_add(ArcId(2), ArcId(3), Sign::Positive)).unwrap();
        assert_eq!(added.crossings.len(), 2);
        assert_eq!(added.arcs.len(), 6);
        let back = apply_move(&added, &MoveSpec::r2_remove(ArcId(4))).unwrap();
        assert!(is_isomorphic(&back, &d));
    }

    #[test]
    fn r2_round_trip_on_closed_arc() {
        let mut d = theta_and_circle();
        d.arcs.push(Arc {
            id: ArcId(4),
            closed: true,
        });
        let added = apply_move(&d, &MoveSpec::r2_add(ArcId(4), ArcId(3), Sign::Negative)).unwrap();
        assert!(!added.is_closed(ArcId(4)));
        let back = apply_move(&added, &MoveSpec::r2_remove(ArcId(5))).unwrap();
        assert!(is_isomorphic(&back, &d));
    }

    #[test]
    fn r2_remove_rejects_equal_signs() {
        let d = Diagram {
            arcs: [
                open(&[0, 1, 2]),
                vec![Arc {
                    id: ArcId(3),
                    closed: true,
                }],
            ]
            .concat(),
            crossings: vec![
                Crossing {
                    over: ArcId(3),
                    under_in: ArcId(0),
                    under_out: ArcId(1),
                    sign: Sign::Positive,
                },
                Crossing {
                    over: ArcId(3),
                    under_in: ArcId(1),
                    under_out: ArcId(2),
                    sign: Sign::Positive,
                },
            ],
            vertices: vec![
                Vertex {
                    kind: VertexKind::Merge,
                    left: ArcId(2),
                    right: ArcId(5),
                    stem: ArcId(4),
                },
                Vertex {
                    kind: VertexKind::Split,
                    left: ArcId(0),
                    right: ArcId(5),
                    stem: ArcId(4),
                },
            ],
            marked_arc: None,
        };
        let mut d = d;
        d.arcs.extend(open(&[4, 5]));
        assert_eq!(d.validate(), Ok(()));
        assert!(matches!(
            apply_move(&d, &MoveSpec::r2_remove(ArcId(1))),
            Err(Error::MoveMismatch { .. })
        ));
    }

    #[test]
    fn r6_twist_then_untwist() {
        for vertex in 0..2 {
            for (tw, un) in [
                (MoveVariant::TwistPositive, MoveVariant::UntwistPositive),
                (MoveVariant::TwistNegative, MoveVariant::UntwistNegative),
            ] {
                let d = Diagram::theta();
                let t = apply_move(&d, &MoveSpec::r6(vertex, tw)).unwrap();
                assert_eq!(t.crossings.len(), 5);
                assert!(apply_move(&t, &MoveSpec::r6(vertex, un)).is_ok());
                let back = apply_move(&t, &MoveSpec::r6(vertex, un)).unwrap();
                assert!(is_isomorphic(&back, &d));
                let wrong = if un == MoveVariant::UntwistPositive {
                    MoveVariant::UntwistNegative
                } else {
                    MoveVariant::UntwistPositive
                };
                assert!(apply_move(&t, &MoveSpec::r6(vertex, wrong)).is_err());
            }
        }
    }

    #[test]
    fn r5_round_trips() {
        let d = theta_and_circle();
        // push the circle under stem 2 with R2, then over-variant needs
        // the circle over the stem: use R2 the other way round
        let over = apply_move(&d, &MoveSpec::r2_add(ArcId(2), ArcId(3), Sign::Positive)).unwrap();
        // arcs: 2 (from merge to crossing), 4 middle, 5 (to split)
        let pair = apply_move(&over, &MoveSpec::r5(0, ArcId(3), MoveVariant::OverToPair)).unwrap();
        let back = apply_move(&pair, &MoveSpec::r5(0, ArcId(3), MoveVariant::OverToStem)).unwrap();
        assert!(is_isomorphic(&back, &over));

        let pair = apply_move(&over, &MoveSpec::r5(1, ArcId(3), MoveVariant::OverToPair)).unwrap();
        let back = apply_move(&pair, &MoveSpec::r5(1, ArcId(3), MoveVariant::OverToStem)).unwrap();
        assert!(is_isomorphic(&back, &over));

        let under = apply_move(&d, &MoveSpec::r2_add(ArcId(3), ArcId(2), Sign::Negative)).unwrap();
        let pair = apply_move(&under, &MoveSpec::r5(0, ArcId(3), MoveVariant::UnderToPair)).unwrap();
        assert_eq!(pair.crossings.len(), 3);
        let mid = pair.next_arc_id();
        let back = apply_move(&pair, &MoveSpec::r5(0, ArcId(mid.0 - 1), MoveVariant::UnderToStem)).unwrap();
        assert!(is_isomorphic(&back, &under));
    }

    #[test]
    fn r3_involution() {
        // bottom strand 0 -> 1 -> 2 under circle 10 (middle) then circle 11
        // (top); middle strand 10 is cut by 11 into pieces 10 and 12
        let c = |over, i, o, s| Crossing {
            over: ArcId(over),
            under_in: ArcId(i),
            under_out: ArcId(o),
            sign: s,
        };
        let mut d = Diagram {
            arcs: open(&[0, 1, 2, 10, 12, 20]),
            crossings: vec![
                c(10, 0, 1, Sign::Positive),
                c(11, 1, 2, Sign::Positive),
                c(11, 10, 12, Sign::Positive),
            ],
            vertices: vec![
                Vertex {
                    kind: VertexKind::Merge,
                    left: ArcId(2),
                    right: ArcId(12),
                    stem: ArcId(20),
                },
                Vertex {
                    kind: VertexKind::Split,
                    left: ArcId(0),
                    right: ArcId(10),
                    stem: ArcId(20),
                },
            ],
            marked_arc: None,
        };
        d.arcs.push(Arc {
            id: ArcId(11),
            closed: true,
        });
        assert_eq!(d.validate(), Ok(()));
        // m-crossing first along the bottom, middle piece 10 enters the
        // top crossing: equal signs needed
        let moved = apply_move(&d, &MoveSpec::r3(ArcId(1), ArcId(11))).unwrap();
        assert_eq!(moved.crossings[0].over, ArcId(11));
        assert_eq!(moved.crossings[1].over, ArcId(12));
        let back = apply_move(&moved, &MoveSpec::r3(ArcId(1), ArcId(11))).unwrap();
        assert_eq!(back, d);

        let mut bad = d.clone();
        bad.crossings[1].sign = Sign::Negative;
        assert!(apply_move(&bad, &MoveSpec::r3(ArcId(1), ArcId(11))).is_err());
    }

    #[test]
    fn r3_rejects_middle_loop() {
        // arc 1 passes under arc 0 and returns as itself
        let c = |over, i, o, s| Crossing {
            over: ArcId(over),
            under_in: ArcId(i),
            under_out: ArcId(o),
            sign: s,
        };
        let d = Diagram {
            arcs: open(&[0, 1, 2, 3, 4, 5]),
            crossings: vec![
                c(1, 3, 0, Sign::Negative),
                c(0, 1, 1, Sign::Negative),
                c(1, 0, 2, Sign::Negative),
                c(1, 5, 3, Sign::Positive),
                c(0, 2, 4, Sign::Negative),
                c(0, 4, 5, Sign::Positive),
            ],
            vertices: vec![],
            marked_arc: None,
        };
        assert_eq!(d.validate(), Ok(()));
        let err = apply_move(&d, &MoveSpec::r3(ArcId(5), ArcId(0))).unwrap_err();
        assert!(err.to_string().contains("loops under"), "{err}");
    }

    #[test]
    fn move_spec_json() {
        let m = MoveSpec::r5(0, ArcId(3), MoveVariant::OverToPair);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"move":"R5","site":{"vertex":0,"strand":3},"variant":"over_to_pair"}"#
        );
        assert_eq!(serde_json::from_str::<MoveSpec>(&s).unwrap(), m);
        let missing = MoveSpec {
            variant: None,
            ..m
        };
        assert!(matches!(
            apply_move(&Diagram::theta(), &missing),
            Err(Error::Usage(_))
        ));
    }
}
