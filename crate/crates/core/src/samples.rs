//! Small diagrams and structures used by the examples, tests and CLI.

use crate::diagram::{
    connected_sum, Arc, ArcId, Attachment, BridgeEnd, Crossing, Diagram, Side, Sign, Vertex,
    VertexKind,
};
use crate::diagram::{apply_move, MoveSpec, MoveVariant};
use crate::formats::{MoveFixture, SumFixture};
use crate::group::Subgroup;
use crate::mgr::MultipleGroupRack;
use crate::rack::{GFamily, Rack};

fn open_arcs(n: u32) -> Vec<Arc> {
    (0..n)
        .map(|i| Arc {
            id: ArcId(i),
            closed: false,
        })
        .collect()
}

fn cross(over: u32, under_in: u32, under_out: u32, sign: Sign) -> Crossing {
    Crossing {
        over: ArcId(over),
        under_in: ArcId(under_in),
        under_out: ArcId(under_out),
        sign,
    }
}

/// A circle with one curl: arc `0` passes under itself.
pub fn kinked_circle(sign: Sign) -> Diagram {
    Diagram {
        arcs: open_arcs(1),
        crossings: vec![cross(0, 0, 0, sign)],
        ..Default::default()
    }
}

/// Trefoil knot, all crossings of sign `sign`.
pub fn trefoil(sign: Sign) -> Diagram {
    Diagram {
        arcs: open_arcs(3),
        crossings: (0..3).map(|k| cross((k + 2) % 3, k, (k + 1) % 3, sign)).collect(),
        ..Default::default()
    }
}

/// Hopf link: each component passes under the other once.
pub fn hopf_link(sign: Sign) -> Diagram {
    Diagram {
        arcs: open_arcs(2),
        crossings: vec![cross(1, 0, 0, sign), cross(0, 1, 1, sign)],
        ..Default::default()
    }
}

/// Two kinked circles joined by a bridge leaving the first and entering
/// the second. The bridge is the marked arc.
pub fn bridged_kinks(first: Sign, second: Sign) -> Diagram {
    connected_sum(
        &kinked_circle(first),
        Attachment {
            arc: ArcId(0),
            side: Side::Left,
            end: BridgeEnd::Source,
        },
        &kinked_circle(second),
        Attachment {
            arc: ArcId(0),
            side: Side::Left,
            end: BridgeEnd::Target,
        },
    )
    .expect("sample diagrams are valid")
}

/// Two unknotted circles joined by a bridge.
pub fn bridged_circles() -> Diagram {
    connected_sum(
        &Diagram::circle(),
        Attachment {
            arc: ArcId(0),
            side: Side::Left,
            end: BridgeEnd::Source,
        },
        &Diagram::circle(),
        Attachment {
            arc: ArcId(0),
            side: Side::Right,
            end: BridgeEnd::Target,
        },
    )
    .expect("sample diagrams are valid")
}

/// A strand passing under two others that cross each other, next to a
/// theta graph that closes everything up. Ready for R3 with bottom `1`,
/// top `11`.
pub fn triangle() -> Diagram {
    let mut d = Diagram {
        arcs: [0, 1, 2, 10, 12, 20]
            .iter()
            .map(|&i| Arc {
                id: ArcId(i),
                closed: false,
            })
            .collect(),
        crossings: vec![
            cross(10, 0, 1, Sign::Positive),
            cross(11, 1, 2, Sign::Positive),
            cross(11, 10, 12, Sign::Positive),
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
    d
}

/// Theta graph with a circle lying over its stem (arc `3` over arc `2`).
pub fn theta_circle_over_stem() -> Diagram {
    let mut d = Diagram::theta();
    d.arcs.push(Arc {
        id: ArcId(3),
        closed: true,
    });
    apply_move(&d, &MoveSpec::r2_add(ArcId(2), ArcId(3), Sign::Positive)).expect("valid site")
}

/// Theta graph with a circle passing under its stem.
pub fn theta_circle_under_stem() -> Diagram {
    let mut d = Diagram::theta();
    d.arcs.push(Arc {
        id: ArcId(3),
        closed: true,
    });
    apply_move(&d, &MoveSpec::r2_add(ArcId(3), ArcId(2), Sign::Negative)).expect("valid site")
}

fn fixture(before: Diagram, mv: MoveSpec) -> MoveFixture {
    let after = apply_move(&before, &mv).expect("fixture move applies");
    MoveFixture { before, mv, after }
}

/// One or more fixtures for every move kind and variant.
pub fn move_fixtures() -> Vec<(String, MoveFixture)> {
    let mut theta_circle = Diagram::theta();
    theta_circle.arcs.push(Arc {
        id: ArcId(3),
        closed: true,
    });
    let over = theta_circle_over_stem();
    let under = theta_circle_under_stem();
    let out = vec![
        ("r2_add_open", fixture(theta_circle.clone(), MoveSpec::r2_add(ArcId(2), ArcId(3), Sign::Positive))),
        ("r2_add_closed", fixture(theta_circle.clone(), MoveSpec::r2_add(ArcId(3), ArcId(2), Sign::Negative))),
        ("r2_add_trefoil", fixture(trefoil(Sign::Positive), MoveSpec::r2_add(ArcId(0), ArcId(1), Sign::Negative))),
        ("r2_remove_open", fixture(over.clone(), MoveSpec::r2_remove(ArcId(4)))),
        ("r2_remove_closed", fixture(under.clone(), MoveSpec::r2_remove(ArcId(4)))),
        ("r3_triangle", fixture(triangle(), MoveSpec::r3(ArcId(1), ArcId(11)))),
        ("r5_over_to_pair_merge", fixture(over.clone(), MoveSpec::r5(0, ArcId(3), MoveVariant::OverToPair))),
        ("r5_over_to_pair_split", fixture(over.clone(), MoveSpec::r5(1, ArcId(3), MoveVariant::OverToPair))),
        ("r5_under_to_pair_merge", fixture(under.clone(), MoveSpec::r5(0, ArcId(3), MoveVariant::UnderToPair))),
        ("r5_under_to_pair_split", fixture(under.clone(), MoveSpec::r5(1, ArcId(4), MoveVariant::UnderToPair))),
        ("r6_twist_positive_merge", fixture(Diagram::theta(), MoveSpec::r6(0, MoveVariant::TwistPositive))),
        ("r6_twist_negative_merge", fixture(Diagram::theta(), MoveSpec::r6(0, MoveVariant::TwistNegative))),
        ("r6_twist_positive_split", fixture(Diagram::theta(), MoveSpec::r6(1, MoveVariant::TwistPositive))),
        ("r6_twist_negative_split", fixture(Diagram::theta(), MoveSpec::r6(1, MoveVariant::TwistNegative))),
        ("reverse_circle", fixture(over.clone(), MoveSpec::reverse_circle(ArcId(3)))),
    ];
    let mut inverses = Vec::new();
    for (name, f) in &out {
        let back = match name {
            n if n.starts_with("r3") => Some(f.mv.clone()),
            n if n.starts_with("r5_over_to_pair") => Some(MoveSpec::r5(
                f.mv.site.vertex.unwrap(),
                f.mv.site.strand.unwrap(),
                MoveVariant::OverToStem,
            )),
            n if n.starts_with("r5_under_to_pair") => Some(MoveSpec::r5(
                f.mv.site.vertex.unwrap(),
                ArcId(f.after.next_arc_id().0 - 1),
                MoveVariant::UnderToStem,
            )),
            n if n.starts_with("r6_twist_positive") => {
                Some(MoveSpec::r6(f.mv.site.vertex.unwrap(), MoveVariant::UntwistPositive))
            }
            n if n.starts_with("r6_twist_negative") => {
                Some(MoveSpec::r6(f.mv.site.vertex.unwrap(), MoveVariant::UntwistNegative))
            }
            _ => None,
        };
        if let Some(mv) = back {
            let inv = name.replace("r3_", "r3_back_").replace("to_pair", "to_stem").replace("twist", "untwist");
            inverses.push((inv, fixture(f.after.clone(), mv)));
        }
    }
    let mut out: Vec<(String, MoveFixture)> = out.into_iter().map(|(n, f)| (n.to_string(), f)).collect();
    out.extend(inverses);
    out
}

/// Bridged diagrams with a marked arc.
pub fn sum_fixtures() -> Vec<(String, SumFixture)> {
    let mut out = Vec::new();
    for (a, an) in [(Sign::Positive, "pos"), (Sign::Negative, "neg")] {
        for (b, bn) in [(Sign::Positive, "pos"), (Sign::Negative, "neg")] {
            out.push((
                format!("bridged_kinks_{an}_{bn}"),
                SumFixture {
                    diagram: bridged_kinks(a, b),
                    semidirect_star: Some(true),
                },
            ));
        }
    }
    out.push((
        "bridged_circles".to_string(),
        SumFixture {
            diagram: bridged_circles(),
            semidirect_star: Some(false),
        },
    ));
    let trefoil_sum = connected_sum(
        &trefoil(Sign::Positive),
        Attachment {
            arc: ArcId(0),
            side: Side::Right,
            end: BridgeEnd::Source,
        },
        &Diagram::circle(),
        Attachment {
            arc: ArcId(0),
            side: Side::Left,
            end: BridgeEnd::Target,
        },
    )
    .expect("valid");
    out.push((
        "bridged_trefoil_circle".to_string(),
        SumFixture {
            diagram: trefoil_sum,
            semidirect_star: None,
        },
    ));
    out
}

/// The 18-element MGR of the Z3 family over S3.
pub fn associated_example() -> MultipleGroupRack {
    MultipleGroupRack::associated(&GFamily::example_z3_s3()).expect("valid family")
}

/// The 108-element MGR of the Z3 family over S3 ⋉ S3.
pub fn semidirect_example() -> MultipleGroupRack {
    let f = GFamily::example_z3_s3();
    let n = Subgroup::full(f.group());
    MultipleGroupRack::semidirect(&f, &n).expect("valid family")
}

/// MGR of the non-quandle rack `x ∗ y = x + 1 (mod 3)`.
pub fn associated_shift_rack() -> MultipleGroupRack {
    let rows: Vec<Vec<usize>> = (0..3).map(|x| vec![(x + 1) % 3; 3]).collect();
    let rack = Rack::from_table(&rows).expect("shift rack");
    MultipleGroupRack::associated(&GFamily::from_rack(&rack).expect("rack")).expect("valid family")
}
