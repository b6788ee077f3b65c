use mgrack::coloring::{count_colorings, enumerate_colorings, is_coloring};
use mgrack::diagram::{connected_sum, is_isomorphic, ArcId, Attachment, BridgeEnd, Diagram, Side, Sign};
use mgrack::group::{verify_group_axioms, FiniteGroup};
use mgrack::rack::{enumerate_racks, GFamily, Rack};
use mgrack::{samples, MultipleGroupRack};
use proptest::prelude::*;

fn bases() -> Vec<Diagram> {
    vec![
        Diagram::circle(),
        Diagram::theta(),
        samples::kinked_circle(Sign::Positive),
        samples::kinked_circle(Sign::Negative),
        samples::trefoil(Sign::Positive),
        samples::hopf_link(Sign::Negative),
        samples::triangle(),
    ]
}

fn side(left: bool) -> Side {
    if left {
        Side::Left
    } else {
        Side::Right
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direct_products_are_groups(a in 1usize..5, b in 1usize..5) {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b)).unwrap();
        prop_assert_eq!(g.order(), a * b);
        prop_assert!(verify_group_axioms(&g.table_rows(), g.identity()).unwrap());
    }

    #[test]
    fn one_changed_entry_breaks_a_group(n in 2usize..7, i in 0usize..7, j in 0usize..7, shift in 1usize..7) {
        let (i, j) = (i % n, j % n);
        let g = FiniteGroup::cyclic(n);
        let mut t = g.table_rows();
        t[i][j] = (t[i][j] + 1 + shift % (n - 1)) % n;
        prop_assert!(!verify_group_axioms(&t, g.identity()).unwrap());
    }

    #[test]
    fn racks_promote_to_valid_mgrs(n in 1usize..4, pick in any::<prop::sample::Index>()) {
        let racks = enumerate_racks(n);
        let r = pick.get(&racks);
        let f = GFamily::from_rack(r).unwrap();
        prop_assert!(f.verify_gfamily_axioms());
        let m = MultipleGroupRack::associated(&f).unwrap();
        prop_assert!(m.verify_mgr_axioms().ok);
        prop_assert!(m.right_translations_bijective());
        prop_assert_eq!(m.is_mcq(), r.is_quandle());
    }

    #[test]
    fn dihedral_quandles_are_quandles(n in 1usize..12) {
        prop_assert!(Rack::dihedral_quandle(n).is_quandle());
    }

    #[test]
    fn semidirect_star_laws(x in 0usize..108, y in 0usize..108, z in 0usize..108) {
        let m = samples::semidirect_example();
        prop_assert_eq!(m.star(m.star(x, y), z), m.star(m.star(x, z), m.star(y, z)));
        prop_assert_eq!(m.star_inverse(m.star(x, y), y), x);
        let l = m.component_of(y);
        let yz = m.mul(y, m.identity(l)).unwrap();
        prop_assert_eq!(yz, y);
    }

    #[test]
    fn corrupted_star_breaks_an_axiom(u in 0usize..18, v in 0usize..18, shift in 1usize..18) {
        let m = samples::associated_example();
        let bad = m.with_star_entry(u, v, (m.star(u, v) + shift) % 18);
        prop_assert!(!bad.verify_mgr_axioms().ok);
    }

    #[test]
    fn connected_sum_is_symmetric(
        p1 in any::<prop::sample::Index>(),
        p2 in any::<prop::sample::Index>(),
        a1 in any::<prop::sample::Index>(),
        a2 in any::<prop::sample::Index>(),
        l1 in any::<bool>(),
        l2 in any::<bool>(),
    ) {
        let b = bases();
        let (d1, d2) = (p1.get(&b), p2.get(&b));
        let src = Attachment { arc: a1.get(&d1.arcs).id, side: side(l1), end: BridgeEnd::Source };
        let dst = Attachment { arc: a2.get(&d2.arcs).id, side: side(l2), end: BridgeEnd::Target };
        let s = connected_sum(d1, src, d2, dst).unwrap();
        prop_assert_eq!(s.validate(), Ok(()));
        let alpha = s.marked_arc.unwrap();
        let incidences: usize = s
            .vertices
            .iter()
            .map(|v| [v.left, v.right, v.stem].iter().filter(|&&a| a == alpha).count())
            .sum();
        prop_assert_eq!(incidences, 2);
        prop_assert!(s.crossings.iter().all(|c| ![c.over, c.under_in, c.under_out].contains(&alpha)));
        let t = connected_sum(d2, dst, d1, src).unwrap();
        prop_assert!(is_isomorphic(&s, &t));
    }

    #[test]
    fn counts_do_not_depend_on_workers(pick in any::<prop::sample::Index>(), jobs in 2usize..9) {
        let mut b = bases();
        b.push(samples::bridged_kinks(Sign::Positive, Sign::Negative));
        let d = pick.get(&b);
        let m = samples::semidirect_example();
        prop_assert_eq!(count_colorings(d, &m, 1).unwrap(), count_colorings(d, &m, jobs).unwrap());
    }

    #[test]
    fn enumerated_colorings_are_colorings(pick in any::<prop::sample::Index>()) {
        let b = bases();
        let d = pick.get(&b);
        let m = samples::associated_example();
        let all = enumerate_colorings(d, &m, None).unwrap();
        prop_assert_eq!(all.len() as u128, count_colorings(d, &m, 1).unwrap());
        for c in &all {
            prop_assert!(is_coloring(d, &m, c));
        }
        let mut sorted = all.clone();
        sorted.sort_by(|x, y| x.colors.cmp(&y.colors));
        prop_assert_eq!(sorted, all);
    }
}

#[test]
fn closed_arc_attachment_opens_it() {
    let c = Diagram::circle();
    let at = |end| Attachment {
        arc: ArcId(0),
        side: Side::Left,
        end,
    };
    let s = connected_sum(&c, at(BridgeEnd::Source), &c, at(BridgeEnd::Target)).unwrap();
    assert!(s.arcs.iter().all(|a| !a.closed));
}

#[test]
fn curl_changes_the_count_for_a_non_quandle() {
    let m = samples::associated_shift_rack();
    let plain = count_colorings(&Diagram::circle(), &m, 1).unwrap();
    let curled = count_colorings(&samples::kinked_circle(Sign::Positive), &m, 1).unwrap();
    assert_eq!(plain, 9);
    assert_ne!(plain, curled);
    let q = samples::associated_example();
    assert_eq!(
        count_colorings(&Diagram::circle(), &q, 1).unwrap(),
        count_colorings(&samples::kinked_circle(Sign::Negative), &q, 1).unwrap()
    );
}
