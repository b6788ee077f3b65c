//! Colorings of diagrams by multiple group racks.
//!
//! A coloring assigns an element of the MGR to every arc so that at each
//! crossing and vertex the coloring conditions hold (see
//! [`crate::diagram`] for the conventions). The search assigns arcs one at
//! a time and propagates every condition that becomes determined.

use serde::Serialize;

use crate::diagram::{ArcId, Diagram, Sign};
use crate::error::{Error, Result};
use crate::mgr::MultipleGroupRack;

const UNSET: u32 = u32::MAX;

/// Colors indexed like `Diagram::arcs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn color_of(&self, d: &Diagram, arc: ArcId) -> Option<usize> {
        d.position(arc).map(|p| self.colors[p])
    }
}

#[derive(Debug, Clone, Copy)]
enum Rule {
    Crossing {
        over: usize,
        under_in: usize,
        under_out: usize,
        sign: Sign,
    },
    Vertex {
        left: usize,
        right: usize,
        stem: usize,
    },
}

impl Rule {
    fn arcs(&self) -> [usize; 3] {
        match *self {
            Rule::Crossing {
                over,
                under_in,
                under_out,
                ..
            } => [over, under_in, under_out],
            Rule::Vertex { left, right, stem } => [left, right, stem],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branching {
    /// Lowest unset arc first; solutions come out in lexicographic order.
    Lex,
    /// Unset arc touching the most set arcs first.
    Constrained,
}

struct Problem<'a> {
    m: &'a MultipleGroupRack,
    rules: Vec<Rule>,
    touching: Vec<Vec<usize>>,
    arcs: usize,
}

impl<'a> Problem<'a> {
    fn new(d: &Diagram, m: &'a MultipleGroupRack) -> Result<Problem<'a>> {
        d.validate().map_err(Error::InvalidDiagram)?;
        let pos = |id| d.position(id).expect("validated");
        let mut rules = Vec::new();
        for c in &d.crossings {
            rules.push(Rule::Crossing {
                over: pos(c.over),
                under_in: pos(c.under_in),
                under_out: pos(c.under_out),
                sign: c.sign,
            });
        }
        for v in &d.vertices {
            rules.push(Rule::Vertex {
                left: pos(v.left),
                right: pos(v.right),
                stem: pos(v.stem),
            });
        }
        let arcs = d.arcs.len();
        let mut touching = vec![Vec::new(); arcs];
        for (i, r) in rules.iter().enumerate() {
            let mut a = r.arcs().to_vec();
            a.sort_unstable();
            a.dedup();
            for x in a {
                touching[x].push(i);
            }
        }
        Ok(Problem {
            m,
            rules,
            touching,
            arcs,
        })
    }

    /// Groups of arcs linked by rules; counts multiply across groups.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.arcs).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for r in &self.rules {
            let [a, b, c] = r.arcs();
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            parent[rb] = ra;
            let ra = find(&mut parent, a);
            let rc = find(&mut parent, c);
            parent[rc] = ra;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.arcs {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    fn under_out(&self, under_in: usize, over: usize, sign: Sign) -> usize {
        match sign {
            Sign::Positive => self.m.star(under_in, over),
            Sign::Negative => self.m.star_inverse(under_in, over),
        }
    }

    fn under_in(&self, under_out: usize, over: usize, sign: Sign) -> usize {
        match sign {
            Sign::Positive => self.m.star_inverse(under_out, over),
            Sign::Negative => self.m.star(under_out, over),
        }
    }

    fn same_component(&self, a: usize, b: usize) -> bool {
        self.m.component_of(a) == self.m.component_of(b)
    }
}

struct State {
    color: Vec<u32>,
    trail: Vec<usize>,
}

impl State {
    fn new(n: usize) -> State {
        State {
            color: vec![UNSET; n],
            trail: Vec::new(),
        }
    }

    fn get(&self, x: usize) -> Option<usize> {
        let c = self.color[x];
        (c != UNSET).then_some(c as usize)
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.color[x] = UNSET;
        }
    }
}

/// Sets `x` to `v` and propagates. Returns false on a contradiction; the
/// caller undoes the trail.
fn assign(p: &Problem, s: &mut State, x: usize, v: usize) -> bool {
    let mut queue = vec![(x, v)];
    while let Some((x, v)) = queue.pop() {
        match s.get(x) {
            Some(old) if old == v => continue,
            Some(_) => return false,
            None => {
                s.color[x] = v as u32;
                s.trail.push(x);
            }
        }
        for &r in &p.touching[x] {
            let mut want = |y: usize, w: usize, s: &State| -> bool {
                match s.get(y) {
                    Some(c) => c == w,
                    None => {
                        queue.push((y, w));
                        true
                    }
                }
            };
            match p.rules[r] {
                Rule::Crossing {
                    over,
                    under_in,
                    under_out,
                    sign,
                } => {
                    let Some(o) = s.get(over) else { continue };
                    match (s.get(under_in), s.get(under_out)) {
                        (Some(i), _) => {
                            if !want(under_out, p.under_out(i, o, sign), s) {
                                return false;
                            }
                        }
                        (None, Some(u)) => {
                            if !want(under_in, p.under_in(u, o, sign), s) {
                                return false;
                            }
                        }
                        (None, None) => {}
                    }
                }
                Rule::Vertex { left, right, stem } => {
                    let m = p.m;
                    let ok = match (s.get(left), s.get(right), s.get(stem)) {
                        (Some(l), Some(r), _) => {
                            p.same_component(l, r) && want(stem, m.mul(l, r).unwrap(), s)
                        }
                        (Some(l), None, Some(t)) => {
                            p.same_component(l, t) && want(right, m.mul(m.inv(l), t).unwrap(), s)
                        }
                        (None, Some(r), Some(t)) => {
                            p.same_component(r, t) && want(left, m.mul(t, m.inv(r)).unwrap(), s)
                        }
                        _ => true,
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn pick(p: &Problem, s: &State, scope: &[usize], how: Branching) -> Option<usize> {
    match how {
        Branching::Lex => scope.iter().copied().find(|&x| s.get(x).is_none()),
        Branching::Constrained => scope
            .iter()
            .copied()
            .filter(|&x| s.get(x).is_none())
            .max_by_key(|&x| {
                let set: usize = p.touching[x]
                    .iter()
                    .map(|&r| p.rules[r].arcs().iter().filter(|&&y| s.get(y).is_some()).count())
                    .sum();
                // ties go to the lowest index
                (set, std::cmp::Reverse(x))
            }),
    }
}

/// Candidate values for `x`. A vertex neighbour that is already set
/// confines `x` to its component.
fn candidates(p: &Problem, s: &State, x: usize) -> std::ops::Range<usize> {
    for &r in &p.touching[x] {
        if let Rule::Vertex { left, right, stem } = p.rules[r] {
            for y in [left, right, stem] {
                if let Some(c) = s.get(y) {
                    return p.m.component_range(p.m.component_of(c));
                }
            }
        }
    }
    0..p.m.len()
}

fn count_rec(p: &Problem, s: &mut State, scope: &[usize]) -> u128 {
    let Some(x) = pick(p, s, scope, Branching::Constrained) else {
        return 1;
    };
    let mut total = 0;
    for v in candidates(p, s, x) {
        let mark = s.trail.len();
        if assign(p, s, x, v) {
            total += count_rec(p, s, scope);
        }
        s.undo(mark);
    }
    total
}

fn count_scope(p: &Problem, scope: &[usize], jobs: usize) -> u128 {
    let s = State::new(p.arcs);
    let Some(x) = pick(p, &s, scope, Branching::Constrained) else {
        return 1;
    };
    let n = p.m.len();
    let jobs = jobs.clamp(1, n.max(1));
    let branch = |w: usize| -> u128 {
        let mut s = State::new(p.arcs);
        let mut total = 0;
        for v in (w..n).step_by(jobs) {
            let mark = s.trail.len();
            if assign(p, &mut s, x, v) {
                total += count_rec(p, &mut s, scope);
            }
            s.undo(mark);
        }
        total
    };
    if jobs == 1 {
        return branch(0);
    }
    std::thread::scope(|sc| {
        let handles: Vec<_> = (0..jobs).map(|w| sc.spawn(move || branch(w))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    })
}

/// Number of colorings of `d` by `m`, using up to `jobs` threads.
pub fn count_colorings(d: &Diagram, m: &MultipleGroupRack, jobs: usize) -> Result<u128> {
    let p = Problem::new(d, m)?;
    let mut total: u128 = 1;
    for scope in p.components() {
        let c = count_scope(&p, &scope, jobs);
        if c == 0 {
            return Ok(0);
        }
        total = total
            .checked_mul(c)
            .ok_or_else(|| Error::Usage("coloring count overflows u128".into()))?;
    }
    Ok(total)
}

fn enumerate_rec(p: &Problem, s: &mut State, all: &[usize], limit: usize, out: &mut Vec<Coloring>) {
    if out.len() >= limit {
        return;
    }
    let Some(x) = pick(p, s, all, Branching::Lex) else {
        out.push(Coloring {
            colors: s.color.iter().map(|&c| c as usize).collect(),
        });
        return;
    };
    for v in candidates(p, s, x) {
        let mark = s.trail.len();
        if assign(p, s, x, v) {
            enumerate_rec(p, s, all, limit, out);
        }
        s.undo(mark);
        if out.len() >= limit {
            return;
        }
    }
}

/// All colorings in lexicographic order of the color vector, up to `limit`.
pub fn enumerate_colorings(d: &Diagram, m: &MultipleGroupRack, limit: Option<usize>) -> Result<Vec<Coloring>> {
    let p = Problem::new(d, m)?;
    let all: Vec<usize> = (0..p.arcs).collect();
    let mut out = Vec::new();
    enumerate_rec(&p, &mut State::new(p.arcs), &all, limit.unwrap_or(usize::MAX), &mut out);
    Ok(out)
}

/// Checks every coloring condition directly.
pub fn is_coloring(d: &Diagram, m: &MultipleGroupRack, c: &Coloring) -> bool {
    if c.colors.len() != d.arcs.len() || c.colors.iter().any(|&x| x >= m.len()) {
        return false;
    }
    let col = |id| d.position(id).map(|p| c.colors[p]);
    let crossings_ok = d.crossings.iter().all(|x| {
        let (Some(o), Some(i), Some(u)) = (col(x.over), col(x.under_in), col(x.under_out)) else {
            return false;
        };
        match x.sign {
            Sign::Positive => m.star(i, o) == u,
            Sign::Negative => m.star(u, o) == i,
        }
    });
    let vertices_ok = d.vertices.iter().all(|v| {
        let (Some(l), Some(r), Some(s)) = (col(v.left), col(v.right), col(v.stem)) else {
            return false;
        };
        m.mul(l, r) == Some(s)
    });
    crossings_ok && vertices_ok
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub holds: bool,
    pub marked_arc: ArcId,
    /// A coloring giving the marked arc a non-identity color.
    pub witness: Option<Coloring>,
}

/// Decides whether some coloring gives the marked arc a color that is not
/// the identity of its component.
pub fn check_property_star(d: &Diagram, m: &MultipleGroupRack) -> Result<StarReport> {
    let marked = d
        .marked_arc
        .ok_or_else(|| Error::Usage("diagram has no marked arc".into()))?;
    let p = Problem::new(d, m)?;
    let alpha = d.position(marked).expect("validated");
    let all: Vec<usize> = (0..p.arcs).collect();
    let mut s = State::new(p.arcs);
    for v in (0..m.len()).filter(|&v| !m.is_identity(v)) {
        let mark = s.trail.len();
        if assign(&p, &mut s, alpha, v) {
            let mut found = Vec::new();
            enumerate_rec(&p, &mut s, &all, 1, &mut found);
            if let Some(w) = found.pop() {
                return Ok(StarReport {
                    holds: true,
                    marked_arc: marked,
                    witness: Some(w),
                });
            }
        }
        s.undo(mark);
    }
    Ok(StarReport {
        holds: false,
        marked_arc: marked,
        witness: None,
    })
}

/// Whether `before` and `after` have the same number of colorings.
pub fn assert_move_invariance(before: &Diagram, after: &Diagram, m: &MultipleGroupRack, jobs: usize) -> Result<bool> {
    Ok(count_colorings(before, m, jobs)? == count_colorings(after, m, jobs)?)
}
