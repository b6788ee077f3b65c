use std::collections::HashMap;

use super::{Diagram, Sign, VertexKind};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Item {
    Crossing(usize, usize, usize, Sign),
    Vertex(VertexKind, usize, usize, usize),
}

struct Indexed {
    closed: Vec<bool>,
    items: Vec<Item>,
    marked: Option<usize>,
    signature: Vec<[u32; 12]>,
}

fn index(d: &Diagram) -> Option<Indexed> {
    let pos = |id| d.position(id);
    let mut items = Vec::new();
    for c in &d.crossings {
        items.push(Item::Crossing(pos(c.over)?, pos(c.under_in)?, pos(c.under_out)?, c.sign));
    }
    for v in &d.vertices {
        items.push(Item::Vertex(v.kind, pos(v.left)?, pos(v.right)?, pos(v.stem)?));
    }
    let mut signature = vec![[0u32; 12]; d.arcs.len()];
    for (i, a) in d.arcs.iter().enumerate() {
        signature[i][0] = a.closed as u32;
    }
    for it in &items {
        match *it {
            Item::Crossing(o, i, u, s) => {
                signature[o][1 + (s == Sign::Positive) as usize] += 1;
                signature[i][3] += 1;
                signature[u][4] += 1;
            }
            Item::Vertex(k, l, r, s) => {
                let base = if k == VertexKind::Merge { 5 } else { 8 };
                signature[l][base] += 1;
                signature[r][base + 1] += 1;
                signature[s][base + 2] += 1;
            }
        }
    }
    let marked = match d.marked_arc {
        Some(m) => Some(pos(m)?),
        None => None,
    };
    if let Some(m) = marked {
        signature[m][11] = 1;
    }
    Some(Indexed {
        closed: d.arcs.iter().map(|a| a.closed).collect(),
        items,
        marked,
        signature,
    })
}

fn arcs_of(it: &Item) -> [usize; 3] {
    match *it {
        Item::Crossing(o, i, u, _) => [o, i, u],
        Item::Vertex(_, l, r, s) => [l, r, s],
    }
}

fn image(it: &Item, map: &[usize]) -> Item {
    match *it {
        Item::Crossing(o, i, u, s) => Item::Crossing(map[o], map[i], map[u], s),
        Item::Vertex(k, l, r, s) => Item::Vertex(k, map[l], map[r], map[s]),
    }
}

struct Search<'a> {
    a: &'a Indexed,
    b: &'a Indexed,
    order: Vec<usize>,
    /// items of `a` completed when the arc at this step is assigned
    completes: Vec<Vec<usize>>,
    available: HashMap<Item, usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let arc = self.order[step];
        for cand in 0..self.b.closed.len() {
            if self.used[cand] || self.a.signature[arc] != self.b.signature[cand] {
                continue;
            }
            self.map[arc] = cand;
            self.used[cand] = true;
            let mut taken = Vec::new();
            let mut ok = true;
            for &it in &self.completes[step] {
                let img = image(&self.a.items[it], &self.map);
                match self.available.get_mut(&img) {
                    Some(n) if *n > 0 => {
                        *n -= 1;
                        taken.push(img);
                    }
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.run(step + 1) {
                return true;
            }
            for img in taken {
                *self.available.get_mut(&img).unwrap() += 1;
            }
            self.used[cand] = false;
        }
        false
    }
}

/// Whether two diagrams are equal up to renaming arcs and reordering
/// crossings and vertices. The marked arc must correspond.
pub fn is_isomorphic(d1: &Diagram, d2: &Diagram) -> bool {
    let (Some(a), Some(b)) = (index(d1), index(d2)) else {
        return false;
    };
    if a.closed.len() != b.closed.len()
        || a.items.len() != b.items.len()
        || a.marked.is_some() != b.marked.is_some()
    {
        return false;
    }
    let mut sa: Vec<_> = a.signature.clone();
    let mut sb: Vec<_> = b.signature.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let n = a.closed.len();
    let mut adj = vec![Vec::new(); n];
    for it in &a.items {
        let arcs = arcs_of(it);
        for &x in &arcs {
            for &y in &arcs {
                if x != y {
                    adj[x].push(y);
                }
            }
        }
    }
    // breadth-first order keeps constraints completing early
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut q = std::collections::VecDeque::from([start]);
        while let Some(x) = q.pop_front() {
            order.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
    }
    let mut step_of = vec![0; n];
    for (s, &x) in order.iter().enumerate() {
        step_of[x] = s;
    }
    let mut completes = vec![Vec::new(); n];
    for (i, it) in a.items.iter().enumerate() {
        let last = arcs_of(it).iter().map(|&x| step_of[x]).max().unwrap();
        completes[last].push(i);
    }
    let mut available = HashMap::new();
    for it in &b.items {
        *available.entry(*it).or_insert(0) += 1;
    }
    let mut search = Search {
        a: &a,
        b: &b,
        order,
        completes,
        available,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    search.run(0)
}
