//! Finite racks, quandles and G-families of racks.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A finite set `0..size` with a binary operation `op(x, y) = x ∗ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rack {
    size: usize,
    op: Vec<u32>,
}

fn check_square(rows: &[Vec<usize>], n: usize, what: &str) -> Result<Vec<u32>> {
    if rows.len() != n {
        return Err(Error::Format(format!(
            "{what} has {} rows, expected {n}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Format(format!(
                "{what} row {i} has length {}, expected {n}",
                row.len()
            )));
        }
        for &v in row {
            if v >= n {
                return Err(Error::Format(format!("{what} entry {v} out of range 0..{n}")));
            }
            flat.push(v as u32);
        }
    }
    Ok(flat)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Order of a permutation given as an image table, `None` if not bijective.
pub(crate) fn permutation_order(perm: &[usize]) -> Option<usize> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut order = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if i != start {
            return None;
        }
        order = lcm(order, len);
    }
    Some(order)
}

impl Rack {
    /// Builds a table after checking shape and range only; use
    /// [`Rack::verify_rack_axioms`] for the axioms.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::Format("rack table is empty".into()));
        }
        let op = check_square(rows, size, "rack table")?;
        Ok(Rack { size, op })
    }

    /// `x ∗ y = 2y − x (mod n)`.
    pub fn dihedral_quandle(n: usize) -> Self {
        assert!(n > 0);
        let op = (0..n)
            .flat_map(|x| (0..n).map(move |y| ((2 * y + n - x) % n) as u32))
            .collect();
        Rack { size: n, op }
    }

    /// `x ∗ y = x`.
    pub fn trivial(n: usize) -> Self {
        assert!(n > 0);
        let op = (0..n).flat_map(|x| (0..n).map(move |_| x as u32)).collect();
        Rack { size: n, op }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size + y] as usize
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.op
            .chunks(self.size)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// The right translation `S_y : x ↦ x ∗ y` as an image table.
    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.size).map(|x| self.op(x, y)).collect()
    }

    pub fn verify_rack_axioms(&self) -> bool {
        let n = self.size;
        let bijective = (0..n).all(|y| permutation_order(&self.column(y)).is_some());
        bijective
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    let xy = self.op(x, y);
                    (0..n).all(|z| self.op(xy, z) == self.op(self.op(x, z), self.op(y, z)))
                })
            })
    }

    pub fn is_quandle(&self) -> bool {
        self.verify_rack_axioms() && (0..self.size).all(|x| self.op(x, x) == x)
    }

    /// Least `k > 0` with `S_y^k = id` for every `y`: the lcm of the
    /// orders of the column permutations.
    pub fn rack_type(&self) -> Result<usize> {
        (0..self.size).try_fold(1, |acc, y| {
            permutation_order(&self.column(y))
                .map(|o| lcm(acc, o))
                .ok_or_else(|| Error::NotARack(format!("S_{y} is not a bijection")))
        })
    }
}

/// Every rack on `0..n`, in lexicographic order of their column tables.
///
/// Columns are enumerated as permutations and right self-distributivity is
/// checked as soon as all columns it touches are fixed.
pub fn enumerate_racks(n: usize) -> Vec<Rack> {
    assert!(n > 0);
    let perms = permutations(n);
    let mut cols: Vec<usize> = Vec::with_capacity(n);
    let mut out = Vec::new();
    fn consistent(perms: &[Vec<usize>], cols: &[usize], n: usize) -> bool {
        let k = cols.len();
        let op = |x: usize, y: usize| perms[cols[y]][x];
        for y in 0..k {
            for z in 0..k {
                let yz = op(y, z);
                if yz >= k {
                    continue;
                }
                for x in 0..n {
                    if op(op(x, y), z) != op(op(x, z), yz) {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn rec(
        perms: &[Vec<usize>],
        cols: &mut Vec<usize>,
        n: usize,
        out: &mut Vec<Rack>,
    ) {
        if cols.len() == n {
            let rows: Vec<Vec<usize>> = (0..n)
                .map(|x| (0..n).map(|y| perms[cols[y]][x]).collect())
                .collect();
            out.push(Rack::from_table(&rows).expect("square"));
            return;
        }
        for p in 0..perms.len() {
            cols.push(p);
            if consistent(perms, cols, n) {
                rec(perms, cols, n, out);
            }
            cols.pop();
        }
    }
    rec(&perms, &mut cols, n, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A set `0..carrier` with operations `∗^g` indexed by a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFamily {
    carrier: usize,
    group: FiniteGroup,
    // ops[(g * carrier + x) * carrier + y] = x ∗^g y
    ops: Vec<u32>,
}

impl GFamily {
    /// Shape and range checks only; see [`GFamily::verify_gfamily_axioms`].
    pub fn new(carrier: usize, group: FiniteGroup, ops: &[Vec<Vec<usize>>]) -> Result<Self> {
        if carrier == 0 {
            return Err(Error::Format("G-family carrier is empty".into()));
        }
        if ops.len() != group.order() {
            return Err(Error::Format(format!(
                "{} operation tables for a group of order {}",
                ops.len(),
                group.order()
            )));
        }
        let mut flat = Vec::with_capacity(ops.len() * carrier * carrier);
        for (g, t) in ops.iter().enumerate() {
            flat.extend(check_square(t, carrier, &format!("operation table {g}"))?);
        }
        Ok(GFamily {
            carrier,
            group,
            ops: flat,
        })
    }

    /// X = Z₃, G = S₃; reflections (x, ax, a²x) act by `2b − a`, rotations
    /// act trivially.
    pub fn example_z3_s3() -> Self {
        let group = FiniteGroup::s3_presented();
        let dihedral = Rack::dihedral_quandle(3).table_rows();
        let trivial = Rack::trivial(3).table_rows();
        let reflections: Vec<usize> = ["x", "ax", "a²x"]
            .iter()
            .map(|l| group.find(l).expect("S3 label"))
            .collect();
        let ops: Vec<Vec<Vec<usize>>> = group
            .elements()
            .map(|g| {
                if reflections.contains(&g) {
                    dihedral.clone()
                } else {
                    trivial.clone()
                }
            })
            .collect();
        GFamily::new(3, group, &ops).expect("well-formed")
    }

    /// The Z_n-family `x ∗^k y = S_y^k(x)` with `n` the type of `rack`.
    pub fn from_rack(rack: &Rack) -> Result<Self> {
        if !rack.verify_rack_axioms() {
            return Err(Error::NotARack("input table fails the rack axioms".into()));
        }
        let n = rack.rack_type()?;
        let group = FiniteGroup::cyclic(n);
        let size = rack.size();
        let mut ops = Vec::with_capacity(n);
        // ops[k] = ops[k-1] followed by S_y
        let mut cur: Vec<Vec<usize>> = (0..size).map(|x| vec![x; size]).collect();
        for _ in 0..n {
            ops.push(cur.clone());
            for row in cur.iter_mut() {
                for (y, v) in row.iter_mut().enumerate() {
                    *v = rack.op(*v, y);
                }
            }
        }
        GFamily::new(size, group, &ops)
    }

    #[inline]
    pub fn carrier(&self) -> usize {
        self.carrier
    }

    #[inline]
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `x ∗^g y`.
    #[inline]
    pub fn op(&self, g: usize, x: usize, y: usize) -> usize {
        self.ops[(g * self.carrier + x) * self.carrier + y] as usize
    }

    /// The slice `(X, ∗^g)`.
    pub fn slice(&self, g: usize) -> Rack {
        let rows: Vec<Vec<usize>> = (0..self.carrier)
            .map(|x| (0..self.carrier).map(|y| self.op(g, x, y)).collect())
            .collect();
        Rack::from_table(&rows).expect("square")
    }

    pub fn tables(&self) -> Vec<Vec<Vec<usize>>> {
        self.group.elements().map(|g| self.slice(g).table_rows()).collect()
    }

    /// Replaces one entry; used to build corrupted fixtures.
    pub fn with_entry(&self, g: usize, x: usize, y: usize, value: usize) -> Self {
        let mut out = self.clone();
        out.ops[(g * self.carrier + x) * self.carrier + y] = value as u32;
        out
    }

    /// First violated instance of the G-family axioms, if any.
    pub fn first_violation(&self) -> Option<String> {
        let n = self.carrier;
        let grp = &self.group;
        let e = grp.identity();
        for x in 0..n {
            for y in 0..n {
                if self.op(e, x, y) != x {
                    return Some(format!("x ∗^e y ≠ x at x={x}, y={y}"));
                }
            }
        }
        for g in grp.elements() {
            for h in grp.elements() {
                let gh = grp.mul(g, h);
                for x in 0..n {
                    for y in 0..n {
                        if self.op(gh, x, y) != self.op(h, self.op(g, x, y), y) {
                            return Some(format!(
                                "x ∗^(gh) y ≠ (x ∗^g y) ∗^h y at g={g}, h={h}, x={x}, y={y}"
                            ));
                        }
                    }
                }
            }
        }
        for g in grp.elements() {
            for h in grp.elements() {
                let gh = grp.conjugate(g, h);
                for x in 0..n {
                    for y in 0..n {
                        let xgy = self.op(g, x, y);
                        for z in 0..n {
                            let lhs = self.op(h, xgy, z);
                            let rhs = self.op(gh, self.op(h, x, z), self.op(h, y, z));
                            if lhs != rhs {
                                return Some(format!(
                                    "exchange law fails at g={g}, h={h}, x={x}, y={y}, z={z}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn verify_gfamily_axioms(&self) -> bool {
        self.first_violation().is_none()
    }
}
