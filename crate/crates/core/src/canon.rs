//! Canonical labelling by individualization and equitable refinement.
//!
//! The search tree starts from the degree-refined unit partition, repeatedly
//! individualizes a vertex of the first non-singleton cell and refines until
//! the partition is discrete. Each leaf is a relabelling of the graph; the
//! canonical form is the leaf whose relabelled adjacency rows are
//! lexicographically greatest. Leaves that reproduce the first or the best
//! leaf yield automorphisms, which prune equivalent children and also give
//! the vertex orbits of the automorphism group.

use std::fmt;

use crate::graph::{bit, low_bits, members, Graph};
use crate::{Error, Result, Row, MAX_ORDER};

/// Bytes needed for the order byte plus the packed upper triangle.
pub const CODE_LEN: usize = 1 + (MAX_ORDER * (MAX_ORDER - 1) / 2).div_ceil(8);

/// Label-invariant encoding: the order followed by the upper triangle of the
/// canonical form, column by column, eight bits per byte.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode([u8; CODE_LEN]);

fn packed_len(n: usize) -> usize {
    1 + (n * n.saturating_sub(1) / 2).div_ceil(8)
}

impl CanonicalCode {
    fn of(g: &Graph) -> Self {
        let n = g.order();
        let mut bytes = [0u8; CODE_LEN];
        bytes[0] = n as u8;
        let mut k = 0;
        for j in 1..n {
            let row = g.neighbors(j);
            for i in 0..j {
                if row & bit(i) != 0 {
                    bytes[1 + k / 8] |= 0x80 >> (k % 8);
                }
                k += 1;
            }
        }
        CanonicalCode(bytes)
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    /// Length of [`as_bytes`](Self::as_bytes) for graphs of order `n`.
    pub fn byte_len(n: usize) -> usize {
        packed_len(n)
    }

    /// The significant bytes; trailing storage is always zero.
    pub fn as_bytes(&self) -> &[u8] {
        &self.0[..packed_len(self.order())]
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let n = *bytes
            .first()
            .ok_or_else(|| Error::Corrupt("empty canonical code".into()))? as usize;
        if n > MAX_ORDER {
            return Err(Error::Capacity(format!(
                "canonical code of order {n} exceeds the maximum of {MAX_ORDER}"
            )));
        }
        if bytes.len() != packed_len(n) {
            return Err(Error::Corrupt(format!(
                "canonical code of order {n} has {} bytes",
                bytes.len()
            )));
        }
        let mut out = [0u8; CODE_LEN];
        out[..bytes.len()].copy_from_slice(bytes);
        let code = CanonicalCode(out);
        if CanonicalCode::of(&code.to_graph()) != code {
            return Err(Error::Corrupt("nonzero padding in canonical code".into()));
        }
        Ok(code)
    }

    /// The canonical representative of the isomorphism class.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n).expect("order checked on construction");
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.0[1 + k / 8] & (0x80 >> (k % 8)) != 0 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self)
    }
}

/// Shown as the graph6 string of the canonical form.
impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode_graph6(&self.to_graph()))
    }
}

pub type Perm = [u8; MAX_ORDER];

#[derive(Clone, Debug)]
pub struct CanonForm {
    pub code: CanonicalCode,
    /// `labeling[p]` is the vertex placed at canonical position `p`.
    pub labeling: Vec<u8>,
    /// Automorphisms found during the search; they generate the full group.
    pub generators: Vec<Perm>,
    /// Smallest vertex of each vertex's orbit under the automorphism group.
    pub orbits: Vec<u8>,
}

impl CanonForm {
    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbits[u] == self.orbits[v]
    }
}

#[derive(Clone, Copy)]
struct Partition {
    cells: [Row; MAX_ORDER],
    len: usize,
}

const QUEUE_CAP: usize = 4 * MAX_ORDER + 4;

/// Refines `p` to the coarsest equitable partition finer than it, starting
/// from the given splitters. Cells split in place, pieces ordered by
/// increasing neighbour count.
fn refine(g: &Graph, p: &mut Partition, initial: &[Row]) {
    let mut queue = [0 as Row; QUEUE_CAP];
    let mut tail = 0;
    for &w in initial {
        queue[tail] = w;
        tail += 1;
    }
    let mut head = 0;
    let n = g.order();
    while head < tail && p.len < n {
        let w = queue[head];
        head += 1;
        let mut i = 0;
        while i < p.len {
            let cell = p.cells[i];
            if cell & (cell - 1) == 0 {
                i += 1;
                continue;
            }
            let mut by_count = [0 as Row; MAX_ORDER + 1];
            let mut used: u64 = 0;
            for v in members(cell) {
                let c = (g.neighbors(v) & w).count_ones() as usize;
                by_count[c] |= bit(v);
                used |= 1 << c;
            }
            if used & (used - 1) == 0 {
                i += 1;
                continue;
            }
            let pieces = used.count_ones() as usize;
            p.cells.copy_within(i + 1..p.len, i + pieces);
            let mut k = i;
            while used != 0 {
                let c = used.trailing_zeros() as usize;
                used &= used - 1;
                p.cells[k] = by_count[c];
                if tail < QUEUE_CAP {
                    queue[tail] = by_count[c];
                    tail += 1;
                }
                k += 1;
            }
            p.len += pieces - 1;
            i += pieces;
        }
    }
}

struct UnionFind {
    parent: [u8; MAX_ORDER],
}

impl UnionFind {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; MAX_ORDER];
        for (v, p) in parent.iter_mut().enumerate().take(n) {
            *p = v as u8;
        }
        UnionFind { parent }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            let up = self.parent[self.parent[v] as usize];
            self.parent[v] = up;
            v = up as usize;
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u8;
        }
    }
}

type LeafKey = [Row; MAX_ORDER];

struct Leaf {
    key: LeafKey,
    lab: [u8; MAX_ORDER],
    path: [u8; MAX_ORDER],
    depth: usize,
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    path: [u8; MAX_ORDER],
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Perm>,
}

impl Search<'_> {
    fn leaf(&mut self, p: &Partition, depth: usize) -> Option<usize> {
        let n = self.n;
        let mut lab = [0u8; MAX_ORDER];
        let mut pos = [0u8; MAX_ORDER];
        for (i, &c) in p.cells[..n].iter().enumerate() {
            let v = c.trailing_zeros() as usize;
            lab[i] = v as u8;
            pos[v] = i as u8;
        }
        let mut key = [0 as Row; MAX_ORDER];
        for (i, k) in key.iter_mut().enumerate().take(n) {
            let mut row = 0;
            for u in members(self.g.neighbors(lab[i] as usize)) {
                row |= bit(pos[u] as usize);
            }
            *k = row;
        }
        let leaf = Leaf {
            key,
            lab,
            path: self.path,
            depth,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf { ..leaf });
            self.first = Some(Leaf {
                key,
                lab,
                path: self.path,
                depth,
            });
            return None;
        };
        if first.key[..n] == key[..n] {
            let jump = common_prefix(&first.path, first.depth, &self.path, depth);
            self.gens.push(map_leaves(&first.lab, &lab, n));
            return Some(jump);
        }
        let best = self.best.as_ref().expect("set with first");
        match key[..n].cmp(&best.key[..n]) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let jump = common_prefix(&best.path, best.depth, &self.path, depth);
                self.gens.push(map_leaves(&best.lab, &lab, n));
                Some(jump)
            }
            std::cmp::Ordering::Less => None,
        }
    }

    fn dfs(&mut self, p: &Partition, depth: usize) -> Option<usize> {
        if p.len == self.n {
            return self.leaf(p, depth);
        }
        let t = (0..p.len)
            .find(|&i| p.cells[i] & (p.cells[i] - 1) != 0)
            .expect("partition is not discrete");
        let cell = p.cells[t];
        let mut explored: Row = 0;
        let mut seen_gens = 0;
        let mut uf = UnionFind::new(self.n);
        for y in members(cell) {
            if explored != 0 {
                if self.gens.len() != seen_gens {
                    for g in &self.gens[seen_gens..] {
                        if (0..depth).all(|i| g[self.path[i] as usize] == self.path[i]) {
                            for v in 0..self.n {
                                uf.union(v, g[v] as usize);
                            }
                        }
                    }
                    seen_gens = self.gens.len();
                }
                let root = uf.find(y);
                if members(explored).any(|x| uf.find(x) == root) {
                    continue;
                }
            }
            explored |= bit(y);
            let mut child = *p;
            child.cells.copy_within(t + 1..child.len, t + 2);
            child.cells[t] = bit(y);
            child.cells[t + 1] = cell & !bit(y);
            child.len += 1;
            refine(self.g, &mut child, &[bit(y)]);
            self.path[depth] = y as u8;
            if let Some(j) = self.dfs(&child, depth + 1) {
                if j < depth {
                    return Some(j);
                }
            }
        }
        None
    }
}

fn common_prefix(a: &[u8; MAX_ORDER], da: usize, b: &[u8; MAX_ORDER], db: usize) -> usize {
    (0..da.min(db)).take_while(|&i| a[i] == b[i]).count()
}

fn map_leaves(from: &[u8; MAX_ORDER], to: &[u8; MAX_ORDER], n: usize) -> Perm {
    let mut g = [0u8; MAX_ORDER];
    for i in 0..n {
        g[from[i] as usize] = to[i];
    }
    for (v, x) in g.iter_mut().enumerate().skip(n) {
        *x = v as u8;
    }
    g
}

pub fn canonical_form(g: &Graph) -> CanonForm {
    let n = g.order();
    if n <= 1 {
        return CanonForm {
            code: CanonicalCode::of(g),
            labeling: (0..n as u8).collect(),
            generators: Vec::new(),
            orbits: (0..n as u8).collect(),
        };
    }
    let mut root = Partition {
        cells: [0; MAX_ORDER],
        len: 1,
    };
    root.cells[0] = low_bits(n);
    refine(g, &mut root, &[low_bits(n)]);
    let mut search = Search {
        g,
        n,
        path: [0; MAX_ORDER],
        first: None,
        best: None,
        gens: Vec::new(),
    };
    search.dfs(&root, 0);
    let best = search.best.expect("search visits at least one leaf");
    let mut pos = vec![0usize; n];
    for (i, &v) in best.lab[..n].iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut uf = UnionFind::new(n);
    for gen in &search.gens {
        for v in 0..n {
            uf.union(v, gen[v] as usize);
        }
    }
    CanonForm {
        code: CanonicalCode::of(&g.permuted(&pos)),
        labeling: best.lab[..n].to_vec(),
        generators: search.gens,
        orbits: (0..n).map(|v| uf.find(v) as u8).collect(),
    }
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    canonical_form(g).code
}

/// Whether `perm` is an automorphism of `g`.
pub fn is_automorphism(g: &Graph, perm: &[u8]) -> bool {
    let n = g.order();
    (0..n).all(|u| {
        let mut row = 0;
        for v in members(g.neighbors(u)) {
            row |= bit(perm[v] as usize);
        }
        row == g.neighbors(perm[u] as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complement, make_named, Family};
    use crate::graph6::decode_graph6;
    use std::collections::HashSet;

    fn named(f: Family) -> Graph {
        make_named(f).unwrap()
    }

    /// Closes the generators under composition; only for small groups.
    fn group_order(gens: &[Perm], n: usize) -> usize {
        let mut id = [0u8; MAX_ORDER];
        for (v, x) in id.iter_mut().enumerate() {
            *x = v as u8;
        }
        let mut seen: HashSet<Perm> = HashSet::from([id]);
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for g in gens {
                let mut q = id;
                for v in 0..n {
                    q[v] = g[p[v] as usize];
                }
                if seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn relabelled_paths_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_ne!(canonical_code(&a), canonical_code(&Graph::complete(3).unwrap()));
    }

    #[test]
    fn self_complementary_c5() {
        let c5 = named(Family::Cycle(5));
        assert_eq!(canonical_code(&c5), canonical_code(&complement(&c5)));
    }

    #[test]
    fn automorphism_groups() {
        let petersen = decode_graph6("IheA@GUAo").unwrap();
        let cases = [
            (petersen, 120),
            (named(Family::Cycle(7)), 14),
            (Graph::complete(6).unwrap(), 720),
            (Graph::empty(5).unwrap(), 120),
            (named(Family::Friendship(3)), 48),
            (named(Family::Path(6)), 2),
        ];
        for (g, order) in cases {
            let cf = canonical_form(&g);
            for gen in &cf.generators {
                assert!(is_automorphism(&g, gen), "{g:?}");
            }
            assert_eq!(group_order(&cf.generators, g.order()), order, "{g:?}");
        }
    }

    #[test]
    fn orbits_of_a_star() {
        let cf = canonical_form(&named(Family::Star(4)));
        assert_eq!(cf.orbits, vec![0, 1, 1, 1, 1]);
        assert!(cf.same_orbit(2, 4) && !cf.same_orbit(0, 1));
    }

    #[test]
    fn large_symmetric_graphs_finish() {
        let e = Graph::empty(MAX_ORDER).unwrap();
        assert_eq!(canonical_code(&e).to_graph(), e);
        let k = Graph::complete(MAX_ORDER).unwrap();
        assert_eq!(canonical_code(&k).to_graph(), k);
    }

    #[test]
    fn code_bytes_round_trip() {
        let code = canonical_code(&named(Family::Friendship(2)));
        assert_eq!(CanonicalCode::from_bytes(code.as_bytes()).unwrap(), code);
        assert!(CanonicalCode::from_bytes(&[]).is_err());
        assert!(CanonicalCode::from_bytes(&[3, 0xff]).is_err());
    }
}
