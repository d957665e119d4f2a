//! Simple undirected graphs on at most [`MAX_ORDER`] vertices.
//!
//! Adjacency is stored as one bitset row per vertex. All operations return
//! new values; a [`Graph`] is `Copy` and never mutated behind a shared
//! reference.

use std::fmt;

use serde::Serialize;

use crate::{Error, Result, Row, MAX_ORDER};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    order: u8,
    adj: [Row; MAX_ORDER],
}

#[inline]
pub(crate) const fn bit(v: usize) -> Row {
    1 << v
}

#[inline]
pub(crate) const fn low_bits(n: usize) -> Row {
    if n >= Row::BITS as usize {
        Row::MAX
    } else {
        (1 << n) - 1
    }
}

/// Iterates the set bits of a row, lowest first.
#[inline]
pub(crate) fn members(mut row: Row) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if row == 0 {
            None
        } else {
            let v = row.trailing_zeros() as usize;
            row &= row - 1;
            Some(v)
        }
    })
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::Capacity(format!(
            "order {n} exceeds the maximum of {MAX_ORDER}"
        )))
    } else {
        Ok(())
    }
}

impl Graph {
    /// The edgeless graph `nK1`.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph {
            order: n as u8,
            adj: [0; MAX_ORDER],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = low_bits(n);
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) out of range for order {n}"
                )));
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from neighbourhood rows. Rows must be symmetric,
    /// loop-free and confined to the first `n` bits.
    pub fn from_rows(n: usize, rows: &[Row]) -> Result<Self> {
        check_order(n)?;
        if rows.len() != n {
            return Err(Error::Parameter(format!(
                "expected {n} rows, got {}",
                rows.len()
            )));
        }
        let mut g = Graph::empty(n)?;
        let mask = low_bits(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 || row & bit(v) != 0 {
                return Err(Error::Parameter(format!("invalid row for vertex {v}")));
            }
            g.adj[v] = row;
        }
        for u in 0..n {
            for v in members(g.adj[u]) {
                if g.adj[v] & bit(u) == 0 {
                    return Err(Error::Parameter(format!(
                        "rows are not symmetric at ({u}, {v})"
                    )));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn rows(&self) -> &[Row] {
        &self.adj[..self.order()]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Row {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    /// Panics if either endpoint is out of range or `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.order() && v < self.order() && u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.order() && v < self.order());
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.order()).flat_map(move |v| members(self.adj[v] & low_bits(v)).map(move |u| (u, v)))
    }

    /// Appends a vertex adjacent to the vertices in `neighbors`.
    pub fn with_vertex(&self, neighbors: Row) -> Result<Self> {
        let n = self.order();
        check_order(n + 1)?;
        debug_assert_eq!(neighbors & !low_bits(n), 0);
        let mut g = *self;
        g.order += 1;
        g.adj[n] = neighbors;
        for u in members(neighbors) {
            g.adj[u] |= bit(n);
        }
        Ok(g)
    }

    /// Removes vertex `v`, shifting higher vertices down by one.
    pub fn without_vertex(&self, v: usize) -> Self {
        let n = self.order();
        assert!(v < n);
        let low = low_bits(v);
        let mut g = Graph {
            order: (n - 1) as u8,
            adj: [0; MAX_ORDER],
        };
        let mut w = 0;
        for u in (0..n).filter(|&u| u != v) {
            let row = self.adj[u];
            g.adj[w] = (row & low) | ((row >> 1) & !low);
            w += 1;
        }
        g
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        assert_eq!(perm.len(), n);
        let mut g = Graph {
            order: self.order,
            adj: [0; MAX_ORDER],
        };
        for u in 0..n {
            let mut row = 0;
            for v in members(self.adj[u]) {
                row |= bit(perm[v]);
            }
            g.adj[perm[u]] = row;
        }
        g
    }

    /// Whether every edge of `self` is an edge of `other` on the same labels
    /// (vertices of `self` being the first `self.order()` vertices of `other`).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.order() <= other.order()
            && (0..self.order()).all(|v| self.adj[v] & !other.adj[v] == 0)
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Row> {
        let mut unseen = low_bits(self.order());
        let mut out = Vec::new();
        while unseen != 0 {
            let start = unseen & unseen.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in members(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            unseen &= !comp;
            out.push(comp);
        }
        out
    }

    /// A proper 2-colouring of the vertices in `comp` as the set of vertices
    /// coloured 1, or `None` if the component contains an odd cycle.
    fn two_colour(&self, comp: Row) -> Option<Row> {
        let start = comp & comp.wrapping_neg();
        let mut side = [start, 0];
        let mut seen = start;
        let mut frontier = start;
        let mut colour = 0;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            colour ^= 1;
            frontier = next & !seen;
            seen |= frontier;
            side[colour] |= frontier;
        }
        for class in side {
            if members(class).any(|v| self.adj[v] & class != 0) {
                return None;
            }
        }
        Some(side[1])
    }

    pub fn is_bipartite(&self) -> bool {
        self.components().into_iter().all(|c| self.two_colour(c).is_some())
    }

    pub fn is_regular(&self) -> bool {
        let n = self.order();
        n == 0 || (1..n).all(|v| self.degree(v) == self.degree(0))
    }

    pub fn triangle_count(&self) -> usize {
        let mut twice_three = 0;
        for (u, v) in self.edges() {
            twice_three += (self.adj[u] & self.adj[v]).count_ones() as usize;
        }
        twice_three / 3
    }

    pub fn has_induced_c4(&self) -> bool {
        let n = self.order();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let set = bit(a) | bit(b) | bit(c) | bit(d);
                        if [a, b, c, d]
                            .iter()
                            .all(|&v| (self.adj[v] & set).count_ones() == 2)
                        {
                            // 2-regular on four vertices is exactly C4.
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.order())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode_graph6(self))
    }
}

/// Named graph families with fixed vertex numbering.
///
/// * `Path(n)`: edges `i ~ i+1`.
/// * `Cycle(n)`: the path plus `n-1 ~ 0`.
/// * `Star(k)`: `K_{1,k}`, centre `0`, leaves `1..=k`.
/// * `Friendship(k)`: centre `0`, triangles `{0, 2i-1, 2i}` for `i = 1..=k`.
/// * `CompleteMinusMatching { order, matching }`: `K_n` without the edges
///   `2i ~ 2i+1` for `i < matching`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Empty(usize),
    Complete(usize),
    Path(usize),
    Cycle(usize),
    Star(usize),
    Friendship(usize),
    CompleteMinusPerfectMatching(usize),
    CompleteMinusMatching { order: usize, matching: usize },
}

pub fn make_named(family: Family) -> Result<Graph> {
    match family {
        Family::Empty(n) => Graph::empty(n),
        Family::Complete(n) => Graph::complete(n),
        Family::Path(n) => {
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::Parameter(format!("cycle needs at least 3 vertices, got {n}")));
            }
            let mut g = make_named(Family::Path(n))?;
            g.add_edge(n - 1, 0);
            Ok(g)
        }
        Family::Star(k) => {
            check_order(k + 1)?;
            let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
            Graph::from_edges(k + 1, &edges)
        }
        Family::Friendship(k) => {
            if k == 0 {
                return Err(Error::Parameter("friendship graph needs k >= 1".into()));
            }
            check_order(2 * k + 1)?;
            let mut edges = Vec::with_capacity(3 * k);
            for i in 1..=k {
                edges.extend([(0, 2 * i - 1), (0, 2 * i), (2 * i - 1, 2 * i)]);
            }
            Graph::from_edges(2 * k + 1, &edges)
        }
        Family::CompleteMinusPerfectMatching(n) => {
            if n % 2 != 0 {
                return Err(Error::Parameter(format!(
                    "perfect matching needs even order, got {n}"
                )));
            }
            make_named(Family::CompleteMinusMatching {
                order: n,
                matching: n / 2,
            })
        }
        Family::CompleteMinusMatching { order, matching } => {
            if 2 * matching > order {
                return Err(Error::Parameter(format!(
                    "a matching of size {matching} does not fit in order {order}"
                )));
            }
            let mut g = Graph::complete(order)?;
            for i in 0..matching {
                g.remove_edge(2 * i, 2 * i + 1);
            }
            Ok(g)
        }
    }
}

/// `G ∪ rK1 ∪ sK2`: the isolated vertices follow `G`, then the `s` edges.
pub fn union_with_isolates_and_matching(g: &Graph, r: usize, s: usize) -> Result<Graph> {
    let n = g.order();
    let total = n + r + 2 * s;
    if total > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "union of order {total} exceeds the maximum of {MAX_ORDER}"
        )));
    }
    let mut out = *g;
    out.order = total as u8;
    for i in 0..s {
        let a = n + r + 2 * i;
        out.add_edge(a, a + 1);
    }
    Ok(out)
}

/// Disjoint union; vertices of `h` are shifted past those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.order();
    check_order(n + h.order())?;
    let mut out = *g;
    out.order = (n + h.order()) as u8;
    for v in 0..h.order() {
        out.adj[n + v] = h.adj[v] << n;
    }
    Ok(out)
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let all = low_bits(n);
    let mut out = *g;
    for v in 0..n {
        out.adj[v] = all & !g.adj[v] & !bit(v);
    }
    out
}

pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.order();
    let mut out = disjoint_union(g, h)?;
    let left = low_bits(n);
    let right = low_bits(out.order()) & !left;
    for v in 0..n {
        out.adj[v] |= right;
    }
    for v in n..out.order() {
        out.adj[v] |= left;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    /// `(Σd, Σd², Σd³)`.
    pub power_sums: (u64, u64, u64),
}

pub fn degree_stats(g: &Graph) -> DegreeStats {
    let degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut sums = (0u64, 0u64, 0u64);
    for &d in &degrees {
        let d = d as u64;
        sums.0 += d;
        sums.1 += d * d;
        sums.2 += d * d * d;
    }
    DegreeStats {
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        degrees,
        power_sums: sums,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentShape {
    Tree,
    OddUnicyclic,
    EvenUnicyclic,
    Bicyclic,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub vertices: Row,
    pub order: usize,
    pub edges: usize,
    pub bipartite: bool,
    /// `m_c - n_c + 1`.
    pub cyclomatic: usize,
    pub shape: ComponentShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureClass {
    pub component_count: usize,
    pub bipartite_component_count: usize,
    pub is_bipartite: bool,
    pub is_regular: bool,
    pub triangle_count: usize,
    pub components: Vec<ComponentInfo>,
    pub has_induced_c4: bool,
}

impl StructureClass {
    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    fn single_shape(&self) -> Option<ComponentShape> {
        match self.components.as_slice() {
            [c] => Some(c.shape),
            _ => None,
        }
    }

    pub fn is_tree(&self) -> bool {
        self.single_shape() == Some(ComponentShape::Tree)
    }

    pub fn is_odd_unicyclic(&self) -> bool {
        self.single_shape() == Some(ComponentShape::OddUnicyclic)
    }

    pub fn is_unicyclic(&self) -> bool {
        matches!(
            self.single_shape(),
            Some(ComponentShape::OddUnicyclic | ComponentShape::EvenUnicyclic)
        )
    }

    pub fn is_bicyclic(&self) -> bool {
        self.single_shape() == Some(ComponentShape::Bicyclic)
    }
}

pub fn structure_class(g: &Graph) -> StructureClass {
    let mut components = Vec::new();
    for comp in g.components() {
        let order = comp.count_ones() as usize;
        let edges = members(comp)
            .map(|v| g.adj[v].count_ones() as usize)
            .sum::<usize>()
            / 2;
        let bipartite = g.two_colour(comp).is_some();
        let cyclomatic = edges + 1 - order;
        let shape = match cyclomatic {
            0 => ComponentShape::Tree,
            1 if bipartite => ComponentShape::EvenUnicyclic,
            1 => ComponentShape::OddUnicyclic,
            2 => ComponentShape::Bicyclic,
            _ => ComponentShape::Other,
        };
        components.push(ComponentInfo {
            vertices: comp,
            order,
            edges,
            bipartite,
            cyclomatic,
            shape,
        });
    }
    let bipartite_component_count = components.iter().filter(|c| c.bipartite).count();
    StructureClass {
        component_count: components.len(),
        bipartite_component_count,
        is_bipartite: bipartite_component_count == components.len(),
        is_regular: g.is_regular(),
        triangle_count: g.triangle_count(),
        components,
        has_induced_c4: g.has_induced_c4(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical_code;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    #[test]
    fn named_families() {
        let k3 = make_named(Family::Complete(3)).unwrap();
        assert_eq!((k3.order(), k3.edge_count()), (3, 3));

        let bowtie = make_named(Family::Friendship(2)).unwrap();
        assert_eq!((bowtie.order(), bowtie.edge_count()), (5, 6));
        assert_eq!(bowtie.triangle_count(), 2);

        let c4 = make_named(Family::CompleteMinusPerfectMatching(4)).unwrap();
        assert_eq!((c4.order(), c4.edge_count()), (4, 4));
        assert!(c4.is_regular() && c4.degree(0) == 2);
        assert_eq!(
            canonical_code(&c4),
            canonical_code(&make_named(Family::Cycle(4)).unwrap())
        );
    }

    #[test]
    fn named_family_errors() {
        assert!(matches!(
            make_named(Family::CompleteMinusPerfectMatching(5)),
            Err(Error::Parameter(_))
        ));
        assert!(make_named(Family::Friendship(0)).is_err());
        assert!(make_named(Family::Cycle(2)).is_err());
        assert!(matches!(
            make_named(Family::Complete(MAX_ORDER + 1)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn union_counts() {
        let u = union_with_isolates_and_matching(&k(3), 1, 1).unwrap();
        assert_eq!((u.order(), u.edge_count(), u.components().len()), (6, 4, 3));
        assert_eq!(union_with_isolates_and_matching(&k(3), 0, 0).unwrap(), k(3));

        let p3 = make_named(Family::Path(3)).unwrap();
        let u = union_with_isolates_and_matching(&p3, 2, 2).unwrap();
        let sc = structure_class(&u);
        assert_eq!((u.order(), u.edge_count()), (9, 4));
        assert_eq!((sc.component_count, sc.bipartite_component_count), (5, 5));

        assert!(matches!(
            union_with_isolates_and_matching(&k(10), MAX_ORDER, 0),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn complement_and_join() {
        assert_eq!(complement(&k(3)), Graph::empty(3).unwrap());
        assert_eq!(complement(&Graph::empty(6).unwrap()), k(6));
        let c5 = make_named(Family::Cycle(5)).unwrap();
        assert_eq!(canonical_code(&complement(&c5)), canonical_code(&c5));

        let star = join(&k(1), &Graph::empty(3).unwrap()).unwrap();
        assert_eq!(star, make_named(Family::Star(3)).unwrap());
        let c4 = make_named(Family::Cycle(4)).unwrap();
        let wheel = join(&k(1), &c4).unwrap();
        assert_eq!((wheel.order(), wheel.edge_count()), (5, 8));
        assert_eq!(join(&k(2), &k(2)).unwrap(), k(4));
    }

    #[test]
    fn degree_sums() {
        let s = degree_stats(&k(3));
        assert_eq!(s.degrees, vec![2, 2, 2]);
        assert_eq!(s.power_sums, (6, 12, 24));
        let s = degree_stats(&make_named(Family::Star(3)).unwrap());
        assert_eq!(s.degrees, vec![3, 1, 1, 1]);
        assert_eq!((s.power_sums.1, s.power_sums.2, s.max_degree), (12, 30, 3));
        let s = degree_stats(&Graph::empty(5).unwrap());
        assert_eq!(s.power_sums, (0, 0, 0));
    }

    #[test]
    fn structure_examples() {
        let c3_k2 = disjoint_union(&k(3), &k(2)).unwrap();
        let sc = structure_class(&c3_k2);
        assert_eq!((sc.component_count, sc.bipartite_component_count), (2, 1));
        let shapes: Vec<_> = sc.components.iter().map(|c| c.shape).collect();
        assert_eq!(shapes, vec![ComponentShape::OddUnicyclic, ComponentShape::Tree]);
        assert_eq!(sc.triangle_count, 1);

        let sc = structure_class(&make_named(Family::Cycle(4)).unwrap());
        assert!(sc.is_bipartite && sc.has_induced_c4);
        assert_eq!(sc.components[0].shape, ComponentShape::EvenUnicyclic);

        let sc = structure_class(&k(4));
        assert_eq!((sc.bipartite_component_count, sc.triangle_count), (0, 4));
        assert!(!sc.has_induced_c4);
    }

    #[test]
    fn vertex_removal_and_permutation() {
        let p4 = make_named(Family::Path(4)).unwrap();
        let g = p4.without_vertex(1);
        assert_eq!(g, Graph::from_edges(3, &[(1, 2)]).unwrap());
        let back = p4.permuted(&[3, 2, 1, 0]);
        assert_eq!(back, p4);
        let h = g.with_vertex(0b011).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert!(Graph::from_rows(2, &[0b10, 0b00]).is_err());
    }
}
