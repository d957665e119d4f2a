//! Isomorph-free generation by canonical augmentation.
//!
//! A graph of order `k + 1` is produced from a parent of order `k` by adding
//! vertex `k` with some neighbourhood `S`. Only one `S` per orbit of the
//! parent's automorphism group is tried, and the child is kept only when the
//! new vertex lies in the canonical deletion orbit of the child: the orbit of
//! the earliest canonically placed vertex among those maximising
//! `(degree, sum of neighbour degrees)`. Every isomorphism class is then
//! reached exactly once, with memory proportional to the depth.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, Perm};
use crate::graph::{bit, members, Graph};
use crate::{Error, Result, Row, MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum GraphFilter {
    #[default]
    All,
    Connected,
    Trees,
    Unicyclic,
    ConnectedNonBipartite,
    ConnectedBipartite,
    Bipartite,
    /// Inclusive bounds on edge count and on every vertex degree.
    Bounds {
        min_edges: usize,
        max_edges: usize,
        min_degree: usize,
        max_degree: usize,
    },
}

impl GraphFilter {
    pub fn accepts(&self, g: &Graph) -> bool {
        let n = g.order();
        let m = g.edge_count();
        match *self {
            GraphFilter::All => true,
            GraphFilter::Connected => g.is_connected(),
            GraphFilter::Trees => n >= 1 && m + 1 == n && g.is_connected(),
            GraphFilter::Unicyclic => n >= 3 && m == n && g.is_connected(),
            GraphFilter::ConnectedNonBipartite => g.is_connected() && !g.is_bipartite(),
            GraphFilter::ConnectedBipartite => g.is_connected() && g.is_bipartite(),
            GraphFilter::Bipartite => g.is_bipartite(),
            GraphFilter::Bounds {
                min_edges,
                max_edges,
                min_degree,
                max_degree,
            } => {
                (min_edges..=max_edges).contains(&m)
                    && (0..n).all(|v| (min_degree..=max_degree).contains(&g.degree(v)))
            }
        }
    }

    /// Whether some descendant of `g` could still pass. Only properties closed
    /// under vertex deletion are used, so pruning never loses a graph.
    fn may_extend(&self, g: &Graph) -> bool {
        match *self {
            GraphFilter::Trees => g.edge_count() + g.components().len() == g.order(),
            GraphFilter::ConnectedBipartite | GraphFilter::Bipartite => g.is_bipartite(),
            GraphFilter::Bounds {
                max_edges,
                max_degree,
                ..
            } => {
                g.edge_count() <= max_edges && (0..g.order()).all(|v| g.degree(v) <= max_degree)
            }
            _ => true,
        }
    }
}

impl fmt::Display for GraphFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFilter::All => f.write_str("all"),
            GraphFilter::Connected => f.write_str("connected"),
            GraphFilter::Trees => f.write_str("trees"),
            GraphFilter::Unicyclic => f.write_str("unicyclic"),
            GraphFilter::ConnectedNonBipartite => f.write_str("connected-non-bipartite"),
            GraphFilter::ConnectedBipartite => f.write_str("connected-bipartite"),
            GraphFilter::Bipartite => f.write_str("bipartite"),
            GraphFilter::Bounds {
                min_edges,
                max_edges,
                min_degree,
                max_degree,
            } => write!(
                f,
                "bounds:{min_edges}-{max_edges}:{min_degree}-{max_degree}"
            ),
        }
    }
}

fn parse_range(s: &str) -> Option<(usize, usize)> {
    let (lo, hi) = s.split_once('-')?;
    Some((lo.parse().ok()?, hi.parse().ok()?))
}

/// Accepts the names printed by `Display`; bounds are written
/// `bounds:EMIN-EMAX:DMIN-DMAX`.
impl FromStr for GraphFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => GraphFilter::All,
            "connected" => GraphFilter::Connected,
            "trees" => GraphFilter::Trees,
            "unicyclic" => GraphFilter::Unicyclic,
            "connected-non-bipartite" => GraphFilter::ConnectedNonBipartite,
            "connected-bipartite" => GraphFilter::ConnectedBipartite,
            "bipartite" => GraphFilter::Bipartite,
            _ => {
                let bad = || Error::Parameter(format!("unknown graph filter `{s}`"));
                let rest = s.strip_prefix("bounds:").ok_or_else(bad)?;
                let (e, d) = rest.split_once(':').ok_or_else(bad)?;
                let (min_edges, max_edges) = parse_range(e).ok_or_else(bad)?;
                let (min_degree, max_degree) = parse_range(d).ok_or_else(bad)?;
                GraphFilter::Bounds {
                    min_edges,
                    max_edges,
                    min_degree,
                    max_degree,
                }
            }
        })
    }
}

impl Serialize for GraphFilter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GraphFilter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WorkPartition {
    pub shard_index: usize,
    pub shard_count: usize,
}

impl WorkPartition {
    pub fn new(shard_index: usize, shard_count: usize) -> Result<Self> {
        if shard_count == 0 || shard_index >= shard_count {
            return Err(Error::Parameter(format!(
                "shard {shard_index} of {shard_count} is not a valid partition"
            )));
        }
        Ok(WorkPartition {
            shard_index,
            shard_count,
        })
    }

    pub fn whole() -> Self {
        WorkPartition {
            shard_index: 0,
            shard_count: 1,
        }
    }

    pub fn all(shard_count: usize) -> Result<Vec<Self>> {
        (0..shard_count.max(1))
            .map(|i| WorkPartition::new(i, shard_count))
            .collect()
    }
}

impl Default for WorkPartition {
    fn default() -> Self {
        WorkPartition::whole()
    }
}

/// Order at which the search tree is dealt out to shards.
fn split_order(n: usize) -> usize {
    n.saturating_sub(2).max(n.min(3))
}

/// One representative neighbourhood per orbit of the group generated by
/// `gens` acting on subsets of `0..k`, smallest mask first.
fn subset_orbit_reps(k: usize, gens: &[Perm]) -> Vec<Row> {
    let total = 1usize << k;
    if gens.is_empty() {
        return (0..total as Row).collect();
    }
    let mut parent: Vec<u32> = (0..total as u32).collect();
    fn find(parent: &mut [u32], mut x: usize) -> usize {
        while parent[x] as usize != x {
            let up = parent[parent[x] as usize];
            parent[x] = up;
            x = up as usize;
        }
        x
    }
    for g in gens {
        for mask in 0..total {
            let mut image = 0usize;
            for v in members(mask as Row) {
                image |= 1 << g[v];
            }
            let (a, b) = (find(&mut parent, mask), find(&mut parent, image));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo as u32;
            }
        }
    }
    (0..total)
        .filter(|&m| find(&mut parent, m) == m)
        .map(|m| m as Row)
        .collect()
}

/// Whether `g`, the parent plus its last vertex, is the canonical extension.
fn is_canonical_child(g: &Graph) -> bool {
    let n = g.order();
    let v = n - 1;
    let score = |x: usize| {
        let nd: usize = members(g.neighbors(x)).map(|u| g.degree(u)).sum();
        (g.degree(x), nd)
    };
    let best = (0..n).map(score).max().expect("nonempty");
    let top: Row = (0..n)
        .filter(|&x| score(x) == best)
        .fold(0, |acc, x| acc | bit(x));
    if top & bit(v) == 0 {
        return false;
    }
    if top == bit(v) {
        return true;
    }
    let cf = canonical_form(g);
    let w = cf
        .labeling
        .iter()
        .map(|&x| x as usize)
        .find(|&x| top & bit(x) != 0)
        .expect("top is nonempty");
    cf.same_orbit(v, w)
}

struct Frame {
    graph: Graph,
    masks: Vec<Row>,
    next: usize,
}

impl Frame {
    fn new(graph: Graph) -> Self {
        let k = graph.order();
        let gens = if k <= 1 {
            Vec::new()
        } else {
            canonical_form(&graph).generators
        };
        Frame {
            masks: subset_orbit_reps(k, &gens),
            graph,
            next: 0,
        }
    }
}

/// Streaming enumeration of one shard; see [`enumerate`].
pub struct Enumeration {
    n: usize,
    filter: GraphFilter,
    partition: WorkPartition,
    split: usize,
    split_seen: usize,
    stack: Vec<Frame>,
    pending_trivial: bool,
}

impl Enumeration {
    fn owns_next_split_node(&mut self) -> bool {
        let mine = self.split_seen % self.partition.shard_count == self.partition.shard_index;
        self.split_seen += 1;
        mine
    }
}

impl Iterator for Enumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.pending_trivial {
            self.pending_trivial = false;
            let g = Graph::empty(0).expect("order 0");
            if self.partition.shard_index == 0 && self.filter.accepts(&g) {
                return Some(g);
            }
            return None;
        }
        while let Some(top) = self.stack.last_mut() {
            if top.next == top.masks.len() {
                self.stack.pop();
                continue;
            }
            let mask = top.masks[top.next];
            top.next += 1;
            let child = top
                .graph
                .with_vertex(mask)
                .expect("depth stays below the target order");
            if !is_canonical_child(&child) || !self.filter.may_extend(&child) {
                continue;
            }
            let k = child.order();
            if k == self.split && !self.owns_next_split_node() {
                continue;
            }
            if k == self.n {
                if self.filter.accepts(&child) {
                    return Some(child);
                }
            } else {
                self.stack.push(Frame::new(child));
            }
        }
        None
    }
}

/// Every isomorphism class of order `n` passing `filter`, one representative
/// each, restricted to the given shard. The order of the stream is
/// deterministic and the shards of any partition are disjoint and cover the
/// whole enumeration.
pub fn enumerate(n: usize, filter: GraphFilter, partition: WorkPartition) -> Result<Enumeration> {
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "order {n} exceeds the maximum of {MAX_ORDER}"
        )));
    }
    let partition = WorkPartition::new(partition.shard_index, partition.shard_count)?;
    let stack = if n == 0 {
        Vec::new()
    } else {
        vec![Frame::new(Graph::empty(0)?)]
    };
    Ok(Enumeration {
        n,
        filter,
        partition,
        split: split_order(n),
        split_seen: 0,
        stack,
        pending_trivial: n == 0,
    })
}

/// Writes one graph6 line per graph and returns the number written.
pub fn write_graph6<W: Write>(graphs: impl Iterator<Item = Graph>, mut out: W) -> Result<usize> {
    let mut count = 0;
    for g in graphs {
        writeln!(out, "{}", crate::graph6::encode_graph6(&g))?;
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical_code;
    use std::collections::HashSet;

    fn count(n: usize, filter: GraphFilter) -> usize {
        enumerate(n, filter, WorkPartition::whole()).unwrap().count()
    }

    #[test]
    fn small_counts() {
        let graphs: Vec<usize> = (0..=7).map(|n| count(n, GraphFilter::All)).collect();
        assert_eq!(graphs, [1, 1, 2, 4, 11, 34, 156, 1044]);
        let trees: Vec<usize> = (1..=9).map(|n| count(n, GraphFilter::Trees)).collect();
        assert_eq!(trees, [1, 1, 1, 2, 3, 6, 11, 23, 47]);
        let connected: Vec<usize> = (1..=7).map(|n| count(n, GraphFilter::Connected)).collect();
        assert_eq!(connected, [1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn outputs_are_pairwise_non_isomorphic() {
        let codes: HashSet<_> = enumerate(6, GraphFilter::All, WorkPartition::whole())
            .unwrap()
            .map(|g| canonical_code(&g))
            .collect();
        assert_eq!(codes.len(), 156);
    }

    #[test]
    fn shards_partition_the_output() {
        let whole: HashSet<_> = enumerate(7, GraphFilter::All, WorkPartition::whole())
            .unwrap()
            .map(|g| canonical_code(&g))
            .collect();
        for count in [2, 3, 5] {
            let mut union = HashSet::new();
            for p in WorkPartition::all(count).unwrap() {
                for g in enumerate(7, GraphFilter::All, p).unwrap() {
                    assert!(union.insert(canonical_code(&g)));
                }
            }
            assert_eq!(union, whole);
        }
    }

    #[test]
    fn subset_orbits_of_a_symmetric_parent() {
        // K3 has one subset orbit per size.
        let cf = canonical_form(&Graph::complete(3).unwrap());
        assert_eq!(subset_orbit_reps(3, &cf.generators).len(), 4);
        assert_eq!(subset_orbit_reps(3, &[]).len(), 1 << 3);
    }

    #[test]
    fn filter_names_round_trip() {
        for f in [
            GraphFilter::All,
            GraphFilter::ConnectedNonBipartite,
            GraphFilter::Bounds {
                min_edges: 1,
                max_edges: 5,
                min_degree: 0,
                max_degree: 2,
            },
        ] {
            assert_eq!(f.to_string().parse::<GraphFilter>().unwrap(), f);
        }
        assert!("cubic".parse::<GraphFilter>().is_err());
        assert!(WorkPartition::new(3, 3).is_err());
        assert!(enumerate(MAX_ORDER + 1, GraphFilter::All, WorkPartition::whole()).is_err());
    }
}
