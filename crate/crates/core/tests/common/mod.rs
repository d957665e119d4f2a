//! Brute-force helpers shared by the oracle tests and the acceptance run.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cospec::Graph;

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for j in 1..n {
        for i in 0..j {
            v.push((i, j));
        }
    }
    v
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Adjacency as a bit mask over `pairs(n)`.
pub fn labeled(n: usize, mask: u32) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for (k, &(i, j)) in pairs(n).iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[i][j] = true;
            adj[j][i] = true;
        }
    }
    adj
}

pub fn naive_canon(adj: &[Vec<bool>], perms: &[Vec<usize>], ps: &[(usize, usize)]) -> u32 {
    perms
        .iter()
        .map(|p| {
            ps.iter()
                .enumerate()
                .filter(|(_, &(i, j))| adj[p[i]][p[j]])
                .fold(0u32, |m, (k, _)| m | 1 << k)
        })
        .min()
        .unwrap()
}

pub fn to_graph(adj: &[Vec<bool>]) -> Graph {
    let n = adj.len();
    let edges: Vec<_> = pairs(n).into_iter().filter(|&(i, j)| adj[i][j]).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// One representative per isomorphism class, keyed by the naive canonical mask.
pub fn naive_classes(n: usize) -> BTreeMap<u32, Vec<Vec<bool>>> {
    let ps = pairs(n);
    let perms = permutations(n);
    let mut out = BTreeMap::new();
    for mask in 0..1u32 << ps.len() {
        let adj = labeled(n, mask);
        out.entry(naive_canon(&adj, &perms, &ps)).or_insert(adj);
    }
    out
}

