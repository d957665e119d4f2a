//! Brute-force cross-checks on small orders: labeled enumeration with a
//! permutation-minimum canonical form, and characteristic polynomials by
//! permutation expansion.

use std::collections::{BTreeMap, HashMap, HashSet};

use cospec::cospectral::classify;
use cospec::{build_matrix, canonical_code, char_poly, enumerate, GraphFilter, MatrixKind, WorkPartition};
use num_bigint::BigInt;

mod common;
use common::*;

fn is_tree(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    let m: usize = adj.iter().map(|r| r.iter().filter(|&&b| b).count()).sum::<usize>() / 2;
    if n == 0 || m != n - 1 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if adj[u][v] && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

type Poly = Vec<i128>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn sign(p: &[usize]) -> i128 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// det(xI - M) by the Leibniz formula over polynomial entries.
fn leibniz_char_poly(m: &[Vec<i128>]) -> Poly {
    let n = m.len();
    let mut total: Poly = vec![0; n + 1];
    for p in permutations(n) {
        let mut term: Poly = vec![sign(&p)];
        for (i, &j) in p.iter().enumerate() {
            let entry = if i == j { vec![-m[i][j], 1] } else { vec![-m[i][j]] };
            term = poly_mul(&term, &entry);
        }
        for (k, c) in term.into_iter().enumerate() {
            total[k] += c;
        }
    }
    total
}

fn naive_matrix(adj: &[Vec<bool>], kind: MatrixKind) -> Vec<Vec<i128>> {
    let n = adj.len();
    let mut m = vec![vec![0i128; n]; n];
    for i in 0..n {
        let d = adj[i].iter().filter(|&&b| b).count() as i128;
        for j in 0..n {
            if adj[i][j] {
                m[i][j] = if kind == MatrixKind::L { -1 } else { 1 };
            }
        }
        m[i][i] = match kind {
            MatrixKind::A => 0,
            _ => d,
        };
    }
    m
}

fn as_big(p: &Poly) -> Vec<BigInt> {
    p.iter().map(|&c| BigInt::from(c)).collect()
}

#[test]
fn class_counts_match_brute_force() {
    let expected = [1, 1, 2, 4, 11, 34, 156];
    for n in 0..=6 {
        let classes = naive_classes(n);
        assert_eq!(classes.len(), expected[n], "order {n}");
        let ours: HashSet<_> = enumerate(n, GraphFilter::All, WorkPartition::whole())
            .unwrap()
            .map(|g| canonical_code(&g))
            .collect();
        assert_eq!(ours.len(), classes.len(), "order {n}");
        let theirs: HashSet<_> = classes.values().map(|a| canonical_code(&to_graph(a))).collect();
        assert_eq!(ours, theirs, "order {n}");
    }
}

#[test]
fn canonical_code_separates_exactly_the_naive_classes() {
    let n = 5;
    let ps = pairs(n);
    let perms = permutations(n);
    let mut by_naive: HashMap<u32, HashSet<_>> = HashMap::new();
    for mask in 0..1u32 << ps.len() {
        let adj = labeled(n, mask);
        by_naive
            .entry(naive_canon(&adj, &perms, &ps))
            .or_default()
            .insert(canonical_code(&to_graph(&adj)));
    }
    assert!(by_naive.values().all(|s| s.len() == 1));
    let distinct: HashSet<_> = by_naive.values().flatten().collect();
    assert_eq!(distinct.len(), by_naive.len());
}

#[test]
fn tree_counts_match_brute_force() {
    let expected = [0, 1, 1, 1, 2, 3, 6];
    for n in 1..=6 {
        let naive = naive_classes(n).values().filter(|a| is_tree(a)).count();
        assert_eq!(naive, expected[n]);
        let ours = enumerate(n, GraphFilter::Trees, WorkPartition::whole()).unwrap().count();
        assert_eq!(ours, naive, "order {n}");
    }
}

#[test]
fn char_poly_matches_leibniz() {
    for n in 1..=5 {
        for adj in naive_classes(n).values() {
            let g = to_graph(adj);
            for kind in MatrixKind::ALL {
                let ours = char_poly(&build_matrix(&g, kind));
                let theirs = leibniz_char_poly(&naive_matrix(adj, kind));
                assert_eq!(ours.coeffs(), as_big(&theirs).as_slice(), "{g} {kind}");
            }
        }
    }
}

#[test]
fn laplacian_census_matches_brute_force() {
    let n = 5;
    let mut naive: HashMap<Poly, usize> = HashMap::new();
    for adj in naive_classes(n).values() {
        *naive.entry(leibniz_char_poly(&naive_matrix(adj, MatrixKind::L))).or_default() += 1;
    }
    let mut naive_hist: BTreeMap<usize, usize> = BTreeMap::new();
    for size in naive.values() {
        *naive_hist.entry(*size).or_default() += 1;
    }
    let census = classify(n, MatrixKind::L, GraphFilter::All, 1).unwrap();
    assert_eq!(census.class_count(), naive.len());
    assert_eq!(census.size_histogram(), naive_hist);
    for (key, members) in census.classes() {
        let p = key.to_poly();
        let coeffs: Poly = p.coeffs().iter().map(|c| i128::try_from(c).unwrap()).collect();
        assert_eq!(naive[&coeffs], members.len());
    }
}
