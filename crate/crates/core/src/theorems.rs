//! Exhaustive checks that unions `G ∪ rK1 ∪ sK2` stay determined by their
//! spectrum, for every base graph meeting a claim's hypotheses up to a total
//! order budget.
//!
//! Determination of a base graph is always established from a census at its
//! own order, never assumed. A union is confirmed when its cospectral class
//! in the census of the total order has no other member; otherwise every
//! other member is reported as a counterexample.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_code;
use crate::cospectral::{mates, CensusStore, SpectrumKey};
use crate::enumerate::{enumerate, GraphFilter, WorkPartition};
use crate::graph::{make_named, structure_class, union_with_isolates_and_matching, Family, Graph};
use crate::graph6::encode_graph6;
use crate::linalg::{build_matrix, char_poly, CharPoly, MatrixKind};
use crate::{Error, Result, MAX_ORDER};

pub const REPORT_SCHEMA: &str = "cospec-theorem-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// A DLS tree with isolated vertices and disjoint edges is DLS.
    TreeDls,
    /// A DQS tree of odd order with isolated vertices and one edge is DQS.
    TreeDqs,
    /// A DQS odd unicyclic graph of order at least 7 in such a union is DQS.
    OddUnicyclic,
    /// A DQS non-bipartite bicyclic graph with an induced `C4`, order at
    /// least 5, in such a union is DQS.
    BicyclicC4,
    /// A DQS connected non-bipartite graph of order at least 3 in such a
    /// union is DQS.
    NonBipartite,
    CorKn,
    CorKnMinusMatching,
    CorRegularNMinus2,
    CorRegularNMinus3,
    CorFriendship,
    /// DQS trees outside the odd-order, single-edge case. Exploratory: the
    /// outcome is reported without a claim behind it.
    TreeDqsProbe,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::TreeDls,
        TheoremId::TreeDqs,
        TheoremId::OddUnicyclic,
        TheoremId::BicyclicC4,
        TheoremId::NonBipartite,
        TheoremId::CorKn,
        TheoremId::CorKnMinusMatching,
        TheoremId::CorRegularNMinus2,
        TheoremId::CorRegularNMinus3,
        TheoremId::CorFriendship,
        TheoremId::TreeDqsProbe,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::TreeDls => "tree-dls",
            TheoremId::TreeDqs => "tree-dqs",
            TheoremId::OddUnicyclic => "odd-unicyclic",
            TheoremId::BicyclicC4 => "bicyclic-c4",
            TheoremId::NonBipartite => "non-bipartite",
            TheoremId::CorKn => "cor-Kn",
            TheoremId::CorKnMinusMatching => "cor-Kn-minus-matching",
            TheoremId::CorRegularNMinus2 => "cor-(n-2)-regular",
            TheoremId::CorRegularNMinus3 => "cor-(n-3)-regular",
            TheoremId::CorFriendship => "cor-friendship",
            TheoremId::TreeDqsProbe => "tree-dqs-probe",
        }
    }

    /// The spectrum the claim is about.
    pub fn kind(self) -> MatrixKind {
        match self {
            TheoremId::TreeDls => MatrixKind::L,
            _ => MatrixKind::Q,
        }
    }

    pub fn is_exploratory(self) -> bool {
        self == TheoremId::TreeDqsProbe
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s || t.as_str().replace('-', "") == s.replace('-', ""))
            .ok_or_else(|| {
                let known: Vec<_> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
                Error::Parameter(format!("unknown theorem `{s}`; known: {}", known.join(", ")))
            })
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Largest total order checked. Orders above 9 need explicit consent, and
/// no budget may exceed 10.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget(usize);

impl Budget {
    pub const DEFAULT: Budget = Budget(9);

    pub fn new(max_order: usize, allow_order_10: bool) -> Result<Self> {
        match max_order {
            0..=9 => Ok(Budget(max_order)),
            10 if allow_order_10 => Ok(Budget(10)),
            10 => Err(Error::Capacity(
                "a budget of 10 needs the explicit order-10 opt-in".into(),
            )),
            _ => Err(Error::Capacity(format!(
                "budget {max_order} exceeds the supported maximum of 10"
            ))),
        }
    }

    pub fn max_order(self) -> usize {
        self.0
    }

    /// Largest base order: every base gets room for at least one `K2` or
    /// two isolated vertices.
    pub fn max_base_order(self) -> usize {
        self.0.saturating_sub(2)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremInstance {
    pub theorem: TheoremId,
    pub base: Graph,
    pub r: usize,
    pub s: usize,
}

impl TheoremInstance {
    pub fn total_order(&self) -> usize {
        self.base.order() + self.r + 2 * self.s
    }

    fn determined(&self, store: &CensusStore, kind: MatrixKind) -> Result<bool> {
        let census = store.get(self.base.order(), kind)?;
        Ok(mates(&self.base, kind, &census)?.is_empty())
    }

    /// Checks the claim's hypotheses on the base graph and parameters.
    pub fn check_hypotheses(&self, store: &CensusStore) -> Result<()> {
        let g = &self.base;
        let n = g.order();
        let sc = structure_class(g);
        let fail = |why: &str| {
            Err(Error::Hypothesis(format!(
                "{} with base {} (r = {}, s = {}): {why}",
                self.theorem,
                encode_graph6(g),
                self.r,
                self.s
            )))
        };
        let dqs = || self.determined(store, MatrixKind::Q);
        match self.theorem {
            TheoremId::TreeDls => {
                if !sc.is_tree() {
                    return fail("base is not a tree");
                }
                if !self.determined(store, MatrixKind::L)? {
                    return fail("base is not DLS");
                }
            }
            TheoremId::TreeDqs => {
                if !sc.is_tree() {
                    return fail("base is not a tree");
                }
                if n.is_multiple_of(2) || self.s != 1 {
                    return fail("needs odd order and s = 1");
                }
                if !dqs()? {
                    return fail("base is not DQS");
                }
            }
            TheoremId::TreeDqsProbe => {
                if !sc.is_tree() {
                    return fail("base is not a tree");
                }
                if n % 2 == 1 && self.s == 1 {
                    return fail("odd order with s = 1 belongs to the proven case");
                }
                if !dqs()? {
                    return fail("base is not DQS");
                }
            }
            TheoremId::OddUnicyclic => {
                if !sc.is_odd_unicyclic() || n < 7 {
                    return fail("needs an odd unicyclic base of order at least 7");
                }
                if !dqs()? {
                    return fail("base is not DQS");
                }
            }
            TheoremId::BicyclicC4 => {
                if !sc.is_bicyclic() || sc.is_bipartite || !sc.has_induced_c4 || n < 5 {
                    return fail(
                        "needs a non-bipartite bicyclic base with an induced C4 and order at least 5",
                    );
                }
                if !dqs()? {
                    return fail("base is not DQS");
                }
            }
            TheoremId::NonBipartite => {
                if !sc.is_connected() || sc.is_bipartite || n < 3 {
                    return fail("needs a connected non-bipartite base of order at least 3");
                }
                if !dqs()? {
                    return fail("base is not DQS");
                }
            }
            TheoremId::CorKn => {
                if n < 3 || g.edge_count() != n * (n - 1) / 2 {
                    return fail("base is not a complete graph of order at least 3");
                }
            }
            TheoremId::CorKnMinusMatching => {
                let missing = n * (n - 1) / 2 - g.edge_count();
                let is_matching_complement =
                    missing >= 1 && (0..n).all(|v| g.degree(v) + 2 >= n);
                if n < 3 || !is_matching_complement {
                    return fail("base is not K_n minus a nonempty matching, n >= 3");
                }
            }
            TheoremId::CorRegularNMinus2 | TheoremId::CorRegularNMinus3 => {
                let gap = if self.theorem == TheoremId::CorRegularNMinus2 { 2 } else { 3 };
                if n <= gap || !sc.is_connected() || (0..n).any(|v| g.degree(v) + gap != n) {
                    return fail("base is not a connected regular graph of the required degree");
                }
            }
            TheoremId::CorFriendship => {
                let k = n / 2;
                if n < 3 || n.is_multiple_of(2) {
                    return fail("no friendship graph has this order");
                }
                let friendship = make_named(Family::Friendship(k))?;
                let census = store.get(n, MatrixKind::Q)?;
                let key = SpectrumKey::of(&friendship, MatrixKind::Q);
                if SpectrumKey::of(g, MatrixKind::Q) != key
                    || census.class(&key).is_none_or(|c| !c.contains(&canonical_code(g)))
                {
                    return fail("base is not Q-cospectral with a friendship graph");
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    /// Non-isomorphic graphs sharing the union's spectrum.
    Counterexamples(Vec<Graph>),
}

/// Builds `G ∪ rK1 ∪ sK2` and scans the census of its order for other
/// graphs with the same characteristic polynomial.
pub fn verify_union_determined(
    g: &Graph,
    r: usize,
    s: usize,
    kind: MatrixKind,
    store: &CensusStore,
) -> Result<Verdict> {
    if kind == MatrixKind::A {
        return Err(Error::Parameter("union checks are for the L and Q spectra".into()));
    }
    let total = g.order() + r + 2 * s;
    if total > store.max_order() {
        return Err(Error::Capacity(format!(
            "union of order {total} exceeds the enumeration budget of {}",
            store.max_order()
        )));
    }
    let h = union_with_isolates_and_matching(g, r, s)?;
    let census = store.get(total, kind)?;
    let others = mates(&h, kind, &census)?;
    Ok(if others.is_empty() {
        Verdict::Confirmed
    } else {
        Verdict::Counterexamples(others)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub base: String,
    pub base_order: usize,
    pub r: usize,
    pub s: usize,
    pub total_order: usize,
    pub confirmed: bool,
    /// graph6 of each cospectral mate of the union.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub schema: &'static str,
    pub theorem: TheoremId,
    pub kind: MatrixKind,
    pub budget: usize,
    pub exploratory: bool,
    pub instances_checked: usize,
    pub instances_confirmed: usize,
    pub counterexamples: Vec<InstanceRecord>,
    pub instances: Vec<InstanceRecord>,
    /// Base graphs of the right shape turned away by the determination gate.
    pub bases_rejected: usize,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u128>,
}

impl TheoremReport {
    pub fn all_confirmed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// 0 when every instance is confirmed or the run is exploratory, 1 when
    /// a claim has a counterexample.
    pub fn exit_code(&self) -> i32 {
        if self.all_confirmed() || self.exploratory {
            0
        } else {
            1
        }
    }

    pub fn text_row(&self) -> String {
        format!(
            "{:<24} {:>2} {:>6} {:>9} {:>8}{}",
            self.theorem.as_str(),
            self.budget,
            self.instances_checked,
            self.instances_confirmed,
            self.instances_checked - self.instances_confirmed,
            if self.exploratory { "  (exploratory)" } else { "" }
        )
    }

    pub fn text_header() -> String {
        format!(
            "{:<24} {:>2} {:>6} {:>9} {:>8}",
            "theorem", "B", "checked", "confirmed", "failed"
        )
    }
}

fn graphs(n: usize, filter: GraphFilter) -> Result<Vec<Graph>> {
    Ok(enumerate(n, filter, WorkPartition::whole())?.collect())
}

/// Candidate bases of the right shape at order `n`; determination gating
/// happens in [`TheoremInstance::check_hypotheses`].
fn candidate_bases(id: TheoremId, n: usize, store: &CensusStore) -> Result<Vec<Graph>> {
    let regular = |gap: usize| -> Result<Vec<Graph>> {
        if n <= gap {
            return Ok(Vec::new());
        }
        let d = n - gap;
        let filter = GraphFilter::Bounds {
            min_edges: 0,
            max_edges: n * d / 2,
            min_degree: d,
            max_degree: d,
        };
        Ok(graphs(n, filter)?.into_iter().filter(|g| g.is_connected()).collect())
    };
    Ok(match id {
        TheoremId::TreeDls | TheoremId::TreeDqs | TheoremId::TreeDqsProbe => {
            if id == TheoremId::TreeDqs && n.is_multiple_of(2) {
                Vec::new()
            } else {
                graphs(n, GraphFilter::Trees)?
            }
        }
        TheoremId::OddUnicyclic if n >= 7 => graphs(n, GraphFilter::Unicyclic)?
            .into_iter()
            .filter(|g| structure_class(g).is_odd_unicyclic())
            .collect(),
        TheoremId::BicyclicC4 if n >= 5 => graphs(n, GraphFilter::ConnectedNonBipartite)?
            .into_iter()
            .filter(|g| {
                let sc = structure_class(g);
                sc.is_bicyclic() && sc.has_induced_c4
            })
            .collect(),
        TheoremId::NonBipartite if n >= 3 => graphs(n, GraphFilter::ConnectedNonBipartite)?,
        TheoremId::CorKn if n >= 3 => vec![Graph::complete(n)?],
        TheoremId::CorKnMinusMatching if n >= 3 => (1..=n / 2)
            .map(|matching| make_named(Family::CompleteMinusMatching { order: n, matching }))
            .collect::<Result<_>>()?,
        TheoremId::CorRegularNMinus2 => regular(2)?,
        TheoremId::CorRegularNMinus3 => regular(3)?,
        TheoremId::CorFriendship if n >= 3 && n % 2 == 1 => {
            let f = make_named(Family::Friendship(n / 2))?;
            let census = store.get(n, MatrixKind::Q)?;
            let class = census
                .class(&SpectrumKey::of(&f, MatrixKind::Q))
                .expect("a graph's own class is in the full census");
            class.iter().map(|c| c.to_graph()).collect()
        }
        _ => Vec::new(),
    })
}

fn parameter_pairs(id: TheoremId, n: usize, budget: usize) -> Vec<(usize, usize)> {
    let room = budget.saturating_sub(n);
    let mut out = Vec::new();
    for s in 0..=room / 2 {
        if id == TheoremId::TreeDqs && s != 1 {
            continue;
        }
        for r in 0..=room - 2 * s {
            if id == TheoremId::TreeDqsProbe && n % 2 == 1 && s == 1 {
                continue;
            }
            out.push((r, s));
        }
    }
    out
}

/// Runs one claim over every hypothesis-satisfying instance within the
/// budget. Censuses come from `store`, which must reach the budget's order.
pub fn run_theorem(id: TheoremId, budget: Budget, store: &CensusStore) -> Result<TheoremReport> {
    let start = Instant::now();
    let b = budget.max_order();
    if store.max_order() < b {
        return Err(Error::Capacity(format!(
            "census store reaches order {}, budget needs {b}",
            store.max_order()
        )));
    }
    let kind = id.kind();
    let mut instances = Vec::new();
    let mut bases_rejected = 0;
    let mut notes = Vec::new();
    let mut smallest_base = None;
    for n in 1..=budget.max_base_order() {
        for base in candidate_bases(id, n, store)? {
            let pairs = parameter_pairs(id, n, b);
            let Some(&(r0, s0)) = pairs.first() else { continue };
            let probe = TheoremInstance { theorem: id, base, r: r0, s: s0 };
            match probe.check_hypotheses(store) {
                Ok(()) => {}
                Err(Error::Hypothesis(_)) => {
                    bases_rejected += 1;
                    continue;
                }
                Err(e) => return Err(e),
            }
            smallest_base.get_or_insert(n);
            for (r, s) in pairs {
                let inst = TheoremInstance { theorem: id, base, r, s };
                let verdict = verify_union_determined(&base, r, s, kind, store)?;
                let mates = match verdict {
                    Verdict::Confirmed => Vec::new(),
                    Verdict::Counterexamples(gs) => gs.iter().map(encode_graph6).collect(),
                };
                instances.push(InstanceRecord {
                    base: encode_graph6(&base),
                    base_order: n,
                    r,
                    s,
                    total_order: inst.total_order(),
                    confirmed: mates.is_empty(),
                    mates,
                });
            }
        }
    }
    instances.sort_by(|a, b| {
        (a.base_order, &a.base, a.s, a.r).cmp(&(b.base_order, &b.base, b.s, b.r))
    });
    match smallest_base {
        Some(n) => notes.push(format!("smallest admissible base order: {n}")),
        None => notes.push("no admissible base within the budget".into()),
    }
    if id == TheoremId::BicyclicC4 {
        notes.push(format!(
            "smallest non-bipartite bicyclic graph with an induced C4 has order {}",
            smallest_bicyclic_c4_order(b)?.map_or("above the budget".into(), |n| n.to_string())
        ));
    }
    let counterexamples: Vec<_> = instances.iter().filter(|i| !i.confirmed).cloned().collect();
    let confirmed = instances.len() - counterexamples.len();
    Ok(TheoremReport {
        schema: REPORT_SCHEMA,
        theorem: id,
        kind,
        budget: b,
        exploratory: id.is_exploratory(),
        instances_checked: instances.len(),
        instances_confirmed: confirmed,
        counterexamples,
        instances,
        bases_rejected,
        notes,
        runtime_ms: Some(start.elapsed().as_millis()),
    })
}

fn smallest_bicyclic_c4_order(max: usize) -> Result<Option<usize>> {
    for n in 4..=max.min(MAX_ORDER) {
        let found = enumerate(n, GraphFilter::ConnectedNonBipartite, WorkPartition::whole())?
            .any(|g| {
                let sc = structure_class(&g);
                sc.is_bicyclic() && sc.has_induced_c4
            });
        if found {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `Q(G ∪ rK1 ∪ sK2) = Q(G) · λ^(r+s) · (λ − 2)^s` as polynomials.
pub fn union_poly_identity(g: &Graph, r: usize, s: usize) -> Result<bool> {
    let h = union_with_isolates_and_matching(g, r, s)?;
    let lhs = char_poly(&build_matrix(&h, MatrixKind::Q));
    let rhs = char_poly(&build_matrix(g, MatrixKind::Q))
        .mul(&CharPoly::monomial(r + s))
        .mul(&CharPoly::linear(2).pow(s));
    Ok(lhs == rhs)
}

/// Seeded random `(G, r, s)` with `|G| ≥ 1` and total order at most
/// `max_total`; each edge of `G` is present with probability 1/2.
pub fn random_unions(seed: u64, count: usize, max_total: usize) -> Result<Vec<(Graph, usize, usize)>> {
    if max_total == 0 || max_total > MAX_ORDER {
        return Err(Error::Parameter(format!("total order {max_total} out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = rng.gen_range(1..=max_total);
        let s = rng.gen_range(0..=(max_total - n) / 2);
        let r = rng.gen_range(0..=max_total - n - 2 * s);
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            for u in 0..v {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v);
                }
            }
        }
        out.push((g, r, s));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert!("nonsense".parse::<TheoremId>().is_err());
    }

    #[test]
    fn budgets() {
        assert_eq!(Budget::default().max_order(), 9);
        assert!(Budget::new(10, false).is_err());
        assert!(Budget::new(10, true).is_ok());
        assert!(Budget::new(11, true).is_err());
    }

    #[test]
    fn small_union_verdicts() {
        let store = CensusStore::new(6);
        let k2 = Graph::complete(2).unwrap();
        for kind in [MatrixKind::L, MatrixKind::Q] {
            assert_eq!(verify_union_determined(&k2, 0, 0, kind, &store).unwrap(), Verdict::Confirmed);
        }
        let p3 = make_named(Family::Path(3)).unwrap();
        assert_eq!(
            verify_union_determined(&p3, 1, 1, MatrixKind::L, &store).unwrap(),
            Verdict::Confirmed
        );
        // K3 ∪ K1 shares its Q-spectrum with K1,3, so the union has a mate.
        let k3 = Graph::complete(3).unwrap();
        match verify_union_determined(&k3, 1, 1, MatrixKind::Q, &store).unwrap() {
            Verdict::Counterexamples(m) => {
                assert_eq!(m.len(), 1);
                assert_eq!(m[0].edge_count(), 4);
            }
            Verdict::Confirmed => panic!("expected a mate"),
        }
        assert!(matches!(
            verify_union_determined(&k3, 2, 1, MatrixKind::Q, &store),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn hypotheses_are_enforced() {
        let store = CensusStore::new(7);
        let p3 = make_named(Family::Path(3)).unwrap();
        let inst = TheoremInstance { theorem: TheoremId::TreeDqs, base: p3, r: 0, s: 2 };
        assert!(matches!(inst.check_hypotheses(&store), Err(Error::Hypothesis(_))));
        let inst = TheoremInstance { theorem: TheoremId::TreeDqs, base: p3, r: 0, s: 1 };
        assert!(inst.check_hypotheses(&store).is_ok());
        let c4 = make_named(Family::Cycle(4)).unwrap();
        let inst = TheoremInstance { theorem: TheoremId::NonBipartite, base: c4, r: 0, s: 0 };
        assert!(matches!(inst.check_hypotheses(&store), Err(Error::Hypothesis(_))));
        let inst = TheoremInstance {
            theorem: TheoremId::CorKnMinusMatching,
            base: c4,
            r: 1,
            s: 0,
        };
        assert!(inst.check_hypotheses(&store).is_ok());
    }

    #[test]
    fn parameter_grid() {
        assert_eq!(parameter_pairs(TheoremId::NonBipartite, 7, 9).len(), 3 + 1);
        assert_eq!(parameter_pairs(TheoremId::TreeDqs, 5, 9), vec![(0, 1), (1, 1), (2, 1)]);
        assert!(parameter_pairs(TheoremId::TreeDqsProbe, 5, 9).iter().all(|&(_, s)| s != 1));
    }

    #[test]
    fn union_identity_on_samples() {
        for (g, r, s) in random_unions(7, 20, 10).unwrap() {
            assert!(g.order() + r + 2 * s <= 10);
            assert!(union_poly_identity(&g, r, s).unwrap());
        }
        assert_eq!(random_unions(7, 5, 10).unwrap(), random_unions(7, 5, 10).unwrap());
    }

    #[test]
    fn small_budget_report() {
        let store = CensusStore::new(6);
        let report = run_theorem(TheoremId::TreeDls, Budget::new(6, false).unwrap(), &store).unwrap();
        assert!(report.instances_checked > 0);
        assert_eq!(
            report.instances_checked,
            report.instances_confirmed + report.counterexamples.len()
        );
    }
}
