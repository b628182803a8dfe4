//! Migration decisions: per-process positive/negative loads, the benefit
//! of moving a process or a co-located group one hop, and the min-cut
//! construction that picks the most beneficial group.
//!
//! Loads are always taken with respect to a 1-hop move `s -> d`:
//!
//! * tree mode: a partner contributes positive load when its host is `d` or
//!   is reached through `d`, negative load otherwise (co-located partners,
//!   including the virtual process of `s`, are negative);
//! * hierarchical mode, same cluster: positive load is the traffic with
//!   processes on server `d`, negative load the traffic with processes on
//!   server `s`;
//! * hierarchical mode, across clusters: each partner contributes the exact
//!   change in its hop distance.
//!
//! In all three cases `positive - negative` is exactly the drop in
//! communication cost when the process moves alone.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::app_model::{AppGraph, ProcessId};
use crate::cost::Assignment;
use crate::error::{domain, Error, Result};
use crate::mincut::{min_cut, FlowNetwork};
use crate::scalar::Weight;
use crate::topology::{NodeId, Topology};

/// Damping factor applied to negative loads: a move is accepted only when
/// `positive > gamma * negative`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InertiaConfig {
    gamma: Ratio<u64>,
}

impl Default for InertiaConfig {
    fn default() -> Self {
        Self::none()
    }
}

impl InertiaConfig {
    /// `gamma = 1`, no damping.
    pub fn none() -> Self {
        Self {
            gamma: Ratio::from_integer(1),
        }
    }

    /// Accepts decimal factors; resolution is 1e-6.
    pub fn new(gamma: f64) -> Result<Self> {
        if !(1.0..=1e9).contains(&gamma) {
            return Err(Error::Config(format!("inertia factor must be >= 1, got {gamma}")));
        }
        let scaled = (gamma * 1e6).round() as u64;
        Self::from_ratio(scaled, 1_000_000)
    }

    pub fn from_ratio(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 || numer < denom {
            return Err(Error::Config(format!("inertia factor {numer}/{denom} is below 1")));
        }
        Ok(Self {
            gamma: Ratio::new(numer, denom),
        })
    }

    pub fn gamma(&self) -> f64 {
        *self.gamma.numer() as f64 / *self.gamma.denom() as f64
    }

    pub fn is_damping(&self) -> bool {
        self.gamma != Ratio::from_integer(1)
    }

    /// Exact test of `positive - gamma * negative > 0`.
    pub fn accepts<W: Weight>(&self, positive: W, negative: W) -> bool {
        let num = W::from_u64(*self.gamma.numer()).expect("gamma numerator fits weight");
        let den = W::from_u64(*self.gamma.denom()).expect("gamma denominator fits weight");
        positive * den > negative * num
    }

    pub fn adjusted<W: Weight>(&self, positive: W, negative: W) -> f64 {
        positive.to_f64().unwrap_or(f64::NAN) - self.gamma() * negative.to_f64().unwrap_or(f64::NAN)
    }
}

/// Loads of one process for one candidate move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProcessLoads<W> {
    pub positive: W,
    /// Includes `colocated`.
    pub negative: W,
    /// Traffic with real processes sharing the source host.
    pub colocated: W,
}

impl<W: Weight> ProcessLoads<W> {
    fn zero() -> Self {
        Self {
            positive: W::zero(),
            negative: W::zero(),
            colocated: W::zero(),
        }
    }

    pub fn raw_benefit(&self) -> W {
        self.positive - self.negative
    }

    /// Negative load excluding co-located real partners: the source-edge
    /// weight of the min-cut graph.
    pub fn external_negative(&self) -> W {
        self.negative - self.colocated
    }
}

/// A group of co-located processes moving together from `source` to `dest`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MigrationProposal<W> {
    pub group: Vec<ProcessId>,
    pub source: NodeId,
    pub dest: NodeId,
    pub positive_load: W,
    pub negative_load: W,
    /// `positive_load - negative_load`: the exact cost drop of the move.
    pub raw_benefit: W,
}

impl<W: Weight> MigrationProposal<W> {
    fn new(group: Vec<ProcessId>, source: NodeId, dest: NodeId, positive: W, negative: W) -> Self {
        Self {
            group,
            source,
            dest,
            positive_load: positive,
            negative_load: negative,
            raw_benefit: positive - negative,
        }
    }

    pub fn is_single(&self) -> bool {
        self.group.len() == 1
    }

    /// Benefit with the negative load scaled by the inertia factor.
    pub fn adjusted_benefit(&self, inertia: &InertiaConfig) -> f64 {
        inertia.adjusted(self.positive_load, self.negative_load)
    }

    pub fn accepted_by(&self, inertia: &InertiaConfig) -> bool {
        inertia.accepts(self.positive_load, self.negative_load)
    }
}

/// Which migration mechanism a node may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    /// Singles when the hosted processes exchange no traffic with each
    /// other, min-cut groups otherwise.
    #[default]
    Adaptive,
    SingleOnly,
    SuperOnly,
}

fn check_move<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
) -> Result<()> {
    app.check_real(i)?;
    check_hop(topo, s, d)?;
    if f.host(i) != s {
        return Err(domain(format!("{i} is hosted at {}, not {s}", f.host(i))));
    }
    Ok(())
}

fn check_hop(topo: &Topology, s: NodeId, d: NodeId) -> Result<()> {
    if topo.hop_distance(s, d)? != 1 {
        return Err(domain(format!("{s} and {d} are not 1-hop neighbors")));
    }
    Ok(())
}

/// Loads of `i` for the move `s -> d`, dispatching on the topology kind.
pub fn process_loads<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
) -> Result<ProcessLoads<W>> {
    check_move(app, topo, f, i, s, d)?;
    Ok(match topo {
        Topology::Tree(_) => tree_loads(app, topo, f, i, s, d),
        Topology::Hierarchical(_) if topo.same_cluster(s, d) => {
            let (positive, negative) = intra_cluster_loads(app, f, i, s, d);
            ProcessLoads {
                positive,
                negative,
                colocated: colocated_load(app, f, i, s),
            }
        }
        Topology::Hierarchical(_) => hop_change_loads(app, topo, f, i, s, d),
    })
}

fn colocated_load<W: Weight>(app: &AppGraph<W>, f: &Assignment, i: ProcessId, s: NodeId) -> W {
    app.partners(i)
        .iter()
        .filter(|&&(k, _)| app.is_real(k) && f.host(k) == s)
        .map(|&(_, v)| v)
        .sum()
}

// q_ik^d = 1 iff partner k is not co-located and d is on the route s -> host(k).
fn tree_loads<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
) -> ProcessLoads<W> {
    let mut loads = ProcessLoads::zero();
    for &(k, v) in app.partners(i) {
        let hk = f.host(k);
        if topo.on_path_unchecked(d, s, hk) {
            loads.positive = loads.positive + v;
        } else {
            loads.negative = loads.negative + v;
            if hk == s && app.is_real(k) {
                loads.colocated = loads.colocated + v;
            }
        }
    }
    loads
}

fn intra_cluster_loads<W: Weight>(
    app: &AppGraph<W>,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
) -> (W, W) {
    let mut pl = W::zero();
    let mut nl = W::zero();
    for &(k, v) in app.partners(i) {
        let hk = f.host(k);
        if hk == d {
            pl = pl + v;
        } else if hk == s {
            nl = nl + v;
        }
    }
    (pl, nl)
}

fn hop_change_loads<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
) -> ProcessLoads<W> {
    let mut loads = ProcessLoads::zero();
    for &(k, v) in app.partners(i) {
        let hk = f.host(k);
        let change = topo.h(s, hk) as i64 - topo.h(d, hk) as i64;
        let scaled = v * W::from_i64(change.abs()).expect("hop change fits weight");
        if change > 0 {
            loads.positive = loads.positive + scaled;
        } else if change < 0 {
            loads.negative = loads.negative + scaled;
            if hk == s && app.is_real(k) {
                loads.colocated = loads.colocated + scaled;
            }
        }
    }
    loads
}

/// Traffic of `i` with partners that reach it through (or at) `d`.
pub fn positive_load<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
) -> Result<W> {
    Ok(process_loads(app, topo, f, i, s, d)?.positive)
}

/// Traffic of `i` with every other partner, co-located ones included.
pub fn negative_load<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
) -> Result<W> {
    Ok(process_loads(app, topo, f, i, s, d)?.negative)
}

/// `(raw, inertia-adjusted)` benefit of moving `i` alone.
pub fn benefit<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
    inertia: &InertiaConfig,
) -> Result<(W, f64)> {
    let loads = process_loads(app, topo, f, i, s, d)?;
    Ok((loads.raw_benefit(), inertia.adjusted(loads.positive, loads.negative)))
}

/// Intra-cluster move between two servers: `(load with processes on d,
/// load with processes on s)`.
pub fn hierarchical_loads<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    i: ProcessId,
    s: NodeId,
    d: NodeId,
) -> Result<(W, W)> {
    if topo.as_hierarchical().is_none() {
        return Err(domain("intra-cluster loads need a hierarchical topology"));
    }
    check_move(app, topo, f, i, s, d)?;
    if !topo.same_cluster(s, d) {
        return Err(domain(format!("{s} and {d} are in different clusters")));
    }
    Ok(intra_cluster_loads(app, f, i, s, d))
}

/// Load between members of `group`, each unordered pair counted once.
pub fn internal_load<W: Weight>(app: &AppGraph<W>, group: &[ProcessId]) -> W {
    let mut total = W::zero();
    for (a, &i) in group.iter().enumerate() {
        for &k in &group[a + 1..] {
            total = total + app.pair_load(i, k);
        }
    }
    total
}

fn check_group<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    group: &[ProcessId],
    s: NodeId,
    d: NodeId,
) -> Result<()> {
    if group.is_empty() {
        return Err(domain("empty group"));
    }
    let mut sorted = group.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != group.len() {
        return Err(domain("group lists a process twice"));
    }
    for &i in group {
        check_move(app, topo, f, i, s, d)?;
    }
    Ok(())
}

/// `(PL, NL)` of a co-located group. `NL` drops the whole internal load:
/// both endpoints of every internal pair counted it once in their own `nl`.
pub fn super_loads<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    group: &[ProcessId],
    s: NodeId,
    d: NodeId,
) -> Result<(W, W)> {
    check_group(app, topo, f, group, s, d)?;
    let mut pl = W::zero();
    let mut nl = W::zero();
    for &i in group {
        let loads = process_loads(app, topo, f, i, s, d)?;
        pl = pl + loads.positive;
        nl = nl + loads.negative;
    }
    let internal = internal_load(app, group);
    Ok((pl, nl - internal - internal))
}

/// `(raw, inertia-adjusted)` benefit of moving the group together.
pub fn super_benefit<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    group: &[ProcessId],
    s: NodeId,
    d: NodeId,
    inertia: &InertiaConfig,
) -> Result<(W, f64)> {
    let (pl, nl) = super_loads(app, topo, f, group, s, d)?;
    Ok((pl - nl, inertia.adjusted(pl, nl)))
}

/// Decision graph for one `(s, d)` pair: hosted processes, their pairwise
/// loads, a dest-edge per process weighted with its positive load and a
/// source-edge weighted with its negative load minus co-located real
/// traffic. Zero-weight edges are treated as absent.
#[derive(Debug, Clone, PartialEq)]
pub struct MinCutGraph<W> {
    pub source: NodeId,
    pub dest: NodeId,
    pub processes: Vec<ProcessId>,
    pub dest_edges: Vec<W>,
    pub source_edges: Vec<W>,
    /// `(a, b, load)` with indices into `processes`, `a < b`, load > 0.
    pub internal_edges: Vec<(usize, usize, W)>,
}

impl<W: Weight> MinCutGraph<W> {
    /// Assembles the graph from per-process `(positive, external negative)`
    /// loads and pairwise co-located loads keyed by process id.
    pub fn from_parts(
        source: NodeId,
        dest: NodeId,
        processes: Vec<ProcessId>,
        terminal_loads: Vec<(W, W)>,
        pair_loads: impl IntoIterator<Item = (ProcessId, ProcessId, W)>,
    ) -> Self {
        debug_assert_eq!(processes.len(), terminal_loads.len());
        let index = |p: ProcessId| processes.binary_search(&p).ok();
        let mut internal_edges: Vec<(usize, usize, W)> = pair_loads
            .into_iter()
            .filter(|(_, _, v)| v.is_positive())
            .filter_map(|(i, k, v)| {
                let (a, b) = (index(i)?, index(k)?);
                (a != b).then(|| (a.min(b), a.max(b), v))
            })
            .collect();
        internal_edges.sort_by_key(|x| (x.0, x.1));
        internal_edges.dedup_by(|x, y| (x.0, x.1) == (y.0, y.1));
        let (dest_edges, source_edges) = terminal_loads.into_iter().unzip();
        Self {
            source,
            dest,
            processes,
            dest_edges,
            source_edges,
            internal_edges,
        }
    }

    pub fn len(&self) -> usize {
        self.processes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.processes.is_empty()
    }

    pub fn has_internal_edges(&self) -> bool {
        !self.internal_edges.is_empty()
    }

    pub fn dest_weight(&self, p: ProcessId) -> Option<W> {
        let a = self.processes.binary_search(&p).ok()?;
        Some(self.dest_edges[a])
    }

    pub fn source_weight(&self, p: ProcessId) -> Option<W> {
        let a = self.processes.binary_search(&p).ok()?;
        Some(self.source_edges[a])
    }

    // vertex 0 = source node, 1 = dest node, 2 + a = processes[a]
    fn vertex_edges(&self) -> Vec<(usize, usize, W)> {
        let mut edges = Vec::new();
        for a in 0..self.len() {
            if self.source_edges[a].is_positive() {
                edges.push((0, a + 2, self.source_edges[a]));
            }
            if self.dest_edges[a].is_positive() {
                edges.push((1, a + 2, self.dest_edges[a]));
            }
        }
        edges.extend(self.internal_edges.iter().map(|&(a, b, v)| (a + 2, b + 2, v)));
        edges
    }

    fn component_of(&self, start: usize, edges: &[(usize, usize, W)]) -> Vec<bool> {
        let vertices = self.len() + 2;
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v, _) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; vertices];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Loads of an arbitrary subset of the hosted processes, given as
    /// indices into `processes`: `(PL, NL)`.
    pub fn group_loads(&self, members: &[usize]) -> (W, W) {
        let mut inside = vec![false; self.len()];
        for &a in members {
            inside[a] = true;
        }
        let pl = members.iter().map(|&a| self.dest_edges[a]).sum::<W>();
        let mut nl = members.iter().map(|&a| self.source_edges[a]).sum::<W>();
        for &(a, b, v) in &self.internal_edges {
            if inside[a] != inside[b] {
                nl = nl + v;
            }
        }
        (pl, nl)
    }

    /// Whether dropping zero-weight edges separates the source node from
    /// the destination node.
    pub fn is_partitioned(&self) -> bool {
        let edges = self.vertex_edges();
        !self.component_of(1, &edges)[0]
    }

    /// The group on the destination side of the canonical minimum cut,
    /// restricted to the destination's component. `None` when moving it
    /// would not strictly reduce cost.
    pub fn best_group(&self) -> Option<MigrationProposal<W>> {
        if self.is_empty() {
            return None;
        }
        let edges = self.vertex_edges();
        let dest_component = self.component_of(1, &edges);
        let members: Vec<usize> = if !dest_component[0] {
            // partitioned: the destination's side moves as is
            (0..self.len()).filter(|&a| dest_component[a + 2]).collect()
        } else {
            let mut net = FlowNetwork::new(self.len() + 2, 0, 1).expect("terminals are distinct");
            for &(u, v, c) in &edges {
                net.add_edge(u, v, c).expect("graph weights are nonnegative");
            }
            let cut = min_cut(&net);
            cut.sink_side
                .into_iter()
                .filter(|&v| v >= 2 && dest_component[v])
                .map(|v| v - 2)
                .collect()
        };
        if members.is_empty() {
            return None;
        }
        let (pl, nl) = self.group_loads(&members);
        if !(pl - nl).is_positive() {
            return None;
        }
        let group = members.iter().map(|&a| self.processes[a]).collect();
        Some(MigrationProposal::new(group, self.source, self.dest, pl, nl))
    }

    /// The best single process whose move passes the inertia test; ties go
    /// to the lowest id.
    pub fn best_single(&self, inertia: &InertiaConfig) -> Option<MigrationProposal<W>> {
        let mut best: Option<MigrationProposal<W>> = None;
        for a in 0..self.len() {
            let (pl, nl) = self.group_loads(&[a]);
            if !inertia.accepts(pl, nl) {
                continue;
            }
            let candidate = MigrationProposal::new(vec![self.processes[a]], self.source, self.dest, pl, nl);
            if best.as_ref().is_none_or(|b| candidate.raw_benefit > b.raw_benefit) {
                best = Some(candidate);
            }
        }
        best
    }

    /// Applies the mechanism and inertia rules to pick this direction's
    /// proposal, if any.
    pub fn select(&self, mechanism: Mechanism, inertia: &InertiaConfig) -> Option<MigrationProposal<W>> {
        let use_single = match mechanism {
            Mechanism::SingleOnly => true,
            Mechanism::SuperOnly => false,
            Mechanism::Adaptive => !self.has_internal_edges(),
        };
        if use_single {
            self.best_single(inertia)
        } else {
            self.best_group().filter(|p| p.accepted_by(inertia))
        }
    }

    /// Graphviz rendering with zero-weight edges omitted.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph mincut {{");
        let _ = writeln!(out, "  \"{}\" [shape=box];", self.source);
        let _ = writeln!(out, "  \"{}\" [shape=box];", self.dest);
        let name = |v: usize| match v {
            0 => self.source.to_string(),
            1 => self.dest.to_string(),
            a => self.processes[a - 2].to_string(),
        };
        for (u, v, w) in self.vertex_edges() {
            let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\"];", name(u), name(v), w);
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the decision graph for moving processes from `s` to its
/// neighbor `d` from global state.
pub fn build_mincut_graph<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    s: NodeId,
    d: NodeId,
) -> Result<MinCutGraph<W>> {
    check_hop(topo, s, d)?;
    let hosted = f.hosted(s);
    let mut terminal = Vec::with_capacity(hosted.len());
    for &i in &hosted {
        let loads = process_loads(app, topo, f, i, s, d)?;
        debug_assert!(!loads.external_negative().is_negative());
        terminal.push((loads.positive, loads.external_negative()));
    }
    let mut pairs = Vec::new();
    for (a, &i) in hosted.iter().enumerate() {
        for &k in &hosted[a + 1..] {
            pairs.push((i, k, app.pair_load(i, k)));
        }
    }
    Ok(MinCutGraph::from_parts(s, d, hosted, terminal, pairs))
}

/// Most beneficial co-located group for `s -> d`, or `None` when no group
/// strictly reduces cost. Inertia is not applied.
pub fn best_super_process<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    s: NodeId,
    d: NodeId,
) -> Result<Option<MigrationProposal<W>>> {
    Ok(build_mincut_graph(app, topo, f, s, d)?.best_group())
}

/// Shrinks a proposal until its members' execution costs fit in
/// `free_capacity` at the destination, each time dropping the member whose
/// removal leaves the largest group benefit.
pub fn prune_for_capacity<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    proposal: &MigrationProposal<W>,
    free_capacity: W,
) -> Result<Option<MigrationProposal<W>>> {
    let demand = |g: &[ProcessId]| g.iter().map(|&i| app.exec_cost(i)).sum::<W>();
    let (s, d) = (proposal.source, proposal.dest);
    let mut group = proposal.group.clone();
    while !group.is_empty() && demand(&group) > free_capacity {
        if group.len() == 1 {
            return Ok(None);
        }
        let mut best: Option<(usize, W)> = None;
        for drop in 0..group.len() {
            let rest: Vec<ProcessId> = group
                .iter()
                .enumerate()
                .filter(|&(a, _)| a != drop)
                .map(|(_, &p)| p)
                .collect();
            let (pl, nl) = super_loads(app, topo, f, &rest, s, d)?;
            let b = pl - nl;
            // ties drop the higher id
            if best.is_none_or(|(_, bb)| b >= bb) {
                best = Some((drop, b));
            }
        }
        let (drop, _) = best.expect("group has at least two members");
        group.remove(drop);
    }
    if group.is_empty() {
        return Ok(None);
    }
    let (pl, nl) = super_loads(app, topo, f, &group, s, d)?;
    if !(pl - nl).is_positive() {
        return Ok(None);
    }
    Ok(Some(MigrationProposal::new(group, s, d, pl, nl)))
}

/// True iff no 1-hop move of `group` (all hosted at one node) passes the
/// inertia test.
pub fn is_center_of_gravity<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    group: &[ProcessId],
    inertia: &InertiaConfig,
) -> Result<bool> {
    let Some(&first) = group.first() else {
        return Err(domain("empty group"));
    };
    app.check_real(first)?;
    let s = f.host(first);
    for d in topo.neighbors(s)? {
        let (pl, nl) = super_loads(app, topo, f, group, s, d)?;
        if inertia.accepts(pl, nl) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Node-level balance: no co-located group at `s` can move beneficially to
/// any neighbor.
pub fn node_is_balanced<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    s: NodeId,
    inertia: &InertiaConfig,
) -> Result<bool> {
    for d in topo.neighbors(s)? {
        let graph = build_mincut_graph(app, topo, f, s, d)?;
        if graph.best_group().is_some_and(|p| p.accepted_by(inertia)) {
            return Ok(false);
        }
    }
    Ok(true)
}
