//! Brute-force ground truth. Nothing here reuses the production cost or
//! routing code: distances come from a fresh BFS over the raw edge lists
//! and costs from a plain double loop over the dense traffic matrix.

use std::collections::VecDeque;

use serde::Serialize;

use crate::app_model::{AppGraph, ProcessId};
use crate::cost::Assignment;
use crate::engine::{self, EngineConfig};
use crate::error::{domain, Error, Result};
use crate::scalar::Weight;
use crate::scenario::Scenario;
use crate::topology::{NodeId, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_assignments: u128,
    pub max_subsets: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_assignments: 10_000_000,
            max_subsets: 1 << 12,
        }
    }
}

/// All-pairs hop distances computed independently of [`Topology`]'s tables.
#[derive(Debug, Clone)]
pub struct OracleDistances {
    dist: Vec<Vec<u64>>,
}

fn bfs_all_pairs(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<u64>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    (0..n)
        .map(|src| {
            let mut d = vec![u64::MAX; n];
            d[src] = 0;
            let mut q = VecDeque::from([src]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if d[v] == u64::MAX {
                        d[v] = d[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

impl OracleDistances {
    pub fn new(topo: &Topology) -> Self {
        let dist = match topo {
            Topology::Tree(t) => bfs_all_pairs(t.len(), t.edges()),
            Topology::Hierarchical(h) => {
                let clusters = bfs_all_pairs(h.cluster_tree().len(), h.cluster_tree().edges());
                let m = h.servers_per_cluster();
                let total = clusters.len() * m;
                (0..total)
                    .map(|x| {
                        (0..total)
                            .map(|y| {
                                if x == y {
                                    0
                                } else if x / m == y / m {
                                    1
                                } else {
                                    clusters[x / m][y / m]
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        Self { dist }
    }

    pub fn get(&self, x: NodeId, y: NodeId) -> u64 {
        self.dist[x.index()][y.index()]
    }

    pub fn nodes(&self) -> usize {
        self.dist.len()
    }
}

fn naive_cost<W: Weight>(dense: &[Vec<W>], hosts: &[NodeId], dist: &OracleDistances) -> W {
    let mut total = W::zero();
    for (i, row) in dense.iter().enumerate() {
        for (k, &c) in row.iter().enumerate() {
            if !c.is_zero() {
                let h = dist.get(hosts[i], hosts[k]);
                total = total + c * W::from_u64(h).expect("distance fits weight");
            }
        }
    }
    total
}

fn all_hosts<W: Weight>(app: &AppGraph<W>, f: &Assignment) -> Vec<NodeId> {
    (0..app.len() as u32).map(|i| f.host(ProcessId(i))).collect()
}

/// Communication cost recomputed from scratch.
pub fn comm_cost<W: Weight>(app: &AppGraph<W>, topo: &Topology, f: &Assignment) -> W {
    naive_cost(&app.traffic().dense(), &all_hosts(app, f), &OracleDistances::new(topo))
}

/// `comm_cost(before) - comm_cost(after)`, both recomputed from scratch.
pub fn delta_audit<W: Weight>(
    before: &Assignment,
    after: &Assignment,
    app: &AppGraph<W>,
    topo: &Topology,
) -> W {
    let dense = app.traffic().dense();
    let dist = OracleDistances::new(topo);
    naive_cost(&dense, &all_hosts(app, before), &dist) - naive_cost(&dense, &all_hosts(app, after), &dist)
}

/// Minimum communication cost over all `N^P` placements. Ties go to the
/// lexicographically smallest host vector.
pub fn optimal_assignment<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    budget: &OracleBudget,
) -> Result<(Assignment, W)> {
    let n = topo.node_count();
    let p = app.real_count();
    let needed = (n as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
    if needed > budget.max_assignments {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget.max_assignments,
        });
    }
    let dist = OracleDistances::new(topo);
    let triples: Vec<(usize, usize, W)> = app
        .traffic()
        .dense()
        .into_iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(k, c)| (i, k, c))
        })
        .collect();

    let mut hosts: Vec<NodeId> = vec![NodeId(0); p];
    hosts.extend_from_slice(app.pins());
    let mut best: Option<(Vec<NodeId>, W)> = None;
    loop {
        let cost: W = triples
            .iter()
            .map(|&(i, k, c)| c * W::from_u64(dist.get(hosts[i], hosts[k])).expect("distance fits weight"))
            .sum();
        if best.as_ref().is_none_or(|(_, b)| cost < *b) {
            best = Some((hosts[..p].to_vec(), cost));
        }
        // odometer with p0 most significant, so enumeration is lexicographic
        let mut pos = p;
        loop {
            if pos == 0 {
                let (real, cost) = best.expect("at least one placement");
                return Ok((Assignment::new(app, topo, real)?, cost));
            }
            pos -= 1;
            if hosts[pos].index() + 1 < n {
                hosts[pos] = NodeId(hosts[pos].0 + 1);
                break;
            }
            hosts[pos] = NodeId(0);
        }
    }
}

/// Best nonempty subset of the real processes on `s` to move to `d`,
/// scored by recomputed cost drop. Ties go to the smaller group, then the
/// lexicographically smaller one. `None` when `s` hosts nothing.
pub fn best_group_by_enumeration<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    s: NodeId,
    d: NodeId,
    budget: &OracleBudget,
) -> Result<Option<(Vec<ProcessId>, W)>> {
    let hosted = f.hosted(s);
    let needed = 1u128.checked_shl(hosted.len() as u32).unwrap_or(u128::MAX);
    if needed > budget.max_subsets {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget.max_subsets,
        });
    }
    if topo.hop_distance(s, d)? != 1 {
        return Err(domain(format!("{s} and {d} are not 1-hop neighbors")));
    }
    let dense = app.traffic().dense();
    let dist = OracleDistances::new(topo);
    let base_hosts = all_hosts(app, f);
    let base = naive_cost(&dense, &base_hosts, &dist);
    let mut best: Option<(Vec<ProcessId>, W)> = None;
    for mask in 1u64..(1u64 << hosted.len()) {
        let group: Vec<ProcessId> = hosted
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let mut hosts = base_hosts.clone();
        for &i in &group {
            hosts[i.index()] = d;
        }
        let gain = base - naive_cost(&dense, &hosts, &dist);
        let better = match &best {
            None => true,
            Some((g, b)) => {
                gain > *b || (gain == *b && (group.len(), &group) < (g.len(), g))
            }
        };
        if better {
            best = Some((group, gain));
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch<W> {
    pub seed: u64,
    pub dra_cost: W,
    pub oracle_cost: W,
}

/// Outcome of running the algorithm and the oracle side by side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport<W> {
    pub instances: usize,
    pub matches: usize,
    pub mismatches: Vec<Mismatch<W>>,
    /// Instances beyond the oracle budget.
    pub skipped: usize,
    /// Hierarchical instances: optimality is not checked, only that the
    /// run converged without raising cost.
    pub not_improved: Vec<Mismatch<W>>,
}

impl<W> CompareReport<W> {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty() && self.not_improved.is_empty()
    }
}

/// Runs the algorithm on each `(seed, scenario)` and checks the converged
/// cost against the oracle (tree topologies) or against the initial cost
/// (hierarchical topologies).
pub fn compare(
    scenarios: impl IntoIterator<Item = (u64, Scenario)>,
    config: EngineConfig,
    budget: &OracleBudget,
) -> Result<CompareReport<i64>> {
    let mut report = CompareReport {
        instances: 0,
        matches: 0,
        mismatches: Vec::new(),
        skipped: 0,
        not_improved: Vec::new(),
    };
    for (seed, sc) in scenarios {
        report.instances += 1;
        let outcome = engine::run(&sc.app, &sc.topology, &sc.assignment, config)?;
        let dra_cost = outcome.final_comm();
        if sc.topology.is_tree() {
            match optimal_assignment(&sc.app, &sc.topology, budget) {
                Ok((_, oracle_cost)) => {
                    if outcome.converged() && dra_cost == oracle_cost {
                        report.matches += 1;
                    } else {
                        report.mismatches.push(Mismatch {
                            seed,
                            dra_cost,
                            oracle_cost,
                        });
                    }
                }
                Err(Error::BudgetExceeded { .. }) => report.skipped += 1,
                Err(e) => return Err(e),
            }
        } else if outcome.converged() && dra_cost <= outcome.initial_comm() {
            report.matches += 1;
        } else {
            report.not_improved.push(Mismatch {
                seed,
                dra_cost,
                oracle_cost: outcome.initial_comm(),
            });
        }
    }
    Ok(report)
}
