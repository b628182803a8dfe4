//! The placement of processes and the global cost functionals every
//! migration is audited against.

use serde::Serialize;

use crate::app_model::{AppGraph, ProcessId};
use crate::error::{domain, Error, Result};
use crate::scalar::Weight;
use crate::topology::{NodeId, Topology};

/// Host of every process. Virtual processes sit at their pinned node and
/// can never be moved.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    real: usize,
    hosts: Vec<NodeId>,
}

impl Assignment {
    pub fn new<W: Weight>(app: &AppGraph<W>, topo: &Topology, real_hosts: Vec<NodeId>) -> Result<Self> {
        let mut problems = Vec::new();
        if real_hosts.len() != app.real_count() {
            problems.push(format!(
                "placement lists {} hosts for {} real processes",
                real_hosts.len(),
                app.real_count()
            ));
        }
        if app.node_count() != topo.node_count() {
            problems.push(format!(
                "application has {} virtual processes but the topology has {} nodes",
                app.node_count(),
                topo.node_count()
            ));
        }
        for (i, h) in real_hosts.iter().enumerate() {
            if h.index() >= topo.node_count() {
                problems.push(format!("p{i} placed on unknown node {h}"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        let mut hosts = real_hosts;
        hosts.extend_from_slice(app.pins());
        Ok(Self {
            real: app.real_count(),
            hosts,
        })
    }

    pub fn host(&self, i: ProcessId) -> NodeId {
        self.hosts[i.index()]
    }

    pub fn real_hosts(&self) -> &[NodeId] {
        &self.hosts[..self.real]
    }

    /// Real processes hosted at `node`, ascending.
    pub fn hosted(&self, node: NodeId) -> Vec<ProcessId> {
        self.real_hosts()
            .iter()
            .enumerate()
            .filter(|&(_, &h)| h == node)
            .map(|(i, _)| ProcessId(i as u32))
            .collect()
    }

    /// Moves real processes; every member must currently sit at `from`.
    pub fn move_group(&mut self, group: &[ProcessId], from: NodeId, to: NodeId) -> Result<()> {
        for &i in group {
            if i.index() >= self.real {
                return Err(domain(format!("{i} is not a real process")));
            }
            if self.hosts[i.index()] != from {
                return Err(domain(format!("{i} is hosted at {}, not {from}", self.hosts[i.index()])));
            }
        }
        for &i in group {
            self.hosts[i.index()] = to;
        }
        Ok(())
    }

    pub fn with_moved(&self, group: &[ProcessId], from: NodeId, to: NodeId) -> Result<Self> {
        let mut next = self.clone();
        next.move_group(group, from, to)?;
        Ok(next)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostBreakdown<W> {
    pub exec: W,
    pub comm: W,
    pub total: W,
}

/// `Σ_i u_i`; placement does not enter.
pub fn exec_cost<W: Weight>(app: &AppGraph<W>, _f: &Assignment) -> W {
    app.exec_costs().iter().copied().sum()
}

/// `Σ_{i,k} c_ik · h(host_i, host_k)` over ordered pairs.
pub fn comm_cost<W: Weight>(app: &AppGraph<W>, topo: &Topology, f: &Assignment) -> W {
    app.traffic()
        .iter()
        .map(|(i, k, c)| c * W::from_hops(topo.h(f.host(i), f.host(k))))
        .sum()
}

/// Same quantity summed per unordered pair with `load(i, k)`.
pub fn comm_cost_pairwise<W: Weight>(app: &AppGraph<W>, topo: &Topology, f: &Assignment) -> W {
    let mut total = W::zero();
    for i in 0..app.len() as u32 {
        let i = ProcessId(i);
        for &(k, load) in app.partners(i) {
            if k > i {
                total = total + load * W::from_hops(topo.h(f.host(i), f.host(k)));
            }
        }
    }
    total
}

pub fn total_cost<W: Weight>(app: &AppGraph<W>, topo: &Topology, f: &Assignment) -> CostBreakdown<W> {
    let exec = exec_cost(app, f);
    let comm = comm_cost(app, topo, f);
    CostBreakdown {
        exec,
        comm,
        total: exec + comm,
    }
}
