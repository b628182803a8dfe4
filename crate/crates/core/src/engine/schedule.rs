use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::app_model::AppGraph;
use crate::migration::MigrationProposal;
use crate::scalar::Weight;
use crate::topology::{NodeId, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleMode {
    /// One migration per round, the globally best one.
    #[default]
    Sequential,
    /// Every node may move one group per round, subject to conflict rules.
    Concurrent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SchedulePolicy {
    pub mode: ScheduleMode,
}

impl SchedulePolicy {
    pub fn sequential() -> Self {
        Self {
            mode: ScheduleMode::Sequential,
        }
    }

    pub fn concurrent() -> Self {
        Self {
            mode: ScheduleMode::Concurrent,
        }
    }

    /// Concurrent rounds never swap adjacent processes between two nodes.
    pub fn swap_guard(&self) -> bool {
        self.mode == ScheduleMode::Concurrent
    }

    pub fn name(&self) -> &'static str {
        match self.mode {
            ScheduleMode::Sequential => "sequential",
            ScheduleMode::Concurrent => "concurrent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundPlan<W> {
    pub applied: Vec<MigrationProposal<W>>,
    pub deferred: Vec<MigrationProposal<W>>,
}

/// Descending raw benefit, then ascending source, group, destination.
pub fn priority<W: Weight>(a: &MigrationProposal<W>, b: &MigrationProposal<W>) -> Ordering {
    b.raw_benefit
        .order(&a.raw_benefit)
        .then(a.source.cmp(&b.source))
        .then_with(|| a.group.cmp(&b.group))
        .then(a.dest.cmp(&b.dest))
}

/// Two proposals swap adjacent processes when they move between the same
/// two nodes in opposite directions and some pair across them talks.
pub fn is_forbidden_swap<W: Weight>(
    app: &AppGraph<W>,
    a: &MigrationProposal<W>,
    b: &MigrationProposal<W>,
) -> bool {
    a.source == b.dest
        && a.dest == b.source
        && a.group.iter().any(|&i| b.group.iter().any(|&k| app.adjacent(i, k)))
}

/// Cost change that applying `a` and `b` together adds on top of their
/// separate benefits: `sum c_ik * (h(d_a, d_b) - h(d_a, s_b) - h(s_a, d_b) + h(s_a, s_b))`.
/// On a tree this is nonzero only for swaps; in a cluster, two processes
/// converging on one server also interfere.
pub fn interaction<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    a: &MigrationProposal<W>,
    b: &MigrationProposal<W>,
) -> W {
    let (sa, da, sb, db) = (a.source, a.dest, b.source, b.dest);
    let term = topo.h(da, db) as i64 - topo.h(da, sb) as i64 - topo.h(sa, db) as i64 + topo.h(sa, sb) as i64;
    if term == 0 {
        return W::zero();
    }
    let mut load = W::zero();
    for &i in &a.group {
        for &k in &b.group {
            load = load + app.pair_load(i, k);
        }
    }
    load * W::from_i64(term).expect("hop difference fits weight")
}

/// Chooses which proposals of one snapshot are applied this round.
pub fn schedule_round<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    mut proposals: Vec<MigrationProposal<W>>,
    policy: SchedulePolicy,
) -> RoundPlan<W> {
    proposals.sort_by(priority);
    let mut applied: Vec<MigrationProposal<W>> = Vec::new();
    let mut deferred = Vec::new();
    match policy.mode {
        ScheduleMode::Sequential => {
            let mut it = proposals.into_iter();
            applied.extend(it.next());
            deferred.extend(it);
        }
        ScheduleMode::Concurrent => {
            let mut departed: BTreeSet<NodeId> = BTreeSet::new();
            let mut moved = BTreeSet::new();
            for p in proposals {
                let clash = departed.contains(&p.source)
                    || p.group.iter().any(|i| moved.contains(i))
                    || (policy.swap_guard() && applied.iter().any(|q| is_forbidden_swap(app, q, &p)))
                    || applied.iter().any(|q| !interaction(app, topo, q, &p).is_zero());
                if clash {
                    deferred.push(p);
                } else {
                    departed.insert(p.source);
                    moved.extend(p.group.iter().copied());
                    applied.push(p);
                }
            }
        }
    }
    RoundPlan { applied, deferred }
}
