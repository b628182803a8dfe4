//! Round-based simulation of the node agents.
//!
//! Every round all agents read the same frozen snapshot, propose moves
//! from their local view, the scheduler picks which proposals apply, and
//! they are applied in priority order. A round in which nothing applies
//! (and traffic has settled) ends the run.

mod agent;
mod schedule;
mod trace;

use std::collections::BTreeMap;

pub use agent::{propose_from_global, LocalView, NodeAgent};
pub use schedule::{interaction, is_forbidden_swap, priority, schedule_round, RoundPlan, ScheduleMode, SchedulePolicy};
pub use trace::{write_cost_csv, write_trace, RoundStats, TraceEvent, TraceHeader};

use crate::app_model::{AppGraph, TrafficAverager, TrafficMatrix};
use crate::cost::{comm_cost, exec_cost, Assignment};
use crate::error::{domain, Error, Result};
use crate::migration::{prune_for_capacity, InertiaConfig, Mechanism, MigrationProposal};
use crate::scalar::Weight;
use crate::topology::{NodeId, Topology};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub policy: SchedulePolicy,
    pub mechanism: Mechanism,
    pub inertia: InertiaConfig,
    pub max_rounds: u32,
    /// Recompute every proposal from global state and fail on any
    /// difference with the agents' local computation.
    pub check_locality: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            policy: SchedulePolicy::sequential(),
            mechanism: Mechanism::Adaptive,
            inertia: InertiaConfig::none(),
            max_rounds: 10_000,
            check_locality: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// A full round produced nothing to apply.
    Converged,
    /// Stopped at `max_rounds` with work possibly left.
    MaxRounds,
}

#[derive(Debug, Clone)]
pub struct RunOutcome<W> {
    pub assignment: Assignment,
    pub trace: Vec<TraceEvent<W>>,
    pub curve: Vec<RoundStats<W>>,
    pub termination: Termination,
    /// Rounds executed, including the final quiet one.
    pub rounds: u32,
    /// Application with the traffic in force at the end of the run.
    pub app: AppGraph<W>,
}

impl<W: Weight> RunOutcome<W> {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    pub fn migrations(&self) -> usize {
        self.trace.len()
    }

    pub fn initial_comm(&self) -> W {
        self.curve.first().map(|r| r.comm).unwrap_or_else(W::zero)
    }

    pub fn final_comm(&self) -> W {
        self.curve.last().map(|r| r.comm).unwrap_or_else(W::zero)
    }
}

struct DynamicTraffic<W> {
    averager: TrafficAverager<f64>,
    schedule: BTreeMap<u32, TrafficMatrix<W>>,
}

pub struct Simulation<W> {
    base: AppGraph<W>,
    app: AppGraph<W>,
    topo: Topology,
    assignment: Assignment,
    config: EngineConfig,
    dynamic: Option<DynamicTraffic<W>>,
    capacities: Option<Vec<W>>,
}

fn to_f64_matrix<W: Weight>(m: &TrafficMatrix<W>) -> TrafficMatrix<f64> {
    TrafficMatrix::from_entries(
        m.dim(),
        m.iter().map(|(i, k, v)| (i, k, v.to_f64().expect("volume converts to f64"))),
    )
    .expect("entries of a valid matrix stay valid")
}

impl<W: Weight> Simulation<W> {
    pub fn new(app: AppGraph<W>, topo: Topology, assignment: Assignment, config: EngineConfig) -> Self {
        Self {
            base: app.clone(),
            app,
            topo,
            assignment,
            config,
            dynamic: None,
            capacities: None,
        }
    }

    /// Replaces static traffic by smoothed measurements: in round `r` the
    /// latest schedule entry at or before `r` (the initial traffic before
    /// the first entry) is folded into the average.
    pub fn with_traffic_schedule(
        mut self,
        alpha: f64,
        schedule: BTreeMap<u32, TrafficMatrix<W>>,
    ) -> Result<Self> {
        for (round, m) in &schedule {
            if m.dim() != self.app.len() {
                return Err(domain(format!("schedule entry for round {round} has the wrong shape")));
            }
            // reject malformed matrices up front rather than mid-run
            self.app.with_traffic(m.clone())?;
        }
        let averager = TrafficAverager::new(alpha, to_f64_matrix(self.app.traffic()))?;
        self.dynamic = Some(DynamicTraffic { averager, schedule });
        Ok(self)
    }

    /// Per-node capacity in execution-cost units.
    pub fn with_capacities(mut self, capacities: Vec<W>) -> Result<Self> {
        if capacities.len() != self.topo.node_count() {
            return Err(domain(format!(
                "{} capacities for {} nodes",
                capacities.len(),
                self.topo.node_count()
            )));
        }
        self.capacities = Some(capacities);
        Ok(self)
    }

    pub fn app(&self) -> &AppGraph<W> {
        &self.app
    }

    pub fn topology(&self) -> &Topology {
        &self.topo
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn comm_cost(&self) -> W {
        comm_cost(&self.app, &self.topo, &self.assignment)
    }

    fn free_capacity(&self, node: NodeId) -> Option<W> {
        let caps = self.capacities.as_ref()?;
        let used: W = self
            .assignment
            .hosted(node)
            .iter()
            .map(|&i| self.app.exec_cost(i))
            .sum();
        Some(caps[node.index()] - used)
    }

    fn fit(&self, p: MigrationProposal<W>) -> Result<Option<MigrationProposal<W>>> {
        let Some(free) = self.free_capacity(p.dest) else {
            return Ok(Some(p));
        };
        Ok(prune_for_capacity(&self.app, &self.topo, &self.assignment, &p, free)?
            .filter(|q| q.accepted_by(&self.config.inertia)))
    }

    /// Every node's proposals for the current snapshot.
    pub fn propose_all(&self) -> Result<Vec<MigrationProposal<W>>> {
        let mut out = Vec::new();
        for s in self.topo.nodes() {
            let agent = NodeAgent::observe(s, &self.app, &self.topo, &self.assignment);
            let local = agent.propose(&self.topo, self.config.mechanism, &self.config.inertia);
            if self.config.check_locality {
                let global = propose_from_global(
                    &self.app,
                    &self.topo,
                    &self.assignment,
                    s,
                    self.config.mechanism,
                    &self.config.inertia,
                )?;
                if global != local {
                    return Err(domain(format!(
                        "agent at {s} proposed {local:?} but global state gives {global:?}"
                    )));
                }
            }
            for p in local {
                out.extend(self.fit(p)?);
            }
        }
        Ok(out)
    }

    /// Folds this round's measured traffic into the average; reports
    /// whether the traffic used for decisions changed.
    pub fn apply_traffic_transition(&mut self, round: u32) -> Result<bool> {
        let Some(dynamic) = self.dynamic.as_mut() else {
            return Ok(false);
        };
        let measured = dynamic
            .schedule
            .range(..=round)
            .next_back()
            .map(|(_, m)| m)
            .unwrap_or(self.base.traffic());
        dynamic.averager.update(&to_f64_matrix(measured))?;
        let next: TrafficMatrix<W> = dynamic.averager.volume().rounded();
        if &next == self.app.traffic() {
            return Ok(false);
        }
        self.app = self.app.with_traffic(next)?;
        Ok(true)
    }

    fn last_scheduled_round(&self) -> u32 {
        self.dynamic
            .as_ref()
            .and_then(|d| d.schedule.keys().next_back().copied())
            .unwrap_or(0)
    }

    /// Runs one round: propose, schedule, apply. Returns the applied events.
    pub fn step(&mut self, round: u32) -> Result<(Vec<TraceEvent<W>>, RoundPlan<W>)> {
        let proposals = self.propose_all()?;
        let plan = schedule_round(&self.app, &self.topo, proposals, self.config.policy);
        let mut events = Vec::with_capacity(plan.applied.len());
        for p in &plan.applied {
            // capacity may have been consumed earlier in this round
            let p = match self.free_capacity(p.dest) {
                Some(free) if p.group.iter().map(|&i| self.app.exec_cost(i)).sum::<W>() > free => {
                    match self.fit(p.clone())? {
                        Some(q) => q,
                        None => continue,
                    }
                }
                _ => p.clone(),
            };
            let before = self.comm_cost();
            self.assignment.move_group(&p.group, p.source, p.dest)?;
            let after = self.comm_cost();
            events.push(TraceEvent {
                round,
                group: p.group.clone(),
                source: p.source,
                dest: p.dest,
                raw_benefit: p.raw_benefit,
                comm_before: before,
                comm_after: after,
            });
        }
        Ok((events, plan))
    }

    fn stats(&self, round: u32, migrations_applied: usize) -> RoundStats<W> {
        let exec = exec_cost(&self.app, &self.assignment);
        let comm = self.comm_cost();
        RoundStats {
            round,
            exec,
            comm,
            total: exec + comm,
            migrations_applied,
        }
    }

    pub fn run(mut self) -> Result<RunOutcome<W>> {
        if self.config.max_rounds == 0 {
            return Err(Error::Config("max_rounds must be at least 1".into()));
        }
        let mut trace = Vec::new();
        let mut curve = vec![self.stats(0, 0)];
        let last_scheduled = self.last_scheduled_round();
        let mut termination = Termination::MaxRounds;
        let mut rounds = 0;
        for round in 1..=self.config.max_rounds {
            rounds = round;
            let traffic_changed = self.apply_traffic_transition(round)?;
            let (events, _) = self.step(round)?;
            curve.push(self.stats(round, events.len()));
            let quiet = events.is_empty();
            trace.extend(events);
            if quiet && !traffic_changed && round >= last_scheduled {
                termination = Termination::Converged;
                break;
            }
        }
        Ok(RunOutcome {
            assignment: self.assignment,
            trace,
            curve,
            termination,
            rounds,
            app: self.app,
        })
    }
}

/// Runs the algorithm to convergence (or `max_rounds`) on static traffic.
pub fn run<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    config: EngineConfig,
) -> Result<RunOutcome<W>> {
    Simulation::new(app.clone(), topo.clone(), f.clone(), config).run()
}

/// True iff no node has a beneficial proposal in the given state.
pub fn is_totally_balanced<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    inertia: &InertiaConfig,
) -> Result<bool> {
    for s in topo.nodes() {
        if !crate::migration::node_is_balanced(app, topo, f, s, inertia)? {
            return Ok(false);
        }
    }
    Ok(true)
}
