//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if
//! any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dra_core::engine::{self, is_totally_balanced, schedule_round, write_trace, TraceHeader};
use dra_core::migration::{
    benefit, best_super_process, build_mincut_graph, hierarchical_loads, negative_load, positive_load,
    super_benefit,
};
use dra_core::oracle::{best_group_by_enumeration, delta_audit, optimal_assignment, OracleBudget};
use dra_core::scenario::generate;
use dra_core::{
    comm_cost, AppGraph, Assignment, EngineConfig, GenParams, InertiaConfig, Mechanism, NodeId, ProcessId,
    RunOutcome, Scenario, SchedulePolicy, Simulation, Topology, TrafficMatrix, TreeTopology,
};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(i: u32) -> ProcessId {
    ProcessId(i)
}

fn n(x: u32) -> NodeId {
    NodeId(x)
}

fn app_from(nodes: usize, procs: usize, entries: &[(u32, u32, i64)]) -> AppGraph<i64> {
    let t = TrafficMatrix::from_entries(procs + nodes, entries.iter().map(|&(a, b, v)| (p(a), p(b), v))).unwrap();
    AppGraph::new(nodes, vec![1; procs], t).unwrap()
}

fn place(app: &AppGraph<i64>, topo: &Topology, hosts: &[u32]) -> Assignment {
    Assignment::new(app, topo, hosts.iter().map(|&x| n(x)).collect()).unwrap()
}

fn tree_instance(seed: u64) -> Scenario {
    Scenario::from_file(generate(&GenParams::sampled(seed, 2..=5, 1..=7)).unwrap()).unwrap()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

// Single-process move on the chain n0 - n1 - n2 - n3: p0 on n1 moves toward n2.
// Partners beyond n1 on the d side carry 10 + 10, partners off that side 5
// (virtual of n0) + 3 (co-located p3).
fn worked_example_single() -> Check {
    let start = Instant::now();
    let topo: Topology = TreeTopology::chain(4).unwrap().into();
    // virtual of node x is 4 + x
    let app = app_from(4, 4, &[(0, 1, 10), (0, 2, 10), (0, 4, 5), (0, 3, 3)]);
    let f = place(&app, &topo, &[1, 2, 3, 1]);
    let (s, d) = (n(1), n(2));
    let pl = positive_load(&app, &topo, &f, p(0), s, d).map_err(|e| e.to_string())?;
    let nl = negative_load(&app, &topo, &f, p(0), s, d).map_err(|e| e.to_string())?;
    let (b, _) = benefit(&app, &topo, &f, p(0), s, d, &InertiaConfig::none()).map_err(|e| e.to_string())?;
    ensure((pl, nl, b) == (20, 8, 12), || format!("pl={pl} nl={nl} b={b}"))?;
    let after = f.with_moved(&[p(0)], s, d).unwrap();
    let drop = comm_cost(&app, &topo, &f) - comm_cost(&app, &topo, &after);
    let audit = delta_audit(&f, &after, &app, &topo);
    ensure(drop == 12 && audit == 12, || format!("cost drop {drop}, audit {audit}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("pl={pl} nl={nl} benefit={b} drop={drop}"))
}

// Chain n0 - n1 - n2 - n3. p0, p1, p2 on n1, p3 on n2, p4 on n0, p5 on n3;
// virtual of node x is 6 + x. The move under study is n1 -> n2.
fn group_example() -> (AppGraph<i64>, Topology, Assignment) {
    let topo: Topology = TreeTopology::chain(4).unwrap().into();
    let app = app_from(
        4,
        6,
        &[
            (0, 4, 6),
            (0, 7, 2),
            (0, 1, 5),
            (0, 2, 1),
            (1, 3, 7),
            (1, 5, 10),
            (1, 2, 3),
            (2, 3, 10),
            (2, 8, 4),
        ],
    );
    let f = place(&app, &topo, &[1, 1, 1, 2, 0, 3]);
    (app, topo, f)
}

fn worked_example_group() -> Check {
    let start = Instant::now();
    let (app, topo, f) = group_example();
    let (s, d) = (n(1), n(2));
    let pl = positive_load(&app, &topo, &f, p(1), s, d).map_err(|e| e.to_string())?;
    ensure(pl == 17, || format!("pl of p1 is {pl}, expected 17"))?;
    let graph = build_mincut_graph(&app, &topo, &f, s, d).map_err(|e| e.to_string())?;
    let w = graph.source_weight(p(0));
    ensure(w == Some(8), || format!("source-edge weight of p0 is {w:?}, expected 8"))?;
    let best = best_super_process(&app, &topo, &f, s, d)
        .map_err(|e| e.to_string())?
        .ok_or("no group proposed")?;
    ensure(best.group == vec![p(1), p(2)] && best.raw_benefit == 25, || format!("{best:?}"))?;
    let (eg, eb) = best_group_by_enumeration(&app, &topo, &f, s, d, &OracleBudget::default())
        .map_err(|e| e.to_string())?
        .ok_or("enumeration found nothing")?;
    ensure(eg == best.group && eb == 25, || format!("enumeration gives {eg:?} {eb}"))?;
    let after = f.with_moved(&best.group, s, d).unwrap();
    let (before_c, after_c) = (comm_cost(&app, &topo, &f), comm_cost(&app, &topo, &after));
    ensure(before_c - after_c == 25, || format!("cost {before_c} -> {after_c}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("pl=17, weight 8, group {{p1,p2}}, benefit 25, cost {before_c} -> {after_c}"))
}

fn sequential() -> EngineConfig {
    EngineConfig::default()
}

fn optimality(instances: &[(u64, Scenario, RunOutcome<i64>)]) -> Check {
    let start = Instant::now();
    let budget = OracleBudget::default();
    let mut bad = Vec::new();
    let mut nontrivial = 0;
    for (seed, sc, out) in instances {
        let (_, best) = optimal_assignment(&sc.app, &sc.topology, &budget).map_err(|e| e.to_string())?;
        if out.initial_comm() > best {
            nontrivial += 1;
        }
        if !out.converged() || out.final_comm() != best {
            bad.push(format!("seed {seed}: dra {} oracle {best}", out.final_comm()));
        }
    }
    ensure(bad.is_empty(), || format!("{} mismatches: {}", bad.len(), bad.join("; ")))?;
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "{} instances match the oracle ({nontrivial} started above optimum) in {:.2?}",
        instances.len(),
        start.elapsed()
    ))
}

fn convergence(instances: &[(u64, Scenario, RunOutcome<i64>)]) -> Check {
    let mut worst_ratio = 0.0f64;
    for (seed, sc, out) in instances {
        for w in out.curve.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if b.migrations_applied > 0 {
                ensure(b.comm < a.comm, || format!("seed {seed}: round {} cost {} -> {}", b.round, a.comm, b.comm))?;
            }
        }
        let initial = out.initial_comm();
        ensure(out.migrations() as i64 <= initial, || {
            format!("seed {seed}: {} migrations > initial cost {initial}", out.migrations())
        })?;
        let balanced = is_totally_balanced(&sc.app, &sc.topology, &out.assignment, &InertiaConfig::none())
            .map_err(|e| e.to_string())?;
        ensure(balanced, || format!("seed {seed}: converged state not balanced"))?;
        if initial > 0 {
            worst_ratio = worst_ratio.max(out.migrations() as f64 / initial as f64);
        }
    }
    Ok(format!("{} runs; max migrations/initial cost {worst_ratio:.3}", instances.len()))
}

fn random_group(rng: &mut ChaCha8Rng, hosted: &[ProcessId]) -> Vec<ProcessId> {
    if rng.gen_bool(0.5) {
        return vec![*hosted.choose(rng).unwrap()];
    }
    loop {
        let g: Vec<ProcessId> = hosted.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !g.is_empty() {
            return g;
        }
    }
}

fn benefit_exactness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let inertia = InertiaConfig::none();
    let mut groups = 0;
    for k in 0..1000u64 {
        let sc = Scenario::from_file(generate(&GenParams::sampled(10_000 + k, 2..=7, 1..=8)).unwrap()).unwrap();
        let (app, topo, f) = (&sc.app, &sc.topology, &sc.assignment);
        let i = p(rng.gen_range(0..app.real_count() as u32));
        let s = f.host(i);
        let d = *topo.neighbors(s).unwrap().choose(&mut rng).unwrap();
        let group = random_group(&mut rng, &f.hosted(s));
        let raw = if group.len() == 1 {
            benefit(app, topo, f, group[0], s, d, &inertia).unwrap().0
        } else {
            groups += 1;
            super_benefit(app, topo, f, &group, s, d, &inertia).unwrap().0
        };
        let audit = delta_audit(f, &f.with_moved(&group, s, d).unwrap(), app, topo);
        ensure(raw == audit, || format!("instance {k}: {group:?} {s}->{d} benefit {raw}, audit {audit}"))?;
    }
    Ok(format!("1000 evaluations ({groups} groups) equal recomputed deltas"))
}

fn mincut_dominance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let budget = OracleBudget::default();
    let mut positive = 0;
    let mut evaluated = 0;
    let mut seed = 20_000u64;
    while evaluated < 500 {
        seed += 1;
        let mut params = GenParams::sampled(seed, 2..=4, 2..=10);
        params.density = rng.gen_range(0.2..0.9);
        let mut file = generate(&params).unwrap();
        // crowd processes onto few nodes so groups get large
        let crowd = rng.gen_range(1..=2u32.min(file.topology.node_count() as u32));
        for h in &mut file.placement {
            *h %= crowd;
        }
        let sc = Scenario::from_file(file).unwrap();
        let (app, topo, f) = (&sc.app, &sc.topology, &sc.assignment);
        let s = n(rng.gen_range(0..crowd));
        if f.hosted(s).is_empty() {
            continue;
        }
        evaluated += 1;
        let d = *topo.neighbors(s).unwrap().choose(&mut rng).unwrap();
        let cut = best_super_process(app, topo, f, s, d).unwrap();
        let (eg, eb) = best_group_by_enumeration(app, topo, f, s, d, &budget).unwrap().unwrap();
        match cut {
            Some(prop) => {
                positive += 1;
                ensure(prop.raw_benefit == eb, || format!("seed {seed}: min cut {} vs enumeration {eb}", prop.raw_benefit))?;
                let audit = delta_audit(f, &f.with_moved(&prop.group, s, d).unwrap(), app, topo);
                ensure(audit == eb, || format!("seed {seed}: group audit {audit} vs {eb}"))?;
            }
            None => ensure(eb <= 0, || format!("seed {seed}: min cut found nothing, enumeration {eg:?} gains {eb}"))?,
        }
    }
    Ok(format!("{evaluated} pairs agree ({positive} with a beneficial group)"))
}

fn path_between(topo: &Topology, s: NodeId, d: NodeId) -> Vec<NodeId> {
    let mut path = vec![s];
    while *path.last().unwrap() != d {
        path.push(topo.next_hop(*path.last().unwrap(), d).unwrap());
    }
    path
}

fn k_hop() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let inertia = InertiaConfig::none();
    let mut done = 0;
    let mut max_k = 0;
    let mut seed = 30_000u64;
    while done < 500 {
        seed += 1;
        let sc = Scenario::from_file(generate(&GenParams::sampled(seed, 3..=9, 1..=7)).unwrap()).unwrap();
        let (app, topo, f) = (&sc.app, &sc.topology, &sc.assignment);
        let i = p(rng.gen_range(0..app.real_count() as u32));
        let s = f.host(i);
        let targets: Vec<NodeId> = topo.nodes().filter(|&x| x != s).collect();
        let d = *targets.choose(&mut rng).unwrap();
        let group = random_group(&mut rng, &f.hosted(s));
        let path = path_between(topo, s, d);
        let k = (path.len() - 1) as i64;
        max_k = max_k.max(k);
        let b_sd = delta_audit(f, &f.with_moved(&group, s, d).unwrap(), app, topo);
        let b_sz = super_benefit(app, topo, f, &group, s, path[1], &inertia).unwrap().0;
        ensure(b_sd <= k * b_sz, || format!("seed {seed}: b_sd {b_sd} > {k} * {b_sz}"))?;
        let mut cur = f.clone();
        let mut sum = 0;
        for w in path.windows(2) {
            sum += super_benefit(app, topo, &cur, &group, w[0], w[1], &inertia).unwrap().0;
            cur.move_group(&group, w[0], w[1]).unwrap();
        }
        ensure(sum == b_sd, || format!("seed {seed}: hop sum {sum} vs k-hop delta {b_sd}"))?;
        done += 1;
    }
    Ok(format!("500 moves, up to {max_k} hops"))
}

fn concurrent_round(app: &AppGraph<i64>, topo: &Topology, f: &Assignment) -> Result<(usize, i64, i64), String> {
    let config = EngineConfig {
        policy: SchedulePolicy::concurrent(),
        ..EngineConfig::default()
    };
    let mut sim = Simulation::new(app.clone(), topo.clone(), f.clone(), config);
    let (events, plan) = sim.step(1).map_err(|e| e.to_string())?;
    let sum: i64 = plan.applied.iter().map(|p| p.raw_benefit).sum();
    let delta = delta_audit(f, sim.assignment(), app, topo);
    debug_assert_eq!(events.len(), plan.applied.len());
    Ok((plan.applied.len(), sum, delta))
}

fn concurrency_rules() -> Check {
    let mut notes = Vec::new();
    // non-adjacent: p0 and p1 both pulled into n1
    {
        let topo: Topology = TreeTopology::chain(3).unwrap().into();
        let app = app_from(3, 2, &[(0, 3, 5), (1, 3, 7)]);
        let f = place(&app, &topo, &[0, 2]);
        let (k, sum, delta) = concurrent_round(&app, &topo, &f)?;
        ensure(k == 2 && sum == delta, || format!("non-adjacent: {k} applied, sum {sum}, delta {delta}"))?;
        notes.push(format!("non-adjacent {sum}"));
    }
    // adjacent, 4 hops apart
    {
        let topo: Topology = TreeTopology::chain(5).unwrap().into();
        let app = app_from(5, 2, &[(0, 1, 1), (0, 3, 10), (1, 5, 10)]);
        let f = place(&app, &topo, &[0, 4]);
        let (k, sum, delta) = concurrent_round(&app, &topo, &f)?;
        ensure(k == 2 && sum == delta, || format!("two hops: {k} applied, sum {sum}, delta {delta}"))?;
        notes.push(format!("distant {sum}"));
    }
    // co-located adjacent group next to an independent single move
    {
        let topo: Topology = TreeTopology::chain(3).unwrap().into();
        // virtuals 3, 4, 5; p0, p1 on n0 talk and both lean to n1; p2 on n2 leans to n1
        let app = app_from(3, 3, &[(0, 1, 4), (0, 4, 3), (1, 4, 3), (0, 3, 1), (2, 4, 6)]);
        let f = place(&app, &topo, &[0, 0, 2]);
        let config = EngineConfig {
            policy: SchedulePolicy::concurrent(),
            ..EngineConfig::default()
        };
        let mut sim = Simulation::new(app.clone(), topo.clone(), f.clone(), config);
        let (_, plan) = sim.step(1).map_err(|e| e.to_string())?;
        let grouped = plan.applied.iter().any(|q| q.group.len() > 1);
        let sum: i64 = plan.applied.iter().map(|q| q.raw_benefit).sum();
        let delta = delta_audit(&f, sim.assignment(), &app, &topo);
        ensure(grouped && plan.applied.len() == 2 && sum == delta, || {
            format!("co-located: {:?}, sum {sum}, delta {delta}", plan.applied)
        })?;
        notes.push(format!("co-located {sum}"));
    }
    // swap: p0 on n0 and p1 on n1 each want the other's node
    {
        let topo: Topology = TreeTopology::chain(2).unwrap().into();
        let app = app_from(2, 2, &[(0, 1, 10), (0, 2, 3), (1, 3, 3)]);
        let f = place(&app, &topo, &[0, 1]);
        let sim = Simulation::new(app.clone(), topo.clone(), f.clone(), EngineConfig::default());
        let proposals = sim.propose_all().map_err(|e| e.to_string())?;
        ensure(proposals.len() == 2 && proposals.iter().all(|q| q.raw_benefit == 7), || {
            format!("swap proposals {proposals:?}")
        })?;
        let plan = schedule_round(&app, &topo, proposals, SchedulePolicy::concurrent());
        ensure(plan.applied.len() == 1 && plan.deferred.len() == 1, || format!("swap plan {plan:?}"))?;
        let swapped = place(&app, &topo, &[1, 0]);
        let unguarded = delta_audit(&f, &swapped, &app, &topo);
        ensure(unguarded == -6, || format!("swap would change cost by {unguarded}"))?;
        notes.push("swap deferred (unguarded swap: +6)".into());
    }
    Ok(notes.join(", "))
}

fn singles_suboptimal() -> Check {
    let topo: Topology = TreeTopology::chain(2).unwrap().into();
    // virtuals 2 (n0) and 3 (n1)
    let app = app_from(2, 2, &[(0, 2, 1), (1, 3, 6), (0, 1, 8)]);
    let f = place(&app, &topo, &[0, 0]);
    let inertia = InertiaConfig::none();
    let b0 = benefit(&app, &topo, &f, p(0), n(0), n(1), &inertia).unwrap().0;
    let b1 = benefit(&app, &topo, &f, p(1), n(0), n(1), &inertia).unwrap().0;
    let bg = super_benefit(&app, &topo, &f, &[p(0), p(1)], n(0), n(1), &inertia).unwrap().0;
    ensure(b0 < 0 && b1 < 0 && bg > 0, || format!("singles {b0}, {b1}, pair {bg}"))?;
    let (_, best) = optimal_assignment(&app, &topo, &OracleBudget::default()).unwrap();
    let run_with = |mechanism| {
        let config = EngineConfig {
            mechanism,
            ..EngineConfig::default()
        };
        engine::run(&app, &topo, &f, config).unwrap().final_comm()
    };
    let (sup, single) = (run_with(Mechanism::SuperOnly), run_with(Mechanism::SingleOnly));
    ensure(sup == best && single > best, || format!("super {sup}, singles {single}, optimum {best}"))?;
    Ok(format!("singles {b0}/{b1}, pair +{bg}; super reaches {sup}, singles stop at {single}"))
}

fn hierarchical() -> Check {
    let inertia = InertiaConfig::none();
    let mut audits = 0;
    let mut improved = 0;
    for seed in 0..50u64 {
        let mut params = GenParams::sampled(40_000 + seed, 2..=4, 1..=8);
        params.servers_per_cluster = Some(2 + (seed % 3) as usize);
        let sc = Scenario::from_file(generate(&params).unwrap()).unwrap();
        let (app, topo, f) = (&sc.app, &sc.topology, &sc.assignment);
        for i in app.real_processes() {
            let s = f.host(i);
            for d in topo.neighbors(s).unwrap() {
                let audit = delta_audit(f, &f.with_moved(&[i], s, d).unwrap(), app, topo);
                let raw = benefit(app, topo, f, i, s, d, &inertia).unwrap().0;
                ensure(raw == audit, || format!("seed {seed}: {i} {s}->{d} benefit {raw}, audit {audit}"))?;
                if topo.same_cluster(s, d) {
                    let (pl, nl) = hierarchical_loads(app, topo, f, i, s, d).unwrap();
                    ensure(pl - nl == audit, || format!("seed {seed}: intra {i} {s}->{d} {pl}-{nl} vs {audit}"))?;
                    audits += 1;
                }
            }
        }
        let out = engine::run(app, topo, f, sequential()).map_err(|e| e.to_string())?;
        ensure(out.converged(), || format!("seed {seed}: no convergence"))?;
        ensure(out.migrations() as i64 <= out.initial_comm(), || format!("seed {seed}: too many migrations"))?;
        for w in out.curve.windows(2) {
            if w[1].migrations_applied > 0 {
                ensure(w[1].comm < w[0].comm, || format!("seed {seed}: round {} did not descend", w[1].round))?;
            }
        }
        ensure(out.final_comm() <= out.initial_comm(), || format!("seed {seed}: cost rose"))?;
        if out.final_comm() < out.initial_comm() {
            improved += 1;
        }
    }
    Ok(format!("50 instances converge; {audits} intra-cluster audits exact; {improved} improved"))
}

fn trace_bytes(sc: &Scenario, config: EngineConfig) -> Vec<u8> {
    let out = engine::run(&sc.app, &sc.topology, &sc.assignment, config).unwrap();
    let header = TraceHeader {
        scenario_hash: sc.hash(),
        seed: sc.file.seed,
        policy: config.policy.name().into(),
        mechanism: format!("{:?}", config.mechanism),
        gamma: config.inertia.gamma(),
        alpha: None,
    };
    let mut buf = Vec::new();
    write_trace(&mut buf, &header, &out.trace).unwrap();
    buf
}

fn reproducibility() -> Check {
    let mut total = 0;
    for seed in [1u64, 17, 99, 512] {
        for policy in [SchedulePolicy::sequential(), SchedulePolicy::concurrent()] {
            let config = EngineConfig {
                policy,
                ..EngineConfig::default()
            };
            let params = GenParams::sampled(seed, 3..=8, 4..=12);
            let a = Scenario::parse(&generate(&params).unwrap().to_json()).unwrap();
            let b = Scenario::parse(&generate(&params).unwrap().to_json()).unwrap();
            let (ta, tb) = (trace_bytes(&a, config), trace_bytes(&b, config));
            ensure(ta == tb, || format!("seed {seed} {}: traces differ", policy.name()))?;
            total += ta.len();
        }
    }
    Ok(format!("8 repeated runs byte-identical ({total} bytes)"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let suite: Vec<(u64, Scenario, RunOutcome<i64>)> = (0..200u64)
        .map(|seed| {
            let sc = tree_instance(seed);
            let out = engine::run(&sc.app, &sc.topology, &sc.assignment, sequential()).unwrap();
            (seed, sc, out)
        })
        .collect();

    let criteria: Vec<Criterion> = vec![
        ("worked example, single process", Box::new(worked_example_single)),
        ("worked example, min-cut group", Box::new(worked_example_group)),
        ("optimality on 200 random trees", Box::new(|| optimality(&suite))),
        ("convergence on 200 random trees", Box::new(|| convergence(&suite))),
        ("benefit equals recomputed delta", Box::new(benefit_exactness)),
        ("min cut matches subset enumeration", Box::new(mincut_dominance)),
        ("k-hop bound and path additivity", Box::new(k_hop)),
        ("concurrency rules", Box::new(concurrency_rules)),
        ("groups beat singles", Box::new(singles_suboptimal)),
        ("hierarchical networks", Box::new(hierarchical)),
        ("reproducible traces", Box::new(reproducibility)),
    ];

    let mut failed = 0;
    for (idx, (name, check)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.2?}]", idx + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.2?}]", idx + 1, t.elapsed());
            }
        }
    }
    println!("{} of 11 criteria passed in {:.2?}", 11 - failed, started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
