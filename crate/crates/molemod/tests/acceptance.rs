//! Acceptance criteria. Runs as a single test so the timing criterion is not
//! disturbed by parallel tests; prints one PASS/FAIL line per criterion.
//!
//! `RECONFIG_SEED` overrides the default seed of the randomized suites.

use std::path::PathBuf;
use std::time::Instant;

use molemod::bench::{self, AuditRow};
use molemod::plan_io::write_plan;
use molemod::scenario_io::{parse_scenario, write_scenario};
use molemod::suite::{self, random_scenarios, random_state, RandomLimits};
use molemod_core::controller::{control_velocity, settle_trace, ControllerConfig};
use molemod_core::{
    enumerate_joint_actions, plan, render_ascii, ucs_plan, GridState, JointAction, MotionPrimitive, OracleOptions,
    Rules, Scenario, SearchOptions, SearchOutcome, Side, WorldOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_SUITE_SIZE: usize = 50;
const ORACLE_SUITE_BUDGET_SECS: f64 = 60.0;
const BENCH_CELLS: usize = 21;
const BENCH_REPEATS: usize = 5;
const CONSERVATION_STATES: usize = 1000;
const COMMUTATIVITY_STATES: usize = 200;
const ROUND_TRIP_CASES: usize = 200;
const SWEEP_POINTS: usize = 1001;
const SWEEP_HALF_RANGE: f64 = 2e-3;
const SETTLE_PAIRS: usize = 100;
const DEAD_BAND: f64 = 50e-6;

type Verdict = Result<String, String>;

fn seed() -> u64 {
    suite::seed_from_env(suite::DEFAULT_SEED)
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn oracle_suite() -> Vec<Scenario> {
    random_scenarios(seed(), ORACLE_SUITE_SIZE, &RandomLimits::default())
}

fn optimal(s: &Scenario) -> Option<u64> {
    match ucs_plan(s, &OracleOptions::default()).unwrap() {
        SearchOutcome::Found(p) => Some(p.total_cost),
        SearchOutcome::NoPlan(_) => None,
        other => panic!("oracle exhausted on {}: {other:?}", s.name),
    }
}

fn ac1_oracle_equivalence(suite: &[Scenario]) -> Verdict {
    let t = Instant::now();
    let mut mismatches = Vec::new();
    for s in suite {
        assert!(s.width() <= 4 && s.height() <= 4 && s.start().block_count() <= 4 && s.start().robot_count() <= 2);
        let ucs = optimal(s);
        let zero = plan(s, &SearchOptions::zero()).unwrap().plan().map(|p| p.total_cost);
        if ucs != zero {
            mismatches.push(format!("{}: ucs {ucs:?} vs astar(zero) {zero:?}", s.name));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let equal = suite.len() - mismatches.len();
    let msg = format!("{equal}/{} equal costs in {secs:.2}s", suite.len());
    if mismatches.is_empty() && secs < ORACLE_SUITE_BUDGET_SECS {
        Ok(msg)
    } else {
        Err(format!("{msg}; {mismatches:?}"))
    }
}

fn ac2_heuristic_audit(suite: &[Scenario]) -> Verdict {
    let rows = bench::audit_scenarios(suite).map_err(|(n, e)| format!("{n}: {e}"))?;
    let report = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("heuristic_audit.csv");
    let mut buf = Vec::new();
    bench::write_audit_csv(&rows, &mut buf).map_err(|e| e.to_string())?;
    std::fs::write(&report, &buf).map_err(|e| e.to_string())?;

    // Read the report back and check that it lists exactly the violations.
    let mut reader = csv::Reader::from_path(&report).map_err(|e| e.to_string())?;
    let listed: Vec<(String, bool)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_owned(), &r[4] == "false")
        })
        .collect();
    if listed.len() != rows.len() {
        return Err(format!("report has {} rows, expected {}", listed.len(), rows.len()));
    }
    let mut problems = Vec::new();
    for (row, (name, flagged)) in rows.iter().zip(&listed) {
        let AuditRow { h_at_start, optimal_cost, astar_cost, .. } = row;
        let violation = optimal_cost.is_some_and(|o| *h_at_start > o);
        if name != &row.scenario || violation != *flagged {
            problems.push(format!("{name}: violation not reported faithfully"));
        }
        let overshoot = matches!((astar_cost, optimal_cost), (Some(a), Some(o)) if a > o);
        if overshoot && !violation {
            problems.push(format!("{name}: astar {astar_cost:?} > optimal {optimal_cost:?} without a flagged estimate"));
        }
        if astar_cost.is_some() != optimal_cost.is_some() {
            problems.push(format!("{name}: astar and oracle disagree on solvability"));
        }
    }
    let violations = listed.iter().filter(|(_, f)| *f).count();
    let overshoots = rows.iter().filter(|r| r.astar_overshoot).count();
    let msg = format!(
        "{} audited, {violations} estimate violations, {overshoots} A* overshoots; report {}",
        rows.len(),
        report.display()
    );
    if problems.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}; {problems:?}"))
    }
}

fn ac3_planning_time_trend() -> Verdict {
    let entries = suite::generate_task_suite();
    if entries.len() != BENCH_CELLS {
        return Err(format!("{} cells, expected {BENCH_CELLS}", entries.len()));
    }
    let rows = bench::run_bench(&entries, &SearchOptions::default(), BENCH_REPEATS).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    bench::write_bench_csv(&rows, &mut buf).map_err(|e| e.to_string())?;
    let text = String::from_utf8(buf).unwrap();
    std::fs::write(PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("bench.csv"), &text).unwrap();
    for line in text.lines() {
        println!("    {line}");
    }
    if text.lines().count() != BENCH_CELLS + 1 {
        return Err("CSV row count".into());
    }
    let unsolved: Vec<_> = rows.iter().filter(|r| r.cost.is_none()).map(|r| (r.task, r.robots)).collect();
    if !unsolved.is_empty() {
        return Err(format!("unsolved cells {unsolved:?}"));
    }
    if rows.iter().any(|r| r.cost == Some(0)) {
        return Err("a suite cell has cost 0".into());
    }
    let time = |robots: usize| rows.iter().find(|r| r.task == 6 && r.robots == robots).unwrap().time_ms;
    let (t1, t2, t3, t6) = (time(1), time(2), time(3), time(6));
    let msg = format!("task6 medians: 1 robot {t1:.2} ms, 2 robots {t2:.2} ms, 3 robots {t3:.2} ms, 6 robots {t6:.2} ms");
    if t2 > t1 && t6 < t3 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn ac4_conservation(rng: &mut ChaCha8Rng) -> Verdict {
    let limits = RandomLimits { max_side: 6, max_blocks: 14, max_robots: 5, max_walk: 0 };
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for _ in 0..CONSERVATION_STATES {
        let state = random_state(rng, &limits);
        for rules in [Rules { ground_shift: false }, Rules { ground_shift: true }] {
            for robot in state.robots() {
                for p in molemod_core::applicable_primitives(&state, robot, rules).unwrap() {
                    checked += 1;
                    if p.precondition(&state, rules).is_err() {
                        failures.push(format!("{p} generated but not applicable"));
                        continue;
                    }
                    let next = p.apply(&state, rules);
                    if next.block_count() != state.block_count() || next.robot_count() != state.robot_count() {
                        failures.push(format!("{p} changed counts"));
                    }
                }
            }
        }
    }
    let msg = format!("{CONSERVATION_STATES} states, {checked} primitive applications, {} failures", failures.len());
    if failures.is_empty() && checked > 0 {
        Ok(msg)
    } else {
        Err(format!("{msg}; {:?}", &failures[..failures.len().min(5)]))
    }
}

fn permutations(items: &[MotionPrimitive]) -> Vec<Vec<MotionPrimitive>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn ac5_commutativity(rng: &mut ChaCha8Rng) -> Verdict {
    let limits = RandomLimits { max_side: 6, max_blocks: 14, max_robots: 4, max_walk: 0 };
    let rules = Rules::default();
    let (mut states, mut actions, mut orders, mut failures) = (0, 0, 0, 0);
    while states < COMMUTATIVITY_STATES {
        let state = random_state(rng, &limits);
        if state.robot_count() < 2 {
            continue;
        }
        states += 1;
        for action in enumerate_joint_actions(&state, rules, None) {
            if action.len() < 2 {
                continue;
            }
            actions += 1;
            let key = action.apply(&state, rules).canonical_key();
            for perm in permutations(action.primitives()) {
                orders += 1;
                let mut s = state.clone();
                for p in &perm {
                    s = p.apply(&s, rules);
                }
                if s.canonical_key() != key {
                    failures += 1;
                }
            }
        }
    }
    let msg = format!("{states} states, {actions} parallel actions, {orders} orders, {failures} failures");
    if failures == 0 && actions > 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn ac6_round_trips(rng: &mut ChaCha8Rng) -> Verdict {
    let limits = RandomLimits { max_side: 8, max_blocks: 16, max_robots: 4, max_walk: 3 };
    let mut failures = Vec::new();
    for (i, base) in random_scenarios(rng.gen(), ROUND_TRIP_CASES, &limits).into_iter().enumerate() {
        let options = WorldOptions {
            ground_shift: rng.gen(),
            max_parallel: rng.gen::<bool>().then(|| rng.gen_range(1..5)),
        };
        let s = Scenario::new(format!("case {i}"), base.start().clone(), base.goal().clone(), options).unwrap();
        let text = write_scenario(&s);
        match parse_scenario(&text) {
            Ok(back) if back == s && write_scenario(&back) == text => {}
            other => failures.push(format!("scenario {i}: {other:?}")),
        }
    }

    let state_limits = RandomLimits { max_side: 6, max_blocks: 14, max_robots: 4, max_walk: 0 };
    let rules = Rules::default();
    let mut lifts = 0;
    while lifts < ROUND_TRIP_CASES {
        let state = random_state(rng, &state_limits);
        for robot in state.robots().collect::<Vec<_>>() {
            for side in Side::ALL {
                let lift = MotionPrimitive::LiftBlock { actor: robot, side };
                if lift.precondition(&state, rules).is_err() || lifts == ROUND_TRIP_CASES {
                    continue;
                }
                lifts += 1;
                let up = lift.apply(&state, rules);
                let back = match side {
                    Side::Left => Side::Right,
                    Side::Right => Side::Left,
                };
                let put = MotionPrimitive::PutDownBlock { actor: robot.offset(side.sign(), 1).unwrap(), side: back };
                if put.precondition(&up, rules).is_err() || put.apply(&up, rules) != state {
                    failures.push(format!("lift/put at {robot} {side:?}"));
                }
            }
        }
    }
    let msg = format!("{ROUND_TRIP_CASES} scenario texts, {lifts} lift/put-down pairs, {} failures", failures.len());
    if failures.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}; {failures:?}"))
    }
}

fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

fn ac7_golden_instances() -> Verdict {
    let mut problems = Vec::new();

    let shift = parse_scenario(&read_golden("shift.scn")).unwrap();
    let p = plan(&shift, &SearchOptions::default()).unwrap().into_plan();
    match p {
        Some(p) if p.total_cost == 2 && write_plan(&p, &shift.name) == read_golden("shift.plan") => {}
        other => problems.push(format!("shift: {other:?}")),
    }

    let isolated = parse_scenario(&read_golden("isolated.scn")).unwrap();
    if !matches!(plan(&isolated, &SearchOptions::default()).unwrap(), SearchOutcome::NoPlan(_)) {
        problems.push("isolated block has a plan".into());
    }

    let coop = parse_scenario(&read_golden("coop.scn")).unwrap();
    match plan(&coop, &SearchOptions::default()).unwrap().into_plan() {
        Some(p) => {
            let rules = coop.rules();
            let mut text = format!("# start\n{}", render_ascii(coop.start()));
            let mut state: GridState = coop.start().clone();
            for (i, step) in p.steps.iter().enumerate() {
                state = step.apply(&state, rules);
                text.push_str(&format!("# step {}: {step}\n{}", i + 1, render_ascii(&state)));
            }
            let is_coop = p.steps.len() == 1 && matches!(p.steps[0], ref a if is_single_coop(a));
            if !is_coop || text != read_golden("coop.render") {
                problems.push(format!("coop frames differ:\n{text}"));
            }
        }
        None => problems.push("coop instance has no plan".into()),
    }
    if problems.is_empty() {
        Ok("shift cost 2, isolated block without plan, cooperative lift end frame: byte-identical to golden files".into())
    } else {
        Err(format!("{problems:?}"))
    }
}

fn is_single_coop(a: &JointAction) -> bool {
    a.len() == 1 && matches!(a.primitives()[0], MotionPrimitive::CoopLiftUp { .. })
}

/// Speed expected for error `e`, read from an interval table.
fn table_speed(e: f64, vel: f64) -> f64 {
    // (lower, lower inclusive, upper, upper inclusive, speed)
    let table = [
        (f64::NEG_INFINITY, false, -500e-6, false, -vel),
        (-500e-6, true, -50e-6, false, -vel / 2.0),
        (-50e-6, true, 50e-6, true, 0.0),
        (50e-6, false, 500e-6, true, vel / 2.0),
        (500e-6, false, f64::INFINITY, false, vel),
    ];
    let hits: Vec<f64> = table
        .iter()
        .filter(|&&(lo, lo_in, hi, hi_in, _)| (e > lo || (lo_in && e == lo)) && (e < hi || (hi_in && e == hi)))
        .map(|row| row.4)
        .collect();
    assert_eq!(hits.len(), 1, "intervals must partition the line at {e}");
    hits[0]
}

fn ac8_controller(rng: &mut ChaCha8Rng) -> Verdict {
    let cfg = ControllerConfig::default();
    if cfg.accuracy != DEAD_BAND {
        return Err(format!("default accuracy {} is not 50 um", cfg.accuracy));
    }
    let mut mismatches = Vec::new();
    for i in 0..SWEEP_POINTS {
        let e = -SWEEP_HALF_RANGE + 2.0 * SWEEP_HALF_RANGE * i as f64 / (SWEEP_POINTS - 1) as f64;
        let got = control_velocity(0.0, e, &cfg).unwrap();
        let want = table_speed(e, cfg.vel);
        if got != want {
            mismatches.push((e, got, want));
        }
    }
    let mut unsettled = 0;
    for _ in 0..SETTLE_PAIRS {
        let start = rng.gen_range(-0.02..0.02);
        let target = rng.gen_range(-0.02..0.02);
        match settle_trace(start, target, &cfg) {
            Ok((_, end)) if (target - end).abs() <= DEAD_BAND => {}
            _ => unsettled += 1,
        }
    }
    let msg = format!(
        "{SWEEP_POINTS}-point sweep: {} mismatches; {SETTLE_PAIRS} settle runs: {unsettled} outside 50 um",
        mismatches.len()
    );
    if mismatches.is_empty() && unsettled == 0 {
        Ok(msg)
    } else {
        Err(format!("{msg}; {:?}", &mismatches[..mismatches.len().min(5)]))
    }
}

#[test]
fn acceptance_criteria() {
    let seed = seed();
    println!("acceptance seed {seed}");
    let oracle = oracle_suite();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let results = [
        ("AC1 oracle equivalence", ac1_oracle_equivalence(&oracle)),
        ("AC2 heuristic audit", ac2_heuristic_audit(&oracle)),
        ("AC3 planning-time trend", ac3_planning_time_trend()),
        ("AC4 conservation", ac4_conservation(&mut rng)),
        ("AC5 commutativity", ac5_commutativity(&mut rng)),
        ("AC6 round trips", ac6_round_trips(&mut rng)),
        ("AC7 worked micro-instances", ac7_golden_instances()),
        ("AC8 controller", ac8_controller(&mut rng)),
    ];
    let mut failed = Vec::new();
    for (name, verdict) in &results {
        match verdict {
            Ok(msg) => println!("[PASS] {name}: {msg}"),
            Err(msg) => {
                println!("[FAIL] {name}: {msg}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
