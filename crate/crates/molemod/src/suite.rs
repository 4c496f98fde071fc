//! Benchmark task suite and seeded random scenarios.
//!
//! Task `n` rearranges a ground row of `n + 1` blocks into a two-row stair
//! at the left edge and is solved with 1 to `n` robots, the robots starting
//! in the leftmost blocks. The 21 layouts are shipped as files under
//! `suite/`.

use molemod_core::{GoalSpec, GridState, Scenario, WorldOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scenario_io::parse_scenario;

/// Environment variable that fixes the seed of randomized suites.
pub const SEED_ENV: &str = "RECONFIG_SEED";
pub const DEFAULT_SEED: u64 = 0x4d6f_6c65;

pub const TASK_COUNT: usize = 6;

macro_rules! suite_files {
    ($(($task:literal, $robots:literal)),* $(,)?) => {
        &[$(($task, $robots, include_str!(concat!("../suite/task", $task, "_r", $robots, ".scn")))),*]
    };
}

static SUITE: &[(usize, usize, &str)] = suite_files![
    (1, 1),
    (2, 1), (2, 2),
    (3, 1), (3, 2), (3, 3),
    (4, 1), (4, 2), (4, 3), (4, 4),
    (5, 1), (5, 2), (5, 3), (5, 4), (5, 5),
    (6, 1), (6, 2), (6, 3), (6, 4), (6, 5), (6, 6),
];

#[derive(Debug, Clone)]
pub struct SuiteEntry {
    pub task: usize,
    pub robots: usize,
    pub scenario: Scenario,
}

/// The 21 (task, robot count) cells in task-major order.
pub fn generate_task_suite() -> Vec<SuiteEntry> {
    SUITE
        .iter()
        .map(|&(task, robots, text)| {
            let scenario = parse_scenario(text).unwrap_or_else(|e| panic!("suite file task{task}_r{robots}: {e}"));
            SuiteEntry { task, robots, scenario }
        })
        .collect()
}

/// Raw text of a shipped suite file.
pub fn suite_file(task: usize, robots: usize) -> Option<&'static str> {
    SUITE.iter().find(|&&(t, r, _)| t == task && r == robots).map(|&(_, _, text)| text)
}

/// Seed from [`SEED_ENV`], or `default` when unset or unparsable.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}

/// Size limits for [`random_scenarios`].
#[derive(Debug, Clone, Copy)]
pub struct RandomLimits {
    pub max_side: usize,
    pub max_blocks: usize,
    pub max_robots: usize,
    pub max_walk: usize,
}

impl Default for RandomLimits {
    fn default() -> Self {
        RandomLimits { max_side: 4, max_blocks: 4, max_robots: 2, max_walk: 4 }
    }
}

/// A random start state with at least one robot.
pub fn random_state(rng: &mut impl Rng, limits: &RandomLimits) -> GridState {
    let w = rng.gen_range(2..=limits.max_side);
    let h = rng.gen_range(2..=limits.max_side);
    let blocks = rng.gen_range(1..=limits.max_blocks.min(w * h));
    let robots = rng.gen_range(1..=limits.max_robots.min(blocks));
    let mut cells: Vec<(usize, usize)> = (0..h).flat_map(|y| (0..w).map(move |x| (x, y))).collect();
    cells.shuffle(rng);
    let block_cells = &cells[..blocks];
    GridState::from_blocks(w, h, block_cells, &block_cells[..robots]).expect("in bounds")
}

/// Solvable scenarios whose goal is reached from the start by a short random
/// walk of joint actions and differs from the start layout.
pub fn random_scenarios(seed: u64, count: usize, limits: &RandomLimits) -> Vec<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let options = WorldOptions::default();
    let rules = options.rules();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let start = random_state(&mut rng, limits);
        let start_goal = GoalSpec::from_state(&start);
        let walk_len = rng.gen_range(1..=limits.max_walk);
        let mut cur = start.clone();
        for _ in 0..walk_len {
            let actions = molemod_core::enumerate_joint_actions(&cur, rules, options.max_parallel);
            let Some(a) = actions.choose(&mut rng) else { break };
            cur = a.apply(&cur, rules);
        }
        let goal = GoalSpec::from_state(&cur);
        if goal == start_goal {
            continue;
        }
        let name = format!("random-{seed}-{}", out.len());
        out.push(Scenario::new(name, start, goal, options).expect("walk conserves blocks"));
    }
    out
}
