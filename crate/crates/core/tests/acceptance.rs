//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Random instances come from ChaCha8 with the seeds pinned below.

mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use evomarkov::prelude::*;
use evomarkov::samples;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WALK_TOL: f64 = 1e-9;
const POWER_TOL: f64 = 1e-12;
const STAT_TRIALS: u64 = 100_000;
const STAT_BAND: f64 = 4.0;
const RETURN_TRIALS: u64 = 20_000;
const RETURN_HORIZON: usize = 200;

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_dim<R: Rng>(rng: &mut R, max: usize) -> usize {
    rng.gen_range(1..=max)
}

fn c1_square_of_absorbing_chain() -> Outcome {
    let m = samples::three_state_absorbing();
    let p2 = matrix_power(&m, 2).matrix;
    let printed = [[0.25, 0.0, 0.75], [0.15, 0.0, 0.85], [0.0, 0.0, 1.0]];
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((p2.get(i, j) - printed[i][j]).abs());
        }
    }
    ensure(worst <= POWER_TOL, || format!("P^2 off by {worst:e}"))?;
    let g = graph(&m);
    let walks = enumerate_walks(&g, 0, 0, 2).map_err(|e| e.to_string())?;
    ensure(walks.len() == 1 && walks[0].vertices() == [0, 0, 0], || {
        format!("expected the single loop walk, got {walks:?}")
    })?;
    let sum = walk_weight_sum(&g, 0, 0, 2).map_err(|e| e.to_string())?;
    ensure((sum - 0.25).abs() <= POWER_TOL, || format!("walk sum {sum}"))?;
    Ok(format!("max |P^2 - printed| = {worst:e}; (e1,e1,2) = {sum} via 1 walk"))
}

fn c2_walk_sum_theorem() -> Outcome {
    let start = Instant::now();
    let mut graphs: Vec<(String, WeightedDigraph)> = [
        ("four_state_irreducible", samples::four_state_irreducible()),
        ("three_state_absorbing", samples::three_state_absorbing()),
        ("period_two", samples::period_two()),
        ("eight_state_partition", samples::eight_state_partition()),
    ]
    .into_iter()
    .map(|(n, m)| (n.to_string(), graph(&m)))
    .collect();
    let mut r = rng(0x2001);
    for k in 0..50 {
        let dim = random_dim(&mut r, 5);
        let density = r.gen_range(0.3..=1.0);
        graphs.push((format!("random #{k}"), graph(&random_stochastic(&mut r, dim, density))));
    }
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for (name, g) in &graphs {
        let reports = verify_walk_theorem(g, 6, WALK_TOL).map_err(|e| format!("{name}: {e}"))?;
        checked += reports.len();
        for rep in &reports {
            worst = worst.max(rep.abs_error);
            ensure(rep.passed, || {
                format!("{name}: ({},{},{}) error {:e}", rep.from, rep.to, rep.length, rep.abs_error)
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{checked} (i,j,n) checks on {} graphs, max error {worst:e}, {elapsed:.2?}",
        graphs.len()
    ))
}

fn c3_closed_sets_and_subalgebras() -> Outcome {
    let six = graph(&samples::six_state_closed_cycle());
    ensure(is_closed(&six, &set(&[4, 5, 6])).unwrap(), || "{e4,e5,e6} not closed".into())?;

    let eight = samples::eight_state_partition();
    ensure(is_closed(&graph(&eight), &set(&[3, 6])).unwrap(), || "{e3,e6} not closed".into())?;
    let sub = subalgebra(&algebra(&eight), &set(&[3, 6])).map_err(|e| e.to_string())?;
    ensure(sub.matrix().to_rows() == vec![vec![0.5, 0.5], vec![0.3, 0.7]], || {
        format!("subalgebra laws {:?}", sub.laws())
    })?;

    let mut r = rng(0x3001);
    let mut subsets_checked = 0;
    for _ in 0..100 {
        let dim = random_dim(&mut r, 5);
        let density = r.gen_range(0.2..=0.8);
        let m = random_stochastic(&mut r, dim, density);
        let g = graph(&m);
        for s in subsets(dim) {
            let one_step = is_closed(&g, &StateSet::new(s.clone())).unwrap();
            ensure(one_step == closed_by_powers(&m, &s), || {
                format!("mismatch on {s:?} for {:?}", m.to_rows())
            })?;
            subsets_checked += 1;
        }
    }
    Ok(format!(
        "example sets closed, laws exact, {subsets_checked} subsets agree with the power test"
    ))
}

fn c4_simplicity() -> Outcome {
    ensure(is_simple(&algebra(&samples::period_two())), || "period_two not simple".into())?;
    ensure(!is_simple(&algebra(&samples::six_state_closed_cycle())), || {
        "six_state simple".into()
    })?;
    ensure(!is_simple(&algebra(&samples::eight_state_partition())), || {
        "eight_state simple".into()
    })?;
    let mut r = rng(0x4001);
    let mut simple_count = 0;
    for _ in 0..200 {
        let dim = random_dim(&mut r, 6);
        let density = r.gen_range(0.15..=0.9);
        let m = random_stochastic(&mut r, dim, density);
        let g = graph(&m);
        let simple = is_simple(&algebra(&m));
        let one_class = communication_classes(&g).len() == 1;
        let only_full = enumerate_closed_sets(&g, 20).unwrap() == vec![StateSet::full(dim)];
        ensure(simple == one_class && one_class == only_full, || {
            format!("disagreement on {:?}", m.to_rows())
        })?;
        simple_count += simple as usize;
    }
    Ok(format!("examples correct; 200 random graphs agree ({simple_count} simple)"))
}

fn c5_classification() -> Outcome {
    let (t, rec) = classify_generators(&graph(&samples::seven_state_two_closed()));
    ensure(t == set(&[1, 3, 6]) && rec == set(&[2, 4, 5, 7]), || {
        format!("seven_state: transient {t:?}, recurrent {rec:?}")
    })?;
    // Derived from the matrix: e8 is recurrent, and e4 is a class of its own.
    let p = canonical_partition(&graph(&samples::eight_state_partition()));
    ensure(p.transient_states == set(&[1, 2, 4]), || {
        format!("eight_state transient {:?}", p.transient_states)
    })?;
    let closed: Vec<StateSet> = p.closed_classes().map(|c| c.members.clone()).collect();
    ensure(closed == vec![set(&[3, 6]), set(&[5]), set(&[7, 8])], || {
        format!("eight_state closed classes {closed:?}")
    })?;
    ensure(p.recurrent_states == set(&[3, 5, 6, 7, 8]), || {
        format!("eight_state recurrent {:?}", p.recurrent_states)
    })?;
    Ok("seven_state and eight_state partitions match".into())
}

fn c6_periods() -> Outcome {
    let g = graph(&samples::period_two());
    for j in 0..3 {
        let p = period(&g, j).unwrap();
        ensure(p == Some(2), || format!("period(e{}) = {p:?}", j + 1))?;
    }
    let mut r = rng(0x6001);
    for _ in 0..200 {
        let dim = random_dim(&mut r, 6);
        let density = r.gen_range(0.15..=0.7);
        let m = random_stochastic(&mut r, dim, density);
        let g = graph(&m);
        for class in communication_classes(&g) {
            let periods: Vec<_> = class.iter().map(|v| period(&g, v).unwrap()).collect();
            ensure(periods.windows(2).all(|w| w[0] == w[1]), || {
                format!("periods {periods:?} in class {class:?} of {:?}", m.to_rows())
            })?;
        }
    }
    let prim = is_primitive(&chain(&samples::period_two()));
    ensure(prim.is_none(), || format!("period_two primitive index {prim:?}"))?;
    let one = StructureMatrix::new(&[[1.0]], None).unwrap();
    let prim1 = is_primitive(&chain(&one));
    ensure(prim1 == Some(1), || format!("[[1]] primitive index {prim1:?}"))?;
    Ok("period 2 on all of period_two; constant on 200 random graphs' classes; primitivity ok".into())
}

fn c7_idempotents() -> Outcome {
    let tol = 1e-9;
    let cases = [
        (samples::three_state_absorbing(), set(&[3])),
        (samples::eight_state_partition(), set(&[5])),
        (samples::four_state_irreducible(), StateSet::default()),
    ];
    for (m, want) in &cases {
        let got = idempotents(&algebra(m), tol);
        ensure(&got == want, || format!("idempotents {got:?}, expected {want:?}"))?;
    }
    let mut r = rng(0x7001);
    let mut absorbing = 0;
    for _ in 0..200 {
        let dim = random_dim(&mut r, 6);
        let mut rows = random_stochastic(&mut r, dim, 0.4).to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            if r.gen_bool(0.3) {
                row.iter_mut().for_each(|x| *x = 0.0);
                row[i] = 1.0;
            }
        }
        let m = StructureMatrix::new(&rows, None).unwrap();
        let g = graph(&m);
        let idem = idempotents(&algebra(&m), tol);
        for i in 0..dim {
            let a = idem.contains(i);
            let b = is_closed(&g, &StateSet::new(vec![i])).unwrap();
            let c = (m.get(i, i) - 1.0).abs() <= tol;
            ensure(a == b && b == c, || format!("state {i} of {rows:?}: {a} {b} {c}"))?;
            absorbing += a as usize;
        }
    }
    Ok(format!("examples correct; 200 random instances agree ({absorbing} absorbing states)"))
}

fn c8_round_trips() -> Outcome {
    let mut r = rng(0x8001);
    let mut markov: Vec<StructureMatrix> = samples::all()
        .into_iter()
        .filter(|(n, _)| *n != "non_markov_three")
        .map(|(_, m)| m)
        .collect();
    let mut general = vec![samples::non_markov_three()];
    for _ in 0..100 {
        let dim = random_dim(&mut r, 6);
        markov.push(random_stochastic(&mut r, dim, 0.5));
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| if r.gen_bool(0.5) { r.gen_range(-2.0..2.0) } else { 0.0 })
                    .collect()
            })
            .collect();
        general.push(StructureMatrix::new(&rows, None).unwrap());
    }
    for m in &markov {
        let c = chain(m);
        let back = chain_from_algebra(&algebra_from_chain(&c), 1e-9).map_err(|e| e.to_string())?;
        ensure(back == c, || format!("chain round trip changed {:?}", m.to_rows()))?;
    }
    for m in markov.iter().chain(&general) {
        let a = algebra(m);
        ensure(algebra_from_graph(&graph_from_algebra(&a, 0.0)) == a, || {
            format!("algebra round trip changed {:?}", m.to_rows())
        })?;
    }
    Ok(format!(
        "{} chain and {} algebra round trips exact",
        markov.len(),
        markov.len() + general.len()
    ))
}

fn c9_statistics() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (name, m, steps, seed) in [
        ("four_state_irreducible", samples::four_state_irreducible(), 3, 0x9001),
        ("three_state_absorbing", samples::three_state_absorbing(), 2, 0x9002),
    ] {
        let c = chain(&m);
        let exact = m.power(steps as u32).matrix;
        let est = empirical_transition(&c, steps, STAT_TRIALS, seed).map_err(|e| e.to_string())?;
        let total = m.dim() * m.dim();
        let within = (0..m.dim())
            .flat_map(|i| (0..m.dim()).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let e = &est[i][j];
                (e.value - exact.get(i, j)).abs() <= STAT_BAND * e.stderr + 1e-12
            })
            .count();
        ensure(within as f64 >= 0.95 * total as f64, || {
            format!("{name}: only {within}/{total} entries within 4 stderr")
        })?;
        lines.push(format!("{name} {within}/{total}"));
    }

    for (name, m, seed) in [
        ("seven_state_two_closed", samples::seven_state_two_closed(), 0x9101),
        ("eight_state_partition", samples::eight_state_partition(), 0x9102),
    ] {
        let c = chain(&m);
        let (transient, recurrent) = classify_generators(&graph(&m));
        for j in recurrent.iter() {
            let e = estimate_return_frequency(&c, j, RETURN_HORIZON, RETURN_TRIALS, seed)
                .map_err(|e| e.to_string())?;
            ensure(e.value >= 0.99, || format!("{name}: recurrent e{} returns {}", j + 1, e.value))?;
        }
        for j in transient.iter() {
            let e = estimate_return_frequency(&c, j, RETURN_HORIZON, RETURN_TRIALS, seed)
                .map_err(|e| e.to_string())?;
            ensure(e.value < 1.0 - STAT_BAND * e.stderr, || {
                format!("{name}: transient e{} returns {} +/- {}", j + 1, e.value, e.stderr)
            })?;
        }
        lines.push(format!("{name} return split ok"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{}; {elapsed:.2?}", lines.join(", ")))
}

fn c10_cli_golden() -> Outcome {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let bin = env!("CARGO_BIN_EXE_evomarkov");
    let run = |args: &[&str]| -> std::result::Result<String, String> {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
        }
        String::from_utf8(out.stdout).map_err(|e| e.to_string())
    };
    let mut files = 0;
    for (stem, _) in samples::all() {
        let input = root.join("data").join(format!("{stem}.csv"));
        let input = input.to_str().unwrap();
        for (args, golden) in [
            (vec!["analyze", "--input", input], format!("{stem}.analyze.txt")),
            (
                vec!["analyze", "--input", input, "--format", "structured"],
                format!("{stem}.analyze.json"),
            ),
            (vec!["dot", "--input", input], format!("{stem}.dot")),
        ] {
            let first = run(&args)?;
            let second = run(&args)?;
            ensure(first == second, || format!("{args:?} not byte-stable"))?;
            let expected = std::fs::read_to_string(root.join("tests/golden").join(&golden))
                .map_err(|e| format!("{golden}: {e}"))?;
            ensure(first == expected, || format!("{golden} differs"))?;
            files += 1;
        }
    }
    let json = run(&[
        "analyze",
        "--input",
        root.join("data/non_markov_three.csv").to_str().unwrap(),
        "--format",
        "structured",
    ])?;
    let v: serde_json::Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure(v["is_markov"] == false, || "non-Markov input reported as Markov".into())?;
    Ok(format!("{files} outputs byte-stable and equal to golden files; non-Markov accepted"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("square of the absorbing chain and its walk", c1_square_of_absorbing_chain),
        ("walk-sum theorem", c2_walk_sum_theorem),
        ("closed sets and subalgebras", c3_closed_sets_and_subalgebras),
        ("simplicity", c4_simplicity),
        ("transient/recurrent classification", c5_classification),
        ("periods and primitivity", c6_periods),
        ("idempotents", c7_idempotents),
        ("round trips", c8_round_trips),
        ("statistical agreement", c9_statistics),
        ("CLI golden files", c10_cli_golden),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
