//! The nine acceptance criteria. Runs without the libtest harness and prints
//! one line per criterion; exits nonzero when any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use youngwall_core::{
    build_datum, check_figure, column_etilde, column_ftilde, compare_graphs, generate, ground_state,
    materialize, verify_axioms, ClassicalWeight, CrystalGraph, CrystalVector, Family, Figure, LimitCrystal,
    PathCrystal, PerfectCrystal, Slot, WallCrystal,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn smallest(f: Family) -> usize {
    f.min_rank()
}

/// Membership written out from the definitions, for the brute-force count.
fn brute_member(f: Family, n: usize, l: i64, t: &[i64]) -> bool {
    if t.iter().any(|&v| v < 0) {
        return false;
    }
    let (x0, rest): (i64, Vec<i64>) = if f == Family::Dtwist || f == Family::B1 {
        (t[n], t[..n].iter().chain(&t[n + 1..]).copied().collect())
    } else {
        (0, t.to_vec())
    };
    if x0 > 1 {
        return false;
    }
    let s: i64 = rest.iter().sum();
    match f {
        Family::A2even => s <= l,
        Family::Dtwist => x0 + s <= l,
        Family::A2odd => s == l,
        Family::D1 => s == l && (t[n - 1] == 0 || t[n] == 0),
        Family::B1 => x0 + s == l,
        Family::C1 => s <= 2 * l && s % 2 == 0,
    }
}

fn brute_count(f: Family, n: usize, l: i64) -> usize {
    let dim = 2 * n + usize::from(f == Family::Dtwist || f == Family::B1);
    let top = 2 * l;
    let mut t = vec![0i64; dim];
    let mut count = 0;
    loop {
        if brute_member(f, n, l, &t) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == dim {
                return count;
            }
            t[k] += 1;
            if t[k] <= top {
                break;
            }
            t[k] = 0;
            k += 1;
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for f in Family::ALL {
        let n = smallest(f);
        for l in 1..=2 {
            let c = PerfectCrystal::new(build_datum(f, n).unwrap(), l);
            let rep = c.verify_perfect();
            if !rep.passed() {
                bad.push(format!("{f} l={l}: {:?}", rep.counterexamples));
            }
            let want = brute_count(f, n, l);
            if rep.size != want || c.enumerate().len() != want {
                bad.push(format!("{f} l={l}: size {} but brute force {want}", rep.size));
            }
        }
    }
    let b3 = PerfectCrystal::new(build_datum(Family::B1, 3).unwrap(), 1)
        .enumerate()
        .len();
    let a2 = PerfectCrystal::new(build_datum(Family::A2even, 1).unwrap(), 2)
        .enumerate()
        .len();
    if (b3, a2) != (7, 6) {
        bad.push(format!("B3 B^(1) has {b3}, A2 B^(2) has {a2}"));
    }
    let took = start.elapsed();
    if took > Duration::from_secs(10) {
        bad.push(format!("took {took:?}"));
    }
    if bad.is_empty() {
        pass(format!("six families, l = 1, 2, in {took:.2?}"))
    } else {
        fail(bad.join("; "))
    }
}

fn plus(v: i64) -> i64 {
    v.max(0)
}

fn criterion_2() -> Outcome {
    let n = 3;
    let c = PerfectCrystal::new(build_datum(Family::B1, n).unwrap(), 2);
    let mut checked = 0;
    for b in c.enumerate() {
        let x = |i: usize| b.xi(i);
        let xb = |i: usize| b.xbari(i);
        let x0 = b.x0;
        let printed = |i: usize| -> (i64, i64) {
            match i {
                0 => (x(1) + plus(x(2) - xb(2)), xb(1) + plus(xb(2) - x(2))),
                i if i == n => (2 * xb(n) + x0, 2 * x(n) + x0),
                i => (
                    xb(i) + plus(x(i + 1) - xb(i + 1)),
                    x(i) + plus(xb(i + 1) - x(i + 1)),
                ),
            }
        };
        for i in 0..=n {
            if c.epsilon_phi(i, &b) != printed(i) {
                return fail(format!(
                    "node {i} at {}: iterated {:?}, printed {:?}",
                    b.display(Family::B1),
                    c.epsilon_phi(i, &b),
                    printed(i)
                ));
            }
            checked += 1;
        }
    }
    pass(format!("{checked} (element, node) pairs of B3 B^(2)"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for f in Family::ALL {
        let n = smallest(f);
        for l in 1..=2 {
            let c = PerfectCrystal::new(build_datum(f, n).unwrap(), l);
            for b in c.enumerate() {
                let col = materialize(&c, &b);
                for i in 0..=n {
                    let up = column_ftilde(&c, i, &col).unwrap();
                    let want = c.ftilde(i, &b).map(|v| materialize(&c, &v));
                    let down = column_etilde(&c, i, &col).unwrap();
                    let want_down = c.etilde(i, &b).unwrap().map(|v| materialize(&c, &v));
                    if up != want || down != want_down {
                        return fail(format!("{f} l={l} node {i} at {}", b.display(f)));
                    }
                    checked += 1;
                }
            }
        }
    }
    pass(format!("{checked} column/vector pairs, both operators"))
}

const TWO_LAMBDA_ZERO: [(Family, usize, &str); 4] = [
    (Family::B1, 3, "2,0,0,0"),
    (Family::A2even, 1, "2,0"),
    (Family::Dtwist, 2, "2,0,0"),
    (Family::C1, 2, "2,0,0"),
];

fn walls(f: Family, n: usize, lam: &str) -> WallCrystal {
    let d = build_datum(f, n).unwrap();
    let lam: ClassicalWeight = lam.parse().unwrap();
    let l = d.level(&lam);
    WallCrystal::new(PerfectCrystal::new(d, l), &lam).unwrap()
}

fn two_lambda_zero_graphs() -> Vec<(String, CrystalGraph, CrystalGraph)> {
    TWO_LAMBDA_ZERO
        .iter()
        .map(|&(f, n, lam)| {
            let w = walls(f, n, lam);
            let g = generate(&w, 8, 1_000_000).unwrap();
            let p = generate(&PathCrystal::new(w, 10), 8, 1_000_000).unwrap();
            (format!("{f} rank {n}"), g, p)
        })
        .collect()
}

fn criterion_4(graphs: &[(String, CrystalGraph, CrystalGraph)], took: Duration) -> Outcome {
    let mut bad = Vec::new();
    for (name, g, p) in graphs {
        if let Err(why) = compare_graphs(g, p) {
            bad.push(format!("{name}: {why}"));
        }
    }
    if took > Duration::from_secs(60) {
        bad.push(format!("took {took:?}"));
    }
    if bad.is_empty() {
        let sizes: Vec<String> = graphs
            .iter()
            .map(|(n, g, _)| format!("{n}: {}", g.vertices.len()))
            .collect();
        pass(format!("depth 8 [{}] in {took:.2?}", sizes.join(", ")))
    } else {
        fail(bad.join("; "))
    }
}

fn criterion_5() -> (Outcome, Vec<CrystalGraph>) {
    let mut bad = Vec::new();
    let mut good = Vec::new();
    let mut graphs = Vec::new();
    for f in Figure::ALL {
        let c = check_figure(f).unwrap();
        if c.passed() && c.complete() {
            good.push(f.name());
        } else {
            let mut why = c.problems.clone();
            if !c.complete() {
                why.push(format!(
                    "figure draws {:?} walls per depth, generation gives {:?}",
                    c.fixture_counts, c.generated_counts
                ));
            }
            bad.push(format!("{}: {}", f.name(), why.join(", ")));
        }
        graphs.push(c.generated);
    }
    let out = if bad.is_empty() {
        pass(format!("all five figures: {}", good.join("; ")))
    } else {
        fail(format!(
            "matched {}; differs: {}",
            good.join("; "),
            bad.join("; ")
        ))
    };
    (out, graphs)
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for f in Family::ALL {
        let n = smallest(f);
        let d = build_datum(f, n).unwrap();
        for l in 1..=3 {
            let c = PerfectCrystal::new(d.clone(), l);
            let all = c.enumerate();
            for lam in d.dominant_weights_of_level(l) {
                let g = ground_state(&c, &lam).unwrap();
                if c.phi(g.at(0)) != lam {
                    return fail(format!("{f} {lam}: phi(g0) = {}", c.phi(g.at(0))));
                }
                for k in 0..2 * g.period {
                    let next = c.epsilon(g.at(k));
                    if c.phi(g.at(k + 1)) != next {
                        return fail(format!("{f} {lam}: eps(g{k}) is not phi(g{})", k + 1));
                    }
                    // the column is the only element with that phi
                    let hits = all.iter().filter(|b| c.phi(b) == c.phi(g.at(k))).count();
                    if hits != 1 {
                        return fail(format!("{f} {lam}: {hits} elements share phi(g{k})"));
                    }
                }
                let expect_period = if c.epsilon(g.at(0)) == lam { 1 } else { 2 };
                if g.period != expect_period {
                    return fail(format!(
                        "{f} {lam}: period {} but expected {expect_period}",
                        g.period
                    ));
                }
                count += 1;
            }
        }
    }
    pass(format!("{count} dominant weights"))
}

fn criterion_7(pairs: &[(String, CrystalGraph, CrystalGraph)], figures: &[CrystalGraph]) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    let mut check = |name: String, g: &CrystalGraph| {
        let r = verify_axioms(g);
        total += 1;
        if !r.passed() {
            bad.push(format!("{name}: {}", r.failures[0]));
        }
    };
    for (name, g, p) in pairs {
        check(format!("wall {name}"), g);
        check(format!("path {name}"), p);
    }
    for (f, g) in Figure::ALL.iter().zip(figures) {
        check(format!("figure {}", f.name()), g);
    }
    for f in Family::ALL {
        let c = LimitCrystal::new(build_datum(f, smallest(f)).unwrap());
        let g = generate(&c, 4, 1_000_000).unwrap();
        check(format!("B(inf) {f}"), &g);
    }
    if bad.is_empty() {
        pass(format!("{total} graphs"))
    } else {
        fail(bad.join("; "))
    }
}

fn random_limit_vector(c: &LimitCrystal, rng: &mut ChaCha8Rng) -> CrystalVector {
    let f = c.family();
    loop {
        let slots = CrystalVector::slots(f, c.rank());
        let t: Vec<i64> = slots
            .iter()
            .map(|s| {
                if *s == Slot::X0 {
                    rng.gen_range(0..=1)
                } else {
                    rng.gen_range(-3..=3)
                }
            })
            .collect();
        let b = CrystalVector::from_tuple(f, c.rank(), &t).unwrap();
        if c.is_member(&b) {
            return b;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for f in Family::ALL {
        let n = smallest(f);
        let limit = LimitCrystal::new(build_datum(f, n).unwrap());
        let big = PerfectCrystal::new(limit.datum.clone(), 8);
        // slack families keep their coordinates; the others gain 4 slices in
        // each of x_1, xbar_1 to reach level 8
        let lift = if f.has_slack() { 0 } else { 4 };
        let offset = |i: usize| match (f.has_slack(), i) {
            (true, 0) => 8,
            (false, 0 | 1) => 4,
            _ => 0,
        };
        let mut done = 0;
        let mut tries = 0;
        while done < 500 {
            tries += 1;
            if tries > 1_000_000 {
                return fail(format!("{f}: could not draw 500 cases"));
            }
            let b = random_limit_vector(&limit, &mut rng);
            let mut lifted = b.clone();
            lifted.x[0] += lift;
            lifted.xbar[0] += lift;
            if !big.is_member(&lifted) {
                continue;
            }
            done += 1;
            for i in 0..=n {
                let (e, p) = limit.epsilon_phi(i, &b);
                let want = (e + offset(i), p + offset(i));
                if big.epsilon_phi(i, &lifted) != want {
                    return fail(format!("{f} node {i} at {}", b.display(f)));
                }
            }
        }
    }
    let d3 = LimitCrystal::new(build_datum(Family::Dtwist, 2).unwrap());
    let g = generate(&d3, 5, 1_000_000).unwrap();
    let children = g.children();
    for (k, v) in g.vertices.iter().enumerate() {
        if v.expanded && children[k].len() != 3 {
            return fail(format!("F is not total at B(inf) vertex {k}"));
        }
    }
    pass(format!(
        "500 shifted cases per family; F total on {} vertices to depth 5",
        g.vertices.len()
    ))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_youngwall");
    for format in ["dot", "json"] {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("g{run}.{format}"));
            let status = std::process::Command::new(exe)
                .args([
                    "gen", "--cartan", "B1", "--rank", "3", "--level", "2", "--weight", "2,0,0,0",
                ])
                .args(["--depth", "6", "--format", format, "--out"])
                .arg(&path)
                .status()
                .unwrap();
            if !status.success() {
                return fail(format!("gen exited with {status}"));
            }
            outputs.push(std::fs::read(&path).unwrap());
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            return fail(format!("{format} outputs differ"));
        }
    }
    pass("two gen runs give identical DOT and JSON bytes")
}

fn main() {
    let mut lines = Vec::new();
    lines.push((1, "perfectness suite", criterion_1()));
    lines.push((2, "B closed forms", criterion_2()));
    lines.push((3, "column/vector intertwining", criterion_3()));
    let start = Instant::now();
    let pairs = two_lambda_zero_graphs();
    lines.push((
        4,
        "wall and tensor-path graphs equal",
        criterion_4(&pairs, start.elapsed()),
    ));
    let (c5, figures) = criterion_5();
    lines.push((5, "figure reproduction", c5));
    lines.push((6, "ground-state recursion", criterion_6()));
    lines.push((7, "crystal axioms", criterion_7(&pairs, &figures)));
    lines.push((8, "B(inf) coherence", criterion_8()));
    lines.push((9, "determinism", criterion_9()));

    let mut failed = 0;
    for (k, name, o) in &lines {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {k} {tag}: {name}: {}", o.detail);
        failed += usize::from(!o.ok);
    }
    println!(
        "acceptance: {} of {} criteria pass",
        lines.len() - failed,
        lines.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
