//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (visible with `--nocapture`); a failing criterion fails its
//! test. Everything is exact — no tolerances anywhere.
//!
//! Run with `cargo test --test acceptance`.

use std::collections::HashSet;
use std::process::Command;

use num_bigint::BigInt;
use selflink::forested::{contraction_identity_check, forested_form, Evaluator};
use selflink::graph::{CompleteGraph, Contraction, Edge, EdgeVector};
use selflink::json;
use selflink::link::{
    curves_intersect, identity_matrix, linking_number, schedule_rotation, self_linking_weight,
    LinkingMatrix, Point3, Polyline,
};
use selflink::ring::{Ring, RingElement};
use selflink::rng::Rng64;
use selflink::trees::{enumerate_trees, tree_fiber, SpanningTree};
use selflink::wall::{
    apply_event, generate_random_scenario, run_scenario, total_weight, trace_is_constant,
    ClassLabel, Configuration, ScenarioParams, Sign, WallEvent, WallScenario,
};

fn edge(a: usize, b: usize) -> Edge {
    Edge::new(a, b).unwrap()
}

/// Tree validity check independent of the library's union-find: breadth
/// first search over an adjacency list built from the edge set.
fn independently_valid_tree(n: usize, edges: &[Edge]) -> bool {
    if edges.len() != n.saturating_sub(1) {
        return false;
    }
    let distinct: HashSet<Edge> = edges.iter().copied().collect();
    if distinct.len() != edges.len() {
        return false;
    }
    let mut adjacency = vec![Vec::new(); n];
    for e in edges {
        if e.hi() >= n {
            return false;
        }
        adjacency[e.lo()].push(e.hi());
        adjacency[e.hi()].push(e.lo());
    }
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    // n vertices, n-1 distinct edges, connected: a tree.
    reached == n
}

#[test]
fn criterion_1_cayley_counts() {
    let expected: [(usize, u64); 7] = [
        (2, 1),
        (3, 3),
        (4, 16),
        (5, 125),
        (6, 1296),
        (7, 16807),
        (8, 262144),
    ];
    for (n, count) in expected {
        let mut emitted = 0u64;
        let mut distinct: HashSet<Vec<Edge>> = HashSet::new();
        for tree in enumerate_trees(n).unwrap() {
            assert!(
                independently_valid_tree(n, tree.edges()),
                "invalid tree emitted for n={n}"
            );
            assert!(distinct.insert(tree.edges().to_vec()), "duplicate tree for n={n}");
            emitted += 1;
        }
        assert_eq!(emitted, count, "tree count for n={n}");
    }
    println!("acceptance 1 (cayley counts 2..=8, distinct, independent validity): PASS");
}

#[test]
fn criterion_2_tree_fibers_partition() {
    for n_plus_1 in 2..=7usize {
        let n = n_plus_1 - 1;
        let source = CompleteGraph::new(n_plus_1).unwrap();
        let all_up: Vec<SpanningTree> = enumerate_trees(n_plus_1).unwrap().collect();
        for e0 in source.edges() {
            let c = Contraction::new(n_plus_1, e0).unwrap();
            let through: HashSet<&SpanningTree> =
                all_up.iter().filter(|t| t.contains(e0)).collect();
            let expected_total: u64 = if n_plus_1 == 2 {
                1
            } else {
                2 * (n_plus_1 as u64).pow((n_plus_1 - 3) as u32)
            };
            assert_eq!(through.len() as u64, expected_total);

            let mut covered: HashSet<SpanningTree> = HashSet::new();
            let mut total = 0u64;
            for t in enumerate_trees(n).unwrap() {
                let fiber = tree_fiber(&c, &t).unwrap();
                assert_eq!(
                    fiber.len(),
                    1 << t.valence(c.special_vertex()),
                    "fiber size n+1={n_plus_1} e0={e0}"
                );
                total += fiber.len() as u64;
                for lifted in fiber {
                    assert!(through.contains(&lifted), "fiber element outside T^e");
                    assert!(covered.insert(lifted), "fibers overlap");
                }
            }
            assert_eq!(total, expected_total, "fiber sizes n+1={n_plus_1} e0={e0}");
            assert_eq!(covered.len() as u64, expected_total, "fibers do not cover T^e");
        }
    }
    println!("acceptance 2 (tree fibers partition, sizes 2^valence): PASS");
}

fn ring_kinds() -> Vec<Ring> {
    vec![
        Ring::integers(),
        Ring::modular_u64(7).unwrap(),
        Ring::polynomials(vec!["x", "y"]).unwrap(),
    ]
}

#[test]
fn criterion_3_contraction_identity() {
    // (a) Fully symbolic cases with one variable per edge, every edge.
    for n_plus_1 in [3usize, 4] {
        let g = CompleteGraph::new(n_plus_1).unwrap();
        let names: Vec<String> = g.edges().map(|e| format!("x{}{}", e.lo(), e.hi())).collect();
        let ring = Ring::polynomials(names).unwrap();
        let a = EdgeVector::from_fn(g, ring.clone(), |e| {
            ring.var(&format!("x{}{}", e.lo(), e.hi())).unwrap()
        })
        .unwrap();
        for e0 in g.edges() {
            let check = contraction_identity_check(&a, e0, Evaluator::TreeSum).unwrap();
            assert!(check.holds, "symbolic identity n+1={n_plus_1} e0={e0}");
        }
    }
    // (b) Randomized vectors, >= 1000 (a, e0) pairs per ring kind.
    let per_size: [(usize, usize); 5] = [(2, 350), (3, 300), (4, 200), (5, 100), (6, 60)];
    for ring in ring_kinds() {
        let mut rng = Rng64::new(0xACCE55);
        let mut pairs = 0;
        for (n_plus_1, samples) in per_size {
            let g = CompleteGraph::new(n_plus_1).unwrap();
            let all_edges: Vec<Edge> = g.edges().collect();
            for _ in 0..samples {
                let a = EdgeVector::from_fn(g, ring.clone(), |_| {
                    ring.random_element(&mut rng, 9)
                })
                .unwrap();
                let e0 = all_edges[rng.below(all_edges.len() as u64) as usize];
                let check = contraction_identity_check(&a, e0, Evaluator::TreeSum).unwrap();
                assert!(
                    check.holds,
                    "identity failed: ring {} n+1={n_plus_1} e0={e0}",
                    ring.spec()
                );
                pairs += 1;
            }
        }
        assert!(pairs >= 1000, "only {pairs} pairs for {}", ring.spec());
    }
    println!("acceptance 3 (contraction identity, symbolic + 1000 random pairs/ring): PASS");
}

#[test]
fn criterion_4_evaluator_equivalence() {
    let per_size: [(usize, usize); 6] =
        [(2, 150), (3, 150), (4, 100), (5, 60), (6, 30), (7, 12)];
    for ring in ring_kinds() {
        let mut rng = Rng64::new(0xD37);
        let mut samples_run = 0;
        for (n, samples) in per_size {
            let g = CompleteGraph::new(n).unwrap();
            for _ in 0..samples {
                let a = EdgeVector::from_fn(g, ring.clone(), |_| {
                    ring.random_element(&mut rng, 9)
                })
                .unwrap();
                let tree_sum = forested_form(&a, Evaluator::TreeSum).unwrap();
                let determinant = forested_form(&a, Evaluator::Determinant).unwrap();
                assert_eq!(tree_sum, determinant, "ring {} n={n}", ring.spec());
                samples_run += 1;
            }
        }
        assert!(samples_run >= 500, "only {samples_run} vectors for {}", ring.spec());
    }
    // Unit weights count spanning trees over the integers.
    let z = Ring::integers();
    for n in 2..=7usize {
        let g = CompleteGraph::new(n).unwrap();
        let ones = EdgeVector::from_fn(g, z.clone(), |_| z.one()).unwrap();
        let expected = z.from_bigint(&BigInt::from(n).pow((n - 2) as u32));
        assert_eq!(forested_form(&ones, Evaluator::TreeSum).unwrap(), expected);
        assert_eq!(forested_form(&ones, Evaluator::Determinant).unwrap(), expected);
    }
    println!("acceptance 4 (evaluator equivalence, 500+ vectors/ring, unit weights): PASS");
}

fn random_closed_curve(rng: &mut Rng64, shift: i64) -> Polyline {
    loop {
        let k = 4 + rng.below(4) as usize;
        let pts: Vec<[i64; 3]> = (0..k)
            .map(|_| {
                [
                    rng.range_i64(-6, 6) + shift,
                    rng.range_i64(-6, 6),
                    rng.range_i64(-6, 6),
                ]
            })
            .collect();
        if let Ok(curve) = Polyline::from_integer_points(&pts) {
            return curve;
        }
    }
}

fn horizontal_square() -> Polyline {
    Polyline::from_integer_points(&[[1, 1, 0], [-1, 1, 0], [-1, -1, 0], [1, -1, 0]]).unwrap()
}

fn threading_rectangle() -> Polyline {
    Polyline::from_integer_points(&[[0, 0, -1], [0, 0, 1], [3, 0, 1], [3, 0, -1]]).unwrap()
}

#[test]
fn criterion_5_linking_axioms() {
    // Symmetry on random disjoint pairs.
    let mut rng = Rng64::new(0x11a);
    let mut checked = 0;
    let mut nontrivial = 0;
    while checked < 200 {
        let c1 = random_closed_curve(&mut rng, 0);
        let c2 = random_closed_curve(&mut rng, 2);
        if curves_intersect(&c1, &c2) {
            continue;
        }
        match (linking_number(&c1, &c2), linking_number(&c2, &c1)) {
            (Ok(ab), Ok(ba)) => {
                assert_eq!(ab, ba, "symmetry failed");
                if ab != 0 {
                    nontrivial += 1;
                }
                checked += 1;
            }
            // A degenerate pair is reported, never approximated; draw again.
            _ => continue,
        }
    }
    assert!(nontrivial > 10, "random data produced too few linked pairs");

    // Split configurations have zero linking, and a link with one split
    // component has zero self-linking weight.
    let octagon = Polyline::from_integer_points(&[
        [10, 0, 0],
        [7, 7, 0],
        [0, 10, 0],
        [-7, 7, 0],
        [-10, 0, 0],
        [-7, -7, 0],
        [0, -10, 0],
        [7, -7, 0],
    ])
    .unwrap();
    let far = octagon
        .transform(&identity_matrix(), &Point3::from_integers(100, 0, 0))
        .unwrap();
    assert_eq!(linking_number(&octagon, &far).unwrap(), 0);
    let split_link = selflink::link::PolylineLink::new(vec![
        octagon
            .transform(&identity_matrix(), &Point3::from_integers(0, 300, 0))
            .unwrap(),
        horizontal_square(),
        threading_rectangle(),
    ])
    .unwrap();
    let split_matrix =
        selflink::link::linking_matrix(&split_link, &Ring::integers()).unwrap();
    assert_eq!(self_linking_weight(&split_matrix).unwrap(), Ring::integers().zero());

    // Normalization: the canonical positive configuration links exactly +1.
    let over = threading_rectangle();
    let under = horizontal_square();
    assert_eq!(linking_number(&over, &under).unwrap(), 1);
    assert_eq!(linking_number(&under, &over).unwrap(), 1);

    // Doubling one component doubles the count.
    assert_eq!(linking_number(&over.doubled(), &under).unwrap(), 2);

    // Restricted homotopy invariance: rigid motions, subdivision, and a
    // change of projection direction drawn from the fixed rotation set.
    let base = linking_number(&over, &under).unwrap();
    for k in 1..=4usize {
        let m = schedule_rotation(k);
        let t = Point3::from_integers(-3, 9, 4);
        let r1 = over.transform(&m, &t).unwrap();
        let r2 = under.transform(&m, &t).unwrap();
        assert_eq!(linking_number(&r1, &r2).unwrap(), base);
        let p1 = over.transform(&m, &selflink::link::origin()).unwrap();
        let p2 = under.transform(&m, &selflink::link::origin()).unwrap();
        assert_eq!(linking_number(&p1, &p2).unwrap(), base);
    }
    assert_eq!(linking_number(&over.subdivided(), &under).unwrap(), base);
    assert_eq!(linking_number(&over, &under.subdivided()).unwrap(), base);

    println!("acceptance 5 (linking axioms: symmetry, split, +1, doubling, invariance): PASS");
}

/// Weight oracle with no edge-vector machinery: enumerate all (n-1)-subsets
/// of the index pairs, keep those forming a spanning tree (checked by BFS),
/// and sum the products of matrix entries.
fn subset_weight_oracle(ring: &Ring, m: &LinkingMatrix) -> RingElement {
    let n = m.n();
    if n == 1 {
        return ring.one();
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut total = ring.zero();
    let k = pairs.len();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let chosen: Vec<Edge> = (0..k)
            .filter(|bit| mask & (1 << bit) != 0)
            .map(|bit| edge(pairs[bit].0, pairs[bit].1))
            .collect();
        if !independently_valid_tree(n, &chosen) {
            continue;
        }
        let mut product = ring.one();
        for e in &chosen {
            product = ring.mul(&product, m.entry(e.lo(), e.hi()).unwrap()).unwrap();
        }
        total = ring.add(&total, &product).unwrap();
    }
    total
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in out {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

fn random_matrix(ring: &Ring, rng: &mut Rng64, n: usize, magnitude: u64) -> LinkingMatrix {
    let mut m = LinkingMatrix::zero(ring.clone(), n).unwrap();
    for i in 0..n {
        for j in i + 1..n {
            m = m.with_entry(i, j, ring.random_element(rng, magnitude)).unwrap();
        }
    }
    m
}

#[test]
fn criterion_6_self_linking_weight() {
    let mut rng = Rng64::new(0x6EA);
    for ring in ring_kinds() {
        // Full permutation invariance for n <= 5.
        for n in 1..=5usize {
            let m = random_matrix(&ring, &mut rng, n, 7);
            let w = self_linking_weight(&m).unwrap();
            for sigma in all_permutations(n) {
                let permuted = m.permuted(&sigma).unwrap();
                assert_eq!(self_linking_weight(&permuted).unwrap(), w);
            }
        }
        // Zero row kills the weight, every row position, n <= 7.
        for n in 2..=7usize {
            for zero_row in 0..n {
                let mut m = LinkingMatrix::zero(ring.clone(), n).unwrap();
                for i in 0..n {
                    for j in i + 1..n {
                        if i != zero_row && j != zero_row {
                            m = m.with_entry(i, j, ring.random_element(&mut rng, 9)).unwrap();
                        }
                    }
                }
                assert_eq!(self_linking_weight(&m).unwrap(), ring.zero());
            }
        }
        // Independent subset-enumeration oracle for n <= 5.
        for n in 1..=5usize {
            for _ in 0..8 {
                let m = random_matrix(&ring, &mut rng, n, 7);
                assert_eq!(
                    self_linking_weight(&m).unwrap(),
                    subset_weight_oracle(&ring, &m),
                    "oracle mismatch ring {} n={n}",
                    ring.spec()
                );
            }
        }
    }
    println!("acceptance 6 (self-linking weight: permutations, zero rows, oracle): PASS");
}

fn hand_built_two_component_scenario(ring: &Ring) -> WallScenario {
    let matrix = LinkingMatrix::zero(ring.clone(), 2).unwrap();
    let classes = vec![ClassLabel::atom("d0").unwrap(), ClassLabel::atom("d1").unwrap()];
    let target = Configuration::new("c0".into(), classes, matrix, Sign::Plus).unwrap();
    let post = target.matrix.with_entry(0, 1, ring.one()).unwrap();
    let fused_matrix = post.merge_rows(0, 1).unwrap();
    let fused_classes = vec![target.classes[0].merge(&target.classes[1])];
    let fused =
        Configuration::new("f0".into(), fused_classes, fused_matrix, Sign::Minus).unwrap();
    WallScenario {
        ring: ring.clone(),
        initial: vec![target],
        events: vec![WallEvent {
            time: num_rational::BigRational::new(BigInt::from(1), BigInt::from(2)),
            target: "c0".into(),
            pair: (0, 1),
            delta: Sign::Plus,
            fused,
        }],
    }
}

fn symbolic_three_component_scenario() -> WallScenario {
    let ring = Ring::polynomials(vec!["a", "b", "c"]).unwrap();
    let mut matrix = LinkingMatrix::zero(ring.clone(), 3).unwrap();
    for (pair, name) in [((0, 1), "a"), ((0, 2), "b"), ((1, 2), "c")] {
        matrix = matrix.with_entry(pair.0, pair.1, ring.var(name).unwrap()).unwrap();
    }
    let classes = vec![
        ClassLabel::atom("d0").unwrap(),
        ClassLabel::atom("d1").unwrap(),
        ClassLabel::atom("d2").unwrap(),
    ];
    let target = Configuration::new("c0".into(), classes, matrix, Sign::Plus).unwrap();
    let post = target
        .matrix
        .with_entry(0, 1, ring.add(target.matrix.entry(0, 1).unwrap(), &ring.one()).unwrap())
        .unwrap();
    let fused_matrix = post.merge_rows(0, 1).unwrap();
    let fused_classes = vec![
        target.classes[0].merge(&target.classes[1]),
        target.classes[2].clone(),
    ];
    let fused =
        Configuration::new("f0".into(), fused_classes, fused_matrix, Sign::Minus).unwrap();
    WallScenario {
        ring,
        initial: vec![target],
        events: vec![WallEvent {
            time: num_rational::BigRational::new(BigInt::from(1), BigInt::from(3)),
            target: "c0".into(),
            pair: (0, 1),
            delta: Sign::Plus,
            fused,
        }],
    }
}

#[test]
fn criterion_7_wall_crossing_invariance() {
    // (a) Hand-built smallest wall and the symbolic three-component wall.
    for ring in [Ring::integers(), Ring::modular_u64(2).unwrap()] {
        let scenario = hand_built_two_component_scenario(&ring);
        let trace = run_scenario(&scenario).unwrap();
        assert_eq!(trace.len(), 2);
        assert!(trace_is_constant(&trace), "two-component wall, ring {}", ring.spec());
    }
    let symbolic = symbolic_three_component_scenario();
    let trace = run_scenario(&symbolic).unwrap();
    assert!(trace_is_constant(&trace), "symbolic three-component wall");

    // (b) 500 seeded random scenarios per ring kind.
    let rings = [
        Ring::integers(),
        Ring::modular_u64(2).unwrap(),
        Ring::modular_u64(7).unwrap(),
        Ring::polynomials(vec!["x", "y"]).unwrap(),
    ];
    for ring in rings {
        for seed in 0..500u64 {
            let params = ScenarioParams {
                initial_configs: 1 + (seed % 3) as usize,
                max_components: 6,
                events: 4 + (seed % 29) as usize,
                magnitude: 4,
            };
            let scenario = generate_random_scenario(seed, &ring, &params).unwrap();
            assert!(scenario.events.len() <= 32);
            assert!(scenario.initial.iter().all(|c| c.component_count() <= 6));
            let trace = run_scenario(&scenario).unwrap();
            assert!(
                trace_is_constant(&trace),
                "non-constant trace: ring {} seed {seed}",
                ring.spec()
            );
        }
    }
    println!("acceptance 7 (wall-crossing invariance, 500 scenarios x 4 rings): PASS");
}

struct CliRun {
    stdout: String,
    code: i32,
}

fn run_cli(args: &[&str]) -> CliRun {
    let output = Command::new(env!("CARGO_BIN_EXE_selflink"))
        .args(args)
        .output()
        .expect("binary runs");
    CliRun {
        stdout: String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        code: output.status.code().expect("exit code"),
    }
}

fn payload_of(run: &CliRun) -> serde_json::Value {
    let doc: serde_json::Value = serde_json::from_str(&run.stdout).expect("valid JSON output");
    doc["payload"].clone()
}

#[test]
fn criterion_8_cli_determinism_and_round_trip() {
    let dir = std::env::temp_dir().join(format!("selflink-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // Byte-identical reruns.
    for args in [
        vec!["trees", "count", "--n", "4"],
        vec!["trees", "list", "--n", "4", "--through", "0,2"],
        vec!["ring", "constants", "--ring", "poly:x,y"],
        vec!["wallcross", "gen", "--seed", "9", "--ring", "mod:7", "--events", "6"],
    ] {
        let first = run_cli(&args);
        let second = run_cli(&args);
        assert_eq!(first.code, 0, "command failed: {args:?}\n{}", first.stdout);
        assert_eq!(first.stdout, second.stdout, "non-deterministic output for {args:?}");
    }

    // Worked example: the all-ones vector on four vertices evaluates to 16.
    let vector_doc = r#"{"n": 4, "ring": {"kind": "integers"}, "coefficients": [
        {"edge": [0,1], "value": "1"}, {"edge": [0,2], "value": "1"},
        {"edge": [0,3], "value": "1"}, {"edge": [1,2], "value": "1"},
        {"edge": [1,3], "value": "1"}, {"edge": [2,3], "value": "1"}]}"#;
    let vector_path = dir.join("ones.json");
    std::fs::write(&vector_path, vector_doc).unwrap();
    let eval = run_cli(&["forested", "eval", "--input", vector_path.to_str().unwrap()]);
    assert_eq!(eval.code, 0);
    assert_eq!(payload_of(&eval)["value"], "16");

    // Emitted matrix documents are accepted back bit-exactly. The link is a
    // three-ring chain: the rectangle threads the first square upward at
    // x = 0 and the second square downward at x = 3; the squares are split
    // from each other, and orientations make both linking numbers +1.
    let link_doc = r#"{"components": [
        [[1,1,0], [-1,1,0], [-1,-1,0], [1,-1,0]],
        [[0,0,-1], [0,0,1], [3,0,1], [3,0,-1]],
        [[4,1,0], [4,-1,0], [2,-1,0], [2,1,0]]]}"#;
    let link_path = dir.join("chain.json");
    std::fs::write(&link_path, link_doc).unwrap();
    let matrix_run = run_cli(&["lk", "matrix", "--link", link_path.to_str().unwrap()]);
    assert_eq!(matrix_run.code, 0);
    let matrix_payload = payload_of(&matrix_run);
    assert_eq!(
        matrix_payload["entries"],
        serde_json::json!([["0", "1", "0"], ["1", "0", "1"], ["0", "1", "0"]]),
        "chain of three rings must link pairwise (1, 1, 0)"
    );
    let matrix_text = serde_json::to_string(&matrix_payload).unwrap();
    let matrix_path = dir.join("matrix.json");
    std::fs::write(&matrix_path, &matrix_text).unwrap();
    let reread = json::read_matrix(&matrix_text).unwrap();
    assert_eq!(
        json::to_canonical_string(&json::matrix_to_doc(&reread)).unwrap(),
        matrix_text,
        "matrix document round trip is not bit-exact"
    );
    let weight_run = run_cli(&["lk", "weight", "--matrix", matrix_path.to_str().unwrap()]);
    assert_eq!(weight_run.code, 0);
    assert_eq!(payload_of(&weight_run)["value"], "1");

    // Emitted scenario documents are accepted back by the runner.
    let gen = run_cli(&["wallcross", "gen", "--seed", "4", "--ring", "poly:x,y", "--events", "5"]);
    assert_eq!(gen.code, 0);
    let scenario_text = serde_json::to_string(&payload_of(&gen)).unwrap();
    let scenario_path = dir.join("scenario.json");
    std::fs::write(&scenario_path, &scenario_text).unwrap();
    let reread = json::read_scenario(&scenario_text).unwrap();
    assert_eq!(
        json::to_canonical_string(&json::scenario_to_doc(&reread)).unwrap(),
        scenario_text,
        "scenario document round trip is not bit-exact"
    );
    let run = run_cli(&["wallcross", "run", "--scenario", scenario_path.to_str().unwrap()]);
    assert_eq!(run.code, 0);
    assert_eq!(payload_of(&run)["constant"], true);

    // Documented exit codes, one failing fixture each.
    // 2: usage error.
    let usage = run_cli(&["no-such-command"]);
    assert_eq!(usage.code, 2);
    assert_eq!(payload_of(&usage)["code"], "usage");
    // 3: malformed input document.
    let broken_path = dir.join("broken.json");
    std::fs::write(&broken_path, "{ not json").unwrap();
    let invalid = run_cli(&["forested", "eval", "--input", broken_path.to_str().unwrap()]);
    assert_eq!(invalid.code, 3);
    assert_eq!(payload_of(&invalid)["code"], "invalid_input");
    // 4: violated mathematical precondition.
    let bounds = run_cli(&["trees", "count", "--n", "12"]);
    assert_eq!(bounds.code, 4);
    assert_eq!(payload_of(&bounds)["code"], "out_of_bounds");
    // 5: internal invariant breach — a trace that fails to stay constant
    // because the fused configuration carries the wrong sign.
    let ring = Ring::integers();
    let mut scenario = hand_built_two_component_scenario(&ring);
    scenario.events[0].fused.sign = scenario.events[0].fused.sign.flipped();
    let mut population = scenario.initial.clone();
    apply_event(&ring, &mut population, &scenario.events[0]).unwrap();
    assert_ne!(
        total_weight(&ring, &scenario.initial).unwrap(),
        total_weight(&ring, &population).unwrap(),
        "fixture should actually break invariance"
    );
    let bad_text = json::to_canonical_string(&json::scenario_to_doc(&scenario)).unwrap();
    let bad_path = dir.join("bad-scenario.json");
    std::fs::write(&bad_path, &bad_text).unwrap();
    let breach = run_cli(&["wallcross", "run", "--scenario", bad_path.to_str().unwrap()]);
    assert_eq!(breach.code, 5);
    assert_eq!(payload_of(&breach)["code"], "invariant_breach");

    std::fs::remove_dir_all(&dir).ok();
    println!("acceptance 8 (CLI determinism, round trips, exit codes): PASS");
}
