//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the terminal.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dicyclic::criteria::*;
use dicyclic::dicyclic::ConnectionSet;
use dicyclic::reps::{character_inner_product, verify_inventory, Irrep};
use dicyclic::spectra::*;
use dicyclic::sweep::*;

const RANDOM_SAMPLES: usize = 10_000;
const RANDOM_SEED: u64 = 1;
const FLOAT_TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn contexts(max_dic_order: usize) -> Vec<DicContext> {
    dicyclic_groups(max_dic_order)
        .into_iter()
        .map(|g| DicContext::new(g).unwrap())
        .collect()
}

fn exhaustive(ctxs: &[DicContext]) -> Vec<(usize, ConnectionSet)> {
    ctxs.iter()
        .enumerate()
        .flat_map(|(i, c)| symmetric_connection_sets(c.group()).into_iter().map(move |s| (i, s)))
        .collect()
}

/// Uniform group, then each symmetric block independently with probability 1/2.
fn random_instances(ctxs: &[DicContext], count: usize, seed: u64) -> Vec<(usize, ConnectionSet)> {
    let blocks: Vec<SymmetricBlocks> = ctxs.iter().map(|c| SymmetricBlocks::new(c.group())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let i = rng.gen_range(0..ctxs.len());
            let b = &blocks[i];
            let pick = |rng: &mut ChaCha8Rng, k: usize| (0..k).fold(0u64, |m, j| m | (rng.gen_bool(0.5) as u64) << j);
            let m1 = pick(&mut rng, b.s1_classes.len());
            let m2 = pick(&mut rng, b.s2_cosets.len());
            let g = ctxs[i].group();
            let (s1, s2) = b.sets(g.abelian().order(), m1, m2);
            (i, g.connection_set(s1, s2).unwrap())
        })
        .collect()
}

fn describe(ctx: &DicContext, s: &ConnectionSet) -> String {
    let a = ctx.group().abelian();
    format!(
        "{} y={} S1={} S2={}",
        a,
        a.format_element(ctx.group().y()),
        a.format_set(&s.s1),
        a.format_set(&s.s2)
    )
}

fn brute_two_rank(ctx: &DicContext) -> u32 {
    let a = ctx.group().abelian();
    let squares: HashSet<usize> = (0..a.order()).map(|g| a.add_idx(g, g)).collect();
    let quotient = a.order() / squares.len();
    quotient.trailing_zeros()
}

fn criterion_1() -> Outcome {
    let ctxs = contexts(32);
    let mut groups = 0;
    for ctx in &ctxs {
        let g = ctx.group();
        let order_a = g.abelian().order();
        let inv = ctx.inventory();
        let n = brute_two_rank(ctx);
        let label = format!("{} y={}", g.abelian(), g.abelian().format_element(g.y()));
        if inv.one_dim.len() != 1 << (n + 1) {
            return fail(format!("{label}: {} one-dim, expected {}", inv.one_dim.len(), 1 << (n + 1)));
        }
        if inv.two_dim.len() != (order_a - (1 << n)) / 2 {
            return fail(format!("{label}: {} two-dim", inv.two_dim.len()));
        }
        if inv.sum_of_squared_dims() != 2 * order_a {
            return fail(format!("{label}: sum of squared dims {}", inv.sum_of_squared_dims()));
        }
        if let Err(e) = verify_inventory(g, inv) {
            return fail(format!("{label}: {e}"));
        }
        let chars: Vec<_> = inv.irreps().iter().map(|r| r.character(g)).collect();
        for (i, ci) in chars.iter().enumerate() {
            for (j, cj) in chars.iter().enumerate() {
                let ip = character_inner_product(g, ci, cj).unwrap();
                let expected = BigInt::from((i == j) as i32);
                if ip != expected.into() {
                    return fail(format!("{label}: <chi_{i}, chi_{j}> = {ip}"));
                }
            }
        }
        groups += 1;
    }
    ok(format!("{groups} groups (A, y) with |A| <= 16"))
}

fn integrality_triple(ctx: &DicContext, s: &ConnectionSet) -> (bool, bool, bool) {
    let g = ctx.group();
    let crit = integrality_criterion(ctx, s).unwrap().holds;
    let babai = babai_oracle(g, s, ctx.inventory()).unwrap();
    let adj = cayley_graph(g, s).unwrap().adjacency_matrix();
    let exact = integer_spectrum(&adj).unwrap().is_integral;
    (crit, babai, exact)
}

fn distance_triple(ctx: &DicContext, s: &ConnectionSet) -> (bool, bool, bool) {
    let g = ctx.group();
    let crit = distance_integrality_criterion(ctx, s).unwrap().holds;
    let hl = hl_oracle(g, s, ctx.inventory()).unwrap();
    let dist = distance_matrix(&cayley_graph(g, s).unwrap()).unwrap();
    let exact = integer_spectrum(&dist).unwrap().is_integral;
    (crit, hl, exact)
}

fn agreement_run(
    limit: Duration,
    filter: impl Fn(&ConnectionSet) -> bool,
    triple: impl Fn(&DicContext, &ConnectionSet) -> (bool, bool, bool),
) -> Outcome {
    let start = Instant::now();
    let small = contexts(16);
    let large = contexts(32);
    let mut checked = [0usize; 2];
    let mut holds = 0usize;
    for (k, (ctxs, insts)) in [
        (&small, exhaustive(&small)),
        (&large, random_instances(&large, RANDOM_SAMPLES, RANDOM_SEED)),
    ]
    .into_iter()
    .enumerate()
    {
        for (i, s) in insts.iter().filter(|(_, s)| filter(s)) {
            let (c, o, e) = triple(&ctxs[*i], s);
            if c != o || c != e {
                return fail(format!(
                    "{}: criterion={c} oracle={o} spectrum={e}",
                    describe(&ctxs[*i], s)
                ));
            }
            checked[k] += 1;
            holds += c as usize;
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} exhaustive + {} random instances, {holds} hold, 0 disagreements",
        checked[0], checked[1]
    );
    if elapsed > limit {
        return fail(format!("{detail} exceeds {}s", limit.as_secs()));
    }
    ok(detail)
}

fn criterion_2() -> Outcome {
    agreement_run(Duration::from_secs(300), |_| true, integrality_triple)
}

fn criterion_3() -> Outcome {
    agreement_run(Duration::from_secs(600), |s| s.generating(), distance_triple)
}

fn nonempty_subsets(diam: u32) -> impl Iterator<Item = Vec<u32>> {
    (1u32..1 << diam).map(move |m| (1..=diam).filter(|d| m >> (d - 1) & 1 == 1).collect())
}

fn criterion_4() -> Outcome {
    let ctxs = contexts(16);
    let mut instances = 0;
    let mut powers = 0;
    for (i, s) in exhaustive(&ctxs) {
        let ctx = &ctxs[i];
        let g = ctx.group();
        let a = g.abelian();
        if !s.generating() || !a.in_boolean_algebra(&s.s1) || !a.in_boolean_algebra(&s.s2) {
            continue;
        }
        instances += 1;
        let graph = cayley_graph(g, &s).unwrap();
        let diam = diameter(&graph).unwrap();
        for depths in nonempty_subsets(diam) {
            let here = || format!("{} D={depths:?}", describe(ctx, &s));
            let (s1d, s2d, verdict) = distance_power_sets(ctx, &s, &depths).unwrap();
            if !verdict.holds || verdict.oracle_agreement != Some(true) {
                return fail(format!("{}: verdict {:?}", here(), verdict.conditions));
            }
            let shell = distance_power(&graph, &depths).unwrap();
            let sd = g.connection_set(s1d.clone(), s2d.clone()).unwrap();
            let built = cayley_graph(g, &sd).unwrap();
            if built.adjacency_matrix() != shell.adjacency_matrix() {
                return fail(format!("{}: constructive set differs from BFS shells", here()));
            }
            if !a.in_boolean_algebra(&s1d) || !a.in_boolean_algebra(&s2d) {
                return fail(format!("{}: S^D outside B(A)", here()));
            }
            if a.negate_set(&s2d) != s2d {
                return fail(format!("{}: S2^D not inverse-closed", here()));
            }
            if !integer_spectrum(&shell.adjacency_matrix()).unwrap().is_integral {
                return fail(format!("{}: distance power not integral", here()));
            }
            if depths.contains(&1) && !shell.is_connected() {
                return fail(format!("{}: disconnected with 1 in D", here()));
            }
            powers += 1;
        }
    }
    ok(format!("{instances} instances, {powers} distance powers, 0 violations"))
}

fn criterion_5() -> Outcome {
    let ctxs = contexts(16);
    let mut instances = 0;
    let mut characters = 0;
    for (i, s) in exhaustive(&ctxs) {
        if !s.generating() {
            continue;
        }
        let ctx = &ctxs[i];
        let g = ctx.group();
        let on_xa = g.word_lengths(&s).unwrap().on_xa();
        for pi in ctx.characters() {
            if pi.sign_at(g.y()) != Some(-1) {
                continue;
            }
            characters += 1;
            if !pi.weighted_sum(&on_xa, ctx.conductor()).is_zero() {
                return fail(format!("{}: pi={:?} gives a nonzero sum", describe(ctx, &s), pi.index()));
            }
        }
        if !proposition_conditions(ctx, &s).unwrap().holds {
            return fail(format!("{}: proposition check reports a violation", describe(ctx, &s)));
        }
        instances += 1;
    }
    ok(format!("{instances} generating instances, {characters} character evaluations, 0 violations"))
}

fn criterion_6() -> Outcome {
    let ctxs = contexts(16);
    let mut instances = 0;
    let mut integral = 0;
    for (i, s) in exhaustive(&ctxs) {
        let ctx = &ctxs[i];
        let a = ctx.group().abelian();
        if !s.generating() || a.negate_set(&s.s2) != s.s2 {
            continue;
        }
        let adj = check_integrality(ctx, &s).unwrap();
        let dist = check_distance_integrality(ctx, &s).unwrap();
        if adj.oracle_agreement != Some(true) || dist.oracle_agreement != Some(true) {
            return fail(format!("{}: oracle disagreement", describe(ctx, &s)));
        }
        if adj.holds != dist.holds {
            return fail(format!(
                "{}: integral={} distance integral={}",
                describe(ctx, &s),
                adj.holds,
                dist.holds
            ));
        }
        if !equivalence_theorem_check(ctx, &s).unwrap().holds {
            return fail(format!("{}: equivalence check reports a violation", describe(ctx, &s)));
        }
        instances += 1;
        integral += adj.holds as usize;
    }
    ok(format!("{instances} instances with S2 = -S2, {integral} integral, 0 violations"))
}

fn criterion_7() -> Outcome {
    let q8 = DicContext::parse("Z4", "2").unwrap();

    let s = q8.connection_set("[]", "[0,1,2,3]").unwrap();
    if !check_integrality(&q8, &s).unwrap().holds {
        return fail("Q8, S = xA: not integral");
    }
    let spec = adjacency_spectrum(&q8, &s).unwrap();
    if spec.flat_eigenvalues() != [4, 0, 0, 0, 0, 0, 0, -4] {
        return fail(format!("Q8, S = xA: spectrum {:?}", spec.eigenvalues));
    }

    let z8 = DicContext::parse("Z8", "4").unwrap();
    let s = z8.connection_set("[]", "[0,1,4,5]").unwrap();
    let v = check_integrality(&z8, &s).unwrap();
    let w = v.witnesses.first();
    if v.holds || adjacency_spectrum(&z8, &s).unwrap().is_integral {
        return fail("Z8, S = x{0,1,4,5}: reported integral");
    }
    if w.and_then(|w| w.value.as_deref()) != Some("8") || w.and_then(|w| w.character.clone()) != Some(vec![2]) {
        return fail(format!("Z8, S = x{{0,1,4,5}}: witness {w:?}"));
    }

    let s = q8.connection_set("[1,3]", "[0,2]").unwrap();
    if !check_integrality(&q8, &s).unwrap().holds || !check_distance_integrality(&q8, &s).unwrap().holds {
        return fail("Q8, S1={1,3}, S2={0,2}: not integral and distance integral");
    }
    let lengths = q8.group().word_lengths(&s).unwrap();
    let rep = q8
        .inventory()
        .irreps()
        .into_iter()
        .find(|r| matches!(r, Irrep::TwoDim(t) if t.pi.index() == [1]))
        .expect("two-dim rep at the order-4 character");
    let phi = phi_matrix(q8.group(), &lengths, &rep);
    let int = |z: &dicyclic::cyclotomic::CyclotomicInt| z.as_rational_integer();
    let trace = int(&phi.trace());
    let det = phi
        .get(0, 0)
        .try_mul(phi.get(1, 1))
        .and_then(|d| d.try_sub(&phi.get(0, 1).try_mul(phi.get(1, 0))?))
        .ok()
        .and_then(|d| int(&d));
    // eigenvalues {-2, -2}  <=>  trace -4 and determinant 4
    if trace != Some(BigInt::from(-4)) || det != Some(BigInt::from(4)) {
        return fail(format!("Q8 Phi at zeta_4: trace {trace:?}, det {det:?}"));
    }
    ok("Q8 xA spectrum {4, 0^6, -4}; Z8 witness |pi(S2)|^2 = 8; Q8 Phi eigenvalues {-2, -2}")
}

fn float_eigenvalues(m: &IntMatrix) -> Vec<f64> {
    let n = m.dim();
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j) as f64);
    let mut ev: Vec<f64> = dm.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

fn float_agrees(m: &IntMatrix) -> Result<(), String> {
    let exact = integer_spectrum(m).unwrap();
    let ev = float_eigenvalues(m);
    let near = ev.iter().all(|x| (x - x.round()).abs() < FLOAT_TOL);
    if near != exact.is_integral {
        return Err(format!("exact integral={} but float near-integer={near}", exact.is_integral));
    }
    if exact.is_integral {
        let exact_ev = exact.flat_eigenvalues();
        if ev.iter().zip(&exact_ev).any(|(x, &e)| (x - e as f64).abs() >= FLOAT_TOL) {
            return Err(format!("eigenvalues {exact_ev:?} vs {ev:?}"));
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let ctxs = contexts(32);
    let insts = random_instances(&ctxs, RANDOM_SAMPLES, RANDOM_SEED + 1);
    let mut matrices = 0;
    for (i, s) in &insts {
        let g = ctxs[*i].group();
        let graph = cayley_graph(g, s).unwrap();
        let adj = graph.adjacency_matrix();
        if let Err(e) = float_agrees(&adj) {
            return fail(format!("{} adjacency: {e}", describe(&ctxs[*i], s)));
        }
        matrices += 1;
        if graph.is_connected() {
            if let Err(e) = float_agrees(&distance_matrix(&graph).unwrap()) {
                return fail(format!("{} distance: {e}", describe(&ctxs[*i], s)));
            }
            matrices += 1;
        }
    }
    ok(format!("{} instances, {matrices} matrices, tolerance {FLOAT_TOL:e}", insts.len()))
}

fn criterion_9() -> Outcome {
    let config = SweepConfig {
        max_dic_order: 32,
        mode: SweepMode::Random,
        sample_count: 1000,
        seed: 2024,
        jobs: 1,
        ..SweepConfig::default()
    };
    let first = run_sweep(&config).unwrap();
    let second = run_sweep(&config).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    first.write(&p1).unwrap();
    second.write(&p2).unwrap();
    let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    if b1 != b2 {
        return fail("JSONL differs between identical runs");
    }
    if b1 != first.to_jsonl().into_bytes() {
        return fail("written JSONL differs from the in-memory rendering");
    }
    ok(format!("{} records, {} bytes, identical", first.records.len(), b1.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("representation inventory", criterion_1),
        ("integrality criterion vs oracles", criterion_2),
        ("distance integrality criterion vs oracles", criterion_3),
        ("distance powers", criterion_4),
        ("redundant third condition", criterion_5),
        ("integral iff distance integral", criterion_6),
        ("worked examples", criterion_7),
        ("floating-point cross-check", criterion_8),
        ("deterministic campaign output", criterion_9),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| fail("panicked"));
        let secs = start.elapsed().as_secs_f64();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {}. {name}: {} ({secs:.1}s)", k + 1, outcome.detail);
        failures += !outcome.pass as usize;
    }
    println!("acceptance: {} of 9 passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
