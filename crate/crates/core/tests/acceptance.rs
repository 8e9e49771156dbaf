//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! hard failure.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use nnirank2_core::diagram::{build_diagram, canonical_diagram, canonicalize, column_lattice_basis};
use nnirank2_core::exact::{cross2, in_cone, minors_gcd, primitive, IntMatrix, PlanePoint};
use nnirank2_core::instancegen::{gen_bt, gen_near_t_with, gen_product_with, instance_rng, DiscreteGaussian};
use nnirank2_core::oracle::brute_force;
use nnirank2_core::reduction::{build_3xm, reduce_to_3x3, validate_equivalence};
use nnirank2_core::solver::{check_pair, CandidatePair, PairCheck};
use nnirank2_core::{solve_with, verify_factorization, SolveOptions, SolveOutcome, Verdict};

#[derive(Default)]
struct Certs {
    checked: usize,
    failed: usize,
}

struct Run {
    certs: Certs,
    hard_failures: usize,
}

impl Run {
    fn solve(&mut self, a: &IntMatrix) -> SolveOutcome {
        self.solve_opts(a, SolveOptions::default())
    }

    fn solve_opts(&mut self, a: &IntMatrix, opts: SolveOptions) -> SolveOutcome {
        let out = solve_with(a, opts).expect("solve");
        if let Some(c) = &out.certificate {
            self.certs.checked += 1;
            if !verify_factorization(a, &c.f1, &c.f2) {
                self.certs.failed += 1;
            }
        }
        out
    }

    fn report(&mut self, id: u32, name: &str, pass: bool, detail: String) {
        self.report_soft(id, name, pass, detail, false);
    }

    fn report_soft(&mut self, id: u32, name: &str, pass: bool, detail: String, soft: bool) {
        let status = match (pass, soft) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (soft, report-only)",
        };
        if !pass && !soft {
            self.hard_failures += 1;
        }
        println!("criterion {id:>2} [{status}] {name}: {detail}");
    }
}

fn m(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn beasley(run: &mut Run) {
    let a = m(&[vec![2, 0, 3], vec![1, 1, 4], vec![1, 3, 9]]);
    let start = Instant::now();
    let out = run.solve_opts(&a, SolveOptions { canon_index: 1, record_rejections: true });
    let elapsed = start.elapsed();
    let want = (BigRational::new(5.into(), 2.into()), BigRational::new(3.into(), 2.into()));
    let pass = out.verdict == Verdict::NotRank2
        && out.pairs_examined == 1
        && out.rejections.len() == 1
        && out.rejections[0].index == 2
        && out.rejections[0].coeffs == want
        && elapsed < Duration::from_millis(10);
    let detail = match out.rejections.first() {
        Some(r) => format!(
            "{} after {} pair(s), rejected at point {} with ({}, {}) in {}",
            out.verdict,
            out.pairs_examined,
            r.index + 1,
            r.coeffs.0,
            r.coeffs.1,
            secs(elapsed)
        ),
        None => format!("{} after {} pair(s)", out.verdict, out.pairs_examined),
    };
    run.report(1, "Beasley regression", pass, detail);
}

fn bt_family(run: &mut Run) {
    let start = Instant::now();
    let bad: Vec<i64> = (1..=100).filter(|&t| run.solve(&gen_bt(t).unwrap()).verdict != Verdict::NotRank2).collect();
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(30);
    run.report(2, "B_t family t=1..100", pass, format!("{} misclassified {:?}, total {}", bad.len(), bad, secs(elapsed)));
}

fn submatrix_counterexample(run: &mut Run) {
    let a = m(&[vec![0, 6, 10, 15], vec![1, 3, 5, 8], vec![5, 9, 15, 25]]);
    let full = run.solve(&a).verdict;
    let subs: Vec<Verdict> = (0..4)
        .map(|skip| {
            let keep: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
            run.solve(&a.select_columns(&keep).unwrap()).verdict
        })
        .collect();
    let pass = full == Verdict::NotRank2 && subs.iter().all(|&v| v == Verdict::Rank2);
    run.report(3, "submatrix counterexample", pass, format!("full {full}, submatrices {subs:?}"));
}

fn reduction_equivalence(run: &mut Run) {
    let cells: Vec<(usize, f64)> = [3usize, 5, 10].iter().flat_map(|&n| [3.0, 6.0, 10.0].map(|s| (n, s))).collect();
    let start = Instant::now();
    let (mut equiv_ok, mut verdict_ok) = (0, 0);
    for i in 0..200u64 {
        let (n, sigma) = cells[i as usize % cells.len()];
        let g = DiscreteGaussian::new(sigma).unwrap();
        let a = gen_product_with(n, n, &g, &mut instance_rng(4_000, i)).unwrap().a;
        let (b, _) = build_3xm(&a).unwrap();
        if validate_equivalence(&a, &b).unwrap().holds() {
            equiv_ok += 1;
        }
        let (c, _) = reduce_to_3x3(&a).unwrap();
        if run.solve(&a).verdict == run.solve(&c).verdict {
            verdict_ok += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = equiv_ok == 200 && verdict_ok == 200 && elapsed < Duration::from_secs(60);
    run.report(
        4,
        "reduction equivalence",
        pass,
        format!("equivalent {equiv_ok}/200, verdict preserved {verdict_ok}/200, {}", secs(elapsed)),
    );
}

fn worked_reduction(run: &mut Run) {
    let a = m(&[
        vec![2, 4, 6, 4, 2],
        vec![4, 7, 10, 5, 2],
        vec![5, 8, 11, 4, 1],
        vec![2, 6, 10, 10, 6],
        vec![3, 7, 11, 9, 5],
    ]);
    // a 3x3 is compared with the 5x5 through its 3x5 intermediate: A ~ B on
    // columns, then B^T ~ C^T
    let chain = |b: &IntMatrix, c: &IntMatrix| {
        validate_equivalence(&a, b).unwrap().holds() && validate_equivalence(&b.transpose(), &c.transpose()).unwrap().holds()
    };
    let (c, trace) = reduce_to_3x3(&a).unwrap();
    let ours = chain(&trace.three_by_m, &c);
    let printed_b = m(&[vec![5, 8, 11, 4, 1], vec![1, 3, 5, 5, 3], vec![1, 2, 3, 2, 1]]);
    let printed_c = m(&[vec![5, 1, 3], vec![1, 3, 2], vec![1, 1, 1]]);
    let theirs = chain(&printed_b, &printed_c);
    let same_verdict = run.solve(&a).verdict == run.solve(&c).verdict;
    let pass = ours && theirs && same_verdict;
    let detail = format!(
        "reduced C = [{}] equivalent: {ours}; printed C equivalent: {theirs}; bit-exact: {}",
        c.to_string().replace('\n', "; "),
        c == printed_c
    );
    run.report(5, "worked 5x5 reduction", pass, detail);
}

fn max_canonical_coord(a: &IntMatrix) -> BigInt {
    let cd = canonical_diagram(a, 1).unwrap();
    cd.diagram
        .points
        .iter()
        .chain(cd.diagram.cone_gens.iter())
        .flat_map(|p| [p.x.clone(), p.y.clone()])
        .max()
        .unwrap()
}

fn oracle_agreement(run: &mut Run) {
    let start = Instant::now();
    let gens = [DiscreteGaussian::new(3.0).unwrap(), DiscreteGaussian::new(6.0).unwrap()];
    let (mut agree, mut total, mut rank2, mut idx) = (0, 0, 0, 0u64);
    let cap = BigInt::from(50);
    while total < 200 {
        let a = gen_product_with(3, 3, &gens[(idx % 2) as usize], &mut instance_rng(6_000, idx)).unwrap().a;
        idx += 1;
        if max_canonical_coord(&a) > cap {
            continue;
        }
        total += 1;
        let ours = run.solve(&a).verdict == Verdict::Rank2;
        let theirs = brute_force(&canonical_diagram(&a, 1).unwrap()).unwrap().rank2;
        rank2 += usize::from(ours);
        agree += usize::from(ours == theirs);
    }
    let elapsed = start.elapsed();
    let pass = agree == 200 && elapsed < Duration::from_secs(300);
    run.report(
        6,
        "oracle agreement",
        pass,
        format!("{agree}/200 agree ({rank2} rank2, {} not), {} draws, {}", 200 - rank2, idx, secs(elapsed)),
    );
}

const REFERENCE_AVG_MAX: [(usize, f64, f64); 4] = [(3, 3.0, 24.4), (3, 25.0, 1685.8), (10, 3.0, 44.6), (10, 25.0, 3079.5)];

fn table1_trends(run: &mut Run) {
    let start = Instant::now();
    let mut rows = Vec::new();
    for (n, sigma, reference) in REFERENCE_AVG_MAX {
        let g = DiscreteGaussian::new(sigma).unwrap();
        let (mut sum_max, mut r2) = (0.0, 0);
        for i in 0..100 {
            let a = gen_product_with(n, n, &g, &mut instance_rng(8_000 + n as u64 * 100 + sigma as u64, i)).unwrap().a;
            sum_max += a.max_entry().to_f64().unwrap();
            r2 += usize::from(run.solve(&a).verdict == Verdict::Rank2);
        }
        rows.push((n, sigma, reference, sum_max / 100.0, r2));
    }
    let within = rows.iter().all(|&(_, _, reference, avg, _)| avg >= reference / 3.0 && avg <= reference * 3.0);
    let decreasing = rows.chunks(2).all(|c| c[1].4 < c[0].4);
    let cells: Vec<String> =
        rows.iter().map(|(n, s, p, avg, r2)| format!("n={n} s={s}: avg max {avg:.1} (ref {p}), rank2 {r2}/100")).collect();
    run.report(
        8,
        "table1 trends",
        within && decreasing,
        format!("{}; within 3x: {within}; decreasing: {decreasing}; {}", cells.join("; "), secs(start.elapsed())),
    );
}

fn performance(run: &mut Run) {
    let g = DiscreteGaussian::new(10.0).unwrap();
    let mut times = Vec::new();
    for i in 0..10 {
        let a = gen_product_with(100, 100, &g, &mut instance_rng(9_000, i)).unwrap().a;
        let start = Instant::now();
        run.solve(&a);
        times.push(start.elapsed().as_secs_f64());
    }
    let avg = times.iter().sum::<f64>() / times.len() as f64;
    let max = times.iter().cloned().fold(0.0, f64::max);
    run.report(9, "n=100 sigma=10 performance", avg < 5.0, format!("avg {avg:.3}s, max {max:.3}s over 10"));
}

fn table2_trend(run: &mut Run) {
    let g = DiscreteGaussian::new(3.0).unwrap();
    let mut wins = 0;
    let mut parts = Vec::new();
    for i in 0..3 {
        let a = gen_product_with(300, 300, &g, &mut instance_rng(10_000, i)).unwrap().a;
        let start = Instant::now();
        let direct = run.solve(&a).verdict;
        let direct_t = start.elapsed().as_secs_f64();
        let start = Instant::now();
        let (c, _) = reduce_to_3x3(&a).unwrap();
        let reduce_t = start.elapsed().as_secs_f64();
        let start = Instant::now();
        let reduced = run.solve(&c).verdict;
        let reduced_t = start.elapsed().as_secs_f64();
        assert_eq!(direct, reduced);
        wins += usize::from(reduce_t + reduced_t < direct_t);
        parts.push(format!("direct {direct_t:.3}s vs reduce {reduce_t:.3}s + factor {reduced_t:.3}s"));
    }
    run.report_soft(10, "table2 trend at n=300", wins >= 2, format!("{wins}/3 faster via reduction; {}", parts.join("; ")), true);
}

fn random_rank2(rng: &mut impl Rng, i: u64) -> IntMatrix {
    match i % 3 {
        0 => {
            let n = rng.random_range(2..=6);
            let k = rng.random_range(2..=6);
            let sigma = [3.0, 6.0, 10.0][rng.random_range(0..3)];
            gen_product_with(n, k, &DiscreteGaussian::new(sigma).unwrap(), rng).unwrap().a
        }
        1 => gen_near_t_with(rng.random_range(3..=60), rng).unwrap(),
        _ => {
            // scaled product: forces an unsaturated column lattice
            let inst = gen_product_with(3, 4, &DiscreteGaussian::new(4.0).unwrap(), rng).unwrap();
            inst.a.scale(&BigInt::from(rng.random_range(2..=5)))
        }
    }
}

fn invariant_suites(run: &mut Run) {
    let start = Instant::now();
    let mut rng = instance_rng(11_000, 0);
    let (mut saturation, mut canon, mut prim, mut index) = (0, 0, 0, 0);
    for i in 0..1000u64 {
        let a = random_rank2(&mut rng, i);

        let basis = column_lattice_basis(&a).unwrap();
        saturation += usize::from(minors_gcd(&basis.col(0), &basis.col(1)).is_one());

        let d = build_diagram(&a).unwrap();
        let r = rng.random_range(1..=2);
        let cd = canonicalize(&d, r).unwrap();
        let t = &cd.transform;
        let unimodular = t.det().unwrap().abs().is_one() && &cd.diagram.basis * t == d.basis;
        let [g1, g2] = &d.cone_gens;
        let c = cd.second_generator();
        let membership = (0..40).all(|_| {
            let p = PlanePoint::new(rng.random_range(-60..=60), rng.random_range(-60..=60));
            in_cone(&p, g1, g2) == in_cone(&p.transform(t), &PlanePoint::new(1, 0), c)
        });
        let shape = !c.x.is_negative() && c.x < c.y && primitive(&c.to_vec()).unwrap() == c.to_vec();
        canon += usize::from(unimodular && membership && shape);

        let v1 = run.solve_opts(&a, SolveOptions { canon_index: 1, record_rejections: false }).verdict;
        let v2 = run.solve_opts(&a, SolveOptions { canon_index: 2, record_rejections: false }).verdict;
        index += usize::from(v1 == v2);

        prim += usize::from(primitivity_case(&mut rng));
    }
    let pass = [saturation, canon, prim, index].iter().all(|&c| c == 1000);
    run.report(
        11,
        "invariant suites",
        pass,
        format!(
            "saturation {saturation}/1000, canonicalization {canon}/1000, primitivity {prim}/1000, canonical index {index}/1000, {}",
            secs(start.elapsed())
        ),
    );
}

/// Points generated by a scaled pair are generated by its primitive pair.
fn primitivity_case(rng: &mut impl Rng) -> bool {
    let a = loop {
        let p = PlanePoint::new(rng.random_range(0..=6), rng.random_range(0..=6));
        if !p.is_zero() {
            break p;
        }
    };
    let b = loop {
        let p = PlanePoint::new(rng.random_range(0..=6), rng.random_range(0..=6));
        if !cross2(&a, &p).is_zero() {
            break p;
        }
    };
    let (a, b) = if cross2(&a, &b).is_positive() { (a, b) } else { (b, a) };
    let (ka, kb) = (BigInt::from(rng.random_range(1..=4)), BigInt::from(rng.random_range(1..=4)));
    let scaled = CandidatePair { a: a.scale(&ka), b: b.scale(&kb) };
    let points: Vec<PlanePoint> = (0..4)
        .map(|_| {
            let k = BigInt::from(rng.random_range(0..=5));
            let l = BigInt::from(rng.random_range(0..=5));
            // a random perturbation keeps some sets ungenerated
            let jitter = if rng.random_bool(0.3) { PlanePoint::new(rng.random_range(0..=2), 0) } else { PlanePoint::origin() };
            &(&scaled.a.scale(&k) + &scaled.b.scale(&l)) + &jitter
        })
        .collect();
    let prim = CandidatePair { a: a.primitive().unwrap(), b: b.primitive().unwrap() };
    match check_pair(&scaled, &points).unwrap() {
        PairCheck::Generated(_) => matches!(check_pair(&prim, &points).unwrap(), PairCheck::Generated(_)),
        PairCheck::Rejected { .. } => true,
    }
}

fn main() {
    let mut run = Run { certs: Certs::default(), hard_failures: 0 };
    beasley(&mut run);
    bt_family(&mut run);
    submatrix_counterexample(&mut run);
    reduction_equivalence(&mut run);
    worked_reduction(&mut run);
    oracle_agreement(&mut run);
    table1_trends(&mut run);
    performance(&mut run);
    table2_trend(&mut run);
    invariant_suites(&mut run);
    let Certs { checked, failed } = run.certs;
    run.report(7, "certificate soundness", failed == 0 && checked > 0, format!("{}/{checked} certificates verified", checked - failed));
    if run.hard_failures > 0 {
        eprintln!("{} acceptance criteria failed", run.hard_failures);
        std::process::exit(1);
    }
}
