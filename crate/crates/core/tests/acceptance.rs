//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

use std::time::{Duration, Instant};

use cvlab::convex::{conjugate, support_function, support_lift, AffineForm, ConeSpec, DcPair, PolyConvexFunction};
use cvlab::convex::body::min_over;
use cvlab::dual::inf_conv;
use cvlab::geom::Polyhedron;
use cvlab::hessian::{dc_decompose_catalog, theta0, Shape};
use cvlab::random::{random_pl, random_pl_any_domain, random_polytope, rng, small_point, small_rational, Gen};
use cvlab::scalar::{dot, frac, frac_pow, int, to_f64, Point, Scalar};
use cvlab::suite::{builtin_valuations, default_cone, sample_density, tangent_sample, tent_density};
use cvlab::valuation::{
    affine_poly_fit, cut_body_pair, decompose_homogeneous, extend_valuation, gw_evaluate, make_broken_max,
    make_dirichlet, make_top_degree, support_estimate, verify_valuation_identity, Probe,
};
use num::{Signed, Zero};
use rand::Rng;

const SEED: u64 = 20261015;
const CONJUGATION_BUDGET: Duration = Duration::from_secs(30);
const SUITE_BUDGET: Duration = Duration::from_secs(300);
/// Smooth-consistency tolerance for `N` tangents.
fn smooth_tolerance(n: usize) -> f64 {
    2.0 / n as f64
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Debug>(err: E) -> String {
    format!("{err:?}")
}

fn interval(a: Scalar, b: Scalar) -> Polyhedron {
    Polyhedron::cuboid(&[a], &[b]).unwrap()
}

fn pieces(g: &mut Gen) -> usize {
    g.gen_range(2..=5)
}

/// `f*(y) = max_j (y·x_j − f(x_j))` over the breakpoints of a full-domain `f` on the line.
fn conjugate_oracle_1d(f: &PolyConvexFunction, y: &Scalar) -> Option<Scalar> {
    let xs = f.cell_vertices();
    xs.iter().map(|x| y * &x[0] - f.eval_finite(x).unwrap()).max()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut g = rng(SEED);
    let mut count = 0;
    let mut oracle_hits = 0;
    for n in 1..=3 {
        for _ in 0..70 {
            let k = pieces(&mut g);
            let f = random_pl_any_domain(&mut g, n, k).map_err(e)?;
            let fs = conjugate(&f).map_err(e)?;
            ensure(conjugate(&fs).map_err(e)? == f, || format!("(f*)* != f for {f:?}"))?;
            if n == 1 && f.domain_is_all() {
                let slopes: Vec<Scalar> = f.pieces().iter().map(|p| p.y[0].clone()).collect();
                let (lo, hi) = (slopes.iter().min().unwrap(), slopes.iter().max().unwrap());
                let y = lo + (hi - lo) * frac(g.gen_range(0..=8), 8);
                if let Some(expected) = conjugate_oracle_1d(&f, &y) {
                    ensure(fs.eval_finite(&[y.clone()]).map_err(e)? == expected, || format!("f*({y}) wrong for {f:?}"))?;
                    oracle_hits += 1;
                }
            }
            count += 1;
        }
    }
    let took = start.elapsed();
    ensure(count >= 200, || format!("only {count} functions"))?;
    ensure(took < CONJUGATION_BUDGET, || format!("took {took:?}, budget {CONJUGATION_BUDGET:?}"))?;
    Ok(format!("{count} functions n∈{{1,2,3}} exact, {oracle_hits} pointwise oracle checks, {took:.1?} < 30s"))
}

fn criterion_2() -> Check {
    let mut g = rng(SEED + 2);
    let mut counts = [0usize; 4];
    for trial in 0..100 {
        let n = 1 + trial % 2;
        // lattice duality on a hyperplane-cut pair (non-vertical cut so conjugate domains overlap)
        let (f, h) = loop {
            let k = random_polytope(&mut g, n + 1, n + 4, 2).map_err(e)?;
            let normal = small_point(&mut g, n + 1, 3, 1);
            if normal[n].is_zero() {
                continue;
            }
            let (a, b) = cut_body_pair(&k, &normal).map_err(e)?;
            break (support_lift(&a).map_err(e)?, support_lift(&b).map_err(e)?);
        };
        let (fs, hs) = (conjugate(&f).map_err(e)?, conjugate(&h).map_err(e)?);
        let min = f.pointwise_min_checked(&h).map_err(e)?.ok_or("cut pair has non-convex min")?;
        let dual_min = fs.pointwise_min_checked(&hs).map_err(e)?.ok_or("conjugates have non-convex min")?;
        ensure(conjugate(&f.pointwise_max(&h).map_err(e)?).map_err(e)? == dual_min, || "(f∨h)* != f*∧h*".into())?;
        ensure(conjugate(&min).map_err(e)? == fs.pointwise_max(&hs).map_err(e)?, || "(f∧h)* != f*∨h*".into())?;
        counts[0] += 1;

        let (a, b, sum) = loop {
            let (k1, k2) = (pieces(&mut g), pieces(&mut g));
            let a = random_pl(&mut g, n, k1).map_err(e)?;
            let b = random_pl_any_domain(&mut g, n, k2).map_err(e)?;
            if let Ok(s) = conjugate(&a).map_err(e)?.add(&conjugate(&b).map_err(e)?) {
                break (a, b, s);
            }
        };
        ensure(conjugate(&inf_conv(&a, &b).map_err(e)?).map_err(e)? == sum, || "(f□g)* != f*+g*".into())?;
        let ic = inf_conv(&conjugate(&a).map_err(e)?, &conjugate(&b).map_err(e)?).map_err(e)?;
        ensure(conjugate(&a.add(&b).map_err(e)?).map_err(e)? == ic, || "(f+g)* != f*□g*".into())?;
        counts[1] += 1;

        let x = small_point(&mut g, n, 3, 2);
        let t = small_rational(&mut g, 3, 2);
        let lhs = conjugate(&b.epi_translate(&x, &t).map_err(e)?).map_err(e)?;
        let rhs = conjugate(&b).map_err(e)?.add_affine(&AffineForm::new(x, -t)).map_err(e)?;
        ensure(lhs == rhs, || "epi-translation rule failed".into())?;
        counts[2] += 1;

        let k = random_polytope(&mut g, n, n + 3, 2).map_err(e)?;
        let lhs = conjugate(&support_function(&k).map_err(e)?).map_err(e)?;
        ensure(lhs == PolyConvexFunction::indicator_of(&k).map_err(e)?, || "(h_K)* != I_K".into())?;
        counts[3] += 1;
    }
    ensure(counts.iter().all(|&c| c >= 100), || format!("counts {counts:?}"))?;
    Ok(format!("lattice/sum/translation/support identities exact on {counts:?} instances"))
}

fn criterion_3() -> Check {
    let mut total = 0;
    for n in 1..=2 {
        for (i, (name, z)) in builtin_valuations(n).map_err(e)?.into_iter().enumerate() {
            let rep = verify_valuation_identity(&z, 200, SEED + (10 * n + i) as u64).map_err(e)?;
            ensure(rep.violations.is_empty(), || format!("{name}: {} violations", rep.violations.len()))?;
            ensure(rep.checked >= 200, || format!("{name}: only {} checked", rep.checked))?;
            total += 1;
        }
    }
    let broken = make_broken_max(vec![vec![int(-1)], vec![int(1)]]).map_err(e)?;
    let rep = verify_valuation_identity(&broken, 50, SEED).map_err(e)?;
    ensure(!rep.violations.is_empty(), || "negative control not flagged".into())?;
    Ok(format!(
        "{total} valuations × 200 cut pairs, zero violations; negative control flagged {} times",
        rep.violations.len()
    ))
}

fn criterion_4() -> Check {
    let mut g = rng(SEED + 4);
    let vals = [builtin_valuations(1).map_err(e)?, builtin_valuations(2).map_err(e)?].concat();
    for trial in 0..100 {
        let (name, z) = &vals[trial % vals.len()];
        let k = pieces(&mut g);
        let f = random_pl(&mut g, z.n, k).map_err(e)?;
        let r = decompose_homogeneous(z, &f, None).map_err(e)?;
        ensure(r.sum() == z.evaluate(&f).map_err(e)?, || format!("{name}: components do not sum to Z(f)"))?;
        ensure(r.top_slot_zero, || format!("{name}: top slot nonzero"))?;
        // held-out node: Z(7f) = Σ 7ᵏ Z_k(f)
        let seven = int(7);
        let mut predicted = vec![Scalar::zero(); z.m];
        for (k, c) in r.components.iter().enumerate() {
            for (p, v) in predicted.iter_mut().zip(c) {
                *p += frac_pow(&seven, k as u32) * v;
            }
        }
        ensure(predicted == z.evaluate(&f.scale(&seven).map_err(e)?).map_err(e)?, || format!("{name}: held-out node"))?;
        for t in [2, 3, 5] {
            let t = int(t);
            let rt = decompose_homogeneous(z, &f.scale(&t).map_err(e)?, None).map_err(e)?;
            for (k, (a, b)) in r.components.iter().zip(&rt.components).enumerate() {
                let tk = frac_pow(&t, k as u32);
                ensure(a.iter().zip(b).all(|(x, y)| x * &tk == *y), || format!("{name}: Z_{k} not {k}-homogeneous"))?;
            }
        }
    }
    Ok("100 trials: exact sums, zero top slot, homogeneity at t∈{2,3,5}, held-out t=7".into())
}

fn criterion_5() -> Check {
    let mut g = rng(SEED + 5);
    let mut fits = 0;
    for n in 1..=2 {
        for (name, z) in builtin_valuations(n).map_err(e)? {
            for _ in 0..3 {
                let k = pieces(&mut g);
                let f = random_pl(&mut g, n, k).map_err(e)?;
                let p = affine_poly_fit(&z, &f).map_err(e)?;
                ensure(p.is_exact(), || format!("{name}: nonzero held-out residual"))?;
                let shift = AffineForm::new(small_point(&mut g, n, 2, 1), small_rational(&mut g, 2, 1));
                let q = affine_poly_fit(&z, &f.add_affine(&shift).map_err(e)?).map_err(e)?;
                ensure(q.top_part() == p.top_part(), || format!("{name}: top part not invariant"))?;
                fits += 1;
            }
        }
    }
    let abs = PolyConvexFunction::new(
        1,
        &[AffineForm::new(vec![int(1)], int(0)), AffineForm::new(vec![int(-1)], int(0))],
        None,
    )
    .map_err(e)?;
    let z = make_dirichlet(interval(int(-1), int(1)), default_cone(1).map_err(e)?).map_err(e)?;
    let p = affine_poly_fit(&z, &abs).map_err(e)?;
    for _ in 0..10 {
        let (y, c) = (small_rational(&mut g, 9, 4), small_rational(&mut g, 9, 4));
        // (1+y)² + (1−y)² over the two unit cells
        let oracle = (int(1) + &y) * (int(1) + &y) + (int(1) - &y) * (int(1) - &y);
        ensure(p.eval(&[y.clone(), c]) == vec![oracle.clone()], || format!("Dirichlet fit at y={y}"))?;
        ensure(oracle == int(2) + int(2) * &y * &y, || "oracle algebra".into())?;
    }
    Ok(format!("{fits} exact fits with invariant top part; Dirichlet(|x|+yx+c) = 2+2y²"))
}

fn criterion_6() -> Check {
    let mut g = rng(SEED + 6);
    for n in 1..=3usize {
        let l1 = PolyConvexFunction::new(
            n,
            &(0..(1u32 << n))
                .map(|m| AffineForm::new((0..n).map(|i| if m & (1 << i) != 0 { int(-1) } else { int(1) }).collect(), int(0)))
                .collect::<Vec<_>>(),
            None,
        )
        .map_err(e)?;
        let nbhd = Polyhedron::cube(n, &frac(1, 2)).map_err(e)?;
        let mass = theta0(&l1, &nbhd).map_err(e)?.mass().map_err(e)?;
        ensure(mass == int(1 << n), || format!("n={n}: mass {mass}"))?;
        let aff = PolyConvexFunction::affine(small_point(&mut g, n, 3, 2), small_rational(&mut g, 3, 2)).map_err(e)?;
        ensure(theta0(&aff, &nbhd).map_err(e)?.mass().map_err(e)?.is_zero(), || "affine mass".into())?;
    }
    let eps = frac(1, 4);
    let region = interval(int(-1) + &eps, int(1) - &eps);
    let mut worst = 0.0f64;
    for count in [8usize, 16, 32] {
        let mass = to_f64(&theta0(&tangent_sample(count).map_err(e)?, &region).map_err(e)?.mass().map_err(e)?);
        let err = (mass - (2.0 - 2.0 * to_f64(&eps))).abs();
        ensure(err <= smooth_tolerance(count), || format!("N={count}: error {err}"))?;
        worst = worst.max(err * count as f64);
    }
    Ok(format!("‖·‖₁ mass 2ⁿ exact n≤3, affine 0; smooth error ≤ {worst:.3}/N (tolerance 2/N, float)"))
}

fn bump(c: Scalar, delta: Scalar) -> DcPair {
    let (g, h) = dc_decompose_catalog(&Shape::hinge(vec![c], delta).unwrap()).unwrap();
    DcPair::new(g, h).unwrap()
}

/// `∫_{−1}^{1} φ₁′ φ₂′` for hinge bumps, integrating the piecewise-constant derivatives.
fn dirichlet_pairing_oracle(a: (&Scalar, &Scalar), b: (&Scalar, &Scalar)) -> Scalar {
    let deriv = |(c, d): (&Scalar, &Scalar), x: &Scalar| {
        if x > &(c - d) && x < c {
            Scalar::from_integer(1.into()) / d
        } else if x > c && x < &(c + d) {
            -Scalar::from_integer(1.into()) / d
        } else {
            Scalar::zero()
        }
    };
    let mut cuts = vec![int(-1), int(1)];
    for (c, d) in [a, b] {
        cuts.extend([c - d, c.clone(), c + d]);
    }
    cuts.retain(|x| x >= &int(-1) && x <= &int(1));
    cuts.sort();
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let mid = (&w[0] + &w[1]) / int(2);
            deriv(a, &mid) * deriv(b, &mid) * (&w[1] - &w[0])
        })
        .sum()
}

fn criterion_7() -> Check {
    let mut g = rng(SEED + 7);
    let dirichlet = make_dirichlet(interval(int(-1), int(1)), default_cone(1).map_err(e)?).map_err(e)?;
    let top2 = make_top_degree(sample_density(2, 0).map_err(e)?, default_cone(2).map_err(e)?).map_err(e)?;
    for trial in 0..12 {
        let z = if trial % 2 == 0 { &dirichlet } else { &top2 };
        let rb = |g: &mut Gen| {
            let c = small_point(g, z.n, 2, 4);
            let (gg, h) = dc_decompose_catalog(&Shape::hinge(c, frac(g.gen_range(1..=3), 8)).unwrap()).unwrap();
            DcPair::new(gg, h).unwrap()
        };
        let (a, b, c) = (rb(&mut g), rb(&mut g), rb(&mut g));
        let ab = gw_evaluate(z, &[a.clone(), b.clone()]).map_err(e)?;
        ensure(ab == gw_evaluate(z, &[b.clone(), a.clone()]).map_err(e)?, || "symmetry".into())?;
        let (s, t) = (small_rational(&mut g, 3, 2), small_rational(&mut g, 3, 2));
        let combo = a.scaled(&s).map_err(e)?.sum(&c.scaled(&t).map_err(e)?).map_err(e)?;
        let lhs = gw_evaluate(z, &[combo, b.clone()]).map_err(e)?;
        let cb = gw_evaluate(z, &[c.clone(), b.clone()]).map_err(e)?;
        ensure(lhs.iter().zip(ab.iter().zip(&cb)).all(|(l, (x, y))| *l == &s * x + &t * y), || "multilinearity".into())?;
        let shift = random_pl(&mut g, z.n, 3).map_err(e)?;
        let shifted = gw_evaluate(z, &[a.shifted(&shift).map_err(e)?, b.shifted(&shift).map_err(e)?]).map_err(e)?;
        ensure(shifted == ab, || "DC-decomposition dependence".into())?;
    }
    for _ in 0..10 {
        let (c1, d1) = (small_rational(&mut g, 2, 4), frac(g.gen_range(1..=4), 8));
        let (c2, d2) = (small_rational(&mut g, 2, 4), frac(g.gen_range(1..=4), 8));
        let v = gw_evaluate(&dirichlet, &[bump(c1.clone(), d1.clone()), bump(c2.clone(), d2.clone())]).map_err(e)?;
        ensure(v == vec![dirichlet_pairing_oracle((&c1, &d1), (&c2, &d2))], || "Dirichlet pairing oracle".into())?;
    }
    for den in [4, 8] {
        let p = bump(int(0), frac(1, den));
        let v = gw_evaluate(&dirichlet, &[p.clone(), p]).map_err(e)?;
        ensure(v == vec![int(2 * den)], || format!("bump pairing δ=1/{den}: {v:?}"))?;
    }
    let v = gw_evaluate(&dirichlet, &[bump(frac(-1, 2), frac(1, 8)), bump(frac(1, 2), frac(1, 8))]).map_err(e)?;
    ensure(v.iter().all(Zero::is_zero), || "disjoint supports pair nontrivially".into())?;
    Ok("symmetry, multilinearity, shift independence exact; 2/δ for δ∈{1/4,1/8}; disjoint pairing 0".into())
}

fn criterion_8() -> Check {
    let mut g = rng(SEED + 8);
    let z = make_top_degree(tent_density().map_err(e)?, default_cone(1).map_err(e)?).map_err(e)?;
    let probes: Vec<Probe> = [-2, 0, 2].iter().map(|&c| Probe::new(vec![int(c)], frac(1, 4))).collect();
    let rep = support_estimate(&z, &probes).map_err(e)?;
    ensure(rep.flagged == vec![probes[1].clone()], || format!("flagged {:?}", rep.flagged))?;

    let a = interval(frac(-3, 2), frac(3, 2));
    let big = interval(frac(-5, 2), frac(5, 2));
    let target = ConeSpec::new(big.clone(), big.clone()).map_err(e)?;
    let z4 = extend_valuation(&z, &a, target.clone(), &frac(1, 4)).map_err(e)?;
    let z2 = extend_valuation(&z, &a, target, &frac(1, 2)).map_err(e)?;
    let ib = PolyConvexFunction::indicator(&big).map_err(e)?;
    for count in [5usize, 9, 12] {
        let f = tangent_sample(count).map_err(e)?.add(&ib).map_err(e)?;
        let v = z4.evaluate(&f).map_err(e)?;
        ensure(v == z2.evaluate(&f).map_err(e)?, || format!("eps disagreement for N={count}"))?;
        // kinks of the tangent sample sit at midpoints with jump 2/(N−1); φ(x) = 1 − |x|
        let step = frac(2, count as i64 - 1);
        let oracle: Scalar = (0..count - 1)
            .map(|i| frac(2 * i as i64 + 2 - count as i64, count as i64 - 1))
            .filter(|x| x.abs() < int(1))
            .map(|x| &step * (int(1) - x.abs()))
            .sum();
        ensure(v == vec![oracle], || format!("extension value for N={count}"))?;
    }
    let mut trials = 0;
    for _ in 0..50 {
        let k = random_polytope(&mut g, 2, 5, 2).map_err(e)?;
        let f = support_lift(&k).map_err(e)?;
        let restricted = f.add(&ib).map_err(e)?;
        let v = z4.evaluate(&restricted).map_err(e)?;
        ensure(v == z.evaluate(&f).map_err(e)?, || "restriction round trip".into())?;
        let m0 = min_over(&restricted, &big).map_err(e)?;
        let slope = int(g.gen_range(1..=5));
        let off = &m0 - &slope * int(2);
        let steep = PolyConvexFunction::new(
            1,
            &[AffineForm::new(vec![slope.clone()], off.clone()), AffineForm::new(vec![-slope], off)],
            None,
        )
        .map_err(e)?;
        let h = restricted.pointwise_max(&steep).map_err(e)?;
        ensure(z4.evaluate(&h).map_err(e)? == v, || "locality".into())?;
        trials += 1;
    }
    let narrow = PolyConvexFunction::indicator(&interval(int(-1), int(1))).map_err(e)?;
    ensure(z4.evaluate(&narrow).is_err(), || "domain not containing A accepted".into())?;
    Ok(format!("probe grid flags only the centre; eps∈{{1/4,1/2}} agree with the kink oracle; {trials} round trips and locality trials exact"))
}

fn criterion_9() -> Check {
    let mut g = rng(SEED + 9);
    let mut probes = 0;
    for (n, d) in [(1usize, 1u32), (1, 2), (2, 1), (2, 2), (2, 0)] {
        let phi = sample_density(n, d).map_err(e)?;
        let z = make_top_degree(phi.clone(), default_cone(n).map_err(e)?).map_err(e)?;
        let x: Point = (0..n).map(|_| small_rational(&mut g, 3, 4)).collect();
        // ‖· − x‖₁ has a single atom at x with ∂f(x) = [−1,1]ⁿ
        let forms: Vec<AffineForm> = (0..(1u32 << n))
            .map(|m| {
                let y: Point = (0..n).map(|i| if m & (1 << i) != 0 { int(-1) } else { int(1) }).collect();
                let c = -dot(&y, &x);
                AffineForm::new(y, c)
            })
            .collect();
        let f = PolyConvexFunction::new(n, &forms, None).map_err(e)?;
        let top = affine_poly_fit(&z, &f).map_err(e)?.top_part();
        let vol = int(1 << n);
        let side = d as i64 + 1;
        for idx in 0..side.pow(n as u32 + 1) {
            let mut rest = idx;
            let mut ys: Point = Vec::new();
            for _ in 0..=n {
                ys.push(int(rest % side - 1));
                rest /= side;
            }
            let s = ys.pop().unwrap();
            let mut vars = ys.clone();
            vars.push(&s - dot(&ys, &x));
            let recovered: Scalar = top
                .iter()
                .map(|(exps, v)| vars.iter().zip(exps).map(|(a, &k)| frac_pow(a, k)).product::<Scalar>() * &v[0])
                .sum::<Scalar>()
                / &vol;
            ensure(vec![recovered] == phi.eval(&x, &ys, &s), || format!("n={n} d={d}: mismatch at x={x:?}"))?;
        }
        probes += 1;
    }
    Ok(format!("φ recovered exactly at {probes} atom locations from the degree-d fit"))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Check); 9] = [
        (1, "conjugation involution", criterion_1),
        (2, "duality identities", criterion_2),
        (3, "valuation identity", criterion_3),
        (4, "homogeneous decomposition", criterion_4),
        (5, "polynomiality", criterion_5),
        (6, "Hessian measure", criterion_6),
        (7, "Goodey-Weil pairing", criterion_7),
        (8, "support and extension", criterion_8),
        (9, "top-degree uniqueness", criterion_9),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (id, name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(msg) => println!("criterion {id} [{name}]: PASS ({msg}; {:.1?})", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {id} [{name}]: FAIL ({msg}; {:.1?})", t.elapsed());
            }
        }
    }
    let total = start.elapsed();
    if total < SUITE_BUDGET {
        println!("runtime: PASS (full suite {total:.1?} < 300s)");
    } else {
        failed += 1;
        println!("runtime: FAIL (full suite {total:.1?} ≥ 300s)");
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
