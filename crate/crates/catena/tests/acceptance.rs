//! End-to-end acceptance suite. Each test covers one numbered criterion and
//! prints a PASS line with the measured quantities; run with
//! `cargo test -p catena --test acceptance -- --nocapture` to see them.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use catena::{
    catenary_parameter, oracle_minimize, solve_general, solve_symmetric, to_polyline, ChainSpec,
    KktSystem, MultiplierPair, OracleOptions, PhiFunction, SpanConstraint, ValidatedChainSpec,
};

const TWO_LINK_Y: f64 = 0.661_437_827_766_147_6; // sqrt(1 - (1.5/2)^2)
const ROOT3_HALF: f64 = 0.866_025_403_784_438_6;

fn random_spec(
    rng: &mut ChaCha8Rng,
    n_lo: usize,
    n_hi: usize,
    symmetric: bool,
) -> ValidatedChainSpec {
    let n = rng.gen_range(n_lo..=n_hi);
    let mut masses: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
    let mut lengths: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
    if symmetric {
        for i in 0..n / 2 {
            masses[n - 1 - i] = masses[i];
            lengths[n - 1 - i] = lengths[i];
        }
    }
    let max_l = lengths.iter().cloned().fold(f64::MIN, f64::max);
    let total: f64 = lengths.iter().sum();
    let span = max_l + rng.gen::<f64>() * (total - max_l);
    ChainSpec::new(masses, lengths, span).validate().unwrap()
}

#[test]
fn criterion_01_two_link_analytic() {
    let start = Instant::now();
    let spec = ChainSpec::uniform(2, 1.0, 1.0, 1.5).validate().unwrap();

    let sym = solve_symmetric(&spec, 1e-12).unwrap();
    let gen = solve_general(&spec, 1e-12).unwrap();
    let ora = oracle_minimize(&spec, &OracleOptions::default()).unwrap();

    let err_sym = (sym.y[0] + TWO_LINK_Y).abs();
    let err_gen = (gen.y[0] + TWO_LINK_Y).abs();
    let err_ora = (ora.y[0] + TWO_LINK_Y).abs();
    assert!(err_sym <= 1e-8, "symmetric solver off by {err_sym:e}");
    assert!(err_gen <= 1e-8, "general solver off by {err_gen:e}");
    assert!(err_ora <= 1e-5, "oracle off by {err_ora:e}");
    assert!((sym.y[1] - TWO_LINK_Y).abs() <= 1e-8);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "acceptance 01 PASS: two-link y1 errors sym {err_sym:.2e} / gen {err_gen:.2e} / oracle {err_ora:.2e} in {elapsed:?}"
    );
}

#[test]
fn criterion_02_three_link_analytic() {
    let start = Instant::now();
    let spec = ChainSpec::uniform(3, 1.0, 1.0, 2.0).validate().unwrap();

    let sym = solve_symmetric(&spec, 1e-12).unwrap();
    let gen = solve_general(&spec, 1e-12).unwrap();
    let target = [-ROOT3_HALF, 0.0, ROOT3_HALF];
    let mut worst = 0.0f64;
    for (i, t) in target.iter().enumerate() {
        worst = worst.max((sym.y[i] - t).abs());
        worst = worst.max((gen.y[i] - t).abs());
    }
    assert!(worst <= 1e-8, "worst deviation {worst:e}");
    assert_eq!(sym.y[1], 0.0, "middle link must be exactly horizontal");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("acceptance 02 PASS: three-link worst error {worst:.2e}, middle exactly 0, in {elapsed:?}");
}

#[test]
fn criterion_03_kkt_residual_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_stat = 0.0f64;
    let mut worst_height = 0.0f64;
    let mut worst_span = 0.0f64;
    for _ in 0..200 {
        let spec = random_spec(&mut rng, 2, 50, true);
        let sol = solve_symmetric(&spec, 1e-12).unwrap();
        worst_stat = worst_stat.max(sol.residuals.stationarity);
        worst_height = worst_height.max(sol.residuals.height_gap.abs());
        worst_span = worst_span.max(sol.residuals.span_gap.abs());
    }
    assert!(worst_stat <= 1e-8, "stationarity {worst_stat:e}");
    assert!(worst_height <= 1e-10, "height closure {worst_height:e}");
    assert!(worst_span <= 1e-10, "span closure {worst_span:e}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "acceptance 03 PASS: 200 symmetric chains, residuals stat {worst_stat:.2e} / height {worst_height:.2e} / span {worst_span:.2e} in {elapsed:?}"
    );
}

#[test]
fn criterion_04_cross_solver_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_obj = 0.0f64;
    let mut worst_y = 0.0f64;
    let mut worst_excess = f64::MIN;
    for trial in 0..50 {
        let spec = random_spec(&mut rng, 2, 20, false);
        let gen = solve_general(&spec, 1e-12).unwrap();
        // A loose span lets the oracle sit slightly inside the true optimum,
        // so the excess comparison needs the tight setting.
        let opts = OracleOptions { seed: trial, tol: 1e-10, ..Default::default() };
        let ora = oracle_minimize(&spec, &opts).unwrap();
        worst_obj = worst_obj.max((gen.objective - ora.objective).abs());
        for i in 0..spec.n() {
            worst_y = worst_y.max((gen.y[i] - ora.y[i]).abs());
        }
        worst_excess = worst_excess.max(gen.objective - ora.objective);
    }
    assert!(worst_obj <= 1e-5, "objective gap {worst_obj:e}");
    assert!(worst_y <= 1e-4, "shape gap {worst_y:e}");
    assert!(worst_excess <= 1e-8, "general solver above oracle by {worst_excess:e}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "acceptance 04 PASS: 50 asymmetric chains, objective gap {worst_obj:.2e}, shape gap {worst_y:.2e}, max excess {worst_excess:.2e} in {elapsed:?}"
    );
}

#[test]
fn criterion_05_phi_monotone_convex() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut max_iters = 0usize;
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 2, 30, true);
        let phi = PhiFunction::new(&spec);
        let (lo, hi) = phi.initial_bracket().unwrap();
        let ratio = (hi / lo).ln();
        let grid: Vec<f64> = (0..50)
            .map(|k| lo * (ratio * k as f64 / 49.0).exp())
            .collect();
        let values: Vec<f64> = grid.iter().map(|&m| phi.eval(m).unwrap()).collect();
        for w in values.windows(2) {
            assert!(w[0] > w[1], "phi not strictly decreasing on the grid");
        }
        for i in 0..grid.len() {
            for j in (i + 1)..grid.len() {
                let mid = phi.eval(0.5 * (grid[i] + grid[j])).unwrap();
                let chord = 0.5 * (values[i] + values[j]);
                assert!(
                    mid <= chord + 1e-12 * (1.0 + chord.abs()),
                    "phi not midpoint-convex"
                );
            }
        }
        let root = phi.find_root(1e-12).unwrap();
        max_iters = max_iters.max(root.iterations);
    }
    assert!(max_iters <= 30, "root finding needed {max_iters} iterations");

    let elapsed = start.elapsed();
    println!(
        "acceptance 05 PASS: phi monotone and convex on 100 chains, root iterations <= {max_iters} in {elapsed:?}"
    );
}

#[test]
fn criterion_06_mirrored_coefficients_cancel() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_rel = 0.0f64;
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 2, 50, true);
        let co = spec.coefficients();
        let n = co.c.len();
        for i in 0..n {
            let pair = (co.c[i] - co.c_bar) + (co.c[n - 1 - i] - co.c_bar);
            worst_rel = worst_rel.max(pair.abs() / co.total_mass);
        }
    }
    assert!(worst_rel <= 1e-12, "mirrored coefficient sum {worst_rel:e} of total mass");

    let elapsed = start.elapsed();
    println!("acceptance 06 PASS: mirrored offsets cancel to {worst_rel:.2e} of total mass in {elapsed:?}");
}

#[test]
fn criterion_07_relaxed_span_is_tight() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_above = f64::MIN;
    let mut worst_abs = 0.0f64;
    for trial in 0..20 {
        let spec = random_spec(&mut rng, 2, 10, false);
        let opts = OracleOptions {
            seed: 100 + trial,
            span_constraint: SpanConstraint::SlackInequality,
            ..Default::default()
        };
        let sol = oracle_minimize(&spec, &opts).unwrap();
        let slack = sol.x.iter().sum::<f64>() - spec.span();
        worst_above = worst_above.max(slack);
        worst_abs = worst_abs.max(slack.abs());
    }
    assert!(worst_abs <= 1e-6, "span mismatch {worst_abs:e}");
    assert!(worst_above <= 1e-6, "span left slack {worst_above:e}");

    let elapsed = start.elapsed();
    println!(
        "acceptance 07 PASS: slack-form span tight to {worst_abs:.2e} (never above by {worst_above:.2e}) in {elapsed:?}"
    );
}

#[test]
fn criterion_08_catenary_limit() {
    let start = Instant::now();
    let (span, arc) = (2.0, 4.0);
    let a = catenary_parameter(span, arc).unwrap();
    let mut deviations = Vec::new();
    for n in [8usize, 16, 32, 64, 128] {
        let link = arc / n as f64;
        let spec = ChainSpec::uniform(n, link, link, span).validate().unwrap();
        let sol = solve_symmetric(&spec, 1e-12).unwrap();
        let poly = to_polyline(&sol, &spec);
        let dev = poly
            .vertices
            .iter()
            .map(|v| (v.y - catena::catenary_height(a, span, v.x)).abs())
            .fold(0.0f64, f64::max);
        deviations.push(dev);
    }
    for w in deviations.windows(2) {
        assert!(w[1] < w[0], "deviation not monotonically decreasing: {deviations:?}");
    }
    let last = *deviations.last().unwrap();
    assert!(last <= 0.01, "n=128 deviation {last:e}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("acceptance 08 PASS: catenary deviations {deviations:?} in {elapsed:?}");
}

#[test]
fn criterion_09_derivative_checks() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let h = 1e-5;

    let mut worst_phi = 0.0f64;
    for _ in 0..20 {
        let spec = random_spec(&mut rng, 2, 30, true);
        let phi = PhiFunction::new(&spec);
        let scale = phi.deltas().iter().fold(0.0f64, |a, d| a.max(d.abs())) + 1.0;
        let mu = rng.gen_range(0.3..3.0) * scale;
        let fd = (phi.eval(mu + h).unwrap() - phi.eval(mu - h).unwrap()) / (2.0 * h);
        worst_phi = worst_phi.max((phi.derivative(mu).unwrap() - fd).abs());
    }
    assert!(worst_phi <= 1e-6, "phi derivative gap {worst_phi:e}");

    let mut worst_jac = 0.0f64;
    for _ in 0..20 {
        let spec = random_spec(&mut rng, 2, 12, false);
        let sys = KktSystem::new(&spec);
        let c = sys.coefficients();
        let (c_first, c_last) = (c[0], c[c.len() - 1]);
        let lambda = -c_first + rng.gen_range(0.2..0.8) * (c_first - c_last);
        let scale = (c_first - 0.5 * (c_first + c_last)).max(1.0);
        let p = MultiplierPair { lambda, mu: rng.gen_range(0.3..3.0) * scale };
        let jac = sys.jacobian(&p).unwrap();
        let fd = |dl: f64, dm: f64| {
            let plus = sys
                .residual(&MultiplierPair { lambda: p.lambda + dl * h, mu: p.mu + dm * h })
                .unwrap();
            let minus = sys
                .residual(&MultiplierPair { lambda: p.lambda - dl * h, mu: p.mu - dm * h })
                .unwrap();
            ((plus.0 - minus.0) / (2.0 * h), (plus.1 - minus.1) / (2.0 * h))
        };
        let (j00, j10) = fd(1.0, 0.0);
        let (j01, j11) = fd(0.0, 1.0);
        for (analytic, numeric) in [
            (jac[0][0], j00),
            (jac[0][1], j01),
            (jac[1][0], j10),
            (jac[1][1], j11),
        ] {
            worst_jac = worst_jac.max((analytic - numeric).abs());
        }
    }
    assert!(worst_jac <= 1e-6, "jacobian gap {worst_jac:e}");

    let elapsed = start.elapsed();
    println!(
        "acceptance 09 PASS: derivative gaps phi {worst_phi:.2e}, jacobian {worst_jac:.2e} in {elapsed:?}"
    );
}
