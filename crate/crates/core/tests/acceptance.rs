//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p equiquad --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use equiquad::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn over(den: i64, nums: &[i64]) -> Vec<Rational> {
    nums.iter().map(|p| ratio(*p, den)).collect()
}

fn q(text: &str) -> Rational {
    text.parse().expect("valid rational literal")
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(label: &str, got: &T, want: &T) -> Result<(), String> {
    ensure(got == want, || {
        format!("{label}: got {got:?}, want {want:?}")
    })
}

fn within_time(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("{label} took {elapsed:?}, limit {limit:?}")
    })
}

/// Offsets `p/q` with `q <= 6` in `[-3, 3]`.
fn random_offset(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=6i64);
    let num = rng.gen_range(-3 * den..=3 * den);
    ratio(num, den)
}

fn random_spec(rng: &mut ChaCha8Rng, same_depth: bool) -> RuleSpec {
    loop {
        let alpha = random_offset(rng);
        // Draw beta = alpha a quarter of the time so both branches of the
        // symmetry checks get exercised.
        let beta = if rng.gen_bool(0.25) {
            alpha.clone()
        } else {
            random_offset(rng)
        };
        let m_left = rng.gen_range(0..=5usize);
        let m_right = if same_depth {
            m_left
        } else {
            rng.gen_range(0..=5usize)
        };
        let n = rng.gen_range(0..=12usize);
        if let Ok(spec) = RuleSpec::new(alpha, beta, m_left, m_right, n) {
            return spec;
        }
    }
}

fn corrections_of(alpha: &str, m: usize) -> Vec<Rational> {
    correction_set(&q(alpha), m).c
}

// 1. Coefficient tables, exact.
fn coefficient_tables() -> Check {
    let start = Instant::now();
    let table: Vec<(&str, usize, Vec<Rational>)> = vec![
        ("0", 1, over(12, &[-7, 1])),
        ("0", 2, over(24, &[-15, 4, -1])),
        ("1", 0, over(2, &[1])),
        ("1", 1, over(12, &[11, -5])),
        ("1", 2, over(24, &[31, -28, 9])),
        ("1", 3, over(720, &[1181, -1593, 1023, -251])),
        ("1", 4, over(1440, &[2837, -5086, 4896, -2402, 475])),
        ("-1", 2, over(24, &[-25, -12, 1])),
        ("1/2", 2, over(24, &[2, -3, 1])),
        ("1/2", 3, over(5760, &[703, -1389, 909, -223])),
        ("1/2", 4, over(5760, &[909, -2213, 2145, -1047, 206])),
        ("-1/2", 1, over(24, &[-23, -1])),
    ];
    for (alpha, m, want) in &table {
        expect_eq(
            &format!("c(alpha={alpha}, m={m})"),
            &corrections_of(alpha, *m),
            want,
        )?;
    }

    // Weights with unit weights left over, symmetric midpoint family.
    let midpoint_rows = [
        (2, over(24, &[26, 21, 25])),
        (3, over(5760, &[6463, 4371, 6669, 5537])),
        (4, over(5760, &[6669, 3547, 7905, 4713, 5966])),
    ];
    for (m, want) in &midpoint_rows {
        let w = build_weights(&RuleSpec::symmetric(q("1/2"), *m, 20).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        expect_eq(
            &format!("midpoint weights m={m}"),
            &w.weights[..want.len()].to_vec(),
            want,
        )?;
        ensure(w.weights[want.len()] == 1, || {
            format!("midpoint m={m}: unit weight expected after the corrections")
        })?;
    }

    // Semi-open alpha = 1/2, beta = 0.
    let semi_open = [
        (2, over(24, &[26, 21, 25]), over(24, &[23, 28, 9])),
        (
            3,
            over(5760, &[6463, 4371, 6669, 5537]),
            vec![q("739/720"), q("211/240"), q("299/240"), q("251/720")],
        ),
    ];
    for (m, left, right) in &semi_open {
        let spec = RuleSpec::new(q("1/2"), q("0"), *m, *m, 20).map_err(|e| e.to_string())?;
        let w = build_weights(&spec).map_err(|e| e.to_string())?;
        expect_eq(
            &format!("semi-open left m={m}"),
            &w.weights[..left.len()].to_vec(),
            left,
        )?;
        expect_eq(
            &format!("semi-open right m={m}"),
            &w.weights[w.len() - right.len()..].to_vec(),
            right,
        )?;
    }
    let elapsed = start.elapsed();
    within_time("table reproduction", elapsed, Duration::from_millis(250))?;
    Ok(format!(
        "{} correction rows and 5 weight rows exact in {elapsed:?}",
        table.len()
    ))
}

fn oracle_match(label: &str, w: &WeightVector) -> Result<(), String> {
    let indices: Vec<i64> = w.indices().collect();
    let oracle = vandermonde_oracle(&indices, &w.spec.alpha, &w.spec.beta, w.spec.n as i64)
        .map_err(|e| e.to_string())?;
    expect_eq(
        &format!("{label} vs Vandermonde oracle"),
        &w.weights,
        &oracle,
    )
}

// 2. Classical rules, exact, each cross-checked against the oracle.
fn classical_rules() -> Check {
    let err = |e: Error| e.to_string();
    let mut count = 0;
    let closed = [
        (2, over(2, &[1, 1])),
        (3, over(3, &[1, 4, 1])),
        (4, over(8, &[3, 9, 9, 3])),
        (5, over(45, &[14, 64, 24, 64, 14])),
    ];
    for (points, want) in &closed {
        let w = newton_cotes_closed(*points).map_err(err)?;
        expect_eq(
            &format!("closed N-C {points} points (m = n)"),
            &w.weights,
            want,
        )?;
        oracle_match(&format!("closed N-C {points}"), &w)?;
        count += 1;
    }
    // Even m applied to m + 2 unit weights.
    for m in [0usize, 2, 4] {
        let w = gregory_rule(m, m + 1).map_err(err)?;
        let reference = newton_cotes_closed(m + 2).map_err(err)?;
        expect_eq(
            &format!("closed N-C {} points via m={m}, n={}", m + 2, m + 1),
            &w.weights,
            &reference.weights,
        )?;
        oracle_match(&format!("gregory m={m} n={}", m + 1), &w)?;
        count += 1;
    }

    let open = [
        (1, over(1, &[2])),
        (2, over(2, &[3, 3])),
        (3, over(3, &[8, -4, 8])),
        (4, over(24, &[55, 5, 5, 55])),
        (5, over(10, &[33, -42, 78, -42, 33])),
    ];
    for (points, want) in &open {
        let w = newton_cotes_open(*points).map_err(err)?;
        expect_eq(&format!("open N-C {points} points"), &w.weights, want)?;
        oracle_match(&format!("open N-C {points}"), &w)?;
        count += 1;
    }
    for m in [0usize, 2] {
        let spec = RuleSpec::symmetric(Rational::one(), m, m + 1).map_err(err)?;
        let w = build_weights(&spec).map_err(err)?;
        expect_eq(
            &format!("open N-C {} points via m={m}", m + 2),
            &w.weights,
            &open[m + 1].1,
        )?;
        count += 1;
    }

    let extended = over(24, &[-1, 13, 13, -1]);
    let via_outside = discretized_corrected_trapezoid(3).map_err(err)?;
    expect_eq(
        "2-point open extended via alpha=-1, n=3",
        &via_outside.weights,
        &extended,
    )?;
    oracle_match("alpha=-1 m=2 n=3", &via_outside)?;
    let via_overshoot = gregory_rule(2, 1).map_err(err)?;
    expect_eq(
        "2-point open extended via alpha=0, n=1",
        &via_overshoot.weights,
        &extended,
    )?;
    expect_eq("overshoot index range", &via_overshoot.indices(), &(-1..=2))?;
    oracle_match("alpha=0 m=2 n=1", &via_overshoot)?;
    count += 2;

    let ab3 = adams_bashforth(3, Direction::Backward).map_err(err)?;
    expect_eq("backward AB3", &ab3.weights, &over(12, &[23, -16, 5]))?;
    oracle_match("backward AB3", &ab3)?;
    count += 1;
    Ok(format!(
        "{count} rules exact and equal to the Vandermonde oracle"
    ))
}

// 3a. Monomial identity for k <= m, exact and in floating point.
fn monomial_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let trials = 400;
    let mut worst_rel: f64 = 0.0;
    for trial in 0..trials {
        let spec = random_spec(&mut rng, trial % 2 == 0);
        let w = build_weights(&spec).map_err(|e| e.to_string())?;
        let depth = spec.m_left.min(spec.m_right) as u32;
        for k in 0..=depth {
            expect_eq(
                &format!("moment k={k} for {spec:?}"),
                &w.moment(k),
                &w.exact_moment(k),
            )?;

            // Floating: t^k over [0, 1]; rounding is judged against the
            // magnitude sum |w_j f(x_j)|, since the matrix of offsets admits
            // rules whose nodes lie far outside the interval.
            let f = |t: f64| t.powi(k as i32);
            let approx = integrate_function(f, 0.0, 1.0, &spec).map_err(|e| e.to_string())?;
            let exact = 1.0 / (k as f64 + 1.0);
            let placed = map_to_interval(&spec, 0.0, 1.0).map_err(|e| e.to_string())?;
            let scale: f64 = placed
                .nodes
                .iter()
                .zip(&placed.weights)
                .map(|(x, w)| (w * f(*x)).abs())
                .sum::<f64>()
                .max(exact);
            let rel = (approx - exact).abs() / scale;
            worst_rel = worst_rel.max(rel);
            ensure(rel <= 1e-13, || {
                format!("floating moment k={k} for {spec:?}: relative error {rel:e}")
            })?;
        }
    }
    Ok(format!(
        "{trials} random specs, exact in rationals, worst floating relative error {worst_rel:.2e}"
    ))
}

fn has_bonus(spec: &RuleSpec) -> Result<bool, String> {
    let w = build_weights(spec).map_err(|e| e.to_string())?;
    let k = spec.m_left as u32 + 1;
    Ok(w.moment(k) == w.exact_moment(k))
}

// 3b. beta = alpha and even m always gain a degree.
fn bonus_when_symmetric_even() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0031);
    let mut tested = 0;
    while tested < 300 {
        let mut spec = random_spec(&mut rng, true);
        spec.beta = spec.alpha.clone();
        spec.m_left -= spec.m_left % 2;
        spec.m_right = spec.m_left;
        if spec.validate().is_err() {
            continue;
        }
        ensure(has_bonus(&spec)?, || {
            format!("no degree-(m+1) exactness for {spec:?}")
        })?;
        tested += 1;
    }
    Ok(format!(
        "{tested} symmetric even-m specs exact at degree m+1"
    ))
}

// 3c. The bonus holds only when beta = alpha and m is even.
//
// Besides random specs this includes the two families the derivation itself
// singles out: alpha = beta = -m/2 with odd m, and m = 0 with beta = -alpha.
fn bonus_only_when_symmetric_even() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0032);
    let mut specs: Vec<RuleSpec> = (0..400).map(|_| random_spec(&mut rng, true)).collect();
    for m in [1usize, 3, 5] {
        let alpha = ratio(-(m as i64), 2);
        specs.push(RuleSpec::symmetric(alpha, m, 12).map_err(|e| e.to_string())?);
    }
    specs.push(RuleSpec::new(q("1/2"), q("-1/2"), 0, 0, 6).map_err(|e| e.to_string())?);

    let mut counterexamples = Vec::new();
    for spec in &specs {
        let predicted = spec.alpha == spec.beta && spec.m_left % 2 == 0;
        if has_bonus(spec)? != predicted {
            counterexamples.push(format!(
                "(alpha={}, beta={}, m={}, n={})",
                spec.alpha, spec.beta, spec.m_left, spec.n
            ));
        }
    }
    if counterexamples.is_empty() {
        Ok(format!("{} specs agree with the prediction", specs.len()))
    } else {
        Err(format!(
            "{} of {} specs gain a degree without beta = alpha and even m: {}",
            counterexamples.len(),
            specs.len(),
            counterexamples.join(", ")
        ))
    }
}

// 3d. Reversal swaps the two ends.
fn swap_symmetry() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0033);
    let trials = 400;
    for _ in 0..trials {
        let spec = random_spec(&mut rng, false);
        let w = build_weights(&spec).map_err(|e| e.to_string())?;
        let mirror = build_weights(&spec.mirrored()).map_err(|e| e.to_string())?;
        expect_eq(&format!("reversal of {spec:?}"), &w.reversed(), &mirror)?;
    }
    Ok(format!("{trials} random specs"))
}

fn factor(f: fn(f64) -> f64, alpha: &str, beta: &str, m: usize) -> Result<f64, String> {
    let study = OrderStudy {
        alpha: q(alpha),
        beta: q(beta),
        m,
        n0: 9,
        doublings: 1,
    };
    let report = estimate_order(f, 1.0, 0.0, 1.0, &study).map_err(|e| e.to_string())?;
    expect_eq(
        "node counts",
        &report.levels.iter().map(|l| l.nodes).collect::<Vec<_>>(),
        &vec![10, 20],
    )?;
    Ok(report.ratios[0])
}

// 4. Error-reduction factors from 10 to 20 nodes, within 5 %.
fn convergence_factors() -> Check {
    let start = Instant::now();
    let sextic: fn(f64) -> f64 = |t| 7.0 * t.powi(6);
    let quartic: fn(f64) -> f64 = |t| 5.0 * t.powi(4);
    let cases = [
        ("7t^6 midpoint m=2", sextic, "1/2", "1/2", 2, 13.5),
        ("7t^6 midpoint m=3", sextic, "1/2", "1/2", 3, 27.7),
        ("7t^6 midpoint m=4", sextic, "1/2", "1/2", 4, 47.3),
        ("5t^4 semi-open m=2", quartic, "1/2", "0", 2, 18.5),
        ("5t^4 semi-open m=3", quartic, "1/2", "0", 3, 36.4),
    ];
    let mut parts = Vec::new();
    for (label, f, alpha, beta, m, reported) in cases {
        let got = factor(f, alpha, beta, m)?;
        ensure((got - reported).abs() <= 0.05 * reported, || {
            format!("{label}: factor {got:.3}, expected {reported} within 5%")
        })?;
        parts.push(format!("{got:.2}"));
    }
    let elapsed = start.elapsed();
    within_time("convergence factors", elapsed, Duration::from_secs(1))?;
    Ok(format!("factors {} in {elapsed:?}", parts.join(" / ")))
}

// 5. Asymptotic order for exp on [0, 1], corrected midpoint rules.
fn asymptotic_order() -> Check {
    let mut parts = Vec::new();
    for m in 2..=4usize {
        let study = OrderStudy {
            alpha: q("1/2"),
            beta: q("1/2"),
            m,
            n0: 7,
            doublings: 4,
        };
        let report = estimate_order(f64::exp, std::f64::consts::E - 1.0, 0.0, 1.0, &study)
            .map_err(|e| e.to_string())?;
        let order = report
            .estimated_order
            .value()
            .ok_or_else(|| format!("m={m}: errors reached rounding level, no order estimate"))?;
        let target = (m + 2) as f64;
        ensure((order - target).abs() <= 0.5, || {
            format!("m={m}: order {order:.3}, expected {target} +- 0.5")
        })?;
        parts.push(format!("m={m}: {order:.2}"));
    }
    Ok(parts.join(", "))
}

// 6. Round trip and prefix stability.
fn roundtrip_and_prefix() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for _ in 0..100 {
        let len = rng.gen_range(1..=9usize);
        let xs: Vec<Rational> = (0..len)
            .map(|_| {
                ratio(
                    rng.gen_range(-10_000..=10_000i64),
                    rng.gen_range(1..=5_000i64),
                )
            })
            .collect();
        expect_eq("c_to_b(b_to_c(x))", &c_to_b(&b_to_c(&xs)), &xs)?;
    }
    for _ in 0..100 {
        let alpha = ratio(rng.gen_range(-500..=500i64), rng.gen_range(1..=97i64));
        let m = rng.gen_range(0..=9usize);
        let longer = solve_b(&alpha, m + 1);
        expect_eq(
            &format!("prefix alpha={alpha} m={m}"),
            &longer[..=m].to_vec(),
            &solve_b(&alpha, m),
        )?;
    }
    Ok("100 round trips, 100 prefix checks".into())
}

// 7. Corrections m=3 and m=2 coincide on four nodes.
fn midpoint_coincidence() -> Check {
    let want = over(12, &[13, 11, 11, 13]);
    for m in [2usize, 3] {
        let w = build_weights(&RuleSpec::symmetric(q("1/2"), m, 3).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        expect_eq(&format!("alpha=1/2 m={m} n=3"), &w.weights, &want)?;
    }
    Ok("both give [13/12, 11/12, 11/12, 13/12]".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1  coefficient tables", coefficient_tables),
        ("2  classical rules + oracle", classical_rules),
        ("3a monomial identity k <= m", monomial_identity),
        (
            "3b degree bonus when beta = alpha, m even",
            bonus_when_symmetric_even,
        ),
        (
            "3c degree bonus only when beta = alpha, m even",
            bonus_only_when_symmetric_even,
        ),
        ("3d swap symmetry", swap_symmetry),
        ("4  convergence factors", convergence_factors),
        ("5  asymptotic order, exp", asymptotic_order),
        ("6  round trip + prefix stability", roundtrip_and_prefix),
        ("7  midpoint m=2/m=3 coincidence", midpoint_coincidence),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
