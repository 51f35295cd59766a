//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Proc;
use std::time::{Duration, Instant};

use hybrid_asym::cases::constants::by_name;
use hybrid_asym::cases::{first_order_residuals, float_coefficients};
use hybrid_asym::exact::arith::{irreducible_count, totient};
use hybrid_asym::exact::{self, product_expand};
use hybrid_asym::logpower::{evaluate_expansion, transfer_asymptotic, transfer_exact, Exponent, LogPowerMonomial};
use hybrid_asym::numerics::{constants, format_fixed, harmonic, zeta, Complex, Precision, RootOfUnity};
use hybrid_asym::singular::{polylog_direct, polylog_eval, polylog_singular};
use hybrid_asym_cli::{integer_prefix, render, Command, Common, Format};
use hybrid_asym::pipeline::Scaling;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn common(prec: u32) -> Common {
    Common { prec, format: Some(Format::Csv), out: None, sequential: false }
}

fn criterion_1() -> Outcome {
    let cases: [(&str, u32, &[i64]); 5] = [
        ("distinct-cycles", 1, &[1, 1, 1, 5, 14, 74]),
        ("square-perms", 1, &[1, 1, 1, 3, 12, 60, 270]),
        ("same-cycle-type", 2, &[1, 1, 2, 14, 146, 2602]),
        ("forests:F", 0, &[1, 1, 2, 4, 10, 26, 77, 235]),
        ("forests:E", 0, &[1, 1, 1, 3, 7, 21, 63, 203]),
    ];
    let mut slowest = Duration::ZERO;
    for (gf, _, want) in cases {
        let t = Instant::now();
        let got = integer_prefix(gf, want.len() - 1).map_err(|e| e.to_string())?;
        slowest = slowest.max(t.elapsed());
        let want: Vec<Integer> = want.iter().map(|&v| Integer::from(v)).collect();
        ensure(got == want, || format!("{gf}: {got:?}"))?;
        ensure(t.elapsed() < Duration::from_secs(1), || format!("{gf} took {:?}", t.elapsed()))?;
    }
    Ok(format!("5 prefixes exact, slowest {slowest:.2?}"))
}

fn criterion_2() -> Outcome {
    let p = Precision::new(50);
    let cases = [
        ("eG", "1.22177951519"),
        ("W1", "4.26340351415"),
        ("K", "1.71603053492"),
        ("exp-neg-gamma", "0.561459483567"),
    ];
    let mut worst_digits = f64::INFINITY;
    let mut slowest = Duration::ZERO;
    for (name, want) in cases {
        let t = Instant::now();
        let r = by_name(name, p).map_err(|e| e.to_string())?.remove(0);
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        let v = Float::with_val(256, Float::parse(&r.value).unwrap());
        let shown = format_fixed(&v, 12);
        ensure(shown == want, || format!("{name}: {shown} vs {want}"))?;
        let delta: f64 = r.delta.parse().unwrap();
        let digits = if delta == 0.0 { 50.0 } else { -(delta / v.to_f64().abs()).log10() };
        worst_digits = worst_digits.min(digits);
        ensure(digits >= 10.0, || format!("{name}: routes agree to {digits:.1} digits"))?;
        ensure(dt < Duration::from_secs(10), || format!("{name} took {dt:?}"))?;
    }
    Ok(format!("12 digits match, routes agree to ≥ {worst_digits:.1} digits, slowest {slowest:.2?}"))
}

fn compare_rows(n_min: u64, n_max: u64, depth: i64, roots: u64, scaling: &str) -> Result<Vec<f64>, String> {
    let cmd = Command::Compare {
        gf: "distinct-cycles".into(),
        n_max,
        n_min,
        depth: Exponent::int(depth),
        roots,
        scaling: scaling.parse::<Scaling>().map_err(|e| e.to_string())?,
        common: common(50),
    };
    let csv = render(&cmd).map_err(|e| e.to_string())?;
    Ok(csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap().abs()).collect())
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let r = compare_rows(1, 1000, 3, 1, "n3")?;
    let dt = t.elapsed();
    let (at, max) = r.iter().enumerate().fold((0, 0.0f64), |a, (i, v)| if *v > a.1 { (i + 1, *v) } else { a });
    ensure(r.len() == 1000, || format!("{} rows", r.len()))?;
    ensure(max <= 22.0, || format!("max |R_n| = {max:.3} at n = {at}"))?;
    ensure(dt < Duration::from_secs(120), || format!("took {dt:?}"))?;
    Ok(format!("max |R_n| = {max:.3} at n = {at} over 1..1000 ({dt:.1?})"))
}

fn criterion_4() -> Outcome {
    let mut r = compare_rows(50, 800, 3, 3, "n4log3")?;
    let max = r.iter().cloned().fold(0.0, f64::max);
    // no monotone growth: the last quarter stays below the first quarter's max
    let q = r.len() / 4;
    let head = r[..q].iter().cloned().fold(0.0, f64::max);
    let tail = r[r.len() - q..].iter().cloned().fold(0.0, f64::max);
    r.sort_by(f64::total_cmp);
    let median = r[r.len() / 2];
    ensure(max < 10.0 * median, || format!("max {max:.3} vs median {median:.3}"))?;
    ensure(tail <= head * 1.5, || format!("growth: first quarter {head:.3}, last {tail:.3}"))?;
    Ok(format!("max {max:.3}, median {median:.3}, first/last quarter max {head:.3}/{tail:.3}"))
}

fn criterion_5() -> Outcome {
    let p = Precision::new(50);
    let b = p.bits();
    let c = constants(p);
    let tol = 1e-30;
    // (log n + γ + 2 log 2)/√(πn)·(1 − 1/8n) from (1−z)^{−1/2}·log(1/(1−z))
    let e = transfer_asymptotic(&LogPowerMonomial::unit(Exponent::new(-1, 2), 1, p), 2, p).map_err(|e| e.to_string())?;
    let sqrt_pi = Float::with_val(b, c.pi.sqrt_ref());
    let shift = Float::with_val(b, &c.euler_gamma + Float::with_val(b, c.log(2) * 2u32));
    for n in [50u64, 1000] {
        let nf = p.float(n);
        let t = Float::with_val(b, nf.ln_ref()) + &shift;
        let lead = Float::with_val(b, &t / Float::with_val(b, &sqrt_pi * Float::with_val(b, nf.sqrt_ref())));
        let want = Float::with_val(b, &lead - Float::with_val(b, &lead / (nf.clone() * 8u32)));
        let got = evaluate_expansion(&e, n, p);
        let d = Float::with_val(b, &got.re - &want).abs().to_f64();
        ensure(d < tol, || format!("first anchor off by {d:e} at n = {n}"))?;
    }
    // −(2/n²)(log n + γ − 1) − (1/n³)(2 log n + 2γ − 5) from (1−z)·log²(1/(1−z))
    let e = transfer_asymptotic(&LogPowerMonomial::unit(Exponent::int(1), 2, p), 2, p).map_err(|e| e.to_string())?;
    for n in [50u64, 1000] {
        let nf = p.float(n);
        let l = Float::with_val(b, nf.ln_ref()) + &c.euler_gamma;
        let a = Float::with_val(b, &l - 1u32) * 2u32 / Float::with_val(b, &nf * &nf);
        let cc = (Float::with_val(b, &l * 2u32) - 5u32) / Float::with_val(b, (&nf).pow(3u32));
        let want = -(a + cc);
        let got = evaluate_expansion(&e, n, p);
        let d = Float::with_val(b, &got.re - &want).abs().to_f64();
        ensure(d < tol, || format!("second anchor off by {d:e} at n = {n}"))?;
    }
    // residual of a depth-2 expansion is O(n^{−α−3} log^k n)
    let alphas = [(-3, 2), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)];
    let roots = [RootOfUnity::one(), RootOfUnity::new(2, 1), RootOfUnity::new(4, 1), RootOfUnity::new(3, 1)];
    let wp = Precision::new(40);
    let depth = 2usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut exact_cases = 0;
    let mut worst = 0.0f64;
    for case in 0..200 {
        let (an, ad) = alphas[rng.gen_range(0..alphas.len())];
        let k = rng.gen_range(0..3u32);
        let zeta = roots[rng.gen_range(0..roots.len())];
        let amp = Complex::from_f64(wp, rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let m = LogPowerMonomial::new(zeta, Exponent::new(an, ad), k, amp);
        let e = transfer_asymptotic(&m, depth, wp).map_err(|e| e.to_string())?;
        let a = an as f64 / ad as f64;
        let scaled: Vec<f64> = [128u64, 256, 512, 1024]
            .iter()
            .map(|&n| {
                let r = transfer_exact(&m, n as usize, wp).dist(&evaluate_expansion(&e, n, wp)).to_f64();
                let nf = n as f64;
                r * nf.powf(a + 1.0 + depth as f64) / (1.0 + nf.ln().powi(k as i32))
            })
            .collect();
        if scaled.iter().all(|s| *s < 1e-25) {
            exact_cases += 1;
            continue;
        }
        let hi = scaled.iter().cloned().fold(f64::MIN, f64::max);
        let lo = scaled.iter().cloned().fold(f64::MAX, f64::min);
        worst = worst.max(hi / lo);
        ensure(hi / lo <= 4.0, || format!("case {case}: α = {an}/{ad}, k = {k}, ζ = {zeta}: {scaled:?}"))?;
    }
    Ok(format!(
        "both anchors to < 1e-30; 200 random monomials ({exact_cases} with exact expansions), worst spread {worst:.2}"
    ))
}

fn criterion_6() -> Outcome {
    let p = Precision::new(40);
    let b = p.bits();
    let t = Exponent::int(3);
    let mut worst = 0.0f64;
    for nu in [Exponent::new(1, 2), Exponent::int(1), Exponent::int(2), Exponent::int(3)] {
        let s = polylog_singular(nu, t, p).map_err(|e| e.to_string())?;
        let mut ratios = Vec::new();
        for x in [1e-2f64, 1e-3, 1e-4] {
            let xf = Float::with_val(b, x);
            let w = Complex::real(Float::with_val(b, 1u32 - &xf));
            let exact = polylog_eval(nu, &w, p).map_err(|e| e.to_string())?;
            ratios.push(s.eval_radial(&xf).dist(&exact).to_f64() / x.powi(3));
        }
        if ratios.iter().all(|r| *r < 1e-20) {
            continue;
        }
        for w in ratios.windows(2) {
            worst = worst.max(w[1] / w[0]);
            ensure(w[1] <= 5.0 * w[0], || format!("ν = {nu}: {ratios:?}"))?;
        }
    }
    // the τ-series of Li_m(e^{−τ}), with its log τ term, against direct summation
    let z = Float::with_val(b, 0.9);
    let tau = -Float::with_val(b, z.ln_ref());
    let log_tau = Float::with_val(b, tau.ln_ref());
    let mut zc = 0.0f64;
    for m in [2u32, 3] {
        let f = Integer::from(Integer::factorial(m - 1));
        let h = Float::with_val(b, &harmonic((m - 1) as u64));
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let tau_pow = Float::with_val(b, (&tau).pow(m - 1));
        let mut sum: Float = Float::with_val(b, &log_tau - &h) * tau_pow * sign / f;
        let mut fact = Integer::from(1);
        for j in 0..30u32 {
            if j > 0 {
                fact *= j;
            }
            if j == m - 1 {
                continue;
            }
            let zv = zeta(&Float::with_val(b, m as i32 - j as i32), p).map_err(|e| e.to_string())?;
            let pw = Float::with_val(b, Float::with_val(b, -&tau).pow(j));
            sum += zv * pw / &fact;
        }
        let direct = polylog_direct(Exponent::int(m as i64), &Complex::real(z.clone()), p);
        let rel = Float::with_val(b, &direct.re - &sum).abs().to_f64() / sum.to_f64().abs();
        zc = zc.max(rel);
        ensure(rel < 1e-10, || format!("m = {m}: relative error {rel:e}"))?;
    }
    Ok(format!("worst per-decade ratio {worst:.2}; series at z = 0.9 to {zc:.1e}"))
}

fn value(name: &str) -> Float {
    let r = by_name(name, Precision::new(30)).unwrap().remove(0);
    Float::with_val(256, Float::parse(&r.value).unwrap())
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();

    let w = float_coefficients(&exact::same_cycle_type(), 1000, 128);
    let res = first_order_residuals(&w, Exponent::int(2), &value("W1"), &[100, 200, 400, 800], 100);
    ensure(res.windows(2).all(|x| x[1] < x[0]), || format!("n²W_n: {res:?}"))?;
    notes.push(format!("n²W_n−W(1): {:.1e}→{:.1e}", res[0], res[3]));

    for m in [2u64, 3, 6] {
        let c = float_coefficients(&exact::mth_root(m).unwrap(), 1000 + 2 * m as usize, 128);
        let power = Exponent::new((m - totient(m)) as i64, m as i64);
        let res = first_order_residuals(&c, power, &value(&format!("varpi:{m}")), &[125, 250, 500, 1000], 2 * m);
        ensure(res.windows(2).all(|x| x[1] < x[0]), || format!("Π_{m}: {res:?}"))?;
        notes.push(format!("Π_{m}: {:.1e}→{:.1e}", res[0], res[3]));
    }

    for n in 1..=30u64 {
        let i = Float::with_val(128, irreducible_count(2, n));
        let main = Float::with_val(128, Float::with_val(128, 2).pow(n as u32)) / n;
        let bound = Float::with_val(128, 2).pow(n as f64 / 2.0);
        ensure(Float::with_val(128, i - main).abs() <= bound, || format!("I_{n} bound"))?;
    }
    let d = product_expand(&exact::distinct_degree(2).unwrap(), 500);
    let delta = value("delta:2");
    let mut worst = 0.0f64;
    for n in 1..=500usize {
        let ratio = Rational::from(&d.coeffs()[n] / Integer::from(Integer::u_pow_u(2, n as u32)));
        let r = (Float::with_val(128, Float::with_val(128, ratio) - &delta) * n as u32).abs().to_f64();
        worst = worst.max(r);
    }
    ensure(worst < 2.0, || format!("max n|D_n/2ⁿ − δ(2)| = {worst}"))?;
    notes.push(format!("max n|D_n/2ⁿ−δ| = {worst:.3}"));

    let e = float_coefficients(&exact::dissimilar_forests(), 1000, 192);
    let f = float_coefficients(&exact::all_forests(), 1000, 192);
    let kappa = value("kappa").to_f64();
    let gap = |n: usize| (Float::with_val(192, &e[n] / &f[n]).to_f64() - kappa).abs();
    let gaps: Vec<f64> = [100, 200, 400, 1000].iter().map(|&n| gap(n)).collect();
    ensure(gaps.windows(2).all(|x| x[1] < x[0]), || format!("E_n/F_n: {gaps:?}"))?;
    ensure(gap(500) < 0.1 * kappa, || "E_500/F_500 not within 10% of κ".into())?;
    notes.push(format!("|E_n/F_n−κ|: {:.1e}→{:.1e}", gaps[0], gaps[3]));

    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(300), || format!("took {dt:?}"))?;
    Ok(format!("{} ({dt:.1?})", notes.join(", ")))
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hybrid-asym");
    let runs: [&[&str]; 6] = [
        &["coeffs", "same-cycle-type", "--n-max", "60"],
        &["coeffs", "q-alpha:-3/2", "--n-max", "30"],
        &["constants", "eG", "--format", "json"],
        &["compare", "distinct-cycles", "--n-max", "300", "--roots", "3", "--scaling", "n3"],
        &["asym", "square-perms", "--depth", "2", "--roots", "4", "--format", "json"],
        &["report", "ddf:2", "--n-max", "60", "--prec", "30"],
    ];
    let exec = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Proc::new(bin).args(args).env_remove("HYBRID_ASYM_PREC").output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
        Ok(out.stdout)
    };
    let mut bytes = 0;
    for args in runs {
        let a = exec(args)?;
        let b = exec(args)?;
        ensure(a == b, || format!("{args:?} differs between runs"))?;
        bytes += a.len();
    }
    // the thread count must not leak into the output either
    let par = exec(&["compare", "distinct-cycles", "--n-max", "200", "--roots", "2"])?;
    let seq = exec(&["compare", "distinct-cycles", "--n-max", "200", "--roots", "2", "--sequential"])?;
    ensure(par == seq, || "parallel and sequential output differ".into())?;
    Ok(format!("6 commands byte-identical across runs ({bytes} bytes), parallel = sequential"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("coefficient prefixes", criterion_1),
        ("constants by two routes", criterion_2),
        ("first error profile", criterion_3),
        ("oscillating error profile", criterion_4),
        ("transfer anchors and residual orders", criterion_5),
        ("polylogarithm suite", criterion_6),
        ("first-order laws", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
