//! End-to-end acceptance checks. Each check prints one line with its status
//! and wall time against its budget; the process fails if any check fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qwc::cli::run;
use qwc::exact::{factorial, rat, ratio, CurveClass, MultiPoly, RatFunc};
use qwc::gw::small_j;
use qwc::ifun::{extract_i0_i1, local_flag_i, small_i, Epsilon};
use qwc::toric::Toric;
use qwc::wallcross::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn preset(name: &str) -> Toric {
    Toric::preset(name).unwrap()
}

fn all_pass(r: &VerificationReport) -> Result<(), String> {
    ensure(!r.cells.is_empty(), || format!("{} on {}: no cells", r.identity, r.preset))?;
    ensure(r.passed(), || {
        let bad = r.cells.iter().find(|c| c.status != Status::Pass).unwrap();
        format!("{} on {}: {:?} at {} q^{} {}", r.identity, r.preset, bad.status, bad.sigma, bad.beta, bad.witness.clone().unwrap_or_default())
    })
}

fn point_ifun() -> Check {
    let o = run(["qwc", "ifun", "--preset", "point", "--degree", "6"]);
    ensure(o.code == 0, || format!("exit {}: {}", o.code, o.stderr))?;
    let v: serde_json::Value = serde_json::from_str(&o.stdout).map_err(|e| e.to_string())?;
    let coeffs = v["coefficients"].as_array().ok_or("no coefficient table")?;
    ensure(coeffs.len() == 7, || format!("{} coefficients", coeffs.len()))?;
    let t = preset("point");
    let i = small_i(&t, 6).map_err(|e| e.to_string())?;
    for d in 0..=6u32 {
        let zd = RatFunc::from_poly(t.z().pow(d));
        let expect = zd.scale(&factorial(d)).inv().unwrap();
        let b = CurveClass(vec![d as i64]);
        ensure(i.per_sigma[0].coeff(&b) == expect, || format!("degree {d} differs"))?;
        let printed = coeffs[d as usize]["value"].as_str().unwrap_or("");
        let want = match d {
            0 => "1".to_string(),
            1 => "1/z".to_string(),
            _ => format!("1/({}*z^{d})", factorial(d)),
        };
        ensure(printed == want, || format!("degree {d}: printed {printed}, expected {want}"))?;
    }
    Ok("q^d coefficient is 1/(d! z^d) for d <= 6".into())
}

fn i0_lemma() -> Check {
    let mut cells = 0;
    for name in ["p1", "p2", "f2", "local-p2"] {
        let t = preset(name);
        let r = verify_i0_lemma(&t, 4).map_err(|e| e.to_string())?;
        all_pass(&r)?;
        cells += r.cells.len();
        let parts = extract_i0_i1(&t, &small_i(&t, 4).unwrap()).map_err(|e| e.to_string())?;
        ensure(parts.i0.terms().all(|(b, c)| if b.is_zero() { c.is_one() } else { c.is_zero() }), || {
            format!("I_0 != 1 on {name}")
        })?;
    }
    Ok(format!("{cells} coefficients are O(1/z); I_0 = 1 on p1, p2, f2, local-p2"))
}

fn fano_mirror() -> Check {
    let mut n = 0;
    for name in ["p1", "p2"] {
        let t = preset(name);
        let j = small_j(&t, 3).map_err(|e| e.to_string())?;
        let i = small_i(&t, 3).map_err(|e| e.to_string())?;
        for (s, (js, is)) in j.iter().zip(&i.per_sigma).enumerate() {
            for b in t.effective_classes(3).unwrap() {
                ensure(js.coeff(&b) == is.coeff(&b), || format!("{name} fixed point {:?} q^{b}", t.sigma_label(s)))?;
                n += 1;
            }
        }
    }
    Ok(format!("J = I exactly at {n} (fixed point, degree) pairs on p1, p2 through degree 3"))
}

fn semi_positive_mirror() -> Check {
    let f2 = preset("f2");
    let r = verify_i_equals_j(&f2, 4, 4).map_err(|e| e.to_string())?;
    all_pass(&r)?;
    for a in 0..=2 {
        for b in 0..=2 {
            let label = CurveClass(vec![a, b]).to_string();
            ensure(r.cells.iter().any(|c| c.beta == label), || format!("f2 bidegree {label} not covered"))?;
        }
    }
    let i1_nonzero = extract_i0_i1(&f2, &small_i(&f2, 2).unwrap()).unwrap().i1.iter().any(|s| !s.is_zero());
    ensure(i1_nonzero, || "f2 mirror map is trivial".into())?;
    let lp2 = preset("local-p2");
    let r2 = verify_i_equals_j(&lp2, 2, 4).map_err(|e| e.to_string())?;
    all_pass(&r2)?;
    Ok(format!("f2 bidegree <= 2 ({} cells) and local-p2 degree <= 2 ({} cells), z-order 4", r.cells.len(), r2.cells.len()))
}

fn truncation() -> Check {
    let t = preset("local-p2");
    let mut out = Vec::new();
    for (eps, label) in [(Epsilon::Finite(rat(1)), "1"), (Epsilon::Finite(ratio(1, 2)), "1/2")] {
        let r = verify_truncation_consistency(&t, &eps, 2, 4).map_err(|e| e.to_string())?;
        all_pass(&r)?;
        let top = eps.cutoff().unwrap().min(2);
        let covered = r.cells.iter().any(|c| c.beta == CurveClass(vec![top]).to_string());
        ensure(covered, || format!("epsilon {label}: cutoff degree {top} not checked"))?;
        out.push(format!("eps={label}: {} cells", r.cells.len()));
    }
    Ok(format!("local-p2 {}", out.join(", ")))
}

fn v_s() -> Check {
    let mut cells = 0;
    for name in ["p1", "p2"] {
        let r = verify_v_s(&preset(name), 2).map_err(|e| e.to_string())?;
        all_pass(&r)?;
        cells += r.cells.len();
    }
    Ok(format!("{cells} cells on p1, p2 through degree 2"))
}

fn point_wallcross() -> Check {
    let r = point_wallcross_range(6, 5).map_err(|e| e.to_string())?;
    all_pass(&r)?;
    let one = point_wallcross_check(4, &[2, 1, 0, 0], 2).map_err(|e| e.to_string())?;
    all_pass(&one)?;
    let witness = one.cells[0].witness.clone().unwrap_or_default();
    ensure(witness == "3/2 = 3/2", || format!("worked example gives {witness}"))?;
    let oracle = common::psi_by_string(&[2, 1, 0, 0, 0, 0]) / factorial(2);
    ensure(oracle == ratio(3, 2), || format!("string-recursion value {oracle}"))?;
    Ok(format!("{} exponent vectors, k <= 6, d <= 5; (4,2,(2,1,0,0)) gives {witness}", r.cells.len()))
}

fn property_suites() -> Check {
    let t = preset("p1");
    let mut out = Vec::new();
    for p in [Property::String, Property::Dilaton, Property::Divisor, Property::Trr] {
        let r = verify_property(&t, p, 2, 25, 11).map_err(|e| e.to_string())?;
        all_pass(&r)?;
        out.push(format!("{} {}", p.name(), r.cells.len()));
    }
    Ok(format!("p1 degree <= 2: {}", out.join(", ")))
}

fn local_grassmannian() -> Check {
    let lf = local_flag_i(1, 3, 3).map_err(|e| e.to_string())?;
    let t = preset("local-p2");
    let i = small_i(&t, 3).map_err(|e| e.to_string())?;
    let nv = t.nvars();
    let images = vec![MultiPoly::var(nv, 3), MultiPoly::var(nv, 0), MultiPoly::var(nv, 1), MultiPoly::var(nv, 2), t.z()];
    let mut n = 0;
    for (k, js) in lf.fixed_points.iter().enumerate() {
        let label: Vec<usize> = (1..=4).filter(|&x| x != js[0]).collect();
        let s = (0..t.fixed_points().len()).find(|&s| t.sigma_label(s) == label).ok_or("no matching fixed point")?;
        for d in 0..=3 {
            let b = CurveClass(vec![d]);
            let lhs = lf.series[k].coeff(&b).substitute(&images).map_err(|e| e.to_string())?;
            ensure(lhs == i.per_sigma[s].coeff(&b), || format!("fixed point {js:?} degree {d}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} coefficients agree after l0 -> l4"))
}

fn psi_oracle() -> Check {
    let mut n = 0;
    for k in 3..=8 {
        for a in common::stable_exponents(k) {
            let closed = qwc::gw::psi_integral(&a).map_err(|e| e.to_string())?;
            ensure(closed == common::psi_by_string(&a), || format!("{a:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} exponent vectors with n <= 8"))
}

fn reports(t_names: &[&str]) -> Result<Vec<VerificationReport>, String> {
    let mut out = Vec::new();
    for name in t_names {
        let t = preset(name);
        let e = |x: qwc::Error| x.to_string();
        out.push(verify_i_equals_j(&t, 2, 4).map_err(e)?);
        out.push(verify_i0_lemma(&t, 2).map_err(e)?);
        out.push(verify_truncation_consistency(&t, &Epsilon::Finite(ratio(1, 2)), 2, 4).map_err(e)?);
        if t.rank() == 1 && t.dim() <= 2 {
            out.push(verify_v_s(&t, 1).map_err(e)?);
            out.push(verify_property(&t, Property::Dilaton, 1, 4, 5).map_err(e)?);
            out.push(verify_property(&t, Property::Trr, 1, 4, 5).map_err(e)?);
        }
    }
    Ok(out)
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn determinism_and_gauge() -> Check {
    let names = ["p1", "p2", "f2", "local-p2"];
    let strip = |v: Vec<VerificationReport>| v.iter().map(|r| r.without_timing().to_json()).collect::<Vec<_>>();
    let one = strip(in_pool(1, || reports(&names))?);
    let four = strip(in_pool(4, || reports(&names))?);
    ensure(one == four, || "reports differ between 1 and 4 threads".into())?;
    let point1 = in_pool(1, || point_wallcross_range(5, 4)).map_err(|e| e.to_string())?.without_timing();
    let point4 = in_pool(4, || point_wallcross_range(5, 4)).map_err(|e| e.to_string())?.without_timing();
    ensure(point1 == point4, || "point reports differ between thread counts".into())?;

    let args = |n: &'static str| ["qwc", "verify", "i-equals-j", "--preset", "f2", "--degree", "2", "--stable-output", "--threads", n];
    let (a, b) = (run(args("1")), run(args("4")));
    ensure(a == b && a.code == 0, || "CLI output differs between thread counts".into())?;
    let j = |n: &'static str| run(["qwc", "jfun", "--preset", "local-p2", "--degree", "2", "--epsilon", "1/2", "--threads", n]);
    ensure(j("1") == j("4"), || "jfun output differs between thread counts".into())?;

    let mut compared = 0;
    for (name, shift) in [
        ("p1", vec![ratio(3, 2), rat(-2)]),
        ("p2", vec![rat(1), rat(-1), ratio(1, 3)]),
        ("f2", vec![rat(2), rat(0), ratio(-1, 2), rat(5)]),
        ("local-p2", vec![rat(1), rat(2), rat(3), rat(-7)]),
    ] {
        let t = preset(name);
        let shifted = t.with_gauge_shift(&shift);
        let base = reports(&[name])?;
        let moved = {
            let e = |x: qwc::Error| x.to_string();
            let mut v = vec![
                verify_i_equals_j(&shifted, 2, 4).map_err(e)?,
                verify_i0_lemma(&shifted, 2).map_err(e)?,
                verify_truncation_consistency(&shifted, &Epsilon::Finite(ratio(1, 2)), 2, 4).map_err(e)?,
            ];
            if t.rank() == 1 && t.dim() <= 2 {
                v.push(verify_v_s(&shifted, 1).map_err(e)?);
                v.push(verify_property(&shifted, Property::Dilaton, 1, 4, 5).map_err(e)?);
                v.push(verify_property(&shifted, Property::Trr, 1, 4, 5).map_err(e)?);
            }
            v
        };
        for (x, y) in base.iter().zip(&moved) {
            ensure(x.statuses() == y.statuses(), || format!("{} on {name}: statuses change under the shift", x.identity))?;
            compared += x.cells.len();
        }
    }
    Ok(format!("{} reports identical at 1 and 4 threads; {compared} statuses unchanged under l -> l + c", one.len() + 1))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { name: "point-target I-function", limit: Duration::from_secs(1), run: point_ifun },
        Criterion { name: "I_0 = 1 and O(1/z) tails", limit: Duration::from_secs(10), run: i0_lemma },
        Criterion { name: "Fano mirror identity J = I", limit: Duration::from_secs(300), run: fano_mirror },
        Criterion { name: "semi-positive mirror identity", limit: Duration::from_secs(900), run: semi_positive_mirror },
        Criterion { name: "truncation consistency", limit: Duration::from_secs(900), run: truncation },
        Criterion { name: "V-S factorization", limit: Duration::from_secs(600), run: v_s },
        Criterion { name: "point-target wall-crossing", limit: Duration::from_secs(10), run: point_wallcross },
        Criterion { name: "string/dilaton/divisor/TRR", limit: Duration::from_secs(300), run: property_suites },
        Criterion { name: "local Grassmannian vs toric I", limit: Duration::from_secs(60), run: local_grassmannian },
        Criterion { name: "psi-integral oracle", limit: Duration::from_secs(10), run: psi_oracle },
        Criterion { name: "determinism and gauge invariance", limit: Duration::from_secs(300), run: determinism_and_gauge },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if took <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time budget; {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("[{:>2}] {status} {} ({:.2} s of {} s): {detail}", k + 1, c.name, took.as_secs_f64(), c.limit.as_secs());
    }
    println!("acceptance: {} of {} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
