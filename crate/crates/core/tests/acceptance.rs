//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::Instant;

use ldt::algebra::{RatFunc, Series, Q};
use ldt::boxcount::{counts, cy_vertex_reduced};
use ldt::checks::{self, Outcome};
use ldt::partitions::{gen_partitions, Partition};
use ldt::rubber::operator_s;
use ldt::tqft::{cap_m10, to_starred, Starred};
use ldt::vertex::solve_vertex;

struct Criterion {
    id: u32,
    title: &'static str,
    run: fn() -> Vec<Outcome>,
}

fn outcome(name: &str, failures: Vec<String>) -> Outcome {
    Outcome {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: failures.join("; "),
    }
}

fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Π (1 - q^n)^{-n} over the integers, one geometric factor at a time.
fn macmahon_oracle(qmax: usize) -> Vec<i128> {
    let mut c = vec![0i128; qmax + 1];
    c[0] = 1;
    for n in 1..=qmax {
        for _ in 0..n {
            for m in n..=qmax {
                c[m] += c[m - n];
            }
        }
    }
    c
}

/// Hook lengths from the diagram: arm + leg + 1 in every cell.
fn hooks_oracle(lambda: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count() as u32;
            out.push(arm + leg + 1);
        }
    }
    out
}

/// Π_h 1/(1 - (-q)^h) with integer coefficients.
fn hook_product_oracle(hooks: &[u32], qmax: usize) -> Vec<i128> {
    let mut c = vec![0i128; qmax + 1];
    c[0] = 1;
    for &h in hooks {
        let h = h as usize;
        let sign = if h.is_multiple_of(2) { 1 } else { -1 };
        for m in h..=qmax {
            c[m] += sign * c[m - h];
        }
    }
    c
}

fn int_series(c: &[i128], qmax: i64) -> Series {
    Series::new(0, c.iter().map(|&x| RatFunc::constant(Q::from_integer(x.into()))).collect(), qmax)
}

/// `(1 + q)^e = Σ_n binom(e, n) q^n` from the falling factorial.
fn binomial_oracle(e: &RatFunc, qmax: i64) -> Series {
    let mut c = vec![RatFunc::one()];
    for n in 1..=qmax {
        let prev = c.last().unwrap().clone();
        let step = e.sub(&RatFunc::from_int(n - 1)).scale(&Q::new(1.into(), n.into()));
        c.push(prev.mul(&step));
    }
    Series::new(0, c, qmax)
}

fn c1_macmahon() -> Vec<Outcome> {
    let qmax = 10;
    let enumerated = counts(&Partition::empty(), qmax as u32);
    let oracle = macmahon_oracle(qmax);
    let f = (0..=qmax)
        .filter(|&n| enumerated[n] as i128 != oracle[n])
        .map(|n| format!("q^{}: {} vs {}", n, enumerated[n], oracle[n]))
        .collect();
    vec![checks::macmahon(qmax as i64), outcome("enumeration equals the product expansion", f)]
}

fn c2_cy_vertex() -> Vec<Outcome> {
    let qmax = 10;
    let mut f = Vec::new();
    for d in 0..=4 {
        for lam in gen_partitions(d) {
            let want = int_series(&hook_product_oracle(&hooks_oracle(lam.parts()), qmax), qmax as i64);
            if cy_vertex_reduced(&lam, qmax as u32) != want {
                f.push(format!("{}", lam));
            }
        }
    }
    vec![checks::cy_vertex(4, qmax as i64), outcome("hook lengths counted from the diagram", f)]
}

fn c3_degree0() -> Vec<Outcome> {
    checks::degree0(2, 8)
}

fn c4_operators() -> Vec<Outcome> {
    let mut v = checks::operators(5, 10);
    v.push(checks::additivity(5, 10));
    v
}

fn c5_rubber() -> Vec<Outcome> {
    let qmax = 10;
    let mut v = checks::rubber_ode(4, qmax);
    let one = Partition::ones(1);
    let ts = RatFunc::t1().add(&RatFunc::t2());
    let f = match operator_s(1, qmax) {
        Ok(s) if s.entry(&one, &one) == binomial_oracle(&ts, qmax) => vec![],
        Ok(_) => vec!["d=1 entry".to_string()],
        Err(e) => vec![e.to_string()],
    };
    v.push(outcome("d=1 equals the binomial series of (1+q)^{t1+t2}", f));
    v
}

fn c6_fixed_points() -> Vec<Outcome> {
    checks::fixed_points(5)
}

fn c7_vertex() -> Vec<Outcome> {
    let qmax = 8;
    let mut v = checks::vertex(3, qmax);
    // general frame: (1+q)^{(s2+s3)/s1} with (s1, s2, s3) in the slots (s, t1, t2)
    let e = RatFunc::t1().add(&RatFunc::t2()).div(&RatFunc::s()).unwrap();
    let f = match solve_vertex(1, qmax) {
        Ok(w) if w[0].to_general().value == binomial_oracle(&e, qmax) => vec![],
        Ok(_) => vec!["degree 1".to_string()],
        Err(e) => vec![e.to_string()],
    };
    v.push(outcome("degree 1 vertex equals the binomial series", f));
    v
}

fn c8_gw_dt() -> Vec<Outcome> {
    let qmax = 8;
    let mut f = Vec::new();
    for d in 1..=5u32 {
        let caps = cap_m10(d, qmax);
        for lam in gen_partitions(d) {
            // GW* = (-q)^{-d/2} t2^{-ℓ} (-1)^{d-ℓ}/𝔷 Π 1/(1-(-q)^{-k}), and
            // 1/(1-(-q)^{-k}) = -(-q)^k/(1-(-q)^k), so GW* = (-q)^{d/2} (-1)^d t2^{-ℓ}/𝔷 Π 1/(1-(-q)^k)
            let l = lam.len() as i64;
            let geo = int_series(&hook_product_oracle(lam.parts(), qmax as usize), qmax);
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let top = RatFunc::t_power(0, -l).scale(&(int(sign) / lam.zee()));
            let gw = Starred {
                half_power: d as i64,
                series: geo.scale(&top),
            };
            let dt = match caps.entry(&[&lam]) {
                Ok(c) => to_starred(0, -1, 0, d, &c),
                Err(e) => {
                    f.push(e.to_string());
                    continue;
                }
            };
            if !dt.agrees_with(&gw) {
                f.push(format!("{}", lam));
            }
        }
    }
    vec![checks::gw_dt(5, qmax), outcome("DT* equals the rewritten GW* closed form", f)]
}

fn c9_tqft() -> Vec<Outcome> {
    checks::tqft_gluing(3, 8)
}

fn c10_rationality() -> Vec<Outcome> {
    checks::rationality(2, 12)
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "MacMahon oracle", run: c1_macmahon },
        Criterion { id: 2, title: "Calabi-Yau vertex", run: c2_cy_vertex },
        Criterion { id: 3, title: "degree 0 theory", run: c3_degree0 },
        Criterion { id: 4, title: "operator suite", run: c4_operators },
        Criterion { id: 5, title: "rubber ODE", run: c5_rubber },
        Criterion { id: 6, title: "fixed-point classes", run: c6_fixed_points },
        Criterion { id: 7, title: "(-1,0) cap end to end", run: c7_vertex },
        Criterion { id: 8, title: "GW/DT (-1,0) caps", run: c8_gw_dt },
        Criterion { id: 9, title: "TQFT coherence", run: c9_tqft },
        Criterion { id: 10, title: "rationality", run: c10_rationality },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcomes = (c.run)();
        let ok = outcomes.iter().all(|o| o.passed);
        println!(
            "{} criterion {}: {} ({:.1}s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            start.elapsed().as_secs_f64()
        );
        for o in outcomes.iter().filter(|o| !o.passed) {
            println!("    {}: {}", o.name, o.detail);
        }
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
}
