//! Named verification suites. Each suite returns one outcome per identity family.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::fit::fit_rational;
use crate::algebra::{geometric_neg, macmahon_neg, macmahon_q, RatFunc, Series, EXACT, Q};
use crate::boxcount::{counts, cy_vertex_reduced};
use crate::fock::{
    norm, operator_d_classical, operator_m, operator_m_at_zero, operator_msigma, pairing, FockOperator, FockVector,
};
use crate::partitions::{character, gen_partitions, Partition};
use crate::rubber::{empty_rubber, ode_residual, ode_residual_eigen, operator_s, s_tilde, Eigenframe};
use crate::symfunc::{euler_class, fixed_point_classes};
use crate::tqft::{
    cap00, cap_m10, gw_star_cap_m10, pants_d, to_starred, tube, Decomposition, Theory,
};
use crate::vertex::{
    cap_m10_lhs, cap_m10_rhs_split, closed_vertex_deg1_reduced, rubber_ratios, sigma1_degree1_closed,
    sigma1_degree1_ratio, sigma1_empty_bracket, sigma1_empty_closed, solve_vertex, solve_vertex_split, Weights,
};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(name: &str, failures: Vec<String>) -> Self {
        Outcome {
            name: name.to_string(),
            passed: failures.is_empty(),
            detail: failures.into_iter().take(3).collect::<Vec<_>>().join("; "),
        }
    }

    fn from_result(name: &str, r: Result<Vec<String>, Error>) -> Self {
        match r {
            Ok(f) => Self::new(name, f),
            Err(e) => Outcome {
                name: name.to_string(),
                passed: false,
                detail: format!("error: {}", e),
            },
        }
    }
}

/// Suite name, default `dmax`, default `qmax`.
pub const SUITES: &[(&str, u32, i64)] = &[
    ("macmahon", 0, 10),
    ("cy-vertex", 4, 10),
    ("degree0", 2, 8),
    ("operators", 5, 10),
    ("additivity", 5, 10),
    ("rubber-ode", 4, 10),
    ("fixed-points", 5, 0),
    ("vertex", 3, 8),
    ("gw-dt", 5, 8),
    ("tqft-gluing", 3, 8),
    ("rationality", 2, 12),
    ("descendents", 1, 8),
];

pub fn run(suite: &str, dmax: Option<u32>, qmax: Option<i64>) -> Result<Vec<Outcome>, Error> {
    let &(_, d0, q0) = SUITES
        .iter()
        .find(|s| s.0 == suite)
        .ok_or_else(|| Error::InvalidInput(format!("unknown suite {}", suite)))?;
    let d = dmax.unwrap_or(d0);
    let q = qmax.unwrap_or(q0);
    if q < 0 {
        return Err(Error::InvalidInput("qmax must be nonnegative".to_string()));
    }
    Ok(match suite {
        "macmahon" => alloc::vec![macmahon(q)],
        "cy-vertex" => alloc::vec![cy_vertex(d, q)],
        "degree0" => degree0(d, q),
        "operators" => operators(d, q),
        "additivity" => alloc::vec![additivity(d, q)],
        "rubber-ode" => rubber_ode(d, q),
        "fixed-points" => fixed_points(d),
        "vertex" => vertex(d, q),
        "gw-dt" => alloc::vec![gw_dt(d, q)],
        "tqft-gluing" => tqft_gluing(d, q),
        "rationality" => rationality(d, q),
        "descendents" => descendents(q),
        _ => unreachable!(),
    })
}

fn hook_series(lambda: &Partition, trunc: i64) -> Series {
    let mut acc = Series::one(trunc);
    for h in lambda.hooks() {
        acc = acc.mul(&geometric_neg(h as i64, trunc));
    }
    acc
}

fn delta_series(a: &Partition, b: &Partition, value: &RatFunc, trunc: i64) -> Series {
    if a == b {
        Series::constant(value.clone(), trunc)
    } else {
        Series::zero(trunc)
    }
}

pub fn macmahon(qmax: i64) -> Outcome {
    let c = counts(&Partition::empty(), qmax as u32);
    let m = macmahon_q(qmax);
    let mut f = Vec::new();
    for (n, k) in c.iter().enumerate() {
        if m.coeff(n as i64) != Q::from_integer((*k as i64).into()) {
            f.push(format!("q^{}: {} plane partitions", n, k));
        }
    }
    Outcome::new("plane partition counts equal M(q)", f)
}

pub fn cy_vertex(dmax: u32, qmax: i64) -> Outcome {
    let mut f = Vec::new();
    for d in 0..=dmax {
        for lam in gen_partitions(d) {
            if !cy_vertex_reduced(&lam, qmax as u32).agrees_with(&hook_series(&lam, qmax)) {
                f.push(format!("{}", lam));
            }
        }
    }
    Outcome::new("enumerated vertex / M(-q) is the hook product", f)
}

pub fn degree0(gmax: u32, qmax: i64) -> Vec<Outcome> {
    use crate::tqft::degree0 as z;
    let mut cut = Vec::new();
    let mut handle = Vec::new();
    let mut base = Vec::new();
    let ts = RatFunc::t1().add(&RatFunc::t2());
    let x = ts.mul(&ts).mul(&RatFunc::t_power(-1, -1));
    let m = macmahon_neg(qmax);
    for k in -2..=2i64 {
        let e0 = x.scale(&Q::from_integer((-2).into())).sub(&RatFunc::from_int(k));
        if z(0, k, 0, 0, qmax) != m.pow_exponent(&e0).expect("unit constant term") {
            base.push(format!("r=0 k={}", k));
        }
        let e1 = x.neg().sub(&RatFunc::from_int(k));
        if z(0, 0, k, 1, qmax) != m.pow_exponent(&e1).expect("unit constant term") {
            base.push(format!("r=1 k={}", k));
        }
    }
    for g in 0..=gmax {
        for r in 0..=3u32 {
            for k1 in -2..=2i64 {
                for k2 in -2..=2i64 {
                    let whole = z(g, k1, k2, r, qmax);
                    if g > 0 && whole != z(g - 1, k1, k2, r + 2, qmax) {
                        handle.push(format!("g={} r={} k=({},{})", g, r, k1, k2));
                    }
                    for g1 in 0..=g {
                        for r1 in 0..=r {
                            let split = z(g1, k1, k2 - 1, r1 + 1, qmax).mul(&z(g - g1, 0, 1, r - r1 + 1, qmax));
                            if whole != split {
                                cut.push(format!("g={} r={} k=({},{}) at g'={} r'={}", g, r, k1, k2, g1, r1));
                            }
                        }
                    }
                }
            }
        }
    }
    alloc::vec![
        Outcome::new("localization values at r = 0, 1", base),
        Outcome::new("separating degeneration", cut),
        Outcome::new("genus reduction", handle),
    ]
}

pub fn operators(dmax: u32, qmax: i64) -> Vec<Outcome> {
    let mut adj = Vec::new();
    let mut zero = Vec::new();
    let mut anti = Vec::new();
    let ts = RatFunc::t1().add(&RatFunc::t2());
    for d in 0..=dmax {
        let m = operator_m(d, qmax);
        let a = m.adjoint();
        let ms = operator_msigma(d, qmax);
        let ms0 = ms.at_q_zero();
        for mu in gen_partitions(d) {
            for nu in gen_partitions(d) {
                if !m.entry(&mu, &nu).agrees_with(&a.entry(&mu, &nu)) {
                    adj.push(format!("({}, {})", mu, nu));
                }
                let dq = ms.entry(&mu, &nu).sub(&Series::constant(ms0.entry(&mu, &nu), EXACT));
                let ok = (0..=qmax).all(|n| dq.coeff(n).anti_diagonal().map(|c| c.is_zero()).unwrap_or(false));
                if !ok {
                    anti.push(format!("({}, {})", mu, nu));
                }
            }
        }
        let shift = FockOperator::identity(d).scale(&ts.scale(&Q::new((d as i64).into(), 2.into())));
        let want = operator_d_classical(d).sub(&shift);
        if operator_m_at_zero(d) != want || m.at_q_zero() != want {
            zero.push(format!("d={}", d));
        }
    }
    alloc::vec![
        Outcome::new("M is self-adjoint", adj),
        Outcome::new("M(0) is classical D shifted by -(t1+t2)d/2", zero),
        Outcome::new("M_sigma - M_sigma(0) vanishes at t2 = -t1", anti),
    ]
}

/// `Σ R(μ_i) = R(μ) - (ℓ-1)(t1+t2)Φ` with `R(μ) = ⟨μ|M_σ|μ⟩/⟨μ|μ⟩`.
pub fn additivity(dmax: u32, qmax: i64) -> Outcome {
    let ts = RatFunc::t1().add(&RatFunc::t2());
    let phi = crate::algebra::phi(qmax);
    let r = |mu: &Partition| operator_msigma(mu.size(), qmax).entry(mu, mu);
    let mut f = Vec::new();
    for d in 1..=dmax {
        for mu in gen_partitions(d) {
            let mut lhs = Series::zero(qmax);
            for &k in mu.parts() {
                lhs = lhs.add(&r(&Partition::row(k)));
            }
            let l = mu.len() as i64 - 1;
            let rhs = r(&mu).sub(&phi.scale(&ts.mul(&RatFunc::from_int(l))));
            if !lhs.agrees_with(&rhs) {
                f.push(format!("{}", mu));
            }
        }
    }
    Outcome::new("M_sigma additivity", f)
}

/// Largest degree for the residual taken directly in the Nakajima basis.
pub const NAKAJIMA_DMAX: u32 = 2;

pub fn rubber_ode(dmax: u32, qmax: i64) -> Vec<Outcome> {
    let ts = RatFunc::t1().add(&RatFunc::t2());
    let ode = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        for d in 0..=dmax {
            let frame = Eigenframe::new(d);
            if !frame.is_inverse_pair() {
                f.push(format!("P P^-1 d={}", d));
            }
            let tilde = s_tilde(&frame, qmax)?;
            if ode_residual_eigen(&frame, &tilde).iter().any(|m| !m.is_zero()) {
                f.push(format!("residual d={}", d));
            }
        }
        Ok(f)
    })();
    let nakajima = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        for d in 0..=dmax.min(NAKAJIMA_DMAX) {
            let s = operator_s(d, qmax)?;
            if !ode_residual(&s, qmax).is_zero() {
                f.push(format!("residual d={}", d));
            }
            if s.at_q_zero() != FockOperator::identity(d) {
                f.push(format!("S(0) d={}", d));
            }
        }
        Ok(f)
    })();
    let small = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        let want0 = macmahon_neg(qmax).pow_exponent(&ts.neg())?;
        if !empty_rubber(qmax).agrees_with(&want0) {
            f.push("d=0".to_string());
        }
        let one = Partition::ones(1);
        let want1 = Series::from_poly(alloc::vec![RatFunc::one(), RatFunc::one()], qmax).pow_exponent(&ts)?;
        if !operator_s(1, qmax)?.entry(&one, &one).agrees_with(&want1) {
            f.push("d=1".to_string());
        }
        Ok(f)
    })();
    alloc::vec![
        Outcome::from_result("q dS/dq = MS - SM(0) in the fixed-point frame", ode),
        Outcome::from_result("q dS/dq = MS - SM(0) in the Nakajima basis", nakajima),
        Outcome::from_result("degree 0 and 1 closed forms", small),
    ]
}

pub fn fixed_points(dmax: u32) -> Vec<Outcome> {
    let mut orth = Vec::new();
    let mut hook = Vec::new();
    for d in 0..=dmax {
        let classes = fixed_point_classes(d);
        for (mu, a) in &classes {
            let e = euler_class(mu);
            let idem = a.scale(&e.inv().expect("nonzero Euler class"));
            for (nu, b) in &classes {
                let v = pairing(&idem, &b.scale(&euler_class(nu).inv().expect("nonzero"))).expect("same degree");
                let want = if mu == nu { e.inv().expect("nonzero") } else { RatFunc::zero() };
                if v != want {
                    orth.push(format!("({}, {})", mu, nu));
                }
            }
            let hp = Q::from_integer(mu.hook_product());
            for lam in gen_partitions(d) {
                let got = pairing(a, &FockVector::basis(&lam)).expect("same degree");
                let c = character(mu, &lam).expect("same size") * &hp / lam.zee();
                let want = RatFunc::t_power(0, d as i64 - lam.len() as i64).scale(&c);
                if got.anti_diagonal().ok() != want.anti_diagonal().ok() {
                    hook.push(format!("({}, {})", mu, lam));
                }
            }
        }
    }
    alloc::vec![
        Outcome::new("idempotents are orthogonal with self-pairing 1/e", orth),
        Outcome::new("character and hook pairing at t2 = -t1", hook),
    ]
}

pub fn vertex(dmax: u32, qmax: i64) -> Vec<Outcome> {
    let cap = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        for d in 1..=dmax {
            let v = solve_vertex_split(d, qmax)?;
            let ratios = rubber_ratios(d, qmax)?;
            for lam in gen_partitions(d) {
                let rhs = cap_m10_rhs_split(&lam, &v, &ratios)?.map(|c| c.to_ratfunc());
                let lhs = cap_m10_lhs(&lam, rhs.truncation());
                if rhs.truncation() < qmax || !rhs.agrees_with(&lhs) {
                    f.push(format!("{}", lam));
                }
                if !rhs.stored().iter().all(|c| c.is_constant()) {
                    f.push(format!("{} not constant", lam));
                }
            }
        }
        Ok(f)
    })();
    let deg1 = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        let w = &solve_vertex(1, qmax)?[0];
        if w.value != closed_vertex_deg1_reduced(&Weights::solver(), qmax)? {
            f.push("solver frame".to_string());
        }
        if w.to_general().value != closed_vertex_deg1_reduced(&Weights::general(), qmax)? {
            f.push("general frame".to_string());
        }
        Ok(f)
    })();
    let cy = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        for d in 2..=dmax {
            for w in solve_vertex(d, qmax)? {
                if !w.calabi_yau()?.agrees_with(&hook_series(&w.profile, qmax)) {
                    f.push(format!("{}", w.profile));
                }
            }
        }
        Ok(f)
    })();
    alloc::vec![
        Outcome::from_result("solved vertex reproduces the (-1,0) cap", cap),
        Outcome::from_result("degree 1 vertex closed form", deg1),
        Outcome::from_result("Calabi-Yau specialization is the hook product", cy),
    ]
}

pub fn gw_dt(dmax: u32, qmax: i64) -> Outcome {
    let r = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        for d in 1..=dmax {
            let caps = cap_m10(d, qmax);
            for lam in gen_partitions(d) {
                let star = to_starred(0, -1, 0, d, &caps.entry(&[&lam])?);
                if !star.agrees_with(&gw_star_cap_m10(&lam, qmax)?) {
                    f.push(format!("{}", lam));
                }
            }
        }
        Ok(f)
    })();
    Outcome::from_result("starred (-1,0) caps match", r)
}

pub fn tqft_gluing(dmax: u32, qmax: i64) -> Vec<Outcome> {
    let mut basic = Vec::new();
    for d in 0..=dmax {
        let t = tube(d, qmax);
        let c = cap00(d, qmax);
        let one = Partition::ones(d);
        for a in gen_partitions(d) {
            for b in gen_partitions(d) {
                if t.entry(&[&a, &b]).ok() != Some(delta_series(&a, &b, &RatFunc::one(), qmax)) {
                    basic.push(format!("tube ({}, {})", a, b));
                }
            }
            if c.entry(&[&a]).ok() != Some(delta_series(&a, &one, &norm(&one), qmax)) {
                basic.push(format!("cap {}", a));
            }
        }
    }
    let pants = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        for d in 1..=dmax {
            let th = Theory::new(d, qmax)?;
            let b = th.pants();
            let pd = pants_d(d, qmax);
            let one = Partition::ones(d);
            let dp = (d >= 2).then(|| {
                let mut v = alloc::vec![2];
                v.extend(core::iter::repeat_n(1, d as usize - 2));
                Partition::new(v)
            });
            for a in gen_partitions(d) {
                for c in gen_partitions(d) {
                    if !b.entry(&[&a, &one, &c])?.agrees_with(&delta_series(&a, &c, &norm(&a), qmax)) {
                        f.push(format!("unit ({}, {})", a, c));
                    }
                    if let Some(dp) = &dp {
                        if !b.entry(&[&a, dp, &c])?.neg().agrees_with(&pd.entry(&[&a, &c])?) {
                            f.push(format!("D slot ({}, {})", a, c));
                        }
                    }
                    for e in gen_partitions(d) {
                        let x = b.entry(&[&a, &c, &e])?;
                        if !x.agrees_with(&b.entry(&[&c, &e, &a])?) || !x.agrees_with(&b.entry(&[&c, &a, &e])?) {
                            f.push(format!("symmetry ({}, {}, {})", a, c, e));
                        }
                    }
                }
            }
        }
        Ok(f)
    })();
    let decomp = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        let mut cases: Vec<(u32, u32, i64, i64)> = alloc::vec![(1, 1, 0, 0), (1, 2, 0, 0), (2, 1, 0, 0)];
        for d in 1..=dmax {
            cases.push((1, d, -1, 0));
            cases.push((2, d, 0, 0));
            cases.push((0, d, 1, -1));
        }
        for (g, d, k1, k2) in cases {
            if d > dmax.max(2) {
                continue;
            }
            let th = Theory::new(d, qmax)?;
            let insertion_sets: Vec<Vec<Partition>> = alloc::vec![
                alloc::vec![],
                gen_partitions(d).into_iter().take(1).collect(),
                gen_partitions(d).into_iter().rev().take(2).collect(),
            ];
            for ins in insertion_sets {
                let a = th.evaluate(g, k1, k2, &ins, Decomposition::Operators)?;
                let b = th.evaluate(g, k1, k2, &ins, Decomposition::Tensors)?;
                if !a.agrees_with(&b) {
                    f.push(format!("g={} d={} k=({},{}) {} insertions", g, d, k1, k2, ins.len()));
                }
            }
        }
        Ok(f)
    })();
    let levels = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        for d in 1..=dmax {
            let th = Theory::new(d, qmax)?;
            let t = th.tubes();
            let n = gen_partitions(d).len();
            for (a, b, name) in [
                (&t.minus_one_zero, &t.one_zero, "(1,0)o(-1,0)"),
                (&t.zero_minus_one, &t.zero_one, "(0,1)o(0,-1)"),
            ] {
                let prod = b.to_operator().mul(&a.to_operator());
                for i in 0..n {
                    for j in 0..n {
                        let want = if i == j { Series::one(qmax) } else { Series::zero(qmax) };
                        let x = prod.get(i, j);
                        if x.truncation() < qmax || !x.agrees_with(&want) {
                            f.push(format!("{} d={}", name, d));
                        }
                    }
                }
            }
        }
        Ok(f)
    })();
    alloc::vec![
        Outcome::new("tube is the identity and level (0,0) cap values", basic),
        Outcome::from_result("pair of pants unit axiom, D slot and symmetry", pants),
        Outcome::from_result("assembly is independent of the decomposition", decomp),
        Outcome::from_result("level tubes compose to the identity", levels),
    ]
}

/// A rational function fitted on half the coefficients predicts the rest.
fn fits(s: &Series) -> bool {
    fit_rational(s).is_some()
}

/// `t2^{-ℓ}/𝔷(λ)` over the polynomial `Π (1 - (-q)^{λ_i})`, expanded by series inversion.
fn cap_m10_rational(lam: &Partition, qmax: i64) -> Result<Series, Error> {
    let mut den = alloc::vec![Q::from_integer(1.into())];
    for &k in lam.parts() {
        let k = k as usize;
        let mut next = den.clone();
        next.resize(den.len() + k, Q::from_integer(0.into()));
        let sign = Q::from_integer(if k.is_multiple_of(2) { -1 } else { 1 }.into());
        for (i, c) in den.iter().enumerate() {
            next[i + k] += c * &sign;
        }
        den = next;
    }
    let den = Series::from_poly(den.into_iter().map(RatFunc::constant).collect(), qmax);
    let top = RatFunc::t_power(0, -(lam.len() as i64)).scale(&lam.zee().recip());
    Ok(den.inv()?.scale(&top))
}

pub fn rationality(dmax: u32, qmax: i64) -> Vec<Outcome> {
    let closed = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        for d in 1..=dmax.max(1) {
            let caps = cap_m10(d, qmax);
            for lam in gen_partitions(d) {
                let c = caps.entry(&[&lam])?;
                let want = cap_m10_rational(&lam, qmax)?;
                if !c.agrees_with(&want) || !fits(&c) {
                    f.push(format!("(-1,0) cap {}", lam));
                }
            }
        }
        let th = Theory::new(1, qmax)?;
        // degree 1: every DT(g|k1,k2)_{(1)^r} is t1^a t2^b (1+q)^c
        for (g, k1, k2) in [(0, -1, 0), (1, 0, 0), (2, 0, 0), (0, -1, -1), (1, -1, 0)] {
            let v = th.evaluate(g, k1, k2, &[], Decomposition::Operators)?;
            if !fits(&v) {
                f.push(format!("degree 1 g={} k=({},{})", g, k1, k2));
            }
        }
        let w = closed_vertex_deg1_reduced(
            &Weights::new(RatFunc::s(), RatFunc::t1().sub(&RatFunc::s()), RatFunc::t1().neg()),
            qmax,
        )?;
        let want = Series::from_poly(alloc::vec![RatFunc::one(), RatFunc::one()], qmax).inv()?;
        if !w.agrees_with(&want) {
            f.push("degree 1 Calabi-Yau vertex".to_string());
        }
        Ok(f)
    })();
    let pants = (|| -> Result<Vec<String>, Error> {
        let mut f = Vec::new();
        let b = Theory::new(2, qmax)?.pants();
        let ps = gen_partitions(2);
        for a in &ps {
            for c in &ps {
                for e in &ps {
                    let x = b.entry(&[a, c, e])?;
                    if !x.is_zero() && !fits(&x) {
                        f.push(format!("({}, {}, {})", a, c, e));
                    }
                }
            }
        }
        Ok(f)
    })();
    alloc::vec![
        Outcome::from_result("closed rational forms", closed),
        Outcome::from_result("degree 2 pants fit on half the coefficients", pants),
    ]
}

pub fn descendents(qmax: i64) -> Vec<Outcome> {
    let empty = (|| -> Result<Vec<String>, Error> {
        Ok(if sigma1_empty_bracket(qmax)?.agrees_with(&sigma1_empty_closed(qmax)) {
            Vec::new()
        } else {
            alloc::vec!["empty bracket".to_string()]
        })
    })();
    let deg1 = (|| -> Result<Vec<String>, Error> {
        Ok(if sigma1_degree1_ratio(qmax)?.agrees_with(&sigma1_degree1_closed(qmax)?) {
            Vec::new()
        } else {
            alloc::vec!["degree 1 ratio".to_string()]
        })
    })();
    alloc::vec![
        Outcome::from_result("degree 0 descendent", empty),
        Outcome::from_result("degree 1 descendent", deg1),
    ]
}
