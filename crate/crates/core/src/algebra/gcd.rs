//! Multivariate gcd over the rationals: content extraction plus subresultant remainder sequences.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::poly::{Mono, MultiPoly, Var};
use crate::algebra::Q;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.meet(&mb);
    let a1 = a.div_mono(&ma);
    let b1 = b.div_mono(&mb);
    let g = gcd_no_mono(&a1, &b1);
    g.mul_mono(&mg)
}

fn gcd_no_mono(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.monic();
    }
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.total_degree() <= big.total_degree() && big.div_exact(small).is_some() {
        return small.monic();
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g.monic();
    }
    // A variable present in only one argument can be eliminated through contents.
    for v in Var::ALL {
        let in_a = a.contains_var(v);
        let in_b = b.contains_var(v);
        if in_a && !in_b {
            let c = content_in(a, v);
            return gcd(&c, b);
        }
        if in_b && !in_a {
            let c = content_in(b, v);
            return gcd(a, &c);
        }
    }
    let common: Vec<Var> = Var::ALL
        .iter()
        .copied()
        .filter(|v| a.contains_var(*v))
        .collect();
    if common.is_empty() {
        return MultiPoly::one();
    }
    if common.len() == 1 {
        return univariate_gcd(a, b, common[0]);
    }
    let x = *common
        .iter()
        .min_by_key(|v| a.degree_in(**v).max(b.degree_in(**v)))
        .unwrap();
    let ca = a.coeffs_in(x);
    let cb = b.coeffs_in(x);
    let conta = content_of(&ca);
    let contb = content_of(&cb);
    let pa: Vec<MultiPoly> = ca
        .iter()
        .map(|c| c.div_exact(&conta).expect("content divides"))
        .collect();
    let pb: Vec<MultiPoly> = cb
        .iter()
        .map(|c| c.div_exact(&contb).expect("content divides"))
        .collect();
    let cg = gcd(&conta, &contb);
    let prs = subresultant_gcd(pa, pb);
    let pp = primitive_part(prs);
    MultiPoly::from_coeffs_in(x, &pp).mul(&cg).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &MultiPoly, v: Var) -> MultiPoly {
    content_of(&p.coeffs_in(v))
}

fn content_of(cs: &[MultiPoly]) -> MultiPoly {
    let mut nonzero: Vec<&MultiPoly> = cs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| c.len());
    let mut g = MultiPoly::zero();
    for c in nonzero {
        g = gcd(&g, c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

fn primitive_part(p: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let c = content_of(&p);
    if c.is_one() || c.is_zero() {
        return p;
    }
    p.iter()
        .map(|x| x.div_exact(&c).expect("content divides"))
        .collect()
}

fn trim(p: &mut Vec<MultiPoly>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let n = b.len() - 1;
    let lc = &b[n];
    let mut r: Vec<MultiPoly> = a.to_vec();
    let m = r.len() - 1;
    let mut i = m;
    loop {
        let c = r[i].clone();
        for x in r.iter_mut().take(i + 1) {
            *x = x.mul(lc);
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let k = j + i - n;
                r[k] = r[k].sub(&c.mul(bj));
            }
        }
        r.truncate(i);
        if i == n {
            break;
        }
        i -= 1;
    }
    trim(&mut r);
    r
}

fn subresultant_gcd(a: Vec<MultiPoly>, b: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return alloc::vec![MultiPoly::one()];
        }
        let div = g.mul(&h.pow(delta));
        a = b;
        b = r
            .iter()
            .map(|c| c.div_exact(&div).expect("subresultant division is exact"))
            .collect();
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact"),
        };
    }
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, x: Var) -> MultiPoly {
    let to_dense = |p: &MultiPoly| -> Vec<Q> {
        let mut v = alloc::vec![Q::zero(); p.degree_in(x) as usize + 1];
        for (m, c) in p.terms() {
            v[m.0[x.index()] as usize] = c.clone();
        }
        v
    };
    let mut u = to_dense(a);
    let mut w = to_dense(b);
    if u.len() < w.len() {
        core::mem::swap(&mut u, &mut w);
    }
    while !w.is_empty() {
        let r = dense_rem(&u, &w);
        u = w;
        w = r;
    }
    let lc = u.last().unwrap().clone();
    let terms = u
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut e = [0u32; 3];
            e[x.index()] = i as u32;
            (Mono(e), c / &lc)
        })
        .collect();
    MultiPoly::from_terms(terms)
}

fn dense_rem(u: &[Q], w: &[Q]) -> Vec<Q> {
    let mut r = u.to_vec();
    let n = w.len() - 1;
    let lci = w[n].recip();
    while r.len() > n {
        let i = r.len() - 1;
        let c = &r[i] * &lci;
        if !c.is_zero() {
            for (j, wj) in w.iter().enumerate() {
                let k = j + i - n;
                r[k] = &r[k] - &c * wj;
            }
        }
        r.pop();
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    if r.iter().all(|c| c.is_zero()) {
        r.clear();
    }
    r
}

/// Least common multiple, monic.
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let g = gcd(a, b);
    a.div_exact(&g).expect("gcd divides").mul(b).monic()
}

// Heuristic gcd: evaluate one variable at a large integer, recurse, and lift
// the image back by balanced ξ-adic expansion. A lifted candidate dividing both
// inputs is the gcd; otherwise the caller falls back to remainder sequences.

const HEU_ATTEMPTS: usize = 6;
const HEU_MAX_BITS: u64 = 400_000;

fn heuristic_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let (_, pa) = integer_primitive(a);
    let (_, pb) = integer_primitive(b);
    heu(&pa, &pb)
}

/// `(c, p)` with `a = c * p`, `p` having coprime integer coefficients.
fn integer_primitive(a: &MultiPoly) -> (Q, MultiPoly) {
    let mut den = BigInt::one();
    for (_, c) in a.terms() {
        den = den.lcm(c.denom());
    }
    let mut num = BigInt::zero();
    for (_, c) in a.terms() {
        num = num.gcd(&(c.numer() * (&den / c.denom())));
    }
    if num.is_zero() {
        return (Q::one(), a.clone());
    }
    let c = Q::new(num, den);
    (c.clone(), a.scale(&c.recip()))
}

fn int_content(a: &MultiPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in a.terms() {
        g = g.gcd(c.numer());
        if g.is_one() {
            break;
        }
    }
    g
}

fn max_norm(a: &MultiPoly) -> BigInt {
    a.terms()
        .iter()
        .map(|(_, c)| c.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

fn heu(f: &MultiPoly, g: &MultiPoly) -> Option<MultiPoly> {
    if f.is_zero() {
        return Some(g.clone());
    }
    if g.is_zero() {
        return Some(f.clone());
    }
    let cf = int_content(f);
    let cg = int_content(g);
    let c = cf.gcd(&cg);
    let f = f.scale(&Q::from(cf).recip());
    let g = g.scale(&Q::from(cg).recip());
    let v = match Var::ALL
        .iter()
        .copied().rfind(|v| f.contains_var(*v) || g.contains_var(*v))
    {
        Some(v) => v,
        None => return Some(MultiPoly::constant(Q::from(c))),
    };
    let deg = f.degree_in(v).max(g.degree_in(v)) as u64;
    let mut xi = BigInt::from(2) * max_norm(&f).min(max_norm(&g)) + BigInt::from(29);
    for _ in 0..HEU_ATTEMPTS {
        if xi.bits() * (deg + 1) > HEU_MAX_BITS {
            return None;
        }
        let fe = eval_at(&f, v, &xi);
        let ge = eval_at(&g, v, &xi);
        let h = heu(&fe, &ge)?;
        let cand = lift(&h, v, &xi);
        if !cand.is_zero() {
            let cand = cand.scale(&Q::from(int_content(&cand)).recip());
            if f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                return Some(cand.scale(&Q::from(c)));
            }
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

fn eval_at(p: &MultiPoly, v: Var, x: &BigInt) -> MultiPoly {
    let k = v.index();
    let mut powers: Vec<BigInt> = alloc::vec![BigInt::one()];
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let e = m.0[k] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * x;
                powers.push(next);
            }
            let mut m2 = *m;
            m2.0[k] = 0;
            (m2, c * Q::from(powers[e].clone()))
        })
        .collect();
    MultiPoly::from_terms(terms)
}

fn lift(h: &MultiPoly, v: Var, x: &BigInt) -> MultiPoly {
    let k = v.index();
    let half = x / BigInt::from(2);
    let mut cur: Vec<(Mono, BigInt)> = h.terms().iter().map(|(m, c)| (*m, c.numer().clone())).collect();
    let mut out: Vec<(Mono, Q)> = Vec::new();
    let mut i = 0u32;
    while !cur.is_empty() {
        let mut next = Vec::with_capacity(cur.len());
        for (m, c) in cur {
            let mut r = c.mod_floor(x);
            if r > half {
                r -= x;
            }
            if !r.is_zero() {
                let mut m2 = m;
                m2.0[k] = i;
                out.push((m2, Q::from(r.clone())));
            }
            let q = (c - r) / x;
            if !q.is_zero() {
                next.push((m, q));
            }
        }
        cur = next;
        i += 1;
    }
    MultiPoly::from_terms(out)
}
