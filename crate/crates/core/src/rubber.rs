//! The rubber operator `S` and the regrading `1/(1-ψ∞) → 1/(z-ψ∞)`.
//!
//! `S = Id + O(q)` solves `q dS/dq = M S - S M(0)`. Only the diagonal of `M`
//! depends on `q`, so each order reduces to `(n - ad_{M(0)}) S_n = Σ_{k≥1} M_k S_{n-k}`.

use alloc::vec::Vec;

use crate::algebra::linalg::{solve, Mat};
use crate::algebra::{macmahon_neg, MultiPoly, RatFunc, Ring, Series, SplitFrac, Var, EXACT, Q};
use crate::fock::{norm, operator_m, operator_m_at_zero, Coeff, FockOperator, FockVector};
use crate::partitions::{Basis, Partition};
use crate::symfunc::{fixed_point_classes, tangent_weights};
use crate::Error;

/// Fixed-point eigenbasis of `M(0)` in degree `d`.
///
/// The columns of `p` are the classes `[I_μ]` in `gen_partitions` order; they
/// diagonalize `M(0)` with eigenvalue `-c(μ) - (t1 + t2) d/2`.
#[derive(Clone, Debug)]
pub struct Eigenframe {
    pub partitions: Vec<Partition>,
    pub p: Mat<SplitFrac>,
    pub p_inv: Mat<SplitFrac>,
    pub contents: Vec<MultiPoly>,
}

impl Eigenframe {
    pub fn new(d: u32) -> Self {
        let basis = Basis::new(d);
        let n = basis.len();
        let classes = fixed_point_classes(d);
        let p = Mat::from_fn(n, n, |i, j| split(&classes[j].1.coeff(basis.get(i))));
        // P^T N P = diag(e), so P^{-1} = diag(1/e) P^T N
        let inv_e: Vec<SplitFrac> = classes
            .iter()
            .map(|(mu, _)| {
                let ws: Vec<MultiPoly> = tangent_weights(mu).iter().map(|w| w.num().clone()).collect();
                SplitFrac::inv_product(&ws).expect("tangent weights are nonzero linear forms")
            })
            .collect();
        let norms: Vec<SplitFrac> = basis.partitions().iter().map(|mu| split(&norm(mu))).collect();
        let p_inv = Mat::from_fn(n, n, |i, j| {
            Ring::mul(&Ring::mul(p.get(j, i), &norms[j]), &inv_e[i]).reduced()
        });
        let contents = classes.iter().map(|(mu, _)| mu.content_sum().num().clone()).collect();
        Eigenframe {
            partitions: classes.into_iter().map(|(mu, _)| mu).collect(),
            p,
            p_inv,
            contents,
        }
    }

    /// `P P^{-1} = Id`.
    pub fn is_inverse_pair(&self) -> bool {
        let n = self.partitions.len();
        reduce_all(self.p.mul(&self.p_inv)) == Mat::identity(n)
    }
}

fn split(r: &RatFunc) -> SplitFrac {
    SplitFrac::from_ratfunc(r, &[]).expect("denominator splits into linear forms")
}

fn reduce_all(m: Mat<SplitFrac>) -> Mat<SplitFrac> {
    m.map(|x| x.clone().reduced())
}

/// `S` in the eigenbasis: `S~_n = P^{-1} S_n P`, for `n = 0..=trunc`.
pub fn s_tilde(frame: &Eigenframe, trunc: i64) -> Result<Vec<Mat<SplitFrac>>, Error> {
    let n = frame.partitions.len();
    let d = frame.partitions.first().map(|p| p.size()).unwrap_or(0);
    let m = operator_m(d, trunc);
    let delta: Vec<Mat<SplitFrac>> = (0..=trunc.max(0))
        .map(|k| {
            if k == 0 {
                return Mat::zeros(n, n);
            }
            let dk = Mat::from_fn(n, n, |i, j| {
                if i == j {
                    split(&m.mat().get(i, i).coeff(k))
                } else {
                    SplitFrac::zero()
                }
            });
            reduce_all(frame.p_inv.mul(&dk).mul(&frame.p))
        })
        .collect();
    let mut tilde: Vec<Mat<SplitFrac>> = alloc::vec![Mat::identity(n)];
    for order in 1..=trunc {
        let mut rhs: Mat<SplitFrac> = Mat::zeros(n, n);
        for k in 1..=order {
            if !delta[k as usize].is_zero() {
                rhs = rhs.add(&delta[k as usize].mul(&tilde[(order - k) as usize]));
            }
        }
        let nn = MultiPoly::from_int(order);
        let mut next = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let r = rhs.get(i, j);
                if r.is_zero() {
                    continue;
                }
                // Λ_i - Λ_j = c(μ_j) - c(μ_i)
                let den = nn.sub(&frame.contents[j]).add(&frame.contents[i]);
                next.set(i, j, r.div_linear(&den).ok_or(Error::Singular)?.reduced());
            }
        }
        tilde.push(next);
    }
    Ok(tilde)
}

/// Coefficient matrices `S_0 = Id, S_1, …, S_trunc` in the Nakajima basis.
pub fn s_coefficients_split(d: u32, trunc: i64) -> Result<Vec<Mat<SplitFrac>>, Error> {
    let frame = Eigenframe::new(d);
    let tilde = s_tilde(&frame, trunc)?;
    Ok(tilde
        .iter()
        .map(|x| reduce_all(frame.p.mul(x).mul(&frame.p_inv)))
        .collect())
}

pub fn s_coefficients(d: u32, trunc: i64) -> Result<Vec<Mat<RatFunc>>, Error> {
    Ok(s_coefficients_split(d, trunc)?
        .iter()
        .map(|m| m.map(|x| x.to_ratfunc()))
        .collect())
}

/// Coefficient matrices `M_0, …, M_trunc` of `M` in the Nakajima basis.
pub fn m_coefficients(d: u32, trunc: i64) -> Vec<Mat<SplitFrac>> {
    let n = Basis::new(d).len();
    let m = operator_m(d, trunc);
    (0..=trunc.max(0))
        .map(|k| Mat::from_fn(n, n, |i, j| split(&m.mat().get(i, j).coeff(k))))
        .collect()
}

/// The same coefficients conjugated into the eigenbasis, `P^{-1} M_k P`.
pub fn m_coefficients_eigen(frame: &Eigenframe, trunc: i64) -> Vec<Mat<SplitFrac>> {
    let d = frame.partitions.first().map(|p| p.size()).unwrap_or(0);
    m_coefficients(d, trunc)
        .iter()
        .map(|m| reduce_all(frame.p_inv.mul(m).mul(&frame.p)))
        .collect()
}

/// Coefficients of `q dS/dq - M S + S M_0`, with `M` and `S` given in one common basis.
pub fn ode_residual_coefficients(m: &[Mat<SplitFrac>], s: &[Mat<SplitFrac>]) -> Vec<Mat<SplitFrac>> {
    (0..s.len())
        .map(|order| {
            let mut r = s[order].scale(&SplitFrac::constant(Q::from_integer((order as i64).into())));
            for k in 0..=order {
                r = r.sub(&m[k].mul(&s[order - k]));
            }
            r.add(&s[order].mul(&m[0]))
        })
        .collect()
}

/// `P^{-1} (q dS/dq - M S + S M(0)) P` order by order, with `M` conjugated from the Nakajima basis.
///
/// Vanishes exactly when the Nakajima-basis residual does, since `P` is invertible.
pub fn ode_residual_eigen(frame: &Eigenframe, tilde: &[Mat<SplitFrac>]) -> Vec<Mat<SplitFrac>> {
    let trunc = tilde.len() as i64 - 1;
    let m = m_coefficients_eigen(frame, trunc);
    ode_residual_coefficients(&m, tilde)
        .into_iter()
        .map(reduce_all)
        .collect()
}

/// Same coefficients by one flat `N² × N²` solve per order in the Nakajima basis.
pub fn s_coefficients_flat(d: u32, trunc: i64) -> Result<Vec<Mat<RatFunc>>, Error> {
    let basis = Basis::new(d);
    let n = basis.len();
    let m0 = operator_m_at_zero(d).into_mat();
    let m = operator_m(d, trunc);
    // q-parts of the diagonal, M_k for k ≥ 1
    let diag: Vec<Vec<RatFunc>> = (0..n)
        .map(|i| {
            let e = m.mat().get(i, i);
            (0..=trunc.max(0)).map(|k| e.coeff(k)).collect()
        })
        .collect();
    let mut out: Vec<Mat<RatFunc>> = alloc::vec![Mat::identity(n)];
    for order in 1..=trunc {
        let rhs = Mat::from_fn(n, n, |i, j| {
            let mut acc = RatFunc::zero();
            for k in 1..=order {
                let mk = &diag[i][k as usize];
                if mk.is_zero() {
                    continue;
                }
                let prev = out[(order - k) as usize].get(i, j);
                if !prev.is_zero() {
                    acc = acc.add(&mk.mul(prev));
                }
            }
            acc
        });
        out.push(solve_sylvester(&m0, order, &rhs)?);
    }
    Ok(out)
}

/// Solves `n X - M0 X + X M0 = R` as one flat system in the `N²` entries of `X`.
fn solve_sylvester(m0: &Mat<RatFunc>, order: i64, rhs: &Mat<RatFunc>) -> Result<Mat<RatFunc>, Error> {
    let n = m0.rows();
    if rhs.is_zero() {
        return Ok(Mat::zeros(n, n));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut a: Mat<RatFunc> = Mat::zeros(n * n, n * n);
    let nn = RatFunc::from_int(order);
    for i in 0..n {
        for j in 0..n {
            let r = idx(i, j);
            let mut diag = nn.clone();
            for k in 0..n {
                let mik = m0.get(i, k);
                if !mik.is_zero() {
                    if k == i {
                        diag = diag.sub(mik);
                    } else {
                        let c = a.get(r, idx(k, j)).sub(mik);
                        a.set(r, idx(k, j), c);
                    }
                }
                let mkj = m0.get(k, j);
                if !mkj.is_zero() {
                    if k == j {
                        diag = diag.add(mkj);
                    } else {
                        let c = a.get(r, idx(i, k)).add(mkj);
                        a.set(r, idx(i, k), c);
                    }
                }
            }
            let c = a.get(r, r).add(&diag);
            a.set(r, r, c);
        }
    }
    let b = Mat::from_fn(n * n, 1, |r, _| rhs.get(r / n, r % n).clone());
    let x = solve(&a, &b)?;
    Ok(Mat::from_fn(n, n, |i, j| x.get(idx(i, j), 0).clone()))
}

/// The operator `S` through `q^trunc`.
pub fn operator_s(d: u32, trunc: i64) -> Result<FockOperator<Series>, Error> {
    let coeffs = s_coefficients(d, trunc)?;
    let basis = Basis::new(d);
    let n = basis.len();
    let mat = Mat::from_fn(n, n, |i, j| {
        Series::from_poly(coeffs.iter().map(|c| c.get(i, j).clone()).collect(), trunc)
    });
    Ok(FockOperator::from_mat(basis, mat))
}

/// `q dS/dq - (M S - S M(0))`, identically zero for the true solution.
pub fn ode_residual(s: &FockOperator<Series>, trunc: i64) -> FockOperator<Series> {
    let d = s.degree();
    let m = operator_m(d, trunc);
    let m0 = operator_m_at_zero(d).map(Series::from_ratfunc);
    let lhs = s.map(|x| x.qderiv());
    lhs.sub(&m.compose(s).sub(&s.compose(&m0)))
}

/// `q^d ⟨λ| S |class⟩`: the rubber series `⟨class|1/(1-ψ∞)|λ⟩~` divided by its degree-0 value.
pub fn rubber_bracket(s: &FockOperator<Series>, class: &FockVector<RatFunc>, lambda: &Partition) -> Series {
    let d = s.degree();
    let mut acc = Series::zero(EXACT);
    for (nu, c) in class.terms() {
        let e = s.entry(lambda, nu);
        if e.is_zero() {
            continue;
        }
        acc = acc.add(&e.scale(c));
    }
    acc.scale(&norm(lambda)).shift(d as i64)
}

/// A rubber series whose coefficients have `(t1, t2)`-degree at least `base`.
#[derive(Clone, PartialEq, Debug)]
pub struct RubberSeries {
    value: Series,
    base: i64,
}

impl RubberSeries {
    /// Checks the homogeneity ladder on every coefficient.
    pub fn new(value: Series, base: i64) -> Result<Self, Error> {
        check_ladder(&value, base)?;
        Ok(RubberSeries { value, base })
    }

    pub fn value(&self) -> &Series {
        &self.value
    }

    pub fn base_degree(&self) -> i64 {
        self.base
    }

    /// The `1/(z - ψ∞)` series.
    pub fn dilate(&self, z: &RatFunc) -> Result<Series, Error> {
        z_dilate(&self.value, self.base, z)
    }
}

const TVARS: [Var; 2] = [Var::T1, Var::T2];

/// Fails if some coefficient has a `(t1, t2)`-homogeneous piece below `base`.
pub fn check_ladder(r: &Series, base: i64) -> Result<(), Error> {
    for c in r.stored() {
        if let Some(o) = c.order_in(&TVARS) {
            if o < base {
                return Err(Error::InvalidBaseDegree { base, found: o });
            }
        }
    }
    Ok(())
}

/// Replaces the `ψ∞^b` piece (degree `base + b`) of each coefficient by `z^{-1-b}` times it.
///
/// Coefficients that split into finitely many homogeneous pieces are
/// reassembled piece by piece; otherwise `z^{base-1} c(t1/z, t2/z)` gives the
/// same sum in closed form.
pub fn z_dilate(r: &Series, base: i64, z: &RatFunc) -> Result<Series, Error> {
    check_ladder(r, base)?;
    let zinv = z.inv().ok_or(Error::DivisionByZero)?;
    let subs = [
        (Var::T1, RatFunc::t1().mul(&zinv)),
        (Var::T2, RatFunc::t2().mul(&zinv)),
    ];
    let pref = z.pow(base - 1);
    r.try_map(|c| match c.homogeneous_components(&TVARS) {
        Ok(pieces) => {
            let mut acc = RatFunc::zero();
            for (deg, piece) in pieces {
                acc = acc.add(&piece.mul(&z.pow(base - 1 - deg)));
            }
            Ok(acc)
        }
        Err(Error::NonTerminatingExpansion) => Ok(c.substitute_all(&subs).mul(&pref)),
        Err(e) => Err(e),
    })
}

/// `⟨∅|1/(1-ψ∞)|∅⟩~ = M(-q)^{-(t1+t2)}`.
pub fn empty_rubber(trunc: i64) -> Series {
    let e = RatFunc::t1().add(&RatFunc::t2()).neg();
    macmahon_neg(trunc)
        .pow_exponent(&e)
        .expect("M(-q) has constant term 1")
}

/// `R = M(-q)^{-(t1+t2)} S` satisfies `q dR/dq = M_σ R - R M_σ(0)`; returns the residual.
pub fn descendent_residual(s: &FockOperator<Series>, trunc: i64) -> FockOperator<Series> {
    let d = s.degree();
    let m = empty_rubber(trunc);
    let r = s.map(|x| x.mul(&m));
    let ms = crate::fock::operator_msigma(d, trunc);
    let ms0 = ms.at_q_zero().map(Series::from_ratfunc);
    r.map(|x| x.qderiv()).sub(&ms.compose(&r).sub(&r.compose(&ms0)))
}
