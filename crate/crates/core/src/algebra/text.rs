//! Canonical text form: terms in canonical order, variables `s`, `t1`, `t2`.

use core::fmt;

use num_traits::{One, Signed};

use crate::algebra::field::Ring;
use crate::algebra::poly::{MultiPoly, Var};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::series::QSeries;

/// Variable names for the slots `s`, `t1`, `t2`.
pub const DEFAULT_NAMES: [&str; 3] = ["s", "t1", "t2"];

/// Writes `p` with custom names for the three variables.
pub struct Named<'a, T>(pub &'a T, pub [&'a str; 3]);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Named(self, DEFAULT_NAMES))
    }
}

impl fmt::Display for Named<'_, MultiPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Named(poly, names) = self;
        if poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in poly.terms().iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut first = true;
            if m.total() == 0 || !One::is_one(&a) {
                write!(f, "{}", a)?;
                first = false;
            }
            for v in Var::ALL {
                let e = m.0[v.index()];
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", names[v.index()])?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Named(self, DEFAULT_NAMES))
    }
}

impl fmt::Display for Named<'_, RatFunc> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Named(r, names) = self;
        if r.den().is_one() {
            write!(f, "{}", Named(r.num(), *names))
        } else {
            write!(f, "({})/({})", Named(r.num(), *names), Named(r.den(), *names))
        }
    }
}

impl<F: Ring + fmt::Display> fmt::Display for QSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.stored().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "q^{}*({})", self.valuation() + i as i64, c)?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, "; O(q^{})", self.truncation() + 1)?;
        }
        Ok(())
    }
}
