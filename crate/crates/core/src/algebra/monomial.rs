use std::cmp::Ordering;
use std::fmt;

use crate::dynamics::exchange;

/// The word `u_g s_p s_q* u_h` with `0 ≤ h < q`.
///
/// Ordered by `(q, p, h, g)`, which is also the printing order of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    g: i64,
    p: i64,
    q: i64,
    h: i64,
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial { g: 0, p: 1, q: 1, h: 0 };

    /// Canonical form of the raw word `u_g s_p s_q* u_h` for arbitrary `h`, using
    /// `u_g s_p s_q* u_h = u_{g+pt} s_p s_q* u_{h−qt}`.
    pub fn new(g: i64, p: i64, q: i64, h: i64) -> Monomial {
        assert!(p > 0 && q > 0, "isometry indices must be positive");
        let t = h.div_euclid(q);
        Monomial {
            g: g + p * t,
            p,
            q,
            h: h - q * t,
        }
    }

    pub fn unitary(g: i64) -> Monomial {
        Monomial::new(g, 1, 1, 0)
    }

    pub fn isometry(p: i64) -> Monomial {
        Monomial::new(0, p, 1, 0)
    }

    pub fn isometry_adjoint(q: i64) -> Monomial {
        Monomial::new(0, 1, q, 0)
    }

    pub fn g(&self) -> i64 {
        self.g
    }
    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn is_canonical_tuple(p: i64, q: i64, h: i64) -> bool {
        p > 0 && q > 0 && (0..q).contains(&h)
    }

    /// `(u_g s_p s_q* u_h)* = u_{−h} s_q s_p* u_{−g}`.
    pub fn adjoint(&self) -> Monomial {
        Monomial::new(-self.h, self.q, self.p, -self.g)
    }

    /// Product via the covariance and exchange relations; `None` when the exchange gives zero.
    pub fn mul(&self, rhs: &Monomial) -> Option<Monomial> {
        // u_g s_p [s_q* u_{h+g'} s_p'] s_q'* u_h'
        let mid = exchange(self.h + rhs.g, self.q, rhs.p)?;
        // = u_{g + p g1} s_{p p''} s_{q' q''}* u_{q' g2 + h'}
        Some(Monomial::new(
            self.g + self.p * mid.g1,
            self.p * mid.p_prime,
            rhs.q * mid.q_prime,
            rhs.q * mid.g2 + rhs.h,
        ))
    }

    /// Image of the basis index `k`: `p(k+h)/q + g` when `q | k+h`.
    pub fn apply_index(&self, k: i64) -> Option<i64> {
        let s = k + self.h;
        if s.rem_euclid(self.q) == 0 {
            Some(self.p * (s / self.q) + self.g)
        } else {
            None
        }
    }

    fn key(&self) -> (i64, i64, i64, i64) {
        (self.q, self.p, self.h, self.g)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Monomial {
    /// Expression syntax, e.g. `u(1) S(2) S(4)' u(3)`; the identity prints as `I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.g != 0 {
            parts.push(format!("u({})", self.g));
        }
        if self.p != 1 {
            parts.push(format!("S({})", self.p));
        }
        if self.q != 1 {
            parts.push(format!("S({})'", self.q));
        }
        if self.h != 0 {
            parts.push(format!("u({})", self.h));
        }
        if parts.is_empty() {
            write!(f, "I")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
