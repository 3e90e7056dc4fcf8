//! The equality oracle: monomials act on `ℓ²(ℤ)` by `U δ_k = δ_{k+1}`,
//! `S_p δ_k = δ_{pk}`, so each one is a partial affine map on a residue class.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

use crate::scalar::Coeff;

use super::{Element, Monomial};

/// `k ↦ slope·k + intercept` on the class `k ≡ residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartialAffineMap {
    pub modulus: i64,
    pub residue: i64,
    #[serde(serialize_with = "ser_ratio")]
    pub slope: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub intercept: Rational64,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl PartialAffineMap {
    pub fn of(m: &Monomial) -> PartialAffineMap {
        PartialAffineMap {
            modulus: m.q(),
            residue: (-m.h()).rem_euclid(m.q()),
            slope: Rational64::new(m.p(), m.q()),
            intercept: Rational64::new(m.p() * m.h(), m.q()) + m.g(),
        }
    }

    /// Restriction to the class `r (mod modulus)`, where `modulus` is a multiple of
    /// `self.modulus` and `r` lies inside the domain.
    pub fn restrict(&self, modulus: i64, r: i64) -> PartialAffineMap {
        debug_assert!(modulus % self.modulus == 0);
        debug_assert!(self.contains(r));
        PartialAffineMap {
            modulus,
            residue: r.rem_euclid(modulus),
            ..*self
        }
    }

    pub fn contains(&self, k: i64) -> bool {
        (k - self.residue).rem_euclid(self.modulus) == 0
    }

    pub fn eval(&self, k: i64) -> Option<i64> {
        if !self.contains(k) {
            return None;
        }
        let v = self.slope * Rational64::from_integer(k) + self.intercept;
        debug_assert!(v.is_integer());
        Some(v.to_integer())
    }
}

/// Splits every monomial domain into classes modulo `L = lcm(q)` and merges
/// coinciding pieces; cancelling pieces are dropped.
pub fn to_affine_pieces(a: &Element) -> BTreeMap<PartialAffineMap, Coeff> {
    let l = a.terms().fold(1i64, |acc, (m, _)| acc.lcm(&m.q()));
    let mut out: BTreeMap<PartialAffineMap, Coeff> = BTreeMap::new();
    for (m, c) in a.terms() {
        let map = PartialAffineMap::of(m);
        for j in 0..l / m.q() {
            let piece = map.restrict(l, map.residue + j * m.q());
            *out.entry(piece).or_insert_with(Coeff::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl Element {
    /// Zero in the algebra.
    ///
    /// Terms are grouped by their affine line `(slope, intercept)`. Distinct lines
    /// agree at one point at most, so `a = 0` iff, for every line, the periodic
    /// function `Σ c·1_{class}` vanishes identically.
    pub fn is_zero(&self) -> bool {
        type Line = (Rational64, Rational64);
        let mut lines: BTreeMap<Line, Vec<(i64, i64, &Coeff)>> = BTreeMap::new();
        for (m, c) in self.terms() {
            let map = PartialAffineMap::of(m);
            lines
                .entry((map.slope, map.intercept))
                .or_default()
                .push((map.modulus, map.residue, c));
        }
        lines.values().all(|pieces| {
            if let [(_, _, c)] = pieces.as_slice() {
                return c.is_zero();
            }
            let l = pieces.iter().fold(1i64, |acc, (q, _, _)| acc.lcm(q));
            (0..l).all(|r| {
                let mut sum = Coeff::zero();
                for (q, res, c) in pieces {
                    if (r - res).rem_euclid(*q) == 0 {
                        sum += c;
                    }
                }
                sum.is_zero()
            })
        })
    }
}
