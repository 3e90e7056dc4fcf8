//! Exact action on finitely supported vectors of `ℓ²(ℤ)` and norm brackets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::scalar::{sqrt_floor, Coeff, Rational};

use super::Element;

/// Default half-width of the probe window used by [`Element::norm_bounds`].
pub const DEFAULT_PROBE_WINDOW: i64 = 64;

/// A finitely supported vector `Σ v_k δ_k`, zero entries absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec(BTreeMap<i64, Coeff>);

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    pub fn delta(k: i64) -> Self {
        let mut v = SparseVec::zero();
        v.add(k, &Coeff::one());
        v
    }

    pub fn add(&mut self, k: i64, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn get(&self, k: i64) -> Coeff {
        self.0.get(&k).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&i64, &Coeff)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sq(&self) -> Rational {
        self.0.values().map(Coeff::norm_sq).sum()
    }

    /// `⟨self, other⟩`, conjugate-linear in `other`.
    pub fn inner(&self, other: &SparseVec) -> Coeff {
        let mut acc = Coeff::zero();
        for (k, a) in &self.0 {
            if let Some(b) = other.0.get(k) {
                acc += &(a * &b.conj());
            }
        }
        acc
    }
}

impl FromIterator<(i64, Coeff)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (i64, Coeff)>>(iter: I) -> Self {
        let mut v = SparseVec::zero();
        for (k, c) in iter {
            v.add(k, &c);
        }
        v
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, c)| format!("{c}·δ[{k}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `lower_sq ≤ ‖a‖² ` and `‖a‖ ≤ upper`, both exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormBounds {
    pub lower_sq: Rational,
    pub upper: Rational,
}

impl NormBounds {
    /// A rational `r ≤ √lower_sq`, exact when `lower_sq` is a rational square.
    pub fn lower(&self) -> Rational {
        sqrt_floor(&self.lower_sq)
    }
}

impl Element {
    /// Image of `v` under the canonical representation.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (k, x) in v.entries() {
            for (m, c) in self.terms() {
                if let Some(j) = m.apply_index(*k) {
                    out.add(j, &(c * x));
                }
            }
        }
        out
    }

    /// Brackets the operator norm.
    ///
    /// The upper bound is `Σ (|re c| + |im c|)` over terms (each monomial is a partial
    /// isometry). The lower bound maximises `‖a v‖²/‖v‖²` over `v = δ_k` and
    /// `v = δ_j + δ_k` with `|j|, |k| ≤ window`.
    pub fn norm_bounds(&self, window: i64) -> NormBounds {
        let upper = self.terms().map(|(_, c)| c.abs_bound()).sum();
        let images: Vec<(i64, SparseVec)> = (-window..=window)
            .map(|k| (k, self.apply(&SparseVec::delta(k))))
            .collect();
        let single: HashMap<i64, Rational> =
            images.iter().map(|(k, v)| (*k, v.norm_sq())).collect();
        let mut best = single.values().cloned().fold(Rational::zero(), |a, b| a.max(b));

        // cross terms ⟨a δ_j, a δ_k⟩ only where images overlap
        let mut by_output: BTreeMap<i64, Vec<(i64, &Coeff)>> = BTreeMap::new();
        for (k, v) in &images {
            for (j, c) in v.entries() {
                by_output.entry(*j).or_default().push((*k, c));
            }
        }
        let mut cross: HashMap<(i64, i64), Coeff> = HashMap::new();
        for hits in by_output.values() {
            for (i, (j, a)) in hits.iter().enumerate() {
                for (k, b) in &hits[i + 1..] {
                    *cross.entry((*j, *k)).or_insert_with(Coeff::zero) += &(*a * &b.conj());
                }
            }
        }
        let two = Rational::from_integer(2.into());
        for ((j, k), c) in cross {
            let val = (&single[&j] + &single[&k] + &two * &c.re) / &two;
            if val > best {
                best = val;
            }
        }
        NormBounds {
            lower_sq: best,
            upper,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::SystemDescriptor;
    use crate::scalar::rat_int;

    #[test]
    fn apply_examples() {
        let sys = SystemDescriptor::q2();
        let u = Element::unitary(sys, 1);
        assert_eq!(u.apply(&SparseVec::delta(0)), SparseVec::delta(1));
        let s2a = Element::isometry(sys, 2).unwrap().adjoint();
        assert!(s2a.apply(&SparseVec::delta(3)).is_zero());
        assert_eq!(s2a.apply(&SparseVec::delta(4)), SparseVec::delta(2));
    }

    #[test]
    fn norm_bounds_examples() {
        let sys = SystemDescriptor::q2();
        let one = Element::one(sys).norm_bounds(DEFAULT_PROBE_WINDOW);
        assert_eq!((one.lower(), one.upper), (rat_int(1), rat_int(1)));
        let s2 = Element::isometry(sys, 2).unwrap().norm_bounds(DEFAULT_PROBE_WINDOW);
        assert_eq!((s2.lower(), s2.upper), (rat_int(1), rat_int(1)));
        // 1 + U has norm 2, reached by δ_0 + δ_1
        let x = &Element::one(sys) + &Element::unitary(sys, 1);
        let b = x.norm_bounds(4);
        assert_eq!(b.lower_sq, rat_int(3));
        assert_eq!(b.upper, rat_int(2));
    }
}
