//! Følner sequences for the degree group `H`, the weights
//! `φₙ(h) = |hFₙ ∩ Fₙ| / |Fₙ|`, and the Fejér kernel `Kₙ = Σ φₙ(h) χ(h)`.
//!
//! `H` is written additively as exponent vectors: one coordinate (the exponent of
//! the base) for `Q_p`, and the exponents of `2, 3, 5, 7, …` for `Q_ℕ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::dynamics::{Degree, SystemDescriptor};
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// Default cap on explicitly enumerated sets and supports.
pub const DEFAULT_KERNEL_BUDGET: u128 = 1_000_000;

/// An exponent vector with trailing zeros trimmed; the empty vector is the identity.
/// Ordered lexicographically with missing coordinates read as zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HElem(Vec<i64>);

impl Ord for HElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let len = self.0.len().max(other.0.len());
        (0..len)
            .map(|i| self.coord(i).cmp(&other.coord(i)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl PartialOrd for HElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl HElem {
    pub fn identity() -> HElem {
        HElem(Vec::new())
    }

    pub fn new(mut coords: Vec<i64>) -> HElem {
        while coords.last() == Some(&0) {
            coords.pop();
        }
        HElem(coords)
    }

    pub fn cyclic(k: i64) -> HElem {
        HElem::new(vec![k])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &HElem) -> HElem {
        let len = self.0.len().max(other.0.len());
        HElem::new((0..len).map(|i| self.coord(i) + other.coord(i)).collect())
    }

    pub fn inverse(&self) -> HElem {
        HElem(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, other: &HElem) -> HElem {
        self.add(&other.inverse())
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for HElem {
    type Err = Error;

    /// `"3"` or `"1,-2,0,4"`.
    fn from_str(s: &str) -> Result<HElem> {
        let coords = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidElement(format!("bad H-element `{s}`")))?;
        Ok(HElem::new(coords))
    }
}

impl Serialize for HElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The `i`-th prime, 0-based.
pub fn nth_prime(i: usize) -> i64 {
    let mut count = 0;
    let mut n = 1i64;
    loop {
        n += 1;
        if (2..).take_while(|d| d * d <= n).all(|d| n % d != 0) {
            if count == i {
                return n;
            }
            count += 1;
        }
    }
}

/// Prime exponent vector of a positive integer.
fn prime_exponents(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut i = 0;
    while n > 1 {
        let p = nth_prime(i);
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        out.push(e);
        i += 1;
    }
    out
}

/// How `H` is coordinatised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// `H ≅ ℤ` via exponents of `base`.
    Cyclic { base: i64 },
    /// `H ≅ ⊕ℤ` via prime exponents.
    PrimeExponents,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic { base } => write!(f, "cyclic(base {base})"),
            GroupKind::PrimeExponents => write!(f, "prime-exponents"),
        }
    }
}

/// An increasing, exhausting sequence of finite subsets `Fₙ ⊂ H`.
///
/// The default sets are `[−n, n]` (cyclic) and the box
/// `{x : |x_j| ≤ n for j ≤ n, x_i = 0 for i > n}` (prime exponents), for which
/// `φₙ` has closed forms. Explicit user-supplied sets are evaluated by enumeration
/// and their Følner property is not checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolnerSequence {
    kind: GroupKind,
    explicit: Option<Vec<BTreeSet<HElem>>>,
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

impl FolnerSequence {
    pub fn cyclic(base: i64) -> FolnerSequence {
        FolnerSequence {
            kind: GroupKind::Cyclic { base },
            explicit: None,
        }
    }

    pub fn prime_exponents() -> FolnerSequence {
        FolnerSequence {
            kind: GroupKind::PrimeExponents,
            explicit: None,
        }
    }

    /// The default sequence matching a system's degree group.
    pub fn for_system(sys: SystemDescriptor) -> FolnerSequence {
        match sys {
            SystemDescriptor::Qp { base } => FolnerSequence::cyclic(base),
            SystemDescriptor::Qn => FolnerSequence::prime_exponents(),
        }
    }

    pub fn explicit(kind: GroupKind, sets: Vec<Vec<HElem>>) -> Result<FolnerSequence> {
        let fs = FolnerSequence {
            kind,
            explicit: Some(sets.into_iter().map(|s| s.into_iter().collect()).collect()),
        };
        for set in fs.explicit.iter().flatten() {
            for h in set {
                fs.check_member(h)?;
            }
        }
        Ok(fs)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    fn check_member(&self, h: &HElem) -> Result<()> {
        match self.kind {
            GroupKind::Cyclic { .. } if h.coords().len() > 1 => {
                Err(Error::ElementOutsideGroup(h.to_string()))
            }
            _ => Ok(()),
        }
    }

    /// Coordinates of a degree in `H`.
    pub fn embed(&self, d: Degree) -> Result<HElem> {
        let outside = || Error::DegreeOutsideGroup {
            degree: d.to_string(),
            group: self.kind.to_string(),
        };
        match self.kind {
            GroupKind::Cyclic { base } => {
                let log = |mut x: i64| -> Option<i64> {
                    let mut k = 0;
                    while x > 1 {
                        if x % base != 0 {
                            return None;
                        }
                        x /= base;
                        k += 1;
                    }
                    Some(k)
                };
                let (a, b) = (log(d.num()).ok_or_else(outside)?, log(d.den()).ok_or_else(outside)?);
                Ok(HElem::cyclic(a - b))
            }
            GroupKind::PrimeExponents => {
                let a = HElem::new(prime_exponents(d.num()));
                let b = HElem::new(prime_exponents(d.den()));
                Ok(a.sub(&b))
            }
        }
    }

    /// The set `Fₙ`.
    pub fn set(&self, n: usize, budget: u128) -> Result<BTreeSet<HElem>> {
        if let Some(sets) = &self.explicit {
            return sets.get(n).cloned().ok_or(Error::SequenceTooShort {
                index: n,
                len: sets.len(),
            });
        }
        let r = n as i64;
        match self.kind {
            GroupKind::Cyclic { .. } => {
                check_budget(2 * n as u128 + 1, budget)?;
                Ok((-r..=r).map(HElem::cyclic).collect())
            }
            GroupKind::PrimeExponents => {
                check_budget(box_size(2 * n as u128 + 1, n)?, budget)?;
                Ok(boxed(n, r).into_iter().collect())
            }
        }
    }

    /// `φₙ(h) = |hFₙ ∩ Fₙ| / |Fₙ|`, by closed form for the default sets.
    pub fn phi(&self, n: usize, h: &HElem) -> Result<Rational> {
        self.check_member(h)?;
        if self.explicit.is_some() {
            return self.phi_enumerated(n, h, DEFAULT_KERNEL_BUDGET);
        }
        let width = 2 * n as i64 + 1;
        match self.kind {
            GroupKind::Cyclic { .. } => {
                let i = h.coord(0).abs();
                Ok(rat((width - i).max(0), width))
            }
            GroupKind::PrimeExponents => {
                if h.coords().len() > n {
                    return Ok(Rational::zero());
                }
                let mut acc = Rational::one();
                for x in h.coords().iter().filter(|x| **x != 0) {
                    acc *= rat((width - x.abs()).max(0), width);
                }
                Ok(acc)
            }
        }
    }

    /// `φₙ(h)` by counting `f ∈ Fₙ` with `h + f ∈ Fₙ`.
    pub fn phi_enumerated(&self, n: usize, h: &HElem, budget: u128) -> Result<Rational> {
        self.check_member(h)?;
        let set = self.set(n, budget)?;
        let hits = set.iter().filter(|f| set.contains(&h.add(f))).count();
        Ok(Rational::new(hits.into(), set.len().into()))
    }

    /// `supp φₙ = Fₙ Fₙ⁻¹`.
    pub fn support(&self, n: usize, budget: u128) -> Result<BTreeSet<HElem>> {
        if self.explicit.is_some() {
            let set = self.set(n, budget)?;
            check_budget((set.len() as u128).pow(2), budget)?;
            return Ok(set
                .iter()
                .flat_map(|a| set.iter().map(move |b| a.sub(b)))
                .collect());
        }
        let r = 2 * n as i64;
        match self.kind {
            GroupKind::Cyclic { .. } => {
                check_budget(2 * r as u128 + 1, budget)?;
                Ok((-r..=r).map(HElem::cyclic).collect())
            }
            GroupKind::PrimeExponents => {
                check_budget(box_size(2 * r as u128 + 1, n)?, budget)?;
                Ok(boxed(n, r).into_iter().collect())
            }
        }
    }

    /// Smallest `n` with `h ∈ Fₙ` (exhaustion witness); for explicit sequences,
    /// searched within the supplied sets.
    pub fn first_index_containing(&self, h: &HElem) -> Option<usize> {
        if let Some(sets) = &self.explicit {
            return sets.iter().position(|s| s.contains(h));
        }
        let max_abs = h.coords().iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0);
        match self.kind {
            GroupKind::Cyclic { .. } if h.coords().len() > 1 => None,
            GroupKind::Cyclic { .. } => Some(max_abs),
            GroupKind::PrimeExponents => Some(max_abs.max(h.coords().len())),
        }
    }

    /// `Kₙ` as an exact (Laurent) polynomial over `H`.
    pub fn kernel(&self, n: usize, budget: u128) -> Result<KernelPolynomial> {
        let mut terms = BTreeMap::new();
        for h in self.support(n, budget)? {
            let v = self.phi(n, &h)?;
            if !v.is_zero() {
                terms.insert(h, v);
            }
        }
        Ok(KernelPolynomial { terms })
    }

    /// Checks `|Fₙ|·Kₙ = (Σ_{f∈Fₙ} χ(f))·conj(Σ_{f∈Fₙ} χ(f))` coefficientwise, which
    /// certifies `Kₙ ≥ 0` on the dual group.
    pub fn kernel_factor_check(&self, n: usize, budget: u128) -> Result<bool> {
        let kernel = self.kernel(n, budget)?;
        let set = self.set(n, budget)?;
        check_budget((set.len() as u128).pow(2), budget)?;
        let mut conv: BTreeMap<HElem, i64> = BTreeMap::new();
        for a in &set {
            for b in &set {
                *conv.entry(a.sub(b)).or_insert(0) += 1;
            }
        }
        let size = Rational::from_integer(set.len().into());
        let keys: BTreeSet<&HElem> = conv.keys().chain(kernel.terms.keys()).collect();
        let ok = keys.into_iter().all(|h| {
            let lhs = conv.get(h).map(|c| Rational::from_integer((*c).into())).unwrap_or_default();
            &size * kernel.coeff(h) == lhs
        });
        Ok(ok)
    }
}

fn box_size(width: u128, dims: usize) -> Result<u128> {
    width.checked_pow(dims as u32).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget: 0,
    })
}

/// All vectors with `dims` coordinates in `[−r, r]`.
fn boxed(dims: usize, r: i64) -> Vec<HElem> {
    let mut out = vec![Vec::new()];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(HElem::new).collect()
}

/// `Kₙ = Σ_h φₙ(h) χ(h)`, nonzero coefficients only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPolynomial {
    pub terms: BTreeMap<HElem, Rational>,
}

impl KernelPolynomial {
    pub fn coeff(&self, h: &HElem) -> Rational {
        self.terms.get(h).cloned().unwrap_or_default()
    }

    /// The constant coefficient, which is `‖Kₙ‖_{L¹}` since `Kₙ ≥ 0`.
    pub fn constant(&self) -> Rational {
        self.coeff(&HElem::identity())
    }

    /// `[(h, "num/den")]`.
    pub fn to_json(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(h, c)| (h.to_string(), format!("{}/{}", c.numer(), c.denom())))
            .collect()
    }
}

impl fmt::Display for KernelPolynomial {
    /// Aligned two-column table `h  coefficient`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<(String, String)> = self.to_json();
        let w = rows.iter().map(|(h, _)| h.len()).max().unwrap_or(1).max(1);
        for (h, c) in rows {
            writeln!(f, "{h:>w$}  {c}")?;
        }
        Ok(())
    }
}
