use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::dynamics::SystemDescriptor;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Rational};

use super::Monomial;

/// A finite linear combination of canonical monomials over one system.
///
/// Two elements can be equal in the algebra while having different term maps
/// (the covering relation makes monomials of different levels dependent), so equality
/// in the algebra is [`Element::equals`], not `==`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    system: SystemDescriptor,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Element {
    pub fn zero(system: SystemDescriptor) -> Element {
        Element {
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(system: SystemDescriptor) -> Element {
        Element::monomial(system, Monomial::IDENTITY)
    }

    pub fn scalar(system: SystemDescriptor, c: Coeff) -> Element {
        Element::term(system, Monomial::IDENTITY, c)
    }

    /// `u_g`.
    pub fn unitary(system: SystemDescriptor, g: i64) -> Element {
        Element::monomial(system, Monomial::unitary(g))
    }

    /// `s_p`.
    pub fn isometry(system: SystemDescriptor, p: i64) -> Result<Element> {
        system.check(p)?;
        Ok(Element::monomial(system, Monomial::isometry(p)))
    }

    /// `e_{g,p} = u_g s_p s_p* u_g*`.
    pub fn range_projection(system: SystemDescriptor, g: i64, p: i64) -> Result<Element> {
        system.check(p)?;
        Ok(Element::monomial(system, Monomial::new(g, p, p, -g)))
    }

    pub fn monomial(system: SystemDescriptor, m: Monomial) -> Element {
        Element::term(system, m, Coeff::one())
    }

    pub fn term(system: SystemDescriptor, m: Monomial, c: Coeff) -> Element {
        let mut e = Element::zero(system);
        e.add_term(m, c);
        e
    }

    /// Builds an element from raw `(coeff, g, p, q, h)` data, validating `p, q ∈ P`.
    pub fn from_terms<I>(system: SystemDescriptor, terms: I) -> Result<Element>
    where
        I: IntoIterator<Item = (Coeff, i64, i64, i64, i64)>,
    {
        let mut e = Element::zero(system);
        for (c, g, p, q, h) in terms {
            system.check(p)?;
            system.check(q)?;
            e.add_term(Monomial::new(g, p, q, h), c);
        }
        Ok(e)
    }

    pub fn system(&self) -> SystemDescriptor {
        self.system
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No stored terms. Weaker than [`Element::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn same_system(&self, other: &Element) -> Result<()> {
        if self.system != other.system {
            return Err(Error::SystemMismatch {
                left: self.system.to_string(),
                right: other.system.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same_system(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&other.scale(&Coeff::int(-1)))
    }

    /// Bilinear extension of the monomial product.
    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.same_system(other)?;
        let mut out = Element::zero(self.system);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(m) = ma.mul(mb) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        let mut out = Element::zero(self.system);
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn scale_real(&self, r: &Rational) -> Element {
        self.scale(&Coeff::real(r.clone()))
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut out = Element::one(self.system);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn adjoint(&self) -> Element {
        let mut out = Element::zero(self.system);
        for (m, c) in &self.terms {
            out.add_term(m.adjoint(), c.conj());
        }
        out
    }

    /// Sub-sum of the terms satisfying `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&Monomial) -> bool) -> Element {
        Element {
            system: self.system,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Equality in the algebra, decided by the affine-map oracle.
    pub fn equals(&self, other: &Element) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_zero())
    }

    /// Greedy merge of complete residue families back into coarser monomials,
    /// inverting `u_g s_p s_q* u_h = Σ_{r<t} u_{g+pr} s_{pt} s_{qt}* u_{h−qr}`.
    ///
    /// Not a normal form: the result equals `self` in the algebra, but equal inputs
    /// may compress differently.
    pub fn compress(&self) -> Element {
        let mut cur = self.clone();
        'outer: loop {
            let keys: Vec<Monomial> = cur.terms.keys().copied().collect();
            for m in keys {
                let Some(c) = cur.terms.get(&m).cloned() else {
                    continue;
                };
                let common = num_integer::gcd(m.p(), m.q());
                for t in (2..=common).rev() {
                    if common % t != 0 {
                        continue;
                    }
                    let (p, q) = (m.p() / t, m.q() / t);
                    if !cur.system.contains(p) || !cur.system.contains(q) || !cur.system.contains(t)
                    {
                        continue;
                    }
                    // m is the r0-th member of the family of some coarse (g, p, q, h)
                    for r0 in 0..t {
                        let coarse = Monomial::new(m.g() - p * r0, p, q, m.h() + q * r0);
                        let family: Vec<Monomial> = (0..t)
                            .map(|r| {
                                Monomial::new(
                                    coarse.g() + p * r,
                                    p * t,
                                    q * t,
                                    coarse.h() - q * r,
                                )
                            })
                            .collect();
                        if family.iter().all(|f| cur.terms.get(f) == Some(&c)) {
                            for f in &family {
                                cur.terms.remove(f);
                            }
                            cur.add_term(coarse, c);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        cur
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    /// Panics on system mismatch; see [`Element::checked_add`].
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("system mismatch")
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("system mismatch")
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs).expect("system mismatch")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Coeff::int(-1))
    }
}

impl fmt::Display for Element {
    /// Parseable expression text; terms in `(q, p, h, g)` order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let zero = Rational::from_integer(0.into());
            let (neg, mag) = if c.re < zero || (c.re == zero && c.im < zero) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_one = mag == Coeff::one();
            match (is_one, *m == Monomial::IDENTITY) {
                (true, _) => write!(f, "{m}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag} {m}")?,
            }
        }
        Ok(())
    }
}
