//! Integer algebraic dynamical systems `(ℤ, P, θ)` with `P ⊆ ℕ^×` acting by
//! multiplication, and the degree group `H = P⁻¹P` realised inside `ℚ₊^*`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The two families of systems shipped with the crate.
///
/// `Qp { base }` is `G = ℤ`, `P = {baseᵏ : k ≥ 0}`; `Qn` is `G = ℤ`, `P = ℕ^×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemDescriptor {
    Qp { base: i64 },
    Qn,
}

impl SystemDescriptor {
    pub fn qp(base: i64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidSystem(format!("qp:{base}")));
        }
        Ok(SystemDescriptor::Qp { base })
    }

    pub const fn q2() -> Self {
        SystemDescriptor::Qp { base: 2 }
    }

    /// Membership in the semigroup `P`.
    pub fn contains(&self, p: i64) -> bool {
        if p < 1 {
            return false;
        }
        match *self {
            SystemDescriptor::Qn => true,
            SystemDescriptor::Qp { base } => {
                let mut x = p;
                while x % base == 0 {
                    x /= base;
                }
                x == 1
            }
        }
    }

    pub fn check(&self, p: i64) -> Result<i64> {
        if self.contains(p) {
            Ok(p)
        } else {
            Err(Error::InvalidSemigroupElement {
                element: p,
                system: self.to_string(),
            })
        }
    }

    /// `θ_p(g) = p·g`.
    pub fn act(&self, p: i64, g: i64) -> Result<i64> {
        Ok(self.check(p)? * g)
    }

    /// Canonical transversal `0, 1, …, p−1` of `pℤ` in `ℤ`; its length is `N_p = p`.
    pub fn transversal(&self, p: i64) -> Result<Vec<i64>> {
        Ok((0..self.check(p)?).collect())
    }

    /// Solves `s_p* u_g s_q = u_{g1} s_{p'} s_{q'}* u_{g2}`; `None` is the zero branch.
    pub fn solve_exchange(&self, g: i64, p: i64, q: i64) -> Result<Option<Exchange>> {
        self.check(p)?;
        self.check(q)?;
        Ok(exchange(g, p, q))
    }

    /// Whether a reduced degree lies in `H` for this system.
    pub fn contains_degree(&self, d: Degree) -> bool {
        self.contains(d.num()) && self.contains(d.den())
    }
}

impl fmt::Display for SystemDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemDescriptor::Qp { base: 2 } => write!(f, "q2"),
            SystemDescriptor::Qp { base } => write!(f, "qp:{base}"),
            SystemDescriptor::Qn => write!(f, "qn"),
        }
    }
}

impl FromStr for SystemDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "q2" => Ok(Self::q2()),
            "qn" => Ok(SystemDescriptor::Qn),
            _ => match t.strip_prefix("qp:").map(|b| b.trim().parse::<i64>()) {
                Some(Ok(base)) => Self::qp(base),
                _ => Err(Error::InvalidSystem(s.to_string())),
            },
        }
    }
}

impl Serialize for SystemDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SystemDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Solution of the exchange relation `s_p* u_g s_q = u_{g1} s_{p'} s_{q'}* u_{g2}`:
/// `g = p·g1 + q·g2` and `p·p' = q·q' = lcm(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exchange {
    pub g1: i64,
    pub p_prime: i64,
    pub q_prime: i64,
    pub g2: i64,
}

/// Unchecked core of [`SystemDescriptor::solve_exchange`]. Picks `g2 ∈ [0, p/d)`.
pub(crate) fn exchange(g: i64, p: i64, q: i64) -> Option<Exchange> {
    let d = p.gcd(&q);
    if g % d != 0 {
        return None;
    }
    let l = p / d * q;
    let (pd, qd, gd) = (p / d, q / d, g / d);
    // q/d · g2 ≡ g/d  (mod p/d)
    let g2 = if pd == 1 {
        0
    } else {
        let inv = qd.extended_gcd(&pd).x.rem_euclid(pd);
        ((gd.rem_euclid(pd) as i128 * inv as i128) % pd as i128) as i64
    };
    let g1 = (g - q * g2) / p;
    Some(Exchange {
        g1,
        p_prime: l / p,
        q_prime: l / q,
        g2,
    })
}

/// An element `num/den` of `H ⊆ ℚ₊^*`, always reduced. Ordered by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Degree {
    num: i64,
    den: i64,
}

impl Degree {
    pub const ONE: Degree = Degree { num: 1, den: 1 };

    /// Reduces `num/den`; both must be positive.
    pub fn new(num: i64, den: i64) -> Degree {
        assert!(num > 0 && den > 0, "degree parts must be positive");
        let g = num.gcd(&den);
        Degree {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn inverse(&self) -> Degree {
        Degree {
            num: self.den,
            den: self.num,
        }
    }

    pub fn mul(&self, other: &Degree) -> Degree {
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        Degree {
            num: (self.num / g1) * (other.num / g2),
            den: (self.den / g2) * (other.den / g1),
        }
    }

    /// The representative `(p, q)` with `p⁻¹q = self` and `pP ∩ qP = pqP`.
    pub fn coprime_pair(&self) -> (i64, i64) {
        (self.den, self.num)
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Degree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidElement(format!("bad degree `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if n < 1 || d < 1 {
            return Err(bad());
        }
        Ok(Degree::new(n, d))
    }
}
