//! Exact Gaussian rationals used as element coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `re + i·im` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coeff {
    pub re: Rational,
    pub im: Rational,
}

impl Coeff {
    pub fn new(re: Rational, im: Rational) -> Self {
        Coeff { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Coeff {
            re,
            im: Rational::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Coeff::real(rat_int(n))
    }

    pub fn i() -> Self {
        Coeff::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Coeff::int(0)
    }

    pub fn one() -> Self {
        Coeff::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Coeff::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`, exact.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|re| + |im|`, a rational upper bound for `|z|` that is exact on real values.
    pub fn abs_bound(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Coeff::new(&self.re * r, &self.im * r)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Coeff::new(&self.re / &n, -&self.im / &n))
    }
}

impl From<Rational> for Coeff {
    fn from(r: Rational) -> Self {
        Coeff::real(r)
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, o: &Coeff) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        Coeff::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        Coeff::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::new(-&self.re, -&self.im)
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coeff {
    /// Prints in the expression syntax: `3/4`, `-2i`, `(1/2 + 1/3i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}i)", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
            }
        }
    }
}

/// Largest rational `r = a/10⁶` (rounded down) with `r² ≤ x`; exact when `x` is a square of a
/// rational with small denominator.
pub fn sqrt_floor(x: &Rational) -> Rational {
    if !x.is_positive() {
        return Rational::zero();
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        return Rational::new(sn, sd);
    }
    let scale = BigInt::from(1_000_000u64);
    // floor(sqrt(n/d)·10⁶) = floor(sqrt(n·10¹²/d))
    let v = (n * &scale * &scale / d).sqrt();
    Rational::new(v, scale)
}
