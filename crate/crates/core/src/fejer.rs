//! Fejér sums `Sₙ(x) = Σ_h φₙ(h) s_p* F_(p,q)(x) s_q`, Cesàro means, convergence
//! reports and the relative-commutant probe.
//!
//! On finite sums `Sₙ` scales the degree-`d` component by `φₙ(d)`; that is how it is
//! computed here, with the literal Fourier-coefficient formula kept as a cross-check.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Element, Monomial};
use crate::dynamics::Degree;
use crate::error::{Error, Result};
use crate::folner::FolnerSequence;
use crate::gauge::{degree_support, fourier_coeff, graded_component, GradedDecomposition};
use crate::scalar::{Coeff, Rational};

/// `Σ_d φₙ(d)·a_d`.
pub fn fejer_sum(a: &Element, fs: &FolnerSequence, n: usize) -> Result<Element> {
    let mut out = Element::zero(a.system());
    for (d, comp) in GradedDecomposition::of(a).components() {
        let w = fs.phi(n, &fs.embed(*d)?)?;
        out = &out + &comp.scale_real(&w);
    }
    Ok(out)
}

/// The defining sum over the degree support, via `F_(p,q)`.
pub fn fejer_sum_via_fourier(a: &Element, fs: &FolnerSequence, n: usize) -> Result<Element> {
    let sys = a.system();
    let mut out = Element::zero(sys);
    for d in degree_support(a) {
        let w = fs.phi(n, &fs.embed(d)?)?;
        if w.is_zero() {
            continue;
        }
        let (p, q) = d.coprime_pair();
        let f = fourier_coeff(a, p, q)?;
        let sp = Element::isometry(sys, p)?;
        let sq = Element::isometry(sys, q)?;
        out = &out + &(&(&sp.adjoint() * &f) * &sq).scale_real(&w);
    }
    Ok(out)
}

/// `(1/N)·Σ_{n<N} φₙ(h)`, the Cesàro weight of a degree.
pub fn cesaro_weight(fs: &FolnerSequence, d: Degree, count: usize) -> Result<Rational> {
    if count == 0 {
        return Err(Error::ZeroCount);
    }
    let h = fs.embed(d)?;
    let mut acc = Rational::zero();
    for n in 0..count {
        acc += fs.phi(n, &h)?;
    }
    Ok(acc / Rational::from_integer(count.into()))
}

/// `(1/N)·Σ_{n<N} Sₙ(a)`.
pub fn cesaro_mean(a: &Element, fs: &FolnerSequence, count: usize) -> Result<Element> {
    if count == 0 {
        return Err(Error::ZeroCount);
    }
    let mut out = Element::zero(a.system());
    for (d, comp) in GradedDecomposition::of(a).components() {
        out = &out + &comp.scale_real(&cesaro_weight(fs, *d, count)?);
    }
    Ok(out)
}

/// `Σ (|re| + |im|)` over the stored terms.
pub fn coefficient_mass(a: &Element) -> Rational {
    a.terms().map(|(_, c)| c.abs_bound()).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    /// `Bₙ = Σ_d (1 − φₙ(d))·mass(a_d)`, an upper bound on `‖a − Sₙ(a)‖`.
    #[serde(serialize_with = "ser_rat")]
    pub bound: Rational,
    /// Probe lower bound on `‖a − Sₙ(a)‖²`.
    #[serde(serialize_with = "ser_rat")]
    pub lower_sq: Rational,
    pub exact_equal: bool,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub element: String,
    pub rows: Vec<ReportRow>,
}

impl ConvergenceReport {
    pub const CSV_HEADER: &'static str = "n,B_n_num,B_n_den,lower_sq_num,lower_sq_den,exact_equal";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.n,
                r.bound.numer(),
                r.bound.denom(),
                r.lower_sq.numer(),
                r.lower_sq.denom(),
                r.exact_equal
            );
        }
        out
    }
}

pub fn convergence_report(
    a: &Element,
    fs: &FolnerSequence,
    n_max: usize,
    window: i64,
) -> Result<ConvergenceReport> {
    let dec = GradedDecomposition::of(a);
    let comps: Vec<(crate::folner::HElem, Rational, Element)> = dec
        .components()
        .map(|(d, c)| Ok((fs.embed(*d)?, coefficient_mass(c), c.clone())))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut bound = Rational::zero();
        let mut diff = Element::zero(a.system());
        for (h, mass, comp) in &comps {
            let gap = Rational::one() - fs.phi(n, h)?;
            if gap.is_zero() {
                continue;
            }
            bound += &gap * mass;
            diff = &diff + &comp.scale_real(&gap);
        }
        let exact_equal = diff.is_zero();
        let lower_sq = if exact_equal {
            Rational::zero()
        } else {
            diff.norm_bounds(window).lower_sq
        };
        rows.push(ReportRow {
            n,
            bound,
            lower_sq,
            exact_equal,
        });
    }
    Ok(ConvergenceReport {
        element: a.to_string(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutantReport {
    pub commutes: bool,
    /// Nonzero degrees other than `1/1`, reported when `commutes` holds.
    pub offending_degrees: BTreeSet<Degree>,
    /// Identity coefficient of the compressed degree-`1/1` component.
    pub scalar_part: Coeff,
}

/// Tests `a s_p = s_p a` for each listed generator.
pub fn commutant_probe(a: &Element, generators: &[i64]) -> Result<CommutantReport> {
    let sys = a.system();
    let mut commutes = true;
    for &p in generators {
        let sp = Element::isometry(sys, p)?;
        if !(&a.clone() * &sp).equals(&(&sp * a))? {
            commutes = false;
        }
    }
    let offending_degrees = if commutes {
        degree_support(a).into_iter().filter(|d| *d != Degree::ONE).collect()
    } else {
        BTreeSet::new()
    };
    let scalar_part = graded_component(a, Degree::ONE)
        .compress()
        .coeff(&Monomial::IDENTITY);
    Ok(CommutantReport {
        commutes,
        offending_degrees,
        scalar_part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::SystemDescriptor;
    use crate::scalar::rat;
    use crate::thompson;

    fn q2() -> SystemDescriptor {
        SystemDescriptor::q2()
    }

    #[test]
    fn fejer_examples() {
        let fs = FolnerSequence::cyclic(2);
        let u = Element::unitary(q2(), 1);
        for n in 0..6 {
            assert_eq!(fejer_sum(&u, &fs, n).unwrap(), u);
        }
        let s2 = Element::isometry(q2(), 2).unwrap();
        assert_eq!(fejer_sum(&s2, &fs, 1).unwrap(), s2.scale_real(&rat(2, 3)));
        let s3 = Element::isometry(SystemDescriptor::Qn, 3).unwrap();
        assert!(matches!(fejer_sum(&s3, &fs, 1), Err(Error::DegreeOutsideGroup { .. })));
    }

    #[test]
    fn cesaro_examples() {
        let fs = FolnerSequence::cyclic(2);
        let one = Element::one(q2());
        assert_eq!(cesaro_mean(&one, &fs, 7).unwrap(), one);
        let s2 = Element::isometry(q2(), 2).unwrap();
        assert_eq!(cesaro_mean(&s2, &fs, 2).unwrap(), s2.scale_real(&rat(1, 3)));
        let x0 = thompson::x0();
        assert_eq!(cesaro_mean(&x0, &fs, 1).unwrap(), graded_component(&x0, Degree::ONE));
        assert!(matches!(cesaro_mean(&one, &fs, 0), Err(Error::ZeroCount)));
    }

    #[test]
    fn report_examples() {
        let fs = FolnerSequence::cyclic(2);
        let u = Element::unitary(q2(), 1);
        let r = convergence_report(&u, &fs, 5, 8).unwrap();
        assert!(r.rows.iter().all(|row| row.bound.is_zero() && row.exact_equal));
        let s2 = Element::isometry(q2(), 2).unwrap();
        let r = convergence_report(&s2, &fs, 5, 8).unwrap();
        for row in &r.rows {
            assert_eq!(row.bound, rat(1, 2 * row.n as i64 + 1));
            // ‖(1 − φₙ) S₂‖ is attained on a basis vector
            assert_eq!(row.lower_sq, &row.bound * &row.bound);
        }
        let r = convergence_report(&thompson::x0(), &fs, 5, 8).unwrap();
        for row in &r.rows[1..] {
            assert_eq!(row.bound, rat(2, 2 * row.n as i64 + 1));
            assert!(row.lower_sq <= &row.bound * &row.bound);
        }
        let csv = r.to_csv();
        assert!(csv.lines().all(|l| l.split(',').count() == 6));
    }

    #[test]
    fn commutant_examples() {
        let one = Element::one(q2());
        let r = commutant_probe(&one, &[2]).unwrap();
        assert!(r.commutes && r.offending_degrees.is_empty());
        assert_eq!(r.scalar_part, Coeff::one());
        let u = Element::unitary(q2(), 1);
        assert!(!commutant_probe(&u, &[2]).unwrap().commutes);
        // (S₂S₂*)S₂ = S₂ while S₂(S₂S₂*) = S₂²S₂*: they differ
        let e = Element::range_projection(q2(), 0, 2).unwrap();
        assert!(!commutant_probe(&e, &[2]).unwrap().commutes);
        assert!(commutant_probe(&one, &[3]).is_err());
    }
}
