//! Gauge grading by `H`, Fourier coefficients `F_(p,q)` and the reconstruction formula.
//!
//! The monomial `u_g s_p s_q* u_h` is scaled by `χ(p)χ(q)⁻¹` under the gauge action,
//! so it has degree `p/q`. On finite sums the Haar integral defining `F_(p,q)` is
//! exactly the selection of the degree-`q/p` component, conjugated by `s_p, s_q*`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{Element, Monomial};
use crate::dynamics::Degree;
use crate::error::Result;
use crate::json::ElementJson;

pub fn degree(m: &Monomial) -> Degree {
    Degree::new(m.p(), m.q())
}

/// Degree → component, components stored only when they have terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDecomposition(pub BTreeMap<Degree, Element>);

impl GradedDecomposition {
    pub fn of(a: &Element) -> GradedDecomposition {
        let mut parts: BTreeMap<Degree, Element> = BTreeMap::new();
        for (m, c) in a.terms() {
            parts
                .entry(degree(m))
                .or_insert_with(|| Element::zero(a.system()))
                .add_term(*m, c.clone());
        }
        GradedDecomposition(parts)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Degree, &Element)> {
        self.0.iter()
    }

    pub fn to_json(&self) -> Vec<GradedComponentJson> {
        self.0
            .iter()
            .map(|(d, e)| GradedComponentJson {
                degree: d.to_string(),
                element: ElementJson::from(e),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedComponentJson {
    pub degree: String,
    pub element: ElementJson,
}

pub fn graded_component(a: &Element, d: Degree) -> Element {
    a.filter(|m| degree(m) == d)
}

/// `F_(p,q)(a) = s_p · a_{q/p} · s_q*`, an element of the fixed-point algebra.
pub fn fourier_coeff(a: &Element, p: i64, q: i64) -> Result<Element> {
    let sys = a.system();
    let sp = Element::isometry(sys, p)?;
    let sq = Element::isometry(sys, q)?;
    let comp = graded_component(a, Degree::new(q, p));
    Ok(&(&sp * &comp) * &sq.adjoint())
}

/// Degrees whose component is nonzero in the algebra.
pub fn degree_support(a: &Element) -> BTreeSet<Degree> {
    GradedDecomposition::of(a)
        .0
        .into_iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|(d, _)| d)
        .collect()
}

/// `Σ s_p* F_(p,q)(a) s_q` over the degree support, `(p, q)` the coprime representative.
pub fn reconstruct(a: &Element) -> Result<Element> {
    let sys = a.system();
    let mut out = Element::zero(sys);
    for d in degree_support(a) {
        let (p, q) = d.coprime_pair();
        let f = fourier_coeff(a, p, q)?;
        let sp = Element::isometry(sys, p)?;
        let sq = Element::isometry(sys, q)?;
        out = &out + &(&(&sp.adjoint() * &f) * &sq);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::SystemDescriptor;
    use crate::thompson;

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&Monomial::new(0, 4, 2, 0)), Degree::new(2, 1));
        assert_eq!(degree(&Monomial::IDENTITY), Degree::ONE);
        assert_eq!(degree(&Monomial::unitary(1)), Degree::ONE);
    }

    #[test]
    fn graded_component_examples() {
        let sys = SystemDescriptor::q2();
        let x0 = thompson::x0();
        let s1 = thompson::s1();
        let s2 = Element::isometry(sys, 2).unwrap();
        // S₂S₁(S₁S₂)*
        let expect = &(&s2 * &s1) * &(&s1 * &s2).adjoint();
        assert!(graded_component(&x0, Degree::ONE).equals(&expect).unwrap());
        assert!(graded_component(&Element::one(sys), Degree::new(2, 1)).is_empty());
        let u = Element::unitary(sys, 1);
        let a = &(&u * &s2) + &s2.adjoint();
        assert_eq!(graded_component(&a, Degree::new(1, 2)), s2.adjoint());
    }

    #[test]
    fn fourier_examples() {
        let sys = SystemDescriptor::q2();
        let s2 = Element::isometry(sys, 2).unwrap();
        let s2sq = s2.pow(2);
        let f = fourier_coeff(&thompson::x0(), 1, 2).unwrap();
        assert!(f.equals(&(&s2sq * &s2sq.adjoint())).unwrap());
        let one = Element::one(sys);
        assert_eq!(fourier_coeff(&one, 1, 1).unwrap(), one);
        assert!(fourier_coeff(&one, 3, 1).is_err());
    }

    #[test]
    fn support_examples() {
        let q2 = SystemDescriptor::q2();
        let s: Vec<Degree> = degree_support(&thompson::x0()).into_iter().collect();
        assert_eq!(s, vec![Degree::new(1, 2), Degree::ONE, Degree::new(2, 1)]);
        assert!(degree_support(&Element::zero(q2)).is_empty());
        let qn = SystemDescriptor::Qn;
        let a = &Element::isometry(qn, 2).unwrap() * &Element::isometry(qn, 3).unwrap().adjoint();
        assert_eq!(degree_support(&a).into_iter().collect::<Vec<_>>(), vec![Degree::new(2, 3)]);
    }

    #[test]
    fn reconstruct_examples() {
        let x0 = thompson::x0();
        assert!(reconstruct(&x0).unwrap().equals(&x0).unwrap());
        let one = Element::one(SystemDescriptor::Qn);
        assert_eq!(reconstruct(&one).unwrap(), one);
    }
}
