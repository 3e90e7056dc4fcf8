//! The generators `x₀, x₁` of Thompson's group `F` inside `Q₂`, through the
//! Cuntz embedding `S₁ ↦ U S₂`, `S₂ ↦ S₂`.

use crate::algebra::Element;
use crate::dynamics::SystemDescriptor;

/// Expression text of `x₀ = S₂²S₂* + S₂S₁(S₁S₂)* + S₁(S₁*)²` with `S₁ = U S(2)`.
pub const X0_EXPR: &str = "S(2)S(2)S(2)' + S(2)(U S(2))(U S(2) S(2))' + (U S(2))(U S(2))'(U S(2))'";

/// Expression text of
/// `x₁ = S₂S₂* + S₁S₂²(S₁S₂)* + S₁S₂S₁(S₁²S₂)* + S₁²(S₁*)³` with `S₁ = U S(2)`.
pub const X1_EXPR: &str = "S(2)S(2)' + (U S(2))S(2)S(2)(U S(2) S(2))' \
    + (U S(2))S(2)(U S(2))((U S(2))(U S(2))S(2))' \
    + (U S(2))(U S(2))(U S(2))'(U S(2))'(U S(2))'";

fn q2() -> SystemDescriptor {
    SystemDescriptor::q2()
}

pub fn s2() -> Element {
    Element::isometry(q2(), 2).expect("2 is in P")
}

/// `S₁ = U S₂`.
pub fn s1() -> Element {
    &Element::unitary(q2(), 1) * &s2()
}

pub fn x0() -> Element {
    let (s1, s2) = (s1(), s2());
    let a = &s2.pow(2) * &s2.adjoint();
    let b = &(&s2 * &s1) * &(&s1 * &s2).adjoint();
    let c = &s1 * &s1.adjoint().pow(2);
    &(&a + &b) + &c
}

pub fn x1() -> Element {
    let (s1, s2) = (s1(), s2());
    let a = &s2 * &s2.adjoint();
    let b = &(&s1 * &s2.pow(2)) * &(&s1 * &s2).adjoint();
    let c = &(&(&s1 * &s2) * &s1) * &(&s1.pow(2) * &s2).adjoint();
    let d = &s1.pow(2) * &s1.adjoint().pow(3);
    &(&(&a + &b) + &c) + &d
}

/// `x_{n+1} = x₀⁻¹ x_n x₀`, starting from `x₁`.
pub fn x(n: u32) -> Element {
    match n {
        0 => x0(),
        _ => {
            let x0 = x0();
            let mut cur = x1();
            for _ in 1..n {
                cur = &(&x0.adjoint() * &cur) * &x0;
            }
            cur
        }
    }
}
