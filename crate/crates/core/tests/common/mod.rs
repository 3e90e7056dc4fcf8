#![allow(dead_code)]

use qfejer_core::scalar::rat;
use qfejer_core::{Coeff, Element, SystemDescriptor};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Elements of `P` up to `max`.
pub fn semigroup_upto(sys: SystemDescriptor, max: i64) -> Vec<i64> {
    (1..=max).filter(|p| sys.contains(*p)).collect()
}

pub fn random_coeff(r: &mut impl Rng) -> Coeff {
    let mut c = Coeff::zero();
    while c.is_zero() {
        let re = rat(r.gen_range(-4..=4), r.gen_range(1..=3));
        let im = if r.gen_bool(0.3) {
            rat(r.gen_range(-3..=3), r.gen_range(1..=3))
        } else {
            rat(0, 1)
        };
        c = Coeff::new(re, im);
    }
    c
}

/// Up to `max_terms` monomials with `|g|, |h| ≤ gh` and `p, q ≤ pq` in `P`.
pub fn random_element(
    r: &mut impl Rng,
    sys: SystemDescriptor,
    max_terms: usize,
    gh: i64,
    pq: i64,
) -> Element {
    let ps = semigroup_upto(sys, pq);
    let n = r.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            (
                random_coeff(r),
                r.gen_range(-gh..=gh),
                ps[r.gen_range(0..ps.len())],
                ps[r.gen_range(0..ps.len())],
                r.gen_range(-gh..=gh),
            )
        })
        .collect();
    Element::from_terms(sys, terms).expect("generators lie in P")
}

pub fn systems() -> [SystemDescriptor; 3] {
    [
        SystemDescriptor::q2(),
        SystemDescriptor::qp(3).unwrap(),
        SystemDescriptor::Qn,
    ]
}
