//! End-to-end acceptance suite. Prints one line per criterion and exits nonzero if
//! any criterion fails or overruns its time limit.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, ToPrimitive, Zero};
use qfejer_core::fejer::{
    cesaro_mean, cesaro_weight, commutant_probe, convergence_report, fejer_sum,
    fejer_sum_via_fourier,
};
use qfejer_core::gauge::{fourier_coeff, reconstruct};
use qfejer_core::psd::{gram_matrix, psd_certificate, PsdOutcome};
use qfejer_core::scalar::{rat, Rational};
use qfejer_core::{
    folner::DEFAULT_KERNEL_BUDGET, thompson, Coeff, Degree, Element, FolnerSequence, HElem,
    SparseVec, SystemDescriptor,
};
use rand::Rng;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq(a: &Element, b: &Element) -> bool {
    a.equals(b).expect("same system")
}

fn q2() -> SystemDescriptor {
    SystemDescriptor::q2()
}

fn s(sys: SystemDescriptor, p: i64) -> Element {
    Element::isometry(sys, p).unwrap()
}

fn u(sys: SystemDescriptor, g: i64) -> Element {
    Element::unitary(sys, g)
}

fn relations() -> Check {
    let (s2, u1) = (s(q2(), 2), u(q2(), 1));
    ensure(eq(&(&s2 * &u1), &(&u1.pow(2) * &s2)), || "S2 U != U^2 S2".into())?;
    let e = &s2 * &s2.adjoint();
    let cover = &e + &(&(&u1 * &e) * &u1.adjoint());
    ensure(eq(&cover, &Element::one(q2())), || "S2S2* + U S2S2* U* != 1".into())?;
    let qn = SystemDescriptor::Qn;
    for p in 2..=6 {
        let sp = s(qn, p);
        let mut sum = Element::zero(qn);
        for r in 0..p {
            let ur = u(qn, r);
            sum = &sum + &(&(&(&ur * &sp) * &sp.adjoint()) * &ur.adjoint());
        }
        ensure(eq(&sum, &Element::one(qn)), || format!("covering relation fails for p = {p}"))?;
    }
    Ok(())
}

fn thompson_fourier() -> Check {
    let (s1, s2) = (thompson::s1(), thompson::s2());
    let (x0, x1) = (thompson::x0(), thompson::x1());
    let cases = [
        ("F(1,2)(x0)", &x0, 1, 2, &s2.pow(2) * &s2.pow(2).adjoint()),
        ("F(1,1)(x0)", &x0, 1, 1, &(&s2 * &s1) * &(&s1 * &s2).adjoint()),
        ("F(2,1)(x0)", &x0, 2, 1, &(&s2 * &s1) * &s1.pow(2).adjoint()),
        (
            "F(1,2)(x1)",
            &x1,
            1,
            2,
            &(&s1 * &s2.pow(2)) * &(&(&s2 * &s1) * &s2).adjoint(),
        ),
        (
            "F(1,1)(x1)",
            &x1,
            1,
            1,
            &(&s2 * &s2.adjoint())
                + &(&(&(&s1 * &s2) * &s1) * &(&s1.pow(2) * &s2).adjoint()),
        ),
        ("F(2,1)(x1)", &x1, 2, 1, &(&s2 * &s1.pow(2)) * &s2.pow(3).adjoint()),
    ];
    let mut bad = Vec::new();
    for (name, x, p, q, expect) in &cases {
        let f = fourier_coeff(x, *p, *q).map_err(|e| e.to_string())?;
        if !eq(&f, expect) {
            bad.push(format!("{name}: computed {f}, expected {expect}"));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))
}

fn thompson_relations() -> Check {
    let one = Element::one(q2());
    let (x0, x1) = (thompson::x0(), thompson::x1());
    for (name, x) in [("x0", &x0), ("x1", &x1)] {
        ensure(eq(&(x * &x.adjoint()), &one) && eq(&(&x.adjoint() * x), &one), || {
            format!("{name} is not unitary")
        })?;
    }
    let x2 = &(&x0.adjoint() * &x1) * &x0;
    let lhs = &(&x0.adjoint() * &x2) * &x0;
    let rhs = &(&x1.adjoint() * &x2) * &x1;
    let algebraic = eq(&lhs, &rhs);
    // independent check through the action on basis vectors
    let mut action = true;
    for k in -256..=256 {
        let v = SparseVec::delta(k);
        if lhs.apply(&v) != rhs.apply(&v) {
            action = false;
            break;
        }
        let step = |e: &Element, v: &SparseVec| e.apply(v);
        let chained = step(&x0.adjoint(), &step(&x1, &step(&x0, &v)));
        if x2.apply(&v) != chained {
            return Err(format!("x2 disagrees with its factors at k = {k}"));
        }
    }
    ensure(algebraic == action, || {
        format!("eq says {algebraic} but the basis-vector action says {action}")
    })?;
    ensure(algebraic, || "x0^-1 x2 x0 != x1^-1 x2 x1".into())
}

fn reconstruction() -> Check {
    let mut r = common::rng(4);
    for sys in common::systems() {
        for i in 0..500 {
            let a = common::random_element(&mut r, sys, 5, 8, 16);
            let b = reconstruct(&a).map_err(|e| e.to_string())?;
            ensure(eq(&a, &b), || format!("{sys} sample {i}: reconstruct({a}) = {b}"))?;
        }
    }
    Ok(())
}

fn phi_values() -> Check {
    let cyc = FolnerSequence::cyclic(2);
    let pe = FolnerSequence::prime_exponents();
    let phi = |fs: &FolnerSequence, n: usize, h: &HElem| fs.phi(n, h).unwrap();
    for n in 0..=20 {
        ensure(phi(&cyc, n, &HElem::identity()).is_one(), || format!("cyclic phi_{n}(0) != 1"))?;
        ensure(phi(&pe, n, &HElem::identity()).is_one(), || format!("prime phi_{n}(0) != 1"))?;
    }
    ensure(phi(&cyc, 2, &HElem::cyclic(1)) == rat(4, 5), || "phi_2(1) != 4/5".into())?;
    ensure(phi(&cyc, 1, &HElem::cyclic(2)) == rat(1, 3), || "phi_1(2) != 1/3".into())?;

    let mut r = common::rng(5);
    for _ in 0..50 {
        let n = r.gen_range(1..=5usize);
        let w = 2 * n as i64 + 1;
        let h: Vec<i64> = (0..n).map(|_| r.gen_range(-(n as i64)..=n as i64)).collect();
        let mut num = 1i64;
        for x in &h {
            num *= w - x.abs();
        }
        let expect = Rational::new(num.into(), w.pow(n as u32).into());
        let got = phi(&pe, n, &HElem::new(h.clone()));
        ensure(got == expect, || format!("prime phi_{n}({h:?}) = {got}, expected {expect}"))?;
    }

    for n in 0..=6usize {
        let m = 2 * n as i64;
        for i in -m..=m {
            let h = HElem::cyclic(i);
            let e = cyc.phi_enumerated(n, &h, DEFAULT_KERNEL_BUDGET).unwrap();
            ensure(phi(&cyc, n, &h) == e, || format!("cyclic phi_{n}({i}) closed != enumerated"))?;
        }
    }
    for n in 0..=3usize {
        let m = 2 * n as i64;
        for h in pe.support(n, DEFAULT_KERNEL_BUDGET).unwrap() {
            let e = pe.phi_enumerated(n, &h, DEFAULT_KERNEL_BUDGET).unwrap();
            ensure(phi(&pe, n, &h) == e, || format!("prime phi_{n}({h}) closed != enumerated"))?;
            ensure(h.coords().iter().all(|x| x.abs() <= m), || format!("{h} outside box"))?;
        }
    }
    Ok(())
}

fn kernels() -> Check {
    let cases: Vec<(FolnerSequence, usize)> = (0..=20)
        .map(|n| (FolnerSequence::cyclic(2), n))
        .chain((0..=3).map(|n| (FolnerSequence::prime_exponents(), n)))
        .collect();
    for (fs, n) in cases {
        let ok = fs.kernel_factor_check(n, DEFAULT_KERNEL_BUDGET).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{:?} n = {n}: factorisation fails", fs.kind()))?;
        let k = fs.kernel(n, DEFAULT_KERNEL_BUDGET).map_err(|e| e.to_string())?;
        ensure(k.constant().is_one(), || format!("{:?} n = {n}: constant term != 1", fs.kind()))?;
    }
    Ok(())
}

fn psd_certificates() -> Check {
    let mut r = common::rng(7);
    for i in 0..100 {
        let prime = i % 2 == 1;
        let fs = if prime {
            FolnerSequence::prime_exponents()
        } else {
            FolnerSequence::cyclic(2)
        };
        let n = r.gen_range(0..=4usize);
        let size = r.gen_range(1..=12usize);
        let mut sample: Vec<HElem> = Vec::new();
        while sample.len() < size {
            let h = if prime {
                HElem::new((0..3).map(|_| r.gen_range(-3..=3)).collect())
            } else {
                HElem::cyclic(r.gen_range(-12..=12))
            };
            if !sample.contains(&h) {
                sample.push(h);
            }
        }
        let m = gram_matrix(&fs, n, &sample).map_err(|e| e.to_string())?;
        match psd_certificate(&fs, n, &sample).map_err(|e| e.to_string())? {
            PsdOutcome::Psd(ldl) => {
                ensure(ldl.verify(&m), || format!("sample {i}: decomposition does not verify"))?
            }
            PsdOutcome::NotPsd { value, .. } => {
                return Err(format!("sample {i}: witness with value {value}"))
            }
        }
    }
    Ok(())
}

fn fejer_convergence() -> Check {
    let mut r = common::rng(8);
    for i in 0..500 {
        let sys = common::systems()[i % 3];
        let fs = FolnerSequence::for_system(sys);
        let a = common::random_element(&mut r, sys, 5, 8, 16);
        let n = r.gen_range(0..=4usize);
        let graded = fejer_sum(&a, &fs, n).map_err(|e| e.to_string())?;
        let literal = fejer_sum_via_fourier(&a, &fs, n).map_err(|e| e.to_string())?;
        ensure(eq(&graded, &literal), || format!("graded scaling fails on {a} at n = {n}"))?;
    }
    let fs = FolnerSequence::cyclic(2);
    let cases = [(thompson::s2(), 1), (thompson::x0(), 2), (thompson::x1(), 2)];
    let tol = rat(1, 100);
    for (x, c) in &cases {
        let report = convergence_report(x, &fs, 300, 4).map_err(|e| e.to_string())?;
        let mut prev: Option<Rational> = None;
        for row in &report.rows {
            let n = row.n as i64;
            if n <= 100 {
                ensure(row.bound == rat(*c, 2 * n + 1), || format!("B_{n}({x}) = {}", row.bound))?;
            }
            if n >= 100 {
                ensure(row.bound < tol, || format!("B_{n}({x}) = {} not below 1/100", row.bound))?;
            }
            if let Some(p) = &prev {
                ensure(&row.bound <= p, || format!("B_n({x}) increases at n = {n}"))?;
            }
            ensure(row.lower_sq <= &row.bound * &row.bound, || format!("lower bound above B_{n}"))?;
            prev = Some(row.bound.clone());
        }
    }
    Ok(())
}

fn commutant() -> Check {
    let mut r = common::rng(9);
    let mut checked = 0;
    while checked < 200 {
        let a = common::random_element(&mut r, q2(), 4, 6, 8);
        let rep = commutant_probe(&a, &[2]).map_err(|e| e.to_string())?;
        let scalar = Element::scalar(q2(), rep.scalar_part.clone());
        if eq(&a, &scalar) {
            continue;
        }
        checked += 1;
        ensure(!rep.commutes, || format!("non-scalar {a} reported as commuting with S2"))?;
    }
    let fs = FolnerSequence::cyclic(2);
    for c in [Coeff::one(), Coeff::new(rat(-3, 7), rat(2, 5))] {
        let a = Element::scalar(q2(), c.clone());
        let rep = commutant_probe(&a, &[2]).map_err(|e| e.to_string())?;
        ensure(rep.commutes && rep.offending_degrees.is_empty() && rep.scalar_part == c, || {
            format!("probe on scalar {a}: {rep:?}")
        })?;
        let mean = cesaro_mean(&a, &fs, 200).map_err(|e| e.to_string())?;
        ensure(mean == a, || format!("Cesàro mean of scalar {a} is {mean}"))?;
    }
    let one_weight = cesaro_weight(&fs, Degree::ONE, 200).map_err(|e| e.to_string())?;
    ensure(one_weight.is_one(), || format!("degree-1 Cesàro weight {one_weight}"))?;
    // mean at N = 200 against the scalar part, coefficient by coefficient
    let tol = rat(1, 100);
    for i in 0..200 {
        let a = common::random_element(&mut r, q2(), 4, 6, 8);
        let rep = commutant_probe(&a, &[2]).map_err(|e| e.to_string())?;
        let target = Element::scalar(q2(), rep.scalar_part);
        let mean = cesaro_mean(&a, &fs, 200).map_err(|e| e.to_string())?;
        let gap = (&mean - &target).compress();
        let worst = gap
            .terms()
            .map(|(_, c)| c.re.abs().max(c.im.abs()))
            .max()
            .unwrap_or_else(Rational::zero);
        if worst > tol && !gap.is_zero() {
            let w = cesaro_weight(&fs, Degree::new(2, 1), 200).map_err(|e| e.to_string())?;
            return Err(format!(
                "Cesàro clause: sample {i} {a}: mean is off its scalar part by {:.4} \
                 (the weight of degree 2/1 at N = 200 is {:.4}; every weight tends to 1, \
                 so the mean tends to the element, not to its scalar part)",
                to_f64(&worst),
                to_f64(&w)
            ));
        }
    }
    Ok(())
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn oracle_consistency() -> Check {
    let mut r = common::rng(10);
    for i in 0..1000 {
        let sys = common::systems()[i % 3];
        let a = common::random_element(&mut r, sys, 4, 6, 12);
        let b = common::random_element(&mut r, sys, 4, 6, 12);
        let k = r.gen_range(-64..=64);
        let v = SparseVec::delta(k);
        ensure((&a * &b).apply(&v) == a.apply(&b.apply(&v)), || {
            format!("apply(ab) != apply(a)apply(b) for {a}, {b}, k = {k}")
        })?;
    }
    let sys = q2();
    for level in 1..=8u32 {
        let t = 2i64.pow(level);
        for _ in 0..4 {
            let (g, h) = (r.gen_range(-6..=6), r.gen_range(-6..=6));
            let (p, q) = (2i64.pow(r.gen_range(0..=2)), 2i64.pow(r.gen_range(0..=2)));
            let c = common::random_coeff(&mut r);
            let m = Element::from_terms(sys, [(c.clone(), g, p, q, h)]).unwrap();
            let refined = Element::from_terms(
                sys,
                (0..t).map(|j| (c.clone(), g + p * j, p * t, q * t, h - q * j)),
            )
            .unwrap();
            let diff = &m - &refined;
            ensure(diff.is_zero() == exhaustive_zero(&diff), || format!("oracle split at level {level}"))?;
            ensure(diff.is_zero(), || format!("level-{level} refinement of {m} is not equal"))?;
            let drop = r.gen_range(0..t);
            let partial = Element::from_terms(
                sys,
                (0..t)
                    .filter(|j| *j != drop)
                    .map(|j| (c.clone(), g + p * j, p * t, q * t, h - q * j)),
            )
            .unwrap();
            let diff = &m - &partial;
            ensure(diff.is_zero() == exhaustive_zero(&diff), || format!("oracle split at level {level}"))?;
            ensure(!diff.is_zero(), || format!("dropping a term at level {level} still cancels"))?;
        }
    }
    Ok(())
}

/// Zero test by brute force: on the residue class `r mod L` the monomial `(g, p, q, h)`
/// sends `r + L·t` to `p(r+h)/q + g + (pL/q)·t`, so terms cancel iff the coefficients
/// attached to each `(r, slope, intercept)` sum to zero.
fn exhaustive_zero(a: &Element) -> bool {
    let l = a.terms().fold(1i64, |acc, (m, _)| num_integer::lcm(acc, m.q()));
    let mut lines: BTreeMap<(i64, i64, i64), Coeff> = BTreeMap::new();
    for r in 0..l {
        for (m, c) in a.terms() {
            if (r + m.h()).rem_euclid(m.q()) != 0 {
                continue;
            }
            let key = (r, m.p() * l / m.q(), m.p() * (r + m.h()) / m.q() + m.g());
            let e = lines.entry(key).or_insert_with(Coeff::zero);
            *e += c;
        }
    }
    lines.values().all(Coeff::is_zero)
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "defining relations", limit: secs(1), run: relations },
        Criterion { id: 2, name: "Thompson Fourier coefficients", limit: secs(1), run: thompson_fourier },
        Criterion { id: 3, name: "Thompson unitarity and relation", limit: secs(5), run: thompson_relations },
        Criterion { id: 4, name: "reconstruction identity", limit: secs(30), run: reconstruction },
        Criterion { id: 5, name: "phi values", limit: secs(30), run: phi_values },
        Criterion { id: 6, name: "kernel factorisation", limit: secs(10), run: kernels },
        Criterion { id: 7, name: "PSD certificates", limit: secs(20), run: psd_certificates },
        Criterion { id: 8, name: "Fejér convergence", limit: secs(10), run: fejer_convergence },
        Criterion { id: 9, name: "relative commutant", limit: secs(30), run: commutant },
        Criterion { id: 10, name: "oracle consistency", limit: secs(30), run: oracle_consistency },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let verdict = match (&result, took <= c.limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (took {took:.2?}, limit {:?})", c.limit),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {:>2} {:<34} {:>10.2?}  {verdict}", c.id, c.name, took);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
