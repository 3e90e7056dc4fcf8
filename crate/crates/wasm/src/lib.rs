//! Three operations for the static demo page in `www/`. Each returns a JSON string;
//! the plain functions in [`api`] do the work and are what the native tests call.

use wasm_bindgen::prelude::*;

pub mod api {
    use num_traits::ToPrimitive;
    use qfejer_core::expr;
    use qfejer_core::fejer::{convergence_report, fejer_sum};
    use qfejer_core::folner::DEFAULT_KERNEL_BUDGET;
    use qfejer_core::gauge::{degree_support, GradedDecomposition};
    use qfejer_core::{FolnerSequence, HElem, Rational, SystemDescriptor};
    use serde_json::{json, Value};

    type Res = Result<String, String>;

    fn system(s: &str) -> Result<SystemDescriptor, String> {
        s.parse().map_err(|e: qfejer_core::Error| e.to_string())
    }

    fn exact(r: &Rational) -> Value {
        json!({ "exact": format!("{}/{}", r.numer(), r.denom()), "approx": r.to_f64().unwrap_or(f64::NAN) })
    }

    /// `φₙ(i)` for `|i| ≤ 2n + 2` on the cyclic group together with the kernel
    /// `Kₙ(θ) = Σ φₙ(i) cos(iθ)` sampled at `samples` points of `[−π, π]`.
    pub fn fejer_kernel(n: u32, samples: u32) -> Res {
        let fs = FolnerSequence::cyclic(2);
        let n = n as usize;
        let kernel = fs.kernel(n, DEFAULT_KERNEL_BUDGET).map_err(|e| e.to_string())?;
        let reach = 2 * n as i64 + 2;
        let mut phi = Vec::new();
        for i in -reach..=reach {
            let v = fs.phi(n, &HElem::cyclic(i)).map_err(|e| e.to_string())?;
            phi.push(json!({ "h": i, "value": exact(&v) }));
        }
        let coeffs: Vec<(f64, f64)> = kernel
            .terms
            .iter()
            .map(|(h, c)| (h.coord(0) as f64, c.to_f64().unwrap_or(0.0)))
            .collect();
        let samples = samples.max(2);
        let curve: Vec<[f64; 2]> = (0..samples)
            .map(|j| {
                let t = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / (samples - 1) as f64;
                [t, coeffs.iter().map(|(h, c)| c * (h * t).cos()).sum()]
            })
            .collect();
        Ok(json!({
            "n": n,
            "phi": phi,
            "curve": curve,
            "constant": exact(&kernel.constant()),
        })
        .to_string())
    }

    /// Degree support, graded components and the Fejér sum `Sₙ` of an expression.
    pub fn decompose(src: &str, sys: &str, n: u32) -> Res {
        let sys = system(sys)?;
        let a = expr::evaluate(src, sys).map_err(|e| e.to_string())?;
        let fs = FolnerSequence::for_system(sys);
        let mut comps = Vec::new();
        for (d, c) in GradedDecomposition::of(&a).components() {
            let h = fs.embed(*d).map_err(|e| e.to_string())?;
            let w = fs.phi(n as usize, &h).map_err(|e| e.to_string())?;
            comps.push(json!({ "degree": d.to_string(), "text": c.to_string(), "weight": exact(&w) }));
        }
        let support: Vec<String> = degree_support(&a).iter().map(|d| d.to_string()).collect();
        let smoothed = fejer_sum(&a, &fs, n as usize).map_err(|e| e.to_string())?;
        Ok(json!({
            "element": a.to_string(),
            "support": support,
            "components": comps,
            "fejer": smoothed.to_string(),
        })
        .to_string())
    }

    /// `Bₙ` and the probe lower bound for `n = 0 … nmax`.
    pub fn report(src: &str, sys: &str, nmax: u32, window: i32) -> Res {
        let sys = system(sys)?;
        let a = expr::evaluate(src, sys).map_err(|e| e.to_string())?;
        let fs = FolnerSequence::for_system(sys);
        let r = convergence_report(&a, &fs, nmax as usize, window.max(1) as i64)
            .map_err(|e| e.to_string())?;
        let rows: Vec<Value> = r
            .rows
            .iter()
            .map(|row| {
                json!({
                    "n": row.n,
                    "bound": exact(&row.bound),
                    "lower": row.lower_sq.to_f64().map(f64::sqrt).unwrap_or(0.0),
                    "exact_equal": row.exact_equal,
                })
            })
            .collect();
        Ok(json!({ "element": r.element, "rows": rows }).to_string())
    }
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fejerKernel)]
pub fn fejer_kernel(n: u32, samples: u32) -> Result<String, JsValue> {
    js(api::fejer_kernel(n, samples))
}

#[wasm_bindgen]
pub fn decompose(src: &str, system: &str, n: u32) -> Result<String, JsValue> {
    js(api::decompose(src, system, n))
}

#[wasm_bindgen]
pub fn report(src: &str, system: &str, nmax: u32, window: i32) -> Result<String, JsValue> {
    js(api::report(src, system, nmax, window))
}
