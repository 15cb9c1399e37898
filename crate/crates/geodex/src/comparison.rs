//! Scalar comparison functions of curvature and distance, and the
//! dimensional constants appearing in the inequalities.
//!
//! For a curvature bound `K ≤ 0` the model comparison functions are
//!
//! - `sn_K(r) = sinh(√|K| r)/√|K|` (and `sn_0(r) = r`),
//! - `cs_K = sn_K'`, `ct_K = cs_K / sn_K`,
//! - `V_K^n(s) = ∫₀^s sn_K^{n−1}(t) dt` — the area element integral whose
//!   product with the unit-sphere area gives geodesic-ball volumes,
//! - `W_K^n(r) = ∫₀^r V_K^n(s) ds`,
//! - `Ψ_K^n(r, g)` — the strictly positive integrand of the quantitative
//!   volume inequality, with `g ∈ [0, 1]` a gradient proxy.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;
use thiserror::Error;

use crate::util::adaptive_simpson;

/// Errors for arguments outside a function's mathematical domain.
#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("curvature bound must be ≤ 0, got {0}")]
    PositiveCurvature(f64),
    #[error("{func} undefined at {arg}")]
    Pole { func: &'static str, arg: f64 },
    #[error("{0}")]
    BadArgument(String),
}

/// An upper curvature bound `K ≤ 0` (units 1/length²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct CurvatureBound {
    kappa: f64,
}

impl CurvatureBound {
    pub const ZERO: CurvatureBound = CurvatureBound { kappa: 0.0 };

    /// Constructs a bound, rejecting positive (and non-finite) values.
    pub fn new(kappa: f64) -> Result<Self, DomainError> {
        if !kappa.is_finite() || kappa > 0.0 {
            return Err(DomainError::PositiveCurvature(kappa));
        }
        Ok(CurvatureBound { kappa })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn is_flat(&self) -> bool {
        self.kappa == 0.0
    }

    /// `√|K|`.
    pub fn sqrt_abs(&self) -> f64 {
        self.kappa.abs().sqrt()
    }
}

impl TryFrom<f64> for CurvatureBound {
    type Error = DomainError;
    fn try_from(v: f64) -> Result<Self, DomainError> {
        CurvatureBound::new(v)
    }
}

impl From<CurvatureBound> for f64 {
    fn from(k: CurvatureBound) -> f64 {
        k.kappa
    }
}

/// Below this value of `√|K|·r` the hyperbolic functions are evaluated by
/// series to avoid cancellation in differences like `sn − r`.
const SERIES_CUTOFF: f64 = 1e-4;

/// `sn_K(r)`: the solution of `j'' = |K| j`, `j(0)=0`, `j'(0)=1`.
pub fn sn(kappa: CurvatureBound, r: f64) -> f64 {
    assert!(r >= 0.0, "sn: r must be ≥ 0");
    if kappa.is_flat() {
        return r;
    }
    let a = kappa.sqrt_abs();
    let x = a * r;
    if x < SERIES_CUTOFF {
        r * (1.0 + x * x / 6.0 + x * x * x * x / 120.0)
    } else {
        x.sinh() / a
    }
}

/// `cs_K(r) = sn_K'(r)`.
pub fn cs(kappa: CurvatureBound, r: f64) -> f64 {
    assert!(r >= 0.0, "cs: r must be ≥ 0");
    if kappa.is_flat() {
        return 1.0;
    }
    let x = kappa.sqrt_abs() * r;
    if x < SERIES_CUTOFF {
        1.0 + x * x / 2.0 + x * x * x * x / 24.0
    } else {
        x.cosh()
    }
}

/// `ct_K(r) = cs_K(r)/sn_K(r)`; pole at `r = 0`.
pub fn ct(kappa: CurvatureBound, r: f64) -> Result<f64, DomainError> {
    if r <= 0.0 {
        return Err(DomainError::Pole { func: "ct", arg: r });
    }
    Ok(cs(kappa, r) / sn(kappa, r))
}

/// `sn_K(r) − r`, evaluated without cancellation for small arguments.
pub fn sn_minus_r(kappa: CurvatureBound, r: f64) -> f64 {
    assert!(r >= 0.0);
    if kappa.is_flat() {
        return 0.0;
    }
    let x = kappa.sqrt_abs() * r;
    if x < 1e-2 {
        let x2 = x * x;
        r * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0))
    } else {
        sn(kappa, r) - r
    }
}

/// `cs_K(r) − 1 = 2 sinh²(√|K| r / 2)`, exact near zero.
fn cs_minus_one(kappa: CurvatureBound, r: f64) -> f64 {
    if kappa.is_flat() {
        return 0.0;
    }
    let s = (0.5 * kappa.sqrt_abs() * r).sinh();
    2.0 * s * s
}

/// `V_K^n(s) = ∫₀^s sn_K^{n−1}(t) dt`.
///
/// Closed forms for `n = 2, 3`; the integration-by-parts recursion
/// `V^n = (sn^{n−2} cs − (n−2) V^{n−2}) / ((n−1)|K|)` for `n ≥ 4`; a flat
/// small-argument series below the cutoff where the recursion cancels.
pub fn v_ball(kappa: CurvatureBound, n: u32, s: f64) -> f64 {
    assert!(n >= 2, "v_ball: n must be ≥ 2");
    assert!(s >= 0.0, "v_ball: s must be ≥ 0");
    if kappa.is_flat() {
        return s.powi(n as i32) / n as f64;
    }
    let a = kappa.sqrt_abs();
    if a * s < 1e-3 {
        return v_ball_series(kappa, n, s);
    }
    let abs_k = kappa.kappa().abs();
    match n {
        2 => cs_minus_one(kappa, s) / abs_k,
        3 => sn_minus_r(kappa, 2.0 * s) / (4.0 * abs_k),
        _ => {
            let nf = n as f64;
            (sn(kappa, s).powi(n as i32 - 2) * cs(kappa, s)
                - (nf - 2.0) * v_ball(kappa, n - 2, s))
                / ((nf - 1.0) * abs_k)
        }
    }
}

/// Maclaurin expansion of `V_K^n` about `s = 0` (three terms).
fn v_ball_series(kappa: CurvatureBound, n: u32, s: f64) -> f64 {
    let nf = n as f64;
    let k = kappa.kappa().abs();
    let s2 = s * s;
    let lead = s.powi(n as i32) / nf;
    let c1 = (nf - 1.0) / (6.0 * (nf + 2.0)) * k * s2 * nf;
    let c2 = ((nf - 1.0) / 120.0 + (nf - 1.0) * (nf - 2.0) / 72.0) * k * k * s2 * s2 * nf
        / (nf + 4.0);
    lead * (1.0 + c1 + c2)
}

/// `W_K^n(r) = ∫₀^r V_K^n(s) ds`.
///
/// Closed forms for `n = 2, 3`; for `n ≥ 4` the inductive formula
/// `W^n = (sn^{n−1}/(n−1) − (n−2) W^{n−2}) / ((n−1)|K|)`.
pub fn w_double(kappa: CurvatureBound, n: u32, r: f64) -> f64 {
    assert!(n >= 2, "w_double: n must be ≥ 2");
    assert!(r >= 0.0, "w_double: r must be ≥ 0");
    if kappa.is_flat() {
        return r.powi(n as i32 + 1) / (n as f64 * (n as f64 + 1.0));
    }
    let a = kappa.sqrt_abs();
    if a * r < 1e-3 {
        return w_double_series(kappa, n, r);
    }
    let abs_k = kappa.kappa().abs();
    match n {
        2 => sn_minus_r(kappa, r) / abs_k,
        3 => sn_minus_r(kappa, r) * (sn(kappa, r) + r) / (4.0 * abs_k),
        _ => {
            let nf = n as f64;
            (sn(kappa, r).powi(n as i32 - 1) / (nf - 1.0)
                - (nf - 2.0) * w_double(kappa, n - 2, r))
                / ((nf - 1.0) * abs_k)
        }
    }
}

/// Maclaurin expansion of `W_K^n` about `r = 0` (three terms).
fn w_double_series(kappa: CurvatureBound, n: u32, r: f64) -> f64 {
    let nf = n as f64;
    let k = kappa.kappa().abs();
    let r2 = r * r;
    let lead = r.powi(n as i32 + 1) / (nf * (nf + 1.0));
    let c1 = (nf - 1.0) * nf * (nf + 1.0) / (6.0 * (nf + 2.0) * (nf + 3.0)) * k * r2;
    let c2 = ((nf - 1.0) / 120.0 + (nf - 1.0) * (nf - 2.0) / 72.0) * nf * (nf + 1.0)
        / ((nf + 4.0) * (nf + 5.0))
        * k
        * k
        * r2
        * r2;
    lead * (1.0 + c1 + c2)
}

/// `Ψ_K^n(r, g)` with `g ∈ [0, 1]` the gradient proxy:
///
/// - `n = 2`: `g + (1−g)·r/sn_K(r)`
/// - `n = 3`: `g + (1−g)·r²/sn_K²(r)`
/// - `n ≥ 4`: `g + (1−g)·(n−1)(n−2)·W_K^{n−2}(r)/sn_K^{n−1}(r)`
///
/// Strictly positive for `r > 0`.
pub fn psi(kappa: CurvatureBound, n: u32, r: f64, g: f64) -> Result<f64, DomainError> {
    if kappa.is_flat() {
        return Err(DomainError::BadArgument(
            "psi requires a strictly negative curvature bound".into(),
        ));
    }
    if r <= 0.0 {
        return Err(DomainError::Pole { func: "psi", arg: r });
    }
    if !(0.0..=1.0).contains(&g) {
        return Err(DomainError::BadArgument(format!(
            "psi: gradient proxy must lie in [0,1], got {g}"
        )));
    }
    let s = sn(kappa, r);
    let shape = match n {
        2 => r / s,
        3 => r * r / (s * s),
        n if n >= 4 => {
            let nf = n as f64;
            (nf - 1.0) * (nf - 2.0) * w_double(kappa, n - 2, r) / s.powi(n as i32 - 1)
        }
        _ => return Err(DomainError::BadArgument(format!("psi: n must be ≥ 2, got {n}"))),
    };
    Ok(g + (1.0 - g) * shape)
}

/// Surface area of the unit `d`-sphere `S^d ⊂ R^{d+1}`.
pub fn sphere_area(d: u32) -> f64 {
    let df = d as f64;
    2.0 * std::f64::consts::PI.powf((df + 1.0) / 2.0) / gamma((df + 1.0) / 2.0)
}

/// Volume of the unit `n`-ball in `R^n`.
pub fn ball_volume(n: u32) -> f64 {
    let nf = n as f64;
    std::f64::consts::PI.powf(nf / 2.0) / gamma(nf / 2.0 + 1.0)
}

/// The signed coefficient `D_m = (−1)^(C(m+1,2)+1)/m!`.
pub fn d_m(m: u32) -> f64 {
    let tri = (m * (m + 1)) / 2;
    let sign = if (tri + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mut fact = 1.0;
    for i in 2..=m {
        fact *= i as f64;
    }
    sign / fact
}

/// The normalizer `k_n = 2 / ∫_{S^{n−1}} |⟨u, ν⟩|^{n/(n−2)} du` for `n ≥ 3`,
/// evaluated by adaptive quadrature on the latitude angle.
pub fn croke_k(n: u32) -> Result<f64, DomainError> {
    if n < 3 {
        return Err(DomainError::BadArgument(format!(
            "croke_k: defined for n ≥ 3 only (exponent pole at n = 2), got {n}"
        )));
    }
    let p = n as f64 / (n as f64 - 2.0);
    let latitude = sphere_area(n - 2);
    let integral = latitude
        * adaptive_simpson(
            &|theta: f64| theta.cos().abs().powf(p) * theta.sin().powi(n as i32 - 2),
            0.0,
            std::f64::consts::PI,
            1e-13,
        );
    Ok(2.0 / integral)
}

/// The constant `C_n`: `4π` for `n = 2`, otherwise
/// `Σ_{n−1} · k_n^{(n−2)/(n−1)}`.
pub fn c_n_big(n: u32) -> f64 {
    if n == 2 {
        4.0 * std::f64::consts::PI
    } else {
        let e = (n as f64 - 2.0) / (n as f64 - 1.0);
        sphere_area(n - 1) * croke_k(n).expect("n ≥ 3").powf(e)
    }
}

/// The dimensional constants for ambient dimension `n`, bundled.
#[derive(Debug, Clone, Copy)]
pub struct DimensionalConstants {
    pub n: u32,
    /// `Σ_{n−1}`: surface area of the unit `(n−1)`-sphere.
    pub sigma: f64,
    /// `B_n`: volume of the unit `n`-ball.
    pub ball: f64,
    /// `k_n` (n ≥ 3 only).
    pub k_n: Option<f64>,
    /// `C_n`.
    pub c_n_big: f64,
}

impl DimensionalConstants {
    pub fn new(n: u32) -> Self {
        assert!(n >= 2, "DimensionalConstants: n must be ≥ 2");
        DimensionalConstants {
            n,
            sigma: sphere_area(n - 1),
            ball: ball_volume(n),
            k_n: if n >= 3 { Some(croke_k(n).unwrap()) } else { None },
            c_n_big: c_n_big(n),
        }
    }
}
