//! Constant-curvature model-space geometry kernel.
//!
//! A [`ModelSpace`] is either Euclidean `R^n` (`K = 0`) or hyperbolic
//! `H^n(K)` (`K < 0`) in the hyperboloid model: the upper sheet of
//! `⟨p, p⟩_Mink = −1/|K|` inside Minkowski space `R^{n,1}` with signature
//! `(−, +, …, +)` and coordinates `(x₀, x₁, …, x_n)`.
//!
//! The hyperboloid model is used (rather than a ball model) because
//! geodesics are hyperboloid sections of linear 2-planes and totally
//! geodesic simplices are sections of linear `(m+1)`-planes, so
//! geodesic–simplex intersection reduces to exact linear algebra.

use nalgebra::DVector;
use thiserror::Error;

use crate::comparison::{sn, CurvatureBound};

/// Ambient coordinates of a point: length `n` for `K = 0`, length `n + 1`
/// (Minkowski) for `K < 0`.
pub type Coords = DVector<f64>;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("coordinate length {got} does not match the model space (want {want})")]
    DimensionMismatch { got: usize, want: usize },
    #[error("point does not satisfy the model-space constraint (defect {0:.3e})")]
    OffManifold(f64),
}

/// A constant-curvature Cartan-Hadamard model space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpace {
    n: u32,
    kappa: CurvatureBound,
}

/// A point of a [`ModelSpace`], stored in ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(pub Coords);

/// A tangent vector: basepoint plus ambient components (Minkowski-orthogonal
/// to the basepoint when `K < 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub base: Point,
    pub v: Coords,
}

/// A totally geodesic `m`-simplex: `m + 1` vertices plus an orientation
/// sign. For `K < 0` the simplex is the hyperboloid section of the linear
/// span of its vertices.
#[derive(Debug, Clone)]
pub struct GeodesicSimplex {
    pub vertices: Vec<Point>,
    pub orientation: f64,
}

/// One transverse crossing of a geodesic with a simplex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    /// Arc-length parameter along the geodesic (unit speed).
    pub t: f64,
    /// Oriented intersection sign, `±1`.
    pub sign: f64,
}

/// Result of an intersection query that may graze the simplex boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum IntersectionResult {
    Crossings(Vec<Crossing>),
    /// The crossing is within tolerance of a face or of tangency; the
    /// caller must resample its geodesic.
    Degenerate,
}

/// Tolerance below which a crossing counts as grazing a simplex face or as
/// tangent to the simplex plane.
const DEGENERACY_TOL: f64 = 1e-9;

impl ModelSpace {
    pub fn new(n: u32, kappa: CurvatureBound) -> Self {
        assert!(n >= 2, "ModelSpace: n must be ≥ 2");
        ModelSpace { n, kappa }
    }

    pub fn euclidean(n: u32) -> Self {
        ModelSpace::new(n, CurvatureBound::ZERO)
    }

    pub fn hyperbolic(n: u32, kappa: f64) -> Self {
        let k = CurvatureBound::new(kappa).expect("kappa must be ≤ 0");
        assert!(k.kappa() < 0.0, "hyperbolic space needs kappa < 0");
        ModelSpace::new(n, k)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kappa(&self) -> CurvatureBound {
        self.kappa
    }

    pub fn is_flat(&self) -> bool {
        self.kappa.is_flat()
    }

    /// Length of ambient coordinate vectors.
    pub fn ambient_dim(&self) -> usize {
        if self.is_flat() {
            self.n as usize
        } else {
            self.n as usize + 1
        }
    }

    /// The ambient inner product: Euclidean for `K = 0`, Minkowski
    /// (`−x₀y₀ + Σᵢ xᵢyᵢ`) for `K < 0`.
    pub fn dot(&self, a: &Coords, b: &Coords) -> f64 {
        if self.is_flat() {
            a.dot(b)
        } else {
            let mut s = -a[0] * b[0];
            for i in 1..a.len() {
                s += a[i] * b[i];
            }
            s
        }
    }

    /// Norm of a spacelike ambient vector.
    pub fn norm(&self, a: &Coords) -> f64 {
        self.dot(a, a).max(0.0).sqrt()
    }

    /// The model origin: `0` for `K = 0`, `(1/√|K|, 0, …, 0)` for `K < 0`.
    pub fn origin(&self) -> Point {
        let mut c = DVector::zeros(self.ambient_dim());
        if !self.is_flat() {
            c[0] = 1.0 / self.kappa.sqrt_abs();
        }
        Point(c)
    }

    /// Standard orthonormal tangent basis at the origin: the spatial
    /// coordinate directions.
    pub fn origin_frame(&self) -> Vec<TangentVector> {
        let o = self.origin();
        let off = self.ambient_dim() - self.n as usize;
        (0..self.n as usize)
            .map(|i| {
                let mut v = DVector::zeros(self.ambient_dim());
                v[off + i] = 1.0;
                TangentVector { base: o.clone(), v }
            })
            .collect()
    }

    /// Checks the hyperboloid constraint; `K = 0` points are always valid.
    pub fn check_point(&self, p: &Point) -> Result<(), GeometryError> {
        if p.0.len() != self.ambient_dim() {
            return Err(GeometryError::DimensionMismatch {
                got: p.0.len(),
                want: self.ambient_dim(),
            });
        }
        if !self.is_flat() {
            let defect = (self.dot(&p.0, &p.0) + 1.0 / self.kappa.kappa().abs()).abs();
            if defect > 1e-6 || p.0[0] <= 0.0 {
                return Err(GeometryError::OffManifold(defect));
            }
        }
        Ok(())
    }

    /// Projects a point back onto the hyperboloid along the Minkowski
    /// radial direction (no-op for `K = 0`). Called after every `exp` and
    /// transport to bound constraint drift.
    pub fn renormalize_point(&self, p: &mut Point) {
        if self.is_flat() {
            return;
        }
        let q = -self.dot(&p.0, &p.0) * self.kappa.kappa().abs();
        if q > 0.0 {
            p.0 /= q.sqrt();
        }
    }

    /// Removes the component of `v` along the basepoint (no-op for `K = 0`),
    /// so the result is again tangent to the hyperboloid.
    pub fn project_tangent(&self, base: &Point, v: &mut Coords) {
        if self.is_flat() {
            return;
        }
        let c = self.kappa.kappa().abs() * self.dot(&base.0, v);
        *v += c * &base.0;
    }

    /// Geodesic distance.
    pub fn distance(&self, p: &Point, q: &Point) -> f64 {
        if self.is_flat() {
            (&p.0 - &q.0).norm()
        } else {
            let abs_k = self.kappa.kappa().abs();
            let c = (-abs_k * self.dot(&p.0, &q.0)).max(1.0);
            c.acosh() / abs_k.sqrt()
        }
    }

    /// Exponential map: follows the unit-speed geodesic from the base of
    /// `v` in direction `v/|v|` for arc length `|v|`.
    pub fn exp(&self, v: &TangentVector) -> Point {
        let t = self.norm(&v.v);
        if self.is_flat() {
            return Point(&v.base.0 + &v.v);
        }
        if t == 0.0 {
            return v.base.clone();
        }
        let a = self.kappa.sqrt_abs();
        let mut p = Point((a * t).cosh() * &v.base.0 + (sn(self.kappa, t) / t) * &v.v);
        self.renormalize_point(&mut p);
        p
    }

    /// Logarithm map: the tangent vector at `p` whose exponential is `q`.
    pub fn log(&self, p: &Point, q: &Point) -> TangentVector {
        if self.is_flat() {
            return TangentVector { base: p.clone(), v: &q.0 - &p.0 };
        }
        let d = self.distance(p, q);
        // acosh resolves distances only down to ~1e−8 near coincident
        // points; below that the logarithm is numerically zero.
        if d < 1e-7 {
            return TangentVector { base: p.clone(), v: DVector::zeros(self.ambient_dim()) };
        }
        // Component of q orthogonal (Minkowski) to p has norm sn(d).
        let abs_k = self.kappa.kappa().abs();
        let mut w = &q.0 + (abs_k * self.dot(&p.0, &q.0)) * &p.0;
        let nw = self.norm(&w);
        w *= d / nw;
        TangentVector { base: p.clone(), v: w }
    }

    /// Parallel transport of `v` (based at `p`) along the geodesic to `q`.
    pub fn parallel_transport(&self, v: &TangentVector, q: &Point) -> TangentVector {
        if self.is_flat() {
            return TangentVector { base: q.clone(), v: v.v.clone() };
        }
        let p = &v.base;
        let r2 = 1.0 / self.kappa.kappa().abs();
        let denom = r2 - self.dot(&p.0, &q.0);
        let coeff = self.dot(&q.0, &v.v) / denom;
        let mut w = &v.v + coeff * (&p.0 + &q.0);
        self.project_tangent(&Point(q.0.clone()), &mut w);
        TangentVector { base: q.clone(), v: w }
    }

    /// Point on the unit-speed geodesic with initial position `p` and unit
    /// direction `u` at arc-length parameter `t` (which may be negative).
    pub fn geodesic_point(&self, p: &Point, u: &Coords, t: f64) -> Point {
        if self.is_flat() {
            return Point(&p.0 + t * u);
        }
        let a = self.kappa.sqrt_abs();
        let mut out = Point((a * t).cosh() * &p.0 + (a * t).sinh() / a * u);
        self.renormalize_point(&mut out);
        out
    }

    /// Unit velocity of the same geodesic at parameter `t`.
    pub fn geodesic_velocity(&self, p: &Point, u: &Coords, t: f64) -> Coords {
        if self.is_flat() {
            return u.clone();
        }
        let a = self.kappa.sqrt_abs();
        a * (a * t).sinh() * &p.0 + (a * t).cosh() * u
    }

    /// Transverse crossings of a geodesic (through `p` with unit direction
    /// `u`; the full line if `ray` is false, the half-line `t ≥ t_min`
    /// otherwise) with a totally geodesic simplex.
    ///
    /// The sign of each crossing is the orientation of the ambient frame
    /// `(geodesic velocity, simplex edge frame)` — for `K < 0` prefixed by
    /// the hyperboloid radial direction — multiplied by the simplex's own
    /// orientation sign.
    pub fn geodesic_simplex_intersections(
        &self,
        p: &Point,
        u: &Coords,
        simplex: &GeodesicSimplex,
        ray: bool,
        t_min: f64,
    ) -> IntersectionResult {
        if self.is_flat() {
            self.flat_intersections(p, u, simplex, ray, t_min)
        } else {
            self.hyperbolic_intersections(p, u, simplex, ray, t_min)
        }
    }

    /// Flat case: solve `p + t u = Σ λᵢ vᵢ`, `Σ λᵢ = 1`, `λᵢ ≥ 0`.
    fn flat_intersections(
        &self,
        p: &Point,
        u: &Coords,
        simplex: &GeodesicSimplex,
        ray: bool,
        t_min: f64,
    ) -> IntersectionResult {
        let n = self.n as usize;
        let verts = &simplex.vertices;
        debug_assert_eq!(verts.len(), n, "flat facet must have n vertices");
        // Unknowns: (λ₂, …, λ_n, t). Equations: p + t u − v₁ = Σ_{i≥2} λᵢ (vᵢ − v₁).
        let mut a = nalgebra::DMatrix::zeros(n, n);
        for (j, vj) in verts.iter().enumerate().skip(1) {
            let e = &vj.0 - &verts[0].0;
            for i in 0..n {
                a[(i, j - 1)] = e[i];
            }
        }
        for i in 0..n {
            a[(i, n - 1)] = -u[i];
        }
        let rhs = &p.0 - &verts[0].0;
        let lu = a.clone().lu();
        let det = lu.determinant();
        if det.abs() < DEGENERACY_TOL {
            // Geodesic (near-)parallel to the simplex plane: the crossing,
            // if any, is a tangency; flag it so the caller resamples.
            return IntersectionResult::Degenerate;
        }
        let sol = match lu.solve(&rhs) {
            Some(s) => s,
            None => return IntersectionResult::Degenerate,
        };
        let t = sol[n - 1];
        let mut lambdas = Vec::with_capacity(n);
        let mut rest = 1.0;
        for j in 0..n - 1 {
            lambdas.push(sol[j]);
            rest -= sol[j];
        }
        lambdas.push(rest);
        self.classify_crossing(p, u, simplex, t, &lambdas, ray, t_min)
    }

    /// Hyperbolic case: the geodesic lies in span{p, u}; the simplex lies in
    /// the linear span of its vertices, a hyperplane through the origin.
    fn hyperbolic_intersections(
        &self,
        p: &Point,
        u: &Coords,
        simplex: &GeodesicSimplex,
        ray: bool,
        t_min: f64,
    ) -> IntersectionResult {
        let dim = self.ambient_dim();
        let verts = &simplex.vertices;
        debug_assert_eq!(verts.len(), dim - 1, "hyperbolic facet must have n vertices");
        // Euclidean normal w of the vertex span: nullspace of the vertex
        // matrix. Crossing condition: cosh(at)(w·p) + sinh(at)/a (w·u) = 0.
        let w = simplex_normal(verts, dim);
        let a = self.kappa.sqrt_abs();
        let wp = w.dot(&p.0);
        let wu = w.dot(u);
        // tanh(at) = −a·wp/wu, requires |a·wp| < |wu|.
        let ratio = -a * wp / wu;
        if !ratio.is_finite() || ratio.abs() >= 1.0 {
            if (ratio.abs() - 1.0).abs() < DEGENERACY_TOL {
                return IntersectionResult::Degenerate;
            }
            return IntersectionResult::Crossings(vec![]);
        }
        let t = ratio.atanh() / a;
        let x = self.geodesic_point(p, u, t);
        // Barycentric-like coefficients: solve V μ = x in the vertex span.
        let mut vmat = nalgebra::DMatrix::zeros(dim, dim - 1);
        for (j, vj) in verts.iter().enumerate() {
            for i in 0..dim {
                vmat[(i, j)] = vj.0[i];
            }
        }
        let mu = match vmat.svd(true, true).solve(&x.0, 1e-12) {
            Ok(m) => m,
            Err(_) => return IntersectionResult::Degenerate,
        };
        let total: f64 = mu.iter().sum();
        if total.abs() < DEGENERACY_TOL {
            return IntersectionResult::Degenerate;
        }
        let lambdas: Vec<f64> = mu.iter().map(|m| m / total).collect();
        self.classify_crossing(p, u, simplex, t, &lambdas, ray, t_min)
    }

    /// Shared crossing acceptance: inside test on the simplex coefficients,
    /// grazing detection, ray clipping, and the orientation sign.
    #[allow(clippy::too_many_arguments)]
    fn classify_crossing(
        &self,
        p: &Point,
        u: &Coords,
        simplex: &GeodesicSimplex,
        t: f64,
        lambdas: &[f64],
        ray: bool,
        t_min: f64,
    ) -> IntersectionResult {
        if ray && t < t_min {
            return IntersectionResult::Crossings(vec![]);
        }
        let min_l = lambdas.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_l < -DEGENERACY_TOL {
            return IntersectionResult::Crossings(vec![]);
        }
        if min_l < DEGENERACY_TOL {
            return IntersectionResult::Degenerate;
        }
        let sign = self.crossing_sign(p, u, simplex, t);
        if sign == 0.0 {
            return IntersectionResult::Degenerate;
        }
        IntersectionResult::Crossings(vec![Crossing { t, sign }])
    }

    /// Orientation sign of a transverse crossing at parameter `t`:
    /// `sgn det [radial?, velocity, edge frame]` times the simplex
    /// orientation.
    fn crossing_sign(&self, p: &Point, u: &Coords, simplex: &GeodesicSimplex, t: f64) -> f64 {
        let dim = self.ambient_dim();
        let verts = &simplex.vertices;
        let vel = self.geodesic_velocity(p, u, t);
        let mut m = nalgebra::DMatrix::zeros(dim, dim);
        let mut col = 0;
        if !self.is_flat() {
            let x = self.geodesic_point(p, u, t);
            for i in 0..dim {
                m[(i, col)] = x.0[i];
            }
            col += 1;
        }
        for i in 0..dim {
            m[(i, col)] = vel[i];
        }
        col += 1;
        for vj in verts.iter().skip(1) {
            let e = &vj.0 - &verts[0].0;
            for i in 0..dim {
                m[(i, col)] = e[i];
            }
            col += 1;
        }
        debug_assert_eq!(col, dim);
        let det = m.lu().determinant();
        if det.abs() < 1e-14 {
            0.0
        } else {
            det.signum() * simplex.orientation
        }
    }
}

/// Euclidean unit normal of the linear span of `dim − 1` vertices in
/// `R^dim` (hyperbolic facet hyperplane through the origin).
fn simplex_normal(verts: &[Point], dim: usize) -> Coords {
    // Generalized cross product: w_j = (−1)^j · det(vertex matrix with
    // column j removed), which is orthogonal to every vertex.
    let mut w = DVector::zeros(dim);
    let mut minor = nalgebra::DMatrix::zeros(verts.len(), dim - 1);
    for j in 0..dim {
        for (i, v) in verts.iter().enumerate() {
            let mut c = 0;
            for l in 0..dim {
                if l != j {
                    minor[(i, c)] = v.0[l];
                    c += 1;
                }
            }
        }
        let det = minor.clone().lu().determinant();
        w[j] = if j % 2 == 0 { det } else { -det };
    }
    let n = w.norm();
    if n > 0.0 {
        w /= n;
    }
    w
}
