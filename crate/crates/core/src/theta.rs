//! Classical theta functions with characteristics for `g = 1, 2`, the
//! projective embeddings they define, and numerical checks of rank and
//! vanishing conditions on the embedded curves and surfaces.
//!
//! Coordinates of the embedding are `x_ν = θ[c_ν; 0](Z, v)` with
//! `c_ν = ν/n` for `g = 1` and `c_ν = (ν₁/d₁, ν₂/d₂)` for `g = 2`; they are
//! quasi-periodic for the lattice `Z·Z^g + D·Z^g`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::equations::{determinant, even_matrix, minors, odd_matrix, pfaffians, SymbolicMatrix};
use crate::error::{param, Error, Result};
use crate::exactnum::{Field, Rational};
use crate::polyring::{Family, Monomial, Polynomial, Variable};

type C = Complex64;
type P = Polynomial<Rational>;

const I: C = C::new(0.0, 1.0);

/// Default series tolerance.
pub const SERIES_TOL: f64 = 1e-12;
/// Default relative threshold for numeric rank.
pub const RANK_TOL: f64 = 1e-6;
/// Default relative residual threshold for vanishing checks.
pub const VANISHING_TOL: f64 = 1e-6;

/// Period matrix `Z` with polarization type `D`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodMatrix {
    z: Vec<Vec<C>>,
    d: Vec<u32>,
}

impl PeriodMatrix {
    pub fn new(z: Vec<Vec<C>>, d: Vec<u32>) -> Result<Self> {
        let g = d.len();
        if !(1..=2).contains(&g) || z.len() != g || z.iter().any(|r| r.len() != g) {
            return param("period matrices are 1x1 or 2x2 with a matching polarization");
        }
        if d.iter().any(|&x| x == 0) || (g == 2 && d[1] % d[0] != 0) {
            return param(format!("polarization {d:?} must be positive with d1 | d2"));
        }
        if g == 2 && (z[0][1] - z[1][0]).norm() > 1e-14 {
            return param("period matrix is not symmetric");
        }
        let pm = PeriodMatrix { z, d };
        if pm.min_eigenvalue() <= 0.0 {
            return param("imaginary part of the period matrix is not positive definite");
        }
        Ok(pm)
    }

    /// `τ` with polarization `(n)`.
    pub fn elliptic(tau: C, n: u32) -> Result<Self> {
        Self::new(vec![vec![tau]], vec![n])
    }

    pub fn surface(z11: C, z12: C, z22: C, d: (u32, u32)) -> Result<Self> {
        Self::new(vec![vec![z11, z12], vec![z12, z22]], vec![d.0, d.1])
    }

    /// `τ = 0.3 + 1.1i`.
    pub fn default_elliptic(n: u32) -> Result<Self> {
        Self::elliptic(C::new(0.3, 1.1), n)
    }

    /// `Z = [[1.1i, 0.21+0.17i], [0.21+0.17i, 1.3i]]`.
    pub fn default_surface(d: (u32, u32)) -> Result<Self> {
        Self::surface(C::new(0.0, 1.1), C::new(0.21, 0.17), C::new(0.0, 1.3), d)
    }

    pub fn genus(&self) -> usize {
        self.d.len()
    }
    pub fn polarization(&self) -> &[u32] {
        &self.d
    }
    pub fn z(&self) -> &[Vec<C>] {
        &self.z
    }
    /// Number of embedding coordinates, `d₁⋯d_g`.
    pub fn degree(&self) -> usize {
        self.d.iter().product::<u32>() as usize
    }

    fn im(&self, i: usize, j: usize) -> f64 {
        self.z[i][j].im
    }

    fn min_eigenvalue(&self) -> f64 {
        if self.genus() == 1 {
            return self.im(0, 0);
        }
        let (a, b, c) = (self.im(0, 0), self.im(0, 1), self.im(1, 1));
        let m = (a + c) / 2.0;
        m - (((a - c) / 2.0).powi(2) + b * b).sqrt()
    }

    /// `(Im Z)^{-1} w`.
    fn solve_im(&self, w: &[f64]) -> Vec<f64> {
        if self.genus() == 1 {
            return vec![w[0] / self.im(0, 0)];
        }
        let (a, b, c) = (self.im(0, 0), self.im(0, 1), self.im(1, 1));
        let det = a * c - b * b;
        vec![(c * w[0] - b * w[1]) / det, (a * w[1] - b * w[0]) / det]
    }

    /// `Z·b + D·a`.
    pub fn lattice_combination(&self, a: &[f64], b: &[f64]) -> Vec<C> {
        (0..self.genus())
            .map(|i| (0..self.genus()).map(|j| self.z[i][j] * b[j]).sum::<C>() + self.d[i] as f64 * a[i])
            .collect()
    }

    /// Uniform point of the fundamental domain.
    pub fn random_point(&self, rng: &mut impl Rng) -> Vec<C> {
        let g = self.genus();
        let a: Vec<f64> = (0..g).map(|_| rng.gen()).collect();
        let b: Vec<f64> = (0..g).map(|_| rng.gen()).collect();
        self.lattice_combination(&a, &b)
    }

    /// Characteristics `c_ν` in embedding order.
    pub fn characteristics(&self) -> Vec<ThetaCharacteristic> {
        let zero = vec![0.0; self.genus()];
        if self.genus() == 1 {
            let n = self.d[0];
            return (0..n).map(|k| ThetaCharacteristic::new(vec![k as f64 / n as f64], zero.clone())).collect();
        }
        let (d1, d2) = (self.d[0], self.d[1]);
        let mut out = Vec::new();
        for a in 0..d1 {
            for b in 0..d2 {
                out.push(ThetaCharacteristic::new(vec![a as f64 / d1 as f64, b as f64 / d2 as f64], zero.clone()));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaCharacteristic {
    pub c1: Vec<f64>,
    pub c2: Vec<f64>,
}

impl ThetaCharacteristic {
    pub fn new(c1: Vec<f64>, c2: Vec<f64>) -> Self {
        ThetaCharacteristic { c1, c2 }
    }
}

/// Largest box radius [`truncation`] will return.
pub const MAX_RADIUS: usize = 2000;

/// Box radius around the peak of the series whose Gaussian tail bound is
/// below `tol`, together with the box center.
pub fn truncation(pm: &PeriodMatrix, v: &[C], c: &ThetaCharacteristic, tol: f64) -> Result<(Vec<i64>, usize)> {
    let g = pm.genus();
    let imv: Vec<f64> = v.iter().map(|z| z.im).collect();
    let xs = pm.solve_im(&imv);
    // |term| = K exp(-π (x + x*)ᵀ Y (x + x*)) with x = m + c1.
    let quad: f64 = (0..g).map(|i| (0..g).map(|j| xs[i] * pm.im(i, j) * xs[j]).sum::<f64>()).sum();
    let log_k = PI * quad;
    let center: Vec<i64> = (0..g).map(|i| (-xs[i] - c.c1[i]).round() as i64).collect();
    let lam = pm.min_eigenvalue();
    let shell = |k: usize| if g == 1 { 2.0 } else { 8.0 * k as f64 };
    let log_tol = tol.ln();
    let mut r = 1;
    loop {
        // Points at sup-distance k from the center satisfy |x + x*| ≥ k - 1/2.
        let mut tail = 0.0;
        for k in r + 1..r + 200 {
            let e = log_k - PI * lam * (k as f64 - 0.5).powi(2);
            let t = shell(k) * e.exp();
            tail += t;
            if e < log_tol - 40.0 {
                break;
            }
        }
        if tail < tol {
            return Ok((center, r));
        }
        if r >= MAX_RADIUS {
            return Err(Error::Precision(format!("theta series needs more than {MAX_RADIUS} terms per direction")));
        }
        r += 1;
    }
}

/// The series summed over the box of the given center and radius.
pub fn theta_truncated(pm: &PeriodMatrix, v: &[C], c: &ThetaCharacteristic, center: &[i64], radius: usize) -> C {
    let g = pm.genus();
    let r = radius as i64;
    let w: Vec<C> = (0..g).map(|i| v[i] + c.c2[i]).collect();
    let term = |x: &[f64]| {
        let mut q = C::new(0.0, 0.0);
        for i in 0..g {
            for j in 0..g {
                q += pm.z[i][j] * (x[i] * x[j]);
            }
        }
        let lin: C = (0..g).map(|i| w[i] * x[i]).sum();
        (I * PI * q + 2.0 * PI * I * lin).exp()
    };
    let mut s = C::new(0.0, 0.0);
    if g == 1 {
        for m in center[0] - r..=center[0] + r {
            s += term(&[m as f64 + c.c1[0]]);
        }
    } else {
        for m0 in center[0] - r..=center[0] + r {
            for m1 in center[1] - r..=center[1] + r {
                s += term(&[m0 as f64 + c.c1[0], m1 as f64 + c.c1[1]]);
            }
        }
    }
    s
}

/// `θ[c1; c2](Z, v)` with absolute truncation error below `tol`.
pub fn theta(pm: &PeriodMatrix, v: &[C], c: &ThetaCharacteristic, tol: f64) -> Result<C> {
    if tol <= 0.0 {
        return param("series tolerance must be positive");
    }
    if v.len() != pm.genus() || c.c1.len() != pm.genus() || c.c2.len() != pm.genus() {
        return param("argument and characteristic must have length g");
    }
    let (center, r) = truncation(pm, v, c, tol)?;
    Ok(theta_truncated(pm, v, c, &center, r))
}

/// Point of the embedded curve or surface, scaled so its largest coordinate is 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddedPoint {
    pub source: Vec<C>,
    pub coords: Vec<C>,
}

pub fn embed(pm: &PeriodMatrix, v: &[C], tol: f64) -> Result<EmbeddedPoint> {
    let coords = pm.characteristics().iter().map(|c| theta(pm, v, c, tol)).collect::<Result<Vec<C>>>()?;
    let big = coords.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
    if big.norm() < tol {
        return Err(Error::Precision("all theta coordinates vanish numerically".into()));
    }
    Ok(EmbeddedPoint { source: v.to_vec(), coords: coords.iter().map(|z| z / big).collect() })
}

/// Relative distance between two vectors as projective points.
pub fn projective_distance(a: &[C], b: &[C]) -> f64 {
    let bb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    let ab: C = a.iter().zip(b).map(|(x, y)| y.conj() * x).sum();
    let s = ab / bb;
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - s * y).norm_sqr()).sum();
    let den: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Singular values, largest first.
pub fn singular_values(m: &DMatrix<C>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values `σ_k` with `σ_k / σ_1 > rel_tol`.
pub fn numeric_rank(m: &DMatrix<C>, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x / top > rel_tol).count(),
        _ => 0,
    }
}

fn point_value(pt: &[C], v: Variable) -> C {
    pt[v.index as usize]
}

fn assign<'a>(x: &'a [C], y: &'a [C]) -> impl Fn(Variable) -> C + 'a {
    move |v| match v.family {
        Family::X => point_value(x, v),
        Family::Y => point_value(y, v),
    }
}

/// Numeric matrix of a symbolic one at `(x, y)`.
pub fn evaluate_matrix(m: &SymbolicMatrix<Rational>, x: &[C], y: &[C]) -> DMatrix<C> {
    let f = assign(x, y);
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).evaluate(&f))
}

/// `|p(x, y)|` divided by the largest term magnitude at `(x, y)`.
pub fn relative_residual(p: &P, x: &[C], y: &[C]) -> f64 {
    let f = assign(x, y);
    let mut total = C::new(0.0, 0.0);
    let mut biggest: f64 = 0.0;
    for (m, c) in p.terms() {
        let mut t = c.to_complex();
        for &(v, e) in m.pairs() {
            t *= f(v).powu(e);
        }
        biggest = biggest.max(t.norm());
        total += t;
    }
    if biggest == 0.0 {
        0.0
    } else {
        total.norm() / biggest
    }
}

// ---------------------------------------------------------------------------
// Rank conditions

/// Which matrix and which variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankCase {
    /// `M_d` on a curve of degree `2d`: rank ≤ 1.
    EllipticEven,
    /// `M'_d` on a curve of degree `2d+1`: rank ≤ 2.
    EllipticOdd,
    /// `M_d` on a `(1,2d)` surface: rank ≤ 2.
    SurfaceEven,
    /// `M'_d` on a `(1,2d+1)` surface: rank ≤ 4.
    SurfaceOdd,
}

impl RankCase {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "elliptic-even" => Ok(RankCase::EllipticEven),
            "elliptic-odd" => Ok(RankCase::EllipticOdd),
            "surface-even" => Ok(RankCase::SurfaceEven),
            "surface-odd" => Ok(RankCase::SurfaceOdd),
            _ => param(format!("unknown rank case {s:?}")),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RankCase::EllipticEven => "elliptic-even",
            RankCase::EllipticOdd => "elliptic-odd",
            RankCase::SurfaceEven => "surface-even",
            RankCase::SurfaceOdd => "surface-odd",
        }
    }

    pub fn bound(self) -> usize {
        match self {
            RankCase::EllipticEven => 1,
            RankCase::EllipticOdd | RankCase::SurfaceEven => 2,
            RankCase::SurfaceOdd => 4,
        }
    }

    /// Default period matrix for parameter `d`.
    pub fn period_matrix(self, d: u32) -> Result<PeriodMatrix> {
        match self {
            RankCase::EllipticEven => PeriodMatrix::default_elliptic(2 * d),
            RankCase::EllipticOdd => PeriodMatrix::default_elliptic(2 * d + 1),
            RankCase::SurfaceEven => PeriodMatrix::default_surface((1, 2 * d)),
            RankCase::SurfaceOdd => PeriodMatrix::default_surface((1, 2 * d + 1)),
        }
    }

    fn matrix(self, d: u32) -> Result<SymbolicMatrix<Rational>> {
        match self {
            RankCase::EllipticEven | RankCase::SurfaceEven => even_matrix(d),
            RankCase::EllipticOdd | RankCase::SurfaceOdd => odd_matrix(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub case: RankCase,
    pub d: u32,
    pub bound: usize,
    pub samples: usize,
    pub max_rank: usize,
    /// Largest `σ_{bound+1} / σ_1` seen.
    pub max_gap: f64,
    /// Smallest `σ_bound / σ_1` seen; shows the bound is not trivially met.
    pub min_signal: f64,
}

impl RankReport {
    pub fn verified(&self) -> bool {
        self.max_rank <= self.bound
    }
}

/// Substitute `samples` random pairs of embedded points into the matrix of
/// `case` and record the numeric ranks.
pub fn rank_condition_suite(
    case: RankCase,
    d: u32,
    pm: &PeriodMatrix,
    samples: usize,
    rng: &mut impl Rng,
    rank_tol: f64,
    tol: f64,
) -> Result<RankReport> {
    let m = case.matrix(d)?;
    let expect_n = match case {
        RankCase::EllipticEven | RankCase::SurfaceEven => 2 * d,
        _ => 2 * d + 1,
    } as usize;
    if pm.degree() != expect_n {
        return param(format!("{} with d = {d} needs {expect_n} coordinates, period matrix gives {}", case.name(), pm.degree()));
    }
    let bound = case.bound();
    // Draw every sample first so the result does not depend on scheduling.
    let pairs: Vec<(Vec<C>, Vec<C>)> = (0..samples).map(|_| (pm.random_point(rng), pm.random_point(rng))).collect();
    let spectra = pairs
        .par_iter()
        .map(|(u, v)| {
            let x = embed(pm, u, tol)?;
            let y = embed(pm, v, tol)?;
            Ok(singular_values(&evaluate_matrix(&m, &x.coords, &y.coords)))
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let mut report = RankReport { case, d, bound, samples, max_rank: 0, max_gap: 0.0, min_signal: f64::INFINITY };
    for s in spectra {
        let top = s[0];
        report.max_rank = report.max_rank.max(s.iter().filter(|&&v| v / top > rank_tol).count());
        report.max_gap = report.max_gap.max(s.get(bound).map_or(0.0, |v| v / top));
        report.min_signal = report.min_signal.min(s[bound - 1] / top);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Vanishing checks

/// Outcome of one numeric claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub claim: String,
    pub samples: usize,
    pub max_residual: f64,
    pub threshold: f64,
}

impl Check {
    fn new(claim: impl Into<String>, threshold: f64) -> Self {
        Check { claim: claim.into(), samples: 0, max_residual: 0.0, threshold }
    }
    fn record(&mut self, r: f64) {
        self.samples += 1;
        if r.is_nan() || r > self.max_residual {
            self.max_residual = if r.is_nan() { f64::INFINITY } else { r };
        }
    }
    pub fn passed(&self) -> bool {
        self.max_residual < self.threshold
    }
}

fn random_complex(rng: &mut impl Rng) -> C {
    C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Affine combination `Σ a_k p_k` with random complex `a_k` summing to 1.
fn random_combination(pts: &[&EmbeddedPoint], rng: &mut impl Rng) -> Vec<C> {
    let mut coef: Vec<C> = pts[1..].iter().map(|_| random_complex(rng)).collect();
    coef.insert(0, C::new(1.0, 0.0) - coef.iter().sum::<C>());
    (0..pts[0].coords.len()).map(|i| pts.iter().zip(&coef).map(|(p, a)| a * p.coords[i]).sum()).collect()
}

/// The two quartics cutting out a degree-4 curve.
pub fn quartic_equations() -> Vec<P> {
    let p = |s: &str| P::parse(s, 4).expect("valid quartic factor");
    vec![
        &(&p("x[0]*y[0] + x[2]*y[2]") * &p("x[2]*y[0] + x[0]*y[2]"))
            - &(&p("x[1]*y[1] + x[3]*y[3]") * &p("x[1]*y[3] + x[3]*y[1]")),
        &(&p("x[3]*y[0] + x[1]*y[2]") * &p("x[1]*y[0] + x[3]*y[2]"))
            - &(&p("x[0]*y[1] + x[2]*y[3]") * &p("x[0]*y[3] + x[2]*y[1]")),
    ]
}

/// The surface `x_0 x_2 (x_0² + x_2²) - x_1 x_3 (x_1² + x_3²)` containing every
/// invariant degree-4 curve.
pub fn fermat_type_quartic() -> P {
    P::parse("x[0]^3*x[2] + x[0]*x[2]^3 - x[1]^3*x[3] - x[1]*x[3]^3", 4).expect("valid quartic")
}

/// The two quartics at a curve parameter `y` vanish on the curve, and every
/// curve point lies on the Fermat-type quartic.
pub fn quartic_check(pm: &PeriodMatrix, samples: usize, rng: &mut impl Rng, tol: f64) -> Result<Vec<Check>> {
    if pm.genus() != 1 || pm.degree() != 4 {
        return param("quartic check needs an elliptic curve of degree 4");
    }
    let eqs = quartic_equations();
    let f = fermat_type_quartic();
    let y = embed(pm, &pm.random_point(rng), tol)?;
    let mut a = Check::new("degree-4 curve satisfies both quartics", 1e-8);
    let mut b = Check::new("degree-4 curve lies on the Fermat-type quartic", 1e-8);
    for _ in 0..samples {
        let x = embed(pm, &pm.random_point(rng), tol)?;
        a.record(eqs.iter().map(|q| relative_residual(q, &x.coords, &y.coords)).fold(0.0, f64::max));
        b.record(relative_residual(&f, &x.coords, &x.coords));
    }
    Ok(vec![a, b])
}

/// Restrict `y` to `P^-` symbolically: `y_0 ↦ 0`, `y_{n-k} ↦ -y_k`.
fn y_to_minus(p: &P, n: u32) -> P {
    p.substitute_with(|v| {
        if v.family != Family::Y {
            return None;
        }
        match v.index {
            0 => Some(P::zero()),
            k if 2 * k > n => Some(-&P::var(Variable::y((n - k) as i64, n))),
            _ => None,
        }
    })
}

/// Half-period of the degree-`n` curve (`n` odd) whose image lies in `P^-`.
pub fn halfperiod_in_pminus(pm: &PeriodMatrix, tol: f64) -> Result<EmbeddedPoint> {
    if pm.genus() != 1 || pm.degree() % 2 == 0 {
        return param("half-period search needs an elliptic curve of odd degree");
    }
    let n = pm.degree();
    for (a, b) in [(0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.5, 0.5)] {
        let p = embed(pm, &pm.lattice_combination(&[a], &[b]), tol)?;
        let res = (0..n).map(|i| (p.coords[i] + p.coords[(n - i) % n]).norm()).fold(0.0, f64::max);
        if res < 1e-8 {
            return Ok(p);
        }
    }
    Err(Error::Precision("no half-period lands in P^- within 1e-8".into()))
}

/// `‖M + Mᵀ‖ / ‖M‖` for `M'_d(x, y)` at the all-ones `x`.
pub fn skew_residual(d: u32, y: &[C]) -> Result<f64> {
    let m = evaluate_matrix(&odd_matrix(d)?, &vec![C::new(1.0, 0.0); y.len()], y);
    Ok((&m + m.transpose()).norm() / m.norm())
}

fn max_residual(ps: &[P], x: &[C], y: &[C]) -> f64 {
    ps.iter().map(|p| relative_residual(p, x, y)).fold(0.0, f64::max)
}

/// Secant and trisecant vanishing on the degree-`n` curve.
///
/// * even `n = 2d ≥ 6`: `3×3` minors of `M_d(x, y)`, `y` on the curve;
/// * `n = 5`: `det M'_2(x, y)`;
/// * odd `n ≥ 7`: `6×6` pfaffians of `M'_d(x, y)` at the `P^-` half-period;
/// * `n = 7` also: `det M'_3(x, y)` on trisecant planes.
pub fn secant_vanishing_suite(pm: &PeriodMatrix, samples: usize, rng: &mut impl Rng, tol: f64) -> Result<Vec<Check>> {
    if pm.genus() != 1 {
        return param("secant suites run on elliptic curves");
    }
    let n = pm.degree() as u32;
    if n < 5 {
        return param("secant suites need degree >= 5");
    }
    let d = n / 2;
    let mut checks = Vec::new();
    let secant_points = |rng: &mut _| -> Result<Vec<C>> {
        let p = embed(pm, &pm.random_point(rng), tol)?;
        let q = embed(pm, &pm.random_point(rng), tol)?;
        Ok(random_combination(&[&p, &q], rng))
    };
    if n % 2 == 0 {
        let ms = minors(&even_matrix(d)?, 3)?;
        let y = embed(pm, &pm.random_point(rng), tol)?;
        let mut c = Check::new(format!("3x3 minors of M_{d}(x,y) vanish on secant lines"), VANISHING_TOL);
        for _ in 0..samples {
            c.record(max_residual(&ms, &secant_points(rng)?, &y.coords));
        }
        checks.push(c);
    } else if n == 5 {
        let det = determinant(&odd_matrix(2)?)?;
        let y = embed(pm, &pm.random_point(rng), tol)?;
        let mut c = Check::new("quintic det M'_2(x,y) vanishes on secant lines", VANISHING_TOL);
        for _ in 0..samples {
            c.record(relative_residual(&det, &secant_points(rng)?, &y.coords));
        }
        checks.push(c);
    } else {
        let y = halfperiod_in_pminus(pm, tol)?;
        let mut skew = Check::new(format!("M'_{d} is skew at the P^- half-period"), 1e-7);
        skew.record(skew_residual(d, &y.coords)?);
        checks.push(skew);
        let m = odd_matrix(d)?.map_entries("odd_matrix[Y in P^-]", |p| y_to_minus(p, n));
        let pf = pfaffians(&m, 6)?;
        let mut c = Check::new(format!("6x6 pfaffians of M'_{d}(x,y) vanish on secant lines"), VANISHING_TOL);
        for _ in 0..samples {
            c.record(max_residual(&pf, &secant_points(rng)?, &y.coords));
        }
        checks.push(c);
    }
    if n == 7 {
        let det = determinant(&odd_matrix(3)?)?;
        let y = embed(pm, &pm.random_point(rng), tol)?;
        let mut c = Check::new("septic det M'_3(x,y) vanishes on trisecant planes", VANISHING_TOL);
        for _ in 0..samples.div_ceil(2) {
            let pts: Vec<EmbeddedPoint> =
                (0..3).map(|_| embed(pm, &pm.random_point(rng), tol)).collect::<Result<_>>()?;
            let x = random_combination(&[&pts[0], &pts[1], &pts[2]], rng);
            c.record(relative_residual(&det, &x, &y.coords));
        }
        checks.push(c);
    }
    Ok(checks)
}

/// Singular values of the stacked coefficient vectors of `det M_3(x, y_k)`
/// for `k` random curve points `y_k` on the degree-6 curve.
pub fn pencil_singular_values(pm: &PeriodMatrix, k: usize, rng: &mut impl Rng, tol: f64) -> Result<Vec<f64>> {
    if pm.genus() != 1 || pm.degree() != 6 {
        return param("pencil check needs an elliptic curve of degree 6");
    }
    let det = determinant(&even_matrix(3)?)?;
    let mut xmonos: Vec<Monomial> = Vec::new();
    let mut split: Vec<(usize, Rational, Monomial)> = Vec::new();
    for (m, c) in det.terms() {
        let xs = Monomial::from_pairs(m.pairs().iter().copied().filter(|(v, _)| v.family == Family::X));
        let ys = Monomial::from_pairs(m.pairs().iter().copied().filter(|(v, _)| v.family == Family::Y));
        let col = match xmonos.iter().position(|z| *z == xs) {
            Some(i) => i,
            None => {
                xmonos.push(xs);
                xmonos.len() - 1
            }
        };
        split.push((col, c.clone(), ys));
    }
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let y = embed(pm, &pm.random_point(rng), tol)?;
        let mut row = vec![C::new(0.0, 0.0); xmonos.len()];
        for (col, c, ys) in &split {
            let mut t = c.to_complex();
            for &(v, e) in ys.pairs() {
                t *= y.coords[v.index as usize].powu(e);
            }
            row[*col] += t;
        }
        let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        rows.push(row.into_iter().map(|z| z / norm).collect::<Vec<C>>());
    }
    let m = DMatrix::from_fn(k, xmonos.len(), |i, j| rows[i][j]);
    Ok(singular_values(&m))
}

/// Heisenberg equivariance of the embedding of a curve of degree `n`:
/// `v ↦ v + 1` acts diagonally by `e^{2πiν/n}`, `v ↦ v + τ/n` shifts indices
/// `ν ↦ ν + 1` up to a common factor `C`, solved for per sample.
pub fn equivariance_checks(pm: &PeriodMatrix, samples: usize, rng: &mut impl Rng, tol: f64) -> Result<Vec<Check>> {
    let g = pm.genus();
    let chars = pm.characteristics();
    let mut quasi = Check::new("theta[c;0](v + e_mu) = exp(2 pi i c.e_mu) theta[c;0](v)", 1e-8);
    let mut lattice = Check::new("theta[c;0](v + Z e_mu/d_mu) = C_mu theta[c + e_mu/d_mu;0](v)", 1e-8);
    let mut proj = Check::new("translation by lattice fractions acts projectively by sigma and tau", 1e-8);
    for _ in 0..samples {
        let v = pm.random_point(rng);
        let base: Vec<C> = chars.iter().map(|c| theta(pm, &v, c, tol)).collect::<Result<_>>()?;
        let scale = base.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for mu in 0..g {
            // Quasi-periodicity in the real direction.
            let mut w = v.clone();
            w[mu] += 1.0;
            for (c, b) in chars.iter().zip(&base) {
                let lhs = theta(pm, &w, c, tol)?;
                let rhs = (2.0 * PI * I * c.c1[mu]).exp() * b;
                quasi.record((lhs - rhs).norm() / scale);
            }
            // Lattice direction Z e_mu / d_mu with a fitted constant.
            let dm = pm.d[mu] as f64;
            let w: Vec<C> = (0..g).map(|i| v[i] + pm.z[i][mu] / dm).collect();
            let lhs: Vec<C> = chars.iter().map(|c| theta(pm, &w, c, tol)).collect::<Result<_>>()?;
            let rhs: Vec<C> = chars
                .iter()
                .map(|c| {
                    let mut c2 = c.clone();
                    c2.c1[mu] += 1.0 / dm;
                    theta(pm, &v, &c2, tol)
                })
                .collect::<Result<_>>()?;
            let num: C = rhs.iter().zip(&lhs).map(|(r, l)| r.conj() * l).sum();
            let den: f64 = rhs.iter().map(|r| r.norm_sqr()).sum();
            let cmu = num / den;
            let lscale = lhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
            lattice.record(lhs.iter().zip(&rhs).map(|(l, r)| (l - cmu * r).norm()).fold(0.0, f64::max) / lscale);
        }
        if g == 1 {
            let n = pm.degree();
            let x = embed(pm, &v, tol)?;
            let mut w = v.clone();
            w[0] += 1.0;
            let tx = embed(pm, &w, tol)?;
            let expect: Vec<C> =
                (0..n).map(|k| (2.0 * PI * I * k as f64 / n as f64).exp() * x.coords[k]).collect();
            proj.record(projective_distance(&tx.coords, &expect));
            let w = vec![v[0] + pm.z[0][0] / n as f64];
            let sx = embed(pm, &w, tol)?;
            let expect: Vec<C> = (0..n).map(|k| x.coords[(k + 1) % n]).collect();
            proj.record(projective_distance(&sx.coords, &expect));
        }
    }
    let mut out = vec![quasi, lattice];
    if g == 1 {
        out.push(proj);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn theta_is_even_and_tail_is_honest() {
        let pm = PeriodMatrix::elliptic(C::new(0.0, 1.0), 1).unwrap();
        let c = ThetaCharacteristic::new(vec![0.0], vec![0.0]);
        let mut r = rng();
        for _ in 0..100 {
            let v = pm.random_point(&mut r);
            let a = theta(&pm, &v, &c, 1e-12).unwrap();
            let b = theta(&pm, &[-v[0]], &c, 1e-12).unwrap();
            assert!((a - b).norm() < 1e-11);
            let (center, rad) = truncation(&pm, &v, &c, 1e-12).unwrap();
            let wide = theta_truncated(&pm, &v, &c, &center, 2 * rad);
            assert!((a - wide).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_period_matrices() {
        assert!(PeriodMatrix::elliptic(C::new(0.0, -1.0), 3).is_err());
        assert!(PeriodMatrix::surface(C::new(0.0, 1.0), C::new(0.0, 2.0), C::new(0.0, 1.0), (1, 4)).is_err());
        assert!(PeriodMatrix::default_surface((2, 3)).is_err());
    }

    #[test]
    fn numeric_rank_examples() {
        assert_eq!(numeric_rank(&DMatrix::<C>::identity(3, 3), 1e-6), 3);
        let mut r = rng();
        let u: Vec<C> = (0..4).map(|_| random_complex(&mut r)).collect();
        let w: Vec<C> = (0..5).map(|_| random_complex(&mut r)).collect();
        assert_eq!(numeric_rank(&DMatrix::from_fn(4, 5, |i, j| u[i] * w[j]), 1e-6), 1);
        assert_eq!(numeric_rank(&DMatrix::<C>::zeros(2, 2), 1e-6), 0);
    }

    #[test]
    fn origin_lies_in_p_plus() {
        let pm = PeriodMatrix::default_elliptic(7).unwrap();
        let p = embed(&pm, &[C::new(0.0, 0.0)], 1e-12).unwrap();
        for i in 0..7 {
            assert!((p.coords[i] - p.coords[(7 - i) % 7]).norm() < 1e-8);
        }
    }

    #[test]
    fn halfperiods_in_p_minus() {
        for n in [5, 7] {
            let pm = PeriodMatrix::elliptic(C::new(0.0, 1.0), n).unwrap();
            let p = halfperiod_in_pminus(&pm, 1e-12).unwrap();
            assert!(skew_residual(n / 2, &p.coords).unwrap() < 1e-7);
        }
    }

    #[test]
    fn even_matrix_has_rank_one_on_the_curve() {
        let pm = PeriodMatrix::default_elliptic(14).unwrap();
        let rep = rank_condition_suite(RankCase::EllipticEven, 7, &pm, 2, &mut rng(), 1e-6, 1e-12).unwrap();
        assert!(rep.verified(), "{rep:?}");
        assert!(rep.min_signal > 1e-3);
    }

    #[test]
    fn embedding_is_lattice_periodic() {
        let pm = PeriodMatrix::default_elliptic(6).unwrap();
        let mut r = rng();
        let v = pm.random_point(&mut r);
        let a = embed(&pm, &v, 1e-12).unwrap();
        let w = vec![v[0] + 6.0 + pm.z()[0][0]];
        let b = embed(&pm, &w, 1e-12).unwrap();
        assert!(projective_distance(&a.coords, &b.coords) < 1e-8);
    }
}
