//! Finite Heisenberg groups acting on cyclically indexed coordinates.
//!
//! An element is stored in the normal form `α · σ^a τ^b ι^e` where, on the
//! coordinate functions,
//!
//! * `σ(x_i) = x_{i-1}`,
//! * `τ(x_i) = ξ^{-i} x_i` with `ξ = exp(2πi/n)`,
//! * `ι(x_i) = x_{-i}`.
//!
//! Composition `g·h` means "apply `h`, then `g`", so that polynomial action
//! and point action are both left actions. With this convention
//! `τσ = ξ·στ`.
//!
//! The bi-index group `H_{d1,d2}` acts on coordinates indexed by
//! `Z/d1 × Z/d2`, flattened as `i·d2 + j`; `H_n` is the case `d1 = 1`.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{param, Result};
use crate::exactnum::{int, Cyclotomic, Field, Rational};
use crate::linalg::PolySpan;
use crate::polyring::{Family, Monomial, Polynomial, Variable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergElement {
    dims: (u32, u32),
    scalar: Cyclotomic,
    shift: (u32, u32),
    twist: (u32, u32),
    iota: bool,
}

fn md(a: i64, m: u32) -> u32 {
    a.rem_euclid(m as i64) as u32
}

impl HeisenbergElement {
    /// `α σ^a τ^b ι^e` in `H_n`.
    pub fn new(n: u32, scalar: Cyclotomic, shift: i64, twist: i64, iota: bool) -> Self {
        Self::new_bi((1, n), scalar, (0, shift), (0, twist), iota)
    }

    pub fn new_bi(
        dims: (u32, u32),
        scalar: Cyclotomic,
        shift: (i64, i64),
        twist: (i64, i64),
        iota: bool,
    ) -> Self {
        assert!(dims.0 > 0 && dims.1 > 0, "Heisenberg dimensions must be positive");
        HeisenbergElement {
            dims,
            scalar,
            shift: (md(shift.0, dims.0), md(shift.1, dims.1)),
            twist: (md(twist.0, dims.0), md(twist.1, dims.1)),
            iota,
        }
    }

    pub fn identity(n: u32) -> Self {
        Self::new(n, Cyclotomic::one(), 0, 0, false)
    }
    pub fn sigma(n: u32) -> Self {
        Self::new(n, Cyclotomic::one(), 1, 0, false)
    }
    pub fn tau(n: u32) -> Self {
        Self::new(n, Cyclotomic::one(), 0, 1, false)
    }
    pub fn iota(n: u32) -> Self {
        Self::new(n, Cyclotomic::one(), 0, 0, true)
    }
    pub fn central(n: u32, scalar: Cyclotomic) -> Self {
        Self::new(n, scalar, 0, 0, false)
    }

    /// Generators `σ_1, σ_2, τ_1, τ_2` of `H_{d1,d2}`.
    pub fn bi_generators(dims: (u32, u32)) -> [Self; 4] {
        let one = Cyclotomic::one;
        [
            Self::new_bi(dims, one(), (1, 0), (0, 0), false),
            Self::new_bi(dims, one(), (0, 1), (0, 0), false),
            Self::new_bi(dims, one(), (0, 0), (1, 0), false),
            Self::new_bi(dims, one(), (0, 0), (0, 1), false),
        ]
    }

    pub fn dims(&self) -> (u32, u32) {
        self.dims
    }
    /// Number of coordinates `d1·d2`.
    pub fn modulus(&self) -> u32 {
        self.dims.0 * self.dims.1
    }
    pub fn scalar(&self) -> &Cyclotomic {
        &self.scalar
    }
    pub fn shift(&self) -> (u32, u32) {
        self.shift
    }
    pub fn twist(&self) -> (u32, u32) {
        self.twist
    }
    pub fn has_iota(&self) -> bool {
        self.iota
    }

    fn sign(&self) -> i64 {
        if self.iota {
            -1
        } else {
            1
        }
    }

    fn root(&self, e: (i64, i64)) -> Cyclotomic {
        let (d1, d2) = self.dims;
        let a = Cyclotomic::root_of_unity(d1, e.0);
        let b = Cyclotomic::root_of_unity(d2, e.1);
        if d1 == 1 {
            b
        } else {
            &a * &b
        }
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return param("composing elements of different Heisenberg groups");
        }
        let s = self.sign();
        let (b, c) = (self.twist, other.shift);
        let extra = self.root((
            b.0 as i64 * s * c.0 as i64,
            b.1 as i64 * s * c.1 as i64,
        ));
        let scalar = &(&self.scalar * &other.scalar) * &extra;
        Ok(Self::new_bi(
            self.dims,
            scalar,
            (
                self.shift.0 as i64 + s * other.shift.0 as i64,
                self.shift.1 as i64 + s * other.shift.1 as i64,
            ),
            (
                self.twist.0 as i64 + s * other.twist.0 as i64,
                self.twist.1 as i64 + s * other.twist.1 as i64,
            ),
            self.iota ^ other.iota,
        ))
    }

    pub fn inverse(&self) -> Self {
        let s = self.sign();
        let (a, b) = self.shift;
        let (c, d) = self.twist;
        let shift = (-s * a as i64, -s * b as i64);
        let twist = (-s * c as i64, -s * d as i64);
        // α' = α^{-1} ξ^{-b s a'} from the composition law.
        let fix = self.root((-(c as i64) * s * shift.0, -(d as i64) * s * shift.1));
        let scalar = &self.scalar.inverse().expect("nonzero scalar") * &fix;
        Self::new_bi(self.dims, scalar, shift, twist, self.iota)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::new_bi(self.dims, Cyclotomic::one(), (0, 0), (0, 0), false);
        for _ in 0..k {
            acc = acc.compose(self).unwrap();
        }
        acc
    }

    /// The element whose matrix is the transpose of this one's:
    /// `(α σ^a τ^b ι^e)^T = α ι^e τ^b σ^{-a}`.
    pub fn transpose(&self) -> Self {
        let d = self.dims;
        let one = Cyclotomic::one;
        let i = Self::new_bi(d, self.scalar.clone(), (0, 0), (0, 0), self.iota);
        let t = Self::new_bi(d, one(), (0, 0), (self.twist.0 as i64, self.twist.1 as i64), false);
        let s = Self::new_bi(d, one(), (-(self.shift.0 as i64), -(self.shift.1 as i64)), (0, 0), false);
        i.compose(&t).unwrap().compose(&s).unwrap()
    }

    /// `(α, x1, x2)` in the Schrödinger parametrisation, whose product is
    /// `(α, x1, x2)(β, y1, y2) = (αβ e(x1, y2), x1 + y1, x2 + y2)` with
    /// `e(x, y) = ξ^{-x·y}`. Only defined without `ι`.
    pub fn schroedinger_triple(&self) -> Option<(Cyclotomic, (u32, u32), (u32, u32))> {
        if self.iota {
            return None;
        }
        let (a, b) = self.shift;
        let (c, d) = self.twist;
        let f = self.root((-(a as i64) * c as i64, -(b as i64) * d as i64));
        Some((&self.scalar * &f, self.shift, self.twist))
    }

    fn split(&self, k: u32) -> (i64, i64) {
        ((k / self.dims.1) as i64, (k % self.dims.1) as i64)
    }

    fn join(&self, i: i64, j: i64) -> u32 {
        md(i, self.dims.0) * self.dims.1 + md(j, self.dims.1)
    }

    /// `g(x_k) = factor · x_{k'}` as `(factor, k')`.
    pub fn image_of_index(&self, k: u32) -> (Cyclotomic, u32) {
        let (i, j) = self.split(k);
        let s = self.sign();
        let (a, b) = (self.shift.0 as i64, self.shift.1 as i64);
        let (c, d) = (self.twist.0 as i64, self.twist.1 as i64);
        let f = &self.scalar * &self.root((-c * s * i, -d * s * j));
        (f, self.join(s * i - a, s * j - b))
    }

    /// Substitution action on the given variable families; variables whose
    /// modulus differs from the group's are left alone.
    pub fn act_on(&self, p: &Polynomial<Cyclotomic>, families: &[Family]) -> Polynomial<Cyclotomic> {
        let m = self.modulus();
        Polynomial::from_terms(p.terms().map(|(mono, c)| {
            let mut coeff = c.clone();
            let mut pairs = Vec::with_capacity(mono.pairs().len());
            for &(v, e) in mono.pairs() {
                if v.modulus == m && families.contains(&v.family) {
                    let (f, k) = self.image_of_index(v.index);
                    coeff = &coeff * &f.pow(e);
                    pairs.push((Variable::new(v.family, k as i64, m), e));
                } else {
                    pairs.push((v, e));
                }
            }
            (coeff, Monomial::from_pairs(pairs))
        }))
    }

    /// Action on the `x` variables.
    pub fn act(&self, p: &Polynomial<Cyclotomic>) -> Polynomial<Cyclotomic> {
        self.act_on(p, &[Family::X])
    }

    pub fn act_rational(&self, p: &Polynomial<Rational>) -> Polynomial<Cyclotomic> {
        self.act(&lift(p))
    }

    /// Action on coordinate vectors: `g·(Σ p_i δ_i)` with `g δ_i = g(x_i)`
    /// read as vectors. Satisfies `act(g, f)(p) = f(act_point(gᵀ, p))`.
    pub fn act_point<F: Field>(&self, pt: &[F], lift_scalar: impl Fn(&Cyclotomic) -> F) -> Vec<F> {
        let m = self.modulus() as usize;
        assert_eq!(pt.len(), m, "point has wrong number of coordinates");
        let mut out = vec![F::zero(); m];
        for (k, x) in pt.iter().enumerate() {
            let (f, k2) = self.image_of_index(k as u32);
            out[k2 as usize] = lift_scalar(&f).mul(x);
        }
        out
    }

    pub fn act_point_exact(&self, pt: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.act_point(pt, Cyclotomic::clone)
    }

    pub fn act_point_complex(&self, pt: &[Complex64]) -> Vec<Complex64> {
        let m = self.modulus() as usize;
        assert_eq!(pt.len(), m, "point has wrong number of coordinates");
        let mut out = vec![Complex64::new(0.0, 0.0); m];
        for (k, x) in pt.iter().enumerate() {
            let (f, k2) = self.image_of_index(k as u32);
            out[k2 as usize] = f.to_complex() * x;
        }
        out
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = u8::from(self.iota);
        if self.dims.0 == 1 {
            write!(f, "sigma^{} tau^{} iota^{e}", self.shift.1, self.twist.1)?;
        } else {
            write!(
                f,
                "sigma^({},{}) tau^({},{}) iota^{e}",
                self.shift.0, self.shift.1, self.twist.0, self.twist.1
            )?;
        }
        write!(f, " scalar={}", self.scalar.to_text())
    }
}

/// Rational polynomial viewed over the cyclotomic numbers.
pub fn lift(p: &Polynomial<Rational>) -> Polynomial<Cyclotomic> {
    p.map_coeffs(|c| Cyclotomic::rational(c.clone()))
}

// ---------------------------------------------------------------------------
// ι-eigenspaces

/// The linear subspace `P^+ = {x_i = x_{-i}}` (`sign = 1`) or
/// `P^- = {x_i = -x_{-i}}` (`sign = -1`) of `P^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenspaceConstraint {
    pub sign: i32,
    pub modulus: u32,
}

impl EigenspaceConstraint {
    pub fn new(sign: i32, modulus: u32) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return param("eigenspace sign must be +1 or -1");
        }
        if modulus < 2 {
            return param("eigenspace modulus must be at least 2");
        }
        Ok(EigenspaceConstraint { sign, modulus })
    }

    /// Linear forms `x_i - sign·x_{-i}` cutting out the eigenspace.
    pub fn equations(&self) -> Vec<Polynomial<Rational>> {
        let n = self.modulus;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for i in 0..n as i64 {
            let j = (-i).rem_euclid(n as i64);
            if !seen.insert(i.min(j)) {
                continue;
            }
            let p = &Polynomial::var(Variable::x(i, n))
                - &Polynomial::var(Variable::x(j, n)).scale(&int(self.sign as i64));
            if !p.is_zero() {
                out.push(p);
            }
        }
        out
    }

    /// Projective dimension.
    pub fn dimension(&self) -> i64 {
        eigenspace_basis(self.modulus, self.sign).len() as i64 - 1
    }
}

pub fn in_eigenspace<F: Field>(pt: &[F], sign: i32) -> bool {
    let n = pt.len();
    (0..n).all(|i| {
        let j = (n - i) % n;
        let rhs = if sign == 1 { pt[j].clone() } else { pt[j].neg() };
        pt[i] == rhs
    })
}

/// Basis of the `±1` eigenspace of `ι` on `Q^n`.
pub fn eigenspace_basis(n: u32, sign: i32) -> Vec<Vec<Rational>> {
    let n = n as usize;
    let mut out = Vec::new();
    for i in 0..=n / 2 {
        let j = (n - i) % n;
        let mut v = vec![int(0); n];
        if i == j {
            if sign == 1 {
                v[i] = int(1);
                out.push(v);
            }
        } else {
            v[i] = int(1);
            v[j] = int(sign as i64);
            out.push(v);
        }
    }
    out
}

/// The point of `P^-` with `x_i = z_i` for `1 ≤ i ≤ ⌊(n-1)/2⌋`.
pub fn minus_point<F: Field>(n: u32, z: &[F]) -> Result<Vec<F>> {
    let h = ((n - 1) / 2) as usize;
    if z.len() != h {
        return param(format!("P^- of Z/{n} needs {h} coordinates, got {}", z.len()));
    }
    let mut pt = vec![F::zero(); n as usize];
    for (k, c) in z.iter().enumerate() {
        pt[k + 1] = c.clone();
        pt[n as usize - k - 1] = c.neg();
    }
    Ok(pt)
}

// ---------------------------------------------------------------------------
// Invariance and orbit spans

fn degree_part(
    gens: &[Polynomial<Cyclotomic>],
    vars: &[Variable],
    k: u32,
) -> PolySpan<Cyclotomic> {
    let mut span = PolySpan::new();
    for g in gens {
        let Some(d) = g.degree() else { continue };
        if d > k {
            continue;
        }
        for m in monomials_of_degree(vars, k - d) {
            span.insert(&g.mul_term(&Cyclotomic::one(), &m));
        }
    }
    span
}

/// All monomials of degree `k` in `vars`.
pub fn monomials_of_degree(vars: &[Variable], k: u32) -> Vec<Monomial> {
    fn rec(vars: &[Variable], k: u32, start: usize, cur: &mut Vec<Variable>, out: &mut Vec<Monomial>) {
        if k == 0 {
            out.push(Monomial::from_vars(cur.iter().copied()));
            return;
        }
        for i in start..vars.len() {
            cur.push(vars[i]);
            rec(vars, k - 1, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Whether the homogeneous ideal generated by `gens` is mapped into itself by
/// every element of `group`. Each image `h·g` is tested against the
/// degree-`deg g` part of the ideal, spanned by monomial multiples of the
/// generators.
pub fn is_invariant_ideal(
    gens: &[Polynomial<Rational>],
    group: &[HeisenbergElement],
    families: &[Family],
) -> bool {
    let lifted: Vec<_> = gens.iter().map(lift).collect();
    let mut vars: BTreeSet<Variable> = BTreeSet::new();
    for g in gens {
        vars.extend(g.variables());
    }
    for h in group {
        let m = h.modulus();
        for f in families {
            vars.extend((0..m as i64).map(|i| Variable::new(*f, i, m)));
        }
    }
    let vars: Vec<Variable> = vars.into_iter().collect();
    let degrees: BTreeSet<u32> = gens.iter().filter_map(|g| g.degree()).collect();
    for k in degrees {
        let span = degree_part(&lifted, &vars, k);
        for (g, lg) in gens.iter().zip(&lifted) {
            if g.degree() != Some(k) {
                continue;
            }
            if group.iter().any(|h| !span.contains(&h.act_on(lg, families))) {
                return false;
            }
        }
    }
    true
}

/// Dimension of the span of `{σ^a τ^b p}` over all `a, b ∈ Z/n`.
pub fn orbit_span_dimension(polys: &[Polynomial<Rational>], n: u32) -> usize {
    let mut span = PolySpan::new();
    for p in polys {
        let lp = lift(p);
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                let g = HeisenbergElement::new(n, Cyclotomic::one(), a, b, false);
                span.insert(&g.act(&lp));
            }
        }
    }
    span.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xv(i: i64, n: u32) -> Polynomial<Cyclotomic> {
        Polynomial::var(Variable::x(i, n))
    }

    #[test]
    fn tau_sigma_commutator() {
        for n in 2..9 {
            let (s, t) = (HeisenbergElement::sigma(n), HeisenbergElement::tau(n));
            let ts = t.compose(&s).unwrap();
            let st = s.compose(&t).unwrap();
            let xi = HeisenbergElement::central(n, Cyclotomic::zeta(n));
            assert_eq!(ts, xi.compose(&st).unwrap());
            for i in 0..n as i64 {
                let lhs = &ts.act(&xv(i, n)) - &st.act(&xv(i, n)).scale(&Cyclotomic::zeta(n));
                assert!(lhs.is_zero());
            }
        }
    }

    #[test]
    fn iota_conjugation() {
        let n = 7;
        let i = HeisenbergElement::iota(n);
        let s = HeisenbergElement::sigma(n);
        let t = HeisenbergElement::tau(n);
        assert_eq!(i.compose(&s).unwrap().compose(&i).unwrap(), s.inverse());
        assert_eq!(i.compose(&t).unwrap().compose(&i).unwrap(), t.inverse());
    }

    #[test]
    fn sigma_d_shifts_p0() {
        let d = 5;
        let n = 2 * d;
        let p0: Vec<Cyclotomic> = [0, 1, 1, 0, 0, 0, 0, 0, -1, -1]
            .iter()
            .map(|&c| Cyclotomic::rational(int(c)))
            .collect();
        let q = HeisenbergElement::sigma(n).pow(d).act_point_exact(&p0);
        for k in 0..n as usize {
            assert_eq!(q[k], p0[(k + d as usize) % n as usize]);
        }
    }

    #[test]
    fn tau_on_all_ones() {
        let n = 5;
        let ones = vec![Cyclotomic::one(); 5];
        let q = HeisenbergElement::tau(n).act_point_exact(&ones);
        for (k, c) in q.iter().enumerate() {
            assert_eq!(*c, Cyclotomic::root_of_unity(n, -(k as i64)));
        }
    }

    #[test]
    fn eigenspace_dimensions() {
        for d in 2..10u32 {
            assert_eq!(EigenspaceConstraint::new(-1, 2 * d).unwrap().dimension(), d as i64 - 2);
            assert_eq!(EigenspaceConstraint::new(-1, 2 * d + 1).unwrap().dimension(), d as i64 - 1);
        }
    }

    #[test]
    fn binomial_orbit() {
        let n = 13;
        let x = |i| Polynomial::<Rational>::var(Variable::x(i, n));
        let b = &(&x(0) * &x(2)) + &(&x(-1) * &x(3));
        assert_eq!(orbit_span_dimension(&[b], n), 13);
    }

    #[test]
    fn display_form() {
        let g = HeisenbergElement::new(6, Cyclotomic::zeta(6), 2, 3, true);
        assert_eq!(g.to_string(), "sigma^2 tau^3 iota^1 scalar=z6:[0,1]");
    }
}
