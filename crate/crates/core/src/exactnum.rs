//! Exact scalars: arbitrary-precision rationals and elements of cyclotomic
//! fields `Q(ζ_n)`.
//!
//! A [`Cyclotomic`] stores coefficients in the power basis `1, ζ, …, ζ^{φ(n)-1}`
//! reduced modulo the cyclotomic polynomial `Φ_n`. Elements of different
//! orders are combined by embedding both into `Q(ζ_lcm)`; an element of order
//! 1 is just a rational number.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rzero() -> Rational {
    Zero::zero()
}

fn rone() -> Rational {
    One::one()
}

/// Integer as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p` for integers, `p/q` otherwise.
pub fn rational_to_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapters writing rationals in their text form.
pub mod rational_serde {
    use super::{rational_to_text, Rational};
    use serde::ser::{SerializeSeq, Serializer};

    pub fn one<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_text(r))
    }

    pub fn vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rational_to_text))
    }

    pub fn matrix<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            seq.serialize_element(&row.iter().map(rational_to_text).collect::<Vec<_>>())?;
        }
        seq.end()
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow; fall back to a scaled division.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Scalars over which polynomials, matrices and Gröbner bases are built.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    /// `Some` exactly when the value lies in `Q`.
    fn as_rational(&self) -> Option<Rational>;
    fn to_complex(&self) -> Complex64;
    fn to_text(&self) -> String;
    fn parse_text(s: &str) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn to_text(&self) -> String {
        rational_to_text(self)
    }
    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Integer coefficients of `Φ_n`, lowest degree first. Computed by exact
/// division of `x^n - 1` by `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic_polynomial: n must be positive");
    phi_cached(n).as_ref().clone()
}

fn phi_cached(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = exact_div_monic(&p, &phi_cached(d));
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

// ---------------------------------------------------------------------------
// Dense polynomials over Q (internal helpers for inversion)

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![rzero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !Zero::is_zero(y) {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![rzero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![rzero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !Zero::is_zero(&c) {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Reduce a power-basis vector modulo the monic integer polynomial `m`.
fn reduce_mod(mut p: Vec<Rational>, m: &[i64]) -> Vec<Rational> {
    let deg = m.len() - 1;
    if p.len() > deg {
        for k in (deg..p.len()).rev() {
            let c = std::mem::take(&mut p[k]);
            if Zero::is_zero(&c) {
                continue;
            }
            for (j, &mj) in m.iter().enumerate().take(deg) {
                if mj != 0 {
                    p[k - deg + j] -= &c * BigInt::from(mj);
                }
            }
        }
    }
    p.resize(deg, rzero());
    p
}

// ---------------------------------------------------------------------------

/// Element of `Q(ζ_n)`, `ζ_n = exp(2πi/n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Element `Σ c_k ζ_n^k`; `coeffs` may be longer than `φ(n)` and is
    /// reduced modulo `Φ_n`.
    pub fn new(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parameter("cyclotomic order must be positive".into()));
        }
        let coeffs = reduce_mod(coeffs, &phi_cached(order));
        Ok(Cyclotomic { order, coeffs })
    }

    pub fn from_rational_in(order: u32, r: Rational) -> Self {
        let mut coeffs = vec![rzero(); euler_phi(order) as usize];
        coeffs[0] = r;
        Cyclotomic { order, coeffs }
    }

    pub fn rational(r: Rational) -> Self {
        Self::from_rational_in(1, r)
    }

    /// `ζ_n^k`; `k` may be negative.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![rzero(); e + 1];
        v[e] = rone();
        Cyclotomic {
            order,
            coeffs: reduce_mod(v, &phi_cached(order)),
        }
    }

    pub fn zeta(order: u32) -> Self {
        Self::root_of_unity(order, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients, length `φ(order)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Image in `Q(ζ_m)`; requires `order | m`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 || m % self.order != 0 {
            return Err(Error::Parameter(format!(
                "cannot embed Q(zeta_{}) into Q(zeta_{m})",
                self.order
            )));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut v = vec![rzero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        Ok(Cyclotomic {
            order: m,
            coeffs: reduce_mod(v, &phi_cached(m)),
        })
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut v = vec![rzero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(n - k) % n] += c;
        }
        Cyclotomic {
            order: self.order,
            coeffs: reduce_mod(v, &phi_cached(self.order)),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational_in(self.order, self.coeffs[0].recip()));
        }
        let m: Vec<Rational> = phi_cached(self.order).iter().map(|&c| int(c)).collect();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        // Invariant: s * self ≡ r (mod Φ_n).
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![rone()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant because Φ_n is irreducible.
        let c = r1[0].recip();
        let v = s1.into_iter().map(|x| x * &c).collect();
        Cyclotomic::new(self.order, v)
    }

    /// Complex value; `precision` is the number of correct decimal digits
    /// requested. The backend is `f64`, so requests beyond 15 digits are
    /// evaluated at 15.
    pub fn to_complex_prec(&self, _precision: u32) -> Complex64 {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let x = rational_to_f64(c);
            let ang = std::f64::consts::TAU * (k as f64) / n;
            re += x * ang.cos();
            im += x * ang.sin();
        }
        Complex64::new(re, im)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::from_rational_in(self.order, rone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn zip_add(a: &Self, b: &Self, sign: bool) -> Self {
        if b.order == 1 || a.order == 1 {
            let (big, small, flip) = if b.order == 1 { (a, b, false) } else { (b, a, true) };
            let mut out = if flip && sign {
                Field::neg(big)
            } else {
                big.clone()
            };
            let s = &small.coeffs[0];
            if sign && !flip {
                out.coeffs[0] -= s;
            } else {
                out.coeffs[0] += s;
            }
            return out;
        }
        let (a, b) = Self::lift_pair(a, b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| if sign { x - y } else { x + y })
            .collect();
        Cyclotomic { order: a.order, coeffs }
    }

    fn product(a: &Self, b: &Self) -> Self {
        if a.order == 1 || b.order == 1 {
            let (big, small) = if b.order == 1 { (a, b) } else { (b, a) };
            let s = &small.coeffs[0];
            return Cyclotomic {
                order: big.order,
                coeffs: big.coeffs.iter().map(|x| x * s).collect(),
            };
        }
        let (a, b) = Self::lift_pair(a, b);
        let p = poly_mul(&a.coeffs, &b.coeffs);
        Cyclotomic {
            order: a.order,
            coeffs: reduce_mod(p, &phi_cached(a.order)),
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::zip_add(self, o, false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, o: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::zip_add(self, o, true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::product(self, o)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, o: Cyclotomic) -> Cyclotomic {
                $tr::$m(&self, &o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Neg::neg(&self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}:[", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&rational_to_text(c))?;
        }
        f.write_str("]")
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a cyclotomic literal: {s:?}"));
        let rest = s.strip_prefix('z').ok_or_else(bad)?;
        let (ord, body) = rest.split_once(':').ok_or_else(bad)?;
        let order: u32 = ord.trim().parse().map_err(|_| bad())?;
        let body = body
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let coeffs = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
        };
        if order == 0 || coeffs.len() != euler_phi(order) as usize {
            return Err(bad());
        }
        Cyclotomic::new(order, coeffs)
    }
}

impl Field for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::rational(rzero())
    }
    fn one() -> Self {
        Cyclotomic::rational(rone())
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        Cyclotomic::rational(r.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }
    fn to_complex(&self) -> Complex64 {
        self.to_complex_prec(15)
    }
    fn to_text(&self) -> String {
        match Field::as_rational(self) {
            Some(r) => rational_to_text(&r),
            None => self.to_string(),
        }
    }
    fn parse_text(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('z') {
            s.parse()
        } else {
            parse_rational(s).map(Cyclotomic::rational)
        }
    }
}

/// Sign of a rational (`-1`, `0`, `1`).
pub fn rational_sign(r: &Rational) -> i32 {
    if Zero::is_zero(r) {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, v: &[i64]) -> Cyclotomic {
        Cyclotomic::new(n, v.iter().map(|&c| int(c)).collect()).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        // Φ_105 is the first with a coefficient outside {-1,0,1}.
        assert!(cyclotomic_polynomial(105).contains(&-2));
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::rational(int(-1)));
    }

    #[test]
    fn powers_of_zeta_sum_to_zero() {
        for n in 2..=16u32 {
            let mut s = <Cyclotomic as Field>::zero();
            for k in 0..n {
                s = &s + &Cyclotomic::root_of_unity(n, k as i64);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn zeta3_numeric() {
        let c = Cyclotomic::zeta(3).to_complex_prec(15);
        assert!((c.re + 0.5).abs() < 1e-15);
        assert!((c.im - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn mixed_orders_meet_in_lcm() {
        let a = Cyclotomic::zeta(4);
        let b = Cyclotomic::zeta(3);
        let p = &a * &b;
        assert_eq!(p.order(), 12);
        assert_eq!(p, Cyclotomic::root_of_unity(12, 3 + 4));
        // ζ_4 viewed inside Q(ζ_8) is ζ_8^2.
        assert_eq!(a, Cyclotomic::root_of_unity(8, 2));
    }

    #[test]
    fn inverse_and_conjugate() {
        let a = z(7, &[1, 2, 0, -1, 0, 3]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, <Cyclotomic as Field>::one());
        assert_eq!(Cyclotomic::zeta(5).conj(), Cyclotomic::root_of_unity(5, -1));
        assert!(z(5, &[0, 0, 0, 0]).inverse().is_err());
    }

    #[test]
    fn text_roundtrip() {
        let a = Cyclotomic::new(6, vec![rat(1, 2), rat(-3, 1)]).unwrap();
        assert_eq!(a.to_string(), "z6:[1/2,-3]");
        assert_eq!("z6:[1/2,-3]".parse::<Cyclotomic>().unwrap(), a);
        assert!("z6:[1]".parse::<Cyclotomic>().is_err());
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
    }
}
