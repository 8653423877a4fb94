//! Polynomials in the cyclically indexed variables `x_i`, `y_i`
//! (`i ∈ Z/m`) with exact coefficients.
//!
//! Monomials are sparse exponent lists. The monomial order is graded reverse
//! lexicographic for the variable sequence `x_0, x_1, …, x_{m-1}, y_0, …`,
//! with earlier variables larger; in particular `x_0 x_2 > x_{12} x_3`.
//!
//! Text form, used for reports and round-tripping:
//! `2*x[0]^2*y[1] - 1/2*x[3] + z4:[0,1]*x[1]`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    X,
    Y,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::X => 'x',
            Family::Y => 'y',
        }
    }
}

/// A coordinate `x_i` or `y_i` with `i` taken modulo `modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub family: Family,
    pub index: u32,
    pub modulus: u32,
}

impl Variable {
    pub fn new(family: Family, index: i64, modulus: u32) -> Self {
        assert!(modulus > 0, "variable modulus must be positive");
        Variable {
            family,
            index: index.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }
    pub fn x(index: i64, modulus: u32) -> Self {
        Self::new(Family::X, index, modulus)
    }
    pub fn y(index: i64, modulus: u32) -> Self {
        Self::new(Family::Y, index, modulus)
    }
    pub fn shifted(self, k: i64) -> Self {
        Self::new(self.family, self.index as i64 + k, self.modulus)
    }
}

impl Serialize for Variable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.family.letter(), self.index)
    }
}

/// `x_0, …, x_{m-1}`.
pub fn x_vars(m: u32) -> Vec<Variable> {
    (0..m as i64).map(|i| Variable::x(i, m)).collect()
}

/// Cyclic distance `min(|k-l|, m-|k-l|)` on `Z/m`.
pub fn distance(k: i64, l: i64, m: u32) -> u32 {
    let m = m as i64;
    let d = (k - l).rem_euclid(m);
    d.min(m - d) as u32
}

// ---------------------------------------------------------------------------

/// Product of variable powers, stored sorted by variable with positive
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// Product of the given variables (with repetition).
    pub fn from_vars(vars: impl IntoIterator<Item = Variable>) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn support(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    fn merge(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, e) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, f(a[i - 1].1, 0))
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, f(0, b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, f(a[i - 1].1, b[j - 1].1))
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, |x, y| x + y)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, u32::max)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.merge(other, u32::min)
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        let mut j = 0;
        for &(v, e) in &self.0 {
            while j < other.0.len() && other.0[j].0 < v {
                j += 1;
            }
            if j == other.0.len() || other.0[j].0 != v || other.0[j].1 < e {
                return false;
            }
        }
        true
    }

    /// `other / self`, if `self` divides it.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other)
            .then(|| other.merge(self, |x, y| x - y))
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.gcd(other).is_one()
    }

    /// Largest cyclic distance between two variables in the support;
    /// `0` for monomials in at most one variable.
    pub fn width(&self) -> u32 {
        let mut w = 0;
        for (a, &(u, _)) in self.0.iter().enumerate() {
            for &(v, _) in &self.0[a + 1..] {
                w = w.max(distance(u.index as i64, v.index as i64, u.modulus));
            }
        }
        w
    }

    /// Apply a variable map that sends each variable to another variable.
    pub fn rename(&self, f: impl Fn(Variable) -> Variable) -> Self {
        Self::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic: higher degree wins; on ties, the
    /// monomial with the smaller exponent in the last variable where the
    /// two differ is larger.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 && j > 0 {
            let (va, ea) = a[i - 1];
            let (vb, eb) = b[j - 1];
            match va.cmp(&vb) {
                Ordering::Equal => {
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    i -= 1;
                    j -= 1;
                }
                // `va` is later in the sequence and absent from `other`.
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
            }
        }
        match (i, j) {
            (0, 0) => Ordering::Equal,
            (0, _) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// The only monomial order in use: graded reverse lexicographic with the
/// variable sequence `x_0, x_1, …, y_0, y_1, …`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.cmp(b),
        }
    }
}

// ---------------------------------------------------------------------------

/// Sparse polynomial; only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(F::one(), m)
    }

    pub fn var(v: Variable) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (F, Monomial)>) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn add_term(&mut self, c: F, m: Monomial) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(Monomial, F)> {
        self.terms.pop_last()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.values().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.support()).collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// Divide by the leading coefficient; `None` for zero.
    pub fn monic(&self) -> Option<Self> {
        let lc = self.leading_coeff()?.inv()?;
        Some(self.scale(&lc))
    }

    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.mul(c)))
                .collect(),
        }
    }

    /// `self -= c * m * g`, in place.
    pub fn sub_scaled(&mut self, c: &F, m: &Monomial, g: &Self) {
        for (k, a) in &g.terms {
            self.add_term(a.mul(c).neg(), k.mul(m));
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(c), m.clone())))
    }

    /// `Some` when every coefficient is rational.
    pub fn to_rational(&self) -> Option<Polynomial<Rational>> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(c.as_rational()?, m.clone());
        }
        Some(out)
    }

    /// Replace variables by polynomials; variables mapped to `None` stay.
    pub fn substitute_with(&self, f: impl Fn(Variable) -> Option<Self>) -> Self {
        let mut cache: BTreeMap<Variable, Option<Self>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                let img = cache.entry(v).or_insert_with(|| f(v));
                match img {
                    Some(p) => acc = &acc * &p.pow(e),
                    None => rest.push((v, e)),
                }
            }
            if !rest.is_empty() {
                acc = acc.mul_term(&F::one(), &Monomial::from_pairs(rest));
            }
            out = &out + &acc;
        }
        out
    }

    pub fn substitute(&self, v: Variable, value: &Self) -> Self {
        self.substitute_with(|w| (w == v).then(|| value.clone()))
    }

    /// Exact value with every variable replaced by a scalar.
    pub fn eval_exact(&self, f: impl Fn(Variable) -> F) -> F {
        let mut out = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = f(v);
                for _ in 0..e {
                    t = t.mul(&x);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Floating-point value at a complex point.
    pub fn evaluate(&self, f: impl Fn(Variable) -> Complex64) -> Complex64 {
        let mut out = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for &(v, e) in m.pairs() {
                t *= f(v).powu(e);
            }
            out += t;
        }
        out
    }

    /// Apply a variable renaming (an automorphism permuting variables).
    pub fn rename(&self, f: impl Fn(Variable) -> Variable) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (c.clone(), m.rename(&f))))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parse the text form; all variable indices are read modulo `modulus`.
    pub fn parse(s: &str, modulus: u32) -> Result<Self> {
        Parser {
            s: s.as_bytes(),
            pos: 0,
            modulus,
        }
        .polynomial()
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let ct = c.to_text();
            let body = if m.is_one() {
                ct
            } else if ct == "1" {
                m.to_string()
            } else if ct == "-1" {
                format!("-{m}")
            } else {
                format!("{ct}*{m}")
            };
            if k == 0 {
                f.write_str(&body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Serialize for Polynomial<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    modulus: u32,
}

impl Parser<'_> {
    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!(
            "{what} at byte {} of {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        )))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn polynomial<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let mut out = Polynomial::zero();
        let mut neg = self.eat(b'-');
        loop {
            let t = self.term::<F>()?;
            out = if neg { &out - &t } else { &out + &t };
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }

    fn term<F: Field>(&mut self) -> Result<Polynomial<F>> {
        let mut acc = Polynomial::one();
        loop {
            let f = self.factor::<F>()?;
            acc = &acc * &f;
            if !self.eat(b'*') {
                return Ok(acc);
            }
        }
    }

    fn factor<F: Field>(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(c @ (b'x' | b'y')) => {
                self.pos += 1;
                let family = if c == b'x' { Family::X } else { Family::Y };
                if !self.eat(b'[') {
                    return self.err("expected '['");
                }
                let idx: i64 = self.digits()?.parse().map_err(|_| Error::Parse("index".into()))?;
                if !self.eat(b']') {
                    return self.err("expected ']'");
                }
                let e: u32 = if self.eat(b'^') {
                    self.digits()?.parse().map_err(|_| Error::Parse("exponent".into()))?
                } else {
                    1
                };
                let v = Variable::new(family, idx, self.modulus);
                Ok(Polynomial::monomial(Monomial::from_pairs([(v, e)])))
            }
            Some(b'z') => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos] != b']' {
                    self.pos += 1;
                }
                if self.pos == self.s.len() {
                    return self.err("unterminated cyclotomic literal");
                }
                self.pos += 1;
                let lit = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(Polynomial::constant(F::parse_text(lit)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let mut lit = self.digits()?.to_string();
                if self.eat(b'/') {
                    lit.push('/');
                    lit.push_str(self.digits()?);
                }
                Ok(Polynomial::constant(F::parse_text(&lit)?))
            }
            _ => self.err("expected a factor"),
        }
    }
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: &Polynomial<F>) -> Polynomial<F> {
        let (big, small) = if self.terms.len() >= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: &Polynomial<F>) -> Polynomial<F> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(c.neg(), m.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: &Polynomial<F>) -> Polynomial<F> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (k, d) in &o.terms {
                out.add_term(c.mul(d), m.mul(k));
            }
        }
        out
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl<F: Field> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<F: Field> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<F: Field> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat, Cyclotomic};

    type P = Polynomial<Rational>;

    fn x(i: i64, m: u32) -> P {
        P::var(Variable::x(i, m))
    }

    #[test]
    fn grevlex_prefers_earlier_variables() {
        let a = Monomial::from_vars([Variable::x(0, 13), Variable::x(2, 13)]);
        let b = Monomial::from_vars([Variable::x(12, 13), Variable::x(3, 13)]);
        assert!(a > b);
        let c = Monomial::from_pairs([(Variable::x(0, 4), 2)]);
        let d = Monomial::from_vars([Variable::x(0, 4), Variable::x(1, 4)]);
        assert!(c > d);
        // Classic grevlex example: x0 x2^2... vs x1^3 in three variables.
        let e = Monomial::from_pairs([(Variable::x(0, 3), 1), (Variable::x(2, 3), 2)]);
        let f = Monomial::from_pairs([(Variable::x(1, 3), 3)]);
        assert!(f > e);
        // y variables come after every x.
        assert!(Monomial::var(Variable::x(5, 6)) > Monomial::var(Variable::y(0, 6)));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(1, 12, 13), 2);
        assert_eq!(distance(0, 5, 10), 5);
        assert_eq!(distance(3, 3, 7), 0);
    }

    #[test]
    fn width_examples() {
        let m = Monomial::from_vars([Variable::x(0, 10), Variable::x(3, 10), Variable::x(7, 10)]);
        assert_eq!(m.width(), 4);
        assert_eq!(Monomial::from_pairs([(Variable::x(2, 9), 3)]).width(), 0);
    }

    #[test]
    fn text_form() {
        let p = &(&x(3, 5).pow(2) * &P::var(Variable::y(1, 5))) - &x(0, 5).scale(&rat(1, 2));
        assert_eq!(p.to_string(), "x[3]^2*y[1] - 1/2*x[0]");
        assert_eq!(P::parse(&p.to_string(), 5).unwrap(), p);
        assert_eq!(P::parse("-x[0] + 3", 5).unwrap(), &P::constant(int(3)) - &x(0, 5));
        assert_eq!(P::zero().to_string(), "0");
        assert!(P::parse("x[0] +", 5).is_err());
        assert!(P::parse("q[1]", 5).is_err());
    }

    #[test]
    fn cyclotomic_coefficients_in_text() {
        let i = Polynomial::<Cyclotomic>::term(Cyclotomic::zeta(4), Monomial::var(Variable::x(1, 4)));
        let p = &i + &Polynomial::var(Variable::x(0, 4));
        let s = p.to_string();
        assert_eq!(s, "x[0] + z4:[0,1]*x[1]");
        assert_eq!(Polynomial::<Cyclotomic>::parse(&s, 4).unwrap(), p);
    }

    #[test]
    fn substitution_and_evaluation() {
        let p = &x(0, 3) * &x(1, 3);
        let q = p.substitute(Variable::x(1, 3), &(&x(2, 3) + &P::one()));
        assert_eq!(q.to_string(), "x[0]*x[2] + x[0]");
        let v = q.evaluate(|v| Complex64::new(v.index as f64 + 1.0, 0.0));
        assert!((v - Complex64::new(4.0, 0.0)).norm() < 1e-15);
    }
}
