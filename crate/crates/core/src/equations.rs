//! Matrices of linear and quadratic forms whose minors and pfaffians give
//! equations of elliptic normal curves, their secant varieties and abelian
//! surfaces.
//!
//! * [`even_matrix`] `M_d`: `d×d`, indices mod `2d`,
//!   entry `(i, j) = x_{i+j} y_{i-j} + x_{i+j+d} y_{i-j+d}`.
//! * [`odd_matrix`] `M'_d`: `(2d+1)×(2d+1)`, entry
//!   `x_{(d+1)(i+j)} y_{(d+1)(i-j)}`.
//! * [`r_matrix`] `R_d`: `(d+1)×(2d+1)`, entry `x_{j+i} x_{j-i}`.
//! * [`t_matrix`] `T_d`: the leftmost square block of `R_d` restricted to the
//!   `ι`-anti-invariant coordinates; skew-symmetric.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::exactnum::{int, Field, Rational};
use crate::polyring::{Family, Polynomial, Variable};

/// Symbolic determinants are refused above this size unless every entry has
/// at most [`MAX_TERMS_FOR_LARGE_DET`] terms.
pub const MAX_SYMBOLIC_DET: usize = 7;
pub const MAX_TERMS_FOR_LARGE_DET: usize = 2;
/// Subset-indexed expansion uses a `u64` mask.
const MAX_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
    provenance: String,
}

impl<F: Field> SymbolicMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial<F>>, provenance: impl Into<String>) -> Result<Self> {
        if entries.len() != rows * cols {
            return param(format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, entries.len()));
        }
        Ok(SymbolicMatrix {
            rows,
            cols,
            entries,
            provenance: provenance.into(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, provenance: impl Into<String>, f: impl Fn(usize, usize) -> Polynomial<F>) -> Self {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        SymbolicMatrix {
            rows,
            cols,
            entries,
            provenance: provenance.into(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn provenance(&self) -> &str {
        &self.provenance
    }
    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }
    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Exact skew-symmetry: zero diagonal and `m_ji = -m_ij`.
    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (i + 1..self.cols).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, format!("transpose({})", self.provenance), |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), self.provenance.clone(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map_entries<G: Field>(&self, provenance: impl Into<String>, f: impl Fn(&Polynomial<F>) -> Polynomial<G>) -> SymbolicMatrix<G> {
        SymbolicMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            provenance: provenance.into(),
        }
    }

    /// Entries as text, row by row.
    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    fn max_terms(&self) -> usize {
        self.entries.iter().map(Polynomial::num_terms).max().unwrap_or(0)
    }

    fn check_size(&self, what: &str) -> Result<()> {
        if self.rows > MAX_DIM {
            return Err(Error::Size(format!("{what} of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows > MAX_SYMBOLIC_DET && self.max_terms() > MAX_TERMS_FOR_LARGE_DET {
            return Err(Error::Size(format!(
                "symbolic {what} of size {} with up to {} terms per entry",
                self.rows,
                self.max_terms()
            )));
        }
        Ok(())
    }
}

/// JSON form: provenance, shape and entries as nested rows of text.
impl<F: Field> Serialize for SymbolicMatrix<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SymbolicMatrix", 4)?;
        st.serialize_field("provenance", &self.provenance)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &self.to_text_rows())?;
        st.end()
    }
}

// ---------------------------------------------------------------------------
// Constructors

fn xy(a: i64, b: i64, m: u32) -> Polynomial<Rational> {
    Polynomial::monomial(crate::polyring::Monomial::from_vars([Variable::x(a, m), Variable::y(b, m)]))
}

/// `M_d(x, y)`; requires `d ≥ 2`.
pub fn even_matrix(d: u32) -> Result<SymbolicMatrix<Rational>> {
    if d < 2 {
        return param("even_matrix needs d >= 2");
    }
    let m = 2 * d;
    let (di, dd) = (d as usize, d as i64);
    Ok(SymbolicMatrix::from_fn(di, di, format!("even_matrix(d={d})"), |i, j| {
        let (i, j) = (i as i64, j as i64);
        &xy(i + j, i - j, m) + &xy(i + j + dd, i - j + dd, m)
    }))
}

/// `M'_d(x, y)`; requires `d ≥ 1`.
pub fn odd_matrix(d: u32) -> Result<SymbolicMatrix<Rational>> {
    if d < 1 {
        return param("odd_matrix needs d >= 1");
    }
    let m = 2 * d + 1;
    let s = d as i64 + 1;
    Ok(SymbolicMatrix::from_fn(m as usize, m as usize, format!("odd_matrix(d={d})"), |i, j| {
        let (i, j) = (i as i64, j as i64);
        xy(s * (i + j), s * (i - j), m)
    }))
}

/// `R_d`, entries `x_{j+i} x_{j-i}` mod `2d+1`; requires `d ≥ 1`.
pub fn r_matrix(d: u32) -> Result<SymbolicMatrix<Rational>> {
    if d < 1 {
        return param("r_matrix needs d >= 1");
    }
    let m = 2 * d + 1;
    Ok(SymbolicMatrix::from_fn(d as usize + 1, m as usize, format!("r_matrix(d={d})"), |i, j| {
        let (i, j) = (i as i64, j as i64);
        Polynomial::monomial(crate::polyring::Monomial::from_vars([Variable::x(j + i, m), Variable::x(j - i, m)]))
    }))
}

/// Substitution `x_0 ↦ 0`, `x_{n-i} ↦ -x_i` (`1 ≤ i ≤ (n-1)/2`) restricting
/// to the `ι`-anti-invariant subspace of an odd modulus `n`.
pub fn restrict_to_minus(p: &Polynomial<Rational>, n: u32) -> Polynomial<Rational> {
    let h = (n - 1) / 2;
    p.substitute_with(|v| {
        if v.family != Family::X || v.modulus != n {
            None
        } else if v.index == 0 {
            Some(Polynomial::zero())
        } else if v.index > h {
            Some(-&Polynomial::var(Variable::x((n - v.index) as i64, n)))
        } else {
            None
        }
    })
}

/// `T_d`; requires `d ≥ 1`.
pub fn t_matrix(d: u32) -> Result<SymbolicMatrix<Rational>> {
    let r = r_matrix(d)?;
    let m = 2 * d + 1;
    let k = d as usize + 1;
    Ok(SymbolicMatrix::from_fn(k, k, format!("t_matrix(d={d})"), |i, j| restrict_to_minus(r.get(i, j), m)))
}

// ---------------------------------------------------------------------------
// Determinants, minors, pfaffians

fn det_dp<F: Field>(m: &SymbolicMatrix<F>, rows: &[usize], cols: &[usize]) -> Polynomial<F> {
    let k = rows.len();
    if k == 0 {
        return Polynomial::one();
    }
    // dp[mask]: signed sum over injections of the first popcount(mask) rows
    // onto the columns in mask.
    let mut dp: HashMap<u64, Polynomial<F>> = HashMap::new();
    dp.insert(0, Polynomial::one());
    for r in 0..k {
        let mut next: HashMap<u64, Polynomial<F>> = HashMap::new();
        for (mask, val) in &dp {
            for c in 0..k {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = m.get(rows[r], cols[c]);
                if entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let mut t = val * entry;
                if inversions % 2 == 1 {
                    t = -t;
                }
                let slot = next.entry(mask | (1 << c)).or_default();
                *slot = &*slot + &t;
            }
        }
        next.retain(|_, p| !p.is_zero());
        dp = next;
    }
    dp.remove(&((1u64 << k) - 1)).unwrap_or_default()
}

pub fn determinant<F: Field>(m: &SymbolicMatrix<F>) -> Result<Polynomial<F>> {
    if !m.is_square() {
        return param("determinant of a non-square matrix");
    }
    m.check_size("determinant")?;
    let idx: Vec<usize> = (0..m.rows).collect();
    Ok(det_dp(m, &idx, &idx))
}

/// All `k×k` minors, rows and columns in lexicographic subset order.
pub fn minors<F: Field>(m: &SymbolicMatrix<F>, k: usize) -> Result<Vec<Polynomial<F>>> {
    if k == 0 || k > m.rows.min(m.cols) {
        return param(format!("no {k}x{k} minors in a {}x{} matrix", m.rows, m.cols));
    }
    if k > MAX_SYMBOLIC_DET && m.max_terms() > MAX_TERMS_FOR_LARGE_DET {
        return Err(Error::Size(format!("symbolic {k}x{k} minors")));
    }
    let rs = subsets(m.rows, k);
    let cs = subsets(m.cols, k);
    let mut out = Vec::with_capacity(rs.len() * cs.len());
    for r in &rs {
        for c in &cs {
            out.push(det_dp(m, r, c));
        }
    }
    Ok(out)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

fn pf_rec<F: Field>(m: &SymbolicMatrix<F>, idx: &[usize], memo: &mut HashMap<Vec<usize>, Polynomial<F>>) -> Polynomial<F> {
    if idx.is_empty() {
        return Polynomial::one();
    }
    if let Some(p) = memo.get(idx) {
        return p.clone();
    }
    let mut out = Polynomial::zero();
    for pos in 1..idx.len() {
        let a = m.get(idx[0], idx[pos]);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(q, _)| q + 1 != pos).map(|(_, &v)| v).collect();
        let sub = pf_rec(m, &rest, memo);
        let t = a * &sub;
        out = if pos % 2 == 1 { &out + &t } else { &out - &t };
    }
    memo.insert(idx.to_vec(), out.clone());
    out
}

/// Pfaffian, normalised so that `pf([[0, a], [-a, 0]]) = a`.
pub fn pfaffian<F: Field>(m: &SymbolicMatrix<F>) -> Result<Polynomial<F>> {
    if !m.is_skew() {
        return param(format!("pfaffian of a non-skew matrix ({})", m.provenance));
    }
    m.check_size("pfaffian")?;
    if m.rows % 2 == 1 {
        return Ok(Polynomial::zero());
    }
    let idx: Vec<usize> = (0..m.rows).collect();
    Ok(pf_rec(m, &idx, &mut HashMap::new()))
}

/// Pfaffians of all principal `size×size` submatrices, by index subset in
/// lexicographic order.
pub fn pfaffians<F: Field>(m: &SymbolicMatrix<F>, size: usize) -> Result<Vec<Polynomial<F>>> {
    if !m.is_skew() {
        return param(format!("pfaffians of a non-skew matrix ({})", m.provenance));
    }
    if size == 0 || size % 2 == 1 || size > m.rows {
        return param(format!("no principal {size}x{size} pfaffians of a {}x{} matrix", m.rows, m.rows));
    }
    let mut memo = HashMap::new();
    Ok(subsets(m.rows, size).iter().map(|s| pf_rec(m, s, &mut memo)).collect())
}

// ---------------------------------------------------------------------------
// Points

/// A point with exact coordinates, projective unless stated otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPoint<F: Field> {
    coords: Vec<F>,
    projective: bool,
}

impl<F: Field> ExactPoint<F> {
    pub fn projective(coords: Vec<F>) -> Result<Self> {
        if coords.iter().all(F::is_zero) {
            return param("the zero vector is not a projective point");
        }
        Ok(ExactPoint { coords, projective: true })
    }

    pub fn affine(coords: Vec<F>) -> Self {
        ExactPoint { coords, projective: false }
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::projective(coords.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }
    pub fn is_projective(&self) -> bool {
        self.projective
    }
    pub fn len(&self) -> usize {
        self.coords.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Replace every variable of `family` by the matching coordinate of `pt`.
pub fn substitute_point<F: Field>(m: &SymbolicMatrix<F>, family: Family, pt: &ExactPoint<F>) -> Result<SymbolicMatrix<F>> {
    for p in m.entries() {
        if let Some(v) = p.variables().into_iter().find(|v| v.family == family && v.modulus as usize != pt.len()) {
            return param(format!("point has {} coordinates, variables are mod {}", pt.len(), v.modulus));
        }
    }
    Ok(m.map_entries(format!("{}[{:?}=point]", m.provenance, family), |p| {
        p.substitute_with(|v| (v.family == family).then(|| Polynomial::constant(pt.coords[v.index as usize].clone())))
    }))
}

/// `(1:1:0:…:0)` in `P^{2d-1}`.
pub fn even_special_point(d: u32) -> ExactPoint<Rational> {
    let mut c = vec![int(0); 2 * d as usize];
    c[0] = int(1);
    c[1] = int(1);
    ExactPoint::projective(c).unwrap()
}

/// `e_d - e_{d+1}` in `P^{2d}`.
pub fn odd_special_point(d: u32) -> ExactPoint<Rational> {
    let mut c = vec![int(0); 2 * d as usize + 1];
    c[d as usize] = int(1);
    c[d as usize + 1] = int(-1);
    ExactPoint::projective(c).unwrap()
}

/// `p_0 = (0:1:1:0:…:0:-1:-1)` in `P^{n-1}`, a point of `P^-`.
pub fn p0(n: u32) -> Result<ExactPoint<Rational>> {
    if n < 5 {
        return param("p0 needs n >= 5");
    }
    let n = n as usize;
    let mut c = vec![int(0); n];
    c[1] = int(1);
    c[2] = int(1);
    c[n - 1] = int(-1);
    c[n - 2] = int(-1);
    ExactPoint::projective(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polynomial<Rational>;

    fn parse(s: &str, m: u32) -> P {
        P::parse(s, m).unwrap()
    }

    #[test]
    fn even_matrix_d2_entries() {
        let m = even_matrix(2).unwrap();
        assert_eq!(*m.get(0, 0), parse("x[0]*y[0] + x[2]*y[2]", 4));
        assert_eq!(*m.get(0, 1), parse("x[1]*y[3] + x[3]*y[1]", 4));
        assert_eq!(*m.get(1, 0), parse("x[1]*y[1] + x[3]*y[3]", 4));
        assert_eq!(*m.get(1, 1), parse("x[2]*y[0] + x[0]*y[2]", 4));
    }

    #[test]
    fn odd_matrix_d2_entry() {
        let m = odd_matrix(2).unwrap();
        assert_eq!(*m.get(1, 0), parse("x[3]*y[3]", 5));
    }

    #[test]
    fn two_by_two_pfaffian() {
        let a = parse("x[0] + 2*x[1]", 3);
        let m = SymbolicMatrix::new(2, 2, vec![P::zero(), a.clone(), -&a, P::zero()], "t").unwrap();
        assert_eq!(pfaffian(&m).unwrap(), a);
    }

    #[test]
    fn even_special_point_is_bidiagonal() {
        for d in 4..8 {
            let m = substitute_point(&even_matrix(d).unwrap(), Family::Y, &even_special_point(d)).unwrap();
            let n = 2 * d;
            for i in 0..d as usize {
                for j in 0..d as usize {
                    let e = m.get(i, j);
                    let want = if i == j {
                        P::var(Variable::x(2 * i as i64, n))
                    } else if i == j + 1 {
                        P::var(Variable::x(2 * i as i64 - 1, n))
                    } else if i == 0 && j == d as usize - 1 {
                        P::var(Variable::x(n as i64 - 1, n))
                    } else {
                        P::zero()
                    };
                    assert_eq!(*e, want, "d={d} ({i},{j})");
                }
            }
            for mnr in minors(&m, 3).unwrap() {
                assert!(mnr.num_terms() <= 1);
            }
        }
    }

    #[test]
    fn odd_special_point_is_tridiagonal_skew() {
        let d = 4;
        let m = substitute_point(&odd_matrix(d).unwrap(), Family::Y, &odd_special_point(d)).unwrap();
        assert!(m.is_skew());
        assert_eq!(*m.get(0, 1), P::var(Variable::x(d as i64 + 1, 2 * d + 1)));
        assert_eq!(*m.get(0, 2 * d as usize), -&P::var(Variable::x(d as i64, 2 * d + 1)));
    }

    #[test]
    fn t_matrix_is_skew() {
        for d in 2..8 {
            assert!(t_matrix(d).unwrap().is_skew(), "d={d}");
        }
    }

    #[test]
    fn large_dense_determinant_refused() {
        let m = substitute_point(
            &odd_matrix(4).unwrap(),
            Family::Y,
            &ExactPoint::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap(),
        )
        .unwrap();
        assert!(determinant(&m).is_ok(), "monomial entries are allowed");
        let big = SymbolicMatrix::from_fn(8, 8, "dense", |i, j| parse(&format!("x[{i}] + x[{j}] + 1"), 8));
        assert!(matches!(determinant(&big), Err(Error::Size(_))));
    }

    #[test]
    fn subsets_in_order() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
