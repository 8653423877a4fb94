//! Exact linear algebra over any [`Field`]: incremental sparse echelon
//! forms, dense rank and kernels, and spans of polynomials.

use std::collections::{BTreeMap, HashMap};

use crate::exactnum::Field;
use crate::polyring::{Monomial, Polynomial};

/// Rows kept in echelon form, keyed by pivot column; each pivot entry is 1.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field> {
    rows: HashMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> Default for SparseEchelon<F> {
    fn default() -> Self {
        SparseEchelon {
            rows: HashMap::new(),
        }
    }
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        while let Some((&lead, c)) = v.iter().next() {
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            let c = c.clone();
            for (&j, a) in row {
                let t = a.mul(&c);
                let e = v.entry(j).or_insert_with(F::zero);
                *e = e.sub(&t);
                if e.is_zero() {
                    v.remove(&j);
                }
            }
        }
        v
    }

    /// Canonical representative of `v` modulo the row space: zero in every
    /// pivot column.
    fn reduce_full(&self, mut v: BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        let mut cursor = 0;
        loop {
            let next = v.range(cursor..).map(|(&j, _)| j).find(|j| self.rows.contains_key(j));
            let Some(lead) = next else { break };
            let c = v[&lead].clone();
            for (&j, a) in &self.rows[&lead] {
                let t = a.mul(&c);
                let e = v.entry(j).or_insert_with(F::zero);
                *e = e.sub(&t);
                if e.is_zero() {
                    v.remove(&j);
                }
            }
            cursor = lead + 1;
        }
        v
    }

    /// Add a vector; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (usize, F)>) -> bool {
        let v = self.reduce(collect_sparse(v));
        let Some((&lead, c)) = v.iter().next() else {
            return false;
        };
        let inv = c.inv().expect("nonzero pivot");
        let row = v.into_iter().map(|(j, a)| (j, a.mul(&inv))).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn contains(&self, v: impl IntoIterator<Item = (usize, F)>) -> bool {
        self.reduce(collect_sparse(v)).is_empty()
    }
}

fn collect_sparse<F: Field>(v: impl IntoIterator<Item = (usize, F)>) -> BTreeMap<usize, F> {
    let mut out: BTreeMap<usize, F> = BTreeMap::new();
    for (j, a) in v {
        let e = out.entry(j).or_insert_with(F::zero);
        *e = e.add(&a);
    }
    out.retain(|_, a| !a.is_zero());
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of `{v : m v = 0}`, one vector per free column, in reduced form.
pub fn kernel<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = a[r][free].neg();
        }
        out.push(v);
    }
    out
}

pub fn transpose<F: Clone>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = rank(a);
    if ra != rank(b) {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(&both) == ra
}

/// Linear span of polynomials, with monomials numbered on first sight.
#[derive(Clone, Debug)]
pub struct PolySpan<F: Field> {
    index: HashMap<Monomial, usize>,
    monomials: Vec<Monomial>,
    echelon: SparseEchelon<F>,
}

impl<F: Field> Default for PolySpan<F> {
    fn default() -> Self {
        PolySpan {
            index: HashMap::new(),
            monomials: Vec::new(),
            echelon: SparseEchelon::new(),
        }
    }
}

impl<F: Field> PolySpan<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_polys<'a>(ps: impl IntoIterator<Item = &'a Polynomial<F>>) -> Self {
        let mut s = Self::new();
        for p in ps {
            s.insert(p);
        }
        s
    }

    fn vector(&mut self, p: &Polynomial<F>) -> Vec<(usize, F)> {
        let mut out = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms().rev() {
            let j = match self.index.get(m) {
                Some(&j) => j,
                None => {
                    self.monomials.push(m.clone());
                    self.index.insert(m.clone(), self.monomials.len() - 1);
                    self.monomials.len() - 1
                }
            };
            out.push((j, c.clone()));
        }
        out
    }

    /// `p` minus an element of the span; zero exactly when `p` lies in it.
    pub fn residue(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let mut known = Vec::new();
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            match self.index.get(m) {
                Some(&j) => known.push((j, c.clone())),
                None => out.add_term(c.clone(), m.clone()),
            }
        }
        for (j, c) in self.echelon.reduce_full(collect_sparse(known)) {
            out.add_term(c, self.monomials[j].clone());
        }
        out
    }

    pub fn insert(&mut self, p: &Polynomial<F>) -> bool {
        let v = self.vector(p);
        self.echelon.insert(v)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        let mut v = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            match self.index.get(m) {
                Some(&j) => v.push((j, c.clone())),
                None => return false,
            }
        }
        self.echelon.contains(v)
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }
}

/// Whether the polynomials in `a` and `b` span the same space.
pub fn same_poly_span<F: Field>(a: &[Polynomial<F>], b: &[Polynomial<F>]) -> bool {
    let sa = PolySpan::from_polys(a);
    let sb = PolySpan::from_polys(b);
    sa.dim() == sb.dim() && b.iter().all(|p| sa.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot = row.iter().zip(&k[0]).fold(int(0), |s, (x, y)| s + x * y);
            assert_eq!(dot, int(0));
        }
    }

    #[test]
    fn sparse_echelon_tracks_span() {
        let mut e = SparseEchelon::<Rational>::new();
        assert!(e.insert([(0, int(1)), (2, int(1))]));
        assert!(e.insert([(0, int(1)), (1, int(1))]));
        assert!(!e.insert([(1, int(1)), (2, int(-1))]));
        assert!(e.contains([(1, int(2)), (2, int(-2))]));
        assert!(!e.contains([(2, int(1))]));
        assert_eq!(e.rank(), 2);
    }
}
