use std::collections::BTreeMap;

use super::Ideal;
use crate::error::{param, Error, Result};
use crate::exactnum::Field;
use crate::heisenberg::monomials_of_degree;
use crate::linalg::SparseEchelon;
use crate::polyring::{Monomial, Variable};
use crate::simplicial::binom;

/// Largest degree accepted by [`hilbert_function_brute`].
pub const MAX_BRUTE_FORCE_DEGREE: u32 = 6;

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    // Ascending order: a divisor always precedes its multiples.
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, &c) in b.iter().enumerate() {
        a[k + shift] += c;
    }
}

/// Numerator `N(t)` with `HS(S/I) = N(t)/(1-t)^{#vars}` for the monomial
/// ideal generated by `gens`, via the splitting
/// `N(I) = N(I + (x)) + t·N(I : x)` on a most frequent variable `x`.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens)
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    let mut counts: BTreeMap<Variable, usize> = BTreeMap::new();
    for g in &gens {
        for v in g.support() {
            *counts.entry(v).or_default() += 1;
        }
    }
    let (&x, &c) = counts.iter().max_by_key(|&(v, c)| (*c, std::cmp::Reverse(*v))).unwrap();
    if c <= 1 {
        // Pairwise coprime: a regular sequence.
        let mut out = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = vec![0i64; out.len() + d];
            for (k, &a) in out.iter().enumerate() {
                next[k] += a;
                next[k + d] -= a;
            }
            out = next;
        }
        return out;
    }
    let xm = Monomial::var(x);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exponent(x) == 0).cloned().collect();
    plus.push(xm.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| if g.exponent(x) > 0 { xm.quotient_of(g).unwrap() } else { g.clone() })
        .collect();
    let mut out = numerator_rec(minimalize(plus));
    poly_add(&mut out, &numerator_rec(minimalize(colon)), 1);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// `dim_k (S/I)_k` from a numerator over `(1-t)^nvars`.
pub fn hilbert_value_from_numerator(num: &[i64], nvars: usize, k: u32) -> i64 {
    let n = nvars as i64;
    num.iter()
        .enumerate()
        .filter(|&(j, _)| j as u32 <= k)
        .map(|(j, &c)| c * binom(k as i64 - j as i64 + n - 1, n - 1))
        .sum()
}

/// `dim (S/I)_k` through the leading-term ideal of a Gröbner basis.
pub fn hilbert_function<F: Field>(ideal: &Ideal<F>, k: u32) -> Result<u64> {
    if !ideal.is_homogeneous() {
        return param("Hilbert function of a non-homogeneous ideal");
    }
    let gb = ideal.groebner()?;
    let num = hilbert_numerator(&gb.leading_monomials());
    Ok(hilbert_value_from_numerator(&num, ideal.vars().len(), k) as u64)
}

/// `dim (S/I)_k` as the number of degree-`k` monomials minus the rank of
/// all products `m·g` of degree `k`; no Gröbner basis involved.
pub fn hilbert_function_brute<F: Field>(ideal: &Ideal<F>, k: u32) -> Result<u64> {
    if k > MAX_BRUTE_FORCE_DEGREE {
        return Err(Error::Size(format!("brute-force Hilbert function in degree {k} (limit {MAX_BRUTE_FORCE_DEGREE})")));
    }
    if !ideal.is_homogeneous() {
        return param("Hilbert function of a non-homogeneous ideal");
    }
    let vars = ideal.vars();
    let basis = monomials_of_degree(vars, k);
    let col: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = SparseEchelon::<F>::new();
    for g in ideal.generators() {
        let d = g.degree().unwrap();
        if d > k {
            continue;
        }
        for m in monomials_of_degree(vars, k - d) {
            let row: Vec<(usize, F)> = g.terms().map(|(t, c)| (col[&t.mul(&m)], c.clone())).collect();
            ech.insert(row);
        }
    }
    Ok((basis.len() - ech.rank()) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::polyring::Polynomial;

    #[test]
    fn numerator_of_coordinate_ideals() {
        let x = |i| Monomial::var(Variable::x(i, 3));
        assert_eq!(hilbert_numerator(&[]), vec![1]);
        assert_eq!(hilbert_numerator(&[x(0)]), vec![1, -1]);
        // (x0 x1, x0 x2): 1 - 2t^2 + t^3
        let g = [x(0).mul(&x(1)), x(0).mul(&x(2))];
        assert_eq!(hilbert_numerator(&g), vec![1, 0, -2, 1]);
    }

    #[test]
    fn routes_agree_on_twisted_cubic() {
        let n = 4;
        let gens = ["x[0]*x[2] - x[1]^2", "x[0]*x[3] - x[1]*x[2]", "x[1]*x[3] - x[2]^2"]
            .iter()
            .map(|s| Polynomial::<Rational>::parse(s, n).unwrap())
            .collect();
        let i = Ideal::in_x("tc", n, gens);
        for k in 0..=5 {
            assert_eq!(hilbert_function(&i, k).unwrap(), 3 * k as u64 + 1);
            assert_eq!(hilbert_function_brute(&i, k).unwrap(), 3 * k as u64 + 1);
        }
        assert!(hilbert_function_brute(&i, 7).is_err());
    }
}
