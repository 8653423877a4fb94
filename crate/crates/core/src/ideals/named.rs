use std::collections::BTreeSet;

use serde::Serialize;

use super::Ideal;
use crate::equations::{
    determinant, even_matrix, minors, odd_matrix, odd_special_point, even_special_point, pfaffians, r_matrix,
    substitute_point, t_matrix, ExactPoint,
};
use crate::error::{param, Error, Result};
use crate::exactnum::{int, Cyclotomic, Field, Rational};
use crate::heisenberg::{in_eigenspace, lift, minus_point, HeisenbergElement};
use crate::linalg::{kernel, rank, PolySpan};
use crate::polyring::{Family, Monomial, Polynomial, Variable};

type P = Polynomial<Rational>;

fn xm(n: u32, idx: &[i64]) -> P {
    Polynomial::monomial(Monomial::from_vars(idx.iter().map(|&i| Variable::x(i, n))))
}

/// `x_i x_j` for all pairs at distance at least 5, each pair once.
fn wide_quadrics(n: u32) -> Vec<P> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for off in 5..=(n / 2) as i64 {
        for i in 0..n as i64 {
            let m = Monomial::from_vars([Variable::x(i, n), Variable::x(i + off, n)]);
            if seen.insert(m.clone()) {
                out.push(Polynomial::monomial(m));
            }
        }
    }
    out
}

/// Monic generators with duplicates and zeros removed, first occurrence kept.
fn normalize<F: Field>(gens: impl IntoIterator<Item = Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut seen: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        if let Some(m) = g.monic() {
            if !seen.contains(&m) {
                seen.push(m);
            }
        }
    }
    seen
}

/// Monomial ideal of the torus triangulation for `n ≥ 10`: quadrics
/// `x_i x_{i+2}` and `x_i x_{i+k}` for `5 ≤ k ≤ n/2`, plus the cubics
/// `x_{i-3} x_i x_{i+3}` (`n = 10`) or `x_{i-4} x_i x_{i+4}` (`n = 11, 12`).
pub fn torus_ideal(n: u32) -> Result<Ideal<Rational>> {
    if n < 10 {
        return param(format!("torus_ideal needs n >= 10, got {n}"));
    }
    let mut gens: Vec<P> = (0..n as i64).map(|i| xm(n, &[i, i + 2])).collect();
    gens.extend(wide_quadrics(n));
    let c = match n {
        10 => Some(3),
        11 | 12 => Some(4),
        _ => None,
    };
    if let Some(c) = c {
        gens.extend((0..n as i64).map(|i| xm(n, &[i - c, i, i + c])));
    }
    Ok(Ideal::in_x(format!("torus({n})"), n, normalize(gens)))
}

/// `x_i x_{i+2} + λ x_{i-1} x_{i+3}`.
pub fn scroll_binomial(n: u32, lambda: &Rational, i: i64) -> P {
    &xm(n, &[i, i + 2]) + &xm(n, &[i - 1, i + 3]).scale(lambda)
}

/// Ideal of the union of `n` quadric surfaces: the binomials
/// [`scroll_binomial`] for `i ∈ Z/n` and all `x_i x_j` with `d(i,j) ≥ 5`.
pub fn scroll_ideal(n: u32, lambda: &Rational) -> Result<Ideal<Rational>> {
    if n < 10 {
        return param(format!("scroll_ideal needs n >= 10, got {n}"));
    }
    if lambda.is_zero() {
        return param("scroll_ideal needs lambda != 0; the limit lambda = 0 is torus_ideal");
    }
    let mut gens: Vec<P> = (0..n as i64).map(|i| scroll_binomial(n, lambda, i)).collect();
    gens.extend(wide_quadrics(n));
    Ok(Ideal::in_x(format!("scroll({n},{})", crate::exactnum::rational_to_text(lambda)), n, gens))
}

/// Ideal of the `i`-th quadric: its binomial and `x_j = 0` off `{i-1, i, i+2, i+3}`.
pub fn q_component(n: u32, lambda: &Rational, i: i64) -> Result<Ideal<Rational>> {
    if n < 5 {
        return param("q_component needs n >= 5");
    }
    if lambda.is_zero() {
        return param("q_component needs lambda != 0");
    }
    let support: BTreeSet<i64> = [i - 1, i, i + 2, i + 3].iter().map(|k| k.rem_euclid(n as i64)).collect();
    let mut gens = vec![scroll_binomial(n, lambda, i)];
    gens.extend((0..n as i64).filter(|j| !support.contains(j)).map(|j| xm(n, &[j])));
    Ok(Ideal::in_x(format!("Q({n},{i})"), n, gens))
}

/// A cubic expressed through scroll-ideal generators:
/// `lhs = Σ multiplier_k · generator_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicCertificate {
    pub lhs: P,
    pub terms: Vec<(P, P)>,
}

impl CubicCertificate {
    /// Whether the combination expands to `lhs` and every factor is a
    /// generator of `ideal`.
    pub fn holds(&self, ideal: &Ideal<Rational>) -> bool {
        let sum = self.terms.iter().fold(P::zero(), |acc, (m, g)| &acc + &(m * g));
        sum == self.lhs && self.terms.iter().all(|(_, g)| ideal.generators().contains(g))
    }
}

/// The explicit combination putting `λ² x_{i-3} x_i x_{i+3}` (`n = 10`) or
/// `λ x_{i-4} x_i x_{i+4}` (`n = 11, 12`) into the scroll ideal.
pub fn cubic_certificate(n: u32, lambda: &Rational, i: i64) -> Result<CubicCertificate> {
    if lambda.is_zero() {
        return param("cubic_certificate needs lambda != 0");
    }
    let b = |j| scroll_binomial(n, lambda, j);
    let x = |j| xm(n, &[j]);
    let l = P::constant(lambda.clone());
    match n {
        10 => Ok(CubicCertificate {
            lhs: xm(n, &[i - 3, i, i + 3]).scale(&(lambda * lambda)),
            terms: vec![
                (x(i + 3), xm(n, &[i + 1, i + 6])),
                (-&x(i + 6), b(i + 1)),
                (&l * &x(i), b(i + 4)),
            ],
        }),
        11 | 12 => Ok(CubicCertificate {
            lhs: xm(n, &[i - 4, i, i + 4]).scale(lambda),
            terms: vec![(x(i + 4), b(i - 3)), (-&x(i - 3), xm(n, &[i - 1, i + 4]))],
        }),
        _ => param(format!("cubic certificates exist for n = 10, 11, 12, not {n}")),
    }
}

/// Ideal of the special secant degeneration in `P^{n-1}`: `3×3` minors of
/// `M_d(x, (1:1:0:…:0))` for `n = 2d`, or `6×6` pfaffians of
/// `M'_d(x, e_d - e_{d+1})` for `n = 2d+1`.
pub fn secant_ideal_special(n: u32) -> Result<Ideal<Rational>> {
    if n < 6 {
        return param(format!("secant_ideal_special needs n >= 6, got {n}"));
    }
    let d = n / 2;
    let gens = if n % 2 == 0 {
        let m = substitute_point(&even_matrix(d)?, Family::Y, &even_special_point(d))?;
        minors(&m, 3)?
    } else {
        let m = substitute_point(&odd_matrix(d)?, Family::Y, &odd_special_point(d))?;
        pfaffians(&m, 6)?
    };
    Ok(Ideal::in_x(format!("secant_special({n})"), n, normalize(gens)))
}

fn require_rational(p: &Polynomial<Cyclotomic>, what: &str) -> Result<P> {
    p.monic()
        .and_then(|m| m.to_rational())
        .ok_or_else(|| Error::Verification(format!("{what} is not a rational polynomial up to scale")))
}

/// `4×4` pfaffians of `M_d(x, y)` and the translates prescribed for `d`:
/// `y, σ^5 y, τ^5 y` (`d = 5`), `y, σ^d y` (odd `d ≥ 7`), `x, σx, τx`
/// (`d = 6`), `x, σx` (even `d ≥ 8`). `y` must lie in `P^-`.
pub fn abelian_pfaffian_ideal(d: u32, y: &ExactPoint<Rational>) -> Result<Ideal<Rational>> {
    if d < 5 {
        return param(format!("abelian_pfaffian_ideal needs d >= 5, got {d}"));
    }
    let n = 2 * d;
    if y.len() != n as usize {
        return param(format!("point has {} coordinates, expected {n}", y.len()));
    }
    if !in_eigenspace(y.coords(), -1) {
        return param("point is not in P^-");
    }
    let md = even_matrix(d)?;
    let pf_at = |pt: &ExactPoint<Rational>| -> Result<Vec<P>> {
        let m = substitute_point(&md, Family::Y, pt)?;
        if !m.is_skew() {
            return Err(Error::Verification("substituted matrix is not skew".into()));
        }
        pfaffians(&m, 4)
    };
    let base = pf_at(y)?;
    let mut gens = base.clone();
    let sigma = HeisenbergElement::sigma(n);
    let tau = HeisenbergElement::tau(n);
    let rational_scalar = |c: &Cyclotomic| {
        c.as_rational().expect("σ^d and τ^d act with rational scalars in even modulus")
    };
    if d % 2 == 1 {
        let mut translates = vec![sigma.pow(d)];
        if d == 5 {
            translates.push(tau.pow(d));
        }
        for g in translates {
            let pt = ExactPoint::projective(g.act_point(y.coords(), rational_scalar))?;
            gens.extend(pf_at(&pt)?);
        }
    } else {
        let mut translates = vec![sigma];
        if d == 6 {
            translates.push(tau);
        }
        // Pfaffians of M_d(g x, y) are the images g(pf) of those of M_d(x, y).
        for g in translates {
            for p in &base {
                gens.push(require_rational(&g.act(&lift(p)), "translated pfaffian")?);
            }
        }
    }
    Ok(Ideal::in_x(format!("abelian_pfaffian(d={d})"), n, normalize(gens)))
}

/// Scroll parameter read off an ideal's quadrics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScrollMatch {
    #[serde(serialize_with = "crate::exactnum::rational_serde::one")]
    pub lambda: Rational,
    /// Centers `i` whose binomial `x_i x_{i+2} + λ x_{i-1} x_{i+3}` lies in
    /// the quadric span.
    pub centers: Vec<i64>,
}

/// Find the `λ` for which every scroll binomial lies in the linear span of
/// the quadric generators of `ideal`. Fails if no single value works.
pub fn match_scroll(ideal: &Ideal<Rational>, n: u32) -> Result<ScrollMatch> {
    let quadrics: Vec<P> = ideal.generators().iter().filter(|g| g.degree() == Some(2)).cloned().collect();
    let span = PolySpan::from_polys(&quadrics);
    let mut lambda: Option<Rational> = None;
    let mut centers = Vec::new();
    for i in 0..n as i64 {
        let ru = span.residue(&xm(n, &[i, i + 2]));
        let rw = span.residue(&xm(n, &[i - 1, i + 3]));
        // Need ru + λ rw = 0 with λ ≠ 0.
        let Some((m, c)) = rw.leading_term() else { continue };
        let l = -(ru.coefficient(m) / c);
        if l.is_zero() || !(&ru + &rw.scale(&l)).is_zero() {
            continue;
        }
        match &lambda {
            Some(prev) if *prev != l => {
                return Err(Error::Verification(format!(
                    "inconsistent scroll parameters {} and {}",
                    crate::exactnum::rational_to_text(prev),
                    crate::exactnum::rational_to_text(&l)
                )))
            }
            _ => lambda = Some(l),
        }
        centers.push(i);
    }
    match lambda {
        Some(lambda) if centers.len() == n as usize => Ok(ScrollMatch { lambda, centers }),
        _ => Err(Error::Verification(format!("only {} of {n} scroll binomials matched", centers.len()))),
    }
}

/// Quadrics cut out by the kernel of `R_d(x)^t` at a point of `P^-`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelIdeal {
    pub t_rank: usize,
    /// Basis of `ker R_d(x)^t ⊂ Q^{d+1}`.
    #[serde(serialize_with = "crate::exactnum::rational_serde::matrix")]
    pub kernel: Vec<Vec<Rational>>,
    pub ideal: Ideal<Rational>,
    /// Dimension of the span of the generators.
    pub dimension: usize,
}

/// For `z = (z_1, …, z_d)` the `P^-`-coordinates of a point of `P^{2d}`:
/// checks `rank T_d(z) = 4`, computes `N = ker R_d(x)^t` and returns the
/// ideal spanned by the entries of `R_d^t N`.
pub fn abelian_kernel_ideal(d: u32, z: &[Rational]) -> Result<KernelIdeal> {
    if d < 4 {
        return param(format!("abelian_kernel_ideal needs d >= 4, got {d}"));
    }
    let n = 2 * d + 1;
    let x = minus_point(n, z)?;
    if x.iter().all(Rational::is_zero) {
        return param("the zero vector is not a projective point");
    }
    let eval = |p: &P| p.eval_exact(|v| if v.index == 0 { int(0) } else { x[v.index as usize].clone() });
    let t = t_matrix(d)?;
    let tv: Vec<Vec<Rational>> = (0..t.rows()).map(|i| (0..t.cols()).map(|j| eval(t.get(i, j))).collect()).collect();
    let t_rank = rank(&tv);
    if t_rank != 4 {
        return param(format!("T_d has rank {t_rank} at this point, expected 4"));
    }
    let r = r_matrix(d)?;
    // R^t is (2d+1) × (d+1); its kernel lives in Q^{d+1}.
    let rt: Vec<Vec<Rational>> = (0..r.cols()).map(|j| (0..r.rows()).map(|i| eval(r.get(i, j))).collect()).collect();
    let ker = kernel(&rt, r.rows());
    let mut gens = Vec::new();
    for v in &ker {
        for j in 0..r.cols() {
            let mut q = P::zero();
            for (i, c) in v.iter().enumerate() {
                q = &q + &r.get(i, j).scale(c);
            }
            gens.push(q);
        }
    }
    let dimension = PolySpan::from_polys(&gens).dim();
    Ok(KernelIdeal {
        t_rank,
        kernel: ker,
        ideal: Ideal::in_x(format!("abelian_kernel(d={d})"), n, normalize(gens)),
        dimension,
    })
}

/// Binomials `x_{i+1} x_{i+3} - x_i x_{i+4}` for `i ∈ Z/n` together with
/// `x_i x_j`, `d(i,j) ≥ 5`.
pub fn degenerate_quadrics(n: u32) -> Vec<P> {
    let mut out: Vec<P> = (0..n as i64).map(|i| &xm(n, &[i + 1, i + 3]) - &xm(n, &[i, i + 4])).collect();
    out.extend(wide_quadrics(n));
    out
}

/// Data of the degree-7 elliptic curve: the `τ`-invariant `4×4` pfaffians of
/// `M'_3` at a symbolic point of `P^-`, their coefficient matrix and its
/// pfaffian, and the `x_0^7` coefficient of the symbolic septic.
#[derive(Clone, Debug, Serialize)]
pub struct KleinData {
    pub pfaffian_count: usize,
    pub invariant_pfaffians: Vec<P>,
    /// Rows follow `invariant_pfaffians` after reordering and sign changes
    /// that make the matrix skew; columns are `x_0², x_1x_6, x_2x_5, x_3x_4`.
    pub coefficient_matrix: Vec<Vec<P>>,
    pub quartic: P,
    pub septic_x0_coefficient: P,
}

/// The `τ`-invariant quadratic monomials for `n = 7`.
pub fn klein_monomials() -> Vec<Monomial> {
    [[0, 0], [1, 6], [2, 5], [3, 4]]
        .iter()
        .map(|p| Monomial::from_vars(p.iter().map(|&i| Variable::x(i, 7))))
        .collect()
}

fn is_tau_invariant(p: &P, n: i64) -> bool {
    p.monomials().all(|m| m.pairs().iter().filter(|(v, _)| v.family == Family::X).map(|(v, e)| v.index as i64 * *e as i64).sum::<i64>() % n == 0)
}

pub fn klein_invariants() -> Result<KleinData> {
    let n = 7u32;
    let m = odd_matrix(3)?;
    let y = |k: i64| Polynomial::var(Variable::y(k, n));
    // y ↦ (0, y1, y2, y3, -y3, -y2, -y1)
    let ym = m.map_entries("odd_matrix(d=3)[Y in P^-]", |p| {
        p.substitute_with(|v| {
            (v.family == Family::Y).then(|| match v.index {
                0 => P::zero(),
                k @ 1..=3 => y(k as i64),
                k => -&y(7 - k as i64),
            })
        })
    });
    if !ym.is_skew() {
        return Err(Error::Verification("M'_3 is not skew on P^-".into()));
    }
    let all = pfaffians(&ym, 4)?;
    let pfaffian_count = all.len();
    let mut inv: Vec<P> = Vec::new();
    for p in all.into_iter().filter(|p| !p.is_zero() && is_tau_invariant(p, 7)) {
        if !inv.iter().any(|q| *q == p || *q == -&p) {
            inv.push(p);
        }
    }
    if inv.len() != 4 {
        return Err(Error::Verification(format!("expected 4 invariant pfaffians, found {}", inv.len())));
    }
    let monos = klein_monomials();
    let coeff_of = |p: &P, mono: &Monomial| -> P {
        let mut out = P::zero();
        for (t, c) in p.terms() {
            let xs: Vec<(Variable, u32)> = t.pairs().iter().copied().filter(|(v, _)| v.family == Family::X).collect();
            if Monomial::from_pairs(xs) == *mono {
                let ys = t.pairs().iter().copied().filter(|(v, _)| v.family == Family::Y);
                out.add_term(c.clone(), Monomial::from_pairs(ys));
            }
        }
        out
    };
    let rows: Vec<Vec<P>> = inv.iter().map(|p| monos.iter().map(|mo| coeff_of(p, mo)).collect()).collect();
    let (perm, signs) = skew_arrangement(&rows)
        .ok_or_else(|| Error::Verification("no row order and signs make the coefficient matrix skew".into()))?;
    let coefficient_matrix: Vec<Vec<P>> =
        perm.iter().zip(&signs).map(|(&r, &s)| rows[r].iter().map(|e| if s { -e } else { e.clone() }).collect()).collect();
    let invariant_pfaffians: Vec<P> = perm.iter().zip(&signs).map(|(&r, &s)| if s { -&inv[r] } else { inv[r].clone() }).collect();
    let cm = crate::equations::SymbolicMatrix::from_fn(4, 4, "klein coefficient matrix", |i, j| coefficient_matrix[i][j].clone());
    let quartic = crate::equations::pfaffian(&cm)?;

    let det = determinant(&m)?;
    let x0 = Variable::x(0, n);
    let mut septic_x0_coefficient = P::zero();
    for (t, c) in det.terms() {
        if t.exponent(x0) == 7 {
            let ys = t.pairs().iter().copied().filter(|(v, _)| v.family == Family::Y);
            septic_x0_coefficient.add_term(c.clone(), Monomial::from_pairs(ys));
        }
    }
    Ok(KleinData { pfaffian_count, invariant_pfaffians, coefficient_matrix, quartic, septic_x0_coefficient })
}

/// Row permutation and sign flips turning a square matrix skew.
fn skew_arrangement(rows: &[Vec<P>]) -> Option<(Vec<usize>, Vec<bool>)> {
    let k = rows.len();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        for mask in 0u32..(1 << k) {
            let signs: Vec<bool> = (0..k).map(|i| mask & (1 << i) != 0).collect();
            let e = |i: usize, j: usize| if signs[i] { -&rows[perm[i]][j] } else { rows[perm[i]][j].clone() };
            let skew = (0..k).all(|i| e(i, i).is_zero() && (0..k).all(|j| e(i, j) == -&e(j, i)));
            if skew {
                return Some((perm, signs));
            }
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::p0;
    use crate::exactnum::int;
    use crate::ideals::{ideal_equal, stanley_reisner_ideal};
    use crate::simplicial::{cyclic_boundary, delta};

    #[test]
    fn generator_counts() {
        assert_eq!(torus_ideal(10).unwrap().generators().len(), 25);
        assert_eq!(torus_ideal(13).unwrap().generators().len(), 39);
        assert_eq!(scroll_ideal(13, &int(1)).unwrap().generators().len(), 39);
        assert!(scroll_ideal(13, &int(0)).is_err());
        assert_eq!(q_component(13, &int(1), 0).unwrap().generators().len(), 10);
    }

    #[test]
    fn torus_ideal_is_stanley_reisner() {
        for n in 10..=14 {
            let a = torus_ideal(n).unwrap();
            let b: Ideal<Rational> = stanley_reisner_ideal(&delta(n).unwrap());
            let sa: BTreeSet<String> = a.generators().iter().map(P::to_text).collect();
            let sb: BTreeSet<String> = b.generators().iter().map(P::to_text).collect();
            assert_eq!(sa, sb, "n = {n}");
            assert_eq!(a.generators().len(), b.generators().len(), "n = {n}");
        }
    }

    #[test]
    fn cubic_certificates() {
        for n in 10..=12 {
            for l in [1, 2, -1] {
                let ideal = scroll_ideal(n, &int(l)).unwrap();
                for i in 0..n as i64 {
                    assert!(cubic_certificate(n, &int(l), i).unwrap().holds(&ideal));
                }
            }
        }
    }

    #[test]
    fn secant_special_small() {
        let i8 = secant_ideal_special(8).unwrap();
        assert_eq!(i8.generators().len(), 16);
        assert!(i8.generators().iter().all(|g| g.num_terms() == 1 && g.degree() == Some(3)));
        let i7 = secant_ideal_special(7).unwrap();
        assert_eq!(i7.generators().len(), 7);
        let sr = stanley_reisner_ideal(&cyclic_boundary(7, 4).unwrap());
        assert!(ideal_equal(&i7, &sr).unwrap().equal);
    }

    #[test]
    fn pfaffians_at_p0_match_a_scroll() {
        let d = 5;
        let ideal = abelian_pfaffian_ideal(d, &p0(2 * d).unwrap()).unwrap();
        let m = match_scroll(&ideal, 2 * d).unwrap();
        assert_eq!(m.lambda, int(-1));
        assert!(ideal_equal(&ideal, &scroll_ideal(2 * d, &m.lambda).unwrap()).unwrap().equal);
    }

    #[test]
    fn kernel_ideal_at_p0() {
        let d = 5;
        let z: Vec<Rational> = p0(11).unwrap().coords()[1..=5].to_vec();
        let k = abelian_kernel_ideal(d, &z).unwrap();
        assert_eq!(k.kernel.len(), 2);
        assert_eq!(k.dimension, 22);
        assert!(crate::linalg::same_poly_span(k.ideal.generators(), &degenerate_quadrics(11)));
    }

    #[test]
    fn klein() {
        let k = klein_invariants().unwrap();
        assert_eq!(k.pfaffian_count, 35);
        let q = P::parse("y[1]^3*y[2] - y[2]^3*y[3] - y[3]^3*y[1]", 7).unwrap();
        assert!(k.quartic == q || k.quartic == -&q, "{}", k.quartic);
        let prod = P::parse("y[0]*y[1]*y[2]*y[3]*y[4]*y[5]*y[6]", 7).unwrap();
        assert_eq!(k.septic_x0_coefficient, -&prod);
    }
}
