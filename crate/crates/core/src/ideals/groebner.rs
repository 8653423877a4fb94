use std::collections::BTreeSet;

use super::Ideal;
use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::polyring::{Monomial, Polynomial, Variable};

/// Buchberger's algorithm is refused beyond this many ring variables.
pub const MAX_GROEBNER_VARS: usize = 16;

/// Reduced Gröbner basis for the graded reverse lexicographic order, sorted
/// by increasing leading monomial; every element is monic.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    vars: Vec<Variable>,
    elements: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    /// Normal form of `p`.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        reduce_full(p, &self.elements)
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }
}

/// Normal form of `p` modulo the ideal generated by `basis` (which is first
/// completed to a Gröbner basis).
pub fn normal_form<F: Field>(p: &Polynomial<F>, basis: &Ideal<F>) -> Result<Polynomial<F>> {
    Ok(groebner_basis(basis)?.reduce(p))
}

fn reduce_full<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let mut p = p.clone();
    let mut rem = Polynomial::zero();
    while let Some((m, c)) = p.pop_leading() {
        let hit = basis.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lm.quotient_of(&m).map(|q| (g, q))
        });
        match hit {
            Some((g, q)) => {
                let f = c.mul(&g.leading_coeff().unwrap().inv().unwrap());
                // The leading term cancels exactly; subtract the tail only.
                let mut tail = g.clone();
                tail.pop_leading();
                p.sub_scaled(&f, &q, &tail);
            }
            None => rem.add_term(c, m),
        }
    }
    rem
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a = mf.quotient_of(&l).unwrap();
    let b = mg.quotient_of(&l).unwrap();
    let mut s = f.mul_term(&cf.inv().unwrap(), &a);
    s.sub_scaled(&cg.inv().unwrap(), &b, g);
    s
}

struct State<F: Field> {
    polys: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    pairs: BTreeSet<(Monomial, usize, usize)>,
}

impl<F: Field> State<F> {
    fn active_basis(&self) -> Vec<Polynomial<F>> {
        (0..self.polys.len()).filter(|&i| self.active[i]).map(|i| self.polys[i].clone()).collect()
    }

    /// Gebauer–Möller update on insertion of a new element.
    fn insert(&mut self, h: Polynomial<F>) {
        let h = h.monic().unwrap();
        let hi = self.polys.len();
        let lh = h.leading_monomial().unwrap().clone();
        let olds: Vec<usize> = (0..hi).filter(|&i| self.active[i]).collect();

        // Candidate pairs (h, g); drop those whose lcm is a proper multiple of
        // another candidate's lcm (chain criterion), keeping one per lcm.
        let cands: Vec<(usize, Monomial)> = olds.iter().map(|&g| (g, lh.lcm(&self.lms[g]))).collect();
        let mut keep: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g, l)) in cands.iter().enumerate() {
            let coprime = lh.is_coprime(&self.lms[*g]);
            let dominated = cands.iter().enumerate().any(|(k2, (_, l2))| {
                k2 != k && l2.divides(l) && (l2 != l || k2 < k)
            });
            if coprime || !dominated {
                keep.push((*g, l.clone()));
            }
        }
        // Product criterion: discard pairs with coprime leading monomials.
        keep.retain(|(g, _)| !lh.is_coprime(&self.lms[*g]));

        // Old pairs whose lcm is strictly divisible by lm(h) in the chain sense.
        let lms = &self.lms;
        self.pairs.retain(|(l, a, b)| {
            !(lh.divides(l) && lh.lcm(&lms[*a]) != *l && lh.lcm(&lms[*b]) != *l)
        });
        for (g, l) in keep {
            self.pairs.insert((l, g, hi));
        }
        for &g in &olds {
            if lh.divides(&self.lms[g]) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(lh);
        self.active.push(true);
    }
}

/// Reduced Gröbner basis of `ideal`.
pub fn groebner_basis<F: Field>(ideal: &Ideal<F>) -> Result<GroebnerBasis<F>> {
    if ideal.vars().len() > MAX_GROEBNER_VARS {
        return Err(Error::Size(format!(
            "Groebner basis in {} variables (limit {MAX_GROEBNER_VARS})",
            ideal.vars().len()
        )));
    }
    let mut st = State {
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
    };
    let mut gens: Vec<Polynomial<F>> = ideal.generators().to_vec();
    gens.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in gens {
        let r = reduce_full(&g, &st.active_basis());
        if !r.is_zero() {
            st.insert(r);
        }
    }
    while let Some(pair) = st.pairs.pop_first() {
        let (_, a, b) = pair;
        let s = s_polynomial(&st.polys[a], &st.polys[b]);
        let r = reduce_full(&s, &st.active_basis());
        if !r.is_zero() {
            st.insert(r);
        }
    }
    Ok(GroebnerBasis {
        vars: ideal.vars().to_vec(),
        elements: interreduce(st.active_basis()),
    })
}

fn interreduce<F: Field>(mut g: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    g.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let lms: Vec<Monomial> = g.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
    let minimal: Vec<Polynomial<F>> = g
        .iter()
        .enumerate()
        .filter(|&(i, _)| !(0..lms.len()).any(|j| j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i)))
        .map(|(_, p)| p.clone())
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for (i, p) in minimal.iter().enumerate() {
        let mut p = p.clone();
        let (lm, lc) = p.pop_leading().unwrap();
        let others: Vec<Polynomial<F>> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        let mut tail = reduce_full(&p, &others);
        tail.add_term(lc, lm);
        out.push(tail.monic().unwrap());
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    type P = Polynomial<Rational>;

    #[test]
    fn normal_form_example() {
        let n = 13;
        let g = P::parse("x[0]*x[2] + x[12]*x[3]", n).unwrap();
        let i = Ideal::in_x("b", n, vec![g]);
        let nf = normal_form(&P::parse("x[0]*x[2]", n).unwrap(), &i).unwrap();
        assert_eq!(nf, P::parse("-x[3]*x[12]", n).unwrap());
    }

    #[test]
    fn twisted_cubic() {
        // 2x2 minors of [[x0,x1,x2],[x1,x2,x3]]
        let n = 4;
        let gens = ["x[0]*x[2] - x[1]^2", "x[0]*x[3] - x[1]*x[2]", "x[1]*x[3] - x[2]^2"]
            .iter()
            .map(|s| P::parse(s, n).unwrap())
            .collect();
        let gb = groebner_basis(&Ideal::in_x("tc", n, gens)).unwrap();
        assert_eq!(gb.elements().len(), 3);
        assert!(gb.reduce(&P::parse("x[0]*x[3]^2 - x[2]^3", n).unwrap()).is_zero());
    }

    #[test]
    fn non_homogeneous_unit_ideal() {
        let i = Ideal::in_x("u", 2, vec![P::parse("x[0]*x[1] - 1", 2).unwrap(), P::parse("x[0]", 2).unwrap()]);
        assert!(groebner_basis(&i).unwrap().is_unit_ideal());
    }

    #[test]
    fn too_many_variables() {
        let i = Ideal::in_x("big", 17, vec![P::parse("x[0]", 17).unwrap()]);
        assert!(matches!(groebner_basis(&i), Err(Error::Size(_))));
    }
}
