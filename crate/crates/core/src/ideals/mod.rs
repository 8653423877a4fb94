//! Polynomial ideals: Gröbner bases, membership, equality and Hilbert
//! functions, plus the named ideals of scrolls, tori, secant varieties and
//! abelian surfaces.

mod groebner;
mod hilbert;
mod named;

pub use groebner::{groebner_basis, normal_form, GroebnerBasis, MAX_GROEBNER_VARS};
pub use hilbert::{
    hilbert_function, hilbert_function_brute, hilbert_numerator, hilbert_value_from_numerator, MAX_BRUTE_FORCE_DEGREE,
};
pub use named::*;

use serde::Serialize;

use crate::error::Result;
use crate::exactnum::Field;
use crate::polyring::{x_vars, Monomial, Polynomial, Variable};
use crate::simplicial::SimplicialComplex;

/// Ideal in the polynomial ring on `vars`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct Ideal<F: Field> {
    name: String,
    vars: Vec<Variable>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; `vars` is sorted and deduplicated, and
    /// extended by any variable a generator uses.
    pub fn new(name: impl Into<String>, vars: Vec<Variable>, generators: Vec<Polynomial<F>>) -> Self {
        let mut all: std::collections::BTreeSet<Variable> = vars.into_iter().collect();
        for g in &generators {
            all.extend(g.variables());
        }
        Ideal {
            name: name.into(),
            vars: all.into_iter().collect(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    /// Ideal in `x_0, …, x_{n-1}`.
    pub fn in_x(name: impl Into<String>, n: u32, generators: Vec<Polynomial<F>>) -> Self {
        Self::new(name, x_vars(n), generators)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }
    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }
    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    pub fn groebner(&self) -> Result<GroebnerBasis<F>> {
        groebner_basis(self)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.groebner()?.reduce(p).is_zero())
    }

    /// Same ideal with the generator list replaced.
    pub fn with_generators(&self, generators: Vec<Polynomial<F>>) -> Self {
        Self::new(self.name.clone(), self.vars.clone(), generators)
    }
}

/// Outcome of an ideal comparison by double inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCertificate {
    pub equal: bool,
    /// Generators of the left ideal that do not reduce to zero modulo the right one.
    pub left_outside: Vec<usize>,
    pub right_outside: Vec<usize>,
}

pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<EqualityCertificate> {
    let ga = a.groebner()?;
    let gb = b.groebner()?;
    let left_outside: Vec<usize> = (0..a.generators.len()).filter(|&i| !gb.reduce(&a.generators[i]).is_zero()).collect();
    let right_outside: Vec<usize> = (0..b.generators.len()).filter(|&i| !ga.reduce(&b.generators[i]).is_zero()).collect();
    Ok(EqualityCertificate {
        equal: left_outside.is_empty() && right_outside.is_empty(),
        left_outside,
        right_outside,
    })
}

/// Stanley–Reisner ideal of a complex, in `x_0, …, x_{n-1}`.
pub fn stanley_reisner_ideal<F: Field>(c: &SimplicialComplex) -> Ideal<F> {
    let gens = c.stanley_reisner_generators().into_iter().map(Polynomial::monomial).collect();
    Ideal::in_x(format!("SR({})", c.name()), c.n(), gens)
}

/// Whether a polynomial is a single term.
pub fn is_monomial<F: Field>(p: &Polynomial<F>) -> bool {
    p.num_terms() == 1
}

/// Generators as monomials, if they all are.
pub fn monomial_generators<F: Field>(i: &Ideal<F>) -> Option<Vec<Monomial>> {
    i.generators().iter().map(|g| (g.num_terms() == 1).then(|| g.leading_monomial().unwrap().clone())).collect()
}
