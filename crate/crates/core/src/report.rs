//! Named verification suites and the reports they produce.
//!
//! A [`Report`] is plain data: identical configuration and seed give
//! byte-identical JSON.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::equations::{even_matrix, odd_matrix, p0, r_matrix, t_matrix};
use crate::error::{param, Result};
use crate::exactnum::{int, rational_to_text, Rational};
use crate::ideals::{
    abelian_kernel_ideal, abelian_pfaffian_ideal, cubic_certificate, degenerate_quadrics, hilbert_function,
    hilbert_function_brute, ideal_equal, klein_invariants, match_scroll, q_component, scroll_ideal,
    secant_ideal_special, stanley_reisner_ideal, torus_ideal, Ideal, MAX_BRUTE_FORCE_DEGREE,
};
use crate::linalg::{kernel, rank, same_poly_span, same_span};
use crate::polyring::{distance, Polynomial};
use crate::simplicial::{
    curve_betti_formula, cyclic_boundary, delta, face_vertices, gamma, secant_betti_formula, w_complex,
    SimplicialComplex,
};
use crate::theta::{self, Check, PeriodMatrix, RankCase};

type P = Polynomial<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Failed
        }
    }
}

/// One claim with the data that supports or refutes it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub claim: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub samples: usize,
    pub max_residual: f64,
    pub verdict: Status,
    pub claims: Vec<Claim>,
    /// Primary table for CSV output, when the suite has one.
    #[serde(skip)]
    pub table: Option<String>,
}

impl Report {
    fn new(suite: Suite, parameters: BTreeMap<String, Value>) -> Self {
        Report {
            suite: suite.name().to_string(),
            parameters,
            seed: None,
            samples: 0,
            max_residual: 0.0,
            verdict: Status::Verified,
            claims: Vec::new(),
            table: None,
        }
    }

    fn claim(&mut self, claim: impl Into<String>, ok: bool, witness: Value) {
        if !ok {
            self.verdict = Status::Failed;
        }
        self.claims.push(Claim { claim: claim.into(), status: Status::of(ok), witness });
    }

    fn check(&mut self, c: &Check) {
        self.samples += c.samples;
        self.max_residual = self.max_residual.max(c.max_residual);
        self.claim(
            c.claim.clone(),
            c.passed(),
            json!({ "samples": c.samples, "max_residual": c.max_residual, "threshold": c.threshold }),
        );
    }

    pub fn verified(&self) -> bool {
        self.verdict == Status::Verified
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The suite's table if it has one, otherwise one row per claim.
    pub fn to_csv(&self) -> String {
        if let Some(t) = &self.table {
            return t.clone();
        }
        let mut s = String::from("claim,status\n");
        for c in &self.claims {
            let status = if c.status == Status::Verified { "verified" } else { "failed" };
            s.push_str(&format!("\"{}\",{status}\n", c.claim.replace('"', "\"\"")));
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => param(format!("unknown format {s:?} (json or csv)")),
        }
    }
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Complex,
    Ideal,
    Betti,
    Scroll,
    SecantExact,
    AbelianExact,
    ThetaRank,
    ThetaSecant,
    Klein,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Complex,
        Suite::Ideal,
        Suite::Betti,
        Suite::Scroll,
        Suite::SecantExact,
        Suite::AbelianExact,
        Suite::ThetaRank,
        Suite::ThetaSecant,
        Suite::Klein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Complex => "complex",
            Suite::Ideal => "ideal",
            Suite::Betti => "betti",
            Suite::Scroll => "scroll",
            Suite::SecantExact => "secant-exact",
            Suite::AbelianExact => "abelian-exact",
            Suite::ThetaRank => "theta-rank",
            Suite::ThetaSecant => "theta-secant",
            Suite::Klein => "klein",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).map_or_else(|| param(format!("unknown suite {s:?}")), Ok)
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, Suite::ThetaRank | Suite::ThetaSecant)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters shared by all suites; each suite reads the ones it needs.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub n: Option<u32>,
    pub d: Option<u32>,
    pub lambdas: Vec<Rational>,
    pub k_max: Option<u32>,
    pub seed: u64,
    pub tol: f64,
    pub rank_tol: f64,
    pub samples: Option<usize>,
    pub family: Option<String>,
    pub case: Option<String>,
    pub kind: Option<String>,
    pub dim: Option<u32>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: None,
            d: None,
            lambdas: Vec::new(),
            k_max: None,
            seed: 0,
            tol: theta::SERIES_TOL,
            rank_tol: theta::RANK_TOL,
            samples: None,
            family: None,
            case: None,
            kind: None,
            dim: None,
        }
    }
}

impl SuiteConfig {
    fn n(&self) -> Result<u32> {
        self.n.map_or_else(|| param("this suite needs --n"), Ok)
    }
    fn d(&self) -> Result<u32> {
        self.d.map_or_else(|| param("this suite needs --d"), Ok)
    }
    fn family(&self, default: &str) -> String {
        self.family.clone().unwrap_or_else(|| default.to_string())
    }
    fn check_tolerances(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1e-3) {
            return param("--tol must lie in (0, 1e-3)");
        }
        if !(self.rank_tol > 0.0 && self.rank_tol < 1.0) {
            return param("--rank-tol must lie in (0, 1)");
        }
        Ok(())
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Run a suite. `Err` means the parameters were rejected or the numerics
/// could not be trusted; a failed claim is reported in the verdict.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    match suite {
        Suite::Complex => complex_suite(cfg),
        Suite::Ideal => ideal_suite(cfg),
        Suite::Betti => betti_suite(cfg),
        Suite::Scroll => scroll_suite(cfg),
        Suite::SecantExact => secant_exact_suite(cfg),
        Suite::AbelianExact => abelian_exact_suite(cfg),
        Suite::ThetaRank => theta_rank_suite(cfg),
        Suite::ThetaSecant => theta_secant_suite(cfg),
        Suite::Klein => klein_suite(),
    }
}

// ---------------------------------------------------------------------------
// Combinatorial suites

fn homology_claim(r: &mut Report, c: &SimplicialComplex, expected: &[usize]) {
    let h = c.rational_homology();
    r.claim(format!("reduced rational homology of {} is {expected:?}", c.name()), h == expected, json!(h));
}

fn complex_suite(cfg: &SuiteConfig) -> Result<Report> {
    let n = cfg.n()?;
    let family = cfg.family("delta");
    let mut r = Report::new(Suite::Complex, params(&[("family", json!(family)), ("n", json!(n))]));
    match family.as_str() {
        "delta" => {
            let c = delta(n)?;
            let f = c.f_vector();
            let nn = n as u64;
            r.claim("f-vector is (n, 3n, 2n)", f == [nn, 3 * nn, 2 * nn], json!(f));
            let chi = c.euler_characteristic();
            r.claim("Euler characteristic is 0", chi == 0, json!(chi));
            homology_claim(&mut r, &c, &[0, 2, 1]);
            r.claim("closed surface: every edge in two triangles, vertex links are cycles", c.is_closed_surface(), json!(null));
            let cyc = cyclic_boundary(n, 4)?;
            r.claim(format!("subcomplex of the boundary of C({n},4)"), c.is_subcomplex_of(&cyc), json!(null));
            let counts: Vec<usize> = c
                .facets()
                .iter()
                .map(|&t| {
                    let v = face_vertices(t);
                    let pairs = [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])];
                    pairs.iter().filter(|&&(a, b)| distance(a as i64, b as i64, n) == 1).count()
                })
                .collect();
            r.claim(
                "every triangle contains exactly one edge {i, i+1}",
                counts.iter().all(|&k| k == 1),
                json!(counts),
            );
            r.claim(
                "the torus is invariant under i -> i+1 and i -> -i",
                symmetric_under(&c, |v| (v + 1) % n) && symmetric_under(&c, |v| (n - v) % n),
                json!(null),
            );
            r.table = Some(facet_csv(&c));
        }
        "gamma" => {
            let c = gamma(n)?;
            let f = c.f_vector();
            r.claim("f-vector is (n, n)", f == [n as u64, n as u64], json!(f));
            homology_claim(&mut r, &c, &[0, 1]);
            r.table = Some(facet_csv(&c));
        }
        "cyclic" => {
            let dim = cfg.dim.unwrap_or(4);
            let c = cyclic_boundary(n, dim)?;
            let f = c.f_vector();
            let mut expected = vec![0; dim as usize];
            expected[dim as usize - 1] = 1;
            homology_claim(&mut r, &c, &expected);
            if dim == 4 {
                let nn = n as u64;
                r.claim("facet count is n(n-3)/2", f[3] == nn * (nn - 3) / 2, json!(f));
                r.claim("every pair of vertices is an edge", f[1] == nn * (nn - 1) / 2, json!(f));
            } else {
                r.claim("f-vector", true, json!(f));
            }
            r.table = Some(facet_csv(&c));
        }
        "w" => {
            let c = w_complex(n)?;
            let f = c.f_vector();
            r.claim("f-vector is (n, 2n)", f == [n as u64, 2 * n as u64], json!(f));
            r.table = Some(facet_csv(&c));
        }
        other => return param(format!("unknown complex family {other:?} (delta, gamma, cyclic, w)")),
    }
    Ok(r)
}

fn symmetric_under(c: &SimplicialComplex, f: impl Fn(u32) -> u32) -> bool {
    c.facets().iter().all(|&t| {
        let img = face_vertices(t).into_iter().map(&f).fold(0u64, |m, v| m | 1 << v);
        c.is_face(img)
    })
}

fn facet_csv(c: &SimplicialComplex) -> String {
    let mut s = String::from("facet\n");
    for f in c.facet_lists() {
        let v: Vec<String> = f.iter().map(u32::to_string).collect();
        s.push_str(&v.join(" "));
        s.push('\n');
    }
    s
}

fn text_set(ps: &[P]) -> Vec<String> {
    let mut v: Vec<String> = ps.iter().map(P::to_text).collect();
    v.sort();
    v
}

fn ideal_suite(cfg: &SuiteConfig) -> Result<Report> {
    let n = cfg.n()?;
    let family = cfg.family("torus");
    let mut r = Report::new(Suite::Ideal, params(&[("family", json!(family)), ("n", json!(n))]));
    let nn = n as i64;
    match family.as_str() {
        "gamma" => {
            let c = gamma(n)?;
            let mnf = c.minimal_nonfaces();
            let count = mnf.len() as i64;
            // Γ_{m+1} has (m² - m - 2)/2 minimal non-faces; here m + 1 = n.
            let m = nn - 1;
            r.claim("minimal non-face count is (m^2 - m - 2)/2 with m = n - 1", count == (m * m - m - 2) / 2, json!(count));
            let quadratic = mnf.iter().all(|&f| face_vertices(f).len() == 2);
            r.claim("every minimal non-face is a non-edge", quadratic, json!(null));
        }
        "cyclic" => {
            let c = cyclic_boundary(n, 4)?;
            let mnf: Vec<Vec<u32>> = c.minimal_nonfaces().into_iter().map(face_vertices).collect();
            let expected: Vec<Vec<u32>> = (0..n)
                .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| vec![a, b, c])))
                .filter(|t| {
                    let (a, b, c) = (t[0] as i64, t[1] as i64, t[2] as i64);
                    distance(a, b, n) >= 2 && distance(b, c, n) >= 2 && distance(a, c, n) >= 2
                })
                .collect();
            let mut got = mnf.clone();
            got.sort();
            let mut want = expected.clone();
            want.sort();
            r.claim("minimal non-faces are the cubics with pairwise distance >= 2", got == want, json!(mnf.len()));
            let count = mnf.len() as i64;
            r.claim("count is n(n^2 - 9n + 20)/6", count == nn * (nn * nn - 9 * nn + 20) / 6, json!(count));
        }
        "torus" => {
            let t = torus_ideal(n)?;
            let sr: Ideal<Rational> = stanley_reisner_ideal(&delta(n)?);
            let a = text_set(t.generators());
            let b = text_set(sr.generators());
            r.claim(format!("torus_ideal({n}) is the Stanley-Reisner ideal of delta({n})"), a == b, json!(a));
            let cubics = t.generators().iter().filter(|g| g.degree() == Some(3)).count();
            r.claim("cubic generators appear exactly for n in {10, 11, 12}", (cubics > 0) == (10..=12).contains(&n), json!(cubics));
        }
        other => return param(format!("unknown ideal family {other:?} (gamma, cyclic, torus)")),
    }
    Ok(r)
}

fn betti_suite(cfg: &SuiteConfig) -> Result<Report> {
    let n = cfg.n()?;
    let family = cfg.family("gamma");
    let mut r = Report::new(Suite::Betti, params(&[("family", json!(family)), ("n", json!(n))]));
    let (c, formula) = match family.as_str() {
        "gamma" => (gamma(n)?, curve_betti_formula(n - 1)),
        "cyclic" => {
            if n < 6 {
                return param("betti --family cyclic needs n >= 6");
            }
            (cyclic_boundary(n, 4)?, secant_betti_formula(n - 1))
        }
        other => return param(format!("unknown betti family {other:?} (gamma, cyclic)")),
    };
    let table = c.hochster_betti()?;
    r.claim(
        format!("Hochster's formula on {} matches the closed formula", c.name()),
        table == formula,
        json!({ "hochster": table.to_csv(), "formula": formula.to_csv() }),
    );
    let top = table.entries().map(|(i, _, _)| i).max().unwrap_or(0);
    let last: Vec<(u32, u32, u64)> = table.entries().filter(|&(i, _, _)| i == top).collect();
    r.claim(format!("last syzygy module is R(-{n})"), last == [(top, n, 1)], json!(last));
    r.table = Some(table.to_csv());
    Ok(r)
}

fn default_lambdas(cfg: &SuiteConfig) -> Vec<Rational> {
    if cfg.lambdas.is_empty() {
        vec![int(1), int(2), int(-1)]
    } else {
        cfg.lambdas.clone()
    }
}

fn scroll_suite(cfg: &SuiteConfig) -> Result<Report> {
    let n = cfg.n()?;
    let k_max = cfg.k_max.unwrap_or(4);
    if k_max > MAX_BRUTE_FORCE_DEGREE {
        return param(format!("--k-max {k_max} exceeds the brute-force limit {MAX_BRUTE_FORCE_DEGREE}"));
    }
    let lambdas = default_lambdas(cfg);
    if lambdas.iter().any(|l| *l == int(0)) {
        return param("scroll suite needs lambda != 0");
    }
    let lambda_text: Vec<String> = lambdas.iter().map(rational_to_text).collect();
    let mut r = Report::new(
        Suite::Scroll,
        params(&[("n", json!(n)), ("lambda", json!(lambda_text)), ("k_max", json!(k_max))]),
    );
    let expect: Vec<u64> = (1..=k_max).map(|k| (n * k * k) as u64).collect();
    let torus = torus_ideal(n)?;
    let tg: Vec<u64> = (1..=k_max).map(|k| hilbert_function(&torus, k)).collect::<Result<_>>()?;
    let tb: Vec<u64> = (1..=k_max).map(|k| hilbert_function_brute(&torus, k)).collect::<Result<_>>()?;
    r.claim("Hilbert function of torus_ideal is n k^2 (Groebner route)", tg == expect, json!(tg));
    r.claim("Hilbert function of torus_ideal is n k^2 (brute-force rank)", tb == expect, json!(tb));
    let per_lambda: Vec<Vec<(String, bool, Value)>> =
        lambdas.par_iter().map(|l| scroll_claims(n, l, k_max, &expect)).collect::<Result<_>>()?;
    for claims in per_lambda {
        for (c, ok, w) in claims {
            r.claim(c, ok, w);
        }
    }
    Ok(r)
}

fn scroll_claims(n: u32, lambda: &Rational, k_max: u32, expect: &[u64]) -> Result<Vec<(String, bool, Value)>> {
    let lt = rational_to_text(lambda);
    let s = scroll_ideal(n, lambda)?;
    let mut out = Vec::new();
    let mut outside = Vec::new();
    for i in 0..n as i64 {
        let gb = q_component(n, lambda, i)?.groebner()?;
        for (k, g) in s.generators().iter().enumerate() {
            if !gb.reduce(g).is_zero() {
                outside.push((i, k));
            }
        }
    }
    out.push((format!("lambda={lt}: every scroll generator lies in every component Q_i"), outside.is_empty(), json!(outside)));
    if (10..=12).contains(&n) {
        let failed: Vec<i64> = (0..n as i64)
            .filter(|&i| cubic_certificate(n, lambda, i).map_or(true, |c| !c.holds(&s)))
            .collect();
        out.push((format!("lambda={lt}: the extra cubics are explicit combinations of scroll generators"), failed.is_empty(), json!(failed)));
    }
    let g: Vec<u64> = (1..=k_max).map(|k| hilbert_function(&s, k)).collect::<Result<_>>()?;
    let b: Vec<u64> = (1..=k_max).map(|k| hilbert_function_brute(&s, k)).collect::<Result<_>>()?;
    out.push((format!("lambda={lt}: Hilbert function is n k^2 (Groebner route)"), g == expect, json!(g)));
    out.push((format!("lambda={lt}: Hilbert function is n k^2 (brute-force rank)"), b == expect, json!(b)));
    Ok(out)
}

fn secant_exact_suite(cfg: &SuiteConfig) -> Result<Report> {
    let n = cfg.n()?;
    if n < 7 {
        return param("secant-exact needs n >= 7");
    }
    let mut r = Report::new(Suite::SecantExact, params(&[("n", json!(n))]));
    let a = secant_ideal_special(n)?;
    let b: Ideal<Rational> = stanley_reisner_ideal(&cyclic_boundary(n, 4)?);
    let cert = ideal_equal(&a, &b)?;
    r.claim(
        format!("secant equations at the special point generate the Stanley-Reisner ideal of C({n},4)"),
        cert.equal,
        serde_json::to_value(&cert).expect("serializable"),
    );
    Ok(r)
}

fn abelian_exact_suite(cfg: &SuiteConfig) -> Result<Report> {
    let d = cfg.d()?;
    if !(4..=10).contains(&d) {
        return param("abelian-exact needs 4 <= d <= 10");
    }
    let mut r = Report::new(Suite::AbelianExact, params(&[("d", json!(d))]));
    if (5..=7).contains(&d) {
        let ideal = abelian_pfaffian_ideal(d, &p0(2 * d)?)?;
        let m = match_scroll(&ideal, 2 * d)?;
        let scroll = scroll_ideal(2 * d, &m.lambda)?;
        let cert = ideal_equal(&ideal, &scroll)?;
        r.claim(
            format!("4x4 pfaffians at p0 and their translates generate scroll_ideal({}, {})", 2 * d, rational_to_text(&m.lambda)),
            cert.equal,
            json!({ "match": m, "certificate": cert, "generators": ideal.generators().len() }),
        );
    }
    let n = 2 * d + 1;
    let z: Vec<Rational> = p0(n)?.coords()[1..=d as usize].to_vec();
    let x = crate::heisenberg::minus_point(n, &z)?;
    let t = t_matrix(d)?;
    let tv: Vec<Vec<Rational>> =
        (0..t.rows()).map(|i| (0..t.cols()).map(|j| t.get(i, j).eval_exact(|v| x[v.index as usize].clone())).collect()).collect();
    let t_rank = rank(&tv);
    r.claim("T_d has rank 4 at p0", t_rank == 4, json!(t_rank));
    let t_ker = kernel(&tv, t.cols());
    let len = d as usize + 1;
    let mut stated = vec![vec![int(0); len]];
    stated[0][1] = int(1);
    stated[0][2] = int(-1);
    for j in 3..d as usize - 1 {
        let mut e = vec![int(0); len];
        e[j] = int(1);
        stated.push(e);
    }
    r.claim(
        "kernel of T_d at p0 is spanned by (0,1,-1,0,...,0) and e_4, ..., e_{d-1}",
        t_ker.len() == d as usize - 3 && same_span(&t_ker, &stated),
        json!(t_ker.iter().map(|v| v.iter().map(rational_to_text).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    let k = abelian_kernel_ideal(d, &z)?;
    let dim = (d - 3) * (2 * d + 1);
    r.claim(
        "kernel quadrics span the binomials x_{i+1}x_{i+3} - x_i x_{i+4} and the monomials x_i x_j, d(i,j) >= 5",
        same_poly_span(k.ideal.generators(), &degenerate_quadrics(n)),
        json!(k.ideal.generators().len()),
    );
    r.claim("kernel quadric space has dimension (d-3)(2d+1)", k.dimension == dim as usize, json!(k.dimension));
    Ok(r)
}

fn klein_suite() -> Result<Report> {
    let mut r = Report::new(Suite::Klein, BTreeMap::new());
    let k = klein_invariants()?;
    r.claim("M'_3 at a point of P^- has 35 distinct 4x4 pfaffians", k.pfaffian_count == 35, json!(k.pfaffian_count));
    let displayed = [
        "x[0]^2*y[2]*y[3] + x[1]*x[6]*y[3]^2 - x[3]*x[4]*y[1]^2",
        "x[0]^2*y[1]*y[3] - x[1]*x[6]*y[2]^2 + x[2]*x[5]*y[1]^2",
        "x[0]^2*y[1]*y[2] - x[3]*x[4]*y[2]^2 + x[2]*x[5]*y[3]^2",
        "x[1]*x[6]*y[1]*y[2] - x[3]*x[4]*y[1]*y[3] - x[2]*x[5]*y[2]*y[3]",
    ];
    let mut matched = Vec::new();
    for s in displayed {
        let p = P::parse(s, 7)?;
        matched.push(k.invariant_pfaffians.iter().position(|q| *q == p || *q == -&p));
    }
    let all = k.invariant_pfaffians.len() == 4 && {
        let mut idx: Vec<Option<usize>> = matched.clone();
        idx.sort();
        idx.dedup();
        idx.len() == 4 && idx.iter().all(Option::is_some)
    };
    r.claim(
        "the four tau-invariant pfaffians are the expected quadrics up to sign",
        all,
        json!(k.invariant_pfaffians.iter().map(P::to_text).collect::<Vec<_>>()),
    );
    let q = P::parse("y[1]^3*y[2] - y[2]^3*y[3] - y[3]^3*y[1]", 7)?;
    r.claim(
        "pfaffian of the coefficient matrix is +-(y1^3 y2 - y2^3 y3 - y3^3 y1)",
        k.quartic == q || k.quartic == -&q,
        json!(k.quartic.to_text()),
    );
    let prod = P::parse("y[0]*y[1]*y[2]*y[3]*y[4]*y[5]*y[6]", 7)?;
    r.claim(
        "x0^7 coefficient of det M'_3 is -y0 y1 ... y6",
        k.septic_x0_coefficient == -&prod,
        json!(k.septic_x0_coefficient.to_text()),
    );
    Ok(r)
}

// ---------------------------------------------------------------------------
// Numerical suites

fn theta_rank_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.check_tolerances()?;
    let case = RankCase::parse(cfg.case.as_deref().unwrap_or("elliptic-even"))?;
    let d = cfg.d()?;
    if !(2..=12).contains(&d) || (d < 3 && matches!(case, RankCase::EllipticEven | RankCase::SurfaceEven)) {
        return param(format!("{} needs {} <= d <= 12", case.name(), if matches!(case, RankCase::EllipticOdd | RankCase::SurfaceOdd) { 2 } else { 3 }));
    }
    let samples = cfg.samples.unwrap_or(20);
    if samples == 0 {
        return param("--samples must be positive");
    }
    let pm = case.period_matrix(d)?;
    let mut r = Report::new(
        Suite::ThetaRank,
        params(&[
            ("case", json!(case.name())),
            ("d", json!(d)),
            ("period_matrix", serde_json::to_value(&pm).expect("serializable")),
            ("rank_tol", json!(cfg.rank_tol)),
            ("tol", json!(cfg.tol)),
        ]),
    );
    r.seed = Some(cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rep = theta::rank_condition_suite(case, d, &pm, samples, &mut rng, cfg.rank_tol, cfg.tol)?;
    r.samples = samples;
    r.max_residual = rep.max_gap;
    r.claim(
        format!("{} matrix has rank at most {} at {samples} sample pairs", case.name(), rep.bound),
        rep.verified() && rep.max_gap < cfg.rank_tol,
        serde_json::to_value(&rep).expect("serializable"),
    );
    Ok(r)
}

fn theta_secant_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.check_tolerances()?;
    let n = cfg.n()?;
    if !(4..=16).contains(&n) {
        return param("theta-secant needs 4 <= n <= 16");
    }
    let samples = cfg.samples.unwrap_or(20);
    if samples == 0 {
        return param("--samples must be positive");
    }
    let pm = PeriodMatrix::default_elliptic(n)?;
    let mut r = Report::new(
        Suite::ThetaSecant,
        params(&[
            ("n", json!(n)),
            ("period_matrix", serde_json::to_value(&pm).expect("serializable")),
            ("rank_tol", json!(cfg.rank_tol)),
            ("tol", json!(cfg.tol)),
        ]),
    );
    r.seed = Some(cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let checks = if n == 4 {
        theta::quartic_check(&pm, samples, &mut rng, cfg.tol)?
    } else {
        theta::secant_vanishing_suite(&pm, samples, &mut rng, cfg.tol)?
    };
    for c in &checks {
        r.check(c);
    }
    if n == 6 {
        let s = theta::pencil_singular_values(&pm, 5, &mut rng, cfg.tol)?;
        let rk = s.iter().filter(|&&v| v / s[0] > cfg.rank_tol).count();
        r.samples += 5;
        r.claim("coefficient vectors of det M_3(x, y_k), k = 1..5, span a pencil", rk == 2, json!({ "rank": rk, "singular_values": s }));
    }
    for c in theta::equivariance_checks(&pm, 5, &mut rng, cfg.tol)? {
        r.check(&c);
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Emission

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitObject {
    Ideal,
    Complex,
    Matrix,
}

impl EmitObject {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(EmitObject::Ideal),
            "complex" => Ok(EmitObject::Complex),
            "matrix" => Ok(EmitObject::Matrix),
            _ => param(format!("unknown object {s:?} (ideal, complex, matrix)")),
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            EmitObject::Ideal => "ideal",
            EmitObject::Complex => "complex",
            EmitObject::Matrix => "matrix",
        }
    }
}

/// Serialized form of a named object.
pub fn emit(object: EmitObject, cfg: &SuiteConfig, format: Format) -> Result<String> {
    let json_line = |v: Value| {
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    };
    match object {
        EmitObject::Ideal => {
            let n = cfg.n()?;
            let lambda = cfg.lambdas.first().cloned().unwrap_or_else(|| int(1));
            let ideal = match cfg.family("scroll").as_str() {
                "scroll" => scroll_ideal(n, &lambda)?,
                "torus" => torus_ideal(n)?,
                "secant" => secant_ideal_special(n)?,
                "gamma" => stanley_reisner_ideal(&gamma(n)?),
                "cyclic" => stanley_reisner_ideal(&cyclic_boundary(n, cfg.dim.unwrap_or(4))?),
                "delta" => stanley_reisner_ideal(&delta(n)?),
                other => return param(format!("unknown ideal family {other:?}")),
            };
            Ok(match format {
                Format::Json => json_line(serde_json::to_value(&ideal).expect("serializable")),
                Format::Csv => {
                    let mut s = String::from("generator\n");
                    for g in ideal.generators() {
                        s.push_str(&g.to_text());
                        s.push('\n');
                    }
                    s
                }
            })
        }
        EmitObject::Complex => {
            let n = cfg.n()?;
            let c = match cfg.family("cyclic").as_str() {
                "cyclic" => cyclic_boundary(n, cfg.dim.unwrap_or(4))?,
                "delta" => delta(n)?,
                "gamma" => gamma(n)?,
                "w" => w_complex(n)?,
                other => return param(format!("unknown complex family {other:?}")),
            };
            Ok(match format {
                Format::Json => json_line(serde_json::to_value(&c).expect("serializable")),
                Format::Csv => facet_csv(&c),
            })
        }
        EmitObject::Matrix => {
            let d = cfg.d()?;
            let m = match cfg.kind.as_deref().unwrap_or("even") {
                "even" => even_matrix(d)?,
                "odd" => odd_matrix(d)?,
                "r" => r_matrix(d)?,
                "t" => t_matrix(d)?,
                other => return param(format!("unknown matrix kind {other:?} (even, odd, r, t)")),
            };
            Ok(match format {
                Format::Json => json_line(serde_json::to_value(&m).expect("serializable")),
                Format::Csv => {
                    let mut s = String::new();
                    for row in m.to_text_rows() {
                        s.push_str(&row.join(","));
                        s.push('\n');
                    }
                    s
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SuiteConfig {
        SuiteConfig::default()
    }

    #[test]
    fn delta_9_report() {
        let r = run_suite(Suite::Complex, &SuiteConfig { n: Some(9), ..cfg() }).unwrap();
        assert!(r.verified(), "{}", r.to_json());
        assert_eq!(r.claims[0].witness, json!([9, 27, 18]));
    }

    #[test]
    fn betti_gamma_6_csv() {
        let r = run_suite(Suite::Betti, &SuiteConfig { n: Some(6), family: Some("gamma".into()), ..cfg() }).unwrap();
        assert!(r.verified());
        assert_eq!(r.to_csv(), curve_betti_formula(5).to_csv());
    }

    #[test]
    fn emit_counts() {
        let s = emit(EmitObject::Ideal, &SuiteConfig { n: Some(13), lambdas: vec![int(1)], ..cfg() }, Format::Csv).unwrap();
        assert_eq!(s.lines().count(), 1 + 39);
        let s = emit(EmitObject::Complex, &SuiteConfig { n: Some(6), dim: Some(4), ..cfg() }, Format::Csv).unwrap();
        assert_eq!(s.lines().count(), 1 + 9);
    }

    #[test]
    fn missing_parameters_are_rejected() {
        assert!(run_suite(Suite::Scroll, &cfg()).is_err());
        assert!(run_suite(Suite::Complex, &SuiteConfig { n: Some(9), family: Some("nope".into()), ..cfg() }).is_err());
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let c = SuiteConfig { n: Some(5), seed: 11, samples: Some(3), ..cfg() };
        let a = run_suite(Suite::ThetaSecant, &c).unwrap().to_json();
        let b = run_suite(Suite::ThetaSecant, &c).unwrap().to_json();
        assert_eq!(a, b);
    }
}
