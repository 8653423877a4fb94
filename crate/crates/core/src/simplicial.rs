//! Simplicial complexes on the vertex set `Z/n`, their Stanley–Reisner
//! ideals, rational homology and graded Betti numbers.
//!
//! Faces are `u64` bitmasks, so `n ≤ 64`; Betti tables are further limited
//! to [`MAX_HOCHSTER_VERTICES`] because Hochster's formula visits every
//! vertex subset.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::exactnum::{int, Rational};
use crate::linalg::SparseEchelon;
use crate::polyring::{Monomial, Variable};

pub const MAX_HOCHSTER_VERTICES: u32 = 14;

pub type Face = u64;

pub fn face_from(vertices: impl IntoIterator<Item = u32>) -> Face {
    vertices.into_iter().fold(0, |m, v| m | (1 << v))
}

pub fn face_vertices(f: Face) -> Vec<u32> {
    (0..64).filter(|&v| f & (1 << v) != 0).collect()
}

fn size(f: Face) -> u32 {
    f.count_ones()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: u32,
    facets: Vec<Face>,
    name: String,
}

impl SimplicialComplex {
    /// Complex generated by `facets` on vertices `0..n`; non-maximal faces
    /// are dropped.
    pub fn from_facets(n: u32, facets: impl IntoIterator<Item = Face>, name: impl Into<String>) -> Result<Self> {
        if n == 0 || n > 64 {
            return param(format!("vertex count {n} outside 1..=64"));
        }
        let all: BTreeSet<Face> = facets.into_iter().collect();
        if all.iter().any(|&f| f >> n != 0) {
            return param("facet uses a vertex outside 0..n");
        }
        let facets = all
            .iter()
            .copied()
            .filter(|&f| !all.iter().any(|&g| g != f && g & f == f))
            .collect();
        Ok(SimplicialComplex {
            n,
            facets,
            name: name.into(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }
    pub fn facet_lists(&self) -> Vec<Vec<u32>> {
        self.facets.iter().map(|&f| face_vertices(f)).collect()
    }

    /// Dimension; `-1` for the complex `{∅}`.
    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|&f| size(f) as i32 - 1).max().unwrap_or(-1)
    }

    pub fn is_face(&self, f: Face) -> bool {
        f == 0 || self.facets.iter().any(|&g| g & f == f)
    }

    /// All nonempty faces, sorted by dimension then mask.
    pub fn faces(&self) -> Vec<Face> {
        let mut all = BTreeSet::new();
        for &f in &self.facets {
            let mut s = f;
            // Enumerate nonempty submasks of f.
            while s != 0 {
                all.insert(s);
                s = (s - 1) & f;
            }
        }
        let mut v: Vec<Face> = all.into_iter().collect();
        v.sort_by_key(|&f| (size(f), f));
        v
    }

    pub fn faces_of_dim(&self, k: u32) -> Vec<Face> {
        self.faces().into_iter().filter(|&f| size(f) == k + 1).collect()
    }

    /// `(f_0, …, f_dim)`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; (self.dim() + 1).max(0) as usize];
        for face in self.faces() {
            f[size(face) as usize - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Closed surface: pure of dimension 2, every edge in exactly two
    /// triangles, and the link of every vertex a single cycle.
    pub fn is_closed_surface(&self) -> bool {
        if self.dim() != 2 || self.facets.iter().any(|&f| size(f) != 3) {
            return false;
        }
        let mut edge_count: HashMap<Face, u32> = HashMap::new();
        for &t in &self.facets {
            for v in face_vertices(t) {
                *edge_count.entry(t & !(1 << v)).or_default() += 1;
            }
        }
        if edge_count.values().any(|&c| c != 2) {
            return false;
        }
        (0..self.n).all(|v| self.link_is_cycle(v))
    }

    fn link_is_cycle(&self, v: u32) -> bool {
        let edges: Vec<(u32, u32)> = self
            .facets
            .iter()
            .filter(|&&t| t & (1 << v) != 0)
            .map(|&t| {
                let w = face_vertices(t & !(1 << v));
                (w[0], w[1])
            })
            .collect();
        if edges.len() < 3 {
            return false;
        }
        let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &(a, b) in &edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if adj.values().any(|n| n.len() != 2) {
            return false;
        }
        // Walk the cycle from one vertex; it must visit every link vertex.
        let start = *adj.keys().next().unwrap();
        let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
        while cur != start {
            let nb = &adj[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
            steps += 1;
        }
        steps == adj.len()
    }

    /// Every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|&f| other.is_face(f))
    }

    /// Minimal non-faces, sorted by size then mask.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let max = (self.dim() + 2).max(1) as u32;
        let mut out = Vec::new();
        for k in 1..=max.min(self.n) {
            for s in k_subsets(self.n, k) {
                if !self.is_face(s) && face_vertices(s).iter().all(|&v| self.is_face(s & !(1 << v))) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Squarefree monomials `x_F` for the minimal non-faces `F`.
    pub fn stanley_reisner_generators(&self) -> Vec<Monomial> {
        self.minimal_nonfaces()
            .into_iter()
            .map(|f| Monomial::from_vars(face_vertices(f).into_iter().map(|v| Variable::x(v as i64, self.n))))
            .collect()
    }

    /// Induced subcomplex on the vertex set `w`.
    pub fn restrict(&self, w: Face) -> SimplicialComplex {
        let facets: Vec<Face> = self.facets.iter().map(|&f| f & w).collect();
        SimplicialComplex::from_facets(self.n, facets, format!("{}|W", self.name)).unwrap()
    }

    /// Reduced rational Betti numbers `β̃_0, …, β̃_dim`.
    pub fn rational_homology(&self) -> Vec<usize> {
        let b = reduced_betti(&self.faces());
        b[1..].to_vec()
    }

    /// Graded Betti numbers of the Stanley–Reisner ring by Hochster's
    /// formula `β_{i,j} = Σ_{|W|=j} dim H̃^{j-i-1}(Δ|_W; Q)`.
    pub fn hochster_betti(&self) -> Result<BettiTable> {
        if self.n > MAX_HOCHSTER_VERTICES {
            return Err(Error::Size(format!(
                "Hochster's formula on {} vertices (limit {MAX_HOCHSTER_VERTICES})",
                self.n
            )));
        }
        let faces = self.faces();
        let mut table = BettiTable::default();
        for w in 0..(1u64 << self.n) {
            let sub: Vec<Face> = faces.iter().copied().filter(|&f| f & w == f).collect();
            let j = size(w);
            for (k1, &b) in reduced_betti(&sub).iter().enumerate() {
                // k1 = k + 1 for reduced homology in degree k ≥ -1.
                if b > 0 {
                    let i = j as i64 - k1 as i64;
                    debug_assert!(i >= 0);
                    table.add(i as u32, j, b as u64);
                }
            }
        }
        Ok(table)
    }

    /// Degree, sectional genus and Hilbert function values `h(0..=k_max)`
    /// of the Stanley–Reisner ring, from the f-vector alone.
    pub fn combinatorial_invariants(&self, k_max: u32) -> Invariants {
        let f = self.f_vector();
        let d = f.len() as i64 - 1;
        let degree = *f.last().unwrap_or(&0) as i64;
        let below = if d >= 1 { f[d as usize - 1] as i64 } else { 1 };
        let genus = d * degree - below + 1;
        let hilbert = (0..=k_max as i64)
            .map(|k| {
                if k == 0 {
                    return 1;
                }
                f.iter().enumerate().map(|(i, &fi)| fi as i64 * binom(k - 1, i as i64)).sum()
            })
            .collect();
        Invariants { degree, genus, hilbert }
    }

    /// Numerator `K(t)` of the Hilbert series `K(t)/(1-t)^n`, computed from
    /// the f-vector: `K(t) = (1-t)^{n-D} Σ_i f_{i-1} t^i (1-t)^{D-i}`.
    pub fn hilbert_numerator_from_f(&self) -> Vec<i64> {
        let f = self.f_vector();
        let dd = f.len();
        let mut num = vec![0i64; self.n as usize + 1];
        for i in 0..=dd {
            let fi = if i == 0 { 1 } else { f[i - 1] as i64 };
            // t^i (1-t)^{n-i}
            for (k, c) in binomial_row(self.n as i64 - i as i64).into_iter().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                num[i + k] += fi * sign * c;
            }
        }
        while num.len() > 1 && *num.last().unwrap() == 0 {
            num.pop();
        }
        num
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.name, self.facet_lists())
    }
}

/// JSON form: name, vertex count and facet lists.
impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SimplicialComplex", 3)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("vertices", &self.n)?;
        st.serialize_field("facets", &self.facet_lists())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub degree: i64,
    pub genus: i64,
    pub hilbert: Vec<i64>,
}

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

fn binomial_row(n: i64) -> Vec<i64> {
    (0..=n).map(|k| binom(n, k)).collect()
}

pub fn k_subsets(n: u32, k: u32) -> Vec<Face> {
    let mut out = Vec::new();
    fn rec(n: u32, k: u32, start: u32, cur: Face, out: &mut Vec<Face>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for v in start..n {
            if n - v < k {
                break;
            }
            rec(n, k - 1, v + 1, cur | (1 << v), out);
        }
    }
    rec(n, k, 0, 0, &mut out);
    out
}

/// Reduced Betti numbers over `Q` of the complex whose nonempty faces are
/// `faces`; entry `k+1` holds `β̃_k` for `k ≥ -1`.
fn reduced_betti(faces: &[Face]) -> Vec<usize> {
    let top = faces.iter().map(|&f| size(f)).max().unwrap_or(0) as usize;
    // by_dim[s] lists faces with s vertices; s = 0 is the empty face.
    let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
    by_dim[0].push(0);
    for &f in faces {
        by_dim[size(f) as usize].push(f);
    }
    let index: Vec<HashMap<Face, usize>> = by_dim
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // rank[s] = rank of the boundary map from s-vertex faces to (s-1)-vertex faces.
    let mut rank = vec![0usize; top + 2];
    for s in 1..=top {
        let mut e = SparseEchelon::<Rational>::new();
        for &f in &by_dim[s] {
            let row: Vec<(usize, Rational)> = face_vertices(f)
                .into_iter()
                .enumerate()
                .map(|(pos, v)| (index[s - 1][&(f & !(1 << v))], int(if pos % 2 == 0 { 1 } else { -1 })))
                .collect();
            e.insert(row);
        }
        rank[s] = e.rank();
    }
    (0..=top).map(|s| by_dim[s].len() - rank[s] - rank[s + 1]).collect()
}

// ---------------------------------------------------------------------------
// Betti tables

/// Graded Betti numbers `β_{i,j}` (homological degree `i`, internal degree
/// `j`); only nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    entries: BTreeMap<(u32, u32), u64>,
}

impl BettiTable {
    pub fn add(&mut self, i: u32, j: u32, b: u64) {
        if b > 0 {
            *self.entries.entry((i, j)).or_default() += b;
        }
    }

    pub fn get(&self, i: u32, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// Total Betti numbers `β_i = Σ_j β_{i,j}`.
    pub fn totals(&self) -> Vec<u64> {
        let top = self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0);
        (0..=top).map(|i| self.entries().filter(|&(a, _, _)| a == i).map(|(_, _, b)| b).sum()).collect()
    }

    /// `Σ_{i,j} (-1)^i β_{i,j} t^j` as a coefficient vector.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut v = vec![0i64; top as usize + 1];
        for (i, j, b) in self.entries() {
            v[j as usize] += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    }

    /// CSV with header `i,j,beta`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,beta\n");
        for (i, j, b) in self.entries() {
            s.push_str(&format!("{i},{j},{b}\n"));
        }
        s
    }
}

/// Betti table of the coordinate ring of an elliptic normal curve of degree
/// `n+1` in `P^n`: `β_{i,i+1} = i·C(n,i+1) - C(n-1,i-1)` for
/// `1 ≤ i ≤ n-2`, and `β_{n-1,n+1} = 1`.
pub fn curve_betti_formula(n: u32) -> BettiTable {
    let n = n as i64;
    let mut t = BettiTable::default();
    t.add(0, 0, 1);
    for i in 1..=n - 2 {
        t.add(i as u32, i as u32 + 1, (i * binom(n, i + 1) - binom(n - 1, i - 1)) as u64);
    }
    t.add(n as u32 - 1, n as u32 + 1, 1);
    t
}

/// Betti table of the secant variety of a general elliptic normal curve of
/// degree `n+1` in `P^n`:
/// `β_{i,i+2} = C(n-1,i+2)C(i+1,2) + C(n-1,i)C(n-2-i,2) - C(n-3,i)C(n-2,2)`
/// for `1 ≤ i ≤ n-4`, and `β_{n-3,n+1} = 1`.
pub fn secant_betti_formula(n: u32) -> BettiTable {
    let n = n as i64;
    let mut t = BettiTable::default();
    t.add(0, 0, 1);
    for i in 1..=n - 4 {
        let b = binom(n - 1, i + 2) * binom(i + 1, 2) + binom(n - 1, i) * binom(n - 2 - i, 2)
            - binom(n - 3, i) * binom(n - 2, 2);
        t.add(i as u32, i as u32 + 2, b as u64);
    }
    t.add(n as u32 - 3, n as u32 + 1, 1);
    t
}

// ---------------------------------------------------------------------------
// Named complexes

/// The `n`-gon: facets `{i, i+1}`.
pub fn gamma(n: u32) -> Result<SimplicialComplex> {
    if n < 3 {
        return param("gamma needs n >= 3");
    }
    SimplicialComplex::from_facets(n, (0..n).map(|i| face_from([i, (i + 1) % n])), format!("gamma({n})"))
}

/// A `Z/n`-invariant triangulated torus with `n` vertices inside the
/// boundary of the cyclic 4-polytope. For `n ≥ 9` the facets are
/// `{i, i+1, i+4}` and `{i, i+3, i+4}`; for `n ∈ {7, 8}` they are
/// `{i, i+1, i+3}` and `{i, i+2, i+3}`.
pub fn delta(n: u32) -> Result<SimplicialComplex> {
    if n < 7 {
        return param("delta needs n >= 7");
    }
    let (a, b) = if n >= 9 { ([0, 1, 4], [0, 3, 4]) } else { ([0, 1, 3], [0, 2, 3]) };
    let facets = (0..n).flat_map(|i| [a, b].map(|t| face_from(t.iter().map(|&k| (i + k) % n))));
    SimplicialComplex::from_facets(n, facets, format!("delta({n})"))
}

/// Boundary of the cyclic polytope `C(n, d)`: the `d`-subsets satisfying
/// Gale's evenness condition for the linear order `0 < 1 < … < n-1`.
pub fn cyclic_boundary(n: u32, d: u32) -> Result<SimplicialComplex> {
    if d < 2 || n < d + 1 || n > 64 {
        return param(format!("cyclic_boundary needs 2 <= d < n <= 64, got n={n}, d={d}"));
    }
    let facets = k_subsets(n, d).into_iter().filter(|&w| gale_even(w, n));
    SimplicialComplex::from_facets(n, facets, format!("cyclic_boundary({n},{d})"))
}

fn gale_even(w: Face, n: u32) -> bool {
    let outside: Vec<u32> = (0..n).filter(|&v| w & (1 << v) == 0).collect();
    outside.windows(2).all(|p| {
        let between = (w >> (p[0] + 1)) & ((1u64 << (p[1] - p[0] - 1)) - 1);
        between.count_ones() % 2 == 0
    })
}

/// 1-skeleton of [`delta`] without the edges `{i, i+4}`.
pub fn w_complex(n: u32) -> Result<SimplicialComplex> {
    let d = delta(n)?;
    let edges = d
        .faces_of_dim(1)
        .into_iter()
        .filter(|&e| {
            let v = face_vertices(e);
            crate::polyring::distance(v[0] as i64, v[1] as i64, n) != 4
        })
        .collect::<Vec<_>>();
    let mut facets = edges.clone();
    // Keep isolated vertices, if any, as 0-faces.
    let covered = edges.iter().fold(0, |m, &e| m | e);
    facets.extend((0..n).filter(|&v| covered & (1 << v) == 0).map(|v| 1u64 << v));
    SimplicialComplex::from_facets(n, facets, format!("w_complex({n})"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_7_4() {
        let c = cyclic_boundary(7, 4).unwrap();
        assert_eq!(c.f_vector(), vec![7, 21, 28, 14]);
        assert_eq!(c.rational_homology(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn delta_8_is_a_torus() {
        let d = delta(8).unwrap();
        assert_eq!(d.f_vector(), vec![8, 24, 16]);
        assert!(d.is_closed_surface());
        assert_eq!(d.rational_homology(), vec![0, 2, 1]);
    }

    #[test]
    fn gamma_sr_and_betti() {
        let g = gamma(5).unwrap();
        assert_eq!(g.minimal_nonfaces().len(), 5);
        let b = g.hochster_betti().unwrap();
        assert_eq!((b.get(1, 2), b.get(2, 3), b.get(3, 5)), (5, 5, 1));
        assert_eq!(b, curve_betti_formula(4));
    }

    #[test]
    fn gamma6_betti_totals() {
        let b = gamma(6).unwrap().hochster_betti().unwrap();
        assert_eq!(b.totals(), vec![1, 9, 16, 9, 1]);
    }

    #[test]
    fn cyclic_7_4_betti() {
        let b = cyclic_boundary(7, 4).unwrap().hochster_betti().unwrap();
        assert_eq!((b.get(1, 3), b.get(2, 4), b.get(3, 7)), (7, 7, 1));
    }

    #[test]
    fn hochster_size_guard() {
        assert!(matches!(gamma(15).unwrap().hochster_betti(), Err(Error::Size(_))));
    }

    #[test]
    fn invariants_of_delta() {
        let inv = delta(11).unwrap().combinatorial_invariants(5);
        assert_eq!(inv.degree, 22);
        assert_eq!(inv.genus, 12);
        assert_eq!(inv.hilbert, vec![1, 11, 44, 99, 176, 275]);
    }

    #[test]
    fn closed_surface_rejects_a_disk() {
        let disk = SimplicialComplex::from_facets(4, [face_from([0, 1, 2]), face_from([0, 2, 3])], "disk").unwrap();
        assert!(!disk.is_closed_surface());
    }
}
