//! Cayley graphs, distances, exact integer spectra and the representation
//! theoretic spectral oracles.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::CyclotomicInt;
use crate::dicyclic::{ConnectionSet, DicyclicGroup, WordLengths};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::reps::{CycMatrix, Irrep, IrrepInventory, OneDimRep, TwoDimRep};

/// Dense square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("matrix must be square".into()));
        }
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Gershgorin bound on the spectral radius.
    pub fn max_abs_row_sum(&self) -> u64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.unsigned_abs()).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let line: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Builds a graph from a 0/1 matrix; must be symmetric with zero diagonal.
    pub fn from_adjacency(m: &IntMatrix) -> Result<Self> {
        let n = m.dim();
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                match m.get(i, j) {
                    0 => {}
                    1 if i != j => g.adj[i].insert(j),
                    v => {
                        return Err(Error::Precondition(format!(
                            "adjacency entry ({i},{j}) = {v}"
                        )))
                    }
                }
            }
        }
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].ones()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n);
        for u in 0..n {
            for v in self.neighbors(u) {
                m.set(u, v, 1);
            }
        }
        m
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// `u v` per line with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.vertex_count() {
            for v in self.neighbors(u).filter(|&v| v > u) {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        out
    }
}

/// `Cay(Dic(A, y), S)` with vertices in dense index order.
pub fn cayley_graph(group: &DicyclicGroup, s: &ConnectionSet) -> Result<Graph> {
    s.require_valid()?;
    let members = group.members(s);
    let mut g = Graph::empty(group.order());
    for u in group.elements() {
        let ui = group.index(u);
        for &m in &members {
            g.adj[ui].insert(group.index(group.mul(u, m)));
        }
    }
    Ok(g)
}

/// All-pairs BFS distances.
pub fn distance_matrix(graph: &Graph) -> Result<IntMatrix> {
    let n = graph.vertex_count();
    let mut m = IntMatrix::zeros(n);
    for u in 0..n {
        for (v, d) in graph.bfs(u).into_iter().enumerate() {
            m.set(u, v, d.ok_or(Error::Disconnected)? as i64);
        }
    }
    Ok(m)
}

pub fn diameter(graph: &Graph) -> Result<u32> {
    let d = distance_matrix(graph)?;
    Ok(d.data.iter().copied().max().unwrap_or(0) as u32)
}

/// `Γ^D`: vertices at distance in `D` become adjacent.
pub fn distance_power(graph: &Graph, depths: &[u32]) -> Result<Graph> {
    if depths.is_empty() {
        return Err(Error::Precondition("distance set D must be non-empty".into()));
    }
    if depths.contains(&0) {
        return Err(Error::Precondition("distance set D must contain positive integers".into()));
    }
    let dist = distance_matrix(graph)?;
    let n = graph.vertex_count();
    let mut out = Graph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if depths.contains(&(dist.get(u, v) as u32)) {
                out.adj[u].insert(v);
            }
        }
    }
    Ok(out)
}

// ---- modular arithmetic for the multimodular characteristic polynomial ----

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

const PRIME_CACHE: usize = 64;

fn primes_below_2_62() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| next_primes_below(1u64 << 62, PRIME_CACHE))
}

fn next_primes_below(mut start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        start -= 1;
        if is_prime_u64(start) {
            out.push(start);
        }
    }
    out
}

fn residue(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Characteristic polynomial modulo `p` via Hessenberg reduction.
fn char_poly_mod(m: &IntMatrix, p: u64) -> Vec<u64> {
    let n = m.dim();
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|i| m.row(i).iter().map(|&v| residue(v, p)).collect())
        .collect();
    for col in 0..n.saturating_sub(2) {
        let piv = col + 1;
        let Some(i) = (piv..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if i != piv {
            h.swap(i, piv);
            for row in h.iter_mut() {
                row.swap(i, piv);
            }
        }
        let inv = inv_mod(h[piv][col], p);
        for j in piv + 1..n {
            let u = mul_mod(h[j][col], inv, p);
            if u == 0 {
                continue;
            }
            // row_j -= u·row_piv
            for k in 0..n {
                let t = mul_mod(u, h[piv][k], p);
                h[j][k] = (h[j][k] + p - t) % p;
            }
            // col_piv += u·col_j
            for row in h.iter_mut() {
                let t = mul_mod(u, row[j], p);
                row[piv] = (row[piv] + t) % p;
            }
        }
    }
    // polys[k] = characteristic polynomial of the leading k×k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let hkk = h[k - 1][k - 1];
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mul_mod(hkk, c, p)) % p;
        }
        let mut t = 1u64;
        for i in (1..k).rev() {
            t = mul_mod(t, h[i][i - 1], p);
            let coef = mul_mod(h[i - 1][k - 1], t, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                next[d] = (next[d] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Exact `det(X·I - M)`, by Chinese remaindering over 62-bit primes.
///
/// Coefficient `c_k` is a sum of `C(n, k)` principal minors each bounded by
/// `R^k` (Hadamard/row-sum), so `|c_k| ≤ (1 + R)^n` with `R` the max row sum.
pub fn char_poly_exact(m: &IntMatrix) -> IntPolynomial {
    let n = m.dim();
    if n == 0 {
        return IntPolynomial::one();
    }
    let bound = BigInt::from(1 + m.max_abs_row_sum()).pow(n as u32);
    let needed_bits = bound.bits() + 2;
    let mut primes: Vec<u64> = primes_below_2_62().to_vec();
    let per_prime = 61;
    let count = (needed_bits / per_prime + 1) as usize;
    if count > primes.len() {
        let extra = next_primes_below(*primes.last().unwrap(), count - primes.len());
        primes.extend(extra);
    }

    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    for &p in &primes[..count] {
        let residues = char_poly_mod(m, p);
        let bp = BigInt::from(p);
        let m_inv = inv_mod((&modulus % &bp).to_u64().unwrap(), p);
        for (a, &r) in acc.iter_mut().zip(&residues) {
            let cur = (&*a % &bp).to_u64().unwrap();
            let t = mul_mod((r + p - cur) % p, m_inv, p);
            *a += &modulus * t;
        }
        modulus *= bp;
    }
    let half = &modulus >> 1;
    for a in acc.iter_mut() {
        if *a > half {
            *a -= &modulus;
        }
    }
    IntPolynomial::new(acc)
}

/// Outcome of the exact integer-spectrum decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub is_integral: bool,
    /// `(eigenvalue, multiplicity)`, descending; present iff integral.
    pub eigenvalues: Option<Vec<(i64, usize)>>,
    /// Residual after removing all integer roots; present iff not integral.
    #[serde(serialize_with = "serialize_poly")]
    pub witness: Option<IntPolynomial>,
}

fn serialize_poly<S: serde::Serializer>(
    p: &Option<IntPolynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

impl SpectrumReport {
    /// Eigenvalues with multiplicity, descending.
    pub fn flat_eigenvalues(&self) -> Vec<i64> {
        self.eigenvalues
            .iter()
            .flatten()
            .flat_map(|&(v, k)| std::iter::repeat(v).take(k))
            .collect()
    }
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Decides whether every eigenvalue of a symmetric integer matrix is an integer.
pub fn integer_spectrum(m: &IntMatrix) -> Result<SpectrumReport> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut poly = char_poly_exact(m);
    let bound = m.max_abs_row_sum() as i64;

    // Cheap modular screen: a true root must vanish modulo p.
    let p = primes_below_2_62()[0];
    let bp = BigInt::from(p);
    let reduced: Vec<u64> = poly
        .coeffs()
        .iter()
        .map(|c| {
            let r = c % &bp;
            (if r.is_negative() { r + &bp } else { r }).to_u64().unwrap()
        })
        .collect();

    let mut eigenvalues = Vec::new();
    for k in (-bound..=bound).rev() {
        if poly.degree() == Some(0) {
            break;
        }
        if eval_mod(&reduced, residue(k, p), p) != 0 {
            continue;
        }
        let root = BigInt::from(k);
        let mut mult = 0;
        loop {
            let (q, r) = poly.deflate(&root);
            if !r.is_zero() {
                break;
            }
            poly = q;
            mult += 1;
        }
        if mult > 0 {
            eigenvalues.push((k, mult));
        }
    }
    Ok(if poly.is_one() {
        SpectrumReport {
            is_integral: true,
            eigenvalues: Some(eigenvalues),
            witness: None,
        }
    } else {
        SpectrumReport {
            is_integral: false,
            eigenvalues: None,
            witness: Some(poly),
        }
    })
}

/// `Σ_{s ∈ S} ρ(s)` for one irreducible representation.
pub fn connection_sum(group: &DicyclicGroup, s: &ConnectionSet, rep: &Irrep) -> CycMatrix {
    let conductor = match rep {
        Irrep::OneDim(r) => r.x_image().conductor(),
        Irrep::TwoDim(r) => r.x_matrix().get(0, 0).conductor(),
    };
    let mut acc = CycMatrix::zero(rep.dim(), conductor);
    for g in group.members(s) {
        acc.add_assign(&rep.matrix(group, g));
    }
    acc
}

/// Babai: the adjacency spectrum is the union of the spectra of
/// `Σ_s ρ(s)` over the irreducible `ρ`. True iff all are integers.
pub fn babai_oracle(group: &DicyclicGroup, s: &ConnectionSet, inv: &IrrepInventory) -> Result<bool> {
    s.require_valid()?;
    Ok(inv
        .irreps()
        .iter()
        .all(|rep| connection_sum(group, s, rep).has_integer_eigenvalues()))
}

/// `Φ_S(ρ)` for a one-dimensional `ρ`: `Σ_g ℓ_S(g)·ρ(g)`.
fn phi_one_dim(group: &DicyclicGroup, lengths: &WordLengths, rep: &OneDimRep) -> CycMatrix {
    let m = rep.x_image().conductor();
    let mut counts = vec![0i64; m as usize];
    for g in group.elements() {
        counts[rep.exponent_at(g) as usize] += lengths.get(group.index(g)) as i64;
    }
    CycMatrix::from_rows(vec![vec![CyclotomicInt::from_exponent_counts(m, &counts)]])
}

/// Closed form `[[π(A,ℓ), π(y)·conj(π(A,ℓ(x·)))], [π(A,ℓ(x·)), π(A,ℓ)]]`.
fn phi_two_dim(lengths: &WordLengths, rep: &TwoDimRep) -> CycMatrix {
    let m = rep.x_matrix().get(0, 0).conductor();
    let on_a = rep.pi.weighted_sum(&lengths.on_a(), m);
    let on_xa = rep.pi.weighted_sum(&lengths.on_xa(), m);
    let top_right = on_xa.conj().scale(&BigInt::from(rep.y_sign));
    CycMatrix::from_rows(vec![vec![on_a.clone(), top_right], vec![on_xa, on_a]])
}

/// `Φ_S(ρ)` with entries `Σ_g ℓ_S(g)·φ_ij(g)`, using the closed 2×2 form for
/// induced representations.
pub fn phi_matrix(group: &DicyclicGroup, lengths: &WordLengths, rep: &Irrep) -> CycMatrix {
    match rep {
        Irrep::OneDim(r) => phi_one_dim(group, lengths, r),
        Irrep::TwoDim(r) => phi_two_dim(lengths, r),
    }
}

/// `Φ_S(ρ)` by summing `ℓ_S(g)·ρ(g)` over the whole group.
pub fn phi_matrix_direct(group: &DicyclicGroup, lengths: &WordLengths, rep: &Irrep) -> CycMatrix {
    let conductor = match rep {
        Irrep::OneDim(r) => r.x_image().conductor(),
        Irrep::TwoDim(r) => r.x_matrix().get(0, 0).conductor(),
    };
    let mut acc = CycMatrix::zero(rep.dim(), conductor);
    for g in group.elements() {
        let w = lengths.get(group.index(g));
        if w != 0 {
            acc.add_scaled(&rep.matrix(group, g), &BigInt::from(w));
        }
    }
    acc
}

/// Huang-Li: the distance spectrum is the union of the spectra of the
/// `Φ_S(ρ)`. True iff all are integers.
pub fn hl_oracle(group: &DicyclicGroup, s: &ConnectionSet, inv: &IrrepInventory) -> Result<bool> {
    let lengths = group.word_lengths(s)?;
    Ok(inv
        .irreps()
        .iter()
        .all(|rep| phi_matrix(group, &lengths, rep).has_integer_eigenvalues()))
}

/// As [`hl_oracle`], but summing over the group instead of using the closed form.
pub fn hl_oracle_direct(
    group: &DicyclicGroup,
    s: &ConnectionSet,
    inv: &IrrepInventory,
) -> Result<bool> {
    let lengths = group.word_lengths(s)?;
    Ok(inv
        .irreps()
        .iter()
        .all(|rep| phi_matrix_direct(group, &lengths, rep).has_integer_eigenvalues()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> DicyclicGroup {
        DicyclicGroup::parse("Z4", "2").unwrap()
    }

    fn path(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n - 1 {
            m.set(i, i + 1, 1);
            m.set(i + 1, i, 1);
        }
        m
    }

    #[test]
    fn miller_rabin_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn small_char_polys() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(char_poly_exact(&swap), IntPolynomial::from_i64s(&[-1, 0, 1]));
        let mut c4 = path(4);
        c4.set(0, 3, 1);
        c4.set(3, 0, 1);
        assert_eq!(char_poly_exact(&c4), IntPolynomial::from_i64s(&[0, 0, -4, 0, 1]));
        assert_eq!(char_poly_exact(&IntMatrix::zeros(3)), IntPolynomial::monomial(3));
        // non-symmetric with a zero subdiagonal pivot
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, 4, 5], vec![0, 0, 6]]).unwrap();
        assert_eq!(char_poly_exact(&m), IntPolynomial::from_i64s(&[-24, 34, -11, 1]));
    }

    #[test]
    fn large_coefficients_survive_crt() {
        // 30×30 all-30s matrix: char poly x^29 (x - 900)
        let n = 30;
        let m = IntMatrix::from_rows(&vec![vec![30; n]; n]).unwrap();
        let mut expected = vec![0i64; n + 1];
        expected[n] = 1;
        expected[n - 1] = -900;
        assert_eq!(char_poly_exact(&m), IntPolynomial::from_i64s(&expected));
    }

    #[test]
    fn spectra_of_small_graphs() {
        let p3 = integer_spectrum(&path(3)).unwrap();
        assert!(!p3.is_integral);
        assert_eq!(p3.witness.unwrap(), IntPolynomial::from_i64s(&[-2, 0, 1]));

        let id = integer_spectrum(&IntMatrix::identity(5)).unwrap();
        assert!(id.is_integral);
        assert_eq!(id.eigenvalues.unwrap(), vec![(1, 5)]);

        let nonsym = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(integer_spectrum(&nonsym), Err(Error::NotSymmetric));
    }

    #[test]
    fn q8_complete_bipartite() {
        let g = q8();
        let s = g.parse_connection_set("[]", "[0,1,2,3]").unwrap();
        let gr = cayley_graph(&g, &s).unwrap();
        for u in 0..8 {
            for v in 0..8 {
                assert_eq!(gr.adjacent(u, v), (u < 4) != (v < 4));
            }
        }
        let rep = integer_spectrum(&gr.adjacency_matrix()).unwrap();
        assert_eq!(rep.eigenvalues.unwrap(), vec![(4, 1), (0, 6), (-4, 1)]);
        let inv = IrrepInventory::build(&g).unwrap();
        assert!(babai_oracle(&g, &s, &inv).unwrap());
    }

    #[test]
    fn z8_non_integral_example() {
        let g = DicyclicGroup::parse("Z8", "4").unwrap();
        let s = g.parse_connection_set("[]", "[0,1,4,5]").unwrap();
        let inv = IrrepInventory::build(&g).unwrap();
        assert!(!babai_oracle(&g, &s, &inv).unwrap());
        let adj = cayley_graph(&g, &s).unwrap().adjacency_matrix();
        assert!(!integer_spectrum(&adj).unwrap().is_integral);
    }

    #[test]
    fn cayley_graph_basics() {
        let g = q8();
        let s = g.parse_connection_set("[1,3]", "[0,2]").unwrap();
        let gr = cayley_graph(&g, &s).unwrap();
        assert!((0..8).all(|u| gr.degree(u) == 4));
        assert_eq!(diameter(&gr).unwrap(), 2);
        let empty = g.parse_connection_set("[]", "[]").unwrap();
        let e = cayley_graph(&g, &empty).unwrap();
        assert_eq!(e.edge_count(), 0);
        assert_eq!(distance_matrix(&e), Err(Error::Disconnected));
        let bad = g.parse_connection_set("[1]", "[]").unwrap();
        assert!(cayley_graph(&g, &bad).is_err());
    }

    #[test]
    fn distance_powers() {
        let g = q8();
        let s = g.parse_connection_set("[1,3]", "[0,2]").unwrap();
        let gr = cayley_graph(&g, &s).unwrap();
        assert_eq!(distance_power(&gr, &[1]).unwrap(), gr);
        let complete = distance_power(&gr, &[1, 2]).unwrap();
        assert_eq!(complete.edge_count(), 28);
        let sq = distance_power(&gr, &[2]).unwrap();
        let expected = g.parse_connection_set("[2]", "[1,3]").unwrap();
        assert_eq!(sq, cayley_graph(&g, &expected).unwrap());
        assert_eq!(distance_power(&gr, &[5]).unwrap().edge_count(), 0);
        assert!(distance_power(&gr, &[]).is_err());
    }

    #[test]
    fn tiny_distance_matrices() {
        let mut k2 = Graph::empty(2);
        k2.add_edge(0, 1);
        assert_eq!(
            distance_matrix(&k2).unwrap(),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
        );
        let mut k4 = Graph::empty(4);
        for u in 0..4 {
            for v in u + 1..4 {
                k4.add_edge(u, v);
            }
        }
        let d = distance_matrix(&k4).unwrap();
        assert!((0..4).all(|u| (0..4).all(|v| d.get(u, v) == (u != v) as i64)));
        assert_eq!(k4.to_edge_list().lines().count(), 6);
        assert_eq!(Graph::from_adjacency(&k4.adjacency_matrix()).unwrap(), k4);
    }

    #[test]
    fn q8_phi_example() {
        let g = q8();
        let s = g.parse_connection_set("[1,3]", "[0,2]").unwrap();
        let lengths = g.word_lengths(&s).unwrap();
        let inv = IrrepInventory::build(&g).unwrap();
        let rep = Irrep::TwoDim(inv.two_dim[0].clone());
        let phi = phi_matrix(&g, &lengths, &rep);
        let m = phi.get(0, 0).conductor();
        assert_eq!(phi.get(0, 0), &CyclotomicInt::from_int(m, -2));
        assert!(phi.get(1, 0).is_zero());
        assert_eq!(phi, phi_matrix_direct(&g, &lengths, &rep));
        assert!(hl_oracle(&g, &s, &inv).unwrap());
        let trivial = Irrep::OneDim(inv.one_dim[0].clone());
        let total: u32 = lengths.all().iter().sum();
        assert_eq!(
            phi_matrix(&g, &lengths, &trivial).get(0, 0),
            &CyclotomicInt::from_int(m, total)
        );
    }

    #[test]
    fn closed_form_matches_direct_sum() {
        for (spec, y, s1, s2) in [
            ("Z6", "3", "[1,5]", "[0,3]"),
            ("Z8", "4", "[1,7]", "[0,1,4,5]"),
            ("Z2xZ4", "(0,2)", "[(1,0)]", "[(0,0),(1,1),(0,2),(1,3)]"),
        ] {
            let g = DicyclicGroup::parse(spec, y).unwrap();
            let s = g.parse_connection_set(s1, s2).unwrap();
            let lengths = g.word_lengths(&s).unwrap();
            for rep in IrrepInventory::build(&g).unwrap().irreps() {
                assert_eq!(
                    phi_matrix(&g, &lengths, &rep),
                    phi_matrix_direct(&g, &lengths, &rep),
                    "{spec} {}",
                    rep.label()
                );
            }
        }
    }

    #[test]
    fn csv_export() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.to_csv(), "0,1\n1,0\n");
    }
}
