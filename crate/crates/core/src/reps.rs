//! Irreducible complex representations of `Dic(A, y)`.
//!
//! With `|A/A²| = 2ⁿ` there are `2ⁿ⁺¹` one-dimensional representations, two
//! lifts of each character of `A` trivial on `A²` (`x ↦ ±1` when `π(y) = 1`,
//! `x ↦ ±i` when `π(y) = -1`), and `(|A| - 2ⁿ)/2` two-dimensional ones, the
//! representations induced from characters `π` with `A² ⊄ ker π`, one per
//! conjugate pair `{π, π̄}`:
//!
//! ```text
//! R(x) = [[0, π(y)], [1, 0]]      R(a) = diag(π(a), π(-a))
//! ```
//!
//! All values live in ℤ[ζ_M] with `M = lcm(exp A, 4)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::Character;
use crate::cyclotomic::{lcm, CyclotomicInt};
use crate::dicyclic::{DicElement, DicyclicGroup};
use crate::error::{Error, Result};

/// A small dense square matrix over ℤ[ζ_M], row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMatrix {
    dim: usize,
    entries: Vec<CyclotomicInt>,
}

impl CycMatrix {
    pub fn zero(dim: usize, conductor: u64) -> Self {
        Self {
            dim,
            entries: vec![CyclotomicInt::zero(conductor); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<CyclotomicInt>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicInt {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let conductor = self.entries[0].conductor();
        let mut out = Self::zero(n, conductor);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CyclotomicInt::zero(conductor);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }

    /// Adds `k · other`.
    pub fn add_scaled(&mut self, other: &Self, k: &BigInt) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + &b.scale(k);
            }
        }
    }

    pub fn trace(&self) -> CyclotomicInt {
        let conductor = self.entries[0].conductor();
        (0..self.dim).fold(CyclotomicInt::zero(conductor), |acc, i| &acc + self.get(i, i))
    }

    /// Exact test that every eigenvalue is a rational integer (dimension 1 or 2).
    ///
    /// For `2×2` the eigenvalues are the roots of `X² - tX + d`; they are
    /// integers iff `t, d ∈ ℤ` and `t² - 4d` is a perfect square (parity of
    /// `t` and the root then agree automatically).
    pub fn has_integer_eigenvalues(&self) -> bool {
        match self.dim {
            1 => self.entries[0].as_rational_integer().is_some(),
            2 => {
                let t = self.trace();
                let d = &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0));
                match (t.as_rational_integer(), d.as_rational_integer()) {
                    (Some(t), Some(d)) => {
                        let disc = &t * &t - BigInt::from(4) * d;
                        crate::cyclotomic::integer_sqrt_if_square(&disc)
                            .ok()
                            .flatten()
                            .is_some()
                    }
                    _ => false,
                }
            }
            n => unimplemented!("eigenvalue test for dimension {n}"),
        }
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A one-dimensional representation: a character of `A` trivial on `A²`,
/// extended by `x ↦ i^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneDimRep {
    pub base: Character,
    /// `x` is sent to `ζ₄^x_power` (0: 1, 1: i, 2: -1, 3: -i).
    pub x_power: u64,
    conductor: u64,
}

impl OneDimRep {
    pub fn x_image(&self) -> CyclotomicInt {
        CyclotomicInt::root_of_unity(self.conductor, (self.x_power * (self.conductor / 4)) as i64)
    }

    /// Exponent `e` with `ρ(g) = ζ_M^e`.
    pub fn exponent_at(&self, g: DicElement) -> u64 {
        let m = self.conductor;
        let base = self.base.exponent_at(g.a) * (m / self.base.conductor());
        (base + g.eps as u64 * self.x_power * (m / 4)) % m
    }

    pub fn value(&self, g: DicElement) -> CyclotomicInt {
        CyclotomicInt::root_of_unity(self.conductor, self.exponent_at(g) as i64)
    }

    pub fn x_image_label(&self) -> &'static str {
        ["1", "i", "-1", "-i"][self.x_power as usize]
    }
}

/// The two-dimensional representation induced from `π` with `A² ⊄ ker π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoDimRep {
    pub pi: Character,
    /// `π(y) ∈ {1, -1}`.
    pub y_sign: i8,
    conductor: u64,
}

impl TwoDimRep {
    pub fn x_matrix(&self) -> CycMatrix {
        let m = self.conductor;
        CycMatrix::from_rows(vec![
            vec![CyclotomicInt::zero(m), CyclotomicInt::from_int(m, self.y_sign as i64)],
            vec![CyclotomicInt::one(m), CyclotomicInt::zero(m)],
        ])
    }

    pub fn a_matrix(&self, group: &DicyclicGroup, a: usize) -> CycMatrix {
        let m = self.conductor;
        let neg = group.abelian().neg_idx(a);
        CycMatrix::from_rows(vec![
            vec![self.pi.value_in(a, m), CyclotomicInt::zero(m)],
            vec![CyclotomicInt::zero(m), self.pi.value_in(neg, m)],
        ])
    }

    /// `R(x^ε a) = R(x)^ε · R(a)`.
    pub fn matrix(&self, group: &DicyclicGroup, g: DicElement) -> CycMatrix {
        let ra = self.a_matrix(group, g.a);
        if g.eps == 0 {
            ra
        } else {
            self.x_matrix().mul(&ra)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irrep {
    OneDim(OneDimRep),
    TwoDim(TwoDimRep),
}

impl Irrep {
    pub fn dim(&self) -> usize {
        match self {
            Irrep::OneDim(_) => 1,
            Irrep::TwoDim(_) => 2,
        }
    }

    pub fn matrix(&self, group: &DicyclicGroup, g: DicElement) -> CycMatrix {
        match self {
            Irrep::OneDim(r) => CycMatrix::from_rows(vec![vec![r.value(g)]]),
            Irrep::TwoDim(r) => r.matrix(group, g),
        }
    }

    pub fn character_at(&self, group: &DicyclicGroup, g: DicElement) -> CyclotomicInt {
        match self {
            Irrep::OneDim(r) => r.value(g),
            Irrep::TwoDim(r) => {
                if g.eps == 1 {
                    CyclotomicInt::zero(r.conductor)
                } else {
                    let neg = group.abelian().neg_idx(g.a);
                    &r.pi.value_in(g.a, r.conductor) + &r.pi.value_in(neg, r.conductor)
                }
            }
        }
    }

    /// The character as a class function over dense indices.
    pub fn character(&self, group: &DicyclicGroup) -> Vec<CyclotomicInt> {
        group.elements().map(|g| self.character_at(group, g)).collect()
    }

    pub fn label(&self) -> String {
        match self {
            Irrep::OneDim(r) => format!("1d pi={:?} x->{}", r.base.index(), r.x_image_label()),
            Irrep::TwoDim(r) => format!("2d pi={:?}", r.pi.index()),
        }
    }
}

/// The conductor shared by all representation values of `group`.
pub fn rep_conductor(group: &DicyclicGroup) -> u64 {
    lcm(group.abelian().exponent(), 4)
}

/// The `2ⁿ⁺¹` one-dimensional representations, in character order with the
/// lift `x ↦ 1` (or `i`) before `x ↦ -1` (or `-i`).
pub fn one_dim_reps(group: &DicyclicGroup) -> Vec<OneDimRep> {
    let a = group.abelian();
    let squares = a.squares_subgroup();
    let conductor = rep_conductor(group);
    a.characters()
        .into_iter()
        .filter(|c| c.is_trivial_on(&squares))
        .flat_map(|c| {
            let powers = match c.sign_at(group.y()) {
                Some(1) => [0, 2],
                Some(-1) => [1, 3],
                _ => unreachable!("characters trivial on A² take values ±1 on involutions"),
            };
            powers.map(|x_power| OneDimRep {
                base: c.clone(),
                x_power,
                conductor,
            })
        })
        .collect()
}

/// The representation induced from `pi`; requires `A² ⊄ ker π`.
pub fn induced_rep(group: &DicyclicGroup, pi: &Character) -> Result<TwoDimRep> {
    let a = group.abelian();
    if pi.is_trivial_on(&a.squares_subgroup()) {
        return Err(Error::Precondition(format!(
            "character {:?} is trivial on A²; induced representation is reducible",
            pi.index()
        )));
    }
    let y_sign = pi
        .sign_at(group.y())
        .ok_or_else(|| Error::Internal("π(y) is not ±1".into()))?;
    Ok(TwoDimRep {
        pi: pi.clone(),
        y_sign,
        conductor: rep_conductor(group),
    })
}

/// `(χ₁ | χ₂) = (1/|G|) Σ_g χ₁(g)·conj(χ₂(g))`, exactly.
pub fn character_inner_product(
    group: &DicyclicGroup,
    chi1: &[CyclotomicInt],
    chi2: &[CyclotomicInt],
) -> Result<BigRational> {
    if chi1.len() != group.order() || chi2.len() != group.order() {
        return Err(Error::GroupMismatch("class function length".into()));
    }
    let conductor = chi1[0].conductor();
    let mut acc = CyclotomicInt::zero(conductor);
    for (u, v) in chi1.iter().zip(chi2) {
        acc = acc.try_add(&u.try_mul(&v.conj())?)?;
    }
    let total = acc
        .as_rational_integer()
        .ok_or_else(|| Error::NotRational(acc.to_string()))?;
    Ok(BigRational::new(total, BigInt::from(group.order())))
}

/// One representative of every equivalence class of irreducible
/// representations.
#[derive(Debug, Clone)]
pub struct IrrepInventory {
    pub conductor: u64,
    pub one_dim: Vec<OneDimRep>,
    pub two_dim: Vec<TwoDimRep>,
}

impl IrrepInventory {
    pub fn build(group: &DicyclicGroup) -> Result<Self> {
        let a = group.abelian();
        let squares = a.squares_subgroup();
        let one_dim = one_dim_reps(group);
        let two_dim = a
            .characters()
            .into_iter()
            .filter(|c| !c.is_trivial_on(&squares))
            .filter(|c| c.index() < a.conjugate_index(c.index()).as_slice())
            .map(|c| induced_rep(group, &c))
            .collect::<Result<Vec<_>>>()?;
        let inv = Self {
            conductor: rep_conductor(group),
            one_dim,
            two_dim,
        };
        if inv.sum_of_squared_dims() != group.order() {
            return Err(Error::Internal(format!(
                "Σ dim² = {} but |G| = {}",
                inv.sum_of_squared_dims(),
                group.order()
            )));
        }
        Ok(inv)
    }

    pub fn sum_of_squared_dims(&self) -> usize {
        self.one_dim.len() + 4 * self.two_dim.len()
    }

    pub fn irreps(&self) -> Vec<Irrep> {
        self.one_dim
            .iter()
            .cloned()
            .map(Irrep::OneDim)
            .chain(self.two_dim.iter().cloned().map(Irrep::TwoDim))
            .collect()
    }
}

/// Checks `(χ | χ) = 1` for every inventory character and that no two
/// inventory characters coincide.
pub fn verify_inventory(group: &DicyclicGroup, inv: &IrrepInventory) -> Result<()> {
    let chars: Vec<Vec<CyclotomicInt>> = inv.irreps().iter().map(|r| r.character(group)).collect();
    let one = BigRational::from_integer(BigInt::from(1));
    for (i, chi) in chars.iter().enumerate() {
        let norm = character_inner_product(group, chi, chi)?;
        if norm != one {
            return Err(Error::Internal(format!("irrep {i} has (χ|χ) = {norm}")));
        }
        for (j, other) in chars.iter().enumerate().skip(i + 1) {
            if chi == other {
                return Err(Error::Internal(format!("irreps {i} and {j} share a character")));
            }
            let ip = character_inner_product(group, chi, other)?;
            if !ip.is_zero() {
                return Err(Error::Internal(format!("irreps {i} and {j}: (χ|χ') = {ip}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: &str, y: &str) -> DicyclicGroup {
        DicyclicGroup::parse(spec, y).unwrap()
    }

    #[test]
    fn one_dim_counts() {
        assert_eq!(one_dim_reps(&group("Z4", "2")).len(), 4);
        assert_eq!(one_dim_reps(&group("Z6", "3")).len(), 4);
        let trivial = &one_dim_reps(&group("Z4", "2"))[0];
        assert_eq!(trivial.x_power, 0);
        let g = group("Z4", "2");
        assert!(g.elements().all(|e| trivial.value(e) == CyclotomicInt::one(4)));
    }

    #[test]
    fn x_image_squares_to_pi_y() {
        for (spec, y) in [("Z4", "2"), ("Z8", "4"), ("Z2xZ4", "(1,0)"), ("Z2xZ6", "(0,3)")] {
            let g = group(spec, y);
            for r in one_dim_reps(&g) {
                let sq = &r.x_image() * &r.x_image();
                let pi_y = r.base.value_in(g.y(), rep_conductor(&g));
                assert_eq!(sq, pi_y);
            }
        }
    }

    #[test]
    fn quaternion_two_dim_irrep() {
        let g = group("Z4", "2");
        let pi = g.abelian().character(&[1]).unwrap();
        let r = induced_rep(&g, &pi).unwrap();
        let m = 4;
        let z = |e| CyclotomicInt::root_of_unity(m, e);
        assert_eq!(
            r.x_matrix(),
            CycMatrix::from_rows(vec![
                vec![CyclotomicInt::zero(m), CyclotomicInt::from_int(m, -1)],
                vec![CyclotomicInt::one(m), CyclotomicInt::zero(m)],
            ])
        );
        assert_eq!(
            r.a_matrix(&g, 1),
            CycMatrix::from_rows(vec![
                vec![z(1), CyclotomicInt::zero(m)],
                vec![CyclotomicInt::zero(m), z(3)],
            ])
        );
        let rep = Irrep::TwoDim(r);
        for a in 0..4 {
            assert!(rep.character_at(&g, DicElement::new(1, a)).is_zero());
            let expected = &pi.value(a) + &pi.value(g.abelian().neg_idx(a));
            assert_eq!(rep.character_at(&g, DicElement::new(0, a)), expected);
            assert_eq!(rep.matrix(&g, DicElement::new(1, a)).trace(), CyclotomicInt::zero(4));
        }
        let trivial = g.abelian().character(&[0]).unwrap();
        assert!(induced_rep(&g, &trivial).is_err());
    }

    #[test]
    fn inner_products() {
        let g = group("Z4", "2");
        let inv = IrrepInventory::build(&g).unwrap();
        let irreps = inv.irreps();
        let triv = irreps[0].character(&g);
        let two = irreps.last().unwrap().character(&g);
        let one = BigRational::from_integer(BigInt::from(1));
        assert_eq!(character_inner_product(&g, &two, &two).unwrap(), one);
        assert_eq!(character_inner_product(&g, &triv, &triv).unwrap(), one);
        assert!(character_inner_product(&g, &two, &triv).unwrap().is_zero());
    }

    #[test]
    fn inventory_counts() {
        let cases = [
            ("Z4", "2", 4, 1),
            ("Z6", "3", 4, 2),
            ("Z2xZ6", "(0,3)", 8, 4),
        ];
        for (spec, y, one, two) in cases {
            let g = group(spec, y);
            let inv = IrrepInventory::build(&g).unwrap();
            assert_eq!(inv.one_dim.len(), one, "{spec}");
            assert_eq!(inv.two_dim.len(), two, "{spec}");
            assert_eq!(inv.sum_of_squared_dims(), g.order());
            verify_inventory(&g, &inv).unwrap();
        }
    }

    #[test]
    fn conjugate_induced_reps_share_characters() {
        let g = group("Z8", "4");
        let a = g.abelian();
        for pi in a.characters() {
            if pi.is_trivial_on(&a.squares_subgroup()) {
                continue;
            }
            let bar = a.character(&a.conjugate_index(pi.index())).unwrap();
            let r1 = Irrep::TwoDim(induced_rep(&g, &pi).unwrap());
            let r2 = Irrep::TwoDim(induced_rep(&g, &bar).unwrap());
            assert_eq!(r1.character(&g), r2.character(&g));
        }
    }

    #[test]
    fn representations_are_homomorphisms() {
        for (spec, y) in [("Z4", "2"), ("Z6", "3"), ("Z8", "4"), ("Z2xZ4", "(1,2)")] {
            let g = group(spec, y);
            let inv = IrrepInventory::build(&g).unwrap();
            for rep in inv.irreps() {
                for p in g.elements() {
                    for q in g.elements() {
                        let lhs = rep.matrix(&g, g.mul(p, q));
                        let rhs = rep.matrix(&g, p).mul(&rep.matrix(&g, q));
                        assert_eq!(lhs, rhs, "{} on {spec}", rep.label());
                    }
                }
            }
        }
    }

    #[test]
    fn integer_eigenvalue_test_for_2x2() {
        let m = 4;
        let int = |v: i64| CyclotomicInt::from_int(m, v);
        // [[0,1],[1,0]] -> ±1
        let a = CycMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert!(a.has_integer_eigenvalues());
        // [[0,2],[1,0]] -> ±√2
        let b = CycMatrix::from_rows(vec![vec![int(0), int(2)], vec![int(1), int(0)]]);
        assert!(!b.has_integer_eigenvalues());
        // [[0,-1],[1,0]] -> ±i
        let c = CycMatrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        assert!(!c.has_integer_eigenvalues());
        // [[1, 1-i],[1+i, 1]] -> 1 ± √2
        let z = CyclotomicInt::root_of_unity(m, 1);
        let d = CycMatrix::from_rows(vec![
            vec![int(1), &int(1) - &z],
            vec![&int(1) + &z, int(1)],
        ]);
        assert!(!d.has_integer_eigenvalues());
    }
}
