//! Finite abelian groups `Z_{n_1} × … × Z_{n_k}`, written additively.
//!
//! Elements are residue tuples. Every element also has a dense index: the
//! position of its tuple in lexicographic order (first factor most
//! significant). Subsets are bitsets over those indices, so set algebra and
//! element enumeration follow one fixed order throughout the crate.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicInt;
use crate::error::{parse_err, Error, Result};

/// A group element as a tuple of residues, one per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AElement {
    pub residues: Vec<u64>,
}

impl AElement {
    pub fn new(residues: Vec<u64>) -> Self {
        Self { residues }
    }
}

impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residues.as_slice() {
            [r] => write!(f, "{r}"),
            rs => {
                write!(f, "(")?;
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A subset of a finite group, stored as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Self { bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

/// A natural-number valued function on every element of a group (a
/// multi-set supported on the whole group).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiSetNat {
    values: Vec<u64>,
}

impl MultiSetNat {
    /// One value per element index.
    pub fn new(values: Vec<u64>) -> Self {
        Self { values }
    }

    pub fn zero(universe: usize) -> Self {
        Self {
            values: vec![0; universe],
        }
    }

    pub fn get(&self, i: usize) -> u64 {
        self.values[i]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn indicator(set: &ElementSet) -> Self {
        Self {
            values: (0..set.universe()).map(|i| set.contains(i) as u64).collect(),
        }
    }
}

/// A linear character of an abelian group: `a ↦ ζ_m^(Σ j_i·(m/n_i)·a_i)`,
/// where `m` is the group exponent and `(j_1, …, j_k)` is the index tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    index: Vec<u64>,
    conductor: u64,
    // exponent of ζ_m at each element index
    exps: Vec<u64>,
}

impl Character {
    pub fn index(&self) -> &[u64] {
        &self.index
    }

    /// The exponent `m` of the group; values are `m`-th roots of unity.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `e` with `π(a) = ζ_m^e`, for the element at index `a`.
    pub fn exponent_at(&self, a: usize) -> u64 {
        self.exps[a]
    }

    pub fn value(&self, a: usize) -> CyclotomicInt {
        CyclotomicInt::root_of_unity(self.conductor, self.exps[a] as i64)
    }

    /// `π(a)` expressed in ℤ[ζ_n] for a multiple `n` of the conductor.
    pub fn value_in(&self, a: usize, n: u64) -> CyclotomicInt {
        debug_assert_eq!(n % self.conductor, 0);
        CyclotomicInt::root_of_unity(n, (self.exps[a] * (n / self.conductor)) as i64)
    }

    /// True when `π(a) = 1` for every `a` in `set`.
    pub fn is_trivial_on(&self, set: &ElementSet) -> bool {
        set.iter().all(|a| self.exps[a] == 0)
    }

    /// `π(a) ∈ {±1}` sign for an element with `2a = 0`, or `None` otherwise.
    pub fn sign_at(&self, a: usize) -> Option<i8> {
        let e = self.exps[a];
        if e == 0 {
            Some(1)
        } else if 2 * e == self.conductor {
            Some(-1)
        } else {
            None
        }
    }

    /// `π(A, f) = Σ_a f(a)·π(a)`, computed in ℤ[ζ_n].
    pub fn weighted_sum(&self, f: &MultiSetNat, n: u64) -> CyclotomicInt {
        debug_assert_eq!(n % self.conductor, 0);
        let step = n / self.conductor;
        let mut counts = vec![0i64; n as usize];
        for (a, &w) in f.values().iter().enumerate() {
            if w != 0 {
                counts[(self.exps[a] * step) as usize] += w as i64;
            }
        }
        CyclotomicInt::from_exponent_counts(n, &counts)
    }

    /// `π(S) = Σ_{s ∈ S} π(s)`, computed in ℤ[ζ_n]; `π(∅) = 0`.
    pub fn set_sum(&self, set: &ElementSet, n: u64) -> CyclotomicInt {
        debug_assert_eq!(n % self.conductor, 0);
        let step = n / self.conductor;
        let mut counts = vec![0i64; n as usize];
        for a in set.iter() {
            counts[(self.exps[a] * step) as usize] += 1;
        }
        CyclotomicInt::from_exponent_counts(n, &counts)
    }
}

/// A finite abelian group given by its ordered list of cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: usize,
    exponent: u64,
    strides: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(parse_err("", "at least one cyclic factor is required"));
        }
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::FactorTooSmall(bad));
        }
        let order = factors.iter().product::<u64>() as usize;
        let exponent = factors.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        Ok(Self {
            factors,
            order,
            exponent,
            strides,
        })
    }

    /// Parses `Z4`, `Z2xZ6`, … (factors in the given order).
    pub fn parse(spec: &str) -> Result<Self> {
        let trimmed = spec.trim();
        if trimmed.is_empty() {
            return Err(parse_err(spec, "empty group spec"));
        }
        let factors = trimmed
            .split(['x', 'X'])
            .map(|part| {
                let digits = part
                    .trim()
                    .strip_prefix('Z')
                    .ok_or_else(|| parse_err(spec, "each factor must look like Z<n>"))?;
                digits
                    .parse::<u64>()
                    .map_err(|_| parse_err(spec, format!("bad factor `{part}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent as usize == self.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn element(&self, idx: usize) -> AElement {
        AElement::new(
            self.factors
                .iter()
                .zip(&self.strides)
                .map(|(&n, &s)| ((idx / s) as u64) % n)
                .collect(),
        )
    }

    pub fn elements(&self) -> impl Iterator<Item = AElement> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    pub fn index_of(&self, a: &AElement) -> Result<usize> {
        if a.residues.len() != self.factors.len() {
            return Err(Error::GroupMismatch(format!(
                "{a} has {} components, group {self} has {}",
                a.residues.len(),
                self.factors.len()
            )));
        }
        a.residues
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .try_fold(0usize, |acc, ((&r, &n), &s)| {
                if r < n {
                    Ok(acc + r as usize * s)
                } else {
                    Err(Error::GroupMismatch(format!("{a} is not reduced for {self}")))
                }
            })
    }

    #[inline]
    fn combine(&self, a: usize, b: usize, sign: i64) -> usize {
        let mut out = 0usize;
        for (&n, &s) in self.factors.iter().zip(&self.strides) {
            let n = n as i64;
            let ra = ((a / s) as i64) % n;
            let rb = ((b / s) as i64) % n;
            out += ((ra + sign * rb).rem_euclid(n)) as usize * s;
        }
        out
    }

    /// `a + b` on element indices.
    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, 1)
    }

    /// `a - b` on element indices.
    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, -1)
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.combine(0, a, -1)
    }

    /// `k·a` on element indices.
    pub fn scale_idx(&self, a: usize, k: u64) -> usize {
        let mut out = 0usize;
        for (&n, &s) in self.factors.iter().zip(&self.strides) {
            let r = ((a / s) as u64) % n;
            out += ((r * (k % n)) % n) as usize * s;
        }
        out
    }

    /// Least `t ≥ 1` with `t·a = 0`.
    pub fn order_of_idx(&self, a: usize) -> u64 {
        self.factors
            .iter()
            .zip(&self.strides)
            .fold(1u64, |acc, (&n, &s)| {
                let r = ((a / s) as u64) % n;
                acc.lcm(&(n / r.gcd(&n)))
            })
    }

    pub fn add(&self, a: &AElement, b: &AElement) -> Result<AElement> {
        Ok(self.element(self.add_idx(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn neg(&self, a: &AElement) -> Result<AElement> {
        Ok(self.element(self.neg_idx(self.index_of(a)?)))
    }

    pub fn element_order(&self, a: &AElement) -> Result<u64> {
        Ok(self.order_of_idx(self.index_of(a)?))
    }

    /// Indices of all elements of order exactly 2.
    pub fn involutions(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| self.order_of_idx(a) == 2)
            .collect()
    }

    /// `A² = {2a : a ∈ A}`.
    pub fn squares_subgroup(&self) -> ElementSet {
        ElementSet::from_indices(self.order, (0..self.order).map(|a| self.add_idx(a, a)))
    }

    /// `n` with `|A/A²| = 2^n`.
    pub fn two_rank(&self) -> u32 {
        let quotient = self.order / self.squares_subgroup().len();
        debug_assert!(quotient.is_power_of_two());
        quotient.trailing_zeros()
    }

    /// The atom `[g] = {x : ⟨x⟩ = ⟨g⟩}`, i.e. the generators of `⟨g⟩`.
    pub fn atom_of(&self, g: usize) -> ElementSet {
        let ord = self.order_of_idx(g);
        ElementSet::from_indices(
            self.order,
            (1..=ord)
                .filter(|k| k.gcd(&ord) == 1)
                .map(|k| self.scale_idx(g, k)),
        )
    }

    /// For each element index, the least element index of its atom.
    pub fn atom_labels(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.order];
        for g in 0..self.order {
            if labels[g] == usize::MAX {
                for x in self.atom_of(g).iter() {
                    labels[x] = g;
                }
            }
        }
        labels
    }

    /// All atoms, ordered by their least element.
    pub fn atoms(&self) -> Vec<ElementSet> {
        let labels = self.atom_labels();
        (0..self.order)
            .filter(|&g| labels[g] == g)
            .map(|g| self.atom_of(g))
            .collect()
    }

    /// `S ∈ B(A)`: `S` is a union of atoms. The empty set qualifies.
    pub fn in_boolean_algebra(&self, s: &ElementSet) -> bool {
        self.first_split_atom(s).is_none()
    }

    /// An element of `S` whose atom is not contained in `S`, if any.
    pub fn first_split_atom(&self, s: &ElementSet) -> Option<usize> {
        s.iter().find(|&g| !self.atom_of(g).is_subset(s))
    }

    /// `(A, f) ∈ C(A)`: `f` is constant on every atom.
    pub fn multiset_in_c(&self, f: &MultiSetNat) -> bool {
        self.first_nonconstant_atom(f).is_none()
    }

    /// Least element of the first atom on which `f` is not constant.
    pub fn first_nonconstant_atom(&self, f: &MultiSetNat) -> Option<usize> {
        let labels = self.atom_labels();
        (0..self.order).find(|&x| f.get(x) != f.get(labels[x])).map(|x| labels[x])
    }

    pub fn negate_set(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.order, s.iter().map(|a| self.neg_idx(a)))
    }

    pub fn translate_set(&self, s: &ElementSet, by: usize) -> ElementSet {
        ElementSet::from_indices(self.order, s.iter().map(|a| self.add_idx(a, by)))
    }

    /// `S₁S₂ = {s₁ + s₂}`.
    pub fn subset_product(&self, s1: &ElementSet, s2: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for a in s1.iter() {
            for b in s2.iter() {
                out.insert(self.add_idx(a, b));
            }
        }
        out
    }

    /// `S^(n)`, with `S^(0) = {0}`.
    pub fn subset_power(&self, s: &ElementSet, n: usize) -> ElementSet {
        (0..n).fold(ElementSet::from_indices(self.order, [0]), |acc, _| {
            self.subset_product(&acc, s)
        })
    }

    /// The subgroup generated by `s`.
    pub fn generated_subgroup(&self, s: &ElementSet) -> ElementSet {
        let mut seen = ElementSet::from_indices(self.order, [0]);
        let mut frontier = vec![0usize];
        while let Some(g) = frontier.pop() {
            for t in s.iter() {
                let h = self.add_idx(g, t);
                if !seen.contains(h) {
                    seen.insert(h);
                    frontier.push(h);
                }
            }
        }
        seen
    }

    /// The character with index tuple `index` (`j_i ∈ [0, n_i)`).
    pub fn character(&self, index: &[u64]) -> Result<Character> {
        if index.len() != self.factors.len()
            || index.iter().zip(&self.factors).any(|(&j, &n)| j >= n)
        {
            return Err(Error::GroupMismatch(format!(
                "character index {index:?} for {self}"
            )));
        }
        let m = self.exponent;
        let weights: Vec<u64> = index
            .iter()
            .zip(&self.factors)
            .map(|(&j, &n)| j * (m / n) % m)
            .collect();
        let exps = (0..self.order)
            .map(|a| {
                weights
                    .iter()
                    .zip(self.factors.iter().zip(&self.strides))
                    .fold(0u64, |acc, (&w, (&n, &s))| {
                        (acc + w * (((a / s) as u64) % n)) % m
                    })
            })
            .collect();
        Ok(Character {
            index: index.to_vec(),
            conductor: m,
            exps,
        })
    }

    /// All `|A|` characters, ordered lexicographically by index tuple.
    pub fn characters(&self) -> Vec<Character> {
        (0..self.order)
            .map(|i| {
                self.character(&self.element(i).residues)
                    .expect("index tuples are reduced")
            })
            .collect()
    }

    /// Index tuple of the conjugate character `π̄`.
    pub fn conjugate_index(&self, index: &[u64]) -> Vec<u64> {
        index
            .iter()
            .zip(&self.factors)
            .map(|(&j, &n)| (n - j) % n)
            .collect()
    }

    /// Parses `3` or `(1,3)`.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let residues = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| parse_err(text, "element components must be non-negative integers"))
            })
            .collect::<Result<Vec<_>>>()?;
        self.index_of(&AElement::new(residues))
    }

    /// Parses `[1,3]`, `[(1,0),(0,3)]`, or `[]`.
    pub fn parse_set(&self, text: &str) -> Result<ElementSet> {
        let t = text.trim();
        let body = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| parse_err(text, "sets are written [..]"))?
            .trim();
        let mut set = ElementSet::empty(self.order);
        if body.is_empty() {
            return Ok(set);
        }
        let mut depth = 0i32;
        let mut start = 0usize;
        let mut items = Vec::new();
        for (i, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    items.push(&body[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
            if depth < 0 {
                return Err(parse_err(text, "unbalanced parentheses"));
            }
        }
        if depth != 0 {
            return Err(parse_err(text, "unbalanced parentheses"));
        }
        items.push(&body[start..]);
        for item in items {
            set.insert(self.parse_element(item)?);
        }
        Ok(set)
    }

    pub fn format_element(&self, idx: usize) -> String {
        self.element(idx).to_string()
    }

    pub fn format_set(&self, s: &ElementSet) -> String {
        let items: Vec<String> = s.iter().map(|a| self.format_element(a)).collect();
        format!("[{}]", items.join(","))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
