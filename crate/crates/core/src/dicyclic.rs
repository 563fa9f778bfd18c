//! The generalized dicyclic group `Dic(A, y) = ⟨A, x | x² = y, xax⁻¹ = a⁻¹⟩`.
//!
//! An element `x^ε·a` is stored as `(ε, a)` with `a` an element index of `A`.
//! Dense indices put the coset `A` first and `xA` second, each in the order
//! of `A`: index `ε·|A| + a`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::abelian::{AbelianGroup, ElementSet, MultiSetNat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DicElement {
    /// 0 for the coset `A`, 1 for `xA`.
    pub eps: u8,
    /// Element index in `A`.
    pub a: usize,
}

impl DicElement {
    pub fn new(eps: u8, a: usize) -> Self {
        debug_assert!(eps < 2);
        Self { eps, a }
    }
}

/// `Dic(A, y)` for abelian `A` of even order and exponent at least 3, and `y`
/// of order 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicyclicGroup {
    a: AbelianGroup,
    y: usize,
}

impl DicyclicGroup {
    pub fn new(a: AbelianGroup, y: usize) -> Result<Self> {
        if a.order() % 2 != 0 {
            return Err(Error::InvalidDicyclic(format!("|{a}| = {} is odd", a.order())));
        }
        if a.exponent() < 3 {
            return Err(Error::InvalidDicyclic(format!(
                "exponent of {a} is {} (< 3)",
                a.exponent()
            )));
        }
        if y >= a.order() {
            return Err(Error::GroupMismatch(format!("y index {y} out of range for {a}")));
        }
        if a.order_of_idx(y) != 2 {
            return Err(Error::InvalidDicyclic(format!(
                "y = {} has order {}, expected 2",
                a.format_element(y),
                a.order_of_idx(y)
            )));
        }
        Ok(Self { a, y })
    }

    /// Parses the group spec and `y` in the element syntax of `A`.
    pub fn parse(group: &str, y: &str) -> Result<Self> {
        let a = AbelianGroup::parse(group)?;
        let y = a.parse_element(y)?;
        Self::new(a, y)
    }

    pub fn abelian(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn order(&self) -> usize {
        2 * self.a.order()
    }

    pub fn identity(&self) -> DicElement {
        DicElement::new(0, 0)
    }

    pub fn x(&self) -> DicElement {
        DicElement::new(1, 0)
    }

    pub fn index(&self, g: DicElement) -> usize {
        g.eps as usize * self.a.order() + g.a
    }

    pub fn element(&self, idx: usize) -> DicElement {
        let n = self.a.order();
        DicElement::new((idx / n) as u8, idx % n)
    }

    pub fn elements(&self) -> impl Iterator<Item = DicElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn mul(&self, g: DicElement, h: DicElement) -> DicElement {
        let a = &self.a;
        match (g.eps, h.eps) {
            (0, 0) => DicElement::new(0, a.add_idx(g.a, h.a)),
            // a·x·b = x·(-a)·b
            (0, _) => DicElement::new(1, a.sub_idx(h.a, g.a)),
            (_, 0) => DicElement::new(1, a.add_idx(g.a, h.a)),
            // x·a·x·b = x²·(-a)·b = y - a + b
            _ => DicElement::new(0, a.add_idx(self.y, a.sub_idx(h.a, g.a))),
        }
    }

    pub fn inv(&self, g: DicElement) -> DicElement {
        match g.eps {
            0 => DicElement::new(0, self.a.neg_idx(g.a)),
            _ => DicElement::new(1, self.a.add_idx(self.y, g.a)),
        }
    }

    pub fn format_element(&self, g: DicElement) -> String {
        let a = self.a.format_element(g.a);
        if g.eps == 0 {
            a
        } else {
            format!("x{a}")
        }
    }

    /// Builds `S = S₁ ∪ xS₂` and records its validity flags.
    pub fn connection_set(&self, s1: ElementSet, s2: ElementSet) -> Result<ConnectionSet> {
        let n = self.a.order();
        if s1.universe() != n || s2.universe() != n {
            return Err(Error::GroupMismatch(format!(
                "subsets must live in {}",
                self.a
            )));
        }
        let identity_free = !s1.contains(0);
        let symmetric =
            self.a.negate_set(&s1) == s1 && self.a.translate_set(&s2, self.y) == s2;
        let mut cs = ConnectionSet {
            s1,
            s2,
            identity_free,
            symmetric,
            generating: false,
        };
        cs.generating = self.generated_subgroup(&cs).len() == self.order();
        Ok(cs)
    }

    pub fn parse_connection_set(&self, s1: &str, s2: &str) -> Result<ConnectionSet> {
        let s1 = self.a.parse_set(s1)?;
        let s2 = self.a.parse_set(s2)?;
        self.connection_set(s1, s2)
    }

    /// The elements of `S`, `A`-part first.
    pub fn members(&self, s: &ConnectionSet) -> Vec<DicElement> {
        s.s1.iter()
            .map(|a| DicElement::new(0, a))
            .chain(s.s2.iter().map(|a| DicElement::new(1, a)))
            .collect()
    }

    /// Splits a subset of `Dic(A, y)` (over dense indices) into `(S₁, S₂)`.
    pub fn split(&self, set: &ElementSet) -> (ElementSet, ElementSet) {
        let n = self.a.order();
        let s1 = ElementSet::from_indices(n, set.iter().filter(|&i| i < n));
        let s2 = ElementSet::from_indices(n, set.iter().filter(|&i| i >= n).map(|i| i - n));
        (s1, s2)
    }

    /// `S = S⁻¹` checked element by element (the flag uses the split test).
    pub fn is_elementwise_symmetric(&self, s: &ConnectionSet) -> bool {
        let members = self.members(s);
        members.iter().all(|&g| members.contains(&self.inv(g)))
    }

    /// `⟨S⟩` as a set of dense indices.
    pub fn generated_subgroup(&self, s: &ConnectionSet) -> ElementSet {
        let mut gens = self.members(s);
        let inverses: Vec<DicElement> = gens.iter().map(|&g| self.inv(g)).collect();
        gens.extend(inverses);
        let mut seen = ElementSet::from_indices(self.order(), [0]);
        let mut frontier = vec![self.identity()];
        while let Some(g) = frontier.pop() {
            for &t in &gens {
                let h = self.mul(g, t);
                let hi = self.index(h);
                if !seen.contains(hi) {
                    seen.insert(hi);
                    frontier.push(h);
                }
            }
        }
        seen
    }

    /// Word lengths `ℓ_S(g)`: BFS depth from the identity in `Cay(Dic, S)`.
    pub fn word_lengths(&self, s: &ConnectionSet) -> Result<WordLengths> {
        s.require_valid()?;
        if !s.generating {
            return Err(Error::NotGenerating);
        }
        let gens = self.members(s);
        let mut lengths = vec![u32::MAX; self.order()];
        lengths[0] = 0;
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(g) = queue.pop_front() {
            let d = lengths[self.index(g)];
            for &t in &gens {
                let h = self.mul(g, t);
                let hi = self.index(h);
                if lengths[hi] == u32::MAX {
                    lengths[hi] = d + 1;
                    queue.push_back(h);
                }
            }
        }
        debug_assert!(lengths.iter().all(|&l| l != u32::MAX));
        Ok(WordLengths {
            half: self.a.order(),
            lengths,
        })
    }
}

impl fmt::Display for DicyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dic({}, {})", self.a, self.a.format_element(self.y))
    }
}

/// `S = S₁ ∪ xS₂` with flags computed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSet {
    pub s1: ElementSet,
    pub s2: ElementSet,
    identity_free: bool,
    symmetric: bool,
    generating: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConnectionFlags {
    pub identity_free: bool,
    pub symmetric: bool,
    pub generating: bool,
}

impl ConnectionSet {
    pub fn identity_free(&self) -> bool {
        self.identity_free
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn generating(&self) -> bool {
        self.generating
    }

    pub fn flags(&self) -> ConnectionFlags {
        ConnectionFlags {
            identity_free: self.identity_free,
            symmetric: self.symmetric,
            generating: self.generating,
        }
    }

    pub fn len(&self) -> usize {
        self.s1.len() + self.s2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Errors unless `1 ∉ S` and `S = S⁻¹`.
    pub fn require_valid(&self) -> Result<()> {
        if !self.identity_free {
            return Err(Error::InvalidConnectionSet("S contains the identity".into()));
        }
        if !self.symmetric {
            return Err(Error::InvalidConnectionSet(
                "S is not closed under inverses (need S₁ = -S₁ and y + S₂ = S₂)".into(),
            ));
        }
        Ok(())
    }

    /// Errors unless `S` is valid and generates the group.
    pub fn require_generating(&self) -> Result<()> {
        self.require_valid()?;
        if self.generating {
            Ok(())
        } else {
            Err(Error::NotGenerating)
        }
    }
}

/// `ℓ_S` over all of `Dic(A, y)`, indexed densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordLengths {
    half: usize,
    lengths: Vec<u32>,
}

impl WordLengths {
    pub fn get(&self, idx: usize) -> u32 {
        self.lengths[idx]
    }

    pub fn all(&self) -> &[u32] {
        &self.lengths
    }

    pub fn max(&self) -> u32 {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// `ℓ_S` restricted to `A`.
    pub fn on_a(&self) -> MultiSetNat {
        MultiSetNat::new(self.lengths[..self.half].iter().map(|&l| l as u64).collect())
    }

    /// `ℓ_S(x·)`: `a ↦ ℓ_S(xa)`.
    pub fn on_xa(&self) -> MultiSetNat {
        MultiSetNat::new(self.lengths[self.half..].iter().map(|&l| l as u64).collect())
    }

    /// `{g : ℓ_S(g) ∈ D}` over dense indices.
    pub fn shell(&self, depths: &[u32]) -> ElementSet {
        ElementSet::from_indices(
            self.lengths.len(),
            self.lengths
                .iter()
                .enumerate()
                .filter(|(_, l)| depths.contains(l))
                .map(|(i, _)| i),
        )
    }
}
