//! Executable integrality criteria for Cayley graphs over `Dic(A, y)`, each
//! returning a [`Verdict`] that can be cross-checked against the spectral
//! oracles.

use num_bigint::BigInt;
use serde::Serialize;

use crate::abelian::{Character, ElementSet, MultiSetNat};
use crate::cyclotomic::{integer_sqrt_if_square, CyclotomicInt};
use crate::dicyclic::{ConnectionSet, DicElement, DicyclicGroup, WordLengths};
use crate::error::{Error, Result};
use crate::reps::{rep_conductor, Irrep, IrrepInventory};
use crate::spectra::{
    babai_oracle, cayley_graph, distance_matrix, distance_power, hl_oracle, integer_spectrum,
    SpectrumReport,
};

/// A group together with everything the criteria need about it.
#[derive(Debug, Clone)]
pub struct DicContext {
    group: DicyclicGroup,
    inventory: IrrepInventory,
    characters: Vec<Character>,
    /// Indices into `characters` of those with `A² ⊄ ker π`.
    relevant: Vec<usize>,
    conductor: u64,
}

impl DicContext {
    pub fn new(group: DicyclicGroup) -> Result<Self> {
        let inventory = IrrepInventory::build(&group)?;
        let a = group.abelian();
        let squares = a.squares_subgroup();
        let characters = a.characters();
        let relevant = characters
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_trivial_on(&squares))
            .map(|(i, _)| i)
            .collect();
        let conductor = rep_conductor(&group);
        Ok(Self {
            group,
            inventory,
            characters,
            relevant,
            conductor,
        })
    }

    pub fn parse(group: &str, y: &str) -> Result<Self> {
        Self::new(DicyclicGroup::parse(group, y)?)
    }

    pub fn group(&self) -> &DicyclicGroup {
        &self.group
    }

    pub fn inventory(&self) -> &IrrepInventory {
        &self.inventory
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    /// Characters `π` of `A` with `A² ⊄ ker π`, in character order.
    pub fn relevant_characters(&self) -> impl Iterator<Item = &Character> {
        self.relevant.iter().map(|&i| &self.characters[i])
    }

    /// The common conductor `lcm(exp A, 4)` of all representation values.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn connection_set(&self, s1: &str, s2: &str) -> Result<ConnectionSet> {
        self.group.parse_connection_set(s1, s2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl Witness {
    fn new(description: impl Into<String>) -> Self {
        Self {
            description: description.into(),
            character: None,
            element: None,
            value: None,
        }
    }

    fn character(mut self, c: &Character) -> Self {
        self.character = Some(c.index().to_vec());
        self
    }

    fn element(mut self, e: String) -> Self {
        self.element = Some(e);
        self
    }

    fn value(mut self, v: impl ToString) -> Self {
        self.value = Some(v.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub name: String,
    pub holds: bool,
}

/// Outcome of one claim on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim_id: String,
    pub holds: bool,
    pub conditions: Vec<Condition>,
    pub witnesses: Vec<Witness>,
    pub oracles: Vec<OracleResult>,
    pub oracle_agreement: Option<bool>,
}

impl Verdict {
    fn new(claim_id: &str) -> Self {
        Self {
            claim_id: claim_id.to_string(),
            holds: true,
            conditions: Vec::new(),
            witnesses: Vec::new(),
            oracles: Vec::new(),
            oracle_agreement: None,
        }
    }

    fn condition(&mut self, name: &str, holds: bool) {
        self.conditions.push(Condition {
            name: name.to_string(),
            holds,
        });
    }

    fn oracle(&mut self, name: &str, holds: bool) {
        self.oracles.push(OracleResult {
            name: name.to_string(),
            holds,
        });
    }

    pub fn condition_value(&self, name: &str) -> Option<bool> {
        self.conditions.iter().find(|c| c.name == name).map(|c| c.holds)
    }

    pub fn oracle_value(&self, name: &str) -> Option<bool> {
        self.oracles.iter().find(|o| o.name == name).map(|o| o.holds)
    }

    fn finish(mut self) -> Self {
        self.holds = self.conditions.iter().all(|c| c.holds);
        self
    }

    /// Sets agreement to "every recorded oracle equals `holds`".
    fn agree_with_oracles(mut self) -> Self {
        let holds = self.holds;
        self.oracle_agreement = Some(self.oracles.iter().all(|o| o.holds == holds));
        self
    }
}

/// `|z|²` as an integer together with its square root when it is a square.
///
/// For a character value `π(S)` we have `π(S⁻¹) = conj(π(S))`, so the
/// condition "`π(S)·π(S⁻¹) = α²` for some `α ∈ ℤ`" is exactly "`|π(S)|²` is
/// a perfect square".
fn abs_square_root(z: &CyclotomicInt) -> (CyclotomicInt, Option<BigInt>) {
    let sq = z.abs_square();
    let root = sq
        .as_rational_integer()
        .and_then(|v| integer_sqrt_if_square(&v).ok().flatten());
    (sq, root)
}

fn split_atom_witness(ctx: &DicContext, set: &ElementSet, name: &str) -> Option<Witness> {
    let a = ctx.group.abelian();
    a.first_split_atom(set).map(|g| {
        Witness::new(format!("{name} contains {} but not its whole atom", a.format_element(g)))
            .element(a.format_element(g))
            .value(a.format_set(&a.atom_of(g)))
    })
}

fn nonconstant_atom_witness(ctx: &DicContext, f: &MultiSetNat, name: &str) -> Option<Witness> {
    let a = ctx.group.abelian();
    a.first_nonconstant_atom(f).map(|g| {
        let values: Vec<String> = a.atom_of(g).iter().map(|x| f.get(x).to_string()).collect();
        Witness::new(format!("{name} is not constant on the atom of {}", a.format_element(g)))
            .element(a.format_element(g))
            .value(format!("[{}]", values.join(",")))
    })
}

fn require_depths(depths: &[u32]) -> Result<()> {
    if depths.is_empty() {
        return Err(Error::Precondition("distance set D must be non-empty".into()));
    }
    if depths.contains(&0) {
        return Err(Error::Precondition("distance set D must contain positive integers".into()));
    }
    Ok(())
}

/// `Cay(Dic(A, y), S)` is integral iff `S₁ ∈ B(A)` and `|π(S₂)|²` is a
/// perfect square for every `π` with `A² ⊄ ker π`.
pub fn integrality_criterion(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    s.require_valid()?;
    let mut v = Verdict::new("integrality");
    let c1 = split_atom_witness(ctx, &s.s1, "S1");
    v.condition("s1_in_boolean_algebra", c1.is_none());
    v.witnesses.extend(c1);

    let n = ctx.group.abelian().exponent();
    let failing = ctx.relevant_characters().find_map(|pi| {
        let (sq, root) = abs_square_root(&pi.set_sum(&s.s2, n));
        root.is_none().then(|| {
            Witness::new("|pi(S2)|^2 is not a perfect square")
                .character(pi)
                .value(sq)
        })
    });
    v.condition("s2_character_sums_square", failing.is_none());
    v.witnesses.extend(failing);
    Ok(v.finish())
}

/// Exact adjacency spectrum of `Cay(Dic(A, y), S)`.
pub fn adjacency_spectrum(ctx: &DicContext, s: &ConnectionSet) -> Result<SpectrumReport> {
    integer_spectrum(&cayley_graph(&ctx.group, s)?.adjacency_matrix())
}

/// Exact distance spectrum of the connected `Cay(Dic(A, y), S)`.
pub fn distance_spectrum(ctx: &DicContext, s: &ConnectionSet) -> Result<SpectrumReport> {
    s.require_generating()?;
    integer_spectrum(&distance_matrix(&cayley_graph(&ctx.group, s)?)?)
}

/// [`integrality_criterion`] cross-checked against Babai's criterion and the
/// exact adjacency spectrum.
pub fn check_integrality(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    let mut v = integrality_criterion(ctx, s)?;
    v.oracle("babai", babai_oracle(&ctx.group, s, &ctx.inventory)?);
    v.oracle("adjacency_spectrum", adjacency_spectrum(ctx, s)?.is_integral);
    Ok(v.agree_with_oracles())
}

/// Cyclic `A` of order `2m`: integral iff `S₁ ∈ B(A)` and, for each
/// representative `πᵢ`, `2·χ_{R_πᵢ}((xS₂)^(2))` is a perfect square.
pub fn cyclic_corollary_check(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    let a = ctx.group.abelian();
    if !a.is_cyclic() || a.order() < 4 {
        return Err(Error::Precondition(format!("{a} is not cyclic of order 2m with m >= 2")));
    }
    s.require_valid()?;
    let mut v = Verdict::new("cyclic_corollary");
    let c1 = split_atom_witness(ctx, &s.s1, "S1");
    v.condition("s1_in_boolean_algebra", c1.is_none());
    v.witnesses.extend(c1);

    let g = &ctx.group;
    let mut failing = None;
    for rep in &ctx.inventory.two_dim {
        let irrep = Irrep::TwoDim(rep.clone());
        let mut sum = CyclotomicInt::zero(ctx.conductor);
        for s2 in s.s2.iter() {
            for t2 in s.s2.iter() {
                let prod = g.mul(DicElement::new(1, s2), DicElement::new(1, t2));
                sum = &sum + &irrep.character_at(g, prod);
            }
        }
        let doubled = sum.scale(&BigInt::from(2));
        let square = doubled
            .as_rational_integer()
            .and_then(|n| integer_sqrt_if_square(&n).ok().flatten());
        if square.is_none() {
            failing = Some(
                Witness::new("2*chi_R((xS2)^(2)) is not a perfect square")
                    .character(&rep.pi)
                    .value(doubled),
            );
            break;
        }
    }
    v.condition("doubled_character_sums_square", failing.is_none());
    v.witnesses.extend(failing);
    let mut v = v.finish();
    let main = integrality_criterion(ctx, s)?;
    v.oracle("integrality_criterion", main.holds);
    Ok(v.agree_with_oracles())
}

/// `S₁, S₂ ∈ B(A)` iff (integral and `S₂ = -S₂`).
pub fn boolean_pair_equivalence(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    s.require_valid()?;
    let a = ctx.group.abelian();
    let mut v = Verdict::new("boolean_pair");
    let left = a.in_boolean_algebra(&s.s1) && a.in_boolean_algebra(&s.s2);
    let integral = integrality_criterion(ctx, s)?;
    let s2_inverse_closed = a.negate_set(&s.s2) == s.s2;
    let right = integral.holds && s2_inverse_closed;
    v.condition("biconditional", left == right);
    if left != right {
        v.witnesses.push(
            Witness::new("boolean-pair side differs from integral-and-inverse-closed side")
                .value(format!("left={left} right={right}")),
        );
    }
    let mut v = v.finish();
    // The right-hand side's integrality must match the exact spectrum.
    let spectral = adjacency_spectrum(ctx, s)?.is_integral;
    v.oracle("adjacency_spectrum", spectral);
    v.oracle_agreement = Some(spectral == integral.holds);
    Ok(v)
}

/// `S^D` via set products: for each `d ∈ D`,
/// `⋃_{k+ℓ=d} ⋂_{m₁+m₂<d} S₁^(k)(xS₂)^(ℓ) \ S₁^(m₁)(xS₂)^(m₂)`,
/// split by the parity of `ℓ` into `S₁^D` and `S₂^D`.
///
/// Requires `S₁, S₂ ∈ B(A)`, so `S₂ = -S₂` and `(xS₂)^(ℓ)` is `S₂^(ℓ)` for even
/// `ℓ` and `xS₂^(ℓ)` for odd `ℓ`; with `S₁ = -S₁` every product
/// `S₁^(k)(xS₂)^(ℓ)` is then `x^ℓ·(S₁^(k) + S₂^(ℓ))`.
pub fn constructive_distance_power(
    ctx: &DicContext,
    s: &ConnectionSet,
    depths: &[u32],
) -> Result<(ElementSet, ElementSet)> {
    require_depths(depths)?;
    s.require_generating()?;
    let a = ctx.group.abelian();
    if !a.in_boolean_algebra(&s.s1) || !a.in_boolean_algebra(&s.s2) {
        return Err(Error::Precondition("S1 and S2 must both lie in B(A)".into()));
    }
    let n = a.order();
    let dmax = *depths.iter().max().unwrap() as usize;
    let mut p1 = vec![ElementSet::from_indices(n, [0])];
    let mut p2 = vec![ElementSet::from_indices(n, [0])];
    // balls[parity] = ⋃_{m₁+m₂<d, m₂ ≡ parity} S₁^(m₁) + S₂^(m₂)
    let mut balls = [ElementSet::empty(n), ElementSet::empty(n)];
    let mut out = [ElementSet::empty(n), ElementSet::empty(n)];
    for d in 0..=dmax {
        if d > 0 {
            p1.push(a.subset_product(&p1[d - 1], &s.s1));
            p2.push(a.subset_product(&p2[d - 1], &s.s2));
        }
        let mut shell = [ElementSet::empty(n), ElementSet::empty(n)];
        for k in 0..=d {
            let l = d - k;
            let prod = a.subset_product(&p1[k], &p2[l]);
            shell[l % 2] = shell[l % 2].union(&prod);
        }
        if d > 0 && depths.contains(&(d as u32)) {
            for parity in 0..2 {
                // products in different cosets are disjoint, so only the
                // same-parity part of the ball is subtracted
                let fresh = shell[parity].difference(&balls[parity]);
                out[parity] = out[parity].union(&fresh);
            }
        }
        for parity in 0..2 {
            balls[parity] = balls[parity].union(&shell[parity]);
        }
        if balls.iter().all(|b| b.len() == n) {
            break;
        }
    }
    let [s1d, s2d] = out;
    Ok((s1d, s2d))
}

/// `S^D = {g : ℓ_S(g) ∈ D}` split into `(S₁^D, S₂^D)`.
pub fn bfs_distance_power(
    ctx: &DicContext,
    s: &ConnectionSet,
    depths: &[u32],
) -> Result<(ElementSet, ElementSet)> {
    require_depths(depths)?;
    let lengths = ctx.group.word_lengths(s)?;
    Ok(ctx.group.split(&lengths.shell(depths)))
}

/// Distance powers of `Cay(Dic(A, y), S)` with `S₁, S₂ ∈ B(A)` are integral
/// Cayley graphs with inverse-closed `S₂^D`, connected when `1 ∈ D`.
pub fn distance_power_sets(
    ctx: &DicContext,
    s: &ConnectionSet,
    depths: &[u32],
) -> Result<(ElementSet, ElementSet, Verdict)> {
    let (s1d, s2d) = constructive_distance_power(ctx, s, depths)?;
    let (b1, b2) = bfs_distance_power(ctx, s, depths)?;
    let a = ctx.group.abelian();
    let mut v = Verdict::new("distance_powers");

    let same = s1d == b1 && s2d == b2;
    v.condition("constructive_equals_bfs", same);
    if !same {
        v.witnesses.push(Witness::new("constructive S^D differs from BFS shell").value(format!(
            "constructive ({}, {}) bfs ({}, {})",
            a.format_set(&s1d),
            a.format_set(&s2d),
            a.format_set(&b1),
            a.format_set(&b2)
        )));
    }
    let w1 = split_atom_witness(ctx, &s1d, "S1^D");
    v.condition("s1d_in_boolean_algebra", w1.is_none());
    v.witnesses.extend(w1);
    let w2 = split_atom_witness(ctx, &s2d, "S2^D");
    v.condition("s2d_in_boolean_algebra", w2.is_none());
    v.witnesses.extend(w2);
    let inverse_closed = a.negate_set(&s2d) == s2d;
    v.condition("s2d_inverse_closed", inverse_closed);
    if !inverse_closed {
        v.witnesses.push(Witness::new("S2^D is not inverse-closed").value(a.format_set(&s2d)));
    }

    let sd = ctx.group.connection_set(s1d.clone(), s2d.clone())?;
    let integral = integrality_criterion(ctx, &sd)?;
    v.condition("power_integral", integral.holds);
    if !integral.holds {
        v.witnesses.extend(integral.witnesses.iter().take(1).cloned());
    }
    if depths.contains(&1) {
        v.condition("connected_when_1_in_d", sd.generating());
        if !sd.generating() {
            v.witnesses.push(Witness::new("1 in D but the distance power is disconnected"));
        }
    }
    let mut v = v.finish();

    let babai = babai_oracle(&ctx.group, &sd, &ctx.inventory)?;
    let spectrum = adjacency_spectrum(ctx, &sd)?.is_integral;
    let graph = distance_power(&cayley_graph(&ctx.group, s)?, depths)?;
    let graph_matches = graph == cayley_graph(&ctx.group, &sd)?;
    v.oracle("babai", babai);
    v.oracle("adjacency_spectrum", spectrum);
    v.oracle("graph_distance_power", graph_matches);
    v.oracle_agreement =
        Some(graph_matches && babai == integral.holds && spectrum == integral.holds);
    Ok((s1d, s2d, v))
}

fn distance_conditions(ctx: &DicContext, lengths: &WordLengths, v: &mut Verdict) {
    let on_a = lengths.on_a();
    let w = nonconstant_atom_witness(ctx, &on_a, "l_S on A");
    v.condition("l_on_a_in_c", w.is_none());
    v.witnesses.extend(w);

    let n = ctx.group.abelian().exponent();
    let on_xa = lengths.on_xa();
    let failing = ctx.relevant_characters().find_map(|pi| {
        let (sq, root) = abs_square_root(&pi.weighted_sum(&on_xa, n));
        root.is_none().then(|| {
            Witness::new("|pi(A, l_S(x.))|^2 is not a perfect square")
                .character(pi)
                .value(sq)
        })
    });
    v.condition("xa_character_sums_abs_integral", failing.is_none());
    v.witnesses.extend(failing);
}

/// Connected `Cay(Dic(A, y), S)` is distance integral iff `(A, ℓ_S) ∈ C(A)` and
/// `|π(A, ℓ_S(x·))|²` is a perfect square for every `π` with `A² ⊄ ker π`.
pub fn distance_integrality_criterion(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    let lengths = ctx.group.word_lengths(s)?;
    let mut v = Verdict::new("distance_integrality");
    distance_conditions(ctx, &lengths, &mut v);
    Ok(v.finish())
}

/// [`distance_integrality_criterion`] cross-checked against the Huang-Li
/// criterion and the exact distance spectrum.
pub fn check_distance_integrality(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    let mut v = distance_integrality_criterion(ctx, s)?;
    v.oracle("huang_li", hl_oracle(&ctx.group, s, &ctx.inventory)?);
    v.oracle("distance_spectrum", distance_spectrum(ctx, s)?.is_integral);
    Ok(v.agree_with_oracles())
}

/// The three-condition form of the distance criterion. `holds` reports the
/// redundancy of the third condition: `π(A, ℓ_S(x·)) = 0` whenever `π(y) = -1`.
pub fn proposition_conditions(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    let lengths = ctx.group.word_lengths(s)?;
    let mut conds = Verdict::new("proposition");
    distance_conditions(ctx, &lengths, &mut conds);
    let c12 = conds.conditions.iter().all(|c| c.holds);

    let n = ctx.group.abelian().exponent();
    let on_xa = lengths.on_xa();
    let y = ctx.group.y();
    let failing = ctx
        .characters
        .iter()
        .filter(|pi| pi.sign_at(y) == Some(-1))
        .find_map(|pi| {
            let sum = pi.weighted_sum(&on_xa, n);
            (!sum.is_zero()).then(|| {
                Witness::new("pi(y) = -1 but pi(A, l_S(x.)) != 0")
                    .character(pi)
                    .value(sum)
            })
        });
    let c3 = failing.is_none();

    let mut v = Verdict::new("proposition");
    v.conditions = conds.conditions;
    v.witnesses = failing.into_iter().collect();
    v.condition("third_condition", c3);
    v.holds = c3;

    let hl = hl_oracle(&ctx.group, s, &ctx.inventory)?;
    let spectrum = distance_spectrum(ctx, s)?.is_integral;
    v.oracle("huang_li", hl);
    v.oracle("distance_spectrum", spectrum);
    v.oracle_agreement = Some(hl == (c12 && c3) && spectrum == hl);
    Ok(v)
}

fn require_inverse_closed_s2(ctx: &DicContext, s: &ConnectionSet) -> Result<()> {
    if ctx.group.abelian().negate_set(&s.s2) != s.s2 {
        return Err(Error::Precondition("requires S2 = -S2".into()));
    }
    Ok(())
}

/// Both `ℓ_S` restrictions atom-constant implies distance integral.
pub fn sufficient_condition_check(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    let lengths = ctx.group.word_lengths(s)?;
    let a = ctx.group.abelian();
    let both_in_c = a.multiset_in_c(&lengths.on_a()) && a.multiset_in_c(&lengths.on_xa());
    let criterion = distance_integrality_criterion(ctx, s)?;
    let mut v = Verdict::new("sufficient_condition");
    v.condition("multisets_in_c", both_in_c);
    v.condition("implication", !both_in_c || criterion.holds);
    if both_in_c && !criterion.holds {
        v.witnesses.extend(criterion.witnesses.iter().take(1).cloned());
    }
    v.holds = !both_in_c || criterion.holds;
    let hl = hl_oracle(&ctx.group, s, &ctx.inventory)?;
    let spectrum = distance_spectrum(ctx, s)?.is_integral;
    v.oracle("huang_li", hl);
    v.oracle("distance_spectrum", spectrum);
    v.oracle_agreement = Some(hl == criterion.holds && spectrum == criterion.holds);
    Ok(v)
}

/// With `S₂ = -S₂`: distance integral iff both `ℓ_S` restrictions lie in `C(A)`.
pub fn symmetric_s2_criterion(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    require_inverse_closed_s2(ctx, s)?;
    let lengths = ctx.group.word_lengths(s)?;
    let a = ctx.group.abelian();
    let both_in_c = a.multiset_in_c(&lengths.on_a()) && a.multiset_in_c(&lengths.on_xa());
    let criterion = distance_integrality_criterion(ctx, s)?;
    let mut v = Verdict::new("symmetric_s2");
    v.condition("multisets_in_c", both_in_c);
    v.condition("biconditional", both_in_c == criterion.holds);
    if both_in_c != criterion.holds {
        v.witnesses.push(
            Witness::new("atom-constancy of both restrictions differs from distance integrality")
                .value(format!("in_c={both_in_c} distance_integral={}", criterion.holds)),
        );
    }
    v.holds = both_in_c == criterion.holds;
    let spectrum = distance_spectrum(ctx, s)?.is_integral;
    v.oracle("distance_spectrum", spectrum);
    v.oracle_agreement = Some(spectrum == criterion.holds);
    Ok(v)
}

/// With `S₂ = -S₂` and `S` generating: integral iff distance integral.
pub fn equivalence_theorem_check(ctx: &DicContext, s: &ConnectionSet) -> Result<Verdict> {
    s.require_generating()?;
    require_inverse_closed_s2(ctx, s)?;
    let integral = check_integrality(ctx, s)?;
    let distance = check_distance_integrality(ctx, s)?;
    let mut v = Verdict::new("equivalence");
    v.condition("integral", integral.holds);
    v.condition("distance_integral", distance.holds);
    v.holds = integral.holds == distance.holds;
    if !v.holds {
        v.witnesses.push(
            Witness::new("integrality and distance integrality differ")
                .value(format!("integral={} distance_integral={}", integral.holds, distance.holds)),
        );
    }
    v.oracles = integral.oracles.into_iter().chain(distance.oracles).collect();
    v.oracle_agreement = Some(
        integral.oracle_agreement == Some(true) && distance.oracle_agreement == Some(true),
    );
    Ok(v)
}

/// `S = S₁ ∪ x{0, y}` with `S₁ ∈ B(A)` generating `A`: every distance power is
/// an integral Cayley graph with inverse-closed `S₂^D`, connected when
/// `1 ∈ D`, and distance integral when connected.
pub fn family_corollary_check(ctx: &DicContext, s1: &ElementSet, depths: &[u32]) -> Result<Verdict> {
    require_depths(depths)?;
    let a = ctx.group.abelian();
    if s1.universe() != a.order() {
        return Err(Error::GroupMismatch(format!("S1 must live in {a}")));
    }
    if s1.contains(a.zero()) {
        return Err(Error::Precondition("S1 must not contain 0".into()));
    }
    if !a.in_boolean_algebra(s1) {
        return Err(Error::Precondition("S1 must lie in B(A)".into()));
    }
    if a.generated_subgroup(s1).len() != a.order() {
        return Err(Error::Precondition("S1 must generate A".into()));
    }
    let s2 = ElementSet::from_indices(a.order(), [a.zero(), ctx.group.y()]);
    let s = ctx.group.connection_set(s1.clone(), s2)?;

    let mut v = Verdict::new("family_corollary");
    v.condition("base_connected", s.generating());
    if !s.generating() {
        v.witnesses.push(Witness::new("S1 with x{0,y} does not generate"));
        return Ok(v.finish());
    }
    let (s1d, s2d, powers) = distance_power_sets(ctx, &s, depths)?;
    v.conditions.extend(powers.conditions.iter().cloned());
    v.witnesses.extend(powers.witnesses.iter().cloned());
    v.oracles.extend(powers.oracles.iter().cloned());
    let mut agreement = powers.oracle_agreement == Some(true);

    let sd = ctx.group.connection_set(s1d, s2d)?;
    if sd.generating() {
        let dist = check_distance_integrality(ctx, &sd)?;
        v.condition("power_distance_integral", dist.holds);
        if !dist.holds {
            v.witnesses.extend(dist.witnesses.iter().take(1).cloned());
        }
        agreement &= dist.oracle_agreement == Some(true);
        v.oracles.extend(dist.oracles);
    }
    let mut v = v.finish();
    v.oracle_agreement = Some(agreement);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> DicContext {
        DicContext::parse("Z4", "2").unwrap()
    }

    #[test]
    fn integrality_examples() {
        let ctx = q8();
        let s = ctx.connection_set("[]", "[0,1,2,3]").unwrap();
        let v = check_integrality(&ctx, &s).unwrap();
        assert!(v.holds);
        assert_eq!(v.oracle_agreement, Some(true));

        let ctx8 = DicContext::parse("Z8", "4").unwrap();
        let s = ctx8.connection_set("[]", "[0,1,4,5]").unwrap();
        let v = check_integrality(&ctx8, &s).unwrap();
        assert!(!v.holds);
        assert_eq!(v.oracle_agreement, Some(true));
        assert_eq!(v.witnesses[0].character, Some(vec![2]));
        assert_eq!(v.witnesses[0].value.as_deref(), Some("8"));

        // {1} is not inverse-closed in Z4: rejected before any condition runs
        let s = ctx.connection_set("[1]", "[]").unwrap();
        assert!(matches!(
            integrality_criterion(&ctx, &s),
            Err(Error::InvalidConnectionSet(_))
        ));
        assert!(!ctx.group().abelian().in_boolean_algebra(&s.s1));
    }

    #[test]
    fn non_boolean_s1_fails_condition_one() {
        let ctx = DicContext::parse("Z8", "4").unwrap();
        // {2,6} is the atom of 2; {1,7} is half of the atom {1,3,5,7}
        let s = ctx.connection_set("[1,7]", "[]").unwrap();
        let v = integrality_criterion(&ctx, &s).unwrap();
        assert!(!v.holds);
        assert_eq!(v.condition_value("s1_in_boolean_algebra"), Some(false));
        assert_eq!(v.witnesses[0].element.as_deref(), Some("1"));
    }

    #[test]
    fn empty_connection_set_is_integral() {
        let ctx = q8();
        let s = ctx.connection_set("[]", "[]").unwrap();
        let v = check_integrality(&ctx, &s).unwrap();
        assert!(v.holds);
        assert_eq!(v.oracle_agreement, Some(true));
    }

    #[test]
    fn cyclic_corollary_agrees_on_small_cyclic_groups() {
        for (spec, y) in [("Z4", "2"), ("Z6", "3"), ("Z8", "4")] {
            let ctx = DicContext::parse(spec, y).unwrap();
            let n = ctx.group().abelian().order();
            for mask in 0u32..(1 << (2 * n)) {
                let s1 = ElementSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
                let s2 = ElementSet::from_indices(n, (0..n).filter(|i| mask >> (n + i) & 1 == 1));
                let s = ctx.group().connection_set(s1, s2).unwrap();
                if s.require_valid().is_err() {
                    continue;
                }
                let v = cyclic_corollary_check(&ctx, &s).unwrap();
                assert_eq!(v.oracle_agreement, Some(true), "{spec} mask {mask:b}");
            }
        }
        let ctx = DicContext::parse("Z2xZ4", "(0,2)").unwrap();
        let s = ctx.connection_set("[]", "[]").unwrap();
        assert!(cyclic_corollary_check(&ctx, &s).is_err());
    }

    #[test]
    fn boolean_pair_examples() {
        let ctx = q8();
        for (s1, s2) in [("[1,3]", "[0,2]"), ("[1,3]", "[0,1,2,3]")] {
            let s = ctx.connection_set(s1, s2).unwrap();
            let v = boolean_pair_equivalence(&ctx, &s).unwrap();
            assert!(v.holds);
            assert_eq!(v.oracle_agreement, Some(true));
        }
    }

    #[test]
    fn distance_power_example() {
        let ctx = q8();
        let s = ctx.connection_set("[1,3]", "[0,2]").unwrap();
        let a = ctx.group().abelian();
        let (s1d, s2d, v) = distance_power_sets(&ctx, &s, &[2]).unwrap();
        assert_eq!(a.format_set(&s1d), "[2]");
        assert_eq!(a.format_set(&s2d), "[1,3]");
        assert!(v.holds);
        assert_eq!(v.oracle_agreement, Some(true));

        let (s1d, s2d, v) = distance_power_sets(&ctx, &s, &[1]).unwrap();
        assert_eq!((s1d, s2d), (s.s1.clone(), s.s2.clone()));
        assert!(v.holds);

        let (s1d, s2d, v) = distance_power_sets(&ctx, &s, &[7]).unwrap();
        assert!(s1d.is_empty() && s2d.is_empty());
        assert!(v.holds);

        let bad = ctx.connection_set("[2]", "[0,2]").unwrap();
        assert!(distance_power_sets(&ctx, &bad, &[1]).is_err());
        assert!(distance_power_sets(&ctx, &s, &[]).is_err());
    }

    #[test]
    fn distance_integrality_example() {
        let ctx = q8();
        let s = ctx.connection_set("[1,3]", "[0,2]").unwrap();
        let v = check_distance_integrality(&ctx, &s).unwrap();
        assert!(v.holds);
        assert_eq!(v.oracle_agreement, Some(true));

        let p = proposition_conditions(&ctx, &s).unwrap();
        assert!(p.holds);
        assert_eq!(p.oracle_agreement, Some(true));

        let suff = sufficient_condition_check(&ctx, &s).unwrap();
        assert_eq!(suff.condition_value("multisets_in_c"), Some(true));
        assert!(suff.holds);
        assert!(symmetric_s2_criterion(&ctx, &s).unwrap().holds);
        let eq = equivalence_theorem_check(&ctx, &s).unwrap();
        assert!(eq.holds);
        assert_eq!(eq.oracle_agreement, Some(true));
    }

    #[test]
    fn third_condition_four_term_sum() {
        let ctx = q8();
        let s = ctx.connection_set("[1,3]", "[0,2]").unwrap();
        let lengths = ctx.group().word_lengths(&s).unwrap();
        let pi = ctx.group().abelian().character(&[1]).unwrap();
        assert_eq!(pi.sign_at(ctx.group().y()), Some(-1));
        assert!(pi.weighted_sum(&lengths.on_xa(), 4).is_zero());
    }

    #[test]
    fn non_generating_sets_are_rejected() {
        let ctx = q8();
        let s = ctx.connection_set("[2]", "[]").unwrap();
        assert_eq!(distance_integrality_criterion(&ctx, &s), Err(Error::NotGenerating));
        assert_eq!(equivalence_theorem_check(&ctx, &s), Err(Error::NotGenerating));
    }

    #[test]
    fn family_examples() {
        let ctx = DicContext::parse("Z6", "3").unwrap();
        let a = ctx.group().abelian();
        let all = ElementSet::full(6).difference(&ElementSet::from_indices(6, [0]));
        let v = family_corollary_check(&ctx, &all, &[1, 2]).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.oracle_agreement, Some(true));

        let q = q8();
        let s1 = q.group().abelian().parse_set("[1,3]").unwrap();
        let v = family_corollary_check(&q, &s1, &[1]).unwrap();
        assert!(v.holds);
        assert_eq!(v.condition_value("power_distance_integral"), Some(true));

        let big = DicContext::parse("Z2xZ6", "(0,3)").unwrap();
        let n = big.group().abelian().order();
        let all = ElementSet::full(n).difference(&ElementSet::from_indices(n, [0]));
        let v = family_corollary_check(&big, &all, &[2]).unwrap();
        assert!(v.holds);
        assert_eq!(v.oracle_agreement, Some(true));

        assert!(family_corollary_check(&ctx, &a.parse_set("[1]").unwrap(), &[1]).is_err());
    }
}
