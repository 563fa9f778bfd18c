//! Exhaustive and seeded-random campaigns over `(A, y, S)`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{AbelianGroup, ElementSet};
use crate::criteria::{
    boolean_pair_equivalence, check_distance_integrality, check_integrality,
    cyclic_corollary_check, distance_power_sets, equivalence_theorem_check,
    proposition_conditions, sufficient_condition_check, symmetric_s2_criterion, DicContext,
    Verdict, Witness,
};
use crate::dicyclic::{ConnectionFlags, ConnectionSet, DicyclicGroup};
use crate::error::{Error, Result};
use crate::spectra::{cayley_graph, diameter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Integrality,
    DistanceIntegrality,
    DistancePowers,
    Equivalence,
    Proposition,
    BooleanPair,
    Sufficient,
    SymmetricS2,
    Cyclic,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Integrality,
        Check::DistanceIntegrality,
        Check::DistancePowers,
        Check::Equivalence,
        Check::Proposition,
        Check::BooleanPair,
        Check::Sufficient,
        Check::SymmetricS2,
        Check::Cyclic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Integrality => "integrality",
            Check::DistanceIntegrality => "distance_integrality",
            Check::DistancePowers => "distance_powers",
            Check::Equivalence => "equivalence",
            Check::Proposition => "proposition",
            Check::BooleanPair => "boolean_pair",
            Check::Sufficient => "sufficient",
            Check::SymmetricS2 => "symmetric_s2",
            Check::Cyclic => "cyclic",
        }
    }

    /// Checks that compare a criterion with oracles, as opposed to checks
    /// whose `holds` asserts a theorem on the instance.
    fn is_criterion(self) -> bool {
        matches!(self, Check::Integrality | Check::DistanceIntegrality | Check::Cyclic)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_");
        Check::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown check".into(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Random,
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SweepMode::Exhaustive),
            "random" => Ok(SweepMode::Random),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "mode must be exhaustive or random".into(),
            }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_dic_order: usize,
    pub mode: SweepMode,
    /// Random mode only.
    pub sample_count: usize,
    pub seed: u64,
    pub jobs: usize,
    pub checks: Vec<Check>,
    /// Adds per-record `micros`; output is then no longer reproducible.
    pub timings: bool,
    /// Distance sets are enumerated exhaustively up to this diameter.
    pub max_power_diameter: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            max_dic_order: 16,
            mode: SweepMode::Exhaustive,
            sample_count: 0,
            seed: 1,
            jobs: 1,
            checks: Check::ALL.to_vec(),
            timings: false,
            max_power_diameter: 8,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.jobs == 0 {
            return Err(Error::Precondition("jobs must be at least 1".into()));
        }
        if self.mode == SweepMode::Random && self.sample_count == 0 {
            return Err(Error::Precondition("random mode requires samples >= 1".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::Precondition("at least one check must be selected".into()));
        }
        Ok(())
    }
}

/// Factor lists `d₁ | d₂ | … | d_k` with product `n`, one per isomorphism class.
pub fn invariant_factor_forms(n: u64) -> Vec<Vec<u64>> {
    fn extend(rest: u64, prev: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        // next factor is a multiple of prev dividing rest, and must leave a
        // cofactor that stays a multiple of it
        let mut d = prev;
        while d <= rest {
            if rest % d == 0 && (rest / d == 1 || (rest / d) % d == 0) {
                acc.push(d);
                extend(rest / d, d, acc, out);
                acc.pop();
            }
            d += prev;
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        for first in 2..=n {
            if n % first == 0 && (n / first == 1 || (n / first) % first == 0) {
                let mut acc = vec![first];
                extend(n / first, first, &mut acc, &mut out);
            }
        }
    }
    out.sort();
    out
}

/// Every `Dic(A, y)` with `2|A| ≤ max_dic_order`, ordered by `|A|`, then
/// factor list, then `y`.
pub fn dicyclic_groups(max_dic_order: usize) -> Vec<DicyclicGroup> {
    let mut out = Vec::new();
    for n in (2..=max_dic_order / 2).step_by(2) {
        for factors in invariant_factor_forms(n as u64) {
            let a = AbelianGroup::new(factors).expect("factors are at least 2");
            if a.exponent() < 3 {
                continue;
            }
            for y in a.involutions() {
                out.push(DicyclicGroup::new(a.clone(), y).expect("valid by construction"));
            }
        }
    }
    out
}

/// Blocks whose unions are exactly the symmetric identity-free sets: the
/// `{a, -a}` classes of `A \ {0}` for `S₁` and the `⟨y⟩`-cosets for `S₂`.
#[derive(Debug, Clone)]
pub struct SymmetricBlocks {
    pub s1_classes: Vec<Vec<usize>>,
    pub s2_cosets: Vec<Vec<usize>>,
}

impl SymmetricBlocks {
    pub fn new(group: &DicyclicGroup) -> Self {
        let a = group.abelian();
        let n = a.order();
        let mut seen = vec![false; n];
        let mut s1_classes = Vec::new();
        for g in 1..n {
            if !seen[g] {
                let neg = a.neg_idx(g);
                seen[g] = true;
                seen[neg] = true;
                s1_classes.push(if neg == g { vec![g] } else { vec![g, neg] });
            }
        }
        let mut seen = vec![false; n];
        let mut s2_cosets = Vec::new();
        for g in 0..n {
            if !seen[g] {
                let h = a.add_idx(g, group.y());
                seen[g] = true;
                seen[h] = true;
                s2_cosets.push(vec![g, h]);
            }
        }
        Self {
            s1_classes,
            s2_cosets,
        }
    }

    pub fn count(&self) -> u128 {
        1u128 << (self.s1_classes.len() + self.s2_cosets.len())
    }

    fn assemble(blocks: &[Vec<usize>], n: usize, mask: u64) -> ElementSet {
        ElementSet::from_indices(
            n,
            blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, b)| b.iter().copied()),
        )
    }

    pub fn sets(&self, n: usize, mask1: u64, mask2: u64) -> (ElementSet, ElementSet) {
        (
            Self::assemble(&self.s1_classes, n, mask1),
            Self::assemble(&self.s2_cosets, n, mask2),
        )
    }
}

/// All symmetric identity-free connection sets of `group`, `S₁` mask outer.
pub fn symmetric_connection_sets(group: &DicyclicGroup) -> Vec<ConnectionSet> {
    let blocks = SymmetricBlocks::new(group);
    let n = group.abelian().order();
    let mut out = Vec::new();
    for m1 in 0..1u64 << blocks.s1_classes.len() {
        for m2 in 0..1u64 << blocks.s2_cosets.len() {
            let (s1, s2) = blocks.sets(n, m1, m2);
            out.push(group.connection_set(s1, s2).expect("sets live in A"));
        }
    }
    out
}

#[derive(Debug, Clone)]
struct Instance {
    ctx: Arc<DicContext>,
    s: ConnectionSet,
}

fn instances(config: &SweepConfig) -> Result<Vec<Instance>> {
    let contexts = dicyclic_groups(config.max_dic_order)
        .into_iter()
        .map(|g| DicContext::new(g).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    if contexts.is_empty() {
        return Ok(Vec::new());
    }
    Ok(match config.mode {
        SweepMode::Exhaustive => contexts
            .iter()
            .flat_map(|ctx| {
                symmetric_connection_sets(ctx.group())
                    .into_iter()
                    .map(|s| Instance {
                        ctx: Arc::clone(ctx),
                        s,
                    })
            })
            .collect(),
        SweepMode::Random => {
            // group uniform over (A, y) pairs, then each block in or out
            // with probability 1/2
            let blocks: Vec<SymmetricBlocks> =
                contexts.iter().map(|c| SymmetricBlocks::new(c.group())).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            (0..config.sample_count)
                .map(|_| {
                    let i = rng.gen_range(0..contexts.len());
                    let b = &blocks[i];
                    let m1 = rng.gen_range(0..1u64 << b.s1_classes.len());
                    let m2 = rng.gen_range(0..1u64 << b.s2_cosets.len());
                    let n = contexts[i].group().abelian().order();
                    let (s1, s2) = b.sets(n, m1, m2);
                    Instance {
                        ctx: Arc::clone(&contexts[i]),
                        s: contexts[i].group().connection_set(s1, s2).expect("sets live in A"),
                    }
                })
                .collect()
        }
    })
}

/// One line of campaign JSONL.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub group: String,
    pub y: String,
    pub s1: String,
    pub s2: String,
    pub flags: ConnectionFlags,
    pub check: Check,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub oracle: BTreeMap<String, bool>,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

impl SweepRecord {
    pub fn from_verdict(
        ctx: &DicContext,
        s: &ConnectionSet,
        check: Check,
        verdict: &Verdict,
        micros: Option<u64>,
    ) -> Self {
        let a = ctx.group().abelian();
        Self {
            group: a.to_string(),
            y: a.format_element(ctx.group().y()),
            s1: a.format_set(&s.s1),
            s2: a.format_set(&s.s2),
            flags: s.flags(),
            check,
            holds: verdict.holds,
            witness: verdict.witnesses.first().cloned(),
            oracle: verdict
                .oracles
                .iter()
                .map(|o| (o.name.clone(), o.holds))
                .collect(),
            agreement: verdict.oracle_agreement.unwrap_or(true),
            micros,
        }
    }

    /// A claim-type check whose theorem failed on this instance.
    pub fn is_violation(&self) -> bool {
        !self.check.is_criterion() && !self.holds
    }
}

/// The distance sets tried for an instance of the given diameter: every
/// non-empty subset of `{1, …, diam}` when `diam ≤ limit`, otherwise all
/// singletons and all initial segments.
pub fn distance_sets(diam: u32, limit: u32) -> Vec<Vec<u32>> {
    if diam <= limit {
        (1u32..1 << diam)
            .map(|mask| (1..=diam).filter(|d| mask >> (d - 1) & 1 == 1).collect())
            .collect()
    } else {
        let mut out: Vec<Vec<u32>> = (1..=diam).map(|d| vec![d]).collect();
        out.extend((2..=diam).map(|k| (1..=k).collect()));
        out
    }
}

fn distance_powers_verdict(ctx: &DicContext, s: &ConnectionSet, limit: u32) -> Result<Verdict> {
    let diam = diameter(&cayley_graph(ctx.group(), s)?)?;
    let mut combined: Option<Verdict> = None;
    for depths in distance_sets(diam, limit) {
        let (_, _, mut v) = distance_power_sets(ctx, s, &depths)?;
        let label = format!("{depths:?}");
        for w in v.witnesses.iter_mut() {
            w.description = format!("D={label}: {}", w.description);
        }
        combined = Some(match combined {
            None => v,
            Some(mut acc) => {
                acc.holds &= v.holds;
                acc.oracle_agreement = Some(
                    acc.oracle_agreement.unwrap_or(true) && v.oracle_agreement.unwrap_or(true),
                );
                for (o, new) in acc.oracles.iter_mut().zip(&v.oracles) {
                    o.holds &= new.holds;
                }
                if acc.witnesses.is_empty() {
                    acc.witnesses = v.witnesses;
                }
                acc
            }
        });
    }
    Ok(combined.expect("diameter of a generating set is at least 1"))
}

fn applicable(check: Check, ctx: &DicContext, s: &ConnectionSet) -> bool {
    let a = ctx.group().abelian();
    let s2_closed = || a.negate_set(&s.s2) == s.s2;
    match check {
        Check::Integrality | Check::BooleanPair => true,
        Check::Cyclic => a.is_cyclic(),
        Check::DistanceIntegrality | Check::Proposition | Check::Sufficient => s.generating(),
        Check::Equivalence | Check::SymmetricS2 => s.generating() && s2_closed(),
        Check::DistancePowers => {
            s.generating() && a.in_boolean_algebra(&s.s1) && a.in_boolean_algebra(&s.s2)
        }
    }
}

/// Runs one check on one instance.
pub fn run_one(
    check: Check,
    ctx: &DicContext,
    s: &ConnectionSet,
    max_power_diameter: u32,
) -> Result<Verdict> {
    match check {
        Check::Integrality => check_integrality(ctx, s),
        Check::DistanceIntegrality => check_distance_integrality(ctx, s),
        Check::DistancePowers => distance_powers_verdict(ctx, s, max_power_diameter),
        Check::Equivalence => equivalence_theorem_check(ctx, s),
        Check::Proposition => proposition_conditions(ctx, s),
        Check::BooleanPair => boolean_pair_equivalence(ctx, s),
        Check::Sufficient => sufficient_condition_check(ctx, s),
        Check::SymmetricS2 => symmetric_s2_criterion(ctx, s),
        Check::Cyclic => cyclic_corollary_check(ctx, s),
    }
}

fn evaluate(inst: &Instance, config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let mut out = Vec::new();
    for &check in &config.checks {
        if !applicable(check, &inst.ctx, &inst.s) {
            continue;
        }
        let start = Instant::now();
        let verdict = run_one(check, &inst.ctx, &inst.s, config.max_power_diameter)?;
        let micros = config.timings.then(|| start.elapsed().as_micros() as u64);
        out.push(SweepRecord::from_verdict(&inst.ctx, &inst.s, check, &verdict, micros));
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub records: usize,
    pub holds: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GroupTally {
    pub instances: usize,
    pub integral: usize,
    pub distance_integral: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub group: String,
    pub y: String,
    pub s1: String,
    pub s2: String,
    /// Integrality re-verified on the exact adjacency spectrum.
    pub spectrum_integral: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub instances: usize,
    pub records: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub violations: usize,
    pub integral: usize,
    pub distance_integral: usize,
    pub asymmetric_integral: usize,
    pub per_check: BTreeMap<String, CheckTally>,
    pub per_group: BTreeMap<String, GroupTally>,
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub records: Vec<SweepRecord>,
    pub summary: CampaignSummary,
    pub catalog: Vec<CatalogEntry>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.summary.disagreements == 0 && self.summary.violations == 0
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("check,records,holds,agreements,disagreements,violations\n");
        for (name, t) in &self.summary.per_check {
            out.push_str(&format!(
                "{name},{},{},{},{},{}\n",
                t.records, t.holds, t.agreements, t.disagreements, t.violations
            ));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "total,{},,{},{},{}\n",
            s.records, s.agreements, s.disagreements, s.violations
        ));
        out
    }

    /// Writes `path` (JSONL) plus `*.summary.json`, `*.summary.csv` and
    /// `*.catalog.json` next to it.
    pub fn write(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Internal(format!("{}: {e}", path.display()));
        let mut f = fs::File::create(path).map_err(io)?;
        f.write_all(self.to_jsonl().as_bytes()).map_err(io)?;
        let summary = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        fs::write(sibling(path, "summary.json"), summary + "\n").map_err(io)?;
        fs::write(sibling(path, "summary.csv"), self.summary_csv()).map_err(io)?;
        let catalog = serde_json::to_string_pretty(&self.catalog).expect("catalog serializes");
        fs::write(sibling(path, "catalog.json"), catalog + "\n").map_err(io)?;
        Ok(())
    }
}

/// `out.jsonl` → `out.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn summarize(records: &[SweepRecord], instances: usize) -> CampaignSummary {
    let mut s = CampaignSummary {
        instances,
        records: records.len(),
        ..Default::default()
    };
    for r in records {
        let t = s.per_check.entry(r.check.name().to_string()).or_default();
        t.records += 1;
        t.holds += r.holds as usize;
        if r.agreement {
            t.agreements += 1;
            s.agreements += 1;
        } else {
            t.disagreements += 1;
            s.disagreements += 1;
        }
        if r.is_violation() {
            t.violations += 1;
            s.violations += 1;
        }
        let key = format!("{} y={}", r.group, r.y);
        match r.check {
            Check::Integrality => {
                let g = s.per_group.entry(key).or_default();
                g.instances += 1;
                if r.holds {
                    g.integral += 1;
                    s.integral += 1;
                }
            }
            Check::DistanceIntegrality if r.holds => {
                s.per_group.entry(key).or_default().distance_integral += 1;
                s.distance_integral += 1;
            }
            _ => {}
        }
    }
    s
}

/// Runs a campaign. Records come out in instance order regardless of `jobs`.
pub fn run_sweep(config: &SweepConfig) -> Result<CampaignReport> {
    config.validate()?;
    let insts = instances(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let per_instance: Vec<Vec<SweepRecord>> =
        pool.install(|| insts.par_iter().map(|i| evaluate(i, config)).collect::<Result<_>>())?;

    let mut catalog = Vec::new();
    for (inst, recs) in insts.iter().zip(&per_instance) {
        let a = inst.ctx.group().abelian();
        if a.negate_set(&inst.s.s2) == inst.s.s2 {
            continue;
        }
        if let Some(r) = recs.iter().find(|r| r.check == Check::Integrality && r.holds) {
            catalog.push(CatalogEntry {
                group: r.group.clone(),
                y: r.y.clone(),
                s1: r.s1.clone(),
                s2: r.s2.clone(),
                spectrum_integral: r.oracle.get("adjacency_spectrum").copied().unwrap_or(false),
            });
        }
    }
    let records: Vec<SweepRecord> = per_instance.into_iter().flatten().collect();
    let mut summary = summarize(&records, insts.len());
    summary.asymmetric_integral = catalog.len();
    Ok(CampaignReport {
        records,
        summary,
        catalog,
    })
}

/// Integral instances with `S₂ ≠ -S₂` found by the sweep.
pub fn catalog_asymmetric_integral(config: &SweepConfig) -> Result<Vec<CatalogEntry>> {
    let mut config = config.clone();
    config.checks = vec![Check::Integrality];
    Ok(run_sweep(&config)?.catalog)
}
