//! Wall-crossing simulator: a population of signed, weighted configurations
//! evolves through codimension-one events, and the total weighted count must
//! stay constant.
//!
//! Each configuration carries a symmetric matrix of pairwise linking values
//! and contributes `sign * weight` to the total, where the weight is the
//! forested form of the matrix. A wall event bumps one matrix entry of a
//! target configuration by one and simultaneously creates (or destroys) a
//! fused configuration whose matrix merges the two touched rows by ring
//! addition, matching the edge-vector pushforward. The contraction identity
//! of the forested form makes the two effects cancel exactly, so a valid
//! scenario always has a constant trace; a non-constant trace indicates a
//! sign or bookkeeping inconsistency in the input and is reported as an
//! invariant breach by the callers that check for it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forested::forested_form_auto;
use crate::link::LinkingMatrix;
use crate::ring::{Ring, RingElement};
use crate::rng::Rng64;

/// Bounds honored by the random scenario generator.
pub const MAX_SCENARIO_COMPONENTS: usize = 6;
pub const MAX_SCENARIO_EVENTS: usize = 32;

/// Orientation sign of a configuration, or the direction of a linking jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_int(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidInput(format!("sign must be +1 or -1, got {v}"))),
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Formal class label attached to a component: a multiset of atomic labels,
/// so that merging two components merges their labels. Rendered `a+b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassLabel {
    atoms: Vec<String>,
}

impl ClassLabel {
    pub fn atom(name: &str) -> Result<ClassLabel> {
        if name.is_empty() || name.contains('+') || name.contains(char::is_whitespace) {
            return Err(Error::InvalidInput(format!("bad class label {name:?}")));
        }
        Ok(ClassLabel { atoms: vec![name.to_string()] })
    }

    pub fn parse(s: &str) -> Result<ClassLabel> {
        let mut atoms = Vec::new();
        for part in s.split('+') {
            atoms.extend(ClassLabel::atom(part.trim())?.atoms);
        }
        atoms.sort();
        Ok(ClassLabel { atoms })
    }

    pub fn merge(&self, other: &ClassLabel) -> ClassLabel {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        atoms.sort();
        ClassLabel { atoms }
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.atoms.join("+"))
    }
}

/// A weighted disc-boundary configuration: `n` components with class labels,
/// a symmetric linking matrix and an orientation sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub id: String,
    pub classes: Vec<ClassLabel>,
    pub matrix: LinkingMatrix,
    pub sign: Sign,
}

impl Configuration {
    pub fn new(
        id: String,
        classes: Vec<ClassLabel>,
        matrix: LinkingMatrix,
        sign: Sign,
    ) -> Result<Configuration> {
        if classes.len() != matrix.n() {
            return Err(Error::InvalidInput(format!(
                "{} class labels for a matrix of size {}",
                classes.len(),
                matrix.n()
            )));
        }
        Ok(Configuration { id, classes, matrix, sign })
    }

    pub fn component_count(&self) -> usize {
        self.classes.len()
    }

    /// Signed weight contribution: sign times the forested form of the
    /// linking matrix.
    pub fn weight(&self, ring: &Ring) -> Result<RingElement> {
        if self.matrix.ring() != ring {
            return Err(Error::RingMismatch(format!(
                "configuration {} uses ring {}, population uses {}",
                self.id,
                self.matrix.ring().spec(),
                ring.spec()
            )));
        }
        let w = forested_form_auto(&self.matrix.to_edge_vector()?)?;
        match self.sign {
            Sign::Plus => Ok(w),
            Sign::Minus => ring.neg(&w),
        }
    }
}

/// A codimension-one event: the linking value between components `i` and `j`
/// of the target jumps by one, and a fused configuration with the two
/// components merged is created (`delta` positive) or destroyed (`delta`
/// negative) at the wall.
#[derive(Debug, Clone, PartialEq)]
pub struct WallEvent {
    pub time: BigRational,
    pub target: String,
    pub pair: (usize, usize),
    pub delta: Sign,
    pub fused: Configuration,
}

/// A one-parameter scenario: an initial population and a time-ordered list
/// of wall events.
#[derive(Debug, Clone, PartialEq)]
pub struct WallScenario {
    pub ring: Ring,
    pub initial: Vec<Configuration>,
    pub events: Vec<WallEvent>,
}

/// Sum of signed weights over the population. Configurations are stored
/// unordered and each appears once, so no factorial normalization enters and
/// rings without inverses of factorials are fully supported.
pub fn total_weight(ring: &Ring, population: &[Configuration]) -> Result<RingElement> {
    let mut total = ring.zero();
    for config in population {
        total = ring.add(&total, &config.weight(ring)?)?;
    }
    Ok(total)
}

/// The structural content the fused configuration must have: merged class
/// labels and the row/column merge of the post-jump matrix (equivalently the
/// edge-vector pushforward, whose kernel absorbs the jumped entry).
fn expected_fused(
    target: &Configuration,
    post_matrix: &LinkingMatrix,
    pair: (usize, usize),
) -> Result<(Vec<ClassLabel>, LinkingMatrix)> {
    let (i, j) = pair;
    let merged_matrix = post_matrix.merge_rows(i, j)?;
    let (lo, hi) = (i.min(j), i.max(j));
    let mut classes = Vec::with_capacity(target.classes.len() - 1);
    for (k, label) in target.classes.iter().enumerate() {
        if k == lo {
            classes.push(label.merge(&target.classes[hi]));
        } else if k != hi {
            classes.push(label.clone());
        }
    }
    Ok((classes, merged_matrix))
}

/// Apply one event to the population in place.
///
/// Validates that the target exists, that the pair is in range, and that the
/// event's fused configuration matches the contraction recipe (classes and
/// matrix). The fused configuration's sign is taken from the event; an
/// inconsistent sign shows up later as a non-constant trace.
pub fn apply_event(
    ring: &Ring,
    population: &mut Vec<Configuration>,
    event: &WallEvent,
) -> Result<()> {
    let target_idx = population
        .iter()
        .position(|c| c.id == event.target)
        .ok_or_else(|| Error::EventRejected(format!("missing target {:?}", event.target)))?;
    let target = &population[target_idx];
    let n = target.component_count();
    let (i, j) = event.pair;
    if n < 2 {
        return Err(Error::EventRejected(format!(
            "target {:?} has a single component",
            event.target
        )));
    }
    if i >= j || j >= n {
        return Err(Error::EventRejected(format!(
            "pair ({i},{j}) out of range for {n} components"
        )));
    }
    let bump = ring.from_int(event.delta.as_int());
    let new_entry = ring.add(target.matrix.entry(i, j)?, &bump)?;
    let post_matrix = target.matrix.with_entry(i, j, new_entry)?;
    let (classes, merged_matrix) = expected_fused(target, &post_matrix, (i, j))?;
    if event.fused.classes != classes {
        return Err(Error::EventRejected(
            "fused classes do not merge the touched pair".into(),
        ));
    }
    if event.fused.matrix != merged_matrix {
        return Err(Error::EventRejected(
            "fused matrix mismatches the contraction recipe".into(),
        ));
    }
    match event.delta {
        Sign::Plus => {
            if population.iter().any(|c| c.id == event.fused.id) {
                return Err(Error::EventRejected(format!(
                    "fused id {:?} already present",
                    event.fused.id
                )));
            }
            population[target_idx].matrix = post_matrix;
            population.push(event.fused.clone());
        }
        Sign::Minus => {
            let fused_idx = population
                .iter()
                .position(|c| c.id == event.fused.id)
                .ok_or_else(|| {
                    Error::EventRejected(format!(
                        "fused configuration {:?} not present for removal",
                        event.fused.id
                    ))
                })?;
            if population[fused_idx] != event.fused {
                return Err(Error::EventRejected(format!(
                    "stored configuration {:?} differs from the event's fused state",
                    event.fused.id
                )));
            }
            population[target_idx].matrix = post_matrix;
            population.remove(fused_idx);
        }
    }
    Ok(())
}

/// Run a scenario: validate it, apply the events in time order, and return
/// the total weight at time zero and after every event. For a consistent
/// scenario every emitted weight is equal.
pub fn run_scenario(scenario: &WallScenario) -> Result<Vec<(BigRational, RingElement)>> {
    let mut ids = BTreeSet::new();
    for config in &scenario.initial {
        if config.component_count() == 0 {
            return Err(Error::InvalidScenario(format!("configuration {:?} is empty", config.id)));
        }
        if config.matrix.ring() != &scenario.ring {
            return Err(Error::InvalidScenario(format!(
                "configuration {:?} uses ring {}",
                config.id,
                config.matrix.ring().spec()
            )));
        }
        if !ids.insert(config.id.clone()) {
            return Err(Error::InvalidScenario(format!("duplicate id {:?}", config.id)));
        }
    }
    let mut times = BTreeSet::new();
    for event in &scenario.events {
        if event.time <= BigRational::zero() || event.time >= BigRational::from_integer(BigInt::from(1)) {
            return Err(Error::InvalidScenario(format!(
                "event time {} outside (0,1)",
                event.time
            )));
        }
        if !times.insert(event.time.clone()) {
            return Err(Error::InvalidScenario(format!("duplicate event time {}", event.time)));
        }
    }
    let mut ordered: Vec<&WallEvent> = scenario.events.iter().collect();
    ordered.sort_by(|a, b| a.time.cmp(&b.time));

    let mut population = scenario.initial.clone();
    let mut trace = Vec::with_capacity(ordered.len() + 1);
    trace.push((BigRational::zero(), total_weight(&scenario.ring, &population)?));
    for event in ordered {
        apply_event(&scenario.ring, &mut population, event)
            .map_err(|e| Error::EventRejected(format!("at time {}: {e}", event.time)))?;
        trace.push((event.time.clone(), total_weight(&scenario.ring, &population)?));
    }
    Ok(trace)
}

/// True when every weight in the trace equals the first one.
pub fn trace_is_constant(trace: &[(BigRational, RingElement)]) -> bool {
    trace.windows(2).all(|w| w[0].1 == w[1].1)
}

/// Size knobs for the random scenario generator.
#[derive(Debug, Clone)]
pub struct ScenarioParams {
    pub initial_configs: usize,
    pub max_components: usize,
    pub events: usize,
    pub magnitude: u64,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams { initial_configs: 3, max_components: 4, events: 12, magnitude: 5 }
    }
}

/// Deterministic pseudo-random scenario. Every event is valid by
/// construction: the generator simulates the population as it goes, creates
/// fused configurations by the contraction recipe with the cancelling sign,
/// and occasionally emits the exact mirror of the event it just produced.
pub fn generate_random_scenario(
    seed: u64,
    ring: &Ring,
    params: &ScenarioParams,
) -> Result<WallScenario> {
    if params.max_components == 0 || params.max_components > MAX_SCENARIO_COMPONENTS {
        return Err(Error::Bounds(format!(
            "max_components must be 1..={MAX_SCENARIO_COMPONENTS}"
        )));
    }
    if params.events > MAX_SCENARIO_EVENTS {
        return Err(Error::Bounds(format!("events must be <= {MAX_SCENARIO_EVENTS}")));
    }
    if params.events > 0 && params.max_components < 2 {
        return Err(Error::Bounds(
            "events need at least one configuration with two components".into(),
        ));
    }
    let mut rng = Rng64::new(seed);
    let mut initial = Vec::new();
    let config_count = params.initial_configs.max(1);
    for k in 0..config_count {
        let n = if k == 0 && params.events > 0 {
            2 + rng.below((params.max_components - 1) as u64) as usize
        } else {
            1 + rng.below(params.max_components as u64) as usize
        };
        let mut matrix = LinkingMatrix::zero(ring.clone(), n)?;
        for a in 0..n {
            for b in a + 1..n {
                matrix = matrix.with_entry(a, b, ring.random_element(&mut rng, params.magnitude))?;
            }
        }
        let classes = (0..n)
            .map(|_| ClassLabel::atom(&format!("d{}", rng.below(6))))
            .collect::<Result<Vec<_>>>()?;
        let sign = if rng.chance(1, 2) { Sign::Plus } else { Sign::Minus };
        initial.push(Configuration::new(format!("c{k}"), classes, matrix, sign)?);
    }

    let mut population = initial.clone();
    let mut events = Vec::with_capacity(params.events);
    let mut fused_counter = 0usize;
    let mut mirror_candidate: Option<WallEvent> = None;
    for k in 0..params.events {
        let time = BigRational::new(BigInt::from(k as i64 + 1), BigInt::from(params.events as i64 + 1));
        let event = match mirror_candidate.take() {
            Some(prev) if rng.chance(1, 3) => WallEvent {
                time,
                target: prev.target.clone(),
                pair: prev.pair,
                delta: Sign::Minus,
                fused: prev.fused.clone(),
            },
            _ => {
                let candidates: Vec<usize> = population
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.component_count() >= 2)
                    .map(|(idx, _)| idx)
                    .collect();
                let target_idx = candidates[rng.below(candidates.len() as u64) as usize];
                let target = &population[target_idx];
                let n = target.component_count();
                let i = rng.below(n as u64 - 1) as usize;
                let j = i + 1 + rng.below((n - i - 1) as u64) as usize;
                let bump = ring.one();
                let new_entry = ring.add(target.matrix.entry(i, j)?, &bump)?;
                let post_matrix = target.matrix.with_entry(i, j, new_entry)?;
                let (classes, merged_matrix) = expected_fused(target, &post_matrix, (i, j))?;
                let fused = Configuration::new(
                    format!("f{fused_counter}"),
                    classes,
                    merged_matrix,
                    target.sign.flipped(),
                )?;
                fused_counter += 1;
                WallEvent {
                    time,
                    target: target.id.clone(),
                    pair: (i, j),
                    delta: Sign::Plus,
                    fused,
                }
            }
        };
        apply_event(ring, &mut population, &event)
            .expect("generated events are valid by construction");
        if event.delta == Sign::Plus {
            mirror_candidate = Some(event.clone());
        }
        events.push(event);
    }

    Ok(WallScenario { ring: ring.clone(), initial, events })
}
