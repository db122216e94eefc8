//! Axiom checking: instance-level verdicts for all thirteen axioms, a seeded
//! problem generator biased toward the structured instances the axiom
//! hypotheses need, and randomized falsification with replayable witnesses.
//!
//! Every comparison is exact; a "pass" from the randomized search always
//! means "no witness in N trials", never a proof.

use crate::problem::{Allocation, Permutation, Problem, ProblemError, Team};
use crate::rational::{ratio, to_decimal_string, Rat};
use crate::rules::{Rule, RuleError};
use num_traits::Zero;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AxiomId {
    /// Relabeling the teams relabels the allocation the same way.
    An,
    /// Allocations are additive over matrix sums.
    Ad,
    /// Equal audiences against every third team force equal shares.
    Ete,
    /// ETE plus equal audiences in the two games the pair plays together.
    Wete,
    /// Equal claims force equal shares.
    Sym,
    /// Game-by-game domination against third teams forces a weakly larger share.
    Op,
    /// OP plus domination of the home game between the pair.
    Hop,
    /// OP plus domination of the away game between the pair.
    Aop,
    /// A team with no audience in any of its games receives nothing.
    Nt,
    /// A team involved in every positive-audience game receives its claim.
    Et,
    /// No team receives more than its claim.
    Ma,
    /// No team receives more than the total audience.
    Wub,
    /// No team receives a negative amount.
    Nn,
}

impl AxiomId {
    pub const ALL: [AxiomId; 13] = [
        AxiomId::An,
        AxiomId::Ad,
        AxiomId::Ete,
        AxiomId::Wete,
        AxiomId::Sym,
        AxiomId::Op,
        AxiomId::Hop,
        AxiomId::Aop,
        AxiomId::Nt,
        AxiomId::Et,
        AxiomId::Ma,
        AxiomId::Wub,
        AxiomId::Nn,
    ];

    pub fn is_pairwise(self) -> bool {
        matches!(
            self,
            AxiomId::Ete | AxiomId::Wete | AxiomId::Sym | AxiomId::Op | AxiomId::Hop | AxiomId::Aop
        )
    }

    pub fn is_team_level(self) -> bool {
        matches!(
            self,
            AxiomId::Nt | AxiomId::Et | AxiomId::Ma | AxiomId::Wub | AxiomId::Nn
        )
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AxiomId::An => "AN",
            AxiomId::Ad => "AD",
            AxiomId::Ete => "ETE",
            AxiomId::Wete => "WETE",
            AxiomId::Sym => "SYM",
            AxiomId::Op => "OP",
            AxiomId::Hop => "HOP",
            AxiomId::Aop => "AOP",
            AxiomId::Nt => "NT",
            AxiomId::Et => "ET",
            AxiomId::Ma => "MA",
            AxiomId::Wub => "WUB",
            AxiomId::Nn => "NN",
        };
        write!(f, "{name}")
    }
}

impl FromStr for AxiomId {
    type Err = AxiomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let id = match s.trim().to_ascii_uppercase().as_str() {
            "AN" => AxiomId::An,
            "AD" => AxiomId::Ad,
            "ETE" => AxiomId::Ete,
            "WETE" => AxiomId::Wete,
            "SYM" => AxiomId::Sym,
            "OP" => AxiomId::Op,
            "HOP" => AxiomId::Hop,
            "AOP" => AxiomId::Aop,
            "NT" => AxiomId::Nt,
            "ET" => AxiomId::Et,
            "MA" => AxiomId::Ma,
            "WUB" => AxiomId::Wub,
            "NN" => AxiomId::Nn,
            other => return Err(AxiomError::UnknownAxiom(other.to_string())),
        };
        Ok(id)
    }
}

#[derive(Debug, Error)]
pub enum AxiomError {
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
    #[error("{axiom} expects a {expected} instance")]
    WrongInstanceShape { axiom: AxiomId, expected: &'static str },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("{0} is not a pairwise axiom")]
    NotPairwiseAxiom(AxiomId),
    #[error("bad generator config: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// The data an axiom check runs on.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxiomInstance {
    /// A problem and a relabeling (AN).
    Relabeling { problem: Problem, sigma: Permutation },
    /// Two problems over the same teams (AD).
    Sum { left: Problem, right: Problem },
    /// A problem and an ordered pair (ETE, WETE, SYM, OP, HOP, AOP).
    Pair { problem: Problem, pair: (Team, Team) },
    /// A problem and one team (NT, ET, MA, WUB, NN).
    TeamCase { problem: Problem, team: Team },
}

/// A reproducible failure: re-running the check on `instance` yields the
/// same `lhs relation rhs` violation.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomWitness {
    pub axiom: AxiomId,
    pub rule: String,
    pub instance: AxiomInstance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub team: Option<Team>,
    #[serde(with = "crate::rational::serde_rat")]
    pub lhs: Rat,
    pub relation: &'static str,
    #[serde(with = "crate::rational::serde_rat")]
    pub rhs: Rat,
    pub description: String,
}

#[derive(Debug, Clone)]
pub enum CheckOutcome {
    Pass,
    Witness(Box<AxiomWitness>),
}

impl CheckOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    pub fn witness(self) -> Option<AxiomWitness> {
        match self {
            CheckOutcome::Pass => None,
            CheckOutcome::Witness(w) => Some(*w),
        }
    }
}

/// True when the ordered pair satisfies the axiom's hypothesis.
pub fn pair_qualifies(
    axiom: AxiomId,
    a: &Problem,
    i: Team,
    j: Team,
) -> Result<bool, AxiomError> {
    if i == j {
        return Ok(false);
    }
    let others = || a.teams().filter(move |&k| k != i && k != j);
    let ok = match axiom {
        AxiomId::Ete => others().all(|k| a.entry(i, k) == a.entry(j, k) && a.entry(k, i) == a.entry(k, j)),
        AxiomId::Wete => {
            a.entry(i, j) == a.entry(j, i)
                && others().all(|k| a.entry(i, k) == a.entry(j, k) && a.entry(k, i) == a.entry(k, j))
        }
        AxiomId::Sym => a.claim(i) == a.claim(j),
        AxiomId::Op => others().all(|k| a.entry(i, k) >= a.entry(j, k) && a.entry(k, i) >= a.entry(k, j)),
        AxiomId::Hop => {
            a.entry(i, j) >= a.entry(j, i)
                && others().all(|k| a.entry(i, k) >= a.entry(j, k) && a.entry(k, i) >= a.entry(k, j))
        }
        AxiomId::Aop => {
            a.entry(j, i) >= a.entry(i, j)
                && others().all(|k| a.entry(i, k) >= a.entry(j, k) && a.entry(k, i) >= a.entry(k, j))
        }
        other => return Err(AxiomError::NotPairwiseAxiom(other)),
    };
    Ok(ok)
}

/// The ordered pairs satisfying a pairwise axiom's hypothesis.
pub fn qualifying_pairs(axiom: AxiomId, a: &Problem) -> Result<Vec<(Team, Team)>, AxiomError> {
    if !axiom.is_pairwise() {
        return Err(AxiomError::NotPairwiseAxiom(axiom));
    }
    let mut pairs = Vec::new();
    for i in a.teams() {
        for j in a.teams() {
            if i != j && pair_qualifies(axiom, a, i, j)? {
                pairs.push((i, j));
            }
        }
    }
    Ok(pairs)
}

/// True when the team satisfies the axiom's per-team hypothesis. MA, WUB and
/// NN have no hypothesis; NT needs a null team and ET an essential team.
pub fn team_qualifies(axiom: AxiomId, a: &Problem, team: Team) -> Result<bool, AxiomError> {
    match axiom {
        AxiomId::Nt => Ok(a.is_null_team(team)),
        AxiomId::Et => Ok(a.is_essential_team(team)),
        AxiomId::Ma | AxiomId::Wub | AxiomId::Nn => Ok(true),
        other => Err(AxiomError::WrongInstanceShape { axiom: other, expected: "team-case" }),
    }
}

/// Checks one axiom instance exactly: `Pass`, a reproducible witness, or
/// `HypothesisNotMet` when the instance fails the axiom's precondition.
pub fn check_instance(
    axiom: AxiomId,
    rule: &Rule,
    inst: &AxiomInstance,
) -> Result<CheckOutcome, AxiomError> {
    match (axiom, inst) {
        (AxiomId::An, AxiomInstance::Relabeling { problem, sigma }) => {
            let base = rule.evaluate(problem)?;
            relabeling_outcome(rule, problem, &base, sigma, inst)
        }
        (AxiomId::Ad, AxiomInstance::Sum { left, right }) => {
            let joint = rule.evaluate(&left.add(right)?)?;
            let parts = &rule.evaluate(left)? + &rule.evaluate(right)?;
            for k in left.teams() {
                if joint.share(k) != parts.share(k) {
                    return Ok(witness(AxiomWitness {
                        axiom,
                        rule: rule.to_string(),
                        instance: inst.clone(),
                        team: Some(k),
                        lhs: joint.share(k).clone(),
                        relation: "=",
                        rhs: parts.share(k).clone(),
                        description: format!(
                            "share of team {k} on the summed problem is {}, the summed shares give {}",
                            to_decimal_string(joint.share(k)),
                            to_decimal_string(parts.share(k))
                        ),
                    }));
                }
            }
            Ok(CheckOutcome::Pass)
        }
        (ax, AxiomInstance::Pair { problem, pair: (i, j) }) if ax.is_pairwise() => {
            if !pair_qualifies(ax, problem, *i, *j)? {
                return Err(AxiomError::HypothesisNotMet(format!(
                    "pair ({i}, {j}) does not satisfy the {ax} hypothesis"
                )));
            }
            let alloc = rule.evaluate(problem)?;
            Ok(pair_outcome(ax, rule, &alloc, *i, *j, inst))
        }
        (ax, AxiomInstance::TeamCase { problem, team }) if ax.is_team_level() => {
            if !team_qualifies(ax, problem, *team)? {
                return Err(AxiomError::HypothesisNotMet(format!(
                    "team {team} does not satisfy the {ax} hypothesis"
                )));
            }
            let alloc = rule.evaluate(problem)?;
            Ok(team_outcome(ax, rule, problem, &alloc, *team, inst))
        }
        (axiom, _) => Err(AxiomError::WrongInstanceShape {
            axiom,
            expected: match axiom {
                AxiomId::An => "relabeling",
                AxiomId::Ad => "sum",
                a if a.is_pairwise() => "pair",
                _ => "team-case",
            },
        }),
    }
}

fn witness(w: AxiomWitness) -> CheckOutcome {
    CheckOutcome::Witness(Box::new(w))
}

fn relabeling_outcome(
    rule: &Rule,
    problem: &Problem,
    base: &Allocation,
    sigma: &Permutation,
    inst: &AxiomInstance,
) -> Result<CheckOutcome, AxiomError> {
    // The image problem renames team i to sigma(i): entry
    // (sigma(i), sigma(j)) of the image is entry (i, j) of the original.
    let image = rule.evaluate(&problem.permute(&sigma.inverse())?)?;
    for i in problem.teams() {
        let lhs = base.share(i);
        let rhs = image.share(sigma.image(i));
        if lhs != rhs {
            return Ok(witness(AxiomWitness {
                axiom: AxiomId::An,
                rule: rule.to_string(),
                instance: inst.clone(),
                team: Some(i),
                lhs: lhs.clone(),
                relation: "=",
                rhs: rhs.clone(),
                description: format!(
                    "team {i} gets {} but its image {} gets {} after relabeling",
                    to_decimal_string(lhs),
                    sigma.image(i),
                    to_decimal_string(rhs)
                ),
            }));
        }
    }
    Ok(CheckOutcome::Pass)
}

fn pair_outcome(
    axiom: AxiomId,
    rule: &Rule,
    alloc: &Allocation,
    i: Team,
    j: Team,
    inst: &AxiomInstance,
) -> CheckOutcome {
    let lhs = alloc.share(i);
    let rhs = alloc.share(j);
    let equality = matches!(axiom, AxiomId::Ete | AxiomId::Wete | AxiomId::Sym);
    let violated = if equality { lhs != rhs } else { lhs < rhs };
    if !violated {
        return CheckOutcome::Pass;
    }
    witness(AxiomWitness {
        axiom,
        rule: rule.to_string(),
        instance: inst.clone(),
        team: Some(i),
        lhs: lhs.clone(),
        relation: if equality { "=" } else { ">=" },
        rhs: rhs.clone(),
        description: format!(
            "qualifying pair ({i}, {j}): team {i} gets {}, team {j} gets {}",
            to_decimal_string(lhs),
            to_decimal_string(rhs)
        ),
    })
}

fn team_outcome(
    axiom: AxiomId,
    rule: &Rule,
    problem: &Problem,
    alloc: &Allocation,
    team: Team,
    inst: &AxiomInstance,
) -> CheckOutcome {
    let share = alloc.share(team);
    let (bound, relation, label): (Rat, &'static str, &str) = match axiom {
        AxiomId::Nt => (Rat::zero(), "=", "a null team must get 0"),
        AxiomId::Et => (problem.claim(team), "=", "an essential team must get its claim"),
        AxiomId::Ma => (problem.claim(team), "<=", "a team may get at most its claim"),
        AxiomId::Wub => (problem.total(), "<=", "a team may get at most the total"),
        AxiomId::Nn => (Rat::zero(), ">=", "a team may not get a negative amount"),
        _ => unreachable!("team-level axioms only"),
    };
    let violated = match relation {
        "=" => share != &bound,
        "<=" => share > &bound,
        ">=" => share < &bound,
        _ => unreachable!(),
    };
    if !violated {
        return CheckOutcome::Pass;
    }
    witness(AxiomWitness {
        axiom,
        rule: rule.to_string(),
        instance: inst.clone(),
        team: Some(team),
        lhs: share.clone(),
        relation,
        rhs: bound.clone(),
        description: format!(
            "{label}: team {team} gets {} against bound {}",
            to_decimal_string(share),
            to_decimal_string(&bound)
        ),
    })
}

/// Seeded generator settings for randomized falsification.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorConfig {
    /// Smallest team count sampled (at least 3).
    pub n_min: usize,
    /// Largest team count sampled, inclusive.
    pub n_max: usize,
    /// Magnitude cap for generated integer audiences.
    pub max_entry: u64,
    /// Probability that an entry is zeroed.
    pub sparsity: f64,
    /// Probability of each structure pass (team duplication, null team,
    /// essential team, single-side nullification) that makes equality
    /// hypotheses reachable.
    pub duplication_bias: f64,
    /// Trial budget.
    pub trials: u64,
    /// Base seed; trial `t` runs on a stream derived from `(seed, t)`.
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            n_min: 3,
            n_max: 6,
            max_entry: 1000,
            sparsity: 0.35,
            duplication_bias: 0.5,
            trials: 1000,
            seed: 1,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_teams(mut self, n_min: usize, n_max: usize) -> Self {
        self.n_min = n_min;
        self.n_max = n_max;
        self
    }

    pub fn validate(&self) -> Result<(), AxiomError> {
        if self.trials < 1 {
            return Err(AxiomError::BadConfig("trial count must be at least 1".into()));
        }
        if self.n_min < 3 {
            return Err(AxiomError::BadConfig("n_min must be at least 3".into()));
        }
        if self.n_min > self.n_max {
            return Err(AxiomError::BadConfig("n_min must not exceed n_max".into()));
        }
        for (name, p) in [("sparsity", self.sparsity), ("duplication_bias", self.duplication_bias)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(AxiomError::BadConfig(format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }

    /// The independent random stream for one trial; trial outcomes do not
    /// depend on the order trials run in.
    pub fn rng_for_trial(&self, trial: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(splitmix64(self.seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws one problem. Entries are mostly integers with occasional small
/// fractions; structure passes plant duplicated, null, essential and
/// one-sided teams so equality hypotheses occur with useful frequency.
pub fn generate_problem(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, forced_n: Option<usize>) -> Problem {
    let n = forced_n.unwrap_or_else(|| rng.random_range(cfg.n_min..=cfg.n_max));
    // A quarter of the trials stay tiny so threshold rules and equalities
    // are exercised.
    let cap = if rng.random_bool(0.25) { cfg.max_entry.min(4) } else { cfg.max_entry };
    let mut m = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || rng.random_bool(cfg.sparsity) {
                continue;
            }
            let value = rng.random_range(0..=cap) as i64;
            m[i][j] = if rng.random_bool(0.2) {
                ratio(value, rng.random_range(2..=6))
            } else {
                ratio(value, 1)
            };
        }
    }
    if rng.random_bool(cfg.duplication_bias) {
        duplicate_team(rng, &mut m);
    }
    if rng.random_bool(cfg.duplication_bias * 0.4) {
        let t = rng.random_range(0..n);
        for k in 0..n {
            m[t][k] = Rat::zero();
            m[k][t] = Rat::zero();
        }
    }
    if rng.random_bool(cfg.duplication_bias * 0.3) {
        let t = rng.random_range(0..n);
        for i in 0..n {
            for j in 0..n {
                if i != t && j != t {
                    m[i][j] = Rat::zero();
                }
            }
        }
    }
    if rng.random_bool(cfg.duplication_bias * 0.4) {
        let t = rng.random_range(0..n);
        let home = rng.random_bool(0.5);
        for k in 0..n {
            if home {
                m[t][k] = Rat::zero();
            } else {
                m[k][t] = Rat::zero();
            }
        }
    }
    Problem::new(m).expect("generated matrix is valid")
}

/// Copies one team's games against third parties onto another team, and
/// half the time also equalizes the two games the pair plays together.
fn duplicate_team(rng: &mut ChaCha8Rng, m: &mut [Vec<Rat>]) {
    let n = m.len();
    let src = rng.random_range(0..n);
    let mut dst = rng.random_range(0..n);
    if dst == src {
        dst = (dst + 1) % n;
    }
    for k in 0..n {
        if k != src && k != dst {
            m[dst][k] = m[src][k].clone();
            m[k][dst] = m[k][src].clone();
        }
    }
    if rng.random_bool(0.5) {
        m[dst][src] = m[src][dst].clone();
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut mapping: Vec<usize> = (1..=n).collect();
    mapping.shuffle(rng);
    Permutation::new(mapping).expect("shuffled identity is bijective")
}

/// Number of relabelings sampled per trial when `n! ` is too large to
/// enumerate (n > 4).
const SAMPLED_PERMUTATIONS: usize = 12;

/// Outcome of a randomized search for an axiom violation.
#[derive(Debug, Clone)]
pub enum FalsifyOutcome {
    /// Lowest-index trial that produced a witness.
    Witness { witness: Box<AxiomWitness>, trial: u64 },
    /// No witness in the full trial budget.
    Exhausted { trials: u64 },
}

impl FalsifyOutcome {
    pub fn witness(&self) -> Option<&AxiomWitness> {
        match self {
            FalsifyOutcome::Witness { witness, .. } => Some(witness),
            FalsifyOutcome::Exhausted { .. } => None,
        }
    }
}

/// Searches seeded random instances for a violation of one axiom.
/// Deterministic for a fixed config: each trial draws from its own derived
/// stream and the first (lowest-index) witness is returned.
pub fn falsify(
    axiom: AxiomId,
    rule: &Rule,
    cfg: &GeneratorConfig,
) -> Result<FalsifyOutcome, AxiomError> {
    cfg.validate()?;
    for trial in 0..cfg.trials {
        let mut rng = cfg.rng_for_trial(trial);
        if let Some(w) = run_trial(axiom, rule, cfg, &mut rng)? {
            return Ok(FalsifyOutcome::Witness { witness: Box::new(w), trial });
        }
    }
    Ok(FalsifyOutcome::Exhausted { trials: cfg.trials })
}

fn run_trial(
    axiom: AxiomId,
    rule: &Rule,
    cfg: &GeneratorConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Option<AxiomWitness>, AxiomError> {
    let problem = generate_problem(rng, cfg, None);
    match axiom {
        AxiomId::An => {
            let base = rule.evaluate(&problem)?;
            let n = problem.n();
            let sigmas = if n <= 4 {
                Permutation::all(n)
            } else {
                (0..SAMPLED_PERMUTATIONS).map(|_| random_permutation(rng, n)).collect()
            };
            for sigma in sigmas {
                let inst = AxiomInstance::Relabeling { problem: problem.clone(), sigma: sigma.clone() };
                if let CheckOutcome::Witness(w) =
                    relabeling_outcome(rule, &problem, &base, &sigma, &inst)?
                {
                    return Ok(Some(*w));
                }
            }
        }
        AxiomId::Ad => {
            let other = generate_problem(rng, cfg, Some(problem.n()));
            let inst = AxiomInstance::Sum { left: problem, right: other };
            if let CheckOutcome::Witness(w) = check_instance(axiom, rule, &inst)? {
                return Ok(Some(*w));
            }
        }
        ax if ax.is_pairwise() => {
            let alloc = rule.evaluate(&problem)?;
            for (i, j) in qualifying_pairs(ax, &problem)? {
                let inst = AxiomInstance::Pair { problem: problem.clone(), pair: (i, j) };
                if let CheckOutcome::Witness(w) = pair_outcome(ax, rule, &alloc, i, j, &inst) {
                    return Ok(Some(*w));
                }
            }
        }
        ax => {
            let alloc = rule.evaluate(&problem)?;
            for team in problem.teams() {
                if !team_qualifies(ax, &problem, team)? {
                    continue;
                }
                let inst = AxiomInstance::TeamCase { problem: problem.clone(), team };
                if let CheckOutcome::Witness(w) =
                    team_outcome(ax, rule, &problem, &alloc, team, &inst)
                {
                    return Ok(Some(*w));
                }
            }
        }
    }
    Ok(None)
}

/// One axiom's line in an audit report.
#[derive(Debug, Clone, Serialize)]
pub struct AuditEntry {
    pub id: AxiomId,
    /// `"pass"` means no witness within the trial budget.
    pub outcome: &'static str,
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AxiomWitness>,
}

impl AuditEntry {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Replayable multi-axiom audit of one rule.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub rule: String,
    pub seed: u64,
    pub config: GeneratorConfig,
    #[serde(rename = "axioms")]
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn entry(&self, id: AxiomId) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(AuditEntry::passed)
    }
}

/// Runs `falsify` for each axiom with the same seed and assembles a report.
pub fn audit(rule: &Rule, axioms: &[AxiomId], cfg: &GeneratorConfig) -> Result<AuditReport, AxiomError> {
    let mut entries = Vec::with_capacity(axioms.len());
    for &axiom in axioms {
        let entry = match falsify(axiom, rule, cfg)? {
            FalsifyOutcome::Witness { witness, trial } => AuditEntry {
                id: axiom,
                outcome: "fail",
                trials: trial + 1,
                witness: Some(*witness),
            },
            FalsifyOutcome::Exhausted { trials } => AuditEntry {
                id: axiom,
                outcome: "pass",
                trials,
                witness: None,
            },
        };
        entries.push(entry);
    }
    Ok(AuditReport {
        rule: rule.to_string(),
        seed: cfg.seed,
        config: cfg.clone(),
        entries,
    })
}
