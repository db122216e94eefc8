//! Unit-matrix signatures and family regions.
//!
//! An additive, anonymous rule is pinned down by the three shares it assigns
//! on a single-viewer problem: home `x'`, away `y'`, outsider
//! `z = (1 - x' - y') / (n - 2)`. `decompose` reads that signature off a
//! rule, `classify` lists every family region containing a signature with
//! the derived family parameter, and `reconstruct` turns a signature back
//! into an evaluatable rule.

use crate::axioms::{AxiomError, GeneratorConfig};
use crate::problem::{Problem, Team};
use crate::rational::{rat, to_token, Rat};
use crate::rules::{Rule, RuleError, RuleSpec, UnitValues};
use num_traits::{One, Signed};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;
use std::fmt;

/// The unit-matrix signature of a rule, plus whether the signature was in
/// fact identical across every ordered pair and outsider.
#[derive(Debug, Clone)]
pub struct Decomposition {
    n: usize,
    x: Rat,
    y: Rat,
    z: Rat,
    consistent: bool,
    table: UnitValues,
}

impl Decomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Home share on a unit problem (from the first pair when inconsistent).
    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn z(&self) -> &Rat {
        &self.z
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// The full per-pair table; the evidence when `consistent` is false.
    pub fn table(&self) -> &UnitValues {
        &self.table
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let fields = if self.consistent { 5 } else { 6 };
        let mut s = serializer.serialize_struct("Decomposition", fields)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("x", &to_token(&self.x))?;
        s.serialize_field("y", &to_token(&self.y))?;
        s.serialize_field("z", &to_token(&self.z))?;
        s.serialize_field("consistent", &self.consistent)?;
        if !self.consistent {
            s.serialize_field("table", &unit_values_to_json(&self.table))?;
        }
        s.end()
    }
}

/// Tabulates the rule on every unit problem of size `n` and reports the
/// common signature. Inconsistency (a non-anonymous or non-additive rule)
/// is data, not an error: the flag drops and the table carries the detail.
pub fn decompose(rule: &Rule, n: usize) -> Result<Decomposition, RuleError> {
    let table = rule.unit_values(n)?;
    let first = &table.entries()[0];
    let x = first.home_share.clone();
    let y = first.away_share.clone();
    let z = first.outsider_shares[0].1.clone();
    let consistent = table.is_anonymous();
    Ok(Decomposition { n, x, y, z, consistent, table })
}

pub fn unit_values_to_json(table: &UnitValues) -> Value {
    let entries: Vec<Value> = table
        .entries()
        .iter()
        .map(|e| {
            serde_json::json!({
                "home": e.home.0,
                "away": e.away.0,
                "home_share": to_token(&e.home_share),
                "away_share": to_token(&e.away_share),
                "outsiders": e
                    .outsider_shares
                    .iter()
                    .map(|(k, s)| serde_json::json!({"team": k.0, "share": to_token(s)}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({ "n": table.n(), "entries": entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    Uniform,
    EqualSplit,
    ConcedeAndDivide,
    Split,
    GeneralizedSplit,
    Ec,
    Uc,
    Ue,
    ExtendedEc,
    ExtendedUc,
    ExtendedUe,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FamilyId::Uniform => "uniform",
            FamilyId::EqualSplit => "equal-split",
            FamilyId::ConcedeAndDivide => "concede-and-divide",
            FamilyId::Split => "split",
            FamilyId::GeneralizedSplit => "generalized-split",
            FamilyId::Ec => "ec",
            FamilyId::Uc => "uc",
            FamilyId::Ue => "ue",
            FamilyId::ExtendedEc => "extended-ec",
            FamilyId::ExtendedUc => "extended-uc",
            FamilyId::ExtendedUe => "extended-ue",
        };
        write!(f, "{name}")
    }
}

/// One family containing a signature, with its derived parameter and the
/// axiom combination that pins the family down.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyMembership {
    pub family: FamilyId,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_rat")]
    pub lambda: Option<Rat>,
    pub characterization: &'static str,
}

fn ser_opt_rat<S: Serializer>(v: &Option<Rat>, ser: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => ser.serialize_str(&to_token(r)),
        None => ser.serialize_none(),
    }
}

/// A classified signature: the implied outsider share, the general-rule
/// parameters realizing it, and every family region containing it.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rat")]
    pub x: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub y: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub z: Rat,
    #[serde(with = "crate::rational::serde_rat_vec")]
    pub general: Vec<Rat>,
    pub memberships: Vec<FamilyMembership>,
}

impl Classification {
    pub fn contains(&self, family: FamilyId) -> bool {
        self.memberships.iter().any(|m| m.family == family)
    }

    pub fn membership(&self, family: FamilyId) -> Option<&FamilyMembership> {
        self.memberships.iter().find(|m| m.family == family)
    }
}

/// Lists every family whose region contains the signature `(x', y')` for
/// `n` teams (`n >= 3`). Regions genuinely overlap, so the result is a set;
/// boundaries are closed exactly as the definitions state them.
pub fn classify(x: &Rat, y: &Rat, n: usize) -> Classification {
    assert!(n >= 3, "signatures are defined for 3 or more teams");
    let nr = rat(n as i64);
    let one = Rat::one();
    let half = rat(1) / rat(2);
    let z = (&one - x - y) / rat(n as i64 - 2);
    let max = if x >= y { x } else { y };
    let min = if x >= y { y } else { x };
    let unit = |v: &Rat| !v.is_negative() && v <= &one;
    let mut memberships = Vec::new();

    let diagonal = x == y;
    if diagonal && x == &(&one / &nr) {
        memberships.push(FamilyMembership {
            family: FamilyId::Uniform,
            lambda: None,
            characterization: "signature x' = y' = 1/n of the uniform rule",
        });
    }
    if diagonal && x == &half {
        memberships.push(FamilyMembership {
            family: FamilyId::EqualSplit,
            lambda: None,
            characterization: "signature x' = y' = 1/2 of the equal-split rule",
        });
    }
    if diagonal && x == &one {
        memberships.push(FamilyMembership {
            family: FamilyId::ConcedeAndDivide,
            lambda: None,
            characterization: "additivity + anonymity + essential team",
        });
    }
    if x + y == one {
        if unit(x) && unit(y) {
            memberships.push(FamilyMembership {
                family: FamilyId::Split,
                lambda: Some(y.clone()),
                characterization:
                    "additivity + anonymity + null team + a bound axiom (maximum \
                     aspirations, weak upper bound or non-negativity)",
            });
        }
        memberships.push(FamilyMembership {
            family: FamilyId::GeneralizedSplit,
            lambda: Some(y.clone()),
            characterization: "additivity + anonymity + null team",
        });
    }
    if diagonal && x >= &half && x <= &one {
        memberships.push(FamilyMembership {
            family: FamilyId::Ec,
            lambda: Some(rat(2) - rat(2) * x),
            characterization: "additivity + anonymity + maximum aspirations + order preservation",
        });
    }
    if diagonal && x >= &(&one / &nr) && x <= &one {
        memberships.push(FamilyMembership {
            family: FamilyId::Uc,
            lambda: Some(&nr * (&one - x) / rat(n as i64 - 1)),
            characterization: "additivity + anonymity + order preservation + weak upper bound",
        });
    }
    if diagonal && x >= &(&one / &nr) && x <= &half {
        memberships.push(FamilyMembership {
            family: FamilyId::Ue,
            lambda: Some(&nr * (&one - rat(2) * x) / rat(n as i64 - 2)),
            characterization: "additivity + anonymity + order preservation + non-negativity",
        });
    }
    if unit(x) && unit(y) && x + y >= one {
        let lambda = rat(2) - rat(2) * max;
        debug_assert!(!lambda.is_negative() && lambda <= one);
        memberships.push(FamilyMembership {
            family: FamilyId::ExtendedEc,
            lambda: Some(lambda),
            characterization: "additivity + anonymity + maximum aspirations",
        });
    }
    if max >= &(&one / &nr) && max <= &one {
        let min_low = (&one - max) / rat(n as i64 - 1);
        if min >= &min_low && min <= max {
            let lambda = &nr * (&one - max) / rat(n as i64 - 1);
            debug_assert!(!lambda.is_negative() && lambda <= one);
            memberships.push(FamilyMembership {
                family: FamilyId::ExtendedUc,
                lambda: Some(lambda),
                characterization:
                    "additivity + anonymity + home/away order preservation + weak upper bound",
            });
        }
        if !min.is_negative() && min <= &(&one - max) {
            let lambda = &nr * (&one - rat(2) * max) / rat(n as i64 - 2);
            debug_assert!(lambda >= -&nr / rat(n as i64 - 2) && lambda <= one);
            memberships.push(FamilyMembership {
                family: FamilyId::ExtendedUe,
                lambda: Some(lambda),
                characterization:
                    "additivity + anonymity + home/away order preservation + non-negativity",
            });
        }
    }

    Classification {
        n,
        x: x.clone(),
        y: y.clone(),
        general: vec![x - &z, y - &z, z.clone()],
        z,
        memberships,
    }
}

/// The additive rule realizing a signature: on every unit problem the home
/// team gets `x'`, the away team `y'` and each outsider
/// `(1 - x' - y') / (n - 2)`.
pub fn reconstruct(x: &Rat, y: &Rat, n: usize) -> Result<Rule, RuleError> {
    if n < 3 {
        return Err(RuleError::Problem(crate::problem::ProblemError::TooFewTeams { n }));
    }
    Rule::with_team_count(RuleSpec::AdditiveExtension { x: x.clone(), y: y.clone() }, n)
}

/// Outcome of an extensional-equality search between two rules.
#[derive(Debug, Clone)]
pub enum Equivalence {
    /// Unit tables agree at every sampled size and no random problem
    /// separated the rules. Conclusive for additive + anonymous rules,
    /// evidence otherwise.
    Same { trials: u64 },
    Differs {
        problem: Problem,
        team: Team,
        left: Rat,
        right: Rat,
    },
}

impl Equivalence {
    pub fn is_same(&self) -> bool {
        matches!(self, Equivalence::Same { .. })
    }
}

/// Compares two rules: first their unit tables for each size in the config
/// range (exact, and conclusive for additive + anonymous rules), then the
/// allocations on seeded random problems.
pub fn equivalent(
    left: &Rule,
    right: &Rule,
    cfg: &GeneratorConfig,
) -> Result<Equivalence, AxiomError> {
    cfg.validate()?;
    for n in cfg.n_min..=cfg.n_max {
        let lt = left.unit_values(n)?;
        let rt = right.unit_values(n)?;
        for (le, re) in lt.entries().iter().zip(rt.entries()) {
            if le != re {
                let problem = Problem::unit(n, le.home, le.away)?;
                return Ok(first_difference(left, right, problem)?.expect("entries differ"));
            }
        }
    }
    for trial in 0..cfg.trials {
        let mut rng = cfg.rng_for_trial(trial);
        let problem = crate::axioms::generate_problem(&mut rng, cfg, None);
        if let Some(diff) = first_difference(left, right, problem)? {
            return Ok(diff);
        }
    }
    Ok(Equivalence::Same { trials: cfg.trials })
}

fn first_difference(
    left: &Rule,
    right: &Rule,
    problem: Problem,
) -> Result<Option<Equivalence>, AxiomError> {
    let la = left.evaluate(&problem)?;
    let ra = right.evaluate(&problem)?;
    let differing = problem.teams().find(|&t| la.share(t) != ra.share(t));
    Ok(differing.map(|team| Equivalence::Differs {
        left: la.share(team).clone(),
        right: ra.share(team).clone(),
        team,
        problem,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{falsify, AxiomId, FalsifyOutcome};
    use crate::rational::ratio;

    fn example1() -> Problem {
        Problem::from_ints(&[&[0, 1200, 1030], &[750, 0, 140], &[630, 210, 0]]).unwrap()
    }

    fn rule(name: &str) -> Rule {
        Rule::new(RuleSpec::parse(name).unwrap()).unwrap()
    }

    #[test]
    fn decompose_focal_rules() {
        let cd = decompose(&rule("cd"), 3).unwrap();
        assert!(cd.is_consistent());
        assert_eq!((cd.x(), cd.y(), cd.z()), (&rat(1), &rat(1), &rat(-1)));

        for n in [3, 5] {
            let es = decompose(&rule("es"), n).unwrap();
            assert!(es.is_consistent());
            assert_eq!((es.x(), es.y(), es.z()), (&ratio(1, 2), &ratio(1, 2), &rat(0)));
        }
    }

    #[test]
    fn decompose_flags_the_numbering_bias() {
        let d = decompose(&rule("counter:R1"), 3).unwrap();
        assert!(!d.is_consistent());
        // Budget balance still holds per pair even though shares differ.
        let json = serde_json::to_value(&d).unwrap();
        assert!(json["table"]["entries"].is_array());
    }

    #[test]
    fn catalog_consistency_pattern_at_four_teams() {
        // The symmetric unit extensions stay anonymous; the minimum-outsider
        // deduction does not. At three teams the latter collapses onto a
        // single outsider and only looks anonymous, so four teams are needed.
        assert!(decompose(&rule("counter:R6"), 4).unwrap().is_consistent());
        assert!(decompose(&rule("counter:R7"), 4).unwrap().is_consistent());
        assert!(decompose(&rule("counter:R3"), 3).unwrap().is_consistent());
        assert!(!decompose(&rule("counter:R3"), 4).unwrap().is_consistent());
    }

    #[test]
    fn consistent_signature_is_budget_balanced() {
        let d = decompose(&rule("ext-ec:0.9,0.6"), 5).unwrap();
        assert!(d.is_consistent());
        let sum = d.x() + d.y() + rat(3) * d.z();
        assert_eq!(sum, rat(1));
    }

    #[test]
    fn classify_the_cd_signature() {
        let c = classify(&rat(1), &rat(1), 3);
        let families: Vec<FamilyId> = c.memberships.iter().map(|m| m.family).collect();
        assert_eq!(
            families,
            vec![
                FamilyId::ConcedeAndDivide,
                FamilyId::Ec,
                FamilyId::Uc,
                FamilyId::ExtendedEc,
                FamilyId::ExtendedUc,
            ]
        );
        assert_eq!(c.membership(FamilyId::Ec).unwrap().lambda, Some(rat(0)));
        assert_eq!(c.membership(FamilyId::Uc).unwrap().lambda, Some(rat(0)));
        assert_eq!(c.z, rat(-1));
    }

    #[test]
    fn classify_the_equal_split_signature() {
        let c = classify(&ratio(1, 2), &ratio(1, 2), 4);
        for family in [
            FamilyId::EqualSplit,
            FamilyId::Split,
            FamilyId::GeneralizedSplit,
            FamilyId::Ec,
            FamilyId::Uc,
            FamilyId::Ue,
            FamilyId::ExtendedEc,
            FamilyId::ExtendedUc,
            FamilyId::ExtendedUe,
        ] {
            assert!(c.contains(family), "{family}");
        }
        assert!(!c.contains(FamilyId::Uniform));
        assert_eq!(c.membership(FamilyId::Split).unwrap().lambda, Some(ratio(1, 2)));
        assert_eq!(c.membership(FamilyId::Ec).unwrap().lambda, Some(rat(1)));
        assert_eq!(c.membership(FamilyId::Ue).unwrap().lambda, Some(rat(0)));
    }

    #[test]
    fn classify_an_off_diagonal_extended_point() {
        let c = classify(&ratio(9, 10), &ratio(3, 5), 3);
        assert_eq!(
            c.membership(FamilyId::ExtendedEc).unwrap().lambda,
            Some(ratio(1, 5))
        );
        assert_eq!(
            c.membership(FamilyId::ExtendedUc).unwrap().lambda,
            Some(ratio(3, 20))
        );
        // min = 3/5 exceeds 1 - max = 1/10.
        assert!(!c.contains(FamilyId::ExtendedUe));
        assert!(!c.contains(FamilyId::Split));
    }

    #[test]
    fn reconstruct_matches_closed_forms_on_the_example() {
        let a = example1();
        let cd = reconstruct(&rat(1), &rat(1), 3).unwrap().evaluate(&a).unwrap();
        assert_eq!(cd.shares(), &[rat(3260), rat(640), rat(60)]);

        let es = reconstruct(&ratio(1, 2), &ratio(1, 2), 3).unwrap().evaluate(&a).unwrap();
        assert_eq!(es.shares(), &[rat(1805), rat(1150), rat(1005)]);

        let ext = reconstruct(&ratio(9, 10), &ratio(3, 5), 3).unwrap().evaluate(&a).unwrap();
        assert_eq!(ext.shares(), &[rat(2660), rat(817), rat(483)]);
    }

    #[test]
    fn round_trip_through_the_signature() {
        let cfg = GeneratorConfig::default().with_seed(23).with_teams(4, 4);
        for name in ["cd", "es", "uniform", "ec:0.3", "ext-uc:0.8,0.5", "gsplit:4"] {
            let original = rule(name);
            let d = decompose(&original, 4).unwrap();
            assert!(d.is_consistent(), "{name}");
            let rebuilt = reconstruct(d.x(), d.y(), 4).unwrap();
            for trial in 0..50 {
                let mut rng = cfg.rng_for_trial(trial);
                let a = crate::axioms::generate_problem(&mut rng, &cfg, None);
                assert_eq!(
                    original.evaluate(&a).unwrap(),
                    rebuilt.evaluate(&a).unwrap(),
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn equivalence_of_coinciding_family_members() {
        let cfg = GeneratorConfig::default().with_seed(29).with_teams(3, 3).with_trials(300);
        // ES is the UC member at lambda = n / (2(n-1)).
        let es_as_uc = rule("uc:3/4");
        assert!(equivalent(&rule("es"), &es_as_uc, &cfg).unwrap().is_same());
        // At n = 3 the UC rule at 1/2 coincides with the EC rule at 2/3.
        assert!(equivalent(&rule("uc:1/2"), &rule("ec:2/3"), &cfg).unwrap().is_same());
    }

    #[test]
    fn equivalence_separates_cd_from_es() {
        let cfg = GeneratorConfig::default().with_seed(31).with_teams(3, 4);
        match equivalent(&rule("cd"), &rule("es"), &cfg).unwrap() {
            Equivalence::Differs { problem, left, right, .. } => {
                assert_eq!(problem.total(), rat(1), "a unit problem separates them");
                assert_eq!(left, rat(1));
                assert_eq!(right, ratio(1, 2));
            }
            Equivalence::Same { .. } => panic!("cd and es must differ"),
        }
    }

    #[test]
    fn threshold_rules_match_on_units_but_differ_globally() {
        let cfg = GeneratorConfig::default().with_seed(37).with_teams(3, 3).with_trials(500);
        match equivalent(&rule("counter:R5"), &rule("es"), &cfg).unwrap() {
            Equivalence::Differs { problem, .. } => {
                assert!(problem.total() > rat(10));
            }
            Equivalence::Same { .. } => panic!("R5 leaves the equal split above the threshold"),
        }
    }

    #[test]
    fn extended_ue_low_corner_breaks_home_order_preservation() {
        // The UE extension admits min = 0, but order preservation needs the
        // outsider share to stay below the away share; at (1/3, 0) with
        // n = 3 a single home game rewards an outsider above the home team.
        let cfg = GeneratorConfig::default().with_seed(41).with_teams(3, 3).with_trials(2000);
        let r = Rule::with_team_count(
            RuleSpec::ExtendedUe { x: ratio(1, 3), y: rat(0) },
            3,
        )
        .unwrap();
        match falsify(AxiomId::Hop, &r, &cfg).unwrap() {
            FalsifyOutcome::Witness { .. } => {}
            FalsifyOutcome::Exhausted { .. } => panic!("expected an order-preservation witness"),
        }
        // Inside the sub-region with min >= (1 - max)/(n - 1) the search
        // finds nothing.
        let safe = Rule::with_team_count(
            RuleSpec::ExtendedUe { x: ratio(1, 2), y: ratio(1, 4) },
            3,
        )
        .unwrap();
        assert!(falsify(AxiomId::Hop, &safe, &cfg).unwrap().witness().is_none());
    }
}
