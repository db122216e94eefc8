//! Allocation rule families and their exact evaluation.
//!
//! Every rule maps a problem to a budget-balanced allocation. The convex and
//! extended families are evaluated through their closed forms; the additive
//! extension family realizes an arbitrary unit-matrix signature `(x', y')`
//! with outsiders at `(1 - x' - y') / (n - 2)`.

use crate::counterexamples::{self, CounterexampleId};
use crate::problem::{Allocation, Problem, ProblemError, Team};
use crate::rational::{parse_rat, rat, to_decimal_string, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuleError {
    #[error("{rule}: {constraint}")]
    ParamOutOfRange { rule: String, constraint: String },
    #[error("general rule needs x + y + n*z = 1, got {x} + {y} + {n}*{z}")]
    ConstraintViolated { x: String, y: String, z: String, n: usize },
    #[error("{id} is only defined for 3 teams, problem has {got}")]
    FixedSizeMismatch { id: CounterexampleId, got: usize },
    #[error("unknown rule name {0:?}")]
    UnknownName(String),
    #[error("bad rule parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// A named, parameterized allocation rule.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleSpec {
    /// Total audience divided equally among all teams.
    Uniform,
    /// Half of each game's audience to each participant.
    EqualSplit,
    /// `((n-1) * claim_i - total) / (n - 2)`: maximal hard-core fans.
    ConcedeAndDivide,
    /// Fraction `1 - lambda` of each game to the home team, `lambda` to the
    /// away team; `lambda` restricted to `[0, 1]`.
    Split { lambda: Rat },
    /// Split rule with unrestricted `lambda`.
    GeneralizedSplit { lambda: Rat },
    /// `x * home_i + y * away_i + z * total`, with `x + y + n*z = 1`.
    General { x: Rat, y: Rat, z: Rat },
    /// `lambda * ES + (1 - lambda) * CD`, `lambda` in `[0, 1]`.
    Ec { lambda: Rat },
    /// `lambda * U + (1 - lambda) * CD`, `lambda` in `[0, 1]`.
    Uc { lambda: Rat },
    /// `lambda * U + (1 - lambda) * ES`, `lambda` in `[0, 1]`.
    Ue { lambda: Rat },
    /// Two-parameter extension of the EC family; `x, y` in `[0, 1]` with
    /// `x + y >= 1`.
    ExtendedEc { x: Rat, y: Rat },
    /// Two-parameter extension of the UC family; `max` in `[1/n, 1]`,
    /// `min` in `[(1 - max)/(n - 1), max]`.
    ExtendedUc { x: Rat, y: Rat },
    /// Two-parameter extension of the UE family; `max` in `[1/n, 1]`,
    /// `min` in `[0, 1 - max]`.
    ExtendedUe { x: Rat, y: Rat },
    /// The additive rule whose unit-matrix signature is `(x, y)` with
    /// outsiders at `(1 - x - y) / (n - 2)`; no parameter restriction.
    AdditiveExtension { x: Rat, y: Rat },
    /// Catalog rule used to separate axioms.
    Counterexample(CounterexampleId),
}

impl RuleSpec {
    /// Parameter invariants that do not depend on the team count.
    fn validate(&self) -> Result<(), RuleError> {
        match self {
            RuleSpec::Split { lambda } => {
                in_unit_interval(lambda, "split", "lambda")?;
            }
            RuleSpec::Ec { lambda } => in_unit_interval(lambda, "ec", "lambda")?,
            RuleSpec::Uc { lambda } => in_unit_interval(lambda, "uc", "lambda")?,
            RuleSpec::Ue { lambda } => in_unit_interval(lambda, "ue", "lambda")?,
            RuleSpec::ExtendedEc { x, y } => {
                in_unit_interval(x, "ext-ec", "x'")?;
                in_unit_interval(y, "ext-ec", "y'")?;
                if x + y < Rat::one() {
                    return Err(RuleError::ParamOutOfRange {
                        rule: "ext-ec".into(),
                        constraint: format!(
                            "x' + y' >= 1 violated by {} + {}",
                            to_decimal_string(x),
                            to_decimal_string(y)
                        ),
                    });
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Parameter invariants bound to a specific team count.
    fn validate_for(&self, n: usize) -> Result<(), RuleError> {
        self.validate()?;
        let nr = rat(n as i64);
        match self {
            RuleSpec::General { x, y, z } => {
                if x + y + &nr * z != Rat::one() {
                    return Err(RuleError::ConstraintViolated {
                        x: to_decimal_string(x),
                        y: to_decimal_string(y),
                        z: to_decimal_string(z),
                        n,
                    });
                }
            }
            RuleSpec::ExtendedUc { x, y } => {
                let (max, min) = ordered(x, y);
                let low = Rat::one() / &nr;
                if max < &low || max > &Rat::one() {
                    return Err(range_err("ext-uc", "max{x', y'} in [1/n, 1]", max));
                }
                let min_low = (Rat::one() - max) / rat(n as i64 - 1);
                if min < &min_low || min > max {
                    return Err(range_err(
                        "ext-uc",
                        "min{x', y'} in [(1 - max)/(n - 1), max]",
                        min,
                    ));
                }
            }
            RuleSpec::ExtendedUe { x, y } => {
                let (max, min) = ordered(x, y);
                let low = Rat::one() / &nr;
                if max < &low || max > &Rat::one() {
                    return Err(range_err("ext-ue", "max{x', y'} in [1/n, 1]", max));
                }
                let min_high = Rat::one() - max;
                if min.is_negative() || min > &min_high {
                    return Err(range_err("ext-ue", "min{x', y'} in [0, 1 - max]", min));
                }
            }
            RuleSpec::Counterexample(id) => {
                if let Some(required) = id.fixed_team_count() {
                    if n != required {
                        return Err(RuleError::FixedSizeMismatch { id: *id, got: n });
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

fn ordered<'a>(x: &'a Rat, y: &'a Rat) -> (&'a Rat, &'a Rat) {
    if x >= y {
        (x, y)
    } else {
        (y, x)
    }
}

fn in_unit_interval(value: &Rat, rule: &str, name: &str) -> Result<(), RuleError> {
    if value.is_negative() || value > &Rat::one() {
        return Err(range_err(rule, &format!("{name} in [0, 1]"), value));
    }
    Ok(())
}

fn range_err(rule: &str, constraint: &str, value: &Rat) -> RuleError {
    RuleError::ParamOutOfRange {
        rule: rule.into(),
        constraint: format!("{constraint} violated by {}", to_decimal_string(value)),
    }
}

/// A validated, evaluatable rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    spec: RuleSpec,
}

impl Rule {
    /// Validates the team-count-independent parameter constraints.
    /// Constraints that involve `n` are re-checked at evaluation.
    pub fn new(spec: RuleSpec) -> Result<Rule, RuleError> {
        spec.validate()?;
        Ok(Rule { spec })
    }

    /// Validates all constraints for problems over `n` teams.
    pub fn with_team_count(spec: RuleSpec, n: usize) -> Result<Rule, RuleError> {
        spec.validate_for(n)?;
        Ok(Rule { spec })
    }

    pub fn spec(&self) -> &RuleSpec {
        &self.spec
    }

    /// Evaluates the rule; the allocation always sums to the total audience.
    pub fn evaluate(&self, a: &Problem) -> Result<Allocation, RuleError> {
        self.spec.validate_for(a.n())?;
        let n = a.n();
        let total = a.total();
        let shares = match &self.spec {
            RuleSpec::Uniform => uniform(a, &total),
            RuleSpec::EqualSplit => equal_split(a),
            RuleSpec::ConcedeAndDivide => concede_and_divide(a, &total),
            RuleSpec::Split { lambda } | RuleSpec::GeneralizedSplit { lambda } => split(a, lambda),
            RuleSpec::General { x, y, z } => general(a, &total, x, y, z),
            RuleSpec::Ec { lambda } => {
                mix(&equal_split(a), &concede_and_divide(a, &total), lambda)
            }
            RuleSpec::Uc { lambda } => {
                mix(&uniform(a, &total), &concede_and_divide(a, &total), lambda)
            }
            RuleSpec::Ue { lambda } => mix(&uniform(a, &total), &equal_split(a), lambda),
            RuleSpec::ExtendedEc { x, y } => {
                let max = ordered(x, y).0;
                let lambda = rat(2) - rat(2) * max;
                let base = mix(&equal_split(a), &concede_and_divide(a, &total), &lambda);
                extended(a, &total, base, x, y)
            }
            RuleSpec::ExtendedUc { x, y } => {
                let max = ordered(x, y).0;
                let lambda = rat(n as i64) * (Rat::one() - max) / rat(n as i64 - 1);
                let base = mix(&uniform(a, &total), &concede_and_divide(a, &total), &lambda);
                extended(a, &total, base, x, y)
            }
            RuleSpec::ExtendedUe { x, y } => {
                let max = ordered(x, y).0;
                let lambda = rat(n as i64) * (Rat::one() - rat(2) * max) / rat(n as i64 - 2);
                let base = mix(&uniform(a, &total), &equal_split(a), &lambda);
                extended(a, &total, base, x, y)
            }
            RuleSpec::AdditiveExtension { x, y } => additive_extension(a, &total, x, y),
            RuleSpec::Counterexample(id) => counterexamples::evaluate(*id, a)?,
        };
        Ok(Allocation::new(shares))
    }

    /// Evaluates the rule on every unit problem of size `n` and tabulates the
    /// share of the home team, the away team and each outsider.
    pub fn unit_values(&self, n: usize) -> Result<UnitValues, RuleError> {
        if n < 3 {
            return Err(RuleError::Problem(ProblemError::TooFewTeams { n }));
        }
        let mut entries = Vec::new();
        for home in (1..=n).map(Team) {
            for away in (1..=n).map(Team) {
                if home == away {
                    continue;
                }
                let unit = Problem::unit(n, home, away)?;
                let allocation = self.evaluate(&unit)?;
                let outsider_shares = (1..=n)
                    .map(Team)
                    .filter(|&k| k != home && k != away)
                    .map(|k| (k, allocation.share(k).clone()))
                    .collect();
                entries.push(UnitEntry {
                    home,
                    away,
                    home_share: allocation.share(home).clone(),
                    away_share: allocation.share(away).clone(),
                    outsider_shares,
                });
            }
        }
        Ok(UnitValues { n, entries })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

fn uniform(a: &Problem, total: &Rat) -> Vec<Rat> {
    let share = total / rat(a.n() as i64);
    vec![share; a.n()]
}

fn equal_split(a: &Problem) -> Vec<Rat> {
    a.claims().into_iter().map(|c| c / rat(2)).collect()
}

fn concede_and_divide(a: &Problem, total: &Rat) -> Vec<Rat> {
    let n = a.n() as i64;
    a.claims()
        .into_iter()
        .map(|c| (rat(n - 1) * c - total) / rat(n - 2))
        .collect()
}

fn split(a: &Problem, lambda: &Rat) -> Vec<Rat> {
    let keep = Rat::one() - lambda;
    a.teams()
        .map(|i| &keep * a.home_audience(i) + lambda * a.away_audience(i))
        .collect()
}

fn general(a: &Problem, total: &Rat, x: &Rat, y: &Rat, z: &Rat) -> Vec<Rat> {
    a.teams()
        .map(|i| x * a.home_audience(i) + y * a.away_audience(i) + z * total)
        .collect()
}

/// `lambda * first + (1 - lambda) * second`, componentwise.
fn mix(first: &[Rat], second: &[Rat], lambda: &Rat) -> Vec<Rat> {
    let rest = Rat::one() - lambda;
    first
        .iter()
        .zip(second)
        .map(|(f, s)| lambda * f + &rest * s)
        .collect()
}

/// Subtracts `|x - y| * CD_i` of the home-nullified (when `x >= y`) or
/// away-nullified (when `x < y`) problem from each team's base share.
///
/// With row i zeroed, team i's claim is its away audience and the total drops
/// by its home audience, so `CD_i(A with row i zeroed)` reduces to
/// `((n-1) * away_i + home_i - total) / (n-2)`; the away-nullified case is
/// the mirror image.
fn extended(a: &Problem, total: &Rat, base: Vec<Rat>, x: &Rat, y: &Rat) -> Vec<Rat> {
    let gap = x - y;
    if gap.is_zero() {
        return base;
    }
    let n = a.n() as i64;
    let magnitude = gap.abs();
    let home_side = !gap.is_negative();
    a.teams()
        .zip(base)
        .map(|(i, b)| {
            let home = a.home_audience(i);
            let away = a.away_audience(i);
            let cd_nullified = if home_side {
                (rat(n - 1) * &away + &home - total) / rat(n - 2)
            } else {
                (rat(n - 1) * &home + &away - total) / rat(n - 2)
            };
            b - &magnitude * cd_nullified
        })
        .collect()
}

fn additive_extension(a: &Problem, total: &Rat, x: &Rat, y: &Rat) -> Vec<Rat> {
    let outsider = (Rat::one() - x - y) / rat(a.n() as i64 - 2);
    a.teams()
        .map(|i| {
            let home = a.home_audience(i);
            let away = a.away_audience(i);
            let rest = total - &home - &away;
            x * home + y * away + &outsider * rest
        })
        .collect()
}

/// Shares observed on every unit problem of a given size.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitValues {
    n: usize,
    entries: Vec<UnitEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitEntry {
    pub home: Team,
    pub away: Team,
    pub home_share: Rat,
    pub away_share: Rat,
    pub outsider_shares: Vec<(Team, Rat)>,
}

impl UnitValues {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[UnitEntry] {
        &self.entries
    }

    pub fn entry(&self, home: Team, away: Team) -> Option<&UnitEntry> {
        self.entries
            .iter()
            .find(|e| e.home == home && e.away == away)
    }

    /// True when the home, away and outsider shares are each identical
    /// across all ordered pairs and outsiders.
    pub fn is_anonymous(&self) -> bool {
        let first = &self.entries[0];
        let z = &first.outsider_shares[0].1;
        self.entries.iter().all(|e| {
            e.home_share == first.home_share
                && e.away_share == first.away_share
                && e.outsider_shares.iter().all(|(_, s)| s == z)
        })
    }
}

impl RuleSpec {
    /// Parses the rule-naming grammar, e.g. `cd`, `split:1/4`,
    /// `general:1,3,-1`, `ext-ec:0.9,0.6`, `counter:R5`.
    pub fn parse(name: &str) -> Result<RuleSpec, RuleError> {
        let name = name.trim();
        let (head, args) = match name.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (name, None),
        };
        let no_args = || -> Result<(), RuleError> {
            match args {
                None | Some("") => Ok(()),
                Some(extra) => Err(RuleError::BadParameter(format!(
                    "rule {head:?} takes no parameters, got {extra:?}"
                ))),
            }
        };
        let spec = match head.to_ascii_lowercase().as_str() {
            "uniform" | "u" => {
                no_args()?;
                RuleSpec::Uniform
            }
            "equal-split" | "es" => {
                no_args()?;
                RuleSpec::EqualSplit
            }
            "cd" | "concede-and-divide" => {
                no_args()?;
                RuleSpec::ConcedeAndDivide
            }
            "split" => RuleSpec::Split { lambda: one_param(head, args)? },
            "gsplit" => RuleSpec::GeneralizedSplit { lambda: one_param(head, args)? },
            "general" => {
                let [x, y, z] = n_params(head, args)?;
                RuleSpec::General { x, y, z }
            }
            "ec" => RuleSpec::Ec { lambda: one_param(head, args)? },
            "uc" => RuleSpec::Uc { lambda: one_param(head, args)? },
            "ue" => RuleSpec::Ue { lambda: one_param(head, args)? },
            "ext-ec" => {
                let [x, y] = n_params(head, args)?;
                RuleSpec::ExtendedEc { x, y }
            }
            "ext-uc" => {
                let [x, y] = n_params(head, args)?;
                RuleSpec::ExtendedUc { x, y }
            }
            "ext-ue" => {
                let [x, y] = n_params(head, args)?;
                RuleSpec::ExtendedUe { x, y }
            }
            "ext" => {
                let [x, y] = n_params(head, args)?;
                RuleSpec::AdditiveExtension { x, y }
            }
            "counter" => {
                let id = args.filter(|a| !a.is_empty()).ok_or_else(|| {
                    RuleError::BadParameter("counter needs an id, e.g. counter:R5".into())
                })?;
                RuleSpec::Counterexample(id.parse()?)
            }
            _ => return Err(RuleError::UnknownName(name.to_string())),
        };
        Ok(spec)
    }
}

fn one_param(rule: &str, args: Option<&str>) -> Result<Rat, RuleError> {
    let text = args
        .filter(|a| !a.is_empty())
        .ok_or_else(|| RuleError::BadParameter(format!("rule {rule:?} needs a parameter")))?;
    parse_rat(text).map_err(|e| RuleError::BadParameter(format!("{rule}: {e}")))
}

fn n_params<const N: usize>(rule: &str, args: Option<&str>) -> Result<[Rat; N], RuleError> {
    let text = args
        .filter(|a| !a.is_empty())
        .ok_or_else(|| RuleError::BadParameter(format!("rule {rule:?} needs {N} parameters")))?;
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        return Err(RuleError::BadParameter(format!(
            "rule {rule:?} needs {N} parameters, got {}",
            parts.len()
        )));
    }
    let mut out = Vec::with_capacity(N);
    for part in parts {
        out.push(parse_rat(part).map_err(|e| RuleError::BadParameter(format!("{rule}: {e}")))?);
    }
    Ok(out.try_into().expect("length checked"))
}

impl FromStr for RuleSpec {
    type Err = RuleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleSpec::parse(s)
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = to_decimal_string;
        match self {
            RuleSpec::Uniform => write!(f, "uniform"),
            RuleSpec::EqualSplit => write!(f, "equal-split"),
            RuleSpec::ConcedeAndDivide => write!(f, "cd"),
            RuleSpec::Split { lambda } => write!(f, "split:{}", d(lambda)),
            RuleSpec::GeneralizedSplit { lambda } => write!(f, "gsplit:{}", d(lambda)),
            RuleSpec::General { x, y, z } => write!(f, "general:{},{},{}", d(x), d(y), d(z)),
            RuleSpec::Ec { lambda } => write!(f, "ec:{}", d(lambda)),
            RuleSpec::Uc { lambda } => write!(f, "uc:{}", d(lambda)),
            RuleSpec::Ue { lambda } => write!(f, "ue:{}", d(lambda)),
            RuleSpec::ExtendedEc { x, y } => write!(f, "ext-ec:{},{}", d(x), d(y)),
            RuleSpec::ExtendedUc { x, y } => write!(f, "ext-uc:{},{}", d(x), d(y)),
            RuleSpec::ExtendedUe { x, y } => write!(f, "ext-ue:{},{}", d(x), d(y)),
            RuleSpec::AdditiveExtension { x, y } => write!(f, "ext:{},{}", d(x), d(y)),
            RuleSpec::Counterexample(id) => write!(f, "counter:{id}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn example1() -> Problem {
        Problem::from_ints(&[&[0, 1200, 1030], &[750, 0, 140], &[630, 210, 0]]).unwrap()
    }

    fn eval(name: &str, a: &Problem) -> Vec<Rat> {
        let rule = Rule::new(RuleSpec::parse(name).unwrap()).unwrap();
        rule.evaluate(a).unwrap().shares().to_vec()
    }

    /// Independent route: sum the rule's unit-problem allocations scaled by
    /// the audience entries.
    fn eval_by_unit_sum(rule: &Rule, a: &Problem) -> Vec<Rat> {
        let mut shares = vec![Rat::zero(); a.n()];
        for i in a.teams() {
            for j in a.teams() {
                if i == j || a.entry(i, j).is_zero() {
                    continue;
                }
                let unit = Problem::unit(a.n(), i, j).unwrap();
                let unit_alloc = rule.evaluate(&unit).unwrap();
                for k in a.teams() {
                    shares[k.0 - 1] += a.entry(i, j) * unit_alloc.share(k);
                }
            }
        }
        shares
    }

    #[test]
    fn parameter_gatekeeping() {
        assert!(Rule::new(RuleSpec::ExtendedEc { x: ratio(9, 10), y: ratio(3, 5) }).is_ok());
        let err = Rule::new(RuleSpec::ExtendedEc { x: ratio(3, 10), y: ratio(2, 5) }).unwrap_err();
        assert!(matches!(err, RuleError::ParamOutOfRange { .. }), "{err}");

        assert!(Rule::with_team_count(
            RuleSpec::General { x: rat(1), y: rat(3), z: rat(-1) },
            3
        )
        .is_ok());
        let err = Rule::with_team_count(
            RuleSpec::General { x: rat(1), y: rat(3), z: rat(-1) },
            4,
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::ConstraintViolated { .. }), "{err}");

        assert!(Rule::new(RuleSpec::Split { lambda: ratio(3, 2) }).is_err());
        assert!(Rule::new(RuleSpec::GeneralizedSplit { lambda: ratio(3, 2) }).is_ok());
        assert!(Rule::new(RuleSpec::Ec { lambda: rat(2) }).is_err());

        // n-dependent bounds surface at evaluation as well.
        let spec = RuleSpec::ExtendedUc { x: ratio(1, 5), y: ratio(1, 5) };
        assert!(Rule::with_team_count(spec.clone(), 5).is_ok());
        assert!(Rule::with_team_count(spec.clone(), 4).is_err());
        let rule = Rule::new(spec).unwrap();
        let a = Problem::unit(4, Team(1), Team(2)).unwrap();
        assert!(rule.evaluate(&a).is_err());
    }

    #[test]
    fn focal_rules_on_the_example() {
        let a = example1();
        assert_eq!(eval("uniform", &a), vec![rat(1320); 3]);
        assert_eq!(eval("es", &a), vec![rat(1805), rat(1150), rat(1005)]);
        assert_eq!(eval("cd", &a), vec![rat(3260), rat(640), rat(60)]);
    }

    #[test]
    fn split_rules_on_the_example() {
        let a = example1();
        assert_eq!(eval("gsplit:0", &a), vec![rat(2230), rat(890), rat(840)]);
        assert_eq!(eval("gsplit:0.2", &a), vec![rat(2060), rat(994), rat(906)]);
        assert_eq!(eval("gsplit:1", &a), vec![rat(1380), rat(1410), rat(1170)]);
        assert_eq!(eval("gsplit:4", &a), vec![rat(-1170), rat(2970), rat(2160)]);
    }

    #[test]
    fn general_rules_on_the_example() {
        let a = example1();
        assert_eq!(
            eval("general:0.5,0.2,0.1", &a),
            vec![rat(1787), rat(1123), rat(1050)]
        );
        assert_eq!(eval("general:1,3,-1", &a), vec![rat(2410), rat(1160), rat(390)]);
    }

    #[test]
    fn convex_families_on_the_example() {
        let a = example1();
        assert_eq!(
            eval("ec:0.5", &a),
            vec![ratio(5065, 2), rat(895), ratio(1065, 2)]
        );
        assert_eq!(eval("uc:0.5", &a), vec![rat(2290), rat(980), rat(690)]);
        assert_eq!(
            eval("ue:0.5", &a),
            vec![ratio(3125, 2), rat(1235), ratio(2325, 2)]
        );
    }

    #[test]
    fn uniform_on_zero_matrix() {
        let z = Problem::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]).unwrap();
        assert_eq!(eval("uniform", &z), vec![rat(0); 3]);
    }

    #[test]
    fn extended_ec_agrees_with_unit_sum_oracle() {
        let a = example1();
        let rule = Rule::new(RuleSpec::parse("ext-ec:0.9,0.6").unwrap()).unwrap();
        let direct = rule.evaluate(&a).unwrap().shares().to_vec();
        assert_eq!(direct, vec![rat(2660), rat(817), rat(483)]);
        assert_eq!(direct, eval_by_unit_sum(&rule, &a));

        // Mirror orientation exercises the away-nullified branch.
        let mirror = Rule::new(RuleSpec::parse("ext-ec:0.6,0.9").unwrap()).unwrap();
        assert_eq!(
            mirror.evaluate(&a).unwrap().shares().to_vec(),
            eval_by_unit_sum(&mirror, &a)
        );
    }

    #[test]
    fn extended_families_agree_with_unit_sum_oracle() {
        let a = example1();
        for name in ["ext-uc:0.8,0.5", "ext-uc:0.5,0.8", "ext-ue:0.5,0.25", "ext-ue:0.25,0.5", "ext:1.2,-0.3"] {
            let rule = Rule::new(RuleSpec::parse(name).unwrap()).unwrap();
            let direct = rule.evaluate(&a).unwrap().shares().to_vec();
            assert_eq!(direct, eval_by_unit_sum(&rule, &a), "{name}");
            let sum: Rat = direct.iter().sum();
            assert_eq!(sum, a.total(), "{name} budget");
        }
    }

    #[test]
    fn unit_values_of_focal_rules() {
        let es = Rule::new(RuleSpec::EqualSplit).unwrap().unit_values(3).unwrap();
        assert!(es.is_anonymous());
        for e in es.entries() {
            assert_eq!(e.home_share, ratio(1, 2));
            assert_eq!(e.away_share, ratio(1, 2));
            assert_eq!(e.outsider_shares[0].1, rat(0));
        }

        let cd = Rule::new(RuleSpec::ConcedeAndDivide).unwrap().unit_values(3).unwrap();
        assert!(cd.is_anonymous());
        for e in cd.entries() {
            assert_eq!(e.home_share, rat(1));
            assert_eq!(e.away_share, rat(1));
            assert_eq!(e.outsider_shares[0].1, rat(-1));
        }
    }

    #[test]
    fn extended_ue_unit_values() {
        let rule = Rule::new(RuleSpec::ExtendedUe { x: ratio(1, 2), y: ratio(1, 5) }).unwrap();
        let table = rule.unit_values(4).unwrap();
        assert!(table.is_anonymous());
        for e in table.entries() {
            assert_eq!(e.home_share, ratio(1, 2));
            assert_eq!(e.away_share, ratio(1, 5));
            // (1 - x' - y') / (n - 2) = (3/10) / 2
            for (_, s) in &e.outsider_shares {
                assert_eq!(s, &ratio(3, 20));
            }
        }
    }

    #[test]
    fn equal_split_is_a_mix_of_uniform_and_cd() {
        // ES = (n / (2(n-1))) U + ((n-2) / (2(n-1))) CD, exactly.
        for a in [
            example1(),
            Problem::from_ints(&[&[0, 1, 2, 3], &[4, 0, 5, 6], &[7, 8, 0, 9], &[1, 0, 2, 0]]).unwrap(),
        ] {
            let n = a.n() as i64;
            let coeff = ratio(n, 2 * (n - 1));
            let es = eval("es", &a);
            let u = eval("uniform", &a);
            let cd = eval("cd", &a);
            for k in 0..a.n() {
                assert_eq!(es[k], &coeff * &u[k] + (Rat::one() - &coeff) * &cd[k]);
            }
        }
    }

    #[test]
    fn family_collapse_on_the_diagonal() {
        let a = example1();
        let t = ratio(3, 4);
        let collapsed = [
            ("ext-ec:3/4,3/4", "ec:1/2"),
            ("ext-uc:3/4,3/4", "uc:3/8"),
            ("ext-ue:2/5,2/5", "ue:3/5"),
        ];
        let _ = t;
        for (ext, plain) in collapsed {
            assert_eq!(eval(ext, &a), eval(plain, &a), "{ext} vs {plain}");
        }
    }

    #[test]
    fn uc_family_is_the_union_of_ue_and_ec() {
        // Every UC member coincides with an EC member (diagonal >= 1/2) or
        // a UE member (diagonal <= 1/2); the crossover is the equal split.
        let a = example1();
        for n in [3usize, 4] {
            let problems: Vec<Problem> = if n == 3 {
                vec![a.clone()]
            } else {
                vec![Problem::from_ints(&[
                    &[0, 1, 2, 3],
                    &[4, 0, 5, 6],
                    &[7, 8, 0, 9],
                    &[1, 0, 2, 0],
                ])
                .unwrap()]
            };
            for k in 0..=10 {
                let lambda = ratio(k, 10);
                let uc = Rule::new(RuleSpec::Uc { lambda: lambda.clone() }).unwrap();
                // Diagonal unit share of UC^lambda.
                let t = Rat::one() - &lambda * rat(n as i64 - 1) / rat(n as i64);
                let partner = if t >= ratio(1, 2) {
                    Rule::new(RuleSpec::Ec { lambda: rat(2) - rat(2) * &t }).unwrap()
                } else {
                    Rule::new(RuleSpec::Ue {
                        lambda: rat(n as i64) * (Rat::one() - rat(2) * &t) / rat(n as i64 - 2),
                    })
                    .unwrap()
                };
                assert_eq!(
                    uc.unit_values(n).unwrap(),
                    partner.unit_values(n).unwrap(),
                    "lambda = {lambda}, n = {n}"
                );
                for p in &problems {
                    assert_eq!(uc.evaluate(p).unwrap(), partner.evaluate(p).unwrap());
                }
            }
        }
    }

    #[test]
    fn split_rules_pay_nothing_to_idle_teams() {
        let a = Problem::from_ints(&[&[0, 7, 0], &[3, 0, 0], &[0, 0, 0]]).unwrap();
        for lambda in ["0", "1/3", "1"] {
            let shares = eval(&format!("split:{lambda}"), &a);
            assert_eq!(shares[2], rat(0), "lambda={lambda}");
        }
    }

    #[test]
    fn cd_gives_essential_team_its_claim() {
        let a = Problem::from_ints(&[&[0, 7, 2], &[3, 0, 0], &[5, 0, 0]]).unwrap();
        assert!(a.is_essential_team(Team(1)));
        let shares = eval("cd", &a);
        assert_eq!(shares[0], a.claim(Team(1)));
    }

    #[test]
    fn grammar_round_trip() {
        for name in [
            "uniform",
            "equal-split",
            "cd",
            "split:0.25",
            "gsplit:4",
            "general:1,3,-1",
            "ec:0.5",
            "uc:1/3",
            "ue:0",
            "ext-ec:0.9,0.6",
            "ext-uc:0.8,0.5",
            "ext-ue:0.5,0.2",
            "ext:1.5,-0.25",
            "counter:R5",
            "counter:T1-WETE",
        ] {
            let spec = RuleSpec::parse(name).unwrap();
            let printed = spec.to_string();
            assert_eq!(RuleSpec::parse(&printed).unwrap(), spec, "{name} -> {printed}");
        }
        assert!(RuleSpec::parse("nope").is_err());
        assert!(RuleSpec::parse("split").is_err());
        assert!(RuleSpec::parse("general:1,2").is_err());
        assert!(RuleSpec::parse("counter:R99").is_err());
    }
}
