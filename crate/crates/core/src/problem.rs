//! Audience matrices and their transformations.
//!
//! A problem is an `n x n` matrix of non-negative exact rationals with a zero
//! diagonal; entry `(i, j)` is the audience of the game hosted by team `i`
//! against team `j`. Teams are addressed 1-based everywhere in the public
//! API, matching the usual tournament numbering.

use crate::rational::Rat;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("row {row} has {width} entries, expected {expected}")]
    NonSquare { row: usize, width: usize, expected: usize },
    #[error("negative audience at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("nonzero diagonal at ({index}, {index})")]
    NonzeroDiagonal { index: usize },
    #[error("{n} teams given, at least 3 required")]
    TooFewTeams { n: usize },
    #[error("home and away team are both {team}")]
    SameTeam { team: usize },
    #[error("team {team} out of range 1..={n}")]
    BadTeamIndex { team: usize, n: usize },
    #[error("cannot add a {left}-team problem to a {right}-team problem")]
    DimensionMismatch { left: usize, right: usize },
    #[error("permutation has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("permutation repeats image {image}")]
    NotBijective { image: usize },
}

/// 1-based team index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Team(pub usize);

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated broadcasting problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    n: usize,
    audience: Vec<Vec<Rat>>,
    labels: Option<Vec<String>>,
}

impl Problem {
    /// Validates a candidate matrix: square, `n >= 3`, non-negative entries,
    /// zero diagonal. Error positions are 1-based.
    pub fn new(audience: Vec<Vec<Rat>>) -> Result<Self, ProblemError> {
        let n = audience.len();
        if n < 3 {
            return Err(ProblemError::TooFewTeams { n });
        }
        for (i, row) in audience.iter().enumerate() {
            if row.len() != n {
                return Err(ProblemError::NonSquare {
                    row: i + 1,
                    width: row.len(),
                    expected: n,
                });
            }
        }
        for (i, row) in audience.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if i == j && !entry.is_zero() {
                    return Err(ProblemError::NonzeroDiagonal { index: i + 1 });
                }
                if entry < &Rat::zero() {
                    return Err(ProblemError::NegativeEntry { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(Problem { n, audience, labels: None })
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, ProblemError> {
        Problem::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rational::rat(v)).collect())
                .collect(),
        )
    }

    /// The single-viewer problem: entry `(home, away)` is 1, all others 0.
    pub fn unit(n: usize, home: Team, away: Team) -> Result<Self, ProblemError> {
        if n < 3 {
            return Err(ProblemError::TooFewTeams { n });
        }
        check_team(home, n)?;
        check_team(away, n)?;
        if home == away {
            return Err(ProblemError::SameTeam { team: home.0 });
        }
        let mut audience = vec![vec![Rat::zero(); n]; n];
        audience[home.0 - 1][away.0 - 1] = Rat::from_integer(1.into());
        Ok(Problem { n, audience, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn teams(&self) -> impl Iterator<Item = Team> {
        (1..=self.n).map(Team)
    }

    pub fn entry(&self, home: Team, away: Team) -> &Rat {
        &self.audience[home.0 - 1][away.0 - 1]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.audience
    }

    /// Total audience of the tournament (sum of all entries).
    pub fn total(&self) -> Rat {
        self.audience.iter().flatten().sum()
    }

    /// Home audience of a team: the sum of its row.
    pub fn home_audience(&self, team: Team) -> Rat {
        self.audience[team.0 - 1].iter().sum()
    }

    /// Away audience of a team: the sum of its column.
    pub fn away_audience(&self, team: Team) -> Rat {
        self.audience.iter().map(|row| &row[team.0 - 1]).sum()
    }

    /// The claim of a team: home plus away audience.
    pub fn claim(&self, team: Team) -> Rat {
        self.home_audience(team) + self.away_audience(team)
    }

    /// All claims, indexed by team order.
    pub fn claims(&self) -> Vec<Rat> {
        self.teams().map(|t| self.claim(t)).collect()
    }

    /// Relabels teams: entry `(i, j)` of the result is entry
    /// `(sigma(i), sigma(j))` of `self`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Problem, ProblemError> {
        if sigma.len() != self.n {
            return Err(ProblemError::LengthMismatch { expected: self.n, got: sigma.len() });
        }
        let audience = (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .map(|j| self.entry(sigma.image(Team(i)), sigma.image(Team(j))).clone())
                    .collect()
            })
            .collect();
        Ok(Problem { n: self.n, audience, labels: None })
    }

    /// Zeroes the row of `team`: the audiences of all games it hosted.
    pub fn nullify_home(&self, team: Team) -> Result<Problem, ProblemError> {
        check_team(team, self.n)?;
        let mut out = self.clone();
        out.labels = self.labels.clone();
        for entry in &mut out.audience[team.0 - 1] {
            *entry = Rat::zero();
        }
        Ok(out)
    }

    /// Zeroes the column of `team`: the audiences of all games it visited.
    pub fn nullify_away(&self, team: Team) -> Result<Problem, ProblemError> {
        check_team(team, self.n)?;
        let mut out = self.clone();
        out.labels = self.labels.clone();
        for row in &mut out.audience {
            row[team.0 - 1] = Rat::zero();
        }
        Ok(out)
    }

    /// Entrywise sum of two problems over the same teams.
    pub fn add(&self, other: &Problem) -> Result<Problem, ProblemError> {
        if self.n != other.n {
            return Err(ProblemError::DimensionMismatch { left: self.n, right: other.n });
        }
        let audience = self
            .audience
            .iter()
            .zip(&other.audience)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Problem { n: self.n, audience, labels: None })
    }

    /// True when the team has a null audience: zero row and zero column.
    pub fn is_null_team(&self, team: Team) -> bool {
        self.claim(team).is_zero()
    }

    /// True when every game not involving the team has zero audience.
    pub fn is_essential_team(&self, team: Team) -> bool {
        self.teams()
            .filter(|&i| i != team)
            .all(|i| {
                self.teams()
                    .filter(|&j| j != team && j != i)
                    .all(|j| self.entry(i, j).is_zero())
            })
    }
}

fn check_team(team: Team, n: usize) -> Result<(), ProblemError> {
    if team.0 == 0 || team.0 > n {
        return Err(ProblemError::BadTeamIndex { team: team.0, n });
    }
    Ok(())
}

/// A relabeling of the teams; `mapping[i - 1]` is the image of team `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self, ProblemError> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &image in &mapping {
            if image == 0 || image > n {
                return Err(ProblemError::BadTeamIndex { team: image, n });
            }
            if seen[image - 1] {
                return Err(ProblemError::NotBijective { image });
            }
            seen[image - 1] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { mapping: (1..=n).collect() }
    }

    /// The transposition swapping two teams.
    pub fn transposition(n: usize, a: Team, b: Team) -> Result<Self, ProblemError> {
        check_team(a, n)?;
        check_team(b, n)?;
        let mut mapping: Vec<usize> = (1..=n).collect();
        mapping.swap(a.0 - 1, b.0 - 1);
        Ok(Permutation { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn image(&self, team: Team) -> Team {
        Team(self.mapping[team.0 - 1])
    }

    pub fn inverse(&self) -> Permutation {
        let mut mapping = vec![0; self.mapping.len()];
        for (i, &image) in self.mapping.iter().enumerate() {
            mapping[image - 1] = i + 1;
        }
        Permutation { mapping }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    /// All `n!` permutations, in lexicographic order of their mappings.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation { mapping: current.clone() });
                return;
            }
            for image in 1..=n {
                if !used[image - 1] {
                    used[image - 1] = true;
                    current.push(image);
                    rec(n, current, used, out);
                    current.pop();
                    used[image - 1] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// Per-team revenue shares; always budget-balanced by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Allocation {
    #[serde(with = "crate::rational::serde_rat_vec")]
    shares: Vec<Rat>,
}

impl Allocation {
    pub(crate) fn new(shares: Vec<Rat>) -> Self {
        Allocation { shares }
    }

    pub fn n(&self) -> usize {
        self.shares.len()
    }

    pub fn share(&self, team: Team) -> &Rat {
        &self.shares[team.0 - 1]
    }

    pub fn shares(&self) -> &[Rat] {
        &self.shares
    }

    pub fn sum(&self) -> Rat {
        self.shares.iter().sum()
    }
}

impl std::ops::Add<&Allocation> for &Allocation {
    type Output = Allocation;
    fn add(self, rhs: &Allocation) -> Allocation {
        Allocation::new(
            self.shares
                .iter()
                .zip(&rhs.shares)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}
