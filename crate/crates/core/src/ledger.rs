//! Dependence of the relative invariants on the relative homology class of
//! the surface bounded by `K ∪ J`.
//!
//! Two surfaces in the same relative class setting differ by a closed class
//! `A`. Changing the surface twists the framing on `K` and on `J` by the same
//! amount, so relative tb never changes. Relative rotation and self-linking
//! change by the Euler class evaluated on `A`, so they are well defined only
//! modulo the gcd of the Euler evaluations. In a tight model that gcd is 0.
//!
//! Only the free part of `H_2(M)` is modelled: torsion is invisible to any
//! homomorphism to the integers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("expected a vector of length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("surface classes have different bases `{0}` and `{1}`")]
    BaseMismatch(String, String),
    #[error("K·A = {k} but J·A = {j}; homologous knots meet a closed class equally")]
    InconsistentProfile { k: i64, j: i64 },
    #[error("trivialization change has degree {k} on K but {j} on J")]
    UnequalDegrees { k: i64, j: i64 },
    #[error("integer overflow while evaluating the Euler class")]
    Overflow,
}

/// Free rank of `H_2(M)`, the Euler class on a basis, and tightness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContactHomologyModel {
    rank: usize,
    euler: Vec<i64>,
    tight: bool,
}

impl ContactHomologyModel {
    pub fn new(rank: usize, euler: Vec<i64>, tight: bool) -> Result<Self, LedgerError> {
        if euler.len() != rank {
            return Err(LedgerError::LengthMismatch {
                expected: rank,
                found: euler.len(),
            });
        }
        Ok(ContactHomologyModel { rank, euler, tight })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn euler(&self) -> &[i64] {
        &self.euler
    }

    pub fn is_tight(&self) -> bool {
        self.tight
    }

    /// The Euler vector used for all differences: zero when tight.
    pub fn effective_euler(&self) -> Vec<i64> {
        if self.tight {
            vec![0; self.rank]
        } else {
            self.euler.clone()
        }
    }

    /// A surface class over `base` shifted by the closed class `offset`.
    pub fn surface(&self, base: impl Into<String>, offset: Vec<i64>) -> Result<RelativeSurfaceClass, LedgerError> {
        if offset.len() != self.rank {
            return Err(LedgerError::LengthMismatch {
                expected: self.rank,
                found: offset.len(),
            });
        }
        Ok(RelativeSurfaceClass {
            base: base.into(),
            offset,
        })
    }

    fn closed_difference(&self, s1: &RelativeSurfaceClass, s2: &RelativeSurfaceClass) -> Result<Vec<i64>, LedgerError> {
        if s1.base != s2.base {
            return Err(LedgerError::BaseMismatch(s1.base.clone(), s2.base.clone()));
        }
        for s in [s1, s2] {
            if s.offset.len() != self.rank {
                return Err(LedgerError::LengthMismatch {
                    expected: self.rank,
                    found: s.offset.len(),
                });
            }
        }
        s1.offset
            .iter()
            .zip(&s2.offset)
            .map(|(a, b)| a.checked_sub(*b).ok_or(LedgerError::Overflow))
            .collect()
    }

    /// Evaluate the effective Euler class on a closed class.
    pub fn evaluate(&self, closed: &[i64]) -> Result<i64, LedgerError> {
        if closed.len() != self.rank {
            return Err(LedgerError::LengthMismatch {
                expected: self.rank,
                found: closed.len(),
            });
        }
        self.effective_euler()
            .iter()
            .zip(closed)
            .try_fold(0i64, |acc, (e, v)| acc.checked_add(e.checked_mul(*v)?))
            .ok_or(LedgerError::Overflow)
    }
}

/// A class in `H_2(M, K ∪ J)`: an opaque base class plus a closed offset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelativeSurfaceClass {
    pub base: String,
    pub offset: Vec<i64>,
}

/// Algebraic intersections of `K` and `J` with a closed class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntersectionProfile {
    pub k_dot_a: i64,
    pub j_dot_a: i64,
}

/// Change of relative tb between two surfaces of the same base: always zero,
/// since both boundary framings twist by the same amount.
pub fn tb_diff(
    m: &ContactHomologyModel,
    s1: &RelativeSurfaceClass,
    s2: &RelativeSurfaceClass,
) -> Result<i64, LedgerError> {
    m.closed_difference(s1, s2)?;
    Ok(0)
}

/// Framing change on `K` and on `J` when passing from `s1` to `s1 + A`. Each
/// ribbon arc of the intersection contributes one twist to each boundary.
pub fn twist_transfer(
    m: &ContactHomologyModel,
    s1: &RelativeSurfaceClass,
    s2: &RelativeSurfaceClass,
    p: IntersectionProfile,
) -> Result<(i64, i64), LedgerError> {
    m.closed_difference(s1, s2)?;
    if p.k_dot_a != p.j_dot_a {
        return Err(LedgerError::InconsistentProfile {
            k: p.k_dot_a,
            j: p.j_dot_a,
        });
    }
    Ok((p.k_dot_a, p.j_dot_a))
}

/// `e(ξ)([s1] - [s2])`.
pub fn rot_diff(
    m: &ContactHomologyModel,
    s1: &RelativeSurfaceClass,
    s2: &RelativeSurfaceClass,
) -> Result<i64, LedgerError> {
    let closed = m.closed_difference(s1, s2)?;
    m.evaluate(&closed)
}

/// Same value as [`rot_diff`]: the self-linking number changes by the same
/// Euler evaluation.
pub fn sl_diff(
    m: &ContactHomologyModel,
    s1: &RelativeSurfaceClass,
    s2: &RelativeSurfaceClass,
) -> Result<i64, LedgerError> {
    rot_diff(m, s1, s2)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The relative rotation and self-linking numbers are defined modulo this
/// value; 0 means they are well defined.
pub fn ambiguity(m: &ContactHomologyModel) -> u64 {
    m.effective_euler().iter().fold(0, |acc, e| gcd(acc, e.unsigned_abs()))
}

/// Change of relative rotation under a change of trivialization of degree
/// `degree_k` on `K` and `degree_j` on `J`. A single trivialization over the
/// surface restricts with equal degree to both boundaries, so the change is 0.
pub fn trivialization_invariance_check(degree_k: i64, degree_j: i64) -> Result<i64, LedgerError> {
    if degree_k != degree_j {
        return Err(LedgerError::UnequalDegrees {
            k: degree_k,
            j: degree_j,
        });
    }
    Ok(degree_j - degree_k)
}

/// Model file: `{"rank":…,"euler":[…],"tight":…}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub rank: usize,
    pub euler: Vec<i64>,
    pub tight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] LedgerError),
}

pub fn parse_model(input: &str) -> Result<ContactHomologyModel, ModelParseError> {
    let raw: ModelJson = serde_json::from_str(input).map_err(|e| ModelParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(ContactHomologyModel::new(raw.rank, raw.euler, raw.tight)?)
}

impl ContactHomologyModel {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ModelJson {
            rank: self.rank,
            euler: self.euler.clone(),
            tight: self.tight,
        })
        .expect("model serializes")
    }
}

/// `{"tb_diff":…,"rot_diff":…,"sl_diff":…,"ambiguity":…}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerReport {
    pub tb_diff: i64,
    pub rot_diff: i64,
    pub sl_diff: i64,
    pub ambiguity: u64,
}

/// All ledger quantities for one pair of surface classes.
pub fn query(
    m: &ContactHomologyModel,
    s1: &RelativeSurfaceClass,
    s2: &RelativeSurfaceClass,
) -> Result<LedgerReport, LedgerError> {
    Ok(LedgerReport {
        tb_diff: tb_diff(m, s1, s2)?,
        rot_diff: rot_diff(m, s1, s2)?,
        sl_diff: sl_diff(m, s1, s2)?,
        ambiguity: ambiguity(m),
    })
}
