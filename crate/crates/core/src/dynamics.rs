//! Pre-periodicity of the diagonal under `[ω] × [ω']` on `E × E` and under
//! the product of Lattès maps on `ℙ¹ × ℙ¹`.
//!
//! The image of the diagonal under `(α, β)` is the diagonal exactly when
//! `α = β`, so the pair `(n, k)` condition collapses to `[ω]ᵏ = [ω']ᵏ`
//! (resp. `φ_ωᵏ = φ_ω'ᵏ`, i.e. `ωᵏ = ±ω'ᵏ`) whatever `n` is.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::ecurve::Curve;
use crate::endo::{endo_compose, endo_eq, endo_from_quadint, lattes, Endo};
use crate::error::{Error, Result};
use crate::kfield::KNum;
use crate::qring::{signed_root_order, unit_root_order, QuadInt};
use crate::ratfunc::{DegreeBudget, RatFunc};

/// `φ^{n+k}(X) = φⁿ(X)` with `k > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PreperiodicPair {
    pub n: u32,
    pub k: u32,
}

/// `E × E` or `ℙ¹ × ℙ¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    EE,
    P1,
}

impl Level {
    pub const ALL: [Level; 2] = [Level::EE, Level::P1];
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::EE => "ee",
            Level::P1 => "p1",
        })
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ee" => Ok(Level::EE),
            "p1" => Ok(Level::P1),
            other => Err(format!("unknown level `{other}` (expected ee or p1)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Confirmed,
    Refuted,
}

impl Outcome {
    fn from_bool(b: bool) -> Outcome {
        if b {
            Outcome::Confirmed
        } else {
            Outcome::Refuted
        }
    }

    pub fn is_confirmed(self) -> bool {
        self == Outcome::Confirmed
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Confirmed => "confirmed",
            Outcome::Refuted => "refuted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelVerdict {
    pub preperiodic: bool,
    pub minimal_k: Option<u32>,
}

impl LevelVerdict {
    fn from_order(k: Option<u32>) -> LevelVerdict {
        LevelVerdict {
            preperiodic: k.is_some(),
            minimal_k: k,
        }
    }

    /// The minimal pair, which always has `n = 0`.
    pub fn pair(&self) -> Option<PreperiodicPair> {
        self.minimal_k.map(|k| PreperiodicPair { n: 0, k })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub quotient: KNum,
    pub ee: LevelVerdict,
    pub p1: LevelVerdict,
    pub note: String,
}

impl Verdict {
    pub fn level(&self, level: Level) -> &LevelVerdict {
        match level {
            Level::EE => &self.ee,
            Level::P1 => &self.p1,
        }
    }
}

/// Decide both levels from the order of `ω/ω'` as a root of unity.
pub fn decide_diagonal(w: &QuadInt, w2: &QuadInt) -> Result<Verdict> {
    let ee = unit_root_order(w, w2)?;
    let p1 = signed_root_order(w, w2)?;
    let quotient = KNum::embed(w).try_div(&KNum::embed(w2))?;
    let note = match ee {
        Some(k) => format!("quotient is a root of unity of order {k}"),
        None if w.norm() != w2.norm() => format!("norms differ: {} vs {}", w.norm(), w2.norm()),
        None => "quotient has absolute value 1 but is not a root of unity".to_string(),
    };
    Ok(Verdict {
        quotient,
        ee: LevelVerdict::from_order(ee),
        p1: LevelVerdict::from_order(p1),
        note,
    })
}

fn check_inputs(w: &QuadInt, w2: &QuadInt, k: u32) -> Result<()> {
    if w.ring() != w2.ring() {
        return Err(Error::RingMismatch(w.ring(), w2.ring()));
    }
    if w.is_zero() || w2.is_zero() {
        return Err(Error::ZeroInput);
    }
    if k == 0 {
        return Err(Error::InvalidPeriod);
    }
    Ok(())
}

/// `ωᵏ = ω'ᵏ` (EE) or `ωᵏ = ±ω'ᵏ` (P1), by ring arithmetic alone.
pub fn verify_pair_ring(level: Level, w: &QuadInt, w2: &QuadInt, k: u32) -> Result<Outcome> {
    check_inputs(w, w2, k)?;
    let (a, b) = (w.pow(k), w2.pow(k));
    Ok(Outcome::from_bool(match level {
        Level::EE => a == b,
        Level::P1 => a == b || a == -&b,
    }))
}

/// Builds and caches iterates `[ω]ʲ` and `φ_ωʲ`, so repeated
/// verifications over many pairs and periods reuse earlier compositions.
pub struct SymbolicVerifier {
    curve: Curve,
    budget: DegreeBudget,
    endos: HashMap<QuadInt, Vec<Endo>>,
    maps: HashMap<QuadInt, Vec<RatFunc>>,
}

impl SymbolicVerifier {
    pub fn new(curve: Curve, budget: DegreeBudget) -> SymbolicVerifier {
        SymbolicVerifier {
            curve,
            budget,
            endos: HashMap::new(),
            maps: HashMap::new(),
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    fn check_degree(&self, w: &QuadInt, k: u32) -> Result<()> {
        let norm: u128 = w.norm().try_into().unwrap_or(u128::MAX);
        self.budget.check(norm.saturating_pow(k))
    }

    /// `[ω]ᵏ`, composed as `[ω] ∘ [ω]ᵏ⁻¹`.
    pub fn endo_power(&mut self, w: &QuadInt, k: u32) -> Result<Endo> {
        self.check_degree(w, k)?;
        if !self.endos.contains_key(w) {
            let base = endo_from_quadint(&self.curve, w, self.budget)?;
            self.endos
                .insert(w.clone(), vec![Endo::identity(self.curve.field()), base]);
        }
        let chain = self.endos.get_mut(w).expect("inserted above");
        while chain.len() <= k as usize {
            let next = endo_compose(&self.curve, &chain[1], chain.last().expect("nonempty"), self.budget)?;
            chain.push(next);
        }
        Ok(chain[k as usize].clone())
    }

    /// `φ_ωᵏ`, composed as `φ_ω ∘ φ_ωᵏ⁻¹`.
    pub fn lattes_power(&mut self, w: &QuadInt, k: u32) -> Result<RatFunc> {
        self.check_degree(w, k)?;
        if !self.maps.contains_key(w) {
            let base = lattes(&self.curve, w, self.budget)?.map;
            self.maps
                .insert(w.clone(), vec![RatFunc::identity(self.curve.field()), base]);
        }
        let chain = self.maps.get_mut(w).expect("inserted above");
        while chain.len() <= k as usize {
            let next = chain[1].compose(chain.last().expect("nonempty"), self.budget)?;
            chain.push(next);
        }
        Ok(chain[k as usize].clone())
    }

    /// `[ω]ᵏ = [ω']ᵏ` as endomorphisms (EE) or `φ_ωᵏ = φ_ω'ᵏ` (P1).
    pub fn verify(&mut self, level: Level, w: &QuadInt, w2: &QuadInt, k: u32) -> Result<Outcome> {
        check_inputs(w, w2, k)?;
        self.check_degree(w, k)?;
        self.check_degree(w2, k)?;
        Ok(Outcome::from_bool(match level {
            Level::EE => endo_eq(&self.endo_power(w, k)?, &self.endo_power(w2, k)?),
            Level::P1 => self.lattes_power(w, k)? == self.lattes_power(w2, k)?,
        }))
    }

    /// The same identity after `n` further iterations of `ω`:
    /// `αⁿ⁺ᵏ = βᵏ ∘ αⁿ`. Agrees with [`Self::verify`] for every `n`.
    pub fn verify_after(&mut self, level: Level, w: &QuadInt, w2: &QuadInt, k: u32, n: u32) -> Result<Outcome> {
        check_inputs(w, w2, k)?;
        self.check_degree(w, n + k)?;
        let unbounded = DegreeBudget(usize::MAX);
        Ok(Outcome::from_bool(match level {
            Level::EE => {
                let lhs = self.endo_power(w, n + k)?;
                let (beta, prefix) = (self.endo_power(w2, k)?, self.endo_power(w, n)?);
                let rhs = endo_compose(&self.curve, &beta, &prefix, unbounded)?;
                endo_eq(&lhs, &rhs)
            }
            Level::P1 => {
                let lhs = self.lattes_power(w, n + k)?;
                let rhs = self
                    .lattes_power(w2, k)?
                    .compose(&self.lattes_power(w, n)?, unbounded)?;
                lhs == rhs
            }
        }))
    }
}

pub fn verify_pair_symbolic(
    level: Level,
    c: &Curve,
    w: &QuadInt,
    w2: &QuadInt,
    k: u32,
    budget: DegreeBudget,
) -> Result<Outcome> {
    SymbolicVerifier::new(c.clone(), budget).verify(level, w, w2, k)
}

/// Symbolic verification at both levels, run on two threads.
pub fn verify_both_levels(
    c: &Curve,
    w: &QuadInt,
    w2: &QuadInt,
    k: u32,
    budget: DegreeBudget,
) -> Result<(Outcome, Outcome)> {
    let (ee, p1) = std::thread::scope(|s| {
        let ee = s.spawn(|| verify_pair_symbolic(Level::EE, c, w, w2, k, budget));
        let p1 = verify_pair_symbolic(Level::P1, c, w, w2, k, budget);
        (ee.join().expect("verification thread panicked"), p1)
    });
    Ok((ee?, p1?))
}

/// A confirmed `E × E` identity must project to a confirmed `ℙ¹` one, by
/// both methods.
pub fn projection_check(c: &Curve, w: &QuadInt, w2: &QuadInt, k: u32, budget: DegreeBudget) -> Result<Consistency> {
    let ring = (
        verify_pair_ring(Level::EE, w, w2, k)?,
        verify_pair_ring(Level::P1, w, w2, k)?,
    );
    let symbolic = verify_both_levels(c, w, w2, k, budget)?;
    let broken = |(ee, p1): (Outcome, Outcome)| ee.is_confirmed() && !p1.is_confirmed();
    Ok(if broken(ring) || broken(symbolic) {
        Consistency::Inconsistent
    } else {
        Consistency::Consistent
    })
}
