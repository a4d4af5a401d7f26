//! Conductor bookkeeping for abelian varieties: the decomposition
//! c = 2u + t + δ with Serre's wild measure δ, exhaustive case
//! enumeration under declared constraints, the level bound extracted
//! from δ, and Mestre's analytic lower bound N > 10^g.

use num::Zero;

use crate::exact::{rat_int, Rational};
use crate::filtration::{FixedDimProfile, RamFiltration};
use crate::{Error, Result};

/// Reduction data of an abelian variety at a fixed prime: `u` the
/// unipotent dimension, `t` the toric dimension, `delta` Serre's
/// measure of wild ramification, `g` the dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionData {
    pub u: u32,
    pub t: u32,
    pub delta: Rational,
    pub g: u32,
}

impl ReductionData {
    pub fn new(u: u32, t: u32, delta: Rational, g: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::Domain("abelian variety dimension must be positive".into()));
        }
        if u + t > g {
            return Err(Error::Invariant(format!(
                "u + t = {} exceeds the dimension g = {g}",
                u + t
            )));
        }
        if delta < Rational::zero() {
            return Err(Error::Domain("Serre's δ is non-negative".into()));
        }
        Ok(ReductionData { u, t, delta, g })
    }

    /// The conductor exponent c = 2u + t + δ.
    pub fn conductor_exponent(&self) -> Rational {
        rat_int(2 * self.u as i64) + rat_int(self.t as i64) + self.delta.clone()
    }
}

/// Serre's wild measure δ = Σ_{i≥1} (gᵢ/g₀)·(dim − dᵢ) for a
/// filtration with a fixed-dimension profile on the torsion module.
pub fn serre_delta(f: &RamFiltration, profile: &FixedDimProfile) -> Result<Rational> {
    profile.check_against(f)?;
    let g0 = rat_int(f.e() as i64);
    let mut delta = Rational::zero();
    for i in 1..f.orders().len() {
        let gi = f.order_at(i);
        if gi == 1 {
            continue;
        }
        let codim = profile.dim - profile.fixed_dims[i];
        delta += rat_int(gi as i64) / &g0 * rat_int(codim as i64);
    }
    Ok(delta)
}

/// Constraints for [`enumerate_cases`].
#[derive(Debug, Clone, Default)]
pub struct CaseConstraints {
    /// Require u > 0 (the variety is not semi-stable).
    pub require_u_positive: bool,
    /// Require δ = 0 (tame action on the torsion module).
    pub require_delta_zero: bool,
}

/// All integer triples (u, t, δ) with 2u + t + δ = c, u + t ≤ g and
/// the given constraints, in lexicographic order.
pub fn enumerate_cases(c: u32, g: u32, constraints: &CaseConstraints) -> Result<Vec<ReductionData>> {
    if g == 0 {
        return Err(Error::Domain("abelian variety dimension must be positive".into()));
    }
    let mut out = Vec::new();
    for u in 0..=c / 2 {
        if constraints.require_u_positive && u == 0 {
            continue;
        }
        for t in 0..=(c - 2 * u) {
            if u + t > g {
                break;
            }
            let delta = c - 2 * u - t;
            if constraints.require_delta_zero && delta != 0 {
                continue;
            }
            out.push(ReductionData::new(u, t, rat_int(delta as i64), g)?);
        }
    }
    Ok(out)
}

/// Upper bound on the level of ramification extracted from δ: each
/// nontrivial wild step loses at least `min_codim` fixed dimensions,
/// so Σ_{i≥1} gᵢ/g₀ ≤ δ/min_codim, and the left side dominates
/// u_max = φ(i_max). Returns δ/min_codim.
pub fn wild_mass_level_bound(delta: &Rational, min_codim: u32) -> Result<Rational> {
    if min_codim == 0 {
        return Err(Error::Domain("min_codim must be positive".into()));
    }
    if delta < &Rational::zero() {
        return Err(Error::Domain("Serre's δ is non-negative".into()));
    }
    Ok(delta / rat_int(min_codim as i64))
}

/// Mestre's bound: an abelian variety of dimension g over Q (under
/// the standard analytic hypotheses) has conductor N > 10^g.
pub fn mestre_check(n: u64, g: u32) -> bool {
    if g >= 20 {
        return false; // 10^20 exceeds u64 conductors we accept
    }
    (n as u128) > 10u128.pow(g)
}

/// Pretty-print helper for a reduction triple.
pub fn case_label(r: &ReductionData) -> String {
    format!("(u={}, t={}, δ={})", r.u, r.t, crate::exact::rational_str(&r.delta))
}
