//! Root-discriminant machinery: exact root discriminants as factored
//! radicals, Fontaine-style ramification bounds, conductor-discriminant
//! products, tame growth increments, and degree caps read off an
//! embedded transcription of the Odlyzko/Martinet bound tables.

use std::cmp::Ordering;

use num::traits::One;

use crate::exact::{
    parse_rational, radical_cmp, radical_mul, radical_root, rat_int, FactoredRadical, PrimeLabel,
    Rational,
};
use crate::{Error, Result};

/// Embedded default transcription of the bound tables.
pub const DEFAULT_ODLYZKO_TABLE: &str = include_str!("../assets/odlyzko.tsv");

/// Which analytic bound family a cap is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundMode {
    Unconditional,
    Grh,
}

impl BoundMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "grh" => Ok(BoundMode::Grh),
            "unconditional" => Ok(BoundMode::Unconditional),
            other => Err(Error::Invalid(format!(
                "unknown bound mode `{other}` (expected `grh` or `unconditional`)"
            ))),
        }
    }
}

impl std::fmt::Display for BoundMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundMode::Grh => write!(f, "grh"),
            BoundMode::Unconditional => write!(f, "unconditional"),
        }
    }
}

/// Lower-bound table `n ↦ B(n)`: any field with root discriminant
/// `< B(n)` has degree `< n`.
#[derive(Debug, Clone)]
pub struct OdlyzkoTable {
    unconditional: Vec<(u32, Rational)>,
    grh: Vec<(u32, Rational)>,
}

/// Result of a degree-cap lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeCap {
    /// Smallest tabulated degree `n` with `B(n) ≥ δ`; fields of degree
    /// `≥ n` cannot have root discriminant `< δ`... i.e. the audited
    /// field has degree `< n`.
    Capped(u32),
    /// The table contains no row ruling anything out at this size.
    UnboundedByTable,
}

impl OdlyzkoTable {
    /// Parses the `mode degree num den` text format (`#` comments).
    /// Enforces strictly increasing degrees and non-decreasing bounds
    /// per mode, and presence of both modes.
    pub fn parse(text: &str) -> Result<Self> {
        let mut unconditional = Vec::new();
        let mut grh = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(Error::Invalid(format!(
                    "line {}: expected `mode degree num den`, got `{line}`",
                    lineno + 1
                )));
            }
            let mode = BoundMode::parse(parts[0])
                .map_err(|e| Error::Invalid(format!("line {}: {e}", lineno + 1)))?;
            let degree: u32 = parts[1].parse().map_err(|_| {
                Error::Invalid(format!("line {}: bad degree `{}`", lineno + 1, parts[1]))
            })?;
            let bound = parse_rational(&format!("{}/{}", parts[2], parts[3]))
                .map_err(|e| Error::Invalid(format!("line {}: {e}", lineno + 1)))?;
            match mode {
                BoundMode::Unconditional => unconditional.push((degree, bound)),
                BoundMode::Grh => grh.push((degree, bound)),
            }
        }
        for (name, rows) in [("unconditional", &unconditional), ("grh", &grh)] {
            if rows.is_empty() {
                return Err(Error::Invalid(format!("missing `{name}` rows")));
            }
            for w in rows.windows(2) {
                if w[1].0 <= w[0].0 {
                    return Err(Error::Invalid(format!(
                        "`{name}` degrees must be strictly increasing near degree {}",
                        w[1].0
                    )));
                }
                if w[1].1 < w[0].1 {
                    return Err(Error::Invalid(format!(
                        "`{name}` bounds must be non-decreasing near degree {}",
                        w[1].0
                    )));
                }
            }
        }
        Ok(OdlyzkoTable { unconditional, grh })
    }

    /// The embedded default table.
    pub fn embedded() -> Self {
        OdlyzkoTable::parse(DEFAULT_ODLYZKO_TABLE)
            .expect("embedded bound table must parse")
    }

    pub fn rows(&self, mode: BoundMode) -> &[(u32, Rational)] {
        match mode {
            BoundMode::Unconditional => &self.unconditional,
            BoundMode::Grh => &self.grh,
        }
    }

    /// Smallest tabulated degree whose bound reaches `delta`.
    pub fn max_degree(&self, delta: &FactoredRadical, mode: BoundMode) -> Result<DegreeCap> {
        for (degree, bound) in self.rows(mode) {
            if radical_cmp(delta, bound)? != Ordering::Greater {
                return Ok(DegreeCap::Capped(*degree));
            }
        }
        Ok(DegreeCap::UnboundedByTable)
    }
}

/// Root discriminant `|Δ|^{1/degree}` as a factored radical.
pub fn root_discriminant(disc: &FactoredRadical, degree: u64) -> Result<FactoredRadical> {
    if degree == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    radical_root(disc, degree)
}

/// Pushes a root discriminant up a tower:
/// `δ_L = δ_K · N_{K/Q}(Δ_{L/K})^{1/[L:Q]}`. The relative-discriminant
/// norm must already be over rational primes.
pub fn extend_root_disc(
    delta_k: &FactoredRadical,
    rel_disc_norm: &FactoredRadical,
    degree_l: u64,
) -> Result<FactoredRadical> {
    if let Some(label) = rel_disc_norm
        .labels()
        .find(|l| matches!(l, PrimeLabel::Ideal { .. }))
    {
        return Err(Error::UnnormalizedLabel(label.to_string()));
    }
    radical_mul(delta_k, &radical_root(rel_disc_norm, degree_l)?)
}

/// A strict upper bound produced by the ramification-bound machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictBound(pub FactoredRadical);

impl StrictBound {
    pub fn value(&self) -> &FactoredRadical {
        &self.0
    }

    pub fn is_strict(&self) -> bool {
        true
    }
}

/// Root-discriminant growth cap for an `ℓ`-power torsion extension of
/// a field of root discriminant `δ_K`, ramified of level `i` at `p`:
/// `δ_L < δ_K · p^{1+i} · ℓ^{1 + 1/(ℓ-1)}` (strict).
pub fn fontaine_bound(
    delta_k: &FactoredRadical,
    p: u64,
    i: &Rational,
    ell: u64,
) -> Result<StrictBound> {
    if p == ell {
        return Err(Error::Domain(
            "residue characteristic must differ from the torsion prime".into(),
        ));
    }
    if i < &rat_int(-1) {
        return Err(Error::Domain(format!("level must be ≥ -1, got {i}")));
    }
    let p_part = FactoredRadical::new(vec![(
        PrimeLabel::prime(p)?,
        Rational::one() + i,
    )])?;
    let ell_part = FactoredRadical::new(vec![(
        PrimeLabel::prime(ell)?,
        Rational::one() + Rational::one() / rat_int(ell as i64 - 1),
    )])?;
    Ok(StrictBound(radical_mul(
        &radical_mul(delta_k, &p_part)?,
        &ell_part,
    )?))
}

/// Level cap at the torsion prime itself: a group scheme killed by
/// `ℓ^n` over a base with absolute ramification degree `e` lives in a
/// field ramified of level at most `e(n + 1/(ℓ-1)) - 1`.
pub fn fontaine_local_cap(ell: u64, n: u32, e: u64) -> Result<Rational> {
    if ell < 2 {
        return Err(Error::Domain("torsion prime must be prime".into()));
    }
    if n == 0 || e == 0 {
        return Err(Error::Domain("torsion exponent and e must be positive".into()));
    }
    Ok(rat_int(e as i64) * (rat_int(n as i64) + Rational::one() / rat_int(ell as i64 - 1))
        - Rational::one())
}

/// One conductor with a multiplicity, for conductor-discriminant
/// products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterConductor {
    pub conductor: FactoredRadical,
    pub multiplicity: u32,
}

/// Conductor-discriminant formula: the relative discriminant of an
/// abelian extension is the product of the conductors of all
/// characters of its Galois group, with multiplicity.
pub fn conductor_discriminant(chars: &[CharacterConductor]) -> Result<FactoredRadical> {
    let mut out = FactoredRadical::one();
    for c in chars {
        let mut powed = Vec::new();
        for (label, e) in c.conductor.iter() {
            powed.push((label.clone(), e * rat_int(c.multiplicity as i64)));
        }
        out = radical_mul(&out, &FactoredRadical::new(powed)?)?;
    }
    Ok(out)
}

/// Total number of characters in a multiset (for degree consistency).
pub fn character_count(chars: &[CharacterConductor]) -> u64 {
    chars.iter().map(|c| c.multiplicity as u64).sum()
}

/// Ramification degree of a tame step, when known; `Sup` takes the
/// supremum over all possible tame degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TameDegree {
    Known(u64),
    Sup,
}

/// Root-discriminant exponent gained at one prime by a tame step over
/// a degree-`deg_k` base with `g` primes of residue degree `f` above
/// it: `(f·g/deg_k)(1 - 1/e')`, or its supremum `f·g/deg_k` when the
/// tame degree is unknown.
pub fn tame_root_disc_increment(
    f: u64,
    g: u64,
    deg_k: u64,
    e_prime: TameDegree,
) -> Result<Rational> {
    if f == 0 || g == 0 || deg_k == 0 {
        return Err(Error::Domain("f, g and the degree must be positive".into()));
    }
    if f * g > deg_k {
        return Err(Error::Domain(format!(
            "f·g = {} exceeds the base degree {deg_k}",
            f * g
        )));
    }
    let scale = rat_int((f * g) as i64) / rat_int(deg_k as i64);
    match e_prime {
        TameDegree::Sup => Ok(scale),
        TameDegree::Known(0) => Err(Error::Domain("tame degree must be positive".into())),
        TameDegree::Known(e) => {
            Ok(scale * (Rational::one() - Rational::one() / rat_int(e as i64)))
        }
    }
}
