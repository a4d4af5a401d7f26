//! Exact scalar arithmetic: arbitrary-precision rationals and factored
//! radicals `∏ p^{e_p}` with rational exponents.
//!
//! A [`FactoredRadical`] is the exact form in which root discriminants
//! and Fontaine-style bounds circulate through the crate. Exponents may
//! live over rational primes or over named prime ideals that carry
//! their residue characteristic and residue degree; comparisons against
//! rational bounds are decided exactly by clearing denominators and
//! comparing integer powers, never through floating point.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::{BigInt, Sign};
use num::integer::Integer;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::BigRational;

use crate::{Error, Result};

/// Exact rational scalar. Kept in lowest terms with positive
/// denominator by construction.
pub type Rational = BigRational;

/// Builds a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"` or `"a"` into a rational. Rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n
        .parse()
        .map_err(|_| Error::Invalid(format!("bad rational numerator `{s}`")))?;
    let den: BigInt = d
        .parse()
        .map_err(|_| Error::Invalid(format!("bad rational denominator `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Invalid(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `a/b`, or `a` when integral.
pub fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Exponent carrier in a [`FactoredRadical`]: either a rational prime
/// or a named prime ideal with residue data `(p, f)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeLabel {
    /// A rational prime `p`. Primality is checked at construction.
    Prime(u64),
    /// A named prime ideal above `residue_char` with residue degree
    /// `residue_degree`, e.g. a prime of a base field.
    Ideal {
        name: String,
        residue_char: u64,
        residue_degree: u32,
    },
}

impl PrimeLabel {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(PrimeLabel::Prime(p))
    }

    pub fn ideal(name: &str, residue_char: u64, residue_degree: u32) -> Result<Self> {
        if !is_prime_u64(residue_char) {
            return Err(Error::Domain(format!(
                "ideal `{name}`: residue characteristic {residue_char} is not prime"
            )));
        }
        if residue_degree == 0 {
            return Err(Error::Domain(format!(
                "ideal `{name}`: residue degree must be positive"
            )));
        }
        if name.parse::<u64>().is_ok() {
            return Err(Error::LabelConflict(format!(
                "ideal name `{name}` would shadow a rational prime"
            )));
        }
        Ok(PrimeLabel::Ideal {
            name: name.to_string(),
            residue_char,
            residue_degree,
        })
    }

    pub fn residue_char(&self) -> u64 {
        match self {
            PrimeLabel::Prime(p) => *p,
            PrimeLabel::Ideal { residue_char, .. } => *residue_char,
        }
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeLabel::Prime(p) => write!(f, "{p}"),
            PrimeLabel::Ideal { name, .. } => write!(f, "{name}"),
        }
    }
}

/// A formal product `∏ label^{e}` with nonzero rational exponents.
/// The empty product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredRadical {
    factors: BTreeMap<PrimeLabel, Rational>,
}

impl FactoredRadical {
    /// The empty product.
    pub fn one() -> Self {
        FactoredRadical::default()
    }

    /// Builds from `(label, exponent)` pairs; zero exponents are
    /// dropped, duplicate labels are summed.
    pub fn new(pairs: Vec<(PrimeLabel, Rational)>) -> Result<Self> {
        let mut r = FactoredRadical::one();
        for (label, e) in pairs {
            r.push(label, e)?;
        }
        Ok(r)
    }

    /// Convenience constructor over rational primes.
    pub fn from_prime_powers(pairs: &[(u64, Rational)]) -> Result<Self> {
        let mut v = Vec::with_capacity(pairs.len());
        for (p, e) in pairs {
            v.push((PrimeLabel::prime(*p)?, e.clone()));
        }
        FactoredRadical::new(v)
    }

    fn push(&mut self, label: PrimeLabel, e: Rational) -> Result<()> {
        if let PrimeLabel::Ideal { name, .. } = &label {
            if let Ok(p) = name.parse::<u64>() {
                if self.factors.contains_key(&PrimeLabel::Prime(p)) {
                    return Err(Error::LabelConflict(format!(
                        "ideal `{name}` meets rational prime {p}"
                    )));
                }
            }
        }
        let entry = self.factors.entry(label.clone()).or_insert_with(Rational::zero);
        *entry += e;
        if entry.is_zero() {
            self.factors.remove(&label);
        }
        Ok(())
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, label: &PrimeLabel) -> Rational {
        self.factors.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn exponent_of_prime(&self, p: u64) -> Rational {
        self.exponent(&PrimeLabel::Prime(p))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeLabel, &Rational)> {
        self.factors.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &PrimeLabel> {
        self.factors.keys()
    }

    fn has_ideal_labels(&self) -> Option<&PrimeLabel> {
        self.factors
            .keys()
            .find(|l| matches!(l, PrimeLabel::Ideal { .. }))
    }
}

impl fmt::Display for FactoredRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(l, e)| format!("{l}^({})", rational_str(e)))
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Multiplies two radicals (adds exponents, drops zeros). Fails when a
/// rational-prime label collides with an ideal label of the same name.
pub fn radical_mul(a: &FactoredRadical, b: &FactoredRadical) -> Result<FactoredRadical> {
    let mut out = a.clone();
    for (label, e) in b.iter() {
        out.push(label.clone(), e.clone())?;
    }
    // A prime introduced by `a` may also collide with an ideal already
    // present in `b`; scan the merged map once to catch both orders.
    for label in out.factors.keys() {
        if let PrimeLabel::Ideal { name, .. } = label {
            if let Ok(p) = name.parse::<u64>() {
                if out.factors.contains_key(&PrimeLabel::Prime(p)) {
                    return Err(Error::LabelConflict(format!(
                        "ideal `{name}` meets rational prime {p}"
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// `n`-th root: divides every exponent by `n ≥ 1`.
pub fn radical_root(a: &FactoredRadical, n: u64) -> Result<FactoredRadical> {
    if n == 0 {
        return Err(Error::Domain("0th root of a radical".into()));
    }
    let n = Rational::from_integer(BigInt::from(n));
    let pairs = a
        .iter()
        .map(|(l, e)| (l.clone(), e / &n))
        .collect::<Vec<_>>();
    FactoredRadical::new(pairs)
}

/// Raises a radical to an integer power.
pub fn radical_pow(a: &FactoredRadical, k: i64) -> Result<FactoredRadical> {
    let k = rat_int(k);
    FactoredRadical::new(a.iter().map(|(l, e)| (l.clone(), e * &k)).collect())
}

fn bigint_pow_u64(base: &BigInt, exp: u64) -> BigInt {
    num::traits::Pow::pow(base, exp)
}

fn rational_pow_u64(base: &Rational, exp: u64) -> Rational {
    BigRational::new(
        bigint_pow_u64(base.numer(), exp),
        bigint_pow_u64(base.denom(), exp),
    )
}

/// Exact comparison of a radical over rational primes against a
/// positive rational bound.
///
/// All exponents are raised to the lcm `L` of their denominators and
/// the resulting integer powers `∏ p^{e·L}` are compared against
/// `bound^L` in exact big-integer arithmetic. Ideal labels must be
/// normalized away first (see [`normalize_ideal_labels`]).
pub fn radical_cmp(a: &FactoredRadical, bound: &Rational) -> Result<std::cmp::Ordering> {
    if let Some(label) = a.has_ideal_labels() {
        return Err(Error::UnnormalizedLabel(label.to_string()));
    }
    if bound.is_negative() {
        return Ok(std::cmp::Ordering::Greater);
    }
    if bound.is_zero() {
        if a.iter().any(|(_, e)| e.is_negative()) {
            return Err(Error::Domain(
                "cannot compare negative exponents against a zero bound".into(),
            ));
        }
        return Ok(std::cmp::Ordering::Greater);
    }
    let mut l = BigInt::one();
    for (_, e) in a.iter() {
        l = l.lcm(e.denom());
    }
    let l_u64 = l
        .to_u64()
        .ok_or_else(|| Error::Domain("exponent denominator lcm exceeds u64".into()))?;
    let mut lhs = Rational::one();
    for (label, e) in a.iter() {
        let scaled = e * Rational::from_integer(l.clone());
        debug_assert!(scaled.denom().is_one());
        let k = scaled.numer();
        let p = Rational::from_integer(BigInt::from(label.residue_char()));
        let mag = k
            .magnitude()
            .to_u64()
            .ok_or_else(|| Error::Domain("scaled exponent exceeds u64".into()))?;
        let powed = rational_pow_u64(&p, mag);
        if k.sign() == Sign::Minus {
            lhs *= powed.recip();
        } else {
            lhs *= powed;
        }
    }
    let rhs = rational_pow_u64(bound, l_u64);
    Ok(lhs.cmp(&rhs))
}

/// Per-prime exponent comparison of two normalized radicals: returns
/// the rational primes at which `a`'s exponent strictly exceeds `b`'s,
/// in increasing order.
pub fn exceeds_at(a: &FactoredRadical, b: &FactoredRadical) -> Result<Vec<u64>> {
    for r in [a, b] {
        if let Some(label) = r.has_ideal_labels() {
            return Err(Error::UnnormalizedLabel(label.to_string()));
        }
    }
    let mut primes: Vec<u64> = a
        .labels()
        .chain(b.labels())
        .map(|l| l.residue_char())
        .collect();
    primes.sort_unstable();
    primes.dedup();
    Ok(primes
        .into_iter()
        .filter(|p| a.exponent_of_prime(*p) > b.exponent_of_prime(*p))
        .collect())
}

/// Folds every ideal label `π` with residue data `(p, f)` and exponent
/// `e` into the rational prime `p` with exponent `f·e`, i.e. replaces
/// `π^e` by its absolute norm `p^{f e}`.
pub fn normalize_ideal_labels(a: &FactoredRadical) -> Result<FactoredRadical> {
    let mut out = FactoredRadical::one();
    for (label, e) in a.iter() {
        match label {
            PrimeLabel::Prime(p) => out.push(PrimeLabel::Prime(*p), e.clone())?,
            PrimeLabel::Ideal {
                residue_char,
                residue_degree,
                ..
            } => {
                let fe = e * rat_int(*residue_degree as i64);
                out.push(PrimeLabel::Prime(*residue_char), fe)?;
            }
        }
    }
    Ok(out)
}

/// A decimal approximation of a radical with a stated error radius of
/// one unit in the last rendered digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxValue {
    /// Decimal rendering with `digits` fractional digits.
    pub display: String,
    /// Number of fractional digits; the true value differs from the
    /// rendering by at most `10^-digits`.
    pub digits: u32,
}

impl fmt::Display for ApproxValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display)
    }
}

/// Decimal approximation of a normalized radical, correct to within
/// one unit in the last of `digits ≤ 50` fractional digits. Computed by
/// integer `L`-th roots of scaled powers; no floating point.
pub fn radical_approx(a: &FactoredRadical, digits: u32) -> Result<ApproxValue> {
    if digits > 50 {
        return Err(Error::Domain("approximation capped at 50 digits".into()));
    }
    if let Some(label) = a.has_ideal_labels() {
        return Err(Error::UnnormalizedLabel(label.to_string()));
    }
    let mut l = BigInt::one();
    for (_, e) in a.iter() {
        l = l.lcm(e.denom());
    }
    let l_u32 = l
        .to_u32()
        .ok_or_else(|| Error::Domain("exponent denominator lcm exceeds u32".into()))?;
    // value^L = numer/denom as exact integers
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for (label, e) in a.iter() {
        let scaled = e * Rational::from_integer(l.clone());
        let k = scaled.numer();
        let mag = k.magnitude().to_u64().unwrap();
        let powed = bigint_pow_u64(&BigInt::from(label.residue_char()), mag);
        if k.sign() == Sign::Minus {
            denom *= powed;
        } else {
            numer *= powed;
        }
    }
    // floor((numer/denom)^(1/L) * 10^(digits+3)), then round the three
    // guard digits away; total error stays below 10^-digits.
    let guard = digits + 3;
    let scale = bigint_pow_u64(&BigInt::from(10), guard as u64 * l_u32 as u64);
    let t = (numer * scale) / denom;
    let root = num::integer::Roots::nth_root(&t, l_u32);
    let rounded = (&root + BigInt::from(500)) / BigInt::from(1000);
    let s = rounded.to_string();
    let d = digits as usize;
    let display = if s.len() <= d {
        format!("0.{:0>width$}", s, width = d)
    } else if d == 0 {
        s
    } else {
        let (int_part, frac_part) = s.split_at(s.len() - d);
        format!("{int_part}.{frac_part}")
    };
    Ok(ApproxValue { display, digits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn radq(pairs: &[(u64, (i64, i64))]) -> FactoredRadical {
        FactoredRadical::from_prime_powers(
            &pairs
                .iter()
                .map(|(p, (n, d))| (*p, rat(*n, *d)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn mul_adds_exponents_and_drops_zeros() {
        let a = radq(&[(2, (5, 2)), (3, (3, 2))]);
        let b = radq(&[(2, (-5, 2)), (5, (1, 3))]);
        let c = radical_mul(&a, &b).unwrap();
        assert!(c.exponent_of_prime(2).is_zero());
        assert_eq!(c.exponent_of_prime(3), rat(3, 2));
        assert_eq!(c.exponent_of_prime(5), rat(1, 3));
    }

    #[test]
    fn mul_rejects_label_shadowing() {
        // Ideal names that parse as integers are rejected at
        // construction, which is what keeps radical_mul conflict-free.
        assert!(matches!(
            PrimeLabel::ideal("2", 2, 1),
            Err(Error::LabelConflict(_))
        ));
    }

    #[test]
    fn root_divides_exponents() {
        let a = radq(&[(2, (100, 1)), (3, (62, 1))]);
        let r = radical_root(&a, 48).unwrap();
        assert_eq!(r.exponent_of_prime(2), rat(100, 48));
        assert_eq!(r.exponent_of_prime(3), rat(31, 24));
        assert!(radical_root(&a, 0).is_err());
    }

    #[test]
    fn torsion_bound_is_below_42() {
        // 3^(3/2)·2^(5/2) vs 42: squaring clears denominators, and
        // 27·32 = 864 < 1764 = 42² decides it.
        assert_eq!(27 * 32, 864);
        assert_eq!(42 * 42, 1764);
        let a = radq(&[(3, (3, 2)), (2, (5, 2))]);
        assert_eq!(radical_cmp(&a, &rat_int(42)).unwrap(), Ordering::Less);
        assert_eq!(radical_cmp(&a, &rat_int(29)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn cmp_handles_negative_exponents_and_degenerate_bounds() {
        let a = radq(&[(2, (-1, 2))]);
        assert_eq!(
            radical_cmp(&a, &rat(1, 2)).unwrap(),
            Ordering::Greater // 2^(-1/2) ≈ 0.707 > 1/2
        );
        assert!(radical_cmp(&a, &rat_int(0)).is_err());
        let b = radq(&[(2, (1, 2))]);
        assert_eq!(radical_cmp(&b, &rat_int(0)).unwrap(), Ordering::Greater);
        assert_eq!(radical_cmp(&b, &rat_int(-3)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn cmp_detects_equality_through_denominators() {
        // 2^(3/2)·2^(1/2) = 4 exactly.
        let a = radq(&[(2, (2, 1))]);
        assert_eq!(radical_cmp(&a, &rat_int(4)).unwrap(), Ordering::Equal);
        let b = radq(&[(2, (3, 2)), (3, (0, 1))]);
        let two_pow = radical_mul(&b, &radq(&[(2, (1, 2))])).unwrap();
        assert_eq!(radical_cmp(&two_pow, &rat_int(4)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn cmp_requires_normalized_labels() {
        let pi = PrimeLabel::ideal("pi2", 2, 2).unwrap();
        let a = FactoredRadical::new(vec![(pi, rat_int(3))]).unwrap();
        assert!(matches!(
            radical_cmp(&a, &rat_int(10)),
            Err(Error::UnnormalizedLabel(_))
        ));
        let n = normalize_ideal_labels(&a).unwrap();
        assert_eq!(n.exponent_of_prime(2), rat_int(6));
        assert_eq!(radical_cmp(&n, &rat_int(64)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn normalize_scales_by_residue_degree() {
        // π^117 with residue data (p=2, f=2) has absolute norm 2^234.
        let pi = PrimeLabel::ideal("pi2M", 2, 2).unwrap();
        let a = FactoredRadical::new(vec![(pi, rat_int(117))]).unwrap();
        let n = normalize_ideal_labels(&a).unwrap();
        assert_eq!(n.exponent_of_prime(2), rat_int(234));
    }

    #[test]
    fn exceeds_at_reports_offending_primes() {
        let a = radq(&[(2, (245, 96)), (3, (124, 96))]);
        let b = radq(&[(2, (5, 2)), (3, (3, 2))]);
        assert_eq!(exceeds_at(&a, &b).unwrap(), vec![2]);
        assert_eq!(exceeds_at(&b, &a).unwrap(), vec![3]);
    }

    #[test]
    fn approx_matches_hand_values() {
        let a = radq(&[(3, (3, 2)), (2, (5, 2))]);
        assert_eq!(radical_approx(&a, 2).unwrap().display, "29.39");
        let b = radq(&[(2, (2, 1)), (3, (3, 2))]);
        assert_eq!(radical_approx(&b, 2).unwrap().display, "20.78");
        assert_eq!(
            radical_approx(&FactoredRadical::one(), 3).unwrap().display,
            "1.000"
        );
        assert_eq!(radical_approx(&a, 4).unwrap().display, "29.3939");
        assert!(radical_approx(&a, 51).is_err());
    }

    #[test]
    fn parse_and_render_rationals() {
        assert_eq!(parse_rational("245/96").unwrap(), rat(245, 96));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rational_str(&rat(6, 4)), "3/2");
        assert_eq!(rational_str(&rat_int(7)), "7");
    }
}
