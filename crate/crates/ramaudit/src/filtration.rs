//! Ramification filtrations in lower numbering and the exact Herbrand
//! transition between lower and upper numbering.
//!
//! A [`RamFiltration`] stores the orders `g_i = #G_i` of the
//! ramification groups of a Galois extension of local fields,
//! `G_0 ⊇ G_1 ⊇ …`, with the convention `G_u = G_{⌈u⌉}` for real
//! `u > 0`. On top of it sit the quantities the bound machinery needs:
//! `u_max` (the level of ramification), valuations of the different and
//! discriminant — computed along two independent routes and asserted
//! equal — and Artin conductor exponents from fixed-dimension profiles.
//! Conventions follow Serre, *Corps Locaux*, ch. IV–VI.

use num::traits::{One, Signed, Zero};

use crate::exact::{rat_int, Rational};
use crate::{Error, Result};

/// Lower-numbering ramification data of a finite Galois extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamFiltration {
    /// `orders[i] = #G_i`, trailing trivial groups trimmed.
    orders: Vec<u64>,
    /// Order of the full Galois group (`≥ orders[0]`, used only for
    /// bookkeeping; inertia is `orders[0]`).
    total_group_order: u64,
}

impl RamFiltration {
    /// Validates and normalizes the chain: orders non-increasing, each
    /// dividing the previous, positive, inertia dividing the total
    /// group order. A totally trivial extension is rejected.
    pub fn new(orders: Vec<u64>, total_group_order: u64) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Invalid("empty ramification chain".into()));
        }
        if orders.iter().any(|&g| g == 0) {
            return Err(Error::Invalid("ramification group of order 0".into()));
        }
        for w in orders.windows(2) {
            if w[1] > w[0] || w[0] % w[1] != 0 {
                return Err(Error::Invalid(format!(
                    "chain must be non-increasing with each order dividing the previous; got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if total_group_order == 0 || total_group_order % orders[0] != 0 {
            return Err(Error::Invalid(format!(
                "inertia order {} must divide the group order {total_group_order}",
                orders[0]
            )));
        }
        if total_group_order == 1 {
            return Err(Error::Invalid(
                "trivial extension carries no ramification data".into(),
            ));
        }
        let mut orders = orders;
        while orders.len() > 1 && *orders.last().unwrap() == 1 {
            orders.pop();
        }
        Ok(RamFiltration {
            orders,
            total_group_order,
        })
    }

    /// Chain with the inertia group as the whole Galois group.
    pub fn totally_ramified(orders: Vec<u64>) -> Result<Self> {
        let g0 = *orders.first().ok_or_else(|| Error::Invalid("empty chain".into()))?;
        RamFiltration::new(orders, g0)
    }

    /// Unramified extension of the given degree (`≥ 2`).
    pub fn unramified(degree: u64) -> Result<Self> {
        RamFiltration::new(vec![1], degree)
    }

    /// Tame extension: inertia of order `e ≥ 2`, trivial wild part.
    pub fn tame(e: u64, total_group_order: u64) -> Result<Self> {
        RamFiltration::new(vec![e, 1], total_group_order)
    }

    /// `#G_i` for any `i ≥ 0` (trivial beyond the stored chain).
    pub fn order_at(&self, i: usize) -> u64 {
        self.orders.get(i).copied().unwrap_or(1)
    }

    /// Ramification degree `e = #G_0`.
    pub fn e(&self) -> u64 {
        self.orders[0]
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn total_group_order(&self) -> u64 {
        self.total_group_order
    }

    /// Largest lower-numbering index with nontrivial group, `-1` when
    /// unramified.
    pub fn i_max(&self) -> Rational {
        match (0..self.orders.len()).rev().find(|&i| self.orders[i] > 1) {
            Some(i) => rat_int(i as i64),
            None => rat_int(-1),
        }
    }

    /// `Σ_{i≥1} g_i/g_0` over the nontrivial wild part; equals `u_max`
    /// minus the tame contribution `φ(0) = 0`, i.e. equals `u_max` for
    /// ramified extensions.
    pub fn wild_mass(&self) -> Rational {
        let g0 = rat_int(self.orders[0] as i64);
        let mut s = Rational::zero();
        for i in 1..self.orders.len() {
            if self.orders[i] > 1 {
                s += rat_int(self.orders[i] as i64) / &g0;
            }
        }
        s
    }
}

/// Herbrand transition function `φ(u) = ∫_0^u dt / (G_0 : G_t)`,
/// extended by the identity on `[-1, 0]`. Exact and piecewise linear.
pub fn herbrand_phi(f: &RamFiltration, u: &Rational) -> Result<Rational> {
    if u < &rat_int(-1) {
        return Err(Error::Domain(format!(
            "herbrand_phi needs u ≥ -1, got {u}"
        )));
    }
    if u <= &Rational::zero() {
        return Ok(u.clone());
    }
    let g0 = rat_int(f.orders[0] as i64);
    let ceil_u = u.ceil().to_integer();
    let m: i64 = num::traits::ToPrimitive::to_i64(&ceil_u)
        .ok_or_else(|| Error::Domain("evaluation point too large".into()))?;
    let mut acc = Rational::zero();
    for k in 1..m {
        acc += rat_int(f.order_at(k as usize) as i64);
    }
    let frac = u - rat_int(m - 1);
    acc += frac * rat_int(f.order_at(m as usize) as i64);
    Ok(acc / g0)
}

/// Inverse Herbrand function `ψ = φ^{-1}`; exact for all `v ≥ -1`.
pub fn herbrand_psi(f: &RamFiltration, v: &Rational) -> Result<Rational> {
    if v < &rat_int(-1) {
        return Err(Error::Domain(format!(
            "herbrand_psi needs v ≥ -1, got {v}"
        )));
    }
    if v <= &Rational::zero() {
        return Ok(v.clone());
    }
    // Walk the integer breakpoints; beyond the stored chain the slope
    // is 1/g_0 per unit, so the residual inverts in closed form.
    let g0 = rat_int(f.orders[0] as i64);
    let mut phi_prev = Rational::zero();
    let mut i: usize = 1;
    loop {
        let slope = rat_int(f.order_at(i) as i64) / &g0;
        let phi_i = &phi_prev + &slope;
        if v <= &phi_i {
            return Ok(rat_int(i as i64 - 1) + (v - &phi_prev) / slope);
        }
        if i >= f.orders.len() {
            // All later segments share this slope.
            return Ok(rat_int(i as i64 - 1) + (v - &phi_prev) / slope);
        }
        phi_prev = phi_i;
        i += 1;
    }
}

/// Largest `u` with `G^u` nontrivial: `φ(i_max)`, or `-1` when
/// unramified. This is the level of ramification (level `0` = tame).
pub fn u_max(f: &RamFiltration) -> Result<Rational> {
    let im = f.i_max();
    if im.is_negative() {
        return Ok(rat_int(-1));
    }
    herbrand_phi(f, &im)
}

/// Whether the extension is ramified of level at most `i`, i.e.
/// `G^u = 1` for all `u > i`.
pub fn is_level(f: &RamFiltration, i: &Rational) -> Result<bool> {
    if i < &rat_int(-1) {
        return Err(Error::Domain(format!("level must be ≥ -1, got {i}")));
    }
    Ok(u_max(f)? <= *i)
}

/// Valuation of the different in the extension field, computed along
/// two independent routes that are asserted equal:
/// `u_max + 1 - (i_max + 1)/e` and `(1/e) Σ_{i≥0} (g_i - 1)`.
/// Returns `0` for an unramified extension.
pub fn different_valuation(f: &RamFiltration) -> Result<Rational> {
    if f.e() == 1 {
        return Ok(Rational::zero());
    }
    let e = rat_int(f.e() as i64);
    let im = f.i_max();
    let route_jump = u_max(f)? + Rational::one() - (im + Rational::one()) / &e;
    let sum: i64 = f.orders.iter().map(|&g| g as i64 - 1).sum();
    let route_sum = rat_int(sum) / &e;
    if route_jump != route_sum {
        return Err(Error::Invariant(format!(
            "different valuation routes disagree: {route_jump} vs {route_sum}"
        )));
    }
    Ok(route_sum)
}

/// Valuation of the discriminant in the base field for one prime of
/// residue degree `f_res`: `f · Σ_{i≥0} (g_i - 1)`.
pub fn discriminant_valuation(f: &RamFiltration, f_res: u64) -> Result<Rational> {
    if f_res == 0 {
        return Err(Error::Domain("residue degree must be positive".into()));
    }
    let sum: i64 = f.orders.iter().map(|&g| g as i64 - 1).sum();
    Ok(rat_int(f_res as i64) * rat_int(sum))
}

/// For a level-`i` extension the discriminant valuation stays strictly
/// below `[L:K]·(i+1) = e·f·(i+1)`; used as a property check.
pub fn level_bound_holds(f: &RamFiltration, f_res: u64, i: &Rational) -> Result<bool> {
    if !is_level(f, i)? {
        return Err(Error::Domain(format!("extension is not of level {i}")));
    }
    if f.e() == 1 {
        return Ok(true);
    }
    let disc = discriminant_valuation(f, f_res)?;
    let cap = rat_int((f.e() * f_res) as i64) * (i + Rational::one());
    Ok(disc < cap)
}

/// Fixed-space dimensions `d_i = dim V^{G_i}` along a filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedDimProfile {
    pub dim: u32,
    /// One entry per stored filtration index, `d_0, d_1, …`.
    pub fixed_dims: Vec<u32>,
}

impl FixedDimProfile {
    pub fn new(dim: u32, fixed_dims: Vec<u32>) -> Result<Self> {
        if fixed_dims.iter().any(|&d| d > dim) {
            return Err(Error::Invalid(
                "fixed-space dimension exceeds the module dimension".into(),
            ));
        }
        for w in fixed_dims.windows(2) {
            if w[1] < w[0] {
                return Err(Error::Invalid(
                    "fixed-space dimensions must be non-decreasing along the chain".into(),
                ));
            }
        }
        Ok(FixedDimProfile { dim, fixed_dims })
    }

    /// Validates that the profile matches a filtration: equal lengths,
    /// and full fixed space wherever the group is already trivial.
    pub fn check_against(&self, f: &RamFiltration) -> Result<()> {
        if self.fixed_dims.len() != f.orders().len() {
            return Err(Error::Invalid(format!(
                "profile length {} does not match chain length {}",
                self.fixed_dims.len(),
                f.orders().len()
            )));
        }
        for (i, &g) in f.orders().iter().enumerate() {
            if g == 1 && self.fixed_dims[i] != self.dim {
                return Err(Error::Invalid(format!(
                    "trivial group at index {i} must fix everything"
                )));
            }
        }
        Ok(())
    }
}

/// Artin conductor exponent
/// `a(ρ) = (dim - d_0) + Σ_{i≥1} (g_i/g_0)(dim - d_i)`,
/// exact over the given profile.
pub fn artin_exponent(f: &RamFiltration, p: &FixedDimProfile) -> Result<Rational> {
    p.check_against(f)?;
    let g0 = rat_int(f.e() as i64);
    let mut a = rat_int(p.dim as i64 - p.fixed_dims[0] as i64);
    for i in 1..f.orders().len() {
        let codim = rat_int(p.dim as i64 - p.fixed_dims[i] as i64);
        a += rat_int(f.order_at(i) as i64) / &g0 * codim;
    }
    Ok(a)
}

/// Checks `φ_{L/K} = φ_{F/K} ∘ φ_{L/F}` at the given sample points.
pub fn herbrand_transitivity_check(
    f_lk: &RamFiltration,
    f_lf: &RamFiltration,
    f_fk: &RamFiltration,
    samples: &[Rational],
) -> Result<bool> {
    for s in samples {
        let direct = herbrand_phi(f_lk, s)?;
        let composed = herbrand_phi(f_fk, &herbrand_phi(f_lf, s)?)?;
        if direct != composed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of composing a tame step on top of a level-`i` extension:
/// the level does not grow, and the sub-extension hypothesis is
/// `min(i, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameComposeRule {
    pub level: Rational,
    pub sub_hypothesis: Rational,
}

/// A tame extension of a field ramified of level `i ≥ 0` is again
/// ramified of level `i`; for `i ≤ 0` the composite is trivially of
/// level `min(i, 0)`.
pub fn tame_compose_level(i: &Rational) -> TameComposeRule {
    let zero = Rational::zero();
    let sub = if i < &zero { i.clone() } else { zero };
    TameComposeRule {
        level: i.clone(),
        sub_hypothesis: sub,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn filt(orders: &[u64]) -> RamFiltration {
        RamFiltration::totally_ramified(orders.to_vec()).unwrap()
    }

    #[test]
    fn construction_enforces_divisibility_chain() {
        assert!(RamFiltration::new(vec![24, 12, 4, 4, 4], 24).is_ok());
        assert!(RamFiltration::new(vec![24, 7], 24).is_err());
        assert!(RamFiltration::new(vec![4, 8], 8).is_err());
        assert!(RamFiltration::new(vec![24], 25).is_err());
        assert!(RamFiltration::new(vec![1], 1).is_err());
        assert!(RamFiltration::new(vec![], 4).is_err());
    }

    #[test]
    fn phi_on_the_four_torsion_chain() {
        // Orders [24,12,4,4,4]: φ(4) = (12+4+4+4)/24 = 1.
        let f = filt(&[24, 12, 4, 4, 4]);
        assert_eq!(herbrand_phi(&f, &rat_int(4)).unwrap(), rat_int(1));
        assert_eq!(herbrand_phi(&f, &rat_int(1)).unwrap(), rat(1, 2));
        assert_eq!(u_max(&f).unwrap(), rat_int(1));
        assert_eq!(f.i_max(), rat_int(4));
        assert!(is_level(&f, &rat_int(1)).unwrap());
        assert!(!is_level(&f, &rat(21, 24)).unwrap());
    }

    #[test]
    fn phi_is_identity_up_to_the_last_jump_of_a_constant_chain() {
        let f = filt(&[3, 3, 3, 3, 3]);
        assert_eq!(herbrand_phi(&f, &rat_int(4)).unwrap(), rat_int(4));
        assert_eq!(u_max(&f).unwrap(), rat_int(4));
        // Beyond the chain the slope drops to 1/3.
        assert_eq!(herbrand_phi(&f, &rat_int(5)).unwrap(), rat(13, 3));
    }

    #[test]
    fn psi_inverts_phi_at_breakpoints_and_beyond() {
        let f = filt(&[24, 12, 4, 4, 4]);
        assert_eq!(herbrand_psi(&f, &rat_int(1)).unwrap(), rat_int(4));
        assert_eq!(herbrand_psi(&f, &rat(1, 2)).unwrap(), rat_int(1));
        assert_eq!(herbrand_psi(&f, &rat(-1, 2)).unwrap(), rat(-1, 2));
        let beyond = herbrand_phi(&f, &rat(13, 2)).unwrap();
        assert_eq!(herbrand_psi(&f, &beyond).unwrap(), rat(13, 2));
    }

    #[test]
    fn unramified_and_tame_levels() {
        let u = RamFiltration::unramified(5).unwrap();
        assert_eq!(u.i_max(), rat_int(-1));
        assert_eq!(u_max(&u).unwrap(), rat_int(-1));
        assert_eq!(different_valuation(&u).unwrap(), rat_int(0));
        assert_eq!(discriminant_valuation(&u, 5).unwrap(), rat_int(0));
        let t = RamFiltration::tame(8, 16).unwrap();
        assert_eq!(u_max(&t).unwrap(), rat_int(0));
        assert!(is_level(&t, &rat_int(0)).unwrap());
        // Tame e = 8 with residue degree 2: discriminant valuation 14.
        assert_eq!(discriminant_valuation(&t, 2).unwrap(), rat_int(14));
    }

    #[test]
    fn different_valuation_agrees_on_both_routes() {
        // [24,12,4,4,4]: u+1-(i+1)/e = 1+1-5/24 = 43/24 = (Σ(g_i-1))/24.
        let f = filt(&[24, 12, 4, 4, 4]);
        assert_eq!(different_valuation(&f).unwrap(), rat(43, 24));
        assert_eq!(discriminant_valuation(&f, 2).unwrap(), rat_int(86));
        assert_eq!(discriminant_valuation(&f, 1).unwrap(), rat_int(43));
    }

    #[test]
    fn discriminant_of_the_ray_class_chain_at_three() {
        // [24,3,3,3,3] with residue degree 2: level 1/2 and v(Δ) = 62.
        let f = filt(&[24, 3, 3, 3, 3]);
        assert_eq!(u_max(&f).unwrap(), rat(1, 2));
        assert_eq!(discriminant_valuation(&f, 2).unwrap(), rat_int(62));
        assert_eq!(different_valuation(&f).unwrap(), rat(31, 24));
    }

    #[test]
    fn level_bound_strictly_caps_discriminant() {
        let f = filt(&[24, 12, 4, 4, 4]);
        assert!(level_bound_holds(&f, 2, &rat_int(1)).unwrap());
        assert!(level_bound_holds(&f, 1, &rat_int(1)).unwrap());
        assert!(level_bound_holds(&RamFiltration::unramified(3).unwrap(), 3, &rat_int(0)).unwrap());
        assert!(level_bound_holds(&f, 1, &rat(1, 2)).is_err());
    }

    #[test]
    fn artin_exponent_of_a_wild_character() {
        // One-dimensional, nowhere fixed until the chain dies:
        // a = u_max + 1 = 5 on [3,3,3,3,3].
        let f = filt(&[3, 3, 3, 3, 3]);
        let p = FixedDimProfile::new(1, vec![0, 0, 0, 0, 0]).unwrap();
        assert_eq!(artin_exponent(&f, &p).unwrap(), rat_int(5));
        // Tame two-dimensional with trivial fixed space: a = dim = 2.
        // (The stored chain is just [6]; trailing trivial groups are trimmed.)
        let t = RamFiltration::tame(6, 6).unwrap();
        let pt = FixedDimProfile::new(2, vec![0]).unwrap();
        assert_eq!(artin_exponent(&t, &pt).unwrap(), rat_int(2));
        // Unramified: a = 0.
        let u = RamFiltration::unramified(2).unwrap();
        let pu = FixedDimProfile::new(2, vec![2]).unwrap();
        assert_eq!(artin_exponent(&u, &pu).unwrap(), rat_int(0));
    }

    #[test]
    fn artin_rejects_mismatched_profiles() {
        let f = filt(&[3, 3]);
        assert!(FixedDimProfile::new(1, vec![2]).is_err());
        let p = FixedDimProfile::new(1, vec![0]).unwrap();
        assert!(artin_exponent(&f, &p).is_err());
        let t = RamFiltration::tame(4, 4).unwrap();
        let bad = FixedDimProfile::new(2, vec![0, 0]).unwrap();
        assert!(artin_exponent(&t, &bad).is_err());
    }

    #[test]
    fn transitivity_for_split_tame_towers() {
        // Tame of degree e1·e2 over K splits as tame e2 over tame e1.
        let lk = RamFiltration::tame(12, 12).unwrap();
        let lf = RamFiltration::tame(4, 4).unwrap();
        let fk = RamFiltration::tame(3, 3).unwrap();
        let samples = vec![rat_int(0), rat(1, 2), rat_int(1), rat_int(5)];
        assert!(herbrand_transitivity_check(&lk, &lf, &fk, &samples).unwrap());
        // Reusing one wild chain for all three slots squares φ: false.
        let w = filt(&[24, 12, 4, 4, 4]);
        assert!(!herbrand_transitivity_check(&w, &w, &w, &samples).unwrap());
    }

    #[test]
    fn tame_composition_preserves_levels() {
        let r = tame_compose_level(&rat(3, 2));
        assert_eq!(r.level, rat(3, 2));
        assert_eq!(r.sub_hypothesis, rat_int(0));
        let r = tame_compose_level(&rat_int(-1));
        assert_eq!(r.level, rat_int(-1));
        assert_eq!(r.sub_hypothesis, rat_int(-1));
    }

    #[test]
    fn composite_of_wild_character_over_tame_base() {
        // A cubic of conductor exponent 8 over a tamely ramified base
        // of degree 8 composes to orders [24, 3×7] and level 21/24.
        let f = RamFiltration::new(vec![24, 3, 3, 3, 3, 3, 3, 3], 48).unwrap();
        assert_eq!(u_max(&f).unwrap(), rat(21, 24));
        // The conductor-exponent-5 variant lands exactly on level 1/2.
        let k = RamFiltration::new(vec![24, 3, 3, 3, 3], 48).unwrap();
        assert_eq!(u_max(&k).unwrap(), rat(1, 2));
    }
}
