//! Brute-force modular representation facts: irreducible degree
//! partitions over F₂/F₃, embeddings into GL₂, semisimplicity of
//! small F₂[S₃]-modules, and fixed spaces of 3-groups on F₂-spaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::modrep::group::{mask_elements, FiniteGroup};
use crate::modrep::matrix::{gl2_elements, rows_rank, FpMat};
use crate::par;
use crate::{Error, Result};

/// One irreducible representation found by exhaustive search.
#[derive(Debug, Clone)]
pub struct IrreducibleRep {
    /// Dimension over the prime field.
    pub degree: u32,
    /// Degree of the endomorphism field over the prime field (1 means
    /// absolutely irreducible; Wedderburn: the commutant of an
    /// irreducible over a finite field is a field).
    pub endo_field_degree: u32,
    /// Images of the group's generators.
    pub generator_images: Vec<FpMat>,
}

/// Extends generator images to a full homomorphism via the BFS word
/// table and verifies multiplicativity on every pair; returns the
/// image of every element, or None if the assignment is inconsistent.
fn extend_hom(g: &FiniteGroup, images: &[FpMat]) -> Option<Vec<FpMat>> {
    let gens = g.generators();
    debug_assert_eq!(gens.len(), images.len());
    let p = images[0].modulus();
    let d = images[0].dim();
    let mut phi: Vec<Option<FpMat>> = vec![None; g.order()];
    phi[0] = Some(FpMat::identity(p, d).expect("valid identity"));
    let mut assigned = 1usize;
    while assigned < g.order() {
        let mut progress = false;
        for x in 0..g.order() {
            if phi[x].is_none() {
                continue;
            }
            for (gi, &gen) in gens.iter().enumerate() {
                let y = g.mul(x, gen);
                if phi[y].is_none() {
                    let img = phi[x].as_ref().unwrap().mul(&images[gi]);
                    phi[y] = Some(img);
                    assigned += 1;
                    progress = true;
                }
            }
        }
        if !progress {
            return None;
        }
    }
    let phi: Vec<FpMat> = phi.into_iter().map(Option::unwrap).collect();
    for a in 0..g.order() {
        for b in 0..g.order() {
            if phi[g.mul(a, b)] != phi[a].mul(&phi[b]) {
                return None;
            }
        }
    }
    Some(phi)
}

/// All nonzero lines of F_q², as representative vectors.
fn lines_of_plane(q: u8) -> Vec<Vec<u8>> {
    let mut lines = Vec::new();
    for y in 0..q {
        lines.push(vec![1, y]);
    }
    lines.push(vec![0, 1]);
    lines
}

fn fixes_line(mats: &[&FpMat], line: &[u8]) -> bool {
    let q = mats[0].modulus();
    mats.iter().all(|m| {
        let w = m.apply(line);
        // w must be a scalar multiple of line.
        (1..q).any(|c| {
            line.iter()
                .zip(w.iter())
                .all(|(&a, &b)| (a as u16 * c as u16) % q as u16 == b as u16)
        })
    })
}

fn commutant_size(images: &[FpMat]) -> usize {
    let p = images[0].modulus();
    let d = images[0].dim();
    let cells = d * d;
    let total = (p as u64).pow(cells as u32);
    let mut count = 0usize;
    for code in 0..total {
        let mut entries = vec![0u8; cells];
        let mut c = code;
        for e in entries.iter_mut() {
            *e = (c % p as u64) as u8;
            c /= p as u64;
        }
        let x = FpMat::new(p, d, entries).expect("valid entries");
        if images.iter().all(|m| m.mul(&x) == x.mul(m)) {
            count += 1;
        }
    }
    count
}

/// Number of irreducible F_q[G]-modules predicted by Berman's count:
/// orbits of the q-regular conjugacy classes under x ↦ x^q.
fn expected_irreducible_count(g: &FiniteGroup, q: u64) -> usize {
    let classes = g.conjugacy_classes();
    let class_of: Vec<usize> = {
        let mut v = vec![0usize; g.order()];
        for (ci, c) in classes.iter().enumerate() {
            for &x in c {
                v[x] = ci;
            }
        }
        v
    };
    let regular: BTreeSet<usize> = (0..classes.len())
        .filter(|&ci| g.element_order(classes[ci][0]) as u64 % q != 0
            && gcd(g.element_order(classes[ci][0]) as u64, q) == 1)
        .collect();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut orbits = 0usize;
    for &ci in &regular {
        if seen.contains(&ci) {
            continue;
        }
        orbits += 1;
        let mut cur = ci;
        loop {
            seen.insert(cur);
            let rep = classes[cur][0];
            let mut pow = rep;
            for _ in 1..q {
                pow = g.mul(pow, rep);
            }
            cur = class_of[pow];
            if seen.contains(&cur) {
                break;
            }
        }
    }
    orbits
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Finds every irreducible F_q[G]-module of dimension ≤ 2 by direct
/// search over generator images, deduplicated up to conjugacy, and
/// proves the list complete: the number found must equal Berman's
/// class count, and when q ∤ |G| the Wedderburn dimension identity
/// Σ d²/f = |G| must hold on the nose. Groups with an irreducible of
/// dimension ≥ 3 over F_q are rejected with an invariant error.
pub fn irreducible_reps(g: &FiniteGroup, q: u8) -> Result<Vec<IrreducibleRep>> {
    irreducible_reps_impl(g, q, cfg!(feature = "parallel"))
}

/// Sequential twin of [`irreducible_reps`], for benchmarking.
pub fn irreducible_reps_seq(g: &FiniteGroup, q: u8) -> Result<Vec<IrreducibleRep>> {
    irreducible_reps_impl(g, q, false)
}

fn irreducible_reps_impl(g: &FiniteGroup, q: u8, parallel: bool) -> Result<Vec<IrreducibleRep>> {
    if !crate::exact::is_prime_u64(q as u64) {
        return Err(Error::Domain(format!("{q} is not prime")));
    }
    let ngens = g.generators().len().max(1);
    let mut reps: Vec<IrreducibleRep> = Vec::new();

    // Dimension 1: scalar images.
    let scalars: Vec<FpMat> = (1..q)
        .map(|c| FpMat::new(q, 1, vec![c]).expect("valid scalar"))
        .collect();
    let mut tuple = vec![0usize; ngens];
    loop {
        let images: Vec<FpMat> = tuple.iter().map(|&i| scalars[i].clone()).collect();
        if extend_hom(g, &images).is_some() {
            reps.push(IrreducibleRep {
                degree: 1,
                endo_field_degree: 1,
                generator_images: images,
            });
        }
        if !advance(&mut tuple, scalars.len()) {
            break;
        }
    }

    // Dimension 2: exhaustive GL₂ image tuples, in parallel.
    let gl2 = gl2_elements(q)?;
    let m = gl2.len();
    let total: u64 = (m as u64).pow(ngens as u32);
    let codes: Vec<u64> = (0..total).collect();
    let lines = lines_of_plane(q);
    let found: Vec<Vec<FpMat>> = par::filter_map_collect(codes, parallel, |code| {
        let mut c = code;
        let mut images = Vec::with_capacity(ngens);
        for _ in 0..ngens {
            images.push(gl2[(c % m as u64) as usize].clone());
            c /= m as u64;
        }
        let refs: Vec<&FpMat> = images.iter().collect();
        if lines.iter().any(|l| fixes_line(&refs, l)) {
            return None;
        }
        extend_hom(g, &images).map(|_| images)
    });
    // Dedupe up to simultaneous GL₂-conjugacy.
    let mut canonical: BTreeSet<Vec<FpMat>> = BTreeSet::new();
    for images in found {
        let orbit_min = gl2
            .iter()
            .map(|t| {
                let tinv = t.inverse().expect("GL2 element");
                images
                    .iter()
                    .map(|a| tinv.mul(a).mul(t))
                    .collect::<Vec<FpMat>>()
            })
            .min()
            .expect("GL2 is nonempty");
        canonical.insert(orbit_min);
    }
    for images in canonical {
        let size = commutant_size(&images);
        let f = (size as f64).log(q as f64).round() as u32;
        debug_assert_eq!((q as usize).pow(f), size, "commutant must be a field");
        reps.push(IrreducibleRep {
            degree: 2,
            endo_field_degree: f,
            generator_images: images,
        });
    }

    // Completeness.
    let expected = expected_irreducible_count(g, q as u64);
    if reps.len() != expected {
        return Err(Error::Invariant(format!(
            "{}: found {} irreducible F_{q}-modules of dimension ≤ 2 but the \
             class count predicts {expected}; an irreducible of higher dimension exists",
            g.name(),
            reps.len()
        )));
    }
    if g.order() as u64 % q as u64 != 0 {
        let wedderburn: u64 = reps
            .iter()
            .map(|r| (r.degree as u64).pow(2) / r.endo_field_degree as u64)
            .sum();
        if wedderburn != g.order() as u64 {
            return Err(Error::Invariant(format!(
                "{}: Wedderburn dimension count gives {wedderburn}, expected {}",
                g.name(),
                g.order()
            )));
        }
    }
    reps.sort_by_key(|r| (r.degree, r.endo_field_degree));
    Ok(reps)
}

/// The multiset of irreducible degrees over F_q, ascending.
pub fn degree_partition(g: &FiniteGroup, q: u8) -> Result<Vec<u32>> {
    Ok(irreducible_reps(g, q)?.iter().map(|r| r.degree).collect())
}

fn advance(tuple: &mut [usize], base: usize) -> bool {
    for t in tuple.iter_mut() {
        *t += 1;
        if *t < base {
            return true;
        }
        *t = 0;
    }
    false
}

/// Summary of the exhaustive embedding search `G ↪ GL₂(F_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// Number of injective homomorphisms, up to conjugacy in GL₂.
    pub count_up_to_conjugacy: usize,
    /// Total number of injective homomorphisms.
    pub count_total: usize,
    /// For each element order present in G, the set of traces (in
    /// symmetric representatives) realized on elements of that order,
    /// across all embeddings.
    pub traces_by_order: BTreeMap<u32, BTreeSet<i8>>,
}

/// Exhaustive search for embeddings of `G` into `GL₂(F_q)`.
pub fn embeddings_in_gl2(g: &FiniteGroup, q: u8) -> Result<EmbeddingReport> {
    embeddings_impl(g, q, cfg!(feature = "parallel"))
}

/// Sequential twin of [`embeddings_in_gl2`], for benchmarking.
pub fn embeddings_in_gl2_seq(g: &FiniteGroup, q: u8) -> Result<EmbeddingReport> {
    embeddings_impl(g, q, false)
}

fn embeddings_impl(g: &FiniteGroup, q: u8, parallel: bool) -> Result<EmbeddingReport> {
    let gl2 = gl2_elements(q)?;
    if gl2.len() < g.order() {
        return Ok(EmbeddingReport {
            count_up_to_conjugacy: 0,
            count_total: 0,
            traces_by_order: BTreeMap::new(),
        });
    }
    let ngens = g.generators().len().max(1);
    let m = gl2.len();
    let total: u64 = (m as u64).pow(ngens as u32);
    let codes: Vec<u64> = (0..total).collect();
    let embeddings: Vec<Vec<FpMat>> = par::filter_map_collect(codes, parallel, |code| {
        let mut c = code;
        let mut images = Vec::with_capacity(ngens);
        for gi in 0..ngens {
            let mat = &gl2[(c % m as u64) as usize];
            c /= m as u64;
            // Cheap pruning: generator image must match the generator's order.
            if mat.order().ok()? != g.element_order(g.generators()[gi]) as u64 {
                return None;
            }
            images.push(mat.clone());
        }
        let phi = extend_hom(g, &images)?;
        // Injectivity.
        let distinct: BTreeSet<&FpMat> = phi.iter().collect();
        (distinct.len() == g.order()).then_some(images)
    });
    let mut traces_by_order: BTreeMap<u32, BTreeSet<i8>> = BTreeMap::new();
    let mut canonical: BTreeSet<Vec<FpMat>> = BTreeSet::new();
    for images in &embeddings {
        let phi = extend_hom(g, images).expect("verified hom");
        for (x, mat) in phi.iter().enumerate() {
            traces_by_order
                .entry(g.element_order(x))
                .or_default()
                .insert(mat.trace_signed());
        }
        let orbit_min = gl2
            .iter()
            .map(|t| {
                let tinv = t.inverse().expect("GL2 element");
                images.iter().map(|a| tinv.mul(a).mul(t)).collect::<Vec<FpMat>>()
            })
            .min()
            .expect("GL2 is nonempty");
        canonical.insert(orbit_min);
    }
    Ok(EmbeddingReport {
        count_up_to_conjugacy: canonical.len(),
        count_total: embeddings.len(),
        traces_by_order,
    })
}

/// An F₂[S₃]-module given by the images of σ (order 3) and τ (order
/// 2) with τστ = σ².
#[derive(Debug, Clone)]
pub struct F2S3Module {
    pub sigma: FpMat,
    pub tau: FpMat,
}

impl F2S3Module {
    pub fn new(sigma: FpMat, tau: FpMat) -> Result<Self> {
        if sigma.modulus() != 2 || tau.modulus() != 2 {
            return Err(Error::Domain("F₂[S₃]-modules live over F₂".into()));
        }
        if sigma.dim() != tau.dim() {
            return Err(Error::Invalid("σ and τ must act on the same space".into()));
        }
        if sigma.dim() > 6 {
            return Err(Error::Domain("brute-force submodule search caps at dim 6".into()));
        }
        let id = FpMat::identity(2, sigma.dim())?;
        if sigma.pow(3) != id || tau.pow(2) != id {
            return Err(Error::Invariant("σ³ = τ² = 1 violated".into()));
        }
        if tau.mul(&sigma).mul(&tau) != sigma.pow(2) {
            return Err(Error::Invariant("τστ = σ² violated".into()));
        }
        Ok(F2S3Module { sigma, tau })
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    fn all_vectors(&self) -> Vec<Vec<u8>> {
        let k = self.dim();
        (0..1u32 << k)
            .map(|code| (0..k).map(|i| ((code >> i) & 1) as u8).collect())
            .collect()
    }

    /// The submodule generated by a set of vectors, as a sorted list
    /// of member vectors (including zero).
    fn cyclic_closure(&self, seed: &[Vec<u8>]) -> BTreeSet<Vec<u8>> {
        let k = self.dim();
        let mut members: BTreeSet<Vec<u8>> = BTreeSet::new();
        members.insert(vec![0u8; k]);
        let mut frontier: Vec<Vec<u8>> = seed.to_vec();
        while let Some(v) = frontier.pop() {
            if members.contains(&v) {
                continue;
            }
            // close under addition with existing members, σ and τ
            let mut new_items: Vec<Vec<u8>> = vec![v.clone()];
            for m in members.iter() {
                let sum: Vec<u8> = m.iter().zip(v.iter()).map(|(&a, &b)| a ^ b).collect();
                new_items.push(sum);
            }
            for item in new_items {
                if members.insert(item.clone()) {
                    frontier.push(self.sigma.apply(&item));
                    frontier.push(self.tau.apply(&item));
                }
            }
        }
        members
    }

    /// All submodules, each as a sorted set of vectors.
    pub fn submodules(&self) -> Vec<BTreeSet<Vec<u8>>> {
        let vectors = self.all_vectors();
        let mut subs: BTreeSet<BTreeSet<Vec<u8>>> = BTreeSet::new();
        // Cyclic closures.
        let cyclics: Vec<BTreeSet<Vec<u8>>> = vectors
            .iter()
            .filter(|v| v.iter().any(|&b| b != 0))
            .map(|v| self.cyclic_closure(std::slice::from_ref(v)))
            .collect();
        subs.insert(self.cyclic_closure(&[]));
        for c in &cyclics {
            subs.insert(c.clone());
        }
        // Close under pairwise sums until stable.
        loop {
            let snapshot: Vec<BTreeSet<Vec<u8>>> = subs.iter().cloned().collect();
            let before = subs.len();
            for a in &snapshot {
                for c in &cyclics {
                    let seed: Vec<Vec<u8>> = a.iter().chain(c.iter()).cloned().collect();
                    subs.insert(self.cyclic_closure(&seed));
                }
            }
            if subs.len() == before {
                break;
            }
        }
        subs.into_iter().collect()
    }

    fn dim_of(sub: &BTreeSet<Vec<u8>>) -> usize {
        sub.len().trailing_zeros() as usize
    }

    /// Semisimplicity by the socle criterion: the sum of all minimal
    /// submodules must be the whole module.
    pub fn is_semisimple(&self) -> bool {
        let subs = self.submodules();
        let nonzero: Vec<&BTreeSet<Vec<u8>>> = subs.iter().filter(|s| s.len() > 1).collect();
        let minimal: Vec<&BTreeSet<Vec<u8>>> = nonzero
            .iter()
            .copied()
            .filter(|s| {
                !nonzero
                    .iter()
                    .any(|t| t.len() > 1 && t.len() < s.len() && t.is_subset(s))
            })
            .collect();
        let seed: Vec<Vec<u8>> = minimal.iter().flat_map(|s| s.iter().cloned()).collect();
        let socle = self.cyclic_closure(&seed);
        Self::dim_of(&socle) == self.dim()
    }

    /// Number of irreducible submodules with trivial σ-action.
    pub fn sigma_trivial_irreducible_submodules(&self) -> usize {
        let subs = self.submodules();
        let nonzero: Vec<&BTreeSet<Vec<u8>>> = subs.iter().filter(|s| s.len() > 1).collect();
        nonzero
            .iter()
            .filter(|s| {
                let minimal = !nonzero
                    .iter()
                    .any(|t| t.len() > 1 && t.len() < s.len() && t.is_subset(s));
                minimal && s.iter().all(|v| self.sigma.apply(v) == *v)
            })
            .count()
    }
}

/// Result of the canonical F₂[S₃] splitting `T ≅ T/(σ−1)T × T/(σ²+σ+1)T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSplitting {
    pub dim: usize,
    pub dim_sigma_coinvariants_complement: usize,
    pub dim_norm_image: usize,
    pub intersection_trivial: bool,
    pub dims_add_up: bool,
}

/// Checks the internal direct-sum decomposition of an F₂-space under
/// an action of σ with σ³ = 1: the images of σ−1 and σ²+σ+1
/// intersect trivially and their dimensions fill the space (x³−1 is
/// squarefree over F₂, so this must always hold).
pub fn sigma_splitting_check(sigma: &FpMat) -> Result<SigmaSplitting> {
    if sigma.modulus() != 2 {
        return Err(Error::Domain("σ-splitting is an F₂ statement".into()));
    }
    let k = sigma.dim();
    let id = FpMat::identity(2, k)?;
    if sigma.pow(3) != id {
        return Err(Error::Invariant("σ³ = 1 violated".into()));
    }
    let a = sigma.sub(&id);
    let b = sigma.pow(2).add(sigma).add(&id);
    let image_rows = |m: &FpMat| -> Vec<Vec<u8>> {
        // Image = column space; use rows of the transpose.
        (0..k)
            .map(|j| (0..k).map(|i| m.entry(i, j)).collect())
            .collect()
    };
    let rows_a = image_rows(&a);
    let rows_b = image_rows(&b);
    let dim_a = rows_rank(2, k, &rows_a);
    let dim_b = rows_rank(2, k, &rows_b);
    let mut all_rows = rows_a.clone();
    all_rows.extend(rows_b.clone());
    let dim_sum = rows_rank(2, k, &all_rows);
    Ok(SigmaSplitting {
        dim: k,
        dim_sigma_coinvariants_complement: dim_a,
        dim_norm_image: dim_b,
        intersection_trivial: dim_sum == dim_a + dim_b,
        dims_add_up: dim_a + dim_b == k,
    })
}

/// Outcome of a fixed-space computation for a 3-group on F₂^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSpaceReport {
    pub ambient_dim: usize,
    pub fixed_dim: usize,
    /// Order of the group generated by the supplied matrices.
    pub group_order: usize,
    /// Set when the action is trivial, in which case the even/strict
    /// conclusions of the nontrivial case do not apply.
    pub trivial_action: bool,
}

/// Dimension of the common fixed space of a 3-group acting on F₂^k,
/// with the orbit-count congruence #V^G ≡ #V (mod 3) verified by an
/// explicit scan of all vectors.
pub fn fixed_space_dim(generators: &[FpMat]) -> Result<FixedSpaceReport> {
    fixed_space_impl(generators, cfg!(feature = "parallel"))
}

/// Sequential twin of [`fixed_space_dim`], for benchmarking.
pub fn fixed_space_dim_seq(generators: &[FpMat]) -> Result<FixedSpaceReport> {
    fixed_space_impl(generators, false)
}

fn fixed_space_impl(generators: &[FpMat], parallel: bool) -> Result<FixedSpaceReport> {
    if generators.is_empty() {
        return Err(Error::Invalid("need at least one generator".into()));
    }
    let k = generators[0].dim();
    if generators.iter().any(|m| m.modulus() != 2 || m.dim() != k) {
        return Err(Error::Invalid("generators must all act on the same F₂-space".into()));
    }
    if k > 16 {
        return Err(Error::Domain("explicit orbit scan caps the dimension at 16".into()));
    }
    // Generate the group and check it is a 3-group of order ≤ 81.
    let mut elements: BTreeSet<FpMat> = BTreeSet::new();
    elements.insert(FpMat::identity(2, k)?);
    let mut frontier: Vec<FpMat> = vec![FpMat::identity(2, k)?];
    while let Some(x) = frontier.pop() {
        for gen in generators {
            let y = x.mul(gen);
            if elements.insert(y.clone()) {
                frontier.push(y);
                if elements.len() > 81 {
                    return Err(Error::Domain(
                        "generated group exceeds the supported order 3⁴ = 81".into(),
                    ));
                }
            }
        }
    }
    for m in &elements {
        let ord = m.order()?;
        if ord != 1 && ord != 3 && ord != 9 && ord != 27 && ord != 81 {
            return Err(Error::Domain(format!(
                "generated group contains an element of order {ord}; not a 3-group"
            )));
        }
    }
    let trivial_action = elements.len() == 1;
    // Fixed dimension: kernel of the stacked (g − 1) for generators.
    let id = FpMat::identity(2, k)?;
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for gen in generators {
        let d = gen.sub(&id);
        for i in 0..k {
            rows.push((0..k).map(|j| d.entry(i, j)).collect());
        }
    }
    let fixed_dim = k - rows_rank(2, k, &rows);
    // Orbit congruence by explicit scan.
    let gens: Vec<FpMat> = generators.to_vec();
    let codes: Vec<u32> = (0..1u32 << k).collect();
    let fixed_flags = par::map_collect(codes, parallel, move |code| {
        let v: Vec<u8> = (0..k).map(|i| ((code >> i) & 1) as u8).collect();
        u64::from(gens.iter().all(|m| m.apply(&v) == v))
    });
    let fixed_count: u64 = fixed_flags.into_iter().sum();
    if fixed_count != 1u64 << fixed_dim {
        return Err(Error::Invariant(format!(
            "fixed-vector scan found {fixed_count} vectors but linear algebra \
             gives dimension {fixed_dim}"
        )));
    }
    let ambient_count = 1u64 << k;
    if fixed_count % 3 != ambient_count % 3 {
        return Err(Error::Invariant(
            "orbit congruence #V^G ≡ #V (mod 3) failed".into(),
        ));
    }
    Ok(FixedSpaceReport {
        ambient_dim: k,
        fixed_dim,
        group_order: elements.len(),
        trivial_action,
    })
}

/// Convenience: the subgroup of GL(V) generated by permutation-free
/// images of the elements in `mask` under `phi` — used by tests to
/// turn abstract subgroups into matrix generators.
pub fn images_of_mask(phi: &[FpMat], mask: u128) -> Vec<FpMat> {
    mask_elements(mask).map(|x| phi[x].clone()).collect()
}
