//! Small finite groups as explicit multiplication tables, with
//! exhaustive subgroup machinery. Everything here is brute force by
//! design: the largest preset has order 60, so closure, conjugacy,
//! subgroup and isomorphism scans are all cheap and fully checkable.

use std::collections::{BTreeSet, HashMap};

use crate::modrep::matrix::{gl2_elements, FpMat};
use crate::par;
use crate::{Error, Result};

/// A finite group on elements `0..n` with `0` the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    order: Vec<u32>,
    /// A small generating set, used by hom/embedding searches.
    gens: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a raw multiplication function and verifies
    /// the group axioms outright (identity at index 0, associativity,
    /// two-sided inverses).
    pub fn from_mul<F>(name: &str, n: usize, mul_fn: F, gens: Vec<usize>) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        if n == 0 || n > 128 {
            return Err(Error::Domain(format!(
                "group order {n} out of the supported range 1..=128"
            )));
        }
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul_fn(a, b);
                if c >= n {
                    return Err(Error::Invariant(format!(
                        "{name}: product of {a} and {b} escapes the element set"
                    )));
                }
                mul[a * n + b] = c as u16;
            }
        }
        for a in 0..n {
            if mul[a * n] != a as u16 || mul[a] != a as u16 {
                return Err(Error::Invariant(format!(
                    "{name}: element 0 is not a two-sided identity at {a}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab_c = mul[mul[a * n + b] as usize * n + c];
                    let a_bc = mul[a * n + mul[b * n + c] as usize];
                    if ab_c != a_bc {
                        return Err(Error::Invariant(format!(
                            "{name}: associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![u16::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 && mul[b * n + a] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
            if inv[a] == u16::MAX {
                return Err(Error::Invariant(format!("{name}: element {a} has no inverse")));
            }
        }
        let mut order = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            order[a] = k;
        }
        let g = FiniteGroup { name: name.to_string(), n, mul, inv, order, gens };
        if g.close(1u128 << 0 | g.gens.iter().fold(0u128, |m, &x| m | (1u128 << x)))
            != g.full_mask()
        {
            return Err(Error::Invariant(format!(
                "{name}: declared generators do not generate the group"
            )));
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.order[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn full_mask(&self) -> u128 {
        if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        }
    }

    /// Conjugacy classes; each class is sorted, and classes are keyed
    /// by their minimal element for determinism.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            let mut class = BTreeSet::new();
            for g in 0..self.n {
                class.insert(self.mul(self.mul(g, a), self.inv(g)));
            }
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// `(class size, element order)` pairs sorted by (order, size).
    pub fn conjugacy_data(&self) -> Vec<(usize, u32)> {
        let mut data: Vec<(usize, u32)> = self
            .conjugacy_classes()
            .iter()
            .map(|c| (c.len(), self.order[c[0]]))
            .collect();
        data.sort_by_key(|&(size, ord)| (ord, size));
        data
    }

    /// Closure of a subset under multiplication (masks over element
    /// indices; the identity is always inserted).
    pub fn close(&self, mask: u128) -> u128 {
        let mut cur = mask | 1;
        loop {
            let mut next = cur;
            let members: Vec<usize> = mask_elements(cur).collect();
            for &a in &members {
                for &b in &members {
                    next |= 1u128 << self.mul(a, b);
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Every subgroup, as element masks, sorted by (order, mask).
    pub fn subgroups(&self) -> Vec<u128> {
        let mut found: BTreeSet<u128> = BTreeSet::new();
        found.insert(1u128);
        let mut frontier: Vec<u128> = vec![1u128];
        for a in 1..self.n {
            let cyc = self.close(1u128 << a);
            if found.insert(cyc) {
                frontier.push(cyc);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in frontier {
                for a in 1..self.n {
                    if h & (1u128 << a) != 0 {
                        continue;
                    }
                    let bigger = self.close(h | (1u128 << a));
                    if found.insert(bigger) {
                        next.push(bigger);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<u128> = found.into_iter().collect();
        out.sort_by_key(|m| (m.count_ones(), *m));
        out
    }

    pub fn is_normal(&self, mask: u128) -> bool {
        for g in 0..self.n {
            for h in mask_elements(mask) {
                let c = self.mul(self.mul(g, h), self.inv(g));
                if mask & (1u128 << c) == 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_cyclic_mask(&self, mask: u128) -> bool {
        mask_elements(mask).any(|a| self.close(1u128 << a) == mask)
    }

    /// Derived subgroup of the subgroup given by `mask`.
    pub fn derived_subgroup(&self, mask: u128) -> u128 {
        let members: Vec<usize> = mask_elements(mask).collect();
        let mut comms = 1u128;
        for &a in &members {
            for &b in &members {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms |= 1u128 << c;
            }
        }
        self.close(comms)
    }

    pub fn is_solvable_mask(&self, mask: u128) -> bool {
        let mut cur = mask | 1;
        loop {
            let next = self.derived_subgroup(cur);
            if next == cur {
                return cur == 1;
            }
            cur = next;
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.derived_subgroup(self.full_mask()) == 1
    }

    /// Orders of all normal subgroups (with multiplicity), ascending.
    pub fn normal_subgroup_orders(&self) -> Vec<u32> {
        self.subgroups()
            .into_iter()
            .filter(|&m| self.is_normal(m))
            .map(|m| m.count_ones())
            .collect()
    }

    pub fn has_normal_subgroup_of_order(&self, k: u32) -> bool {
        self.normal_subgroup_orders().contains(&k)
    }

    /// Normal subgroups of a given order, as masks.
    pub fn normal_subgroups_of_order(&self, k: u32) -> Vec<u128> {
        self.subgroups()
            .into_iter()
            .filter(|&m| m.count_ones() == k && self.is_normal(m))
            .collect()
    }

    /// Quotient by a normal subgroup; cosets are renumbered with the
    /// trivial coset at 0.
    pub fn quotient(&self, normal_mask: u128) -> Result<FiniteGroup> {
        let normal_mask = normal_mask | 1;
        if self.close(normal_mask) != normal_mask {
            return Err(Error::Invalid("kernel is not a subgroup".into()));
        }
        if !self.is_normal(normal_mask) {
            return Err(Error::Invalid("kernel is not normal".into()));
        }
        let mut coset_of = vec![usize::MAX; self.n];
        let mut coset_masks: Vec<u128> = Vec::new();
        for a in 0..self.n {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let mut m = 0u128;
            for h in mask_elements(normal_mask) {
                m |= 1u128 << self.mul(a, h);
            }
            let id = coset_masks.len();
            coset_masks.push(m);
            for x in mask_elements(m) {
                coset_of[x] = id;
            }
        }
        let reps: Vec<usize> = coset_masks
            .iter()
            .map(|&m| mask_elements(m).next().expect("nonempty coset"))
            .collect();
        let k = reps.len();
        let coset_of = coset_of;
        let name = format!("{}/N{}", self.name, normal_mask.count_ones());
        let gens: Vec<usize> = (1..k).collect();
        FiniteGroup::from_mul(&name, k, |a, b| coset_of[self.mul(reps[a], reps[b])], gens)
    }

    /// Greedy small generating sequence (at most 3 elements for every
    /// group of order ≤ 128 we construct; falls back to more).
    fn small_generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = 1u128;
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.order[a]));
        while span != self.full_mask() {
            let next = by_order
                .iter()
                .copied()
                .filter(|&a| span & (1u128 << a) == 0)
                .max_by_key(|&a| {
                    self.close(span | (1u128 << a)).count_ones()
                })
                .expect("proper subgroup misses some element");
            gens.push(next);
            span = self.close(span | (1u128 << next));
        }
        gens
    }

    /// Brute-force isomorphism test for groups of order ≤ 64.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> Result<bool> {
        if self.n > 64 || other.n > 64 {
            return Err(Error::Domain(
                "isomorphism testing is limited to order ≤ 64".into(),
            ));
        }
        if self.n != other.n {
            return Ok(false);
        }
        let mut mine: Vec<u32> = self.order.clone();
        let mut theirs: Vec<u32> = other.order.clone();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return Ok(false);
        }
        let gens = self.small_generating_set();
        let words = self.generator_words(&gens);
        let mut images = vec![0usize; gens.len()];
        Ok(self.search_iso(other, &gens, &words, &mut images, 0))
    }

    /// BFS expression of every element as (previous element, generator
    /// index); index `usize::MAX` marks the identity root.
    fn generator_words(&self, gens: &[usize]) -> Vec<(usize, usize)> {
        let mut expr = vec![(usize::MAX, usize::MAX); self.n];
        let mut visited = vec![false; self.n];
        visited[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !visited[y] {
                    visited[y] = true;
                    expr[y] = (x, gi);
                    queue.push_back(y);
                }
            }
        }
        assert!(visited.iter().all(|&v| v), "generators failed to span");
        expr
    }

    fn search_iso(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        words: &[(usize, usize)],
        images: &mut [usize],
        depth: usize,
    ) -> bool {
        if depth == gens.len() {
            return self.extends_to_isomorphism(other, gens, words, images);
        }
        for cand in 0..other.n {
            if other.order[cand] != self.order[gens[depth]] {
                continue;
            }
            images[depth] = cand;
            if self.search_iso(other, gens, words, images, depth + 1) {
                return true;
            }
        }
        false
    }

    fn extends_to_isomorphism(
        &self,
        other: &FiniteGroup,
        _gens: &[usize],
        words: &[(usize, usize)],
        images: &[usize],
    ) -> bool {
        let mut phi = vec![usize::MAX; self.n];
        phi[0] = 0;
        // Propagate φ along words[y] = (x, gi) meaning y = x·g; repeated
        // passes settle in BFS-depth many rounds (n is tiny).
        let mut assigned = 1usize;
        while assigned < self.n {
            let mut progress = false;
            for y in 0..self.n {
                if phi[y] != usize::MAX {
                    continue;
                }
                let (x, gi) = words[y];
                if x != usize::MAX && phi[x] != usize::MAX {
                    phi[y] = other.mul(phi[x], images[gi]);
                    assigned += 1;
                    progress = true;
                }
            }
            if !progress {
                return false;
            }
        }
        let mut seen = vec![false; other.n];
        for &v in &phi {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if phi[self.mul(a, b)] != other.mul(phi[a], phi[b]) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn mask_elements(mask: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&i| mask & (1u128 << i) != 0)
}

/// `quotient_isomorphic(G, N, H)`: is `G/N ≅ H`? The kernel must be
/// normal (checked).
pub fn quotient_isomorphic(g: &FiniteGroup, normal_mask: u128, target: &FiniteGroup) -> Result<bool> {
    let q = g.quotient(normal_mask)?;
    q.is_isomorphic(target)
}

/// Largest solvable subgroup order, and the largest order of a cyclic
/// subgroup that is normal in some solvable subgroup.
pub fn solvable_subgroup_caps(g: &FiniteGroup) -> (u32, u32) {
    solvable_caps_impl(g, cfg!(feature = "parallel"))
}

/// Sequential twin of [`solvable_subgroup_caps`], for benchmarking.
pub fn solvable_subgroup_caps_seq(g: &FiniteGroup) -> (u32, u32) {
    solvable_caps_impl(g, false)
}

fn solvable_caps_impl(g: &FiniteGroup, parallel: bool) -> (u32, u32) {
    let subs = g.subgroups();
    let per_subgroup: Vec<(u32, u32)> = par::map_collect(subs, parallel, |mask| {
        if !g.is_solvable_mask(mask) {
            return (0, 0);
        }
        let h: Vec<usize> = mask_elements(mask).collect();
        let mut cyc_cap = 0u32;
        let mut seen: BTreeSet<u128> = BTreeSet::new();
        for &x in &h {
            let c = g.close(1u128 << x);
            if c & !mask != 0 || !seen.insert(c) {
                continue;
            }
            let normal_in_h = h.iter().all(|&a| {
                mask_elements(c).all(|y| {
                    c & (1u128 << g.mul(g.mul(a, y), g.inv(a))) != 0
                })
            });
            if normal_in_h {
                cyc_cap = cyc_cap.max(c.count_ones());
            }
        }
        (mask.count_ones(), cyc_cap)
    });
    per_subgroup
        .into_iter()
        .fold((0, 0), |acc, x| (acc.0.max(x.0), acc.1.max(x.1)))
}

fn preset(name: &str) -> Result<FiniteGroup> {
    match name {
        "c1" => FiniteGroup::from_mul("C1", 1, |_, _| 0, vec![]),
        "c3" => FiniteGroup::from_mul("C3", 3, |a, b| (a + b) % 3, vec![1]),
        "s3" | "d3" => dihedral("D3", 3),
        "d4" => dihedral("D4", 4),
        "d5" => dihedral("D5", 5),
        "sh16" => sh16(),
        "a4" => alternating("A4", 4),
        "a5" => alternating("A5", 5),
        "gl2f2" => gl2_group("GL2(F2)", 2),
        "gl2f3" => gl2_group("GL2(F3)", 3),
        other => Err(Error::Invalid(format!(
            "unknown group preset `{other}` (try sh16, s3, c3, d4, d5, a4, a5, gl2f3, gl2f2)"
        ))),
    }
}

/// Looks up a preset by name: sh16, s3 (alias d3), c3, d4, d5, a4,
/// a5, gl2f3, gl2f2, c1.
pub fn group_preset(name: &str) -> Result<FiniteGroup> {
    preset(&name.to_ascii_lowercase())
}

/// Dihedral group of order 2m: index a + m·b encodes rᵃtᵇ with
/// t·r·t = r⁻¹.
fn dihedral(name: &str, m: usize) -> Result<FiniteGroup> {
    FiniteGroup::from_mul(
        name,
        2 * m,
        |x, y| {
            let (a, s) = (x % m, x / m);
            let (c, d) = (y % m, y / m);
            let rot = if s == 0 { (a + c) % m } else { (a + m - c) % m };
            rot + m * ((s + d) % 2)
        },
        vec![1, m],
    )
}

/// The semidihedral group of order 16: ⟨s, t | s⁸ = t² = 1,
/// t·s·t = s³⟩, index a + 8·b for sᵃtᵇ.
fn sh16() -> Result<FiniteGroup> {
    FiniteGroup::from_mul(
        "SH16",
        16,
        |x, y| {
            let (a, s) = (x % 8, x / 8);
            let (c, d) = (y % 8, y / 8);
            let rot = if s == 0 { (a + c) % 8 } else { (a + 3 * c) % 8 };
            rot + 8 * ((s + d) % 2)
        },
        vec![1, 8],
    )
}

fn permutations_even(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(k, &mut Vec::with_capacity(k), &mut vec![false; k], &mut perms);
    // Generation is lexicographic, so the identity lands at index 0.
    perms
        .into_iter()
        .filter(|p| {
            let mut inversions = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            inversions % 2 == 0
        })
        .collect()
}

fn alternating(name: &str, k: usize) -> Result<FiniteGroup> {
    let elems = permutations_even(k);
    debug_assert!(elems[0].iter().enumerate().all(|(i, &x)| i == x));
    let index: HashMap<Vec<usize>, usize> =
        elems.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        (0..k).map(|i| a[b[i]]).collect()
    };
    // Standard generators: a 3-cycle and, for k = 5, a 5-cycle.
    let three_cycle: Vec<usize> = {
        let mut p: Vec<usize> = (0..k).collect();
        p[0] = 1;
        p[1] = 2;
        p[2] = 0;
        p
    };
    let second: Vec<usize> = if k == 4 {
        vec![1, 0, 3, 2] // (01)(23)
    } else {
        let mut p: Vec<usize> = (1..k).collect();
        p.push(0); // the k-cycle (0 1 … k−1), even iff k is odd
        p
    };
    let gens = vec![index[&three_cycle], index[&second]];
    FiniteGroup::from_mul(
        name,
        elems.len(),
        |a, b| index[&compose(&elems[a], &elems[b])],
        gens,
    )
}

fn gl2_group(name: &str, q: u8) -> Result<FiniteGroup> {
    let elems = gl2_elements(q)?;
    let index: HashMap<FpMat, usize> =
        elems.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let n = elems.len();
    let mut gens: Vec<usize> = Vec::new();
    let mut span = 1u128;
    // Deterministic generator pick: grow by the first element that
    // enlarges the span until everything is covered (fine for n ≤ 48).
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = index[&elems[a].mul(&elems[b])];
        }
    }
    let close = |mask: u128| -> u128 {
        let mut cur = mask | 1;
        loop {
            let mut next = cur;
            let members: Vec<usize> = mask_elements(cur).collect();
            for &a in &members {
                for &b in &members {
                    next |= 1u128 << table[a * n + b];
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    };
    let full = (1u128 << n) - 1;
    while span != full {
        let pick = (1..n)
            .find(|&a| span & (1u128 << a) == 0)
            .expect("span is proper");
        gens.push(pick);
        span = close(span | (1u128 << pick));
    }
    FiniteGroup::from_mul(name, n, |a, b| table[a * n + b], gens)
}
