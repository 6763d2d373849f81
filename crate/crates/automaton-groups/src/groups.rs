//! Permutation groups through deterministic Schreier–Sims stabilizer
//! chains: orders, membership, orbits, block systems, normal closures and
//! recognition of the symmetric and alternating groups.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group is not transitive")]
    NotTransitive,
    #[error("bad block structure: {0}")]
    BadBlockStructure(String),
    #[error("normal closure did not converge within {0} rebuilds")]
    NonConvergence(usize),
}

/// A permutation group given by generators on `0..degree`.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        assert!(
            generators.iter().all(|g| g.degree() == degree),
            "generator degree mismatch"
        );
        PermGroup { degree, generators }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
        }
    }

    /// The full symmetric group on `k` points.
    pub fn symmetric(k: usize) -> Self {
        let mut generators = Vec::new();
        if k >= 2 {
            generators.push(Permutation::transposition(k, 0, 1));
        }
        if k >= 3 {
            generators.push(Permutation::from_cycles(k, &[(0..k).collect()]));
        }
        PermGroup { degree: k, generators }
    }

    /// The alternating group on `k` points.
    pub fn alternating(k: usize) -> Self {
        let mut generators = Vec::new();
        if k >= 3 {
            generators.push(Permutation::from_cycles(k, &[vec![0, 1, 2]]));
        }
        if k >= 4 {
            // (1,2,…,k) for odd k, (2,3,…,k) for even k
            let long: Vec<usize> = if k % 2 == 1 {
                (0..k).collect()
            } else {
                (1..k).collect()
            };
            generators.push(Permutation::from_cycles(k, &[long]));
        }
        PermGroup { degree: k, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The orbit of `x`, in breadth-first discovery order.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        assert!(x < self.degree, "point out of range");
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![x];
        seen[x] = true;
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
        }
        orbit
    }

    /// All orbits, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let orbit = self.orbit(x);
                for &y in &orbit {
                    seen[y] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// The finest block system in which `a` and `b` share a block
    /// (union-find congruence closure).
    pub fn minimal_block_system(&self, a: usize, b: usize) -> BlockSystem {
        assert!(a < self.degree && b < self.degree && a != b);
        let mut uf = UnionFind::new(self.degree);
        uf.union(a, b);
        let mut queue = vec![(a, b)];
        while let Some((u, v)) = queue.pop() {
            for g in &self.generators {
                let (gu, gv) = (g.apply(u), g.apply(v));
                if uf.union(gu, gv) {
                    queue.push((gu, gv));
                }
            }
        }
        BlockSystem::from_union_find(&mut uf, self.degree)
    }

    /// Primitivity test for transitive groups: no block system strictly
    /// between the trivial ones.
    pub fn is_primitive(&self) -> Result<bool, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        Ok(self.nontrivial_block_system().is_none())
    }

    /// Some nontrivial block system, or `None` for a primitive (or degree
    /// ≤ 2) group.  Requires transitivity to be meaningful.
    pub fn nontrivial_block_system(&self) -> Option<BlockSystem> {
        for b in 1..self.degree {
            let system = self.minimal_block_system(0, b);
            if system.block_count() > 1 {
                return Some(system);
            }
        }
        None
    }

    /// The smallest subgroup containing `seed` and closed under
    /// conjugation by this group's generators.  The rebuild budget guards
    /// against runaway growth on adversarial input.
    pub fn normal_closure(&self, seed: &Permutation) -> Result<PermGroup, GroupError> {
        self.normal_closure_with_limit(seed, 1000)
    }

    pub fn normal_closure_with_limit(
        &self,
        seed: &Permutation,
        limit: usize,
    ) -> Result<PermGroup, GroupError> {
        assert_eq!(seed.degree(), self.degree, "seed degree mismatch");
        if seed.is_identity() {
            return Ok(PermGroup::trivial(self.degree));
        }
        let mut closure = PermGroup::new(self.degree, vec![seed.clone()]);
        let mut chain = StabilizerChain::build(&closure);
        let mut queue = vec![seed.clone()];
        let mut rebuilds = 0;
        while let Some(h) = queue.pop() {
            for g in &self.generators {
                let c = h.conjugate_by(g);
                if !chain.contains(&c) {
                    rebuilds += 1;
                    if rebuilds > limit {
                        return Err(GroupError::NonConvergence(limit));
                    }
                    closure.generators.push(c.clone());
                    chain = StabilizerChain::build(&closure);
                    queue.push(c);
                }
            }
        }
        Ok(closure)
    }

    /// Distinguishes the natural symmetric and alternating groups from
    /// everything else, by order and generator parity.
    pub fn recognize_sym_alt(&self) -> GroupKind {
        let chain = StabilizerChain::build(self);
        self.recognize_sym_alt_with(&chain)
    }

    pub fn recognize_sym_alt_with(&self, chain: &StabilizerChain) -> GroupKind {
        let k = self.degree;
        let order = chain.order();
        if order == factorial(k) {
            GroupKind::Symmetric
        } else if k >= 2 && order == factorial(k) / 2u8 {
            if self.generators.iter().all(|g| g.is_even()) {
                GroupKind::Alternating
            } else {
                GroupKind::Other
            }
        } else {
            GroupKind::Other
        }
    }

    /// Generators of the pointwise stabilizer of the first `fixed_blocks`
    /// blocks of size `block_size`, i.e. the kernel of the projection onto
    /// those coordinates.
    pub fn projection_kernel(
        &self,
        block_size: usize,
        fixed_blocks: usize,
    ) -> Result<PermGroup, GroupError> {
        if block_size == 0 || self.degree % block_size != 0 {
            return Err(GroupError::BadBlockStructure(format!(
                "degree {} not divisible into blocks of {}",
                self.degree, block_size
            )));
        }
        let blocks = self.degree / block_size;
        if fixed_blocks == 0 || fixed_blocks >= blocks {
            return Err(GroupError::BadBlockStructure(format!(
                "cannot fix {fixed_blocks} of {blocks} blocks"
            )));
        }
        let cut = fixed_blocks * block_size;
        let base: Vec<usize> = (0..cut).collect();
        let chain = StabilizerChain::build_with_base(self, &base);
        Ok(PermGroup::new(self.degree, chain.level_generators(cut)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Symmetric,
    Alternating,
    Other,
}

/// A system of blocks of imprimitivity, stored as a point → block map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    block_of: Vec<usize>,
    block_count: usize,
}

impl BlockSystem {
    fn from_union_find(uf: &mut UnionFind, degree: usize) -> Self {
        let mut relabel = vec![usize::MAX; degree];
        let mut block_of = Vec::with_capacity(degree);
        let mut block_count = 0;
        for x in 0..degree {
            let root = uf.find(x);
            if relabel[root] == usize::MAX {
                relabel[root] = block_count;
                block_count += 1;
            }
            block_of.push(relabel[root]);
        }
        BlockSystem { block_of, block_count }
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }

    /// Returns true if the classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}

pub fn factorial(k: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=k {
        out *= i;
    }
    out
}

/// A base and strong generating set built by the deterministic
/// Schreier–Sims procedure.
///
/// Level `i` holds the stabilizer of the first `i` base points, its orbit
/// of the `i`-th base point, and a transversal of coset representatives,
/// so the group order is the product of the orbit sizes and membership is
/// decided by sifting.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    /// Orbit of `base_point` under `gens`, in discovery order.
    orbit: Vec<usize>,
    /// For `y` in the orbit, a word `u` with `u(base_point) = y`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize) -> Self {
        Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: Vec::new(),
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal = vec![None; degree];
        self.orbit.push(self.base_point);
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let ux = self.transversal[x].as_ref().unwrap();
                    self.transversal[y] = Some(ux.compose(g));
                    self.orbit.push(y);
                }
            }
        }
    }
}

impl StabilizerChain {
    pub fn build(group: &PermGroup) -> Self {
        Self::build_with_base(group, &[])
    }

    /// Builds a chain whose base starts with the given points, in order.
    /// Useful to make the tail of the chain a prescribed pointwise
    /// stabilizer.
    pub fn build_with_base(group: &PermGroup, base_hint: &[usize]) -> Self {
        let degree = group.degree();
        let mut chain = StabilizerChain {
            degree,
            levels: base_hint.iter().map(|&b| Level::new(b)).collect(),
        };
        for g in group.generators() {
            chain.insert_generator(g.clone());
        }
        chain.close();
        chain
    }

    /// Adds `g` to every level it stabilizes the base prefix of, extending
    /// the base if `g` fixes all current base points.
    fn insert_generator(&mut self, g: Permutation) {
        if g.is_identity() {
            return;
        }
        let mut level = 0;
        loop {
            if level == self.levels.len() {
                self.levels.push(Level::new(g.smallest_moved_point().unwrap()));
            }
            self.levels[level].gens.push(g.clone());
            if g.apply(self.levels[level].base_point) != self.levels[level].base_point {
                return;
            }
            level += 1;
        }
    }

    /// Verifies Schreier generators level by level from the bottom,
    /// inserting sifted residues until every level passes.
    fn close(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut level = self.levels.len() - 1;
        loop {
            self.levels[level].recompute_orbit(self.degree);
            match self.find_failing_schreier_generator(level) {
                Some(residue) => {
                    let stop = self.insert_residue(level, residue);
                    level = stop;
                }
                None => {
                    if level == 0 {
                        return;
                    }
                    level -= 1;
                }
            }
        }
    }

    /// Sifts every Schreier generator of `level` through the levels below;
    /// returns the first nontrivial residue.
    fn find_failing_schreier_generator(&self, level: usize) -> Option<Permutation> {
        let lv = &self.levels[level];
        for &x in &lv.orbit {
            let ux = lv.transversal[x].as_ref().unwrap();
            for g in &lv.gens {
                let y = g.apply(x);
                let uy = lv.transversal[y].as_ref().unwrap();
                let schreier = ux.compose(g).compose(&uy.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, _) = self.sift_from(level + 1, schreier);
                if !residue.is_identity() {
                    return Some(residue);
                }
            }
        }
        None
    }

    /// Adds a residue found at `level` to the levels below it; returns the
    /// deepest level that received it.
    fn insert_residue(&mut self, level: usize, residue: Permutation) -> usize {
        let mut stop = level + 1;
        loop {
            if stop == self.levels.len() {
                self.levels
                    .push(Level::new(residue.smallest_moved_point().unwrap()));
            }
            self.levels[stop].gens.push(residue.clone());
            if residue.apply(self.levels[stop].base_point) != self.levels[stop].base_point {
                return stop;
            }
            stop += 1;
        }
    }

    /// Divides `p` by coset representatives down the chain.  Returns the
    /// residue and the number of levels passed.
    fn sift_from(&self, start: usize, p: Permutation) -> (Permutation, usize) {
        let mut h = p;
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let y = h.apply(level.base_point);
            match level.transversal.get(y).and_then(|u| u.as_ref()) {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for level in &self.levels {
            order *= level.orbit.len();
        }
        order
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        assert_eq!(p.degree(), self.degree, "degree mismatch in membership");
        let (residue, _) = self.sift_from(0, p.clone());
        residue.is_identity()
    }

    /// Generators of the stabilizer of the first `depth` base points.
    /// With a base hint of the first `depth` points of 0..degree this is
    /// the kernel of the projection onto those points.
    fn level_generators(&self, depth: usize) -> Vec<Permutation> {
        match self.levels.get(depth) {
            Some(level) => level.gens.clone(),
            None => Vec::new(),
        }
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        match self.levels.first() {
            Some(level) => level.gens.clone(),
            None => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::block_permutation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, Some(degree)).unwrap()
    }

    /// Order oracle: breadth-first closure of the generating set.
    fn order_by_enumeration(group: &PermGroup, cap: usize) -> usize {
        let mut seen = HashSet::new();
        let mut queue = vec![Permutation::identity(group.degree())];
        seen.insert(queue[0].clone());
        while let Some(x) = queue.pop() {
            for g in group.generators() {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    assert!(seen.len() <= cap, "closure exceeded cap {cap}");
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn chain_order_matches_enumeration_on_random_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for trial in 0..40 {
            let degree = 2 + rng.random_range(0..6);
            let gens: Vec<Permutation> = (0..2 + trial % 2)
                .map(|_| Permutation::random(degree, &mut rng))
                .collect();
            let group = PermGroup::new(degree, gens);
            let expected = order_by_enumeration(&group, 50_000);
            let chain = StabilizerChain::build(&group);
            assert_eq!(chain.order(), BigUint::from(expected), "degree {degree}");
        }
    }

    #[test]
    fn chain_membership_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let group = PermGroup::new(5, vec![p("(1,2,3)", 5), p("(3,4,5)", 5)]);
        let chain = StabilizerChain::build(&group);
        let mut elements = HashSet::new();
        let mut queue = vec![Permutation::identity(5)];
        elements.insert(queue[0].clone());
        while let Some(x) = queue.pop() {
            for g in group.generators() {
                let y = x.compose(g);
                if elements.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        assert_eq!(elements.len(), 60); // A₅
        for _ in 0..300 {
            let candidate = Permutation::random(5, &mut rng);
            assert_eq!(chain.contains(&candidate), elements.contains(&candidate));
        }
    }

    #[test]
    fn strong_generators_all_sift_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let degree = 3 + rng.random_range(0..7);
            let gens: Vec<Permutation> =
                (0..2).map(|_| Permutation::random(degree, &mut rng)).collect();
            let chain = StabilizerChain::build(&PermGroup::new(degree, gens));
            for g in chain.strong_generators() {
                assert!(chain.contains(&g));
            }
        }
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for k in 1..=8 {
            let s = StabilizerChain::build(&PermGroup::symmetric(k));
            assert_eq!(s.order(), factorial(k), "S_{k}");
            let a = StabilizerChain::build(&PermGroup::alternating(k));
            let expected = if k >= 2 { factorial(k) / 2u8 } else { factorial(k) };
            assert_eq!(a.order(), expected, "A_{k}");
        }
    }

    #[test]
    fn recognizes_symmetric_alternating_and_other() {
        assert_eq!(PermGroup::symmetric(6).recognize_sym_alt(), GroupKind::Symmetric);
        assert_eq!(PermGroup::alternating(6).recognize_sym_alt(), GroupKind::Alternating);
        let cyclic = PermGroup::new(6, vec![p("(1,2,3,4,5,6)", 6)]);
        assert_eq!(cyclic.recognize_sym_alt(), GroupKind::Other);
        // order k!/2 but with an odd generator (only possible intransitively)
        let odd_half = PermGroup::new(4, vec![p("(1,2,3,4)", 4), p("(1,3)", 4)]);
        assert_eq!(
            StabilizerChain::build(&odd_half).order(),
            BigUint::from(8u32)
        );
        assert_eq!(odd_half.recognize_sym_alt(), GroupKind::Other);
        assert_eq!(PermGroup::trivial(1).recognize_sym_alt(), GroupKind::Symmetric);
    }

    #[test]
    fn orbits_and_transitivity() {
        let group = PermGroup::new(6, vec![p("(1,2,3)", 6), p("(4,5)", 6)]);
        assert_eq!(group.orbit(0), vec![0, 1, 2]);
        assert_eq!(group.orbits(), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert!(!group.is_transitive());
        assert!(PermGroup::symmetric(4).is_transitive());
        assert!(PermGroup::trivial(1).is_transitive());
    }

    #[test]
    fn block_systems_of_dihedral_action() {
        // ⟨(1,2,3,4), (1,3)⟩ is dihedral of order 8 with blocks {1,3},{2,4}
        let group = PermGroup::new(4, vec![p("(1,2,3,4)", 4), p("(1,3)", 4)]);
        assert!(group.is_transitive());
        assert_eq!(group.is_primitive(), Ok(false));
        let system = group.nontrivial_block_system().unwrap();
        assert_eq!(system.block_count(), 2);
        assert_eq!(system.block_of(0), system.block_of(2));
        assert_eq!(system.block_of(1), system.block_of(3));
        assert_ne!(system.block_of(0), system.block_of(1));
    }

    #[test]
    fn primitivity_of_standard_groups() {
        assert_eq!(PermGroup::symmetric(5).is_primitive(), Ok(true));
        assert_eq!(PermGroup::alternating(7).is_primitive(), Ok(true));
        // C₆ acting regularly is imprimitive
        let c6 = PermGroup::new(6, vec![p("(1,2,3,4,5,6)", 6)]);
        assert_eq!(c6.is_primitive(), Ok(false));
        // C₅ of prime degree is primitive
        let c5 = PermGroup::new(5, vec![p("(1,2,3,4,5)", 5)]);
        assert_eq!(c5.is_primitive(), Ok(true));
        let intransitive = PermGroup::new(5, vec![p("(1,2)", 5)]);
        assert_eq!(intransitive.is_primitive(), Err(GroupError::NotTransitive));
    }

    #[test]
    fn normal_closure_of_three_cycle_in_alternating_group() {
        for k in [5usize, 6, 9] {
            let ambient = PermGroup::alternating(k);
            let closure = ambient.normal_closure(&p("(1,2,3)", k)).unwrap();
            let chain = StabilizerChain::build(&closure);
            assert_eq!(chain.order(), factorial(k) / 2u8, "closure in A_{k}");
        }
    }

    #[test]
    fn normal_closure_in_intransitive_ambient_stays_put() {
        // ambient ⟨(1,2,3)⟩ acting on 5 points; seed (1,2,3) closes onto C₃
        let ambient = PermGroup::new(5, vec![p("(1,2,3)", 5)]);
        let closure = ambient.normal_closure(&p("(1,2,3)", 5)).unwrap();
        let chain = StabilizerChain::build(&closure);
        assert_eq!(chain.order(), BigUint::from(3u32));
    }

    #[test]
    fn normal_closure_of_transposition_is_whole_symmetric_group() {
        let ambient = PermGroup::symmetric(6);
        let closure = ambient.normal_closure(&p("(1,2)", 6)).unwrap();
        assert_eq!(closure.recognize_sym_alt(), GroupKind::Symmetric);
    }

    #[test]
    fn prime_cycle_closures_in_small_alternating_groups_are_primitive() {
        // every prime p ≤ k and a p-cycle seed, for k = 5..9: the normal
        // closure under A_k conjugation is transitive and primitive
        for k in 5..=9usize {
            for pr in [2usize, 3, 5, 7].iter().filter(|&&pr| pr <= k) {
                let seed = Permutation::from_cycles(k, &[(0..*pr).collect()]);
                let ambient = PermGroup::alternating(k);
                let closure = ambient.normal_closure(&seed).unwrap();
                assert!(closure.is_transitive(), "k={k} p={pr}");
                assert_eq!(closure.is_primitive(), Ok(true), "k={k} p={pr}");
            }
        }
    }

    #[test]
    fn projection_kernel_of_rotation_pair() {
        // ⟨(σ,τ), (τ,σ)⟩ with coprime-order σ, τ: fixing the first block
        // pointwise leaves exactly {e} × A₅
        let sigma = p("(1,2,3)", 5);
        let tau = p("(1,2,3,4,5)", 5);
        let group = PermGroup::new(
            10,
            vec![
                block_permutation(&[sigma.clone(), tau.clone()]),
                block_permutation(&[tau.clone(), sigma.clone()]),
            ],
        );
        let kernel = group.projection_kernel(5, 1).unwrap();
        let chain = StabilizerChain::build(&kernel);
        assert_eq!(chain.order(), BigUint::from(60u32));
        let embedded = block_permutation(&[Permutation::identity(5), tau.pow(3)]);
        assert!(chain.contains(&embedded));
        for g in kernel.generators() {
            let fixes_first_block = (0..5).all(|x| g.apply(x) == x);
            assert!(fixes_first_block);
        }
    }

    #[test]
    fn projection_kernel_of_diagonal_is_trivial() {
        let sigma = p("(1,2,3,4)", 4);
        let group = PermGroup::new(8, vec![block_permutation(&[sigma.clone(), sigma.clone()])]);
        let kernel = group.projection_kernel(4, 1).unwrap();
        assert_eq!(StabilizerChain::build(&kernel).order(), BigUint::one());
    }

    #[test]
    fn projection_kernel_rejects_bad_blocking() {
        let group = PermGroup::symmetric(6);
        assert!(matches!(
            group.projection_kernel(4, 1),
            Err(GroupError::BadBlockStructure(_))
        ));
        assert!(matches!(
            group.projection_kernel(3, 2),
            Err(GroupError::BadBlockStructure(_))
        ));
        assert!(matches!(
            group.projection_kernel(3, 0),
            Err(GroupError::BadBlockStructure(_))
        ));
    }

    #[test]
    fn direct_product_order_via_block_embedding() {
        // S₁₂ × S₁₂ from a pair of block generators
        let gens = vec![
            block_permutation(&[p("(1,2)", 12), Permutation::identity(12)]),
            block_permutation(&[p("(1,2,3,4,5,6,7,8,9,10,11,12)", 12), Permutation::identity(12)]),
            block_permutation(&[Permutation::identity(12), p("(1,2)", 12)]),
            block_permutation(&[Permutation::identity(12), p("(1,2,3,4,5,6,7,8,9,10,11,12)", 12)]),
        ];
        let chain = StabilizerChain::build(&PermGroup::new(24, gens));
        assert_eq!(chain.order(), factorial(12) * factorial(12));
    }

    #[test]
    fn trivial_group_edge_cases() {
        let trivial = PermGroup::trivial(4);
        let chain = StabilizerChain::build(&trivial);
        assert_eq!(chain.order(), BigUint::one());
        assert!(chain.contains(&Permutation::identity(4)));
        assert!(!chain.contains(&p("(1,2)", 4)));
        assert!(chain.base().is_empty());
    }
}
