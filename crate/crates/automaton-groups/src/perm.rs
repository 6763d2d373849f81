//! Dense permutations on `{0, .., k-1}` with cycle arithmetic.
//!
//! Compositions act left to right: `(p * q)(x) = q(p(x))`, matching the
//! convention that a word of automaton states applies its first letter
//! first.  All API points are 0-based; textual cycle notation is 1-based,
//! so `(1,2)` parses to the swap of points 0 and 1.

use std::fmt;

use num_integer::Integer;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("permutations are not conjugate (different cycle types)")]
    NotConjugate,
    #[error("no conjugator of the requested parity exists")]
    ParityUnachievable,
}

/// A permutation stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image table; panics unless `images` is
    /// a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &y in &images {
            assert!(y < images.len(), "image {y} out of range");
            assert!(!seen[y], "image {y} repeated");
            seen[y] = true;
        }
        Permutation { images }
    }

    /// Builds a permutation of `0..degree` from disjoint cycles given as
    /// 0-based point lists.  Panics on overlapping or out-of-range points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                assert!(x < degree, "cycle point {x} out of range");
                assert!(!seen[x], "cycle point {x} repeated");
                seen[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation { images }
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        assert!(a < degree && b < degree && a != b);
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Uniformly random permutation by Fisher–Yates.
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &y)| *i != y).map(|(i, _)| i)
    }

    /// `(self ∘ other)(x) = other(self(x))`: apply `self` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: self.images.iter().map(|&y| other.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            images[y] = i;
        }
        Permutation { images }
    }

    /// Conjugate `r⁻¹ · self · r`, i.e. `self` with points relabelled by `r`.
    pub fn conjugate_by(&self, r: &Permutation) -> Permutation {
        assert_eq!(self.degree(), r.degree(), "degree mismatch in conjugate");
        let mut images = vec![0; self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            images[r.images[i]] = r.images[y];
        }
        Permutation { images }
    }

    /// `self^e` for any integer exponent, computed cycle by cycle.
    pub fn pow(&self, e: i128) -> Permutation {
        let mut images: Vec<usize> = (0..self.degree()).collect();
        for cycle in self.cycle_decomposition(false).cycles() {
            let len = cycle.len() as i128;
            let shift = e.rem_euclid(len) as usize;
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + shift) % cycle.len()];
            }
        }
        Permutation { images }
    }

    pub fn cycle_decomposition(&self, include_fixed_points: bool) -> CycleDecomposition {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 || include_fixed_points {
                cycles.push(cycle);
            }
        }
        CycleDecomposition {
            degree: self.degree(),
            cycles,
            includes_fixed_points: include_fixed_points,
        }
    }

    /// Multiplicative order: the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_decomposition(false)
            .cycles()
            .iter()
            .fold(1u128, |acc, c| acc.lcm(&(c.len() as u128)))
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn signature(&self) -> i32 {
        let transpositions: usize = self
            .cycle_decomposition(false)
            .cycles()
            .iter()
            .map(|c| c.len() - 1)
            .sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.signature() == 1
    }

    /// Whether the conjugacy class of `self` in the symmetric group splits
    /// into two classes of the alternating group: true exactly when all
    /// cycle lengths (fixed points included) are odd and pairwise distinct.
    pub fn class_splits(&self) -> bool {
        let decomposition = self.cycle_decomposition(true);
        let mut lengths: Vec<usize> = decomposition.cycles().iter().map(|c| c.len()).collect();
        lengths.sort_unstable();
        lengths.iter().all(|&l| l % 2 == 1) && lengths.windows(2).all(|w| w[0] != w[1])
    }

    /// A deterministic `r` with `self^r = q`, aligning cycles greedily by
    /// decreasing length (ties by smallest leading point).
    pub fn conjugator_to(&self, q: &Permutation) -> Result<Permutation, PermError> {
        assert_eq!(self.degree(), q.degree(), "degree mismatch in conjugator");
        let ours = sorted_cycles(self);
        let theirs = sorted_cycles(q);
        let same_type = ours.len() == theirs.len()
            && ours.iter().zip(&theirs).all(|(a, b)| a.len() == b.len());
        if !same_type {
            return Err(PermError::NotConjugate);
        }
        let mut images = vec![0; self.degree()];
        for (a, b) in ours.iter().zip(&theirs) {
            for (&x, &y) in a.iter().zip(b) {
                images[x] = y;
            }
        }
        Ok(Permutation { images })
    }

    /// Like [`conjugator_to`](Self::conjugator_to) but with the signature of
    /// the conjugator prescribed.  Fails with `ParityUnachievable` exactly
    /// when the class of `self` splits and the greedy conjugator has the
    /// wrong parity.
    pub fn conjugator_to_with_parity(
        &self,
        q: &Permutation,
        signature: i32,
    ) -> Result<Permutation, PermError> {
        assert!(signature == 1 || signature == -1, "signature must be ±1");
        let r = self.conjugator_to(q)?;
        if r.signature() == signature {
            return Ok(r);
        }
        match self.odd_centralizer_element() {
            Some(c) => Ok(c.compose(&r)),
            None => Err(PermError::ParityUnachievable),
        }
    }

    /// An odd permutation commuting with `self`, if one exists: either an
    /// even-length cycle of `self` or the aligned swap of two equal-length
    /// cycles.
    fn odd_centralizer_element(&self) -> Option<Permutation> {
        let cycles = sorted_cycles(self);
        if let Some(c) = cycles.iter().find(|c| c.len() % 2 == 0) {
            return Some(Permutation::from_cycles(self.degree(), &[c.clone()]));
        }
        for pair in cycles.windows(2) {
            if pair[0].len() == pair[1].len() {
                let swaps: Vec<Vec<usize>> = pair[0]
                    .iter()
                    .zip(&pair[1])
                    .map(|(&a, &b)| vec![a, b])
                    .collect();
                return Some(Permutation::from_cycles(self.degree(), &swaps));
            }
        }
        None
    }

    /// Parses 1-based cycle notation such as `(1,6,4,3)(2,5)`; `e` and `()`
    /// denote the identity.  Without an explicit degree the largest point
    /// mentioned determines it.
    pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Permutation, PermError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PermError::MalformedCycle("empty input".into()));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        if compact != "e" {
            let mut rest = compact.as_str();
            while !rest.is_empty() {
                let Some(stripped) = rest.strip_prefix('(') else {
                    return Err(PermError::MalformedCycle(format!(
                        "expected '(' at {rest:?}"
                    )));
                };
                let Some(end) = stripped.find(')') else {
                    return Err(PermError::MalformedCycle("unclosed cycle".into()));
                };
                let body = &stripped[..end];
                rest = &stripped[end + 1..];
                if body.is_empty() {
                    continue;
                }
                let mut cycle = Vec::new();
                for part in body.split(',') {
                    let point: usize = part.parse().map_err(|_| {
                        PermError::MalformedCycle(format!("bad point {part:?}"))
                    })?;
                    if point == 0 {
                        return Err(PermError::MalformedCycle("points are 1-based".into()));
                    }
                    cycle.push(point - 1);
                }
                cycles.push(cycle);
            }
        }
        let max_point = cycles.iter().flatten().max().map_or(0, |&m| m + 1);
        let degree = match degree {
            Some(d) => {
                if max_point > d {
                    return Err(PermError::MalformedCycle(format!(
                        "point {max_point} exceeds degree {d}"
                    )));
                }
                d
            }
            None => max_point,
        };
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in &cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if seen[x] {
                    return Err(PermError::MalformedCycle(format!(
                        "point {} repeated",
                        x + 1
                    )));
                }
                seen[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }
}

/// Cycles sorted by decreasing length, ties by smallest point, fixed points
/// included; each cycle rotated to start at its smallest point.
fn sorted_cycles(p: &Permutation) -> Vec<Vec<usize>> {
    let mut cycles = p.cycle_decomposition(true).cycles().to_vec();
    cycles.sort_by_key(|c| (std::cmp::Reverse(c.len()), c[0]));
    cycles
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decomposition = self.cycle_decomposition(false);
        if decomposition.cycles().is_empty() {
            return write!(f, "e");
        }
        for cycle in decomposition.cycles() {
            write!(f, "(")?;
            for (i, &x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}:{}]", self.degree(), self)
    }
}

/// The disjoint cycles of a permutation, each rotated to start at its
/// smallest point and listed in order of those starting points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    degree: usize,
    cycles: Vec<Vec<usize>>,
    includes_fixed_points: bool,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn includes_fixed_points(&self) -> bool {
        self.includes_fixed_points
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.degree, &self.cycles)
    }
}

/// Assembles one permutation acting blockwise: block `b` of size `k` is
/// permuted within itself by `blocks[b]`.  All blocks must share a degree.
pub fn block_permutation(blocks: &[Permutation]) -> Permutation {
    assert!(!blocks.is_empty(), "need at least one block");
    let k = blocks[0].degree();
    assert!(
        blocks.iter().all(|p| p.degree() == k),
        "blocks must share a degree"
    );
    let mut images = Vec::with_capacity(blocks.len() * k);
    for (b, p) in blocks.iter().enumerate() {
        images.extend(p.images().iter().map(|&y| b * k + y));
    }
    Permutation { images }
}

/// The action of `p` on block `b` of size `k`, or `None` if `p` does not
/// map that block onto itself.
pub fn extract_block(p: &Permutation, b: usize, k: usize) -> Option<Permutation> {
    assert_eq!(p.degree() % k, 0, "degree not a multiple of block size");
    let lo = b * k;
    let mut images = Vec::with_capacity(k);
    for x in lo..lo + k {
        let y = p.apply(x);
        if y < lo || y >= lo + k {
            return None;
        }
        images.push(y - lo);
    }
    Some(Permutation { images })
}
