//! Decomposition of the restriction M_P into cyclic summands, one per orbit
//! of tabloids, classified by constituting set.
//!
//! Two routes are kept side by side: a brute-force orbit partition of the
//! tabloid basis, and a counting route that inverts the subset counts
//! `f(T)` (tabloids whose constituting set lies inside `T`).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::{binomial, Integer};
use num_traits::{ToPrimitive, Zero};

use crate::blockset::BlockSet;
use crate::combinatorics::{multinomial_of_parts, require_prime, SignedShape};
use crate::error::{Error, Result};
use crate::tabloid::{
    apply_signed, constituting_set, enumerate_tabloids, guarded_dimension, permute, BlockSystem, Tabloid, TabloidRanker,
};
use crate::Natural;

/// Largest block count accepted by the counting route.
pub const MAX_FAST_BLOCKS: usize = 62;

/// Largest number of subset classes a decomposition may expand to.
pub const MAX_CLASSES: u64 = 1 << 22;

/// Multiplicities `m_S` of the cyclic summands of M_P, keyed by constituting set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandDecomposition {
    p: u64,
    k: usize,
    // zero multiplicities are not stored
    classes: BTreeMap<BlockSet, Natural>,
}

impl SummandDecomposition {
    pub fn new(p: u64, k: usize, classes: BTreeMap<BlockSet, Natural>) -> Self {
        let classes = classes.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        SummandDecomposition { p, k, classes }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn multiplicity(&self, set: BlockSet) -> Natural {
        self.classes.get(&set).cloned().unwrap_or_default()
    }

    /// Nonzero classes in `BlockSet` order.
    pub fn classes(&self) -> impl Iterator<Item = (BlockSet, &Natural)> {
        self.classes.iter().map(|(s, m)| (*s, m))
    }

    pub fn projective_class(&self) -> BlockSet {
        BlockSet::full(self.k)
    }

    /// Dimension `p^|S|` of one summand of class `S`.
    pub fn summand_dim(&self, set: BlockSet) -> Natural {
        Natural::from(self.p).pow(set.len() as u32)
    }

    pub fn total_dim(&self) -> Natural {
        self.classes.iter().map(|(s, m)| m * self.summand_dim(*s)).sum()
    }

    /// Total dimension of the summands whose class avoids the last block.
    /// Zero when there are no blocks.
    pub fn non_faithful_dim(&self) -> Natural {
        if self.k == 0 {
            return Natural::zero();
        }
        self.classes.iter().filter(|(s, _)| !s.contains(self.k)).map(|(s, m)| m * self.summand_dim(*s)).sum()
    }

    /// Dimension of the non-projective part.
    pub fn core_dim(&self) -> Natural {
        let full = self.projective_class();
        self.classes.iter().filter(|(s, _)| **s != full).map(|(s, m)| m * self.summand_dim(*s)).sum()
    }
}

impl fmt::Display for SummandDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.classes.iter().map(|(s, m)| format!("{m}{s}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One orbit of tabloids under a block system's group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub representative: Tabloid,
    pub constituting: BlockSet,
    pub size: usize,
}

/// Partitions the whole tabloid basis into orbits under `bs`.
///
/// Representatives are the first member of each orbit in enumeration order.
pub fn orbit_census(shape: &SignedShape, bs: &BlockSystem, max_dim: u64) -> Result<Vec<OrbitRecord>> {
    if bs.n() != shape.n() {
        return Err(Error::SizeMismatch { expected: shape.n(), actual: bs.n() });
    }
    let dim = guarded_dimension(shape, max_dim)?;
    let ranker = TabloidRanker::new(shape, max_dim)?;
    let mut visited = vec![false; dim as usize];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for t in enumerate_tabloids(shape, max_dim)? {
        let r = ranker.rank(&t) as usize;
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let constituting = constituting_set(&t, bs)?;
        let mut size = 1;
        queue.push_back(t.clone());
        while let Some(cur) = queue.pop_front() {
            for g in bs.generators() {
                let next = permute(g, &cur);
                let r = ranker.rank(&next) as usize;
                if !visited[r] {
                    visited[r] = true;
                    size += 1;
                    queue.push_back(next);
                }
            }
        }
        out.push(OrbitRecord { representative: t, constituting, size });
    }
    Ok(out)
}

fn block_count(shape: &SignedShape, p: u64) -> Result<usize> {
    require_prime(p)?;
    Ok(shape.n() / p as usize)
}

/// Brute-force decomposition for the standard rank-k subgroup: one summand
/// per orbit, classified by its constituting set.
pub fn decompose_bruteforce(shape: &SignedShape, p: u64, max_dim: u64) -> Result<SummandDecomposition> {
    let k = block_count(shape, p)?;
    if k > BlockSet::MAX_BLOCKS {
        return Err(Error::TooManyBlocks { k, max: BlockSet::MAX_BLOCKS });
    }
    let bs = BlockSystem::standard(shape.n(), p)?;
    classify_orbits(&bs, &orbit_census(shape, &bs, max_dim)?)
}

/// Groups a census taken under a standard block system by constituting
/// set, checking that every orbit has size `p^|I|`.
pub fn classify_orbits(bs: &BlockSystem, census: &[OrbitRecord]) -> Result<SummandDecomposition> {
    let p = bs.p();
    let mut classes: BTreeMap<BlockSet, Natural> = BTreeMap::new();
    for orbit in census {
        let expected = (p as usize).pow(orbit.constituting.len() as u32);
        if orbit.size != expected {
            return Err(Error::OrbitSizeMismatch { expected, actual: orbit.size });
        }
        *classes.entry(orbit.constituting).or_default() += 1u32;
    }
    Ok(SummandDecomposition::new(p, bs.k(), classes))
}

/// Number of fillings in which `free` distinguishable blocks of size `p`
/// each sit inside a single row.
///
/// Groups the block-to-row assignments by how many blocks land in each row.
fn placements_with_free_blocks(parts: &[usize], p: usize, free: usize) -> Natural {
    fn go(
        row: usize,
        left: usize,
        parts: &[usize],
        p: usize,
        reduced: &mut Vec<i64>,
        ways: Natural,
        acc: &mut Natural,
    ) {
        if row == parts.len() {
            if left == 0 {
                *acc += ways * multinomial_of_parts(reduced);
            }
            return;
        }
        let max_here = (parts[row] / p).min(left);
        for c in 0..=max_here {
            reduced[row] = (parts[row] - c * p) as i64;
            // choose which of the remaining blocks go to this row
            let choose = binomial(BigUint::from(left), BigUint::from(c));
            go(row + 1, left - c, parts, p, reduced, &ways * choose, acc);
        }
        reduced[row] = parts[row] as i64;
    }
    let mut reduced: Vec<i64> = parts.iter().map(|&x| x as i64).collect();
    let mut acc = Natural::zero();
    go(0, free, parts, p, &mut reduced, Natural::from(1u32), &mut acc);
    acc
}

/// `f(T)`: the number of tabloids whose constituting set (for the standard
/// rank-k subgroup) is contained in `allowed`.
pub fn constrained_count(shape: &SignedShape, p: u64, allowed: BlockSet) -> Result<Natural> {
    let k = block_count(shape, p)?;
    if k > BlockSet::MAX_BLOCKS {
        return Err(Error::TooManyBlocks { k, max: BlockSet::MAX_BLOCKS });
    }
    if !allowed.is_subset(BlockSet::full(k)) {
        return Err(Error::BlockOutOfRange { set: allowed.to_string(), k });
    }
    Ok(placements_with_free_blocks(&shape.parts(), p as usize, k - allowed.len()))
}

/// Multiplicity of a single class of each size: entry `d` is `m_S` for any
/// `S` with `|S| = d` (all such classes are conjugate under block swaps).
pub fn multiplicities_by_size(shape: &SignedShape, p: u64) -> Result<Vec<Natural>> {
    let k = block_count(shape, p)?;
    if k > MAX_FAST_BLOCKS {
        return Err(Error::TooManyBlocks { k, max: MAX_FAST_BLOCKS });
    }
    let parts = shape.parts();
    let pu = p as usize;
    // counts[i] = f(T) for |T| = i
    let counts: Vec<BigInt> = (0..=k).map(|i| BigInt::from(placements_with_free_blocks(&parts, pu, k - i))).collect();
    let mut out = Vec::with_capacity(k + 1);
    for d in 0..=k {
        let mut exact = BigInt::zero();
        for (i, count) in counts.iter().enumerate().take(d + 1) {
            let term = count * BigInt::from(binomial(BigUint::from(d), BigUint::from(i)));
            if (d - i) % 2 == 0 {
                exact += term;
            } else {
                exact -= term;
            }
        }
        let orbit = BigInt::from(p).pow(d as u32);
        let (q, r) = exact.div_rem(&orbit);
        if exact.sign() == BigSign::Minus || !r.is_zero() {
            return Err(Error::InexactDivision { count: exact.to_string(), orbit: orbit.to_string() });
        }
        out.push(q.to_biguint().expect("checked nonnegative"));
    }
    Ok(out)
}

/// Subsets of `{1..k}` of size `d`, in increasing bitmask order.
fn subsets_of_size(k: usize, d: usize) -> impl Iterator<Item = BlockSet> {
    let limit: u128 = 1u128 << k;
    let mut cur: Option<u128> = Some((1u128 << d) - 1);
    std::iter::from_fn(move || {
        let x = cur?;
        if x >= limit {
            return None;
        }
        cur = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(BlockSet::from_bits(x as u64))
    })
}

/// Counting-route decomposition: `m_S = (sum_{T ⊆ S} (-1)^{|S \ T|} f(T)) / p^|S|`.
pub fn decompose_fast(shape: &SignedShape, p: u64) -> Result<SummandDecomposition> {
    let by_size = multiplicities_by_size(shape, p)?;
    let k = by_size.len() - 1;
    let classes_needed: BigUint = by_size
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(d, _)| binomial(BigUint::from(k), BigUint::from(d)))
        .sum();
    if classes_needed > BigUint::from(MAX_CLASSES) {
        return Err(Error::TooManyClasses { count: classes_needed.to_string(), limit: MAX_CLASSES });
    }
    let mut classes = BTreeMap::new();
    for (d, m) in by_size.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        for set in subsets_of_size(k, d) {
            classes.insert(set, m.clone());
        }
    }
    Ok(SummandDecomposition::new(p, k, classes))
}

/// Dimension of the largest summand of M_P that is not p-faithful: the
/// tabloids that keep the last block inside one row. Zero when `n < p`.
pub fn dim_non_faithful(shape: &SignedShape, p: u64) -> Result<Natural> {
    let k = block_count(shape, p)?;
    if k == 0 {
        return Ok(Natural::zero());
    }
    if k > BlockSet::MAX_BLOCKS {
        return Err(Error::TooManyBlocks { k, max: BlockSet::MAX_BLOCKS });
    }
    let mut allowed = BlockSet::full(k);
    allowed = BlockSet::from_bits(allowed.bits() & !(1u64 << (k - 1)));
    constrained_count(shape, p, allowed)
}

/// Decomposes `M_P ⊗ M_P` directly: orbits of ordered pairs of tabloids
/// under the diagonal action, classified by the union of constituting sets.
pub fn pair_decompose(shape: &SignedShape, p: u64, max_dim: u64) -> Result<SummandDecomposition> {
    let k = block_count(shape, p)?;
    if k > BlockSet::MAX_BLOCKS {
        return Err(Error::TooManyBlocks { k, max: BlockSet::MAX_BLOCKS });
    }
    let dim = shape.dimension();
    let square = &dim * &dim;
    let dim = match square.to_u64() {
        Some(sq) if sq <= max_dim => dim.to_u64().expect("dimension fits when its square does") as usize,
        _ => return Err(Error::BasisTooLarge { dim: square.to_string(), limit: max_dim }),
    };
    let bs = BlockSystem::standard(shape.n(), p)?;
    let ranker = TabloidRanker::new(shape, max_dim)?;
    let tabloids: Vec<Tabloid> = enumerate_tabloids(shape, max_dim)?.collect();
    let sets = tabloids.iter().map(|t| constituting_set(t, &bs)).collect::<Result<Vec<_>>>()?;
    // images[g][i]: index of the generator-g image of tabloid i
    let images = bs
        .generators()
        .iter()
        .map(|g| {
            tabloids
                .iter()
                .map(|t| Ok(ranker.rank(&apply_signed(g, t)?.tabloid) as usize))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut visited = vec![false; dim * dim];
    let mut classes: BTreeMap<BlockSet, Natural> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for start in 0..dim * dim {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let class = sets[start / dim].union(sets[start % dim]);
        let mut size = 1usize;
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            let (a, b) = (cur / dim, cur % dim);
            for img in &images {
                let next = img[a] * dim + img[b];
                if !visited[next] {
                    visited[next] = true;
                    size += 1;
                    queue.push_back(next);
                }
            }
        }
        let expected = (p as usize).pow(class.len() as u32);
        if size != expected {
            return Err(Error::OrbitSizeMismatch { expected, actual: size });
        }
        *classes.entry(class).or_default() += 1u32;
    }
    Ok(SummandDecomposition::new(p, k, classes))
}
