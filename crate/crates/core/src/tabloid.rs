//! Signed (lambda|mu)-tabloids and the signed action of S_n on them.
//!
//! A tabloid is stored canonically (rows increasing), so its own sign is +1
//! and applying a permutation yields the canonical image together with the
//! sign of re-sorting the mu-rows. Lambda-rows never contribute a sign.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::blockset::BlockSet;
use crate::combinatorics::{require_prime, ClassSignature, SignedShape};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

fn inversion_parity(values: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Sign of the permutation that sorts `raw_row` ascending.
pub fn sort_sign(raw_row: &[usize]) -> Result<Sign> {
    let mut sorted = raw_row.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateEntry(w[0]));
    }
    Ok(Sign::from_parity(inversion_parity(raw_row)))
}

/// A permutation of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // 0-based: images[i] = pi(i + 1) - 1
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 1-based images: `images[i - 1] = pi(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// Product of disjoint or overlapping cycles on `{1..n}`, applied right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut perm = Permutation::identity(n);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (1..=n).collect();
            let mut seen = HashSet::new();
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || !seen.insert(x) {
                    return Err(Error::NotAPermutation(n));
                }
                images[x - 1] = cycle[(i + 1) % cycle.len()];
            }
            perm = Permutation::from_images(&images)?.compose(&perm);
        }
        Ok(perm)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `pi(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn sign(&self) -> Sign {
        let mut seen = vec![false; self.n()];
        let mut odd = false;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            if len % 2 == 0 {
                odd = !odd;
            }
        }
        Sign::from_parity(odd)
    }
}

/// A canonical (lambda|mu)-tabloid.
///
/// Stored as the row index of each entry; since rows are sets this word is
/// a canonical form, and the sorted rows are recovered on demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tabloid {
    word: Box<[u16]>,
    lambda_rows: u16,
    num_rows: u16,
}

impl Tabloid {
    /// Builds a tabloid from rows given in any order within each row.
    pub fn from_rows(lambda_rows: &[Vec<usize>], mu_rows: &[Vec<usize>]) -> Result<Self> {
        let rows: Vec<&Vec<usize>> = lambda_rows.iter().chain(mu_rows).collect();
        let n: usize = rows.iter().map(|r| r.len()).sum();
        let num_rows = u16::try_from(rows.len()).map_err(|_| Error::MalformedTabloid("too many rows".into()))?;
        let mut word = vec![u16::MAX; n];
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::MalformedTabloid(format!("row {} is empty", r + 1)));
            }
            for &x in row.iter() {
                if x == 0 || x > n {
                    return Err(Error::MalformedTabloid(format!("entry {x} outside 1..={n}")));
                }
                if word[x - 1] != u16::MAX {
                    return Err(Error::DuplicateEntry(x));
                }
                word[x - 1] = r as u16;
            }
        }
        Ok(Tabloid { word: word.into_boxed_slice(), lambda_rows: lambda_rows.len() as u16, num_rows })
    }

    /// The tabloid with `1..n` filled into successive rows.
    pub fn initial(shape: &SignedShape) -> Self {
        let mut word = Vec::with_capacity(shape.n());
        for (r, len) in shape.parts().into_iter().enumerate() {
            word.extend(std::iter::repeat_n(r as u16, len));
        }
        Tabloid {
            word: word.into_boxed_slice(),
            lambda_rows: shape.num_lambda_rows() as u16,
            num_rows: shape.num_rows() as u16,
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows as usize
    }

    pub fn num_lambda_rows(&self) -> usize {
        self.lambda_rows as usize
    }

    /// Row index (0-based, lambda rows first) holding entry `x`.
    pub fn row_of(&self, x: usize) -> usize {
        self.word[x - 1] as usize
    }

    pub fn is_mu_row(&self, row: usize) -> bool {
        row >= self.lambda_rows as usize
    }

    /// Sorted rows, lambda rows first.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.num_rows()];
        for (i, &r) in self.word.iter().enumerate() {
            rows[r as usize].push(i + 1);
        }
        rows
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        let mut lens = vec![0; self.num_rows()];
        for &r in self.word.iter() {
            lens[r as usize] += 1;
        }
        lens
    }
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let render = |rs: &[Vec<usize>]| {
            rs.iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        };
        let (lam, mu) = rows.split_at(self.lambda_rows as usize);
        write!(f, "{}|{}", render(lam), render(mu))
    }
}

impl FromStr for Tabloid {
    type Err = Error;

    /// Parses `"4,5,6;1|7,8,9;2,3"`; either side of `|` may be empty.
    fn from_str(s: &str) -> Result<Self> {
        let (lam, mu) = s.split_once('|').ok_or_else(|| Error::MalformedTabloid(format!("missing '|' in {s:?}")))?;
        let parse_side = |side: &str| -> Result<Vec<Vec<usize>>> {
            let side = side.trim();
            if side.is_empty() {
                return Ok(Vec::new());
            }
            side.split(';')
                .map(|row| {
                    row.split(',')
                        .map(|x| {
                            x.trim().parse::<usize>().map_err(|_| Error::MalformedTabloid(format!("bad entry {x:?}")))
                        })
                        .collect()
                })
                .collect()
        };
        Tabloid::from_rows(&parse_side(lam)?, &parse_side(mu)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedTabloid {
    pub tabloid: Tabloid,
    pub sign: Sign,
}

impl fmt::Display for SignedTabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign, self.tabloid)
    }
}

/// `perm ∘ t`: the canonical image `{perm t}` and the sign `ε(perm t)`.
pub fn apply_signed(perm: &Permutation, t: &Tabloid) -> Result<SignedTabloid> {
    let n = t.n();
    if perm.n() != n {
        return Err(Error::SizeMismatch { expected: n, actual: perm.n() });
    }
    let lambda_rows = t.lambda_rows as usize;
    let mut word = vec![0u16; n];
    let mut mu_images: Vec<Vec<usize>> = vec![Vec::new(); t.num_rows() - lambda_rows];
    for (x, &r) in t.word.iter().enumerate() {
        let image = perm.images[x];
        word[image] = r;
        if r as usize >= lambda_rows {
            mu_images[r as usize - lambda_rows].push(image);
        }
    }
    let odd = mu_images.iter().fold(false, |acc, row| acc ^ inversion_parity(row));
    Ok(SignedTabloid {
        tabloid: Tabloid { word: word.into_boxed_slice(), lambda_rows: t.lambda_rows, num_rows: t.num_rows },
        sign: Sign::from_parity(odd),
    })
}

/// `{perm t}` without the sign.
pub(crate) fn permute(perm: &Permutation, t: &Tabloid) -> Tabloid {
    let mut word = vec![0u16; t.n()];
    for (x, &r) in t.word.iter().enumerate() {
        word[perm.images[x]] = r;
    }
    Tabloid { word: word.into_boxed_slice(), lambda_rows: t.lambda_rows, num_rows: t.num_rows }
}

/// A (lambda|mu)-tableau: a filling whose rows are ordered sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
    lambda_rows: usize,
}

impl Tableau {
    pub fn new(lambda_rows: Vec<Vec<usize>>, mu_rows: Vec<Vec<usize>>) -> Result<Self> {
        // validates the filling
        Tabloid::from_rows(&lambda_rows, &mu_rows)?;
        let count = lambda_rows.len();
        let mut rows = lambda_rows;
        rows.extend(mu_rows);
        Ok(Tableau { rows, lambda_rows: count })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Product of the signs needed to sort each mu-row.
    pub fn epsilon(&self) -> Sign {
        self.rows[self.lambda_rows..].iter().map(|r| Sign::from_parity(inversion_parity(r))).fold(Sign::Plus, Sign::mul)
    }

    /// Entry-wise action: replaces every entry `x` by `perm(x)`.
    pub fn act(&self, perm: &Permutation) -> Tableau {
        Tableau {
            rows: self.rows.iter().map(|r| r.iter().map(|&x| perm.apply(x)).collect()).collect(),
            lambda_rows: self.lambda_rows,
        }
    }

    pub fn tabloid(&self) -> Tabloid {
        let (lam, mu) = self.rows.split_at(self.lambda_rows);
        Tabloid::from_rows(lam, mu).expect("tableau filling validated at construction")
    }
}

/// A partition of `{1..n}` into the orbits of an elementary abelian
/// p-subgroup: `k` non-singleton blocks followed by fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    n: usize,
    p: u64,
    blocks: Vec<Vec<usize>>,
    k: usize,
    generators: Vec<Permutation>,
}

impl BlockSystem {
    /// `B_i = {(i-1)p+1, ..., ip}` for `i <= n / p`, generated by the p-cycles on them.
    pub fn standard(n: usize, p: u64) -> Result<Self> {
        ClassSignature::all_size_p(n, p).and_then(|sig| BlockSystem::from_signature(&sig))
    }

    /// Consecutive blocks of the signature's orbit sizes (largest first),
    /// each acted on regularly by `(Z/p)^j`.
    pub fn from_signature(sig: &ClassSignature) -> Result<Self> {
        let p = sig.p();
        require_prime(p)?;
        let pu = p as usize;
        let n = sig.n();
        let sizes = sig.orbit_sizes();
        if sizes.len() > BlockSet::MAX_BLOCKS {
            return Err(Error::TooManyBlocks { k: sizes.len(), max: BlockSet::MAX_BLOCKS });
        }
        let mut blocks = Vec::new();
        let mut generators = Vec::new();
        let mut offset = 0;
        for &size in &sizes {
            blocks.push((offset + 1..=offset + size).collect());
            let mut stride = 1;
            while stride < size {
                // add one to the base-p digit of weight `stride`
                let images: Vec<usize> = (0..n)
                    .map(|x| {
                        if x < offset || x >= offset + size {
                            return x + 1;
                        }
                        let d = x - offset;
                        let digit = (d / stride) % pu;
                        let bumped = d - digit * stride + ((digit + 1) % pu) * stride;
                        offset + bumped + 1
                    })
                    .collect();
                generators.push(Permutation::from_images(&images)?);
                stride *= pu;
            }
            offset += size;
        }
        let k = blocks.len();
        blocks.extend((offset + 1..=n).map(|x| vec![x]));
        Ok(BlockSystem { n, p, blocks, k, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of non-singleton blocks.
    pub fn k(&self) -> usize {
        self.k
    }

    /// All blocks, non-singleton blocks first.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn full_set(&self) -> BlockSet {
        BlockSet::full(self.k)
    }
}

/// Indices of the non-singleton blocks whose entries are spread over more
/// than one row of `t`.
pub fn constituting_set(t: &Tabloid, bs: &BlockSystem) -> Result<BlockSet> {
    if t.n() != bs.n {
        return Err(Error::SizeMismatch { expected: bs.n, actual: t.n() });
    }
    let mut set = BlockSet::empty();
    for (i, block) in bs.blocks[..bs.k].iter().enumerate() {
        let row = t.row_of(block[0]);
        if block.iter().any(|&x| t.row_of(x) != row) {
            set.insert(i + 1);
        }
    }
    Ok(set)
}

/// Closure of `(t, +)` under the generators of `bs`, in breadth-first order.
///
/// Each underlying tabloid appears once, with the sign of the first path
/// that reached it. For odd p that sign is path independent; for p = 2 it
/// is only determined up to -1 = +1 in the field.
pub fn orbit(t: &Tabloid, bs: &BlockSystem) -> Result<Vec<SignedTabloid>> {
    if t.n() != bs.n {
        return Err(Error::SizeMismatch { expected: bs.n, actual: t.n() });
    }
    let start = SignedTabloid { tabloid: t.clone(), sign: Sign::Plus };
    let mut seen: HashSet<Tabloid> = HashSet::from([t.clone()]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for g in &bs.generators {
            let next = apply_signed(g, &cur.tabloid)?;
            if seen.insert(next.tabloid.clone()) {
                let item = SignedTabloid { tabloid: next.tabloid, sign: cur.sign * next.sign };
                out.push(item.clone());
                queue.push_back(item);
            }
        }
    }
    Ok(out)
}

pub const DEFAULT_MAX_BASIS: u64 = 10_000_000;

/// Checks `shape`'s dimension against `max_count` and returns it.
pub fn guarded_dimension(shape: &SignedShape, max_count: u64) -> Result<u64> {
    let dim = shape.dimension();
    match dim.to_u64() {
        Some(d) if d <= max_count => Ok(d),
        _ => Err(Error::BasisTooLarge { dim: dim.to_string(), limit: max_count }),
    }
}

/// Every tabloid of `shape`, ordered lexicographically by the sorted row
/// contents taken in row order.
pub fn enumerate_tabloids(shape: &SignedShape, max_count: u64) -> Result<TabloidIter> {
    let dim = guarded_dimension(shape, max_count)?;
    if shape.num_rows() > u16::MAX as usize {
        return Err(Error::MalformedTabloid("too many rows".into()));
    }
    let parts = shape.parts();
    let combos = parts.iter().map(|&len| (0..len).collect()).collect();
    Ok(TabloidIter { n: shape.n(), parts, lambda_rows: shape.num_lambda_rows() as u16, combos, remaining: dim })
}

#[derive(Debug, Clone)]
pub struct TabloidIter {
    n: usize,
    parts: Vec<usize>,
    lambda_rows: u16,
    // combos[i]: positions chosen for row i within the entries left after rows < i
    combos: Vec<Vec<usize>>,
    remaining: u64,
}

fn next_combination(c: &mut [usize], pool: usize) -> bool {
    let m = c.len();
    let Some(i) = (0..m).rev().find(|&i| c[i] < pool - m + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..m {
        c[j] = c[j - 1] + 1;
    }
    true
}

impl TabloidIter {
    fn current(&self) -> Tabloid {
        let mut pool: Vec<usize> = (0..self.n).collect();
        let mut word = vec![0u16; self.n];
        for (r, combo) in self.combos.iter().enumerate() {
            for &pos in combo {
                word[pool[pos]] = r as u16;
            }
            let mut idx = 0;
            pool.retain(|_| {
                let keep = combo.binary_search(&idx).is_err();
                idx += 1;
                keep
            });
        }
        Tabloid { word: word.into_boxed_slice(), lambda_rows: self.lambda_rows, num_rows: self.parts.len() as u16 }
    }

    fn advance(&mut self) {
        let rows = self.parts.len();
        let mut pool_sizes = Vec::with_capacity(rows);
        let mut left = self.n;
        for &len in &self.parts {
            pool_sizes.push(left);
            left -= len;
        }
        for i in (0..rows.saturating_sub(1)).rev() {
            if next_combination(&mut self.combos[i], pool_sizes[i]) {
                for j in i + 1..rows {
                    self.combos[j] = (0..self.parts[j]).collect();
                }
                return;
            }
        }
    }
}

impl Iterator for TabloidIter {
    type Item = Tabloid;

    fn next(&mut self) -> Option<Tabloid> {
        if self.remaining == 0 {
            return None;
        }
        let t = self.current();
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(t)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for TabloidIter {}

/// Position of a tabloid in the order of [`enumerate_tabloids`].
#[derive(Debug, Clone)]
pub struct TabloidRanker {
    n: usize,
    parts: Vec<usize>,
    // completions[i]: number of ways to fill rows i.. from what is left
    completions: Vec<u64>,
    binom: Vec<Vec<u64>>,
}

impl TabloidRanker {
    pub fn new(shape: &SignedShape, max_count: u64) -> Result<Self> {
        guarded_dimension(shape, max_count)?;
        let n = shape.n();
        let parts = shape.parts();
        let mut completions = vec![1u64; parts.len() + 1];
        let mut left = 0usize;
        for i in (0..parts.len()).rev() {
            left += parts[i];
            let ways = num_integer::binomial(left as u128, parts[i] as u128) as u64;
            completions[i] = completions[i + 1] * ways;
        }
        // binomials C(a, b) for a < n and b < max row length; all are bounded by the dimension
        let width = parts.iter().copied().max().unwrap_or(0);
        let binom = (0..=n)
            .map(|a| {
                (0..=width)
                    .map(|b| {
                        if b > a {
                            0
                        } else {
                            num_integer::binomial(a as u128, b as u128).min(u64::MAX as u128) as u64
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(TabloidRanker { n, parts, completions, binom })
    }

    pub fn rank(&self, t: &Tabloid) -> u64 {
        debug_assert_eq!(t.n(), self.n);
        let mut rank = 0u64;
        let mut pool = self.n;
        for (r, &len) in self.parts.iter().enumerate() {
            let mut comb_rank = 0u64;
            let mut pos = 0usize;
            let mut j = 0usize;
            for &row in t.word.iter() {
                // entries of earlier rows are no longer in the pool
                let row = row as usize;
                if row < r {
                    continue;
                }
                if row == r {
                    j += 1;
                    if j == len {
                        break;
                    }
                } else {
                    // lexicographically smaller choices put `pos` at slot j
                    comb_rank += self.binom[pool - 1 - pos][len - 1 - j];
                }
                pos += 1;
            }
            rank += comb_rank * self.completions[r + 1];
            pool -= len;
        }
        rank
    }
}
