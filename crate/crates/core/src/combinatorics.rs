//! Exact integer combinatorics: multinomials, shapes, and the conjugacy-class
//! signatures of maximal elementary abelian p-subgroups of S_n.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Natural;

/// `n! / prod(parts!)`, or zero when any part is negative.
///
/// Nonnegative parts must sum to `n`.
pub fn multinomial(n: i64, parts: &[i64]) -> Result<Natural> {
    if parts.iter().any(|&x| x < 0) {
        return Ok(Natural::zero());
    }
    let actual: i64 = parts.iter().sum();
    if actual != n {
        return Err(Error::SumMismatch { expected: n, actual });
    }
    Ok(multinomial_of_parts(parts))
}

/// Multinomial with `n` taken to be the sum of `parts`; zero on a negative part.
pub(crate) fn multinomial_of_parts(parts: &[i64]) -> Natural {
    if parts.iter().any(|&x| x < 0) {
        return Natural::zero();
    }
    let mut acc = Natural::one();
    let mut total: u64 = 0;
    for &part in parts {
        let part = part as u64;
        total += part;
        if part != 0 && part != total {
            acc *= binomial(BigUint::from(total), BigUint::from(part));
        }
    }
    acc
}

/// Sum over rows of the multinomial obtained by removing `q` entries from
/// that one row: the number of fillings that keep a fixed `q`-set inside a
/// single row.
pub(crate) fn single_row_placements(parts: &[usize], q: usize) -> Natural {
    let mut reduced: Vec<i64> = parts.iter().map(|&x| x as i64).collect();
    let mut total = Natural::zero();
    for i in 0..reduced.len() {
        if parts[i] < q {
            continue;
        }
        reduced[i] -= q as i64;
        total += multinomial_of_parts(&reduced);
        reduced[i] += q as i64;
    }
    total
}

pub fn factorial(n: u64) -> Natural {
    (2..=n).fold(Natural::one(), |acc, i| acc * i)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowOrigin {
    Lambda,
    Mu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Row {
    pub len: usize,
    pub origin: RowOrigin,
}

/// A pair of partitions `(lambda | mu)` labelling a signed permutation module.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedShape {
    lambda: Vec<usize>,
    mu: Vec<usize>,
}

impl SignedShape {
    pub fn new(lambda: &[i64], mu: &[i64]) -> Result<Self> {
        validate_shape(lambda, mu)
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    pub fn n(&self) -> usize {
        self.lambda.iter().chain(&self.mu).sum()
    }

    /// Rows in order lambda_1..lambda_r, mu_1..mu_s.
    pub fn rows(&self) -> Vec<Row> {
        let lam = self.lambda.iter().map(|&len| Row { len, origin: RowOrigin::Lambda });
        let mu = self.mu.iter().map(|&len| Row { len, origin: RowOrigin::Mu });
        lam.chain(mu).collect()
    }

    /// All row lengths, lambda rows first.
    pub fn parts(&self) -> Vec<usize> {
        self.lambda.iter().chain(&self.mu).copied().collect()
    }

    pub fn num_rows(&self) -> usize {
        self.lambda.len() + self.mu.len()
    }

    pub fn num_lambda_rows(&self) -> usize {
        self.lambda.len()
    }

    /// Dimension of the module, the number of tabloids.
    pub fn dimension(&self) -> Natural {
        let parts: Vec<i64> = self.parts().iter().map(|&x| x as i64).collect();
        multinomial_of_parts(&parts)
    }

    /// The shape with lambda and mu exchanged.
    pub fn conjugate_sign(&self) -> SignedShape {
        SignedShape { lambda: self.mu.clone(), mu: self.lambda.clone() }
    }
}

impl fmt::Display for SignedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.lambda), join(&self.mu))
    }
}

/// Validates raw row lengths, stripping trailing zeros.
pub fn validate_shape(lambda: &[i64], mu: &[i64]) -> Result<SignedShape> {
    fn clean(raw: &[i64]) -> Result<Vec<usize>> {
        let mut end = raw.len();
        while end > 0 && raw[end - 1] == 0 {
            end -= 1;
        }
        let trimmed = &raw[..end];
        let monotone = trimmed.windows(2).all(|w| w[0] >= w[1]);
        if !monotone || trimmed.iter().any(|&x| x <= 0) {
            return Err(Error::NotAPartition(raw.to_vec()));
        }
        Ok(trimmed.iter().map(|&x| x as usize).collect())
    }
    let lambda = clean(lambda)?;
    let mu = clean(mu)?;
    if lambda.is_empty() && mu.is_empty() {
        return Err(Error::EmptyShape);
    }
    Ok(SignedShape { lambda, mu })
}

/// One conjugacy class of maximal elementary abelian p-subgroups of S_n,
/// described by its orbit decomposition `n = a0 + sum_j i_j p^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassSignature {
    p: u64,
    a0: usize,
    /// exponent j -> i_j, zero counts omitted
    counts: BTreeMap<u32, usize>,
}

impl ClassSignature {
    pub fn new(p: u64, a0: usize, counts: BTreeMap<u32, usize>) -> Result<Self> {
        require_prime(p)?;
        let counts = counts.into_iter().filter(|&(_, c)| c > 0).collect::<BTreeMap<_, _>>();
        let sig = ClassSignature { p, a0, counts };
        if a0 as u64 >= p {
            return Err(sig.inconsistent(format!("a0={a0} is not below p")));
        }
        if sig.counts.contains_key(&0) {
            return Err(sig.inconsistent("orbit exponents must be at least 1".into()));
        }
        for &j in sig.counts.keys() {
            if (p as usize).checked_pow(j).is_none() {
                return Err(sig.inconsistent(format!("p^{j} overflows")));
            }
        }
        Ok(sig)
    }

    /// The signature of the rank-k subgroup generated by disjoint p-cycles.
    pub fn all_size_p(n: usize, p: u64) -> Result<Self> {
        require_prime(p)?;
        let pu = p as usize;
        let mut counts = BTreeMap::new();
        if n / pu > 0 {
            counts.insert(1, n / pu);
        }
        ClassSignature::new(p, n % pu, counts)
    }

    fn inconsistent(&self, reason: String) -> Error {
        Error::InconsistentSignature { n: self.n(), p: self.p, reason }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a0(&self) -> usize {
        self.a0
    }

    pub fn counts(&self) -> &BTreeMap<u32, usize> {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.a0 + self.orbit_sizes().iter().sum::<usize>()
    }

    /// Orbit sizes in decreasing order.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let pu = self.p as usize;
        self.counts.iter().rev().flat_map(|(&j, &c)| std::iter::repeat_n(pu.pow(j), c)).collect()
    }

    pub fn smallest_orbit(&self) -> Option<usize> {
        self.counts.keys().next().map(|&j| (self.p as usize).pow(j))
    }

    pub fn is_orbitless(&self) -> bool {
        self.counts.is_empty()
    }

    /// Rank of the elementary abelian group, `sum_j j * i_j`.
    pub fn rank(&self) -> usize {
        self.counts.iter().map(|(&j, &c)| j as usize * c).sum()
    }

    /// Checks the signature against a degree `n` and prime `p`.
    pub fn check_against(&self, n: usize, p: u64) -> Result<()> {
        if self.p != p {
            return Err(Error::InconsistentSignature { n, p, reason: format!("signature is for p={}", self.p) });
        }
        if self.n() != n {
            return Err(Error::InconsistentSignature { n, p, reason: format!("orbits cover {} points", self.n()) });
        }
        Ok(())
    }
}

impl fmt::Display for ClassSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.orbit_sizes().iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", sizes.join(","))
    }
}

/// All class signatures for S_n at the prime p.
///
/// Ordered lexicographically on `(i_r, ..., i_1)`, so the all-size-p
/// signature always comes first.
pub fn class_signatures(n: usize, p: u64) -> Result<Vec<ClassSignature>> {
    require_prime(p)?;
    let pu = p as usize;
    let a0 = n % pu;
    let mut powers = Vec::new();
    let mut q = pu;
    while q <= n {
        powers.push(q);
        match q.checked_mul(pu) {
            Some(next) => q = next,
            None => break,
        }
    }

    // counts[j-1] = i_j; choose from the highest exponent down, i_1 forced.
    fn go(level: usize, remaining: usize, powers: &[usize], counts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if level == 0 {
            counts[0] = remaining / powers[0];
            out.push(counts.clone());
            return;
        }
        for c in 0..=remaining / powers[level] {
            counts[level] = c;
            go(level - 1, remaining - c * powers[level], powers, counts, out);
        }
        counts[level] = 0;
    }

    if powers.is_empty() {
        return Ok(vec![ClassSignature::new(p, a0, BTreeMap::new())?]);
    }
    let mut raw = Vec::new();
    let mut counts = vec![0; powers.len()];
    go(powers.len() - 1, n - a0, &powers, &mut counts, &mut raw);
    raw.into_iter()
        .map(|cs| {
            let counts = cs.iter().enumerate().map(|(i, &c)| (i as u32 + 1, c)).collect::<BTreeMap<_, _>>();
            ClassSignature::new(p, a0, counts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(x: u64) -> Natural {
        Natural::from(x)
    }

    fn by_factorials(parts: &[u64]) -> Natural {
        let n: u64 = parts.iter().sum();
        let denom = parts.iter().fold(Natural::one(), |acc, &x| acc * factorial(x));
        factorial(n) / denom
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(9, &[3, 1, 3, 2]).unwrap(), nat(5040));
        assert_eq!(multinomial(6, &[3, -2, 3, 2]).unwrap(), nat(0));
        assert_eq!(multinomial(0, &[]).unwrap(), nat(1));
        assert_eq!(multinomial(6, &[0, 1, 3, 2]).unwrap(), nat(60));
    }

    #[test]
    fn multinomial_sum_mismatch() {
        assert_eq!(multinomial(5, &[1, 1]), Err(Error::SumMismatch { expected: 5, actual: 2 }));
        // a negative part wins over the sum check
        assert_eq!(multinomial(5, &[-1, 1]).unwrap(), nat(0));
    }

    #[test]
    fn multinomial_exceeds_u64() {
        let parts = [10i64; 5];
        let expected = by_factorials(&[10; 5]);
        assert_eq!(multinomial(50, &parts).unwrap(), expected);
        assert!(expected > Natural::from(u64::MAX));
    }

    #[test]
    fn shape_validation() {
        let s = validate_shape(&[3, 1], &[3, 2]).unwrap();
        assert_eq!(s.n(), 9);
        assert_eq!(
            s.rows(),
            vec![
                Row { len: 3, origin: RowOrigin::Lambda },
                Row { len: 1, origin: RowOrigin::Lambda },
                Row { len: 3, origin: RowOrigin::Mu },
                Row { len: 2, origin: RowOrigin::Mu },
            ]
        );
        let s = validate_shape(&[4], &[]).unwrap();
        assert_eq!((s.n(), s.num_rows()), (4, 1));
        assert!(matches!(validate_shape(&[1, 2], &[]), Err(Error::NotAPartition(_))));
        assert!(matches!(validate_shape(&[2, -1], &[]), Err(Error::NotAPartition(_))));
        assert!(matches!(validate_shape(&[2, 0, 1], &[]), Err(Error::NotAPartition(_))));
        assert_eq!(validate_shape(&[0, 0], &[]), Err(Error::EmptyShape));
        assert_eq!(validate_shape(&[], &[]), Err(Error::EmptyShape));
        let s = validate_shape(&[2, 1, 0, 0], &[0]).unwrap();
        assert_eq!((s.lambda(), s.mu()), (&[2usize, 1][..], &[][..]));
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&x| is_prime(x)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(class_signatures(9, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn signatures_nine_three() {
        let sigs = class_signatures(9, 3).unwrap();
        let sizes: Vec<Vec<usize>> = sigs.iter().map(|s| s.orbit_sizes()).collect();
        assert_eq!(sizes, vec![vec![3, 3, 3], vec![9]]);
        assert!(sigs.iter().all(|s| s.a0() == 0));
    }

    #[test]
    fn signatures_below_p() {
        let sigs = class_signatures(2, 3).unwrap();
        assert_eq!(sigs.len(), 1);
        assert_eq!(sigs[0].a0(), 2);
        assert!(sigs[0].is_orbitless());
    }

    #[test]
    fn signatures_twelve_two() {
        // every multiset of powers of two (at least 2) summing to 12
        let sizes: Vec<Vec<usize>> = class_signatures(12, 2).unwrap().iter().map(|s| s.orbit_sizes()).collect();
        assert_eq!(
            sizes,
            vec![vec![2; 6], vec![4, 2, 2, 2, 2], vec![4, 4, 2, 2], vec![4, 4, 4], vec![8, 2, 2], vec![8, 4],]
        );
    }

    #[test]
    fn all_size_p_is_first() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..40 {
                let sigs = class_signatures(n, p).unwrap();
                assert_eq!(sigs[0], ClassSignature::all_size_p(n, p).unwrap());
            }
        }
    }

    /// Independent enumeration: every vector of counts within bounds.
    fn brute_signatures(n: usize, p: usize) -> Vec<Vec<usize>> {
        let mut powers = vec![];
        let mut q = p;
        while q <= n {
            powers.push(q);
            q *= p;
        }
        let target = n - n % p;
        let mut found = vec![];
        let mut counts = vec![0usize; powers.len()];
        loop {
            let total: usize = counts.iter().zip(&powers).map(|(c, q)| c * q).sum();
            if total == target {
                let mut sizes: Vec<usize> =
                    counts.iter().zip(&powers).flat_map(|(&c, &q)| std::iter::repeat_n(q, c)).collect();
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                // sort key: counts reversed (highest exponent first)
                let key: Vec<usize> = counts.iter().rev().copied().collect();
                found.push((key, sizes));
            }
            let mut i = 0;
            loop {
                if i == counts.len() {
                    found.sort();
                    return found.into_iter().map(|(_, s)| s).collect();
                }
                counts[i] += 1;
                if counts[i] * powers[i] <= target {
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn signatures_match_brute_force() {
        for p in [2usize, 3, 5, 7] {
            for n in 1..=30 {
                let got: Vec<Vec<usize>> =
                    class_signatures(n, p as u64).unwrap().iter().map(|s| s.orbit_sizes()).collect();
                let want = brute_signatures(n, p);
                let want = if want.is_empty() { vec![vec![]] } else { want };
                assert_eq!(got, want, "n={n} p={p}");
            }
        }
    }

    proptest! {
        #[test]
        fn multinomial_symmetric(parts in prop::collection::vec(0i64..6, 0..6), seed in any::<u64>()) {
            let n = parts.iter().sum();
            let mut shuffled = parts.clone();
            // deterministic rotation plus reversal from the seed
            let len = shuffled.len().max(1);
            shuffled.rotate_left((seed as usize) % len);
            if seed & 1 == 1 { shuffled.reverse(); }
            prop_assert_eq!(multinomial(n, &parts).unwrap(), multinomial(n, &shuffled).unwrap());
        }

        #[test]
        fn multinomial_matches_factorials(parts in prop::collection::vec(0u64..7, 0..6)) {
            let n = parts.iter().sum::<u64>() as i64;
            let signed: Vec<i64> = parts.iter().map(|&x| x as i64).collect();
            prop_assert_eq!(multinomial(n, &signed).unwrap(), by_factorials(&parts));
        }

        #[test]
        fn multinomial_refinement(
            sub in prop::collection::vec(0i64..5, 1..4),
            rest in prop::collection::vec(0i64..5, 0..4),
        ) {
            let first: i64 = sub.iter().sum();
            let n = first + rest.iter().sum::<i64>();
            let mut coarse = vec![first];
            coarse.extend(&rest);
            let mut fine = sub.clone();
            fine.extend(&rest);
            prop_assert_eq!(
                multinomial(n, &coarse).unwrap() * multinomial(first, &sub).unwrap(),
                multinomial(n, &fine).unwrap()
            );
        }

        #[test]
        fn signatures_cover_n(n in 1usize..60, pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            for sig in class_signatures(n, p).unwrap() {
                prop_assert_eq!(sig.n(), n);
                prop_assert_eq!(sig.a0(), n % p as usize);
                for size in sig.orbit_sizes() {
                    let mut q = size;
                    while q % p as usize == 0 { q /= p as usize; }
                    prop_assert!(q == 1 && size > 1);
                }
            }
        }
    }
}
