//! Tensor powers of M_P simulated on summand classes.
//!
//! A summand of class `S` (constituting set) has dimension `p^|S|`, and
//! the tensor product of classes `S` and `T` is `p^{|S ∩ T|}` copies of
//! class `S ∪ T`. The full class is projective.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::blockset::BlockSet;
use crate::decomposition::SummandDecomposition;
use crate::error::{Error, Result};
use crate::Natural;

/// Coefficients a formal sum can carry: any commutative semiring that
/// embeds the small naturals.
pub trait Coefficient:
    Clone + PartialEq + Debug + Zero + One + Add<Output = Self> + Mul<Output = Self> + FromPrimitive
{
}

impl<T> Coefficient for T where
    T: Clone + PartialEq + Debug + Zero + One + Add<Output = T> + Mul<Output = T> + FromPrimitive
{
}

/// A linear combination of summand classes over the block set `{1..k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSum<C> {
    p: u64,
    k: usize,
    // zero coefficients are not stored
    terms: BTreeMap<BlockSet, C>,
}

impl<C: Coefficient> FormalSum<C> {
    pub fn zero(p: u64, k: usize) -> Self {
        assert!(k <= BlockSet::MAX_BLOCKS);
        FormalSum { p, k, terms: BTreeMap::new() }
    }

    /// The class of the trivial module, the multiplicative identity.
    pub fn one(p: u64, k: usize) -> Self {
        Self::basis(p, k, BlockSet::empty())
    }

    pub fn basis(p: u64, k: usize, set: BlockSet) -> Self {
        let mut s = Self::zero(p, k);
        s.add_term(set, C::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (BlockSet, C)>>(p: u64, k: usize, terms: I) -> Self {
        let mut s = Self::zero(p, k);
        for (set, c) in terms {
            s.add_term(set, c);
        }
        s
    }

    /// Lifts a decomposition; fails if a multiplicity does not fit in `C`.
    pub fn from_decomposition(d: &SummandDecomposition) -> Result<Self>
    where
        C: TryFrom<Natural>,
    {
        let mut s = Self::zero(d.p(), d.k());
        for (set, m) in d.classes() {
            let c = C::try_from(m.clone()).map_err(|_| {
                Error::ConsistencyFailure(format!("multiplicity {m} does not fit the coefficient type"))
            })?;
            s.add_term(set, c);
        }
        Ok(s)
    }

    pub fn add_term(&mut self, set: BlockSet, c: C) {
        assert!(set.is_subset(BlockSet::full(self.k)), "class {set} outside 1..={}", self.k);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(set).or_insert_with(C::zero);
        *slot = slot.clone() + c;
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficient(&self, set: BlockSet) -> C {
        self.terms.get(&set).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BlockSet, &C)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn p_pow(&self, e: usize) -> C {
        let p = C::from_u64(self.p).expect("p fits every coefficient type");
        num_traits::pow(p, e)
    }

    /// Bilinear extension of `[S]·[T] = p^{|S ∩ T|} [S ∪ T]`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.p != other.p || self.k != other.k {
            return Err(Error::MixedContext { p1: self.p, k1: self.k, p2: other.p, k2: other.k });
        }
        let mut out = Self::zero(self.p, self.k);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let c = a.clone() * b.clone() * self.p_pow(s.intersection(*t).len());
                out.add_term(s.union(*t), c);
            }
        }
        Ok(out)
    }

    /// `self^n` by repeated squaring; `n = 0` gives the identity.
    pub fn power(&self, n: u32) -> Self {
        let mut result = Self::one(self.p, self.k);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base).expect("same context");
            }
        }
        result
    }

    pub fn total_dim(&self) -> C {
        self.terms.iter().fold(C::zero(), |acc, (s, c)| acc + c.clone() * self.p_pow(s.len()))
    }

    /// Dimension of everything outside the projective class `{1..k}`.
    pub fn core_dim(&self) -> C {
        let full = BlockSet::full(self.k);
        self.terms
            .iter()
            .filter(|(s, _)| **s != full)
            .fold(C::zero(), |acc, (s, c)| acc + c.clone() * self.p_pow(s.len()))
    }
}

pub type ExactFormalSum = FormalSum<Natural>;

/// Core dimensions `c_1..c_{n_max}` of the tensor powers of a decomposition.
pub fn c_series(decomp: &SummandDecomposition, n_max: usize) -> Result<Vec<Natural>> {
    let base: ExactFormalSum = FormalSum::from_decomposition(decomp)?;
    let mut out = Vec::with_capacity(n_max);
    let mut acc = base.clone();
    for n in 1..=n_max {
        if n > 1 {
            acc = acc.product(&base)?;
        }
        out.push(acc.core_dim());
    }
    Ok(out)
}

/// Consecutive ratios `c_{n+1} / c_n` as exact rationals.
pub fn gamma_estimate(series: &[Natural]) -> Result<Vec<BigRational>> {
    if series.iter().all(Zero::is_zero) {
        return Err(Error::ZeroCore);
    }
    if series.len() < 2 {
        return Err(Error::SeriesTooShort(series.len()));
    }
    if let Some(i) = series[..series.len() - 1].iter().position(Zero::is_zero) {
        return Err(Error::ConsistencyFailure(format!("c_{} is zero inside a nonzero series", i + 1)));
    }
    Ok(series.windows(2).map(|w| BigRational::new(BigInt::from(w[1].clone()), BigInt::from(w[0].clone()))).collect())
}

/// `|value / target - 1|`.
pub fn relative_error(value: &BigRational, target: &Natural) -> BigRational {
    let target = BigRational::from_integer(BigInt::from(target.clone()));
    ((value - &target) / target).abs()
}

/// Renders `value` with `digits` decimals, rounding half away from zero.
pub fn to_decimal(value: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = value * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let (int, frac) = rounded.abs().div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}
