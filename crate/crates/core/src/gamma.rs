//! The invariant γ of a signed permutation module: the closed formula, the
//! value on each class of maximal elementary abelian subgroups, and a
//! report that cross-checks the independent characterizations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combinatorics::{class_signatures, require_prime, single_row_placements, ClassSignature, SignedShape};
use crate::decomposition::{
    decompose_bruteforce, decompose_fast, dim_non_faithful, pair_decompose, SummandDecomposition,
};
use crate::error::{Error, Result};
use crate::semiring::{relative_error, to_decimal, ExactFormalSum, FormalSum};
use crate::Natural;

/// Sum over rows of the multinomial with that row shortened by `p`.
/// Zero when every row is shorter than `p`, in particular when `n < p`.
pub fn gamma_closed(shape: &SignedShape, p: u64) -> Result<Natural> {
    require_prime(p)?;
    Ok(single_row_placements(&shape.parts(), p as usize))
}

/// γ_E for a subgroup class: the number of tabloids keeping one orbit of
/// smallest size inside a single row. Zero for the orbitless signature.
pub fn gamma_class(shape: &SignedShape, p: u64, sig: &ClassSignature) -> Result<Natural> {
    require_prime(p)?;
    sig.check_against(shape.n(), p)?;
    Ok(match sig.smallest_orbit() {
        None => Natural::zero(),
        Some(q) => single_row_placements(&shape.parts(), q),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn verdict(ok: bool, detail: String) -> Self {
        Check { status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        Check { status: CheckStatus::Skipped, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaReport {
    pub shape: SignedShape,
    pub p: u64,
    pub gamma: Natural,
    pub per_class: Vec<(ClassSignature, Natural)>,
    pub witness: ClassSignature,
    pub checks: BTreeMap<String, Check>,
}

impl GammaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &Check)> {
        self.checks.iter().filter(|(_, c)| c.status == CheckStatus::Fail).map(|(name, c)| (name.as_str(), c))
    }
}

struct ClassTable {
    per_class: Vec<(ClassSignature, Natural)>,
    witness: ClassSignature,
    maximum: Natural,
    all_size_p: Natural,
}

fn class_table(shape: &SignedShape, p: u64) -> Result<ClassTable> {
    let per_class = class_signatures(shape.n(), p)?
        .into_iter()
        .map(|sig| gamma_class(shape, p, &sig).map(|v| (sig, v)))
        .collect::<Result<Vec<_>>>()?;
    let (witness, maximum) = per_class
        .iter()
        .fold(None::<&(ClassSignature, Natural)>, |best, cur| match best {
            Some(b) if b.1 >= cur.1 => Some(b),
            _ => Some(cur),
        })
        .cloned()
        .expect("at least one signature");
    let standard = ClassSignature::all_size_p(shape.n(), p)?;
    let all_size_p = per_class
        .iter()
        .find(|(sig, _)| *sig == standard)
        .map(|(_, v)| v.clone())
        .expect("the all-size-p signature is always enumerated");
    Ok(ClassTable { per_class, witness, maximum, all_size_p })
}

const CLASS_MAXIMUM: &str = "class_maximum";

/// γ over S_n as the maximum of γ_E over all subgroup classes.
///
/// Fails with `ConsistencyFailure` if the maximum disagrees with the closed
/// formula or is not attained by the all-size-p class.
pub fn gamma_sn(shape: &SignedShape, p: u64) -> Result<GammaReport> {
    let closed = gamma_closed(shape, p)?;
    let table = class_table(shape, p)?;
    if table.maximum != closed || table.all_size_p != closed {
        return Err(Error::ConsistencyFailure(format!(
            "{shape} p={p}: class maximum {} (witness {}), all-size-p class {}, closed formula {closed}",
            table.maximum, table.witness, table.all_size_p
        )));
    }
    let mut checks = BTreeMap::new();
    checks.insert(
        CLASS_MAXIMUM.to_string(),
        Check::verdict(true, format!("max over {} classes = closed formula = {closed}", table.per_class.len())),
    );
    Ok(GammaReport {
        shape: shape.clone(),
        p,
        gamma: closed,
        per_class: table.per_class,
        witness: table.witness,
        checks,
    })
}

/// Limits for [`cross_check`].
#[derive(Debug, Clone)]
pub struct CrossCheckOptions {
    /// Brute-force orbit partition only when the dimension is at most this.
    pub max_bruteforce_dim: u64,
    /// Pair decomposition only when the squared dimension is at most this.
    pub max_pair_dim: u64,
    /// Semiring simulation only with at most this many blocks.
    pub max_semiring_blocks: usize,
    /// Ratio proximity is judged from this power on.
    pub series_min: usize,
    /// Give up on ratio proximity after this power.
    pub series_max: usize,
    /// Required `|ratio / γ - 1|`.
    pub tolerance: BigRational,
}

impl Default for CrossCheckOptions {
    fn default() -> Self {
        CrossCheckOptions {
            max_bruteforce_dim: 100_000,
            max_pair_dim: 1_000_000,
            max_semiring_blocks: 8,
            series_min: 60,
            series_max: 400,
            tolerance: BigRational::new(BigInt::from(1), BigInt::from(1_000_000)),
        }
    }
}

impl CrossCheckOptions {
    /// Counting routes only: no brute force, no pair decomposition.
    pub fn quick() -> Self {
        CrossCheckOptions { max_bruteforce_dim: 0, max_pair_dim: 0, ..Self::default() }
    }
}

/// Where the exact ratio first came within tolerance of γ.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    /// `n` such that `c_{n+1} / c_n` met the tolerance.
    pub n: usize,
    pub ratio: BigRational,
    pub error: BigRational,
}

/// Multiplies out tensor powers until `c_{n+1}/c_n` is within `tolerance`
/// of `target` for some `n >= min_n`, up to `max_n`.
///
/// Returns `Ok(None)` when the tolerance was not met, and `ZeroCore` when
/// the decomposition has no non-projective part.
pub fn ratio_convergence(
    decomp: &SummandDecomposition,
    target: &Natural,
    tolerance: &BigRational,
    min_n: usize,
    max_n: usize,
) -> Result<Option<Convergence>> {
    let base: ExactFormalSum = FormalSum::from_decomposition(decomp)?;
    let mut power = base.clone();
    let mut prev = power.core_dim();
    if prev.is_zero() {
        return Err(Error::ZeroCore);
    }
    for n in 1..max_n {
        power = power.product(&base)?;
        let next = power.core_dim();
        if n >= min_n {
            let ratio = BigRational::new(BigInt::from(next.clone()), BigInt::from(prev.clone()));
            let error = relative_error(&ratio, target);
            if &error < tolerance {
                return Ok(Some(Convergence { n, ratio, error }));
            }
        }
        prev = next;
    }
    Ok(None)
}

/// Runs every characterization of γ that fits within `opts` and records
/// each comparison. Checks that cannot run are marked skipped.
pub fn cross_check(shape: &SignedShape, p: u64, opts: &CrossCheckOptions) -> Result<GammaReport> {
    let closed = gamma_closed(shape, p)?;
    let n = shape.n();
    let k = n / p as usize;
    let table = class_table(shape, p)?;
    let mut checks = BTreeMap::new();

    checks.insert(
        CLASS_MAXIMUM.to_string(),
        Check::verdict(
            table.maximum == closed && table.all_size_p == closed,
            format!(
                "max over classes {} (witness {}), all-size-p class {}, closed formula {closed}",
                table.maximum, table.witness, table.all_size_p
            ),
        ),
    );

    let worst = table.per_class.iter().find(|(_, v)| *v > table.all_size_p);
    checks.insert(
        "class_inequality".to_string(),
        Check::verdict(
            worst.is_none(),
            match worst {
                None => format!("all {} classes at most {}", table.per_class.len(), table.all_size_p),
                Some((sig, v)) => format!("class {sig} has {v} > {}", table.all_size_p),
            },
        ),
    );

    let nf = dim_non_faithful(shape, p)?;
    checks.insert(
        "non_faithful_dimension".to_string(),
        Check::verdict(nf == closed, format!("dim N = {nf}, closed formula {closed}")),
    );

    let dim = shape.dimension();
    let fast = match decompose_fast(shape, p) {
        Ok(d) => Some(d),
        Err(e) if e.is_guard() => {
            checks.insert("fast_decomposition".to_string(), Check::skipped(e.to_string()));
            None
        }
        Err(e) => return Err(e),
    };

    if let Some(fast) = &fast {
        let conserved = fast.total_dim() == dim;
        let check = if k == 0 {
            Check::verdict(conserved, format!("no blocks; single trivial class of dimension {dim}"))
        } else {
            let sum = fast.non_faithful_dim();
            Check::verdict(
                conserved && sum == closed,
                format!("sum over classes avoiding block {k}: {sum}; total dimension {} of {dim}", fast.total_dim()),
            )
        };
        checks.insert("fast_decomposition".to_string(), check);
    }

    let brute_check = match decompose_bruteforce(shape, p, opts.max_bruteforce_dim) {
        Ok(brute) => {
            let matches_fast = fast.as_ref().is_none_or(|f| *f == brute);
            let sum_ok = k == 0 || brute.non_faithful_dim() == closed;
            Check::verdict(
                matches_fast && sum_ok,
                format!(
                    "{} orbit classes; agrees with counting route: {}; avoiding block {k}: {}",
                    brute.classes().count(),
                    matches_fast,
                    brute.non_faithful_dim()
                ),
            )
        }
        Err(e) if e.is_guard() => Check::skipped(e.to_string()),
        Err(e) => Check::verdict(false, e.to_string()),
    };
    checks.insert("bruteforce_decomposition".to_string(), brute_check);

    let tensor_check = match &fast {
        None => Check::skipped("no decomposition available"),
        Some(fast) => match pair_decompose(shape, p, opts.max_pair_dim) {
            Ok(square) => {
                let semiring = FormalSum::<Natural>::from_decomposition(fast)?.power(2);
                let pairs = FormalSum::<Natural>::from_decomposition(&square)?;
                Check::verdict(
                    semiring == pairs,
                    format!(
                        "pair orbits of M⊗M: {} classes, semiring square agrees: {}",
                        square.classes().count(),
                        semiring == pairs
                    ),
                )
            }
            Err(e) if e.is_guard() => Check::skipped(e.to_string()),
            Err(e) => Check::verdict(false, e.to_string()),
        },
    };
    checks.insert("tensor_square".to_string(), tensor_check);

    let growth = match &fast {
        None => Check::skipped("no decomposition available"),
        Some(_) if k > opts.max_semiring_blocks => {
            Check::skipped(format!("{k} blocks exceed the semiring limit of {}", opts.max_semiring_blocks))
        }
        Some(fast) => match ratio_convergence(fast, &closed, &opts.tolerance, opts.series_min, opts.series_max) {
            Err(Error::ZeroCore) => {
                Check::verdict(closed.is_zero(), format!("core vanishes, every summand projective; γ = {closed}"))
            }
            Err(e) => return Err(e),
            Ok(Some(conv)) => Check::verdict(
                true,
                format!(
                    "c_{}/c_{} = {} within {} of {closed}",
                    conv.n + 1,
                    conv.n,
                    to_decimal(&conv.ratio, 9),
                    to_decimal(&conv.error, 12)
                ),
            ),
            Ok(None) => {
                Check::verdict(false, format!("ratio not within tolerance of {closed} by n = {}", opts.series_max))
            }
        },
    };
    checks.insert("semiring_growth".to_string(), growth);

    Ok(GammaReport {
        shape: shape.clone(),
        p,
        gamma: closed,
        per_class: table.per_class,
        witness: table.witness,
        checks,
    })
}
