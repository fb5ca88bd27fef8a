//! Closed forms for the Bessel numbers, the matching numbers and the signed
//! sums relating the two kinds.
//!
//! Every value is an exact [`ExactInt`]. Arguments outside the support of a
//! formula evaluate to zero instead of failing, so sums may range over all `k`.

use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::report::{CellReport, Counterexample, VerificationReport};

/// Arbitrary-precision signed integer used for every count and coefficient.
pub type ExactInt = BigInt;

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

/// `n!`, memoized in a process-wide table shared by all threads.
pub fn factorial(n: u32) -> BigInt {
    let n = n as usize;
    let cache = FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    {
        let table = cache.read().expect("factorial cache poisoned");
        if let Some(v) = table.get(n) {
            return v.clone();
        }
    }
    let mut table = cache.write().expect("factorial cache poisoned");
    while table.len() <= n {
        let i = table.len();
        let next = &table[i - 1] * BigInt::from(i);
        table.push(next);
    }
    table[n].clone()
}

/// `binom(n, k)` for non-negative arguments; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// Kronecker delta as an exact integer.
pub fn delta(n: u32, l: u32) -> ExactInt {
    if n == l {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// Bessel number of the second kind: partitions of `[n]` into `k` blocks of
/// size one or two.
pub fn bessel_second(n: u32, k: u32) -> ExactInt {
    if k > n || 2 * k < n {
        return BigInt::zero();
    }
    factorial(n) / (pow2(n - k) * factorial(n - k) * factorial(2 * k - n))
}

/// Signless Bessel number of the first kind `a(n,k)`, the coefficient of
/// `x^(n-k)` in `y_(n-1)(x)`. `a(0,k) = δ(0,k)` and `a(n,0) = 0` for `n ≥ 1`.
pub fn bessel_first_signless(n: u32, k: u32) -> ExactInt {
    if n == 0 {
        return delta(0, k);
    }
    if k == 0 || k > n {
        return BigInt::zero();
    }
    factorial(2 * n - k - 1) / (pow2(n - k) * factorial(n - k) * factorial(k - 1))
}

/// Bessel number of the first kind, `(-1)^(n-k) a(n,k)`.
pub fn bessel_first(n: u32, k: u32) -> ExactInt {
    let a = bessel_first_signless(n, k);
    if n.abs_diff(k) % 2 == 1 {
        -a
    } else {
        a
    }
}

/// Number of `k`-matchings in the complete graph `K_n`.
pub fn matching_number(n: u32, k: u32) -> ExactInt {
    if 2 * k > n {
        return BigInt::zero();
    }
    factorial(n) / (pow2(k) * factorial(k) * factorial(n - 2 * k))
}

/// `Σ_k B(n,k) b(k,l)`; equals `δ(n,l)`.
pub fn inverse_sum_first(n: u32, l: u32) -> ExactInt {
    (0..=n)
        .map(|k| bessel_second(n, k) * bessel_first(k, l))
        .sum()
}

/// `Σ_k b(n,k) B(k,l)`; equals `δ(n,l)`.
pub fn inverse_sum_second(n: u32, l: u32) -> ExactInt {
    (0..=n)
        .map(|k| bessel_first(n, k) * bessel_second(k, l))
        .sum()
}

/// Largest `n_max` accepted by [`verify_inverse`].
pub const INVERSE_MAX_N: u32 = 120;
/// Largest `n_max` accepted by [`verify_log_concavity`].
pub const LOG_CONCAVITY_MAX_N: u32 = 200;
/// Largest `n_max` accepted by [`triangle`] callers on the command line.
pub const TABLE_MAX_N: u32 = 200;

/// Both inverse sums against `δ(n,l)` for `0 ≤ l ≤ n ≤ n_max`, one cell per `n`.
pub fn verify_inverse(n_max: u32) -> Result<VerificationReport> {
    if n_max > INVERSE_MAX_N {
        return Err(Error::Infeasible(format!(
            "inverse sums are checked up to n = {INVERSE_MAX_N}, got {n_max}"
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("inverse");
    for n in 0..=n_max {
        let mut cell = CellReport::new(format!("n={n}"));
        let mut failure = None;
        for l in 0..=n {
            cell.cases += 2;
            let sums = [
                ("sum_k B(n,k) b(k,l)", inverse_sum_first(n, l)),
                ("sum_k b(n,k) B(k,l)", inverse_sum_second(n, l)),
            ];
            for (check, value) in sums {
                if value != delta(n, l) && failure.is_none() {
                    failure = Some(Counterexample {
                        check: check.into(),
                        detail: format!("n={n} l={l}: got {value}"),
                        rerun: format!("bessel verify inverse --n-max {n}"),
                    });
                }
            }
        }
        cell.passed = failure.is_none();
        report.push_cell(cell, failure);
    }
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Report form of [`check_log_concavity`].
pub fn verify_log_concavity(n_max: u32) -> Result<VerificationReport> {
    if n_max > LOG_CONCAVITY_MAX_N {
        return Err(Error::Infeasible(format!(
            "log-concavity is checked up to n = {LOG_CONCAVITY_MAX_N}, got {n_max}"
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("logconcave");
    let mut cell = CellReport::new(format!("n<={n_max}"));
    let failure = match check_log_concavity(n_max) {
        Ok(count) => {
            cell.cases = count;
            None
        }
        Err(f) => {
            cell.passed = false;
            Some(Counterexample {
                check: format!("{} log-concave", f.sequence),
                detail: format!("n={} k={}", f.n, f.k),
                rerun: format!("bessel verify logconcave --n-max {}", f.n),
            })
        }
    };
    report.push_cell(cell, failure);
    report.wall_time = started.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Bessel1,
    Bessel1Signless,
    Bessel2,
    Matching,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Bessel1,
        Family::Bessel1Signless,
        Family::Bessel2,
        Family::Matching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Bessel1 => "bessel1",
            Family::Bessel1Signless => "bessel1-signless",
            Family::Bessel2 => "bessel2",
            Family::Matching => "matching",
        }
    }

    pub fn value(self, n: u32, k: u32) -> ExactInt {
        match self {
            Family::Bessel1 => bessel_first(n, k),
            Family::Bessel1Signless => bessel_first_signless(n, k),
            Family::Bessel2 => bessel_second(n, k),
            Family::Matching => matching_number(n, k),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bessel1" => Ok(Family::Bessel1),
            "bessel1-signless" | "bessel1_signless" => Ok(Family::Bessel1Signless),
            "bessel2" => Ok(Family::Bessel2),
            "matching" => Ok(Family::Matching),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// Row `n` of a number triangle; `entries[k]` holds the value at `(n, k)` for
/// every `k` in `0..=n`, zeros included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleRow {
    pub n: u32,
    pub entries: Vec<ExactInt>,
}

impl TriangleRow {
    pub fn iter(&self) -> impl Iterator<Item = (u32, &ExactInt)> {
        self.entries.iter().enumerate().map(|(k, v)| (k as u32, v))
    }
}

pub fn triangle(family: Family, n_max: u32) -> Vec<TriangleRow> {
    (0..=n_max)
        .map(|n| TriangleRow {
            n,
            entries: (0..=n).map(|k| family.value(n, k)).collect(),
        })
        .collect()
}

/// First index `k` with `seq[k-1] * seq[k+1] > seq[k]^2`, if any.
pub fn log_concavity_violation(seq: &[ExactInt]) -> Option<usize> {
    (1..seq.len().saturating_sub(1)).find(|&k| &seq[k - 1] * &seq[k + 1] > &seq[k] * &seq[k])
}

/// One failed log-concavity inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogConcavityFailure {
    pub sequence: &'static str,
    pub n: u32,
    pub k: u32,
}

/// Checks, for every `n ≤ n_max`, log-concavity of `B(n,·)`, `a(n,·)`,
/// `m(n,·)` and of `m(·,k)` in its first coordinate. Returns the number of
/// inequalities checked or the first failure.
pub fn check_log_concavity(n_max: u32) -> std::result::Result<u64, LogConcavityFailure> {
    let mut checked = 0u64;
    let fail = |sequence, n, k| LogConcavityFailure { sequence, n, k };
    for n in 0..=n_max {
        // k runs one past n so the inequality at k = n sees the trailing zero.
        let rows: [(&'static str, Vec<ExactInt>); 3] = [
            ("B(n,k)", (0..=n + 1).map(|k| bessel_second(n, k)).collect()),
            (
                "a(n,k)",
                (0..=n + 1).map(|k| bessel_first_signless(n, k)).collect(),
            ),
            (
                "m(n,k)",
                (0..=n + 1).map(|k| matching_number(n, k)).collect(),
            ),
        ];
        for (name, seq) in rows {
            if let Some(k) = log_concavity_violation(&seq) {
                return Err(fail(name, n, k as u32));
            }
            checked += seq.len() as u64 - 2;
        }
        if n >= 1 {
            for k in 0..=n {
                let lhs = matching_number(n - 1, k) * matching_number(n + 1, k);
                let mid = matching_number(n, k);
                if lhs > &mid * &mid {
                    return Err(fail("m(.,k)", n, k));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
