//! Exact polynomials and series behind the inverse relations.
//!
//! [`bessel_polynomial`] gives `y_n(x)`; [`falling_factorial`] gives `[x]_k`;
//! [`f_eval`] evaluates `f_n(x) = n! [t^n] (1 + t + t^2/2)^x` at a rational
//! point. The two expansions `f_n = Σ B(n,k) [x]_k` and `[x]_n = Σ b(n,k) f_k`
//! are checked by [`lemma_checks`] at more points than the degree, which is
//! enough for polynomial identities.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_numbers::{
    bessel_first, bessel_first_signless, bessel_second, binomial, factorial, ExactInt,
};
use crate::report::{CellReport, Counterexample, VerificationReport};

/// Exact rational, always normalized with a positive denominator.
pub type RationalScalar = BigRational;

pub fn rational(num: i64, den: i64) -> RationalScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense integer polynomial; `coeffs[i]` multiplies `x^i`. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<ExactInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<ExactInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial::default()
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::from_i64(&[1])
    }

    /// `x + c`.
    pub fn linear(c: i64) -> IntPolynomial {
        IntPolynomial::from_i64(&[c, 1])
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> ExactInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &ExactInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &RationalScalar) -> RationalScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(RationalScalar::zero(), |acc, c| {
                acc * x + RationalScalar::from_integer(c.clone())
            })
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `y_n(x) = Σ_k (n+k)! / (2^k k! (n-k)!) x^k`.
pub fn bessel_polynomial(n: u32) -> IntPolynomial {
    IntPolynomial::new(
        (0..=n)
            .map(|k| {
                factorial(n + k) / ((BigInt::one() << k as usize) * factorial(k) * factorial(n - k))
            })
            .collect(),
    )
}

/// `x^2 y_n'' + (2x + 2) y_n' - n(n+1) y_n`, which vanishes identically.
pub fn ode_residual(n: u32) -> IntPolynomial {
    let y = bessel_polynomial(n);
    let dy = y.derivative();
    let ddy = dy.derivative();
    let x2 = IntPolynomial::from_i64(&[0, 0, 1]);
    let two_x_plus_two = IntPolynomial::from_i64(&[2, 2]);
    let lhs = &(&x2 * &ddy) + &(&two_x_plus_two * &dy);
    &lhs - &y.scale(&BigInt::from(n as u64 * (n as u64 + 1)))
}

/// `[x]_k = x (x-1) ... (x-k+1)`.
pub fn falling_factorial(k: u32) -> IntPolynomial {
    (0..k as i64).fold(IntPolynomial::one(), |acc, i| {
        &acc * &IntPolynomial::linear(-i)
    })
}

/// Generalized binomial coefficient `binom(x, j)` for rational `x`.
pub fn binomial_rational(x: &RationalScalar, j: u32) -> RationalScalar {
    (0..j).fold(RationalScalar::one(), |acc, i| {
        acc * (x - RationalScalar::from_integer(BigInt::from(i)))
            / RationalScalar::from_integer(BigInt::from(i + 1))
    })
}

/// Product of two power series truncated after `t^len-1`.
fn series_mul(a: &[RationalScalar], b: &[RationalScalar], len: usize) -> Vec<RationalScalar> {
    let mut out = vec![RationalScalar::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `f_n(x) = n! [t^n] Σ_j binom(x, j) (t + t^2/2)^j`, exactly. Terms with
/// `j > n` start at `t^j` and drop out.
pub fn f_eval(n: u32, x: &RationalScalar) -> RationalScalar {
    let len = n as usize + 1;
    let mut base = vec![RationalScalar::zero(); len];
    if len > 1 {
        base[1] = RationalScalar::one();
    }
    if len > 2 {
        base[2] = rational(1, 2);
    }
    let mut power = vec![RationalScalar::zero(); len];
    power[0] = RationalScalar::one();
    let mut coeff = RationalScalar::zero();
    for j in 0..=n {
        coeff += binomial_rational(x, j) * &power[n as usize];
        power = series_mul(&power, &base, len);
    }
    coeff * RationalScalar::from_integer(factorial(n))
}

/// The thirteen default evaluation points: `0..=9` and `-3, 1/2, 7/3`.
pub fn default_eval_points() -> Vec<RationalScalar> {
    let mut pts: Vec<RationalScalar> = (0..=9).map(|i| rational(i, 1)).collect();
    pts.extend([rational(-3, 1), rational(1, 2), rational(7, 3)]);
    pts
}

/// Checks `f_n(x) = Σ_k B(n,k) [x]_k` and `[x]_n = Σ_k b(n,k) f_k(x)` for all
/// `n ≤ n_max` at every point.
pub fn lemma_checks(n_max: u32, points: &[RationalScalar]) -> VerificationReport {
    let started = Instant::now();
    let mut report = VerificationReport::new("lemmas");
    let falling: Vec<IntPolynomial> = (0..=n_max).map(falling_factorial).collect();
    for x in points {
        let mut cell = CellReport::new(format!("x={x}"));
        let f: Vec<RationalScalar> = (0..=n_max).map(|n| f_eval(n, x)).collect();
        let ff: Vec<RationalScalar> = falling.iter().map(|p| p.eval(x)).collect();
        let mut failure = None;
        for n in 0..=n_max {
            let expand_b: RationalScalar = (0..=n)
                .map(|k| RationalScalar::from_integer(bessel_second(n, k)) * &ff[k as usize])
                .sum();
            let expand_f: RationalScalar = (0..=n)
                .map(|k| RationalScalar::from_integer(bessel_first(n, k)) * &f[k as usize])
                .sum();
            cell.cases += 2;
            let mismatch = if expand_b != f[n as usize] {
                Some(("f_n = sum B(n,k) [x]_k", &f[n as usize], expand_b))
            } else if expand_f != ff[n as usize] {
                Some(("[x]_n = sum b(n,k) f_k", &ff[n as usize], expand_f))
            } else {
                None
            };
            if let Some((check, lhs, rhs)) = mismatch {
                failure.get_or_insert(Counterexample {
                    check: check.into(),
                    detail: format!("n={n} x={x}: {lhs} != {rhs}"),
                    rerun: format!("bessel verify lemmas --n-max {n}"),
                });
            }
        }
        cell.passed = failure.is_none();
        report.push_cell(cell, failure);
    }
    report.wall_time = started.elapsed();
    report
}

/// `b_n = Σ_k binom(k, n-k) a_k`.
pub fn wilf_forward(a: &[ExactInt]) -> Vec<ExactInt> {
    (0..a.len() as u32)
        .map(|n| (0..=n).map(|k| binomial(k, n - k) * &a[k as usize]).sum())
        .collect()
}

/// Recovers `a_n` for `n ≥ 1` from `n a_n = Σ_k binom(2n-k-1, n-k) (-1)^(n-k) k b_k`.
/// Index 0 is `None`: `a_0` drops out of that relation.
pub fn wilf_inverse(b: &[ExactInt]) -> Result<Vec<Option<ExactInt>>> {
    let mut out = Vec::with_capacity(b.len());
    for n in 0..b.len() as u32 {
        if n == 0 {
            out.push(None);
            continue;
        }
        let n_a: BigInt = (1..=n)
            .map(|k| {
                let term = binomial(2 * n - k - 1, n - k) * BigInt::from(k) * &b[k as usize];
                if (n - k) % 2 == 1 {
                    -term
                } else {
                    term
                }
            })
            .sum();
        let (q, r) = n_a.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::Integrity(format!(
                "n a_n = {n_a} is not divisible by n = {n}"
            )));
        }
        out.push(Some(q));
    }
    Ok(out)
}

/// Round-trips `trials` random integer sequences of length `1..=max_len`
/// through [`wilf_forward`] and [`wilf_inverse`].
pub fn wilf_round_trips(seed: u64, trials: u32, max_len: usize) -> VerificationReport {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::new("wilf");
    let mut cell = CellReport::new(format!("seed={seed}"));
    let mut failure = None;
    for trial in 0..trials {
        let len = rng.gen_range(1..=max_len);
        let a: Vec<BigInt> = (0..len)
            .map(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)))
            .collect();
        cell.cases += 1;
        let ok = match wilf_inverse(&wilf_forward(&a)) {
            Ok(back) => back
                .iter()
                .zip(&a)
                .skip(1)
                .all(|(x, y)| x.as_ref() == Some(y)),
            Err(_) => false,
        };
        if !ok && failure.is_none() {
            failure = Some(Counterexample {
                check: "wilf-round-trip".into(),
                detail: format!("trial {trial}: a = {a:?}"),
                rerun: format!("bessel verify lemmas --seed {seed}"),
            });
        }
    }
    cell.passed = failure.is_none();
    report.push_cell(cell, failure);
    report.wall_time = started.elapsed();
    report
}

/// Coefficient of `x^(n-k)` in `y_(n-1)` against `a(n,k)` for `1 ≤ k ≤ n ≤ n_max`.
pub fn coefficient_check(n_max: u32) -> Option<(u32, u32)> {
    (1..=n_max).find_map(|n| {
        let y = bessel_polynomial(n - 1);
        (1..=n)
            .find(|&k| y.coeff((n - k) as usize) != bessel_first_signless(n, k))
            .map(|k| (n, k))
    })
}

/// Largest `n_max` accepted by [`verify_lemmas`].
pub const LEMMAS_MAX_N: u32 = 40;

/// The whole polynomial layer: ODE residuals and coefficients of `y_n` up to
/// `n_max + 3` and `n_max + 8`, both expansion lemmas at the default points,
/// and `trials` seeded Wilf round trips.
pub fn verify_lemmas(n_max: u32, seed: u64, trials: u32) -> Result<VerificationReport> {
    if n_max > LEMMAS_MAX_N {
        return Err(Error::Infeasible(format!(
            "polynomial checks run up to n = {LEMMAS_MAX_N}, got {n_max}"
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("lemmas");

    let ode_max = n_max + 3;
    let mut cell = CellReport::new(format!("ode n<={ode_max}"));
    cell.cases = ode_max as u64 + 1;
    let failure = (0..=ode_max)
        .find(|&n| !ode_residual(n).is_zero())
        .map(|n| Counterexample {
            check: "ode".into(),
            detail: format!("residual of y_{n} is {}", ode_residual(n)),
            rerun: format!("bessel verify lemmas --n-max {n}"),
        });
    cell.passed = failure.is_none();
    report.push_cell(cell, failure);

    let coeff_max = n_max + 8;
    let mut cell = CellReport::new(format!("coefficients n<={coeff_max}"));
    cell.cases = (coeff_max as u64) * (coeff_max as u64 + 1) / 2;
    let failure = coefficient_check(coeff_max).map(|(n, k)| Counterexample {
        check: "a(n,k) = [x^(n-k)] y_(n-1)".into(),
        detail: format!("n={n} k={k}"),
        rerun: format!("bessel verify lemmas --n-max {n}"),
    });
    cell.passed = failure.is_none();
    report.push_cell(cell, failure);

    let mut lemmas = lemma_checks(n_max, &default_eval_points());
    lemmas.suite = "expansion".into();
    report.absorb(lemmas);
    report.absorb(wilf_round_trips(seed, trials, 10));
    report.wall_time = started.elapsed();
    Ok(report)
}
