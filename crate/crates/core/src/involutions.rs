//! Sign-reversing involutions on pairs of vertex-disjoint matchings.
//!
//! * `U(n,l)` collects pairs `(alpha, beta)` in `K_(2n-l-1)` where `alpha` only
//!   touches `[n]`, `|alpha| = n-k`, `|beta| = k-l` for some `l ≤ k ≤ n`.
//!   Its signed size is `Σ_k B(n,k) b(k,l)`; [`i1_apply`] toggles the smallest
//!   colex edge of `alpha ∪ beta` between the two sides.
//! * `V(n,l)` is the union over `k` of the levels `V_k`, pairs in `K_(2n-k)`
//!   with `|alpha| = n-k`, vertex `2n-k` free in `alpha`, `|beta| = k-l`. Its
//!   signed size is `Σ_k b(n,k) B(k,l)`; [`i2_apply`] toggles the largest colex
//!   edge and moves between adjacent levels.
//!
//! In both cases the only fixed point is `(∅, ∅)`, present iff `n = l`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_numbers::{delta, inverse_sum_first, inverse_sum_second, matching_number};
use crate::matchings::{disjoint_union, enumerate_matchings_on, Edge, Matching};
use crate::report::{CellReport, Counterexample, VerificationReport};

/// Largest `n` accepted by [`verify_involution`]. `|U(8,l)|` stays below 10^6.
pub const INVOLUTION_MAX_N: u32 = 8;

fn u_ambient(n: u32, l: u32) -> u32 {
    (2 * n - l).saturating_sub(1)
}

fn sign_of(len: usize) -> i32 {
    if len.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An element of `U(n,l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPair {
    n: u32,
    l: u32,
    alpha: Matching,
    beta: Matching,
}

impl UPair {
    pub fn new(n: u32, l: u32, alpha: Matching, beta: Matching) -> Result<UPair> {
        if l > n {
            return Err(Error::Precondition(format!("l = {l} exceeds n = {n}")));
        }
        let ambient = u_ambient(n, l);
        if alpha.ambient() != ambient || beta.ambient() != ambient {
            return Err(Error::Precondition(format!(
                "alpha and beta must live in K_{ambient}"
            )));
        }
        if alpha.largest().is_some_and(|e| e.b() > n) {
            return Err(Error::Precondition(format!(
                "alpha saturates a vertex outside [{n}]"
            )));
        }
        disjoint_union(&alpha, &beta)?;
        if alpha.len() + beta.len() != (n - l) as usize {
            return Err(Error::Precondition(format!(
                "|alpha| + |beta| must equal n - l = {}",
                n - l
            )));
        }
        Ok(UPair { n, l, alpha, beta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// `k = n - |alpha|`.
    pub fn k(&self) -> u32 {
        self.n - self.alpha.len() as u32
    }

    pub fn ambient(&self) -> u32 {
        u_ambient(self.n, self.l)
    }

    pub fn alpha(&self) -> &Matching {
        &self.alpha
    }

    pub fn beta(&self) -> &Matching {
        &self.beta
    }

    /// `(-1)^|beta|`.
    pub fn sign(&self) -> i32 {
        sign_of(self.beta.len())
    }
}

/// An element of the level `V_k` of `V(n,l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPair {
    n: u32,
    l: u32,
    k: u32,
    alpha: Matching,
    beta: Matching,
}

impl VPair {
    pub fn new(n: u32, l: u32, k: u32, alpha: Matching, beta: Matching) -> Result<VPair> {
        if !(l <= k && k <= n) {
            return Err(Error::Precondition(format!(
                "need l <= k <= n, got l={l} k={k} n={n}"
            )));
        }
        let ambient = 2 * n - k;
        if alpha.ambient() != ambient || beta.ambient() != ambient {
            return Err(Error::Precondition(format!(
                "alpha and beta must live in K_{ambient}"
            )));
        }
        if alpha.len() != (n - k) as usize {
            return Err(Error::Precondition(format!(
                "|alpha| = {} but n - k = {}",
                alpha.len(),
                n - k
            )));
        }
        if beta.len() != (k - l) as usize {
            return Err(Error::Precondition(format!(
                "|beta| = {} but k - l = {}",
                beta.len(),
                k - l
            )));
        }
        if ambient > 0 && alpha.saturates(ambient) {
            return Err(Error::Precondition(format!(
                "vertex {ambient} is saturated under alpha"
            )));
        }
        disjoint_union(&alpha, &beta)?;
        Ok(VPair {
            n,
            l,
            k,
            alpha,
            beta,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ambient(&self) -> u32 {
        2 * self.n - self.k
    }

    pub fn alpha(&self) -> &Matching {
        &self.alpha
    }

    pub fn beta(&self) -> &Matching {
        &self.beta
    }

    /// `(-1)^|alpha|`.
    pub fn sign(&self) -> i32 {
        sign_of(self.alpha.len())
    }
}

/// Which side the toggled edge left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    AlphaToBeta,
    BetaToAlpha,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::AlphaToBeta => "alpha -> beta",
            Move::BetaToAlpha => "beta -> alpha",
        })
    }
}

/// One application of an involution: the toggled edge and the image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionStep<T> {
    pub edge: Edge,
    pub direction: Move,
    pub output: T,
}

/// All of `U(n,l)`: `k` ascending, then `alpha`, then `beta` in canonical order.
pub fn enumerate_u(n: u32, l: u32) -> Vec<UPair> {
    if l > n {
        return Vec::new();
    }
    let ambient = u_ambient(n, l);
    let alpha_vertices: Vec<u32> = (1..=n.min(ambient)).collect();
    let mut out = Vec::new();
    for k in l..=n {
        for alpha in enumerate_matchings_on(&alpha_vertices, ambient, n - k) {
            let free = alpha.unsaturated_set();
            for beta in enumerate_matchings_on(&free, ambient, k - l) {
                out.push(UPair {
                    n,
                    l,
                    alpha: alpha.clone(),
                    beta,
                });
            }
        }
    }
    out
}

/// The level `V_k` of `V(n,l)` in canonical order.
pub fn enumerate_v_level(n: u32, l: u32, k: u32) -> Vec<VPair> {
    if !(l <= k && k <= n) {
        return Vec::new();
    }
    let ambient = 2 * n - k;
    let alpha_vertices: Vec<u32> = (1..ambient).collect();
    let mut out = Vec::new();
    for alpha in enumerate_matchings_on(&alpha_vertices, ambient, n - k) {
        let free = alpha.unsaturated_set();
        for beta in enumerate_matchings_on(&free, ambient, k - l) {
            out.push(VPair {
                n,
                l,
                k,
                alpha: alpha.clone(),
                beta,
            });
        }
    }
    out
}

/// All of `V(n,l)`, levels `k` ascending.
pub fn enumerate_v(n: u32, l: u32) -> Vec<VPair> {
    if l > n {
        return Vec::new();
    }
    (l..=n).flat_map(|k| enumerate_v_level(n, l, k)).collect()
}

/// Toggles the smallest colex edge of `alpha ∪ beta`.
pub fn i1_step(u: &UPair) -> Result<InvolutionStep<UPair>> {
    let edge = match (u.alpha.smallest(), u.beta.smallest()) {
        (None, None) => return Err(Error::FixedPoint),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (Some(a), Some(b)) => a.min(b),
    };
    let (alpha, beta, direction) = if u.alpha.contains(edge) {
        (
            u.alpha.removed(edge)?,
            u.beta.inserted(edge)?,
            Move::AlphaToBeta,
        )
    } else {
        if edge.b() > u.n {
            return Err(Error::Invariant(format!(
                "smallest edge {edge} of alpha ∪ beta has endpoint above n = {}",
                u.n
            )));
        }
        (
            u.alpha.inserted(edge)?,
            u.beta.removed(edge)?,
            Move::BetaToAlpha,
        )
    };
    Ok(InvolutionStep {
        edge,
        direction,
        output: UPair {
            n: u.n,
            l: u.l,
            alpha,
            beta,
        },
    })
}

pub fn i1_apply(u: &UPair) -> Result<UPair> {
    i1_step(u).map(|s| s.output)
}

/// Toggles the largest colex edge of `alpha ∪ beta`, moving to `V_(k+1)` when
/// it leaves `alpha` and to `V_(k-1)` when it leaves `beta`.
pub fn i2_step(v: &VPair) -> Result<InvolutionStep<VPair>> {
    let edge = match (v.alpha.largest(), v.beta.largest()) {
        (None, None) => return Err(Error::FixedPoint),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (Some(a), Some(b)) => a.max(b),
    };
    let invariant = |e: Error| Error::Invariant(format!("I2 image of {edge}: {e}"));
    let (k, direction) = if v.alpha.contains(edge) {
        (v.k + 1, Move::AlphaToBeta)
    } else {
        (v.k - 1, Move::BetaToAlpha)
    };
    let ambient = 2 * v.n - k;
    let (alpha, beta) = match direction {
        Move::AlphaToBeta => (v.alpha.removed(edge)?, v.beta.inserted(edge)?),
        Move::BetaToAlpha => (v.alpha.inserted(edge)?, v.beta.removed(edge)?),
    };
    let alpha = alpha.with_ambient(ambient).map_err(invariant)?;
    let beta = beta.with_ambient(ambient).map_err(invariant)?;
    let output = VPair::new(v.n, v.l, k, alpha, beta).map_err(invariant)?;
    Ok(InvolutionStep {
        edge,
        direction,
        output,
    })
}

pub fn i2_apply(v: &VPair) -> Result<VPair> {
    i2_step(v).map(|s| s.output)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvolutionFamily {
    I1,
    I2,
}

impl fmt::Display for InvolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionFamily::I1 => "i1",
            InvolutionFamily::I2 => "i2",
        })
    }
}

/// Common view of `U` and `V` elements for the exhaustive checker.
trait SignedPair: Clone + Eq + Hash + Send + Sync + fmt::Debug {
    fn sign(&self) -> i32;
    fn level(&self) -> u32;
    fn is_fixed_candidate(&self) -> bool;
    fn apply(&self) -> Result<Self>;
    fn rerun(&self) -> String;
}

impl SignedPair for UPair {
    fn sign(&self) -> i32 {
        UPair::sign(self)
    }
    fn level(&self) -> u32 {
        self.k()
    }
    fn is_fixed_candidate(&self) -> bool {
        self.alpha.is_empty() && self.beta.is_empty()
    }
    fn apply(&self) -> Result<Self> {
        i1_apply(self)
    }
    fn rerun(&self) -> String {
        format!(
            "bessel trace i1 --n {} --l {} --alpha '{}' --beta '{}'",
            self.n, self.l, self.alpha, self.beta
        )
    }
}

impl SignedPair for VPair {
    fn sign(&self) -> i32 {
        VPair::sign(self)
    }
    fn level(&self) -> u32 {
        self.k
    }
    fn is_fixed_candidate(&self) -> bool {
        self.alpha.is_empty() && self.beta.is_empty()
    }
    fn apply(&self) -> Result<Self> {
        i2_apply(self)
    }
    fn rerun(&self) -> String {
        format!(
            "bessel trace i2 --n {} --l {} --k {} --alpha '{}' --beta '{}'",
            self.n, self.l, self.k, self.alpha, self.beta
        )
    }
}

enum Outcome {
    Fixed,
    Moved { from: u32, to: u32 },
}

fn check_element<T: SignedPair>(
    x: &T,
    domain: &HashSet<&T>,
) -> std::result::Result<Outcome, Counterexample> {
    let fail = |check: &str, detail: String| Counterexample {
        check: check.to_string(),
        detail,
        rerun: x.rerun(),
    };
    if x.is_fixed_candidate() {
        return match x.apply() {
            Err(Error::FixedPoint) if x.sign() == 1 => Ok(Outcome::Fixed),
            Err(Error::FixedPoint) => {
                Err(fail("fixed-point-sign", "fixed point with sign -1".into()))
            }
            other => Err(fail(
                "fixed-point",
                format!("(∅,∅) was not fixed: {other:?}"),
            )),
        };
    }
    let image = x.apply().map_err(|e| fail("well-defined", e.to_string()))?;
    if !domain.contains(&image) {
        return Err(fail(
            "well-defined",
            format!("image {} is outside the domain", image.rerun()),
        ));
    }
    if image.sign() != -x.sign() {
        return Err(fail("sign-reversing", "image has the same sign".into()));
    }
    let back = image
        .apply()
        .map_err(|e| fail("self-inverse", e.to_string()))?;
    if &back != x {
        return Err(fail(
            "self-inverse",
            format!("second application gave {}", back.rerun()),
        ));
    }
    Ok(Outcome::Moved {
        from: x.level(),
        to: image.level(),
    })
}

fn verify_pairs<T: SignedPair>(
    elements: &[T],
    n: u32,
    l: u32,
    closed_form: BigInt,
    cell: &mut CellReport,
) -> Option<Counterexample> {
    let domain: HashSet<&T> = elements.iter().collect();
    let outcomes: Vec<std::result::Result<Outcome, Counterexample>> = elements
        .par_iter()
        .map(|x| check_element(x, &domain))
        .collect();

    cell.cases = elements.len() as u64;
    let mut first_failure = None;
    let mut fixed = 0u64;
    let mut moves: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for outcome in outcomes {
        match outcome {
            Ok(Outcome::Fixed) => fixed += 1,
            Ok(Outcome::Moved { from, to }) => *moves.entry((from, to)).or_default() += 1,
            Err(c) => {
                if first_failure.is_none() {
                    first_failure = Some(c);
                }
            }
        }
    }
    let signed_sum: i64 = elements.iter().map(|x| x.sign() as i64).sum();
    let signed_sum = BigInt::from(signed_sum);
    let rerun = elements
        .first()
        .map(|x| x.rerun())
        .unwrap_or_else(|| "bessel verify".into());
    let mut fail = |check: &str, detail: String| {
        if first_failure.is_none() {
            first_failure = Some(Counterexample {
                check: check.into(),
                detail,
                rerun: rerun.clone(),
            });
        }
    };

    let expected_fixed = u64::from(n == l);
    if fixed != expected_fixed {
        fail(
            "fixed-points",
            format!("found {fixed}, expected {expected_fixed}"),
        );
    }
    if signed_sum != delta(n, l) {
        fail(
            "signed-sum",
            format!("signed sum {signed_sum} != delta({n},{l})"),
        );
    }
    if signed_sum != closed_form {
        fail(
            "closed-form",
            format!("signed sum {signed_sum} != closed form {closed_form}"),
        );
    }
    // Self-inverse images pair each move k -> k' with a move k' -> k.
    for (&(from, to), &count) in &moves {
        let reverse = moves.get(&(to, from)).copied().unwrap_or(0);
        if reverse != count {
            fail(
                "level-bijection",
                format!("{count} moves {from}->{to} but {reverse} moves {to}->{from}"),
            );
        }
    }

    cell.passed = first_failure.is_none();
    cell.fact("fixed_points", fixed);
    cell.fact("signed_sum", &signed_sum);
    cell.fact("closed_form", &closed_form);
    cell.fact(
        "level_moves",
        moves
            .iter()
            .map(|((a, b), c)| format!("{a}->{b}:{c}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    first_failure
}

/// Exhaustively checks one involution on one `(n, l)` cell: well-definedness,
/// self-inverse, sign reversal, fixed points and the signed sum.
pub fn verify_involution(family: InvolutionFamily, n: u32, l: u32) -> Result<VerificationReport> {
    if n > INVOLUTION_MAX_N {
        return Err(Error::Infeasible(format!(
            "exhaustive involution check supports n <= {INVOLUTION_MAX_N}, got {n}"
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new(format!("involution-{family}"));
    let mut cell = CellReport::new(format!("n={n} l={l}"));
    let failure = match family {
        InvolutionFamily::I1 => {
            verify_pairs(&enumerate_u(n, l), n, l, inverse_sum_first(n, l), &mut cell)
        }
        InvolutionFamily::I2 => {
            let elements = enumerate_v(n, l);
            let failure = verify_pairs(&elements, n, l, inverse_sum_second(n, l), &mut cell);
            // |V_k| against the closed form m(2n-k-1, n-k) m(k, k-l).
            let mut failure = failure;
            if l <= n {
                for k in l..=n {
                    let count = elements.iter().filter(|v| v.k == k).count();
                    let expected = if n == k {
                        matching_number(k, k - l)
                    } else {
                        matching_number(2 * n - k - 1, n - k) * matching_number(k, k - l)
                    };
                    if BigInt::from(count) != expected && failure.is_none() {
                        cell.passed = false;
                        failure = Some(Counterexample {
                            check: "level-size".into(),
                            detail: format!("|V_{k}| = {count}, closed form {expected}"),
                            rerun: format!("bessel verify involution-i2 --n {n} --l {l}"),
                        });
                    }
                }
            }
            failure
        }
    };
    report.push_cell(cell, failure);
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Runs [`verify_involution`] for every `l ≤ n ≤ n_max`.
pub fn verify_involution_range(family: InvolutionFamily, n_max: u32) -> Result<VerificationReport> {
    if n_max > INVOLUTION_MAX_N {
        return Err(Error::Infeasible(format!(
            "exhaustive involution check supports n <= {INVOLUTION_MAX_N}, got {n_max}"
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new(format!("involution-{family}"));
    for n in 0..=n_max {
        for l in 0..=n {
            let sub = verify_involution(family, n, l)?;
            for cell in sub.cells {
                report.push_cell(cell, None);
            }
            if report.counterexample.is_none() {
                report.counterexample = sub.counterexample;
            }
            report.passed &= sub.passed;
        }
    }
    report.wall_time = started.elapsed();
    Ok(report)
}
