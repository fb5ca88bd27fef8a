//! Injections witnessing log-concavity of matching numbers.
//!
//! Two matchings coloured blue and red form a multigraph of maximum degree two
//! whose components are alternating cycles and paths. A shared edge is a
//! two-cycle. When blue has two more edges than red there are exactly two more
//! blue odd paths than red ones; [`phi`] picks one blue path to recolour, which
//! gives [`ik_apply`]. [`in_apply`] handles pairs whose blue matching covers the
//! top vertex, and [`is_apply`] dispatches between the two.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_numbers::{bessel_first_signless, matching_number};
use crate::matchings::{enumerate_matchings, Edge, Matching};
use crate::report::{CellReport, Counterexample, VerificationReport};

/// Largest ambient size accepted by the exhaustive `I_K` checker.
pub const IK_MAX_AMBIENT: u32 = 10;
/// Largest `2n - k` accepted by the exhaustive `I_S` checker.
pub const IS_MAX_TOP: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    fn other(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Blue => "blue",
            Color::Red => "red",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Cycle,
    EvenPath,
    BluePath,
    RedPath,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Cycle => "cycle",
            ComponentKind::EvenPath => "even path",
            ComponentKind::BluePath => "blue path",
            ComponentKind::RedPath => "red path",
        })
    }
}

/// A connected component of the blue/red union.
///
/// `vertices` is the walk: a path starts at its smaller endpoint, a cycle at
/// its smallest vertex and leaves it along the blue edge. `edges[i]` joins
/// `vertices[i]` and `vertices[i + 1]` (cyclically for cycles).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    pub vertices: Vec<u32>,
    pub edges: Vec<(Edge, Color)>,
    pub max_vertex: u32,
}

impl Component {
    pub fn count(&self, color: Color) -> usize {
        self.edges.iter().filter(|(_, c)| *c == color).count()
    }

    pub fn is_odd_path(&self) -> bool {
        matches!(self.kind, ComponentKind::BluePath | ComponentKind::RedPath)
    }

    /// Walk notation: `-` for blue edges, `..` for red ones.
    pub fn walk(&self) -> String {
        let mut out = self.vertices[0].to_string();
        let steps = if self.kind == ComponentKind::Cycle {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        };
        for i in 0..steps {
            let next = self.vertices[(i + 1) % self.vertices.len()];
            out.push_str(match self.edges[i].1 {
                Color::Blue => "-",
                Color::Red => "..",
            });
            out.push_str(&next.to_string());
        }
        out
    }
}

/// The blue/red union of two matchings and its components, ordered by their
/// smallest vertex. Isolated vertices are not components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredUnion {
    pub ambient: u32,
    pub blue: Matching,
    pub red: Matching,
    pub components: Vec<Component>,
}

impl ColoredUnion {
    pub fn count_kind(&self, kind: ComponentKind) -> usize {
        self.components.iter().filter(|c| c.kind == kind).count()
    }
}

fn partners(m: &Matching, ambient: u32) -> Result<Vec<u32>> {
    if m.largest().is_some_and(|e| e.b() > ambient) {
        return Err(Error::Precondition(format!(
            "matching {m} does not fit in [{ambient}]"
        )));
    }
    let mut table = vec![0u32; ambient as usize + 1];
    for e in m.edges() {
        table[e.a() as usize] = e.b();
        table[e.b() as usize] = e.a();
    }
    Ok(table)
}

pub fn decompose(blue: &Matching, red: &Matching, ambient: u32) -> Result<ColoredUnion> {
    let bp = partners(blue, ambient)?;
    let rp = partners(red, ambient)?;
    let partner = |v: u32, c: Color| -> u32 {
        match c {
            Color::Blue => bp[v as usize],
            Color::Red => rp[v as usize],
        }
    };
    let edge = |x: u32, y: u32| Edge::new(x, y).expect("partners are distinct vertices");
    let mut visited = vec![false; ambient as usize + 1];
    let mut components = Vec::new();

    // Paths first: scanning upward meets each path at its smaller endpoint.
    for v in 1..=ambient {
        let (b, r) = (bp[v as usize], rp[v as usize]);
        if visited[v as usize] || (b != 0) == (r != 0) {
            continue;
        }
        let mut color = if b != 0 { Color::Blue } else { Color::Red };
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        let mut cur = v;
        visited[v as usize] = true;
        loop {
            let next = partner(cur, color);
            if next == 0 {
                break;
            }
            edges.push((edge(cur, next), color));
            vertices.push(next);
            visited[next as usize] = true;
            cur = next;
            color = color.other();
        }
        let kind = if edges.len() % 2 == 0 {
            ComponentKind::EvenPath
        } else if edges[0].1 == Color::Blue {
            ComponentKind::BluePath
        } else {
            ComponentKind::RedPath
        };
        let max_vertex = vertices.iter().copied().max().unwrap_or(v);
        components.push(Component {
            kind,
            vertices,
            edges,
            max_vertex,
        });
    }
    // Whatever is left with both colours present lies on a cycle.
    for v in 1..=ambient {
        if visited[v as usize] || bp[v as usize] == 0 {
            continue;
        }
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        let mut cur = v;
        let mut color = Color::Blue;
        visited[v as usize] = true;
        loop {
            let next = partner(cur, color);
            edges.push((edge(cur, next), color));
            if next == v {
                break;
            }
            vertices.push(next);
            visited[next as usize] = true;
            cur = next;
            color = color.other();
        }
        let max_vertex = vertices.iter().copied().max().unwrap_or(v);
        components.push(Component {
            kind: ComponentKind::Cycle,
            vertices,
            edges,
            max_vertex,
        });
    }
    components.sort_by_key(|c| c.vertices.iter().copied().min());
    Ok(ColoredUnion {
        ambient,
        blue: blue.clone(),
        red: red.clone(),
        components,
    })
}

/// Odd paths of a union, labelled `1..` by increasing largest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPathSet {
    /// `paths[i]` carries label `i + 1`.
    pub paths: Vec<Component>,
    /// Number of red paths.
    pub r: usize,
}

impl LabeledPathSet {
    pub fn from_union(union: &ColoredUnion) -> LabeledPathSet {
        let mut paths: Vec<Component> = union
            .components
            .iter()
            .filter(|c| c.is_odd_path())
            .cloned()
            .collect();
        paths.sort_by_key(|c| c.max_vertex);
        let r = paths
            .iter()
            .filter(|c| c.kind == ComponentKind::RedPath)
            .count();
        LabeledPathSet { paths, r }
    }

    /// Labels of the red paths, increasing.
    pub fn red_labels(&self) -> Vec<u32> {
        self.paths
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind == ComponentKind::RedPath)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    pub fn by_label(&self, label: u32) -> Option<&Component> {
        self.paths.get((label as usize).checked_sub(1)?)
    }
}

/// Maps an `r`-subset `A` of `[2r+2]` to `A ∪ {a_j + 1}`, where `j` is the
/// largest index in `0..=r` minimizing `a_i - 2i` (with `a_0 = 0`).
pub fn phi(a: &[u32], r: usize) -> Result<Vec<u32>> {
    if a.len() != r {
        return Err(Error::Precondition(format!(
            "phi expects an {r}-subset, got {} elements",
            a.len()
        )));
    }
    let top = 2 * r as u32 + 2;
    if a.windows(2).any(|w| w[0] >= w[1]) || a.iter().any(|&x| x == 0 || x > top) {
        return Err(Error::Precondition(format!(
            "phi expects an increasing subset of [{top}], got {a:?}"
        )));
    }
    let value = |i: usize| -> i64 {
        let ai = if i == 0 { 0 } else { a[i - 1] as i64 };
        ai - 2 * i as i64
    };
    let mut j = 0;
    for i in 1..=r {
        if value(i) <= value(j) {
            j = i;
        }
    }
    let added = if j == 0 { 1 } else { a[j - 1] + 1 };
    if added >= top || a.binary_search(&added).is_ok() {
        return Err(Error::Invariant(format!("phi({a:?}) tried to add {added}")));
    }
    let mut out = a.to_vec();
    let pos = out.binary_search(&added).unwrap_err();
    out.insert(pos, added);
    Ok(out)
}

/// Intermediate data of one `I_K` application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IkTrace {
    pub union: ColoredUnion,
    pub labeled: LabeledPathSet,
    pub s: Vec<u32>,
    pub phi_s: Vec<u32>,
    pub t: u32,
    pub flipped: Component,
    pub beta1: Matching,
    pub beta2: Matching,
}

pub fn ik_step(alpha1: &Matching, alpha2: &Matching, ambient: u32) -> Result<IkTrace> {
    if alpha1.len() != alpha2.len() + 2 {
        return Err(Error::Precondition(format!(
            "|alpha1| = {} must equal |alpha2| + 2 = {}",
            alpha1.len(),
            alpha2.len() + 2
        )));
    }
    let union = decompose(alpha1, alpha2, ambient)?;
    let labeled = LabeledPathSet::from_union(&union);
    let blue_paths = union.count_kind(ComponentKind::BluePath);
    if blue_paths != labeled.r + 2 {
        return Err(Error::Invariant(format!(
            "{blue_paths} blue paths but {} red paths",
            labeled.r
        )));
    }
    let s = labeled.red_labels();
    let phi_s = phi(&s, labeled.r)?;
    let t = phi_s
        .iter()
        .copied()
        .find(|x| s.binary_search(x).is_err())
        .expect("phi adds exactly one element");
    let flipped = labeled.by_label(t).cloned().expect("label in range");
    if flipped.kind != ComponentKind::BluePath {
        return Err(Error::Invariant(format!("label {t} is a {}", flipped.kind)));
    }
    let recolor = |keep: Color| {
        let mut edges: Vec<Edge> = match keep {
            Color::Blue => alpha1.edges(),
            Color::Red => alpha2.edges(),
        }
        .iter()
        .copied()
        .filter(|e| !flipped.edges.contains(&(*e, keep)))
        .collect();
        edges.extend(
            flipped
                .edges
                .iter()
                .filter(|(_, c)| *c != keep)
                .map(|(e, _)| *e),
        );
        Matching::new(ambient, edges)
    };
    let beta1 = recolor(Color::Blue)?;
    let beta2 = recolor(Color::Red)?;
    Ok(IkTrace {
        union,
        labeled,
        s,
        phi_s,
        t,
        flipped,
        beta1,
        beta2,
    })
}

/// Sends a `(j+2, j)` pair of matchings of `K_ambient` to a `(j+1, j+1)` pair.
pub fn ik_apply(
    alpha1: &Matching,
    alpha2: &Matching,
    ambient: u32,
) -> Result<(Matching, Matching)> {
    ik_step(alpha1, alpha2, ambient).map(|t| (t.beta1, t.beta2))
}

/// Intermediate data of one `I_N` application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InTrace {
    /// Vertices of `[2n-k]` unsaturated under `A1`.
    pub x_set: Vec<u32>,
    pub x: u32,
    /// 1-based rank of `x` in `X ∪ {x}`.
    pub rank: usize,
    /// Vertices of `[2n-k-2]` unsaturated under `A2`.
    pub y_set: Vec<u32>,
    pub y: u32,
    pub cut: Edge,
    pub joined: Edge,
    pub b1: Matching,
    pub b2: Matching,
}

fn check_is_domain(a1: &Matching, a2: &Matching, n: u32, k: u32) -> Result<u32> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!(
            "need 1 <= k < n, got n={n} k={k}"
        )));
    }
    let top = 2 * n - k;
    if a1.ambient() != top || a2.ambient() != top - 2 {
        return Err(Error::Precondition(format!(
            "A1 must live in K_{top} and A2 in K_{}",
            top - 2
        )));
    }
    if a1.len() != (n - k + 1) as usize || a2.len() != (n - k - 1) as usize {
        return Err(Error::Precondition(format!(
            "|A1| must be {} and |A2| must be {}",
            n - k + 1,
            n - k - 1
        )));
    }
    Ok(top)
}

pub fn in_step(a1: &Matching, a2: &Matching, n: u32, k: u32) -> Result<InTrace> {
    let top = check_is_domain(a1, a2, n, k)?;
    let x = a1.partner(top).ok_or(Error::WrongCase { vertex: top })?;
    let x_set = a1.unsaturated_set();
    let mut with_x = x_set.clone();
    let pos = with_x.binary_search(&x).unwrap_err();
    with_x.insert(pos, x);
    let rank = pos + 1;
    let y_set = a2.unsaturated_set();
    let y = *y_set
        .get(pos)
        .ok_or_else(|| Error::Invariant(format!("rank {rank} exceeds |Y| = {}", y_set.len())))?;
    let cut = Edge::new(x, top)?;
    let joined = Edge::new(y, top - 1)?;
    let b1 = a1.removed(cut)?.with_ambient(top - 1)?;
    let b2 = a2.with_ambient(top - 1)?.inserted(joined)?;
    Ok(InTrace {
        x_set,
        x,
        rank,
        y_set,
        y,
        cut,
        joined,
        b1,
        b2,
    })
}

/// Cuts the blue edge at `2n-k` and joins `y` to `2n-k-1` in red.
pub fn in_apply(a1: &Matching, a2: &Matching, n: u32, k: u32) -> Result<(Matching, Matching)> {
    in_step(a1, a2, n, k).map(|t| (t.b1, t.b2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsTrace {
    K(Box<IkTrace>),
    N(Box<InTrace>),
}

impl IsTrace {
    pub fn output(&self) -> (&Matching, &Matching) {
        match self {
            IsTrace::K(t) => (&t.beta1, &t.beta2),
            IsTrace::N(t) => (&t.b1, &t.b2),
        }
    }
}

pub fn is_step(a1: &Matching, a2: &Matching, n: u32, k: u32) -> Result<IsTrace> {
    let top = check_is_domain(a1, a2, n, k)?;
    if a1.saturates(top) {
        return Ok(IsTrace::N(Box::new(in_step(a1, a2, n, k)?)));
    }
    let trace = ik_step(
        &a1.with_ambient(top - 1)?,
        &a2.with_ambient(top - 1)?,
        top - 1,
    )?;
    if trace.beta2.saturates(top - 1) {
        return Err(Error::Invariant(format!(
            "I_K branch output saturates vertex {}",
            top - 1
        )));
    }
    Ok(IsTrace::K(Box::new(trace)))
}

/// `I_K` when `A1` leaves `2n-k` free, `I_N` otherwise. The output pair lives
/// in `K_(2n-k-1)`; the second matching saturates `2n-k-1` exactly on the
/// `I_N` branch.
pub fn is_apply(a1: &Matching, a2: &Matching, n: u32, k: u32) -> Result<(Matching, Matching)> {
    is_step(a1, a2, n, k).map(|t| {
        let (b1, b2) = t.output();
        (b1.clone(), b2.clone())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjectionFamily {
    Ik,
    Is,
}

impl fmt::Display for InjectionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InjectionFamily::Ik => "ik",
            InjectionFamily::Is => "is",
        })
    }
}

type ImageKey = (u128, u128);
/// Image key with the indices of the pair that produced it.
type Image = (ImageKey, u32, u32);

struct CellOutcome {
    images: Vec<Image>,
    failure: Option<Counterexample>,
    branch_n: u64,
}

fn key(b1: &Matching, b2: &Matching) -> ImageKey {
    (
        b1.edge_mask().expect("ambient within mask range"),
        b2.edge_mask().expect("ambient within mask range"),
    )
}

fn component_vertex_sets(u: &ColoredUnion) -> Vec<Vec<u32>> {
    let mut sets: Vec<Vec<u32>> = u
        .components
        .iter()
        .map(|c| {
            let mut vs = c.vertices.clone();
            vs.sort_unstable();
            vs
        })
        .collect();
    sets.sort();
    sets
}

/// Sorts the images and reports the first key hit by two preimages.
fn first_collision(images: &mut [(ImageKey, u32, u32)]) -> Option<((u32, u32), (u32, u32))> {
    images.par_sort_unstable();
    images
        .windows(2)
        .find(|w| w[0].0 == w[1].0)
        .map(|w| ((w[0].1, w[0].2), (w[1].1, w[1].2)))
}

fn finish_cell(
    cell: &mut CellReport,
    outcome: CellOutcome,
    domain_expected: BigInt,
    codomain: BigInt,
    describe: impl Fn(u32, u32) -> String,
) -> Option<Counterexample> {
    let CellOutcome {
        mut images,
        mut failure,
        branch_n,
    } = outcome;
    let domain = images.len() as u64;
    cell.cases = domain;
    if failure.is_none() {
        if let Some((p, q)) = first_collision(&mut images) {
            failure = Some(Counterexample {
                check: "injective".into(),
                detail: format!(
                    "two preimages share an image; other preimage: {}",
                    describe(q.0, q.1)
                ),
                rerun: describe(p.0, p.1),
            });
        }
    }
    if failure.is_none() && BigInt::from(domain) != domain_expected {
        failure = Some(Counterexample {
            check: "domain-size".into(),
            detail: format!("enumerated {domain}, closed form {domain_expected}"),
            rerun: describe(0, 0),
        });
    }
    if failure.is_none() && BigInt::from(domain) > codomain {
        failure = Some(Counterexample {
            check: "codomain-size".into(),
            detail: format!("domain {domain} exceeds codomain {codomain}"),
            rerun: describe(0, 0),
        });
    }
    cell.passed = failure.is_none();
    cell.fact("domain", domain);
    cell.fact("image", if cell.passed { domain } else { 0 });
    cell.fact("codomain", &codomain);
    cell.fact("branch_n", branch_n);
    failure
}

fn ik_cell(ambient: u32, size: u32) -> (CellReport, Option<Counterexample>) {
    let firsts = enumerate_matchings(ambient, size + 2);
    let seconds = enumerate_matchings(ambient, size);
    let describe = |i: u32, j: u32| match (firsts.get(i as usize), seconds.get(j as usize)) {
        (Some(a), Some(b)) => {
            format!("bessel trace ik --ambient {ambient} --alpha1 '{a}' --alpha2 '{b}'")
        }
        _ => format!("bessel verify injection-ik --ambient {ambient} --size {size}"),
    };
    let per_first: Vec<(Vec<Image>, Option<Counterexample>)> = firsts
        .par_iter()
        .enumerate()
        .map(|(i, a1)| {
            let mut images = Vec::with_capacity(seconds.len());
            for (j, a2) in seconds.iter().enumerate() {
                let fail = |check: &str, detail: String| Counterexample {
                    check: check.into(),
                    detail,
                    rerun: describe(i as u32, j as u32),
                };
                let trace = match ik_step(a1, a2, ambient) {
                    Ok(t) => t,
                    Err(e) => return (images, Some(fail("well-defined", e.to_string()))),
                };
                if trace.beta1.len() != size as usize + 1 || trace.beta2.len() != size as usize + 1
                {
                    return (
                        images,
                        Some(fail(
                            "image-size",
                            "output sizes differ from |alpha1| - 1".into(),
                        )),
                    );
                }
                let after = match decompose(&trace.beta1, &trace.beta2, ambient) {
                    Ok(u) => u,
                    Err(e) => return (images, Some(fail("image-valid", e.to_string()))),
                };
                if component_vertex_sets(&after) != component_vertex_sets(&trace.union) {
                    return (
                        images,
                        Some(fail("components", "component vertex sets changed".into())),
                    );
                }
                images.push((key(&trace.beta1, &trace.beta2), i as u32, j as u32));
            }
            (images, None)
        })
        .collect();
    let mut outcome = CellOutcome {
        images: Vec::new(),
        failure: None,
        branch_n: 0,
    };
    for (images, failure) in per_first {
        outcome.images.extend(images);
        if outcome.failure.is_none() {
            outcome.failure = failure;
        }
    }
    let mut cell = CellReport::new(format!("ambient={ambient} sizes={}/{size}", size + 2));
    let domain_expected = matching_number(ambient, size + 2) * matching_number(ambient, size);
    let m = matching_number(ambient, size + 1);
    let failure = finish_cell(&mut cell, outcome, domain_expected, &m * &m, describe);
    (cell, failure)
}

fn is_cell(n: u32, k: u32) -> (CellReport, Option<Counterexample>) {
    let top = 2 * n - k;
    let firsts = enumerate_matchings(top, n - k + 1);
    let seconds = enumerate_matchings(top - 2, n - k - 1);
    let describe = |i: u32, j: u32| match (firsts.get(i as usize), seconds.get(j as usize)) {
        (Some(a), Some(b)) => format!("bessel trace is --n {n} --k {k} --a1 '{a}' --a2 '{b}'"),
        _ => format!("bessel verify injection-is --n {n} --k {k}"),
    };
    let per_first: Vec<(Vec<Image>, Option<Counterexample>, u64)> = firsts
        .par_iter()
        .enumerate()
        .map(|(i, a1)| {
            let mut images = Vec::with_capacity(seconds.len());
            let mut branch_n = 0;
            for (j, a2) in seconds.iter().enumerate() {
                let fail = |check: &str, detail: String| Counterexample {
                    check: check.into(),
                    detail,
                    rerun: describe(i as u32, j as u32),
                };
                let trace = match is_step(a1, a2, n, k) {
                    Ok(t) => t,
                    Err(e) => return (images, Some(fail("well-defined", e.to_string())), branch_n),
                };
                let (b1, b2) = trace.output();
                if b1.ambient() != top - 1 || b2.ambient() != top - 1 {
                    return (
                        images,
                        Some(fail("image-valid", "output not in K_(2n-k-1)".into())),
                        branch_n,
                    );
                }
                if b1.len() != (n - k) as usize || b2.len() != (n - k) as usize {
                    return (
                        images,
                        Some(fail("image-size", "outputs must be (n-k)-matchings".into())),
                        branch_n,
                    );
                }
                let on_n_branch = matches!(trace, IsTrace::N(_));
                if b2.saturates(top - 1) != on_n_branch {
                    return (
                        images,
                        Some(fail(
                            "branch-disjoint",
                            format!("B2 saturation of {} disagrees with branch", top - 1),
                        )),
                        branch_n,
                    );
                }
                branch_n += u64::from(on_n_branch);
                images.push((key(b1, b2), i as u32, j as u32));
            }
            (images, None, branch_n)
        })
        .collect();
    let mut outcome = CellOutcome {
        images: Vec::new(),
        failure: None,
        branch_n: 0,
    };
    for (images, failure, branch_n) in per_first {
        outcome.images.extend(images);
        outcome.branch_n += branch_n;
        if outcome.failure.is_none() {
            outcome.failure = failure;
        }
    }
    let mut cell = CellReport::new(format!("n={n} k={k}"));
    let domain_expected = bessel_first_signless(n, k - 1) * bessel_first_signless(n, k + 1);
    let a = bessel_first_signless(n, k);
    let failure = finish_cell(&mut cell, outcome, domain_expected, &a * &a, describe);
    (cell, failure)
}

/// Exhaustive `I_K` check on one domain: `(size+2)`-matchings times
/// `size`-matchings of `K_ambient`.
pub fn verify_ik_cell(ambient: u32, size: u32) -> Result<VerificationReport> {
    if ambient > IK_MAX_AMBIENT {
        return Err(Error::Infeasible(format!(
            "exhaustive I_K check supports ambient <= {IK_MAX_AMBIENT}, got {ambient}"
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("injection-ik");
    let (cell, failure) = ik_cell(ambient, size);
    report.push_cell(cell, failure);
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Every non-empty `I_K` domain with ambient size up to `ambient_max`.
pub fn verify_ik(ambient_max: u32) -> Result<VerificationReport> {
    if ambient_max > IK_MAX_AMBIENT {
        return Err(Error::Infeasible(format!(
            "exhaustive I_K check supports ambient <= {IK_MAX_AMBIENT}, got {ambient_max}"
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("injection-ik");
    for ambient in 0..=ambient_max {
        for size in 0..=ambient / 2 {
            if 2 * (size + 2) > ambient {
                break;
            }
            let (cell, failure) = ik_cell(ambient, size);
            report.push_cell(cell, failure);
        }
    }
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Exhaustive `I_S` check on the `(n, k)` domain.
pub fn verify_is_cell(n: u32, k: u32) -> Result<VerificationReport> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!(
            "need 1 <= k < n, got n={n} k={k}"
        )));
    }
    if 2 * n - k > IS_MAX_TOP {
        return Err(Error::Infeasible(format!(
            "exhaustive I_S check supports 2n-k <= {IS_MAX_TOP}, got {}",
            2 * n - k
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("injection-is");
    let (cell, failure) = is_cell(n, k);
    report.push_cell(cell, failure);
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Every `(n, k)` with `1 ≤ k < n` and `2n - k ≤ top_max`.
pub fn verify_is(top_max: u32) -> Result<VerificationReport> {
    if top_max > IS_MAX_TOP {
        return Err(Error::Infeasible(format!(
            "exhaustive I_S check supports 2n-k <= {IS_MAX_TOP}, got {top_max}"
        )));
    }
    let started = Instant::now();
    let mut report = VerificationReport::new("injection-is");
    for n in 2..=top_max {
        for k in 1..n {
            if 2 * n - k > top_max {
                continue;
            }
            let (cell, failure) = is_cell(n, k);
            report.push_cell(cell, failure);
        }
    }
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Dispatches to the `I_K` or `I_S` checker over its full default range.
pub fn verify_injection(family: InjectionFamily, bound: u32) -> Result<VerificationReport> {
    match family {
        InjectionFamily::Ik => verify_ik(bound),
        InjectionFamily::Is => verify_is(bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn m(ambient: u32, pairs: &[(u32, u32)]) -> Matching {
        Matching::from_pairs(ambient, pairs).unwrap()
    }

    #[test]
    fn decompose_small_cases() {
        let u = decompose(&m(2, &[(1, 2)]), &m(2, &[(1, 2)]), 2).unwrap();
        assert_eq!(u.components.len(), 1);
        assert_eq!(u.components[0].kind, ComponentKind::Cycle);
        assert_eq!(u.components[0].vertices, vec![1, 2]);

        let u = decompose(&m(3, &[(1, 2)]), &Matching::empty(3), 3).unwrap();
        assert_eq!(u.components.len(), 1);
        assert_eq!(u.components[0].kind, ComponentKind::BluePath);
        assert_eq!(u.components[0].edges.len(), 1);

        let u = decompose(&m(4, &[(1, 2), (3, 4)]), &m(4, &[(2, 3), (1, 4)]), 4).unwrap();
        assert_eq!(u.components.len(), 1);
        assert_eq!(u.components[0].walk(), "1-2..3-4..1");

        assert!(decompose(&m(5, &[(1, 5)]), &Matching::empty(4), 4).is_err());
    }

    #[test]
    fn path_walks_start_at_smaller_endpoint() {
        let u = decompose(&m(5, &[(4, 5)]), &m(5, &[(2, 4)]), 5).unwrap();
        assert_eq!(u.components[0].kind, ComponentKind::EvenPath);
        assert_eq!(u.components[0].walk(), "2..4-5");
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&[2], 1).unwrap(), vec![2, 3]);
        assert_eq!(phi(&[], 0).unwrap(), vec![1]);
        assert_eq!(phi(&[4, 6], 2).unwrap(), vec![1, 4, 6]);
        assert!(phi(&[2, 3], 1).is_err());
        assert!(phi(&[5], 1).is_err());
        assert!(phi(&[3, 2], 2).is_err());
    }

    fn subsets(top: u32, r: usize) -> Vec<Vec<u32>> {
        fn rec(start: u32, top: u32, r: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for v in start..=top {
                cur.push(v);
                rec(v + 1, top, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(1, top, r, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn phi_is_injective_and_never_adds_top() {
        for r in 0..=6usize {
            let top = 2 * r as u32 + 2;
            let mut images = HashSet::new();
            for a in subsets(top, r) {
                let img = phi(&a, r).unwrap();
                assert_eq!(img.len(), r + 1);
                assert!(!img.contains(&top) || a.contains(&top));
                assert!(images.insert(img));
            }
        }
    }

    fn example_41() -> (Matching, Matching) {
        let a1 = m(
            25,
            &[
                (1, 2),
                (3, 4),
                (6, 11),
                (7, 12),
                (13, 14),
                (16, 17),
                (19, 20),
                (21, 22),
                (23, 24),
            ],
        );
        let a2 = m(
            25,
            &[
                (2, 3),
                (6, 7),
                (8, 9),
                (11, 12),
                (14, 15),
                (16, 21),
                (19, 24),
            ],
        );
        (a1, a2)
    }

    #[test]
    fn ik_paper_example() {
        let (a1, a2) = example_41();
        let t = ik_step(&a1, &a2, 25).unwrap();
        assert_eq!(t.union.count_kind(ComponentKind::BluePath), 3);
        assert_eq!(t.union.count_kind(ComponentKind::RedPath), 1);
        assert_eq!(t.labeled.r, 1);
        let walks: Vec<String> = t.labeled.paths.iter().map(Component::walk).collect();
        assert_eq!(walks, ["1-2..3-4", "8..9", "17-16..21-22", "20-19..24-23"]);
        assert_eq!(t.s, vec![2]);
        assert_eq!(t.phi_s, vec![2, 3]);
        assert_eq!(t.t, 3);
        let expected1 = m(
            25,
            &[
                (1, 2),
                (3, 4),
                (6, 11),
                (7, 12),
                (13, 14),
                (16, 21),
                (19, 20),
                (23, 24),
            ],
        );
        let expected2 = m(
            25,
            &[
                (2, 3),
                (6, 7),
                (8, 9),
                (11, 12),
                (14, 15),
                (16, 17),
                (19, 24),
                (21, 22),
            ],
        );
        assert_eq!(t.beta1, expected1);
        assert_eq!(t.beta2, expected2);
    }

    #[test]
    fn ik_two_blue_paths() {
        let (b1, b2) = ik_apply(&m(4, &[(1, 2), (3, 4)]), &Matching::empty(4), 4).unwrap();
        assert_eq!(b1, m(4, &[(3, 4)]));
        assert_eq!(b2, m(4, &[(1, 2)]));
        assert!(ik_apply(&m(4, &[(1, 2)]), &Matching::empty(4), 4).is_err());
    }

    #[test]
    fn ik_injective_on_k6_sizes_2_0() {
        let mut images = HashSet::new();
        for a1 in enumerate_matchings(6, 2) {
            let img = ik_apply(&a1, &Matching::empty(6), 6).unwrap();
            assert!(images.insert(img));
        }
        assert_eq!(images.len(), 45);
    }

    fn example_42() -> (Matching, Matching) {
        let a1 = m(
            25,
            &[
                (1, 2),
                (3, 4),
                (5, 10),
                (6, 11),
                (7, 12),
                (13, 14),
                (18, 19),
                (20, 25),
                (23, 24),
            ],
        );
        let a2 = m(
            23,
            &[
                (2, 3),
                (6, 7),
                (8, 9),
                (11, 12),
                (14, 15),
                (17, 18),
                (19, 20),
            ],
        );
        (a1, a2)
    }

    #[test]
    fn in_paper_example() {
        let (a1, a2) = example_42();
        let t = in_step(&a1, &a2, 17, 9).unwrap();
        assert_eq!(t.x_set, vec![8, 9, 15, 16, 17, 21, 22]);
        assert_eq!(t.x, 20);
        assert_eq!(t.rank, 6);
        assert_eq!(t.y_set, vec![1, 4, 5, 10, 13, 16, 21, 22, 23]);
        assert_eq!(t.y, 16);
        assert_eq!(t.cut, Edge::new(20, 25).unwrap());
        assert_eq!(t.joined, Edge::new(16, 24).unwrap());
        assert_eq!(
            t.b1,
            m(
                24,
                &[
                    (1, 2),
                    (3, 4),
                    (5, 10),
                    (6, 11),
                    (7, 12),
                    (13, 14),
                    (18, 19),
                    (23, 24)
                ]
            )
        );
        assert_eq!(
            t.b2,
            m(
                24,
                &[
                    (2, 3),
                    (6, 7),
                    (8, 9),
                    (11, 12),
                    (14, 15),
                    (17, 18),
                    (19, 20),
                    (16, 24)
                ]
            )
        );
        assert!(matches!(is_step(&a1, &a2, 17, 9).unwrap(), IsTrace::N(_)));
    }

    #[test]
    fn in_smallest_case() {
        // n = 3, k = 2: A1 a 2-matching of K_4, A2 empty in K_2.
        let t = in_step(&m(4, &[(1, 3), (2, 4)]), &Matching::empty(2), 3, 2).unwrap();
        assert!(t.x_set.is_empty());
        assert_eq!((t.x, t.rank, t.y), (2, 1, 1));
        assert_eq!(t.y_set, vec![1, 2]);
        assert_eq!(t.b1, m(3, &[(1, 3)]));
        assert_eq!(t.b2, m(3, &[(1, 3)]));
    }

    #[test]
    fn is_case_a_uses_ik() {
        // n = 5, k = 3: A1 = {{1,2},{3,5},{4,6}} leaves 7 free.
        let a1 = m(7, &[(1, 2), (3, 5), (4, 6)]);
        let a2 = m(5, &[(1, 4)]);
        let t = is_step(&a1, &a2, 5, 3).unwrap();
        let IsTrace::K(ik) = &t else {
            panic!("expected the I_K branch")
        };
        assert_eq!(ik.t, 1);
        assert_eq!(ik.flipped.walk(), "3-5");
        assert_eq!(t.output().0, &m(6, &[(1, 2), (4, 6)]));
        assert_eq!(t.output().1, &m(6, &[(1, 4), (3, 5)]));
        assert!(!t.output().1.saturates(6));
        assert_eq!(
            in_apply(&a1, &a2, 5, 3),
            Err(Error::WrongCase { vertex: 7 })
        );
        assert!(is_apply(&a1, &m(5, &[]), 5, 3).is_err());
    }

    #[test]
    fn small_verifications() {
        let r = verify_ik_cell(6, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.cases, 45);
        let r = verify_ik_cell(4, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.cases, 3);
        let r = verify_is_cell(5, 2).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
        assert_eq!(
            BigInt::from(r.cases),
            bessel_first_signless(5, 1) * bessel_first_signless(5, 3)
        );
        assert!(matches!(verify_ik(11), Err(Error::Infeasible(_))));
        assert!(matches!(verify_is_cell(6, 1), Err(Error::Infeasible(_))));
    }
}
