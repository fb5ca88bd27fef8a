//! Matchings in the labeled complete graph `K_n` on vertices `1..=n`.
//!
//! Edges are normalized to `a < b` and ordered colexicographically: by the
//! larger endpoint first, then by the smaller one. A [`Matching`] keeps its
//! edges sorted in that order and carries its ambient vertex count, because the
//! same edge set is read inside different complete graphs by the involutions
//! and injections.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An edge `{a, b}` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    a: u32,
    b: u32,
}

impl Edge {
    /// Builds the edge between two distinct positive labels, in either order.
    pub fn new(x: u32, y: u32) -> Result<Edge> {
        if x == 0 || y == 0 {
            return Err(Error::Precondition(format!(
                "vertex labels start at 1, got {{{x},{y}}}"
            )));
        }
        match x.cmp(&y) {
            Ordering::Less => Ok(Edge { a: x, b: y }),
            Ordering::Greater => Ok(Edge { a: y, b: x }),
            Ordering::Equal => Err(Error::Precondition(format!("loop {{{x},{y}}}"))),
        }
    }

    #[inline]
    pub fn a(self) -> u32 {
        self.a
    }

    #[inline]
    pub fn b(self) -> u32 {
        self.b
    }

    #[inline]
    pub fn contains(self, v: u32) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(self, v: u32) -> Option<u32> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }
}

/// Colex order: `{a,b} < {c,d}` iff `b < d`, ties broken by `a < c`.
pub fn colex_compare(e1: Edge, e2: Edge) -> Ordering {
    (e1.b, e1.a).cmp(&(e2.b, e2.a))
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        colex_compare(*self, *other)
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// A set of vertex-disjoint edges of `K_ambient`, sorted in colex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    ambient: u32,
    edges: Vec<Edge>,
}

impl Matching {
    pub fn empty(ambient: u32) -> Matching {
        Matching {
            ambient,
            edges: Vec::new(),
        }
    }

    /// Validates and sorts `edges` into a matching of `K_ambient`.
    pub fn new(ambient: u32, edges: impl IntoIterator<Item = Edge>) -> Result<Matching> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        let mut seen = vec![false; ambient as usize + 1];
        for e in &edges {
            if e.b > ambient {
                return Err(Error::Precondition(format!(
                    "edge {e} leaves the vertex set [{ambient}]"
                )));
            }
            for v in [e.a, e.b] {
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::Precondition(format!(
                        "vertex {v} is covered by two edges"
                    )));
                }
            }
        }
        Ok(Matching { ambient, edges })
    }

    pub fn from_pairs(ambient: u32, pairs: &[(u32, u32)]) -> Result<Matching> {
        let edges = pairs
            .iter()
            .map(|&(x, y)| Edge::new(x, y))
            .collect::<Result<Vec<_>>>()?;
        Matching::new(ambient, edges)
    }

    /// Parses the canonical text form `{{a,b},{c,d},...}` (or `{}` / `∅`).
    pub fn parse(text: &str, ambient: u32) -> Result<Matching> {
        Matching::new(ambient, parse_edges(text)?)
    }

    /// Builds a matching from edges already known to be sorted and disjoint.
    pub(crate) fn from_sorted_unchecked(ambient: u32, edges: Vec<Edge>) -> Matching {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.last().is_none_or(|e| e.b <= ambient));
        Matching { ambient, edges }
    }

    #[inline]
    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Smallest edge in colex order.
    #[inline]
    pub fn smallest(&self) -> Option<Edge> {
        self.edges.first().copied()
    }

    /// Largest edge in colex order.
    #[inline]
    pub fn largest(&self) -> Option<Edge> {
        self.edges.last().copied()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn saturates(&self, v: u32) -> bool {
        self.edges.iter().any(|e| e.contains(v))
    }

    /// The endpoint matched with `v`, if `v` is saturated.
    pub fn partner(&self, v: u32) -> Option<u32> {
        self.edges.iter().find_map(|e| e.other(v))
    }

    /// Saturated vertices in increasing order.
    pub fn saturated_set(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.edges.iter().flat_map(|e| [e.a, e.b]).collect();
        vs.sort_unstable();
        vs
    }

    /// Unsaturated vertices of `[ambient]` in increasing order.
    pub fn unsaturated_set(&self) -> Vec<u32> {
        let mut covered = vec![false; self.ambient as usize + 1];
        for e in &self.edges {
            covered[e.a as usize] = true;
            covered[e.b as usize] = true;
        }
        (1..=self.ambient)
            .filter(|&v| !covered[v as usize])
            .collect()
    }

    /// `partner[v]` for `v` in `0..=ambient`; zero marks an unsaturated vertex.
    pub fn partner_table(&self) -> Vec<u32> {
        let mut table = vec![0; self.ambient as usize + 1];
        for e in &self.edges {
            table[e.a as usize] = e.b;
            table[e.b as usize] = e.a;
        }
        table
    }

    /// The same edge set read inside `K_ambient`.
    pub fn with_ambient(&self, ambient: u32) -> Result<Matching> {
        if let Some(e) = self.largest() {
            if e.b > ambient {
                return Err(Error::Precondition(format!(
                    "edge {e} does not fit in [{ambient}]"
                )));
            }
        }
        Ok(Matching {
            ambient,
            edges: self.edges.clone(),
        })
    }

    /// Adds `e`, keeping colex order. Fails if `e` meets a saturated vertex.
    pub fn inserted(&self, e: Edge) -> Result<Matching> {
        if e.b > self.ambient {
            return Err(Error::Precondition(format!(
                "edge {e} leaves the vertex set [{}]",
                self.ambient
            )));
        }
        if let Some(f) = self
            .edges
            .iter()
            .find(|f| f.contains(e.a) || f.contains(e.b))
        {
            return Err(Error::Precondition(format!("edge {e} meets edge {f}")));
        }
        let mut edges = self.edges.clone();
        let pos = edges.binary_search(&e).unwrap_err();
        edges.insert(pos, e);
        Ok(Matching {
            ambient: self.ambient,
            edges,
        })
    }

    /// Removes `e`. Fails if `e` is not an edge of the matching.
    pub fn removed(&self, e: Edge) -> Result<Matching> {
        let pos = self
            .edges
            .binary_search(&e)
            .map_err(|_| Error::Precondition(format!("edge {e} is not in the matching")))?;
        let mut edges = self.edges.clone();
        edges.remove(pos);
        Ok(Matching {
            ambient: self.ambient,
            edges,
        })
    }

    /// Packs the edge set into a bitmask, one bit per edge of `K_16`.
    /// Returns `None` when the ambient graph has more than 16 vertices.
    pub fn edge_mask(&self) -> Option<u128> {
        if self.ambient > 16 {
            return None;
        }
        Some(self.edges.iter().fold(0u128, |mask, e| {
            let idx = (e.b - 1) * (e.b - 2) / 2 + (e.a - 1);
            mask | (1u128 << idx)
        }))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Parses `{{a,b},{c,d},...}` into a list of edges. Whitespace is ignored;
/// `{}` and `∅` denote the empty set.
pub fn parse_edges(text: &str) -> Result<Vec<Edge>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "∅" || compact == "{}" {
        return Ok(Vec::new());
    }
    let inner = compact
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{{{a,b}},...}}, got `{text}`")))?;
    let mut edges = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| Error::Parse(format!("expected `{{` at `{rest}`")))?;
        let close = body
            .find('}')
            .ok_or_else(|| Error::Parse(format!("unclosed edge at `{rest}`")))?;
        let (pair, tail) = body.split_at(close);
        let nums: Vec<&str> = pair.split(',').collect();
        if nums.len() != 2 {
            return Err(Error::Parse(format!(
                "edge `{{{pair}}}` needs two endpoints"
            )));
        }
        let parse = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad vertex label `{s}`")))
        };
        edges.push(Edge::new(parse(nums[0])?, parse(nums[1])?)?);
        rest = &tail[1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err(Error::Parse("trailing comma".into()));
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(Error::Parse(format!("expected `,` at `{rest}`")));
        }
    }
    Ok(edges)
}

/// Union of two matchings with disjoint saturated sets and the same ambient.
pub fn disjoint_union(m1: &Matching, m2: &Matching) -> Result<Matching> {
    if m1.ambient != m2.ambient {
        return Err(Error::Precondition(format!(
            "ambient sizes differ: {} vs {}",
            m1.ambient, m2.ambient
        )));
    }
    Matching::new(m1.ambient, m1.edges.iter().chain(&m2.edges).copied())
        .map_err(|_| Error::Precondition(format!("{m1} and {m2} saturate a common vertex")))
}

/// All `k`-matchings of `K_n`, lexicographic on their colex-sorted edge lists.
pub fn enumerate_matchings(n: u32, k: u32) -> Vec<Matching> {
    let vertices: Vec<u32> = (1..=n).collect();
    enumerate_matchings_on(&vertices, n, k)
}

/// All `k`-matchings whose edges join vertices of `vertices`, read inside
/// `K_ambient`, in the same canonical order as [`enumerate_matchings`].
pub fn enumerate_matchings_on(vertices: &[u32], ambient: u32, k: u32) -> Vec<Matching> {
    let mut out = Vec::new();
    for_each_matching_on(vertices, k, |edges| {
        out.push(Matching::from_sorted_unchecked(ambient, edges.to_vec()));
    });
    out
}

/// Calls `visit` with every `k`-matching on `vertices` (colex-sorted edge
/// slice) in canonical order, without allocating a `Matching` per result.
pub fn for_each_matching_on(vertices: &[u32], k: u32, mut visit: impl FnMut(&[Edge])) {
    let k = k as usize;
    if 2 * k > vertices.len() {
        return;
    }
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let mut candidates = Vec::with_capacity(vs.len() * vs.len().saturating_sub(1) / 2);
    for (j, &b) in vs.iter().enumerate() {
        for &a in &vs[..j] {
            candidates.push(Edge { a, b });
        }
    }
    let max_label = vs.last().copied().unwrap_or(0) as usize;
    let mut used = vec![false; max_label + 1];
    let mut current = Vec::with_capacity(k);
    extend(&candidates, 0, k, &mut used, &mut current, &mut visit);
}

fn extend(
    candidates: &[Edge],
    start: usize,
    k: usize,
    used: &mut [bool],
    current: &mut Vec<Edge>,
    visit: &mut impl FnMut(&[Edge]),
) {
    if current.len() == k {
        visit(current);
        return;
    }
    for i in start..candidates.len() {
        let e = candidates[i];
        if used[e.a as usize] || used[e.b as usize] {
            continue;
        }
        used[e.a as usize] = true;
        used[e.b as usize] = true;
        current.push(e);
        extend(candidates, i + 1, k, used, current, visit);
        current.pop();
        used[e.a as usize] = false;
        used[e.b as usize] = false;
    }
}

/// A partition of `[n]` into blocks of size one or two.
///
/// Blocks are kept sorted internally and ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition12 {
    ambient: u32,
    blocks: Vec<Vec<u32>>,
}

impl SetPartition12 {
    pub fn new(ambient: u32, blocks: Vec<Vec<u32>>) -> Result<SetPartition12> {
        let mut seen = vec![false; ambient as usize + 1];
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for block in &blocks {
            if block.is_empty() || block.len() > 2 {
                return Err(Error::Precondition(format!(
                    "block {block:?} must have size one or two"
                )));
            }
            for &v in block {
                if v == 0 || v > ambient {
                    return Err(Error::Precondition(format!(
                        "vertex {v} outside [{ambient}]"
                    )));
                }
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::Precondition(format!("vertex {v} in two blocks")));
                }
            }
        }
        if let Some(v) = (1..=ambient).find(|&v| !seen[v as usize]) {
            return Err(Error::Precondition(format!("vertex {v} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition12 { ambient, blocks })
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn singletons(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    pub fn pairs(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 2).count()
    }
}

/// The matching formed by the two-element blocks of `p`.
pub fn partition_to_matching(p: &SetPartition12) -> Matching {
    let mut edges: Vec<Edge> = p
        .blocks
        .iter()
        .filter(|b| b.len() == 2)
        .map(|b| Edge { a: b[0], b: b[1] })
        .collect();
    edges.sort_unstable();
    Matching::from_sorted_unchecked(p.ambient, edges)
}

/// Inverse of [`partition_to_matching`]: edges become pairs, every
/// unsaturated vertex a singleton.
pub fn matching_to_partition(m: &Matching) -> SetPartition12 {
    let mut blocks: Vec<Vec<u32>> = m.edges.iter().map(|e| vec![e.a, e.b]).collect();
    blocks.extend(m.unsaturated_set().into_iter().map(|v| vec![v]));
    blocks.sort_unstable_by_key(|b| b[0]);
    SetPartition12 {
        ambient: m.ambient,
        blocks,
    }
}
