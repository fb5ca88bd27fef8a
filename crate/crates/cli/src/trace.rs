use std::fmt::Write as _;

use bessel_core::injections::{ik_step, in_step, is_step, IkTrace, InTrace, IsTrace};
use bessel_core::involutions::{i1_step, i2_step, UPair, VPair};
use bessel_core::{Matching, Result};
use clap::Subcommand;

#[derive(Subcommand)]
pub enum TraceMap {
    /// Sign-reversing involution on U(n,l), inside K_(2n-l-1).
    I1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Sign-reversing involution on the level V_k of V(n,l), inside K_(2n-k).
    I2 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Color-flip injection on a pair of matchings of K_ambient.
    Ik {
        #[arg(long)]
        ambient: u32,
        #[arg(long, visible_alias = "a1")]
        alpha1: String,
        #[arg(long, visible_alias = "a2")]
        alpha2: String,
    },
    /// Cut-and-join injection; A1 lives in K_(2n-k), A2 in K_(2n-k-2).
    In(InjectionArgs),
    /// Combined injection: I_K when 2n-k is free in A1, I_N otherwise.
    Is(InjectionArgs),
}

#[derive(clap::Args)]
pub struct InjectionArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, visible_alias = "alpha1")]
    a1: String,
    #[arg(long, visible_alias = "alpha2")]
    a2: String,
}

pub fn run(map: &TraceMap) -> Result<String> {
    match map {
        TraceMap::I1 { n, l, alpha, beta } => trace_i1(*n, *l, alpha, beta),
        TraceMap::I2 {
            n,
            l,
            k,
            alpha,
            beta,
        } => trace_i2(*n, *l, *k, alpha, beta),
        TraceMap::Ik {
            ambient,
            alpha1,
            alpha2,
        } => {
            let a1 = Matching::parse(alpha1, *ambient)?;
            let a2 = Matching::parse(alpha2, *ambient)?;
            let t = ik_step(&a1, &a2, *ambient)?;
            let mut out = format!("map: I_K\nambient: K_{ambient}\n");
            push_pair(&mut out, "alpha1 (blue)", &a1, "alpha2 (red)", &a2);
            push_ik(&mut out, &t);
            Ok(out)
        }
        TraceMap::In(args) => {
            let (a1, a2) = injection_input(args)?;
            let t = in_step(&a1, &a2, args.n, args.k)?;
            let mut out = injection_header("I_N", args, &a1, &a2);
            push_in(&mut out, &t);
            Ok(out)
        }
        TraceMap::Is(args) => {
            let (a1, a2) = injection_input(args)?;
            let t = is_step(&a1, &a2, args.n, args.k)?;
            let top = 2 * args.n - args.k;
            let mut out = injection_header("I_S", args, &a1, &a2);
            match &t {
                IsTrace::K(t) => {
                    writeln!(
                        out,
                        "branch: I_K ({top} unsaturated under A1, restrict to K_{})",
                        top - 1
                    )
                    .unwrap();
                    push_ik(&mut out, t);
                }
                IsTrace::N(t) => {
                    writeln!(out, "branch: I_N ({top} saturated under A1)").unwrap();
                    push_in(&mut out, t);
                }
            }
            Ok(out)
        }
    }
}

fn push_pair(out: &mut String, l1: &str, m1: &Matching, l2: &str, m2: &Matching) {
    let width = l1.len().max(l2.len());
    writeln!(out, "  {l1:width$} = {m1}").unwrap();
    writeln!(out, "  {l2:width$} = {m2}").unwrap();
}

fn sign(s: i32) -> &'static str {
    if s > 0 {
        "+1"
    } else {
        "-1"
    }
}

fn trace_i1(n: u32, l: u32, alpha: &str, beta: &str) -> Result<String> {
    let ambient = (2 * n).saturating_sub(l).saturating_sub(1);
    let u = UPair::new(
        n,
        l,
        Matching::parse(alpha, ambient)?,
        Matching::parse(beta, ambient)?,
    )?;
    let step = i1_step(&u)?;
    let v = &step.output;
    let mut out = format!(
        "map: I_1\nn = {n}, l = {l}, ambient: K_{ambient}\ninput (k = {}, sign {}):\n",
        u.k(),
        sign(u.sign())
    );
    push_pair(&mut out, "alpha", u.alpha(), "beta", u.beta());
    writeln!(out, "smallest edge: {}", step.edge).unwrap();
    writeln!(out, "move: {}", step.direction).unwrap();
    writeln!(out, "output (k = {}, sign {}):", v.k(), sign(v.sign())).unwrap();
    push_pair(&mut out, "alpha'", v.alpha(), "beta'", v.beta());
    Ok(out)
}

fn trace_i2(n: u32, l: u32, k: u32, alpha: &str, beta: &str) -> Result<String> {
    let ambient = (2 * n).saturating_sub(k);
    let v = VPair::new(
        n,
        l,
        k,
        Matching::parse(alpha, ambient)?,
        Matching::parse(beta, ambient)?,
    )?;
    let step = i2_step(&v)?;
    let w = &step.output;
    let mut out = format!(
        "map: I_2\nn = {n}, l = {l}\ninput (k = {k}, ambient: K_{ambient}, sign {}):\n",
        sign(v.sign())
    );
    push_pair(&mut out, "alpha", v.alpha(), "beta", v.beta());
    writeln!(out, "largest edge: {}", step.edge).unwrap();
    writeln!(out, "move: {}", step.direction).unwrap();
    writeln!(
        out,
        "output (k = {}, ambient: K_{}, sign {}):",
        w.k(),
        w.ambient(),
        sign(w.sign())
    )
    .unwrap();
    push_pair(&mut out, "alpha'", w.alpha(), "beta'", w.beta());
    Ok(out)
}

fn injection_input(args: &InjectionArgs) -> Result<(Matching, Matching)> {
    let top = (2 * args.n).saturating_sub(args.k);
    Ok((
        Matching::parse(&args.a1, top)?,
        Matching::parse(&args.a2, top.saturating_sub(2))?,
    ))
}

fn injection_header(name: &str, args: &InjectionArgs, a1: &Matching, a2: &Matching) -> String {
    let mut out = format!("map: {name}\nn = {}, k = {}\n", args.n, args.k);
    push_pair(
        &mut out,
        &format!("A1 (K_{})", a1.ambient()),
        a1,
        &format!("A2 (K_{})", a2.ambient()),
        a2,
    );
    out
}

fn set(values: &[u32]) -> String {
    let parts: Vec<String> = values.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn push_ik(out: &mut String, t: &IkTrace) {
    writeln!(out, "components (- blue, .. red):").unwrap();
    for c in &t.union.components {
        let label = t
            .labeled
            .paths
            .iter()
            .position(|p| p == c)
            .map(|i| format!(" [label {}]", i + 1))
            .unwrap_or_default();
        writeln!(out, "  {}{label}: {}", c.kind, c.walk()).unwrap();
    }
    writeln!(out, "r = {}", t.labeled.r).unwrap();
    writeln!(out, "S = {}", set(&t.s)).unwrap();
    writeln!(out, "phi(S) = {}", set(&t.phi_s)).unwrap();
    writeln!(out, "t = {}", t.t).unwrap();
    writeln!(out, "flipped path: {}", t.flipped.walk()).unwrap();
    writeln!(out, "output (K_{}):", t.union.ambient).unwrap();
    push_pair(out, "beta1", &t.beta1, "beta2", &t.beta2);
}

fn push_in(out: &mut String, t: &InTrace) {
    writeln!(out, "X = {}", set(&t.x_set)).unwrap();
    writeln!(out, "x = {}", t.x).unwrap();
    writeln!(out, "rank of x in X + x = {}", t.rank).unwrap();
    writeln!(out, "Y = {}", set(&t.y_set)).unwrap();
    writeln!(out, "y = {}", t.y).unwrap();
    writeln!(out, "cut: {}", t.cut).unwrap();
    writeln!(out, "joined: {}", t.joined).unwrap();
    writeln!(out, "output (K_{}):", t.b1.ambient()).unwrap();
    push_pair(out, "B1", &t.b1, "B2", &t.b2);
}
