use std::fmt;
use std::path::Path;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use gorkit_core::cayley::{cayley_gorenstein_check, cayley_polytope, cayley_structures, special_simplices};
use gorkit_core::gorenstein::{dual_gorenstein, gorenstein_data};
use gorkit_core::lattice::{neg, Int, Rat};
use gorkit_core::nef::{
    cancel_check, center_and_properize, collect, decompose_irreducible, detect_nef, dual_nef, length_bound,
    lattice_point_count_identity, project_nef, NefPartition,
};
use gorkit_core::polytope::LatticePolytope;
use gorkit_core::stringy::{
    conjecture_diagnostics, est_capped, est_specializations, hstar_capped, stilde_capped, weighted_simplex,
    WeightSystem,
};
use gorkit_core::{Cap, Error};

use crate::input::{self, ParseError};
use crate::output::{self as out, int, laurent, option, parts, point, points, rat, rat_point, unipoly, vertices};

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Usage(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_cap() => 4,
            CliError::Core(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult = Result<Value, CliError>;

pub fn load_polytope(path: &Path) -> Result<LatticePolytope, CliError> {
    Ok(input::parse_polytope(&input::read(path)?)?)
}

pub fn load_nef(path: &Path) -> Result<Vec<LatticePolytope>, CliError> {
    Ok(input::parse_nef(&input::read(path)?)?)
}

/// The report and the dual as a polytope file.
pub fn dual(p: &LatticePolytope) -> Result<(Value, String), CliError> {
    let pair = dual_gorenstein(&p.full_dimensional_copy())?;
    let v = json!({ "index": int(&pair.index), "vertices": vertices(&pair.dual) });
    Ok((v, input::format_polytope(&pair.dual)))
}

pub fn gorenstein(p: &LatticePolytope) -> CliResult {
    let data = gorenstein_data(&p.full_dimensional_copy());
    Ok(json!({
        "index": option(data.as_ref(), |g| int(&g.index)),
        "interior_point": option(data.as_ref(), |g| rat_point(&g.interior_point)),
    }))
}

pub fn hstar(p: &LatticePolytope, cap: Cap) -> CliResult {
    Ok(unipoly(&hstar_capped(p, cap)?))
}

pub fn stilde(p: &LatticePolytope, cap: Cap) -> CliResult {
    Ok(unipoly(&stilde_capped(p, cap)?))
}

/// `u,v` as two rationals.
pub fn parse_at(s: &str) -> Result<(Rat, Rat), CliError> {
    let bad = || CliError::Usage(format!("--at expects u,v (rationals), got '{s}'"));
    let (u, v) = s.split_once(',').ok_or_else(bad)?;
    let u: Rat = u.trim().parse().map_err(|_| bad())?;
    let v: Rat = v.trim().parse().map_err(|_| bad())?;
    Ok((u, v))
}

pub fn est(p: &LatticePolytope, at: Option<&str>, cap: Cap) -> CliResult {
    let at = at.map(parse_at).transpose()?;
    let e = est_capped(p, cap)?;
    match at {
        None => Ok(laurent(&e.poly)),
        Some((u, v)) => {
            let singular = e.poly.terms().any(|(i, j, _)| (u.is_zero() && i < 0) || (v.is_zero() && j < 0));
            if singular {
                return Err(Error::Precondition("evaluation point is a pole".into()).into());
            }
            let x = e.poly.eval(&u, &v);
            Ok(if x.is_integer() { int(&x.to_integer()) } else { rat(&x) })
        }
    }
}

pub fn check(p: &LatticePolytope, cap: Cap) -> CliResult {
    let d = conjecture_diagnostics(p, cap)?;
    let s = est_specializations(p, cap)?;
    Ok(json!({
        "est": laurent(&d.est.poly),
        "dual_est": laurent(&d.dual_est.poly),
        "index": int(&d.est.index),
        "cy_dim": d.cy_dim,
        "polynomial": d.polynomial,
        "nonnegative": d.nonnegative,
        "degree_bound": d.degree_bound,
        "symmetric": d.symmetric,
        "poincare_duality": d.poincare_duality,
        "reciprocity": d.reciprocity,
        "edge_symmetry": d.edge_symmetry,
        "second_derivative": d.second_derivative,
        "closed_form": d.closed_form,
        "divisible_by_24": d.divisible_by_24,
        "at_one_one": int(&d.at_one_one),
        "hstar_route": laurent(&s.hstar_route),
        "volume_route": int(&s.volume_route),
        "agree_u1": s.agree_u1,
        "agree_11": s.agree_11,
        "all_pass": d.all_pass() && s.agree_u1 && s.agree_11,
    }))
}

pub fn special(p: &LatticePolytope, cap: Cap) -> CliResult {
    let q = p.full_dimensional_copy();
    let simplices = special_simplices(&q, cap)?;
    let structures = cayley_structures(&q, cap)?;
    Ok(json!({
        "special_simplices": simplices.iter().map(|s| points(&s.vertices)).collect::<Vec<_>>(),
        "cayley_structures": structures
            .iter()
            .map(|c| json!({ "functionals": points(&c.functionals), "parts": parts(&c.parts) }))
            .collect::<Vec<_>>(),
    }))
}

pub fn cayley(ps: &[LatticePolytope]) -> CliResult {
    let rep = cayley_gorenstein_check(ps)?;
    Ok(json!({
        "length": rep.length,
        "cone_reflexive": rep.cone_reflexive,
        "polytope_gorenstein": rep.polytope_gorenstein,
        "sum_reflexive": rep.sum_reflexive,
        "consistent": rep.consistent(),
        "dual_point": option(rep.dual_point.as_deref(), point),
        "sum_center": option(rep.sum_center.as_deref(), point),
        "vertices": vertices(&cayley_polytope(ps)?),
    }))
}

/// Detects the partition and translates each part by `−p_i`, keeping zero
/// parts so that indices match the input file. Input that is already
/// centered keeps the zero witness.
fn centered(ps: &[LatticePolytope], cap: Cap) -> Result<(NefPartition, NefPartition), CliError> {
    if !ps.is_empty() {
        let zero = NefPartition::centered(ps.to_vec());
        if zero.sum().is_full_dimensional() && zero.is_valid() {
            return Ok((zero.clone(), zero));
        }
    }
    let np = detect_nef(ps, cap)?.ok_or(Error::NotNef)?;
    let c = NefPartition::centered(np.parts.iter().zip(&np.points).map(|(p, x)| p.translate(&neg(x))).collect());
    Ok((np, c))
}

/// The report and the dual parts as a nef file.
pub fn nef_dual(ps: &[LatticePolytope], cap: Cap) -> Result<(Value, String), CliError> {
    let (np, c) = centered(ps, cap)?;
    let dual = dual_nef(&c)?;
    let count = lattice_point_count_identity(&c, cap)?;
    let v = json!({
        "points": points(&np.points),
        "parts": parts(&dual.parts),
        "point_identity": count.equal,
    });
    Ok((v, input::format_nef(&dual.parts)))
}

/// Blocks like `1,2;3` (1-based).
pub fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>, CliError> {
    s.split(';').map(parse_indices).collect()
}

/// Indices like `1,3` (1-based), returned 0-based.
pub fn parse_indices(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(CliError::Usage(format!("bad index '{}'", t.trim()))),
        })
        .collect()
}

fn one_based(bs: &[Vec<usize>]) -> Value {
    json!(bs.iter().map(|b| b.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn nef_collect(ps: &[LatticePolytope], blocks: &str, cap: Cap) -> CliResult {
    let blocks = parse_blocks(blocks)?;
    let (_, c) = centered(ps, cap)?;
    let res = collect(&c, &blocks)?;
    Ok(json!({
        "blocks": one_based(&blocks),
        "parts": parts(&res.partition.parts),
        "dual_parts": parts(&res.dual_hulls),
        "verified": res.verified,
    }))
}

pub fn nef_project(ps: &[LatticePolytope], j: &str, cap: Cap) -> CliResult {
    let j = parse_indices(j)?;
    let (_, c) = centered(ps, cap)?;
    let res = project_nef(&c, &j)?;
    Ok(json!({
        "parts": parts(&res.partition.parts),
        "face": vertices(&res.face),
        "face_quotient": vertices(&res.face_quotient),
        "dual_parts": parts(&res.dual_parts),
        "face_dim": res.face.dim(),
        "kernel_dim": res.kernel_dim,
        "verified": res.verified,
    }))
}

pub fn nef_decompose(ps: &[LatticePolytope], cap: Cap) -> CliResult {
    let (np, _) = centered(ps, cap)?;
    let (c, dropped) = center_and_properize(&np);
    let dec = decompose_irreducible(&c)?;
    let len = length_bound(&c);
    Ok(json!({
        "dropped": dropped,
        "blocks": one_based(&dec.blocks),
        "partition": dec.partition,
        "direct_sum": dec.direct_sum,
        "length": len.length,
        "length_bound": len.bound_holds,
        "crosspolytope_at_equality": len.crosspolytope_at_equality,
    }))
}

pub fn nef_cancel(ps: &[LatticePolytope], cap: Cap) -> CliResult {
    let [p, q] = ps else {
        return Err(Error::Precondition(format!("expected two parts, found {}", ps.len())).into());
    };
    let rep = cancel_check(p, q, cap)?;
    Ok(json!({
        "sum_reflexive": rep.sum_reflexive,
        "sum_interior_points": rep.sum_interior_points,
        "p_interior": option(rep.p_interior.as_deref(), point),
        "q_interior": option(rep.q_interior.as_deref(), point),
        "p_reflexive": rep.p_reflexive,
        "q_reflexive": rep.q_reflexive,
        "nef_partition": rep.partition.is_some(),
        "failures": rep.failures,
    }))
}

pub fn weighted(w: &str, weights: &str, cap: Cap) -> CliResult {
    let bad = |t: &str| CliError::Usage(format!("bad weight '{t}'"));
    let w: Int = w.trim().parse().map_err(|_| bad(w))?;
    let ws: Vec<Int> = weights
        .split(',')
        .map(|t| t.trim().parse::<Int>().map_err(|_| bad(t)))
        .collect::<Result<_, _>>()?;
    if w.is_negative() {
        return Err(bad("w"));
    }
    let rep = weighted_simplex(&WeightSystem::new(w, ws)?, cap)?;
    Ok(json!({
        "ks": rep.ks.iter().map(int).collect::<Vec<_>>(),
        "reciprocal_sum": rat(&rep.reciprocal_sum),
        "index": option(rep.index.as_ref(), int),
        "index_consistent": rep.index_consistent,
        "pyramid": rep.is_pyramid,
        "est_vanishes": rep.est_vanishes,
        "s": rep.s,
        "cy_dim": rep.cy_dim,
        "bound_holds": rep.bound_holds,
        "vertices": vertices(&rep.simplex),
    }))
}

/// Text for a report.
pub fn render(v: &Value, text: bool) -> String {
    if text {
        out::text(v)
    } else {
        format!("{v}\n")
    }
}
