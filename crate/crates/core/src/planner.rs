//! Symbolic induction machinery: degree splitters, inequality ledgers, and
//! construction plans for reducible curves.
//!
//! Everything here is exact integer/rational arithmetic; no geometry. Plans
//! record a curve assembled component by component, each node carrying its
//! degree, genus, and ρ increments, so that the ledger can be checked
//! against the target parameters after the fact.

use serde::Serialize;
use thiserror::Error;

use crate::bn::{binom, rho, CurveParams};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlannerError {
    #[error("rho({d}, {g}, {r}) = {rho} is negative")]
    NegativeRho { d: i64, g: i64, r: i64, rho: i64 },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("infeasible plan: {constraint}")]
    Infeasible { constraint: String },
}

/// Exact rational with positive denominator, reduced.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_i64(num.abs(), den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Rational { num, den }
    }

    pub fn from_int(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.num as i128 * other.den as i128 == other.num as i128 * self.den as i128
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some((self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128)))
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// ρ increment of attaching an `s`-secant degree-`k` rational curve in P^r:
/// `(r + 1)k − r(s − 1)`.
pub fn rho_increment(k: i64, s: i64, r: i64) -> i64 {
    (r + 1) * k - r * (s - 1)
}

/// Outcome of the two bound checks used to steer the degree splitter.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundsCheck {
    /// Upper bound `r − 1 + d/r` for `r + max(0, g + r − d)`.
    pub bound1: Rational,
    /// Upper bound `(r − 1)d / (2r)` for `(r − 1)·⌈max(0, g + r − d)/2⌉`.
    pub bound2: Rational,
    pub ok: bool,
}

/// Check both splitter bounds in exact rational arithmetic. Requires ρ ≥ 0.
pub fn bounds_ione(p: &CurveParams) -> Result<BoundsCheck, PlannerError> {
    let rh = rho(p);
    if rh < 0 {
        return Err(PlannerError::NegativeRho {
            d: p.d,
            g: p.g,
            r: p.r,
            rho: rh,
        });
    }
    let (d, g, r) = (p.d, p.g, p.r);
    let max0 = (g + r - d).max(0);
    let bound1 = Rational::new(r * (r - 1) + d, r);
    let bound2 = Rational::new((r - 1) * d, 2 * r);
    let lhs1 = r + max0;
    let lhs2 = (r - 1) * ((max0 + 1) / 2);
    let ok = Rational::from_int(lhs1) <= bound1 && Rational::from_int(lhs2) <= bound2;
    Ok(BoundsCheck { bound1, bound2, ok })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SplitDirection {
    /// `d ≥ binom(m + r − 1, m)`: both parts sit above the base split.
    Surplus,
    /// `d ≤ binom(m + r − 1, m)`: both parts sit below the base split.
    Deficit,
}

/// A degree split `d = d1 + d2` for one step of the induction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    pub d1: i64,
    pub d2: i64,
    pub direction: SplitDirection,
}

fn split_constraints_hold(d1: i64, d2: i64, r: i64, m: i64, dir: SplitDirection) -> bool {
    let d = d1 + d2;
    // d1 ≥ r − 1 + d/r, cleared of denominators.
    if r * d1 < r * (r - 1) + d {
        return false;
    }
    // d2 ≥ r − 1, strengthened to d2 ≥ (r − 1)d/(2r) at m = 3.
    if m == 3 {
        if 2 * r * d2 < (r - 1) * d {
            return false;
        }
    } else if d2 < r - 1 {
        return false;
    }
    let cap1 = binom((m + r - 2) as u64, (m - 1) as u64) as i64;
    let cap2 = binom((m + r - 2) as u64, m as u64) as i64;
    match dir {
        SplitDirection::Surplus => d1 >= cap1 && d2 >= cap2,
        SplitDirection::Deficit => d1 <= cap1 && d2 <= cap2,
    }
}

impl SplitResult {
    /// Re-verify every recorded constraint for this split.
    pub fn check(&self, r: i64, m: i64) -> bool {
        split_constraints_hold(self.d1, self.d2, r, m, self.direction)
    }
}

/// Memo for [`split_degrees_cached`] and the schedule sweeps: the walk is
/// deterministic, so results are shared freely.
#[derive(Default)]
pub struct SplitCache {
    map: std::collections::HashMap<(i64, i64, i64), SplitResult>,
}

impl SplitCache {
    pub fn new() -> Self {
        Self::default()
    }
}

pub fn split_degrees_cached(
    d: i64,
    r: i64,
    m: i64,
    cache: &mut SplitCache,
) -> Result<SplitResult, PlannerError> {
    if let Some(&s) = cache.map.get(&(d, r, m)) {
        return Ok(s);
    }
    let s = split_degrees(d, r, m)?;
    cache.map.insert((d, r, m), s);
    Ok(s)
}

/// Split `d` for the `(m, r)` induction step. Starts from the binomial base
/// split and walks one unit at a time toward the target, keeping every
/// constraint at each step. Requires `r ≥ 4`, `m ≥ 3`, `d ≥ 2r + 2`; callers
/// handle `d ∈ {2r, 2r + 1}` with the fixed split `(r + 1, d − r − 1)`.
pub fn split_degrees(d: i64, r: i64, m: i64) -> Result<SplitResult, PlannerError> {
    if r < 4 || m < 3 {
        return Err(PlannerError::OutOfRange(format!(
            "split requires r >= 4 and m >= 3, got r = {r}, m = {m}"
        )));
    }
    if d < 2 * r + 2 {
        return Err(PlannerError::OutOfRange(format!(
            "split requires d >= 2r + 2 = {}, got d = {d}",
            2 * r + 2
        )));
    }
    let base_d = binom((m + r - 1) as u64, m as u64) as i64;
    let direction = if d >= base_d {
        SplitDirection::Surplus
    } else {
        SplitDirection::Deficit
    };
    let mut d1 = binom((m + r - 2) as u64, (m - 1) as u64) as i64;
    let mut d2 = binom((m + r - 2) as u64, m as u64) as i64;
    assert!(
        split_constraints_hold(d1, d2, r, m, direction),
        "base split violates its own constraints"
    );
    while d1 + d2 != d {
        let stepped = match direction {
            SplitDirection::Surplus => {
                // Prefer growing d2, keeping d1 near its floor.
                if split_constraints_hold(d1, d2 + 1, r, m, direction) {
                    d2 += 1;
                    true
                } else if split_constraints_hold(d1 + 1, d2, r, m, direction) {
                    d1 += 1;
                    true
                } else {
                    false
                }
            }
            SplitDirection::Deficit => {
                // Prefer shrinking d1 first.
                if split_constraints_hold(d1 - 1, d2, r, m, direction) {
                    d1 -= 1;
                    true
                } else if split_constraints_hold(d1, d2 - 1, r, m, direction) {
                    d2 -= 1;
                    true
                } else {
                    false
                }
            }
        };
        if !stepped {
            return Err(PlannerError::Infeasible {
                constraint: format!(
                    "no valid unit step from ({d1}, {d2}) toward d = {d} at r = {r}, m = {m}"
                ),
            });
        }
    }
    Ok(SplitResult { d1, d2, direction })
}

// ---------------------------------------------------------------------------
// Construction plans
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    /// A rational normal curve placed as a root component.
    Rnc { degree: i64 },
    /// A line meeting the partial curve in `secancy` points.
    SecantLine { secancy: i64 },
    /// A degree-`degree` rational normal curve meeting the partial curve in
    /// `secancy` points.
    SecantRnc { degree: i64, secancy: i64 },
    /// A canonically embedded curve of genus r + 1 used by one base template.
    Canonical { degree: i64, genus: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlanNode {
    pub kind: NodeKind,
    pub side: Side,
    pub d_degree: i64,
    pub d_genus: i64,
    pub d_rho: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// Degree-2 construction for nonspecial targets: `d1 ≤ r`, `d2 ≥ r − 1`.
    NonspecialM2,
    /// The `d ≥ g + r − 2` recursion: `d1 ≥ r + max(0, g + r − d)`.
    General,
    /// The full recursion, peeling genus r + 1 per step while `d < g + r − 2`.
    Special,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    pub d: i64,
    pub g: i64,
    pub r: i64,
    pub d1: i64,
    pub d2: i64,
    pub variant: Variant,
    /// Set when `d2 ≥ (r − 1)·⌈max(0, g + r − d)/2⌉`, in which case the
    /// ambient component X of the construction is nonspecial.
    pub x_nonspecial: bool,
    pub nodes: Vec<PlanNode>,
}

impl ConstructionPlan {
    pub fn total_degree(&self) -> i64 {
        self.nodes.iter().map(|n| n.d_degree).sum()
    }

    pub fn total_genus(&self) -> i64 {
        self.nodes.iter().map(|n| n.d_genus).sum()
    }

    pub fn total_rho(&self) -> i64 {
        self.nodes.iter().map(|n| n.d_rho).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }

    /// Graphviz description: one node per attachment, chained in assembly
    /// order, clustered by side.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph plan {\n  rankdir=LR;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = match n.kind {
                NodeKind::Rnc { degree } => format!("RNC({degree})"),
                NodeKind::SecantLine { secancy } => format!("line/{secancy}-secant"),
                NodeKind::SecantRnc { degree, secancy } => {
                    format!("RNC({degree})/{secancy}-secant")
                }
                NodeKind::Canonical { degree, genus } => {
                    format!("canonical(d={degree},g={genus})")
                }
            };
            let side = match n.side {
                Side::X => "X",
                Side::Y => "Y",
            };
            out.push_str(&format!(
                "  n{i} [label=\"{label}\\nside {side}, d+={}, g+={}, rho+={}\"];\n",
                n.d_degree, n.d_genus, n.d_rho
            ));
            if i > 0 {
                out.push_str(&format!("  n{} -> n{i};\n", i - 1));
            }
        }
        out.push_str("}\n");
        out
    }
}

struct PlanBuilder {
    r: i64,
    nodes: Vec<PlanNode>,
}

impl PlanBuilder {
    fn new(r: i64) -> Self {
        PlanBuilder { r, nodes: Vec::new() }
    }

    fn root_rnc(&mut self, degree: i64, side: Side) {
        assert!(self.nodes.is_empty(), "root must come first");
        self.nodes.push(PlanNode {
            kind: NodeKind::Rnc { degree },
            side,
            d_degree: degree,
            d_genus: 0,
            d_rho: rho(&CurveParams { d: degree, g: 0, r: self.r }),
        });
    }

    fn root_canonical(&mut self, side: Side) {
        assert!(self.nodes.is_empty(), "root must come first");
        let degree = 2 * self.r;
        let genus = self.r + 1;
        self.nodes.push(PlanNode {
            kind: NodeKind::Canonical { degree, genus },
            side,
            d_degree: degree,
            d_genus: genus,
            d_rho: rho(&CurveParams { d: degree, g: genus, r: self.r }),
        });
    }

    fn attach_line(&mut self, secancy: i64, side: Side) {
        self.nodes.push(PlanNode {
            kind: NodeKind::SecantLine { secancy },
            side,
            d_degree: 1,
            d_genus: secancy - 1,
            d_rho: rho_increment(1, secancy, self.r),
        });
    }

    fn attach_rnc(&mut self, degree: i64, secancy: i64, side: Side) {
        self.nodes.push(PlanNode {
            kind: NodeKind::SecantRnc { degree, secancy },
            side,
            d_degree: degree,
            d_genus: secancy - 1,
            d_rho: rho_increment(degree, secancy, self.r),
        });
    }
}

fn infeasible(c: impl Into<String>) -> PlannerError {
    PlannerError::Infeasible { constraint: c.into() }
}

fn build_nonspecial_m2(
    d: i64,
    g: i64,
    r: i64,
    d1: i64,
    d2: i64,
    b: &mut PlanBuilder,
) -> Result<(), PlannerError> {
    if d < g + r {
        return Err(infeasible(format!("nonspecial variant needs d >= g + r, got d = {d}, g = {g}, r = {r}")));
    }
    if !(1 <= d1 && d1 <= r) {
        return Err(infeasible(format!("need 1 <= d1 <= r, got d1 = {d1}")));
    }
    if d2 < r - 1 {
        return Err(infeasible(format!("need d2 >= r - 1, got d2 = {d2}")));
    }
    let k = d1.min(g + 1);
    let two_secants = g + 1 - k;
    let one_secants = d2 + k - g - r;
    debug_assert!(one_secants >= 0);
    b.root_rnc(r - 1, Side::Y);
    for _ in 0..two_secants {
        b.attach_line(2, Side::Y);
    }
    for _ in 0..one_secants {
        b.attach_line(1, Side::Y);
    }
    if d1 > 1 {
        b.attach_rnc(d1 - 1, k - 1, Side::X);
        b.attach_line(2, Side::X);
    } else {
        b.attach_line(1, Side::X);
    }
    Ok(())
}

fn general_preconditions(d: i64, g: i64, r: i64, d1: i64, d2: i64) -> Result<(), PlannerError> {
    let p = CurveParams { d, g, r };
    let rh = rho(&p);
    if rh < 0 {
        return Err(PlannerError::NegativeRho { d, g, r, rho: rh });
    }
    if d < g + r - 2 {
        return Err(infeasible(format!("general variant needs d >= g + r - 2 ({d} < {})", g + r - 2)));
    }
    if d1 + d2 != d {
        return Err(infeasible(format!("d1 + d2 = {} must equal d = {d}", d1 + d2)));
    }
    if d1 < r + (g + r - d).max(0) {
        return Err(infeasible(format!(
            "need d1 >= r + max(0, g + r - d) = {}, got d1 = {d1}",
            r + (g + r - d).max(0)
        )));
    }
    if d2 < r - 1 {
        return Err(infeasible(format!("need d2 >= r - 1, got d2 = {d2}")));
    }
    Ok(())
}

fn build_general(
    d: i64,
    g: i64,
    r: i64,
    d1: i64,
    d2: i64,
    b: &mut PlanBuilder,
) -> Result<(), PlannerError> {
    general_preconditions(d, g, r, d1, d2)?;
    if d == 2 * r - 1 {
        // Base: two rational normal curves glued at g + 1 points.
        debug_assert!(g + 1 <= r);
        if (d1, d2) != (r, r - 1) {
            return Err(infeasible(format!("base d = 2r - 1 forces (d1, d2) = ({r}, {}), got ({d1}, {d2})", r - 1)));
        }
        b.root_rnc(r, Side::X);
        b.attach_rnc(r - 1, g + 1, Side::Y);
        return Ok(());
    }
    let rh = rho(&CurveParams { d, g, r });
    if rh == 0 {
        if (d, g) == (2 * r, r + 1) {
            if (d1, d2) != (r + 1, r - 1) {
                return Err(infeasible(format!(
                    "base (2r, r + 1) forces (d1, d2) = ({}, {}), got ({d1}, {d2})",
                    r + 1,
                    r - 1
                )));
            }
            b.root_rnc(r, Side::X);
            b.attach_line(2, Side::X);
            b.attach_rnc(r - 1, r + 1, Side::Y);
            return Ok(());
        }
        if (d, g) == (3 * r, 2 * r + 2) {
            if d2 == r - 1 {
                // Canonical curve plus a free line, swept up by the Y-side curve.
                b.root_canonical(Side::X);
                b.attach_line(1, Side::X);
                b.attach_rnc(r - 1, r + 2, Side::Y);
            } else {
                debug_assert!(d2 >= r && d1 >= r + 2);
                b.root_rnc(r, Side::X);
                b.attach_line(2, Side::X);
                b.attach_rnc(r - 1, r + 1, Side::Y);
                b.attach_line(2, Side::X);
                b.attach_line(3, Side::Y);
                if d1 > r + 2 {
                    b.attach_rnc(d1 - r - 2, d1 - r - 1, Side::X);
                }
                if d2 > r {
                    b.attach_rnc(d2 - r, d2 - r + 1, Side::Y);
                }
            }
            return Ok(());
        }
        return Err(infeasible(format!(
            "rho = 0 with d >= g + r - 2 admits only (2r, r + 1) and (3r, 2r + 2), got ({d}, {g})"
        )));
    }
    // Inductive step: peel one unit of degree (and of genus when possible).
    debug_assert!(d >= 2 * r && rh > 0);
    let g_child = (g - 1).max(0);
    let need1 = r + (g_child + r - (d - 1)).max(0);
    let (c1, c2, side) = if d1 - 1 >= need1 {
        (d1 - 1, d2, Side::X)
    } else if d2 - 1 >= r - 1 {
        (d1, d2 - 1, Side::Y)
    } else {
        return Err(infeasible(format!(
            "no unit peel from (d1, d2) = ({d1}, {d2}) at (d, g, r) = ({d}, {g}, {r})"
        )));
    };
    build_general(d - 1, g_child, r, c1, c2, b)?;
    b.attach_line(if g_child == g { 1 } else { 2 }, side);
    Ok(())
}

fn build_special(
    d: i64,
    g: i64,
    r: i64,
    d1: i64,
    d2: i64,
    b: &mut PlanBuilder,
) -> Result<(), PlannerError> {
    if d >= g + r - 2 {
        return build_general(d, g, r, d1, d2, b);
    }
    let p = CurveParams { d, g, r };
    let rh = rho(&p);
    if rh < 0 {
        return Err(PlannerError::NegativeRho { d, g, r, rho: rh });
    }
    let max0 = (g + r - d).max(0);
    if d1 + d2 != d {
        return Err(infeasible(format!("d1 + d2 = {} must equal d = {d}", d1 + d2)));
    }
    if d1 < r + max0 {
        return Err(infeasible(format!("need d1 >= r + max(0, g + r - d) = {}, got d1 = {d1}", r + max0)));
    }
    if d2 < r - 1 {
        return Err(infeasible(format!("need d2 >= r - 1, got d2 = {d2}")));
    }
    debug_assert!(d >= 4 * r, "d < g + r - 2 with rho >= 0 forces d >= 4r");
    // Peel a genus-(r + 1), degree-r chunk.
    let (dd, gg) = (d - r, g - r - 1);
    let child_need = r + (gg + r - dd).max(0) - 0;
    let _ = child_need;
    if d2 - r + 1 >= r - 1 {
        build_special(dd, gg, r, d1 - 1, d2 - r + 1, b)?;
        b.attach_line(1, Side::X);
        b.attach_rnc(r - 1, r + 2, Side::Y);
    } else if d1 - r >= r + max0 - 1 {
        build_special(dd, gg, r, d1 - r, d2, b)?;
        b.attach_rnc(r, r + 2, Side::X);
    } else {
        return Err(infeasible(format!(
            "no genus peel from (d1, d2) = ({d1}, {d2}) at (d, g, r) = ({d}, {g}, {r})"
        )));
    }
    Ok(())
}

/// Build the reducible-curve plan for `(d, g, r)` with the given degree
/// split, checking the chosen variant's inequalities at every step. The
/// ledger is verified against the target before returning.
pub fn construction_plan(
    d: i64,
    g: i64,
    r: i64,
    d1: i64,
    d2: i64,
    variant: Variant,
) -> Result<ConstructionPlan, PlannerError> {
    let p = CurveParams { d, g, r };
    let rh = rho(&p);
    if rh < 0 {
        return Err(PlannerError::NegativeRho { d, g, r, rho: rh });
    }
    let mut b = PlanBuilder::new(r);
    match variant {
        Variant::NonspecialM2 => build_nonspecial_m2(d, g, r, d1, d2, &mut b)?,
        Variant::General => build_general(d, g, r, d1, d2, &mut b)?,
        Variant::Special => build_special(d, g, r, d1, d2, &mut b)?,
    }
    let max0 = (g + r - d).max(0);
    let x_nonspecial = match variant {
        Variant::NonspecialM2 => true,
        _ => d2 >= (r - 1) * ((max0 + 1) / 2),
    };
    let plan = ConstructionPlan {
        d,
        g,
        r,
        d1,
        d2,
        variant,
        x_nonspecial,
        nodes: b.nodes,
    };
    assert_eq!(plan.total_degree(), d, "ledger degree mismatch");
    assert_eq!(plan.total_genus(), g, "ledger genus mismatch");
    assert_eq!(plan.total_rho(), rh, "ledger rho mismatch");
    Ok(plan)
}

// ---------------------------------------------------------------------------
// Induction schedule
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LeafReason {
    /// m ≤ 2: handled by the degree-2 analysis.
    DegreeTwo,
    /// r = 3: handled by the plane-section analysis.
    AmbientThree,
    /// d ≤ 2r − 1: the curve is nonspecial and the section surjects.
    Nonspecial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ScheduleNode {
    Leaf {
        d: i64,
        r: i64,
        m: i64,
        reason: LeafReason,
    },
    Split {
        d: i64,
        r: i64,
        m: i64,
        d1: i64,
        d2: i64,
        children: Vec<ScheduleNode>,
    },
}

impl ScheduleNode {
    pub fn leaves(&self) -> Vec<&ScheduleNode> {
        match self {
            ScheduleNode::Leaf { .. } => vec![self],
            ScheduleNode::Split { children, .. } => {
                children.iter().flat_map(|c| c.leaves()).collect()
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serializes")
    }
}

fn schedule_node(
    d: i64,
    r: i64,
    m: i64,
    cache: &mut SplitCache,
) -> Result<ScheduleNode, PlannerError> {
    if m <= 2 {
        return Ok(ScheduleNode::Leaf { d, r, m, reason: LeafReason::DegreeTwo });
    }
    if r == 3 {
        return Ok(ScheduleNode::Leaf { d, r, m, reason: LeafReason::AmbientThree });
    }
    if d <= 2 * r - 1 {
        return Ok(ScheduleNode::Leaf { d, r, m, reason: LeafReason::Nonspecial });
    }
    let (d1, d2) = if d <= 2 * r + 1 {
        (r + 1, d - r - 1)
    } else {
        let s = split_degrees_cached(d, r, m, cache)?;
        (s.d1, s.d2)
    };
    let children = vec![
        schedule_node(d1, r, m - 1, cache)?,
        schedule_node(d2, r - 1, m, cache)?,
    ];
    Ok(ScheduleNode::Split { d, r, m, d1, d2, children })
}

/// The full reduction tree for `(d, g, r, m)`: internal nodes split the
/// degree via [`split_degrees`] (or the fixed small-degree split), children
/// descend in `m` and in `r`, and every leaf is one of the three base cases.
/// Genus is tracked only at the root through the ρ ≥ 0 requirement; the
/// splitter itself is pure degree/dimension arithmetic.
pub fn induction_schedule(d: i64, g: i64, r: i64, m: i64) -> Result<ScheduleNode, PlannerError> {
    let p = CurveParams { d, g, r };
    let rh = rho(&p);
    if rh < 0 {
        return Err(PlannerError::NegativeRho { d, g, r, rho: rh });
    }
    if m < 1 || r < 3 {
        return Err(PlannerError::OutOfRange(format!(
            "schedule requires m >= 1 and r >= 3, got m = {m}, r = {r}"
        )));
    }
    schedule_node(d, r, m, &mut SplitCache::new())
}

/// Like [`induction_schedule`] but sharing a split memo, for sweeps.
pub fn induction_schedule_cached(
    d: i64,
    g: i64,
    r: i64,
    m: i64,
    cache: &mut SplitCache,
) -> Result<ScheduleNode, PlannerError> {
    let p = CurveParams { d, g, r };
    let rh = rho(&p);
    if rh < 0 {
        return Err(PlannerError::NegativeRho { d, g, r, rho: rh });
    }
    if m < 1 || r < 3 {
        return Err(PlannerError::OutOfRange(format!(
            "schedule requires m >= 1 and r >= 3, got m = {m}, r = {r}"
        )));
    }
    schedule_node(d, r, m, cache)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_increment_examples() {
        for r in 3..=8 {
            assert_eq!(rho_increment(1, 1, r), r + 1);
            assert_eq!(rho_increment(1, 2, r), 1);
            assert_eq!(rho_increment(r, r + 2, r), 0);
        }
    }

    #[test]
    fn bounds_examples() {
        let b = bounds_ione(&CurveParams::new(10, 6, 4)).unwrap();
        assert!(b.ok);
        assert_eq!(b.bound1, Rational::new(11, 2));
        assert_eq!(b.bound2, Rational::new(15, 4));

        for r in 3..=8 {
            let b = bounds_ione(&CurveParams::new(r, 0, r)).unwrap();
            assert!(b.ok);
            assert_eq!(b.bound1, Rational::from_int(r));
        }

        assert!(matches!(
            bounds_ione(&CurveParams::new(4, 5, 3)),
            Err(PlannerError::NegativeRho { .. })
        ));
    }

    #[test]
    fn bounds_sweep_small() {
        for r in 3i64..=6 {
            for d in 1..=40 {
                for g in 0..=60 {
                    let p = CurveParams { d, g, r };
                    if rho(&p) < 0 {
                        continue;
                    }
                    assert!(bounds_ione(&p).unwrap().ok, "bounds fail at ({d}, {g}, {r})");
                }
            }
        }
    }

    #[test]
    fn split_base_and_walks() {
        let s = split_degrees(20, 4, 3).unwrap();
        assert_eq!((s.d1, s.d2), (10, 10));
        assert_eq!(s.direction, SplitDirection::Surplus);
        assert!(s.check(4, 3));

        let s = split_degrees(10, 4, 3).unwrap();
        assert_eq!(s.direction, SplitDirection::Deficit);
        assert!(s.check(4, 3));
        // The walk's deterministic answer, plus the raw inequalities.
        assert_eq!((s.d1, s.d2), (6, 4));
        assert!(4 * s.d1 >= 4 * 3 + 10);
        assert!(2 * 4 * s.d2 >= 3 * 10);
        assert!(s.d1 <= 10 && s.d2 <= 10);

        assert!(matches!(
            split_degrees(9, 4, 3),
            Err(PlannerError::OutOfRange(_))
        ));
    }

    #[test]
    fn plan_base_cases() {
        // Two rational normal curves meeting in g + 1 points.
        let r = 4;
        let plan = construction_plan(2 * r - 1, r - 1, r, r, r - 1, Variant::General).unwrap();
        assert_eq!(plan.nodes.len(), 2);
        assert_eq!(plan.nodes[0].kind, NodeKind::Rnc { degree: 4 });
        assert_eq!(plan.nodes[0].side, Side::X);
        assert_eq!(
            plan.nodes[1].kind,
            NodeKind::SecantRnc { degree: 3, secancy: 4 }
        );
        assert_eq!(plan.nodes[1].side, Side::Y);

        // (2r, r + 1): rational normal curve, 2-secant line, companion curve.
        let plan = construction_plan(2 * r, r + 1, r, r + 1, r - 1, Variant::General).unwrap();
        assert_eq!(
            plan.nodes.iter().map(|n| n.kind).collect::<Vec<_>>(),
            vec![
                NodeKind::Rnc { degree: 4 },
                NodeKind::SecantLine { secancy: 2 },
                NodeKind::SecantRnc { degree: 3, secancy: 5 },
            ]
        );

        // (3r, 2r + 2) with d2 = r - 1 selects the canonical template.
        let plan = construction_plan(12, 10, 4, 9, 3, Variant::General).unwrap();
        assert!(matches!(plan.nodes[0].kind, NodeKind::Canonical { degree: 8, genus: 5 }));
        assert_eq!(plan.total_rho(), 0);

        // (3r, 2r + 2) with d2 >= r selects the seven-component template.
        let plan = construction_plan(12, 10, 4, 6, 6, Variant::General).unwrap();
        assert_eq!(plan.total_degree(), 12);
        assert_eq!(plan.total_genus(), 10);
        assert_eq!(plan.total_rho(), 0);
    }

    #[test]
    fn plan_recursion_ledgers() {
        let plan = construction_plan(12, 9, 4, 5, 7, Variant::General).unwrap();
        assert_eq!(plan.total_degree(), 12);
        assert_eq!(plan.total_genus(), 9);
        assert_eq!(plan.total_rho(), rho(&CurveParams::new(12, 9, 4)));

        // Special branch: d < g + r - 2 peels a genus-(r + 1) chunk.
        let plan = construction_plan(16, 15, 4, 7, 9, Variant::Special).unwrap();
        assert_eq!(plan.total_degree(), 16);
        assert_eq!(plan.total_genus(), 15);
        assert_eq!(plan.total_rho(), 0);
        assert!(plan
            .nodes
            .iter()
            .any(|n| n.kind == NodeKind::SecantRnc { degree: 3, secancy: 6 }));

        // Nonspecial degree-2 variant.
        let plan = construction_plan(9, 2, 4, 3, 6, Variant::NonspecialM2).unwrap();
        assert_eq!(plan.total_degree(), 9);
        assert_eq!(plan.total_genus(), 2);
        assert!(plan.x_nonspecial);

        // Violated inequality is reported by name.
        let err = construction_plan(12, 9, 4, 3, 9, Variant::General).unwrap_err();
        assert!(matches!(err, PlannerError::Infeasible { .. }));
    }

    #[test]
    fn plan_dot_and_json_exports() {
        let plan = construction_plan(8, 5, 4, 5, 3, Variant::General).unwrap();
        let dot = plan.to_dot();
        assert!(dot.starts_with("digraph plan {"));
        assert!(dot.contains("RNC(4)"));
        assert!(plan.to_json().contains("\"nodes\""));
    }

    #[test]
    fn schedule_examples() {
        // r = 3 is a leaf for any m >= 3.
        let s = induction_schedule(6, 4, 3, 5).unwrap();
        assert!(matches!(
            s,
            ScheduleNode::Leaf { reason: LeafReason::AmbientThree, .. }
        ));

        // m = 2 is a leaf regardless of the rest.
        let s = induction_schedule(14, 5, 6, 2).unwrap();
        assert!(matches!(
            s,
            ScheduleNode::Leaf { reason: LeafReason::DegreeTwo, .. }
        ));

        // One split, both children leaves.
        let s = induction_schedule(20, 5, 4, 3).unwrap();
        match &s {
            ScheduleNode::Split { d1, d2, children, .. } => {
                assert_eq!((*d1, *d2), (10, 10));
                assert!(matches!(
                    children[0],
                    ScheduleNode::Leaf { d: 10, r: 4, m: 2, reason: LeafReason::DegreeTwo }
                ));
                assert!(matches!(
                    children[1],
                    ScheduleNode::Leaf { d: 10, r: 3, m: 3, reason: LeafReason::AmbientThree }
                ));
            }
            _ => panic!("expected a split"),
        }

        assert!(matches!(
            induction_schedule(5, 9, 4, 3),
            Err(PlannerError::NegativeRho { .. })
        ));
    }

    #[test]
    fn section_inequalities_on_grid() {
        // g < 2d + 1 - 3r whenever d >= 2r and rho > 0; g < 2d + 5 - 5r
        // whenever d < g + r - 2 and rho >= 0.
        for r in 3i64..=6 {
            for d in 1..=40 {
                for g in 0..=80 {
                    let p = CurveParams { d, g, r };
                    let rh = rho(&p);
                    if rh > 0 && d >= 2 * r {
                        assert!(g < 2 * d + 1 - 3 * r, "first inequality at ({d},{g},{r})");
                    }
                    if rh >= 0 && d < g + r - 2 {
                        assert!(g < 2 * d + 5 - 5 * r, "second inequality at ({d},{g},{r})");
                    }
                }
            }
        }
    }
}
