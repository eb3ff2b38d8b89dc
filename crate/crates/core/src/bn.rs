//! Brill–Noether bookkeeping: the invariant ρ, defining-curve signatures,
//! dimension thresholds, the quadric obstruction, and the exception tables
//! that the rank verifiers check against.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BnError {
    #[error("rho({d}, {g}, {r}) = {rho} is negative")]
    NegativeRho { d: i64, g: i64, r: i64, rho: i64 },
}

/// The discrete parameters of an embedded curve: degree, genus, ambient
/// projective dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveParams {
    pub d: i64,
    pub g: i64,
    pub r: i64,
}

impl CurveParams {
    pub fn new(d: i64, g: i64, r: i64) -> Self {
        assert!(d >= 1 && g >= 0 && r >= 2, "invalid curve parameters");
        CurveParams { d, g, r }
    }

    pub fn rho(&self) -> i64 {
        rho(self)
    }

    /// `true` exactly when ρ ≥ 0.
    pub fn is_bn_valid(&self) -> bool {
        self.rho() >= 0
    }

    /// Nonspecial in the limit sense: `d ≥ g + r`.
    pub fn is_nonspecial(&self) -> bool {
        self.d >= self.g + self.r
    }
}

/// ρ(d, g, r) = (r + 1)d − rg − r(r + 1).
pub fn rho(p: &CurveParams) -> i64 {
    (p.r + 1) * p.d - p.r * p.g - p.r * (p.r + 1)
}

/// Exact binomial coefficient with overflow checks.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial overflow");
        acc /= (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Signature `(a, b, c)` of a defining curve: a twisted cubic together with
/// `a` 1-secant lines, `b` 2-secant lines, and `c` 5-secant twisted cubics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signature {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Signature {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Signature { a, b, c }
    }

    pub fn degree(&self) -> usize {
        self.a + self.b + 3 * (self.c + 1)
    }

    pub fn genus(&self) -> usize {
        self.b + 4 * self.c
    }

    /// Number of plane points in the conic collection drawn from this
    /// signature: the three base points plus `a + b + 3c` more.
    pub fn plane_points(&self) -> usize {
        self.a + self.b + 3 * self.c + 3
    }

    /// Number of quadric points in the elliptic collection drawn from this
    /// signature: `2a + 2b + 6(c + 1)`.
    pub fn quadric_points(&self) -> usize {
        2 * self.a + 2 * self.b + 6 * (self.c + 1)
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All signatures with degree `d` and genus `g`, ordered by decreasing `c`.
/// Nonempty whenever ρ(d, g, 3) ≥ 0.
pub fn defining_signatures(d: i64, g: i64) -> Result<Vec<Signature>, BnError> {
    let params = CurveParams::new(d, g.max(0), 3);
    let r = rho(&CurveParams { d, g, r: 3 });
    if r < 0 {
        return Err(BnError::NegativeRho { d, g, r: 3, rho: r });
    }
    let _ = params;
    let mut out = Vec::new();
    let mut c = g / 4;
    while c >= 0 {
        let b = g - 4 * c;
        let a = d - b - 3 * (c + 1);
        if a >= 0 {
            out.push(Signature::new(a as usize, b as usize, c as usize));
        }
        c -= 1;
    }
    assert!(
        !out.is_empty(),
        "rho(d, g, 3) >= 0 guarantees at least one signature"
    );
    Ok(out)
}

/// dim H⁰(O_H(m)) for a hyperplane H ⊂ P^r: binom(m + r − 1, r − 1).
pub fn plane_threshold(m: u64, r: u64) -> u64 {
    assert!(m >= 1 && r >= 2);
    binom(m + r - 1, r - 1)
}

/// dim H⁰(O_Q(m, n)) on the quadric surface: (m + 1)(n + 1).
pub fn quadric_dim(m: u64, n: u64) -> u64 {
    (m + 1) * (n + 1)
}

/// Outcome of the degree-2 obstruction test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadricObstruction {
    pub obstructed: bool,
    /// When obstructed, the guaranteed dimension surplus
    /// (r(r + 3) − (4d − 2g)) / 2 of quadrics through the curve.
    pub deficiency: Option<i64>,
}

/// The m = 2 failure criterion: `d < g + r` and `4d − 2g < r(r + 3)` force
/// the curve onto a quadric and break maximal rank for the section.
pub fn quadric_obstructed(p: &CurveParams) -> QuadricObstruction {
    let lhs = 4 * p.d - 2 * p.g;
    let rhs = p.r * (p.r + 3);
    if p.d < p.g + p.r && lhs < rhs {
        QuadricObstruction {
            obstructed: true,
            deficiency: Some((rhs - lhs) / 2),
        }
    } else {
        QuadricObstruction {
            obstructed: false,
            deficiency: None,
        }
    }
}

/// The exception table for quadric sections, keyed by bidegree, plus the
/// hyperplane-section caveat at m = 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionTables {
    pub rows: Vec<ExceptionRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionRow {
    pub class: (u64, u64),
    pub pairs: Vec<(i64, i64)>,
}

impl ExceptionTables {
    pub fn query(&self, m: u64, n: u64) -> &[(i64, i64)] {
        self.rows
            .iter()
            .find(|row| row.class == (m, n))
            .map(|row| row.pairs.as_slice())
            .unwrap_or(&[])
    }

    /// The caveat region of the hyperplane-section statement: failures can
    /// only occur when m = 2 and the curve is special (d < g + r).
    pub fn hyperplane_caveat(m: i64, p: &CurveParams) -> bool {
        m == 2 && p.d < p.g + p.r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// The (d, g) pairs failing maximal rank at each quadric bidegree.
pub fn exception_tables() -> ExceptionTables {
    ExceptionTables {
        rows: vec![
            ExceptionRow {
                class: (2, 2),
                pairs: vec![(6, 4), (5, 2), (4, 1)],
            },
            ExceptionRow {
                class: (3, 3),
                pairs: vec![(6, 4), (8, 6), (7, 5)],
            },
            ExceptionRow {
                class: (2, 3),
                pairs: vec![(6, 4)],
            },
        ],
    }
}
