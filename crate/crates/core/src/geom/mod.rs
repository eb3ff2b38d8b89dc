//! Projective geometry over a prime field: points of the plane, of space,
//! and of the quadric surface, conics through prescribed points, evaluation
//! matrices, and rational curves on the quadric.
//!
//! Every point is stored canonically (first nonzero coordinate scaled to 1),
//! so equality is projective equality and evaluation matrices are built from
//! fixed representatives. Scaling a representative scales a whole matrix row,
//! which leaves ranks unchanged; the canonical choice merely makes runs
//! reproducible.
//!
//! The quadratic machinery (conic smoothness, fiber solving) needs `p` odd;
//! samplers additionally assume `p ≥ 5` so that small-characteristic
//! degeneracies cannot arise. The default working prime elsewhere in the
//! crate is 10007.

mod plane;
mod quadric;
mod space;

pub use plane::{
    conic_intersection_extra, conic_param, conic_through, eval_matrix_plane, plane_monomials,
    Conic, ConicParam, PlanePoint, RulingParam,
};
pub use quadric::{
    eval_matrix_quadric, intersection_number, quadric_monomials, residual_point,
    roots_of_binary_quadratic, BiForm, BidegreeClass, BidegreeCurve, Quadric22Curve, QuadricPoint,
    RulingPoint,
};
pub use space::{
    eval_matrix_space, line_quadric_points, segre, segre_inverse, space_monomials, SpacePoint,
    TwistedCubic,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("conic is singular")]
    SingularConic,
    #[error("base point does not lie on the conic")]
    BaseNotOnConic,
    #[error("unsupported curve class ({m}, {n})")]
    UnsupportedClass { m: usize, n: usize },
    #[error("point does not lie on the quadric")]
    NotOnQuadric,
    #[error("residual solve failed: {0}")]
    ResidualSolve(String),
    #[error("operation requires an odd prime p >= 5, got {0}")]
    SmallPrime(u64),
}

pub(crate) fn require_odd(p: u64) -> Result<(), GeomError> {
    if p < 5 {
        return Err(GeomError::SmallPrime(p));
    }
    Ok(())
}
