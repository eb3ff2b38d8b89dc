//! Projective 3-space: points, the Segre identification of the quadric
//! surface, the twisted cubic through six general points, and line-quadric
//! intersections.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::quadric::{roots_of_binary_quadratic, QuadricPoint, RulingPoint};
use super::GeomError;
use crate::algebra::{Matrix, PrimeField};

/// A point of projective 3-space, canonicalized (first nonzero = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpacePoint {
    pub coords: [u64; 4],
}

impl SpacePoint {
    pub fn new(f: PrimeField, coords: [u64; 4]) -> Result<Self, GeomError> {
        let c: Vec<u64> = coords.iter().map(|&x| f.reduce_u64(x)).collect();
        let lead = c.iter().position(|&x| x != 0).ok_or(GeomError::ZeroPoint)?;
        let inv = f.inv(c[lead]).expect("nonzero");
        let mut out = [0u64; 4];
        for i in 0..4 {
            out[i] = f.mul(c[i], inv);
        }
        Ok(SpacePoint { coords: out })
    }

    pub fn random(f: PrimeField, rng: &mut ChaCha8Rng) -> Self {
        loop {
            let coords = [
                rng.random_range(0..f.modulus()),
                rng.random_range(0..f.modulus()),
                rng.random_range(0..f.modulus()),
                rng.random_range(0..f.modulus()),
            ];
            if let Ok(p) = SpacePoint::new(f, coords) {
                return p;
            }
        }
    }

    /// Value of the Segre quadric x0·x3 − x1·x2 at this point.
    pub fn segre_form(&self, f: PrimeField) -> u64 {
        let [x0, x1, x2, x3] = self.coords;
        f.sub(f.mul(x0, x3), f.mul(x1, x2))
    }
}

/// The Segre embedding of a ruled point: ((u0:u1),(v0:v1)) ↦
/// (u0v0 : u0v1 : u1v0 : u1v1), landing on {x0·x3 = x1·x2}.
pub fn segre(f: PrimeField, q: &QuadricPoint) -> SpacePoint {
    let [u0, u1] = q.u.coords;
    let [v0, v1] = q.v.coords;
    SpacePoint::new(
        f,
        [f.mul(u0, v0), f.mul(u0, v1), f.mul(u1, v0), f.mul(u1, v1)],
    )
    .expect("ruled point has nonzero coordinates")
}

/// Inverse of the Segre embedding for points on the quadric.
pub fn segre_inverse(f: PrimeField, p: &SpacePoint) -> Result<QuadricPoint, GeomError> {
    if p.segre_form(f) != 0 {
        return Err(GeomError::NotOnQuadric);
    }
    let [x0, x1, x2, x3] = p.coords;
    let u = if x0 != 0 || x2 != 0 {
        RulingPoint::new(f, [x0, x2])?
    } else {
        RulingPoint::new(f, [x1, x3])?
    };
    let v = if x0 != 0 || x1 != 0 {
        RulingPoint::new(f, [x0, x1])?
    } else {
        RulingPoint::new(f, [x2, x3])?
    };
    let q = QuadricPoint::new(u, v);
    debug_assert_eq!(segre(f, &q), *p);
    Ok(q)
}

/// The two intersection points of the line through `a` and `b` with the
/// Segre quadric, as ruled points. `None` unless the quadratic splits into
/// two distinct rational points (callers resample).
pub fn line_quadric_points(
    f: PrimeField,
    a: &SpacePoint,
    b: &SpacePoint,
) -> Option<(QuadricPoint, QuadricPoint)> {
    let bil = {
        let [a0, a1, a2, a3] = a.coords;
        let [b0, b1, b2, b3] = b.coords;
        f.sub(
            f.add(f.mul(a0, b3), f.mul(a3, b0)),
            f.add(f.mul(a1, b2), f.mul(a2, b1)),
        )
    };
    let qa = a.segre_form(f);
    let qb = b.segre_form(f);
    let roots = roots_of_binary_quadratic(f, qa, bil, qb)?;
    if roots.len() != 2 {
        return None;
    }
    let to_point = |s: &RulingPoint| -> Option<QuadricPoint> {
        let [s0, s1] = s.coords;
        let mut coords = [0u64; 4];
        for i in 0..4 {
            coords[i] = f.add(f.mul(s0, a.coords[i]), f.mul(s1, b.coords[i]));
        }
        let p = SpacePoint::new(f, coords).ok()?;
        segre_inverse(f, &p).ok()
    };
    Some((to_point(&roots[0])?, to_point(&roots[1])?))
}

/// Degree-`m` monomial exponents in four variables, lexicographic by
/// descending (i, j, k).
pub fn space_monomials(m: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for i in (0..=m).rev() {
        for j in (0..=(m - i)).rev() {
            for k in (0..=(m - i - j)).rev() {
                out.push((i, j, k, m - i - j - k));
            }
        }
    }
    out
}

/// Points-by-monomials evaluation matrix for degree-`m` forms on P³.
pub fn eval_matrix_space(f: PrimeField, points: &[SpacePoint], m: usize) -> Matrix {
    let monos = space_monomials(m);
    let mut entries = Vec::with_capacity(points.len() * monos.len());
    for p in points {
        let [x, y, z, w] = p.coords;
        for &(i, j, k, l) in &monos {
            let mut acc = f.pow(x, i as u64);
            acc = f.mul(acc, f.pow(y, j as u64));
            acc = f.mul(acc, f.pow(z, k as u64));
            entries.push(f.mul(acc, f.pow(w, l as u64)));
        }
    }
    Matrix::new(f, points.len(), monos.len(), entries).expect("shape consistent")
}

/// The twisted cubic through six points of P³ in general position,
/// with an explicit degree-3 parametrization and the six parameter values
/// of the base points.
///
/// Construction: move the first four points to the coordinate frame; in
/// frame coordinates the cubic through the frame plus two points P, P' is
/// `t ↦ (λ_i / (t − a_i))_i` with poles `a_i = P'_i / P_i` and residues
/// `λ_i = P'_i`, hitting P at t = 0 and P' at t = ∞.
#[derive(Debug, Clone)]
pub struct TwistedCubic {
    /// Binary cubic coefficient vectors of the four coordinates, in the
    /// original frame.
    components: [[u64; 4]; 4],
    base_params: [RulingPoint; 6],
}

impl TwistedCubic {
    pub fn through(f: PrimeField, pts: &[SpacePoint; 6]) -> Result<Self, GeomError> {
        let frame = Matrix::new(
            f,
            4,
            4,
            (0..4)
                .flat_map(|row| (0..4).map(move |col| pts[col].coords[row]))
                .collect(),
        )
        .expect("4x4");
        let inv = frame
            .inverse()
            .ok_or_else(|| GeomError::Degenerate("first four points are coplanar".into()))?;
        let p5 = inv.apply(&pts[4].coords);
        let p6 = inv.apply(&pts[5].coords);
        if p5.iter().any(|&x| x == 0) || p6.iter().any(|&x| x == 0) {
            return Err(GeomError::Degenerate(
                "a point lies in a coordinate plane of the frame".into(),
            ));
        }
        let mut poles = [0u64; 4];
        for i in 0..4 {
            poles[i] = f.div(p6[i], p5[i]).expect("nonzero");
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if poles[i] == poles[j] {
                    return Err(GeomError::Degenerate("coincident poles".into()));
                }
            }
        }
        // Frame-coordinate cubics: y_i(t0, t1) = p6_i · Π_{j≠i} (t0 − a_j t1).
        let mut frame_cubics = [[0u64; 4]; 4];
        for i in 0..4 {
            let mut poly = vec![p6[i]];
            for j in 0..4 {
                if j == i {
                    continue;
                }
                // Multiply by (t0 − a_j t1): coefficients in ascending t1-power.
                let mut next = vec![0u64; poly.len() + 1];
                for (k, &c) in poly.iter().enumerate() {
                    next[k] = f.add(next[k], c);
                    next[k + 1] = f.sub(next[k + 1], f.mul(c, poles[j]));
                }
                poly = next;
            }
            for (k, &c) in poly.iter().enumerate() {
                frame_cubics[i][k] = c;
            }
        }
        // Push forward to the original coordinates through the frame matrix.
        let mut components = [[0u64; 4]; 4];
        for row in 0..4 {
            for k in 0..4 {
                let mut acc = 0u64;
                for i in 0..4 {
                    acc = f.add(acc, f.mul(frame.get(row, i), frame_cubics[i][k]));
                }
                components[row][k] = acc;
            }
        }
        let base_params = [
            RulingPoint::new(f, [poles[0], 1])?,
            RulingPoint::new(f, [poles[1], 1])?,
            RulingPoint::new(f, [poles[2], 1])?,
            RulingPoint::new(f, [poles[3], 1])?,
            RulingPoint::new(f, [0, 1])?,
            RulingPoint::new(f, [1, 0])?,
        ];
        let cubic = TwistedCubic {
            components,
            base_params,
        };
        for (param, expect) in cubic.base_params.iter().zip(pts.iter()) {
            if cubic.point_at(f, param)? != *expect {
                return Err(GeomError::Degenerate(
                    "parametrization misses a base point".into(),
                ));
            }
        }
        Ok(cubic)
    }

    /// Parameter values mapping to the six defining points.
    pub fn base_params(&self) -> &[RulingPoint; 6] {
        &self.base_params
    }

    pub fn point_at(&self, f: PrimeField, t: &RulingPoint) -> Result<SpacePoint, GeomError> {
        let [t0, t1] = t.coords;
        let mut coords = [0u64; 4];
        let powers: Vec<u64> = (0..4)
            .map(|k| f.mul(f.pow(t0, (3 - k) as u64), f.pow(t1, k as u64)))
            .collect();
        for i in 0..4 {
            let mut acc = 0u64;
            for k in 0..4 {
                acc = f.add(acc, f.mul(self.components[i][k], powers[k]));
            }
            coords[i] = acc;
        }
        SpacePoint::new(f, coords)
    }

    /// A random curve point away from the base parameters and the quadric.
    pub fn random_point_off_quadric(
        &self,
        f: PrimeField,
        rng: &mut ChaCha8Rng,
    ) -> SpacePoint {
        loop {
            let t = RulingPoint::random(f, rng);
            if self.base_params.contains(&t) {
                continue;
            }
            if let Ok(p) = self.point_at(f, &t) {
                if p.segre_form(f) != 0 {
                    return p;
                }
            }
        }
    }

    /// Coefficients (ascending in the second parameter coordinate) of the
    /// binary cubic obtained by restricting a linear form to the curve.
    pub fn pullback_linear_form(&self, f: PrimeField, l: &[u64; 4]) -> [u64; 4] {
        let mut out = [0u64; 4];
        for k in 0..4 {
            let mut acc = 0u64;
            for i in 0..4 {
                acc = f.add(acc, f.mul(l[i], self.components[i][k]));
            }
            out[k] = acc;
        }
        out
    }

    /// Reject parametrizations of curves contained in the Segre quadric: a
    /// sextic with seven zeros vanishes identically, so three on-quadric
    /// points beyond the six base points certify containment.
    pub fn lies_on_segre_quadric(&self, f: PrimeField) -> bool {
        let mut checked = 0;
        for x in 0..f.modulus() {
            let t = RulingPoint::affine(f, x);
            if self.base_params.contains(&t) {
                continue;
            }
            let Ok(p) = self.point_at(f, &t) else {
                continue;
            };
            if p.segre_form(f) != 0 {
                return false;
            }
            checked += 1;
            if checked >= 3 {
                return true;
            }
        }
        true
    }
}
