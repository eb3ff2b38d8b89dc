//! The projective plane side: points, conics through five points, the
//! degree-2 parametrization of a smooth conic, and plane evaluation
//! matrices.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{require_odd, GeomError};
use crate::algebra::{Matrix, PrimeField};

/// A point of the projective plane, canonicalized so the first nonzero
/// coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub coords: [u64; 3],
}

impl PlanePoint {
    pub fn new(f: PrimeField, coords: [u64; 3]) -> Result<Self, GeomError> {
        let c: Vec<u64> = coords.iter().map(|&x| f.reduce_u64(x)).collect();
        let lead = c.iter().position(|&x| x != 0).ok_or(GeomError::ZeroPoint)?;
        let inv = f.inv(c[lead]).expect("leading coordinate is nonzero");
        let mut out = [0u64; 3];
        for i in 0..3 {
            out[i] = f.mul(c[i], inv);
        }
        Ok(PlanePoint { coords: out })
    }

    pub fn random(f: PrimeField, rng: &mut ChaCha8Rng) -> Self {
        loop {
            let coords = [
                rng.random_range(0..f.modulus()),
                rng.random_range(0..f.modulus()),
                rng.random_range(0..f.modulus()),
            ];
            if let Ok(p) = PlanePoint::new(f, coords) {
                return p;
            }
        }
    }
}

/// Degree-`m` monomial exponents in three variables, ordered
/// lexicographically by descending (i, j).
pub fn plane_monomials(m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in (0..=m).rev() {
        for j in (0..=(m - i)).rev() {
            out.push((i, j, m - i - j));
        }
    }
    out
}

fn monomial_value(f: PrimeField, p: &PlanePoint, e: (usize, usize, usize)) -> u64 {
    let [x, y, z] = p.coords;
    let mut acc = f.pow(x, e.0 as u64);
    acc = f.mul(acc, f.pow(y, e.1 as u64));
    f.mul(acc, f.pow(z, e.2 as u64))
}

/// Points-by-monomials evaluation matrix for degree-`m` plane forms. The
/// rank equals the number of conditions the points impose on curves of
/// degree `m`.
pub fn eval_matrix_plane(f: PrimeField, points: &[PlanePoint], m: usize) -> Matrix {
    let monos = plane_monomials(m);
    let mut entries = Vec::with_capacity(points.len() * monos.len());
    for p in points {
        for &e in &monos {
            entries.push(monomial_value(f, p, e));
        }
    }
    Matrix::new(f, points.len(), monos.len(), entries).expect("shape consistent")
}

/// A plane conic, stored as the six coefficients of its degree-2 form in the
/// monomial order x², xy, xz, y², yz, z², scaled so the first nonzero
/// coefficient is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conic {
    pub coeffs: [u64; 6],
}

impl Conic {
    pub fn new(f: PrimeField, coeffs: [u64; 6]) -> Result<Self, GeomError> {
        let c: Vec<u64> = coeffs.iter().map(|&x| f.reduce_u64(x)).collect();
        let lead = c.iter().position(|&x| x != 0).ok_or(GeomError::ZeroPoint)?;
        let inv = f.inv(c[lead]).expect("nonzero");
        let mut out = [0u64; 6];
        for i in 0..6 {
            out[i] = f.mul(c[i], inv);
        }
        Ok(Conic { coeffs: out })
    }

    pub fn eval(&self, f: PrimeField, p: &PlanePoint) -> u64 {
        let [x, y, z] = p.coords;
        let c = self.coeffs;
        let mut acc = f.mul(c[0], f.mul(x, x));
        acc = f.add(acc, f.mul(c[1], f.mul(x, y)));
        acc = f.add(acc, f.mul(c[2], f.mul(x, z)));
        acc = f.add(acc, f.mul(c[3], f.mul(y, y)));
        acc = f.add(acc, f.mul(c[4], f.mul(y, z)));
        f.add(acc, f.mul(c[5], f.mul(z, z)))
    }

    pub fn contains(&self, f: PrimeField, p: &PlanePoint) -> bool {
        self.eval(f, p) == 0
    }

    /// Polarization: bil(u, v) with C(u + sv) = C(u) + s·bil(u, v) + s²C(v).
    fn bilinear(&self, f: PrimeField, u: &PlanePoint, v: &PlanePoint) -> u64 {
        let c = self.coeffs;
        let [ux, uy, uz] = u.coords;
        let [vx, vy, vz] = v.coords;
        let mut acc = f.mul(f.mul(2, c[0]), f.mul(ux, vx));
        acc = f.add(acc, f.mul(c[1], f.add(f.mul(ux, vy), f.mul(uy, vx))));
        acc = f.add(acc, f.mul(c[2], f.add(f.mul(ux, vz), f.mul(uz, vx))));
        acc = f.add(acc, f.mul(f.mul(2, c[3]), f.mul(uy, vy)));
        acc = f.add(acc, f.mul(c[4], f.add(f.mul(uy, vz), f.mul(uz, vy))));
        f.add(acc, f.mul(f.mul(2, c[5]), f.mul(uz, vz)))
    }

    /// Smooth iff the symmetric 3×3 matrix of the form is nonsingular.
    pub fn is_smooth(&self, f: PrimeField) -> Result<bool, GeomError> {
        require_odd(f.modulus())?;
        let half = f.inv(2).expect("p odd");
        let c = self.coeffs;
        let m = [
            [c[0], f.mul(half, c[1]), f.mul(half, c[2])],
            [f.mul(half, c[1]), c[3], f.mul(half, c[4])],
            [f.mul(half, c[2]), f.mul(half, c[4]), c[5]],
        ];
        // 3×3 determinant.
        let det = {
            let t0 = f.mul(m[0][0], f.sub(f.mul(m[1][1], m[2][2]), f.mul(m[1][2], m[2][1])));
            let t1 = f.mul(m[0][1], f.sub(f.mul(m[1][0], m[2][2]), f.mul(m[1][2], m[2][0])));
            let t2 = f.mul(m[0][2], f.sub(f.mul(m[1][0], m[2][1]), f.mul(m[1][1], m[2][0])));
            f.add(f.sub(t0, t1), t2)
        };
        Ok(det != 0)
    }
}

/// The unique conic through five points, computed as the one-dimensional
/// nullspace of the 5×6 evaluation matrix. Four collinear points (or any
/// other degeneracy inflating the nullspace) is an error.
pub fn conic_through(f: PrimeField, points: &[PlanePoint; 5]) -> Result<Conic, GeomError> {
    let mat = eval_matrix_plane(f, points, 2);
    let ns = mat.nullspace();
    if ns.len() != 1 {
        return Err(GeomError::Degenerate(format!(
            "conic through 5 points has a {}-dimensional solution space",
            ns.len()
        )));
    }
    let v = &ns[0];
    Conic::new(f, [v[0], v[1], v[2], v[3], v[4], v[5]])
}

/// Degree-2 parametrization of a smooth conic by projection from a point on
/// it: the parameter line is swept by directions, and each direction's line
/// through the base is intersected with the conic a second time.
///
/// The component forms are binary quadratics, so every parameter value maps
/// to a point of the conic; the base itself is hit at the tangent direction.
#[derive(Debug, Clone)]
pub struct ConicParam {
    conic: Conic,
    base: PlanePoint,
    /// Three binary quadratics (coefficients of t0², t0t1, t1²).
    components: [[u64; 3]; 3],
}

/// Parametrize a smooth conic from a base point lying on it.
pub fn conic_param(f: PrimeField, conic: &Conic, base: &PlanePoint) -> Result<ConicParam, GeomError> {
    if !conic.is_smooth(f)? {
        return Err(GeomError::SingularConic);
    }
    if !conic.contains(f, base) {
        return Err(GeomError::BaseNotOnConic);
    }
    // Direction line: the two coordinate points avoiding the base's leading
    // coordinate; the base is never on it.
    let lead = base
        .coords
        .iter()
        .position(|&x| x != 0)
        .expect("canonical point");
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    let mut d0 = [0u64; 3];
    d0[others[0]] = 1;
    let mut d1 = [0u64; 3];
    d1[others[1]] = 1;
    let d0 = PlanePoint { coords: d0 };
    let d1 = PlanePoint { coords: d1 };

    // L(t) = bil(base, d0) t0 + bil(base, d1) t1,
    // Q(t) = C(d0) t0² + bil(d0, d1) t0 t1 + C(d1) t1²,
    // X(t) = Q(t)·base − L(t)·(t0 d0 + t1 d1).
    let l0 = conic.bilinear(f, base, &d0);
    let l1 = conic.bilinear(f, base, &d1);
    let q0 = conic.eval(f, &d0);
    let q1 = conic.bilinear(f, &d0, &d1);
    let q2 = conic.eval(f, &d1);
    let mut components = [[0u64; 3]; 3];
    for i in 0..3 {
        let b = base.coords[i];
        components[i][0] = f.sub(f.mul(q0, b), f.mul(l0, d0.coords[i]));
        components[i][1] = f.sub(
            f.mul(q1, b),
            f.add(f.mul(l0, d1.coords[i]), f.mul(l1, d0.coords[i])),
        );
        components[i][2] = f.sub(f.mul(q2, b), f.mul(l1, d1.coords[i]));
    }
    Ok(ConicParam {
        conic: *conic,
        base: *base,
        components,
    })
}

impl ConicParam {
    pub fn conic(&self) -> &Conic {
        &self.conic
    }

    pub fn base(&self) -> &PlanePoint {
        &self.base
    }

    /// The conic point at parameter (t0 : t1).
    pub fn point_at(&self, f: PrimeField, t: &RulingParam) -> Result<PlanePoint, GeomError> {
        let (t0, t1) = (t.0, t.1);
        let sq0 = f.mul(t0, t0);
        let sq1 = f.mul(t1, t1);
        let cross = f.mul(t0, t1);
        let mut coords = [0u64; 3];
        for i in 0..3 {
            let c = self.components[i];
            coords[i] = f.add(f.add(f.mul(c[0], sq0), f.mul(c[1], cross)), f.mul(c[2], sq1));
        }
        PlanePoint::new(f, coords)
    }

    /// A random point of the conic, avoiding the listed points.
    pub fn random_point(
        &self,
        f: PrimeField,
        rng: &mut ChaCha8Rng,
        avoid: &[PlanePoint],
    ) -> PlanePoint {
        loop {
            let k = rng.random_range(0..=f.modulus());
            let t = if k == f.modulus() {
                RulingParam(1, 0)
            } else {
                RulingParam(k, 1)
            };
            if let Ok(p) = self.point_at(f, &t) {
                if !avoid.contains(&p) {
                    return p;
                }
            }
        }
    }
}

/// A parameter value on the projective line, as a raw representative pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RulingParam(pub u64, pub u64);

/// The fourth intersection point of two distinct smooth conics sharing the
/// three `known` points: sweep one conic through its parametrization and
/// collect the points where the other vanishes. Errors unless the sweep
/// finds exactly the known points plus one new one.
pub fn conic_intersection_extra(
    f: PrimeField,
    param: &ConicParam,
    other: &Conic,
    known: &[PlanePoint],
) -> Result<PlanePoint, GeomError> {
    let p = f.modulus();
    let mut extra: Option<PlanePoint> = None;
    let mut seen = Vec::new();
    let mut consider = |pt: PlanePoint| -> Result<(), GeomError> {
        if other.contains(f, &pt) && !seen.contains(&pt) {
            seen.push(pt);
            if !known.contains(&pt) {
                if let Some(prev) = extra {
                    if prev != pt {
                        return Err(GeomError::ResidualSolve(
                            "two extra intersection points".into(),
                        ));
                    }
                } else {
                    extra = Some(pt);
                }
            }
        }
        Ok(())
    };
    for t0 in 0..p {
        consider(param.point_at(f, &RulingParam(t0, 1))?)?;
    }
    consider(param.point_at(f, &RulingParam(1, 0))?)?;
    extra.ok_or_else(|| GeomError::ResidualSolve("no extra intersection point".into()))
}
