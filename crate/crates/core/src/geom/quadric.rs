//! Geometry on the quadric surface, modeled as a product of two projective
//! lines: bihomogeneous forms, evaluation matrices, rational curves of low
//! bidegree, and smooth curves of bidegree (2, 2) with exact fiber solving.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{require_odd, GeomError};
use crate::algebra::{poly, Matrix, PrimeField};

/// A point of the projective line, canonicalized (first nonzero = 1); the
/// pair (c0 : c1) represents the value c1/c0, so `affine(x)` is `[1, x]` and
/// the point at infinity is `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RulingPoint {
    pub coords: [u64; 2],
}

impl RulingPoint {
    pub fn new(f: PrimeField, coords: [u64; 2]) -> Result<Self, GeomError> {
        let c = [f.reduce_u64(coords[0]), f.reduce_u64(coords[1])];
        if c[0] == 0 && c[1] == 0 {
            return Err(GeomError::ZeroPoint);
        }
        if c[0] != 0 {
            let inv = f.inv(c[0]).unwrap();
            Ok(RulingPoint {
                coords: [1, f.mul(c[1], inv)],
            })
        } else {
            Ok(RulingPoint { coords: [0, 1] })
        }
    }

    pub fn affine(f: PrimeField, x: u64) -> Self {
        RulingPoint {
            coords: [1, f.reduce_u64(x)],
        }
    }

    pub fn infinity() -> Self {
        RulingPoint { coords: [0, 1] }
    }

    /// Enumerate all p + 1 points of the line.
    pub fn all(f: PrimeField) -> impl Iterator<Item = RulingPoint> {
        (0..f.modulus())
            .map(move |x| RulingPoint::affine(f, x))
            .chain(std::iter::once(RulingPoint::infinity()))
    }

    pub fn random(f: PrimeField, rng: &mut ChaCha8Rng) -> Self {
        let k = rng.random_range(0..=f.modulus());
        if k == f.modulus() {
            RulingPoint::infinity()
        } else {
            RulingPoint::affine(f, k)
        }
    }
}

/// A point of the quadric surface: one coordinate on each ruling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadricPoint {
    pub u: RulingPoint,
    pub v: RulingPoint,
}

impl QuadricPoint {
    pub fn new(u: RulingPoint, v: RulingPoint) -> Self {
        QuadricPoint { u, v }
    }

    pub fn random(f: PrimeField, rng: &mut ChaCha8Rng) -> Self {
        QuadricPoint {
            u: RulingPoint::random(f, rng),
            v: RulingPoint::random(f, rng),
        }
    }

    /// Swap the two rulings.
    pub fn transposed(&self) -> QuadricPoint {
        QuadricPoint { u: self.v, v: self.u }
    }
}

/// A curve class (m, n) on the quadric surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct BidegreeClass {
    pub m: usize,
    pub n: usize,
}

impl BidegreeClass {
    pub fn new(m: usize, n: usize) -> Self {
        BidegreeClass { m, n }
    }

    /// dim H⁰ of forms of this bidegree.
    pub fn form_dim(&self) -> usize {
        (self.m + 1) * (self.n + 1)
    }

    /// Degree of the class restricted to a curve of class `other`.
    pub fn restricted_degree(&self, other: &BidegreeClass) -> usize {
        intersection_number(self, other)
    }
}

/// Intersection number of two curve classes: m1·n2 + m2·n1.
pub fn intersection_number(c1: &BidegreeClass, c2: &BidegreeClass) -> usize {
    c1.m * c2.n + c2.m * c1.n
}

/// Bihomogeneous monomial exponents (i, j) for class (m, n), meaning the
/// monomial u0^(m−i) u1^i v0^(n−j) v1^j, ordered row-major in (i, j).
pub fn quadric_monomials(class: BidegreeClass) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(class.form_dim());
    for i in 0..=class.m {
        for j in 0..=class.n {
            out.push((i, j));
        }
    }
    out
}

fn monomial_value(f: PrimeField, p: &QuadricPoint, class: BidegreeClass, e: (usize, usize)) -> u64 {
    let [u0, u1] = p.u.coords;
    let [v0, v1] = p.v.coords;
    let mut acc = f.pow(u0, (class.m - e.0) as u64);
    acc = f.mul(acc, f.pow(u1, e.0 as u64));
    acc = f.mul(acc, f.pow(v0, (class.n - e.1) as u64));
    f.mul(acc, f.pow(v1, e.1 as u64))
}

/// Points-by-monomials evaluation matrix for forms of the given bidegree.
pub fn eval_matrix_quadric(f: PrimeField, points: &[QuadricPoint], class: BidegreeClass) -> Matrix {
    let monos = quadric_monomials(class);
    let mut entries = Vec::with_capacity(points.len() * monos.len());
    for p in points {
        for &e in &monos {
            entries.push(monomial_value(f, p, class, e));
        }
    }
    Matrix::new(f, points.len(), monos.len(), entries).expect("shape consistent")
}

/// A bihomogeneous form, coefficients indexed like [`quadric_monomials`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiForm {
    pub class: BidegreeClass,
    pub coeffs: Vec<u64>,
}

impl BiForm {
    pub fn new(f: PrimeField, class: BidegreeClass, coeffs: Vec<u64>) -> Result<Self, GeomError> {
        assert_eq!(coeffs.len(), class.form_dim());
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| f.reduce_u64(c)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            return Err(GeomError::ZeroPoint);
        }
        Ok(BiForm { class, coeffs })
    }

    pub fn eval(&self, f: PrimeField, p: &QuadricPoint) -> u64 {
        let monos = quadric_monomials(self.class);
        let mut acc = 0u64;
        for (c, &e) in self.coeffs.iter().zip(monos.iter()) {
            acc = f.add(acc, f.mul(*c, monomial_value(f, p, self.class, e)));
        }
        acc
    }

    pub fn vanishes_at(&self, f: PrimeField, p: &QuadricPoint) -> bool {
        self.eval(f, p) == 0
    }
}

/// Distinct projective roots of the binary quadratic a·v0² + b·v0v1 + c·v1².
/// Returns `None` when the form is identically zero. Requires p odd.
pub fn roots_of_binary_quadratic(
    f: PrimeField,
    a: u64,
    b: u64,
    c: u64,
) -> Option<Vec<RulingPoint>> {
    if a == 0 && b == 0 && c == 0 {
        return None;
    }
    if a == 0 {
        // v1 · (b·v0 + c·v1)
        let mut roots = vec![RulingPoint { coords: [1, 0] }];
        if b != 0 {
            let r = RulingPoint::new(f, [f.neg(c), b]).unwrap();
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        return Some(roots);
    }
    // Roots with v1 ≠ 0: a x² + b x + c = 0 for x = v0/v1.
    let disc = f.sub(f.mul(b, b), f.mul(f.mul(4, a), c));
    let Some(s) = f.sqrt(disc) else {
        return Some(vec![]);
    };
    let half = f.inv(f.mul(2, a)).expect("a nonzero, p odd");
    let x1 = f.mul(f.add(f.neg(b), s), half);
    let x2 = f.mul(f.sub(f.neg(b), s), half);
    let mut roots = vec![RulingPoint { coords: [x1, 1] }];
    if x2 != x1 {
        roots.push(RulingPoint { coords: [x2, 1] });
    }
    // Canonicalize to leading-one form.
    Some(
        roots
            .into_iter()
            .map(|r| RulingPoint::new(f, [r.coords[0], r.coords[1]]).unwrap())
            .collect(),
    )
}

fn eval_binary_form(f: PrimeField, coeffs: &[u64], t: &RulingPoint) -> u64 {
    let d = coeffs.len() - 1;
    let [t0, t1] = t.coords;
    let mut acc = 0u64;
    for (i, &c) in coeffs.iter().enumerate() {
        let term = f.mul(f.pow(t0, (d - i) as u64), f.pow(t1, i as u64));
        acc = f.add(acc, f.mul(c, term));
    }
    acc
}

/// True when the pair of binary forms has a common projective root (so the
/// induced map to the line drops degree or is undefined somewhere).
fn has_common_root(f: PrimeField, a: &[u64], b: &[u64]) -> bool {
    if a[0] == 0 && b[0] == 0 {
        return true;
    }
    // Affine chart: coefficient of x^k is coeffs[d - k].
    let to_affine = |c: &[u64]| -> Vec<u64> { c.iter().rev().copied().collect() };
    let g = poly::gcd(f, &to_affine(a), &to_affine(b));
    poly::deg(&g) > Some(0)
}

/// A rational curve on the quadric given as a graph over the parameter
/// line: `t ↦ (u(t), v(t))` where `u` has degree n and `v` degree m for a
/// curve of class (m, n). Supports the four classes used by the secant
/// constructions.
#[derive(Debug, Clone)]
pub struct BidegreeCurve {
    pub class: BidegreeClass,
    u_map: [Vec<u64>; 2],
    v_map: [Vec<u64>; 2],
}

fn sample_map(f: PrimeField, degree: usize, rng: &mut ChaCha8Rng) -> [Vec<u64>; 2] {
    loop {
        let a: Vec<u64> = (0..=degree).map(|_| rng.random_range(0..f.modulus())).collect();
        let b: Vec<u64> = (0..=degree).map(|_| rng.random_range(0..f.modulus())).collect();
        if degree == 0 {
            if a[0] != 0 || b[0] != 0 {
                return [a, b];
            }
            continue;
        }
        if !has_common_root(f, &a, &b) {
            return [a, b];
        }
    }
}

impl BidegreeCurve {
    /// Sample a curve of the given class; only the rational graph classes
    /// (1,0), (0,1), (1,2), (2,1) are supported.
    pub fn sample(
        f: PrimeField,
        class: BidegreeClass,
        rng: &mut ChaCha8Rng,
    ) -> Result<Self, GeomError> {
        match (class.m, class.n) {
            (1, 0) | (0, 1) | (1, 2) | (2, 1) => {}
            (m, n) => return Err(GeomError::UnsupportedClass { m, n }),
        }
        let u_map = sample_map(f, class.n, rng);
        let v_map = sample_map(f, class.m, rng);
        Ok(BidegreeCurve { class, u_map, v_map })
    }

    pub fn point_at(&self, f: PrimeField, t: &RulingPoint) -> QuadricPoint {
        let u = RulingPoint::new(
            f,
            [
                eval_binary_form(f, &self.u_map[0], t),
                eval_binary_form(f, &self.u_map[1], t),
            ],
        )
        .expect("maps have no common root");
        let v = RulingPoint::new(
            f,
            [
                eval_binary_form(f, &self.v_map[0], t),
                eval_binary_form(f, &self.v_map[1], t),
            ],
        )
        .expect("maps have no common root");
        QuadricPoint { u, v }
    }

    /// `count` distinct curve points avoiding the given list.
    pub fn random_points(
        &self,
        f: PrimeField,
        count: usize,
        rng: &mut ChaCha8Rng,
        avoid: &[QuadricPoint],
    ) -> Vec<QuadricPoint> {
        let mut out: Vec<QuadricPoint> = Vec::with_capacity(count);
        while out.len() < count {
            let t = RulingPoint::random(f, rng);
            let p = self.point_at(f, &t);
            if !avoid.contains(&p) && !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

/// A smooth curve of class (2, 2) on the quadric — an elliptic normal curve
/// in its ruled presentation. Smoothness is certified at construction by
/// squarefreeness of the fiber discriminant.
#[derive(Debug, Clone)]
pub struct Quadric22Curve {
    form: BiForm,
}

impl Quadric22Curve {
    pub fn new(f: PrimeField, form: BiForm) -> Result<Self, GeomError> {
        require_odd(f.modulus())?;
        assert_eq!(form.class, BidegreeClass::new(2, 2));
        let curve = Quadric22Curve { form };
        if !curve.is_smooth(f) {
            return Err(GeomError::Degenerate("singular (2,2) form".into()));
        }
        Ok(curve)
    }

    pub fn form(&self) -> &BiForm {
        &self.form
    }

    pub fn contains(&self, f: PrimeField, p: &QuadricPoint) -> bool {
        self.form.vanishes_at(f, p)
    }

    /// Coefficient forms in u of the fiber quadratic in v:
    /// F = P0(u)·v0² + P1(u)·v0v1 + P2(u)·v1².
    fn v_coefficient_forms(&self) -> [[u64; 3]; 3] {
        let mut out = [[0u64; 3]; 3];
        for i in 0..=2 {
            for j in 0..=2 {
                out[j][i] = self.form.coeffs[i * 3 + j];
            }
        }
        out
    }

    fn is_smooth(&self, f: PrimeField) -> bool {
        let [p0, p1, p2] = self.v_coefficient_forms();
        // Discriminant quartic in u, by convolution.
        let mut disc = [0u64; 5];
        for i in 0..3 {
            for j in 0..3 {
                let term = f.sub(
                    f.mul(p1[i], p1[j]),
                    f.mul(4, f.mul(p0[i], p2[j])),
                );
                disc[i + j] = f.add(disc[i + j], term);
            }
        }
        // Affine chart x = u1/u0: g(x) = Σ disc[i] x^i; the point (0:1) is a
        // root of multiplicity 4 − deg g.
        let g: Vec<u64> = disc.to_vec();
        match poly::deg(&g) {
            None => false,
            Some(d) if d < 3 => false,
            Some(_) => poly::is_squarefree(f, &g),
        }
    }

    /// The curve points over a fixed first-ruling coordinate (0, 1, or 2).
    pub fn fiber(&self, f: PrimeField, u: &RulingPoint) -> Vec<QuadricPoint> {
        let [p0, p1, p2] = self.v_coefficient_forms();
        let a = eval_binary_form(f, &p0, u);
        let b = eval_binary_form(f, &p1, u);
        let c = eval_binary_form(f, &p2, u);
        match roots_of_binary_quadratic(f, a, b, c) {
            // The fiber quadratic cannot vanish identically on a smooth curve.
            None => unreachable!("smooth (2,2) curve contains no ruling"),
            Some(roots) => roots
                .into_iter()
                .map(|v| QuadricPoint { u: *u, v })
                .collect(),
        }
    }

    /// A random smooth (2, 2) curve through the given points: a random
    /// element of the interpolation kernel, retried until smooth.
    pub fn through_points(
        f: PrimeField,
        points: &[QuadricPoint],
        rng: &mut ChaCha8Rng,
    ) -> Result<Self, GeomError> {
        let class = BidegreeClass::new(2, 2);
        let mat = eval_matrix_quadric(f, points, class);
        let basis = mat.nullspace();
        if basis.len() != 9 - points.len() {
            return Err(GeomError::Degenerate(format!(
                "{} points impose dependent conditions on (2,2) forms",
                points.len()
            )));
        }
        if basis.is_empty() {
            return Err(GeomError::Degenerate("no (2,2) form through points".into()));
        }
        for _ in 0..64 {
            let mut coeffs = vec![0u64; class.form_dim()];
            for b in &basis {
                let lambda = rng.random_range(0..f.modulus());
                for (c, &bc) in coeffs.iter_mut().zip(b.iter()) {
                    *c = f.add(*c, f.mul(lambda, bc));
                }
            }
            let Ok(form) = BiForm::new(f, class, coeffs) else {
                continue;
            };
            if let Ok(curve) = Quadric22Curve::new(f, form) {
                debug_assert!(points.iter().all(|p| curve.contains(f, p)));
                return Ok(curve);
            }
        }
        Err(GeomError::Degenerate(
            "no smooth (2,2) curve found through the points".into(),
        ))
    }

    /// A random curve point avoiding the given list.
    pub fn random_point(
        &self,
        f: PrimeField,
        rng: &mut ChaCha8Rng,
        avoid: &[QuadricPoint],
    ) -> QuadricPoint {
        loop {
            let u = RulingPoint::random(f, rng);
            let fiber = self.fiber(f, &u);
            if fiber.is_empty() {
                continue;
            }
            let p = fiber[rng.random_range(0..fiber.len())];
            if !avoid.contains(&p) {
                return p;
            }
        }
    }

    /// Distinct test points on the curve, skipping the given list; scans
    /// fibers deterministically from u = 0.
    fn test_points(&self, f: PrimeField, count: usize, skip: &[QuadricPoint]) -> Vec<QuadricPoint> {
        let mut out = Vec::with_capacity(count);
        for u in RulingPoint::all(f) {
            for p in self.fiber(f, &u) {
                if !skip.contains(&p) {
                    out.push(p);
                    if out.len() == count {
                        return out;
                    }
                }
            }
        }
        out
    }
}

/// Solve for the residual point of an interpolation divisor on a smooth
/// (2, 2) curve: given `2(s + t) − 1` distinct curve points and a class
/// (s, t), the forms of that class through the points cut the curve in
/// exactly one further point, which this returns.
///
/// Errors when the kernel has unexpected dimension, when every kernel
/// element vanishes on the curve, or when the sweep does not find exactly
/// one new point (all of which callers treat as resample signals).
pub fn residual_point(
    f: PrimeField,
    curve: &Quadric22Curve,
    known: &[QuadricPoint],
    class: BidegreeClass,
) -> Result<QuadricPoint, GeomError> {
    let degree = 2 * (class.m + class.n);
    assert_eq!(
        known.len(),
        degree - 1,
        "residual interpolation needs 2(s + t) - 1 points"
    );
    debug_assert!(known.iter().all(|p| curve.contains(f, p)));
    let mat = eval_matrix_quadric(f, known, class);
    let basis = mat.nullspace();
    let curve_multiples = class.m.saturating_sub(1) * class.n.saturating_sub(1);
    if basis.len() != curve_multiples + 1 {
        return Err(GeomError::ResidualSolve(format!(
            "kernel dimension {} instead of {}",
            basis.len(),
            curve_multiples + 1
        )));
    }
    // Pick a kernel form that does not vanish identically on the curve: a
    // nonzero section of the restricted bundle has at most `degree` zeros,
    // so vanishing at degree + 1 fresh points means vanishing identically.
    let probes = curve.test_points(f, degree + 1, known);
    if probes.len() < degree + 1 {
        return Err(GeomError::ResidualSolve("too few curve points to probe".into()));
    }
    let mut chosen: Option<BiForm> = None;
    for b in &basis {
        let Ok(form) = BiForm::new(f, class, b.clone()) else {
            continue;
        };
        if probes.iter().any(|p| !form.vanishes_at(f, p)) {
            chosen = Some(form);
            break;
        }
    }
    let form = chosen.ok_or_else(|| {
        GeomError::ResidualSolve("every kernel form vanishes on the curve".into())
    })?;
    // Sweep the whole curve for zeros of the chosen form.
    let mut fresh: Option<QuadricPoint> = None;
    for u in RulingPoint::all(f) {
        for p in curve.fiber(f, &u) {
            if form.vanishes_at(f, &p) && !known.contains(&p) {
                match fresh {
                    None => fresh = Some(p),
                    Some(prev) if prev == p => {}
                    Some(_) => {
                        return Err(GeomError::ResidualSolve(
                            "more than one residual zero".into(),
                        ))
                    }
                }
            }
        }
    }
    fresh.ok_or_else(|| GeomError::ResidualSolve("residual zero collides with a known point".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn field() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    #[test]
    fn intersection_numbers() {
        let c = BidegreeClass::new;
        assert_eq!(intersection_number(&c(1, 2), &c(2, 1)), 5);
        assert_eq!(intersection_number(&c(1, 0), &c(0, 1)), 1);
        assert_eq!(intersection_number(&c(1, 2), &c(1, 0)), 2);
        assert_eq!(intersection_number(&c(2, 2), &c(2, 2)), 8);
        // Symmetric and bilinear.
        for (a, b) in [((1, 2), (2, 1)), ((2, 2), (1, 3)), ((0, 1), (1, 0))] {
            let (ca, cb) = (c(a.0, a.1), c(b.0, b.1));
            assert_eq!(intersection_number(&ca, &cb), intersection_number(&cb, &ca));
            let doubled = c(2 * a.0, 2 * a.1);
            assert_eq!(
                intersection_number(&doubled, &cb),
                2 * intersection_number(&ca, &cb)
            );
        }
    }

    #[test]
    fn eval_matrix_shapes_and_ranks() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pt = QuadricPoint::random(f, &mut rng);
        let m = eval_matrix_quadric(f, &[pt], BidegreeClass::new(0, 0));
        assert_eq!((m.rows(), m.cols(), m.rank()), (1, 1, 1));

        let mut pts = Vec::new();
        while pts.len() < 9 {
            let p = QuadricPoint::random(f, &mut rng);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        assert_eq!(eval_matrix_quadric(f, &pts, BidegreeClass::new(2, 2)).rank(), 9);
    }

    #[test]
    fn binary_quadratic_roots() {
        let f = field();
        // x² - 1: roots (1:1), (-1:1).
        let roots = roots_of_binary_quadratic(f, 1, 0, f.neg(1)).unwrap();
        assert_eq!(roots.len(), 2);
        // Leading coefficient zero: root at infinity plus one affine root.
        let roots = roots_of_binary_quadratic(f, 0, 1, 5).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&RulingPoint::new(f, [1, 0]).unwrap()));
        // Irreducible quadratic: no rational roots.
        let mut non_residue = 2;
        while f.is_square(non_residue) {
            non_residue += 1;
        }
        let roots = roots_of_binary_quadratic(f, 1, 0, f.neg(non_residue)).unwrap();
        assert!(roots.is_empty());
        assert_eq!(roots_of_binary_quadratic(f, 0, 0, 0), None);
    }

    #[test]
    fn ruling_curve_lies_in_pencil() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let line = BidegreeCurve::sample(f, BidegreeClass::new(1, 0), &mut rng).unwrap();
        let pts = line.random_points(f, 5, &mut rng, &[]);
        // Class (1,0) means constant u: one fiber of the first ruling.
        for w in pts.windows(2) {
            assert_eq!(w[0].u, w[1].u);
        }
        assert!(BidegreeCurve::sample(f, BidegreeClass::new(2, 2), &mut rng).is_err());
    }

    #[test]
    fn twisted_cubic_class_has_one_implicit_form() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let curve = BidegreeCurve::sample(f, BidegreeClass::new(1, 2), &mut rng).unwrap();
        let pts = curve.random_points(f, 8, &mut rng, &[]);
        // 8 points of a (1,2) curve leave exactly the curve's own equation.
        let ns = eval_matrix_quadric(f, &pts, BidegreeClass::new(1, 2)).nullspace();
        assert_eq!(ns.len(), 1);
        let form = BiForm::new(f, BidegreeClass::new(1, 2), ns[0].clone()).unwrap();
        for t in 0..20 {
            let p = curve.point_at(f, &RulingPoint::affine(f, t));
            assert!(form.vanishes_at(f, &p));
        }
    }

    #[test]
    fn smooth_22_curve_through_points() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut pts = Vec::new();
        while pts.len() < 6 {
            let p = QuadricPoint::random(f, &mut rng);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let e = Quadric22Curve::through_points(f, &pts, &mut rng).unwrap();
        for p in &pts {
            assert!(e.contains(f, p));
        }
        // Fibers have at most two points and lie on the curve.
        for x in 0..40 {
            let fiber = e.fiber(f, &RulingPoint::affine(f, x));
            assert!(fiber.len() <= 2);
            for p in fiber {
                assert!(e.contains(f, &p));
            }
        }
        // A reducible (2,2) form (product of two (1,1) forms) is rejected.
        let l1 = [1u64, 2, 3, 4]; // u0v0, u0v1, u1v0, u1v1 coefficients
        let l2 = [5u64, 6, 7, 8];
        let mut prod = vec![0u64; 9];
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        let (i, j) = (i1 + i2, j1 + j2);
                        let term = f.mul(l1[i1 * 2 + j1], l2[i2 * 2 + j2]);
                        prod[i * 3 + j] = f.add(prod[i * 3 + j], term);
                    }
                }
            }
        }
        let form = BiForm::new(f, BidegreeClass::new(2, 2), prod).unwrap();
        assert!(Quadric22Curve::new(f, form).is_err());
    }

    #[test]
    fn residual_point_closes_divisors() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut base = Vec::new();
        while base.len() < 6 {
            let p = QuadricPoint::random(f, &mut rng);
            if !base.contains(&p) {
                base.push(p);
            }
        }
        let e = Quadric22Curve::through_points(f, &base, &mut rng).unwrap();
        // Class (1,1): 3 known points, one residual; all four lie on a
        // common (1,1) form.
        let mut known = Vec::new();
        while known.len() < 3 {
            let p = e.random_point(f, &mut rng, &known);
            known.push(p);
        }
        let z = residual_point(f, &e, &known, BidegreeClass::new(1, 1)).unwrap();
        assert!(e.contains(f, &z));
        let mut all = known.clone();
        all.push(z);
        let ns = eval_matrix_quadric(f, &all, BidegreeClass::new(1, 1)).nullspace();
        assert_eq!(ns.len(), 1);

        // Class (3,3): 11 known points on the curve, one residual.
        let mut known = base.clone();
        while known.len() < 11 {
            let p = e.random_point(f, &mut rng, &known);
            known.push(p);
        }
        let z = residual_point(f, &e, &known, BidegreeClass::new(3, 3)).unwrap();
        assert!(e.contains(f, &z));
        assert!(!known.contains(&z));
    }
}
