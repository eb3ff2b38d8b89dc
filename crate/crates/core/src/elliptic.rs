//! Weierstrass curves over a prime field and their ruled embedding into the
//! quadric surface as curves of class (2, 2).
//!
//! Divisor-class conditions ("the points sum to a multiple of the ruled
//! hyperplane class") become exact group-law computations here: a divisor is
//! principal iff it has degree 0 and group-law sum zero, so every linear
//! equivalence used by the collection samplers is decided exactly.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::PrimeField;
use crate::bn::Signature;
use crate::geom::{
    eval_matrix_quadric, BiForm, BidegreeClass, GeomError, Quadric22Curve, QuadricPoint,
    RulingPoint,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EllipticError {
    #[error("curve y^2 = x^3 + {a}x + {b} is singular mod {p}")]
    SingularCurve { a: u64, b: u64, p: u64 },
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("twist point must satisfy 2T != O")]
    InvalidTwist,
    #[error("twist order {order} too small, need > {need}")]
    SmallOrderTwist { order: u64, need: u64 },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A point of a Weierstrass curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EPoint {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl EPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, EPoint::Infinity)
    }

    /// The x-coordinate as a point of the projective line (∞ for the
    /// identity).
    pub fn x_coord(&self, f: PrimeField) -> RulingPoint {
        match self {
            EPoint::Infinity => RulingPoint::infinity(),
            EPoint::Affine { x, .. } => RulingPoint::affine(f, *x),
        }
    }
}

/// A nonsingular short Weierstrass curve y² = x³ + ax + b over F_p, p ≥ 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeierstrassCurve {
    pub field: PrimeField,
    pub a: u64,
    pub b: u64,
}

impl WeierstrassCurve {
    pub fn new(field: PrimeField, a: u64, b: u64) -> Result<Self, EllipticError> {
        let f = field;
        let a = f.reduce_u64(a);
        let b = f.reduce_u64(b);
        // 4a³ + 27b² ≠ 0.
        let disc = f.add(
            f.mul(4, f.mul(a, f.mul(a, a))),
            f.mul(27, f.mul(b, b)),
        );
        if disc == 0 || f.modulus() < 5 {
            return Err(EllipticError::SingularCurve { a, b, p: f.modulus() });
        }
        Ok(WeierstrassCurve { field: f, a, b })
    }

    pub fn contains(&self, p: &EPoint) -> bool {
        match p {
            EPoint::Infinity => true,
            EPoint::Affine { x, y } => {
                let f = self.field;
                let rhs = f.add(f.add(f.mul(*x, f.mul(*x, *x)), f.mul(self.a, *x)), self.b);
                f.mul(*y, *y) == rhs
            }
        }
    }

    fn require_on_curve(&self, p: &EPoint) -> Result<(), EllipticError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(EllipticError::PointNotOnCurve)
        }
    }

    pub fn neg(&self, p: &EPoint) -> EPoint {
        match p {
            EPoint::Infinity => EPoint::Infinity,
            EPoint::Affine { x, y } => EPoint::Affine {
                x: *x,
                y: self.field.neg(*y),
            },
        }
    }

    /// Chord-tangent addition with on-curve validation.
    pub fn add(&self, p: &EPoint, q: &EPoint) -> Result<EPoint, EllipticError> {
        self.require_on_curve(p)?;
        self.require_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &EPoint, q: &EPoint) -> EPoint {
        let f = self.field;
        let (x1, y1) = match p {
            EPoint::Infinity => return *q,
            EPoint::Affine { x, y } => (*x, *y),
        };
        let (x2, y2) = match q {
            EPoint::Infinity => return *p,
            EPoint::Affine { x, y } => (*x, *y),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return EPoint::Infinity;
            }
            // Tangent slope (3x² + a) / (2y).
            let num = f.add(f.mul(3, f.mul(x1, x1)), self.a);
            f.div(num, f.mul(2, y1)).expect("y nonzero here")
        } else {
            f.div(f.sub(y2, y1), f.sub(x2, x1)).expect("x1 != x2")
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        EPoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &EPoint) -> Result<EPoint, EllipticError> {
        self.add(p, p)
    }

    /// Scalar multiple k·P, with negative k through the inverse.
    pub fn mul(&self, k: i64, p: &EPoint) -> Result<EPoint, EllipticError> {
        self.require_on_curve(p)?;
        let (mut k, mut base) = if k < 0 {
            ((-k) as u64, self.neg(p))
        } else {
            (k as u64, *p)
        };
        let mut acc = EPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Order of a point by iterated addition (fine for small fields).
    pub fn order_of(&self, p: &EPoint) -> Result<u64, EllipticError> {
        self.require_on_curve(p)?;
        let mut acc = *p;
        let mut n = 1u64;
        while !acc.is_infinity() {
            acc = self.add_unchecked(&acc, p);
            n += 1;
        }
        Ok(n)
    }

    /// A uniform-ish random affine point.
    pub fn random_point(&self, rng: &mut ChaCha8Rng) -> EPoint {
        let f = self.field;
        loop {
            let x = rng.random_range(0..f.modulus());
            let rhs = f.add(f.add(f.mul(x, f.mul(x, x)), f.mul(self.a, x)), self.b);
            if let Some(y) = f.sqrt(rhs) {
                let y = if rng.random_range(0..2u8) == 1 { f.neg(y) } else { y };
                return EPoint::Affine { x, y };
            }
        }
    }

    /// Every rational point, identity included. Exhaustive: small p only.
    pub fn all_points(&self) -> Vec<EPoint> {
        let f = self.field;
        let mut out = vec![EPoint::Infinity];
        for x in 0..f.modulus() {
            let rhs = f.add(f.add(f.mul(x, f.mul(x, x)), f.mul(self.a, x)), self.b);
            if let Some(y) = f.sqrt(rhs) {
                out.push(EPoint::Affine { x, y });
                if y != 0 {
                    out.push(EPoint::Affine { x, y: f.neg(y) });
                }
            }
        }
        out
    }
}

/// Group-law sum of a list of points (the Abel–Jacobi image of the divisor).
pub fn class_sum(curve: &WeierstrassCurve, points: &[EPoint]) -> Result<EPoint, EllipticError> {
    let mut acc = EPoint::Infinity;
    for p in points {
        acc = curve.add(&acc, p)?;
    }
    Ok(acc)
}

/// The ruled embedding P ↦ (x(P), x(P ⊕ T)). For 2T ≠ O this is injective
/// and the image is a smooth curve of class (2, 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadricEmbedding {
    pub curve: WeierstrassCurve,
    pub twist: EPoint,
}

/// Build the embedding, rejecting twists with 2T = O.
pub fn embed_22(
    curve: &WeierstrassCurve,
    twist: &EPoint,
) -> Result<QuadricEmbedding, EllipticError> {
    curve.require_on_curve(twist)?;
    if curve.mul(2, twist)?.is_infinity() {
        return Err(EllipticError::InvalidTwist);
    }
    Ok(QuadricEmbedding {
        curve: *curve,
        twist: *twist,
    })
}

impl QuadricEmbedding {
    pub fn map(&self, p: &EPoint) -> Result<QuadricPoint, EllipticError> {
        self.curve.require_on_curve(p)?;
        let f = self.curve.field;
        let shifted = self.curve.add(p, &self.twist)?;
        Ok(QuadricPoint::new(p.x_coord(f), shifted.x_coord(f)))
    }

    /// Sum of any divisor cut by the class (1, 1) — the ruled hyperplane
    /// class restricted to the curve: ⊖2T.
    pub fn sigma_h(&self) -> EPoint {
        self.curve
            .mul(-2, &self.twist)
            .expect("twist is on the curve")
    }

    /// The implicit (2, 2) form of the image, recovered by interpolation
    /// through sampled image points and certified smooth.
    pub fn image_curve(&self, rng: &mut ChaCha8Rng) -> Result<Quadric22Curve, EllipticError> {
        let f = self.curve.field;
        for _ in 0..16 {
            let mut pts: Vec<QuadricPoint> = Vec::new();
            let mut used: Vec<EPoint> = Vec::new();
            while pts.len() < 12 {
                let p = self.curve.random_point(rng);
                if used.contains(&p) {
                    continue;
                }
                used.push(p);
                pts.push(self.map(&p)?);
            }
            let ns = eval_matrix_quadric(f, &pts, BidegreeClass::new(2, 2)).nullspace();
            if ns.len() != 1 {
                continue;
            }
            let form = BiForm::new(f, BidegreeClass::new(2, 2), ns[0].clone())
                .map_err(EllipticError::Geom)?;
            return Ok(Quadric22Curve::new(f, form)?);
        }
        Err(EllipticError::Geom(GeomError::Degenerate(
            "image interpolation kept failing".into(),
        )))
    }
}

/// Group-law sum of any divisor in the restriction of class (m, n) to the
/// embedded curve: fibers of the first ruling sum to O and fibers of the
/// second to ⊖2T, so the class contributes ⊖(2n)T. Defined on the formal
/// class group, so negative entries are allowed.
pub fn bidegree_class_sum(
    emb: &QuadricEmbedding,
    _m: i64,
    n: i64,
) -> EPoint {
    emb.curve
        .mul(-2 * n, &emb.twist)
        .expect("twist is on the curve")
}

/// Is the divisor of the given points linearly equivalent to a multiple of
/// the ruled hyperplane class? True exactly when the count is 4k and the
/// group-law sum is k·σ(H).
pub fn class_is_h_multiple(
    emb: &QuadricEmbedding,
    points: &[EPoint],
) -> Result<bool, EllipticError> {
    if points.len() % 4 != 0 {
        return Ok(false);
    }
    let k = (points.len() / 4) as i64;
    let sum = class_sum(&emb.curve, points)?;
    let target = emb.curve.mul(-2 * k, &emb.twist)?;
    Ok(sum == target)
}

/// An elliptic collection sampled on a single embedded curve: the six base
/// points plus one constrained group per signature unit. This is the fully
/// specialized configuration (every witness curve collapsed onto one); the
/// rank verifiers use the general sampler in the sections layer instead.
#[derive(Debug, Clone, Serialize)]
pub struct EllipticCollection {
    pub sig: Signature,
    pub seed: u64,
    pub embedding: QuadricEmbedding,
    pub base: Vec<EPoint>,
    /// Groups in signature order: `a` pairs, then `b` pairs, then `c`
    /// six-tuples.
    pub groups: Vec<Vec<EPoint>>,
}

/// Sample a collection with the divisor constraints solved through the
/// group law: in each group all points but the last are random and the last
/// closes the class relation. Every constraint is re-verified before
/// returning.
pub fn sample_elliptic_collection(
    sig: Signature,
    emb: &QuadricEmbedding,
    seed: u64,
) -> Result<EllipticCollection, EllipticError> {
    use rand::SeedableRng;
    let curve = &emb.curve;
    let need = 12 * (sig.b + sig.c + 1) as u64;
    let order = curve.order_of(&emb.twist)?;
    if order <= need {
        return Err(EllipticError::SmallOrderTwist { order, need });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'outer: for _ in 0..64 {
        let mut taken: Vec<EPoint> = Vec::new();
        let fresh = |rng: &mut ChaCha8Rng, taken: &mut Vec<EPoint>| -> EPoint {
            loop {
                let p = curve.random_point(rng);
                if !taken.contains(&p) {
                    taken.push(p);
                    return p;
                }
            }
        };
        let base: Vec<EPoint> = (0..6).map(|_| fresh(&mut rng, &mut taken)).collect();
        let base_sum = class_sum(curve, &base)?;
        let sigma = emb.sigma_h();
        let mut groups: Vec<Vec<EPoint>> = Vec::new();
        let push_group = |target: EPoint,
                              size: usize,
                              rng: &mut ChaCha8Rng,
                              taken: &mut Vec<EPoint>,
                              groups: &mut Vec<Vec<EPoint>>|
         -> Result<bool, EllipticError> {
            // All but the last point random; the last solves the relation.
            let mut group: Vec<EPoint> = Vec::new();
            for _ in 0..size - 1 {
                group.push({
                    loop {
                        let p = curve.random_point(rng);
                        if !taken.contains(&p) {
                            taken.push(p);
                            break p;
                        }
                    }
                });
            }
            let partial = class_sum(curve, &group)?;
            let last = curve.add(&target, &curve.neg(&partial))?;
            if taken.contains(&last) {
                return Ok(false);
            }
            taken.push(last);
            group.push(last);
            groups.push(group);
            Ok(true)
        };
        for _ in 0..sig.a {
            // q1 + ... + q6 ~ H + p1 + p2, so p1 ⊕ p2 = Σq ⊖ σ(H).
            let target = curve.add(&base_sum, &curve.neg(&sigma))?;
            if !push_group(target, 2, &mut rng, &mut taken, &mut groups)? {
                continue 'outer;
            }
        }
        for _ in 0..sig.b {
            // Σq + p1 + p2 ~ 2H, so p1 ⊕ p2 = 2σ(H) ⊖ Σq.
            let target = curve.add(&curve.mul(2, &sigma.clone())?, &curve.neg(&base_sum))?;
            if !push_group(target, 2, &mut rng, &mut taken, &mut groups)? {
                continue 'outer;
            }
        }
        for _ in 0..sig.c {
            // Σq + p1 + ... + p6 ~ 3H.
            let target = curve.add(&curve.mul(3, &sigma.clone())?, &curve.neg(&base_sum))?;
            if !push_group(target, 6, &mut rng, &mut taken, &mut groups)? {
                continue 'outer;
            }
        }
        let coll = EllipticCollection {
            sig,
            seed,
            embedding: *emb,
            base,
            groups,
        };
        if coll.verify()? {
            return Ok(coll);
        }
    }
    Err(EllipticError::Geom(GeomError::Degenerate(
        "collection sampling kept colliding".into(),
    )))
}

impl EllipticCollection {
    /// Re-check every divisor-class constraint from scratch.
    pub fn verify(&self) -> Result<bool, EllipticError> {
        let curve = &self.embedding.curve;
        let sigma = self.embedding.sigma_h();
        let base_sum = class_sum(curve, &self.base)?;
        let mut idx = 0;
        for _ in 0..self.sig.a {
            let got = class_sum(curve, &self.groups[idx])?;
            let want = curve.add(&base_sum, &curve.neg(&sigma))?;
            if self.groups[idx].len() != 2 || got != want {
                return Ok(false);
            }
            idx += 1;
        }
        for _ in 0..self.sig.b {
            let got = curve.add(&base_sum, &class_sum(curve, &self.groups[idx])?)?;
            let want = curve.mul(2, &sigma)?;
            if self.groups[idx].len() != 2 || got != want {
                return Ok(false);
            }
            idx += 1;
        }
        for _ in 0..self.sig.c {
            let got = curve.add(&base_sum, &class_sum(curve, &self.groups[idx])?)?;
            let want = curve.mul(3, &sigma)?;
            if self.groups[idx].len() != 6 || got != want {
                return Ok(false);
            }
            idx += 1;
        }
        Ok(true)
    }

    /// All points of the collection, mapped onto the quadric.
    pub fn quadric_points(&self) -> Result<Vec<QuadricPoint>, EllipticError> {
        let mut out = Vec::new();
        for p in self.base.iter().chain(self.groups.iter().flatten()) {
            out.push(self.embedding.map(p)?);
        }
        Ok(out)
    }
}

/// Sample a nonsingular curve together with a twist point of order large
/// enough that no collection constraint can degenerate.
pub fn sample_embedding(
    f: PrimeField,
    rng: &mut ChaCha8Rng,
    min_order: u64,
) -> Result<(WeierstrassCurve, EPoint), EllipticError> {
    loop {
        let a = rng.random_range(0..f.modulus());
        let b = rng.random_range(0..f.modulus());
        let Ok(curve) = WeierstrassCurve::new(f, a, b) else {
            continue;
        };
        let t = curve.random_point(rng);
        if curve.mul(2, &t)?.is_infinity() {
            continue;
        }
        if curve.order_of(&t)? > min_order {
            return Ok((curve, t));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn singular_curves_rejected() {
        let f = f101();
        assert!(WeierstrassCurve::new(f, 0, 0).is_err());
        // 4a³ + 27b² = 0 with a = -3, b = 2.
        assert!(WeierstrassCurve::new(f, f.neg(3), 2).is_err());
        assert!(WeierstrassCurve::new(f, 1, 1).is_ok());
    }

    #[test]
    fn doubling_example() {
        let f = PrimeField::new(5).unwrap();
        let e = WeierstrassCurve::new(f, 0, 1).unwrap();
        let p = EPoint::Affine { x: 0, y: 1 };
        assert_eq!(e.double(&p).unwrap(), EPoint::Affine { x: 0, y: 4 });
    }

    #[test]
    fn identity_and_inverse_laws() {
        let f = f101();
        let e = WeierstrassCurve::new(f, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let p = e.random_point(&mut rng);
            assert_eq!(e.add(&p, &EPoint::Infinity).unwrap(), p);
            assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), EPoint::Infinity);
        }
        let off = EPoint::Affine { x: 1, y: 1 };
        assert!(!e.contains(&off));
        assert_eq!(e.add(&off, &EPoint::Infinity), Err(EllipticError::PointNotOnCurve));
    }

    #[test]
    fn group_law_axioms_random() {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (a, b) in [(2, 3), (1, 1), (5, 7)] {
            let e = WeierstrassCurve::new(f, a, b).unwrap();
            for _ in 0..100 {
                let p = e.random_point(&mut rng);
                let q = e.random_point(&mut rng);
                let r = e.random_point(&mut rng);
                assert_eq!(e.add(&p, &q).unwrap(), e.add(&q, &p).unwrap());
                let left = e.add(&e.add(&p, &q).unwrap(), &r).unwrap();
                let right = e.add(&p, &e.add(&q, &r).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn scalar_multiples_and_order() {
        let f = f101();
        let e = WeierstrassCurve::new(f, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = e.random_point(&mut rng);
        let ord = e.order_of(&p).unwrap();
        assert_eq!(e.mul(ord as i64, &p).unwrap(), EPoint::Infinity);
        assert_eq!(e.mul(-1, &p).unwrap(), e.neg(&p));
        let lhs = e.mul(7, &p).unwrap();
        let rhs = class_sum(&e, &vec![p; 7]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_basics() {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (curve, t) = sample_embedding(f, &mut rng, 24).unwrap();
        let emb = embed_22(&curve, &t).unwrap();
        // φ(O) = (∞, x(T)).
        let img = emb.map(&EPoint::Infinity).unwrap();
        assert_eq!(img.u, RulingPoint::infinity());
        assert_eq!(img.v, t.x_coord(f));
        // Injectivity on a sample.
        let mut seen = Vec::new();
        for _ in 0..60 {
            let p = curve.random_point(&mut rng);
            let q = emb.map(&p).unwrap();
            assert!(!seen.contains(&(p, q)) || true);
            for (p2, q2) in &seen {
                if *p2 != p {
                    assert_ne!(*q2, q, "embedding collided");
                }
            }
            seen.push((p, q));
        }
        // 2T = O rejected.
        let two_torsion = curve
            .all_points()
            .into_iter()
            .find(|p| !p.is_infinity() && curve.double(p).unwrap().is_infinity());
        if let Some(tt) = two_torsion {
            assert_eq!(embed_22(&curve, &tt), Err(EllipticError::InvalidTwist));
        }
    }

    #[test]
    fn image_is_a_smooth_22_curve() {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (curve, t) = sample_embedding(f, &mut rng, 24).unwrap();
        let emb = embed_22(&curve, &t).unwrap();
        let image = emb.image_curve(&mut rng).unwrap();
        // Every image point satisfies the interpolated form, and 9+ points
        // have evaluation rank exactly 8 at class (2,2).
        let mut pts = Vec::new();
        let mut used = Vec::new();
        while pts.len() < 11 {
            let p = curve.random_point(&mut rng);
            if used.contains(&p) {
                continue;
            }
            used.push(p);
            let q = emb.map(&p).unwrap();
            assert!(image.contains(f, &q));
            pts.push(q);
        }
        assert_eq!(
            eval_matrix_quadric(f, &pts, BidegreeClass::new(2, 2)).rank(),
            8
        );
        // Each projection is 2-to-1: x(P) = x(−P).
        let p = curve.random_point(&mut rng);
        assert_eq!(
            emb.map(&p).unwrap().u,
            emb.map(&curve.neg(&p)).unwrap().u
        );
    }

    #[test]
    fn class_sums() {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (curve, t) = sample_embedding(f, &mut rng, 24).unwrap();
        let emb = embed_22(&curve, &t).unwrap();
        assert_eq!(class_sum(&curve, &[]).unwrap(), EPoint::Infinity);
        let p = curve.random_point(&mut rng);
        assert_eq!(
            class_sum(&curve, &[p, curve.neg(&p)]).unwrap(),
            EPoint::Infinity
        );
        // Ruling fibers: first ruling sums to O, second to ⊖2T.
        assert_eq!(bidegree_class_sum(&emb, 1, 0), EPoint::Infinity);
        assert_eq!(bidegree_class_sum(&emb, 0, 1), curve.mul(-2, &t).unwrap());
        assert_eq!(emb.sigma_h(), curve.mul(-2, &t).unwrap());
        // O(l, −l) is nontrivial whenever the twist order does not divide 2l.
        let ord = curve.order_of(&t).unwrap();
        for l in 1..=6i64 {
            let s = bidegree_class_sum(&emb, l, -l);
            assert_eq!(s, curve.mul(2 * l, &t).unwrap());
            if (2 * l as u64) % ord != 0 {
                assert!(!s.is_infinity());
            }
        }
    }

    #[test]
    fn fiber_divisor_class_checks() {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (curve, t) = sample_embedding(f, &mut rng, 24).unwrap();
        let emb = embed_22(&curve, &t).unwrap();
        // A full (1,1)-form divisor on the curve is a hyperplane section:
        // pick a random (1,1) form and collect its zeros among all points.
        let all = curve.all_points();
        let divisor = loop {
            let coeffs: Vec<u64> = (0..4).map(|_| rng.random_range(0..f.modulus())).collect();
            let Ok(form) = BiForm::new(f, BidegreeClass::new(1, 1), coeffs) else {
                continue;
            };
            let zeros: Vec<EPoint> = all
                .iter()
                .copied()
                .filter(|p| form.vanishes_at(f, &emb.map(p).unwrap()))
                .collect();
            if zeros.len() == 4 {
                break zeros;
            }
        };
        assert!(class_is_h_multiple(&emb, &divisor).unwrap());
        let p = curve.random_point(&mut rng);
        assert!(!class_is_h_multiple(&emb, &[p, curve.neg(&p)]).unwrap());
        assert!(class_is_h_multiple(&emb, &[]).unwrap());
    }

    #[test]
    fn collections_close_their_relations() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (curve, t) = sample_embedding(f, &mut rng, 60).unwrap();
        let emb = embed_22(&curve, &t).unwrap();
        for (sig, total) in [
            (Signature::new(0, 0, 1), 12),
            (Signature::new(0, 1, 0), 8),
            (Signature::new(1, 0, 0), 8),
            (Signature::new(2, 1, 1), 18),
        ] {
            let coll = sample_elliptic_collection(sig, &emb, 17).unwrap();
            assert!(coll.verify().unwrap());
            let pts = coll.quadric_points().unwrap();
            assert_eq!(pts.len(), total);
            assert_eq!(pts.len(), sig.quadric_points());
            // Points are pairwise distinct on the quadric.
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    assert_ne!(pts[i], pts[j]);
                }
            }
        }
        // The a-group pair satisfies p1 ⊕ p2 = Σq ⊖ σ(H).
        let coll = sample_elliptic_collection(Signature::new(1, 0, 0), &emb, 3).unwrap();
        let pair_sum = class_sum(&curve, &coll.groups[0]).unwrap();
        let base_sum = class_sum(&curve, &coll.base).unwrap();
        let expect = curve.add(&base_sum, &curve.neg(&emb.sigma_h())).unwrap();
        assert_eq!(pair_sum, expect);
    }
}
