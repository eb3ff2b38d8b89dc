//! The end-to-end criteria suite: every numbered check the toolkit is
//! expected to pass, with its tolerance pinned in code. Used by the
//! `acceptance` test target and by the CLI's `verify all`.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::PrimeField;
use crate::bn::{binom, rho, CurveParams, Signature};
use crate::elliptic::{
    bidegree_class_sum, class_sum, embed_22, sample_embedding, EPoint, WeierstrassCurve,
};
use crate::games::{
    conic_reachable_bruteforce, conic_reachable_closed, enumerate_conic_instances, scan_report,
};
use crate::geom::{eval_matrix_quadric, BiForm, BidegreeClass};
use crate::planner::{bounds_ione, induction_schedule_cached, split_degrees_cached, LeafReason,
    ScheduleNode, SplitCache};
use crate::sections::{secant_ideal_dims, verify_plane_section, verify_quadric_section};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub elapsed_ms: u128,
    pub details: String,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {}: {} ({} ms) — {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.details
        )
    }
}

/// Shared configuration: the working prime and the seed list.
#[derive(Debug, Clone, Serialize)]
pub struct AcceptanceConfig {
    pub prime: u64,
    pub seeds: Vec<u64>,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig {
            prime: 10007,
            seeds: (0..20).collect(),
        }
    }
}

impl AcceptanceConfig {
    fn field(&self) -> PrimeField {
        PrimeField::new(self.prime).expect("config prime must be prime")
    }
}

/// The reference output of the bounded scan at levels 0..=6: six exception
/// lines, none at levels 0, 1, 5, 6.
pub const SCAN_REFERENCE: &str = "For m = 0 ...\n\
For m = 1 ...\n\
For m = 2 ...\n\
0 2 0 : [1, 1]\n\
0 1 0 : [1]\n\
For m = 3 ...\n\
0 1 1 : [2, 2]\n\
0 2 1 : [3, 2]\n\
0 0 2 : [4, 2]\n\
For m = 4 ...\n\
0 0 3 : [5, 4]\n\
For m = 5 ...\n\
For m = 6 ...\n";

/// Criterion 1: the elliptic-game scan at levels ≤ 6 reproduces the
/// reference block byte for byte, within 30 seconds.
pub fn criterion_1_scan_reproduction() -> CriterionReport {
    let start = Instant::now();
    let got = scan_report(6);
    let elapsed = start.elapsed();
    let exact = got == SCAN_REFERENCE;
    let in_time = elapsed.as_secs() < 30;
    CriterionReport {
        id: 1,
        name: "scan reproduction (levels 0..=6, exact text)",
        pass: exact && in_time,
        elapsed_ms: elapsed.as_millis(),
        details: if exact {
            format!("{} output bytes identical", got.len())
        } else {
            format!("MISMATCH:\n--- got ---\n{got}\n--- want ---\n{SCAN_REFERENCE}")
        },
    }
}

/// Criterion 2: the closed-form conic reachability test agrees with the
/// memoized brute force on every instance with b + 3c ≤ 12 and at most six
/// columns, within 60 seconds.
pub fn criterion_2_closed_form_vs_oracle() -> CriterionReport {
    let start = Instant::now();
    let instances = enumerate_conic_instances(12, 6);
    let mut mismatches = Vec::new();
    for inst in &instances {
        if conic_reachable_closed(inst) != conic_reachable_bruteforce(inst) {
            mismatches.push(format!(
                "b={} c={} target={:?}",
                inst.b(),
                inst.c(),
                inst.target()
            ));
        }
    }
    let elapsed = start.elapsed();
    CriterionReport {
        id: 2,
        name: "closed form vs exhaustive solver (conic game)",
        pass: mismatches.is_empty() && elapsed.as_secs() < 60,
        elapsed_ms: elapsed.as_millis(),
        details: if mismatches.is_empty() {
            format!("{} instances agree", instances.len())
        } else {
            format!("{} mismatches: {}", mismatches.len(), mismatches.join("; "))
        },
    }
}

/// Every signature with at most `max_points` plane points.
fn plane_signatures(max_points: usize) -> Vec<Signature> {
    let budget = max_points - 3;
    let mut out = Vec::new();
    for c in 0..=(budget / 3) {
        for b in 0..=(budget - 3 * c) {
            for a in 0..=(budget - 3 * c - b) {
                out.push(Signature::new(a, b, c));
            }
        }
    }
    out.sort();
    out
}

/// Criterion 3: plane-section verdicts match the expected table for every
/// signature with ≤ 12 points and 1 ≤ m ≤ 5 — maximal rank on ≥ 90% of
/// seeds (and at least one), the single exception deficient with rank
/// exactly 5 on every seed.
pub fn criterion_3_plane_sections(cfg: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let f = cfg.field();
    let mut failures = Vec::new();
    let mut count = 0usize;
    for sig in plane_signatures(12) {
        for m in 1..=5usize {
            count += 1;
            match verify_plane_section(f, sig, m, &cfg.seeds) {
                Ok(report) => {
                    if !report.pass {
                        failures.push(format!("{sig} m={m}: ranks {:?}", report.seed_ranks));
                    }
                }
                Err(e) => failures.push(format!("{sig} m={m}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    CriterionReport {
        id: 3,
        name: "plane-section rank sweep (#S <= 12, m <= 5)",
        pass: failures.is_empty(),
        elapsed_ms: elapsed.as_millis(),
        details: if failures.is_empty() {
            format!("{count} (signature, degree) cells verified over {} seeds", cfg.seeds.len())
        } else {
            format!("{} failures: {}", failures.len(), failures.join("; "))
        },
    }
}

/// Signatures with a = 0 or c = 0 and at most `max_points` quadric points.
fn quadric_signatures(max_points: usize) -> Vec<Signature> {
    let budget = (max_points - 6) / 2;
    let mut out = Vec::new();
    for c in 0..=(budget / 3) {
        for b in 0..=(budget - 3 * c) {
            for a in 0..=(budget - 3 * c - b) {
                if a == 0 || c == 0 {
                    out.push(Signature::new(a, b, c));
                }
            }
        }
    }
    out.sort();
    out
}

/// Criterion 4: the seven exception-table entries are rank-deficient via
/// their signatures on every seed, and every non-excepted (signature,
/// bidegree) cell with a = 0 or c = 0, ≤ 14 points, 1 ≤ m ≤ n ≤ 4 achieves
/// maximal rank under the seed policy. Under 5 minutes.
pub fn criterion_4_quadric_sections(cfg: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let f = cfg.field();
    let mut failures = Vec::new();

    // Every entry of the exception table, via its signature, must come out
    // deficient on all seeds — including the 16-point entry that sits
    // outside the grid sweep below.
    let mut exceptions_seen = 0usize;
    for row in &crate::bn::exception_tables().rows {
        let (m, n) = (row.class.0 as usize, row.class.1 as usize);
        for &(d, g) in &row.pairs {
            let sig = crate::bn::defining_signatures(d, g).expect("table rows valid")[0];
            match verify_quadric_section(f, sig, BidegreeClass::new(m, n), &cfg.seeds) {
                Ok(report) => {
                    exceptions_seen += 1;
                    if !(report.exceptional && report.pass) {
                        failures.push(format!(
                            "exception {sig} ({m},{n}): ranks {:?}",
                            report.seed_ranks
                        ));
                    }
                }
                Err(e) => failures.push(format!("exception {sig} ({m},{n}): {e}")),
            }
        }
    }

    // Grid sweep: every cell with a = 0 or c = 0 and at most 14 points.
    let mut count = 0usize;
    for sig in quadric_signatures(14) {
        for m in 1..=4usize {
            for n in m..=4usize {
                count += 1;
                match verify_quadric_section(f, sig, BidegreeClass::new(m, n), &cfg.seeds) {
                    Ok(report) => {
                        if !report.pass {
                            failures.push(format!(
                                "{sig} ({m},{n}) exceptional={}: ranks {:?}",
                                report.exceptional, report.seed_ranks
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("{sig} ({m},{n}): {e}")),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && exceptions_seen == 7 && elapsed.as_secs() < 300;
    CriterionReport {
        id: 4,
        name: "quadric-section rank sweep and exception table",
        pass,
        elapsed_ms: elapsed.as_millis(),
        details: if pass {
            format!(
                "{count} cells verified, all 7 exception entries deficient, over {} seeds",
                cfg.seeds.len()
            )
        } else {
            format!(
                "{} failures ({} exceptions seen): {}",
                failures.len(),
                exceptions_seen,
                failures.join("; ")
            )
        },
    }
}

/// Criterion 5: the three secant-union ideal dimensions come out (9, 8, 9)
/// on every seed.
pub fn criterion_5_secant_dims(cfg: &AcceptanceConfig) -> CriterionReport {
    let start = Instant::now();
    let f = cfg.field();
    let mut failures = Vec::new();
    for &seed in &cfg.seeds {
        match secant_ideal_dims(f, seed) {
            Ok((a, b, c)) if (a, b, c) == (9, 8, 9) => {}
            Ok(got) => failures.push(format!("seed {seed}: got {got:?}")),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    CriterionReport {
        id: 5,
        name: "secant ideal dimensions (9, 8, 9)",
        pass: failures.is_empty(),
        elapsed_ms: elapsed.as_millis(),
        details: if failures.is_empty() {
            format!("(9, 8, 9) on all {} seeds", cfg.seeds.len())
        } else {
            failures.join("; ")
        },
    }
}

/// Criterion 6: the splitter bounds hold at every ρ ≥ 0 grid point with
/// 3 ≤ r ≤ 8, d ≤ 60, and the two section inequalities hold on their stated
/// domains over the same grid. Exact arithmetic, zero failures.
pub fn criterion_6_bounds_sweep() -> CriterionReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for r in 3i64..=8 {
        for d in 1i64..=60 {
            for g in 0i64..=(2 * 60) {
                let p = CurveParams { d, g, r };
                let rh = rho(&p);
                if rh >= 0 {
                    checked += 1;
                    match bounds_ione(&p) {
                        Ok(b) if b.ok => {}
                        Ok(_) => failures.push(format!("bounds fail at ({d},{g},{r})")),
                        Err(e) => failures.push(format!("({d},{g},{r}): {e}")),
                    }
                    if rh > 0 && d >= 2 * r && g >= 2 * d + 1 - 3 * r {
                        failures.push(format!("first inequality fails at ({d},{g},{r})"));
                    }
                    if d < g + r - 2 && g >= 2 * d + 5 - 5 * r {
                        failures.push(format!("second inequality fails at ({d},{g},{r})"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    CriterionReport {
        id: 6,
        name: "bound and inequality sweep (r <= 8, d <= 60)",
        pass: failures.is_empty(),
        elapsed_ms: elapsed.as_millis(),
        details: if failures.is_empty() {
            format!("{checked} grid points verified")
        } else {
            format!("{} failures: {}", failures.len(), failures.join("; "))
        },
    }
}

fn leaves_legal(node: &ScheduleNode) -> bool {
    node.leaves().iter().all(|leaf| match leaf {
        ScheduleNode::Leaf { d, r, m, reason } => match reason {
            LeafReason::DegreeTwo => *m <= 2,
            LeafReason::AmbientThree => *r == 3,
            LeafReason::Nonspecial => *d <= 2 * r - 1,
        },
        ScheduleNode::Split { .. } => false,
    })
}

/// Criterion 7: the degree splitter succeeds with all constraints verified
/// for 4 ≤ r ≤ 8, 3 ≤ m ≤ 6, 2r + 2 ≤ d ≤ binom(m + r − 1, m) + 20, and
/// the induction schedule terminates with only legal leaves over the same
/// grid. Zero failures, under 60 seconds.
pub fn criterion_7_splitter_sweep() -> CriterionReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut splits = 0usize;
    let mut cache = SplitCache::new();
    for r in 4i64..=8 {
        for m in 3i64..=6 {
            let hi = binom((m + r - 1) as u64, m as u64) as i64 + 20;
            for d in (2 * r + 2)..=hi {
                splits += 1;
                match split_degrees_cached(d, r, m, &mut cache) {
                    Ok(s) => {
                        if s.d1 + s.d2 != d || !s.check(r, m) {
                            failures.push(format!("bad split at (d={d}, r={r}, m={m}): {s:?}"));
                        }
                    }
                    Err(e) => failures.push(format!("(d={d}, r={r}, m={m}): {e}")),
                }
                match induction_schedule_cached(d, 0, r, m, &mut cache) {
                    Ok(tree) => {
                        if !leaves_legal(&tree) {
                            failures.push(format!("illegal leaf at (d={d}, r={r}, m={m})"));
                        }
                    }
                    Err(e) => failures.push(format!("schedule (d={d}, r={r}, m={m}): {e}")),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    CriterionReport {
        id: 7,
        name: "degree splitter and schedule sweep",
        pass: failures.is_empty() && elapsed.as_secs() < 60,
        elapsed_ms: elapsed.as_millis(),
        details: if failures.is_empty() {
            format!("{splits} grid points split and scheduled")
        } else {
            format!("{} failures: {}", failures.len(), failures.join("; "))
        },
    }
}

/// Criterion 8: the group law satisfies the axioms exactly on 1000 random
/// triples for each of five curves, and the class-sum formula ⊖2nT matches
/// the divisor-sum oracle at a small prime by exhaustive sweep for all
/// classes up to (2, 2).
pub fn criterion_8_elliptic_arithmetic() -> CriterionReport {
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    let start = Instant::now();
    let mut failures = Vec::new();

    // Axiom suite at the default prime.
    let f = PrimeField::new(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let mut curves = Vec::new();
    while curves.len() < 5 {
        let a = rng.random_range(0..f.modulus());
        let b = rng.random_range(0..f.modulus());
        if let Ok(c) = WeierstrassCurve::new(f, a, b) {
            curves.push(c);
        }
    }
    'axioms: for curve in &curves {
        for _ in 0..1000 {
            let p = curve.random_point(&mut rng);
            let q = curve.random_point(&mut rng);
            let r = curve.random_point(&mut rng);
            let comm = curve.add(&p, &q).unwrap() == curve.add(&q, &p).unwrap();
            let assoc = curve.add(&curve.add(&p, &q).unwrap(), &r).unwrap()
                == curve.add(&p, &curve.add(&q, &r).unwrap()).unwrap();
            let ident = curve.add(&p, &EPoint::Infinity).unwrap() == p;
            let inv = curve.add(&p, &curve.neg(&p)).unwrap() == EPoint::Infinity;
            if !(comm && assoc && ident && inv) {
                failures.push(format!(
                    "axiom failure on y^2 = x^3 + {}x + {}",
                    curve.a, curve.b
                ));
                continue 'axioms;
            }
        }
    }

    // Divisor-sum oracle at a small prime: for each class, interpolate a
    // form through 2(m+n) − 1 random image points, sweep the whole curve
    // for its zeros, and compare the group-law sum with ⊖2nT.
    let f_small = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let (curve, twist) = sample_embedding(f_small, &mut rng, 24).unwrap();
    let emb = embed_22(&curve, &twist).unwrap();
    let all = curve.all_points();
    for (m, n) in [(0usize, 1usize), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)] {
        let class = BidegreeClass::new(m, n);
        let degree = 2 * (m + n);
        let mut ok = false;
        'tries: for _ in 0..50 {
            let mut chosen: Vec<EPoint> = Vec::new();
            while chosen.len() < degree - 1 {
                let p = curve.random_point(&mut rng);
                if !chosen.contains(&p) {
                    chosen.push(p);
                }
            }
            let images: Vec<_> = chosen.iter().map(|p| emb.map(p).unwrap()).collect();
            let kernel = eval_matrix_quadric(f_small, &images, class).nullspace();
            for vec in kernel {
                let Ok(form) = BiForm::new(f_small, class, vec) else {
                    continue;
                };
                let zeros: Vec<EPoint> = all
                    .iter()
                    .copied()
                    .filter(|p| form.vanishes_at(f_small, &emb.map(p).unwrap()))
                    .collect();
                // Exactly `degree` simple rational zeros pins the divisor.
                if zeros.len() != degree {
                    continue;
                }
                if !chosen.iter().all(|p| zeros.contains(p)) {
                    continue;
                }
                let sum = class_sum(&curve, &zeros).unwrap();
                let expect = bidegree_class_sum(&emb, m as i64, n as i64);
                if sum == expect {
                    ok = true;
                } else {
                    failures.push(format!(
                        "class ({m},{n}): divisor sum {sum:?} != {expect:?}"
                    ));
                }
                break 'tries;
            }
        }
        if !ok && failures.is_empty() {
            failures.push(format!("class ({m},{n}): no usable interpolant found"));
        }
    }

    let elapsed = start.elapsed();
    CriterionReport {
        id: 8,
        name: "elliptic group law and class-sum oracle",
        pass: failures.is_empty(),
        elapsed_ms: elapsed.as_millis(),
        details: if failures.is_empty() {
            "5 curves x 1000 triples exact; class sums match the sweep oracle up to (2,2)".into()
        } else {
            failures.join("; ")
        },
    }
}

/// Run the full suite in order.
pub fn run_all(cfg: &AcceptanceConfig) -> Vec<CriterionReport> {
    vec![
        criterion_1_scan_reproduction(),
        criterion_2_closed_form_vs_oracle(),
        criterion_3_plane_sections(cfg),
        criterion_4_quadric_sections(cfg),
        criterion_5_secant_dims(cfg),
        criterion_6_bounds_sweep(),
        criterion_7_splitter_sweep(),
        criterion_8_elliptic_arithmetic(),
    ]
}
