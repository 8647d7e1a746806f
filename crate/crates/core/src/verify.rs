//! Desk-scale verification suites: each check compares a closed-form or
//! independently computed value against the iterative computation and
//! records the outcome as one row.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Bicomplex, SliceSpec, Tricomplex, Unit};
use crate::dynamics::{
    hyper_orbit_points, orbit, orbit_complex, orbit_direct, orbit_hyper, orbit_real,
    real_orbit_points, rotate_param,
};
use crate::error::Result;
use crate::io::csv_string;
use crate::raster::{
    hausdorff_discrete, scan2d, scan2d_with_workers, scan3d, Plane, Raster2D, Window2D, Window3D,
};
use crate::realroots::{classify, refine_bounds, PolyParams, Regime};
use crate::sets::{
    conjecture_probe, hausdorff_limit, hyperbrot_member, m_p, perplexbrot_member,
    real_axis_member, slice_union_member,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Roots,
    Dynamics,
    Sets,
    Raster,
    Conjecture,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::Algebra,
        Suite::Roots,
        Suite::Dynamics,
        Suite::Sets,
        Suite::Raster,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Roots => "roots",
            Suite::Dynamics => "dynamics",
            Suite::Sets => "sets",
            Suite::Raster => "raster",
            Suite::Conjecture => "conjecture",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                format!("unknown suite `{s}` (expected algebra, roots, dynamics, sets, raster, conjecture or all)")
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: String,
    pub expected: f64,
    pub observed: f64,
    /// Allowed `|observed − expected|`; infinite for report-only rows.
    pub tolerance: f64,
    pub pass: bool,
}

fn row(suite: &'static str, check: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> CheckRow {
    CheckRow {
        suite,
        check: check.into(),
        expected,
        observed,
        tolerance,
        pass: (observed - expected).abs() <= tolerance,
    }
}

/// Row that passes when `observed ≤ bound`.
fn at_most(suite: &'static str, check: impl Into<String>, bound: f64, observed: f64) -> CheckRow {
    CheckRow {
        suite,
        check: check.into(),
        expected: bound,
        observed,
        tolerance: 0.0,
        pass: observed <= bound,
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_tricomplex(rng: &mut ChaCha8Rng, scale: f64) -> Tricomplex {
    let mut x = [0.0; 8];
    for v in &mut x {
        *v = rng.gen_range(-scale..scale);
    }
    Tricomplex::new(x)
}

fn rel_err(a: &Tricomplex, b: &Tricomplex, scale: f64) -> f64 {
    (*a - *b).norm() / (1.0 + scale)
}

/// Product through the nested bicomplex form `(ζ1 + ζ2 i3)(ξ1 + ξ2 i3)`.
pub fn nested_product(a: &Tricomplex, b: &Tricomplex) -> Tricomplex {
    let (a1, a2) = a.to_bicomplex_pair();
    let (b1, b2) = b.to_bicomplex_pair();
    Tricomplex::from_bicomplex_pair(a1 * b1 - a2 * b2, a1 * b2 + a2 * b1)
}

/// True when a point lies within `band` of a threshold at decision time, so
/// rounding may legitimately flip the decision.
fn near_threshold(c: &Tricomplex, params: &PolyParams, max_iter: u32, band: f64) -> bool {
    let radius = params.escape_radius;
    let mut z = Tricomplex::ZERO;
    for _ in 0..max_iter {
        z = z.pow(params.p) + *c;
        let n = z.norm();
        if (n - radius).abs() <= band {
            return true;
        }
        if n.is_nan() || n > radius {
            return false;
        }
    }
    false
}

fn algebra_suite() -> Vec<CheckRow> {
    const S: &str = "algebra";
    let mut rows = Vec::new();

    let mismatches = Unit::ALL
        .iter()
        .flat_map(|&a| Unit::ALL.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| {
            let (ua, ub) = (Tricomplex::unit(a), Tricomplex::unit(b));
            ua * ub != nested_product(&ua, &ub)
        })
        .count();
    rows.push(row(S, "unit_table_mismatches", 0.0, mismatches as f64, 0.0));

    let mut r = rng(1);
    let (mut comm, mut assoc, mut hom, mut nested) = (0f64, 0f64, 0f64, 0f64);
    for _ in 0..2000 {
        let a = random_tricomplex(&mut r, 2.0);
        let b = random_tricomplex(&mut r, 2.0);
        let c = random_tricomplex(&mut r, 2.0);
        let ab = a * b;
        let scale = a.norm() * b.norm();
        comm = comm.max((ab - b * a).norm());
        assoc = assoc.max(rel_err(&(ab * c), &(a * (b * c)), scale * c.norm()));
        nested = nested.max(rel_err(&ab, &nested_product(&a, &b), scale));
        let split = a.split4().mul_componentwise(&b.split4()).join();
        hom = hom.max(rel_err(&ab, &split, scale));
    }
    rows.push(row(S, "commutativity_max_abs", 0.0, comm, 0.0));
    rows.push(at_most(S, "associativity_max_rel", 1e-12, assoc));
    rows.push(at_most(S, "nested_product_max_rel", 1e-12, nested));
    rows.push(at_most(S, "split4_homomorphism_max_rel", 1e-12, hom));

    let mut trip = 0f64;
    let mut norm_gap = 0f64;
    for _ in 0..2000 {
        let mut x = [0.0; 8];
        for v in &mut x {
            *v = f64::from(r.gen_range(-(1 << 20)..(1 << 20))) / f64::from(1 << 20);
        }
        let a = Tricomplex::new(x);
        trip = trip.max((a.split4().join() - a).norm()).max((a.split3().join() - a).norm());
        norm_gap = norm_gap.max((a.norm() - a.norm_idempotent()).abs());
    }
    rows.push(row(S, "dyadic_split_round_trip_max_abs", 0.0, trip, 0.0));
    rows.push(at_most(S, "norm_identity_max_abs", 1e-14, norm_gap));

    let one_j1 = Tricomplex::real(1.0) + Tricomplex::unit(Unit::J1);
    let cube = one_j1.pow(3);
    rows.push(row(S, "(1+j1)^3_real_part", 4.0, cube.x[0], 0.0));
    rows.push(row(S, "(1+j1)^3_j1_part", 4.0, cube.coefficient(Unit::J1), 0.0));
    let bc = Bicomplex::from_coefficients(0.5, -1.0, 0.25, 2.0);
    rows.push(row(S, "bicomplex_embedding_norm", bc.norm(), bc.to_tricomplex().norm(), 1e-15));
    rows.push(row(S, "principal_slice_count", 56.0, SliceSpec::principal_slices().len() as f64, 0.0));
    rows
}

fn roots_suite() -> Result<Vec<CheckRow>> {
    const S: &str = "roots";
    let mut rows = Vec::new();
    let mut r = rng(2);
    for p in [3u32, 5, 7] {
        let params = PolyParams::odd(p)?;
        let m = params.m_p;
        let mut count_bad = 0usize;
        let mut order_bad = 0usize;
        let mut residual = 0f64;
        for k in 0..600 {
            let c = match k % 3 {
                0 => r.gen_range(-m * 0.999..m * 0.999),
                1 => r.gen_range(m * 1.001..4.0),
                _ => r.gen_range(-4.0..-m * 1.001),
            };
            let mut rep = classify(p, c)?;
            if rep.regime == Regime::ThreeSimple {
                rep = refine_bounds(p, c, &rep)?;
            }
            let want = if c.abs() < m { 3 } else { 1 };
            if rep.total_multiplicity() != want {
                count_bad += 1;
            }
            let v: Vec<f64> = rep.roots.iter().map(|x| x.value).collect();
            let ordered = match rep.regime {
                Regime::ThreeSimple => v[0] < params.w1 && params.w1 < v[1] && v[1] < params.w2 && params.w2 < v[2],
                Regime::OneNegative => v[0] < params.w1,
                Regime::OnePositive => v[0] > params.w2,
                _ => true,
            };
            if !ordered {
                order_bad += 1;
            }
            residual = residual.max(rep.max_residual() / (1.0 + c.abs()));
        }
        rows.push(row(S, format!("p{p}_root_count_mismatches"), 0.0, count_bad as f64, 0.0));
        rows.push(row(S, format!("p{p}_ordering_violations"), 0.0, order_bad as f64, 0.0));
        rows.push(at_most(S, format!("p{p}_max_scaled_residual"), 1e-12, residual));

        let hi = classify(p, m)?;
        let lo = classify(p, -m)?;
        let double_hi = hi.roots.iter().find(|x| x.multiplicity == 2).map_or(f64::NAN, |x| x.value);
        let double_lo = lo.roots.iter().find(|x| x.multiplicity == 2).map_or(f64::NAN, |x| x.value);
        rows.push(row(S, format!("p{p}_double_root_at_w2"), params.w2, double_hi, 0.0));
        rows.push(row(S, format!("p{p}_double_root_at_w1"), params.w1, double_lo, 0.0));
    }
    let zero = classify(3, 0.0)?;
    let vals: Vec<f64> = zero.roots.iter().map(|x| x.value).collect();
    rows.push(row(S, "c0_roots_are_-1_0_1", 0.0, f64::from(u8::from(vals != [-1.0, 0.0, 1.0])), 0.0));
    Ok(rows)
}

fn dynamics_suite() -> Result<Vec<CheckRow>> {
    const S: &str = "dynamics";
    let mut rows = Vec::new();
    let mut r = rng(3);
    let max_iter = 200;

    for p in [3u32, 5] {
        let params = PolyParams::odd(p)?;
        let mut mismatch = 0usize;
        let mut ties = 0usize;
        let mut n = 0;
        while n < 500 {
            let c = random_tricomplex(&mut r, params.escape_radius);
            if c.norm() > params.escape_radius {
                continue;
            }
            n += 1;
            if orbit(&c, &params, max_iter).escape_index != orbit_direct(&c, &params, max_iter).escape_index {
                if near_threshold(&c, &params, max_iter, 1e-9) {
                    ties += 1;
                } else {
                    mismatch += 1;
                }
            }
        }
        rows.push(row(S, format!("p{p}_direct_vs_split_mismatches"), 0.0, mismatch as f64, 0.0));
        rows.push(at_most(S, format!("p{p}_direct_vs_split_ties"), 5.0, ties as f64));

        let mut agree = 0usize;
        let mut counted = 0usize;
        for _ in 0..1000 {
            let c = Complex64::new(r.gen_range(-1.2..1.2), r.gen_range(-1.2..1.2));
            let base = orbit_complex(c, &params, max_iter).escape_index;
            for k in 1..i64::from(p - 1) {
                counted += 1;
                if orbit_complex(rotate_param(c, p, k), &params, max_iter).escape_index == base {
                    agree += 1;
                }
            }
        }
        rows.push(at_most(S, format!("p{p}_rotation_disagreement_rate"), 1e-3, 1.0 - agree as f64 / counted as f64));

        let mut worst = 0f64;
        for _ in 0..200 {
            let (a, b) = (r.gen_range(-0.6..0.6), r.gen_range(-0.6..0.6));
            let h = hyper_orbit_points(a, b, p, 50);
            let u = real_orbit_points(a - b, p, 50);
            let v = real_orbit_points(a + b, p, 50);
            for m in 0..h.len().min(u.len()).min(v.len()) {
                let t = h[m].conjugate();
                if !(t.x.is_finite() && t.y.is_finite() && u[m].is_finite() && v[m].is_finite()) {
                    break;
                }
                let scale = u[m].abs().max(v[m].abs()).max(1.0);
                worst = worst.max((t.x - u[m]).abs().max((t.y - v[m]).abs()) / scale);
            }
        }
        rows.push(at_most(S, format!("p{p}_conjugation_max_rel"), 1e-10, worst));
    }

    let p3 = PolyParams::odd(3)?;
    let half = orbit(&Tricomplex::real(0.5), &p3, 10_000).escaped();
    rows.push(row(S, "c0.5_p3_escapes", 1.0, f64::from(u8::from(half)), 0.0));
    let hyper = orbit_hyper(0.3, 0.2, &p3, 10_000).escaped();
    rows.push(row(S, "hyper_0.3_0.2_p3_escapes", 1.0, f64::from(u8::from(hyper)), 0.0));
    Ok(rows)
}

fn sets_suite() -> Result<Vec<CheckRow>> {
    const S: &str = "sets";
    let mut rows = Vec::new();
    for p in [3u32, 5, 7, 9] {
        let params = PolyParams::odd(p)?;
        let m = params.m_p;
        let mut bad = 0usize;
        for k in 0..=2000 {
            let c = -1.0 + 2.0 * k as f64 / 2000.0;
            if (c.abs() - m).abs() <= 1e-3 {
                continue;
            }
            if real_axis_member(c, p) != !orbit_real(c, &params, 100_000).escaped() {
                bad += 1;
            }
        }
        rows.push(row(S, format!("p{p}_real_axis_disagreements"), 0.0, bad as f64, 0.0));
    }
    for p in [3u32, 5, 7] {
        let params = PolyParams::odd(p)?;
        let m = params.m_p;
        let n = 128;
        let mut bad = 0usize;
        for j in 0..n {
            for i in 0..n {
                let x = -1.0 + (i as f64 + 0.5) * 2.0 / n as f64;
                let y = -1.0 + (j as f64 + 0.5) * 2.0 / n as f64;
                if (x.abs() + y.abs() - m).abs() <= 1e-3 {
                    continue;
                }
                if hyperbrot_member(x, y, p) != !orbit_hyper(x, y, &params, 10_000).escaped() {
                    bad += 1;
                }
            }
        }
        rows.push(row(S, format!("p{p}_diamond_disagreements"), 0.0, bad as f64, 0.0));
    }
    let mut r = rng(4);
    let mut bad = 0usize;
    for _ in 0..100_000 {
        let (x, y, z) = (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        if slice_union_member(x, y, z, 3) != perplexbrot_member(x, y, z, 3) {
            bad += 1;
        }
    }
    rows.push(row(S, "slice_union_vs_octahedron_disagreements", 0.0, bad as f64, 0.0));
    rows.push(row(S, "m3", 2.0 / (3.0 * 3f64.sqrt()), m_p(3)?, 1e-15));
    rows.push(row(S, "hausdorff_limit_p3", 1.0 - 2.0 / (3.0 * 3f64.sqrt()), hausdorff_limit(3), 1e-15));
    let limits: Vec<f64> = (1..7).map(|n| hausdorff_limit(2 * n + 1)).collect();
    let decreasing = limits.windows(2).all(|w| w[1] < w[0]);
    rows.push(row(S, "hausdorff_limit_decreasing", 1.0, f64::from(u8::from(decreasing)), 0.0));
    Ok(rows)
}

fn raster_suite() -> Result<Vec<CheckRow>> {
    const S: &str = "raster";
    let mut rows = Vec::new();

    let w = Window2D::square(-1.0, 1.0, 128)?;
    for p in [3u32, 5] {
        let m = m_p(p)?;
        let r = scan2d(Plane::Hyperbrot, p, &w, 10_000)?;
        let dis = r.disagreements(|x, y| hyperbrot_member(x, y, p));
        let far = dis
            .iter()
            .filter(|&&(i, j)| {
                let (x, y) = w.cell_center(i, j);
                (x.abs() + y.abs() - m).abs() / 2f64.sqrt() > w.cell_diagonal()
            })
            .count();
        rows.push(row(S, format!("p{p}_hyperbrot_far_disagreements"), 0.0, far as f64, 0.0));
        rows.push(at_most(S, format!("p{p}_hyperbrot_disagreement_fraction"), 0.01, dis.len() as f64 / w.len() as f64));
    }

    let w3 = Window3D::cube(-1.0, 1.0, 32)?;
    let m3 = m_p(3)?;
    let vol = scan3d(&SliceSpec::PERPLEX, 3, &w3, 10_000)?;
    let far = vol
        .disagreements(|x, y, z| perplexbrot_member(x, y, z, 3))
        .iter()
        .filter(|&&(i, j, k)| {
            let (x, y, z) = w3.cell_center(i, j, k);
            (x.abs() + y.abs() + z.abs() - m3).abs() / 3f64.sqrt() > w3.cell_diagonal()
        })
        .count();
    rows.push(row(S, "p3_perplexbrot_far_disagreements", 0.0, far as f64, 0.0));

    let wd = Window2D::square(-1.5, 1.5, 96)?;
    let one = scan2d_with_workers(Plane::MultibrotComplex, 3, &wd, 300, 1)?;
    let four = scan2d_with_workers(Plane::MultibrotComplex, 3, &wd, 300, 4)?;
    rows.push(row(S, "worker_count_cell_mismatches", 0.0, one.cells().iter().zip(four.cells()).filter(|(a, b)| a != b).count() as f64, 0.0));

    let wh = Window2D::square(-1.1, 1.1, 128)?;
    let unit = Raster2D::from_predicate(wh, |x, y| x.abs() + y.abs() <= 1.0);
    let h3 = scan2d(Plane::Hyperbrot, 3, &wh, 10_000)?;
    let h = hausdorff_discrete(&unit, &h3)?;
    rows.push(row(S, "p3_hausdorff_vs_unit_diamond", hausdorff_limit(3), h, wh.cell_diagonal()));
    Ok(rows)
}

fn conjecture_suite() -> Result<Vec<CheckRow>> {
    const S: &str = "conjecture";
    let mut rows = Vec::new();
    let rep = conjecture_probe(2, 2001, 100_000)?;
    rows.push(row(S, "p2_real_interval_lo", rep.spec.interval_lo, rep.observed_lo, 1e-3));
    rows.push(row(S, "p2_real_interval_hi", rep.spec.interval_hi, rep.observed_hi, 1e-3));
    for p in [4u32, 6] {
        let rep = conjecture_probe(p, 2001, 10_000)?;
        for (name, want, got) in rep.rows() {
            rows.push(row(S, format!("p{p}_{name}_reported"), want, got, f64::INFINITY));
        }
    }
    Ok(rows)
}

pub fn run_suite(suite: Suite) -> Result<Vec<CheckRow>> {
    match suite {
        Suite::Algebra => Ok(algebra_suite()),
        Suite::Roots => roots_suite(),
        Suite::Dynamics => dynamics_suite(),
        Suite::Sets => sets_suite(),
        Suite::Raster => raster_suite(),
        Suite::Conjecture => conjecture_suite(),
        Suite::All => {
            let mut rows = Vec::new();
            for s in Suite::INDIVIDUAL {
                rows.extend(run_suite(s)?);
            }
            Ok(rows)
        }
    }
}

pub fn all_pass(rows: &[CheckRow]) -> bool {
    rows.iter().all(|r| r.pass)
}

/// Columns: suite, check, expected, observed, tolerance, pass.
pub fn report_csv(rows: &[CheckRow]) -> String {
    let fmt_num = |v: f64| {
        if v.is_finite() {
            format!("{v:e}")
        } else {
            v.to_string()
        }
    };
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.suite.to_string(),
                r.check.clone(),
                fmt_num(r.expected),
                fmt_num(r.observed),
                fmt_num(r.tolerance),
                r.pass.to_string(),
            ]
        })
        .collect();
    csv_string(&["suite", "check", "expected", "observed", "tolerance", "pass"], &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in Suite::INDIVIDUAL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn algebra_and_roots_suites_pass() {
        let rows = run_suite(Suite::Algebra).unwrap();
        assert!(all_pass(&rows), "{}", report_csv(&rows));
        let rows = run_suite(Suite::Roots).unwrap();
        assert!(all_pass(&rows), "{}", report_csv(&rows));
    }

    #[test]
    fn dynamics_suite_passes() {
        let rows = run_suite(Suite::Dynamics).unwrap();
        assert!(all_pass(&rows), "{}", report_csv(&rows));
    }

    #[test]
    fn report_columns() {
        let rows = vec![row("x", "c", 1.0, 1.5, 0.25)];
        assert!(!all_pass(&rows));
        let csv = report_csv(&rows);
        assert_eq!(csv, "suite,check,expected,observed,tolerance,pass\nx,c,1e0,1.5e0,2.5e-1,false\n");
    }
}
