//! Acceptance suite. Runs every criterion in sequence and prints one
//! PASS/FAIL line per criterion; exits non-zero if any fails.
//!
//! Pass criterion numbers as arguments to run a subset:
//! `cargo test -p tribrot --test acceptance -- 2 4`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use tribrot::dynamics::{
    hyper_orbit_points, orbit, orbit_direct, real_orbit_points, rotate_param,
};
use tribrot::io::{ppm_bytes, vox_bytes};
use tribrot::raster::{
    hausdorff_discrete, scan2d, scan2d_with_workers, scan3d, scan3d_with_workers, Plane,
};
use tribrot::realroots::{classify, eval_r, refine_bounds};
use tribrot::sets::{
    conjecture_probe, discus_contains, hausdorff_limit, perplexbrot_member, slice_union_member,
};
use tribrot::{
    PolyParams, Raster2D, Raster3D, Regime, SliceSpec, Tricomplex, Unit, Window2D, Window3D,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// `m_p` written out independently of the library.
fn m_formula(p: u32) -> f64 {
    let p = p as f64;
    (p - 1.0) / p.powf(p / (p - 1.0))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// 1 ------------------------------------------------------------------------

fn real_interval() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [3u32, 5, 7, 9] {
        let params = PolyParams::odd(p).unwrap();
        let bounded = |c: f64| !orbit(&Tricomplex::real(c), &params, 100_000).escaped();
        let (mut lo, mut hi) = (0.0, 1.0);
        ok &= bounded(lo) && !bounded(hi);
        while hi - lo > 1e-7 {
            let mid = 0.5 * (lo + hi);
            if bounded(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let found = 0.5 * (lo + hi);
        let err = (found - m_formula(p)).abs();
        worst = worst.max(err);
        notes.push(format!("p{p}={found:.6}"));
    }
    let elapsed = start.elapsed();
    ok &= worst <= 1e-3 && elapsed < Duration::from_secs(30);
    Outcome::new(
        ok,
        format!("{} max|err|={worst:.2e} time={:.1}s", notes.join(" "), elapsed.as_secs_f64()),
    )
}

// 2 ------------------------------------------------------------------------

fn hyperbrot_diamond() -> Outcome {
    let start = Instant::now();
    let w = Window2D::square(-1.0, 1.0, 512).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [3u32, 5, 7] {
        let m = m_formula(p);
        let r = scan2d(Plane::Hyperbrot, p, &w, 10_000).unwrap();
        let dis = r.disagreements(|x, y| x.abs() + y.abs() <= m);
        let far = dis
            .iter()
            .filter(|&&(i, j)| {
                let (x, y) = w.cell_center(i, j);
                (x.abs() + y.abs() - m).abs() / 2f64.sqrt() > w.cell_diagonal()
            })
            .count();
        let frac = dis.len() as f64 / w.len() as f64;
        ok &= far == 0 && frac < 0.01;
        notes.push(format!("p{p}: {} disagree ({:.4}%), {far} far", dis.len(), 100.0 * frac));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    Outcome::new(ok, format!("{} time={:.1}s", notes.join("; "), elapsed.as_secs_f64()))
}

// 3 ------------------------------------------------------------------------

fn perplexbrot_octahedron() -> Outcome {
    let start = Instant::now();
    let w = Window3D::cube(-1.0, 1.0, 128).unwrap();
    let m = m_formula(3);
    let r = scan3d(&SliceSpec::PERPLEX, 3, &w, 10_000).unwrap();
    let dis = r.disagreements(|x, y, z| x.abs() + y.abs() + z.abs() <= m);
    let far = dis
        .iter()
        .filter(|&&(i, j, k)| {
            let (x, y, z) = w.cell_center(i, j, k);
            (x.abs() + y.abs() + z.abs() - m).abs() / 3f64.sqrt() > w.cell_diagonal()
        })
        .count();

    // Half the samples are uniform in the cube, half hug the boundary.
    let mut g = rng(3);
    let mut exceptions = 0usize;
    for k in 0..1_000_000 {
        let (x, y, z) = if k % 2 == 0 {
            (g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0))
        } else {
            let (a, b): (f64, f64) = (g.gen(), g.gen());
            let (a, b) = if a + b > 1.0 { (1.0 - a, 1.0 - b) } else { (a, b) };
            let t = m * (1.0 + g.gen_range(-1e-9..1e-9));
            let sign = |s: bool| if s { 1.0 } else { -1.0 };
            (
                sign(g.gen()) * t * a,
                sign(g.gen()) * t * b,
                sign(g.gen()) * t * (1.0 - a - b),
            )
        };
        if slice_union_member(x, y, z, 3) != perplexbrot_member(x, y, z, 3) {
            exceptions += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = far == 0 && exceptions == 0 && elapsed < Duration::from_secs(120);
    Outcome::new(
        ok,
        format!(
            "{} voxel disagreements, {far} beyond one diagonal; slice-union exceptions {exceptions}/1e6; time={:.1}s",
            dis.len(),
            elapsed.as_secs_f64()
        ),
    )
}

// 4 ------------------------------------------------------------------------

fn hausdorff_convergence() -> Outcome {
    let w = Window2D::square(-1.1, 1.1, 512).unwrap();
    let unit = Raster2D::from_predicate(w, |x, y| x.abs() + y.abs() <= 1.0);
    let mut ok = true;
    let mut seq = Vec::new();
    let mut notes = Vec::new();
    for p in [3u32, 5, 7, 9, 11, 13] {
        let r = scan2d(Plane::Hyperbrot, p, &w, 10_000).unwrap();
        let h = hausdorff_discrete(&unit, &r).unwrap();
        let want = 1.0 - m_formula(p);
        ok &= (h - want).abs() <= w.cell_diagonal();
        ok &= (hausdorff_limit(p) - want).abs() <= 1e-15;
        seq.push(h);
        notes.push(format!("p{p}={h:.4}/{want:.4}"));
    }
    let decreasing = seq.windows(2).all(|s| s[1] < s[0]);
    ok &= decreasing;

    let w3 = Window3D::cube(-1.1, 1.1, 96).unwrap();
    let unit3 = Raster3D::from_predicate(w3, |x, y, z| x.abs() + y.abs() + z.abs() <= 1.0);
    for p in [3u32, 5, 9] {
        let r = scan3d(&SliceSpec::PERPLEX, p, &w3, 10_000).unwrap();
        let h = hausdorff_discrete(&unit3, &r).unwrap();
        let want = 1.0 - m_formula(p);
        ok &= (h - want).abs() <= w3.cell_diagonal();
        notes.push(format!("3D p{p}={h:.4}/{want:.4}"));
    }
    Outcome::new(
        ok,
        format!(
            "{} decreasing={decreasing} (tol 2D {:.4}, 3D {:.4})",
            notes.join(" "),
            w.cell_diagonal(),
            w3.cell_diagonal()
        ),
    )
}

// 5 ------------------------------------------------------------------------

fn root_lemmas() -> Outcome {
    let mut g = rng(5);
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for p in [3u32, 5, 7, 9] {
        let params = PolyParams::odd(p).unwrap();
        let (m, w1, w2) = (m_formula(p), params.w1, params.w2);
        let regimes = [Regime::ThreeSimple, Regime::OneNegative, Regime::OnePositive];
        for regime in regimes {
            for _ in 0..1000 {
                let c = match regime {
                    Regime::ThreeSimple => loop {
                        let c = g.gen_range(-m..m);
                        if c != 0.0 && (c.abs() - m).abs() > 1e-9 {
                            break c;
                        }
                    },
                    Regime::OneNegative => g.gen_range(m * (1.0 + 1e-9)..m + 10.0),
                    _ => g.gen_range(-m - 10.0..-m * (1.0 + 1e-9)),
                };
                checked += 1;
                let rep = classify(p, c).unwrap();
                let values: Vec<f64> = rep.roots.iter().map(|r| r.value).collect();
                let tol = 1e-12 * (1.0 + c.abs());
                let residual_ok = values.iter().all(|&x| eval_r(p, c, x).abs() <= tol);
                let brackets_ok = rep
                    .roots
                    .iter()
                    .all(|r| r.bracket.0 <= r.value && r.value <= r.bracket.1);
                let shape_ok = rep.regime == regime
                    && match regime {
                        Regime::ThreeSimple => {
                            values.len() == 3
                                && values[0] < w1
                                && w1 < values[1]
                                && values[1] < w2
                                && w2 < values[2]
                        }
                        Regime::OneNegative => values.len() == 1 && values[0] < w1,
                        _ => values.len() == 1 && values[0] > w2,
                    };
                let refined_ok = regime != Regime::ThreeSimple || {
                    match refine_bounds(p, c, &rep) {
                        Ok(r) if c < 0.0 => values[0] > -1.0 && values[0] < w1 && r.roots[0].bracket == (-1.0, w1),
                        Ok(r) => values[2] > w2 && values[2] < 1.0 && r.roots[2].bracket == (w2, 1.0),
                        Err(_) => false,
                    }
                };
                if !(residual_ok && brackets_ok && shape_ok && refined_ok) {
                    failures.push(format!("p{p} c={c}"));
                }
            }
        }

        // Double roots sit exactly at the critical points.
        let hi = classify(p, params.m_p).unwrap();
        let lo = classify(p, -params.m_p).unwrap();
        let double_hi = hi.regime == Regime::DoubleAtW2
            && hi.roots.len() == 2
            && hi.roots[1].value == w2
            && hi.roots[1].multiplicity == 2
            && hi.roots[0].value < w1
            && eval_r(p, params.m_p, hi.roots[0].value).abs() <= 1e-12 * (1.0 + params.m_p);
        let double_lo = lo.regime == Regime::DoubleAtW1
            && lo.roots.len() == 2
            && lo.roots[0].value == w1
            && lo.roots[0].multiplicity == 2
            && lo.roots[1].value > w2;
        if !(double_hi && double_lo) {
            failures.push(format!("p{p} double roots"));
        }
        let zero: Vec<f64> = classify(p, 0.0).unwrap().roots.iter().map(|r| r.value).collect();
        if zero != [-1.0, 0.0, 1.0] {
            failures.push(format!("p{p} c=0"));
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{checked} random cases over 3 regimes x 4 powers; failures: {:?}", failures.iter().take(5).collect::<Vec<_>>()),
    )
}

// 6 ------------------------------------------------------------------------

type C = Complex64;

/// `(a1 + a2 i2)(b1 + b2 i2)` with `i2² = −1`, components in `C(i1)`.
fn bc_mul(a: (C, C), b: (C, C)) -> (C, C) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Nested product `(ζ1 + ζ2 i3)(ξ1 + ξ2 i3)` with `i3² = −1`.
fn nested_mul(a: &Tricomplex, b: &Tricomplex) -> Tricomplex {
    let split = |t: &Tricomplex| {
        let x = t.x;
        (
            (C::new(x[0], x[1]), C::new(x[2], x[5])),
            (C::new(x[3], x[6]), C::new(x[7], x[4])),
        )
    };
    let ((a1, a2), (b1, b2)) = (split(a), split(b));
    let sub = |u: (C, C), v: (C, C)| (u.0 - v.0, u.1 - v.1);
    let add = |u: (C, C), v: (C, C)| (u.0 + v.0, u.1 + v.1);
    let z1 = sub(bc_mul(a1, b1), bc_mul(a2, b2));
    let z2 = add(bc_mul(a1, b2), bc_mul(a2, b1));
    Tricomplex::new([
        z1.0.re, z1.0.im, z1.1.re, z2.0.re, z2.1.im, z1.1.im, z2.0.im, z2.1.re,
    ])
}

fn random_tri(g: &mut ChaCha8Rng, s: f64) -> Tricomplex {
    let mut x = [0.0; 8];
    for v in &mut x {
        *v = g.gen_range(-s..s);
    }
    Tricomplex::new(x)
}

/// Whether some iterate before the decision lies within `band` of the
/// escape radius.
fn tie_at_threshold(c: &Tricomplex, params: &PolyParams, max_iter: u32, band: f64) -> bool {
    let mut z = Tricomplex::ZERO;
    for _ in 0..max_iter {
        z = z.pow(params.p) + *c;
        let n = z.norm();
        if (n - params.escape_radius).abs() <= band {
            return true;
        }
        if n.is_nan() || n > params.escape_radius {
            return false;
        }
    }
    false
}

fn algebra_correctness() -> Outcome {
    let mut closure_bad = 0;
    for a in Unit::ALL {
        for b in Unit::ALL {
            let prod = Tricomplex::unit(a) * Tricomplex::unit(b);
            let nonzero: Vec<f64> = prod.x.iter().copied().filter(|&v| v != 0.0).collect();
            let unit_like = nonzero.len() == 1 && nonzero[0].abs() == 1.0;
            if !unit_like || prod != nested_mul(&Tricomplex::unit(a), &Tricomplex::unit(b)) {
                closure_bad += 1;
            }
        }
    }

    let mut g = rng(6);
    let mut worst3: f64 = 0.0;
    let mut worst4: f64 = 0.0;
    for _ in 0..100_000 {
        let a = random_tri(&mut g, 3.0);
        let b = random_tri(&mut g, 3.0);
        let ab = a * b;
        let scale = a.norm() * b.norm();
        let via3 = a.split3().mul_componentwise(&b.split3()).join();
        let via4 = a.split4().mul_componentwise(&b.split4()).join();
        worst3 = worst3.max((ab - via3).norm() / scale);
        worst4 = worst4.max((ab - via4).norm() / scale);
    }

    let mut mismatches = 0usize;
    let mut ties = 0usize;
    for p in [3u32, 5] {
        let params = PolyParams::odd(p).unwrap();
        let mut n = 0;
        while n < 10_000 {
            let c = random_tri(&mut g, params.escape_radius);
            if !discus_contains(&c, p) {
                continue;
            }
            n += 1;
            if orbit(&c, &params, 1000).escape_index != orbit_direct(&c, &params, 1000).escape_index {
                if tie_at_threshold(&c, &params, 1000, 1e-9) {
                    ties += 1;
                } else {
                    mismatches += 1;
                }
            }
        }
    }
    let ok = closure_bad == 0 && worst3 <= 1e-12 && worst4 <= 1e-12 && mismatches == 0;
    Outcome::new(
        ok,
        format!(
            "table mismatches {closure_bad}/64; homomorphism rel err split3 {worst3:.2e}, split4 {worst4:.2e} (1e5 pairs); direct vs split {mismatches} mismatches, {ties} threshold ties (2x1e4 discus points)"
        ),
    )
}

// 7 ------------------------------------------------------------------------

/// Escape index and the closest approach of `‖z‖` to the radius up to the
/// decision.
fn complex_orbit(c: C, p: u32, radius: f64, max_iter: u32) -> (Option<u32>, f64) {
    let mut z = C::new(0.0, 0.0);
    let mut closest = f64::INFINITY;
    for m in 1..=max_iter {
        z = z.powu(p) + c;
        let n = z.norm();
        closest = closest.min((n - radius).abs());
        if n.is_nan() || n > radius {
            return (Some(m), closest);
        }
    }
    (None, closest)
}

fn rotation_symmetry() -> Outcome {
    let mut g = rng(7);
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [3u32, 5, 7] {
        let params = PolyParams::odd(p).unwrap();
        let r = params.escape_radius;
        let (mut agree, mut counted, mut excluded) = (0usize, 0usize, 0usize);
        for _ in 0..10_000 {
            let c = C::from_polar(r * g.gen::<f64>().sqrt(), g.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
            let (base, near) = complex_orbit(c, p, r, 1000);
            for k in 1..i64::from(p - 1) {
                let (rot, near_rot) = complex_orbit(rotate_param(c, p, k), p, r, 1000);
                if near.min(near_rot) <= 1e-6 {
                    excluded += 1;
                    continue;
                }
                counted += 1;
                if rot == base {
                    agree += 1;
                }
            }
        }
        let rate = agree as f64 / counted as f64;
        ok &= rate >= 0.999;
        notes.push(format!("p{p}: {:.4}% agree ({counted} pairs, {excluded} near threshold)", 100.0 * rate));
    }
    Outcome::new(ok, notes.join("; "))
}

// 8 ------------------------------------------------------------------------

fn conjugation() -> Outcome {
    let mut g = rng(8);
    let mut worst: f64 = 0.0;
    let mut compared = 0usize;
    for p in [3u32, 5, 7] {
        for _ in 0..1000 {
            let (a, b) = (g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0));
            let h = hyper_orbit_points(a, b, p, 50);
            let u = real_orbit_points(a - b, p, 50);
            let v = real_orbit_points(a + b, p, 50);
            for m in 0..50 {
                let t = h[m].conjugate();
                if ![t.x, t.y, u[m], v[m]].iter().all(|q| q.is_finite()) {
                    break;
                }
                let scale = u[m].abs().max(v[m].abs()).max(1.0);
                worst = worst.max((t.x - u[m]).abs().max((t.y - v[m]).abs()) / scale);
                compared += 1;
            }
        }
    }
    Outcome::new(worst <= 1e-10, format!("max rel err {worst:.2e} over {compared} finite iterates (p=3,5,7; 1e3 pairs each)"))
}

// 9 ------------------------------------------------------------------------

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn determinism() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let w = Window2D::square(-1.5, 1.5, 256).unwrap();
    for plane in [Plane::MultibrotComplex, Plane::Hyperbrot] {
        let outs: Vec<Vec<u8>> = [1usize, 4, 16]
            .iter()
            .map(|&n| ppm_bytes(&scan2d_with_workers(plane, 5, &w, 500, n).unwrap()))
            .collect();
        ok &= outs.windows(2).all(|s| s[0] == s[1]);
    }
    let w3 = Window3D::cube(-1.0, 1.0, 48).unwrap();
    let vols: Vec<Vec<u8>> = [1usize, 4, 16]
        .iter()
        .map(|&n| vox_bytes(&scan3d_with_workers(&SliceSpec::PERPLEX, 3, &w3, 500, n).unwrap()))
        .collect();
    ok &= vols.windows(2).all(|s| s[0] == s[1]);
    notes.push(format!("workers 1/4/16 identical={ok}"));

    let golden = |name: &str| std::fs::read(format!("{GOLDEN}/{name}")).unwrap_or_default();
    let small = [
        (
            "m3_64.ppm",
            ppm_bytes(&scan2d(Plane::MultibrotComplex, 3, &Window2D::square(-1.5, 1.5, 64).unwrap(), 1000).unwrap()),
        ),
        (
            "h3_64.ppm",
            ppm_bytes(&scan2d(Plane::Hyperbrot, 3, &Window2D::square(-1.0, 1.0, 64).unwrap(), 1000).unwrap()),
        ),
        (
            "p3_24.vox",
            vox_bytes(&scan3d(&SliceSpec::PERPLEX, 3, &Window3D::cube(-1.0, 1.0, 24).unwrap(), 1000).unwrap()),
        ),
    ];
    for (name, bytes) in &small {
        let same = golden(name) == *bytes;
        ok &= same;
        notes.push(format!("{name} {}", if same { "matches" } else { "DIFFERS" }));
    }
    let big = ppm_bytes(&scan2d(Plane::Hyperbrot, 3, &Window2D::square(-1.0, 1.0, 512).unwrap(), 1000).unwrap());
    let digest = hex(&Sha256::digest(&big));
    let want = String::from_utf8(golden("h3_512.ppm.sha256")).unwrap_or_default();
    let same = want.split_whitespace().next() == Some(digest.as_str());
    ok &= same;
    notes.push(format!("h3_512 sha256 {}", if same { "matches" } else { "DIFFERS" }));
    Outcome::new(ok, notes.join("; "))
}

// 10 -----------------------------------------------------------------------

fn conjecture_probe_check() -> Outcome {
    let rep = conjecture_probe(2, 2001, 100_000).unwrap();
    let ok = (rep.observed_lo + 2.0).abs() <= 1e-3
        && (rep.observed_hi - 0.25).abs() <= 1e-3
        && (rep.spec.interval_lo + 2.0).abs() <= 1e-15
        && (rep.spec.interval_hi - 0.25).abs() <= 1e-15;
    let mut detail = format!("p=2 observed [{:.6}, {:.6}]", rep.observed_lo, rep.observed_hi);
    for p in [4u32, 6] {
        let r = conjecture_probe(p, 2001, 100_000).unwrap();
        detail.push_str(&format!(
            "; p={p} (reported) real [{:.6}, {:.6}] vs [{:.6}, {:.6}], t {:.6} vs {:.6}, l {:.6} vs {:.6}",
            r.observed_lo,
            r.observed_hi,
            r.spec.interval_lo,
            r.spec.interval_hi,
            r.observed_t,
            r.spec.t_p,
            r.observed_l,
            r.spec.l_p
        ));
    }
    Outcome::new(ok, detail)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("real-axis interval", real_interval),
        ("hyperbrot diamond", hyperbrot_diamond),
        ("perplexbrot octahedron", perplexbrot_octahedron),
        ("hausdorff convergence", hausdorff_convergence),
        ("root lemmas", root_lemmas),
        ("algebra correctness", algebra_correctness),
        ("rotation symmetry", rotation_symmetry),
        ("conjugation", conjugation),
        ("determinism and goldens", determinism),
        ("conjecture probe", conjecture_probe_check),
    ];
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate().map(|(i, c)| (i + 1, c)) {
        if !selected.is_empty() && !selected.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {:<24} {} [{:.1}s] {}",
            name,
            if out.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
