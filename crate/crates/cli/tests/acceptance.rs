//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::{E, PI};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_tail::bounds::{per_cell_lower_bounds, per_cell_upper_bounds};
use spectral_tail::cells::{a_eval, b_value, beta_value, model_spectrum_dirichlet, model_spectrum_neumann, Mode};
use spectral_tail::oracle::{discretize, Grid, RightBc};
use spectral_tail::partition::{default_refine_depth, refine_delta_sequence, DeltaSequence, Partition};
use spectral_tail::quad::{integrate, Tolerance};
use spectral_tail::semiclassical::admissible_m_sup;
use spectral_tail::{
    assemble_bracket, build_partition, error_exponents, negative_tail, weyl_tail_sum, BranchFamily, CoefficientP,
    OraclePolicy,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn power_family() -> BranchFamily {
    BranchFamily::power_inverse_square(0.5, 0.6).unwrap()
}

fn unit_p() -> CoefficientP {
    CoefficientP::constant(1.0).unwrap()
}

const SANDWICH_LEVELS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

fn closed_form_beta() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tol = Tolerance { abs: 0.0, rel: 1e-13, max_intervals: 200 };
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let eps = rng.gen_range(0.001..1.0);
        let alpha = eps + rng.gen_range(1e-3..20.0);
        let p = rng.gen_range(0.1..10.0);
        let delta = rng.gen_range(0.01..100.0);
        let closed = beta_value(alpha, eps, p, delta).unwrap();
        let b = b_value(alpha, eps, p, delta).unwrap();
        let quad = integrate(|t| a_eval(alpha, p, delta, t), 0.0, b, tol).map_err(|e| e.to_string())?.value;
        let rel = (closed - quad).abs() / quad.abs();
        worst = worst.max(rel);
        ensure(rel <= 1e-10, || format!("alpha={alpha} eps={eps} p={p} delta={delta}: rel {rel:e}"))?;
    }
    Ok(format!("200 draws, worst relative gap {worst:.1e}"))
}

fn model_cells() -> Outcome {
    let d = model_spectrum_dirichlet(PI, 1.0, &[(1, 5.0)], 1.0);
    let n = model_spectrum_neumann(PI, 1.0, &[(1, 5.0)], 1.0);
    ensure((d.count, d.sum) == (1, 4.0), || format!("Dirichlet {:?}", (d.count, d.sum)))?;
    ensure((n.count, n.sum) == (2, 9.0), || format!("Neumann {:?}", (n.count, n.sum)))?;
    // hand enumeration: Dirichlet m = 1: 5 - 1 = 4; m = 2: 5 - 4 = 1, not > 1.
    // Neumann k = 0: 5; k = 1: 4; k = 2: 1, not > 1.
    ensure(d.modes == [Mode { m: 1, j: 1, mu: 4.0 }], || format!("{:?}", d.modes))?;
    ensure(n.modes == [Mode { m: 1, j: 1, mu: 5.0 }, Mode { m: 2, j: 1, mu: 4.0 }], || format!("{:?}", n.modes))?;
    Ok("Dirichlet (1, 4), Neumann (2, 9)".into())
}

fn oracle_correctness() -> Outcome {
    let (len, n, c) = (PI, 50, 50.0);
    let grid = Grid::new(len, n).unwrap();
    let h = grid.h();
    let t = discretize(|_| c, |_| 1.0, grid, RightBc::Dirichlet).map_err(|e| e.to_string())?;
    let evs = t.eigenvalues_below_with_tol(0.0, 1e-13);
    let mut worst: f64 = 0.0;
    for (k, ev) in evs.iter().enumerate() {
        let exact = 2.0 / (h * h) * (1.0 - ((k + 1) as f64 * PI * h / len).cos()) - c;
        worst = worst.max((ev - exact).abs());
    }
    ensure(evs.len() == 7, || format!("expected 7 eigenvalues below 0, got {}", evs.len()))?;
    ensure(worst <= 1e-12, || format!("discrete formula gap {worst:e}"))?;

    let alpha = |x: f64| 1.0 / (1.0 + x).sqrt();
    let coarse = Grid::new(36.0, 900).unwrap();
    let lowest = |g: Grid, k: usize| {
        discretize(alpha, |_| 1.0, g, RightBc::Dirichlet).unwrap().lowest_eigenvalues(k, 1e-13)
    };
    let (e1, e2, e4) = (lowest(coarse, 2), lowest(coarse.refined(), 2), lowest(coarse.refined().refined(), 2));
    let mut ratios = Vec::new();
    for i in 0..2 {
        let r = (e1[i] - e2[i]) / (e2[i] - e4[i]);
        ensure((3.0..=5.0).contains(&r), || format!("eigenvalue {i}: order ratio {r}"))?;
        ratios.push(r);
    }
    Ok(format!("max gap {worst:.1e}; order ratios {:.3}, {:.3}", ratios[0], ratios[1]))
}

fn sandwich(family: &BranchFamily, levels: &[f64]) -> Outcome {
    let p = unit_p();
    let mut parts = Vec::new();
    for &eps in levels {
        let b = assemble_bracket(family, &p, eps, 0.5).map_err(|e| e.to_string())?;
        let o = negative_tail(family, &p, eps, &OraclePolicy::default()).map_err(|e| e.to_string())?;
        let err = o.error.total();
        ensure(b.n_lower <= o.count && o.count <= b.n_upper, || {
            format!("eps {eps}: counts {} <= {} <= {} violated", b.n_lower, o.count, b.n_upper)
        })?;
        ensure(b.s_lower - err <= o.sum && o.sum <= b.s_upper + err, || {
            format!("eps {eps}: sums {} <= {} <= {} (err {err:e}) violated", b.s_lower, o.sum, b.s_upper)
        })?;
        parts.push(format!("eps {eps}: N {}<={}<={}, S {:.4}<={:.4}<={:.4}", b.n_lower, o.count, b.n_upper, b.s_lower, o.sum, b.s_upper));
    }
    Ok(parts.join("; "))
}

fn per_cell_inequalities() -> Outcome {
    let family = power_family();
    let p = unit_p();
    let mut checked = 0;
    for &eps in &SANDWICH_LEVELS {
        let part = build_partition(&family, eps, 0.5).map_err(|e| e.to_string())?;
        for c in per_cell_lower_bounds(&part, &family, &p, Tolerance::default()).map_err(|e| e.to_string())? {
            ensure(c.lhs > c.rhs - 1e-8, || format!("eps {eps}, cell {}: lower {} vs {}", c.index, c.lhs, c.rhs))?;
            checked += 1;
        }
        for c in per_cell_upper_bounds(&part, &family, &p) {
            ensure(c.lhs <= c.rhs + 1e-8, || format!("eps {eps}, cell {}: upper {} vs {}", c.index, c.lhs, c.rhs))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cell inequalities"))
}

fn weyl_ratio_trend() -> Outcome {
    let family = power_family();
    let p = unit_p();
    let levels: Vec<f64> = (0..5).map(|k| if k == 4 { 0.05 } else { 0.4 * (0.125f64).powf(k as f64 / 4.0) }).collect();
    let mut gaps = Vec::new();
    for &eps in &levels {
        let o = negative_tail(&family, &p, eps, &OraclePolicy::default()).map_err(|e| e.to_string())?;
        let w = weyl_tail_sum(&family, &p, eps).map_err(|e| e.to_string())?;
        gaps.push((o.sum / w.total - 1.0).abs());
    }
    let tail = &gaps[2..];
    ensure(tail.windows(2).all(|w| w[1] <= w[0]), || format!("not nonincreasing: {gaps:?}"))?;
    ensure(gaps[4] <= 0.2, || format!("gap at 0.05 is {}", gaps[4]))?;
    Ok(format!("|ratio - 1| = {}", gaps.iter().map(|g| format!("{g:.4}")).collect::<Vec<_>>().join(", ")))
}

fn example33() -> Outcome {
    let family = BranchFamily::example33(25.0).unwrap();
    let psi = family.psi(1, 0.5).ok_or("psi_1(0.5) absent")?;
    let exact = E.powf(E * E);
    let rel = (psi - exact).abs() / exact;
    ensure(rel <= 1e-9, || format!("psi_1(0.5) = {psi}, e^(e^2) = {exact}"))?;
    let s = sandwich(&family, &[0.9, 0.7, 0.5])?;
    Ok(format!("psi_1(0.5) rel err {rel:.1e}; {s}"))
}

fn exponents() -> Outcome {
    let r = error_exponents(0.5, 0.05).map_err(|e| e.to_string())?;
    ensure(r.a_param == 0.1625 && r.t0 == 0.015625, || format!("{r:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let a0 = rng.gen_range(1e-3..2.0 / 3.0);
        let m = rng.gen_range(1e-9..1.0) * admissible_m_sup(a0);
        let r = error_exponents(a0, m).map_err(|e| e.to_string())?;
        ensure(r.a_param > 0.0 && r.a_param < 1.0 && r.t0 > 0.0, || format!("{r:?}"))?;
    }
    Ok("(0.5, 0.05) -> (0.1625, 0.015625); 1000 admissible draws in range".into())
}

fn partition_recursion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut draws = 0;
    while draws < 1000 {
        let psi1 = 10f64.powf(rng.gen_range(0.0..7.0));
        let a = rng.gen_range(0.05..0.95);
        if psi1.powf(a) < 2.0 {
            continue;
        }
        draws += 1;
        let part = Partition::from_psi1(0.1, psi1, a).map_err(|e| e.to_string())?;
        let seq = refine_delta_sequence(&part, default_refine_depth(a)).map_err(|e| e.to_string())?;
        let bound = 2.0 * part.psi1_pow_a();
        for r in seq.ratios() {
            ensure(r < bound, || format!("psi1 {psi1}, a {a}: ratio {r} >= {bound}"))?;
        }
        let i0 = DeltaSequence::termination_index(a);
        ensure(seq.deltas[i0 + 1] <= 1.0, || format!("psi1 {psi1}, a {a}: delta_{} = {}", i0 + 1, seq.deltas[i0 + 1]))?;
    }
    Ok("1000 draws".into())
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("spectral-tail-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let base = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/power.toml"))
        .map_err(|e| e.to_string())?;
    let cfg = base.replace(
        "eps_grid = { start = 0.4, stop = 0.05, count = 5 }",
        "eps_list = [0.4, 0.2, 0.1, 0.05]",
    );
    let cfg_path = dir.join("sandwich.toml");
    std::fs::write(&cfg_path, cfg).map_err(|e| e.to_string())?;
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let out = dir.join(format!("sweep-{threads}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_spectral-tail"))
            .args(["sweep", "--config", cfg_path.to_str().unwrap(), "--out", out.to_str().unwrap()])
            .env("SPECTRAL_TAIL_THREADS", threads)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("sweep with {threads} threads: {status}"))?;
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let one = run("1")?;
    let many = run("4")?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(one == many, || "outputs differ between 1 and 4 threads".into())?;
    let rows = one.iter().filter(|&&b| b == b'\n').count() - 1;
    ensure(rows == 4, || format!("expected 4 rows, got {rows}"))?;
    Ok(format!("{rows} rows, {} bytes identical", one.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("closed-form beta vs quadrature", closed_form_beta),
        ("model cell spectra", model_cells),
        ("oracle exactness and order", oracle_correctness),
        ("bracketing sandwich", || sandwich(&power_family(), &SANDWICH_LEVELS)),
        ("per-cell inequalities", per_cell_inequalities),
        ("Weyl ratio trend", weyl_ratio_trend),
        ("log-log example family run", example33),
        ("exponent formulas", exponents),
        ("partition recursion", partition_recursion),
        ("thread-count determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2} s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2} s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
