//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Library results are cross-checked against brute-force oracles written
//! here from the definitions: direct sign enumeration for Rademacher
//! complexities, a left-to-right sweep for 1-D covering numbers, and
//! stand-alone re-implementations of the 1-D learners.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use arc_bounds::algorithms::{Domain, LearnerSpec};
use arc_bounds::fractal::{check_steiner, dim_fm, dim_fm_oracle, steiner_augment, trivial_dim_bound, STEINER_RTOL};
use arc_bounds::lab::{
    binomial, compress_check, expectation_bound_experiment, fractal_bound_experiment, limit_ratio_experiment,
    sgd_check, vc_check, vc_rhs, LossSpec, Setup, SgdCheckOptions,
};
use arc_bounds::metric::diameter;
use arc_bounds::rademacher::{covering_rad_bound, massart_bound, rademacher_exact, rademacher_mc, LossMatrix};
use arc_bounds::supersample::{build_theta_hat, draw_supersample, Distribution, ThetaMode};
use arc_bounds::{Metric, PointCloud, SolverLimits, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

// ------------------------------------------------------------------ oracles

/// `(1/n) 2^-n Σ_σ max_r Σ_i σ_i M_ri` by direct enumeration.
fn brute_rad(rows: &[Vec<f64>]) -> f64 {
    let n = rows[0].len();
    let mut total = 0.0;
    for mask in 0..1u32 << n {
        let best = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(i, v)| if mask >> i & 1 == 1 { *v } else { -*v })
                    .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        total += best;
    }
    total / (1u64 << n) as f64 / n as f64
}

/// Minimum number of internal closed eps-balls covering points on a line:
/// the leftmost uncovered point must be covered by a center at most eps to
/// its right, and the rightmost such center covers the most.
fn cover_1d(xs: &[f64], eps: f64) -> usize {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let (mut i, mut count) = (0, 0);
    while i < v.len() {
        let mut c = i;
        while c + 1 < v.len() && v[c + 1] - v[i] <= eps {
            c += 1;
        }
        let reach = v[c] + eps;
        while i < v.len() && v[i] <= reach {
            i += 1;
        }
        count += 1;
    }
    count
}

/// All `A(S_σ)` for a 1-D learner, as a sorted set.
fn theta_hat_1d(s_minus: &[f64], s_plus: &[f64], fit: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let n = s_plus.len();
    let mut out = BTreeSet::new();
    for mask in 0..1u32 << n {
        let s: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { s_plus[i] } else { s_minus[i] }).collect();
        out.insert(fit(&s).to_bits());
    }
    let mut v: Vec<f64> = out.into_iter().map(f64::from_bits).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Largest nearest-neighbour distance of points on a line.
fn nabla_1d(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    (0..v.len())
        .map(|i| {
            let left = if i > 0 { v[i] - v[i - 1] } else { f64::INFINITY };
            let right = if i + 1 < v.len() { v[i + 1] - v[i] } else { f64::INFINITY };
            left.min(right)
        })
        .fold(0.0, f64::max)
}

fn sq_loss_rows(thetas: &[f64], sample: &[f64]) -> Vec<Vec<f64>> {
    thetas
        .iter()
        .map(|t| sample.iter().map(|z| 0.5 * (t - z) * (t - z)).collect())
        .collect()
}

fn erm_grid_1d(grid: &[f64], s: &[f64]) -> f64 {
    let mut best = (f64::INFINITY, grid[0]);
    for &g in grid {
        let r: f64 = s.iter().map(|z| 0.5 * (g - z) * (g - z)).sum();
        if r < best.0 {
            best = (r, g);
        }
    }
    best.1
}

fn farthest_mean_1d(s: &[f64], k: usize) -> f64 {
    let mut rest = s.to_vec();
    rest.sort_by(f64::total_cmp);
    let mut chosen = vec![rest.remove(0)];
    while chosen.len() < k {
        let gap = |x: f64| chosen.iter().map(|c| (x - c).abs()).fold(f64::INFINITY, f64::min);
        let mut bi = 0;
        for i in 1..rest.len() {
            if gap(rest[i]) > gap(rest[bi]) {
                bi = i;
            }
        }
        chosen.push(rest.remove(bi));
    }
    chosen.iter().sum::<f64>() / k as f64
}

fn scalars(v: &[Vector]) -> Vec<f64> {
    v.iter().map(|p| p.coords()[0]).collect()
}

// ------------------------------------------------------------------ setups

fn grid16() -> Vec<f64> {
    (0..16).map(|i| i as f64 / 15.0).collect()
}

fn unit() -> Domain {
    Domain::Box(vec![[0.0, 1.0]])
}

fn erm_setup(n: usize, reps: usize, seed: u64) -> Setup {
    let spec = LearnerSpec::ErmGrid {
        grid: grid16().into_iter().map(|g| vec![g]).collect(),
        domain: unit(),
    };
    Setup::new(spec, LossSpec::default(), Distribution::uniform_unit(1), n)
        .expect("grid ERM setup")
        .with_reps(reps)
        .with_seed(seed)
}

fn sgd_spec(t: usize) -> LearnerSpec {
    LearnerSpec::Sgd {
        theta1: vec![0.5],
        eta: 0.5,
        t,
        index_seed: None,
        indices: None,
        domain: unit(),
    }
}

// ------------------------------------------------------------------ criteria

fn criterion_1() -> Outcome {
    let setup = erm_setup(8, 2000, 1);
    let r = expectation_bound_experiment(&setup).map_err(|e| e.to_string())?;
    // oracle cross-check of the first reps: Θ̂ⁿ and ARC from scratch
    let grid = grid16();
    for rep in 0..25 {
        let (ds, _) = setup.rep_seeds(rep);
        let ss = draw_supersample(&setup.dist, 8, ds).map_err(|e| e.to_string())?;
        let (sm, sp) = (scalars(&ss.s_minus), scalars(&ss.s_plus));
        let hat = theta_hat_1d(&sm, &sp, |s| erm_grid_1d(&grid, s));
        let oracle = brute_rad(&sq_loss_rows(&hat, &sp));
        let rows = r.rows.iter().filter(|row| row.rep == Some(rep)).collect::<Vec<_>>();
        let lib = rows[0].arc.expect("arc column");
        if (oracle - lib).abs() > 1e-12 {
            return Err(format!("rep {rep}: library ARC {lib} vs oracle {oracle}"));
        }
    }
    let c = r.check("expectation").expect("expectation check");
    let line = format!("{} (ARC matches the enumeration oracle on 25 reps)", c.detail);
    if c.pass && r.flags.exact_theta_hat {
        Ok(line)
    } else {
        Err(line)
    }
}

fn criterion_2() -> Outcome {
    let setup = erm_setup(8, 1000, 2);
    let r = expectation_bound_experiment(&setup).map_err(|e| e.to_string())?;
    let c = r.check("highprob").expect("highprob check");
    if c.pass {
        Ok(c.detail.clone())
    } else {
        Err(c.detail.clone())
    }
}

fn criterion_3() -> Outcome {
    let limits = SolverLimits::default();
    let eps_grid = [0.005, 0.01, 0.02, 0.04, 0.06, 0.1, 0.15, 0.2, 0.3, 0.5];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_slack = f64::INFINITY;
    for inst in 0..50 {
        let n = rng.random_range(4..=12);
        let spec = match inst % 3 {
            0 => LearnerSpec::ErmGrid {
                grid: grid16().into_iter().map(|g| vec![g]).collect(),
                domain: unit(),
            },
            1 => sgd_spec(rng.random_range(1..=6)),
            _ => LearnerSpec::CompressK { k: rng.random_range(1..=3) },
        };
        let setup = Setup::new(spec, LossSpec::default(), Distribution::uniform_unit(1), n).map_err(|e| e.to_string())?;
        let ss = draw_supersample(&setup.dist, n, rng.random()).map_err(|e| e.to_string())?;
        let hat = build_theta_hat(setup.learner.as_ref(), &ss, ThetaMode::Exact, rng.random(), Metric::Linf, 1e-12, 20)
            .map_err(|e| e.to_string())?
            .cloud;
        let xs = scalars(hat.points());
        let sp = scalars(&ss.s_plus);
        let rows = sq_loss_rows(&xs, &sp);
        let exact = rademacher_exact(&LossMatrix::new(rows.clone(), 0.0, 0.5).map_err(|e| e.to_string())?, 20)
            .map_err(|e| e.to_string())?
            .value;
        let oracle = brute_rad(&rows);
        if (exact - oracle).abs() > 1e-12 {
            return Err(format!("instance {inst}: exact {exact} vs oracle {oracle}"));
        }
        // L = 1 and b = 1/2 for the half squared loss on [0, 1]
        let crb = covering_rad_bound(&hat, 1.0, 0.5, n, &eps_grid, &limits).map_err(|e| e.to_string())?;
        for &(eps, count, value) in &crb.table {
            if count != cover_1d(&xs, eps) {
                return Err(format!("instance {inst}: N({eps}) = {count}, oracle {}", cover_1d(&xs, eps)));
            }
            if exact > value + 1e-9 {
                return Err(format!("instance {inst}: ARC {exact} > {value} at eps {eps}"));
            }
            worst_slack = worst_slack.min(value - exact);
        }
    }
    Ok(format!("50 instances x 10 radii hold; smallest slack {worst_slack:.4}"))
}

fn random_cloud(rng: &mut ChaCha8Rng) -> PointCloud {
    let size = rng.random_range(3..=8);
    let dim = rng.random_range(1..=2);
    let metric = if rng.random::<bool>() { Metric::Linf } else { Metric::L2 };
    // dyadic coordinates keep scaling by powers of two exact
    let pts: Vec<Vector> = (0..size)
        .map(|_| Vector::new((0..dim).map(|_| rng.random_range(0..64) as f64 / 64.0).collect()).unwrap())
        .collect();
    arc_bounds::metric::dedup(pts, metric, 0.0).unwrap()
}

fn criterion_4() -> Outcome {
    let limits = SolverLimits::default();
    let line = PointCloud::from_scalars(&[0.0, 1.0, 2.0, 3.0], Metric::Linf).unwrap();
    let d = dim_fm(&line, &limits).map_err(|e| e.to_string())?.value;
    let want = 2f64.ln() / 3f64.ln();
    if (d - want).abs() > 1e-12 {
        return Err(format!("dim_fm({{0,1,2,3}}) = {d}, want {want}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut tested, mut worst) = (0, 0.0f64);
    while tested < 100 {
        let c = random_cloud(&mut rng);
        if c.len() < 3 {
            continue;
        }
        let fm = dim_fm(&c, &limits).map_err(|e| e.to_string())?;
        if fm.focal {
            continue;
        }
        tested += 1;
        let oracle = dim_fm_oracle(&c, 1e-7, &limits).map_err(|e| e.to_string())?;
        worst = worst.max((fm.value - oracle).abs());
        if (fm.value - oracle).abs() > 1e-4 {
            return Err(format!("dim_fm {} vs oracle {oracle} on {:?}", fm.value, c.points()));
        }
        let triv = trivial_dim_bound(&c).map_err(|e| e.to_string())?;
        if fm.value > triv + 1e-12 {
            return Err(format!("dim_fm {} above trivial bound {triv}", fm.value));
        }
        let shift: Vec<f64> = (0..c.dim()).map(|_| rng.random_range(-8..8) as f64 / 4.0).collect();
        for scale in [0.25, 2.0, 8.0] {
            let s = c.similarity(scale, &shift).map_err(|e| e.to_string())?;
            let v = dim_fm(&s, &limits).map_err(|e| e.to_string())?.value;
            if (v - fm.value).abs() > 1e-12 {
                return Err(format!("similarity changed dim_fm: {} -> {v}", fm.value));
            }
        }
    }
    Ok(format!("100 non-focal clouds; max |dim_fm - oracle| = {worst:.2e}; trivial bound and similarity invariance hold"))
}

fn criterion_5() -> Outcome {
    let setup = erm_setup(8, 2000, 1);
    let (r, inst) = fractal_bound_experiment(&setup).map_err(|e| e.to_string())?;
    let nonfocal = inst.iter().filter(|i| i.dn.is_some()).count();
    let keys = ["arc_le_trivial", "arc_le_fractal_dn", "steiner_properties", "arc_le_fractal_dn_steiner"];
    if !keys.iter().all(|k| r.check(k).is_some_and(|c| c.pass)) || nonfocal == 0 {
        return Err(format!("{:?}", r.checks));
    }
    // Grid ERM outputs consecutive grid points, so ∇ equals the closest gap
    // and no augmentation is possible. Irregular sets from SGD and
    // compression learners are augmented at radii below ∇ instead, and the
    // properties are re-checked with the 1-D oracles.
    let mut augmented = 0;
    for (k, spec) in [sgd_spec(6), LearnerSpec::CompressK { k: 2 }].into_iter().enumerate() {
        let s = Setup::new(spec, LossSpec::default(), Distribution::uniform_unit(1), 8)
            .map_err(|e| e.to_string())?
            .with_reps(200)
            .with_seed(50 + k as u64);
        augmented += steiner_sweep(&s)?;
    }
    augmented += steiner_sweep(&setup)?;
    if augmented == 0 {
        return Err("no augmentation exercised".into());
    }
    Ok(format!(
        "{nonfocal} non-focal sets of 2000 bounded by D_n; {augmented} Steiner augmentations on SGD and compression sets satisfy all properties"
    ))
}

fn steiner_sweep(setup: &Setup) -> Result<usize, String> {
    let limits = SolverLimits::default();
    let mut augmented = 0;
    for rep in 0..setup.reps {
        let (ds, ls) = setup.rep_seeds(rep);
        let ss = draw_supersample(&setup.dist, setup.n, ds).map_err(|e| e.to_string())?;
        let c = build_theta_hat(setup.learner.as_ref(), &ss, ThetaMode::Exact, ls, Metric::Linf, 1e-12, 20)
            .map_err(|e| e.to_string())?
            .cloud;
        if c.len() < 3 || dim_fm(&c, &limits).map_err(|e| e.to_string())?.focal {
            continue;
        }
        let mut xs = scalars(c.points());
        xs.sort_by(f64::total_cmp);
        let nabla = nabla_1d(&xs);
        let min_gap = xs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        for eps in [nabla / 2.0, (min_gap + nabla) / 2.0, min_gap]
            .into_iter()
            .filter(|&e| e >= min_gap && e < nabla * (1.0 - 1e-9))
        {
            let p = steiner_augment(&c, eps).map_err(|e| e.to_string())?;
            let chk = check_steiner(&c, &p, eps, &limits).map_err(|e| e.to_string())?;
            let aug = c.union(&p).map_err(|e| e.to_string())?;
            let ax = scalars(aug.points());
            let ok = chk.all_ok()
                && p.len() < c.len()
                && nabla_1d(&ax) <= eps * (1.0 + STEINER_RTOL)
                && diameter(&aug) == diameter(&c)
                && cover_1d(&ax, eps) == cover_1d(&xs, eps);
            if !ok {
                return Err(format!("rep {rep}: Steiner augmentation at {eps} fails on {xs:?}: {chk:?}"));
            }
            augmented += 1;
        }
    }
    Ok(augmented)
}

fn criterion_6() -> Outcome {
    let mut setup = Setup::new(sgd_spec(8), LossSpec::default(), Distribution::uniform_unit(1), 10)
        .map_err(|e| e.to_string())?
        .with_seed(6);
    setup.delta = 0.05;
    let opts = SgdCheckOptions::default();
    let r = sgd_check(&setup, &opts).map_err(|e| e.to_string())?;
    if !r.passed() {
        return Err(format!("{:?}", r.checks));
    }
    // stand-alone enumeration: own SGD, own index sequences, own covers
    let (eta, gamma, radius) = (0.5f64, 0.5f64, 1.0f64);
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut configs = 0;
    for &n in &opts.n_grid {
        for &t in &opts.t_grid {
            configs += 1;
            let idx: Vec<usize> = (0..t).map(|_| rng.random_range(0..n)).collect();
            let sm: Vec<f64> = (0..n).map(|_| rng.random()).collect();
            let sp: Vec<f64> = (0..n).map(|_| rng.random()).collect();
            let run = |s: &[f64]| {
                idx.iter()
                    .fold(0.5f64, |th, &i| (th - eta * (th - s[i])).clamp(0.0, 1.0))
            };
            let hat = theta_hat_1d(&sm, &sp, run);
            for &eps in &opts.eps_grid {
                let mut m = 0;
                while gamma.powi(m) * radius > eps {
                    m += 1;
                }
                let cap = 1usize << (m as usize).min(t);
                let count = cover_1d(&hat, eps);
                if count > cap {
                    return Err(format!("n={n} T={t} eps={eps}: N = {count} > 2^min(m,T) = {cap}"));
                }
            }
        }
    }
    let gap = r.check("sgd_gap").expect("gap check");
    Ok(format!(
        "contraction holds for 3 step sizes; {configs} configs respect 2^min(m,T) (library and stand-alone); {}",
        gap.detail
    ))
}

fn criterion_7() -> Outcome {
    let cases = [(1, 6), (2, 8), (3, 8)];
    let setup = Setup::new(LearnerSpec::CompressK { k: 2 }, LossSpec::default(), Distribution::uniform_unit(1), 8)
        .map_err(|e| e.to_string())?
        .with_reps(5)
        .with_seed(7);
    let r = compress_check(&setup, &cases).map_err(|e| e.to_string())?;
    if !r.passed() {
        return Err(format!("{:?}", r.checks));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut sizes = Vec::new();
    for &(k, n) in &cases {
        let sm: Vec<f64> = (0..n).map(|_| rng.random()).collect();
        let sp: Vec<f64> = (0..n).map(|_| rng.random()).collect();
        let hat = theta_hat_1d(&sm, &sp, |s| farthest_mean_1d(s, k));
        let cap = binomial(2 * n, k);
        let arc = brute_rad(&sq_loss_rows(&hat, &sp));
        let massart = massart_bound(cap as usize, 0.5, n);
        if hat.len() as f64 > cap || arc > massart + 1e-9 {
            return Err(format!("k={k} n={n}: |set| {} (cap {cap}), ARC {arc} vs {massart}", hat.len()));
        }
        sizes.push(format!("{}/{}", hat.len(), cap));
    }
    Ok(format!("sizes within C(2n,k) ({}), ARC under Massart", sizes.join(", ")))
}

fn criterion_8() -> Outcome {
    let dist = Distribution::LabeledThreshold {
        lo: 0.0,
        hi: 1.0,
        threshold: 0.4,
        noise: 0.1,
    };
    let setup = Setup::new(LearnerSpec::VcThreshold { lo: 0.0, hi: 1.0 }, LossSpec::ZeroOneThreshold, dist, 6)
        .map_err(|e| e.to_string())?
        .with_reps(5)
        .with_seed(8);
    let grid = [6, 8, 10, 12];
    let r = vc_check(&setup, &grid).map_err(|e| e.to_string())?;
    // oracle ARC on the first rep at each n: distinct 0-1 loss rows of all cuts
    for &n in &grid {
        let (ds, _) = setup.rep_seeds(0);
        let ss = draw_supersample(&setup.dist, n, ds).map_err(|e| e.to_string())?;
        let pts: Vec<(f64, f64)> = ss.s_plus.iter().map(|p| (p.coords()[0], p.coords()[1])).collect();
        let lib = r
            .rows
            .iter()
            .find(|row| row.n == n && row.rep == Some(0))
            .and_then(|row| row.arc)
            .expect("row");
        let bound = vc_rhs(1, n).map_err(|e| e.to_string())?;
        if lib > bound + 1e-9 {
            return Err(format!("n={n}: ARC {lib} > {bound}"));
        }
        // every output is some cut, so the oracle over all cuts bounds the ARC
        let mut cuts: Vec<f64> = pts.iter().map(|p| p.0).collect();
        cuts.push(-1.0);
        let rows: Vec<Vec<f64>> = cuts
            .iter()
            .map(|&t| pts.iter().map(|&(x, y)| f64::from(u8::from((x > t) != (y == 1.0)))).collect())
            .collect();
        let all_cuts = brute_rad(&rows);
        if lib > all_cuts + 1e-12 {
            return Err(format!("n={n}: ARC {lib} exceeds the all-cuts oracle {all_cuts}"));
        }
    }
    let c = r.check("arc_le_vc_rhs").expect("vc check");
    if c.pass {
        Ok(format!("n in {{6, 8, 10, 12}}: {}", c.detail))
    } else {
        Err(c.detail.clone())
    }
}

fn criterion_9() -> Outcome {
    let hand = |rows: Vec<Vec<f64>>| rademacher_exact(&LossMatrix::from_rows(rows).unwrap(), 20).unwrap().value;
    let a = hand(vec![vec![0.0], vec![1.0]]);
    let b = hand(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
    if (a - 0.5).abs() > 1e-12 || (b - 0.25).abs() > 1e-12 {
        return Err(format!("hand cases {a}, {b}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut passing = 0;
    for i in 0..100 {
        let n = rng.random_range(1..=12);
        let r = rng.random_range(1..=64);
        let rows: Vec<Vec<f64>> = (0..r).map(|_| (0..n).map(|_| rng.random()).collect()).collect();
        let m = LossMatrix::new(rows.clone(), 0.0, 1.0).unwrap();
        let exact = rademacher_exact(&m, 20).unwrap().value;
        if (exact - brute_rad(&rows)).abs() > 1e-12 {
            return Err(format!("matrix {i}: exact disagrees with enumeration"));
        }
        let mc = rademacher_mc(&m, 4000, i).unwrap();
        let ok = if mc.stderr == 0.0 {
            (mc.value - exact).abs() <= 1e-12
        } else {
            (mc.value - exact).abs() <= 4.0 * mc.stderr
        };
        passing += usize::from(ok);
    }
    let line = format!("{passing}/100 Monte Carlo estimates within 4 stderr; hand cases 0.5 and 0.25 exact");
    if passing >= 99 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn criterion_10() -> Outcome {
    let setup = erm_setup(4, 3, 10);
    let grid: Vec<usize> = (4..=18).step_by(2).collect();
    let r = limit_ratio_experiment(&setup, &grid, None).map_err(|e| e.to_string())?;
    let series: Vec<String> = r.series.iter().map(|p| format!("{}:{:.3}", p.n, p.ratio)).collect();
    let bounded = r.series.len() == grid.len() && r.series.iter().all(|p| p.ratio.is_finite() && p.ratio >= 0.0);
    let line = format!(
        "ratio series [{}], slope estimate {:?} (report only)",
        series.join(" "),
        r.slope_estimate.map(|s| (s * 1000.0).round() / 1000.0)
    );
    if bounded {
        Ok(line)
    } else {
        Err(line)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("expectation bound, grid ERM, n=8, M=2000", criterion_1),
        ("high-probability bound violation rate", criterion_2),
        ("ARC below the covering bound", criterion_3),
        ("finite Minkowski dimension", criterion_4),
        ("fractal bound and Steiner points", criterion_5),
        ("projected SGD contraction, covers and gap", criterion_6),
        ("compression counting", criterion_7),
        ("threshold ERM against the VC bound", criterion_8),
        ("Rademacher estimators", criterion_9),
        ("ARC scaling trend", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS [{name}] {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{name}] {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
