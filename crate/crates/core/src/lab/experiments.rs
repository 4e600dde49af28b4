//! The verification experiments. Each returns a [`BoundReport`] whose checks
//! decide the exit status of the command-line runs.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gap::{generalization_gap, GapMeasurement};
use super::report::{BoundReport, RatioPoint, ReportRow};
use super::rhs::{binomial, compression_rhs, highprob_rhs, sgd_rhs, vc_rhs};
use super::setup::{splitmix, MeanSe, Setup};
use crate::algorithms::{forgetting_depth, CompressK, Domain, Learner, LearnerSpec, LossModel, Sgd, ThresholdLearner};
use crate::error::{invalid, Error, Result};
use crate::fractal::{check_steiner, covering_number, dim_fm, fractal_bound, minkowski_slope_estimate, steiner_augment};
use crate::metric::{dedup, diameter, PointCloud, Vector};
use crate::rademacher::{covering_rad_bound, massart_bound, RadEstimate, RadMode};
use crate::supersample::{build_theta_hat, draw_supersample, Supersample, ThetaMode, ThetaSet};

/// Slack on deterministic inequalities between computed quantities.
pub const TOL: f64 = 1e-9;

struct Rep {
    data_seed: u64,
    learner_seed: u64,
    ss: Supersample,
    hat: ThetaSet,
    theta: Vector,
    arc: RadEstimate,
}

fn run_rep(setup: &Setup, learner: &dyn Learner, n: usize, rep: usize, mode: ThetaMode) -> Result<Rep> {
    let (data_seed, learner_seed) = setup.rep_seeds(rep);
    let ss = draw_supersample(&setup.dist, n, data_seed)?;
    let mode = match mode {
        ThetaMode::Exact => ThetaMode::Exact,
        ThetaMode::Sampled { m, sigma_seed } => ThetaMode::Sampled {
            m,
            sigma_seed: splitmix(sigma_seed, rep as u64),
        },
    };
    let hat = build_theta_hat(
        learner,
        &ss,
        mode,
        learner_seed,
        setup.metric,
        setup.dedup_tol,
        setup.limits.exact_n_limit,
    )?;
    let theta = learner.fit(&ss.s_plus, learner_seed)?;
    let arc = setup.arc(hat.cloud.points(), &ss.s_plus, splitmix(learner_seed, 0xa2c))?;
    Ok(Rep {
        data_seed,
        learner_seed,
        ss,
        hat,
        theta,
        arc,
    })
}

fn gap_of(setup: &Setup, theta: &Vector, sample: &[Vector], seed: u64) -> Result<GapMeasurement> {
    let loss = setup.loss.loss.as_ref();
    let mode = setup.risk.resolve(loss, theta, &setup.dist, splitmix(seed, 0x6a9));
    generalization_gap(loss, theta, sample, &setup.dist, mode)
}

fn note_exactness(report: &mut BoundReport, rep: &Rep) {
    report.flags.exact_theta_hat &= !rep.hat.sampled;
    report.flags.exact_theta_hat &= rep.arc.mode == RadMode::Exact;
}

#[allow(clippy::too_many_arguments)]
fn row(
    experiment: &str,
    n: usize,
    rep: Option<(usize, u64)>,
    gap: Option<f64>,
    arc: Option<f64>,
    bound_name: impl Into<String>,
    bound_value: f64,
    pass: Option<bool>,
) -> ReportRow {
    ReportRow {
        experiment: experiment.into(),
        n,
        rep: rep.map(|r| r.0),
        seed: rep.map(|r| r.1),
        gap,
        arc,
        bound_name: bound_name.into(),
        bound_value,
        pass,
    }
}

fn need_reps(reps: usize) -> Result<()> {
    if reps < 2 {
        return invalid(format!("need at least 2 repetitions for standard errors, got {reps}"));
    }
    Ok(())
}

/// Expected gap against twice the expected ARC, plus the high-probability
/// bound driven by the largest ARC seen.
///
/// The expectation check passes when
/// `mean(gap) <= 2 mean(arc) + margin * se(gap - 2 arc)`, with the standard
/// error taken over the paired per-repetition differences.
pub fn expectation_bound_experiment(setup: &Setup) -> Result<BoundReport> {
    const NAME: &str = "arc";
    need_reps(setup.reps)?;
    setup.check_n(setup.n)?;
    let (_, b) = setup.range();
    let mut report = BoundReport::new(NAME, setup.learner.name(), setup.n, setup.delta, setup.reps, setup.seed);
    let mut gaps = Vec::with_capacity(setup.reps);
    let mut arcs = Vec::with_capacity(setup.reps);
    let mut seeds = Vec::with_capacity(setup.reps);
    for rep in 0..setup.reps {
        let r = run_rep(setup, setup.learner.as_ref(), setup.n, rep, setup.theta_mode)?;
        note_exactness(&mut report, &r);
        let g = gap_of(setup, &r.theta, &r.ss.s_plus, r.learner_seed)?;
        gaps.push(g.gap);
        arcs.push(r.arc.value);
        seeds.push(r.data_seed);
    }
    let diffs: Vec<f64> = gaps.iter().zip(&arcs).map(|(g, a)| g - 2.0 * a).collect();
    let gap = MeanSe::of(&gaps);
    let arc = MeanSe::of(&arcs);
    let se_diff = MeanSe::of(&diffs).stderr;
    let expectation_rhs = 2.0 * arc.mean + setup.margin * se_diff;
    let pass = gap.mean <= expectation_rhs;
    report.add_bound("expectation_rhs", expectation_rhs, "E[gap] <= 2 E[ARC]");
    report.add_check(
        "expectation",
        pass,
        format!(
            "mean gap {:.6} <= 2 * mean ARC {:.6} + {} * se {:.6}",
            gap.mean, arc.mean, setup.margin, se_diff
        ),
    );

    let essup = arcs.iter().copied().fold(0.0, f64::max);
    let hp = highprob_rhs(essup, b, setup.n, setup.delta)?;
    report.add_bound(
        "highprob_rhs",
        hp,
        "gap <= 4 essup ARC + b sqrt(8 ln(2/delta) / n) with probability >= 1 - delta (essup from below)",
    );
    let violations = gaps.iter().filter(|&&g| g > hp).count();
    let rate = violations as f64 / setup.reps as f64;
    report.add_check(
        "highprob",
        rate <= setup.delta,
        format!("{violations} of {} runs exceed {hp:.6}; rate {rate} vs delta {}", setup.reps, setup.delta),
    );

    for rep in 0..setup.reps {
        report.rows.push(row(
            NAME,
            setup.n,
            Some((rep, seeds[rep])),
            Some(gaps[rep]),
            Some(arcs[rep]),
            "highprob_rhs",
            hp,
            Some(gaps[rep] <= hp),
        ));
    }
    report.rows.push(row(
        NAME,
        setup.n,
        None,
        Some(gap.mean),
        Some(arc.mean),
        "expectation_rhs",
        expectation_rhs,
        Some(pass),
    ));
    report.gap = Some(gap);
    report.arc = Some(arc);
    Ok(report)
}

/// Per-instance outcome of the fractal bounds on one Θ̂ⁿ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FractalInstance {
    pub rep: usize,
    pub size: usize,
    pub arc: f64,
    pub trivial: f64,
    pub focal: bool,
    pub dn: Option<f64>,
    pub eps_star: Option<f64>,
    pub steiner_ok: Option<bool>,
    pub dn_steiner: Option<f64>,
}

/// ARC of Θ̂ⁿ against the trivial bound `b sqrt(ln(2|Θ̂ⁿ|)/n)`, the fractal
/// bound `D_n(Θ̂ⁿ)` and, after adding Steiner points at the best covering
/// radius `ε*`, `D_n(Θ̂ⁿ ∪ P)`.
///
/// `ε*` minimises `L ε + b sqrt(2 ln N(Θ̂ⁿ, ε)/n)` over the pairwise distances
/// of Θ̂ⁿ. Steiner points are only added when `∇(Θ̂ⁿ) > ε*`.
pub fn fractal_bound_experiment(setup: &Setup) -> Result<(BoundReport, Vec<FractalInstance>)> {
    const NAME: &str = "fractal-check";
    if setup.reps == 0 {
        return invalid("need at least one repetition");
    }
    setup.check_n(setup.n)?;
    let n = setup.n;
    let (_, b) = setup.range();
    let mut report = BoundReport::new(NAME, setup.learner.name(), n, setup.delta, setup.reps, setup.seed);
    let mut out = Vec::with_capacity(setup.reps);
    let (mut arcs, mut dn_fail, mut triv_fail, mut steiner_fail, mut steiner_bound_fail) = (Vec::new(), 0, 0, 0, 0);
    let (mut nonfocal, mut steiner_runs, mut steiner_tighter) = (0, 0, 0);
    for rep in 0..setup.reps {
        let r = run_rep(setup, setup.learner.as_ref(), n, rep, setup.theta_mode)?;
        note_exactness(&mut report, &r);
        let c = &r.hat.cloud;
        let arc = r.arc.value;
        arcs.push(arc);
        let id = Some((rep, r.data_seed));
        let trivial = b * ((2.0 * c.len() as f64).ln() / n as f64).sqrt();
        let ok = arc <= trivial + TOL;
        triv_fail += usize::from(!ok);
        report.rows.push(row(NAME, n, id, None, Some(arc), "trivial", trivial, Some(ok)));
        let mut inst = FractalInstance {
            rep,
            size: c.len(),
            arc,
            trivial,
            focal: false,
            dn: None,
            eps_star: None,
            steiner_ok: None,
            dn_steiner: None,
        };
        if c.len() >= 2 {
            let dim = dim_fm(c, &setup.limits)?;
            inst.focal = dim.focal;
            report.flags.focal_seen |= dim.focal;
            if !dim.focal && c.len() >= 3 {
                nonfocal += 1;
                let l = setup.lipschitz(c.dim());
                let fb = fractal_bound(c, l, b, n, &setup.limits)?;
                report.flags.exact_covers &= fb.dim.exact;
                let ok = arc <= fb.value + TOL;
                dn_fail += usize::from(!ok);
                inst.dn = Some(fb.value);
                report.rows.push(row(NAME, n, id, None, Some(arc), "fractal_dn", fb.value, Some(ok)));

                let grid = c.distance_matrix().distinct_distances();
                let crb = covering_rad_bound(c, l, b, n, &grid, &setup.limits)?;
                report.flags.exact_covers &= crb.exact;
                let eps = crb.best_eps;
                inst.eps_star = Some(eps);
                if dim.nabla > eps && eps < diameter(c) {
                    steiner_runs += 1;
                    let p = steiner_augment(c, eps)?;
                    let chk = check_steiner(c, &p, eps, &setup.limits)?;
                    steiner_fail += usize::from(!chk.all_ok());
                    inst.steiner_ok = Some(chk.all_ok());
                    let aug = c.union(&p)?;
                    if let Ok(fs) = fractal_bound(&aug, l, b, n, &setup.limits) {
                        report.flags.exact_covers &= fs.dim.exact;
                        let ok = arc <= fs.value + TOL;
                        steiner_bound_fail += usize::from(!ok);
                        steiner_tighter += usize::from(fs.value <= fb.value);
                        inst.dn_steiner = Some(fs.value);
                        report.rows.push(row(NAME, n, id, None, Some(arc), "fractal_dn_steiner", fs.value, Some(ok)));
                    }
                }
            }
        }
        out.push(inst);
    }
    let reps = setup.reps;
    report.add_check("arc_le_trivial", triv_fail == 0, format!("{triv_fail} of {reps} violations"));
    report.add_check(
        "arc_le_fractal_dn",
        dn_fail == 0,
        format!("{dn_fail} of {nonfocal} non-focal instances violate"),
    );
    report.add_check(
        "steiner_properties",
        steiner_fail == 0,
        format!("{steiner_fail} of {steiner_runs} augmentations fail a property"),
    );
    report.add_check(
        "arc_le_fractal_dn_steiner",
        steiner_bound_fail == 0,
        format!(
            "{steiner_bound_fail} violations; the augmented bound was at most D_n in {steiner_tighter} of {steiner_runs} cases"
        ),
    );
    report.add_bound("trivial", out.iter().map(|i| i.trivial).fold(0.0, f64::max), "ARC <= b sqrt(ln(2|C|)/n)");
    if let Some(v) = out.iter().filter_map(|i| i.dn).reduce(f64::max) {
        report.add_bound("fractal_dn", v, "ARC <= L nabla(F) + b sqrt(dim(F) ln(Delta/nabla) / n) for F containing the outputs");
    }
    report.arc = Some(MeanSe::of(&arcs));
    Ok((report, out))
}

/// ARC scaling `arc / sqrt(ln n / n)` over a grid of sample sizes, with the
/// box-counting slope of the union of all output sets. Report only.
///
/// Beyond the exact limit the output set is sampled with `mc_draws` sign
/// vectors and the ARC is estimated by Monte Carlo.
pub fn limit_ratio_experiment(setup: &Setup, n_grid: &[usize], slope_grid: Option<&[f64]>) -> Result<BoundReport> {
    const NAME: &str = "limit-trend";
    if n_grid.is_empty() || n_grid.windows(2).any(|w| w[0] >= w[1]) || n_grid[0] < 2 {
        return invalid("n grid must be increasing and start at 2 or more");
    }
    if setup.reps == 0 {
        return invalid("need at least one repetition");
    }
    let (_, b) = setup.range();
    let last = *n_grid.last().expect("nonempty");
    let mut report = BoundReport::new(NAME, setup.learner.name(), last, setup.delta, setup.reps, setup.seed);
    let mut all = Vec::new();
    for &n in n_grid {
        let mode = if n <= setup.limits.exact_n_limit {
            setup.theta_mode
        } else {
            ThetaMode::Sampled {
                m: setup.mc_draws as usize,
                sigma_seed: splitmix(setup.seed, n as u64),
            }
        };
        let mut arcs = Vec::with_capacity(setup.reps);
        for rep in 0..setup.reps {
            let r = run_rep(setup, setup.learner.as_ref(), n, rep, mode)?;
            note_exactness(&mut report, &r);
            report
                .rows
                .push(row(NAME, n, Some((rep, r.data_seed)), None, Some(r.arc.value), "arc", r.arc.value, None));
            arcs.push(r.arc.value);
            all.extend(r.hat.cloud.points().iter().cloned());
        }
        let arc = MeanSe::of(&arcs);
        let ratio = arc.mean / ((n as f64).ln() / n as f64).sqrt();
        report.rows.push(row(NAME, n, None, None, Some(arc.mean), "ratio", ratio, None));
        report.series.push(RatioPoint { n, arc, ratio });
    }
    let union = dedup(all, setup.metric, setup.dedup_tol)?;
    report.slope_estimate = union_slope(&union, slope_grid, setup)?;
    if let Some(s) = report.slope_estimate {
        report.add_bound("reference", b * (s / 2.0).sqrt(), "limsup ratio <= b sqrt(dim_M / 2)");
    }
    let ok = report.series.iter().all(|p| p.ratio.is_finite() && p.ratio >= 0.0);
    report.add_check("ratio_finite", ok, format!("{} points", report.series.len()));
    Ok(report)
}

fn union_slope(c: &PointCloud, grid: Option<&[f64]>, setup: &Setup) -> Result<Option<f64>> {
    if c.len() == 1 {
        return Ok(Some(0.0));
    }
    let delta = diameter(c);
    let grid: Vec<f64> = match grid {
        Some(g) => g.iter().copied().filter(|&e| e < delta).collect(),
        None => [4.0, 8.0, 16.0].iter().map(|k| delta / k).collect(),
    };
    if grid.len() < 2 {
        return Ok(None);
    }
    minkowski_slope_estimate(c, &grid, &setup.limits).map(Some)
}

/// Options of [`sgd_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SgdCheckOptions {
    pub n_grid: Vec<usize>,
    pub t_grid: Vec<usize>,
    pub eps_grid: Vec<f64>,
    /// Runs for the high-probability gap check.
    pub gap_reps: usize,
    /// `(α, β, η)` triples for the contraction check.
    pub contraction: Vec<[f64; 3]>,
    pub contraction_pairs: usize,
}

impl Default for SgdCheckOptions {
    fn default() -> Self {
        Self {
            n_grid: vec![4, 6, 8, 10],
            t_grid: vec![2, 4, 6, 8],
            eps_grid: vec![0.3, 0.1, 0.03, 0.01],
            gap_reps: 1000,
            contraction: vec![[1.0, 1.0, 0.5], [1.0, 2.0, 0.5], [2.0, 4.0, 0.25]],
            contraction_pairs: 1000,
        }
    }
}

fn contraction_case(alpha: f64, beta: f64, eta: f64, pairs: usize, seed: u64) -> Result<(f64, f64)> {
    let unit = vec![[0.0, 1.0]; 2];
    let model = Arc::new(LossModel::quadratic(vec![alpha, beta], Domain::Box(unit.clone()), unit.clone())?);
    let sgd = Sgd::new(model, Vector::new(vec![0.0, 0.0])?, eta, 1, None)?;
    let gamma = sgd.gamma();
    let dom = Domain::Box(unit);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..pairs {
        let (t, u, z) = (dom.sample(&mut rng), dom.sample(&mut rng), dom.sample(&mut rng));
        let (a, c) = (sgd.step(&t, &z), sgd.step(&u, &z));
        let after = a.iter().zip(&c).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        let before = t.iter().zip(&u).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        worst = worst.max(after - gamma * before);
    }
    Ok((gamma, worst))
}

/// Projected SGD: one-step contraction, the covering-number cap
/// `N(Θ̂ⁿ, ε) <= 2^min(m, T)` and the ARC chain over an `(n, T)` grid, and
/// the high-probability gap bound at the configured `n`.
pub fn sgd_check(setup: &Setup, opts: &SgdCheckOptions) -> Result<BoundReport> {
    const NAME: &str = "sgd-check";
    let LearnerSpec::Sgd {
        theta1,
        eta,
        index_seed,
        domain,
        ..
    } = &setup.learner_spec
    else {
        return Err(Error::Config {
            field: "learner.kind".into(),
            message: "sgd-check needs an sgd learner".into(),
        });
    };
    let model = setup.loss.model.clone().ok_or_else(|| Error::Config {
        field: "loss".into(),
        message: "sgd-check needs a differentiable loss".into(),
    })?;
    let (_, b) = setup.range();
    let mut report = BoundReport::new(NAME, setup.learner.name(), setup.n, setup.delta, opts.gap_reps, setup.seed);

    for (i, &[alpha, beta, eta]) in opts.contraction.iter().enumerate() {
        let (gamma, worst) = contraction_case(alpha, beta, eta, opts.contraction_pairs, splitmix(setup.seed, i as u64))?;
        let ok = worst <= TOL;
        let name = format!("contraction(alpha={alpha},beta={beta},eta={eta})");
        report.rows.push(row(NAME, 0, None, None, None, name.clone(), gamma, Some(ok)));
        report.add_check(
            &name,
            ok,
            format!("max of |Phi t - Phi u| - gamma |t - u| over {} pairs: {worst:.3e}", opts.contraction_pairs),
        );
    }

    let r = domain.diameter();
    let theta1 = Vector::new(theta1.clone())?;
    let build = |t: usize| -> Result<Sgd> {
        let s = Sgd::new(model.clone(), theta1.clone(), *eta, t, None)?;
        Ok(match index_seed {
            Some(seed) => s.with_index_seed(*seed),
            None => s,
        })
    };
    let gamma = build(1)?.gamma();
    let (mut cover_fail, mut cover_total, mut chain_fail, mut configs) = (0, 0, 0, 0);
    for &n in &opts.n_grid {
        setup.check_n(n)?;
        for &t in &opts.t_grid {
            let sgd = build(t)?;
            let rep = configs;
            configs += 1;
            let rr = run_rep(setup, &sgd, n, rep, ThetaMode::Exact)?;
            note_exactness(&mut report, &rr);
            let id = Some((rep, rr.data_seed));
            for &eps in &opts.eps_grid {
                let cov = covering_number(&rr.hat.cloud, eps, &setup.limits)?;
                report.flags.exact_covers &= cov.exact;
                let m = forgetting_depth(r, gamma, eps)?;
                let cap = 2f64.powi(m.min(t) as i32);
                let ok = (cov.count as f64) <= cap;
                cover_fail += usize::from(!ok);
                cover_total += 1;
                report
                    .rows
                    .push(row(NAME, n, id, None, None, format!("cover_cap(T={t},eps={eps})"), cap, Some(ok)));
            }
            let m = forgetting_depth(r, gamma, 0.5 / n as f64)?;
            let l = setup.lipschitz(theta1.dim());
            let chain = l * 0.5 / n as f64 + b * (m as f64 * std::f64::consts::LN_2 / n as f64).sqrt();
            let ok = rr.arc.value <= chain + TOL;
            chain_fail += usize::from(!ok);
            report
                .rows
                .push(row(NAME, n, id, None, Some(rr.arc.value), format!("arc_chain(T={t})"), chain, Some(ok)));
        }
    }
    report.add_check(
        "cover_cap",
        cover_fail == 0,
        format!("{cover_fail} of {cover_total} (config, eps) pairs exceed 2^min(m, T) over {configs} configs"),
    );
    report.add_check("arc_chain", chain_fail == 0, format!("{chain_fail} of {configs} configs violate"));

    if opts.gap_reps > 0 {
        let l = setup.lipschitz(theta1.dim());
        let rhs = sgd_rhs(b, r, setup.n, gamma, l, setup.delta)?;
        report.add_bound(
            "sgd_rhs",
            rhs,
            "gap <= 4b sqrt(m ln2 / n) + b sqrt(8 ln(2/delta)/n) + 2L/n with probability >= 1 - delta",
        );
        let mut gaps = Vec::with_capacity(opts.gap_reps);
        for rep in 0..opts.gap_reps {
            let (ds, ls) = setup.rep_seeds(rep);
            let ss = draw_supersample(&setup.dist, setup.n, ds)?;
            let theta = setup.learner.fit(&ss.s_plus, ls)?;
            let g = gap_of(setup, &theta, &ss.s_plus, ls)?.gap;
            report
                .rows
                .push(row(NAME, setup.n, Some((rep, ds)), Some(g), None, "sgd_rhs", rhs, Some(g <= rhs)));
            gaps.push(g);
        }
        let held = gaps.iter().filter(|&&g| g <= rhs).count();
        let frac = held as f64 / opts.gap_reps as f64;
        report.add_check(
            "sgd_gap",
            frac >= 1.0 - setup.delta,
            format!("{held} of {} runs within {rhs:.6}", opts.gap_reps),
        );
        report.gap = Some(MeanSe::of(&gaps));
    }
    Ok(report)
}

/// k-compression: `|Θ̂ⁿ| <= C(2n, k)`, the ARC against Massart's bound for
/// `C(2n, k)` rows and against `b` times the compression bound.
///
/// With no cases given, the configured learner's `k` and `n` are used.
pub fn compress_check(setup: &Setup, cases: &[(usize, usize)]) -> Result<BoundReport> {
    const NAME: &str = "compress-check";
    let cases: Vec<(usize, usize)> = if cases.is_empty() {
        match setup.learner_spec {
            LearnerSpec::CompressK { k } => vec![(k, setup.n)],
            _ => {
                return Err(Error::Config {
                    field: "learner.kind".into(),
                    message: "compress-check needs compress_k or explicit cases".into(),
                })
            }
        }
    } else {
        cases.to_vec()
    };
    if setup.reps == 0 {
        return invalid("need at least one repetition");
    }
    let (_, b) = setup.range();
    let mut report = BoundReport::new(NAME, format!("compress_k{cases:?}"), setup.n, setup.delta, setup.reps, setup.seed);
    let (mut size_fail, mut massart_fail, mut rhs_fail, mut total) = (0, 0, 0, 0);
    let mut arcs = Vec::new();
    for &(k, n) in &cases {
        setup.check_n(n)?;
        let cap = binomial(2 * n, k);
        let massart = massart_bound(cap as usize, b, n);
        let rhs = b * compression_rhs(k, n)?;
        let learner = CompressK { k };
        for rep in 0..setup.reps {
            let r = run_rep(setup, &learner, n, rep, ThetaMode::Exact)?;
            note_exactness(&mut report, &r);
            let id = Some((rep, r.data_seed));
            let a = r.arc.value;
            arcs.push(a);
            total += 1;
            let ok = (r.hat.cloud.len() as f64) <= cap;
            size_fail += usize::from(!ok);
            report
                .rows
                .push(row(NAME, n, id, None, Some(a), format!("size_cap(k={k})"), cap, Some(ok)));
            let ok = a <= massart + TOL;
            massart_fail += usize::from(!ok);
            report
                .rows
                .push(row(NAME, n, id, None, Some(a), format!("massart(k={k})"), massart, Some(ok)));
            let ok = a <= rhs + TOL;
            rhs_fail += usize::from(!ok);
            report
                .rows
                .push(row(NAME, n, id, None, Some(a), format!("compression_rhs(k={k})"), rhs, Some(ok)));
        }
    }
    report.add_check("size_cap", size_fail == 0, format!("{size_fail} of {total} sets exceed C(2n, k)"));
    report.add_check("arc_le_massart", massart_fail == 0, format!("{massart_fail} of {total} violations"));
    report.add_check("arc_le_compression_rhs", rhs_fail == 0, format!("{rhs_fail} of {total} violations"));
    report.arc = Some(MeanSe::of(&arcs));
    Ok(report)
}

/// Threshold ERM: ARC against `b` times the VC bound with `V = 1`.
pub fn vc_check(setup: &Setup, n_grid: &[usize]) -> Result<BoundReport> {
    const NAME: &str = "vc-check";
    let learner = match setup.learner_spec {
        LearnerSpec::VcThreshold { lo, hi } => ThresholdLearner { lo, hi },
        _ => {
            let sb = setup.dist.support_box();
            ThresholdLearner {
                lo: sb[0][0],
                hi: sb[0][1],
            }
        }
    };
    let grid = if n_grid.is_empty() { vec![setup.n] } else { n_grid.to_vec() };
    if setup.reps == 0 {
        return invalid("need at least one repetition");
    }
    let (_, b) = setup.range();
    let mut report = BoundReport::new(NAME, learner.name(), setup.n, setup.delta, setup.reps, setup.seed);
    let (mut fail, mut total) = (0, 0);
    let mut arcs = Vec::new();
    for &n in &grid {
        setup.check_n(n)?;
        let rhs = b * vc_rhs(1, n)?;
        for rep in 0..setup.reps {
            let r = run_rep(setup, &learner, n, rep, ThetaMode::Exact)?;
            note_exactness(&mut report, &r);
            let ok = r.arc.value <= rhs + TOL;
            fail += usize::from(!ok);
            total += 1;
            arcs.push(r.arc.value);
            report.rows.push(row(
                NAME,
                n,
                Some((rep, r.data_seed)),
                None,
                Some(r.arc.value),
                "vc_rhs",
                rhs,
                Some(ok),
            ));
        }
    }
    report.add_check("arc_le_vc_rhs", fail == 0, format!("{fail} of {total} violations"));
    report.arc = Some(MeanSe::of(&arcs));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::LossSpec;
    use crate::supersample::Distribution;

    fn constant_setup() -> Setup {
        Setup::new(
            LearnerSpec::Constant { theta: vec![0.25] },
            LossSpec::default(),
            Distribution::uniform_unit(1),
            4,
        )
        .unwrap()
        .with_reps(200)
    }

    #[test]
    fn constant_learner_has_zero_arc() {
        let r = expectation_bound_experiment(&constant_setup()).unwrap();
        assert_eq!(r.arc.unwrap().mean, 0.0);
        assert!(r.passed(), "{:?}", r.checks);
        let (f, inst) = fractal_bound_experiment(&constant_setup().with_reps(5)).unwrap();
        assert!(f.passed());
        assert!(inst.iter().all(|i| i.size == 1 && i.arc == 0.0));
        let t = limit_ratio_experiment(&constant_setup().with_reps(2), &[2, 4, 6], None).unwrap();
        assert!(t.series.iter().all(|p| p.ratio == 0.0));
        assert_eq!(t.slope_estimate, Some(0.0));
    }

    #[test]
    fn rejects_bad_grids() {
        let s = constant_setup();
        assert!(limit_ratio_experiment(&s, &[4, 4], None).is_err());
        assert!(limit_ratio_experiment(&s, &[], None).is_err());
        assert!(sgd_check(&s, &SgdCheckOptions::default()).is_err());
        assert!(compress_check(&s, &[]).is_err());
    }
}
