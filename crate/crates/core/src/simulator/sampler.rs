//! Draws the task records of one cell from its targets.

use rand::seq::index::sample as sample_indices;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, LogNormal, Normal};

use super::targets::{CellTargets, KpiTarget};
use super::StepMix;
use crate::model::{
    canonical_tool_events, tool_score_sum, AgentId, ChainOutcome, CollabScores, ComplexityLevel,
    DomainId, ErrorType, Interventions, RaterPanel, RaterScores, TaskRecord, ToolEvent,
    ToolOutcome,
};
use statrs::function::erf::erfc;

/// Share of interventions by kind: clarification, error correction, approval.
const INTERVENTION_MIX: [f64; 3] = [0.40, 0.35, 0.25];
/// Seconds a human takes per intervention.
const WAIT_RANGE: (f64, f64) = (30.0, 180.0);
/// Spacing of task start times within a cell.
const START_SPACING: f64 = 3600.0;
/// Share of a task's duration and resources that scales with its length.
const LENGTH_SHARE: f64 = 0.2;
/// Tool-call density relative to the step budget.
const CALL_SHARE: f64 = 0.3;
/// Per-step chance that a step beyond the first offers a tool decision.
const TOOL_OPPORTUNITY: f64 = 0.3;
/// Tool outcome mix before tilting: none needed, ignored, optimal, misuse.
const TOOL_BASE: [f64; 4] = [0.15, 0.15, 0.35, 0.35];
const RATER_TASK_SD: f64 = 0.6;
const RATER_NOISE_SD: f64 = 0.5;
const RATER_SUCCESS_SHIFT: f64 = 0.6;
const COLLAB_SESSION_SD: f64 = 0.4;
const COLLAB_NOISE_SD: f64 = 0.5;
const COLLAB_SHARE: f64 = 0.6;
const FAILED_ERROR_RATE: f64 = 0.6;
const KPI_NOISE_CV: f64 = 0.2;
const MICRO: f64 = 1e6;

fn round_ms(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn binomial(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("probability in (0, 1)").sample(rng)
}

/// `floor(n p)` plus one more with probability equal to the remainder, so
/// the realised count is within one of `n p` and unbiased.
pub(crate) fn quota(rng: &mut ChaCha8Rng, n: usize, p: f64) -> usize {
    let x = n as f64 * p.clamp(0.0, 1.0);
    let k = x.floor() as usize + usize::from(rng.random::<f64>() < x.fract());
    k.min(n)
}

/// Picks `k` members of `pool` uniformly at random.
fn choose(rng: &mut ChaCha8Rng, pool: &[usize], k: usize) -> Vec<usize> {
    let k = k.min(pool.len());
    sample_indices(rng, pool.len(), k).into_iter().map(|i| pool[i]).collect()
}

/// Lognormal multiplier with mean 1 and the given coefficient of variation.
fn unit_lognormal(cv: f64) -> Option<LogNormal<f64>> {
    if cv <= 0.0 {
        return None;
    }
    let s2 = (1.0 + cv * cv).ln();
    LogNormal::new(-s2 / 2.0, s2.sqrt()).ok()
}

fn phi(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Mean of `clamp(round(X), lo, hi)` for `X ~ N(mu, sd)`.
fn rounded_mean(mu: f64, sd: f64, lo: u8, hi: u8) -> f64 {
    let mut total = 0.0;
    for v in lo..=hi {
        let upper = if v == hi { 1.0 } else { phi((f64::from(v) + 0.5 - mu) / sd) };
        let lower = if v == lo { 0.0 } else { phi((f64::from(v) - 0.5 - mu) / sd) };
        total += f64::from(v) * (upper - lower);
    }
    total
}

/// Latent location whose rounded, clamped scores average to `target`.
/// Successful tasks sit `shift * (1 - g)` above it, failed ones `shift * g`
/// below.
fn calibrate_location(target: f64, g: f64, shift: f64, sd: f64, lo: u8, hi: u8) -> f64 {
    let expected = |m: f64| {
        g * rounded_mean(m + shift * (1.0 - g), sd, lo, hi)
            + (1.0 - g) * rounded_mean(m - shift * g, sd, lo, hi)
    };
    let (mut a, mut b) = (f64::from(lo) - 20.0, f64::from(hi) + 20.0);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if expected(mid) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn score(rng: &mut ChaCha8Rng, noise: &Normal<f64>, centre: f64, lo: u8, hi: u8) -> u8 {
    (centre + noise.sample(rng)).round().clamp(f64::from(lo), f64::from(hi)) as u8
}

/// Outcome distribution over none/ignored/optimal/misuse with mean score `t`.
fn tool_mix(t: f64) -> [f64; 4] {
    let base_mean = -0.5 * TOOL_BASE[1] + TOOL_BASE[2] - TOOL_BASE[3];
    let mut mix = TOOL_BASE;
    if t >= base_mean {
        let lambda = (t - base_mean) / (1.0 - base_mean);
        for m in &mut mix {
            *m *= 1.0 - lambda;
        }
        mix[2] += lambda;
    } else {
        let lambda = (base_mean - t) / (base_mean + 1.0);
        for m in &mut mix {
            *m *= 1.0 - lambda;
        }
        mix[3] += lambda;
    }
    mix
}

fn tool_outcome(rng: &mut ChaCha8Rng, mix: &[f64; 4]) -> ToolOutcome {
    let u: f64 = rng.random();
    let kinds = [
        ToolOutcome::NoToolNeeded,
        ToolOutcome::IgnoredBetterTool,
        ToolOutcome::OptimalUse,
        ToolOutcome::Misuse,
    ];
    let mut acc = 0.0;
    for (k, p) in kinds.iter().zip(mix) {
        acc += p;
        if u < acc {
            return *k;
        }
    }
    ToolOutcome::Misuse
}

/// Splits `total` micro-units over `weights` so the parts sum exactly.
fn split_exact(total: i64, weights: &[f64]) -> Vec<i64> {
    let sum: f64 = weights.iter().sum();
    if weights.is_empty() {
        return Vec::new();
    }
    if sum <= 0.0 {
        let mut out = vec![total / weights.len() as i64; weights.len()];
        let rest = total - out.iter().sum::<i64>();
        for o in out.iter_mut().take(rest as usize) {
            *o += 1;
        }
        return out;
    }
    let raw: Vec<f64> = weights.iter().map(|w| total as f64 * w / sum).collect();
    let mut out: Vec<i64> = raw.iter().map(|r| r.floor() as i64).collect();
    let mut rest = total - out.iter().sum::<i64>();
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = raw[a] - raw[a].floor();
        let fb = raw[b] - raw[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &i in order.iter().cycle() {
        if rest <= 0 {
            break;
        }
        out[i] += 1;
        rest -= 1;
    }
    out
}

fn slug(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_matches('-').to_string()
}

pub(crate) struct CellSpec<'a> {
    pub agent: &'a AgentId,
    pub domain: &'a DomainId,
    pub n: usize,
    pub targets: &'a CellTargets,
    pub steps: &'a StepMix,
    pub token_equivalent: f64,
}

pub(crate) fn sample_cell(rng: &mut ChaCha8Rng, spec: &CellSpec<'_>) -> Vec<TaskRecord> {
    let t = spec.targets;
    let n = spec.n;
    let mean_steps = spec.steps.mean_steps();
    let prefix = format!("{}-{}", slug(spec.agent.as_str()), slug(spec.domain.as_str()));

    let mut recs: Vec<TaskRecord> = (0..n)
        .map(|i| {
            let mut r = TaskRecord::new(format!("{prefix}-{:04}", i + 1), spec.agent.clone(), spec.domain.clone());
            r.total_steps = spec.steps.sample(rng);
            r.success = false;
            r
        })
        .collect();

    // success placement
    let all: Vec<usize> = (0..n).collect();
    let k = quota(rng, n, t.gcr);
    for i in choose(rng, &all, k) {
        recs[i].success = true;
    }

    // interventions and timing
    let wait = rand_distr::Uniform::new(WAIT_RANGE.0, WAIT_RANGE.1).expect("valid range");
    let dtt_noise = unit_lognormal(t.dtt_cv);
    for (i, r) in recs.iter_mut().enumerate() {
        let steps = u64::from(r.total_steps);
        let total = binomial(rng, steps, 1.0 - t.aix);
        let clar = binomial(rng, total, INTERVENTION_MIX[0]);
        let corr = binomial(rng, total - clar, INTERVENTION_MIX[1] / (1.0 - INTERVENTION_MIX[0]));
        let appr = total - clar - corr;
        r.interventions = Interventions::new(clar as u32, corr as u32, appr as u32);

        let length = 1.0 - LENGTH_SHARE + LENGTH_SHARE * f64::from(r.total_steps) / mean_steps;
        let noise = dtt_noise.map_or(1.0, |d| d.sample(rng));
        let active = round_ms(t.dtt * length * noise);
        let human: f64 = round_ms((0..total).map(|_| wait.sample(rng)).sum());
        r.t_start = i as f64 * START_SPACING;
        r.human_wait = human;
        r.t_end = r.t_start + active + human;
    }

    // resources
    let ces_noise = unit_lognormal(t.ces_cv);
    let call_rate = (CALL_SHARE * t.ces / (spec.token_equivalent.max(1.0) * mean_steps)).clamp(0.0, 1.0);
    for r in recs.iter_mut() {
        let length = 1.0 - LENGTH_SHARE + LENGTH_SHARE * f64::from(r.total_steps) / mean_steps;
        let noise = ces_noise.map_or(1.0, |d| d.sample(rng));
        let resources = (t.ces * length * noise).round().max(0.0);
        let calls = binomial(rng, u64::from(r.total_steps), call_rate);
        let affordable = if spec.token_equivalent > 0.0 {
            (resources / spec.token_equivalent).floor() as u64
        } else {
            calls
        };
        r.api_calls = calls.min(affordable);
        r.tokens = (resources - r.api_calls as f64 * spec.token_equivalent).max(0.0).round() as u64;
    }

    // tool dexterity
    let mix = tool_mix(t.tdi);
    for r in recs.iter_mut() {
        let opps = 1 + binomial(rng, u64::from(r.total_steps) - 1, TOOL_OPPORTUNITY) as usize;
        let drawn: Vec<ToolEvent> = (0..opps).map(|_| ToolEvent::new(tool_outcome(rng, &mix))).collect();
        r.tool_events = canonical_tool_events(opps, tool_score_sum(&drawn))
            .expect("drawn events have a canonical form");
    }

    // evaluator panels
    let rater_sd = (RATER_TASK_SD.powi(2) + RATER_NOISE_SD.powi(2)).sqrt();
    let m = calibrate_location(t.oas, t.gcr, RATER_SUCCESS_SHIFT, rater_sd, 1, 10);
    let task_sd = Normal::new(0.0, RATER_TASK_SD).expect("sd > 0");
    let rater_noise = Normal::new(0.0, RATER_NOISE_SD).expect("sd > 0");
    for r in recs.iter_mut() {
        let succ = if r.success { 1.0 } else { 0.0 };
        let q = m + RATER_SUCCESS_SHIFT * (succ - t.gcr) + task_sd.sample(rng);
        let mut raters = [RaterScores::uniform(1); 3];
        for rs in &mut raters {
            *rs = RaterScores::new(
                score(rng, &rater_noise, q, 1, 10),
                score(rng, &rater_noise, q, 1, 10),
                score(rng, &rater_noise, q, 1, 10),
                score(rng, &rater_noise, q, 1, 10),
            );
        }
        r.rater_scores = Some(RaterPanel::new(raters));
    }

    // collaboration sessions
    let collab_sd = (COLLAB_SESSION_SD.powi(2) + COLLAB_NOISE_SD.powi(2)).sqrt();
    let mc = calibrate_location(t.cqi, 0.5, 0.0, collab_sd, 1, 5);
    let session_sd = Normal::new(0.0, COLLAB_SESSION_SD).expect("sd > 0");
    let collab_noise = Normal::new(0.0, COLLAB_NOISE_SD).expect("sd > 0");
    for (i, r) in recs.iter_mut().enumerate() {
        let present = rng.random::<f64>() < COLLAB_SHARE;
        if i == 0 || present {
            let q = mc + session_sd.sample(rng);
            let mut d = [0u8; 5];
            for v in &mut d {
                *v = score(rng, &collab_noise, q, 1, 5);
            }
            r.collab_scores = Some(CollabScores::new(d[0], d[1], d[2], d[3], d[4]));
        }
    }

    // chains, recovery and robustness
    for r in recs.iter_mut() {
        r.chain = ChainOutcome::clean(r.total_steps, r.success);
        r.chain.chain_success = false;
    }
    let multi: Vec<usize> = (0..n).filter(|&i| recs[i].total_steps >= 2).collect();
    let ok_multi: Vec<usize> = multi.iter().copied().filter(|&i| recs[i].success).collect();
    let k = quota(rng, multi.len(), t.mtr);
    let resilient = choose(rng, &ok_multi, k);
    for &i in &resilient {
        let r = &mut recs[i];
        r.chain.had_initial_error = true;
        r.chain.self_recovered = true;
        r.chain.error_type = Some(ErrorType::ALL[rng.random_range(0..ErrorType::ALL.len())]);
        // recovered unaided: no human error correction
        let iv = r.interventions;
        r.interventions = Interventions::new(iv.clarification + iv.error_correction, 0, iv.approval_gate);
    }
    for r in recs.iter_mut() {
        if r.chain.had_initial_error || !r.chain.is_multistep {
            continue;
        }
        let errored = if r.success {
            r.interventions.error_correction > 0
        } else {
            rng.random::<f64>() < FAILED_ERROR_RATE
        };
        if errored {
            r.chain.had_initial_error = true;
            r.chain.error_type = Some(ErrorType::ALL[rng.random_range(0..ErrorType::ALL.len())]);
        }
    }
    let long: Vec<usize> = (0..n).filter(|&i| recs[i].chain.chain_len >= 3).collect();
    let ok_long: Vec<usize> = long.iter().copied().filter(|&i| recs[i].success).collect();
    let k = quota(rng, long.len(), t.crs);
    for i in choose(rng, &ok_long, k) {
        recs[i].chain.chain_success = true;
    }
    for r in recs.iter_mut().filter(|r| r.chain.chain_len < 3) {
        r.chain.chain_success = r.success;
    }
    debug_assert!(recs
        .iter()
        .all(|r| r.chain.complexity_level == ComplexityLevel::for_chain_len(r.chain.chain_len)));

    // business KPI
    let winners: Vec<usize> = (0..n).filter(|&i| recs[i].success).collect();
    let kpi_noise = Normal::new(1.0, KPI_NOISE_CV).expect("sd > 0");
    let weights: Vec<f64> = winners.iter().map(|_| kpi_noise.sample(rng).max(0.05)).collect();
    let micros: Vec<i64> = match t.kpi {
        KpiTarget::Total(total) => split_exact((total * MICRO).round() as i64, &weights),
        KpiTarget::PerSuccess(mean) => weights.iter().map(|w| (mean * w * MICRO).round() as i64).collect(),
    };
    for (&i, &m) in winners.iter().zip(&micros) {
        recs[i].kpi_contribution = m as f64 / MICRO;
    }

    recs
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn quota_is_within_one_and_unbiased() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut total = 0usize;
        for _ in 0..4000 {
            let k = quota(&mut rng, 150, 0.7667);
            assert!(k == 115 || k == 116);
            total += k;
        }
        let mean = total as f64 / 4000.0;
        assert!((mean - 115.005).abs() < 0.05, "{mean}");
    }

    #[test]
    fn rounded_mean_matches_direct_sum() {
        // symmetric around the middle of 1..=10
        assert!((rounded_mean(5.5, 1.0, 1, 10) - 5.5).abs() < 1e-12);
        // far above the range collapses to the top score
        assert!((rounded_mean(40.0, 1.0, 1, 10) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn calibrated_location_hits_target() {
        for target in [2.0, 7.76, 8.68, 9.5] {
            let m = calibrate_location(target, 0.8, 0.6, 0.78, 1, 10);
            let e = 0.8 * rounded_mean(m + 0.6 * 0.2, 0.78, 1, 10) + 0.2 * rounded_mean(m - 0.6 * 0.8, 0.78, 1, 10);
            assert!((e - target).abs() < 1e-9);
        }
    }

    #[test]
    fn tool_mix_has_requested_mean() {
        for t in [-1.0, -0.6, -0.075, 0.0, 0.1528, 0.3798, 1.0] {
            let mix = tool_mix(t);
            let mean = -0.5 * mix[1] + mix[2] - mix[3];
            assert!((mean - t).abs() < 1e-12, "{t}: {mix:?}");
            assert!((mix.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(mix.iter().all(|p| *p >= -1e-15));
        }
    }

    #[test]
    fn exact_split_sums_to_total() {
        let parts = split_exact(12_240_000_000, &[0.9, 1.1, 1.3, 0.7, 1.0, 1.0, 0.333]);
        assert_eq!(parts.iter().sum::<i64>(), 12_240_000_000);
        assert_eq!(split_exact(7, &[0.0, 0.0, 0.0]).iter().sum::<i64>(), 7);
        assert!(split_exact(5, &[]).is_empty());
    }

    #[test]
    fn slugs() {
        assert_eq!(slug("Tool-Augmented"), "tool-augmented");
        assert_eq!(slug("Customer Service"), "customer-service");
        assert_eq!(slug("ReAct"), "react");
    }
}
