//! Independent brute-force and randomized oracles.
//!
//! Everything here validates the analysis and revision paths from the
//! outside: exhaustive event scans decide closure by definition, seeded
//! instance streams drive randomized cross-checks, and a sampling oracle
//! probes the relative-entropy minimality of the revision kernel. The brute
//! deciders recompute event probabilities locally and never call the
//! optimized decision procedures they are checking.
//!
//! Trials are independent and run in parallel under the `parallel` feature
//! (sequential otherwise); results are identical either way because every
//! trial derives its own random stream from `(seed, trial)` and failures are
//! sorted before reporting.

use std::fmt;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lockean::{closure_report, find_steps};
use crate::logic::{ModelSet, EXHAUSTIVE_GATE};
use crate::prob::{
    format_rational, kl_divergence, l1_distance, ratio, Distribution, Rational, Threshold,
};
use crate::revision::{predict_closure, revise};

/// Absolute slack for floating-point relative-entropy comparisons.
pub const KL_TOLERANCE: f64 = 1e-12;

/// Samples drawn per instance by the minimality check inside the `P4` suite.
pub const KL_SAMPLES_PER_TRIAL: u64 = 1000;

/// Deterministic source of random positive distributions and instance data.
///
/// Trial `t` always sees the same random stream for a given seed, regardless
/// of execution order or parallelism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceGenerator {
    pub seed: u64,
    pub n_vars: usize,
    /// Integer weights are drawn uniformly from `1..=weight_bound`.
    pub weight_bound: u32,
}

impl InstanceGenerator {
    pub fn new(seed: u64, n_vars: usize) -> InstanceGenerator {
        InstanceGenerator {
            seed,
            n_vars,
            weight_bound: 1000,
        }
    }

    pub fn with_weight_bound(mut self, weight_bound: u32) -> InstanceGenerator {
        self.weight_bound = weight_bound.max(1);
        self
    }

    fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }

    /// The positive distribution of trial `trial`: integer weights in
    /// `[1, weight_bound]` normalized by their exact sum.
    pub fn distribution(&self, trial: u64) -> Distribution {
        sample_distribution(&mut self.rng(trial), self.n_vars, self.weight_bound)
    }
}

fn sample_distribution(rng: &mut ChaCha8Rng, n_vars: usize, bound: u32) -> Distribution {
    let weights: Vec<u64> = (0..1usize << n_vars)
        .map(|_| u64::from(rng.gen_range(1..=bound)))
        .collect();
    Distribution::from_weights(&weights).expect("positive weights")
}

/// A reproducible counterexample: the full instance plus what was expected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub trial: u64,
    pub masses: Vec<Rational>,
    pub lambda: Option<Rational>,
    pub psi: Option<Vec<usize>>,
    pub expected: String,
    pub observed: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seed={} trial={} masses=[", self.seed, self.trial)?;
        for (i, m) in self.masses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(m))?;
        }
        write!(f, "]")?;
        if let Some(l) = &self.lambda {
            write!(f, " lambda={}", format_rational(l))?;
        }
        if let Some(psi) = &self.psi {
            write!(f, " psi={psi:?}")?;
        }
        write!(f, " expected {} but observed {}", self.expected, self.observed)
    }
}

/// Aggregate outcome of an oracle run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub checked: u64,
    pub failures: Vec<Failure>,
}

impl OracleVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Maps every trial index through `run`, in parallel when enabled, and
/// returns the failures in deterministic order.
fn run_trials<F>(trials: u64, run: F) -> Vec<Failure>
where
    F: Fn(u64) -> Option<Failure> + Sync,
{
    #[cfg(feature = "parallel")]
    let mut failures: Vec<Failure> = (0..trials).into_par_iter().filter_map(|t| run(t)).collect();
    #[cfg(not(feature = "parallel"))]
    let mut failures: Vec<Failure> = (0..trials).filter_map(|t| run(t)).collect();
    failures.sort_by_key(|f| (f.seed, f.trial));
    failures
}

/// Event probabilities indexed by world bitmask, recomputed locally so the
/// brute deciders stay independent of the analysis-side table.
fn brute_event_probabilities(p: &Distribution) -> Result<Vec<Rational>> {
    if p.n_vars() > EXHAUSTIVE_GATE {
        return Err(Error::SizeGate {
            n_vars: p.n_vars(),
            max: EXHAUSTIVE_GATE,
        });
    }
    let worlds = p.world_count();
    let mut table = vec![Rational::zero()];
    for mask in 1usize..(1 << worlds) {
        let value = &table[mask & (mask - 1)] + p.mass(mask.trailing_zeros() as usize);
        table.push(value);
    }
    Ok(table)
}

/// Decides deductive closure by definition: the believed events form a
/// non-empty proper family closed under pairwise intersection. Exhaustive
/// over all events, gated to small languages.
pub fn brute_closure(p: &Distribution, lambda: &Threshold) -> Result<bool> {
    let table = brute_event_probabilities(p)?;
    let member: Vec<bool> = table.iter().map(|q| q >= lambda.value()).collect();
    let members: Vec<usize> = (0..member.len()).filter(|&m| member[m]).collect();
    if members.is_empty() || member[0] {
        return Ok(false);
    }
    Ok(pairwise_closed(&member, &members))
}

/// Conjunctive closure alone: every pairwise intersection of believed events
/// is believed. Agrees with `brute_closure` on belief sets, where the family
/// is never empty and never contains the impossible event.
pub fn brute_conjunctive_closure(p: &Distribution, lambda: &Threshold) -> Result<bool> {
    let table = brute_event_probabilities(p)?;
    let member: Vec<bool> = table.iter().map(|q| q >= lambda.value()).collect();
    let members: Vec<usize> = (0..member.len()).filter(|&m| member[m]).collect();
    Ok(pairwise_closed(&member, &members))
}

fn pairwise_closed(member: &[bool], members: &[usize]) -> bool {
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i..] {
            if !member[a & b] {
                return false;
            }
        }
    }
    true
}

/// Is any believed event different from the full one?
fn brute_nontrivial(table: &[Rational], lambda: &Rational) -> bool {
    let full = table.len() - 1;
    (0..full).any(|m| table[m] >= *lambda)
}

/// Sampling check that the revision kernel minimizes relative entropy among
/// distributions giving the event probability exactly `lambda`.
///
/// Each sample renormalizes fresh positive weights to total `lambda` on the
/// event and `1 - lambda` off it, so every sample lies exactly on the
/// constraint surface. When the constraint binds (the event was not already
/// believed past `lambda`) the fixed mass ratios of the kernel output are
/// also checked exactly in rationals.
pub fn kl_minimality_check(
    p: &Distribution,
    psi: &ModelSet,
    lambda: &Threshold,
    trials: u64,
    seed: u64,
) -> Result<OracleVerdict> {
    if !p.is_positive() {
        return Err(Error::PositiveRequired);
    }
    if lambda.is_one() {
        return Err(Error::ThresholdOne);
    }
    let p_psi = p.prob(psi)?;
    if p_psi.is_zero() || p_psi.is_one() {
        return Err(Error::JeffreyDomain);
    }

    let revised = p.revised(psi, lambda)?;
    let mut failures = Vec::new();
    let mut checked = 0u64;

    if p_psi <= *lambda.value() {
        let factor_on = lambda.value() / &p_psi;
        let factor_off = lambda.complement() / (Rational::one() - &p_psi);
        for w in 0..p.world_count() {
            let expect = if psi.contains(w) { &factor_on } else { &factor_off };
            checked += 1;
            if revised.mass(w) != &(p.mass(w) * expect) {
                failures.push(Failure {
                    seed,
                    trial: 0,
                    masses: p.masses().to_vec(),
                    lambda: Some(lambda.value().clone()),
                    psi: Some(psi.worlds()),
                    expected: format!("mass ratio {} at world {w}", format_rational(expect)),
                    observed: format_rational(&(revised.mass(w) / p.mass(w))),
                });
            }
        }
    }

    let kl_revised = kl_divergence(&revised, p)?;
    let sample_failures = run_trials(trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        let q = feasible_sample(&mut rng, psi, lambda);
        let kl_q = kl_divergence(&q, p).expect("positive reference");
        if kl_q < kl_revised - KL_TOLERANCE {
            Some(Failure {
                seed,
                trial: t,
                masses: q.masses().to_vec(),
                lambda: Some(lambda.value().clone()),
                psi: Some(psi.worlds()),
                expected: format!("KL >= {kl_revised:.15} - {KL_TOLERANCE:e}"),
                observed: format!("{kl_q:.15}"),
            })
        } else {
            None
        }
    });
    checked += trials;
    failures.extend(sample_failures);
    failures.sort_by_key(|f| (f.seed, f.trial));
    Ok(OracleVerdict { checked, failures })
}

/// A random distribution with event probability exactly `lambda`: positive
/// weights renormalized groupwise.
fn feasible_sample(rng: &mut ChaCha8Rng, psi: &ModelSet, lambda: &Threshold) -> Distribution {
    let n_vars = psi.n_vars();
    let worlds = 1usize << n_vars;
    let weights: Vec<u64> = (0..worlds).map(|_| u64::from(rng.gen_range(1..=1000u32))).collect();
    let total = |on: bool| -> Rational {
        let sum: u64 = (0..worlds)
            .filter(|&w| psi.contains(w) == on)
            .map(|w| weights[w])
            .sum();
        Rational::from_integer(sum.into())
    };
    let on_total = total(true);
    let off_total = total(false);
    let mass: Vec<Rational> = (0..worlds)
        .map(|w| {
            let weight = Rational::from_integer(weights[w].into());
            if psi.contains(w) {
                lambda.value() * weight / &on_total
            } else {
                lambda.complement() * weight / &off_total
            }
        })
        .collect();
    Distribution::new(mass, false).expect("renormalized groups sum to 1")
}

/// The randomized cross-checks, one tag per validated result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// Closure decision agrees with both exhaustive filter scans.
    T1,
    /// Closed non-trivial thresholds are exactly the step bands.
    T2,
    /// The revision closure bound is sufficient and, for unbelieved events,
    /// necessary; on success the revised set is the event's superset family.
    T3,
    /// The revision kernel equals the Jeffrey mixture on every event when the
    /// event is under-believed, and the prior otherwise.
    P3,
    /// L1 distance closed forms for the kernel and for conditioning.
    F1,
    /// Relative-entropy minimality of the kernel on the constraint surface.
    P4,
    /// Closed sets with an `n`-world generator attain more than `n/(n+1)`.
    C1,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::P3,
        Theorem::F1,
        Theorem::P4,
        Theorem::C1,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::P3 => "P3",
            Theorem::F1 => "F1",
            Theorem::P4 => "P4",
            Theorem::C1 => "C1",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Runs `trials` independent randomized checks of one result.
pub fn theorem_suite(
    theorem: Theorem,
    gen: &InstanceGenerator,
    trials: u64,
) -> Result<OracleVerdict> {
    let exhaustive = matches!(theorem, Theorem::T1 | Theorem::T2 | Theorem::T3);
    if exhaustive && gen.n_vars > EXHAUSTIVE_GATE {
        return Err(Error::SizeGate {
            n_vars: gen.n_vars,
            max: EXHAUSTIVE_GATE,
        });
    }
    let failures = run_trials(trials, |t| theorem_trial(theorem, gen, t));
    Ok(OracleVerdict {
        checked: trials,
        failures,
    })
}

/// Runs a single trial; public so failures can be replayed and so callers can
/// drive the trial loop themselves (the benchmarks compare sequential and
/// parallel execution over this function).
pub fn theorem_trial(theorem: Theorem, gen: &InstanceGenerator, trial: u64) -> Option<Failure> {
    match theorem {
        Theorem::T1 => t1_trial(gen, trial),
        Theorem::T2 => t2_trial(gen, trial),
        Theorem::T3 => t3_trial(gen, trial),
        Theorem::P3 => p3_trial(gen, trial),
        Theorem::F1 => f1_trial(gen, trial),
        Theorem::P4 => p4_trial(gen, trial),
        Theorem::C1 => c1_trial(gen, trial),
    }
}

fn failure(
    gen: &InstanceGenerator,
    trial: u64,
    p: &Distribution,
    lambda: Option<&Threshold>,
    psi: Option<&ModelSet>,
    expected: impl Into<String>,
    observed: impl Into<String>,
) -> Failure {
    Failure {
        seed: gen.seed,
        trial,
        masses: p.masses().to_vec(),
        lambda: lambda.map(|l| l.value().clone()),
        psi: psi.map(ModelSet::worlds),
        expected: expected.into(),
        observed: observed.into(),
    }
}

fn sorted_image(table: &[Rational]) -> Vec<Rational> {
    let mut image: Vec<Rational> = table.to_vec();
    image.sort();
    image.dedup();
    image
}

/// Image values and image midpoints lying in the admissible interval.
fn lambda_candidates(image: &[Rational]) -> Vec<Rational> {
    let half = ratio(1, 2);
    let one = Rational::one();
    let mut out: Vec<Rational> = image
        .iter()
        .filter(|q| **q > half && **q <= one)
        .cloned()
        .collect();
    for pair in image.windows(2) {
        let mid = (&pair[0] + &pair[1]) / ratio(2, 1);
        if mid > half && mid <= one {
            out.push(mid);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The shared instance recipe of the closure checks: a random positive
/// distribution plus a threshold drawn from its event-probability image and
/// the midpoints between adjacent image values.
pub fn closure_instance(gen: &InstanceGenerator, trial: u64) -> (Distribution, Threshold) {
    let mut rng = gen.rng(trial);
    let p = sample_distribution(&mut rng, gen.n_vars, gen.weight_bound);
    let image = sorted_image(&brute_event_probabilities(&p).expect("gated size"));
    let candidates = lambda_candidates(&image);
    let pick = rng.gen_range(0..candidates.len());
    let lambda = Threshold::new(candidates[pick].clone()).expect("candidates are admissible");
    (p, lambda)
}

fn t1_trial(gen: &InstanceGenerator, trial: u64) -> Option<Failure> {
    let (p, lambda) = closure_instance(gen, trial);
    let analyzed = closure_report(&p, &lambda).expect("valid instance").closed;
    let filter_scan = brute_closure(&p, &lambda).expect("gated size");
    let conjunctive_scan = brute_conjunctive_closure(&p, &lambda).expect("gated size");
    if analyzed != filter_scan || filter_scan != conjunctive_scan {
        return Some(failure(
            gen,
            trial,
            &p,
            Some(&lambda),
            None,
            "closure decision == filter scan == conjunctive scan",
            format!("{analyzed}/{filter_scan}/{conjunctive_scan}"),
        ));
    }
    None
}

fn t2_trial(gen: &InstanceGenerator, trial: u64) -> Option<Failure> {
    let mut rng = gen.rng(trial);
    let p = sample_distribution(&mut rng, gen.n_vars, gen.weight_bound);
    let table = brute_event_probabilities(&p).expect("gated size");
    let image = sorted_image(&table);
    let steps = find_steps(&p).expect("positive instance");

    // Existence: some threshold in (1/2, 1) carries a closed non-trivial set
    // iff the distribution has a step.
    let one = Rational::one();
    let half = ratio(1, 2);
    let closed_nontrivial = |lambda: &Rational| -> bool {
        let threshold = Threshold::new(lambda.clone()).expect("admissible");
        brute_closure(&p, &threshold).expect("gated size") && brute_nontrivial(&table, lambda)
    };
    let exists = image
        .iter()
        .any(|q| *q > half && *q < one && closed_nontrivial(q));
    if exists != !steps.is_empty() {
        return Some(failure(
            gen,
            trial,
            &p,
            None,
            None,
            format!("closed non-trivial threshold exists == has steps ({})", !steps.is_empty()),
            format!("{exists}"),
        ));
    }

    // Every step threshold is closed with exactly the step's heavy event.
    for step in &steps {
        let threshold = Threshold::new(step.lambda_star.clone()).expect("strictly inside (1/2,1)");
        let report = closure_report(&p, &threshold).expect("valid instance");
        if !report.closed || report.generator.as_ref() != Some(&step.phi) {
            return Some(failure(
                gen,
                trial,
                &p,
                Some(&threshold),
                None,
                "closed with the step's heavy event as generator",
                format!("closed={} generator={:?}", report.closed, report.generator),
            ));
        }
    }

    // Band coverage: an admissible threshold yields a closed non-trivial set
    // iff its attained value is one of the step thresholds.
    for candidate in lambda_candidates(&image) {
        if candidate == one {
            continue;
        }
        let brute_side = closed_nontrivial(&candidate);
        let attained = image
            .iter()
            .find(|q| **q >= candidate)
            .expect("1 is in the image");
        let band_side = steps.iter().any(|s| s.lambda_star == *attained);
        if brute_side != band_side {
            let threshold = Threshold::new(candidate.clone()).expect("admissible");
            return Some(failure(
                gen,
                trial,
                &p,
                Some(&threshold),
                None,
                format!("closed non-trivial == in a step band ({band_side})"),
                format!("{brute_side}"),
            ));
        }
    }
    None
}

fn rand_lambda(rng: &mut ChaCha8Rng, include_one: bool) -> Threshold {
    let hi = if include_one { 2000 } else { 1999 };
    let numer = rng.gen_range(1001..=hi);
    Threshold::new(ratio(numer, 2000)).expect("inside (1/2, 1]")
}

/// A random non-empty event; with `proper` it also excludes the full event.
fn rand_event(rng: &mut ChaCha8Rng, n_vars: usize, proper: bool) -> ModelSet {
    let worlds = 1usize << n_vars;
    loop {
        let picked: Vec<usize> = (0..worlds).filter(|_| rng.gen_bool(0.5)).collect();
        if picked.is_empty() || (proper && picked.len() == worlds) {
            continue;
        }
        return ModelSet::from_worlds(n_vars, &picked).expect("in range");
    }
}

/// A random event with probability strictly below `lambda`: rejection-samples
/// a few times, then falls back to a lightest single world, which always
/// sits below the admissible threshold.
fn rand_underbelieved_event(
    rng: &mut ChaCha8Rng,
    p: &Distribution,
    lambda: &Threshold,
) -> ModelSet {
    for _ in 0..64 {
        let psi = rand_event(rng, p.n_vars(), true);
        if p.prob(&psi).expect("same language") < *lambda.value() {
            return psi;
        }
    }
    let lightest = (0..p.world_count())
        .min_by_key(|&w| p.mass(w))
        .expect("non-empty");
    ModelSet::from_worlds(p.n_vars(), &[lightest]).expect("in range")
}

fn t3_trial(gen: &InstanceGenerator, trial: u64) -> Option<Failure> {
    let mut rng = gen.rng(trial);
    let p = sample_distribution(&mut rng, gen.n_vars, gen.weight_bound);
    let lambda = rand_lambda(&mut rng, false);
    let psi = rand_underbelieved_event(&mut rng, &p, &lambda);

    let prediction = predict_closure(&p, &lambda, &psi).expect("valid instance");
    let outcome = revise(&p, &lambda, &psi).expect("valid instance");
    if outcome.predicted_closed != prediction.sufficient {
        return Some(failure(
            gen,
            trial,
            &p,
            Some(&lambda),
            Some(&psi),
            "revision outcome agrees with the standalone prediction",
            format!("{} vs {}", outcome.predicted_closed, prediction.sufficient),
        ));
    }

    let scanned_closed = brute_closure(&outcome.revised, &lambda).expect("gated size");
    if prediction.sufficient != scanned_closed {
        return Some(failure(
            gen,
            trial,
            &p,
            Some(&lambda),
            Some(&psi),
            format!("bound fired ({}) == revised set closed by scan", prediction.sufficient),
            format!("{scanned_closed}"),
        ));
    }

    if prediction.sufficient {
        // The revised belief set must be exactly the superset family of psi.
        let table = brute_event_probabilities(&outcome.revised).expect("gated size");
        let psi_mask = psi.mask().expect("gated world count") as usize;
        for (mask, prob) in table.iter().enumerate() {
            let believed = prob >= lambda.value();
            let superset = mask & psi_mask == psi_mask;
            if believed != superset {
                return Some(failure(
                    gen,
                    trial,
                    &p,
                    Some(&lambda),
                    Some(&psi),
                    "revised belief set == superset family of the event",
                    format!("event mask {mask:#x}: believed={believed} superset={superset}"),
                ));
            }
        }
    }
    None
}

fn p3_trial(gen: &InstanceGenerator, trial: u64) -> Option<Failure> {
    let mut rng = gen.rng(trial);
    let p = sample_distribution(&mut rng, gen.n_vars, gen.weight_bound);
    let lambda = rand_lambda(&mut rng, true);
    let psi = rand_event(&mut rng, gen.n_vars, false);
    let p_psi = p.prob(&psi).expect("same language");
    let revised = p.revised(&psi, &lambda).expect("valid instance");

    if p_psi > *lambda.value() || psi.is_full() {
        if revised != p {
            return Some(failure(
                gen,
                trial,
                &p,
                Some(&lambda),
                Some(&psi),
                "revision by a believed event is the identity",
                "distribution changed",
            ));
        }
        return None;
    }

    // Under-believed branch: compare with the Jeffrey mixture event by event.
    let prior = brute_event_probabilities(&p).expect("gated size");
    let post = brute_event_probabilities(&revised).expect("gated size");
    let psi_mask = psi.mask().expect("gated world count") as usize;
    let full_mask = prior.len() - 1;
    let p_not = Rational::one() - &p_psi;
    for mask in 0..=full_mask {
        let mixture = lambda.value() * &prior[mask & psi_mask] / &p_psi
            + lambda.complement() * &prior[mask & !psi_mask & full_mask] / &p_not;
        if post[mask] != mixture {
            return Some(failure(
                gen,
                trial,
                &p,
                Some(&lambda),
                Some(&psi),
                format!("Jeffrey mixture {} on event mask {mask:#x}", format_rational(&mixture)),
                format_rational(&post[mask]),
            ));
        }
    }
    None
}

fn f1_trial(gen: &InstanceGenerator, trial: u64) -> Option<Failure> {
    let mut rng = gen.rng(trial);
    let p = sample_distribution(&mut rng, gen.n_vars, gen.weight_bound);
    let lambda = rand_lambda(&mut rng, false);
    let psi = rand_underbelieved_event(&mut rng, &p, &lambda);
    let p_psi = p.prob(&psi).expect("same language");

    let revised = p.revised(&psi, &lambda).expect("valid instance");
    let d_revised = l1_distance(&revised, &p).expect("same language");
    let expected_revised = ratio(2, 1) * (lambda.value() - &p_psi);
    let conditioned = p.conditioned_on(&psi).expect("positive prior");
    let d_conditioned = l1_distance(&conditioned, &p).expect("same language");
    let expected_conditioned = ratio(2, 1) * (Rational::one() - &p_psi);

    if d_revised != expected_revised
        || d_conditioned != expected_conditioned
        || d_revised >= d_conditioned
    {
        return Some(failure(
            gen,
            trial,
            &p,
            Some(&lambda),
            Some(&psi),
            format!(
                "d(revised)={} < d(conditioned)={}",
                format_rational(&expected_revised),
                format_rational(&expected_conditioned),
            ),
            format!(
                "d(revised)={} d(conditioned)={}",
                format_rational(&d_revised),
                format_rational(&d_conditioned),
            ),
        ));
    }
    None
}

fn p4_trial(gen: &InstanceGenerator, trial: u64) -> Option<Failure> {
    let mut rng = gen.rng(trial);
    let p = sample_distribution(&mut rng, gen.n_vars, gen.weight_bound);
    let lambda = rand_lambda(&mut rng, false);
    let psi = rand_underbelieved_event(&mut rng, &p, &lambda);
    let inner_seed = gen.seed ^ (trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let verdict = kl_minimality_check(&p, &psi, &lambda, KL_SAMPLES_PER_TRIAL, inner_seed)
        .expect("valid instance");
    verdict.failures.into_iter().next().map(|mut f| {
        f.trial = trial;
        f.seed = gen.seed;
        f
    })
}

fn c1_trial(gen: &InstanceGenerator, trial: u64) -> Option<Failure> {
    let (p, lambda) = closure_instance(gen, trial);
    let report = closure_report(&p, &lambda).expect("valid instance");
    if !report.closed {
        return None;
    }
    let size = report.generator.as_ref().expect("closed").len();
    let floor = ratio(size as i64, size as i64 + 1);
    if report.lambda_max <= floor {
        return Some(failure(
            gen,
            trial,
            &p,
            Some(&lambda),
            None,
            format!("attained threshold > {}", format_rational(&floor)),
            format_rational(&report.lambda_max),
        ));
    }
    None
}
