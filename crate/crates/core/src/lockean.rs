//! Threshold-based belief sets and their structure.
//!
//! Fixing a positive distribution `P` and a threshold `lambda` in `(1/2, 1]`,
//! the belief set collects every event of probability at least `lambda`. The
//! functions here decide whether that family is deductively closed (a filter
//! of the event algebra), locate the band of thresholds inducing the same
//! family, enumerate the step masses that generate all closed non-trivial
//! families, and evaluate the related acceptance-style diagnostics.
//!
//! The closure decision uses the finite-filter core criterion: the
//! intersection of all believed events is exactly `{w : P(w) > 1 - lambda}`,
//! and the family is a filter iff that core is itself believed. The reported
//! quantities (generator, attained threshold, minimum generator mass) are the
//! explanation in the band/threshold vocabulary; the oracle suite cross-checks
//! the criterion against exhaustive scans.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::logic::{ModelSet, EXHAUSTIVE_GATE};
use crate::prob::{ratio, Distribution, Rational, Threshold};

/// The half-open band `(lambda_min, lambda_max]` of thresholds that induce
/// the same belief set, together with the full image of the distribution on
/// events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdBand {
    /// Every probability value attained by some event, ascending; starts at
    /// 0 and ends at 1.
    pub image: Vec<Rational>,
    /// Strict lower edge: `max(1/2, largest image value below lambda)`.
    pub lambda_min: Rational,
    /// Inclusive upper edge: the smallest image value at or above lambda.
    pub lambda_max: Rational,
}

/// Verdict of the deductive-closure decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub closed: bool,
    /// The generating event when closed: the belief set is exactly its
    /// superset family.
    pub generator: Option<ModelSet>,
    /// The attained threshold `lambda_max` of the band.
    pub lambda_max: Rational,
    /// Minimum world mass on the generator; exceeds `1 - lambda_max` exactly
    /// when closed.
    pub min_mass_on_generator: Option<Rational>,
    /// Two believed events whose intersection is not believed, present
    /// exactly when not closed.
    pub witness: Option<(ModelSet, ModelSet)>,
}

/// Maximality/triviality classification of a belief set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    /// Some single world is believed outright.
    pub maximal: bool,
    /// Only the full event reaches the threshold.
    pub trivial: bool,
}

/// A step of the distribution: a mass value strictly exceeding the (positive)
/// total mass of all strictly lighter worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    /// All worlds carrying the step mass, ascending. Tied worlds induce the
    /// same heavy-world event and are reported together.
    pub worlds: Vec<usize>,
    /// The shared step mass, which is also the minimum mass on `phi`.
    pub mass: Rational,
    /// The event of all worlds at least as heavy as the step.
    pub phi: ModelSet,
    /// `P(phi)`: the attained threshold whose band yields the closed set
    /// generated by `phi`.
    pub lambda_star: Rational,
}

/// One closed non-trivial threshold: the attained value and its generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedThreshold {
    pub lambda_star: Rational,
    pub generator: ModelSet,
}

/// Related-work diagnostics for a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diagnostics {
    /// Pairwise distinct masses, each exceeding the sum of all smaller ones.
    pub big_stepped: bool,
    /// Some world above 1/2, or two worlds tied at exactly 1/2.
    pub acceptance: bool,
    /// Every world of the queried event outweighs `lambda/(1-lambda)` times
    /// the complement's probability; `None` when no event was supplied.
    pub p_stable: Option<bool>,
}

/// An explicit belief-set representation: the antichain of inclusion-minimal
/// believed events. An event is believed iff it contains one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefSetView {
    pub dist: Distribution,
    pub lambda: Threshold,
    pub minimal_members: Vec<ModelSet>,
}

impl BeliefSetView {
    pub fn new(p: &Distribution, lambda: &Threshold) -> Result<BeliefSetView> {
        Ok(BeliefSetView {
            dist: p.clone(),
            lambda: lambda.clone(),
            minimal_members: minimal_members(p, lambda)?,
        })
    }

    /// Membership via the antichain representation (upward closure).
    pub fn contains(&self, s: &ModelSet) -> Result<bool> {
        if s.n_vars() != self.dist.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.dist.world_count(),
                found: s.world_count(),
            });
        }
        Ok(self.minimal_members.iter().any(|m| m.is_subset_of(s)))
    }
}

fn require_positive(p: &Distribution) -> Result<()> {
    if !p.is_positive() {
        return Err(Error::PositiveRequired);
    }
    Ok(())
}

/// True iff the probability of `s` reaches the threshold.
pub fn believes(p: &Distribution, lambda: &Threshold, s: &ModelSet) -> Result<bool> {
    require_positive(p)?;
    Ok(p.prob(s)? >= *lambda.value())
}

/// All probability values attained by events, computed as subset sums over
/// the distinct masses with multiplicities.
fn probability_image(p: &Distribution) -> Vec<Rational> {
    let mut groups: BTreeMap<&Rational, usize> = BTreeMap::new();
    for m in p.masses() {
        *groups.entry(m).or_insert(0) += 1;
    }
    let mut sums: BTreeSet<Rational> = BTreeSet::new();
    sums.insert(Rational::zero());
    for (value, count) in groups {
        if value.is_zero() {
            continue;
        }
        let mut next = BTreeSet::new();
        for base in &sums {
            let mut acc = base.clone();
            next.insert(acc.clone());
            for _ in 0..count {
                acc += value;
                next.insert(acc.clone());
            }
        }
        sums = next;
    }
    sums.into_iter().collect()
}

/// The band of thresholds inducing the same belief set as `lambda`.
pub fn threshold_band(p: &Distribution, lambda: &Threshold) -> Result<ThresholdBand> {
    require_positive(p)?;
    Ok(band_from_image(probability_image(p), lambda.value()))
}

fn band_from_image(image: Vec<Rational>, lambda: &Rational) -> ThresholdBand {
    let split = image.partition_point(|q| q < lambda);
    let lambda_max = image[split].clone(); // 1 is always in the image
    let below = image[split - 1].clone(); // 0 is always in the image
    let half = ratio(1, 2);
    let lambda_min = if below > half { below } else { half };
    ThresholdBand {
        image,
        lambda_min,
        lambda_max,
    }
}

/// Probability of every event, indexed by world bitmask. Exhaustive, so gated
/// to small languages.
pub(crate) fn event_probabilities(p: &Distribution) -> Result<Vec<Rational>> {
    if p.n_vars() > EXHAUSTIVE_GATE {
        return Err(Error::SizeGate {
            n_vars: p.n_vars(),
            max: EXHAUSTIVE_GATE,
        });
    }
    let worlds = p.world_count();
    let mut table = Vec::with_capacity(1 << worlds);
    table.push(Rational::zero());
    for mask in 1usize..(1 << worlds) {
        let low = mask.trailing_zeros() as usize;
        let rest = &table[mask & (mask - 1)];
        table.push(rest + p.mass(low));
    }
    Ok(table)
}

/// The inclusion-minimal believed events, sorted by their world lists.
pub fn minimal_members(p: &Distribution, lambda: &Threshold) -> Result<Vec<ModelSet>> {
    require_positive(p)?;
    let table = event_probabilities(p)?;
    let worlds = p.world_count();
    let mut out = Vec::new();
    for mask in 1usize..(1 << worlds) {
        if table[mask] < *lambda.value() {
            continue;
        }
        let minimal = (0..worlds)
            .filter(|&w| mask >> w & 1 == 1)
            .all(|w| table[mask & !(1 << w)] < *lambda.value());
        if minimal {
            out.push(ModelSet::from_mask(p.n_vars(), mask as u32));
        }
    }
    out.sort_by_key(|s| s.worlds());
    Ok(out)
}

/// Decides deductive closure of the belief set.
///
/// Accepts non-negative distributions as well: the core criterion only needs
/// additivity and monotonicity, and revision at threshold 1 produces
/// conditioned (non-positive) posteriors whose closure is still meaningful.
pub fn closure_report(p: &Distribution, lambda: &Threshold) -> Result<ClosureReport> {
    let cutoff = lambda.complement();
    let core_worlds: Vec<usize> = (0..p.world_count())
        .filter(|&w| *p.mass(w) > cutoff)
        .collect();
    let core = ModelSet::from_worlds(p.n_vars(), &core_worlds)?;
    let p_core = p.prob(&core)?;

    if p_core >= *lambda.value() {
        // The core is believed, so every believed event contains it and the
        // family is the filter it generates. Its probability is the smallest
        // believed one, i.e. the attained threshold of the band.
        let min_mass = core.iter().map(|w| p.mass(w)).min().cloned();
        return Ok(ClosureReport {
            closed: true,
            generator: Some(core),
            lambda_max: p_core,
            min_mass_on_generator: min_mass,
            witness: None,
        });
    }

    let lambda_max = band_from_image(probability_image(p), lambda.value()).lambda_max;
    let witness = closure_witness(p, lambda, &core)?;
    Ok(ClosureReport {
        closed: false,
        generator: None,
        lambda_max,
        min_mass_on_generator: None,
        witness: Some(witness),
    })
}

/// Produces two believed events with an unbelieved intersection, given that
/// the core is not believed. Tries the pair that removes the extremal light
/// worlds first, then falls back to a running intersection of
/// single-world-removed events, which must eventually drop below the
/// threshold because it ends at the core.
fn closure_witness(
    p: &Distribution,
    lambda: &Threshold,
    core: &ModelSet,
) -> Result<(ModelSet, ModelSet)> {
    let full = ModelSet::full(p.n_vars());
    let light: Vec<usize> = (0..p.world_count())
        .filter(|&w| !core.contains(w))
        .collect();
    let without = |w: usize| -> Result<ModelSet> {
        Ok(full.difference(&ModelSet::from_worlds(p.n_vars(), &[w])?))
    };

    let first = *light.first().expect("unbelieved core has light worlds");
    let last = *light.last().expect("unbelieved core has light worlds");
    if first != last {
        let a = without(last)?;
        let b = without(first)?;
        if p.prob(&a.intersection(&b))? < *lambda.value() {
            return Ok((a, b));
        }
    }

    let mut running = without(first)?;
    for &w in &light[1..] {
        let member = without(w)?;
        let next = running.intersection(&member);
        if p.prob(&next)? < *lambda.value() {
            return Ok((running, member));
        }
        running = next;
    }
    unreachable!("core not believed, so some running intersection fails")
}

/// Maximality and triviality of the belief set.
pub fn classify(p: &Distribution, lambda: &Threshold) -> Result<Classification> {
    require_positive(p)?;
    let maximal = *p.max_mass() >= *lambda.value();
    // Only the full event reaches the threshold iff even the heaviest proper
    // subset, which drops exactly the lightest world, falls short.
    let trivial = Rational::one() - p.min_mass() < *lambda.value();
    Ok(Classification { maximal, trivial })
}

/// All steps of the distribution, one report per distinct step mass, sorted
/// by attained threshold ascending.
pub fn find_steps(p: &Distribution) -> Result<Vec<StepReport>> {
    require_positive(p)?;
    let mut by_mass: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    for w in 0..p.world_count() {
        by_mass.entry(p.mass(w)).or_default().push(w);
    }
    let mut steps = Vec::new();
    let mut lighter_sum = Rational::zero();
    for (value, worlds) in &by_mass {
        if **value > lighter_sum && lighter_sum > Rational::zero() {
            let phi_worlds: Vec<usize> = (0..p.world_count())
                .filter(|&w| *p.mass(w) >= **value)
                .collect();
            let phi = ModelSet::from_worlds(p.n_vars(), &phi_worlds)?;
            steps.push(StepReport {
                worlds: worlds.clone(),
                mass: (*value).clone(),
                lambda_star: Rational::one() - &lighter_sum,
                phi,
            });
        }
        lighter_sum += (*value) * Rational::from_integer(worlds.len().into());
    }
    steps.sort_by(|a, b| a.lambda_star.cmp(&b.lambda_star));
    Ok(steps)
}

/// The attained thresholds whose bands carry closed non-trivial belief sets,
/// with their generators: exactly one per step.
pub fn closed_thresholds(p: &Distribution) -> Result<Vec<ClosedThreshold>> {
    Ok(find_steps(p)?
        .into_iter()
        .map(|s| ClosedThreshold {
            lambda_star: s.lambda_star,
            generator: s.phi,
        })
        .collect())
}

/// Big-stepped / acceptance-function / stability diagnostics.
pub fn diagnostics(
    p: &Distribution,
    lambda: &Threshold,
    psi: Option<&ModelSet>,
) -> Result<Diagnostics> {
    require_positive(p)?;
    let mut sorted: Vec<&Rational> = p.masses().iter().collect();
    sorted.sort();
    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
    let mut prefix = Rational::zero();
    let mut dominates = true;
    for m in &sorted {
        if **m <= prefix {
            dominates = false;
            break;
        }
        prefix += *m;
    }
    let big_stepped = distinct && dominates;

    let half = ratio(1, 2);
    let acceptance = sorted.iter().any(|m| **m > half)
        || sorted.iter().filter(|m| ***m == half).count() >= 2;

    let p_stable = match psi {
        None => None,
        Some(event) => {
            if lambda.is_one() {
                return Err(Error::ThresholdOne);
            }
            if event.is_empty() {
                return Err(Error::InconsistentRevision);
            }
            let p_not = p.prob(&event.complement())?;
            let bound = lambda.value() / lambda.complement() * p_not;
            Some(event.iter().all(|w| *p.mass(w) > bound))
        }
    };

    Ok(Diagnostics {
        big_stepped,
        acceptance,
        p_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::ratio;

    fn dist(masses: &[(i64, i64)]) -> Distribution {
        Distribution::new(masses.iter().map(|&(n, d)| ratio(n, d)).collect(), true).unwrap()
    }

    /// (1/20, 3/10, 3/5, 1/20): steps at the 3/5 world and the 3/10 world.
    fn two_step() -> Distribution {
        dist(&[(1, 20), (3, 10), (3, 5), (1, 20)])
    }

    fn uniform4() -> Distribution {
        dist(&[(1, 4), (1, 4), (1, 4), (1, 4)])
    }

    fn lam(n: i64, d: i64) -> Threshold {
        Threshold::new(ratio(n, d)).unwrap()
    }

    fn set(worlds: &[usize]) -> ModelSet {
        ModelSet::from_worlds(2, worlds).unwrap()
    }

    #[test]
    fn membership_is_threshold_comparison() {
        let p = two_step();
        assert!(believes(&p, &lam(9, 10), &set(&[1, 2])).unwrap());
        assert!(!believes(&p, &lam(9, 10), &set(&[2])).unwrap());
        assert!(believes(&p, &lam(9, 10), &ModelSet::full(2)).unwrap());
    }

    #[test]
    fn membership_rejects_nonpositive() {
        let p = uniform4().conditioned_on(&set(&[0, 1])).unwrap();
        assert_eq!(
            believes(&p, &lam(3, 4), &set(&[0])).unwrap_err(),
            Error::PositiveRequired
        );
    }

    #[test]
    fn image_enumerates_all_event_probabilities() {
        let p = two_step();
        let band = threshold_band(&p, &lam(4, 5)).unwrap();
        let expected: Vec<Rational> = [
            (0, 1),
            (1, 20),
            (1, 10),
            (3, 10),
            (7, 20),
            (2, 5),
            (3, 5),
            (13, 20),
            (7, 10),
            (9, 10),
            (19, 20),
            (1, 1),
        ]
        .iter()
        .map(|&(n, d)| ratio(n, d))
        .collect();
        assert_eq!(band.image, expected);
        assert_eq!(band.lambda_min, ratio(7, 10));
        assert_eq!(band.lambda_max, ratio(9, 10));
    }

    #[test]
    fn band_clamps_lower_edge_at_one_half() {
        let p = two_step();
        let band = threshold_band(&p, &lam(3, 5)).unwrap();
        assert_eq!(band.lambda_min, ratio(1, 2));
        assert_eq!(band.lambda_max, ratio(3, 5));
    }

    #[test]
    fn band_at_threshold_one() {
        let p = uniform4();
        let band = threshold_band(&p, &lam(1, 1)).unwrap();
        assert_eq!(band.lambda_max, ratio(1, 1));
        assert_eq!(band.lambda_min, ratio(3, 4));
    }

    #[test]
    fn minimal_members_examples() {
        let p = two_step();
        let members = minimal_members(&p, &lam(9, 10)).unwrap();
        assert_eq!(members, vec![set(&[1, 2])]);

        let u = uniform4();
        let members = minimal_members(&u, &lam(3, 4)).unwrap();
        assert_eq!(
            members,
            vec![
                set(&[0, 1, 2]),
                set(&[0, 1, 3]),
                set(&[0, 2, 3]),
                set(&[1, 2, 3])
            ]
        );

        let members = minimal_members(&u, &lam(9, 10)).unwrap();
        assert_eq!(members, vec![ModelSet::full(2)]);
    }

    #[test]
    fn belief_set_view_matches_probability_route() {
        let p = two_step();
        let view = BeliefSetView::new(&p, &lam(4, 5)).unwrap();
        for mask in 0u32..16 {
            let s = ModelSet::from_mask(2, mask);
            assert_eq!(
                view.contains(&s).unwrap(),
                believes(&p, &lam(4, 5), &s).unwrap()
            );
        }
    }

    #[test]
    fn closed_belief_set_reports_generator() {
        let p = two_step();
        let report = closure_report(&p, &lam(3, 5)).unwrap();
        assert!(report.closed);
        assert_eq!(report.generator, Some(set(&[2])));
        assert_eq!(report.lambda_max, ratio(3, 5));
        assert_eq!(report.min_mass_on_generator, Some(ratio(3, 5)));
        assert!(report.witness.is_none());

        let report = closure_report(&p, &lam(9, 10)).unwrap();
        assert!(report.closed);
        assert_eq!(report.generator, Some(set(&[1, 2])));
        assert_eq!(report.min_mass_on_generator, Some(ratio(3, 10)));
    }

    #[test]
    fn unclosed_belief_set_reports_witness_pair() {
        let report = closure_report(&uniform4(), &lam(3, 4)).unwrap();
        assert!(!report.closed);
        assert_eq!(report.lambda_max, ratio(3, 4));
        let (a, b) = report.witness.unwrap();
        assert_eq!(a, set(&[0, 1, 2]));
        assert_eq!(b, set(&[1, 2, 3]));
    }

    #[test]
    fn threshold_one_is_closed_with_full_generator() {
        let report = closure_report(&uniform4(), &lam(1, 1)).unwrap();
        assert!(report.closed);
        assert_eq!(report.generator, Some(ModelSet::full(2)));
        assert_eq!(report.lambda_max, ratio(1, 1));
    }

    #[test]
    fn classify_examples() {
        let p = two_step();
        assert_eq!(
            classify(&p, &lam(3, 5)).unwrap(),
            Classification { maximal: true, trivial: false }
        );
        assert_eq!(
            classify(&p, &lam(9, 10)).unwrap(),
            Classification { maximal: false, trivial: false }
        );
        assert_eq!(
            classify(&p, &lam(1, 1)).unwrap(),
            Classification { maximal: false, trivial: true }
        );
    }

    #[test]
    fn steps_of_the_two_step_distribution() {
        let steps = find_steps(&two_step()).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].worlds, vec![2]);
        assert_eq!(steps[0].mass, ratio(3, 5));
        assert_eq!(steps[0].phi, set(&[2]));
        assert_eq!(steps[0].lambda_star, ratio(3, 5));
        assert_eq!(steps[1].worlds, vec![1]);
        assert_eq!(steps[1].phi, set(&[1, 2]));
        assert_eq!(steps[1].lambda_star, ratio(9, 10));
    }

    #[test]
    fn uniform_distribution_has_no_steps() {
        assert!(find_steps(&uniform4()).unwrap().is_empty());
        assert!(closed_thresholds(&uniform4()).unwrap().is_empty());
    }

    #[test]
    fn single_step_distribution() {
        let p = dist(&[(7, 10), (1, 10), (1, 10), (1, 10)]);
        let steps = find_steps(&p).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].worlds, vec![0]);
        assert_eq!(steps[0].phi, set(&[0]));
        assert_eq!(steps[0].lambda_star, ratio(7, 10));
    }

    #[test]
    fn tied_step_masses_collapse_to_one_report() {
        let p = dist(&[(2, 5), (2, 5), (1, 10), (1, 10)]);
        let steps = find_steps(&p).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].worlds, vec![0, 1]);
        assert_eq!(steps[0].lambda_star, ratio(4, 5));
    }

    #[test]
    fn closed_thresholds_pair_lambda_star_with_generator() {
        let pairs = closed_thresholds(&two_step()).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].lambda_star, ratio(3, 5));
        assert_eq!(pairs[0].generator, set(&[2]));
        assert_eq!(pairs[1].lambda_star, ratio(9, 10));
        assert_eq!(pairs[1].generator, set(&[1, 2]));
    }

    #[test]
    fn diagnostics_examples() {
        let p = dist(&[(7, 10), (1, 10), (1, 10), (1, 10)]);
        let d = diagnostics(&p, &lam(3, 4), None).unwrap();
        assert!(!d.big_stepped); // tied light worlds
        assert!(d.acceptance);
        assert_eq!(d.p_stable, None);

        let q = two_step();
        let d = diagnostics(&q, &lam(3, 4), None).unwrap();
        assert!(!d.big_stepped);
        assert!(d.acceptance);

        let u = uniform4();
        let d = diagnostics(&u, &lam(3, 4), Some(&ModelSet::full(2))).unwrap();
        assert_eq!(d.p_stable, Some(true));
        assert!(!d.acceptance);
    }

    #[test]
    fn genuinely_big_stepped_distribution() {
        let p = dist(&[(8, 15), (4, 15), (2, 15), (1, 15)]);
        let d = diagnostics(&p, &lam(3, 4), None).unwrap();
        assert!(d.big_stepped);
    }

    #[test]
    fn p_stable_rejects_threshold_one() {
        let u = uniform4();
        assert_eq!(
            diagnostics(&u, &lam(1, 1), Some(&ModelSet::full(2))).unwrap_err(),
            Error::ThresholdOne
        );
    }

    #[test]
    fn minimal_members_gated_above_four_vars() {
        let masses: Vec<Rational> = (0..32).map(|_| ratio(1, 32)).collect();
        let p = Distribution::new(masses, true).unwrap();
        assert!(matches!(
            minimal_members(&p, &lam(3, 4)),
            Err(Error::SizeGate { n_vars: 5, max: 4 })
        ));
    }
}
