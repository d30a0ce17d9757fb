//! Randomized cross-checks of the analysis paths against the brute oracles,
//! plus the band/step invariants that fall outside the tagged suites.

use lockean_core::{
    agm_audit, believes, brute_closure, closure_instance, closure_report, consequence_membership,
    find_steps, kl_divergence, kl_minimality_check, minimal_members, ratio, theorem_suite,
    threshold_band, Distribution, InstanceGenerator, ModelSet, Rational, Theorem, Threshold,
};
use num::{One, Zero};

fn assert_clean(theorem: Theorem, gen: &InstanceGenerator, trials: u64) {
    let verdict = theorem_suite(theorem, gen, trials).unwrap();
    assert_eq!(verdict.checked, trials);
    assert!(
        verdict.passed(),
        "{theorem} failed: {}",
        verdict.failures[0]
    );
}

#[test]
fn closure_decision_matches_exhaustive_scans() {
    assert_clean(Theorem::T1, &InstanceGenerator::new(7, 3), 200);
    assert_clean(Theorem::T1, &InstanceGenerator::new(8, 2), 200);
}

#[test]
fn closure_decision_matches_scans_with_heavy_ties() {
    // Small weight bounds force many tied masses and tied event sums.
    let gen = InstanceGenerator::new(9, 3).with_weight_bound(3);
    assert_clean(Theorem::T1, &gen, 200);
}

#[test]
fn step_bands_are_exactly_the_closed_nontrivial_thresholds() {
    assert_clean(Theorem::T2, &InstanceGenerator::new(11, 3), 150);
    assert_clean(Theorem::T2, &InstanceGenerator::new(12, 2).with_weight_bound(4), 150);
}

#[test]
fn revision_closure_bound_is_sufficient_and_necessary() {
    assert_clean(Theorem::T3, &InstanceGenerator::new(13, 3), 200);
}

#[test]
fn revision_kernel_equals_jeffrey_mixture_on_events() {
    assert_clean(Theorem::P3, &InstanceGenerator::new(17, 3), 50);
    assert_clean(Theorem::P3, &InstanceGenerator::new(18, 2), 50);
}

#[test]
fn l1_closed_forms_hold() {
    assert_clean(Theorem::F1, &InstanceGenerator::new(19, 3), 200);
    // The distance forms are size-independent.
    assert_clean(Theorem::F1, &InstanceGenerator::new(19, 6), 10);
}

#[test]
fn kl_minimality_holds_on_sampled_feasible_points() {
    assert_clean(Theorem::P4, &InstanceGenerator::new(23, 2), 5);
}

#[test]
fn closed_generators_bound_the_attained_threshold() {
    assert_clean(Theorem::C1, &InstanceGenerator::new(7, 3), 200);
}

#[test]
fn band_is_stable_across_its_interior() {
    // Membership of every event is unchanged anywhere in (lambda_min, lambda_max].
    let gen = InstanceGenerator::new(29, 3);
    for trial in 0..100 {
        let (p, lambda) = closure_instance(&gen, trial);
        let band = threshold_band(&p, &lambda).unwrap();
        assert!(band.lambda_min < *lambda.value());
        assert!(*lambda.value() <= band.lambda_max);
        assert!(band.image.contains(&band.lambda_max));

        let midpoint = (&band.lambda_min + &band.lambda_max) / ratio(2, 1);
        let alternates = [
            Threshold::new(band.lambda_max.clone()).unwrap(),
            Threshold::new(midpoint).unwrap(),
        ];
        for mask in 0u32..(1 << p.world_count()) {
            let s = ModelSet::from_mask(p.n_vars(), mask);
            let at_lambda = believes(&p, &lambda, &s).unwrap();
            for alt in &alternates {
                assert_eq!(at_lambda, believes(&p, alt, &s).unwrap());
            }
        }
    }
}

#[test]
fn events_attaining_lambda_exactly_are_the_generator() {
    // When the belief set is closed, an event of probability exactly lambda
    // can only be the generator.
    let gen = InstanceGenerator::new(31, 3);
    let mut hits = 0;
    for trial in 0..400 {
        let (p, lambda) = closure_instance(&gen, trial);
        let report = closure_report(&p, &lambda).unwrap();
        if !report.closed {
            continue;
        }
        let generator = report.generator.unwrap();
        for mask in 0u32..(1 << p.world_count()) {
            let s = ModelSet::from_mask(p.n_vars(), mask);
            if p.prob(&s).unwrap() == *lambda.value() {
                hits += 1;
                assert_eq!(s, generator, "exact-threshold event must generate");
            }
        }
    }
    assert!(hits > 0, "instance stream never attained the threshold exactly");
}

#[test]
fn no_event_and_its_complement_are_both_believed() {
    let gen = InstanceGenerator::new(37, 3);
    for trial in 0..100 {
        let (p, lambda) = closure_instance(&gen, trial);
        for mask in 0u32..(1 << p.world_count()) {
            let s = ModelSet::from_mask(p.n_vars(), mask);
            assert!(
                !(believes(&p, &lambda, &s).unwrap()
                    && believes(&p, &lambda, &s.complement()).unwrap()),
                "contradictory pair believed"
            );
        }
    }
}

#[test]
fn steps_obey_the_defining_inequalities() {
    let gen = InstanceGenerator::new(41, 3).with_weight_bound(6);
    let half = ratio(1, 2);
    let one = Rational::one();
    for trial in 0..300 {
        let p = gen.distribution(trial);
        for step in find_steps(&p).unwrap() {
            // Strictly between 1/2 and 1.
            assert!(step.lambda_star > half && step.lambda_star < one);
            // The step mass is the minimum over its heavy event.
            let min_on_phi = step.phi.iter().map(|w| p.mass(w)).min().unwrap();
            assert_eq!(*min_on_phi, step.mass);
            // Mass exceeds the positive total of all strictly lighter worlds.
            let lighter: Rational = (0..p.world_count())
                .filter(|&w| *p.mass(w) < step.mass)
                .map(|w| p.mass(w))
                .sum();
            assert!(step.mass > lighter && lighter > Rational::zero());
            // All tied worlds are reported.
            for w in 0..p.world_count() {
                assert_eq!(step.worlds.contains(&w), *p.mass(w) == step.mass);
            }
        }
    }
}

#[test]
fn minimal_members_form_an_antichain_representing_the_belief_set() {
    let gen = InstanceGenerator::new(43, 3);
    for trial in 0..100 {
        let (p, lambda) = closure_instance(&gen, trial);
        let members = minimal_members(&p, &lambda).unwrap();
        for (i, a) in members.iter().enumerate() {
            for b in members.iter().skip(i + 1) {
                assert!(!a.is_subset_of(b) && !b.is_subset_of(a), "not an antichain");
            }
        }
        for mask in 0u32..(1 << p.world_count()) {
            let s = ModelSet::from_mask(p.n_vars(), mask);
            let via_antichain = members.iter().any(|m| m.is_subset_of(&s));
            assert_eq!(via_antichain, believes(&p, &lambda, &s).unwrap());
        }
        // Closure coincides with the antichain being a single generator.
        let report = closure_report(&p, &lambda).unwrap();
        assert_eq!(report.closed, members.len() == 1);
        if report.closed {
            assert_eq!(report.generator.as_ref(), members.first());
        }
    }
}

#[test]
fn success_inclusion_and_extensionality_hold_on_random_revisions() {
    let gen = InstanceGenerator::new(47, 3);
    for trial in 0..60 {
        let p = gen.distribution(trial);
        // Reuse the deterministic threshold recipe, then revise by a
        // singleton and one larger event.
        let (_, lambda) = closure_instance(&gen, trial);
        let events = [
            ModelSet::from_worlds(3, &[trial as usize % 8]).unwrap(),
            ModelSet::from_worlds(3, &[0, (trial as usize % 7) + 1]).unwrap(),
        ];
        for psi in events {
            let report = agm_audit(&p, &lambda, &psi).unwrap();
            assert!(report.k2.holds, "success failed: {}", report.k2.note);
            assert!(report.k3.holds, "inclusion failed: {}", report.k3.note);
            assert!(report.k6.holds);

            // Inclusion again through the consequence route. The probability
            // comparison is used directly because a threshold-1 revision may
            // leave zero-mass worlds behind.
            let members = minimal_members(&p, &lambda).unwrap();
            let outcome = lockean_core::revise(&p, &lambda, &psi).unwrap();
            for mask in 0u32..(1 << p.world_count()) {
                let s = ModelSet::from_mask(p.n_vars(), mask);
                if outcome.revised.prob(&s).unwrap() >= *lambda.value() {
                    assert!(consequence_membership(&members, &psi, &s).unwrap());
                }
            }
        }
    }
}

#[test]
fn relative_entropy_is_nonnegative_and_zero_only_at_equality() {
    let gen = InstanceGenerator::new(53, 3);
    for trial in 0..200 {
        let p = gen.distribution(trial);
        let q = gen.distribution(trial.wrapping_add(10_000));
        let kl = kl_divergence(&q, &p).unwrap();
        assert!(kl >= -1e-12, "Gibbs violated: {kl}");
        if q == p {
            assert_eq!(kl, 0.0);
        } else {
            assert!(kl > 0.0);
        }
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
    }
}

#[test]
fn kl_check_at_the_constraint_boundary_reduces_to_gibbs() {
    // With lambda equal to the current event probability the kernel is the
    // identity and every feasible sample must sit at non-negative divergence.
    let p = Distribution::new(
        vec![ratio(1, 10), ratio(3, 5), ratio(1, 5), ratio(1, 10)],
        true,
    )
    .unwrap();
    let psi = ModelSet::from_worlds(2, &[1, 3]).unwrap(); // probability 7/10
    let lambda = Threshold::new(ratio(7, 10)).unwrap();
    let verdict = kl_minimality_check(&p, &psi, &lambda, 500, 99).unwrap();
    assert!(verdict.passed(), "failure: {}", verdict.failures[0]);
}

#[test]
fn suite_results_are_reproducible() {
    let gen = InstanceGenerator::new(61, 3);
    let a = theorem_suite(Theorem::T1, &gen, 50).unwrap();
    let b = theorem_suite(Theorem::T1, &gen, 50).unwrap();
    assert_eq!(a, b);
    assert!(brute_closure(&gen.distribution(0), &Threshold::new(ratio(1, 1)).unwrap()).unwrap());
}
