//! Minimal-change revision of belief sets, the sufficient/necessary closure
//! bound for revised sets, and the AGM postulate auditor.
//!
//! Revising by an event `psi` replaces the distribution with its revision
//! kernel output: nothing moves when `psi` is already believed, otherwise
//! mass shifts until `psi`'s probability is exactly the threshold. The
//! resulting belief set is read off the revised distribution at the same
//! threshold. With `tau` the minimum prior mass on `psi`, the revised set is
//! deductively closed whenever `P(psi) < tau * lambda / (1 - lambda)`, and
//! when `psi` was not previously believed that bound is also necessary.

use crate::error::{Error, Result};
use crate::lockean::{closure_report, event_probabilities, ClosureReport};
use crate::logic::{ModelSet, EXHAUSTIVE_GATE};
use crate::prob::{format_rational, Distribution, Rational, Threshold};

/// Result of revising a belief set by an event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionOutcome {
    /// The event was already believed; the revision is the identity.
    pub prior_believed: bool,
    /// The revised distribution.
    pub revised: Distribution,
    /// Minimum prior mass on the revision event.
    pub tau: Rational,
    /// `tau * lambda / (1 - lambda)`; absent at threshold 1.
    pub bound: Option<Rational>,
    /// The sufficient closure bound fired: the revised belief set is the
    /// superset family of the revision event.
    pub predicted_closed: bool,
    /// Closure verdict for the revised belief set, with generator or witness.
    pub closure: ClosureReport,
}

impl RevisionOutcome {
    /// Generator of the revised belief set, when it is closed.
    pub fn generator(&self) -> Option<&ModelSet> {
        self.closure.generator.as_ref()
    }
}

/// Evaluation of the closure bound for a prospective revision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosurePrediction {
    /// `P(psi) < tau * lambda / (1 - lambda)`: guarantees a closed revised
    /// set generated by the event.
    pub sufficient: bool,
    /// The converse direction on this instance: vacuously true when the
    /// event is already believed, otherwise `closed implies sufficient`.
    pub necessary_given_not_believed: bool,
    pub tau: Rational,
    pub bound: Rational,
}

/// One postulate verdict. A failed postulate always carries witness events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateEntry {
    pub holds: bool,
    pub witness: Vec<ModelSet>,
    pub note: String,
}

impl PostulateEntry {
    fn holding(note: impl Into<String>) -> PostulateEntry {
        PostulateEntry {
            holds: true,
            witness: Vec::new(),
            note: note.into(),
        }
    }

    fn failing(witness: Vec<ModelSet>, note: impl Into<String>) -> PostulateEntry {
        PostulateEntry {
            holds: false,
            witness,
            note: note.into(),
        }
    }
}

/// Verdicts for the six basic revision postulates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgmReport {
    pub k1: PostulateEntry,
    pub k2: PostulateEntry,
    pub k3: PostulateEntry,
    pub k4: PostulateEntry,
    pub k5: PostulateEntry,
    pub k6: PostulateEntry,
}

impl AgmReport {
    pub fn entries(&self) -> [(&'static str, &PostulateEntry); 6] {
        [
            ("K1", &self.k1),
            ("K2", &self.k2),
            ("K3", &self.k3),
            ("K4", &self.k4),
            ("K5", &self.k5),
            ("K6", &self.k6),
        ]
    }
}

fn tau_on(p: &Distribution, psi: &ModelSet) -> Rational {
    psi.iter()
        .map(|w| p.mass(w))
        .min()
        .expect("non-empty event")
        .clone()
}

/// Revises the belief set held at `lambda` under `p` by the event `psi`.
pub fn revise(p: &Distribution, lambda: &Threshold, psi: &ModelSet) -> Result<RevisionOutcome> {
    if psi.is_empty() {
        return Err(Error::InconsistentRevision);
    }
    let p_psi = p.prob(psi)?;
    let prior_believed = p_psi >= *lambda.value();
    let revised = p.revised(psi, lambda)?;
    let tau = tau_on(p, psi);
    let bound = if lambda.is_one() {
        None
    } else {
        Some(&tau * lambda.value() / lambda.complement())
    };
    // The bound is a closure guarantee for the revised set; it is only
    // reported as a prediction when the revision actually moved the
    // distribution. (At threshold 1 an unbelieved event conditions the
    // distribution onto itself, which always yields its superset family.)
    let predicted_closed = !prior_believed
        && match &bound {
            Some(b) => p_psi < *b,
            None => true,
        };
    let closure = closure_report(&revised, lambda)?;
    Ok(RevisionOutcome {
        prior_believed,
        revised,
        tau,
        bound,
        predicted_closed,
        closure,
    })
}

/// Evaluates the closure bound without committing to the revision.
pub fn predict_closure(
    p: &Distribution,
    lambda: &Threshold,
    psi: &ModelSet,
) -> Result<ClosurePrediction> {
    if lambda.is_one() {
        return Err(Error::ThresholdOne);
    }
    if psi.is_empty() {
        return Err(Error::InconsistentRevision);
    }
    let p_psi = p.prob(psi)?;
    let tau = tau_on(p, psi);
    let bound = &tau * lambda.value() / lambda.complement();
    let sufficient = p_psi < bound;
    let revised = p.revised(psi, lambda)?;
    let closed = closure_report(&revised, lambda)?.closed;
    let necessary_given_not_believed = p_psi >= *lambda.value() || !closed || sufficient;
    Ok(ClosurePrediction {
        sufficient,
        necessary_given_not_believed,
        tau,
        bound,
    })
}

/// Classical consequence over finitely many premises: true iff the
/// intersection of the believed events, further intersected with `psi`, is
/// included in `s`.
pub fn consequence_membership(
    belief_minimal_members: &[ModelSet],
    psi: &ModelSet,
    s: &ModelSet,
) -> Result<bool> {
    let n_vars = psi.n_vars();
    if s.n_vars() != n_vars
        || belief_minimal_members.iter().any(|m| m.n_vars() != n_vars)
    {
        return Err(Error::DimensionMismatch {
            expected: psi.world_count(),
            found: s.world_count(),
        });
    }
    let mut premises = ModelSet::full(n_vars);
    for m in belief_minimal_members {
        premises = premises.intersection(m);
    }
    Ok(premises.intersection(psi).is_subset_of(s))
}

/// Audits the six basic revision postulates on one instance by exhaustive
/// event scan (gated to small languages).
pub fn agm_audit(p: &Distribution, lambda: &Threshold, psi: &ModelSet) -> Result<AgmReport> {
    if p.n_vars() > EXHAUSTIVE_GATE {
        return Err(Error::SizeGate {
            n_vars: p.n_vars(),
            max: EXHAUSTIVE_GATE,
        });
    }
    let outcome = revise(p, lambda, psi)?;
    let lam = lambda.value();
    let prior_table = event_probabilities(p)?;
    let post_table = event_probabilities(&outcome.revised)?;
    let full_mask = (1usize << p.world_count()) - 1;
    let psi_mask = psi.mask().expect("gated world count") as usize;
    let prior_members: Vec<usize> =
        (0..=full_mask).filter(|&m| prior_table[m] >= *lam).collect();
    let post_members: Vec<usize> =
        (0..=full_mask).filter(|&m| post_table[m] >= *lam).collect();
    let event = |mask: usize| ModelSet::from_mask(p.n_vars(), mask as u32);

    // K1 (closure): delegate to the revised set's closure verdict.
    let k1 = if outcome.closure.closed {
        PostulateEntry::holding("revised belief set is deductively closed")
    } else {
        let (a, b) = outcome.closure.witness.clone().expect("witness when open");
        PostulateEntry::failing(
            vec![a, b],
            "two revised beliefs whose conjunction is not believed",
        )
    };

    // K2 (success): the revision event is believed afterwards.
    let k2 = if post_table[psi_mask] >= *lam {
        PostulateEntry::holding("revision event believed after revision")
    } else {
        PostulateEntry::failing(vec![event(psi_mask)], "revision event not believed")
    };

    // K3 (inclusion): every revised belief follows from the prior beliefs
    // plus the revision event. Checked both through the implication form
    // (the material conditional is a prior belief) and through consequence
    // over the prior core.
    let prior_core = prior_members.iter().fold(full_mask, |acc, &m| acc & m);
    let mut k3 = PostulateEntry::holding(
        "every revised belief is a consequence of the prior beliefs and the event",
    );
    for &s in &post_members {
        let conditional = (full_mask & !psi_mask) | s;
        let implication_held = prior_table[conditional] >= *lam;
        let consequence_held = prior_core & psi_mask & !s == 0;
        if !implication_held || !consequence_held {
            k3 = PostulateEntry::failing(
                vec![event(s)],
                "revised belief not derivable from prior beliefs plus the event",
            );
            break;
        }
    }

    // K4 (preservation): when the event is consistent with the prior
    // beliefs, all of them survive. Consistency reads as: the intersection
    // of all prior beliefs meets the event.
    let k4 = if prior_core & psi_mask == 0 {
        PostulateEntry::holding("vacuous: prior beliefs are inconsistent with the event")
    } else {
        match prior_members.iter().find(|&&s| post_table[s] < *lam) {
            None => PostulateEntry::holding("all prior beliefs survive the revision"),
            Some(&s) => {
                let note = format!(
                    "prior belief drops to probability {} < {}",
                    format_rational(&post_table[s]),
                    format_rational(lam),
                );
                PostulateEntry::failing(vec![event(s)], note)
            }
        }
    };

    // K5 (consistency): the revised beliefs share a common world.
    let post_core = post_members.iter().fold(full_mask, |acc, &m| acc & m);
    let k5 = if post_core != 0 {
        PostulateEntry::holding("revised beliefs share a common world")
    } else {
        let (a, b) = outcome
            .closure
            .witness
            .clone()
            .expect("inconsistent set is not closed");
        PostulateEntry::failing(vec![a, b], "no world satisfies every revised belief")
    };

    // K6 (extensionality): revision consumes model sets, so logically
    // equivalent inputs are literally the same input.
    let k6 = PostulateEntry::holding("revision is defined on model sets, not on syntax");

    Ok(AgmReport { k1, k2, k3, k4, k5, k6 })
}
