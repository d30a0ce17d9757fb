//! Exact-rational probability distributions over worlds and the probability
//! transformations built on them: conditioning, Jeffrey updates, the
//! threshold-driven revision kernel, L1 distance, and relative entropy.
//!
//! Everything except relative entropy is computed in arbitrary-precision
//! rational arithmetic with no rounding; the threshold results all hinge on
//! exact equalities, so a float carrier would be unsound.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::logic::{ModelSet, MAX_VARS};

/// Exact rational number: arbitrary-precision, always in reduced form.
pub type Rational = num::BigRational;

/// Convenience constructor from machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"a/b"`, a decimal string like `"0.35"`, or a plain integer, into
/// an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_string());
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let numer: BigInt = n.trim().parse().map_err(|_| bad())?;
        let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        let whole: BigInt = int_part.parse().map_err(|_| bad())?;
        let frac: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let numer = whole.magnitude().clone() * scale.magnitude() + frac.magnitude();
        let mut r = Rational::new(BigInt::from(numer), scale);
        if whole.is_negative() || int_part.starts_with('-') {
            r = -r;
        }
        return Ok(r);
    }
    let whole: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(whole))
}

/// Renders a rational always as reduced `a/b`, e.g. `1` as `"1/1"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A belief threshold, constrained to `(1/2, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Threshold(Rational);

impl Threshold {
    pub fn new(lambda: Rational) -> Result<Threshold> {
        if lambda <= ratio(1, 2) || lambda > Rational::one() {
            return Err(Error::InvalidThreshold(format_rational(&lambda)));
        }
        Ok(Threshold(lambda))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `1 - lambda`.
    pub fn complement(&self) -> Rational {
        Rational::one() - &self.0
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// An exact probability distribution on the worlds of an `n_vars` language.
///
/// Masses are non-negative and sum to exactly 1. The `positive` flag records
/// whether every world carries strictly positive mass; conditioning produces
/// non-positive distributions, which the threshold-analysis entry points
/// reject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    n_vars: usize,
    mass: Vec<Rational>,
    positive: bool,
}

impl Distribution {
    /// Validates and wraps a mass vector whose length is a power of two.
    pub fn new(mass: Vec<Rational>, require_positive: bool) -> Result<Distribution> {
        let len = mass.len();
        if !len.is_power_of_two() || len < 2 || len > (1 << MAX_VARS) {
            return Err(Error::BadMassCount(len));
        }
        let n_vars = len.trailing_zeros() as usize;
        let mut sum = Rational::zero();
        let mut positive = true;
        for (w, m) in mass.iter().enumerate() {
            if m.is_negative() {
                return Err(Error::NegativeMass(format_rational(m), w));
            }
            if m.is_zero() {
                if require_positive {
                    return Err(Error::NotPositive(w));
                }
                positive = false;
            }
            sum += m;
        }
        if !sum.is_one() {
            return Err(Error::MassSumNotOne(format_rational(&sum)));
        }
        Ok(Distribution { n_vars, mass, positive })
    }

    /// Builds a positive distribution from integer weights, normalized by
    /// their exact sum.
    pub fn from_weights(weights: &[u64]) -> Result<Distribution> {
        let total: u64 = weights.iter().sum();
        let mass = weights
            .iter()
            .map(|&w| Rational::new(BigInt::from(w), BigInt::from(total)))
            .collect();
        Distribution::new(mass, true)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn world_count(&self) -> usize {
        1 << self.n_vars
    }

    pub fn mass(&self, world: usize) -> &Rational {
        &self.mass[world]
    }

    pub fn masses(&self) -> &[Rational] {
        &self.mass
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn min_mass(&self) -> &Rational {
        self.mass.iter().min().expect("non-empty")
    }

    pub fn max_mass(&self) -> &Rational {
        self.mass.iter().max().expect("non-empty")
    }

    fn check_dims(&self, s: &ModelSet) -> Result<()> {
        if s.n_vars() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.world_count(),
                found: s.world_count(),
            });
        }
        Ok(())
    }

    /// Event probability: the exact sum of the masses of the worlds in `s`.
    pub fn prob(&self, s: &ModelSet) -> Result<Rational> {
        self.check_dims(s)?;
        Ok(s.iter().map(|w| &self.mass[w]).sum())
    }

    /// Conditioning `P(. | psi)`: renormalizes on `psi`, zero elsewhere.
    pub fn conditioned_on(&self, psi: &ModelSet) -> Result<Distribution> {
        let p_psi = self.prob(psi)?;
        if p_psi.is_zero() {
            return Err(Error::NullConditioning);
        }
        if psi.is_full() {
            return Ok(self.clone());
        }
        let mass = (0..self.world_count())
            .map(|w| {
                if psi.contains(w) {
                    &self.mass[w] / &p_psi
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Distribution::new(mass, false)
    }

    /// Jeffrey update: the pointwise mixture
    /// `lambda * P(.|psi) + (1 - lambda) * P(.|!psi)`,
    /// which moves the probability of `psi` to exactly `lambda`.
    pub fn jeffrey_update(&self, psi: &ModelSet, lambda: &Threshold) -> Result<Distribution> {
        let p_psi = self.prob(psi)?;
        if p_psi.is_zero() || p_psi.is_one() {
            return Err(Error::JeffreyDomain);
        }
        let on = self.conditioned_on(psi)?;
        let off = self.conditioned_on(&psi.complement())?;
        let l = lambda.value();
        let co = lambda.complement();
        let mass = (0..self.world_count())
            .map(|w| l * &on.mass[w] + &co * &off.mass[w])
            .collect();
        Distribution::new(mass, false)
    }

    /// The revision kernel: scales mass on `psi` by `max(1, lambda/P(psi))`
    /// and off `psi` by `min(1, (1-lambda)/P(!psi))`. Leaves the distribution
    /// unchanged when `psi` is already believed at `lambda`; otherwise raises
    /// the probability of `psi` to exactly `lambda`.
    pub fn revised(&self, psi: &ModelSet, lambda: &Threshold) -> Result<Distribution> {
        if !self.positive {
            return Err(Error::PositiveRequired);
        }
        if psi.is_empty() {
            return Err(Error::InconsistentRevision);
        }
        let p_psi = self.prob(psi)?;
        let one = Rational::one();
        let factor_on = if *lambda.value() > p_psi {
            lambda.value() / &p_psi
        } else {
            one.clone()
        };
        let factor_off = if psi.is_full() {
            one.clone() // no world off psi; value irrelevant
        } else {
            let p_not = &one - &p_psi;
            let scaled = lambda.complement() / p_not;
            if scaled < one { scaled } else { one }
        };
        let mass = (0..self.world_count())
            .map(|w| {
                let f = if psi.contains(w) { &factor_on } else { &factor_off };
                &self.mass[w] * f
            })
            .collect();
        Distribution::new(mass, false)
    }
}

/// L1 distance: the exact sum of per-world absolute mass differences.
pub fn l1_distance(p: &Distribution, q: &Distribution) -> Result<Rational> {
    if p.n_vars != q.n_vars {
        return Err(Error::DimensionMismatch {
            expected: p.world_count(),
            found: q.world_count(),
        });
    }
    Ok(p.mass
        .iter()
        .zip(&q.mass)
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// Relative entropy `KL(q, p) = sum q(w) ln(q(w)/p(w))` in nats, with the
/// `0 ln 0 = 0` convention. The only floating-point computation in the crate:
/// logarithms of rationals are irrational.
pub fn kl_divergence(q: &Distribution, p: &Distribution) -> Result<f64> {
    if p.n_vars != q.n_vars {
        return Err(Error::DimensionMismatch {
            expected: p.world_count(),
            found: q.world_count(),
        });
    }
    let mut total = 0.0f64;
    for w in 0..p.world_count() {
        let qw = &q.mass[w];
        if qw.is_zero() {
            continue;
        }
        if p.mass[w].is_zero() {
            return Err(Error::KlSupport(w));
        }
        let ratio = qw / &p.mass[w];
        total += qw.to_f64().expect("mass fits in f64") * ratio.to_f64().expect("ratio fits in f64").ln();
    }
    Ok(total)
}
