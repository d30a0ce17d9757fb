//! Propositional language: formulas, valuations, and model-set semantics.
//!
//! A language over `n` variables has `2^n` worlds (valuations). World `i` is
//! the valuation whose bit pattern is the binary expansion of `i` with the
//! most significant bit assigned to the first variable, so for `n = 2` world
//! `3` (binary `11`) makes both `x1` and `x2` true. This indexing is shared by
//! every module and by the problem-file format.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of propositional variables (65,536 worlds).
pub const MAX_VARS: usize = 16;

/// Variable count up to which exhaustive scans over all `2^(2^n)` events are
/// permitted.
pub const EXHAUSTIVE_GATE: usize = 4;

/// A classical propositional formula.
///
/// `Var(j)` is the variable at 0-based position `j`, written `x{j+1}` in the
/// concrete syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bot,
    Var(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Largest variable position used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::Top | Formula::Bot => None,
            Formula::Var(j) => Some(*j),
            Formula::Not(f) => f.max_var(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => match (a.max_var(), b.max_var()) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            },
        }
    }

    /// Truth value under the valuation encoded by `world` (see module docs).
    pub fn eval(&self, world: usize, n_vars: usize) -> bool {
        match self {
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Var(j) => (world >> (n_vars - 1 - j)) & 1 == 1,
            Formula::Not(f) => !f.eval(world, n_vars),
            Formula::And(a, b) => a.eval(world, n_vars) && b.eval(world, n_vars),
            Formula::Or(a, b) => a.eval(world, n_vars) || b.eval(world, n_vars),
            Formula::Implies(a, b) => !a.eval(world, n_vars) || b.eval(world, n_vars),
            Formula::Iff(a, b) => a.eval(world, n_vars) == b.eval(world, n_vars),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Top | Formula::Bot | Formula::Var(_) => 6,
            Formula::Not(_) => 5,
            Formula::And(..) => 4,
            Formula::Or(..) => 3,
            Formula::Implies(..) => 2,
            Formula::Iff(..) => 1,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8, left_of_arrow: bool) -> fmt::Result {
        let me = self.precedence();
        let needs_parens = me < parent || (me == parent && left_of_arrow);
        if needs_parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Top => write!(f, "T")?,
            Formula::Bot => write!(f, "F")?,
            Formula::Var(j) => write!(f, "x{}", j + 1)?,
            Formula::Not(g) => {
                write!(f, "!")?;
                g.fmt_prec(f, me, false)?;
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let op = if matches!(self, Formula::And(..)) { "&" } else { "|" };
                a.fmt_prec(f, me, false)?;
                write!(f, " {op} ")?;
                b.fmt_prec(f, me, false)?;
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                // Right-associative: the left child needs parentheses at equal
                // precedence, the right child does not.
                let op = if matches!(self, Formula::Implies(..)) { "->" } else { "<->" };
                a.fmt_prec(f, me, true)?;
                write!(f, " {op} ")?;
                b.fmt_prec(f, me, false)?;
            }
        }
        if needs_parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0, false)
    }
}

/// A set of worlds: the semantics `[phi]` of a formula, stored as a bitset
/// over all `2^n_vars` world indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    n_vars: usize,
    bits: Vec<u64>,
}

fn check_n_vars(n_vars: usize) -> Result<()> {
    if n_vars == 0 || n_vars > MAX_VARS {
        return Err(Error::TooManyVariables(n_vars, MAX_VARS));
    }
    Ok(())
}

impl ModelSet {
    fn blocks(world_count: usize) -> usize {
        world_count.div_ceil(64)
    }

    pub fn empty(n_vars: usize) -> ModelSet {
        let worlds = 1usize << n_vars;
        ModelSet {
            n_vars,
            bits: vec![0; Self::blocks(worlds)],
        }
    }

    pub fn full(n_vars: usize) -> ModelSet {
        let worlds = 1usize << n_vars;
        let mut s = ModelSet::empty(n_vars);
        for w in 0..worlds {
            s.set(w);
        }
        s
    }

    /// Builds a set from explicit world indices.
    pub fn from_worlds(n_vars: usize, worlds: &[usize]) -> Result<ModelSet> {
        check_n_vars(n_vars)?;
        let count = 1usize << n_vars;
        let mut s = ModelSet::empty(n_vars);
        for &w in worlds {
            if w >= count {
                return Err(Error::WorldOutOfRange(w, count));
            }
            s.set(w);
        }
        Ok(s)
    }

    /// Builds a set from a bitmask over world indices (low bit = world 0).
    /// Only usable while the world count fits in the mask width.
    pub fn from_mask(n_vars: usize, mask: u32) -> ModelSet {
        debug_assert!(1usize << n_vars <= 32);
        let mut s = ModelSet::empty(n_vars);
        for w in 0..(1usize << n_vars) {
            if mask >> w & 1 == 1 {
                s.set(w);
            }
        }
        s
    }

    /// The mask form of this set, when the world count permits one.
    pub fn mask(&self) -> Option<u32> {
        if self.world_count() > 32 {
            return None;
        }
        let mut m = 0u32;
        for w in self.iter() {
            m |= 1 << w;
        }
        Some(m)
    }

    fn set(&mut self, world: usize) {
        self.bits[world / 64] |= 1 << (world % 64);
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn world_count(&self) -> usize {
        1usize << self.n_vars
    }

    pub fn contains(&self, world: usize) -> bool {
        world < self.world_count() && self.bits[world / 64] >> (world % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.world_count()
    }

    /// World indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.world_count()).filter(move |&w| self.contains(w))
    }

    pub fn worlds(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn assert_same_dims(&self, other: &ModelSet) {
        assert_eq!(
            self.n_vars, other.n_vars,
            "model sets over different languages"
        );
    }

    pub fn union(&self, other: &ModelSet) -> ModelSet {
        self.assert_same_dims(other);
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a | b)
            .collect();
        ModelSet { n_vars: self.n_vars, bits }
    }

    pub fn intersection(&self, other: &ModelSet) -> ModelSet {
        self.assert_same_dims(other);
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        ModelSet { n_vars: self.n_vars, bits }
    }

    pub fn complement(&self) -> ModelSet {
        let worlds = self.world_count();
        let mut bits: Vec<u64> = self.bits.iter().map(|b| !b).collect();
        // Clear the padding bits beyond the last world.
        let used = worlds % 64;
        if used != 0 {
            let last = bits.len() - 1;
            bits[last] &= (1u64 << used) - 1;
        }
        ModelSet { n_vars: self.n_vars, bits }
    }

    pub fn difference(&self, other: &ModelSet) -> ModelSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset_of(&self, other: &ModelSet) -> bool {
        self.assert_same_dims(other);
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModelSet(n={}, {:?})", self.n_vars, self.worlds())
    }
}

/// Computes the exact set of valuations satisfying `f` under classical
/// semantics.
pub fn models_of(f: &Formula, n_vars: usize) -> Result<ModelSet> {
    check_n_vars(n_vars)?;
    if let Some(j) = f.max_var() {
        if j >= n_vars {
            return Err(Error::UnknownVariable {
                pos: 0,
                name: format!("x{}", j + 1),
                n_vars,
            });
        }
    }
    Ok(models_unchecked(f, n_vars))
}

fn var_models(j: usize, n_vars: usize) -> ModelSet {
    let mut s = ModelSet::empty(n_vars);
    for w in 0..(1usize << n_vars) {
        if (w >> (n_vars - 1 - j)) & 1 == 1 {
            s.set(w);
        }
    }
    s
}

fn models_unchecked(f: &Formula, n_vars: usize) -> ModelSet {
    match f {
        Formula::Top => ModelSet::full(n_vars),
        Formula::Bot => ModelSet::empty(n_vars),
        Formula::Var(j) => var_models(*j, n_vars),
        Formula::Not(g) => models_unchecked(g, n_vars).complement(),
        Formula::And(a, b) => {
            models_unchecked(a, n_vars).intersection(&models_unchecked(b, n_vars))
        }
        Formula::Or(a, b) => models_unchecked(a, n_vars).union(&models_unchecked(b, n_vars)),
        Formula::Implies(a, b) => models_unchecked(a, n_vars)
            .complement()
            .union(&models_unchecked(b, n_vars)),
        Formula::Iff(a, b) => {
            let ma = models_unchecked(a, n_vars);
            let mb = models_unchecked(b, n_vars);
            ma.intersection(&mb).union(&ma.complement().intersection(&mb.complement()))
        }
    }
}

/// True iff every model of `a` is a model of `b`.
pub fn entails(a: &ModelSet, b: &ModelSet) -> Result<bool> {
    if a.n_vars() != b.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: a.world_count(),
            found: b.world_count(),
        });
    }
    Ok(a.is_subset_of(b))
}

/// True iff `a` and `b` have exactly the same models.
pub fn equivalent(a: &ModelSet, b: &ModelSet) -> Result<bool> {
    if a.n_vars() != b.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: a.world_count(),
            found: b.world_count(),
        });
    }
    Ok(a == b)
}

fn minterm(world: usize, n_vars: usize) -> Formula {
    let mut lits = (0..n_vars).map(|j| {
        let var = Formula::Var(j);
        if (world >> (n_vars - 1 - j)) & 1 == 1 {
            var
        } else {
            Formula::not(var)
        }
    });
    let first = lits.next().expect("at least one variable");
    lits.fold(first, Formula::and)
}

/// Reconstructs a canonical formula with exactly the given models: the full
/// disjunctive normal form over minterms, in ascending world order. The empty
/// set maps to `F`.
pub fn formula_of_modelset(s: &ModelSet) -> Formula {
    let mut terms = s.iter().map(|w| minterm(w, s.n_vars()));
    match terms.next() {
        None => Formula::Bot,
        Some(first) => terms.fold(first, Formula::or),
    }
}
