//! Randomised, exact verification of the arithmetic axioms of a scaled
//! structure.
//!
//! Samples are drawn as values of the t-structure and embedded into the
//! s-frame, so every check is an exact big-rational identity.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::number::{exact_real, show_exact, Exact, NumberKind};
use super::structure::{one, ScaledStructure};

/// Numerators are drawn from `[-SAMPLE_BOUND, SAMPLE_BOUND]`, denominators
/// from `[1, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Closure,
    AddCommutative,
    AddAssociative,
    AddIdentity,
    AddInverse,
    MulCommutative,
    MulAssociative,
    MulIdentity,
    MulInverse,
    Distributive,
    ConjugationInvolution,
    ConjugationFixesIdentity,
    ConjugationAdditive,
    ConjugationMultiplicative,
    OrderTrichotomy,
    OrderTransitive,
    OrderAddCompatible,
    OrderMulCompatible,
    /// The value map from the t-structure commutes with every operation.
    ValueMapHomomorphism,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Closure => "closure",
            Axiom::AddCommutative => "add_commutative",
            Axiom::AddAssociative => "add_associative",
            Axiom::AddIdentity => "add_identity",
            Axiom::AddInverse => "add_inverse",
            Axiom::MulCommutative => "mul_commutative",
            Axiom::MulAssociative => "mul_associative",
            Axiom::MulIdentity => "mul_identity",
            Axiom::MulInverse => "mul_inverse",
            Axiom::Distributive => "distributive",
            Axiom::ConjugationInvolution => "conjugation_involution",
            Axiom::ConjugationFixesIdentity => "conjugation_fixes_identity",
            Axiom::ConjugationAdditive => "conjugation_additive",
            Axiom::ConjugationMultiplicative => "conjugation_multiplicative",
            Axiom::OrderTrichotomy => "order_trichotomy",
            Axiom::OrderTransitive => "order_transitive",
            Axiom::OrderAddCompatible => "order_add_compatible",
            Axiom::OrderMulCompatible => "order_mul_compatible",
            Axiom::ValueMapHomomorphism => "value_map_homomorphism",
        }
    }

    /// The axioms that apply to a structure of this kind.
    pub fn applicable(structure: &ScaledStructure) -> Vec<Axiom> {
        use Axiom::*;
        let kind = structure.kind();
        let mut out = vec![
            Closure,
            AddCommutative,
            AddAssociative,
            AddIdentity,
            MulCommutative,
            MulAssociative,
            MulIdentity,
            Distributive,
        ];
        if kind != NumberKind::Natural {
            out.extend([AddInverse, MulInverse]);
        }
        if kind == NumberKind::Complex {
            out.extend([
                ConjugationInvolution,
                ConjugationFixesIdentity,
                ConjugationAdditive,
                ConjugationMultiplicative,
            ]);
        }
        if kind.is_ordered() {
            out.extend([OrderTrichotomy, OrderTransitive, OrderAddCompatible, OrderMulCompatible]);
        }
        out.push(ValueMapHomomorphism);
        out.sort();
        out
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub checked: usize,
    /// The first failing instance, if any.
    pub counterexample: Option<String>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub kind: NumberKind,
    pub t: String,
    pub s: String,
    pub samples: usize,
    pub seed: u64,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    pub fn outcome(&self, axiom: Axiom) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} structure t={} s={} ({} samples, seed {})", self.kind, self.t, self.s, self.samples, self.seed)?;
        for o in &self.outcomes {
            match &o.counterexample {
                None => writeln!(f, "  PASS {:<28} ({} checks)", o.axiom.name(), o.checked)?,
                Some(c) => writeln!(f, "  FAIL {:<28} {}", o.axiom.name(), c)?,
            }
        }
        Ok(())
    }
}

/// Draws values of the t-structure for axiom sampling.
#[derive(Debug)]
pub struct ValueSampler {
    rng: ChaCha8Rng,
    kind: NumberKind,
}

impl ValueSampler {
    pub fn new(kind: NumberKind, seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), kind }
    }

    pub fn rational(&mut self) -> BigRational {
        let n = self.rng.random_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let d = self.rng.random_range(1..=SAMPLE_BOUND);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let q = self.rational();
            if !q.is_zero() {
                return q;
            }
        }
    }

    /// A value in the t-structure (the unscaled reading of a sample).
    pub fn value(&mut self) -> Exact {
        match self.kind {
            NumberKind::Natural => {
                let m = self.rng.random_range(0..=SAMPLE_BOUND);
                exact_real(BigRational::from_integer(BigInt::from(m)))
            }
            NumberKind::Rational | NumberKind::Real => exact_real(self.rational()),
            NumberKind::Complex => Complex::new(self.rational(), self.rational()),
        }
    }
}

struct Tally {
    axiom: Axiom,
    checked: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }
}

/// Exercises every applicable axiom on `samples` random triples drawn with
/// `seed`. Failures are reported, never raised.
pub fn axiom_suite(structure: &ScaledStructure, samples: usize, seed: u64) -> AxiomReport {
    let samples = samples.max(1);
    let mut sampler = ValueSampler::new(structure.kind(), seed);
    let mut tallies: Vec<Tally> = Axiom::applicable(structure)
        .into_iter()
        .map(|axiom| Tally { axiom, checked: 0, counterexample: None })
        .collect();

    for _ in 0..samples {
        let raw = [sampler.value(), sampler.value(), sampler.value()];
        let [a, b, c] = raw.clone().map(|v| structure.embed(&v));
        for tally in &mut tallies {
            check_one(structure, tally, &raw, &a, &b, &c);
        }
    }

    AxiomReport {
        kind: structure.kind(),
        t: structure.factor_t().to_string(),
        s: structure.level_s().to_string(),
        samples,
        seed,
        outcomes: tallies
            .into_iter()
            .map(|t| AxiomOutcome { axiom: t.axiom, checked: t.checked, counterexample: t.counterexample })
            .collect(),
    }
}

fn show3(a: &Exact, b: &Exact, c: &Exact) -> String {
    format!("a={} b={} c={}", show_exact(a), show_exact(b), show_exact(c))
}

fn check_one(st: &ScaledStructure, tally: &mut Tally, raw: &[Exact; 3], a: &Exact, b: &Exact, c: &Exact) {
    let zero = st.zero();
    let e = st.identity();
    let ctx = || show3(a, b, c);
    match tally.axiom {
        Axiom::Closure => {
            let ok = st.contains(&st.add(a, b)) && st.contains(&st.mul(a, b)) && st.contains(&e);
            tally.check(ok, ctx);
        }
        Axiom::AddCommutative => tally.check(st.add(a, b) == st.add(b, a), ctx),
        Axiom::AddAssociative => {
            tally.check(st.add(&st.add(a, b), c) == st.add(a, &st.add(b, c)), ctx);
        }
        Axiom::AddIdentity => tally.check(st.add(a, &zero) == *a, ctx),
        Axiom::AddInverse => {
            let ok = st.neg(a).map(|n| st.add(a, &n) == zero).unwrap_or(false);
            tally.check(ok, ctx);
        }
        Axiom::MulCommutative => tally.check(st.mul(a, b) == st.mul(b, a), ctx),
        Axiom::MulAssociative => {
            tally.check(st.mul(&st.mul(a, b), c) == st.mul(a, &st.mul(b, c)), ctx);
        }
        Axiom::MulIdentity => tally.check(st.mul(a, &e) == *a && st.mul(&e, b) == *b, ctx),
        Axiom::MulInverse => {
            if !a.is_zero() {
                let ok = st.inv(a).map(|i| st.mul(a, &i) == e).unwrap_or(false);
                tally.check(ok, ctx);
            }
        }
        Axiom::Distributive => {
            tally.check(st.mul(a, &st.add(b, c)) == st.add(&st.mul(a, b), &st.mul(a, c)), ctx);
        }
        Axiom::ConjugationInvolution => tally.check(st.conj(&st.conj(a)) == *a, ctx),
        Axiom::ConjugationFixesIdentity => tally.check(st.conj(&e) == e, ctx),
        Axiom::ConjugationAdditive => {
            tally.check(st.conj(&st.add(a, b)) == st.add(&st.conj(a), &st.conj(b)), ctx);
        }
        Axiom::ConjugationMultiplicative => {
            tally.check(st.conj(&st.mul(a, b)) == st.mul(&st.conj(a), &st.conj(b)), ctx);
        }
        Axiom::OrderTrichotomy => {
            let ok = match (st.less(a, b), st.less(b, a)) {
                (Ok(ab), Ok(ba)) => [ab, ba, a == b].iter().filter(|x| **x).count() == 1,
                _ => false,
            };
            tally.check(ok, ctx);
        }
        Axiom::OrderTransitive => {
            let vals = [a, b, c];
            let mut ok = true;
            for &x in &vals {
                for &y in &vals {
                    for &z in &vals {
                        if let (Ok(true), Ok(true)) = (st.less(x, y), st.less(y, z)) {
                            ok &= st.less(x, z).unwrap_or(false);
                        }
                    }
                }
            }
            tally.check(ok, ctx);
        }
        Axiom::OrderAddCompatible => {
            let ok = match st.less(a, b) {
                Ok(true) => st.less(&st.add(a, c), &st.add(b, c)).unwrap_or(false),
                Ok(false) => true,
                Err(_) => false,
            };
            tally.check(ok, ctx);
        }
        Axiom::OrderMulCompatible => {
            let ok = match (st.less(&zero, a), st.less(&zero, b)) {
                (Ok(true), Ok(true)) => st.less(&zero, &st.mul(a, b)).unwrap_or(false),
                (Ok(_), Ok(_)) => true,
                _ => false,
            };
            tally.check(ok, ctx);
        }
        Axiom::ValueMapHomomorphism => {
            let [x, y, _] = raw;
            let mut ok = st.add(a, b) == st.embed(&(x + y));
            ok &= st.mul(a, b) == st.embed(&(x * y));
            ok &= e == st.embed(&one());
            if st.kind() != NumberKind::Natural && !x.is_zero() {
                ok &= st.inv(a).ok() == Some(st.embed(&x.inv()));
            }
            if st.kind() == NumberKind::Complex {
                ok &= st.conj(a) == st.embed(&x.conj());
            }
            if st.kind().is_ordered() {
                ok &= st.less(a, b).ok() == Some(x.re < y.re);
            }
            tally.check(ok, ctx);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaled_arithmetic::{FactorConvention, OpFactors, ScalingFactor};

    fn f(n: i64, d: i64) -> ScalingFactor {
        ScalingFactor::ratio(n, d).unwrap()
    }

    #[test]
    fn rational_structure_passes_everything() {
        let st = ScaledStructure::new(NumberKind::Rational, f(3, 1), f(7, 1)).unwrap();
        let report = axiom_suite(&st, 1000, 11);
        assert!(report.all_passed(), "{report}");
        assert!(report.outcome(Axiom::OrderTransitive).is_some());
    }

    #[test]
    fn unscaled_fields_pass() {
        for kind in [NumberKind::Natural, NumberKind::Rational, NumberKind::Real, NumberKind::Complex] {
            let report = axiom_suite(&ScaledStructure::standard(kind), 50, 1);
            assert!(report.all_passed(), "{report}");
        }
    }

    #[test]
    fn natural_and_negative_and_complex_ratios_pass() {
        let n = ScaledStructure::new(NumberKind::Natural, f(6, 1), f(2, 1)).unwrap();
        assert!(axiom_suite(&n, 200, 3).all_passed());
        let neg = ScaledStructure::new(NumberKind::Real, f(-5, 3), f(2, 9)).unwrap();
        assert!(axiom_suite(&neg, 200, 4).all_passed());
        let t: ScalingFactor = "(2,-3/4)".parse().unwrap();
        let c = ScaledStructure::new(NumberKind::Complex, t, f(5, 7)).unwrap();
        assert!(axiom_suite(&c, 200, 5).all_passed());
    }

    #[test]
    fn swapped_multiplication_factor_is_caught() {
        let (t, s) = (f(3, 1), f(7, 1));
        let ratio = t.over(&s);
        let mut factors = OpFactors::for_ratio(&ratio, FactorConvention::AxiomForced);
        factors.mul = ratio.clone();
        let st = ScaledStructure::with_factors(NumberKind::Rational, t, s, factors).unwrap();
        let report = axiom_suite(&st, 20, 9);
        assert!(!report.outcome(Axiom::MulIdentity).unwrap().passed());
        assert!(!report.outcome(Axiom::ValueMapHomomorphism).unwrap().passed());
        // Distributivity survives any constant multiplication factor.
        assert!(report.outcome(Axiom::Distributive).unwrap().passed());
    }

    #[test]
    fn uniform_ratio_convention_fails_inverse_only_when_scaled() {
        let st = ScaledStructure::with_convention(NumberKind::Rational, f(4, 1), f(1, 1), FactorConvention::UniformRatio)
            .unwrap();
        let report = axiom_suite(&st, 20, 2);
        assert!(!report.outcome(Axiom::MulInverse).unwrap().passed());
        assert!(report.outcome(Axiom::MulIdentity).unwrap().passed());

        let st = ScaledStructure::with_convention(NumberKind::Complex, f(1, 1), f(1, 1), FactorConvention::UniformRatio)
            .unwrap();
        assert!(axiom_suite(&st, 20, 2).all_passed());
    }

    #[test]
    fn same_seed_same_report() {
        let st = ScaledStructure::new(NumberKind::Complex, f(2, 3), f(-1, 5)).unwrap();
        assert_eq!(axiom_suite(&st, 30, 77), axiom_suite(&st, 30, 77));
    }
}
