//! Executable versions of the statements about supports, dimensions and
//! Betti numbers of syzygy modules, evaluated on a finite resolution window.
//!
//! Asymptotic statements ("for all n ≫ 0") are checked on the computed
//! window only. The report gives the empirical index from which they hold
//! and never extrapolates beyond it.

mod checks;
mod context;
mod corpus;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::geometry::{Dimension, PrimeProvenance};
use crate::groebner::QuotientRing;
use crate::resolution::{BettiSequence, ModulePresentation};

pub use checks::{
    check_corollary_dim, check_lemma_shrink, check_lemma_strict, check_lemma_supp,
    check_lemma_supp_at, check_prop_quick, check_theorem_main, detect_nondecreasing_start,
    run_checks,
};
pub use context::Context;
pub use corpus::{generate_corpus, generate_corpus_with, Profile, CORPUS_SEED, CORPUS_SIZE};

/// A ring, a module over it, and the number of differentials to compute.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub module: ModulePresentation,
    pub window: usize,
}

impl Instance {
    pub fn new(label: impl Into<String>, module: ModulePresentation, window: usize) -> Self {
        Instance {
            label: label.into(),
            module,
            window,
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.module.ring()
    }
}

/// The statements the checker knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `β_i > β_{i-1}` forces `supp Ω_{i+1} = Spec R`.
    LemmaStrict,
    /// Equal Betti numbers and shrinking even supports under a
    /// non-decreasing prefix.
    LemmaSupp,
    /// Eventual minimal primes, 2-periodic supports and paired Betti numbers.
    TheoremMain,
    /// Eventual dimensions of even and odd syzygies.
    CorollaryDim,
    /// `β_i = β_{i+1}` gives `supp Ω_i = supp Ω_{i+2}`; heights of lost primes.
    LemmaShrink,
    /// Even supports are constant, then switch once to `Spec R`.
    PropQuick,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::LemmaStrict,
        Claim::LemmaSupp,
        Claim::TheoremMain,
        Claim::CorollaryDim,
        Claim::LemmaShrink,
        Claim::PropQuick,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::LemmaStrict => "lemma-strict",
            Claim::LemmaSupp => "lemma-supp",
            Claim::TheoremMain => "theorem-main",
            Claim::CorollaryDim => "corollary-dim",
            Claim::LemmaShrink => "lemma-shrink",
            Claim::PropQuick => "prop-quick",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    /// A checked consequence is false; the witnesses name the index and
    /// ideals involved.
    Fails,
    /// The hypotheses are never met in the window.
    Vacuous,
    /// The window is too short to evaluate the claim.
    WindowTooShort,
    /// A required ingredient is unavailable; see the reason.
    Skipped,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Vacuous => "vacuous",
            Verdict::WindowTooShort => "window-too-short",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Verdict of one claim with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: Claim,
    pub verdict: Verdict,
    /// Empirical index from which an asymptotic claim holds in the window.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// One line per checked fact, naming the indices and ideals involved.
    pub witnesses: Vec<String>,
    /// Why the claim was skipped, vacuous or cut short, or which
    /// sub-checks did not run.
    pub notes: Vec<String>,
}

impl ClaimReport {
    pub(crate) fn new(claim: Claim) -> Self {
        ClaimReport {
            claim,
            verdict: Verdict::Vacuous,
            index: None,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn with(mut self, verdict: Verdict, note: impl Into<String>) -> Self {
        self.verdict = verdict;
        self.notes.push(note.into());
        self
    }
}

/// Minimal primes of `R` as printed in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSummary {
    pub primes: Vec<String>,
    pub provenance: PrimeProvenance,
    /// Primality itself is trusted, not proven, for declared primes.
    pub primality_certified: bool,
}

/// Everything the checker computed for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub label: String,
    pub window: usize,
    pub betti: BettiSequence,
    pub ring_dim: Dimension,
    /// `dim Ω_i` for the indices with a computed support.
    pub dims: Vec<Dimension>,
    /// `supp Ω_i`, written as `V(...)` over the generators beyond `I`.
    pub supports: Vec<String>,
    /// Indices grouped by equal support, in order of first appearance.
    pub supp_classes: Vec<Vec<usize>>,
    /// Least `n₀` with `β_i ≤ β_{i+1}` for `n₀ ≤ i` in the window.
    pub nondecreasing_from: Option<usize>,
    /// Whether `n₀` was asserted by the caller instead of detected.
    pub nondecreasing_asserted: bool,
    /// Empirical stabilization index from the main theorem check.
    pub stabilization_index: Option<usize>,
    pub min_primes: Option<PrimeSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_primes_unavailable: Option<String>,
    pub claims: Vec<ClaimReport>,
}

impl CheckReport {
    pub fn has_failure(&self) -> bool {
        self.claims.iter().any(|c| c.verdict == Verdict::Fails)
    }

    pub fn claim(&self, claim: Claim) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim == claim)
    }
}

/// How the checker treats the non-decreasing hypothesis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Nondecreasing {
    /// Detect the start index on the computed window.
    #[default]
    Detect,
    /// The caller asserts non-decrease from this index on.
    Assert(usize),
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub nondecreasing: Nondecreasing,
}


#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::resolution::{compare_with_oracle, resolve};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn random_instances_resolve_and_never_refute(seed in any::<u64>()) {
            for mut inst in generate_corpus(seed, 3, Profile::Default).unwrap() {
                inst.window = 4;
                let res = resolve(&inst.module, inst.window).unwrap();
                let audit = res.audit().unwrap();
                prop_assert_eq!(audit.complex_violations, 0);
                prop_assert_eq!(audit.unit_entries, 0);
                let cmp = compare_with_oracle(&inst.module, 6, 3).unwrap();
                prop_assert!(cmp.agrees(), "{}: {:?}", inst.label, cmp.discrepancies);
                let report = run_checks(&inst, &Claim::ALL, &CheckOptions::default()).unwrap();
                prop_assert!(!report.has_failure(), "{}: {:?}", inst.label, report.claims);
            }
        }
    }
}
