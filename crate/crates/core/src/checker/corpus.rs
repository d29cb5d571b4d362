use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Instance;
use crate::error::Result;
use crate::groebner::{Limits, QuotientRing};
use crate::instance::{builtin_names, InstanceFile, Overrides};
use crate::resolution::{GradedMatrix, ModulePresentation};
use crate::ring::{
    FieldSpec, Monomial, MonomialOrder, PolyRing, Polynomial, QuotientRingSpec, DEFAULT_PRIME,
};

const NAMES: [&str; 4] = ["x", "y", "z", "w"];
const CORPUS_WINDOW: usize = 6;

/// Seed of the reference corpus.
pub const CORPUS_SEED: u64 = 7;
/// Size of the reference corpus.
pub const CORPUS_SIZE: usize = 20;

/// Families of generated instances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// Monomial ideals in 2 to 4 variables with generators of degree 2 or
    /// 3, and presentations of shape at most 3×3.
    #[default]
    Default,
    /// Principal monomial ideals.
    Hypersurface,
    /// The shipped example instances.
    Fixtures,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Default => "default",
            Profile::Hypersurface => "hypersurface",
            Profile::Fixtures => "fixtures",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Profile::Default, Profile::Hypersurface, Profile::Fixtures]
            .into_iter()
            .find(|p| p.name() == s)
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&exps)
}

fn random_form(rng: &mut ChaCha8Rng, nvars: usize, degree: u32, field: FieldSpec) -> Polynomial {
    let terms = rng.gen_range(1..=2);
    Polynomial::from_terms(
        nvars,
        MonomialOrder::GRevLex,
        (0..terms).map(|_| {
            let c = *[-2i64, -1, 1, 2, 3].choose(rng).unwrap();
            (random_monomial(rng, nvars, degree), field.small_nonzero(c))
        }),
    )
}

/// Random monomial ideal; generators that divide one another are dropped.
fn random_ideal(rng: &mut ChaCha8Rng, nvars: usize, count: usize) -> Vec<Monomial> {
    let mut gens: Vec<Monomial> = Vec::new();
    for _ in 0..count {
        let d = rng.gen_range(2..=3);
        let m = random_monomial(rng, nvars, d);
        if gens.iter().any(|g| g.divides(&m)) {
            continue;
        }
        gens.retain(|g| !m.divides(g));
        gens.push(m);
    }
    gens
}

fn random_instance(
    rng: &mut ChaCha8Rng,
    label: String,
    profile: Profile,
    limits: &Limits,
) -> Result<Instance> {
    let field = FieldSpec::Prime(DEFAULT_PRIME);
    let nvars = match profile {
        Profile::Hypersurface => rng.gen_range(2..=3),
        _ => rng.gen_range(2..=4),
    };
    let ideal_count = match profile {
        Profile::Hypersurface => 1,
        _ => rng.gen_range(1..=3),
    };
    let ambient = PolyRing::new(&NAMES[..nvars], field, MonomialOrder::GRevLex)?;
    let ideal = random_ideal(rng, nvars, ideal_count)
        .into_iter()
        .map(|m| ambient.monomial(m))
        .collect();
    let spec = QuotientRingSpec::new(ambient, ideal, None)?;
    let ring = Arc::new(QuotientRing::new(spec, limits.clone())?);
    // bigger presentations only in fewer variables, to keep Betti growth modest
    let rows = rng.gen_range(1..=if nvars <= 3 { 2 } else { 1 });
    let cols = rng.gen_range(1..=if nvars <= 3 { 3 } else { 2 });
    let col_degrees: Vec<i32> = (0..cols)
        .map(|_| if rng.gen_bool(0.75) { 1 } else { 2 })
        .collect();
    let columns = col_degrees
        .iter()
        .map(|&d| {
            (0..rows)
                .map(|_| random_form(rng, nvars, d as u32, field))
                .collect()
        })
        .collect();
    let matrix = GradedMatrix::with_degrees(vec![0; rows], col_degrees, columns)?;
    let module = ModulePresentation::new(ring, matrix)?;
    Ok(Instance::new(label, module, CORPUS_WINDOW))
}

/// Reproducible pseudo-random instances; the same seed, count and profile
/// always give the same list.
pub fn generate_corpus(seed: u64, count: usize, profile: Profile) -> Result<Vec<Instance>> {
    generate_corpus_with(seed, count, profile, &Limits::from_env())
}

/// [`generate_corpus`] with explicit limits for every generated ring.
pub fn generate_corpus_with(
    seed: u64,
    count: usize,
    profile: Profile,
    limits: &Limits,
) -> Result<Vec<Instance>> {
    if profile == Profile::Fixtures {
        let o = Overrides {
            limits: Some(limits.clone()),
            ..Overrides::default()
        };
        return builtin_names()
            .take(count)
            .map(|n| InstanceFile::builtin(n)?.instance(&o))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            random_instance(
                &mut rng,
                format!("{}-{seed}-{k:02}", profile.name()),
                profile,
                limits,
            )
        })
        .collect()
}
