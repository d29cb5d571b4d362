//! Acceptance criteria. Each one prints exactly one `criterion N (...)`
//! line with PASS or FAIL and the sub-checks that did not hold.
//!
//! All arithmetic is exact, so every comparison below is an equality.

use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use syzdim::checker::{
    generate_corpus_with, run_checks, CheckOptions, Claim, Context, Instance, Profile, Verdict,
    CORPUS_SEED, CORPUS_SIZE,
};
use syzdim::geometry::{
    height, krull_dim, ring_min_primes, supp_equal, verify_declared_min_primes, Dimension,
    PrimeProvenance, SupportHandle,
};
use syzdim::groebner::{
    annihilator_of_ideal_mod, ideal_intersection, ideal_quotient, Ideal, Limits, PairAudit,
};
use syzdim::instance::{builtin_names, InstanceFile, Overrides};
use syzdim::resolution::{compare_with_oracle, resolve, ModulePresentation, ResolutionAudit};
use syzdim::ring::FieldSpec;

/// Bounds for the oracle comparison on generated instances.
const CORPUS_DEGREE_BOUND: i32 = 6;
const CORPUS_HOM_BOUND: usize = 4;

/// Limits for one pass over the criteria. An audited pass re-checks every
/// Gröbner basis and every resolution it builds.
struct Run {
    limits: Limits,
    pairs: Option<Arc<PairAudit>>,
    resolutions: Mutex<Vec<(String, ResolutionAudit)>>,
}

impl Run {
    fn plain() -> Self {
        Run {
            limits: Limits::default(),
            pairs: None,
            resolutions: Mutex::new(Vec::new()),
        }
    }

    fn audited() -> Self {
        let pairs = PairAudit::new();
        Run {
            limits: Limits::default().with_audit(pairs.clone()),
            pairs: Some(pairs),
            resolutions: Mutex::new(Vec::new()),
        }
    }

    fn fixture(&self, name: &str, window: Option<usize>, field: Option<FieldSpec>) -> Instance {
        let o = Overrides {
            field,
            window,
            limits: Some(self.limits.clone()),
        };
        InstanceFile::builtin(name).unwrap().instance(&o).unwrap()
    }

    fn corpus(&self) -> Vec<Instance> {
        generate_corpus_with(CORPUS_SEED, CORPUS_SIZE, Profile::Default, &self.limits).unwrap()
    }

    /// Audits the resolution of `m` to `window` when this pass is audited.
    /// Resolutions are deterministic, so this is the one the caller used.
    fn record(&self, label: &str, m: &ModulePresentation, window: usize) {
        if self.pairs.is_some() {
            let audit = resolve(m, window).unwrap().audit().unwrap();
            self.resolutions
                .lock()
                .unwrap()
                .push((label.to_string(), audit));
        }
    }

    fn context(&self, inst: Instance) -> Context {
        self.record(&inst.label, &inst.module, inst.window);
        Context::new(inst).unwrap()
    }
}

#[derive(Default)]
struct Checks {
    items: Vec<(String, bool)>,
}

impl Checks {
    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.items.push((what.into(), ok));
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        let line = if ok {
            what.to_string()
        } else {
            format!("{what}: got {got:?}, expected {want:?}")
        };
        self.check(line, ok);
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(
            format!(
                "runtime {:.2} s < {} s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ),
            elapsed < limit,
        );
    }

    /// Prints the criterion line; true when every sub-check held.
    fn finish(self, n: usize, title: &str) -> bool {
        let failed: Vec<&str> = self
            .items
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(w, _)| w.as_str())
            .collect();
        if failed.is_empty() {
            println!(
                "criterion {n} ({title}): PASS [{} checks]",
                self.items.len()
            );
        } else {
            println!("criterion {n} ({title}): FAIL [{}]", failed.join("; "));
        }
        failed.is_empty()
    }
}

fn fin(d: usize) -> Dimension {
    Dimension::Finite(d)
}

fn ideal(ring: &syzdim::groebner::QuotientRing, gens: &[&str]) -> Ideal {
    let polys = gens
        .iter()
        .map(|g| ring.spec().parse_poly(g).unwrap())
        .collect();
    Ideal::new(ring.nvars(), polys).unwrap()
}

/// `R/(gens)` as a cyclic module.
fn cyclic(ctx: &Context, gens: &[&str]) -> ModulePresentation {
    let ring = ctx.instance.ring().clone();
    let gens: Vec<_> = gens.iter().map(|g| ring.parse(g).unwrap()).collect();
    ModulePresentation::cyclic(ring, &gens).unwrap()
}

fn betti_prefix(ctx: &Context, len: usize) -> Vec<Option<usize>> {
    (0..len).map(|i| ctx.betti.get(i)).collect()
}

fn dims(ctx: &Context, range: std::ops::RangeInclusive<usize>) -> Vec<Dimension> {
    range.map(|i| ctx.dim(i).unwrap()).collect()
}

fn criterion_1(run: &Run) -> Checks {
    let mut c = Checks::default();
    let ctx = run.context(run.fixture("embedded", Some(9), None));
    c.eq(
        "Betti 0..4",
        betti_prefix(&ctx, 5),
        [1, 1, 1, 2, 3].map(Some).to_vec(),
    );
    c.eq(
        "dim Ω_0..Ω_4",
        dims(&ctx, 0..=4),
        vec![fin(0), fin(1), fin(0), fin(1), fin(1)],
    );
    c.eq("dim Ω_5..Ω_8", dims(&ctx, 5..=8), vec![fin(1); 4]);
    c
}

fn criterion_2(run: &Run) -> Checks {
    let mut c = Checks::default();
    let ctx = run.context(run.fixture("matfac", Some(9), None));
    c.eq("Betti 0..8", betti_prefix(&ctx, 9), vec![Some(2); 9]);
    let computed = 0..=8;
    for i in computed.clone() {
        c.eq(
            &format!("supp Ω_{i} full"),
            ctx.is_full(i).unwrap(),
            i % 2 == 1,
        );
    }
    let target = SupportHandle::of_module(&cyclic(&ctx, &["a*d - b*c"])).unwrap();
    for i in computed.clone().filter(|i| i % 2 == 0) {
        c.check(
            format!("supp Ω_{i} = supp R/(ad-bc)"),
            supp_equal(ctx.support(i).unwrap(), &target).unwrap(),
        );
    }
    let ring = ctx.instance.ring();
    match verify_declared_min_primes(ring) {
        Ok(minn) => {
            c.eq(
                "declared minn verified",
                minn.provenance,
                PrimeProvenance::DeclaredVerified,
            );
            let meet = minn.primes[1..]
                .iter()
                .try_fold(minn.primes[0].clone(), |acc, p| {
                    ideal_intersection(&acc, p, &run.limits)
                })
                .unwrap();
            let want = ideal(ring, &["a*d*e - b*c*e"]);
            c.check(
                "⋂ minn = (ade - bce)",
                meet.same_ideal(&want, &run.limits).unwrap(),
            );
        }
        Err(e) => c.check(format!("declared minn verified: {e}"), false),
    }
    let d = dims(&ctx, computed);
    for parity in 0..2 {
        let tail: Vec<Dimension> = d
            .iter()
            .skip(parity)
            .step_by(2)
            .rev()
            .take(2)
            .copied()
            .collect();
        c.eq(
            &format!("dim of parity {parity} stabilizes at 4"),
            tail,
            vec![fin(4); 2],
        );
    }
    c
}

fn criterion_3(run: &Run) -> Checks {
    let mut c = Checks::default();
    let ctx = run.context(run.fixture("depth-zero", Some(7), Some(FieldSpec::Rational)));
    let ring = ctx.instance.ring();
    let i = ring.ideal();
    let l = &run.limits;
    c.eq("dim R", ctx.ring_dim(), fin(1));
    let y = ring.spec().parse_poly("y").unwrap();
    let colon = ideal_quotient(i, &y, l).unwrap();
    let want = i.sum(&ideal(ring, &["u", "v", "z^2"]));
    c.check(
        "(I : y) = I + (u, v, z^2)",
        colon.same_ideal(&want, l).unwrap(),
    );
    let gens: Vec<_> = ["u", "v", "z^2"]
        .iter()
        .map(|g| ring.spec().parse_poly(g).unwrap())
        .collect();
    let ann = annihilator_of_ideal_mod(&gens, i, l).unwrap();
    let want = i.sum(&ideal(ring, &["y"]));
    c.check(
        "ann (u, v, z^2) = I + (y)",
        ann.same_ideal(&want, l).unwrap(),
    );
    c.eq(
        "Betti 0..3",
        betti_prefix(&ctx, 4),
        [3, 1, 1, 3].map(Some).to_vec(),
    );
    c.eq(
        "dim Ω_1, Ω_3",
        vec![ctx.dim(1).unwrap(), ctx.dim(3).unwrap()],
        vec![fin(0); 2],
    );
    c.eq(
        "dim Ω_0, Ω_2",
        vec![ctx.dim(0).unwrap(), ctx.dim(2).unwrap()],
        vec![fin(1); 2],
    );
    c.eq("dim Ω_4..Ω_6", dims(&ctx, 4..=6), vec![fin(1); 3]);
    let ry = krull_dim(&i.sum(&ideal(ring, &["y"])), l).unwrap();
    c.eq("dim R/(y)", ry, fin(0));
    c
}

fn criterion_4(run: &Run) -> Checks {
    let mut c = Checks::default();
    let ctx = run.context(run.fixture("shrink", None, None));
    c.eq("β_0, β_1", betti_prefix(&ctx, 2), vec![Some(1); 2]);
    let ry = SupportHandle::of_module(&cyclic(&ctx, &["y"])).unwrap();
    c.check(
        "supp Ω_2 = supp R/(y)",
        supp_equal(ctx.support(2).unwrap(), &ry).unwrap(),
    );
    let ring = ctx.instance.ring();
    let xz = ["x", "z"].map(|g| ring.parse(g).unwrap());
    let closure = SupportHandle::of_cyclic(ring, &xz);
    c.check(
        "(x, z) ∈ supp M",
        closure.is_subset_of(ctx.support(0).unwrap()).unwrap(),
    );
    c.check(
        "(x, z) ∉ supp Ω_2",
        !closure.is_subset_of(ctx.support(2).unwrap()).unwrap(),
    );
    let minn = ring_min_primes(ring).unwrap().expect("monomial ring");
    let p = ideal(ring, &["x", "z"]);
    c.eq("ht (x, z)", height(&p, &minn, &run.limits).unwrap(), 1);
    c
}

/// Fixtures at their own windows, then the reference corpus.
fn suite(run: &Run) -> Vec<Instance> {
    let mut all: Vec<Instance> = builtin_names()
        .map(|n| run.fixture(n, None, None))
        .collect();
    all.extend(run.corpus());
    all
}

fn criterion_5(run: &Run) -> Checks {
    let mut c = Checks::default();
    let mut substantive = [0usize; 2];
    let fixtures = builtin_names().count();
    for (k, inst) in suite(run).into_iter().enumerate() {
        run.record(&inst.label, &inst.module, inst.window);
        let report = run_checks(&inst, &Claim::ALL, &CheckOptions::default()).unwrap();
        let failing: Vec<&str> = report
            .claims
            .iter()
            .filter(|r| r.verdict == Verdict::Fails)
            .map(|r| r.claim.name())
            .collect();
        c.check(
            format!("{}: no fails {failing:?}", inst.label),
            failing.is_empty(),
        );
        if k >= fixtures {
            for (slot, claim) in [Claim::TheoremMain, Claim::CorollaryDim]
                .into_iter()
                .enumerate()
            {
                let v = report.claim(claim).unwrap().verdict;
                if matches!(v, Verdict::Holds | Verdict::Fails) {
                    substantive[slot] += 1;
                }
            }
        }
    }
    c.check(
        format!("theorem-main non-vacuous on {} ≥ 10", substantive[0]),
        substantive[0] >= 10,
    );
    c.check(
        format!("corollary-dim non-vacuous on {} ≥ 10", substantive[1]),
        substantive[1] >= 10,
    );
    c
}

fn criterion_6(run: &Run) -> Checks {
    let mut c = Checks::default();
    let mut certified = 0;
    let bounds = |name: &str| {
        let f = InstanceFile::builtin(name).unwrap();
        (
            f.options.degree_bound.unwrap(),
            f.options.hom_bound.unwrap(),
        )
    };
    let fixtures: Vec<(Instance, (i32, usize))> = builtin_names()
        .map(|n| (run.fixture(n, None, None), bounds(n)))
        .collect();
    let corpus = run
        .corpus()
        .into_iter()
        .map(|i| (i, (CORPUS_DEGREE_BOUND, CORPUS_HOM_BOUND)));
    for (inst, (d, h)) in fixtures.into_iter().chain(corpus) {
        run.record(&inst.label, &inst.module, h);
        let cmp = compare_with_oracle(&inst.module, d, h).unwrap();
        c.check(
            format!(
                "{}: graded Betti numbers agree {:?}",
                inst.label, cmp.discrepancies
            ),
            cmp.agrees(),
        );
        for row in cmp.rows.iter().filter(|r| r.certified) {
            certified += 1;
            c.eq(
                &format!("{}: β_{} total", inst.label, row.index),
                row.engine,
                row.oracle,
            );
        }
    }
    c.check(
        format!("{certified} certified totals compared"),
        certified > 0,
    );
    c
}

type Criterion = fn(&Run) -> Checks;

fn timed(n: usize, title: &str, limit: Option<Duration>, f: Criterion) -> bool {
    let start = Instant::now();
    let mut c = f(&Run::plain());
    if let Some(limit) = limit {
        c.within(start.elapsed(), limit);
    }
    c.finish(n, title)
}

fn engine_properties() -> bool {
    let run = Run::audited();
    // only the bases and resolutions matter here, not the outcomes
    let workloads: [Criterion; 6] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
    ];
    for f in workloads {
        f(&run);
    }
    let mut c = Checks::default();
    let pairs = run.pairs.as_ref().unwrap().counts();
    c.check(format!("{} bases audited", pairs.bases), pairs.bases > 0);
    c.eq(
        &format!("S-pair violations over {} pairs", pairs.pairs),
        pairs.violations,
        0,
    );
    let resolutions = run.resolutions.lock().unwrap();
    c.check(
        format!("{} resolutions audited", resolutions.len()),
        !resolutions.is_empty(),
    );
    for (label, a) in resolutions.iter() {
        c.eq(
            &format!("{label}: δ_i δ_(i+1) ≠ 0 entries"),
            a.complex_violations,
            0,
        );
        c.eq(
            &format!("{label}: entries with constant term"),
            a.unit_entries,
            0,
        );
    }
    c.finish(7, "engine properties")
}

/// Runs every criterion, even after a failure, so each prints its line.
fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let table: [(&str, Option<Duration>, Criterion); 6] = [
        ("embedded-prime fixture", secs(10), criterion_1),
        ("matrix factorization fixture", secs(30), criterion_2),
        ("depth-zero fixture over Q", secs(120), criterion_3),
        ("support shrink fixture", secs(10), criterion_4),
        ("claims on fixtures and corpus", secs(600), criterion_5),
        ("oracle equivalence", None, criterion_6),
    ];
    let mut passed = 0;
    for (k, (title, limit, f)) in table.into_iter().enumerate() {
        passed += usize::from(timed(k + 1, title, limit, f));
    }
    passed += usize::from(engine_properties());
    println!("acceptance: {passed} of 7 criteria pass");
    if passed < 7 {
        std::process::exit(1);
    }
}
