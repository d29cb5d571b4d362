//! Buchberger's algorithm on submodules of `S^r`, with optional
//! representation tracking for syzygies and minimal-generator detection.
//!
//! Computations over `R = S/I` add `g * e_k` for every basis element `g` of
//! `I` and every component `k` ("augmentation" elements). Their coordinates
//! are never tracked, which projects every relation onto the input block.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Arc;

use super::vector::{merge_scaled, ModuleOrder, ModuleOrderKind, SparseVec, Term};
use crate::error::{Error, Result};
use crate::ring::{Monomial, Polynomial, Scalar};

pub const DEFAULT_PAIR_CAP: usize = 2_000_000;
pub const DEFAULT_DEGREE_CAP: u32 = 200;
pub const DEFAULT_MINOR_CAP: usize = 5000;

/// Resource limits shared by every computation of a run. Exceeding one is
/// a hard [`Error::LimitExceeded`] failure.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum number of S-pairs created by one Gröbner computation.
    pub pair_cap: usize,
    /// Maximum degree of a processed S-pair.
    pub degree_cap: u32,
    /// Maximum number of maximal minors taken for a Fitting ideal.
    pub minor_cap: usize,
    /// When set, every finished basis is re-checked pair by pair.
    pub audit: Option<Arc<PairAudit>>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            pair_cap: DEFAULT_PAIR_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            minor_cap: DEFAULT_MINOR_CAP,
            audit: None,
        }
    }
}

impl Limits {
    /// Defaults overridden by `SYZDIM_PAIR_CAP`, `SYZDIM_DEGREE_CAP` and
    /// `SYZDIM_MINOR_CAP`.
    pub fn from_env() -> Self {
        let mut c = Limits::default();
        if let Some(v) = env_usize("SYZDIM_PAIR_CAP") {
            c.pair_cap = v;
        }
        if let Some(v) = env_usize("SYZDIM_DEGREE_CAP") {
            c.degree_cap = v as u32;
        }
        if let Some(v) = env_usize("SYZDIM_MINOR_CAP") {
            c.minor_cap = v;
        }
        c
    }

    pub fn with_audit(mut self, audit: Arc<PairAudit>) -> Self {
        self.audit = Some(audit);
        self
    }
}

pub(crate) fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok().and_then(|v| v.trim().parse().ok())
}

/// Counters filled by the exhaustive S-pair audit.
#[derive(Debug, Default)]
pub struct PairAudit {
    bases: AtomicUsize,
    pairs: AtomicUsize,
    violations: AtomicUsize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AuditCounts {
    pub bases: usize,
    pub pairs: usize,
    pub violations: usize,
}

impl PairAudit {
    pub fn new() -> Arc<Self> {
        Arc::new(PairAudit::default())
    }

    pub fn counts(&self) -> AuditCounts {
        AuditCounts {
            bases: self.bases.load(AtomicOrdering::Relaxed),
            pairs: self.pairs.load(AtomicOrdering::Relaxed),
            violations: self.violations.load(AtomicOrdering::Relaxed),
        }
    }

    fn record(&self, pairs: usize, violations: usize) {
        self.bases.fetch_add(1, AtomicOrdering::Relaxed);
        self.pairs.fetch_add(pairs, AtomicOrdering::Relaxed);
        self.violations
            .fetch_add(violations, AtomicOrdering::Relaxed);
    }
}

/// Parameters of one engine run.
pub(crate) struct RunSpec<'a> {
    pub rank: usize,
    /// Degree of each basis vector `e_k`.
    pub twists: Vec<i32>,
    pub order: ModuleOrder,
    /// Gröbner basis of `I`; empty when working over `S`.
    pub ideal_basis: &'a [Polynomial],
    /// Homogeneous mode interleaves inputs with pairs by degree, which makes
    /// the kept inputs a minimal generating set.
    pub homogeneous: bool,
    pub track: bool,
    /// Stop as soon as a constant enters the basis (rank 1 only).
    pub stop_on_unit: bool,
    pub config: &'a Limits,
}

pub(crate) struct RunOutput {
    pub elements: Vec<SparseVec>,
    /// Whether each input was needed as a generator (homogeneous mode).
    pub kept: Vec<bool>,
    /// Relations among the kept inputs, reduced modulo `I`.
    pub syzygies: Vec<SparseVec>,
    /// For each input that reduced to zero: `e_j` minus its expression
    /// through the kept inputs.
    pub relations: Vec<SparseVec>,
    pub hit_unit: bool,
}

struct Element {
    vec: Vec<Term>,
    rep: Vec<Term>,
    comp: u32,
    lead: Monomial,
    aug: bool,
}

struct Engine<'a> {
    spec: &'a RunSpec<'a>,
    rep_order: ModuleOrder,
    elems: Vec<Element>,
    by_comp: Vec<Vec<usize>>,
    queue: BinaryHeap<Reverse<(i64, usize, usize)>>,
    pending: HashSet<(usize, usize)>,
    pairs_created: usize,
    syzygies: Vec<SparseVec>,
    relations: Vec<SparseVec>,
    track: bool,
}

impl<'a> Engine<'a> {
    fn new(spec: &'a RunSpec<'a>) -> Self {
        Engine {
            spec,
            rep_order: ModuleOrder::new(spec.order.monomial, ModuleOrderKind::PositionOverTerm),
            elems: Vec::new(),
            by_comp: vec![Vec::new(); spec.rank],
            queue: BinaryHeap::new(),
            pending: HashSet::new(),
            pairs_created: 0,
            syzygies: Vec::new(),
            relations: Vec::new(),
            track: spec.track,
        }
    }

    fn degree_of(&self, comp: u32, mono: &Monomial) -> i64 {
        mono.degree() as i64 + self.spec.twists[comp as usize] as i64
    }

    fn find_divisor(&self, comp: u32, mono: &Monomial) -> Option<usize> {
        self.by_comp[comp as usize]
            .iter()
            .copied()
            .find(|&k| self.elems[k].lead.divides(mono))
    }

    /// Full reduction of `v`, carrying the representation along.
    fn reduce(&self, mut v: Vec<Term>, mut rep: Vec<Term>, track: bool) -> (Vec<Term>, Vec<Term>) {
        let order = &self.spec.order;
        let mut pos = 0;
        while pos < v.len() {
            let (comp, mono, coeff) = (v[pos].0, v[pos].1, v[pos].2.clone());
            match self.find_divisor(comp, &mono) {
                Some(k) => {
                    let e = &self.elems[k];
                    let q = e.lead.quotient_of(&mono).unwrap();
                    let c = coeff.neg();
                    let tail = merge_scaled(&v[pos..], &e.vec, &q, &c, order);
                    v.truncate(pos);
                    v.extend(tail);
                    if track && !e.aug {
                        rep = merge_scaled(&rep, &e.rep, &q, &c, &self.rep_order);
                    }
                }
                None => pos += 1,
            }
        }
        (v, rep)
    }

    /// Reduces a representation modulo `I` in every component.
    fn reduce_rep(&self, mut rep: Vec<Term>) -> Vec<Term> {
        let gi = self.spec.ideal_basis;
        if gi.is_empty() {
            return rep;
        }
        let mut pos = 0;
        while pos < rep.len() {
            let (comp, mono, coeff) = (rep[pos].0, rep[pos].1, rep[pos].2.clone());
            match gi
                .iter()
                .find(|g| g.leading_monomial().unwrap().divides(&mono))
            {
                Some(g) => {
                    let q = g.leading_monomial().unwrap().quotient_of(&mono).unwrap();
                    let c = coeff.neg().div(g.leading_coeff().unwrap());
                    let gv = SparseVec::from_poly_in_comp(g, comp);
                    let tail = merge_scaled(&rep[pos..], &gv.terms, &q, &c, &self.rep_order);
                    rep.truncate(pos);
                    rep.extend(tail);
                }
                None => pos += 1,
            }
        }
        rep
    }

    fn record_syzygy(&mut self, rep: Vec<Term>) {
        let rep = self.reduce_rep(rep);
        if !rep.is_empty() {
            self.syzygies.push(SparseVec { terms: rep });
        }
    }

    fn record_relation(&mut self, rep: Vec<Term>) {
        let rep = self.reduce_rep(rep);
        self.relations.push(SparseVec { terms: rep });
    }

    fn insert(&mut self, vec: Vec<Term>, rep: Vec<Term>, aug: bool) -> Result<usize> {
        let (comp, lead, lc) = {
            let t = &vec[0];
            (t.0, t.1, t.2.clone())
        };
        let (vec, rep) = if lc.is_one() {
            (vec, rep)
        } else {
            let inv = lc.inv();
            let scale = |ts: Vec<Term>| -> Vec<Term> {
                ts.into_iter()
                    .map(|(k, m, c)| (k, m, c.mul(&inv)))
                    .collect()
            };
            (scale(vec), scale(rep))
        };
        let rep = if self.track && !aug {
            self.reduce_rep(rep)
        } else {
            Vec::new()
        };
        let idx = self.elems.len();
        let ideal_case = self.spec.rank == 1;
        let partners = self.by_comp[comp as usize].clone();
        self.elems.push(Element {
            vec,
            rep,
            comp,
            lead,
            aug,
        });
        for k in partners {
            let other = &self.elems[k];
            if aug && other.aug {
                continue;
            }
            if ideal_case && other.lead.is_coprime(&lead) {
                if self.track && !aug && !other.aug {
                    let koszul = self.koszul(k, idx);
                    self.record_syzygy(koszul);
                }
                continue;
            }
            self.pairs_created += 1;
            if self.pairs_created > self.spec.config.pair_cap {
                return Err(Error::LimitExceeded {
                    cap: "pair_cap",
                    limit: self.spec.config.pair_cap,
                    context: format!("building a basis with {} elements", self.elems.len()),
                });
            }
            let l = other.lead.lcm(&lead);
            let d = self.degree_of(comp, &l);
            self.queue.push(Reverse((d, idx, k)));
            self.pending.insert((k, idx));
        }
        self.by_comp[comp as usize].push(idx);
        Ok(idx)
    }

    /// `g_i * rep_j - g_j * rep_i` for two ideal elements with coprime leads.
    fn koszul(&self, i: usize, j: usize) -> Vec<Term> {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let mut acc: Vec<Term> = Vec::new();
        for (_, m, c) in &a.vec {
            acc = merge_scaled(&acc, &b.rep, m, c, &self.rep_order);
        }
        for (_, m, c) in &b.vec {
            acc = merge_scaled(&acc, &a.rep, m, &c.neg(), &self.rep_order);
        }
        acc
    }

    /// Buchberger's chain criterion against the current basis.
    fn chain_criterion(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let comp = self.elems[i].comp;
        self.by_comp[comp as usize].iter().any(|&k| {
            k != i
                && k != j
                && self.elems[k].lead.divides(lcm)
                && !self.pending.contains(&(i.min(k), i.max(k)))
                && !self.pending.contains(&(j.min(k), j.max(k)))
        })
    }

    fn s_vector(&self, i: usize, j: usize) -> (Vec<Term>, Vec<Term>) {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let l = a.lead.lcm(&b.lead);
        let qa = a.lead.quotient_of(&l).unwrap();
        let qb = b.lead.quotient_of(&l).unwrap();
        let field = a.vec[0].2.field();
        let one = field.one();
        let minus = one.neg();
        let v = merge_scaled(&[], &a.vec, &qa, &one, &self.spec.order);
        let v = merge_scaled(&v, &b.vec, &qb, &minus, &self.spec.order);
        let mut rep = Vec::new();
        if self.track {
            if !a.aug {
                rep = merge_scaled(&rep, &a.rep, &qa, &one, &self.rep_order);
            }
            if !b.aug {
                rep = merge_scaled(&rep, &b.rep, &qb, &minus, &self.rep_order);
            }
        }
        (v, rep)
    }

    fn process_pair(&mut self, k: usize, j: usize, degree: i64) -> Result<Option<usize>> {
        self.pending.remove(&(k, j));
        let l = self.elems[k].lead.lcm(&self.elems[j].lead);
        if self.chain_criterion(k, j, &l) {
            return Ok(None);
        }
        if degree > self.spec.config.degree_cap as i64 {
            return Err(Error::LimitExceeded {
                cap: "degree_cap",
                limit: self.spec.config.degree_cap as usize,
                context: format!("reducing an S-pair of degree {degree}"),
            });
        }
        let (v, rep) = self.s_vector(k, j);
        let (v, rep) = self.reduce(v, rep, self.track);
        if v.is_empty() {
            if self.track {
                self.record_syzygy(rep);
            }
            Ok(None)
        } else {
            self.insert(v, rep, false).map(Some)
        }
    }

    fn is_unit(&self, idx: usize) -> bool {
        self.spec.rank == 1 && self.elems[idx].lead.is_one()
    }

    fn audit(&self, audit: &PairAudit) {
        let mut pairs = 0;
        let mut violations = 0;
        for comp in 0..self.spec.rank {
            let idx = &self.by_comp[comp];
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[a + 1..] {
                    if self.elems[i].aug && self.elems[j].aug {
                        continue;
                    }
                    pairs += 1;
                    let (v, _) = self.s_vector(i, j);
                    let (r, _) = self.reduce(v, Vec::new(), false);
                    if !r.is_empty() {
                        violations += 1;
                    }
                }
            }
        }
        audit.record(pairs, violations);
    }
}

/// Runs Buchberger's algorithm on `inputs` (plus augmentation elements).
pub(crate) fn run(spec: &RunSpec<'_>, inputs: &[SparseVec]) -> Result<RunOutput> {
    let mut eng = Engine::new(spec);
    let field_one = inputs
        .iter()
        .find_map(|v| v.lead().map(|t| t.2.field().one()))
        .or_else(|| {
            spec.ideal_basis
                .first()
                .map(|g| g.leading_coeff().unwrap().field().one())
        });

    for comp in 0..spec.rank {
        for g in spec.ideal_basis {
            let v = SparseVec::from_poly_in_comp(g, comp as u32);
            eng.insert(v.terms, Vec::new(), true)?;
        }
    }

    let mut kept = vec![false; inputs.len()];
    let mut hit_unit = false;
    let mut order: Vec<usize> = (0..inputs.len()).collect();
    let input_degree = |j: usize| -> i64 {
        inputs[j].lead().map_or(i64::MIN, |t| {
            t.1.degree() as i64 + spec.twists[t.0 as usize] as i64
        })
    };
    order.sort_by_key(|&j| (input_degree(j), j));

    let seed_rep = |j: usize| -> Vec<Term> {
        match &field_one {
            Some(one) if spec.track => vec![(j as u32, Monomial::one(), one.clone())],
            _ => Vec::new(),
        }
    };

    let mut next_input = 0;
    if !spec.homogeneous {
        for &j in &order {
            let (v, rep) = eng.reduce(inputs[j].terms.clone(), seed_rep(j), spec.track);
            if v.is_empty() {
                if spec.track {
                    eng.record_relation(rep);
                }
                continue;
            }
            kept[j] = true;
            let idx = eng.insert(v, rep, false)?;
            if spec.stop_on_unit && eng.is_unit(idx) {
                hit_unit = true;
                break;
            }
        }
        next_input = order.len();
    }

    while !hit_unit {
        let pair_deg = eng.queue.peek().map(|r| r.0 .0);
        let in_deg = order.get(next_input).map(|&j| input_degree(j));
        let take_pair = match (pair_deg, in_deg) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(p), Some(d)) => p <= d,
        };
        let added = if take_pair {
            let Reverse((d, j, k)) = eng.queue.pop().unwrap();
            eng.process_pair(k, j, d)?
        } else {
            let j = order[next_input];
            next_input += 1;
            let (v, rep) = eng.reduce(inputs[j].terms.clone(), seed_rep(j), spec.track);
            if v.is_empty() {
                if spec.track {
                    eng.record_relation(rep);
                }
                None
            } else {
                kept[j] = true;
                Some(eng.insert(v, rep, false)?)
            }
        };
        if let Some(idx) = added {
            if spec.stop_on_unit && eng.is_unit(idx) {
                hit_unit = true;
            }
        }
    }

    if !hit_unit {
        if let Some(audit) = &spec.config.audit {
            eng.audit(audit);
        }
    }

    let elements = eng
        .elems
        .iter()
        .map(|e| SparseVec {
            terms: e.vec.clone(),
        })
        .collect();
    Ok(RunOutput {
        elements,
        kept,
        syzygies: eng.syzygies,
        relations: eng.relations,
        hit_unit,
    })
}

/// Drops elements whose leading term is divisible by another's, then
/// tail-reduces the survivors. Elements must form a Gröbner basis.
pub(crate) fn interreduce(mut elems: Vec<SparseVec>, order: &ModuleOrder) -> Vec<SparseVec> {
    elems.retain(|e| !e.is_zero());
    elems.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        order.cmp((x.0, &x.1), (y.0, &y.1))
    });
    let mut keep: Vec<SparseVec> = Vec::new();
    for e in elems {
        let (c, m, _) = e.lead().unwrap();
        if keep.iter().any(|k| {
            let (kc, km, _) = k.lead().unwrap();
            kc == c && km.divides(m)
        }) {
            continue;
        }
        keep.push(e);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<&SparseVec> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v)
            .collect();
        let r = reduce_by(&keep[i].terms, &others, order);
        let inv = r[0].2.inv();
        out.push(SparseVec {
            terms: r.into_iter().map(|(k, m, c)| (k, m, c.mul(&inv))).collect(),
        });
    }
    out.reverse();
    out
}

/// Full reduction of `v` by an arbitrary list of divisors.
pub(crate) fn reduce_by(v: &[Term], divisors: &[&SparseVec], order: &ModuleOrder) -> Vec<Term> {
    let mut v = v.to_vec();
    let mut pos = 0;
    while pos < v.len() {
        let (comp, mono, coeff) = (v[pos].0, v[pos].1, v[pos].2.clone());
        let hit = divisors.iter().find(|d| {
            let (dc, dm, _) = d.lead().unwrap();
            *dc == comp && dm.divides(&mono)
        });
        match hit {
            Some(d) => {
                let (_, dm, dcoef) = d.lead().unwrap();
                let q = dm.quotient_of(&mono).unwrap();
                let c: Scalar = coeff.neg().div(dcoef);
                let tail = merge_scaled(&v[pos..], &d.terms, &q, &c, order);
                v.truncate(pos);
                v.extend(tail);
            }
            None => pos += 1,
        }
    }
    v
}
