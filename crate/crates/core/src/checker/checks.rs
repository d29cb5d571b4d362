use super::context::Context;
use super::{CheckOptions, CheckReport, Claim, ClaimReport, Instance, Nondecreasing, Verdict};
use crate::error::Result;
use crate::geometry::{
    height, krull_dim, minimal_primes_monomial, supp_equal, Dimension, SupportHandle,
};
use crate::groebner::ideal_membership;
use crate::resolution::BettiSequence;

/// Least `n₀ < N` with `β_i ≤ β_{i+1}` for all `n₀ ≤ i < N`, where `β_N` is
/// the last computed Betti number.
pub fn detect_nondecreasing_start(b: &BettiSequence) -> Option<usize> {
    let v = &b.values;
    let top = v.len().checked_sub(1)?;
    let mut n0 = top;
    while n0 > 0 && v[n0 - 1] <= v[n0] {
        n0 -= 1;
    }
    (n0 < top).then_some(n0)
}

fn nondecreasing_on(ctx: &Context, from: usize, to: usize) -> bool {
    (from..to).all(|i| ctx.beta(i) <= ctx.beta(i + 1))
}

fn dim_name(d: Dimension) -> String {
    d.to_string()
}

/// Verdict from per-case outcomes: any failure fails, any checked case
/// holds, otherwise the given fallback.
fn settle(mut rep: ClaimReport, failed: bool, checked: bool, fallback: Verdict) -> ClaimReport {
    rep.verdict = if failed {
        Verdict::Fails
    } else if checked {
        Verdict::Holds
    } else {
        fallback
    };
    rep
}

/// `β_i > β_{i-1}` for `i > 0` forces `supp Ω_{i+1} = Spec R` and
/// `dim Ω_{i+1} = dim R`.
pub fn check_lemma_strict(ctx: &Context) -> Result<ClaimReport> {
    let mut rep = ClaimReport::new(Claim::LemmaStrict);
    let top = ctx.top();
    let rd = ctx.ring_dim();
    let (mut failed, mut checked, mut short) = (false, false, false);
    for i in 1..=top {
        let (b, a) = (ctx.beta(i), ctx.beta(i - 1));
        if b <= a {
            continue;
        }
        let k = i + 1;
        if k > top {
            short = true;
            rep.notes.push(format!(
                "β_{i} = {b} > {a} = β_{} but Ω_{k} is beyond the window",
                i - 1
            ));
            continue;
        }
        checked = true;
        let full = ctx.is_full(k)?;
        let d = ctx.dim(k)?;
        let ok = full && d == rd;
        failed |= !ok;
        let supp = if full {
            "Spec R".to_string()
        } else {
            ctx.format_support(k)?
        };
        rep.witnesses.push(format!(
            "β_{i} = {b} > {a} = β_{}: supp Ω_{k} = {supp}, dim Ω_{k} = {} {} {} = dim R",
            i - 1,
            dim_name(d),
            if d == rd { "=" } else { "≠" },
            dim_name(rd)
        ));
    }
    let fallback = if short {
        Verdict::WindowTooShort
    } else {
        Verdict::Vacuous
    };
    if !checked && !short {
        rep.notes
            .push("no strict increase of Betti numbers in the window".into());
    }
    Ok(settle(rep, failed, checked, fallback))
}

/// One instance of the even-support lemma, for a fixed `n ≥ 1`.
pub fn check_lemma_supp_at(ctx: &Context, n: usize) -> Result<ClaimReport> {
    let mut rep = ClaimReport::new(Claim::LemmaSupp);
    rep.index = Some(n);
    let top = ctx.top();
    if n == 0 || 2 * n > top {
        return Ok(rep.with(
            Verdict::WindowTooShort,
            format!("n = {n}: Ω_{} is not computed", 2 * n),
        ));
    }
    if !nondecreasing_on(ctx, 0, 2 * n - 1) {
        return Ok(rep.with(
            Verdict::Vacuous,
            format!("n = {n}: β_0 ≤ … ≤ β_{} does not hold", 2 * n - 1),
        ));
    }
    if ctx.is_full(2 * n)? {
        return Ok(rep.with(
            Verdict::Vacuous,
            format!("n = {n}: supp Ω_{} = Spec R", 2 * n),
        ));
    }
    let mut failed = false;
    for i in 0..n {
        let (e, o) = (ctx.beta(2 * i), ctx.beta(2 * i + 1));
        failed |= e != o;
        rep.witnesses.push(format!(
            "(a) β_{} = {e} {} {o} = β_{}",
            2 * i,
            if e == o { "=" } else { "≠" },
            2 * i + 1
        ));
    }
    for i in 0..n {
        let ok = ctx.support(2 * i + 2)?.is_subset_of(ctx.support(2 * i)?)?;
        failed |= !ok;
        rep.witnesses.push(format!(
            "(b) supp Ω_{} = {} {} supp Ω_{} = {}",
            2 * i + 2,
            ctx.format_support(2 * i + 2)?,
            if ok { "⊆" } else { "⊄" },
            2 * i,
            ctx.format_support(2 * i)?
        ));
    }
    match (ctx.containment(2 * n)?, ctx.containment(0)?) {
        (Some(hi), Some(lo)) => {
            let ok = hi.touched == lo.touched;
            failed |= !ok;
            rep.witnesses.push(format!(
                "(c) n = {n}: minn R ∩ supp Ω_{} = {} {} {} = minn R ∩ supp M",
                2 * n,
                ctx.format_touched(&hi.touched),
                if ok { "=" } else { "≠" },
                ctx.format_touched(&lo.touched)
            ));
        }
        _ => rep.notes.push(format!(
            "n = {n} (c) skipped: {}",
            ctx.min_primes()
                .err()
                .unwrap_or("minimal primes unavailable")
        )),
    }
    Ok(settle(rep, failed, true, Verdict::Vacuous))
}

/// The even-support lemma for every `n` with `Ω_{2n}` in the window.
pub fn check_lemma_supp(ctx: &Context) -> Result<ClaimReport> {
    let mut rep = ClaimReport::new(Claim::LemmaSupp);
    let (mut failed, mut checked) = (false, false);
    for n in 1..=ctx.top() / 2 {
        let r = check_lemma_supp_at(ctx, n)?;
        match r.verdict {
            Verdict::Holds | Verdict::Fails => {
                checked = true;
                failed |= r.verdict == Verdict::Fails;
                // parts (a) and (b) for n repeat those for n - 1
                for w in r.witnesses {
                    if !rep.witnesses.contains(&w) {
                        rep.witnesses.push(w);
                    }
                }
                rep.notes.extend(r.notes);
            }
            _ => rep.notes.extend(r.notes),
        }
    }
    if ctx.top() < 2 {
        return Ok(rep.with(Verdict::WindowTooShort, "Ω_2 is not computed"));
    }
    Ok(settle(rep, failed, checked, Verdict::Vacuous))
}

fn no_start(rep: ClaimReport, ctx: &Context) -> ClaimReport {
    rep.with(
        Verdict::Skipped,
        format!(
            "Betti numbers {:?} are not non-decreasing at the end of the window",
            ctx.betti.values
        ),
    )
}

/// Index `n` from which the three conclusions of the main theorem hold on
/// every computed index, with the facts checked for it.
struct Stable {
    n: usize,
    witnesses: Vec<String>,
}

fn stable_from(ctx: &Context, n: usize, minn_ok: bool) -> Result<Option<Stable>> {
    let top = ctx.top();
    let mut w = Vec::new();
    for k in n..=top {
        if minn_ok {
            let c = ctx.containment(k)?.expect("minimal primes available");
            if !c.holds {
                return Ok(None);
            }
            w.push(format!(
                "(a) minn Ω_{k} = {} ⊆ minn R",
                ctx.format_touched(&c.touched)
            ));
        }
        if k + 2 <= top {
            if !supp_equal(ctx.support(k)?, ctx.support(k + 2)?)? {
                return Ok(None);
            }
            let s = if ctx.is_full(k)? {
                "Spec R".to_string()
            } else {
                ctx.format_support(k)?
            };
            w.push(format!("(b) supp Ω_{k} = supp Ω_{} = {s}", k + 2));
        }
    }
    for par in 0..2 {
        let Some(k) = (n..=top).find(|k| k % 2 == (n + par) % 2) else {
            continue;
        };
        if ctx.is_full(k)? {
            continue;
        }
        let pairs: Vec<(usize, usize, usize)> = (k..top)
            .step_by(2)
            .map(|j| (j, ctx.beta(j), ctx.beta(j + 1)))
            .collect();
        if pairs.iter().any(|&(_, e, o)| e != o) {
            return Ok(None);
        }
        let values: Vec<usize> = pairs.iter().map(|&(_, e, _)| e).collect();
        let (this, other) = if k % 2 == 0 {
            ("even", "odd")
        } else {
            ("odd", "even")
        };
        if values.windows(2).all(|p| p[0] == p[1]) && !values.is_empty() {
            w.push(format!(
                "(c) supp Ω_{k} ≠ Spec R, from {k}: β {this} = β {other} = {}",
                values[0]
            ));
        } else {
            let parts: Vec<String> = pairs
                .iter()
                .map(|&(j, e, _)| format!("β_{j} = β_{} = {e}", j + 1))
                .collect();
            w.push(format!("(c) supp Ω_{k} ≠ Spec R: {}", parts.join(", ")));
        }
    }
    Ok(Some(Stable { n, witnesses: w }))
}

/// Eventual minimal primes, 2-periodic supports and paired Betti numbers,
/// with the least index from which they hold on the window.
pub fn check_theorem_main(ctx: &Context, n0: Option<usize>) -> Result<ClaimReport> {
    let rep = ClaimReport::new(Claim::TheoremMain);
    if ctx.is_terminated() {
        return Ok(rep.with(
            Verdict::Vacuous,
            "finite projective dimension: the resolution terminated",
        ));
    }
    let Some(n0) = n0 else {
        return Ok(no_start(rep, ctx));
    };
    let top = ctx.top();
    let pairs = top.saturating_sub(n0 + 1);
    if n0 + 2 > top || pairs < 3 {
        return Ok(rep.with(
            Verdict::WindowTooShort,
            format!("only {pairs} index pairs (k, k+2) with {n0} ≤ k, k+2 ≤ {top}; need 3"),
        ));
    }
    let minn_ok = ctx.min_primes().is_ok();
    let mut rep = rep;
    if let Err(why) = ctx.min_primes() {
        rep.notes.push(format!("(a) skipped: {why}"));
    }
    for n in n0..=top - 2 {
        if let Some(s) = stable_from(ctx, n, minn_ok)? {
            rep.verdict = Verdict::Holds;
            rep.index = Some(s.n);
            rep.witnesses.push(format!(
                "non-decreasing from n₀ = {n0}; conclusions hold from n = {}",
                s.n
            ));
            rep.witnesses.extend(s.witnesses);
            rep.notes
                .push(format!("checked on indices {}..={top} only", s.n));
            return Ok(rep);
        }
    }
    Ok(rep.with(
        Verdict::WindowTooShort,
        format!(
            "no index n ≤ {} from which the conclusions hold up to {top}",
            top - 2
        ),
    ))
}

/// Start index and value of the constant tail of `dims`, if the tail has
/// at least two entries.
fn constant_tail(dims: &[(usize, Dimension)]) -> Option<(usize, Dimension)> {
    let (_, last) = *dims.last()?;
    let start = dims
        .iter()
        .rposition(|&(_, d)| d != last)
        .map_or(0, |p| p + 1);
    (dims.len() - start >= 2).then(|| (dims[start].0, last))
}

/// Eventual dimensions of even and odd syzygies.
pub fn check_corollary_dim(ctx: &Context, n0: Option<usize>) -> Result<ClaimReport> {
    let mut rep = ClaimReport::new(Claim::CorollaryDim);
    if ctx.is_terminated() {
        return Ok(rep.with(
            Verdict::Vacuous,
            "finite projective dimension: the resolution terminated",
        ));
    }
    let Some(n0) = n0 else {
        return Ok(no_start(rep, ctx));
    };
    let top = ctx.top();
    let mut seqs: [Vec<(usize, Dimension)>; 2] = [Vec::new(), Vec::new()];
    for k in n0..=top {
        seqs[k % 2].push((k, ctx.dim(k)?));
    }
    let fmt_seq = |s: &[(usize, Dimension)]| {
        s.iter()
            .map(|&(_, d)| dim_name(d))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let (Some(even), Some(odd)) = (constant_tail(&seqs[0]), constant_tail(&seqs[1])) else {
        return Ok(rep.with(
            Verdict::WindowTooShort,
            format!(
                "no constant tail of length 2: even dims ({}), odd dims ({})",
                fmt_seq(&seqs[0]),
                fmt_seq(&seqs[1])
            ),
        ));
    };
    let rd = ctx.ring_dim();
    let mut failed = false;
    rep.index = Some(even.0.max(odd.0));
    rep.witnesses.push(format!(
        "even dims from {n0} ({}) constant {} from {}",
        fmt_seq(&seqs[0]),
        even.1,
        even.0
    ));
    rep.witnesses.push(format!(
        "odd dims from {n0} ({}) constant {} from {}",
        fmt_seq(&seqs[1]),
        odd.1,
        odd.0
    ));
    let (at_dim, other) = if even.1 == rd {
        ("even", odd.1)
    } else if odd.1 == rd {
        ("odd", even.1)
    } else {
        failed = true;
        rep.witnesses.push(format!(
            "neither {} nor {} equals dim R = {rd}",
            even.1, odd.1
        ));
        ("", Dimension::Empty)
    };
    if !failed {
        rep.witnesses
            .push(format!("{at_dim} dims stabilize at dim R = {rd}"));
        match ctx.min_primes() {
            Ok(l) => {
                let cfg = ctx.instance.ring().config();
                let mut hit = None;
                for (k, p) in l.primes.iter().enumerate() {
                    if krull_dim(p, cfg)? == other {
                        hit = Some(k);
                        break;
                    }
                }
                match hit {
                    Some(k) => rep.witnesses.push(format!(
                        "other value {other} = dim S/p for p = {}",
                        ctx.format_prime(k)
                    )),
                    None => {
                        failed = true;
                        rep.witnesses.push(format!(
                            "other value {other} is not dim S/p for any minimal prime p"
                        ));
                    }
                }
            }
            Err(why) => rep
                .notes
                .push(format!("minimal-prime dimension skipped: {why}")),
        }
    }
    // supp Ω_k ∪ supp Ω_{k+1} = Spec R, checked as products of defining
    // generators lying in √I
    let full = SupportHandle::full(ctx.instance.ring());
    let mut union_ok = true;
    for k in n0..top {
        if ctx.beta(k) == 0 {
            continue;
        }
        let (a, b) = (ctx.support(k)?, ctx.support(k + 1)?);
        let mut ok = true;
        'outer: for g in a.extra() {
            for h in b.extra() {
                if !full.radical_contains(&g.mul(h))? {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if !ok {
            union_ok = false;
            rep.witnesses.push(format!(
                "supp Ω_{k} ∪ supp Ω_{} ≠ Spec R: {} and {}",
                k + 1,
                a.format(),
                b.format()
            ));
        }
    }
    failed |= !union_ok;
    if union_ok {
        rep.witnesses.push(format!(
            "supp Ω_k ∪ supp Ω_{{k+1}} = Spec R for {n0} ≤ k < {top}"
        ));
    }
    Ok(settle(rep, failed, true, Verdict::Vacuous))
}

/// Equal consecutive Betti numbers give equal supports two steps apart;
/// with `β_0 = β_1`, the minimal primes of `M` lost in `Ω_2` have height 1.
pub fn check_lemma_shrink(ctx: &Context) -> Result<ClaimReport> {
    let mut rep = ClaimReport::new(Claim::LemmaShrink);
    let top = ctx.top();
    let (mut failed, mut checked) = (false, false);
    for i in 1..top.saturating_sub(1) {
        if ctx.beta(i) != ctx.beta(i + 1) {
            continue;
        }
        checked = true;
        let ok = supp_equal(ctx.support(i)?, ctx.support(i + 2)?)?;
        failed |= !ok;
        rep.witnesses.push(format!(
            "β_{i} = β_{} = {}: supp Ω_{i} {} supp Ω_{}",
            i + 1,
            ctx.beta(i),
            if ok { "=" } else { "≠" },
            i + 2
        ));
    }
    if top >= 2 && ctx.beta(0) == ctx.beta(1) {
        rep.notes.push("part (a), M not a first syzygy, is not decidable from a presentation and is not checked".into());
        let ring = ctx.instance.ring();
        let cfg = ring.config();
        let m = ctx.support(0)?;
        let support_ideal = m.ideal();
        match (support_ideal.is_monomial(), ctx.min_primes()) {
            (true, Ok(minn_r)) => {
                let minn_m = minimal_primes_monomial(&support_ideal, ring.field())?;
                let omega2 = ctx.support(2)?;
                for p in &minn_m.primes {
                    let mut inside = true;
                    for g in omega2.extra() {
                        if !ideal_membership(g, p, cfg)? {
                            inside = false;
                            break;
                        }
                    }
                    if inside {
                        continue;
                    }
                    checked = true;
                    let h = height(p, minn_r, cfg)?;
                    failed |= h != 1;
                    rep.witnesses.push(format!(
                        "p = {} ∈ minn M, p ∉ supp Ω_2, ht = {h}",
                        p.format(ring.variables())
                    ));
                }
            }
            (false, _) => rep
                .notes
                .push("height sub-check skipped: the minimal primes of M are not enumerable (non-monomial support)".into()),
            (true, Err(why)) => rep.notes.push(format!("height sub-check skipped: {why}")),
        }
    }
    if !checked {
        rep.notes
            .push("no equal consecutive Betti numbers in the window".into());
    }
    Ok(settle(rep, failed, checked, Verdict::Vacuous))
}

/// With Betti numbers non-decreasing from 0, the even supports `Ω_{2i}`,
/// `i ≥ 1`, are constant and may switch once to `Spec R`.
pub fn check_prop_quick(ctx: &Context) -> Result<ClaimReport> {
    let mut rep = ClaimReport::new(Claim::PropQuick);
    if ctx.is_terminated() {
        return Ok(rep.with(
            Verdict::Vacuous,
            "finite projective dimension: the resolution terminated",
        ));
    }
    let top = ctx.top();
    if !nondecreasing_on(ctx, 0, top) {
        return Ok(rep.with(
            Verdict::Skipped,
            "Betti numbers are not non-decreasing from index 0",
        ));
    }
    let evens: Vec<usize> = (1..=top / 2).map(|i| 2 * i).collect();
    if evens.len() < 2 {
        return Ok(rep.with(
            Verdict::WindowTooShort,
            "fewer than two even syzygies Ω_{2i}, i ≥ 1, in the window",
        ));
    }
    let mut failed = false;
    let mut seen_full: Option<usize> = None;
    let mut first_partial: Option<usize> = None;
    let mut parts = Vec::new();
    for &k in &evens {
        if ctx.is_full(k)? {
            seen_full.get_or_insert(k);
            parts.push(format!("supp Ω_{k} = Spec R"));
            continue;
        }
        parts.push(format!("supp Ω_{k} = {}", ctx.format_support(k)?));
        if let Some(f) = seen_full {
            failed = true;
            rep.witnesses
                .push(format!("supp Ω_{f} = Spec R but supp Ω_{k} ≠ Spec R"));
        }
        match first_partial {
            None => first_partial = Some(k),
            Some(j) => {
                if !supp_equal(ctx.support(j)?, ctx.support(k)?)? {
                    failed = true;
                    rep.witnesses
                        .push(format!("supp Ω_{j} ≠ supp Ω_{k}, both proper"));
                }
            }
        }
    }
    rep.witnesses.push(parts.join("; "));
    let pattern = match (first_partial, seen_full) {
        (Some(_), Some(f)) => format!("constant, then Spec R from i = {}", f / 2),
        (Some(_), None) => "constant, no switch".to_string(),
        (None, _) => "Spec R throughout".to_string(),
    };
    rep.witnesses.push(format!("pattern: {pattern}"));
    rep.index = seen_full.map(|f| f / 2);
    Ok(settle(rep, failed, true, Verdict::Vacuous))
}

fn supp_classes(ctx: &Context) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'next: for i in 0..=ctx.top() {
        for class in classes.iter_mut() {
            let j = class[0];
            let same = match (ctx.is_full(i)?, ctx.is_full(j)?) {
                (true, true) => true,
                (false, false) => supp_equal(ctx.support(i)?, ctx.support(j)?)?,
                _ => false,
            };
            if same {
                class.push(i);
                continue 'next;
            }
        }
        classes.push(vec![i]);
    }
    Ok(classes)
}

/// Resolves `inst` and evaluates the given claims on its window.
pub fn run_checks(
    inst: &Instance,
    claims: &[Claim],
    options: &CheckOptions,
) -> Result<CheckReport> {
    let ctx = Context::new(inst.clone())?;
    let (n0, asserted) = match options.nondecreasing {
        Nondecreasing::Detect => (detect_nondecreasing_start(&ctx.betti), false),
        Nondecreasing::Assert(n) => (Some(n), true),
    };
    let mut reports = Vec::new();
    for &c in Claim::ALL.iter().filter(|c| claims.contains(c)) {
        let r = match c {
            Claim::LemmaStrict => check_lemma_strict(&ctx)?,
            Claim::LemmaSupp => check_lemma_supp(&ctx)?,
            Claim::TheoremMain => check_theorem_main(&ctx, n0)?,
            Claim::CorollaryDim => check_corollary_dim(&ctx, n0)?,
            Claim::LemmaShrink => check_lemma_shrink(&ctx)?,
            Claim::PropQuick => check_prop_quick(&ctx)?,
        };
        reports.push(r);
    }
    let top = ctx.top();
    let dims = (0..=top).map(|i| ctx.dim(i)).collect::<Result<Vec<_>>>()?;
    let supports = (0..=top)
        .map(|i| {
            Ok(if ctx.is_full(i)? {
                "Spec R".to_string()
            } else {
                ctx.format_support(i)?
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let stabilization_index = reports
        .iter()
        .find(|r| r.claim == Claim::TheoremMain && r.verdict == Verdict::Holds)
        .and_then(|r| r.index);
    Ok(CheckReport {
        label: inst.label.clone(),
        window: inst.window,
        betti: ctx.betti.clone(),
        ring_dim: ctx.ring_dim(),
        dims,
        supports,
        supp_classes: supp_classes(&ctx)?,
        nondecreasing_from: n0,
        nondecreasing_asserted: asserted,
        stabilization_index,
        min_primes: ctx.prime_summary(),
        min_primes_unavailable: ctx.min_primes().err().map(str::to_string),
        claims: reports,
    })
}
