//! Acceptance run: one line per criterion, `[PASS]` or `[FAIL]`, with its
//! wall time against the stated limit.
//!
//! Criteria listed in `KNOWN_DEVIATIONS` report `[FAIL]` honestly but do not
//! fail the process; every other failure does.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use binodyn_core::check::{fmt_rational, int, Trace};
use binodyn_core::colliding::{collision_search, lemma51_check, polynomial_roots, target_param_polys, verify_hits};
use binodyn_core::dynlab::identities::{additive_identity_check, eps2bar_identity, rho1_obstruction, s2eq1_sum_identity};
use binodyn_core::dynlab::orbit::orbit_support;
use binodyn_core::dynlab::{
    classify, eps_sequences, global_canonical_height, iterate, param_preperiodicity_polys, prep_verdict, BinomialFamily,
    Outcome, Regime,
};
use binodyn_core::dynlab::eps::orbit_identity_check;
use binodyn_core::dynlab::height::{sandwich_check, witness_bound_check};
use binodyn_core::gfq::{Elem, Field, FieldSpec, GfElem};
use binodyn_core::newton::{fiber_analyze, root_abs_multiset};
use binodyn_core::par::{self, Exec};
use binodyn_core::places::{abs_log, exceptional_set, product_formula_check, support, Place};
use binodyn_core::ratfunc::expr::parse_rat;
use binodyn_core::ratfunc::from_roots;
use binodyn_core::ratfunc::RatFunc;
use common::*;
use rand::Rng;

/// `a_2 = s1 f^(p^l1)` does not hold for `2x^5 + x^6` over `F_3`; the
/// coefficient is `c1 s1 f^(p^l1) = f`.
const KNOWN_DEVIATIONS: &[u32] = &[8];

type Outcome1 = Result<String, String>;

struct Runner {
    failed: Vec<u32>,
}

impl Runner {
    fn run(&mut self, id: u32, name: &str, limit_s: u64, body: impl FnOnce() -> Outcome1) {
        let start = Instant::now();
        let res = body();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit_s);
        let (pass, detail) = match res {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(d) => (false, d),
        };
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {id:>2} {name}: {detail} ({:.2} s, limit {limit_s} s)", took.as_secs_f64());
        if !pass {
            self.failed.push(id);
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_trace(t: &Trace, ctx: impl FnOnce() -> String) -> Result<(), String> {
    match t.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{}: {} ({})", ctx(), c.name, c.detail)),
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn f3() -> Field {
    FieldSpec::prime(3).unwrap()
}

fn product_formula() -> Outcome1 {
    let fields = [FieldSpec::prime(2).unwrap(), f3(), FieldSpec::with_degree(3, 2).unwrap()];
    let mut total = 0;
    for (fi, field) in fields.iter().enumerate() {
        let seeds: Vec<u64> = (0..10_000).collect();
        let sums = par::map(Exec::default(), &seeds, |&s| {
            let mut r = rng(s * 3 + fi as u64);
            let x = random_rat(field, &mut r, 6, 6);
            product_formula_check(&x).map(|v| (x, v))
        });
        for res in sums {
            let (x, v) = res.map_err(e)?;
            ensure(v == int(0), || format!("sum = {} for {x} over F_{}", fmt_rational(&v), field.q()))?;
            total += 1;
        }
    }
    Ok(format!("{total} elements over F_2, F_3, F_9, every sum 0"))
}

fn newton_oracle() -> Outcome1 {
    let field = f3();
    let seeds: Vec<u64> = (0..500).collect();
    let results = par::map(Exec::default(), &seeds, |&s| -> Result<usize, String> {
        let mut r = rng(0x2000 + s);
        let k = r.gen_range(1..=5);
        let roots: Vec<RatFunc> = (0..k).map(|_| random_rat(&field, &mut r, 2, 2)).collect();
        let poly = from_roots(&field, Elem::ONE, &roots);
        let mut places = vec![Place::Infinity];
        for root in &roots {
            for (v, _) in support(root).map_err(e)? {
                if !places.contains(&v) {
                    places.push(v);
                }
            }
        }
        for v in &places {
            let mut got = root_abs_multiset(&poly, v).map_err(e)?;
            let mut want: Vec<_> = roots.iter().map(|x| abs_log(x, v).unwrap()).collect();
            got.sort();
            want.sort();
            ensure(got == want, || format!("at {v} for roots {roots:?}: {got:?} vs {want:?}"))?;
        }
        Ok(places.len())
    });
    let mut checked = 0;
    for r in results {
        checked += r?;
    }
    Ok(format!("500 products, {checked} place comparisons exact"))
}

fn families() -> (BinomialFamily, BinomialFamily) {
    let f = f3();
    (BinomialFamily::from_ints(&f, 1, 2, 1, 3).unwrap(), BinomialFamily::from_ints(&f, 2, 5, 1, 6).unwrap())
}

fn fiber_count() -> Outcome1 {
    let (a, b) = families();
    let t = RatFunc::t(&a.field);
    let s = exceptional_set(&t, &t).map_err(e)?;
    let mut counts = Vec::new();
    for (fam, want) in [(&a, 3), (&b, 6)] {
        let data = fiber_analyze(fam, &t, &s).map_err(e)?;
        ensure(data.separable, || format!("{} not separable", fam.poly().format_var("x")))?;
        ensure(data.count == want, || format!("{}: count {} expected {want}", fam.poly().format_var("x"), data.count))?;
        ensure_trace(&data.trace, || fam.poly().format_var("x"))?;
        counts.push(data.count);
    }
    Ok(format!("|S| = {} for x^2+x^3, {} for 2x^5+x^6", counts[0], counts[1]))
}

fn fiber_multisets() -> Outcome1 {
    let (a, b) = families();
    let field = a.field.clone();
    let mut places = 0;
    for fam in [&a, &b] {
        let rho = fam.rho.unwrap();
        for src in ["t", "t^2", "1/t"] {
            let alpha = parse_rat(src, &field).map_err(e)?;
            let s = exceptional_set(&alpha, &alpha).map_err(e)?;
            let data = fiber_analyze(fam, &alpha, &s).map_err(e)?;
            ensure_trace(&data.trace, || format!("{} at alpha = {src}", fam.poly().format_var("x")))?;
            for pf in &data.per_place {
                let small = (int(1) - rho) * pf.c_v;
                ensure(pf.multiset.iter().all(|m| *m == small || *m == pf.c_v), || format!("entry outside at {}", pf.place))?;
                ensure(pf.multiset.contains(&small), || format!("no small entry at {}", pf.place))?;
                if fam.s2 == 1 {
                    ensure(pf.multiset.iter().all(|m| *m == small), || format!("s2 = 1 entry at {}", pf.place))?;
                }
                places += 1;
            }
        }
    }
    Ok(format!("{places} per-place multisets inside {{(1-rho)C, C}}"))
}

fn any_family_pairs(p: u64, max_d2: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for d2 in 2..=max_d2 {
        for d1 in 1..d2 {
            if classify(p, d1, d2) != Regime::Other {
                out.push((d1, d2));
            }
        }
    }
    out
}

fn eps_identity() -> Outcome1 {
    let fields = [FieldSpec::prime(2).unwrap(), f3()];
    let seeds: Vec<u64> = (0..100).collect();
    let results = par::map(Exec::default(), &seeds, |&s| -> Result<(), String> {
        let mut r = rng(0x5000 + s);
        let field = &fields[(s % 2) as usize];
        let pairs = any_family_pairs(field.p() as u64, 3);
        let fam = random_family(field, &mut r, &pairs);
        let alpha = random_rat(field, &mut r, 1, 1);
        let beta = random_rat(field, &mut r, 1, 1);
        let seq = eps_sequences(&fam, &alpha, &beta, 6, None).map_err(e)?;
        ensure_trace(&orbit_identity_check(&fam, &alpha, &beta, &seq), || format!("instance {s}"))?;
        let mirror = eps_sequences(&fam, &beta, &alpha, 6, None).map_err(e)?;
        ensure(seq.delta == mirror.eps && seq.eps == mirror.delta, || format!("mirror symmetry fails on instance {s}"))?;
        ensure(seq.delta_prime == mirror.eps_prime, || format!("primed mirror fails on instance {s}"))?;
        Ok(())
    });
    for r in results {
        r?;
    }
    Ok("100 instances, n <= 6, eps and delta identities and mirror symmetry exact".into())
}

fn identity_suite() -> Outcome1 {
    let f9 = FieldSpec::with_degree(3, 2).unwrap();
    let f3 = f3();
    let seeds: Vec<u64> = (0..50).collect();
    let additive = par::map(Exec::default(), &seeds, |&s| -> Result<(), String> {
        let mut r = rng(0x6000 + s);
        let fam = random_family(&f9, &mut r, &[(1, 3)]);
        let alpha = random_rat(&f9, &mut r, 2, 1);
        let lambda = random_rat(&f9, &mut r, 2, 1);
        let u = RatFunc::constant(&f9, random_elem(&f9, &mut r));
        let beta = alpha.add(&u);
        let rep = additive_identity_check(&fam, &alpha, &beta, &lambda, 4).map_err(e)?;
        ensure_trace(&rep.trace, || format!("additive instance {s}"))
    });
    let s21_pairs = [(2, 3), (2, 9), (6, 9)];
    let s21 = par::map(Exec::default(), &seeds, |&s| -> Result<(), String> {
        let mut r = rng(0x6100 + s);
        let fam = random_family(&f3, &mut r, &s21_pairs);
        let alpha = random_rat(&f3, &mut r, 2, 1);
        let beta = random_rat(&f3, &mut r, 2, 1);
        ensure_trace(&s2eq1_sum_identity(&fam, &alpha, &beta).map_err(e)?, || format!("(2,1) instance {s}"))
    });
    let seeds25: Vec<u64> = (0..25).collect();
    let pairs = any_family_pairs(3, 6);
    let eq41 = par::map(Exec::default(), &seeds25, |&s| -> Result<(), String> {
        let mut r = rng(0x6200 + s);
        let field = if s % 2 == 0 { &f3 } else { &f9 };
        let fam = random_family(field, &mut r, &pairs);
        let alpha = random_rat(field, &mut r, 2, 1);
        let eps1 = random_rat(field, &mut r, 1, 1);
        ensure_trace(&eps2bar_identity(&fam, &alpha, &eps1), || format!("expansion instance {s}"))
    });
    for r in additive.into_iter().chain(s21).chain(eq41) {
        r?;
    }
    Ok("50 additive, 50 (s1, s2) = (2, 1), 25 expansion identities exact".into())
}

fn rho1_anchor() -> Outcome1 {
    let fam = BinomialFamily::from_ints(&f3(), 1, 4, 1, 6).map_err(e)?;
    let ob = rho1_obstruction(&fam).map_err(e)?;
    let shown: Vec<String> = ob.admissible.iter().map(|g| g.to_string()).collect();
    let want: Vec<GfElem> = [-1, 0, 1].iter().map(|&n| GfElem::from_int(&ob.field, n)).collect();
    let mut got = ob.admissible.clone();
    got.sort_by_key(|g| g.value().index());
    let mut want_sorted = want.clone();
    want_sorted.sort_by_key(|g| g.value().index());
    ensure(got == want_sorted && ob.field.q() == 3, || format!("admissible {shown:?} over F_{}", ob.field.q()))?;
    Ok(format!("eps_1 in {{{}}} = {{-1, 0, 1}} in F_3", shown.join(", ")))
}

fn lemma51_anchor() -> Outcome1 {
    let (_, fam) = families();
    let rep = lemma51_check(&fam, 3).map_err(e)?;
    let mut notes = Vec::new();
    let mut bad = Vec::new();
    match rep.trace.failures().next() {
        None => notes.push(format!("{} checks pass", rep.trace.checks.len())),
        Some(c) => bad.push(format!("{} ({})", c.name, c.detail)),
    }
    if rep.b.get(1) != Some(&4) || rep.b.get(2) != Some(&30) {
        bad.push(format!("b = {:?}", rep.b));
    }
    let closed = 36 - rep.b[2] as i64;
    if closed != 6 {
        bad.push(format!("d2^2 - b_3 = {closed}"));
    }
    match rep.b_prime[2] {
        Some(bp) if bp < rep.b[2] => notes.push(format!("b_2 = 4, b_3 = 30, b'_3 = {bp}, d2^2 - b_3 = 6")),
        other => bad.push(format!("b'_3 = {other:?}")),
    }
    let a2 = rep.expansions[1].a_n.format_var("x");
    if rep.a2_without_c1 != Some(true) {
        bad.push(format!("a_2 = {a2}, not s1 f^(p^l1) = 2f; it equals c1 s1 f^(p^l1) = f"));
    }
    if bad.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{}; {}", bad.join("; "), notes.join("; ")))
    }
}

fn heights() -> Outcome1 {
    let f3 = f3();
    let pairs = any_family_pairs(3, 4);
    let mut accepted = 0;
    let mut tried = 0u64;
    while accepted < 100 {
        ensure(tried < 2_000, || format!("only {accepted} exact reports in {tried} draws"))?;
        let mut r = rng(0x9000 + tried);
        tried += 1;
        let fam = random_family(&f3, &mut r, &pairs);
        let lambda = random_nonconstant_rat(&f3, &mut r, 3, 2);
        let alpha = random_rat(&f3, &mut r, 2, 2);
        let rep = global_canonical_height(&fam, &lambda, &alpha, 6).map_err(e)?;
        if !rep.is_exact() {
            continue;
        }
        ensure_trace(&sandwich_check(&fam, &lambda, &alpha, &rep), || format!("lambda = {lambda}, alpha = {alpha}"))?;
        accepted += 1;
    }
    let mut witnesses = 0;
    let mut draws = 0u64;
    while witnesses < 20 {
        ensure(draws < 500, || format!("only {witnesses} witnesses in {draws} draws"))?;
        let mut r = rng(0x9500 + draws);
        draws += 1;
        let fam = random_family(&f3, &mut r, &pairs);
        let alpha = random_nonconstant_rat(&f3, &mut r, 2, 0);
        let lambda = random_nonconstant_rat(&f3, &mut r, 2, 0);
        let m = r.gen_range(1..=2usize);
        let beta = iterate(&fam, &lambda, &alpha, m);
        let target = target_param_polys(&fam, &alpha, &beta, &[m]);
        let Some(roots) = polynomial_roots(&target.entries[0].poly, 50_000).map_err(e)? else {
            continue;
        };
        ensure(roots.contains(&lambda), || format!("planted lambda = {lambda} missing"))?;
        for u in &roots {
            let rep = global_canonical_height(&fam, u, &alpha, 6).map_err(e)?;
            ensure_trace(&witness_bound_check(&fam, u, &alpha, &beta, m as u32, &rep), || format!("witness lambda = {u}"))?;
            witnesses += 1;
        }
    }
    Ok(format!("{accepted} sandwiches ({tried} draws), {witnesses} witness bounds"))
}

fn fiber_partner(fam: &BinomialFamily, a: Elem) -> Elem {
    let fa = fam.eval_elem(a);
    fam.field.elements().find(|&b| b != a && fam.eval_elem(b) == fa).unwrap_or(a)
}

fn collisions() -> Outcome1 {
    let mut hits = 0;
    let mut nontrivial = 0;
    for k in [2, 3] {
        let field = FieldSpec::with_degree(3, k).unwrap();
        let pairs: Vec<_> = any_family_pairs(3, 6).into_iter().filter(|&(d1, d2)| classify(3, d1, d2) != Regime::Additive).collect();
        for s in 0..20u64 {
            let mut r = rng(0xa000 + 100 * k as u64 + s);
            let fam = random_family(&field, &mut r, &pairs);
            let a1 = random_nonzero_elem(&field, &mut r);
            let a2 = fiber_partner(&fam, a1);
            let beta = random_elem(&field, &mut r);
            ensure(fam.eval_elem(a1) == fam.eval_elem(a2), || "fiber partner".into())?;
            if a1 != a2 {
                nontrivial += 1;
            }
            let set = collision_search(&fam, &field, a1, a2, beta).map_err(e)?;
            ensure(set.membership.iter().all(|(m, n)| m == n), || format!("membership differs over F_{}", field.q()))?;
            let by1 = set.membership.iter().filter(|(m, _)| m.is_some()).count();
            ensure(set.hits.len() == by1, || "hits are not shared".into())?;
            verify_hits(&fam, &set, a1, a2, beta).map_err(e)?;
            hits += set.hits.len();
        }
    }
    Ok(format!("40 triples ({nontrivial} with alpha1 != alpha2), {hits} shared witnesses re-verified"))
}

fn verdicts() -> Outcome1 {
    let f3 = f3();
    let f9 = FieldSpec::with_degree(3, 2).unwrap();
    let pairs = any_family_pairs(3, 9);
    let strict = degree_pairs(3, 9, Regime::StrictLess);
    let mut counts = [0usize; 4];
    let check_common = |fam: &BinomialFamily, v: &binodyn_core::dynlab::Verdict| -> Result<(), String> {
        ensure_trace(&v.assertions, || format!("{} {}", fam.poly().format_var("x"), v.outcome))?;
        ensure(v.regime == classify(fam.p(), fam.d1, fam.d2), || "regime differs from the classifier".into())?;
        if let Outcome::EdgeUnknown(g) = &v.outcome {
            ensure(v.regime == Regime::Equal, || "EdgeUnknown outside Equal".into())?;
            let ob = rho1_obstruction(fam).map_err(e)?;
            ensure(fam.field.pow(g.value(), ob.exponent as u128) == ob.target, || "obstruction unsatisfied".into())?;
        }
        Ok(())
    };
    for s in 0..50u64 {
        let mut r = rng(0xb000 + s);
        let field = if s % 2 == 0 { &f3 } else { &f9 };
        let fam = random_family(field, &mut r, &pairs);
        let alpha = random_nonconstant_rat(field, &mut r, 2, 1);
        let roots: Vec<Elem> = field
            .elements()
            .filter(|&z| !z.is_zero() && field.pow(z, fam.d1 as u128) == Elem::ONE && field.pow(z, fam.d2 as u128) == Elem::ONE)
            .collect();
        let z = roots[r.gen_range(0..roots.len())];
        let beta = alpha.scale(z);
        let v = prep_verdict(&fam, &alpha, &beta).map_err(e)?;
        check_common(&fam, &v)?;
        ensure(v.outcome == Outcome::InfiniteCollision, || format!("collision gave {}", v.outcome))?;
        counts[0] += 1;

        let a = RatFunc::constant(field, random_elem(field, &mut r));
        let b = RatFunc::constant(field, random_elem(field, &mut r));
        let v = prep_verdict(&fam, &a, &b).map_err(e)?;
        check_common(&fam, &v)?;
        ensure(v.outcome == Outcome::InfiniteTrivial, || format!("constants gave {}", v.outcome))?;
        counts[1] += 1;
    }
    let mut s = 0u64;
    while counts[2] < 50 {
        let mut r = rng(0xb100 + s);
        s += 1;
        let fam = random_family(&f3, &mut r, &strict);
        let alpha = random_nonconstant_rat(&f3, &mut r, 2, 1);
        let beta = random_rat(&f3, &mut r, 2, 1);
        let eps1 = fam.eval(&beta).sub(&fam.eval(&alpha));
        if eps1.is_zero() || eps1.is_constant() {
            continue;
        }
        let v = prep_verdict(&fam, &alpha, &beta).map_err(e)?;
        check_common(&fam, &v)?;
        ensure(matches!(v.outcome, Outcome::Finite(_)), || format!("StrictLess gave {}", v.outcome))?;
        counts[2] += 1;
    }
    for s in 0..100u64 {
        let mut r = rng(0xb200 + s);
        let field = if s % 2 == 0 { &f3 } else { &f9 };
        let fam = random_family(field, &mut r, &pairs);
        let alpha = random_rat(field, &mut r, 2, 1);
        let beta = if s % 3 == 0 {
            alpha.add(&RatFunc::constant(field, random_elem(field, &mut r)))
        } else {
            random_rat(field, &mut r, 2, 1)
        };
        let v = prep_verdict(&fam, &alpha, &beta).map_err(e)?;
        check_common(&fam, &v)?;
        if matches!(v.outcome, Outcome::EdgeUnknown(_)) {
            counts[3] += 1;
        }
    }
    Ok(format!(
        "{} collisions, {} constant pairs, {} StrictLess finite, {} EdgeUnknown among 100 mixed",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn growth() -> Outcome1 {
    let (a, b) = families();
    let t = RatFunc::t(&a.field);
    let ps = param_preperiodicity_polys(&a, &t, &[(1, 0), (2, 1), (3, 2)]);
    let counts: Vec<usize> = ps.iter().map(|p| p.distinct_roots).collect();
    ensure(counts.windows(2).all(|w| w[0] < w[1]), || format!("counts {counts:?}"))?;
    let rep = target_param_polys(&b, &t, &t, &[1, 2, 3]);
    let cum: Vec<usize> = rep.entries.iter().map(|e| e.cumulative).collect();
    ensure(rep.growing, || format!("cumulative {cum:?}"))?;
    let support_ok = orbit_support(&t, &t).map_err(e)?.len() == 1;
    ensure(support_ok, || "orbit support".into())?;
    Ok(format!("x^2+x^3 counts {counts:?}; 2x^5+x^6 cumulative {cum:?}"))
}

fn main() -> ExitCode {
    let mut runner = Runner { failed: Vec::new() };
    runner.run(1, "product formula", 10, product_formula);
    runner.run(2, "Newton polygon oracle", 30, newton_oracle);
    runner.run(3, "fiber count", 5, fiber_count);
    runner.run(4, "fiber multisets", 10, fiber_multisets);
    runner.run(5, "eps orbit identity", 60, eps_identity);
    runner.run(6, "identity suite", 60, identity_suite);
    runner.run(7, "rho = 1 obstruction", 1, rho1_anchor);
    runner.run(8, "iterate expansion anchor", 30, lemma51_anchor);
    runner.run(9, "height bounds", 120, heights);
    runner.run(10, "collision coincidence", 120, collisions);
    runner.run(11, "verdict consistency", 30, verdicts);
    runner.run(12, "parameter growth", 30, growth);
    let unexpected: Vec<u32> = runner.failed.iter().copied().filter(|id| !KNOWN_DEVIATIONS.contains(id)).collect();
    let known: Vec<u32> = runner.failed.iter().copied().filter(|id| KNOWN_DEVIATIONS.contains(id)).collect();
    println!("summary: {} of 12 pass; known deviations failing: {known:?}; unexpected failures: {unexpected:?}", 12 - runner.failed.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
