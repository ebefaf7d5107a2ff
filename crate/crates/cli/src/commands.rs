use binodyn_core::check::{fmt_rational, Trace};
use binodyn_core::colliding::expand::specialization_check;
use binodyn_core::colliding::{collision_search, lemma51_check, verify_hits};
use binodyn_core::dynlab::eps::orbit_identity_check;
use binodyn_core::dynlab::height::sandwich_check;
use binodyn_core::dynlab::identities::{
    additive_identity_check, divided_difference_tower, eps2bar_identity, s2eq1_sum_identity, FiberRoots,
};
use binodyn_core::dynlab::{
    eps_sequences, global_canonical_height, param_preperiodicity_polys, prep_verdict, preperiodic, BinomialFamily,
    Exactness, OrbitStatus,
};
use binodyn_core::gfq::{Elem, Field, FieldSpec, GfElem};
use binodyn_core::newton::fiber_analyze;
use binodyn_core::places::exceptional_set;
use binodyn_core::ratfunc::expr::{parse_poly_x, parse_rat};
use binodyn_core::ratfunc::RatFunc;
use binodyn_core::{Error, Result};
use serde_json::{json, Map, Value};

use crate::report::{rat, Report};

pub struct Ctx {
    pub field: Field,
    pub field_text: String,
    pub seed: u64,
    pub max_steps: usize,
    pub precision_steps: usize,
}

fn opt_rat(r: &Option<binodyn_core::check::Rational>) -> Value {
    r.as_ref().map_or(Value::Null, rat)
}

impl Ctx {
    fn family(&self, f: &str) -> Result<BinomialFamily> {
        BinomialFamily::from_poly(&parse_poly_x(f, &self.field)?)
    }

    fn rat(&self, src: &str) -> Result<RatFunc> {
        parse_rat(src, &self.field)
    }

    fn inputs(&self, fam: Option<&BinomialFamily>, extra: &[(&str, String)]) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("field".into(), json!(self.field_text));
        if let Some(fam) = fam {
            m.insert("f".into(), json!(fam.poly().format_var("x")));
        }
        for (k, v) in extra {
            m.insert((*k).into(), json!(v));
        }
        m
    }
}

fn results(report: &mut Report) -> &mut Map<String, Value> {
    match &mut report.results {
        Value::Object(m) => m,
        _ => unreachable!("results is an object"),
    }
}

pub fn classify(ctx: &Ctx, f: &str) -> Result<Report> {
    let fam = ctx.family(f)?;
    let mut rep = Report::new("classify", ctx.inputs(Some(&fam), &[]));
    let p = fam.p();
    let r = results(&mut rep);
    r.insert("p".into(), json!(p));
    r.insert("c1".into(), json!(ctx.field.format_expr(fam.c1)));
    r.insert("c2".into(), json!(ctx.field.format_expr(fam.c2)));
    r.insert("d1".into(), json!({ "d": fam.d1, "l": fam.l1, "s": fam.s1 }));
    r.insert("d2".into(), json!({ "d": fam.d2, "l": fam.l2, "s": fam.s2 }));
    r.insert("rho".into(), opt_rat(&fam.rho));
    r.insert("rho_prime".into(), opt_rat(&fam.rho_prime));
    r.insert("regime".into(), json!(fam.regime.name()));
    r.insert("governing".into(), json!(fam.regime.governing()));
    for (name, d, l, s) in [("d1", fam.d1, fam.l1, fam.s1), ("d2", fam.d2, fam.l2, fam.s2)] {
        rep.assert(format!("{name} = p^l s with p not dividing s"), p.pow(l) * s == d && s % p != 0, format!("{d} = {p}^{l} * {s}"));
    }
    Ok(rep)
}

pub fn verdict(ctx: &Ctx, f: &str, alpha: &str, beta: &str) -> Result<Report> {
    let fam = ctx.family(f)?;
    let (a, b) = (ctx.rat(alpha)?, ctx.rat(beta)?);
    let v = prep_verdict(&fam, &a, &b)?;
    let mut rep = Report::new("verdict", ctx.inputs(Some(&fam), &[("alpha", a.to_string()), ("beta", b.to_string())]));
    let evidence: Vec<Value> =
        v.evidence.checks.iter().map(|c| json!({ "name": c.name, "holds": c.pass, "detail": c.detail })).collect();
    let r = results(&mut rep);
    r.insert("outcome".into(), json!(v.outcome.name()));
    r.insert("reason".into(), json!(v.outcome.to_string()));
    r.insert("regime".into(), json!(v.regime.name()));
    r.insert("eps1".into(), json!(v.eps1.to_string()));
    r.insert("necessary_conditions".into(), Value::Array(evidence));
    rep.assert_trace(&v.assertions);
    Ok(rep)
}

pub fn fiber(ctx: &Ctx, f: &str, alpha: &str) -> Result<Report> {
    let fam = ctx.family(f)?;
    let a = ctx.rat(alpha)?;
    let s = exceptional_set(&a, &a)?;
    let data = fiber_analyze(&fam, &a, &s)?;
    let mut rep = Report::new("fiber", ctx.inputs(Some(&fam), &[("alpha", a.to_string())]));
    let places: Vec<Value> = data
        .per_place
        .iter()
        .map(|pf| {
            json!({
                "place": pf.place.to_string(),
                "c_v": rat(&pf.c_v),
                "multiset": pf.multiset.iter().map(rat).collect::<Vec<_>>(),
            })
        })
        .collect();
    let r = results(&mut rep);
    r.insert("count".into(), json!(data.count));
    r.insert("separable".into(), json!(data.separable));
    r.insert("g1".into(), json!(data.g1.format_var("x")));
    r.insert("rho".into(), opt_rat(&fam.rho));
    r.insert("per_place".into(), Value::Array(places));
    rep.assert_trace(&data.trace);
    Ok(rep)
}

pub fn heights(ctx: &Ctx, f: &str, lambda: &str, x: &str) -> Result<Report> {
    let fam = ctx.family(f)?;
    let (l, z) = (ctx.rat(lambda)?, ctx.rat(x)?);
    let h = global_canonical_height(&fam, &l, &z, ctx.precision_steps)?;
    let orbit = preperiodic(&fam, &l, &z, ctx.max_steps)?;
    let mut rep = Report::new("heights", ctx.inputs(Some(&fam), &[("lambda", l.to_string()), ("x", z.to_string())]));
    let locals: Vec<Value> = h
        .locals
        .iter()
        .map(|(v, lh)| {
            let bound = match lh.exactness {
                Exactness::Exact => Value::Null,
                Exactness::UpperBounded(b) => rat(&b),
            };
            json!({ "place": v.to_string(), "value": rat(&lh.value), "exact": lh.is_exact(), "error_bound": bound })
        })
        .collect();
    let status = match &orbit.status {
        OrbitStatus::Preperiodic { tail, period } => json!({ "kind": "preperiodic", "tail": tail, "period": period }),
        OrbitStatus::Escaping { place, index, value } => {
            json!({ "kind": "escaping", "place": place.to_string(), "index": index, "abs_log": rat(value) })
        }
        OrbitStatus::Undecided { steps } => json!({ "kind": "undecided", "steps": steps }),
    };
    let r = results(&mut rep);
    r.insert("locals".into(), Value::Array(locals));
    r.insert("lower".into(), rat(&h.lower));
    r.insert("upper".into(), rat(&h.upper));
    r.insert("exact".into(), json!(h.is_exact()));
    r.insert("steps".into(), json!(h.steps));
    r.insert("orbit".into(), status);
    rep.assert_trace(&sandwich_check(&fam, &l, &z, &h));
    if orbit.is_preperiodic() {
        let zero = h.lower == binodyn_core::check::int(0);
        rep.assert("preperiodic points have height 0", zero, format!("lower bound {}", fmt_rational(&h.lower)));
    }
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    All,
    Orbit,
    Additive,
    Sum,
    Expansion,
    Tower,
}

fn skipped(e: &Error) -> bool {
    matches!(e, Error::NotAdditive | Error::WrongShape(_) | Error::RhoUndefined | Error::WrongRegime(_))
}

pub fn identities(ctx: &Ctx, f: &str, alpha: &str, beta: &str, which: Which, lambda: &str, n: usize) -> Result<Report> {
    let fam = ctx.family(f)?;
    let (a, b, l) = (ctx.rat(alpha)?, ctx.rat(beta)?, ctx.rat(lambda)?);
    let mut rep = Report::new(
        "identities",
        ctx.inputs(Some(&fam), &[("alpha", a.to_string()), ("beta", b.to_string()), ("lambda", l.to_string())]),
    );
    let eps1 = fam.eval(&b).sub(&fam.eval(&a));
    let wanted = |w: Which| which == Which::All || which == w;
    let mut run = Vec::new();
    let mut skip = Vec::new();
    let mut note = |name: &str, res: Result<Trace>, rep: &mut Report| -> Result<()> {
        match res {
            Ok(t) => {
                rep.assert_trace(&t);
                run.push(json!(name));
                Ok(())
            }
            Err(e) if which == Which::All && skipped(&e) => {
                skip.push(json!({ "identity": name, "reason": e.to_string() }));
                Ok(())
            }
            Err(e) => Err(e),
        }
    };
    if wanted(Which::Orbit) {
        let res = eps_sequences(&fam, &a, &b, n, None).map(|s| orbit_identity_check(&fam, &a, &b, &s));
        note("orbit", res, &mut rep)?;
    }
    if wanted(Which::Additive) {
        note("additive", additive_identity_check(&fam, &a, &b, &l, n).map(|r| r.trace), &mut rep)?;
    }
    if wanted(Which::Sum) {
        note("sum", s2eq1_sum_identity(&fam, &a, &b), &mut rep)?;
    }
    if wanted(Which::Expansion) {
        note("expansion", Ok(eps2bar_identity(&fam, &a, &eps1)), &mut rep)?;
    }
    if wanted(Which::Tower) {
        let res = divided_difference_tower(&fam, &a, &eps1, &FiberRoots::Symbolic).map(|t| {
            results(&mut rep).insert(
                "tower_degrees".into(),
                json!(t.degrees.iter().map(|d| d.map_or(Value::Null, |d| json!(d))).collect::<Vec<_>>()),
            );
            t.trace
        });
        note("tower", res, &mut rep)?;
    }
    let r = results(&mut rep);
    r.insert("eps1".into(), json!(eps1.to_string()));
    r.insert("checked".into(), Value::Array(run));
    r.insert("skipped".into(), Value::Array(skip));
    Ok(rep)
}

pub fn lemma51(ctx: &Ctx, f: &str, n: usize) -> Result<Report> {
    let fam = ctx.family(f)?;
    let l = lemma51_check(&fam, n)?;
    let mut rep = Report::new("lemma51", ctx.inputs(Some(&fam), &[("n", n.to_string())]));
    rep.assert_trace(&l.trace);
    let last = l.expansions.last().expect("n >= 1");
    rep.assert_trace(&specialization_check(&fam, last, 4, ctx.seed));
    let a: Vec<Value> = l.expansions.iter().map(|e| json!(e.a_n.format_var("x"))).collect();
    let r = results(&mut rep);
    r.insert("b".into(), json!(l.b));
    r.insert("b_prime".into(), json!(l.b_prime));
    r.insert("a".into(), Value::Array(a));
    r.insert(
        "u".into(),
        Value::Array(l.u.iter().map(|(k, e)| json!({ "n": k, "u": ctx.field.format_expr(*e) })).collect()),
    );
    r.insert("a2_equals_s1_frobenius_f".into(), json!(l.a2_without_c1));
    r.insert("lambda_degree".into(), json!(last.coeffs.len() - 1));
    r.insert("bipoly_terms".into(), json!(last.bipoly.terms().len()));
    Ok(rep)
}

fn parse_elem(field: &Field, src: &str) -> Result<Elem> {
    if src.contains(',') {
        return field.parse_coords(src);
    }
    let r = parse_rat(src, field)?;
    r.constant_value().ok_or_else(|| Error::Precondition(format!("{src} is not a constant of {field}")))
}

pub fn collide(ctx: &Ctx, search: Option<&str>, f: &str, a1: &str, a2: &str, beta: &str) -> Result<Report> {
    let fam = ctx.family(f)?;
    let (search_text, sf) = match search {
        Some(s) => (s.to_string(), FieldSpec::parse(s)?),
        None => (ctx.field_text.clone(), ctx.field.clone()),
    };
    let (x1, x2, b) = (parse_elem(&sf, a1)?, parse_elem(&sf, a2)?, parse_elem(&sf, beta)?);
    let show = |e: Elem| GfElem::new(&sf, e).to_string();
    let mut rep = Report::new(
        "collide",
        ctx.inputs(
            Some(&fam),
            &[("search", search_text), ("alpha1", show(x1)), ("alpha2", show(x2)), ("beta", show(b))],
        ),
    );
    let set = collision_search(&fam, &sf, x1, x2, b)?;
    let verified = verify_hits(&fam, &set, x1, x2, b);
    let fe = if fam.field.same(&sf) { fam.clone() } else { fam.embed(&sf)? };
    let collide = fe.eval_elem(x1) == fe.eval_elem(x2);
    let hits: Vec<Value> =
        set.hits.iter().map(|h| json!({ "lambda": show(h.lambda), "m": h.m, "n": h.n })).collect();
    let r = results(&mut rep);
    r.insert("q".into(), json!(sf.q()));
    r.insert("f_alpha1_equals_f_alpha2".into(), json!(collide));
    r.insert("count".into(), json!(set.hits.len()));
    r.insert("hits".into(), Value::Array(hits));
    rep.assert(
        "every witness re-verified by iteration",
        verified.is_ok(),
        verified.err().map_or(format!("{} witnesses", set.hits.len()), |e| e.to_string()),
    );
    if collide {
        let same = set.membership.iter().all(|(m, n)| m == n);
        rep.assert("f(alpha1) = f(alpha2) gives identical hitting times", same, format!("{} parameters", set.membership.len()));
    }
    Ok(rep)
}

pub fn parse_pairs(src: &str) -> Result<Vec<(usize, usize)>> {
    let bad = || Error::Parse { offset: 0, message: format!("pairs must look like 1:0,2:1, got {src:?}") };
    src.split(',')
        .map(|p| {
            let (m, n) = p.split_once(':').ok_or_else(bad)?;
            let (m, n) = (m.trim().parse::<usize>().map_err(|_| bad())?, n.trim().parse::<usize>().map_err(|_| bad())?);
            if m <= n {
                return Err(Error::Precondition(format!("need m > n, got ({m}, {n})")));
            }
            Ok((m, n))
        })
        .collect()
}

pub fn params(ctx: &Ctx, f: &str, alpha: &str, pairs: &str) -> Result<Report> {
    let fam = ctx.family(f)?;
    let a = ctx.rat(alpha)?;
    let pairs = parse_pairs(pairs)?;
    let ps = param_preperiodicity_polys(&fam, &a, &pairs);
    let shown: Vec<String> = pairs.iter().map(|(m, n)| format!("{m}:{n}")).collect();
    let mut rep = Report::new("params", ctx.inputs(Some(&fam), &[("alpha", a.to_string()), ("pairs", shown.join(","))]));
    let mut entries = Vec::new();
    for p in &ps {
        let root_ok = p.poly.eval(&a.sub(&fam.eval(&a))).is_zero();
        if p.n == 0 {
            rep.assert(
                format!("lambda = alpha - f(alpha) is a root of P_{{{},0}}", p.m),
                root_ok,
                format!("P at lambda_alpha = {}", p.poly.eval(&a.sub(&fam.eval(&a)))),
            );
        }
        entries.push(json!({
            "m": p.m,
            "n": p.n,
            "degree": p.poly.degree(),
            "distinct_roots": p.distinct_roots,
        }));
    }
    results(&mut rep).insert("polys".into(), Value::Array(entries));
    Ok(rep)
}
