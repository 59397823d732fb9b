//! Case 3: a is not a square in F_{q^2} and n is odd. Everything is
//! written in u, v, w with z^2 = -1.

use crate::polyring::{gcd_univariate, is_irreducible_f3, resultant, substitute_rational, MPoly, RelationSet, UPoly, VarRegistry};
use crate::ppcheck::CaseId;

use super::case1::obstruction_steps;
use super::check::{construction_steps, registry, Outcome, Part};
use super::{Ctx, ReplayError, ReplayStep, StepKind};

const C3: &str = "3";
const C31: &str = "3.1";
const C32: &str = "3.2";
const VARS: [&str; 3] = ["u", "v", "w"];

pub fn steps() -> Vec<ReplayStep> {
    let mut v = construction_steps(
        CaseId::C3,
        C3,
        &[
            ("3.74", "c3_A", Part::A),
            ("3.75", "c3_B", Part::B),
            ("3.76", "c3_C0", Part::C(0)),
            ("3.77", "c3_C1", Part::C(1)),
            ("3.78", "c3_C2", Part::C(2)),
            ("3.79", "c3_C3", Part::C(3)),
            ("3.81", "c3_e0", Part::E(0)),
            ("3.82", "c3_e1", Part::E(1)),
            ("3.83", "c3_e2", Part::E(2)),
            ("3.84", "c3_e3", Part::E(3)),
            ("3.85", "c3_e4", Part::E(4)),
        ],
    );
    v.extend(obstruction_steps(CaseId::C3, C3, ["3.86", "3.87"], ["c3_id1", "c3_id2"]));
    v.extend(main_resultants());
    v.extend(u_minus_one());
    v.extend(square_branch());
    v.extend(l_branch());
    v.extend(reduction_chain(&P7_CHAIN));
    v.extend(reduction_chain(&P21_CHAIN));
    v.extend(k1_branch());
    v.extend(p11_branch(&V0_BRANCH));
    v.extend(p11_branch(&U0_BRANCH));
    v.extend(v_zero());
    v
}

type Body = dyn Fn(&Ctx<'_>, &VarRegistry) -> Result<Outcome, ReplayError> + Send + Sync;

fn step(id: &str, case: &'static str, kind: StepKind, body: impl Fn(&Ctx<'_>, &VarRegistry) -> Result<Outcome, ReplayError> + Send + Sync + 'static) -> ReplayStep {
    let reg = registry(&VARS);
    let body: Box<Body> = Box::new(body);
    ReplayStep::new(id, case, kind, move |cx| body(cx, &reg))
}

fn h(cx: &Ctx<'_>, r: &VarRegistry) -> Result<[MPoly; 2], ReplayError> {
    Ok([cx.poly("A6", r)?, cx.poly("A7", r)?])
}

/// A fixture written in X, read as a polynomial in `var`.
fn at(cx: &Ctx<'_>, r: &VarRegistry, id: &str, var: &str) -> Result<MPoly, ReplayError> {
    cx.poly_as(id, r, &[var])
}

/// Relations from X-fixtures, each read in the paired variable.
fn modulo(cx: &Ctx<'_>, r: &VarRegistry, rels: &[(&str, &str)]) -> Result<RelationSet, ReplayError> {
    let mut set = RelationSet::new();
    for &(id, var) in rels {
        set = set.with(r.var(var)?, at(cx, r, id, var)?, id)?;
    }
    Ok(set)
}

fn subs(p: &MPoly, r: &VarRegistry, vals: &[(&str, i64)]) -> Result<MPoly, ReplayError> {
    let mut out = p.clone();
    for &(n, c) in vals {
        out = out.subs_const(r.var(n)?, c);
    }
    Ok(out)
}

/// Every nonconstant written factor of `id` is irreducible, and of even
/// degree when `even` is set.
fn factor_battery(cx: &Ctx<'_>, r: &VarRegistry, id: &str, even: bool, mut o: Outcome) -> Result<Outcome, ReplayError> {
    for (p, _) in cx.factors(id, r)? {
        let var = match p.support()[..] {
            [] => continue,
            [var] => var,
            _ => return Err(ReplayError::Step(format!("factor of {id} is not univariate"))),
        };
        o = o.holds(format!("factor of {id} irreducible"), is_irreducible_f3(&p, var)?);
        if even {
            o = o.holds(format!("factor of {id} of even degree"), p.degree(var) % 2 == 0);
        }
    }
    Ok(o)
}

fn irreducible(cx: &Ctx<'_>, ids: &[&str], mut o: Outcome) -> Result<Outcome, ReplayError> {
    for id in ids {
        o = o.holds(format!("{id} irreducible"), cx.upoly(id)?.is_irreducible());
    }
    Ok(o)
}

fn main_resultants() -> Vec<ReplayStep> {
    [("3.88", "u", "c3_res_u"), ("3.89", "v", "c3_res_v"), ("3.90", "w", "c3_res_w")]
        .into_iter()
        .map(|(id, var, expected)| {
            step(id, C3, StepKind::Resultant, move |cx, r| {
                let [h1, h2] = h(cx, r)?;
                let res = resultant(&h1, &h2, r.var(var)?)?;
                Ok(Outcome::new().eq(format!("Res(h1, h2; {var})"), &res, &cx.poly(expected, r)?))
            })
        })
        .collect()
}

fn u_minus_one() -> Vec<ReplayStep> {
    use StepKind::*;
    vec![
        step("3.95", C31, Substitute, |cx, r| {
            let [h1, _] = h(cx, r)?;
            Ok(Outcome::new().eq("h1 at u = -1", &subs(&h1, r, &[("u", -1)])?, &cx.poly("c3_h1_um1", r)?))
        }),
        step("3.96", C31, Substitute, |cx, r| {
            let [_, h2] = h(cx, r)?;
            Ok(Outcome::new().eq("h2 at u = -1", &subs(&h2, r, &[("u", -1)])?, &cx.poly("c3_h2_um1", r)?))
        }),
        step("3.99", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("H1", r)?, &cx.poly("H2", r)?, r.var("v")?)?;
            Ok(Outcome::new().eq("Res(H1, H2; v)", &res, &cx.poly("c3_resH_v", r)?))
        }),
        step("3.100", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("H1", r)?, &cx.poly("H2", r)?, r.var("w")?)?;
            Ok(Outcome::new().eq("Res(H1, H2; w)", &res, &cx.poly("c3_resH_w", r)?))
        }),
        step("after-3.100", C31, Substitute, |cx, r| {
            let [h1, _] = h(cx, r)?;
            let e4 = cx.poly("c3_e4", r)?;
            Ok(Outcome::new()
                .eq("h1 at u = -1, w = 1", &subs(&h1, r, &[("u", -1), ("w", 1)])?, &cx.poly("c3_h1_um1_w1", r)?)
                .eq("h1 at u = -1, w = -1", &subs(&h1, r, &[("u", -1), ("w", -1)])?, &cx.poly("c3_h1_um1_wm1", r)?)
                .holds("e4 vanishes at u = v = w = -1", subs(&e4, r, &[("u", -1), ("v", -1), ("w", -1)])?.is_zero()))
        }),
        step("after-3.101", C31, Substitute, |cx, r| {
            let [h1, _] = h(cx, r)?;
            let h1_wmu = h1.substitute(r.var("w")?, &r.poly("u")?.neg());
            let sumsq = cx.poly("c3_sumsq", r)?;
            let in_res = cx.factors("c3_res_v", r)?.iter().any(|(p, _)| *p == sumsq);
            Ok(Outcome::new()
                .eq("sum of two squares", &sumsq, &cx.poly("c3_sumsq_alt", r)?)
                .holds("factor of Res(h1, h2; v)", in_res)
                .eq("h1 at w = -u", &h1_wmu, &cx.poly("c3_h1_wmu", r)?))
        }),
        step("3.103", C31, Resultant, |cx, r| {
            let [h1, h2] = h(cx, r)?;
            let z = [("w", 0)];
            let res = resultant(&subs(&h1, r, &z)?, &subs(&h2, r, &z)?, r.var("v")?)?;
            Ok(Outcome::new().eq("Res(h1, h2; v) at w = 0", &res, &cx.poly("c3_res_w0", r)?))
        }),
        step("3.104", C31, Substitute, |cx, r| {
            let [h1, _] = h(cx, r)?;
            let w = r.poly("v")?.add(&MPoly::one(r.len()));
            Ok(Outcome::new().eq("h1 at w = 1 + v", &h1.substitute(r.var("w")?, &w), &cx.poly("c3_h1_w1v", r)?))
        }),
        step("3.105", C31, Substitute, |cx, r| {
            let [_, h2] = h(cx, r)?;
            let w = r.poly("v")?.add(&MPoly::one(r.len()));
            Ok(Outcome::new().eq("h2 at w = 1 + v", &h2.substitute(r.var("w")?, &w), &cx.poly("c3_h2_w1v", r)?))
        }),
        step("after-3.105", C31, Resultant, |cx, r| {
            // the last written factors of h1 and h2 at w = 1 + v
            let last = |id: &str| -> Result<MPoly, ReplayError> {
                cx.factors(id, r)?.pop().map(|(p, _)| p).ok_or_else(|| ReplayError::Step(format!("{id} has no factors")))
            };
            let res = resultant(&last("c3_h1_w1v")?, &last("c3_h2_w1v")?, r.var("v")?)?;
            Ok(Outcome::new().eq("Res(-1+u^2-v, 1+u-v+v^2; v)", &res, &cx.poly("c3_res_w1v", r)?))
        }),
    ]
}

fn square_rel(r: &VarRegistry) -> Result<MPoly, ReplayError> {
    let (u, w) = (r.poly("u")?, r.poly("w")?);
    Ok(u.pow(2).add(&w).add(&w.pow(2)))
}

/// The branch u^2 + w + w^2 = 0.
fn square_branch() -> Vec<ReplayStep> {
    use StepKind::*;
    vec![
        step("3.108", C31, Resultant, |cx, r| {
            let res = resultant(&square_rel(r)?, &cx.poly("M", r)?, r.var("u")?)?;
            Ok(Outcome::new().eq("Res(u^2+w+w^2, M; u)", &res, &cx.poly("S", r)?))
        }),
        step("3.109", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("S", r)?, &cx.poly("K1", r)?, r.var("v")?)?;
            Ok(Outcome::new().eq("Res(S, K1; v)", &res, &cx.poly("c3_resSK1_v", r)?))
        }),
        step("3.110", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("S", r)?, &cx.poly("K1", r)?, r.var("w")?)?;
            Ok(Outcome::new().eq("Res(S, K1; w)", &res, &cx.poly("c3_resSK1_w", r)?))
        }),
        step("3.109-irreducible", C31, Irreducible, |cx, r| {
            let o = factor_battery(cx, r, "c3_resSK1_v", false, Outcome::new())?;
            factor_battery(cx, r, "c3_resSK1_w", false, o)
        }),
        step("after-3.112", C31, Substitute, |cx, r| {
            let [h1, _] = h(cx, r)?;
            Ok(Outcome::new()
                .eq("h1 at u = w = 1", &subs(&h1, r, &[("u", 1), ("w", 1)])?, &cx.poly("c3_h1_u1w1", r)?)
                .eq("M at v = -1", &subs(&cx.poly("M", r)?, r, &[("v", -1)])?, &cx.poly("c3_M_vm1", r)?))
        }),
        step("u^2", C31, RootSearch, |cx, _| square_root(cx, "P21a", "u0", 21)),
        step("res-u0", C31, Resultant, |cx, r| root_resultant_mod(cx, r, ("u0", 1), "P21a", "Q21a", "A8")),
        step("res-u0-", C31, Resultant, |cx, r| root_resultant_mod(cx, r, ("u0", -1), "P21a", "Q21a", "A9")),
        step("3.113", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("S", r)?, &cx.poly("K2", r)?, r.var("v")?)?;
            Ok(Outcome::new().eq("Res(S, K2; v)", &res, &cx.poly("c3_resSK2_v", r)?))
        }),
        step("3.114", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("S", r)?, &cx.poly("K2", r)?, r.var("w")?)?;
            Ok(Outcome::new().eq("Res(S, K2; w)", &res, &cx.poly("c3_resSK2_w", r)?))
        }),
        step("3.113-irreducible", C31, Irreducible, |cx, r| {
            let o = factor_battery(cx, r, "A10", true, Outcome::new())?;
            let o = factor_battery(cx, r, "A11", true, o)?;
            irreducible(cx, &["P15", "Q9", "Q15"], o)
        }),
        step("after-3.117", C31, RootSearch, |cx, _| square_root(cx, "P15", "u1", 15)),
        step("res-u1", C31, Resultant, |cx, r| root_resultant(cx, r, ("u1", 1), "A12")),
        step("res-u1-", C31, Resultant, |cx, r| root_resultant(cx, r, ("u1", -1), "A13")),
    ]
}

/// With w a root of `modulus` of degree n, -w-w^2 is a square in F_{3^n}
/// and `root` is its square root (-w-w^2)^((3^n+1)/4).
fn square_root(cx: &Ctx<'_>, modulus: &str, root: &str, n: u32) -> Result<Outcome, ReplayError> {
    let m = cx.upoly(modulus)?;
    let t = UPoly::from_ints(&[0, -1, -1]).rem(&m);
    let q = 3u128.pow(n);
    let u0 = cx.upoly(root)?;
    Ok(Outcome::new()
        .upoly_eq("(-w-w^2)^((q-1)/2) = 1", &t.powmod((q - 1) / 2, &m), &UPoly::one())
        .upoly_eq("root is (-w-w^2)^((q+1)/4)", &t.powmod((q + 1) / 4, &m), &u0)
        .upoly_eq("root squared", &u0.mul(&u0).rem(&m), &t))
}

/// Res(h1, h2; w) at u = ±root, with h_i first reduced modulo the
/// polynomial w is a root of.
fn reduced_resultant(cx: &Ctx<'_>, r: &VarRegistry, (root, sign): (&str, i64), modulus: &str) -> Result<MPoly, ReplayError> {
    let val = cx.poly(root, r)?.scale(sign);
    let rel = modulo(cx, r, &[(modulus, "w")])?;
    let [h1, h2] = h(cx, r)?;
    let u = r.var("u")?;
    let h1 = rel.reduce(&h1.substitute(u, &val));
    let h2 = rel.reduce(&h2.substitute(u, &val));
    Ok(resultant(&h1, &h2, r.var("w")?)?)
}

fn root_resultant_mod(cx: &Ctx<'_>, r: &VarRegistry, root: (&str, i64), pw: &str, qv: &str, expected: &str) -> Result<Outcome, ReplayError> {
    let res = reduced_resultant(cx, r, root, pw)?;
    let v = r.var("v")?;
    let q = cx.upoly(qv)?;
    let got = UPoly::from_mpoly(&res, v)?.rem(&q);
    let want = UPoly::from_mpoly(&cx.poly(expected, r)?, v)?;
    Ok(Outcome::new()
        .upoly_eq(format!("resultant modulo {qv}"), &got, &want.rem(&q))
        .holds(format!("{qv} does not divide it"), !got.is_zero()))
}

fn root_resultant(cx: &Ctx<'_>, r: &VarRegistry, root: (&str, i64), expected: &str) -> Result<Outcome, ReplayError> {
    let res = reduced_resultant(cx, r, root, "P15")?;
    let mut o = Outcome::new().eq("Res(h1, h2; w)", &res, &cx.poly(expected, r)?);
    for q in ["Q9", "Q15"] {
        o = o.not_divides(format!("{q}(v) does not divide it"), &at(cx, r, q, "v")?, &res);
    }
    factor_battery(cx, r, expected, false, o)
}

/// The branch L = 0 with K1 != 0.
fn l_branch() -> Vec<ReplayStep> {
    use StepKind::*;
    vec![
        step("3.118", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("L", r)?, &cx.poly("M", r)?, r.var("u")?)?;
            Ok(Outcome::new().eq("Res(L, M; u)", &res, &cx.poly("c3_resLM_u", r)?))
        }),
        step("3.120", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("Q", r)?, &cx.poly("K2", r)?, r.var("v")?)?;
            Ok(Outcome::new().eq("Res(Q, K2; v)", &res, &cx.poly("c3_resQK2_v", r)?))
        }),
        step("3.121", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("Q", r)?, &cx.poly("K2", r)?, r.var("w")?)?;
            Ok(Outcome::new().eq("Res(Q, K2; w)", &res, &cx.poly("c3_resQK2_w", r)?))
        }),
        step("3.120-irreducible", C31, Irreducible, |cx, r| {
            let o = factor_battery(cx, r, "A14", true, Outcome::new())?;
            let o = factor_battery(cx, r, "A15", true, o)?;
            irreducible(cx, &["P7", "P21b", "Q7", "Q21b"], o)
        }),
        step("after-3.125-P7", C31, Resultant, |cx, r| {
            let res = resultant(&at(cx, r, "P7", "w")?, &cx.poly("K2", r)?, r.var("w")?)?;
            Ok(Outcome::new()
                .eq("Res(P7(w), K2; w)", &res, &cx.poly("c3_resP7K2", r)?)
                .not_divides("Q21b(v) does not divide it", &at(cx, r, "Q21b", "v")?, &res))
        }),
        step("after-3.125-Q7", C31, Resultant, |cx, r| {
            let res = resultant(&at(cx, r, "Q7", "v")?, &cx.poly("K2", r)?, r.var("v")?)?;
            Ok(Outcome::new()
                .eq("Res(Q7(v), K2; v)", &res, &cx.poly("c3_resQ7K2", r)?)
                .not_divides("P21b(w) does not divide it", &at(cx, r, "P21b", "w")?, &res))
        }),
    ]
}

/// Fixture ids of one elimination of u modulo P(w) = Q(v) = 0.
struct Chain {
    suffix: &'static str,
    p: &'static str,
    q: &'static str,
    vinv2: &'static str,
    cubic: &'static str,
    /// h10, h11, h12, h20, h21, h22, A0, A1, U, V.
    app: [&'static str; 10],
    res_a1: &'static str,
    res_u: &'static str,
}

const P7_CHAIN: Chain = Chain {
    suffix: "",
    p: "P7",
    q: "Q7",
    vinv2: "c3_vinv2_q7",
    cubic: "c3_cubic_q7",
    app: ["A16", "A17", "A18", "A19", "A20", "A21", "A22", "A23", "A24", "A25"],
    res_a1: "c3_resK2A1_p7",
    res_u: "c3_resK2U_p7",
};

const P21_CHAIN: Chain = Chain {
    suffix: "-1",
    p: "P21b",
    q: "Q21b",
    vinv2: "c3_vinv2_q21",
    cubic: "c3_cubic_q21",
    app: ["A26", "A27", "A28", "A29", "A30", "A31", "A32", "A33", "A34", "A35"],
    res_a1: "c3_resK2A1_p21",
    res_u: "c3_resK2U_p21",
};

impl Chain {
    fn base(&self, cx: &Ctx<'_>, r: &VarRegistry) -> Result<RelationSet, ReplayError> {
        modulo(cx, r, &[(self.p, "w"), (self.q, "v")])
    }

    fn app(&self, cx: &Ctx<'_>, r: &VarRegistry, i: usize) -> Result<MPoly, ReplayError> {
        cx.poly(self.app[i], r)
    }

    /// Res(K2, p; v) reduced modulo P(w) equals `expected` and is nonzero.
    fn res_k2(&self, cx: &Ctx<'_>, r: &VarRegistry, p: &MPoly, expected: &str, label: &str) -> Result<Outcome, ReplayError> {
        let res = resultant(&cx.poly("K2", r)?, p, r.var("v")?)?;
        let red = modulo(cx, r, &[(self.p, "w")])?.reduce(&res);
        Ok(Outcome::new()
            .eq(format!("Res(K2, {label}; v) modulo {}", self.p), &red, &cx.poly(expected, r)?)
            .holds("nonzero", !red.is_zero()))
    }
}

fn reduction_chain(c: &'static Chain) -> Vec<ReplayStep> {
    use StepKind::*;
    let id = |s: &str| format!("{s}{}", c.suffix);
    let redp = if c.suffix.is_empty() { "redp7q7" } else { "redp21q21" };
    vec![
        step(&id("v-2M"), C31, Reduce, move |cx, r| {
            let base = c.base(cx, r)?;
            let vinv2 = cx.poly(c.vinv2, r)?;
            let one = MPoly::one(r.len());
            let cubic = cx.poly(c.cubic, r)?;
            Ok(Outcome::new()
                .eq_mod("v^-2 v^2 = 1", &vinv2.mul(&r.poly("v")?.pow(2)), &one, &base)
                .eq_mod("v^-2 M", &vinv2.mul(&cx.poly("M", r)?), &cubic, &base)
                .holds("monic cubic in u", cubic.degree(r.var("u")?) == 3 && cubic.lc_in(r.var("u")?) == one))
        }),
        step(redp, C31, Reduce, move |cx, r| {
            let u = r.var("u")?;
            let rels = RelationSet::new()
                .with(u, cx.poly(c.cubic, r)?, "v^-2 M")?
                .with(r.var("w")?, at(cx, r, c.p, "w")?, c.p)?
                .with(r.var("v")?, at(cx, r, c.q, "v")?, c.q)?;
            let mut o = Outcome::new();
            for (i, hi) in h(cx, r)?.iter().enumerate() {
                let mut parts = rels.reduce(hi).coeffs_in(u);
                parts.resize(3, MPoly::zero(r.len()));
                for (j, part) in parts.iter().enumerate() {
                    o = o.eq(format!("h{}{j}", i + 1), part, &c.app(cx, r, 3 * i + j)?);
                }
            }
            Ok(o)
        }),
        step(&id("A0A1"), C31, Reduce, move |cx, r| {
            let base = c.base(cx, r)?;
            let hij = (0..6).map(|i| c.app(cx, r, i)).collect::<Result<Vec<_>, _>>()?;
            let a0 = hij[5].mul(&hij[0]).sub(&hij[2].mul(&hij[3]));
            let a1 = hij[5].mul(&hij[1]).sub(&hij[2].mul(&hij[4]));
            Ok(Outcome::new()
                .eq("A0", &base.reduce(&a0), &c.app(cx, r, 6)?)
                .eq("A1", &base.reduce(&a1), &c.app(cx, r, 7)?))
        }),
        step(&id("after-A0A1"), C31, Resultant, move |cx, r| c.res_k2(cx, r, &c.app(cx, r, 7)?, c.res_a1, "A1")),
        step(&id("U/V"), C31, Substitute, move |cx, r| {
            // h1 at u = -A0/A1 is (h10 A1^2 - h11 A0 A1 + h12 A0^2) / A1^2
            let base = c.base(cx, r)?;
            let p = |i| c.app(cx, r, i);
            let (a0, a1) = (p(6)?, p(7)?);
            let num = p(0)?.mul(&a1.pow(2)).sub(&p(1)?.mul(&a0).mul(&a1)).add(&p(2)?.mul(&a0.pow(2)));
            let den = a1.pow(2);
            let (uu, vv) = (p(8)?, p(9)?);
            Ok(Outcome::new()
                .eq_mod("U A1^2 = V num", &uu.mul(&den), &vv.mul(&num), &base)
                .holds("V nonzero", !base.reduce(&vv).is_zero()))
        }),
        step(&id("after-U/V"), C31, Resultant, move |cx, r| c.res_k2(cx, r, &c.app(cx, r, 8)?, c.res_u, "U")),
    ]
}

/// The branch K1 = 0 solved for w.
fn k1_branch() -> Vec<ReplayStep> {
    use StepKind::*;
    vec![
        step("3.126", C31, Identity, |cx, r| {
            let lhs = cx.poly("alpha", r)?.mul(&cx.poly("K1", r)?).add(&cx.poly("beta", r)?.mul(&cx.poly("L", r)?));
            Ok(Outcome::new().eq("alpha K1 + beta L", &lhs, &cx.poly("c3_bezout", r)?))
        }),
        step("3.131", C31, Substitute, |cx, r| {
            let (num, den) = substitute_rational(&cx.poly("c3_e4", r)?, r.var("w")?, &cx.poly("eta", r)?, &cx.poly("lambda", r)?)?;
            let lhs = num.mul(&cx.poly("c3_e4_eta_den", r)?);
            let rhs = cx.poly("c3_e4_eta_num", r)?.mul(&den);
            Ok(Outcome::new().eq("e4 at w = eta/lambda", &lhs, &rhs))
        }),
        step("3.132", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("M", r)?, &cx.poly("lambda", r)?, r.var("u")?)?;
            Ok(Outcome::new().eq("Res(M, lambda; u)", &res, &cx.poly("c3_resMl_u", r)?))
        }),
        step("3.133", C31, Resultant, |cx, r| {
            let res = resultant(&cx.poly("M", r)?, &cx.poly("lambda", r)?, r.var("v")?)?;
            Ok(Outcome::new().eq("Res(M, lambda; v)", &res, &cx.poly("c3_resMl_v", r)?))
        }),
        step("3.134-irreducible", C31, Irreducible, |cx, _| irreducible(cx, &["P11", "Q11"], Outcome::new())),
        step("after-3.135-P11", C31, Resultant, |cx, r| {
            let res = resultant(&at(cx, r, "P11", "u")?, &cx.poly("M", r)?, r.var("u")?)?;
            Ok(Outcome::new()
                .eq("Res(P11(u), M; u)", &res, &cx.poly("c3_resP11M", r)?)
                .not_divides("P11(v) does not divide it", &at(cx, r, "P11", "v")?, &res))
        }),
        step("after-3.135-Q11", C31, Resultant, |cx, r| {
            let res = resultant(&at(cx, r, "Q11", "u")?, &cx.poly("M", r)?, r.var("u")?)?;
            Ok(Outcome::new()
                .eq("Res(Q11(u), M; u)", &res, &cx.poly("c3_resQ11M", r)?)
                .not_divides("Q11(v) does not divide it", &at(cx, r, "Q11", "v")?, &res))
        }),
    ]
}

/// Conjugates root^(3^i) modulo `m` of a root of `f` in variable `t`: all
/// are zeros of f, pairwise distinct, and only the first is a zero of `g`.
fn conjugate_search(m: &RelationSet, f: &MPoly, g: &MPoly, t: usize, root: &MPoly) -> Outcome {
    let mut conj = vec![m.reduce(root)];
    for _ in 1..f.degree(t) {
        let next = m.reduce(&conj[conj.len() - 1].cube());
        conj.push(next);
    }
    let distinct = conj.iter().enumerate().all(|(i, a)| conj[..i].iter().all(|b| a != b));
    let zero_at = |p: &MPoly, c: &MPoly| m.reduce(&p.substitute(t, c)).is_zero();
    let g_zeros: Vec<usize> = (0..conj.len()).filter(|&i| zero_at(g, &conj[i])).collect();
    Outcome::new()
        .holds("conjugates are roots", conj.iter().all(|c| zero_at(f, c)))
        .holds("conjugates are distinct", distinct)
        .holds("only the root itself survives", g_zeros == [0])
}

/// One of the two P11 branches, with the roles of u and v given by name.
struct P11Branch {
    suffix: &'static str,
    /// The variable P11 vanishes at; the other one is solved for.
    base: &'static str,
    solved: &'static str,
    root: &'static str,
    hbar: [&'static str; 2],
    res: [&'static str; 2],
    gcd: &'static str,
    /// The gcd is wpoly times a power of w + spurious.
    spurious: i64,
    wpoly: &'static str,
    w0: &'static str,
}

const V0_BRANCH: P11Branch = P11Branch {
    suffix: "",
    base: "u",
    solved: "v",
    root: "v0",
    hbar: ["A37", "A38"],
    res: ["A39", "A40"],
    gcd: "c3_gcdR_v0",
    spurious: 1,
    wpoly: "c3_wpoly_v0",
    w0: "w0",
};

const U0_BRANCH: P11Branch = P11Branch {
    suffix: "-1",
    base: "v",
    solved: "u",
    root: "u0_",
    hbar: ["A41", "A42"],
    res: ["A43", "A44"],
    gcd: "c3_gcdR_u0",
    spurious: 0,
    wpoly: "c3_wpoly_u0",
    w0: "w0_",
};

impl P11Branch {
    fn rel(&self, cx: &Ctx<'_>, r: &VarRegistry) -> Result<RelationSet, ReplayError> {
        modulo(cx, r, &[("P11", self.base)])
    }

    /// L with the solved variable substituted when that is u.
    fn l(&self, cx: &Ctx<'_>, r: &VarRegistry) -> Result<MPoly, ReplayError> {
        let l = cx.poly("L", r)?;
        Ok(if self.solved == "u" {
            self.rel(cx, r)?.reduce(&l.substitute(r.var("u")?, &cx.poly(self.root, r)?))
        } else {
            l
        })
    }
}

fn p11_branch(b: &'static P11Branch) -> Vec<ReplayStep> {
    use StepKind::*;
    let id = |s: &str| format!("{s}{}", b.suffix);
    let root_step = if b.suffix.is_empty() { "v0-only-i0" } else { "u0-only-i0" };
    let hbar_step = if b.suffix.is_empty() { "hibar" } else { "hibar1" };
    vec![
        step(root_step, C31, RootSearch, move |cx, r| {
            let rel = b.rel(cx, r)?;
            let f = at(cx, r, "Q11", b.solved)?;
            Ok(conjugate_search(&rel, &f, &cx.poly("M", r)?, r.var(b.solved)?, &cx.poly(b.root, r)?))
        }),
        step(hbar_step, C31, Reduce, move |cx, r| {
            let rel = b.rel(cx, r)?;
            let root = cx.poly(b.root, r)?;
            let mut o = Outcome::new();
            for (i, hi) in h(cx, r)?.iter().enumerate() {
                let got = rel.reduce(&hi.substitute(r.var(b.solved)?, &root));
                o = o.eq(format!("h{} reduced", i + 1), &got, &cx.poly(b.hbar[i], r)?);
            }
            Ok(o)
        }),
        step(&id("Ri"), C31, Resultant, move |cx, r| {
            // L is eliminated along the variable that is not w
            let (l, var) = (b.l(cx, r)?, r.var(if b.solved == "u" { "v" } else { "u" })?);
            let mut o = Outcome::new();
            for i in 0..2 {
                let res = resultant(&cx.poly(b.hbar[i], r)?, &l, var)?;
                o = o.eq(format!("R{}", i + 1), &res, &cx.poly(b.res[i], r)?);
            }
            Ok(o)
        }),
        step(&id("after-Ri"), C31, Gcd, move |cx, r| {
            let w = r.var("w")?;
            let g = gcd_univariate(&cx.poly(b.res[0], r)?, &cx.poly(b.res[1], r)?, w)?;
            let gcd = cx.poly(b.gcd, r)?;
            let wpoly = cx.poly(b.wpoly, r)?;
            let lin = r.poly("w")?.add(&MPoly::constant(r.len(), b.spurious));
            let rest = gcd.div_exact(&wpoly).unwrap_or_else(|| MPoly::zero(r.len()));
            let mut o = Outcome::new()
                .eq_unit("gcd(R1, R2)", &g, &gcd)
                .divides("factor solved for w", &wpoly, &gcd)
                .eq("cofactor", &rest, &lin.pow(rest.degree(w)));
            if b.suffix.is_empty() {
                let l_wm1 = subs(&cx.poly("L", r)?, r, &[("w", -1)])?;
                o = o.eq("L at w = -1", &l_wm1, &cx.poly("c3_L_wm1", r)?);
            }
            Ok(o)
        }),
        step(&id("w0-only-i0"), C31, RootSearch, move |cx, r| {
            let rel = b.rel(cx, r)?;
            Ok(conjugate_search(&rel, &cx.poly(b.wpoly, r)?, &b.l(cx, r)?, r.var("w")?, &cx.poly(b.w0, r)?))
        }),
        step(&id("after-Ri-e4"), C31, Substitute, move |cx, r| {
            let rel = b.rel(cx, r)?;
            let e4 = cx.poly("c3_e4", r)?
                .substitute(r.var(b.solved)?, &cx.poly(b.root, r)?)
                .substitute(r.var("w")?, &cx.poly(b.w0, r)?);
            Ok(Outcome::new().holds("e4 vanishes modulo P11", rel.reduce(&e4).is_zero()))
        }),
    ]
}

fn v_zero() -> Vec<ReplayStep> {
    use StepKind::*;
    vec![
        step("3.136", C32, Substitute, |cx, r| {
            let [h1, _] = h(cx, r)?;
            Ok(Outcome::new().eq("h1 at v = 0", &subs(&h1, r, &[("v", 0)])?, &cx.poly("c3_h1_v0", r)?))
        }),
        step("after-3.136", C32, Reduce, |cx, r| {
            let rel = RelationSet::new().with(r.var("u")?, cx.poly("c3_rel_v0", r)?, "u^2+w+w^2")?;
            let e4 = subs(&cx.poly("c3_e4", r)?, r, &[("v", 0)])?;
            let (u, w) = (r.poly("u")?, r.poly("w")?);
            Ok(Outcome::new()
                .eq("relation", &cx.poly("c3_rel_v0", r)?, &square_rel(r)?)
                .eq("e4 at v = 0", &e4, &cx.poly("c3_e4_v0", r)?)
                .eq_mod("e4 under the relation", &e4, &cx.poly("c3_e4_v0_red", r)?, &rel)
                .eq_mod("u^2 + w^2 = -w", &u.pow(2).add(&w.pow(2)), &w.neg(), &rel))
        }),
        step("after-3.136-witness", C32, Reduce, |cx, r| {
            let rel = RelationSet::new().with(r.var("u")?, cx.poly("c3_rel_v0", r)?, "u^2+w+w^2")?;
            let mid = cx.poly("c3_wit_mid", r)?;
            Ok(Outcome::new()
                .eq("(u+w)^2 expanded", &cx.poly("c3_wit_lhs", r)?, &mid)
                .eq_mod("-w(1+u) under the relation", &mid, &cx.poly("c3_wit_rhs", r)?, &rel))
        }),
    ]
}
