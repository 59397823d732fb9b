//! Case 2: a not a square in F_{q^2}, n even. Case 2.1 has b ∉ F_q,
//! Case 2.2 has b ∈ F_q.

use crate::polyring::{is_irreducible_f3, resultant, substitute_rational, MPoly, VarRegistry};
use crate::ppcheck::CaseId;

use super::case1::{factor_with_exponent, obstruction_steps};
use super::check::{construction_steps, registry, Outcome, Part};
use super::{Ctx, ReplayError, ReplayStep, StepKind};

const C21: &str = "2.1";
const C22: &str = "2.2";

pub fn steps() -> Vec<ReplayStep> {
    let mut v = construction_steps(
        CaseId::C21,
        C21,
        &[
            ("3.29", "c21_A", Part::A),
            ("3.30", "c21_B", Part::B),
            ("3.31", "c21_C0", Part::C(0)),
            ("3.32", "c21_C1", Part::C(1)),
            ("3.33", "c21_C2", Part::C(2)),
            ("3.34", "c21_C3", Part::C(3)),
            ("3.36", "c21_e0", Part::E(0)),
            ("3.37", "c21_e1", Part::E(1)),
            ("3.38", "c21_e2", Part::E(2)),
            ("3.39", "c21_e3", Part::E(3)),
            ("3.40", "c21_e4", Part::E(4)),
        ],
    );
    v.extend(obstruction_steps(CaseId::C21, C21, ["3.41", "3.42"], ["c21_id1", "c21_id2"]));
    v.extend(case21());
    v.extend(construction_steps(
        CaseId::C22,
        C22,
        &[
            ("3.57", "c22_A", Part::A),
            ("3.58", "c22_B", Part::B),
            ("3.60", "c22_C0", Part::C(0)),
            ("3.61", "c22_C1", Part::C(1)),
            ("3.62", "c22_C2", Part::C(2)),
            ("3.63", "c22_C3", Part::C(3)),
            ("3.65", "c22_e0", Part::E(0)),
            ("3.66", "c22_e1", Part::E(1)),
            ("3.67", "c22_e2", Part::E(2)),
            ("3.68", "c22_e3", Part::E(3)),
            ("3.69", "c22_e4", Part::E(4)),
        ],
    ));
    v.extend(case22());
    v
}

type Body = fn(&Ctx<'_>, &VarRegistry) -> Result<Outcome, ReplayError>;

fn step(id: &str, case: &'static str, kind: StepKind, vars: &[&str], body: Body) -> ReplayStep {
    let reg = registry(vars);
    ReplayStep::new(id, case, kind, move |cx| body(cx, &reg))
}

/// `den*x - num`, the linear polynomial whose zero is x = num/den.
fn linear(cx: &Ctx<'_>, r: &VarRegistry, x: &str, num: &str, den: &str) -> Result<MPoly, ReplayError> {
    Ok(cx.poly(den, r)?.mul(&r.poly(x)?).sub(&cx.poly(num, r)?))
}

/// Checks p(x = num/den) = expected_num/expected_den by cross-multiplying.
fn rational_substitution(
    cx: &Ctx<'_>,
    r: &VarRegistry,
    label: &str,
    p: &MPoly,
    x: &str,
    (num, den): (&str, &str),
    (exp_num, exp_den): (&str, &str),
) -> Result<Outcome, ReplayError> {
    let (n, d) = substitute_rational(p, r.var(x)?, &cx.poly(num, r)?, &cx.poly(den, r)?)?;
    let lhs = n.mul(&cx.poly(exp_den, r)?);
    let rhs = cx.poly(exp_num, r)?.mul(&d);
    Ok(Outcome::new().eq(label, &lhs, &rhs))
}

const V21: [&str; 3] = ["a1", "b1", "k"];

fn case21() -> Vec<ReplayStep> {
    use StepKind::*;
    vec![
        step("3.42-a1", C21, Substitute, &V21, |cx, r| {
            let h1 = cx.poly("A3", r)?.subs_const(r.var("a1")?, -1);
            Ok(Outcome::new().eq("h1 at a1 = -1", &h1, &cx.poly("c21_h1_a1m1", r)?))
        }),
        step("3.42-b1", C21, Substitute, &V21, |cx, r| {
            let h2 = cx.poly("A4", r)?.subs_const(r.var("b1")?, -1);
            Ok(Outcome::new().eq("h2 at b1 = -1", &h2, &cx.poly("c21_h2_b1m1", r)?))
        }),
        step("3.44", C21, Resultant, &V21, |cx, r| {
            let res = resultant(&cx.poly("A3", r)?, &cx.poly("A4", r)?, r.var("k")?)?;
            Ok(Outcome::new().eq("Res(h1, h2; k)", &res, &cx.poly("c21_res_k", r)?))
        }),
        step("3.45", C21, Resultant, &V21, |cx, r| {
            let res = resultant(&cx.poly("A3", r)?, &cx.poly("A4", r)?, r.var("b1")?)?;
            Ok(Outcome::new().eq("Res(h1, h2; b1)", &res, &cx.poly("c21_res_b1", r)?))
        }),
        step("3.45.0", C21, FactorVerify, &V21, |cx, r| {
            let fac = cx.poly("c21_fac", r)?;
            Ok(Outcome::new()
                .eq("cubed factor of step 3.45", &factor_with_exponent(cx, "c21_res_b1", r, 3)?, &fac)
                .eq("sum of squares form", &fac, &cx.poly("c21_fac_sq", r)?))
        }),
        step("3.46", C21, Identity, &V21, |cx, r| {
            // L = 0 is a1 = -(num/den)^2 after clearing den^2
            let lhs = r.poly("a1")?.mul(&cx.poly("c21_ratio_den", r)?.pow(2)).add(&cx.poly("c21_ratio_num", r)?.pow(2));
            Ok(Outcome::new().eq("a1 den^2 + num^2", &lhs, &cx.poly("c21_fac_sq", r)?))
        }),
        step("3.47", C21, Identity, &V21, |cx, r| {
            let q = cx.poly("c21_q", r)?;
            let lhs = r.poly("a1")?.mul(&cx.poly("c21_q_den", r)?.pow(2)).add(&cx.poly("c21_q_num", r)?.pow(2));
            Ok(Outcome::new()
                .eq("cubed factor of step 3.44", &factor_with_exponent(cx, "c21_res_k", r, 3)?, &q)
                .eq("sum of squares form", &q, &cx.poly("c21_q_sq", r)?)
                .eq("a1 den^2 + num^2", &lhs, &cx.poly("c21_q_sq", r)?))
        }),
        step("3.49", C21, Identity, &V21, |cx, r| {
            // the "+" branch of step 3.48 solved for k
            let branch = cx.poly("c21_ratio_num", r)?.mul(&cx.poly("c21_q_den", r)?)
                .sub(&cx.poly("c21_q_num", r)?.mul(&cx.poly("c21_ratio_den", r)?));
            Ok(Outcome::new().eq_unit("k = num/den", &linear(cx, r, "k", "c21_kplus_num", "c21_kplus_den")?, &branch))
        }),
        step("3.49-e4", C21, Substitute, &V21, |cx, r| {
            let e4 = cx.poly("c21_e4", r)?;
            let o = rational_substitution(cx, r, "e4 at k of step 3.49", &e4, "k",
                ("c21_kplus_num", "c21_kplus_den"), ("c21_e4plus_num", "c21_e4plus_den"))?;
            Ok(o.divides("factor (3.47) divides e4", &cx.poly("c21_q", r)?, &cx.poly("c21_e4plus_num", r)?))
        }),
        step("3.51", C21, Identity, &V21, |cx, r| {
            let branch = cx.poly("c21_ratio_num", r)?.mul(&cx.poly("c21_q_den", r)?)
                .add(&cx.poly("c21_q_num", r)?.mul(&cx.poly("c21_ratio_den", r)?));
            Ok(Outcome::new().eq_unit("k = num/den", &linear(cx, r, "k", "c21_kminus_num", "c21_kminus_den")?, &branch))
        }),
        step("3.52", C21, Substitute, &V21, |cx, r| {
            let h1 = cx.poly("A3", r)?;
            let (n, d) = substitute_rational(&h1, r.var("k")?, &cx.poly("c21_kminus_num", r)?, &cx.poly("c21_kminus_den", r)?)?;
            Ok(Outcome::new()
                .eq("numerator is T", &n, &cx.poly("A5", r)?)
                .eq("denominator", &d, &cx.poly("c21_T_den", r)?))
        }),
        step("T-res", C21, Resultant, &V21, |cx, r| {
            let res = resultant(&cx.poly("A5", r)?, &cx.poly("c21_q", r)?, r.var("a1")?)?;
            Ok(Outcome::new().eq("Res(T, q; a1)", &res, &cx.poly("c21_T_res", r)?))
        }),
        step("3.53-root", C21, FactorVerify, &V21, |cx, r| {
            let root = cx.poly("c21_b1_root", r)?;
            let linear_factor = cx.factors("c21_res_k", r)?.into_iter().any(|(p, e)| e == 1 && p == root);
            Ok(Outcome::new()
                .holds("simple factor of step 3.44", linear_factor)
                .eq_unit("b1 = num/den", &linear(cx, r, "b1", "c21_b1_num", "c21_b1_den")?, &root))
        }),
        step("3.53", C21, Substitute, &V21, |cx, r| {
            rational_substitution(cx, r, "h1 at b1 = (a1-1)/a1", &cx.poly("A3", r)?, "b1",
                ("c21_b1_num", "c21_b1_den"), ("c21_h1_S1", "c21_h1_S1_den"))
        }),
        step("3.54", C21, Substitute, &V21, |cx, r| {
            rational_substitution(cx, r, "h2 at b1 = (a1-1)/a1", &cx.poly("A4", r)?, "b1",
                ("c21_b1_num", "c21_b1_den"), ("c21_h2_S2", "c21_h2_S2_den"))
        }),
        step("3.56-L", C21, Identity, &V21, |cx, r| {
            Ok(Outcome::new().eq("L is the cubed factor of step 3.45", &cx.poly("c21_L", r)?, &cx.poly("c21_fac", r)?))
        }),
        step("3.56-res-S1", C21, Resultant, &V21, |cx, r| {
            let res = resultant(&cx.poly("c21_S1", r)?, &cx.poly("c21_L", r)?, r.var("a1")?)?;
            Ok(Outcome::new().eq("Res(S1, L; a1)", &res, &cx.poly("c21_res_S1L", r)?))
        }),
        step("3.56-res-S2", C21, Resultant, &V21, |cx, r| {
            let res = resultant(&cx.poly("c21_S2", r)?, &cx.poly("c21_L", r)?, r.var("a1")?)?;
            Ok(Outcome::new().eq("Res(S2, L; a1)", &res, &cx.poly("c21_res_S2L", r)?))
        }),
        step("3.56-irreducible", C21, Irreducible, &V21, |cx, r| {
            let k = r.var("k")?;
            let mut o = Outcome::new();
            for id in ["c21_res_S1L", "c21_res_S2L"] {
                for (p, _) in cx.factors(id, r)? {
                    if p.len() > 1 {
                        o = o.holds(format!("factor of {id} irreducible"), is_irreducible_f3(&p, k)?);
                    }
                }
            }
            Ok(o)
        }),
        step("3.56-common", C21, FactorVerify, &V21, |cx, r| {
            let c = cx.poly("c21_common", r)?;
            Ok(Outcome::new()
                .divides("divides Res(S1, L)", &c, &cx.poly("c21_res_S1L", r)?)
                .divides("divides Res(S2, L)", &c, &cx.poly("c21_res_S2L", r)?)
                .holds("degree 3", c.degree(r.var("k")?) == 3))
        }),
    ]
}

const V22: [&str; 3] = ["a", "b", "k"];

fn case22() -> Vec<ReplayStep> {
    use StepKind::*;
    vec![
        ReplayStep::new("3.70", C22, Identity, |cx| {
            let sym = cx.symbolic(CaseId::C22)?;
            let (first, _) = super::case1::square_obstructions(&sym.e);
            Ok(Outcome::new().eq("e0e3^2 - e1^2e4", &first, &cx.poly("c22_id1", &sym.reg)?))
        }),
        step("3.70-k", C22, Substitute, &V22, |cx, r| {
            let kk = cx.poly("c22_k", r)?;
            let at = |id: &str| -> Result<MPoly, ReplayError> { Ok(cx.poly(id, r)?.substitute(r.var("k")?, &kk)) };
            Ok(Outcome::new()
                .eq("(3.70) vanishes at k = -b-b^2", &at("c22_id1")?, &MPoly::zero(r.len()))
                .eq("e4 at k = -b-b^2", &at("c22_e4")?, &cx.poly("c22_e4k", r)?))
        }),
        step("3.70-ratio", C22, Identity, &V22, |cx, r| {
            // (a^2 + b^2)(1 + b) = a^2 with a^2 = k = -b-b^2
            let (b, k) = (r.poly("b")?, cx.poly("c22_k", r)?);
            let one = MPoly::one(r.len());
            let lhs = k.add(&b.pow(2)).mul(&one.add(&b));
            Ok(Outcome::new().eq("1 - (b/a)^(q+1) = 1/(1+b)", &lhs, &k))
        }),
    ]
}
