//! The cubic C3 x^3 + C2(y) x^2 + C1(y) x + C0(y) and the quartic
//! E(Y) = -k(C1^3 C3 - C1^2 C2^2 + C0 C2^3), symbolically per case and
//! numerically for concrete (a, b).
//!
//! Writing T = (1+a+b) A(x) (y+z), the transported equation is T - T^q = 0.
//! With z^q = -z that is a multiple of z, and C(x, y) is minus the
//! z-coefficient of T once z^2 is reduced.

use super::PpError;
use crate::fields::{FieldCtx, Fq, Fq2, GfTable};
use crate::polyring::{MPoly, RelationSet, VarRegistry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    C11,
    C12,
    C21,
    C22,
    C3,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [CaseId::C11, CaseId::C12, CaseId::C21, CaseId::C22, CaseId::C3];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::C11 => "1.1",
            CaseId::C12 => "1.2",
            CaseId::C21 => "2.1",
            CaseId::C22 => "2.2",
            CaseId::C3 => "3",
        }
    }

    pub fn from_label(s: &str) -> Option<CaseId> {
        CaseId::ALL.into_iter().find(|c| c.label() == s)
    }

    /// Variables of the symbolic construction; `z` is absent in Case 2.2
    /// where the role of z is played by `a`.
    pub fn var_names(self) -> &'static [&'static str] {
        match self {
            CaseId::C11 => &["a", "b1", "k", "z", "X", "Y"],
            CaseId::C12 => &["a", "b", "k", "z", "X", "Y"],
            CaseId::C21 => &["a1", "b1", "k", "z", "X", "Y"],
            CaseId::C22 => &["a", "b", "k", "X", "Y"],
            CaseId::C3 => &["u", "v", "w", "z", "X", "Y"],
        }
    }

    /// Whether C is further divided by 1 + a + b.
    fn divides_by_s(self) -> bool {
        self == CaseId::C12
    }

    /// Whether the displayed e_i are those of k^{-2} E.
    fn scales_by_k2(self) -> bool {
        self != CaseId::C3
    }
}

#[derive(Debug, Clone, Copy)]
pub enum CaseParams<'a> {
    Symbolic,
    /// Concrete (a, b) with the case's z; z^2 must lie in F_q.
    Numeric { ctx: &'a FieldCtx, a: Fq2, b: Fq2, z: Fq2 },
}

#[derive(Debug, Clone)]
pub enum CaseECoeffs {
    Symbolic(SymbolicCase),
    Numeric(NumericCase),
}

/// Polynomials over F_3 in the case registry.
#[derive(Debug, Clone)]
pub struct SymbolicCase {
    pub case_id: CaseId,
    pub reg: VarRegistry,
    pub a_x: MPoly,
    pub b_x: MPoly,
    /// C_0 .. C_3 (free of X and z).
    pub c: [MPoly; 4],
    /// Coefficients of `e_poly` in Y.
    pub e: [MPoly; 5],
    /// k^{-2} E, or E itself in Case 3.
    pub e_poly: MPoly,
    pub k: MPoly,
}

/// C_i = c[i][0] + c[i][1] Y and the e_i, all in F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericCase {
    pub c: [[Fq; 2]; 4],
    pub e: [Fq; 5],
    pub k: Fq,
}

pub fn build_case_coeffs(case: CaseId, params: &CaseParams<'_>) -> Result<CaseECoeffs, PpError> {
    match *params {
        CaseParams::Symbolic => Ok(CaseECoeffs::Symbolic(symbolic(case)?)),
        CaseParams::Numeric { ctx, a, b, z } => {
            check_shape(case, ctx, a, b, z)?;
            let mut n = generic_coeffs(ctx, a, b, z)?;
            let t = ctx.base();
            if case.divides_by_s() {
                let s = ctx.add(ctx.one(), ctx.add(a, b));
                if !ctx.in_base(s) || s.is_zero() {
                    return Err(mismatch(case, "1 + a + b must be a nonzero element of F_q"));
                }
                let inv = t.inv(s.c0);
                for ci in n.c.iter_mut() {
                    for x in ci.iter_mut() {
                        *x = t.mul(*x, inv);
                    }
                }
                n.e = quartic(t, &n.c, n.k);
            }
            if case.scales_by_k2() {
                let f = t.inv(t.mul(n.k, n.k));
                n.e = n.e.map(|x| t.mul(x, f));
            }
            Ok(CaseECoeffs::Numeric(n))
        }
    }
}

fn mismatch(case: CaseId, reason: &str) -> PpError {
    PpError::CaseMismatch { case: case.label(), reason: reason.to_string() }
}

fn check_shape(case: CaseId, ctx: &FieldCtx, a: Fq2, b: Fq2, z: Fq2) -> Result<(), PpError> {
    let real = |x: Fq2| ctx.in_base(x);
    let z2 = ctx.mul(z, z);
    let ok = match case {
        CaseId::C11 => real(a) && real(ctx.sub(b, z)),
        CaseId::C12 => real(a) && real(b),
        CaseId::C21 => real(ctx.div(a, z)) && real(ctx.sub(b, z)),
        CaseId::C22 => a == z && real(b),
        // b = v + w z needs no check once z is a valid generator
        CaseId::C3 => z2 == ctx.neg(ctx.one()) && real(ctx.div(a, ctx.add(ctx.one(), z))),
    };
    if !ok {
        return Err(mismatch(case, "a, b do not have the case's shape in terms of z"));
    }
    Ok(())
}

/// C_i and E for any (a, b) given a z with z^2 a nonsquare of F_q; the
/// e_i here are E's own coefficients.
pub fn generic_coeffs(ctx: &FieldCtx, a: Fq2, b: Fq2, z: Fq2) -> Result<NumericCase, PpError> {
    if ctx.p() == 2 {
        return Err(PpError::CharacteristicMismatch { expected: "odd", found: 2 });
    }
    let t = ctx.base();
    let k2 = ctx.mul(z, z);
    if z.c0.0 != 0 || z.c1.0 == 0 || !ctx.in_base(k2) {
        return Err(PpError::Precondition("z must satisfy z^2 in F_q, z not in F_q"));
    }
    let k = k2.c0;
    let zq = ctx.neg(z);
    let aq = ctx.conj(a);
    let bq = ctx.conj(b);
    let one = ctx.one();
    let cube = |x: Fq2| ctx.mul(x, ctx.mul(x, x));
    // A(X), highest first
    let a_x = [
        ctx.add(one, ctx.add(aq, bq)),
        ctx.sub(z, zq),
        ctx.sub(ctx.mul(zq, zq), ctx.mul(z, zq)),
        ctx.add(ctx.add(ctx.mul(bq, cube(z)), ctx.mul(aq, cube(zq))), ctx.mul(z, ctx.mul(zq, zq))),
    ];
    let s = ctx.add(one, ctx.add(a, b));
    // z-coefficient of x0 + x1 ζ where z = c ζ
    let im = |x: Fq2| t.div(x.c1, z.c1);
    let mut c = [[Fq(0); 2]; 4];
    for (j, &alpha) in a_x.iter().enumerate() {
        let sa = ctx.mul(s, alpha);
        // s α (Y + z) = (s α) Y + s α z
        c[3 - j] = [t.neg(im(ctx.mul(sa, z))), t.neg(im(sa))];
    }
    let e = quartic(t, &c, k);
    Ok(NumericCase { c, e, k })
}

fn pmul(t: &GfTable, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
    let mut out = vec![Fq(0); x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            out[i + j] = t.add(out[i + j], t.mul(a, b));
        }
    }
    out
}

fn quartic(t: &GfTable, c: &[[Fq; 2]; 4], k: Fq) -> [Fq; 5] {
    let [c0, c1, c2, c3] = c;
    let c1_2 = pmul(t, c1, c1);
    let c2_2 = pmul(t, c2, c2);
    let terms = [
        pmul(t, &pmul(t, &c1_2, c1), c3),
        pmul(t, &c1_2, &c2_2).into_iter().map(|x| t.neg(x)).collect(),
        pmul(t, &pmul(t, &c2_2, c2), c0),
    ];
    let neg_k = t.neg(k);
    let mut e = [Fq(0); 5];
    for term in &terms {
        for (i, &x) in term.iter().enumerate() {
            e[i] = t.add(e[i], t.mul(neg_k, x));
        }
    }
    e
}

fn symbolic(case: CaseId) -> Result<SymbolicCase, PpError> {
    let reg = VarRegistry::new(case.var_names())?;
    let nv = reg.len();
    let v = |name: &str| reg.poly(name);
    let c = |x: i64| MPoly::constant(nv, x);
    let x_var = reg.var("X")?;
    let y = v("Y")?;

    // z, the relation z^2 = k, and a, a^q, b, b^q in terms of z
    let (z, zvar, rel, k) = match case {
        CaseId::C22 => {
            let a = v("a")?;
            (a.clone(), reg.var("a")?, a.mul(&a).sub(&v("k")?), v("k")?)
        }
        CaseId::C3 => {
            let z = v("z")?;
            (z.clone(), reg.var("z")?, z.mul(&z).add(&c(1)), c(-1))
        }
        _ => {
            let z = v("z")?;
            (z.clone(), reg.var("z")?, z.mul(&z).sub(&v("k")?), v("k")?)
        }
    };
    let zq = z.neg();
    let (a, aq, b, bq) = match case {
        CaseId::C11 => (v("a")?, v("a")?, v("b1")?.add(&z), v("b1")?.sub(&z)),
        CaseId::C12 => (v("a")?, v("a")?, v("b")?, v("b")?),
        CaseId::C21 => {
            let a = v("a1")?.mul(&z);
            (a.clone(), a.neg(), v("b1")?.add(&z), v("b1")?.sub(&z))
        }
        CaseId::C22 => (z.clone(), zq.clone(), v("b")?, v("b")?),
        CaseId::C3 => {
            let u = v("u")?;
            let wz = v("w")?.mul(&z);
            (u.mul(&c(1).add(&z)), u.mul(&c(1).sub(&z)), v("v")?.add(&wz), v("v")?.sub(&wz))
        }
    };
    let rels = RelationSet::new().with(zvar, rel, "z")?;
    let xp = |e: u32| MPoly::var(nv, x_var).pow(e);
    let one = c(1);

    let a_x = rels.reduce(
        &one.add(&aq)
            .add(&bq)
            .mul(&xp(3))
            .add(&z.sub(&zq).mul(&xp(2)))
            .add(&zq.mul(&zq).sub(&z.mul(&zq)).mul(&xp(1)))
            .add(&bq.mul(&z.cube()))
            .add(&aq.mul(&zq.cube()))
            .add(&z.mul(&zq.mul(&zq))),
    );
    let b_x = rels.reduce(
        &one.add(&a)
            .add(&b)
            .mul(&xp(3))
            .add(&zq.sub(&z).mul(&xp(2)))
            .add(&z.mul(&z).sub(&z.mul(&zq)).mul(&xp(1)))
            .add(&a.mul(&z.cube()))
            .add(&b.mul(&zq.cube()))
            .add(&z.mul(&z).mul(&zq)),
    );
    let s = rels.reduce(&one.add(&a).add(&b));
    let t = rels.reduce(&s.mul(&a_x).mul(&y.add(&z)));
    let parts = t.coeffs_in(zvar);
    let mut cpoly = parts.get(1).cloned().unwrap_or_else(|| MPoly::zero(nv)).neg();
    if case.divides_by_s() {
        cpoly = cpoly
            .div_exact(&s)
            .ok_or_else(|| mismatch(case, "C is not divisible by 1 + a + b"))?;
    }
    let mut cx = cpoly.coeffs_in(x_var);
    cx.resize(4, MPoly::zero(nv));
    let cs: [MPoly; 4] = [cx[0].clone(), cx[1].clone(), cx[2].clone(), cx[3].clone()];
    let [c0, c1, c2, c3] = &cs;
    let c1_2 = c1.mul(c1);
    let c2_2 = c2.mul(c2);
    let inner = c1_2.mul(c1).mul(c3).sub(&c1_2.mul(&c2_2)).add(&c0.mul(&c2_2.mul(c2)));
    let e_full = k.neg().mul(&inner);
    let e_poly = if case.scales_by_k2() {
        e_full
            .div_exact(&k.mul(&k))
            .ok_or_else(|| mismatch(case, "E is not divisible by k^2"))?
    } else {
        e_full
    };
    let mut ey = e_poly.coeffs_in(reg.var("Y")?);
    if ey.len() > 5 {
        return Err(mismatch(case, "E has degree above 4 in Y"));
    }
    ey.resize(5, MPoly::zero(nv));
    let e = [ey[0].clone(), ey[1].clone(), ey[2].clone(), ey[3].clone(), ey[4].clone()];
    Ok(SymbolicCase { case_id: case, reg, a_x, b_x, c: cs, e, e_poly, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_tower;
    use crate::polyring::parse;

    fn sym(case: CaseId) -> SymbolicCase {
        match build_case_coeffs(case, &CaseParams::Symbolic).unwrap() {
            CaseECoeffs::Symbolic(s) => s,
            CaseECoeffs::Numeric(_) => unreachable!(),
        }
    }

    #[test]
    fn case_1_2_quartic() {
        let s = sym(CaseId::C12);
        let want = parse("k^2(1+a+b) + k Y^2 + (1-a+b) Y^4", &s.reg).unwrap();
        assert_eq!(s.e_poly, want);
    }

    #[test]
    fn e2_relation_to_c3() {
        for case in [CaseId::C11, CaseId::C21, CaseId::C22] {
            let s = sym(case);
            assert_eq!(s.e[2], s.k.mul(&s.c[3].mul(&s.c[3])), "case {}", case.label());
        }
        let s = sym(CaseId::C3);
        assert_eq!(s.e[2], s.c[3].mul(&s.c[3]).neg());
    }

    #[test]
    fn coefficients_are_linear_in_y() {
        for case in CaseId::ALL {
            let s = sym(case);
            let yv = s.reg.var("Y").unwrap();
            for (i, ci) in s.c.iter().enumerate() {
                assert!(ci.degree(yv) <= 1, "C{i} of case {}", case.label());
                assert!(!ci.uses_var(s.reg.var("X").unwrap()));
            }
            assert_eq!(s.c[3].degree(yv), 0);
        }
    }

    #[test]
    fn numeric_matches_symbolic_case_1_2() {
        let ctx = make_tower(2).unwrap();
        let t = ctx.base();
        let z = ctx.z();
        let k = ctx.delta();
        let s = sym(CaseId::C12);
        let mut checked = 0;
        for a in t.elements().skip(1) {
            for b in t.elements().skip(1) {
                let params = CaseParams::Numeric { ctx: &ctx, a: ctx.embed(a), b: ctx.embed(b), z };
                let Ok(CaseECoeffs::Numeric(n)) = build_case_coeffs(CaseId::C12, &params) else {
                    continue;
                };
                // evaluate the symbolic e_i at (a, b, k)
                for i in 0..5 {
                    let vals = [a, b, k, Fq(0), Fq(0), Fq(0)];
                    assert_eq!(s.e[i].eval(t, &vals), n.e[i]);
                }
                checked += 1;
            }
        }
        assert!(checked > 40);
    }

    #[test]
    fn numeric_rejects_wrong_shape() {
        let ctx = make_tower(2).unwrap();
        let z = ctx.z();
        let params = CaseParams::Numeric { ctx: &ctx, a: z, b: ctx.one(), z };
        assert!(matches!(
            build_case_coeffs(CaseId::C12, &params),
            Err(PpError::CaseMismatch { .. })
        ));
    }
}
