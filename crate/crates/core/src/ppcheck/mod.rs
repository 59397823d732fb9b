//! Permutation tests for f(X) = X(1 + aX^{q(q-1)} + bX^{2(q-1)}) over
//! F_{q^2}, the closed-form coefficient conditions, and the reduction from
//! the trinomial to a quartic that must be a square.

mod cases;
pub mod sweep;

pub use cases::{
    build_case_coeffs, generic_coeffs, CaseECoeffs, CaseId, CaseParams, NumericCase, SymbolicCase,
};

use thiserror::Error;

use crate::fields::{FieldCtx, FieldElem, FieldError, Fq, Fq2, GfTable, Level};
use crate::polyring::PolyError;

/// Largest F_{q^2} that brute force will enumerate (3^10).
pub const BRUTEFORCE_MAX_ORDER: u64 = 59_049;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PpError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("F_{{q^2}} has {0} elements, too many for brute force")]
    FieldTooLarge(u64),
    #[error("condition needs characteristic {expected}, context has {found}")]
    CharacteristicMismatch { expected: &'static str, found: u32 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("parameters do not match case {case}: {reason}")]
    CaseMismatch { case: &'static str, reason: String },
}

/// The pair (a, b) of nonzero elements of F_{q^2}.
#[derive(Debug, Clone, Copy)]
pub struct TrinomialInstance<'a> {
    pub ctx: &'a FieldCtx,
    pub a: Fq2,
    pub b: Fq2,
}

impl<'a> TrinomialInstance<'a> {
    pub fn new(ctx: &'a FieldCtx, a: Fq2, b: Fq2) -> Result<Self, PpError> {
        // route through elem() so out-of-range encodings are rejected
        ctx.elem(Level::Fq2, a)?;
        ctx.elem(Level::Fq2, b)?;
        if a.is_zero() || b.is_zero() {
            return Err(FieldError::Zero.into());
        }
        Ok(TrinomialInstance { ctx, a, b })
    }

    pub fn from_elems(ctx: &'a FieldCtx, a: &FieldElem, b: &FieldElem) -> Result<Self, PpError> {
        if a.ctx_id() != ctx.id() || b.ctx_id() != ctx.id() {
            return Err(FieldError::ContextMismatch.into());
        }
        Self::new(ctx, a.value(), b.value())
    }

    /// f(x) = x(1 + a x^{q(q-1)} + b x^{2(q-1)}), by plain powering.
    pub fn eval_f(&self, x: Fq2) -> Fq2 {
        let c = self.ctx;
        let q = c.q() as u128;
        let t1 = c.mul(self.a, c.pow(x, q * (q - 1)));
        let t2 = c.mul(self.b, c.pow(x, 2 * (q - 1)));
        c.mul(x, c.add(c.one(), c.add(t1, t2)))
    }

    /// h(x) = x(1 + a x^q + b x^2)^{q-1}.
    pub fn eval_h(&self, x: Fq2) -> Fq2 {
        let c = self.ctx;
        let inner = c.add(c.one(), c.add(c.mul(self.a, c.conj(x)), c.mul(self.b, c.mul(x, x))));
        c.mul(x, c.pow(inner, c.q() as u128 - 1))
    }

    /// b x^3 + x + a, the denominator of g.
    pub fn g_denominator(&self, x: Fq2) -> Fq2 {
        let c = self.ctx;
        let x3 = c.mul(x, c.mul(x, x));
        c.add(c.add(c.mul(self.b, x3), x), self.a)
    }

    /// g(x) = (a^q x^3 + x^2 + b^q) / (b x^3 + x + a), or `None` at a pole.
    pub fn eval_g(&self, x: Fq2) -> Option<Fq2> {
        let c = self.ctx;
        let den = self.g_denominator(x);
        if den.is_zero() {
            return None;
        }
        let x2 = c.mul(x, x);
        let x3 = c.mul(x2, x);
        let num = c.add(c.add(c.mul(c.conj(self.a), x3), x2), c.conj(self.b));
        Some(c.div(num, den))
    }
}

/// Whether `f` permutes the whole of F_{q^2}; `f` need not be a trinomial.
pub fn permutes_fq2(ctx: &FieldCtx, f: impl Fn(Fq2) -> Fq2) -> Result<bool, PpError> {
    let q = ctx.q() as u64;
    let order = q * q;
    if order > BRUTEFORCE_MAX_ORDER {
        return Err(PpError::FieldTooLarge(order));
    }
    let mut seen = vec![false; order as usize];
    for i in 0..order {
        let y = f(Fq2::from_index(i, q as u32)).index(q as u32) as usize;
        if std::mem::replace(&mut seen[y], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_pp_bruteforce(inst: &TrinomialInstance<'_>) -> Result<bool, PpError> {
    permutes_fq2(inst.ctx, |x| inst.eval_f(x))
}

/// Permutation test through the action on μ_{q+1}: f permutes F_{q^2}
/// exactly when h permutes μ_{q+1}.
pub fn is_pp_via_mu(inst: &TrinomialInstance<'_>) -> bool {
    MuChecker::new(inst.ctx).is_pp(inst.a, inst.b)
}

/// Caches μ_{q+1} for repeated [`is_pp_via_mu`] calls on one context.
#[derive(Debug, Clone)]
pub struct MuChecker<'a> {
    ctx: &'a FieldCtx,
    mu: Vec<Fq2>,
}

impl<'a> MuChecker<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Self {
        MuChecker { ctx, mu: ctx.mu_subgroup() }
    }

    pub fn mu(&self) -> &[Fq2] {
        &self.mu
    }

    pub fn is_pp(&self, a: Fq2, b: Fq2) -> bool {
        let inst = TrinomialInstance { ctx: self.ctx, a, b };
        let q = self.ctx.q();
        let mut image: Vec<u64> = Vec::with_capacity(self.mu.len());
        for &x in &self.mu {
            // g only rewrites h away from the poles; there h is used as is
            let y = inst.eval_g(x).unwrap_or_else(|| inst.eval_h(x));
            if y.is_zero() || self.ctx.norm(y) != Fq(1) {
                return false;
            }
            image.push(y.index(q));
        }
        image.sort_unstable();
        image.windows(2).all(|w| w[0] != w[1])
    }

    /// Points of μ_{q+1} where b x^3 + x + a vanishes.
    pub fn poles(&self, a: Fq2, b: Fq2) -> Vec<Fq2> {
        let inst = TrinomialInstance { ctx: self.ctx, a, b };
        self.mu.iter().copied().filter(|&x| inst.g_denominator(x).is_zero()).collect()
    }
}

fn require_char(ctx: &FieldCtx, ok: bool, expected: &'static str) -> Result<(), PpError> {
    if ok {
        Ok(())
    } else {
        Err(PpError::CharacteristicMismatch { expected, found: ctx.p() })
    }
}

/// (ab)^q = a(b^{q+1} - a^{q+1}).
fn first_equation(inst: &TrinomialInstance<'_>) -> bool {
    let c = inst.ctx;
    let t = c.base();
    let lhs = c.conj(c.mul(inst.a, inst.b));
    let rhs = c.mul(inst.a, c.embed(t.sub(c.norm(inst.b), c.norm(inst.a))));
    lhs == rhs
}

/// (b/a)^{q+1} as an element of F_q.
fn norm_ratio(inst: &TrinomialInstance<'_>) -> Fq {
    let c = inst.ctx;
    c.base().div(c.norm(inst.b), c.norm(inst.a))
}

fn is_nonzero_square(t: &GfTable, x: Fq) -> bool {
    x.0 != 0 && t.is_square(x).unwrap_or(false)
}

/// The characteristic-3 condition set.
pub fn condition_1_4(inst: &TrinomialInstance<'_>) -> bool {
    let t = inst.ctx.base();
    first_equation(inst) && is_nonzero_square(t, t.sub(t.from_prime(1), norm_ratio(inst)))
}

/// The characteristic-2 condition set, including both trace branches.
pub fn condition_1_2_3(inst: &TrinomialInstance<'_>) -> Result<bool, PpError> {
    let c = inst.ctx;
    require_char(c, c.p() == 2, "2")?;
    let t = c.base();
    let na = c.norm(inst.a);
    let nb = c.norm(inst.b);
    let s = c.embed(t.add(t.add(t.from_prime(1), na), nb));
    let a2q = c.conj(c.mul(inst.a, inst.a));
    let eq = c.add(c.mul(inst.b, s), a2q).is_zero();
    let tr_arg = if nb == t.from_prime(1) {
        t.add(t.from_prime(1), t.inv(na))
    } else {
        t.div(nb, na)
    };
    Ok(eq && t.abs_trace(tr_arg) == 0)
}

/// First alternative for p > 3.
pub fn condition_1_5(inst: &TrinomialInstance<'_>) -> Result<bool, PpError> {
    let c = inst.ctx;
    require_char(c, c.p() > 3, "> 3")?;
    let t = c.base();
    let r = t.sub(t.from_prime(1), t.mul(t.from_prime(4), norm_ratio(inst)));
    Ok(first_equation(inst) && is_nonzero_square(t, r))
}

/// Second alternative for p > 3.
pub fn condition_1_6(inst: &TrinomialInstance<'_>) -> Result<bool, PpError> {
    let c = inst.ctx;
    require_char(c, c.p() > 3, "> 3")?;
    let t = c.base();
    let aq1 = c.div(c.conj(inst.a), inst.a);
    let eq = c.add(aq1, c.scale(inst.b, t.from_prime(3))).is_zero();
    let r = t.sub(t.from_prime(1), t.mul(t.from_prime(4), norm_ratio(inst)));
    Ok(eq && is_nonzero_square(t, t.mul(t.from_prime(-3), r)))
}

/// (a, b) ↦ (aβ^{1-q}, bβ^{2(q-1)}).
pub fn scaling_normalize<'a>(inst: &TrinomialInstance<'a>, beta: Fq2) -> Result<TrinomialInstance<'a>, PpError> {
    let c = inst.ctx;
    if beta.is_zero() {
        return Err(FieldError::Zero.into());
    }
    // β^{q-1} = β^q / β lies in μ_{q+1}
    let t = c.div(c.conj(beta), beta);
    Ok(TrinomialInstance {
        ctx: c,
        a: c.div(inst.a, t),
        b: c.mul(inst.b, c.mul(t, t)),
    })
}

/// Smallest (a, b) in index order over the scaling orbit.
pub fn orbit_representative(mu: &[Fq2], ctx: &FieldCtx, a: Fq2, b: Fq2) -> (Fq2, Fq2) {
    let q = ctx.q();
    mu.iter()
        .map(|&t| (ctx.div(a, t), ctx.mul(b, ctx.mul(t, t))))
        .min_by_key(|(x, y)| (x.index(q), y.index(q)))
        .expect("mu is nonempty")
}

/// c1^3 c3 - c1^2 c2^2 + c0 c2^3.
pub fn cubic_discriminant_term(t: &GfTable, [c3, c2, c1, c0]: [Fq; 4]) -> Fq {
    let c1_2 = t.mul(c1, c1);
    let c2_2 = t.mul(c2, c2);
    let a = t.mul(t.mul(c1_2, c1), c3);
    let b = t.mul(c1_2, c2_2);
    let d = t.mul(c0, t.mul(c2_2, c2));
    t.add(t.sub(a, b), d)
}

/// Williams' criterion on raw F_q coefficients `[c3, c2, c1, c0]`.
pub fn williams_predicate(t: &GfTable, c: [Fq; 4]) -> Result<bool, PpError> {
    let [c3, c2, _, _] = c;
    if c3.0 == 0 {
        return Err(PpError::Precondition("c3 = 0"));
    }
    if c2.0 == 0 {
        return Err(PpError::Precondition("c2 = 0"));
    }
    let delta = cubic_discriminant_term(t, c);
    if delta.0 == 0 {
        return Err(PpError::Precondition("c1^3 c3 - c1^2 c2^2 + c0 c2^3 = 0"));
    }
    Ok(!t.is_square(t.neg(delta))?)
}

/// Number of roots of c3 x^3 + c2 x^2 + c1 x + c0 in F_q.
pub fn cubic_root_count(t: &GfTable, [c3, c2, c1, c0]: [Fq; 4]) -> usize {
    t.elements()
        .filter(|&x| {
            let v = [c3, c2, c1, c0].iter().fold(Fq(0), |acc, &c| t.add(t.mul(acc, x), c));
            v.0 == 0
        })
        .count()
}

/// Williams' criterion for elements of F_q given in a context.
pub fn williams_unique_root(
    ctx: &FieldCtx,
    c3: &FieldElem,
    c2: &FieldElem,
    c1: &FieldElem,
    c0: &FieldElem,
) -> Result<bool, PpError> {
    let mut raw = [Fq(0); 4];
    for (slot, e) in raw.iter_mut().zip([c3, c2, c1, c0]) {
        if e.ctx_id() != ctx.id() {
            return Err(FieldError::ContextMismatch.into());
        }
        if !ctx.in_base(e.value()) {
            return Err(FieldError::WrongLevel { expected: Level::Fq, found: e.level() }.into());
        }
        *slot = e.value().c0;
    }
    williams_predicate(ctx.base(), raw)
}

/// D(Y) = D0 + D1 Y + D2 Y^2 with E = D^2, when it exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub d0: Fq,
    pub d1: Fq,
    pub d2: Fq,
    pub exists: bool,
}

impl SquareDecomposition {
    fn none() -> Self {
        SquareDecomposition { d0: Fq(0), d1: Fq(0), d2: Fq(0), exists: false }
    }
}

/// The coefficients of D(Y)^2, lowest first.
pub fn square_coeffs(t: &GfTable, d: [Fq; 3]) -> [Fq; 5] {
    let two = t.from_prime(2);
    let [d0, d1, d2] = d;
    [
        t.mul(d0, d0),
        t.mul(two, t.mul(d0, d1)),
        t.add(t.mul(d1, d1), t.mul(two, t.mul(d0, d2))),
        t.mul(two, t.mul(d1, d2)),
        t.mul(d2, d2),
    ]
}

/// The two consequences of E = D^2 used to eliminate D (characteristic 3).
pub fn square_identities(t: &GfTable, e: [Fq; 5]) -> (Fq, Fq) {
    let [e0, e1, e2, e3, e4] = e;
    let first = t.sub(t.mul(e0, t.mul(e3, e3)), t.mul(t.mul(e1, e1), e4));
    let second = t.sub(
        t.sub(t.mul(e3, t.mul(e3, e3)), t.mul(e1, t.mul(e4, e4))),
        t.mul(e2, t.mul(e3, e4)),
    );
    (first, second)
}

/// Writes e0 + e1 Y + ... + e4 Y^4 as D(Y)^2 with deg D ≤ 2 if possible.
/// Both signs of D0 are tried; D is unique up to sign.
pub fn square_decompose(t: &GfTable, e: [Fq; 5]) -> SquareDecomposition {
    let [e0, e1, e2, e3, e4] = e;
    let two = t.from_prime(2);
    let sqrt = |x: Fq| -> Option<Fq> {
        match x.0 {
            0 => Some(x),
            _ => t.sqrt(x).ok(),
        }
    };
    let mut candidates: Vec<[Fq; 3]> = Vec::new();
    if let Some(r0) = sqrt(e0) {
        if r0.0 != 0 {
            for d0 in [r0, t.neg(r0)] {
                // e1 = 2 D0 D1, e2 = D1^2 + 2 D0 D2
                let d1 = t.div(e1, t.mul(two, d0));
                let d2 = t.div(t.sub(e2, t.mul(d1, d1)), t.mul(two, d0));
                candidates.push([d0, d1, d2]);
            }
        } else if e1.0 == 0 {
            if let Some(r1) = sqrt(e2) {
                if r1.0 != 0 {
                    for d1 in [r1, t.neg(r1)] {
                        candidates.push([Fq(0), d1, t.div(e3, t.mul(two, d1))]);
                    }
                } else if e3.0 == 0 {
                    if let Some(r2) = sqrt(e4) {
                        candidates.push([Fq(0), Fq(0), r2]);
                    }
                }
            }
        }
    }
    let found = candidates.into_iter().find(|&d| square_coeffs(t, d) == e);
    match found {
        Some([d0, d1, d2]) => {
            if t.p() == 3 {
                let (i1, i2) = square_identities(t, e);
                debug_assert!(i1.0 == 0 && i2.0 == 0);
                if i1.0 != 0 || i2.0 != 0 {
                    return SquareDecomposition::none();
                }
            }
            SquareDecomposition { d0, d1, d2, exists: true }
        }
        None => SquareDecomposition::none(),
    }
}

/// Evaluates e0 + e1 y + ... at y.
pub fn eval_quartic(t: &GfTable, e: &[Fq], y: Fq) -> Fq {
    e.iter().rev().fold(Fq(0), |acc, &c| t.add(t.mul(acc, y), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{make_tower, make_tower_p};

    fn all_pairs(ctx: &FieldCtx) -> impl Iterator<Item = (Fq2, Fq2)> + '_ {
        ctx.nonzero_elements().flat_map(move |a| ctx.nonzero_elements().map(move |b| (a, b)))
    }

    #[test]
    fn frobenius_is_a_permutation() {
        let ctx = make_tower(1).unwrap();
        assert!(permutes_fq2(&ctx, |x| ctx.pow(x, 3)).unwrap());
        assert!(!permutes_fq2(&ctx, |x| ctx.mul(x, x)).unwrap());
    }

    #[test]
    fn n1_predicates_agree_everywhere() {
        let ctx = make_tower(1).unwrap();
        let checker = MuChecker::new(&ctx);
        // at q = 3, 1 - (b/a)^4 is never a nonzero square, so nothing permutes
        for (a, b) in all_pairs(&ctx) {
            let inst = TrinomialInstance::new(&ctx, a, b).unwrap();
            let bf = is_pp_bruteforce(&inst).unwrap();
            assert_eq!(bf, checker.is_pp(a, b));
            assert_eq!(bf, condition_1_4(&inst));
            assert!(!bf);
        }
    }

    #[test]
    fn n2_has_permutations() {
        let ctx = make_tower(2).unwrap();
        let checker = MuChecker::new(&ctx);
        let count = all_pairs(&ctx).filter(|&(a, b)| checker.is_pp(a, b)).count();
        assert!(count > 0);
    }

    #[test]
    fn root_in_mu_means_not_pp() {
        let ctx = make_tower(2).unwrap();
        let checker = MuChecker::new(&ctx);
        let mut hits = 0;
        for (a, b) in all_pairs(&ctx).step_by(7) {
            if !checker.poles(a, b).is_empty() {
                let inst = TrinomialInstance::new(&ctx, a, b).unwrap();
                assert!(!is_pp_bruteforce(&inst).unwrap());
                assert!(!checker.is_pp(a, b));
                hits += 1;
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn one_plus_a_plus_b_zero_is_not_pp() {
        let ctx = make_tower(2).unwrap();
        for a in ctx.nonzero_elements() {
            let b = ctx.sub(ctx.neg(ctx.one()), a);
            if b.is_zero() {
                continue;
            }
            let inst = TrinomialInstance::new(&ctx, a, b).unwrap();
            assert!(!is_pp_via_mu(&inst));
        }
    }

    #[test]
    fn equal_norms_fail_condition() {
        let ctx = make_tower(2).unwrap();
        for (a, b) in all_pairs(&ctx).filter(|(a, b)| ctx.norm(*a) == ctx.norm(*b)).take(200) {
            assert!(!condition_1_4(&TrinomialInstance::new(&ctx, a, b).unwrap()));
        }
    }

    #[test]
    fn characteristic_two_conditions_match_bruteforce() {
        let ctx = make_tower_p(2, 2).unwrap();
        let mut seen_unit_branch = false;
        for (a, b) in all_pairs(&ctx) {
            let inst = TrinomialInstance::new(&ctx, a, b).unwrap();
            assert_eq!(condition_1_2_3(&inst).unwrap(), is_pp_bruteforce(&inst).unwrap(), "a={a:?} b={b:?}");
            seen_unit_branch |= ctx.norm(b) == Fq(1);
        }
        assert!(seen_unit_branch);
        let ctx3 = make_tower(1).unwrap();
        let inst = TrinomialInstance::new(&ctx3, ctx3.one(), ctx3.one()).unwrap();
        assert!(matches!(condition_1_2_3(&inst), Err(PpError::CharacteristicMismatch { .. })));
        assert!(condition_1_5(&inst).is_err());
    }

    #[test]
    fn characteristic_five_conditions_match_bruteforce() {
        let ctx = make_tower_p(5, 1).unwrap();
        for (a, b) in all_pairs(&ctx) {
            let inst = TrinomialInstance::new(&ctx, a, b).unwrap();
            let cond = condition_1_5(&inst).unwrap() || condition_1_6(&inst).unwrap();
            assert_eq!(cond, is_pp_bruteforce(&inst).unwrap(), "a={a:?} b={b:?}");
        }
    }

    #[test]
    fn scaling_preserves_predicates() {
        let ctx = make_tower(2).unwrap();
        let checker = MuChecker::new(&ctx);
        let one = ctx.one();
        for (i, (a, b)) in all_pairs(&ctx).step_by(11).enumerate() {
            let inst = TrinomialInstance::new(&ctx, a, b).unwrap();
            let id = scaling_normalize(&inst, one).unwrap();
            assert_eq!((id.a, id.b), (a, b));
            let beta = Fq2::from_index(1 + (i as u64 * 13) % 80, 9);
            let s = scaling_normalize(&inst, beta).unwrap();
            assert_eq!(checker.is_pp(a, b), checker.is_pp(s.a, s.b));
            assert_eq!(condition_1_4(&inst), condition_1_4(&s));
        }
        let inst = TrinomialInstance::new(&ctx, one, one).unwrap();
        assert!(scaling_normalize(&inst, ctx.zero()).is_err());
    }

    #[test]
    fn williams_rejects_degenerate_input() {
        let t = GfTable::new(3, 2).unwrap();
        let one = t.from_prime(1);
        assert!(matches!(williams_predicate(&t, [Fq(0), one, one, one]), Err(PpError::Precondition(_))));
        assert!(williams_predicate(&t, [one, Fq(0), one, one]).is_err());
        // c1 = c0 = 0 kills the discriminant term
        assert!(williams_predicate(&t, [one, one, Fq(0), Fq(0)]).is_err());
    }

    #[test]
    fn square_decomposition_of_constructed_square() {
        let t = GfTable::new(3, 3).unwrap();
        let one = t.from_prime(1);
        // (1 + Y + Y^2)^2
        let e = square_coeffs(&t, [one, one, one]);
        let d = square_decompose(&t, e);
        assert!(d.exists);
        assert!([d.d0, d.d1, d.d2] == [one, one, one] || [d.d0, d.d1, d.d2] == [t.neg(one); 3]);
        let nonsquare = t.elements().skip(1).find(|&x| !t.is_square(x).unwrap()).unwrap();
        assert!(!square_decompose(&t, [nonsquare, one, Fq(0), Fq(0), one]).exists);
        // degenerate shapes: Y^4 and Y^2
        assert!(square_decompose(&t, [Fq(0), Fq(0), Fq(0), Fq(0), one]).exists);
        assert!(square_decompose(&t, [Fq(0), Fq(0), one, Fq(0), Fq(0)]).exists);
        assert!(square_decompose(&t, [Fq(0); 5]).exists);
    }
}
