//! Sparse polynomials over F_3 in at most eight variables.
//!
//! A monomial is packed into a `u128`: bits 112..128 hold the total degree
//! and each variable owns a 14-bit field below it, variable 0 highest. With
//! that layout integer comparison is graded lexicographic order and monomial
//! multiplication is integer addition, as long as no field overflows.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ring::{ExactDivOps, RingOps};

pub type Mono = u128;

pub const MAX_VARS: usize = 8;
const FIELD_BITS: u32 = 14;
const MAX_EXP: u32 = (1 << FIELD_BITS) - 1;
const DEG_SHIFT: u32 = 112;
const MAX_TOTAL: u32 = u16::MAX as u32;
// bit k*14 receives the borrow out of field k-1 when subtracting
const BORROW_MASK: u128 = {
    let mut m = 0u128;
    let mut k = 1;
    while k <= 8 {
        m |= 1u128 << (FIELD_BITS * k);
        k += 1;
    }
    m
};
// products larger than this are split to bound the scratch buffer
const MUL_CHUNK: usize = 1 << 20;

#[inline]
fn shift(i: usize) -> u32 {
    FIELD_BITS * (7 - i as u32)
}

#[inline]
pub fn mono_exp(m: Mono, i: usize) -> u32 {
    ((m >> shift(i)) as u32) & MAX_EXP
}

#[inline]
pub fn mono_total(m: Mono) -> u32 {
    (m >> DEG_SHIFT) as u32
}

/// Packs an exponent vector; panics when an exponent does not fit.
pub fn mono_from_exps(e: &[u32]) -> Mono {
    assert!(e.len() <= MAX_VARS);
    let mut m: Mono = 0;
    let mut total = 0u32;
    for (i, &x) in e.iter().enumerate() {
        assert!(x <= MAX_EXP, "exponent {x} exceeds packing limit");
        m |= (x as u128) << shift(i);
        total += x;
    }
    assert!(total <= MAX_TOTAL, "total degree exceeds packing limit");
    m | ((total as u128) << DEG_SHIFT)
}

#[inline]
fn mono_var(i: usize, e: u32) -> Mono {
    ((e as u128) << shift(i)) | ((e as u128) << DEG_SHIFT)
}

#[inline]
fn mono_divides(d: Mono, m: Mono) -> bool {
    m >= d && ((m.wrapping_sub(d) ^ m ^ d) & BORROW_MASK) == 0
}

#[inline]
fn cmul(a: u8, b: u8) -> u8 {
    a * b % 3
}

/// Coefficient of an integer in F_3, as 0, 1 or 2.
#[inline]
pub(crate) fn f3(c: i64) -> u8 {
    c.rem_euclid(3) as u8
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    // strictly decreasing monomials, coefficients in {1, 2}
    terms: Vec<(Mono, u8)>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        let c = f3(c);
        if c != 0 {
            p.terms.push((0, c));
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        MPoly { nvars, terms: vec![(mono_var(i, 1), 1)] }
    }

    pub fn monomial(nvars: usize, exps: &[u32], c: i64) -> Self {
        assert!(exps.len() <= nvars);
        let mut p = Self::zero(nvars);
        let c = f3(c);
        if c != 0 {
            p.terms.push((mono_from_exps(exps), c));
        }
        p
    }

    /// Builds from arbitrary `(monomial, coefficient)` pairs.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, i64)>) -> Self {
        let raw: Vec<(Mono, u8)> = terms.into_iter().map(|(m, c)| (m, f3(c))).collect();
        Self::normalize(nvars, raw)
    }

    fn normalize(nvars: usize, mut raw: Vec<(Mono, u8)>) -> Self {
        raw.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        let mut terms: Vec<(Mono, u8)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 = (last.1 + c) % 3,
                _ => terms.push((m, c % 3)),
            }
        }
        terms.retain(|t| t.1 != 0);
        MPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, u8)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    /// The constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<u8> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn exps(&self, m: Mono) -> Vec<u32> {
        (0..self.nvars).map(|i| mono_exp(m, i)).collect()
    }

    pub fn leading_term(&self) -> Option<(Mono, u8)> {
        self.terms.first().copied()
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| mono_exp(t.0, var)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.nvars];
        for &(m, _) in &self.terms {
            for (i, di) in d.iter_mut().enumerate() {
                *di = (*di).max(mono_exp(m, i));
            }
        }
        d
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| mono_total(t.0)).unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|t| mono_exp(t.0, var) > 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let d = self.degrees();
        (0..self.nvars).filter(|&i| d[i] > 0).collect()
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, c)| (m, 3 - c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> MPoly {
        match f3(c) {
            0 => MPoly::zero(self.nvars),
            1 => self.clone(),
            _ => self.neg(),
        }
    }

    fn merge(&self, other: &MPoly, negate_other: bool) -> MPoly {
        assert_eq!(self.nvars, other.nvars, "operands use different variable counts");
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: u8| if negate_other { 3 - c } else { c };
        while i < a.len() && j < b.len() {
            let (ma, ca) = a[i];
            let (mb, cb) = b[j];
            if ma > mb {
                out.push((ma, ca));
                i += 1;
            } else if mb > ma {
                out.push((mb, fix(cb)));
                j += 1;
            } else {
                let c = (ca + fix(cb)) % 3;
                if c != 0 {
                    out.push((ma, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, fix(c))));
        MPoly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.merge(other, true)
    }

    fn check_product(&self, other: &MPoly) {
        let (da, db) = (self.degrees(), other.degrees());
        for i in 0..self.nvars {
            assert!(da[i] + db[i] <= MAX_EXP, "exponent overflow in product");
        }
        assert!(
            self.total_degree() + other.total_degree() <= MAX_TOTAL,
            "total degree overflow in product"
        );
    }

    /// Multiplies by `c * mono`.
    pub fn mul_term(&self, mono: Mono, c: u8) -> MPoly {
        let c = c % 3;
        if c == 0 || self.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, d)| (m + mono, cmul(c, d))).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars, "operands use different variable counts");
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(self.nvars);
        }
        self.check_product(other);
        self.mul_unchecked(other)
    }

    fn mul_unchecked(&self, other: &MPoly) -> MPoly {
        let (a, b) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        if b.len() == 1 {
            return a.mul_term(b.terms[0].0, b.terms[0].1);
        }
        if a.len() * b.len() > MUL_CHUNK && a.len() > 1 {
            let mid = a.len() / 2;
            let lo = MPoly { nvars: a.nvars, terms: a.terms[..mid].to_vec() };
            let hi = MPoly { nvars: a.nvars, terms: a.terms[mid..].to_vec() };
            return lo.mul_unchecked(b).add(&hi.mul_unchecked(b));
        }
        let mut raw = Vec::with_capacity(a.len() * b.len());
        for &(ma, ca) in &a.terms {
            for &(mb, cb) in &b.terms {
                raw.push((ma + mb, cmul(ca, cb)));
            }
        }
        Self::normalize(self.nvars, raw)
    }

    /// `self^3`, which in characteristic 3 just triples every monomial.
    pub fn cube(&self) -> MPoly {
        let d = self.degrees();
        assert!(d.iter().all(|&x| 3 * x <= MAX_EXP), "exponent overflow in cube");
        assert!(3 * self.total_degree() <= MAX_TOTAL, "total degree overflow in cube");
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, c)| (m * 3, c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        let mut cur = self.clone();
        while e > 0 {
            for _ in 0..e % 3 {
                acc = acc.mul(&cur);
            }
            e /= 3;
            if e > 0 {
                cur = cur.cube();
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert_eq!(self.nvars, d.nvars);
        let (ld, lc) = d.leading_term()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.len() == 1 {
            let mut terms = Vec::with_capacity(self.len());
            for &(m, c) in &self.terms {
                if !mono_divides(ld, m) {
                    return None;
                }
                terms.push((m - ld, cmul(c, lc)));
            }
            return Some(MPoly { nvars: self.nvars, terms });
        }
        let mut rem: BTreeMap<Mono, u8> = self.terms.iter().copied().collect();
        let mut quot = Vec::new();
        while let Some((&m, &c)) = rem.iter().next_back() {
            if !mono_divides(ld, m) {
                return None;
            }
            let qm = m - ld;
            // lc is its own inverse in F_3
            let qc = cmul(c, lc);
            quot.push((qm, qc));
            for &(dm, dc) in &d.terms {
                let key = qm + dm;
                let sub = cmul(qc, dc);
                let entry = rem.entry(key).or_insert(0);
                *entry = (*entry + 3 - sub) % 3;
                if *entry == 0 {
                    rem.remove(&key);
                }
            }
        }
        Some(MPoly { nvars: self.nvars, terms: quot })
    }

    /// Coefficients with respect to `var`: entry `i` multiplies `var^i` and
    /// no longer contains `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree(var) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for &(m, c) in &self.terms {
            let e = mono_exp(m, var);
            out[e as usize].terms.push((m - mono_var(var, e), c));
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[MPoly]) -> MPoly {
        let mut raw = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            let shiftm = mono_var(var, e as u32);
            raw.extend(c.terms.iter().map(|&(m, k)| (m + shiftm, k)));
        }
        Self::normalize(nvars, raw)
    }

    /// Leading coefficient as a polynomial in `var`.
    pub fn lc_in(&self, var: usize) -> MPoly {
        self.coeffs_in(var).pop().unwrap_or_else(|| MPoly::zero(self.nvars))
    }

    /// `self` with `var` replaced by `value` (Horner).
    pub fn substitute(&self, var: usize, value: &MPoly) -> MPoly {
        let coeffs = self.coeffs_in(var);
        let mut acc = MPoly::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// `self` with `var` set to the constant `c`.
    pub fn subs_const(&self, var: usize, c: i64) -> MPoly {
        self.substitute(var, &MPoly::constant(self.nvars, c))
    }

    /// Renames variable `i` to `map[i]` in a ring with `nvars` variables.
    pub fn remap(&self, map: &[usize], nvars: usize) -> MPoly {
        assert!(map.len() >= self.nvars && nvars <= MAX_VARS);
        let raw = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut e = vec![0u32; nvars];
                for i in 0..self.nvars {
                    let x = mono_exp(m, i);
                    if x > 0 {
                        e[map[i]] += x;
                    }
                }
                (mono_from_exps(&e), c)
            })
            .collect();
        Self::normalize(nvars, raw)
    }

    /// Simultaneous substitution of every variable `i` by `images[i]`.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map(|p| p.nvars).unwrap_or(0);
        if self.nvars == 0 {
            return MPoly { nvars: nv, terms: self.terms.clone() };
        }
        let degs = self.degrees();
        let mut cache: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(p.nvars), p.clone()]).collect();
        for i in 0..self.nvars {
            while cache[i].len() <= degs[i] as usize {
                let next = cache[i].last().unwrap().mul(&images[i]);
                cache[i].push(next);
            }
        }
        let mut raw = Vec::new();
        for &(m, c) in &self.terms {
            let mut t = MPoly::constant(nv, c as i64);
            for (i, pw) in cache.iter().enumerate() {
                let e = mono_exp(m, i) as usize;
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            raw.extend(t.terms);
        }
        Self::normalize(nv, raw)
    }

    /// Evaluates every variable except `main` and returns the coefficients
    /// of the resulting univariate polynomial in `main`, low degree first.
    pub fn specialize<R: RingOps>(&self, ring: &R, main: usize, vals: &[R::Elem]) -> Vec<R::Elem> {
        let degs = self.degrees();
        let pows = power_tables(ring, vals, &degs, Some(main));
        let two = ring.from_int(2);
        let mut out = vec![ring.zero(); degs.get(main).copied().unwrap_or(0) as usize + 1];
        for &(m, c) in &self.terms {
            let mut t = if c == 1 { ring.one() } else { two.clone() };
            for (i, pw) in pows.iter().enumerate() {
                let e = mono_exp(m, i) as usize;
                if i != main && e > 0 {
                    t = ring.mul(&t, &pw[e]);
                }
            }
            let e = mono_exp(m, main) as usize;
            out[e] = ring.add(&out[e], &t);
        }
        out
    }

    /// Full evaluation at `vals`.
    pub fn eval<R: RingOps>(&self, ring: &R, vals: &[R::Elem]) -> R::Elem {
        let degs = self.degrees();
        let pows = power_tables(ring, vals, &degs, None);
        let mut acc = ring.zero();
        for &(m, c) in &self.terms {
            let mut t = ring.from_int(c as i64);
            for (i, pw) in pows.iter().enumerate() {
                let e = mono_exp(m, i) as usize;
                if e > 0 {
                    t = ring.mul(&t, &pw[e]);
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }
}

fn power_tables<R: RingOps>(ring: &R, vals: &[R::Elem], degs: &[u32], skip: Option<usize>) -> Vec<Vec<R::Elem>> {
    degs.iter()
        .enumerate()
        .map(|(i, &d)| {
            if Some(i) == skip || d == 0 {
                return Vec::new();
            }
            let mut v = vec![ring.one()];
            for _ in 0..d {
                let next = ring.mul(v.last().unwrap(), &vals[i]);
                v.push(next);
            }
            v
        })
        .collect()
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                MPoly::$f(self, rhs)
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                MPoly::$f(&self, &rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                MPoly::$f(&self, rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                MPoly::$f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(self)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(&self)
    }
}

/// F_3[x_0..x_{n-1}] as a ring context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MPolyRing {
    pub nvars: usize,
}

impl RingOps for MPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::zero(self.nvars)
    }
    fn one(&self) -> MPoly {
        MPoly::one(self.nvars)
    }
    fn from_int(&self, c: i64) -> MPoly {
        MPoly::constant(self.nvars, c)
    }
    fn is_zero(&self, a: &MPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        MPoly::neg(a)
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn pow(&self, a: &MPoly, e: u128) -> MPoly {
        a.pow(u32::try_from(e).expect("exponent too large for a polynomial power"))
    }
}

impl ExactDivOps for MPolyRing {
    fn div_exact(&self, a: &MPoly, b: &MPoly) -> Option<MPoly> {
        a.div_exact(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(3, i)
    }

    fn arb_poly4() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((0u32..4, 0u32..4, 0u32..4, 0u32..4, 1i64..3), 0..=20).prop_map(|ts| {
            MPoly::from_terms(4, ts.into_iter().map(|(a, b, c, d, k)| (mono_from_exps(&[a, b, c, d]), k)))
        })
    }

    #[test]
    fn packing_orders_grlex() {
        let a = mono_from_exps(&[2, 0, 0]);
        let b = mono_from_exps(&[1, 1, 0]);
        let c = mono_from_exps(&[0, 0, 3]);
        let d = mono_from_exps(&[1, 0, 0]);
        assert!(c > a && a > b && b > d);
        assert_eq!(a + b, mono_from_exps(&[3, 1, 0]));
        assert!(mono_divides(d, a));
        assert!(!mono_divides(b, a));
        assert!(!mono_divides(a, d));
    }

    #[test]
    fn small_identities() {
        let (a, b) = (x(0), x(1));
        let lhs = (&a + &b).pow(3);
        assert_eq!(lhs, a.pow(3) + b.pow(3));
        let sq = (&a - &b) * (&a + &b);
        assert_eq!(sq, a.pow(2) - b.pow(2));
        assert!((&a - &a).is_zero());
        assert_eq!(MPoly::constant(3, 4), MPoly::one(3));
        assert_eq!(MPoly::constant(3, -1), MPoly::constant(3, 2));
    }

    #[test]
    fn division_exact_and_inexact() {
        let (a, b, c) = (x(0), x(1), x(2));
        let f = (&a + &b + MPoly::one(3)) * (&c - &a);
        assert_eq!(f.div_exact(&(&c - &a)), Some(&a + &b + MPoly::one(3)));
        assert_eq!(f.div_exact(&(&c + &a)), None);
        assert_eq!(f.div_exact(&MPoly::constant(3, 2)), Some(f.neg()));
    }

    #[test]
    fn coefficient_split_round_trip() {
        let f = x(0).pow(3) * x(1) + x(2) * x(1).pow(2) - MPoly::one(3);
        let cs = f.coeffs_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(MPoly::from_coeffs_in(3, 1, &cs), f);
        assert_eq!(f.lc_in(1), x(2));
        assert_eq!(f.substitute(1, &x(1)), f);
    }

    #[test]
    fn compose_and_remap() {
        let f = x(0) * x(1) + x(2).pow(2);
        let g = f.remap(&[2, 0, 1], 3);
        assert_eq!(g, x(2) * x(0) + x(1).pow(2));
        let h = f.compose(&[x(1), x(0), x(0) + x(1)]);
        assert_eq!(h, x(1) * x(0) + (x(0) + x(1)).pow(2));
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((0u32..4, 0u32..4, 0u32..4, 1i64..3), 0..20)
            .prop_map(|ts| MPoly::from_terms(3, ts.into_iter().map(|(a, b, c, k)| (mono_from_exps(&[a, b, c]), k))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_poly4(), b in arb_poly4(), c in arb_poly4()) {
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b), Some(a));
        }

        #[test]
        fn pow_matches_repeated_product(a in arb_poly(), e in 0u32..7) {
            let mut acc = MPoly::one(3);
            for _ in 0..e { acc = acc * &a; }
            prop_assert_eq!(a.pow(e), acc);
        }
    }
}
