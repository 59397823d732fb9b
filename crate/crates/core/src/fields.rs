//! The tower F_p ⊂ F_q ⊂ F_{q^2} with q = p^n.
//!
//! F_q is table driven: an element is the index `Σ c_i p^i` of its
//! coefficient vector modulo the base modulus, and multiplication and
//! addition go through log/antilog and Zech tables. F_{q^2} is
//! F_q[z]/(z^2 - δ) with δ a nonsquare for odd p, and F_q[z]/(z^2 + z + δ)
//! with absolute trace Tr(δ) = 1 for p = 2.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fp_poly;
use crate::ring::{ExactDivOps, FieldOps, RingOps};

/// Largest table-driven field order (3^12 fits, as does 2^19).
pub const MAX_TABLE_ORDER: u32 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {n} out of range for p = {p} (need 1 <= n <= {max})")]
    DegreeOutOfRange { p: u32, n: u32, max: u32 },
    #[error("{0} is not a supported prime")]
    UnsupportedPrime(u32),
    #[error("modulus is not a monic irreducible polynomial over F_{p}")]
    BadModulus { p: u32 },
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("expected an element of {expected:?}, found {found:?}")]
    WrongLevel { expected: Level, found: Level },
    #[error("zero is not allowed here")]
    Zero,
    #[error("element is not a square")]
    NotASquare,
    #[error("delta must be a nonsquare of F_q")]
    BadDelta,
    #[error("cannot parse field element from {0:?}")]
    Parse(String),
}

/// Element of a table field, stored as its coefficient index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq(pub u32);

/// Element `c0 + c1*z` of the quadratic extension.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq2 {
    pub c0: Fq,
    pub c1: Fq,
}

impl Fq2 {
    pub const fn new(c0: Fq, c1: Fq) -> Self {
        Fq2 { c0, c1 }
    }

    pub const fn from_base(c0: Fq) -> Self {
        Fq2 { c0, c1: Fq(0) }
    }

    pub fn is_zero(self) -> bool {
        self.c0.0 == 0 && self.c1.0 == 0
    }

    /// Enumeration index `c0 + q*c1`.
    pub fn index(self, q: u32) -> u64 {
        self.c0.0 as u64 + q as u64 * self.c1.0 as u64
    }

    pub fn from_index(i: u64, q: u32) -> Self {
        Fq2 {
            c0: Fq((i % q as u64) as u32),
            c1: Fq((i / q as u64) as u32),
        }
    }
}

const NONE: u32 = u32::MAX;

/// F_{p^n} as F_p[t]/(m(t)) with log/Zech tables.
#[derive(Clone)]
pub struct GfTable {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Fq,
    // exp has length 2(q-1) so that log sums need no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one_log: u32,
}

impl fmt::Debug for GfTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GfTable")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_small_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn max_degree(p: u32) -> u32 {
    let mut n = 0;
    let mut q = 1u64;
    while q * p as u64 <= MAX_TABLE_ORDER as u64 {
        q *= p as u64;
        n += 1;
    }
    n
}

impl GfTable {
    /// F_{p^n} over the lexicographically smallest monic irreducible of
    /// degree n, comparing coefficient tuples `(c_{n-1}, ..., c_0)`.
    pub fn new(p: u32, n: u32) -> Result<Self, FieldError> {
        if !is_small_prime(p) || p > 251 {
            return Err(FieldError::UnsupportedPrime(p));
        }
        let max = max_degree(p);
        if n == 0 || n > max {
            return Err(FieldError::DegreeOutOfRange { p, n, max });
        }
        let count = (p as u64).pow(n);
        for t in 0..count {
            let mut m = digits_of(t, p, n as usize);
            m.push(1);
            if fp_poly::is_irreducible(&m, p) {
                return Self::build(p, m);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// F_p[t]/(modulus) for a caller-chosen monic irreducible (little-endian).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self, FieldError> {
        if !is_small_prime(p) || p > 251 {
            return Err(FieldError::UnsupportedPrime(p));
        }
        let mut m: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        fp_poly::trim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 || !fp_poly::is_irreducible(&m, p) {
            return Err(FieldError::BadModulus { p });
        }
        let n = (m.len() - 1) as u32;
        let max = max_degree(p);
        if n > max {
            return Err(FieldError::DegreeOutOfRange { p, n, max });
        }
        Self::build(p, m)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        let n = (modulus.len() - 1) as u32;
        let q = p.pow(n);
        let order = (q - 1) as u64;
        let factors = fp_poly::prime_factors(order);
        // first element (in index order) of multiplicative order q-1
        let generator = (1..q)
            .find(|&c| {
                let v = digits_of(c as u64, p, n as usize);
                factors.iter().all(|&r| {
                    let w = fp_poly::powmod(&v, (order / r) as u128, &modulus, p);
                    w != [1]
                })
            })
            .expect("multiplicative group is cyclic");
        let gvec = digits_of(generator as u64, p, n as usize);

        let qm1 = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * qm1.max(1)];
        let mut log = vec![NONE; q as usize];
        let mut cur: Vec<u32> = vec![1];
        for i in 0..qm1 {
            let idx = index_of(&cur, p);
            exp[i] = idx;
            log[idx as usize] = i as u32;
            cur = fp_poly::mulmod(&cur, &gvec, &modulus, p);
        }
        for i in qm1..exp.len() {
            exp[i] = exp[i - qm1];
        }
        let mut zech = vec![NONE; qm1];
        for (i, z) in zech.iter_mut().enumerate() {
            let x = exp[i];
            let c0 = x % p;
            let y = x - c0 + (c0 + 1) % p;
            if y != 0 {
                *z = log[y as usize];
            }
        }
        let neg_one_log = log[(p - 1) as usize];
        Ok(GfTable {
            p,
            n,
            q,
            modulus,
            generator: Fq(generator),
            exp,
            log,
            zech,
            neg_one_log,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, little-endian.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element the tables are built on.
    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// Embeds the prime-field residue `c mod p`.
    pub fn from_prime(&self, c: i64) -> Fq {
        Fq(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn digits(&self, x: Fq) -> Vec<u32> {
        digits_of(x.0 as u64, self.p, self.n as usize)
    }

    pub fn from_digits(&self, d: &[u32]) -> Fq {
        let mut v: Vec<u32> = d.iter().map(|c| c % self.p).collect();
        fp_poly::trim(&mut v);
        let r = if v.len() > self.n as usize {
            fp_poly::rem(&v, &self.modulus, self.p)
        } else {
            v
        };
        Fq(index_of(&r, self.p))
    }

    /// Discrete log base the table generator; `None` for zero.
    pub fn log(&self, x: Fq) -> Option<u32> {
        if x.0 == 0 {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let (la, lb) = (self.log[a.0 as usize], self.log[b.0 as usize]);
        let qm1 = self.q - 1;
        let d = if lb >= la { lb - la } else { lb + qm1 - la };
        let z = self.zech[d as usize];
        if z == NONE {
            Fq(0)
        } else {
            Fq(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if a.0 == 0 {
            a
        } else {
            Fq(self.exp[(self.log[a.0 as usize] + self.neg_one_log) as usize])
        }
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            Fq(0)
        } else {
            Fq(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
        }
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a.0 != 0, "inverse of zero");
        let qm1 = self.q - 1;
        let l = self.log[a.0 as usize];
        Fq(self.exp[((qm1 - l) % qm1.max(1)) as usize])
    }

    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fq, e: u128) -> Fq {
        if e == 0 {
            return Fq(1);
        }
        if a.0 == 0 {
            return Fq(0);
        }
        let qm1 = (self.q - 1) as u128;
        let l = self.log[a.0 as usize] as u128;
        Fq(self.exp[(l * (e % qm1) % qm1) as usize])
    }

    /// `x^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u128)
    }

    /// Absolute trace to F_p, returned as a prime-field residue.
    pub fn abs_trace(&self, a: Fq) -> u32 {
        let mut acc = Fq(0);
        let mut x = a;
        for _ in 0..self.n {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    /// Euler's criterion; zero is rejected.
    pub fn is_square(&self, a: Fq) -> Result<bool, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::Zero);
        }
        if self.p == 2 {
            return Ok(true);
        }
        Ok(self.pow(a, ((self.q - 1) / 2) as u128) == Fq(1))
    }

    /// Square root with the lexicographically smaller coefficient vector.
    pub fn sqrt(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Ok(a);
        }
        if !self.is_square(a)? {
            return Err(FieldError::NotASquare);
        }
        let m = self.q as u128;
        let y = if self.p == 2 {
            self.pow(a, m / 2)
        } else if m % 4 == 3 {
            self.pow(a, (m + 1) / 4)
        } else {
            let nonsq = self
                .elements()
                .skip(1)
                .find(|&x| !self.is_square(x).unwrap())
                .expect("odd-order fields have nonsquares");
            tonelli_shanks(a, m, nonsq, Fq(1), |x, y| self.mul(x, y), |x, e| self.pow(x, e))
        };
        let other = self.neg(y);
        Ok(match self.digits(y).cmp(&self.digits(other)) {
            CmpOrdering::Greater => other,
            _ => y,
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(0..self.q))
    }

    pub fn format(&self, x: Fq) -> String {
        self.digits(x)
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(&self, s: &str) -> Result<Fq, FieldError> {
        let bad = || FieldError::Parse(s.to_string());
        let parts: Vec<&str> = s.trim().split(',').collect();
        if parts.len() != self.n as usize {
            return Err(bad());
        }
        let mut d = Vec::with_capacity(parts.len());
        for part in parts {
            let c: u32 = part.trim().parse().map_err(|_| bad())?;
            if c >= self.p {
                return Err(bad());
            }
            d.push(c);
        }
        Ok(Fq(index_of(&d, self.p)))
    }
}

fn digits_of(mut t: u64, p: u32, n: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(n);
    for _ in 0..n {
        d.push((t % p as u64) as u32);
        t /= p as u64;
    }
    d
}

fn index_of(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Tonelli–Shanks over any cyclic group given by its operations; `m` is the
/// field order and `nonsq` a nonsquare.
fn tonelli_shanks<T: Copy + PartialEq>(
    x: T,
    m: u128,
    nonsq: T,
    one: T,
    mul: impl Fn(T, T) -> T,
    pow: impl Fn(T, u128) -> T,
) -> T {
    let mut odd = m - 1;
    let mut s = 0u32;
    while odd % 2 == 0 {
        odd /= 2;
        s += 1;
    }
    let mut c = pow(nonsq, odd);
    let mut t = pow(x, odd);
    let mut r = pow(x, (odd + 1) / 2);
    let mut mm = s;
    while t != one {
        let mut i = 0;
        let mut tt = t;
        while tt != one {
            tt = mul(tt, tt);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(mm - i - 1) {
            b = mul(b, b);
        }
        mm = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    r
}

impl RingOps for GfTable {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq(0)
    }
    fn one(&self) -> Fq {
        Fq(1)
    }
    fn from_int(&self, c: i64) -> Fq {
        self.from_prime(c)
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        GfTable::add(self, *a, *b)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        GfTable::sub(self, *a, *b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        GfTable::neg(self, *a)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        GfTable::mul(self, *a, *b)
    }
    fn pow(&self, a: &Fq, e: u128) -> Fq {
        GfTable::pow(self, *a, e)
    }
}

impl ExactDivOps for GfTable {
    fn div_exact(&self, a: &Fq, b: &Fq) -> Option<Fq> {
        (b.0 != 0).then(|| GfTable::div(self, *a, *b))
    }
}

impl FieldOps for GfTable {
    fn inv(&self, a: &Fq) -> Fq {
        GfTable::inv(self, *a)
    }
}

static NEXT_CTX_ID: AtomicU64 = AtomicU64::new(1);

/// The tower F_p ⊂ F_q ⊂ F_{q^2}. Immutable and `Sync`.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    id: u64,
    base: GfTable,
    delta: Fq,
    // primitive element of F_{q^2}; for odd p it is also a nonsquare
    top_gen: Fq2,
}

/// Serialized context description.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CtxInfo {
    pub p: u32,
    pub n: u32,
    pub base_modulus: Vec<u32>,
    pub delta: String,
}

/// `make_tower_p(3, n)` restricted to `1 <= n <= 12`.
pub fn make_tower(n: u32) -> Result<FieldCtx, FieldError> {
    if !(1..=12).contains(&n) {
        return Err(FieldError::DegreeOutOfRange { p: 3, n, max: 12 });
    }
    make_tower_p(3, n)
}

/// Deterministic tower over F_p. δ is the smallest-index nonsquare for odd p
/// and the smallest-index element of absolute trace 1 for p = 2.
pub fn make_tower_p(p: u32, n: u32) -> Result<FieldCtx, FieldError> {
    let base = GfTable::new(p, n)?;
    let delta = if p == 2 {
        base.elements().find(|&x| base.abs_trace(x) == 1)
    } else {
        base.elements().skip(1).find(|&x| !base.is_square(x).unwrap())
    }
    .expect("nonsquare / trace-one element exists");
    Ok(FieldCtx::assemble(base, delta))
}

/// Tower with a caller-chosen δ (the replay scripts use a different `z` per
/// case). δ must be a nonsquare (odd p) or have trace 1 (p = 2).
pub fn make_tower_with_delta(p: u32, n: u32, delta: Fq) -> Result<FieldCtx, FieldError> {
    let base = GfTable::new(p, n)?;
    if delta.0 >= base.order() {
        return Err(FieldError::BadDelta);
    }
    let ok = if p == 2 {
        base.abs_trace(delta) == 1
    } else {
        delta.0 != 0 && !base.is_square(delta).unwrap()
    };
    if !ok {
        return Err(FieldError::BadDelta);
    }
    Ok(FieldCtx::assemble(base, delta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    /// The prime field.
    Fp,
    Fq,
    Fq2,
}

impl FieldCtx {
    fn assemble(base: GfTable, delta: Fq) -> Self {
        let mut ctx = FieldCtx {
            id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
            base,
            delta,
            top_gen: Fq2::from_base(Fq(1)),
        };
        let q = ctx.q() as u64;
        let order = q * q - 1;
        let factors = fp_poly::prime_factors(order);
        ctx.top_gen = (1..q * q)
            .map(|i| Fq2::from_index(i, q as u32))
            .find(|&g| factors.iter().all(|&r| ctx.pow(g, (order / r) as u128) != ctx.one()))
            .expect("multiplicative group is cyclic");
        ctx
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn p(&self) -> u32 {
        self.base.p
    }

    pub fn n(&self) -> u32 {
        self.base.n
    }

    pub fn q(&self) -> u32 {
        self.base.q
    }

    pub fn base(&self) -> &GfTable {
        &self.base
    }

    pub fn delta(&self) -> Fq {
        self.delta
    }

    /// The adjoined root `z`.
    pub fn z(&self) -> Fq2 {
        Fq2::new(Fq(0), Fq(1))
    }

    pub fn primitive(&self) -> Fq2 {
        self.top_gen
    }

    pub fn info(&self) -> CtxInfo {
        CtxInfo {
            p: self.p(),
            n: self.n(),
            base_modulus: self.base.modulus.clone(),
            delta: self.base.format(self.delta),
        }
    }

    pub fn zero(&self) -> Fq2 {
        Fq2::default()
    }

    pub fn one(&self) -> Fq2 {
        Fq2::from_base(Fq(1))
    }

    pub fn embed(&self, x: Fq) -> Fq2 {
        Fq2::from_base(x)
    }

    /// Every nonzero element of F_{q^2}, in index order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fq2> {
        let q = self.q();
        (1..q as u64 * q as u64).map(move |i| Fq2::from_index(i, q))
    }

    #[inline]
    pub fn add(&self, a: Fq2, b: Fq2) -> Fq2 {
        Fq2::new(self.base.add(a.c0, b.c0), self.base.add(a.c1, b.c1))
    }

    #[inline]
    pub fn sub(&self, a: Fq2, b: Fq2) -> Fq2 {
        Fq2::new(self.base.sub(a.c0, b.c0), self.base.sub(a.c1, b.c1))
    }

    #[inline]
    pub fn neg(&self, a: Fq2) -> Fq2 {
        Fq2::new(self.base.neg(a.c0), self.base.neg(a.c1))
    }

    #[inline]
    pub fn mul(&self, a: Fq2, b: Fq2) -> Fq2 {
        let f = &self.base;
        let hh = f.mul(a.c1, b.c1);
        let c0 = f.add(f.mul(a.c0, b.c0), f.mul(self.delta, hh));
        let mut c1 = f.add(f.mul(a.c0, b.c1), f.mul(a.c1, b.c0));
        if f.p == 2 {
            // z^2 = z + δ
            c1 = f.add(c1, hh);
        }
        Fq2::new(c0, c1)
    }

    pub fn scale(&self, a: Fq2, s: Fq) -> Fq2 {
        Fq2::new(self.base.mul(a.c0, s), self.base.mul(a.c1, s))
    }

    pub fn pow(&self, a: Fq2, mut e: u128) -> Fq2 {
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(b, b);
            }
        }
        acc
    }

    /// `x^q` through the linear conjugation map.
    #[inline]
    pub fn conj(&self, a: Fq2) -> Fq2 {
        if self.base.p == 2 {
            // z^q = z + 1
            Fq2::new(self.base.add(a.c0, a.c1), a.c1)
        } else {
            Fq2::new(a.c0, self.base.neg(a.c1))
        }
    }

    /// `x^q` by n successive p-th powers, each a product of p copies.
    pub fn frobenius_by_powering(&self, a: Fq2) -> Fq2 {
        let mut x = a;
        for _ in 0..self.n() {
            let mut y = x;
            for _ in 1..self.p() {
                y = self.mul(y, x);
            }
            x = y;
        }
        x
    }

    /// `x^(q+1)`, which lies in F_q.
    pub fn norm(&self, a: Fq2) -> Fq {
        let n = self.mul(a, self.conj(a));
        debug_assert_eq!(n.c1, Fq(0));
        n.c0
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: Fq2) -> Fq2 {
        let n = self.norm(a);
        self.scale(self.conj(a), self.base.inv(n))
    }

    pub fn div(&self, a: Fq2, b: Fq2) -> Fq2 {
        self.mul(a, self.inv(b))
    }

    pub fn in_base(&self, a: Fq2) -> bool {
        a.c1.0 == 0
    }

    /// Squareness in F_{q^2}^*.
    pub fn is_square(&self, a: Fq2) -> Result<bool, FieldError> {
        if a.is_zero() {
            return Err(FieldError::Zero);
        }
        if self.p() == 2 {
            return Ok(true);
        }
        let q = self.q() as u128;
        Ok(self.pow(a, (q * q - 1) / 2) == self.one())
    }

    /// Square root in F_{q^2}, smaller of `±y` by little-endian coefficients.
    pub fn sqrt(&self, a: Fq2) -> Result<Fq2, FieldError> {
        if a.is_zero() {
            return Ok(a);
        }
        if !self.is_square(a)? {
            return Err(FieldError::NotASquare);
        }
        let q = self.q() as u128;
        let m = q * q;
        let y = if self.p() == 2 {
            self.pow(a, m / 2)
        } else {
            // m = q^2 is 1 mod 4 for odd q
            tonelli_shanks(a, m, self.top_gen, self.one(), |x, y| self.mul(x, y), |x, e| self.pow(x, e))
        };
        let other = self.neg(y);
        Ok(if self.coeffs(y) <= self.coeffs(other) { y } else { other })
    }

    /// The q+1 elements of norm one, as powers of an element of order q+1.
    pub fn mu_subgroup(&self) -> Vec<Fq2> {
        let omega = self.pow(self.top_gen, (self.q() - 1) as u128);
        let mut out = Vec::with_capacity(self.q() as usize + 1);
        let mut x = self.one();
        for _ in 0..=self.q() {
            out.push(x);
            x = self.mul(x, omega);
        }
        out
    }

    /// Little-endian coefficient vector over F_p (length 2n).
    pub fn coeffs(&self, a: Fq2) -> Vec<u32> {
        let mut v = self.base.digits(a.c0);
        v.extend(self.base.digits(a.c1));
        v
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq2 {
        Fq2::new(self.base.random(rng), self.base.random(rng))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq2 {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn format(&self, a: Fq2) -> String {
        format!("{}+{}*z", self.base.format(a.c0), self.base.format(a.c1))
    }

    pub fn parse(&self, s: &str) -> Result<Fq2, FieldError> {
        let bad = || FieldError::Parse(s.to_string());
        let (x0, rest) = s.trim().split_once('+').ok_or_else(bad)?;
        let x1 = rest.trim().strip_suffix("*z").ok_or_else(bad)?;
        Ok(Fq2::new(
            self.base.parse(x0).map_err(|_| bad())?,
            self.base.parse(x1).map_err(|_| bad())?,
        ))
    }

    /// Tags a value with this context after checking it lies in `level`.
    pub fn elem(&self, level: Level, value: Fq2) -> Result<FieldElem, FieldError> {
        let q = self.q();
        let ok = value.c0.0 < q
            && value.c1.0 < q
            && match level {
                Level::Fp => value.c1.0 == 0 && value.c0.0 < self.p(),
                Level::Fq => value.c1.0 == 0,
                Level::Fq2 => true,
            };
        if !ok {
            return Err(FieldError::WrongLevel { expected: level, found: self.level_of(value) });
        }
        Ok(FieldElem { ctx_id: self.id, level, value })
    }

    fn level_of(&self, v: Fq2) -> Level {
        if v.c1.0 != 0 {
            Level::Fq2
        } else if v.c0.0 < self.p() {
            Level::Fp
        } else {
            Level::Fq
        }
    }
}

impl RingOps for FieldCtx {
    type Elem = Fq2;

    fn zero(&self) -> Fq2 {
        FieldCtx::zero(self)
    }
    fn one(&self) -> Fq2 {
        FieldCtx::one(self)
    }
    fn from_int(&self, c: i64) -> Fq2 {
        Fq2::from_base(self.base.from_prime(c))
    }
    fn is_zero(&self, a: &Fq2) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Fq2, b: &Fq2) -> Fq2 {
        FieldCtx::add(self, *a, *b)
    }
    fn sub(&self, a: &Fq2, b: &Fq2) -> Fq2 {
        FieldCtx::sub(self, *a, *b)
    }
    fn neg(&self, a: &Fq2) -> Fq2 {
        FieldCtx::neg(self, *a)
    }
    fn mul(&self, a: &Fq2, b: &Fq2) -> Fq2 {
        FieldCtx::mul(self, *a, *b)
    }
    fn pow(&self, a: &Fq2, e: u128) -> Fq2 {
        FieldCtx::pow(self, *a, e)
    }
}

impl ExactDivOps for FieldCtx {
    fn div_exact(&self, a: &Fq2, b: &Fq2) -> Option<Fq2> {
        (!b.is_zero()).then(|| FieldCtx::div(self, *a, *b))
    }
}

impl FieldOps for FieldCtx {
    fn inv(&self, a: &Fq2) -> Fq2 {
        FieldCtx::inv(self, *a)
    }
}

/// A value tagged with its context and level. Operations reject operands
/// from another context or another level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ctx_id: u64,
    level: Level,
    value: Fq2,
}

impl FieldElem {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn value(&self) -> Fq2 {
        self.value
    }

    pub fn ctx_id(&self) -> u64 {
        self.ctx_id
    }

    fn check(&self, ctx: &FieldCtx) -> Result<(), FieldError> {
        if self.ctx_id != ctx.id {
            Err(FieldError::ContextMismatch)
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, other: &FieldElem, ctx: &FieldCtx) -> Result<(), FieldError> {
        self.check(ctx)?;
        other.check(ctx)?;
        if self.level != other.level {
            return Err(FieldError::WrongLevel { expected: self.level, found: other.level });
        }
        Ok(())
    }

    fn with(&self, value: Fq2) -> FieldElem {
        FieldElem { value, ..*self }
    }

    pub fn add(&self, other: &FieldElem, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        self.check_pair(other, ctx)?;
        Ok(self.with(ctx.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElem, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        self.check_pair(other, ctx)?;
        Ok(self.with(ctx.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElem, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        self.check_pair(other, ctx)?;
        Ok(self.with(ctx.mul(self.value, other.value)))
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        self.check(ctx)?;
        Ok(self.with(ctx.neg(self.value)))
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        self.check(ctx)?;
        if self.value.is_zero() {
            return Err(FieldError::Zero);
        }
        Ok(self.with(ctx.inv(self.value)))
    }

    pub fn pow(&self, e: u128, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        self.check(ctx)?;
        Ok(self.with(ctx.pow(self.value, e)))
    }

    /// `x^q`; only defined on F_{q^2} elements.
    pub fn frobenius_q(&self, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        self.check(ctx)?;
        if self.level != Level::Fq2 {
            return Err(FieldError::WrongLevel { expected: Level::Fq2, found: self.level });
        }
        let y = ctx.conj(self.value);
        debug_assert_eq!(y, ctx.frobenius_by_powering(self.value));
        Ok(self.with(y))
    }

    /// Squareness at `level`, which must contain the element.
    pub fn is_square(&self, level: Level, ctx: &FieldCtx) -> Result<bool, FieldError> {
        self.check(ctx)?;
        match level {
            Level::Fq2 => ctx.is_square(self.value),
            Level::Fq | Level::Fp => {
                if self.value.c1.0 != 0 {
                    return Err(FieldError::WrongLevel { expected: level, found: Level::Fq2 });
                }
                if level == Level::Fp {
                    let f = GfTable::new(ctx.p(), 1)?;
                    if self.value.c0.0 >= ctx.p() {
                        return Err(FieldError::WrongLevel { expected: level, found: Level::Fq });
                    }
                    return f.is_square(self.value.c0);
                }
                ctx.base.is_square(self.value.c0)
            }
        }
    }

    /// Square root at the element's own level.
    pub fn sqrt(&self, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        self.check(ctx)?;
        let v = match self.level {
            Level::Fq2 => ctx.sqrt(self.value)?,
            Level::Fq => Fq2::from_base(ctx.base.sqrt(self.value.c0)?),
            Level::Fp => {
                let f = GfTable::new(ctx.p(), 1)?;
                Fq2::from_base(f.sqrt(self.value.c0)?)
            }
        };
        Ok(self.with(v))
    }

    /// Coefficients over F_p: length 1, n or 2n according to the level.
    pub fn coeffs(&self, ctx: &FieldCtx) -> Result<Vec<u32>, FieldError> {
        self.check(ctx)?;
        Ok(match self.level {
            Level::Fp => vec![self.value.c0.0],
            Level::Fq => ctx.base.digits(self.value.c0),
            Level::Fq2 => ctx.coeffs(self.value),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn n1_tower_is_degenerate() {
        let ctx = make_tower(1).unwrap();
        assert_eq!(ctx.base().modulus(), &[0, 1]);
        assert_eq!(ctx.delta(), Fq(2));
        assert_eq!(ctx.q(), 3);
    }

    #[test]
    fn degree_range_enforced() {
        assert!(make_tower(0).is_err());
        assert!(make_tower(13).is_err());
        assert!(make_tower_p(4, 1).is_err());
    }

    #[test]
    fn n3_modulus_is_smallest_irreducible() {
        let ctx = make_tower(3).unwrap();
        let m = ctx.base().modulus().to_vec();
        // independent check: a cubic is irreducible iff it has no root in F_3
        let has_root = |m: &[u32]| {
            (0..3u32).any(|x| m.iter().rev().fold(0, |acc, &c| (acc * x + c) % 3) == 0)
        };
        assert!(!has_root(&m));
        // every smaller tuple (c2, c1, c0) has a root
        let key = |m: &[u32]| m[2] * 9 + m[1] * 3 + m[0];
        for t in 0..key(&m) {
            let cand = [t % 3, t / 3 % 3, t / 9, 1];
            assert!(has_root(&cand), "{cand:?} should be reducible");
        }
        assert_eq!(ctx.q() as u64 * ctx.q() as u64 - 1, 728);
    }

    #[test]
    fn multiplicative_group_order() {
        let ctx = make_tower(2).unwrap();
        let g = ctx.primitive();
        let mut x = g;
        let mut order = 1u64;
        while x != ctx.one() {
            x = ctx.mul(x, g);
            order += 1;
        }
        assert_eq!(order, 80);
    }

    #[test]
    fn delta_is_nonsquare_and_minimal() {
        for n in 1..=5 {
            let ctx = make_tower(n).unwrap();
            let f = ctx.base();
            assert_eq!(f.pow(ctx.delta(), ((f.order() - 1) / 2) as u128), f.neg(Fq(1)));
            for x in 1..ctx.delta().0 {
                assert!(f.is_square(Fq(x)).unwrap());
            }
        }
    }

    fn axioms_at(n: u32) {
        let ctx = make_tower(n).unwrap();
        let f = ctx.base();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..1000 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, f.neg(a)), Fq(0));
            if a.0 != 0 {
                assert_eq!(f.mul(a, f.inv(a)), Fq(1));
            }
            let (x, y, w) = (ctx.random(&mut rng), ctx.random(&mut rng), ctx.random(&mut rng));
            assert_eq!(ctx.mul(ctx.mul(x, y), w), ctx.mul(x, ctx.mul(y, w)));
            assert_eq!(ctx.mul(x, ctx.add(y, w)), ctx.add(ctx.mul(x, y), ctx.mul(x, w)));
            if !x.is_zero() {
                assert_eq!(ctx.mul(x, ctx.inv(x)), ctx.one());
            }
        }
    }

    #[test]
    fn field_axioms_small_towers() {
        for n in 1..=3 {
            axioms_at(n);
        }
    }

    #[test]
    fn table_add_matches_coefficient_add() {
        let f = GfTable::new(3, 4).unwrap();
        for a in f.elements() {
            for b in [Fq(1), Fq(5), Fq(40), Fq(80)] {
                let da = f.digits(a);
                let db = f.digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(a, b), f.from_digits(&sum));
            }
        }
    }

    #[test]
    fn frobenius_paths_agree() {
        let ctx = make_tower(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let x = ctx.random(&mut rng);
            // oracle: n-fold cubing by plain multiplication
            let mut y = x;
            for _ in 0..3 {
                y = ctx.mul(ctx.mul(y, y), y);
            }
            assert_eq!(ctx.conj(x), y);
            assert_eq!(ctx.frobenius_by_powering(x), y);
            assert_eq!(ctx.conj(ctx.conj(x)), x);
        }
        assert_eq!(ctx.conj(ctx.z()), ctx.neg(ctx.z()));
        assert_eq!(ctx.conj(ctx.embed(Fq(7))), ctx.embed(Fq(7)));
    }

    #[test]
    fn frobenius_characteristic_two() {
        let ctx = make_tower_p(2, 2).unwrap();
        for x in ctx.nonzero_elements() {
            assert_eq!(ctx.conj(x), ctx.frobenius_by_powering(x));
            assert_eq!(ctx.norm(x), ctx.mul(x, ctx.conj(x)).c0);
        }
    }

    #[test]
    fn squares_and_roots() {
        let ctx = make_tower(3).unwrap();
        let f = ctx.base();
        let count = f.elements().skip(1).filter(|&x| f.is_square(x).unwrap()).count();
        assert_eq!(count, 13);
        assert_eq!(f.is_square(Fq(0)), Err(FieldError::Zero));
        assert!(!f.is_square(ctx.delta()).unwrap());
        assert_eq!(f.sqrt(Fq(1)).unwrap(), Fq(1));
        assert_eq!(f.sqrt(ctx.delta()), Err(FieldError::NotASquare));
    }

    #[test]
    fn tonelli_shanks_path() {
        // 81 ≡ 1 mod 4 forces Tonelli–Shanks
        let ctx = make_tower(4).unwrap();
        let f = ctx.base();
        for x in f.elements().skip(1) {
            let sq = f.mul(x, x);
            let r = f.sqrt(sq).unwrap();
            assert_eq!(f.mul(r, r), sq);
            assert!(f.digits(r) <= f.digits(f.neg(r)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let x = ctx.random_nonzero(&mut rng);
            let sq = ctx.mul(x, x);
            let r = ctx.sqrt(sq).unwrap();
            assert_eq!(ctx.mul(r, r), sq);
        }
    }

    #[test]
    fn mu_subgroup_matches_filter() {
        let ctx = make_tower(1).unwrap();
        assert_eq!(ctx.mu_subgroup().len(), 4);
        let ctx = make_tower(3).unwrap();
        let mut mu = ctx.mu_subgroup();
        assert_eq!(mu.len(), 28);
        for &x in &mu {
            assert_eq!(ctx.pow(x, 28), ctx.one());
            assert_eq!(ctx.mul(x, ctx.conj(x)), ctx.one());
        }
        mu.sort();
        mu.dedup();
        let mut oracle: Vec<Fq2> =
            ctx.nonzero_elements().filter(|&x| ctx.pow(x, 28) == ctx.one()).collect();
        oracle.sort();
        assert_eq!(mu, oracle);
    }

    #[test]
    fn frobenius_identities() {
        let ctx = make_tower(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let (x, y) = (ctx.random(&mut rng), ctx.random(&mut rng));
            assert_eq!(ctx.conj(ctx.add(x, y)), ctx.add(ctx.conj(x), ctx.conj(y)));
            assert_eq!(ctx.conj(ctx.mul(x, y)), ctx.mul(ctx.conj(x), ctx.conj(y)));
            assert_eq!(ctx.pow(x, 81), x);
            assert!(ctx.in_base(ctx.mul(x, ctx.conj(x))));
        }
    }

    #[test]
    fn square_class_is_multiplicative() {
        let ctx = make_tower(3).unwrap();
        let f = ctx.base();
        for x in f.elements().skip(1) {
            for y in f.elements().skip(1).step_by(5) {
                let s = f.is_square(f.mul(x, y)).unwrap();
                assert_eq!(s, f.is_square(x).unwrap() == f.is_square(y).unwrap());
            }
        }
    }

    #[test]
    fn serialization_round_trip() {
        let ctx = make_tower(3).unwrap();
        for x in ctx.nonzero_elements().step_by(17) {
            let s = ctx.format(x);
            assert_eq!(ctx.parse(&s).unwrap(), x);
        }
        assert_eq!(ctx.format(ctx.z()), "0,0,0+1,0,0*z");
        assert!(ctx.parse("1,2+0,0,0*z").is_err());
        let info = ctx.info();
        assert_eq!(info.p, 3);
        assert_eq!(info.base_modulus.len(), 4);
    }

    #[test]
    fn checked_elements_reject_mixing() {
        let a = make_tower(2).unwrap();
        let b = make_tower(2).unwrap();
        let x = a.elem(Level::Fq2, a.z()).unwrap();
        let y = b.elem(Level::Fq2, b.z()).unwrap();
        assert_eq!(x.add(&y, &a), Err(FieldError::ContextMismatch));
        let w = a.elem(Level::Fq, a.embed(Fq(4))).unwrap();
        assert!(matches!(x.mul(&w, &a), Err(FieldError::WrongLevel { .. })));
        assert!(w.frobenius_q(&a).is_err());
        assert_eq!(x.frobenius_q(&a).unwrap().value(), a.neg(a.z()));
        assert!(a.elem(Level::Fq, a.z()).is_err());
        let one = a.elem(Level::Fp, a.one()).unwrap();
        assert_eq!(one.sqrt(&a).unwrap().value(), a.one());
        assert_eq!(x.coeffs(&a).unwrap(), vec![0, 0, 1, 0]);
    }

    #[test]
    fn custom_modulus_tables() {
        // x^2 + 1 over F_3
        let f = GfTable::with_modulus(3, &[1, 0, 1]).unwrap();
        let t = f.from_digits(&[0, 1]);
        assert_eq!(f.mul(t, t), f.from_prime(-1));
        assert!(GfTable::with_modulus(3, &[2, 0, 1]).is_err());
    }

    #[test]
    fn delta_override() {
        let ctx = make_tower(2).unwrap();
        let nonsq: Vec<Fq> = ctx
            .base()
            .elements()
            .skip(1)
            .filter(|&x| !ctx.base().is_square(x).unwrap())
            .collect();
        let other = make_tower_with_delta(3, 2, nonsq[1]).unwrap();
        assert_eq!(other.delta(), nonsq[1]);
        assert!(make_tower_with_delta(3, 2, Fq(1)).is_err());
    }
}
