//! Resultants.
//!
//! Three engines are available and agree exactly:
//! * Euclid's algorithm over a field ([`res_euclid`], [`res_formal`]);
//! * the subresultant PRS over an integral domain ([`res_subresultant`]),
//!   applied to multivariate polynomials viewed in one variable;
//! * evaluation at a grid of points of a table field GF(3^k) followed by
//!   tensor Newton interpolation. This keeps intermediate sizes flat and is
//!   the default for large inputs.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::dense::DensePoly;
use super::mpoly::{mono_from_exps, MPoly, MPolyRing};
use super::upoly::UPoly;
use super::PolyError;
use crate::fields::{Fq, GfTable};
use crate::ring::{ExactDivOps, FieldOps, RingOps, F3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResultantStrategy {
    /// PRS for small inputs, evaluation/interpolation otherwise.
    #[default]
    Auto,
    Prs,
    Evaluation,
}

/// Resultant of two polynomials over a field, each at its actual degree.
pub fn res_euclid<F: FieldOps>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let dp = DensePoly::new(f);
    let mut a = dp.trimmed(a);
    let mut b = dp.trimmed(b);
    if a.is_empty() || b.is_empty() {
        return f.zero();
    }
    let mut acc = f.one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return f.mul(&acc, &f.pow(&b[0], da as u128));
        }
        if da == 0 {
            return f.mul(&acc, &f.pow(&a[0], db as u128));
        }
        let r = dp.rem(&a, &b);
        if r.is_empty() {
            return f.zero();
        }
        // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
        let dr = r.len() - 1;
        if da * db % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &f.pow(&b[db], (da - dr) as u128));
        a = b;
        b = r;
    }
}

/// Resultant with formal degrees `m >= deg a`, `n >= deg b`, i.e. the
/// determinant of the (m+n)-square Sylvester matrix.
pub fn res_formal<F: FieldOps>(f: &F, a: &[F::Elem], m: usize, b: &[F::Elem], n: usize) -> F::Elem {
    let dp = DensePoly::new(f);
    let a = dp.trimmed(a);
    let b = dp.trimmed(b);
    if a.is_empty() || b.is_empty() {
        return f.zero();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    assert!(da <= m && db <= n, "formal degree below actual degree");
    if da < m && db < n {
        return f.zero();
    }
    let core = res_euclid(f, &a, &b);
    if da < m {
        let mut c = f.mul(&core, &f.pow(&b[db], (m - da) as u128));
        if n * (m - da) % 2 == 1 {
            c = f.neg(&c);
        }
        c
    } else if db < n {
        f.mul(&core, &f.pow(&a[da], (n - db) as u128))
    } else {
        core
    }
}

fn trim_ring<R: RingOps>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    let mut v = a.to_vec();
    while v.last().is_some_and(|c| r.is_zero(c)) {
        v.pop();
    }
    v
}

/// `lc(b)^(deg a - deg b + 1) a mod b`, for `deg a >= deg b`.
fn prem<R: RingOps>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut rem = a.to_vec();
    let mut e = (a.len() - b.len() + 1) as u128;
    while rem.len() >= b.len() {
        let top = rem.len() - 1;
        let lr = rem[top].clone();
        let s = top - db;
        for c in rem.iter_mut() {
            *c = r.mul(c, lcb);
        }
        for (j, bj) in b.iter().enumerate() {
            let t = r.mul(&lr, bj);
            rem[s + j] = r.sub(&rem[s + j], &t);
        }
        debug_assert!(r.is_zero(&rem[top]));
        rem.pop();
        rem = trim_ring(r, &rem);
        e -= 1;
    }
    if e > 0 {
        let f = r.pow(lcb, e);
        for c in rem.iter_mut() {
            *c = r.mul(c, &f);
        }
    }
    rem
}

/// Subresultant PRS resultant over an integral domain (contents are not
/// removed). Inputs are coefficient lists, low degree first.
pub fn res_subresultant<R: ExactDivOps>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> R::Elem {
    let mut a = trim_ring(r, a);
    let mut b = trim_ring(r, b);
    if a.is_empty() || b.is_empty() {
        return r.zero();
    }
    let mut negate = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            negate = true;
        }
    }
    let sign = |x: R::Elem, neg: bool| if neg { r.neg(&x) } else { x };
    if b.len() == 1 {
        return sign(r.pow(&b[0], (a.len() - 1) as u128), negate);
    }
    let mut g = r.one();
    let mut h = r.one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = (da - db) as u128;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let rr = prem(r, &a, &b);
        if rr.is_empty() {
            return r.zero();
        }
        let divisor = r.mul(&g, &r.pow(&h, delta));
        let nb: Vec<R::Elem> = rr
            .iter()
            .map(|c| r.div_exact(c, &divisor).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = nb;
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => r
                .div_exact(&r.pow(&g, delta), &r.pow(&h, delta - 1))
                .expect("subresultant division is exact"),
        };
        if b.len() == 1 {
            break;
        }
    }
    let da = (a.len() - 1) as u128;
    let num = r.pow(&b[0], da);
    let res = if da == 1 {
        num
    } else {
        r.div_exact(&num, &r.pow(&h, da - 1)).expect("subresultant division is exact")
    };
    sign(res, negate)
}

/// `Res(p, q; var)` with the default strategy.
pub fn resultant(p: &MPoly, q: &MPoly, var: usize) -> Result<MPoly, PolyError> {
    resultant_with(p, q, var, ResultantStrategy::Auto)
}

pub fn resultant_with(p: &MPoly, q: &MPoly, var: usize, strategy: ResultantStrategy) -> Result<MPoly, PolyError> {
    let nv = p.nvars();
    assert_eq!(nv, q.nvars(), "operands use different variable counts");
    if var >= nv {
        return Err(PolyError::VarOutOfRange(var));
    }
    let (m, n) = (p.degree(var), q.degree(var));
    if m == 0 && n == 0 {
        return Err(PolyError::ZeroDegree);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(MPoly::zero(nv));
    }
    if m == 0 {
        return Ok(p.pow(n));
    }
    if n == 0 {
        return Ok(q.pow(m));
    }
    let (pd, qd) = (p.degrees(), q.degrees());
    let others: Vec<usize> = (0..nv).filter(|&j| j != var && pd[j] + qd[j] > 0).collect();
    if others.is_empty() {
        let a = UPoly::from_mpoly(p, var)?;
        let b = UPoly::from_mpoly(q, var)?;
        let c = res_euclid(&F3, a.coeffs(), b.coeffs());
        return Ok(MPoly::constant(nv, c as i64));
    }
    let use_prs = match strategy {
        ResultantStrategy::Prs => true,
        ResultantStrategy::Evaluation => false,
        ResultantStrategy::Auto => m.max(n) <= 2 || (m.max(n) <= 4 && p.len() + q.len() <= 40),
    };
    if use_prs {
        let ring = MPolyRing { nvars: nv };
        Ok(res_subresultant(&ring, &p.coeffs_in(var), &q.coeffs_in(var)))
    } else {
        res_by_evaluation(p, q, var, &others)
    }
}

/// Table field GF(3^k) with more than `bound` elements, shared process-wide.
pub(crate) fn table_exceeding(bound: u64) -> Result<Arc<GfTable>, PolyError> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<GfTable>>>> = OnceLock::new();
    let mut k = 1u32;
    while 3u64.pow(k) <= bound {
        k += 1;
        if k > 12 {
            return Err(PolyError::ExtensionTooLarge(k as usize));
        }
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&k) {
        return Ok(t.clone());
    }
    let t = Arc::new(GfTable::new(3, k).expect("degree within table range"));
    cache.lock().unwrap().insert(k, t.clone());
    Ok(t)
}

/// Coefficients (low degree first) of the polynomial through `(xs[i], ys[i])`.
pub(crate) fn newton_interpolate(f: &GfTable, xs: &[Fq], ys: &[Fq]) -> Vec<Fq> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = f.div(f.sub(c[i], c[i - 1]), f.sub(xs[i], xs[i - j]));
        }
    }
    let mut poly = vec![c[n - 1]];
    for i in (0..n - 1).rev() {
        // poly <- poly * (x - xs[i]) + c[i]
        let mut next = vec![Fq(0); poly.len() + 1];
        for (k, &pk) in poly.iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], pk);
            next[k] = f.sub(next[k], f.mul(pk, xs[i]));
        }
        next[0] = f.add(next[0], c[i]);
        poly = next;
    }
    poly.truncate(n);
    poly
}

fn res_by_evaluation(p: &MPoly, q: &MPoly, var: usize, others: &[usize]) -> Result<MPoly, PolyError> {
    let nv = p.nvars();
    let (m, n) = (p.degree(var), q.degree(var));
    let (pd, qd) = (p.degrees(), q.degrees());
    // deg_j Res <= m deg_j q + n deg_j p
    let bounds: Vec<usize> = others.iter().map(|&j| (m * qd[j] + n * pd[j]) as usize).collect();
    let table = table_exceeding(*bounds.iter().max().unwrap() as u64)?;
    let f = table.as_ref();
    let shape: Vec<usize> = bounds.iter().map(|b| b + 1).collect();
    let total: usize = shape.iter().product();

    let mut values: Vec<Fq> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut vals = vec![Fq(0); nv];
            let mut rest = idx;
            for (k, &j) in others.iter().enumerate().rev() {
                vals[j] = Fq((rest % shape[k]) as u32);
                rest /= shape[k];
            }
            let a = p.specialize(f, var, &vals);
            let b = q.specialize(f, var, &vals);
            res_formal(f, &a, m as usize, &b, n as usize)
        })
        .collect();

    let mut stride = 1usize;
    for k in (0..others.len()).rev() {
        let len = shape[k];
        let xs: Vec<Fq> = (0..len as u32).map(Fq).collect();
        let block = stride * len;
        let lines: Vec<(usize, usize)> = (0..total / block)
            .flat_map(|outer| (0..stride).map(move |inner| (outer * block, inner)))
            .collect();
        let results: Vec<Vec<Fq>> = lines
            .par_iter()
            .map(|&(base, inner)| {
                let ys: Vec<Fq> = (0..len).map(|i| values[base + inner + i * stride]).collect();
                newton_interpolate(f, &xs, &ys)
            })
            .collect();
        for (&(base, inner), coeffs) in lines.iter().zip(results) {
            for (i, c) in coeffs.into_iter().enumerate() {
                values[base + inner + i * stride] = c;
            }
        }
        stride = block;
    }

    let mut terms = Vec::new();
    for (idx, c) in values.into_iter().enumerate() {
        if c.0 == 0 {
            continue;
        }
        if c.0 >= 3 {
            return Err(PolyError::Interpolation);
        }
        let mut e = vec![0u32; nv];
        let mut rest = idx;
        for (k, &j) in others.iter().enumerate().rev() {
            e[j] = (rest % shape[k]) as u32;
            rest /= shape[k];
        }
        terms.push((mono_from_exps(&e), c.0 as i64));
    }
    Ok(MPoly::from_terms(nv, terms))
}
