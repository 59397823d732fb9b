//! Dense univariate polynomials over an arbitrary field context.
//! Coefficient vectors are little-endian and kept trimmed (no trailing zero).

use crate::ring::FieldOps;

pub struct DensePoly<'f, F: FieldOps> {
    f: &'f F,
}

type V<F> = Vec<<F as crate::ring::RingOps>::Elem>;

impl<'f, F: FieldOps> DensePoly<'f, F> {
    pub const fn new(f: &'f F) -> Self {
        DensePoly { f }
    }

    pub fn field(&self) -> &F {
        self.f
    }

    pub fn trim(&self, a: &mut V<F>) {
        while a.last().is_some_and(|c| self.f.is_zero(c)) {
            a.pop();
        }
    }

    pub fn trimmed(&self, a: &[F::Elem]) -> V<F> {
        let mut v = a.to_vec();
        self.trim(&mut v);
        v
    }

    /// Degree of a trimmed polynomial, `None` for zero.
    pub fn deg(a: &[F::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn x(&self) -> V<F> {
        vec![self.f.zero(), self.f.one()]
    }

    pub fn constant(&self, c: F::Elem) -> V<F> {
        self.trimmed(&[c])
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> V<F> {
        let n = a.len().max(b.len());
        let zero = self.f.zero();
        let mut out: V<F> = (0..n)
            .map(|i| self.f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.trim(&mut out);
        out
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> V<F> {
        let n = a.len().max(b.len());
        let zero = self.f.zero();
        let mut out: V<F> = (0..n)
            .map(|i| self.f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.trim(&mut out);
        out
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> V<F> {
        let mut out: V<F> = a.iter().map(|x| self.f.mul(x, c)).collect();
        self.trim(&mut out);
        out
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> V<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.f.mul(x, y);
                out[i + j] = self.f.add(&out[i + j], &t);
            }
        }
        self.trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (V<F>, V<F>) {
        let b = self.trimmed(b);
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut r = self.trimmed(a);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = self.f.inv(&b[db]);
        let mut q = vec![self.f.zero(); r.len() - db];
        while r.len() > db {
            let top = r.len() - 1;
            let c = self.f.mul(&r[top], &inv);
            let s = top - db;
            for (i, bi) in b.iter().enumerate().take(db) {
                let t = self.f.mul(&c, bi);
                r[s + i] = self.f.sub(&r[s + i], &t);
            }
            q[s] = c;
            r.pop();
            self.trim(&mut r);
        }
        self.trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> V<F> {
        self.divrem(a, b).1
    }

    pub fn mulmod(&self, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> V<F> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &[F::Elem], mut e: u128, m: &[F::Elem]) -> V<F> {
        let mut acc = self.rem(&[self.f.one()], m);
        let mut base = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    pub fn monic(&self, a: &[F::Elem]) -> V<F> {
        let a = self.trimmed(a);
        match a.last() {
            None => a,
            Some(lc) => {
                let inv = self.f.inv(lc);
                self.scale(&a, &inv)
            }
        }
    }

    /// Monic gcd, zero when both inputs vanish.
    pub fn gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> V<F> {
        let mut x = self.trimmed(a);
        let mut y = self.trimmed(b);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        a.iter()
            .rev()
            .fold(self.f.zero(), |acc, c| self.f.add(&self.f.mul(&acc, x), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::F3;

    #[test]
    fn divrem_reconstructs() {
        let d = DensePoly::new(&F3);
        let a = vec![1, 2, 0, 1, 1];
        let b = vec![2, 1, 1];
        let (q, r) = d.divrem(&a, &b);
        assert!(r.len() < b.len());
        assert_eq!(d.add(&d.mul(&q, &b), &r), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let d = DensePoly::new(&F3);
        let common = vec![1, 0, 1]; // x^2 + 1
        let a = d.mul(&common, &[1, 1]);
        let b = d.mul(&common, &[2, 1, 1]);
        assert_eq!(d.gcd(&a, &b), common);
        assert_eq!(d.gcd(&a, &[]), d.monic(&a));
    }
}
