//! Dense univariate polynomials over a prime field F_p, coefficients stored
//! little-endian as `u32` residues. Used for table construction and for
//! Rabin's irreducibility test; the hot symbolic paths use their own types.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod_int(a % p, p - 2, p)
}

fn pow_mod_int(b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push((x + p - y) % p);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x as u64 * y as u64;
        }
        // keep the accumulators small for large p
        if i % 64 == 63 {
            acc.iter_mut().for_each(|c| *c %= p as u64);
        }
    }
    let mut out: Poly = acc.into_iter().map(|c| (c % p as u64) as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lc_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lc_inv as u64 % p as u64;
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let t = c * mi as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - t) % p as u64) as u32;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(base: &[u32], mut e: u128, m: &[u32], p: u32) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, m, p);
        }
    }
    acc
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lc) = x.last() {
        let inv = inv_mod(lc, p);
        x.iter_mut().for_each(|c| *c = (*c as u64 * inv as u64 % p as u64) as u32);
    }
    x
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Rabin's test: `f` of degree d is irreducible over F_p iff
/// `x^(p^d) = x mod f` and `gcd(x^(p^(d/r)) - x, f) = 1` for each prime `r | d`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![rem(&x, &f, p)];
    for k in 1..=d {
        let next = powmod(&frob[k - 1], p as u128, &f, p);
        frob.push(next);
    }
    if frob[d] != frob[0] {
        return false;
    }
    for r in prime_factors(d as u64) {
        let k = d / r as usize;
        let h = sub(&frob[k], &x, p);
        if gcd(&h, &f, p).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles_over_f3() {
        assert!(is_irreducible(&[1, 0, 1], 3)); // x^2 + 1
        assert!(!is_irreducible(&[2, 0, 1], 3)); // x^2 - 1
        assert!(is_irreducible(&[1, 2, 0, 1], 3)); // x^3 - x + 1
        assert!(!is_irreducible(&[0, 0, 1], 3));
    }

    #[test]
    fn count_irreducible_quartics_f3() {
        // (3^4 - 3^2) / 4 = 18 monic irreducible quartics
        let mut count = 0;
        for t in 0..81u32 {
            let f = vec![t % 3, t / 3 % 3, t / 9 % 3, t / 27 % 3, 1];
            if is_irreducible(&f, 3) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }

    #[test]
    fn gcd_is_monic() {
        // (x-1)(x+1) and 2(x-1)
        let a = vec![2, 0, 1];
        let b = vec![1, 2];
        assert_eq!(gcd(&a, &b, 3), vec![2, 1]);
    }
}
