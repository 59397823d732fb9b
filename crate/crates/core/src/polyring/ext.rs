//! Extension fields F_3[t]/(m(t)) of arbitrary degree and root finding in them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::DensePoly;
use super::upoly::UPoly;
use super::PolyError;
use crate::fields::GfTable;
use crate::ring::{ExactDivOps, FieldOps, RingOps};

/// Largest degree for which roots are found by exhaustive enumeration.
pub const EXHAUSTIVE_MAX_DEGREE: usize = 12;

/// F_3[t]/(m). Elements are coefficient vectors of length exactly `deg m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    m: Vec<u8>,
    d: usize,
}

impl ExtField {
    pub fn new(modulus: &UPoly) -> Result<Self, PolyError> {
        let d = modulus.degree().ok_or(PolyError::BadModulus)?;
        if d == 0 || modulus.coeffs()[d] != 1 || !modulus.is_irreducible() {
            return Err(PolyError::BadModulus);
        }
        if d > 40 {
            return Err(PolyError::ExtensionTooLarge(d));
        }
        Ok(ExtField { m: modulus.coeffs().to_vec(), d })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> UPoly {
        UPoly::new(self.m.clone())
    }

    /// Field order 3^d.
    pub fn order(&self) -> u128 {
        3u128.pow(self.d as u32)
    }

    /// The class of `t`.
    pub fn gen(&self) -> Vec<u8> {
        self.from_upoly(&UPoly::x())
    }

    pub fn from_upoly(&self, p: &UPoly) -> Vec<u8> {
        let r = p.rem(&self.modulus());
        let mut v = r.coeffs().to_vec();
        v.resize(self.d, 0);
        v
    }

    pub fn to_upoly(&self, a: &[u8]) -> UPoly {
        UPoly::new(a.to_vec())
    }

    /// Enumeration index `Σ c_i 3^i`.
    pub fn index(&self, a: &[u8]) -> u128 {
        a.iter().rev().fold(0u128, |acc, &c| acc * 3 + c as u128)
    }

    pub fn frobenius(&self, a: &[u8]) -> Vec<u8> {
        let a = a.to_vec();
        self.mul(&self.mul(&a, &a), &a)
    }

    /// All roots of `f` (coefficients in this field, little-endian), found
    /// by Cantor–Zassenhaus and returned in index order without repetition.
    pub fn roots(&self, f: &[Vec<u8>]) -> Vec<Vec<u8>> {
        let dp = DensePoly::new(self);
        let f = dp.monic(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let x = dp.x();
        let mut xq = dp.rem(&x, &f);
        for _ in 0..self.d {
            xq = dp.powmod(&xq, 3, &f);
        }
        let g = dp.gcd(&f, &dp.sub(&xq, &x));
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        self.split(&dp, g, &mut rng, &mut out);
        out.sort_by_key(|r| self.index(r));
        out.dedup();
        out
    }

    fn split(&self, dp: &DensePoly<'_, Self>, g: Vec<Vec<u8>>, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u8>>) {
        match g.len() {
            0 | 1 => return,
            2 => {
                out.push(self.neg(&g[0]));
                return;
            }
            _ => {}
        }
        let half = (self.order() - 1) / 2;
        loop {
            let a: Vec<u8> = (0..self.d).map(|_| rng.gen_range(0..3)).collect();
            let lin = vec![a, self.one()];
            let h = dp.sub(&dp.powmod(&lin, half, &g), &[self.one()]);
            let d = dp.gcd(&h, &g);
            if d.len() > 1 && d.len() < g.len() {
                let (q, _) = dp.divrem(&g, &d);
                self.split(dp, d, rng, out);
                self.split(dp, dp.monic(&q), rng, out);
                return;
            }
        }
    }
}

impl RingOps for ExtField {
    type Elem = Vec<u8>;

    fn zero(&self) -> Vec<u8> {
        vec![0; self.d]
    }
    fn one(&self) -> Vec<u8> {
        let mut v = vec![0; self.d];
        v[0] = 1;
        v
    }
    fn from_int(&self, c: i64) -> Vec<u8> {
        let mut v = vec![0; self.d];
        v[0] = c.rem_euclid(3) as u8;
        v
    }
    fn is_zero(&self, a: &Vec<u8>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        a.iter().zip(b).map(|(x, y)| (x + y) % 3).collect()
    }
    fn sub(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        a.iter().zip(b).map(|(x, y)| (x + 3 - y) % 3).collect()
    }
    fn neg(&self, a: &Vec<u8>) -> Vec<u8> {
        a.iter().map(|x| (3 - x) % 3).collect()
    }
    fn mul(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        let d = self.d;
        let mut acc = vec![0u32; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u32;
            }
        }
        // t^d = -(m_0 + ... + m_{d-1} t^{d-1})
        for k in (d..2 * d - 1).rev() {
            let c = acc[k] % 3;
            if c != 0 {
                for i in 0..d {
                    acc[k - d + i] += c * ((3 - self.m[i] as u32) % 3);
                }
            }
        }
        acc[..d].iter().map(|&c| (c % 3) as u8).collect()
    }
}

impl ExactDivOps for ExtField {
    fn div_exact(&self, a: &Vec<u8>, b: &Vec<u8>) -> Option<Vec<u8>> {
        (!self.is_zero(b)).then(|| self.mul(a, &self.inv(b)))
    }
}

impl FieldOps for ExtField {
    fn inv(&self, a: &Vec<u8>) -> Vec<u8> {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }
}

/// Roots of `p` (coefficients in F_3) among the residues of F_3[t]/(modulus),
/// in index order. Degrees up to [`EXHAUSTIVE_MAX_DEGREE`] enumerate every
/// residue; larger degrees fall back to Cantor–Zassenhaus.
pub fn roots_in_extension(p: &UPoly, modulus: &UPoly) -> Result<Vec<UPoly>, PolyError> {
    let field = ExtField::new(modulus)?;
    if p.is_zero() {
        return Err(PolyError::ConstantInput);
    }
    if field.degree() <= EXHAUSTIVE_MAX_DEGREE {
        let m: Vec<u32> = modulus.coeffs().iter().map(|&c| c as u32).collect();
        let t = GfTable::with_modulus(3, &m).map_err(|_| PolyError::BadModulus)?;
        let coeffs: Vec<_> = p.coeffs().iter().map(|&c| t.from_prime(c as i64)).collect();
        let roots = t
            .elements()
            .filter(|&x| {
                let v = coeffs.iter().rev().fold(t.from_prime(0), |acc, &c| t.add(t.mul(acc, x), c));
                v.0 == 0
            })
            .map(|x| UPoly::new(t.digits(x).iter().map(|&c| c as u8).collect()))
            .collect();
        return Ok(roots);
    }
    let lifted: Vec<Vec<u8>> = p.coeffs().iter().map(|&c| field.from_int(c as i64)).collect();
    Ok(field.roots(&lifted).iter().map(|r| field.to_upoly(r)).collect())
}
