//! Dense univariate polynomials over F_3.

use std::fmt;

use super::dense::DensePoly;
use super::mpoly::{mono_exp, MPoly};
use super::PolyError;
use crate::fp_poly;
use crate::ring::F3;

/// Little-endian coefficients in `{0, 1, 2}`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<u8>);

const D: DensePoly<'static, F3> = DensePoly::new(&F3);

impl UPoly {
    pub fn new(coeffs: Vec<u8>) -> Self {
        let mut v: Vec<u8> = coeffs.into_iter().map(|c| c % 3).collect();
        D.trim(&mut v);
        UPoly(v)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| c.rem_euclid(3) as u8).collect())
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![1])
    }

    pub fn x() -> Self {
        UPoly(vec![0, 1])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = 1;
        UPoly(v)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        UPoly(D.add(&self.0, &o.0))
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        UPoly(D.sub(&self.0, &o.0))
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| (3 - c) % 3).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        UPoly(D.mul(&self.0, &o.0))
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, o: &UPoly) -> (UPoly, UPoly) {
        let (q, r) = D.divrem(&self.0, &o.0);
        (UPoly(q), UPoly(r))
    }

    pub fn rem(&self, o: &UPoly) -> UPoly {
        UPoly(D.rem(&self.0, &o.0))
    }

    pub fn powmod(&self, e: u128, m: &UPoly) -> UPoly {
        UPoly(D.powmod(&self.0, e, &m.0))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        UPoly(D.gcd(&self.0, &o.0))
    }

    pub fn monic(&self) -> UPoly {
        UPoly(D.monic(&self.0))
    }

    pub fn eval(&self, x: u8) -> u8 {
        D.eval(&self.0, &(x % 3))
    }

    /// Rabin's test; constants are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        let v: Vec<u32> = self.0.iter().map(|&c| c as u32).collect();
        fp_poly::is_irreducible(&v, 3)
    }

    /// Reads a polynomial that involves at most the variable `var`.
    pub fn from_mpoly(p: &MPoly, var: usize) -> Result<UPoly, PolyError> {
        if var >= p.nvars() {
            return Err(PolyError::VarOutOfRange(var));
        }
        let mut v = vec![0u8; p.degree(var) as usize + 1];
        for &(m, c) in p.terms() {
            if (0..p.nvars()).any(|i| i != var && mono_exp(m, i) > 0) {
                return Err(PolyError::NotUnivariate);
            }
            v[mono_exp(m, var) as usize] = c;
        }
        Ok(UPoly::new(v))
    }

    pub fn to_mpoly(&self, nvars: usize, var: usize) -> MPoly {
        let mut e = vec![0u32; nvars];
        MPoly::from_terms(
            nvars,
            self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| {
                e[var] = i as u32;
                (super::mpoly::mono_from_exps(&e), c as i64)
            }),
        )
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly{:?}", self.0)
    }
}

/// Monic gcd of two polynomials in the single variable `var`.
pub fn gcd_univariate(p1: &MPoly, p2: &MPoly, var: usize) -> Result<MPoly, PolyError> {
    let a = UPoly::from_mpoly(p1, var)?;
    let b = UPoly::from_mpoly(p2, var)?;
    Ok(a.gcd(&b).to_mpoly(p1.nvars(), var))
}

/// Rabin irreducibility of a univariate polynomial of degree at least one.
pub fn is_irreducible_f3(p: &MPoly, var: usize) -> Result<bool, PolyError> {
    let u = UPoly::from_mpoly(p, var)?;
    match u.degree() {
        None | Some(0) => Err(PolyError::ConstantInput),
        Some(_) => Ok(u.is_irreducible()),
    }
}
