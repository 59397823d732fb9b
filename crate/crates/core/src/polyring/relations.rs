//! Normal forms modulo monic relations, substitution, factorization checks.

use super::mpoly::MPoly;
use super::upoly::UPoly;
use super::PolyError;

/// `poly = 0`, monic of degree `degree` in its lead variable `var`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub var: usize,
    pub poly: MPoly,
    pub degree: u32,
    // poly - var^degree, so that var^degree ≡ -tail
    tail: MPoly,
}

/// Relations with pairwise distinct lead variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationSet {
    rels: Vec<Relation>,
}

impl RelationSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `poly = 0` with lead variable `var`; `label` names it in errors.
    pub fn push(&mut self, var: usize, poly: MPoly, label: &str) -> Result<(), PolyError> {
        if var >= poly.nvars() {
            return Err(PolyError::VarOutOfRange(var));
        }
        if self.rels.iter().any(|r| r.var == var) {
            return Err(PolyError::DuplicateLead(label.to_string()));
        }
        let degree = poly.degree(var);
        if degree == 0 || !poly.lc_in(var).is_one() {
            return Err(PolyError::NonMonic(label.to_string()));
        }
        let lead = MPoly::var(poly.nvars(), var).pow(degree);
        let tail = poly.sub(&lead);
        self.rels.push(Relation { var, poly, degree, tail });
        Ok(())
    }

    pub fn with(mut self, var: usize, poly: MPoly, label: &str) -> Result<Self, PolyError> {
        self.push(var, poly, label)?;
        Ok(self)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.rels
    }

    /// Normal form: every lead variable ends below its relation's degree.
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        let mut cur = p.clone();
        loop {
            let mut next = cur.clone();
            for r in &self.rels {
                next = reduce_by(&next, r);
            }
            if next == cur {
                return next;
            }
            cur = next;
        }
    }
}

fn reduce_by(p: &MPoly, r: &Relation) -> MPoly {
    let d = r.degree as usize;
    if p.degree(r.var) < r.degree {
        return p.clone();
    }
    let nv = p.nvars();
    let mut coeffs = p.coeffs_in(r.var);
    let tail_parts = r.tail.coeffs_in(r.var);
    for e in (d..coeffs.len()).rev() {
        let c = std::mem::replace(&mut coeffs[e], MPoly::zero(nv));
        if c.is_zero() {
            continue;
        }
        // c x^e = c x^(e-d) x^d ≡ -c x^(e-d) tail
        let neg_c = c.neg();
        for (k, part) in tail_parts.iter().enumerate() {
            if !part.is_zero() {
                let t = neg_c.mul(part);
                coeffs[e - d + k] = coeffs[e - d + k].add(&t);
            }
        }
    }
    coeffs.truncate(d);
    MPoly::from_coeffs_in(nv, r.var, &coeffs)
}

/// Reduces `p` modulo `rels`; see [`RelationSet::reduce`].
pub fn reduce_normal_form(p: &MPoly, rels: &RelationSet) -> MPoly {
    rels.reduce(p)
}

/// `p` with `var` replaced by a polynomial.
pub fn substitute(p: &MPoly, var: usize, value: &MPoly) -> MPoly {
    p.substitute(var, value)
}

/// `p(var = num/den)` as `(numerator, den^d)` where `d = deg_var p`.
pub fn substitute_rational(p: &MPoly, var: usize, num: &MPoly, den: &MPoly) -> Result<(MPoly, MPoly), PolyError> {
    if den.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if var >= p.nvars() {
        return Err(PolyError::VarOutOfRange(var));
    }
    let coeffs = p.coeffs_in(var);
    let d = coeffs.len() - 1;
    let nv = p.nvars();
    let mut num_pows = vec![MPoly::one(nv)];
    let mut den_pows = vec![MPoly::one(nv)];
    for i in 1..=d {
        num_pows.push(num_pows[i - 1].mul(num));
        den_pows.push(den_pows[i - 1].mul(den));
    }
    let mut out = MPoly::zero(nv);
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&c.mul(&num_pows[i]).mul(&den_pows[d - i]));
        }
    }
    Ok((out, den_pows.swap_remove(d)))
}

/// Whether `Π f_i^{e_i}` expands to `expanded` exactly.
pub fn verify_factorization(factors: &[(MPoly, u32)], expanded: &MPoly) -> bool {
    let mut acc = MPoly::one(expanded.nvars());
    for (f, e) in factors {
        if f.nvars() != expanded.nvars() {
            return false;
        }
        acc = acc.mul(&f.pow(*e));
    }
    acc == *expanded
}

/// Irreducibility of each factor that is univariate of positive degree
/// (`None` for constants and multivariate factors).
pub fn factor_report(factors: &[(MPoly, u32)]) -> Vec<Option<bool>> {
    factors
        .iter()
        .map(|(f, _)| match f.support().as_slice() {
            [v] => UPoly::from_mpoly(f, *v).ok().map(|u| u.is_irreducible()),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, VarRegistry};

    fn reg() -> VarRegistry {
        VarRegistry::new(&["u", "v", "w"]).unwrap()
    }

    #[test]
    fn reduces_modulo_univariate_relation() {
        let r = reg();
        let p7 = parse("w^7 - w^5 - 1", &r).unwrap();
        let rels = RelationSet::new().with(2, p7.clone(), "P7").unwrap();
        assert!(rels.reduce(&p7).is_zero());
        let big = parse("w^15 + u w^9 + v", &r).unwrap();
        let red = rels.reduce(&big);
        assert!(red.degree(2) < 7);
        // difference is a multiple of P7
        assert!(big.sub(&red).div_exact(&p7).is_some());
        assert_eq!(rels.reduce(&red), red);
    }

    #[test]
    fn mixed_relations_reach_fixed_point() {
        let r = reg();
        let cubic = parse("u^3 + u^2 v + w", &r).unwrap();
        let qv = parse("v^2 + 1", &r).unwrap();
        let rels = RelationSet::new()
            .with(0, cubic, "cubic")
            .unwrap()
            .with(1, qv, "Q")
            .unwrap();
        let p = parse("u^7 v^3 + u^4 w^2 + v^5", &r).unwrap();
        let red = rels.reduce(&p);
        assert!(red.degree(0) < 3 && red.degree(1) < 2);
        assert_eq!(rels.reduce(&red), red);
    }

    #[test]
    fn rejects_bad_relations() {
        let r = reg();
        let nonmonic = parse("u^2 v + 1", &r).unwrap();
        assert!(matches!(
            RelationSet::new().with(0, nonmonic, "bad"),
            Err(PolyError::NonMonic(_))
        ));
        let a = parse("u^2 + 1", &r).unwrap();
        let dup = RelationSet::new().with(0, a.clone(), "a").unwrap().with(0, a, "b");
        assert!(matches!(dup, Err(PolyError::DuplicateLead(_))));
    }

    #[test]
    fn rational_substitution_clears_denominators() {
        let r = reg();
        let p = parse("u^2 + v u + 1", &r).unwrap();
        let (num, den) = substitute_rational(&p, 0, &parse("w", &r).unwrap(), &parse("v + 1", &r).unwrap()).unwrap();
        assert_eq!(den, parse("(v+1)^2", &r).unwrap());
        assert_eq!(num, parse("w^2 + v w (v+1) + (v+1)^2", &r).unwrap());
        assert_eq!(
            substitute_rational(&p, 0, &MPoly::one(3), &MPoly::zero(3)),
            Err(PolyError::DivisionByZero)
        );
        assert_eq!(substitute(&p, 0, &MPoly::var(3, 0)), p);
    }

    #[test]
    fn factorization_checks() {
        let r = reg();
        let f = parse("u^2 + 1", &r).unwrap();
        let g = parse("u - 1", &r).unwrap();
        let e = f.pow(2).mul(&g);
        assert!(verify_factorization(&[(f.clone(), 2), (g.clone(), 1)], &e));
        assert!(!verify_factorization(&[(f.clone(), 1), (g, 1)], &e));
        assert!(verify_factorization(&[], &MPoly::one(3)));
        assert_eq!(factor_report(&[(f, 1), (MPoly::var(3, 0).mul(&MPoly::var(3, 1)), 1)]), vec![Some(true), None]);
    }
}
