//! Polynomials over F_3: sparse multivariate ([`MPoly`]), dense univariate
//! ([`UPoly`]), extension fields F_3[t]/(m), resultants and a parser for the
//! fixture syntax.

mod dense;
mod ext;
mod mpoly;
mod parse;
mod relations;
mod resultant;
mod upoly;

use std::fmt;

use thiserror::Error;

pub use dense::DensePoly;
pub use ext::{roots_in_extension, ExtField};
pub use mpoly::{mono_exp, mono_from_exps, MPoly, MPolyRing, Mono, MAX_VARS};
pub use parse::{
    parse, parse_factors_with, parse_with, print, MacroDef, MacroResolver, NoMacros, ParseError,
    ParseErrorKind,
};
pub use relations::{
    factor_report, reduce_normal_form, substitute, substitute_rational, verify_factorization, Relation,
    RelationSet,
};
pub use resultant::{
    res_euclid, res_formal, res_subresultant, resultant, resultant_with, ResultantStrategy,
};
pub use upoly::{gcd_univariate, is_irreducible_f3, UPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVars(usize),
    #[error("duplicate variable name {0:?}")]
    DuplicateVar(String),
    #[error("invalid variable name {0:?}")]
    BadVarName(String),
    #[error("variable index {0} is not in the registry")]
    VarOutOfRange(usize),
    #[error("unknown variable {0:?}")]
    UnknownVar(String),
    #[error("both inputs have degree 0 in the eliminated variable")]
    ZeroDegree,
    #[error("polynomial is not univariate in the requested variable")]
    NotUnivariate,
    #[error("polynomial must have degree at least 1")]
    ConstantInput,
    #[error("relation for {0:?} is not monic in its lead variable")]
    NonMonic(String),
    #[error("two relations share the lead variable {0:?}")]
    DuplicateLead(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("extension degree {0} exceeds the exhaustive-search bound")]
    ExtensionTooLarge(usize),
    #[error("modulus is not monic irreducible over F_3")]
    BadModulus,
    #[error("exponent overflow in monomial packing")]
    ExponentOverflow,
    #[error("interpolated resultant has a coefficient outside F_3")]
    Interpolation,
}

/// Ordered list of variable names shared by the polynomials of one
/// computation. Index 0 is the most significant variable in the order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarRegistry {
    names: Vec<String>,
}

impl VarRegistry {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVars(names.len()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::BadVarName(n.to_string()));
            }
            if out.iter().any(|m| m == n) {
                return Err(PolyError::DuplicateVar(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(VarRegistry { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<usize, PolyError> {
        self.index(name).ok_or_else(|| PolyError::UnknownVar(name.to_string()))
    }

    /// The variable `name` as a polynomial.
    pub fn poly(&self, name: &str) -> Result<MPoly, PolyError> {
        Ok(MPoly::var(self.len(), self.var(name)?))
    }

    /// Index map sending each of `self`'s variables into `target`.
    pub fn embedding(&self, target: &VarRegistry) -> Result<Vec<usize>, PolyError> {
        self.names.iter().map(|n| target.var(n)).collect()
    }
}

impl fmt::Display for VarRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}
