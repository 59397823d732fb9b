//! Per-step context (fixture access with input recording) and the outcome
//! of a step as a list of named checks.

use std::cell::RefCell;
use std::collections::BTreeSet;

use crate::polyring::{MPoly, RelationSet, UPoly, VarRegistry};
use crate::ppcheck::{CaseId, SymbolicCase};

use super::fixtures::{Fixture, FixtureSet};
use super::{ReplayError, ReplayStep, Shared, StepKind};

pub struct Ctx<'a> {
    fx: &'a FixtureSet,
    shared: &'a Shared,
    seen: RefCell<BTreeSet<String>>,
}

impl<'a> Ctx<'a> {
    pub fn new(fx: &'a FixtureSet, shared: &'a Shared) -> Self {
        Ctx { fx, shared, seen: RefCell::default() }
    }

    pub fn into_inputs(self) -> Vec<String> {
        self.seen.into_inner().into_iter().collect()
    }

    pub fn fixture(&self, id: &str) -> Result<&'a Fixture, ReplayError> {
        let f = self.fx.get(id)?;
        self.seen.borrow_mut().insert(id.to_string());
        Ok(f)
    }

    /// Fixture `id` in `reg`, its variables matched by name.
    pub fn poly(&self, id: &str, reg: &VarRegistry) -> Result<MPoly, ReplayError> {
        let f = self.fixture(id)?;
        let map = f.reg.embedding(reg)?;
        Ok(f.poly.remap(&map, reg.len()))
    }

    /// Fixture `id` in `reg` with its i-th variable renamed to `names[i]`.
    pub fn poly_as(&self, id: &str, reg: &VarRegistry, names: &[&str]) -> Result<MPoly, ReplayError> {
        let f = self.fixture(id)?;
        if names.len() != f.vars.len() {
            return Err(ReplayError::Step(format!("fixture {id} has {} variables", f.vars.len())));
        }
        let map = names.iter().map(|n| reg.var(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(f.poly.remap(&map, reg.len()))
    }

    /// A fixture in one variable as a dense univariate polynomial.
    pub fn upoly(&self, id: &str) -> Result<UPoly, ReplayError> {
        let f = self.fixture(id)?;
        if f.vars.len() != 1 {
            return Err(ReplayError::Step(format!("fixture {id} is not univariate")));
        }
        Ok(UPoly::from_mpoly(&f.poly, 0)?)
    }

    /// Written factors of `id`, each mapped into `reg` by name.
    pub fn factors(&self, id: &str, reg: &VarRegistry) -> Result<Vec<(MPoly, u32)>, ReplayError> {
        let f = self.fixture(id)?;
        let map = f.reg.embedding(reg)?;
        Ok(f.factors.iter().map(|(p, e)| (p.remap(&map, reg.len()), *e)).collect())
    }

    pub fn symbolic(&self, case: CaseId) -> Result<&'a SymbolicCase, ReplayError> {
        self.shared.symbolic(case)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Check {
    label: String,
    pass: bool,
    diff_terms: usize,
}

/// Named checks making up one step; the step passes when all of them do.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    checks: Vec<Check>,
}

impl Outcome {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn holds(mut self, label: impl Into<String>, pass: bool) -> Self {
        self.checks.push(Check { label: label.into(), pass, diff_terms: 0 });
        self
    }

    /// `lhs - rhs` is the zero polynomial.
    pub fn eq(mut self, label: impl Into<String>, lhs: &MPoly, rhs: &MPoly) -> Self {
        let d = lhs.sub(rhs);
        self.checks.push(Check { label: label.into(), pass: d.is_zero(), diff_terms: d.len() });
        self
    }

    /// Equality of normal forms modulo `rels`.
    pub fn eq_mod(self, label: impl Into<String>, lhs: &MPoly, rhs: &MPoly, rels: &RelationSet) -> Self {
        let d = rels.reduce(&lhs.sub(rhs));
        self.eq(label, &d, &MPoly::zero(lhs.nvars()))
    }

    /// Equality up to a nonzero constant of F_3.
    pub fn eq_unit(self, label: impl Into<String>, lhs: &MPoly, rhs: &MPoly) -> Self {
        let label = label.into();
        if lhs.sub(rhs).is_zero() {
            self.eq(label, lhs, rhs)
        } else {
            self.eq(label, &lhs.neg(), rhs)
        }
    }

    pub fn upoly_eq(self, label: impl Into<String>, lhs: &UPoly, rhs: &UPoly) -> Self {
        self.eq(label, &lhs.to_mpoly(1, 0), &rhs.to_mpoly(1, 0))
    }

    pub fn divides(self, label: impl Into<String>, d: &MPoly, p: &MPoly) -> Self {
        self.holds(label, !d.is_zero() && p.div_exact(d).is_some())
    }

    pub fn not_divides(self, label: impl Into<String>, d: &MPoly, p: &MPoly) -> Self {
        self.holds(label, !d.is_zero() && p.div_exact(d).is_none())
    }

    pub fn merge(mut self, other: Outcome) -> Self {
        self.checks.extend(other.checks);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn diff_terms(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.diff_terms).sum()
    }

    pub fn failures(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.pass).map(|c| c.label.as_str()).collect();
        format!("failed: {}", failed.join("; "))
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

/// Registry with the given variable names.
pub fn registry(names: &[&str]) -> VarRegistry {
    VarRegistry::new(names).expect("fixed variable lists are valid")
}

/// The relation defining z in the case's registry (for Case 2.2 z is `a`).
pub fn z_relation(case: CaseId, reg: &VarRegistry) -> Result<RelationSet, ReplayError> {
    let v = |n: &str| reg.poly(n);
    let (var, rel) = match case {
        CaseId::C22 => (reg.var("a")?, v("a")?.pow(2).sub(&v("k")?)),
        CaseId::C3 => (reg.var("z")?, v("z")?.pow(2).add(&MPoly::one(reg.len()))),
        _ => (reg.var("z")?, v("z")?.pow(2).sub(&v("k")?)),
    };
    Ok(RelationSet::new().with(var, rel, "z")?)
}

/// Which recomputed polynomial a construction step compares.
#[derive(Debug, Clone, Copy)]
pub enum Part {
    A,
    B,
    C(usize),
    E(usize),
}

/// Steps comparing A, B, the C_j and the e_i of `case` with their fixtures;
/// each entry is (step id, fixture id, part).
pub fn construction_steps(case: CaseId, label: &'static str, items: &[(&str, &str, Part)]) -> Vec<ReplayStep> {
    items
        .iter()
        .map(|&(step, fixture, part)| {
            let fixture = fixture.to_string();
            ReplayStep::new(step, label, StepKind::Identity, move |cx| {
                let sym = cx.symbolic(case)?;
                let expected = cx.poly(&fixture, &sym.reg)?;
                let (computed, what) = match part {
                    Part::A => (&sym.a_x, "A(X)".to_string()),
                    Part::B => (&sym.b_x, "B(X)".to_string()),
                    Part::C(j) => (&sym.c[j], format!("C{j}")),
                    Part::E(i) => (&sym.e[i], format!("e{i}")),
                };
                let rels = z_relation(case, &sym.reg)?;
                Ok(Outcome::new().eq_mod(what, computed, &expected, &rels))
            })
        })
        .collect()
}
