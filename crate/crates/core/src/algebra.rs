//! Free graded-commutative algebras over Q with a differential.
//!
//! Monomials are dense exponent vectors over a fixed generator list: odd
//! generators carry exponent 0 or 1, even generators any exponent. Products
//! of odd generators are kept in ascending index order and the Koszul sign
//! of reordering is folded into the coefficient when a monomial is built.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// The ordered generator list of one free algebra.
///
/// Generators are ordered by degree, then by declaration order. A relative
/// model puts its base generator first and marks it, which only affects how
/// monomials are printed (the base is written last, as in `v1v4t^8`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    generators: Vec<GeneratorSpec>,
    base: Option<usize>,
}

impl Universe {
    /// Builds a universe, stable-sorting the generators by degree.
    pub fn new(mut generators: Vec<GeneratorSpec>) -> Result<Arc<Self>> {
        generators.sort_by_key(|g| g.degree);
        Self::check(&generators)?;
        Ok(Arc::new(Universe {
            generators,
            base: None,
        }))
    }

    /// The universe `K[t] ⊗ ΛV`: the base generator `t` of degree 2 first,
    /// then the fiber generators in their fiber order.
    pub fn with_base(base_name: &str, fiber: &Universe) -> Result<Arc<Self>> {
        let mut generators = Vec::with_capacity(fiber.len() + 1);
        generators.push(GeneratorSpec::new(base_name, 2));
        generators.extend(fiber.generators.iter().cloned());
        Self::check(&generators)?;
        Ok(Arc::new(Universe {
            generators,
            base: Some(0),
        }))
    }

    fn check(generators: &[GeneratorSpec]) -> Result<()> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree < 2 {
                return Err(Error::usage(format!(
                    "generator `{}` has degree {} (simply connected models need degree >= 2)",
                    g.name, g.degree
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::usage(format!("duplicate generator name `{}`", g.name)));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn generator(&self, idx: usize) -> &GeneratorSpec {
        &self.generators[idx]
    }

    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }
}

/// A monomial in canonical form: one exponent per generator of its universe.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial { exps: vec![0; len] }
    }

    pub fn generator(len: usize, idx: usize) -> Self {
        let mut m = Monomial::one(len);
        m.exps[idx] = 1;
        m
    }

    /// Builds a monomial from raw exponents; `None` if an odd generator is
    /// repeated (the exterior square vanishes).
    pub fn from_exponents(universe: &Universe, exps: Vec<u32>) -> Option<Self> {
        assert_eq!(exps.len(), universe.len(), "exponent vector length");
        let ok = exps
            .iter()
            .zip(universe.generators())
            .all(|(&e, g)| !g.is_odd() || e <= 1);
        ok.then_some(Monomial { exps })
    }

    /// Canonicalises a word of generator indices, returning the monomial and
    /// the Koszul sign of sorting it, or `None` when it vanishes.
    pub fn from_word(universe: &Universe, word: &[usize]) -> Option<(Self, i32)> {
        let mut exps = vec![0u32; universe.len()];
        let mut sign = 1;
        let mut odd_seen: Vec<usize> = Vec::new();
        for &g in word {
            if universe.generator(g).is_odd() {
                if exps[g] == 1 {
                    return None;
                }
                let passed = odd_seen.iter().filter(|&&h| h > g).count();
                if passed % 2 == 1 {
                    sign = -sign;
                }
                odd_seen.push(g);
            }
            exps[g] += 1;
        }
        Some((Monomial { exps }, sign))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, universe: &Universe) -> u32 {
        self.exps
            .iter()
            .zip(universe.generators())
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    /// Number of generator factors, counting an even generator with its exponent.
    pub fn word_length(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Product with its sign, or `None` when an odd generator repeats.
    pub fn multiply(&self, other: &Monomial, universe: &Universe) -> Option<(Monomial, i32)> {
        let mut inversions = 0usize;
        let mut odd_in_self_above = 0usize;
        // Walk from the top index down, counting odd generators of `self`
        // above each odd generator of `other`.
        for idx in (0..self.exps.len()).rev() {
            if !universe.generator(idx).is_odd() {
                continue;
            }
            if other.exps[idx] == 1 {
                if self.exps[idx] == 1 {
                    return None;
                }
                inversions += odd_in_self_above;
            }
            if self.exps[idx] == 1 {
                odd_in_self_above += 1;
            }
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((Monomial { exps }, sign))
    }

    /// Highest generator index occurring, if any.
    pub fn top_generator(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub fn render(&self, universe: &Universe) -> String {
        let mut out = String::new();
        let mut order: Vec<usize> = (0..self.exps.len())
            .filter(|&i| Some(i) != universe.base())
            .collect();
        order.extend(universe.base());
        for i in order {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            out.push_str(&universe.generator(i).name);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// Exact linear combination of canonical monomials over one universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolynomial {
    universe: Arc<Universe>,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn zero(universe: &Arc<Universe>) -> Self {
        GradedPolynomial {
            universe: Arc::clone(universe),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(universe: &Arc<Universe>) -> Self {
        Self::from_monomial(universe, Monomial::one(universe.len()), Rational::one())
    }

    pub fn generator(universe: &Arc<Universe>, idx: usize) -> Self {
        Self::from_monomial(universe, Monomial::generator(universe.len(), idx), Rational::one())
    }

    pub fn from_monomial(universe: &Arc<Universe>, m: Monomial, coeff: Rational) -> Self {
        let mut p = Self::zero(universe);
        p.add_term(m, coeff);
        p
    }

    /// Builds `coeff · g1 g2 ... gk` from a word of generator indices.
    pub fn from_word(universe: &Arc<Universe>, word: &[usize], coeff: Rational) -> Self {
        match Monomial::from_word(universe, word) {
            Some((m, sign)) => Self::from_monomial(universe, m, coeff * rational(sign as i64)),
            None => Self::zero(universe),
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        assert_eq!(m.len(), self.universe.len(), "monomial from another universe");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Common degree of all terms; `None` for the zero polynomial or a
    /// non-homogeneous one.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.universe));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    fn same_universe(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::usage("polynomials over different generator universes"))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-Rational::one()))
    }

    /// Graded-commutative product with Koszul signs.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        let mut out = Self::zero(&self.universe);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, sign)) = a.multiply(b, &self.universe) {
                    let c = ca * cb;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.universe);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    /// Rebuilds the term map; a no-op on values built through this API,
    /// kept for callers that want an explicit normalisation step.
    pub fn canonicalize(&self) -> Self {
        let mut out = Self::zero(&self.universe);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(&self.universe);
            if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                if mono != "1" {
                    if !abs.is_integer() {
                        out.push(' ');
                    }
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &GradedPolynomial {
            type Output = GradedPolynomial;
            /// Panics when the operands live over different universes; use
            /// the `checked_*` form to get the error instead.
            fn $method(self, rhs: &GradedPolynomial) -> GradedPolynomial {
                self.$checked(rhs).expect("universe mismatch")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        self.scale(&-Rational::one())
    }
}

/// A free graded-commutative algebra `(ΛV, d)` given by the differential of
/// each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanModel {
    universe: Arc<Universe>,
    differential: Vec<GradedPolynomial>,
}

impl SullivanModel {
    /// Model with zero differential.
    pub fn free(universe: Arc<Universe>) -> Self {
        let differential = (0..universe.len())
            .map(|_| GradedPolynomial::zero(&universe))
            .collect();
        SullivanModel {
            universe,
            differential,
        }
    }

    /// Odd spheres `S^{n1} × ... × S^{nk}`: generators `v1..vk`, `d = 0`.
    pub fn odd_spheres(degrees: &[u32]) -> Result<Self> {
        if let Some(d) = degrees.iter().find(|d| *d % 2 == 0) {
            return Err(Error::usage(format!("degree {d} is even")));
        }
        let mut sorted = degrees.to_vec();
        sorted.sort_unstable();
        let gens = sorted
            .iter()
            .enumerate()
            .map(|(i, &d)| GeneratorSpec::new(format!("v{}", i + 1), d))
            .collect();
        Ok(Self::free(Universe::new(gens)?))
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn num_generators(&self) -> usize {
        self.universe.len()
    }

    pub fn differential_of(&self, idx: usize) -> &GradedPolynomial {
        &self.differential[idx]
    }

    pub fn set_differential(&mut self, idx: usize, value: GradedPolynomial) -> Result<()> {
        if value.universe() != &self.universe && **value.universe() != *self.universe {
            return Err(Error::usage("differential over a different universe"));
        }
        self.differential[idx] = value;
        Ok(())
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.iter().all(|p| p.is_zero())
    }

    /// `d` of a single monomial, by the Leibniz rule.
    pub fn differential_of_monomial(&self, m: &Monomial) -> GradedPolynomial {
        let u = &self.universe;
        let mut out = GradedPolynomial::zero(u);
        let n = u.len();
        for j in 0..n {
            let e = m.exponent(j);
            if e == 0 || self.differential[j].is_zero() {
                continue;
            }
            let mut prefix = Monomial::one(n);
            let mut suffix = Monomial::one(n);
            for k in 0..n {
                if k < j {
                    prefix.exps[k] = m.exps[k];
                } else if k > j {
                    suffix.exps[k] = m.exps[k];
                }
            }
            let mut middle = Monomial::one(n);
            middle.exps[j] = e - 1;
            let sign = if prefix.degree(u) % 2 == 1 { -1 } else { 1 };
            // For an even generator, d(x^e) = e x^{e-1} dx; odd ones have e = 1.
            let coeff = rational(sign * e as i64);
            let left = GradedPolynomial::from_monomial(u, prefix, coeff);
            let mid = GradedPolynomial::from_monomial(u, middle, Rational::one());
            let right = GradedPolynomial::from_monomial(u, suffix, Rational::one());
            let term = &(&(&left * &mid) * &self.differential[j]) * &right;
            out = &out + &term;
        }
        out
    }

    /// Leibniz extension of the generator differentials.
    pub fn apply_differential(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        if p.universe() != &self.universe && **p.universe() != *self.universe {
            return Err(Error::usage("polynomial over a different universe"));
        }
        let mut out = GradedPolynomial::zero(&self.universe);
        for (m, c) in p.terms() {
            out = &out + &self.differential_of_monomial(m).scale(c);
        }
        Ok(out)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let u = &self.universe;
        for (i, dg) in self.differential.iter().enumerate() {
            let g = u.generator(i);
            for (m, _) in dg.terms() {
                let deg = m.degree(u);
                if deg != g.degree + 1 {
                    report.push(Violation::Grading {
                        generator: g.name.clone(),
                        term: m.render(u),
                        expected: g.degree + 1,
                        found: deg,
                    });
                }
                if m.word_length() < 2 {
                    report.push(Violation::Decomposability {
                        generator: g.name.clone(),
                        term: m.render(u),
                    });
                }
                if m.top_generator().is_some_and(|top| top >= i) {
                    report.push(Violation::Nilpotence {
                        generator: g.name.clone(),
                        term: m.render(u),
                    });
                }
            }
            let dd = self.apply_differential(dg).expect("same universe");
            if !dd.is_zero() {
                report.push(Violation::DSquared {
                    generator: g.name.clone(),
                    value: dd.render(),
                });
            }
        }
        report
    }

    /// Renders in the model-description text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, g) in self.universe.generators().iter().enumerate() {
            out.push_str(&g.name);
            out.push(' ');
            out.push_str(&g.degree.to_string());
            if self.universe.base() == Some(i) {
                out.push_str(" base");
            }
            out.push('\n');
        }
        for (i, g) in self.universe.generators().iter().enumerate() {
            if !self.differential[i].is_zero() {
                out.push_str(&format!("d {} = {}\n", g.name, self.differential[i]));
            }
        }
        out
    }
}

/// `(K[t] ⊗ ΛV, D)` over a fiber `(ΛV, d)`, with `D t = 0`.
///
/// The total algebra's generator 0 is the base `t`; fiber generator `i` is
/// total generator `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeModel {
    fiber: SullivanModel,
    total: SullivanModel,
}

impl RelativeModel {
    /// A relative model whose total differential starts out equal to the
    /// fiber differential (no `t` terms).
    pub fn over(fiber: SullivanModel, base_name: &str) -> Result<Self> {
        let universe = Universe::with_base(base_name, fiber.universe())?;
        let mut total = SullivanModel::free(universe);
        for i in 0..fiber.num_generators() {
            let lifted = lift_to_total(fiber.differential_of(i), total.universe());
            total.differential[i + 1] = lifted;
        }
        Ok(RelativeModel { fiber, total })
    }

    /// Assembles a relative model from a total algebra whose generator 0 is
    /// the base; the fiber is read off modulo `t`.
    pub fn from_total(total: SullivanModel) -> Result<Self> {
        let u = total.universe();
        if u.base() != Some(0) || u.generator(0).degree != 2 {
            return Err(Error::usage("relative model needs a degree-2 base generator first"));
        }
        let fiber_gens = u.generators()[1..].to_vec();
        let fiber_universe = Universe::new(fiber_gens)?;
        let mut fiber = SullivanModel::free(Arc::clone(&fiber_universe));
        for i in 0..fiber_universe.len() {
            fiber.differential[i] = reduce_mod_base(total.differential_of(i + 1), &fiber_universe);
        }
        Ok(RelativeModel { fiber, total })
    }

    pub fn fiber(&self) -> &SullivanModel {
        &self.fiber
    }

    pub fn total(&self) -> &SullivanModel {
        &self.total
    }

    pub fn base_name(&self) -> &str {
        &self.total.universe().generator(0).name
    }

    /// `D v` for fiber generator `i` (fiber indexing).
    pub fn total_differential_of(&self, fiber_idx: usize) -> &GradedPolynomial {
        self.total.differential_of(fiber_idx + 1)
    }

    pub fn set_total_differential(&mut self, fiber_idx: usize, value: GradedPolynomial) -> Result<()> {
        self.total.set_differential(fiber_idx + 1, value)
    }

    pub fn apply_differential(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        self.total.apply_differential(p)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.total.validate();
        if !self.total.differential_of(0).is_zero() {
            report.push(Violation::BaseNotClosed);
        }
        let fiber_universe = self.fiber.universe();
        for i in 0..self.fiber.num_generators() {
            let reduced = reduce_mod_base(self.total.differential_of(i + 1), fiber_universe);
            if &reduced != self.fiber.differential_of(i) {
                report.push(Violation::FiberMismatch {
                    generator: fiber_universe.generator(i).name.clone(),
                });
            }
        }
        // The fiber must itself be a valid model.
        report.entries.extend(self.fiber.validate().entries);
        report
    }

    pub fn to_text(&self) -> String {
        self.total.to_text()
    }
}

fn lift_to_total(p: &GradedPolynomial, total: &Arc<Universe>) -> GradedPolynomial {
    let mut out = GradedPolynomial::zero(total);
    for (m, c) in p.terms() {
        let mut exps = Vec::with_capacity(total.len());
        exps.push(0);
        exps.extend_from_slice(m.exponents());
        out.add_term(Monomial { exps }, c.clone());
    }
    out
}

/// Drops every term containing the base generator and maps the rest into
/// the fiber universe.
fn reduce_mod_base(p: &GradedPolynomial, fiber: &Arc<Universe>) -> GradedPolynomial {
    let mut out = GradedPolynomial::zero(fiber);
    for (m, c) in p.terms() {
        if m.exponent(0) == 0 {
            out.add_term(
                Monomial {
                    exps: m.exponents()[1..].to_vec(),
                },
                c.clone(),
            );
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Grading {
        generator: String,
        term: String,
        expected: u32,
        found: u32,
    },
    Decomposability {
        generator: String,
        term: String,
    },
    Nilpotence {
        generator: String,
        term: String,
    },
    DSquared {
        generator: String,
        value: String,
    },
    BaseNotClosed,
    FiberMismatch {
        generator: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading {
                generator,
                term,
                expected,
                found,
            } => write!(
                f,
                "grading: term {term} of d{generator} has degree {found}, expected {expected}"
            ),
            Violation::Decomposability { generator, term } => {
                write!(f, "decomposability: term {term} of d{generator} has word length < 2")
            }
            Violation::Nilpotence { generator, term } => write!(
                f,
                "nilpotence: term {term} of d{generator} uses a generator not below {generator}"
            ),
            Violation::DSquared { generator, value } => {
                write!(f, "d^2 != 0: dd{generator} = {value}")
            }
            Violation::BaseNotClosed => write!(f, "base generator is not a cocycle"),
            Violation::FiberMismatch { generator } => {
                write!(f, "D{generator} modulo the base differs from the fiber differential")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    entries: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.entries
    }

    fn push(&mut self, v: Violation) {
        self.entries.push(v);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universe(degs: &[(&str, u32)]) -> Arc<Universe> {
        Universe::new(degs.iter().map(|(n, d)| GeneratorSpec::new(*n, *d)).collect()).unwrap()
    }

    #[test]
    fn koszul_sign_of_odd_generators() {
        let u = universe(&[("v1", 3), ("v2", 5)]);
        let v1 = GradedPolynomial::generator(&u, 0);
        let v2 = GradedPolynomial::generator(&u, 1);
        let a = &v1 * &v2;
        let b = &v2 * &v1;
        assert_eq!(a.render(), "v1v2");
        assert_eq!(b, -&a);
        assert!((&v1 * &v1).is_zero());
    }

    #[test]
    fn even_generators_commute() {
        let u = Universe::with_base("t", &universe(&[("v1", 3)])).unwrap();
        let t2v1 = GradedPolynomial::from_word(&u, &[0, 0, 1], rational(1));
        let t3 = GradedPolynomial::from_word(&u, &[0, 0, 0], rational(1));
        assert_eq!((&t2v1 * &t3).render(), "v1t^5");
        assert_eq!(&t2v1 * &t3, &t3 * &t2v1);
    }

    #[test]
    fn mismatched_universes_are_rejected() {
        let u1 = universe(&[("v1", 3)]);
        let u2 = universe(&[("w", 3)]);
        let a = GradedPolynomial::generator(&u1, 0);
        let b = GradedPolynomial::generator(&u2, 0);
        assert!(matches!(a.checked_mul(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn word_sign_counts_inversions() {
        let u = universe(&[("a", 3), ("b", 3), ("c", 3)]);
        // c b a -> a b c needs three transpositions.
        let (m, s) = Monomial::from_word(&u, &[2, 1, 0]).unwrap();
        assert_eq!(m.exponents(), &[1, 1, 1]);
        assert_eq!(s, -1);
        assert!(Monomial::from_word(&u, &[0, 1, 0]).is_none());
    }

    #[test]
    fn rejects_low_degree_and_duplicates() {
        assert!(Universe::new(vec![GeneratorSpec::new("a", 1)]).is_err());
        assert!(Universe::new(vec![GeneratorSpec::new("a", 3), GeneratorSpec::new("a", 5)]).is_err());
    }

    #[test]
    fn generators_sorted_by_degree_then_declaration() {
        let u = universe(&[("z", 7), ("x", 3), ("y", 3)]);
        let names: Vec<_> = u.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x", "y", "z"]);
    }
}
