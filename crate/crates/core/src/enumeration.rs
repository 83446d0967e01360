//! Candidate relative models over a fiber: exhaustive search over monomial
//! differentials, the closed-form families, and the catalog type they share.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    rational, GeneratorSpec, GradedPolynomial, Monomial, Rational, RelativeModel, SullivanModel, Universe,
};
use crate::cohomology::{
    certify_with_fiber_dimension, formal_dimension, top_class_survives, unipotent_parameter_count, CsCertificate,
};
use crate::error::{Error, Result};
use crate::lattice::{extract_constraint_lattice, field_closure, ConstraintLattice, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Enumerated,
    Fixture(String),
    Family { name: String, parameter: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub model: RelativeModel,
    pub certificate: CsCertificate,
    pub lattice: ConstraintLattice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCatalog {
    pub fiber: SullivanModel,
    pub entries: Vec<CatalogEntry>,
    pub provenance: Provenance,
    /// False when a cap cut the search short.
    pub complete: bool,
    pub notes: Vec<String>,
}

impl ModelCatalog {
    pub fn empty(fiber: SullivanModel, provenance: Provenance) -> Self {
        ModelCatalog {
            fiber,
            entries: Vec::new(),
            provenance,
            complete: true,
            notes: Vec::new(),
        }
    }

    /// Validates, certifies and extracts the lattice of every model; any
    /// failure is an error naming the entry.
    pub fn from_models(
        fiber: SullivanModel,
        models: Vec<(String, RelativeModel)>,
        provenance: Provenance,
    ) -> Result<Self> {
        let n = formal_dimension(&fiber)?;
        let entries: Vec<Result<CatalogEntry>> = models
            .into_par_iter()
            .map(|(label, model)| {
                if model.fiber() != &fiber {
                    return Err(Error::usage(format!("model `{label}` has a different fiber")));
                }
                let report = model.validate();
                if !report.is_valid() {
                    return Err(Error::usage(format!("model `{label}` is invalid: {report}")));
                }
                let certificate = certify_with_fiber_dimension(&model, n);
                if !certificate.is_certified() {
                    return Err(Error::usage(format!(
                        "model `{label}` is not c-symplectic: {}",
                        certificate.verdict
                    )));
                }
                let lattice = extract_constraint_lattice(&model)?;
                Ok(CatalogEntry {
                    label,
                    model,
                    certificate,
                    lattice,
                })
            })
            .collect();
        Ok(ModelCatalog {
            fiber,
            entries: entries.into_iter().collect::<Result<_>>()?,
            provenance,
            complete: true,
            notes: Vec::new(),
        })
    }

    pub fn entry(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn unipotent_total(&self) -> usize {
        (0..self.fiber.num_generators())
            .map(|g| unipotent_parameter_count(&self.fiber, g))
            .sum()
    }
}

/// One monomial that may appear in `D v_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleTerm {
    pub target: usize,
    /// Fiber generator indices, an even generator repeated by its exponent.
    pub support: Vec<usize>,
    pub t_exponent: u32,
    /// The term in the total universe (base generator first).
    pub monomial: Monomial,
}

impl AdmissibleTerm {
    pub fn render(&self, total: &Universe) -> String {
        self.monomial.render(total)
    }
}

fn total_universe(fiber: &SullivanModel) -> Result<Arc<Universe>> {
    Universe::with_base("t", fiber.universe())
}

/// Every monomial in `t` and the generators below `i` of degree `|v_i| + 1`
/// with a positive power of `t` and word length at least two.
pub fn admissible_terms(fiber: &SullivanModel, i: usize) -> Result<Vec<AdmissibleTerm>> {
    let total = total_universe(fiber)?;
    Ok(admissible_terms_in(&total, i))
}

fn admissible_terms_in(total: &Arc<Universe>, i: usize) -> Vec<AdmissibleTerm> {
    let target = total.generator(i + 1).degree + 1;
    let mut out = Vec::new();
    let mut exps = vec![0u32; i];
    collect_supports(total, 0, i, target, &mut exps, &mut |fexps, used| {
        let rest = target - used;
        if !rest.is_multiple_of(2) || rest == 0 {
            return;
        }
        let e = rest / 2;
        let len: u32 = fexps.iter().sum();
        if len + e < 2 {
            return;
        }
        let mut all = vec![0u32; total.len()];
        all[0] = e;
        all[1..=fexps.len()].copy_from_slice(fexps);
        let support = fexps
            .iter()
            .enumerate()
            .flat_map(|(g, &k)| std::iter::repeat_n(g, k as usize))
            .collect();
        out.push(AdmissibleTerm {
            target: i,
            support,
            t_exponent: e,
            monomial: Monomial::from_exponents(total, all).expect("canonical"),
        });
    });
    out.sort_by(|a, b| {
        (a.support.is_empty(), a.support.len(), &a.support).cmp(&(b.support.is_empty(), b.support.len(), &b.support))
    });
    out
}

fn collect_supports(
    total: &Universe,
    g: usize,
    below: usize,
    budget: u32,
    exps: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32], u32),
) {
    if g == below {
        let used = budget_used(total, exps);
        if used <= budget {
            f(exps, used);
        }
        return;
    }
    let gen = total.generator(g + 1);
    let max = if gen.is_odd() { 1 } else { budget / gen.degree };
    for e in 0..=max {
        exps[g] = e;
        if budget_used(total, exps) > budget {
            break;
        }
        collect_supports(total, g + 1, below, budget, exps, f);
    }
    exps[g] = 0;
}

fn budget_used(total: &Universe, exps: &[u32]) -> u32 {
    exps.iter()
        .enumerate()
        .map(|(g, &e)| e * total.generator(g + 1).degree)
        .sum()
}

/// The inequalities `|v_i| + |v_{n-i}| < |v_n|` for an odd number of odd
/// degrees (sorted ascending).
pub fn pre_c_symplectic(degrees: &[u32]) -> Result<bool> {
    if let Some(d) = degrees.iter().find(|&&d| d % 2 == 0 || d < 3) {
        return Err(Error::usage(format!("degree {d} is not an odd integer > 1")));
    }
    let mut d = degrees.to_vec();
    d.sort_unstable();
    let n = d.len();
    if n.is_multiple_of(2) {
        return Ok(false);
    }
    Ok((1..=(n - 1) / 2).all(|i| d[i - 1] + d[n - i - 1] < d[n - 1]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub coefficients: Vec<Rational>,
    pub max_terms: usize,
    pub max_assignments: u64,
    /// Stop after this many catalog entries (not a cap: the catalog is
    /// still marked complete for the entries it has).
    pub stop_after: Option<usize>,
    /// Field whose closure decides when two candidates are duplicates.
    pub field: FieldSpec,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            coefficients: vec![rational(1), rational(-1), rational(2)],
            max_terms: 8,
            max_assignments: 10_000_000,
            stop_after: None,
            field: FieldSpec::AlgebraicClosure,
        }
    }
}

/// All certified models over `fiber` reachable with the given coefficients,
/// one per field-closed lattice. Fibers failing the parity gate or the
/// sphere-product inequalities give the empty catalog.
pub fn enumerate_models(fiber: &SullivanModel, opts: &EnumerationOptions) -> Result<ModelCatalog> {
    let n = formal_dimension(fiber)?;
    let u = fiber.universe();
    let spheres = fiber.has_zero_differential() && u.generators().iter().all(GeneratorSpec::is_odd);
    let mut catalog = ModelCatalog::empty(fiber.clone(), Provenance::Enumerated);
    if n % 2 == 0 {
        catalog.notes.push(format!("fiber formal dimension {n} is even"));
        return Ok(catalog);
    }
    if spheres && !pre_c_symplectic(&u.degrees())? {
        catalog.notes.push("degrees fail the pre-c-symplectic inequalities".into());
        return Ok(catalog);
    }
    search_models(fiber, opts)
}

/// The search behind [`enumerate_models`] without its gates.
pub fn search_models(fiber: &SullivanModel, opts: &EnumerationOptions) -> Result<ModelCatalog> {
    if opts.coefficients.is_empty() || opts.coefficients.iter().any(|c| *c == rational(0)) {
        return Err(Error::usage("coefficient set must be nonempty and exclude 0"));
    }
    let n_fd = formal_dimension(fiber)?;
    let base = RelativeModel::over(fiber.clone(), "t")?;
    let total_u = Arc::clone(base.total().universe());
    let n = fiber.num_generators();
    let terms: Vec<Vec<AdmissibleTerm>> = (0..n).map(|i| admissible_terms_in(&total_u, i)).collect();
    let all_odd = fiber.universe().generators().iter().all(GeneratorSpec::is_odd);
    let mut search = Search {
        fiber,
        opts,
        n_fd,
        terms,
        all_odd,
        total: base.total().clone(),
        seen: HashSet::new(),
        catalog: ModelCatalog::empty(fiber.clone(), Provenance::Enumerated),
        assignments: 0,
        stopped: false,
    };
    for (i, t) in search.terms.iter().enumerate() {
        if t.len() > opts.max_terms {
            search.catalog.complete = false;
            search.catalog.notes.push(format!(
                "generator {} has {} admissible terms; patterns are capped at {}",
                fiber.universe().generator(i).name,
                t.len(),
                opts.max_terms
            ));
        }
    }
    search.dfs(0);
    Ok(search.catalog)
}

struct Search<'a> {
    fiber: &'a SullivanModel,
    opts: &'a EnumerationOptions,
    n_fd: u32,
    terms: Vec<Vec<AdmissibleTerm>>,
    all_odd: bool,
    total: SullivanModel,
    seen: HashSet<ConstraintLattice>,
    catalog: ModelCatalog,
    assignments: u64,
    stopped: bool,
}

/// Subsets of `0..len` with at most `max` elements, by size then lexicographically.
fn patterns(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=max.min(len) {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            out.push(comb.clone());
            let Some(pos) = (0..size).rev().find(|&p| comb[p] < len - size + p) else {
                break;
            };
            comb[pos] += 1;
            for q in pos + 1..size {
                comb[q] = comb[q - 1] + 1;
            }
        }
    }
    out
}

impl Search<'_> {
    fn dfs(&mut self, i: usize) {
        if self.stopped {
            return;
        }
        let n = self.fiber.num_generators();
        if i == n {
            self.leaf();
            return;
        }
        let base = self.total.differential_of(i + 1).clone();
        let d_base = self.total.apply_differential(&base).expect("same universe");
        let terms = self.terms[i].clone();
        for pattern in patterns(terms.len(), self.opts.max_terms) {
            if self.stopped {
                return;
            }
            // A lone pure power t^a makes t^a exact, and a is below the top power.
            if n >= 2 && base.is_zero() && pattern.len() == 1 && terms[pattern[0]].support.is_empty() {
                continue;
            }
            let images: Vec<GradedPolynomial> = pattern
                .iter()
                .map(|&p| self.total.differential_of_monomial(&terms[p].monomial))
                .collect();
            let entangled: Vec<usize> = (0..pattern.len()).filter(|&k| !images[k].is_zero()).collect();
            let coeffs = &self.opts.coefficients;
            let mut choice = vec![0usize; entangled.len()];
            loop {
                self.assignments += 1;
                if self.assignments > self.opts.max_assignments {
                    self.catalog.complete = false;
                    self.catalog
                        .notes
                        .push(format!("stopped after {} assignments", self.opts.max_assignments));
                    self.stopped = true;
                    return;
                }
                let mut dd = d_base.clone();
                for (slot, &k) in entangled.iter().enumerate() {
                    dd = &dd + &images[k].scale(&coeffs[choice[slot]]);
                }
                if dd.is_zero() {
                    let mut value = base.clone();
                    for (k, &p) in pattern.iter().enumerate() {
                        let c = entangled
                            .iter()
                            .position(|&e| e == k)
                            .map_or(&coeffs[0], |slot| &coeffs[choice[slot]]);
                        value.add_term(terms[p].monomial.clone(), c.clone());
                    }
                    self.total.set_differential(i + 1, value).expect("same universe");
                    self.dfs(i + 1);
                    self.total
                        .set_differential(i + 1, base.clone())
                        .expect("same universe");
                    if self.stopped {
                        return;
                    }
                }
                // Next coefficient tuple.
                let Some(pos) = (0..choice.len()).rev().find(|&p| choice[p] + 1 < coeffs.len()) else {
                    break;
                };
                choice[pos] += 1;
                for c in choice.iter_mut().skip(pos + 1) {
                    *c = 0;
                }
            }
        }
    }

    fn leaf(&mut self) {
        let n = self.fiber.num_generators();
        if self.all_odd {
            let elliptic = (1..=n).any(|g| {
                self.total
                    .differential_of(g)
                    .terms()
                    .any(|(m, _)| m.word_length() == m.exponent(0))
            });
            if !elliptic {
                return;
            }
        }
        let model = RelativeModel::from_total(self.total.clone()).expect("relative universe");
        let Ok(lattice) = extract_constraint_lattice(&model) else {
            return;
        };
        let key = field_closure(&lattice, self.opts.field);
        if self.seen.contains(&key) {
            return;
        }
        if !top_class_survives(&model, self.n_fd) {
            return;
        }
        let certificate = certify_with_fiber_dimension(&model, self.n_fd);
        if !certificate.is_certified() {
            return;
        }
        debug_assert!(model.validate().is_valid(), "{}", model.validate());
        self.seen.insert(key);
        let label = format!("m{}", self.catalog.entries.len() + 1);
        self.catalog.entries.push(CatalogEntry {
            label,
            model,
            certificate,
            lattice,
        });
        if self.opts.stop_after.is_some_and(|s| self.catalog.entries.len() >= s) {
            self.stopped = true;
        }
    }
}

/// Fiber of `CP^n × S^{2n+3}`: `x` (2), `y` (2n+1), `z` (2n+3), `d y = x^{n+1}`.
pub fn cp_fiber(n: u32) -> Result<SullivanModel> {
    let u = Universe::new(vec![
        GeneratorSpec::new("x", 2),
        GeneratorSpec::new("y", 2 * n + 1),
        GeneratorSpec::new("z", 2 * n + 3),
    ])?;
    let mut m = SullivanModel::free(Arc::clone(&u));
    m.set_differential(1, GradedPolynomial::from_word(&u, &vec![0; n as usize + 1], rational(1)))?;
    Ok(m)
}

/// The proper divisors of `n + 1` together with 0: the admissible middle
/// exponents of the CP family.
pub fn cp_indices(n: u32) -> Vec<u32> {
    let q = n + 1;
    std::iter::once(0).chain((1..q).filter(|i| q.is_multiple_of(*i))).collect()
}

/// One model of the CP family: `D y = x^{n+1} + x^i t^{n+1-i} + t^{n+1}`
/// (no middle term for `i = 0`), `D z = x t^{n+1}`.
pub fn cp_model(n: u32, i: u32) -> Result<RelativeModel> {
    if !n.is_multiple_of(2) || n < 2 {
        return Err(Error::usage(format!("the CP family needs an even n >= 2, got {n}")));
    }
    let q = n + 1;
    if i != 0 && (i >= q || !q.is_multiple_of(i)) {
        return Err(Error::usage(format!("{i} is not a proper divisor of {q}")));
    }
    let mut rm = RelativeModel::over(cp_fiber(n)?, "t")?;
    let u = Arc::clone(rm.total().universe());
    let word = |x: u32, t: u32| -> Vec<usize> {
        std::iter::repeat_n(1, x as usize).chain(std::iter::repeat_n(0, t as usize)).collect()
    };
    let mut dy = GradedPolynomial::from_word(&u, &word(q, 0), rational(1));
    if i != 0 {
        dy = &dy + &GradedPolynomial::from_word(&u, &word(i, q - i), rational(1));
    }
    dy = &dy + &GradedPolynomial::from_word(&u, &word(0, q), rational(1));
    rm.set_total_differential(1, dy)?;
    rm.set_total_differential(2, GradedPolynomial::from_word(&u, &word(1, q), rational(1)))?;
    Ok(rm)
}

/// The CP family over `CP^n × S^{2n+3}`, one entry per index `i` (labels `i=<i>`).
pub fn cp_family(n: u32) -> Result<ModelCatalog> {
    cp_family_restricted(n, &cp_indices(n))
}

/// The CP family restricted to some of its indices.
pub fn cp_family_restricted(n: u32, indices: &[u32]) -> Result<ModelCatalog> {
    let models = indices
        .iter()
        .map(|&i| Ok((format!("i={i}"), cp_model(n, i)?)))
        .collect::<Result<Vec<_>>>()?;
    ModelCatalog::from_models(
        cp_fiber(n)?,
        models,
        Provenance::Family {
            name: "cp".into(),
            parameter: n,
        },
    )
}

/// Fiber of `Sp(n)`: odd spheres of degrees `3, 7, ..., 4n - 1`.
pub fn sp_fiber(n: u32) -> Result<SullivanModel> {
    let degrees: Vec<u32> = (1..=n).map(|i| 4 * i - 1).collect();
    SullivanModel::odd_spheres(&degrees)
}

/// Lower differentials `(i, j, k, e)` meaning `D v_i = v_j v_k t^e`, in chain order.
pub fn sp_lower_terms(n: u32) -> Vec<(u32, u32, u32, u32)> {
    if let Some(rows) = crate::fixtures::sp_table(n) {
        return rows;
    }
    if n <= 3 {
        return Vec::new();
    }
    let m = (n - 1) / 2;
    (m + 1..n)
        .map(|i| {
            let j = n - i;
            let k = if j >= 2 { 1 } else { 2 };
            (i, j, k, 2 * (i - j - k) + 1)
        })
        .collect()
}

/// `D v_n = Σ v_j v_{n-j} t + t^{2n}` plus the first `steps` lower terms.
pub fn sp_model(n: u32, steps: usize) -> Result<RelativeModel> {
    let mut rm = RelativeModel::over(sp_fiber(n)?, "t")?;
    let u = Arc::clone(rm.total().universe());
    let v = |i: u32| i as usize; // fiber v_i is total index i
    let mut top = GradedPolynomial::from_word(&u, &vec![0; 2 * n as usize], rational(1));
    for j in 1..=(n - 1) / 2 {
        top = &top + &GradedPolynomial::from_word(&u, &[v(j), v(n - j), 0], rational(1));
    }
    rm.set_total_differential(n as usize - 1, top)?;
    for &(i, j, k, e) in sp_lower_terms(n).iter().take(steps) {
        let mut word = vec![v(j), v(k)];
        word.extend(std::iter::repeat_n(0, e as usize));
        let mut p = GradedPolynomial::from_word(&u, &word, rational(1));
        // Written v_j v_k with j > k in the tables; keep the printed sign.
        if j > k {
            p = -&p;
        }
        rm.set_total_differential(i as usize - 1, p)?;
    }
    Ok(rm)
}

/// The nested chain of `(n+1)/2` models for odd `n` (labels `mu1`, `mu2`, ...).
pub fn sp_chain(n: u32) -> Result<ModelCatalog> {
    if n.is_multiple_of(2) || n == 0 {
        return Err(Error::usage(format!("sp_chain needs an odd n, got {n}")));
    }
    let len = if n <= 3 { 1 } else { n.div_ceil(2) as usize };
    let models = (0..len)
        .map(|s| Ok((format!("mu{}", s + 1), sp_model(n, s)?)))
        .collect::<Result<Vec<_>>>()?;
    ModelCatalog::from_models(
        sp_fiber(n)?,
        models,
        Provenance::Family {
            name: "sp".into(),
            parameter: n,
        },
    )
}
