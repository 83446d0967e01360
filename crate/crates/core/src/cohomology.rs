//! Degreewise rational cohomology of free graded-commutative models.
//!
//! The cochain complex is split by character class: every monomial carries
//! a weight in `Z^n` (one coordinate per generator other than the base), and
//! the differential preserves the weight modulo the lattice spanned by the
//! relations its terms define. Each (degree, class) block is reduced on its
//! own, in parallel.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedPolynomial, Monomial, RelativeModel, SullivanModel, Universe};
use crate::error::{Error, Result};
use crate::lattice::{ConstraintLattice, Quotient};
use crate::linalg::{bareiss_rank, to_dense_integer, Echelon, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub by_degree: BTreeMap<u32, usize>,
    pub computed_up_to: u32,
}

impl BettiTable {
    pub fn get(&self, k: u32) -> Option<usize> {
        self.by_degree.get(&k).copied()
    }

    pub fn total(&self) -> usize {
        self.by_degree.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_degree
            .iter()
            .map(|(&k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Highest degree with nonzero cohomology inside the computed range.
    pub fn top_degree(&self) -> Option<u32> {
        self.by_degree.iter().rev().find(|(_, &b)| b > 0).map(|(&k, _)| k)
    }
}

/// All canonical monomials of degree `k`, in ascending exponent order.
pub fn basis_in_degree(m: &SullivanModel, k: u32) -> Vec<Monomial> {
    let u = m.universe();
    let mut out = Vec::new();
    let mut exps = vec![0u32; u.len()];
    enumerate(u, 0, k, &mut exps, &mut |e| {
        if e.iter().zip(u.generators()).map(|(x, g)| x * g.degree).sum::<u32>() == k {
            out.push(Monomial::from_exponents(u, e.to_vec()).expect("canonical"));
        }
    });
    out.sort();
    out
}

/// Calls `f` on every exponent vector of degree at most `budget`.
fn enumerate(u: &Universe, idx: usize, budget: u32, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if idx == u.len() {
        f(exps);
        return;
    }
    let d = u.generator(idx).degree;
    let max = if u.generator(idx).is_odd() { 1 } else { budget / d };
    for e in 0..=max.min(budget / d) {
        exps[idx] = e;
        enumerate(u, idx + 1, budget - e * d, exps, f);
    }
    exps[idx] = 0;
}

/// Relations `weight(term) - e_g` over all terms of all `d g`; the base
/// generator (if any) is left out of the weights.
fn grading_lattice(m: &SullivanModel) -> (ConstraintLattice, Option<usize>) {
    let u = m.universe();
    let base = u.base();
    let coords: Vec<usize> = (0..u.len()).filter(|&i| Some(i) != base).collect();
    let pos: HashMap<usize, usize> = coords.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut rows = Vec::new();
    for g in 0..u.len() {
        for (term, _) in m.differential_of(g).terms() {
            let mut w: Vec<i64> = coords.iter().map(|&i| term.exponent(i) as i64).collect();
            if let Some(&p) = pos.get(&g) {
                w[p] -= 1;
            }
            rows.push(w);
        }
    }
    (
        ConstraintLattice::new(coords.len(), &rows).expect("consistent rank"),
        base,
    )
}

type BlockKey = (u32, Vec<i64>);

/// Monomials up to a degree bound, grouped into differential-stable blocks.
struct Complex<'a> {
    model: &'a SullivanModel,
    blocks: HashMap<BlockKey, Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    quotient: Quotient,
    base: Option<usize>,
}

impl<'a> Complex<'a> {
    fn new(model: &'a SullivanModel, max_degree: u32) -> Self {
        let (lattice, base) = grading_lattice(model);
        let quotient = lattice.quotient();
        let u = model.universe();
        let mut blocks: HashMap<BlockKey, Vec<Monomial>> = HashMap::new();
        let mut exps = vec![0u32; u.len()];
        enumerate(u, 0, max_degree, &mut exps, &mut |e| {
            let m = Monomial::from_exponents(u, e.to_vec()).expect("canonical");
            let key = (m.degree(u), Self::class_of(&quotient, base, &m));
            blocks.entry(key).or_default().push(m);
        });
        let mut index = HashMap::new();
        for list in blocks.values_mut() {
            list.sort();
            for (i, m) in list.iter().enumerate() {
                index.insert(m.clone(), i);
            }
        }
        Complex {
            model,
            blocks,
            index,
            quotient,
            base,
        }
    }

    fn class_of(q: &Quotient, base: Option<usize>, m: &Monomial) -> Vec<i64> {
        let w: Vec<i64> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != base)
            .map(|(_, &e)| e as i64)
            .collect();
        q.key(&w)
    }

    fn class(&self, m: &Monomial) -> Vec<i64> {
        Self::class_of(&self.quotient, self.base, m)
    }

    fn vector(&self, p: &GradedPolynomial) -> SparseVec {
        let mut v: SparseVec = p
            .terms()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Images of the block `(k, class)` under `d`, in target coordinates.
    fn images(&self, k: u32, class: &[i64]) -> Vec<SparseVec> {
        let Some(src) = self.blocks.get(&(k, class.to_vec())) else {
            return Vec::new();
        };
        src.iter()
            .map(|m| self.vector(&self.model.differential_of_monomial(m)))
            .filter(|v| !v.is_empty())
            .collect()
    }

    fn rank(&self, k: u32, class: &[i64]) -> usize {
        let mut e = Echelon::new();
        for v in self.images(k, class) {
            e.insert(v);
        }
        e.rank()
    }

    fn dim(&self, k: u32, class: &[i64]) -> usize {
        self.blocks.get(&(k, class.to_vec())).map_or(0, Vec::len)
    }

    fn betti(&self, up_to: u32) -> BettiTable {
        let keys: Vec<&BlockKey> = self.blocks.keys().filter(|(k, _)| *k <= up_to).collect();
        let ranks: HashMap<BlockKey, usize> = keys
            .par_iter()
            .map(|key| ((*key).clone(), self.rank(key.0, &key.1)))
            .collect();
        let mut by_degree: BTreeMap<u32, usize> = (0..=up_to).map(|k| (k, 0)).collect();
        for key in keys {
            let (k, class) = key;
            let out = ranks[key];
            let inc = if *k == 0 {
                0
            } else {
                ranks.get(&(k - 1, class.clone())).copied().unwrap_or(0)
            };
            *by_degree.get_mut(k).unwrap() += self.dim(*k, class) - out - inc;
        }
        BettiTable {
            by_degree,
            computed_up_to: up_to,
        }
    }
}

pub fn betti_numbers(m: &SullivanModel, up_to: u32) -> BettiTable {
    Complex::new(m, up_to + 1).betti(up_to)
}

/// Same numbers by dense fraction-free elimination on ungraded degree
/// blocks; a slow reference for checking [`betti_numbers`].
pub fn dense_betti_numbers(m: &SullivanModel, up_to: u32) -> BettiTable {
    let bases: Vec<Vec<Monomial>> = (0..=up_to + 1).map(|k| basis_in_degree(m, k)).collect();
    let ranks: Vec<usize> = (0..=up_to as usize)
        .map(|k| {
            let target: HashMap<&Monomial, usize> =
                bases[k + 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
            let rows: Vec<Vec<BigInt>> = bases[k]
                .iter()
                .map(|b| {
                    let img = m.differential_of_monomial(b);
                    let mut v: SparseVec = img.terms().map(|(t, c)| (target[t], c.clone())).collect();
                    v.sort_by_key(|e| e.0);
                    to_dense_integer(&v, bases[k + 1].len())
                })
                .filter(|r| r.iter().any(|x| !x.is_zero()))
                .collect();
            bareiss_rank(&rows)
        })
        .collect();
    let by_degree = (0..=up_to)
        .map(|k| {
            let k_us = k as usize;
            let inc = if k == 0 { 0 } else { ranks[k_us - 1] };
            (k, bases[k_us].len() - ranks[k_us] - inc)
        })
        .collect();
    BettiTable {
        by_degree,
        computed_up_to: up_to,
    }
}

/// Top nonzero degree of a fiber model whose cohomology is known to be
/// finite: models with only odd generators, and pure models in which every
/// even generator `x` has an odd partner with `d y = c·x^k`.
pub fn formal_dimension(m: &SullivanModel) -> Result<u32> {
    let u = m.universe();
    let odd_sum: u32 = u.generators().iter().filter(|g| g.is_odd()).map(|g| g.degree).sum();
    let evens: Vec<usize> = (0..u.len()).filter(|&i| !u.generator(i).is_odd()).collect();
    if evens.is_empty() {
        return Ok(odd_sum);
    }
    let only_evens = |t: &Monomial| evens.iter().map(|&e| t.exponent(e)).sum::<u32>() == t.word_length();
    let pure = (0..u.len()).all(|i| {
        let dg = m.differential_of(i);
        if u.generator(i).is_odd() {
            dg.terms().all(|(t, _)| only_evens(t))
        } else {
            dg.is_zero()
        }
    });
    let powers = evens.iter().all(|&x| {
        (0..u.len()).any(|y| {
            let dy = m.differential_of(y);
            dy.num_terms() == 1 && dy.terms().all(|(t, _)| t.exponent(x) == t.word_length())
        })
    });
    if !(pure && powers) {
        return Err(Error::usage(
            "formal dimension is only available for odd-generator or pure models with power relations",
        ));
    }
    let even_sum: u32 = evens.iter().map(|&i| u.generator(i).degree - 1).sum();
    Ok(odd_sum - even_sum)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Certified,
    Rejected(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified => write!(f, "certified"),
            Verdict::Rejected(r) => write!(f, "rejected: {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsCertificate {
    pub formal_dimension_y: u32,
    pub top_power: u32,
    pub total_dim: usize,
    pub verdict: Verdict,
    pub betti: Option<BettiTable>,
}

impl CsCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    fn rejected(reason: impl Into<String>, betti: Option<BettiTable>) -> Self {
        CsCertificate {
            formal_dimension_y: 0,
            top_power: 0,
            total_dim: 0,
            verdict: Verdict::Rejected(reason.into()),
            betti,
        }
    }
}

fn base_power(total: &SullivanModel, e: u32) -> Monomial {
    let mut exps = vec![0; total.universe().len()];
    exps[0] = e;
    Monomial::from_exponents(total.universe(), exps).expect("even power")
}

/// Whether `t^e` is a coboundary, decided in the weight-zero block only.
fn base_power_is_exact(c: &Complex<'_>, e: u32) -> bool {
    let tp = base_power(c.model, e);
    let class = c.class(&tp);
    let mut ech = Echelon::new();
    for v in c.images(2 * e - 1, &class) {
        ech.insert(v);
    }
    let target = c.vector(&GradedPolynomial::from_monomial(
        c.model.universe(),
        tp,
        crate::algebra::rational(1),
    ));
    ech.contains(target)
}

/// Certifies the total space as c-symplectic with top class a power of the
/// base generator, given the fiber's formal dimension `n`.
pub fn certify_with_fiber_dimension(rm: &RelativeModel, n: u32) -> CsCertificate {
    if n.is_multiple_of(2) {
        return CsCertificate::rejected(format!("parity: fiber formal dimension {n} is even"), None);
    }
    let total = rm.total();
    let complex = Complex::new(total, n + 2);
    let betti = complex.betti(n + 1);
    let b = |k| betti.get(k).unwrap_or(0);
    if b(n) != 0 || b(n + 1) != 0 {
        return CsCertificate::rejected(
            format!("infinite: b_{n} = {}, b_{} = {}", b(n), n + 1, b(n + 1)),
            Some(betti),
        );
    }
    if betti.top_degree() != Some(n - 1) || b(n - 1) != 1 {
        return CsCertificate::rejected(
            format!("top degree {:?} with b_{} = {}", betti.top_degree(), n - 1, b(n - 1)),
            Some(betti),
        );
    }
    let top = (n - 1) / 2;
    if top > 0 && base_power_is_exact(&complex, top) {
        return CsCertificate::rejected(format!("t^{top} is exact"), Some(betti));
    }
    CsCertificate {
        formal_dimension_y: n - 1,
        top_power: top,
        total_dim: betti.total(),
        verdict: Verdict::Certified,
        betti: Some(betti),
    }
}

pub fn c_symplectic_certify(rm: &RelativeModel) -> Result<CsCertificate> {
    let n = formal_dimension(rm.fiber())?;
    Ok(certify_with_fiber_dimension(rm, n))
}

/// Cheap necessary condition: `t^{(n-1)/2}` is not a coboundary. Only the
/// blocks of two degrees are built.
pub fn top_class_survives(rm: &RelativeModel, n: u32) -> bool {
    if n.is_multiple_of(2) {
        return false;
    }
    let top = (n - 1) / 2;
    if top == 0 {
        return true;
    }
    let total = rm.total();
    let (lattice, base) = grading_lattice(total);
    let quotient = lattice.quotient();
    let tp = base_power(total, top);
    let class = Complex::class_of(&quotient, base, &tp);
    let mut blocks: HashMap<BlockKey, Vec<Monomial>> = HashMap::new();
    for k in [n - 2, n - 1] {
        for m in basis_in_degree(total, k) {
            if Complex::class_of(&quotient, base, &m) == class {
                blocks.entry((k, class.clone())).or_default().push(m);
            }
        }
    }
    let mut index = HashMap::new();
    for list in blocks.values() {
        for (i, m) in list.iter().enumerate() {
            index.insert(m.clone(), i);
        }
    }
    let c = Complex {
        model: total,
        blocks,
        index,
        quotient,
        base,
    };
    !base_power_is_exact(&c, top)
}

/// Dimension of decomposable cocycles in degree `|g|` modulo coboundaries.
pub fn unipotent_parameter_count(m: &SullivanModel, g: usize) -> usize {
    let k = m.universe().generator(g).degree;
    let decomposable: Vec<Monomial> = basis_in_degree(m, k)
        .into_iter()
        .filter(|b| b.word_length() >= 2)
        .collect();
    let target: Vec<Monomial> = basis_in_degree(m, k + 1);
    let tindex: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut e = Echelon::new();
    for b in &decomposable {
        let img = m.differential_of_monomial(b);
        let mut v: SparseVec = img.terms().map(|(t, c)| (tindex[t], c.clone())).collect();
        v.sort_by_key(|x| x.0);
        e.insert(v);
    }
    let cocycles = decomposable.len() - e.rank();
    let source = basis_in_degree(m, k - 1);
    let full: Vec<Monomial> = basis_in_degree(m, k);
    let findex: HashMap<&Monomial, usize> = full.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut im = Echelon::new();
    for b in &source {
        let img = m.differential_of_monomial(b);
        let mut v: SparseVec = img.terms().map(|(t, c)| (findex[t], c.clone())).collect();
        v.sort_by_key(|x| x.0);
        im.insert(v);
    }
    cocycles - im.rank()
}
