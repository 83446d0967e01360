//! The poset of subgroup classes of a model catalog over a field.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::ModelCatalog;
use crate::error::{Error, Result};
use crate::lattice::{field_closure, points_structure, AbelianStructure, ConstraintLattice, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetClass {
    /// 1-based class number.
    pub id: usize,
    /// Catalog entry indices of the members, ascending.
    pub representatives: Vec<usize>,
    pub labels: Vec<String>,
    /// Field-closed relation lattice shared by all members.
    pub lattice: ConstraintLattice,
    pub structure: AbelianStructure,
    /// `dim H*(Y)` of each representative, in representative order.
    pub dims: Vec<usize>,
    pub unipotent: usize,
}

impl PosetClass {
    pub fn min_dim(&self) -> usize {
        self.dims.iter().copied().min().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsPoset {
    pub field: FieldSpec,
    pub elements: Vec<PosetClass>,
    /// `above[a][b]`: the subgroup of class `b` lies inside that of class `a`
    /// (0-based, reflexive).
    pub above: Vec<Vec<bool>>,
    /// Covering pairs `(larger id, smaller id)`, 1-based, sorted.
    pub hasse: Vec<(usize, usize)>,
    /// Comparable pairs whose unipotent parameter counts differ.
    pub flagged: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub depth: usize,
    pub witness_chain: Vec<usize>,
    pub height: usize,
}

/// Classes are numbered by the catalog position of their first member.
pub fn build_poset(catalog: &ModelCatalog, field: FieldSpec) -> Result<CsPoset> {
    let fiber = &catalog.fiber;
    if let Some(e) = catalog.entries.iter().find(|e| e.model.fiber() != fiber) {
        return Err(Error::usage(format!("entry `{}` has a different fiber", e.label)));
    }
    let closed: Vec<ConstraintLattice> = catalog
        .entries
        .par_iter()
        .map(|e| field_closure(&e.lattice, field))
        .collect();
    let unipotent = catalog.unipotent_total();

    let mut first_of: BTreeMap<&ConstraintLattice, usize> = BTreeMap::new();
    let mut elements: Vec<PosetClass> = Vec::new();
    for (i, l) in closed.iter().enumerate() {
        let entry = &catalog.entries[i];
        match first_of.get(l) {
            Some(&c) => {
                elements[c].representatives.push(i);
                elements[c].labels.push(entry.label.clone());
                elements[c].dims.push(entry.certificate.total_dim);
            }
            None => {
                first_of.insert(l, elements.len());
                elements.push(PosetClass {
                    id: elements.len() + 1,
                    representatives: vec![i],
                    labels: vec![entry.label.clone()],
                    lattice: l.clone(),
                    structure: points_structure(&entry.lattice, field),
                    dims: vec![entry.certificate.total_dim],
                    unipotent,
                });
            }
        }
    }

    let n = elements.len();
    // points(b) ⊆ points(a)  ⟺  cl(L_a) ⊆ cl(L_b).
    let above: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| elements[a].lattice.is_sublattice_of(&elements[b].lattice))
                .collect()
        })
        .collect();
    let hasse = transitive_reduction(&above);
    let flagged = hasse
        .iter()
        .filter(|(a, b)| elements[a - 1].unipotent != elements[b - 1].unipotent)
        .copied()
        .collect();
    Ok(CsPoset {
        field,
        elements,
        above,
        hasse,
        flagged,
    })
}

/// Covering pairs of a reflexive partial order given as a relation matrix.
pub fn transitive_reduction(above: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = above.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !above[a][b] {
                continue;
            }
            let covered = (0..n).any(|c| c != a && c != b && above[a][c] && above[c][b]);
            if !covered {
                edges.push((a + 1, b + 1));
            }
        }
    }
    edges
}

impl CsPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Class id containing the catalog entry with this label.
    pub fn class_of_label(&self, label: &str) -> Option<usize> {
        self.elements
            .iter()
            .find(|c| c.labels.iter().any(|l| l == label))
            .map(|c| c.id)
    }

    /// Longest chain, counted in elements. Ties go to the smallest ids.
    pub fn depth(&self) -> DepthReport {
        let n = self.len();
        if n == 0 {
            return DepthReport {
                depth: 0,
                witness_chain: Vec::new(),
                height: 0,
            };
        }
        // best[c]: longest chain starting at c going down.
        let mut best = vec![0usize; n];
        let mut next: Vec<Option<usize>> = vec![None; n];
        let order = self.bottom_up_order();
        for &c in &order {
            best[c] = 1;
            for &(a, b) in &self.hasse {
                if a - 1 == c {
                    let cand = best[b - 1] + 1;
                    let better = cand > best[c]
                        || cand == best[c] && next[c].is_some_and(|x| b - 1 < x);
                    if better {
                        best[c] = cand;
                        next[c] = Some(b - 1);
                    }
                }
            }
        }
        let start = (0..n).max_by(|&x, &y| best[x].cmp(&best[y]).then(y.cmp(&x))).unwrap();
        let mut chain = vec![start + 1];
        let mut cur = start;
        while let Some(nx) = next[cur] {
            chain.push(nx + 1);
            cur = nx;
        }
        DepthReport {
            depth: best[start],
            height: best[start] - 1,
            witness_chain: chain,
        }
    }

    /// Classes ordered so every class comes after all classes below it.
    fn bottom_up_order(&self) -> Vec<usize> {
        let n = self.len();
        let below_count: Vec<usize> = (0..n)
            .map(|a| (0..n).filter(|&b| b != a && self.above[a][b]).count())
            .collect();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&c| (below_count[c], c));
        idx
    }

    /// Length of the longest chain from a maximal class down to `id`.
    pub fn element_coheight(&self, id: usize) -> Result<usize> {
        if id == 0 || id > self.len() {
            return Err(Error::usage(format!("no class {id}")));
        }
        let co = self.coheights();
        Ok(co[id - 1])
    }

    pub fn coheights(&self) -> Vec<usize> {
        let n = self.len();
        let mut co = vec![1usize; n];
        let mut order = self.bottom_up_order();
        order.reverse();
        for &c in &order {
            for &(a, b) in &self.hasse {
                if a - 1 == c {
                    co[b - 1] = co[b - 1].max(co[c] + 1);
                }
            }
        }
        co
    }
}

/// One plus the number of prime factors of `q` counted with multiplicity.
pub fn c_value(q: u64) -> Result<u32> {
    if q < 2 {
        return Err(Error::usage(format!("c_value needs q >= 2, got {q}")));
    }
    let mut q = q;
    let mut count = 0;
    let mut p = 2;
    while p * p <= q {
        while q.is_multiple_of(p) {
            q /= p;
            count += 1;
        }
        p += 1;
    }
    if q > 1 {
        count += 1;
    }
    Ok(count + 1)
}
