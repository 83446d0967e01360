//! On-disk forms: the versioned JSON catalog and DOT rendering of a poset.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{GeneratorSpec, GradedPolynomial, Monomial, Rational, RelativeModel, SullivanModel, Universe};
use crate::enumeration::{ModelCatalog, Provenance};
use crate::error::{Error, Result};
use crate::lattice::{AbelianStructure, ConstraintLattice, FieldSpec};
use crate::poset::{CsPoset, DepthReport};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub format_version: u32,
    pub fiber: FiberFile,
    pub provenance: Provenance,
    pub complete: bool,
    pub notes: Vec<String>,
    pub models: Vec<ModelFile>,
    pub poset: Option<PosetFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberFile {
    pub generators: Vec<GeneratorFile>,
    pub differentials: Vec<DifferentialFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub name: String,
    pub degree: u32,
}

/// `d generator = Σ coefficient · monomial`; zero differentials are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialFile {
    pub generator: String,
    pub terms: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    /// Exact rational as `"p"` or `"p/q"`.
    pub coefficient: String,
    /// `(generator name, exponent)` pairs with positive exponents.
    pub factors: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub label: String,
    pub differentials: Vec<DifferentialFile>,
    pub dim_h: usize,
    pub lattice: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub field: String,
    pub classes: Vec<ClassFile>,
    pub order: Vec<Vec<bool>>,
    pub hasse: Vec<(usize, usize)>,
    pub flagged: Vec<(usize, usize)>,
    pub depth: DepthReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFile {
    pub id: usize,
    pub labels: Vec<String>,
    pub representatives: Vec<usize>,
    pub lattice: Vec<Vec<i64>>,
    pub structure: String,
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub realized_orders: Vec<i64>,
    pub dims: Vec<usize>,
    pub unipotent: usize,
}

fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.trim().parse().ok()?, num_bigint::BigInt::from(1)),
    };
    if d == num_bigint::BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

fn term_file(m: &Monomial, c: &Rational, u: &Universe) -> TermFile {
    TermFile {
        coefficient: rational_string(c),
        factors: m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (u.generator(i).name.clone(), e))
            .collect(),
    }
}

fn differential_files(
    u: &Universe,
    n: usize,
    get: impl Fn(usize) -> GradedPolynomial,
    name_of: impl Fn(usize) -> String,
) -> Vec<DifferentialFile> {
    (0..n)
        .filter_map(|i| {
            let p = get(i);
            (!p.is_zero()).then(|| DifferentialFile {
                generator: name_of(i),
                terms: p.terms().map(|(m, c)| term_file(m, c, u)).collect(),
            })
        })
        .collect()
}

impl CatalogFile {
    pub fn new(catalog: &ModelCatalog, poset: Option<(&CsPoset, &DepthReport)>) -> Self {
        let fu = catalog.fiber.universe();
        let fiber = FiberFile {
            generators: fu
                .generators()
                .iter()
                .map(|g| GeneratorFile {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
            differentials: differential_files(
                fu,
                fu.len(),
                |i| catalog.fiber.differential_of(i).clone(),
                |i| fu.generator(i).name.clone(),
            ),
        };
        let models = catalog
            .entries
            .iter()
            .map(|e| {
                let tu = e.model.total().universe();
                ModelFile {
                    label: e.label.clone(),
                    differentials: differential_files(
                        tu,
                        fu.len(),
                        |i| e.model.total_differential_of(i).clone(),
                        |i| fu.generator(i).name.clone(),
                    ),
                    dim_h: e.certificate.total_dim,
                    lattice: e.lattice.relations().clone(),
                }
            })
            .collect();
        CatalogFile {
            format_version: FORMAT_VERSION,
            fiber,
            provenance: catalog.provenance.clone(),
            complete: catalog.complete,
            notes: catalog.notes.clone(),
            models,
            poset: poset.map(|(p, d)| poset_file(p, d)),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::schema("<root>", e.to_string()))?;
        match value.get("format_version").and_then(serde_json::Value::as_u64) {
            Some(v) if v == FORMAT_VERSION as u64 => {}
            Some(v) => {
                return Err(Error::schema(
                    "format_version",
                    format!("expected {FORMAT_VERSION}, found {v}"),
                ))
            }
            None => return Err(Error::schema("format_version", "missing or not an integer")),
        }
        serde_json::from_value(value).map_err(|e| {
            let msg = e.to_string();
            let field = msg
                .split('`')
                .nth(1)
                .map_or_else(|| "<root>".to_string(), str::to_string);
            Error::schema(field, msg)
        })
    }

    /// Rebuilds the catalog, re-validating and re-certifying every model and
    /// checking the recorded lattices and dimensions.
    pub fn to_catalog(&self) -> Result<ModelCatalog> {
        let gens: Vec<GeneratorSpec> = self
            .fiber
            .generators
            .iter()
            .map(|g| GeneratorSpec::new(g.name.clone(), g.degree))
            .collect();
        let fu = Universe::new(gens).map_err(|e| Error::schema("fiber.generators", e.to_string()))?;
        if fu.generators().iter().map(|g| &g.name).ne(self.fiber.generators.iter().map(|g| &g.name)) {
            return Err(Error::schema("fiber.generators", "generators must be listed in degree order"));
        }
        let mut fiber = SullivanModel::free(Arc::clone(&fu));
        for (k, d) in self.fiber.differentials.iter().enumerate() {
            let field = format!("fiber.differentials[{k}]");
            let (i, p) = read_differential(&fu, &fu, d, &field)?;
            fiber.set_differential(i, p).map_err(|e| Error::schema(field, e.to_string()))?;
        }
        let report = fiber.validate();
        if !report.is_valid() {
            return Err(Error::schema("fiber.differentials", report.to_string()));
        }
        let mut models = Vec::with_capacity(self.models.len());
        for (k, m) in self.models.iter().enumerate() {
            let mut rm = RelativeModel::over(fiber.clone(), "t")
                .map_err(|e| Error::schema("fiber", e.to_string()))?;
            let tu = Arc::clone(rm.total().universe());
            for (j, d) in m.differentials.iter().enumerate() {
                let field = format!("models[{k}].differentials[{j}]");
                let (i, p) = read_differential(&fu, &tu, d, &field)?;
                rm.set_total_differential(i, p).map_err(|e| Error::schema(field, e.to_string()))?;
            }
            models.push((m.label.clone(), rm));
        }
        let mut catalog = ModelCatalog::from_models(fiber, models, self.provenance.clone())
            .map_err(|e| Error::schema("models", e.to_string()))?;
        for (k, (m, e)) in self.models.iter().zip(&catalog.entries).enumerate() {
            let stored = ConstraintLattice::new(fu.len(), &m.lattice)
                .map_err(|err| Error::schema(format!("models[{k}].lattice"), err.to_string()))?;
            if stored != e.lattice {
                return Err(Error::schema(
                    format!("models[{k}].lattice"),
                    format!("recorded lattice differs from the one of `{}`", m.label),
                ));
            }
            if m.dim_h != e.certificate.total_dim {
                return Err(Error::schema(
                    format!("models[{k}].dim_h"),
                    format!("recorded {}, computed {}", m.dim_h, e.certificate.total_dim),
                ));
            }
        }
        catalog.complete = self.complete;
        catalog.notes = self.notes.clone();
        Ok(catalog)
    }
}

/// Reads one differential, checking that every term balances degrees.
fn read_differential(
    fiber: &Universe,
    u: &Arc<Universe>,
    d: &DifferentialFile,
    field: &str,
) -> Result<(usize, GradedPolynomial)> {
    let Some(i) = fiber.index_of(&d.generator) else {
        return Err(Error::schema(
            format!("{field}.generator"),
            format!("unknown generator `{}`", d.generator),
        ));
    };
    let target = fiber.generator(i).degree + 1;
    let mut p = GradedPolynomial::zero(u);
    for (j, t) in d.terms.iter().enumerate() {
        let tf = format!("{field}.terms[{j}]");
        let c = parse_rational(&t.coefficient).ok_or_else(|| {
            Error::schema(format!("{tf}.coefficient"), format!("`{}` is not a rational", t.coefficient))
        })?;
        let mut exps = vec![0u32; u.len()];
        for (name, e) in &t.factors {
            let Some(g) = u.index_of(name) else {
                return Err(Error::schema(format!("{tf}.factors"), format!("unknown generator `{name}`")));
            };
            exps[g] += e;
        }
        let Some(m) = Monomial::from_exponents(u, exps) else {
            return Err(Error::schema(tf, "odd generator with exponent above 1"));
        };
        let deg = m.degree(u);
        if deg != target {
            return Err(Error::schema(
                tf,
                format!(
                    "term {} of d{} has degree {deg}, expected {target}",
                    m.render(u),
                    d.generator
                ),
            ));
        }
        p.add_term(m, c);
    }
    Ok((i, p))
}

fn poset_file(p: &CsPoset, d: &DepthReport) -> PosetFile {
    PosetFile {
        field: p.field.to_string(),
        classes: p
            .elements
            .iter()
            .map(|c| ClassFile {
                id: c.id,
                labels: c.labels.clone(),
                representatives: c.representatives.clone(),
                lattice: c.lattice.relations().clone(),
                structure: c.structure.structure_string(),
                free_rank: c.structure.free_rank,
                torsion: c.structure.torsion.clone(),
                realized_orders: c.structure.realized_orders.clone(),
                dims: c.dims.clone(),
                unipotent: c.unipotent,
            })
            .collect(),
        order: p.above.clone(),
        hasse: p.hasse.clone(),
        flagged: p.flagged.clone(),
        depth: d.clone(),
    }
}

impl PosetFile {
    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::parse(&self.field).map_err(|e| Error::schema("poset.field", e.to_string()))
    }

    pub fn structure_of(&self, id: usize) -> Option<AbelianStructure> {
        let c = self.classes.iter().find(|c| c.id == id)?;
        Some(AbelianStructure {
            free_rank: c.free_rank,
            torsion: c.torsion.clone(),
            field: self.field_spec().ok()?,
            realized_orders: c.realized_orders.clone(),
        })
    }
}

pub fn load_catalog(path: &Path) -> Result<CatalogFile> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    CatalogFile::from_json(&text)
}

pub fn export_catalog(file: &CatalogFile, path: &Path) -> Result<()> {
    write_atomic(path, file.to_json().as_bytes())
}

/// DOT digraph of the Hasse diagram; nodes are grouped in ranks by co-height
/// and edges point from the larger subgroup to the smaller one.
pub fn poset_to_dot(p: &CsPoset) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph poset {{");
    let _ = writeln!(s, "  label=\"field {}\";", p.field);
    let _ = writeln!(s, "  rankdir=TB;");
    let _ = writeln!(s, "  node [shape=box];");
    let co = p.coheights();
    let max = co.iter().copied().max().unwrap_or(0);
    for level in 1..=max {
        let ids: Vec<String> = p
            .elements
            .iter()
            .filter(|c| co[c.id - 1] == level)
            .map(|c| format!("c{};", c.id))
            .collect();
        let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join(" "));
    }
    for c in &p.elements {
        let _ = writeln!(
            s,
            "  c{} [label=\"{} / {} / {}\"];",
            c.id,
            c.id,
            c.structure.structure_string(),
            c.min_dim()
        );
    }
    for (a, b) in &p.hasse {
        let _ = writeln!(s, "  c{a} -> c{b};");
    }
    s.push_str("}\n");
    s
}

pub fn export_dot(p: &CsPoset, path: &Path) -> Result<()> {
    write_atomic(path, poset_to_dot(p).as_bytes())
}

/// Writes to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| io(std::io::Error::new(std::io::ErrorKind::InvalidInput, "not a file path")))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}
