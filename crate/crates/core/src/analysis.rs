//! The whole pipeline behind `csdepth analyze`.

use std::path::PathBuf;

use crate::algebra::SullivanModel;
use crate::catalog::{export_catalog, export_dot, load_catalog, CatalogFile};
use crate::cohomology::formal_dimension;
use crate::enumeration::{
    cp_family, enumerate_models, sp_chain, sp_fiber, EnumerationOptions, ModelCatalog, Provenance,
};
use crate::error::{Error, Result};
use crate::fixtures::fixture;
use crate::lattice::FieldSpec;
use crate::parse::parse_sullivan_model;
use crate::poset::{build_poset, c_value, CsPoset, DepthReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberSource {
    Degrees(Vec<u32>),
    Cp(u32),
    Sp(u32),
    Fixture(String),
    Catalog(PathBuf),
}

#[derive(Clone, Debug)]
pub struct AnalysisRequest {
    pub source: FiberSource,
    /// Degree list given next to a fixture or catalog; it must match.
    pub degrees: Option<Vec<u32>>,
    pub field: FieldSpec,
    pub options: EnumerationOptions,
    pub dot: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

impl AnalysisRequest {
    pub fn new(source: FiberSource) -> Self {
        AnalysisRequest {
            source,
            degrees: None,
            field: FieldSpec::AlgebraicClosure,
            options: EnumerationOptions::default(),
            dot: None,
            json: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisOutcome {
    pub catalog: ModelCatalog,
    pub poset: CsPoset,
    pub depth: DepthReport,
    pub file: CatalogFile,
    pub summary: Vec<String>,
    /// The enumeration stopped at a cap; outputs cover what was found.
    pub capped: bool,
}

impl AnalysisOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.capped {
            3
        } else {
            0
        }
    }
}

/// Odd degrees become odd spheres; every even `d` needs a partner `2d - 1`
/// and the pair becomes `S^d` (`d y = x^2`).
pub fn fiber_from_degrees(degrees: &[u32]) -> Result<SullivanModel> {
    if degrees.is_empty() {
        return Err(Error::usage("empty degree list"));
    }
    if let Some(d) = degrees.iter().find(|&&d| d < 2) {
        return Err(Error::usage(format!("degree {d} is below 2")));
    }
    let mut odd: Vec<u32> = degrees.iter().copied().filter(|d| d % 2 == 1).collect();
    let mut even: Vec<u32> = degrees.iter().copied().filter(|d| d % 2 == 0).collect();
    if even.is_empty() {
        return SullivanModel::odd_spheres(&odd);
    }
    even.sort_unstable();
    let mut text = String::new();
    let mut diffs = String::new();
    for (k, &d) in even.iter().enumerate() {
        let partner = 2 * d - 1;
        let Some(pos) = odd.iter().position(|&o| o == partner) else {
            return Err(Error::usage(format!(
                "even degree {d} needs a partner of degree {partner}"
            )));
        };
        odd.remove(pos);
        text.push_str(&format!("x{} {d}\ny{} {partner}\n", k + 1, k + 1));
        diffs.push_str(&format!("d y{} = x{}^2\n", k + 1, k + 1));
    }
    odd.sort_unstable();
    for (k, d) in odd.iter().enumerate() {
        text.push_str(&format!("v{} {d}\n", k + 1));
    }
    text.push_str(&diffs);
    parse_sullivan_model(&text)
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn even_catalog(fiber: SullivanModel, provenance: Provenance) -> Result<Option<ModelCatalog>> {
    let n = formal_dimension(&fiber)?;
    if n % 2 == 1 {
        return Ok(None);
    }
    let mut c = ModelCatalog::empty(fiber, provenance);
    c.notes.push(format!("fiber formal dimension {n} is even"));
    Ok(Some(c))
}

fn build_catalog(req: &AnalysisRequest) -> Result<ModelCatalog> {
    let catalog = match &req.source {
        FiberSource::Degrees(d) => enumerate_models(&fiber_from_degrees(d)?, &req.options)?,
        FiberSource::Cp(n) => {
            if *n == 0 {
                return Err(Error::usage("--cp needs n >= 1"));
            }
            cp_family(*n)?
        }
        FiberSource::Sp(n) => {
            if *n == 0 {
                return Err(Error::usage("--sp needs n >= 1"));
            }
            let provenance = Provenance::Family {
                name: "sp".into(),
                parameter: *n,
            };
            match even_catalog(sp_fiber(*n)?, provenance)? {
                Some(c) => c,
                None => sp_chain(*n)?,
            }
        }
        FiberSource::Fixture(name) => fixture(name)?,
        FiberSource::Catalog(path) => load_catalog(path)?.to_catalog()?,
    };
    if let Some(d) = &req.degrees {
        if !matches!(req.source, FiberSource::Degrees(_)) {
            let have = sorted(catalog.fiber.universe().degrees());
            if have != sorted(d.clone()) {
                return Err(Error::usage(format!(
                    "--degrees {d:?} does not match the fiber degrees {have:?}"
                )));
            }
        }
    }
    Ok(catalog)
}

/// Runs the pipeline and writes the requested outputs. A cap hit is not an
/// error here: outputs are written and the outcome is flagged.
pub fn run_analysis(req: &AnalysisRequest) -> Result<AnalysisOutcome> {
    let catalog = build_catalog(req)?;
    let poset = build_poset(&catalog, req.field)?;
    let depth = poset.depth();
    let file = CatalogFile::new(&catalog, Some((&poset, &depth)));
    let capped = !catalog.complete;

    let fd = formal_dimension(&catalog.fiber)?;
    let mut summary = vec![
        format!(
            "fiber degrees: {}",
            catalog
                .fiber
                .universe()
                .degrees()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
        format!("field: {}", req.field),
        format!("models: {}", catalog.entries.len()),
    ];
    if fd % 2 == 0 {
        summary.push("fiber formal dimension even; depth 0".into());
    } else {
        summary.push(format!("classes: {}, depth: {}", poset.len(), depth.depth));
        if !depth.witness_chain.is_empty() {
            let chain: Vec<String> = depth.witness_chain.iter().map(usize::to_string).collect();
            summary.push(format!("longest chain: {}", chain.join(" > ")));
        }
    }
    if let FiberSource::Cp(n) = req.source {
        let c = c_value(n as u64 + 1)?;
        if depth.depth == c as usize {
            summary.push(format!("depth: {} = c({})", depth.depth, n + 1));
        } else {
            summary.push(format!("depth: {}, c({}) = {c}", depth.depth, n + 1));
        }
    }
    summary.extend(catalog.notes.iter().map(|n| format!("note: {n}")));
    if capped {
        summary.push("enumeration cap reached; results are partial".into());
    }

    if let Some(path) = &req.json {
        export_catalog(&file, path)?;
    }
    if let Some(path) = &req.dot {
        export_dot(&poset, path)?;
    }
    Ok(AnalysisOutcome {
        catalog,
        poset,
        depth,
        file,
        summary,
        capped,
    })
}
