//! Save a catalog with its poset as JSON, load it back and re-certify it.

use csdepth::catalog::{export_catalog, load_catalog, CatalogFile};
use csdepth::fixtures::fixture;
use csdepth::lattice::FieldSpec;
use csdepth::poset::build_poset;

fn main() -> csdepth::Result<()> {
    let catalog = fixture("ex5.2b")?;
    let p = build_poset(&catalog, FieldSpec::AlgebraicClosure)?;
    let file = CatalogFile::new(&catalog, Some((&p, &p.depth())));
    let path = std::env::temp_dir().join("csdepth-example-catalog.json");
    export_catalog(&file, &path)?;
    let back = load_catalog(&path)?;
    println!("wrote {} ({} models), reloaded equal: {}", path.display(), back.models.len(), back == file);
    let rebuilt = back.to_catalog()?;
    println!("re-certified catalog equal: {}", rebuilt == catalog);
    std::fs::remove_file(&path).ok();
    Ok(())
}
