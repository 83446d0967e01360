//! Search for c-symplectic relative models over an odd-sphere fiber.

use csdepth::algebra::SullivanModel;
use csdepth::enumeration::{enumerate_models, pre_c_symplectic, EnumerationOptions};

fn main() -> csdepth::Result<()> {
    for degrees in [vec![3, 5, 9], vec![3, 5, 7], vec![3, 3, 7], vec![3, 5, 7, 9, 15]] {
        let fiber = SullivanModel::odd_spheres(&degrees)?;
        let catalog = enumerate_models(&fiber, &EnumerationOptions::default())?;
        println!(
            "{degrees:?}: inequalities hold {}, {} models found",
            pre_c_symplectic(&degrees)?,
            catalog.entries.len()
        );
        for e in catalog.entries.iter().take(4) {
            let u = e.model.total().universe();
            let diffs: Vec<String> = (0..fiber.num_generators())
                .filter(|&i| !e.model.total_differential_of(i).is_zero())
                .map(|i| format!("D{} = {}", u.generator(i + 1).name, e.model.total_differential_of(i)))
                .collect();
            println!("  {}: {}", e.label, diffs.join(", "));
        }
    }
    Ok(())
}
