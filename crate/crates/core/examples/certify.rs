//! Betti numbers of a total space and the c-symplectic certificate.

use csdepth::cohomology::{betti_numbers, c_symplectic_certify, formal_dimension};
use csdepth::parse::parse_relative_model;

fn main() -> csdepth::Result<()> {
    for (name, text) in [
        ("S^5, D v = t^3", "t 2 base\nv 5\nd v = t^3\n"),
        ("S^3 x S^3 x S^7", "t 2 base\nv1 3\nv2 3\nv3 7\nd v3 = v1v2t + t^4\n"),
        ("rejected: S^3 x S^3 x S^7, D v3 = t^4", "t 2 base\nv1 3\nv2 3\nv3 7\nd v3 = t^4\n"),
    ] {
        let rm = parse_relative_model(text)?;
        let n = formal_dimension(rm.fiber())?;
        let cert = c_symplectic_certify(&rm)?;
        println!("{name}: fiber formal dimension {n}, {}", cert.verdict);
        if cert.is_certified() {
            println!("  dim H* = {}, top power t^{}", cert.total_dim, cert.top_power);
        }
        let b = betti_numbers(rm.total(), n + 2);
        let row: Vec<String> = b.by_degree.iter().filter(|(_, &v)| v > 0).map(|(k, v)| format!("b{k}={v}")).collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}
