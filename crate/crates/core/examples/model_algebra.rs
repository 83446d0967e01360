//! Parse a relative model, check d^2 = 0 and apply the differential.

use csdepth::algebra::rational;
use csdepth::parse::{parse_polynomial, parse_relative_model};

fn main() -> csdepth::Result<()> {
    // Example 5.2-style fiber S^3 x S^5 x S^7 x S^9 x S^15 with a twisted top generator.
    let text = "\
t 2 base
v1 3
v2 5
v3 7
v4 9
v5 15
d v5 = v1v4t^2 + v2v3t^2 + t^8
";
    let rm = parse_relative_model(text)?;
    println!("{}", rm.to_text());
    println!("valid: {}", rm.validate().is_valid());

    let u = rm.total().universe();
    let p = parse_polynomial("v5 v1", u).expect("polynomial");
    let dp = rm.apply_differential(&p)?;
    println!("D(v5 v1) = {dp}");

    let twice = rm.apply_differential(&dp)?;
    println!("D(D(v5 v1)) = {twice}");
    let scaled = dp.scale(&rational(-2));
    println!("-2 D(v5 v1) = {scaled}");
    Ok(())
}
