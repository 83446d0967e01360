//! Built-in model catalogs with their known subgroup descriptions.
//!
//! Each fixture is a fiber (a product of odd spheres, or one of the closed-form
//! families) together with a list of labelled total differentials written in
//! the text polynomial syntax. Generators are `v1, v2, ...` in degree order
//! and the base is `t`.

use std::sync::Arc;

use crate::algebra::{GradedPolynomial, RelativeModel, SullivanModel};
use crate::cohomology::formal_dimension;
use crate::enumeration::{cp_family, sp_chain, sp_fiber, ModelCatalog, Provenance};
use crate::error::{Error, Result};
use crate::lattice::ConstraintLattice;
use crate::parse::parse_polynomial;

/// A row: label and `(generator number, D v_k)` pairs; unlisted generators
/// have zero differential.
type Row = (&'static str, &'static [(usize, &'static str)]);

struct Table {
    name: &'static str,
    title: &'static str,
    degrees: &'static [u32],
    rows: &'static [Row],
}

const EX_5_1A: Table = Table {
    name: "ex5.1a",
    title: "S3 x S3 x S7",
    degrees: &[3, 3, 7],
    rows: &[("1", &[(3, "v1v2t + t^4")])],
};

const EX_5_1B: Table = Table {
    name: "ex5.1b",
    title: "S7 x S9 x S11 x S13 x S23",
    degrees: &[7, 9, 11, 13, 23],
    rows: &[
        ("1", &[(5, "v1v4t^2 + v2v3t^2 + t^12")]),
        ("2", &[(5, "v1v3t^3 + v2v4t + t^12")]),
    ],
};

const EX_5_1C: Table = Table {
    name: "ex5.1c",
    title: "S9 x S9 x S11 x S13 x S15 x S17 x S29",
    degrees: &[9, 9, 11, 13, 15, 17, 29],
    rows: &[
        ("1", &[(7, "v1v6t^2 + v2v5t^3 + v3v4t^3 + t^15")]),
        ("2", &[(7, "v1v5t^3 + v2v6t^2 + v3v4t^3 + t^15")]),
        ("3", &[(7, "v1v2t^6 + v3v6t + v4v5t + t^15")]),
    ],
};

const EX_5_1D: Table = Table {
    name: "ex5.1d",
    title: "S9 x S11 x S13 x S15 x S17 x S19 x S31",
    degrees: &[9, 11, 13, 15, 17, 19, 31],
    rows: &[
        ("1", &[(7, "v1v6t^2 + v2v5t^2 + v3v4t^2 + t^16")]),
        ("2", &[(7, "v1v6t^2 + v2v4t^3 + v3v5t + t^16")]),
        ("3", &[(7, "v1v5t^3 + v2v6t + v3v4t^2 + t^16")]),
        ("4", &[(7, "v1v4t^4 + v2v6t + v3v5t + t^16")]),
    ],
};

const EX_5_2A: Table = Table {
    name: "ex5.2a",
    title: "S3 x S5 x S7 x S9 x S13",
    degrees: &[3, 5, 7, 9, 13],
    rows: &[
        ("1", &[(5, "v1v4t + v2v3t + t^7")]),
        ("2", &[(4, "v1v2t"), (5, "v1v4t + v2v3t + t^7")]),
    ],
};

const EX_5_2B: Table = Table {
    name: "ex5.2b",
    title: "S3 x S5 x S7 x S9 x S15",
    degrees: &[3, 5, 7, 9, 15],
    rows: &[
        ("1", &[(5, "v1v4t^2 + v2v3t^2 + t^8")]),
        ("2", &[(4, "v1v2t"), (5, "v1v4t^2 + v2v3t^2 + t^8")]),
        ("3", &[(5, "v1v3t^3 + v2v4t + t^8")]),
        ("4", &[(4, "v1v2t"), (5, "v1v3t^3 + v2v4t + t^8")]),
    ],
};

const EX_5_2C: Table = Table {
    name: "ex5.2c",
    title: "S3 x S5 x S7 x S9 x S17",
    degrees: &[3, 5, 7, 9, 17],
    rows: &[
        ("1", &[(5, "v1v4t^3 + v2v3t^3 + t^9")]),
        ("2", &[(4, "v1v2t"), (5, "v1v4t^3 + v2v3t^3 + t^9")]),
        ("3", &[(5, "v1v3t^4 + v2v4t^2 + t^9")]),
        ("4", &[(4, "v1v2t"), (5, "v1v3t^4 + v2v4t^2 + t^9")]),
        ("5", &[(5, "v1v2t^5 + v3v4t + t^9")]),
    ],
};

const EX_5_2_2A: Table = Table {
    name: "ex5.2-2a",
    title: "S3 x S5 x S7 x S11 x S15",
    degrees: &[3, 5, 7, 11, 15],
    rows: &[
        ("1", &[(5, "v1v4t + v2v3t^2 + t^8")]),
        ("2", &[(4, "v1v2t^2"), (5, "v1v4t + v2v3t^2 + t^8")]),
        ("3", &[(4, "v1v3t"), (5, "v1v4t + v2v3t^2 + t^8")]),
    ],
};

const EX_5_2_2B: Table = Table {
    name: "ex5.2-2b",
    title: "S7 x S9 x S11 x S13 x S41",
    degrees: &[7, 9, 11, 13, 41],
    rows: &[
        ("1", &[(5, "v1v2v3v4t + t^21")]),
        ("2", &[(5, "v1v2t^13 + v3v4t^9 + t^21")]),
        ("3", &[(5, "v1v3t^12 + v2v4t^10 + t^21")]),
        ("4", &[(5, "v1v4t^11 + v2v3t^11 + t^21")]),
    ],
};

const EX_5_3_1A: Table = Table {
    name: "ex5.3-1a",
    title: "S3 x S5 x S9 x S13 x S17",
    degrees: &[3, 5, 9, 13, 17],
    rows: &[
        ("1", &[(5, "v1v4t + v2v3t^2 + t^9")]),
        ("2", &[(3, "v1v2t"), (5, "v1v4t + v2v3t^2 + t^9")]),
        ("3", &[(4, "v1v3t"), (5, "v1v4t + v2v3t^2 + t^9")]),
        ("4", &[(4, "v1v2t^3"), (5, "v1v4t + v2v3t^2 + t^9")]),
        ("5", &[(3, "v1v2t"), (4, "v1v3t"), (5, "v1v4t + v2v3t^2 + t^9")]),
    ],
};

const EX_5_3_1B: Table = Table {
    name: "ex5.3-1b",
    title: "S7 x S9 x S11 x S17 x S45",
    degrees: &[7, 9, 11, 17, 45],
    rows: &[
        ("1", &[(5, "v1v2v3v4t + t^23")]),
        ("2", &[(5, "v1v2t^15 + v3v4t^9 + t^23")]),
        ("3", &[(5, "v1v3t^14 + v2v4t^10 + t^23")]),
        ("4", &[(5, "v1v4t^11 + v2v3t^13 + t^23")]),
        ("5", &[(4, "v1v2t"), (5, "v1v2v3v4t + t^23")]),
        ("6", &[(4, "v1v2t"), (5, "v1v3t^14 + v2v4t^10 + t^23")]),
        ("7", &[(4, "v1v2t"), (5, "v1v4t^11 + v2v3t^13 + t^23")]),
    ],
};

const A: &str = "v1v4t^8 + v2v3t^10 + t^17";
const B: &str = "v1v2t^13 + v3v4t^5 + t^17";
const C: &str = "v1v3t^11 + v2v4t^7 + t^17";
const Q: &str = "v1v2v3v4t + t^17";

const EX_5_4: Table = Table {
    name: "ex5.4",
    title: "S3 x S5 x S9 x S15 x S33",
    degrees: &[3, 5, 9, 15, 33],
    rows: &[
        ("1", &[(5, A)]),
        ("2", &[(4, "v1v2t^4"), (5, A)]),
        ("3", &[(4, "v1v3t^2"), (5, A)]),
        ("4", &[(3, "v1v2t"), (5, A)]),
        ("5", &[(3, "v1v2t"), (4, "v1v3t^2"), (5, A)]),
        ("6", &[(5, B)]),
        ("7", &[(4, "v1v3t^2"), (5, B)]),
        ("8", &[(4, "v2v3t"), (5, B)]),
        ("9", &[(5, C)]),
        ("10", &[(4, "v1v2t^4"), (5, C)]),
        ("11", &[(4, "v2v3t"), (5, C)]),
        ("12", &[(3, "v1v2t"), (5, C)]),
        ("13", &[(3, "v1v2t"), (4, "v2v3t"), (5, C)]),
        ("14", &[(5, Q)]),
        ("15", &[(4, "v1v2t^4"), (5, Q)]),
        ("16", &[(4, "v1v3t^2"), (5, Q)]),
        ("17", &[(4, "v2v3t"), (5, Q)]),
        ("18", &[(3, "v1v2t"), (5, Q)]),
        ("19", &[(3, "v1v2t"), (4, "v1v3t^2"), (5, Q)]),
        ("20", &[(3, "v1v2t"), (4, "v2v3t"), (5, Q)]),
    ],
};

const EX_5_4_DIMS: [usize; 20] = [
    272, 220, 212, 209, 149, 272, 212, 204, 272, 220, 204, 209, 144, 272, 220, 212, 204, 209, 149, 144,
];

const E: &str = "v1v6t^3 + v2v5t + v3v4t + t^18";

const E7: Table = Table {
    name: "e7",
    title: "S3 x S11 x S15 x S19 x S23 x S27 x S35",
    degrees: &[3, 11, 15, 19, 23, 27, 35],
    rows: &[
        ("1", &[(7, E)]),
        ("2", &[(4, "v1v3t"), (7, E)]),
        ("3", &[(5, "v1v2t^5"), (7, E)]),
        ("4", &[(6, "v1v2t^7"), (7, E)]),
        ("5", &[(6, "v1v3t^5"), (7, E)]),
        ("6", &[(6, "v1v4t^3"), (7, E)]),
        ("7", &[(6, "v1v5t"), (7, E)]),
        ("8", &[(4, "v1v3t"), (5, "v1v2t^5"), (7, E)]),
        ("9", &[(4, "v1v3t"), (6, "v1v2t^7"), (7, E)]),
        ("10", &[(4, "v1v3t"), (6, "v1v4t^3"), (7, E)]),
        ("11", &[(4, "v1v3t"), (6, "v1v5t"), (7, E)]),
        ("12", &[(5, "v1v2t^5"), (6, "v1v3t^5"), (7, E)]),
        ("13", &[(5, "v1v2t^5"), (6, "v1v4t^3"), (7, E)]),
        ("14", &[(5, "v1v2t^5"), (6, "v1v5t"), (7, E)]),
        ("15", &[(4, "v1v3t"), (5, "v1v2t^5"), (6, "v1v4t^3"), (7, E)]),
        ("16", &[(4, "v1v3t"), (5, "v1v2t^5"), (6, "v1v5t"), (7, E)]),
        ("17", &[(5, "v1v3t^3"), (6, "v2v3t"), (7, E)]),
        ("18", &[(4, "v1v2t^3"), (5, "v1v3t^3"), (7, E)]),
        ("(18)", &[(4, "-v1v2t^3"), (6, "v2v3t"), (7, E)]),
        ("19", &[(4, "v1v2t^3"), (5, "2v1v3t^3"), (6, "v2v3t"), (7, E)]),
        ("(19)", &[(3, "v1v2t"), (5, "-v1v4t"), (7, E)]),
        ("20", &[(3, "v1v2t"), (4, "-v1v2t^3"), (5, "-v1v4t"), (6, "v2v3t"), (7, E)]),
    ],
};

const TABLES: [&Table; 13] = [
    &EX_5_1A, &EX_5_1B, &EX_5_1C, &EX_5_1D, &EX_5_2A, &EX_5_2B, &EX_5_2C, &EX_5_2_2A, &EX_5_2_2B, &EX_5_3_1A,
    &EX_5_3_1B, &EX_5_4, &E7,
];

/// Lower differentials `(i, j, k, e)`, meaning `D v_i = v_j v_k t^e`, of the
/// tabulated symplectic chains, in chain order.
pub fn sp_table(n: u32) -> Option<Vec<(u32, u32, u32, u32)>> {
    let rows: &[(u32, u32, u32, u32)] = match n {
        5 => &[(3, 1, 2, 1), (4, 1, 3, 1)],
        7 => &[(4, 3, 1, 1), (5, 2, 3, 1), (6, 1, 2, 7)],
        9 => &[(5, 4, 1, 1), (6, 3, 1, 5), (7, 2, 4, 3), (8, 1, 2, 11)],
        11 => &[(6, 5, 1, 1), (7, 4, 1, 5), (8, 3, 2, 7), (9, 2, 4, 7), (10, 1, 3, 13)],
        _ => return None,
    };
    Some(rows.to_vec())
}

/// Names accepted by [`fixture`], in a stable order.
pub fn fixture_names() -> Vec<String> {
    let mut out: Vec<String> = TABLES.iter().map(|t| t.name.to_string()).collect();
    out.extend(["ex5.3-2", "ex5.3-3", "cp-example"].map(String::from));
    out.extend((1..=11).map(|n| format!("sp{n}")));
    out.extend(["s3", "s5", "s7", "s2", "s4", "s6"].map(String::from));
    out
}

/// Human-readable description of the space behind a fixture.
pub fn fixture_title(name: &str) -> Option<String> {
    if let Some(t) = table(name) {
        return Some(t.title.to_string());
    }
    Some(match name {
        "ex5.3-2" | "cp-example" => "CP^14 x S31".into(),
        "ex5.3-3" => "CP^8 x S19".into(),
        _ => {
            if let Some(n) = name.strip_prefix("sp").and_then(|s| s.parse::<u32>().ok()) {
                if (1..=11).contains(&n) {
                    return Some(format!("Sp({n})"));
                }
            }
            let d = name.strip_prefix('s')?.parse::<u32>().ok()?;
            if !(2..=7).contains(&d) {
                return None;
            }
            format!("S{d}")
        }
    })
}

fn table(name: &str) -> Option<&'static Table> {
    TABLES.iter().copied().find(|t| t.name == name)
}

/// Loads a built-in catalog. Every entry is validated and certified; fibers
/// of even formal dimension give the empty catalog.
pub fn fixture(name: &str) -> Result<ModelCatalog> {
    let provenance = Provenance::Fixture(name.to_string());
    if let Some(t) = table(name) {
        let fiber = SullivanModel::odd_spheres(t.degrees)?;
        let models = t
            .rows
            .iter()
            .map(|(label, diffs)| Ok((label.to_string(), build_row(&fiber, diffs)?)))
            .collect::<Result<Vec<_>>>()?;
        return ModelCatalog::from_models(fiber, models, provenance);
    }
    let mut catalog = match name {
        "ex5.3-2" | "cp-example" => cp_family(14)?,
        "ex5.3-3" => cp_family(8)?,
        _ => {
            if let Some(n) = name.strip_prefix("sp").and_then(|s| s.parse::<u32>().ok()) {
                if !(1..=11).contains(&n) {
                    return Err(unknown(name));
                }
                if n % 2 == 1 {
                    sp_chain(n)?
                } else {
                    even_catalog(sp_fiber(n)?)?
                }
            } else if let Some(d) = name.strip_prefix('s').and_then(|s| s.parse::<u32>().ok()) {
                sphere_catalog(d).map_err(|_| unknown(name))?
            } else {
                return Err(unknown(name));
            }
        }
    };
    catalog.provenance = provenance;
    Ok(catalog)
}

fn unknown(name: &str) -> Error {
    Error::usage(format!(
        "unknown fixture `{name}` (known: {})",
        fixture_names().join(", ")
    ))
}

fn even_catalog(fiber: SullivanModel) -> Result<ModelCatalog> {
    let n = formal_dimension(&fiber)?;
    let mut c = ModelCatalog::empty(fiber, Provenance::Enumerated);
    c.notes.push(format!("fiber formal dimension {n} is even"));
    Ok(c)
}

/// `S^d` for `2 <= d <= 7`: `D v = t^{(d+1)/2}` when `d` is odd, nothing
/// when `d` is even.
fn sphere_catalog(d: u32) -> Result<ModelCatalog> {
    if !(2..=7).contains(&d) {
        return Err(Error::usage(format!("no sphere fixture in dimension {d}")));
    }
    if d.is_multiple_of(2) {
        let text = format!("x {d}\ny {}\nd y = x^2\n", 2 * d - 1);
        return even_catalog(crate::parse::parse_sullivan_model(&text)?);
    }
    let fiber = SullivanModel::odd_spheres(&[d])?;
    let model = build_row(&fiber, &[(1, &format!("t^{}", d.div_ceil(2)))])?;
    ModelCatalog::from_models(fiber, vec![("1".into(), model)], Provenance::Enumerated)
}

fn build_row(fiber: &SullivanModel, diffs: &[(usize, &str)]) -> Result<RelativeModel> {
    let mut rm = RelativeModel::over(fiber.clone(), "t")?;
    let u = Arc::clone(rm.total().universe());
    for &(k, src) in diffs {
        let p: GradedPolynomial = parse_polynomial(src, &u).map_err(|m| Error::Parse {
            line: 0,
            message: format!("`{src}`: {m}"),
        })?;
        rm.set_total_differential(k - 1, p)?;
    }
    Ok(rm)
}

/// The `dim H*` column recorded with a fixture, if any.
pub fn expected_dims(name: &str) -> Option<Vec<usize>> {
    (name == "ex5.4").then(|| EX_5_4_DIMS.to_vec())
}

const TORUS_7: &str = "af=be=cd=1, g=1";

/// The recorded point-group conditions of a fixture, one string per row, in
/// the syntax of [`conditions_lattice`].
pub fn expected_conditions(name: &str) -> Option<Vec<(String, String)>> {
    let rows: Vec<(&str, String)> = match name {
        "ex5.1d" => vec![
            ("1", "af=be=cd=1, g=1".into()),
            ("2", "af=bd=ce=1, g=1".into()),
            ("3", "ae=bf=cd=1, g=1".into()),
            ("4", "ad=bf=ce=1, g=1".into()),
        ],
        "ex5.2b" | "ex5.2c" => {
            let mut v = vec![
                ("1", "ad=bc=1, e=1".into()),
                ("2", "ad=bc=1, a^2b=1, e=1".into()),
                ("3", "ac=bd=1, e=1".into()),
                ("4", "ac=bd=1, ab^2=1, e=1".into()),
            ];
            if name == "ex5.2c" {
                v.push(("5", "ab=cd=1, e=1".into()));
            }
            v
        }
        "ex5.2-2a" => vec![
            ("1", "ad=bc=1, e=1".into()),
            ("2", "ad=bc=1, a^2b=1, e=1".into()),
            ("3", "ad=bc=1, b=a^2, e=1".into()),
        ],
        "ex5.2-2b" => vec![
            ("1", "abcd=1, e=1".into()),
            ("2", "ab=cd=1, e=1".into()),
            ("3", "ac=bd=1, e=1".into()),
            ("4", "ad=bc=1, e=1".into()),
        ],
        "ex5.3-1a" => vec![
            ("1", "ad=bc=1, e=1".into()),
            ("2", "ad=bc=1, ab^2=1, e=1".into()),
            ("3", "ad=bc=1, b=a^2, e=1".into()),
            ("4", "ad=bc=1, a^2b=1, e=1".into()),
            ("5", "b=a^2, c=a^3, d=a^4, a^5=1, e=1".into()),
        ],
        "ex5.3-1b" => vec![
            ("1", "abcd=1, e=1".into()),
            ("2", "ab=cd=1, e=1".into()),
            ("3", "ac=bd=1, e=1".into()),
            ("4", "ad=bc=1, e=1".into()),
            ("5", "d=ab, a^2b^2c=1, e=1".into()),
            ("6", "ac=bd=1, ab^2=1, e=1".into()),
            ("7", "ad=bc=1, a^2b=1, e=1".into()),
        ],
        "ex5.4" => [
            "ad=bc=1",
            "a^2b=bc=1, ab=d",
            "a^2c=bc=1, ac=d",
            "ad=ab^2=1, ab=c",
            "ab=c, a^2b=d, a^3b=ab^2=1",
            "ab=cd=1",
            "ac=d, ab=ac^2=1",
            "bc=d, ab=bc^2=1",
            "ac=bd=1",
            "ab=d, ac=ab^2=1",
            "bc=d, ac=b^2c=1",
            "ab=c, a^2b=bd=1",
            "ab=c, ab^2=d, a^2b=ab^3=1",
            "abcd=1",
            "ab=d, a^2b^2c=1",
            "ac=d, a^2bc^2=1",
            "bc=d, ab^2c^2=1",
            "ab=c, a^2b^2d=1",
            "ab=c, a^2b=d, a^4b^3=1",
            "ab=c, ab^2=d, a^3b^4=1",
        ]
        .iter()
        .zip(NUMBERS)
        .map(|(c, l)| (l, format!("{c}, e=1")))
        .collect(),
        "e7" => [
            ("1", ""),
            ("2", "ac^2=1"),
            ("3", "ab^2=1"),
            ("4", "a^2b=1"),
            ("5", "a^2c=1"),
            ("6", "c=a^2"),
            ("7", "b=a^2"),
            ("8", "ab^2=1, c^2=b^2"),
            ("9", "ac^2=1, b=c^4"),
            ("10", "ac^2=1, c^5=1"),
            ("11", "ac^2=1, bc^4=1"),
            ("12", "ab^2=1, c=b^4"),
            ("13", "ab^2=1, cb^4=1"),
            ("14", "ab^2=1, b^5=1"),
            ("15", "ab^2=1, c^2=b^2, b^5=cb^-1"),
            ("16", "ab^2=1, c^2=b^2, b^5=1"),
            ("17", "abc=1"),
            ("18", "abc=1"),
            ("(18)", "abc=1"),
            ("19", "c=ab"),
            ("(19)", "c=ab"),
            ("20", "c^2=1, ab=c"),
        ]
        .iter()
        .map(|&(l, c)| {
            let all = if c.is_empty() { TORUS_7.to_string() } else { format!("{TORUS_7}, {c}") };
            (l, all)
        })
        .collect(),
        "sp5" => vec![
            ("mu1", "ad=bc=1, e=1".into()),
            ("mu2", "ad=bc=1, ab^2=1, e=1".into()),
            ("mu3", "ad=bc=1, ab^2=1, b^5=1, e=1".into()),
        ],
        "sp7" => sp_conditions(TORUS_7, &["ac^2=1", "cb^2=1", "ba^2=1"]),
        "sp9" => sp_conditions("ah=bg=cf=de=1, i=1", &["ad^2=1", "ac^2=1", "db^2=1", "ba^2=1"]),
        "sp11" => sp_conditions(
            "aj=bi=ch=dg=ef=1, k=1",
            &["ae^2=1", "ad^2=1", "bc^2=1", "db^2=1", "ca^2=1"],
        ),
        _ => return None,
    };
    Some(rows.into_iter().map(|(l, c)| (l.to_string(), c)).collect())
}

const NUMBERS: [&str; 20] = [
    "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16", "17", "18", "19", "20",
];
const MU: [&str; 6] = ["mu1", "mu2", "mu3", "mu4", "mu5", "mu6"];

/// Nested conditions: each step adds one more equation.
fn sp_conditions(base: &str, steps: &[&str]) -> Vec<(&'static str, String)> {
    let mut out = vec![(MU[0], base.to_string())];
    let mut acc = base.to_string();
    for (i, s) in steps.iter().enumerate() {
        acc = format!("{acc}, {s}");
        out.push((MU[i + 1], acc.clone()));
    }
    out
}

/// Relation lattice of a comma-separated list of equations between Laurent
/// monomials in the letters `a, b, c, ...` (one letter per coordinate), e.g.
/// `"ad=bc=1, a^2b=d, b^5=cb^-1"`.
pub fn conditions_lattice(n: usize, conditions: &str) -> Result<ConstraintLattice> {
    let mut rows = Vec::new();
    for eq in conditions.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let sides = eq
            .split('=')
            .map(|s| parse_laurent(n, s.trim()))
            .collect::<Result<Vec<_>>>()?;
        if sides.len() < 2 {
            return Err(Error::usage(format!("`{eq}` is not an equation")));
        }
        for w in sides.windows(2) {
            rows.push(w[0].iter().zip(&w[1]).map(|(x, y)| x - y).collect());
        }
    }
    ConstraintLattice::new(n, &rows)
}

fn parse_laurent(n: usize, s: &str) -> Result<Vec<i64>> {
    let mut out = vec![0i64; n];
    if s == "1" {
        return Ok(out);
    }
    let bad = || Error::usage(format!("cannot read monomial `{s}`"));
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if !c.is_ascii_lowercase() {
            return Err(bad());
        }
        let idx = (c as u8 - b'a') as usize;
        if idx >= n {
            return Err(bad());
        }
        i += 1;
        let mut e = 1i64;
        if chars.get(i) == Some(&'^') {
            i += 1;
            let start = i;
            if chars.get(i) == Some(&'-') {
                i += 1;
            }
            while chars.get(i).is_some_and(char::is_ascii_digit) {
                i += 1;
            }
            e = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
        }
        out[idx] += e;
    }
    Ok(out)
}
