//! JSON exchange formats for presentations, twists, certificates, and
//! structure-constant algebras.
//!
//! Scalars travel as strings, "p/q" or plain "p" for integers, so no
//! precision is lost. Words are lists of generator names. All writers
//! iterate ordered containers, which keeps output byte-deterministic for
//! equal inputs.

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, FreeElement, GeneratorSet, QuadraticPresentation, Word};
use crate::findim::{FinDimAlgebra, FinDimError};
use crate::linalg::{Matrix, ParseScalarError, Scalar};
use crate::normality::NormalCertificate;
use crate::twist::{Twist2x2, TwistData, TwistError, TwistingSeed};

/// How a payload can fail to parse into library values.
#[derive(Debug, Error)]
pub enum JsonError {
    #[error("missing field \"{field}\"")]
    MissingField { field: &'static str },
    #[error("field \"{field}\" has the wrong shape: {detail}")]
    WrongShape {
        field: &'static str,
        detail: &'static str,
    },
    #[error("unknown generator name \"{name}\"")]
    UnknownGenerator { name: String },
    #[error("relation words have mixed degrees {first} and {second}")]
    MixedDegrees { first: usize, second: usize },
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    FinDim(#[from] FinDimError),
}

fn field<'v>(v: &'v Value, name: &'static str) -> Result<&'v Value, JsonError> {
    v.get(name).ok_or(JsonError::MissingField { field: name })
}

fn scalar_from(v: &Value, ctx: &'static str) -> Result<Scalar, JsonError> {
    let text = v.as_str().ok_or(JsonError::WrongShape {
        field: ctx,
        detail: "scalars must be strings",
    })?;
    Ok(text.parse::<Scalar>()?)
}

/// `[["1","0"],["1","1"]]` style rectangular matrix of scalar strings.
pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, ctx: &'static str) -> Result<Matrix, JsonError> {
    let rows = v.as_array().ok_or(JsonError::WrongShape {
        field: ctx,
        detail: "expected an array of rows",
    })?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row.as_array().ok_or(JsonError::WrongShape {
            field: ctx,
            detail: "expected each row to be an array",
        })?;
        out.push(
            entries
                .iter()
                .map(|e| scalar_from(e, ctx))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Matrix::from_rows(out).map_err(|_| JsonError::WrongShape {
        field: ctx,
        detail: "rows have unequal lengths",
    })
}

/// A homogeneous element as a list of `[word, scalar]` pairs, words
/// spelled with generator names.
pub fn element_to_json(elem: &FreeElement, gens: &GeneratorSet) -> Value {
    Value::Array(
        elem.terms()
            .map(|(word, coeff)| {
                let names: Vec<Value> = word
                    .letters()
                    .iter()
                    .map(|&l| Value::String(gens.label(l).to_owned()))
                    .collect();
                json!([Value::Array(names), coeff.to_string()])
            })
            .collect(),
    )
}

pub fn element_from_json(
    v: &Value,
    gens: &GeneratorSet,
    ctx: &'static str,
) -> Result<FreeElement, JsonError> {
    let entries = v.as_array().ok_or(JsonError::WrongShape {
        field: ctx,
        detail: "expected a list of [word, scalar] pairs",
    })?;
    let mut degree: Option<usize> = None;
    let mut terms = Vec::with_capacity(entries.len());
    for entry in entries {
        let pair = entry.as_array().filter(|p| p.len() == 2).ok_or(
            JsonError::WrongShape {
                field: ctx,
                detail: "each term must be a [word, scalar] pair",
            },
        )?;
        let names = pair[0].as_array().ok_or(JsonError::WrongShape {
            field: ctx,
            detail: "words must be lists of generator names",
        })?;
        let mut letters = Vec::with_capacity(names.len());
        for name in names {
            let label = name.as_str().ok_or(JsonError::WrongShape {
                field: ctx,
                detail: "generator names must be strings",
            })?;
            let index = gens.index_of(label).ok_or_else(|| {
                JsonError::UnknownGenerator {
                    name: label.to_owned(),
                }
            })?;
            letters.push(index);
        }
        match degree {
            None => degree = Some(letters.len()),
            Some(d) if d != letters.len() => {
                return Err(JsonError::MixedDegrees {
                    first: d,
                    second: letters.len(),
                })
            }
            Some(_) => {}
        }
        terms.push((Word::new(letters), scalar_from(&pair[1], ctx)?));
    }
    let degree = degree.ok_or(JsonError::WrongShape {
        field: ctx,
        detail: "an element needs at least one term",
    })?;
    Ok(FreeElement::from_terms(degree, terms)?)
}

/// `{ "generators": [...], "relations": [[...], ...] }`.
pub fn presentation_to_json(pres: &QuadraticPresentation) -> Value {
    let gens = pres.gens();
    json!({
        "generators": gens.labels(),
        "relations": pres
            .relations()
            .iter()
            .map(|r| element_to_json(r, gens))
            .collect::<Vec<_>>(),
    })
}

pub fn presentation_from_json(v: &Value) -> Result<QuadraticPresentation, JsonError> {
    let names = field(v, "generators")?
        .as_array()
        .ok_or(JsonError::WrongShape {
            field: "generators",
            detail: "expected an array of names",
        })?
        .iter()
        .map(|n| {
            n.as_str().map(str::to_owned).ok_or(JsonError::WrongShape {
                field: "generators",
                detail: "names must be strings",
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gens = GeneratorSet::new(names)?;
    let rels = field(v, "relations")?
        .as_array()
        .ok_or(JsonError::WrongShape {
            field: "relations",
            detail: "expected an array of relations",
        })?
        .iter()
        .map(|r| element_from_json(r, &gens, "relations"))
        .collect::<Result<Vec<_>, _>>()?;
    for r in &rels {
        if r.degree() != 2 {
            return Err(JsonError::WrongShape {
                field: "relations",
                detail: "relations must be quadratic",
            });
        }
    }
    Ok(QuadraticPresentation::new(gens, &rels)?)
}

/// `{ "dimV": .., "dimU": .., "blocks": {..} }` when the seed has the
/// 2×2 block shape, `{ "dimV": .., "dimU": .., "matrix": [[..]] }`
/// otherwise.
pub fn seed_to_json(seed: &TwistingSeed) -> Value {
    if seed.dim_v() == 2 && seed.dim_u() == 2 {
        if let Ok(blocks) = Twist2x2::from_seed(seed) {
            return json!({
                "dimV": 2,
                "dimU": 2,
                "blocks": {
                    "C": matrix_to_json(blocks.c()),
                    "D": matrix_to_json(blocks.d()),
                    "P": matrix_to_json(blocks.p()),
                    "Q": matrix_to_json(blocks.q()),
                },
            });
        }
    }
    json!({
        "dimV": seed.dim_v(),
        "dimU": seed.dim_u(),
        "matrix": matrix_to_json(seed.matrix()),
    })
}

pub fn seed_from_json(v: &Value) -> Result<TwistingSeed, JsonError> {
    let dim = |name: &'static str| -> Result<usize, JsonError> {
        field(v, name)?
            .as_u64()
            .map(|n| n as usize)
            .ok_or(JsonError::WrongShape {
                field: name,
                detail: "expected a nonnegative integer",
            })
    };
    let dim_v = dim("dimV")?;
    let dim_u = dim("dimU")?;
    if let Some(blocks) = v.get("blocks") {
        if dim_v != 2 || dim_u != 2 {
            return Err(JsonError::WrongShape {
                field: "blocks",
                detail: "block form requires dimV = dimU = 2",
            });
        }
        let twist = Twist2x2::new(
            matrix_from_json(field(blocks, "C")?, "blocks")?,
            matrix_from_json(field(blocks, "D")?, "blocks")?,
            matrix_from_json(field(blocks, "P")?, "blocks")?,
            matrix_from_json(field(blocks, "Q")?, "blocks")?,
        );
        return Ok(twist.to_seed()?);
    }
    let matrix = matrix_from_json(field(v, "matrix")?, "matrix")?;
    Ok(TwistingSeed::new(dim_v, dim_u, matrix)?)
}

/// Composite job input: both side presentations plus the twist seed.
pub fn twist_input_to_json(data: &TwistData) -> Value {
    json!({
        "algebraA": presentation_to_json(data.pres_a()),
        "algebraB": presentation_to_json(data.pres_b()),
        "twist": seed_to_json(data.seed()),
    })
}

pub fn twist_input_from_json(v: &Value) -> Result<TwistData, JsonError> {
    let pres_a = presentation_from_json(field(v, "algebraA")?)?;
    let pres_b = presentation_from_json(field(v, "algebraB")?)?;
    let seed = seed_from_json(field(v, "twist")?)?;
    Ok(TwistData::new(seed, pres_a, pres_b)?)
}

/// `{ "w": [...], "nu1": [[...]], "checked_degree": .., "regular_window": .. }`.
pub fn certificate_to_json(
    cert: &NormalCertificate,
    gens: &GeneratorSet,
    regular_window: bool,
) -> Value {
    json!({
        "w": element_to_json(&cert.element, gens),
        "nu1": matrix_to_json(&cert.nu1),
        "checked_degree": cert.checked_degree,
        "regular_window": regular_window,
    })
}

/// `{ "dim": .., "unit": [..], "table": [[[..], ..], ..] }`.
pub fn structure_constants_to_json(alg: &FinDimAlgebra) -> Value {
    let dim = alg.dim();
    let table: Vec<Value> = (0..dim)
        .map(|i| {
            Value::Array(
                (0..dim)
                    .map(|j| {
                        Value::Array(
                            alg.basis_product(i, j)
                                .iter()
                                .map(|s| Value::String(s.to_string()))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "dim": dim,
        "unit": alg
            .unit()
            .iter()
            .map(|s| Value::String(s.to_string()))
            .collect::<Vec<_>>(),
        "table": table,
    })
}

/// Parses a structure-constant export, re-running the unit and
/// associativity validation.
pub fn structure_constants_from_json(v: &Value) -> Result<FinDimAlgebra, JsonError> {
    let dim = field(v, "dim")?.as_u64().ok_or(JsonError::WrongShape {
        field: "dim",
        detail: "expected a nonnegative integer",
    })? as usize;
    let unit = field(v, "unit")?
        .as_array()
        .ok_or(JsonError::WrongShape {
            field: "unit",
            detail: "expected an array of scalars",
        })?
        .iter()
        .map(|s| scalar_from(s, "unit"))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = field(v, "table")?.as_array().ok_or(JsonError::WrongShape {
        field: "table",
        detail: "expected a three-deep array",
    })?;
    let mut constants = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row.as_array().ok_or(JsonError::WrongShape {
            field: "table",
            detail: "expected a three-deep array",
        })?;
        let mut out_row = Vec::with_capacity(cells.len());
        for cell in cells {
            let coords = cell.as_array().ok_or(JsonError::WrongShape {
                field: "table",
                detail: "expected a three-deep array",
            })?;
            out_row.push(
                coords
                    .iter()
                    .map(|s| scalar_from(s, "table"))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        constants.push(out_row);
    }
    if constants.len() != dim {
        return Err(JsonError::WrongShape {
            field: "table",
            detail: "table size disagrees with \"dim\"",
        });
    }
    Ok(FinDimAlgebra::new(unit, constants)?)
}

/// `{ "semisimple": .., "center_dim": .., "blocks": .., "iso_verified": .. }`.
/// `blocks` is null when the algebra does not split over the rationals,
/// and `iso_verified` is null when no assignment was checked.
pub fn analysis_to_json(
    semisimple: bool,
    center_dim: usize,
    blocks: Option<&[usize]>,
    iso_verified: Option<bool>,
) -> Value {
    json!({
        "semisimple": semisimple,
        "center_dim": center_dim,
        "blocks": blocks.map(|b| b.to_vec()),
        "iso_verified": iso_verified,
    })
}
