//! Command implementations behind the `splitpack` binary.
//!
//! Every command is a plain function over the JSON documents in [`docs`],
//! so the binary only deals with argument parsing and I/O.

pub mod commands;
pub mod docs;
pub mod error;
pub mod svg;

use serde_json::Value;

pub use commands::{cmd_approx, cmd_decide, cmd_gen, cmd_pack, cmd_verify};
use docs::{CircleSpec, ContainerSpec, InstanceDocument};
pub use error::{CliError, CliResult};

/// Reads an instance from text. Accepted forms are a full instance
/// document, a JSON array of areas or of `{area}`/`{radius}` objects, or
/// whitespace separated areas. `container` and `min_size` override what
/// the text says; a container must come from one of the two.
pub fn parse_instance(
    text: &str,
    container: Option<ContainerSpec>,
    min_size: Option<f64>,
) -> CliResult<InstanceDocument> {
    let trimmed = text.trim_start();
    let (doc_container, circles, doc_min) = if trimmed.starts_with('{') {
        let doc: Value = serde_json::from_str(text)?;
        let spec = match doc.get("container") {
            Some(c) => Some(serde_json::from_value(c.clone())?),
            None => None,
        };
        let circles = match doc.get("circles") {
            Some(c) => circle_list(c.clone())?,
            None => return Err(CliError::Invalid("instance has no `circles`".into())),
        };
        let min = match doc.get("min_size") {
            Some(Value::Null) | None => None,
            Some(m) => Some(serde_json::from_value(m.clone())?),
        };
        (spec, circles, min)
    } else if trimmed.starts_with('[') {
        (None, circle_list(serde_json::from_str(text)?)?, None)
    } else {
        let circles = text
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map(|a| CircleSpec {
                        area: Some(a),
                        radius: None,
                    })
                    .map_err(|e| CliError::Invalid(format!("`{t}` is not a number: {e}")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        (None, circles, None)
    };
    let container = container
        .or(doc_container)
        .ok_or_else(|| CliError::Invalid("no container given; use --container".into()))?;
    Ok(InstanceDocument {
        container,
        circles,
        min_size: min_size.or(doc_min),
    })
}

fn circle_list(v: Value) -> CliResult<Vec<CircleSpec>> {
    let Value::Array(items) = v else {
        return Err(CliError::Invalid("`circles` must be an array".into()));
    };
    items
        .into_iter()
        .map(|item| match item {
            Value::Number(n) => Ok(CircleSpec {
                area: n.as_f64(),
                radius: None,
            }),
            other => Ok(serde_json::from_value(other)?),
        })
        .collect()
}
