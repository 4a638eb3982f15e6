use detineq_core::arith::format_rational;
use detineq_core::generators::{generate, Generated, GeneratorSpec};
use serde_json::{json, Value};

use crate::CliError;

/// JSON for a generated instance, in a shape `check` accepts back.
pub fn generated_to_json(spec: &GeneratorSpec, g: &Generated) -> Value {
    let mut v = match g {
        Generated::Matrix(m) => json!({ "matrix": m.to_json_value() }),
        Generated::Frame { lambda, v } => json!({
            "lambda": lambda.values().iter().map(format_rational).collect::<Vec<_>>(),
            "v": v.to_json_value(),
        }),
        Generated::Orbit { matrix, tau } => json!({ "matrix": matrix.to_json_value(), "tau": tau.to_string() }),
        Generated::Block { matrix, partition } => {
            json!({ "matrix": matrix.to_json_value(), "partition": partition.sizes() })
        }
    };
    v["spec"] = serde_json::to_value(spec).expect("spec serializes");
    v
}

pub fn run_generate(spec: &GeneratorSpec) -> Result<String, CliError> {
    let g = generate(spec)?;
    Ok(serde_json::to_string_pretty(&generated_to_json(spec, &g)).expect("instance serializes"))
}
