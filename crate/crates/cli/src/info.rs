use num_bigint::BigInt;
use serde::Serialize;

use rdk_core::gf::{ExtField, FieldSpec};
use rdk_core::IntPolynomial;

use crate::config::{Format, RunConfig};
use crate::output::{self, Outcome};
use crate::{build_field, CliError};

#[derive(Debug, Serialize)]
struct FieldInfo {
    field: FieldSpec,
    descriptor: String,
    modulus_text: String,
    odd_characteristic: bool,
    /// Period of `n ↦ D_{n,k}(1, x)` away from `x = 1/4`.
    period: u64,
    half: Option<Vec<u64>>,
    quarter: Option<Vec<u64>>,
    /// Non-square used to build GF(q^2).
    nonresidue: Option<Vec<u64>>,
    v_size: Option<usize>,
}

pub(crate) fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let field = build_field(config)?;
    let spec = field.spec().clone();
    let modulus = IntPolynomial::new(spec.modulus.iter().map(|&c| BigInt::from(c)).collect());
    let ext = ExtField::new(&field).ok();
    let info = FieldInfo {
        descriptor: spec.descriptor(),
        modulus_text: modulus.to_string(),
        odd_characteristic: field.is_odd_characteristic(),
        period: field.q() * field.q() - 1,
        half: field.half().ok().map(|h| field.coords(h)),
        quarter: field.quarter().ok().map(|h| field.coords(h)),
        nonresidue: ext.as_ref().map(|e| field.coords(e.nonresidue())),
        v_size: ext.as_ref().map(|e| e.enumerate_v().len()),
        field: spec,
    };
    let opt = |v: &Option<Vec<u64>>| v.as_deref().map(output::coords).unwrap_or_else(|| "-".into());
    let pairs = vec![
        vec!["field".to_string(), info.field.to_string()],
        vec!["descriptor".into(), info.descriptor.clone()],
        vec!["p".into(), info.field.p.to_string()],
        vec!["e".into(), info.field.e.to_string()],
        vec!["q".into(), info.field.q.to_string()],
        vec!["modulus".into(), info.modulus_text.clone()],
        vec!["period".into(), info.period.to_string()],
        vec!["half".into(), opt(&info.half)],
        vec!["quarter".into(), opt(&info.quarter)],
        vec!["nonresidue".into(), opt(&info.nonresidue)],
        vec!["v_size".into(), info.v_size.map_or("-".into(), |v| v.to_string())],
    ];
    let body = match config.format {
        Format::Json => output::json(&info)?,
        Format::Csv => output::csv(&["key", "value"], &pairs)?,
        Format::Pretty => output::table(&["key", "value"], &pairs),
    };
    Ok(Outcome::new(body, true))
}
