use num_bigint::BigUint;
use serde::Serialize;

use rdk_core::gf::{ExtField, FieldSpec};
use rdk_core::rdpoly::{
    as_polynomial, char2_eval, classify_shape, closed_form, eval_a0, eval_definition, eval_functional,
    eval_recurrence, eval_via_fnk, genfun_coeffs, RdpParams, MAX_DEFINITION_INDEX,
};
use rdk_core::{Field, FiniteField, Fq};

use crate::config::{CommandConfig, Format, Method, RunConfig};
use crate::output::{self, coords, Outcome};
use crate::{build_field, elem_text, usage, CliError};

/// Largest `n` for which the generating-function series is expanded.
const GENFUN_LIMIT: u64 = 100_000;

#[derive(Debug, Serialize)]
struct Check {
    method: Method,
    value: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    agree: bool,
}

#[derive(Debug, Serialize)]
struct EvalReport {
    field: FieldSpec,
    n: String,
    k: u64,
    k_input: String,
    a: Vec<u64>,
    x: Vec<u64>,
    method: Method,
    value: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<Check>>,
    agree: bool,
}

fn small_n(params: &RdpParams, limit: u64) -> bool {
    params.n <= BigUint::from(limit)
}

/// Evaluators whose preconditions hold for these parameters.
fn applicable(field: &Field, params: &RdpParams) -> Vec<Method> {
    let odd = field.is_odd_characteristic();
    let unit = params.a == field.one();
    let small = small_n(params, MAX_DEFINITION_INDEX);
    let mut out = vec![Method::Recurrence];
    let mut push = |m, ok| {
        if ok {
            out.push(m)
        }
    };
    push(Method::Definition, small);
    push(Method::Functional, odd && unit);
    push(Method::Fnk, odd && unit && small);
    push(Method::ClosedForm, odd && unit && classify_shape(field.p(), &params.n).is_some());
    push(Method::Char2, field.p() == 2 && small);
    push(Method::A0, params.a == field.zero());
    push(Method::Genfun, unit && small_n(params, GENFUN_LIMIT));
    push(Method::Polynomial, unit);
    out
}

fn evaluate(field: &Field, params: &RdpParams, x: Fq, method: Method) -> Result<Fq, CliError> {
    Ok(match method {
        Method::Recurrence => eval_recurrence(field, params, x)?,
        Method::Definition => eval_definition(field, params, x)?,
        Method::Functional => eval_functional(&ExtField::new(field)?, params, x)?,
        Method::Fnk => eval_via_fnk(field, params, x)?,
        Method::ClosedForm => closed_form(field, params, x)?,
        Method::Char2 => char2_eval(field, params, x)?,
        Method::A0 => eval_a0(field, params, x)?,
        Method::Genfun => {
            if params.a != field.one() {
                return Err(usage("the generating-function method needs a = 1"));
            }
            let n = u64::try_from(&params.n)
                .ok()
                .filter(|&n| n <= GENFUN_LIMIT)
                .ok_or_else(|| usage(format!("the generating-function method needs n <= {GENFUN_LIMIT}")))?;
            *genfun_coeffs(field, params.k, x, n as usize + 1)?.last().unwrap()
        }
        Method::Polynomial => as_polynomial(field, params)?.eval(field, x),
    })
}

pub(crate) fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let CommandConfig::Eval { n, k, a, x, method } = &config.command else { unreachable!() };
    let field = build_field(config)?;
    let a_el = field.from_coords(a)?;
    let x_el = field.from_coords(x)?;
    let params = RdpParams::new(&field, n.clone(), k.clone(), a_el);
    let mut notes = Vec::new();
    if params.kind_was_reduced() {
        notes.push(format!("k = {k} reduced to {} (mod {})", params.k, field.p()));
    }
    let value = evaluate(&field, &params, x_el, *method)?;
    let checks = config.check.then(|| {
        applicable(&field, &params)
            .into_iter()
            .filter(|m| m != method)
            .map(|m| match evaluate(&field, &params, x_el, m) {
                Ok(v) => Check { method: m, value: Some(field.coords(v)), error: None, agree: v == value },
                Err(e) => Check { method: m, value: None, error: Some(e.to_string()), agree: false },
            })
            .collect::<Vec<_>>()
    });
    let agree = checks.as_ref().is_none_or(|c| c.iter().all(|c| c.agree));
    let report = EvalReport {
        field: field.spec().clone(),
        n: n.to_string(),
        k: params.k,
        k_input: k.to_string(),
        a: field.coords(a_el),
        x: field.coords(x_el),
        method: *method,
        value: field.coords(value),
        checks,
        agree,
    };
    let method_name = |m: Method| serde_json::to_value(m).unwrap().as_str().unwrap().to_string();
    let body = match config.format {
        Format::Json => output::json(&report)?,
        Format::Csv => {
            let mut rows = vec![vec![
                report.n.clone(),
                report.k.to_string(),
                coords(&report.a),
                coords(&report.x),
                method_name(*method),
                coords(&report.value),
                "true".into(),
            ]];
            for c in report.checks.iter().flatten() {
                rows.push(vec![
                    report.n.clone(),
                    report.k.to_string(),
                    coords(&report.a),
                    coords(&report.x),
                    method_name(c.method),
                    c.value.as_deref().map(coords).unwrap_or_default(),
                    c.agree.to_string(),
                ]);
            }
            output::csv(&["n", "k", "a", "x", "method", "value", "agree"], &rows)?
        }
        Format::Pretty => {
            let mut s = format!(
                "D_{{{},{}}}({}, {}) = {}\n",
                report.n,
                report.k,
                elem_text(&field, a_el),
                elem_text(&field, x_el),
                elem_text(&field, value)
            );
            if let Some(checks) = &report.checks {
                let mut rows = vec![vec![method_name(*method), elem_text(&field, value), "reference".into()]];
                for c in checks {
                    let shown = match &c.value {
                        Some(v) => elem_text(&field, field.from_coords(v)?),
                        None => format!("error: {}", c.error.as_deref().unwrap_or_default()),
                    };
                    rows.push(vec![method_name(c.method), shown, output::yes_no(c.agree)]);
                }
                s.push('\n');
                s.push_str(&output::table(&["method", "value", "agree"], &rows));
                s.push_str(if agree { "all methods agree\n" } else { "METHODS DISAGREE\n" });
            }
            s
        }
    };
    Ok(Outcome::new(body, agree).with_notes(notes))
}
