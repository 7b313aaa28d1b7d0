use serde::Serialize;

use rdk_core::fpoly::FieldPolynomialRepr;
use rdk_core::gf::FieldSpec;
use rdk_core::rdpoly::{as_polynomial, eval_recurrence, fnk_coeffs, RdpParams};
use rdk_core::{Field, FiniteField, Fq, IntPolynomial};

use crate::config::{CommandConfig, Format, RunConfig};
use crate::output::{self, Outcome};
use crate::{build_field, CliError};

/// Largest `n` for which `f_{n,k}` is expanded.
const FNK_LIMIT: u64 = 2000;

#[derive(Debug, Serialize)]
struct PolyCheck {
    points: u64,
    representative_agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    fnk_agrees: Option<bool>,
}

#[derive(Debug, Serialize)]
struct PolyReport {
    field: FieldSpec,
    n: String,
    k: u64,
    k_input: String,
    representative: FieldPolynomialRepr,
    representative_text: String,
    fnk: Option<IntPolynomial>,
    fnk_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<PolyCheck>,
}

/// `f(1-4x) / 2^n` in GF(q), straight from the integer coefficients.
fn eval_fnk_mod_p(field: &Field, f: &IntPolynomial, n: u64, x: Fq) -> Fq {
    let u = field.sub(field.one(), field.mul(field.from_u64(4), x));
    let acc = f.coeffs().iter().rev().fold(field.zero(), |acc, c| field.add(field.mul(acc, u), field.from_bigint(c)));
    let two_n = field.pow(field.from_u64(2), n);
    field.div(acc, two_n).unwrap()
}

pub(crate) fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let CommandConfig::Poly { n, k } = &config.command else { unreachable!() };
    let field = build_field(config)?;
    let params = RdpParams::unit(&field, n.clone(), k.clone());
    let mut notes = Vec::new();
    if params.kind_was_reduced() {
        notes.push(format!("k = {k} reduced to {} (mod {}) for the representative", params.k, field.p()));
    }
    let rep = as_polynomial(&field, &params)?;
    let small_n = u64::try_from(n).ok().filter(|&n| n <= FNK_LIMIT);
    let fnk = match (small_n, i64::try_from(k)) {
        (Some(n), Ok(k)) => Some(fnk_coeffs(n, k)),
        _ => {
            notes.push(format!("f_{{n,k}} is only expanded for n <= {FNK_LIMIT} and 64-bit k"));
            None
        }
    };
    let check = config.check.then(|| -> Result<PolyCheck, CliError> {
        let mut rep_ok = true;
        let mut fnk_ok = true;
        let fnk_applies = fnk.is_some() && field.is_odd_characteristic();
        for x in field.elements() {
            let expect = eval_recurrence(&field, &params, x)?;
            rep_ok &= rep.eval(&field, x) == expect;
            if let (true, Some(f)) = (fnk_applies, &fnk) {
                fnk_ok &= eval_fnk_mod_p(&field, f, small_n.unwrap(), x) == expect;
            }
        }
        Ok(PolyCheck { points: field.q(), representative_agrees: rep_ok, fnk_agrees: fnk_applies.then_some(fnk_ok) })
    });
    let check = check.transpose()?;
    let pass = check.as_ref().is_none_or(|c| c.representative_agrees && c.fnk_agrees != Some(false));
    let report = PolyReport {
        field: field.spec().clone(),
        n: n.to_string(),
        k: params.k,
        k_input: k.to_string(),
        representative: rep.to_repr(&field),
        representative_text: rep.format(&field),
        fnk_text: fnk.as_ref().map(ToString::to_string),
        fnk,
        check,
    };
    let body = match config.format {
        Format::Json => output::json(&report)?,
        Format::Csv => {
            let rep_len = report.representative.coeffs.len();
            let fnk_len = report.fnk.as_ref().map_or(0, |f| f.coeffs().len());
            let rows: Vec<Vec<String>> = (0..rep_len.max(fnk_len).max(1))
                .map(|i| {
                    let r = report.representative.coeffs.get(i).map_or("0".to_string(), |c| output::coords(c));
                    let f = report.fnk.as_ref().map_or(String::new(), |f| f.coeff(i).to_string());
                    vec![i.to_string(), r, f]
                })
                .collect();
            output::csv(&["degree", "representative", "fnk"], &rows)?
        }
        Format::Pretty => {
            let mut s = format!(
                "D_{{{n},{}}}(1, x) mod x^{} - x = {}\n",
                report.k,
                field.q(),
                report.representative_text
            );
            if let Some(text) = &report.fnk_text {
                s.push_str(&format!("f_{{{n},{k}}}(x) = {text}\n"));
            }
            if let Some(c) = &report.check {
                s.push_str(&format!(
                    "check over {} points: representative {}",
                    c.points,
                    if c.representative_agrees { "agrees" } else { "DISAGREES" }
                ));
                if let Some(ok) = c.fnk_agrees {
                    s.push_str(&format!(", f route {}", if ok { "agrees" } else { "DISAGREES" }));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::new(body, pass).with_notes(notes))
}
