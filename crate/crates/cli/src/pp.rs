use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use rdk_core::gf::FieldSpec;
use rdk_core::permcheck::{is_pp_two_to_one, predict_by_theorem, rdp_pp_bruteforce, PermError, Witness};
use rdk_core::rdpoly::RdpParams;
use rdk_core::Field;

use crate::config::{CommandConfig, Format, PpCriterion, RunConfig};
use crate::output::{self, Outcome};
use crate::{build_field, usage, CliError};

#[derive(Debug, Serialize)]
struct Verdict {
    criterion: PpCriterion,
    verdict: Option<bool>,
    #[serde(skip)]
    witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
struct Evidence {
    criterion: PpCriterion,
    witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
struct Row {
    n: u64,
    k: u64,
    k_input: i64,
    verdicts: Vec<Verdict>,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<Evidence>>,
}

#[derive(Debug, Serialize)]
struct PpTable {
    field: FieldSpec,
    criteria: Vec<PpCriterion>,
    rows: Vec<Row>,
    disagreements: usize,
    pass: bool,
}

fn verdict(field: &Field, n: u64, k: u64, criterion: PpCriterion) -> Result<Verdict, CliError> {
    let params = RdpParams::unit(field, n, k);
    let report = match criterion {
        PpCriterion::BruteForce => Some(rdp_pp_bruteforce(field, &params)?),
        PpCriterion::TwoToOne => match is_pp_two_to_one(field, &BigUint::from(n), k) {
            Ok(r) => Some(r),
            Err(PermError::ZeroIndex) => None,
            Err(e) => return Err(e.into()),
        },
        PpCriterion::TheoremClosedForm => predict_by_theorem(field, &params),
    };
    Ok(Verdict {
        criterion,
        verdict: report.as_ref().map(|r| r.verdict),
        witness: report.and_then(|r| r.witness),
    })
}

fn row(field: &Field, n: u64, k_input: i64, criteria: &[PpCriterion]) -> Result<Row, CliError> {
    let k = k_input.rem_euclid(field.p() as i64) as u64;
    let verdicts = criteria.iter().map(|&c| verdict(field, n, k, c)).collect::<Result<Vec<_>, _>>()?;
    let mut seen = verdicts.iter().filter_map(|v| v.verdict);
    let first = seen.next();
    let agree = seen.all(|v| Some(v) == first);
    let witnesses = (!agree).then(|| {
        verdicts.iter().map(|v| Evidence { criterion: v.criterion, witness: v.witness.clone() }).collect()
    });
    Ok(Row { n, k, k_input, verdicts, agree, witnesses })
}

fn cell(v: Option<bool>) -> String {
    v.map_or("-".to_string(), |b| b.to_string())
}

pub(crate) fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let CommandConfig::Pp { ns, ks, criteria } = &config.command else { unreachable!() };
    let field = build_field(config)?;
    if criteria.contains(&PpCriterion::TwoToOne) && !field.is_odd_characteristic() {
        return Err(usage("the two_to_one criterion needs odd characteristic"));
    }
    let ns = ns.to_u64s("--n").map_err(usage)?;
    let grid: Vec<(u64, i64)> = ns.iter().flat_map(|&n| ks.iter().map(move |k| (n, k))).collect();
    let rows = grid
        .par_iter()
        .map(|&(n, k)| row(&field, n, k, criteria))
        .collect::<Result<Vec<_>, _>>()?;
    let mut notes = Vec::new();
    if rows.iter().any(|r| r.k as i64 != r.k_input) {
        notes.push(format!("k values reduced mod {}", field.p()));
    }
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    let table = PpTable {
        field: field.spec().clone(),
        criteria: criteria.clone(),
        rows,
        disagreements,
        pass: disagreements == 0,
    };
    let mut header = vec!["n", "k"];
    header.extend(criteria.iter().map(|c| c.name()));
    header.push("agree");
    let cells = |r: &Row| {
        let mut c = vec![r.n.to_string(), r.k.to_string()];
        c.extend(r.verdicts.iter().map(|v| cell(v.verdict)));
        c
    };
    let body = match config.format {
        Format::Json => output::json(&table)?,
        Format::Csv => {
            header.push("witness");
            let rows = table
                .rows
                .iter()
                .map(|r| {
                    let mut c = cells(r);
                    c.push(r.agree.to_string());
                    c.push(r.witnesses.as_ref().map(serde_json::to_string).transpose()?.unwrap_or_default());
                    Ok(c)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            output::csv(&header, &rows)?
        }
        Format::Pretty => {
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    let mut c = cells(r);
                    c.push(output::yes_no(r.agree));
                    c
                })
                .collect();
            let mut s = output::table(&header, &rows);
            s.push_str(&format!("{} rows, {} disagreements\n", table.rows.len(), table.disagreements));
            for r in table.rows.iter().filter(|r| !r.agree) {
                s.push_str(&format!("witnesses at n={}, k={}: {}\n", r.n, r.k, serde_json::to_string(&r.witnesses)?));
            }
            s
        }
    };
    Ok(Outcome::new(body, table.pass).with_notes(notes))
}
