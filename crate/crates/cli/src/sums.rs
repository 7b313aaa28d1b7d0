use serde::Serialize;

use rdk_core::charsum::{sums_bruteforce_table, sums_via_recurrence, SumTable};
use rdk_core::gf::FieldSpec;

use crate::config::{CommandConfig, Format, RunConfig};
use crate::output::{self, coords, Outcome};
use crate::verify::{is_verification_failure, kinds};
use crate::{build_field, usage, CliError};

#[derive(Debug, Serialize)]
struct SumRow {
    n: u64,
    #[serde(rename = "D_sum")]
    d_sum: Vec<u64>,
    d: u64,
    oracle_match: bool,
}

#[derive(Debug, Serialize)]
struct KindTable {
    k: u64,
    table: SumTable,
    rows: Vec<SumRow>,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct SumsOutput {
    field: FieldSpec,
    tables: Vec<KindTable>,
    pass: bool,
}

pub(crate) fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let CommandConfig::Sums { ks, ns } = &config.command else { unreachable!() };
    let field = build_field(config)?;
    field.require_odd()?;
    let top = field.q() * field.q() - 1;
    let ns = match ns {
        Some(ns) => ns.to_u64s("--n").map_err(usage)?,
        None => (1..=top).collect(),
    };
    if let Some(&bad) = ns.iter().find(|&&n| n == 0 || n > top) {
        return Err(usage(format!("--n: {bad} is outside [1, {top}]")));
    }
    let ks = ks.as_ref().map(|k| k.to_u64s("--k")).transpose().map_err(usage)?;
    let mut tables = Vec::new();
    for k in kinds(&field, ks.as_deref()) {
        let table = match sums_via_recurrence(&field, k) {
            Ok(t) => t,
            Err(e) if is_verification_failure(&e) => {
                let body = format!("sum table for k = {k} failed its internal cross-check: {e}\n");
                return Ok(Outcome::new(body, false));
            }
            Err(e) => return Err(e.into()),
        };
        let brute = sums_bruteforce_table(&field, k)?;
        let rows: Vec<SumRow> = ns
            .iter()
            .map(|&n| {
                let i = n as usize;
                SumRow {
                    n,
                    d_sum: field.coords(table.sum(i)),
                    d: table.d(i),
                    oracle_match: table.sum(i) == brute[i - 1],
                }
            })
            .collect();
        let pass = rows.iter().all(|r| r.oracle_match);
        tables.push(KindTable { k, table, rows, pass });
    }
    let pass = tables.iter().all(|t| t.pass);
    let out = SumsOutput { field: field.spec().clone(), tables, pass };
    let cells = |k: u64, r: &SumRow| {
        vec![k.to_string(), r.n.to_string(), coords(&r.d_sum), r.d.to_string(), r.oracle_match.to_string()]
    };
    let header = ["k", "n", "D_sum", "d", "oracle_match"];
    let body = match config.format {
        Format::Json => output::json(&out)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                out.tables.iter().flat_map(|t| t.rows.iter().map(move |r| cells(t.k, r))).collect();
            output::csv(&header, &rows)?
        }
        Format::Pretty => {
            let mut s = String::new();
            for t in &out.tables {
                s.push_str(&format!("{} k = {}  b = {:?}\n", out.field, t.k, t.table.b));
                let rows: Vec<Vec<String>> = t.rows.iter().map(|r| cells(t.k, r)).collect();
                s.push_str(&output::table(&header, &rows));
                s.push('\n');
            }
            s.push_str(if out.pass { "all sums match the brute-force oracle\n" } else { "ORACLE MISMATCH\n" });
            s
        }
    };
    Ok(Outcome::new(body, out.pass))
}
