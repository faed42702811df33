//! Markdown, CSV and JSON renderings of models, δ tables and sweeps.
//!
//! Rationals render as `a/b` (integers without a denominator). CSV output is
//! comma separated with a header row and LF line endings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{PeriodReport, SweepRow};
use crate::closed_form::ClosedFormModel;
use crate::delta::{raw_delta, raw_delta0, raw_delta_tilde, TowerParams};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

fn csv_string<S: Serialize>(header: Option<&[&str]>, rows: &[S]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .has_headers(header.is_none())
        .from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h).expect("in-memory write");
    }
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn json_string<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data");
    s.push('\n');
    s
}

fn md_row(cells: &[String]) -> String {
    format!("| {} |\n", cells.join(" | "))
}

fn md_rule(n: usize) -> String {
    format!("|{}\n", "---|".repeat(n))
}

// ---- δ tables ----

pub struct DeltaTable {
    pub p: u64,
    pub d: u64,
    pub delta: Vec<u8>,
    pub delta0: Vec<u8>,
    pub delta_tilde: Vec<u8>,
}

pub fn delta_table(params: &TowerParams, i_max: u64) -> DeltaTable {
    let rows = |f: fn(&TowerParams, u64) -> u8| (1..=i_max).map(|i| f(params, i)).collect();
    DeltaTable {
        p: params.p().get(),
        d: params.d(),
        delta: rows(raw_delta),
        delta0: rows(raw_delta0),
        delta_tilde: rows(raw_delta_tilde),
    }
}

#[derive(Serialize)]
struct DeltaTableJson<'a> {
    p: u64,
    d: u64,
    i: Vec<u64>,
    delta: &'a [u8],
    delta0: &'a [u8],
    delta_tilde: &'a [u8],
}

pub fn render_delta_table(table: &DeltaTable, format: OutputFormat) -> String {
    let n = table.delta.len() as u64;
    let labels = [
        ("δ(i)", "delta", &table.delta),
        ("δ₀(i)", "delta0", &table.delta0),
        ("δ̃(i)", "delta_tilde", &table.delta_tilde),
    ];
    match format {
        OutputFormat::Markdown => {
            let mut out = format!("δ values for p = {}, d = {}\n\n", table.p, table.d);
            let mut header = vec!["i".to_string()];
            header.extend((1..=n).map(|i| i.to_string()));
            out += &md_row(&header);
            out += &md_rule(header.len());
            for (label, _, row) in labels {
                let mut cells = vec![label.to_string()];
                cells.extend(row.iter().map(|v| v.to_string()));
                out += &md_row(&cells);
            }
            out
        }
        OutputFormat::Csv => {
            let mut header = vec!["row".to_string()];
            header.extend((1..=n).map(|i| i.to_string()));
            let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = labels
                .iter()
                .map(|(_, key, row)| {
                    std::iter::once(key.to_string()).chain(row.iter().map(|v| v.to_string())).collect()
                })
                .collect();
            csv_string(Some(&header_refs), &rows)
        }
        OutputFormat::Json => json_string(&DeltaTableJson {
            p: table.p,
            d: table.d,
            i: (1..=n).collect(),
            delta: &table.delta,
            delta0: &table.delta0,
            delta_tilde: &table.delta_tilde,
        }),
    }
}

// ---- closed-form model ----

#[derive(Serialize)]
struct FormulaRow {
    p: u64,
    d: u64,
    r: u64,
    quad: String,
    lambda: String,
    #[serde(rename = "N_r")]
    n_r: u64,
    period: u64,
    minimal_period: u64,
    residue: u64,
    nu: String,
}

#[derive(Serialize)]
struct FormulaJson {
    #[serde(flatten)]
    model: crate::closed_form::ModelRecord,
    minimal_period: u64,
    minimal_delay: u64,
}

/// `ν` over the measured minimal period, as `(n mod L, ν(n))` pairs.
pub fn nu_over_minimal_period(model: &ClosedFormModel, report: &PeriodReport) -> Result<Vec<(u64, String)>> {
    let l = report.minimal_period;
    (0..l)
        .map(|c| {
            // first n ≥ N_r in this residue class
            let n = model.delay + (c + l - model.delay % l) % l;
            Ok((c, model.nu(n)?.to_string()))
        })
        .collect()
}

pub fn render_formula(model: &ClosedFormModel, report: &PeriodReport, format: OutputFormat) -> Result<String> {
    let nu = nu_over_minimal_period(model, report)?;
    let rec = model.record();
    Ok(match format {
        OutputFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "a^r(X_n) = quad · p^(2n) + λ · n + ν(n)   for n ≥ N_r\n");
            out += &md_row(&["quantity".into(), "value".into()]);
            out += &md_rule(2);
            for (k, v) in [
                ("p", rec.p.to_string()),
                ("d", rec.d.to_string()),
                ("r", rec.r.to_string()),
                ("quad", rec.quad.clone()),
                ("λ", rec.lambda.clone()),
                ("N_r", rec.n_r.to_string()),
                ("lcm(L_γ⁻¹, 2)", rec.period.to_string()),
                ("minimal period", report.minimal_period.to_string()),
                ("minimal delay", report.minimal_delay.to_string()),
            ] {
                out += &md_row(&[k.to_string(), v]);
            }
            out.push('\n');
            let mut header = vec![format!("n mod {}", report.minimal_period)];
            header.extend(nu.iter().map(|(c, _)| c.to_string()));
            out += &md_row(&header);
            out += &md_rule(header.len());
            let mut row = vec!["ν(n)".to_string()];
            row.extend(nu.iter().map(|(_, v)| v.clone()));
            out += &md_row(&row);
            out
        }
        OutputFormat::Csv => {
            let rows: Vec<FormulaRow> = nu
                .into_iter()
                .map(|(residue, v)| FormulaRow {
                    p: rec.p,
                    d: rec.d,
                    r: rec.r,
                    quad: rec.quad.clone(),
                    lambda: rec.lambda.clone(),
                    n_r: rec.n_r,
                    period: rec.period,
                    minimal_period: report.minimal_period,
                    residue,
                    nu: v,
                })
                .collect();
            csv_string(None, &rows)
        }
        OutputFormat::Json => json_string(&FormulaJson {
            model: rec,
            minimal_period: report.minimal_period,
            minimal_delay: report.minimal_delay,
        }),
    })
}

// ---- sweeps ----

pub const SWEEP_COLUMNS: [&str; 20] = [
    "p",
    "d",
    "r",
    "quad",
    "lambda",
    "N_r",
    "L_gamma_inv",
    "lcm_bound",
    "L",
    "half_case",
    "minimal_delay",
    "lambda_times_L",
    "lambda_L_integral",
    "partner_r",
    "partner_lambda_equal",
    "partner_delay_shift",
    "partner_L",
    "periods_equal",
    "oracle_checked_n",
    "error",
];

#[derive(Serialize)]
struct SweepRecord {
    p: u64,
    d: u64,
    r: u64,
    quad: String,
    lambda: String,
    #[serde(rename = "N_r")]
    n_r: Option<u64>,
    #[serde(rename = "L_gamma_inv")]
    l_gamma_inv: Option<u64>,
    lcm_bound: Option<u64>,
    #[serde(rename = "L")]
    minimal_period: Option<u64>,
    half_case: Option<bool>,
    minimal_delay: Option<u64>,
    #[serde(rename = "lambda_times_L")]
    lambda_times_period: String,
    #[serde(rename = "lambda_L_integral")]
    lambda_period_integral: Option<bool>,
    partner_r: Option<u64>,
    partner_lambda_equal: Option<bool>,
    partner_delay_shift: Option<bool>,
    #[serde(rename = "partner_L")]
    partner_period: Option<u64>,
    periods_equal: Option<bool>,
    oracle_checked_n: String,
    error: String,
}

fn sweep_record(row: &SweepRow) -> SweepRecord {
    let mut rec = SweepRecord {
        p: row.p,
        d: row.d,
        r: row.r,
        quad: String::new(),
        lambda: String::new(),
        n_r: None,
        l_gamma_inv: None,
        lcm_bound: None,
        minimal_period: None,
        half_case: None,
        minimal_delay: None,
        lambda_times_period: String::new(),
        lambda_period_integral: None,
        partner_r: None,
        partner_lambda_equal: None,
        partner_delay_shift: None,
        partner_period: None,
        periods_equal: None,
        oracle_checked_n: String::new(),
        error: String::new(),
    };
    match &row.outcome {
        Err(e) => rec.error = e.clone(),
        Ok(data) => {
            let rep = &data.report;
            rec.quad = rep.quad.to_string();
            rec.lambda = rep.lambda.to_string();
            rec.n_r = Some(rep.closed_delay);
            rec.l_gamma_inv = Some(rep.gamma_inv_period);
            rec.lcm_bound = Some(rep.lcm_bound);
            rec.minimal_period = Some(rep.minimal_period);
            rec.half_case = Some(rep.half_case);
            rec.minimal_delay = Some(rep.minimal_delay);
            rec.lambda_times_period = rep.lambda_times_period.to_string();
            rec.lambda_period_integral = Some(data.lambda_period_integral);
            rec.partner_r = Some(data.pairing.r1);
            rec.partner_lambda_equal = Some(data.pairing.lambda_equal);
            rec.partner_delay_shift = Some(data.pairing.delay_shifted);
            rec.partner_period = data.pairing.period1;
            rec.periods_equal = data.pairing.periods_equal();
            rec.oracle_checked_n = data.oracle_checked.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        }
    }
    rec
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, ToString::to_string)
}

#[derive(Serialize)]
struct SweepJson {
    columns: Vec<&'static str>,
    rows: Vec<SweepRecord>,
}

pub fn render_sweep(rows: &[SweepRow], format: OutputFormat) -> String {
    let records: Vec<SweepRecord> = rows.iter().map(sweep_record).collect();
    match format {
        OutputFormat::Csv => {
            if records.is_empty() {
                return csv_string::<SweepRecord>(Some(&SWEEP_COLUMNS), &[]);
            }
            csv_string(None, &records)
        }
        OutputFormat::Json => json_string(&SweepJson { columns: SWEEP_COLUMNS.to_vec(), rows: records }),
        OutputFormat::Markdown => {
            let mut out = md_row(&SWEEP_COLUMNS.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            out += &md_rule(SWEEP_COLUMNS.len());
            for r in &records {
                out += &md_row(&[
                    r.p.to_string(),
                    r.d.to_string(),
                    r.r.to_string(),
                    r.quad.clone(),
                    r.lambda.clone(),
                    opt(&r.n_r),
                    opt(&r.l_gamma_inv),
                    opt(&r.lcm_bound),
                    opt(&r.minimal_period),
                    opt(&r.half_case),
                    opt(&r.minimal_delay),
                    r.lambda_times_period.clone(),
                    opt(&r.lambda_period_integral),
                    opt(&r.partner_r),
                    opt(&r.partner_lambda_equal),
                    opt(&r.partner_delay_shift),
                    opt(&r.partner_period),
                    opt(&r.periods_equal),
                    r.oracle_checked_n.clone(),
                    r.error.replace('|', "\\|"),
                ]);
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_csv_layout() {
        let t = TowerParams::new(5, 4, 1).unwrap();
        let s = render_delta_table(&delta_table(&t, 5), OutputFormat::Csv);
        assert_eq!(s, "row,1,2,3,4,5\ndelta,1,0,0,0,1\ndelta0,1,0,0,0,0\ndelta_tilde,1,1,0,1,1\n");
    }

    #[test]
    fn empty_sweep_csv_is_header_only() {
        let s = render_sweep(&[], OutputFormat::Csv);
        assert_eq!(s, format!("{}\n", SWEEP_COLUMNS.join(",")));
    }
}
