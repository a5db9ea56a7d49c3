use serde_json::{json, Value};

use picmod::picard::{report_for, theta_exponent};
use picmod::rep_theory::{weyl_dim, IrrepLabel};
use picmod::selftest::{self, Level};
use picmod::tables::{generate, TableKind};
use picmod::verlinde::{count_p_ell, verlinde_dim, VerlindeOptions, VerlindeQuery};
use picmod::wps::{wps_from_group, WpsWeights};
use picmod::{Error, LieType, RootDatum, WeightVec};

use crate::render::{self, big, envelope, number};
use crate::{Command, Format, LevelArg, TableFormat, TableName, WpsAction, WpsSource};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_NUMERIC: u8 = 4;

/// Fractional digits of `value_decimal`.
const VALUE_DIGITS: usize = 30;

pub struct Outcome {
    pub stdout: Option<String>,
    pub stderr: Option<String>,
    pub code: u8,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { stdout: Some(body), stderr: None, code: EXIT_OK }
    }

    pub fn usage(command: &str, message: &str) -> Self {
        Outcome {
            stdout: None,
            stderr: Some(render::error_object(command, "usage", message)),
            code: EXIT_USAGE,
        }
    }

    fn error(command: &str, e: &Error) -> Self {
        let code = match e {
            Error::InvalidType { .. } => EXIT_USAGE,
            Error::Shape { .. }
            | Error::Domain(_)
            | Error::Validation(_)
            | Error::Unsupported(_)
            | Error::Resource(_) => EXIT_DOMAIN,
            Error::Consistency(_) | Error::Precision(_) => EXIT_NUMERIC,
        };
        Outcome {
            stdout: None,
            stderr: Some(render::error_object(command, e.kind(), &e.to_string())),
            code,
        }
    }
}

fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => render::to_json(v),
        Format::Text => render::to_text(v),
    }
}

pub fn run(cmd: &Command) -> Outcome {
    let name = cmd.name();
    let result = match cmd {
        Command::Report { lie, genus, format } => report(lie, *genus).map(|v| emit(&v, *format)),
        Command::Verlinde { lie, genus, level, precision_bits, jobs, format } => {
            verlinde(lie, *genus, *level, *precision_bits, *jobs).map(|v| emit(&v, *format))
        }
        Command::Index { lie, weight, format } => index(lie, weight).map(|v| emit(&v, *format)),
        Command::Wps { action } => wps(action),
        Command::Tables { table, format } => tables(*table, *format),
        Command::Selftest { level, format } => return run_selftest(*level, *format),
    };
    match result {
        Ok(body) => Outcome::ok(body),
        Err(e) => Outcome::error(name, &e),
    }
}

fn datum(token: &str) -> Result<RootDatum, Error> {
    RootDatum::build(token.parse::<LieType>()?)
}

fn report(token: &str, genus: u32) -> Result<Value, Error> {
    let d = datum(token)?;
    let r = report_for(&d, genus)?;
    let mut result = serde_json::to_value(&r).expect("serializable");
    result
        .as_object_mut()
        .expect("object")
        .insert("generator".into(), json!(r.generator_name()));
    Ok(envelope("report", json!({ "type": d.lie(), "genus": genus }), result, None))
}

fn verlinde(token: &str, genus: u32, level: u32, precision_bits: u32, jobs: Option<u32>) -> Result<Value, Error> {
    let d = datum(token)?;
    let q = VerlindeQuery { lie: d.lie(), genus, level };
    let opts = VerlindeOptions {
        precision_bits,
        jobs: jobs.map(|j| j as usize),
        ..VerlindeOptions::default()
    };
    let r = verlinde_dim(&d, &q, &opts)?;
    let gap = if r.abs_gap.is_zero() {
        "0".to_string()
    } else {
        r.abs_gap.to_string_radix(10, Some(6))
    };
    let result = json!({
        "value_decimal": number(&r.value_decimal(VALUE_DIGITS)),
        "rounded": big(&r.rounded),
        "abs_gap": number(&gap),
        "count_P_ell": big(&count_p_ell(&d, level)),
    });
    let mut inputs = json!({ "type": d.lie(), "genus": genus, "level": level, "precision_bits": precision_bits });
    if let Some(j) = jobs {
        inputs["jobs"] = json!(j);
    }
    Ok(envelope("verlinde", inputs, result, Some(r.precision_bits)))
}

fn index(token: &str, weight: &[i64]) -> Result<Value, Error> {
    let d = datum(token)?;
    if weight.len() != d.rank() {
        return Err(Error::Shape { expected: d.rank(), got: weight.len() });
    }
    let lam = IrrepLabel::new(WeightVec::new(weight))?;
    let dim = weyl_dim(&d, &lam)?;
    let te = theta_exponent(&d, &lam)?;
    let result = json!({
        "dimension": big(&dim),
        "dynkin_index": big(&te.dynkin_index),
        "m_G": d.comark_lcm(),
        "power_of_generator": big(&te.power_of_generator),
    });
    Ok(envelope("index", json!({ "type": d.lie(), "weight": weight }), result, None))
}

fn wps_weights(source: &WpsSource) -> Result<(WpsWeights, Value), Error> {
    match (&source.weights, &source.lie) {
        (Some(w), _) => Ok((WpsWeights::new(w.clone())?, json!({ "weights": w }))),
        (None, Some(token)) => {
            let d = datum(token)?;
            Ok((wps_from_group(&d), json!({ "type": d.lie() })))
        }
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn wps(action: &WpsAction) -> Result<String, Error> {
    match action {
        WpsAction::Hilbert { source, degree, format } => {
            let (w, mut inputs) = wps_weights(source)?;
            inputs["degree"] = json!(degree);
            let result = json!({
                "weights": w,
                "degree": degree,
                "dimension": big(&w.hilbert_dim(*degree)),
            });
            Ok(emit(&envelope("wps hilbert", inputs, result, None), *format))
        }
        WpsAction::Generator { source, format } => {
            let (w, inputs) = wps_weights(source)?;
            let result = json!({ "weights": w, "generator_degree": w.generator_degree() });
            Ok(emit(&envelope("wps generator", inputs, result, None), *format))
        }
    }
}

fn tables(name: TableName, format: TableFormat) -> Result<String, Error> {
    let kind = match name {
        TableName::Prop23 => TableKind::Prop23,
        TableName::Wps => TableKind::Wps,
        TableName::Comarks => TableKind::Comarks,
    };
    let t = generate(kind)?;
    Ok(match format {
        TableFormat::Markdown => t.to_markdown(),
        TableFormat::Csv => t.to_csv(),
        TableFormat::Json => {
            let result = json!({
                "table": kind.name(),
                "columns": t.columns,
                "symbolic": t.symbolic,
                "rows": t.rows,
            });
            render::to_json(&envelope("tables", json!({ "table": kind.name() }), result, None))
        }
    })
}

fn run_selftest(level: LevelArg, format: Format) -> Outcome {
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let outcomes = selftest::run(level);
    let failed: Vec<&selftest::CheckOutcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let body = match format {
        Format::Json => {
            let result = json!({
                "level": level,
                "passed": outcomes.len() - failed.len(),
                "failed": failed.len(),
                "checks": outcomes,
            });
            render::to_json(&envelope("selftest", json!({ "level": level }), result, None))
        }
        Format::Text => {
            let mut s: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            s.push_str(&format!("{} of {} checks passed\n", outcomes.len() - failed.len(), outcomes.len()));
            s
        }
    };
    let stderr = (!failed.is_empty()).then(|| {
        let ids: Vec<String> = failed.iter().map(|o| o.id.to_string()).collect();
        render::error_object("selftest", "check_failed", &format!("failed checks: {}", ids.join(", ")))
    });
    Outcome {
        stdout: Some(body),
        stderr,
        code: if failed.is_empty() { EXIT_OK } else { EXIT_NUMERIC },
    }
}
