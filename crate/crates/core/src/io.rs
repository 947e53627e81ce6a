//! JSON and CSV wire formats.
//!
//! Matrices travel as `{"p", "k", "n_rows", "n_cols", "entries"}` with
//! row-major nested arrays of canonical element encodings; pairs as
//! `{"p", "k", "n", "A", "B"}` with nested matrix objects. Parsing
//! validates everything and names the offending field. Counts are decimal
//! strings so arbitrary sizes survive; reports carry no timing fields
//! unless asked, keeping emitted bytes identical across runs and worker
//! counts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::Field;
use crate::matff::Mat;
use crate::modvar::{Decomposition, Fingerprint, IndecClass};
use crate::variety::count::{CensusReport, DimEstimate};
use crate::variety::CommPair;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
    #[error("field {field}: {reason}")]
    Invalid { field: String, reason: String },
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> IoError {
    IoError::Invalid {
        field: field.into(),
        reason: reason.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixDto {
    p: u32,
    k: u32,
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Vec<u64>>,
}

impl MatrixDto {
    fn from_mat(m: &Mat) -> MatrixDto {
        let f = m.field();
        MatrixDto {
            p: f.p(),
            k: f.k(),
            n_rows: m.rows(),
            n_cols: m.cols(),
            entries: (0..m.rows())
                .map(|r| m.row(r).iter().map(|&e| e as u64).collect())
                .collect(),
        }
    }

    fn into_mat(self, prefix: &str) -> Result<Mat, IoError> {
        let field = Field::new(self.p, self.k)
            .map_err(|e| invalid(format!("{}p/k", prefix), e.to_string()))?;
        if self.n_rows == 0 || self.n_cols == 0 {
            return Err(invalid(
                format!("{}n_rows/n_cols", prefix),
                "dimensions must be positive",
            ));
        }
        if self.entries.len() != self.n_rows {
            return Err(invalid(
                format!("{}entries", prefix),
                format!("expected {} rows, got {}", self.n_rows, self.entries.len()),
            ));
        }
        let q = field.q() as u64;
        let mut flat = Vec::with_capacity(self.n_rows * self.n_cols);
        for (r, row) in self.entries.iter().enumerate() {
            if row.len() != self.n_cols {
                return Err(invalid(
                    format!("{}entries[{}]", prefix, r),
                    format!("expected {} columns, got {}", self.n_cols, row.len()),
                ));
            }
            for (c, &e) in row.iter().enumerate() {
                if e >= q {
                    return Err(invalid(
                        format!("{}entries[{}][{}]", prefix, r, c),
                        format!("encoding {} out of range for order {}", e, q),
                    ));
                }
                flat.push(e as crate::ff::Elem);
            }
        }
        Mat::from_entries(&field, self.n_rows, self.n_cols, flat)
            .map_err(|e| invalid(format!("{}entries", prefix), e.to_string()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PairDto {
    p: u32,
    k: u32,
    n: usize,
    #[serde(rename = "A")]
    a: MatrixDto,
    #[serde(rename = "B")]
    b: MatrixDto,
}

pub fn parse_matrix(s: &str) -> Result<Mat, IoError> {
    let dto: MatrixDto = serde_json::from_str(s)?;
    dto.into_mat("")
}

pub fn matrix_to_json(m: &Mat) -> String {
    serde_json::to_string_pretty(&MatrixDto::from_mat(m)).expect("matrix serializes")
}

pub fn parse_pair(s: &str) -> Result<CommPair, IoError> {
    let dto: PairDto = serde_json::from_str(s)?;
    for (name, inner) in [("A", &dto.a), ("B", &dto.b)] {
        if inner.p != dto.p || inner.k != dto.k {
            return Err(invalid(
                format!("{}.p/k", name),
                "field parameters disagree with the pair's",
            ));
        }
        if inner.n_rows != dto.n || inner.n_cols != dto.n {
            return Err(invalid(
                format!("{}.n_rows/n_cols", name),
                format!("expected {} x {}", dto.n, dto.n),
            ));
        }
    }
    let a = dto.a.into_mat("A.")?;
    let b = dto.b.into_mat("B.")?;
    CommPair::new(a, b).map_err(|e| invalid("A/B", e.to_string()))
}

pub fn pair_to_json(pair: &CommPair) -> String {
    let dto = PairDto {
        p: pair.field().p(),
        k: pair.field().k(),
        n: pair.n(),
        a: MatrixDto::from_mat(pair.first()),
        b: MatrixDto::from_mat(pair.second()),
    };
    serde_json::to_string_pretty(&dto).expect("pair serializes")
}

#[derive(Debug, Serialize)]
struct EstimateDto {
    dim: f64,
    dim_rounded: i64,
    leading: f64,
    leading_rounded: i64,
}

impl EstimateDto {
    fn new(e: &DimEstimate) -> EstimateDto {
        EstimateDto {
            dim: e.dim,
            dim_rounded: e.dim_rounded,
            leading: e.leading,
            leading_rounded: e.leading_rounded,
        }
    }
}

pub fn estimate_to_json(e: &DimEstimate) -> String {
    serde_json::to_string_pretty(&EstimateDto::new(e)).expect("estimate serializes")
}

#[derive(Debug, Serialize)]
struct CensusRowDto {
    n: usize,
    /// The stratum rank, or "full" for the whole variety.
    i: String,
    q: u64,
    count: String,
    visits: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_secs: Option<f64>,
}

#[derive(Debug, Serialize)]
struct CensusDto {
    rows: Vec<CensusRowDto>,
    estimate: Option<EstimateDto>,
}

fn census_dto(report: &CensusReport) -> CensusDto {
    CensusDto {
        rows: report
            .rows
            .iter()
            .map(|r| CensusRowDto {
                n: r.n,
                i: r.i.map_or_else(|| "full".to_string(), |i| i.to_string()),
                q: r.q,
                count: r.count.to_string(),
                visits: r.visits.to_string(),
                elapsed_secs: r.elapsed,
            })
            .collect(),
        estimate: report.estimate.as_ref().map(EstimateDto::new),
    }
}

pub fn census_to_json(report: &CensusReport) -> String {
    serde_json::to_string_pretty(&census_dto(report)).expect("census serializes")
}

/// Columns n,i,q,count,dim_est,lead_est; the fitted estimates repeat on
/// every row, empty when fewer than two sizes were counted.
pub fn census_to_csv(report: &CensusReport) -> String {
    let (dim_est, lead_est) = match &report.estimate {
        Some(e) => (format!("{:.4}", e.dim), format!("{:.4}", e.leading)),
        None => (String::new(), String::new()),
    };
    let mut out = String::from("n,i,q,count,dim_est,lead_est\n");
    for r in &report.rows {
        let i = r.i.map_or_else(|| "full".to_string(), |i| i.to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n, i, r.q, r.count, dim_est, lead_est
        ));
    }
    out
}

#[derive(Debug, Serialize)]
struct FingerprintDto {
    dim: usize,
    rk_x: usize,
    rk_y: usize,
    rk_xy: usize,
    rk_x_plus_y: usize,
    dim_rad: usize,
    dim_soc: usize,
    loewy: usize,
    end_dim: usize,
}

impl FingerprintDto {
    fn new(f: &Fingerprint) -> FingerprintDto {
        FingerprintDto {
            dim: f.dim,
            rk_x: f.rk_x,
            rk_y: f.rk_y,
            rk_xy: f.rk_xy,
            rk_x_plus_y: f.rk_x_plus_y,
            dim_rad: f.dim_rad,
            dim_soc: f.dim_soc,
            loewy: f.loewy,
            end_dim: f.end_dim,
        }
    }
}

#[derive(Debug, Serialize)]
struct SummandDto {
    dim: usize,
    class_tag: &'static str,
    parameter: Option<String>,
    certified: bool,
    fingerprint: FingerprintDto,
}

#[derive(Debug, Serialize)]
struct DecompositionDto {
    p: u32,
    k: u32,
    n: usize,
    all_certified: bool,
    summands: Vec<SummandDto>,
}

fn class_parts(class: &IndecClass) -> (&'static str, Option<String>) {
    match class {
        IndecClass::Triv => ("TRIV", None),
        IndecClass::U { a, b } => ("U", Some(format!("{}:{}", a, b))),
        IndecClass::W => ("W", None),
        IndecClass::ZPlus { n } => ("ZPLUS", Some(n.to_string())),
        IndecClass::ZMinus { n } => ("ZMINUS", Some(n.to_string())),
        IndecClass::Other => ("OTHER", None),
    }
}

pub fn decomposition_to_json(field: &Field, dec: &Decomposition) -> String {
    let n = dec.summands.iter().map(|s| s.module.dim()).sum();
    let dto = DecompositionDto {
        p: field.p(),
        k: field.k(),
        n,
        all_certified: dec.all_certified(),
        summands: dec
            .summands
            .iter()
            .map(|s| {
                let (class_tag, parameter) = class_parts(&s.class);
                SummandDto {
                    dim: s.module.dim(),
                    class_tag,
                    parameter,
                    certified: s.certified,
                    fingerprint: FingerprintDto::new(&s.fingerprint),
                }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dto).expect("decomposition serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matff::EnumOpts;
    use crate::modvar::{decompose, DecomposeOpts, PairModule};
    use crate::variety::count::census;
    use crate::variety::w_pair;

    #[test]
    fn matrix_round_trips() {
        let f = Field::from_order(4).unwrap();
        let m = Mat::from_rows(&f, vec![vec![0, 1, 2], vec![3, 0, 1]]).unwrap();
        let s = matrix_to_json(&m);
        let back = parse_matrix(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_parse_names_offending_fields() {
        let err = parse_matrix(r#"{"p":4,"k":1,"n_rows":1,"n_cols":1,"entries":[[0]]}"#)
            .unwrap_err();
        assert!(matches!(&err, IoError::Invalid { field, .. } if field == "p/k"), "{err}");
        let err = parse_matrix(r#"{"p":2,"k":1,"n_rows":2,"n_cols":1,"entries":[[0]]}"#)
            .unwrap_err();
        assert!(matches!(&err, IoError::Invalid { field, .. } if field == "entries"), "{err}");
        let err = parse_matrix(r#"{"p":2,"k":1,"n_rows":1,"n_cols":2,"entries":[[0,2]]}"#)
            .unwrap_err();
        assert!(
            matches!(&err, IoError::Invalid { field, .. } if field == "entries[0][1]"),
            "{err}"
        );
        assert!(matches!(
            parse_matrix("not json").unwrap_err(),
            IoError::Json(_)
        ));
    }

    #[test]
    fn pair_round_trips_and_validates() {
        let f = Field::from_order(2).unwrap();
        let pair = w_pair(&f).unwrap();
        let s = pair_to_json(&pair);
        let back = parse_pair(&s).unwrap();
        assert_eq!(back, pair);

        // Violating the commutation requirement is reported on A/B.
        let mut dto: serde_json::Value = serde_json::from_str(&s).unwrap();
        dto["B"]["entries"][1][0] = serde_json::json!(1);
        let err = parse_pair(&dto.to_string()).unwrap_err();
        assert!(matches!(&err, IoError::Invalid { field, .. } if field == "A/B"), "{err}");
        dto["B"]["p"] = serde_json::json!(3);
        let err = parse_pair(&dto.to_string()).unwrap_err();
        assert!(matches!(&err, IoError::Invalid { field, .. } if field == "B.p/k"), "{err}");
    }

    #[test]
    fn census_json_is_stable_and_csv_has_the_pinned_columns() {
        let report = census(2, None, &[2, 4], &EnumOpts::serial(), false).unwrap();
        let j1 = census_to_json(&report);
        let report2 = census(2, None, &[2, 4], &EnumOpts::serial(), false).unwrap();
        assert_eq!(j1, census_to_json(&report2));
        assert!(!j1.contains("elapsed"));

        let csv = census_to_csv(&report);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "n,i,q,count,dim_est,lead_est");
        let first = lines.next().unwrap();
        assert!(first.starts_with("2,full,2,10,"), "{first}");

        let timed = census(2, Some(1), &[2], &EnumOpts::serial(), true).unwrap();
        assert!(census_to_json(&timed).contains("elapsed_secs"));
    }

    #[test]
    fn decomposition_report_lists_classified_summands() {
        let f = Field::from_order(2).unwrap();
        let rep = crate::variety::component_rep(&f, 5, &crate::variety::ComponentId::XHalf)
            .unwrap();
        let dec = decompose(&PairModule::new(rep), &DecomposeOpts::default()).unwrap();
        let json = decomposition_to_json(&f, &dec);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["n"], 5);
        assert_eq!(v["all_certified"], true);
        let tags: Vec<&str> = v["summands"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["class_tag"].as_str().unwrap())
            .collect();
        assert!(tags.contains(&"W") && tags.contains(&"TRIV"));
    }
}
