use std::io::Read;

use crate::error::{Error, Result};

/// Rows of an `id, score-or-label, truth` file.
#[derive(Clone, Debug, PartialEq)]
pub struct Predictions {
    pub ids: Vec<String>,
    pub predicted: Vec<String>,
    pub truth: Vec<String>,
}

/// How the middle column was read.
#[derive(Clone, Debug, PartialEq)]
pub enum PredictionColumn {
    Labels(Vec<String>),
    Scores(Vec<f64>),
}

impl Predictions {
    /// Reads a headed CSV with exactly three columns.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.len() != 3 {
            return Err(Error::input(format!(
                "prediction CSV needs columns id, score-or-label, truth; header has {}",
                headers.len()
            )));
        }
        let mut p = Predictions { ids: Vec::new(), predicted: Vec::new(), truth: Vec::new() };
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            if rec.len() != 3 {
                return Err(Error::input(format!("row {} has {} fields, expected 3", i + 2, rec.len())));
            }
            p.ids.push(rec[0].to_string());
            p.predicted.push(rec[1].to_string());
            p.truth.push(rec[2].to_string());
        }
        if p.ids.is_empty() {
            return Err(Error::input("prediction CSV has no rows"));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Labels when every middle value is a truth token or `positive`,
    /// otherwise scores (every value must then parse as a number).
    pub fn column(&self, positive: &str) -> Result<PredictionColumn> {
        let is_token = |v: &String| v == positive || self.truth.contains(v);
        if self.predicted.iter().all(is_token) {
            return Ok(PredictionColumn::Labels(self.predicted.clone()));
        }
        self.predicted
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| {
                    Error::input(format!("row {}: `{v}` is neither a truth label nor a finite score", i + 2))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(PredictionColumn::Scores)
    }

    /// Truth as booleans, requiring at most two distinct tokens.
    pub fn truth_flags(&self, positive: &str) -> Result<Vec<bool>> {
        let mut other: Option<&str> = None;
        self.truth
            .iter()
            .map(|t| {
                if t == positive {
                    return Ok(true);
                }
                match other {
                    None => {
                        other = Some(t);
                        Ok(false)
                    }
                    Some(o) if o == t => Ok(false),
                    Some(o) => Err(Error::input(format!(
                        "truth label `{t}` is neither positive `{positive}` nor negative `{o}`"
                    ))),
                }
            })
            .collect()
    }
}
