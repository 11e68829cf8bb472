use serde::Serialize;

use crate::render::{num, Render};
use crate::{CliResult, RunConfig};

/// The seeded sphere directions used by every estimator.
#[derive(Clone, Debug, Serialize)]
pub struct SamplesReport {
    pub dimension: usize,
    pub seed: u64,
    pub directions: Vec<Vec<[f64; 2]>>,
}

pub fn cmd_samples_dump(dimension: usize, run: &RunConfig) -> CliResult<SamplesReport> {
    if dimension == 0 {
        return Err(iterlog_core::Error::ZeroDimension.into());
    }
    let cfg = run.samples()?;
    let directions = cfg
        .directions(dimension)
        .into_iter()
        .map(|z| z.into_iter().map(|c| [c.re, c.im]).collect())
        .collect();
    Ok(SamplesReport {
        dimension,
        seed: run.seed,
        directions,
    })
}

impl Render for SamplesReport {
    fn csv(&self) -> String {
        let mut out = String::from("index");
        for j in 1..=self.dimension {
            out.push_str(&format!(",z{j}_re,z{j}_im"));
        }
        out.push('\n');
        for (i, z) in self.directions.iter().enumerate() {
            out.push_str(&i.to_string());
            for [re, im] in z {
                out.push_str(&format!(",{},{}", num(*re), num(*im)));
            }
            out.push('\n');
        }
        out
    }

    fn text(&self) -> String {
        self.csv()
    }
}
