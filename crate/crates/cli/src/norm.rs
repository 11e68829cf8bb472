use iterlog_core::io::{series_to_json, SeriesInput};
use iterlog_core::norms::{self, SpaceSpec, TailProfile, Verdict};
use iterlog_core::Error;
use serde::Serialize;

use crate::render::{num, Render};
use crate::CliResult;

#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub input: serde_json::Value,
    pub space: String,
    pub degree_cap: u32,
    pub norm_sq: f64,
    pub norm: f64,
    pub verdict: Verdict,
    pub profile: TailProfile,
}

/// Norm and tail profile of the input in `space`. `degree_cap` truncates,
/// or extends a polynomial with zero coefficients.
pub fn cmd_norm(input: &SeriesInput, space: &SpaceSpec, degree_cap: Option<u32>) -> CliResult<NormReport> {
    let f = &input.series;
    if f.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            left: space.dim(),
            right: f.dim(),
        }
        .into());
    }
    let f = match degree_cap {
        Some(cap) => f.with_cap(cap),
        None => f.clone(),
    };
    let profile = norms::tail_profile(&f, space)?;
    let norm_sq = profile.total();
    Ok(NormReport {
        input: series_to_json(&input.series, input.declared_degree),
        space: space.label().to_string(),
        degree_cap: f.cap(),
        norm_sq,
        norm: norm_sq.sqrt(),
        verdict: profile.verdict(),
        profile,
    })
}

impl Render for NormReport {
    fn csv(&self) -> String {
        self.profile.to_csv()
    }

    fn text(&self) -> String {
        let slope = self.profile.slope.map_or_else(|| "none".to_string(), num);
        format!(
            "space       {}\ndegree cap  {}\nnorm^2      {}\nnorm        {}\nslope       {}\nverdict     {}\n\n{}",
            self.space,
            self.degree_cap,
            num(self.norm_sq),
            num(self.norm),
            slope,
            self.verdict,
            self.profile.to_csv()
        )
    }
}
