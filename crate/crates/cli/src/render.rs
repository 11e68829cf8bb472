use serde::Serialize;

use crate::{to_json, Format};

/// A report that can be written in every output format.
pub trait Render: Serialize {
    fn csv(&self) -> String;
    fn text(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }
}

/// Scientific notation with enough digits to round-trip.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}
