use super::SampleRecord;
use crate::error::{Error, Result};
use crate::povm::OutcomePoint;
use crate::scalar::Real;

/// One record per line: `component<TAB>outcome<TAB>c0,c1,...` with
/// coordinates in `{:.16e}` (17 significant digits).
pub fn format_samples<T: Real>(records: &[SampleRecord<T>]) -> String {
    let mut out = String::with_capacity(records.len() * 32);
    for r in records {
        let coords: Vec<String> = r
            .outcome_point
            .coordinates
            .iter()
            .map(|c| format!("{:.16e}", c.to_f64_lossy()))
            .collect();
        out.push_str(&format!("{}\t{}\t{}\n", r.component_index, r.outcome_index, coords.join(",")));
    }
    out
}

pub fn parse_samples<T: Real>(text: &str) -> Result<Vec<SampleRecord<T>>, T> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, line)| {
            let bad = |what: &str| Error::InvalidInput(format!("sample line {}: {what}", n + 1));
            let mut fields = line.split('\t');
            let x = fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| bad("component index"))?;
            let i = fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| bad("outcome index"))?;
            let coords = fields.next().ok_or_else(|| bad("missing coordinates"))?;
            if fields.next().is_some() {
                return Err(bad("too many fields"));
            }
            let coordinates = coords
                .split(',')
                .map(|c| c.parse::<f64>().map(T::of).map_err(|_| bad("coordinate")))
                .collect::<Result<Vec<T>, T>>()?;
            Ok(SampleRecord {
                component_index: x,
                outcome_index: i,
                outcome_point: OutcomePoint::new(coordinates),
            })
        })
        .collect()
}
