//! Line-delimited JSON run reports.
//!
//! A report is one JSON object per line: a header, one line per applied
//! move, and a footer. The format is self-describing (`schema` field) and
//! round-trips losslessly, so runs can be archived and re-verified.

use serde::{Deserialize, Serialize};

use crate::driver::RunStats;
use crate::model::Tour;

use super::IoError;

/// Schema identifier carried in every report header.
pub const REPORT_SCHEMA: &str = "fouropt.run-report.v1";

/// One applied move, in position space of the tour it was applied to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    /// 1-based step number.
    pub iteration: usize,
    /// Catalog id of the reinsertion scheme (1..=25).
    pub scheme_id: u8,
    /// The four cut positions, strictly increasing.
    pub selection: [usize; 4],
    /// Length improvement achieved by the move.
    pub gain: f64,
    /// Milliseconds spent finding the move.
    pub search_ms: f64,
}

/// Complete record of one local-search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub instance: String,
    pub n: usize,
    pub engine: String,
    pub initial_length: f64,
    pub final_length: f64,
    pub iterations: usize,
    pub moves: Vec<MoveRecord>,
    pub final_tour: Vec<usize>,
}

/// One line of a serialized report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum ReportLine {
    Header {
        schema: String,
        instance: String,
        n: usize,
        engine: String,
        initial_length: f64,
    },
    Move(MoveRecord),
    Footer {
        final_length: f64,
        iterations: usize,
        final_tour: Vec<usize>,
    },
}

impl RunReport {
    /// Assemble a report from a finished run.
    pub fn from_run(instance: &str, n: usize, stats: &RunStats, final_tour: &Tour) -> RunReport {
        let moves = stats
            .applied
            .iter()
            .enumerate()
            .map(|(k, a)| MoveRecord {
                iteration: k + 1,
                scheme_id: a.mv.scheme.id(),
                selection: a.mv.selection.positions(),
                gain: a.mv.gain,
                search_ms: a.search_time.as_secs_f64() * 1e3,
            })
            .collect();
        RunReport {
            schema: REPORT_SCHEMA.to_string(),
            instance: instance.to_string(),
            n,
            engine: stats.engine.name().to_string(),
            initial_length: stats.initial_length,
            final_length: stats.final_length,
            iterations: stats.iterations,
            moves,
            final_tour: final_tour.order().to_vec(),
        }
    }

    /// Serialize as line-delimited JSON (header, moves, footer).
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        let header = ReportLine::Header {
            schema: self.schema.clone(),
            instance: self.instance.clone(),
            n: self.n,
            engine: self.engine.clone(),
            initial_length: self.initial_length,
        };
        out.push_str(&serde_json::to_string(&header).expect("report lines serialize"));
        out.push('\n');
        for mv in &self.moves {
            out.push_str(
                &serde_json::to_string(&ReportLine::Move(mv.clone()))
                    .expect("report lines serialize"),
            );
            out.push('\n');
        }
        let footer = ReportLine::Footer {
            final_length: self.final_length,
            iterations: self.iterations,
            final_tour: self.final_tour.clone(),
        };
        out.push_str(&serde_json::to_string(&footer).expect("report lines serialize"));
        out.push('\n');
        out
    }

    /// Parse line-delimited JSON back into a report, validating structure.
    pub fn parse_lines(text: &str) -> Result<RunReport, IoError> {
        let bad = |msg: String| IoError::Report(msg);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines.next().ok_or_else(|| bad("empty report".into()))?;
        let header: ReportLine =
            serde_json::from_str(first).map_err(|e| bad(format!("bad header line: {e}")))?;
        let ReportLine::Header {
            schema,
            instance,
            n,
            engine,
            initial_length,
        } = header
        else {
            return Err(bad("first line must be the header".into()));
        };
        if schema != REPORT_SCHEMA {
            return Err(bad(format!(
                "unknown schema {schema:?}, expected {REPORT_SCHEMA:?}"
            )));
        }
        let mut moves = Vec::new();
        let mut footer = None;
        for (k, line) in lines.enumerate() {
            if footer.is_some() {
                return Err(bad("content after the footer".into()));
            }
            let parsed: ReportLine =
                serde_json::from_str(line).map_err(|e| bad(format!("bad line {}: {e}", k + 2)))?;
            match parsed {
                ReportLine::Header { .. } => return Err(bad("duplicate header".into())),
                ReportLine::Move(mv) => {
                    if mv.iteration != moves.len() + 1 {
                        return Err(bad(format!(
                            "move lines out of order: expected iteration {}, got {}",
                            moves.len() + 1,
                            mv.iteration
                        )));
                    }
                    moves.push(mv);
                }
                ReportLine::Footer {
                    final_length,
                    iterations,
                    final_tour,
                } => {
                    footer = Some((final_length, iterations, final_tour));
                }
            }
        }
        let (final_length, iterations, final_tour) =
            footer.ok_or_else(|| bad("missing footer".into()))?;
        if iterations != moves.len() {
            return Err(bad(format!(
                "footer says {iterations} iterations but {} moves are recorded",
                moves.len()
            )));
        }
        Ok(RunReport {
            schema,
            instance,
            n,
            engine,
            initial_length,
            final_length,
            iterations,
            moves,
            final_tour,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::{local_search, EngineChoice};
    use crate::io::random::random_matrix;

    fn sample_report() -> RunReport {
        let costs = random_matrix(12, 1000, 6);
        let start = Tour::canonical(12);
        let (tour, stats) = local_search(&costs, &start, EngineChoice::DeBerg, None).unwrap();
        RunReport::from_run("random-matrix:12,max=1000,seed=6", 12, &stats, &tour)
    }

    #[test]
    fn round_trips_losslessly() {
        let report = sample_report();
        assert!(report.iterations > 0, "sample run should apply moves");
        let text = report.to_lines();
        assert_eq!(text.lines().count(), report.iterations + 2);
        let back = RunReport::parse_lines(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn lines_are_tagged_records() {
        let report = sample_report();
        let text = report.to_lines();
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["record"], "header");
        assert_eq!(first["schema"], REPORT_SCHEMA);
        let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
        assert_eq!(last["record"], "footer");
    }

    #[test]
    fn rejects_structural_damage() {
        let report = sample_report();
        let text = report.to_lines();
        // wrong schema
        let broken = text.replacen("run-report.v1", "run-report.v9", 1);
        assert!(RunReport::parse_lines(&broken).is_err());
        // missing footer
        let lines: Vec<&str> = text.lines().collect();
        let no_footer = lines[..lines.len() - 1].join("\n");
        assert!(RunReport::parse_lines(&no_footer).is_err());
        // missing a move line breaks both numbering and the footer count
        let mut missing_move = lines.clone();
        missing_move.remove(1);
        assert!(RunReport::parse_lines(&missing_move.join("\n")).is_err());
        // header must come first
        let mut swapped = lines.clone();
        swapped.swap(0, 1);
        assert!(RunReport::parse_lines(&swapped.join("\n")).is_err());
        assert!(RunReport::parse_lines("").is_err());
    }
}
