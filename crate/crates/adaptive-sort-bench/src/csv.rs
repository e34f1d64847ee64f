//! CSV emission for measured rows.

use std::io::{self, Write};

use crate::experiment::ExperimentRow;

pub const CSV_HEADER: &str = "algo,profile,n,S,seed,comparisons,moves,merge_cost,entropy_bits,peak_extra_words,max_stack_height,wall_time_ns";

/// Writes the header plus one line per row; integers in decimal, entropy with
/// six fractional digits, every line newline-terminated.
pub fn emit_csv<W: Write>(rows: &[ExperimentRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.6},{},{},{}",
            row.algo,
            row.profile,
            row.n,
            row.presort,
            row.seed,
            row.comparisons,
            row.moves,
            row.merge_cost,
            row.entropy_bits,
            row.peak_extra_words,
            row.max_stack_height,
            row.wall_time_ns,
        )?;
    }
    Ok(())
}
