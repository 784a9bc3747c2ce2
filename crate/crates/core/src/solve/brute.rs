use super::{Certificate, SolveResult, SolverKind, Stopwatch};
use crate::cover::CoverGraph;
use crate::error::{Error, Result};
use crate::functional::{delta_energy, sheets_energy, Labeling};

/// Global minimum over every labeling with the Dirichlet collar, by
/// odometer enumeration of the non-collar cells. The last cell turns
/// fastest, so states come in lexicographic order and the first minimum
/// found is the lexicographically smallest.
pub fn brute_force(cover: &CoverGraph, max_states: u64) -> Result<SolveResult> {
    let clock = Stopwatch::start();
    let cells = cover.interior_cells();
    let d = cover.degree as u8;
    let states = (d as u64)
        .checked_pow(cells.len() as u32)
        .filter(|&n| n <= max_states);
    if states.is_none() {
        return Err(Error::StateLimit {
            states: format!("{d}^{}", cells.len()),
            limit: max_states,
        });
    }
    let mut s = Labeling::dirichlet(cover).sheets().to_vec();
    for &c in &cells {
        s[c] = 0;
    }
    let mut e = sheets_energy(&s, cover);
    let mut best = (e, s.clone());
    'outer: loop {
        let mut k = cells.len();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            let c = cells[k];
            let next = if s[c] + 1 < d { s[c] + 1 } else { 0 };
            e += delta_energy(&s, cover, c, next);
            s[c] = next;
            if next != 0 {
                break;
            }
        }
        if e < best.0 {
            best = (e, s.clone());
        }
    }
    let labeling = Labeling::from_sheets(best.1, cover.degree)?;
    SolveResult::new(cover, labeling, SolverKind::Brute, Certificate::Exact, 0, clock)
}
