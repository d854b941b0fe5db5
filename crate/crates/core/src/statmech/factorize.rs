use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default ceiling on `n` for exhaustive enumeration.
pub const DEFAULT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorMode {
    /// No factor repeated (fermionic states).
    Distinct,
    /// Factors may repeat (bosonic states).
    WithRepeats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub n: u64,
    pub mode: FactorMode,
    pub count: usize,
    /// Each factorization sorted descending; longer ones first, then
    /// lexicographically descending.
    pub listing: Vec<Vec<u64>>,
}

/// All unordered factorizations of `n` into factors `>= 2`, including `{n}`.
pub fn count_factorizations(n: u64, mode: FactorMode) -> Result<FactorizationReport> {
    count_factorizations_with_limit(n, mode, DEFAULT_LIMIT)
}

pub fn count_factorizations_with_limit(n: u64, mode: FactorMode, limit: u64) -> Result<FactorizationReport> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    if n > limit {
        return Err(Error::Resource(format!("n = {n} exceeds the enumeration ceiling {limit}")));
    }
    let mut listing = Vec::new();
    let mut stack = Vec::new();
    descend(n, n, mode, &mut stack, &mut listing);
    listing.sort_by(|a: &Vec<u64>, b: &Vec<u64>| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
    Ok(FactorizationReport { n, mode, count: listing.len(), listing })
}

/// Extend `stack` with factors of `rest` no larger than `max_factor`
/// (strictly smaller in distinct mode), keeping each multiset descending.
fn descend(rest: u64, max_factor: u64, mode: FactorMode, stack: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if rest == 1 {
        out.push(stack.clone());
        return;
    }
    let top = max_factor.min(rest);
    for f in (2..=top).rev() {
        if rest % f != 0 {
            continue;
        }
        let next_max = match mode {
            FactorMode::Distinct => f - 1,
            FactorMode::WithRepeats => f,
        };
        stack.push(f);
        descend(rest / f, next_max, mode, stack, out);
        stack.pop();
    }
}
