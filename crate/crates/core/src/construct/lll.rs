use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::{verify_st_armstrong_with, ArmstrongCode, Limits, Symbol};
use crate::combin::{binomial_u128, Combinations};
use crate::construct::DEFAULT_MAX_CELLS;
use crate::error::{invalid, Error, Result};

/// `t+1` codewords that agree exactly on the column set `positions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LllBlock {
    pub positions: Vec<usize>,
    pub rows: Vec<Vec<Symbol>>,
}

/// Draws one block per `(k-1)`-subset of the `n` columns: a uniform common
/// symbol on each column of the subset, and `t+1` distinct symbols (an
/// ordered uniform sample without replacement) on every other column.
pub struct LllSampler {
    q: usize,
    t: usize,
    n: usize,
    subsets: Vec<Vec<usize>>,
    rng: ChaCha8Rng,
}

impl LllSampler {
    pub fn new(q: usize, k: usize, t: usize, n: usize, seed: u64) -> Result<Self> {
        check_params(q, k, t, n)?;
        Ok(LllSampler {
            q,
            t,
            n,
            subsets: Combinations::new(n, k - 1).collect(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn sample(&mut self) -> Vec<LllBlock> {
        let mut blocks = Vec::with_capacity(self.subsets.len());
        for positions in &self.subsets {
            let mut rows = vec![vec![0 as Symbol; self.n]; self.t + 1];
            let mut inside = positions.iter().peekable();
            for col in 0..self.n {
                if inside.peek() == Some(&&col) {
                    inside.next();
                    let s = self.rng.gen_range(0..self.q) as Symbol;
                    rows.iter_mut().for_each(|r| r[col] = s);
                } else {
                    let picks = sample(&mut self.rng, self.q, self.t + 1);
                    for (r, s) in rows.iter_mut().zip(picks.iter()) {
                        r[col] = s as Symbol;
                    }
                }
            }
            blocks.push(LllBlock {
                positions: positions.clone(),
                rows,
            });
        }
        blocks
    }
}

fn check_params(q: usize, k: usize, t: usize, n: usize) -> Result<()> {
    if k < 2 || t < 1 || n <= k || q <= t {
        return Err(invalid(format!(
            "need k >= 2, t >= 1, n > k and q > t; got q={q}, k={k}, t={t}, n={n}"
        )));
    }
    if q > Symbol::MAX as usize {
        return Err(invalid(format!("q={q} exceeds the symbol range")));
    }
    let rows = binomial_u128(n as u64, (k - 1) as u64).saturating_mul((t + 1) as u128);
    let cells = rows.saturating_mul(n as u128);
    if cells > DEFAULT_MAX_CELLS {
        return Err(Error::TooLarge {
            what: "cell count (t+1) C(n,k-1) n",
            size: cells,
            ceiling: DEFAULT_MAX_CELLS,
            hint: "choose a smaller n or k",
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LllOutcome {
    #[serde(skip)]
    pub code: Option<ArmstrongCode>,
    pub attempts: u64,
    pub duplicate_rows: u64,
    pub failed_condition_i: u64,
    pub failed_condition_ii: u64,
}

/// Samples up to `retry_budget` codes and returns the first one passing the
/// generalized verifier with `s = 1`.
pub fn random_lll_code(
    q: usize,
    k: usize,
    t: usize,
    n: usize,
    seed: u64,
    retry_budget: u64,
) -> Result<LllOutcome> {
    random_lll_code_with(q, k, t, n, seed, retry_budget, &Limits::default())
}

pub fn random_lll_code_with(
    q: usize,
    k: usize,
    t: usize,
    n: usize,
    seed: u64,
    retry_budget: u64,
    limits: &Limits,
) -> Result<LllOutcome> {
    let mut sampler = LllSampler::new(q, k, t, n, seed)?;
    let mut out = LllOutcome {
        code: None,
        attempts: 0,
        duplicate_rows: 0,
        failed_condition_i: 0,
        failed_condition_ii: 0,
    };
    while out.attempts < retry_budget {
        out.attempts += 1;
        let rows: Vec<Vec<Symbol>> = sampler.sample().into_iter().flat_map(|b| b.rows).collect();
        let code = match ArmstrongCode::with_dependency(q, k, 1, t, rows) {
            Ok(c) => c,
            Err(Error::Structural(_)) => {
                out.duplicate_rows += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let report = verify_st_armstrong_with(&code, None, limits)?;
        if report.passed {
            out.code = Some(code);
            break;
        }
        if !report.condition_i {
            out.failed_condition_i += 1;
        } else {
            out.failed_condition_ii += 1;
        }
    }
    Ok(out)
}
