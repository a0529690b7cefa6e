use serde::{Deserialize, Serialize};

use crate::code::{ArmstrongCode, Symbol};
use crate::error::{invalid, Error, Result};
use crate::galois::{field_make, Gf};

/// Ceiling on the number of rows `q^k`.
pub const RS_MAX_ROWS: u128 = 2_000_000;

/// What the extra coordinate of an extended Reed-Solomon codeword holds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfinityCoordinate {
    /// The coefficient of `X^{k-1}`; this keeps the code MDS.
    #[default]
    LeadingCoefficient,
    /// The coefficient of `X`. Only MDS for `k = 2`.
    LinearCoefficient,
}

/// Extended Reed-Solomon code: one row per polynomial of degree `< k` over
/// `GF(q)`, evaluated at every field element (in index order) plus one
/// coefficient. Rows are in lexicographic order of `(c_0, ..., c_{k-1})`.
pub fn rs_code(q: usize, k: usize, infinity: InfinityCoordinate) -> Result<ArmstrongCode> {
    if k < 2 || k >= q {
        return Err(invalid(format!("need 1 < k < q, got q={q}, k={k}")));
    }
    let rows = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if rows > RS_MAX_ROWS {
        return Err(Error::TooLarge {
            what: "row count q^k",
            size: rows,
            ceiling: RS_MAX_ROWS,
            hint: "choose smaller q or k",
        });
    }
    let field = field_make(q as u64)?;
    let extra = match infinity {
        InfinityCoordinate::LeadingCoefficient => k - 1,
        InfinityCoordinate::LinearCoefficient => 1,
    };
    let mut out = Vec::with_capacity(rows as usize);
    let mut coeffs = vec![Gf::ZERO; k];
    for _ in 0..rows {
        let mut row: Vec<Symbol> = field
            .elements()
            .map(|a| field.poly_eval(&coeffs, a).0 as Symbol)
            .collect();
        row.push(coeffs[extra].0 as Symbol);
        out.push(row);
        // odometer with c_{k-1} fastest
        for c in coeffs.iter_mut().rev() {
            c.0 += 1;
            if (c.0 as usize) < q {
                break;
            }
            c.0 = 0;
        }
    }
    ArmstrongCode::new(q, k, out)
}
