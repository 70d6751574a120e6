//! Exhaustive enumeration over all `k^n` colourings.
//!
//! This is the ground truth the solvers are tested against, so it shares
//! nothing with them beyond the graph type: images are computed here as
//! plain bitmasks and compared against the definitions directly.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::SolveError;
use crate::graph::Graph;
use crate::role::{complete_with_loops, role_graph_of, RoleColouring, RoleGraph};

#[derive(Clone, Copy, Debug)]
pub enum OracleQuery<'a> {
    /// Role colourings onto a fixed role graph.
    Role(&'a RoleGraph),
    /// Role colourings with exactly `k` colours and any role graph.
    KRole(usize),
    /// `k`-coupon colourings.
    KCoupon(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSolution {
    pub role: RoleGraph,
    pub colouring: RoleColouring,
}

/// Whether `k^n` colourings are small enough to enumerate: `n <= 16` for two
/// colours, `n <= 12` for three, and `k^n <= 3^12` otherwise.
pub fn within_guard(n: usize, k: usize) -> bool {
    match k {
        0 | 1 => n <= 64,
        2 => n <= 16,
        3 => n <= 12,
        _ => {
            let mut total: u64 = 1;
            for _ in 0..n {
                total = total.saturating_mul(k as u64);
            }
            total <= 531_441
        }
    }
}

pub fn brute_force_oracle(
    g: &Graph,
    query: OracleQuery<'_>,
    enumerate_all: bool,
) -> Result<Vec<OracleSolution>, SolveError> {
    let n = g.order();
    let k = match query {
        OracleQuery::Role(role) => role.order(),
        OracleQuery::KRole(k) | OracleQuery::KCoupon(k) => k,
    };
    if !within_guard(n, k) {
        return Err(SolveError::SizeGuard("k^n too large for exhaustive enumeration"));
    }
    let mut out = Vec::new();
    if k == 0 || k > n {
        return Ok(out);
    }
    let role_masks: Vec<u64> = match query {
        OracleQuery::Role(role) => {
            role.vertices().map(|c| role.neighbours(c).iter().fold(0, |m, &d| m | 1 << d)).collect()
        }
        _ => Vec::new(),
    };
    let all: u64 = if k == 64 { !0 } else { (1 << k) - 1 };
    let coupon_role = match query {
        OracleQuery::KCoupon(k) => Some(complete_with_loops(k)),
        _ => None,
    };

    let mut colours = vec![0usize; n];
    let mut img = vec![0u64; n];
    loop {
        let used = colours.iter().fold(0u64, |m, &c| m | 1 << c);
        if used == all {
            for (v, m) in img.iter_mut().enumerate() {
                *m = g.neighbours(v).iter().fold(0, |m, &w| m | 1 << colours[w]);
            }
            let accepted = match query {
                OracleQuery::Role(_) => (0..n).all(|v| img[v] == role_masks[colours[v]]),
                OracleQuery::KCoupon(_) => img.iter().all(|&m| m == all),
                OracleQuery::KRole(_) => {
                    let mut class_image = vec![None; k];
                    (0..n).all(|v| match class_image[colours[v]] {
                        None => {
                            class_image[colours[v]] = Some(img[v]);
                            true
                        }
                        Some(m) => m == img[v],
                    })
                }
            };
            if accepted {
                let colouring = RoleColouring::new(colours.clone());
                let role = match query {
                    OracleQuery::Role(role) => role.clone(),
                    OracleQuery::KCoupon(_) => coupon_role.clone().expect("set for coupon"),
                    OracleQuery::KRole(_) => role_graph_of(g, &colouring),
                };
                out.push(OracleSolution { role, colouring });
                if !enumerate_all {
                    return Ok(out);
                }
            }
        }
        // Odometer step, vertex 0 least significant.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            colours[i] += 1;
            if colours[i] < k {
                break;
            }
            colours[i] = 0;
            i += 1;
        }
    }
}

/// `true` when at least one solution exists.
pub fn oracle_exists(g: &Graph, query: OracleQuery<'_>) -> Result<bool, SolveError> {
    Ok(!brute_force_oracle(g, query, false)?.is_empty())
}
