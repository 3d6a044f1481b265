//! Ranks, gonality sequences, Clifford indices, and the divisorial
//! completeness sweep, all driven by tableau existence.
//!
//! A degree-`d` divisor has rank at least `r` exactly when a compatible
//! tableau exists on `[(g-d+r) x (r+1)]`. Everything in this module reduces
//! to that criterion: ranks scan `r` upward until the first failure,
//! gonality numbers scan the shape width downward until the first success,
//! and the exact-rank search enumerates the finitely many position classes
//! a tableau can distinguish.

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{
    representing_divisor_discrete, torsion_of_discrete, DiscreteChain, PointPosition,
    RepresentingDivisor, TorsionProfile,
};
use crate::error::Error;
use crate::oracle::VertexDivisor;
use crate::tableau::{
    enumerate_tableaux, exists_compatible_tableau, DisplacementTableau, GridShape,
};

/// Rank of a divisor together with the tableau witnessing the top rank.
/// The witness is absent for rank -1 and empty in the Riemann-Roch regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub rank: i64,
    pub witness: Option<DisplacementTableau>,
}

/// Rank of a divisor on a metric chain, from its normal form.
///
/// Scans `r` upward; the first `r` whose shape admits no compatible tableau
/// stops the scan, which is sound because a witness for `r + 1` restricts to
/// one for `r`. Shapes with `g - d + r <= 0` succeed vacuously, so degrees
/// above `2g - 2` come out at rank `d - g` with no special case.
pub fn rank_metric(p: &TorsionProfile, div: &RepresentingDivisor) -> RankResult {
    let g = p.genus();
    let d = div.degree();
    if d < 0 {
        return RankResult {
            rank: -1,
            witness: None,
        };
    }
    let mut result = RankResult {
        rank: -1,
        witness: None,
    };
    let mut r = 0i64;
    loop {
        match exists_compatible_tableau(p, div, GridShape::for_rank(g, d, r)) {
            Some(t) => {
                result = RankResult {
                    rank: r,
                    witness: Some(t),
                };
                r += 1;
            }
            None => return result,
        }
        debug_assert!(r <= (d - g as i64).max(d / 2) + 1, "rank scan overran");
    }
}

/// Rank of a vertex divisor on a discrete chain: normalize, then apply the
/// metric criterion to the chain's torsion profile.
pub fn rank_discrete(chain: &DiscreteChain, divisor: &VertexDivisor) -> RankResult {
    let div = representing_divisor_discrete(chain, divisor);
    rank_metric(&torsion_of_discrete(chain), &div)
}

/// Gonality sequence `g_1, ..., g_rmax` with the derived gonality and
/// Clifford index (`gonality - 2` on any chain of cycles).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GonalityReport {
    pub genus: usize,
    /// `sequence[i]` is `g_{i+1}`.
    pub sequence: Vec<i64>,
    pub gonality: i64,
    pub clifford: i64,
}

impl GonalityReport {
    pub fn g_r(&self, r: usize) -> i64 {
        self.sequence[r - 1]
    }
}

/// Minimal degree of a rank-`r` divisor, for each `r` up to `r_max`.
///
/// `g_r` is the minimal `d` with a tableau on `[(g-d+r) x (r+1)]`; since a
/// tableau restricts to any narrower rectangle, the width is scanned
/// downward from `g - r` and the first hit gives `g_r = g + r - width`.
/// Positions never enter: any valid tableau prescribes positions achieving
/// it. No width works only when `r >= g`, where `g_r = g + r`.
pub fn gonality_sequence(p: &TorsionProfile, r_max: usize) -> GonalityReport {
    assert!(r_max >= 1, "r_max >= 1 violated");
    let g = p.genus();
    let sequence: Vec<i64> = (1..=r_max as i64)
        .map(|r| {
            let mut width = g as i64 - r;
            while width >= 1 {
                let shape = GridShape::new(width as usize, r as usize + 1);
                if enumerate_tableaux(p, shape).next().is_some() {
                    return g as i64 + r - width;
                }
                width -= 1;
            }
            g as i64 + r
        })
        .collect();
    let gonality = sequence[0];
    GonalityReport {
        genus: g,
        sequence,
        gonality,
        clifford: gonality - 2,
    }
}

/// Clifford index by its definition: the minimum of `d - 2r` over pairs
/// where a degree-`d` divisor of rank `>= r` exists, `r >= 1`, and
/// `g - d + r - 1 >= 1`. Cross-checked against `gonality - 2`, which a
/// known theorem makes an identity on chains of cycles; disagreement is
/// reported as an error since it can only mean a bug.
///
/// Needs `g >= 4`: below that the definitional constraint set can be empty.
pub fn clifford_index(p: &TorsionProfile) -> Result<i64, Error> {
    let g = p.genus() as i64;
    if g < 4 {
        return Err(Error::constraint(format!(
            "g >= 4 violated (g = {g}; the Clifford constraint set can be empty below genus 4)"
        )));
    }
    let mut definitional = None;
    for r in 1..=g - 2 {
        // minimal admissible d for this r; larger d only raises d - 2r
        for d in 0..=g + r - 2 {
            let width = g - d + r;
            if width < 2 || width + r > g {
                continue;
            }
            let shape = GridShape::new(width as usize, r as usize + 1);
            if enumerate_tableaux(p, shape).next().is_some() {
                let value = d - 2 * r;
                if definitional.is_none_or(|best| value < best) {
                    definitional = Some(value);
                }
                break;
            }
        }
    }
    let definitional = definitional.expect("gonality pair (d = g_1, r = 1) is admissible");
    let shortcut = gonality_sequence(p, 1).gonality - 2;
    if definitional != shortcut {
        return Err(Error::CliffordMismatch {
            definitional,
            shortcut,
        });
    }
    Ok(definitional)
}

/// Whether the gonality sequence satisfies the three clauses relating it to
/// the gonality: `g_r = g + r` for `r >= g`; `g_r = g - 1 + r` for
/// `g - g_1 + 1 <= r <= g - 1`; and `g_1 + 2r - 2 <= g_r <= g - 1 + r` for
/// `1 <= r <= g - g_1`. Checked on the computed sequence up to `r = g + 2`.
pub fn lemma_e1_bounds(p: &TorsionProfile) -> bool {
    let g = p.genus() as i64;
    let report = gonality_sequence(p, (g + 2) as usize);
    let g1 = report.gonality;
    for r in 1..=g + 2 {
        let gr = report.g_r(r as usize);
        if r >= g && gr != g + r {
            return false;
        }
        if (g - g1 + 1..=g - 1).contains(&r) && gr != g - 1 + r {
            return false;
        }
        if (1..=g - g1).contains(&r) && !(g1 + 2 * r - 2 <= gr && gr <= g - 1 + r) {
            return false;
        }
    }
    true
}

// Position classes a tableau can distinguish on cycle `i` when probing
// degree d at ranks r and r + 1. Cell displacements of the two shapes lie
// in [-(r+1), g-d+r]; an m = 0 class outside that window acts like a point
// in general position, and cycle 1 only ever faces the demand 0.
fn candidate_positions(p: &TorsionProfile, i: usize, d: i64, r: i64) -> Vec<PointPosition> {
    let mut out = vec![PointPosition::Generic];
    if i == 1 {
        out.push(PointPosition::IntegerClass(0));
        return out;
    }
    match p.torsion(i) {
        0 => out.extend((-(r + 1)..=p.genus() as i64 - d + r).map(PointPosition::IntegerClass)),
        m => out.extend((0..m as i64).map(PointPosition::IntegerClass)),
    }
    out
}

/// A divisor of degree `d` and rank exactly `r`, or `None` if no such
/// divisor exists. Searches the finite candidate space of position classes
/// for one admitting a compatible tableau on the rank-`r` shape but none on
/// the rank-`(r+1)` shape.
pub fn exists_rank_exactly(p: &TorsionProfile, d: i64, r: i64) -> Option<RepresentingDivisor> {
    assert!(r >= 0, "r >= 0 violated");
    let g = p.genus();
    if d < 0 {
        return None;
    }
    let upper = GridShape::for_rank(g, d, r + 1);
    if upper.is_empty() {
        // every divisor of this degree already has rank > r
        return None;
    }
    let lower = GridShape::for_rank(g, d, r);
    let choices: Vec<Vec<PointPosition>> =
        (1..=g).map(|i| candidate_positions(p, i, d, r)).collect();
    let mut idx = vec![0usize; g];
    loop {
        let positions: Vec<PointPosition> =
            idx.iter().zip(&choices).map(|(&c, opts)| opts[c]).collect();
        let div = RepresentingDivisor::new(d, positions);
        if exists_compatible_tableau(p, &div, lower).is_some()
            && exists_compatible_tableau(p, &div, upper).is_none()
        {
            return Some(div);
        }
        let mut pos = 0;
        loop {
            if pos == g {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// One `(d, r)` cell of the divisorial completeness sweep: `allowed` is
/// what the Riemann-Roch and Clifford restrictions permit, `realized` is
/// what the exact-rank search found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivCompleteCell {
    pub d: i64,
    pub r: i64,
    pub allowed: bool,
    pub realized: bool,
}

impl DivCompleteCell {
    pub fn pass(&self) -> bool {
        self.allowed == self.realized
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivCompleteReport {
    pub genus: usize,
    pub clifford: i64,
    pub cells: Vec<DivCompleteCell>,
    pub pass: bool,
}

// The four cases in which a degree-d rank-r divisor must exist on a
// divisorial complete graph of genus g and Clifford index c.
fn divisor_allowed(g: i64, c: i64, d: i64, r: i64) -> bool {
    (d >= g && r == d - g)
        || (0 <= d && d <= g && r == 0)
        || (g <= d && d <= 2 * g - 2 && r == d - g + 1)
        || (r >= 1 && c + 2 * r <= d && d <= g + r - 2)
}

/// Checks divisorial completeness over the whole grid `0 <= d <= 2g - 2`,
/// `0 <= r <= d/2 + 1`: every allowed cell must be realized by a divisor of
/// that exact degree and rank, and no forbidden cell may be. The `r` range
/// covers every allowed cell plus a margin, since rank never exceeds `d/2`
/// below degree `2g - 1`.
pub fn divisorial_complete_report(p: &TorsionProfile) -> DivCompleteReport {
    let g = p.genus() as i64;
    let clifford = gonality_sequence(p, 1).gonality - 2;
    let grid: Vec<(i64, i64)> = (0..=2 * g - 2)
        .flat_map(|d| (0..=d / 2 + 1).map(move |r| (d, r)))
        .collect();
    let cells: Vec<DivCompleteCell> = grid
        .par_iter()
        .map(|&(d, r)| DivCompleteCell {
            d,
            r,
            allowed: divisor_allowed(g, clifford, d, r),
            realized: exists_rank_exactly(p, d, r).is_some(),
        })
        .collect();
    let pass = cells.iter().all(|c| c.pass());
    DivCompleteReport {
        genus: p.genus(),
        clifford,
        cells,
        pass,
    }
}
