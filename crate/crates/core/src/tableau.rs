//! Displacement tableaux: representation, validation, enumeration.
//!
//! A tableau on the rectangle `[m x n]` fills every cell with a value in
//! `{1..g}`, strictly increasing along rows and columns. Repeats of a value
//! `v` are allowed only on cells whose displacement `x - y` is constant mod
//! `m_v`, the torsion of cycle `v`; torsion 0 demands exact equality. Such a
//! filling on `[(g-d+r) x (r+1)]` is the combinatorial witness that some
//! degree-`d` divisor has rank at least `r`, and the per-cell displacement
//! pins down where the divisor's points must sit.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::chain::{PointPosition, RepresentingDivisor, TorsionProfile};

/// Congruence mod `m`, with mod 0 meaning integer equality.
pub(crate) fn congruent(a: i64, b: i64, m: u32) -> bool {
    if m == 0 {
        a == b
    } else {
        (a - b).rem_euclid(m as i64) == 0
    }
}

/// Rectangle `[cols x rows]`; zero columns is the empty shape, which every
/// profile admits (the vacuous witness of the Riemann-Roch regime).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridShape {
    pub cols: usize,
    pub rows: usize,
}

impl GridShape {
    pub fn new(cols: usize, rows: usize) -> Self {
        assert!(rows >= 1, "a shape has at least one row");
        GridShape { cols, rows }
    }

    /// Shape whose tableaux witness rank >= `r` in degree `d` on genus `g`:
    /// `[(g-d+r) x (r+1)]`, clamped to empty when `g - d + r <= 0`.
    pub fn for_rank(g: usize, d: i64, r: i64) -> Self {
        assert!(r >= 0);
        let cols = (g as i64 - d + r).max(0) as usize;
        GridShape::new(cols, r as usize + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.cols == 0
    }

    pub fn cell_count(&self) -> usize {
        self.cols * self.rows
    }
}

/// A filled grid. Cells are addressed by 1-based `(x, y)` with `x` the
/// column and `y` the row; storage is column-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisplacementTableau {
    shape: GridShape,
    values: Vec<u32>,
}

impl DisplacementTableau {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        assert!(n >= 1, "a tableau has at least one row");
        let m = rows[0].len();
        assert!(
            rows.iter().all(|r| r.len() == m),
            "rows must be rectangular"
        );
        let mut values = vec![0u32; m * n];
        for (y, row) in rows.iter().enumerate() {
            for (x, &v) in row.iter().enumerate() {
                values[x * n + y] = v;
            }
        }
        DisplacementTableau {
            shape: GridShape::new(m, n),
            values,
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    /// Value at column `x`, row `y` (1-based).
    pub fn value(&self, x: usize, y: usize) -> u32 {
        self.values[(x - 1) * self.shape.rows + (y - 1)]
    }

    pub fn rows_vec(&self) -> Vec<Vec<u32>> {
        (1..=self.shape.rows)
            .map(|y| (1..=self.shape.cols).map(|x| self.value(x, y)).collect())
            .collect()
    }

    /// All cells as `(x, y, value)`, column-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let rows = self.shape.rows;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i / rows + 1, i % rows + 1, v))
    }
}

impl fmt::Display for DisplacementTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape.is_empty() {
            return write!(f, "(empty)");
        }
        let width = self.values.iter().max().map_or(1, |v| v.to_string().len());
        for y in 1..=self.shape.rows {
            for x in 1..=self.shape.cols {
                if x > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.value(x, y))?;
            }
            if y < self.shape.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for DisplacementTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TableauRepr {
            cols: self.shape.cols,
            rows: self.shape.rows,
            values: self.rows_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DisplacementTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TableauRepr::deserialize(deserializer)?;
        if repr.rows == 0 {
            return Err(D::Error::custom("a tableau has at least one row"));
        }
        if repr.values.len() != repr.rows || repr.values.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom(format!(
                "values must form a {} x {} row-major grid",
                repr.rows, repr.cols
            )));
        }
        if repr.values.iter().flatten().any(|&v| v == 0) {
            return Err(D::Error::custom("tableau values start at 1"));
        }
        Ok(DisplacementTableau::from_rows(repr.values))
    }
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    cols: usize,
    rows: usize,
    values: Vec<Vec<u32>>,
}

/// Full re-check of the tableau conditions against a profile: values in
/// range, strict increase along rows and columns, and the displacement
/// congruence on every pair of equal values. Quadratic and independent of
/// the enumerator's incremental bookkeeping, deliberately.
pub fn is_valid_tableau(t: &DisplacementTableau, p: &TorsionProfile) -> bool {
    let g = p.genus() as u32;
    for (x, y, v) in t.cells() {
        if v < 1 || v > g {
            return false;
        }
        if x > 1 && t.value(x - 1, y) >= v {
            return false;
        }
        if y > 1 && t.value(x, y - 1) >= v {
            return false;
        }
        for (x2, y2, v2) in t.cells() {
            if v2 == v && (x2, y2) != (x, y) {
                let d1 = x as i64 - y as i64;
                let d2 = x2 as i64 - y2 as i64;
                if !congruent(d1, d2, p.torsion(v as usize)) {
                    return false;
                }
            }
        }
    }
    true
}

/// The two-row tableau `t(x, y) = x + y - 1` on `[(g-1) x 2]`, valid for
/// every all-2 profile; the source of all two-row tableaux by deletion.
pub fn hyperelliptic_tableau(g: usize) -> DisplacementTableau {
    assert!(g >= 2, "g >= 2 violated");
    DisplacementTableau::from_rows(vec![(1..=g as u32 - 1).collect(), (2..=g as u32).collect()])
}

/// Constraint a divisor position puts on cells holding one value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Allow {
    /// Unconstrained (plain enumeration).
    Any,
    /// The value may not appear at all (point in general position).
    Never,
    /// Displacement must equal this exactly (torsion 0).
    Exact(i64),
    /// Displacement must be congruent mod the torsion.
    Modulo(i64, u32),
}

impl Allow {
    fn admits(self, d: i64) -> bool {
        match self {
            Allow::Any => true,
            Allow::Never => false,
            Allow::Exact(c) => d == c,
            Allow::Modulo(c, m) => congruent(d, c, m),
        }
    }
}

/// Backtracking enumerator of valid tableaux, lazily and in lexicographic
/// column-major order. Cells are filled column by column; a placement is
/// pruned by the row/column bounds `x+y-1 <= t(x,y) <= g-(cols-x)-(rows-y)`,
/// the per-value demand, and congruence with the value's first occurrence.
pub struct TableauIter<'a> {
    profile: &'a TorsionProfile,
    shape: GridShape,
    allow: Vec<Allow>,
    // cell state, column-major; 0 marks an unfilled cell
    vals: Vec<u32>,
    diff: Vec<i64>,
    // per value: occurrences on the board and the first displacement
    count: Vec<u32>,
    first: Vec<i64>,
    cursor: usize,
    done: bool,
}

impl<'a> TableauIter<'a> {
    fn new(profile: &'a TorsionProfile, shape: GridShape, allow: Vec<Allow>) -> Self {
        debug_assert_eq!(allow.len(), profile.genus() + 1);
        let cells = shape.cell_count();
        let rows = shape.rows;
        let diff = (0..cells)
            .map(|i| (i / rows) as i64 - (i % rows) as i64)
            .collect();
        TableauIter {
            profile,
            shape,
            allow,
            vals: vec![0; cells],
            diff,
            count: vec![0; profile.genus() + 1],
            first: vec![0; profile.genus() + 1],
            cursor: 0,
            done: false,
        }
    }

    fn bounds(&self, i: usize) -> (u32, u32) {
        let rows = self.shape.rows;
        let (x, y) = (i / rows + 1, i % rows + 1);
        let mut lb = (x + y - 1) as u32;
        if x > 1 {
            lb = lb.max(self.vals[i - rows] + 1);
        }
        if y > 1 {
            lb = lb.max(self.vals[i - 1] + 1);
        }
        let slack = (self.shape.cols - x) + (rows - y);
        let g = self.profile.genus();
        let ub = if g > slack { (g - slack) as u32 } else { 0 };
        (lb, ub)
    }

    fn admissible(&self, i: usize, v: u32) -> bool {
        if !self.allow[v as usize].admits(self.diff[i]) {
            return false;
        }
        let c = self.count[v as usize];
        c == 0
            || congruent(
                self.diff[i],
                self.first[v as usize],
                self.profile.torsion(v as usize),
            )
    }

    fn snapshot(&self) -> DisplacementTableau {
        DisplacementTableau {
            shape: self.shape,
            values: self.vals.clone(),
        }
    }
}

impl Iterator for TableauIter<'_> {
    type Item = DisplacementTableau;

    fn next(&mut self) -> Option<DisplacementTableau> {
        if self.done {
            return None;
        }
        let cells = self.shape.cell_count();
        if cells == 0 {
            self.done = true;
            return Some(self.snapshot());
        }
        let mut i = self.cursor;
        loop {
            if i == cells {
                // full board: emit, then resume by advancing the last cell
                self.cursor = cells - 1;
                return Some(self.snapshot());
            }
            let (lb, ub) = self.bounds(i);
            let start = if self.vals[i] != 0 {
                let v = self.vals[i] as usize;
                self.count[v] -= 1;
                self.vals[i] + 1
            } else {
                lb
            };
            let mut placed = false;
            for v in start.max(lb)..=ub {
                if self.admissible(i, v) {
                    if self.count[v as usize] == 0 {
                        self.first[v as usize] = self.diff[i];
                    }
                    self.count[v as usize] += 1;
                    self.vals[i] = v;
                    placed = true;
                    break;
                }
            }
            if placed {
                i += 1;
            } else {
                self.vals[i] = 0;
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
            }
        }
    }
}

/// Every valid tableau of the given shape, lazily.
pub fn enumerate_tableaux<'a>(p: &'a TorsionProfile, shape: GridShape) -> TableauIter<'a> {
    TableauIter::new(p, shape, vec![Allow::Any; p.genus() + 1])
}

/// First tableau compatible with the given divisor positions: cell `(x, y)`
/// holding value `v` requires the point on cycle `v` to be the integer class
/// `x - y` mod its torsion, and a cycle in general position may not appear.
/// `None` when no witness exists; the empty shape always succeeds.
pub fn exists_compatible_tableau(
    p: &TorsionProfile,
    div: &RepresentingDivisor,
    shape: GridShape,
) -> Option<DisplacementTableau> {
    assert_eq!(div.genus(), p.genus(), "divisor and profile genus mismatch");
    let allow = std::iter::once(Allow::Never)
        .chain((1..=p.genus()).map(|v| match div.position(v) {
            PointPosition::Generic => Allow::Never,
            PointPosition::IntegerClass(c) => {
                let m = p.torsion(v);
                if m == 0 {
                    Allow::Exact(c)
                } else {
                    Allow::Modulo(c.rem_euclid(m as i64), m)
                }
            }
        }))
        .collect();
    TableauIter::new(p, shape, allow).next()
}

/// All valid two-row tableaux on `[(g-l-1) x 2]`, produced by deleting `l`
/// values from each row of the hyperelliptic tableau, compacting, and
/// keeping the valid results. Distinct deletion pairs give distinct row
/// contents, so no deduplication is needed.
pub fn two_row_by_deletion(p: &TorsionProfile, l: usize) -> Vec<DisplacementTableau> {
    let g = p.genus();
    assert!(g >= 2, "g >= 2 violated");
    assert!(l <= g - 2, "l <= g - 2 violated (l = {l}, g = {g})");
    let full = hyperelliptic_tableau(g);
    let source = full.rows_vec();
    let picks = subsets(g - 1, g - 1 - l);
    let mut out = Vec::new();
    for keep_top in &picks {
        for keep_bottom in &picks {
            let rows = vec![
                keep_top.iter().map(|&i| source[0][i]).collect(),
                keep_bottom.iter().map(|&i| source[1][i]).collect(),
            ];
            let t = DisplacementTableau::from_rows(rows);
            if is_valid_tableau(&t, p) {
                out.push(t);
            }
        }
    }
    out
}

// All sorted k-subsets of 0..n, lexicographically.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let needed = k - cur.len();
        for i in from..=n - needed {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}
