//! Row-convex shapes: rows are gapless column intervals, sorted so that
//! higher rows end at least as far to the right as lower rows.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RowInterval {
    pub start: u32,
    pub end: u32,
}

impl RowInterval {
    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn columns(&self) -> impl Iterator<Item = u32> {
        self.start..=self.end
    }

    pub fn contains(&self, column: u32) -> bool {
        self.start <= column && column <= self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RowConvexShape {
    rows: Vec<RowInterval>,
}

/// Build a shape from `(start, end)` intervals. Rows are stably sorted by
/// descending end column; the returned permutation maps sorted positions to
/// input positions so tableau rows can be re-mapped by callers.
pub fn make_shape(row_intervals: &[(u32, u32)]) -> Result<(RowConvexShape, Vec<usize>)> {
    if row_intervals.is_empty() {
        return Err(Error::EmptyShape);
    }
    for (i, &(start, end)) in row_intervals.iter().enumerate() {
        if start == 0 || start > end {
            return Err(Error::EmptyRow {
                index: i,
                start,
                end,
            });
        }
    }
    let mut perm: Vec<usize> = (0..row_intervals.len()).collect();
    perm.sort_by_key(|&i| std::cmp::Reverse(row_intervals[i].1));
    let rows = perm
        .iter()
        .map(|&i| RowInterval {
            start: row_intervals[i].0,
            end: row_intervals[i].1,
        })
        .collect();
    Ok((RowConvexShape { rows }, perm))
}

impl RowConvexShape {
    pub fn rows(&self) -> &[RowInterval] {
        &self.rows
    }

    pub fn row(&self, index: usize) -> RowInterval {
        self.rows[index]
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cells(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn max_column(&self) -> u32 {
        self.rows.iter().map(|r| r.end).max().unwrap_or(0)
    }

    pub fn min_column(&self) -> u32 {
        self.rows.iter().map(|r| r.start).min().unwrap_or(0)
    }

    pub fn contains(&self, row: usize, column: u32) -> bool {
        row < self.rows.len() && self.rows[row].contains(column)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.columns().map(move |j| (i, j)))
    }

    /// Occupied columns, ascending, without repeats.
    pub fn columns(&self) -> Vec<u32> {
        let mut cols: Vec<u32> = self.cells().map(|(_, j)| j).collect();
        cols.sort_unstable();
        cols.dedup();
        cols
    }

    /// Rows meeting a column, from top to bottom.
    pub fn column_rows(&self, column: u32) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.rows[i].contains(column))
            .collect()
    }

    /// Cells in the frame order: down each column, leftmost column first.
    pub fn frame_cells(&self) -> Vec<(usize, u32)> {
        let mut cells = Vec::with_capacity(self.n_cells());
        for j in self.columns() {
            for i in self.column_rows(j) {
                cells.push((i, j));
            }
        }
        cells
    }

    /// Whether the shape is skew: row starts weakly decrease going down.
    pub fn is_skew(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].start >= w[1].start)
    }

    /// The shape with each row replaced by `k` adjacent copies of itself.
    pub fn power(&self, k: usize) -> RowConvexShape {
        let rows = self
            .rows
            .iter()
            .flat_map(|r| std::iter::repeat(*r).take(k))
            .collect();
        RowConvexShape { rows }
    }

    /// Remove a set of cells, dropping rows that become empty. Only leftmost
    /// blocks of rows may be removed, so rows stay gapless.
    pub fn remove_cells(&self, cells: &std::collections::BTreeSet<(usize, u32)>) -> Result<RowConvexShape> {
        let mut rows = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let removed: Vec<u32> = r.columns().filter(|&j| cells.contains(&(i, j))).collect();
            if removed.len() == r.len() {
                continue;
            }
            // removed cells must form a prefix of the row
            let expect: Vec<u32> = (r.start..r.start + removed.len() as u32).collect();
            if removed != expect {
                return Err(Error::BadSpec {
                    reason: format!("cells removed from row {i} are not a leftmost block"),
                });
            }
            rows.push(RowInterval {
                start: r.start + removed.len() as u32,
                end: r.end,
            });
        }
        if rows.is_empty() {
            return Ok(RowConvexShape { rows });
        }
        Ok(RowConvexShape { rows })
    }

    /// An empty shape (no rows). Valid only as a quotient; `make_shape`
    /// rejects it on input.
    pub fn empty() -> RowConvexShape {
        RowConvexShape { rows: Vec::new() }
    }

    pub fn from_sorted_rows_unchecked(rows: Vec<RowInterval>) -> RowConvexShape {
        debug_assert!(rows.windows(2).all(|w| w[0].end >= w[1].end));
        RowConvexShape { rows }
    }
}
