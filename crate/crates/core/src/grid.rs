//! Lattice state, goal masks and canonical state keys.
//!
//! Coordinates are `(x, y)` with `y = 0` the ground row and `y` growing
//! upward. Cells are stored row-major starting from the ground row, so the
//! linear index of `(x, y)` is `y * width + x`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest supported width or height.
pub const MAX_DIMENSION: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("coordinate {0} is outside the {1}x{2} grid")]
    OutOfBounds(Coord, usize, usize),
    #[error("invalid grid dimensions {0}x{1} (each side must be 1..={MAX_DIMENSION})")]
    BadDimensions(usize, usize),
    #[error("dimension mismatch: state is {0}x{1}, goal is {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("expected {expected} cells, got {got}")]
    CellCount { expected: usize, got: usize },
}

/// A lattice position. `x` is the column, `y` the row counted from the ground.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: usize,
    pub y: usize,
}

impl Coord {
    pub const fn new(x: usize, y: usize) -> Self {
        Coord { x, y }
    }

    /// Offset by `(dx, dy)`; `None` if either component would go negative.
    pub fn offset(self, dx: isize, dy: isize) -> Option<Coord> {
        Some(Coord {
            x: self.x.checked_add_signed(dx)?,
            y: self.y.checked_add_signed(dy)?,
        })
    }

    pub fn manhattan(self, other: Coord) -> u64 {
        (self.x.abs_diff(other.x) + self.y.abs_diff(other.y)) as u64
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Content of one lattice cell. Robots only ever live inside blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(u8)]
pub enum Cell {
    #[default]
    Empty = 0,
    Block = 1,
    BlockWithRobot = 2,
}

impl Cell {
    pub fn is_block(self) -> bool {
        !matches!(self, Cell::Empty)
    }

    pub fn has_robot(self) -> bool {
        matches!(self, Cell::BlockWithRobot)
    }

    /// A block that no robot occupies.
    pub fn is_free_block(self) -> bool {
        matches!(self, Cell::Block)
    }
}

/// Hashable identity of a [`GridState`]: dimensions plus the packed cell tags.
///
/// Robots are anonymous, so two states whose cell grids agree share a key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridState {
    width: usize,
    height: usize,
    cells: Vec<Cell>,
}

fn check_dims(width: usize, height: usize) -> Result<(), GridError> {
    if width == 0 || height == 0 || width > MAX_DIMENSION || height > MAX_DIMENSION {
        return Err(GridError::BadDimensions(width, height));
    }
    Ok(())
}

impl GridState {
    /// An all-empty grid.
    pub fn new(width: usize, height: usize) -> Result<Self, GridError> {
        check_dims(width, height)?;
        Ok(GridState { width, height, cells: vec![Cell::Empty; width * height] })
    }

    /// Build from row-major cells, ground row first.
    pub fn from_cells(width: usize, height: usize, cells: Vec<Cell>) -> Result<Self, GridError> {
        check_dims(width, height)?;
        if cells.len() != width * height {
            return Err(GridError::CellCount { expected: width * height, got: cells.len() });
        }
        Ok(GridState { width, height, cells })
    }

    /// Convenience constructor from block and robot coordinate lists.
    /// Every robot coordinate must also appear among the blocks.
    pub fn from_blocks(
        width: usize,
        height: usize,
        blocks: &[(usize, usize)],
        robots: &[(usize, usize)],
    ) -> Result<Self, GridError> {
        let mut state = GridState::new(width, height)?;
        for &(x, y) in blocks {
            state.set(Coord::new(x, y), Cell::Block)?;
        }
        for &(x, y) in robots {
            state.set(Coord::new(x, y), Cell::BlockWithRobot)?;
        }
        Ok(state)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn in_bounds(&self, c: Coord) -> bool {
        c.x < self.width && c.y < self.height
    }

    fn index(&self, c: Coord) -> usize {
        c.y * self.width + c.x
    }

    /// Checked read of one cell.
    pub fn cell_at(&self, c: Coord) -> Result<Cell, GridError> {
        self.get(c).ok_or(GridError::OutOfBounds(c, self.width, self.height))
    }

    /// `None` when `c` lies outside the grid.
    pub fn get(&self, c: Coord) -> Option<Cell> {
        self.in_bounds(c).then(|| self.cells[self.index(c)])
    }

    pub fn set(&mut self, c: Coord, cell: Cell) -> Result<(), GridError> {
        if !self.in_bounds(c) {
            return Err(GridError::OutOfBounds(c, self.width, self.height));
        }
        let i = self.index(c);
        self.cells[i] = cell;
        Ok(())
    }

    /// Caller guarantees `c` is in bounds.
    pub(crate) fn put(&mut self, c: Coord, cell: Cell) {
        debug_assert!(self.in_bounds(c));
        let i = self.index(c);
        self.cells[i] = cell;
    }

    pub fn block_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_block()).count()
    }

    pub fn robot_count(&self) -> usize {
        self.cells.iter().filter(|c| c.has_robot()).count()
    }

    /// All coordinates in row-major order (ground row first).
    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        let w = self.width;
        (0..self.cells.len()).map(move |i| Coord::new(i % w, i / w))
    }

    /// Robot cells in row-major order.
    pub fn robots(&self) -> impl Iterator<Item = Coord> + '_ {
        self.coords().filter(|&c| self.cells[self.index(c)].has_robot())
    }

    /// Block cells (with or without robot) in row-major order.
    pub fn blocks(&self) -> impl Iterator<Item = Coord> + '_ {
        self.coords().filter(|&c| self.cells[self.index(c)].is_block())
    }

    pub fn canonical_key(&self) -> StateKey {
        let mut words = Vec::with_capacity(1 + (self.cells.len() * 2).div_ceil(64));
        words.push(((self.width as u64) << 32) | self.height as u64);
        for chunk in self.cells.chunks(32) {
            let mut w = 0u64;
            for (i, cell) in chunk.iter().enumerate() {
                w |= (*cell as u64) << (2 * i);
            }
            words.push(w);
        }
        StateKey(words)
    }

    /// Goal test; robot positions are ignored.
    pub fn is_goal(&self, goal: &GoalSpec) -> Result<bool, GridError> {
        goal.check_dims(self)?;
        Ok(self.satisfies(goal))
    }

    /// Unchecked goal test for callers that validated dimensions already.
    pub(crate) fn satisfies(&self, goal: &GoalSpec) -> bool {
        self.cells.iter().zip(&goal.mask).all(|(c, &m)| c.is_block() == m)
    }

    /// Blocks standing on cells the goal marks empty, with robot presence,
    /// in row-major order.
    pub fn misplaced_blocks(&self, goal: &GoalSpec) -> Vec<(Coord, bool)> {
        debug_assert!(goal.check_dims(self).is_ok());
        self.coords()
            .zip(self.cells.iter().zip(&goal.mask))
            .filter(|(_, (cell, &m))| cell.is_block() && !m)
            .map(|(c, (cell, _))| (c, cell.has_robot()))
            .collect()
    }

    /// Goal cells that currently hold no block, in row-major order.
    pub fn open_goal_cells(&self, goal: &GoalSpec) -> Vec<Coord> {
        debug_assert!(goal.check_dims(self).is_ok());
        self.coords()
            .zip(self.cells.iter().zip(&goal.mask))
            .filter(|(_, (cell, &m))| m && !cell.is_block())
            .map(|(c, _)| c)
            .collect()
    }
}

/// Target arrangement of blocks. Carries no robot information.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoalSpec {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl GoalSpec {
    /// Row-major mask, ground row first; `true` marks a block.
    pub fn from_mask(width: usize, height: usize, mask: Vec<bool>) -> Result<Self, GridError> {
        check_dims(width, height)?;
        if mask.len() != width * height {
            return Err(GridError::CellCount { expected: width * height, got: mask.len() });
        }
        Ok(GoalSpec { width, height, mask })
    }

    pub fn from_blocks(width: usize, height: usize, blocks: &[(usize, usize)]) -> Result<Self, GridError> {
        check_dims(width, height)?;
        let mut mask = vec![false; width * height];
        for &(x, y) in blocks {
            if x >= width || y >= height {
                return Err(GridError::OutOfBounds(Coord::new(x, y), width, height));
            }
            mask[y * width + x] = true;
        }
        Ok(GoalSpec { width, height, mask })
    }

    /// The block layout of `state`, robots dropped.
    pub fn from_state(state: &GridState) -> Self {
        GoalSpec {
            width: state.width,
            height: state.height,
            mask: state.cells.iter().map(|c| c.is_block()).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_block(&self, c: Coord) -> bool {
        c.x < self.width && c.y < self.height && self.mask[c.y * self.width + c.x]
    }

    pub fn block_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub(crate) fn check_dims(&self, state: &GridState) -> Result<(), GridError> {
        if self.width != state.width || self.height != state.height {
            return Err(GridError::DimensionMismatch(state.width, state.height, self.width, self.height));
        }
        Ok(())
    }
}
