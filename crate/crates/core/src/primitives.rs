//! The five lattice-level motion primitives: cell preconditions, effects and
//! fixed per-kind costs.

use alloc::vec::Vec;
use core::fmt;

use crate::grid::{Cell, Coord, GridState};

/// Direction of a robot move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Left,
    Right,
    Down,
    Up,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Left, Direction::Right, Direction::Down, Direction::Up];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Direction::Left => (-1, 0),
            Direction::Right => (1, 0),
            Direction::Down => (0, -1),
            Direction::Up => (0, 1),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Direction::Left => 'L',
            Direction::Right => 'R',
            Direction::Down => 'D',
            Direction::Up => 'U',
        }
    }
}

/// Sideways direction of a block manipulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const ALL: [Side; 2] = [Side::Left, Side::Right];

    pub fn sign(self) -> isize {
        match self {
            Side::Left => -1,
            Side::Right => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimitiveKind {
    MoveRobot,
    LiftBlock,
    PutDownBlock,
    ShiftBlock,
    CoopLiftUp,
}

impl PrimitiveKind {
    pub const ALL: [PrimitiveKind; 5] = [
        PrimitiveKind::MoveRobot,
        PrimitiveKind::LiftBlock,
        PrimitiveKind::PutDownBlock,
        PrimitiveKind::ShiftBlock,
        PrimitiveKind::CoopLiftUp,
    ];

    /// Keyword used in plan files.
    pub fn keyword(self) -> &'static str {
        match self {
            PrimitiveKind::MoveRobot => "MOVE",
            PrimitiveKind::LiftBlock => "LIFT",
            PrimitiveKind::PutDownBlock => "PUT",
            PrimitiveKind::ShiftBlock => "SHIFT",
            PrimitiveKind::CoopLiftUp => "COOP",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

/// Cost `d` of each primitive kind: the Manhattan displacement of what it
/// moves. The cooperative lift moves its block one cell up and the acting
/// robot one cell sideways, so it is charged for both.
pub const MOVE_COST: u64 = 1;
pub const LIFT_COST: u64 = 2;
pub const PUT_DOWN_COST: u64 = 2;
pub const SHIFT_COST: u64 = 1;
pub const COOP_LIFT_COST: u64 = 2;

/// One robot's atomic action. `actor` is the cell of the acting robot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MotionPrimitive {
    /// Robot moves into a neighbouring robot-free block.
    MoveRobot { actor: Coord, dir: Direction },
    /// Robot carries its block diagonally up onto the neighbouring block.
    LiftBlock { actor: Coord, side: Side },
    /// Robot lowers its block diagonally down beside the block beneath it.
    PutDownBlock { actor: Coord, side: Side },
    /// Robot slides its block sideways onto a supported empty cell.
    ShiftBlock { actor: Coord, side: Side },
    /// Robot pushes its block straight up where the robot `catcher` takes it;
    /// the actor ends in the neighbouring block.
    CoopLiftUp { actor: Coord, side: Side, catcher: Coord },
}

/// Options that change which primitives are legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rules {
    /// Allow shifting blocks along the ground row (`y = 0`) without a
    /// supporting block underneath.
    pub ground_shift: bool,
}

/// The first cell condition a primitive fails in a given state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("target out of bounds")]
    TargetOutOfBounds,
    #[error("target is not a free block")]
    TargetNotFreeBlock,
    #[error("target occupied")]
    TargetOccupied,
    #[error("anchor is not a free block")]
    AnchorNotFreeBlock,
    #[error("destination out of bounds")]
    DestinationOutOfBounds,
    #[error("destination occupied")]
    DestinationOccupied,
    #[error("clearance occupied")]
    ClearanceOccupied,
    #[error("swing cell occupied")]
    SwingOccupied,
    #[error("no free support block under actor")]
    NoSupportUnderActor,
    #[error("no support under target")]
    NoSupportUnderTarget,
    #[error("catcher not above anchor")]
    CatcherMisplaced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PrimitiveError {
    /// The primitive does not describe a robot action in this state at all.
    #[error("malformed primitive: no robot at {0}")]
    NotARobot(Coord),
    #[error("malformed primitive: catcher and actor are the same cell {0}")]
    CatcherIsActor(Coord),
    #[error("precondition violated: {0}")]
    Violation(#[from] Violation),
}

fn step(c: Coord, dx: isize, dy: isize, state: &GridState) -> Option<Coord> {
    c.offset(dx, dy).filter(|&n| state.in_bounds(n))
}

fn is_free_block(state: &GridState, c: Option<Coord>) -> bool {
    c.and_then(|c| state.get(c)).is_some_and(Cell::is_free_block)
}

fn is_empty(state: &GridState, c: Coord) -> bool {
    state.get(c) == Some(Cell::Empty)
}

impl MotionPrimitive {
    pub fn kind(&self) -> PrimitiveKind {
        match self {
            MotionPrimitive::MoveRobot { .. } => PrimitiveKind::MoveRobot,
            MotionPrimitive::LiftBlock { .. } => PrimitiveKind::LiftBlock,
            MotionPrimitive::PutDownBlock { .. } => PrimitiveKind::PutDownBlock,
            MotionPrimitive::ShiftBlock { .. } => PrimitiveKind::ShiftBlock,
            MotionPrimitive::CoopLiftUp { .. } => PrimitiveKind::CoopLiftUp,
        }
    }

    pub fn actor(&self) -> Coord {
        match *self {
            MotionPrimitive::MoveRobot { actor, .. }
            | MotionPrimitive::LiftBlock { actor, .. }
            | MotionPrimitive::PutDownBlock { actor, .. }
            | MotionPrimitive::ShiftBlock { actor, .. }
            | MotionPrimitive::CoopLiftUp { actor, .. } => actor,
        }
    }

    pub fn catcher(&self) -> Option<Coord> {
        match *self {
            MotionPrimitive::CoopLiftUp { catcher, .. } => Some(catcher),
            _ => None,
        }
    }

    /// Fixed cost `d` of this primitive.
    pub fn cost(&self) -> u64 {
        match self.kind() {
            PrimitiveKind::MoveRobot => MOVE_COST,
            PrimitiveKind::LiftBlock => LIFT_COST,
            PrimitiveKind::PutDownBlock => PUT_DOWN_COST,
            PrimitiveKind::ShiftBlock => SHIFT_COST,
            PrimitiveKind::CoopLiftUp => COOP_LIFT_COST,
        }
    }

    /// Checks that the primitive is well formed and that every cell
    /// condition holds, reporting the first failing one.
    pub fn precondition(&self, state: &GridState, rules: Rules) -> Result<(), PrimitiveError> {
        let actor = self.actor();
        if state.get(actor) != Some(Cell::BlockWithRobot) {
            return Err(PrimitiveError::NotARobot(actor));
        }
        match *self {
            MotionPrimitive::MoveRobot { dir, .. } => {
                let (dx, dy) = dir.delta();
                let target = step(actor, dx, dy, state).ok_or(Violation::TargetOutOfBounds)?;
                if !is_free_block(state, Some(target)) {
                    return Err(Violation::TargetNotFreeBlock.into());
                }
            }
            MotionPrimitive::LiftBlock { side, .. } => {
                let s = side.sign();
                if !is_free_block(state, step(actor, s, 0, state)) {
                    return Err(Violation::AnchorNotFreeBlock.into());
                }
                let dest = step(actor, s, 1, state).ok_or(Violation::DestinationOutOfBounds)?;
                if !is_empty(state, dest) {
                    return Err(Violation::DestinationOccupied.into());
                }
                // dest in bounds implies the clearance cell is too
                if !is_empty(state, Coord::new(actor.x, actor.y + 1)) {
                    return Err(Violation::ClearanceOccupied.into());
                }
            }
            MotionPrimitive::PutDownBlock { side, .. } => {
                let s = side.sign();
                if !is_free_block(state, step(actor, 0, -1, state)) {
                    return Err(Violation::NoSupportUnderActor.into());
                }
                let dest = step(actor, s, -1, state).ok_or(Violation::DestinationOutOfBounds)?;
                if !is_empty(state, dest) {
                    return Err(Violation::DestinationOccupied.into());
                }
                if !is_empty(state, Coord::new(dest.x, actor.y)) {
                    return Err(Violation::SwingOccupied.into());
                }
            }
            MotionPrimitive::ShiftBlock { side, .. } => {
                let target = step(actor, side.sign(), 0, state).ok_or(Violation::TargetOutOfBounds)?;
                if !is_empty(state, target) {
                    return Err(Violation::TargetOccupied.into());
                }
                let supported = if target.y == 0 {
                    rules.ground_shift
                } else {
                    is_free_block(state, step(target, 0, -1, state))
                };
                if !supported {
                    return Err(Violation::NoSupportUnderTarget.into());
                }
            }
            MotionPrimitive::CoopLiftUp { side, catcher, .. } => {
                if catcher == actor {
                    return Err(PrimitiveError::CatcherIsActor(actor));
                }
                if state.get(catcher) != Some(Cell::BlockWithRobot) {
                    return Err(PrimitiveError::NotARobot(catcher));
                }
                let s = side.sign();
                if !is_free_block(state, step(actor, s, 0, state)) {
                    return Err(Violation::AnchorNotFreeBlock.into());
                }
                if step(actor, s, 1, state) != Some(catcher) {
                    return Err(Violation::CatcherMisplaced.into());
                }
                let dest = step(actor, 0, 1, state).ok_or(Violation::DestinationOutOfBounds)?;
                if !is_empty(state, dest) {
                    return Err(Violation::DestinationOccupied.into());
                }
            }
        }
        Ok(())
    }

    /// Applies the effect in place. The precondition must already hold.
    pub(crate) fn apply_unchecked(&self, state: &mut GridState) {
        let actor = self.actor();
        let shifted = |dx: isize, dy: isize| actor.offset(dx, dy).expect("precondition checked");
        match *self {
            MotionPrimitive::MoveRobot { dir, .. } => {
                let (dx, dy) = dir.delta();
                state.put(actor, Cell::Block);
                state.put(shifted(dx, dy), Cell::BlockWithRobot);
            }
            MotionPrimitive::LiftBlock { side, .. } => {
                state.put(actor, Cell::Empty);
                state.put(shifted(side.sign(), 1), Cell::BlockWithRobot);
            }
            MotionPrimitive::PutDownBlock { side, .. } => {
                state.put(actor, Cell::Empty);
                state.put(shifted(side.sign(), -1), Cell::BlockWithRobot);
            }
            MotionPrimitive::ShiftBlock { side, .. } => {
                state.put(actor, Cell::Empty);
                state.put(shifted(side.sign(), 0), Cell::BlockWithRobot);
            }
            MotionPrimitive::CoopLiftUp { side, .. } => {
                state.put(actor, Cell::Empty);
                state.put(shifted(0, 1), Cell::Block);
                state.put(shifted(side.sign(), 0), Cell::BlockWithRobot);
            }
        }
    }

    /// Returns the successor state.
    ///
    /// # Panics
    /// If the precondition does not hold; that is a caller bug, not a
    /// planning outcome.
    pub fn apply(&self, state: &GridState, rules: Rules) -> GridState {
        if let Err(e) = self.precondition(state, rules) {
            panic!("apply {self} on a state where it is not applicable: {e}");
        }
        let mut next = state.clone();
        self.apply_unchecked(&mut next);
        next
    }

    /// Every cell the primitive reads or writes.
    pub fn footprint(&self) -> Footprint {
        let actor = self.actor();
        // Cells with a negative component cannot exist in a state where the
        // primitive is applicable; they are dropped.
        let at = |dx: isize, dy: isize| actor.offset(dx, dy);
        let cells = match *self {
            MotionPrimitive::MoveRobot { dir, .. } => {
                let (dx, dy) = dir.delta();
                [Some(actor), at(dx, dy), None, None]
            }
            MotionPrimitive::LiftBlock { side, .. } => {
                let s = side.sign();
                [Some(actor), at(s, 0), at(s, 1), at(0, 1)]
            }
            MotionPrimitive::PutDownBlock { side, .. } => {
                let s = side.sign();
                [Some(actor), at(0, -1), at(s, -1), at(s, 0)]
            }
            MotionPrimitive::ShiftBlock { side, .. } => {
                let s = side.sign();
                [Some(actor), at(s, 0), at(s, -1), None]
            }
            MotionPrimitive::CoopLiftUp { side, catcher, .. } => {
                let s = side.sign();
                [Some(actor), at(s, 0), Some(catcher), at(0, 1)]
            }
        };
        Footprint { cells }
    }
}

impl fmt::Display for MotionPrimitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match *self {
            MotionPrimitive::MoveRobot { dir, .. } => dir.letter(),
            MotionPrimitive::LiftBlock { side, .. }
            | MotionPrimitive::PutDownBlock { side, .. }
            | MotionPrimitive::ShiftBlock { side, .. }
            | MotionPrimitive::CoopLiftUp { side, .. } => side.letter(),
        };
        write!(f, "{} {} @{}", self.kind().keyword(), letter, self.actor())?;
        if let Some(c) = self.catcher() {
            write!(f, " catcher @{c}")?;
        }
        Ok(())
    }
}

/// Up to four cells touched by one primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Footprint {
    cells: [Option<Coord>; 4],
}

impl Footprint {
    pub fn iter(&self) -> impl Iterator<Item = Coord> + '_ {
        self.cells.iter().flatten().copied()
    }

    pub fn contains(&self, c: Coord) -> bool {
        self.iter().any(|x| x == c)
    }

    pub fn intersects(&self, other: &Footprint) -> bool {
        self.iter().any(|c| other.contains(c))
    }
}

/// All primitives the robot at `robot` can execute, in a fixed order: by
/// kind, then Left before Right, then Down before Up.
pub fn applicable_primitives(
    state: &GridState,
    robot: Coord,
    rules: Rules,
) -> Result<Vec<MotionPrimitive>, PrimitiveError> {
    if state.get(robot) != Some(Cell::BlockWithRobot) {
        return Err(PrimitiveError::NotARobot(robot));
    }
    let mut out = Vec::new();
    for dir in Direction::ALL {
        out.push(MotionPrimitive::MoveRobot { actor: robot, dir });
    }
    for side in Side::ALL {
        out.push(MotionPrimitive::LiftBlock { actor: robot, side });
    }
    for side in Side::ALL {
        out.push(MotionPrimitive::PutDownBlock { actor: robot, side });
    }
    for side in Side::ALL {
        out.push(MotionPrimitive::ShiftBlock { actor: robot, side });
    }
    for side in Side::ALL {
        if let Some(catcher) = robot.offset(side.sign(), 1) {
            out.push(MotionPrimitive::CoopLiftUp { actor: robot, side, catcher });
        }
    }
    out.retain(|p| p.precondition(state, rules).is_ok());
    Ok(out)
}
