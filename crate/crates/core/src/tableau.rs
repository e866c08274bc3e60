//! Two-row vacillating tableaux and their bijections with 3-noncrossing
//! partitions and braids.
//!
//! A tableau over `n` vertices is a sequence of `2n + 1` shapes starting and
//! ending empty. Vertex `v` owns the moves into shapes `2v - 1` (odd) and
//! `2v` (even). Partition tableaux remove-or-rest on odd moves and
//! add-or-rest on even moves; braid tableaux do the opposite.

use std::fmt;

use thiserror::Error;

use crate::model::{Arc, Braid, SetPartition};

/// A Young shape with at most two rows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub row1: usize,
    pub row2: usize,
}

impl Shape {
    pub const EMPTY: Shape = Shape { row1: 0, row2: 0 };

    pub fn new(row1: usize, row2: usize) -> Option<Shape> {
        (row1 >= row2).then_some(Shape { row1, row2 })
    }

    pub fn is_empty(&self) -> bool {
        *self == Shape::EMPTY
    }

    pub fn apply(self, mv: Move) -> Option<Shape> {
        match mv {
            Move::Nothing => Some(self),
            Move::AddRow1 => Some(Shape { row1: self.row1 + 1, ..self }),
            Move::AddRow2 => Shape::new(self.row1, self.row2 + 1),
            Move::RemoveRow1 => Shape::new(self.row1.checked_sub(1)?, self.row2),
            Move::RemoveRow2 => Shape::new(self.row1, self.row2.checked_sub(1)?),
        }
    }

    /// The elementary move taking `self` to `next`, if there is one.
    pub fn move_to(self, next: Shape) -> Option<Move> {
        Move::ALL
            .into_iter()
            .find(|&mv| self.apply(mv) == Some(next))
    }

    pub fn point(self) -> WalkPoint {
        WalkPoint {
            a: self.row1 + 1,
            b: self.row2,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.row1, self.row2)
    }
}

/// One half-step of a tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Nothing,
    AddRow1,
    AddRow2,
    RemoveRow1,
    RemoveRow2,
}

impl Move {
    pub const ALL: [Move; 5] = [
        Move::Nothing,
        Move::AddRow1,
        Move::AddRow2,
        Move::RemoveRow1,
        Move::RemoveRow2,
    ];

    pub fn is_add(self) -> bool {
        matches!(self, Move::AddRow1 | Move::AddRow2)
    }

    pub fn is_remove(self) -> bool {
        matches!(self, Move::RemoveRow1 | Move::RemoveRow2)
    }

    /// Lattice step `(da, db)` of this move.
    pub fn delta(self) -> (isize, isize) {
        match self {
            Move::Nothing => (0, 0),
            Move::AddRow1 => (1, 0),
            Move::AddRow2 => (0, 1),
            Move::RemoveRow1 => (-1, 0),
            Move::RemoveRow2 => (0, -1),
        }
    }
}

/// A shape embedded in the Weyl chamber `W2 = { a > b >= 0 }`:
/// `a = row1 + 1`, `b = row2`. The empty shape sits at `(1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalkPoint {
    pub a: usize,
    pub b: usize,
}

impl WalkPoint {
    pub const ORIGIN: WalkPoint = WalkPoint { a: 1, b: 0 };

    pub fn new(a: usize, b: usize) -> Option<WalkPoint> {
        (a > b).then_some(WalkPoint { a, b })
    }

    /// Applies `mv`, returning `None` when the result leaves `W2`.
    pub fn step(self, mv: Move) -> Option<WalkPoint> {
        let (da, db) = mv.delta();
        let a = self.a.checked_add_signed(da)?;
        let b = self.b.checked_add_signed(db)?;
        WalkPoint::new(a, b)
    }

    pub fn shape(self) -> Shape {
        Shape {
            row1: self.a - 1,
            row2: self.b,
        }
    }
}

impl fmt::Display for WalkPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Odd moves remove or rest, even moves add or rest.
    Partition,
    /// Odd moves add or rest, even moves remove or rest.
    Braid,
}

impl Flavor {
    /// Whether `mv` may occur as the move into shape `index` (1-based).
    pub fn allows(self, index: usize, mv: Move) -> bool {
        if mv == Move::Nothing {
            return true;
        }
        let odd = index % 2 == 1;
        match self {
            Flavor::Partition => {
                if odd {
                    mv.is_remove()
                } else {
                    mv.is_add()
                }
            }
            Flavor::Braid => {
                if odd {
                    mv.is_add()
                } else {
                    mv.is_remove()
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VacillatingTableau {
    flavor: Flavor,
    shapes: Vec<Shape>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// The shape sequence has even length.
    Length,
    NonEmptyStart,
    NonEmptyEnd,
    /// Consecutive shapes differ by more than one square.
    NotElementary,
    /// The move is not allowed at this parity for the flavor.
    Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index of the offending shape.
    pub index: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("invalid tableau: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("expected a {expected:?} tableau")]
    WrongFlavor { expected: Flavor },
    #[error("partition is not 3-noncrossing: inserting {value} at vertex {vertex} needs a third row")]
    NotThreeNoncrossing { vertex: usize, value: usize },
    #[error("filling corrupted at vertex {vertex}: {detail}")]
    Corrupt { vertex: usize, detail: String },
    #[error("bad shape token '{token}' at position {position}")]
    BadToken { position: usize, token: String },
}

impl VacillatingTableau {
    /// Wraps a shape sequence without validating it.
    pub fn from_shapes(flavor: Flavor, shapes: Vec<Shape>) -> Self {
        VacillatingTableau { flavor, shapes }
    }

    /// Builds a tableau from per-vertex `(odd, even)` move pairs.
    pub fn from_moves(flavor: Flavor, pairs: &[(Move, Move)]) -> Result<Self, TableauError> {
        let mut shapes = Vec::with_capacity(2 * pairs.len() + 1);
        let mut current = Shape::EMPTY;
        shapes.push(current);
        for (v, &(odd, even)) in pairs.iter().enumerate() {
            for (index, mv) in [(2 * v + 1, odd), (2 * v + 2, even)] {
                current = current.apply(mv).ok_or_else(|| {
                    TableauError::Invalid(vec![Violation {
                        index,
                        kind: ViolationKind::NotElementary,
                    }])
                })?;
                shapes.push(current);
            }
        }
        let t = VacillatingTableau { flavor, shapes };
        t.validate().map_err(TableauError::Invalid)?;
        Ok(t)
    }

    pub fn all_empty(flavor: Flavor, n: usize) -> Self {
        VacillatingTableau {
            flavor,
            shapes: vec![Shape::EMPTY; 2 * n + 1],
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.shapes.len() / 2
    }

    /// The move into each shape `1..len`; `None` where not elementary.
    pub fn moves(&self) -> Vec<Option<Move>> {
        self.shapes.windows(2).map(|w| w[0].move_to(w[1])).collect()
    }

    /// Per-vertex `(odd, even)` move pairs. Panics on an invalid tableau.
    pub fn move_pairs(&self) -> Vec<(Move, Move)> {
        let moves: Vec<Move> = self
            .moves()
            .into_iter()
            .map(|m| m.expect("tableau moves are elementary"))
            .collect();
        moves.chunks(2).map(|c| (c[0], c[1])).collect()
    }

    pub fn points(&self) -> Vec<WalkPoint> {
        self.shapes.iter().map(|s| s.point()).collect()
    }

    /// Checks length, endpoints, elementarity and parity; reports every
    /// violation found.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        let last = self.shapes.len().saturating_sub(1);
        if self.shapes.len().is_multiple_of(2) {
            violations.push(Violation {
                index: last,
                kind: ViolationKind::Length,
            });
        }
        if self.shapes.first().is_some_and(|s| !s.is_empty()) {
            violations.push(Violation {
                index: 0,
                kind: ViolationKind::NonEmptyStart,
            });
        }
        if self.shapes.last().is_some_and(|s| !s.is_empty()) {
            violations.push(Violation {
                index: last,
                kind: ViolationKind::NonEmptyEnd,
            });
        }
        for (k, mv) in self.moves().into_iter().enumerate() {
            let index = k + 1;
            match mv {
                None => violations.push(Violation {
                    index,
                    kind: ViolationKind::NotElementary,
                }),
                Some(mv) if !self.flavor.allows(index, mv) => violations.push(Violation {
                    index,
                    kind: ViolationKind::Parity,
                }),
                Some(_) => {}
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Parses the `a.b a.b ...` serialization.
    pub fn parse(flavor: Flavor, text: &str) -> Result<Self, TableauError> {
        let shapes = text
            .split_whitespace()
            .enumerate()
            .map(|(position, token)| {
                let bad = || TableauError::BadToken {
                    position,
                    token: token.to_string(),
                };
                let (r1, r2) = token.split_once('.').ok_or_else(bad)?;
                let row1 = r1.parse().map_err(|_| bad())?;
                let row2 = r2.parse().map_err(|_| bad())?;
                Shape::new(row1, row2).ok_or_else(bad)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VacillatingTableau { flavor, shapes })
    }
}

impl fmt::Display for VacillatingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.shapes.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A standard filling of a two-row shape. Entries are vertex labels; rows
/// increase left to right and columns increase downward.
#[derive(Default, Debug)]
struct Filling {
    row1: Vec<usize>,
    row2: Vec<usize>,
}

impl Filling {
    fn shape(&self) -> Shape {
        Shape {
            row1: self.row1.len(),
            row2: self.row2.len(),
        }
    }

    /// Places `v` (larger than every entry) at the end of a row.
    fn place(&mut self, vertex: usize, second_row: bool) -> Result<(), TableauError> {
        let corrupt = |detail: &str| TableauError::Corrupt {
            vertex,
            detail: detail.to_string(),
        };
        if self.row1.last().is_some_and(|&e| e >= vertex) || self.row2.last().is_some_and(|&e| e >= vertex) {
            return Err(corrupt("placed entry is not the largest"));
        }
        if second_row {
            if self.row2.len() >= self.row1.len() {
                return Err(corrupt("second row would overhang the first"));
            }
            self.row2.push(vertex);
        } else {
            self.row1.push(vertex);
        }
        Ok(())
    }

    /// Removes the corner of the given row and reverse-bumps it out of the
    /// first row, returning the expelled entry.
    fn extract(&mut self, vertex: usize, second_row: bool) -> Result<usize, TableauError> {
        let corrupt = |detail: &str| TableauError::Corrupt {
            vertex,
            detail: detail.to_string(),
        };
        if !second_row {
            if self.row1.len() <= self.row2.len() {
                return Err(corrupt("first-row corner is not removable"));
            }
            return self.row1.pop().ok_or_else(|| corrupt("first row is empty"));
        }
        let x = self.row2.pop().ok_or_else(|| corrupt("second row is empty"))?;
        let at = self.row1.partition_point(|&e| e < x);
        if at == 0 {
            return Err(corrupt("no first-row entry below the bumped value"));
        }
        let slot = at - 1;
        // Column strictness below the replaced cell.
        if self.row2.get(slot).is_some_and(|&below| below <= x) {
            return Err(corrupt("column order violated by reverse bump"));
        }
        Ok(std::mem::replace(&mut self.row1[slot], x))
    }

    /// RSK row insertion. Returns `true` if the new cell is in the second
    /// row, `Err` if a third row would be needed.
    fn insert(&mut self, value: usize, vertex: usize) -> Result<bool, TableauError> {
        let at = self.row1.partition_point(|&e| e < value);
        if at == self.row1.len() {
            self.row1.push(value);
            return Ok(false);
        }
        let bumped = std::mem::replace(&mut self.row1[at], value);
        let at2 = self.row2.partition_point(|&e| e < bumped);
        if at2 == self.row2.len() {
            self.row2.push(bumped);
            Ok(true)
        } else {
            Err(TableauError::NotThreeNoncrossing { vertex, value })
        }
    }

    /// Deletes the maximal entry `v` if present; reports its row.
    fn delete_max(&mut self, v: usize) -> Option<bool> {
        if self.row1.last() == Some(&v) {
            self.row1.pop();
            Some(false)
        } else if self.row2.last() == Some(&v) {
            self.row2.pop();
            Some(true)
        } else {
            None
        }
    }
}

fn require(t: &VacillatingTableau, flavor: Flavor) -> Result<(), TableauError> {
    if t.flavor != flavor {
        return Err(TableauError::WrongFlavor { expected: flavor });
    }
    t.validate().map_err(TableauError::Invalid)
}

/// Replays the shape sequence with a filling, recording an arc each time an
/// entry is expelled. Shared by the partition and braid readings, which
/// differ only in which half-step adds.
fn record_arcs(t: &VacillatingTableau) -> Result<Vec<Arc>, TableauError> {
    let mut filling = Filling::default();
    let mut arcs = Vec::new();
    for (k, pair) in t.shapes.windows(2).enumerate() {
        let index = k + 1;
        let vertex = index.div_ceil(2);
        let mv = pair[0].move_to(pair[1]).expect("validated");
        match mv {
            Move::Nothing => {}
            Move::AddRow1 | Move::AddRow2 => filling.place(vertex, mv == Move::AddRow2)?,
            Move::RemoveRow1 | Move::RemoveRow2 => {
                let m = filling.extract(vertex, mv == Move::RemoveRow2)?;
                arcs.push(Arc::new(m, vertex));
            }
        }
        if filling.shape() != pair[1] {
            return Err(TableauError::Corrupt {
                vertex,
                detail: format!("filling shape {} differs from {}", filling.shape(), pair[1]),
            });
        }
    }
    arcs.sort_unstable();
    Ok(arcs)
}

/// Reads the 3-noncrossing partition encoded by a partition tableau.
pub fn tableau_to_partition(t: &VacillatingTableau) -> Result<SetPartition, TableauError> {
    require(t, Flavor::Partition)?;
    let arcs = record_arcs(t)?;
    let p = SetPartition::from_arcs(t.n(), &arcs).map_err(|e| TableauError::Corrupt {
        vertex: 0,
        detail: e.to_string(),
    })?;
    debug_assert_eq!(p.canonical_arcs(), arcs);
    Ok(p)
}

/// Encodes a 3-noncrossing partition as its partition tableau.
pub fn partition_to_tableau(p: &SetPartition) -> Result<VacillatingTableau, TableauError> {
    let n = p.n();
    let mut closer_of = vec![None; n + 1];
    for arc in p.canonical_arcs() {
        closer_of[arc.right] = Some(arc.left);
    }
    let mut filling = Filling::default();
    let mut pairs = vec![(Move::Nothing, Move::Nothing); n];
    for v in (1..=n).rev() {
        if let Some(second) = filling.delete_max(v) {
            pairs[v - 1].1 = if second { Move::AddRow2 } else { Move::AddRow1 };
        }
        if let Some(m) = closer_of[v] {
            let second = filling.insert(m, v)?;
            pairs[v - 1].0 = if second { Move::RemoveRow2 } else { Move::RemoveRow1 };
        }
    }
    if filling.shape() != Shape::EMPTY {
        return Err(TableauError::Corrupt {
            vertex: 1,
            detail: "filling not empty after the last vertex".into(),
        });
    }
    VacillatingTableau::from_moves(Flavor::Partition, &pairs)
}

/// Reads the braid encoded by a braid tableau; an entry expelled at the
/// vertex that placed it becomes a loop.
pub fn braid_tableau_to_braid(t: &VacillatingTableau) -> Result<Braid, TableauError> {
    require(t, Flavor::Braid)?;
    let arcs = record_arcs(t)?;
    Braid::new(t.n(), arcs).map_err(|e| TableauError::Corrupt {
        vertex: 0,
        detail: e.to_string(),
    })
}

/// Maps a partition tableau over `[n]` to a braid tableau over `[n - 1]`.
///
/// The first and last moves of a partition tableau are always `Nothing`;
/// dropping them and regrouping the rest with offset one gives braid vertex
/// `i` the pair (even move of vertex `i`, odd move of vertex `i + 1`).
pub fn theta_forward(t: &VacillatingTableau) -> Result<VacillatingTableau, TableauError> {
    require(t, Flavor::Partition)?;
    let len = t.shapes.len();
    Ok(VacillatingTableau {
        flavor: Flavor::Braid,
        shapes: t.shapes[1..len - 1].to_vec(),
    })
}

/// Inverse of [`theta_forward`].
pub fn theta_inverse(t: &VacillatingTableau) -> Result<VacillatingTableau, TableauError> {
    require(t, Flavor::Braid)?;
    let mut shapes = Vec::with_capacity(t.shapes.len() + 2);
    shapes.push(Shape::EMPTY);
    shapes.extend_from_slice(&t.shapes);
    shapes.push(Shape::EMPTY);
    Ok(VacillatingTableau {
        flavor: Flavor::Partition,
        shapes,
    })
}

/// True iff some braid vertex adds to and then removes from the first row,
/// i.e. the braid it encodes has a loop.
pub fn has_loop_pair(t: &VacillatingTableau) -> bool {
    t.flavor == Flavor::Braid
        && t
            .move_pairs().contains(&(Move::AddRow1, Move::RemoveRow1))
}

/// Every valid tableau of the given flavor over `n` vertices, in depth-first
/// order of moves (`Move::ALL` order at each step).
pub fn enumerate_tableaux(flavor: Flavor, n: usize) -> Vec<VacillatingTableau> {
    fn go(
        flavor: Flavor,
        total: usize,
        shapes: &mut Vec<Shape>,
        out: &mut Vec<VacillatingTableau>,
    ) {
        let index = shapes.len();
        let current = *shapes.last().expect("non-empty");
        if index == total {
            if current.is_empty() {
                out.push(VacillatingTableau::from_shapes(flavor, shapes.clone()));
            }
            return;
        }
        let remaining = total - index;
        for mv in Move::ALL {
            if !flavor.allows(index, mv) {
                continue;
            }
            let Some(next) = current.apply(mv) else { continue };
            if next.row1 + next.row2 > remaining {
                continue;
            }
            shapes.push(next);
            go(flavor, total, shapes, out);
            shapes.pop();
        }
    }
    let mut out = Vec::new();
    let mut shapes = vec![Shape::EMPTY];
    go(flavor, 2 * n + 1, &mut shapes, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_partition;

    fn shapes(pairs: &[(usize, usize)]) -> Vec<Shape> {
        pairs.iter().map(|&(a, b)| Shape::new(a, b).unwrap()).collect()
    }

    fn pt(text: &str) -> VacillatingTableau {
        VacillatingTableau::parse(Flavor::Partition, text).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(pt("0.0 0.0 0.0 0.0 0.0").validate().is_ok());
        assert!(pt("0.0 0.0 1.0 0.0 0.0").validate().is_ok());
        // An add at an odd position.
        let bad = pt("0.0 1.0 1.0 0.0 0.0");
        let violations = bad.validate().unwrap_err();
        assert!(violations.contains(&Violation {
            index: 1,
            kind: ViolationKind::Parity
        }));
        let jump = VacillatingTableau::from_shapes(Flavor::Partition, shapes(&[(0, 0), (0, 0), (2, 0), (0, 0), (0, 0)]));
        let v = jump.validate().unwrap_err();
        assert!(v.iter().any(|x| x.kind == ViolationKind::NotElementary && x.index == 2));
        let open = VacillatingTableau::from_shapes(Flavor::Partition, shapes(&[(0, 0), (0, 0), (1, 0)]));
        assert!(open
            .validate()
            .unwrap_err()
            .iter()
            .any(|x| x.kind == ViolationKind::NonEmptyEnd));
        let even = VacillatingTableau::from_shapes(Flavor::Partition, shapes(&[(0, 0), (0, 0)]));
        assert!(even
            .validate()
            .unwrap_err()
            .iter()
            .any(|x| x.kind == ViolationKind::Length));
    }

    #[test]
    fn serialization_round_trip() {
        let t = pt("0.0 0.0 1.0 0.0 0.0");
        assert_eq!(t.to_string(), "0.0 0.0 1.0 0.0 0.0");
        assert!(VacillatingTableau::parse(Flavor::Partition, "0.0 0.1").is_err());
        assert!(VacillatingTableau::parse(Flavor::Partition, "0.0 x").is_err());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(
            tableau_to_partition(&pt("0.0 0.0 1.0 0.0 0.0")).unwrap(),
            parse_partition("{1,2}").unwrap()
        );
        assert_eq!(
            tableau_to_partition(&VacillatingTableau::all_empty(Flavor::Partition, 3)).unwrap(),
            SetPartition::singletons(3)
        );
        assert_eq!(
            partition_to_tableau(&parse_partition("{1,2}").unwrap()).unwrap(),
            pt("0.0 0.0 1.0 0.0 0.0")
        );
        assert_eq!(
            partition_to_tableau(&SetPartition::singletons(4)).unwrap(),
            VacillatingTableau::all_empty(Flavor::Partition, 4)
        );
    }

    #[test]
    fn three_crossing_is_rejected() {
        let p = parse_partition("{1,4}{2,5}{3,6}").unwrap();
        assert!(matches!(
            partition_to_tableau(&p),
            Err(TableauError::NotThreeNoncrossing { .. })
        ));
    }

    #[test]
    fn six_vertices_cover_all_but_one_partition() {
        let tableaux = enumerate_tableaux(Flavor::Partition, 6);
        let mut partitions: Vec<SetPartition> = tableaux
            .iter()
            .map(|t| tableau_to_partition(t).unwrap())
            .collect();
        partitions.sort();
        partitions.dedup();
        assert_eq!(partitions.len(), 202);
        let missing = parse_partition("{1,4}{2,5}{3,6}").unwrap();
        assert!(!partitions.contains(&missing));
        for p in &partitions {
            assert!(p.max_mutual_crossing() < 3);
            assert_eq!(&tableau_to_partition(&partition_to_tableau(p).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn braid_examples() {
        let lp = VacillatingTableau::from_moves(Flavor::Braid, &[(Move::AddRow1, Move::RemoveRow1)]).unwrap();
        let b = braid_tableau_to_braid(&lp).unwrap();
        assert_eq!(b.arcs(), &[Arc::new(1, 1)]);
        assert!(b.has_loops());

        let arc = VacillatingTableau::from_moves(
            Flavor::Braid,
            &[(Move::AddRow1, Move::Nothing), (Move::Nothing, Move::RemoveRow1)],
        )
        .unwrap();
        let b = braid_tableau_to_braid(&arc).unwrap();
        assert_eq!(b.arcs(), &[Arc::new(1, 2)]);

        let empty = braid_tableau_to_braid(&VacillatingTableau::all_empty(Flavor::Braid, 2)).unwrap();
        assert!(empty.arcs().is_empty());
        assert_eq!(empty.n(), 2);
    }

    #[test]
    fn shared_endpoint_arcs_use_two_rows() {
        // (1,2),(2,3) cross under the braid rule, so the tableau needs row 2.
        let t = VacillatingTableau::from_moves(
            Flavor::Braid,
            &[
                (Move::AddRow1, Move::Nothing),
                (Move::AddRow2, Move::RemoveRow2),
                (Move::Nothing, Move::RemoveRow1),
            ],
        )
        .unwrap();
        let b = braid_tableau_to_braid(&t).unwrap();
        assert_eq!(b.arcs(), &[Arc::new(1, 2), Arc::new(2, 3)]);
        assert_eq!(b.max_mutual_crossing(), 2);
    }

    #[test]
    fn theta_examples() {
        let t12 = partition_to_tableau(&parse_partition("{1,2}").unwrap()).unwrap();
        let braid = theta_forward(&t12).unwrap();
        assert_eq!(braid.move_pairs(), vec![(Move::AddRow1, Move::RemoveRow1)]);
        assert!(has_loop_pair(&braid));
        assert_eq!(theta_inverse(&braid).unwrap(), t12);

        let t1_2 = partition_to_tableau(&parse_partition("{1}{2}").unwrap()).unwrap();
        let braid = theta_forward(&t1_2).unwrap();
        assert_eq!(braid.move_pairs(), vec![(Move::Nothing, Move::Nothing)]);

        let t13 = partition_to_tableau(&parse_partition("{1,3}{2}").unwrap()).unwrap();
        let braid = theta_forward(&t13).unwrap();
        assert!(!has_loop_pair(&braid));
        assert_eq!(braid_tableau_to_braid(&braid).unwrap().arcs(), &[Arc::new(1, 2)]);

        let back = theta_inverse(&VacillatingTableau::all_empty(Flavor::Braid, 3)).unwrap();
        assert_eq!(tableau_to_partition(&back).unwrap(), SetPartition::singletons(4));
    }

    #[test]
    fn wrong_flavor_is_rejected() {
        let t = VacillatingTableau::all_empty(Flavor::Braid, 2);
        assert!(matches!(
            tableau_to_partition(&t),
            Err(TableauError::WrongFlavor { .. })
        ));
    }

    #[test]
    fn walk_points_stay_in_chamber() {
        for t in enumerate_tableaux(Flavor::Partition, 5) {
            for p in t.points() {
                assert!(p.a > p.b);
            }
        }
    }
}
