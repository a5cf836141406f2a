//! Finite groupoids given by Cayley tables.
//!
//! Elements are written `1..=n` in every public signature, matching the digit
//! string notation where `"22 12"` is the order-2 table with `1·1 = 2`,
//! `1·2 = 2`, `2·1 = 1`, `2·2 = 2`. Cells are stored 0-based.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::term::{Identity, Term, Var};

pub const MAX_ORDER: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagmaError {
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    UnsupportedOrder(usize),
    #[error("expected {expected} digits, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("digit {digit} out of range for order {order}")]
    DigitOutOfRange { digit: char, order: usize },
    #[error("unexpected character {0:?} in table encoding")]
    InvalidCharacter(char),
    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("{0:?} is not a permutation of 1..=n")]
    NotAPermutation(Vec<u8>),
}

fn check_order(order: usize) -> Result<(), MagmaError> {
    if (1..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(MagmaError::UnsupportedOrder(order))
    }
}

/// A bijection on `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(order: usize) -> Permutation {
        Permutation {
            images: (0..order as u8).collect(),
        }
    }

    /// `images[i]` is the image of `i + 1`.
    pub fn from_images(images: &[u8]) -> Result<Permutation, MagmaError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in images {
            if img == 0 || img as usize > n || seen[img as usize - 1] {
                return Err(MagmaError::NotAPermutation(images.to_vec()));
            }
            seen[img as usize - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i - 1).collect(),
        })
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(order: usize, a: u8, b: u8) -> Permutation {
        let mut p = Permutation::identity(order);
        p.images.swap(a as usize - 1, b as usize - 1);
        p
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize - 1] + 1
    }

    pub fn images(&self) -> Vec<u8> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(order: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (0..order as u8).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..current.len())
                .rev()
                .find(|&i| current[i - 1] < current[i])
            else {
                break;
            };
            let j = (i..current.len())
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }
}

/// How a permutation relabels a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    /// `x ∘ y = α⁻¹(αx · αy)`
    Iso,
    /// `x ∘ y = α⁻¹(αy · αx)`
    AntiIso,
}

/// Symmetry group used when comparing tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassMode {
    Iso,
    IsoOrAntiIso,
}

/// Values for the variables of a term, elements in `1..=n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Assignment([Option<u8>; 3]);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with(mut self, var: Var, value: u8) -> Assignment {
        self.0[var.index()] = Some(value);
        self
    }

    pub fn get(&self, var: Var) -> Option<u8> {
        self.0[var.index()]
    }
}

/// A complete Cayley table of order `1..=5`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    order: usize,
    // row-major, 0-based values; cells[a * n + b] = a·b
    cells: Vec<u8>,
}

impl CayleyTable {
    /// Builds a table from `f(a, b) = a·b` with 1-based elements.
    pub fn from_fn(order: usize, f: impl Fn(u8, u8) -> u8) -> Result<CayleyTable, MagmaError> {
        check_order(order)?;
        let mut cells = Vec::with_capacity(order * order);
        for a in 1..=order as u8 {
            for b in 1..=order as u8 {
                let v = f(a, b);
                if v == 0 || v as usize > order {
                    return Err(MagmaError::DigitOutOfRange {
                        digit: char::from_digit(v as u32, 10).unwrap_or('?'),
                        order,
                    });
                }
                cells.push(v - 1);
            }
        }
        Ok(CayleyTable { order, cells })
    }

    /// Parses `n²` digits in `1..=n`, row-major; whitespace is ignored.
    pub fn decode(text: &str, order: usize) -> Result<CayleyTable, MagmaError> {
        check_order(order)?;
        let mut cells = Vec::with_capacity(order * order);
        for c in text.chars().filter(|c| !c.is_whitespace()) {
            let d = c.to_digit(10).ok_or(MagmaError::InvalidCharacter(c))? as usize;
            if d == 0 || d > order {
                return Err(MagmaError::DigitOutOfRange { digit: c, order });
            }
            cells.push(d as u8 - 1);
        }
        if cells.len() != order * order {
            return Err(MagmaError::WrongLength {
                expected: order * order,
                found: cells.len(),
            });
        }
        Ok(CayleyTable { order, cells })
    }

    /// Rows of digits separated by single spaces, e.g. `"22 12"`.
    pub fn encode(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() + self.order);
        for (i, row) in self.cells.chunks(self.order).enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.extend(row.iter().map(|&v| char::from(b'1' + v)));
        }
        out
    }

    pub(crate) fn from_raw(order: usize, cells: Vec<u8>) -> CayleyTable {
        debug_assert_eq!(cells.len(), order * order);
        CayleyTable { order, cells }
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.cells
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [u8] {
        &mut self.cells
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a·b`.
    pub fn product(&self, a: u8, b: u8) -> u8 {
        self.cells[(a as usize - 1) * self.order + b as usize - 1] + 1
    }

    /// Rows of the table with 1-based entries.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.cells
            .chunks(self.order)
            .map(|row| row.iter().map(|&v| v + 1).collect())
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..a).all(|b| self.cells[a * n + b] == self.cells[b * n + a]))
    }

    /// # Panics
    ///
    /// If the assignment misses a variable of `term`.
    pub fn evaluate(&self, term: &Term, assignment: &Assignment) -> u8 {
        match term {
            Term::Var(v) => assignment
                .get(*v)
                .unwrap_or_else(|| panic!("variable {v} is unassigned")),
            Term::Prod(l, r) => {
                let a = self.evaluate(l, assignment);
                let b = self.evaluate(r, assignment);
                self.product(a, b)
            }
        }
    }

    /// True iff both sides agree under all `n^v` assignments of the identity's
    /// variables.
    pub fn satisfies(&self, id: &Identity) -> bool {
        let vars = id.variables();
        let n = self.order as u8;
        let mut values = vec![1u8; vars.len()];
        loop {
            let assignment = vars
                .iter()
                .zip(&values)
                .fold(Assignment::new(), |a, (&var, &val)| a.with(var, val));
            if self.evaluate(&id.lhs, &assignment) != self.evaluate(&id.rhs, &assignment) {
                return false;
            }
            // odometer over values
            let mut i = values.len();
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                if values[i] < n {
                    values[i] += 1;
                    break;
                }
                values[i] = 1;
            }
        }
    }

    /// `L_a`: `images[x - 1] = a·x`.
    pub fn left_translation(&self, a: u8) -> Vec<u8> {
        (1..=self.order as u8).map(|x| self.product(a, x)).collect()
    }

    /// `R_a`: `images[x - 1] = x·a`.
    pub fn right_translation(&self, a: u8) -> Vec<u8> {
        (1..=self.order as u8).map(|x| self.product(x, a)).collect()
    }

    /// The (12)-parastroph `x * y = y · x`, i.e. the transposed table.
    pub fn parastrophe(&self) -> CayleyTable {
        let n = self.order;
        let mut cells = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[b * n + a] = self.cells[a * n + b];
            }
        }
        CayleyTable { order: n, cells }
    }

    pub fn apply_permutation(
        &self,
        alpha: &Permutation,
        action: Action,
    ) -> Result<CayleyTable, MagmaError> {
        if alpha.order() != self.order {
            return Err(MagmaError::OrderMismatch {
                left: self.order,
                right: alpha.order(),
            });
        }
        let n = self.order;
        let p = alpha.raw();
        let inv = alpha.inverse();
        let inv = inv.raw();
        let mut cells = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = match action {
                    Action::Iso => (p[x], p[y]),
                    Action::AntiIso => (p[y], p[x]),
                };
                cells[x * n + y] = inv[self.cells[a as usize * n + b as usize] as usize];
            }
        }
        Ok(CayleyTable { order: n, cells })
    }

    fn find_morphism(
        &self,
        other: &CayleyTable,
        action: Action,
    ) -> Result<Option<Permutation>, MagmaError> {
        if self.order != other.order {
            return Err(MagmaError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        for alpha in Permutation::all(self.order) {
            if &self.apply_permutation(&alpha, action)? == other {
                return Ok(Some(alpha));
            }
        }
        Ok(None)
    }

    /// Some `α` with `other = apply_permutation(self, α, Iso)`.
    pub fn is_isomorphic(&self, other: &CayleyTable) -> Result<Option<Permutation>, MagmaError> {
        self.find_morphism(other, Action::Iso)
    }

    /// Some `α` with `other = apply_permutation(self, α, AntiIso)`.
    pub fn is_anti_isomorphic(
        &self,
        other: &CayleyTable,
    ) -> Result<Option<Permutation>, MagmaError> {
        self.find_morphism(other, Action::AntiIso)
    }

    /// All tables reachable from `self` under the chosen symmetry group.
    pub fn orbit(&self, mode: ClassMode) -> BTreeSet<CayleyTable> {
        let mut out = BTreeSet::new();
        for alpha in Permutation::all(self.order) {
            out.insert(self.apply_permutation(&alpha, Action::Iso).unwrap());
            if mode == ClassMode::IsoOrAntiIso {
                out.insert(self.apply_permutation(&alpha, Action::AntiIso).unwrap());
            }
        }
        out
    }

    /// Lexicographically least encoding over the orbit.
    pub fn canonical_form(&self, mode: ClassMode) -> CayleyTable {
        let canon = Canonizer::new(self.order);
        let code = match mode {
            ClassMode::Iso => canon.iso_code(&self.cells),
            ClassMode::IsoOrAntiIso => canon.iso_anti_code(&self.cells),
        };
        canon.decode(code)
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable({})", self.encode())
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl Serialize for CayleyTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CayleyTable", 3)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("cells", &self.rows())?;
        s.serialize_field("encode", &self.encode())?;
        s.end()
    }
}

/// Every table of the given order in ascending encoding order.
pub fn all_tables(order: usize) -> impl Iterator<Item = CayleyTable> {
    let n = order as u8;
    let mut next = Some(vec![0u8; order * order]);
    std::iter::from_fn(move || {
        let cells = next.take()?;
        let mut succ = cells.clone();
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            if succ[i] + 1 < n {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(CayleyTable::from_raw(order, cells))
    })
}

/// Orbit-minimum codes for raw cell slices.
///
/// A code packs the 0-based cells base `n`, first cell most significant, so
/// numeric order equals lexicographic order of encodings.
#[derive(Debug, Clone)]
pub struct Canonizer {
    order: usize,
    // (α, α⁻¹) pairs, 0-based
    perms: Vec<(Vec<u8>, Vec<u8>)>,
}

impl Canonizer {
    pub fn new(order: usize) -> Canonizer {
        let perms = Permutation::all(order)
            .into_iter()
            .map(|p| {
                let inv = p.inverse().images;
                (p.images, inv)
            })
            .collect();
        Canonizer { order, perms }
    }

    pub fn encode(&self, cells: &[u8]) -> u64 {
        cells
            .iter()
            .fold(0u64, |acc, &c| acc * self.order as u64 + c as u64)
    }

    pub fn decode(&self, mut code: u64) -> CayleyTable {
        let n = self.order;
        let mut cells = vec![0u8; n * n];
        for c in cells.iter_mut().rev() {
            *c = (code % n as u64) as u8;
            code /= n as u64;
        }
        CayleyTable::from_raw(n, cells)
    }

    /// Least code over the isomorphism orbit of `cells`.
    pub fn iso_code(&self, cells: &[u8]) -> u64 {
        let n = self.order;
        let mut best = [u8::MAX; MAX_ORDER * MAX_ORDER];
        let best = &mut best[..n * n];
        let mut image = [0u8; MAX_ORDER * MAX_ORDER];
        for (p, inv) in &self.perms {
            // build the image cell by cell, stopping once it exceeds `best`
            let mut less = false;
            let mut pruned = false;
            for x in 0..n {
                for y in 0..n {
                    let i = x * n + y;
                    let v = inv[cells[p[x] as usize * n + p[y] as usize] as usize];
                    image[i] = v;
                    if !less {
                        if v > best[i] {
                            pruned = true;
                            break;
                        }
                        less = v < best[i];
                    }
                }
                if pruned {
                    break;
                }
            }
            if !pruned && less {
                best.copy_from_slice(&image[..n * n]);
            }
        }
        self.encode(best)
    }

    /// Least code over the orbit under isomorphisms and anti-isomorphisms.
    pub fn iso_anti_code(&self, cells: &[u8]) -> u64 {
        self.iso_code(cells)
            .min(self.iso_code(&transpose(cells, self.order)))
    }
}

pub(crate) fn transpose(cells: &[u8], n: usize) -> Vec<u8> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[b * n + a] = cells[a * n + b];
        }
    }
    out
}
