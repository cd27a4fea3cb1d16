//! Integer vectors indexed by outcomes.

use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::scalar::Coord;

/// A point of the integer lattice over the outcome set.
///
/// Events are the nonnegative vectors below some test, but intermediate
/// expressions such as `f - f1 + f2` are evaluated here over the signed
/// integers and may go negative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec<S> {
    coords: Vec<S>,
}

impl<S: Coord> IntVec<S> {
    pub fn new(coords: Vec<S>) -> Self {
        IntVec { coords }
    }

    /// The constant zero function `f_0`.
    pub fn zeros(len: usize) -> Self {
        IntVec { coords: vec![S::zero(); len] }
    }

    /// The indicator of a single outcome.
    pub fn unit(len: usize, at: usize) -> Self {
        let mut v = Self::zeros(len);
        v.coords[at] = S::one();
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn iter(&self) -> impl Iterator<Item = &S> + '_ {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    /// Pointwise `self <= other`.
    pub fn leq(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    pub fn pointwise_max(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.max(b))
    }

    pub fn pointwise_min(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.min(b))
    }

    /// Pointwise `max(self, f_0)`.
    pub fn clamp_nonnegative(&self) -> Self {
        IntVec { coords: self.coords.iter().map(|&c| c.max(S::zero())).collect() }
    }

    /// Sum of all coordinates.
    pub fn total(&self) -> S {
        self.coords.iter().fold(S::zero(), |acc, &c| acc + c)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    /// Every nonnegative vector pointwise below `self`, in lexicographic order.
    ///
    /// `self` must be nonnegative.
    pub fn down_set(&self) -> DownSet<S> {
        DownSet { bound: self.clone(), next: Some(Self::zeros(self.len())) }
    }

    /// Number of nonnegative vectors below `self`, saturating at `usize::MAX`.
    pub fn down_set_size(&self) -> usize {
        self.coords.iter().fold(1usize, |acc, c| {
            let width = c.to_usize().unwrap_or(usize::MAX - 1).saturating_add(1);
            acc.saturating_mul(width)
        })
    }

    fn zip_with(&self, other: &Self, op: impl Fn(S, S) -> S) -> Self {
        debug_assert_eq!(self.len(), other.len());
        IntVec { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| op(a, b)).collect() }
    }
}

impl<S: Coord> Add for &IntVec<S> {
    type Output = IntVec<S>;
    fn add(self, rhs: &IntVec<S>) -> IntVec<S> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<S: Coord> Sub for &IntVec<S> {
    type Output = IntVec<S>;
    fn sub(self, rhs: &IntVec<S>) -> IntVec<S> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<S> Index<usize> for IntVec<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

impl<S: Coord> From<Vec<S>> for IntVec<S> {
    fn from(coords: Vec<S>) -> Self {
        IntVec::new(coords)
    }
}

impl<S: fmt::Display> fmt::Display for IntVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<S: fmt::Debug> fmt::Debug for IntVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}

/// Odometer over the box `[0, bound]`.
pub struct DownSet<S> {
    bound: IntVec<S>,
    next: Option<IntVec<S>>,
}

impl<S: Coord> Iterator for DownSet<S> {
    type Item = IntVec<S>;

    fn next(&mut self) -> Option<IntVec<S>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            if succ.coords[i] < self.bound.coords[i] {
                succ.coords[i] = succ.coords[i] + S::one();
                self.next = Some(succ);
                return Some(current);
            }
            succ.coords[i] = S::zero();
        }
        Some(current)
    }
}
