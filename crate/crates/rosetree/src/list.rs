//! Persistent singly linked lists.
//!
//! This is the sequence type behind child lists and cursor contexts: O(1)
//! `cons`/`head`/`tail`, cheap clones, and full structural sharing between
//! derived versions. Every cons-cell allocation is recorded in a
//! thread-local counter (see [`cells`]) so that the per-step cost claims of
//! the cursor types are observable in tests and benchmark reports.

use std::fmt;
use std::rc::Rc;

/// Thread-local counter of cons-cell allocations.
///
/// The counter only grows when a new cell is allocated; sharing a tail or
/// cloning a list costs nothing. Benchmarks and the amortised-cost tests
/// reset it, run a workload on the same thread, and read it back.
pub mod cells {
    use std::cell::Cell;

    thread_local! {
        static CELL_OPS: Cell<u64> = const { Cell::new(0) };
    }

    /// Resets the current thread's counter to zero.
    pub fn reset() {
        CELL_OPS.with(|c| c.set(0));
    }

    /// Number of cons cells allocated on the current thread since the last
    /// [`reset`].
    pub fn count() -> u64 {
        CELL_OPS.with(|c| c.get())
    }

    pub(super) fn bump() {
        CELL_OPS.with(|c| c.set(c.get() + 1));
    }
}

type Link<T> = Option<Rc<Cons<T>>>;

struct Cons<T> {
    elem: T,
    next: Link<T>,
}

/// An immutable cons list. `cons`, `head` and `tail` are O(1); derived
/// lists share their tails with the originals.
pub struct List<T> {
    head: Link<T>,
}

impl<T> List<T> {
    /// The empty list.
    pub fn new() -> Self {
        List { head: None }
    }

    /// Returns a new list with `elem` prepended. Allocates one cell.
    pub fn cons(&self, elem: T) -> Self {
        cells::bump();
        List {
            head: Some(Rc::new(Cons {
                elem,
                next: self.head.clone(),
            })),
        }
    }

    /// First element, if any.
    pub fn head(&self) -> Option<&T> {
        self.head.as_deref().map(|c| &c.elem)
    }

    /// Everything after the first element; the empty list stays empty.
    /// Shares structure with `self`, allocates nothing.
    pub fn tail(&self) -> Self {
        List {
            head: self.head.as_deref().and_then(|c| c.next.clone()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_none()
    }

    /// O(n) length.
    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn iter(&self) -> Iter<'_, T> {
        Iter {
            cur: self.head.as_deref(),
        }
    }

    /// True when both lists start at the same physical cell (or are both
    /// empty). Used to observe sharing; implies equality for equal types.
    pub fn ptr_eq(&self, other: &Self) -> bool {
        match (&self.head, &other.head) {
            (None, None) => true,
            (Some(a), Some(b)) => Rc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl<T: Clone> List<T> {
    /// `reverse(self) ++ onto`, allocating `self.len()` cells.
    pub fn reverse_onto(&self, onto: &Self) -> Self {
        let mut out = onto.clone();
        for elem in self.iter() {
            out = out.cons(elem.clone());
        }
        out
    }

    /// `self ++ onto`, allocating `self.len()` cells.
    pub fn append(&self, onto: &Self) -> Self {
        let fwd: Vec<&T> = self.iter().collect();
        let mut out = onto.clone();
        for elem in fwd.into_iter().rev() {
            out = out.cons(elem.clone());
        }
        out
    }
}

impl<T> Clone for List<T> {
    fn clone(&self) -> Self {
        List {
            head: self.head.clone(),
        }
    }
}

impl<T> Default for List<T> {
    fn default() -> Self {
        List::new()
    }
}

impl<T> FromIterator<T> for List<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let items: Vec<T> = iter.into_iter().collect();
        let mut out = List::new();
        for elem in items.into_iter().rev() {
            out = out.cons(elem);
        }
        out
    }
}

impl<T: PartialEq> PartialEq for List<T> {
    fn eq(&self, other: &Self) -> bool {
        let mut a = &self.head;
        let mut b = &other.head;
        loop {
            match (a, b) {
                (None, None) => return true,
                (Some(x), Some(y)) => {
                    // Shared tails compare equal without walking them.
                    if Rc::ptr_eq(x, y) {
                        return true;
                    }
                    if x.elem != y.elem {
                        return false;
                    }
                    a = &x.next;
                    b = &y.next;
                }
                _ => return false,
            }
        }
    }
}

impl<T: Eq> Eq for List<T> {}

impl<T: fmt::Debug> fmt::Debug for List<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

pub struct Iter<'a, T> {
    cur: Option<&'a Cons<T>>,
}

impl<'a, T> Iterator for Iter<'a, T> {
    type Item = &'a T;

    fn next(&mut self) -> Option<&'a T> {
        let cons = self.cur?;
        self.cur = cons.next.as_deref();
        Some(&cons.elem)
    }
}
