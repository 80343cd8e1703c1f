//! Backtracking search for pointed equivariant maps between modules.
//!
//! Assigning `x -> y` forces `x m -> y m` for every monoid element `m`;
//! those consequences are propagated eagerly and undone on backtrack.

use super::module::FiniteModule;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Injectivity {
    Any,
    Injective,
    Bijective,
}

pub(crate) struct MapSearch<'a> {
    source: &'a FiniteModule,
    target: &'a FiniteModule,
    mode: Injectivity,
    assign: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl<'a> MapSearch<'a> {
    pub(crate) fn new(
        source: &'a FiniteModule,
        target: &'a FiniteModule,
        mode: Injectivity,
    ) -> Self {
        let mut s = Self {
            source,
            target,
            mode,
            assign: vec![UNSET; source.size()],
            used: vec![false; target.size()],
            trail: Vec::new(),
        };
        assert!(s.try_assign(0, 0), "basepoint assignment cannot conflict");
        s.trail.clear();
        s
    }

    /// Pins `x -> y` before searching; returns false on conflict.
    pub(crate) fn fix(&mut self, x: usize, y: usize) -> bool {
        let ok = self.try_assign(x, y);
        self.trail.clear();
        ok
    }

    /// Assigns and propagates. On conflict the partial work stays on the
    /// trail for the caller to undo.
    fn try_assign(&mut self, x: usize, y: usize) -> bool {
        let mut work = vec![(x, y)];
        while let Some((a, b)) = work.pop() {
            match self.assign[a] {
                UNSET => {}
                existing if existing == b => continue,
                _ => return false,
            }
            if self.mode != Injectivity::Any && b != 0 && self.used[b] {
                return false;
            }
            if self.mode != Injectivity::Any && (a == 0) != (b == 0) {
                return false;
            }
            self.assign[a] = b;
            if b != 0 {
                self.used[b] = true;
            }
            self.trail.push(a);
            let msize = self.source.monoid().size();
            for m in 0..msize {
                work.push((self.source.act(a, m), self.target.act(b, m)));
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("trail above mark");
            let b = self.assign[a];
            if b != 0 {
                self.used[b] = false;
            }
            self.assign[a] = UNSET;
        }
    }

    /// Runs the search, calling `found` on each complete map; stops as soon
    /// as `found` returns true. `allow(x, y)` prunes candidate images.
    pub(crate) fn run(
        &mut self,
        allow: &dyn Fn(usize, usize) -> bool,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let Some(x) = self.assign.iter().position(|&v| v == UNSET) else {
            if self.mode == Injectivity::Bijective && self.source.size() != self.target.size() {
                return false;
            }
            return found(&self.assign);
        };
        for y in 0..self.target.size() {
            if self.mode != Injectivity::Any && (y == 0 || self.used[y]) {
                continue;
            }
            if !allow(x, y) {
                continue;
            }
            let mark = self.trail.len();
            if self.try_assign(x, y) && self.run(allow, found) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}
