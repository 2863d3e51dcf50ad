//! Suffix automaton used for exact distinct-factor counting.
//!
//! Every distinct factor of the indexed word corresponds to exactly one
//! (state, length) pair where `len(link(state)) < length <= len(state)`, so
//! the number of distinct factors of each length falls out of a single pass
//! over the states.

use alloc::vec;
use alloc::vec::Vec;

use crate::words::Letter;

const ROOT: u32 = 0;
const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct State {
    len: u32,
    link: u32,
    // Sparse transitions; most states have one or two outgoing edges.
    next: Vec<(Letter, u32)>,
}

impl State {
    fn get(&self, c: Letter) -> Option<u32> {
        self.next.iter().find(|(k, _)| *k == c).map(|&(_, v)| v)
    }

    fn set(&mut self, c: Letter, to: u32) {
        match self.next.iter_mut().find(|(k, _)| *k == c) {
            Some(slot) => slot.1 = to,
            None => self.next.push((c, to)),
        }
    }
}

/// Deterministic automaton recognizing exactly the factors of a word.
#[derive(Clone, Debug)]
pub struct FactorAutomaton {
    states: Vec<State>,
    last: u32,
    word_len: usize,
}

impl FactorAutomaton {
    pub fn new() -> Self {
        FactorAutomaton {
            states: vec![State { len: 0, link: NONE, next: Vec::new() }],
            last: ROOT,
            word_len: 0,
        }
    }

    pub fn build(letters: &[Letter]) -> Self {
        let mut sa = FactorAutomaton::new();
        sa.states.reserve(2 * letters.len());
        for &c in letters {
            sa.push(c);
        }
        sa
    }

    /// Appends one letter to the indexed word.
    pub fn push(&mut self, c: Letter) {
        let cur = self.states.len() as u32;
        let cur_len = self.states[self.last as usize].len + 1;
        self.states.push(State { len: cur_len, link: ROOT, next: Vec::new() });

        let mut p = self.last;
        while p != NONE && self.states[p as usize].get(c).is_none() {
            self.states[p as usize].set(c, cur);
            p = self.states[p as usize].link;
        }
        if p != NONE {
            let q = self.states[p as usize].get(c).unwrap();
            if self.states[p as usize].len + 1 == self.states[q as usize].len {
                self.states[cur as usize].link = q;
            } else {
                let clone = self.states.len() as u32;
                let mut cloned = self.states[q as usize].clone();
                cloned.len = self.states[p as usize].len + 1;
                self.states.push(cloned);
                while p != NONE && self.states[p as usize].get(c) == Some(q) {
                    self.states[p as usize].set(c, clone);
                    p = self.states[p as usize].link;
                }
                self.states[q as usize].link = clone;
                self.states[cur as usize].link = clone;
            }
        }
        self.last = cur;
        self.word_len += 1;
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// True if `needle` occurs in the indexed word.
    pub fn contains(&self, needle: &[Letter]) -> bool {
        let mut s = ROOT;
        for &c in needle {
            match self.states[s as usize].get(c) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    /// `counts[n - 1]` is the number of distinct factors of length `n`, for `n` in `1..=max_n`.
    pub fn distinct_counts(&self, max_n: usize) -> Vec<u64> {
        let mut diff = vec![0i64; max_n + 2];
        for st in self.states.iter().skip(1) {
            let lo = self.states[st.link as usize].len as usize + 1;
            let hi = (st.len as usize).min(max_n);
            if lo <= hi {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        let mut out = Vec::with_capacity(max_n);
        let mut acc = 0i64;
        for d in diff.iter().take(max_n + 1).skip(1) {
            acc += d;
            out.push(acc as u64);
        }
        out
    }

    /// Total number of distinct nonempty factors.
    pub fn distinct_total(&self) -> u64 {
        self.states
            .iter()
            .skip(1)
            .map(|st| (st.len - self.states[st.link as usize].len) as u64)
            .sum()
    }
}

impl Default for FactorAutomaton {
    fn default() -> Self {
        Self::new()
    }
}
