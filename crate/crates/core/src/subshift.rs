//! Admissible digit words: partial quotients in {1, 2, 3, 4} avoiding the
//! blocks `4,4` and `4,1,4,1,4`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Blocks that may not occur in an admissible word.
pub const FORBIDDEN: [&[u32]; 2] = [&[4, 4], &[4, 1, 4, 1, 4]];

/// Start index of the first violation: a digit outside 1..=4 or the first
/// position where a forbidden block begins.
pub fn first_violation(w: &[u32]) -> Option<usize> {
    (0..w.len()).find(|&i| {
        !(1..=4).contains(&w[i]) || FORBIDDEN.iter().any(|f| w[i..].starts_with(f))
    })
}

pub fn admissible(w: &[u32]) -> bool {
    first_violation(w).is_none()
}

/// Suffix automaton recognising admissible words. States remember the
/// longest suffix that is a proper prefix of a forbidden block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum State {
    Empty,
    Four,
    FourOne,
    FourOneFour,
    FourOneFourOne,
}

impl State {
    pub const ALL: [State; 5] = [
        State::Empty,
        State::Four,
        State::FourOne,
        State::FourOneFour,
        State::FourOneFourOne,
    ];

    fn index(self) -> usize {
        self as usize
    }

    /// Next state after reading `digit`, or `None` if the word dies.
    pub fn step(self, digit: u32) -> Option<State> {
        use State::*;
        match (self, digit) {
            (_, d) if !(1..=4).contains(&d) => None,
            (Four | FourOneFour | FourOneFourOne, 4) => None,
            (Empty | FourOne, 4) => Some(if self == Empty { Four } else { FourOneFour }),
            (Four, 1) => Some(FourOne),
            (FourOneFour, 1) => Some(FourOneFourOne),
            _ => Some(Empty),
        }
    }

    /// Runs the automaton over `w` from the empty state.
    pub fn run(w: &[u32]) -> Option<State> {
        w.iter().try_fold(State::Empty, |s, &d| s.step(d))
    }
}

/// Number of admissible words of total length `len` that begin with
/// `prefix`, counted by powers of the automaton's transfer matrix.
pub fn count_with_prefix(prefix: &[u32], len: usize) -> BigUint {
    if len < prefix.len() {
        return BigUint::zero();
    }
    let Some(start) = State::run(prefix) else {
        return BigUint::zero();
    };
    let mut v = vec![BigUint::zero(); 5];
    v[start.index()] = BigUint::one();
    for _ in prefix.len()..len {
        let mut next = vec![BigUint::zero(); 5];
        for s in State::ALL {
            if v[s.index()].is_zero() {
                continue;
            }
            for d in 1..=4 {
                if let Some(t) = s.step(d) {
                    next[t.index()] += &v[s.index()];
                }
            }
        }
        v = next;
    }
    v.into_iter().sum()
}

/// All admissible words of length `len` beginning with `prefix`, in
/// lexicographic order.
pub fn words_with_prefix(prefix: &[u32], len: usize) -> Vec<Vec<u32>> {
    fn go(word: &mut Vec<u32>, state: State, len: usize, out: &mut Vec<Vec<u32>>) {
        if word.len() == len {
            out.push(word.clone());
            return;
        }
        for d in 1..=4 {
            if let Some(next) = state.step(d) {
                word.push(d);
                go(word, next, len, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    if let Some(state) = State::run(prefix) {
        if len >= prefix.len() {
            go(&mut prefix.to_vec(), state, len, &mut out);
        }
    }
    out
}
