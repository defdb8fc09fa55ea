//! The segment construction of F₄*: nine segment types, the subdivision
//! rules between them, exact endpoints, and the brute-force cylinder oracle.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::cf::{eval_periodic_in, Mobius, PeriodicCf};
use crate::error::{Error, Result};
use crate::exact::{BigRat, QuadSurd, DEFAULT_DISC};
use crate::subshift::{first_violation, words_with_prefix, State};

/// Period of the smallest admissible tail, `overline(1,4,1,4,1,3)`.
pub const LOW: [u32; 6] = [1, 4, 1, 4, 1, 3];
/// Period of the largest admissible tail, `overline(4,1,4,1,3,1)`.
pub const HIGH: [u32; 6] = [4, 1, 4, 1, 3, 1];
/// `overline(3,1,4,1,4,1)`, the largest tail starting with 3.
pub const MID: [u32; 6] = [3, 1, 4, 1, 4, 1];

/// Every F₄* element starts with these two partial quotients.
pub const ROOT_WORD: [u32; 2] = [4, 3];

/// Deepest level `generate` will build.
pub const GENERATE_DEPTH_LIMIT: u32 = 18;
/// Largest `n` accepted by [`enumerate_cn`].
pub const CN_LIMIT: usize = 14;

struct TypeDef {
    first: (&'static [u32], [u32; 6]),
    second: (&'static [u32], [u32; 6]),
    rule: [(&'static [u32], u8); 2],
}

const TYPES: [TypeDef; 9] = [
    TypeDef { first: (&[], LOW), second: (&[], HIGH), rule: [(&[], 2), (&[], 4)] },
    TypeDef { first: (&[], LOW), second: (&[], MID), rule: [(&[], 3), (&[3], 1)] },
    TypeDef { first: (&[], LOW), second: (&[2], LOW), rule: [(&[1], 1), (&[2], 1)] },
    TypeDef { first: (&[4], MID), second: (&[], HIGH), rule: [(&[4, 3], 1), (&[], 5)] },
    TypeDef { first: (&[4, 2], LOW), second: (&[], HIGH), rule: [(&[4, 2], 1), (&[], 6)] },
    TypeDef { first: (&[4, 1], LOW), second: (&[], HIGH), rule: [(&[4, 1], 2), (&[], 7)] },
    TypeDef { first: (&[4, 1, 4], MID), second: (&[], HIGH), rule: [(&[4, 1, 4, 3], 1), (&[], 8)] },
    TypeDef { first: (&[4, 1, 4, 2], LOW), second: (&[], HIGH), rule: [(&[4, 1, 4, 2], 1), (&[], 9)] },
    TypeDef { first: (&[4, 1, 4, 1], LOW), second: (&[], HIGH), rule: [(&[4, 1, 4, 1], 3), (&[4, 1, 4, 1, 3], 1)] },
];

/// One of the nine segment types. A segment of a type over a base word is
/// the interval between the values of base·low-tail and base·high-tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentType(u8);

impl SegmentType {
    pub const ALL: [SegmentType; 9] = [
        SegmentType(1),
        SegmentType(2),
        SegmentType(3),
        SegmentType(4),
        SegmentType(5),
        SegmentType(6),
        SegmentType(7),
        SegmentType(8),
        SegmentType(9),
    ];

    pub fn new(id: u8) -> Result<Self> {
        if (1..=9).contains(&id) {
            Ok(Self(id))
        } else {
            Err(Error::Domain(format!("segment type {id} is not in 1..=9")))
        }
    }

    pub fn id(self) -> u8 {
        self.0
    }

    fn def(self) -> &'static TypeDef {
        &TYPES[self.0 as usize - 1]
    }

    /// The smaller tail, as a continued fraction read after the base word.
    pub fn tail_low(self) -> PeriodicCf {
        let (pre, per) = self.def().first;
        PeriodicCf::new(pre.to_vec(), per.to_vec()).expect("static tail")
    }

    /// The larger tail.
    pub fn tail_high(self) -> PeriodicCf {
        let (pre, per) = self.def().second;
        PeriodicCf::new(pre.to_vec(), per.to_vec()).expect("static tail")
    }

    /// Exact values of `(tail_low, tail_high)`.
    pub fn tail_values(self) -> &'static (QuadSurd, QuadSurd) {
        static CACHE: OnceLock<Vec<(QuadSurd, QuadSurd)>> = OnceLock::new();
        let all = CACHE.get_or_init(|| {
            SegmentType::ALL
                .iter()
                .map(|t| {
                    (
                        eval_periodic_in(&t.tail_low(), DEFAULT_DISC).expect("tail value"),
                        eval_periodic_in(&t.tail_high(), DEFAULT_DISC).expect("tail value"),
                    )
                })
                .collect()
        });
        &all[self.0 as usize - 1]
    }

    /// Digits shared by both tails: a segment of this type over `base` lies
    /// inside the cylinder of `base` followed by these digits.
    pub fn suffix(self) -> Vec<u32> {
        let (lo, hi) = (self.tail_low(), self.tail_high());
        (0..)
            .map_while(|k| (lo.digit(k) == hi.digit(k)).then(|| lo.digit(k)))
            .collect()
    }

    /// The two children of the subdivision rule: digits appended to the
    /// base word, and the child's type. Listed in rule order, not by value.
    pub fn rule(self) -> [(&'static [u32], SegmentType); 2] {
        let [(e1, t1), (e2, t2)] = self.def().rule;
        [(e1, SegmentType(t1)), (e2, SegmentType(t2))]
    }
}

impl fmt::Display for SegmentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

/// A segment `A_j^i` of the construction.
#[derive(Clone, Debug)]
pub struct Segment {
    /// Base word; the endpoints continue it with the type's tails.
    pub prefix: Vec<u32>,
    pub kind: SegmentType,
    /// Level `i` (the root is level 0).
    pub depth: u32,
    /// Position `j` within the level, from 1. Saturates past level 63.
    pub index: u64,
    /// True when the value grows with the tail (odd `n` for a base of
    /// `n + 1` digits), so `lo` comes from the low tail.
    pub ascending: bool,
    pub lo: QuadSurd,
    pub hi: QuadSurd,
    map: Mobius,
}

/// The open gap `G_j^i` left between the two children of `A_j^i`.
#[derive(Clone, Debug)]
pub struct Gap {
    pub lo: QuadSurd,
    pub hi: QuadSurd,
    pub depth: u32,
    pub index: u64,
    pub parent_kind: SegmentType,
}

impl Segment {
    fn build(prefix: Vec<u32>, map: Mobius, kind: SegmentType, depth: u32, index: u64) -> Result<Self> {
        let (t_low, t_high) = kind.tail_values();
        let x = map.apply(t_low)?;
        let y = map.apply(t_high)?;
        let (lo, hi, ascending) = match x.cmp_exact(&y)? {
            Ordering::Less => (x, y, true),
            Ordering::Greater => (y, x, false),
            Ordering::Equal => return Err(Error::Degenerate { depth, index }),
        };
        debug_assert_eq!(ascending, (prefix.len() - 1) % 2 == 1);
        Ok(Segment { prefix, kind, depth, index, ascending, lo, hi, map })
    }

    /// Segment of type `kind` over the base word `prefix`.
    pub fn over(prefix: Vec<u32>, kind: SegmentType) -> Result<Self> {
        let map = Mobius::of_digits(&prefix);
        Self::build(prefix, map, kind, 0, 1)
    }

    /// Base word followed by the type's common suffix: the shortest word
    /// whose cylinder contains the segment.
    pub fn word(&self) -> Vec<u32> {
        let mut w = self.prefix.clone();
        w.extend(self.kind.suffix());
        w
    }

    /// `ε = q_{n-1}/q_n` of the base word `[x0; ..., xn]`.
    pub fn epsilon(&self) -> BigRat {
        BigRat::new(self.map.d.clone(), self.map.c.clone())
    }

    pub fn length(&self) -> QuadSurd {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &QuadSurd) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `hi / lo`, the exponential of the segment's length on a log scale.
    pub fn log_ratio(&self) -> QuadSurd {
        &self.hi / &self.lo
    }

    /// One line of the segment dump: depth, index, type, base word, exact
    /// endpoints and decimal previews.
    pub fn dump_line(&self, digits: usize) -> String {
        let word = self.prefix.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        format!(
            "{} {} {} [{}] {} {} ~{} ~{}",
            self.depth,
            self.index,
            self.kind,
            word,
            self.lo,
            self.hi,
            self.lo.to_decimal(digits),
            self.hi.to_decimal(digits)
        )
    }
}

/// The Type 1 segment over `[4, 3]`, i.e. `A_1^0 = T[4,3]`.
pub fn root_segment() -> Segment {
    Segment::over(ROOT_WORD.to_vec(), SegmentType(1)).expect("root segment")
}

/// Applies the parent's rule. The left child (smaller values) gets index
/// `2j − 1`, the right one `2j`.
pub fn subdivide(s: &Segment) -> Result<(Segment, Gap, Segment)> {
    let mut kids = Vec::with_capacity(2);
    for (ext, kind) in s.kind.rule() {
        let mut prefix = s.prefix.clone();
        prefix.extend_from_slice(ext);
        let mut map = s.map.clone();
        for &d in ext {
            map.push(d);
        }
        kids.push(Segment::build(prefix, map, kind, s.depth + 1, 0)?);
    }
    let (mut left, mut right) = {
        let b = kids.pop().expect("two children");
        let a = kids.pop().expect("two children");
        if a.lo < b.lo {
            (a, b)
        } else {
            (b, a)
        }
    };
    left.index = s.index.saturating_mul(2).saturating_sub(1);
    right.index = s.index.saturating_mul(2);
    let degenerate = Error::Degenerate { depth: s.depth, index: s.index };
    if !(s.lo <= left.lo && left.hi < right.lo && right.hi <= s.hi) {
        return Err(degenerate);
    }
    let gap = Gap {
        lo: left.hi.clone(),
        hi: right.lo.clone(),
        depth: s.depth,
        index: s.index,
        parent_kind: s.kind,
    };
    Ok((left, gap, right))
}

/// Subdivides every segment of a level, keeping the left-to-right order.
pub fn subdivide_level(parents: &[Segment]) -> Result<(Vec<Segment>, Vec<Gap>)> {
    let parts: Vec<(Segment, Gap, Segment)> = parents.par_iter().map(subdivide).collect::<Result<_>>()?;
    let mut children = Vec::with_capacity(2 * parts.len());
    let mut gaps = Vec::with_capacity(parts.len());
    for (l, g, r) in parts {
        children.push(l);
        children.push(r);
        gaps.push(g);
    }
    Ok((children, gaps))
}

/// All segments and gaps of levels `0..=depth`.
#[derive(Clone, Debug)]
pub struct Generation {
    /// `levels[i][j - 1]` is `A_j^i`.
    pub levels: Vec<Vec<Segment>>,
    /// `gaps[i][j - 1]` is `G_j^i`, between `A_{2j-1}^{i+1}` and `A_{2j}^{i+1}`.
    pub gaps: Vec<Vec<Gap>>,
}

impl Generation {
    pub fn segment_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn gap_count(&self) -> usize {
        self.gaps.iter().map(Vec::len).sum()
    }
}

pub fn generate(depth: u32) -> Result<Generation> {
    if depth > GENERATE_DEPTH_LIMIT {
        return Err(Error::DepthLimit { requested: depth, limit: GENERATE_DEPTH_LIMIT });
    }
    let mut levels = vec![vec![root_segment()]];
    let mut gaps = Vec::new();
    for _ in 0..depth {
        let (children, g) = subdivide_level(levels.last().expect("non-empty"))?;
        levels.push(children);
        gaps.push(g);
    }
    Ok(Generation { levels, gaps })
}

/// Type of the cylinder `T[w]` from the automaton state after `w`: words
/// ending in `4`, `4,1`, `4,1,4` and `4,1,4,1` are special, all others are
/// Type 1.
pub fn classify_prefix(w: &[u32]) -> Result<SegmentType> {
    if let Some(at) = first_violation(w) {
        return Err(Error::Inadmissible { word: w.to_vec(), at: Some(at) });
    }
    if !w.starts_with(&ROOT_WORD) {
        return Err(Error::Inadmissible { word: w.to_vec(), at: None });
    }
    let state = State::run(w).expect("admissible word");
    Ok(SegmentType(match state {
        State::Empty => 1,
        State::Four => 4,
        State::FourOne => 6,
        State::FourOneFour => 7,
        State::FourOneFourOne => 9,
    }))
}

/// A cylinder `T[w]`: the smallest interval holding every F₄* element
/// whose expansion starts with `w`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub word: Vec<u32>,
    pub kind: SegmentType,
    pub lo: QuadSurd,
    pub hi: QuadSurd,
}

impl Cylinder {
    pub fn contains_interval(&self, lo: &QuadSurd, hi: &QuadSurd) -> bool {
        &self.lo <= lo && hi <= &self.hi
    }
}

pub fn cylinder(w: &[u32]) -> Result<Cylinder> {
    let kind = classify_prefix(w)?;
    let cut = w.len() - kind.suffix().len();
    let seg = Segment::over(w[..cut].to_vec(), kind)?;
    Ok(Cylinder { word: w.to_vec(), kind, lo: seg.lo, hi: seg.hi })
}

/// `C_n`: the cylinders of all admissible words `[4, 3, a_2, ..., a_n]`
/// (`n + 1` digits), sorted by left endpoint.
pub fn enumerate_cn(n: usize) -> Result<Vec<Cylinder>> {
    if n > CN_LIMIT {
        return Err(Error::DepthLimit { requested: n as u32, limit: CN_LIMIT as u32 });
    }
    if n == 0 {
        return Err(Error::Domain("C_n needs n >= 1".into()));
    }
    let mut out: Vec<Cylinder> = words_with_prefix(&ROOT_WORD, n + 1)
        .par_iter()
        .map(|w| cylinder(w))
        .collect::<Result<_>>()?;
    // words of equal length sort by value like their cylinders
    out.sort_by(|a, b| word_order(&a.word, &b.word));
    Ok(out)
}

/// Order of continued-fraction values whose expansions start with the
/// given words: at the first difference a larger digit means a larger
/// value at even positions and a smaller one at odd positions.
pub fn word_order(a: &[u32], b: &[u32]) -> Ordering {
    match a.iter().zip(b).position(|(x, y)| x != y) {
        Some(k) if k % 2 == 0 => a[k].cmp(&b[k]),
        Some(k) => b[k].cmp(&a[k]),
        None => Ordering::Equal,
    }
}

/// True when the sorted cylinders are pairwise disjoint.
pub fn cylinders_disjoint(sorted: &[Cylinder]) -> bool {
    sorted.windows(2).all(|w| w[0].hi < w[1].lo)
}

/// True when every cylinder of `inner` lies in the cylinder of `outer`
/// named by its word minus the last digit.
pub fn cylinders_nested(outer: &[Cylinder], inner: &[Cylinder]) -> bool {
    let by_word: HashMap<&[u32], &Cylinder> = outer.iter().map(|c| (c.word.as_slice(), c)).collect();
    inner.par_iter().all(|c| {
        by_word
            .get(&c.word[..c.word.len() - 1])
            .is_some_and(|p| p.contains_interval(&c.lo, &c.hi))
    })
}

/// Outcome of comparing the level-`3n` segments with the cylinders of
/// `n + 2` digits.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub n: usize,
    /// Number of admissible words of `n + 2` digits.
    pub cylinders: usize,
    /// Cylinders holding at least one level-`3n` segment.
    pub cylinders_hit: usize,
    /// Tree nodes visited.
    pub nodes: usize,
    /// Segments that reached level `3n` without fitting a cylinder, or
    /// fell outside the cylinder of their word.
    pub failures: Vec<String>,
}

impl CoverReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.cylinders_hit == self.cylinders
    }
}

/// Checks that every level-`3n` segment lies in the cylinder of its first
/// `n + 2` digits, and that every such cylinder receives a segment.
///
/// The tree is walked depth first on words and types alone; a branch stops
/// as soon as its word reaches `n + 2` digits, since descendants stay inside
/// their ancestors, and only there are exact endpoints computed.
pub fn cover_check(n: usize) -> Result<CoverReport> {
    let cyl = enumerate_cn(n + 1)?;
    let index: HashMap<&[u32], usize> = cyl.iter().enumerate().map(|(i, c)| (c.word.as_slice(), i)).collect();
    let max_level = 3 * n as u32;
    let want = n + 2;

    let mut hit = vec![false; cyl.len()];
    let mut failures = Vec::new();
    let mut nodes = 0usize;
    let mut stack = vec![(ROOT_WORD.to_vec(), SegmentType(1), 0u32)];
    while let Some((prefix, kind, depth)) = stack.pop() {
        nodes += 1;
        let mut word = prefix.clone();
        word.extend(kind.suffix());
        if word.len() >= want {
            let key = &word[..want];
            let seg = Segment::over(prefix, kind)?;
            match index.get(key) {
                Some(&k) if cyl[k].contains_interval(&seg.lo, &seg.hi) => hit[k] = true,
                Some(_) => failures.push(format!("{kind} over {:?} (level {depth}) escapes T{key:?}", seg.prefix)),
                None => failures.push(format!("{kind} over {:?} (level {depth}) has no cylinder {key:?}", seg.prefix)),
            }
        } else if depth >= max_level {
            failures.push(format!(
                "{kind} over {prefix:?} reaches level {depth} inside no cylinder of {want} digits"
            ));
        } else {
            for (ext, child) in kind.rule() {
                let mut p = prefix.clone();
                p.extend_from_slice(ext);
                stack.push((p, child, depth + 1));
            }
        }
    }
    Ok(CoverReport {
        n,
        cylinders: cyl.len(),
        cylinders_hit: hit.iter().filter(|&&h| h).count(),
        nodes,
        failures,
    })
}

/// [`cover_check`] on an explicit level, e.g. level `3n` of [`generate`]:
/// each segment must lie in the cylinder of its first `n + 2` digits.
pub fn level_cover(level: &[Segment], n: usize) -> Result<CoverReport> {
    let cyl = enumerate_cn(n + 1)?;
    let index: HashMap<&[u32], usize> = cyl.iter().enumerate().map(|(i, c)| (c.word.as_slice(), i)).collect();
    let want = n + 2;
    let mut hit = vec![false; cyl.len()];
    let mut failures = Vec::new();
    for seg in level {
        let word = seg.word();
        match word.get(..want).and_then(|key| index.get(key).map(|&k| (key, k))) {
            Some((_, k)) if cyl[k].contains_interval(&seg.lo, &seg.hi) => hit[k] = true,
            Some((key, _)) => failures.push(format!("segment {} escapes T{key:?}", seg.index)),
            None => failures.push(format!("segment {} with word {word:?} fits no cylinder", seg.index)),
        }
    }
    Ok(CoverReport {
        n,
        cylinders: cyl.len(),
        cylinders_hit: hit.iter().filter(|&&h| h).count(),
        nodes: level.len(),
        failures,
    })
}
