//! Kauffman–Radford evaluation of framed links in Morse form, the surgery
//! normalization of the Hennings invariant, chain-mail links of lens spaces
//! and the closed-form Hennings side of the lens-space identity.
//!
//! Diagram conventions:
//! - slices are read bottom to top; `cup i` opens strands i, i+1, `cap i`
//!   closes them, `x± i` crosses strands i and i+1;
//! - in `x+ i` the strand running from position i up to i+1 passes over,
//!   in `x- i` it passes under (with both strands pointing up, `x+` is a
//!   positive crossing);
//! - the over strand carries the first tensor factor of R (S(s) for `x+`,
//!   s for `x-`), the under strand the second;
//! - a component oriented `+` runs its lowest cup from left to right;
//! - turning is counted positive clockwise, so a clockwise round circle
//!   has Whitney degree 1.

mod chain_mail;
mod closed;
mod eval;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::Rational;

pub use chain_mail::{chain_mail, framed_unknot};
pub use closed::z_henn_lens_closed;
pub use eval::{kr_evaluate, kr_evaluate_budget, z_henn, z_henn_with_data, HennEvaluation};

pub use crate::kuperberg::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slice {
    Cup(usize),
    Cap(usize),
    /// `positive`: the strand from position i to i+1 is the over strand.
    Cross {
        pos: usize,
        positive: bool,
    },
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slice::Cup(i) => write!(f, "cup {i}"),
            Slice::Cap(i) => write!(f, "cap {i}"),
            Slice::Cross {
                pos,
                positive: true,
            } => write!(f, "x+ {pos}"),
            Slice::Cross {
                pos,
                positive: false,
            } => write!(f, "x- {pos}"),
        }
    }
}

/// A framed oriented link diagram as a bottom-to-top word of slices, with
/// blackboard framing. Components are numbered by their lowest cup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseLink {
    slices: Vec<Slice>,
    /// true = `+`, one entry per component
    orientations: Vec<bool>,
}

impl MorseLink {
    /// Validates the word; every component gets orientation `+`.
    pub fn new(slices: Vec<Slice>) -> Result<Self> {
        let c = count_components(&slices)?;
        Ok(MorseLink {
            slices,
            orientations: vec![true; c],
        })
    }

    pub fn with_orientations(slices: Vec<Slice>, orientations: Vec<bool>) -> Result<Self> {
        let c = count_components(&slices)?;
        if orientations.len() != c {
            return Err(Error::InvalidInput(format!(
                "{} orientations for {c} components",
                orientations.len()
            )));
        }
        Ok(MorseLink {
            slices,
            orientations,
        })
    }

    pub fn empty() -> Self {
        MorseLink {
            slices: Vec::new(),
            orientations: Vec::new(),
        }
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn orientations(&self) -> &[bool] {
        &self.orientations
    }

    pub fn component_count(&self) -> usize {
        self.orientations.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.slices
            .iter()
            .filter(|s| matches!(s, Slice::Cross { .. }))
            .count()
    }

    /// Reverses the orientation of component c.
    pub fn reversed(&self, c: usize) -> Self {
        let mut out = self.clone();
        out.orientations[c] = !out.orientations[c];
        out
    }

    /// Stacks `other` above this diagram, as separate components.
    pub fn disjoint_union(&self, other: &MorseLink) -> Self {
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().copied());
        let mut orientations = self.orientations.clone();
        orientations.extend(other.orientations.iter().copied());
        MorseLink {
            slices,
            orientations,
        }
    }

    /// Mirror image: every crossing changes sign.
    pub fn mirror(&self) -> Self {
        let slices = self
            .slices
            .iter()
            .map(|s| match *s {
                Slice::Cross { pos, positive } => Slice::Cross {
                    pos,
                    positive: !positive,
                },
                other => other,
            })
            .collect();
        MorseLink {
            slices,
            orientations: self.orientations.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MorseLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slices {
            writeln!(f, "{s}")?;
        }
        for (c, &o) in self.orientations.iter().enumerate() {
            writeln!(f, "orient {c} {}", if o { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl FromStr for MorseLink {
    type Err = Error;

    /// One slice per line; blank lines and `#` comments are ignored.
    /// Components without an `orient` line default to `+`.
    fn from_str(text: &str) -> Result<Self> {
        let mut slices = Vec::new();
        let mut orients: Vec<(usize, bool, usize)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Parse(format!("line {}: {m}: {raw:?}", ln + 1));
            let words: Vec<&str> = line.split_whitespace().collect();
            let num = |w: &str| {
                w.parse::<usize>()
                    .map_err(|_| err("expected a non-negative integer"))
            };
            match words.as_slice() {
                ["cup", i] => slices.push(Slice::Cup(num(i)?)),
                ["cap", i] => slices.push(Slice::Cap(num(i)?)),
                ["x+", i] => slices.push(Slice::Cross {
                    pos: num(i)?,
                    positive: true,
                }),
                ["x-", i] => slices.push(Slice::Cross {
                    pos: num(i)?,
                    positive: false,
                }),
                ["orient", c, s] => {
                    let o = match *s {
                        "+" => true,
                        "-" => false,
                        _ => return Err(err("orientation must be + or -")),
                    };
                    orients.push((num(c)?, o, ln + 1));
                }
                _ => return Err(err("unknown slice")),
            }
        }
        let c = count_components(&slices)?;
        let mut orientations = vec![true; c];
        let mut seen = vec![false; c];
        for (comp, o, ln) in orients {
            if comp >= c {
                return Err(Error::Parse(format!(
                    "line {ln}: component {comp} out of range (link has {c})"
                )));
            }
            if seen[comp] {
                return Err(Error::Parse(format!(
                    "line {ln}: duplicate orientation for component {comp}"
                )));
            }
            seen[comp] = true;
            orientations[comp] = o;
        }
        Ok(MorseLink {
            slices,
            orientations,
        })
    }
}

/// Strand counts at every level; level t is the state after t slices.
fn widths(slices: &[Slice]) -> Result<Vec<usize>> {
    let mut w = vec![0usize];
    for (t, s) in slices.iter().enumerate() {
        let cur = *w.last().unwrap();
        let bad = |m: String| Error::InvalidInput(format!("slice {t} ({s}): {m}"));
        let next = match *s {
            Slice::Cup(i) => {
                if i > cur {
                    return Err(bad(format!("position beyond {cur} strands")));
                }
                cur + 2
            }
            Slice::Cap(i) | Slice::Cross { pos: i, .. } => {
                if i + 1 >= cur {
                    return Err(bad(format!(
                        "needs strands {i} and {} but only {cur} exist",
                        i + 1
                    )));
                }
                if matches!(s, Slice::Cap(_)) {
                    cur - 2
                } else {
                    cur
                }
            }
        };
        w.push(next);
    }
    if *w.last().unwrap() != 0 {
        return Err(Error::InvalidInput(format!(
            "{} open strands at the top",
            w.last().unwrap()
        )));
    }
    Ok(w)
}

/// Where a strand segment leads when followed in one vertical direction.
enum Step {
    Straight(usize, usize),
    /// through a crossing at slice s, arriving at (level, pos)
    Cross(usize, usize, usize),
    /// around an extremum at slice s, reversing direction at (level, pos)
    Turn(usize, usize, usize, bool),
}

fn step(slices: &[Slice], t: usize, pos: usize, up: bool) -> Step {
    if up {
        match slices[t] {
            Slice::Cup(i) => Step::Straight(t + 1, if pos < i { pos } else { pos + 2 }),
            Slice::Cap(i) => {
                if pos == i {
                    Step::Turn(t, t, i + 1, true)
                } else if pos == i + 1 {
                    Step::Turn(t, t, i, false)
                } else {
                    Step::Straight(t + 1, if pos < i { pos } else { pos - 2 })
                }
            }
            Slice::Cross { pos: i, .. } => {
                if pos == i {
                    Step::Cross(t, t + 1, i + 1)
                } else if pos == i + 1 {
                    Step::Cross(t, t + 1, i)
                } else {
                    Step::Straight(t + 1, pos)
                }
            }
        }
    } else {
        let s = t - 1;
        match slices[s] {
            Slice::Cup(i) => {
                if pos == i {
                    Step::Turn(s, t, i + 1, false)
                } else if pos == i + 1 {
                    Step::Turn(s, t, i, true)
                } else {
                    Step::Straight(s, if pos < i { pos } else { pos - 2 })
                }
            }
            Slice::Cap(i) => Step::Straight(s, if pos < i { pos } else { pos + 2 }),
            Slice::Cross { pos: i, .. } => {
                if pos == i {
                    Step::Cross(s, s, i + 1)
                } else if pos == i + 1 {
                    Step::Cross(s, s, i)
                } else {
                    Step::Straight(s, pos)
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkEvent {
    /// A pass through the crossing at `slice`; `over` marks the over strand,
    /// `up` the vertical direction of travel.
    Crossing { slice: usize, over: bool, up: bool },
    /// A pass around the cup or cap at `slice`.
    Extremum { slice: usize, clockwise: bool },
}

/// Ordered traversal of one component, starting on the upward end of its
/// lowest cup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentWalk {
    pub events: Vec<WalkEvent>,
}

impl ComponentWalk {
    pub fn whitney_degree(&self) -> i64 {
        whitney_degree(self)
    }
}

/// Half a turn per extremum, clockwise positive.
pub fn whitney_degree(walk: &ComponentWalk) -> i64 {
    let twice: i64 = walk
        .events
        .iter()
        .map(|e| match e {
            WalkEvent::Extremum {
                clockwise: true, ..
            } => 1,
            WalkEvent::Extremum {
                clockwise: false, ..
            } => -1,
            _ => 0,
        })
        .sum();
    debug_assert_eq!(twice % 2, 0);
    twice / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingData {
    pub c: usize,
    pub matrix: Vec<Vec<i64>>,
    pub sigma: i64,
}

/// Per-level bookkeeping shared by the walker and the contraction.
pub(crate) struct Walked {
    pub walks: Vec<ComponentWalk>,
    pub linking: LinkingData,
    /// (component, upward) for every strand at every level
    pub dirs: Vec<Vec<(usize, bool)>>,
}

fn count_components(slices: &[Slice]) -> Result<usize> {
    let w = widths(slices)?;
    let mut seen: Vec<Vec<bool>> = w.iter().map(|&n| vec![false; n]).collect();
    let mut c = 0;
    for (t, s) in slices.iter().enumerate() {
        if let Slice::Cup(i) = *s {
            if !seen[t + 1][i] {
                c += 1;
                trace(slices, t + 1, i + 1, true, |lv, p, _| seen[lv][p] = true);
            }
        }
    }
    Ok(c)
}

/// Follows a closed curve from (level, pos) in the given direction, calling
/// `visit` on every segment, and returns the events passed.
fn trace(
    slices: &[Slice],
    t0: usize,
    p0: usize,
    up0: bool,
    mut visit: impl FnMut(usize, usize, bool),
) -> Vec<WalkEvent> {
    let (mut t, mut p, mut up) = (t0, p0, up0);
    let mut events = Vec::new();
    loop {
        visit(t, p, up);
        match step(slices, t, p, up) {
            Step::Straight(nt, np) => {
                t = nt;
                p = np;
            }
            Step::Cross(s, nt, np) => {
                let Slice::Cross { pos: i, positive } = slices[s] else {
                    unreachable!()
                };
                // the strand from i to i+1 (upward) is the "/" strand
                let slash = if up { p == i } else { p == i + 1 };
                events.push(WalkEvent::Crossing {
                    slice: s,
                    over: slash == positive,
                    up,
                });
                t = nt;
                p = np;
            }
            Step::Turn(s, nt, np, cw) => {
                events.push(WalkEvent::Extremum {
                    slice: s,
                    clockwise: cw,
                });
                t = nt;
                p = np;
                up = !up;
            }
        }
        if (t, p, up) == (t0, p0, up0) {
            return events;
        }
    }
}

/// Component decomposition, traversals and the framing matrix.
pub fn validate_and_walk(link: &MorseLink) -> Result<(Vec<ComponentWalk>, LinkingData)> {
    let w = walk_link(link)?;
    Ok((w.walks, w.linking))
}

pub(crate) fn walk_link(link: &MorseLink) -> Result<Walked> {
    let slices = &link.slices;
    let w = widths(slices)?;
    let mut dirs: Vec<Vec<Option<(usize, bool)>>> = w.iter().map(|&n| vec![None; n]).collect();
    let mut walks = Vec::new();
    for (t, s) in slices.iter().enumerate() {
        if let Slice::Cup(i) = *s {
            if dirs[t + 1][i].is_some() {
                continue;
            }
            let comp = walks.len();
            let o = *link.orientations.get(comp).ok_or_else(|| {
                Error::InvalidInput("orientation list shorter than the component count".into())
            })?;
            let start = if o { i + 1 } else { i };
            let events = trace(slices, t + 1, start, true, |lv, p, up| {
                dirs[lv][p] = Some((comp, up))
            });
            walks.push(ComponentWalk { events });
        }
    }
    if walks.len() != link.orientations.len() {
        return Err(Error::InvalidInput(
            "orientation list longer than the component count".into(),
        ));
    }
    let dirs: Vec<Vec<(usize, bool)>> = dirs
        .into_iter()
        .map(|lv| {
            lv.into_iter()
                .map(|d| d.expect("every strand lies on a closed curve"))
                .collect()
        })
        .collect();

    let c = walks.len();
    let mut matrix = vec![vec![0i64; c]; c];
    for (t, s) in slices.iter().enumerate() {
        if let Slice::Cross { pos, positive } = *s {
            let (ca, ua) = dirs[t][pos];
            let (cb, ub) = dirs[t][pos + 1];
            let mut sign = if positive { 1 } else { -1 };
            if ua != ub {
                sign = -sign;
            }
            if ca == cb {
                matrix[ca][ca] += sign;
            } else {
                matrix[ca][cb] += sign;
                matrix[cb][ca] += sign;
            }
        }
    }
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i != j {
                debug_assert_eq!(*v % 2, 0);
                *v /= 2;
            }
        }
    }
    let sigma = signature(&matrix);
    Ok(Walked {
        walks,
        linking: LinkingData { c, matrix, sigma },
        dirs,
    })
}

/// Signature of a symmetric integer matrix by congruence over the
/// rationals: diagonal pivots where possible, otherwise a row/column
/// addition that creates one.
pub fn signature(m: &[Vec<i64>]) -> i64 {
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect()
        })
        .collect();
    let mut sigma = 0;
    loop {
        let n = a.len();
        if n == 0 {
            return sigma;
        }
        let piv = (0..n).find(|&i| !a[i][i].is_zero());
        let k = match piv {
            Some(k) => k,
            None => {
                let off = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = off else {
                    return sigma;
                };
                // row_i += row_j, col_i += col_j: a_ii becomes 2a_ij ≠ 0
                for r in 0..n {
                    let v = a[j][r].clone();
                    a[i][r] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        let p = a[k][k].clone();
        sigma += if p.is_positive() { 1 } else { -1 };
        let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &a[i][j] - &(&a[i][k] * &a[k][j]) / &p)
                    .collect()
            })
            .collect();
    }
}
