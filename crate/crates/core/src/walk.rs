//! Pairs of non-hitting ±1 walks and the statistics read off them.
//!
//! Times run `0..=n`. Step `t` (1-based) moves the walks from time `t-1` to
//! time `t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cover::CoverElement;
use crate::error::{Error, Result};

/// Joint step `(π_t(V), π_t(W))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JointStep {
    /// `(+1, +1)`
    UpUp,
    /// `(-1, -1)`
    DownDown,
    /// `(+1, -1)`: the gap widens by 2.
    UpDown,
    /// `(-1, +1)`: the gap narrows by 2.
    DownUp,
}

impl JointStep {
    pub const ALL: [JointStep; 4] = [
        JointStep::UpUp,
        JointStep::DownDown,
        JointStep::UpDown,
        JointStep::DownUp,
    ];

    pub fn steps(self) -> (i8, i8) {
        match self {
            JointStep::UpUp => (1, 1),
            JointStep::DownDown => (-1, -1),
            JointStep::UpDown => (1, -1),
            JointStep::DownUp => (-1, 1),
        }
    }

    /// Change of `H = V − W` divided by 2.
    pub fn gap_change(self) -> i32 {
        match self {
            JointStep::UpDown => 1,
            JointStep::DownUp => -1,
            _ => 0,
        }
    }

    /// Number of cover elements `c` with `τ(c) = t` when step `t` is `self`.
    pub fn tau_multiplicity(self) -> usize {
        match self {
            JointStep::UpUp | JointStep::DownDown => 1,
            JointStep::UpDown => 2,
            JointStep::DownUp => 0,
        }
    }
}

/// A pair `(V, W)` of ±1 walks of length `n ≥ 1` with `V(0) = W(0) = 0`,
/// `V(n) = W(n)` and `V(t) > W(t)` for `0 < t < n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalkPair {
    v: Vec<i32>,
    w: Vec<i32>,
}

impl fmt::Debug for WalkPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WalkPair({:?})", self.to_text().replace('\n', " / "))
    }
}

impl WalkPair {
    /// Validates the four non-hitting conditions.
    pub fn from_steps(v: &[i8], w: &[i8]) -> Result<Self> {
        let n = v.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if w.len() != n {
            return Err(Error::InvalidWalkPair(format!(
                "walk lengths differ: {} and {}",
                n,
                w.len()
            )));
        }
        if let Some(t) = v.iter().chain(w).position(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidWalkPair(format!(
                "step {} is not ±1",
                t % n + 1
            )));
        }
        let pair = Self::from_steps_unchecked(v, w);
        pair.check()?;
        Ok(pair)
    }

    pub(crate) fn from_steps_unchecked(v: &[i8], w: &[i8]) -> Self {
        let path = |steps: &[i8]| {
            let mut pos = Vec::with_capacity(steps.len() + 1);
            pos.push(0i32);
            let mut cur = 0i32;
            for &s in steps {
                cur += s as i32;
                pos.push(cur);
            }
            pos
        };
        Self {
            v: path(v),
            w: path(w),
        }
    }

    /// From prefix positions `V(0..=n)`, `W(0..=n)`.
    pub(crate) fn from_positions_unchecked(v: Vec<i32>, w: Vec<i32>) -> Self {
        debug_assert_eq!(v.len(), w.len());
        Self { v, w }
    }

    pub(crate) fn from_joint_unchecked(steps: impl IntoIterator<Item = JointStep>) -> Self {
        let (v, w): (Vec<i8>, Vec<i8>) = steps.into_iter().map(JointStep::steps).unzip();
        Self::from_steps_unchecked(&v, &w)
    }

    fn check(&self) -> Result<()> {
        let n = self.n();
        if self.v[n] != self.w[n] {
            return Err(Error::InvalidWalkPair(format!(
                "endpoints differ: V(n) = {}, W(n) = {}",
                self.v[n], self.w[n]
            )));
        }
        if let Some(t) = (1..n).find(|&t| self.v[t] <= self.w[t]) {
            return Err(Error::InvalidWalkPair(format!(
                "V(t) <= W(t) at interior time t = {t}"
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.v.len() - 1
    }

    #[inline]
    pub fn v_at(&self, t: usize) -> i32 {
        self.v[t]
    }

    #[inline]
    pub fn w_at(&self, t: usize) -> i32 {
        self.w[t]
    }

    /// Steps `π_1(V), …, π_n(V)`.
    pub fn v_steps(&self) -> impl Iterator<Item = i8> + '_ {
        self.v.windows(2).map(|p| (p[1] - p[0]) as i8)
    }

    pub fn w_steps(&self) -> impl Iterator<Item = i8> + '_ {
        self.w.windows(2).map(|p| (p[1] - p[0]) as i8)
    }

    /// Joint step `t`, for `1 ≤ t ≤ n`.
    pub fn joint_step(&self, t: usize) -> JointStep {
        let dv = self.v[t] - self.v[t - 1];
        let dw = self.w[t] - self.w[t - 1];
        match (dv > 0, dw > 0) {
            (true, true) => JointStep::UpUp,
            (false, false) => JointStep::DownDown,
            (true, false) => JointStep::UpDown,
            (false, true) => JointStep::DownUp,
        }
    }

    /// Number of up-steps of `V` (equal to that of `W`); the size of chain A.
    pub fn up_steps(&self) -> usize {
        let n = self.n() as i32;
        ((n + self.v[self.n()]) / 2) as usize
    }

    /// `H(t) = V(t) − W(t)`.
    pub fn height(&self, t: usize) -> Result<u32> {
        if t > self.n() {
            return Err(Error::TimeOutOfRange { t, n: self.n() });
        }
        Ok(self.gap(t))
    }

    #[inline]
    fn gap(&self, t: usize) -> u32 {
        (self.v[t] - self.w[t]) as u32
    }

    /// First times at which `steps` has taken 1, 2, … steps in direction `dir`.
    fn first_times(path: &[i32], dir: i32) -> Vec<usize> {
        path.windows(2)
            .enumerate()
            .filter(|(_, p)| p[1] - p[0] == dir)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `t_V(i)` for `i = 1..=k`.
    pub fn t_v(&self) -> Vec<usize> {
        Self::first_times(&self.v, 1)
    }

    pub fn t_w(&self) -> Vec<usize> {
        Self::first_times(&self.w, 1)
    }

    /// `s_V(j)` for `j = 1..=n−k`.
    pub fn s_v(&self) -> Vec<usize> {
        Self::first_times(&self.v, -1)
    }

    pub fn s_w(&self) -> Vec<usize> {
        Self::first_times(&self.w, -1)
    }

    /// Windows of every element of the associated cover:
    /// `I(a_i) = t_W(i) − t_V(i)` and `I(b_j) = s_V(j) − s_W(j)`.
    pub fn intercept_windows(&self) -> Windows {
        let a = self.t_w().iter().zip(self.t_v()).map(|(tw, tv)| tw - tv).collect();
        let b = self.s_v().iter().zip(self.s_w()).map(|(sv, sw)| sv - sw).collect();
        Windows { a, b }
    }

    /// `(element, τ, window)` for every element, in O(n).
    pub fn all_tau_windows(&self) -> Vec<(CoverElement, usize, usize)> {
        let (tv, tw) = (self.t_v(), self.t_w());
        let (sv, sw) = (self.s_v(), self.s_w());
        let a = tv.iter().zip(&tw).enumerate().map(|(i, (&v, &w))| (CoverElement::A(i), v, w - v));
        let b = sw.iter().zip(&sv).enumerate().map(|(j, (&w, &v))| (CoverElement::B(j), w, v - w));
        a.chain(b).collect()
    }

    /// Time of the `count`-th step of `path` in direction `dir`.
    fn nth_time(path: &[i32], dir: i32, count: usize) -> Option<usize> {
        path.windows(2)
            .enumerate()
            .filter(|(_, p)| p[1] - p[0] == dir)
            .nth(count)
            .map(|(i, _)| i + 1)
    }

    fn check_element(&self, e: CoverElement) -> Result<()> {
        let k = self.up_steps();
        let n = self.n();
        let ok = match e {
            CoverElement::A(i) => i < k,
            CoverElement::B(j) => j < n - k,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{e} is not an element of a cover with |A| = {k}, |B| = {}",
                n - k
            )))
        }
    }

    /// Window of a single element.
    pub fn window_of(&self, e: CoverElement) -> Result<usize> {
        self.check_element(e)?;
        Ok(match e {
            CoverElement::A(i) => {
                Self::nth_time(&self.w, 1, i).unwrap() - Self::nth_time(&self.v, 1, i).unwrap()
            }
            CoverElement::B(j) => {
                Self::nth_time(&self.v, -1, j).unwrap() - Self::nth_time(&self.w, -1, j).unwrap()
            }
        })
    }

    /// `τ(a_i) = t_V(i)`, `τ(b_j) = s_W(j)`: the number of cover elements at or
    /// below the element.
    pub fn tau(&self, e: CoverElement) -> Result<usize> {
        self.check_element(e)?;
        Ok(match e {
            CoverElement::A(i) => Self::nth_time(&self.v, 1, i).unwrap(),
            CoverElement::B(j) => Self::nth_time(&self.w, -1, j).unwrap(),
        })
    }

    /// `τ` and window of one element.
    pub fn tau_and_window(&self, e: CoverElement) -> Result<(usize, usize)> {
        let tau = self.tau(e)?;
        Ok((tau, self.window_of(e)?))
    }

    pub fn elements(&self) -> impl Iterator<Item = CoverElement> {
        let k = self.up_steps();
        let n = self.n();
        (0..k)
            .map(CoverElement::A)
            .chain((0..n - k).map(CoverElement::B))
    }

    /// Area between the interpolated curves: the trapezoid sum of `H`.
    pub fn area(&self) -> u64 {
        let n = self.n();
        (1..=n)
            .map(|t| (self.gap(t - 1) + self.gap(t)) as u64)
            .sum::<u64>()
            / 2
    }

    /// `|V(τ+I) − V(τ)| + |W(τ+I) − W(τ)|`.
    pub fn err_bound(&self, tau: usize, window: usize) -> Result<u32> {
        let end = tau + window;
        if end > self.n() {
            return Err(Error::TimeOutOfRange { t: end, n: self.n() });
        }
        Ok((self.v[end] - self.v[tau]).unsigned_abs() + (self.w[end] - self.w[tau]).unsigned_abs())
    }

    /// Time reversal with negated steps.
    pub fn involute(&self) -> WalkPair {
        let rev = |path: &[i32]| -> Vec<i8> {
            path.windows(2).rev().map(|p| (p[0] - p[1]) as i8).collect()
        };
        Self::from_steps_unchecked(&rev(&self.v), &rev(&self.w))
    }

    /// Height of the associated poset: `(n + |V(n)|) / 2`.
    pub fn poset_height(&self) -> usize {
        (self.n() + self.v[self.n()].unsigned_abs() as usize) / 2
    }

    /// Two lines of `+`/`-`: `V` then `W`.
    pub fn to_text(&self) -> String {
        let line = |steps: &mut dyn Iterator<Item = i8>| -> String {
            steps.map(|s| if s > 0 { '+' } else { '-' }).collect()
        };
        format!("{}\n{}", line(&mut self.v_steps()), line(&mut self.w_steps()))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut parse = |name: &str| -> Result<Vec<i8>> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing line for {name}")))?;
            line.chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    other => Err(Error::Parse(format!("unexpected character {other:?} in {name}"))),
                })
                .collect()
        };
        let v = parse("V")?;
        let w = parse("W")?;
        Self::from_steps(&v, &w)
    }

    pub fn to_json(&self) -> WalkPairJson {
        WalkPairJson {
            n: self.n(),
            v: self.v_steps().collect(),
            w: self.w_steps().collect(),
        }
    }

    pub fn from_json(json: &WalkPairJson) -> Result<Self> {
        if json.v.len() != json.n {
            return Err(Error::Parse(format!(
                "n = {} but V has {} steps",
                json.n,
                json.v.len()
            )));
        }
        Self::from_steps(&json.v, &json.w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkPairJson {
    pub n: usize,
    pub v: Vec<i8>,
    pub w: Vec<i8>,
}

/// Windows of `a_1..a_k` and `b_1..b_{n−k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Windows {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Windows {
    pub fn get(&self, e: CoverElement) -> usize {
        match e {
            CoverElement::A(i) => self.a[i],
            CoverElement::B(j) => self.b[j],
        }
    }

    pub fn total(&self) -> u64 {
        self.a.iter().chain(&self.b).map(|&x| x as u64).sum()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cover::CoverElement::{A, B};

    pub(crate) fn seven_element_walks() -> WalkPair {
        WalkPair::from_text("++-+-+-\n--++-++").unwrap()
    }

    fn pair2() -> WalkPair {
        WalkPair::from_steps(&[1, -1], &[-1, 1]).unwrap()
    }

    #[test]
    fn rejects_invalid_pairs() {
        assert!(WalkPair::from_steps(&[1, 1], &[-1, -1]).is_err());
        assert!(WalkPair::from_steps(&[1, -1, 1, -1], &[-1, 1, -1, 1]).is_err());
        assert!(WalkPair::from_steps(&[], &[]).is_err());
        assert!(WalkPair::from_steps(&[1, 0], &[-1, 1]).is_err());
        assert!(WalkPair::from_text("+-\n-+").is_ok());
        assert!(WalkPair::from_text("+x\n-+").is_err());
    }

    #[test]
    fn heights() {
        let w = seven_element_walks();
        assert_eq!(w.height(2).unwrap(), 4);
        assert_eq!(w.height(7).unwrap(), 0);
        assert!(w.height(8).is_err());
        assert_eq!(pair2().height(1).unwrap(), 2);
    }

    #[test]
    fn seven_element_windows_and_area() {
        let w = seven_element_walks();
        let win = w.intercept_windows();
        assert_eq!(win.a, vec![2, 2, 2, 1]);
        assert_eq!(win.b, vec![2, 3, 2]);
        assert_eq!(w.window_of(A(1)).unwrap(), 4 - 2);
        assert_eq!(w.area(), 14);
        assert_eq!(win.total(), 14);
    }

    #[test]
    fn small_areas() {
        let w = pair2();
        assert_eq!(w.intercept_windows(), Windows { a: vec![1], b: vec![1] });
        assert_eq!(w.area(), 2);
        assert_eq!(WalkPair::from_steps(&[1], &[1]).unwrap().area(), 0);
        assert_eq!(WalkPair::from_steps(&[-1], &[-1]).unwrap().area(), 0);
    }

    #[test]
    fn seven_element_err_bound() {
        let w = seven_element_walks();
        let (tau, win) = w.tau_and_window(A(2)).unwrap();
        assert_eq!((tau, win), (4, 2));
        assert_eq!(w.err_bound(tau, win).unwrap(), 0);
        assert_eq!((win as i64 - w.height(tau).unwrap() as i64).abs(), 0);
        assert_eq!(w.err_bound(3, 0).unwrap(), 0);
        assert!(w.err_bound(6, 2).is_err());
    }

    #[test]
    fn seven_element_tau() {
        let w = seven_element_walks();
        assert_eq!(w.tau(A(1)).unwrap(), 2);
        assert_eq!(w.tau(B(1)).unwrap(), 2);
        assert!(w.tau(A(4)).is_err());
        assert!(w.tau(B(3)).is_err());
    }

    #[test]
    fn all_tau_windows_match_single_lookups() {
        let w = seven_element_walks();
        let all = w.all_tau_windows();
        assert_eq!(all.len(), 7);
        for (e, tau, window) in all {
            assert_eq!(w.tau_and_window(e).unwrap(), (tau, window), "{e}");
        }
    }

    #[test]
    fn tau_multiplicities_match_joint_steps() {
        let w = seven_element_walks();
        let n = w.n();
        let mut mult = vec![0usize; n + 1];
        for e in w.elements() {
            mult[w.tau(e).unwrap()] += 1;
        }
        for (t, &m) in mult.iter().enumerate().skip(1) {
            assert_eq!(m, w.joint_step(t).tau_multiplicity(), "t = {t}");
        }
    }

    #[test]
    fn involution() {
        let w = seven_element_walks();
        let r = w.involute();
        assert_eq!(r.to_text(), "+-+-+--\n--+--++");
        assert_eq!(r.involute(), w);
        assert_eq!(pair2().involute(), pair2());
        for t in 0..=7 {
            assert_eq!(r.height(7 - t).unwrap(), w.height(t).unwrap());
        }
    }

    #[test]
    fn poset_height_from_walks() {
        assert_eq!(pair2().poset_height(), 1);
        assert_eq!(seven_element_walks().poset_height(), 4);
        assert_eq!(WalkPair::from_steps(&[1], &[1]).unwrap().poset_height(), 1);
    }

    #[test]
    fn json_round_trip() {
        let w = seven_element_walks();
        let j = w.to_json();
        assert_eq!(j.v, vec![1, 1, -1, 1, -1, 1, -1]);
        let s = serde_json::to_string(&j).unwrap();
        let back: WalkPairJson = serde_json::from_str(&s).unwrap();
        assert_eq!(WalkPair::from_json(&back).unwrap(), w);
    }
}
