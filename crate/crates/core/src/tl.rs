//! The Temperley-Lieb category: noncrossing matchings composed by stacking,
//! with each closed loop traded for a factor `delta`.
//!
//! Boundary points of an `m -> n` matching are numbered `0..m` along the
//! bottom (left to right) and `m..m+n` along the top (left to right).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ring::{LaurentPoly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("arity mismatch: left side ends at {left} points, right side starts at {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("cannot parse matching {0:?}")]
    Parse(String),
}

/// A noncrossing perfect matching of `bottom + top` boundary points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarMatching {
    bottom: usize,
    top: usize,
    partner: Vec<usize>,
}

impl PlanarMatching {
    /// Builds a matching from pairs of canonical point indices.
    pub fn from_pairs(
        bottom: usize,
        top: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, TlError> {
        let n = bottom + top;
        let mut partner = vec![usize::MAX; n];
        for &(p, q) in pairs {
            if p >= n || q >= n || p == q {
                return Err(TlError::InvalidMatching(format!(
                    "bad pair ({p},{q}) for {n} points"
                )));
            }
            if partner[p] != usize::MAX || partner[q] != usize::MAX {
                return Err(TlError::InvalidMatching(format!(
                    "point used twice in ({p},{q})"
                )));
            }
            partner[p] = q;
            partner[q] = p;
        }
        if let Some(p) = partner.iter().position(|&x| x == usize::MAX) {
            return Err(TlError::InvalidMatching(format!("point {p} is unmatched")));
        }
        let m = Self {
            bottom,
            top,
            partner,
        };
        if !m.is_noncrossing() {
            return Err(TlError::InvalidMatching("pairs cross".into()));
        }
        Ok(m)
    }

    fn from_partner_unchecked(bottom: usize, top: usize, partner: Vec<usize>) -> Self {
        debug_assert_eq!(partner.len(), bottom + top);
        Self {
            bottom,
            top,
            partner,
        }
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n)
            .map(|p| if p < n { p + n } else { p - n })
            .collect();
        Self::from_partner_unchecked(n, n, partner)
    }

    pub fn cup() -> Self {
        Self::from_partner_unchecked(0, 2, vec![1, 0])
    }

    pub fn cap() -> Self {
        Self::from_partner_unchecked(2, 0, vec![1, 0])
    }

    /// `cap ; cup`.
    pub fn turnback() -> Self {
        Self::from_partner_unchecked(2, 2, vec![1, 0, 3, 2])
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    /// Each pair once, smaller index first, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&p| p < self.partner[p])
            .map(|p| (p, self.partner[p]))
            .collect()
    }

    /// Position of a canonical point when walking the boundary: bottom left
    /// to right, then top right to left.
    fn circular(&self, p: usize) -> usize {
        if p < self.bottom {
            p
        } else {
            self.bottom + (self.bottom + self.top - 1 - p)
        }
    }

    fn is_noncrossing(&self) -> bool {
        let arcs: Vec<(usize, usize)> = self
            .pairs()
            .into_iter()
            .map(|(p, q)| {
                let (x, y) = (self.circular(p), self.circular(q));
                (x.min(y), x.max(y))
            })
            .collect();
        arcs.iter()
            .all(|&(a, b)| arcs.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }

    /// Stacks `self` below `next`; returns the composite and the number of
    /// closed loops.
    pub fn compose(&self, next: &Self) -> Result<(Self, usize), TlError> {
        if self.top != next.bottom {
            return Err(TlError::ArityMismatch {
                left: self.top,
                right: next.bottom,
            });
        }
        let (m, n, k) = (self.bottom, self.top, next.top);
        // Nodes: outer bottom 0..m, middle m..m+n, outer top m+n..m+n+k.
        let mut uf = UnionFind::new(m + n + k);
        for (p, q) in self.pairs() {
            uf.union(p, q); // self's top j is node m+j, matching its own numbering
        }
        for (p, q) in next.pairs() {
            uf.union(p + m, q + m);
        }
        let outer = |x: usize| x < m || x >= m + n;
        let to_canonical = |x: usize| if x < m { x } else { x - n };
        let mut partner = vec![usize::MAX; m + k];
        let mut first_outer: BTreeMap<usize, usize> = BTreeMap::new();
        for x in (0..m + n + k).filter(|&x| outer(x)) {
            let root = uf.find(x);
            if let Some(y) = first_outer.remove(&root) {
                partner[to_canonical(x)] = to_canonical(y);
                partner[to_canonical(y)] = to_canonical(x);
            } else {
                first_outer.insert(root, x);
            }
        }
        debug_assert!(first_outer.is_empty());
        let mut loop_roots: Vec<usize> = (m..m + n).map(|x| uf.find(x)).collect();
        loop_roots.sort_unstable();
        loop_roots.dedup();
        let with_outer: std::collections::BTreeSet<usize> = (0..m + n + k)
            .filter(|&x| outer(x))
            .map(|x| uf.find(x))
            .collect();
        let loops = loop_roots
            .iter()
            .filter(|r| !with_outer.contains(r))
            .count();
        Ok((Self::from_partner_unchecked(m, k, partner), loops))
    }

    /// Side-by-side placement, `self` on the left.
    pub fn tensor(&self, right: &Self) -> Self {
        let (m1, n1, m2, n2) = (self.bottom, self.top, right.bottom, right.top);
        let map_left = |p: usize| if p < m1 { p } else { p - m1 + m1 + m2 };
        let map_right = |p: usize| {
            if p < m2 {
                p + m1
            } else {
                p - m2 + m1 + m2 + n1
            }
        };
        let mut partner = vec![0; m1 + m2 + n1 + n2];
        for p in 0..m1 + n1 {
            partner[map_left(p)] = map_left(self.partner[p]);
        }
        for p in 0..m2 + n2 {
            partner[map_right(p)] = map_right(right.partner[p]);
        }
        Self::from_partner_unchecked(m1 + m2, n1 + n2, partner)
    }

    /// Parses the text form `[(B1,T1),(B2,B3)]` (1-based labels).
    pub fn parse(bottom: usize, top: usize, input: &str) -> Result<Self, TlError> {
        let err = || TlError::Parse(input.to_string());
        let body = input
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(err)?;
        let label = |s: &str| -> Result<usize, TlError> {
            let s = s.trim();
            let (side, num) = s.split_at(1.min(s.len()));
            let i: usize = num.parse().map_err(|_| err())?;
            match (side, i) {
                ("B", 1..) if i <= bottom => Ok(i - 1),
                ("T", 1..) if i <= top => Ok(bottom + i - 1),
                _ => Err(err()),
            }
        };
        let mut pairs = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(err)?;
            let close = inner.find(')').ok_or_else(err)?;
            let (p, q) = inner[..close].split_once(',').ok_or_else(err)?;
            pairs.push((label(p)?, label(q)?));
            rest = inner[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        Self::from_pairs(bottom, top, &pairs)
    }

    fn label(&self, p: usize) -> String {
        if p < self.bottom {
            format!("B{}", p + 1)
        } else {
            format!("T{}", p - self.bottom + 1)
        }
    }
}

impl fmt::Display for PlanarMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (p, q)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", self.label(p), self.label(q))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PlanarMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} {}", self.bottom, self.top, self)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// All noncrossing matchings `m -> n`, in a fixed order.
pub fn tl_basis(m: usize, n: usize) -> Vec<PlanarMatching> {
    let total = m + n;
    if total % 2 == 1 {
        return Vec::new();
    }
    // Enumerate in circular order, then translate to canonical numbering.
    let from_circular = |c: usize| if c < m { c } else { m + (total - 1 - c) };
    let mut out = Vec::new();
    let mut circ = vec![0usize; total];
    enumerate_noncrossing(0, total, &mut circ, &mut |circ: &[usize]| {
        let mut partner = vec![0; total];
        for c in 0..total {
            partner[from_circular(c)] = from_circular(circ[c]);
        }
        out.push(PlanarMatching::from_partner_unchecked(m, n, partner));
    });
    out.sort();
    out
}

/// Fills `circ[lo..hi]` with every noncrossing matching of that interval.
fn enumerate_noncrossing(
    lo: usize,
    hi: usize,
    circ: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    fn go(
        intervals: &mut Vec<(usize, usize)>,
        circ: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        let Some((lo, hi)) = intervals.pop() else {
            emit(circ);
            return;
        };
        if lo == hi {
            go(intervals, circ, emit);
        } else {
            for k in (lo + 1..hi).step_by(2) {
                circ[lo] = k;
                circ[k] = lo;
                intervals.push((lo + 1, k));
                intervals.push((k + 1, hi));
                go(intervals, circ, emit);
                intervals.pop();
                intervals.pop();
            }
        }
        intervals.push((lo, hi));
    }
    go(&mut vec![(lo, hi)], circ, emit);
}

/// A linear combination of matchings with a common source and target.
#[derive(Debug, Clone, PartialEq)]
pub struct TlElement<R: Ring = LaurentPoly> {
    source: usize,
    target: usize,
    terms: BTreeMap<PlanarMatching, R>,
}

impl<R: Ring> TlElement<R> {
    pub fn zero(source: usize, target: usize) -> Self {
        Self {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_matching(m: PlanarMatching) -> Self {
        Self::from_term(m, R::one())
    }

    pub fn from_term(m: PlanarMatching, c: R) -> Self {
        let mut e = Self::zero(m.bottom, m.top);
        e.add_term(m, c);
        e
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matching(PlanarMatching::identity(n))
    }

    /// `c` times the empty matching `0 -> 0`.
    pub fn scalar(c: R) -> Self {
        Self::from_term(PlanarMatching::identity(0), c)
    }

    pub fn cup() -> Self {
        Self::from_matching(PlanarMatching::cup())
    }

    pub fn cap() -> Self {
        Self::from_matching(PlanarMatching::cap())
    }

    pub fn turnback() -> Self {
        Self::from_matching(PlanarMatching::turnback())
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarMatching, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, m: &PlanarMatching) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of the empty matching, for `0 -> 0` elements.
    pub fn scalar_part(&self) -> R {
        self.coefficient(&PlanarMatching::identity(0))
    }

    /// Panics if the matching's arities differ from the element's.
    pub fn add_term(&mut self, m: PlanarMatching, c: R) {
        assert_eq!(
            (m.bottom, m.top),
            (self.source, self.target),
            "matching arity differs from element"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TlError> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(TlError::ArityMismatch {
                left: self.target,
                right: other.target,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TlError> {
        self.add(&other.scale(&R::one().neg()))
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.mul(c));
        }
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TlElement<S> {
        let mut out = TlElement::zero(self.source, self.target);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// `self` first, then `next`; each closed loop contributes `delta`.
    pub fn compose(&self, next: &Self, delta: &R) -> Result<Self, TlError> {
        if self.target != next.source {
            return Err(TlError::ArityMismatch {
                left: self.target,
                right: next.source,
            });
        }
        let mut out = Self::zero(self.source, next.target);
        let mut delta_powers = vec![R::one()];
        for (m1, c1) in &self.terms {
            for (m2, c2) in &next.terms {
                let (m, loops) = m1.compose(m2)?;
                while delta_powers.len() <= loops {
                    let last = delta_powers.last().expect("nonempty").mul(delta);
                    delta_powers.push(last);
                }
                out.add_term(m, c1.mul(c2).mul(&delta_powers[loops]));
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, right: &Self) -> Self {
        let mut out = Self::zero(self.source + right.source, self.target + right.target);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &right.terms {
                out.add_term(m1.tensor(m2), c1.mul(c2));
            }
        }
        out
    }
}

impl<R: Ring> fmt::Display for TlElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}
