//! Words in the free monoidal category on `cup`, `cap`, `X+`, `X-`.
//!
//! A [`TangleWord`] is a list of horizontal [`Slice`]s read bottom to top.
//! Words are not quotiented by any relation here; equality in the skein
//! quotient is decided by [`crate::skein`].

mod canonical;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ring::LaurentPoly;

/// Widest frame a word may pass through.
pub const MAX_STRANDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("arity mismatch: left side ends at {left} strands, right side starts at {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("word passes through {0} strands; the limit is {MAX_STRANDS}")]
    TooWide(usize),
    #[error("slice {index} has domain {found}, expected {expected}")]
    BrokenChain {
        index: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Id,
    Cup,
    Cap,
    /// Positive crossing `X+`.
    Xp,
    /// Negative crossing `X-`.
    Xm,
}

impl Generator {
    pub fn domain(self) -> usize {
        match self {
            Generator::Id => 1,
            Generator::Cup => 0,
            Generator::Cap | Generator::Xp | Generator::Xm => 2,
        }
    }

    pub fn codomain(self) -> usize {
        match self {
            Generator::Id => 1,
            Generator::Cap => 0,
            Generator::Cup | Generator::Xp | Generator::Xm => 2,
        }
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, Generator::Xp | Generator::Xm)
    }
}

/// One horizontal layer: generators placed side by side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice(pub Vec<Generator>);

impl Slice {
    pub fn identity(width: usize) -> Self {
        Slice(vec![Generator::Id; width])
    }

    /// `Id^left (x) g (x) Id^right`.
    pub fn padded(left: usize, g: Generator, right: usize) -> Self {
        let mut v = vec![Generator::Id; left];
        v.push(g);
        v.extend(std::iter::repeat_n(Generator::Id, right));
        Slice(v)
    }

    pub fn domain(&self) -> usize {
        self.0.iter().map(|g| g.domain()).sum()
    }

    pub fn codomain(&self) -> usize {
        self.0.iter().map(|g| g.codomain()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|g| *g == Generator::Id)
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }
}

/// A composable word of slices, `source -> target`.
///
/// All-identity slices are dropped on construction, so an identity word has
/// no slices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangleWord {
    source: usize,
    target: usize,
    slices: Vec<Slice>,
}

impl TangleWord {
    /// Validates the arity chain starting from `source`.
    pub fn new(source: usize, slices: Vec<Slice>) -> Result<Self, TangleError> {
        if source > MAX_STRANDS {
            return Err(TangleError::TooWide(source));
        }
        let mut width = source;
        for (index, s) in slices.iter().enumerate() {
            if s.domain() != width {
                return Err(TangleError::BrokenChain {
                    index,
                    expected: width,
                    found: s.domain(),
                });
            }
            width = s.codomain();
            if width > MAX_STRANDS {
                return Err(TangleError::TooWide(width));
            }
        }
        let slices = slices.into_iter().filter(|s| !s.is_identity()).collect();
        Ok(Self {
            source,
            target: width,
            slices,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            source: n,
            target: n,
            slices: Vec::new(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::new(g.domain(), vec![Slice(vec![g])]).expect("single generator is valid")
    }

    pub fn cup() -> Self {
        Self::generator(Generator::Cup)
    }

    pub fn cap() -> Self {
        Self::generator(Generator::Cap)
    }

    pub fn xp() -> Self {
        Self::generator(Generator::Xp)
    }

    pub fn xm() -> Self {
        Self::generator(Generator::Xm)
    }

    /// The turnback `cap ; cup`, 2 -> 2.
    pub fn turnback() -> Self {
        Self::cap().compose(&Self::cup()).expect("cap;cup composes")
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn is_link(&self) -> bool {
        self.source == 0 && self.target == 0
    }

    /// Re-checks the arity chain (words built through the API always pass).
    pub fn validate(&self) -> Result<(), TangleError> {
        let rebuilt = Self::new(self.source, self.slices.clone())?;
        if rebuilt.target != self.target {
            return Err(TangleError::ArityMismatch {
                left: rebuilt.target,
                right: self.target,
            });
        }
        Ok(())
    }

    /// `self` first, then `next`.
    pub fn compose(&self, next: &Self) -> Result<Self, TangleError> {
        if self.target != next.source {
            return Err(TangleError::ArityMismatch {
                left: self.target,
                right: next.source,
            });
        }
        let mut slices = self.slices.clone();
        slices.extend(next.slices.iter().cloned());
        Ok(Self {
            source: self.source,
            target: next.target,
            slices,
        })
    }

    /// Side-by-side placement, `self` on the left. Shorter slice lists are
    /// padded with identity slices at the top.
    pub fn tensor(&self, right: &Self) -> Result<Self, TangleError> {
        let depth = self.slices.len().max(right.slices.len());
        let column = |w: &Self, i: usize| -> Slice {
            w.slices
                .get(i)
                .cloned()
                .unwrap_or_else(|| Slice::identity(w.target))
        };
        let slices = (0..depth)
            .map(|i| {
                let mut s = column(self, i).0;
                s.extend(column(right, i).0);
                Slice(s)
            })
            .collect();
        Self::new(self.source + right.source, slices)
    }

    /// `Id^left (x) self (x) Id^right`.
    pub fn padded(&self, left: usize, right: usize) -> Result<Self, TangleError> {
        Self::identity(left)
            .tensor(self)?
            .tensor(&Self::identity(right))
    }

    /// Number of `X+` minus number of `X-`.
    pub fn writhe(&self) -> i64 {
        self.generators().fold(0, |acc, g| match g {
            Generator::Xp => acc + 1,
            Generator::Xm => acc - 1,
            _ => acc,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.generators().filter(|g| g.is_crossing()).count()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.slices.iter().flat_map(|s| s.0.iter().copied())
    }

    /// Replaces every `X+` by `X-` and vice versa.
    pub fn mirror(&self) -> Self {
        let flip = |g: &Generator| match g {
            Generator::Xp => Generator::Xm,
            Generator::Xm => Generator::Xp,
            other => *other,
        };
        Self {
            source: self.source,
            target: self.target,
            slices: self
                .slices
                .iter()
                .map(|s| Slice(s.0.iter().map(flip).collect()))
                .collect(),
        }
    }

    /// Normal form modulo the interchange law of the monoidal structure:
    /// two words that differ only by sliding generators past each other
    /// (including the identity `cap (x) cup = cup (x) cap = cap ; cup`) have the
    /// same canonical form.
    pub fn canonical_form(&self) -> Self {
        canonical::canonical_form(self)
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::print_word(self))
    }
}

/// A formal linear combination of words sharing source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleExpr {
    source: usize,
    target: usize,
    terms: BTreeMap<TangleWord, LaurentPoly>,
}

impl TangleExpr {
    pub fn zero(source: usize, target: usize) -> Self {
        Self {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(word: TangleWord) -> Self {
        Self::from_term(word, LaurentPoly::constant(1))
    }

    pub fn from_term(word: TangleWord, coefficient: LaurentPoly) -> Self {
        let mut e = Self::zero(word.source, word.target);
        e.add_term(word, coefficient)
            .expect("arity matches by construction");
        e
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TangleWord, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(
        &mut self,
        word: TangleWord,
        coefficient: LaurentPoly,
    ) -> Result<(), TangleError> {
        if word.source != self.source {
            return Err(TangleError::ArityMismatch {
                left: self.source,
                right: word.source,
            });
        }
        if word.target != self.target {
            return Err(TangleError::ArityMismatch {
                left: self.target,
                right: word.target,
            });
        }
        let slot = self.terms.entry(word).or_default();
        *slot = &*slot + &coefficient;
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, TangleError> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c).expect("same arities");
        }
        out
    }

    pub fn compose(&self, next: &Self) -> Result<Self, TangleError> {
        self.bilinear(next, next.target_of_compose(self)?, TangleWord::compose)
    }

    pub fn tensor(&self, right: &Self) -> Result<Self, TangleError> {
        let arity = (self.source + right.source, self.target + right.target);
        self.bilinear(right, arity, TangleWord::tensor)
    }

    fn target_of_compose(&self, first: &Self) -> Result<(usize, usize), TangleError> {
        if first.target != self.source {
            return Err(TangleError::ArityMismatch {
                left: first.target,
                right: self.source,
            });
        }
        Ok((first.source, self.target))
    }

    fn bilinear(
        &self,
        other: &Self,
        (source, target): (usize, usize),
        op: impl Fn(&TangleWord, &TangleWord) -> Result<TangleWord, TangleError>,
    ) -> Result<Self, TangleError> {
        let mut out = Self::zero(source, target);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(op(w1, w2)?, c1 * c2)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compose_cup_cap_is_closed_loop() {
        let loop_word = TangleWord::cup().compose(&TangleWord::cap()).unwrap();
        assert_eq!((loop_word.source(), loop_word.target()), (0, 0));
        assert_eq!(loop_word.slices().len(), 2);
        assert!(loop_word.is_link());
    }

    #[test]
    fn compose_with_identity() {
        let x = TangleWord::xp();
        assert_eq!(x.compose(&TangleWord::identity(2)).unwrap(), x);
        assert_eq!(TangleWord::identity(2).compose(&x).unwrap(), x);
    }

    #[test]
    fn compose_reports_both_arities() {
        let err = TangleWord::cap().compose(&TangleWord::cap()).unwrap_err();
        assert_eq!(err, TangleError::ArityMismatch { left: 0, right: 2 });
    }

    #[test]
    fn crossing_then_inverse_is_not_identity_as_word() {
        let w = TangleWord::xp().compose(&TangleWord::xm()).unwrap();
        assert_eq!((w.source(), w.target()), (2, 2));
        assert_ne!(w, TangleWord::identity(2));
        assert_eq!(w.writhe(), 0);
    }

    #[test]
    fn tensor_examples() {
        let w = TangleWord::identity(1).tensor(&TangleWord::cup()).unwrap();
        assert_eq!((w.source(), w.target()), (1, 3));
        assert_eq!(w.slices(), &[Slice(vec![Generator::Id, Generator::Cup])]);
        let x = TangleWord::xp();
        assert_eq!(x.tensor(&TangleWord::identity(0)).unwrap(), x);
        let cc = TangleWord::cup().tensor(&TangleWord::cup()).unwrap();
        assert_eq!((cc.source(), cc.target()), (0, 4));
        assert_eq!(cc.slices(), &[Slice(vec![Generator::Cup, Generator::Cup])]);
    }

    #[test]
    fn tensor_pads_shorter_side() {
        let two = TangleWord::xp().compose(&TangleWord::xp()).unwrap();
        let w = two.tensor(&TangleWord::cap()).unwrap();
        assert_eq!(w.slices().len(), 2);
        assert_eq!(w.slices()[1], Slice(vec![Generator::Xp]));
        assert_eq!((w.source(), w.target()), (4, 2));
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(TangleWord::identity(3).writhe(), 0);
        let mut w = TangleWord::identity(2);
        for _ in 0..3 {
            w = w.compose(&TangleWord::xp()).unwrap();
        }
        assert_eq!(w.writhe(), 3);
        assert_eq!(w.mirror().writhe(), -3);
    }

    #[test]
    fn validation_rejects_mismatched_slices() {
        let bad = TangleWord::new(
            2,
            vec![Slice(vec![Generator::Cap]), Slice(vec![Generator::Cap])],
        );
        assert_eq!(
            bad.unwrap_err(),
            TangleError::BrokenChain {
                index: 1,
                expected: 0,
                found: 2
            }
        );
        let wide = TangleWord::identity(40).tensor(&TangleWord::identity(30));
        assert_eq!(wide.unwrap_err(), TangleError::TooWide(70));
    }

    #[test]
    fn identity_slices_are_dropped() {
        let w = TangleWord::new(
            2,
            vec![
                Slice::identity(2),
                Slice(vec![Generator::Xp]),
                Slice::identity(2),
            ],
        )
        .unwrap();
        assert_eq!(w, TangleWord::xp());
    }

    #[test]
    fn expr_linear_structure() {
        let a = LaurentPoly::a();
        let e = TangleExpr::from_term(TangleWord::xp(), a.clone());
        let f = TangleExpr::from_term(TangleWord::xp(), -&a);
        assert!(e.add(&f).unwrap().is_zero());
        let g = TangleExpr::from_word(TangleWord::xm());
        let both = e.add(&g).unwrap();
        assert_eq!(both.terms().count(), 2);
        let sq = both.compose(&both).unwrap();
        assert_eq!(sq.terms().count(), 4);
        let cup = TangleExpr::from_word(TangleWord::cup());
        assert!(cup.compose(&cup).is_err());
        assert!(e.add(&cup).is_err());
        let t = cup.tensor(&both).unwrap();
        assert_eq!((t.source(), t.target()), (2, 4));
    }

    /// Random words built from generators by compose/tensor.
    pub(crate) fn arb_word(max_width: usize) -> impl Strategy<Value = TangleWord> {
        (0..=max_width).prop_flat_map(move |s| arb_word_from(s, max_width))
    }

    pub(crate) fn arb_word_from(
        source: usize,
        max_width: usize,
    ) -> impl Strategy<Value = TangleWord> {
        let gens = prop_oneof![
            Just(Generator::Cup),
            Just(Generator::Cap),
            Just(Generator::Xp),
            Just(Generator::Xm),
        ];
        prop::collection::vec((gens, 0usize..8), 0..7).prop_map(move |steps| {
            let mut w = TangleWord::identity(source);
            for (g, at) in steps {
                let width = w.target();
                if width < g.domain() || width - g.domain() + g.codomain() > max_width {
                    continue;
                }
                let left = at % (width - g.domain() + 1);
                let right = width - g.domain() - left;
                let step = TangleWord::generator(g).padded(left, right).unwrap();
                w = w.compose(&step).unwrap();
            }
            w
        })
    }

    proptest! {
        #[test]
        fn generated_words_validate(w in arb_word(5)) {
            prop_assert!(w.validate().is_ok());
            prop_assert!(TangleWord::new(w.source(), w.slices().to_vec()).is_ok());
        }

        #[test]
        fn tampered_words_are_rejected(w in arb_word(5), extra in 0usize..3) {
            prop_assume!(!w.slices().is_empty());
            let mut slices = w.slices().to_vec();
            let mut first = slices[0].clone();
            first.0.push(if extra == 0 { Generator::Cap } else { Generator::Id });
            slices[0] = first;
            prop_assert!(TangleWord::new(w.source(), slices).is_err());
        }
    }
}
