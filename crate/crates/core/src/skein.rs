//! Skein quotient: crossings are expanded into Temperley-Lieb diagrams,
//!
//! ```text
//! X+ = A * id_2 + A^-1 * e        X- = A^-1 * id_2 + A * e
//! ```
//!
//! with `e = cap ; cup` and loop value `delta = -A^2 - A^-2`. Expansion runs
//! one generator at a time so intermediate sums stay within the TL basis.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ring::{evaluate_poly, LaurentPoly, Ring, RingError, RingValue};
use crate::tangle::{Generator, TangleError, TangleExpr, TangleWord};
use crate::tl::{PlanarMatching, TlElement, TlError};

/// Crossing limit for [`statesum_oracle`].
pub const ORACLE_MAX_CROSSINGS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("not a link: word is {inputs} -> {outputs}")]
    NotALink { inputs: usize, outputs: usize },
    #[error("{0} crossings exceed the state-sum limit of {ORACLE_MAX_CROSSINGS}")]
    TooManyCrossings(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Tangle(TangleError),
}

impl From<TangleError> for SkeinError {
    fn from(e: TangleError) -> Self {
        match e {
            TangleError::ArityMismatch { left, right } => SkeinError::ArityMismatch { left, right },
            other => SkeinError::Tangle(other),
        }
    }
}

impl From<TlError> for SkeinError {
    fn from(e: TlError) -> Self {
        match e {
            TlError::ArityMismatch { left, right } => SkeinError::ArityMismatch { left, right },
            other => unreachable!("skein expansion only builds valid matchings: {other}"),
        }
    }
}

/// The evaluation point `A` in some ring, with `A^-1` and `delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeinContext<R: Ring> {
    a: R,
    a_inv: R,
    delta: R,
}

impl SkeinContext<LaurentPoly> {
    /// `A` as the indeterminate of `Z[A, A^-1]`.
    pub fn symbolic() -> Self {
        Self::new(LaurentPoly::a()).expect("A is a unit")
    }
}

impl<R: Ring> SkeinContext<R> {
    pub fn new(a: R) -> Result<Self, SkeinError> {
        let a_inv = a
            .unit_inverse()
            .ok_or_else(|| RingError::NotAUnit(a.to_string()))?;
        let delta = a.mul(&a).add(&a_inv.mul(&a_inv)).neg();
        Ok(Self { a, a_inv, delta })
    }

    pub fn a(&self) -> &R {
        &self.a
    }

    pub fn a_inv(&self) -> &R {
        &self.a_inv
    }

    pub fn delta(&self) -> &R {
        &self.delta
    }

    /// Image of a polynomial coefficient in this ring.
    pub fn coefficient(&self, p: &LaurentPoly) -> R {
        p.evaluate_with(&self.a, &self.a_inv)
    }

    /// TL image of a single generator.
    pub fn generator_image(&self, g: Generator) -> TlElement<R> {
        let id2 = || TlElement::identity(2);
        let e = TlElement::turnback;
        match g {
            Generator::Id => TlElement::identity(1),
            Generator::Cup => TlElement::cup(),
            Generator::Cap => TlElement::cap(),
            Generator::Xp => id2()
                .scale(&self.a)
                .add(&e().scale(&self.a_inv))
                .expect("2 -> 2"),
            Generator::Xm => id2()
                .scale(&self.a_inv)
                .add(&e().scale(&self.a))
                .expect("2 -> 2"),
        }
    }

    pub fn expand_word(&self, word: &TangleWord) -> TlElement<R> {
        let mut acc = TlElement::identity(word.source());
        let mut width = word.source();
        for slice in word.slices() {
            let mut left = 0;
            for &g in slice.factors() {
                if g != Generator::Id {
                    let right = width - left - g.domain();
                    let step = TlElement::identity(left)
                        .tensor(&self.generator_image(g))
                        .tensor(&TlElement::identity(right));
                    acc = acc
                        .compose(&step, &self.delta)
                        .expect("word arities are valid");
                    width = width - g.domain() + g.codomain();
                }
                left += g.codomain();
            }
        }
        acc
    }

    pub fn expand_to_tl(&self, expr: &TangleExpr) -> TlElement<R> {
        let mut out = TlElement::zero(expr.source(), expr.target());
        for (word, c) in expr.terms() {
            let term = self.expand_word(word).scale(&self.coefficient(c));
            out = out.add(&term).expect("shared arities");
        }
        out
    }

    pub fn bracket(&self, link: &TangleWord) -> Result<R, SkeinError> {
        if !link.is_link() {
            return Err(SkeinError::NotALink {
                inputs: link.source(),
                outputs: link.target(),
            });
        }
        Ok(self
            .expand_word(link)
            .coefficient(&PlanarMatching::identity(0)))
    }

    pub fn quotient_equal(&self, s: &TangleExpr, t: &TangleExpr) -> Result<bool, SkeinError> {
        if s.source() != t.source() {
            return Err(SkeinError::ArityMismatch {
                left: s.source(),
                right: t.source(),
            });
        }
        if s.target() != t.target() {
            return Err(SkeinError::ArityMismatch {
                left: s.target(),
                right: t.target(),
            });
        }
        Ok(self.expand_to_tl(s) == self.expand_to_tl(t))
    }
}

/// Bracket with `A` given as a tagged ring value; the result has the same tag.
pub fn bracket_at(link: &TangleWord, a: &RingValue) -> Result<RingValue, SkeinError> {
    Ok(match a {
        RingValue::Laurent(x) => RingValue::Laurent(SkeinContext::new(x.clone())?.bracket(link)?),
        RingValue::Rational(x) => RingValue::Rational(SkeinContext::new(x.clone())?.bracket(link)?),
        RingValue::Gaussian(x) => RingValue::Gaussian(SkeinContext::new(x.clone())?.bracket(link)?),
        RingValue::Complex(x) => RingValue::Complex(SkeinContext::new(*x)?.bracket(link)?),
    })
}

/// Symbolic bracket, then substitution; agrees with [`bracket_at`].
pub fn bracket_symbolic_then_evaluate(
    link: &TangleWord,
    a: &RingValue,
) -> Result<RingValue, SkeinError> {
    let p = SkeinContext::symbolic().bracket(link)?;
    Ok(evaluate_poly(&p, a)?)
}

/// Brute-force state sum over all `2^c` smoothings.
///
/// Each crossing is smoothed either along the strands (`id`) or across them
/// (`cap ; cup`). For `X+` the `id` smoothing carries `A`; for `X-` the
/// turnback does. A state with `k` A-smoothings out of `c` and `L` loops
/// contributes `A^(2k - c) * delta^L`.
pub fn statesum_oracle(link: &TangleWord) -> Result<LaurentPoly, SkeinError> {
    if !link.is_link() {
        return Err(SkeinError::NotALink {
            inputs: link.source(),
            outputs: link.target(),
        });
    }
    let c = link.crossing_count();
    if c > ORACLE_MAX_CROSSINGS {
        return Err(SkeinError::TooManyCrossings(c));
    }

    // Every wire endpoint gets a node; fixed joins come from caps, cups and
    // plain strands, crossings are joined per state.
    let mut nodes = 0usize;
    let mut fresh = || {
        nodes += 1;
        nodes - 1
    };
    let mut fixed: Vec<(usize, usize)> = Vec::new();
    let mut crossings: Vec<(bool, [usize; 4])> = Vec::new();
    let mut frame: Vec<usize> = Vec::new();
    for slice in link.slices() {
        let mut next = Vec::new();
        let mut it = frame.iter().copied();
        for &g in slice.factors() {
            match g {
                Generator::Id => next.push(it.next().expect("arity")),
                Generator::Cup => {
                    let (p, q) = (fresh(), fresh());
                    fixed.push((p, q));
                    next.extend([p, q]);
                }
                Generator::Cap => {
                    let (p, q) = (it.next().expect("arity"), it.next().expect("arity"));
                    fixed.push((p, q));
                }
                Generator::Xp | Generator::Xm => {
                    let (i1, i2) = (it.next().expect("arity"), it.next().expect("arity"));
                    let (o1, o2) = (fresh(), fresh());
                    crossings.push((g == Generator::Xp, [i1, i2, o1, o2]));
                    next.extend([o1, o2]);
                }
            }
        }
        frame = next;
    }

    let mut counts: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for state in 0u32..(1u32 << c) {
        let mut parent: Vec<usize> = (0..nodes).collect();
        let mut a_count = 0i64;
        for &(p, q) in &fixed {
            join(&mut parent, p, q);
        }
        for (k, &(positive, [i1, i2, o1, o2])) in crossings.iter().enumerate() {
            let along = state >> k & 1 == 1;
            if along {
                join(&mut parent, i1, o1);
                join(&mut parent, i2, o2);
            } else {
                join(&mut parent, i1, i2);
                join(&mut parent, o1, o2);
            }
            if along == positive {
                a_count += 1;
            }
        }
        let loops = (0..nodes).filter(|&x| root(&mut parent, x) == x).count();
        *counts.entry((2 * a_count - c as i64, loops)).or_default() += 1;
    }

    let delta = LaurentPoly::delta();
    let mut total = LaurentPoly::zero();
    for ((exp, loops), n) in counts {
        let mut term = LaurentPoly::monomial(n, exp);
        for _ in 0..loops {
            term = &term * &delta;
        }
        total = &total + &term;
    }
    Ok(total)
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn join(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (root(parent, a), root(parent, b));
    if ra != rb {
        parent[ra] = rb;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{GaussianRational, RingTag};
    use crate::tangle::Slice;
    use num_rational::BigRational;
    use proptest::prelude::*;

    use Generator::{Cap, Cup, Id, Xm, Xp};

    fn ctx() -> SkeinContext<LaurentPoly> {
        SkeinContext::symbolic()
    }

    fn w(source: usize, slices: &[&[Generator]]) -> TangleWord {
        TangleWord::new(source, slices.iter().map(|s| Slice(s.to_vec())).collect()).unwrap()
    }

    fn ex(word: TangleWord) -> TangleExpr {
        TangleExpr::from_word(word)
    }

    fn poly(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    /// Trace closure of a 2-strand braid word.
    fn closure(braid: &[Generator]) -> TangleWord {
        let mut slices: Vec<Vec<Generator>> = vec![vec![Cup], vec![Id, Cup, Id]];
        for &g in braid {
            slices.push(vec![Id, Id, g]);
        }
        slices.push(vec![Id, Cap, Id]);
        slices.push(vec![Cap]);
        let refs: Vec<&[Generator]> = slices.iter().map(|s| s.as_slice()).collect();
        w(0, &refs)
    }

    #[test]
    fn crossing_expansions() {
        let c = ctx();
        let a = LaurentPoly::a();
        let e = TlElement::<LaurentPoly>::turnback();
        let id2 = TlElement::<LaurentPoly>::identity(2);
        assert_eq!(
            c.expand_word(&TangleWord::xp()),
            id2.scale(&a).add(&e.scale(&a.mirror())).unwrap()
        );
        assert_eq!(
            c.expand_word(&TangleWord::xm()),
            id2.scale(&a.mirror()).add(&e.scale(&a)).unwrap()
        );
        let xpxm = TangleWord::xp().compose(&TangleWord::xm()).unwrap();
        assert_eq!(c.expand_word(&xpxm), id2);
    }

    #[test]
    fn unknot_and_unlink() {
        let unknot = TangleWord::cup().compose(&TangleWord::cap()).unwrap();
        assert_eq!(ctx().bracket(&unknot).unwrap(), LaurentPoly::delta());
        assert_eq!(statesum_oracle(&unknot).unwrap(), LaurentPoly::delta());
        let unlink = unknot.tensor(&unknot).unwrap();
        let d2 = &LaurentPoly::delta() * &LaurentPoly::delta();
        assert_eq!(ctx().bracket(&unlink).unwrap(), d2);
        assert_eq!(statesum_oracle(&unlink).unwrap(), d2);
    }

    #[test]
    fn hopf_link() {
        let hopf = closure(&[Xp, Xp]);
        // A^2 d^2 + 2 d + A^-2 d^2 by hand.
        let d = LaurentPoly::delta();
        let hand = &(&(&poly("A^2 + A^-2") * &d) * &d) + &(&d * &LaurentPoly::constant(2));
        let expected = &d * &poly("-A^4 - A^-4");
        assert_eq!(hand, expected);
        assert_eq!(statesum_oracle(&hopf).unwrap(), expected);
        assert_eq!(ctx().bracket(&hopf).unwrap(), expected);
    }

    #[test]
    fn trefoil_chirality() {
        let d = LaurentPoly::delta();
        let with_xp = closure(&[Xp, Xp, Xp]);
        let with_xm = closure(&[Xm, Xm, Xm]);
        // By hand in TL_2: (A + A^-1 e)^3 = A^3 + (3A + 3A^-1 d + A^-3 d^2) e,
        // closed with tr(1) = d^2, tr(e) = d.
        let a3 = LaurentPoly::monomial(1, 3);
        let coeff_e = &(&poly("3*A") + &(&poly("3*A^-1") * &d)) + &(&poly("A^-3") * &(&d * &d));
        let hand = &(&a3 * &(&d * &d)) + &(&coeff_e * &d);
        let expected = &d * &poly("-A^5 - A^-3 + A^-7");
        assert_eq!(hand, expected);
        assert_eq!(statesum_oracle(&with_xp).unwrap(), expected);
        assert_eq!(ctx().bracket(&with_xp).unwrap(), expected);
        let mirrored = &d * &poly("-A^-5 - A^3 + A^7");
        assert_eq!(expected.mirror(), mirrored);
        assert_eq!(ctx().bracket(&with_xm).unwrap(), mirrored);
        assert_eq!(statesum_oracle(&with_xm).unwrap(), mirrored);
    }

    #[test]
    fn bracket_rejects_tangles() {
        assert_eq!(
            ctx().bracket(&TangleWord::xp()).unwrap_err(),
            SkeinError::NotALink {
                inputs: 2,
                outputs: 2
            }
        );
        assert!(matches!(
            statesum_oracle(&TangleWord::cup()),
            Err(SkeinError::NotALink { .. })
        ));
    }

    #[test]
    fn oracle_crossing_limit() {
        let big = closure(&[Xp; 21]);
        assert_eq!(
            statesum_oracle(&big).unwrap_err(),
            SkeinError::TooManyCrossings(21)
        );
    }

    #[test]
    fn relation_t0() {
        let id1 = ex(TangleWord::identity(1));
        let l = w(1, &[&[Cup, Id], &[Id, Cap]]);
        let r = w(1, &[&[Id, Cup], &[Cap, Id]]);
        assert!(ctx().quotient_equal(&ex(l), &id1).unwrap());
        assert!(ctx().quotient_equal(&ex(r), &id1).unwrap());
    }

    #[test]
    fn relation_t0_prime_both_sign_choices() {
        for (x, y) in [(Xp, Xm), (Xm, Xp)] {
            let l = w(1, &[&[Id, Cup], &[x, Id]]);
            let r = w(1, &[&[Cup, Id], &[Id, y]]);
            assert!(
                ctx().quotient_equal(&ex(l), &ex(r)).unwrap(),
                "{x:?} / {y:?}"
            );
        }
        // With equal signs on both sides the relation fails.
        for x in [Xp, Xm] {
            let l = w(1, &[&[Id, Cup], &[x, Id]]);
            let r = w(1, &[&[Cup, Id], &[Id, x]]);
            assert!(!ctx().quotient_equal(&ex(l), &ex(r)).unwrap());
        }
    }

    #[test]
    fn relation_t1_prime() {
        let l = w(0, &[&[Cup, Cup], &[Xp, Xm], &[Id, Cap, Id]]);
        assert!(ctx()
            .quotient_equal(&ex(l), &ex(TangleWord::cup()))
            .unwrap());
    }

    #[test]
    fn relation_t2() {
        let id2 = ex(TangleWord::identity(2));
        for (x, y) in [(Xp, Xm), (Xm, Xp)] {
            assert!(ctx()
                .quotient_equal(&ex(w(2, &[&[x], &[y]])), &id2)
                .unwrap());
        }
    }

    #[test]
    fn relation_t3() {
        let l = w(3, &[&[Xp, Id], &[Id, Xp], &[Xp, Id]]);
        let r = w(3, &[&[Id, Xp], &[Xp, Id], &[Id, Xp]]);
        assert!(ctx().quotient_equal(&ex(l), &ex(r)).unwrap());
        let lm = w(3, &[&[Xm, Id], &[Id, Xm], &[Xm, Id]]);
        let rm = w(3, &[&[Id, Xm], &[Xm, Id], &[Id, Xm]]);
        assert!(ctx().quotient_equal(&ex(lm), &ex(rm)).unwrap());
    }

    #[test]
    fn crossings_are_distinct_in_the_quotient() {
        assert!(!ctx()
            .quotient_equal(&ex(TangleWord::xp()), &ex(TangleWord::xm()))
            .unwrap());
        let err = ctx()
            .quotient_equal(&ex(TangleWord::xp()), &ex(TangleWord::cup()))
            .unwrap_err();
        assert_eq!(err, SkeinError::ArityMismatch { left: 2, right: 0 });
    }

    #[test]
    fn curl_factors() {
        // Positive kink on one strand; by hand: A (-A^2 - A^-2) + A^-1 = -A^3.
        let kink = |g| w(1, &[&[Id, Cup], &[g, Id], &[Id, Cap]]);
        let mirror_kink = |g| w(1, &[&[Cup, Id], &[Id, g], &[Cap, Id]]);
        let id1 = TlElement::<LaurentPoly>::identity(1);
        let u = poly("-A^3");
        assert_eq!(ctx().expand_word(&kink(Xp)), id1.scale(&u));
        assert_eq!(ctx().expand_word(&mirror_kink(Xp)), id1.scale(&u));
        assert_eq!(ctx().expand_word(&kink(Xm)), id1.scale(&u.mirror()));
        assert_eq!(&u * &u.mirror(), LaurentPoly::constant(1));
        // Independent check: close the kink and run the state sum.
        let closed = TangleWord::cup()
            .compose(&kink(Xp).tensor(&TangleWord::identity(1)).unwrap())
            .unwrap()
            .compose(&TangleWord::cap())
            .unwrap();
        assert_eq!(
            statesum_oracle(&closed).unwrap(),
            &u * &LaurentPoly::delta()
        );
    }

    #[test]
    fn linear_expressions_expand_linearly() {
        let a = LaurentPoly::a();
        let mut e = TangleExpr::from_term(TangleWord::xp(), a.clone());
        e.add_term(TangleWord::xm(), -&a.mirror()).unwrap();
        // A*(A id + A^-1 e) - A^-1 (A^-1 id + A e) = (A^2 - A^-2) id
        let id2 = TlElement::<LaurentPoly>::identity(2);
        assert_eq!(ctx().expand_to_tl(&e), id2.scale(&poly("A^2 - A^-2")));
    }

    #[test]
    fn numeric_contexts() {
        let hopf = closure(&[Xp, Xp]);
        let i = RingValue::Gaussian(GaussianRational::i());
        let q2 = RingValue::Rational(BigRational::from_int(2));
        let m1 = RingValue::from_int(RingTag::Rational, -1);
        for a in [i, q2, m1] {
            assert_eq!(
                bracket_at(&hopf, &a).unwrap(),
                bracket_symbolic_then_evaluate(&hopf, &a).unwrap()
            );
        }
        let zero = RingValue::from_int(RingTag::Rational, 0);
        assert!(matches!(
            bracket_at(&hopf, &zero),
            Err(SkeinError::Ring(RingError::NotAUnit(_)))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn oracle_agrees_with_expansion(link in crate::library::arb_link(8, 6)) {
            prop_assert_eq!(ctx().bracket(&link).unwrap(), statesum_oracle(&link).unwrap());
        }

        #[test]
        fn mirror_image_bracket(link in crate::library::arb_link(6, 6)) {
            prop_assert_eq!(ctx().bracket(&link.mirror()).unwrap(), ctx().bracket(&link).unwrap().mirror());
        }

        #[test]
        fn expansion_is_monoidal(
            a in crate::tangle::tests::arb_word(3),
            b in crate::tangle::tests::arb_word(3),
        ) {
            let lhs = ctx().expand_word(&a.tensor(&b).unwrap());
            let rhs = ctx().expand_word(&a).tensor(&ctx().expand_word(&b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
