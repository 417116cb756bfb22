//! Interchange normal form.
//!
//! A word is flattened into a sequence of single-generator events, each
//! recorded with its position in the frame just before it fires. Two
//! adjacent events commute when their strands are disjoint; the positions
//! shift accordingly. The normal form is the Foata form (greedy layering)
//! of that commutation trace, minimised over the extra moves relating
//! `cap (x) cup`, `cup (x) cap` and `cap ; cup` at a shared point.

use std::collections::{BTreeSet, VecDeque};

use super::{Generator, Slice, TangleWord};

/// Cap on the number of tie configurations explored.
const STATE_LIMIT: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Event {
    gen: Generator,
    pos: usize,
}

impl Event {
    fn ins(self) -> usize {
        self.gen.domain()
    }
    fn outs(self) -> usize {
        self.gen.codomain()
    }
}

fn flatten(word: &TangleWord) -> Vec<Event> {
    let mut out = Vec::new();
    for slice in word.slices() {
        let mut offset = 0;
        for &g in slice.factors() {
            if g != Generator::Id {
                out.push(Event {
                    gen: g,
                    pos: offset,
                });
            }
            offset += g.codomain();
        }
    }
    out
}

/// A cap immediately followed by a cup at the same point.
fn is_tie(first: Event, second: Event) -> bool {
    first.gen == Generator::Cap && second.gen == Generator::Cup && first.pos == second.pos
}

/// Rewrites `first ; second` as `second' ; first'` when they act on disjoint
/// strands. Swaps into or out of a tie are refused; ties are handled by
/// [`tie_alternatives`].
fn swap(first: Event, second: Event) -> Option<(Event, Event)> {
    if is_tie(first, second) {
        return None;
    }
    let (a, b) = (first.pos, second.pos);
    let out = if b + second.ins() <= a {
        (
            second,
            Event {
                gen: first.gen,
                pos: a - second.ins() + second.outs(),
            },
        )
    } else if b >= a + first.outs() {
        (
            Event {
                gen: second.gen,
                pos: b - first.outs() + first.ins(),
            },
            first,
        )
    } else {
        return None;
    };
    (!is_tie(out.0, out.1)).then_some(out)
}

/// Greedy layering: each layer takes every remaining event that can be moved
/// past everything still pending and everything already in the layer.
fn foata(mut rest: Vec<Event>) -> Vec<Vec<Event>> {
    let mut layers = Vec::new();
    while !rest.is_empty() {
        let mut layer: Vec<Event> = Vec::new();
        let mut pending: Vec<Event> = Vec::new();
        for ev in rest {
            match move_to_front(ev, &layer, &pending) {
                Some((ev2, layer2, pending2)) => {
                    layer = layer2;
                    layer.insert(0, ev2);
                    pending = pending2;
                }
                None => pending.push(ev),
            }
        }
        layers.push(sort_layer(layer));
        rest = pending;
    }
    layers
}

type Moved = (Event, Vec<Event>, Vec<Event>);

fn move_to_front(ev: Event, layer: &[Event], pending: &[Event]) -> Option<Moved> {
    let mut cur = ev;
    let mut pending = pending.to_vec();
    for k in (0..pending.len()).rev() {
        let (c, p) = swap(pending[k], cur)?;
        cur = c;
        pending[k] = p;
    }
    let mut layer = layer.to_vec();
    for k in (0..layer.len()).rev() {
        let (c, p) = swap(layer[k], cur)?;
        cur = c;
        layer[k] = p;
    }
    Some((cur, layer, pending))
}

/// Orders mutually independent events left to right.
fn sort_layer(mut layer: Vec<Event>) -> Vec<Event> {
    loop {
        let mut changed = false;
        for k in 0..layer.len().saturating_sub(1) {
            let (x, y) = (layer[k], layer[k + 1]);
            if y.pos + y.ins() <= x.pos {
                let (y2, x2) = swap(x, y).expect("layer events are independent");
                layer[k] = y2;
                layer[k + 1] = x2;
                changed = true;
            }
        }
        if !changed {
            return layer;
        }
    }
}

fn render(source: usize, layers: &[Vec<Event>]) -> TangleWord {
    let mut width = source;
    let mut slices = Vec::with_capacity(layers.len());
    for layer in layers {
        // Events are left to right; event k's position already accounts for
        // the events to its left having fired.
        let mut factors = Vec::new();
        let mut consumed = 0; // input strands covered so far
        let mut shift: isize = 0;
        for ev in layer {
            let start = (ev.pos as isize - shift) as usize;
            factors.extend(std::iter::repeat_n(Generator::Id, start - consumed));
            factors.push(ev.gen);
            consumed = start + ev.ins();
            shift += ev.outs() as isize - ev.ins() as isize;
        }
        factors.extend(std::iter::repeat_n(Generator::Id, width - consumed));
        let s = Slice(factors);
        width = s.codomain();
        slices.push(s);
    }
    TangleWord::new(source, slices).expect("normal form preserves arities")
}

/// Brings events `i < j` next to each other, if possible.
fn make_adjacent(seq: &[Event], i: usize, j: usize) -> Option<(Vec<Event>, usize)> {
    let mut s = seq.to_vec();
    let mut i = i;
    let mut j = j;
    let mut idx = i + 1;
    while idx < j {
        // Try to move s[idx] in front of s[i].
        let mut trial = s.clone();
        let mut ok = true;
        for k in (i..idx).rev() {
            match swap(trial[k], trial[k + 1]) {
                Some((a, b)) => {
                    trial[k] = a;
                    trial[k + 1] = b;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            s = trial;
            i += 1;
        }
        idx += 1;
    }
    while j > i + 1 {
        let (a, b) = swap(s[j - 1], s[j])?;
        s[j - 1] = a;
        s[j] = b;
        j -= 1;
    }
    Some((s, i))
}

/// The three equivalent spellings of a cap meeting a cup, anchored at `q`.
fn tie_class(x: Event, y: Event) -> Option<[(Event, Event); 3]> {
    use Generator::{Cap, Cup};
    let q = match (x.gen, y.gen) {
        (Cap, Cup) if x.pos == y.pos => x.pos,
        (Cup, Cap) if y.pos == x.pos + 2 => x.pos,
        (Cup, Cap) if x.pos == y.pos + 2 => y.pos,
        _ => return None,
    };
    let e = |gen, pos| Event { gen, pos };
    Some([
        (e(Cap, q), e(Cup, q)),
        (e(Cup, q), e(Cap, q + 2)),
        (e(Cup, q + 2), e(Cap, q)),
    ])
}

fn tie_alternatives(seq: &[Event]) -> Vec<Vec<Event>> {
    let mut out = Vec::new();
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let pair = (seq[i].gen, seq[j].gen);
            if !matches!(
                pair,
                (Generator::Cap, Generator::Cup) | (Generator::Cup, Generator::Cap)
            ) {
                continue;
            }
            let Some((s, p)) = make_adjacent(seq, i, j) else {
                continue;
            };
            let Some(class) = tie_class(s[p], s[p + 1]) else {
                continue;
            };
            for (x, y) in class {
                if (x, y) != (s[p], s[p + 1]) {
                    let mut t = s.clone();
                    t[p] = x;
                    t[p + 1] = y;
                    out.push(t);
                }
            }
        }
    }
    out
}

pub(super) fn canonical_form(word: &TangleWord) -> TangleWord {
    let source = word.source();
    let normal = |seq: Vec<Event>| render(source, &foata(seq));
    let start = normal(flatten(word));
    let mut best = start.clone();
    let mut seen: BTreeSet<TangleWord> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        if w < best {
            best = w.clone();
        }
        if seen.len() >= STATE_LIMIT {
            continue;
        }
        for alt in tie_alternatives(&flatten(&w)) {
            let n = normal(alt);
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::super::tests::{arb_word, arb_word_from};
    use super::*;
    use proptest::prelude::*;

    fn w(source: usize, slices: &[&[Generator]]) -> TangleWord {
        TangleWord::new(source, slices.iter().map(|s| Slice(s.to_vec())).collect()).unwrap()
    }

    use Generator::{Cap, Cup, Id, Xm, Xp};

    #[test]
    fn sliding_independent_generators() {
        let a = w(4, &[&[Xp, Id, Id], &[Id, Id, Xm]]);
        let b = w(4, &[&[Id, Id, Xm], &[Xp, Id, Id]]);
        let c = w(4, &[&[Xp, Xm]]);
        assert_eq!(a.canonical_form(), c);
        assert_eq!(b.canonical_form(), c);
    }

    #[test]
    fn dependent_generators_stay_ordered() {
        let a = w(2, &[&[Xp], &[Xm]]);
        assert_eq!(a.canonical_form(), a);
        assert_ne!(a.canonical_form(), w(2, &[&[Xm], &[Xp]]).canonical_form());
    }

    #[test]
    fn cup_cap_tie_variants_agree() {
        let t1 = w(2, &[&[Cap], &[Cup]]);
        let t2 = w(2, &[&[Cup, Cap]]);
        let t3 = w(2, &[&[Cap, Cup]]);
        let t4 = w(2, &[&[Cup, Id, Id], &[Id, Id, Cap]]);
        let c = t1.canonical_form();
        assert_eq!(t2.canonical_form(), c);
        assert_eq!(t3.canonical_form(), c);
        assert_eq!(t4.canonical_form(), c);
    }

    #[test]
    fn separated_loops() {
        let a = w(0, &[&[Cup], &[Cap], &[Cup], &[Cap]]);
        let b = w(0, &[&[Cup, Cup], &[Cap, Cap]]);
        assert_eq!(a.canonical_form(), b.canonical_form());
        let nested = w(0, &[&[Cup], &[Id, Cup, Id], &[Id, Cap, Id], &[Cap]]);
        assert_ne!(nested.canonical_form(), b.canonical_form());
    }

    #[test]
    fn canonical_form_is_idempotent_on_examples() {
        let a = w(3, &[&[Xp, Id], &[Id, Xm], &[Cap, Id]]);
        let c = a.canonical_form();
        assert_eq!(c.canonical_form(), c);
        assert_eq!((c.source(), c.target()), (3, 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn interchange_law(
            (a, b) in arb_word(3).prop_flat_map(|a| { let t = a.target(); (Just(a), arb_word_from(t, 3)) }),
            (c, d) in arb_word(3).prop_flat_map(|c| { let t = c.target(); (Just(c), arb_word_from(t, 3)) }),
        ) {
            let lhs = a.compose(&b).unwrap().tensor(&c.compose(&d).unwrap()).unwrap();
            let rhs = a.tensor(&c).unwrap().compose(&b.tensor(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs.canonical_form(), rhs.canonical_form());
        }

        #[test]
        fn canonical_form_preserves_arity_and_writhe(a in arb_word(5)) {
            let c = a.canonical_form();
            prop_assert_eq!((c.source(), c.target()), (a.source(), a.target()));
            prop_assert_eq!(c.writhe(), a.writhe());
            prop_assert_eq!(c.canonical_form(), c.clone());
        }
    }
}
