//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The report goes to stderr on every run, so plain
//! `cargo test -p skein-core --test acceptance` shows it. Criteria listed in
//! `KNOWN_RED` are reported as FAIL and are asserted to still fail; everything
//! else must pass.

use std::io::Write;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_complex::Complex64;
use skein_core::dsl::parse_word;
use skein_core::forms::{
    asymmetry_trace_of, block_form, block_stats, forms_equivalent, solve_blocks, CanonicalBlock,
    Lambda, DEFAULT_MAX_BLOCKS,
};
use skein_core::library::{link_corpus, HOPF, TREFOIL, UNKNOT};
use skein_core::relations::relation_suite;
use skein_core::rep::{
    check_delta, make_representation, make_representation_approx, rank_n_form, FormMatrix,
};
use skein_core::ring::{GaussianRational, LaurentPoly, Ring, RingTag, RingValue};
use skein_core::skein::{bracket_at, statesum_oracle, SkeinContext};
use skein_core::tl::{tl_basis, TlElement};
use skein_core::unitary::{
    braid_relation_holds, crossing_matrices, is_unitary_exact, is_unitary_numeric,
    norm_bound_report, DEFAULT_TOLERANCE,
};
use skein_core::Matrix;

/// Sub-checks that cannot pass as stated, with the reason.
const KNOWN_RED: &[(&str, &str)] = &[(
    "6b",
    "H_1(-1) + Gamma_1 also has rank 3 and trace -1, and lambda = -1 is allowed at n = 1, \
     so the solver returns two classes instead of exactly {Gamma_2 + Gamma_1}",
)];

struct Line {
    id: &'static str,
    passed: bool,
    detail: String,
}

fn q(n: i64) -> BigRational {
    BigRational::from_int(n)
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() < limit
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let suite = relation_suite();
    let failed: Vec<_> = suite
        .iter()
        .filter(|r| !r.holds)
        .map(|r| r.name.clone())
        .collect();
    let fast = within(start, Duration::from_secs(1));
    Line {
        id: "1",
        passed: failed.is_empty() && fast,
        detail: format!(
            "relations T0, T0' (both readings), T1', T2, T3 in the quotient: {} of {} hold, {:?}{}",
            suite.len() - failed.len(),
            suite.len(),
            start.elapsed(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(", failing {failed:?}")
            }
        ),
    }
}

fn criterion_2() -> Line {
    let unknot = parse_word(UNKNOT).unwrap();
    let symbolic = SkeinContext::<LaurentPoly>::symbolic()
        .bracket(&unknot)
        .unwrap();
    let at_i = bracket_at(&unknot, &RingValue::Gaussian(GaussianRational::i())).unwrap();
    let at_1 = bracket_at(&unknot, &RingValue::from_int(RingTag::Rational, 1)).unwrap();
    let passed = symbolic == LaurentPoly::delta()
        && at_i == RingValue::from_int(RingTag::Gaussian, 2)
        && at_1 == RingValue::from_int(RingTag::Rational, -2);
    Line {
        id: "2",
        passed,
        detail: format!("<unknot> = {symbolic}, at A = i: {at_i}, at A = 1: {at_1}"),
    }
}

fn criterion_3() -> Line {
    let start = Instant::now();
    let ctx = SkeinContext::<LaurentPoly>::symbolic();
    let corpus = link_corpus(2024, 240, 8, 6);
    let agree = corpus
        .iter()
        .filter(|w| ctx.bracket(w).unwrap() == statesum_oracle(w).unwrap())
        .count();
    let max_c = corpus.iter().map(|w| w.crossing_count()).max().unwrap_or(0);
    let fast = within(start, Duration::from_secs(60));

    let d = LaurentPoly::delta();
    let hopf = ctx.bracket(&parse_word(HOPF).unwrap()).unwrap();
    let hopf_ok = hopf == &d * &LaurentPoly::parse("-A^4 - A^-4").unwrap();
    let trefoil = parse_word(TREFOIL).unwrap();
    let mirror = trefoil.mirror();
    let t = ctx.bracket(&trefoil).unwrap();
    let m = ctx.bracket(&mirror).unwrap();
    let chirality = t.mirror() == m && t != m && statesum_oracle(&trefoil).unwrap() == t;

    Line {
        id: "3",
        passed: agree == corpus.len() && corpus.len() >= 200 && max_c <= 8 && fast && hopf_ok && chirality,
        detail: format!(
            "bracket = state sum on {agree}/{} links (<= {max_c} crossings) in {:?}; Hopf = {hopf}; \
             trefoil {t} and mirror swap under A <-> A^-1: {chirality}",
            corpus.len(),
            start.elapsed()
        ),
    }
}

fn criterion_4() -> Line {
    let start = Instant::now();
    let a = LaurentPoly::a();
    let mut ok = true;
    let mut corners = Vec::new();
    for n in 2..=10 {
        let b = rank_n_form(n, &a).unwrap();
        ok &= check_delta(&b, &LaurentPoly::delta()).unwrap();
        let inv = b.inverse().unwrap();
        let corner = inv.get(n - 1, n - 1).clone();
        ok &= corner.is_one();
        corners.push(corner.to_string());
    }
    let fast = within(start, Duration::from_secs(5));
    Line {
        id: "4",
        passed: ok && fast,
        detail: format!(
            "rank_n_form(n) satisfies trace(B^-1 B^T) = delta for n = 2..10 in {:?}; inverse corners {corners:?}",
            start.elapsed()
        ),
    }
}

fn random_tl<G: Rng>(rng: &mut G, m: usize, n: usize) -> TlElement<LaurentPoly> {
    let basis = tl_basis(m, n);
    let mut x = TlElement::zero(m, n);
    for _ in 0..rng.gen_range(1..=3) {
        let mat = basis[rng.gen_range(0..basis.len())].clone();
        x.add_term(
            mat,
            LaurentPoly::monomial(rng.gen_range(-3..=3), rng.gen_range(-3..=3)),
        );
    }
    x
}

fn criterion_5() -> Line {
    let a = LaurentPoly::a();
    let delta = LaurentPoly::delta();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut compose_ok = 0;
    let mut tensor_ok = 0;
    let mut link_ok = 0;
    let corpus = link_corpus(77, 200, 8, 6);
    let ctx = SkeinContext::<LaurentPoly>::symbolic();
    let brackets: Vec<LaurentPoly> = corpus.iter().map(|w| ctx.bracket(w).unwrap()).collect();
    for rank in [2, 3] {
        let rep = make_representation(rank_n_form(rank, &a).unwrap(), a.clone()).unwrap();
        for _ in 0..100 {
            let m = rng.gen_range(0..=4);
            let k = if m % 2 == 0 {
                2 * rng.gen_range(0..=2)
            } else {
                2 * rng.gen_range(0..=1) + 1
            };
            let n = if k % 2 == 0 {
                2 * rng.gen_range(0..=2)
            } else {
                2 * rng.gen_range(0..=1) + 1
            };
            let (x, y) = (random_tl(&mut rng, m, k), random_tl(&mut rng, k, n));
            let lhs = rep.evaluate_tl(&x.compose(&y, &delta).unwrap());
            let rhs = rep.evaluate_tl(&y).mul(&rep.evaluate_tl(&x));
            compose_ok += usize::from(lhs == rhs);

            let (m1, n1) = (rng.gen_range(0..=2), 0);
            let n1 = if m1 % 2 == 0 {
                2 * rng.gen_range(0..=1) + n1
            } else {
                1
            };
            let (m2, n2) = (rng.gen_range(0..=2), 0);
            let n2 = if m2 % 2 == 0 {
                2 * rng.gen_range(0..=1) + n2
            } else {
                1
            };
            let (u, v) = (random_tl(&mut rng, m1, n1), random_tl(&mut rng, m2, n2));
            let lhs = rep.evaluate_tl(&u.tensor(&v));
            let rhs = rep.evaluate_tl(&u).kron(&rep.evaluate_tl(&v));
            tensor_ok += usize::from(lhs == rhs);
        }
        for (w, b) in corpus.iter().zip(&brackets) {
            let v = rep.evaluate_word(w);
            link_ok += usize::from(v.rows() == 1 && v.cols() == 1 && v.get(0, 0) == b);
        }
    }
    Line {
        id: "5",
        passed: compose_ok == 200 && tensor_ok == 200 && link_ok == 2 * corpus.len(),
        detail: format!(
            "ranks 2 and 3: composition {compose_ok}/200, tensor {tensor_ok}/200, link value = bracket {link_ok}/{}",
            2 * corpus.len()
        ),
    }
}

fn blocks(s: &[CanonicalBlock]) -> String {
    s.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" + ")
}

fn criterion_6() -> Vec<Line> {
    let mut stats_ok = true;
    for n in 1..=6 {
        let b = CanonicalBlock::gamma(n).unwrap();
        stats_ok &= asymmetry_trace_of(&b).unwrap() == block_stats(&b).1;
    }
    for lam in [q(2), q(3), frac(1, 2)] {
        for n in 1..=3 {
            let b = CanonicalBlock::h_rational(n, lam.clone()).unwrap();
            stats_ok &= asymmetry_trace_of(&b).unwrap() == block_stats(&b).1;
        }
    }

    let got3: Vec<Vec<CanonicalBlock>> = solve_blocks(3, &q(3), DEFAULT_MAX_BLOCKS)
        .into_iter()
        .map(|s| s.blocks)
        .collect();
    let g = |n| CanonicalBlock::gamma(n).unwrap();
    let want3 = vec![vec![g(1), g(1), g(1)], vec![g(3)]];

    let got_m1: Vec<Vec<CanonicalBlock>> = solve_blocks(3, &q(-1), DEFAULT_MAX_BLOCKS)
        .into_iter()
        .map(|s| s.blocks)
        .collect();
    let want_m1 = vec![vec![g(2), g(1)]];

    let h11 = CanonicalBlock::H {
        n: 1,
        lambda: Lambda::Rational(q(1)),
    };
    let mut emitted = 0;
    let mut h11_seen = false;
    for rank in 1..=5 {
        for d in -12..=12 {
            for delta in [q(d), frac(2 * d + 1, 2)] {
                for s in solve_blocks(rank, &delta, DEFAULT_MAX_BLOCKS) {
                    emitted += 1;
                    h11_seen |= s.blocks.contains(&h11);
                }
            }
        }
    }
    let h11_rejected = CanonicalBlock::h_rational(1, q(1)).is_err();

    vec![
        Line {
            id: "6a",
            passed: stats_ok,
            detail: "block_stats = trace of asymmetry for Gamma_1..6 and H_1..3 at 2, 3, 1/2"
                .to_string(),
        },
        Line {
            id: "6b",
            passed: got_m1 == want_m1,
            detail: format!(
                "solve_blocks(3, -1) = [{}], expected exactly [{}]",
                got_m1
                    .iter()
                    .map(|s| blocks(s))
                    .collect::<Vec<_>>()
                    .join("; "),
                blocks(&want_m1[0])
            ),
        },
        Line {
            id: "6c",
            passed: got3 == want3,
            detail: format!(
                "solve_blocks(3, 3) = [{}]",
                got3.iter()
                    .map(|s| blocks(s))
                    .collect::<Vec<_>>()
                    .join("; ")
            ),
        },
        Line {
            id: "6d",
            passed: !h11_seen && h11_rejected && emitted > 0,
            detail: format!(
                "H_1(1) never emitted across {emitted} solutions and rejected by the constructor"
            ),
        },
    ]
}

fn rational(b: &CanonicalBlock) -> Matrix<BigRational> {
    match block_form(b).unwrap() {
        FormMatrix::Rational(m) => m,
        _ => unreachable!(),
    }
}

fn unimodular<G: Rng>(rng: &mut G, n: usize) -> Matrix<BigRational> {
    let mut p = Matrix::<BigRational>::identity(n);
    for _ in 0..4 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let k = q(rng.gen_range(-2..=2));
            let e = Matrix::from_fn(n, n, |r, c| {
                if r == c {
                    q(1)
                } else if r == i && c == j {
                    k.clone()
                } else {
                    q(0)
                }
            });
            p = e.mul(&p);
        }
    }
    p
}

fn criterion_7() -> Line {
    let h = |l| FormMatrix::Rational(rational(&CanonicalBlock::h_rational(1, l).unwrap()));
    let inverse_pair = forms_equivalent(&h(q(2)), &h(frac(1, 2))).unwrap();
    let g = |n| rational(&CanonicalBlock::gamma(n).unwrap());
    let three = FormMatrix::Rational(g(1).direct_sum(&g(1)).direct_sum(&g(1)));
    let separated = !forms_equivalent(&three, &FormMatrix::Rational(g(3))).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool = [
        g(3),
        g(2).direct_sum(&g(1)),
        rational(&CanonicalBlock::h_rational(1, q(3)).unwrap()).direct_sum(&g(1)),
        rank_n_form(3, &q(2)).unwrap(),
        rank_n_form(4, &frac(1, 2)).unwrap(),
    ];
    let mut invariant = 0;
    for k in 0..50 {
        let b = &pool[k % pool.len()];
        let p = unimodular(&mut rng, b.rows());
        let c = p.transpose().mul(b).mul(&p);
        let same =
            forms_equivalent(&FormMatrix::Rational(b.clone()), &FormMatrix::Rational(c)).unwrap();
        invariant += usize::from(same);
    }
    Line {
        id: "7",
        passed: inverse_pair && separated && invariant == 50,
        detail: format!(
            "H_1(2) ~ H_1(1/2): {inverse_pair}; Gamma_1^3 vs Gamma_3 separated: {separated}; \
             congruence invariance {invariant}/50"
        ),
    }
}

fn congruent<G: Rng>(rng: &mut G, b: &Matrix<Complex64>) -> Matrix<Complex64> {
    let n = b.rows();
    loop {
        let p = Matrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
        });
        if p.determinant().unwrap().norm() > 0.3 {
            return p.transpose().mul(b).mul(&p);
        }
    }
}

fn criterion_8() -> Line {
    use std::f64::consts::PI;
    type G = GaussianRational;
    let id_i = make_representation(Matrix::<G>::identity(2), G::i()).unwrap();
    let anti = Matrix::from_rows(vec![
        vec![G::zero(), G::one()],
        vec![G::one().neg(), G::zero()],
    ])
    .unwrap();
    let anti_1 = make_representation(anti, G::one()).unwrap();
    let exact_true = is_unitary_exact(&id_i).unwrap() && is_unitary_exact(&anti_1).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut rank2_samples = 0;
    let mut rank2_false = 0;
    for k in 0..20 {
        let theta = PI / 2.0 * (f64::from(k) + 0.5) / 5.0 + 0.013;
        let a = Complex64::from_polar(1.0, theta);
        let base = rank_n_form(2, &a).unwrap();
        for _ in 0..5 {
            let rep = make_representation_approx(congruent(&mut rng, &base), a, 1e-7).unwrap();
            rank2_samples += 1;
            rank2_false += usize::from(!is_unitary_numeric(&rep, DEFAULT_TOLERANCE).unwrap());
        }
    }
    let mut rank3_samples = 0;
    let mut rank3_false = 0;
    for k in 0..16 {
        let a = Complex64::from_polar(1.0, f64::from(k) * PI / 8.0);
        let base = rank_n_form(3, &a).unwrap();
        for _ in 0..3 {
            let rep = make_representation_approx(congruent(&mut rng, &base), a, 1e-7).unwrap();
            rank3_samples += 1;
            rank3_false += usize::from(!is_unitary_numeric(&rep, DEFAULT_TOLERANCE).unwrap());
        }
    }
    for a in [G::one(), G::one().neg(), G::i(), G::i().neg()] {
        let rep = make_representation(rank_n_form(3, &a).unwrap(), a).unwrap();
        rank3_samples += 1;
        rank3_false += usize::from(!is_unitary_exact(&rep).unwrap());
    }

    let mut bound_ok = true;
    for k in -4..=4 {
        let theta = f64::from(k) * PI / 2.0;
        let b = norm_bound_report(2, theta);
        bound_ok &= b.feasible && b.lhs == 4.0 && b.rhs == 4.0;
        bound_ok &= !norm_bound_report(3, theta).feasible;
    }
    let off = norm_bound_report(2, PI / 5.0);
    bound_ok &= !off.feasible && (off.lhs - 4.0 * (2.0 * PI / 5.0).cos().powi(2)).abs() < 1e-15;

    Line {
        id: "8",
        passed: exact_true && rank2_false == rank2_samples && rank3_false == rank3_samples && bound_ok,
        detail: format!(
            "identity at i and antisymmetric at 1 unitary: {exact_true}; non-unitary rank 2 off fourth roots \
             {rank2_false}/{rank2_samples}; non-unitary rank 3 {rank3_false}/{rank3_samples}; norm bound boundaries: {bound_ok}"
        ),
    }
}

fn criterion_9() -> Line {
    let a = LaurentPoly::a();
    let mut ok = true;
    for n in [2, 3] {
        let rep = make_representation(rank_n_form(n, &a).unwrap(), a.clone()).unwrap();
        ok &= braid_relation_holds(&crossing_matrices(&rep).unwrap());
    }
    Line {
        id: "9",
        passed: ok,
        detail:
            "(R (x) I)(I (x) R)(R (x) I) = (I (x) R)(R (x) I)(I (x) R) at ranks 2, 3, symbolic A"
                .into(),
    }
}

#[test]
fn acceptance() {
    let mut lines = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
    ];
    lines.extend(criterion_6());
    lines.extend([criterion_7(), criterion_8(), criterion_9()]);

    // Written straight to stderr so the report shows without --nocapture.
    let mut out = std::io::stderr().lock();
    let mut unexpected = Vec::new();
    for line in &lines {
        let known = KNOWN_RED.iter().find(|(id, _)| *id == line.id);
        let tag = if line.passed { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {:<3} {tag}  {}", line.id, line.detail).unwrap();
        if let Some((_, why)) = known {
            writeln!(out, "              known red: {why}").unwrap();
        }
        match (line.passed, known) {
            (false, None) => unexpected.push(format!("{} failed", line.id)),
            (true, Some(_)) => {
                unexpected.push(format!("{} passes but is listed as known red", line.id))
            }
            _ => {}
        }
    }
    assert!(unexpected.is_empty(), "{unexpected:?}");
}
