//! Independent-oracle cross-checks. Each oracle here re-derives a quantity
//! by a different algorithm than the library uses, so agreement is evidence
//! for both sides: a staircase-chain construction for two-variable Newton
//! boundaries, a shoelace Newton number in two variables, and a dense
//! rational Gaussian rank for the Macaulay frames.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use singlab::ideal::macaulay::local_quotient_dim;
use singlab::newton::{newton_complex, newton_number};
use singlab::poly::{parse_poly, Coefficient, ExponentVector, Polynomial};
use std::collections::BTreeSet;

/// Two-variable oracle: the compact boundary of `conv(S) + R^2_+` via the
/// Pareto staircase and a monotone convex chain. Returns the chain vertices
/// in order of increasing x.
fn staircase_chain(support: &BTreeSet<ExponentVector>) -> Vec<(i64, i64)> {
    let mut points: Vec<(i64, i64)> = support
        .iter()
        .map(|p| (i64::from(p.get(0)), i64::from(p.get(1))))
        .collect();
    points.sort();
    // Pareto-minimal points: scanning by x ascending, keep strict y descent
    let mut pareto: Vec<(i64, i64)> = Vec::new();
    let mut best_y = i64::MAX;
    for &(x, y) in &points {
        if y < best_y {
            pareto.push((x, y));
            best_y = y;
        }
    }
    // lower-left convex chain: keep b between a and c only on a strict turn
    let cross = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| -> i64 {
        (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0)
    };
    let mut chain: Vec<(i64, i64)> = Vec::new();
    for p in pareto {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    chain
}

/// Shoelace Newton number for convenient two-variable supports:
/// `2 * V_2 - V_1 + 1` with `V_2` summed as origin triangles over the chain
/// and `V_1` read off the axis intercepts.
fn shoelace_newton_number(support: &BTreeSet<ExponentVector>) -> BigInt {
    let chain = staircase_chain(support);
    let first = chain.first().unwrap();
    let last = chain.last().unwrap();
    assert_eq!(first.0, 0, "convenient support meets the y axis");
    assert_eq!(last.1, 0, "convenient support meets the x axis");
    let mut twice_area = 0i64;
    for w in chain.windows(2) {
        twice_area += (w[0].0 * w[1].1 - w[0].1 * w[1].0).abs();
    }
    BigInt::from(twice_area - (first.1 + last.0) + 1)
}

prop_compose! {
    fn convenient_support_2d()(
        ax in 2u32..=9,
        ay in 2u32..=9,
        extras in prop::collection::vec((0u32..=8, 0u32..=8), 0..=5),
    ) -> BTreeSet<ExponentVector> {
        let mut support: BTreeSet<ExponentVector> = BTreeSet::new();
        support.insert(ExponentVector::axis(0, ax, 2));
        support.insert(ExponentVector::axis(1, ay, 2));
        for (a, b) in extras {
            if a + b > 0 {
                support.insert(ExponentVector::new(vec![a, b]));
            }
        }
        support
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_variable_faces_match_the_staircase_chain(support in convenient_support_2d()) {
        let chain = staircase_chain(&support);
        let complex = newton_complex(&support).unwrap();

        let vertices: BTreeSet<(i64, i64)> = complex
            .vertices()
            .iter()
            .map(|p| (i64::from(p.get(0)), i64::from(p.get(1))))
            .collect();
        let chain_set: BTreeSet<(i64, i64)> = chain.iter().copied().collect();
        prop_assert_eq!(&vertices, &chain_set);

        // each consecutive chain pair spans one edge of the complex
        prop_assert_eq!(complex.faces_by_dim[1].len(), chain.len() - 1);
        for w in chain.windows(2) {
            let found = complex.faces_by_dim[1].iter().any(|face| {
                let vs: BTreeSet<(i64, i64)> = face
                    .vertex_set
                    .iter()
                    .map(|p| (i64::from(p.get(0)), i64::from(p.get(1))))
                    .collect();
                vs == BTreeSet::from([w[0], w[1]])
            });
            prop_assert!(found, "missing edge {:?} - {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn two_variable_newton_number_matches_shoelace(support in convenient_support_2d()) {
        prop_assert_eq!(
            newton_number(&support).unwrap(),
            shoelace_newton_number(&support)
        );
    }
}

/// Dense rational Gaussian elimination over the full multiplication matrix,
/// sharing nothing with the sparse integer staircase.
fn dense_quotient_dim(gens: &[Polynomial], truncation: u32) -> (usize, usize) {
    let n = gens[0].nvars();
    // enumerate monomials of degree < truncation in plain lexicographic order
    fn emit(out: &mut Vec<ExponentVector>, cur: &mut Vec<u32>, var: usize, budget: u32) {
        if var == cur.len() {
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        for e in 0..=budget {
            cur[var] = e;
            emit(out, cur, var + 1, budget - e);
        }
        cur[var] = 0;
    }
    let mut columns: Vec<ExponentVector> = Vec::new();
    emit(&mut columns, &mut vec![0u32; n], 0, truncation - 1);
    let index = |ev: &ExponentVector| columns.iter().position(|c| c == ev).unwrap();

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for g in gens {
        let mult = g.multiplicity().unwrap() as u32;
        if mult >= truncation {
            continue;
        }
        for beta in &columns {
            if beta.total_degree() + u64::from(mult) >= u64::from(truncation) {
                continue;
            }
            let mut row = vec![BigRational::zero(); columns.len()];
            for (ev, c) in g.terms() {
                let shifted = beta.add(ev);
                if shifted.total_degree() < u64::from(truncation) {
                    row[index(&shifted)] = c.as_scalar().unwrap();
                }
            }
            rows.push(row);
        }
    }

    // textbook Gaussian elimination over Q
    let mut rank = 0usize;
    let width = columns.len();
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    for mut row in rows {
        for pivot in &echelon {
            let col = pivot.iter().position(|c| !c.is_zero()).unwrap();
            if !row[col].is_zero() {
                let factor = &row[col] / &pivot[col];
                for j in 0..width {
                    let delta = &pivot[j] * &factor;
                    row[j] -= delta;
                }
            }
        }
        if row.iter().any(|c| !c.is_zero()) {
            echelon.push(row);
            rank += 1;
        }
    }
    (columns.len() - rank, rank)
}

#[test]
fn macaulay_rank_matches_dense_gaussian_elimination() {
    let v2: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
    let v3: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let cases: Vec<(Vec<Polynomial>, u32)> = vec![
        (
            vec![
                parse_poly("2*x", &v2, None).unwrap(),
                parse_poly("2*y", &v2, None).unwrap(),
            ],
            4,
        ),
        (
            vec![
                parse_poly("3*x^2 + y", &v2, None).unwrap(),
                parse_poly("x + 2*y", &v2, None).unwrap(),
            ],
            5,
        ),
        (
            vec![
                parse_poly("3*x^2 - 2*x*y", &v2, None).unwrap(),
                parse_poly("4*y^3 - x^2", &v2, None).unwrap(),
            ],
            7,
        ),
        (
            vec![
                parse_poly("5*x^4", &v3, None).unwrap(),
                parse_poly("6*y^5 + 3*y^2*z^2", &v3, None).unwrap(),
                parse_poly("5*z^4 + 2*y^3*z", &v3, None).unwrap(),
            ],
            6,
        ),
        (
            vec![
                parse_poly("x^2 + y^2 + z^2", &v3, None).unwrap(),
                parse_poly("x*y - z^2", &v3, None).unwrap(),
            ],
            5,
        ),
    ];
    for (gens, truncation) in cases {
        let frame = local_quotient_dim(&gens, truncation).unwrap();
        let (dense_dim, dense_rank) = dense_quotient_dim(&gens, truncation);
        assert_eq!(frame.rank, dense_rank, "rank at N = {truncation}");
        assert_eq!(frame.quotient_dim, dense_dim, "dimension at N = {truncation}");
    }
}

/// The two Milnor routes agree on a seeded corpus of convenient germs with
/// generic coefficients (where the Newton route applies).
#[test]
fn milnor_routes_agree_on_nondegenerate_corpus() {
    use singlab::invariants::{analyze, AnalyzeOptions, KouchnirenkoStatus};
    let v: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
    let corpus = [
        "x^3 + y^3 + x*y",
        "x^4 + y^5",
        "x^5 + x*y^2 + y^7",
        "x^2 + y^9",
        "x^6 + x^2*y^2 + y^6",
        "x^4 + x*y^3 + y^4",
    ];
    for text in corpus {
        let f = parse_poly(text, &v, None).unwrap();
        let report = analyze(
            &f,
            &AnalyzeOptions {
                verify: true,
                oracle_cap: None,
            },
        )
        .unwrap();
        if report.nondeg.nondegenerate && report.convenient {
            assert_eq!(report.kouchnirenko, KouchnirenkoStatus::VerifiedEqual, "{text}");
            assert_eq!(report.mu.clone().unwrap(), report.nu, "{text}");
        } else {
            assert!(report.mu.unwrap() >= report.nu, "{text}");
        }
    }
}

/// Four-variable path: the volume recursion over all 15 axis subsets, the
/// three-dimensional fan triangulation, and both Milnor routes.
#[test]
fn four_variable_germs() {
    use singlab::invariants::{analyze, AnalyzeOptions};
    let v: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    for (a, b, c, d) in [(2u32, 2, 2, 2), (1, 2, 3, 1), (3, 1, 2, 2)] {
        let f = parse_poly(
            &format!("x^{} + y^{} + z^{} + w^{}", a + 1, b + 1, c + 1, d + 1),
            &v,
            None,
        )
        .unwrap();
        let report = analyze(
            &f,
            &AnalyzeOptions {
                verify: true,
                oracle_cap: None,
            },
        )
        .unwrap();
        let expected = BigInt::from(a * b * c * d);
        assert_eq!(report.nu, expected);
        assert_eq!(report.mu, Some(expected));
    }
    // a germ with genuinely four-dimensional facets
    let g = parse_poly("x^4 + y^3 + z^5 + w^2 + x*y*z*w + x^2*y*z", &v, None).unwrap();
    let report = analyze(
        &g,
        &AnalyzeOptions {
            verify: true,
            oracle_cap: None,
        },
    )
    .unwrap();
    assert_eq!(report.nu, BigInt::from(24));
    assert_eq!(report.mu, Some(BigInt::from(24)));
}

/// Parametric coefficients that vanish identically never enter the support,
/// matching the support definition on families.
#[test]
fn parametric_support_respects_zero_coefficients() {
    let v: Vec<String> = ["x"].iter().map(|s| s.to_string()).collect();
    let p = parse_poly("t*x + x - x", &v, Some("t")).unwrap();
    assert_eq!(p.support().len(), 1);
    let q = parse_poly("t*x - t*x + x^2", &v, Some("t")).unwrap();
    assert_eq!(
        q.support().into_iter().collect::<Vec<_>>(),
        vec![ExponentVector::new(vec![2])]
    );
    let _ = Coefficient::zero();
}
