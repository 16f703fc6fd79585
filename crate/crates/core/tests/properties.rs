//! Randomized invariants. Each case draws a seed and builds its graph, metric
//! or matrix from it, so failures shrink to a reproducible seed.

mod common;

use common::*;
use gonil::classify::crossval::random_automorphism;
use gonil::classify::{
    classify_frame, construct_semi_standard, ideal_decomposition, ideals::b_gram,
    is_semi_standard, phi_space, verdicts_agree, ClassificationReport, SemiStandardCoefficients,
};
use gonil::derivations::{
    derivation_space, is_closed_under_commutator, is_derivation, same_span as library_same_span,
    skew_derivation_space, skew_intersection,
};
use gonil::gonr::{certify_generic, generic_element, go_test_sampled, max_rank, nr_test};
use gonil::graph::{self, ClassKind, Graph};
use gonil::linalg::{self, rational, Polynomial, Solution};
use gonil::metric::{adapt, verify_jj0, MetricDoc};
use gonil::nilpotent::{basis_vector, Subspace};
use gonil::{random, GraphLieAlgebra, Matrix, Metric, MetricLieAlgebra, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn any_graph(seed: u64, max_n: usize) -> Graph {
    let mut rng = random::rng(seed);
    let n = rng.gen_range(1..=max_n);
    if rng.gen_bool(0.4) {
        random::cluster_graph(&mut rng, n)
    } else {
        let p = rng.gen_range(0.1..0.9);
        random::gnp(&mut rng, n, p)
    }
}

fn cluster(seed: u64, max_n: usize) -> Graph {
    let mut rng = random::rng(seed);
    let n = rng.gen_range(2..=max_n);
    random::cluster_graph(&mut rng, n)
}

fn random_frame(g: &Graph, seed: u64) -> MetricLieAlgebra {
    let mut rng = random::rng(seed);
    let gram = random::spd(&mut rng, g.vertex_count() + g.edge_count());
    MetricLieAlgebra::new(GraphLieAlgebra::new(g.clone()), Metric::new(gram).unwrap()).unwrap()
}

fn semi_standard_frame(g: &Graph, seed: u64) -> (MetricLieAlgebra, SemiStandardCoefficients) {
    let mut rng = random::rng(seed);
    let dec = ideal_decomposition(g).unwrap();
    let coeffs = SemiStandardCoefficients::random(&dec, &mut rng);
    let metric = construct_semi_standard(g, &coeffs).unwrap();
    let phi = random_automorphism(g, &mut rng);
    let pulled = Metric::new(phi.transpose().mul(metric.gram()).mul(&phi)).unwrap();
    (MetricLieAlgebra::new(GraphLieAlgebra::new(g.clone()), pulled).unwrap(), coeffs)
}

fn small_matrix(seed: u64, rows: usize, cols: usize) -> Matrix {
    let mut rng = random::rng(seed);
    random::matrix(&mut rng, rows, cols, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_print_in_lowest_terms(p in -1000i64..1000, d in 1i64..1000) {
        let x = rational::frac(p, d);
        let text = rational::format(&x);
        prop_assert_eq!(rational::parse(&text).unwrap(), x.clone());
        prop_assert!(*x.denom() > 0.into());
        if x.is_integer() {
            prop_assert!(!text.contains('/'));
        }
        let back = Rational::new(x.numer().clone(), x.denom().clone());
        prop_assert_eq!(back.numer(), x.numer());
    }

    #[test]
    fn solve_is_exact(seed in any::<u64>(), r in 1usize..6, c in 1usize..6) {
        let a = small_matrix(seed, r, c);
        let mut rng = random::rng(seed ^ 1);
        let b: Vec<Rational> = (0..r).map(|_| random::rational_in(&mut rng, 5, 3)).collect();
        match linalg::solve(&a, &b).unwrap() {
            Solution::Feasible { particular, kernel } => {
                prop_assert_eq!(a.mul_vec(&particular), b);
                for k in &kernel {
                    prop_assert!(a.mul_vec(k).iter().all(Zero::is_zero));
                }
                prop_assert_eq!(kernel.len() + a.rank(), c);
            }
            Solution::Infeasible => {
                let mut aug = to_dense(&a);
                for (row, x) in aug.iter_mut().zip(&b) {
                    row.push(x.clone());
                }
                prop_assert!(rank(&aug) > rank(&to_dense(&a)));
            }
        }
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), r in 1usize..7, c in 1usize..7) {
        let a = small_matrix(seed, r, c);
        prop_assert_eq!(linalg::rank(&a) + linalg::nullspace(&a).len(), c);
        prop_assert_eq!(linalg::rank(&a), linalg::rank(&a.transpose()));
    }

    #[test]
    fn cayley_hamilton(seed in any::<u64>(), n in 1usize..7) {
        let a = small_matrix(seed, n, n);
        let chi = linalg::char_poly(&a).unwrap();
        prop_assert_eq!(chi.degree(), Some(n));
        prop_assert!(chi.eval_matrix(&a).is_zero());
    }

    #[test]
    fn squarefree_on_known_factorizations(roots in prop::collection::vec(-4i64..=4, 1..6), lead in 1i64..5) {
        let mut p = vec![q(lead)];
        for &x in &roots {
            p = poly_mul(&p, &[q(-x), q(1)]);
        }
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(
            linalg::is_squarefree(&Polynomial::new(p)).unwrap(),
            distinct.len() == roots.len()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn preceq_is_a_preorder(seed in any::<u64>()) {
        let g = any_graph(seed, 7);
        let t = graph::preceq_table(&g);
        let n = g.vertex_count();
        for i in 0..n {
            prop_assert!(t[i][i]);
            for j in 0..n {
                for k in 0..n {
                    if t[i][j] && t[j][k] {
                        prop_assert!(t[i][k]);
                    }
                }
            }
        }
    }

    #[test]
    fn cluster_detection_matches_components(seed in any::<u64>()) {
        let g = any_graph(seed, 7);
        let dec = graph::is_cluster_graph(&g);
        prop_assert_eq!(dec.is_cluster, is_cluster_brute(&g));
        // on cluster graphs every edge joins ∼-equivalent vertices
        prop_assert_eq!(dec.is_cluster, dec.witness_edge.is_none());
    }

    #[test]
    fn classes_are_complete_or_edgeless(seed in any::<u64>()) {
        let g = any_graph(seed, 7);
        for class in graph::equivalence_classes(&g).classes {
            let vs = &class.vertices;
            let pairs: Vec<bool> = vs
                .iter()
                .enumerate()
                .flat_map(|(k, &a)| vs[k + 1..].iter().map(move |&b| (a, b)))
                .map(|(a, b)| g.adjacent(a, b))
                .collect();
            match class.kind {
                ClassKind::Complete => prop_assert!(pairs.iter().all(|&x| x)),
                ClassKind::Empty => prop_assert!(pairs.iter().all(|&x| !x)),
            }
        }
    }

    #[test]
    fn graph_text_round_trips(seed in any::<u64>()) {
        let g = any_graph(seed, 7);
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn algebra_is_two_step(seed in any::<u64>()) {
        let g = any_graph(seed, 6);
        let algebra = GraphLieAlgebra::new(g.clone());
        let dim = algebra.dim();
        let mut rng = random::rng(seed);
        let v = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Rational> {
            (0..dim).map(|_| random::rational_in(rng, 3, 2)).collect()
        };
        let (x, y, w) = (v(&mut rng), v(&mut rng), v(&mut rng));
        let xy = algebra.bracket(&x, &y);
        prop_assert!(algebra.bracket(&xy, &w).iter().all(Zero::is_zero));
        prop_assert!(algebra.bracket(&x, &x).iter().all(Zero::is_zero));
        let yx = algebra.bracket(&y, &x);
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
        prop_assert!(algebra.derived_subalgebra().contains(&xy));
        prop_assert!(algebra.is_two_step());
    }

    #[test]
    fn center_is_derived_plus_isolated(seed in any::<u64>()) {
        let g = any_graph(seed, 7);
        let algebra = GraphLieAlgebra::new(g.clone());
        let dim = algebra.dim();
        let br = Brackets::new(&g);
        let mut sys = Rref::new(dim);
        for b in 0..dim {
            for r in 0..dim {
                let row: Vec<Rational> = (0..dim)
                    .map(|a| br.bracket(&basis_vector(dim, a), &basis_vector(dim, b))[r].clone())
                    .collect();
                sys.push_dense(&row);
            }
        }
        let oracle = Subspace::span(dim, &sys.kernel());
        let mut expected: Vec<Vec<Rational>> = (g.vertex_count()..dim).map(|k| basis_vector(dim, k)).collect();
        expected.extend(g.vertices().filter(|&v| g.is_isolated(v)).map(|v| basis_vector(dim, v - 1)));
        prop_assert!(oracle.same_as(&Subspace::span(dim, &expected)));
        prop_assert!(algebra.center().same_as(&oracle));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn metric_invariants(seed in any::<u64>()) {
        let g = any_graph(seed, 6);
        let frame = random_frame(&g, seed);
        let a = &frame.split.a;
        prop_assert!(linalg::is_positive_definite(a).unwrap());
        if frame.m() > 0 {
            prop_assert!(linalg::is_positive_definite(&frame.split.c).unwrap());
        }
        for j in &frame.j.ops {
            let aj = a.mul(j);
            prop_assert!(aj.add(&aj.transpose()).is_zero());
        }
        let stacked: Vec<Vec<Rational>> = frame.j.ops.iter().map(Matrix::flatten).collect();
        prop_assert_eq!(rank_of_vectors(frame.n() * frame.n(), &stacked), frame.m());
        let basis = adapt(&frame.algebra, &frame.metric);
        prop_assert!(verify_jj0(&frame.algebra, &frame.metric, &basis, 3, seed).holds);
        // adapted 𝔞 is orthogonal to 𝔷 and keeps the bracket pattern
        let (n, dim) = (frame.n(), frame.algebra.dim());
        let cols: Vec<Vec<Rational>> = (0..dim).map(|k| basis.change.column(k)).collect();
        for i in 0..n {
            for alpha in n..dim {
                prop_assert!(frame.metric.inner(&cols[i], &cols[alpha]).is_zero());
            }
        }
        let br = Brackets::new(&g);
        for i in 0..n {
            for k in 0..n {
                let got = frame.algebra.bracket(&cols[i], &cols[k]);
                let want = br.bracket(&basis_vector(dim, i), &basis_vector(dim, k));
                prop_assert_eq!(got, want);
            }
        }
        // J matches the definition
        let mut rng = random::rng(seed ^ 7);
        let z: Vec<Rational> = (0..frame.m()).map(|_| random::rational_in(&mut rng, 4, 3)).collect();
        let (oracle, _) = j_operator_oracle(&g, &to_dense(frame.metric.gram()), &z);
        prop_assert_eq!(to_dense(&frame.j_at(&z)), oracle);
        // the metric document round-trips
        let doc: MetricDoc = serde_json::from_str(&frame.metric.to_json()).unwrap();
        prop_assert_eq!(&Metric::from_doc(&doc).unwrap(), &frame.metric);
    }

    #[test]
    fn standard_j_is_b_orthonormal(seed in any::<u64>()) {
        let g = any_graph(seed, 7);
        let algebra = GraphLieAlgebra::new(g.clone());
        let ops = algebra.standard_j();
        for (a, x) in ops.iter().enumerate() {
            for (b, y) in ops.iter().enumerate() {
                let want = if a == b { q(1) } else { q(0) };
                prop_assert_eq!(linalg::b_form(x, y).unwrap(), want);
            }
        }
    }

    #[test]
    fn derivation_invariants(seed in any::<u64>()) {
        let g = any_graph(seed, 5);
        let frame = random_frame(&g, seed);
        let der = derivation_space(&frame);
        for d in &der.full {
            prop_assert!(is_derivation(&frame.algebra, d));
        }
        prop_assert!(is_closed_under_commutator(frame.algebra.dim(), &der.full));
        let skew = skew_derivation_space(&frame);
        let gram = frame.adapted_gram();
        let inter = skew_intersection(&der, &gram);
        prop_assert_eq!(skew.dim(), inter.len());
        prop_assert!(library_same_span(frame.algebra.dim(), &skew.full, &inter));
        for (t, s) in skew.a_parts.iter().zip(&skew.z_parts) {
            // J_{DZ} = [D_𝔞, J_Z] on the basis of 𝔷
            for alpha in 0..frame.m() {
                let lhs = frame.j_at(&s.column(alpha));
                let rhs = t.commutator(&frame.j.ops[alpha]);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn theorem_directions(seed in any::<u64>()) {
        let g = any_graph(seed, 6);
        let frame = random_frame(&g, seed);
        let report: ClassificationReport = classify_frame(&frame, seed, 2);
        let c = graph::is_cluster_graph(&g);
        prop_assert_eq!(report.nr.holds, c.is_cluster && report.semi_standard.holds);
        if report.go_sampled.is_no() {
            prop_assert!(!report.nr.holds);
        }
        if !c.is_cluster {
            prop_assert!(report.go_sampled.witness_from_family());
        }
        prop_assert!(verdicts_agree(c.is_cluster, report.nr.holds, report.semi_standard.holds, &report.go_sampled));
        let text = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(serde_json::from_str::<ClassificationReport>(&text).unwrap(), report);
    }

    #[test]
    fn semi_standard_metrics_are_nr_and_go(seed in any::<u64>()) {
        let g = cluster(seed, 7);
        let (frame, _) = semi_standard_frame(&g, seed);
        prop_assert!(nr_test(&frame).holds);
        prop_assert!(is_semi_standard(&frame).holds);
        let skew = skew_derivation_space(&frame);
        prop_assert!(!go_test_sampled(&frame, &skew, seed, 2).is_no());
        let ge = generic_element(&frame, seed).unwrap();
        prop_assert_eq!(ge.rank, max_rank(&frame.algebra));
        prop_assert_eq!(ge.rank, clique_rank(&g));
        prop_assert!(certify_generic(&frame.j_at(&ge.z), ge.rank).is_some());
        prop_assert!(squarefree(ge.f.coefficients()));
    }

    #[test]
    fn ideals_are_orthogonal_and_closed(seed in any::<u64>()) {
        let g = cluster(seed, 8);
        let algebra = GraphLieAlgebra::new(g.clone());
        let dec = ideal_decomposition(&g).unwrap();
        let m = g.edge_count();
        let all: Vec<Vec<Rational>> = dec.ideals.iter().flat_map(|i| i.basis.clone()).collect();
        prop_assert_eq!(all.len(), m);
        prop_assert_eq!(rank_of_vectors(m, &all), m);
        let gram = b_gram(&algebra, &all);
        let mut offset = 0;
        let blocks: Vec<std::ops::Range<usize>> = dec
            .ideals
            .iter()
            .map(|i| {
                let r = offset..offset + i.dim();
                offset += i.dim();
                r
            })
            .collect();
        for (x, bx) in blocks.iter().enumerate() {
            for (y, by) in blocks.iter().enumerate() {
                if x != y {
                    for a in bx.clone() {
                        for b in by.clone() {
                            prop_assert!(gram[(a, b)].is_zero());
                        }
                    }
                }
            }
        }
        let std_ops = algebra.standard_j();
        let flat_j: Vec<Vec<Rational>> = std_ops.iter().map(Matrix::flatten).collect();
        let n = g.vertex_count();
        for ideal in &dec.ideals {
            let mats = ideal.matrices(&algebra);
            let span: Vec<Vec<Rational>> = mats.iter().map(Matrix::flatten).collect();
            for k in &mats {
                for j in &std_ops {
                    let c = k.commutator(j).flatten();
                    let mut with = span.clone();
                    with.push(c);
                    prop_assert_eq!(rank_of_vectors(n * n, &with), rank_of_vectors(n * n, &span));
                }
            }
        }
        let _ = flat_j;
        let d0 = dec.center_dim();
        prop_assert_eq!(phi_space(&g).unwrap().dim(), dec.simple_count() + d0 * (d0 + 1) / 2);
    }

    #[test]
    fn construction_round_trips(seed in any::<u64>()) {
        let g = cluster(seed, 7);
        let mut rng = random::rng(seed);
        let dec = ideal_decomposition(&g).unwrap();
        let coeffs = SemiStandardCoefficients::random(&dec, &mut rng);
        let metric = construct_semi_standard(&g, &coeffs).unwrap();
        let frame = MetricLieAlgebra::new(GraphLieAlgebra::new(g.clone()), metric).unwrap();
        let result = is_semi_standard(&frame);
        prop_assert!(result.holds);
        let cert = result.certificate.unwrap();
        let simple: Vec<Rational> = cert.simple.iter().map(|s| s.as_rational().unwrap().clone()).collect();
        prop_assert_eq!(simple, coeffs.simple);
        prop_assert_eq!(cert.center, coeffs.center);
    }

    #[test]
    fn center_rotation_keeps_semi_standard(seed in any::<u64>(), t in 1i64..12) {
        // at least two K₂ components so the center has a plane to rotate
        let mut rng = random::rng(seed);
        let mut g = Graph::complete(2).disjoint_union(&Graph::complete(2));
        if rng.gen_bool(0.5) {
            g = g.disjoint_union(&Graph::complete(3));
        }
        if rng.gen_bool(0.5) {
            g = g.disjoint_union(&Graph::complete(2));
        }
        let dec = ideal_decomposition(&g).unwrap();
        let mut coeffs = SemiStandardCoefficients::random(&dec, &mut rng);
        let d0 = dec.center_dim();
        let (i, j) = (0, rng.gen_range(1..d0));
        // rational rotation by the Pythagorean parametrization
        let tt = q(t * t);
        let cos = (q(1) - &tt) / (q(1) + &tt);
        let sin = q(2 * t) / (q(1) + &tt);
        let mut r = identity(d0);
        r[i][i] = cos.clone();
        r[j][j] = cos;
        r[i][j] = -sin.clone();
        r[j][i] = sin;
        let rotated = mat_mul(&mat_mul(&transpose(&r), &coeffs.center), &r);
        coeffs.center = rotated;
        let metric = construct_semi_standard(&g, &coeffs).unwrap();
        let frame = MetricLieAlgebra::new(GraphLieAlgebra::new(g.clone()), metric).unwrap();
        prop_assert!(is_semi_standard(&frame).holds);
        prop_assert!(nr_test(&frame).holds);
    }
}
