//! The acceptance suite: one test per shipping criterion, each printing a
//! single summary line.  Every test is self-contained, uses fixed seeds,
//! and asserts its own time budget.

mod support;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dimea::dirsys::{
    limit_eq, limit_oplus, validate_system, DirectedSystem, ExplicitSystem, LimitElement,
    ProductIndex, TensorSystem,
};
use dimea::ea::{
    catalog, has_rdp, has_rip, validate_axioms, AxiomViolation, FiniteEffectAlgebra,
};
use dimea::real::{
    approximate, merge, reduce_to_positive_basis, refine_equal_sums, stage, transition,
    ExactReal, GeneratorTuple, RealSystem,
};
use dimea::simplicial::SimplicialEffectAlgebra;
use dimea::tensor::{tensor_element, tensor_morphisms, tensor_simplicial, universal_property_oracle};
use dimea::{Int, Limits, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn finish(criterion: u32, start: Instant, budget: Duration, detail: &str) {
    let elapsed = start.elapsed();
    println!("criterion {criterion}: PASS — {detail} ({elapsed:.2?})");
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

/// The hand-built catalog: name, algebra, and whether it satisfies the
/// axioms.  Twelve entries: six chains, two Booleans, the diamond, two
/// deliberately broken tables, and the degenerate point.
fn the_catalog() -> Vec<(&'static str, FiniteEffectAlgebra, bool)> {
    let mut list: Vec<(&'static str, FiniteEffectAlgebra, bool)> = vec![
        ("chain1", catalog::chain(1), true),
        ("chain2", catalog::chain(2), true),
        ("chain3", catalog::chain(3), true),
        ("chain4", catalog::chain(4), true),
        ("chain5", catalog::chain(5), true),
        ("chain6", catalog::chain(6), true),
        ("boolean2", catalog::boolean(2), true),
        ("boolean3", catalog::boolean(3), true),
        ("diamond", catalog::diamond(), true),
        ("degenerate", catalog::degenerate(), true),
    ];
    list.push(("broken-no-orthosupplement", broken_missing(), false));
    list.push(("broken-two-orthosupplements", broken_ambiguous(), false));
    list
}

/// `x` has no orthosupplement: `x ⊕ x` and `x ⊕ 1` are left undefined.
fn broken_missing() -> FiniteEffectAlgebra {
    let elements = ["0", "x", "1"].map(String::from).to_vec();
    let sums = [("0", "0", "0"), ("0", "x", "x"), ("0", "1", "1")]
        .map(|(a, b, c)| (a.to_owned(), b.to_owned(), c.to_owned()));
    FiniteEffectAlgebra::new(elements, "0", "1", &sums).expect("structurally well-formed")
}

/// `a` has two orthosupplements: both `a ⊕ a = 1` and `a ⊕ b = 1`.
fn broken_ambiguous() -> FiniteEffectAlgebra {
    let elements = ["0", "a", "b", "1"].map(String::from).to_vec();
    let sums = [
        ("0", "0", "0"),
        ("0", "a", "a"),
        ("0", "b", "b"),
        ("0", "1", "1"),
        ("a", "a", "1"),
        ("a", "b", "1"),
    ]
    .map(|(a, b, c)| (a.to_owned(), b.to_owned(), c.to_owned()));
    FiniteEffectAlgebra::new(elements, "0", "1", &sums).expect("structurally well-formed")
}

fn rational(p: i64, q: i64) -> ExactReal {
    ExactReal::from_rat(Rat::new(Int::from(p), Int::from(q)))
}

/// A random admissible stage: a cyclic rational stage `(1/n)`, or the
/// two-generator stage of a quadratic irrational over √2 or √3.
fn random_stage(rng: &mut impl Rng) -> GeneratorTuple {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(2..=30i64);
        GeneratorTuple::new(vec![rational(1, n)]).expect("1/n is admissible")
    } else {
        loop {
            let d = if rng.gen_bool(0.5) { 2 } else { 3 };
            let q = rng.gen_range(2..=12i64);
            let p = rng.gen_range(1..q);
            let x = ExactReal::sqrt(d).scale(&Rat::new(Int::from(p), Int::from(q)));
            if x.compare(&ExactReal::one()) == std::cmp::Ordering::Less {
                return approximate(&x).expect("in range").stage.index;
            }
        }
    }
}

#[test]
fn criterion_1_axiom_suite_classifies_the_catalog() {
    let start = Instant::now();
    let list = the_catalog();
    assert!(list.len() >= 12, "the catalog must hold at least 12 algebras");

    for (name, algebra, expected_valid) in &list {
        let report = validate_axioms(algebra);
        assert_eq!(
            report.is_valid(),
            *expected_valid,
            "{name}: expected valid={expected_valid}, got {report}"
        );
    }

    // The planted defects are the ones reported.
    let missing = validate_axioms(&broken_missing());
    assert!(
        missing
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::OrthosupplementMissing { a } if a == "x")),
        "expected a missing orthosupplement for x, got {missing}"
    );
    let ambiguous = validate_axioms(&broken_ambiguous());
    assert!(
        ambiguous
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::OrthosupplementNotUnique { a, .. } if a == "a")),
        "expected two orthosupplements for a, got {ambiguous}"
    );

    finish(
        1,
        start,
        Duration::from_secs(1),
        &format!("{} catalog algebras classified exactly", list.len()),
    );
}

#[test]
fn criterion_2_riesz_decomposition_and_interpolation() {
    let start = Instant::now();
    let limits = Limits::default();

    // The diamond: decomposition fails with a witness, interpolation holds.
    let witness = has_rdp(&catalog::diamond()).expect("the diamond must fail decomposition");
    assert_eq!(witness.sum, "1");
    assert!(has_rip(&catalog::diamond()).is_none());

    // Every interval algebra with at most 200 elements decomposes.
    let units = support::sorted_units(200);
    let mut swept = 0usize;
    for unit in &units {
        let algebra = SimplicialEffectAlgebra::new(unit.clone()).expect("positive unit");
        let table = algebra.materialize(&limits).expect("within bounds");
        assert!(
            has_rdp(&table).is_none(),
            "interval with unit {unit:?} must decompose"
        );
        swept += 1;
    }

    // The two-by-two check agrees with an independent oracle that searches
    // refinements at widths up to four, across the whole catalog.
    for (name, algebra, _) in &the_catalog() {
        let two_by_two = has_rdp(algebra).is_none();
        let general = support::general_rdp(algebra, 4).is_none();
        assert_eq!(
            two_by_two, general,
            "{name}: two-by-two and general-width verdicts disagree"
        );
    }

    finish(
        2,
        start,
        Duration::from_secs(30),
        &format!("{swept} interval algebras decompose; oracles agree on the catalog"),
    );
}

#[test]
fn criterion_3_tensor_products_of_small_intervals() {
    let start = Instant::now();
    let limits = Limits::default();

    let units = support::sorted_units(64);
    let mut swept = 0usize;
    for u in &units {
        for v in &units {
            // Skip pairs whose tensor would exceed 64 elements.
            let mut cardinality = 1usize;
            for ui in u {
                for vj in v {
                    let coordinate = ui * vj;
                    let c: usize = (coordinate + 1u32).try_into().expect("desk scale");
                    cardinality = cardinality.saturating_mul(c);
                }
            }
            if cardinality > 64 {
                continue;
            }
            let left = SimplicialEffectAlgebra::new(u.clone()).unwrap();
            let right = SimplicialEffectAlgebra::new(v.clone()).unwrap();
            let t = tensor_simplicial(&left, &right);
            let table = t.product.materialize(&limits).expect("within bounds");
            assert_eq!(
                table.len(),
                cardinality,
                "tensor of {u:?} and {v:?} must have Π(uᵢvⱼ+1) elements"
            );
            assert!(
                validate_axioms(&table).is_valid(),
                "tensor of {u:?} and {v:?} must satisfy the axioms"
            );
            assert!(
                has_rdp(&table).is_none(),
                "tensor of {u:?} and {v:?} must decompose"
            );
            swept += 1;
        }
    }

    // The two-chain tensored with the three-chain is the seven-chain.
    let t = tensor_simplicial(
        &SimplicialEffectAlgebra::new(vec![Int::from(2)]).unwrap(),
        &SimplicialEffectAlgebra::new(vec![Int::from(3)]).unwrap(),
    );
    assert_eq!(
        t.product,
        SimplicialEffectAlgebra::new(vec![Int::from(6)]).unwrap()
    );
    assert_eq!(t.product.materialize(&limits).unwrap().len(), 7);

    finish(
        3,
        start,
        Duration::from_secs(60),
        &format!("{swept} tensor pairs validated with exact cardinalities"),
    );
}

#[test]
fn criterion_4_universal_property_oracle() {
    let start = Instant::now();
    let limits = Limits::default();

    let targets: Vec<Arc<FiniteEffectAlgebra>> = the_catalog()
        .into_iter()
        .filter(|(_, algebra, valid)| *valid && algebra.len() <= 6)
        .map(|(_, algebra, _)| Arc::new(algebra))
        .collect();
    assert!(targets.len() >= 8, "expected at least eight small targets");

    let units = support::sorted_units(64);
    let mut pairs = 0usize;
    let mut bimorphisms = 0usize;
    for u in &units {
        let e_size = support::interval_size(u);
        for v in &units {
            if e_size * support::interval_size(v) > 64 {
                continue;
            }
            let left = SimplicialEffectAlgebra::new(u.clone()).unwrap();
            let right = SimplicialEffectAlgebra::new(v.clone()).unwrap();
            let report = universal_property_oracle(&left, &right, &targets, &limits)
                .expect("oracle within bounds");
            assert!(
                report.passed(),
                "pair {u:?} ⊗ {v:?}: {:?}",
                report.failures
            );
            assert!(
                report.cases.iter().all(|c| c.exhaustive),
                "pair {u:?} ⊗ {v:?}: uniqueness must be exhaustive at this scale"
            );
            pairs += 1;
            bimorphisms += report.bimorphisms_checked();
        }
    }

    finish(
        4,
        start,
        Duration::from_secs(600),
        &format!(
            "{pairs} factor pairs, {bimorphisms} bimorphisms factored uniquely, zero failures"
        ),
    );
}

#[test]
fn criterion_5_tensor_morphism_functoriality() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    for round in 0..1000 {
        let ranks: Vec<usize> = (0..6).map(|_| rng.gen_range(1..=3)).collect();
        let a = SimplicialEffectAlgebra::new(support::random_unit(&mut rng, ranks[0], 3)).unwrap();
        let d = SimplicialEffectAlgebra::new(support::random_unit(&mut rng, ranks[1], 3)).unwrap();
        let f1 = support::random_morphism(&mut rng, &a, ranks[2], 3);
        let f2 = support::random_morphism(&mut rng, &f1.target, ranks[3], 3);
        let g1 = support::random_morphism(&mut rng, &d, ranks[4], 3);
        let g2 = support::random_morphism(&mut rng, &g1.target, ranks[5], 3);

        let x = support::random_element(&mut rng, &a);
        let y = support::random_element(&mut rng, &d);
        let t_source = tensor_simplicial(&a, &d);
        let simple = tensor_element(&t_source, &x, &y).expect("x ⊗ y lies in the product");

        // Identity law: id ⊗ id is the identity, pointwise included.
        let id = tensor_morphisms(
            &dimea::simplicial::SimplicialMorphism::identity(&a),
            &dimea::simplicial::SimplicialMorphism::identity(&d),
        );
        assert!(id.is_identity(), "round {round}: id ⊗ id must be identity");
        assert_eq!(id.apply(&simple).unwrap(), simple);

        // Composition law: (f2 ∘ f1) ⊗ (g2 ∘ g1) = (f2 ⊗ g2) ∘ (f1 ⊗ g1).
        let composed_then_tensored = tensor_morphisms(
            &f2.compose(&f1).expect("composable"),
            &g2.compose(&g1).expect("composable"),
        );
        let tensored_then_composed = tensor_morphisms(&f2, &g2)
            .compose(&tensor_morphisms(&f1, &g1))
            .expect("composable");
        assert_eq!(
            composed_then_tensored.matrix, tensored_then_composed.matrix,
            "round {round}: functoriality must hold on matrices"
        );

        // Simple tensors map to simple tensors of the images.
        let t_target = tensor_simplicial(&f2.target, &g2.target);
        let image = tensor_element(
            &t_target,
            &f2.apply(&f1.apply(&x).unwrap()).unwrap(),
            &g2.apply(&g1.apply(&y).unwrap()).unwrap(),
        )
        .expect("images lie in the product");
        assert_eq!(
            composed_then_tensored.apply(&simple).unwrap(),
            image,
            "round {round}: simple tensors must map pointwise"
        );
    }

    finish(
        5,
        start,
        Duration::from_secs(10),
        "identity and composition laws hold on 1000 sampled simple tensors",
    );
}

/// A random three-index chain system a ⪯ b ⪯ c with consistent transitions.
fn random_chain_system(rng: &mut impl Rng, names: [&str; 3]) -> ExplicitSystem {
    let ranks: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=2)).collect();
    let a = SimplicialEffectAlgebra::new(support::random_unit(rng, ranks[0], 2)).unwrap();
    let f_ba = support::random_morphism(rng, &a, ranks[1], 2);
    let f_cb = support::random_morphism(rng, &f_ba.target, ranks[2], 2);
    let f_ca = f_cb.compose(&f_ba).expect("chain composable");

    let indices: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let leq = vec![
        (indices[0].clone(), indices[1].clone()),
        (indices[1].clone(), indices[2].clone()),
        (indices[0].clone(), indices[2].clone()),
    ];
    let mut algebras = BTreeMap::new();
    algebras.insert(indices[0].clone(), a);
    algebras.insert(indices[1].clone(), f_ba.target.clone());
    algebras.insert(indices[2].clone(), f_cb.target.clone());
    let mut transitions = BTreeMap::new();
    transitions.insert((indices[1].clone(), indices[0].clone()), f_ba.matrix.clone());
    transitions.insert((indices[2].clone(), indices[1].clone()), f_cb.matrix.clone());
    transitions.insert((indices[2].clone(), indices[0].clone()), f_ca.matrix.clone());
    ExplicitSystem::new(indices, &leq, algebras, transitions).expect("consistent by construction")
}

#[test]
fn criterion_6_tensored_directed_systems() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    let first = random_chain_system(&mut rng, ["a", "b", "c"]);
    let second = random_chain_system(&mut rng, ["x", "y", "z"]);
    let tensored = TensorSystem {
        first: first.clone(),
        second: second.clone(),
    };

    // The tensored system satisfies the directed-system laws on all nine
    // product indices.
    let sample: Vec<ProductIndex<String, String>> = ["a", "b", "c"]
        .iter()
        .flat_map(|i| {
            ["x", "y", "z"]
                .iter()
                .map(|k| ProductIndex(i.to_string(), k.to_string()))
        })
        .collect();
    let report = validate_system(&tensored, &sample);
    assert!(
        report.is_valid(),
        "tensored system must validate: {:?}",
        report
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
    );

    // Compatibility: the tensored transition sends x ⊗ y to f(x) ⊗ g(y),
    // for every comparable pair of product indices.
    let chains = ["a", "b", "c"];
    let cols = ["x", "y", "z"];
    let mut checked = 0usize;
    for (i1, i) in chains.iter().enumerate() {
        for j in &chains[i1..] {
            for (k1, k) in cols.iter().enumerate() {
                for l in &cols[k1..] {
                    let small = ProductIndex(i.to_string(), k.to_string());
                    let big = ProductIndex(j.to_string(), l.to_string());
                    let f = first.transition(&j.to_string(), &i.to_string()).unwrap();
                    let g = second.transition(&l.to_string(), &k.to_string()).unwrap();
                    let h = tensored.transition(&big, &small).unwrap();
                    for _ in 0..10 {
                        let x = support::random_element(&mut rng, &f.source);
                        let y = support::random_element(&mut rng, &g.source);
                        let t_small = tensor_simplicial(&f.source, &g.source);
                        let t_big = tensor_simplicial(&f.target, &g.target);
                        let lhs = h
                            .apply(&tensor_element(&t_small, &x, &y).unwrap())
                            .unwrap();
                        let rhs = tensor_element(
                            &t_big,
                            &f.apply(&x).unwrap(),
                            &g.apply(&y).unwrap(),
                        )
                        .unwrap();
                        assert_eq!(lhs, rhs, "compatibility at {small} ⪯ {big}");
                        checked += 1;
                    }
                }
            }
        }
    }

    finish(
        6,
        start,
        Duration::from_secs(10),
        &format!("tensored system valid; compatibility held on {checked} simple tensors"),
    );
}

#[test]
fn criterion_7_basis_reduction_and_merge() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // 500 random rational tuples reduce to an independent basis with exact
    // bookkeeping and strictly fewer generators.
    for round in 0..500 {
        let len = rng.gen_range(2..=6);
        let xs: Vec<ExactReal> = (0..len)
            .map(|_| rational(rng.gen_range(1..=30), rng.gen_range(1..=30)))
            .collect();
        let trace = reduce_to_positive_basis(&xs).expect("positive rationals reduce");
        trace.verify().expect("the trace must reconstruct its input");
        assert_eq!(
            trace.output.len(),
            1,
            "round {round}: rationals span a one-generator cone"
        );
        assert!(
            trace.output.len() < xs.len(),
            "round {round}: reduction must shorten dependent tuples"
        );
    }

    // The equal-sums refinement drops exactly one generator per level.
    let mut refined = 0usize;
    while refined < 100 {
        let left_len = rng.gen_range(1..=3);
        let right_len = rng.gen_range(2..=3);
        let left: Vec<ExactReal> = (0..left_len)
            .map(|_| rational(rng.gen_range(1..=9), rng.gen_range(1..=9)))
            .collect();
        let mut right: Vec<ExactReal> = (0..right_len - 1)
            .map(|_| rational(rng.gen_range(1..=9), rng.gen_range(1..=9)))
            .collect();
        let total = |v: &[ExactReal]| {
            v.iter()
                .fold(ExactReal::zero(), |acc, x| acc.add(x))
        };
        let deficit = total(&left).sub(&total(&right));
        if deficit.sign() != std::cmp::Ordering::Greater {
            continue;
        }
        right.push(deficit);
        let ys: Vec<ExactReal> = left.iter().chain(&right).cloned().collect();
        let trace = refine_equal_sums(&ys, left_len).expect("equal sums refine");
        trace.verify().expect("the trace must reconstruct its input");
        assert_eq!(trace.output.len(), ys.len() - 1, "one generator per level");
        refined += 1;
    }

    // 200 random admissible pairs merge into admissible stages that
    // dominate both inputs.
    for round in 0..200 {
        let b = random_stage(&mut rng);
        let c = random_stage(&mut rng);
        let merged = merge(&b, &c).expect("admissible stages merge");
        merged
            .unit_weights()
            .expect("the merged stage must be admissible");
        assert!(
            merged.dominates(&b) && merged.dominates(&c),
            "round {round}: merge of {b} and {c} gave {merged}, which must dominate both"
        );
    }

    finish(
        7,
        start,
        Duration::from_secs(60),
        "500 reductions exact, 100 refinements level-exact, 200 merges dominate",
    );
}

#[test]
fn criterion_8_limit_arithmetic_matches_the_rationals() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sys = RealSystem;

    // Representative-level sums agree with exact rational sums.
    let mut added = 0usize;
    while added < 200 {
        let q = rng.gen_range(1..=20i64);
        let p = rng.gen_range(0..=q);
        let s = rng.gen_range(1..=20i64);
        let r = rng.gen_range(0..=s);
        let x = Rat::new(Int::from(p), Int::from(q));
        let y = Rat::new(Int::from(r), Int::from(s));
        if &x + &y > Rat::new(Int::from(1), Int::from(1)) {
            continue;
        }
        let ax = approximate(&ExactReal::from_rat(x.clone())).unwrap();
        let ay = approximate(&ExactReal::from_rat(y.clone())).unwrap();
        let sum = limit_oplus(
            &sys,
            &LimitElement {
                index: ax.stage.index.clone(),
                value: ax.element.clone(),
            },
            &LimitElement {
                index: ay.stage.index.clone(),
                value: ay.element.clone(),
            },
        )
        .expect("valid representatives")
        .expect("sums within the unit interval are defined");
        let expected = approximate(&ExactReal::from_rat(&x + &y)).unwrap();
        let expected = LimitElement {
            index: expected.stage.index,
            value: expected.element,
        };
        assert!(
            limit_eq(&sys, &sum, &expected).unwrap(),
            "{x} + {y} must equal its exact representative"
        );
        added += 1;
    }

    // Transitions compose exactly along comparability chains A ⪯ B ⪯ C.
    for round in 0..100 {
        let a = random_stage(&mut rng);
        let b = merge(&a, &random_stage(&mut rng)).unwrap();
        let c = merge(&b, &random_stage(&mut rng)).unwrap();
        let g_ba = transition(&b, &a).unwrap();
        let g_cb = transition(&c, &b).unwrap();
        let g_ca = transition(&c, &a).unwrap();
        let composed = g_cb.compose(&g_ba).unwrap();
        assert_eq!(
            composed.matrix, g_ca.matrix,
            "round {round}: transitions along {a} ⪯ {b} ⪯ {c} must compose"
        );
        assert_eq!(composed.source.unit, g_ca.source.unit);
        assert_eq!(composed.target.unit, g_ca.target.unit);
    }

    finish(
        8,
        start,
        Duration::from_secs(60),
        "200 representative sums exact; 100 transition chains compose",
    );
}

#[test]
fn criterion_9_finite_stage_shadows_of_the_out_of_scope_claims() {
    let start = Instant::now();
    let limits = Limits::default();

    // The full limit-level claims (the unit interval's tensor square is not
    // lattice ordered; the limit's universal group in general) are out of
    // scope; their finite-stage counterparts are asserted instead: every
    // stage is a lattice, and every stage's universal group is ℤⁿ with the
    // stage unit as order unit.
    let radical = approximate(&ExactReal::sqrt(2).scale(&Rat::new(Int::from(1), Int::from(2))))
        .unwrap()
        .stage
        .index;
    let merged = merge(
        &radical,
        &GeneratorTuple::new(vec![rational(1, 2)]).unwrap(),
    )
    .unwrap();
    let stages = vec![
        GeneratorTuple::new(vec![rational(1, 1)]).unwrap(),
        GeneratorTuple::new(vec![rational(1, 2)]).unwrap(),
        GeneratorTuple::new(vec![rational(1, 6)]).unwrap(),
        radical,
        merged,
    ];
    for tuple in &stages {
        let s = stage(tuple).expect("admissible");
        let table = s.algebra.materialize(&limits).expect("desk scale");
        assert!(
            table.is_lattice(),
            "stage {tuple} must be lattice ordered"
        );
        let (group, unit) = s.algebra.universal_group();
        assert_eq!(group.rank, s.algebra.rank, "stage group must be ℤⁿ");
        assert_eq!(unit, s.algebra.unit);
        assert!(
            group.is_order_unit(&unit),
            "stage unit must be an order unit of ℤⁿ"
        );
    }

    finish(
        9,
        start,
        Duration::from_secs(10),
        &format!(
            "{} stages are lattices with ℤⁿ universal groups; limit-level claims stay out of scope",
            stages.len()
        ),
    );
}
