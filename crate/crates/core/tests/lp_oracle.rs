//! LP bounds against a brute-force grid over the 3-atom simplex.

use dsplogic::*;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STEP: i64 = 200;

/// Integer coefficients with a rational right-hand side `num / den`.
#[derive(Clone, Debug)]
struct RawConstraint {
    coeffs: [i64; 3],
    relation: Relation,
    num: i64,
    den: i64,
}

impl RawConstraint {
    /// Exact check at grid point `g / STEP`.
    fn holds_at(&self, g: [i64; 3]) -> bool {
        let lhs = self.den * self.coeffs.iter().zip(g).map(|(c, x)| c * x).sum::<i64>();
        let rhs = self.num * STEP;
        match self.relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn to_constraint(&self) -> LinearConstraint {
        LinearConstraint::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(a, &c)| (a, ratio(c, 1))),
            self.relation,
            ratio(self.num, self.den),
        )
        .unwrap()
    }
}

/// Inequalities that keep a random interior grid point strictly feasible.
fn random_system(rng: &mut ChaCha8Rng) -> Vec<RawConstraint> {
    let a = rng.gen_range(20..=160);
    let b = rng.gen_range(10..=(190 - a));
    let anchor = [a, b, STEP - a - b];
    (0..rng.gen_range(1..=3))
        .map(|_| loop {
            let coeffs = [0, 1, 2].map(|_| rng.gen_range(-3..=3));
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let den = rng.gen_range(1..=10);
            // value at the anchor, scaled by den: den * (c . anchor) / STEP
            let at_anchor = coeffs.iter().zip(anchor).map(|(c, x)| c * x).sum::<i64>() * den;
            let slack = rng.gen_range(1..=den.max(2));
            let relation = if rng.gen_bool(0.5) {
                Relation::Le
            } else {
                Relation::Ge
            };
            let num = match relation {
                Relation::Le => at_anchor.div_euclid(STEP) + slack,
                _ => at_anchor.div_euclid(STEP) - slack + 1,
            };
            let c = RawConstraint {
                coeffs,
                relation,
                num,
                den,
            };
            if c.holds_at(anchor) {
                break c;
            }
        })
        .collect()
}

/// Min and max of the query over feasible grid points, in units of 1/STEP.
fn grid_bounds(constraints: &[RawConstraint], query: [bool; 3]) -> Option<(i64, i64)> {
    let mut best: Option<(i64, i64)> = None;
    for i in 0..=STEP {
        for j in 0..=(STEP - i) {
            let g = [i, j, STEP - i - j];
            if constraints.iter().all(|c| c.holds_at(g)) {
                let v: i64 = g
                    .iter()
                    .zip(query)
                    .filter(|(_, q)| *q)
                    .map(|(x, _)| x)
                    .sum();
                best = Some(match best {
                    None => (v, v),
                    Some((lo, hi)) => (lo.min(v), hi.max(v)),
                });
            }
        }
    }
    best
}

#[test]
fn lp_bounds_match_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..20 {
        let raw = random_system(&mut rng);
        let mut system = ConstraintSystem::new(3);
        for c in &raw {
            system.add(c.to_constraint()).unwrap();
        }
        let query = loop {
            let q = [rng.gen_bool(0.5), rng.gen_bool(0.5), rng.gen_bool(0.5)];
            if q.iter().any(|&b| b) && !q.iter().all(|&b| b) {
                break q;
            }
        };
        let event = Event::from_atoms(3, (0..3).filter(|&a| query[a])).unwrap();
        let bounds = prob_bounds(&system, &event).unwrap();
        let (glo, ghi) = grid_bounds(&raw, query).expect("anchor is feasible");
        let tol = 0.01;
        let lo = bounds.lo().to_f64().unwrap();
        let hi = bounds.hi().to_f64().unwrap();
        assert!(
            (lo - glo as f64 / STEP as f64).abs() <= tol,
            "case {case}: lo {lo} vs grid {glo}"
        );
        assert!(
            (hi - ghi as f64 / STEP as f64).abs() <= tol,
            "case {case}: hi {hi} vs grid {ghi}"
        );

        let objective: Vec<Rational> = query.iter().map(|&q| ratio(q as i64, 1)).collect();
        for sense in [Sense::Minimize, Sense::Maximize] {
            let sol = solve_lp(&system, &objective, sense).unwrap();
            assert!(system.contains(&sol.witness), "case {case}");
            for c in system.constraints() {
                if c.relation() == Relation::Eq {
                    assert!(c.residual(&sol.witness).is_zero());
                }
            }
        }
    }
}

#[test]
fn relabelling_atoms_gives_the_same_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let perms = [[0, 1, 2], [2, 0, 1], [1, 2, 0], [2, 1, 0]];
    for _ in 0..20 {
        let raw = random_system(&mut rng);
        let objective: Vec<Rational> = (0..3)
            .map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
            .collect();
        let mut values = Vec::new();
        for perm in perms {
            let mut system = ConstraintSystem::new(3);
            for c in &raw {
                let moved = LinearConstraint::new(
                    c.coeffs
                        .iter()
                        .enumerate()
                        .map(|(a, &v)| (perm[a], ratio(v, 1))),
                    c.relation,
                    ratio(c.num, c.den),
                )
                .unwrap();
                system.add(moved).unwrap();
            }
            let mut obj = vec![Rational::zero(); 3];
            for (a, v) in objective.iter().enumerate() {
                obj[perm[a]] = v.clone();
            }
            // Constraint order reversed as well, for a different starting basis.
            let mut reversed = ConstraintSystem::new(3);
            for c in system.constraints().iter().rev() {
                reversed.add(c.clone()).unwrap();
            }
            values.push(solve_lp(&system, &obj, Sense::Maximize).unwrap().value);
            values.push(solve_lp(&reversed, &obj, Sense::Maximize).unwrap().value);
        }
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
    }
}

#[test]
fn bounds_sandwich_explicit_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let raw = random_system(&mut rng);
        let mut system = ConstraintSystem::new(3);
        for c in &raw {
            system.add(c.to_constraint()).unwrap();
        }
        let a = Event::from_atoms(3, [0]).unwrap();
        let b = Event::from_atoms(3, [0, 1]).unwrap();
        let plain = prob_bounds(&system, &a).unwrap();
        let cond = cond_prob_bounds(&system, &a, &b).ok();
        for i in (0..=STEP).step_by(4) {
            for j in (0..=(STEP - i)).step_by(4) {
                let g = [i, j, STEP - i - j];
                if !raw.iter().all(|c| c.holds_at(g)) {
                    continue;
                }
                let x: Vec<Rational> = g.iter().map(|&v| ratio(v, STEP)).collect();
                assert!(system.contains(&x));
                assert!(plain.contains(&x[0]));
                if let Some(cond) = &cond {
                    let pb = &x[0] + &x[1];
                    if !pb.is_zero() {
                        assert!(cond.interval.contains(&(&x[0] / pb)));
                    }
                }
            }
        }
    }
}

#[test]
fn linear_fragment_interval_contains_the_point_value() {
    let spec = bipartite_spec(&ratio(9, 10), &ratio(9, 10)).unwrap();
    let system = agreement_linear_fragment(&spec).unwrap();
    // A member of the full constrained set also satisfies the fragment.
    let member = construct_member(&spec, None, &EvidenceParams::Solve).unwrap();
    assert!(system.contains(member.atoms()));
    let h = Event::elements(&spec.blocks()[0]);
    let e12 = Event::evidence(spec.frame(), CellSet::E1E2);
    let r = cond_prob_bounds(&system, &h, &e12).unwrap();
    let point = ratio(81, 82);
    assert!(r.interval.lo() < &point && &point < r.interval.hi());
    // Independence cannot be added to a linear system.
    let mut s = system.clone();
    let err = s
        .add_statement(Statement::Independence {
            a: Event::evidence(spec.frame(), CellSet::E1),
            b: Event::evidence(spec.frame(), CellSet::E2),
            given: h,
        })
        .unwrap_err();
    assert!(matches!(err, Error::NonlinearConstraint(_)));
}
