//! Interval bounds over linearly constrained probability assignments.
//!
//! A [`ConstraintSystem`] lives on `atom_count` non-negative variables that
//! always sum to one. Bounds on `P(query)` are two linear programs; bounds
//! on `P(A | B)` use the Charnes-Cooper substitution `y = t x`, `t = 1/P(B)`,
//! which turns the ratio into a linear objective over a homogenized system.
//! Everything runs on exact rationals through a two-phase tableau simplex
//! with Bland's anti-cycling rule.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::prob::{AgreementSpec, CellSet, Event, CELLS_PER_ELEMENT};
use crate::rational::{ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl Relation {
    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    fn flipped(self) -> Relation {
        match self {
            Relation::Eq => Relation::Eq,
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "=" | "==" => Some(Relation::Eq),
            "<=" => Some(Relation::Le),
            ">=" => Some(Relation::Ge),
            _ => None,
        }
    }
}

/// `sum coefficients[a] * x[a]  (relation)  rhs`, with at least one nonzero
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    coefficients: BTreeMap<usize, Rational>,
    relation: Relation,
    rhs: Rational,
}

impl LinearConstraint {
    /// Repeated atoms are summed and zero coefficients dropped.
    pub fn new<I>(coefficients: I, relation: Relation, rhs: Rational) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (atom, c) in coefficients {
            *map.entry(atom).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::EmptyConstraint);
        }
        Ok(Self {
            coefficients: map,
            relation,
            rhs,
        })
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, Rational> {
        &self.coefficients
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    fn max_atom(&self) -> usize {
        *self.coefficients.keys().next_back().expect("non-empty")
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coefficients.iter().map(|(&a, c)| c * &x[a]).sum()
    }

    /// `lhs - rhs` at `x`.
    pub fn residual(&self, x: &[Rational]) -> Rational {
        self.lhs(x) - &self.rhs
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        self.relation.holds(&self.lhs(x), &self.rhs)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .map(|(a, c)| format!("{c}*x{a}"))
            .collect();
        write!(
            f,
            "{} {} {}",
            terms.join(" + "),
            self.relation.symbol(),
            self.rhs
        )
    }
}

/// `P(A | B) = value` as `sum_{A&B} x - value * sum_B x = 0`.
pub fn linearize_conditional(a: &Event, b: &Event, value: &Rational) -> Result<LinearConstraint> {
    linearize_conditional_rel(a, b, Relation::Eq, value)
}

/// `P(A | B)  (relation)  value`, multiplied through by `P(B)`.
pub fn linearize_conditional_rel(
    a: &Event,
    b: &Event,
    relation: Relation,
    value: &Rational,
) -> Result<LinearConstraint> {
    if value.is_negative() || *value > Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "conditional probability {value} outside [0, 1]"
        )));
    }
    let ab = a.and(b)?;
    let coefficients = b.atoms().map(|atom| {
        let c = if ab.contains(atom) {
            Rational::one() - value
        } else {
            -value.clone()
        };
        (atom, c)
    });
    LinearConstraint::new(coefficients, relation, Rational::zero())
}

/// A probabilistic statement that may or may not be expressible linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Linear(LinearConstraint),
    /// `P(event)  (relation)  value`.
    Probability {
        event: Event,
        relation: Relation,
        value: Rational,
    },
    /// `P(event | given)  (relation)  value`.
    Conditional {
        event: Event,
        given: Event,
        relation: Relation,
        value: Rational,
    },
    /// `P(a & b | given) = P(a | given) P(b | given)`; quadratic, never
    /// accepted by a [`ConstraintSystem`].
    Independence {
        a: Event,
        b: Event,
        given: Event,
    },
}

/// Linear constraints over `atom_count` probabilities. Non-negativity and
/// `sum x = 1` are always implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    atom_count: usize,
    constraints: Vec<LinearConstraint>,
}

impl ConstraintSystem {
    pub fn new(atom_count: usize) -> Self {
        Self {
            atom_count,
            constraints: Vec::new(),
        }
    }

    /// The `frame x evidence cells` atom space.
    pub fn for_frame(frame: &Frame) -> Self {
        Self::new(frame.size() * CELLS_PER_ELEMENT)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn add(&mut self, constraint: LinearConstraint) -> Result<()> {
        if constraint.max_atom() >= self.atom_count {
            return Err(Error::DimensionMismatch {
                expected: self.atom_count,
                got: constraint.max_atom() + 1,
            });
        }
        self.constraints.push(constraint);
        Ok(())
    }

    pub fn add_statement(&mut self, statement: Statement) -> Result<()> {
        let constraint = match statement {
            Statement::Linear(c) => c,
            Statement::Probability {
                event,
                relation,
                value,
            } => {
                self.check_event(&event)?;
                LinearConstraint::new(event.atoms().map(|a| (a, Rational::one())), relation, value)?
            }
            Statement::Conditional {
                event,
                given,
                relation,
                value,
            } => {
                self.check_event(&event)?;
                self.check_event(&given)?;
                linearize_conditional_rel(&event, &given, relation, &value)?
            }
            Statement::Independence { .. } => {
                return Err(Error::NonlinearConstraint("P(A&B|C) = P(A|C)P(B|C)".into()))
            }
        };
        self.add(constraint)
    }

    fn check_event(&self, e: &Event) -> Result<()> {
        if e.atom_count() == self.atom_count {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.atom_count,
                got: e.atom_count(),
            })
        }
    }

    /// Exact membership test, implicit constraints included.
    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.atom_count
            && x.iter().all(|v| !v.is_negative())
            && x.iter().sum::<Rational>().is_one()
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    fn rows(&self) -> Vec<Row> {
        let mut rows: Vec<Row> = self
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = vec![Rational::zero(); self.atom_count];
                for (&a, v) in &c.coefficients {
                    coeffs[a] = v.clone();
                }
                Row {
                    coeffs,
                    relation: c.relation,
                    rhs: c.rhs.clone(),
                }
            })
            .collect();
        rows.push(Row {
            coeffs: vec![Rational::one(); self.atom_count],
            relation: Relation::Eq,
            rhs: Rational::one(),
        });
        rows
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub witness: Vec<Rational>,
}

/// A closed probability interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo.is_negative() || lo > hi || hi > Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "[{lo}, {hi}] is not a probability interval"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Bounds on a conditional probability plus the assignments attaining them.
///
/// Both witnesses give the conditioning event positive probability. Since
/// `P(A & B) <= P(B)`, the ratio is constant along any segment running into
/// the face `P(B) = 0`, so the closure bounds are always attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalBounds {
    pub interval: Interval,
    pub lo_witness: Vec<Rational>,
    pub hi_witness: Vec<Rational>,
}

/// Optimizes `objective . x` over the system.
pub fn solve_lp(
    system: &ConstraintSystem,
    objective: &[Rational],
    sense: Sense,
) -> Result<LpSolution> {
    if objective.len() != system.atom_count {
        return Err(Error::DimensionMismatch {
            expected: system.atom_count,
            got: objective.len(),
        });
    }
    let (value, witness) = optimize(system.atom_count, system.rows(), objective, sense)?;
    Ok(LpSolution { value, witness })
}

/// `[min P(query), max P(query)]` over the system.
pub fn prob_bounds(system: &ConstraintSystem, query: &Event) -> Result<Interval> {
    system.check_event(query)?;
    let objective = indicator(query);
    let lo = solve_lp(system, &objective, Sense::Minimize)?.value;
    let hi = solve_lp(system, &objective, Sense::Maximize)?.value;
    Interval::new(lo, hi)
}

/// Bounds on `P(A | B)` over members with `P(B) > 0`.
pub fn cond_prob_bounds(
    system: &ConstraintSystem,
    a: &Event,
    b: &Event,
) -> Result<ConditionalBounds> {
    system.check_event(a)?;
    system.check_event(b)?;
    let max_b = solve_lp(system, &indicator(b), Sense::Maximize)?.value;
    if max_b.is_zero() {
        return Err(Error::ConditionUndefined);
    }
    // Variables: y_0 .. y_{n-1}, then t.
    let n = system.atom_count;
    let mut rows: Vec<Row> = system
        .rows()
        .into_iter()
        .map(|r| {
            let mut coeffs = r.coeffs;
            coeffs.push(-r.rhs);
            Row {
                coeffs,
                relation: r.relation,
                rhs: Rational::zero(),
            }
        })
        .collect();
    let mut norm = indicator(b);
    norm.push(Rational::zero());
    rows.push(Row {
        coeffs: norm,
        relation: Relation::Eq,
        rhs: Rational::one(),
    });
    let mut objective = indicator(&a.and(b)?);
    objective.push(Rational::zero());

    let mut ends = Vec::with_capacity(2);
    for sense in [Sense::Minimize, Sense::Maximize] {
        let (value, y) = optimize(n + 1, rows.clone(), &objective, sense)?;
        let t = &y[n];
        // Sum y = t together with sum_B y = 1 forces t > 0.
        debug_assert!(t.is_positive());
        let x: Vec<Rational> = y[..n].iter().map(|v| v / t).collect();
        ends.push((value, x));
    }
    let (hi, hi_witness) = ends.pop().expect("two ends");
    let (lo, lo_witness) = ends.pop().expect("two ends");
    Ok(ConditionalBounds {
        interval: Interval::new(lo, hi)?,
        lo_witness,
        hi_witness,
    })
}

/// The linear part of the agreement conditions: equal block priors and the
/// two block posteriors, each `P(S_i | Ej) = mj(S_i)` multiplied through.
/// Independence is quadratic and `P(E1 & E2) > 0` is strict, so both are
/// left out.
pub fn agreement_linear_fragment(spec: &AgreementSpec) -> Result<ConstraintSystem> {
    let frame = spec.frame();
    let mut system = ConstraintSystem::for_frame(frame);
    let prior = ratio(1, spec.k() as i64);
    let e1 = Event::evidence(frame, CellSet::E1);
    let e2 = Event::evidence(frame, CellSet::E2);
    for ((block, m1), m2) in spec
        .blocks()
        .iter()
        .zip(spec.m1_blocks())
        .zip(spec.m2_blocks())
    {
        let s = Event::elements(block);
        system.add_statement(Statement::Probability {
            event: s.clone(),
            relation: Relation::Eq,
            value: prior.clone(),
        })?;
        system.add(linearize_conditional(&s, &e1, &m1)?)?;
        system.add(linearize_conditional(&s, &e2, &m2)?)?;
    }
    Ok(system)
}

fn indicator(event: &Event) -> Vec<Rational> {
    (0..event.atom_count())
        .map(|a| {
            if event.contains(a) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

/// Optimizes over `{z >= 0 : rows}` and returns the value with the `z`.
fn optimize(
    num_vars: usize,
    rows: Vec<Row>,
    objective: &[Rational],
    sense: Sense,
) -> Result<(Rational, Vec<Rational>)> {
    let cost: Vec<Rational> = match sense {
        Sense::Minimize => objective.to_vec(),
        Sense::Maximize => objective.iter().map(|c| -c).collect(),
    };
    let mut tableau = Tableau::build(num_vars, rows);
    tableau.phase_one()?;
    let mut full_cost = cost;
    full_cost.resize(tableau.width(), Rational::zero());
    if tableau.run(&full_cost, tableau.artificial_start)? == Outcome::Unbounded {
        return Err(Error::Unbounded);
    }
    let z = tableau.primal(num_vars);
    let value: Rational = objective.iter().zip(&z).map(|(c, v)| c * v).sum();
    Ok((value, z))
}

#[derive(Debug, PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
}

/// Dense tableau: rows `A | b` with `b >= 0`, one basic column per row.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    artificial_start: usize,
}

impl Tableau {
    fn build(num_vars: usize, rows: Vec<Row>) -> Self {
        let slack_count = rows.iter().filter(|r| r.relation != Relation::Eq).count();
        let normalized: Vec<Row> = rows
            .into_iter()
            .map(|r| {
                if r.rhs.is_negative() {
                    Row {
                        coeffs: r.coeffs.iter().map(|c| -c).collect(),
                        relation: r.relation.flipped(),
                        rhs: -r.rhs,
                    }
                } else {
                    r
                }
            })
            .collect();
        let artificial_count = normalized
            .iter()
            .filter(|r| r.relation != Relation::Le)
            .count();
        let artificial_start = num_vars + slack_count;
        let width = artificial_start + artificial_count;

        let mut table = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut slack, mut artificial) = (num_vars, artificial_start);
        for r in normalized {
            let mut line = r.coeffs;
            line.resize(width + 1, Rational::zero());
            match r.relation {
                Relation::Le => {
                    line[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    line[slack] = -Rational::one();
                    slack += 1;
                    line[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                }
                Relation::Eq => {
                    line[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                }
            }
            line[width] = r.rhs;
            table.push(line);
        }
        Self {
            rows: table,
            basis,
            artificial_start,
        }
    }

    fn width(&self) -> usize {
        self.rows
            .first()
            .map_or(self.artificial_start, |r| r.len() - 1)
    }

    /// Finds a basic feasible solution free of artificial columns.
    fn phase_one(&mut self) -> Result<()> {
        let width = self.width();
        let cost: Vec<Rational> = (0..width)
            .map(|j| {
                if j >= self.artificial_start {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        self.run(&cost, width)?;
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rows)
            .filter(|(&b, _)| b >= self.artificial_start)
            .map(|(_, r)| &r[width])
            .sum();
        if infeasibility.is_positive() {
            return Err(Error::Infeasible(format!(
                "constraints cannot all hold (phase-one residual {infeasibility})"
            )));
        }
        // Pivot zero-valued artificials out; rows where that is impossible
        // are linearly dependent and dropped.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.artificial_start {
                match (0..self.artificial_start).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        Ok(())
    }

    /// Primal simplex with Bland's rule over columns `< eligible`.
    fn run(&mut self, cost: &[Rational], eligible: usize) -> Result<Outcome> {
        let width = self.width();
        loop {
            let entering = (0..eligible).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced =
                    self.basis
                        .iter()
                        .zip(&self.rows)
                        .fold(cost[j].clone(), |acc, (&b, row)| {
                            if row[j].is_zero() || cost[b].is_zero() {
                                acc
                            } else {
                                acc - &cost[b] * &row[j]
                            }
                        });
                reduced.is_negative()
            });
            let Some(j) = entering else {
                return Ok(Outcome::Optimal);
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[width] / &row[j];
                let better = match &leaving {
                    None => true,
                    Some((best_r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*best_r])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, j),
                None => return Ok(Outcome::Unbounded),
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[r] = j;
    }

    fn primal(&self, num_vars: usize) -> Vec<Rational> {
        let width = self.width();
        let mut z = vec![Rational::zero(); num_vars];
        for (&b, row) in self.basis.iter().zip(&self.rows) {
            if b < num_vars {
                z[b] = row[width].clone();
            }
        }
        z
    }
}
