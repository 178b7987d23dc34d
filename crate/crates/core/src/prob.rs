//! Joint probability assignments over `frame x evidence cells`.
//!
//! The atom space pairs every frame element with one of the four truth-value
//! cells of two evidence propositions `E1`, `E2`. Atom `(element, cell)` has
//! index `4 * element + cell`.
//!
//! The module also holds the agreement-condition checker, a constructor for
//! generic members of the constrained set, the extremal member that attains
//! the minimum conditional probability, and a seeded sampler over the set.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frame::{Frame, Partition, SubsetMask};
use crate::mass::MassFunction;
use crate::rational::{self, ratio, Rational};

pub const CELLS_PER_ELEMENT: usize = 4;

/// One joint truth-value cell of `(E1, E2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EvidenceCell {
    E1E2 = 0,
    E1NotE2 = 1,
    NotE1E2 = 2,
    NotE1NotE2 = 3,
}

impl EvidenceCell {
    pub const ALL: [EvidenceCell; 4] = [
        EvidenceCell::E1E2,
        EvidenceCell::E1NotE2,
        EvidenceCell::NotE1E2,
        EvidenceCell::NotE1NotE2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn e1(self) -> bool {
        matches!(self, EvidenceCell::E1E2 | EvidenceCell::E1NotE2)
    }

    pub fn e2(self) -> bool {
        matches!(self, EvidenceCell::E1E2 | EvidenceCell::NotE1E2)
    }

    pub fn name(self) -> &'static str {
        match self {
            EvidenceCell::E1E2 => "E1&E2",
            EvidenceCell::E1NotE2 => "E1&!E2",
            EvidenceCell::NotE1E2 => "!E1&E2",
            EvidenceCell::NotE1NotE2 => "!E1&!E2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Probability of this cell when `E1`, `E2` are independent with the
    /// given marginals.
    fn independent_weight(self, l1: &Rational, l2: &Rational) -> Rational {
        let one = Rational::one();
        let f1 = if self.e1() { l1.clone() } else { &one - l1 };
        let f2 = if self.e2() { l2.clone() } else { &one - l2 };
        f1 * f2
    }
}

/// A set of evidence cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CellSet(u8);

impl CellSet {
    pub const NONE: CellSet = CellSet(0);
    pub const ALL: CellSet = CellSet(0b1111);
    /// `E1 and E2`.
    pub const E1E2: CellSet = CellSet(0b0001);
    pub const E1: CellSet = CellSet(0b0011);
    pub const E2: CellSet = CellSet(0b0101);

    pub fn of(cells: &[EvidenceCell]) -> Self {
        CellSet(cells.iter().fold(0, |acc, c| acc | 1 << c.index()))
    }

    pub fn contains(self, cell: EvidenceCell) -> bool {
        self.0 & (1 << cell.index()) != 0
    }

    pub fn cells(self) -> impl Iterator<Item = EvidenceCell> {
        EvidenceCell::ALL
            .into_iter()
            .filter(move |&c| self.contains(c))
    }

    pub fn complement(self) -> Self {
        CellSet(!self.0 & 0b1111)
    }
}

/// A set of atoms. Frame-derived events use the `4 * element + cell`
/// layout; plain LP systems may use any atom count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    atom_count: usize,
    words: Vec<u64>,
}

impl Event {
    pub fn empty(atom_count: usize) -> Self {
        Self {
            atom_count,
            words: vec![0; atom_count.div_ceil(64)],
        }
    }

    pub fn everything(atom_count: usize) -> Self {
        Self::from_atoms(atom_count, 0..atom_count).expect("atoms in range")
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(atom_count: usize, atoms: I) -> Result<Self> {
        let mut e = Self::empty(atom_count);
        for a in atoms {
            if a >= atom_count {
                return Err(Error::DimensionMismatch {
                    expected: atom_count,
                    got: a + 1,
                });
            }
            e.words[a / 64] |= 1 << (a % 64);
        }
        Ok(e)
    }

    /// `A x C` for a frame subset `A` and cell set `C`.
    pub fn product(set: &SubsetMask, cells: CellSet) -> Self {
        let n = set.frame().size();
        let atoms = set.elements().flat_map(move |i| {
            cells
                .cells()
                .map(move |c| i * CELLS_PER_ELEMENT + c.index())
        });
        Self::from_atoms(n * CELLS_PER_ELEMENT, atoms).expect("atoms in range")
    }

    /// `A x (all cells)`: a frame subset lifted to the atom space.
    pub fn elements(set: &SubsetMask) -> Self {
        Self::product(set, CellSet::ALL)
    }

    /// `frame x C`: a pure evidence event.
    pub fn evidence(frame: &Frame, cells: CellSet) -> Self {
        Self::product(&frame.full(), cells)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn contains(&self, atom: usize) -> bool {
        atom < self.atom_count && self.words[atom / 64] & (1 << (atom % 64)) != 0
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.atom_count).filter(|&a| self.contains(a))
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_same(&self, other: &Event) -> Result<()> {
        if self.atom_count == other.atom_count {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.atom_count,
                got: other.atom_count,
            })
        }
    }

    pub fn and(&self, other: &Event) -> Result<Event> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a & b))
    }

    pub fn or(&self, other: &Event) -> Result<Event> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a | b))
    }

    pub fn minus(&self, other: &Event) -> Result<Event> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a & !b))
    }

    pub fn not(&self) -> Event {
        Event::everything(self.atom_count)
            .minus(self)
            .expect("same dimension")
    }

    fn zip(&self, other: &Event, f: impl Fn(u64, u64) -> u64) -> Event {
        Event {
            atom_count: self.atom_count,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms()).finish()
    }
}

/// A full joint distribution over the atoms of a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbAssignment {
    frame: Frame,
    p: Vec<Rational>,
}

impl ProbAssignment {
    /// Entries indexed `4 * element + cell`; must be non-negative and sum to
    /// exactly one.
    pub fn new(frame: &Frame, p: Vec<Rational>) -> Result<Self> {
        let expected = frame.size() * CELLS_PER_ELEMENT;
        if p.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: p.len(),
            });
        }
        if let Some((i, x)) = p.iter().enumerate().find(|(_, x)| x.is_negative()) {
            return Err(Error::InvalidAssignment(format!(
                "atom {i} has probability {x}"
            )));
        }
        let total = rational::sum(&p);
        if !total.is_one() {
            return Err(Error::InvalidAssignment(format!("atoms sum to {total}")));
        }
        Ok(Self {
            frame: frame.clone(),
            p,
        })
    }

    pub fn uniform(frame: &Frame) -> Self {
        let n = frame.size() * CELLS_PER_ELEMENT;
        Self {
            frame: frame.clone(),
            p: vec![ratio(1, n as i64); n],
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.p
    }

    pub fn get(&self, element: usize, cell: EvidenceCell) -> &Rational {
        &self.p[element * CELLS_PER_ELEMENT + cell.index()]
    }

    pub fn atom_count(&self) -> usize {
        self.p.len()
    }

    /// `P(event)`.
    pub fn prob(&self, event: &Event) -> Result<Rational> {
        if event.atom_count() != self.p.len() {
            return Err(Error::FrameMismatch);
        }
        Ok(rational::sum(event.atoms().map(|a| &self.p[a])))
    }

    /// `P(A x C)`, with `C` all cells when `None`.
    pub fn marginal(&self, set: &SubsetMask, cells: Option<CellSet>) -> Result<Rational> {
        self.frame.check_same(set.frame())?;
        self.prob(&Event::product(set, cells.unwrap_or(CellSet::ALL)))
    }

    /// `P(A | B)`.
    pub fn cond_prob(&self, a: &Event, b: &Event) -> Result<Rational> {
        let pb = self.prob(b)?;
        if pb.is_zero() {
            return Err(Error::ZeroProbabilityCondition);
        }
        Ok(self.prob(&a.and(b)?)? / pb)
    }

    fn set_block_cell(&self, set: &SubsetMask, cell: EvidenceCell) -> Rational {
        rational::sum(set.elements().map(|i| self.get(i, cell)))
    }
}

/// Hypotheses of the agreement theorem: one partition shared as the focal
/// family of both mass functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementSpec {
    partition: Partition,
    m1: MassFunction,
    m2: MassFunction,
}

impl AgreementSpec {
    pub fn new(partition: Partition, m1: MassFunction, m2: MassFunction) -> Result<Self> {
        let frame = partition.frame();
        frame.check_same(m1.frame())?;
        frame.check_same(m2.frame())?;
        let mut blocks: Vec<u64> = partition.blocks().iter().map(SubsetMask::bits).collect();
        blocks.sort_unstable();
        for m in [&m1, &m2] {
            let focal: Vec<u64> = m.focal_bits().map(|(b, _)| b).collect();
            if focal != blocks {
                return Err(Error::FocalMismatch);
            }
        }
        Ok(Self { partition, m1, m2 })
    }

    pub fn frame(&self) -> &Frame {
        self.partition.frame()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        self.partition.blocks()
    }

    pub fn k(&self) -> usize {
        self.partition.len()
    }

    pub fn m1(&self) -> &MassFunction {
        &self.m1
    }

    pub fn m2(&self) -> &MassFunction {
        &self.m2
    }

    /// `m1(S_i)` in block order.
    pub fn m1_blocks(&self) -> Vec<Rational> {
        block_masses(&self.m1, self.blocks())
    }

    /// `m2(S_i)` in block order.
    pub fn m2_blocks(&self) -> Vec<Rational> {
        block_masses(&self.m2, self.blocks())
    }
}

fn block_masses(m: &MassFunction, blocks: &[SubsetMask]) -> Vec<Rational> {
    blocks
        .iter()
        .map(|b| m.mass(b).expect("block in frame"))
        .collect()
}

/// One failed instance of a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub block: Option<usize>,
    pub lhs: Option<Rational>,
    pub rhs: Rational,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionCheck {
    pub violations: Vec<Violation>,
}

impl ConditionCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of checking an assignment against conditions (i) to (iv):
/// equal block priors, per-block independence of `E1` and `E2`, block
/// posteriors equal to the masses, and `P(E1 and E2) > 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionReport {
    pub cond_i: ConditionCheck,
    pub cond_ii: ConditionCheck,
    pub cond_iii: ConditionCheck,
    pub cond_iv: ConditionCheck,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.cond_i.passed()
            && self.cond_ii.passed()
            && self.cond_iii.passed()
            && self.cond_iv.passed()
    }

    /// Roman numerals of the failing conditions, e.g. `"i, iv"`.
    pub fn failing(&self) -> String {
        [
            ("i", &self.cond_i),
            ("ii", &self.cond_ii),
            ("iii", &self.cond_iii),
            ("iv", &self.cond_iv),
        ]
        .iter()
        .filter(|(_, c)| !c.passed())
        .map(|(n, _)| *n)
        .collect::<Vec<_>>()
        .join(", ")
    }
}

/// Checks the four conditions against arbitrary blocks (they need not form
/// a partition) with target block posteriors `m1`, `m2`.
pub fn check_conditions(
    p: &ProbAssignment,
    blocks: &[SubsetMask],
    m1: &[Rational],
    m2: &[Rational],
) -> Result<ConditionReport> {
    let frame = p.frame();
    for b in blocks {
        frame.check_same(b.frame())?;
    }
    let k = blocks.len();
    if m1.len() != k || m2.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: m1.len().min(m2.len()),
        });
    }
    let mut report = ConditionReport::default();
    let e1 = Event::evidence(frame, CellSet::E1);
    let e2 = Event::evidence(frame, CellSet::E2);
    let e12 = Event::evidence(frame, CellSet::E1E2);
    let prior_target = ratio(1, k as i64);

    for (i, block) in blocks.iter().enumerate() {
        let s = Event::elements(block);
        let ps = p.prob(&s)?;
        if ps != prior_target {
            report.cond_i.violations.push(Violation {
                block: Some(i),
                lhs: Some(ps.clone()),
                rhs: prior_target.clone(),
                note: "P(S_i) != 1/k".into(),
            });
        }
        if ps.is_zero() {
            report.cond_ii.violations.push(Violation {
                block: Some(i),
                lhs: None,
                rhs: Rational::zero(),
                note: "P(S_i) = 0, conditionals undefined".into(),
            });
        } else {
            let joint = p.prob(&e12.and(&s)?)? / &ps;
            let product = (p.prob(&e1.and(&s)?)? / &ps) * (p.prob(&e2.and(&s)?)? / &ps);
            if joint != product {
                report.cond_ii.violations.push(Violation {
                    block: Some(i),
                    lhs: Some(joint),
                    rhs: product,
                    note: "P(E1&E2|S_i) != P(E1|S_i)P(E2|S_i)".into(),
                });
            }
        }
        for (evidence, target, label) in [(&e1, &m1[i], "E1"), (&e2, &m2[i], "E2")] {
            match p.cond_prob(&s, evidence) {
                Ok(post) if post == *target => {}
                Ok(post) => report.cond_iii.violations.push(Violation {
                    block: Some(i),
                    lhs: Some(post),
                    rhs: target.clone(),
                    note: format!("P(S_i|{label}) != m(S_i)"),
                }),
                Err(_) => report.cond_iii.violations.push(Violation {
                    block: Some(i),
                    lhs: None,
                    rhs: target.clone(),
                    note: format!("P({label}) = 0, conditional undefined"),
                }),
            }
        }
    }
    let p12 = p.prob(&e12)?;
    if !p12.is_positive() {
        report.cond_iv.violations.push(Violation {
            block: None,
            lhs: Some(p12),
            rhs: Rational::zero(),
            note: "P(E1&E2) must be > 0".into(),
        });
    }
    Ok(report)
}

/// [`check_conditions`] with the blocks and masses of `spec`.
pub fn check_agreement_conditions(
    p: &ProbAssignment,
    spec: &AgreementSpec,
) -> Result<ConditionReport> {
    p.frame().check_same(spec.frame())?;
    check_conditions(p, spec.blocks(), &spec.m1_blocks(), &spec.m2_blocks())
}

/// How [`construct_member`] obtains the block likelihoods `P(E1|S_i)`,
/// `P(E2|S_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvidenceParams {
    /// Choose `P(Ej|S_i) = mj(S_i) / (2 max_l mj(S_l))`.
    Solve,
    /// Use the given `(P(E1|S_i), P(E2|S_i))` per block after checking they
    /// reproduce the masses.
    Given(Vec<(Rational, Rational)>),
}

/// Builds a member of the constrained set:
/// `p(x, cell) = (1/k) q_i(x) w_i(cell)` where `q_i` is the within-block
/// distribution (uniform when `within_block` is `None`) and `w_i` treats
/// `E1`, `E2` as independent inside block `i`.
///
/// Each `within_block[i]` lists probabilities for the elements of block `i`
/// in ascending index order.
pub fn construct_member(
    spec: &AgreementSpec,
    within_block: Option<&[Vec<Rational>]>,
    evidence: &EvidenceParams,
) -> Result<ProbAssignment> {
    let k = spec.k();
    let blocks = spec.blocks();
    let within: Vec<Vec<Rational>> = match within_block {
        Some(w) => {
            if w.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: w.len(),
                });
            }
            for (i, (dist, block)) in w.iter().zip(blocks).enumerate() {
                if dist.len() != block.len() {
                    return Err(Error::DimensionMismatch {
                        expected: block.len(),
                        got: dist.len(),
                    });
                }
                if dist.iter().any(Signed::is_negative) || !dist.iter().sum::<Rational>().is_one() {
                    return Err(Error::InvalidArgument(format!(
                        "within-block distribution {i} must be non-negative and sum to 1"
                    )));
                }
            }
            w.to_vec()
        }
        None => blocks
            .iter()
            .map(|b| vec![ratio(1, b.len() as i64); b.len()])
            .collect(),
    };
    let likelihoods = match evidence {
        EvidenceParams::Solve => {
            solved_likelihoods(&spec.m1_blocks(), &spec.m2_blocks(), &ratio(1, 2))
        }
        EvidenceParams::Given(given) => {
            validate_likelihoods(given, &spec.m1_blocks(), &spec.m2_blocks())?;
            given.clone()
        }
    };
    let mut p = vec![Rational::zero(); spec.frame().size() * CELLS_PER_ELEMENT];
    let prior = ratio(1, k as i64);
    for ((block, dist), (l1, l2)) in blocks.iter().zip(&within).zip(&likelihoods) {
        for cell in EvidenceCell::ALL {
            let w = &prior * cell.independent_weight(l1, l2);
            for (elem, q) in block.elements().zip(dist) {
                p[elem * CELLS_PER_ELEMENT + cell.index()] = &w * q;
            }
        }
    }
    ProbAssignment::new(spec.frame(), p)
}

/// `P(Ej|S_i) = scale * mj(S_i) / max_l mj(S_l)` for `scale` in `(0, 1]`.
fn solved_likelihoods(
    m1: &[Rational],
    m2: &[Rational],
    scale: &Rational,
) -> Vec<(Rational, Rational)> {
    let max1 = m1.iter().max().cloned().unwrap_or_else(Rational::one);
    let max2 = m2.iter().max().cloned().unwrap_or_else(Rational::one);
    m1.iter()
        .zip(m2)
        .map(|(a, b)| (scale * a / &max1, scale * b / &max2))
        .collect()
}

fn validate_likelihoods(
    given: &[(Rational, Rational)],
    m1: &[Rational],
    m2: &[Rational],
) -> Result<()> {
    if given.len() != m1.len() {
        return Err(Error::DimensionMismatch {
            expected: m1.len(),
            got: given.len(),
        });
    }
    let unit = |x: &Rational| !x.is_negative() && *x <= Rational::one();
    if !given.iter().all(|(a, b)| unit(a) && unit(b)) {
        return Err(Error::InvalidArgument(
            "likelihoods must lie in [0, 1]".into(),
        ));
    }
    // With equal block priors, P(S_i|Ej) = P(Ej|S_i) / sum_l P(Ej|S_l).
    for (which, masses) in [(0usize, m1), (1, m2)] {
        let l: Vec<&Rational> = given
            .iter()
            .map(|g| if which == 0 { &g.0 } else { &g.1 })
            .collect();
        let total: Rational = l.iter().copied().sum();
        for (i, (li, mi)) in l.iter().zip(masses).enumerate() {
            if total.is_zero() || &(*li / &total) != mi {
                return Err(Error::Infeasible(format!(
                    "P(E{}|S_{}) = {li} cannot give P(S_{}|E{}) = {mi}",
                    which + 1,
                    i + 1,
                    i + 1,
                    which + 1
                )));
            }
        }
    }
    if given.iter().all(|(a, b)| (a * b).is_zero()) {
        return Err(Error::Infeasible("P(E1&E2) would be 0".into()));
    }
    Ok(())
}

/// The member that attains the minimum of `P(A | E1 and E2)`.
///
/// Blocks inside `A` are copied from `reference`; every other block puts
/// all of its per-cell mass on its lowest-index element outside `A`.
pub fn extremal_member(
    spec: &AgreementSpec,
    set: &SubsetMask,
    reference: &ProbAssignment,
) -> Result<ProbAssignment> {
    spec.frame().check_same(set.frame())?;
    let report = check_agreement_conditions(reference, spec)?;
    if !report.all_pass() {
        return Err(Error::ConditionsViolated(report.failing()));
    }
    let mut p = vec![Rational::zero(); reference.atom_count()];
    for block in spec.blocks() {
        if block.is_subset_of(set)? {
            for elem in block.elements() {
                for cell in EvidenceCell::ALL {
                    let a = elem * CELLS_PER_ELEMENT + cell.index();
                    p[a] = reference.atoms()[a].clone();
                }
            }
        } else {
            let theta0 = block.difference(set)?.lowest().expect("block not inside A");
            for cell in EvidenceCell::ALL {
                p[theta0 * CELLS_PER_ELEMENT + cell.index()] =
                    reference.set_block_cell(block, cell);
            }
        }
    }
    ProbAssignment::new(spec.frame(), p)
}

/// Seeded draws from the constrained set.
///
/// Each draw picks block likelihoods uniformly from the feasible scaling
/// range and, for every block and cell separately, an approximately
/// uniform point of the simplex over the block's elements (sparsified now
/// and then so boundary members show up). Identical seeds give identical
/// output.
pub fn sample_members(spec: &AgreementSpec, count: usize, seed: u64) -> Vec<ProbAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m1 = spec.m1_blocks();
    let m2 = spec.m2_blocks();
    let prior = ratio(1, spec.k() as i64);
    (0..count)
        .map(|_| {
            let s1 = ratio(rng.gen_range(1..=1000), 1000);
            let s2 = ratio(rng.gen_range(1..=1000), 1000);
            let l1 = solved_likelihoods(&m1, &m2, &s1);
            let l2 = solved_likelihoods(&m1, &m2, &s2);
            let mut p = vec![Rational::zero(); spec.frame().size() * CELLS_PER_ELEMENT];
            for (i, block) in spec.blocks().iter().enumerate() {
                let (e1, e2) = (&l1[i].0, &l2[i].1);
                for cell in EvidenceCell::ALL {
                    let w = &prior * cell.independent_weight(e1, e2);
                    let q = random_simplex_point(&mut rng, block.len());
                    for (elem, qj) in block.elements().zip(q) {
                        p[elem * CELLS_PER_ELEMENT + cell.index()] = &w * qj;
                    }
                }
            }
            ProbAssignment::new(spec.frame(), p).expect("sampled member is normalized")
        })
        .collect()
}

fn random_simplex_point(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    // Quantized exponential spacings; a zero weight with probability 1/4.
    let mut weights: Vec<i64> = (0..len)
        .map(|_| {
            if len > 1 && rng.gen_bool(0.25) {
                0
            } else {
                let u: f64 = rng.gen_range(f64::EPSILON..1.0);
                (-u.ln() * 100.0).floor() as i64 + 1
            }
        })
        .collect();
    if weights.iter().all(|&w| w == 0) {
        let j = rng.gen_range(0..len);
        weights[j] = 1;
    }
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|w| ratio(w, total)).collect()
}

/// `parts` positive rationals with one common denominator `d <= max_den`
/// that sum to one.
pub fn random_composition<R: Rng + ?Sized>(
    rng: &mut R,
    parts: usize,
    max_den: i64,
) -> Vec<Rational> {
    assert!(
        parts >= 1 && parts as i64 <= max_den,
        "need 1 <= parts <= max_den"
    );
    let den = rng.gen_range(parts as i64..=max_den);
    // Choose parts-1 distinct cut points in 1..den.
    let mut cuts: Vec<i64> = rand::seq::index::sample(rng, (den - 1) as usize, parts - 1)
        .into_iter()
        .map(|c| c as i64 + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(den);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let part = ratio(c - prev, den);
            prev = c;
            part
        })
        .collect()
}

/// A random spec with `k` blocks of `1..=max_block` elements each, elements
/// scattered over the frame, and masses with denominators up to `max_den`.
pub fn random_spec<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    max_block: usize,
    max_den: i64,
) -> Result<AgreementSpec> {
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_block)).collect();
    let n: usize = sizes.iter().sum();
    let frame = Frame::new((0..n).map(|i| format!("t{i}")))?;
    let mut order: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    let mut blocks = Vec::with_capacity(k);
    let mut next = 0;
    for size in sizes {
        let bits = order[next..next + size]
            .iter()
            .fold(0u64, |acc, &i| acc | 1 << i);
        blocks.push(frame.subset_from_bits(bits)?);
        next += size;
    }
    let partition = Partition::new(&frame, blocks.clone())?;
    let m1 = MassFunction::new(
        &frame,
        blocks
            .iter()
            .cloned()
            .zip(random_composition(rng, k, max_den)),
    )?;
    let m2 = MassFunction::new(
        &frame,
        blocks
            .iter()
            .cloned()
            .zip(random_composition(rng, k, max_den)),
    )?;
    AgreementSpec::new(partition, m1, m2)
}

/// `1/k` prior shared by all blocks, as a convenience for callers.
pub fn uniform_prior(k: usize) -> Vec<Rational> {
    vec![ratio(1, k as i64); k]
}
