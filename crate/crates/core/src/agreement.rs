//! Dempster's rule against probabilistic-logic conditioning.
//!
//! [`agreement_report`] checks both identities that hold when the two mass
//! functions share one partition as focal family and the constrained set
//! meets the four conditions. The remaining functions evaluate the scenarios
//! where the two calculi part ways: a skewed prior over a two-block
//! partition ([`odds_swamp`]), overlapping focal sets
//! ([`nonpartition_witness`]), two different partitions ([`lottery`]) and
//! dependent evidence ([`dependence_divergence`]).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::frame::{is_partition, Frame, Partition, SubsetMask};
use crate::lp::{agreement_linear_fragment, cond_prob_bounds, Interval};
use crate::mass::{CombinationResult, MassFunction};
use crate::prob::{
    check_agreement_conditions, check_conditions, construct_member, extremal_member,
    sample_members, AgreementSpec, CellSet, ConditionReport, Event, EvidenceCell, EvidenceParams,
    ProbAssignment, CELLS_PER_ELEMENT,
};
use crate::rational::{int, ratio, Rational};

/// Block posteriors `P(S_j | E1 & E2)` for a prior over the shared partition
/// of `m1` and `m2`: `P(S_j | E1 & E2)` is proportional to
/// `m1(S_j) m2(S_j) / prior(S_j)`.
///
/// Blocks are returned ordered by their lowest element index and `prior`
/// must follow the same order. Under a uniform prior the result equals the
/// orthogonal sum on the blocks.
pub fn posterior_partition(
    m1: &MassFunction,
    m2: &MassFunction,
    prior: &[Rational],
) -> Result<Vec<(SubsetMask, Rational)>> {
    m1.frame().check_same(m2.frame())?;
    let mut blocks: Vec<SubsetMask> = m1.focal_sets().map(|(s, _)| s).collect();
    let other: Vec<SubsetMask> = m2.focal_sets().map(|(s, _)| s).collect();
    if blocks != other || !is_partition(m1.frame(), &blocks)? {
        return Err(Error::FocalMismatch);
    }
    blocks.sort_by_key(|b| b.lowest());
    if prior.len() != blocks.len() {
        return Err(Error::DimensionMismatch {
            expected: blocks.len(),
            got: prior.len(),
        });
    }
    if prior.iter().any(|p| !p.is_positive()) || !prior.iter().sum::<Rational>().is_one() {
        return Err(Error::InvalidArgument(
            "prior must be positive and sum to 1".into(),
        ));
    }
    let weights: Vec<Rational> = blocks
        .iter()
        .zip(prior)
        .map(|(b, p)| Ok(m1.mass(b)? * m2.mass(b)? / p))
        .collect::<Result<_>>()?;
    let total: Rational = weights.iter().sum();
    if total.is_zero() {
        return Err(Error::ZeroProbabilityCondition);
    }
    Ok(blocks
        .into_iter()
        .zip(weights)
        .map(|(b, w)| (b, w / &total))
        .collect())
}

/// Two-hypothesis comparison under a prior on `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddsSwamp {
    /// `(m1 (+) m2)(H)`.
    pub dempster: Rational,
    /// `P(H | E1 & E2)` with `E1`, `E2` independent under `H` and under not-`H`.
    pub problogic: Rational,
    pub divergence: Rational,
}

/// Dempster's rule and Bayesian conditioning for `H` vs. not-`H` with
/// `P(H|E1) = m1H`, `P(H|E2) = m2H` and prior `P(H) = priorH`.
///
/// The probabilistic side is
/// `P(H|E1)P(H|E2) / (P(H|E1)P(H|E2) + O(H) P(~H|E1)P(~H|E2))` with odds
/// `O(H) = P(H)/P(~H)`.
pub fn odds_swamp(m1h: &Rational, m2h: &Rational, prior_h: &Rational) -> Result<OddsSwamp> {
    for (name, v) in [("m1(H)", m1h), ("m2(H)", m2h), ("P(H)", prior_h)] {
        if !v.is_positive() || *v >= Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "{name} = {v} must lie strictly between 0 and 1"
            )));
        }
    }
    let one = Rational::one();
    let support = m1h * m2h;
    let against = (&one - m1h) * (&one - m2h);
    let dempster = &support / (&support + &against);
    let odds = prior_h / (&one - prior_h);
    let problogic = &support / (&support + odds * &against);
    let divergence = (&dempster - &problogic).abs();
    Ok(OddsSwamp {
        dempster,
        problogic,
        divergence,
    })
}

/// One fair lottery with `n` tickets, evidence `E1` putting `m1x1` on the
/// first participant and `E2` uniform over everyone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LotteryResult {
    pub n: u64,
    pub m1x1: Rational,
    /// `(m1 (+) m2)({x1}) = m1x1 / (m1x1 + t1)`.
    pub m3x1: Rational,
    /// `Bel({x1})` under the combined mass; a singleton's belief is its mass.
    pub bel: Rational,
    /// `P({x1} | E1 & E2) = m1x1 / (m1x1 + t2)`.
    pub posterior: Rational,
    /// `sum_{i=2..n} m1({x2..xn}) = (1 - m1x1)(n - 1)`.
    pub t1: Rational,
    /// `sum_{i=2..n} P({xi} | E1) = 1 - m1x1`.
    pub t2: Rational,
}

/// Closed-form evaluation for any `n >= 2`.
pub fn lottery(n: u64, m1x1: &Rational) -> Result<LotteryResult> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "lottery needs n >= 2, got {n}"
        )));
    }
    if !m1x1.is_positive() || *m1x1 >= Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "m1({{x1}}) = {m1x1} must lie strictly between 0 and 1"
        )));
    }
    let rest = Rational::one() - m1x1;
    let others = Rational::from_integer((n - 1).into());
    let t1 = &rest * &others;
    let t2 = rest;
    let m3x1 = m1x1 / (m1x1 + &t1);
    let posterior = m1x1 / (m1x1 + &t2);
    Ok(LotteryResult {
        n,
        m1x1: m1x1.clone(),
        bel: m3x1.clone(),
        m3x1,
        posterior,
        t1,
        t2,
    })
}

/// The lottery evaluated on an explicit frame: Dempster's rule through
/// [`MassFunction::combine`] and the posterior through conditioning a
/// concrete joint assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LotteryCrossCheck {
    pub combination: CombinationResult,
    pub m3x1: Rational,
    pub bel: Rational,
    pub witness: ProbAssignment,
    /// Whether `witness` satisfies the lottery's conditions (1) to (4).
    pub conditions_hold: bool,
    pub posterior: Rational,
}

/// Explicit-frame version of [`lottery`], limited by the frame size cap.
pub fn lottery_explicit(n: usize, m1x1: &Rational) -> Result<LotteryCrossCheck> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "lottery needs n >= 2, got {n}"
        )));
    }
    let frame = Frame::new((1..=n).map(|i| format!("x{i}")))?;
    let x1 = frame.singleton(0);
    let rest_set = x1.complement();
    let m1 = MassFunction::new(
        &frame,
        [
            (x1.clone(), m1x1.clone()),
            (rest_set.clone(), Rational::one() - m1x1),
        ],
    )?;
    let m2 = MassFunction::new(
        &frame,
        (0..n).map(|i| (frame.singleton(i), ratio(1, n as i64))),
    )?;
    let combination = m1.combine(&m2)?;
    let m3x1 = combination.combined.mass(&x1)?;
    let bel = combination.combined.belief(&x1)?;

    let witness = lottery_witness(&frame, m1x1)?;
    let conditions_hold = lottery_conditions_hold(&witness, m1x1)?;
    let e12 = Event::evidence(&frame, CellSet::E1E2);
    let posterior = witness.cond_prob(&Event::elements(&x1), &e12)?;
    Ok(LotteryCrossCheck {
        combination,
        m3x1,
        bel,
        witness,
        conditions_hold,
        posterior,
    })
}

/// Equal priors, `P(E2|xi) = 1/2` for all `i`, and `P(E1|x1)` set `m/(1-m)
/// (n-1)` times the common `P(E1|xi)` of the others, which gives
/// `P(x1|E1) = m`.
fn lottery_witness(frame: &Frame, m: &Rational) -> Result<ProbAssignment> {
    let n = frame.size();
    let one = Rational::one();
    let tilt = m * int(n as i64 - 1) / (&one - m);
    let base = if tilt > one {
        &one / &tilt
    } else {
        one.clone()
    } * ratio(1, 2);
    let first = &base * &tilt;
    let half = ratio(1, 2);
    let prior = ratio(1, n as i64);
    let mut p = Vec::with_capacity(n * CELLS_PER_ELEMENT);
    for i in 0..n {
        let l1 = if i == 0 { &first } else { &base };
        for cell in EvidenceCell::ALL {
            let f1 = if cell.e1() { l1.clone() } else { &one - l1 };
            let f2 = half.clone();
            p.push(&prior * f1 * f2);
        }
    }
    ProbAssignment::new(frame, p)
}

/// Conditions (1), (2a), (2b), (3a), (3b) and (4) of the lottery.
pub fn lottery_conditions_hold(p: &ProbAssignment, m1x1: &Rational) -> Result<bool> {
    let frame = p.frame();
    let n = frame.size();
    let uniform = ratio(1, n as i64);
    let e1 = Event::evidence(frame, CellSet::E1);
    let e2 = Event::evidence(frame, CellSet::E2);
    let e12 = Event::evidence(frame, CellSet::E1E2);
    let independent = |s: &SubsetMask| -> Result<bool> {
        let ev = Event::elements(s);
        let ps = p.prob(&ev)?;
        if ps.is_zero() {
            return Ok(false);
        }
        let joint = p.prob(&ev.and(&e12)?)? / &ps;
        let a = p.prob(&ev.and(&e1)?)? / &ps;
        let b = p.prob(&ev.and(&e2)?)? / &ps;
        Ok(joint == a * b)
    };
    for i in 0..n {
        let xi = frame.singleton(i);
        let ev = Event::elements(&xi);
        if p.prob(&ev)? != uniform || !independent(&xi)? {
            return Ok(false);
        }
        match p.cond_prob(&ev, &e2) {
            Ok(v) if v == uniform => {}
            _ => return Ok(false),
        }
    }
    let x1 = frame.singleton(0);
    if !independent(&x1.complement())? {
        return Ok(false);
    }
    match p.cond_prob(&Event::elements(&x1), &e1) {
        Ok(v) if v == *m1x1 => {}
        _ => return Ok(false),
    }
    Ok(p.prob(&e12)?.is_positive())
}

/// Overlapping focal sets: the orthogonal sum commits mass to `{b}` although
/// a member of the constrained set gives `b` zero posterior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonpartitionWitness {
    pub combined: CombinationResult,
    pub witness: ProbAssignment,
    /// Conditions checked with `{a,b}` and `{b,c}` as the two blocks.
    pub report: ConditionReport,
    /// `P({b} | E1 & E2)` under `witness`.
    pub conditional: Rational,
}

/// Frame `{a,b,c}`, `m1 = m2 = ({a,b}: 1/2, {b,c}: 1/2)`.
///
/// The witness puts no mass on `b`, `1/2` on each of `a` and `c`, and makes
/// `E1`, `E2` fair independent coins given either, so each `a` and `c` atom
/// carries `1/8`.
pub fn nonpartition_witness() -> Result<NonpartitionWitness> {
    let frame = Frame::new(["a", "b", "c"])?;
    let ab = frame.subset(["a", "b"])?;
    let bc = frame.subset(["b", "c"])?;
    let half = ratio(1, 2);
    let m = MassFunction::new(
        &frame,
        [(ab.clone(), half.clone()), (bc.clone(), half.clone())],
    )?;
    let combined = m.combine(&m)?;

    let eighth = ratio(1, 8);
    let mut p = vec![Rational::zero(); 3 * CELLS_PER_ELEMENT];
    for elem in [0, 2] {
        for cell in EvidenceCell::ALL {
            p[elem * CELLS_PER_ELEMENT + cell.index()] = eighth.clone();
        }
    }
    let witness = ProbAssignment::new(&frame, p)?;
    let masses = [half.clone(), half];
    let report = check_conditions(&witness, &[ab, bc], &masses, &masses)?;
    let b = Event::elements(&frame.subset(["b"])?);
    let conditional = witness.cond_prob(&b, &Event::evidence(&frame, CellSet::E1E2))?;
    Ok(NonpartitionWitness {
        combined,
        witness,
        report,
        conditional,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confirmation {
    Confirms,
    Irrelevant,
    Disconfirms,
}

/// `P(H|E) / P(H)`.
pub fn confirmation_ratio(
    p: &ProbAssignment,
    hypothesis: &Event,
    evidence: &Event,
) -> Result<Rational> {
    let prior = p.prob(hypothesis)?;
    if prior.is_zero() {
        return Err(Error::ZeroProbabilityCondition);
    }
    Ok(p.cond_prob(hypothesis, evidence)? / prior)
}

pub fn classify_confirmation(ratio: &Rational) -> Confirmation {
    match ratio.cmp(&Rational::one()) {
        std::cmp::Ordering::Greater => Confirmation::Confirms,
        std::cmp::Ordering::Equal => Confirmation::Irrelevant,
        std::cmp::Ordering::Less => Confirmation::Disconfirms,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAgreement {
    pub block: SubsetMask,
    /// `(m1 (+) m2)(S_i)`.
    pub dempster: Rational,
    /// Closed-form posterior with the uniform prior.
    pub posterior: Rational,
    /// `P(S_i | E1 & E2)` for a member built by [`construct_member`].
    pub member: Rational,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub blocks: Vec<BlockAgreement>,
    pub conflict: Rational,
    /// Every block agrees.
    pub blocks_agree: bool,
    pub query: SubsetMask,
    /// `Bel(A)` under the orthogonal sum.
    pub belief: Rational,
    /// `P(A | E1 & E2)` for the extremal member.
    pub constructed_min: Rational,
    /// Smallest `P(A | E1 & E2)` among the sampled members.
    pub sampled_min: Option<Rational>,
    pub samples: usize,
    /// `belief == constructed_min` and no sample below it.
    pub minimum_attained: bool,
}

/// Evaluates both agreement identities for `spec` and query `A`.
pub fn agreement_report(
    spec: &AgreementSpec,
    query: &SubsetMask,
    samples: usize,
    seed: u64,
) -> Result<AgreementReport> {
    let frame = spec.frame();
    frame.check_same(query.frame())?;
    let combination = spec.m1().combine(spec.m2())?;
    let m3 = &combination.combined;
    let k = spec.k();

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| spec.blocks()[i].lowest());
    let closed = posterior_partition(spec.m1(), spec.m2(), &vec![ratio(1, k as i64); k])?;
    let mut closed_by_block = vec![Rational::zero(); k];
    for (slot, (_, v)) in order.iter().zip(closed) {
        closed_by_block[*slot] = v;
    }

    let reference = construct_member(spec, None, &EvidenceParams::Solve)?;
    let e12 = Event::evidence(frame, CellSet::E1E2);
    let mut blocks = Vec::with_capacity(k);
    for (block, posterior) in spec.blocks().iter().zip(closed_by_block) {
        let dempster = m3.mass(block)?;
        let member = reference.cond_prob(&Event::elements(block), &e12)?;
        let equal = dempster == posterior && dempster == member;
        blocks.push(BlockAgreement {
            block: block.clone(),
            dempster,
            posterior,
            member,
            equal,
        });
    }
    let blocks_agree = blocks.iter().all(|b| b.equal);

    let belief = m3.belief(query)?;
    let a = Event::elements(query);
    let extremal = extremal_member(spec, query, &reference)?;
    let constructed_min = extremal.cond_prob(&a, &e12)?;
    let mut sampled_min: Option<Rational> = None;
    let drawn = sample_members(spec, samples, seed);
    for q in &drawn {
        let v = q.cond_prob(&a, &e12)?;
        if sampled_min.as_ref().is_none_or(|m| v < *m) {
            sampled_min = Some(v);
        }
    }
    let minimum_attained =
        belief == constructed_min && sampled_min.as_ref().is_none_or(|m| *m >= constructed_min);
    Ok(AgreementReport {
        blocks,
        conflict: combination.conflict,
        blocks_agree,
        query: query.clone(),
        belief,
        constructed_min,
        sampled_min,
        samples: drawn.len(),
        minimum_attained,
    })
}

/// Dependent evidence: keep equal priors and the block posteriors, drop the
/// independence condition, and see how far `P(S_1 | E1 & E2)` can move from
/// the orthogonal sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceDivergence {
    pub dempster: Rational,
    pub range: Interval,
    /// Condition report of the assignment attaining the lower end; it fails
    /// only the independence condition when the range is wider than a point.
    pub lo_report: ConditionReport,
}

pub fn dependence_divergence(spec: &AgreementSpec) -> Result<DependenceDivergence> {
    let frame = spec.frame();
    let system = agreement_linear_fragment(spec)?;
    let first = &spec.blocks()[0];
    let bounds = cond_prob_bounds(
        &system,
        &Event::elements(first),
        &Event::evidence(frame, CellSet::E1E2),
    )?;
    let lo_member = ProbAssignment::new(frame, bounds.lo_witness)?;
    let lo_report = check_agreement_conditions(&lo_member, spec)?;
    let dempster = spec.m1().combine(spec.m2())?.combined.mass(first)?;
    Ok(DependenceDivergence {
        dempster,
        range: bounds.interval,
        lo_report,
    })
}

/// Two-block spec on `{H, notH}` with `m1(H) = m1h`, `m2(H) = m2h`.
pub fn bipartite_spec(m1h: &Rational, m2h: &Rational) -> Result<AgreementSpec> {
    let frame = Frame::new(["H", "notH"])?;
    let mass = |x: &Rational| {
        MassFunction::new(
            &frame,
            [
                (frame.singleton(0), x.clone()),
                (frame.singleton(1), Rational::one() - x),
            ],
        )
    };
    AgreementSpec::new(Partition::singletons(&frame), mass(m1h)?, mass(m2h)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn posterior_partition_examples() {
        let spec = bipartite_spec(&ratio(9, 10), &ratio(9, 10)).unwrap();
        let uniform =
            posterior_partition(spec.m1(), spec.m2(), &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(uniform[0].1, ratio(81, 82));
        assert_eq!(uniform[1].1, ratio(1, 82));
        let skewed =
            posterior_partition(spec.m1(), spec.m2(), &[ratio(999, 1000), ratio(1, 1000)]).unwrap();
        assert_eq!(skewed[0].1, ratio(3, 40));

        let flat = bipartite_spec(&ratio(1, 2), &ratio(1, 5)).unwrap();
        let post = posterior_partition(flat.m1(), flat.m2(), &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(post[0].1, ratio(1, 5));
        assert_eq!(post[1].1, ratio(4, 5));

        assert!(posterior_partition(spec.m1(), spec.m2(), &[ratio(1, 2)]).is_err());
        assert!(posterior_partition(spec.m1(), spec.m2(), &[int(1), int(0)]).is_err());
        let v = MassFunction::vacuous(spec.frame());
        assert_eq!(
            posterior_partition(spec.m1(), &v, &[ratio(1, 2), ratio(1, 2)]).unwrap_err(),
            Error::FocalMismatch
        );
    }

    #[test]
    fn odds_swamp_examples() {
        let r = odds_swamp(&ratio(9, 10), &ratio(9, 10), &ratio(999, 1000)).unwrap();
        assert_eq!(r.dempster, ratio(81, 82));
        assert_eq!(r.problogic, ratio(3, 40));
        let r = odds_swamp(&ratio(9, 10), &ratio(9, 10), &ratio(1, 2)).unwrap();
        assert_eq!(r.problogic, ratio(81, 82));
        assert!(r.divergence.is_zero());
        let r = odds_swamp(&ratio(1, 2), &ratio(1, 2), &ratio(9, 10)).unwrap();
        assert_eq!(r.dempster, ratio(1, 2));
        assert_eq!(r.problogic, ratio(1, 10));
        for bad in [int(0), int(1)] {
            assert!(odds_swamp(&bad, &ratio(1, 2), &ratio(1, 2)).is_err());
            assert!(odds_swamp(&ratio(1, 2), &ratio(1, 2), &bad).is_err());
        }
    }

    #[test]
    fn lottery_examples() {
        let r = lottery(112, &ratio(1, 10)).unwrap();
        assert_eq!(r.m3x1, ratio(1, 1000));
        assert_eq!(r.bel, ratio(1, 1000));
        assert_eq!(r.posterior, ratio(1, 10));
        let r = lottery(112, &ratio(9, 10)).unwrap();
        assert_eq!(r.m3x1, ratio(3, 40));
        assert_eq!(r.posterior, ratio(9, 10));
        let r = lottery(2, &ratio(3, 7)).unwrap();
        assert_eq!(r.m3x1, ratio(3, 7));
        assert_eq!(r.posterior, ratio(3, 7));
        assert!(lottery(1, &ratio(1, 2)).is_err());
        assert!(lottery(5, &int(1)).is_err());
    }

    #[test]
    fn lottery_closed_form_matches_explicit_frames() {
        for n in 2..=12usize {
            for m in [ratio(1, 10), ratio(1, 2), ratio(9, 10), ratio(99, 100)] {
                let closed = lottery(n as u64, &m).unwrap();
                let explicit = lottery_explicit(n, &m).unwrap();
                assert!(explicit.conditions_hold, "n={n} m={m}");
                assert_eq!(explicit.m3x1, closed.m3x1);
                assert_eq!(explicit.bel, closed.bel);
                assert_eq!(explicit.posterior, closed.posterior);
            }
        }
    }

    #[test]
    fn nonpartition_example() {
        let w = nonpartition_witness().unwrap();
        let f = w.witness.frame().clone();
        assert_eq!(
            w.combined.combined.mass(&f.subset(["b"]).unwrap()).unwrap(),
            ratio(1, 2)
        );
        assert!(w.report.all_pass(), "{:?}", w.report);
        assert_eq!(w.conditional, int(0));
        assert_eq!(
            w.witness
                .marginal(&f.subset(["a", "b"]).unwrap(), None)
                .unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            w.witness
                .marginal(&f.subset(["b", "c"]).unwrap(), None)
                .unwrap(),
            ratio(1, 2)
        );
        // The listed marginals and conditionals.
        let e1 = Event::evidence(&f, CellSet::E1);
        let e2 = Event::evidence(&f, CellSet::E2);
        assert_eq!(w.witness.prob(&e1).unwrap(), ratio(1, 2));
        assert_eq!(w.witness.prob(&e2).unwrap(), ratio(1, 2));
        let a = Event::elements(&f.singleton(0));
        let c = Event::elements(&f.singleton(2));
        assert_eq!(w.witness.cond_prob(&a, &e1).unwrap(), ratio(1, 2));
        assert_eq!(w.witness.cond_prob(&c, &e2).unwrap(), ratio(1, 2));
    }

    /// `P` on `{H, notH}` with prior `P(H)` and `P(H|E) = posterior`; `P(E)`
    /// is the largest value up to 1/2 that keeps every atom non-negative.
    fn prior_posterior(prior: Rational, posterior: Rational) -> ProbAssignment {
        let f = Frame::new(["H", "notH"]).unwrap();
        let one = Rational::one();
        let half = [
            ratio(1, 2),
            &prior / &posterior,
            (&one - &prior) / (&one - &posterior),
        ]
        .into_iter()
        .min()
        .unwrap();
        let h_e = &posterior * &half;
        let h_ne = &prior - &h_e;
        let nh_e = (&one - &posterior) * &half;
        let nh_ne = (&one - &prior) - &nh_e;
        // E is E1 here; E2 is never involved.
        let p = vec![
            h_e,
            Rational::zero(),
            h_ne,
            Rational::zero(),
            nh_e,
            Rational::zero(),
            nh_ne,
            Rational::zero(),
        ];
        ProbAssignment::new(&f, p).unwrap()
    }

    #[test]
    fn confirmation_examples() {
        let f = Frame::new(["H", "notH"]).unwrap();
        let h = Event::elements(&f.singleton(0));
        let e = Event::evidence(&f, CellSet::E1);

        let p = prior_posterior(ratio(1, 2), ratio(1, 2));
        let r = confirmation_ratio(&p, &h, &e).unwrap();
        assert_eq!(r, int(1));
        assert_eq!(classify_confirmation(&r), Confirmation::Irrelevant);

        let p = prior_posterior(ratio(999, 1000), ratio(9, 10));
        let r = confirmation_ratio(&p, &h, &e).unwrap();
        assert_eq!(r, ratio(900, 999));
        assert_eq!(classify_confirmation(&r), Confirmation::Disconfirms);

        let p = prior_posterior(ratio(1, 112), ratio(1, 10));
        let r = confirmation_ratio(&p, &h, &e).unwrap();
        assert_eq!(r, ratio(112, 10));
        assert_eq!(classify_confirmation(&r), Confirmation::Confirms);

        let none = Event::empty(8);
        assert!(confirmation_ratio(&p, &none, &e).is_err());
        assert!(confirmation_ratio(&p, &h, &none).is_err());
    }

    #[test]
    fn agreement_report_on_a_three_block_spec() {
        let f = Frame::new(["a", "b", "c", "d"]).unwrap();
        let blocks = vec![
            f.subset(["a"]).unwrap(),
            f.subset(["b", "d"]).unwrap(),
            f.subset(["c"]).unwrap(),
        ];
        let partition = Partition::new(&f, blocks.clone()).unwrap();
        let m = |w: [i64; 3]| {
            let total: i64 = w.iter().sum();
            MassFunction::new(&f, blocks.iter().cloned().zip(w.map(|x| ratio(x, total)))).unwrap()
        };
        let spec = AgreementSpec::new(partition, m([1, 2, 3]), m([5, 1, 1])).unwrap();
        let query = blocks[0].union(&blocks[1]).unwrap();
        let report = agreement_report(&spec, &query, 50, 3).unwrap();
        assert!(report.blocks_agree);
        assert!(report.minimum_attained);
        let m3 = spec.m1().combine(spec.m2()).unwrap().combined;
        assert_eq!(
            report.constructed_min,
            m3.mass(&blocks[0]).unwrap() + m3.mass(&blocks[1]).unwrap()
        );
        assert_eq!(report.samples, 50);
        assert!(report.sampled_min.unwrap() >= report.constructed_min);
    }

    #[test]
    fn dependent_evidence_breaks_the_point_value() {
        let spec = bipartite_spec(&ratio(9, 10), &ratio(9, 10)).unwrap();
        let d = dependence_divergence(&spec).unwrap();
        assert_eq!(d.dempster, ratio(81, 82));
        assert!(d.range.lo() < &d.dempster && &d.dempster < d.range.hi());
        assert!(d.lo_report.cond_i.passed());
        assert!(d.lo_report.cond_iii.passed());
        assert!(!d.lo_report.cond_ii.passed());
    }
}
