//! Mass functions, Dempster's rule of combination, belief and plausibility.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask};
use crate::rational::{from_f64, Rational};

/// A basic probability assignment over a frame.
///
/// Focal sets are kept in a map keyed by bit mask. Every stored mass is
/// strictly positive and the masses sum to exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassFunction {
    frame: Frame,
    focal: BTreeMap<u64, Rational>,
}

/// The orthogonal sum together with the conflict `K` that was normalized away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinationResult {
    pub combined: MassFunction,
    pub conflict: Rational,
}

impl MassFunction {
    /// Builds a mass function whose masses must sum to exactly one.
    /// Repeated focal sets are merged by adding their masses.
    pub fn new<I>(frame: &Frame, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, Rational)>,
    {
        Self::with_tolerance(frame, assignments, &Rational::zero())
    }

    /// Like [`MassFunction::new`] but accepts a sum within `tolerance` of one
    /// and rescales so the stored masses sum to one exactly.
    pub fn with_tolerance<I>(frame: &Frame, assignments: I, tolerance: &Rational) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, Rational)>,
    {
        let mut focal: BTreeMap<u64, Rational> = BTreeMap::new();
        for (set, mass) in assignments {
            frame.check_same(set.frame())?;
            if set.is_empty() {
                return Err(Error::EmptySetMass);
            }
            if !mass.is_positive() {
                return Err(Error::NonPositiveMass(mass.to_string()));
            }
            *focal.entry(set.bits()).or_insert_with(Rational::zero) += mass;
        }
        let total: Rational = focal.values().sum();
        if (&total - Rational::one()).abs() > *tolerance || total.is_zero() {
            return Err(Error::BadMassSum(total.to_string()));
        }
        if !total.is_one() {
            for m in focal.values_mut() {
                *m /= &total;
            }
        }
        Ok(Self {
            frame: frame.clone(),
            focal,
        })
    }

    /// Float input; each value is read through its shortest decimal form and
    /// the sum may be off from one by at most `1e-9`.
    pub fn from_decimal<I>(frame: &Frame, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, f64)>,
    {
        let exact = assignments
            .into_iter()
            .map(|(s, m)| from_f64(m).map(|m| (s, m)))
            .collect::<Result<Vec<_>>>()?;
        Self::with_tolerance(frame, exact, &decimal_tolerance())
    }

    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            focal: BTreeMap::from([(frame.full_bits(), Rational::one())]),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn num_focal(&self) -> usize {
        self.focal.len()
    }

    /// Focal sets with their masses, ascending by bit mask.
    pub fn focal_sets(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> + '_ {
        self.focal.iter().map(|(&bits, m)| {
            (
                self.frame
                    .subset_from_bits(bits)
                    .expect("focal set in frame"),
                m,
            )
        })
    }

    pub(crate) fn focal_bits(&self) -> impl Iterator<Item = (u64, &Rational)> + '_ {
        self.focal.iter().map(|(&b, m)| (b, m))
    }

    /// `m(A)`, zero when `A` is not focal.
    pub fn mass(&self, set: &SubsetMask) -> Result<Rational> {
        self.frame.check_same(set.frame())?;
        Ok(self
            .focal
            .get(&set.bits())
            .cloned()
            .unwrap_or_else(Rational::zero))
    }

    /// `Bel(A)`: mass on focal sets contained in `A`.
    pub fn belief(&self, set: &SubsetMask) -> Result<Rational> {
        self.frame.check_same(set.frame())?;
        let a = set.bits();
        Ok(self
            .focal
            .iter()
            .filter(|(&b, _)| b & !a == 0)
            .map(|(_, m)| m)
            .sum())
    }

    /// `Pls(A) = 1 - Bel(not A)`: mass on focal sets meeting `A`.
    pub fn plausibility(&self, set: &SubsetMask) -> Result<Rational> {
        Ok(Rational::one() - self.belief(&set.complement())?)
    }

    /// Dempster's rule. Fails with [`Error::TotalConflict`] when every focal
    /// pair has an empty intersection.
    pub fn combine(&self, other: &MassFunction) -> Result<CombinationResult> {
        self.frame.check_same(&other.frame)?;
        let mut joint: BTreeMap<u64, Rational> = BTreeMap::new();
        let mut conflict = Rational::zero();
        for (&a, ma) in &self.focal {
            for (&b, mb) in &other.focal {
                let product = ma * mb;
                match a & b {
                    0 => conflict += product,
                    c => *joint.entry(c).or_insert_with(Rational::zero) += product,
                }
            }
        }
        let normalizer = Rational::one() - &conflict;
        if !normalizer.is_positive() {
            return Err(Error::TotalConflict);
        }
        for m in joint.values_mut() {
            *m /= &normalizer;
        }
        Ok(CombinationResult {
            combined: MassFunction {
                frame: self.frame.clone(),
                focal: joint,
            },
            conflict,
        })
    }
}

/// Dempster's rule; see [`MassFunction::combine`].
pub fn combine(m1: &MassFunction, m2: &MassFunction) -> Result<CombinationResult> {
    m1.combine(m2)
}

pub(crate) fn decimal_tolerance() -> Rational {
    crate::rational::ratio(1, 1_000_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn abc() -> Frame {
        Frame::new(["a", "b", "c"]).unwrap()
    }

    fn mass(f: &Frame, items: &[(&[&str], Rational)]) -> MassFunction {
        MassFunction::new(
            f,
            items
                .iter()
                .map(|(s, m)| (f.subset(s.iter().copied()).unwrap(), m.clone())),
        )
        .unwrap()
    }

    fn overlapping(f: &Frame) -> MassFunction {
        mass(f, &[(&["a", "b"], ratio(1, 2)), (&["b", "c"], ratio(1, 2))])
    }

    #[test]
    fn construction_rules() {
        let f = abc();
        assert_eq!(overlapping(&f).num_focal(), 2);
        assert_eq!(MassFunction::vacuous(&f).mass(&f.full()).unwrap(), int(1));
        let err = MassFunction::new(
            &f,
            [
                (f.subset(["a"]).unwrap(), ratio(3, 5)),
                (f.empty(), ratio(2, 5)),
            ],
        );
        assert_eq!(err.unwrap_err(), Error::EmptySetMass);
        let err = MassFunction::new(&f, [(f.full(), ratio(1, 2))]);
        assert!(matches!(err, Err(Error::BadMassSum(_))));
        let err = MassFunction::new(&f, [(f.full(), int(2)), (f.singleton(0), int(-1))]);
        assert!(matches!(err, Err(Error::NonPositiveMass(_))));
        let merged =
            MassFunction::new(&f, [(f.full(), ratio(1, 4)), (f.full(), ratio(3, 4))]).unwrap();
        assert_eq!(merged.num_focal(), 1);
    }

    #[test]
    fn decimal_input_is_renormalized_exactly() {
        let f = abc();
        let third = 0.333_333_333_3;
        let m = MassFunction::from_decimal(&f, (0..3).map(|i| (f.singleton(i), third))).unwrap();
        assert_eq!(m.mass(&f.singleton(0)).unwrap(), ratio(1, 3));
        let total: Rational = m.focal_sets().map(|(_, m)| m.clone()).sum();
        assert_eq!(total, int(1));
        assert!(MassFunction::from_decimal(&f, [(f.full(), 0.9)]).is_err());
    }

    #[test]
    fn overlapping_focal_sets_combine_onto_the_intersection() {
        let f = abc();
        let m = overlapping(&f);
        let r = m.combine(&m).unwrap();
        assert_eq!(r.conflict, int(0));
        assert_eq!(
            r.combined.mass(&f.subset(["b"]).unwrap()).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            r.combined.mass(&f.subset(["a", "b"]).unwrap()).unwrap(),
            ratio(1, 4)
        );
        assert_eq!(
            r.combined.mass(&f.subset(["b", "c"]).unwrap()).unwrap(),
            ratio(1, 4)
        );
        assert_eq!(
            r.combined.belief(&f.subset(["b"]).unwrap()).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            r.combined.plausibility(&f.subset(["b"]).unwrap()).unwrap(),
            int(1)
        );
        assert_eq!(m.belief(&f.subset(["b"]).unwrap()).unwrap(), int(0));
    }

    #[test]
    fn total_conflict_is_an_error() {
        let f = abc();
        let a = mass(&f, &[(&["a"], int(1))]);
        let b = mass(&f, &[(&["b"], int(1))]);
        assert_eq!(a.combine(&b).unwrap_err(), Error::TotalConflict);
        assert_eq!(a.plausibility(&f.singleton(1)).unwrap(), int(0));
    }

    /// Hand enumeration of the four focal pairs:
    /// {a}&{b}=0 (0.3), {a}&{a,b}={a} (0.3), {a,b}&{b}={b} (0.2),
    /// {a,b}&{a,b}={a,b} (0.2); K = 0.3, divide the rest by 0.7.
    #[test]
    fn partial_conflict_matches_hand_enumeration() {
        let f = Frame::new(["a", "b"]).unwrap();
        let m1 = mass(&f, &[(&["a"], ratio(3, 5)), (&["a", "b"], ratio(2, 5))]);
        let m2 = mass(&f, &[(&["b"], ratio(1, 2)), (&["a", "b"], ratio(1, 2))]);
        let r = combine(&m1, &m2).unwrap();
        assert_eq!(r.conflict, ratio(3, 10));
        assert_eq!(r.combined.mass(&f.singleton(0)).unwrap(), ratio(3, 7));
        assert_eq!(r.combined.mass(&f.singleton(1)).unwrap(), ratio(2, 7));
        assert_eq!(r.combined.mass(&f.full()).unwrap(), ratio(2, 7));
    }

    #[test]
    fn vacuous_behaviour() {
        let f = Frame::new(["a", "b"]).unwrap();
        let v = MassFunction::vacuous(&f);
        assert_eq!(v.belief(&f.singleton(0)).unwrap(), int(0));
        assert_eq!(v.belief(&f.full()).unwrap(), int(1));
        let m = mass(&f, &[(&["a"], ratio(3, 5)), (&["a", "b"], ratio(2, 5))]);
        assert_eq!(v.combine(&m).unwrap().combined, m);
    }

    #[test]
    fn frame_mismatch() {
        let f = abc();
        let g = Frame::new(["x"]).unwrap();
        let m = MassFunction::vacuous(&f);
        assert_eq!(m.belief(&g.full()).unwrap_err(), Error::FrameMismatch);
        assert_eq!(
            m.combine(&MassFunction::vacuous(&g)).unwrap_err(),
            Error::FrameMismatch
        );
    }

    fn arb_mass(n: usize) -> impl Strategy<Value = (Frame, MassFunction)> {
        let full = (1u64 << n) - 1;
        proptest::collection::vec((1..=full, 1i64..20), 1..5).prop_map(move |items| {
            let f = Frame::new((0..n).map(|i| format!("e{i}"))).unwrap();
            let total: i64 = items.iter().map(|(_, w)| w).sum();
            let m = MassFunction::new(
                &f,
                items
                    .iter()
                    .map(|&(b, w)| (f.subset_from_bits(b).unwrap(), ratio(w, total))),
            )
            .unwrap();
            (f, m)
        })
    }

    proptest! {
        #[test]
        fn belief_is_monotone_and_below_plausibility(
            (f, m) in arb_mass(4), a in 0u64..16, b in 0u64..16
        ) {
            let a = f.subset_from_bits(a).unwrap();
            let ab = a.union(&f.subset_from_bits(b).unwrap()).unwrap();
            let bel = m.belief(&a).unwrap();
            let pls = m.plausibility(&a).unwrap();
            prop_assert!(bel >= int(0) && bel <= pls && pls <= int(1));
            prop_assert!(bel <= m.belief(&ab).unwrap());
        }
    }
}
