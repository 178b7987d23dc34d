//! Fixtures shared by the criterion benches.

use dsplogic::{AgreementSpec, Frame, MassFunction, Partition, Rational, Result};

/// `k` singleton blocks with masses proportional to `1..=k` and `k..=1`.
pub fn ramp_spec(k: usize) -> Result<AgreementSpec> {
    let frame = Frame::new((0..k).map(|i| format!("s{i}")))?;
    let total = (k * (k + 1) / 2) as i64;
    let mass = |rev: bool| {
        MassFunction::new(
            &frame,
            (0..k).map(|i| {
                let w = if rev { k - i } else { i + 1 } as i64;
                (frame.singleton(i), dsplogic::ratio(w, total))
            }),
        )
    };
    AgreementSpec::new(Partition::singletons(&frame), mass(false)?, mass(true)?)
}

/// A mass function on `n` elements with one focal set per window of three
/// consecutive elements.
pub fn sliding_mass(n: usize) -> Result<MassFunction> {
    let frame = Frame::new((0..n).map(|i| format!("e{i}")))?;
    let windows = n.saturating_sub(2).max(1);
    let share: Rational = dsplogic::ratio(1, windows as i64);
    MassFunction::new(
        &frame,
        (0..windows).map(|i| {
            let bits = (0b111u64 << i) & frame.full_bits();
            (
                frame.subset_from_bits(bits).expect("in range"),
                share.clone(),
            )
        }),
    )
}
