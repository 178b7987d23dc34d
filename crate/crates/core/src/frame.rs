//! Frames of discernment, subsets as bit masks, and partitions.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported frame; a subset must fit in one `u64`.
pub const MAX_FRAME_SIZE: usize = 64;

/// A finite, ordered frame of discernment.
///
/// Element indices follow the order the labels were given in. Cloning is
/// cheap (shared storage) and two frames compare equal when their label
/// lists do.
#[derive(Clone)]
pub struct Frame {
    inner: Arc<FrameInner>,
}

struct FrameInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            inner: Arc::new(FrameInner { labels, index }),
        })
    }

    pub fn size(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.inner.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.index.get(label).copied()
    }

    pub fn full_bits(&self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    /// The subset holding exactly the named elements. Repeated names collapse.
    pub fn subset<I, S>(&self, members: I) -> Result<SubsetMask>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u64;
        for name in members {
            let name = name.as_ref();
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))?;
            bits |= 1 << i;
        }
        Ok(SubsetMask::new_unchecked(self.clone(), bits))
    }

    pub fn subset_from_bits(&self, bits: u64) -> Result<SubsetMask> {
        if bits & !self.full_bits() != 0 {
            return Err(Error::MaskOutOfRange(bits));
        }
        Ok(SubsetMask::new_unchecked(self.clone(), bits))
    }

    pub fn empty(&self) -> SubsetMask {
        SubsetMask::new_unchecked(self.clone(), 0)
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::new_unchecked(self.clone(), self.full_bits())
    }

    pub fn singleton(&self, index: usize) -> SubsetMask {
        assert!(index < self.size(), "element index {index} out of range");
        SubsetMask::new_unchecked(self.clone(), 1 << index)
    }

    pub(crate) fn check_same(&self, other: &Frame) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.labels == other.inner.labels
    }
}

impl Eq for Frame {}

impl Hash for Frame {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.labels.hash(state);
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Frame").field(&self.inner.labels).finish()
    }
}

/// A subset of a frame; bit `i` stands for element `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    frame: Frame,
    bits: u64,
}

impl SubsetMask {
    fn new_unchecked(frame: Frame, bits: u64) -> Self {
        Self { frame, bits }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.frame.full_bits()
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 64 && self.bits & (1 << index) != 0
    }

    /// Lowest element index in the subset.
    pub fn lowest(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Element indices in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.frame.size()).filter(move |&i| self.contains(i))
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements().map(|i| self.frame.label(i)).collect()
    }

    pub fn complement(&self) -> SubsetMask {
        Self::new_unchecked(self.frame.clone(), !self.bits & self.frame.full_bits())
    }

    pub fn union(&self, other: &SubsetMask) -> Result<SubsetMask> {
        self.frame.check_same(&other.frame)?;
        Ok(Self::new_unchecked(
            self.frame.clone(),
            self.bits | other.bits,
        ))
    }

    pub fn intersection(&self, other: &SubsetMask) -> Result<SubsetMask> {
        self.frame.check_same(&other.frame)?;
        Ok(Self::new_unchecked(
            self.frame.clone(),
            self.bits & other.bits,
        ))
    }

    pub fn difference(&self, other: &SubsetMask) -> Result<SubsetMask> {
        self.frame.check_same(&other.frame)?;
        Ok(Self::new_unchecked(
            self.frame.clone(),
            self.bits & !other.bits,
        ))
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> Result<bool> {
        self.frame.check_same(&other.frame)?;
        Ok(self.bits & !other.bits == 0)
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits
            .cmp(&other.bits)
            .then_with(|| self.frame.labels().cmp(other.frame.labels()))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetMask({self})")
    }
}

/// True iff the blocks are non-empty, pairwise disjoint and cover the frame.
pub fn is_partition(frame: &Frame, blocks: &[SubsetMask]) -> Result<bool> {
    for b in blocks {
        frame.check_same(b.frame())?;
    }
    Ok(partition_defect(frame, blocks).is_none())
}

fn partition_defect(frame: &Frame, blocks: &[SubsetMask]) -> Option<String> {
    let mut seen = 0u64;
    for (i, b) in blocks.iter().enumerate() {
        if b.is_empty() {
            return Some(format!("block {i} is empty"));
        }
        if seen & b.bits() != 0 {
            let overlap = frame.subset_from_bits(seen & b.bits()).ok()?;
            return Some(format!("block {i} overlaps earlier blocks at {overlap}"));
        }
        seen |= b.bits();
    }
    if seen != frame.full_bits() {
        let missing = frame.subset_from_bits(frame.full_bits() & !seen).ok()?;
        return Some(format!("elements {missing} are not covered"));
    }
    None
}

/// A validated partition of a frame. Block order is kept as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    frame: Frame,
    blocks: Vec<SubsetMask>,
}

impl Partition {
    pub fn new(frame: &Frame, blocks: Vec<SubsetMask>) -> Result<Self> {
        for b in &blocks {
            frame.check_same(b.frame())?;
        }
        if let Some(why) = partition_defect(frame, &blocks) {
            return Err(Error::InvalidPartition(why));
        }
        Ok(Self {
            frame: frame.clone(),
            blocks,
        })
    }

    /// The partition into singletons.
    pub fn singletons(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            blocks: (0..frame.size()).map(|i| frame.singleton(i)).collect(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding element `index`.
    pub fn block_of(&self, index: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Frame {
        Frame::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn frame_construction() {
        assert_eq!(abc().size(), 3);
        assert_eq!(Frame::new(["H", "notH"]).unwrap().size(), 2);
        let big: Vec<String> = (1..=112).map(|i| format!("x{i}")).collect();
        assert_eq!(Frame::new(big).unwrap_err(), Error::FrameTooLarge(112));
        let max: Vec<String> = (0..64).map(|i| format!("x{i}")).collect();
        assert_eq!(Frame::new(max).unwrap().full_bits(), u64::MAX);
        assert_eq!(
            Frame::new(Vec::<String>::new()).unwrap_err(),
            Error::EmptyFrame
        );
        assert_eq!(
            Frame::new(["a", "a"]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(Frame::new(["a", ""]).unwrap_err(), Error::EmptyLabel);
    }

    #[test]
    fn subsets() {
        let f = abc();
        assert_eq!(f.subset(["a", "b"]).unwrap().bits(), 0b011);
        assert!(f.subset(Vec::<&str>::new()).unwrap().is_empty());
        assert_eq!(f.subset(["b", "b"]).unwrap(), f.singleton(1));
        assert_eq!(
            f.subset(["z"]).unwrap_err(),
            Error::UnknownElement("z".into())
        );
        assert_eq!(f.subset(["a", "b", "c"]).unwrap(), f.full());
        assert_eq!(
            f.subset_from_bits(0b1000).unwrap_err(),
            Error::MaskOutOfRange(8)
        );
        assert_eq!(f.subset(["c", "a"]).unwrap().to_string(), "{a,c}");
    }

    #[test]
    fn mixed_frames_are_rejected() {
        let f = abc();
        let g = Frame::new(["a", "b"]).unwrap();
        assert_eq!(f.full().union(&g.full()).unwrap_err(), Error::FrameMismatch);
        assert_eq!(
            is_partition(&f, &[g.full()]).unwrap_err(),
            Error::FrameMismatch
        );
        // Structurally identical frames are interchangeable.
        let f2 = abc();
        assert!(f.full().union(&f2.empty()).is_ok());
    }

    #[test]
    fn partition_checks() {
        let f = abc();
        let s = |m: &[&str]| f.subset(m.iter().copied()).unwrap();
        assert!(is_partition(&f, &[s(&["a"]), s(&["b", "c"])]).unwrap());
        assert!(!is_partition(&f, &[s(&["a", "b"]), s(&["b", "c"])]).unwrap());
        assert!(!is_partition(&f, &[s(&["a"]), s(&["b"])]).unwrap());
        assert!(!is_partition(&f, &[s(&["a", "b", "c"]), s(&[])]).unwrap());
        let p = Partition::new(&f, vec![s(&["b", "c"]), s(&["a"])]).unwrap();
        assert_eq!(p.block_of(0), Some(1));
        assert_eq!(p.block_of(2), Some(0));
        assert!(matches!(
            Partition::new(&f, vec![s(&["a"])]),
            Err(Error::InvalidPartition(_))
        ));
        assert_eq!(Partition::singletons(&f).len(), 3);
    }

    #[test]
    fn frames_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Frame>();
        assert_send_sync::<SubsetMask>();
        assert_send_sync::<Partition>();
    }

    proptest! {
        #[test]
        fn partition_implies_popcount_and_disjointness(
            n in 1usize..10,
            labels in proptest::collection::vec(0usize..4, 10),
            drop_one in any::<bool>(),
        ) {
            let f = Frame::new((0..n).map(|i| format!("e{i}"))).unwrap();
            let mut bits = [0u64; 4];
            for i in 0..n {
                bits[labels[i]] |= 1 << i;
            }
            if drop_one {
                bits[0] = 0;
            }
            let blocks: Vec<_> = bits.iter().map(|&b| f.subset_from_bits(b).unwrap()).collect();
            if is_partition(&f, &blocks).unwrap() {
                let pop: usize = blocks.iter().map(SubsetMask::len).sum();
                prop_assert_eq!(pop, n);
                for i in 0..blocks.len() {
                    for j in i + 1..blocks.len() {
                        prop_assert_eq!(blocks[i].bits() & blocks[j].bits(), 0);
                    }
                }
            }
        }

        #[test]
        fn double_complement_is_identity(n in 1usize..=64, raw in any::<u64>()) {
            let f = Frame::new((0..n).map(|i| format!("e{i}"))).unwrap();
            let a = f.subset_from_bits(raw & f.full_bits()).unwrap();
            prop_assert_eq!(a.complement().complement(), a.clone());
            prop_assert!(a.union(&a.complement()).unwrap().is_full());
        }
    }
}
