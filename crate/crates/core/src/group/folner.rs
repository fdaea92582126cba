use std::collections::{BTreeSet, HashMap};

use super::{GroupDescriptor, GroupElement};
use crate::error::{Error, Result};

/// A finite subset of a group with a fixed (normal-form lexicographic)
/// ordering, used as a basis for truncated and quotient matrices.
#[derive(Clone, Debug)]
pub struct FolnerSet {
    group: GroupDescriptor,
    level: usize,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl FolnerSet {
    /// Sorts and deduplicates `elements`; rejects empty sets and foreign
    /// elements.
    pub fn new(group: GroupDescriptor, level: usize, mut elements: Vec<GroupElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidInput("a Foelner set must be nonempty".into()));
        }
        if elements.iter().any(|g| !group.contains(g)) {
            return Err(Error::GroupMismatch);
        }
        elements.sort();
        elements.dedup();
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Ok(FolnerSet { group, level, elements, index })
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// Position of `g` in the ordering, if present.
    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }
}

/// The `n`-th set of the built-in Foelner sequence: the box `[0, n)^d` for
/// `Z^d`, `{z^a s^e : 0 <= a < n}` for `D_inf`, and the anisotropic box
/// `[0, n) x [0, n) x [0, n^2)` for `H_3(Z)`.
pub fn folner_set(group: GroupDescriptor, n: usize) -> Result<FolnerSet> {
    if n == 0 {
        return Err(Error::InvalidInput("Foelner level must be >= 1".into()));
    }
    let n64 = n as i64;
    let elements = match group {
        GroupDescriptor::Zd(d) => box_points(&vec![n64; d]).into_iter().map(GroupElement::Zd).collect(),
        GroupDescriptor::DihedralInfinite => (0..n64)
            .flat_map(|a| [false, true].map(|flip| GroupElement::Dihedral { shift: a, flip }))
            .collect(),
        GroupDescriptor::Heisenberg => box_points(&[n64, n64, n64 * n64])
            .into_iter()
            .map(|v| GroupElement::Heisenberg { x: v[0], y: v[1], c: v[2] })
            .collect(),
    };
    FolnerSet::new(group, n, elements)
}

/// All integer points of `[0, dims[0]) x … x [0, dims[k-1])` in
/// lexicographic order.
pub(crate) fn box_points(dims: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &n in dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// The `R`-boundary `{g : d(g, F) <= R and d(g, G \ F) <= R}`.
///
/// Candidates are the right translates `f · b` with `|b| <= R`, which is
/// exactly the closed `R`-neighbourhood of `F` under the left-invariant word
/// metric.
pub fn boundary(set: &FolnerSet, radius: u32) -> Result<BTreeSet<GroupElement>> {
    let ball = set.group.ball(radius)?;
    let mut neighbourhood = BTreeSet::new();
    for f in set.elements() {
        for b in &ball {
            neighbourhood.insert(f.compose(b));
        }
    }
    Ok(neighbourhood
        .into_iter()
        .filter(|g| !set.contains(g) || ball.iter().any(|b| !set.contains(&g.compose(b))))
        .collect())
}
