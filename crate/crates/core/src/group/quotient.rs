use super::folner::box_points;
use super::{FolnerSet, GroupDescriptor, GroupElement};
use crate::error::{Error, Result};

/// The finite quotient `G / G_n` of a built-in residual chain, with the
/// fundamental domain `Q_n` and the right action of each canonical generator
/// on cosets materialized as permutation tables.
///
/// The chains are `(nZ)^d` in `Z^d`, `<z^n>` in `D_inf` and the kernel of
/// reduction mod `n` in `H_3(Z)`. Each is normal, and `G_m ⊇ G_n` whenever
/// `m | n`.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    group: GroupDescriptor,
    level: usize,
    domain: FolnerSet,
    actions: Vec<Vec<usize>>,
}

pub fn quotient(group: GroupDescriptor, level: usize) -> Result<FiniteQuotient> {
    if level == 0 {
        return Err(Error::InvalidInput("quotient level must be >= 1".into()));
    }
    let n = level as i64;
    let reps: Vec<GroupElement> = match group {
        GroupDescriptor::Zd(d) => box_points(&vec![n; d]).into_iter().map(GroupElement::Zd).collect(),
        GroupDescriptor::DihedralInfinite => (0..n)
            .flat_map(|a| [false, true].map(|flip| GroupElement::Dihedral { shift: a, flip }))
            .collect(),
        GroupDescriptor::Heisenberg => box_points(&[n, n, n])
            .into_iter()
            .map(|v| GroupElement::Heisenberg { x: v[0], y: v[1], c: v[2] })
            .collect(),
    };
    let domain = FolnerSet::new(group, level, reps)?;
    let mut q = FiniteQuotient { group, level, domain, actions: Vec::new() };
    q.actions = group
        .generators()
        .iter()
        .map(|s| q.domain.elements().iter().map(|g| q.coset_of(&g.compose(s))).collect())
        .collect();
    Ok(q)
}

impl FiniteQuotient {
    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `[G : G_n]`.
    pub fn index(&self) -> usize {
        self.domain.len()
    }

    /// The fundamental domain `Q_n`, ordered; its order is the coset basis.
    pub fn fundamental_domain(&self) -> &FolnerSet {
        &self.domain
    }

    pub fn representative(&self, coset: usize) -> &GroupElement {
        &self.domain.elements()[coset]
    }

    /// Index of the coset `g G_n`, i.e. the position of its representative
    /// in the fundamental domain.
    pub fn coset_of(&self, g: &GroupElement) -> usize {
        let n = self.level as i64;
        let r = |c: i64| c.rem_euclid(n) as usize;
        match g {
            GroupElement::Zd(v) => v.iter().fold(0, |acc, &c| acc * self.level + r(c)),
            GroupElement::Dihedral { shift, flip } => 2 * r(*shift) + *flip as usize,
            GroupElement::Heisenberg { x, y, c } => (r(*x) * self.level + r(*y)) * self.level + r(*c),
        }
    }

    /// Coset reached from `coset` by right multiplication with the
    /// `generator`-th canonical generator.
    pub fn act(&self, coset: usize, generator: usize) -> usize {
        self.actions[generator][coset]
    }

    pub fn action_tables(&self) -> &[Vec<usize>] {
        &self.actions
    }
}
