use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{GroupRingElement, GroupRingMatrix};
use crate::error::{Error, Result};
use crate::group::{box_points, diameter, FiniteQuotient, FolnerSet, GroupDescriptor, GroupElement};
use crate::rank::PlainMatrix;

/// Diameter of `supp(A) ∪ supp(A)^-1` in the word metric; `0` for the zero
/// matrix.
pub fn support_radius(a: &GroupRingMatrix) -> Result<u32> {
    let support = a.support();
    let both: BTreeSet<GroupElement> = support.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    diameter(&both)
}

fn check_group(a: &GroupRingMatrix, group: GroupDescriptor) -> Result<()> {
    if a.group() == group {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// Matrix of `k[G/G_n] ⊗ r_A` in the coset basis: row `i·N + q`, column
/// `j·N + coset(q h)` collects the coefficient of `h` in `A_ij`.
pub fn induce_to_quotient(a: &GroupRingMatrix, q: &FiniteQuotient) -> Result<PlainMatrix> {
    check_group(a, q.group())?;
    let n = q.index();
    let reps = q.fundamental_domain().elements();
    let mut out = PlainMatrix::zeros(a.field(), a.rows() * n, a.cols() * n);
    for (i, j, entry) in a.entries() {
        for (h, c) in entry.terms() {
            for (k, rep) in reps.iter().enumerate() {
                out.accumulate(i * n + k, j * n + q.coset_of(&rep.compose(h)), c)?;
            }
        }
    }
    Ok(out)
}

/// Matrix of `pr[F] ∘ r_A ∘ j[F]` in the ordered basis `F`: as
/// [`induce_to_quotient`], but translates leaving `F` are dropped.
pub fn compress_to_folner(a: &GroupRingMatrix, f: &FolnerSet) -> Result<PlainMatrix> {
    check_group(a, f.group())?;
    let n = f.len();
    let mut out = PlainMatrix::zeros(a.field(), a.rows() * n, a.cols() * n);
    for (i, j, entry) in a.entries() {
        for (h, c) in entry.terms() {
            for (k, g) in f.elements().iter().enumerate() {
                if let Some(t) = f.position(&g.compose(h)) {
                    out.accumulate(i * n + k, j * n + t, c)?;
                }
            }
        }
    }
    Ok(out)
}

/// A built-in finite-index subgroup `H ≅ Z^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Subgroup {
    /// `<z> ≅ Z` in `D_inf`, transversal `{e, s}`.
    Rotations,
    /// `(nZ)^d` in `Z^d`, identified with `Z^d` via `w_i = z_i^n`;
    /// transversal the box `[0, n)^d`.
    Scaled { n: usize },
}

impl Subgroup {
    /// The subgroup used when none is specified: `<z>` in `D_inf` and `Z^d`
    /// itself in `Z^d`.
    pub fn default_for(group: GroupDescriptor) -> Result<Self> {
        match group {
            GroupDescriptor::DihedralInfinite => Ok(Subgroup::Rotations),
            GroupDescriptor::Zd(_) => Ok(Subgroup::Scaled { n: 1 }),
            GroupDescriptor::Heisenberg => Err(unsupported(group, None)),
        }
    }

    /// `H` as an abstract group.
    pub fn as_group(&self, ambient: GroupDescriptor) -> Result<GroupDescriptor> {
        match (self, ambient) {
            (Subgroup::Rotations, GroupDescriptor::DihedralInfinite) => Ok(GroupDescriptor::Zd(1)),
            (Subgroup::Scaled { n }, GroupDescriptor::Zd(d)) if *n >= 1 => Ok(GroupDescriptor::Zd(d)),
            _ => Err(unsupported(ambient, Some(*self))),
        }
    }

    /// The coset representatives `t_1, …, t_m` with `G = ⊔ H t_l`.
    pub fn representatives(&self, ambient: GroupDescriptor) -> Result<Vec<GroupElement>> {
        self.as_group(ambient)?;
        Ok(match (self, ambient) {
            (Subgroup::Rotations, _) => {
                vec![GroupElement::Dihedral { shift: 0, flip: false }, GroupElement::Dihedral { shift: 0, flip: true }]
            }
            (Subgroup::Scaled { n }, GroupDescriptor::Zd(d)) => {
                box_points(&vec![*n as i64; d]).into_iter().map(GroupElement::Zd).collect()
            }
            _ => unreachable!("checked by as_group"),
        })
    }

    /// `[G : H]`.
    pub fn index(&self, ambient: GroupDescriptor) -> Result<usize> {
        Ok(self.representatives(ambient)?.len())
    }

    /// Writes `g = h · t_l`, returning `h` as an element of `Z^d` and `l`.
    fn split(&self, g: &GroupElement) -> (GroupElement, usize) {
        match (self, g) {
            (Subgroup::Rotations, GroupElement::Dihedral { shift, flip }) => {
                (GroupElement::Zd(vec![*shift]), *flip as usize)
            }
            (Subgroup::Scaled { n }, GroupElement::Zd(v)) => {
                let n = *n as i64;
                let h = v.iter().map(|c| c.div_euclid(n)).collect();
                let t = v.iter().fold(0usize, |acc, c| acc * n as usize + c.rem_euclid(n) as usize);
                (GroupElement::Zd(h), t)
            }
            _ => unreachable!("checked by as_group"),
        }
    }
}

fn unsupported(group: GroupDescriptor, h: Option<Subgroup>) -> Error {
    let what = h.map_or_else(|| "a built-in subgroup".to_string(), |h| format!("{h:?}"));
    Error::Unsupported(format!(
        "restriction to {what} is not available for {group:?}; supported pairs are (Dinf, rotations) and (Zd, scaled)"
    ))
}

/// Restriction of scalars along `H ⊂ G`: the entry `a` of `A` becomes the
/// `m x m` matrix over `k[H]` of right multiplication by `a` in the left
/// `k[H]`-basis `t_1, …, t_m`, i.e. block entry `(k, l)` is the `b_kl` with
/// `t_k a = Σ_l b_kl t_l`.
pub fn restrict_scalars(a: &GroupRingMatrix, h: Subgroup) -> Result<GroupRingMatrix> {
    let group = a.group();
    let target = h.as_group(group)?;
    let reps = h.representatives(group)?;
    let m = reps.len();
    let mut out = GroupRingMatrix::zeros(a.field(), target, a.rows() * m, a.cols() * m);
    for (i, j, entry) in a.entries() {
        for (k, t) in reps.iter().enumerate() {
            let mut block: Vec<GroupRingElement> = vec![GroupRingElement::zero(a.field(), target); m];
            for (g, c) in entry.terms() {
                let (hpart, l) = h.split(&t.compose(g));
                block[l].add_term(hpart, c.clone())?;
            }
            for (l, b) in block.into_iter().enumerate() {
                out.set(i * m + k, j * m + l, b)?;
            }
        }
    }
    Ok(out)
}
