//! The built-in amenable groups: free abelian `Z^d`, the infinite dihedral
//! group `D_inf`, and the discrete Heisenberg group `H_3(Z)`.
//!
//! Every element is stored in a unique normal form, so equality and hashing
//! are structural:
//!
//! * `Z^d`: an integer vector.
//! * `D_inf = <z, s | s^2, s z s^-1 = z^-1>`: the pair `(a, flip)` meaning
//!   `z^a s^flip`.
//! * `H_3(Z)`: the triple `(x, y, c)` meaning `x^x y^y z^c` with `z` central,
//!   multiplied by `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + b a')`.
//!
//! The word metric uses the canonical symmetric generating sets
//! `{±e_1, …, ±e_d}`, `{z, z^-1, s}` and `{x^±1, y^±1}`.

mod folner;
mod quotient;

pub use folner::{boundary, folner_set, FolnerSet};
pub(crate) use folner::box_points;
pub use quotient::{quotient, FiniteQuotient};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Radius up to which balls of the nonabelian models are memoized.
pub const MAX_MEMO_RADIUS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    /// Free abelian group of rank `d >= 1`.
    Zd(usize),
    DihedralInfinite,
    Heisenberg,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Zd(Vec<i64>),
    Dihedral { shift: i64, flip: bool },
    Heisenberg { x: i64, y: i64, c: i64 },
}

impl GroupDescriptor {
    pub fn zd(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("Zd requires d >= 1".into()));
        }
        Ok(GroupDescriptor::Zd(d))
    }

    pub fn torsionfree(&self) -> bool {
        !matches!(self, GroupDescriptor::DihedralInfinite)
    }

    /// Whether the subgroup generated by all finite normal subgroups is
    /// trivial. This holds for every built-in model (the reflections of
    /// `D_inf` generate the whole group, which is infinite).
    pub fn trivial_delta_plus(&self) -> bool {
        true
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescriptor::Zd(d) => GroupElement::Zd(vec![0; *d]),
            GroupDescriptor::DihedralInfinite => GroupElement::Dihedral { shift: 0, flip: false },
            GroupDescriptor::Heisenberg => GroupElement::Heisenberg { x: 0, y: 0, c: 0 },
        }
    }

    /// The canonical symmetric generating set.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupDescriptor::Zd(d) => {
                let mut out = Vec::with_capacity(2 * d);
                for i in 0..*d {
                    for sign in [1, -1] {
                        let mut v = vec![0; *d];
                        v[i] = sign;
                        out.push(GroupElement::Zd(v));
                    }
                }
                out
            }
            GroupDescriptor::DihedralInfinite => vec![
                GroupElement::Dihedral { shift: 1, flip: false },
                GroupElement::Dihedral { shift: -1, flip: false },
                GroupElement::Dihedral { shift: 0, flip: true },
            ],
            GroupDescriptor::Heisenberg => vec![
                GroupElement::Heisenberg { x: 1, y: 0, c: 0 },
                GroupElement::Heisenberg { x: -1, y: 0, c: 0 },
                GroupElement::Heisenberg { x: 0, y: 1, c: 0 },
                GroupElement::Heisenberg { x: 0, y: -1, c: 0 },
            ],
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupDescriptor::Zd(d), GroupElement::Zd(v)) => v.len() == *d,
            (GroupDescriptor::DihedralInfinite, GroupElement::Dihedral { .. }) => true,
            (GroupDescriptor::Heisenberg, GroupElement::Heisenberg { .. }) => true,
            _ => false,
        }
    }

    /// Length of the normal-form coordinate array.
    pub fn coordinate_len(&self) -> usize {
        match self {
            GroupDescriptor::Zd(d) => *d,
            GroupDescriptor::DihedralInfinite => 2,
            GroupDescriptor::Heisenberg => 3,
        }
    }

    /// Builds an element from its coordinate array (`[a, b, …]`, `[a, ε]`
    /// or `[x, y, c]`).
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.coordinate_len() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, found {}",
                self.coordinate_len(),
                coords.len()
            )));
        }
        Ok(match self {
            GroupDescriptor::Zd(_) => GroupElement::Zd(coords.to_vec()),
            GroupDescriptor::DihedralInfinite => match coords[1] {
                0 | 1 => GroupElement::Dihedral { shift: coords[0], flip: coords[1] == 1 },
                _ => return Err(Error::InvalidInput("dihedral flip must be 0 or 1".into())),
            },
            GroupDescriptor::Heisenberg => {
                GroupElement::Heisenberg { x: coords[0], y: coords[1], c: coords[2] }
            }
        })
    }

    /// Word length of `g` with respect to the canonical generators.
    pub fn word_length(&self, g: &GroupElement) -> Result<u32> {
        if !self.contains(g) {
            return Err(Error::GroupMismatch);
        }
        match g {
            GroupElement::Zd(v) => Ok(v.iter().map(|c| c.unsigned_abs() as u32).sum()),
            _ => memo_ball(*self)
                .get(g)
                .copied()
                .ok_or(Error::RadiusTooLarge(MAX_MEMO_RADIUS)),
        }
    }

    /// All elements of word length at most `radius`, in normal-form order.
    pub fn ball(&self, radius: u32) -> Result<Vec<GroupElement>> {
        match self {
            GroupDescriptor::Zd(d) => {
                let mut out = Vec::new();
                let mut v = vec![0i64; *d];
                l1_ball(&mut v, 0, radius as i64, &mut out);
                out.sort();
                Ok(out)
            }
            _ => {
                if radius > MAX_MEMO_RADIUS {
                    return Err(Error::RadiusTooLarge(MAX_MEMO_RADIUS));
                }
                let mut out: Vec<_> = memo_ball(*self)
                    .iter()
                    .filter(|(_, &len)| len <= radius)
                    .map(|(g, _)| g.clone())
                    .collect();
                out.sort();
                Ok(out)
            }
        }
    }
}

fn l1_ball(v: &mut Vec<i64>, i: usize, budget: i64, out: &mut Vec<GroupElement>) {
    if i == v.len() {
        out.push(GroupElement::Zd(v.clone()));
        return;
    }
    for c in -budget..=budget {
        v[i] = c;
        l1_ball(v, i + 1, budget - c.abs(), out);
    }
    v[i] = 0;
}

/// Breadth-first search from the identity, cut off at [`MAX_MEMO_RADIUS`].
fn bfs_ball(group: GroupDescriptor) -> HashMap<GroupElement, u32> {
    let gens = group.generators();
    let mut dist = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(group.identity(), 0);
    queue.push_back(group.identity());
    while let Some(g) = queue.pop_front() {
        let d = dist[&g];
        if d == MAX_MEMO_RADIUS {
            continue;
        }
        for s in &gens {
            let h = g.compose(s);
            if !dist.contains_key(&h) {
                dist.insert(h.clone(), d + 1);
                queue.push_back(h);
            }
        }
    }
    dist
}

fn memo_ball(group: GroupDescriptor) -> &'static HashMap<GroupElement, u32> {
    static DIHEDRAL: OnceLock<HashMap<GroupElement, u32>> = OnceLock::new();
    static HEISENBERG: OnceLock<HashMap<GroupElement, u32>> = OnceLock::new();
    match group {
        GroupDescriptor::DihedralInfinite => DIHEDRAL.get_or_init(|| bfs_ball(group)),
        GroupDescriptor::Heisenberg => HEISENBERG.get_or_init(|| bfs_ball(group)),
        GroupDescriptor::Zd(_) => unreachable!("Z^d uses the closed-form l1 norm"),
    }
}

impl GroupElement {
    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            GroupElement::Zd(v) => GroupDescriptor::Zd(v.len()),
            GroupElement::Dihedral { .. } => GroupDescriptor::DihedralInfinite,
            GroupElement::Heisenberg { .. } => GroupDescriptor::Heisenberg,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Zd(v) => v.iter().all(|&c| c == 0),
            GroupElement::Dihedral { shift, flip } => *shift == 0 && !flip,
            GroupElement::Heisenberg { x, y, c } => *x == 0 && *y == 0 && *c == 0,
        }
    }

    /// Normal-form coordinates, the JSON representation.
    pub fn coordinates(&self) -> Vec<i64> {
        match self {
            GroupElement::Zd(v) => v.clone(),
            GroupElement::Dihedral { shift, flip } => vec![*shift, *flip as i64],
            GroupElement::Heisenberg { x, y, c } => vec![*x, *y, *c],
        }
    }

    /// The product `self · other` in normal form.
    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.descriptor() != other.descriptor() {
            return Err(Error::GroupMismatch);
        }
        Ok(self.compose(other))
    }

    /// Product without the descriptor check; callers guarantee a common group.
    pub(crate) fn compose(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Zd(a), GroupElement::Zd(b)) => {
                debug_assert_eq!(a.len(), b.len());
                GroupElement::Zd(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (
                GroupElement::Dihedral { shift: a, flip: e },
                GroupElement::Dihedral { shift: b, flip: f },
            ) => {
                // s z^b = z^-b s
                let b = if *e { -b } else { *b };
                GroupElement::Dihedral { shift: a + b, flip: e ^ f }
            }
            (
                GroupElement::Heisenberg { x: a, y: b, c },
                GroupElement::Heisenberg { x: a2, y: b2, c: c2 },
            ) => GroupElement::Heisenberg { x: a + a2, y: b + b2, c: c + c2 + b * a2 },
            _ => panic!("group mismatch"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Zd(v) => GroupElement::Zd(v.iter().map(|c| -c).collect()),
            GroupElement::Dihedral { shift, flip } => {
                // (z^a s)^-1 = z^a s
                if *flip {
                    self.clone()
                } else {
                    GroupElement::Dihedral { shift: -shift, flip: false }
                }
            }
            GroupElement::Heisenberg { x, y, c } => {
                GroupElement::Heisenberg { x: -x, y: -y, c: x * y - c }
            }
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coordinates())
    }
}

/// The product `g · h`.
pub fn group_mul(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    g.mul(h)
}

/// `d(g, h) = |g^-1 h|`, the left-invariant word metric.
pub fn word_distance(g: &GroupElement, h: &GroupElement) -> Result<u32> {
    if g.descriptor() != h.descriptor() {
        return Err(Error::GroupMismatch);
    }
    g.descriptor().word_length(&g.inverse().compose(h))
}

/// Maximum pairwise word distance within `set`; `0` for sets with fewer than
/// two elements.
pub fn diameter(set: &BTreeSet<GroupElement>) -> Result<u32> {
    let items: Vec<_> = set.iter().collect();
    let mut best = 0;
    for (i, g) in items.iter().enumerate() {
        for h in &items[i + 1..] {
            best = best.max(word_distance(g, h)?);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zd(v: &[i64]) -> GroupElement {
        GroupElement::Zd(v.to_vec())
    }
    fn dih(a: i64, flip: bool) -> GroupElement {
        GroupElement::Dihedral { shift: a, flip }
    }
    fn heis(x: i64, y: i64, c: i64) -> GroupElement {
        GroupElement::Heisenberg { x, y, c }
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(group_mul(&zd(&[1, 2]), &zd(&[3, -1])).unwrap(), zd(&[4, 1]));
        // z^2 s · z^3 = z^2 z^-3 s
        assert_eq!(group_mul(&dih(2, true), &dih(3, false)).unwrap(), dih(-1, true));
        for g in [zd(&[5, -3]), dih(-4, true), heis(2, -7, 11)] {
            let e = g.descriptor().identity();
            assert_eq!(group_mul(&g, &e).unwrap(), g);
            assert_eq!(group_mul(&e, &g).unwrap(), g);
        }
        assert_eq!(group_mul(&zd(&[1]), &zd(&[1, 2])), Err(Error::GroupMismatch));
        assert_eq!(group_mul(&dih(0, true), &heis(0, 0, 0)), Err(Error::GroupMismatch));
    }

    fn random_element(rng: &mut ChaCha8Rng, group: GroupDescriptor) -> GroupElement {
        let mut c = || rng.gen_range(-6i64..=6);
        match group {
            GroupDescriptor::Zd(d) => GroupElement::Zd((0..d).map(|_| c()).collect()),
            GroupDescriptor::DihedralInfinite => dih(c(), c() % 2 == 0),
            GroupDescriptor::Heisenberg => heis(c(), c(), c()),
        }
    }

    #[test]
    fn group_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for group in [GroupDescriptor::Zd(3), GroupDescriptor::DihedralInfinite, GroupDescriptor::Heisenberg] {
            let e = group.identity();
            for _ in 0..1000 {
                let a = random_element(&mut rng, group);
                let b = random_element(&mut rng, group);
                let c = random_element(&mut rng, group);
                assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
                assert_eq!(a.compose(&a.inverse()), e);
                assert_eq!(a.inverse().compose(&a), e);
            }
        }
    }

    #[test]
    fn word_distances() {
        assert_eq!(word_distance(&zd(&[0, 0]), &zd(&[2, -1])).unwrap(), 3);
        assert_eq!(word_distance(&dih(0, false), &dih(0, true)).unwrap(), 1);
        // the central generator is a commutator of length 4
        assert_eq!(word_distance(&heis(0, 0, 0), &heis(0, 0, 1)).unwrap(), 4);
        assert_eq!(
            word_distance(&heis(0, 0, 0), &heis(0, 0, 1000)),
            Err(Error::RadiusTooLarge(MAX_MEMO_RADIUS))
        );
    }

    #[test]
    fn dihedral_bfs_matches_closed_form() {
        // any word reduces to z^a s^e using at least |a| letters z^±1 and,
        // when e = 1, at least one s
        let group = GroupDescriptor::DihedralInfinite;
        for a in -7i64..=7 {
            for flip in [false, true] {
                let len = group.word_length(&dih(a, flip)).unwrap();
                assert_eq!(len as i64, a.abs() + flip as i64);
            }
        }
    }

    #[test]
    fn commutator_is_central_generator() {
        let x = heis(1, 0, 0);
        let y = heis(0, 1, 0);
        let comm = x.inverse().compose(&y.inverse()).compose(&x).compose(&y);
        assert_eq!(comm.coordinates()[..2], [0, 0]);
        assert_eq!(comm.coordinates()[2].abs(), 1);
    }

    #[test]
    fn balls() {
        assert_eq!(GroupDescriptor::Zd(2).ball(1).unwrap().len(), 5);
        assert_eq!(GroupDescriptor::Zd(2).ball(2).unwrap().len(), 13);
        assert_eq!(GroupDescriptor::DihedralInfinite.ball(1).unwrap().len(), 4);
        assert_eq!(GroupDescriptor::Heisenberg.ball(1).unwrap().len(), 5);
        assert!(GroupDescriptor::Heisenberg.ball(9).is_err());
        // ball is closed under inverses
        let ball = GroupDescriptor::Heisenberg.ball(3).unwrap();
        for g in &ball {
            assert!(ball.binary_search(&g.inverse()).is_ok());
        }
    }

    #[test]
    fn metadata() {
        assert!(GroupDescriptor::Zd(2).torsionfree());
        assert!(GroupDescriptor::Heisenberg.torsionfree());
        assert!(!GroupDescriptor::DihedralInfinite.torsionfree());
        assert!(GroupDescriptor::zd(0).is_err());
        assert_eq!(
            GroupDescriptor::DihedralInfinite.element(&[3, 1]).unwrap(),
            dih(3, true)
        );
        assert!(GroupDescriptor::DihedralInfinite.element(&[3, 2]).is_err());
    }
}
