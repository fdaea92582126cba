//! Seeded generators of group-ring elements and matrices.

use rand::Rng;

use crate::group::{GroupDescriptor, GroupElement};
use crate::ring::{GroupRingElement, GroupRingMatrix};
use crate::scalar::{FieldDescriptor, Scalar};

/// Shape of random group-ring entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntrySpec {
    /// Each coordinate is drawn from `low..=high`.
    pub low: i64,
    pub high: i64,
    /// Terms per nonzero entry are drawn from `1..=max_terms` (coinciding
    /// terms may merge or cancel).
    pub max_terms: usize,
    /// Probability that an entry is nonzero.
    pub density: f64,
}

impl Default for EntrySpec {
    fn default() -> Self {
        EntrySpec { low: -1, high: 1, max_terms: 3, density: 0.7 }
    }
}

pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldDescriptor) -> Scalar {
    match field.modulus() {
        Some(p) => Scalar::from_i64(field, rng.gen_range(1..p as i64)),
        None => {
            let v = rng.gen_range(1..=3);
            Scalar::from_i64(field, if rng.gen_bool(0.5) { v } else { -v })
        }
    }
}

pub fn random_group_element<R: Rng + ?Sized>(rng: &mut R, group: GroupDescriptor, low: i64, high: i64) -> GroupElement {
    let mut c = || rng.gen_range(low..=high);
    match group {
        GroupDescriptor::Zd(d) => GroupElement::Zd((0..d).map(|_| c()).collect()),
        GroupDescriptor::DihedralInfinite => {
            let shift = c();
            GroupElement::Dihedral { shift, flip: rng.gen_bool(0.5) }
        }
        GroupDescriptor::Heisenberg => {
            let (x, y, z) = (c(), c(), c());
            GroupElement::Heisenberg { x, y, c: z }
        }
    }
}

pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldDescriptor,
    group: GroupDescriptor,
    spec: &EntrySpec,
) -> GroupRingElement {
    let mut out = GroupRingElement::zero(field, group);
    for _ in 0..rng.gen_range(1..=spec.max_terms.max(1)) {
        let g = random_group_element(rng, group, spec.low, spec.high);
        let c = random_scalar(rng, field);
        out.add_term(g, c).expect("descriptors agree");
    }
    out
}

pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldDescriptor,
    group: GroupDescriptor,
    rows: usize,
    cols: usize,
    spec: &EntrySpec,
) -> GroupRingMatrix {
    let mut m = GroupRingMatrix::zeros(field, group, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(spec.density) {
                m.set(i, j, random_element(rng, field, group, spec)).expect("in range");
            }
        }
    }
    m
}
