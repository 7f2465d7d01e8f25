//! Trace maps from degree-three sums to third exterior (and symmetric)
//! powers of a Lagrangian, and the determinant pairing between them.
//!
//! Only the colour sector with exactly one a-leaf contributes to the
//! a-side traces; every term there is a caterpillar, is read back into
//! leg order, and is rewritten by sign and exchange moves until its
//! unique a-label sits in the second slot. On the normal form
//! `t(c,a,d,e,f)` the alternating trace is
//!
//! ```text
//! 2 w(a,d) c^e^f + w(a,e) c^d^f - w(a,f) c^d^e
//! ```
//!
//! and the symmetric trace is `w(a,e) cdf - w(a,f) cde`. The composite
//! route (expand, keep words with an a-label first, contract the first
//! two slots, wedge the rest) computes the negative of the alternating
//! formula route; both are exported and the constant is pinned by tests.
//! b-side traces conjugate by the a/b mirror.

use crate::coef::Coef;
use crate::expand::{expand, Word};
use crate::lattice::Vector;
use crate::symplectic::{omega, Label, Side};
use crate::tree::{PlanarTree, TreeSum};
use std::collections::BTreeMap;
use std::fmt;

/// An integer combination of wedge monomials x^y^z (alternating).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WedgeSum {
    terms: BTreeMap<[Label; 3], Coef>,
}

impl WedgeSum {
    pub fn zero() -> WedgeSum {
        WedgeSum::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Label; 3], &Coef)> {
        self.terms.iter()
    }

    pub fn coef(&self, key: &[Label; 3]) -> Coef {
        self.terms.get(key).cloned().unwrap_or(Coef::ZERO)
    }

    /// Adds `coef * x^y^z`, sorting the triple and tracking the sign;
    /// a repeated label contributes nothing.
    pub fn add_wedge(&mut self, coef: &Coef, x: Label, y: Label, z: Label) {
        if coef.is_zero() {
            return;
        }
        let mut tri = [x, y, z];
        if tri[0] == tri[1] || tri[0] == tri[2] || tri[1] == tri[2] {
            return;
        }
        let mut sign = 1i64;
        for i in 0..2 {
            for j in 0..2 - i {
                if tri[j] > tri[j + 1] {
                    tri.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let c = coef.mul_i64(sign);
        let slot = self.terms.entry(tri).or_insert(Coef::ZERO);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&tri);
        }
    }

    pub fn add_assign(&mut self, other: &WedgeSum) {
        for (k, c) in &other.terms {
            let slot = self.terms.entry(*k).or_insert(Coef::ZERO);
            *slot = slot.add(c);
            if slot.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    pub fn scaled(&self, c: &Coef) -> WedgeSum {
        let mut out = WedgeSum::zero();
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(*k, v.mul(c));
        }
        out
    }

    pub fn mirror(&self) -> WedgeSum {
        let mut out = WedgeSum::zero();
        for (k, c) in &self.terms {
            out.add_wedge(c, k[0].mirror(), k[1].mirror(), k[2].mirror());
        }
        out
    }

    /// Conversion to a sparse vector for lattice computations.
    pub fn into_vector(self) -> Vector<[Label; 3]> {
        self.terms
    }
}

impl fmt::Display for WedgeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mono = format!("{}^{}^{}", k[0], k[1], k[2]);
            if i == 0 {
                if c.is_one() {
                    write!(f, "{mono}")?;
                } else if *c == Coef::Small(-1) {
                    write!(f, "-{mono}")?;
                } else {
                    write!(f, "{c} {mono}")?;
                }
            } else if c.signum() < 0 {
                let n = c.neg();
                if n.is_one() {
                    write!(f, " - {mono}")?;
                } else {
                    write!(f, " - {n} {mono}")?;
                }
            } else if c.is_one() {
                write!(f, " + {mono}")?;
            } else {
                write!(f, " + {c} {mono}")?;
            }
        }
        Ok(())
    }
}

/// An integer combination of degree-three symmetric monomials, keyed by
/// the sorted triple (repeats allowed, no sign).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonoSum {
    terms: BTreeMap<[Label; 3], Coef>,
}

impl MonoSum {
    pub fn zero() -> MonoSum {
        MonoSum::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Label; 3], &Coef)> {
        self.terms.iter()
    }

    pub fn coef(&self, key: &[Label; 3]) -> Coef {
        self.terms.get(key).cloned().unwrap_or(Coef::ZERO)
    }

    pub fn add_mono(&mut self, coef: &Coef, x: Label, y: Label, z: Label) {
        if coef.is_zero() {
            return;
        }
        let mut tri = [x, y, z];
        tri.sort();
        let slot = self.terms.entry(tri).or_insert(Coef::ZERO);
        *slot = slot.add(coef);
        if slot.is_zero() {
            self.terms.remove(&tri);
        }
    }
}

/// Slot-two normal forms of a degree-three caterpillar with exactly one
/// a-label: a list of (coefficient, legs) with the a-label second.
fn normal_forms(labels: [Label; 5], coef: Coef, out: &mut Vec<(Coef, [Label; 5])>) {
    let p = labels
        .iter()
        .position(|l| l.side == Side::A)
        .expect("sector has one a-label");
    debug_assert_eq!(labels.iter().filter(|l| l.side == Side::A).count(), 1);
    match p {
        1 => out.push((coef, labels)),
        0 => {
            let mut l = labels;
            l.swap(0, 1);
            normal_forms(l, coef.neg(), out);
        }
        2 => {
            // t(x1,x2,X,d,e) = t(x1,X,x2,d,e) + t(X,x2,x1,d,e)
            let m1 = [labels[0], labels[2], labels[1], labels[3], labels[4]];
            let m2 = [labels[2], labels[1], labels[0], labels[3], labels[4]];
            normal_forms(m1, coef.clone(), out);
            normal_forms(m2, coef, out);
        }
        _ => {
            let mut l = labels;
            l.reverse();
            normal_forms(l, coef.neg(), out);
        }
    }
}

fn for_each_normal_form(s: &TreeSum, mut f: impl FnMut(&Coef, [Label; 5])) {
    for (key, coef) in s.terms() {
        if key.color_weight() != (1, 4) {
            continue;
        }
        let tree = PlanarTree::parse_key(key).expect("stored keys parse");
        let (labels, sign) = tree.read_caterpillar().expect("degree three is a caterpillar");
        let legs: [Label; 5] = labels.try_into().expect("five legs in degree three");
        let mut forms = Vec::new();
        normal_forms(legs, coef.mul_i64(sign.into()), &mut forms);
        for (cf, legs) in forms {
            f(&cf, legs);
        }
    }
}

/// Alternating a-side trace by the closed formula (raw sign, no global
/// flip). Sectors other than one-a vanish by definition.
pub fn tr_a_lambda(s: &TreeSum) -> WedgeSum {
    let mut out = WedgeSum::zero();
    for_each_normal_form(s, |cf, [c, a, d, e, f]| {
        out.add_wedge(&cf.mul_i64(2 * omega(a, d)), c, e, f);
        out.add_wedge(&cf.mul_i64(omega(a, e)), c, d, f);
        out.add_wedge(&cf.mul_i64(-omega(a, f)), c, d, e);
    });
    out
}

/// b-side alternating trace: conjugate by the a/b mirror.
pub fn tr_b_lambda(s: &TreeSum) -> WedgeSum {
    tr_a_lambda(&s.mirror()).mirror()
}

/// Symmetric a-side trace by the closed formula (raw sign).
pub fn tr_a_3(s: &TreeSum) -> MonoSum {
    let mut out = MonoSum::zero();
    for_each_normal_form(s, |cf, [c, a, d, e, f]| {
        out.add_mono(&cf.mul_i64(omega(a, e)), c, d, f);
        out.add_mono(&cf.mul_i64(-omega(a, f)), c, d, e);
    });
    out
}

/// Composite-route alternating trace on a raw tensor vector: keep words
/// whose first letter is an a-label, contract the first two letters with
/// the symplectic form, wedge the remaining three. Computes the negative
/// of [`tr_a_lambda`] on expansions of one-a-sector sums.
pub fn tr_tensor(v: &Vector<Word>) -> WedgeSum {
    let mut out = WedgeSum::zero();
    for (word, c) in v {
        if word.len() != 5 || word[0].side != Side::A {
            continue;
        }
        let w = omega(word[0], word[1]);
        if w != 0 {
            out.add_wedge(&c.mul_i64(w), word[2], word[3], word[4]);
        }
    }
    out
}

/// Composite route applied to a tree sum's one-a sector.
pub fn tr_a_lambda_tensor(s: &TreeSum) -> WedgeSum {
    tr_tensor(&expand(&s.project_color(1, 4)).into_terms())
}

/// Determinant pairing `<x1^x2^x3, y1^y2^y3> = det(w(x_i, y_j))`,
/// extended bilinearly.
pub fn pairing(u: &WedgeSum, v: &WedgeSum) -> Coef {
    let mut total = Coef::ZERO;
    for (xs, cu) in &u.terms {
        for (ys, cv) in &v.terms {
            let det = det3(xs, ys);
            if det != 0 {
                total = total.add(&cu.mul(cv).mul_i64(det));
            }
        }
    }
    total
}

fn det3(xs: &[Label; 3], ys: &[Label; 3]) -> i64 {
    let m = |i: usize, j: usize| omega(xs[i], ys[j]);
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Reads a sum of tripods as a sum of wedges of its legs (the sign
/// relations of tripods match those of wedges, so this is well defined).
pub fn tripod_wedge(s: &TreeSum) -> WedgeSum {
    let mut out = WedgeSum::zero();
    for (key, coef) in s.terms() {
        assert_eq!(key.degree(), 1, "tripods only");
        let tree = PlanarTree::parse_key(key).expect("stored keys parse");
        let (labels, sign) = tree.read_caterpillar().expect("tripods are caterpillars");
        out.add_wedge(&coef.mul_i64(sign.into()), labels[0], labels[1], labels[2]);
    }
    out
}

/// The bilinear functional `(T, T') -> <tr(T), wedge(T')>` pairing the
/// a-side trace of a degree-three sum against an all-a tripod sum.
pub fn lemma41_functional(t: &TreeSum, tripods: &TreeSum) -> Coef {
    pairing(&tr_a_lambda(t), &tripod_wedge(tripods))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{a, b};

    fn t(labels: &[Label]) -> TreeSum {
        TreeSum::caterpillar(labels)
    }

    fn w(c: i64, x: Label, y: Label, z: Label) -> WedgeSum {
        let mut out = WedgeSum::zero();
        out.add_wedge(&Coef::from(c), x, y, z);
        out
    }

    // [[t(b2,b1,b5),t(a5,a1,b6)],t(a6,b3,b4)], the running degree-three
    // example with a four-times wedge trace
    fn t1() -> TreeSum {
        let inner = t(&[b(2), b(1), b(5)]).bracket(&t(&[a(5), a(1), b(6)]));
        inner.bracket(&t(&[a(6), b(3), b(4)]))
    }

    #[test]
    fn wedge_normalisation() {
        let mut s = WedgeSum::zero();
        s.add_wedge(&Coef::ONE, b(3), b(2), b(4));
        assert_eq!(s.coef(&[b(2), b(3), b(4)]), Coef::Small(-1));
        s.add_wedge(&Coef::ONE, b(2), b(3), b(4));
        assert!(s.is_zero());
        s.add_wedge(&Coef::ONE, b(1), b(2), b(1));
        assert!(s.is_zero());
    }

    #[test]
    fn trace_of_running_example() {
        let trace = tr_a_lambda(&t1());
        assert_eq!(trace, w(4, b(2), b(3), b(4)));
    }

    #[test]
    fn tensor_route_is_minus_formula_route() {
        for s in [
            t1(),
            t(&[b(1), b(2), b(4), a(4), b(3)]),
            t(&[b(2), a(1), b(1), b(3), b(4)]),
            t(&[b(5), b(2), a(2), b(1), b(3)]),
        ] {
            let formula = tr_a_lambda(&s);
            let composite = tr_a_lambda_tensor(&s);
            assert_eq!(composite, formula.scaled(&Coef::Small(-1)));
        }
    }

    #[test]
    fn kernel_generator_traces() {
        let kgen = t(&[b(1), b(2), b(4), a(4), b(3)]);
        assert_eq!(tr_a_lambda(&kgen), w(2, b(1), b(2), b(3)));
        let kgen2 = t(&[b(2), a(1), b(1), b(3), b(4)]);
        assert_eq!(tr_a_lambda(&kgen2), w(2, b(2), b(3), b(4)));
    }

    #[test]
    fn other_sectors_vanish() {
        assert!(tr_a_lambda(&t(&[a(1), a(2), b(1), b(3), b(4)])).is_zero());
        assert!(tr_a_lambda(&t(&[b(1), b(2), b(3), b(4), b(5)])).is_zero());
        assert!(tr_a_lambda(&t(&[a(1), b(2), a(3)])).is_zero());
    }

    #[test]
    fn b_side_mirrors_a_side() {
        let s = t(&[a(1), a(2), a(4), b(4), a(3)]);
        assert_eq!(tr_b_lambda(&s), w(2, a(1), a(2), a(3)));
    }

    #[test]
    fn symmetric_trace_vanishes_on_examples() {
        assert!(tr_a_3(&t1()).is_zero());
        assert!(tr_a_3(&t(&[b(1), b(2), b(4), a(4), b(3)])).is_zero());
        assert!(tr_a_3(&t(&[b(2), a(1), b(1), b(3), b(4)])).is_zero());
    }

    #[test]
    fn symmetric_trace_is_not_identically_zero() {
        let s = t(&[b(1), a(1), b(1), b(1), b(2)]);
        let m = tr_a_3(&s);
        assert_eq!(m.coef(&[b(1), b(1), b(2)]), Coef::ONE);
        assert_eq!(m.terms().count(), 1);
    }

    #[test]
    fn pairing_values() {
        assert_eq!(
            pairing(&w(1, b(2), b(3), b(4)), &tripod_wedge(&t(&[a(4), a(3), a(2)]))),
            Coef::ONE
        );
        assert_eq!(
            pairing(&w(1, b(1), b(2), b(3)), &tripod_wedge(&t(&[a(1), a(2), a(3)]))),
            Coef::Small(-1)
        );
    }

    #[test]
    fn functional_values() {
        let t2 = t(&[a(4), a(3), a(2)]).scaled(&Coef::Small(-1));
        assert_eq!(tripod_wedge(&t2), w(1, a(2), a(3), a(4)));
        assert_eq!(lemma41_functional(&t1(), &t2), Coef::from(-4));
        let probe = t(&[b(1), b(2), b(4), a(4), b(3)]);
        let tri = t(&[a(1), a(2), a(3)]);
        assert_eq!(lemma41_functional(&probe, &tri), Coef::from(-2));
    }
}
