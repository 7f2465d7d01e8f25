//! Tensor expansion of trees and the rational equality oracle.
//!
//! Rooting a tree at a leaf turns it into an iterated Lie bracket of the
//! remaining leaf labels: entering a trivalent vertex whose two remaining
//! ports are (q, r) in cyclic order yields the commutator [lie(r), lie(q)],
//! expanded into signed tensor words. The expansion of a degree-k tree is
//!
//!   eta(T) = sum over leaves x of  label(x) (x) lie(T rooted at x),
//!
//! a vector in the (k+2)-fold tensor power of H with (k+2) * 2^k terms.
//!
//! Expansion kills the AS and IHX relations exactly, so two tree sums are
//! equal in the tree Lie algebra over the integers if and only if their
//! expansions agree. IHX is deliberately not implemented as a rewriting
//! system; all equality-modulo-relations questions delegate to this
//! oracle. Relabelling the root back (the Lab map) recovers (k+2) copies
//! of the tree, which pins the normalisation of eta.

use crate::coef::Coef;
use crate::symplectic::Label;
use crate::tree::{PlanarTree, Port, TreeSum};
use std::collections::BTreeMap;
use std::fmt;

/// A basis tensor word: an ordered tuple of labels.
pub type Word = Vec<Label>;

/// A sparse integer vector in a tensor power of H.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorVec {
    terms: BTreeMap<Word, Coef>,
}

impl TensorVec {
    pub fn zero() -> TensorVec {
        TensorVec::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coef)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Coef> {
        self.terms
    }

    pub fn add_word(&mut self, word: Word, coef: Coef) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let next = o.get().add(&coef);
                if next.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = next;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &TensorVec) {
        for (w, c) in &other.terms {
            self.add_word(w.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &TensorVec) {
        for (w, c) in &other.terms {
            self.add_word(w.clone(), c.neg());
        }
    }

    pub fn scaled(&self, c: &Coef) -> TensorVec {
        if c.is_zero() {
            return TensorVec::zero();
        }
        let terms = self.terms.iter().map(|(w, v)| (w.clone(), v.mul(c))).collect();
        TensorVec { terms }
    }
}

impl fmt::Display for TensorVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let word: Vec<String> = w.iter().map(|l| l.to_string()).collect();
            if first {
                write!(f, "{c} {}", word.join("."))?;
                first = false;
            } else {
                write!(f, " + {c} {}", word.join("."))?;
            }
        }
        Ok(())
    }
}

/// A tree with one distinguished leaf whose label is discarded.
#[derive(Debug, Clone)]
pub struct RootedTree {
    tree: PlanarTree,
    root_vert: usize,
    root_slot: usize,
}

impl RootedTree {
    /// Signed tensor words of the iterated bracket below the root.
    pub fn lie_words(&self) -> Vec<(i64, Word)> {
        lie_words_at(&self.tree, self.root_vert, self.root_slot)
    }

    /// The Lab map: put a label back on the root leaf.
    pub fn labelled(&self, label: Label) -> PlanarTree {
        let mut verts: Vec<[Port; 3]> = self.tree.verts().to_vec();
        verts[self.root_vert][self.root_slot] = Port::Leaf(label);
        PlanarTree::from_verts(verts)
    }
}

fn lie_words_at(tree: &PlanarTree, v: usize, in_slot: usize) -> Vec<(i64, Word)> {
    let verts = tree.verts();
    let sub = |p: Port| -> Vec<(i64, Word)> {
        match p {
            Port::Leaf(l) => vec![(1, vec![l])],
            Port::Inner(w) => {
                let w = w as usize;
                let back = (0..3)
                    .find(|&s| verts[w][s] == Port::Inner(v as u8))
                    .expect("inner ports are mutual");
                lie_words_at(tree, w, back)
            }
        }
    };
    let qs = sub(verts[v][(in_slot + 1) % 3]);
    let rs = sub(verts[v][(in_slot + 2) % 3]);
    let mut out = Vec::with_capacity(2 * qs.len() * rs.len());
    for (cr, wr) in &rs {
        for (cq, wq) in &qs {
            let mut rq = Vec::with_capacity(wr.len() + wq.len());
            rq.extend_from_slice(wr);
            rq.extend_from_slice(wq);
            out.push((cr * cq, rq));
            let mut qr = Vec::with_capacity(wr.len() + wq.len());
            qr.extend_from_slice(wq);
            qr.extend_from_slice(wr);
            out.push((-cr * cq, qr));
        }
    }
    out
}

/// One (leaf label, rooted tree) pair per leaf.
pub fn eta_terms(tree: &PlanarTree) -> Vec<(Label, RootedTree)> {
    tree.leaves()
        .into_iter()
        .map(|(vi, si, l)| {
            (
                l,
                RootedTree {
                    tree: tree.clone(),
                    root_vert: vi,
                    root_slot: si,
                },
            )
        })
        .collect()
}

/// Expansion of a single planar tree with a coefficient.
pub fn expand_planar(tree: &PlanarTree, coef: &Coef, out: &mut TensorVec) {
    for (label, rooted) in eta_terms(tree) {
        for (sign, word) in rooted.lie_words() {
            let mut full = Vec::with_capacity(word.len() + 1);
            full.push(label);
            full.extend_from_slice(&word);
            out.add_word(full, coef.mul_i64(sign));
        }
    }
}

/// Expansion of a tree sum.
pub fn expand(sum: &TreeSum) -> TensorVec {
    let mut out = TensorVec::zero();
    for (key, coef) in sum.terms() {
        let tree = PlanarTree::parse_key(key).expect("stored keys parse");
        expand_planar(&tree, coef, &mut out);
    }
    out
}

/// Equality in the tree Lie algebra over the integers, i.e. modulo the
/// AS and IHX relations.
pub fn eq_rational(lhs: &TreeSum, rhs: &TreeSum) -> bool {
    expand(lhs) == expand(rhs)
}

pub fn is_zero_rational(sum: &TreeSum) -> bool {
    expand(sum).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{a, b};

    fn t(labels: &[Label]) -> TreeSum {
        TreeSum::caterpillar(labels)
    }

    #[test]
    fn tripod_expansion_has_six_signed_terms() {
        let e = expand(&t(&[a(1), b(2), a(3)]));
        assert_eq!(e.len(), 6);
        // the a1 (x) [a3, b2] block: rooting at a1 leaves children (b2, a3)
        let coef = |w: &[Label]| {
            e.terms()
                .find(|(word, _)| word.as_slice() == w)
                .map(|(_, c)| c.clone())
                .unwrap_or(Coef::ZERO)
        };
        assert_eq!(coef(&[a(1), a(3), b(2)]), Coef::ONE);
        assert_eq!(coef(&[a(1), b(2), a(3)]), Coef::Small(-1));
    }

    #[test]
    fn term_count_matches_degree_formula() {
        for labels in [
            vec![a(1), b(2), a(3)],
            vec![a(1), b(2), a(3), b(4)],
            vec![a(1), b(2), a(3), b(4), a(5)],
        ] {
            let k = labels.len() - 2;
            let e = expand(&t(&labels));
            assert_eq!(e.len(), (k + 2) * (1 << k));
        }
    }

    #[test]
    fn ihx_holds_rationally_but_not_symbolically() {
        let lhs = t(&[a(1), b(2), a(3), b(4)]);
        let rhs = TreeSum::sum(&[
            &t(&[a(1), a(3), b(2), b(4)]),
            &t(&[a(3), b(2), a(1), b(4)]),
        ]);
        assert_ne!(lhs, rhs);
        assert!(eq_rational(&lhs, &rhs));
    }

    #[test]
    fn degree_three_ihx_both_positions() {
        let base = t(&[a(1), b(2), a(3), b(4), a(5)]);
        let first = TreeSum::sum(&[
            &t(&[a(1), a(3), b(2), b(4), a(5)]),
            &t(&[a(3), b(2), a(1), b(4), a(5)]),
        ]);
        let last = TreeSum::sum(&[
            &t(&[a(1), b(2), b(4), a(3), a(5)]),
            &t(&[a(1), b(2), a(5), b(4), a(3)]),
        ]);
        assert!(eq_rational(&base, &first));
        assert!(eq_rational(&base, &last));
    }

    #[test]
    fn lab_eta_is_degree_plus_two() {
        for labels in [
            vec![a(1), b(2), a(3)],
            vec![a(2), a(1), b(1), a(4)],
            vec![b(1), b(2), b(4), a(4), b(3)],
        ] {
            let tree = PlanarTree::caterpillar(&labels);
            let mut total = TreeSum::zero();
            for (label, rooted) in eta_terms(&tree) {
                total.add_planar(&rooted.labelled(label), &Coef::ONE);
            }
            let k = labels.len() - 2;
            let expected = t(&labels).scaled(&Coef::from((k + 2) as i64));
            assert_eq!(total, expected);
        }
    }

    #[test]
    fn degenerate_tree_expands_to_zero() {
        let mut e = TensorVec::zero();
        expand_planar(
            &PlanarTree::caterpillar(&[a(1), b(2), a(1)]),
            &Coef::ONE,
            &mut e,
        );
        assert!(e.is_zero());
        let mut p = TensorVec::zero();
        expand_planar(
            &PlanarTree::caterpillar(&[a(1), a(2), a(1), a(2), a(1)]),
            &Coef::ONE,
            &mut p,
        );
        assert!(p.is_zero());
    }

    #[test]
    fn antisymmetry_of_bracket_rationally() {
        let s = t(&[a(1), b(2), a(3)]);
        let u = t(&[b(1), a(2), b(3)]);
        let mut sum = s.bracket(&u);
        sum.add_assign(&u.bracket(&s));
        assert!(is_zero_rational(&sum));
    }

    #[test]
    fn jacobi_rationally() {
        let x = t(&[a(1), b(2), a(3)]);
        let y = t(&[b(1), a(2), b(3)]);
        let z = t(&[a(2), b(3), a(1)]);
        let mut sum = x.bracket(&y).bracket(&z);
        sum.add_assign(&z.bracket(&x).bracket(&y));
        sum.add_assign(&y.bracket(&z).bracket(&x));
        assert!(is_zero_rational(&sum));
    }
}
