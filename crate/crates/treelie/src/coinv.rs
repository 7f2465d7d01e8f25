//! Tensor-power coinvariants under the integer substitution action.
//!
//! For genus g the 2g basis labels span the coefficient module, and its
//! n-th tensor power carries the diagonal action of the substitutions
//! generated by transvections and index swaps. The coinvariant group is
//! the quotient of the free module on length-n basis words by the
//! lattice spanned by G w - w over all generators G and words w. Its
//! isomorphism type is a free rank together with the list of nontrivial
//! invariant factors of the torsion part.

use crate::coef::Coef;
use crate::expand::{TensorVec, Word};
use crate::gl::GlMap;
use crate::lattice::{smith_diagonal, Lattice, Vector};
use crate::symplectic::{a, b, Label};
use std::collections::BTreeSet;

/// Isomorphism data for one coinvariant group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinvResult {
    /// Rank of the ambient module of basis words, (2g)^n.
    pub dim: usize,
    /// Rank of the free part of the quotient.
    pub free_rank: usize,
    /// Invariant factors bigger than one, in divisibility order.
    pub torsion: Vec<Coef>,
}

impl CoinvResult {
    /// True when the group is zero.
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// The generating substitutions for one genus: both signs of every
/// transvection on distinct indices plus the adjacent index swaps.
pub fn generators(g: u32) -> Vec<GlMap> {
    let mut gens = Vec::new();
    for i in 1..=g {
        for j in 1..=g {
            if i == j {
                continue;
            }
            gens.push(GlMap::transvection(i, j, 1).expect("distinct indices"));
            gens.push(GlMap::transvection(i, j, -1).expect("distinct indices"));
        }
    }
    for i in 1..g {
        gens.push(GlMap::permutation(&[(i, i + 1), (i + 1, i)]).expect("adjacent swap"));
    }
    gens
}

/// The relation vector G w - w as a sparse integer vector.
pub fn relation(gmap: &GlMap, word: &Word) -> Vector<Word> {
    let mut single = TensorVec::zero();
    single.add_word(word.clone(), Coef::ONE);
    let mut rel = gmap.apply_tensor(&single);
    rel.add_word(word.clone(), Coef::ONE.neg());
    rel.into_terms()
}

/// Computes the coinvariants of the n-th tensor power at genus g.
pub fn coinvariants(n: usize, g: u32) -> CoinvResult {
    let mut letters: Vec<Label> = Vec::new();
    for i in 1..=g {
        letters.push(a(i));
    }
    for i in 1..=g {
        letters.push(b(i));
    }
    if letters.is_empty() && n > 0 {
        return CoinvResult { dim: 0, free_rank: 0, torsion: Vec::new() };
    }
    let dim = letters.len().pow(n as u32);
    let gens = generators(g);
    let mut relations: Lattice<Word> = Lattice::new();
    let mut pick = vec![0usize; n];
    'words: loop {
        let word: Word = pick.iter().map(|&t| letters[t]).collect();
        for gmap in &gens {
            let rel = relation(gmap, &word);
            if !rel.is_empty() {
                relations.insert(rel);
            }
        }
        let mut t = 0;
        loop {
            if t == pick.len() {
                break 'words;
            }
            pick[t] += 1;
            if pick[t] < letters.len() {
                break;
            }
            pick[t] = 0;
            t += 1;
        }
    }
    let free_rank = dim - relations.rank();
    let cols: BTreeSet<&Word> = relations.basis().flat_map(|v| v.keys()).collect();
    let rows: Vec<Vec<Coef>> = relations
        .basis()
        .map(|v| cols.iter().map(|k| v.get(*k).cloned().unwrap_or(Coef::ZERO)).collect())
        .collect();
    let torsion =
        smith_diagonal(rows).into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    CoinvResult { dim, free_rank, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(n: usize, g: u32) -> (usize, usize, Vec<i64>) {
        let r = coinvariants(n, g);
        let torsion = r.torsion.iter().map(|d| d.as_i64().unwrap()).collect();
        (r.dim, r.free_rank, torsion)
    }

    #[test]
    fn single_tensor_factor_vanishes() {
        assert_eq!(result(1, 2), (4, 0, vec![]));
        assert_eq!(result(1, 3), (6, 0, vec![]));
    }

    #[test]
    fn square_at_genus_two_has_two_torsion() {
        assert_eq!(result(2, 2), (16, 2, vec![2, 2]));
    }

    #[test]
    fn square_at_genus_three_is_free_of_rank_two() {
        assert_eq!(result(2, 3), (36, 2, vec![]));
    }

    #[test]
    fn transvection_relation_on_a_pair() {
        let gmap = GlMap::transvection(1, 3, 1).unwrap();
        let word = vec![a(3), a(1)];
        let rel = relation(&gmap, &word);
        assert_eq!(rel.len(), 1);
        assert_eq!(rel.get(&vec![a(1), a(1)]), Some(&Coef::ONE));
    }

    #[test]
    fn empty_word_has_trivial_quotient() {
        assert_eq!(result(0, 2), (1, 1, vec![]));
    }
}
