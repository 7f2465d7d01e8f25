//! Integer span, membership and kernel computations for sparse vectors.
//!
//! A [`Lattice`] maintains an online Hermite-style echelon basis of the
//! sublattice generated by every inserted vector: one pivot vector per
//! leading key, with extended-gcd replacement whenever a new vector is not
//! an exact multiple at its leading position. Greedy reduction against the
//! pivot set then decides exact integer membership, and two lattices are
//! equal precisely when each contains the other's pivots.
//!
//! [`integer_kernel`] finds all integer relations among a list of vectors
//! by inserting them with a unit tail appended after every real key; the
//! pivots whose leading key lies in the tail are exactly a basis of the
//! relation lattice. [`smith_diagonal`] computes elementary divisors for
//! torsion reporting.

use crate::coef::Coef;
use std::collections::BTreeMap;

/// Sparse integer vector keyed by an ordered coordinate type.
pub type Vector<K> = BTreeMap<K, Coef>;

/// Adds `scale` times `src` into `dst`, dropping entries that cancel.
pub fn add_scaled<K: Ord + Clone>(dst: &mut Vector<K>, src: &Vector<K>, scale: &Coef) {
    if scale.is_zero() {
        return;
    }
    for (k, c) in src {
        let slot = dst.entry(k.clone()).or_insert(Coef::ZERO);
        *slot = slot.add(&c.mul(scale));
        if slot.is_zero() {
            dst.remove(k);
        }
    }
}

/// An echelon basis of a sublattice of the free module on keys `K`.
#[derive(Debug, Clone)]
pub struct Lattice<K: Ord + Clone> {
    pivots: BTreeMap<K, Vector<K>>,
}

impl<K: Ord + Clone> Default for Lattice<K> {
    fn default() -> Self {
        Lattice::new()
    }
}

impl<K: Ord + Clone> Lattice<K> {
    pub fn new() -> Self {
        Lattice { pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot vectors in increasing order of leading key.
    pub fn basis(&self) -> impl Iterator<Item = &Vector<K>> {
        self.pivots.values()
    }

    /// Rebuilds a lattice from basis vectors previously produced by
    /// `insert`, keying each on its leading term without re-reduction.
    pub fn from_basis(vectors: Vec<Vector<K>>) -> Self {
        let mut pivots = BTreeMap::new();
        for v in vectors {
            if let Some(k) = v.keys().next().cloned() {
                pivots.insert(k, v);
            }
        }
        Lattice { pivots }
    }

    /// Adjoins a vector; returns whether the lattice grew.
    ///
    /// The return value is `false` exactly when the vector was already an
    /// integer combination of the current pivots, which is what makes the
    /// symbolic prefilter in span construction sound.
    pub fn insert(&mut self, v: Vector<K>) -> bool {
        let mut v = v;
        let mut changed = false;
        loop {
            let Some(k) = v.keys().next().cloned() else {
                return changed;
            };
            let Some(p) = self.pivots.get(&k) else {
                self.pivots.insert(k, v);
                return true;
            };
            let a = v[&k].clone();
            let b = p[&k].clone();
            let (q, r) = a.div_mod_floor(&b);
            if r.is_zero() {
                let p = p.clone();
                add_scaled(&mut v, &p, &q.neg());
            } else {
                // replace the pivot by the gcd combination, then continue
                // with the part of v that now vanishes at this key
                let (g, u, w) = a.egcd(&b);
                let mut p_new = Vector::new();
                add_scaled(&mut p_new, &v, &u);
                add_scaled(&mut p_new, p, &w);
                let mut v_new = Vector::new();
                add_scaled(&mut v_new, &v, &b.div_exact(&g));
                add_scaled(&mut v_new, p, &a.div_exact(&g).neg());
                self.pivots.insert(k, p_new);
                v = v_new;
                changed = true;
            }
        }
    }

    /// Exact integer membership by greedy reduction.
    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Reduces `v` against the pivots; the residual is empty iff `v` lies
    /// in the lattice, and otherwise witnesses the failure at its leading
    /// key (no pivot there, or a non-divisible coefficient).
    pub fn reduce(&self, v: &Vector<K>) -> Vector<K> {
        let mut v = v.clone();
        loop {
            let Some(k) = v.keys().next().cloned() else {
                return v;
            };
            let Some(p) = self.pivots.get(&k) else {
                return v;
            };
            let a = v[&k].clone();
            let b = p[&k].clone();
            let (q, r) = a.div_mod_floor(&b);
            if !r.is_zero() {
                return v;
            }
            add_scaled(&mut v, p, &q.neg());
        }
    }

    /// Mutual containment of pivot bases.
    pub fn equal(&self, other: &Lattice<K>) -> bool {
        self.basis().all(|p| other.contains(p)) && other.basis().all(|p| self.contains(p))
    }

    pub fn contains_lattice(&self, other: &Lattice<K>) -> bool {
        other.basis().all(|p| self.contains(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum AugKey<K: Ord + Clone> {
    Img(K),
    Tail(usize),
}

/// Basis of the integer relation lattice `{c : sum_i c_i v_i = 0}`.
///
/// Each returned vector is dense of length `vecs.len()`.
pub fn integer_kernel<K: Ord + Clone>(vecs: &[Vector<K>]) -> Vec<Vec<Coef>> {
    let mut lat: Lattice<AugKey<K>> = Lattice::new();
    for (i, v) in vecs.iter().enumerate() {
        let mut aug: Vector<AugKey<K>> = v
            .iter()
            .map(|(k, c)| (AugKey::Img(k.clone()), c.clone()))
            .collect();
        aug.insert(AugKey::Tail(i), Coef::ONE);
        lat.insert(aug);
    }
    let mut out = Vec::new();
    for (lead, p) in &lat.pivots {
        if matches!(lead, AugKey::Tail(_)) {
            let mut dense = vec![Coef::ZERO; vecs.len()];
            for (k, c) in p {
                match k {
                    AugKey::Tail(i) => dense[*i] = c.clone(),
                    AugKey::Img(_) => unreachable!("tail-led pivot has no image part"),
                }
            }
            out.push(dense);
        }
    }
    out
}

/// Elementary divisors of an integer matrix, in divisibility order,
/// without unit entries suppressed (ones are included).
pub fn smith_diagonal(mut m: Vec<Vec<Coef>>) -> Vec<Coef> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // locate a nonzero entry of smallest magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        // clear the pivot row and column; restart whenever a remainder
        // appears, since the remainder is strictly smaller than the pivot
        let mut dirty = false;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let (q, r) = m[i][t].div_mod_floor(&m[t][t]);
            for j in t..cols {
                let sub = q.mul(&m[t][j]);
                m[i][j] = m[i][j].sub(&sub);
            }
            if !r.is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let (q, r) = m[t][j].div_mod_floor(&m[t][t]);
            for row in m.iter_mut().skip(t) {
                let sub = q.mul(&row[t]);
                row[j] = row[j].sub(&sub);
            }
            if !r.is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !m[i][j].div_mod_floor(&m[t][t]).1.is_zero() {
                    for jj in t..cols {
                        let add = m[i][jj].clone();
                        m[t][jj] = m[t][jj].add(&add);
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> Vector<u32> {
        entries
            .iter()
            .filter(|(_, c)| *c != 0)
            .map(|&(k, c)| (k, Coef::from(c)))
            .collect()
    }

    #[test]
    fn insert_reports_growth() {
        let mut lat = Lattice::new();
        assert!(lat.insert(v(&[(0, 2), (1, 1)])));
        assert!(!lat.insert(v(&[(0, 4), (1, 2)])));
        assert!(lat.insert(v(&[(0, 3), (1, 1)])));
        assert_eq!(lat.rank(), 2);
    }

    #[test]
    fn gcd_improvement_changes_membership() {
        let mut lat = Lattice::new();
        lat.insert(v(&[(0, 4)]));
        assert!(!lat.contains(&v(&[(0, 2)])));
        assert!(lat.insert(v(&[(0, 6)])));
        assert!(lat.contains(&v(&[(0, 2)])));
        assert!(!lat.contains(&v(&[(0, 1)])));
    }

    #[test]
    fn membership_uses_full_pivot_vectors() {
        let mut lat = Lattice::new();
        lat.insert(v(&[(0, 2), (1, 3)]));
        lat.insert(v(&[(1, 5)]));
        assert!(lat.contains(&v(&[(0, 2), (1, -2)])));
        assert!(!lat.contains(&v(&[(0, 2)])));
        assert!(!lat.contains(&v(&[(1, 1)])));
    }

    #[test]
    fn equality_is_basis_independent() {
        let mut lhs = Lattice::new();
        lhs.insert(v(&[(0, 1), (1, 1)]));
        lhs.insert(v(&[(1, 2)]));
        let mut rhs = Lattice::new();
        rhs.insert(v(&[(0, 1), (1, 3)]));
        rhs.insert(v(&[(1, -2)]));
        assert!(lhs.equal(&rhs));
        let mut bigger = Lattice::new();
        bigger.insert(v(&[(0, 1), (1, 1)]));
        bigger.insert(v(&[(1, 1)]));
        assert!(!lhs.equal(&bigger));
        assert!(bigger.contains_lattice(&lhs));
    }

    #[test]
    fn kernel_of_dependent_vectors() {
        // v2 = v0 + 2 v1, and no other relation
        let vecs = vec![v(&[(0, 1)]), v(&[(1, 1)]), v(&[(0, 1), (1, 2)])];
        let ker = integer_kernel(&vecs);
        assert_eq!(ker.len(), 1);
        let c = &ker[0];
        let mut total = Vector::new();
        for (i, vec) in vecs.iter().enumerate() {
            add_scaled(&mut total, vec, &c[i]);
        }
        assert!(total.is_empty());
        assert!(!c[2].is_zero());
    }

    #[test]
    fn kernel_of_independent_vectors_is_trivial() {
        let vecs = vec![v(&[(0, 2)]), v(&[(1, 3)])];
        assert!(integer_kernel(&vecs).is_empty());
    }

    #[test]
    fn smith_reports_torsion() {
        let m = vec![
            vec![Coef::from(2), Coef::ZERO],
            vec![Coef::ZERO, Coef::from(4)],
        ];
        assert_eq!(smith_diagonal(m), vec![Coef::from(2), Coef::from(4)]);
        let m2 = vec![
            vec![Coef::from(2), Coef::from(1)],
            vec![Coef::ZERO, Coef::from(2)],
        ];
        // det 4, gcd of entries 1: divisors 1 and 4
        assert_eq!(smith_diagonal(m2), vec![Coef::ONE, Coef::from(4)]);
    }

    #[test]
    fn smith_handles_rectangular_and_zero() {
        assert_eq!(smith_diagonal(vec![vec![Coef::ZERO; 3]; 2]), Vec::<Coef>::new());
        let m = vec![vec![Coef::from(6), Coef::from(4), Coef::ZERO]];
        assert_eq!(smith_diagonal(m), vec![Coef::from(2)]);
    }
}
