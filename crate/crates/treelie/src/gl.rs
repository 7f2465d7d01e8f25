//! Integer linear substitutions on leaf labels.
//!
//! An invertible integer matrix G acts on the a-side by columns,
//! a_j -> sum_i G[i][j] a_i, and on the b-side by the inverse transpose,
//! so that the symplectic form is preserved. The two generator families
//! used throughout the proofs are:
//!
//! * `transvection(i, j, e)`: a_j -> a_j + e a_i and b_i -> b_i - e b_j,
//!   all other basis labels fixed;
//! * `permutation`: relabels subscripts on both sides simultaneously.
//!
//! Applying a substitution to a tree sum expands multilinearly over the
//! leaves and re-canonicalises every resulting planar tree.

use crate::coef::Coef;
use crate::expand::TensorVec;
use crate::symplectic::{Label, Side};
use crate::tree::{PlanarTree, Port, TreeSum};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A finitely supported linear substitution on basis labels.
///
/// Labels absent from the map are fixed.
#[derive(Debug, Clone, Default)]
pub struct GlMap {
    images: BTreeMap<Label, Vec<(Coef, Label)>>,
}

impl GlMap {
    pub fn identity() -> GlMap {
        GlMap::default()
    }

    /// a_j -> a_j + e a_i, b_i -> b_i - e b_j (i distinct from j).
    pub fn transvection(i: u32, j: u32, e: i64) -> Result<GlMap> {
        if i == j {
            return Err(Error::Domain(format!("transvection indices must differ: {i}")));
        }
        if i == 0 || j == 0 {
            return Err(Error::Domain("transvection indices are 1-based".into()));
        }
        let mut images = BTreeMap::new();
        let aj = Label { side: Side::A, index: j };
        let ai = Label { side: Side::A, index: i };
        let bi = Label { side: Side::B, index: i };
        let bj = Label { side: Side::B, index: j };
        images.insert(aj, vec![(Coef::ONE, aj), (Coef::from(e), ai)]);
        images.insert(bi, vec![(Coef::ONE, bi), (Coef::from(-e), bj)]);
        Ok(GlMap { images })
    }

    /// Simultaneous subscript relabelling a_i -> a_p(i), b_i -> b_p(i).
    ///
    /// `moves` lists the non-fixed points of p, which must be a bijection.
    pub fn permutation(moves: &[(u32, u32)]) -> Result<GlMap> {
        let map: BTreeMap<u32, u32> = moves.iter().copied().collect();
        if map.len() != moves.len() {
            return Err(Error::Domain("permutation maps an index twice".into()));
        }
        let mut targets: Vec<u32> = map.values().copied().collect();
        targets.sort_unstable();
        targets.dedup();
        let mut sources: Vec<u32> = map.keys().copied().collect();
        sources.sort_unstable();
        if targets != sources {
            return Err(Error::Domain("permutation moves must form a bijection".into()));
        }
        let mut images = BTreeMap::new();
        for (&i, &j) in &map {
            if i == 0 || j == 0 {
                return Err(Error::Domain("permutation indices are 1-based".into()));
            }
            if i == j {
                continue;
            }
            for side in [Side::A, Side::B] {
                images.insert(
                    Label { side, index: i },
                    vec![(Coef::ONE, Label { side, index: j })],
                );
            }
        }
        Ok(GlMap { images })
    }

    /// The block action of a square integer matrix with determinant +-1:
    /// columns on the a-side, inverse transpose on the b-side.
    pub fn from_matrix(g: &[Vec<i64>]) -> Result<GlMap> {
        let n = g.len();
        if n == 0 || g.iter().any(|row| row.len() != n) {
            return Err(Error::Domain("matrix must be square and non-empty".into()));
        }
        let det = determinant(g);
        if det.abs() != Coef::ONE {
            return Err(Error::Domain(format!(
                "matrix must be invertible over the integers, det = {det}"
            )));
        }
        let adj = adjugate(g);
        // inverse = adj / det; det is +-1 so scale by its sign
        let s = det.signum() as i64;
        let mut images = BTreeMap::new();
        for j in 0..n {
            let mut a_img = Vec::new();
            let mut b_img = Vec::new();
            for i in 0..n {
                if g[i][j] != 0 {
                    a_img.push((
                        Coef::from(g[i][j]),
                        Label { side: Side::A, index: (i + 1) as u32 },
                    ));
                }
                // inverse transpose entry (i, j) = inverse[j][i] = s * adj[j][i]
                let e = adj[j][i].mul_i64(s);
                if !e.is_zero() {
                    b_img.push((e, Label { side: Side::B, index: (i + 1) as u32 }));
                }
            }
            images.insert(Label { side: Side::A, index: (j + 1) as u32 }, a_img);
            images.insert(Label { side: Side::B, index: (j + 1) as u32 }, b_img);
        }
        Ok(GlMap { images })
    }

    fn image(&self, l: Label) -> Vec<(Coef, Label)> {
        self.images
            .get(&l)
            .cloned()
            .unwrap_or_else(|| vec![(Coef::ONE, l)])
    }

    /// Multilinear application to a tree sum.
    pub fn apply(&self, sum: &TreeSum) -> TreeSum {
        let mut out = TreeSum::zero();
        for (key, coef) in sum.terms() {
            let tree = PlanarTree::parse_key(key).expect("stored keys parse");
            let leaves = tree.leaves();
            let images: Vec<Vec<(Coef, Label)>> =
                leaves.iter().map(|&(_, _, l)| self.image(l)).collect();
            let mut pick = vec![0usize; leaves.len()];
            'odometer: loop {
                let mut c = coef.clone();
                let mut verts = tree.verts().to_vec();
                for (t, &(vi, si, _)) in leaves.iter().enumerate() {
                    let (ref ic, il) = images[t][pick[t]];
                    c = c.mul(ic);
                    verts[vi][si] = Port::Leaf(il);
                }
                if !c.is_zero() {
                    out.add_planar(&PlanarTree::from_verts(verts), &c);
                }
                let mut t = 0;
                loop {
                    if t == pick.len() {
                        break 'odometer;
                    }
                    pick[t] += 1;
                    if pick[t] < images[t].len() {
                        break;
                    }
                    pick[t] = 0;
                    t += 1;
                }
            }
        }
        out
    }

    /// Multilinear application to a tensor vector.
    pub fn apply_tensor(&self, vec: &TensorVec) -> TensorVec {
        let mut out = TensorVec::zero();
        for (word, coef) in vec.terms() {
            let images: Vec<Vec<(Coef, Label)>> = word.iter().map(|&l| self.image(l)).collect();
            let mut pick = vec![0usize; word.len()];
            'odometer: loop {
                let mut c = coef.clone();
                let mut w = Vec::with_capacity(word.len());
                for (t, imgs) in images.iter().enumerate() {
                    let (ref ic, il) = imgs[pick[t]];
                    c = c.mul(ic);
                    w.push(il);
                }
                out.add_word(w, c);
                let mut t = 0;
                loop {
                    if t == pick.len() {
                        break 'odometer;
                    }
                    pick[t] += 1;
                    if pick[t] < images[t].len() {
                        break;
                    }
                    pick[t] = 0;
                    t += 1;
                }
            }
        }
        out
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
fn determinant(g: &[Vec<i64>]) -> Coef {
    let n = g.len();
    let mut m: Vec<Vec<Coef>> = g
        .iter()
        .map(|row| row.iter().map(|&v| Coef::from(v)).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = Coef::ONE;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Coef::ZERO;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].mul_i64(sign)
}

/// Adjugate matrix via cofactors; adequate for the small ranks used here.
fn adjugate(g: &[Vec<i64>]) -> Vec<Vec<Coef>> {
    let n = g.len();
    if n == 1 {
        return vec![vec![Coef::ONE]];
    }
    let mut adj = vec![vec![Coef::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| g[r][c]).collect())
                .collect();
            let cof = determinant(&minor);
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = cof.mul_i64(s);
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::{eq_rational, expand};
    use crate::symplectic::{a, b};

    fn t(labels: &[Label]) -> TreeSum {
        TreeSum::caterpillar(labels)
    }

    #[test]
    fn transvection_on_moved_labels() {
        let g = GlMap::transvection(3, 4, 1).unwrap();
        let lhs = g.apply(&t(&[a(4), b(5), b(6)]));
        let rhs = TreeSum::sum(&[&t(&[a(4), b(5), b(6)]), &t(&[a(3), b(5), b(6)])]);
        assert_eq!(lhs, rhs);
        let lhs = g.apply(&t(&[b(3), a(5), b(6)]));
        let rhs = t(&[b(3), a(5), b(6)]).sub(&t(&[b(4), a(5), b(6)]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_relabels_both_sides() {
        let p = GlMap::permutation(&[(1, 4), (4, 1), (2, 3), (3, 2)]).unwrap();
        let lhs = p.apply(&t(&[a(3), b(1), b(2)]));
        assert_eq!(lhs, t(&[a(2), b(4), b(3)]));
    }

    #[test]
    fn matrix_action_matches_transvection() {
        // identity + E_{3,4} as a 4x4 matrix equals transvection(3, 4, 1)
        let mut m = vec![vec![0i64; 4]; 4];
        for i in 0..4 {
            m[i][i] = 1;
        }
        m[2][3] = 1;
        let from_matrix = GlMap::from_matrix(&m).unwrap();
        let direct = GlMap::transvection(3, 4, 1).unwrap();
        for probe in [t(&[a(4), b(5), b(6)]), t(&[b(3), a(4), b(4)])] {
            assert_eq!(from_matrix.apply(&probe), direct.apply(&probe));
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = vec![vec![1, 1], vec![1, 1]];
        assert!(GlMap::from_matrix(&m).is_err());
        let m2 = vec![vec![2, 0], vec![0, 1]];
        assert!(GlMap::from_matrix(&m2).is_err());
    }

    #[test]
    fn negative_determinant_allowed() {
        let m = vec![vec![0, 1], vec![1, 0]];
        let g = GlMap::from_matrix(&m).unwrap();
        assert_eq!(g.apply(&t(&[a(1), b(2), b(3)])), t(&[a(2), b(1), b(3)]));
    }

    #[test]
    fn action_commutes_with_bracket() {
        let g = GlMap::transvection(2, 1, 1).unwrap();
        let s = t(&[a(1), b(2), a(3)]);
        let u = t(&[b(1), a(4), b(3)]);
        let lhs = g.apply(&s.bracket(&u));
        let rhs = g.apply(&s).bracket(&g.apply(&u));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_commutes_with_expansion() {
        let g = GlMap::transvection(2, 1, -1).unwrap();
        let s = t(&[a(1), b(2), a(3), b(1)]);
        assert_eq!(expand(&g.apply(&s)), g.apply_tensor(&expand(&s)));
    }

    #[test]
    fn replays_contraction_count_change() {
        // Adding a fourth-index component to b3 turns a two-contraction
        // bracket into the sum with the transported one-contraction bracket.
        let g = GlMap::transvection(3, 4, -1).unwrap();
        let base = t(&[a(1), a(2), a(3)]).bracket(&t(&[b(1), b(2), b(3)]));
        let extra = t(&[a(1), a(2), a(3)]).bracket(&t(&[b(1), b(2), b(4)]));
        let lhs = g.apply(&base);
        assert!(eq_rational(&lhs, &TreeSum::sum(&[&base, &extra])));
        assert_eq!(lhs, TreeSum::sum(&[&base, &extra]));
    }
}
