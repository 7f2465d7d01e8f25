//! Planar uni-trivalent trees, AS-canonical forms and integer tree sums.
//!
//! A degree-k generator is a tree with k trivalent vertices, each carrying
//! a cyclic order of its three incident edges, and k+2 labelled leaves.
//! Reversing the cyclic order at a vertex negates the tree (the AS
//! relation). The canonical form of a planar tree minimises a root-leaf
//! serialization over all re-rootings and all subsets of vertex
//! reversals, tracking the reversal parity as a sign:
//!
//! * if the minimum is attained with one parity only, the tree equals
//!   sign * (parsed minimal serialization);
//! * if both parities attain the minimum, the tree is AS-degenerate
//!   (equal to its own negative) and is dropped. This covers repeated
//!   adjacent labels such as t(a,a,c,d) as well as symmetric
//!   configurations such as the degree-3 palindrome t(a1,a2,a1,a2,a1),
//!   whose expansions vanish identically.
//!
//! The caterpillar t(x_1, ..., x_{k+2}) has internal path v_1 .. v_k with
//! cyclic orders (x_1, x_2, v_2) at v_1, (v_{i-1}, x_{i+1}, v_{i+1}) at
//! middle vertices and (v_{k-1}, x_{k+1}, x_{k+2}) at v_k. Consequences,
//! exercised in the tests below: swapping the first two or last two slots
//! negates, full reversal scales by (-1)^k, tripod rotation is even.
//!
//! The Lie bracket glues a leaf of one tree to a leaf of the other, with
//! coefficient omega(leaf, leaf) and the inherited cyclic orders; the sum
//! runs over all leaf pairs.

use crate::coef::Coef;
use crate::symplectic::{omega, Label, Side};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// One of the three ports of a trivalent vertex, in cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    Leaf(Label),
    Inner(u8),
}

/// A planar uni-trivalent tree: vertices with cyclically ordered ports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarTree {
    verts: Vec<[Port; 3]>,
}

/// Canonical serialization of an AS-class representative, e.g.
/// `a1:((a2,b1),b5)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeKey(String);

impl TreeKey {
    /// Wraps text that is already a canonical serialization, as stored
    /// in caches; no validation is performed.
    pub fn from_raw(text: &str) -> TreeKey {
        TreeKey(text.to_string())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Number of trivalent vertices.
    pub fn degree(&self) -> usize {
        self.0.bytes().filter(|&c| c == b'(').count()
    }

    /// Leaf labels in serialization order.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        let mut cur = String::new();
        for c in self.0.chars() {
            match c {
                'a' | 'b' | '0'..='9' => cur.push(c),
                _ => {
                    if !cur.is_empty() {
                        out.push(Label::parse(&cur).expect("canonical key labels parse"));
                        cur.clear();
                    }
                }
            }
        }
        if !cur.is_empty() {
            out.push(Label::parse(&cur).expect("canonical key labels parse"));
        }
        out
    }

    /// (number of a-labels, number of b-labels).
    pub fn color_weight(&self) -> (usize, usize) {
        let labels = self.labels();
        let na = labels.iter().filter(|l| l.side == Side::A).count();
        (na, labels.len() - na)
    }

    /// Largest basis index appearing on a leaf.
    pub fn max_index(&self) -> u32 {
        self.labels().iter().map(|l| l.index).max().unwrap_or(0)
    }
}

impl fmt::Display for TreeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PlanarTree {
    /// The caterpillar t(x_1, ..., x_n), n >= 3.
    pub fn caterpillar(labels: &[Label]) -> PlanarTree {
        let n = labels.len();
        assert!(n >= 3, "caterpillar needs at least 3 leaves");
        let k = n - 2;
        let mut verts = Vec::with_capacity(k);
        if k == 1 {
            verts.push([Port::Leaf(labels[0]), Port::Leaf(labels[1]), Port::Leaf(labels[2])]);
        } else {
            verts.push([Port::Leaf(labels[0]), Port::Leaf(labels[1]), Port::Inner(1)]);
            for i in 1..k - 1 {
                verts.push([
                    Port::Inner((i - 1) as u8),
                    Port::Leaf(labels[i + 1]),
                    Port::Inner((i + 1) as u8),
                ]);
            }
            verts.push([
                Port::Inner((k - 2) as u8),
                Port::Leaf(labels[k]),
                Port::Leaf(labels[k + 1]),
            ]);
        }
        PlanarTree { verts }
    }

    /// The degree-4 star: a central vertex joined to three arms, each arm
    /// carrying an ordered leaf pair, arms in cyclic order.
    pub fn star(arms: [(Label, Label); 3]) -> PlanarTree {
        let mut verts = vec![[Port::Inner(1), Port::Inner(2), Port::Inner(3)]];
        for (l, r) in arms {
            verts.push([Port::Inner(0), Port::Leaf(l), Port::Leaf(r)]);
        }
        PlanarTree { verts }
    }

    pub fn degree(&self) -> usize {
        self.verts.len()
    }

    /// All (vertex, slot, label) leaf positions.
    pub fn leaves(&self) -> Vec<(usize, usize, Label)> {
        let mut out = Vec::with_capacity(self.verts.len() + 2);
        for (vi, v) in self.verts.iter().enumerate() {
            for (si, p) in v.iter().enumerate() {
                if let Port::Leaf(l) = p {
                    out.push((vi, si, *l));
                }
            }
        }
        out
    }

    /// Ports of vertex `v` with the reversal subset `flips` applied:
    /// bit v set means the cyclic order at v is reversed.
    fn port(&self, v: usize, s: usize, flips: u16) -> Port {
        if flips & (1 << v) != 0 {
            // reversed cyclic order: swap the last two slots
            match s {
                0 => self.verts[v][0],
                1 => self.verts[v][2],
                _ => self.verts[v][1],
            }
        } else {
            self.verts[v][s]
        }
    }

    /// Serialize rooted at leaf (vi, si) under the given reversal subset.
    fn serialize(&self, vi: usize, si: usize, flips: u16, out: &mut String) {
        use std::fmt::Write;
        let Port::Leaf(root) = self.port(vi, si, flips) else {
            panic!("serialization root must be a leaf")
        };
        write!(out, "{root}:").unwrap();
        self.ser_subtree(vi, si, flips, out);
    }

    fn ser_subtree(&self, v: usize, in_slot: usize, flips: u16, out: &mut String) {
        use std::fmt::Write;
        out.push('(');
        for step in [1usize, 2] {
            let p = self.port(v, (in_slot + step) % 3, flips);
            match p {
                Port::Leaf(l) => write!(out, "{l}").unwrap(),
                Port::Inner(w) => {
                    let w = w as usize;
                    let back = (0..3)
                        .find(|&s| self.port(w, s, flips) == Port::Inner(v as u8))
                        .expect("inner ports are mutual");
                    self.ser_subtree(w, back, flips, out);
                }
            }
            if step == 1 {
                out.push(',');
            }
        }
        out.push(')');
    }

    /// AS-canonical form: `Some((key, sign))` with `self = sign * key`
    /// as AS-classes, or `None` when the tree is AS-degenerate.
    pub fn canon(&self) -> Option<(TreeKey, i32)> {
        let k = self.verts.len();
        debug_assert!(k <= 16, "reversal subsets are tracked in a u16");
        let mut best: Option<String> = None;
        let mut plus = false;
        let mut minus = false;
        let mut buf = String::new();
        for flips in 0..(1u16 << k) {
            let sign = if flips.count_ones() % 2 == 0 { 1 } else { -1 };
            for (vi, si, _) in self.leaves() {
                // translate the unflipped slot into the flip-aware address
                let si = if flips & (1 << vi) != 0 && si > 0 { 3 - si } else { si };
                buf.clear();
                self.serialize(vi, si, flips, &mut buf);
                match &best {
                    Some(b) if buf.as_str() > b.as_str() => continue,
                    Some(b) if buf.as_str() == b.as_str() => {}
                    _ => {
                        best = Some(buf.clone());
                        plus = false;
                        minus = false;
                    }
                }
                if sign > 0 {
                    plus = true;
                } else {
                    minus = true;
                }
            }
        }
        let key = TreeKey(best.expect("tree has a leaf"));
        match (plus, minus) {
            (true, true) => None,
            (true, false) => Some((key, 1)),
            (false, true) => Some((key, -1)),
            (false, false) => unreachable!(),
        }
    }

    /// Rebuild the planar representative of a canonical key.
    pub fn parse_key(key: &TreeKey) -> Result<PlanarTree> {
        let s = key.as_str();
        let colon = s
            .find(':')
            .ok_or_else(|| Error::Usage(format!("tree key missing root: {s:?}")))?;
        let root = Label::parse(&s[..colon])?;
        let bytes = s.as_bytes();
        let mut verts: Vec<[Port; 3]> = Vec::new();
        let mut pos = colon + 1;

        fn parse_node(
            s: &str,
            bytes: &[u8],
            pos: &mut usize,
            parent: Option<u8>,
            verts: &mut Vec<[Port; 3]>,
        ) -> Result<Port> {
            if *pos >= bytes.len() {
                return Err(Error::Usage(format!("truncated tree key: {s:?}")));
            }
            if bytes[*pos] == b'(' {
                *pos += 1;
                let vid = verts.len() as u8;
                let entry = parent.map_or(Port::Leaf(Label { side: Side::A, index: 0 }), Port::Inner);
                verts.push([entry, entry, entry]);
                let q = parse_node(s, bytes, pos, Some(vid), verts)?;
                if bytes.get(*pos) != Some(&b',') {
                    return Err(Error::Usage(format!("expected ',' in tree key: {s:?}")));
                }
                *pos += 1;
                let r = parse_node(s, bytes, pos, Some(vid), verts)?;
                if bytes.get(*pos) != Some(&b')') {
                    return Err(Error::Usage(format!("expected ')' in tree key: {s:?}")));
                }
                *pos += 1;
                verts[vid as usize][1] = q;
                verts[vid as usize][2] = r;
                Ok(Port::Inner(vid))
            } else {
                let start = *pos;
                while *pos < bytes.len() && !matches!(bytes[*pos], b'(' | b')' | b',') {
                    *pos += 1;
                }
                Ok(Port::Leaf(Label::parse(&s[start..*pos])?))
            }
        }

        let top = parse_node(s, bytes, &mut pos, None, &mut verts)?;
        if pos != bytes.len() {
            return Err(Error::Usage(format!("trailing input in tree key: {s:?}")));
        }
        match top {
            Port::Inner(0) => {
                verts[0][0] = Port::Leaf(root);
                Ok(PlanarTree { verts })
            }
            _ => Err(Error::Usage(format!("tree key must have an inner root node: {s:?}"))),
        }
    }

    /// Glue leaf `(vi, si)` of `self` to leaf `(wj, sj)` of `other`.
    pub fn glue(&self, vi: usize, si: usize, other: &PlanarTree, wj: usize, sj: usize) -> PlanarTree {
        let off = self.verts.len() as u8;
        let mut verts = Vec::with_capacity(self.verts.len() + other.verts.len());
        for (i, v) in self.verts.iter().enumerate() {
            let mut ports = *v;
            if i == vi {
                ports[si] = Port::Inner(off + wj as u8);
            }
            verts.push(ports);
        }
        for (j, v) in other.verts.iter().enumerate() {
            let mut ports = *v;
            for (s, p) in ports.iter_mut().enumerate() {
                *p = match *p {
                    Port::Inner(w) => Port::Inner(off + w),
                    Port::Leaf(_) if j == wj && s == sj => Port::Inner(vi as u8),
                    leaf => leaf,
                };
            }
            verts.push(ports);
        }
        PlanarTree { verts }
    }

    /// Reads a path-shaped tree back as `(labels, sign)` with
    /// `self = sign * caterpillar(labels)`. `None` for the star shape.
    pub fn read_caterpillar(&self) -> Option<(Vec<Label>, i32)> {
        let k = self.verts.len();
        if k == 1 {
            let labels: Vec<Label> = self.verts[0]
                .iter()
                .map(|p| match p {
                    Port::Leaf(l) => *l,
                    Port::Inner(_) => unreachable!("degree-1 tree has leaf ports only"),
                })
                .collect();
            return Some((labels, 1));
        }
        let mut nbr: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, v) in self.verts.iter().enumerate() {
            for p in v {
                if let Port::Inner(w) = p {
                    nbr[i].push(*w as usize);
                }
            }
        }
        let mut ends = (0..k).filter(|&i| nbr[i].len() == 1);
        let first = ends.next()?;
        if nbr.iter().any(|n| n.len() > 2) {
            return None;
        }
        let mut path = vec![first];
        while path.len() < k {
            let last = *path.last().unwrap();
            let prev = if path.len() >= 2 { Some(path[path.len() - 2]) } else { None };
            let next = *nbr[last].iter().find(|&&j| Some(j) != prev)?;
            path.push(next);
        }
        let rotate = |v: usize, anchor: Port| -> [Port; 3] {
            let ports = self.verts[v];
            let t = ports.iter().position(|&p| p == anchor).expect("anchor port present");
            [ports[t], ports[(t + 1) % 3], ports[(t + 2) % 3]]
        };
        let mut sign = 1;
        let mut labels = Vec::with_capacity(k + 2);
        let head = rotate(path[0], Port::Inner(path[1] as u8));
        for p in [head[1], head[2]] {
            let Port::Leaf(l) = p else { return None };
            labels.push(l);
        }
        for idx in 1..k - 1 {
            let r = rotate(path[idx], Port::Inner(path[idx - 1] as u8));
            match (r[1], r[2]) {
                (Port::Leaf(l), Port::Inner(_)) => labels.push(l),
                (Port::Inner(_), Port::Leaf(l)) => {
                    sign = -sign;
                    labels.push(l);
                }
                _ => return None,
            }
        }
        let tail = rotate(path[k - 1], Port::Inner(path[k - 2] as u8));
        for p in [tail[1], tail[2]] {
            let Port::Leaf(l) = p else { return None };
            labels.push(l);
        }
        Some((labels, sign))
    }

    /// Reads the degree-4 star back as three ordered leaf pairs in cyclic
    /// order around the centre. `None` for path shapes.
    pub fn read_star(&self) -> Option<[(Label, Label); 3]> {
        let centre = (0..self.verts.len())
            .find(|&i| self.verts[i].iter().all(|p| matches!(p, Port::Inner(_))))?;
        let mut arms = [(Label { side: Side::A, index: 0 }, Label { side: Side::A, index: 0 }); 3];
        for (slot, p) in self.verts[centre].iter().enumerate() {
            let Port::Inner(w) = p else { return None };
            let w = *w as usize;
            let t = self.verts[w]
                .iter()
                .position(|&q| q == Port::Inner(centre as u8))?;
            let (q, r) = (self.verts[w][(t + 1) % 3], self.verts[w][(t + 2) % 3]);
            let (Port::Leaf(l), Port::Leaf(m)) = (q, r) else { return None };
            arms[slot] = (l, m);
        }
        Some(arms)
    }

    pub(crate) fn verts(&self) -> &[[Port; 3]] {
        &self.verts
    }

    pub(crate) fn from_verts(verts: Vec<[Port; 3]>) -> PlanarTree {
        PlanarTree { verts }
    }

    /// Swap a <-> b on every leaf.
    pub fn mirror(&self) -> PlanarTree {
        let verts = self
            .verts
            .iter()
            .map(|v| {
                v.map(|p| match p {
                    Port::Leaf(l) => Port::Leaf(l.mirror()),
                    inner => inner,
                })
            })
            .collect();
        PlanarTree { verts }
    }
}

/// A finite integer combination of AS-canonical tree classes.
///
/// Degenerate classes never appear; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeSum {
    terms: BTreeMap<TreeKey, Coef>,
}

impl TreeSum {
    pub fn zero() -> TreeSum {
        TreeSum::default()
    }

    /// The caterpillar class t(labels) with coefficient 1.
    pub fn caterpillar(labels: &[Label]) -> TreeSum {
        let mut s = TreeSum::zero();
        s.add_planar(&PlanarTree::caterpillar(labels), &Coef::ONE);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TreeKey, &Coef)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, key: &TreeKey) -> Coef {
        self.terms.get(key).cloned().unwrap_or(Coef::ZERO)
    }

    /// Degree shared by all terms, if any term is present.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|k| k.degree())
    }

    pub fn add_planar(&mut self, tree: &PlanarTree, coef: &Coef) {
        if coef.is_zero() {
            return;
        }
        if let Some((key, sign)) = tree.canon() {
            let c = if sign < 0 { coef.neg() } else { coef.clone() };
            self.add_key(key, c);
        }
    }

    pub fn add_key(&mut self, key: TreeKey, coef: Coef) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
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

    pub fn add_assign(&mut self, other: &TreeSum) {
        for (k, c) in &other.terms {
            self.add_key(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &TreeSum) {
        for (k, c) in &other.terms {
            self.add_key(k.clone(), c.neg());
        }
    }

    pub fn scaled(&self, c: &Coef) -> TreeSum {
        if c.is_zero() {
            return TreeSum::zero();
        }
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect();
        TreeSum { terms }
    }

    pub fn neg(&self) -> TreeSum {
        self.scaled(&Coef::Small(-1))
    }

    pub fn sum(parts: &[&TreeSum]) -> TreeSum {
        let mut out = TreeSum::zero();
        for p in parts {
            out.add_assign(p);
        }
        out
    }

    pub fn sub(&self, other: &TreeSum) -> TreeSum {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// The Lie bracket: sum over leaf pairs of omega-weighted gluings.
    pub fn bracket(&self, other: &TreeSum) -> TreeSum {
        let mut out = TreeSum::zero();
        for (k1, c1) in &self.terms {
            let t1 = PlanarTree::parse_key(k1).expect("stored keys parse");
            let l1 = t1.leaves();
            for (k2, c2) in &other.terms {
                let t2 = PlanarTree::parse_key(k2).expect("stored keys parse");
                let l2 = t2.leaves();
                let c12 = c1.mul(c2);
                for &(vi, si, lx) in &l1 {
                    for &(wj, sj, ly) in &l2 {
                        let w = omega(lx, ly);
                        if w != 0 {
                            let glued = t1.glue(vi, si, &t2, wj, sj);
                            out.add_planar(&glued, &c12.mul_i64(w));
                        }
                    }
                }
            }
        }
        out
    }

    /// Swap a <-> b on every leaf of every term.
    pub fn mirror(&self) -> TreeSum {
        let mut out = TreeSum::zero();
        for (k, c) in &self.terms {
            let t = PlanarTree::parse_key(k).expect("stored keys parse");
            out.add_planar(&t.mirror(), c);
        }
        out
    }

    /// Keep only terms of the given colour weight.
    pub fn project_color(&self, na: usize, nb: usize) -> TreeSum {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.color_weight() == (na, nb))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        TreeSum { terms }
    }

    /// Colour weights present, in sorted order.
    pub fn color_sectors(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.terms.keys().map(|k| k.color_weight()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for TreeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let tree = PlanarTree::parse_key(k).expect("stored keys parse");
            let (body, sign) = match tree.read_caterpillar() {
                Some((labels, sign)) => {
                    let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
                    (format!("t({})", parts.join(",")), sign)
                }
                None => {
                    let arms = tree.read_star().expect("degree-4 trees are paths or stars");
                    let parts: Vec<String> =
                        arms.iter().map(|(l, r)| format!("({l},{r})")).collect();
                    (format!("t({})", parts.join(",")), 1)
                }
            };
            let c = if sign < 0 { c.neg() } else { c.clone() };
            if first {
                if c.is_one() {
                    write!(f, "{body}")?;
                } else if c == Coef::Small(-1) {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{c} {body}")?;
                }
                first = false;
            } else if c.signum() < 0 {
                let abs = c.abs();
                if abs.is_one() {
                    write!(f, " - {body}")?;
                } else {
                    write!(f, " - {abs} {body}")?;
                }
            } else if c.is_one() {
                write!(f, " + {body}")?;
            } else {
                write!(f, " + {c} {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{a, b};

    fn t(labels: &[Label]) -> TreeSum {
        TreeSum::caterpillar(labels)
    }

    #[test]
    fn tripod_as_relations() {
        assert!(t(&[a(1), b(2), a(1)]).is_zero());
        let lhs = t(&[a(1), b(2), a(3)]);
        let rhs = t(&[a(3), b(2), a(1)]).neg();
        assert_eq!(lhs, rhs);
        let rot = t(&[b(2), a(3), a(1)]);
        assert_eq!(lhs, rot);
    }

    #[test]
    fn degree_two_as_relations() {
        assert!(t(&[a(1), a(1), b(2), a(3)]).is_zero());
        let base = t(&[a(1), b(2), a(3), b(4)]);
        assert_eq!(base, t(&[b(2), a(1), a(3), b(4)]).neg());
        assert_eq!(base, t(&[b(4), a(3), b(2), a(1)]));
    }

    #[test]
    fn degree_three_as_relations() {
        assert!(t(&[a(1), a(1), b(2), a(3), b(4)]).is_zero());
        let base = t(&[a(1), b(2), a(3), b(4), a(5)]);
        assert_eq!(base, t(&[b(2), a(1), a(3), b(4), a(5)]).neg());
        assert_eq!(base, t(&[a(5), b(4), a(3), b(2), a(1)]).neg());
    }

    #[test]
    fn palindrome_is_degenerate() {
        assert!(t(&[a(1), a(2), a(1), a(2), a(1)]).is_zero());
        assert!(PlanarTree::caterpillar(&[a(1), a(2), a(1), a(2), a(1)])
            .canon()
            .is_none());
    }

    #[test]
    fn canonical_key_roundtrip() {
        for labels in [
            vec![a(1), b(2), a(3)],
            vec![a(1), a(2), b(1), b(2)],
            vec![b(1), b(2), b(4), a(4), b(3)],
        ] {
            let (key, _) = PlanarTree::caterpillar(&labels).canon().unwrap();
            let back = PlanarTree::parse_key(&key).unwrap();
            let (key2, sign2) = back.canon().unwrap();
            assert_eq!((key2, sign2), (key, 1));
        }
    }

    #[test]
    fn key_metadata() {
        let (key, _) = PlanarTree::caterpillar(&[b(1), b(2), b(4), a(4), b(3)])
            .canon()
            .unwrap();
        assert_eq!(key.degree(), 3);
        assert_eq!(key.color_weight(), (1, 4));
        assert_eq!(key.max_index(), 4);
        assert_eq!(key.labels().len(), 5);
    }

    #[test]
    fn star_rotation_even_and_arm_flip_odd() {
        let s0 = PlanarTree::star([(a(1), a(2)), (b(1), b(2)), (a(3), b(3))]);
        let s1 = PlanarTree::star([(b(1), b(2)), (a(3), b(3)), (a(1), a(2))]);
        assert_eq!(s0.canon(), s1.canon());
        let s2 = PlanarTree::star([(a(2), a(1)), (b(1), b(2)), (a(3), b(3))]);
        let (k0, g0) = s0.canon().unwrap();
        let (k2, g2) = s2.canon().unwrap();
        assert_eq!(k0, k2);
        assert_eq!(g0 * g2, -1);
    }

    #[test]
    fn bracket_replays_triple_contraction() {
        let lhs = t(&[a(1), a(2), a(3)]).bracket(&t(&[b(3), b(2), b(1)]));
        let rhs = TreeSum::sum(&[
            &t(&[a(2), a(3), b(3), b(2)]),
            &t(&[a(3), a(1), b(1), b(3)]),
            &t(&[a(1), a(2), b(2), b(1)]),
        ]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_without_contraction_is_zero() {
        let lhs = t(&[a(1), a(2), a(3)]).bracket(&t(&[b(4), b(5), b(6)]));
        assert!(lhs.is_zero());
    }

    #[test]
    fn bracket_produces_star_shape_in_degree_four() {
        // Glue a tripod into the middle leaf of a degree-3 caterpillar.
        let middle = t(&[b(1), b(2), a(9), b(3), b(4)]);
        let tripod = t(&[b(9), a(5), a(6)]);
        let out = middle.bracket(&tripod);
        assert!(!out.is_zero());
        let key = out.terms().next().unwrap().0.clone();
        let tree = PlanarTree::parse_key(&key).unwrap();
        assert!(tree.read_caterpillar().is_none());
        assert!(tree.read_star().is_some());
    }

    #[test]
    fn caterpillar_readback_inverts_construction() {
        let labels = vec![b(1), b(2), b(4), a(4), b(3)];
        let tree = PlanarTree::caterpillar(&labels);
        let (back, sign) = tree.read_caterpillar().unwrap();
        assert_eq!(back, labels);
        assert_eq!(sign, 1);
    }

    #[test]
    fn mirror_is_involutive_and_anticommutes_with_bracket() {
        let s = t(&[a(1), b(2), a(3), b(1)]);
        let u = t(&[b(3), a(2), b(1)]);
        assert_eq!(s.mirror().mirror(), s);
        let lhs = s.bracket(&u).mirror();
        let rhs = s.mirror().bracket(&u.mirror()).neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_formats() {
        // rendering picks the canonical representative of the class:
        // swapping the first two and the last two legs costs two signs
        let s = t(&[a(1), a(2), b(2), b(1)]);
        assert_eq!(s.to_string(), "t(a2,a1,b1,b2)");
        let two = s.scaled(&Coef::from(2));
        assert_eq!(two.to_string(), "2 t(a2,a1,b1,b2)");
        assert_eq!(TreeSum::zero().to_string(), "0");
        let d = t(&[a(1), b(2), a(3)]).sub(&t(&[a(1), b(2), a(4)]));
        assert!(d.to_string().contains(" - ") || d.to_string().starts_with('-'));
    }

    #[test]
    fn project_color_partitions() {
        let mixed = TreeSum::sum(&[&t(&[a(1), a(2), a(3)]), &t(&[a(1), b(2), a(3)])]);
        assert_eq!(mixed.project_color(3, 0).len(), 1);
        assert_eq!(mixed.project_color(2, 1).len(), 1);
        assert_eq!(mixed.color_sectors(), vec![(2, 1), (3, 0)]);
    }
}
