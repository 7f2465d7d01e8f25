//! Generating modules, bracket recipes and integer spans of their images.
//!
//! The degree-one generating modules are spanned by tripods of a fixed
//! colour type: `W(a3)`, `W(a2b)`, `W(ab2)` and `W(b3)`. Higher spans are
//! described by [`Recipe`] values, nested brackets of modules such as
//! `[[W(a3),W(a2b)],W(a2b)]`, the third graded piece `Gamma3(...)` of the
//! subalgebra generated by one or two tripod modules, and the assembled
//! degree-three image `ImTau3`.
//!
//! A [`Span`] holds two lattices for the same recipe: the symbolic one over
//! canonical tree keys, used as a sound fast filter (a sum whose symbolic
//! vector already reduces to zero expands to a dependent tensor vector),
//! and the tensor one over expansion words, which is the ground truth for
//! membership because it absorbs the exchange relation.

use crate::coef::Coef;
use crate::expand::{expand, Word};
use crate::lattice::{Lattice, Vector};
use crate::symplectic::{Label, Side};
use crate::tree::{PlanarTree, TreeKey, TreeSum};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// All distinct caterpillar classes of the given degree and colour over
/// the support, as canonical keys in increasing order. Classes that are
/// forced to vanish by the sign relations are omitted.
pub fn enumerate_trees(degree: usize, na: usize, nb: usize, support: &[u32]) -> Vec<TreeKey> {
    let n = degree + 2;
    assert_eq!(na + nb, n, "colour must fill every leaf");
    let mut seen = BTreeSet::new();
    let mut labels = vec![Label { side: Side::A, index: 1 }; n];
    enumerate_rec(&mut labels, 0, na, nb, support, &mut seen);
    seen.into_iter().collect()
}

fn enumerate_rec(
    labels: &mut Vec<Label>,
    pos: usize,
    na: usize,
    nb: usize,
    support: &[u32],
    seen: &mut BTreeSet<TreeKey>,
) {
    if pos == labels.len() {
        if let Some((key, _)) = PlanarTree::caterpillar(labels).canon() {
            seen.insert(key);
        }
        return;
    }
    if na > 0 {
        for &i in support {
            labels[pos] = Label { side: Side::A, index: i };
            enumerate_rec(labels, pos + 1, na - 1, nb, support, seen);
        }
    }
    if nb > 0 {
        for &i in support {
            labels[pos] = Label { side: Side::B, index: i };
            enumerate_rec(labels, pos + 1, na, nb - 1, support, seen);
        }
    }
}

/// A tripod generating module, named by its colour type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GenModule {
    A3,
    A2B,
    AB2,
    B3,
}

impl GenModule {
    /// (number of a-leaves, number of b-leaves) of the tripods.
    pub fn color(self) -> (usize, usize) {
        match self {
            GenModule::A3 => (3, 0),
            GenModule::A2B => (2, 1),
            GenModule::AB2 => (1, 2),
            GenModule::B3 => (0, 3),
        }
    }

    pub fn mirror(self) -> GenModule {
        match self {
            GenModule::A3 => GenModule::B3,
            GenModule::A2B => GenModule::AB2,
            GenModule::AB2 => GenModule::A2B,
            GenModule::B3 => GenModule::A3,
        }
    }

    /// One generator per non-vanishing tripod class over the support.
    pub fn gens(self, support: &[u32]) -> Vec<TreeSum> {
        let (na, nb) = self.color();
        enumerate_trees(1, na, nb, support)
            .into_iter()
            .map(|key| {
                let mut s = TreeSum::zero();
                s.add_key(key, Coef::ONE);
                s
            })
            .collect()
    }
}

impl fmt::Display for GenModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GenModule::A3 => "W(a3)",
            GenModule::A2B => "W(a2b)",
            GenModule::AB2 => "W(ab2)",
            GenModule::B3 => "W(b3)",
        };
        f.write_str(name)
    }
}

/// A span description: a module, a bracket of two descriptions, the third
/// graded piece of the subalgebra generated by some modules, or the whole
/// assembled degree-three image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Module(GenModule),
    Bracket(Box<Recipe>, Box<Recipe>),
    Gamma3(Vec<GenModule>),
    ImTau3,
}

impl Recipe {
    pub fn bracket(l: Recipe, r: Recipe) -> Recipe {
        Recipe::Bracket(Box::new(l), Box::new(r))
    }

    pub fn degree(&self) -> usize {
        match self {
            Recipe::Module(_) => 1,
            Recipe::Bracket(l, r) => l.degree() + r.degree(),
            Recipe::Gamma3(_) => 3,
            Recipe::ImTau3 => 3,
        }
    }

    /// Parses the textual recipe syntax, for example
    /// `[[W(a3),W(a2b)],W(ab2)]` or `Gamma3(W(a2b),W(ab2))`.
    pub fn parse(text: &str) -> Result<Recipe> {
        let mut p = RecipeParser { text: text.as_bytes(), pos: 0 };
        let r = p.recipe()?;
        p.skip_ws();
        if p.pos != p.text.len() {
            return Err(Error::Usage(format!(
                "trailing input in recipe at byte {}: {text}",
                p.pos
            )));
        }
        Ok(r)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Module(m) => write!(f, "{m}"),
            Recipe::Bracket(l, r) => write!(f, "[{l},{r}]"),
            Recipe::Gamma3(ms) => {
                f.write_str("Gamma3(")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
            Recipe::ImTau3 => f.write_str("ImTau3"),
        }
    }
}

struct RecipeParser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> RecipeParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.text.len() && self.text[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "expected '{}' at byte {} of recipe",
                c as char, self.pos
            )))
        }
    }

    fn lit(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn recipe(&mut self) -> Result<Recipe> {
        self.skip_ws();
        if self.lit("[") {
            let l = self.recipe()?;
            self.eat(b',')?;
            let r = self.recipe()?;
            self.eat(b']')?;
            return Ok(Recipe::bracket(l, r));
        }
        if self.lit("Gamma3(") {
            let mut ms = vec![self.module()?];
            loop {
                self.skip_ws();
                if self.lit(",") {
                    ms.push(self.module()?);
                } else {
                    break;
                }
            }
            self.eat(b')')?;
            return Ok(Recipe::Gamma3(ms));
        }
        if self.lit("ImTau3") {
            return Ok(Recipe::ImTau3);
        }
        Ok(Recipe::Module(self.module()?))
    }

    fn module(&mut self) -> Result<GenModule> {
        for (name, m) in [
            ("W(a3)", GenModule::A3),
            ("W(a2b)", GenModule::A2B),
            ("W(ab2)", GenModule::AB2),
            ("W(b3)", GenModule::B3),
        ] {
            if self.lit(name) {
                return Ok(m);
            }
        }
        Err(Error::Usage(format!(
            "expected a module name W(a3)|W(a2b)|W(ab2)|W(b3) at byte {}",
            self.pos
        )))
    }
}

/// The pieces whose sum is the degree-three image sector with `na`
/// a-coloured leaves (so `5 - na` b-coloured ones).
pub fn wbar_parts(na: usize) -> Vec<Recipe> {
    use GenModule::*;
    use Recipe::{Gamma3, Module as M};
    let br = Recipe::bracket;
    match na {
        5 => vec![br(br(M(A3), M(A2B)), M(A2B))],
        4 => vec![br(br(M(A3), M(A2B)), M(AB2)), Gamma3(vec![A2B])],
        3 => vec![br(br(M(A2B), M(AB2)), M(A2B))],
        2 => vec![br(br(M(AB2), M(A2B)), M(AB2))],
        1 => vec![br(br(M(B3), M(AB2)), M(A2B)), Gamma3(vec![AB2])],
        0 => vec![br(br(M(B3), M(AB2)), M(AB2))],
        _ => panic!("a degree-three tree has five leaves"),
    }
}

pub fn sum_vector(s: &TreeSum) -> Vector<TreeKey> {
    s.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
}

pub fn vector_sum(v: &Vector<TreeKey>) -> TreeSum {
    let mut s = TreeSum::zero();
    for (k, c) in v {
        s.add_key(k.clone(), c.clone());
    }
    s
}

pub fn expand_vector(s: &TreeSum) -> Vector<Word> {
    expand(s).into_terms()
}

/// Symbolic and tensor lattices spanned by the same generating sums.
#[derive(Debug, Clone, Default)]
pub struct Span {
    pub symbolic: Lattice<TreeKey>,
    pub tensor: Lattice<Word>,
}

impl Span {
    /// Exact membership in the integer span, using the symbolic lattice as
    /// a sound shortcut before falling back to the tensor lattice.
    pub fn member(&self, s: &TreeSum) -> bool {
        if self.symbolic.contains(&sum_vector(s)) {
            return true;
        }
        self.tensor.contains(&expand_vector(s))
    }
}

/// Builds a span from generators, expanding only sums whose symbolic
/// vector enlarges the symbolic lattice; dependent generators expand to
/// dependent tensor vectors, so skipping them is sound.
pub fn build_span(gens: Vec<TreeSum>) -> Span {
    let mut symbolic = Lattice::new();
    let mut novel = Vec::new();
    for s in gens {
        if s.is_zero() {
            continue;
        }
        if symbolic.insert(sum_vector(&s)) {
            novel.push(s);
        }
    }
    let expanded: Vec<Vector<Word>> = novel.par_iter().map(expand_vector).collect();
    let mut tensor = Lattice::new();
    for v in expanded {
        tensor.insert(v);
    }
    Span { symbolic, tensor }
}

/// Evaluates recipes over a fixed support, memoising the reduced symbolic
/// basis of every sub-recipe so shared factors are computed once.
pub struct RecipeCtx<'a> {
    support: &'a [u32],
    memo: BTreeMap<String, Vec<TreeSum>>,
}

impl<'a> RecipeCtx<'a> {
    pub fn new(support: &'a [u32]) -> Self {
        RecipeCtx { support, memo: BTreeMap::new() }
    }

    pub fn support(&self) -> &[u32] {
        self.support
    }

    /// Generating sums of the recipe (not reduced).
    pub fn gens(&mut self, r: &Recipe) -> Vec<TreeSum> {
        match r {
            Recipe::Module(m) => m.gens(self.support),
            Recipe::Bracket(l, rr) => {
                let lb = self.basis(l);
                let rb = self.basis(rr);
                bracket_all(&lb, &rb)
            }
            Recipe::Gamma3(ms) => {
                let mut tripods = Vec::new();
                for m in ms {
                    tripods.extend(m.gens(self.support));
                }
                let inner = bracket_all(&tripods, &tripods);
                let inner_basis = reduce_symbolic(inner);
                bracket_all(&inner_basis, &tripods)
            }
            Recipe::ImTau3 => {
                let mut out = Vec::new();
                for na in (0..=5).rev() {
                    for part in wbar_parts(na) {
                        out.extend(self.gens(&part));
                    }
                }
                out
            }
        }
    }

    /// The reduced symbolic basis of the recipe's span, memoised.
    pub fn basis(&mut self, r: &Recipe) -> Vec<TreeSum> {
        let key = r.to_string();
        if let Some(b) = self.memo.get(&key) {
            return b.clone();
        }
        let gens = self.gens(r);
        let basis = reduce_symbolic(gens);
        self.memo.insert(key, basis.clone());
        basis
    }

    pub fn span(&mut self, r: &Recipe) -> Span {
        let gens = self.gens(r);
        build_span(gens)
    }
}

/// All nonzero pairwise brackets, in a deterministic order.
fn bracket_all(lhs: &[TreeSum], rhs: &[TreeSum]) -> Vec<TreeSum> {
    lhs.par_iter()
        .map(|x| {
            let mut row = Vec::new();
            for y in rhs {
                let z = x.bracket(y);
                if !z.is_zero() {
                    row.push(z);
                }
            }
            row
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Reduced basis of the symbolic integer span of the given sums.
fn reduce_symbolic(gens: Vec<TreeSum>) -> Vec<TreeSum> {
    let mut lat = Lattice::new();
    for s in gens {
        if !s.is_zero() {
            lat.insert(sum_vector(&s));
        }
    }
    lat.basis().map(vector_sum).collect()
}

/// Colour (a-count, b-count) of an expansion word.
pub fn word_color(word: &Word) -> (usize, usize) {
    let na = word.iter().filter(|l| l.side == Side::A).count();
    (na, word.len() - na)
}

/// Restriction of a tensor lattice to one colour sector. Every pivot is
/// colour-pure because insertion only ever combines vectors that share a
/// leading key, so filtering by the leading key's colour is exact.
pub fn sector_lattice(lat: &Lattice<Word>, color: (usize, usize)) -> Lattice<Word> {
    let mut out = Lattice::new();
    for p in lat.basis() {
        let lead = p.keys().next().expect("pivots are nonzero");
        if word_color(lead) == color {
            out.insert(p.clone());
        }
    }
    out
}

/// Splits a tensor lattice into its colour sectors.
pub fn sector_split(lat: &Lattice<Word>) -> BTreeMap<(usize, usize), Lattice<Word>> {
    let mut out: BTreeMap<(usize, usize), Lattice<Word>> = BTreeMap::new();
    for p in lat.basis() {
        let lead = p.keys().next().expect("pivots are nonzero");
        out.entry(word_color(lead)).or_default().insert(p.clone());
    }
    out
}

/// Integer sum of lattices over the same key space.
pub fn lattice_sum<K: Ord + Clone>(parts: &[&Lattice<K>]) -> Lattice<K> {
    let mut out = Lattice::new();
    for part in parts {
        for p in part.basis() {
            out.insert(p.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{a, b};

    fn t(labels: &[Label]) -> TreeSum {
        TreeSum::caterpillar(labels)
    }

    #[test]
    fn enumeration_counts() {
        let s6: Vec<u32> = (1..=6).collect();
        assert_eq!(enumerate_trees(1, 2, 1, &s6).len(), 90);
        assert_eq!(enumerate_trees(1, 3, 0, &s6).len(), 20);
        assert_eq!(enumerate_trees(1, 3, 0, &[1, 2, 3]).len(), 1);
        assert_eq!(enumerate_trees(3, 5, 0, &[1, 2]).len(), 0);
        assert_eq!(enumerate_trees(2, 2, 2, &[1, 2]).len(), 11);
        assert_eq!(enumerate_trees(4, 6, 0, &[1, 2]).len(), 3);
    }

    #[test]
    fn recipe_parse_roundtrip() {
        for text in [
            "W(ab2)",
            "[[W(a3),W(a2b)],W(ab2)]",
            "Gamma3(W(a2b))",
            "Gamma3(W(a2b),W(ab2))",
            "ImTau3",
            "[Gamma3(W(ab2)),W(b3)]",
        ] {
            let r = Recipe::parse(text).unwrap();
            assert_eq!(r.to_string(), text);
            assert_eq!(Recipe::parse(&r.to_string()).unwrap(), r);
        }
        assert!(Recipe::parse("[W(a3)]").is_err());
        assert!(Recipe::parse("W(a4)").is_err());
        assert!(Recipe::parse("W(a3) junk").is_err());
    }

    #[test]
    fn wbar_part_degrees() {
        for na in 0..=5 {
            for part in wbar_parts(na) {
                assert_eq!(part.degree(), 3, "{part}");
            }
        }
    }

    #[test]
    fn prefilter_matches_direct_span_on_small_case() {
        // triple brackets of the mixed tripods over indices 1, 2
        let support = [1, 2];
        let mut tripods = GenModule::A2B.gens(&support);
        tripods.extend(GenModule::AB2.gens(&support));
        assert_eq!(tripods.len(), 4);
        let inner = bracket_all(&tripods, &tripods);
        let triple = bracket_all(&inner, &tripods);
        assert_eq!(triple.len(), 48);
        let mut direct = Lattice::new();
        for s in &triple {
            direct.insert(expand_vector(s));
        }
        let span = build_span(triple.clone());
        assert_eq!(direct.rank(), 16);
        assert_eq!(span.tensor.rank(), 16);
        assert!(direct.equal(&span.tensor));
        for s in &triple {
            assert!(span.member(s));
        }
    }

    #[test]
    fn two_stage_gamma3_matches_direct_product() {
        let support = [1, 2];
        let mut ctx = RecipeCtx::new(&support);
        let staged = build_span(ctx.gens(&Recipe::Gamma3(vec![GenModule::A2B, GenModule::AB2])));
        let mut tripods = GenModule::A2B.gens(&support);
        tripods.extend(GenModule::AB2.gens(&support));
        let inner = bracket_all(&tripods, &tripods);
        let direct = build_span(bracket_all(&inner, &tripods));
        assert!(staged.tensor.equal(&direct.tensor));
    }

    #[test]
    fn degree_two_bracket_span_rank_and_member() {
        let support: Vec<u32> = (1..=6).collect();
        let mut ctx = RecipeCtx::new(&support);
        let recipe = Recipe::bracket(
            Recipe::Module(GenModule::AB2),
            Recipe::Module(GenModule::A2B),
        );
        let gens = ctx.gens(&recipe);
        assert_eq!(gens.len(), 5400);
        let span = build_span(gens);
        assert_eq!(span.tensor.rank(), 666);
        // the factor two is genuine: the class itself is outside the
        // integer span, twice it is inside
        let probe = t(&[b(2), a(1), b(1), a(4)]);
        assert!(!span.member(&probe));
        assert!(span.member(&probe.scaled(&Coef::from(2))));
    }

    #[test]
    fn sector_split_is_color_pure() {
        let support = [1, 2];
        let mut ctx = RecipeCtx::new(&support);
        let span = ctx.span(&Recipe::bracket(
            Recipe::Module(GenModule::A2B),
            Recipe::Module(GenModule::AB2),
        ));
        let sectors = sector_split(&span.tensor);
        assert_eq!(sectors.keys().copied().collect::<Vec<_>>(), vec![(2, 2)]);
        let back = sector_lattice(&span.tensor, (2, 2));
        assert!(back.equal(&span.tensor));
        let total: usize = sectors.values().map(Lattice::rank).sum();
        assert_eq!(total, span.tensor.rank());
    }
}

