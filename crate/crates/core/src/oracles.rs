//! Ground truth that does not go through the constructed automata.
//!
//! Free products are computed on reduced block sequences, wreath products on
//! `(tuple, top)` pairs, and word equality by comparing full level tables.
//! The constructions are checked against these.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::automaton::{Automaton, Word};
use crate::constructions::{ConstructionOutput, Phase, StateRole, SymbolKind};
use crate::element::{compose, Element};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::Limits;

/// A semigroup with computable multiplication.
pub trait Semigroup {
    type Elem: Clone + Eq + Hash + Debug;

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

/// `Σ(𝒜)` with elements in canonical form.
#[derive(Debug, Clone, Copy)]
pub struct AutomatonSemigroup<'a>(pub &'a Automaton);

impl AutomatonSemigroup<'_> {
    pub fn generator(&self, q: usize) -> Element {
        Element::of_state(self.0, q)
    }
}

impl Semigroup for AutomatonSemigroup<'_> {
    type Elem = Element;

    fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        compose(a, b)
    }
}

impl Semigroup for FiniteMonoid {
    type Elem = usize;

    fn multiply(&self, a: &usize, b: &usize) -> Result<usize> {
        if *a >= self.len() || *b >= self.len() {
            return Err(Error::usage("monoid element out of range"));
        }
        Ok(self.mul(*a, *b))
    }
}

/// The one-element semigroup.
#[derive(Debug, Clone, Copy, Default)]
pub struct Trivial;

impl Semigroup for Trivial {
    type Elem = ();

    fn multiply(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Block<L, R> {
    Left(L),
    Right(R),
}

impl<L, R> Block<L, R> {
    pub fn is_left(&self) -> bool {
        matches!(self, Block::Left(_))
    }
}

/// Reduced word of the semigroup free product: adjacent blocks come from
/// different factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm<L, R> {
    blocks: Vec<Block<L, R>>,
}

impl<L, R> NormalForm<L, R> {
    pub fn left(x: L) -> Self {
        NormalForm {
            blocks: vec![Block::Left(x)],
        }
    }

    pub fn right(x: R) -> Self {
        NormalForm {
            blocks: vec![Block::Right(x)],
        }
    }

    pub fn blocks(&self) -> &[Block<L, R>] {
        &self.blocks
    }

    pub fn starts_left(&self) -> bool {
        self.blocks[0].is_left()
    }
}

/// `S ⋆ T`, the semigroup free product.
#[derive(Debug, Clone, Copy)]
pub struct FreeProduct<'a, S, T> {
    pub left: &'a S,
    pub right: &'a T,
}

impl<'a, S: Semigroup, T: Semigroup> FreeProduct<'a, S, T> {
    pub fn new(left: &'a S, right: &'a T) -> Self {
        FreeProduct { left, right }
    }

    /// Concatenate, multiplying the boundary blocks when they come from the
    /// same factor.
    pub fn multiply(
        &self,
        x: &NormalForm<S::Elem, T::Elem>,
        y: &NormalForm<S::Elem, T::Elem>,
    ) -> Result<NormalForm<S::Elem, T::Elem>> {
        let mut blocks = x.blocks.clone();
        let mut rest = y.blocks.iter();
        let first = rest.next().expect("normal forms are nonempty");
        let last = blocks.pop().expect("normal forms are nonempty");
        match (last, first) {
            (Block::Left(a), Block::Left(b)) => blocks.push(Block::Left(self.left.multiply(&a, b)?)),
            (Block::Right(a), Block::Right(b)) => {
                blocks.push(Block::Right(self.right.multiply(&a, b)?))
            }
            (a, b) => {
                blocks.push(a);
                blocks.push(b.clone());
            }
        }
        blocks.extend(rest.cloned());
        Ok(NormalForm { blocks })
    }

    /// Product of a nonempty sequence of normal forms, left to right.
    pub fn product<'b, I>(&self, items: I) -> Result<NormalForm<S::Elem, T::Elem>>
    where
        I: IntoIterator<Item = &'b NormalForm<S::Elem, T::Elem>>,
        S::Elem: 'b,
        T::Elem: 'b,
    {
        let mut iter = items.into_iter();
        let mut acc = iter
            .next()
            .ok_or_else(|| Error::usage("empty product in a semigroup"))?
            .clone();
        for x in iter {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }
}

pub fn fp_multiply<S: Semigroup, T: Semigroup>(
    fp: &FreeProduct<'_, S, T>,
    x: &NormalForm<S::Elem, T::Elem>,
    y: &NormalForm<S::Elem, T::Elem>,
) -> Result<NormalForm<S::Elem, T::Elem>> {
    fp.multiply(x, y)
}

/// `l(w̄)`: the number of blocks.
pub fn fp_reduced_length<L, R>(x: &NormalForm<L, R>) -> usize {
    x.blocks.len()
}

/// An element of `M¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WithIdentity<N> {
    Identity,
    Elem(N),
}

/// Multiplication in `(S ⋆ T)¹`.
pub fn fp_adjoin_identity_multiply<S: Semigroup, T: Semigroup>(
    fp: &FreeProduct<'_, S, T>,
    x: &WithIdentity<NormalForm<S::Elem, T::Elem>>,
    y: &WithIdentity<NormalForm<S::Elem, T::Elem>>,
) -> Result<WithIdentity<NormalForm<S::Elem, T::Elem>>> {
    Ok(match (x, y) {
        (WithIdentity::Identity, other) | (other, WithIdentity::Identity) => other.clone(),
        (WithIdentity::Elem(a), WithIdentity::Elem(b)) => WithIdentity::Elem(fp.multiply(a, b)?),
    })
}

/// Normal form of a word over the states of a free-product construction,
/// with factor elements read off the factor automata.
pub fn free_product_value(
    out: &ConstructionOutput,
    left: &Automaton,
    right: &Automaton,
    word: &Word,
) -> Result<WithIdentity<NormalForm<Element, Element>>> {
    let (sl, sr) = (AutomatonSemigroup(left), AutomatonSemigroup(right));
    let fp = FreeProduct::new(&sl, &sr);
    let mut acc = WithIdentity::Identity;
    for &q in word.states() {
        let letter = match out.roles.get(q) {
            Some(StateRole::Left(i)) => WithIdentity::Elem(NormalForm::left(sl.generator(*i))),
            Some(StateRole::Right(i)) => WithIdentity::Elem(NormalForm::right(sr.generator(*i))),
            Some(StateRole::Identity) => WithIdentity::Identity,
            _ => return Err(Error::usage(format!("state {q} is not a free-product generator"))),
        };
        acc = fp_adjoin_identity_multiply(&fp, &acc, &letter)?;
    }
    Ok(acc)
}

/// Which factor a free-product state belongs to.
fn side_of(out: &ConstructionOutput, q: usize) -> Result<bool> {
    match out.roles.get(q) {
        Some(StateRole::Left(_)) => Ok(true),
        Some(StateRole::Right(_)) => Ok(false),
        _ => Err(Error::usage(format!(
            "state {q} is not a factor state of a free-product construction"
        ))),
    }
}

/// Reduced length and first factor of a word over factor states, computed in
/// the free product of two trivial semigroups.
pub fn reduced_shape(out: &ConstructionOutput, word: &Word) -> Result<(usize, bool)> {
    let fp = FreeProduct::new(&Trivial, &Trivial);
    let letters = word
        .states()
        .iter()
        .map(|&q| {
            Ok(if side_of(out, q)? {
                NormalForm::left(())
            } else {
                NormalForm::right(())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let nf = fp.product(&letters)?;
    Ok((fp_reduced_length(&nf), nf.starts_left()))
}

/// An element of `S ≀ T = Sᵀ ⋊ T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    /// `tuple[i]` is the coordinate at `tᵢ`.
    pub tuple: Vec<Element>,
    pub top: usize,
}

impl WreathElement {
    pub fn identity(symbols: usize, monoid: &FiniteMonoid) -> Self {
        WreathElement {
            tuple: vec![Element::identity(symbols); monoid.len()],
            top: monoid.identity(),
        }
    }
}

/// `(f, t)(g, u) = (f·gᵗ, tu)` where `(gᵗ)ᵢ = g_{tᵢ·t}`.
pub fn wreath_multiply(
    x: &WreathElement,
    y: &WreathElement,
    monoid: &FiniteMonoid,
) -> Result<WreathElement> {
    let n = monoid.len();
    if x.tuple.len() != n || y.tuple.len() != n || x.top >= n || y.top >= n {
        return Err(Error::usage("wreath element does not match the top monoid"));
    }
    let tuple = (0..n)
        .map(|i| compose(&x.tuple[i], &y.tuple[monoid.mul(i, x.top)]))
        .collect::<Result<Vec<_>>>()?;
    Ok(WreathElement {
        tuple,
        top: monoid.mul(x.top, y.top),
    })
}

/// The wreath element a generator of a wreath construction stands for.
pub fn wreath_generator_value(
    out: &ConstructionOutput,
    base: &Automaton,
    q: usize,
) -> Result<WreathElement> {
    let monoid = out
        .monoid()
        .ok_or_else(|| Error::usage("not a wreath construction"))?;
    let entries = match out.roles.get(q) {
        Some(StateRole::Tuple(t)) if t.phase == Phase::Pre => &t.entries,
        Some(StateRole::Product(v)) => v,
        Some(StateRole::Top(t)) => {
            return Ok(WreathElement {
                tuple: vec![Element::identity(base.num_symbols()); monoid.len()],
                top: *t,
            })
        }
        _ => return Err(Error::usage(format!("state {q} is not a wreath generator"))),
    };
    Ok(WreathElement {
        tuple: entries.iter().map(|&s| Element::of_state(base, s)).collect(),
        top: monoid.identity(),
    })
}

/// Product of the generator values along a word.
pub fn wreath_value(out: &ConstructionOutput, base: &Automaton, word: &Word) -> Result<WreathElement> {
    let monoid = out
        .monoid()
        .ok_or_else(|| Error::usage("not a wreath construction"))?;
    let mut acc = WreathElement::identity(base.num_symbols(), monoid);
    for &q in word.states() {
        acc = wreath_multiply(&acc, &wreath_generator_value(out, base, q)?, monoid)?;
    }
    Ok(acc)
}

/// Compare full level tables at every depth up to `depth`.
pub fn brute_equal(aut: &Automaton, w: &Word, w2: &Word, depth: usize, limits: &Limits) -> Result<bool> {
    for d in 0..=depth {
        if aut.act_on_level(w, d, limits)? != aut.act_on_level(w2, d, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same predicate as [`brute_equal`] without materialising level
/// tables: runs both words' state tuples in lockstep, level by level, keeping
/// the set of configuration pairs reachable by strings of each length. The
/// tables agree up to `depth` iff every pair reached before `depth` emits
/// equal outputs on every symbol.
pub fn layered_equal(aut: &Automaton, w: &Word, w2: &Word, depth: usize) -> Result<bool> {
    aut.check_word(w)?;
    aut.check_word(w2)?;
    let step = |config: &[usize], x: usize| -> (Vec<usize>, usize) {
        let mut x = x;
        let next = config
            .iter()
            .map(|&q| {
                let (r, y) = aut.delta(q, x);
                x = y;
                r
            })
            .collect();
        (next, x)
    };
    let mut seen = HashSet::new();
    let mut layer = vec![(w.states().to_vec(), w2.states().to_vec())];
    seen.insert(layer[0].clone());
    for _ in 0..depth {
        let mut next = Vec::new();
        for (c1, c2) in &layer {
            for x in 0..aut.num_symbols() {
                let (n1, y1) = step(c1, x);
                let (n2, y2) = step(c2, x);
                if y1 != y2 {
                    return Ok(false);
                }
                let pair = (n1, n2);
                if seen.insert(pair.clone()) {
                    next.push(pair);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(true)
}

/// The four control symbols of a free-product alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Dollar,
    Hash,
    DollarMarked,
    HashMarked,
}

/// Expected prefixes of `($#)^ω·w` and `(#$)^ω·w` for a word of reduced
/// length `len` whose first block lies in the left (`starts_left`) or right
/// factor.
pub fn expected_xw_yw(len: usize, starts_left: bool, prefix: usize) -> (Vec<Control>, Vec<Control>) {
    use Control::*;
    assert!(len >= 1, "reduced length is positive");
    let k = len / 2;
    let even = len.is_multiple_of(2);
    // (marked pair repeated `reps` times, optional lone marked symbol, periodic tail)
    let build = |pair: [Control; 2], reps: usize, lone: Option<Control>, tail: [Control; 2]| {
        let mut v = Vec::with_capacity(prefix);
        for _ in 0..reps {
            v.extend_from_slice(&pair);
        }
        v.extend(lone);
        while v.len() < prefix {
            v.extend_from_slice(&tail);
        }
        v.truncate(prefix);
        v
    };
    let dh = [DollarMarked, HashMarked];
    let hd = [HashMarked, DollarMarked];
    match (starts_left, even) {
        (true, true) => (
            build(dh, k - 1, Some(DollarMarked), [Hash, Dollar]),
            build(hd, k, None, [Hash, Dollar]),
        ),
        (true, false) => (
            build(dh, k, None, [Dollar, Hash]),
            build(hd, k, Some(HashMarked), [Dollar, Hash]),
        ),
        // obtained from the left cases by exchanging $ and #
        (false, true) => (
            build(dh, k, None, [Dollar, Hash]),
            build(hd, k - 1, Some(HashMarked), [Dollar, Hash]),
        ),
        (false, false) => (
            build(dh, k, Some(DollarMarked), [Hash, Dollar]),
            build(hd, k, None, [Hash, Dollar]),
        ),
    }
}

/// Outcome of comparing `x_w` and `y_w` with their case formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XwReport {
    pub word: Word,
    pub reduced_length: usize,
    pub starts_left: bool,
    pub x_expected: Vec<usize>,
    pub x_actual: Vec<usize>,
    pub y_expected: Vec<usize>,
    pub y_actual: Vec<usize>,
}

impl XwReport {
    pub fn x_matches(&self) -> bool {
        self.x_expected == self.x_actual
    }

    pub fn y_matches(&self) -> bool {
        self.y_expected == self.y_actual
    }

    pub fn passed(&self) -> bool {
        self.x_matches() && self.y_matches()
    }
}

/// Compute `($#)^ω·w` and `(#$)^ω·w` on prefixes of length `2(k_limit + 1)`
/// and compare them with the formulas for the reduced length of `w`.
pub fn check_xw_yw(out: &ConstructionOutput, word: &Word, k_limit: usize) -> Result<XwReport> {
    let sym = |kind| {
        out.symbol(kind)
            .ok_or_else(|| Error::usage("automaton has no free-product control symbols"))
    };
    let dollar = sym(SymbolKind::Dollar)?;
    let hash = sym(SymbolKind::Hash)?;
    let dollar_m = sym(SymbolKind::DollarMarked)?;
    let hash_m = sym(SymbolKind::HashMarked)?;
    let to_index = |c: &Control| match c {
        Control::Dollar => dollar,
        Control::Hash => hash,
        Control::DollarMarked => dollar_m,
        Control::HashMarked => hash_m,
    };

    let (len, starts_left) = reduced_shape(out, word)?;
    let prefix = 2 * (k_limit + 1);
    let periodic = |a: usize, b: usize| (0..prefix).map(|i| if i % 2 == 0 { a } else { b }).collect::<Vec<_>>();
    let aut = &out.automaton;
    let x_actual = aut.act(word, &periodic(dollar, hash))?;
    let y_actual = aut.act(word, &periodic(hash, dollar))?;
    let (x, y) = expected_xw_yw(len, starts_left, prefix);
    Ok(XwReport {
        word: word.clone(),
        reduced_length: len,
        starts_left,
        x_expected: x.iter().map(to_index).collect(),
        x_actual,
        y_expected: y.iter().map(to_index).collect(),
        y_actual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::free_product;
    use crate::element::{equal, word_to_element};
    use crate::fixtures::{adding_machine, c2_monoid, c2_swap, trivial, zero_monoid};

    #[test]
    fn free_product_blocks() {
        let m = c2_monoid();
        let fp = FreeProduct::new(&m, &m);
        let s = NormalForm::left(1);
        let t = NormalForm::right(1);
        let st = fp.multiply(&s, &t).unwrap();
        assert_eq!(fp_reduced_length(&st), 2);
        let s_st = fp.multiply(&s, &st).unwrap();
        assert_eq!(s_st.blocks(), &[Block::Left(0), Block::Right(1)]);
        // [s,t]·[t'] over trivial factors merges
        let tf = FreeProduct::new(&Trivial, &Trivial);
        let st = tf.multiply(&NormalForm::left(()), &NormalForm::right(())).unwrap();
        assert_eq!(fp_reduced_length(&tf.multiply(&st, &NormalForm::right(())).unwrap()), 2);
    }

    #[test]
    fn free_product_associative() {
        let a = adding_machine();
        let g = c2_swap();
        let (sa, sg) = (AutomatonSemigroup(&a), AutomatonSemigroup(&g));
        let fp = FreeProduct::new(&sa, &sg);
        let letters = [
            NormalForm::left(sa.generator(0)),
            NormalForm::left(sa.generator(1)),
            NormalForm::right(sg.generator(0)),
            NormalForm::right(sg.generator(1)),
        ];
        // all triples of products of two letters
        let pairs: Vec<_> = letters
            .iter()
            .flat_map(|x| letters.iter().map(move |y| (x, y)))
            .map(|(x, y)| fp.multiply(x, y).unwrap())
            .collect();
        for x in &pairs {
            for y in &letters {
                for z in &pairs {
                    let l = fp.multiply(&fp.multiply(x, y).unwrap(), z).unwrap();
                    let r = fp.multiply(x, &fp.multiply(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn factor_mismatch_is_usage_error() {
        let a = adding_machine();
        let t = trivial("e", "x");
        let (sa, st) = (AutomatonSemigroup(&a), AutomatonSemigroup(&t));
        let fp = FreeProduct::new(&sa, &sa);
        let x = NormalForm::left(sa.generator(0));
        let y = NormalForm::left(st.generator(0));
        assert!(matches!(fp.multiply(&x, &y), Err(Error::Usage(_))));
    }

    #[test]
    fn adjoined_identity_laws() {
        let fp = FreeProduct::new(&Trivial, &Trivial);
        let x = WithIdentity::Elem(NormalForm::left(()));
        let one = WithIdentity::Identity;
        assert_eq!(fp_adjoin_identity_multiply(&fp, &one, &x).unwrap(), x);
        assert_eq!(fp_adjoin_identity_multiply(&fp, &x, &one).unwrap(), x);
        assert_eq!(fp_adjoin_identity_multiply(&fp, &one, &one).unwrap(), one);
    }

    fn n0_element(k: usize) -> Element {
        let a = adding_machine();
        let mut e = Element::identity(2);
        for _ in 0..k {
            e = compose(&e, &Element::of_state(&a, 0)).unwrap();
        }
        e
    }

    #[test]
    fn wreath_c2_examples() {
        let m = c2_monoid();
        let (one, g) = (0, 1);
        let sigma = n0_element(1);
        let e = n0_element(0);
        let x = WreathElement {
            tuple: vec![sigma.clone(), e.clone()],
            top: g,
        };
        let sq = wreath_multiply(&x, &x, &m).unwrap();
        assert_eq!(sq.tuple, vec![sigma.clone(), sigma.clone()]);
        assert_eq!(sq.top, one);

        let id = WreathElement::identity(2, &m);
        assert_eq!(wreath_multiply(&id, &id, &m).unwrap(), id);

        // ((e,e),g)·((f1,f2),1) = ((f2,f1),g)
        let swap = WreathElement {
            tuple: vec![e.clone(), e.clone()],
            top: g,
        };
        let f = WreathElement {
            tuple: vec![n0_element(1), n0_element(2)],
            top: one,
        };
        let p = wreath_multiply(&swap, &f, &m).unwrap();
        assert_eq!(p.tuple, vec![n0_element(2), n0_element(1)]);
        assert_eq!(p.top, g);
    }

    #[test]
    fn wreath_associative_with_identity() {
        for m in [c2_monoid(), zero_monoid()] {
            let mut items = Vec::new();
            for top in 0..2 {
                for a in 0..3 {
                    for b in 0..2 {
                        items.push(WreathElement {
                            tuple: vec![n0_element(a), n0_element(b)],
                            top,
                        });
                    }
                }
            }
            let id = WreathElement::identity(2, &m);
            for x in &items {
                assert_eq!(&wreath_multiply(&id, x, &m).unwrap(), x);
                assert_eq!(&wreath_multiply(x, &id, &m).unwrap(), x);
                for y in &items {
                    let xy = wreath_multiply(x, y, &m).unwrap();
                    for z in &items {
                        let l = wreath_multiply(&xy, z, &m).unwrap();
                        let r = wreath_multiply(x, &wreath_multiply(y, z, &m).unwrap(), &m).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn brute_equality_examples() {
        let a = adding_machine();
        let limits = Limits::default();
        let s = Word::parse(&a, "σ").unwrap();
        let ss = Word::parse(&a, "σ,σ").unwrap();
        assert!(brute_equal(&a, &s, &s, 6, &limits).unwrap());
        assert!(!brute_equal(&a, &s, &ss, 2, &limits).unwrap());
        assert!(brute_equal(&a, &s, &ss, 0, &limits).unwrap());
        let fp = free_product(&trivial("e", "x"), 0, &trivial("f", "y"), 0).unwrap();
        let l = Word::single(0);
        assert!(brute_equal(&fp.automaton, &l.push(0), &l, 6, &limits).unwrap());
        assert!(layered_equal(&fp.automaton, &l.push(0), &l, 6).unwrap());
        assert!(!layered_equal(&a, &s, &ss, 2).unwrap());
        assert!(layered_equal(&a, &s, &ss, 0).unwrap());
        // σ⁴ and e agree on strings shorter than 3 only
        let s4 = Word::parse(&a, "σ,σ,σ,σ").unwrap();
        let e = Word::parse(&a, "e").unwrap();
        for d in 0..5 {
            assert_eq!(
                layered_equal(&a, &s4, &e, d).unwrap(),
                brute_equal(&a, &s4, &e, d, &limits).unwrap()
            );
        }
        assert!(layered_equal(&a, &s4, &e, 2).unwrap());
        assert!(!layered_equal(&a, &s4, &e, 3).unwrap());
    }

    fn ctrl(out: &ConstructionOutput, s: &str) -> Vec<usize> {
        out.automaton.parse_symbols(s).unwrap()
    }

    #[test]
    fn xw_formulas_small_cases() {
        let fp = free_product(&trivial("e", "x"), 0, &trivial("f", "y"), 0).unwrap();
        let (s, t) = (0, 1);
        let r = check_xw_yw(&fp, &Word::single(s), 0).unwrap();
        assert_eq!(r.reduced_length, 1);
        assert_eq!(r.x_expected, ctrl(&fp, "$#"));
        assert!(r.passed(), "{r:?}");

        let w = Word::from_indices(vec![s, t]).unwrap();
        let r = check_xw_yw(&fp, &w, 2).unwrap();
        assert_eq!(r.reduced_length, 2);
        assert_eq!(r.x_expected, ctrl(&fp, "$°#$#$#"));
        assert_eq!(r.y_expected, ctrl(&fp, "#°$°#$#$"));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn faithfulness_witness() {
        // β = ($#)^{i-1} α ($#)^{k-i+1} separates s_i from s_i' in
        // w = s1 t1 .. sk tk, here with S = ℕ₀ and T = C₂
        let a = adding_machine();
        let g = c2_swap();
        let fp = free_product(&a, 1, &g, 1).unwrap();
        let aut = &fp.automaton;
        let n1 = a.num_states();
        let (sigma, e, swap) = (0, 1, n1);
        let k = 2;
        let w = Word::from_indices(vec![sigma, swap, e, swap]).unwrap();
        let w2 = Word::from_indices(vec![sigma, swap, sigma, swap]).unwrap();
        assert!(!equal(aut, &w, &w2).unwrap());
        let i = 2;
        let alpha = ctrl(&fp, "L.0");
        let mut beta = Vec::new();
        for _ in 0..i - 1 {
            beta.extend(ctrl(&fp, "$#"));
        }
        beta.extend(&alpha);
        for _ in 0..k - i + 1 {
            beta.extend(ctrl(&fp, "$#"));
        }
        let expect = |s_i: usize| {
            let mut v = Vec::new();
            for _ in 0..i - 1 {
                v.extend(ctrl(&fp, "$°#°"));
            }
            let image = word_to_element(&a, &Word::single(s_i)).unwrap().act(&[0]);
            v.extend(image.iter().map(|&x| fp.automaton.symbol_index(&format!("L.{}°", a.alphabet()[x])).unwrap()));
            for _ in 0..k - i {
                v.extend(ctrl(&fp, "$°#°"));
            }
            v.extend(ctrl(&fp, "$°#"));
            v
        };
        assert_eq!(aut.act(&w, &beta).unwrap(), expect(e));
        assert_eq!(aut.act(&w2, &beta).unwrap(), expect(sigma));
    }
}
