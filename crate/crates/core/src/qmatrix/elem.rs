//! Linear combinations over the coefficient ring.

use std::fmt;

use num_traits::One;
use rustc_hash::FxHashMap;

use super::word::{Gen, Mono, Word};
use crate::coeff::{Coeff, Laurent};

/// An element of the quotient algebra held in normal form: keys are sorted
/// monomials, and no stored coefficient is zero.
#[derive(Clone, PartialEq)]
pub struct NCElem<C> {
    pub(crate) terms: FxHashMap<Mono, C>,
}

impl<C: Coeff> Default for NCElem<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> NCElem<C> {
    pub fn zero() -> Self {
        Self { terms: FxHashMap::default() }
    }

    pub fn one() -> Self {
        Self::scalar(C::one())
    }

    pub fn scalar(c: C) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
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

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    /// Terms in canonical print order.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.print_cmp(b.0));
        v
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        add_into(&mut self.terms, m, c);
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (m, d) in &other.terms {
            self.add_term(*m, d.mul_ref(c));
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, d)| (*m, d.mul_ref(c))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-C::one());
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

pub(crate) fn add_into<K: std::hash::Hash + Eq, C: Coeff>(map: &mut FxHashMap<K, C>, k: K, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::hash_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut slot) => {
            slot.get_mut().add_assign_ref(&c);
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// Writes one `coeff*word` summand with the sign pulled out front.
pub(crate) fn write_term<I: crate::coeff::Int>(
    f: &mut fmt::Formatter<'_>,
    coeff: &Laurent<I>,
    word: &str,
    first: bool,
) -> fmt::Result {
    let negative = coeff.terms().next_back().is_some_and(|(_, c)| c.is_negative());
    let shown = if negative { -coeff.clone() } else { coeff.clone() };
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if word.is_empty() {
        if shown.len() > 1 {
            return write!(f, "({shown})");
        }
        return write!(f, "{shown}");
    }
    if shown.is_one() {
        write!(f, "{word}")
    } else if shown.len() > 1 {
        write!(f, "({shown})*{word}")
    } else {
        write!(f, "{shown}*{word}")
    }
}

impl<C: Coeff> fmt::Display for NCElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let word = if m.is_one() { String::new() } else { m.to_string() };
            write_term(f, &c.to_laurent(), &word, i == 0)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for NCElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear combination of raw (unsorted) words.
#[derive(Clone, PartialEq)]
pub struct WordElem<C> {
    pub(crate) terms: FxHashMap<Word, C>,
}

impl<C: Coeff> Default for WordElem<C> {
    fn default() -> Self {
        Self { terms: FxHashMap::default() }
    }
}

impl<C: Coeff> WordElem<C> {
    pub fn word(w: Word, c: C) -> Self {
        let mut out = Self::default();
        out.add_term(w, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut out = Self::default();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        add_into(&mut self.terms, w, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (u, a) in &self.terms {
            for (w, b) in &other.terms {
                let mut uw = u.clone();
                uw.extend_from_slice(w);
                out.add_term(uw, a.mul_ref(b));
            }
        }
        out
    }

    /// Reinterprets an element whose words are all sorted.
    pub fn to_sorted(&self) -> Option<NCElem<C>> {
        let mut out = NCElem::zero();
        for (w, c) in &self.terms {
            if w.windows(2).any(|p| p[0] > p[1]) {
                return None;
            }
            out.add_term(Mono::content_of(w), c.clone());
        }
        Some(out)
    }
}

impl<C: Coeff> From<&NCElem<C>> for WordElem<C> {
    fn from(e: &NCElem<C>) -> Self {
        Self::from_terms(e.iter().map(|(m, c)| (m.word(), c.clone())))
    }
}

impl<C: Coeff> fmt::Debug for WordElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        if v.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in v.into_iter().enumerate() {
            let word: Vec<String> = w.iter().map(Gen::to_string).collect();
            write_term(f, &c.to_laurent(), &word.join("*"), i == 0)?;
        }
        Ok(())
    }
}

/// Element of a `k`-fold tensor power; each component in normal form.
#[derive(Clone, PartialEq)]
pub struct TensorElem<C> {
    arity: usize,
    pub(crate) terms: FxHashMap<Vec<Mono>, C>,
}

impl<C: Coeff> TensorElem<C> {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: FxHashMap::default() }
    }

    pub fn one(arity: usize) -> Self {
        let mut out = Self::zero(arity);
        out.add_term(vec![Mono::ONE; arity], C::one());
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, key: Vec<Mono>, c: C) {
        debug_assert_eq!(key.len(), self.arity);
        add_into(&mut self.terms, key, c);
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        for (k, d) in &other.terms {
            self.add_term(k.clone(), d.mul_ref(c));
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-C::one());
        out
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

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Mono>, &C)> {
        self.terms.iter()
    }

    /// Pure tensor `a_1 ⊗ ... ⊗ a_k`.
    pub fn pure(factors: &[NCElem<C>]) -> Self {
        let mut out = Self::one(0);
        for f in factors {
            let mut next = Self::zero(out.arity + 1);
            for (k, c) in &out.terms {
                for (m, d) in f.iter() {
                    let mut key = k.clone();
                    key.push(*m);
                    next.add_term(key, c.mul_ref(d));
                }
            }
            out = next;
        }
        out
    }
}

impl<C: Coeff> fmt::Display for TensorElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            a.0.iter()
                .zip(b.0.iter())
                .map(|(x, y)| x.print_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        for (i, (k, c)) in v.into_iter().enumerate() {
            let word: Vec<String> = k.iter().map(Mono::to_string).collect();
            write_term(f, &c.to_laurent(), &word.join(" ⊗ "), i == 0)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for TensorElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
