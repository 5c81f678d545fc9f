//! Generators `X_ij`, raw words, and sorted monomials.

use std::cmp::Ordering;
use std::fmt;

use super::AlgebraError;

/// One of the nine matrix generators, indexed row-major: `X11 = 0, ..., X33 = 8`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen(u8);

impl Gen {
    pub const ALL: [Gen; 9] = [Gen(0), Gen(1), Gen(2), Gen(3), Gen(4), Gen(5), Gen(6), Gen(7), Gen(8)];

    pub fn new(row: u8, col: u8) -> Result<Self, AlgebraError> {
        if (1..=3).contains(&row) && (1..=3).contains(&col) {
            Ok(Gen((row - 1) * 3 + (col - 1)))
        } else {
            Err(AlgebraError::BadIndex(row, col))
        }
    }

    /// Panics on out-of-range indices; for internal tables with literal indices.
    pub(crate) fn at(row: u8, col: u8) -> Self {
        Self::new(row, col).expect("generator index in 1..=3")
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < 9);
        Gen(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn row(self) -> u8 {
        self.0 / 3 + 1
    }

    pub fn col(self) -> u8 {
        self.0 % 3 + 1
    }

    pub fn is_diagonal(self) -> bool {
        self.row() == self.col()
    }

    /// True when the two generators lie in a common row or column.
    pub fn aligned(self, other: Gen) -> bool {
        self.row() == other.row() || self.col() == other.col()
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}{}", self.row(), self.col())
    }
}

/// An unreduced word.
pub type Word = Vec<Gen>;

/// A sorted (non-decreasing) word stored as its exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono([u16; 9]);

impl Mono {
    pub const ONE: Mono = Mono([0; 9]);

    pub fn from_exponents(e: [u16; 9]) -> Self {
        Mono(e)
    }

    pub fn gen(g: Gen) -> Self {
        let mut m = Self::ONE;
        m.0[g.index()] = 1;
        m
    }

    pub fn gen_pow(g: Gen, n: u16) -> Self {
        let mut m = Self::ONE;
        m.0[g.index()] = n;
        m
    }

    /// The sorted rearrangement of a word (content only; not a product).
    pub fn content_of(word: &[Gen]) -> Self {
        let mut m = Self::ONE;
        for g in word {
            m.0[g.index()] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u16; 9] {
        &self.0
    }

    pub fn exponent(&self, g: Gen) -> u16 {
        self.0[g.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 9]
    }

    /// Largest generator present.
    pub fn last(&self) -> Option<Gen> {
        (0..9).rev().find(|&i| self.0[i] > 0).map(Gen::from_index)
    }

    pub fn with(mut self, g: Gen) -> Self {
        self.0[g.index()] += 1;
        self
    }

    pub fn without(mut self, g: Gen) -> Self {
        debug_assert!(self.0[g.index()] > 0);
        self.0[g.index()] -= 1;
        self
    }

    /// Multiset product (exponent sum).
    pub fn merge(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..9 {
            m.0[i] += other.0[i];
        }
        m
    }

    pub fn scaled(&self, n: u16) -> Mono {
        let mut m = *self;
        for e in m.0.iter_mut() {
            *e *= n;
        }
        m
    }

    /// Multiset containment.
    pub fn divides(&self, other: &Mono) -> bool {
        (0..9).all(|i| self.0[i] <= other.0[i])
    }

    /// Multiset difference; requires `other.divides(self)`.
    pub fn quotient(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..9 {
            m.0[i] -= other.0[i];
        }
        m
    }

    pub fn word(&self) -> Word {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat(Gen::from_index(i)).take(e as usize));
        }
        w
    }

    /// Reduction order used by the determinant rule: degree first, then
    /// exponents compared from `X33` down to `X11`. Multiplicative, and every
    /// correction term of the quadratic relations is strictly smaller than the
    /// reordered main term under it.
    pub fn elim_cmp(&self, other: &Mono) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }

    /// Canonical print order: higher degree first, then lexicographic on the
    /// sorted word.
    pub fn print_cmp(&self, other: &Mono) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| self.cmp(other))
    }
}

/// Degree-lexicographic order on sorted words over the row-major generator order.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // The first index where exponents differ decides: more copies of
            // the smaller generator means a lexicographically smaller word.
            for i in 0..9 {
                match self.0[i].cmp(&other.0[i]) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for g in Gen::ALL {
            let e = self.exponent(g);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "{g}")?,
                _ => write!(f, "{g}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(word: &[(u8, u8)]) -> Mono {
        Mono::content_of(&word.iter().map(|&(r, c)| Gen::at(r, c)).collect::<Vec<_>>())
    }

    #[test]
    fn generator_order_is_row_major() {
        let all: Vec<String> = Gen::ALL.iter().map(|g| g.to_string()).collect();
        assert_eq!(all, ["X11", "X12", "X13", "X21", "X22", "X23", "X31", "X32", "X33"]);
        assert!(Gen::at(1, 3) < Gen::at(2, 1));
        assert!(Gen::new(0, 1).is_err());
        assert!(Gen::new(1, 4).is_err());
    }

    #[test]
    fn deglex() {
        assert!(m(&[(1, 1), (2, 2)]) < m(&[(1, 2), (2, 1)]));
        assert!(m(&[(3, 3)]) < m(&[(1, 1), (1, 1)]));
        assert!(m(&[(1, 1), (3, 3)]) < m(&[(1, 2), (1, 3)]));
    }

    #[test]
    fn elimination_order_puts_diagonal_first_in_determinant() {
        let diag = m(&[(1, 1), (2, 2), (3, 3)]);
        for other in [
            m(&[(1, 2), (2, 1), (3, 3)]),
            m(&[(1, 1), (2, 3), (3, 2)]),
            m(&[(1, 3), (2, 2), (3, 1)]),
            m(&[(1, 2), (2, 3), (3, 1)]),
            m(&[(1, 3), (2, 1), (3, 2)]),
        ] {
            assert_eq!(diag.elim_cmp(&other), Ordering::Greater);
        }
    }

    #[test]
    fn display_and_word() {
        let x = m(&[(2, 2), (1, 1), (2, 2)]);
        assert_eq!(x.to_string(), "X11*X22^2");
        assert_eq!(x.degree(), 3);
        assert_eq!(x.last(), Some(Gen::at(2, 2)));
        assert_eq!(Mono::ONE.to_string(), "1");
    }
}
