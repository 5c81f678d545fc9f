//! Determinant, minors, spectral elements, and the Hopf structure maps.

use rustc_hash::FxHashMap;

use super::elem::{add_into, NCElem, TensorElem, WordElem};
use super::engine::{Budget, Engine};
use super::word::{Gen, Mono};
use super::AlgebraError;
use crate::coeff::Coeff;

/// `(-q)^n`.
pub fn neg_q_pow<C: Coeff>(ctx: &C::Ctx, n: i64) -> C {
    let p = C::q_pow(ctx, n);
    if n.rem_euclid(2) == 1 {
        -p
    } else {
        p
    }
}

const PERMS: [([u8; 3], i64); 6] = [
    ([1, 2, 3], 0),
    ([2, 1, 3], 1),
    ([1, 3, 2], 1),
    ([2, 3, 1], 2),
    ([3, 1, 2], 2),
    ([3, 2, 1], 3),
];

/// `Σ_σ (-q)^{l(σ)} X_{σ(1)1} X_{σ(2)2} X_{σ(3)3}` as raw words.
pub fn qdet_word<C: Coeff>(ctx: &C::Ctx) -> WordElem<C> {
    WordElem::from_terms(PERMS.iter().map(|(p, len)| {
        let w = vec![Gen::at(p[0], 1), Gen::at(p[1], 2), Gen::at(p[2], 3)];
        (w, neg_q_pow::<C>(ctx, *len))
    }))
}

/// Rows and columns kept when one row and one column are deleted.
fn kept(deleted: u8) -> (u8, u8) {
    match deleted {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    }
}

/// `X_ab X_cd - q X_ad X_cb` on rows `a<c`, columns `b<d`, as raw words.
pub fn quantum_minor_word<C: Coeff>(
    ctx: &C::Ctx,
    delete_row: u8,
    delete_col: u8,
) -> Result<WordElem<C>, AlgebraError> {
    Gen::new(delete_row, delete_col)?;
    let (a, c) = kept(delete_row);
    let (b, d) = kept(delete_col);
    Ok(WordElem::from_terms([
        (vec![Gen::at(a, b), Gen::at(c, d)], C::one()),
        (vec![Gen::at(a, d), Gen::at(c, b)], -C::q_pow(ctx, 1)),
    ]))
}

impl<C: Coeff> Engine<C> {
    /// Normal form of the quantum determinant; equals 1.
    pub fn qdet(&self) -> Result<NCElem<C>, AlgebraError> {
        self.normal_form(&qdet_word(self.ctx()))
    }

    /// Quantum minor with the given row and column deleted.
    pub fn quantum_minor(&self, delete_row: u8, delete_col: u8) -> Result<NCElem<C>, AlgebraError> {
        self.normal_form(&quantum_minor_word(self.ctx(), delete_row, delete_col)?)
    }

    /// `σ1` (trace) or `σ2` (sum of principal quantum minors).
    pub fn sigma(&self, k: u8) -> Result<NCElem<C>, AlgebraError> {
        match k {
            1 => Ok(NCElem::from_terms((1..=3).map(|i| (Mono::gen(Gen::at(i, i)), C::one())))),
            2 => {
                let mut out = NCElem::zero();
                for i in [3, 1, 2] {
                    out = out.add(&self.quantum_minor(i, i)?);
                }
                Ok(out)
            }
            _ => Err(AlgebraError::BadSigma(k)),
        }
    }

    /// `S(X_ij) = (-q)^{i-j} A[j|i]`.
    pub fn antipode_gen(&self, g: Gen) -> Result<NCElem<C>, AlgebraError> {
        let minor = self.quantum_minor(g.col(), g.row())?;
        let e = g.row() as i64 - g.col() as i64;
        Ok(minor.scale(&neg_q_pow::<C>(self.ctx(), e)))
    }

    /// Anti-multiplicative extension of [`Engine::antipode_gen`].
    pub fn antipode(&self, e: &NCElem<C>) -> Result<NCElem<C>, AlgebraError> {
        self.antipode_words(&WordElem::from(e))
    }

    pub fn antipode_words(&self, e: &WordElem<C>) -> Result<NCElem<C>, AlgebraError> {
        let images: Vec<NCElem<C>> = Gen::ALL.iter().map(|&g| self.antipode_gen(g)).collect::<Result<_, _>>()?;
        let budget = self.budget();
        let mut out = NCElem::zero();
        for (w, c) in e.iter() {
            let mut acc = NCElem::one();
            for g in w.iter().rev() {
                acc = self.mul_with(&acc, &images[g.index()], &budget)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Counit: `X_ij ↦ δ_ij`.
    pub fn counit(&self, e: &NCElem<C>) -> C {
        let mut out = C::zero();
        for (m, c) in e.iter() {
            if m.word().iter().all(|g| g.is_diagonal()) {
                out.add_assign_ref(c);
            }
        }
        out
    }

    pub fn counit_words(&self, e: &WordElem<C>) -> C {
        let mut out = C::zero();
        for (w, c) in e.iter() {
            if w.iter().all(|g| g.is_diagonal()) {
                out.add_assign_ref(c);
            }
        }
        out
    }

    /// `X_ij ↦ Σ X_{i i1} ⊗ X_{i1 i2} ⊗ ... ⊗ X_{i_{k-1} j}`.
    pub fn coproduct_gen(&self, g: Gen, arity: usize) -> TensorElem<C> {
        let mut out = TensorElem::zero(arity);
        if arity == 0 {
            return out;
        }
        let inner = arity - 1;
        for n in 0..3usize.pow(inner as u32) {
            let mut path = vec![g.row()];
            let mut k = n;
            for _ in 0..inner {
                path.push((k % 3) as u8 + 1);
                k /= 3;
            }
            path.push(g.col());
            let key = path.windows(2).map(|p| Mono::gen(Gen::at(p[0], p[1]))).collect();
            out.add_term(key, C::one());
        }
        out
    }

    /// Iterated coproduct into the `arity`-fold tensor power.
    pub fn coproduct_k(&self, e: &NCElem<C>, arity: usize) -> Result<TensorElem<C>, AlgebraError> {
        self.coproduct_words(&WordElem::from(e), arity)
    }

    pub fn coproduct(&self, e: &NCElem<C>) -> Result<TensorElem<C>, AlgebraError> {
        self.coproduct_k(e, 2)
    }

    pub fn coproduct_words(&self, e: &WordElem<C>, arity: usize) -> Result<TensorElem<C>, AlgebraError> {
        let gens: Vec<TensorElem<C>> = Gen::ALL.iter().map(|&g| self.coproduct_gen(g, arity)).collect();
        let mut out = TensorElem::zero(arity);
        for (w, c) in e.iter() {
            let mut acc = TensorElem::one(arity);
            for g in w {
                acc = self.tensor_mul(&acc, &gens[g.index()])?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Componentwise product in the tensor power.
    pub fn tensor_mul(&self, a: &TensorElem<C>, b: &TensorElem<C>) -> Result<TensorElem<C>, AlgebraError> {
        assert_eq!(a.arity(), b.arity(), "tensor arity mismatch");
        let budget = self.budget();
        let mut cache: FxHashMap<(Mono, Mono), NCElem<C>> = FxHashMap::default();
        let mut out = TensorElem::zero(a.arity());
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                let mut partial: Vec<(Vec<Mono>, C)> = vec![(Vec::new(), ca.mul_ref(cb))];
                for (u, w) in ka.iter().zip(kb) {
                    let prod = match cache.get(&(*u, *w)) {
                        Some(p) => p.clone(),
                        None => {
                            let p = self.mono_product(u, w, &budget)?;
                            cache.insert((*u, *w), p.clone());
                            p
                        }
                    };
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (key, c) in &partial {
                        for (m, d) in prod.iter() {
                            let mut k = key.clone();
                            k.push(*m);
                            next.push((k, c.mul_ref(d)));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, c);
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn mono_product(&self, u: &Mono, w: &Mono, budget: &Budget) -> Result<NCElem<C>, AlgebraError> {
        let mut acc = FxHashMap::default();
        for (m, c) in self.mono_in_matrix_algebra(u, w, budget)? {
            for (r, d) in self.reduce(&m, budget)?.iter() {
                add_into(&mut acc, *r, d.mul_ref(&c));
            }
        }
        Ok(NCElem { terms: acc })
    }

    /// Applies `f` to tensor factor `slot`, which becomes `f`'s arity.
    pub fn tensor_map_slot(
        &self,
        t: &TensorElem<C>,
        slot: usize,
        f: impl Fn(&Mono) -> Result<TensorElem<C>, AlgebraError>,
    ) -> Result<TensorElem<C>, AlgebraError> {
        let mut out: Option<TensorElem<C>> = None;
        for (key, c) in t.iter() {
            let image = f(&key[slot])?;
            let target = out.get_or_insert_with(|| TensorElem::zero(t.arity() - 1 + image.arity()));
            for (ik, d) in image.iter() {
                let mut k = key[..slot].to_vec();
                k.extend_from_slice(ik);
                k.extend_from_slice(&key[slot + 1..]);
                target.add_term(k, c.mul_ref(d));
            }
        }
        Ok(out.unwrap_or_else(|| TensorElem::zero(t.arity())))
    }

    /// Multiplies the factors of a 2-fold tensor.
    pub fn multiply_tensor(&self, t: &TensorElem<C>) -> Result<NCElem<C>, AlgebraError> {
        assert_eq!(t.arity(), 2);
        let budget = self.budget();
        let mut out = NCElem::zero();
        for (k, c) in t.iter() {
            out.add_scaled(&self.mono_product(&k[0], &k[1], &budget)?, c);
        }
        Ok(out)
    }

    pub fn is_central(&self, e: &NCElem<C>) -> Result<bool, AlgebraError> {
        for g in Gen::ALL {
            if !self.commutator(e, &self.gen(g))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Generic, Laurent};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    type L = Laurent<BigInt>;

    fn x(r: u8, c: u8) -> Gen {
        Gen::at(r, c)
    }

    fn engine() -> Engine<L> {
        Engine::new(Generic)
    }

    #[test]
    fn minors_and_sigmas_print_as_expected() {
        let e = engine();
        assert_eq!(e.quantum_minor(1, 1).unwrap().to_string(), "X22*X33 - v^6*X23*X32");
        assert_eq!(e.quantum_minor(3, 3).unwrap().to_string(), "X11*X22 - v^6*X12*X21");
        assert_eq!(e.sigma(1).unwrap().to_string(), "X11 + X22 + X33");
        assert_eq!(
            e.sigma(2).unwrap().to_string(),
            "X11*X22 + X11*X33 - v^6*X12*X21 - v^6*X13*X31 + X22*X33 - v^6*X23*X32"
        );
        assert!(e.sigma(3).is_err());
    }

    #[test]
    fn coproduct_counit_antipode_on_generators() {
        let e = engine();
        let d = e.coproduct(&e.gen(x(1, 1))).unwrap();
        assert_eq!(d.to_string(), "X11 ⊗ X11 + X12 ⊗ X21 + X13 ⊗ X31");
        assert_eq!(e.counit(&e.gen(x(1, 2))), L::zero());
        assert_eq!(e.counit(&e.gen(x(1, 1))), L::one());
        assert_eq!(e.antipode(&e.gen(x(1, 1))).unwrap(), e.quantum_minor(1, 1).unwrap());
    }

    #[test]
    fn hopf_axioms_on_generators() {
        let e = engine();
        for g in Gen::ALL {
            let x = e.gen(g);
            let d = e.coproduct(&x).unwrap();
            let left = e.tensor_map_slot(&d, 0, |m| e.coproduct(&NCElem::monomial(*m, L::one()))).unwrap();
            let right = e.tensor_map_slot(&d, 1, |m| e.coproduct(&NCElem::monomial(*m, L::one()))).unwrap();
            assert_eq!(left, right, "coassociativity at {g}");
            assert_eq!(left, e.coproduct_k(&x, 3).unwrap());

            let mut eps_id = NCElem::zero();
            let mut id_eps = NCElem::zero();
            for (k, c) in d.iter() {
                let unit = |m: Mono| e.counit(&NCElem::monomial(m, L::one()));
                eps_id.add_scaled(&NCElem::monomial(k[1], c.clone()), &unit(k[0]));
                id_eps.add_scaled(&NCElem::monomial(k[0], c.clone()), &unit(k[1]));
            }
            assert_eq!(eps_id, x);
            assert_eq!(id_eps, x);

            let delta_ij = if g.is_diagonal() { NCElem::one() } else { NCElem::zero() };
            let s_id = e.tensor_map_slot(&d, 0, |m| {
                let s = e.antipode(&NCElem::monomial(*m, L::one()))?;
                Ok(TensorElem::pure(&[s]))
            }).unwrap();
            assert_eq!(e.multiply_tensor(&s_id).unwrap(), delta_ij, "S*id at {g}");
            let id_s = e.tensor_map_slot(&d, 1, |m| {
                let s = e.antipode(&NCElem::monomial(*m, L::one()))?;
                Ok(TensorElem::pure(&[s]))
            }).unwrap();
            assert_eq!(e.multiply_tensor(&id_s).unwrap(), delta_ij, "id*S at {g}");
        }
    }

    #[test]
    fn structure_maps_respect_relations() {
        let e = engine();
        let rules = e.rules().clone();
        for a in Gen::ALL {
            for b in Gen::ALL {
                let Some(rule) = rules.get(a, b) else { continue };
                let mut rel = WordElem::word(vec![a, b], L::one());
                rel.add_term(vec![b, a], -rule.main.clone());
                for (c, p, s) in &rule.corrections {
                    rel.add_term(vec![*p, *s], -c.clone());
                }
                assert!(e.coproduct_words(&rel, 2).unwrap().is_zero(), "Δ on {a}{b}");
                assert!(e.counit_words(&rel).is_zero(), "ε on {a}{b}");
                assert!(e.antipode_words(&rel).unwrap().is_zero(), "S on {a}{b}");
            }
        }
        let mut det_minus_one = qdet_word::<L>(&Generic);
        det_minus_one.add_term(Vec::new(), -L::one());
        assert!(e.coproduct_words(&det_minus_one, 2).unwrap().is_zero());
        assert!(e.counit_words(&det_minus_one).is_zero());
        assert!(e.antipode_words(&det_minus_one).unwrap().is_zero());
    }

    #[test]
    fn centrality_examples() {
        let e = engine();
        assert!(e.is_central(&NCElem::one()).unwrap());
        assert!(!e.is_central(&e.gen(x(1, 1))).unwrap());
        assert!(e.is_central(&e.qdet().unwrap()).unwrap());
    }
}
