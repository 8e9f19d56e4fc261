//! Concrete group backends: free, free abelian, direct product with a finite
//! cyclic factor, and free-by-cyclic semidirect products.

use std::collections::BTreeMap;

use super::{DynModel, GroupError, GroupModel};
use crate::words::{Generator, Letter, Sign, Word};

/// The free group on an explicit generator list; normal forms are freely
/// reduced words, which `Word` maintains by construction.
#[derive(Clone, Debug)]
pub struct FreeGroupModel {
    alphabet: Vec<Generator>,
}

impl FreeGroupModel {
    pub fn new(alphabet: Vec<Generator>) -> Self {
        FreeGroupModel { alphabet }
    }
}

impl GroupModel for FreeGroupModel {
    fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Result<Word, GroupError> {
        self.check_alphabet(w)?;
        Ok(w.clone())
    }

    fn describe(&self) -> String {
        let names: Vec<String> = self.alphabet.iter().map(|g| g.to_string()).collect();
        format!("free({})", names.join(", "))
    }
}

/// The free abelian group on an explicit generator list; the normal form
/// sorts letters into alphabet order and collapses exponents.
#[derive(Clone, Debug)]
pub struct FreeAbelianModel {
    alphabet: Vec<Generator>,
}

impl FreeAbelianModel {
    pub fn new(alphabet: Vec<Generator>) -> Self {
        FreeAbelianModel { alphabet }
    }
}

impl GroupModel for FreeAbelianModel {
    fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Result<Word, GroupError> {
        self.check_alphabet(w)?;
        let mut out = Word::identity();
        for g in &self.alphabet {
            out = out.concat(&Word::from_gen(g).pow(w.exponent_sum(g)));
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        let names: Vec<String> = self.alphabet.iter().map(|g| g.to_string()).collect();
        format!("abelian({})", names.join(", "))
    }
}

/// `base × Z/kZ` with the cyclic factor generated by a fresh central letter
/// `z` of order `k`. Normal forms are `(base normal form)·z^e` with
/// `0 <= e < k`; centrality lets every word be split by pulling all `z`
/// letters to the right without disturbing the base letters' order.
pub struct DirectWithCyclicModel {
    base: DynModel,
    z: Generator,
    k: u32,
    alphabet: Vec<Generator>,
}

impl DirectWithCyclicModel {
    pub fn new(base: DynModel, z: Generator, k: u32) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::Model { msg: "cyclic order k must be positive".into() });
        }
        if base.alphabet().contains(&z) {
            return Err(GroupError::Model {
                msg: format!("cyclic generator `{z}` already names a base generator"),
            });
        }
        let mut alphabet = base.alphabet().to_vec();
        alphabet.push(z.clone());
        Ok(DirectWithCyclicModel { base, z, k, alphabet })
    }

    /// Splits `w` into its base-letter subword (relative order preserved)
    /// and the exponent of `z`.
    fn split(&self, w: &Word) -> (Word, i64) {
        let base_letters: Vec<Letter> =
            w.letters().iter().filter(|l| l.gen != self.z).cloned().collect();
        (Word::from_letters(base_letters), w.exponent_sum(&self.z))
    }

    fn cyclic_part(&self, e: i64) -> Word {
        Word::from_gen(&self.z).pow(e.rem_euclid(self.k as i64))
    }
}

impl GroupModel for DirectWithCyclicModel {
    fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Result<Word, GroupError> {
        self.check_alphabet(w)?;
        let (b, e) = self.split(w);
        Ok(self.base.normal_form(&b)?.concat(&self.cyclic_part(e)))
    }

    fn equal(&self, u: &Word, v: &Word) -> Result<bool, GroupError> {
        self.check_alphabet(u)?;
        self.check_alphabet(v)?;
        let (bu, eu) = self.split(u);
        let (bv, ev) = self.split(v);
        if eu.rem_euclid(self.k as i64) != ev.rem_euclid(self.k as i64) {
            return Ok(false);
        }
        self.base.equal(&bu, &bv)
    }

    fn has_canonical_normal_form(&self) -> bool {
        self.base.has_canonical_normal_form()
    }

    fn describe(&self) -> String {
        format!("direct({}, {}, {})", self.base.describe(), self.z, self.k)
    }
}

/// `F ⋊ Z`: a free group on `free_gens` extended by a cyclic letter whose
/// conjugation action is the automorphism `phi` given by substitution rules
/// (with its inverse supplied and checked). Normal forms are
/// `cyclic^i · h` with `h` a reduced word over the free part, using
/// `h·cyclic = cyclic·phi_inv(h)` and `h·cyclic^-1 = cyclic^-1·phi(h)`.
#[derive(Clone, Debug)]
pub struct FreeByCyclicModel {
    cyclic: Generator,
    free_gens: Vec<Generator>,
    phi: BTreeMap<Generator, Word>,
    phi_inv: BTreeMap<Generator, Word>,
    alphabet: Vec<Generator>,
}

impl FreeByCyclicModel {
    pub fn new(
        cyclic: Generator,
        free_gens: Vec<Generator>,
        phi: BTreeMap<Generator, Word>,
        phi_inv: BTreeMap<Generator, Word>,
    ) -> Result<Self, GroupError> {
        if free_gens.contains(&cyclic) {
            return Err(GroupError::Model {
                msg: format!("cyclic generator `{cyclic}` already names a free generator"),
            });
        }
        for (name, rules) in [("phi", &phi), ("phi_inv", &phi_inv)] {
            for g in &free_gens {
                let image = rules.get(g).ok_or_else(|| GroupError::Model {
                    msg: format!("{name} is missing a rule for `{g}`"),
                })?;
                if let Some(bad) = image.first_gen_outside(&free_gens) {
                    return Err(GroupError::Model {
                        msg: format!("{name}({g}) = `{image}` leaves the free part via `{bad}`"),
                    });
                }
            }
            for g in rules.keys() {
                if !free_gens.contains(g) {
                    return Err(GroupError::Model {
                        msg: format!("{name} has a rule for `{g}`, which is not a free generator"),
                    });
                }
            }
        }
        // The two rule sets must actually be mutually inverse automorphisms.
        for g in &free_gens {
            let round_trip = phi[g].substitute(&phi_inv).map_err(|e| GroupError::Model {
                msg: format!("phi_inv is not defined on the image of `{g}`: {e}"),
            })?;
            let back = phi_inv[g].substitute(&phi).map_err(|e| GroupError::Model {
                msg: format!("phi is not defined on the image of `{g}`: {e}"),
            })?;
            if round_trip != Word::from_gen(g) || back != Word::from_gen(g) {
                return Err(GroupError::Model {
                    msg: format!(
                        "substitution rules are not mutually inverse at `{g}`: \
                         phi_inv(phi({g})) = `{round_trip}`, phi(phi_inv({g})) = `{back}`"
                    ),
                });
            }
        }
        let mut alphabet = vec![cyclic.clone()];
        alphabet.extend(free_gens.iter().cloned());
        Ok(FreeByCyclicModel { cyclic, free_gens, phi, phi_inv, alphabet })
    }

    /// The Klein bottle group `< b a | b a b^-1 a >`: Z ⋊ Z where the cyclic
    /// letter inverts the free letter.
    pub fn klein_bottle(cyclic: Generator, free: Generator) -> Self {
        let inv = Word::from_gen(&free).inverse();
        let rules: BTreeMap<Generator, Word> = [(free.clone(), inv)].into();
        FreeByCyclicModel::new(cyclic, vec![free], rules.clone(), rules).unwrap()
    }

    pub fn cyclic_generator(&self) -> &Generator {
        &self.cyclic
    }

    pub fn free_generators(&self) -> &[Generator] {
        &self.free_gens
    }

    fn fmt_rules(rules: &BTreeMap<Generator, Word>, order: &[Generator]) -> String {
        let parts: Vec<String> = order.iter().map(|g| format!("{g} : {}", rules[g])).collect();
        parts.join(", ")
    }
}

impl GroupModel for FreeByCyclicModel {
    fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Result<Word, GroupError> {
        self.check_alphabet(w)?;
        let mut i: i64 = 0;
        let mut h = Word::identity();
        for l in w.letters() {
            if l.gen == self.cyclic {
                match l.sign {
                    Sign::Pos => {
                        i += 1;
                        h = h.substitute(&self.phi_inv).expect("rules cover the free part");
                    }
                    Sign::Neg => {
                        i -= 1;
                        h = h.substitute(&self.phi).expect("rules cover the free part");
                    }
                }
            } else {
                h = h.concat(&Word::from_letter(l.clone()));
            }
        }
        Ok(Word::from_gen(&self.cyclic).pow(i).concat(&h))
    }

    fn describe(&self) -> String {
        let free: Vec<String> = self.free_gens.iter().map(|g| g.to_string()).collect();
        format!(
            "semidirect({}; {}; {}; {})",
            self.cyclic,
            free.join(", "),
            Self::fmt_rules(&self.phi, &self.free_gens),
            Self::fmt_rules(&self.phi_inv, &self.free_gens),
        )
    }
}
