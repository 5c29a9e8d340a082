//! Elements of a free product `G = G_1 * ... * G_k * F_r` in reduced
//! alternating-syllable normal form.
//!
//! A syllable is a pair (factor index, letter); letters are non-identity
//! element indices for finite factors and nonzero exponents for infinite
//! cyclic factors. The empty word is the identity.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::group::{find_isomorphism, FiniteGroup, GroupMap};

#[derive(Debug, Error)]
pub enum WordError {
    #[error("letter {letter} is not valid for factor {factor}")]
    BadLetter { factor: usize, letter: String },
    #[error("words belong to different free-product signatures")]
    SignatureMismatch,
    #[error("a free product needs at least two factors (got {0})")]
    TooFewFactors(usize),
    #[error("factor {0} is trivial")]
    TrivialFactor(usize),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("word power exponent {0} too large to expand")]
    ExponentTooLarge(BigInt),
}

/// One free factor: a finite group or an infinite cyclic group.
#[derive(Debug, Clone)]
pub enum FactorSpec {
    Finite(Arc<FiniteGroup>),
    InfiniteCyclic,
}

impl PartialEq for FactorSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FactorSpec::Finite(a), FactorSpec::Finite(b)) => a == b,
            (FactorSpec::InfiniteCyclic, FactorSpec::InfiniteCyclic) => true,
            _ => false,
        }
    }
}
impl Eq for FactorSpec {}

impl FactorSpec {
    pub fn is_finite(&self) -> bool {
        matches!(self, FactorSpec::Finite(_))
    }

    pub fn group(&self) -> Option<&Arc<FiniteGroup>> {
        match self {
            FactorSpec::Finite(g) => Some(g),
            FactorSpec::InfiniteCyclic => None,
        }
    }
}

/// An ordered list of free factors, with the isomorphism classes of the
/// finite factors precomputed.
///
/// For every factor the signature stores one reference isomorphism from the
/// class representative; permutation automorphisms derive their element maps
/// from these, which makes any family of them compatible by construction.
#[derive(Debug)]
pub struct Signature {
    factors: Vec<FactorSpec>,
    class_rep: Vec<usize>,
    ref_iso: Vec<Option<GroupMap>>,
    degenerate: bool,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}
impl Eq for Signature {}

impl Signature {
    /// A genuine free product: at least two non-trivial factors.
    pub fn new(factors: Vec<FactorSpec>) -> Result<Arc<Self>, WordError> {
        if factors.len() < 2 {
            return Err(WordError::TooFewFactors(factors.len()));
        }
        Self::build(factors, false)
    }

    /// Degenerate signatures (fewer than two factors) appear only as quotient
    /// targets; they are flagged so user input can still be rejected.
    pub fn new_degenerate(factors: Vec<FactorSpec>) -> Result<Arc<Self>, WordError> {
        Self::build(factors, true)
    }

    fn build(factors: Vec<FactorSpec>, degenerate: bool) -> Result<Arc<Self>, WordError> {
        let mut class_rep = Vec::with_capacity(factors.len());
        let mut ref_iso = Vec::with_capacity(factors.len());
        for (i, spec) in factors.iter().enumerate() {
            match spec {
                FactorSpec::Finite(g) => {
                    if g.is_trivial() {
                        return Err(WordError::TrivialFactor(i));
                    }
                    let mut rep = i;
                    let mut iso = None;
                    for (j, earlier) in factors[..i].iter().enumerate() {
                        if let FactorSpec::Finite(h) = earlier {
                            if let Some(m) = find_isomorphism(h, g) {
                                rep = j;
                                iso = Some(m);
                                break;
                            }
                        }
                    }
                    if rep == i {
                        iso = Some(GroupMap::identity(g.clone()));
                    }
                    class_rep.push(rep);
                    ref_iso.push(iso);
                }
                FactorSpec::InfiniteCyclic => {
                    let rep = factors[..i]
                        .iter()
                        .position(|f| matches!(f, FactorSpec::InfiniteCyclic))
                        .unwrap_or(i);
                    class_rep.push(rep);
                    ref_iso.push(None);
                }
            }
        }
        Ok(Arc::new(Signature {
            factors,
            class_rep,
            ref_iso,
            degenerate,
        }))
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn factor(&self, i: usize) -> &FactorSpec {
        &self.factors[i]
    }

    pub fn group(&self, i: usize) -> &Arc<FiniteGroup> {
        self.factors[i].group().expect("finite factor expected")
    }

    /// Index of the representative of factor `i`'s isomorphism class.
    pub fn class_rep(&self, i: usize) -> usize {
        self.class_rep[i]
    }

    pub fn same_class(&self, i: usize, j: usize) -> bool {
        self.class_rep[i] == self.class_rep[j]
    }

    /// The stored isomorphism from the class representative's group onto
    /// factor `i`'s group (finite factors only).
    pub fn reference_iso(&self, i: usize) -> Option<&GroupMap> {
        self.ref_iso[i].as_ref()
    }

    /// The compatible isomorphism from factor `i` to factor `j`, routed
    /// through the class representative.
    pub fn class_iso(&self, i: usize, j: usize) -> Option<GroupMap> {
        if !self.same_class(i, j) {
            return None;
        }
        match (&self.ref_iso[i], &self.ref_iso[j]) {
            (Some(mi), Some(mj)) => Some(
                mi.inverted()
                    .expect("reference isos are bijective")
                    .then(mj)
                    .expect("routed through the representative"),
            ),
            _ => None,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| matches!(f, FactorSpec::InfiniteCyclic))
            .count()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .factors
            .iter()
            .map(|spec| match spec {
                FactorSpec::Finite(g) => g.name().to_string(),
                FactorSpec::InfiniteCyclic => "Z".to_string(),
            })
            .collect();
        write!(f, "{}", names.join(" * "))
    }
}

/// A single letter: a non-identity element of a finite factor, or a nonzero
/// power of an infinite cyclic generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    Elem(usize),
    Exp(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Syllable {
    pub factor: usize,
    pub letter: Letter,
}

impl Syllable {
    pub fn elem(factor: usize, e: usize) -> Self {
        Syllable {
            factor,
            letter: Letter::Elem(e),
        }
    }

    pub fn power(factor: usize, n: impl Into<BigInt>) -> Self {
        Syllable {
            factor,
            letter: Letter::Exp(n.into()),
        }
    }
}

/// A reduced word: adjacent syllables come from distinct factors and no
/// syllable is trivial. Construct via [`Word::normalize`] or the helpers.
#[derive(Debug, Clone)]
pub struct Word {
    sig: Arc<Signature>,
    syllables: Vec<Syllable>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.syllables == other.syllables
    }
}
impl Eq for Word {}

impl Word {
    pub fn identity(sig: &Arc<Signature>) -> Self {
        Word {
            sig: sig.clone(),
            syllables: vec![],
        }
    }

    pub fn from_elem(sig: &Arc<Signature>, factor: usize, e: usize) -> Result<Self, WordError> {
        Self::normalize(sig, vec![Syllable::elem(factor, e)])
    }

    pub fn from_power(
        sig: &Arc<Signature>,
        factor: usize,
        n: impl Into<BigInt>,
    ) -> Result<Self, WordError> {
        Self::normalize(sig, vec![Syllable::power(factor, n)])
    }

    /// Merges adjacent same-factor syllables and deletes trivial ones until a
    /// fixpoint is reached.
    pub fn normalize(sig: &Arc<Signature>, raw: Vec<Syllable>) -> Result<Self, WordError> {
        let mut out: Vec<Syllable> = Vec::with_capacity(raw.len());
        for syl in raw {
            check_letter(sig, &syl)?;
            push_merged(sig, &mut out, syl);
        }
        Ok(Word {
            sig: sig.clone(),
            syllables: out,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        if self.sig != other.sig {
            return Err(WordError::SignatureMismatch);
        }
        let mut out = self.syllables.clone();
        for syl in &other.syllables {
            push_merged(&self.sig, &mut out, syl.clone());
        }
        Ok(Word {
            sig: self.sig.clone(),
            syllables: out,
        })
    }

    pub fn invert(&self) -> Word {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|syl| Syllable {
                factor: syl.factor,
                letter: invert_letter(&self.sig, syl),
            })
            .collect();
        Word {
            sig: self.sig.clone(),
            syllables,
        }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate(&self, g: &Word) -> Result<Word, WordError> {
        g.invert().multiply(self)?.multiply(g)
    }

    /// `self^n`, computed through the cyclic reduction so that powers of
    /// conjugated syllables stay cheap.
    pub fn power(&self, n: &BigInt) -> Result<Word, WordError> {
        if n.is_zero() || self.is_identity() {
            return Ok(Word::identity(&self.sig));
        }
        let (core, conj) = self.cyclically_reduce();
        let core = core.into_word();
        let powered = if core.syllable_length() == 1 {
            let syl = &core.syllables[0];
            match &syl.letter {
                Letter::Exp(k) => {
                    Word::normalize(&self.sig, vec![Syllable::power(syl.factor, k * n)])?
                }
                Letter::Elem(e) => {
                    let g = self.sig.group(syl.factor);
                    let m = n.mod_floor_usize(g.element_order(*e));
                    let mut acc = 0usize;
                    for _ in 0..m {
                        acc = g.mul(acc, *e);
                    }
                    Word::normalize(&self.sig, vec![Syllable::elem(syl.factor, acc)])?
                }
            }
        } else {
            let reps = n
                .abs()
                .try_into()
                .map_err(|_| WordError::ExponentTooLarge(n.clone()))?;
            let reps: usize = reps;
            if reps > 1 << 16 {
                return Err(WordError::ExponentTooLarge(n.clone()));
            }
            let base = if n.is_negative() {
                core.invert()
            } else {
                core.clone()
            };
            let mut acc = Word::identity(&self.sig);
            for _ in 0..reps {
                acc = acc.multiply(&base)?;
            }
            acc
        };
        powered.conjugate(&conj)
    }

    /// Returns `(c, h)` with `self = h^-1 c h` and `c` cyclically reduced.
    pub fn cyclically_reduce(&self) -> (CyclicWord, Word) {
        let mut core = self.clone();
        let mut conj = Word::identity(&self.sig);
        loop {
            let n = core.syllables.len();
            if n < 2 || core.syllables[0].factor != core.syllables[n - 1].factor {
                break;
            }
            // Strip the first syllable s: core <- s^-1 * core * s, conj <- s^-1 * conj.
            let s = Word {
                sig: self.sig.clone(),
                syllables: vec![core.syllables[0].clone()],
            };
            let s_inv = s.invert();
            core = s_inv.multiply(&core).unwrap().multiply(&s).unwrap();
            conj = s_inv.multiply(&conj).unwrap();
        }
        (CyclicWord { word: core }, conj)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for syl in &self.syllables {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match &syl.letter {
                Letter::Elem(e) => write!(f, "f{}.{}", syl.factor, e)?,
                Letter::Exp(n) => write!(f, "x{}^{}", syl.factor, n)?,
            }
        }
        Ok(())
    }
}

/// A cyclically reduced word considered up to rotation.
#[derive(Debug, Clone)]
pub struct CyclicWord {
    word: Word,
}

impl CyclicWord {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn syllable_length(&self) -> usize {
        self.word.syllable_length()
    }

    /// Lexicographically least rotation; a canonical representative.
    pub fn canonical_rotation(&self) -> Word {
        let syls = &self.word.syllables;
        if syls.len() <= 1 {
            return self.word.clone();
        }
        let mut best: Option<Vec<Syllable>> = None;
        for r in 0..syls.len() {
            let mut rot = syls[r..].to_vec();
            rot.extend_from_slice(&syls[..r]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
        Word {
            sig: self.word.sig.clone(),
            syllables: best.unwrap(),
        }
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        if self.word.syllables.len() != other.word.syllables.len() {
            return false;
        }
        self.canonical_rotation() == other.canonical_rotation()
    }
}
impl Eq for CyclicWord {}

fn check_letter(sig: &Arc<Signature>, syl: &Syllable) -> Result<(), WordError> {
    if syl.factor >= sig.len() {
        return Err(WordError::BadLetter {
            factor: syl.factor,
            letter: format!("{:?}", syl.letter),
        });
    }
    match (&sig.factors()[syl.factor], &syl.letter) {
        (FactorSpec::Finite(g), Letter::Elem(e)) if *e < g.order() => Ok(()),
        (FactorSpec::InfiniteCyclic, Letter::Exp(_)) => Ok(()),
        _ => Err(WordError::BadLetter {
            factor: syl.factor,
            letter: format!("{:?}", syl.letter),
        }),
    }
}

fn is_trivial_letter(letter: &Letter) -> bool {
    match letter {
        Letter::Elem(e) => *e == 0,
        Letter::Exp(n) => n.is_zero(),
    }
}

fn invert_letter(sig: &Arc<Signature>, syl: &Syllable) -> Letter {
    match &syl.letter {
        Letter::Elem(e) => Letter::Elem(sig.group(syl.factor).inv(*e)),
        Letter::Exp(n) => Letter::Exp(-n),
    }
}

fn push_merged(sig: &Arc<Signature>, out: &mut Vec<Syllable>, syl: Syllable) {
    if is_trivial_letter(&syl.letter) {
        return;
    }
    match out.last_mut() {
        Some(last) if last.factor == syl.factor => {
            let merged = match (&last.letter, &syl.letter) {
                (Letter::Elem(a), Letter::Elem(b)) => {
                    Letter::Elem(sig.group(syl.factor).mul(*a, *b))
                }
                (Letter::Exp(a), Letter::Exp(b)) => Letter::Exp(a + b),
                _ => unreachable!("letters match their factor kind"),
            };
            if is_trivial_letter(&merged) {
                out.pop();
            } else {
                last.letter = merged;
            }
        }
        _ => out.push(syl),
    }
}

trait ModFloorUsize {
    fn mod_floor_usize(&self, m: usize) -> usize;
}

impl ModFloorUsize for BigInt {
    fn mod_floor_usize(&self, m: usize) -> usize {
        use num_traits::ToPrimitive;
        let m_big = BigInt::from(m);
        let r = ((self % &m_big) + &m_big) % &m_big;
        r.to_usize().expect("residue fits")
    }
}

// --- text syntax -------------------------------------------------------------

/// Parses the whitespace-separated token syntax: `f<i>.<e>` for a finite
/// syllable and `x<i>^<n>` for an infinite cyclic one. Empty input is the
/// identity.
pub fn parse_word(sig: &Arc<Signature>, text: &str) -> Result<Word, WordError> {
    let mut raw = vec![];
    for token in text.split_whitespace() {
        raw.push(parse_syllable_token(token)?);
    }
    let word = Word::normalize(sig, raw)?;
    Ok(word)
}

/// Parses one syllable token (used by the word syntax and by the
/// automorphism atom syntax, where the leading `f`/`x` is dropped).
pub fn parse_syllable_token(token: &str) -> Result<Syllable, WordError> {
    let err = || WordError::Parse(format!("bad syllable token '{token}'"));
    if let Some(rest) = token.strip_prefix('f') {
        let (i, e) = rest.split_once('.').ok_or_else(err)?;
        Ok(Syllable::elem(
            i.parse().map_err(|_| err())?,
            e.parse().map_err(|_| err())?,
        ))
    } else if let Some(rest) = token.strip_prefix('x') {
        let (i, n) = rest.split_once('^').ok_or_else(err)?;
        let n: BigInt = n.parse().map_err(|_| err())?;
        if n.is_zero() {
            return Err(WordError::Parse(format!("zero exponent in '{token}'")));
        }
        Ok(Syllable::power(i.parse().map_err(|_| err())?, n))
    } else {
        Err(err())
    }
}

/// Parses an element reference without the `f`/`x` prefix: `<i>.<e>` for a
/// finite factor element, `<i>^<n>` for a power of an infinite cyclic
/// generator.
pub fn parse_element_ref(token: &str) -> Result<Syllable, WordError> {
    if token.contains('.') {
        parse_syllable_token(&format!("f{token}"))
    } else if token.contains('^') {
        parse_syllable_token(&format!("x{token}"))
    } else {
        Err(WordError::Parse(format!("bad element reference '{token}'")))
    }
}
