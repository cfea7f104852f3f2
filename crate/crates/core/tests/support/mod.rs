//! Reference implementations used only by the integration tests. They work on
//! raw words in a, b, c, d and apply the defining relations one adjacent pair
//! at a time, so they share nothing with the library's PBW engine.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use qsl2_core::basis::Decomposition;
use qsl2_core::frobenius::Side;
use qsl2_core::qalgebra::{ClassicalElement, QElement, QMonomial};
use qsl2_core::{Cyclotomic, RootSpec};

pub type Word = Vec<u8>;
pub type WordSum = BTreeMap<Word, Cyclotomic>;

const A: u8 = 0;
const B: u8 = 1;
const C: u8 = 2;
const D: u8 = 3;

fn add_to(sum: &mut WordSum, w: Word, c: &Cyclotomic) {
    if c.is_zero() {
        return;
    }
    match sum.get_mut(&w) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                sum.remove(&w);
            }
        }
        None => {
            sum.insert(w, c.clone());
        }
    }
}

fn mul(x: &Cyclotomic, y: &Cyclotomic) -> Cyclotomic {
    x.try_mul(y).unwrap()
}

pub struct WordOracle {
    pub spec: RootSpec,
    memo: HashMap<Word, WordSum>,
}

impl WordOracle {
    pub fn new(spec: &RootSpec) -> Self {
        WordOracle {
            spec: *spec,
            memo: HashMap::new(),
        }
    }

    fn q(&self, k: i64) -> Cyclotomic {
        self.spec.q_pow(k)
    }

    /// One rewriting step, or `None` when `w` is already normal.
    /// ba = q⁻¹ab, ca = q⁻¹ac, db = q⁻¹bd, dc = q⁻¹cd, cb = bc,
    /// da = 1 + q⁻¹bc and, on sorted words, ad = 1 + q bc after moving the
    /// first d left past b^j c^k (each swap gives a factor q).
    fn step(&self, w: &[u8]) -> Option<Vec<(Word, Cyclotomic)>> {
        let splice = |i: usize, mid: &[u8]| -> Word {
            let mut v = w[..i].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[i + 2..]);
            v
        };
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            if x <= y {
                continue;
            }
            return Some(match (x, y) {
                (C, B) => vec![(splice(i, &[B, C]), self.q(0))],
                (D, A) => vec![(splice(i, &[]), self.q(0)), (splice(i, &[B, C]), self.q(-1))],
                _ => vec![(splice(i, &[y, x]), self.q(-1))],
            });
        }
        let last_a = w.iter().rposition(|&x| x == A)?;
        let first_d = w.iter().position(|&x| x == D)?;
        let between = (first_d - last_a - 1) as i64;
        let mut rest: Word = w.to_vec();
        rest.remove(first_d);
        rest.remove(last_a);
        let mut with_bc = rest.clone();
        with_bc.insert(last_a, C);
        with_bc.insert(last_a, B);
        Some(vec![(rest, self.q(between)), (with_bc, self.q(between + 1))])
    }

    pub fn normalize_word(&mut self, w: &[u8]) -> WordSum {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let out = match self.step(w) {
            None => {
                let mut s = WordSum::new();
                s.insert(w.to_vec(), self.spec.one());
                s
            }
            Some(parts) => {
                let mut s = WordSum::new();
                for (v, c) in parts {
                    for (u, e) in self.normalize_word(&v) {
                        add_to(&mut s, u, &mul(&c, &e));
                    }
                }
                s
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    pub fn normalize(&mut self, x: &WordSum) -> WordSum {
        let mut s = WordSum::new();
        for (w, c) in x {
            for (u, e) in self.normalize_word(w) {
                add_to(&mut s, u, &mul(c, &e));
            }
        }
        s
    }

    pub fn evaluate(&mut self, x: &WordSum) -> QElement {
        let terms = self.normalize(x).into_iter().map(|(w, c)| {
            let count = |g: u8| w.iter().filter(|&&x| x == g).count() as u32;
            (QMonomial::new(count(A), count(B), count(C), count(D)), c)
        });
        QElement::from_terms(&self.spec, terms)
    }

    pub fn eval_word(&mut self, w: &[u8]) -> QElement {
        let mut s = WordSum::new();
        s.insert(w.to_vec(), self.spec.one());
        self.evaluate(&s)
    }

    pub fn product(&mut self, x: &QElement, y: &QElement) -> QElement {
        let mut s = WordSum::new();
        for (m, c) in x.terms() {
            for (n, e) in y.terms() {
                let mut w = word_of(m);
                w.extend(word_of(n));
                add_to(&mut s, w, &mul(c, e));
            }
        }
        self.evaluate(&s)
    }

    /// α^i β^j γ^k δ^m ↦ a^{il} b^{jl} c^{kl} d^{ml}, as a word.
    pub fn lift(&mut self, g: &ClassicalElement) -> QElement {
        let l = self.spec.l() as usize;
        let mut s = WordSum::new();
        for (m, c) in g.terms() {
            let mut w = Word::new();
            for (letter, e) in [(A, m.alpha), (B, m.beta), (C, m.gamma), (D, m.delta)] {
                w.extend(std::iter::repeat_n(letter, e as usize * l));
            }
            add_to(&mut s, w, c);
        }
        self.evaluate(&s)
    }

    pub fn recompose(&mut self, d: &Decomposition) -> QElement {
        let mut acc = QElement::zero(&self.spec);
        for (idx, g) in d.entries() {
            let gen = QElement::monomial(&self.spec, idx.monomial());
            let coeff = self.lift(g);
            let term = match d.side() {
                Side::Left => self.product(&coeff, &gen),
                Side::Right => self.product(&gen, &coeff),
            };
            acc = &acc + &term;
        }
        acc
    }

    /// Antipode as an anti-morphism on words.
    pub fn antipode(&mut self, x: &QElement) -> QElement {
        let mut s = WordSum::new();
        for (m, c) in x.terms() {
            let mut coeff = c.clone();
            let mut w = Word::new();
            for &g in word_of(m).iter().rev() {
                let (img, k) = match g {
                    A => (D, None),
                    B => (B, Some(-1)),
                    C => (C, Some(1)),
                    _ => (A, None),
                };
                if let Some(k) = k {
                    coeff = mul(&coeff, &(-self.q(k)));
                }
                w.push(img);
            }
            add_to(&mut s, w, &coeff);
        }
        self.evaluate(&s)
    }

    /// Δ by expanding each letter into the matrix coproduct, then
    /// normalizing both legs.
    pub fn coproduct(&mut self, x: &QElement) -> BTreeMap<(QMonomial, QMonomial), Cyclotomic> {
        let mut pairs: BTreeMap<(Word, Word), Cyclotomic> = BTreeMap::new();
        for (m, c) in x.terms() {
            let mut cur: Vec<(Word, Word)> = vec![(Word::new(), Word::new())];
            for g in word_of(m) {
                let legs: [(u8, u8); 2] = match g {
                    A => [(A, A), (B, C)],
                    B => [(A, B), (B, D)],
                    C => [(C, A), (D, C)],
                    _ => [(C, B), (D, D)],
                };
                cur = cur
                    .into_iter()
                    .flat_map(|(u, v)| {
                        legs.iter().map(move |&(x, y)| {
                            let (mut u, mut v) = (u.clone(), v.clone());
                            u.push(x);
                            v.push(y);
                            (u, v)
                        })
                    })
                    .collect();
            }
            for p in cur {
                let e = pairs.entry(p).or_insert_with(|| self.spec.zero());
                *e += c;
            }
        }
        let mut out: BTreeMap<(QMonomial, QMonomial), Cyclotomic> = BTreeMap::new();
        for ((u, v), c) in pairs {
            let left = self.eval_word(&u);
            let right = self.eval_word(&v);
            for (m, e) in left.terms() {
                for (n, f) in right.terms() {
                    let e = mul(&mul(&c, e), f);
                    let slot = out.entry((*m, *n)).or_insert_with(|| self.spec.zero());
                    *slot += &e;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// The letters of a PBW monomial in order.
pub fn word_of(m: &QMonomial) -> Word {
    let mut w = Word::new();
    for (letter, e) in [(A, m.a), (B, m.b), (C, m.c), (D, m.d)] {
        w.extend(std::iter::repeat_n(letter, e as usize));
    }
    w
}

/// The coefficients of t^0..t^k in ∏_{j=1}^{k} (1 + q^{2j−1} t).
pub fn product_expansion(spec: &RootSpec, k: u32) -> Vec<Cyclotomic> {
    let mut poly = vec![spec.one()];
    for j in 1..=k as i64 {
        let factor = spec.q_pow(2 * j - 1);
        let mut next = vec![spec.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += &mul(c, &factor);
        }
        poly = next;
    }
    poly
}

pub fn spec(l: i64) -> RootSpec {
    RootSpec::new(l, None).unwrap()
}
