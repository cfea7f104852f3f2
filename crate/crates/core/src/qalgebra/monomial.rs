use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the four generators a, b, c, d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    C,
    D,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];

    pub fn letter(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
            Gen::D => 'd',
        }
    }

    pub fn from_letter(ch: char) -> Option<Gen> {
        match ch {
            'a' => Some(Gen::A),
            'b' => Some(Gen::B),
            'c' => Some(Gen::C),
            'd' => Some(Gen::D),
            _ => None,
        }
    }
}

/// The ordered word a^a b^b c^c d^d.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QMonomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl QMonomial {
    pub const ONE: QMonomial = QMonomial { a: 0, b: 0, c: 0, d: 0 };

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        QMonomial { a, b, c, d }
    }

    pub fn generator(g: Gen) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: Gen, n: u32) -> Self {
        let mut m = QMonomial::ONE;
        *m.exponent_mut(g) = n;
        m
    }

    pub fn exponent(&self, g: Gen) -> u32 {
        match g {
            Gen::A => self.a,
            Gen::B => self.b,
            Gen::C => self.c,
            Gen::D => self.d,
        }
    }

    fn exponent_mut(&mut self, g: Gen) -> &mut u32 {
        match g {
            Gen::A => &mut self.a,
            Gen::B => &mut self.b,
            Gen::C => &mut self.c,
            Gen::D => &mut self.d,
        }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    pub fn max_exponent(&self) -> u32 {
        self.a.max(self.b).max(self.c).max(self.d)
    }

    /// PBW-reduced: a and d never occur together.
    pub fn is_reduced(&self) -> bool {
        self.a == 0 || self.d == 0
    }

    /// The two torus weights (a+b-c-d, a-b+c-d). Every relation of the
    /// algebra is homogeneous for both.
    pub fn weight(&self) -> (i64, i64) {
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        (a + b - c - d, a - b + c - d)
    }

    /// The letters of the word in order.
    pub fn letters(&self) -> impl Iterator<Item = Gen> + '_ {
        Gen::ALL
            .into_iter()
            .flat_map(move |g| std::iter::repeat_n(g, self.exponent(g) as usize))
    }
}

impl Ord for QMonomial {
    /// Graded lexicographic in (a, b, c, d).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| (self.a, self.b, self.c, self.d).cmp(&(other.a, other.b, other.c, other.d)))
    }
}

impl PartialOrd for QMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
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
            if e == 1 {
                write!(f, "{}", g.letter())?;
            } else {
                write!(f, "{}^{}", g.letter(), e)?;
            }
        }
        Ok(())
    }
}

/// Integer combination of powers of q, indexed by exponent mod N.
///
/// Monomial products only ever produce such coefficients, so the engine
/// works in Z[C_N] and converts to the cyclotomic field once at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QPowers(pub Vec<i128>);

impl QPowers {
    pub fn single(order: u32, exp: i64) -> Self {
        let mut v = vec![0; order as usize];
        v[exp.rem_euclid(order as i64) as usize] = 1;
        QPowers(v)
    }

    /// Multiplies by q^shift and adds into `self`.
    pub fn add_shifted(&mut self, other: &QPowers, shift: i64) {
        let n = self.0.len() as i64;
        for (i, &c) in other.0.iter().enumerate() {
            if c != 0 {
                let j = (i as i64 + shift).rem_euclid(n) as usize;
                self.0[j] = self.0[j].checked_add(c).expect("q-power coefficient overflow");
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

type Partial = HashMap<QMonomial, QPowers>;

fn push(acc: &mut Partial, m: QMonomial, coeff: &QPowers, shift: i64) {
    acc.entry(m)
        .or_insert_with(|| QPowers(vec![0; coeff.0.len()]))
        .add_shifted(coeff, shift);
}

/// Right-multiplies a reduced monomial by `g^p`, emitting reduced monomials
/// with q-exponent shifts.
///
/// Rules, read off from ab=qba, ac=qca, bd=qdb, bc=cb, cd=qdc, ad=1+qbc and
/// da=1+q^{-1}bc:
/// - `M·b^p = q^{-dp} a^a b^{b+p} c^c d^d`
/// - `M·c^p = q^{-dp} a^a b^b c^{c+p} d^d`
/// - `M·a^p = q^{-(b+c)p} a^{a+p} b^b c^c` when d = 0
/// - `b^j c^k d^m · a = b^j c^k d^{m-1} + q^{-(2m-1)} b^{j+1} c^{k+1} d^{m-1}`
/// - `M·d^p = b^b c^c d^{d+p}` when a = 0
/// - `a^i b^j c^k · d = q^{j+k} a^{i-1} b^j c^k + q^{j+k+1} a^{i-1} b^{j+1} c^{k+1}`
fn right_mul_power(m: QMonomial, g: Gen, p: u32, coeff: &QPowers, out: &mut Partial) {
    if p == 0 {
        push(out, m, coeff, 0);
        return;
    }
    let p64 = p as i64;
    match g {
        Gen::B => push(
            out,
            QMonomial { b: m.b + p, ..m },
            coeff,
            -(m.d as i64) * p64,
        ),
        Gen::C => push(
            out,
            QMonomial { c: m.c + p, ..m },
            coeff,
            -(m.d as i64) * p64,
        ),
        Gen::A if m.d == 0 => push(
            out,
            QMonomial { a: m.a + p, ..m },
            coeff,
            -((m.b + m.c) as i64) * p64,
        ),
        Gen::D if m.a == 0 => push(out, QMonomial { d: m.d + p, ..m }, coeff, 0),
        Gen::A => {
            // m = b^j c^k d^m, m ≥ 1
            let mut stage = Partial::new();
            let dm = m.d as i64;
            push(&mut stage, QMonomial { d: m.d - 1, ..m }, coeff, 0);
            push(
                &mut stage,
                QMonomial {
                    b: m.b + 1,
                    c: m.c + 1,
                    d: m.d - 1,
                    ..m
                },
                coeff,
                -(2 * dm - 1),
            );
            for (mm, cc) in stage {
                right_mul_power(mm, Gen::A, p - 1, &cc, out);
            }
        }
        Gen::D => {
            // m = a^i b^j c^k, i ≥ 1
            let mut stage = Partial::new();
            let s = (m.b + m.c) as i64;
            push(&mut stage, QMonomial { a: m.a - 1, ..m }, coeff, s);
            push(
                &mut stage,
                QMonomial {
                    a: m.a - 1,
                    b: m.b + 1,
                    c: m.c + 1,
                    ..m
                },
                coeff,
                s + 1,
            );
            for (mm, cc) in stage {
                right_mul_power(mm, Gen::D, p - 1, &cc, out);
            }
        }
    }
}

/// Product of two reduced monomials as reduced monomials with q-power
/// coefficients.
pub(crate) fn mul_monomials(order: u32, left: QMonomial, right: QMonomial) -> Vec<(QMonomial, QPowers)> {
    debug_assert!(left.is_reduced() && right.is_reduced());
    let mut cur: Partial = Partial::new();
    cur.insert(left, QPowers::single(order, 0));
    for g in Gen::ALL {
        let p = right.exponent(g);
        if p == 0 {
            continue;
        }
        let mut next = Partial::new();
        for (m, c) in &cur {
            right_mul_power(*m, g, p, c, &mut next);
        }
        cur = next;
    }
    cur.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Straightens a word of letters (no scalar) into reduced monomials.
pub(crate) fn straighten_letters(order: u32, letters: &[Gen]) -> Vec<(QMonomial, QPowers)> {
    let mut cur: Partial = Partial::new();
    cur.insert(QMonomial::ONE, QPowers::single(order, 0));
    let mut i = 0;
    while i < letters.len() {
        let g = letters[i];
        let run = letters[i..].iter().take_while(|&&x| x == g).count();
        let mut next = Partial::new();
        for (m, c) in &cur {
            right_mul_power(*m, g, run as u32, c, &mut next);
        }
        cur = next;
        i += run;
    }
    cur.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
