//! The l³ free generators of A(SL_q(2)) over A(SL(2)), decomposition along
//! them, localization on the charts where α or β is invertible, and a
//! linear-algebra oracle that certifies freeness independently of the
//! elimination relations.

mod eliminate;
mod localize;
mod oracle;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::RootSpec;
use crate::error::{Error, Result};
use crate::frobenius::{central_reduce, lift, Side};
use crate::qalgebra::{ClassicalElement, QElement, QMonomial};

pub use eliminate::{eliminate_a_family, eliminate_d_family};
pub use localize::{localize, LocalChart, LocalizedElement};
pub use oracle::{default_degree_bound, oracle_decompose, verify_freeness, FreenessReport};

/// One of the l³ generators: a^m b^n c^s (family A) or b^n c^s d^r (family D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisIndex {
    FamilyA { m: u32, n: u32, s: u32 },
    FamilyD { n: u32, s: u32, r: u32 },
}

impl BasisIndex {
    pub fn monomial(&self) -> QMonomial {
        match *self {
            BasisIndex::FamilyA { m, n, s } => QMonomial::new(m, n, s, 0),
            BasisIndex::FamilyD { n, s, r } => QMonomial::new(0, n, s, r),
        }
    }

    pub fn is_valid(&self, l: u32) -> bool {
        match *self {
            BasisIndex::FamilyA { m, n, s } => (1..l).contains(&m) && n < l && m <= s && s < l,
            BasisIndex::FamilyD { n, s, r } => n < l && r < l && s + r < l,
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisIndex::FamilyA { m, n, s } => write!(f, "A(m={m}, n={n}, s={s})"),
            BasisIndex::FamilyD { n, s, r } => write!(f, "D(n={n}, s={s}, r={r})"),
        }
    }
}

fn check_l(l: i64) -> Result<u32> {
    if l < 2 || l > u32::MAX as i64 {
        return Err(Error::InvalidL(l));
    }
    Ok(l as u32)
}

/// The generators in a fixed order: family A first, then family D.
pub fn enumerate_basis(l: i64) -> Result<Vec<BasisIndex>> {
    let l = check_l(l)?;
    let mut out = Vec::with_capacity((l * l * l) as usize);
    for m in 1..l {
        for n in 0..l {
            for s in m..l {
                out.push(BasisIndex::FamilyA { m, n, s });
            }
        }
    }
    for r in 0..l {
        for n in 0..l {
            for s in 0..l - r {
                out.push(BasisIndex::FamilyD { n, s, r });
            }
        }
    }
    Ok(out)
}

/// The generator equal to `m`, if any. `m` must be reduced with all
/// exponents below l.
pub fn is_basis_monomial(m: &QMonomial, l: i64) -> Result<Option<BasisIndex>> {
    let l = check_l(l)?;
    if !m.is_reduced() || m.max_exponent() >= l {
        return Err(Error::NotReduced(format!("{m} (l = {l})")));
    }
    let idx = if m.a > 0 {
        BasisIndex::FamilyA { m: m.a, n: m.b, s: m.c }
    } else {
        BasisIndex::FamilyD { n: m.b, s: m.c, r: m.d }
    };
    Ok(idx.is_valid(l).then_some(idx))
}

/// Coordinates of an element in the free basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    spec: RootSpec,
    side: Side,
    coeffs: BTreeMap<BasisIndex, ClassicalElement>,
}

impl Decomposition {
    pub fn zero(spec: &RootSpec, side: Side) -> Self {
        Decomposition {
            spec: *spec,
            side,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn spec(&self) -> &RootSpec {
        &self.spec
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BasisIndex, &ClassicalElement)> {
        self.coeffs.iter()
    }

    pub fn get(&self, idx: &BasisIndex) -> Option<&ClassicalElement> {
        self.coeffs.get(idx)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `g` to the coefficient of `idx`. Panics on an invalid index.
    pub fn add(&mut self, idx: BasisIndex, g: &ClassicalElement) {
        assert!(idx.is_valid(self.spec.l()), "{idx} is not a generator for l = {}", self.spec.l());
        if g.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(idx)
            .or_insert_with(|| ClassicalElement::zero(&self.spec));
        *entry = &*entry + g;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    /// Multiplies every coefficient by `g`.
    pub fn scale(&self, g: &ClassicalElement) -> Self {
        let mut out = Decomposition::zero(&self.spec, self.side);
        for (idx, h) in &self.coeffs {
            out.add(*idx, &(g * h));
        }
        out
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, g) in &self.coeffs {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{idx} [{}]: {g}", idx.monomial())?;
        }
        Ok(())
    }
}

/// Rewrites `x` in the free basis, multiplying coefficients on `side`.
pub fn decompose(x: &QElement, side: Side) -> Result<Decomposition> {
    let spec = *x.spec();
    spec.require_admissible()?;
    let reduced = central_reduce(x, side);
    let decomposer = eliminate::decomposer(&spec, side)?;
    let mut out = Decomposition::zero(&spec, side);
    for (key, g) in reduced.terms() {
        match is_basis_monomial(key, spec.l() as i64)? {
            Some(idx) => out.add(idx, g),
            None => {
                for (idx, h) in decomposer.closure(key) {
                    out.add(*idx, &(g * h));
                }
            }
        }
    }
    Ok(out)
}

/// Σ lift(coefficient) · generator on the recorded side.
pub fn recompose(d: &Decomposition) -> QElement {
    let mut acc = QElement::zero(&d.spec);
    for (idx, g) in &d.coeffs {
        acc = &acc + &side_mul(d.side, &lift(g), &QElement::monomial(&d.spec, idx.monomial()));
    }
    acc
}

/// `coefficient · x` on the left, `x · coefficient` on the right.
pub(crate) fn side_mul(side: Side, coefficient: &QElement, x: &QElement) -> QElement {
    match side {
        Side::Left => coefficient * x,
        Side::Right => x * coefficient,
    }
}
