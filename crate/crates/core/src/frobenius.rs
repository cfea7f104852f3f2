//! The subalgebra of l-th powers α = a^l, β = b^l, γ = c^l, δ = d^l and the
//! presentation of A(SL_q(2)) as a module over it.
//!
//! For odd l the l-th powers are central. For even l (q of order 2l) they
//! still commute with each other but only commute with a, b, c, d up to
//! sign, so left and right module structures differ. Those signs are never
//! written down by hand here: [`central_reduce`] reads them off the engine.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclotomic, RootSpec};
use crate::error::{Error, Result};
use crate::qalgebra::{
    coproduct, ClassicalElement, ClassicalMonomial, Gen, QElement, QMonomial, TensorElement,
};

/// Which side the classical coefficients act from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::OutOfRange(format!("side '{other}'"))),
        }
    }
}

/// A finite sum of residual monomials (exponents < l) with classical
/// coefficients acting on the recorded side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    spec: RootSpec,
    side: Side,
    terms: BTreeMap<QMonomial, ClassicalElement>,
}

impl ModuleElement {
    pub fn zero(spec: &RootSpec, side: Side) -> Self {
        ModuleElement {
            spec: *spec,
            side,
            terms: BTreeMap::new(),
        }
    }

    pub fn spec(&self) -> &RootSpec {
        &self.spec
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QMonomial, &ClassicalElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: &QMonomial) -> Option<&ClassicalElement> {
        self.terms.get(m)
    }

    /// True when `m` may be used as a key.
    pub fn is_residual(spec: &RootSpec, m: &QMonomial) -> bool {
        m.is_reduced() && m.max_exponent() < spec.l()
    }

    /// Adds `g ⊳ m` (or `m ⊲ g`). Panics if `m` is not a residual monomial.
    pub fn add_term(&mut self, m: QMonomial, g: &ClassicalElement) {
        assert!(
            Self::is_residual(&self.spec, &m),
            "module key {m} out of range for l = {}",
            self.spec.l()
        );
        if g.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(g.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + g;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleElement, g: &ClassicalElement) {
        for (m, h) in &other.terms {
            self.add_term(*m, &(g * h));
        }
    }

    pub fn remove(&mut self, m: &QMonomial) -> Option<ClassicalElement> {
        self.terms.remove(m)
    }
}

/// Substitutes α→a^l, β→b^l, γ→c^l, δ→d^l monomial-wise.
pub fn lift(g: &ClassicalElement) -> QElement {
    let spec = g.spec();
    let l = spec.l();
    QElement::from_terms(
        spec,
        g.terms().map(|(m, c)| (lift_monomial(l, m), c.clone())),
    )
}

pub(crate) fn lift_monomial(l: u32, m: &ClassicalMonomial) -> QMonomial {
    QMonomial::new(l * m.alpha, l * m.beta, l * m.gamma, l * m.delta)
}

/// Splits a reduced monomial into its Frobenius block and residual.
pub(crate) fn split_monomial(l: u32, m: &QMonomial) -> (ClassicalMonomial, QMonomial) {
    (
        ClassicalMonomial::new(m.a / l, m.b / l, m.c / l, m.d / l),
        QMonomial::new(m.a % l, m.b % l, m.c % l, m.d % l),
    )
}

/// The scalar σ with `lift(block) · residual = σ · m` (left) or
/// `residual · lift(block) = σ · m` (right), computed by the engine.
fn block_sign(spec: &RootSpec, side: Side, block: &ClassicalMonomial, residual: &QMonomial, m: &QMonomial) -> Cyclotomic {
    let lifted = QElement::monomial(spec, lift_monomial(spec.l(), block));
    let res = QElement::monomial(spec, *residual);
    let product = match side {
        Side::Left => &lifted * &res,
        Side::Right => &res * &lifted,
    };
    assert_eq!(
        product.len(),
        1,
        "moving a Frobenius block past {residual} produced more than one monomial"
    );
    let sigma = product.coeff(m);
    assert!(!sigma.is_zero(), "block product does not reproduce {m}");
    sigma
}

/// Rewrites every PBW monomial as σ⁻¹ · (classical block) acting on its
/// residual monomial with exponents reduced mod l.
pub fn central_reduce(x: &QElement, side: Side) -> ModuleElement {
    let spec = *x.spec();
    let l = spec.l();
    let mut out = ModuleElement::zero(&spec, side);
    for (m, c) in x.terms() {
        let (block, residual) = split_monomial(l, m);
        let coeff = if block == ClassicalMonomial::ONE {
            c.clone()
        } else {
            let sigma = block_sign(&spec, side, &block, &residual, m);
            c.try_div(&sigma).expect("σ is a root of unity")
        };
        out.add_term(residual, &ClassicalElement::monomial(&spec, block, coeff));
    }
    out
}

/// Σ lift(coefficient) · key, multiplied on the recorded side.
pub fn module_recompose(m: &ModuleElement) -> QElement {
    let mut acc = QElement::zero(&m.spec);
    for (key, g) in &m.terms {
        let lifted = lift(g);
        let k = QElement::monomial(&m.spec, *key);
        let term = match m.side {
            Side::Left => &lifted * &k,
            Side::Right => &k * &lifted,
        };
        acc = &acc + &term;
    }
    acc
}

/// Whether `x` commutes with all four generators.
pub fn is_central(x: &QElement) -> bool {
    let spec = x.spec();
    Gen::ALL.into_iter().all(|g| {
        let gen = QElement::generator(spec, g);
        &gen * x == x * &gen
    })
}

/// a^p d^p written as a polynomial Σ coeffs[j] b^j c^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerRelation {
    pub spec: RootSpec,
    pub power: u32,
    /// Coefficient of b^j c^j for j = 0..=power.
    pub coeffs: Vec<Cyclotomic>,
}

impl PowerRelation {
    /// Whether the relation reads a^p d^p = 1 + b^p c^p.
    pub fn is_classical(&self) -> bool {
        let p = self.power as usize;
        self.coeffs.iter().enumerate().all(|(j, c)| {
            if j == 0 || j == p {
                c.is_one()
            } else {
                c.is_zero()
            }
        })
    }
}

impl fmt::Display for PowerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.power;
        let e = |x: usize| if x == 1 { String::new() } else { format!("^{x}") };
        let terms = self.coeffs.iter().enumerate().map(|(j, c)| {
            let mono = if j == 0 { String::new() } else { format!("b{} c{}", e(j), e(j)) };
            (mono, c)
        });
        write!(f, "a^{p} d^{p} = {}", crate::expr::format_sum(&self.spec, terms, " "))
    }
}

/// Expands a^p d^p through the engine and checks it against the product
/// formula ∏_{j=1}^{p} (1 + q^{2j-1} bc).
pub fn power_relation(spec: &RootSpec, p: u32) -> PowerRelation {
    let a = QElement::generator(spec, Gen::A).power(p);
    let d = QElement::generator(spec, Gen::D).power(p);
    let prod = &a * &d;
    let coeffs: Vec<Cyclotomic> = (0..=p)
        .map(|j| prod.coeff(&QMonomial::new(0, j, j, 0)))
        .collect();
    debug_assert_eq!(
        prod.len(),
        coeffs.iter().filter(|c| !c.is_zero()).count(),
        "a^p d^p has terms outside the bc-polynomial"
    );
    debug_assert_eq!(coeffs, product_expansion(spec, p));
    PowerRelation {
        spec: *spec,
        power: p,
        coeffs,
    }
}

/// Coefficients of ∏_{j=1}^{k} (1 + q^{2j-1} x).
pub fn product_expansion(spec: &RootSpec, k: u32) -> Vec<Cyclotomic> {
    let mut poly = vec![spec.one()];
    for j in 1..=k as i64 {
        let w = spec.q_pow(2 * j - 1);
        let mut next = vec![spec.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += &(c * &w);
        }
        poly = next;
    }
    poly
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub l: u32,
    pub order: u32,
    /// The power examined: l in the admissible cases, 2l when N = 2l with l odd.
    pub p: u32,
    /// a^p, b^p, c^p, d^p pairwise commute.
    pub powers_commute: bool,
    /// a^l d^l expanded.
    pub lth_relation: PowerRelation,
    /// a^p d^p expanded (same as `lth_relation` when p = l).
    pub relation: PowerRelation,
    /// a^p d^p − b^p c^p = 1.
    pub determinant_closes: bool,
    /// Δ(a^p) = a^p ⊗ a^p + b^p ⊗ c^p.
    pub coproduct_closes: bool,
}

impl ClosureReport {
    pub fn summary(&self) -> String {
        format!(
            "{}; coproduct {}",
            self.lth_relation,
            if self.coproduct_closes { "closes" } else { "does not close" }
        )
    }
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "{}", self.summary())?;
        writeln!(f, "l = {}, order of q = {}, power examined p = {}", self.l, self.order, self.p)?;
        if self.p != self.l {
            writeln!(f, "{}", self.relation)?;
        }
        writeln!(f, "p-th powers commute: {}", yes_no(self.powers_commute))?;
        writeln!(f, "determinant relation closes: {}", yes_no(self.determinant_closes))?;
        write!(f, "coproduct closes: {}", yes_no(self.coproduct_closes))
    }
}

/// Whether the p-th powers of the generators reproduce A(SL(2)): the three
/// root cases are (odd l, N = l), (even l, N = 2l) and (odd l, N = 2l).
pub fn closure_diagnostic(l: i64, order: i64) -> Result<ClosureReport> {
    let spec = RootSpec::with_order(l, order, None)?;
    let l = spec.l();
    let p = if spec.is_admissible() { l } else { 2 * l };
    let powers: Vec<QElement> = Gen::ALL
        .iter()
        .map(|&g| QElement::generator(&spec, g).power(p))
        .collect();
    let powers_commute = powers
        .iter()
        .enumerate()
        .all(|(i, x)| powers[i + 1..].iter().all(|y| x * y == y * x));
    let lth_relation = power_relation(&spec, l);
    let relation = if p == l {
        lth_relation.clone()
    } else {
        power_relation(&spec, p)
    };
    let [ap, bp, cp, _] = [0, 1, 2, 3].map(|i| powers[i].clone());
    let determinant_closes = relation.is_classical();
    let expected = &TensorElement::from_pair(&ap, &ap)? + &TensorElement::from_pair(&bp, &cp)?;
    let coproduct_closes = coproduct(&ap) == expected;
    Ok(ClosureReport {
        l,
        order: spec.order(),
        p,
        powers_commute,
        lth_relation,
        relation,
        determinant_closes,
        coproduct_closes,
    })
}
