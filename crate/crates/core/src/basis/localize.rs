//! Localization on U_α (α invertible, d eliminated) and U_β (β invertible,
//! c eliminated).
//!
//! On U_α the chart monomials are a^r b^s c^t; on U_β they are the ordered
//! products a^r b^s d^t, stored as `QMonomial` with c = 0. Inside the
//! localization a, b and d satisfy ab = q ba, bd = q db and
//! da = q⁻² ad + 1 − q⁻², which is all the U_β rewriting needs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::side_mul;
use crate::cyclo::{Cyclotomic, RootSpec};
use crate::error::{Error, Result};
use crate::frobenius::{central_reduce, lift, Side};
use crate::qalgebra::{ClassicalElement, ClassicalGen, ClassicalMonomial, Gen, QElement, QMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocalChart {
    #[serde(rename = "alpha")]
    UAlpha,
    #[serde(rename = "beta")]
    UBeta,
}

impl LocalChart {
    fn generator(self) -> ClassicalGen {
        match self {
            LocalChart::UAlpha => ClassicalGen::Alpha,
            LocalChart::UBeta => ClassicalGen::Beta,
        }
    }
}

impl std::str::FromStr for LocalChart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" | "α" | "U_alpha" => Ok(LocalChart::UAlpha),
            "beta" | "β" | "U_beta" => Ok(LocalChart::UBeta),
            other => Err(Error::OutOfRange(format!("chart '{other}'"))),
        }
    }
}

/// Σ (numerator / g^k) · chart monomial, with g = α or β and k minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedElement {
    spec: RootSpec,
    chart: LocalChart,
    terms: BTreeMap<QMonomial, (ClassicalElement, u32)>,
}

impl LocalizedElement {
    pub fn spec(&self) -> &RootSpec {
        &self.spec
    }

    pub fn chart(&self) -> LocalChart {
        self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QMonomial, &(ClassicalElement, u32))> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: &QMonomial) -> Option<&(ClassicalElement, u32)> {
        self.terms.get(m)
    }

    /// The largest denominator exponent.
    pub fn denominator_exponent(&self) -> u32 {
        self.terms.values().map(|(_, k)| *k).max().unwrap_or(0)
    }

    /// Multiplies by g^K for K = `denominator_exponent()` and evaluates in
    /// A(SL_q(2)): the result equals lift(g^K)·x.
    pub fn clear_denominators(&self) -> (u32, QElement) {
        let big_k = self.denominator_exponent();
        let g = ClassicalElement::generator(&self.spec, self.chart.generator());
        let mut acc = QElement::zero(&self.spec);
        for (m, (num, k)) in &self.terms {
            let coeff = lift(&(num * &g.pow(big_k - k)));
            acc = &acc + &(&coeff * &chart_monomial(&self.spec, m));
        }
        (big_k, acc)
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let name = match self.chart {
            LocalChart::UAlpha => "alpha",
            LocalChart::UBeta => "beta",
        };
        let mut first = true;
        for (m, (num, k)) in &self.terms {
            if !first {
                writeln!(f)?;
            }
            first = false;
            let mono = match self.chart {
                LocalChart::UAlpha => m.to_string(),
                LocalChart::UBeta => abd_text(m),
            };
            match k {
                0 => write!(f, "{mono}: {num}")?,
                1 => write!(f, "{mono}: ({num}) / {name}")?,
                k => write!(f, "{mono}: ({num}) / {name}^{k}")?,
            }
        }
        Ok(())
    }
}

fn abd_text(m: &QMonomial) -> String {
    let mut parts = Vec::new();
    for (ch, e) in [('a', m.a), ('b', m.b), ('d', m.d)] {
        match e {
            0 => {}
            1 => parts.push(ch.to_string()),
            e => parts.push(format!("{ch}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The chart monomial as an element of A(SL_q(2)): a^r b^s c^t is already
/// PBW; a^r b^s d^t is straightened.
fn chart_monomial(spec: &RootSpec, m: &QMonomial) -> QElement {
    let [a, b, c, d] = [Gen::A, Gen::B, Gen::C, Gen::D].map(|g| QElement::generator(spec, g));
    &(&(&a.power(m.a) * &b.power(m.b)) * &c.power(m.c)) * &d.power(m.d)
}

/// Elements of the subalgebra generated by a, b, d in the U_β chart, in
/// the ordered basis a^r b^s d^t.
type Abd = HashMap<(u32, u32, u32), Cyclotomic>;

fn abd_push(out: &mut Abd, key: (u32, u32, u32), c: Cyclotomic) {
    let e = out.entry(key).or_insert_with(|| Cyclotomic::zero(c.order()));
    *e += &c;
}

fn abd_mul_letter(spec: &RootSpec, x: &Abd, g: Gen) -> Abd {
    let mut out = Abd::new();
    for (&(r, s, t), c) in x {
        match g {
            Gen::D => abd_push(&mut out, (r, s, t + 1), c.clone()),
            Gen::B => abd_push(&mut out, (r, s + 1, t), c * &spec.q_pow(-(t as i64))),
            Gen::A => {
                let (t64, s64) = (t as i64, s as i64);
                abd_push(&mut out, (r + 1, s, t), c * &spec.q_pow(-2 * t64 - s64));
                if t > 0 {
                    let w = &spec.one() - &spec.q_pow(-2 * t64);
                    abd_push(&mut out, (r, s, t - 1), c * &w);
                }
            }
            Gen::C => unreachable!("c does not occur on the U_beta chart"),
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn abd_mul_word(spec: &RootSpec, mut x: Abd, word: &[(Gen, u32)]) -> Abd {
    for &(g, n) in word {
        for _ in 0..n {
            x = abd_mul_letter(spec, &x, g);
        }
    }
    x
}

/// Rewrites `x` over the chart generators with α⁻¹ (resp. β⁻¹) allowed in
/// the classical coefficients.
pub fn localize(x: &QElement, chart: LocalChart) -> Result<LocalizedElement> {
    let spec = *x.spec();
    spec.require_admissible()?;
    let l = spec.l();
    let mut terms: BTreeMap<QMonomial, ClassicalElement> = BTreeMap::new();
    let eliminated = |m: &QMonomial| match chart {
        LocalChart::UAlpha => m.d,
        LocalChart::UBeta => m.c,
    };
    let big_k = x.terms().map(|(m, _)| eliminated(m).div_ceil(l)).max().unwrap_or(0);
    let g = ClassicalElement::generator(&spec, chart.generator());
    let y = side_mul(Side::Left, &lift(&g.pow(big_k)), x);
    match chart {
        LocalChart::UAlpha => {
            if y.terms().any(|(m, _)| m.d > 0) {
                return Err(Error::RelationCheck("d survived on U_alpha".into()));
            }
            for (m, h) in central_reduce(&y, Side::Left).terms() {
                terms.insert(*m, h.clone());
            }
        }
        LocalChart::UBeta => {
            // b^j c^k = q^{-k} b^{j-k} (ad - 1)^k, then split off l-th powers
            let mut acc = Abd::new();
            for (m, c) in y.terms() {
                if m.b < m.c {
                    return Err(Error::RelationCheck(format!("{m}: not enough b on U_beta")));
                }
                let mut w = Abd::new();
                w.insert((m.a, m.b - m.c, 0), c * &spec.q_pow(-(m.c as i64)));
                for _ in 0..m.c {
                    let ad = abd_mul_word(&spec, w.clone(), &[(Gen::A, 1), (Gen::D, 1)]);
                    let mut next = ad;
                    for (key, v) in w {
                        abd_push(&mut next, key, -&v);
                    }
                    next.retain(|_, v| !v.is_zero());
                    w = next;
                }
                for (key, v) in abd_mul_word(&spec, w, &[(Gen::D, m.d)]) {
                    abd_push(&mut acc, key, v);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            for ((r, s, t), c) in acc {
                let block = ClassicalMonomial::new(r / l, s / l, 0, t / l);
                let residual = (r % l, s % l, t % l);
                let moved = abd_mul_word(
                    &spec,
                    Abd::from([((l * block.alpha, l * block.beta, l * block.delta), spec.one())]),
                    &[(Gen::A, residual.0), (Gen::B, residual.1), (Gen::D, residual.2)],
                );
                let sigma = moved
                    .get(&(r, s, t))
                    .filter(|_| moved.len() == 1)
                    .ok_or_else(|| Error::RelationCheck(format!("block of a^{r} b^{s} d^{t} is not central")))?;
                let coeff = c.try_div(sigma)?;
                let key = QMonomial::new(residual.0, residual.1, 0, residual.2);
                let add = ClassicalElement::monomial(&spec, block, coeff);
                let e = terms.entry(key).or_insert_with(|| ClassicalElement::zero(&spec));
                *e = &*e + &add;
            }
            terms.retain(|_, v| !v.is_zero());
        }
    }
    let mut out = BTreeMap::new();
    for (m, mut num) in terms {
        let mut k = big_k;
        while k > 0 {
            let quotient = match chart {
                LocalChart::UAlpha => num.div_alpha(),
                LocalChart::UBeta => num.div_beta(),
            };
            match quotient {
                Some(qt) => {
                    num = qt;
                    k -= 1;
                }
                None => break,
            }
        }
        out.insert(m, (num, k));
    }
    let local = LocalizedElement {
        spec,
        chart,
        terms: out,
    };
    let (k, cleared) = local.clear_denominators();
    if cleared != side_mul(Side::Left, &lift(&g.pow(k)), x) {
        return Err(Error::RelationCheck("localization does not recompose".into()));
    }
    Ok(local)
}
