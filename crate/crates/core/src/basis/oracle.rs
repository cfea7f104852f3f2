//! Brute-force linear algebra over Q(ζ_N): unknowns are the coefficients of
//! every (generator, classical monomial) pair up to a degree bound, equations
//! are the PBW coefficients of the product. Both torus weights are preserved
//! by every relation, so the system splits into independent weight blocks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::{enumerate_basis, side_mul, BasisIndex, Decomposition};
use crate::cyclo::{Cyclotomic, RootSpec};
use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;
use crate::frobenius::{lift, Side};
use crate::qalgebra::{ClassicalElement, ClassicalMonomial, QElement, QMonomial};

type Weight = (i64, i64);

struct Block {
    cols: Vec<(BasisIndex, ClassicalMonomial)>,
    rows: HashMap<QMonomial, usize>,
    matrix: ExactMatrix<Cyclotomic>,
    rank: OnceLock<usize>,
}

impl Block {
    fn rank(&self) -> usize {
        *self.rank.get_or_init(|| self.matrix.rank())
    }

    /// The right-hand side as a vector over this block's rows, or `None`
    /// when `x` uses a monomial no column reaches.
    fn rhs(&self, spec: &RootSpec, x: &QElement) -> Option<Vec<Cyclotomic>> {
        let mut v = vec![spec.zero(); self.rows.len()];
        for (m, c) in x.terms() {
            v[*self.rows.get(m)?] = c.clone();
        }
        Some(v)
    }
}

struct Oracle {
    blocks: HashMap<Weight, Block>,
    columns: usize,
}

impl Oracle {
    fn build(spec: &RootSpec, side: Side, bound: u32) -> Result<Self> {
        let l = spec.l();
        let classical = ClassicalMonomial::reduced_up_to(bound);
        let mut grouped: BTreeMap<Weight, Vec<(BasisIndex, ClassicalMonomial, QElement)>> = BTreeMap::new();
        for idx in enumerate_basis(l as i64)? {
            let gen = QElement::monomial(spec, idx.monomial());
            let (w1, w2) = idx.monomial().weight();
            for mu in &classical {
                let coeff = lift(&ClassicalElement::monomial(spec, *mu, spec.one()));
                let col = side_mul(side, &coeff, &gen);
                let (v1, v2) = mu.lifted_weight(l);
                grouped.entry((w1 + v1, w2 + v2)).or_default().push((idx, *mu, col));
            }
        }
        let mut blocks = HashMap::new();
        let mut columns = 0;
        for (w, cols) in grouped {
            let row_set: BTreeSet<QMonomial> = cols.iter().flat_map(|(_, _, c)| c.terms().map(|(m, _)| *m)).collect();
            let rows: HashMap<QMonomial, usize> = row_set.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut matrix = ExactMatrix::zeros(rows.len(), cols.len(), &spec.zero());
            for (j, (_, _, col)) in cols.iter().enumerate() {
                for (m, c) in col.terms() {
                    matrix.set(rows[m], j, c.clone());
                }
            }
            columns += cols.len();
            blocks.insert(
                w,
                Block {
                    cols: cols.into_iter().map(|(i, m, _)| (i, m)).collect(),
                    rows,
                    matrix,
                    rank: OnceLock::new(),
                },
            );
        }
        Ok(Oracle { blocks, columns })
    }
}

type Cache = Mutex<HashMap<(RootSpec, Side, u32), Arc<Oracle>>>;

fn oracle(spec: &RootSpec, side: Side, bound: u32) -> Result<Arc<Oracle>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (*spec, side, bound);
    if let Some(o) = cache.lock().unwrap().get(&key) {
        return Ok(o.clone());
    }
    let built = Arc::new(Oracle::build(spec, side, bound)?);
    Ok(cache.lock().unwrap().entry(key).or_insert(built).clone())
}

/// (largest PBW exponent of x) / l + 2.
pub fn default_degree_bound(x: &QElement) -> u32 {
    x.max_exponent() / x.spec().l() + 2
}

/// Solves for the coordinates of `x` directly. Fails with
/// [`Error::Inconsistent`] when the bound is too small and with
/// [`Error::NotUnique`] if a relevant block has a kernel.
pub fn oracle_decompose(x: &QElement, side: Side, degree_bound: Option<u32>) -> Result<Decomposition> {
    let spec = *x.spec();
    spec.require_admissible()?;
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(x));
    let o = oracle(&spec, side, bound)?;
    let mut out = Decomposition::zero(&spec, side);
    for (w, part) in x.homogeneous_parts() {
        let block = o.blocks.get(&w).ok_or(Error::Inconsistent(bound))?;
        let rhs = block.rhs(&spec, &part).ok_or(Error::Inconsistent(bound))?;
        let kernel = block.cols.len() - block.rank();
        if kernel > 0 {
            return Err(Error::NotUnique(kernel));
        }
        let solution = block.matrix.solve(&rhs)?.ok_or(Error::Inconsistent(bound))?;
        for ((idx, mu), v) in block.cols.iter().zip(solution) {
            if !v.is_zero() {
                out.add(*idx, &ClassicalElement::monomial(&spec, *mu, v));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub l: u32,
    pub side: Side,
    pub degree_bound: u32,
    /// Number of (generator, classical monomial) unknowns.
    pub columns: usize,
    /// Reduced monomials with exponents < l tested for spanning.
    pub monomials_checked: usize,
    pub kernel_dimension: usize,
    pub all_decomposed: bool,
}

/// Rank and spanning check of the generator map up to `degree_bound`.
pub fn verify_freeness(l: i64, side: Side, degree_bound: u32) -> Result<FreenessReport> {
    let spec = RootSpec::new(l, None)?;
    let o = oracle(&spec, side, degree_bound)?;
    let kernel_dimension = o.blocks.values().map(|b| b.cols.len() - b.rank()).sum();

    let l = spec.l();
    let mut targets: HashMap<Weight, Vec<QMonomial>> = HashMap::new();
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    let m = QMonomial::new(a, b, c, d);
                    if m.is_reduced() {
                        targets.entry(m.weight()).or_default().push(m);
                    }
                }
            }
        }
    }
    let monomials_checked = targets.values().map(Vec::len).sum();
    let mut all_decomposed = true;
    for (w, ms) in &targets {
        let Some(block) = o.blocks.get(w) else {
            all_decomposed = false;
            break;
        };
        let mut rhs = Vec::new();
        for m in ms {
            match block.rhs(&spec, &QElement::monomial(&spec, *m)) {
                Some(v) => rhs.push(v),
                None => all_decomposed = false,
            }
        }
        if !all_decomposed {
            break;
        }
        if block.matrix.solve_many(&rhs)?.iter().any(Option::is_none) {
            all_decomposed = false;
            break;
        }
    }
    Ok(FreenessReport {
        l,
        side,
        degree_bound,
        columns: o.columns,
        monomials_checked,
        kernel_dimension,
        all_decomposed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::decompose;
    use crate::expr::parse_element;

    fn spec(l: i64) -> RootSpec {
        RootSpec::new(l, None).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let s = spec(3);
        let x = parse_element("b^2*c", &s).unwrap();
        let d = oracle_decompose(&x, Side::Left, Some(2)).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(
            d.get(&BasisIndex::FamilyD { n: 2, s: 1, r: 0 }),
            Some(&ClassicalElement::one(&s))
        );
        let a = parse_element("a", &s).unwrap();
        assert_eq!(
            oracle_decompose(&a, Side::Left, Some(2)).unwrap(),
            decompose(&a, Side::Left).unwrap()
        );
        assert!(oracle_decompose(&QElement::zero(&s), Side::Left, Some(1)).unwrap().is_empty());
    }

    #[test]
    fn bound_too_small_is_inconsistent() {
        let s = spec(2);
        let x = parse_element("a^9", &s).unwrap();
        assert!(matches!(
            oracle_decompose(&x, Side::Left, Some(0)),
            Err(Error::Inconsistent(0))
        ));
    }

    #[test]
    fn freeness_at_two() {
        for side in [Side::Left, Side::Right] {
            let r = verify_freeness(2, side, 2).unwrap();
            assert_eq!(r.kernel_dimension, 0);
            assert!(r.all_decomposed);
            assert_eq!(r.monomials_checked, 2 * 8 - 4);
        }
    }
}
