//! A small expression language for elements of A(SL_q(2)).
//!
//! ```text
//! expr   := '-'? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' int)?
//! base   := symbol | int ('/' posint)? | '(' expr ')'
//! ```
//!
//! Symbols are a, b, c, d, q and alpha, beta, gamma, delta (or α, β, γ, δ).
//! Products keep their written order. Classical letters may only precede
//! quantum letters in a product; they are evaluated in A(SL(2)) and lifted.

mod parse;
mod print;

pub use parse::parse_expression;
pub use print::format_scalar;
pub(crate) use print::format_sum;

use crate::cyclo::RootSpec;
use crate::error::Result;
use crate::frobenius::lift;
use crate::qalgebra::{ClassicalElement, ClassicalGen, Gen, QElement};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Quantum(Gen),
    Classical(ClassicalGen),
    Q,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Terms with a negation flag.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
    Rational(Rational),
    Symbol(Symbol),
}

impl Expr {
    fn any_symbol(&self, pred: &impl Fn(&Symbol) -> bool) -> bool {
        match self {
            Expr::Sum(ts) => ts.iter().any(|(_, e)| e.any_symbol(pred)),
            Expr::Product(fs) => fs.iter().any(|e| e.any_symbol(pred)),
            Expr::Power(b, _) => b.any_symbol(pred),
            Expr::Rational(_) => false,
            Expr::Symbol(s) => pred(s),
        }
    }

    pub fn has_quantum(&self) -> bool {
        self.any_symbol(&|s| matches!(s, Symbol::Quantum(_)))
    }

    pub fn has_classical(&self) -> bool {
        self.any_symbol(&|s| matches!(s, Symbol::Classical(_)))
    }
}

/// Intermediate values: classical subexpressions stay classical until they
/// meet a quantum letter.
enum Value {
    Classical(ClassicalElement),
    Quantum(QElement),
}

impl Value {
    fn into_quantum(self) -> QElement {
        match self {
            Value::Classical(g) => lift(&g),
            Value::Quantum(x) => x,
        }
    }
}

fn eval(e: &Expr, spec: &RootSpec) -> Value {
    match e {
        Expr::Rational(r) => Value::Classical(ClassicalElement::scalar(
            spec,
            crate::Cyclotomic::from_rational(spec.order(), r.clone()),
        )),
        Expr::Symbol(Symbol::Q) => Value::Classical(ClassicalElement::scalar(spec, spec.q_pow(1))),
        Expr::Symbol(Symbol::Classical(g)) => Value::Classical(ClassicalElement::generator(spec, *g)),
        Expr::Symbol(Symbol::Quantum(g)) => Value::Quantum(QElement::generator(spec, *g)),
        Expr::Power(base, n) => {
            if **base == Expr::Symbol(Symbol::Q) {
                return Value::Classical(ClassicalElement::scalar(spec, spec.q_pow(*n)));
            }
            let n = u32::try_from(*n).expect("parser rejects negative exponents");
            match eval(base, spec) {
                Value::Classical(g) => Value::Classical(g.pow(n)),
                Value::Quantum(x) => Value::Quantum(x.power(n)),
            }
        }
        Expr::Product(fs) => {
            let mut acc = Value::Classical(ClassicalElement::one(spec));
            for f in fs {
                acc = match (acc, eval(f, spec)) {
                    (Value::Classical(x), Value::Classical(y)) => Value::Classical(&x * &y),
                    (x, y) => Value::Quantum(&x.into_quantum() * &y.into_quantum()),
                };
            }
            acc
        }
        Expr::Sum(ts) => {
            let mut acc = Value::Classical(ClassicalElement::zero(spec));
            for (neg, t) in ts {
                let v = eval(t, spec);
                acc = match (acc, v) {
                    (Value::Classical(x), Value::Classical(y)) => {
                        Value::Classical(if *neg { &x - &y } else { &x + &y })
                    }
                    (x, y) => {
                        let (x, y) = (x.into_quantum(), y.into_quantum());
                        Value::Quantum(if *neg { &x - &y } else { &x + &y })
                    }
                };
            }
            acc
        }
    }
}

/// Evaluates an expression in A(SL_q(2)).
pub fn evaluate(e: &Expr, spec: &RootSpec) -> QElement {
    eval(e, spec).into_quantum()
}

/// Evaluates an expression that must not contain a, b, c or d.
pub fn evaluate_classical(e: &Expr, spec: &RootSpec) -> Option<ClassicalElement> {
    match eval(e, spec) {
        Value::Classical(g) => Some(g),
        Value::Quantum(_) => None,
    }
}

/// Parses and evaluates in one step.
pub fn parse_element(text: &str, spec: &RootSpec) -> Result<QElement> {
    Ok(evaluate(&parse_expression(text)?, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::qalgebra::QMonomial;

    fn spec(l: i64) -> RootSpec {
        RootSpec::new(l, None).unwrap()
    }

    #[test]
    fn parse_shapes() {
        match parse_expression("a*d - q*b*c").unwrap() {
            Expr::Sum(ts) => assert_eq!(ts.len(), 2),
            other => panic!("{other:?}"),
        }
        let e = parse_expression("q^-1*b*a").unwrap();
        assert_eq!(
            e,
            Expr::Product(vec![
                Expr::Power(Box::new(Expr::Symbol(Symbol::Q)), -1),
                Expr::Symbol(Symbol::Quantum(Gen::B)),
                Expr::Symbol(Symbol::Quantum(Gen::A)),
            ])
        );
    }

    #[test]
    fn parse_errors() {
        match parse_expression("a^(2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("ab"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_expression("a^-1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("a*alpha"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_expression("a b"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_expression("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression(""), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn evaluate_examples() {
        let s = spec(3);
        assert_eq!(parse_element("a*d - q*b*c", &s).unwrap(), QElement::one(&s));
        assert_eq!(
            parse_element("alpha", &s).unwrap(),
            QElement::monomial(&s, QMonomial::new(3, 0, 0, 0))
        );
        assert_eq!(parse_element("α", &s).unwrap(), parse_element("a^3", &s).unwrap());
        let two_thirds = crate::Cyclotomic::from_rational(3, Rational::new(2.into(), 3.into()));
        assert_eq!(parse_element("2/3", &s).unwrap(), QElement::scalar(&s, two_thirds));
        assert_eq!(
            parse_element("alpha*delta - beta*gamma", &s).unwrap(),
            QElement::one(&s)
        );
        assert_eq!(
            parse_element("(a + b)^2", &s).unwrap(),
            parse_element("a^2 + a*b + b*a + b^2", &s).unwrap()
        );
        assert_eq!(parse_element("-a + a", &s).unwrap(), QElement::zero(&s));
    }

    #[test]
    fn classical_prefix_is_lifted() {
        let s = spec(2);
        let x = parse_element("alpha*b", &s).unwrap();
        assert_eq!(x, QElement::monomial(&s, QMonomial::new(2, 1, 0, 0)));
    }
}
