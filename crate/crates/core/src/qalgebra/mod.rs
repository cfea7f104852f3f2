//! PBW normal forms for A(SL_q(2)) and A(SL(2)), and the Hopf structure maps.
//!
//! Reduced monomials are a^i b^j c^k (any i) and b^j c^k d^m (m ≥ 1); the
//! q-determinant ad − qbc = 1 removes every word containing both a and d.

mod classical;
mod element;
mod hopf;
mod monomial;
mod tensor;

pub use classical::{classical_mul, classical_normalize, ClassicalElement, ClassicalGen, ClassicalMonomial};
pub use element::{power, qmul, straighten, QElement, Word};
pub use hopf::{
    antipode, antipode_holds, antipode_monomial, coassociativity_holds, coproduct, coproduct_monomial, counit,
    counit_holds, counit_monomial,
};
pub use monomial::{Gen, QMonomial};
pub use tensor::{tensor_mul, Tensor, TensorElement, TripleTensor};
