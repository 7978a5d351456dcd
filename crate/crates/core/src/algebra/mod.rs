//! Exact arithmetic for finite fields and the polynomial ring A = F_q[θ].

pub mod field;
pub mod poly;

pub use field::{Embedding, FieldDescriptor, FieldElement, DEGREE_BOUND, ORDER_BOUND};
pub use poly::{
    irreducibles_up_to, monic_by_index, monic_count, monic_enumerate, Polynomial,
    DEFAULT_ENUM_BUDGET,
};
