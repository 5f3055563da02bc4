//! Numeric ε-deformation: seeds, Newton tracking, and generic-z completeness.
