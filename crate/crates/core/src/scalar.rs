use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Scalars the linear-algebra kernel can work over.
///
/// Exact equality is load-bearing everywhere in this crate: roots are
/// compared, deduplicated, and hashed by value, and group elements are
/// keyed by their matrix entries. The `Eq + Ord + Hash` bounds therefore
/// exclude floating-point types by construction; integers and rationals
/// of any width qualify.
pub trait Scalar:
    Num + Signed + Clone + Eq + Ord + Hash + Debug + Display + 'static
{
}

impl<T> Scalar for T where
    T: Num + Signed + Clone + Eq + Ord + Hash + Debug + Display + 'static
{
}

/// Scalars with exact division: every nonzero element has an inverse.
///
/// Gaussian elimination, matrix inversion, and linear solving require
/// this; chain combinatorics and root arithmetic do not.
pub trait Field: Scalar {}

impl<T> Field for Ratio<T>
where
    T: num_integer::Integer + Signed + Clone + Eq + Ord + Hash + Debug + Display + 'static,
    Ratio<T>: Num + Signed,
{
}
