use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field. Floating-point types are deliberately excluded
/// (they are not `Ord`); every instance must embed into the rationals.
pub trait ExactField:
    Clone + Ord + Hash + Num + Signed + FromPrimitive + Debug + Display + Send + Sync
{
    fn to_rational(&self) -> BigRational;
}

impl ExactField for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

macro_rules! machine_ratio {
    ($($int:ty),*) => {$(
        impl ExactField for Ratio<$int> {
            fn to_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    )*};
}

machine_ratio!(i32, i64, i128);
