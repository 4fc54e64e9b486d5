use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Rat;

/// A point of `tau ∪ (∂tau × [0, 1])` in barycentric coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollarPoint {
    /// A point of the simplex `tau`.
    Simplex(Vec<Rat>),
    /// A point `x` of `∂tau` with collar parameter `lambda`.
    Collar(Vec<Rat>, Rat),
}

/// Nonnegative coordinates summing to one.
pub fn is_barycentric(x: &[Rat]) -> bool {
    !x.is_empty() && x.iter().all(|c| !c.is_negative()) && x.iter().sum::<Rat>() == Rat::one()
}

/// The barycentre of the standard `m`-simplex.
pub fn barycenter(m: usize) -> Vec<Rat> {
    vec![Rat::new(1.into(), (m as i64 + 1).into()); m + 1]
}

/// The PL homeomorphism `g` from the collared simplex onto `Delta_m`:
/// `b/2 + x/2` on `tau`, and `(1-lambda)/2 b + (1+lambda)/2 x` on the collar.
pub fn collar_cone_map(p: &CollarPoint, m: usize) -> Result<Vec<Rat>> {
    let x = match p {
        CollarPoint::Simplex(x) | CollarPoint::Collar(x, _) => x,
    };
    if x.len() != m + 1 {
        return Err(Error::Dimension {
            expected: m + 1,
            found: x.len(),
        });
    }
    if !is_barycentric(x) {
        return Err(Error::Invalid("coordinates must be nonnegative and sum to 1".into()));
    }
    let half = Rat::new(1.into(), 2.into());
    let (wb, wx) = match p {
        CollarPoint::Simplex(_) => (half.clone(), half),
        CollarPoint::Collar(_, lambda) => {
            if *lambda < Rat::zero() || *lambda > Rat::one() {
                return Err(Error::Invalid("lambda must lie in [0, 1]".into()));
            }
            if x.iter().all(|c| !c.is_zero()) {
                return Err(Error::Invalid(
                    "a collar point must lie on the boundary of the simplex".into(),
                ));
            }
            ((Rat::one() - lambda) * &half, (Rat::one() + lambda) * &half)
        }
    };
    Ok(barycenter(m).iter().zip(x).map(|(b, xi)| &wb * b + &wx * xi).collect())
}
