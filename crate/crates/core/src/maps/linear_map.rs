//! Linear maps from the algebra into a bimodule, stored as images of the
//! canonical basis.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, Bimodule, BlockPartition};
use crate::error::Error;
use crate::linalg::{Rational, Scalar};

/// A linear map `T -> M`: one image vector of length `dim(M)` per algebra
/// basis element, in canonical basis order.
#[derive(Clone)]
pub struct LinearMap {
    bimodule: Arc<Bimodule>,
    images: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn new(bimodule: Arc<Bimodule>, images: Vec<Vec<Rational>>) -> crate::Result<Self> {
        let expected = bimodule.basis().len();
        if images.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: images.len(),
                what: "image count",
            });
        }
        for v in &images {
            if v.len() != bimodule.dim() {
                return Err(Error::DimensionMismatch {
                    expected: bimodule.dim(),
                    found: v.len(),
                    what: "image vector length",
                });
            }
        }
        Ok(LinearMap { bimodule, images })
    }

    pub fn zero(bimodule: Arc<Bimodule>) -> Self {
        let images = vec![vec![Rational::zero(); bimodule.dim()]; bimodule.basis().len()];
        LinearMap { bimodule, images }
    }

    /// Rebuilds a map from the flat coordinate vector used by the
    /// constraint systems: position `e * dim + t` is coordinate `t` of the
    /// image of basis element `e`.
    pub fn from_coordinates(bimodule: Arc<Bimodule>, coords: &[Rational]) -> crate::Result<Self> {
        let dim = bimodule.dim();
        let expected = bimodule.basis().len() * dim;
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coords.len(),
                what: "coordinate vector length",
            });
        }
        if dim == 0 {
            return Ok(LinearMap::zero(bimodule));
        }
        let images = coords.chunks(dim).map(<[Rational]>::to_vec).collect();
        Ok(LinearMap { bimodule, images })
    }

    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.bimodule
    }

    pub fn partition(&self) -> &BlockPartition {
        self.bimodule.partition()
    }

    pub fn images(&self) -> &[Vec<Rational>] {
        &self.images
    }

    pub fn image(&self, idx: usize) -> &[Rational] {
        &self.images[idx]
    }

    /// Flat coordinate vector, the inverse of [`LinearMap::from_coordinates`].
    pub fn coordinates(&self) -> Vec<Rational> {
        self.images.iter().flatten().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.iter().all(Rational::is_zero))
    }

    /// Evaluates the map by linearity.
    pub fn apply(&self, x: &AlgebraElement) -> crate::Result<Vec<Rational>> {
        if x.partition() != self.partition() {
            return Err(Error::PartitionMismatch);
        }
        let mut acc = vec![Rational::zero(); self.bimodule.dim()];
        for (idx, &(i, j)) in self.bimodule.basis().pairs().iter().enumerate() {
            let c = x.get(i, j);
            if !c.is_zero() {
                for (a, t) in acc.iter_mut().zip(&self.images[idx]) {
                    *a = a.add(&t.mul(c));
                }
            }
        }
        Ok(acc)
    }

    pub fn add(&self, rhs: &Self) -> crate::Result<Self> {
        self.zip_with(rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Self) -> crate::Result<Self> {
        self.zip_with(rhs, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        let images = self
            .images
            .iter()
            .map(|v| v.iter().map(Scalar::neg).collect())
            .collect();
        LinearMap { bimodule: Arc::clone(&self.bimodule), images }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let images = self
            .images
            .iter()
            .map(|v| v.iter().map(|t| t.mul(k)).collect())
            .collect();
        LinearMap { bimodule: Arc::clone(&self.bimodule), images }
    }

    fn zip_with(
        &self,
        rhs: &Self,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> crate::Result<Self> {
        if self.partition() != rhs.partition() || self.bimodule.dim() != rhs.bimodule.dim() {
            return Err(Error::PartitionMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&rhs.images)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            .collect();
        Ok(LinearMap { bimodule: Arc::clone(&self.bimodule), images })
    }
}

impl PartialEq for LinearMap {
    /// Exact coordinate equality over the same partition and dimension.
    fn eq(&self, other: &Self) -> bool {
        self.partition() == other.partition()
            && self.bimodule.dim() == other.bimodule.dim()
            && self.images == other.images
    }
}

impl Eq for LinearMap {}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearMap {{ partition: {}, bimodule: {:?}, images: {:?} }}",
            self.partition(),
            self.bimodule.label(),
            self.images
        )
    }
}

/// The inner derivation `a -> a.v - v.a` of a bimodule element `v`.
pub fn inner_derivation(bimodule: &Arc<Bimodule>, v: &[Rational]) -> crate::Result<LinearMap> {
    if v.len() != bimodule.dim() {
        return Err(Error::DimensionMismatch {
            expected: bimodule.dim(),
            found: v.len(),
            what: "inner derivation element length",
        });
    }
    let images = (0..bimodule.basis().len())
        .map(|idx| {
            let av = bimodule.left(idx).matvec(v);
            let va = bimodule.right(idx).matvec(v);
            av.iter().zip(&va).map(|(a, b)| a.sub(b)).collect()
        })
        .collect();
    LinearMap::new(Arc::clone(bimodule), images)
}
