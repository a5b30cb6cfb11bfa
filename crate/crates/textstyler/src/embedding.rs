//! Vector newtypes for the two embedding spaces the pipeline bridges.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};
use ndarray::Array1;

/// Dimension of the joint text-image embedding space.
pub const TEXT_DIM: usize = 512;
/// Dimension of the style representation consumed by the stylizer.
pub const STYLE_DIM: usize = 100;

/// Unit-norm 512-d vector in the joint text-image space.
#[derive(Debug, Clone, PartialEq)]
pub struct TextEmbedding<S: Scalar>(Array1<S>);

/// Unit-norm 512-d image embedding in the same joint space.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageEmbedding<S: Scalar>(Array1<S>);

/// 100-d style vector; network outputs are componentwise in (-1, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct StyleEmbedding<S: Scalar>(Array1<S>);

fn validate_unit<S: Scalar>(v: &Array1<S>, dim: usize, what: &str) -> Result<()> {
    if v.len() != dim {
        return Err(Error::InvalidInput(format!(
            "{what} must have dimension {dim}, got {}",
            v.len()
        )));
    }
    let norm = l2_norm(v);
    if !norm.is_finite() || (norm - S::one()).abs() > c::<S>(1e-5) {
        return Err(Error::InvalidInput(format!(
            "{what} must be unit-norm within 1e-5, got norm {norm}"
        )));
    }
    Ok(())
}

impl<S: Scalar> TextEmbedding<S> {
    pub fn new(values: Array1<S>) -> Result<Self> {
        validate_unit(&values, TEXT_DIM, "text embedding")?;
        Ok(Self(values))
    }

    pub fn values(&self) -> &Array1<S> {
        &self.0
    }
}

impl<S: Scalar> ImageEmbedding<S> {
    pub fn new(values: Array1<S>) -> Result<Self> {
        validate_unit(&values, TEXT_DIM, "image embedding")?;
        Ok(Self(values))
    }

    pub fn values(&self) -> &Array1<S> {
        &self.0
    }
}

impl<S: Scalar> StyleEmbedding<S> {
    pub fn new(values: Array1<S>) -> Result<Self> {
        if values.len() != STYLE_DIM {
            return Err(Error::InvalidInput(format!(
                "style embedding must have dimension {STYLE_DIM}, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "style embedding contains non-finite values".into(),
            ));
        }
        Ok(Self(values))
    }

    pub fn zeros() -> Self {
        Self(Array1::zeros(STYLE_DIM))
    }

    pub fn values(&self) -> &Array1<S> {
        &self.0
    }

    pub fn into_values(self) -> Array1<S> {
        self.0
    }
}

pub fn l2_norm<S: Scalar>(v: &Array1<S>) -> S {
    v.iter().map(|x| *x * *x).sum::<S>().sqrt()
}

/// Normalizes to unit length; errors on (numerically) zero vectors.
pub fn normalize<S: Scalar>(v: Array1<S>) -> Result<Array1<S>> {
    let norm = l2_norm(&v);
    if !norm.is_finite() || norm < c::<S>(1e-30) {
        return Err(Error::InvalidInput(
            "cannot normalize a zero or non-finite vector".into(),
        ));
    }
    Ok(v / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_norm_enforced() {
        let v = Array1::from_elem(TEXT_DIM, 0.5f64);
        assert!(TextEmbedding::new(v).is_err());
        let mut u = Array1::zeros(TEXT_DIM);
        u[7] = 1.0f64;
        assert!(TextEmbedding::new(u).is_ok());
    }

    #[test]
    fn style_dimension_enforced() {
        assert!(StyleEmbedding::new(Array1::<f64>::zeros(99)).is_err());
        assert!(StyleEmbedding::new(Array1::<f64>::zeros(100)).is_ok());
    }

    #[test]
    fn normalize_rejects_zero() {
        assert!(normalize(Array1::<f64>::zeros(4)).is_err());
    }
}
