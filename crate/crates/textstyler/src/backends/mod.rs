//! Pluggable differentiable backends: a joint text-image embedder and a style
//! application network. Deterministic toy implementations are built in; the
//! `pretrained` module adapts exported model containers.

mod pretrained;
mod toy;

pub use pretrained::{PretrainedEmbedder, PretrainedStylizer};
pub use toy::{ToyEmbedder, ToyStylizer, EMBED_GRID};

use crate::embedding::{ImageEmbedding, StyleEmbedding, TextEmbedding};
use crate::error::Result;
use crate::image::ImageTensor;
use crate::scalar::Scalar;
use ndarray::{Array1, Array3};

/// Joint text-image embedder. Implementations must be deterministic for a
/// fixed configuration and immutable after construction.
pub trait EmbedderBackend<S: Scalar>: Send + Sync {
    fn embed_text(&self, prompt: &str) -> Result<TextEmbedding<S>>;
    fn embed_image(&self, img: &ImageTensor<S>) -> Result<ImageEmbedding<S>>;
    /// Stable identifier for run manifests.
    fn fingerprint(&self) -> String;
}

/// Style application network: stylizes a content image under a 100-d style
/// vector, preserving the content's spatial shape.
pub trait StylizerBackend<S: Scalar>: Send + Sync {
    fn apply(&self, content: &ImageTensor<S>, style: &StyleEmbedding<S>) -> Result<ImageTensor<S>>;
    fn fingerprint(&self) -> String;
}

/// Embedder whose image branch exposes an exact vector-Jacobian product,
/// enabling gradient flow from embedding-space losses back to pixels.
pub trait DifferentiableEmbedder<S: Scalar>: EmbedderBackend<S> {
    /// Given a cotangent on the embedding, returns the cotangent on the
    /// image pixels (same shape as the image).
    fn embed_image_vjp(&self, img: &ImageTensor<S>, cotangent: &Array1<S>) -> Result<Array3<S>>;
}

/// Stylizer exposing the exact vector-Jacobian product of the output image
/// with respect to the style vector.
pub trait DifferentiableStylizer<S: Scalar>: StylizerBackend<S> {
    /// Given a cotangent on the output image, returns the cotangent on the
    /// 100-d style vector.
    fn apply_style_vjp(
        &self,
        content: &ImageTensor<S>,
        style: &StyleEmbedding<S>,
        cotangent: &Array3<S>,
    ) -> Result<Array1<S>>;
}

/// Closed set of embedders selectable from the CLI.
pub enum Embedder<S: Scalar> {
    Toy(ToyEmbedder<S>),
    Pretrained(PretrainedEmbedder<S>),
}

/// Closed set of stylizers selectable from the CLI.
pub enum Stylizer<S: Scalar> {
    Toy(ToyStylizer<S>),
    Pretrained(PretrainedStylizer<S>),
}

impl<S: Scalar> EmbedderBackend<S> for Embedder<S> {
    fn embed_text(&self, prompt: &str) -> Result<TextEmbedding<S>> {
        match self {
            Embedder::Toy(b) => b.embed_text(prompt),
            Embedder::Pretrained(b) => b.embed_text(prompt),
        }
    }

    fn embed_image(&self, img: &ImageTensor<S>) -> Result<ImageEmbedding<S>> {
        match self {
            Embedder::Toy(b) => b.embed_image(img),
            Embedder::Pretrained(b) => b.embed_image(img),
        }
    }

    fn fingerprint(&self) -> String {
        match self {
            Embedder::Toy(b) => b.fingerprint(),
            Embedder::Pretrained(b) => b.fingerprint(),
        }
    }
}

impl<S: Scalar> DifferentiableEmbedder<S> for Embedder<S> {
    fn embed_image_vjp(&self, img: &ImageTensor<S>, cotangent: &Array1<S>) -> Result<Array3<S>> {
        match self {
            Embedder::Toy(b) => b.embed_image_vjp(img, cotangent),
            Embedder::Pretrained(b) => b.embed_image_vjp(img, cotangent),
        }
    }
}

impl<S: Scalar> StylizerBackend<S> for Stylizer<S> {
    fn apply(&self, content: &ImageTensor<S>, style: &StyleEmbedding<S>) -> Result<ImageTensor<S>> {
        match self {
            Stylizer::Toy(b) => b.apply(content, style),
            Stylizer::Pretrained(b) => b.apply(content, style),
        }
    }

    fn fingerprint(&self) -> String {
        match self {
            Stylizer::Toy(b) => b.fingerprint(),
            Stylizer::Pretrained(b) => b.fingerprint(),
        }
    }
}

impl<S: Scalar> DifferentiableStylizer<S> for Stylizer<S> {
    fn apply_style_vjp(
        &self,
        content: &ImageTensor<S>,
        style: &StyleEmbedding<S>,
        cotangent: &Array3<S>,
    ) -> Result<Array1<S>> {
        match self {
            Stylizer::Toy(b) => b.apply_style_vjp(content, style, cotangent),
            Stylizer::Pretrained(b) => b.apply_style_vjp(content, style, cotangent),
        }
    }
}
