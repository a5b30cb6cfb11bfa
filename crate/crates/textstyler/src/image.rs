//! In-memory image representation and PNG I/O.
//!
//! Images are `(height, width, 3)` arrays of scalars in `[0, 1]`. PNG files
//! are 8-bit RGB; values convert by division by 255 on read and round-half-up
//! multiplication on write.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};
use ndarray::{Array1, Array3};
use std::path::Path;

/// Minimum side length for images entering the training/stylization pipeline.
/// Backend unit operations accept smaller images.
pub const MIN_PIPELINE_SIDE: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct ImageTensor<S: Scalar> {
    data: Array3<S>,
}

impl<S: Scalar> ImageTensor<S> {
    /// Wraps an `(H, W, 3)` array, validating that every value is finite and
    /// within `[0, 1]`.
    pub fn new(data: Array3<S>) -> Result<Self> {
        let shape = data.shape();
        if shape[2] != 3 {
            return Err(Error::InvalidInput(format!(
                "image must have 3 channels, got {}",
                shape[2]
            )));
        }
        if shape[0] == 0 || shape[1] == 0 {
            return Err(Error::InvalidInput("image has zero area".into()));
        }
        for &v in data.iter() {
            if !v.is_finite() || v < S::zero() || v > S::one() {
                return Err(Error::InvalidInput(format!(
                    "image value {v} outside [0, 1]"
                )));
            }
        }
        Ok(Self { data })
    }

    /// Builds an image from a per-pixel closure; values are clamped to [0, 1].
    pub fn from_fn(height: usize, width: usize, f: impl Fn(usize, usize, usize) -> S) -> Self {
        let data = Array3::from_shape_fn((height, width, 3), |(y, x, ch)| {
            f(y, x, ch).max(S::zero()).min(S::one())
        });
        Self { data }
    }

    pub fn height(&self) -> usize {
        self.data.shape()[0]
    }

    pub fn width(&self) -> usize {
        self.data.shape()[1]
    }

    pub fn data(&self) -> &Array3<S> {
        &self.data
    }

    pub fn into_data(self) -> Array3<S> {
        self.data
    }

    /// Row-major `(y, x, channel)` flattening used by the image embedder.
    pub fn flatten(&self) -> Array1<S> {
        Array1::from_iter(self.data.iter().copied())
    }

    /// Enforces the stricter entry contract of the training/stylization
    /// pipeline: both sides at least [`MIN_PIPELINE_SIDE`].
    pub fn validate_pipeline_entry(&self) -> Result<()> {
        if self.height() < MIN_PIPELINE_SIDE || self.width() < MIN_PIPELINE_SIDE {
            return Err(Error::InvalidInput(format!(
                "pipeline images must be at least {MIN_PIPELINE_SIDE}x{MIN_PIPELINE_SIDE}, got {}x{}",
                self.height(),
                self.width()
            )));
        }
        Ok(())
    }

    pub fn load_png(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let img = image::open(path)?.to_rgb8();
        let (w, h) = (img.width() as usize, img.height() as usize);
        let scale = c::<S>(1.0 / 255.0);
        let data = Array3::from_shape_fn((h, w, 3), |(y, x, ch)| {
            S::from_usize(img.get_pixel(x as u32, y as u32).0[ch] as usize) * scale
        });
        Self::new(data)
    }

    pub fn save_png(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let (h, w) = (self.height(), self.width());
        let mut buf = image::RgbImage::new(w as u32, h as u32);
        for y in 0..h {
            for x in 0..w {
                let px: [u8; 3] = std::array::from_fn(|ch| {
                    // round-half-up into the 8-bit range
                    let v = self.data[[y, x, ch]].to_f64_lossy() * 255.0 + 0.5;
                    v.floor().clamp(0.0, 255.0) as u8
                });
                buf.put_pixel(x as u32, y as u32, image::Rgb(px));
            }
        }
        buf.save(path)?;
        Ok(())
    }
}

/// Bilinear resize to `(out_h, out_w)` with half-pixel centers. Linear in the
/// pixel values, so [`bilinear_resize_vjp`] is its exact adjoint.
pub fn bilinear_resize<S: Scalar>(src: &Array3<S>, out_h: usize, out_w: usize) -> Array3<S> {
    let (h, w) = (src.shape()[0], src.shape()[1]);
    let mut out = Array3::zeros((out_h, out_w, 3));
    for oy in 0..out_h {
        let (y0, y1, fy) = sample_axis::<S>(oy, out_h, h);
        for ox in 0..out_w {
            let (x0, x1, fx) = sample_axis::<S>(ox, out_w, w);
            let w00 = (S::one() - fy) * (S::one() - fx);
            let w01 = (S::one() - fy) * fx;
            let w10 = fy * (S::one() - fx);
            let w11 = fy * fx;
            for ch in 0..3 {
                out[[oy, ox, ch]] = w00 * src[[y0, x0, ch]]
                    + w01 * src[[y0, x1, ch]]
                    + w10 * src[[y1, x0, ch]]
                    + w11 * src[[y1, x1, ch]];
            }
        }
    }
    out
}

/// Adjoint of [`bilinear_resize`]: scatters a cotangent on the resized image
/// back onto the source grid.
pub fn bilinear_resize_vjp<S: Scalar>(
    cotangent: &Array3<S>,
    src_h: usize,
    src_w: usize,
) -> Array3<S> {
    let (out_h, out_w) = (cotangent.shape()[0], cotangent.shape()[1]);
    let mut grad = Array3::zeros((src_h, src_w, 3));
    for oy in 0..out_h {
        let (y0, y1, fy) = sample_axis::<S>(oy, out_h, src_h);
        for ox in 0..out_w {
            let (x0, x1, fx) = sample_axis::<S>(ox, out_w, src_w);
            let w00 = (S::one() - fy) * (S::one() - fx);
            let w01 = (S::one() - fy) * fx;
            let w10 = fy * (S::one() - fx);
            let w11 = fy * fx;
            for ch in 0..3 {
                let g = cotangent[[oy, ox, ch]];
                grad[[y0, x0, ch]] += w00 * g;
                grad[[y0, x1, ch]] += w01 * g;
                grad[[y1, x0, ch]] += w10 * g;
                grad[[y1, x1, ch]] += w11 * g;
            }
        }
    }
    grad
}

/// Source interpolation data for one output index: floor/ceil source indices
/// (clamped) and the fractional weight of the ceil side.
fn sample_axis<S: Scalar>(out_idx: usize, out_len: usize, src_len: usize) -> (usize, usize, S) {
    let scale = src_len as f64 / out_len as f64;
    let pos = ((out_idx as f64 + 0.5) * scale - 0.5).max(0.0);
    let i0 = (pos.floor() as usize).min(src_len - 1);
    let i1 = (i0 + 1).min(src_len - 1);
    (i0, i1, c::<S>(pos - pos.floor()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array3;

    fn gradient_image(h: usize, w: usize) -> ImageTensor<f64> {
        ImageTensor::from_fn(h, w, |y, x, ch| {
            (y as f64 / h as f64 + x as f64 / w as f64 + ch as f64 * 0.1) / 2.3
        })
    }

    #[test]
    fn rejects_out_of_range_values() {
        let mut data = Array3::<f64>::zeros((4, 4, 3));
        data[[0, 0, 0]] = 1.5;
        assert!(matches!(
            ImageTensor::new(data),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn rejects_non_finite_values() {
        let mut data = Array3::<f64>::zeros((4, 4, 3));
        data[[1, 1, 2]] = f64::NAN;
        assert!(ImageTensor::new(data).is_err());
    }

    #[test]
    fn pipeline_entry_requires_min_side() {
        let small = gradient_image(16, 40);
        assert!(small.validate_pipeline_entry().is_err());
        let ok = gradient_image(32, 32);
        assert!(ok.validate_pipeline_entry().is_ok());
    }

    #[test]
    fn png_round_trip_is_exact_for_8bit_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.png");
        // values on the exact 8-bit lattice survive the round trip bit-for-bit
        let img = ImageTensor::<f64>::from_fn(33, 47, |y, x, ch| {
            ((y * 31 + x * 7 + ch * 77) % 256) as f64 / 255.0
        });
        img.save_png(&path).unwrap();
        let back = ImageTensor::<f64>::load_png(&path).unwrap();
        assert_eq!(img.data().shape(), back.data().shape());
        for (a, b) in img.data().iter().zip(back.data().iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn resize_identity_when_shapes_match() {
        let img = gradient_image(8, 8);
        let out = bilinear_resize(img.data(), 8, 8);
        for (a, b) in img.data().iter().zip(out.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn resize_adjoint_matches_inner_product_identity() {
        // <resize(x), u> must equal <x, resize_vjp(u)> for a linear map.
        let img = gradient_image(11, 7);
        let out = bilinear_resize(img.data(), 5, 9);
        let u = Array3::from_shape_fn((5, 9, 3), |(y, x, ch)| {
            ((y * 3 + x * 5 + ch) % 13) as f64 / 13.0 - 0.5
        });
        let lhs: f64 = out.iter().zip(u.iter()).map(|(a, b)| a * b).sum();
        let grad = bilinear_resize_vjp(&u, 11, 7);
        let rhs: f64 = img.data().iter().zip(grad.iter()).map(|(a, b)| a * b).sum();
        assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
    }
}
