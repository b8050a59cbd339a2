//! Encoding and decoding for an arbitrary linear relay scheme.
//!
//! The destination sees `y = G_S x_S + G_M x_M`. A codeword space `X` is
//! usable when `S = G_S X` meets `range(G_M)` only at zero: then every `y`
//! splits uniquely into an `S` part and a disturbance part, and the `S` part
//! identifies the message. The largest such `S` complements
//! `range(G_S) ∩ range(G_M)` inside `range(G_S)`.

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// Codebook built from a pair of transfer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codebook {
    rate: usize,
    encoder: Gf2Matrix,
    decode_basis: Gf2Matrix,
    msg_map: Gf2Matrix,
    /// Left inverse of `decode_basis`, one row per decode coordinate.
    coords: Gf2Matrix,
}

/// Basis of `range(a) ∩ range(b)`, from the kernel of `[a b]`.
fn intersection_basis(a: &Gf2Matrix, b: &Gf2Matrix) -> Result<Gf2Matrix> {
    let kernel = a.hconcat(b)?.kernel_basis();
    let a_part = kernel.submatrix(0..a.cols(), 0..kernel.cols());
    Ok(a.mul(&a_part)?.column_space_basis())
}

/// Left inverse `L` of a full-column-rank `basis`, so `L * basis = I`.
fn left_inverse(basis: &Gf2Matrix) -> Result<Gf2Matrix> {
    let n = basis.rows();
    let completion = Gf2Matrix::extend_basis(basis, &Gf2Matrix::identity(n))?;
    let square = basis.hconcat(&completion)?;
    let inv = square
        .inverse()?
        .ok_or_else(|| Error::ContractViolation("completed basis is singular".into()))?;
    Ok(inv.submatrix(0..basis.cols(), 0..n))
}

impl Codebook {
    /// Builds the codebook for transfer matrices `g_s` and `g_m` (both `q x q`).
    pub fn build(g_s: &Gf2Matrix, g_m: &Gf2Matrix) -> Result<Codebook> {
        if g_s.rows() != g_s.cols() || g_s.shape() != g_m.shape() {
            return Err(Error::mismatch("Codebook::build", g_s.shape(), g_m.shape()));
        }
        let shared = intersection_basis(g_s, g_m)?;
        let s_basis = Gf2Matrix::extend_basis(&shared, g_s)?;
        let rate = s_basis.cols();

        let mut encoder = Gf2Matrix::zeros(g_s.cols(), rate);
        for c in 0..rate {
            let x = g_s
                .solve(&s_basis.column_at(c))?
                .expect("columns of s_basis are columns of g_s");
            encoder.set_block(0, c, &x);
        }

        let decode_basis = s_basis.hconcat(&g_m.column_space_basis())?;
        let coords = left_inverse(&decode_basis)?;

        // S-coordinates of each encoded unit message, inverted.
        let image = coords
            .submatrix(0..rate, 0..coords.cols())
            .mul(&g_s.mul(&encoder)?)?;
        let msg_map = image
            .inverse()?
            .ok_or_else(|| Error::ContractViolation("encoder image is not a basis of S".into()))?;

        Ok(Codebook {
            rate,
            encoder,
            decode_basis,
            msg_map,
            coords,
        })
    }

    /// Message dimension `R`.
    pub fn rate(&self) -> usize {
        self.rate
    }

    /// `q x R`, columns spanning the codeword space.
    pub fn encoder(&self) -> &Gf2Matrix {
        &self.encoder
    }

    /// First `R` columns span `S`, the rest span `range(G_M)`.
    pub fn decode_basis(&self) -> &Gf2Matrix {
        &self.decode_basis
    }

    pub fn msg_map(&self) -> &Gf2Matrix {
        &self.msg_map
    }

    pub fn encode(&self, msg: &Gf2Matrix) -> Result<Gf2Matrix> {
        if msg.shape() != (self.rate, 1) {
            return Err(Error::mismatch("encode", msg.shape(), (self.rate, 1)));
        }
        self.encoder.mul(msg)
    }

    /// Recovers the message from a destination observation, whatever the
    /// disturbance was.
    pub fn decode(&self, y_d: &Gf2Matrix) -> Result<Gf2Matrix> {
        if y_d.shape() != (self.decode_basis.rows(), 1) {
            return Err(Error::mismatch("decode", y_d.shape(), (self.decode_basis.rows(), 1)));
        }
        let c = self.coords.mul(y_d)?;
        if self.decode_basis.mul(&c)? != *y_d {
            return Err(Error::InvalidObservation);
        }
        self.msg_map.mul(&c.submatrix(0..self.rate, 0..1))
    }
}
