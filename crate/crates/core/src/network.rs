//! The diamond relay network with a disturbing node.
//!
//! Source `S` reaches relays `A` and `B` with gains `n1`, `n2`; the relays
//! reach destination `D` with gains `n3`, `n4`; the disturber `M` reaches
//! both relays with gain `m`. Every signal lives in `F_2^q` with `q` the
//! largest gain, and a link of gain `n` applies `Q^(q - n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// Link gains of the network. `q` is always derived from the gains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct NetworkParams {
    n1: usize,
    n2: usize,
    n3: usize,
    n4: usize,
    m: usize,
    q: usize,
}

#[derive(Deserialize)]
struct RawParams {
    n1: usize,
    n2: usize,
    n3: usize,
    n4: usize,
    m: usize,
    q: Option<usize>,
}

impl TryFrom<RawParams> for NetworkParams {
    type Error = String;

    fn try_from(raw: RawParams) -> std::result::Result<Self, String> {
        let p = NetworkParams::new(raw.n1, raw.n2, raw.n3, raw.n4, raw.m);
        match raw.q {
            Some(q) if q != p.q => Err(format!("q = {q} does not match the derived value {}", p.q)),
            _ => Ok(p),
        }
    }
}

impl NetworkParams {
    pub fn new(n1: usize, n2: usize, n3: usize, n4: usize, m: usize) -> Self {
        let q = n1.max(n2).max(n3).max(n4).max(m);
        NetworkParams { n1, n2, n3, n4, m, q }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }
    pub fn n2(&self) -> usize {
        self.n2
    }
    pub fn n3(&self) -> usize {
        self.n3
    }
    pub fn n4(&self) -> usize {
        self.n4
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn q(&self) -> usize {
        self.q
    }

    /// The same network with relays `A` and `B` relabeled.
    pub fn relabeled(&self) -> Self {
        NetworkParams::new(self.n2, self.n1, self.n4, self.n3, self.m)
    }

    /// Every parameter vector in `[0, max_gain]^5`, with `n1` varying slowest.
    pub fn grid(max_gain: usize) -> impl Iterator<Item = NetworkParams> {
        let r = 0..=max_gain;
        r.clone().flat_map(move |n1| {
            let r = 0..=max_gain;
            r.flat_map(move |n2| {
                (0..=max_gain).flat_map(move |n3| {
                    (0..=max_gain).flat_map(move |n4| {
                        (0..=max_gain).map(move |m| NetworkParams::new(n1, n2, n3, n4, m))
                    })
                })
            })
        })
    }

    /// Columns of `G_A` that can carry anything: the received signal at `A`
    /// is supported on its last `max(n1, m)` entries.
    pub fn effective_width_a(&self) -> usize {
        self.n1.max(self.m)
    }

    pub fn effective_width_b(&self) -> usize {
        self.n2.max(self.m)
    }

    /// Number of free bits in an [`EffectiveScheme`] for these gains.
    pub fn effective_bits(&self) -> usize {
        self.n3 * self.effective_width_a() + self.n4 * self.effective_width_b()
    }
}

impl fmt::Display for NetworkParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n1={} n2={} n3={} n4={} m={} (q={})",
            self.n1, self.n2, self.n3, self.n4, self.m, self.q
        )
    }
}

/// Relay coding matrices `(G_A, G_B)`, each `q x q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingScheme {
    g_a: Gf2Matrix,
    g_b: Gf2Matrix,
}

impl CodingScheme {
    pub fn new(g_a: Gf2Matrix, g_b: Gf2Matrix) -> Result<Self> {
        if g_a.rows() != g_a.cols() || g_a.shape() != g_b.shape() {
            return Err(Error::mismatch("CodingScheme::new", g_a.shape(), g_b.shape()));
        }
        Ok(CodingScheme { g_a, g_b })
    }

    pub fn zero(q: usize) -> Self {
        CodingScheme {
            g_a: Gf2Matrix::zeros(q, q),
            g_b: Gf2Matrix::zeros(q, q),
        }
    }

    pub fn g_a(&self) -> &Gf2Matrix {
        &self.g_a
    }

    pub fn g_b(&self) -> &Gf2Matrix {
        &self.g_b
    }

    pub fn dim(&self) -> usize {
        self.g_a.rows()
    }

    pub fn into_parts(self) -> (Gf2Matrix, Gf2Matrix) {
        (self.g_a, self.g_b)
    }

    /// The scheme with the roles of the two relays exchanged.
    pub fn swapped(self) -> Self {
        CodingScheme {
            g_a: self.g_b,
            g_b: self.g_a,
        }
    }

    fn check(&self, p: &NetworkParams) -> Result<()> {
        if self.dim() != p.q() {
            return Err(Error::mismatch("scheme", self.g_a.shape(), (p.q(), p.q())));
        }
        Ok(())
    }
}

/// The blocks of `G_A` and `G_B` that can influence `y_D`: the top `n3`
/// (resp. `n4`) rows and the last `max(n1, m)` (resp. `max(n2, m)`) columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveScheme {
    pub block_a: Gf2Matrix,
    pub block_b: Gf2Matrix,
}

/// `Q^(q-out) * g * Q^(q-inp)` for a relay coding matrix `g`.
fn relay_term(q: usize, out_gain: usize, g: &Gf2Matrix, in_gain: usize) -> Result<Gf2Matrix> {
    Gf2Matrix::shift_pow(q, q - out_gain)
        .mul(g)?
        .mul(&Gf2Matrix::shift_pow(q, q - in_gain))
}

/// Source-to-destination transfer matrix
/// `G_S = Q^(q-n3) G_A Q^(q-n1) + Q^(q-n4) G_B Q^(q-n2)`.
pub fn compose_gs(p: &NetworkParams, s: &CodingScheme) -> Result<Gf2Matrix> {
    s.check(p)?;
    let q = p.q();
    relay_term(q, p.n3(), s.g_a(), p.n1())?.add(&relay_term(q, p.n4(), s.g_b(), p.n2())?)
}

/// Disturber-to-destination transfer matrix
/// `G_M = Q^(q-n3) G_A Q^(q-m) + Q^(q-n4) G_B Q^(q-m)`.
pub fn compose_gm(p: &NetworkParams, s: &CodingScheme) -> Result<Gf2Matrix> {
    s.check(p)?;
    let q = p.q();
    relay_term(q, p.n3(), s.g_a(), p.m())?.add(&relay_term(q, p.n4(), s.g_b(), p.m())?)
}

/// Rate of a linear scheme: `rank(G_S) - rank(G_S ∩ G_M)`.
pub fn achievable_rate(p: &NetworkParams, s: &CodingScheme) -> Result<usize> {
    let gs = compose_gs(p, s)?;
    let gm = compose_gm(p, s)?;
    gs.rank_deficit(&gm)
}

/// Runs one channel use through the layered network and returns `y_D`.
pub fn transmit(
    p: &NetworkParams,
    s: &CodingScheme,
    x_s: &Gf2Matrix,
    x_m: &Gf2Matrix,
) -> Result<Gf2Matrix> {
    s.check(p)?;
    let q = p.q();
    for x in [x_s, x_m] {
        if x.shape() != (q, 1) {
            return Err(Error::mismatch("transmit", x.shape(), (q, 1)));
        }
    }
    let link = |gain: usize, x: &Gf2Matrix| Gf2Matrix::shift_pow(q, q - gain).mul(x);

    let from_m = link(p.m(), x_m)?;
    let y_a = link(p.n1(), x_s)?.add(&from_m)?;
    let y_b = link(p.n2(), x_s)?.add(&from_m)?;
    let x_a = s.g_a().mul(&y_a)?;
    let x_b = s.g_b().mul(&y_b)?;
    link(p.n3(), &x_a)?.add(&link(p.n4(), &x_b)?)
}

/// Min-cut of the diamond with the disturber removed: the smallest of the
/// four cuts `{S}`, `{S,A,B}`, `{S,A}`, `{S,B}`.
pub fn cut_bound(p: &NetworkParams) -> usize {
    [
        p.n1().max(p.n2()),
        p.n3().max(p.n4()),
        p.n1() + p.n4(),
        p.n2() + p.n3(),
    ]
    .into_iter()
    .min()
    .unwrap()
}

pub fn extract_effective(p: &NetworkParams, s: &CodingScheme) -> Result<EffectiveScheme> {
    s.check(p)?;
    let q = p.q();
    let (wa, wb) = (p.effective_width_a(), p.effective_width_b());
    Ok(EffectiveScheme {
        block_a: s.g_a().submatrix(0..p.n3(), q - wa..q),
        block_b: s.g_b().submatrix(0..p.n4(), q - wb..q),
    })
}

/// Places the effective blocks into otherwise-zero `q x q` matrices.
pub fn embed_effective(p: &NetworkParams, e: &EffectiveScheme) -> Result<CodingScheme> {
    let q = p.q();
    let (wa, wb) = (p.effective_width_a(), p.effective_width_b());
    if e.block_a.shape() != (p.n3(), wa) {
        return Err(Error::mismatch("embed_effective", e.block_a.shape(), (p.n3(), wa)));
    }
    if e.block_b.shape() != (p.n4(), wb) {
        return Err(Error::mismatch("embed_effective", e.block_b.shape(), (p.n4(), wb)));
    }
    let mut scheme = CodingScheme::zero(q);
    scheme.g_a.set_block(0, q - wa, &e.block_a);
    scheme.g_b.set_block(0, q - wb, &e.block_b);
    Ok(scheme)
}
