//! Closed-form linear capacity and optimal relay schemes.
//!
//! Parameters are first normalized so that `n1 >= n2` (relabeling the relays
//! when needed). The normalized vector then falls into exactly one of six
//! regimes, each with its own upper bound and a matching explicit scheme:
//!
//! | regime | condition                  | capacity                                |
//! |--------|----------------------------|-----------------------------------------|
//! | Case1  | n1 > n2, n3 >= n4, m <= n1 | min(n1 - m + k, n3) with k = min(m, n4) |
//! | Case2  | n1 > n2, n3 >= n4, m > n1  | min(n1, n4)                             |
//! | Case3  | n1 > n2, n4 > n3, m <= n2  | min(n1, n4, n2 + n3 - m)                |
//! | Case4  | n1 > n2, n4 > n3, m > n2   | min(n1, n3)                             |
//! | Case5  | n1 = n2, m >= n1           | 0                                       |
//! | Case6  | n1 = n2, m < n1            | min(n1 - m, max(n3, n4))                |
//!
//! On the overlaps `n3 = n4` goes to Case1/Case2 and `m = n1` to Case1; the
//! neighbouring formulas agree there. Every constructed scheme cancels the
//! disturber completely (`G_M = 0`).

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::network::{achievable_rate, cut_bound, CodingScheme, NetworkParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Case6,
}

impl Case {
    pub const ALL: [Case; 6] = [
        Case::Case1,
        Case::Case2,
        Case::Case3,
        Case::Case4,
        Case::Case5,
        Case::Case6,
    ];
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegimeCase {
    pub case: Case,
    /// The relays were relabeled to get `n1 >= n2`.
    pub swapped: bool,
}

/// Result of [`capacity`].
///
/// `params` are the caller's parameters; `bound_terms`, `k` and `j` refer to
/// the normalized ones (relays relabeled when `regime.swapped`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacityReport {
    pub params: NetworkParams,
    pub regime: RegimeCase,
    pub capacity: usize,
    pub k: Option<usize>,
    pub j: Option<usize>,
    pub bound_terms: BTreeMap<String, usize>,
    pub cut: usize,
}

impl Serialize for CapacityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CapacityReport", 8)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("case", &self.regime.case)?;
        st.serialize_field("swapped", &self.regime.swapped)?;
        st.serialize_field("capacity", &self.capacity)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("j", &self.j)?;
        st.serialize_field("bound_terms", &self.bound_terms)?;
        st.serialize_field("cut", &self.cut)?;
        st.end()
    }
}

/// Relabels the relays if needed so that `n1 >= n2`. Ties keep the labels.
pub fn normalize(p: &NetworkParams) -> (NetworkParams, bool) {
    if p.n1() >= p.n2() {
        (*p, false)
    } else {
        (p.relabeled(), true)
    }
}

pub fn classify(p: &NetworkParams) -> RegimeCase {
    let (p, swapped) = normalize(p);
    let (n1, n2, n3, n4, m) = (p.n1(), p.n2(), p.n3(), p.n4(), p.m());
    let case = if n1 == n2 {
        if m >= n1 {
            Case::Case5
        } else {
            Case::Case6
        }
    } else if n3 >= n4 {
        if m <= n1 {
            Case::Case1
        } else {
            Case::Case2
        }
    } else if m <= n2 {
        Case::Case3
    } else {
        Case::Case4
    };
    RegimeCase { case, swapped }
}

/// Auxiliary integers and min-terms of one regime's bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeBound {
    pub k: Option<usize>,
    pub j: Option<usize>,
    pub terms: Vec<(&'static str, usize)>,
}

impl RegimeBound {
    pub fn value(&self) -> usize {
        self.terms.iter().map(|&(_, v)| v).min().unwrap_or(0)
    }
}

/// Evaluates the bound of `case` at normalized parameters `p`, whether or
/// not `p` lies in that regime. Returns `None` when a term would go negative.
pub fn regime_bound(case: Case, p: &NetworkParams) -> Option<RegimeBound> {
    let (n1, n2, n3, n4, m) = (p.n1(), p.n2(), p.n3(), p.n4(), p.m());
    let bound = match case {
        Case::Case1 => {
            let k = m.min(n4);
            let free = n1.checked_sub(m)?;
            RegimeBound {
                k: Some(k),
                j: Some(free.min(n3.checked_sub(k)?)),
                terms: vec![("n1-m+k", free + k), ("n3", n3)],
            }
        }
        Case::Case2 => RegimeBound {
            k: Some(n1.min(n4)),
            j: None,
            terms: vec![("n1", n1), ("n4", n4)],
        },
        Case::Case3 => RegimeBound {
            k: Some(n3.min(m)),
            j: None,
            terms: vec![("n1", n1), ("n4", n4), ("n2+n3-m", (n2 + n3).checked_sub(m)?)],
        },
        Case::Case4 => RegimeBound {
            k: Some(n1.min(n3)),
            j: None,
            terms: vec![("n1", n1), ("n3", n3)],
        },
        Case::Case5 => RegimeBound {
            k: None,
            j: None,
            terms: vec![("zero", 0)],
        },
        Case::Case6 => {
            let free = n1.checked_sub(m)?;
            let relay_out = n3.max(n4);
            RegimeBound {
                k: Some(free.min(relay_out)),
                j: None,
                terms: vec![("n1-m", free), ("max(n3,n4)", relay_out)],
            }
        }
    };
    Some(bound)
}

/// Closed-form linear capacity with its regime and bound breakdown.
pub fn capacity(p: &NetworkParams) -> CapacityReport {
    let regime = classify(p);
    let (norm, _) = normalize(p);
    let bound = regime_bound(regime.case, &norm)
        .expect("every term is nonnegative inside its own regime");
    CapacityReport {
        params: *p,
        regime,
        capacity: bound.value(),
        k: bound.k,
        j: bound.j,
        bound_terms: bound
            .terms
            .iter()
            .map(|&(name, v)| (name.to_string(), v))
            .collect(),
        cut: cut_bound(p),
    }
}

/// Target rank of the Case3 filler block `F`, with `k = min(n3, m)`:
/// `min(n4 - k, n1 - m, n2 + n3 - m - k)`.
pub fn max_rank_f_target(p: &NetworkParams) -> Result<usize> {
    if classify(p).case != Case::Case3 {
        return Err(Error::ContractViolation(format!(
            "max_rank_f_target needs a Case3 network, got {p}"
        )));
    }
    let (p, _) = normalize(p);
    let (n1, n2, n3, n4, m) = (p.n1(), p.n2(), p.n3(), p.n4(), p.m());
    let k = n3.min(m);
    Ok((n4 - k).min(n1 - m).min(n2 + n3 - m - k))
}

/// The `(n4 - k) x (n1 - m)` filler of Case3. Its top `n4 - n3` rows must be
/// zero in the last `n1 - n2` columns. Cells are switched on in row-major
/// order whenever doing so raises the rank, until `target` is reached.
fn greedy_fill_f(p: &NetworkParams, target: usize) -> Gf2Matrix {
    let (n1, n2, n3, n4, m) = (p.n1(), p.n2(), p.n3(), p.n4(), p.m());
    let k = n3.min(m);
    let (rows, cols) = (n4 - k, n1 - m);
    let (top_rows, open_cols) = (n4 - n3, n2 - m);
    let mut f = Gf2Matrix::zeros(rows, cols);
    let mut rank = 0;
    'fill: for r in 0..rows {
        for c in 0..cols {
            if rank == target {
                break 'fill;
            }
            if r < top_rows && c >= open_cols {
                continue;
            }
            f.set(r, c, true);
            let next = f.rank();
            if next > rank {
                rank = next;
            } else {
                f.set(r, c, false);
            }
        }
    }
    assert_eq!(rank, target, "greedy fill fell short of the maximal rank of F");
    f
}

fn put_identity(g: &mut Gf2Matrix, row: usize, col: usize, size: usize) {
    for i in 0..size {
        g.set(row + i, col + i, true);
    }
}

/// Explicit scheme for normalized parameters.
fn construct_normalized(p: &NetworkParams, case: Case, k: usize, j: usize) -> CodingScheme {
    let (n1, n2, n3, n4, m, q) = (p.n1(), p.n2(), p.n3(), p.n4(), p.m(), p.q());
    let mut g_a = Gf2Matrix::zeros(q, q);
    let mut g_b = Gf2Matrix::zeros(q, q);
    match case {
        Case::Case1 => {
            put_identity(&mut g_a, 0, q - n1, j);
            put_identity(&mut g_a, n3 - k, q - k, k);
            put_identity(&mut g_b, n4 - k, q - k, k);
        }
        // Both relays forward the same bottom k entries; the disturber's
        // share arrives twice at the same destination levels and cancels.
        Case::Case2 | Case::Case4 => {
            put_identity(&mut g_a, n3 - k, q - k, k);
            put_identity(&mut g_b, n4 - k, q - k, k);
        }
        Case::Case3 => {
            let target = max_rank_f_target(p).expect("normalized Case3");
            let f = greedy_fill_f(p, target);
            let top = n4 - n3;
            g_b.set_block(0, q - n2, &f.submatrix(0..top, 0..n2 - m));
            g_a.set_block(0, q - n1, &f.submatrix(top..f.rows(), 0..f.cols()));
            put_identity(&mut g_a, n3 - k, q - k, k);
            put_identity(&mut g_b, n4 - k, q - k, k);
        }
        Case::Case5 => {}
        Case::Case6 => {
            if n3 >= n4 {
                put_identity(&mut g_a, 0, q - n1, k);
            } else {
                put_identity(&mut g_b, 0, q - n2, k);
            }
        }
    }
    CodingScheme::new(g_a, g_b).expect("square blocks of equal size")
}

/// A relay scheme achieving [`capacity`], for the caller's relay labels.
///
/// # Panics
///
/// If the constructed scheme's rate differs from the closed form, which
/// would mean the construction is wrong.
pub fn construct_scheme(p: &NetworkParams) -> CodingScheme {
    let report = capacity(p);
    let (norm, swapped) = normalize(p);
    let scheme = construct_normalized(
        &norm,
        report.regime.case,
        report.k.unwrap_or(0),
        report.j.unwrap_or(0),
    );
    let scheme = if swapped { scheme.swapped() } else { scheme };
    let rate = achievable_rate(p, &scheme).expect("scheme built at dimension q");
    assert_eq!(
        rate, report.capacity,
        "constructed scheme for {p} reaches {rate}, closed form says {}",
        report.capacity
    );
    scheme
}
