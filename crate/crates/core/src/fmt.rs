//! Fixed-precision float rendering for reports.

/// Rounds to 12 significant digits. Values that round to zero become `0.0`
/// so that `-0` never leaks into output.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.11e}", x).parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounds to 12 significant digits and snaps magnitudes below `zero_band`
/// to zero.
pub fn round_snap(x: f64, zero_band: f64) -> f64 {
    if x.abs() <= zero_band {
        0.0
    } else {
        round_sig(x)
    }
}

/// Shortest decimal form of the 12-significant-digit rounding.
pub fn fmt_float(x: f64) -> String {
    format!("{}", round_sig(x))
}

pub fn serialize_f64<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub fn serialize_vec_f64<S: serde::Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&round_sig(*x))?;
    }
    seq.end()
}

pub fn serialize_opt_f64<S: serde::Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig(*v)),
        None => s.serialize_none(),
    }
}
