//! CSV tables. Every value is numeric or a word, so no quoting is needed
//! except for words over multi-character alphabets, which contain commas.

use std::fmt::Write;

use pisot_core::quantum::QuantumState;
use pisot_core::spacing::AngleList;
use pisot_core::words::ComplexityProfile;

use crate::format::sig12;

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `k,theta,x,y` with `k` starting at 1.
pub fn angles_csv(angles: &AngleList) -> String {
    let mut out = String::from("k,theta,x,y\n");
    for (k, &t) in angles.angles().iter().enumerate() {
        writeln!(out, "{},{},{},{}", k + 1, sig12(t), sig12(t.cos()), sig12(t.sin())).unwrap();
    }
    out
}

/// `n,p_n,estimate,sturmian,truncated`. `truncated` marks rows where `|A|^n`
/// exceeds the number of windows, so the estimate is only a lower bound.
pub fn profile_csv(profile: &ComplexityProfile) -> String {
    let mut out = String::from("n,p_n,estimate,sturmian,truncated\n");
    for n in 1..=profile.max_n() {
        let e = profile.entropy(n).expect("n within profile");
        let p = profile.get(n).expect("n within profile");
        writeln!(out, "{n},{p},{},{},{}", sig12(e.value), p == n as u64 + 1, e.truncated).unwrap();
    }
    out
}

/// `word,re,im`, amplitudes at full precision.
pub fn records_csv(state: &QuantumState) -> String {
    let mut out = String::from("word,re,im\n");
    for (w, re, im) in state.records() {
        writeln!(out, "{},{re:?},{im:?}", field(&w)).unwrap();
    }
    out
}

pub fn pairs_csv(header: (&str, &str), rows: impl IntoIterator<Item = (String, String)>) -> String {
    let mut out = format!("{},{}\n", header.0, header.1);
    for (a, b) in rows {
        writeln!(out, "{},{}", field(&a), field(&b)).unwrap();
    }
    out
}
