//! Report serialization with a byte-stable contract: struct fields appear in
//! declaration order, maps are sorted, and every float is printed with 17
//! significant digits, so identical runs produce identical bytes.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::Serialize;

/// serde_json formatter printing floats as `d.dddddddddddddddde±x`.
struct SigFigFormatter;

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        if !value.is_finite() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "non-finite float in report",
            ));
        }
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes a report to a single JSON line on stdout.
pub fn emit_json<T: Serialize>(value: &T) -> io::Result<()> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    buf.push(b'\n');
    io::stdout().write_all(&buf)
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub prime: String,
    pub covered: Vec<u64>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub ring: String,
    pub k: usize,
    pub elements: Vec<String>,
    pub admissible: bool,
    pub witness: Option<WitnessJson>,
    pub primes_checked: Vec<String>,
}

#[derive(Serialize)]
pub struct FindReport {
    pub command: &'static str,
    pub ring: String,
    pub k: usize,
    pub elements: Vec<String>,
    pub diameter: Option<u64>,
    pub max_degree: Option<u64>,
}

#[derive(Serialize)]
pub struct EngelsmaReport {
    pub command: &'static str,
    pub path: String,
    pub status: String,
    pub k: Option<usize>,
    pub diameter: Option<u64>,
}

#[derive(Serialize)]
pub struct IrrCountReport {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub count: u64,
}

#[derive(Serialize)]
pub struct IrrListReport {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub irreducible_only: bool,
    pub count: u64,
    pub polys: Vec<String>,
}

#[derive(Serialize)]
pub struct IrrTestReport {
    pub command: &'static str,
    pub q: u64,
    pub poly: String,
    pub irreducible: bool,
}

#[derive(Serialize)]
pub struct SieveDemoReport {
    pub command: &'static str,
    pub ring: String,
    pub k: usize,
    pub tuple: Vec<String>,
    pub n: u64,
    pub theta: f64,
    pub delta: f64,
    pub d0: u64,
    pub r: f64,
    pub w: String,
    pub v0: String,
    pub f_power: u32,
    pub table_entries: usize,
    pub s1_emp: f64,
    pub s1_pred: f64,
    pub s2_emp: f64,
    pub s2_pred: f64,
    pub ratio_s1: f64,
    pub ratio_s2: f64,
    pub y_max: f64,
    pub lambda_max: f64,
    pub roundtrip_max_rel_err: f64,
}

#[derive(Serialize)]
pub struct GgpyReport {
    pub command: &'static str,
    pub ring: String,
    pub z: u64,
    pub g: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub singular_series: f64,
}

#[derive(Serialize)]
pub struct LodRowJson {
    pub modulus: String,
    pub norm: u64,
    pub phi: u64,
    pub max_abs_error: f64,
    pub normalized: f64,
}

#[derive(Serialize)]
pub struct LodMeasureReport {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub max_degree: u32,
    pub prime_count: u64,
    pub max_normalized: f64,
    pub worst_modulus: String,
    pub rows: Vec<LodRowJson>,
}

#[derive(Serialize)]
pub struct MkReport {
    pub command: &'static str,
    pub k: usize,
    pub degree_bound: u32,
    pub basis_size: usize,
    pub lower_bound: f64,
    pub residual: f64,
    pub rk: BTreeMap<String, u64>,
}

#[derive(Serialize)]
pub struct GapEntry {
    pub gap: String,
    pub count: u64,
}

#[derive(Serialize)]
pub struct CensusReport {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub total_of_degree: u64,
    pub occurring: u64,
    pub proportion: String,
    pub gaps: Vec<GapEntry>,
}

#[derive(Serialize)]
pub struct MonomialEntry {
    pub leading: u64,
    pub count: u64,
}

#[derive(Serialize)]
pub struct MonomialReport {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub gcd_coprime: bool,
    pub all_occur: bool,
    pub occurring: u64,
    pub monomials: Vec<MonomialEntry>,
}

#[derive(Serialize)]
pub struct TwistReport {
    pub command: &'static str,
    pub q: u64,
    pub f1: String,
    pub f2: String,
    pub target_leading: u64,
    pub omega: u64,
    pub g1: String,
    pub g2: String,
    pub gap: String,
}

#[derive(Serialize)]
pub struct ZcheckReport {
    pub command: &'static str,
    pub q: u64,
    pub k: usize,
    pub d: u32,
    pub n: u32,
    pub holds: bool,
    pub tuples_examined: u64,
    pub counterexample: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct BoundReport {
    pub command: &'static str,
    pub k0: u64,
    pub q: u64,
    pub numerator: i64,
    pub denominator: i64,
    pub value: f64,
}

#[derive(Serialize)]
pub struct PairJson {
    pub first: [i64; 2],
    pub second: [i64; 2],
    pub norm_first: i64,
    pub norm_second: i64,
}

#[derive(Serialize)]
pub struct NfPairsReport {
    pub command: &'static str,
    pub field: String,
    pub bound: i64,
    pub box_size: i64,
    pub cap: usize,
    pub count: usize,
    pub truncated: bool,
    pub pairs: Vec<PairJson>,
}

#[derive(Serialize)]
pub struct NfPrimeTestReport {
    pub command: &'static str,
    pub field: String,
    pub element: [i64; 2],
    pub norm: i64,
    pub prime: bool,
}
