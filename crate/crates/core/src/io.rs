//! File formats: curve/quad JSON, solution sets, pi-distance results,
//! smoothed curves and CSV rows. Floats are written with 17 significant
//! digits so output is byte-stable and round-trips exactly.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::approx::{Piece, SmoothedCurve};
use crate::curve::PolyCurve;
use crate::error::{GeomError, Result};
use crate::pidist::{CurvatureWindow, PiDistanceResult, PiMode, PiValue};
use crate::quad::Quad;
use crate::scalar::Scalar;
use crate::solver::SolutionSet;

/// `{"dimension": n, "closed": bool, "vertices": [[x, y, ...], ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub dimension: usize,
    pub closed: bool,
    pub vertices: Vec<Vec<f64>>,
}

impl CurveJson {
    pub fn from_curve<T: Scalar>(c: &PolyCurve<T>) -> Self {
        Self { dimension: c.dim(), closed: c.is_closed(), vertices: c.vertices().iter().map(|v| v.to_f64()).collect() }
    }

    pub fn to_curve<T: Scalar>(&self) -> Result<PolyCurve<T>> {
        if let Some((i, v)) = self.vertices.iter().enumerate().find(|(_, v)| v.len() != self.dimension) {
            return Err(GeomError::DimensionMismatch { index: i, expected: self.dimension, got: v.len() });
        }
        PolyCurve::from_f64(&self.vertices, self.closed)
    }
}

pub fn parse_curve<T: Scalar>(text: &str) -> std::result::Result<PolyCurve<T>, String> {
    let json: CurveJson = serde_json::from_str(text).map_err(|e| format!("invalid curve JSON: {e}"))?;
    json.to_curve().map_err(|e| format!("invalid curve: {e}"))
}

/// `{"points": [[...], [...], [...], [...]]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadJson {
    pub points: Vec<Vec<f64>>,
}

impl QuadJson {
    pub fn from_quad<T: Scalar>(q: &Quad<T>) -> Self {
        Self { points: q.points().iter().map(|p| p.to_f64()).collect() }
    }

    pub fn to_quad<T: Scalar>(&self) -> Result<Quad<T>> {
        let pts: [Vec<f64>; 4] = self
            .points
            .clone()
            .try_into()
            .map_err(|_| GeomError::InvalidArgument("a quad needs exactly four points".into()))?;
        Quad::from_f64(&pts)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionJson {
    pub params: [f64; 4],
    pub points: Vec<Vec<f64>>,
    pub sides: [f64; 4],
    pub diagonals: [f64; 2],
    pub theta: Option<f64>,
    pub open_turning: f64,
    pub residual: f64,
    pub arc_kappa_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionSetJson {
    pub solutions: Vec<SolutionJson>,
    pub raw_count: usize,
    pub non_generic: bool,
    pub parity_note: String,
}

impl SolutionSetJson {
    pub fn from_set<T: Scalar>(set: &SolutionSet<T>) -> Self {
        let solutions = set
            .solutions
            .iter()
            .map(|s| SolutionJson {
                params: s.params.0.map(|x| x.as_f64()),
                points: s.quad.points().iter().map(|p| p.to_f64()).collect(),
                sides: s.metrics.sides.map(|x| x.as_f64()),
                diagonals: s.metrics.diagonals.map(|x| x.as_f64()),
                theta: s.metrics.theta.map(|x| x.as_f64()),
                open_turning: s.metrics.open_turning.as_f64(),
                residual: s.residual_norm.as_f64(),
                arc_kappa_ok: s.arc_kappa_ok,
            })
            .collect();
        Self { solutions, raw_count: set.raw_count, non_generic: set.non_generic, parity_note: set.parity_note.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowJson {
    pub a: f64,
    pub b: f64,
    pub kappa: f64,
    pub chord: f64,
    pub arclen: f64,
}

impl WindowJson {
    pub fn from_window<T: Scalar>(w: &CurvatureWindow<T>) -> Self {
        Self { a: w.a.as_f64(), b: w.b.as_f64(), kappa: w.kappa.as_f64(), chord: w.chord.as_f64(), arclen: w.arclen.as_f64() }
    }
}

/// A finite length or the string `"unbounded"`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PiValueJson {
    Finite(f64),
    Sentinel(&'static str),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiDistanceJson {
    pub value: PiValueJson,
    pub witness: Option<WindowJson>,
    pub mode: PiMode,
    pub cap: f64,
    pub resolution: f64,
}

impl PiDistanceJson {
    pub fn from_result<T: Scalar>(r: &PiDistanceResult<T>) -> Self {
        Self {
            value: match r.value {
                PiValue::Finite(v) => PiValueJson::Finite(v.as_f64()),
                PiValue::Unbounded => PiValueJson::Sentinel("unbounded"),
            },
            witness: r.witness.as_ref().map(WindowJson::from_window),
            mode: r.mode,
            cap: r.cap.as_f64(),
            resolution: r.resolution.as_f64(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PieceJson {
    Seg { from: Vec<f64>, to: Vec<f64> },
    Arc { center: Vec<f64>, radius: f64, basis: [Vec<f64>; 2], start_angle: f64, end_angle: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothedCurveJson {
    pub closed: bool,
    pub max_trim: f64,
    pub pieces: Vec<PieceJson>,
}

impl SmoothedCurveJson {
    pub fn from_smoothed<T: Scalar>(s: &SmoothedCurve<T>) -> Self {
        let pieces = s
            .pieces
            .iter()
            .map(|p| match p {
                Piece::Segment { from, to } => PieceJson::Seg { from: from.to_f64(), to: to.to_f64() },
                Piece::Arc(a) => PieceJson::Arc {
                    center: a.center.to_f64(),
                    radius: a.radius.as_f64(),
                    basis: [a.e1.to_f64(), a.e2.to_f64()],
                    start_angle: a.start.as_f64(),
                    end_angle: a.end.as_f64(),
                },
            })
            .collect();
        Self { closed: s.closed, max_trim: s.max_trim.as_f64(), pieces }
    }
}

/// Pretty JSON with every float written as `{:.16e}`.
pub struct FixedDigits {
    inner: PrettyFormatter<'static>,
}

impl Default for FixedDigits {
    fn default() -> Self {
        Self { inner: PrettyFormatter::new() }
    }
}

macro_rules! forward {
    ($($name:ident),*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
                self.inner.$name(w)
            }
        )*
    };
}

impl Formatter for FixedDigits {
    forward!(begin_array, end_array, end_array_value, begin_object, end_object, begin_object_value, end_object_value);

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if v.is_finite() {
            write!(w, "{}", fmt17(v))
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_json<S: Serialize>(value: &S) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits::default());
    value.serialize(&mut ser).expect("in-memory serialization");
    let mut s = String::from_utf8(buf).expect("JSON is UTF-8");
    s.push('\n');
    s
}

/// `a,b,kappa,chord,arclen` rows.
pub fn windows_csv<T: Scalar>(windows: &[CurvatureWindow<T>]) -> String {
    let mut out = String::from("a,b,kappa,chord,arclen\n");
    for w in windows {
        let row = [w.a, w.b, w.kappa, w.chord, w.arclen].map(|x| fmt17(x.as_f64()));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// One CSV row of plain numbers.
pub fn csv_row(fields: &[CsvField]) -> String {
    let cols: Vec<String> = fields
        .iter()
        .map(|f| match f {
            CsvField::Int(i) => i.to_string(),
            CsvField::Num(x) if x.is_finite() => fmt17(*x),
            CsvField::Num(_) => String::new(),
            CsvField::Text(t) => t.clone(),
        })
        .collect();
    let mut s = cols.join(",");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq)]
pub enum CsvField {
    Int(i64),
    Num(f64),
    Text(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn curve_schema_errors() {
        assert!(parse_curve::<f64>("{\"dimension\": 2}").is_err());
        let bad = r#"{"dimension": 3, "closed": true, "vertices": [[0,0],[1,0],[0,1]]}"#;
        assert!(parse_curve::<f64>(bad).unwrap_err().contains("dimension"));
        let ok = r#"{"dimension": 2, "closed": true, "vertices": [[0,0],[1,0],[0,1]]}"#;
        assert_eq!(parse_curve::<f64>(ok).unwrap().num_vertices(), 3);
    }

    #[test]
    fn float_format_and_sentinel() {
        let j = to_json(&PiValueJson::Sentinel("unbounded"));
        assert_eq!(j.trim(), "\"unbounded\"");
        let j = to_json(&vec![1.5f64, 0.1]);
        assert!(j.contains("1.5000000000000000e0"));
        assert!(j.contains("1.0000000000000001e-1"));
    }

    #[test]
    fn quad_json_needs_four_points() {
        let q = QuadJson { points: vec![vec![0.0, 0.0]; 3] };
        assert!(q.to_quad::<f64>().is_err());
    }

    proptest! {
        #[test]
        fn curve_json_round_trip(v in prop::collection::vec(prop::collection::vec(-1e6f64..1e6, 3), 3..20)) {
            if let Ok(c) = PolyCurve::<f64>::from_f64(&v, true) {
                let text = to_json(&CurveJson::from_curve(&c));
                let back: PolyCurve<f64> = parse_curve(&text).unwrap();
                prop_assert_eq!(back, c);
            }
        }
    }
}
