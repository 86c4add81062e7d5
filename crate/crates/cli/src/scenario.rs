//! Scenario files: INI-style sections of `key = value` pairs. See `docs/scenario-format.md`.

use std::collections::BTreeSet;
use std::path::Path;

use acphase::fields::{FieldConfig, LoopPath};
use acphase::grid::Grid;
use acphase::phase::{GridSpec, Spin};
use ini::{Ini, ParseOption, Properties};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown section [{0}]")]
    UnknownSection(String),
    #[error("[{section}] unknown key `{key}`")]
    UnknownKey { section: String, key: String },
    #[error("[{section}] `{key}` given more than once")]
    Duplicate { section: String, key: String },
    #[error("[{section}] missing required key `{key}`")]
    Missing { section: String, key: String },
    #[error("[{section}] `{key}` = {value:?}: {reason}")]
    Invalid { section: String, key: String, value: String, reason: String },
}

type Result<T> = std::result::Result<T, ConfigError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verification {
    Dirac,
    Kemmer,
    Proca,
    Ratio,
    Controls,
}

impl Verification {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "dirac" => Self::Dirac,
            "kemmer" => Self::Kemmer,
            "proca" => Self::Proca,
            "ratio" => Self::Ratio,
            "controls" => Self::Controls,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Uniform { e: [f64; 3], b: [f64; 3] },
    LineCharge { lambda: f64, e: [f64; 3], b: [f64; 3] },
}

#[derive(Clone, Debug, PartialEq)]
pub enum PathSpec {
    Circle { center: [f64; 2], radius: f64, turns: i32, segments: usize },
    Ellipse { center: [f64; 2], semi_axes: [f64; 2], turns: i32, segments: usize },
    Rectangle { min: [f64; 2], max: [f64; 2] },
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridConfig {
    pub center: [f64; 2],
    pub half_width: f64,
    pub points: usize,
    pub h: f64,
    /// Spatial momentum `(p1, p2)`; the energy is put on shell.
    pub momentum: [f64; 2],
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub spin: Spin,
    pub s: i32,
    pub mu: f64,
    pub verify: BTreeSet<Verification>,
    pub seed: u64,
    pub transport_samples: usize,
    pub field: FieldSpec,
    pub path: PathSpec,
    pub grid: GridConfig,
    pub quadrature_tol: f64,
    pub phase_tol: f64,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("scenario", &["name", "spin", "s", "mu", "verify", "seed", "transport_samples"]),
    ("field", &["kind", "lambda", "e", "b"]),
    ("path", &["shape", "center", "radius", "semi_axes", "turns", "segments", "min", "max", "vertices"]),
    ("grid", &["center", "half_width", "points", "h", "momentum", "mass"]),
    ("tolerance", &["quadrature", "phase"]),
];

struct Section<'a> {
    name: &'static str,
    props: Option<&'a Properties>,
}

impl<'a> Section<'a> {
    fn raw(&self, key: &str) -> Option<&'a str> {
        self.props.and_then(|p| p.get(key)).map(str::trim)
    }

    fn invalid(&self, key: &str, value: &str, reason: impl Into<String>) -> ConfigError {
        ConfigError::Invalid { section: self.name.into(), key: key.into(), value: value.into(), reason: reason.into() }
    }

    fn required(&self, key: &str) -> Result<&'a str> {
        self.raw(key).ok_or_else(|| ConfigError::Missing { section: self.name.into(), key: key.into() })
    }

    fn parse<T: std::str::FromStr>(&self, key: &str, value: &str, what: &str) -> Result<T> {
        value.parse().map_err(|_| self.invalid(key, value, format!("expected {what}")))
    }

    fn float_value(&self, key: &str, value: &str) -> Result<f64> {
        let v: f64 = self.parse(key, value, "a number")?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.invalid(key, value, "must be finite"))
        }
    }

    fn float(&self, key: &str) -> Result<f64> {
        self.float_value(key, self.required(key)?)
    }

    fn float_or(&self, key: &str, default: f64) -> Result<f64> {
        self.raw(key).map_or(Ok(default), |v| self.float_value(key, v))
    }

    fn positive(&self, key: &str, default: Option<f64>) -> Result<f64> {
        let v = match default {
            Some(d) => self.float_or(key, d)?,
            None => self.float(key)?,
        };
        if v > 0.0 {
            Ok(v)
        } else {
            Err(self.invalid(key, &v.to_string(), "must be positive"))
        }
    }

    fn vector<const N: usize>(&self, key: &str, default: Option<[f64; N]>) -> Result<[f64; N]> {
        let raw = match (self.raw(key), default) {
            (Some(v), _) => v,
            (None, Some(d)) => return Ok(d),
            (None, None) => self.required(key)?,
        };
        let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
        if parts.len() != N {
            return Err(self.invalid(key, raw, format!("expected {N} comma-separated numbers")));
        }
        let mut out = [0.0; N];
        for (o, p) in out.iter_mut().zip(parts) {
            *o = self.float_value(key, p).map_err(|_| self.invalid(key, raw, format!("expected {N} comma-separated finite numbers")))?;
        }
        Ok(out)
    }

    fn integer<T: std::str::FromStr>(&self, key: &str, default: T, what: &str) -> Result<T> {
        self.raw(key).map_or(Ok(default), |v| self.parse(key, v, what))
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.display().to_string(), reason: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let opt = ParseOption { enabled_quote: false, enabled_escape: false, ..ParseOption::default() };
        let ini = Ini::load_from_str_opt(text, opt).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        for (name, props) in ini.iter() {
            let Some(name) = name else {
                if let Some((key, _)) = props.iter().next() {
                    return Err(ConfigError::UnknownKey { section: "(none)".into(), key: key.into() });
                }
                continue;
            };
            let Some((_, keys)) = SECTIONS.iter().find(|(s, _)| *s == name) else {
                return Err(ConfigError::UnknownSection(name.into()));
            };
            if ini.section_all(Some(name)).count() > 1 {
                return Err(ConfigError::Duplicate { section: name.into(), key: "(section)".into() });
            }
            for (key, _) in props.iter() {
                if !keys.contains(&key) {
                    return Err(ConfigError::UnknownKey { section: name.into(), key: key.into() });
                }
                if props.get_all(key).count() > 1 {
                    return Err(ConfigError::Duplicate { section: name.into(), key: key.into() });
                }
            }
        }
        let section = |name: &'static str| Section { name, props: ini.section(Some(name)) };
        let (sc, fl, pa, gr, to) = (section("scenario"), section("field"), section("path"), section("grid"), section("tolerance"));

        let name = sc.required("name")?.to_string();
        let spin_raw = sc.required("spin")?;
        let spin = match spin_raw {
            "1/2" | "half" | "0.5" => Spin::Half,
            "1" | "one" => Spin::One,
            other => return Err(sc.invalid("spin", other, "expected 1/2 or 1")),
        };
        let s_raw = sc.required("s")?;
        let s: i32 = sc.parse("s", s_raw.trim_start_matches('+'), "-1, 0 or +1")?;
        if !(-1..=1).contains(&s) {
            return Err(sc.invalid("s", s_raw, "expected -1, 0 or +1"));
        }
        let mu = sc.float("mu")?;
        let verify = match sc.raw("verify") {
            Some(list) => list
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(|v| Verification::parse(v).ok_or_else(|| sc.invalid("verify", list, format!("unknown verification `{v}`"))))
                .collect::<Result<BTreeSet<_>>>()?,
            None => match spin {
                Spin::Half => [Verification::Dirac, Verification::Ratio, Verification::Controls].into(),
                Spin::One => [Verification::Kemmer, Verification::Proca, Verification::Ratio, Verification::Controls].into(),
            },
        };
        let seed = sc.integer("seed", 1u64, "a non-negative integer")?;
        let transport_samples = sc.integer("transport_samples", 16usize, "a non-negative integer")?;

        let e = fl.vector("e", Some([0.0; 3]))?;
        let b = fl.vector("b", Some([0.0; 3]))?;
        let field = match fl.required("kind")? {
            "uniform" => FieldSpec::Uniform { e, b },
            "line_charge" => FieldSpec::LineCharge { lambda: fl.float("lambda")?, e, b },
            other => return Err(fl.invalid("kind", other, "expected uniform or line_charge")),
        };

        let turns = pa.integer("turns", 1i32, "an integer")?;
        let segments = pa.integer("segments", 64usize, "a positive integer")?;
        let path = match pa.required("shape")? {
            "circle" => PathSpec::Circle { center: pa.vector("center", Some([0.0; 2]))?, radius: pa.positive("radius", None)?, turns, segments },
            "ellipse" => PathSpec::Ellipse { center: pa.vector("center", Some([0.0; 2]))?, semi_axes: pa.vector("semi_axes", None)?, turns, segments },
            "rectangle" => PathSpec::Rectangle { min: pa.vector("min", None)?, max: pa.vector("max", None)? },
            "polygon" => {
                let raw = pa.required("vertices")?;
                let vertices = raw
                    .split(';')
                    .map(|v| {
                        let xy: Vec<&str> = v.split(',').map(str::trim).collect();
                        match xy.as_slice() {
                            [x, y] => Ok([pa.float_value("vertices", x)?, pa.float_value("vertices", y)?]),
                            _ => Err(pa.invalid("vertices", raw, "expected `x, y; x, y; ...`")),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                PathSpec::Polygon { vertices }
            }
            other => return Err(pa.invalid("shape", other, "expected circle, ellipse, rectangle or polygon")),
        };

        let points = gr.integer("points", 7usize, "a positive integer")?;
        if points < 3 {
            return Err(gr.invalid("points", &points.to_string(), "need at least 3"));
        }
        let grid = GridConfig {
            center: gr.vector("center", None)?,
            half_width: gr.positive("half_width", None)?,
            points,
            h: gr.positive("h", Some(0.01))?,
            momentum: gr.vector("momentum", Some([0.0; 2]))?,
            mass: gr.positive("mass", Some(1.0))?,
        };
        let quadrature_tol = to.positive("quadrature", Some(1e-9))?;
        let phase_tol = to.positive("phase", Some(1e-6))?;
        Ok(Self { name, spin, s, mu, verify, seed, transport_samples, field, path, grid, quadrature_tol, phase_tol })
    }

    pub fn field_config(&self) -> FieldConfig<f64> {
        match self.field {
            FieldSpec::Uniform { e, b } => FieldConfig::uniform(e, b),
            FieldSpec::LineCharge { lambda, e, b } if e == [0.0; 3] && b == [0.0; 3] => FieldConfig::line_charge(lambda),
            FieldSpec::LineCharge { lambda, e, b } => {
                let line = FieldConfig::line_charge(lambda);
                FieldConfig::custom(lambda, move |x| {
                    let el = line.e_at(x).unwrap_or([f64::NAN; 3]);
                    ([el[0] + e[0], el[1] + e[1], el[2] + e[2]], b)
                })
            }
        }
    }

    pub fn loop_path(&self) -> acphase::Result<LoopPath<f64>> {
        match &self.path {
            PathSpec::Circle { center, radius, turns, segments } => LoopPath::circle(*center, *radius, *segments, *turns),
            PathSpec::Ellipse { center, semi_axes, turns, segments } => LoopPath::ellipse(*center, semi_axes[0], semi_axes[1], *segments, *turns),
            PathSpec::Rectangle { min, max } => LoopPath::rectangle(*min, *max),
            PathSpec::Polygon { vertices } => LoopPath::polygon(vertices.clone()),
        }
    }

    /// Grid with the on-shell four-momentum; `h` replaces the scenario's step when given.
    pub fn grid_spec(&self, h: Option<f64>) -> GridSpec<f64> {
        let g = &self.grid;
        let [p1, p2] = g.momentum;
        let energy = (g.mass * g.mass + p1 * p1 + p2 * p2).sqrt();
        GridSpec { grid: Grid::square(g.center, g.half_width, g.points), h: h.unwrap_or(g.h), momentum: [energy, p1, p2, 0.0], mass: g.mass }
    }

    pub fn line_density(&self) -> f64 {
        match self.field {
            FieldSpec::Uniform { .. } => 0.0,
            FieldSpec::LineCharge { lambda, .. } => lambda,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "
[scenario]
name = t
spin = 1
s = +1
mu = 0.5

[field]
kind = line_charge
lambda = 1.0   ; inline comment

[path]
shape = circle
radius = 1

[grid]
center = 1.0, 0.3
half_width = 0.2
";

    #[test]
    fn parses_minimal_with_defaults() {
        let s = Scenario::parse(MINIMAL).unwrap();
        assert_eq!(s.spin, Spin::One);
        assert_eq!(s.s, 1);
        assert_eq!(s.field, FieldSpec::LineCharge { lambda: 1.0, e: [0.0; 3], b: [0.0; 3] });
        assert_eq!(s.path, PathSpec::Circle { center: [0.0, 0.0], radius: 1.0, turns: 1, segments: 64 });
        assert_eq!(s.grid.points, 7);
        assert_eq!(s.quadrature_tol, 1e-9);
        assert!(s.verify.contains(&Verification::Proca));
        assert_eq!(s.grid_spec(Some(0.02)).h, 0.02);
    }

    fn err(text: &str) -> String {
        Scenario::parse(text).unwrap_err().to_string()
    }

    #[test]
    fn diagnostics_name_the_key() {
        assert!(err(&MINIMAL.replace("mu = 0.5", "mu = fast")).contains("`mu`"));
        assert!(err(&MINIMAL.replace("mu = 0.5\n", "")).contains("missing required key `mu`"));
        assert!(err(&MINIMAL.replace("radius = 1", "radius = 1\nradius = 2")).contains("`radius` given more than once"));
        assert!(err(&MINIMAL.replace("radius = 1", "radius = -1")).contains("must be positive"));
        assert!(err(&MINIMAL.replace("radius = 1", "raduis = 1")).contains("unknown key `raduis`"));
        assert!(err(&MINIMAL.replace("[grid]", "[gird]")).contains("unknown section [gird]"));
        assert!(err(&MINIMAL.replace("s = +1", "s = 2")).contains("`s`"));
        assert!(err(&MINIMAL.replace("center = 1.0, 0.3", "center = 1.0")).contains("`center`"));
        assert!(err(&MINIMAL.replace("mu = 0.5", "mu = inf")).contains("finite"));
    }

    #[test]
    fn polygon_vertices() {
        let text = MINIMAL.replace("shape = circle\nradius = 1", "shape = polygon\nvertices = 1, 0; 0, 1; -1, 0; 0, -1");
        let s = Scenario::parse(&text).unwrap();
        assert_eq!(s.loop_path().unwrap().winding_number().unwrap(), 1);
    }
}
