//! Plain-text state files.
//!
//! ```text
//! dims: 2,2
//! kind: density
//! 0.5+0i, 0+0i, 0+0i, 0.5+0i
//! 0+0i,   0+0i, 0+0i, 0+0i
//! 0+0i,   0+0i, 0+0i, 0+0i
//! 0.5+0i, 0+0i, 0+0i, 0.5+0i
//! ```
//!
//! Line 1 lists the subsystem dimensions, line 2 the kind (`density` or
//! `pure`), then one line per matrix row — or a single line for a pure
//! state vector — of comma-separated complex entries `a+bi`. Whitespace
//! is ignored everywhere.

use num_complex::Complex64;

use crate::qmat::{ComplexMatrix, DensityMatrix, PureState};
use crate::{Error, Result};

/// A state loaded from a file, before any interpretation.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Density(DensityMatrix),
    Pure(PureState),
}

impl LoadedState {
    /// Either the loaded density matrix or the projector of the loaded
    /// pure state.
    pub fn into_density(self) -> DensityMatrix {
        match self {
            LoadedState::Density(rho) => rho,
            LoadedState::Pure(psi) => psi.to_density(),
        }
    }
}

/// Parses one complex entry: `a+bi`, `a-bi`, a bare real `a`, or a bare
/// imaginary `bi`.
pub fn parse_complex(token: &str) -> Result<Complex64> {
    let s: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex entry".into()));
    }
    let bad = |what: &str| Error::Parse(format!("cannot parse complex entry '{token}': {what}"));

    if !s.ends_with('i') {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad("bad real"));
    }

    let body = &s[..s.len() - 1];
    // split point: the last sign that is neither leading nor an exponent sign
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, ch)| {
            (ch == '+' || ch == '-') && i > 0 && !matches!(body.as_bytes()[i - 1], b'e' | b'E')
        })
        .map(|(i, _)| i);

    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad("bad real part"))?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other
            .parse::<f64>()
            .map_err(|_| bad("bad imaginary part"))?,
    };
    Ok(Complex64::new(re, im))
}

fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn parse_entry_line(line: &str, expected: usize, what: &str) -> Result<Vec<Complex64>> {
    let entries: Vec<Complex64> = line.split(',').map(parse_complex).collect::<Result<_>>()?;
    if entries.len() != expected {
        return Err(Error::Parse(format!(
            "{what}: expected {expected} entries, found {}",
            entries.len()
        )));
    }
    Ok(entries)
}

/// Parses a state file from text. Density matrices are fully validated
/// (Hermiticity, trace, positivity); pure states must be normalized.
pub fn parse_state(text: &str) -> Result<LoadedState> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());

    let dims_line = lines
        .next()
        .ok_or_else(|| Error::Parse("missing dims line".into()))?;
    let dims_body = dims_line
        .strip_prefix("dims:")
        .ok_or_else(|| Error::Parse(format!("expected 'dims: d1,d2,...', found '{dims_line}'")))?;
    let dims: Vec<usize> = dims_body
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension '{}'", t.trim())))
        })
        .collect::<Result<_>>()?;
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Parse(format!("invalid dims {dims:?}")));
    }
    let side: usize = dims.iter().product();

    let kind_line = lines
        .next()
        .ok_or_else(|| Error::Parse("missing kind line".into()))?;
    let kind = kind_line
        .strip_prefix("kind:")
        .ok_or_else(|| {
            Error::Parse(format!(
                "expected 'kind: density|pure', found '{kind_line}'"
            ))
        })?
        .trim();

    match kind {
        "pure" => {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing amplitude line".into()))?;
            let amplitudes = parse_entry_line(line, side, "pure state vector")?;
            if lines.next().is_some() {
                return Err(Error::Parse(
                    "trailing content after the amplitude line".into(),
                ));
            }
            Ok(LoadedState::Pure(PureState::new(amplitudes, dims)?))
        }
        "density" => {
            let mut entries = Vec::with_capacity(side * side);
            for r in 0..side {
                let line = lines
                    .next()
                    .ok_or_else(|| Error::Parse(format!("missing matrix row {r}")))?;
                entries.extend(parse_entry_line(line, side, &format!("matrix row {r}"))?);
            }
            if lines.next().is_some() {
                return Err(Error::Parse(
                    "trailing content after the last matrix row".into(),
                ));
            }
            let matrix = ComplexMatrix::from_entries(side, side, entries)?;
            Ok(LoadedState::Density(DensityMatrix::new(matrix, dims)?))
        }
        other => Err(Error::Parse(format!(
            "unknown kind '{other}' (expected density or pure)"
        ))),
    }
}

/// Reads and parses a state file.
pub fn load_state(path: &std::path::Path) -> Result<LoadedState> {
    parse_state(&std::fs::read_to_string(path)?)
}

/// Serializes a density matrix in the state file format.
pub fn write_density(rho: &DensityMatrix) -> String {
    let dims: Vec<String> = rho.dims().iter().map(|d| d.to_string()).collect();
    let mut out = format!("dims: {}\nkind: density\n", dims.join(","));
    let side = rho.side();
    for r in 0..side {
        let row: Vec<String> = (0..side)
            .map(|c| format_complex(rho.matrix().get(r, c)))
            .collect();
        out.push_str(&row.join(", "));
        out.push('\n');
    }
    out
}

/// Serializes a pure state in the state file format.
pub fn write_pure(psi: &PureState) -> String {
    let dims: Vec<String> = psi.dims().iter().map(|d| d.to_string()).collect();
    let amps: Vec<String> = psi
        .amplitudes()
        .iter()
        .map(|&a| format_complex(a))
        .collect();
    format!(
        "dims: {}\nkind: pure\n{}\n",
        dims.join(","),
        amps.join(", ")
    )
}
