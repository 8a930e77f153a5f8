//! ASCII Wavefront OBJ reader and writer.
//!
//! Only `v` and `f` directives are interpreted. Faces may use the
//! `v/vt/vn` slash syntax (everything after the first slash is ignored)
//! and negative indices counting back from the most recent vertex.
//! Polygons are fan-triangulated from their first vertex. All other
//! directives are skipped.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{GeometryError, Point3, TriangleMesh};

pub fn parse_obj(bytes: &[u8]) -> Result<TriangleMesh, GeometryError> {
    let text = core::str::from_utf8(bytes).map_err(|_| GeometryError::Parse {
        line: 0,
        message: "input is not ASCII/UTF-8 text".to_string(),
    })?;

    let mut vertices: Vec<Point3> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();
    let mut line_no = 0usize;

    for raw_line in text.split('\n') {
        line_no += 1;
        let line = raw_line.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let mut coords = [0.0f64; 3];
                for coord in &mut coords {
                    let tok = tokens.next().ok_or_else(|| malformed_vertex(line_no))?;
                    let val: f64 = tok.parse().map_err(|_| malformed_vertex(line_no))?;
                    if !val.is_finite() {
                        return Err(malformed_vertex(line_no));
                    }
                    *coord = val;
                }
                // An optional w component and anything further is ignored.
                vertices.push(Point3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let mut idxs: Vec<usize> = Vec::new();
                for tok in tokens {
                    let vertex_part = tok.split('/').next().unwrap_or("");
                    let raw: i64 = vertex_part.parse().map_err(|_| GeometryError::Parse {
                        line: line_no,
                        message: format!("malformed face index `{tok}`"),
                    })?;
                    idxs.push(resolve_index(raw, vertices.len(), line_no)?);
                }
                if idxs.len() < 3 {
                    return Err(GeometryError::Parse {
                        line: line_no,
                        message: "face needs at least 3 vertices".to_string(),
                    });
                }
                for i in 1..idxs.len() - 1 {
                    faces.push([idxs[0], idxs[i], idxs[i + 1]]);
                }
            }
            _ => {} // vn, vt, o, g, s, usemtl, mtllib, ...
        }
    }

    if vertices.is_empty() || faces.is_empty() {
        return Err(GeometryError::Parse {
            line: line_no,
            message: "empty mesh".to_string(),
        });
    }
    TriangleMesh::new(vertices, faces)
}

fn malformed_vertex(line: usize) -> GeometryError {
    GeometryError::Parse {
        line,
        message: "malformed vertex line".to_string(),
    }
}

/// OBJ indices are 1-based; negative values count back from the vertices
/// declared so far.
fn resolve_index(raw: i64, declared: usize, line: usize) -> Result<usize, GeometryError> {
    let oob = || GeometryError::Parse {
        line,
        message: "face index out of range".to_string(),
    };
    if raw > 0 {
        let idx = (raw - 1) as usize;
        if idx >= declared {
            return Err(oob());
        }
        Ok(idx)
    } else if raw < 0 {
        let back = (-raw) as usize;
        if back > declared {
            return Err(oob());
        }
        Ok(declared - back)
    } else {
        Err(oob())
    }
}

/// Serializes with `v %.9g %.9g %.9g` vertex lines, 1-based `f i j k`
/// face lines, and LF line endings.
pub fn write_obj(mesh: &TriangleMesh) -> String {
    let mut out = String::new();
    for v in mesh.vertices() {
        out.push_str("v ");
        out.push_str(&format_g(v.x, 9));
        out.push(' ');
        out.push_str(&format_g(v.y, 9));
        out.push(' ');
        out.push_str(&format_g(v.z, 9));
        out.push('\n');
    }
    for f in mesh.faces() {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    out
}

/// printf-style `%.<sig>g`: `sig` significant digits, fixed or scientific
/// notation depending on the decimal exponent, trailing zeros stripped.
pub fn format_g(x: f64, sig: usize) -> String {
    debug_assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    let neg = x < 0.0;
    let mag = x.abs();

    // Rust's `{:.*e}` rounds to `sig` significant digits for us and
    // exposes the decimal exponent, e.g. 1.23456789e-4.
    let sci = format!("{:.*e}", sig - 1, mag);
    let (mantissa, exp_str) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp_str.parse().expect("exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let body = if exp < -4 || exp >= sig as i32 {
        let trimmed = trim_trailing_zeros(&digits);
        let m = if trimmed.len() == 1 {
            trimmed
        } else {
            format!("{}.{}", &trimmed[..1], &trimmed[1..])
        };
        format!("{}e{}{:02}", m, if exp < 0 { '-' } else { '+' }, exp.abs())
    } else if exp >= 0 {
        let point = (exp + 1) as usize;
        if point >= digits.len() {
            format!("{}{}", digits, "0".repeat(point - digits.len()))
        } else {
            let frac = trim_trailing_zeros(&digits[point..]);
            if frac.is_empty() {
                digits[..point].to_string()
            } else {
                format!("{}.{}", &digits[..point], frac)
            }
        }
    } else {
        let zeros = (-exp - 1) as usize;
        format!("0.{}{}", "0".repeat(zeros), trim_trailing_zeros(&digits))
    };

    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_trailing_zeros(s: &str) -> String {
    s.trim_end_matches('0').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_minimal_triangle() {
        let mesh = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3").unwrap();
        assert_eq!(mesh.vertex_count(), 3);
        assert_eq!(mesh.faces(), &[[0, 1, 2]]);
    }

    #[test]
    fn face_without_vertices_is_out_of_range() {
        let err = parse_obj(b"f 1 2 3").unwrap_err();
        match err {
            GeometryError::Parse { line, message } => {
                assert_eq!(line, 1);
                assert_eq!(message, "face index out of range");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn quad_fan_triangulates() {
        let src = b"v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4";
        let mesh = parse_obj(src).unwrap();
        assert_eq!(mesh.faces(), &[[0, 1, 2], [0, 2, 3]]);
    }

    #[test]
    fn slash_syntax_and_negative_indices() {
        let src = b"v 0 0 0\nv 1 0 0\nv 0 1 0\nvt 0 0\nvn 0 0 1\nf 1/1/1 2/1/1 -1/1/1";
        let mesh = parse_obj(src).unwrap();
        assert_eq!(mesh.faces(), &[[0, 1, 2]]);
    }

    #[test]
    fn malformed_vertex_names_line() {
        let err = parse_obj(b"v 0 0 0\nv 1 zzz 0\nf 1 2 1").unwrap_err();
        match err {
            GeometryError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_empty_mesh() {
        let err = parse_obj(b"# nothing\n").unwrap_err();
        match err {
            GeometryError::Parse { message, .. } => assert_eq!(message, "empty mesh"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn crlf_accepted() {
        let mesh = parse_obj(b"v 0 0 0\r\nv 1 0 0\r\nv 0 1 0\r\nf 1 2 3\r\n").unwrap();
        assert_eq!(mesh.vertex_count(), 3);
    }

    #[test]
    fn format_g_cases() {
        assert_eq!(format_g(0.0, 9), "0");
        assert_eq!(format_g(0.5, 9), "0.5");
        assert_eq!(format_g(1.0, 9), "1");
        assert_eq!(format_g(-2.0, 9), "-2");
        assert_eq!(format_g(123456789.0, 9), "123456789");
        assert_eq!(format_g(1e9, 9), "1e+09");
        assert_eq!(format_g(0.000125, 9), "0.000125");
        assert_eq!(format_g(1.25e-5, 9), "1.25e-05");
        assert_eq!(format_g(1.0 / 3.0, 9), "0.333333333");
        assert_eq!(format_g(-9.87654321e20, 9), "-9.87654321e+20");
    }

    #[test]
    fn format_g_carries_rounding() {
        // 0.9999999999 rounds up to 1 at 9 significant digits.
        assert_eq!(format_g(0.9999999999, 9), "1");
    }

    #[test]
    fn roundtrip_preserves_nine_digits() {
        let mesh = TriangleMesh::new(
            vec![
                Point3::new(0.123456789123, -9.87654321e-7, 4.0e12),
                Point3::new(1.0, 2.0, 3.0),
                Point3::new(-0.5, 0.25, 0.125),
            ],
            vec![[0, 1, 2]],
        )
        .unwrap();
        let text = write_obj(&mesh);
        let round = parse_obj(text.as_bytes()).unwrap();
        assert_eq!(round.faces(), mesh.faces());
        for (a, b) in mesh.vertices().iter().zip(round.vertices()) {
            for axis in 0..3 {
                let (x, y) = (a.coord(axis), b.coord(axis));
                let scale = x.abs().max(1e-300);
                assert!((x - y).abs() / scale < 5e-9, "{x} vs {y}");
            }
        }
    }
}
