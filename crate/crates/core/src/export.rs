//! Artifact writers: lattice meshes as OBJ and CSV, and JSON with fixed
//! 17-significant-digit floats so that repeated runs diff cleanly.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::grid::Grid;
use crate::metric::{Signature, Vector};
use crate::surface::{first_form, forms_at, immersion_jet, RuledSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalTag {
    Spacelike,
    Timelike,
    Degenerate,
}

impl CausalTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalTag::Spacelike => "spacelike",
            CausalTag::Timelike => "timelike",
            CausalTag::Degenerate => "degenerate",
        }
    }

    pub fn from_det(det_g: f64, band: f64) -> Self {
        if det_g.abs() <= band {
            CausalTag::Degenerate
        } else if det_g > 0.0 {
            CausalTag::Spacelike
        } else {
            CausalTag::Timelike
        }
    }
}

#[derive(Clone, Debug)]
pub struct MeshVertex {
    pub s: f64,
    pub t: f64,
    pub point: Vector,
    pub det_g: f64,
    /// Euclidean norm of the mean curvature vector; `None` on the degenerate band.
    pub h_norm: Option<f64>,
    pub tag: CausalTag,
}

/// Vertices on an `ns x nt` lattice, s-major.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub ns: usize,
    pub nt: usize,
    pub vertices: Vec<MeshVertex>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TagCounts {
    pub spacelike: usize,
    pub timelike: usize,
    pub degenerate: usize,
}

impl Mesh {
    pub fn build(sig: Signature, surface: &RuledSurface, grid: &Grid, band: f64) -> Self {
        let vertices = grid
            .points()
            .into_iter()
            .map(|(s, t)| {
                let det_g = first_form(sig, &immersion_jet(surface, s, t)).det_g;
                let tag = CausalTag::from_det(det_g, band);
                let h_norm = match tag {
                    CausalTag::Degenerate => None,
                    _ => forms_at(sig, surface, s, t, band)
                        .ok()
                        .map(|b| b.h.euclid_norm()),
                };
                MeshVertex {
                    s,
                    t,
                    point: surface.point(s, t),
                    det_g,
                    h_norm,
                    tag,
                }
            })
            .collect();
        Self {
            ns: grid.s.len(),
            nt: grid.t.len(),
            vertices,
        }
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::with_capacity(2 * self.ns.saturating_sub(1) * self.nt.saturating_sub(1));
        for i in 0..self.ns.saturating_sub(1) {
            for j in 0..self.nt.saturating_sub(1) {
                let a = i * self.nt + j;
                let b = a + self.nt;
                out.push([a, b, b + 1]);
                out.push([a, b + 1, a + 1]);
            }
        }
        out
    }

    pub fn tag_counts(&self) -> TagCounts {
        let mut c = TagCounts::default();
        for v in &self.vertices {
            match v.tag {
                CausalTag::Spacelike => c.spacelike += 1,
                CausalTag::Timelike => c.timelike += 1,
                CausalTag::Degenerate => c.degenerate += 1,
            }
        }
        c
    }

    /// Distinct t-values at which some vertex is on the degenerate band.
    pub fn degenerate_t_values(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = self
            .vertices
            .iter()
            .filter(|v| v.tag == CausalTag::Degenerate)
            .map(|v| v.t)
            .collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        ts
    }

    /// Wavefront OBJ. Only the first three ambient coordinates are written.
    pub fn write_obj<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# ruled surface lattice {} x {}", self.ns, self.nt)?;
        let dim = self.vertices.first().map_or(0, |v| v.point.dim());
        if dim > 3 {
            writeln!(
                w,
                "# ambient dimension {dim}: projected onto coordinates 1..3"
            )?;
        }
        let degenerate = self.degenerate_t_values();
        if !degenerate.is_empty() {
            let list: Vec<String> = degenerate.iter().map(|t| fmt_f64(*t)).collect();
            writeln!(w, "# degenerate vertices at t = {}", list.join(" "))?;
        }
        for v in &self.vertices {
            let c = |i: usize| v.point.get(i).copied().unwrap_or(0.0);
            writeln!(w, "v {} {} {}", fmt_f64(c(0)), fmt_f64(c(1)), fmt_f64(c(2)))?;
        }
        for [a, b, c] in self.triangles() {
            writeln!(w, "f {} {} {}", a + 1, b + 1, c + 1)?;
        }
        Ok(())
    }

    /// Columns `s,t,f_1..f_n,det_g,H_norm,causal_tag`; `H_norm` is empty on the degenerate band.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let dim = self.vertices.first().map_or(0, |v| v.point.dim());
        let mut header = vec!["s".to_string(), "t".to_string()];
        header.extend((1..=dim).map(|i| format!("f_{i}")));
        header.extend(["det_g", "H_norm", "causal_tag"].map(String::from));
        writeln!(w, "{}", header.join(","))?;
        for v in &self.vertices {
            let mut row = vec![fmt_f64(v.s), fmt_f64(v.t)];
            row.extend(v.point.iter().map(|x| fmt_f64(*x)));
            row.push(fmt_f64(v.det_g));
            row.push(v.h_norm.map(fmt_f64).unwrap_or_default());
            row.push(v.tag.as_str().to_string());
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Pretty JSON whose floats carry 17 significant digits; non-finite values become `null`.
struct Sig17<'a>(PrettyFormatter<'a>);

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, FamilyId, SignChoice};

    #[test]
    fn triangles_cover_the_lattice() {
        let m = Mesh {
            ns: 3,
            nt: 4,
            vertices: vec![],
        };
        let tris = m.triangles();
        assert_eq!(tris.len(), 2 * 2 * 3);
        assert_eq!(tris[0], [0, 4, 5]);
        assert_eq!(tris[1], [0, 5, 1]);
        assert!(tris.iter().flatten().all(|&i| i < 12));
    }

    #[test]
    fn parabolic_helicoid_mesh_marks_t_zero() {
        let sig = Signature::new(3, 1).unwrap();
        let c = generate(sig, FamilyId::ParabolicHelicoid, SignChoice::new(1, 1, -1)).unwrap();
        let mesh = Mesh::build(sig, &c.surface, &c.surface.default_grid(11, 11), 1e-6);
        assert_eq!(mesh.degenerate_t_values(), vec![0.0]);
        let mut csv = Vec::new();
        mesh.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("s,t,f_1,f_2,f_3,det_g,H_norm,causal_tag\n"));
        assert_eq!(text.lines().count(), 1 + 121);
        let mut obj = Vec::new();
        mesh.write_obj(&mut obj).unwrap();
        let obj = String::from_utf8(obj).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 121);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 200);
    }

    #[test]
    fn json_floats_have_seventeen_digits() {
        let s = to_json_string(&serde_json::json!({"x": 0.1, "bad": f64::NAN, "k": 3}));
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        assert!(s.contains("\"k\": 3"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["x"].as_f64(), Some(0.1));
    }

    #[test]
    fn tags_from_det() {
        assert_eq!(CausalTag::from_det(1.0, 1e-6), CausalTag::Spacelike);
        assert_eq!(CausalTag::from_det(-1.0, 1e-6), CausalTag::Timelike);
        assert_eq!(CausalTag::from_det(1e-7, 1e-6), CausalTag::Degenerate);
    }
}
