//! OBJ and ASCII PLY output, with a JSON sidecar describing how the mesh was made.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::SurfaceMesh;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl MeshFormat {
    pub fn from_path(p: &Path) -> Result<Self> {
        match p.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()) {
            Some(e) if e == "obj" => Ok(MeshFormat::Obj),
            Some(e) if e == "ply" => Ok(MeshFormat::Ply),
            _ => Err(Error::InvalidParameter(format!(
                "cannot tell the mesh format of {}; use .obj or .ply",
                p.display()
            ))),
        }
    }
}

pub fn write_obj<W: Write>(mesh: &SurfaceMesh, mut w: W) -> Result<()> {
    writeln!(w, "# {} vertices, {} faces", mesh.vertices.len(), mesh.triangles.len())?;
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
    }
    for t in &mesh.triangles {
        writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    Ok(())
}

pub fn write_ply<W: Write>(mesh: &SurfaceMesh, mut w: W) -> Result<()> {
    writeln!(w, "ply\nformat ascii 1.0")?;
    writeln!(w, "element vertex {}", mesh.vertices.len())?;
    for name in ["x", "y", "z", "nx", "ny", "nz", "gabs"] {
        writeln!(w, "property double {name}")?;
    }
    writeln!(w, "element face {}", mesh.triangles.len())?;
    writeln!(w, "property list uchar int vertex_indices\nend_header")?;
    for (v, n) in mesh.vertices.iter().zip(&mesh.gauss) {
        writeln!(w, "{} {} {} {} {} {} {}", v[0], v[1], v[2], n[0], n[1], n[2], gauss_modulus(*n))?;
    }
    for t in &mesh.triangles {
        writeln!(w, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    Ok(())
}

/// `|g|` recovered from the unit normal, capped at `1e300` where `g = inf`.
pub fn gauss_modulus(n: [f64; 3]) -> f64 {
    if n[2] >= 1.0 {
        return 1e300;
    }
    ((1.0 + n[2]) / (1.0 - n[2])).max(0.0).sqrt().min(1e300)
}

fn bad(msg: String) -> Error {
    Error::Mesh(msg)
}

fn num(tok: Option<&str>, line: usize) -> Result<f64> {
    tok.ok_or_else(|| bad(format!("line {line}: missing number")))?
        .parse()
        .map_err(|e| bad(format!("line {line}: {e}")))
}

/// Reads positions and faces back (and `vn` records, if present). Other fields stay empty.
pub fn read_obj<R: Read>(r: R) -> Result<SurfaceMesh> {
    let mut m = SurfaceMesh::default();
    for (i, line) in BufReader::new(r).lines().enumerate() {
        let line = line?;
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => m.vertices.push([num(it.next(), i)?, num(it.next(), i)?, num(it.next(), i)?]),
            Some("vn") => m.gauss.push([num(it.next(), i)?, num(it.next(), i)?, num(it.next(), i)?]),
            Some("f") => {
                let mut t = [0usize; 3];
                for slot in t.iter_mut() {
                    let tok = it.next().ok_or_else(|| bad(format!("line {i}: short face")))?;
                    let idx: usize = tok
                        .split('/')
                        .next()
                        .unwrap_or("")
                        .parse()
                        .map_err(|e| bad(format!("line {i}: {e}")))?;
                    *slot = idx.checked_sub(1).ok_or_else(|| bad(format!("line {i}: zero index")))?;
                }
                m.triangles.push(t);
            }
            _ => {}
        }
    }
    Ok(m)
}

pub fn read_ply<R: Read>(r: R) -> Result<SurfaceMesh> {
    let mut lines = BufReader::new(r).lines();
    let (mut nv, mut nf) = (0usize, 0usize);
    loop {
        let line = lines.next().ok_or_else(|| bad("truncated header".into()))??;
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["element", "vertex", n] => nv = n.parse().map_err(|e| bad(format!("{e}")))?,
            ["element", "face", n] => nf = n.parse().map_err(|e| bad(format!("{e}")))?,
            ["end_header"] => break,
            _ => {}
        }
    }
    let mut m = SurfaceMesh::default();
    for i in 0..nv {
        let line = lines.next().ok_or_else(|| bad("missing vertex".into()))??;
        let mut it = line.split_whitespace();
        m.vertices.push([num(it.next(), i)?, num(it.next(), i)?, num(it.next(), i)?]);
        m.gauss.push([num(it.next(), i)?, num(it.next(), i)?, num(it.next(), i)?]);
    }
    for i in 0..nf {
        let line = lines.next().ok_or_else(|| bad("missing face".into()))??;
        let v: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| bad(format!("face {i}: {e}"))))
            .collect::<Result<_>>()?;
        if v.len() != 4 || v[0] != 3 {
            return Err(bad(format!("face {i} is not a triangle")));
        }
        m.triangles.push([v[1], v[2], v[3]]);
    }
    Ok(m)
}

/// Sidecar path: the mesh path with `.json` appended.
pub fn sidecar_path(mesh_path: &Path) -> PathBuf {
    let mut s = mesh_path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes the mesh in the format given by the extension and the sidecar next to it.
pub fn save_mesh<T: Serialize>(mesh: &SurfaceMesh, path: &Path, metadata: &T) -> Result<PathBuf> {
    let format = MeshFormat::from_path(path)?;
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    match format {
        MeshFormat::Obj => write_obj(mesh, &mut file)?,
        MeshFormat::Ply => write_ply(mesh, &mut file)?,
    }
    file.flush()?;
    let side = sidecar_path(path);
    std::fs::write(&side, serde_json::to_string_pretty(metadata)? + "\n")?;
    Ok(side)
}

pub fn load_mesh(path: &Path) -> Result<SurfaceMesh> {
    let file = std::fs::File::open(path)?;
    match MeshFormat::from_path(path)? {
        MeshFormat::Obj => read_obj(file),
        MeshFormat::Ply => read_ply(file),
    }
}
