//! Binary field container: magic `HNCF`, little-endian `u32` version, `n`, `d`,
//! radial count, center count, a Hermitian byte, the radial nodes and weights,
//! then every fiber as column-major `(re, im)` pairs. The geometry travels in a
//! JSON sidecar next to the container.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::field::PhysicalField;
use super::geometry::GeometryConfig;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};

pub const MAGIC: &[u8; 4] = b"HNCF";
pub const FORMAT_VERSION: u32 = 1;

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".geometry.json");
    PathBuf::from(s)
}

pub fn encode_field(f: &PhysicalField) -> Vec<u8> {
    let g = &f.geometry;
    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    for v in [FORMAT_VERSION, g.n as u32, f.fiber_dim as u32, g.radial_grid.len() as u32, g.center_samples as u32] {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    buf.push(f.is_hermitian() as u8);
    for x in g.radial_grid.nodes.iter().chain(&g.radial_grid.weights) {
        buf.extend_from_slice(&x.to_le_bytes());
    }
    for m in f.values() {
        for z in m.iter() {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    buf
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take(&mut self, len: usize) -> Result<&[u8]> {
        let end = self.pos + len;
        if end > self.data.len() {
            return Err(Error::Format(format!("truncated container at byte {}", self.pos)));
        }
        let out = &self.data[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

pub fn decode_field(data: &[u8], geometry: GeometryConfig) -> Result<PhysicalField> {
    let mut c = Cursor { data, pos: 0 };
    if c.take(4)? != MAGIC {
        return Err(Error::Format("bad magic, not a field container".into()));
    }
    let version = c.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::Version { found: version, expected: FORMAT_VERSION });
    }
    let (n, d, p, t) = (c.u32()? as usize, c.u32()? as usize, c.u32()? as usize, c.u32()? as usize);
    let hermitian = c.take(1)?[0] != 0;
    if n != geometry.n || p != geometry.radial_grid.len() || t != geometry.center_samples {
        return Err(Error::Format("container header disagrees with the geometry sidecar".into()));
    }
    let nodes = (0..p).map(|_| c.f64()).collect::<Result<Vec<_>>>()?;
    let weights = (0..p).map(|_| c.f64()).collect::<Result<Vec<_>>>()?;
    if nodes != geometry.radial_grid.nodes || weights != geometry.radial_grid.weights {
        return Err(Error::Format("container radial grid disagrees with the geometry sidecar".into()));
    }
    let mut values = Vec::with_capacity(p * t);
    for _ in 0..p * t {
        let entries = (0..d * d)
            .map(|_| Ok(C64::new(c.f64()?, c.f64()?)))
            .collect::<Result<Vec<_>>>()?;
        values.push(CMat::from_column_slice(d, d, &entries));
    }
    if c.pos != data.len() {
        return Err(Error::Format(format!("{} trailing bytes", data.len() - c.pos)));
    }
    PhysicalField::new(geometry, d, values)?.with_hermitian(hermitian)
}

pub fn save_field(f: &PhysicalField, path: &Path) -> Result<()> {
    fs::File::create(path)?.write_all(&encode_field(f))?;
    fs::write(sidecar_path(path), serde_json::to_string_pretty(&f.geometry)?)?;
    Ok(())
}

pub fn load_field(path: &Path) -> Result<PhysicalField> {
    let geometry: GeometryConfig = serde_json::from_str(&fs::read_to_string(sidecar_path(path))?)?;
    geometry.validate()?;
    let mut data = Vec::new();
    fs::File::open(path)?.read_to_end(&mut data)?;
    decode_field(&data, geometry)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PhysicalField {
        let g = GeometryConfig::new(2, &[-1, 1], 4, 5.0, 12).unwrap();
        PhysicalField::from_fn(g, 2, |rho, t| {
            CMat::from_row_slice(2, 2, &[C64::new(rho, 0.0), C64::new(t.cos(), t.sin()), C64::new(t.cos(), -t.sin()), C64::new(-rho, 0.0)])
        })
        .unwrap()
        .with_hermitian(true)
        .unwrap()
    }

    #[test]
    fn round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.hncf");
        let f = field();
        save_field(&f, &path).unwrap();
        let g = load_field(&path).unwrap();
        assert_eq!(g.values(), f.values());
        assert!(g.is_hermitian());
        assert_eq!(g.geometry, f.geometry);
    }

    #[test]
    fn rejects_other_versions() {
        let f = field();
        let mut bytes = encode_field(&f);
        bytes[4..8].copy_from_slice(&2u32.to_le_bytes());
        assert!(matches!(decode_field(&bytes, f.geometry.clone()), Err(Error::Version { found: 2, expected: 1 })));
        let bytes = encode_field(&f);
        assert!(matches!(decode_field(&bytes[..bytes.len() - 3], f.geometry.clone()), Err(Error::Format(_))));
    }
}
