//! Binary serialisation of a [`DickmanTable`].
//!
//! Little-endian throughout: magic `0x52484F31` (u32), degree (u32), piece
//! count (u32), then `piece_count × (degree + 1)` Chebyshev coefficients
//! (f64), followed by `u_max`, the requested tolerance and the achieved
//! error bound (f64 each).

use std::io::{self, Read, Write};

use thiserror::Error;

use super::DickmanTable;

pub const TABLE_MAGIC: u32 = 0x5248_4F31;

#[derive(Debug, Error)]
pub enum TableIoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("bad magic {0:#010x}")]
    Magic(u32),
    #[error("inconsistent table header: {0}")]
    Header(String),
}

pub fn write_table<W: Write>(table: &DickmanTable, mut out: W) -> Result<(), TableIoError> {
    out.write_all(&TABLE_MAGIC.to_le_bytes())?;
    out.write_all(&(table.degree() as u32).to_le_bytes())?;
    out.write_all(&(table.pieces().len() as u32).to_le_bytes())?;
    for piece in table.pieces() {
        for &c in piece {
            out.write_all(&c.to_le_bytes())?;
        }
    }
    for v in [table.u_max(), table.tol(), table.error_bound()] {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

fn read_u32<R: Read>(input: &mut R) -> io::Result<u32> {
    let mut b = [0u8; 4];
    input.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(input: &mut R) -> io::Result<f64> {
    let mut b = [0u8; 8];
    input.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn read_table<R: Read>(mut input: R) -> Result<DickmanTable, TableIoError> {
    let magic = read_u32(&mut input)?;
    if magic != TABLE_MAGIC {
        return Err(TableIoError::Magic(magic));
    }
    let degree = read_u32(&mut input)? as usize;
    let count = read_u32(&mut input)? as usize;
    if !(2..=1 << 16).contains(&count) || !(2..=1 << 16).contains(&degree) {
        return Err(TableIoError::Header(format!(
            "degree {degree}, piece count {count}"
        )));
    }
    let mut pieces = Vec::with_capacity(count);
    for _ in 0..count {
        let piece = (0..=degree)
            .map(|_| read_f64(&mut input))
            .collect::<io::Result<Vec<f64>>>()?;
        pieces.push(piece);
    }
    let u_max = read_f64(&mut input)?;
    let tol = read_f64(&mut input)?;
    let bound = read_f64(&mut input)?;
    if !(u_max > (count - 1) as f64 && u_max <= count as f64) {
        return Err(TableIoError::Header(format!(
            "u_max {u_max} does not match {count} pieces"
        )));
    }
    Ok(DickmanTable::from_parts(u_max, degree, pieces, tol, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dickman::default_table;

    #[test]
    fn round_trip_is_bit_exact() {
        let t = default_table();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        assert_eq!(&buf[..4], &[0x31, 0x4F, 0x48, 0x52]);
        assert_eq!(buf.len(), 12 + 10 * 31 * 8 + 24);
        let back = read_table(buf.as_slice()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            read_table(&[0u8; 16][..]),
            Err(TableIoError::Magic(0))
        ));
        let t = default_table();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        buf.truncate(100);
        assert!(matches!(read_table(buf.as_slice()), Err(TableIoError::Io(_))));
    }
}
