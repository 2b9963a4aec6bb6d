//! Binary checkpoint of a factored stream.
//!
//! Layout: one version byte `0x01`, then per record `p` (u64 LE), the factor
//! count (u8), and that many `(q: u64 LE, k: u8)` pairs.

use std::io::{self, BufRead, Write};

use smallvec::SmallVec;
use thiserror::Error;

use super::FactoredShiftedPrime;
use crate::arith::PrimePower;

pub const CHECKPOINT_VERSION: u8 = 0x01;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("unsupported checkpoint version {0:#04x}")]
    Version(u8),
    #[error("truncated record after p = {0}")]
    Truncated(u64),
    #[error("record for p = {p} does not fit the format: {reason}")]
    Unencodable { p: u64, reason: &'static str },
}

pub struct CheckpointWriter<W: Write> {
    out: W,
    written: u64,
}

impl<W: Write> CheckpointWriter<W> {
    pub fn new(mut out: W) -> Result<Self, CheckpointError> {
        out.write_all(&[CHECKPOINT_VERSION])?;
        Ok(Self { out, written: 0 })
    }

    pub fn write(&mut self, rec: &FactoredShiftedPrime) -> Result<(), CheckpointError> {
        let count = u8::try_from(rec.factors.len()).map_err(|_| CheckpointError::Unencodable {
            p: rec.p,
            reason: "more than 255 factors",
        })?;
        self.out.write_all(&rec.p.to_le_bytes())?;
        self.out.write_all(&[count])?;
        for pp in &rec.factors {
            let k = u8::try_from(pp.k).map_err(|_| CheckpointError::Unencodable {
                p: rec.p,
                reason: "multiplicity above 255",
            })?;
            self.out.write_all(&pp.q.to_le_bytes())?;
            self.out.write_all(&[k])?;
        }
        self.written += 1;
        Ok(())
    }

    pub fn records_written(&self) -> u64 {
        self.written
    }

    pub fn finish(mut self) -> Result<W, CheckpointError> {
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Iterator over the records of a checkpoint.
pub struct CheckpointReader<R: BufRead> {
    input: R,
    last_p: u64,
}

impl<R: BufRead> CheckpointReader<R> {
    pub fn new(mut input: R) -> Result<Self, CheckpointError> {
        let mut version = [0u8; 1];
        input.read_exact(&mut version)?;
        if version[0] != CHECKPOINT_VERSION {
            return Err(CheckpointError::Version(version[0]));
        }
        Ok(Self { input, last_p: 0 })
    }

    fn read_record(&mut self) -> Result<Option<FactoredShiftedPrime>, CheckpointError> {
        if self.input.fill_buf()?.is_empty() {
            return Ok(None);
        }
        let truncated = |e: io::Error, p| match e.kind() {
            io::ErrorKind::UnexpectedEof => CheckpointError::Truncated(p),
            _ => CheckpointError::Io(e),
        };
        let mut word = [0u8; 8];
        let mut byte = [0u8; 1];
        let last = self.last_p;
        self.input.read_exact(&mut word).map_err(|e| truncated(e, last))?;
        let p = u64::from_le_bytes(word);
        self.input.read_exact(&mut byte).map_err(|e| truncated(e, p))?;
        let mut factors = SmallVec::new();
        for _ in 0..byte[0] {
            self.input.read_exact(&mut word).map_err(|e| truncated(e, p))?;
            let mut k = [0u8; 1];
            self.input.read_exact(&mut k).map_err(|e| truncated(e, p))?;
            factors.push(PrimePower {
                q: u64::from_le_bytes(word),
                k: k[0] as u32,
            });
        }
        self.last_p = p;
        let lpf = factors.last().map_or(1, |pp: &PrimePower| pp.q);
        Ok(Some(FactoredShiftedPrime { p, factors, lpf }))
    }
}

impl<R: BufRead> Iterator for CheckpointReader<R> {
    type Item = Result<FactoredShiftedPrime, CheckpointError>;

    fn next(&mut self) -> Option<Self::Item> {
        self.read_record().transpose()
    }
}
