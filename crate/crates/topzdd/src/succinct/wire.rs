//! Little-endian byte helpers shared by all serializers.
//!
//! Every structure in this crate serializes itself completely, directories
//! included, so that a deserialized structure answers queries without any
//! rebuild pass and so that reported component sizes equal what is actually
//! on disk.

use crate::error::{Error, Result};

pub fn put_u8(buf: &mut Vec<u8>, v: u8) {
    buf.push(v);
}

pub fn put_u16(buf: &mut Vec<u8>, v: u16) {
    buf.extend_from_slice(&v.to_le_bytes());
}

pub fn put_u32(buf: &mut Vec<u8>, v: u32) {
    buf.extend_from_slice(&v.to_le_bytes());
}

pub fn put_u64(buf: &mut Vec<u8>, v: u64) {
    buf.extend_from_slice(&v.to_le_bytes());
}

pub fn put_i32(buf: &mut Vec<u8>, v: i32) {
    buf.extend_from_slice(&v.to_le_bytes());
}

pub fn put_u64_slice(buf: &mut Vec<u8>, vs: &[u64]) {
    put_u64(buf, vs.len() as u64);
    for &v in vs {
        put_u64(buf, v);
    }
}

pub fn put_u32_slice(buf: &mut Vec<u8>, vs: &[u32]) {
    put_u64(buf, vs.len() as u64);
    for &v in vs {
        put_u32(buf, v);
    }
}

pub fn put_i32_slice(buf: &mut Vec<u8>, vs: &[i32]) {
    put_u64(buf, vs.len() as u64);
    for &v in vs {
        put_i32(buf, v);
    }
}

/// Cursor over a byte slice; every read is bounds-checked and a short buffer
/// surfaces as a format error rather than a panic.
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub fn is_empty(&self) -> bool {
        self.remaining() == 0
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.remaining() < n {
            return Err(Error::Format(format!(
                "unexpected end of data: wanted {n} bytes, have {}",
                self.remaining()
            )));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn get_u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn get_bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        self.take(n)
    }

    pub fn get_u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub fn get_u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn get_u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn get_i32(&mut self) -> Result<i32> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn get_u64_slice(&mut self) -> Result<Vec<u64>> {
        let n = self.get_u64()? as usize;
        let mut out = Vec::with_capacity(n.min(1 << 24));
        for _ in 0..n {
            out.push(self.get_u64()?);
        }
        Ok(out)
    }

    pub fn get_u32_slice(&mut self) -> Result<Vec<u32>> {
        let n = self.get_u64()? as usize;
        let mut out = Vec::with_capacity(n.min(1 << 24));
        for _ in 0..n {
            out.push(self.get_u32()?);
        }
        Ok(out)
    }

    pub fn get_i32_slice(&mut self) -> Result<Vec<i32>> {
        let n = self.get_u64()? as usize;
        let mut out = Vec::with_capacity(n.min(1 << 24));
        for _ in 0..n {
            out.push(self.get_i32()?);
        }
        Ok(out)
    }

    /// Fails unless the whole buffer was consumed; catches trailing garbage.
    pub fn finish(self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(Error::Format(format!(
                "{} trailing bytes after structure",
                self.buf.len() - self.pos
            )));
        }
        Ok(())
    }
}
