//! Chunk geometry: mapping 1-based chunk numbers onto byte ranges.

use core::fmt;

/// One chunk of the object: a 1-based index plus its inclusive byte range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChunkDescriptor {
    /// 1-based chunk number.
    pub index: u64,
    /// First byte offset (inclusive).
    pub start: u64,
    /// Last byte offset (inclusive).
    pub end: u64,
}

#[allow(clippy::len_without_is_empty)] // a descriptor always covers at least one byte
impl ChunkDescriptor {
    /// Number of bytes covered by this chunk.
    pub fn len(&self) -> u64 {
        self.end - self.start + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChunkError {
    /// Index outside `1..=chunk_count(total_len, chunk_size)`.
    IndexOutOfRange { index: u64, count: u64 },
}

impl fmt::Display for ChunkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChunkError::IndexOutOfRange { index, count } => {
                write!(f, "chunk index {index} out of range 1..={count}")
            }
        }
    }
}

impl core::error::Error for ChunkError {}

/// Number of chunks needed to cover an object of `total_len` bytes,
/// i.e. `ceil(total_len / chunk_size)`. Empty objects need zero chunks.
pub fn chunk_count(total_len: u64, chunk_size: u64) -> u64 {
    assert!(chunk_size > 0, "chunk_size must be positive");
    total_len.div_ceil(chunk_size)
}

/// Byte range of chunk `index` (1-based) for an object of `total_len` bytes.
///
/// All chunks are `chunk_size` bytes except possibly the last, which is
/// truncated to the end of the object.
pub fn chunk_bounds(index: u64, chunk_size: u64, total_len: u64) -> Result<ChunkDescriptor, ChunkError> {
    let count = chunk_count(total_len, chunk_size);
    if index == 0 || index > count {
        return Err(ChunkError::IndexOutOfRange { index, count });
    }
    let start = (index - 1) * chunk_size;
    let end = core::cmp::min(index * chunk_size, total_len) - 1;
    Ok(ChunkDescriptor { index, start, end })
}
