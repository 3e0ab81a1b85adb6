//! HTTP/1.1 range-request building, response-head parsing, and range-support
//! classification.
//!
//! Only the subset of HTTP/1.1 the transfer engine speaks is handled here:
//! `GET` requests with a single `bytes=S-E` range, and response heads framed
//! by `Content-Length`. Bodies are the caller's problem.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::chunk::ChunkDescriptor;

/// Parsed `Content-Range: bytes S-E/T` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContentRange {
    pub start: u64,
    pub end: u64,
    pub total: u64,
}

/// A parsed HTTP response head.
///
/// `headers` preserves the received order and spelling; `content_length`
/// and `content_range` are parsed views over it. Header name matching is
/// case-insensitive throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResponseHead {
    pub status: u16,
    pub headers: Vec<(String, String)>,
    pub content_length: Option<u64>,
    pub content_range: Option<ContentRange>,
}

impl ResponseHead {
    /// First value of the named header, matched case-insensitively.
    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, v)| v.as_str())
    }
}

/// Whether a server honors byte-range requests, as judged from one head.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeSupport {
    /// 206 with a coherent `Content-Range`; carries the full object length.
    Supported { total_len: u64 },
    /// Plain 200: the server ignored the range.
    Unsupported,
    /// 416, an incoherent head, or anything else we cannot stream ranges from.
    RangeError,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WireError {
    Malformed(String),
}

impl fmt::Display for WireError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WireError::Malformed(why) => write!(f, "malformed HTTP head: {why}"),
        }
    }
}

impl core::error::Error for WireError {}

/// Serializes a `GET` range request, byte-exact:
///
/// ```text
/// GET {path} HTTP/1.1\r\nHost: {host}\r\nRange: bytes={start}-{end}\r\nConnection: keep-alive\r\n\r\n
/// ```
pub fn build_range_request(host: &str, path: &str, chunk: &ChunkDescriptor) -> Vec<u8> {
    debug_assert!(path.starts_with('/'));
    format!(
        "GET {path} HTTP/1.1\r\nHost: {host}\r\nRange: bytes={}-{}\r\nConnection: keep-alive\r\n\r\n",
        chunk.start, chunk.end
    )
    .into_bytes()
}

/// Serializes a plain (unranged) `GET`, used for the single-path reference
/// protocol and fallback comparisons.
pub fn build_plain_request(host: &str, path: &str) -> Vec<u8> {
    debug_assert!(path.starts_with('/'));
    format!("GET {path} HTTP/1.1\r\nHost: {host}\r\nConnection: keep-alive\r\n\r\n").into_bytes()
}

/// Parses a response head (everything up to, optionally including, the blank
/// line). Extracts the status code, the ordered header list, and the
/// `Content-Length` / `Content-Range` views.
pub fn parse_response_head(raw: &[u8]) -> Result<ResponseHead, WireError> {
    let text = core::str::from_utf8(raw)
        .map_err(|_| WireError::Malformed("head is not valid UTF-8".to_string()))?;

    let mut lines = text.split("\r\n");
    let status_line = lines
        .next()
        .ok_or_else(|| WireError::Malformed("empty head".to_string()))?;
    let status = parse_status_line(status_line)?;

    let mut headers: Vec<(String, String)> = Vec::new();
    for line in lines {
        if line.is_empty() {
            break; // blank line: end of head
        }
        let (name, value) = line
            .split_once(':')
            .ok_or_else(|| WireError::Malformed(format!("header line without colon: {line:?}")))?;
        if name.is_empty() || name.contains(' ') {
            return Err(WireError::Malformed(format!("bad header name: {name:?}")));
        }
        headers.push((name.to_string(), value.trim().to_string()));
    }

    let content_length = extract_content_length(&headers)?;
    let content_range = extract_content_range(&headers)?;

    Ok(ResponseHead { status, headers, content_length, content_range })
}

fn parse_status_line(line: &str) -> Result<u16, WireError> {
    let mut parts = line.splitn(3, ' ');
    let version = parts.next().unwrap_or("");
    if !version.starts_with("HTTP/1.") {
        return Err(WireError::Malformed(format!("bad HTTP version: {version:?}")));
    }
    let code = parts
        .next()
        .ok_or_else(|| WireError::Malformed("status line missing code".to_string()))?;
    let status: u16 = code
        .parse()
        .map_err(|_| WireError::Malformed(format!("non-numeric status code: {code:?}")))?;
    if !(100..=599).contains(&status) {
        return Err(WireError::Malformed(format!("status code out of range: {status}")));
    }
    Ok(status)
}

fn extract_content_length(headers: &[(String, String)]) -> Result<Option<u64>, WireError> {
    let mut found: Option<u64> = None;
    for (name, value) in headers {
        if !name.eq_ignore_ascii_case("content-length") {
            continue;
        }
        let n: u64 = value
            .parse()
            .map_err(|_| WireError::Malformed(format!("non-numeric Content-Length: {value:?}")))?;
        match found {
            Some(prev) if prev != n => {
                return Err(WireError::Malformed("conflicting Content-Length values".to_string()))
            }
            _ => found = Some(n),
        }
    }
    Ok(found)
}

fn extract_content_range(headers: &[(String, String)]) -> Result<Option<ContentRange>, WireError> {
    let mut found: Option<ContentRange> = None;
    for (name, value) in headers {
        if !name.eq_ignore_ascii_case("content-range") {
            continue;
        }
        let Some(parsed) = parse_content_range_value(value)? else {
            continue; // "bytes */T" (e.g. on a 416): no byte range to extract
        };
        match found {
            Some(prev) if prev != parsed => {
                return Err(WireError::Malformed("conflicting Content-Range values".to_string()))
            }
            _ => found = Some(parsed),
        }
    }
    Ok(found)
}

/// Parses `bytes S-E/T`. Returns Ok(None) for the unsatisfied form `bytes */T`.
fn parse_content_range_value(value: &str) -> Result<Option<ContentRange>, WireError> {
    let rest = value
        .strip_prefix("bytes")
        .ok_or_else(|| WireError::Malformed(format!("Content-Range without bytes unit: {value:?}")))?
        .trim_start();
    let (range_part, total_part) = rest
        .split_once('/')
        .ok_or_else(|| WireError::Malformed(format!("Content-Range without total: {value:?}")))?;
    if range_part.trim() == "*" {
        return Ok(None);
    }
    let (s, e) = range_part
        .split_once('-')
        .ok_or_else(|| WireError::Malformed(format!("Content-Range without dash: {value:?}")))?;
    let start: u64 = s
        .trim()
        .parse()
        .map_err(|_| WireError::Malformed(format!("non-numeric range start: {s:?}")))?;
    let end: u64 = e
        .trim()
        .parse()
        .map_err(|_| WireError::Malformed(format!("non-numeric range end: {e:?}")))?;
    let total: u64 = total_part
        .trim()
        .parse()
        .map_err(|_| WireError::Malformed(format!("non-numeric range total: {total_part:?}")))?;
    if end < start {
        return Err(WireError::Malformed(format!("Content-Range end before start: {value:?}")));
    }
    if total <= end {
        return Err(WireError::Malformed(format!("Content-Range total not past end: {value:?}")));
    }
    Ok(Some(ContentRange { start, end, total }))
}

/// Judges range support from a parsed head. Total over all inputs.
pub fn classify_range_support(head: &ResponseHead) -> RangeSupport {
    match head.status {
        206 => {
            let Some(cr) = head.content_range else {
                return RangeSupport::RangeError;
            };
            // A ranged body must be framed by Content-Length; chunked framing
            // is treated as a range error.
            if let Some(te) = head.header("transfer-encoding") {
                if te.to_ascii_lowercase().contains("chunked") {
                    return RangeSupport::RangeError;
                }
            }
            if let Some(cl) = head.content_length {
                if cl != cr.end - cr.start + 1 {
                    return RangeSupport::RangeError;
                }
            }
            RangeSupport::Supported { total_len: cr.total }
        }
        200 => RangeSupport::Unsupported,
        _ => RangeSupport::RangeError,
    }
}

/// Builds the single 200-style head handed to the consumer in place of the
/// first 206: status becomes 200, `Content-Length` becomes the full object
/// length, `Content-Range` is dropped, and the remaining headers carry over.
pub fn synthesize_consumer_head(total_len: u64, first_head: &ResponseHead) -> ResponseHead {
    debug_assert_eq!(first_head.status, 206);
    let mut headers: Vec<(String, String)> = Vec::with_capacity(first_head.headers.len());
    let mut length_written = false;
    for (name, value) in &first_head.headers {
        if name.eq_ignore_ascii_case("content-range") {
            continue;
        }
        if name.eq_ignore_ascii_case("content-length") {
            if !length_written {
                headers.push((name.clone(), total_len.to_string()));
                length_written = true;
            }
            continue;
        }
        headers.push((name.clone(), value.clone()));
    }
    if !length_written {
        headers.push(("Content-Length".to_string(), total_len.to_string()));
    }
    ResponseHead {
        status: 200,
        headers,
        content_length: Some(total_len),
        content_range: None,
    }
}

/// Serializes a head back to bytes, blank line included. Inverse of
/// [`parse_response_head`] for well-formed heads.
pub fn serialize_head(head: &ResponseHead) -> Vec<u8> {
    let mut out = format!("HTTP/1.1 {} {}\r\n", head.status, reason_phrase(head.status));
    for (name, value) in &head.headers {
        out.push_str(name);
        out.push_str(": ");
        out.push_str(value);
        out.push_str("\r\n");
    }
    out.push_str("\r\n");
    out.into_bytes()
}

pub fn reason_phrase(status: u16) -> &'static str {
    match status {
        200 => "OK",
        204 => "No Content",
        206 => "Partial Content",
        301 => "Moved Permanently",
        302 => "Found",
        400 => "Bad Request",
        404 => "Not Found",
        405 => "Method Not Allowed",
        416 => "Range Not Satisfiable",
        500 => "Internal Server Error",
        _ => "Status",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn head(raw: &str) -> ResponseHead {
        parse_response_head(raw.as_bytes()).expect("well-formed head")
    }

    #[test]
    fn builds_byte_exact_range_request() {
        let chunk = ChunkDescriptor { index: 1, start: 0, end: 1_048_575 };
        let req = build_range_request("s1.test", "/f.bin", &chunk);
        assert_eq!(
            req,
            b"GET /f.bin HTTP/1.1\r\nHost: s1.test\r\nRange: bytes=0-1048575\r\nConnection: keep-alive\r\n\r\n"
        );

        let tiny = ChunkDescriptor { index: 1, start: 0, end: 99 };
        let req = build_range_request("h", "/x", &tiny);
        assert!(core::str::from_utf8(&req).unwrap().contains("Range: bytes=0-99\r\n"));

        let tail = ChunkDescriptor { index: 5, start: 4_194_304, end: 4_718_591 };
        let req = build_range_request("h", "/x", &tail);
        assert!(core::str::from_utf8(&req)
            .unwrap()
            .contains("Range: bytes=4194304-4718591\r\n"));
    }

    #[test]
    fn parses_partial_content_head() {
        let h = head(
            "HTTP/1.1 206 Partial Content\r\nContent-Range: bytes 0-1048575/16777216\r\nContent-Length: 1048576\r\n\r\n",
        );
        assert_eq!(h.status, 206);
        assert_eq!(
            h.content_range,
            Some(ContentRange { start: 0, end: 1_048_575, total: 16_777_216 })
        );
        assert_eq!(h.content_length, Some(1_048_576));
    }

    #[test]
    fn parses_plain_ok_head() {
        let h = head("HTTP/1.1 200 OK\r\nContent-Length: 42\r\n\r\n");
        assert_eq!(h.status, 200);
        assert_eq!(h.content_length, Some(42));
        assert_eq!(h.content_range, None);
    }

    #[test]
    fn rejects_inverted_range() {
        let err = parse_response_head(b"HTTP/1.1 206 Partial Content\r\nContent-Range: bytes 5-2/10\r\n\r\n");
        assert!(matches!(err, Err(WireError::Malformed(_))));
    }

    #[test]
    fn rejects_total_not_past_end() {
        let err = parse_response_head(b"HTTP/1.1 206 x\r\nContent-Range: bytes 0-9/9\r\n\r\n");
        assert!(matches!(err, Err(WireError::Malformed(_))));
    }

    #[test]
    fn rejects_conflicting_content_lengths() {
        let err = parse_response_head(b"HTTP/1.1 200 OK\r\nContent-Length: 1\r\nContent-Length: 2\r\n\r\n");
        assert!(matches!(err, Err(WireError::Malformed(_))));
        // Agreeing duplicates are tolerated.
        let h = head("HTTP/1.1 200 OK\r\nContent-Length: 7\r\ncontent-length: 7\r\n\r\n");
        assert_eq!(h.content_length, Some(7));
    }

    #[test]
    fn unsatisfied_content_range_is_tolerated() {
        let h = head("HTTP/1.1 416 Range Not Satisfiable\r\nContent-Range: bytes */100\r\n\r\n");
        assert_eq!(h.status, 416);
        assert_eq!(h.content_range, None);
    }

    #[test]
    fn classifies_range_support() {
        let h = head("HTTP/1.1 206 Partial Content\r\nContent-Range: bytes 0-1023/4096\r\n\r\n");
        assert_eq!(classify_range_support(&h), RangeSupport::Supported { total_len: 4096 });

        let h = head("HTTP/1.1 200 OK\r\nContent-Length: 42\r\n\r\n");
        assert_eq!(classify_range_support(&h), RangeSupport::Unsupported);

        let h = head("HTTP/1.1 416 Range Not Satisfiable\r\nContent-Range: bytes */100\r\n\r\n");
        assert_eq!(classify_range_support(&h), RangeSupport::RangeError);

        // 206 without a Content-Range cannot be streamed.
        let h = head("HTTP/1.1 206 Partial Content\r\n\r\n");
        assert_eq!(classify_range_support(&h), RangeSupport::RangeError);

        // Content-Length disagreeing with the range is incoherent.
        let h = head("HTTP/1.1 206 x\r\nContent-Range: bytes 0-9/100\r\nContent-Length: 5\r\n\r\n");
        assert_eq!(classify_range_support(&h), RangeSupport::RangeError);

        // Chunked framing of a ranged body is refused.
        let h = head(
            "HTTP/1.1 206 x\r\nContent-Range: bytes 0-9/100\r\nTransfer-Encoding: chunked\r\n\r\n",
        );
        assert_eq!(classify_range_support(&h), RangeSupport::RangeError);
    }

    #[test]
    fn synthesizes_consumer_head() {
        let first = head(
            "HTTP/1.1 206 Partial Content\r\nContent-Type: video/mp4\r\nContent-Range: bytes 0-1048575/16777216\r\nContent-Length: 1048576\r\nETag: \"abc\"\r\n\r\n",
        );
        let synth = synthesize_consumer_head(16_777_216, &first);
        assert_eq!(synth.status, 200);
        assert_eq!(synth.content_length, Some(16_777_216));
        assert_eq!(synth.content_range, None);
        assert_eq!(synth.header("content-type"), Some("video/mp4"));
        assert_eq!(synth.header("etag"), Some("\"abc\""));
        assert_eq!(synth.header("content-range"), None);
        assert_eq!(synth.header("content-length"), Some("16777216"));

        // Single-chunk object: length is still the full object's.
        let first = head("HTTP/1.1 206 x\r\nContent-Range: bytes 0-99/100\r\nContent-Length: 100\r\n\r\n");
        let synth = synthesize_consumer_head(100, &first);
        assert_eq!(synth.content_length, Some(100));
    }

    #[test]
    fn serialize_then_parse_round_trips() {
        let h = head(
            "HTTP/1.1 206 Partial Content\r\nContent-Range: bytes 0-1023/4096\r\nContent-Length: 1024\r\nContent-Type: text/plain\r\n\r\n",
        );
        let again = parse_response_head(&serialize_head(&h)).unwrap();
        assert_eq!(h, again);
    }
}
