//! Pattern file formats.
//!
//! * Plain PBM (`P1`): `1` is foreground. Width is the column count (axis 1),
//!   height the row count (axis 0).
//! * NDBIN: `NDBIN\n<k>\n<N_1> ... <N_k>\n` followed by the cells as
//!   whitespace-separated `0`/`1` in row-major order.
//! * Voxel CSV (export only): header `x0,...,x{k-1}`, then one line per
//!   foreground cell in row-major order.

use std::path::Path;

use thiserror::Error;

use crate::pattern::{BinaryPattern, PatternError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{format} holds 2D patterns only, got {k} dimensions")]
    Dimension { format: &'static str, k: usize },
    #[error("unknown pattern format {0:?}")]
    UnknownFormat(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

fn parse_err(offset: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        offset,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternFormat {
    Pbm,
    Ndbin,
}

impl PatternFormat {
    pub fn from_name(name: &str) -> Result<Self, FormatError> {
        match name.to_ascii_lowercase().as_str() {
            "pbm" => Ok(PatternFormat::Pbm),
            "ndbin" => Ok(PatternFormat::Ndbin),
            other => Err(FormatError::UnknownFormat(other.to_string())),
        }
    }

    /// Picks the format from a `.pbm` / `.ndbin` extension.
    pub fn from_path(path: &Path) -> Result<Self, FormatError> {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        Self::from_name(ext)
    }

    pub fn read(self, bytes: &[u8]) -> Result<BinaryPattern, FormatError> {
        match self {
            PatternFormat::Pbm => read_pbm(bytes),
            PatternFormat::Ndbin => read_ndbin(bytes),
        }
    }

    pub fn write(self, pattern: &BinaryPattern) -> Result<Vec<u8>, FormatError> {
        match self {
            PatternFormat::Pbm => write_pbm(pattern),
            PatternFormat::Ndbin => Ok(write_ndbin(pattern)),
        }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    comments: bool,
}

impl<'a> Cursor<'a> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if self.comments && b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Next whitespace-delimited token and its start offset.
    fn token(&mut self) -> Option<(usize, &'a [u8])> {
        self.skip_space();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && !(self.comments && *b == b'#'))
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, &self.bytes[start..self.pos]))
    }

    fn number(&mut self, what: &str) -> Result<usize, FormatError> {
        let (offset, tok) = self
            .token()
            .ok_or_else(|| parse_err(self.pos, format!("truncated: missing {what}")))?;
        if !tok.iter().all(u8::is_ascii_digit) {
            return Err(parse_err(offset, format!("{what} is not a decimal number")));
        }
        let text = std::str::from_utf8(tok).expect("ascii digits");
        text.parse()
            .map_err(|_| parse_err(offset, format!("{what} overflows")))
    }

    fn expect_end(&mut self) -> Result<(), FormatError> {
        self.skip_space();
        if self.pos < self.bytes.len() {
            Err(parse_err(self.pos, "unexpected data after last cell"))
        } else {
            Ok(())
        }
    }
}

fn cell_count(shape: &[usize], offset: usize) -> Result<usize, FormatError> {
    shape
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or_else(|| parse_err(offset, "dimensions overflow"))
}

pub fn read_pbm(bytes: &[u8]) -> Result<BinaryPattern, FormatError> {
    if bytes.len() < 2 {
        return Err(parse_err(0, "truncated: missing magic number"));
    }
    if &bytes[..2] != b"P1" {
        return Err(parse_err(0, "unsupported magic number, expected P1"));
    }
    let mut cur = Cursor {
        bytes,
        pos: 2,
        comments: true,
    };
    if cur.bytes.get(2).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
        return Err(parse_err(2, "expected whitespace after magic number"));
    }
    let dims_at = cur.pos;
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    if width == 0 || height == 0 {
        return Err(parse_err(dims_at, "zero image dimension"));
    }
    let total = cell_count(&[height, width], dims_at)?;

    let mut data = Vec::new();
    while data.len() < total {
        cur.skip_space();
        match cur.bytes.get(cur.pos) {
            None => {
                return Err(parse_err(
                    cur.pos,
                    format!("truncated: {} of {total} pixels", data.len()),
                ))
            }
            Some(b'0') => data.push(false),
            Some(b'1') => data.push(true),
            Some(_) => return Err(parse_err(cur.pos, "expected pixel 0 or 1")),
        }
        cur.pos += 1;
    }
    cur.expect_end()?;
    Ok(BinaryPattern::from_data(&[height, width], data)?)
}

pub fn write_pbm(pattern: &BinaryPattern) -> Result<Vec<u8>, FormatError> {
    if pattern.ndim() != 2 {
        return Err(FormatError::Dimension {
            format: "PBM",
            k: pattern.ndim(),
        });
    }
    let (h, w) = (pattern.shape()[0], pattern.shape()[1]);
    let mut out = format!("P1\n{w} {h}\n").into_bytes();
    write_rows(&mut out, pattern.data(), w);
    Ok(out)
}

fn write_rows(out: &mut Vec<u8>, data: &[bool], row_len: usize) {
    out.reserve(data.len() * 2);
    for row in data.chunks(row_len) {
        for (i, &b) in row.iter().enumerate() {
            if i > 0 {
                out.push(b' ');
            }
            out.push(if b { b'1' } else { b'0' });
        }
        out.push(b'\n');
    }
}

pub fn read_ndbin(bytes: &[u8]) -> Result<BinaryPattern, FormatError> {
    let mut cur = Cursor {
        bytes,
        pos: 0,
        comments: false,
    };
    match cur.token() {
        Some((_, b"NDBIN")) => {}
        Some((offset, _)) => return Err(parse_err(offset, "unsupported magic, expected NDBIN")),
        None => return Err(parse_err(0, "truncated: missing magic")),
    }
    let k_at = cur.pos;
    let k = cur.number("dimension count")?;
    if k < 2 {
        return Err(parse_err(k_at, format!("need at least 2 dimensions, got {k}")));
    }
    let dims_at = cur.pos;
    let shape = (0..k)
        .map(|i| cur.number(&format!("extent {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    if shape.contains(&0) {
        return Err(parse_err(dims_at, "zero extent"));
    }
    let total = cell_count(&shape, dims_at)?;

    let mut data = Vec::with_capacity(total.min(1 << 24));
    while let Some((offset, tok)) = cur.token() {
        let bit = match tok {
            b"0" => false,
            b"1" => true,
            _ => return Err(parse_err(offset, "expected cell 0 or 1")),
        };
        if data.len() == total {
            return Err(parse_err(
                offset,
                format!("payload has more than the {total} cells declared"),
            ));
        }
        data.push(bit);
    }
    if data.len() != total {
        return Err(parse_err(
            cur.pos,
            format!("header declares {total} cells, payload has {}", data.len()),
        ));
    }
    Ok(BinaryPattern::from_data(&shape, data)?)
}

pub fn write_ndbin(pattern: &BinaryPattern) -> Vec<u8> {
    let dims: Vec<String> = pattern.shape().iter().map(usize::to_string).collect();
    let mut out = format!("NDBIN\n{}\n{}\n", pattern.ndim(), dims.join(" ")).into_bytes();
    let last = *pattern.shape().last().expect("k >= 2");
    write_rows(&mut out, pattern.data(), last);
    out
}

pub fn export_voxels_csv(pattern: &BinaryPattern) -> Vec<u8> {
    let header: Vec<String> = (0..pattern.ndim()).map(|i| format!("x{i}")).collect();
    let mut out = header.join(",");
    out.push('\n');
    for c in pattern.foreground() {
        let row: Vec<String> = c.indices().iter().map(usize::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn offset_of(err: FormatError) -> usize {
        match err {
            FormatError::Parse { offset, .. } => offset,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn pbm_examples() {
        let p = read_pbm(b"P1\n2 2\n1 1\n1 1\n").unwrap();
        assert_eq!(p, BinaryPattern::from_data(&[2, 2], vec![true; 4]).unwrap());
        let bg = BinaryPattern::new(&[1, 1]).unwrap();
        assert_eq!(write_pbm(&bg).unwrap(), b"P1\n1 1\n0\n");
        assert_eq!(offset_of(read_pbm(b"P5\n1 1\n\x00").unwrap_err()), 0);
    }

    #[test]
    fn pbm_axis_convention() {
        // 3 wide, 2 tall
        let p = read_pbm(b"P1\n3 2\n1 0 0\n0 0 1\n").unwrap();
        assert_eq!(p.shape(), &[2, 3]);
        assert!(p.get(&[0, 0]) && p.get(&[1, 2]));
        assert_eq!(write_pbm(&p).unwrap(), b"P1\n3 2\n1 0 0\n0 0 1\n");
    }

    #[test]
    fn pbm_accepts_comments_and_packed_bits() {
        let p = read_pbm(b"P1 # comment\n# another\n3 1\n101 \n").unwrap();
        assert_eq!(p, BinaryPattern::from_bits(&[1, 3], &[1, 0, 1]).unwrap());
    }

    #[test]
    fn pbm_errors_carry_offsets() {
        assert_eq!(offset_of(read_pbm(b"P1\n2 2\n1 1\n1").unwrap_err()), 12);
        assert_eq!(offset_of(read_pbm(b"P1\n2 2\n1 2\n1 1\n").unwrap_err()), 9);
        assert_eq!(offset_of(read_pbm(b"P1\nx 2\n").unwrap_err()), 3);
        assert_eq!(
            offset_of(read_pbm(b"P1\n99999999999999999999 2\n").unwrap_err()),
            3
        );
        assert_eq!(
            offset_of(read_pbm(b"P1\n9999999999 9999999999\n").unwrap_err()),
            2
        );
        assert_eq!(offset_of(read_pbm(b"P1\n0 2\n").unwrap_err()), 2);
        assert_eq!(offset_of(read_pbm(b"P1\n1 1\n1 1\n").unwrap_err()), 9);
        assert_eq!(offset_of(read_pbm(b"P").unwrap_err()), 0);
        assert!(matches!(
            write_pbm(&BinaryPattern::new(&[1, 1, 1]).unwrap()),
            Err(FormatError::Dimension { k: 3, .. })
        ));
    }

    #[test]
    fn ndbin_examples() {
        let p = read_ndbin(b"NDBIN\n2\n1 3\n1 0 1\n").unwrap();
        assert_eq!(p, BinaryPattern::from_bits(&[1, 3], &[1, 0, 1]).unwrap());
        let cube = BinaryPattern::from_data(&[2, 2, 2], vec![true; 8]).unwrap();
        let bytes = write_ndbin(&cube);
        assert!(bytes.starts_with(b"NDBIN\n3\n2 2 2\n"));
        assert_eq!(bytes, b"NDBIN\n3\n2 2 2\n1 1\n1 1\n1 1\n1 1\n");
        let short = read_ndbin(b"NDBIN\n2\n2 2\n1 0 1\n").unwrap_err();
        assert!(matches!(short, FormatError::Parse { .. }));
    }

    #[test]
    fn ndbin_errors() {
        assert_eq!(offset_of(read_ndbin(b"NDBIM\n2\n1 1\n1\n").unwrap_err()), 0);
        assert_eq!(offset_of(read_ndbin(b"NDBIN\n1\n3\n1 1 1\n").unwrap_err()), 5);
        assert_eq!(offset_of(read_ndbin(b"NDBIN\n2\n1 2\n1 0 1\n").unwrap_err()), 16);
        assert_eq!(offset_of(read_ndbin(b"NDBIN\n2\n1 2\n1 x\n").unwrap_err()), 14);
        assert_eq!(offset_of(read_ndbin(b"NDBIN\n2\n1\n").unwrap_err()), 10);
    }

    #[test]
    fn voxel_csv() {
        let empty = BinaryPattern::new(&[2, 3]).unwrap();
        assert_eq!(export_voxels_csv(&empty), b"x0,x1\n");
        let one = BinaryPattern::from_coords(&[3, 3], [&[1, 2][..]]).unwrap();
        assert_eq!(export_voxels_csv(&one), b"x0,x1\n1,2\n");
        let two = BinaryPattern::from_coords(&[2, 2, 2], [&[1, 1, 1][..], &[0, 0, 0][..]]).unwrap();
        assert_eq!(export_voxels_csv(&two), b"x0,x1,x2\n0,0,0\n1,1,1\n");
    }

    #[test]
    fn format_dispatch() {
        assert_eq!(PatternFormat::from_path(Path::new("a/b.PBM")).unwrap(), PatternFormat::Pbm);
        assert_eq!(
            PatternFormat::from_path(Path::new("x.ndbin")).unwrap(),
            PatternFormat::Ndbin
        );
        assert!(PatternFormat::from_path(Path::new("x.png")).is_err());
        assert!(PatternFormat::from_path(Path::new("noext")).is_err());
    }

    fn arb_pattern() -> impl Strategy<Value = BinaryPattern> {
        prop::collection::vec(1usize..6, 2..=4).prop_flat_map(|shape| {
            let len: usize = shape.iter().product();
            prop::collection::vec(any::<bool>(), len)
                .prop_map(move |d| BinaryPattern::from_data(&shape, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn ndbin_round_trip(p in arb_pattern()) {
            let bytes = write_ndbin(&p);
            let back = read_ndbin(&bytes).unwrap();
            prop_assert_eq!(write_ndbin(&back), bytes);
            prop_assert_eq!(back, p);
        }

        #[test]
        fn pbm_round_trip(p in arb_pattern()) {
            if p.ndim() == 2 {
                let bytes = write_pbm(&p).unwrap();
                let back = read_pbm(&bytes).unwrap();
                prop_assert_eq!(write_pbm(&back).unwrap(), bytes);
                prop_assert_eq!(back, p);
            }
        }

        #[test]
        fn readers_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..64)) {
            let _ = read_pbm(&bytes);
            let _ = read_ndbin(&bytes);
        }
    }
}
