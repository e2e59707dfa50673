//! Group expressions: `TAG(INT)` or an exceptional tag, joined by `x`.

use super::{build_catalog_group, parse_generic_tag, BasedRootDatum, EXCEPTIONAL_TAGS, PARAMETRIC_TAGS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        offset,
        message: message.into(),
    }
}

fn known_tags() -> String {
    let mut v: Vec<&str> = PARAMETRIC_TAGS.to_vec();
    v.extend(EXCEPTIONAL_TAGS);
    format!("known tags: {}, or Xnsc/Xnad", v.join(", "))
}

/// Longest prefix of `s` that is a known tag.
fn match_tag(s: &str) -> Option<&str> {
    let run = s
        .char_indices()
        .take_while(|(_, c)| c.is_ascii_alphanumeric())
        .map(|(i, c)| i + c.len_utf8())
        .last()?;
    (1..=run)
        .rev()
        .map(|e| &s[..e])
        .find(|p| {
            PARAMETRIC_TAGS.contains(p) || EXCEPTIONAL_TAGS.contains(p) || parse_generic_tag(p).is_some()
        })
}

/// Parses e.g. "SL(5)", "GSpin(8)", "E7sc", "GL(3)xGL(2)". Whitespace is ignored
/// around tokens.
pub fn parse_group_expr(text: &str) -> Result<BasedRootDatum, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut acc: Option<BasedRootDatum> = None;
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Err(err(pos, format!("expected a group tag; {}", known_tags())));
        }
        let start = pos;
        let tag = match_tag(&text[pos..]).ok_or_else(|| {
            err(start, format!("unknown group tag; {}", known_tags()))
        })?;
        pos += tag.len();
        let mut params = Vec::new();
        if PARAMETRIC_TAGS.contains(&tag) {
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'(' {
                return Err(err(pos, format!("expected '(' after {tag}")));
            }
            pos += 1;
            skip_ws(&mut pos);
            let ds = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if ds == pos {
                return Err(err(pos, "expected an integer"));
            }
            let n: i64 = text[ds..pos]
                .parse()
                .map_err(|_| err(ds, "integer out of range"))?;
            params.push(n);
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b')' {
                return Err(err(pos, "expected ')'"));
            }
            pos += 1;
        }
        let d = build_catalog_group(tag, &params).map_err(|e| err(start, e.to_string()))?;
        acc = Some(match acc {
            None => d,
            Some(a) => a.product(&d),
        });
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] == b'x' || bytes[pos] == b'*' {
            pos += 1;
        } else if text[pos..].starts_with('×') {
            pos += '×'.len_utf8();
        } else {
            return Err(err(pos, "expected 'x' or end of input"));
        }
    }
    Ok(acc.expect("at least one factor"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::classify;

    #[test]
    fn simple_and_products() {
        let d = parse_group_expr("SL(2)").unwrap();
        assert_eq!(d.rank, 1);
        let p = parse_group_expr("GL(3)xGL(2)").unwrap();
        assert_eq!(p.rank, 5);
        assert_eq!(classify(&p).unwrap().to_string(), "A1+A2 (torus rank 2)");
        let e = parse_group_expr("E7sc").unwrap();
        assert_eq!(classify(&e).unwrap().label(), "E7");
        let mixed = parse_group_expr("E6sc x SL(2)").unwrap();
        assert_eq!(mixed.rank, 7);
        assert_eq!(parse_group_expr("G2xG2").unwrap().rank, 4);
    }

    #[test]
    fn offsets() {
        assert_eq!(parse_group_expr("GL(3)xFOO(2)").unwrap_err().offset, 6);
        assert_eq!(parse_group_expr("SL(").unwrap_err().offset, 3);
        assert_eq!(parse_group_expr("SL(3").unwrap_err().offset, 4);
        assert_eq!(parse_group_expr("SL(3) GL(2)").unwrap_err().offset, 6);
        assert_eq!(parse_group_expr("").unwrap_err().offset, 0);
        let e = parse_group_expr("SL(1)").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(parse_group_expr("Q").unwrap_err().message.contains("known tags"));
    }
}
