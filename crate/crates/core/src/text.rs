//! Line-oriented polynomial text: whitespace-separated decimal coefficients,
//! low-order first, one polynomial per line. A blank line is the zero
//! polynomial.

use num_bigint::BigInt;

use crate::error::ParseError;
use crate::poly::Polynomial;

/// Parses one line. `line_no` is 1-based and only used in diagnostics.
pub fn parse_polynomial(line: &str, line_no: usize) -> Result<Polynomial, ParseError> {
    let mut coeffs = Vec::new();
    let mut chars = line.char_indices().peekable();
    let column = |byte: usize| line[..byte].chars().count() + 1;
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut end = start;
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                break;
            }
            end = i + c.len_utf8();
            chars.next();
        }
        let token = &line[start..end];
        let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
        if digits.is_empty() {
            return Err(ParseError::new(
                line_no,
                column(start),
                format!("expected digits after sign in {token:?}"),
            ));
        }
        if let Some(bad) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            let offset = start + (token.len() - digits.len()) + bad.0;
            return Err(ParseError::new(
                line_no,
                column(offset),
                format!("unexpected character {:?} in coefficient", bad.1),
            ));
        }
        let value: BigInt = token.parse().expect("validated decimal token");
        coeffs.push(value);
    }
    Ok(Polynomial::new(coeffs))
}

/// Parses every line of `input`. A final newline does not start another
/// polynomial.
pub fn parse_polynomials(input: &str) -> Result<Vec<Polynomial>, ParseError> {
    let body = input.strip_suffix('\n').unwrap_or(input);
    let body = body.strip_suffix('\r').unwrap_or(body);
    if body.is_empty() && input.is_empty() {
        return Ok(Vec::new());
    }
    body.split('\n')
        .enumerate()
        .map(|(i, line)| parse_polynomial(line.strip_suffix('\r').unwrap_or(line), i + 1))
        .collect()
}

pub fn format_polynomial(p: &Polynomial) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        let p = parse_polynomial("  1 -2\t+3 ", 1).unwrap();
        assert_eq!(p, Polynomial::from_i64s(&[1, -2, 3]));
        assert_eq!(format_polynomial(&p), "1 -2 3");
        assert_eq!(parse_polynomial("", 1).unwrap(), Polynomial::zero());
        let big = parse_polynomial("123456789012345678901234567890", 1).unwrap();
        assert_eq!(format_polynomial(&big), "123456789012345678901234567890");
    }

    #[test]
    fn diagnostics_point_at_the_character() {
        let err = parse_polynomial("1 2x 3", 4).unwrap_err();
        assert_eq!((err.line, err.column), (4, 4));
        let err = parse_polynomial("1 - 3", 1).unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
        let err = parse_polynomial("é 1z", 2).unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
        let err = parse_polynomial("--1", 1).unwrap_err();
        assert_eq!(err.column, 2);
    }

    #[test]
    fn multiple_lines() {
        let ps = parse_polynomials("1 1\r\n1 2 1\n").unwrap();
        assert_eq!(
            ps,
            vec![
                Polynomial::from_i64s(&[1, 1]),
                Polynomial::from_i64s(&[1, 2, 1])
            ]
        );
        assert_eq!(parse_polynomials("").unwrap(), vec![]);
        assert_eq!(parse_polynomials("\n").unwrap(), vec![Polynomial::zero()]);
        let err = parse_polynomials("1\n2 y\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
    }
}
