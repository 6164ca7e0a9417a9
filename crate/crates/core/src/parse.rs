//! Text input: element expressions and automorphism words.
//!
//! Elements are sums of products of factors: exact rational or complex
//! coefficients, `i`, and the generators `t`, `U`, `V` with optional integer
//! exponents. `*` between factors is optional, whitespace is ignored, and
//! parenthesized subexpressions are allowed. A sign directly in front of a
//! number binds to that number, so `-2+3i` is the single constant with real
//! part -2.
//!
//! Complex literals group greedily: after a number, a `+` or `-` that is
//! followed by an optional number and then `i` is absorbed as the imaginary
//! part. `2+3i * U` is therefore one coefficient times `U`, matching how the
//! printer emits constants; printed non-real coefficients with generator
//! factors are parenthesized (`(2+3i) U`), so output always re-parses to the
//! same element.
//!
//! Automorphism words are `sigma`, `kappa`, `kappa2`, `flip`, `gamma1`,
//! `gamma2`, `gamma3`, `id`, or `mod(a,b,c,d)`, chained with `.` or the
//! composition sign into an outermost-first composite.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraContext, NcElement};
use crate::automorphism::{AutoError, AutomorphismSpec, NamedAutomorphism};
use crate::phase::{GaussianRational, PhaseScalar};
use crate::trace::S3Word;

#[derive(Clone, Debug, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn fail<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(BigRational),
    Imag,
    T,
    U,
    V,
    Caret,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let start = i;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let numer: BigInt = input[i..j].parse().expect("digits");
                let mut denom = BigInt::one();
                if j < bytes.len() && bytes[j] == b'/' {
                    let ds = j + 1;
                    let mut k = ds;
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    if k == ds {
                        return fail(j, "expected digits after '/'");
                    }
                    denom = input[ds..k].parse().expect("digits");
                    if denom.is_zero() {
                        return fail(ds, "zero denominator");
                    }
                    j = k;
                }
                toks.push((Tok::Number(BigRational::new(numer, denom)), start));
                i = j;
            }
            'i' => {
                toks.push((Tok::Imag, start));
                i += 1;
            }
            't' => {
                toks.push((Tok::T, start));
                i += 1;
            }
            'U' => {
                toks.push((Tok::U, start));
                i += 1;
            }
            'V' => {
                toks.push((Tok::V, start));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            other => {
                return fail(start, format!("unexpected character '{other}'"));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    input_len: usize,
    ctx: &'a AlgebraContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.pos + ahead).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.input_len, |(_, p)| *p)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        self.pos += 1;
        t
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Number(_) | Tok::Imag | Tok::T | Tok::U | Tok::V | Tok::LParen)
        )
    }

    fn parse_sum(&mut self) -> Result<NcElement, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.parse_term(negate)?;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            let term = self.parse_term(negate)?;
            acc = acc.try_add(&term).expect("same context");
        }
        Ok(acc)
    }

    fn parse_term(&mut self, negate: bool) -> Result<NcElement, ParseError> {
        let mut acc = self.parse_factor(negate)?;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) {
                self.pos += 1;
                if !self.starts_factor() {
                    return fail(self.here(), "expected a factor after '*'");
                }
            } else if !self.starts_factor() {
                break;
            }
            let f = self.parse_factor(false)?;
            acc = acc.try_mul(&f).expect("same context");
        }
        Ok(acc)
    }

    /// One factor. A pending sign binds to a leading number (it negates the
    /// real part before complex grouping) and otherwise negates the factor.
    fn parse_factor(&mut self, negate: bool) -> Result<NcElement, ParseError> {
        let pos = self.here();
        let elem = match self.peek() {
            Some(Tok::Number(_)) => {
                let Tok::Number(n) = self.bump() else { unreachable!() };
                let re = if negate { -n } else { n };
                let coeff = self.complex_tail(re)?;
                return Ok(NcElement::scalar(
                    *self.ctx,
                    PhaseScalar::from_gaussian(coeff),
                ));
            }
            Some(Tok::Imag) => {
                self.pos += 1;
                NcElement::scalar(*self.ctx, PhaseScalar::from_gaussian(GaussianRational::i()))
            }
            Some(Tok::T) => {
                self.pos += 1;
                let k = self.parse_exponent()?;
                NcElement::scalar(*self.ctx, PhaseScalar::t_pow(k))
            }
            Some(Tok::U) => {
                self.pos += 1;
                let m = self.parse_exponent()?;
                NcElement::monomial(*self.ctx, m, 0, PhaseScalar::one())
            }
            Some(Tok::V) => {
                self.pos += 1;
                let n = self.parse_exponent()?;
                NcElement::monomial(*self.ctx, 0, n, PhaseScalar::one())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                if !matches!(self.peek(), Some(Tok::RParen)) {
                    return fail(self.here(), "expected ')'");
                }
                self.pos += 1;
                inner
            }
            Some(_) | None => {
                return fail(pos, "expected a number, i, t, U, V, or '('");
            }
        };
        Ok(if negate {
            elem.scale(&PhaseScalar::from_integer(-1))
        } else {
            elem
        })
    }

    /// Absorb `[sign] [number] i` following a number into a complex
    /// constant; `i` directly after the number is a pure scaling.
    fn complex_tail(&mut self, re: BigRational) -> Result<GaussianRational, ParseError> {
        if matches!(self.peek(), Some(Tok::Imag)) {
            self.pos += 1;
            return Ok(GaussianRational::new(BigRational::zero(), re));
        }
        let sign = match self.peek() {
            Some(Tok::Plus) => BigRational::one(),
            Some(Tok::Minus) => -BigRational::one(),
            _ => return Ok(GaussianRational::new(re, BigRational::zero())),
        };
        match (self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::Imag), _) => {
                self.pos += 2;
                Ok(GaussianRational::new(re, sign))
            }
            (Some(Tok::Number(n)), Some(Tok::Imag)) => {
                let im = sign * n.clone();
                self.pos += 3;
                Ok(GaussianRational::new(re, im))
            }
            _ => Ok(GaussianRational::new(re, BigRational::zero())),
        }
    }

    fn parse_exponent(&mut self) -> Result<i64, ParseError> {
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(1);
        }
        self.pos += 1;
        let mut sign = 1i64;
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -1;
            }
            _ => {}
        }
        let pos = self.here();
        match self.peek() {
            Some(Tok::Number(n)) if n.is_integer() => {
                let value = n
                    .numer()
                    .to_i64()
                    .ok_or(ParseError {
                        position: pos,
                        message: "exponent out of range".into(),
                    })?;
                self.pos += 1;
                Ok(sign * value)
            }
            Some(Tok::Number(_)) => fail(pos, "exponent must be an integer"),
            _ => fail(pos, "expected an integer exponent after '^'"),
        }
    }
}

/// Parse an element expression in the standard convention.
pub fn parse_element(input: &str) -> Result<NcElement, ParseError> {
    parse_element_in(input, &AlgebraContext::standard())
}

/// Parse an element expression against an explicit context.
pub fn parse_element_in(input: &str, ctx: &AlgebraContext) -> Result<NcElement, ParseError> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return fail(0, "empty element expression");
    }
    let mut parser = Parser { toks, pos: 0, input_len: input.len(), ctx };
    let elem = parser.parse_sum()?;
    if parser.pos < parser.toks.len() {
        return fail(parser.here(), "unexpected trailing input");
    }
    Ok(elem)
}

/// Parse an automorphism word chain into a spec.
pub fn parse_spec(input: &str) -> Result<AutomorphismSpec, ParseError> {
    let mut words: Vec<(usize, &str)> = Vec::new();
    let mut start = 0usize;
    for (idx, ch) in input.char_indices() {
        if ch == '.' || ch == '\u{2218}' {
            words.push((start, &input[start..idx]));
            start = idx + ch.len_utf8();
        }
    }
    words.push((start, &input[start..]));
    let mut specs = Vec::with_capacity(words.len());
    for (offset, raw) in words {
        let word = raw.trim();
        let pos = offset + (raw.len() - raw.trim_start().len());
        if word.is_empty() {
            return fail(pos, "empty automorphism word");
        }
        specs.push(parse_word(word, pos)?);
    }
    if specs.len() == 1 {
        Ok(specs.pop().expect("one word"))
    } else {
        Ok(AutomorphismSpec::Composite(specs))
    }
}

fn parse_word(word: &str, pos: usize) -> Result<AutomorphismSpec, ParseError> {
    let named = |n| Ok(AutomorphismSpec::Named(n));
    match word {
        "id" => named(NamedAutomorphism::Id),
        "sigma" => named(NamedAutomorphism::Sigma),
        "kappa" => named(NamedAutomorphism::Kappa),
        "kappa2" => Ok(S3Word::Kappa2.spec()),
        "flip" => named(NamedAutomorphism::Flip),
        "gamma1" => named(NamedAutomorphism::Gamma1),
        "gamma2" => named(NamedAutomorphism::Gamma2),
        "gamma3" => named(NamedAutomorphism::Gamma3),
        _ if word.starts_with("mod(") && word.ends_with(')') => {
            let inner = &word[4..word.len() - 1];
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 4 {
                return fail(pos, "mod(a,b,c,d) takes exactly four integers");
            }
            let mut vals = [0i64; 4];
            for (slot, part) in vals.iter_mut().zip(&parts) {
                *slot = part.trim().parse().map_err(|_| ParseError {
                    position: pos,
                    message: format!("bad integer '{}' in mod(...)", part.trim()),
                })?;
            }
            match AutomorphismSpec::modular(vals[0], vals[1], vals[2], vals[3]) {
                Ok(spec) => Ok(spec),
                Err(AutoError::NotUnimodular { det, .. }) => fail(
                    pos,
                    format!("determinant must be 1, got {det}"),
                ),
                Err(other) => fail(pos, other.to_string()),
            }
        }
        _ => fail(pos, format!("unknown automorphism word '{word}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::std_gens;

    fn roundtrip(text: &str) {
        let parsed = parse_element(text).unwrap();
        let printed = parsed.to_string();
        let reparsed = parse_element(&printed).unwrap();
        assert_eq!(parsed, reparsed, "display `{printed}` of `{text}` reparses differently");
    }

    #[test]
    fn single_monomial_with_complex_coefficient() {
        let e = parse_element("2+3i * t^-1 * U^2 V^-3").unwrap();
        assert_eq!(e.num_terms(), 1);
        let coeff = e.coeff(2, -3);
        let expected = PhaseScalar::single(
            -1,
            GaussianRational::new(BigRational::from_integer(2.into()), BigRational::from_integer(3.into())),
        );
        assert_eq!(coeff, expected);
    }

    #[test]
    fn sign_binds_to_the_real_part() {
        let e = parse_element("-2+3i").unwrap();
        let c = e.coeff(0, 0);
        assert_eq!(
            c,
            PhaseScalar::from_gaussian(GaussianRational::new(
                BigRational::from_integer((-2).into()),
                BigRational::from_integer(3.into()),
            ))
        );
    }

    #[test]
    fn sums_and_implicit_products() {
        let uv = std_gens::u().try_mul(&std_gens::v()).unwrap();
        assert_eq!(parse_element("U V").unwrap(), uv);
        assert_eq!(parse_element("U*V").unwrap(), uv);
        assert_eq!(parse_element("UV").unwrap(), uv);
        let e = parse_element("1 - 2 U").unwrap();
        assert_eq!(e.num_terms(), 2);
        assert_eq!(e.coeff(1, 0), PhaseScalar::from_integer(-2));
        // reordering the generators picks up the exchange phase
        assert_eq!(parse_element("V U").unwrap(), parse_element("t^2 U V").unwrap());
    }

    #[test]
    fn parentheses_and_leading_signs() {
        let e = parse_element("-(1 + i)(U - V)").unwrap();
        let direct = parse_element("-U + V - i U + i V").unwrap();
        assert_eq!(e, direct);
        assert_eq!(parse_element("-t U").unwrap(), parse_element("- (t U)").unwrap());
        assert_eq!(parse_element("+U").unwrap(), std_gens::u());
    }

    #[test]
    fn rational_and_imaginary_literals() {
        let e = parse_element("1/2 U + 3i V - i").unwrap();
        assert_eq!(
            e.coeff(1, 0),
            PhaseScalar::from_gaussian(GaussianRational::from_rational(BigRational::new(
                1.into(),
                2.into()
            )))
        );
        assert_eq!(
            e.coeff(0, 1),
            PhaseScalar::from_gaussian(GaussianRational::new(
                BigRational::zero(),
                BigRational::from_integer(3.into()),
            ))
        );
        assert_eq!(
            e.coeff(0, 0),
            PhaseScalar::from_gaussian(GaussianRational::new(
                BigRational::zero(),
                BigRational::from_integer((-1).into()),
            ))
        );
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "0",
            "1",
            "-i",
            "2 - i",
            "t^2 U V",
            "-3 t^-1 U^-2 + U V",
            "(1/2-i) t U^3 V^-2 + 7",
            "2 + (-i) t^3",
            "U^5 - V^-5 + (2+3i) U V",
        ] {
            roundtrip(text);
        }
    }

    #[test]
    fn error_positions() {
        let err = parse_element("U^").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_element("2 +").unwrap_err();
        assert_eq!(err.position, 3);
        let err = parse_element("U + @").unwrap_err();
        assert_eq!(err.position, 4);
        let err = parse_element("t^1/2 U").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_element("3/0").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_element("(U").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_element("U)").unwrap_err();
        assert_eq!(err.position, 1);
        assert!(parse_element("").is_err());
        assert!(parse_element("   ").is_err());
    }

    #[test]
    fn spec_words() {
        let sigma = parse_spec("sigma").unwrap();
        assert_eq!(sigma.to_string(), "sigma");
        let chain = parse_spec("sigma.kappa").unwrap();
        assert_eq!(chain.to_string(), "sigma.kappa");
        let composed = parse_spec("sigma\u{2218}kappa").unwrap();
        assert_eq!(composed.to_string(), "sigma.kappa");
        let modular = parse_spec("mod(0, -1, 1, 0)").unwrap();
        assert_eq!(modular.to_string(), "mod(0,-1,1,0)");
        // word chains act like composition: sigma.kappa applies kappa first
        let x = std_gens::u();
        let lhs = chain.apply(&x).unwrap();
        let rhs = parse_spec("sigma")
            .unwrap()
            .apply(&parse_spec("kappa").unwrap().apply(&x).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kappa2_matches_kappa_twice() {
        let x = parse_element("U V^-1 + 2 U^3").unwrap();
        let twice = parse_spec("kappa.kappa").unwrap().apply(&x).unwrap();
        let word = parse_spec("kappa2").unwrap().apply(&x).unwrap();
        assert_eq!(twice, word);
    }

    #[test]
    fn spec_errors() {
        let err = parse_spec("mod(0,1,1,0)").unwrap_err();
        assert!(err.message.contains("determinant must be 1"), "{}", err.message);
        assert!(parse_spec("sigma..kappa").is_err());
        assert!(parse_spec("rho").is_err());
        assert!(parse_spec("mod(1,2,3)").is_err());
        let err = parse_spec("sigma.rho").unwrap_err();
        assert_eq!(err.position, 6);
    }
}
