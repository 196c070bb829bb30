//! One shared text grammar for every value the tool reads: dyadics,
//! supported vectors, points, finite matrices, ring elements, and words.
//! Errors carry the byte offset where parsing stopped.
//!
//! Forms, with `int` a signed decimal integer and `uint` unsigned:
//!
//! ```text
//! dyadic    := "0" | "1" | uint "/2" ("^" uint)?
//! svector   := "0" | "{" dyadic ":" int ("," dyadic ":" int)* "}"
//! vpoint    := "[" svector "|" svector "|" svector "|" svector "]"
//! finmat    := "[]" | "[" entry (";" entry)* "]"
//!              entry := "(" dyadic "," dyadic ")" "=" int
//! group     := term ("+" term)*
//!              term := int ("*" word)? | word
//!              word := factor ("*" factor)*
//!              factor := "1" | ("x0" | "x1") ("^" int)?
//! ring      := "(" group ";" finmat ")" | finmat | group
//! stletter  := "e(" uint "," uint ";" ring ")" ("^-1")?
//! stword    := "1" | stletter ("*" stletter)*
//! gammaword := "1" | tagged ("*" tagged)*
//!              tagged := ("1" | "2") ":" stletter
//! ```
//!
//! Dyadic display always re-parses; group parts of ring elements are read
//! as generator words and stored in canonical map form, so their display
//! is not the input syntax.

use num_bigint::BigInt;

use crate::amalgam::{GammaLetter, GammaWord};
use crate::dyadic::Dyadic;
use crate::error::Error;
use crate::finmat::{FinMat, SVector};
use crate::gamma0::VPoint;
use crate::ring::{CrazyRingElt, GroupRingElt};
use crate::steinberg::{StLetter, StWord};
use crate::thompson::PLMap;
use crate::Result;

struct P<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> P<'a> {
    fn new(src: &'a str) -> P<'a> {
        P { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn peek_at(&self, ahead: usize) -> Option<u8> {
        self.src.as_bytes().get(self.pos + ahead).copied()
    }

    /// Consume `b` if it is next (after whitespace).
    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    /// Consume a literal if it is next (after whitespace), without
    /// a token boundary check.
    fn eat_str(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn parse_uint_u64(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        self.src[start..self.pos]
            .parse::<u64>()
            .map_err(|_| Error::parse(start, "number out of range"))
    }

    fn parse_int_big(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err("expected an integer");
        }
        self.src[start..self.pos]
            .parse::<BigInt>()
            .map_err(|_| Error::parse(start, "malformed integer"))
    }

    fn parse_int_i64(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err("expected an integer");
        }
        self.src[start..self.pos]
            .parse::<i64>()
            .map_err(|_| Error::parse(start, "exponent out of range"))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn dyadic(&mut self) -> Result<Dyadic> {
        self.skip_ws();
        let start = self.pos;
        let num = self.parse_uint_u64()?;
        self.skip_ws();
        if self.peek() != Some(b'/') {
            return match num {
                0 => Ok(Dyadic::zero()),
                1 => Ok(Dyadic::one()),
                _ => Err(Error::parse(start, "integer dyadic must be 0 or 1")),
            };
        }
        self.pos += 1;
        if !self.eat(b'2') {
            return self.err("denominator must be a power of two, written 2 or 2^k");
        }
        let exp = if self.eat(b'^') { self.parse_uint_u64()? } else { 1 };
        Dyadic::from_ints(num, exp).map_err(|e| Error::parse(start, e.to_string()))
    }

    fn svector(&mut self) -> Result<SVector> {
        self.skip_ws();
        // "0" only when it is not the start of a dyadic like "0/2" (which
        // from_ints rejects anyway, but keep the diagnostics sharp)
        if self.peek() == Some(b'0') && self.peek_at(1) != Some(b'/') {
            self.pos += 1;
            return Ok(SVector::zero());
        }
        self.expect(b'{')?;
        let mut out = SVector::zero();
        let mut seen: Vec<Dyadic> = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let s = self.dyadic()?;
            if seen.contains(&s) {
                return Err(Error::parse(at, format!("duplicate entry at {s}")));
            }
            self.expect(b':')?;
            let c = self.parse_int_big()?;
            out.set(s.clone(), c).map_err(|e| Error::parse(at, e.to_string()))?;
            seen.push(s);
            if self.eat(b',') {
                continue;
            }
            self.expect(b'}')?;
            return Ok(out);
        }
    }

    fn vpoint(&mut self) -> Result<VPoint> {
        self.expect(b'[')?;
        let c1 = self.svector()?;
        self.expect(b'|')?;
        let c2 = self.svector()?;
        self.expect(b'|')?;
        let c3 = self.svector()?;
        self.expect(b'|')?;
        let c4 = self.svector()?;
        self.expect(b']')?;
        Ok(VPoint::from_components([c1, c2, c3, c4]))
    }

    fn finmat(&mut self) -> Result<FinMat> {
        self.expect(b'[')?;
        if self.eat(b']') {
            return Ok(FinMat::zero());
        }
        let mut out = FinMat::zero();
        let mut seen: Vec<(Dyadic, Dyadic)> = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            self.expect(b'(')?;
            let row = self.dyadic()?;
            self.expect(b',')?;
            let col = self.dyadic()?;
            self.expect(b')')?;
            self.expect(b'=')?;
            let c = self.parse_int_big()?;
            let key = (row.clone(), col.clone());
            if seen.contains(&key) {
                return Err(Error::parse(at, format!("duplicate entry at ({row},{col})")));
            }
            out.set(row, col, c).map_err(|e| Error::parse(at, e.to_string()))?;
            seen.push(key);
            if self.eat(b';') {
                continue;
            }
            self.expect(b']')?;
            return Ok(out);
        }
    }

    /// A word in the two generators, evaluated to its canonical map.
    fn group_word(&mut self) -> Result<PLMap> {
        let mut acc = PLMap::identity();
        loop {
            self.skip_ws();
            let factor = if self.eat(b'1') {
                PLMap::identity()
            } else if self.eat_str("x0") {
                let e = if self.eat(b'^') { self.parse_int_i64()? } else { 1 };
                PLMap::generator(0).expect("generator 0 exists").pow(e)
            } else if self.eat_str("x1") {
                let e = if self.eat(b'^') { self.parse_int_i64()? } else { 1 };
                PLMap::generator(1).expect("generator 1 exists").pow(e)
            } else {
                return self.err("expected a generator word over x0, x1");
            };
            acc = acc.compose(&factor);
            if !self.eat(b'*') {
                return Ok(acc);
            }
        }
    }

    fn group(&mut self) -> Result<GroupRingElt> {
        let mut out = GroupRingElt::zero();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b == b'-' || b.is_ascii_digit() => {
                    // "1" could open either an integer coefficient or the
                    // identity word; both denote the same term, so the
                    // integer path is taken.
                    let c = self.parse_int_big()?;
                    if self.eat(b'*') {
                        let w = self.group_word()?;
                        out.add_term(w, c);
                    } else {
                        out.add_term(PLMap::identity(), c);
                    }
                }
                Some(b'x') => {
                    let w = self.group_word()?;
                    out.add_term(w, BigInt::from(1));
                }
                _ => return self.err("expected a group-ring term"),
            }
            if !self.eat(b'+') {
                return Ok(out);
            }
        }
    }

    fn ring(&mut self) -> Result<CrazyRingElt> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let grp = self.group()?;
                self.expect(b';')?;
                let mat = self.finmat()?;
                self.expect(b')')?;
                Ok(CrazyRingElt::from_parts(grp, mat))
            }
            Some(b'[') => Ok(CrazyRingElt::embed_mat(self.finmat()?)),
            _ => Ok(CrazyRingElt::embed_group_ring(self.group()?)),
        }
    }

    fn stletter(&mut self) -> Result<StLetter> {
        self.skip_ws();
        let at = self.pos;
        if !self.eat(b'e') {
            return self.err("expected a letter e(i,j;r)");
        }
        self.expect(b'(')?;
        let i = self.parse_uint_u64()? as usize;
        self.expect(b',')?;
        let j = self.parse_uint_u64()? as usize;
        self.expect(b';')?;
        let r = self.ring()?;
        self.expect(b')')?;
        let mut letter = StLetter::new(i, j, r).map_err(|e| Error::parse(at, e.to_string()))?;
        if self.eat(b'^') {
            if !(self.eat(b'-') && self.eat(b'1')) {
                return self.err("only the exponent -1 is allowed on letters");
            }
            letter = letter.inverse();
        }
        Ok(letter)
    }

    fn stword(&mut self) -> Result<StWord> {
        self.skip_ws();
        if self.peek() == Some(b'1') && !matches!(self.peek_at(1), Some(b':')) {
            self.pos += 1;
            return Ok(StWord::empty());
        }
        let mut letters = Vec::new();
        loop {
            letters.push(self.stletter()?);
            if !self.eat(b'*') {
                return Ok(StWord::from_letters(letters));
            }
        }
    }

    fn gammaword(&mut self) -> Result<GammaWord> {
        self.skip_ws();
        if self.peek() == Some(b'1') && !matches!(self.peek_at(1), Some(b':')) {
            self.pos += 1;
            return Ok(GammaWord::empty());
        }
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let copy = self.parse_uint_u64()?;
            if copy != 1 && copy != 2 {
                return Err(Error::parse(at, "copy tag must be 1 or 2"));
            }
            self.expect(b':')?;
            let inner = self.stletter()?;
            letters.push(GammaLetter::new(copy as u8, inner).expect("tag checked above"));
            if !self.eat(b'*') {
                return Ok(GammaWord::from_letters(letters));
            }
        }
    }
}

macro_rules! entry_points {
    ($(($name:ident, $method:ident, $out:ty, $doc:literal)),* $(,)?) => {
        $(
            #[doc = $doc]
            pub fn $name(text: &str) -> Result<$out> {
                let mut p = P::new(text);
                let value = p.$method()?;
                p.finish()?;
                Ok(value)
            }
        )*
    };
}

entry_points!(
    (parse_dyadic, dyadic, Dyadic, "Parse a dyadic rational: `0`, `1`, or `a/2^k` (with `a/2` for `k = 1`)."),
    (parse_svector, svector, SVector, "Parse a finitely supported vector: `0` or `{dyadic:int,...}`."),
    (parse_vpoint, vpoint, VPoint, "Parse a point: `[svector|svector|svector|svector]`."),
    (parse_finmat, finmat, FinMat, "Parse a finite matrix: `[]` or `[(d,d)=int;...]`."),
    (parse_group, group, GroupRingElt, "Parse a group-ring element: `+`-joined terms `int*word` over `x0`, `x1`."),
    (parse_ring, ring, CrazyRingElt, "Parse a ring element: `(group;finmat)`, a bare finmat, or a bare group part."),
    (parse_stword, stword, StWord, "Parse a word of letters `e(i,j;ring)` with optional `^-1`, joined by `*`; `1` is empty."),
    (parse_gammaword, gammaword, GammaWord, "Parse a copy-tagged word of letters `1:e(...)` / `2:e(...)`; `1` is empty."),
);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::standard_unit;

    #[test]
    fn dyadics_round_trip_through_display() {
        for text in ["0", "1", "1/2", "3/2^2", "5/2^4"] {
            let d = parse_dyadic(text).unwrap();
            assert_eq!(d.to_string(), text);
        }
        // the explicit exponent-1 form normalizes to the short form
        assert_eq!(parse_dyadic("1/2^1").unwrap().to_string(), "1/2");
    }

    #[test]
    fn dyadic_rejections_carry_positions() {
        for text in ["2", "1/3", "3/2", "5/2^2", ""] {
            assert!(parse_dyadic(text).is_err(), "{text} should not parse");
        }
        // reducible input is normalized, not rejected
        assert_eq!(parse_dyadic("4/2^2").unwrap(), Dyadic::one());
        assert_eq!(parse_dyadic("2/2^2").unwrap(), Dyadic::half());
        match parse_dyadic("1/2 junk") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected trailing-input error, got {other:?}"),
        }
    }

    #[test]
    fn svectors_and_points_round_trip() {
        for text in ["0", "{1/2:1}", "{1/2:1,3/2^2:-2}"] {
            assert_eq!(parse_svector(text).unwrap().to_string(), text);
        }
        let p = "[{1/2:1}|0|0|{1/2^2:1}]";
        assert_eq!(parse_vpoint(p).unwrap().to_string(), p);
        assert!(parse_svector("{1/2:1,1/2:2}").is_err(), "duplicate key");
        assert!(parse_svector("{1:1}").is_err(), "endpoint is not in S");
        assert!(parse_vpoint("[0|0|0]").is_err(), "four components required");
    }

    #[test]
    fn finmats_round_trip() {
        for text in ["[]", "[(1/2,1/2)=1]", "[(1/2,3/2^2)=-4;(3/2^2,1/2)=2]"] {
            assert_eq!(parse_finmat(text).unwrap().to_string(), text);
        }
        assert!(parse_finmat("[(1/2,1/2)=1;(1/2,1/2)=2]").is_err());
    }

    #[test]
    fn group_elements_evaluate_words() {
        use crate::thompson::PLMap;
        let g = parse_group("2*x0^2*x1^-1+-1*1").unwrap();
        let x0 = PLMap::generator(0).unwrap();
        let x1 = PLMap::generator(1).unwrap();
        let expected_support = x0.pow(2).compose(&x1.invert());
        assert_eq!(g.coeff(&expected_support), BigInt::from(2));
        assert_eq!(g.coeff(&PLMap::identity()), BigInt::from(-1));
        // bare "1" is the identity with coefficient one
        let one = parse_group("1").unwrap();
        assert_eq!(one.coeff(&PLMap::identity()), BigInt::from(1));
        // a bare word gets coefficient one
        let bare = parse_group("x1").unwrap();
        assert_eq!(bare.coeff(&x1), BigInt::from(1));
        // cancelling terms vanish
        assert!(parse_group("1+-1*1").unwrap().is_zero());
    }

    #[test]
    fn ring_elements_take_all_three_shapes() {
        let paired = parse_ring("(1;[(1/2,1/2)=1])").unwrap();
        assert_eq!(paired, CrazyRingElt::one().add(&CrazyRingElt::embed_mat(standard_unit())));
        let mat_only = parse_ring("[(1/2,1/2)=1]").unwrap();
        assert_eq!(mat_only, CrazyRingElt::embed_mat(standard_unit()));
        let group_only = parse_ring("3").unwrap();
        assert_eq!(group_only, CrazyRingElt::from_int(3));
        assert!(parse_ring("(1;1)").is_err(), "matrix slot needs a matrix");
    }

    #[test]
    fn stwords_parse_letters_and_inverses() {
        assert!(parse_stword("1").unwrap().is_empty());
        let w = parse_stword("e(1,2;1)^-1*e(3,4;[(1/2,1/2)=1])").unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.letters()[0].is_inverted());
        assert_eq!(w.letters()[1].row(), 3);
        assert_eq!(*w.letters()[1].ring_elt(), CrazyRingElt::embed_mat(standard_unit()));
        assert!(parse_stword("e(1,1;1)").is_err(), "diagonal letter");
        assert!(parse_stword("e(1,5;1)").is_err(), "index out of range");
        assert!(parse_stword("e(1,2;1)^2").is_err(), "only ^-1 allowed");
    }

    #[test]
    fn gammawords_carry_copy_tags() {
        assert!(parse_gammaword("1").unwrap().is_empty());
        let w = parse_gammaword("1:e(1,2;1)*2:e(3,4;[(1/2,1/2)=1])^-1").unwrap();
        assert_eq!(w.letters().len(), 2);
        assert_eq!(w.letters()[0].copy(), 1);
        assert_eq!(w.letters()[1].copy(), 2);
        assert!(w.letters()[1].letter().is_inverted());
        assert!(parse_gammaword("3:e(1,2;1)").is_err());
        // display round trip
        assert_eq!(parse_gammaword(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn whitespace_is_insignificant_between_tokens() {
        let a = parse_vpoint("[ {1/2:1} | 0 | 0 | {1/2^2:-3} ]").unwrap();
        let b = parse_vpoint("[{1/2:1}|0|0|{1/2^2:-3}]").unwrap();
        assert_eq!(a, b);
        let w1 = parse_stword(" e(1,2; (2*x0 + 1; [(1/2,1/2)=1]) ) ").unwrap();
        let w2 = parse_stword("e(1,2;(2*x0+1;[(1/2,1/2)=1]))").unwrap();
        assert_eq!(w1, w2);
    }

    #[test]
    fn parse_errors_report_byte_positions() {
        match parse_vpoint("[0|0|0|{1/2:x}]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 12),
            other => panic!("expected position 12, got {other:?}"),
        }
        match parse_stword("e(1,2;1)*f(2,1;1)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("expected position 9, got {other:?}"),
        }
    }
}
