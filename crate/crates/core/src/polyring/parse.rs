use super::{Acc, Monomial, PolyError, Polynomial, Result, Ring, Table};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(PolyError::SyntaxError { position: self.pos, message: message.into() })
    }

    fn uint(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(PolyError::SyntaxError { position: start, message: "integer too large".into() })?;
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected an integer");
        }
        Ok((start, v))
    }

    fn name(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_alphabetic() => {}
            _ => return self.error("expected a variable name"),
        }
        while matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        Ok((start, std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii")))
    }
}

pub(super) fn parse(text: &str, table: &Table, ring: Ring) -> Result<Polynomial> {
    let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
    let mut acc = Acc::new(ring);
    loop {
        let (mono, coeff) = term(&mut cur, table, ring)?;
        if coeff != 0 {
            acc.add(mono, coeff);
        }
        match cur.peek() {
            None => break,
            Some(b'+') => cur.pos += 1,
            Some(_) => return cur.error("expected `+` or end of input"),
        }
    }
    Ok(acc.finish(table))
}

fn term(cur: &mut Cursor, table: &Table, ring: Ring) -> Result<(Monomial, u8)> {
    let mut exps = vec![0u16; table.len()];
    let mut coeff = 1u8;
    let mut need_factor = true;
    if matches!(cur.peek(), Some(b) if b.is_ascii_digit()) {
        let (pos, v) = cur.uint()?;
        if v >= ring.modulus() as u64 {
            return Err(PolyError::CoefficientOutOfRange { position: pos, value: v });
        }
        coeff = v as u8;
        need_factor = false;
        match cur.peek() {
            Some(b'*') => {
                cur.pos += 1;
                need_factor = true;
            }
            Some(b) if b.is_ascii_alphabetic() => need_factor = true,
            _ => {}
        }
    }
    if need_factor {
        loop {
            let (pos, name) = cur.name()?;
            let i = table.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            let mut e = 1u64;
            if cur.peek() == Some(b'^') {
                cur.pos += 1;
                e = cur.uint()?.1;
            }
            let total = exps[i] as u64 + e;
            if total > u16::MAX as u64 {
                return Err(PolyError::SyntaxError { position: pos, message: "exponent too large".into() });
            }
            exps[i] = total as u16;
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
            } else {
                break;
            }
        }
    }
    Ok((Monomial::from_exponents(table, &exps), coeff))
}
