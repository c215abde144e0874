use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::SpaceSpec;
use crate::error::{Error, Result};
use crate::seqcore::{read_weight_file, Exponent, Weight};

/// Information the text syntax cannot carry by itself.
#[derive(Debug, Clone, Default)]
pub struct ParseContext {
    /// Length of generated weights (`w=ones`, `w=lpq(p,q)`, `w=pow(a)`).
    pub default_len: Option<usize>,
    /// Directory that relative `w@file` paths are resolved against.
    pub base_dir: Option<PathBuf>,
}

/// Parses the compact space syntax:
///
/// ```text
/// lp(4)   lp(inf)
/// lorentz(W,p=2)      dual(lorentz(W,p=2))     predual(W)
/// marc(W,n=2,p=1)     kdual(SPEC)              concav(SPEC,n=2)
/// W := w@path | w=[1,0.5,...] | w=ones | w=lpq(p,q) | w=pow(a)
/// ```
///
/// `dual(lorentz(..))` is the dual Lorentz space; `dual` of anything else
/// is the Köthe dual. Paths may not contain `,` or `)`.
pub fn parse_space(text: &str, ctx: &ParseContext) -> Result<SpaceSpec> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, ctx };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    spec.validate()?;
    Ok(spec)
}

/// Parses a standalone weight in the `W` forms accepted by [`parse_space`].
pub fn parse_weight(text: &str, ctx: &ParseContext) -> Result<Weight> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, ctx };
    let w = p.weight()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_space(s, &ParseContext::default())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ctx: &'a ParseContext,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphabetic() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn keyword(&mut self, name: &str) -> Result<()> {
        let at = self.pos;
        let got = self.ident()?;
        if got != name {
            self.pos = at;
            return Err(self.err(format!("expected `{name}`, found `{got}`")));
        }
        Ok(())
    }

    /// `name=value`
    fn named(&mut self, name: &str) -> Result<f64> {
        self.keyword(name)?;
        self.expect(b'=')?;
        self.number()
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && matches!(self.s[self.pos], b'0'..=b'9' | b'.' | b'e' | b'E' | b'+' | b'-' | b'i' | b'n' | b'f') {
            self.pos += 1;
        }
        let tok = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        let parse = |t: &str| -> Option<f64> {
            match t {
                "inf" => Some(f64::INFINITY),
                _ => t.parse::<f64>().ok().filter(|v| v.is_finite()),
            }
        };
        let Some(mut v) = parse(tok) else {
            self.pos = start;
            return Err(self.err(format!("expected a number, found `{tok}`")));
        };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.number()?;
            if d == 0.0 {
                return Err(self.err("division by zero"));
            }
            v /= d;
        }
        Ok(v)
    }

    fn spec(&mut self) -> Result<SpaceSpec> {
        let at = self.pos;
        let name = self.ident()?;
        self.expect(b'(')?;
        let spec = match name.as_str() {
            "lp" => {
                let p = self.number()?;
                SpaceSpec::Lp(Exponent::new(p)?)
            }
            "lorentz" => {
                let w = self.weight()?;
                self.expect(b',')?;
                let p = self.named("p")?;
                SpaceSpec::lorentz(w, p)?
            }
            "dual" | "kdual" => {
                let inner = self.spec()?;
                match inner {
                    SpaceSpec::Lorentz { w, p } if name == "dual" => SpaceSpec::LorentzDual { w, p },
                    other => SpaceSpec::KotheDualOf(Box::new(other)),
                }
            }
            "predual" => SpaceSpec::lorentz_predual(self.weight()?),
            "marc" => {
                let w = self.weight()?;
                self.expect(b',')?;
                let n = self.named("n")?;
                self.expect(b',')?;
                let p = self.named("p")?;
                SpaceSpec::marcinkiewicz(w, n, p)?
            }
            "concav" => {
                let inner = self.spec()?;
                self.expect(b',')?;
                let n = self.named("n")?;
                if n < 1.0 || n.fract() != 0.0 || n > f64::from(u32::MAX) {
                    return Err(self.err(format!("concavification order must be a positive integer, got {n}")));
                }
                SpaceSpec::Concavification(Box::new(inner), n as u32)
            }
            other => {
                self.pos = at;
                return Err(self.err(format!("unknown space `{other}`")));
            }
        };
        self.expect(b')')?;
        Ok(spec)
    }

    fn weight(&mut self) -> Result<Weight> {
        self.keyword("w")?;
        match self.peek() {
            Some(b'@') => {
                self.pos += 1;
                self.skip_ws();
                let start = self.pos;
                while self.pos < self.s.len() && !matches!(self.s[self.pos], b',' | b')') {
                    self.pos += 1;
                }
                let raw = String::from_utf8_lossy(&self.s[start..self.pos]).trim().to_string();
                if raw.is_empty() {
                    return Err(self.err("empty weight path"));
                }
                let path = match &self.ctx.base_dir {
                    Some(dir) if Path::new(&raw).is_relative() => dir.join(&raw),
                    _ => PathBuf::from(&raw),
                };
                read_weight_file(path)
            }
            Some(b'=') => {
                self.pos += 1;
                if self.peek() == Some(b'[') {
                    self.pos += 1;
                    let mut vals = vec![self.number()?];
                    while self.peek() == Some(b',') {
                        self.pos += 1;
                        vals.push(self.number()?);
                    }
                    self.expect(b']')?;
                    return Weight::new(vals);
                }
                let at = self.pos;
                let kind = self.ident()?;
                let len = || {
                    self.ctx.default_len.ok_or_else(|| Error::Parse {
                        offset: at,
                        message: format!("`w={kind}` needs a dimension (N) from the caller"),
                    })
                };
                match kind.as_str() {
                    "ones" => Ok(Weight::constant(len()?)),
                    "lpq" => {
                        let n = len()?;
                        self.expect(b'(')?;
                        let p = self.number()?;
                        self.expect(b',')?;
                        let q = self.number()?;
                        self.expect(b')')?;
                        Weight::lpq(p, q, n)
                    }
                    "pow" => {
                        let n = len()?;
                        self.expect(b'(')?;
                        let a = self.number()?;
                        self.expect(b')')?;
                        Weight::power_law(a, n)
                    }
                    _ => {
                        self.pos = at;
                        Err(self.err(format!("unknown weight generator `{kind}`")))
                    }
                }
            }
            _ => Err(self.err("expected `w@path` or `w=...`")),
        }
    }
}
