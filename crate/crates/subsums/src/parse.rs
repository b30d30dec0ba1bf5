//! Text format for series: `sine k=8,7,6,5,4 x=1/15`, `mgs k=3,2 q=1/4`,
//! `prefix terms=1/2,1/3,1/7 ratio=1/3`, `ferdinands a=9 d=1 n=4 q=1/10`.
//!
//! Numbers are read exactly, as `p/q`, integers or plain decimals.

use std::collections::BTreeMap;
use std::fmt;

use subsums_core::classify::ferdinands_weights;
use subsums_core::{Param, Rational, SeriesSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

/// Exact rational from `p/q`, an integer or a decimal like `0.125`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_decimal(p)?;
        let q = parse_decimal(q)?;
        if q == Rational::from_integer(0) {
            return err(format!("zero denominator in `{s}`"));
        }
        return Ok(p / q);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits_ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    if int.is_empty() && frac.is_empty() || !digits_ok(int) || !digits_ok(frac) {
        return err(format!("not a number: `{s}`"));
    }
    if int.len() + frac.len() > 30 {
        return err(format!("too many digits: `{s}`"));
    }
    let num: i128 = format!("{int}{frac}").parse().unwrap_or(0);
    let den = 10i128.pow(frac.len() as u32);
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

pub fn parse_weights(s: &str) -> Result<Vec<u32>, ParseError> {
    s.split(',')
        .map(|w| {
            w.trim()
                .parse::<u32>()
                .map_err(|_| ParseError(format!("bad weight `{}`", w.trim())))
        })
        .collect()
}

pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, ParseError> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<T>()
                .map_err(|_| ParseError(format!("bad {what} `{}`", v.trim())))
        })
        .collect()
}

/// Parameters of the two-parameter Cantorval family.
#[derive(Clone, Debug, PartialEq)]
pub struct Ferdinands {
    pub a: u64,
    pub d: u64,
    pub n: u64,
    pub q: Param,
}

/// A parsed series. The Ferdinands form also carries its own parameters,
/// since its classification uses them directly.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub spec: SeriesSpec,
    pub ferdinands: Option<Ferdinands>,
}

fn fields(rest: &[&str]) -> Result<BTreeMap<String, String>, ParseError> {
    let mut out = BTreeMap::new();
    for tok in rest {
        let Some((k, v)) = tok.split_once('=') else {
            return err(format!("expected key=value, found `{tok}`"));
        };
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return err(format!("duplicate key `{k}`"));
        }
    }
    Ok(out)
}

fn take(f: &mut BTreeMap<String, String>, key: &str) -> Result<String, ParseError> {
    f.remove(key)
        .ok_or_else(|| ParseError(format!("missing `{key}=`")))
}

fn int(f: &mut BTreeMap<String, String>, key: &str) -> Result<u64, ParseError> {
    let v = take(f, key)?;
    v.parse()
        .map_err(|_| ParseError(format!("`{key}` must be a nonnegative integer, found `{v}`")))
}

fn core(e: subsums_core::Error) -> ParseError {
    ParseError(e.to_string())
}

pub fn parse_series(text: &str) -> Result<Series, ParseError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let Some((&family, rest)) = toks.split_first() else {
        return err("empty series description");
    };
    let mut f = fields(rest)?;
    let mut ferdinands = None;
    let spec = match family {
        "sine" => {
            let k = parse_weights(&take(&mut f, "k")?)?;
            let x = parse_rational(&take(&mut f, "x")?)?;
            SeriesSpec::sine(k, Param::exact(x)).map_err(core)?
        }
        "mgs" | "multigeometric" => {
            let k = parse_weights(&take(&mut f, "k")?)?;
            let q = parse_rational(&take(&mut f, "q")?)?;
            SeriesSpec::multigeometric(k, Param::exact(q)).map_err(core)?
        }
        "prefix" => {
            let terms = take(&mut f, "terms")?
                .split(',')
                .map(|t| parse_rational(t).map(Param::exact))
                .collect::<Result<Vec<_>, _>>()?;
            let ratio = parse_rational(&take(&mut f, "ratio")?)?;
            SeriesSpec::explicit_prefix(terms, Param::exact(ratio)).map_err(core)?
        }
        "ferdinands" => {
            let (a, d, n) = (int(&mut f, "a")?, int(&mut f, "d")?, int(&mut f, "n")?);
            let q = Param::exact(parse_rational(&take(&mut f, "q")?)?);
            let w = ferdinands_weights(a, d, n).map_err(core)?;
            let k = w
                .iter()
                .map(|&v| u32::try_from(v).map_err(|_| ParseError(format!("weight {v} too large"))))
                .collect::<Result<Vec<_>, _>>()?;
            let spec = SeriesSpec::multigeometric(k, q.clone()).map_err(core)?;
            ferdinands = Some(Ferdinands { a, d, n, q });
            spec
        }
        other => return err(format!("unknown series family `{other}`")),
    };
    if let Some(k) = f.keys().next() {
        return err(format!("unexpected key `{k}` for `{family}`"));
    }
    Ok(Series { spec, ferdinands })
}

/// `lo:hi:step`, all exact; includes `hi` when it lies on the grid.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>, ParseError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        return err(format!("grid must be lo:hi:step, found `{s}`"));
    };
    let (lo, hi, step) = (parse_rational(lo)?, parse_rational(hi)?, parse_rational(step)?);
    if step <= Rational::from_integer(0) {
        return err("grid step must be positive");
    }
    if hi < lo {
        return err("grid end lies below its start");
    }
    let count = ((hi - lo) / step).floor().to_integer() + 1;
    if count > 1_000_000 {
        return err("grid has more than 10^6 points");
    }
    Ok((0..count).map(|i| lo + step * Rational::from_integer(i)).collect())
}
