//! Declarative lattice families and the corpus manifest.
//!
//! Two textual forms parse to the same [`FamilySpec`]:
//!
//! * the label form, which is also what `Display` prints and what generated
//!   lattices are named: `quotient(base=zmod(m=12),elem=4Z)`;
//! * the manifest form, `kind key=value …`, where nested specs use the label
//!   form and product factors are positional: `product zmod(m=2) b4`.
//!
//! Element lists for localizations are separated by `;`.

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::constructions::{localize, localize_at_prime, product, quotient, ConstructionError};
use crate::format::{load, FormatError};
use crate::lattice::{ElementId, LatticeError, MultLattice};
use crate::search::enumerate::{mult_lattices, SearchError};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("cannot parse family spec `{spec}`: {msg}")]
    Parse { spec: String, msg: String },
    #[error("invalid parameters for {kind}: {msg}")]
    Invalid { kind: &'static str, msg: String },
    #[error("manifest line {line}: {source}")]
    Manifest {
        line: usize,
        #[source]
        source: Box<FamilyError>,
    },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Localizer {
    /// Complement of a prime element.
    Prime(String),
    /// An explicit multiplicatively closed set.
    Set(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilySpec {
    /// Ideals of `Z/mZ`.
    Zmod { m: u64 },
    /// Ideals of `Z/p^kZ`: a `k+1` chain with truncated exponents.
    ChainPower { k: usize },
    /// Subsets of a `k`-set with multiplication equal to meet.
    Boolean { k: usize },
    /// The divisor order of `Z/mZ` with multiplication equal to meet.
    Frame { m: u64 },
    B4,
    Product(Vec<FamilySpec>),
    Quotient { base: Box<FamilySpec>, elem: String },
    Localization { base: Box<FamilySpec>, at: Localizer },
    File { path: PathBuf },
    /// Entry `index` of the canonical enumeration of size `n`.
    Enumerated { n: usize, index: usize },
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn has_top_level_space(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c.is_whitespace() && depth == 0 => return true,
            _ => {}
        }
    }
    false
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<FamilySpec, FamilyError> {
        let text = text.trim();
        let err = |msg: &str| FamilyError::Parse {
            spec: text.to_string(),
            msg: msg.to_string(),
        };
        if text.is_empty() {
            return Err(err("empty spec"));
        }
        let (kind, args): (&str, Vec<&str>) = if has_top_level_space(text) {
            let mut toks = Vec::new();
            let mut depth = 0i32;
            let mut start = None;
            for (i, c) in text.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                if c.is_whitespace() && depth == 0 {
                    if let Some(s) = start.take() {
                        toks.push(&text[s..i]);
                    }
                } else if start.is_none() {
                    start = Some(i);
                }
            }
            if let Some(s) = start {
                toks.push(&text[s..]);
            }
            (toks[0], toks[1..].to_vec())
        } else if let Some(open) = text.find('(') {
            if !text.ends_with(')') {
                return Err(err("unbalanced parentheses"));
            }
            let inner = &text[open + 1..text.len() - 1];
            let args = if inner.is_empty() {
                Vec::new()
            } else {
                split_top(inner, ',')
            };
            (&text[..open], args)
        } else {
            (text, Vec::new())
        };

        let mut named: Vec<(&str, &str)> = Vec::new();
        let mut positional: Vec<&str> = Vec::new();
        for a in args {
            let a = a.trim();
            // `key=value` only when the key is a plain identifier.
            match a.split_once('=') {
                Some((k, v)) if !k.contains('(') && !k.is_empty() => named.push((k, v)),
                _ => positional.push(a),
            }
        }
        let get = |key: &str| named.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let need = |key: &str| get(key).ok_or_else(|| err(&format!("missing `{key}`")));
        let num = |key: &str| -> Result<u64, FamilyError> {
            need(key)?
                .parse::<u64>()
                .map_err(|_| err(&format!("`{key}` must be a non-negative integer")))
        };
        let known = |keys: &[&str]| -> Result<(), FamilyError> {
            for (k, _) in &named {
                if !keys.contains(k) {
                    return Err(err(&format!("unknown key `{k}`")));
                }
            }
            if kind != "product" && !positional.is_empty() {
                return Err(err("unexpected positional argument"));
            }
            Ok(())
        };

        let spec = match kind {
            "zmod" => {
                known(&["m"])?;
                FamilySpec::Zmod { m: num("m")? }
            }
            "chain_power" => {
                known(&["k"])?;
                FamilySpec::ChainPower {
                    k: num("k")? as usize,
                }
            }
            "boolean" => {
                known(&["k"])?;
                FamilySpec::Boolean {
                    k: num("k")? as usize,
                }
            }
            "frame" => {
                known(&["m"])?;
                FamilySpec::Frame { m: num("m")? }
            }
            "b4" => {
                known(&[])?;
                FamilySpec::B4
            }
            "product" => {
                known(&[])?;
                if positional.is_empty() {
                    return Err(err("product needs at least one factor"));
                }
                FamilySpec::Product(
                    positional
                        .into_iter()
                        .map(FamilySpec::parse)
                        .collect::<Result<_, _>>()?,
                )
            }
            "quotient" => {
                known(&["base", "elem"])?;
                FamilySpec::Quotient {
                    base: Box::new(FamilySpec::parse(need("base")?)?),
                    elem: need("elem")?.to_string(),
                }
            }
            "localization" => {
                known(&["base", "prime", "set"])?;
                let at = match (get("prime"), get("set")) {
                    (Some(p), None) => Localizer::Prime(p.to_string()),
                    (None, Some(s)) => Localizer::Set(
                        s.split(';').filter(|x| !x.is_empty()).map(String::from).collect(),
                    ),
                    _ => return Err(err("exactly one of `prime` or `set` is required")),
                };
                FamilySpec::Localization {
                    base: Box::new(FamilySpec::parse(need("base")?)?),
                    at,
                }
            }
            "file" => {
                known(&["path"])?;
                FamilySpec::File {
                    path: PathBuf::from(need("path")?),
                }
            }
            "enumerated" => {
                known(&["n", "index"])?;
                FamilySpec::Enumerated {
                    n: num("n")? as usize,
                    index: num("index")? as usize,
                }
            }
            other => return Err(err(&format!("unknown kind `{other}`"))),
        };
        spec.check_params()?;
        Ok(spec)
    }

    fn check_params(&self) -> Result<(), FamilyError> {
        let bad = |kind, msg: &str| {
            Err(FamilyError::Invalid {
                kind,
                msg: msg.to_string(),
            })
        };
        match self {
            FamilySpec::Zmod { m } if *m < 2 => bad("zmod", "m must be at least 2"),
            FamilySpec::Frame { m } if *m < 2 => bad("frame", "m must be at least 2"),
            FamilySpec::Zmod { m } | FamilySpec::Frame { m } if *m > 1_000_000_000 => {
                bad("zmod", "m must be at most 10^9")
            }
            FamilySpec::ChainPower { k } if *k > 254 => bad("chain_power", "k must be at most 254"),
            FamilySpec::Boolean { k } if *k > 7 => bad("boolean", "k must be at most 7"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Zmod { m } => write!(f, "zmod(m={m})"),
            FamilySpec::ChainPower { k } => write!(f, "chain_power(k={k})"),
            FamilySpec::Boolean { k } => write!(f, "boolean(k={k})"),
            FamilySpec::Frame { m } => write!(f, "frame(m={m})"),
            FamilySpec::B4 => write!(f, "b4"),
            FamilySpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "product({})", parts.join(","))
            }
            FamilySpec::Quotient { base, elem } => write!(f, "quotient(base={base},elem={elem})"),
            FamilySpec::Localization { base, at } => match at {
                Localizer::Prime(p) => write!(f, "localization(base={base},prime={p})"),
                Localizer::Set(s) => write!(f, "localization(base={base},set={})", s.join(";")),
            },
            FamilySpec::File { path } => write!(f, "file(path={})", path.display()),
            FamilySpec::Enumerated { n, index } => write!(f, "enumerated(n={n},index={index})"),
        }
    }
}

fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Divisors of `m` listed from `m` (the zero ideal) down to 1, with ideal
/// names.
fn zmod_carrier(m: u64) -> Result<(Vec<u64>, Vec<String>), FamilyError> {
    let mut ds = divisors(m);
    ds.reverse();
    if ds.len() > crate::lattice::MAX_ELEMENTS {
        return Err(FamilyError::Invalid {
            kind: "zmod",
            msg: format!("{m} has {} divisors", ds.len()),
        });
    }
    let names = ds
        .iter()
        .map(|&d| match d {
            1 => "1".to_string(),
            d if d == m => "0".to_string(),
            d => format!("{d}Z"),
        })
        .collect();
    Ok((ds, names))
}

fn divisor_order(ds: &[u64]) -> Vec<Vec<bool>> {
    // dZ ≤ eZ iff e | d
    ds.iter()
        .map(|&d| ds.iter().map(|&e| d % e == 0).collect())
        .collect()
}

fn resolve_all(l: &MultLattice, names: &[String]) -> Result<Vec<ElementId>, FamilyError> {
    names
        .iter()
        .map(|s| l.resolve(s).map_err(FamilyError::from))
        .collect()
}

/// Builds the lattice described by `spec`, named by its label.
pub fn generate(spec: &FamilySpec) -> Result<MultLattice, FamilyError> {
    spec.check_params()?;
    let label = spec.to_string();
    let l = match spec {
        FamilySpec::Zmod { m } => {
            let (ds, names) = zmod_carrier(*m)?;
            let pos = |v: u64| ds.iter().position(|&d| d == v).expect("divisor");
            MultLattice::from_order_fn(&label, names, divisor_order(&ds), |a, b| {
                let prod = (ds[a] as u128 * ds[b] as u128 % *m as u128) as u64;
                pos(gcd(prod, *m))
            })?
        }
        FamilySpec::Frame { m } => {
            let (ds, names) = zmod_carrier(*m)?;
            MultLattice::frame_from_order(&label, names, divisor_order(&ds))?
        }
        FamilySpec::ChainPower { k } => {
            // id i is p^(k-i): id 0 is the zero ideal, id k is top
            let k = *k;
            let n = k + 1;
            let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
            let names = (0..n)
                .map(|i| match k - i {
                    0 => "1".to_string(),
                    e if e == k => "0".to_string(),
                    1 => "p".to_string(),
                    e => format!("p{e}"),
                })
                .collect();
            MultLattice::from_order_fn(&label, names, leq, |a, b| {
                let e = ((k - a) + (k - b)).min(k);
                k - e
            })?
        }
        FamilySpec::Boolean { k } => {
            let n = 1usize << k;
            let leq = (0..n)
                .map(|a| (0..n).map(|b| a & !b == 0).collect())
                .collect();
            let names = (0..n)
                .map(|s| {
                    if s == 0 {
                        "0".to_string()
                    } else if s == n - 1 {
                        "1".to_string()
                    } else {
                        (0..*k)
                            .filter(|i| s & (1 << i) != 0)
                            .map(|i| (b'a' + i as u8) as char)
                            .collect()
                    }
                })
                .collect();
            MultLattice::frame_from_order(&label, names, leq)?
        }
        FamilySpec::B4 => {
            let leq = crate::lattice::order_from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
            let names = ["0", "m", "n", "1"].map(String::from).to_vec();
            MultLattice::frame_from_order(&label, names, leq)?
        }
        FamilySpec::Product(fs) => {
            let factors = fs.iter().map(generate).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&MultLattice> = factors.iter().collect();
            product(&refs)?
        }
        FamilySpec::Quotient { base, elem } => {
            let b = generate(base)?;
            let i = b.resolve(elem)?;
            quotient(&b, i)?.lattice
        }
        FamilySpec::Localization { base, at } => {
            let b = generate(base)?;
            match at {
                Localizer::Prime(p) => localize_at_prime(&b, b.resolve(p)?)?.lattice,
                Localizer::Set(s) => localize(&b, &resolve_all(&b, s)?)?.lattice,
            }
        }
        FamilySpec::File { path } => return Ok(load(path)?),
        FamilySpec::Enumerated { n, index } => {
            let all = mult_lattices(*n)?;
            let count = all.len();
            all.into_iter()
                .nth(*index)
                .ok_or(SearchError::IndexOutOfRange {
                    n: *n,
                    index: *index,
                    count,
                })?
        }
    };
    Ok(l.with_name(label))
}

/// One spec per non-blank line; `#` starts a comment. Order is preserved.
pub fn parse_manifest(text: &str) -> Result<Vec<FamilySpec>, FamilyError> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| {
                FamilySpec::parse(line).map_err(|e| FamilyError::Manifest {
                    line: i + 1,
                    source: Box::new(e),
                })
            })
        })
        .collect()
}

/// The shipped default corpus.
pub const DEFAULT_MANIFEST: &str = include_str!("../../../corpus/default.manifest");

pub fn default_corpus() -> Vec<FamilySpec> {
    parse_manifest(DEFAULT_MANIFEST).expect("shipped manifest parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::prime_elements;

    #[test]
    fn label_and_manifest_forms_agree() {
        let a = FamilySpec::parse("quotient(base=zmod(m=12),elem=4Z)").unwrap();
        let b = FamilySpec::parse("quotient base=zmod(m=12) elem=4Z").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "quotient(base=zmod(m=12),elem=4Z)");
        let p = FamilySpec::parse("product zmod(m=2) b4").unwrap();
        assert_eq!(p.to_string(), "product(zmod(m=2),b4)");
        assert_eq!(FamilySpec::parse(&p.to_string()).unwrap(), p);
        let s = FamilySpec::parse("localization base=zmod(m=12) set=1;3Z").unwrap();
        assert_eq!(FamilySpec::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(
            FamilySpec::parse("zmod m=1"),
            Err(FamilyError::Invalid { .. })
        ));
        assert!(FamilySpec::parse("zmod").is_err());
        assert!(FamilySpec::parse("zmod m=-3").is_err());
        assert!(FamilySpec::parse("zmod m=4 k=2").is_err());
        assert!(FamilySpec::parse("nope").is_err());
    }

    #[test]
    fn zmod12() {
        let l = generate(&FamilySpec::Zmod { m: 12 }).unwrap();
        assert_eq!(l.len(), 6);
        let primes: Vec<&str> = prime_elements(&l).iter().map(|&p| l.element_name(p)).collect();
        assert_eq!(primes, ["3Z", "2Z"]);
        let two = l.resolve("2Z").unwrap();
        let six = l.resolve("6Z").unwrap();
        assert!(l.is_bottom(l.mul(two, six)));
    }

    #[test]
    fn chain_power_names() {
        let l = generate(&FamilySpec::ChainPower { k: 3 }).unwrap();
        assert_eq!(l.names(), ["0", "p2", "p", "1"]);
        let p = l.resolve("p").unwrap();
        assert_eq!(l.element_name(l.mul(p, p)), "p2");
        assert_eq!(generate(&FamilySpec::ChainPower { k: 0 }).unwrap().len(), 1);
    }

    #[test]
    fn boolean_names() {
        let l = generate(&FamilySpec::Boolean { k: 2 }).unwrap();
        assert_eq!(l.names(), ["0", "a", "b", "1"]);
    }
}
