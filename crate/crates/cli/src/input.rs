use std::fs;
use std::io::{self, Read};

use anyhow::{bail, Context, Result};
use listsym::{Builtin, Elem, ListFunction, Scope};

/// Reads a path, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// Parses `A,L`.
pub fn parse_scope(s: &str) -> Result<Scope> {
    let (a, l) = s
        .split_once(',')
        .with_context(|| format!("scope must look like A,L, got {s:?}"))?;
    let alphabet: usize = a.trim().parse().context("alphabet size")?;
    let max_len: usize = l.trim().parse().context("maximum length")?;
    Ok(Scope::new(alphabet, max_len)?)
}

/// A JSON array `[3,2,1]`, a comma list `3,2,1`, or empty for `[]`.
pub fn parse_list(s: &str) -> Result<Vec<Elem>> {
    let s = s.trim();
    if s.starts_with('[') {
        return serde_json::from_str(s).with_context(|| format!("not a list: {s:?}"));
    }
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map(Elem)
                .with_context(|| format!("not a non-negative integer: {x:?}"))
        })
        .collect()
}

/// A function in its JSON form, or the bare name of a builtin.
pub fn parse_function(s: &str) -> Result<ListFunction> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).context("parsing function JSON");
    }
    match Builtin::ALL.iter().find(|b| b.name() == s) {
        Some(b) => Ok(ListFunction::builtin(*b)),
        None => bail!("unknown function {s:?}; pass JSON or one of the builtin names"),
    }
}

pub fn show(xs: &[Elem]) -> String {
    serde_json::to_string(xs).expect("lists serialise")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("[3, 2,1]").unwrap(), listsym::list(&[3, 2, 1]));
        assert_eq!(parse_list("3,2, 1").unwrap(), listsym::list(&[3, 2, 1]));
        assert!(parse_list("").unwrap().is_empty());
        assert!(parse_list("1,-2").is_err());
        assert!(parse_list("[1,").is_err());
    }

    #[test]
    fn scopes() {
        let s = parse_scope("4,6").unwrap();
        assert_eq!((s.alphabet, s.max_len), (4, 6));
        assert!(parse_scope("4").is_err());
        assert!(parse_scope("0,3").is_err());
    }

    #[test]
    fn functions() {
        assert_eq!(parse_function("reverse").unwrap(), ListFunction::reverse());
        assert_eq!(
            parse_function(r#"{"kind":"builtin","name":"sort"}"#).unwrap(),
            ListFunction::sort()
        );
        assert!(parse_function("nope").is_err());
        assert!(parse_function("{").is_err());
    }
}
