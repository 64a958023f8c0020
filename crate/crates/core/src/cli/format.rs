//! Plain-text file format for marked posets.
//!
//! Line-oriented: `elem` declares one or more elements (order of first
//! declaration fixes coordinate order), `mark NAME VALUE` assigns a
//! rational marking, `cover LOWER UPPER` adds a relation. `#` starts a
//! comment, blank lines are skipped. Values are integers or fractions in
//! lowest terms (`5/2`, `-1/3`). Any acyclic relation is accepted; it is
//! reduced to covers on construction.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::marked::MarkedPoset;
use crate::poset::Poset;
use crate::{Error, Rat, Result};

pub fn parse_marked_poset(text: &str) -> Result<MarkedPoset> {
    let mut elems: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut marks: Vec<(String, Rat)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let directive = words.next().expect("nonempty line");
        let args: Vec<&str> = words.collect();
        match directive {
            "elem" => {
                if args.is_empty() {
                    return Err(Error::Parse {
                        line,
                        msg: "elem needs at least one name".into(),
                    });
                }
                elems.extend(args.iter().map(|s| s.to_string()));
            }
            "mark" => {
                if args.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        msg: "mark needs a name and a value".into(),
                    });
                }
                let value = Rat::from_str(args[1]).map_err(|e| Error::Parse {
                    line,
                    msg: format!("bad rational '{}': {e}", args[1]),
                })?;
                marks.push((args[0].to_string(), value));
            }
            "cover" => {
                if args.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        msg: "cover needs a lower and an upper name".into(),
                    });
                }
                covers.push((args[0].to_string(), args[1].to_string()));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown directive '{other}'"),
                });
            }
        }
    }
    let poset = Poset::new(&elems, &covers)?;
    MarkedPoset::new(poset, &marks)
}

/// Inverse of [`parse_marked_poset`]: parsing the output reproduces the
/// input exactly (element order, covers, and marks).
pub fn serialize_marked_poset(m: &MarkedPoset) -> String {
    let p = m.poset();
    let mut out = String::new();
    for name in p.elements() {
        debug_assert!(
            !name.chars().any(char::is_whitespace) && !name.contains('#'),
            "name {name:?} would not survive a round trip"
        );
        writeln!(out, "elem {name}").expect("string write");
    }
    for id in m.marked_elements() {
        writeln!(out, "mark {} {}", p.element(id), m.mark(id).expect("marked")).expect("write");
    }
    for &(lo, hi) in p.covers() {
        writeln!(out, "cover {} {}", p.element(lo), p.element(hi)).expect("write");
    }
    out
}
