//! FCIDUMP reader and writer.
//!
//! Header: `&FCI NORB=<n>,NELEC=<n>,MS2=<n>,` with optional `ORBSYM=...` and
//! `ISYM=<n>`, possibly over several lines, closed by `&END` or `/`. Body
//! lines are `<value> <i> <j> <k> <l>` with 1-based indices: all four
//! nonzero is (ij|kl), `i j 0 0` is h_ij and `0 0 0 0` the constant energy.

use std::path::Path;

use super::mo::MolecularIntegrals;
use crate::error::{Error, Result};

struct Header {
    norb: usize,
    nelec: usize,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::FcidumpParse {
        line,
        message: message.into(),
    }
}

fn parse_header(text: &str, line: usize) -> Result<Header> {
    let mut norb = None;
    let mut nelec = None;
    let mut key: Option<String> = None;
    // namelist: KEY=v[,v...], values may run across commas until the next KEY=
    for raw in text.split([',', ' ', '\t', '\n', '\r']) {
        let tok = raw.trim();
        if tok.is_empty() {
            continue;
        }
        let (k, v) = match tok.split_once('=') {
            Some((k, v)) => (Some(k.trim().to_ascii_uppercase()), v.trim()),
            None => (None, tok),
        };
        if let Some(k) = k {
            key = Some(k);
        }
        let Some(current) = key.as_deref() else {
            return Err(parse_error(line, format!("unexpected token '{tok}' in header")));
        };
        if v.is_empty() {
            continue;
        }
        let as_int = || {
            v.parse::<i64>()
                .map_err(|_| parse_error(line, format!("{current} expects an integer, got '{v}'")))
        };
        match current {
            "NORB" => {
                let n = as_int()?;
                if n < 0 {
                    return Err(parse_error(line, "NORB must be nonnegative"));
                }
                norb = Some(n as usize);
            }
            "NELEC" => {
                let n = as_int()?;
                if n < 0 {
                    return Err(parse_error(line, "NELEC must be nonnegative"));
                }
                nelec = Some(n as usize);
            }
            "MS2" | "ISYM" | "ORBSYM" | "UHF" | "IUHF" | "ST" | "TREL" => {
                as_int()?;
            }
            _ => {}
        }
    }
    Ok(Header {
        norb: norb.ok_or_else(|| parse_error(line, "header is missing NORB"))?,
        nelec: nelec.ok_or_else(|| parse_error(line, "header is missing NELEC"))?,
    })
}

fn parse_value(tok: &str, line: usize) -> Result<f64> {
    let normalized = tok.replace(['D', 'd'], "E");
    match normalized.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::FcidumpFormat {
            line,
            message: format!("expected a real value, got '{tok}'"),
        }),
    }
}

pub fn parse_fcidump(text: &str) -> Result<MolecularIntegrals> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    // locate and collect the namelist
    let (first_line, first) = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((n, l)) => break (n, l),
            None => return Err(parse_error(1, "empty input")),
        }
    };
    let trimmed = first.trim_start();
    if trimmed.len() < 4 || !trimmed[..4].eq_ignore_ascii_case("&FCI") {
        return Err(parse_error(first_line, "header must start with &FCI"));
    }
    let mut header_text = String::new();
    let mut pending = Some(trimmed[4..].to_string());
    let mut closed = false;
    let mut last_header_line = first_line;
    loop {
        let Some(chunk) = pending.take() else { break };
        let upper = chunk.to_ascii_uppercase();
        if let Some(pos) = upper.find("&END") {
            header_text.push_str(&chunk[..pos]);
            closed = true;
            break;
        }
        if let Some(pos) = chunk.find('/') {
            header_text.push_str(&chunk[..pos]);
            closed = true;
            break;
        }
        header_text.push_str(&chunk);
        header_text.push('\n');
        if let Some((n, l)) = lines.next() {
            last_header_line = n;
            pending = Some(l.to_string());
        }
    }
    if !closed {
        return Err(parse_error(last_header_line, "header is not terminated by &END or /"));
    }
    let header = parse_header(&header_text, first_line)?;
    let n = header.norb;

    let mut out = MolecularIntegrals::zeros(n, header.nelec);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 5 {
            return Err(Error::FcidumpFormat {
                line,
                message: format!("expected '<value> i j k l', got {} fields", toks.len()),
            });
        }
        let value = parse_value(toks[0], line)?;
        let mut idx = [0usize; 4];
        for (slot, tok) in idx.iter_mut().zip(&toks[1..]) {
            let v: i64 = tok.parse().map_err(|_| Error::FcidumpFormat {
                line,
                message: format!("index '{tok}' is not an integer"),
            })?;
            if v < 0 || v as usize > n {
                return Err(Error::FcidumpIndex {
                    line,
                    message: format!("index {v} outside 0..={n}"),
                });
            }
            *slot = v as usize;
        }
        match idx {
            [0, 0, 0, 0] => out.constant_energy = value,
            [i, j, 0, 0] if i > 0 && j > 0 => {
                out.h[(i - 1, j - 1)] = value;
                out.h[(j - 1, i - 1)] = value;
            }
            // orbital energies; not needed
            [i, 0, 0, 0] if i > 0 => {}
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                out.set_g_symmetric(i - 1, j - 1, k - 1, l - 1, value);
            }
            _ => {
                return Err(Error::FcidumpIndex {
                    line,
                    message: format!("unsupported index pattern {idx:?}"),
                })
            }
        }
    }
    Ok(out)
}

pub fn read_fcidump(path: impl AsRef<Path>) -> Result<MolecularIntegrals> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::FcidumpParse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_fcidump(&text)
}

/// Writes symmetry-unique nonzero entries.
pub fn write_fcidump(ints: &MolecularIntegrals) -> String {
    use std::fmt::Write;
    let n = ints.n_spatial;
    let mut out = String::new();
    let orbsym = vec!["1"; n].join(",");
    writeln!(
        out,
        "&FCI NORB={n},NELEC={},MS2={},\n  ORBSYM={orbsym},\n  ISYM=1,\n&END",
        ints.n_electrons,
        ints.n_electrons % 2
    )
    .unwrap();
    for p in 0..n {
        for q in 0..=p {
            for r in 0..=p {
                let s_max = if r == p { q } else { r };
                for s in 0..=s_max {
                    let v = ints.g(p, q, r, s);
                    if v != 0.0 {
                        writeln!(out, "{v:.16e} {} {} {} {}", p + 1, q + 1, r + 1, s + 1).unwrap();
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..=p {
            let v = ints.h[(p, q)];
            if v != 0.0 {
                writeln!(out, "{v:.16e} {} {} 0 0", p + 1, q + 1).unwrap();
            }
        }
    }
    writeln!(out, "{:.16e} 0 0 0 0", ints.constant_energy).unwrap();
    out
}
