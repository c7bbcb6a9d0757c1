//! `key=value` config files spliced into the command line.
//!
//! Each `key=value` line becomes `--key value` (`--key` alone for
//! `key=true`), inserted right after the subcommand so that flags given on
//! the command line win.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

pub fn parse_config(text: &str) -> Result<Vec<OsString>, String> {
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(format!("config line {}: empty key", i + 1));
        }
        args.push(OsString::from(format!("--{key}")));
        match v.trim() {
            "true" => {}
            v => args.push(OsString::from(v)),
        }
    }
    Ok(args)
}

/// Removes `--config PATH` / `--config=PATH` from `argv` and splices the
/// file's flags in after the subcommand name.
pub fn expand_config(argv: Vec<OsString>, subcommands: &[&str]) -> Result<Vec<OsString>, String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        match a.to_str() {
            Some("--config") => path = Some(it.next().ok_or("--config needs a path")?),
            Some(s) if s.starts_with("--config=") => {
                path = Some(OsString::from(&s["--config=".len()..]))
            }
            _ => rest.push(a),
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| format!("{}: {e}", Path::new(&path).display()))?;
    let extra = parse_config(&text)?;
    let sub = rest
        .iter()
        .position(|a| a.to_str().is_some_and(|s| subcommands.contains(&s)))
        .map_or(rest.len(), |p| p + 1);
    let tail = rest.split_off(sub);
    rest.extend(extra);
    rest.extend(tail);
    Ok(rest)
}
