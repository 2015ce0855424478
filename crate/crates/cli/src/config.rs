//! Flat `key = value` config files merged into the argument list.
//!
//! Keys are the long flag names without dashes (`Z`, `n-sum-max`, ...).
//! Blank lines, `#`/`;` comments and `[section]` headers are ignored. A key
//! is only injected when the command line does not already carry it, and
//! keys belonging to another subcommand are skipped so one file can serve
//! several runs.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use clap::CommandFactory;

use crate::args::Cli;

#[derive(Debug)]
pub struct ConfigError(pub String);

pub fn parse(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') || line.starts_with('[') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError(format!(
                "line {}: expected `key = value`, got {raw:?}",
                i + 1
            )));
        };
        let key = key.trim().trim_start_matches("--").to_string();
        let value = value.trim().trim_matches('"').to_string();
        if key.is_empty() {
            return Err(ConfigError(format!("line {}: empty key", i + 1)));
        }
        if out.iter().any(|(k, _)| *k == key) {
            return Err(ConfigError(format!("line {}: duplicate key {key:?}", i + 1)));
        }
        out.push((key, value));
    }
    Ok(out)
}

fn long_names(cmd: &clap::Command) -> BTreeSet<String> {
    cmd.get_arguments()
        .filter_map(|a| a.get_long())
        .map(str::to_string)
        .collect()
}

/// Value of `--config` in `args`, if any.
fn config_path(args: &[String]) -> Option<&str> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().map(String::as_str);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p);
        }
    }
    None
}

fn has_flag(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
}

/// Append the config-file entries that are missing from `args`.
pub fn merge(mut args: Vec<String>) -> Result<Vec<String>, ConfigError> {
    let Some(path) = config_path(&args).map(str::to_string) else {
        return Ok(args);
    };
    let text = fs::read_to_string(Path::new(&path)).map_err(|e| ConfigError(format!("cannot read {path}: {e}")))?;
    let entries = parse(&text)?;

    let root = Cli::command();
    let Some(sub) = args.get(1).and_then(|name| root.find_subcommand(name)) else {
        // let clap report the missing or unknown subcommand
        return Ok(args);
    };
    let own = long_names(sub);
    let any: BTreeSet<String> = root.get_subcommands().flat_map(long_names).collect();

    for (key, value) in entries {
        if key == "config" || !any.contains(&key) {
            return Err(ConfigError(format!("{path}: unknown key {key:?}")));
        }
        if own.contains(&key) && !has_flag(&args, &key) {
            args.push(format!("--{key}"));
            args.push(value);
        }
    }
    Ok(args)
}
