use std::path::Path;

use crate::CliError;

/// Parse a flat `key = value` file. Blank lines and lines starting with `#`
/// are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Config(format!("line {}: expected key = value, got {line:?}", i + 1)));
        };
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() {
            return Err(CliError::Config(format!("line {}: empty key", i + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn given(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
}

/// Append the entries of the `--config` file as flags, skipping every key
/// already present on the command line.
pub fn merge_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Config(format!("cannot read config file {path}: {e}")))?;
    let mut merged = args.clone();
    for (k, v) in parse_config(&text)? {
        if k == "config" || given(&args, &k) {
            continue;
        }
        match v.as_str() {
            "true" => merged.push(format!("--{k}")),
            "false" => {}
            _ => merged.push(format!("--{k}={v}")),
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_pairs_and_comments() {
        let c = parse_config("# run\nseed = 7\n\n--N=40\n").unwrap();
        assert_eq!(c, vec![("seed".into(), "7".into()), ("N".into(), "40".into())]);
        assert!(parse_config("seed 7").is_err());
        assert!(parse_config("= 7").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.cfg");
        std::fs::write(&p, "seed = 7\nsamples = 10\n").unwrap();
        let args = argv(&format!("landscape count sphere --config {} --seed 3", p.display()));
        let m = merge_config(args).unwrap();
        assert!(m.contains(&"--samples=10".to_string()));
        assert!(!m.iter().any(|a| a == "--seed=7"));
    }
}
