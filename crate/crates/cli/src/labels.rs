//! Simple-root labels on the command line: `a4`, `α_4`, `4`, lists of those,
//! or the complement form `Delta-{a3,a4}`.

use crate::CliError;

fn one(token: &str, rank: usize) -> Result<usize, CliError> {
    let t = token.trim();
    let digits = t
        .strip_prefix("α_")
        .or_else(|| t.strip_prefix("α"))
        .or_else(|| t.strip_prefix("a_"))
        .or_else(|| t.strip_prefix('a'))
        .unwrap_or(t);
    let k: usize = digits
        .parse()
        .map_err(|_| CliError::Usage(format!("bad simple root label {t:?}; expected e.g. a4")))?;
    if k == 0 || k > rank {
        return Err(CliError::Domain(format!("simple root {t} out of range 1..={rank}")));
    }
    Ok(k - 1)
}

/// 0-based indices from a comma-separated list of 1-based labels.
pub fn parse_list(text: &str, rank: usize) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for t in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let k = one(t, rank)?;
        if !out.contains(&k) {
            out.push(k);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Removed roots, accepting `Delta-{...}` / `Δ-{...}` / `Δ − {...}` around the list.
pub fn parse_removed(text: &str, rank: usize) -> Result<Vec<usize>, CliError> {
    let t = text.trim();
    let body = ["Δ", "Delta", "D"]
        .iter()
        .find_map(|p| t.strip_prefix(p))
        .map(|rest| {
            let rest = rest.trim_start();
            let rest = rest
                .strip_prefix('-')
                .or_else(|| rest.strip_prefix('−'))
                .ok_or_else(|| CliError::Usage(format!("expected '-' after Delta in {t:?}")))?
                .trim();
            rest.strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| CliError::Usage(format!("expected braces in {t:?}")))
        })
        .transpose()?
        .unwrap_or(t);
    let v = parse_list(body, rank)?;
    if v.is_empty() {
        return Err(CliError::Usage("no simple roots given".into()));
    }
    Ok(v)
}

pub fn show(indices: &[usize]) -> String {
    if indices.is_empty() {
        return "-".into();
    }
    indices.iter().map(|i| format!("a{}", i + 1)).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_removed("a4", 7).unwrap(), vec![3]);
        assert_eq!(parse_removed("α_2,α_4", 6).unwrap(), vec![1, 3]);
        assert_eq!(parse_removed("Δ − {α_3}", 6).unwrap(), vec![2]);
        assert_eq!(parse_removed("Delta-{a1,a2}", 6).unwrap(), vec![0, 1]);
        assert_eq!(parse_removed("3,1", 4).unwrap(), vec![0, 2]);
        assert!(matches!(parse_removed("a9", 4), Err(CliError::Domain(_))));
        assert!(matches!(parse_removed("b2", 4), Err(CliError::Usage(_))));
        assert!(matches!(parse_removed("", 4), Err(CliError::Usage(_))));
        assert_eq!(show(&[0, 3]), "a1, a4");
    }
}
