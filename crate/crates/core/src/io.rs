//! On-disk coloring format.
//!
//! JSON layout: `{"n": <int>, "colors": [<int>, ...]}` with the color array in
//! lexicographic edge order. A plain-text alternative holds `n` on the first
//! line and the space-separated color array on the second. Writers always emit
//! the normalized (restricted-growth) vector; readers accept arbitrary labels
//! and normalize, so a normalized file round-trips byte-exactly.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::EdgeColoring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColoringFormat {
    Json,
    Text,
}

#[derive(Serialize, Deserialize)]
struct ColoringFile {
    n: usize,
    colors: Vec<usize>,
}

pub fn to_json(coloring: &EdgeColoring) -> String {
    serde_json::to_string(&ColoringFile {
        n: coloring.n(),
        colors: coloring.colors().to_vec(),
    })
    .expect("coloring serialization cannot fail")
}

pub fn to_text(coloring: &EdgeColoring) -> String {
    let body = coloring
        .colors()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    format!("{}\n{}\n", coloring.n(), body)
}

/// Parses either format, deciding by the first non-whitespace byte.
pub fn parse(input: &str) -> Result<EdgeColoring> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let file: ColoringFile = serde_json::from_str(trimmed)?;
        EdgeColoring::from_colors(file.n, file.colors)
    } else {
        parse_text(input)
    }
}

fn parse_text(input: &str) -> Result<EdgeColoring> {
    let mut tokens = input.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("empty coloring file".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
    let colors = tokens
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad color entry `{t}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    EdgeColoring::from_colors(n, colors)
}

pub fn read(path: &Path) -> Result<EdgeColoring> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write(path: &Path, coloring: &EdgeColoring, format: ColoringFormat) -> Result<()> {
    let payload = match format {
        ColoringFormat::Json => to_json(coloring),
        ColoringFormat::Text => to_text(coloring),
    };
    std::fs::write(path, payload)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn json_round_trip_is_byte_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = crate::model::random_surjective(7, 9, &mut rng).unwrap();
        let text = to_json(&c);
        let back = parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn text_round_trip_is_byte_exact() {
        let c = crate::model::EdgeColoring::rainbow(5).unwrap();
        let text = to_text(&c);
        assert_eq!(text, "5\n0 1 2 3 4 5 6 7 8 9\n");
        let back = parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn readers_normalize_denormalized_input() {
        let denormal = r#"{"n": 4, "colors": [9, 9, 2, 5, 2, 9]}"#;
        let c = parse(denormal).unwrap();
        assert_eq!(c.colors(), &[0, 0, 1, 2, 1, 0]);
        let text_denormal = "4\n9 9 2 5 2 9\n";
        assert_eq!(parse(text_denormal).unwrap(), c);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let c = crate::model::EdgeColoring::rainbow(6).unwrap();
        write(&path, &c, ColoringFormat::Json).unwrap();
        assert_eq!(read(&path).unwrap(), c);
        let tpath = dir.path().join("c.txt");
        write(&tpath, &c, ColoringFormat::Text).unwrap();
        assert_eq!(read(&tpath).unwrap(), c);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!(parse(""), Err(Error::Parse(_))));
        assert!(matches!(parse("5\n0 1 x\n"), Err(Error::Parse(_))));
        assert!(parse(r#"{"n": 5, "colors": [0]}"#).is_err());
    }
}
