use std::collections::BTreeSet;

use super::FormatError;
use crate::fca::FormalContext;

/// One transaction per line, items separated by whitespace. Objects are
/// named by 1-based line number; attributes are the distinct items in
/// sorted order.
pub fn parse_transactions(text: &str) -> Result<FormalContext, FormatError> {
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect()).collect();
    let attributes: Vec<String> = rows
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<&str>>()
        .into_iter()
        .map(String::from)
        .collect();
    let incidence = rows
        .iter()
        .map(|r| attributes.iter().map(|a| r.contains(&a.as_str())).collect())
        .collect();
    let objects = (1..=rows.len()).map(|i| i.to_string()).collect();
    Ok(FormalContext::new(objects, attributes, incidence)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fca::{ConceptLattice, FcaError};

    #[test]
    fn small_example() {
        let ctx = parse_transactions("a b\nb c\nb\n").unwrap();
        assert_eq!(ctx.attributes(), ["a", "b", "c"]);
        assert_eq!(ctx.objects(), ["1", "2", "3"]);
        assert_eq!(
            ctx.closure_of_names(&["a"]).unwrap(),
            ctx.closure_of_names(&["a", "b"]).unwrap()
        );
        assert_eq!(ctx.intent_name(ctx.closure_of_names(&["a"]).unwrap()), "{a,b}");
    }

    #[test]
    fn empty_file() {
        let ctx = parse_transactions("").unwrap();
        assert!(ctx.objects().is_empty());
        assert_eq!(ConceptLattice::new(ctx).unwrap().intents().len(), 1);
    }

    #[test]
    fn repeated_items_and_blank_lines() {
        let ctx = parse_transactions("x  x\t y\n\ny\n").unwrap();
        assert_eq!(ctx.objects().len(), 3);
        assert_eq!(ctx.row(0), 0b11);
        assert_eq!(ctx.row(1), 0);
    }

    #[test]
    fn too_many_items() {
        let line: Vec<String> = (0..65).map(|i| format!("i{i}")).collect();
        let err = parse_transactions(&line.join(" ")).unwrap_err();
        assert!(matches!(err, FormatError::Context(FcaError::ParameterTooLarge { .. })));
    }
}
