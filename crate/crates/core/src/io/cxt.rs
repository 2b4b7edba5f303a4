use std::collections::HashSet;

use super::FormatError;
use crate::fca::FormalContext;

struct Lines<'a> {
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
        while lines.last().is_some_and(|l| l.trim().is_empty()) {
            lines.pop();
        }
        Lines { lines, next: 0 }
    }

    /// 1-based number of the line `take` would return.
    fn number(&self) -> usize {
        self.next + 1
    }

    fn take(&mut self, what: &str) -> Result<&'a str, FormatError> {
        let line = self.lines.get(self.next).copied().ok_or_else(|| {
            FormatError::syntax(self.number(), 1, format!("unexpected end of input, expected {what}"))
        })?;
        self.next += 1;
        Ok(line)
    }

    fn expect(&mut self, literal: &str, what: &str) -> Result<(), FormatError> {
        if literal.is_empty() && self.next == self.lines.len() {
            // trimmed trailing blank line
            return Ok(());
        }
        let n = self.number();
        let line = self.take(what)?;
        if line.trim() != literal {
            return Err(FormatError::syntax(n, 1, format!("expected {what}, found `{line}`")));
        }
        Ok(())
    }

    fn count(&mut self, what: &str) -> Result<usize, FormatError> {
        let n = self.number();
        let line = self.take(what)?;
        line.trim()
            .parse()
            .map_err(|_| FormatError::syntax(n, 1, format!("expected {what}, found `{line}`")))
    }

    fn names(&mut self, k: usize, axis: &str) -> Result<Vec<String>, FormatError> {
        let mut seen = HashSet::with_capacity(k);
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let n = self.number();
            let name = self.take(&format!("{axis} name"))?;
            if !seen.insert(name) {
                return Err(FormatError::syntax(n, 1, format!("duplicate {axis} name `{name}`")));
            }
            out.push(name.to_string());
        }
        Ok(out)
    }
}

/// Burmeister format: `B`, blank line, object count, attribute count, blank
/// line, object names, attribute names, then one row of `.`/`X` per object.
/// Carriage returns and trailing blank lines are tolerated.
pub fn parse_cxt(text: &str) -> Result<FormalContext, FormatError> {
    let mut lines = Lines::new(text);
    lines.expect("B", "header `B`")?;
    lines.expect("", "blank line")?;
    let objects = lines.count("object count")?;
    let attributes = lines.count("attribute count")?;
    lines.expect("", "blank line")?;
    let object_names = lines.names(objects, "object")?;
    let attribute_names = lines.names(attributes, "attribute")?;
    let mut incidence = Vec::with_capacity(objects);
    for _ in 0..objects {
        if attributes == 0 && lines.next == lines.lines.len() {
            incidence.push(Vec::new());
            continue;
        }
        let n = lines.number();
        let row = lines.take("incidence row")?;
        let cells = row
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'X' => Ok(true),
                '.' => Ok(false),
                other => Err(FormatError::syntax(n, i + 1, format!("illegal character `{other}`"))),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        if cells.len() != attributes {
            return Err(FormatError::syntax(
                n,
                1,
                format!("row has {} cell(s), expected {attributes}", cells.len()),
            ));
        }
        incidence.push(cells);
    }
    if lines.next < lines.lines.len() {
        return Err(FormatError::syntax(
            lines.number(),
            1,
            "unexpected content after the last row",
        ));
    }
    Ok(FormalContext::new(object_names, attribute_names, incidence)?)
}

pub fn emit_cxt(ctx: &FormalContext) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", ctx.objects().len(), ctx.attributes().len());
    for name in ctx.objects().iter().chain(ctx.attributes()) {
        out.push_str(name);
        out.push('\n');
    }
    for g in 0..ctx.objects().len() {
        for m in 0..ctx.attributes().len() {
            out.push(if ctx.has(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}
