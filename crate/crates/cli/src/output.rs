//! Record model shared by the three output formats. A command produces one
//! or more sections of rows; CSV and JSONL carry exactly the same fields,
//! while the human format adds aligned columns and free-form notes.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Jsonl,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Human => "human",
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "human" => Some(Format::Human),
            "csv" => Some(Format::Csv),
            "jsonl" => Some(Format::Jsonl),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(i64),
    Str(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Str(s) => serde_json::to_string(s).expect("string serializes"),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => "null".into(),
        }
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

#[derive(Debug, Clone)]
pub struct Section {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Section {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Section {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width for {}", self.name);
        self.rows.push(row);
    }
}

/// Everything a command emits, plus whether it counts as a failure.
#[derive(Debug, Clone)]
pub struct Output {
    pub sections: Vec<Section>,
    /// Human format only; always derivable from the rows.
    pub notes: Vec<String>,
    pub failed: bool,
}

impl Output {
    pub fn new(sections: Vec<Section>) -> Self {
        Output {
            sections,
            notes: Vec::new(),
            failed: false,
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Csv => self.csv(),
            Format::Jsonl => self.jsonl(),
        }
    }

    /// With several sections every record is tagged by a leading `record`
    /// field, in both CSV and JSONL.
    fn tagged(&self) -> bool {
        self.sections.len() > 1
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let mut header: Vec<&str> = s.columns.clone();
            if self.tagged() {
                header.insert(0, "record");
            }
            writeln!(out, "{}", header.join(",")).unwrap();
            for row in &s.rows {
                let mut cells: Vec<String> = row.iter().map(|c| csv_field(&c.text())).collect();
                if self.tagged() {
                    cells.insert(0, s.name.to_string());
                }
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        out
    }

    fn jsonl(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            for row in &s.rows {
                let mut fields = Vec::with_capacity(row.len() + 1);
                if self.tagged() {
                    fields.push(format!("\"record\":{}", Cell::from(s.name).json()));
                }
                for (c, v) in s.columns.iter().zip(row) {
                    fields.push(format!("{}:{}", Cell::from(*c).json(), v.json()));
                }
                writeln!(out, "{{{}}}", fields.join(",")).unwrap();
            }
        }
        out
    }

    fn human(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if self.tagged() {
                writeln!(out, "[{}]", s.name).unwrap();
            }
            let text: Vec<Vec<String>> = s
                .rows
                .iter()
                .map(|r| r.iter().map(|c| if *c == Cell::Null { "-".into() } else { c.text() }).collect())
                .collect();
            let widths: Vec<usize> = (0..s.columns.len())
                .map(|j| text.iter().map(|r| r[j].len()).chain([s.columns[j].len()]).max().unwrap())
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let header: Vec<String> = s.columns.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", line(&header)).unwrap();
            for r in &text {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                writeln!(out, "{n}").unwrap();
            }
        }
        writeln!(out, "result: {}", if self.failed { "FAIL" } else { "ok" }).unwrap();
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Output {
        let mut s = Section::new("check", &["name", "n", "ok", "detail"]);
        s.push(vec!["a,b".into(), 3u32.into(), true.into(), Cell::Null]);
        s.push(vec!["say \"hi\"".into(), 4u32.into(), false.into(), "x".into()]);
        Output::new(vec![s])
    }

    #[test]
    fn csv_quotes() {
        assert_eq!(
            sample().render(Format::Csv),
            "name,n,ok,detail\n\"a,b\",3,true,\n\"say \"\"hi\"\"\",4,false,x\n"
        );
    }

    #[test]
    fn jsonl_keeps_field_order() {
        let j = sample().render(Format::Jsonl);
        let first = j.lines().next().unwrap();
        assert_eq!(first, r#"{"name":"a,b","n":3,"ok":true,"detail":null}"#);
    }

    #[test]
    fn multi_section_records_are_tagged() {
        let mut a = Section::new("one", &["x"]);
        a.push(vec![1u32.into()]);
        let mut b = Section::new("two", &["y"]);
        b.push(vec![2u32.into()]);
        let o = Output::new(vec![a, b]);
        assert_eq!(o.render(Format::Csv), "record,x\none,1\n\nrecord,y\ntwo,2\n");
        assert_eq!(o.render(Format::Jsonl), "{\"record\":\"one\",\"x\":1}\n{\"record\":\"two\",\"y\":2}\n");
    }

    #[test]
    fn human_aligns() {
        let h = sample().render(Format::Human);
        let lines: Vec<&str> = h.lines().collect();
        assert_eq!(lines[0], "name      n  ok     detail");
        assert_eq!(lines[1], "a,b       3  true   -");
        assert_eq!(lines.last().unwrap(), &"result: ok");
    }
}
