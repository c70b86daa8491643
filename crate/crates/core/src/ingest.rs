//! Readers for edge lists, FIMI transaction files and dense CSV vectors.
//!
//! All external ids are remapped to dense indices in order of first
//! appearance; the original ids are kept so results can be reported in the
//! input's own terms. Lines may end in `\n` or `\r\n`. Fields are separated
//! by spaces or tabs (commas for CSV).

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::{Graph, PointSet, SetFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Edges,
    Fimi,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(Format::Edges),
            "fimi" => Ok(Format::Fimi),
            "csv" => Ok(Format::Csv),
            other => Err(Error::config(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseStats {
    /// Physical lines read.
    pub lines: usize,
    /// Lines that produced a record.
    pub records: usize,
    /// Blank and comment lines.
    pub skipped: usize,
    /// Distinct external ids seen.
    pub remapped_ids: usize,
    /// Edge lists: self-loops dropped.
    pub self_loops: usize,
    /// CSV: rows that were constant and became zero vectors.
    pub degenerate_rows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetDescriptor {
    pub format: Format,
    pub path: PathBuf,
    pub stats: ParseStats,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FimiData {
    pub family: SetFamily,
    /// External id of each dense item index.
    pub item_labels: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Dataset {
    Graph(Graph),
    Family(FimiData),
    Points(PointSet),
}

/// Reads a dataset file. `preprocess` applies to CSV only.
pub fn load(path: &Path, format: Format, preprocess: bool) -> Result<(Dataset, DatasetDescriptor)> {
    let reader = BufReader::new(File::open(path)?);
    let (data, stats) = match format {
        Format::Edges => {
            let (g, s) = parse_edge_list(reader)?;
            (Dataset::Graph(g), s)
        }
        Format::Fimi => {
            let (f, s) = parse_fimi(reader)?;
            (Dataset::Family(f), s)
        }
        Format::Csv => {
            let (p, s) = parse_dense_csv(reader, preprocess)?;
            (Dataset::Points(p), s)
        }
    };
    Ok((
        data,
        DatasetDescriptor {
            format,
            path: path.to_path_buf(),
            stats,
        },
    ))
}

/// Dense remapping in first-appearance order.
#[derive(Default)]
struct Remap {
    index: HashMap<u64, usize>,
    labels: Vec<u64>,
}

impl Remap {
    fn get(&mut self, id: u64) -> usize {
        *self.index.entry(id).or_insert_with(|| {
            self.labels.push(id);
            self.labels.len() - 1
        })
    }
}

fn lines<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, Result<String>)> {
    reader.lines().enumerate().map(|(i, l)| {
        let l = l.map_err(Error::from).map(|mut s| {
            if s.ends_with('\r') {
                s.pop();
            }
            s
        });
        (i + 1, l)
    })
}

fn fields(line: &str) -> impl Iterator<Item = &str> {
    line.split([' ', '\t']).filter(|t| !t.is_empty())
}

fn parse_id(token: &str, line: usize) -> Result<u64> {
    token
        .parse::<u64>()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {token:?}")))
}

fn is_blank(line: &str) -> bool {
    fields(line).next().is_none()
}

/// Undirected edge list, one `u v` pair per line. Lines starting with `#`
/// or `%` are comments; columns after the second are ignored.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(Graph, ParseStats)> {
    let mut stats = ParseStats::default();
    let mut remap = Remap::default();
    let mut edges = Vec::new();
    for (no, line) in lines(reader) {
        let line = line?;
        stats.lines += 1;
        let trimmed = line.trim_start_matches([' ', '\t']);
        if trimmed.starts_with('#') || trimmed.starts_with('%') || is_blank(trimmed) {
            stats.skipped += 1;
            continue;
        }
        let mut tok = fields(trimmed);
        let (Some(a), Some(b)) = (tok.next(), tok.next()) else {
            return Err(Error::parse(no, "an edge needs two endpoints"));
        };
        let u = remap.get(parse_id(a, no)?);
        let v = remap.get(parse_id(b, no)?);
        if u == v {
            stats.self_loops += 1;
        }
        edges.push((u, v));
        stats.records += 1;
    }
    stats.remapped_ids = remap.labels.len();
    let graph = Graph::from_edges(remap.labels.len(), &edges)?.with_labels(remap.labels)?;
    Ok((graph, stats))
}

/// FIMI transactions: one line per transaction, items separated by
/// whitespace. Each transaction becomes one ground-set element.
pub fn parse_fimi<R: BufRead>(reader: R) -> Result<(FimiData, ParseStats)> {
    let mut stats = ParseStats::default();
    let mut remap = Remap::default();
    let mut subsets = Vec::new();
    for (no, line) in lines(reader) {
        let line = line?;
        stats.lines += 1;
        if is_blank(&line) {
            stats.skipped += 1;
            continue;
        }
        let items = fields(&line)
            .map(|t| parse_id(t, no).map(|id| remap.get(id)))
            .collect::<Result<Vec<_>>>()?;
        subsets.push(items);
        stats.records += 1;
    }
    stats.remapped_ids = remap.labels.len();
    let family = SetFamily::new(remap.labels.len(), subsets)?;
    Ok((
        FimiData {
            family,
            item_labels: remap.labels,
        },
        stats,
    ))
}

/// Comma-separated real vectors, one per line, all of the same length.
/// With `preprocess`, rows are mean-centred and scaled to unit norm.
pub fn parse_dense_csv<R: BufRead>(reader: R, preprocess: bool) -> Result<(PointSet, ParseStats)> {
    let mut stats = ParseStats::default();
    let mut dim = None;
    let mut data = Vec::new();
    for (no, line) in lines(reader) {
        let line = line?;
        stats.lines += 1;
        if line.trim().is_empty() {
            stats.skipped += 1;
            continue;
        }
        let mut width = 0;
        for field in line.split(',') {
            let field = field.trim_matches([' ', '\t']);
            let x: f64 = field
                .parse()
                .map_err(|_| Error::parse(no, format!("expected a number, found {field:?}")))?;
            if !x.is_finite() {
                return Err(Error::parse(no, format!("non-finite value {field:?}")));
            }
            data.push(x);
            width += 1;
        }
        match dim {
            None => dim = Some(width),
            Some(d) if d != width => {
                return Err(Error::parse(no, format!("row has {width} fields, expected {d}")));
            }
            Some(_) => {}
        }
        stats.records += 1;
    }
    let Some(dim) = dim else {
        return Err(Error::parse(stats.lines.max(1), "no data rows"));
    };
    let mut points = PointSet::new(dim, data)?;
    if preprocess {
        stats.degenerate_rows = points.preprocess();
    }
    Ok((points, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph() {
        let (g, s) = parse_edge_list("0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.neighbors(2), &[1]);
        assert_eq!(s.records, 2);
    }

    #[test]
    fn comment_and_self_loop() {
        let (g, s) = parse_edge_list("# c\n5 5\n".as_bytes()).unwrap();
        assert_eq!(g.n_vertices(), 1);
        assert_eq!(g.n_edges(), 0);
        assert_eq!(g.labels(), Some(&[5u64][..]));
        assert_eq!((s.skipped, s.self_loops), (1, 1));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let (g, _) = parse_edge_list("0 1\n1 0\n".as_bytes()).unwrap();
        assert_eq!(g.n_edges(), 1);
    }

    #[test]
    fn first_appearance_remap_and_crlf() {
        let (g, _) = parse_edge_list("% mm\r\n10\t7\r\n7 3 0.5\r\n".as_bytes()).unwrap();
        assert_eq!(g.labels(), Some(&[10u64, 7, 3][..]));
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn bad_edge_tokens() {
        let err = parse_edge_list("0 1\n1 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("0 1\n-1 2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(
            parse_edge_list("3\n".as_bytes()).unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn fimi_records() {
        let (d, s) = parse_fimi("1 2\n2 3\n".as_bytes()).unwrap();
        assert_eq!(d.family.len(), 2);
        assert_eq!(d.family.universe(), 3);
        assert_eq!(s.remapped_ids, 3);
        let (d, s) = parse_fimi("1 2\n\n2 3\n".as_bytes()).unwrap();
        assert_eq!(d.family.len(), 2);
        assert_eq!(s.skipped, 1);
        let (d, _) = parse_fimi("7 7 7\n".as_bytes()).unwrap();
        assert_eq!(d.family.subset(0).len(), 1);
        assert!(matches!(
            parse_fimi("1 2\n3 z\n".as_bytes()).unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn csv_rows() {
        let (p, _) = parse_dense_csv("1,0\n0,1\n".as_bytes(), false).unwrap();
        assert_eq!((p.len(), p.dim()), (2, 2));
        assert_eq!(p.row(1), &[0.0, 1.0]);
        let (p, s) = parse_dense_csv("2,2\n".as_bytes(), true).unwrap();
        assert_eq!(p.row(0), &[0.0, 0.0]);
        assert_eq!(s.degenerate_rows, vec![0]);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(
            parse_dense_csv("1,2\n1,2,3\n".as_bytes(), false).unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_dense_csv("1,a\n".as_bytes(), false).unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(parse_dense_csv("".as_bytes(), false).is_err());
    }

    #[test]
    fn csv_preprocessing_bounds() {
        let input = "3,1,4,1,5\n9,2,6,5,3\n-1,-1,-1,-1,-1\n0.5,0,0,0,0\n";
        let (p, s) = parse_dense_csv(input.as_bytes(), true).unwrap();
        assert_eq!(s.degenerate_rows, vec![2]);
        for i in 0..p.len() {
            let r = p.row(i);
            let mean = r.iter().sum::<f64>() / r.len() as f64;
            let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(mean.abs() <= 1e-12);
            assert!(norm == 0.0 || (norm - 1.0).abs() <= 1e-12);
        }
    }
}
