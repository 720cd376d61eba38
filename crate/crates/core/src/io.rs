//! JSON and text formats for ideals, complexes, deletion records, Betti
//! tables and bound tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::ideal::MonomialIdeal;
use crate::labeled::{BettiTable, LabeledComplex};
use crate::lsquared::{BoundTable, DeletionRecord, PairVertex};
use crate::monomial::{Monomial, VariableTable};
use crate::parse::parse_monomial;
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<u32>,
    pub facets: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<u32, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deletion: Option<DeletionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionJson {
    pub deleted: Vec<[usize; 2]>,
    pub s: usize,
    pub t: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BettiJson {
    pub total: BTreeMap<usize, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graded: Option<Vec<GradedEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedEntry {
    pub d: usize,
    pub m: String,
    pub rank: u64,
}

fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> IdealJson {
    IdealJson {
        vars: ideal.vars().names().to_vec(),
        generators: ideal.generator_strings(),
    }
}

pub fn ideal_from_json(json: &IdealJson) -> Result<MonomialIdeal> {
    let vars = VariableTable::new(json.vars.iter().cloned())?;
    let gens = json
        .generators
        .iter()
        .map(|g| parse_monomial(g, &vars))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(vars, gens)
}

pub fn write_ideal(ideal: &MonomialIdeal) -> Result<String> {
    to_pretty(&ideal_to_json(ideal))
}

pub fn read_ideal(text: &str) -> Result<MonomialIdeal> {
    ideal_from_json(&serde_json::from_str(text)?)
}

pub fn deletion_to_json(record: &DeletionRecord) -> DeletionJson {
    DeletionJson {
        deleted: record.deleted.iter().map(|p| [p.i(), p.j()]).collect(),
        s: record.s,
        t: record.t.clone(),
    }
}

pub fn deletion_from_json(json: &DeletionJson) -> Result<DeletionRecord> {
    let q = json.t.len();
    let mut deleted = std::collections::BTreeSet::new();
    for &[i, j] in &json.deleted {
        if i == 0 || j == 0 || i > q || j > q {
            return Err(Error::Invalid(format!(
                "pair ({i},{j}) out of range for q = {q}"
            )));
        }
        deleted.insert(PairVertex::new(i, j));
    }
    let record = DeletionRecord::new(q, deleted);
    if record.s != json.s || record.t != json.t || !record.is_consistent() {
        return Err(Error::Invalid("inconsistent deletion record".into()));
    }
    Ok(record)
}

fn complex_json(complex: &SimplicialComplex) -> ComplexJson {
    ComplexJson {
        vertices: complex.vertices().to_vec(),
        facets: complex.facets().iter().map(|f| f.to_vec()).collect(),
        labels: None,
        deletion: None,
    }
}

pub fn labeled_to_json(complex: &LabeledComplex, record: Option<&DeletionRecord>) -> ComplexJson {
    ComplexJson {
        labels: Some(
            complex
                .labels()
                .iter()
                .map(|(&v, m)| (v, complex.vars().format(m)))
                .collect(),
        ),
        deletion: record.map(deletion_to_json),
        ..complex_json(complex.complex())
    }
}

pub fn write_complex(complex: &SimplicialComplex) -> Result<String> {
    to_pretty(&complex_json(complex))
}

pub fn write_labeled(complex: &LabeledComplex, record: Option<&DeletionRecord>) -> Result<String> {
    to_pretty(&labeled_to_json(complex, record))
}

/// The complex described by `json`; listed vertices that lie in no facet
/// become isolated points.
pub fn complex_from_json(json: &ComplexJson) -> Result<SimplicialComplex> {
    let mut faces = json
        .facets
        .iter()
        .map(|f| Face::try_from_vertices(f.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    for &v in &json.vertices {
        faces.push(Face::try_from_vertices([v])?);
    }
    Ok(SimplicialComplex::from_facets(faces))
}

pub fn labeled_from_json(json: &ComplexJson, vars: &VariableTable) -> Result<LabeledComplex> {
    let complex = complex_from_json(json)?;
    let labels = json
        .labels
        .as_ref()
        .ok_or_else(|| Error::Invalid("complex has no \"labels\" entry".into()))?
        .iter()
        .map(|(&v, s)| Ok((v, parse_monomial(s, vars)?)))
        .collect::<Result<BTreeMap<u32, Monomial>>>()?;
    LabeledComplex::new(complex, labels, vars.clone())
}

pub fn read_complex(text: &str) -> Result<ComplexJson> {
    Ok(serde_json::from_str(text)?)
}

pub fn betti_to_json(table: &BettiTable, vars: &VariableTable) -> BettiJson {
    BettiJson {
        total: table.total.clone(),
        graded: table.graded.as_ref().map(|g| {
            g.iter()
                .map(|((d, m), &rank)| GradedEntry {
                    d: *d,
                    m: vars.format(m),
                    rank,
                })
                .collect()
        }),
    }
}

pub fn betti_from_json(json: &BettiJson, vars: &VariableTable) -> Result<BettiTable> {
    let graded = match &json.graded {
        None => None,
        Some(entries) => Some(
            entries
                .iter()
                .map(|e| Ok(((e.d, parse_monomial(&e.m, vars)?), e.rank)))
                .collect::<Result<BTreeMap<_, _>>>()?,
        ),
    };
    let mut total = json.total.clone();
    total.retain(|_, r| *r > 0);
    let table = BettiTable { total, graded };
    if !table.is_consistent() {
        return Err(Error::Invalid(
            "graded entries do not sum to the totals".into(),
        ));
    }
    Ok(table)
}

pub fn write_betti(table: &BettiTable, vars: &VariableTable) -> Result<String> {
    to_pretty(&betti_to_json(table, vars))
}

pub fn read_betti(text: &str, vars: &VariableTable) -> Result<BettiTable> {
    betti_from_json(&serde_json::from_str(text)?, vars)
}

/// Rows of cells, each column left-justified to its widest cell, trailing
/// blanks trimmed.
fn aligned(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push(' ');
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// `d | 0 1 2 ...` header over a `β_d | ...` row; `len` pads the row with zeros.
pub fn betti_text(table: &BettiTable, len: Option<usize>) -> String {
    let values = match len {
        Some(n) => table.totals_padded(n),
        None => table.totals(),
    };
    let mut header = vec!["d".to_string(), "|".to_string()];
    let mut row = vec!["β_d".to_string(), "|".to_string()];
    for (d, v) in values.iter().enumerate() {
        header.push(d.to_string());
        row.push(v.to_string());
    }
    aligned(&[header, row])
}

/// One `d  multidegree  rank` line per nonzero graded entry.
pub fn graded_text(table: &BettiTable, vars: &VariableTable) -> String {
    let mut rows = vec![vec!["d".to_string(), "m".to_string(), "rank".to_string()]];
    if let Some(graded) = &table.graded {
        for ((d, m), r) in graded {
            rows.push(vec![d.to_string(), vars.format(m), r.to_string()]);
        }
    }
    aligned(&rows)
}

pub fn betti_csv(table: &BettiTable, len: Option<usize>) -> String {
    let values = match len {
        Some(n) => table.totals_padded(n),
        None => table.totals(),
    };
    let header: Vec<String> = (0..values.len()).map(|d| d.to_string()).collect();
    let row: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("d,{}\nbeta,{}\n", header.join(","), row.join(","))
}

pub fn graded_csv(table: &BettiTable, vars: &VariableTable) -> String {
    let mut out = String::from("d,m,rank\n");
    if let Some(graded) = &table.graded {
        for ((d, m), r) in graded {
            out.push_str(&format!("{d},{},{r}\n", vars.format(m)));
        }
    }
    out
}

fn bound_rows(table: &BoundTable) -> Vec<(String, Vec<String>)> {
    let cells = |f: &dyn Fn(&crate::lsquared::BoundRow) -> String| -> Vec<String> {
        table.rows.iter().map(f).collect()
    };
    let largest = table.q * (table.q + 1) / 2;
    let mut rows = vec![
        ("d".to_string(), cells(&|r| r.d.to_string())),
        (
            format!("Taylor largest C({largest},d+1)"),
            cells(&|r| r.taylor_largest.to_string()),
        ),
        (
            format!("Taylor(I²) C({},d+1)", table.s),
            cells(&|r| r.taylor_actual.to_string()),
        ),
        (
            "faces of L²_q (a)".to_string(),
            cells(&|r| r.bound_a.to_string()),
        ),
        (
            "faces of L²(I) (b)".to_string(),
            cells(&|r| r.bound_b.to_string()),
        ),
    ];
    if table.rows.iter().all(|r| r.betti.is_some()) {
        rows.push((
            "β_d(I²)".to_string(),
            cells(&|r| r.betti.unwrap_or(0).to_string()),
        ));
    }
    rows
}

/// Bound comparison table: a padded label column, then the values of each
/// row separated by single spaces.
pub fn bound_text(table: &BoundTable) -> String {
    let rows = bound_rows(table);
    let width = rows
        .iter()
        .map(|(l, _)| l.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for (label, values) in rows {
        let pad = width - label.chars().count();
        out.push_str(&format!(
            "{label}{} | {}\n",
            " ".repeat(pad),
            values.join(" ")
        ));
    }
    out
}

pub fn bound_csv(table: &BoundTable) -> String {
    bound_rows(table)
        .into_iter()
        .map(|(label, values)| format!("{},{}\n", csv_field(&label), values.join(",")))
        .collect()
}

#[derive(Serialize)]
struct BoundJsonRow {
    d: usize,
    taylor_largest: String,
    taylor_actual: String,
    bound_a: String,
    bound_b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    betti: Option<u64>,
}

/// JSON bound table. Bounds are written as decimal strings since they may
/// exceed 64 bits.
pub fn write_bounds(table: &BoundTable) -> Result<String> {
    let rows: Vec<BoundJsonRow> = table
        .rows
        .iter()
        .map(|r| BoundJsonRow {
            d: r.d,
            taylor_largest: r.taylor_largest.to_string(),
            taylor_actual: r.taylor_actual.to_string(),
            bound_a: r.bound_a.to_string(),
            bound_b: r.bound_b.to_string(),
            betti: r.betti,
        })
        .collect();
    to_pretty(&serde_json::json!({ "q": table.q, "s": table.s, "rows": rows }))
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
    use crate::homology::ComputeOptions;
    use crate::labeled::{betti_numbers, taylor_complex};
    use crate::lsquared::{bound_table, build_l2i, DEFAULT_ENUM_Q_CAP};
    use crate::parse::parse_ideal;

    fn ideal(s: &str) -> MonomialIdeal {
        parse_ideal(s, None).unwrap().ideal
    }

    #[test]
    fn ideal_round_trip() {
        let i = ideal("x1*x2^3,x3");
        let back = read_ideal(&write_ideal(&i).unwrap()).unwrap();
        assert_eq!(back.gens(), i.gens());
        assert_eq!(back.vars().names(), i.vars().names());
    }

    #[test]
    fn complex_round_trip_with_deletion() {
        let i = ideal("abe,bc,cdf,ad");
        let (l2, record) = build_l2i(&i).unwrap();
        let text = write_labeled(&l2, Some(&record)).unwrap();
        let json = read_complex(&text).unwrap();
        assert_eq!(labeled_from_json(&json, i.vars()).unwrap(), l2);
        assert_eq!(
            deletion_from_json(json.deletion.as_ref().unwrap()).unwrap(),
            record
        );
        assert_eq!(json.deletion.unwrap().deleted, [[1, 3]]);
        let plain = read_complex(&write_complex(l2.complex()).unwrap()).unwrap();
        assert!(plain.labels.is_none());
        assert_eq!(&complex_from_json(&plain).unwrap(), l2.complex());
    }

    #[test]
    fn isolated_vertices_survive() {
        let json: ComplexJson =
            serde_json::from_str(r#"{"vertices":[0,1,2],"facets":[[0,1]]}"#).unwrap();
        let c = complex_from_json(&json).unwrap();
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn betti_round_trip_and_text() {
        let j = ideal("x,y,z,w");
        let sq = j.power(2).unwrap();
        let t = taylor_complex(&sq).unwrap();
        let betti = betti_numbers(&t, &sq, &ComputeOptions::default()).unwrap();
        let back = read_betti(&write_betti(&betti, sq.vars()).unwrap(), sq.vars()).unwrap();
        assert_eq!(back, betti);
        let text = betti_text(&betti, None);
        assert!(text.contains("10 20 15 4"), "{text}");
        assert!(text.starts_with("d"));
        assert_eq!(betti_csv(&betti, None), "d,0,1,2,3\nbeta,10,20,15,4\n");
        assert!(read_betti(
            r#"{"total":{"0":2},"graded":[{"d":0,"m":"x","rank":1}]}"#,
            sq.vars()
        )
        .is_err());
    }

    #[test]
    fn bound_text_rows() {
        let t = bound_table(
            &ideal("abe,bc,cdf,ad"),
            &ComputeOptions::default(),
            DEFAULT_ENUM_Q_CAP,
        )
        .unwrap();
        let text = bound_text(&t);
        for row in [
            "9 20 18 7 1",
            "9 36 84 126 126 84 36",
            "10 27 32 19 6 1",
            "9 14 6 0",
        ] {
            assert!(text.contains(row), "missing {row} in\n{text}");
        }
        assert!(bound_csv(&t).contains("faces of L²(I) (b),9,20,18,7,1,0,0\n"));
        assert!(write_bounds(&t).unwrap().contains("\"bound_b\": \"20\""));
    }
}
