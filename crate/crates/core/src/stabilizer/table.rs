use std::collections::HashMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::generators::bell_code_generators;
use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::pauli::{syndrome, GeneratorSet, PauliString, Syndrome};

/// Largest `k` for which the exhaustive table is built.
pub const MAX_TABLE_K: usize = 3;

/// Bit-flip syndromes of the `k = 1` Bell code, one row per class, in the
/// published order.
pub const BELL_K1_GOLDEN_CSV: &str = include_str!("../../data/bell_k1_syndromes.csv");

#[derive(Debug, Clone, PartialEq)]
pub struct SyndromeClass {
    pub class_id: usize,
    pub syndrome: Syndrome,
    /// Minimum-weight member; ties go to the member flipping qubit 0.
    pub representative: PauliString,
    pub members: Vec<PauliString>,
}

impl SyndromeClass {
    pub fn min_weight(&self) -> u32 {
        self.representative.weight()
    }
}

/// Every bit-flip pattern of the encoded Bell pair grouped by syndrome.
/// Classes are ordered by representative weight, then by support.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    k: usize,
    generators: GeneratorSet,
    classes: Vec<SyndromeClass>,
    by_syndrome: HashMap<u64, usize>,
}

/// One CSV row of the exported table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub error: String,
    pub syndrome: String,
    pub class_id: usize,
    pub min_weight_rep: String,
}

fn support_key(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|q| mask >> q & 1 == 1).collect()
}

pub fn build_syndrome_table(k: usize) -> Result<SyndromeTable> {
    build_syndrome_table_with(k, ExecPolicy::default())
}

pub fn build_syndrome_table_with(k: usize, policy: ExecPolicy) -> Result<SyndromeTable> {
    if !(1..=MAX_TABLE_K).contains(&k) {
        return Err(Error::UnsupportedOrder { k, min: 1, max: MAX_TABLE_K });
    }
    let generators = bell_code_generators(k)?;
    let n = generators.num_qubits();
    let masks = policy
        .try_map_indexed(1 << n, |m| syndrome(&PauliString::bit_flip(n, m as u64), &generators).map(|s| s.mask()))?;

    let mut groups: HashMap<u64, Vec<u64>> = HashMap::new();
    for (pattern, &s) in masks.iter().enumerate() {
        groups.entry(s).or_default().push(pattern as u64);
    }
    let mut classes: Vec<(u64, Vec<u64>)> = groups
        .into_iter()
        .map(|(s, mut members)| {
            members.sort_by_key(|&m| (m.count_ones(), m & 1 == 0, support_key(m, n)));
            (s, members)
        })
        .collect();
    classes.sort_by_key(|(_, members)| (members[0].count_ones(), support_key(members[0], n)));

    let len = generators.len();
    let classes: Vec<SyndromeClass> = classes
        .into_iter()
        .enumerate()
        .map(|(class_id, (s, members))| {
            let members: Vec<PauliString> = members.iter().map(|&m| PauliString::bit_flip(n, m)).collect();
            SyndromeClass {
                class_id,
                syndrome: Syndrome::new((0..len).map(|i| crate::pauli::Sign::from_parity(s >> i & 1 == 1)).collect()),
                representative: members[0],
                members,
            }
        })
        .collect();
    let by_syndrome = classes.iter().map(|c| (c.syndrome.mask(), c.class_id)).collect();
    Ok(SyndromeTable { k, generators, classes, by_syndrome })
}

impl SyndromeTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn classes(&self) -> &[SyndromeClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn pattern_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    pub fn lookup(&self, s: &Syndrome) -> Option<&SyndromeClass> {
        if s.len() != self.generators.len() {
            return None;
        }
        self.by_syndrome.get(&s.mask()).map(|&i| &self.classes[i])
    }

    pub fn class_of(&self, error: &PauliString) -> Result<Option<&SyndromeClass>> {
        Ok(self.lookup(&syndrome(error, &self.generators)?))
    }

    /// One record per bit-flip pattern, grouped by class, representative first.
    pub fn records(&self) -> Vec<TableRecord> {
        self.classes
            .iter()
            .flat_map(|c| {
                c.members.iter().map(move |m| TableRecord {
                    error: m.to_string(),
                    syndrome: c.syndrome.to_string(),
                    class_id: c.class_id,
                    min_weight_rep: c.representative.to_string(),
                })
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in self.records() {
            w.serialize(r)?;
        }
        w.flush().map_err(|source| Error::Io { path: "<csv writer>".into(), source })?;
        Ok(())
    }
}

/// A golden `error,syndrome` row.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRow {
    pub error: PauliString,
    pub syndrome: Syndrome,
}

pub fn parse_golden<R: Read>(input: R) -> Result<Vec<GoldenRow>> {
    #[derive(Deserialize)]
    struct Raw {
        error: String,
        syndrome: String,
    }
    let mut rows = Vec::new();
    for raw in csv::Reader::from_reader(input).deserialize::<Raw>() {
        let raw = raw?;
        rows.push(GoldenRow { error: raw.error.parse()?, syndrome: raw.syndrome.parse()? });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenReport {
    pub rows_checked: usize,
    pub mismatches: Vec<String>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.rows_checked > 0 && self.mismatches.is_empty()
    }
}

/// Checks that row `i` of `golden` is class `i` of the table: same
/// syndrome, and the listed error belongs to that class.
pub fn compare_with_golden(table: &SyndromeTable, golden: &[GoldenRow]) -> GoldenReport {
    let mut mismatches = Vec::new();
    if golden.len() != table.class_count() {
        mismatches.push(format!("golden has {} rows, table has {} classes", golden.len(), table.class_count()));
    }
    for (i, (row, class)) in golden.iter().zip(table.classes()).enumerate() {
        if row.syndrome != class.syndrome {
            mismatches.push(format!(
                "row {}: golden {} -> {}, table {} -> {}",
                i + 1,
                row.error,
                row.syndrome,
                class.representative,
                class.syndrome
            ));
        } else if !class.members.contains(&row.error) {
            mismatches.push(format!("row {}: {} is not in class {}", i + 1, row.error, class.class_id));
        }
        match syndrome(&row.error, &table.generators) {
            Ok(s) if s == row.syndrome => {}
            Ok(s) => mismatches.push(format!(
                "row {}: {} has syndrome {}, golden says {}",
                i + 1,
                row.error,
                s,
                row.syndrome
            )),
            Err(e) => mismatches.push(format!("row {}: {e}", i + 1)),
        }
    }
    GoldenReport { rows_checked: golden.len(), mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_shape() {
        let t = build_syndrome_table(1).unwrap();
        assert_eq!(t.class_count(), 32);
        assert_eq!(t.pattern_count(), 64);
        for c in t.classes() {
            assert_eq!(c.members.len(), 2);
            assert_eq!(c.members[0].x_mask() ^ c.members[1].x_mask(), 0b111111);
        }
    }

    #[test]
    fn k1_matches_golden() {
        let t = build_syndrome_table(1).unwrap();
        let golden = parse_golden(BELL_K1_GOLDEN_CSV.as_bytes()).unwrap();
        let report = compare_with_golden(&t, &golden);
        assert!(report.passed(), "{:?}", report.mismatches);
    }

    #[test]
    fn corrupted_golden_fails() {
        let t = build_syndrome_table(1).unwrap();
        let mut golden = parse_golden(BELL_K1_GOLDEN_CSV.as_bytes()).unwrap();
        golden[5].syndrome = "+1 +1 +1 +1 +1 +1".parse().unwrap();
        assert!(!compare_with_golden(&t, &golden).passed());
    }

    #[test]
    fn csv_export() {
        let t = build_syndrome_table(1).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("error,syndrome,class_id,min_weight_rep"));
        assert_eq!(lines.next(), Some("IIIIII,+1 +1 +1 +1 +1 +1,0,IIIIII"));
        assert_eq!(lines.next(), Some("XXXXXX,+1 +1 +1 +1 +1 +1,0,IIIIII"));
        assert_eq!(text.lines().count(), 65);
    }

    #[test]
    fn policies_agree_and_k_limited() {
        let a = build_syndrome_table_with(2, ExecPolicy::Sequential).unwrap();
        let b = build_syndrome_table_with(2, ExecPolicy::Parallel).unwrap();
        assert_eq!(a.records(), b.records());
        assert_eq!(a.class_count(), 512);
        assert!(build_syndrome_table(4).is_err());
    }
}
