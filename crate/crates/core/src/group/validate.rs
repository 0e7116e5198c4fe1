use serde::Serialize;

use super::{Elem, Group};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub order: usize,
    pub identity: bool,
    pub latin_square: bool,
    pub associative: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.identity && self.latin_square && self.associative
    }
}

pub fn validate_group(g: &Group) -> ValidationReport {
    validate_table(g.order(), g.table())
}

/// Identity, Latin-square and (cubic) associativity checks. Only the first
/// failure of each kind is recorded.
pub fn validate_table(order: usize, table: &[Elem]) -> ValidationReport {
    let mul = |a: usize, b: usize| table[a * order + b];
    let mut failures = Vec::new();

    let identity = match (0..order).find(|&x| mul(0, x) != x || mul(x, 0) != x) {
        Some(x) => {
            failures.push(format!("0 is not a two-sided identity at {x}"));
            false
        }
        None => true,
    };

    let mut latin_square = true;
    'rows: for a in 0..order {
        let mut row_seen = vec![false; order];
        let mut col_seen = vec![false; order];
        for b in 0..order {
            let (r, c) = (mul(a, b), mul(b, a));
            if std::mem::replace(&mut row_seen[r], true) {
                failures.push(format!("row {a} repeats {r}"));
                latin_square = false;
                break 'rows;
            }
            if std::mem::replace(&mut col_seen[c], true) {
                failures.push(format!("column {a} repeats {c}"));
                latin_square = false;
                break 'rows;
            }
        }
    }

    let mut associative = true;
    'assoc: for a in 0..order {
        for b in 0..order {
            let ab = mul(a, b);
            for c in 0..order {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    failures.push(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    associative = false;
                    break 'assoc;
                }
            }
        }
    }

    ValidationReport {
        order,
        identity,
        latin_square,
        associative,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_group, GroupSpec};
    use super::*;

    #[test]
    fn d4_passes() {
        let d4 = build_group(&GroupSpec::dihedral(4)).unwrap();
        let report = validate_group(&d4);
        assert!(report.is_valid(), "{report:?}");
        assert!(report.failures.is_empty());
    }

    #[test]
    fn transposed_entry_is_flagged() {
        let d4 = build_group(&GroupSpec::dihedral(4)).unwrap();
        let mut table = d4.table().to_vec();
        // swap two entries of a non-identity row
        let n = d4.order();
        table.swap(3 * n + 1, 3 * n + 5);
        let broken = Group::from_table_unchecked(n, table, None).unwrap();
        let report = validate_group(&broken);
        assert!(!report.is_valid());
        assert!(!report.latin_square || !report.associative);
    }

    #[test]
    fn abelian_product_z6() {
        let z6 = build_group(&GroupSpec::abelian(&[2, 3])).unwrap();
        assert_eq!(z6.order(), 6);
        assert!(validate_group(&z6).is_valid());
        // (1,1) generates
        assert_eq!(z6.element_order(4), 6);
    }

    #[test]
    fn broken_table_rejected_by_checked_constructor() {
        let table = vec![0, 1, 1, 1];
        assert!(Group::from_table(2, table, None).is_err());
    }
}
