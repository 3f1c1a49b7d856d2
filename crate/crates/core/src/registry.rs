//! Built-in registry of the benchmark discontinuity matrices C3x2 .. C9x5.

use crate::arrangement::DiscontinuityMatrix;

/// Names of all built-in matrices, in size order.
pub const NAMES: [&str; 9] = [
    "C3x2", "C4x2", "C5x2", "C6x2", "C5x3", "C6x3", "C7x3", "C8x3", "C9x3",
];

/// Names including the two large benchmark matrices.
pub const ALL_NAMES: [&str; 11] = [
    "C3x2", "C4x2", "C5x2", "C6x2", "C5x3", "C6x3", "C7x3", "C8x3", "C9x3", "C7x4", "C9x5",
];

/// Raw entries of a built-in matrix, or None for an unknown name.
pub fn entries(name: &str) -> Option<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> = match name {
        "C3x2" => vec![vec![1., 0.], vec![0., 1.], vec![1., 1.]],
        "C4x2" => vec![vec![1., 0.], vec![0., 1.], vec![2., 1.], vec![1., -1.]],
        "C5x2" => vec![
            vec![1., 0.],
            vec![0., 1.],
            vec![2., 1.],
            vec![1., -1.],
            vec![-1., 2.],
        ],
        "C6x2" => vec![
            vec![1., 0.],
            vec![0., 1.],
            vec![2., 1.],
            vec![1., 1.],
            vec![1., -1.],
            vec![-1., 2.],
        ],
        "C5x3" => vec![
            vec![1., 0., 0.],
            vec![0., 1., 0.],
            vec![0., 0., 1.],
            vec![1., 1., -1.],
            vec![-1., 2., 1.],
        ],
        "C6x3" => vec![
            vec![1., 0., 0.],
            vec![0., 1., 0.],
            vec![0., 0., 1.],
            vec![1., -1., 1.],
            vec![1., 1., -1.],
            vec![-1., 2., 1.],
        ],
        "C7x3" => vec![
            vec![1., 0., 0.],
            vec![0., 1., 0.],
            vec![0., 0., 1.],
            vec![2., 1., -1.],
            vec![1., 1., 1.],
            vec![1., 1., -1.],
            vec![-1., 0.5, 2.],
        ],
        "C8x3" => vec![
            vec![1., 0., 0.],
            vec![0., 1., 0.],
            vec![0., 0., 1.],
            vec![2., 1., -1.],
            vec![1., 1., 1.],
            vec![1., 1., -1.],
            vec![0.5, 0.5, 1.],
            vec![-1., 0.5, 2.],
        ],
        "C9x3" => vec![
            vec![1., 0., 0.],
            vec![0., 1., 0.],
            vec![0., 0., 1.],
            vec![2., 1., -1.],
            vec![0.5, 2., 1.],
            vec![-1., 1., 0.5],
            vec![2., -1., 1.],
            vec![1., 1., -1.],
            vec![-1., 0.5, 2.],
        ],
        "C7x4" => vec![
            vec![1., 0., 0., 0.],
            vec![0., 1., 0., 0.],
            vec![0., 0., 1., 0.],
            vec![0., 0., 0., 1.],
            vec![1., 1., 1., 1.],
            vec![1., 2., 1., 2.],
            vec![1., -2., 2., 1.],
        ],
        "C9x5" => vec![
            vec![1., 0., 0., 0., 0.],
            vec![0., 1., 0., 0., 0.],
            vec![0., 0., 1., 0., 0.],
            vec![0., 0., 0., 1., 0.],
            vec![0., 0., 0., 0., 1.],
            vec![1., 1., 1., 1., 1.],
            vec![0.5, 1., 0.5, 1., 0.5],
            vec![-1., -1., 0.5, 1., 2.],
            vec![2., 1., -0.5, 2., -0.5],
        ],
        _ => return None,
    };
    Some(rows)
}

/// A validated built-in matrix, or None for an unknown name.
pub fn builtin(name: &str) -> Option<DiscontinuityMatrix> {
    let rows = entries(name)?;
    Some(DiscontinuityMatrix::new(rows).expect("registry matrices are valid"))
}

/// Canonical text rendering of every registry entry, used to pin the contents.
pub fn canonical_dump() -> String {
    let mut out = String::new();
    for name in ALL_NAMES {
        let rows = entries(name).unwrap();
        out.push_str(name);
        out.push('\n');
        for row in rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.6}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::{Digest, Sha256};

    #[test]
    fn all_matrices_are_valid_and_sized() {
        for name in ALL_NAMES {
            let c = builtin(name).unwrap();
            let (m, n) = name[1..].split_once('x').unwrap();
            assert_eq!(c.row_count(), m.parse::<usize>().unwrap(), "{name}");
            assert_eq!(c.dimension(), n.parse::<usize>().unwrap(), "{name}");
            assert_eq!(c.rank(), c.dimension(), "{name} must have full rank");
        }
        assert!(builtin("C2x9").is_none());
    }

    #[test]
    fn fractional_entries_survive() {
        let c7x3 = builtin("C7x3").unwrap();
        assert_eq!(c7x3.row(6), &[-1.0, 0.5, 2.0]);
        let c9x5 = builtin("C9x5").unwrap();
        assert_eq!(c9x5.row(8), &[2.0, 1.0, -0.5, 2.0, -0.5]);
    }

    #[test]
    fn registry_checksum_is_pinned() {
        let digest = Sha256::digest(canonical_dump().as_bytes());
        assert_eq!(
            format!("{digest:x}"),
            "015f9bab95d4f30e37cf8de7fa0c262fdcca09de3e7c6086627b65e2a79df4f9"
        );
    }
}
