//! Signed Stirling numbers of the first kind.

use dashu_int::IBig;

/// Rows `0..=n` of `c(j, k)`, the coefficients of
/// `x (x - 1) ... (x - j + 1) = sum_k c(j, k) x^k`.
///
/// Built with `c(j + 1, k) = c(j, k - 1) - j c(j, k)`.
pub fn stirling_table(n: usize) -> Vec<Vec<IBig>> {
    let mut rows: Vec<Vec<IBig>> = Vec::with_capacity(n + 1);
    rows.push(vec![IBig::ONE]);
    for j in 0..n {
        let prev = &rows[j];
        let jj = IBig::from(j);
        let row: Vec<IBig> = (0..=j + 1)
            .map(|k| {
                let left = if k > 0 { prev[k - 1].clone() } else { IBig::ZERO };
                let right = prev.get(k).map(|c| &jj * c).unwrap_or(IBig::ZERO);
                left - right
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Row `j` alone.
pub fn stirling_first(j: usize) -> Vec<IBig> {
    stirling_table(j).pop().expect("table has j + 1 rows")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<IBig> {
        v.iter().map(|&x| IBig::from(x)).collect()
    }

    #[test]
    fn small_rows() {
        assert_eq!(stirling_first(0), row(&[1]));
        assert_eq!(stirling_first(1), row(&[0, 1]));
        assert_eq!(stirling_first(2), row(&[0, -1, 1]));
        assert_eq!(stirling_first(3), row(&[0, 2, -3, 1]));
        assert_eq!(stirling_first(4), row(&[0, -6, 11, -6, 1]));
        assert_eq!(stirling_first(5), row(&[0, 24, -50, 35, -10, 1]));
    }

    #[test]
    fn row_sums_and_factorials() {
        // Evaluating the falling factorial at x = 1 gives 0 for j >= 2;
        // c(j, 1) = (-1)^(j-1) (j-1)!.
        let table = stirling_table(25);
        let mut fact = IBig::ONE;
        for (j, row) in table.iter().enumerate().skip(2) {
            assert_eq!(row.iter().sum::<IBig>(), IBig::ZERO);
            fact *= IBig::from(j - 1);
            let sign = if j % 2 == 0 { -IBig::ONE } else { IBig::ONE };
            assert_eq!(row[1], sign * &fact);
        }
    }
}
