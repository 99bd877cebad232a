//! Small text formats used by command-line arguments.

use dpplab_core::numerics::DenseMatrix;

use crate::CliError;

fn bad(what: &str, text: &str) -> CliError {
    CliError::Usage(format!("cannot parse {what} from '{text}'"))
}

/// A real number, also accepting `p/q` fractions.
pub fn number(text: &str) -> Result<f64, CliError> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let (p, q): (f64, f64) = (p.trim().parse().map_err(|_| bad("a number", t))?, q.trim().parse().map_err(|_| bad("a number", t))?);
        return Ok(p / q);
    }
    t.parse().map_err(|_| bad("a number", t))
}

/// Comma-separated numbers; the empty string gives an empty list.
pub fn numbers(text: &str) -> Result<Vec<f64>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(number).collect()
}

/// Comma-separated indices.
pub fn indices(text: &str) -> Result<Vec<usize>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad("an index", s))).collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn matrix(text: &str) -> Result<DenseMatrix, CliError> {
    let rows: Vec<Vec<f64>> = text.split(';').map(numbers).collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) || cols == 0 {
        return Err(bad("a rectangular matrix", text));
    }
    let flat: Vec<f64> = rows.concat();
    Ok(DenseMatrix::from_real(rows.len(), cols, &flat)?)
}

/// Edges written `u-v`, comma separated.
pub fn edges(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|e| {
            let (u, v) = e.split_once('-').ok_or_else(|| bad("an edge", e))?;
            Ok((u.trim().parse().map_err(|_| bad("an edge", e))?, v.trim().parse().map_err(|_| bad("an edge", e))?))
        })
        .collect()
}

/// Strict relations `a<b`, comma separated, resolved against `labels`.
pub fn relations(text: &str, labels: &[String]) -> Result<Vec<(usize, usize)>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let find = |name: &str| {
        labels
            .iter()
            .position(|l| l == name.trim())
            .ok_or_else(|| CliError::Usage(format!("unknown element '{}'", name.trim())))
    };
    text.split(',')
        .map(|r| {
            let (a, b) = r.split_once('<').ok_or_else(|| bad("a relation", r))?;
            Ok((find(a)?, find(b)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(numbers("1/3, 0.5,2").unwrap(), vec![1.0 / 3.0, 0.5, 2.0]);
        assert_eq!(indices("").unwrap(), Vec::<usize>::new());
        assert_eq!(edges("1-2, 3-4").unwrap(), vec![(1, 2), (3, 4)]);
        let m = matrix("1,0;0,1").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(matrix("1,0;1").is_err());
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(relations("a<b, a<c", &labels).unwrap(), vec![(0, 1), (0, 2)]);
        assert!(relations("a<d", &labels).is_err());
    }
}
