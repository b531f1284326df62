//! Cartan data of finite type: the integer matrix behind a root system,
//! parsed from labels like `"A2"`, `"B2"` or `"A1+A1"`.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A Cartan matrix of finite type together with its label and symmetrizer.
///
/// The matrix convention is `a[i][j] = <alpha_j, alpha_i^vee>`, so rows are
/// indexed by coroots. Simple roots are indexed `0..rank`; for composite
/// labels (`"A2+A1"`) the factors are indexed first-factor-first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanDatum {
    label: String,
    matrix: Vec<Vec<i64>>,
    /// Positive integers `d_i` with `d_i * a[i][j] = d_j * a[j][i]`;
    /// `(alpha_i, alpha_j) = d_i * a[i][j]` is the invariant form.
    symmetrizer: Vec<i64>,
}

impl CartanDatum {
    /// Parse a type string: `X<n>` factors joined by `+`, e.g. `"A2"`, `"B2"`,
    /// `"A1+A1"`. Supported families: A, B (n>=2), C (n>=2), D (n>=2),
    /// E6/E7/E8, F4, G2.
    pub fn from_label(label: &str) -> Result<CartanDatum, Error> {
        let mut blocks = Vec::new();
        for part in label.split('+') {
            let part = part.trim();
            blocks.push(single_type_matrix(part)?);
        }
        if blocks.is_empty() {
            return Err(Error::BadCartanLabel(label.to_string()));
        }
        let rank: usize = blocks.iter().map(|b| b.len()).sum();
        let mut matrix = vec![vec![0i64; rank]; rank];
        let mut offset = 0;
        for block in &blocks {
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    matrix[offset + i][offset + j] = v;
                }
            }
            offset += block.len();
        }
        Self::from_matrix(label, matrix)
    }

    /// Build a datum from a raw matrix, validating shape, sign pattern,
    /// symmetrizability and finite type.
    pub fn from_matrix(label: &str, matrix: Vec<Vec<i64>>) -> Result<CartanDatum, Error> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::BadCartanMatrix("matrix is empty or not square".into()));
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(Error::BadCartanMatrix(format!("diagonal entry at {i} is not 2")));
            }
            for j in 0..n {
                if i != j {
                    if matrix[i][j] > 0 {
                        return Err(Error::BadCartanMatrix(format!(
                            "off-diagonal entry at ({i},{j}) is positive"
                        )));
                    }
                    if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                        return Err(Error::BadCartanMatrix(format!(
                            "zero pattern not symmetric at ({i},{j})"
                        )));
                    }
                }
            }
        }
        let symmetrizer = symmetrize(&matrix)
            .ok_or_else(|| Error::BadCartanMatrix("matrix is not symmetrizable".into()))?;
        // Finite type iff the symmetrized matrix is positive definite.
        if let Some(k) = first_nonpositive_minor(&matrix, &symmetrizer) {
            return Err(Error::NotFiniteType {
                label: label.to_string(),
                submatrix: format!(
                    "leading principal submatrix on simple roots 0..={k} has non-positive determinant"
                ),
            });
        }
        Ok(CartanDatum {
            label: label.to_string(),
            matrix,
            symmetrizer,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// `<alpha_j, alpha_i^vee>`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Invariant form `(alpha_i, alpha_j)` as integers.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.symmetrizer[i] * self.matrix[i][j]
    }

    /// All off-diagonal bonds are single and symmetric (types A, D, E and sums).
    pub fn is_simply_laced(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| i == j || (self.matrix[i][j] >= -1 && self.matrix[i][j] == self.matrix[j][i]))
        })
    }

    /// Order of `s_i s_j` read off the Cartan entries.
    pub fn bond_order(&self, i: usize, j: usize) -> Result<u32, Error> {
        if i == j {
            return Err(Error::EqualSimpleRoots(i));
        }
        Ok(match self.matrix[i][j] * self.matrix[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            c => {
                // unreachable for finite type; keep a hard failure rather than junk
                panic!("bond product {c} at ({i},{j}) is not of finite type")
            }
        })
    }

    /// Display name of a simple root, used in DOT labels and reports.
    pub fn root_name(&self, i: usize) -> String {
        format!("a{i}")
    }

    /// The sub-datum on a subset `subset` of simple roots (sorted ascending),
    /// labeled `"<label>|<indices>"`.
    pub fn restrict(&self, subset: &[usize]) -> Result<CartanDatum, Error> {
        for &i in subset {
            if i >= self.rank() {
                return Err(Error::BadSimpleRoot(i));
            }
        }
        let mut sub = vec![vec![0i64; subset.len()]; subset.len()];
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                sub[a][b] = self.matrix[i][j];
            }
        }
        let idx: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
        CartanDatum::from_matrix(&format!("{}|{}", self.label, idx.join(",")), sub)
    }
}

fn single_type_matrix(part: &str) -> Result<Vec<Vec<i64>>, Error> {
    let bad = || Error::BadCartanLabel(part.to_string());
    if part.len() < 2 {
        return Err(bad());
    }
    let family = part.chars().next().unwrap().to_ascii_uppercase();
    let n: usize = part[1..].parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
    }
    let mut chain = |edges: &[(usize, usize)]| {
        for &(i, j) in edges {
            m[i][j] = -1;
            m[j][i] = -1;
        }
    };
    match (family, n) {
        ('A', _) => chain(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()),
        ('B', n2) if n2 >= 2 => {
            chain(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>());
            // alpha_{n-1} is the short root
            m[n - 1][n - 2] = -2;
        }
        ('C', n2) if n2 >= 2 => {
            chain(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>());
            m[n - 2][n - 1] = -2;
        }
        ('D', n2) if n2 >= 2 => {
            if n >= 3 {
                chain(&(0..n - 2).map(|i| (i, i + 1)).collect::<Vec<_>>());
                chain(&[(n - 3, n - 1)]);
            }
            // D2 is A1+A1: no bonds
        }
        ('E', 6) | ('E', 7) | ('E', 8) => {
            // Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 hangs off node 4 (1-based).
            let mut edges = vec![(0usize, 2usize), (1, 3)];
            for i in 2..n - 1 {
                edges.push((i, i + 1));
            }
            chain(&edges);
        }
        ('F', 4) => {
            chain(&[(0, 1), (1, 2), (2, 3)]);
            m[2][1] = -2;
        }
        ('G', 2) => {
            chain(&[(0, 1)]);
            m[1][0] = -3;
        }
        _ => return Err(bad()),
    }
    Ok(m)
}

/// Find positive integers `d` with `d_i a_ij = d_j a_ji`, or `None` if the
/// matrix is not symmetrizable.
fn symmetrize(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    // rationals d_i = num/den propagated along bonds
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (ni, di) = d[i].unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_j = d_i * a_ij / a_ji
                let (nj, dj) = reduce(ni * a[i][j], di * a[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some((nj, dj));
                        stack.push(j);
                    }
                    Some((en, ed)) => {
                        if en * dj != nj * ed {
                            return None;
                        }
                    }
                }
            }
        }
    }
    let lcm_den = d
        .iter()
        .map(|x| x.unwrap().1)
        .fold(1i64, |acc, v| acc / gcd(acc, v) * v);
    let mut out: Vec<i64> = d
        .iter()
        .map(|x| {
            let (num, den) = x.unwrap();
            num * (lcm_den / den)
        })
        .collect();
    let g = out.iter().fold(0i64, |acc, &v| gcd(acc, v.abs()));
    if g > 1 {
        for v in &mut out {
            *v /= g;
        }
    }
    if out.iter().any(|&v| v <= 0) {
        return None;
    }
    Some(out)
}

fn reduce(num: i64, den: i64) -> (i64, i64) {
    let g = gcd(num.abs(), den.abs()).max(1);
    let sign = if den < 0 { -1 } else { 1 };
    (sign * num / g, sign * den / g)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Index of the first leading principal minor of the symmetrized matrix that
/// is not positive, if any.
fn first_nonpositive_minor(a: &[Vec<i64>], d: &[i64]) -> Option<usize> {
    let n = a.len();
    for k in 1..=n {
        let mut det = vec![vec![0i128; k]; k];
        for i in 0..k {
            for j in 0..k {
                det[i][j] = (d[i] * a[i][j]) as i128;
            }
        }
        if determinant(det) <= 0 {
            return Some(k - 1);
        }
    }
    None
}

/// Fraction-free (Bareiss) determinant.
fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_and_composite_labels() {
        let a2 = CartanDatum::from_label("A2").unwrap();
        assert_eq!(a2.rank(), 2);
        assert_eq!(a2.entry(0, 1), -1);
        assert!(a2.is_simply_laced());

        let b2 = CartanDatum::from_label("B2").unwrap();
        assert_eq!(b2.entry(0, 1), -1);
        assert_eq!(b2.entry(1, 0), -2);
        assert!(!b2.is_simply_laced());

        let sum = CartanDatum::from_label("A1+A1").unwrap();
        assert_eq!(sum.rank(), 2);
        assert_eq!(sum.entry(0, 1), 0);
        assert!(sum.is_simply_laced());

        let mixed = CartanDatum::from_label("A2+B2").unwrap();
        assert_eq!(mixed.rank(), 4);
        assert_eq!(mixed.entry(1, 2), 0);
        assert_eq!(mixed.entry(3, 2), -2);
    }

    #[test]
    fn bond_orders_match_the_classical_table() {
        let a2 = CartanDatum::from_label("A2").unwrap();
        assert_eq!(a2.bond_order(0, 1).unwrap(), 3);
        let b2 = CartanDatum::from_label("B2").unwrap();
        assert_eq!(b2.bond_order(0, 1).unwrap(), 4);
        let g2 = CartanDatum::from_label("G2").unwrap();
        assert_eq!(g2.bond_order(0, 1).unwrap(), 6);
        let sum = CartanDatum::from_label("A1+A1").unwrap();
        assert_eq!(sum.bond_order(0, 1).unwrap(), 2);
        assert!(sum.bond_order(1, 1).is_err());
    }

    #[test]
    fn rejects_non_finite_type_with_offending_submatrix() {
        // Affine A1~: the 2x2 matrix [[2,-2],[-2,2]] has determinant 0.
        let err = CartanDatum::from_matrix("A1~", vec![vec![2, -2], vec![-2, 2]]).unwrap_err();
        match err {
            Error::NotFiniteType { submatrix, .. } => assert!(submatrix.contains("0..=1")),
            other => panic!("expected NotFiniteType, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_matrices() {
        assert!(CartanDatum::from_matrix("x", vec![vec![1]]).is_err());
        assert!(CartanDatum::from_matrix("x", vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanDatum::from_matrix("x", vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanDatum::from_label("Z9").is_err());
        assert!(CartanDatum::from_label("").is_err());
    }

    #[test]
    fn symmetrizer_makes_the_form_symmetric() {
        for label in ["A3", "B3", "C3", "G2", "F4", "A2+B2", "D4"] {
            let d = CartanDatum::from_label(label).unwrap();
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    assert_eq!(d.form(i, j), d.form(j, i), "{label} at ({i},{j})");
                }
            }
        }
    }
}
