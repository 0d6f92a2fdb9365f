use crate::algebra::MultiDegree;
use crate::error::{Error, Result};

/// Multi-indices `n_1, …, n_m` with `d_c ≤ n_j ≤ 2 d_c` and `2 d_c − n_{j−1} + n_j ≤ 2 d_s`.
///
/// Requires `d_c ≤ (2m − 1)(d_s − d_c)` componentwise.
pub fn multiindex_sequence(dc: &MultiDegree, ds: &MultiDegree, m: usize) -> Result<Vec<MultiDegree>> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be positive".into()));
    }
    if dc.len() != ds.len() {
        return Err(Error::InvalidParameters(format!("component count mismatch: {dc} vs {ds}")));
    }
    let mm = m as i64;
    for (&c, &s) in dc.components().iter().zip(ds.components()) {
        if c < 0 || s < 0 || c > (2 * mm - 1) * (s - c) {
            return Err(Error::HypothesisViolated(format!("d(c) = {dc} exceeds (2m-1)(d(s)-d(c)) for d(s) = {ds}, m = {m}")));
        }
    }
    let k = dc.len();
    let mut rows = vec![vec![0i64; k]; m];
    for l in 0..k {
        let (c, s) = (dc.components()[l], ds.components()[l]);
        if m == 1 || s >= 2 * c {
            for row in rows.iter_mut() {
                row[l] = 2 * c;
            }
            continue;
        }
        // smallest m_l ≥ 2 with c ≤ (2 m_l − 1)(s − c); the hypothesis keeps it ≤ m
        let ml = (2..=mm).find(|&ml| c <= (2 * ml - 1) * (s - c)).expect("hypothesis bounds m_l");
        for (j, row) in rows.iter_mut().enumerate() {
            let j = j as i64 + 1;
            row[l] = if j == 1 {
                s
            } else if j < ml {
                2 * (j - 1) * (s - c) + s
            } else {
                2 * c
            };
        }
    }
    let out: Vec<MultiDegree> = rows.into_iter().map(MultiDegree).collect();
    check_sequence(dc, ds, &out)?;
    Ok(out)
}

/// Verifies both inequality families on a sequence.
pub fn check_sequence(dc: &MultiDegree, ds: &MultiDegree, seq: &[MultiDegree]) -> Result<()> {
    let two_c = dc.scale(2);
    let two_s = ds.scale(2);
    for (j, n) in seq.iter().enumerate() {
        if !(dc.le(n) && n.le(&two_c)) {
            return Err(Error::Internal(format!("n_{} = {n} outside [{dc}, {two_c}]", j + 1)));
        }
        if j > 0 {
            let lhs = &(&two_c - &seq[j - 1]) + n;
            if !lhs.le(&two_s) {
                return Err(Error::Internal(format!("2d(c) - n_{} + n_{} = {lhs} exceeds {two_s}", j, j + 1)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(c: &[i64]) -> MultiDegree {
        MultiDegree::from_slice(c)
    }

    #[test]
    fn examples() {
        assert_eq!(multiindex_sequence(&md(&[1]), &md(&[2]), 1).unwrap(), vec![md(&[2])]);
        assert_eq!(multiindex_sequence(&md(&[2]), &md(&[3]), 2).unwrap(), vec![md(&[3]), md(&[4])]);
        assert_eq!(multiindex_sequence(&md(&[0, 0]), &md(&[1, 1]), 1).unwrap(), vec![md(&[0, 0])]);
    }

    #[test]
    fn longer_chain() {
        // c = 5, s = 6: m_l = 3, n = 6, 8, 10, 10
        let seq = multiindex_sequence(&md(&[5]), &md(&[6]), 4).unwrap();
        assert_eq!(seq, vec![md(&[6]), md(&[8]), md(&[10]), md(&[10])]);
    }

    #[test]
    fn hypothesis() {
        assert!(matches!(multiindex_sequence(&md(&[2]), &md(&[2]), 3), Err(Error::HypothesisViolated(_))));
        assert!(matches!(multiindex_sequence(&md(&[3]), &md(&[4]), 1), Err(Error::HypothesisViolated(_))));
    }
}
