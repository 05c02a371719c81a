use serde::Serialize;

use crate::error::{Error, Result};

/// Largest dense table the crate will allocate.
pub const MAX_TABLE: u64 = 1 << 24;

/// `m^n` if it fits under [`MAX_TABLE`].
pub fn table_len(carrier: usize, arity: usize) -> Result<usize> {
    let mut len: u64 = 1;
    for _ in 0..arity {
        len = len.saturating_mul(carrier as u64);
        if len > MAX_TABLE {
            return Err(Error::exhausted("operation table entries", MAX_TABLE));
        }
    }
    Ok(len as usize)
}

/// All `n`-tuples over `{0..m-1}` in row-major order (last coordinate fastest).
#[derive(Debug, Clone)]
pub struct Tuples {
    carrier: u32,
    cur: Vec<u32>,
    done: bool,
}

impl Tuples {
    pub fn new(arity: usize, carrier: usize) -> Self {
        Tuples {
            carrier: carrier as u32,
            cur: vec![0; arity],
            done: carrier == 0 && arity > 0,
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = self.cur.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cur[i] += 1;
            if self.cur[i] < self.carrier {
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

/// A finitary operation on `{0..m-1}` as a dense row-major table, first
/// argument varying slowest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FinOpTable {
    arity: usize,
    carrier: usize,
    values: Vec<u32>,
}

impl FinOpTable {
    pub fn from_values(arity: usize, carrier: usize, values: Vec<u32>) -> Result<Self> {
        if carrier == 0 {
            return Err(Error::EmptyCarrier);
        }
        let len = table_len(carrier, arity)?;
        if values.len() != len {
            return Err(Error::Unrepresentable(format!(
                "table of arity {arity} over {carrier} elements needs {len} entries, got {}",
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v as usize >= carrier) {
            return Err(Error::Unrepresentable(format!(
                "entry {v} outside carrier of size {carrier}"
            )));
        }
        Ok(FinOpTable {
            arity,
            carrier,
            values,
        })
    }

    pub fn try_from_fn(arity: usize, carrier: usize, mut f: impl FnMut(&[u32]) -> u32) -> Result<Self> {
        if carrier == 0 {
            return Err(Error::EmptyCarrier);
        }
        let len = table_len(carrier, arity)?;
        let mut values = Vec::with_capacity(len);
        let mut t = vec![0u32; arity];
        for _ in 0..len {
            values.push(f(&t));
            for slot in t.iter_mut().rev() {
                *slot += 1;
                if (*slot as usize) < carrier {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(FinOpTable {
            arity,
            carrier,
            values,
        })
    }

    /// Panics if the table would exceed [`MAX_TABLE`]; for small fixed sizes.
    pub fn from_fn(arity: usize, carrier: usize, f: impl FnMut(&[u32]) -> u32) -> Self {
        FinOpTable::try_from_fn(arity, carrier, f).expect("table too large")
    }

    pub fn projection(arity: usize, i: usize, carrier: usize) -> Self {
        assert!(i < arity, "projection index {i} out of range for arity {arity}");
        FinOpTable::from_fn(arity, carrier, |x| x[i])
    }

    pub fn constant(arity: usize, value: u32, carrier: usize) -> Self {
        FinOpTable::from_fn(arity, carrier, |_| value)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn index(&self, args: &[u32]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter()
            .fold(0usize, |acc, &a| acc * self.carrier + a as usize)
    }

    pub fn get(&self, args: &[u32]) -> u32 {
        self.values[self.index(args)]
    }

    /// Whether changing coordinate `j` alone can change the value.
    pub fn depends_on(&self, j: usize) -> bool {
        let m = self.carrier;
        let stride = m.pow((self.arity - 1 - j) as u32);
        (0..self.values.len()).any(|idx| {
            let digit = (idx / stride) % m;
            digit == 0
                && (1..m).any(|d| self.values[idx + d * stride] != self.values[idx])
        })
    }

    /// Highest essential coordinate plus one.
    pub fn essential_arity(&self) -> usize {
        (0..self.arity)
            .rev()
            .find(|&j| self.depends_on(j))
            .map_or(0, |j| j + 1)
    }

    /// Restriction to the first `n ≤ arity` coordinates, the rest fixed to 0.
    pub fn truncate(&self, n: usize) -> FinOpTable {
        assert!(n <= self.arity);
        let pad = self.carrier.pow((self.arity - n) as u32);
        FinOpTable {
            arity: n,
            carrier: self.carrier,
            values: self.values.iter().step_by(pad).copied().collect(),
        }
    }

    /// The same operation with dummy coordinates appended up to arity `n`.
    pub fn pad_to(&self, n: usize) -> Result<FinOpTable> {
        assert!(n >= self.arity);
        let extra = table_len(self.carrier, n - self.arity)?;
        table_len(self.carrier, n)?;
        let mut values = Vec::with_capacity(self.values.len() * extra);
        for &v in &self.values {
            values.extend(std::iter::repeat_n(v, extra));
        }
        Ok(FinOpTable {
            arity: n,
            carrier: self.carrier,
            values,
        })
    }

    /// Drops trailing inessential coordinates.
    pub fn essentialize(&self) -> FinOpTable {
        self.truncate(self.essential_arity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_row_major() {
        let all: Vec<_> = Tuples::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(Tuples::new(0, 3).count(), 1);
    }

    #[test]
    fn essential_arity_and_truncation() {
        let p0 = FinOpTable::projection(3, 0, 2);
        assert_eq!(p0.essential_arity(), 1);
        assert_eq!(p0.essentialize(), FinOpTable::projection(1, 0, 2));
        let meet = FinOpTable::from_values(2, 2, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(meet.essential_arity(), 2);
        let p1 = FinOpTable::projection(3, 1, 3);
        assert_eq!(p1.essential_arity(), 2);
        assert_eq!(FinOpTable::constant(2, 1, 3).essential_arity(), 0);
    }

    #[test]
    fn padding_adds_dummies() {
        let meet = FinOpTable::from_values(2, 2, vec![0, 0, 0, 1]).unwrap();
        let p = meet.pad_to(4).unwrap();
        for t in Tuples::new(4, 2) {
            assert_eq!(p.get(&t), meet.get(&t[..2]));
        }
        assert_eq!(p.essentialize(), meet);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FinOpTable::from_values(1, 2, vec![0, 2]).is_err());
        assert!(FinOpTable::from_values(1, 2, vec![0]).is_err());
        assert_eq!(FinOpTable::from_values(0, 0, vec![]), Err(Error::EmptyCarrier));
        assert!(matches!(
            FinOpTable::try_from_fn(30, 2, |_| 0),
            Err(Error::ResourceExhausted { .. })
        ));
    }
}
