//! Minimal excludant and an incremental variant for growing value sets.

/// Smallest nonnegative integer not contained in `values`.
///
/// `values` is treated as a set; duplicates are allowed. The mex of a
/// collection of k values is at most k, so only values below that bound
/// matter.
pub fn mex(values: &[u64]) -> u64 {
    let bound = values.len();
    let mut present = vec![false; bound + 1];
    for &v in values {
        if (v as usize) <= bound {
            present[v as usize] = true;
        }
    }
    present
        .iter()
        .position(|&p| !p)
        .expect("a gap always exists below len+1") as u64
}

/// Tracks the mex of a set that only ever grows.
///
/// Inserting n values and querying costs O(n) total: the cursor only
/// moves forward as gaps below it are filled.
#[derive(Debug, Clone, Default)]
pub struct MexTracker {
    present: Vec<bool>,
    cursor: u64,
}

impl MexTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, value: u64) {
        let idx = value as usize;
        if idx >= self.present.len() {
            self.present.resize(idx + 1, false);
        }
        self.present[idx] = true;
        while (self.cursor as usize) < self.present.len() && self.present[self.cursor as usize] {
            self.cursor += 1;
        }
    }

    /// Current mex of everything inserted so far.
    pub fn mex(&self) -> u64 {
        self.cursor
    }
}
