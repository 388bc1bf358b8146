use crate::scalar::Real;

/// Truncation rule shared by every series in the crate: stop once two
/// consecutive terms fall below `rel_tol · |partial sum|`.
///
/// A single small term is not enough, because double series and
/// alternating sums can have isolated tiny terms well before the tail.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StopRule<T> {
    rel_tol: T,
    small_run: u8,
}

impl<T: Real> StopRule<T> {
    pub(crate) fn new(rel_tol: T) -> Self {
        Self { rel_tol, small_run: 0 }
    }

    /// Feeds the latest term and the partial sum that already includes it.
    /// Returns `true` when the series may be truncated.
    pub(crate) fn update(&mut self, term: T, sum: T) -> bool {
        if term.abs() <= self.rel_tol * sum.abs() {
            self.small_run = self.small_run.saturating_add(1);
        } else {
            self.small_run = 0;
        }
        self.small_run >= 2
    }
}
