use crate::scalar::Real;

/// Generalized Laguerre polynomial L_k^{(a)}(x) by the three-term recurrence
/// (n+1) L_{n+1} = (2n + 1 + a − x) L_n − (n + a) L_{n−1}.
pub fn laguerre<T: Real>(k: usize, a: T, x: T) -> T {
    let mut iter = LaguerreSeq::new(a, x);
    let mut value = iter.current();
    for _ in 0..k {
        value = iter.advance();
    }
    value
}

/// Streams L_0^{(a)}(x), L_1^{(a)}(x), … for a fixed (a, x).
#[derive(Debug, Clone, Copy)]
pub(crate) struct LaguerreSeq<T> {
    a: T,
    x: T,
    n: usize,
    prev: T,
    cur: T,
}

impl<T: Real> LaguerreSeq<T> {
    pub(crate) fn new(a: T, x: T) -> Self {
        Self {
            a,
            x,
            n: 0,
            prev: T::zero(),
            cur: T::one(),
        }
    }

    pub(crate) fn current(&self) -> T {
        self.cur
    }

    /// Moves to the next degree and returns it.
    pub(crate) fn advance(&mut self) -> T {
        let n = T::from_count(self.n);
        let next = if self.n == 0 {
            T::one() + self.a - self.x
        } else {
            ((T::lit(2.0) * n + T::one() + self.a - self.x) * self.cur - (n + self.a) * self.prev) / (n + T::one())
        };
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        next
    }
}
