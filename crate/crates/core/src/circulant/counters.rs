//! Per-thread operation counters for the transform kernels.
//!
//! Every forward/inverse transform call and every real multiplication done
//! by the FFT, RFFT and spectral multiply-accumulate loops is tallied here.
//! Counters are thread-local, so a test can `reset()`, run a kernel, and read
//! a `snapshot()` without interference from other threads.

use std::cell::Cell;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub forward_transforms: u64,
    pub inverse_transforms: u64,
    pub real_multiplies: u64,
}

impl std::ops::Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            forward_transforms: self.forward_transforms - rhs.forward_transforms,
            inverse_transforms: self.inverse_transforms - rhs.inverse_transforms,
            real_multiplies: self.real_multiplies - rhs.real_multiplies,
        }
    }
}

thread_local! {
    static COUNTS: Cell<OpCounts> = const { Cell::new(OpCounts {
        forward_transforms: 0,
        inverse_transforms: 0,
        real_multiplies: 0,
    }) };
}

pub fn reset() {
    COUNTS.with(|c| c.set(OpCounts::default()));
}

pub fn snapshot() -> OpCounts {
    COUNTS.with(|c| c.get())
}

/// Runs `f` and returns its result with the operations it performed.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, OpCounts) {
    let before = snapshot();
    let out = f();
    (out, snapshot() - before)
}

fn update(f: impl FnOnce(&mut OpCounts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

pub(crate) fn add_multiplies(n: u64) {
    update(|c| c.real_multiplies += n);
}

pub(crate) fn add_forward() {
    update(|c| c.forward_transforms += 1);
}

pub(crate) fn add_inverse() {
    update(|c| c.inverse_transforms += 1);
}
