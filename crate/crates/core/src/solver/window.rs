use std::collections::VecDeque;

/// The last `m_tilde + 1` objective values.
///
/// The window grows by one entry per accepted iterate until it is full and
/// then slides, so its length is `min(k, m_tilde) + 1` at iteration `k`.
#[derive(Debug, Clone)]
pub struct ObjectiveWindow {
    capacity: usize,
    values: VecDeque<f64>,
}

impl ObjectiveWindow {
    pub fn new(m_tilde: usize, initial: f64) -> Self {
        let mut values = VecDeque::with_capacity(m_tilde + 1);
        values.push_back(initial);
        Self {
            capacity: m_tilde + 1,
            values,
        }
    }

    pub fn push(&mut self, value: f64) {
        if self.values.len() == self.capacity {
            self.values.pop_front();
        }
        self.values.push_back(value);
    }

    /// Nonmonotone reference value, `max_j F(x_{k−j})`.
    pub fn reference(&self) -> f64 {
        nonmonotone_reference(self.values.iter().copied())
    }

    pub fn latest(&self) -> f64 {
        *self.values.back().expect("window is never empty")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied()
    }
}

/// Maximum of the stored objective values.
pub fn nonmonotone_reference(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}
