//! Optional record of the algorithm steps taken during a computation.
//!
//! Labels are frozen strings of the form `"<algorithm>.step<n>"` so that
//! control flow can be compared against golden files.

use alloc::vec::Vec;

#[derive(Clone, Debug, Default)]
pub struct Trace {
    steps: Option<Vec<&'static str>>,
}

impl Trace {
    /// A trace that drops every label.
    pub fn off() -> Self {
        Trace { steps: None }
    }

    pub fn recording() -> Self {
        Trace { steps: Some(Vec::new()) }
    }

    #[inline]
    pub fn step(&mut self, label: &'static str) {
        if let Some(steps) = self.steps.as_mut() {
            steps.push(label);
        }
    }

    pub fn steps(&self) -> &[&'static str] {
        self.steps.as_deref().unwrap_or(&[])
    }

    pub fn into_steps(self) -> Vec<&'static str> {
        self.steps.unwrap_or_default()
    }
}
