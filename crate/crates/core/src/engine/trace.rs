use std::fmt;

/// One proof step: `step=<name> case=<case> sizes=<a,b,...>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub step: &'static str,
    pub case: String,
    pub sizes: Vec<usize>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.sizes.iter().map(usize::to_string).collect();
        write!(f, "step={} case={} sizes={}", self.step, self.case, sizes.join(","))
    }
}

/// Collects proof steps when enabled; a disabled trace costs one branch.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    enabled: bool,
    steps: Vec<TraceStep>,
}

impl Trace {
    pub fn enabled() -> Self {
        Trace { enabled: true, steps: Vec::new() }
    }

    pub fn disabled() -> Self {
        Trace::default()
    }

    pub fn record(&mut self, step: &'static str, case: impl fmt::Display, sizes: &[usize]) {
        if self.enabled {
            self.steps.push(TraceStep { step, case: case.to_string(), sizes: sizes.to_vec() });
        }
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn render(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_is_parseable() {
        let mut t = Trace::enabled();
        t.record("mindegree", 1, &[12, 3]);
        assert_eq!(t.render(), "step=mindegree case=1 sizes=12,3\n");
        let mut off = Trace::disabled();
        off.record("x", "y", &[]);
        assert!(off.steps().is_empty());
    }
}
