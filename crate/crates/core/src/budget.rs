/// Work caps for the long-running computations.
///
/// `groebner_steps` bounds the number of single-term cancellations performed
/// during Buchberger reduction; `points` bounds the size of any exhaustive
/// enumeration over a finite field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub groebner_steps: u64,
    pub points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            groebner_steps: 2_000_000,
            points: 4_000_000,
        }
    }
}

impl Budget {
    pub fn with_steps(steps: u64) -> Self {
        Budget {
            groebner_steps: steps,
            ..Budget::default()
        }
    }

    pub fn with_points(mut self, points: u64) -> Self {
        self.points = points;
        self
    }
}
