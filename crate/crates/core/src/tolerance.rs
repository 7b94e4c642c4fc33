use crate::error::Error;
use crate::scalar::{lit, Real};

/// Numerical tolerance policy shared by every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceConfig<T> {
    /// Minimum chordal step between consecutive samples.
    pub eps_imm: T,
    /// Pivot threshold for numerical rank.
    pub eps_rank: T,
    /// Minimum chordal separation for embeddedness and antipode checks.
    pub eps_emb: T,
    /// Interior threshold on the max-min weight LP margin.
    pub delta_int: T,
    /// Loop-closure residual bound.
    pub eps_close: T,
    /// Nodal tantrix match bound.
    pub eps_tan: T,
    /// How far inside the open hemisphere a spherical region must sit.
    pub eps_hemi: T,
}

impl<T: Real> Default for ToleranceConfig<T> {
    fn default() -> Self {
        Self {
            eps_imm: lit(1e-12),
            eps_rank: lit(1e-10),
            eps_emb: lit(1e-8),
            delta_int: lit(1e-9),
            eps_close: lit(1e-8),
            eps_tan: lit(1e-6),
            eps_hemi: lit(1e-3),
        }
    }
}

impl<T: Real> ToleranceConfig<T> {
    pub fn validate(&self) -> Result<(), Error<T>> {
        let all = [
            ("eps_imm", self.eps_imm),
            ("eps_rank", self.eps_rank),
            ("eps_emb", self.eps_emb),
            ("delta_int", self.delta_int),
            ("eps_close", self.eps_close),
            ("eps_tan", self.eps_tan),
            ("eps_hemi", self.eps_hemi),
        ];
        for (name, value) in all {
            if !(value.is_finite() && value > T::zero()) {
                return Err(Error::InvalidTolerance(name));
            }
        }
        Ok(())
    }

    pub fn with_eps_emb(mut self, eps_emb: T) -> Self {
        self.eps_emb = eps_emb;
        self
    }
}
