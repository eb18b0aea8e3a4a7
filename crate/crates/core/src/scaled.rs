//! Floating-point values carried with a separate natural-log scale.
//!
//! Jacobi polynomials with weight exponents in the thousands reach
//! magnitudes far outside the `f64` range (`P_n(1)` and `κ_n` both grow like
//! `2^α`). A [`Scaled`] keeps `mantissa · e^{ln_scale}` and only collapses to
//! a plain double when asked.

/// `mantissa · exp(ln_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub ln_scale: f64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { mantissa: 0.0, ln_scale: 0.0 };

    pub fn new(mantissa: f64, ln_scale: f64) -> Self {
        Self { mantissa, ln_scale }
    }

    pub fn from_f64(value: f64) -> Self {
        Self { mantissa: value, ln_scale: 0.0 }
    }

    /// Builds `sign · exp(ln_abs)`.
    pub fn from_ln(ln_abs: f64, negative: bool) -> Self {
        Self { mantissa: if negative { -1.0 } else { 1.0 }, ln_scale: ln_abs }
    }

    /// Collapses to a double; may overflow to ±inf or underflow to 0.
    pub fn to_f64(self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        self.mantissa * self.ln_scale.exp()
    }

    /// `ln |value|`, `-inf` for zero.
    pub fn ln_abs(self) -> f64 {
        self.mantissa.abs().ln() + self.ln_scale
    }

    pub fn is_negative(self) -> bool {
        self.mantissa < 0.0
    }

    pub fn scale_ln(self, ln_factor: f64) -> Scaled {
        Scaled::new(self.mantissa, self.ln_scale + ln_factor)
    }

    /// Moves the magnitude of the mantissa into the scale so the mantissa
    /// lies in `[1, e)`.
    pub fn normalized(self) -> Scaled {
        if self.mantissa == 0.0 || !self.mantissa.is_finite() {
            return self;
        }
        let l = self.mantissa.abs().ln();
        Scaled::new(self.mantissa.signum(), self.ln_scale + l)
    }

    /// Expresses the value relative to `exp(reference)`.
    pub fn relative_to(self, reference: f64) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        self.mantissa * (self.ln_scale - reference).exp()
    }
}

impl std::ops::Mul for Scaled {
    type Output = Scaled;

    fn mul(self, other: Scaled) -> Scaled {
        Scaled::new(self.mantissa * other.mantissa, self.ln_scale + other.ln_scale).normalized()
    }
}

/// Compensated (Neumaier) accumulator whose running total is kept relative
/// to the largest scale seen so far. Terms are summed in the order they are
/// pushed.
#[derive(Debug, Clone, Copy)]
pub struct ScaledSum {
    sum: f64,
    comp: f64,
    ln_scale: f64,
}

impl Default for ScaledSum {
    fn default() -> Self {
        Self { sum: 0.0, comp: 0.0, ln_scale: f64::NEG_INFINITY }
    }
}

impl ScaledSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, term: Scaled) {
        if term.mantissa == 0.0 {
            return;
        }
        let t = term.normalized();
        if t.ln_scale > self.ln_scale {
            let shrink = (self.ln_scale - t.ln_scale).exp();
            self.sum *= shrink;
            self.comp *= shrink;
            self.ln_scale = t.ln_scale;
        }
        let x = t.mantissa * (t.ln_scale - self.ln_scale).exp();
        let s = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - s) + x;
        } else {
            self.comp += (x - s) + self.sum;
        }
        self.sum = s;
    }

    pub fn total(&self) -> Scaled {
        if self.ln_scale == f64::NEG_INFINITY {
            return Scaled::ZERO;
        }
        Scaled::new(self.sum + self.comp, self.ln_scale)
    }
}

/// Plain compensated summation in push order.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        let s = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - s) + x;
        } else {
            self.comp += (x - s) + self.sum;
        }
        self.sum = s;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
