use super::{BigRational, PolyQ};

/// Polynomial in `x` whose coefficients are polynomials in `t`, i.e. an
/// element of `Q[t][x]`. Coefficients are ascending in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyQt {
    coeffs: Vec<PolyQ>,
}

impl PolyQt {
    pub fn new(mut coeffs: Vec<PolyQ>) -> Self {
        while coeffs.last().is_some_and(PolyQ::is_zero) {
            coeffs.pop();
        }
        PolyQt { coeffs }
    }

    /// Embeds a polynomial in `x` with constant `t`-coefficients.
    pub fn from_x_poly(f: &PolyQ) -> Self {
        Self::new(f.coeffs().iter().cloned().map(PolyQ::constant).collect())
    }

    /// `p(x) - t q(x)`.
    pub fn fiber(p: &PolyQ, q: &PolyQ) -> Self {
        let n = p.coeffs().len().max(q.coeffs().len());
        Self::new(
            (0..n)
                .map(|i| PolyQ::new(vec![p.coeff(i), -q.coeff(i)]))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[PolyQ] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Substitutes `t = a`, giving a polynomial in `x`.
    pub fn specialize(&self, a: &BigRational) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| c.eval(a)).collect())
    }

    /// Derivative with respect to `x`.
    pub fn derivative_x(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigRational::from_integer(i.into())))
                .collect(),
        )
    }

    pub fn is_t_free(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_constant())
    }
}
