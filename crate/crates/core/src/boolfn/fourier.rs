use super::{coordinate_mask, BooleanFunction};

/// Walsh spectrum of `g = (−1)^f`: `coeffs[S] = 2^{−n} Σₓ (−1)^{f(x) + ⟨S,x⟩}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum {
    arity: usize,
    coeffs: Vec<f64>,
}

impl FourierSpectrum {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `ĝ(S)` for the subset encoded by index `s`.
    pub fn coeff(&self, s: u32) -> f64 {
        self.coeffs[s as usize]
    }

    /// `ĝ({i})` for coordinate `i` in `1..=n`.
    pub fn singleton(&self, i: usize) -> f64 {
        self.coeffs[coordinate_mask(i, self.arity) as usize]
    }

    /// Fourier weights `ĝ(S)²`.
    pub fn weights(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c * c).collect()
    }

    /// `Σ_S ĝ(S)²`, equal to 1 for any Boolean function.
    pub fn parseval_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `Inf_i[g] = Σ_{S∋i} ĝ(S)²`.
    pub fn influence(&self, i: usize) -> f64 {
        let mask = coordinate_mask(i, self.arity);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(s, _)| *s as u32 & mask != 0)
            .map(|(_, c)| c * c)
            .sum()
    }

    /// Inverts the transform and rounds back to a truth table.
    pub fn reconstruct(&self) -> BooleanFunction {
        let mut values = self.coeffs.clone();
        fwht(&mut values);
        BooleanFunction::from_fn(self.arity, |x| values[x as usize] < 0.0)
            .expect("spectrum arity was validated on construction")
    }
}

/// In-place unnormalised fast Walsh–Hadamard transform.
pub(crate) fn fwht(values: &mut [f64]) {
    let len = values.len();
    let mut h = 1;
    while h < len {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

pub fn walsh_transform(f: &BooleanFunction) -> FourierSpectrum {
    let mut values: Vec<f64> = (0..f.len() as u32).map(|x| f.sign(x)).collect();
    fwht(&mut values);
    let scale = 1.0 / f.len() as f64;
    for v in &mut values {
        *v *= scale;
    }
    FourierSpectrum { arity: f.arity(), coeffs: values }
}

/// Total influence `I[g] = Σ_S |S|·ĝ(S)²`.
pub fn total_influence(spec: &FourierSpectrum) -> f64 {
    spec.coeffs
        .iter()
        .enumerate()
        .map(|(s, c)| (s as u32).count_ones() as f64 * c * c)
        .sum()
}

/// `p = I[g]/2n − Σᵢ ĝ({i})/2n`, the Fourier form of the local violation
/// probability.
pub fn fourier_monotonicity_statistic(f: &BooleanFunction) -> f64 {
    let spec = walsh_transform(f);
    let n = f.arity() as f64;
    let singles: f64 = (1..=f.arity()).map(|i| spec.singleton(i)).sum();
    (total_influence(&spec) - singles) / (2.0 * n)
}
