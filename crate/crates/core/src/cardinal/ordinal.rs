//! Ordinals below ω^ω in Cantor normal form.
//!
//! These only index alephs, so the supported arithmetic is the small part
//! needed for that: comparison, successor, ordinal addition (used when
//! parsing sums such as `w+w`) and the limit test.

use std::fmt;

/// `ω^e₁·c₁ + … + ω^e_k·c_k + constant` with `e₁ > … > e_k ≥ 1` and every `cᵢ ≥ 1`.
///
/// Field order matters: the derived `Ord` compares `terms` lexicographically
/// (a proper prefix is smaller) and only then `constant`, which is exactly the
/// ordinal order on normal forms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OrdinalCnf {
    terms: Vec<(u32, u64)>,
    constant: u64,
}

impl OrdinalCnf {
    pub const ZERO: OrdinalCnf = OrdinalCnf {
        terms: Vec::new(),
        constant: 0,
    };

    pub fn finite(n: u64) -> Self {
        OrdinalCnf {
            terms: Vec::new(),
            constant: n,
        }
    }

    /// `ω`.
    pub fn omega() -> Self {
        Self::omega_term(1, 1)
    }

    /// `ω^exponent · coefficient`; an exponent of 0 gives the finite ordinal.
    pub fn omega_term(exponent: u32, coefficient: u64) -> Self {
        if exponent == 0 {
            return Self::finite(coefficient);
        }
        if coefficient == 0 {
            return Self::ZERO;
        }
        OrdinalCnf {
            terms: vec![(exponent, coefficient)],
            constant: 0,
        }
    }

    /// Builds a normal form, rejecting anything that is not strictly decreasing
    /// with positive coefficients.
    pub fn from_parts(terms: Vec<(u32, u64)>, constant: u64) -> Option<Self> {
        let decreasing = terms.windows(2).all(|w| w[0].0 > w[1].0);
        let positive = terms.iter().all(|&(e, c)| e >= 1 && c >= 1);
        (decreasing && positive).then_some(OrdinalCnf { terms, constant })
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn constant(&self) -> u64 {
        self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant == 0
    }

    pub fn is_finite(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero and without a finite trailing part. Every such ordinal here has
    /// cofinality ω: the lowest term `ω^e·c` is approached by `ω^(e-1)·n`.
    pub fn is_limit(&self) -> bool {
        !self.terms.is_empty() && self.constant == 0
    }

    pub fn successor(&self) -> Self {
        OrdinalCnf {
            terms: self.terms.clone(),
            constant: self
                .constant
                .checked_add(1)
                .expect("ordinal constant overflow"),
        }
    }

    /// Ordinal (left-absorbing) addition `self + rhs`.
    pub fn add(&self, rhs: &OrdinalCnf) -> OrdinalCnf {
        let Some(&(lead_exp, lead_coef)) = rhs.terms.first() else {
            return OrdinalCnf {
                terms: self.terms.clone(),
                constant: self
                    .constant
                    .checked_add(rhs.constant)
                    .expect("ordinal constant overflow"),
            };
        };
        // Terms of `self` below rhs's leading exponent are absorbed.
        let mut terms: Vec<(u32, u64)> = self
            .terms
            .iter()
            .copied()
            .filter(|&(e, _)| e >= lead_exp)
            .collect();
        match terms.last_mut() {
            Some(last) if last.0 == lead_exp => {
                last.1 = last.1.checked_add(lead_coef).expect("ordinal overflow");
                terms.extend_from_slice(&rhs.terms[1..]);
            }
            _ => terms.extend_from_slice(&rhs.terms),
        }
        OrdinalCnf {
            terms,
            constant: rhs.constant,
        }
    }
}

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for &(e, c) in &self.terms {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            f.write_str("w")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            if c != 1 {
                write!(f, "*{c}")?;
            }
        }
        if self.constant > 0 {
            if !first {
                f.write_str("+")?;
            }
            write!(f, "{}", self.constant)?;
        }
        Ok(())
    }
}
