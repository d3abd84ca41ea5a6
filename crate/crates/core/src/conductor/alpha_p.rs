use crate::algebra::LaurentElem;
use crate::witt::WittVec;

use super::{ConductorKind, ConductorReport};

/// Drops the integral part of `b` and its polar monomials `c t^{pi}` with
/// `c ∈ K^p`; the result represents the same class in `L / L^p`, up to an
/// integral element.
pub fn alpha_p_reduce(b: &LaurentElem) -> LaurentElem {
    let p = b.characteristic();
    let terms = b
        .terms()
        .filter(|(e, c)| **e < 0 && !(**e % p as i64 == 0 && c.pth_root().is_some()))
        .map(|(e, c)| (*e, c.clone()));
    LaurentElem::from_terms(p, terms, None)
}

/// Conductor of the `α_p`-torsor `δ(b) ∈ L / L^p`: the least `j` with the
/// reduced representative in `t^{-(j-1)} O_L` for `p ∤ j`, in `t^{-j} O_L`
/// for `p | j`, and `0` when it is integral.
pub fn alpha_p_conductor(b: &LaurentElem) -> ConductorReport {
    let p = b.characteristic() as u64;
    let red = alpha_p_reduce(b);
    let d = red.pole_order() as u64;
    let value = match d {
        0 => 0,
        d if d % p == 0 => d,
        d => d + 1,
    };
    ConductorReport {
        value,
        kind: ConductorKind::AlphaP,
        descent_trace: Vec::new(),
        reduced_rep: Some(WittVec::new(b.characteristic(), vec![red])),
        interval: None,
        certificate: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{var, RatFunc};

    #[test]
    fn values() {
        let p = 3;
        let z = RatFunc::var(var::z(1), p);
        assert_eq!(alpha_p_conductor(&LaurentElem::t_pow(-1, p)).value, 2);
        assert_eq!(alpha_p_conductor(&LaurentElem::monomial(z.pow(3), -3)).value, 0);
        assert_eq!(alpha_p_conductor(&LaurentElem::monomial(z.clone(), -3)).value, 3);
        assert_eq!(alpha_p_conductor(&LaurentElem::monomial(z, 2)).value, 0);
        let b = LaurentElem::from_terms(p, [(-6, RatFunc::one(p)), (-2, RatFunc::one(p))], None);
        assert_eq!(alpha_p_conductor(&b).value, 3);
    }
}
