// SPDX-License-Identifier: Apache-2.0

//! Whether a one-sided symbol, read as `Σ θ_j e_{j+1}`, lies in a space or in
//! its dual.

use super::SymbolSpec;
use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::spaces::{classify_series, SeriesClass, SpaceDescriptor};
use crate::verdict::{
    Certificate, FailureWitness, Outcome, Plateau, SeriesEntry, SupProfile, Verdict, Window,
};

/// `Σ_j |θ_j| a_{j+1,k} < ∞` for every `k <= k_max`.
pub fn membership_in_space(part: &SymbolSpec, space: &SpaceDescriptor, window: &Window) -> Verdict {
    let n = window.n;
    let (theta, ev) = match (part.log_abs_table(n), space.evaluator(n)) {
        (Ok(t), Ok(e)) => (t, e),
        (Err(e), _) | (_, Err(e)) => return Verdict::inconclusive(e.to_string(), window),
    };
    let mut entries = Vec::new();
    let mut undecided = None;
    for k in 1..=window.k_max {
        let terms: Vec<f64> = theta
            .iter()
            .enumerate()
            .map(|(j, &t)| {
                if t == f64::NEG_INFINITY {
                    t
                } else {
                    t + ev.log_weight(j + 1, k)
                }
            })
            .collect();
        let series = classify_series(&terms);
        match series.classification {
            SeriesClass::Convergent { limit } => entries.push(SeriesEntry { k, l: None, limit }),
            SeriesClass::Divergent => {
                return Verdict::new(
                    Outcome::FailsOnWindow {
                        witness: FailureWitness {
                            k: Some(k),
                            best_m: None,
                            growth: series.last_doubling_growth(),
                            n_range: [n / 2, n],
                            detail: format!("Σ |θ_j| a_(j+1,{k}) classified divergent"),
                        },
                    },
                    window,
                )
            }
            SeriesClass::Inconclusive => {
                undecided.get_or_insert(k);
            }
        }
    }
    if let Some(k) = undecided {
        return Verdict::inconclusive(
            format!("Σ |θ_j| a_(j+1,{k}) neither settled nor clearly divergent"),
            window,
        );
    }
    if space.is_finite_window() {
        return Verdict::inconclusive("tabulated data cannot certify an asymptotic claim", window);
    }
    Verdict::new(
        Outcome::Holds {
            certificate: Certificate::Series { entries },
        },
        window,
    )
}

/// `|θ_{n-1}| <= C a_{n,m}^{-1}`-type bound for some `m`: for the dual of
/// `Λ_∞(α)` the bound is `e^{m α_n}`, for the dual of `Λ_1(α)` it is
/// `e^{-α_n / m}`.
pub fn membership_in_dual(
    part: &SymbolSpec,
    space: &SpaceDescriptor,
    window: &Window,
) -> Result<Verdict> {
    let (alpha, infinite) = match space {
        SpaceDescriptor::PowerSeriesInfinite { alpha } => (alpha, true),
        SpaceDescriptor::PowerSeriesFinite { alpha } => (alpha, false),
        SpaceDescriptor::GeneralKoethe { .. } => {
            return Err(Error::Unsupported(
                "dual membership is implemented for power series spaces only".into(),
            ))
        }
    };
    let n = window.n;
    let (theta, a) = match (part.log_abs_table(n), alpha.table(n)) {
        (Ok(t), Ok(a)) => (t, a),
        (Err(e), _) | (_, Err(e)) => return Ok(Verdict::inconclusive(e.to_string(), window)),
    };
    let half = n / 2;
    let mut best: Option<(usize, f64)> = None;
    let mut all_growing = true;
    for m in 1..=window.m_max {
        let gap: Vec<f64> = theta
            .iter()
            .zip(&a)
            .map(|(&t, &an)| {
                if t == f64::NEG_INFINITY {
                    t
                } else if infinite {
                    t - m as f64 * an
                } else {
                    t + an / m as f64
                }
            })
            .collect();
        let p = Plateau::of(&SupProfile::from_gap(&gap, 1, half), window);
        match p {
            Plateau::Stable(log_c) => {
                if alpha.is_finite_window() {
                    return Ok(Verdict::inconclusive(
                        format!("bound holds with m = {m} on tabulated data only"),
                        window,
                    ));
                }
                return Ok(Verdict::new(
                    Outcome::Holds {
                        certificate: Certificate::Dual { m, log_c },
                    },
                    window,
                ));
            }
            Plateau::Growing(_) => {}
            Plateau::Unclear(_) => all_growing = false,
        }
        if best.is_none_or(|(_, g)| p.growth() < g) {
            best = Some((m, p.growth()));
        }
    }
    if all_growing {
        let (m, growth) = best.unwrap_or((1, f64::INFINITY));
        return Ok(Verdict::new(
            Outcome::FailsOnWindow {
                witness: FailureWitness {
                    k: None,
                    best_m: Some(m),
                    growth,
                    n_range: [half, n],
                    detail: format!(
                        "sup_n |θ_(n-1)| / bound_m(n) keeps growing for every m <= {}",
                        window.m_max
                    ),
                },
            },
            window,
        ));
    }
    Ok(Verdict::inconclusive(
        "the dual bound neither stabilised nor grew clearly for any m",
        window,
    ))
}

/// `log C` of the dual bound with a fixed `m`, over `n <= n_max`.
pub fn dual_constant(part: &SymbolSpec, space: &SpaceDescriptor, m: usize, n_max: usize) -> Result<LogValue> {
    let mut sup = LogValue::ZERO;
    for n in 1..=n_max {
        let t = part.log_abs(n - 1)?;
        if t.is_zero() {
            continue;
        }
        let bound = match space {
            SpaceDescriptor::PowerSeriesInfinite { alpha } => m as f64 * alpha.value(n)?,
            SpaceDescriptor::PowerSeriesFinite { alpha } => -alpha.value(n)? / m as f64,
            SpaceDescriptor::GeneralKoethe { .. } => {
                return Err(Error::Unsupported(
                    "dual membership is implemented for power series spaces only".into(),
                ))
            }
        };
        sup = sup.max(LogValue::from_log(t.log() - bound));
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::ExponentSequence;

    #[test]
    fn geometric_in_finite_type_space() {
        let w = Window::default();
        let s = SpaceDescriptor::finite(ExponentSequence::linear());
        // Σ r^j e^{-(j+1)/k} converges iff log r < 1/k
        assert!(membership_in_space(&SymbolSpec::geometric(0.5), &s, &w).holds());
        assert!(membership_in_space(&SymbolSpec::geometric(1.0), &s, &w).holds());
        assert!(membership_in_space(&SymbolSpec::geometric(2.0), &s, &w).fails());
    }

    #[test]
    fn delta_is_in_every_space() {
        let w = Window::default();
        for s in [
            SpaceDescriptor::finite(ExponentSequence::power(2.0)),
            SpaceDescriptor::infinite(ExponentSequence::linear()),
        ] {
            assert!(membership_in_space(&SymbolSpec::delta(), &s, &w).holds());
        }
    }

    #[test]
    fn delta_in_dual_of_finite_type() {
        let w = Window::default();
        let s = SpaceDescriptor::finite(ExponentSequence::linear());
        let v = membership_in_dual(&SymbolSpec::delta(), &s, &w).unwrap();
        match v.outcome {
            Outcome::Holds {
                certificate: Certificate::Dual { m, log_c },
            } => {
                assert_eq!(m, 1);
                // |θ_0| e^{α_1 / 1} = e
                assert!((log_c.log() - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(dual_constant(&SymbolSpec::delta(), &s, 1, 100).unwrap().log(), 1.0);
    }

    #[test]
    fn polynomial_growth_and_infinite_type_dual() {
        let w = Window::default();
        let inf = SpaceDescriptor::infinite(ExponentSequence::Log);
        // n^3 / (n+1)^3 still creeps upward at the window edge, so the
        // plateau is first seen at m = 4
        let v = membership_in_dual(&SymbolSpec::Polynomial { d: 3 }, &inf, &w).unwrap();
        assert!(matches!(
            v.outcome,
            Outcome::Holds {
                certificate: Certificate::Dual { m: 4, .. }
            }
        ));
        let fin = SpaceDescriptor::finite(ExponentSequence::linear());
        let v = membership_in_dual(&SymbolSpec::Polynomial { d: 2 }, &fin, &w).unwrap();
        assert!(v.fails(), "{v:?}");
    }

    #[test]
    fn general_space_is_unsupported() {
        let g = SpaceDescriptor::GeneralKoethe {
            weights: vec![vec![1.0]; 10],
        };
        assert!(matches!(
            membership_in_dual(&SymbolSpec::delta(), &g, &Window::default()),
            Err(Error::Unsupported(_))
        ));
    }
}
