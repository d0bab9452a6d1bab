use crate::error::{invalid, Result};
use crate::params::Mode;

/// Per-iteration exploit/explore tags with exploit:explore count ratio `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSchedule {
    pub tags: Vec<Mode>,
    pub q: f64,
}

impl ModeSchedule {
    pub fn exploit_count(&self) -> usize {
        self.tags.iter().filter(|m| **m == Mode::Exploit).count()
    }

    pub fn explore_count(&self) -> usize {
        self.tags.len() - self.exploit_count()
    }
}

/// Builds a maximally interleaved schedule of length `t_max` holding
/// `k = round(t_max * q / (1 + q))` exploit tags.
///
/// Tag `t` is exploit when `floor((t+1) k / t_max) > floor(t k / t_max)`, which
/// spreads the `k` exploit iterations evenly and starts with exploration.
pub fn build_mode_schedule(q: f64, t_max: usize) -> Result<ModeSchedule> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(invalid("q", format!("ratio must be positive and finite, got {q}")));
    }
    if t_max < 2 {
        return Err(invalid("t_max", format!("schedule needs at least 2 iterations, got {t_max}")));
    }
    let k = ((t_max as f64) * q / (1.0 + q)).round() as usize;
    let k = k.min(t_max);
    let total = t_max as u128;
    let k128 = k as u128;
    let tags = (0..total)
        .map(|t| {
            if (t + 1) * k128 / total > t * k128 / total {
                Mode::Exploit
            } else {
                Mode::Explore
            }
        })
        .collect();
    Ok(ModeSchedule { tags, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_ratio_alternates() {
        let s = build_mode_schedule(1.0, 10).unwrap();
        assert_eq!(s.exploit_count(), 5);
        assert_eq!(s.explore_count(), 5);
        for w in s.tags.windows(2) {
            assert_ne!(w[0], w[1]);
        }
    }

    #[test]
    fn fifth_ratio_counts() {
        let s = build_mode_schedule(0.2, 1000).unwrap();
        assert_eq!(s.exploit_count(), 167);
        assert_eq!(s.explore_count(), 833);
    }

    #[test]
    fn quarter_ratio_small() {
        let s = build_mode_schedule(0.25, 5).unwrap();
        assert_eq!(s.exploit_count(), 1);
        assert_eq!(s.explore_count(), 4);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(build_mode_schedule(0.0, 10).is_err());
        assert!(build_mode_schedule(-1.0, 10).is_err());
        assert!(build_mode_schedule(f64::NAN, 10).is_err());
        assert!(build_mode_schedule(0.2, 1).is_err());
    }

    proptest! {
        #[test]
        fn ratio_within_one_tag(q in 0.05f64..=0.4, t_max in 10usize..=10_000) {
            let s = build_mode_schedule(q, t_max).unwrap();
            let k = s.exploit_count() as f64;
            let e = s.explore_count() as f64;
            prop_assert_eq!(s.tags.len(), t_max);
            prop_assert!((k - q * e).abs() <= 1.0, "k={} e={} q={}", k, e, q);
        }

        #[test]
        fn exploit_tags_are_spread(q in 0.05f64..=1.0, t_max in 10usize..=2_000) {
            let s = build_mode_schedule(q, t_max).unwrap();
            let k = s.exploit_count();
            prop_assume!(k >= 2);
            let idx: Vec<usize> = s.tags.iter().enumerate()
                .filter(|(_, m)| **m == Mode::Exploit).map(|(i, _)| i).collect();
            let gaps: Vec<usize> = idx.windows(2).map(|w| w[1] - w[0]).collect();
            let lo = *gaps.iter().min().unwrap();
            let hi = *gaps.iter().max().unwrap();
            prop_assert!(hi - lo <= 1);
        }
    }
}
