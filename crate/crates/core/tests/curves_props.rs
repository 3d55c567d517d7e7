use heaps_core::corpus::{census, TokenStream};
use heaps_core::curves::{
    aggregate, default_ladder, logsample_curve, logsample_sizes, partition_curve, prefix_curve, Statistic,
    TypeTokenCurve,
};
use proptest::prelude::*;

/// Token streams over a small alphabet so that types repeat.
fn stream() -> impl Strategy<Value = TokenStream> {
    proptest::collection::vec(0u8..12, 1..400).prop_map(|v| {
        let tokens = v.iter().map(|&i| ((b'a' + i) as char).to_string()).collect();
        TokenStream::from_tokens("s", tokens).unwrap()
    })
}

proptest! {
    #[test]
    fn prefix_increments_are_zero_or_one(s in stream()) {
        let c = prefix_curve(&s);
        prop_assert_eq!(c.len(), s.len());
        prop_assert_eq!(c.points[0].types, 1.0);
        for w in c.points.windows(2) {
            let d = w[1].types - w[0].types;
            prop_assert!(d == 0.0 || d == 1.0);
            prop_assert_eq!(w[1].tokens, w[0].tokens + 1);
        }
        for p in &c.points {
            prop_assert!(p.types <= p.tokens as f64);
        }
        prop_assert_eq!(c.points.last().unwrap().types, census(&s).num_types() as f64);
    }

    #[test]
    fn partition_is_bounded_and_subadditive(s in stream(), size in 1usize..60) {
        prop_assume!(2 * size <= s.len());
        let single = partition_curve(&s, &[size]).unwrap();
        let double = partition_curve(&s, &[2 * size]).unwrap();
        prop_assert_eq!(single.len(), s.len() / size);
        let k = census(&s).num_types() as f64;
        for p in &single.points {
            prop_assert!(p.types >= 1.0 && p.types <= (size as f64).min(k));
        }
        // A window of 2s tokens is the union of two adjacent s-windows.
        for (j, big) in double.points.iter().enumerate() {
            let a = single.points[2 * j].types;
            let b = single.points[2 * j + 1].types;
            prop_assert!(big.types <= a + b);
            prop_assert!(big.types >= a.max(b));
        }
    }

    #[test]
    fn whole_text_window_is_the_census(s in stream()) {
        let c = partition_curve(&s, &[s.len()]).unwrap();
        prop_assert_eq!(c.len(), 1);
        prop_assert_eq!(c.points[0].types, census(&s).num_types() as f64);
    }

    #[test]
    fn logsample_is_a_subset_of_prefix(s in stream(), ratio in 1.005f64..3.0) {
        let prefix = prefix_curve(&s);
        let sampled = logsample_curve(&prefix, ratio).unwrap();
        let sizes = logsample_sizes(s.len() as u64, ratio).unwrap();
        prop_assert_eq!(sampled.len(), sizes.len());
        for w in sizes.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for p in &sampled.points {
            prop_assert!(p.tokens >= 1 && p.tokens <= s.len() as u64);
            prop_assert_eq!(p.types, prefix.points[p.tokens as usize - 1].types);
        }
    }

    #[test]
    fn aggregation_keeps_one_point_per_size(s in stream()) {
        let c = partition_curve(&s, &default_ladder(s.len().max(100))
            .into_iter()
            .filter(|&n| n <= s.len())
            .chain([1, 2, 3].into_iter().filter(|&n| n <= s.len()))
            .collect::<Vec<_>>()).unwrap();
        for stat in [Statistic::Median, Statistic::Mean] {
            let a = aggregate(&c, stat);
            prop_assert_eq!(a.len(), c.distinct_sizes());
            for p in &a.points {
                let vals: Vec<f64> = c.points.iter().filter(|q| q.tokens == p.tokens).map(|q| q.types).collect();
                let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(p.types >= lo && p.types <= hi);
            }
            let again = aggregate(&a, stat);
            prop_assert_eq!(&again.points, &a.points);
        }
    }

    #[test]
    fn csv_roundtrip(s in stream()) {
        let c = prefix_curve(&s);
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        prop_assert_eq!(TypeTokenCurve::read_csv(buf.as_slice()).unwrap(), c);
    }
}
