use std::collections::HashSet;

use heaps_core::corpus::{census, strip_gutenberg, tokenize, RawText};
use proptest::prelude::*;

fn text() -> impl Strategy<Value = String> {
    // Letters, apostrophes, punctuation, digits and a few non-ASCII letters.
    proptest::string::string_regex("[a-zA-Z' ,.!?\n0-9éÉß’-]{0,300}").unwrap()
}

proptest! {
    #[test]
    fn tokenizing_tokens_is_identity(s in text()) {
        if let Ok(stream) = tokenize(&RawText::new("t", s)) {
            let again = tokenize(&RawText::new("t", stream.tokens().join(" "))).unwrap();
            prop_assert_eq!(again.tokens(), stream.tokens());
        }
    }

    #[test]
    fn tokens_are_normalized(s in text()) {
        if let Ok(stream) = tokenize(&RawText::new("t", s)) {
            for t in stream.tokens() {
                prop_assert!(!t.is_empty());
                prop_assert!(!t.starts_with('\'') && !t.ends_with('\''));
                prop_assert_eq!(t.to_lowercase(), t.clone());
                prop_assert!(t.chars().all(|c| c.is_alphabetic() || c == '\''));
            }
        }
    }

    #[test]
    fn census_accounts_for_every_token(s in text()) {
        if let Ok(stream) = tokenize(&RawText::new("t", s)) {
            let c = census(&stream);
            prop_assert_eq!(c.total_tokens(), stream.len() as u64);
            prop_assert_eq!(c.count_vector().iter().sum::<u64>(), stream.len() as u64);
            let distinct: HashSet<&String> = stream.tokens().iter().collect();
            prop_assert_eq!(c.num_types(), distinct.len());
            let (ids, k) = stream.type_ids();
            prop_assert_eq!(k, distinct.len());
            prop_assert!(ids.iter().all(|&i| (i as usize) < k));
        }
    }

    #[test]
    fn stripping_keeps_the_body(header in text(), body in "[a-z]{1,20}( [a-z]{1,20}){0,20}", footer in text()) {
        let doc = format!(
            "{header}\n*** START OF THE PROJECT GUTENBERG EBOOK X ***\n{body}\n*** END OF THE PROJECT GUTENBERG EBOOK X ***\n{footer}"
        );
        let s = strip_gutenberg(RawText::new("t", doc)).unwrap();
        prop_assert!(s.boilerplate_found);
        prop_assert_eq!(s.text.content, body);
    }

    #[test]
    fn deterministic(s in text()) {
        let a = tokenize(&RawText::new("t", s.clone())).ok();
        let b = tokenize(&RawText::new("t", s)).ok();
        prop_assert_eq!(a, b);
    }
}
