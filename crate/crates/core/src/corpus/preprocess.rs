//! Text normalization: strip punctuation and emoji, collapse whitespace.

use std::sync::OnceLock;

use regex::Regex;

/// Codepoints removed during normalization: every Unicode punctuation
/// character (general categories P*), the Bangla danda and double danda,
/// everything carrying the Extended_Pictographic property (emoji), and the
/// emoji plumbing codepoints (variation selectors and the keycap mark).
fn strip_pattern() -> &'static Regex {
    static PATTERN: OnceLock<Regex> = OnceLock::new();
    PATTERN.get_or_init(|| {
        Regex::new(r"[\p{P}\u{0964}\u{0965}\p{Extended_Pictographic}\u{FE0E}\u{FE0F}\u{20E3}]")
            .expect("the strip pattern is a valid regex")
    })
}

/// Zero-width joiners are kept inside Bangla words (conjunct control) but a
/// token with nothing else left is emoji residue.
fn invisible_only(token: &str) -> bool {
    token.chars().all(|c| matches!(c, '\u{200C}' | '\u{200D}'))
}

/// Normalize raw comment text: remove punctuation and emoji, collapse runs
/// of whitespace to a single space and trim the ends.
///
/// Total and idempotent; may return an empty string.
pub fn preprocess(text: &str) -> String {
    let stripped = strip_pattern().replace_all(text, "");
    let mut out = String::with_capacity(stripped.len());
    for token in stripped.split_whitespace() {
        if invisible_only(token) {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(token);
    }
    out
}
