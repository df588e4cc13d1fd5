//! Reduced forms and height profiles of a few bracket words.
use dyckshift::{height_profile, reduce, Word};

fn main() -> dyckshift::Result<()> {
    let m = 2;
    for text in ["a1 b1", "a1 b2", "b2 a1 a2 b2", "b1 b2 a1", "a1 a2 b2 b1 a1"] {
        let word = Word::parse(text, m)?;
        let profile = height_profile(&word);
        println!(
            "{text:<16} -> {:<8} height {:>2}  min {:>2}",
            reduce(&word).to_string(),
            profile.last(),
            profile.min()
        );
    }
    Ok(())
}
