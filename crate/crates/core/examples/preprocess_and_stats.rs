//! Text normalization and corpus statistics.
//!
//! ```bash
//! cargo run --example preprocess_and_stats
//! ```

use onubhuti::corpus::{compute_stats, preprocess, Emotion, LabelVector, RawRecord};

fn main() {
    println!("== Preprocessing ==");
    let samples = [
        "ভালো!!  খুব   ভালো।",
        "great 😀 job ❤️",
        "কি অবস্থা? #প্রশ্ন",
        "।।!?…",
    ];
    for raw in samples {
        println!("  \"{raw}\" -> \"{}\"", preprocess(raw));
    }

    println!("\n== Corpus statistics ==");
    let mut records = vec![
        RawRecord::new(0, "ভালোবাসা রইলো। শুভ কামনা!", LabelVector::only(Emotion::Love)),
        RawRecord::new(1, "আজ আনন্দের দিন। খুব খুশি!", LabelVector::only(Emotion::Joy)),
        RawRecord::new(2, "অবাক হলাম!", LabelVector::only(Emotion::Surprise)),
        RawRecord::new(3, "রাগ হচ্ছে খুব", LabelVector::only(Emotion::Anger)),
        RawRecord::new(
            4,
            "মন খারাপ। খুব দুঃখ পেলাম।",
            LabelVector::only(Emotion::Sadness),
        ),
        RawRecord::new(5, "ভয় লাগছে", LabelVector::only(Emotion::Fear)),
    ];
    // One multi-label record: joy and love together.
    let mut both = LabelVector::only(Emotion::Joy);
    both.set(Emotion::Love, true);
    records.push(RawRecord::new(6, "ভালোবাসা আর আনন্দ একসাথে", both));
    for (i, platform) in ["YouTube", "YouTube", "Facebook"].iter().enumerate() {
        records[i].platform = Some(platform.to_string());
    }

    let stats = compute_stats(&records, 5).expect("corpus is non-empty");
    println!("  records:                {}", stats.record_count);
    println!("  per-label counts:       {:?}", stats.per_label_counts);
    println!(
        "  sentences per entry:    {:.2} ± {:.2}",
        stats.avg_sentences_per_entry.mean, stats.avg_sentences_per_entry.std
    );
    println!(
        "  words per sentence:     {:.2} ± {:.2}",
        stats.avg_words_per_sentence.mean, stats.avg_words_per_sentence.std
    );
    println!(
        "  multi-label fraction:   {:.4}",
        stats.multi_label_fraction
    );
    if let Some(shares) = &stats.platform_shares {
        for (platform, share) in shares {
            println!("  platform {platform}: {share:.4}");
        }
    }
    println!("  top terms:");
    for (term, count) in &stats.top_terms {
        println!("    {count:>3}  {term}");
    }
}
