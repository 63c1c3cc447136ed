//! Shape of the bundled corpora.

use patinfo::{Pattern, Tokenization};

fn load(name: &str, mode: Tokenization) -> Pattern {
    let bytes = std::fs::read(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    mode.tokenize(&bytes).unwrap()
}

#[test]
fn digit_corpora_have_a_thousand_tokens() {
    let fib = load("fibonacci.txt", Tokenization::Token);
    assert_eq!((fib.len(), fib.k()), (1000, 10));
    let random = load("random.txt", Tokenization::Token);
    assert_eq!((random.len(), random.k()), (1000, 2));
    let structured = load("structured.txt", Tokenization::Token);
    assert_eq!((structured.len(), structured.k()), (1000, 2));
}

// The listing counts 1 once: 0, 1, 2, 3, 5, 8, ...
#[test]
fn fibonacci_listing_is_the_digit_stream_without_the_repeated_one() {
    let fib = load("fibonacci.txt", Tokenization::Token);
    let mut joined = Vec::new();
    for s in fib.symbols() {
        s.write_raw(&mut joined);
    }
    let mut stream = patinfo::generators::fibonacci_digits(1001);
    stream.remove(2);
    assert_eq!(String::from_utf8(joined).unwrap(), stream);
}

#[test]
fn english_excerpt_is_a_thousand_characters() {
    let text = std::fs::read_to_string(format!("{}/data/english.txt", env!("CARGO_MANIFEST_DIR")))
        .unwrap();
    assert_eq!(text.trim_end_matches('\n').chars().count(), 1000);
    assert_eq!(load("english.txt", Tokenization::Token).len(), 153);
}
