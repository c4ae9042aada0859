//! Boxed-answer extraction and exact answer equivalence.
//!
//! Run with: cargo run --example answer_parsing

use verivote::{answers_equal, canonicalize, extract_boxed, parse_judgment};

fn main() {
    let trace = "Let x be the smaller root. Testing x = 1/2 first... \
                 actually both roots work, so the smaller is \\boxed{-\\frac{3}{2}} \
                 and the final answer is \\boxed{\\frac{1}{2}}.";
    println!("solver trace:\n  {trace}\n");
    println!(
        "last boxed expression wins: {:?}",
        extract_boxed(trace).unwrap()
    );

    println!("\ncanonicalization:");
    for raw in [
        "  $0.5$. ",
        "\\frac{2}{4}",
        "\\left(3\\right)",
        "x+1",
        "True",
    ] {
        let c = canonicalize(raw);
        match &c.numeric {
            Some(r) => println!(
                "  {raw:>18?} -> canonical {:?}, exact value {r}",
                c.canonical
            ),
            None => println!("  {raw:>18?} -> canonical {:?}", c.canonical),
        }
    }

    println!("\nequivalence is exact-rational, never floating point:");
    for (a, b) in [("1/2", "0.5"), ("1/3", "0.333"), ("\\frac{2}{4}", "0.50")] {
        println!("  answers_equal({a:?}, {b:?}) = {}", answers_equal(a, b));
    }

    println!("\ncritique judgments come from the terminal boxed token:");
    for text in [
        "Step 3 is correct.\n\\boxed{True}",
        "The sign flips in step 2.\n\\boxed{False}",
        "I cannot tell.",
    ] {
        println!(
            "  {:?} -> {:?}",
            text.lines().last().unwrap(),
            parse_judgment(text)
        );
    }
}
