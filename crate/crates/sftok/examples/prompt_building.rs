//! Prompt assembly for the three task kinds, the part toggles, and
//! structured-answer parsing.
//!
//! Usage: `cargo run --example prompt_building`

use sftok::{build_prompt, parse_choice, PromptBundle, TaskKind};

fn main() -> sftok::Result<()> {
    // Multiple choice: task instruction + input description up front,
    // enumerated options and the "Best Option:(" prefix after the video.
    let mc = PromptBundle::multiple_choice(
        "What does the person do after opening the fridge?",
        ["pours a drink", "takes out eggs", "closes it again"],
    );
    println!(
        "--- multiple choice ---\n{}\n",
        build_prompt(&mc)?.render(3680)
    );

    // Open-ended: by default no task instruction, but the input
    // description and the "In this video," prefix stay on.
    let open = PromptBundle::new(TaskKind::OpenEnded, "What is the man doing?");
    println!(
        "--- open ended ---\n{}\n",
        build_prompt(&open)?.render(3680)
    );

    // Every part can be toggled, down to the bare question.
    let mut bare = PromptBundle::new(TaskKind::TextGeneration, "Describe the video in detail.");
    bare.include_input_data = false;
    bare.include_structured_answer = false;
    println!(
        "--- bare question ---\n{}\n",
        build_prompt(&bare)?.render(3680)
    );

    // Model answers come back in assorted shapes; parsing is tolerant.
    for answer in [
        "Best Option:(B)",
        "(b) takes out eggs",
        "B. It takes out eggs.",
        "b",
    ] {
        println!("{answer:?} -> option {}", parse_choice(answer, 3)?);
    }

    // Out-of-range and unparseable answers are distinct errors.
    println!("{:?}", parse_choice("Best Option:(Z)", 3).unwrap_err());
    println!("{:?}", parse_choice("no idea", 3).unwrap_err());
    Ok(())
}
