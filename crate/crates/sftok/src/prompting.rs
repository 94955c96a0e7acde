//! Three-part prompt assembly (task instruction, input data description,
//! structured answer prefix) and parsing of multiple-choice answers.
//!
//! The full LLM input always orders as: pre-visual text, visual tokens,
//! post-visual text (question, options, answer prefix).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Task instruction for open-ended question answering and text generation.
pub const OPEN_ENDED_INSTRUCTION: &str = "Answer the question precisely based on the input";
/// Task instruction for multiple-choice question answering.
pub const MULTIPLE_CHOICE_INSTRUCTION: &str = "Select the best option to answer the question";
/// Input data description shared by every task.
pub const INPUT_DATA_PROMPT: &str = "The input consists of a sequence of key frames from a video";
/// Answer prefix steering multiple-choice outputs into a parseable form.
pub const MULTIPLE_CHOICE_ANSWER_PREFIX: &str = "Best Option:(";
/// Answer prefix steering open-ended and text-generation outputs.
pub const OPEN_ENDED_ANSWER_PREFIX: &str = "In this video,";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    OpenEnded,
    MultipleChoice,
    TextGeneration,
}

impl TaskKind {
    /// The kind-specific task instruction sentence.
    pub fn instruction(&self) -> &'static str {
        match self {
            TaskKind::MultipleChoice => MULTIPLE_CHOICE_INSTRUCTION,
            TaskKind::OpenEnded | TaskKind::TextGeneration => OPEN_ENDED_INSTRUCTION,
        }
    }

    /// The kind-specific structured answer prefix.
    pub fn answer_prefix(&self) -> &'static str {
        match self {
            TaskKind::MultipleChoice => MULTIPLE_CHOICE_ANSWER_PREFIX,
            TaskKind::OpenEnded | TaskKind::TextGeneration => OPEN_ENDED_ANSWER_PREFIX,
        }
    }
}

/// A question plus the three prompt-part toggles.
///
/// Defaults follow the tuned recipe: task instruction only for multiple
/// choice, input data description and structured answer prefix for every
/// task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBundle")]
pub struct PromptBundle {
    pub task_kind: TaskKind,
    pub include_task_instruction: bool,
    pub include_input_data: bool,
    pub include_structured_answer: bool,
    pub question: String,
    /// Labeled (A), (B), ... in order; present iff multiple choice.
    pub options: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    task_kind: TaskKind,
    question: String,
    #[serde(default)]
    include_task_instruction: Option<bool>,
    #[serde(default)]
    include_input_data: Option<bool>,
    #[serde(default)]
    include_structured_answer: Option<bool>,
    #[serde(default)]
    options: Option<Vec<String>>,
}

impl TryFrom<RawBundle> for PromptBundle {
    type Error = Error;

    fn try_from(raw: RawBundle) -> Result<Self> {
        let mut bundle = PromptBundle::new(raw.task_kind, raw.question);
        if let Some(v) = raw.include_task_instruction {
            bundle.include_task_instruction = v;
        }
        if let Some(v) = raw.include_input_data {
            bundle.include_input_data = v;
        }
        if let Some(v) = raw.include_structured_answer {
            bundle.include_structured_answer = v;
        }
        bundle.options = raw.options;
        bundle.validate()?;
        Ok(bundle)
    }
}

impl PromptBundle {
    /// Bundle with the default toggles for `task_kind` and no options.
    pub fn new(task_kind: TaskKind, question: impl Into<String>) -> Self {
        Self {
            task_kind,
            include_task_instruction: task_kind == TaskKind::MultipleChoice,
            include_input_data: true,
            include_structured_answer: true,
            question: question.into(),
            options: None,
        }
    }

    /// Multiple-choice bundle with default toggles.
    pub fn multiple_choice(
        question: impl Into<String>,
        options: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        let mut bundle = Self::new(TaskKind::MultipleChoice, question);
        bundle.options = Some(options.into_iter().map(Into::into).collect());
        bundle
    }

    pub fn validate(&self) -> Result<()> {
        if self.question.trim().is_empty() {
            return Err(Error::InvalidConfig("question must be non-empty".into()));
        }
        match (self.task_kind, &self.options) {
            (TaskKind::MultipleChoice, None) => Err(Error::MissingOptions),
            (TaskKind::MultipleChoice, Some(opts)) if opts.is_empty() => Err(Error::MissingOptions),
            (TaskKind::MultipleChoice, Some(opts)) if opts.len() > 26 => Err(Error::InvalidConfig(
                format!("{} options exceed the A..Z labels", opts.len()),
            )),
            (TaskKind::MultipleChoice, Some(_)) => Ok(()),
            (_, Some(_)) => Err(Error::UnexpectedOptions),
            (_, None) => Ok(()),
        }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

/// Text surrounding the visual-token span, in LLM input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssembledInput {
    pub pre_visual_text: String,
    pub post_visual_text: String,
}

impl AssembledInput {
    /// Render as UTF-8 with the visual span marked by a placeholder line.
    pub fn render(&self, n_visual_tokens: usize) -> String {
        let mut out = String::new();
        if !self.pre_visual_text.is_empty() {
            out.push_str(&self.pre_visual_text);
            out.push('\n');
        }
        out.push_str(&format!("<VISUAL_TOKENS n={n_visual_tokens}>\n"));
        out.push_str(&self.post_visual_text);
        out
    }
}

/// Uppercase label for the `i`-th option.
pub fn option_letter(index: usize) -> char {
    debug_assert!(index < 26);
    (b'A' + index as u8) as char
}

/// Assemble the pre- and post-visual text for a bundle.
pub fn build_prompt(bundle: &PromptBundle) -> Result<AssembledInput> {
    bundle.validate()?;

    let mut pre_parts: Vec<String> = Vec::new();
    if bundle.include_task_instruction {
        pre_parts.push(format!("{}.", bundle.task_kind.instruction()));
    }
    if bundle.include_input_data {
        pre_parts.push(format!("{INPUT_DATA_PROMPT}."));
    }

    let mut post = bundle.question.clone();
    if let Some(options) = &bundle.options {
        for (i, option) in options.iter().enumerate() {
            post.push_str(&format!("\n({}) {}", option_letter(i), option));
        }
    }
    if bundle.include_structured_answer {
        post.push('\n');
        post.push_str(bundle.task_kind.answer_prefix());
    }

    Ok(AssembledInput {
        pre_visual_text: pre_parts.join("\n"),
        post_visual_text: post,
    })
}

/// Extract a 0-based option index from a model answer.
///
/// Scans for the first standalone option letter (delimited by
/// non-alphanumeric neighbors), case-insensitively. This covers
/// "Best Option:(C)" — the prefix itself contains no standalone letter —
/// as well as "(b) ...", "B)", "B.", and a bare letter at the answer start.
pub fn parse_choice(answer_text: &str, n_options: usize) -> Result<usize> {
    if !(2..=26).contains(&n_options) {
        return Err(Error::InvalidConfig(format!(
            "n_options must be in [2, 26], got {n_options}"
        )));
    }
    let chars: Vec<char> = answer_text.trim().chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        if !c.is_ascii_alphabetic() {
            continue;
        }
        let prev_ok = i == 0 || !chars[i - 1].is_alphanumeric();
        let next_ok = i + 1 == chars.len() || !chars[i + 1].is_alphanumeric();
        if prev_ok && next_ok {
            let letter = c.to_ascii_uppercase();
            let index = (letter as u8 - b'A') as usize;
            if index >= n_options {
                return Err(Error::OutOfRange { letter, n_options });
            }
            return Ok(index);
        }
    }
    Err(Error::Unparseable {
        answer: answer_text.to_string(),
    })
}
