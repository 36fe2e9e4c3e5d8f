// mdbook cannot test snippets that depend on workspace crates, so each chapter
// is included as a module doc and `cargo test -p guide` runs its code blocks.
// One module per chapter keeps failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/traces.md")]
pub mod traces {}
#[doc = include_str!("../../../book/src/moves.md")]
pub mod moves {}
#[doc = include_str!("../../../book/src/distances.md")]
pub mod distances {}
#[doc = include_str!("../../../book/src/normal-forms.md")]
pub mod normal_forms {}
#[doc = include_str!("../../../book/src/models.md")]
pub mod models {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
