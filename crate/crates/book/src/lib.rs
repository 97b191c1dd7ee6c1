// mdbook cannot run the guide's listings against this workspace's crates, so
// each chapter is pulled in here as the docs of an empty module and
// `cargo test --doc` compiles and runs every listing. One module per chapter
// keeps a failing doc-test traceable to its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/operator.md")]
pub mod operator {}
#[doc = include_str!("../../../book/src/membership.md")]
pub mod membership {}
#[doc = include_str!("../../../book/src/neighborhoods.md")]
pub mod neighborhoods {}
#[doc = include_str!("../../../book/src/integral-means.md")]
pub mod integral_means {}
#[doc = include_str!("../../../book/src/partial-sums.md")]
pub mod partial_sums {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
