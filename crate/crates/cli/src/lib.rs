//! Command-line front end for `reesval-core`: an expression parser, text and
//! JSON renderings, and a batch runner over JSON-lines corpora.

pub mod app;
pub mod corpus;
pub mod parse;
pub mod report;

pub use app::run;
