//! Dataset generation, agent episodes, submission grading and metrics.

pub mod admit;
pub mod agent;
pub mod batch;
pub mod episode;
pub mod generate;
pub mod hints;
pub mod metrics;
pub mod parse;
pub mod profile;
pub mod record;
pub mod report;
pub mod sandbox;
pub mod verify;
