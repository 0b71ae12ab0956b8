pub mod alphabet;
pub mod blocks;
pub mod envelope;
pub mod error;
pub mod factor;
pub mod gen;
pub mod json;
pub mod macneille;
pub mod oracle;
pub mod selfcheck;
pub mod strategy;
pub mod upset;
pub mod word;
