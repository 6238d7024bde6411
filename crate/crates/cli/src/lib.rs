//! Library surface of the dmod command line tool: the JSON output shapes
//! and their exact (de)serialization, shared with the integration tests.

pub mod output;
