//! Command implementations behind the `contention` binary.

pub mod analyze;
pub mod io;
pub mod record;
pub mod simulate;
pub mod sweep;
pub mod verify;

/// Exit status for usage and configuration errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a verification comparison fails.
pub const EXIT_VERIFY_FAILED: i32 = 1;
