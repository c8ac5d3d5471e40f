//! Command-line interface for the quartica engine.

fn main() {
    // Subcommands are wired in as the engine surfaces stabilize.
}
