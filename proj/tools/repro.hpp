#pragma once

#include <ostream>
#include <string>

// Re-runs the worked examples on the fixtures in `dir` and prints each
// computed value next to the published one. Returns the exit code.
int run_repro(const std::string& dir, std::ostream& out);
