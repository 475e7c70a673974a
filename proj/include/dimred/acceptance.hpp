#pragma once

#include <filesystem>
#include <iosfwd>

namespace dimred {

/// Runs the ten acceptance criteria, printing one pass/fail line each.
/// Returns the number of failed criteria.
int run_acceptance(std::ostream& out, const std::filesystem::path& work_dir);

}  // namespace dimred
