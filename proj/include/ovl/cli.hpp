#pragma once

// Command implementations behind tools/ovl. Each writes its report to `out`
// and returns the process exit code.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace ovl {

int cmd_discriminant(const std::string& file, std::ostream& out);
int cmd_overlattices(const std::string& file, std::int64_t p, const std::optional<std::string>& target,
                     std::ostream& out);
/// format is "text" or "tsv"; an empty range prints only the header.
int cmd_kummer_table(std::int64_t k_min, std::int64_t k_max, const std::string& format, std::ostream& out);
int cmd_verify(std::int64_t k, std::int64_t bound, std::ostream& out);

}  // namespace ovl
