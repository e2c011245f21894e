#pragma once

#include <string>

namespace shemass {

// Shortest text that parses back bit-exactly ("%.17g"); all CSV output goes
// through this so reruns are byte-identical.
std::string format_double(double v);

// Write via a temp file in the same directory, then rename; never leaves a
// partial file under the final name.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace shemass
