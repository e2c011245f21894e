#pragma once

namespace shemass {

// Embedded in every report manifest for provenance.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace shemass
