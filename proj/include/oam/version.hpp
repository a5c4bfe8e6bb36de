#pragma once

namespace oam {

/// Library version, reported by the CLI and stamped into result bundles.
inline constexpr const char* kVersion = "0.1.0";

/// Serialization schema versions; bumped on any key or column change.
inline constexpr int kBundleSchemaVersion = 1;
inline constexpr int kCsvSchemaVersion = 1;

} // namespace oam
