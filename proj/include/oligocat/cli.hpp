#pragma once

// Command-line surface: subcommand grammar, exact-string serialization of
// results as JSON or aligned tables, a version-gated JSON-lines result
// cache, and report generation.  All outputs are deterministic; numeric
// values are rendered as exact strings.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace oligo {

inline constexpr const char* kCliVersion = "oligocat 0.1.0";

// A parsed request: the subcommand path plus its canonicalized parameters.
// Identical semantic requests produce identical keys.
struct Request {
  std::string path;               // e.g. "gset.orbits"
  nlohmann::ordered_json params;  // deterministic insertion order

  std::string canonical() const;  // path + '\n' + compact parameter JSON
  std::string key() const;        // FNV-1a 64-bit hash of canonical(), hex
};

// One line of a module's cache file.  Append-only; a record is usable only
// when its version matches the running tool.
struct CacheRecord {
  std::string key;
  std::string version;
  std::string time;  // informational, excluded from matching
  nlohmann::ordered_json result;
};

// Executes one request.  Returns the process exit code: 0 success, 1 when a
// verification-style op reports violations, 2 on usage errors, 3 on resource
// bounds.  Results go to `out`; diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace oligo
