#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cdesign {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUnsolved = 2;
inline constexpr int kExitUsage = 3;

/// Runs one `cdesign` invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, the digest used by fixture CHECKSUMS files.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace cdesign
