#ifndef BRIM_CLI_HPP
#define BRIM_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "brim/error.hpp"

namespace brim::cli {

/// Where the length-table cache lives and whether it is used at all.
/// from_environment() honours BRIM_CACHE=off and BRIM_CACHE_DIR.
struct CacheConfig {
  bool enabled = true;
  std::filesystem::path dir = ".brim-cache";

  static CacheConfig from_environment();
};

/// 0 ok, 2 user error, 3 computational limit, 4 internal failure.
int exit_code(ErrorKind k);

std::string sha256_hex(std::string_view data);

/// Runs one brim invocation; `args` excludes the program name.  The JSON
/// report goes to `out`, diagnostics to `err`.  Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const CacheConfig& cache = CacheConfig::from_environment());

}  // namespace brim::cli

#endif  // BRIM_CLI_HPP
