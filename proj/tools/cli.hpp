#pragma once

#include <iosfwd>

namespace demplast::cli {

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kUsage = 2,        ///< bad arguments or unknown subcommand
  kInvalidConfig = 3,
  kMissingFile = 4,  ///< missing or unreadable input, or unwritable output
  kMeshError = 5,
  kDiverged = 6,
  kCheckFailed = 7,  ///< gradcheck above tolerance
};

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace demplast::cli
