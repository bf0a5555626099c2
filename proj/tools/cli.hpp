#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace teur::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "TEUR_OUT_DIR";

int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teur::cli
