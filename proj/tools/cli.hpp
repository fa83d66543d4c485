#pragma once

#include <ostream>

namespace lam::cli {

/// Entry point of `lamctl`. Returns the process exit code: 0 on success,
/// 1 when translation, planning or a measured bound fails, 2 on bad usage.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lam::cli
