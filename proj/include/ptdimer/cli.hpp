#pragma once

namespace ptdimer::cli {

/// Entry point behind the ptdimer binary. Exit codes: 0 success, 2 usage or
/// configuration error, 3 numerical failure, 4 cross-validation failure.
int run(int argc, const char* const* argv);

} // namespace ptdimer::cli
