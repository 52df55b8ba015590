#ifndef SUMBOUNDS_CLI_APP_HPP
#define SUMBOUNDS_CLI_APP_HPP

namespace sumbounds::cli {

// Exit codes: 0 success, 1 usage error, 2 input error, 3 validation failure.
int run(int argc, const char* const* argv);

}  // namespace sumbounds::cli

#endif
