#pragma once

#include <string>
#include <vector>

namespace spectree {

// Exit codes: 0 success, 1 verification failure, 2 usage error.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);   // without argv[0]

} // namespace spectree
