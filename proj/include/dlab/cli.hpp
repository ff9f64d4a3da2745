#pragma once

#include <string>
#include <vector>

namespace dlab::cli {

// Exit codes: 0 success / verified, 1 verification failed, 2 usage or file
// schema error, 3 semantic mismatch (mechanism vs instance).
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without the program name

}  // namespace dlab::cli
