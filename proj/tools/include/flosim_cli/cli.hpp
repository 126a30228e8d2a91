#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flosim::cli {

// Exit codes: 0 success, 2 validation error, 3 invariant breach.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// theta,xi,w_squared,ratio over theta = pi i / 128, i = 0..255.
std::string extent_csv();

struct SuiteResult {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<SuiteResult> selftest();

}  // namespace flosim::cli
