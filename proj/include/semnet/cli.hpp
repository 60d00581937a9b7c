#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "semnet/steam_client.hpp"

namespace semnet::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kDataError = 2,
  kIoError = 3,
};

/// Hooks for the parts of a run that touch the outside world.
struct Environment {
  std::function<std::unique_ptr<HttpTransport>()> make_transport = [] { return make_http_transport(); };
  Sleeper sleep;  // empty: real sleeping
};

/// Runs one CLI invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

/// Parses "YYYY-MM-DD" (UTC midnight) or a plain UNIX timestamp. With
/// end_of_day, a date maps to 23:59:59 of that day.
std::int64_t parse_time(const std::string& text, bool end_of_day);

}  // namespace semnet::cli
