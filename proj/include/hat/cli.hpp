#ifndef HAT_CLI_HPP
#define HAT_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hat/core.hpp"

namespace hat {

// DOT text with one rank per level, so rendered figures keep the layered
// drawing style.
std::string export_dot(const FiniteDigraph& f, const std::string& name);
std::string export_window_json(const FiniteDigraph& f);

struct ResolvedFactor {
  std::optional<PeriodicLayeredDigraph> periodic;
  struct DLParams {
    int dout = 2, din = 2;
  };
  std::optional<DLParams> dl;
  std::string ref;
};

// builtin:L | builtin:D | builtin:Z | builtin:mckay(n,m) | builtin:dl(dout,din)
// or a path to a FactorSpec JSON file.
ResolvedFactor resolve_factor(const std::string& ref,
                              bool allow_adjacent_involvers = false);

// Entry point shared by the binary and the tests. `args` excludes the
// program name. Exit status: 0 success, 1 verification failure, 2 usage or
// input error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace hat

#endif
