#ifndef HAT_ERROR_HPP
#define HAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hat {

enum class Errc {
  incompatible_fibers,
  empty_layer,
  bad_params,
  foreign_vertex,
  domain_mismatch,
  not_an_arc,
  impossible_coordinate,
  empty_edge_set,
  involver_adjacency,
  window_too_large,
  too_large,
  unverified_generator,
  syntax_error,
  schema_error,
  usage_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hat

#endif
