#include "rmt/errors.hpp"

namespace rmt {

void throw_domain(const std::string& where, const std::string& what) {
  throw DomainError(where + ": " + what);
}

}  // namespace rmt
