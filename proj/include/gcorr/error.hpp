#pragma once

#include <stdexcept>
#include <string>

namespace gcorr {

  // Malformed input: unparsable documents, unknown names, tables that do not
  // type-check.  The CLI maps this to exit code 2.
  class input_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An operation was called outside its precondition (e.g. acting on a path
  // whose range does not match the source of the arrow).
  class precondition_error : public std::logic_error {
   public:
    using std::logic_error::logic_error;
  };

}  // namespace gcorr
