#pragma once

#include <stdexcept>
#include <string>

namespace smokecast {

enum class Sex { male, female };

Sex sex_from_string(const std::string& s);
const char* to_string(Sex s);

// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SMOKECAST_DEFINE_ERROR(Name)          \
  class Name : public ::smokecast::Error {    \
   public:                                    \
    using ::smokecast::Error::Error;          \
  }

}  // namespace smokecast
