#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qdilog {

// A c-vector with entries of both signs. Sign-coherence rules this out for
// genuine seeds, so seeing it means bad input or a bug upstream.
class MixedSignCVector : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ZeroCVector : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotAPeriod : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Substitution into a power series that would not terminate at the
// truncation order (argument has a degree-0 component).
class NonTruncating : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IncompatibleContext : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PoleHit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BranchProximity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error estimate " + format(achieved) + ")"), achieved_error(achieved) {}
  double achieved_error;

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }
};

class SpecParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdilog
