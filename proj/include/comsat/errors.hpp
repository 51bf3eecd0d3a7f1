#pragma once

#include <stdexcept>
#include <string>

namespace comsat {

// Configuration / input-document problems. CLI maps these to exit code 2.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical evaluation failures (domain violations surface as
// std::domain_error). CLI maps both to exit code 3.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// The serving shell has zero width (cone angle eta == 0): the expected
// serving-channel sum is empty and coverage/rate are undefined.
class no_serving_region : public std::domain_error {
public:
  no_serving_region() : std::domain_error("no serving region: cone angle eta is zero") {}
};

}  // namespace comsat
