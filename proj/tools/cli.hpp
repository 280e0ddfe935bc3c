// cli.hpp
// Batch front end. Exit status: 0 success, 2 configuration error, 3 runtime error.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

class ConfigError : public std::invalid_argument {
  public:
    ConfigError(const std::string& field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

/// Radians, or a multiple of pi: "pi/4", "3pi/8", "-pi/2", "2*pi".
double parse_angle(const std::string& text, const std::string& field);

/// Comma-separated integers, e.g. "64,128,256".
std::vector<long long> parse_int_list(const std::string& text, const std::string& field);

/// `args` excludes the program name.
int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace eqw::cli
