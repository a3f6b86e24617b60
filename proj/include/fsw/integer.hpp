#ifndef FSW_INTEGER_HPP
#define FSW_INTEGER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace fsw {

/// Exact coefficient type for every class computation.
using Integer = boost::multiprecision::cpp_int;

/// Input rejected by a constructor or parser. `path()` names the offending
/// field (a JSON-pointer-like string when the error comes from the CLI).
class SpecError : public std::invalid_argument {
public:
  SpecError(std::string path, const std::string &message)
      : std::invalid_argument(path.empty() ? message : path + ": " + message),
        path_(std::move(path)), message_(message) {}

  const std::string &path() const noexcept { return path_; }
  /// The message without the path prefix.
  const std::string &message() const noexcept { return message_; }

private:
  std::string path_;
  std::string message_;
};

inline std::string to_string(const Integer &value) { return value.str(); }

/// (-1)^k as an Integer.
inline Integer sign_power(long long k) { return (k % 2 == 0) ? Integer(1) : Integer(-1); }

} // namespace fsw

#endif // FSW_INTEGER_HPP
