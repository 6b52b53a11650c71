#include "fluxlogic/errors.hpp"

#include <sstream>

namespace fluxlogic {

namespace {

std::string compose(const std::string& message, std::size_t line, std::size_t column,
                    const std::vector<std::string>& expected) {
  std::ostringstream out;
  out << line << ":" << column << ": " << message;
  if (!expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out << (i + 1 == expected.size() ? " or " : ", ");
      out << expected[i];
    }
    out << ")";
  }
  return out.str();
}

}  // namespace

parse_error::parse_error(const std::string& message, std::size_t line, std::size_t column,
                         std::vector<std::string> expected)
    : std::runtime_error(compose(message, line, column, expected)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace fluxlogic
