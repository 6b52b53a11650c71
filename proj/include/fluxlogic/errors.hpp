#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxlogic {

// A name (object, agent, predicate, form) that does not exist in the
// structure it was looked up in.
class lookup_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was broken by the caller (e.g. asking for the
// gaps between two times that are not both watched). Deliberately not a
// "false" answer: the question itself was ill-posed.
class contract_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// A structure or scenario file could not be decoded into the in-memory
// types. Semantic problems with decodable data are validate()'s business,
// not the loader's.
class load_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A formula does not fit the structure it was bound against: unknown
// predicate, wrong arity, or an argument naming no object.
class bind_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Concrete-syntax error. Carries the 1-based source position and the set of
// tokens that would have been acceptable at that point.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& message, std::size_t line, std::size_t column,
              std::vector<std::string> expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

}  // namespace fluxlogic
