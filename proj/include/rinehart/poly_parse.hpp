// ASCII polynomial grammar; see docs/polynomial-grammar.md.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rinehart/exact.hpp"

namespace rinehart {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset(offset) {}
  std::size_t offset;
};

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names);

bool is_identifier(const std::string& s);

}  // namespace rinehart
