#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dcovbound {

enum class ErrorKind {
  EmptySample,
  NonFiniteEntry,
  NonRectangular,
  SizeMismatch,
  InvalidBox,
  SampleOutsideBox,
  BadSpec,
  InvalidConfig,
  InvalidRoles,
  MalformedRecord,
  ParseError,
};

const char* to_string(ErrorKind kind);

// Cell coordinates are attached for errors that point at a specific entry
// (NonFiniteEntry, SampleOutsideBox, ParseError).
struct CellRef {
  std::size_t row = 0;
  std::size_t col = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<CellRef> cell = std::nullopt)
      : std::runtime_error(what), kind_(kind), cell_(cell) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<CellRef>& cell() const noexcept { return cell_; }

 private:
  ErrorKind kind_;
  std::optional<CellRef> cell_;
};

}  // namespace dcovbound
